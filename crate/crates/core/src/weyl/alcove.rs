//! The realization of `W` as a group of plane isometries.
//!
//! Points are written in the lattice basis `e₁ = (1, 0)`, `e₂ = (1/2, √3/2)`,
//! so every alcove vertex has integer coordinates and no floating point is
//! needed outside of rendering. The fundamental alcove has vertices `0`,
//! `e₁`, `e₂`; `s₁` reflects in the line through `0` and `e₁`, `s₂` in the
//! line through `0` and `e₂`, and `s₀` in the line through `e₁` and `e₂`.
//! The alcove of `w` is `w(A₀)`.

use super::{Element, Generator};

/// A point `a·e₁ + b·e₂` of the triangular lattice.
pub type LatticePoint = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alcove {
    /// Vertices in the order (image of 0, image of e₁, image of e₂).
    pub vertices: [LatticePoint; 3],
}

impl Alcove {
    pub fn fundamental() -> Alcove {
        Alcove {
            vertices: [(0, 0), (1, 0), (0, 1)],
        }
    }

    /// Three times the centroid, so the coordinates stay integral.
    pub fn centroid3(&self) -> LatticePoint {
        let [p, q, r] = self.vertices;
        (p.0 + q.0 + r.0, p.1 + q.1 + r.1)
    }

    /// Whether the triangle points up (same orientation as `A₀`).
    pub fn is_up(&self) -> bool {
        self.centroid3().1.rem_euclid(3) == 1
    }

    /// The edge of the alcove lying across from `w·s`, as a pair of vertices.
    ///
    /// In `A₀`, the `s₁` wall joins `0,e₁`, the `s₂` wall joins `0,e₂` and the
    /// `s₀` wall joins `e₁,e₂`; these labels are carried along by `w`.
    pub fn wall(&self, s: Generator) -> [LatticePoint; 2] {
        let [p, q, r] = self.vertices;
        match s.index() {
            0 => [q, r],
            1 => [p, q],
            _ => [p, r],
        }
    }

    /// Cartesian coordinates of a lattice point.
    pub fn to_cartesian(p: LatticePoint) -> (f64, f64) {
        let (a, b) = p;
        (a as f64 + b as f64 / 2.0, b as f64 * 3f64.sqrt() / 2.0)
    }
}

fn reflect(s: Generator, (a, b): LatticePoint) -> LatticePoint {
    match s.index() {
        1 => (a + b, -b),
        2 => (-a, a + b),
        _ => (1 - b, 1 - a),
    }
}

/// The alcove `w(A₀)`; injective on `W`.
pub fn alcove_coordinates(w: &Element) -> Alcove {
    let word = w.canonical_word();
    let mut vertices = Alcove::fundamental().vertices;
    for &s in word.letters().iter().rev() {
        for v in vertices.iter_mut() {
            *v = reflect(s, *v);
        }
    }
    Alcove { vertices }
}
