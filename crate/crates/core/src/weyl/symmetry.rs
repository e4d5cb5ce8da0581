use std::fmt;

use super::{Element, Generator, Word};

/// An element of the group `G = <ρ, σ, ι>` acting on `W`.
///
/// The diagram part acts on generator indices as `i ↦ ±i + shift (mod 3)`;
/// `ρ` is `i ↦ i + 1` and `σ` is `i ↦ -i`. The `inverse` flag composes with
/// the anti-automorphism `ι: x ↦ x⁻¹`, which commutes with the diagram part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    negate: bool,
    shift: u8,
    inverse: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry::new(false, 0, false);
    pub const RHO: Symmetry = Symmetry::new(false, 1, false);
    pub const SIGMA: Symmetry = Symmetry::new(true, 0, false);
    pub const IOTA: Symmetry = Symmetry::new(false, 0, true);

    const fn new(negate: bool, shift: u8, inverse: bool) -> Symmetry {
        Symmetry {
            negate,
            shift,
            inverse,
        }
    }

    /// `ρ^k`.
    pub fn rho_pow(k: i64) -> Symmetry {
        Symmetry::new(false, k.rem_euclid(3) as u8, false)
    }

    /// The twelve elements in the fixed order
    /// id, ρ, ρ², σ, σρ, σρ², followed by the same six composed with ι.
    pub fn all() -> [Symmetry; 12] {
        let mut out = [Symmetry::IDENTITY; 12];
        for (k, slot) in out.iter_mut().enumerate() {
            let inverse = k >= 6;
            let j = k % 6;
            let rho = Symmetry::rho_pow(j as i64 % 3);
            let d = if j < 3 { rho } else { Symmetry::SIGMA.compose(&rho) };
            *slot = Symmetry { inverse, ..d };
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        // self(other(i)) = ±(±i + c2) + c1
        let sign = if self.negate { -1 } else { 1 };
        let shift = (sign * other.shift as i64 + self.shift as i64).rem_euclid(3) as u8;
        Symmetry {
            negate: self.negate ^ other.negate,
            shift,
            inverse: self.inverse ^ other.inverse,
        }
    }

    pub fn inverse(&self) -> Symmetry {
        Symmetry::all()
            .into_iter()
            .find(|t| t.compose(self) == Symmetry::IDENTITY)
            .expect("G is a group")
    }

    pub fn includes_inversion(&self) -> bool {
        self.inverse
    }

    pub fn apply_generator(&self, s: Generator) -> Generator {
        let i = s.index() as i64;
        let i = if self.negate { -i } else { i };
        Generator::from_label(i + self.shift as i64)
    }

    pub fn apply(&self, w: &Element) -> Element {
        let letters = w
            .canonical_word()
            .letters()
            .iter()
            .map(|&s| self.apply_generator(s))
            .collect();
        let image = Element::from_word(&Word::new(letters));
        if self.inverse {
            image.inverse()
        } else {
            image
        }
    }

    pub fn name(&self) -> String {
        let idx = Symmetry::all().iter().position(|t| t == self).unwrap();
        const NAMES: [&str; 6] = ["id", "rho", "rho2", "sigma", "sigma_rho", "sigma_rho2"];
        let base = NAMES[idx % 6];
        match (self.inverse, idx % 6) {
            (false, _) => base.to_string(),
            (true, 0) => "iota".to_string(),
            (true, _) => format!("iota_{base}"),
        }
    }

    pub fn from_name(name: &str) -> Option<Symmetry> {
        Symmetry::all().into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
