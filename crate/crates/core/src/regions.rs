//! The families `x_n`, `θ(m,n)`, `θ(m,n)s_{m,n}`, `s₀θ(m,n)s_{m,n}` and the
//! partition `W ∖ {id} = X ⊎ Θ ⊎ Θ₁ ⊎ Θ₂` into their `G`-orbits.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weyl::{
    alcove_coordinates, lower_interval, Element, Generator, LatticePoint, Side, Symmetry, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaIndex {
    pub m: u32,
    pub n: u32,
}

impl ThetaIndex {
    pub fn new(m: u32, n: u32) -> ThetaIndex {
        ThetaIndex { m, n }
    }
}

impl fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionKind {
    Identity,
    X,
    Theta,
    Theta1,
    Theta2,
}

impl RegionKind {
    pub fn name(self) -> &'static str {
        match self {
            RegionKind::Identity => "Identity",
            RegionKind::X => "X",
            RegionKind::Theta => "Theta",
            RegionKind::Theta1 => "Theta1",
            RegionKind::Theta2 => "Theta2",
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family parameters: the chain length for `X`, `(m, n)` for the θ families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionParams {
    None,
    Chain(u32),
    Theta(ThetaIndex),
}

/// Classification of an element: `element = tau(family member(params))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegionTag {
    pub kind: RegionKind,
    pub tau: Symmetry,
    pub params: RegionParams,
}

impl RegionTag {
    /// The untransformed family member.
    pub fn canonical_member(&self) -> Element {
        member(self.kind, self.params)
    }

    pub fn reconstruct(&self) -> Element {
        self.tau.apply(&self.canonical_member())
    }

    pub fn theta_index(&self) -> Option<ThetaIndex> {
        match self.params {
            RegionParams::Theta(idx) => Some(idx),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.kind.name(), "tau": self.tau.name()});
        match self.params {
            RegionParams::None => {}
            RegionParams::Chain(n) => v["chain_len"] = json!(n),
            RegionParams::Theta(ThetaIndex { m, n }) => {
                v["m"] = json!(m);
                v["n"] = json!(n);
            }
        }
        v
    }
}

fn member(kind: RegionKind, params: RegionParams) -> Element {
    match (kind, params) {
        (RegionKind::X, RegionParams::Chain(n)) => x_chain(n).expect("chain length is positive"),
        (RegionKind::Theta, RegionParams::Theta(idx)) => theta(idx),
        (RegionKind::Theta1, RegionParams::Theta(idx)) => theta1(idx),
        (RegionKind::Theta2, RegionParams::Theta(idx)) => theta2(idx),
        _ => Element::identity(),
    }
}

/// `x_n = 123⋯n` (labels mod 3).
pub fn x_chain(n: u32) -> Result<Element> {
    if n == 0 {
        return Err(Error::InvalidParameter("x_n requires n >= 1".into()));
    }
    Ok(Element::from_word(&Word::from_labels(1..=n as i64)))
}

/// `θ(m,n) = 1 2 ⋯ (2m+1)(2m+2)(2m+1) ⋯ (2m−2n+1)`, of length `2m+2n+3`.
pub fn theta(idx: ThetaIndex) -> Element {
    let top = 2 * idx.m as i64 + 2;
    let bottom = 2 * idx.m as i64 - 2 * idx.n as i64 + 1;
    let labels = (1..=top).chain((bottom..top).rev());
    Element::from_word(&Word::from_labels(labels))
}

/// The unique right ascent `s_{m,n}` of `θ(m,n)`.
pub fn s_mn(idx: ThetaIndex) -> Generator {
    let t = theta(idx);
    let ascents: Vec<Generator> = Generator::ALL
        .into_iter()
        .filter(|&s| !t.has_descent(s, Side::Right))
        .collect();
    debug_assert_eq!(ascents.len(), 1);
    ascents[0]
}

/// `θ(m,n)·s_{m,n}`.
pub fn theta1(idx: ThetaIndex) -> Element {
    theta(idx).mul_gen(s_mn(idx), Side::Right)
}

/// `s₀·θ(m,n)·s_{m,n}`.
pub fn theta2(idx: ThetaIndex) -> Element {
    theta1(idx).mul_gen(Generator::S0, Side::Left)
}

type MemberTable = HashMap<Element, (RegionKind, RegionParams)>;

static MEMBERS_BY_LENGTH: Lazy<DashMap<u32, Arc<MemberTable>>> = Lazy::new(DashMap::new);

/// All family members of length `len`, in no particular order.
fn members_of_length(len: u32) -> Arc<MemberTable> {
    if let Some(hit) = MEMBERS_BY_LENGTH.get(&len) {
        return hit.clone();
    }
    let mut table = MemberTable::new();
    let mut put = |kind: RegionKind, params: RegionParams| {
        table.insert(member(kind, params), (kind, params));
    };
    if len >= 1 {
        put(RegionKind::X, RegionParams::Chain(len));
    }
    let families = [
        (RegionKind::Theta, 3),
        (RegionKind::Theta1, 4),
        (RegionKind::Theta2, 5),
    ];
    for (kind, offset) in families {
        if len >= offset && (len - offset).is_multiple_of(2) {
            let total = (len - offset) / 2;
            for m in 0..=total {
                put(kind, RegionParams::Theta(ThetaIndex::new(m, total - m)));
            }
        }
    }
    MEMBERS_BY_LENGTH
        .entry(len)
        .or_insert_with(|| Arc::new(table))
        .clone()
}

/// The family and parameters of `w` if `w` is itself a canonical family member.
pub fn family_member(w: &Element) -> Option<(RegionKind, RegionParams)> {
    members_of_length(w.length()).get(w).copied()
}

/// Every `(kind, params, tau)` with `tau(member) = w`, tau in the fixed order.
fn orbit_matches(w: &Element) -> Vec<(RegionKind, RegionParams, usize)> {
    let table = members_of_length(w.length());
    let mut out = Vec::new();
    for (i, tau) in Symmetry::all().iter().enumerate() {
        let u = tau.inverse().apply(w);
        if let Some(&(kind, params)) = table.get(&u) {
            out.push((kind, params, i));
        }
    }
    out
}

/// Classifies `w` into its region.
///
/// Among all matching family members the smallest parameters win, then the
/// first symmetry in the fixed enumeration; the parameters are therefore an
/// invariant of the `G`-orbit.
pub fn classify(w: &Element) -> Result<RegionTag> {
    if w.is_identity() {
        return Ok(RegionTag {
            kind: RegionKind::Identity,
            tau: Symmetry::IDENTITY,
            params: RegionParams::None,
        });
    }
    let best = orbit_matches(w)
        .into_iter()
        .min_by_key(|&(kind, params, i)| (kind, params, i))
        .ok_or_else(|| Error::Unclassified(w.to_string()))?;
    Ok(RegionTag {
        kind: best.0,
        tau: Symmetry::all()[best.2],
        params: best.1,
    })
}

/// Every region whose orbit contains `w` (exactly one for `w ≠ id` when the
/// partition holds).
pub fn matching_kinds(w: &Element) -> Vec<RegionKind> {
    let mut kinds: Vec<RegionKind> = orbit_matches(w).into_iter().map(|m| m.0).collect();
    kinds.sort();
    kinds.dedup();
    kinds
}

const FINITE_WEYL: [&str; 6] = ["", "1", "2", "12", "21", "121"];

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Vertices (counter-clockwise, no collinear points) of the convex hull of
/// the alcove centroids of `W_f·θ(m,n)`, in tripled lattice coordinates.
pub fn hexagon(idx: ThetaIndex) -> Vec<LatticePoint> {
    let t = theta(idx);
    let mut pts: Vec<LatticePoint> = FINITE_WEYL
        .iter()
        .map(|u| alcove_coordinates(&Element::parse(u).unwrap().multiply(&t)).centroid3())
        .collect();
    pts.sort();
    pts.dedup();
    // Andrew's monotone chain
    let mut hull: Vec<LatticePoint> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &LatticePoint>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn inside_hull(hull: &[LatticePoint], p: LatticePoint) -> bool {
    (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], p) >= 0)
}

/// Geometric test for `w ≤ θ(idx)`: the centroid of `w` lies in the closed
/// hexagon spanned by the centroids of `W_f·θ(idx)`.
pub fn in_theta_lower(w: &Element, idx: ThetaIndex) -> bool {
    inside_hull(&hexagon(idx), alcove_coordinates(w).centroid3())
}

/// `∂_{m,n}`: elements of `θ(m,n)↓` whose alcove has a wall on the boundary
/// of the region, sorted by `Ord`.
pub fn boundary_set(idx: ThetaIndex) -> Vec<Element> {
    let hull = hexagon(idx);
    let inside = |w: &Element| inside_hull(&hull, alcove_coordinates(w).centroid3());
    lower_interval(&theta(idx))
        .iter()
        .filter(|x| {
            Generator::ALL
                .into_iter()
                .any(|s| !inside(&x.mul_gen(s, Side::Right)))
        })
        .copied()
        .collect()
}

/// Checks `θ(m,n)s↓ = θ(m,n)↓ ∪ ∂_{m,n}·s` with `s = s_{m,n}`.
pub fn boundary_union_check(idx: ThetaIndex) -> bool {
    let s = s_mn(idx);
    let mut union: HashSet<Element> = lower_interval(&theta(idx)).iter().copied().collect();
    union.extend(boundary_set(idx).iter().map(|x| x.mul_gen(s, Side::Right)));
    let target: HashSet<Element> = lower_interval(&theta1(idx)).iter().copied().collect();
    union == target
}

/// Checks `θ(m−1,n)↓ ∩ θ(m,n−1)↓ = θ(m−1,n−1)s↓` by enumeration, with
/// `s = s_{m−1,n−1} = s_{m,n}`.
pub fn intersection_check(m: u32, n: u32) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "intersection check needs m, n >= 1".into(),
        ));
    }
    let inner = ThetaIndex::new(m - 1, n - 1);
    if s_mn(inner) != s_mn(ThetaIndex::new(m, n)) {
        return Ok(false);
    }
    let a: HashSet<Element> = lower_interval(&theta(ThetaIndex::new(m - 1, n)))
        .iter()
        .copied()
        .collect();
    let b: HashSet<Element> = lower_interval(&theta(ThetaIndex::new(m, n - 1)))
        .iter()
        .copied()
        .collect();
    let meet: HashSet<Element> = a.intersection(&b).copied().collect();
    let target: HashSet<Element> = lower_interval(&theta1(inner)).iter().copied().collect();
    Ok(meet == target)
}
