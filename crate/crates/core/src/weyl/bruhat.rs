use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use super::{Element, Generator, Side};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 16;
pub const HARD_ENUMERATION_CAP: usize = 64;

static ENUMERATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUMERATION_CAP);

static LOWER_INTERVALS: Lazy<DashMap<Element, Arc<Vec<Element>>>> = Lazy::new(DashMap::new);

pub fn enumeration_cap() -> usize {
    ENUMERATION_CAP.load(Ordering::Relaxed)
}

/// Overrides the length cap for enumeration and the KL recursion.
pub fn set_enumeration_cap(cap: usize) -> Result<()> {
    if cap > HARD_ENUMERATION_CAP {
        return Err(Error::ResourceLimit {
            requested: cap,
            cap: HARD_ENUMERATION_CAP,
        });
    }
    ENUMERATION_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

/// Bruhat order via the lifting property.
///
/// With `s` a left descent of `y`, `x ≤ y` iff `min(x, sx) ≤ sy`. The
/// recursion never branches, so it runs as a loop of at most `ℓ(y)` steps.
pub fn bruhat_leq(x: &Element, y: &Element) -> bool {
    let (mut x, mut y) = (*x, *y);
    loop {
        if x.length() > y.length() {
            return false;
        }
        if x.is_identity() {
            return true;
        }
        if x.length() == y.length() {
            return x == y;
        }
        let s = y.first_descent(Side::Left).expect("non-identity has a descent");
        if x.has_descent(s, Side::Left) {
            x = x.mul_gen(s, Side::Left);
        }
        y = y.mul_gen(s, Side::Left);
    }
}

/// The lower interval `w↓ = [id, w]`, sorted by [`Element`]'s `Ord`.
///
/// Uses `w↓ = (ws)↓ ∪ (ws)↓·s` for a right descent `s`; results are memoized.
pub fn lower_interval(w: &Element) -> Arc<Vec<Element>> {
    if let Some(hit) = LOWER_INTERVALS.get(w) {
        return hit.clone();
    }
    let result = match w.first_descent(Side::Right) {
        None => vec![*w],
        Some(s) => {
            let below = lower_interval(&w.mul_gen(s, Side::Right));
            let mut set: HashSet<Element> = below.iter().copied().collect();
            set.extend(below.iter().map(|z| z.mul_gen(s, Side::Right)));
            let mut v: Vec<Element> = set.into_iter().collect();
            v.sort();
            v
        }
    };
    LOWER_INTERVALS
        .entry(*w)
        .or_insert_with(|| Arc::new(result))
        .clone()
}

/// All elements of length at most `max_len`, each once, sorted by `Ord`.
pub fn enumerate_up_to_length(max_len: usize) -> Result<Vec<Element>> {
    let cap = enumeration_cap();
    if max_len > cap {
        return Err(Error::ResourceLimit {
            requested: max_len,
            cap,
        });
    }
    let mut all = vec![Element::identity()];
    let mut layer = vec![Element::identity()];
    for len in 1..=max_len as u32 {
        let mut next: HashSet<Element> = HashSet::new();
        for w in &layer {
            for s in Generator::ALL {
                let u = w.mul_gen(s, Side::Right);
                if u.length() == len {
                    next.insert(u);
                }
            }
        }
        let mut next: Vec<Element> = next.into_iter().collect();
        next.sort();
        all.extend(next.iter().copied());
        layer = next;
    }
    Ok(all)
}
