//! Exact Kazhdan-Lusztig combinatorics for the affine Weyl group of type Ã₂.
//!
//! The crate is organised bottom-up:
//!
//! * [`weyl`]: group elements as affine permutations, Bruhat order, the
//!   symmetry group `G = <ρ, σ, ι>`, enumeration and the alcove picture.
//! * [`laurent`]: integer Laurent polynomials in `v` and ordinary
//!   polynomials in `q`.
//! * [`hecke`]: the Hecke algebra in Soergel's normalisation, the generic
//!   canonical basis recursion and the `N`/`M` elements.
//! * [`regions`]: the families `x_n`, `θ(m,n)`, `θ(m,n)s`, `s₀θ(m,n)s` and the
//!   classification of every element into one of them up to symmetry.
//! * [`closedform`]: explicit formulas for canonical basis elements and the
//!   fast KL path built on top of them.
//! * [`poset`]: Bruhat intervals as graded posets, isomorphism testing and
//!   the parent / Z-set invariants.
//! * [`verify`]: exhaustive checks and reports.
//! * [`cache`] and [`render`]: on-disk KL cache and SVG output.

pub mod cache;
pub mod closedform;
mod error;
pub mod hecke;
pub mod laurent;
pub mod poset;
pub mod regions;
pub mod render;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use laurent::{LaurentPoly, QPoly};

pub use poset::{Interval, IsoCertificate};
pub use regions::{RegionKind, RegionTag, ThetaIndex};
pub use weyl::{Element, Generator, Side, Symmetry, Word};
