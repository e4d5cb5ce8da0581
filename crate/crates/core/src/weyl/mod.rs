//! The affine Weyl group `W` of type Ã₂.
//!
//! Elements are stored as affine permutations: bijections `w: ℤ → ℤ` with
//! `w(i + 3) = w(i) + 3` and `w(1) + w(2) + w(3) = 6`, determined by their
//! window `[w(1), w(2), w(3)]`. The simple reflection `s_i` swaps the
//! positions `i` and `i + 1` (indices mod 3), so `s_0` swaps `0` and `1`.
//! Equality is a comparison of three integers and length is given by a
//! closed formula on the window.

mod alcove;
mod bruhat;
mod symmetry;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use alcove::{alcove_coordinates, Alcove, LatticePoint};
pub use bruhat::{
    bruhat_leq, enumerate_up_to_length, enumeration_cap, lower_interval, set_enumeration_cap,
    DEFAULT_ENUMERATION_CAP, HARD_ENUMERATION_CAP,
};
pub use symmetry::Symmetry;

/// One of the simple reflections `s₀`, `s₁`, `s₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub const S0: Generator = Generator(0);
    pub const S1: Generator = Generator(1);
    pub const S2: Generator = Generator(2);
    pub const ALL: [Generator; 3] = [Generator::S0, Generator::S1, Generator::S2];

    /// Maps an arbitrary integer label to its generator ("label mod 3").
    pub fn from_label(label: i64) -> Generator {
        Generator(label.rem_euclid(3) as u8)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    fn bit(self) -> u8 {
        1 << self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Left or right multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A possibly non-reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Word {
        Word(letters)
    }

    /// Builds a word from arbitrary integer labels, reduced mod 3.
    pub fn from_labels<I: IntoIterator<Item = i64>>(labels: I) -> Word {
        Word(labels.into_iter().map(Generator::from_label).collect())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(d) => Ok(Generator::from_label(d as i64)),
                None => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// An element of `W`.
///
/// Length and both descent sets are computed once at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    window: [i64; 3],
    length: u32,
    left_descents: u8,
    right_descents: u8,
}

impl Element {
    pub fn identity() -> Element {
        Element::from_window([1, 2, 3])
    }

    pub fn generator(s: Generator) -> Element {
        Element::identity().mul_gen(s, Side::Right)
    }

    fn from_window(window: [i64; 3]) -> Element {
        let length = window_length(&window);
        let right_descents = window_right_descents(&window);
        let left_descents = window_right_descents(&invert_window(&window));
        Element {
            window,
            length,
            left_descents,
            right_descents,
        }
    }

    /// Evaluates the element read left to right as a product of generators.
    pub fn from_word(word: &Word) -> Element {
        word.letters()
            .iter()
            .fold(Element::identity(), |w, &s| w.mul_gen(s, Side::Right))
    }

    /// Parses a digit string such as `"01210"`; the empty string is the identity.
    /// Digits are labels mod 3, so `"1234"` is `s₁s₂s₀s₁`.
    pub fn parse(word: &str) -> Result<Element> {
        Ok(Element::from_word(&word.parse()?))
    }

    pub fn window(&self) -> [i64; 3] {
        self.window
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Value of the affine permutation at an arbitrary integer.
    fn eval(&self, k: i64) -> i64 {
        let q = (k - 1).div_euclid(3);
        let r = (k - 1).rem_euclid(3) as usize;
        self.window[r] + 3 * q
    }

    pub fn multiply(&self, other: &Element) -> Element {
        let w = [
            self.eval(other.window[0]),
            self.eval(other.window[1]),
            self.eval(other.window[2]),
        ];
        Element::from_window(w)
    }

    pub fn inverse(&self) -> Element {
        Element::from_window(invert_window(&self.window))
    }

    /// `w·s` or `s·w`.
    pub fn mul_gen(&self, s: Generator, side: Side) -> Element {
        let [a, b, c] = self.window;
        let w = match side {
            Side::Right => match s.0 {
                0 => [c - 3, b, a + 3],
                1 => [b, a, c],
                _ => [a, c, b],
            },
            Side::Left => {
                let i = s.0 as i64;
                self.window.map(|k| {
                    let r = k.rem_euclid(3);
                    if r == i {
                        k + 1
                    } else if r == (i + 1) % 3 {
                        k - 1
                    } else {
                        k
                    }
                })
            }
        };
        Element::from_window(w)
    }

    pub fn descents(&self, side: Side) -> Vec<Generator> {
        let mask = self.descent_mask(side);
        Generator::ALL
            .into_iter()
            .filter(|g| mask & g.bit() != 0)
            .collect()
    }

    pub fn descent_mask(&self, side: Side) -> u8 {
        match side {
            Side::Left => self.left_descents,
            Side::Right => self.right_descents,
        }
    }

    pub fn has_descent(&self, s: Generator, side: Side) -> bool {
        self.descent_mask(side) & s.bit() != 0
    }

    /// Smallest generator in the given descent set.
    pub fn first_descent(&self, side: Side) -> Option<Generator> {
        let mask = self.descent_mask(side);
        Generator::ALL.into_iter().find(|g| mask & g.bit() != 0)
    }

    /// The ShortLex-minimal reduced word (generator order `0 < 1 < 2`).
    pub fn canonical_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length as usize);
        let mut w = *self;
        while let Some(s) = w.first_descent(Side::Left) {
            letters.push(s);
            w = w.mul_gen(s, Side::Left);
        }
        Word(letters)
    }

    /// Sort key used wherever output order matters: length, then canonical word.
    pub fn shortlex_key(&self) -> (u32, Word) {
        (self.length, self.canonical_word())
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by length, then window. Cheap, deterministic, and unrelated
/// to the Bruhat order.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.length, self.window).cmp(&(other.length, other.window))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_word())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({:?})", self.canonical_word().to_string())
    }
}

fn window_length(w: &[i64; 3]) -> u32 {
    let mut len = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            len += (w[j] - w[i]).div_euclid(3).unsigned_abs();
        }
    }
    len as u32
}

fn window_right_descents(w: &[i64; 3]) -> u8 {
    let mut mask = 0;
    if w[2] - 3 > w[0] {
        mask |= 1;
    }
    if w[0] > w[1] {
        mask |= 2;
    }
    if w[1] > w[2] {
        mask |= 4;
    }
    mask
}

fn invert_window(w: &[i64; 3]) -> [i64; 3] {
    let mut inv = [0; 3];
    for (i, &v) in w.iter().enumerate() {
        let q = (v - 1).div_euclid(3);
        let r = (v - 1).rem_euclid(3) as usize;
        inv[r] = i as i64 + 1 - 3 * q;
    }
    inv
}
