//! Elements, generator sets, and words of the wreath product of the integers
//! with themselves.
//!
//! An element is a pair `(y, b)` of a rational function `y` (supported on
//! integer powers of `X`) and an integer `b`; multiplication twists the first
//! coordinate by `X^b`. Generator sets carry the sign partition of their `b`
//! values and the gcd `d` that grades everything downstream.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_integer::Integer;

use crate::polyring::{LaurentPoly, RatFunc};

/// Errors raised by word evaluation and radical extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WreathError {
    /// A word was empty or referenced a generator index out of range.
    BadIndex,
    /// The element has no radical for the requested grading (its `b` is not
    /// a multiple of `d`, or `d` is not positive).
    NoRadical,
}

impl fmt::Display for WreathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WreathError::BadIndex => f.write_str("word is empty or indexes a missing generator"),
            WreathError::NoRadical => f.write_str("element has no radical for this grading"),
        }
    }
}

impl core::error::Error for WreathError {}

/// Wreath-product element `(y, b)`.
#[derive(Clone, PartialEq, Eq)]
pub struct WreathElem {
    pub y: RatFunc,
    pub b: i64,
}

impl WreathElem {
    /// Builds `(y, b)` from a polynomial first coordinate.
    pub fn from_poly(y: LaurentPoly, b: i64) -> Self {
        WreathElem {
            y: RatFunc::from_poly(y),
            b,
        }
    }

    /// The identity `(0, 0)`.
    pub fn identity() -> Self {
        WreathElem {
            y: RatFunc::zero(),
            b: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.y.is_zero() && self.b == 0
    }

    /// Group product `(y, b)(y', b') = (y + X^b y', b + b')`.
    pub fn mul(&self, rhs: &WreathElem) -> WreathElem {
        WreathElem {
            y: &self.y + &rhs.y.shift(self.b),
            b: self.b + rhs.b,
        }
    }

    /// Group inverse `(-X^{-b} y, -b)`.
    pub fn inverse(&self) -> WreathElem {
        WreathElem {
            y: -&self.y.shift(-self.b),
            b: -self.b,
        }
    }

    /// `n`-th power for `n >= 0` (the identity for `n = 0`).
    pub fn pow(&self, n: u32) -> WreathElem {
        let mut acc = WreathElem::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Radical with respect to the grading `d`: the element whose
    /// `(b/|b| * d)`-th ... power chain recovers `self`. Concretely
    /// `(y / (1 + X^d + ... + X^{b-d}), d)` for `b > 0`,
    /// `(y / (1 + X^{-d} + ... + X^{-(|b|-d)}), -d)` for `b < 0`, and the
    /// element itself for `b = 0`.
    ///
    /// Errors with `NoRadical` unless `d >= 1` and `d` divides `b`.
    pub fn radical(&self, d: i64) -> Result<WreathElem, WreathError> {
        if d < 1 {
            return Err(WreathError::NoRadical);
        }
        if self.b == 0 {
            return Ok(self.clone());
        }
        if self.b.rem_euclid(d) != 0 {
            return Err(WreathError::NoRadical);
        }
        let steps = self.b.abs() / d;
        let window = if self.b > 0 {
            LaurentPoly::window(d, 0, steps - 1)
        } else {
            LaurentPoly::window(d, -(steps - 1), 0)
        };
        let y = self
            .y
            .checked_div(&RatFunc::from_poly(window))
            .expect("window sum is nonzero");
        Ok(WreathElem {
            y,
            b: if self.b > 0 { d } else { -d },
        })
    }
}

impl Mul for &WreathElem {
    type Output = WreathElem;
    fn mul(self, rhs: &WreathElem) -> WreathElem {
        WreathElem::mul(self, rhs)
    }
}

impl fmt::Debug for WreathElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.y, self.b)
    }
}

/// A finite list of generators together with the sign partition of their `b`
/// values and the common grading `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<WreathElem>,
    idx_pos: Vec<usize>,
    idx_neg: Vec<usize>,
    idx_zero: Vec<usize>,
    d: Option<i64>,
}

impl GeneratorSet {
    /// Classifies the generators: `idx_pos` holds indices with `b > 0`,
    /// `idx_neg` those with `b < 0`, `idx_zero` those with `b = 0`; `d` is
    /// the gcd of all nonzero `|b|` (None when every `b` is zero).
    pub fn new(generators: Vec<WreathElem>) -> Self {
        let mut idx_pos = Vec::new();
        let mut idx_neg = Vec::new();
        let mut idx_zero = Vec::new();
        let mut d: Option<i64> = None;
        for (a, g) in generators.iter().enumerate() {
            if g.b > 0 {
                idx_pos.push(a);
            } else if g.b < 0 {
                idx_neg.push(a);
            } else {
                idx_zero.push(a);
            }
            if g.b != 0 {
                d = Some(d.map_or(g.b.abs(), |v| v.gcd(&g.b.abs())));
            }
        }
        GeneratorSet {
            generators,
            idx_pos,
            idx_neg,
            idx_zero,
            d,
        }
    }

    pub fn generators(&self) -> &[WreathElem] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Indices with positive displacement.
    pub fn idx_pos(&self) -> &[usize] {
        &self.idx_pos
    }

    /// Indices with negative displacement.
    pub fn idx_neg(&self) -> &[usize] {
        &self.idx_neg
    }

    /// Indices with zero displacement.
    pub fn idx_zero(&self) -> &[usize] {
        &self.idx_zero
    }

    /// Gcd of the nonzero displacement magnitudes, if any.
    pub fn d(&self) -> Option<i64> {
        self.d
    }

    /// Displacement of generator `a`.
    pub fn b(&self, a: usize) -> i64 {
        self.generators[a].b
    }

    /// First coordinate of generator `a`.
    pub fn y(&self, a: usize) -> &RatFunc {
        &self.generators[a].y
    }

    /// Multiplies out a word over this generator set.
    pub fn eval_word(&self, word: &Word) -> Result<WreathElem, WreathError> {
        let mut acc = WreathElem::identity();
        for &a in word.letters() {
            let g = self.generators.get(a).ok_or(WreathError::BadIndex)?;
            acc = acc.mul(g);
        }
        Ok(acc)
    }

    /// Restricts to the named generator indices, keeping their order.
    pub fn restrict(&self, indices: &[usize]) -> Result<GeneratorSet, WreathError> {
        let mut gens = Vec::with_capacity(indices.len());
        for &a in indices {
            gens.push(self.generators.get(a).ok_or(WreathError::BadIndex)?.clone());
        }
        Ok(GeneratorSet::new(gens))
    }

    /// Replaces every generator by its radical with respect to the common
    /// grading, so all displacements land in `{-d, 0, d}`. A set whose
    /// displacements are all zero is returned unchanged.
    pub fn radical_set(&self) -> Result<GeneratorSet, WreathError> {
        let d = match self.d {
            Some(d) => d,
            None => return Ok(self.clone()),
        };
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            gens.push(g.radical(d)?);
        }
        Ok(GeneratorSet::new(gens))
    }
}

/// A nonempty word over generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    /// Errors with `BadIndex` on an empty letter sequence.
    pub fn new(letters: Vec<usize>) -> Result<Self, WreathError> {
        if letters.is_empty() {
            return Err(WreathError::BadIndex);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether every generator index `0..n_generators` occurs in the word.
    pub fn full_image(&self, n_generators: usize) -> bool {
        (0..n_generators).all(|a| self.letters.contains(&a))
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.letters
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use alloc::vec;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    fn elem(terms: &[(i64, i64)], b: i64) -> WreathElem {
        WreathElem::from_poly(poly(terms), b)
    }

    #[test]
    fn group_law() {
        let g = elem(&[(0, 1), (2, -3)], 5);
        let h = elem(&[(-1, 2)], -7);
        let gh = g.mul(&h);
        assert_eq!(gh.b, -2);
        assert_eq!(gh.y, RatFunc::from_poly(poly(&[(0, 1), (2, -3), (4, 2)])));
        assert!(g.mul(&g.inverse()).is_identity());
        assert!(g.inverse().mul(&g).is_identity());
        let k = elem(&[(3, 1)], 2);
        assert_eq!(g.mul(&h).mul(&k), g.mul(&h.mul(&k)));
        assert!(WreathElem::identity().mul(&g) == g && g.mul(&WreathElem::identity()) == g);
    }

    #[test]
    fn word_evaluation_walks_the_line() {
        // Three generators with displacements 6, -4, 0 and unit deposits; the
        // word below returns to the origin after visiting 0,6,2,2,8,4.
        let gens = GeneratorSet::new(vec![
            elem(&[(0, 1)], 6),
            elem(&[(0, 1)], -4),
            elem(&[(0, 1)], 0),
        ]);
        let w = Word::new(vec![0, 1, 2, 0, 1, 1]).unwrap();
        let v = gens.eval_word(&w).unwrap();
        assert_eq!(v.b, 0);
        assert_eq!(
            v.y,
            RatFunc::from_poly(poly(&[(0, 1), (2, 2), (4, 1), (6, 1), (8, 1)]))
        );
        assert!(w.full_image(3));
        assert!(!Word::new(vec![0, 1]).unwrap().full_image(3));
    }

    #[test]
    fn word_errors() {
        let gens = GeneratorSet::new(vec![elem(&[(0, 1)], 1)]);
        assert_eq!(Word::new(vec![]).unwrap_err(), WreathError::BadIndex);
        let w = Word::new(vec![1]).unwrap();
        assert_eq!(gens.eval_word(&w).unwrap_err(), WreathError::BadIndex);
    }

    #[test]
    fn classification_and_gcd() {
        let gens = GeneratorSet::new(vec![
            elem(&[(0, 1)], 6),
            elem(&[(0, 1)], -4),
            elem(&[(0, 1)], 0),
        ]);
        assert_eq!(gens.idx_pos(), &[0]);
        assert_eq!(gens.idx_neg(), &[1]);
        assert_eq!(gens.idx_zero(), &[2]);
        assert_eq!(gens.d(), Some(2));
        let flat = GeneratorSet::new(vec![elem(&[], 0), elem(&[(1, 1)], 0)]);
        assert_eq!(flat.d(), None);
        assert_eq!(flat.idx_zero(), &[0, 1]);
    }

    #[test]
    fn radical_positive_displacement() {
        let g = elem(&[(0, 1)], 6);
        let r = g.radical(2).unwrap();
        assert_eq!(r.b, 2);
        assert_eq!(
            r.y,
            RatFunc::new(poly(&[(0, 1)]), poly(&[(0, 1), (2, 1), (4, 1)])).unwrap()
        );
        // Cubing the radical recovers the element.
        assert_eq!(r.pow(3), g);
    }

    #[test]
    fn radical_negative_and_zero_displacement() {
        let g = elem(&[(0, 1), (1, 2)], -4);
        let r = g.radical(2).unwrap();
        assert_eq!(r.b, -2);
        assert_eq!(r.pow(2), g);
        let k = elem(&[(5, 3)], 0);
        assert_eq!(k.radical(2).unwrap(), k);
    }

    #[test]
    fn radical_errors() {
        let g = elem(&[(0, 1)], 6);
        assert_eq!(g.radical(4).unwrap_err(), WreathError::NoRadical);
        assert_eq!(g.radical(0).unwrap_err(), WreathError::NoRadical);
        assert!(g.radical(3).is_ok());
    }

    #[test]
    fn restriction_reclassifies() {
        let gens = GeneratorSet::new(vec![
            elem(&[(0, 1)], 6),
            elem(&[(0, 1)], -4),
            elem(&[(0, 1)], 0),
        ]);
        let sub = gens.restrict(&[0, 2]).unwrap();
        assert_eq!(sub.d(), Some(6));
        assert_eq!(sub.idx_pos(), &[0]);
        assert_eq!(sub.idx_zero(), &[1]);
        assert!(gens.restrict(&[5]).is_err());
    }
}
