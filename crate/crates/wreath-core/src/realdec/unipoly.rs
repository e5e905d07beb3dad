//! Dense univariate rational polynomials and Sturm root isolation.
//!
//! Laurent inputs are shifted to ordinary polynomials first, which preserves
//! the positive roots this module cares about. Isolation returns open
//! rational intervals whose endpoints are not roots, each containing exactly
//! one positive root.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::polyring::{LaurentPoly, Rat};

/// Error for root isolation of the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroPolynomial;

impl fmt::Display for ZeroPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("the zero polynomial has no isolated roots")
    }
}

impl core::error::Error for ZeroPolynomial {}

/// Dense polynomial, coefficients ascending, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::from_integer(1.into()))
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(alloc::vec![c])
    }

    /// The polynomial `Y - r`.
    pub fn linear_root(r: &Rat) -> Self {
        UniPoly::new(alloc::vec![-r.clone(), Rat::from_integer(1.into())])
    }

    /// Shifts the minimum exponent to zero and densifies. Positive roots are
    /// unchanged.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let Some(min) = p.min_exp() else {
            return UniPoly::zero();
        };
        let max = p.max_exp().unwrap();
        let mut coeffs = alloc::vec![Rat::zero(); (max - min + 1) as usize];
        for (e, c) in p.terms() {
            coeffs[(e - min) as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rat {
        self.coeffs
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = alloc::vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().clone();
        let mut rem = self.clone();
        let mut quo = alloc::vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading() / &lead;
            quo[rd - dd] = factor.clone();
            let mut coeffs = rem.coeffs;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = rd - dd + i;
                coeffs[idx] = &coeffs[idx] - &(&factor * c);
            }
            // Force the leading term out even under rounding-free arithmetic.
            coeffs[rd] = Rat::zero();
            rem = UniPoly::new(coeffs);
        }
        (UniPoly::new(quo), rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().clone();
        a.scale(&(Rat::from_integer(1.into()) / lead))
    }

    /// The radical: same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        if self.degree() == Some(0) {
            return UniPoly::one();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Divides out all factors of Y, removing the root at zero.
    pub fn strip_zero_roots(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        UniPoly::new(self.coeffs[k..].to_vec())
    }

    /// A bound strictly above every positive root.
    pub fn positive_root_bound(&self) -> Rat {
        let one = Rat::from_integer(1.into());
        match self.degree() {
            None | Some(0) => one,
            Some(_) => {
                let lead = self.leading().abs();
                let biggest = self
                    .coeffs
                    .iter()
                    .rev()
                    .skip(1)
                    .map(|c| c.abs())
                    .max()
                    .unwrap();
                &one + &(biggest / lead)
            }
        }
    }
}

/// Sturm sequence of a squarefree polynomial.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = alloc::vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(r.scale(&Rat::from_integer((-1).into())));
    }
}

/// Number of sign variations of the sequence at `x`.
pub fn variations_at(seq: &[UniPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of roots in the half-open interval `(lo, hi]`.
pub fn count_roots_in(seq: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
    variations_at(seq, lo) - variations_at(seq, hi)
}

/// Isolates every positive root of `p` in disjoint open rational intervals,
/// ascending; neither endpoint is a root and each interval holds exactly one
/// root of the squarefree part.
pub fn isolate_positive_roots(p: &UniPoly) -> Result<Vec<(Rat, Rat)>, ZeroPolynomial> {
    if p.is_zero() {
        return Err(ZeroPolynomial);
    }
    let sq = p.squarefree_part().strip_zero_roots();
    if sq.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&sq);
    let lo = Rat::zero();
    let hi = sq.positive_root_bound();
    let mut out = Vec::new();
    split_interval(&sq, &seq, lo, hi, &mut out);
    Ok(out)
}

/// Recursive bisection; endpoints are never roots.
fn split_interval(sq: &UniPoly, seq: &[UniPoly], lo: Rat, hi: Rat, out: &mut Vec<(Rat, Rat)>) {
    let count = count_roots_in(seq, &lo, &hi);
    match count {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let half = Rat::new(1.into(), 2.into());
            let mid = (&lo + &hi) * &half;
            if sq.sign_at(&mid) != 0 {
                split_interval(sq, seq, lo, mid.clone(), out);
                split_interval(sq, seq, mid, hi, out);
            } else {
                // The midpoint is itself a root; carve out a private
                // interval around it and recurse on both sides.
                let mut delta = (&hi - &lo) * &Rat::new(1.into(), 4.into());
                loop {
                    let a = &mid - &delta;
                    let b = &mid + &delta;
                    if sq.sign_at(&a) != 0
                        && sq.sign_at(&b) != 0
                        && count_roots_in(seq, &a, &b) == 1
                    {
                        split_interval(sq, seq, lo, a.clone(), out);
                        out.push((a, b.clone()));
                        split_interval(sq, seq, b, hi, out);
                        return;
                    }
                    delta *= &half;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn upoly(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (Y - 1)(Y - 2) = Y^2 - 3Y + 2.
        let p = upoly(&[2, -3, 1]);
        let (q, r) = p.div_rem(&upoly(&[-1, 1]));
        assert_eq!(q, upoly(&[-2, 1]));
        assert!(r.is_zero());
        let g = p.gcd(&upoly(&[-2, 1]));
        assert_eq!(g, upoly(&[-2, 1]));
        assert_eq!(p.eval(&rat(3)), rat(2));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (Y - 1)^2 (Y + 2) = Y^3 - 3Y + 2.
        let p = upoly(&[2, -3, 0, 1]);
        let sq = p.squarefree_part();
        // Roots 1 and -2, both simple.
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.sign_at(&rat(1)), 0);
        assert_eq!(sq.sign_at(&rat(-2)), 0);
    }

    #[test]
    fn isolates_distinct_positive_roots() {
        // Roots 1, 2, 3 (and -1 which must be ignored).
        let p = upoly(&[-1, 1])
            .mul(&upoly(&[-2, 1]))
            .mul(&upoly(&[-3, 1]))
            .mul(&upoly(&[1, 1]));
        let roots = isolate_positive_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        for (w, (lo, hi)) in [rat(1), rat(2), rat(3)].iter().zip(&roots) {
            assert!(lo < w && w < hi, "{w} not inside ({lo}, {hi})");
        }
        // Intervals are disjoint and ascending.
        for pair in roots.windows(2) {
            assert!(pair[0].1 <= pair[1].0);
        }
    }

    #[test]
    fn isolation_handles_edge_cases() {
        assert_eq!(
            isolate_positive_roots(&UniPoly::zero()).unwrap_err(),
            ZeroPolynomial
        );
        // No positive roots.
        assert!(isolate_positive_roots(&upoly(&[1, 0, 1]))
            .unwrap()
            .is_empty());
        // Root at zero only.
        assert!(isolate_positive_roots(&upoly(&[0, 1])).unwrap().is_empty());
        // Repeated positive root found once.
        let p = upoly(&[-1, 1]).mul(&upoly(&[-1, 1]));
        assert_eq!(isolate_positive_roots(&p).unwrap().len(), 1);
    }

    #[test]
    fn laurent_conversion_keeps_positive_roots() {
        // X^{-1} (X - 1)(X - 4) as a Laurent polynomial.
        let lp = LaurentPoly::from_terms([(-1, rat(4)), (0, rat(-5)), (1, rat(1))]);
        let p = UniPoly::from_laurent(&lp);
        let roots = isolate_positive_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(p.sign_at(&rat(1)), 0);
        assert_eq!(p.sign_at(&rat(4)), 0);
    }
}
