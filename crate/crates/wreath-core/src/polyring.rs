//! Laurent polynomials and rational functions over the rationals.
//!
//! [`LaurentPoly`] is a sparse map from integer exponents to nonzero rational
//! coefficients; [`RatFunc`] is a numerator/denominator pair reduced lazily
//! (equality goes through cross-multiplication). Degrees toward either end of
//! the exponent line are [`ExtDegree`] values so that the zero polynomial has
//! well-defined sentinel degrees.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Direction on the exponent line: `Plus` looks at the highest exponent,
/// `Minus` at the lowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` for `Plus`, `-1` for `Minus`.
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// The opposite direction.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+"),
            Sign::Minus => f.write_str("-"),
        }
    }
}

/// Degree extended by infinities, so the zero polynomial has a degree in both
/// directions: its top degree is `MinusInfinity` and its bottom degree is
/// `PlusInfinity` (the empty maximum and minimum).
///
/// The derived order is `MinusInfinity < Finite(_) < PlusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDegree {
    MinusInfinity,
    Finite(i64),
    PlusInfinity,
}

impl ExtDegree {
    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtDegree::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ExtDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDegree::MinusInfinity => f.write_str("-inf"),
            ExtDegree::Finite(v) => write!(f, "{v}"),
            ExtDegree::PlusInfinity => f.write_str("+inf"),
        }
    }
}

/// Errors raised by polynomial and rational-function operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Evaluation was requested at the excluded point `r = 0`.
    ZeroEvaluationPoint,
    /// The polynomial does not live in the expected sub-ring `Q[X^{±d}]`, or
    /// the grading parameters themselves are invalid.
    WrongGrading,
    /// A coefficient was negative where only nonnegative ones are meaningful.
    NegativeCoefficient,
    /// A rational function was built with, or divided by, denominator zero.
    ZeroDenominator,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroEvaluationPoint => f.write_str("evaluation point must be nonzero"),
            PolyError::WrongGrading => f.write_str("polynomial does not match the grading"),
            PolyError::NegativeCoefficient => f.write_str("negative coefficient not allowed here"),
            PolyError::ZeroDenominator => f.write_str("denominator is zero"),
        }
    }
}

impl core::error::Error for PolyError {}

/// `r^e` for nonzero `r` (negative `e` inverts). Panics if `r = 0` and `e < 0`.
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut base = if e < 0 { r.recip() } else { r.clone() };
    let mut k = (e as i128).unsigned_abs();
    let mut acc = Rat::one();
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Sparse Laurent polynomial over the rationals.
///
/// Invariant: the map holds no zero coefficients, so structural equality is
/// semantic equality and iteration yields terms in ascending exponent order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0)
    }

    /// The constant polynomial with the given value.
    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * X^e` (zero if `c = 0`).
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `X^e`.
    pub fn x_pow(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    /// The window sum `X^{from*d} + X^{(from+1)*d} + ... + X^{to*d}`.
    ///
    /// Requires `d >= 1` and `from <= to`.
    pub fn window(d: i64, from: i64, to: i64) -> Self {
        assert!(d >= 1 && from <= to, "invalid window parameters");
        let mut terms = BTreeMap::new();
        for t in from..=to {
            terms.insert(t * d, Rat::one());
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `X^e` (zero if absent).
    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Smallest exponent present, if the polynomial is nonzero.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent present, if the polynomial is nonzero.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Degree toward the given direction; the zero polynomial gets the
    /// appropriate infinite sentinel (`deg_+ 0 = -inf`, `deg_- 0 = +inf`).
    pub fn degree(&self, sign: Sign) -> ExtDegree {
        match sign {
            Sign::Plus => self
                .max_exp()
                .map_or(ExtDegree::MinusInfinity, ExtDegree::Finite),
            Sign::Minus => self
                .min_exp()
                .map_or(ExtDegree::PlusInfinity, ExtDegree::Finite),
        }
    }

    /// Coefficient at the extreme exponent in the given direction; zero for
    /// the zero polynomial.
    pub fn leading_coef(&self, sign: Sign) -> Rat {
        let e = match sign {
            Sign::Plus => self.max_exp(),
            Sign::Minus => self.min_exp(),
        };
        e.map_or_else(Rat::zero, |e| self.terms[&e].clone())
    }

    /// Multiplies by the monomial `c * X^e`.
    pub fn mul_monomial(&self, c: &Rat, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k + e, v * c)).collect(),
        }
    }

    /// Multiplies by `X^e`.
    pub fn shift(&self, e: i64) -> Self {
        self.mul_monomial(&Rat::one(), e)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        self.mul_monomial(c, 0)
    }

    /// Substitutes `X -> X^{-1}`.
    pub fn substitute_inverse(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `X -> X^k` for `k >= 1`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Evaluates at a nonzero rational point.
    pub fn eval(&self, r: &Rat) -> Result<Rat, PolyError> {
        if r.is_zero() {
            return Err(PolyError::ZeroEvaluationPoint);
        }
        let mut acc = Rat::zero();
        for (e, c) in self.terms() {
            acc += c * rat_pow(r, e);
        }
        Ok(acc)
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Whether the support lies in `d*Z` and fills the whole progression
    /// `min, min+d, ..., max` with no missing step.
    ///
    /// Errors with `WrongGrading` if `d < 1` or some exponent is not a
    /// multiple of `d`. The zero polynomial is gap-free.
    pub fn is_gap_free(&self, d: i64) -> Result<bool, PolyError> {
        if d < 1 {
            return Err(PolyError::WrongGrading);
        }
        if self.terms.keys().any(|e| e.rem_euclid(d) != 0) {
            return Err(PolyError::WrongGrading);
        }
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(true),
        };
        let mut e = lo;
        while e <= hi {
            if !self.terms.contains_key(&e) {
                return Ok(false);
            }
            e += d;
        }
        Ok(true)
    }

    /// Smallest `q >= 0` such that `W^q * self` is gap-free for the window
    /// `W = X^{-m*d} + ... + 1 + ... + X^{n*d}`.
    ///
    /// Requires nonnegative coefficients (`NegativeCoefficient` otherwise)
    /// and support in `d*Z` (`WrongGrading`). A degenerate window (`m = n =
    /// 0`) is accepted only if the polynomial is already gap-free.
    pub fn gap_free_exponent(&self, d: i64, m: i64, n: i64) -> Result<i64, PolyError> {
        if d < 1 || m < 0 || n < 0 {
            return Err(PolyError::WrongGrading);
        }
        if !self.is_nonnegative() {
            return Err(PolyError::NegativeCoefficient);
        }
        if self.is_gap_free(d)? {
            return Ok(0);
        }
        if m == 0 && n == 0 {
            // The trivial window can never fill a gap.
            return Err(PolyError::WrongGrading);
        }
        let window = LaurentPoly::window(d, -m, n);
        let span = (self.max_exp().unwrap() - self.min_exp().unwrap()) / d;
        let mut g = self * &window;
        let mut q = 1;
        while !g.is_gap_free(d)? {
            // Each multiplication shrinks every internal gap by at least m+n
            // steps, so the loop is bounded by the initial span.
            assert!(q <= span + 1, "gap filling failed to converge");
            g = &g * &window;
            q += 1;
        }
        Ok(q)
    }

    /// Quotient and remainder of division by `divisor`, for ordinary
    /// polynomials (no negative exponents). Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        debug_assert!(self.min_exp().is_none_or(|e| e >= 0));
        debug_assert!(divisor.min_exp().is_none_or(|e| e >= 0));
        let dd = divisor.max_exp().unwrap();
        let dlc = divisor.leading_coef(Sign::Plus);
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        while let Some(rd) = rem.max_exp() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coef(Sign::Plus) / &dlc;
            let e = rd - dd;
            quo.add_term(e, c.clone());
            rem = &rem - &divisor.mul_monomial(&c, e);
        }
        (quo, rem)
    }

    /// Monic greatest common divisor of two ordinary polynomials
    /// (`gcd(0, 0) = 0`).
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
        let lc = a.leading_coef(Sign::Plus);
        a.scale(&lc.recip())
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients; `0` for the zero polynomial.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * Rat::from_integer(den_lcm.clone());
            debug_assert!(scaled.is_integer());
            num_gcd = num_gcd.gcd(&scaled.to_integer());
        }
        Rat::new(num_gcd, den_lcm)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let unit_coef = mag.is_one();
            match (e, unit_coef) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{e}")?,
                (_, false) => write!(f, "{mag}*X^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Rational function as a numerator/denominator pair of Laurent polynomials.
///
/// The pair is kept unreduced; equality cross-multiplies. [`RatFunc::canonical`]
/// produces the reduced normal form when a unique representative is needed.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Builds `num / den`; errors if `den = 0`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Division; errors if `rhs = 0`.
    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(RatFunc {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        })
    }

    /// Multiplies by `X^e`.
    pub fn shift(&self, e: i64) -> RatFunc {
        RatFunc {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    /// Evaluates at a nonzero rational point; errors with `ZeroDenominator`
    /// if the denominator vanishes there.
    pub fn eval(&self, r: &Rat) -> Result<Rat, PolyError> {
        let d = self.den.eval(r)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(self.num.eval(r)? / d)
    }

    /// Exact conversion to a Laurent polynomial, if the denominator divides
    /// the numerator.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.num.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let ns = self.num.min_exp().unwrap();
        let ds = self.den.min_exp().unwrap();
        let n = self.num.shift(-ns);
        let d = self.den.shift(-ds);
        let (q, r) = n.div_rem(&d);
        if r.is_zero() {
            Some(q.shift(ns - ds))
        } else {
            None
        }
    }

    /// Reduced normal form: numerator and denominator coprime, denominator an
    /// ordinary polynomial with nonzero constant term, coprime integer
    /// coefficients, and positive leading coefficient.
    pub fn canonical(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let ns = self.num.min_exp().unwrap();
        let ds = self.den.min_exp().unwrap();
        let n = self.num.shift(-ns);
        let d = self.den.shift(-ds);
        let g = n.gcd(&d);
        let (n, rn) = n.div_rem(&g);
        let (d, rd) = d.div_rem(&g);
        debug_assert!(rn.is_zero() && rd.is_zero());
        let mut unit = d.content();
        if d.leading_coef(Sign::Plus).is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        RatFunc {
            num: n.scale(&inv).shift(ns - ds),
            den: d.scale(&inv),
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let a = self.canonical();
        let b = other.canonical();
        (&a.num, &a.den).cmp(&(&b.num, &b.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn square_of_symmetric_window() {
        let w = p(&[(-1, 1), (0, 1), (1, 1)]);
        let sq = &w * &w;
        assert_eq!(sq, p(&[(-2, 1), (-1, 2), (0, 3), (1, 2), (2, 1)]));
    }

    #[test]
    fn degrees_of_zero_are_sentinels() {
        let z = LaurentPoly::zero();
        assert_eq!(z.degree(Sign::Plus), ExtDegree::MinusInfinity);
        assert_eq!(z.degree(Sign::Minus), ExtDegree::PlusInfinity);
        assert!(z.leading_coef(Sign::Plus).is_zero());
    }

    #[test]
    fn degrees_and_leading_coefs() {
        let f = p(&[(-3, 5), (5, -2)]);
        assert_eq!(f.degree(Sign::Plus), ExtDegree::Finite(5));
        assert_eq!(f.degree(Sign::Minus), ExtDegree::Finite(-3));
        assert_eq!(f.leading_coef(Sign::Plus), rat(-2));
        assert_eq!(f.leading_coef(Sign::Minus), rat(5));
        assert!(ExtDegree::MinusInfinity < ExtDegree::Finite(i64::MIN));
        assert!(ExtDegree::Finite(i64::MAX) < ExtDegree::PlusInfinity);
    }

    #[test]
    fn eval_rejects_zero_point() {
        let f = p(&[(2, 1)]);
        assert_eq!(f.eval(&Rat::zero()), Err(PolyError::ZeroEvaluationPoint));
        let g = p(&[(-1, 1), (1, 1)]);
        let two = rat(2);
        // 1/2 + 2 = 5/2
        assert_eq!(
            g.eval(&two).unwrap(),
            Rat::new(BigInt::from(5), BigInt::from(2))
        );
    }

    #[test]
    fn eval_is_multiplicative() {
        let f = p(&[(-2, 3), (0, -1), (3, 2)]);
        let g = p(&[(-1, 1), (2, 5)]);
        let r = Rat::new(BigInt::from(7), BigInt::from(3));
        let lhs = (&f * &g).eval(&r).unwrap();
        let rhs = f.eval(&r).unwrap() * g.eval(&r).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gap_free_checks() {
        assert!(p(&[(0, 1), (2, 1), (4, 1)]).is_gap_free(2).unwrap());
        assert!(!p(&[(0, 1), (4, 1)]).is_gap_free(2).unwrap());
        assert_eq!(
            p(&[(0, 1), (3, 1)]).is_gap_free(2),
            Err(PolyError::WrongGrading)
        );
        assert!(LaurentPoly::zero().is_gap_free(3).unwrap());
        assert!(p(&[(-4, 2), (-2, 1), (0, 1)]).is_gap_free(2).unwrap());
    }

    #[test]
    fn gap_free_exponent_example() {
        // Window X^{-1} + 1 + X needs two passes to fill 1 + X^4.
        let f = p(&[(0, 1), (4, 1)]);
        assert_eq!(f.gap_free_exponent(1, 1, 1).unwrap(), 2);
        assert_eq!(p(&[(0, 1), (1, 1)]).gap_free_exponent(1, 1, 1).unwrap(), 0);
        assert_eq!(
            p(&[(0, -1), (4, 1)]).gap_free_exponent(1, 1, 1),
            Err(PolyError::NegativeCoefficient)
        );
        assert_eq!(f.gap_free_exponent(1, 0, 0), Err(PolyError::WrongGrading));
        // One-sided window also works.
        assert_eq!(f.gap_free_exponent(1, 0, 1).unwrap(), 3);
    }

    #[test]
    fn gap_free_exponent_verifies() {
        let f = p(&[(-2, 1), (2, 3), (8, 1)]);
        let q = f.gap_free_exponent(2, 1, 1).unwrap();
        assert!(q > 0);
        let w = LaurentPoly::window(2, -1, 1);
        let mut g = f.clone();
        for _ in 0..q {
            g = &g * &w;
        }
        assert!(g.is_gap_free(2).unwrap());
        // Minimality: one fewer pass still has a gap.
        let mut h = f;
        for _ in 0..q - 1 {
            h = &h * &w;
        }
        assert!(!h.is_gap_free(2).unwrap());
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = p(&[(0, -1), (2, 1)]); // X^2 - 1
        let b = p(&[(0, 1), (1, 1)]); // X + 1
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, p(&[(0, -1), (1, 1)]));
        let g = a.gcd(&p(&[(0, 2), (1, 2)]));
        assert_eq!(g, b); // monic X + 1
        let coprime = p(&[(0, 1), (1, 1)]).gcd(&p(&[(0, -1), (1, 1)]));
        assert_eq!(coprime, LaurentPoly::one());
    }

    #[test]
    fn content_normalizes() {
        let f = LaurentPoly::from_terms(vec![
            (0, Rat::new(BigInt::from(4), BigInt::from(6))),
            (3, Rat::new(BigInt::from(-2), BigInt::from(3))),
        ]);
        let c = f.content();
        assert_eq!(c, Rat::new(BigInt::from(2), BigInt::from(3)));
        let g = f.scale(&c.recip());
        assert!(g.is_integral());
        assert_eq!(g.content(), Rat::one());
    }

    #[test]
    fn ratfunc_cross_multiplication_equality() {
        let a = RatFunc::new(p(&[(0, 1), (1, 1)]), LaurentPoly::one()).unwrap();
        let b = RatFunc::new(p(&[(0, 1), (1, 2), (2, 1)]), p(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(a, b);
        assert!(RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn ratfunc_field_ops() {
        let x = RatFunc::from_poly(p(&[(1, 1)]));
        let one = RatFunc::one();
        let s = &x + &one;
        let d = &x - &one;
        let prod = &s * &d;
        let expect = RatFunc::from_poly(p(&[(0, -1), (2, 1)]));
        assert_eq!(prod, expect);
        let q = prod.checked_div(&s).unwrap();
        assert_eq!(q, d);
        assert!(one.checked_div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn ratfunc_to_laurent() {
        // (X^6 - 1)/(X^2 - 1) = X^4 + X^2 + 1
        let f = RatFunc::new(p(&[(0, -1), (6, 1)]), p(&[(0, -1), (2, 1)])).unwrap();
        assert_eq!(f.to_laurent().unwrap(), p(&[(0, 1), (2, 1), (4, 1)]));
        // Shifted variant still divides.
        let g = RatFunc::new(p(&[(-3, -1), (3, 1)]), p(&[(-1, -1), (1, 1)])).unwrap();
        assert_eq!(g.to_laurent().unwrap(), p(&[(-2, 1), (0, 1), (2, 1)]));
        let bad = RatFunc::new(p(&[(0, 1), (1, 1)]), p(&[(0, -1), (1, 1)])).unwrap();
        assert!(bad.to_laurent().is_none());
    }

    #[test]
    fn ratfunc_canonical_form() {
        let f = RatFunc::new(
            p(&[(1, 2), (2, 2)]),  // 2X + 2X^2
            p(&[(0, -4), (2, 4)]), // 4X^2 - 4
        )
        .unwrap();
        let c = f.canonical();
        // 2X(1+X) / 4(X-1)(X+1) reduces to (1/2)X over the primitive X - 1.
        assert_eq!(
            c.num(),
            &LaurentPoly::monomial(Rat::new(BigInt::one(), BigInt::from(2)), 1)
        );
        assert_eq!(c.den(), &p(&[(0, -1), (1, 1)]));
        assert_eq!(f, c);
    }

    #[test]
    fn window_sums() {
        assert_eq!(LaurentPoly::window(2, 0, 2), p(&[(0, 1), (2, 1), (4, 1)]));
        assert_eq!(LaurentPoly::window(3, -1, 1), p(&[(-3, 1), (0, 1), (3, 1)]));
        assert_eq!(LaurentPoly::window(5, 0, 0), LaurentPoly::one());
    }

    #[test]
    fn substitution_round_trips() {
        let f = p(&[(-2, 3), (0, 1), (5, -7)]);
        assert_eq!(f.substitute_inverse().substitute_inverse(), f);
        assert_eq!(f.substitute_power(3).min_exp(), Some(-6));
        assert_eq!(
            f.degree(Sign::Plus).finite().unwrap(),
            -f.substitute_inverse().degree(Sign::Minus).finite().unwrap()
        );
    }
}
