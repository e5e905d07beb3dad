//! The solution module of the identity equation.
//!
//! For a double-full pair set the equation "sum of f_ij h_ij plus sum of
//! f_k y_k = 0" is linear over the Laurent polynomials in Y = X^d. Splitting
//! every coefficient by residue modulo d turns it into d rows over Q(Y);
//! clearing denominators and appending the bookkeeping rows for the
//! aggregate coordinates f_S and f_K gives an exact kernel problem over
//! Q[Y], which column reduction by unimodular operations solves without
//! losing saturation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::{LaurentPoly, Rat, RatFunc, Sign};
use crate::wreath::GeneratorSet;

/// Errors raised while assembling the solution module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinError {
    /// A pair index was out of range or had the wrong displacement sign.
    BadIndex,
    /// A denominator was not a polynomial in X^d, so the residue split does
    /// not exist.
    BadDenominator,
    /// The pair set was empty; the equation needs at least one pair.
    NoPairs,
}

impl fmt::Display for LinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinError::BadIndex => {
                f.write_str("pair indices must select a positive and a negative displacement")
            }
            LinError::BadDenominator => f.write_str("denominator is not a polynomial in X^d"),
            LinError::NoPairs => f.write_str("pair set is empty"),
        }
    }
}

impl core::error::Error for LinError {}

/// The radical combination `h` of a pair: climb deposit plus shifted drop
/// deposit. Its defining power identity is checked on every call.
pub fn compute_h(gens: &GeneratorSet, i: usize, j: usize) -> Result<RatFunc, LinError> {
    if i >= gens.len() || j >= gens.len() || gens.b(i) <= 0 || gens.b(j) >= 0 {
        return Err(LinError::BadIndex);
    }
    let d = gens.d().expect("signed displacements imply a grading");
    let gi = &gens.generators()[i];
    let gj = &gens.generators()[j];
    let hi = gi.radical(d).expect("grading divides displacements").y;
    let hj = gj.radical(d).expect("grading divides displacements").y;
    let h = &hi + &hj.shift(d);
    // g_i^{|b_j|} g_j^{b_i} = (h E_ij, 0) pins h against the group law.
    let bi = gens.b(i);
    let bj = gens.b(j).abs();
    let lhs = &gi.pow(bj as u32) * &gj.pow(bi as u32);
    let window = LaurentPoly::window(d, 0, bi * bj / d - 1);
    assert_eq!(lhs.b, 0, "pair powers must cancel displacements");
    assert_eq!(
        lhs.y,
        &RatFunc::from_poly(window) * &h,
        "radical combination identity failed"
    );
    Ok(h)
}

/// Splits a rational function into its residue components modulo `d`:
/// `f = sum of X^m c_m(X^d)` with each `c_m` returned as a rational function
/// in `Y = X^d` (exponents divided by `d`). The denominator must already be
/// a polynomial in `X^d`.
pub fn decompose_mod_d(f: &RatFunc, d: i64) -> Result<Vec<RatFunc>, LinError> {
    assert!(d >= 1, "residue split needs a positive grading");
    let f = f.canonical();
    let mut den_y = LaurentPoly::zero();
    for (e, c) in f.den().terms() {
        if e.rem_euclid(d) != 0 {
            return Err(LinError::BadDenominator);
        }
        den_y = &den_y + &LaurentPoly::monomial(c.clone(), e / d);
    }
    let mut nums = alloc::vec![LaurentPoly::zero(); d as usize];
    for (e, c) in f.num().terms() {
        let m = e.rem_euclid(d);
        let q = (e - m) / d;
        let comp = &mut nums[m as usize];
        *comp = &*comp + &LaurentPoly::monomial(c.clone(), q);
    }
    Ok(nums
        .into_iter()
        .map(|n| RatFunc::new(n, den_y.clone()).expect("canonical denominator is nonzero"))
        .collect())
}

/// The residue-split equation system of a pair set: `d` rows over the
/// coordinates `(f_ij..., f_k...)` with denominators cleared.
#[derive(Clone, Debug)]
pub struct SolutionSystem {
    pub d: i64,
    /// Pair coordinates in ascending order.
    pub pairs: Vec<(usize, usize)>,
    /// Zero-displacement coordinates in ascending order.
    pub zeros: Vec<usize>,
    /// The radical combinations, one per pair.
    pub h: BTreeMap<(usize, usize), RatFunc>,
    /// Cleared residue rows in Y, one per residue class, over
    /// `pairs.len() + zeros.len()` columns.
    pub residue_rows: Vec<Vec<LaurentPoly>>,
}

impl SolutionSystem {
    /// Number of module coordinates: the aggregates f_S (and f_K when loops
    /// exist) followed by the pair and loop coordinates.
    pub fn n_coords(&self) -> usize {
        1 + usize::from(!self.zeros.is_empty()) + self.pairs.len() + self.zeros.len()
    }

    /// Index of the aggregate pair coordinate.
    pub fn coord_s(&self) -> usize {
        0
    }

    /// Index of the aggregate loop coordinate, when loops exist.
    pub fn coord_k(&self) -> Option<usize> {
        (!self.zeros.is_empty()).then_some(1)
    }

    fn aggregates(&self) -> usize {
        1 + usize::from(!self.zeros.is_empty())
    }

    /// The full matrix over all coordinates: residue rows (zero on the
    /// aggregates) plus one bookkeeping row per aggregate tying it to the
    /// sum of its parts.
    pub fn full_rows(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.n_coords();
        let offset = self.aggregates();
        let mut rows = Vec::new();
        for r in &self.residue_rows {
            let mut row = alloc::vec![LaurentPoly::zero(); n];
            row[offset..].clone_from_slice(r);
            rows.push(row);
        }
        let mut srow = alloc::vec![LaurentPoly::zero(); n];
        srow[self.coord_s()] = LaurentPoly::one();
        for t in 0..self.pairs.len() {
            srow[offset + t] = -&LaurentPoly::one();
        }
        rows.push(srow);
        if let Some(ck) = self.coord_k() {
            let mut krow = alloc::vec![LaurentPoly::zero(); n];
            krow[ck] = LaurentPoly::one();
            for t in 0..self.zeros.len() {
                krow[offset + self.pairs.len() + t] = -&LaurentPoly::one();
            }
            rows.push(krow);
        }
        rows
    }
}

fn poly_lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let g = a.gcd(b);
    let (q, r) = (a * b).div_rem(&g);
    debug_assert!(r.is_zero());
    q
}

/// Builds the residue system for a pair set over a generator context.
pub fn solution_system(
    gens: &GeneratorSet,
    s: &[(usize, usize)],
) -> Result<SolutionSystem, LinError> {
    if s.is_empty() {
        return Err(LinError::NoPairs);
    }
    let mut pairs: Vec<(usize, usize)> = s.to_vec();
    pairs.sort_unstable();
    pairs.dedup();
    let zeros: Vec<usize> = gens.idx_zero().to_vec();
    let d = gens.d().ok_or(LinError::BadIndex)?;
    let mut h = BTreeMap::new();
    // Residue components per column, in Y.
    let mut columns: Vec<Vec<RatFunc>> = Vec::new();
    for &(i, j) in &pairs {
        let hij = compute_h(gens, i, j)?;
        columns.push(decompose_mod_d(&hij, d)?);
        h.insert((i, j), hij);
    }
    for &k in &zeros {
        columns.push(decompose_mod_d(gens.y(k), d)?);
    }
    let mut residue_rows = Vec::new();
    for m in 0..d as usize {
        let entries: Vec<RatFunc> = columns.iter().map(|c| c[m].canonical()).collect();
        let lcm = entries
            .iter()
            .filter(|e| !e.is_zero())
            .fold(LaurentPoly::one(), |acc, e| poly_lcm(&acc, e.den()));
        let row: Vec<LaurentPoly> = entries
            .iter()
            .map(|e| {
                let (q, r) = lcm.div_rem(e.den());
                debug_assert!(r.is_zero());
                e.num() * &q
            })
            .collect();
        residue_rows.push(row);
    }
    Ok(SolutionSystem {
        d,
        pairs,
        zeros,
        h,
        residue_rows,
    })
}

/// Kernel of a polynomial matrix as a saturated column basis.
///
/// Columns are reduced by unimodular operations only (subtracting polynomial
/// multiples and swapping), so the transformation matrix stays invertible
/// over Q[Y] and its columns at the non-pivot positions are an exact basis
/// of the kernel, not just of a finite-index submodule.
pub fn kernel_basis(matrix: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let rows = matrix.len();
    let n = match matrix.first() {
        Some(r) => r.len(),
        None => return Vec::new(),
    };
    assert!(matrix.iter().all(|r| r.len() == n), "ragged matrix");
    let mut a: Vec<Vec<LaurentPoly>> = matrix.to_vec();
    // Row scaling by units does not change the kernel; make entries ordinary
    // so polynomial division applies.
    for row in &mut a {
        let m = row
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.min_exp().unwrap())
            .min();
        if let Some(m) = m {
            if m < 0 {
                for p in row.iter_mut() {
                    *p = p.shift(-m);
                }
            }
        }
    }
    // v[j] is column j of the transformation, length n.
    let mut v: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|t| {
                    if t == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut col_start = 0;
    for r in 0..rows {
        loop {
            let nz: Vec<usize> = (col_start..n).filter(|&j| !a[r][j].is_zero()).collect();
            let Some(&piv) = nz
                .iter()
                .min_by_key(|&&j| (a[r][j].degree(Sign::Plus).finite().unwrap(), j))
            else {
                break;
            };
            if nz.len() == 1 {
                for row in &mut a {
                    row.swap(piv, col_start);
                }
                v.swap(piv, col_start);
                col_start += 1;
                break;
            }
            for &j in &nz {
                if j == piv {
                    continue;
                }
                let (q, _) = a[r][j].div_rem(&a[r][piv]);
                if q.is_zero() {
                    continue;
                }
                for row in a.iter_mut() {
                    row[j] = &row[j] - &(&q * &row[piv]);
                }
                let (vj, vp) = borrow_two(&mut v, j, piv);
                for t in 0..n {
                    vj[t] = &vj[t] - &(&q * &vp[t]);
                }
            }
        }
    }
    let mut kernel: Vec<Vec<LaurentPoly>> = v.drain(col_start..).collect();
    for vec in &mut kernel {
        normalize_vector(vec);
    }
    kernel
}

fn borrow_two<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

/// Scales a vector to its canonical representative: minimum exponent zero,
/// coprime integer coefficients, and a positive leading coefficient in the
/// first nonzero coordinate.
pub(crate) fn normalize_vector(vec: &mut [LaurentPoly]) {
    let m = vec
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.min_exp().unwrap())
        .min();
    let Some(m) = m else { return };
    if m != 0 {
        for p in vec.iter_mut() {
            *p = p.shift(-m);
        }
    }
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in vec.iter() {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    let mut scale = Rat::new(den, num);
    let first = vec.iter().find(|p| !p.is_zero()).unwrap();
    if first.leading_coef(Sign::Plus).is_negative() {
        scale = -scale;
    }
    for p in vec.iter_mut() {
        *p = p.scale(&scale);
    }
}

/// A generating set of the solution module, coordinates in `Y = X^d`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub d: i64,
    pub pairs: Vec<(usize, usize)>,
    pub zeros: Vec<usize>,
    /// Basis vectors over the coordinates `(f_S, [f_K,] f_ij..., f_k...)`.
    pub vectors: Vec<Vec<LaurentPoly>>,
}

impl ModuleBasis {
    pub fn n_coords(&self) -> usize {
        1 + usize::from(!self.zeros.is_empty()) + self.pairs.len() + self.zeros.len()
    }

    pub fn coord_s(&self) -> usize {
        0
    }

    pub fn coord_k(&self) -> Option<usize> {
        (!self.zeros.is_empty()).then_some(1)
    }

    /// Coordinate of the `t`-th pair.
    pub fn coord_pair(&self, t: usize) -> usize {
        1 + usize::from(!self.zeros.is_empty()) + t
    }

    /// Coordinate of the `t`-th zero-displacement generator.
    pub fn coord_zero(&self, t: usize) -> usize {
        1 + usize::from(!self.zeros.is_empty()) + self.pairs.len() + t
    }
}

/// Computes a saturated basis of the solution module of a pair set.
pub fn solution_module_basis(system: &SolutionSystem) -> ModuleBasis {
    let vectors = kernel_basis(&system.full_rows());
    ModuleBasis {
        d: system.d,
        pairs: system.pairs.clone(),
        zeros: system.zeros.clone(),
        vectors,
    }
}
