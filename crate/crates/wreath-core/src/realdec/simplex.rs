//! Exact phase-I simplex over an ordered field, and Gordan's alternative.
//!
//! The solver is generic over a field context so the same pivoting code runs
//! on rationals and on real algebraic numbers. Bland's rule makes it
//! terminate without any genericity assumptions; every comparison is an
//! exact sign computation.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::polyring::{LaurentPoly, Rat};

/// An ordered-field context: creates and combines elements of `Elem`.
///
/// `inv` may assume its argument is nonzero; callers check signs first.
pub trait FieldOps {
    type Elem: Clone + fmt::Debug;

    fn embed(&self, r: &Rat) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Exact sign: -1, 0, or 1.
    fn sign(&self, a: &Self::Elem) -> i8;

    fn zero(&self) -> Self::Elem {
        self.embed(&Rat::zero())
    }

    fn one(&self) -> Self::Elem {
        self.embed(&Rat::from_integer(1.into()))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.sign(a) == 0
    }

    /// Evaluates a Laurent polynomial with nonnegative exponents at a point.
    fn eval_poly(&self, p: &LaurentPoly, x: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut power = self.one();
        let mut at = 0i64;
        for (e, c) in p.terms() {
            assert!(e >= 0, "evaluation needs nonnegative exponents");
            while at < e {
                power = self.mul(&power, x);
                at += 1;
            }
            acc = self.add(&acc, &self.mul(&self.embed(c), &power));
        }
        acc
    }
}

/// The rational field.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatField;

impl FieldOps for RatField {
    type Elem = Rat;

    fn embed(&self, r: &Rat) -> Rat {
        r.clone()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }

    fn inv(&self, a: &Rat) -> Rat {
        Rat::from_integer(1.into()) / a
    }

    fn sign(&self, a: &Rat) -> i8 {
        if a.is_zero() {
            0
        } else if a.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Outcome of a phase-I feasibility run for `A y = b, y >= 0`.
#[derive(Clone, Debug)]
pub enum LpOutcome<E> {
    /// A feasible point `y`.
    Feasible(Vec<E>),
    /// A separating vector `u` with `u^T A <= 0` componentwise and
    /// `u^T b > 0`, certifying infeasibility.
    Infeasible(Vec<E>),
}

/// Decides feasibility of `A y = b, y >= 0` by minimizing the sum of
/// artificial variables with Bland's rule.
pub fn phase_one_feasibility<F: FieldOps>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[F::Elem],
) -> LpOutcome<F::Elem> {
    let nr = a.len();
    assert_eq!(nr, b.len(), "matrix and right-hand side disagree");
    let m = a.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == m), "ragged matrix");
    if nr == 0 {
        return LpOutcome::Feasible(alloc::vec![field.zero(); m]);
    }
    // Tableau [A | I | b] with rows flipped so b >= 0; remember the flips to
    // report the certificate against the caller's orientation.
    let mut flipped = alloc::vec![false; nr];
    let mut t: Vec<Vec<F::Elem>> = Vec::with_capacity(nr);
    for i in 0..nr {
        let flip = field.sign(&b[i]) < 0;
        flipped[i] = flip;
        let mut row: Vec<F::Elem> = Vec::with_capacity(m + nr + 1);
        for x in &a[i] {
            row.push(if flip { field.neg(x) } else { x.clone() });
        }
        for j in 0..nr {
            row.push(if j == i { field.one() } else { field.zero() });
        }
        row.push(if flip { field.neg(&b[i]) } else { b[i].clone() });
        t.push(row);
    }
    let rhs = m + nr;
    let mut basis: Vec<usize> = (m..m + nr).collect();
    loop {
        // Reduced costs: cost 1 on artificials, 0 elsewhere.
        let mut entering = None;
        for j in 0..m + nr {
            if basis.contains(&j) {
                continue;
            }
            let mut red = if j >= m { field.one() } else { field.zero() };
            for (bi, row) in basis.iter().zip(&t) {
                if *bi >= m {
                    red = field.sub(&red, &row[j]);
                }
            }
            if field.sign(&red) < 0 {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { break };
        // Ratio test, ties broken by smallest basis index.
        let mut leave: Option<(usize, F::Elem)> = None;
        for i in 0..nr {
            if field.sign(&t[i][e]) <= 0 {
                continue;
            }
            let ratio = field.mul(&t[i][rhs], &field.inv(&t[i][e]));
            let better = match &leave {
                None => true,
                Some((li, lr)) => match field.sign(&field.sub(&ratio, lr)) {
                    -1 => true,
                    0 => basis[i] < basis[*li],
                    _ => false,
                },
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (li, _) = leave.expect("phase-I objective is bounded below");
        pivot(field, &mut t, li, e);
        basis[li] = e;
    }
    // Objective value: total artificial mass left in the basis.
    let mut obj = field.zero();
    for i in 0..nr {
        if basis[i] >= m {
            obj = field.add(&obj, &t[i][rhs]);
        }
    }
    if field.is_zero(&obj) {
        let mut y = alloc::vec![field.zero(); m];
        for i in 0..nr {
            if basis[i] < m {
                y[basis[i]] = t[i][rhs].clone();
            }
        }
        LpOutcome::Feasible(y)
    } else {
        // u_i = 1 - (reduced cost of artificial i), unflipped.
        let mut u = Vec::with_capacity(nr);
        for i in 0..nr {
            let mut red = field.one();
            for r in 0..nr {
                if basis[r] >= m {
                    red = field.sub(&red, &t[r][m + i]);
                }
            }
            let ui = field.sub(&field.one(), &red);
            u.push(if flipped[i] { field.neg(&ui) } else { ui });
        }
        LpOutcome::Infeasible(u)
    }
}

fn pivot<F: FieldOps>(field: &F, t: &mut [Vec<F::Elem>], li: usize, e: usize) {
    let scale = field.inv(&t[li][e]);
    for x in t[li].iter_mut() {
        *x = field.mul(x, &scale);
    }
    let pivot_row = t[li].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == li {
            continue;
        }
        let factor = row[e].clone();
        if field.is_zero(&factor) {
            continue;
        }
        for (cell, pv) in row.iter_mut().zip(&pivot_row) {
            let delta = field.mul(&factor, pv);
            *cell = field.sub(cell, &delta);
        }
    }
}

/// Gordan's alternative for the rows `m_1, ..., m_t`: either a vector `z`
/// with every `m_i . z > 0`, or a convex combination of the rows equal to
/// zero (nonnegative weights summing to one).
#[derive(Clone, Debug)]
pub enum GordanOutcome<E> {
    StrictSolution(Vec<E>),
    DualCertificate(Vec<E>),
}

/// Decides whether `M z > 0` has a solution, with a certificate either way.
pub fn gordan_strict_solution<F: FieldOps>(
    field: &F,
    rows: &[Vec<F::Elem>],
) -> GordanOutcome<F::Elem> {
    let t = rows.len();
    let k = rows.first().map_or(0, |r| r.len());
    assert!(rows.iter().all(|r| r.len() == k), "ragged matrix");
    if t == 0 {
        // No constraints: the zero vector works.
        return GordanOutcome::StrictSolution(alloc::vec![field.zero(); k]);
    }
    // Dual system: y >= 0, M^T y = 0, 1^T y = 1.
    let mut a: Vec<Vec<F::Elem>> = Vec::with_capacity(k + 1);
    let mut b: Vec<F::Elem> = Vec::with_capacity(k + 1);
    for c in 0..k {
        a.push(rows.iter().map(|r| r[c].clone()).collect());
        b.push(field.zero());
    }
    a.push(alloc::vec![field.one(); t]);
    b.push(field.one());
    match phase_one_feasibility(field, &a, &b) {
        LpOutcome::Feasible(y) => GordanOutcome::DualCertificate(y),
        LpOutcome::Infeasible(u) => {
            GordanOutcome::StrictSolution(u[..k].iter().map(|w| field.neg(w)).collect())
        }
    }
}
