//! Positivity of the solution module across all positive real evaluations.
//!
//! The question answered here: given generators of a module of coordinate
//! vectors over Q[Y], is there for every real r > 0 a module element whose
//! coordinates are all strictly positive at r? At a fixed r this is Gordan's
//! alternative for the evaluated basis matrix: either a real combination of
//! the basis vectors is coordinatewise positive, or a nonzero nonnegative
//! combination of the coordinate rows vanishes.
//!
//! Why finitely many tests suffice: the dual certificate is a sign-
//! constrained vector in the row kernel of the evaluated matrix, and the
//! existence of such a vector is determined by the oriented matroid of the
//! rows, that is, by the signs of all square minors of the matrix. Each
//! minor is a polynomial in r, so between two consecutive positive roots of
//! the nonzero minors every sign is constant, and the Gordan answer cannot
//! change inside such a cell. Testing one rational point per open cell and
//! each critical point exactly (in Q(theta) arithmetic) therefore decides
//! the question for every r > 0 at once.

pub mod algebraic;
pub mod simplex;
pub mod unipoly;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::polyring::{LaurentPoly, Rat};
use algebraic::{sort_dedup_points, AlgField, AlgebraicPoint};
use simplex::{gordan_strict_solution, FieldOps, GordanOutcome, LpOutcome, RatField};
use unipoly::{isolate_positive_roots, UniPoly};

/// Result of the all-r positivity decision, with counters for reporting.
#[derive(Clone, Debug)]
pub struct AllROutcome {
    pub holds: bool,
    pub cells_tested: u64,
    pub lp_calls: u64,
    /// Where positivity failed, if it did.
    pub failure: Option<String>,
    /// Exact refutation backing a negative verdict.
    pub refutation: Option<Refutation>,
}

/// An exact obstruction to positivity at one sample point: nonnegative
/// weights on the coordinate rows, summing to one, whose weighted row
/// combination vanishes at the point. No module element can then be
/// coordinatewise positive there.
#[derive(Clone, Debug)]
pub enum Refutation {
    /// Every vector is zero, so nothing is ever positive.
    ZeroModule,
    /// Certificate at a rational point.
    Rational { r: Rat, weights: Vec<Rat> },
    /// Certificate at an algebraic critical point; weights are polynomial
    /// representatives in the point's defining generator.
    Algebraic {
        point: AlgebraicPoint,
        weights: Vec<UniPoly>,
    },
}

/// A test point of the sample plan: a rational cell representative or an
/// algebraic critical point.
enum SamplePoint {
    Rational(Rat),
    Algebraic(AlgebraicPoint),
}

/// Decides whether for every real r > 0 some combination of the vectors is
/// coordinatewise strictly positive at r. Vectors share a coordinate space;
/// exponents may be negative (each vector is shifted by a monomial, which
/// does not change positivity at positive points).
pub fn decide_all_r(vectors: &[Vec<LaurentPoly>]) -> AllROutcome {
    let vectors: Vec<Vec<LaurentPoly>> = vectors
        .iter()
        .filter(|v| v.iter().any(|p| !p.is_zero()))
        .cloned()
        .collect();
    if vectors.is_empty() {
        return AllROutcome {
            holds: false,
            cells_tested: 0,
            lp_calls: 0,
            failure: Some("module is zero".into()),
            refutation: Some(Refutation::ZeroModule),
        };
    }
    let n = vectors[0].len();
    assert!(vectors.iter().all(|v| v.len() == n), "ragged vectors");
    // Monomial-shift each vector into ordinary polynomials.
    let vectors: Vec<Vec<LaurentPoly>> = vectors
        .iter()
        .map(|v| {
            let m = v
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| p.min_exp().unwrap())
                .min()
                .unwrap();
            v.iter().map(|p| p.shift(-m)).collect()
        })
        .collect();
    let k = vectors.len();
    // Coordinate rows of the basis matrix.
    let rows: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let mut points = Vec::new();
    for t in 1..=n.min(k) {
        for rsel in combinations(n, t) {
            for csel in combinations(k, t) {
                let sub: Vec<Vec<LaurentPoly>> = rsel
                    .iter()
                    .map(|&r| csel.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                let minor = det(&sub);
                if minor.is_zero() {
                    continue;
                }
                let intervals =
                    isolate_positive_roots(&UniPoly::from_laurent(&minor)).expect("nonzero minor");
                let sq = UniPoly::from_laurent(&minor)
                    .squarefree_part()
                    .strip_zero_roots();
                for (lo, hi) in intervals {
                    points.push(AlgebraicPoint::new(sq.clone(), lo, hi));
                }
            }
        }
    }
    let mut points = sort_dedup_points(points);
    let samples = build_sample_plan(&mut points);
    let mut outcome = AllROutcome {
        holds: true,
        cells_tested: 0,
        lp_calls: 0,
        failure: None,
        refutation: None,
    };
    for sample in samples {
        outcome.cells_tested += 1;
        outcome.lp_calls += 1;
        let (refutation, desc) = match &sample {
            SamplePoint::Rational(r) => {
                let field = RatField;
                let m = matrix_at(&field, &rows, r);
                let refutation = match gordan_strict_solution(&field, &m) {
                    GordanOutcome::StrictSolution(_) => None,
                    GordanOutcome::DualCertificate(weights) => Some(Refutation::Rational {
                        r: r.clone(),
                        weights,
                    }),
                };
                (refutation, format!("r = {r}"))
            }
            SamplePoint::Algebraic(p) => {
                let field = AlgField::new(p);
                let theta = field.theta();
                let m: Vec<Vec<UniPoly>> = rows
                    .iter()
                    .map(|row| row.iter().map(|q| field.eval_poly(q, &theta)).collect())
                    .collect();
                let refutation = match gordan_strict_solution(&field, &m) {
                    GordanOutcome::StrictSolution(_) => None,
                    GordanOutcome::DualCertificate(weights) => Some(Refutation::Algebraic {
                        point: p.clone(),
                        weights,
                    }),
                };
                let (lo, hi) = field.interval();
                (refutation, format!("r in ({lo}, {hi})"))
            }
        };
        if let Some(refutation) = refutation {
            outcome.holds = false;
            outcome.failure = Some(desc);
            outcome.refutation = Some(refutation);
            break;
        }
    }
    outcome
}

/// Checks a refutation against the vectors it was issued for: weights are
/// nonnegative, sum to one, and the weighted coordinate combination of every
/// vector vanishes at the point. Exact arithmetic throughout; vectors are
/// monomial-shifted per vector exactly as in `decide_all_r`, which changes
/// no sign at a positive point.
pub fn verify_refutation(vectors: &[Vec<LaurentPoly>], refutation: &Refutation) -> bool {
    let vectors: Vec<Vec<LaurentPoly>> = vectors
        .iter()
        .filter(|v| v.iter().any(|p| !p.is_zero()))
        .map(|v| {
            let m = v
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| p.min_exp().unwrap())
                .min()
                .unwrap();
            v.iter().map(|p| p.shift(-m)).collect()
        })
        .collect();
    match refutation {
        Refutation::ZeroModule => vectors.is_empty(),
        Refutation::Rational { r, weights } => {
            verify_refutation_in(&RatField, &vectors, r, weights)
        }
        Refutation::Algebraic { point, weights } => {
            let field = AlgField::new(point);
            verify_refutation_in(&field, &vectors, &field.theta(), weights)
        }
    }
}

fn verify_refutation_in<F: FieldOps>(
    field: &F,
    vectors: &[Vec<LaurentPoly>],
    at: &F::Elem,
    weights: &[F::Elem],
) -> bool {
    let n = match vectors.first() {
        Some(v) => v.len(),
        None => return false,
    };
    if weights.len() != n || weights.iter().any(|w| field.sign(w) < 0) {
        return false;
    }
    let total = weights
        .iter()
        .fold(field.zero(), |acc, w| field.add(&acc, w));
    if !field.is_zero(&field.sub(&total, &field.one())) {
        return false;
    }
    vectors.iter().all(|v| {
        let combo = v.iter().zip(weights).fold(field.zero(), |acc, (p, w)| {
            field.add(&acc, &field.mul(w, &field.eval_poly(p, at)))
        });
        field.is_zero(&combo)
    })
}

/// One sample per open cell between consecutive critical points, plus the
/// critical points themselves, in ascending order.
fn build_sample_plan(points: &mut [AlgebraicPoint]) -> Vec<SamplePoint> {
    let mut samples = Vec::new();
    if points.is_empty() {
        samples.push(SamplePoint::Rational(Rat::one()));
        return samples;
    }
    points[0].refine_until_positive();
    samples.push(SamplePoint::Rational(points[0].lo().clone()));
    for i in 0..points.len() {
        samples.push(SamplePoint::Algebraic(points[i].clone()));
        let next = if i + 1 < points.len() {
            // Intervals are already disjoint; the midpoint of the gap lies
            // strictly between the two roots.
            Some((points[i].hi() + points[i + 1].lo()) * Rat::new(1.into(), 2.into()))
        } else {
            None
        };
        match next {
            Some(mid) => samples.push(SamplePoint::Rational(mid)),
            None => samples.push(SamplePoint::Rational(points[i].hi().clone())),
        }
    }
    samples
}

fn matrix_at(field: &RatField, rows: &[Vec<LaurentPoly>], x: &Rat) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|row| row.iter().map(|p| field.eval_poly(p, x)).collect())
        .collect()
}

/// All size-`t` ascending index subsets of `0..n`.
pub(crate) fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n.saturating_sub(left) {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t <= n {
        rec(0, n, t, &mut Vec::new(), &mut out);
    }
    out
}

/// Determinant by first-row expansion; fine at the sizes minors reach here.
fn det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    match m.len() {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<LaurentPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det(&sub);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Finds strictly positive integers n_1, ..., n_k with a vanishing weighted
/// sum of the given polynomials, if any exist.
pub fn positive_integer_combination(values: &[LaurentPoly]) -> Option<Vec<BigInt>> {
    let k = values.len();
    if k == 0 {
        return Some(Vec::new());
    }
    // Substitute n = s + 1 so the unknowns are merely nonnegative; a
    // rational solution scales to integers because the system is linear.
    let exps: BTreeSet<i64> = values
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e))
        .collect();
    if exps.is_empty() {
        // Every polynomial is zero; weight 1 each.
        return Some(alloc::vec![BigInt::one(); k]);
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &e in &exps {
        let row: Vec<Rat> = values.iter().map(|p| p.coeff(e)).collect();
        let rhs = -row
            .iter()
            .fold(Rat::new(0.into(), 1.into()), |acc, c| acc + c);
        a.push(row);
        b.push(rhs);
    }
    match simplex::phase_one_feasibility(&RatField, &a, &b) {
        LpOutcome::Feasible(s) => {
            let n: Vec<Rat> = s.iter().map(|v| v + Rat::one()).collect();
            let scale = n.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            Some(
                n.iter()
                    .map(|v| (v * Rat::from_integer(scale.clone())).to_integer())
                    .collect(),
            )
        }
        LpOutcome::Infeasible(_) => None,
    }
}
