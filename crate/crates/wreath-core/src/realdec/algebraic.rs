//! Real algebraic points and exact arithmetic in Q(theta).
//!
//! A point is a squarefree polynomial plus an open rational interval holding
//! exactly one of its roots. Field elements over a point are polynomial
//! representatives; every sign or inversion question is answered exactly by
//! Sturm counts and interval refinement. When a gcd reveals that the minimal
//! polynomial splits, the context swaps in the factor that still contains
//! the root, so reducible inputs never need factoring up front.

use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::polyring::Rat;
use crate::realdec::unipoly::{count_roots_in, sturm_sequence, UniPoly};

fn half() -> Rat {
    Rat::new(1.into(), 2.into())
}

/// A real algebraic number given by a squarefree polynomial and an isolating
/// open interval whose endpoints are not roots.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    poly: UniPoly,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicPoint {
    /// Wraps an isolating interval. The polynomial must be squarefree with
    /// exactly one root strictly between `lo` and `hi`, neither endpoint a
    /// root.
    pub fn new(poly: UniPoly, lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(poly.sign_at(&lo) != 0 && poly.sign_at(&hi) != 0);
        debug_assert_eq!(count_roots_in(&sturm_sequence(&poly), &lo, &hi), 1);
        AlgebraicPoint { poly, lo, hi }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        let (lo, hi) = refine_step(&self.poly, &self.lo, &self.hi);
        self.lo = lo;
        self.hi = hi;
    }

    /// Refines until the whole interval is strictly positive; requires the
    /// root itself to be positive.
    pub fn refine_until_positive(&mut self) {
        while !self.lo.is_positive() {
            self.refine();
        }
    }

    /// Exact comparison of the underlying real numbers.
    pub fn compare(&mut self, other: &mut AlgebraicPoint) -> Ordering {
        let mut checked_equal = false;
        loop {
            if self.hi <= other.lo {
                return Ordering::Less;
            }
            if other.hi <= self.lo {
                return Ordering::Greater;
            }
            if !checked_equal {
                checked_equal = true;
                let g = self.poly.gcd(&other.poly);
                if g.degree().unwrap_or(0) >= 1 {
                    let a = self.lo.clone().max(other.lo.clone());
                    let b = self.hi.clone().min(other.hi.clone());
                    if count_roots_in(&sturm_sequence(&g), &a, &b) >= 1 {
                        return Ordering::Equal;
                    }
                }
            }
            self.refine();
            other.refine();
        }
    }

    /// Refines both points until `a`'s interval lies at or below `b`'s;
    /// requires the roots to be distinct with `a < b`.
    pub fn separate(a: &mut AlgebraicPoint, b: &mut AlgebraicPoint) {
        while a.hi > b.lo {
            a.refine();
            b.refine();
        }
    }
}

/// One bisection step on an isolating interval; keeps endpoints off the
/// roots. Returns the new interval.
fn refine_step(poly: &UniPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mid = (lo + hi) * half();
    match poly.sign_at(&mid) {
        0 => {
            // The root is exactly mid; shrink symmetrically around it.
            let new_lo = (lo + &mid) * half();
            let new_hi = (&mid + hi) * half();
            (new_lo, new_hi)
        }
        s => {
            if s == poly.sign_at(lo) {
                (mid, hi.clone())
            } else {
                (lo.clone(), mid)
            }
        }
    }
}

struct AlgCtx {
    min: UniPoly,
    lo: Rat,
    hi: Rat,
}

impl AlgCtx {
    fn refine_interval(&mut self) {
        let mid = (&self.lo + &self.hi) * half();
        if self.min.sign_at(&mid) == 0 {
            // The root turned out rational; pin it down exactly.
            self.min = UniPoly::linear_root(&mid);
            self.lo = (&self.lo + &mid) * half();
            self.hi = (&mid + &self.hi) * half();
        } else {
            let (lo, hi) = refine_step(&self.min, &self.lo, &self.hi);
            self.lo = lo;
            self.hi = hi;
        }
    }

    /// Replaces the minimal polynomial by a divisor that still isolates the
    /// root in the same interval.
    fn shrink_min(&mut self, new_min: UniPoly) {
        debug_assert!(new_min.degree().unwrap_or(0) >= 1);
        self.min = new_min;
    }

    fn theta_is_root_of(&self, g: &UniPoly) -> bool {
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        count_roots_in(&sturm_sequence(g), &self.lo, &self.hi) >= 1
            && g.gcd(&self.min).degree().unwrap_or(0) >= 1
    }
}

/// The field Q(theta) for an algebraic point, usable as an LP coefficient
/// field. Elements are polynomial representatives of degree below the
/// current minimal polynomial.
pub struct AlgField {
    ctx: Rc<RefCell<AlgCtx>>,
}

impl AlgField {
    pub fn new(point: &AlgebraicPoint) -> Self {
        AlgField {
            ctx: Rc::new(RefCell::new(AlgCtx {
                min: point.poly.clone(),
                lo: point.lo.clone(),
                hi: point.hi.clone(),
            })),
        }
    }

    /// The generator theta itself.
    pub fn theta(&self) -> UniPoly {
        UniPoly::new(alloc::vec![Rat::zero(), Rat::one()])
    }

    /// Current isolating interval (shrinks as computations refine it).
    pub fn interval(&self) -> (Rat, Rat) {
        let ctx = self.ctx.borrow();
        (ctx.lo.clone(), ctx.hi.clone())
    }

    fn reduce(&self, p: &UniPoly) -> UniPoly {
        let ctx = self.ctx.borrow();
        if p.degree() < ctx.min.degree() {
            return p.clone();
        }
        p.div_rem(&ctx.min).1
    }

    /// Exact sign of `p(theta)`. May refine the context's interval or shrink
    /// its minimal polynomial as a side effect.
    fn sign_of(&self, p: &UniPoly) -> i8 {
        let rep = self.reduce(p);
        if rep.is_zero() {
            return 0;
        }
        {
            let mut ctx = self.ctx.borrow_mut();
            let g = rep.gcd(&ctx.min);
            if g.degree().unwrap_or(0) >= 1 {
                // The minimal polynomial splits: keep the factor with theta.
                if count_roots_in(&sturm_sequence(&g), &ctx.lo, &ctx.hi) >= 1 {
                    ctx.shrink_min(g);
                    return 0;
                }
                let (quot, r) = ctx.min.div_rem(&g);
                debug_assert!(r.is_zero());
                ctx.shrink_min(quot);
            }
        }
        // p(theta) is nonzero; shrink the interval until p cannot vanish on
        // it, then read the constant sign off an endpoint.
        let sq = rep.squarefree_part();
        let seq = sturm_sequence(&sq);
        loop {
            let (lo, hi) = {
                let ctx = self.ctx.borrow();
                (ctx.lo.clone(), ctx.hi.clone())
            };
            if rep.sign_at(&lo) != 0 && count_roots_in(&seq, &lo, &hi) == 0 {
                return rep.sign_at(&lo);
            }
            self.ctx.borrow_mut().refine_interval();
        }
    }

    fn inverse(&self, p: &UniPoly) -> UniPoly {
        let mut rep = self.reduce(p);
        let mut ctx = self.ctx.borrow_mut();
        let g = rep.gcd(&ctx.min);
        if g.degree().unwrap_or(0) >= 1 {
            assert!(!ctx.theta_is_root_of(&g), "inversion of zero in Q(theta)");
            let (quot, r) = ctx.min.div_rem(&g);
            debug_assert!(r.is_zero());
            ctx.shrink_min(quot);
        }
        if rep.degree() >= ctx.min.degree() {
            rep = rep.div_rem(&ctx.min).1;
        }
        let (unit, s, _) = ext_gcd(&rep, &ctx.min);
        debug_assert_eq!(unit.degree(), Some(0));
        let scale = Rat::one() / unit.coeff(0);
        s.scale(&scale).div_rem(&ctx.min).1
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g`.
fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = UniPoly::one();
    let mut s1 = UniPoly::zero();
    let mut t0 = UniPoly::zero();
    let mut t1 = UniPoly::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

impl crate::realdec::simplex::FieldOps for AlgField {
    type Elem = UniPoly;

    fn embed(&self, r: &Rat) -> UniPoly {
        UniPoly::constant(r.clone())
    }

    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.add(b)
    }

    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.sub(b)
    }

    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&a.mul(b))
    }

    fn inv(&self, a: &UniPoly) -> UniPoly {
        self.inverse(a)
    }

    fn sign(&self, a: &UniPoly) -> i8 {
        self.sign_of(a)
    }
}

/// Sorts points ascending, merging duplicates; returns the distinct points.
pub fn sort_dedup_points(mut points: Vec<AlgebraicPoint>) -> Vec<AlgebraicPoint> {
    let mut out: Vec<AlgebraicPoint> = Vec::new();
    while let Some(mut p) = points.pop() {
        let mut insert_at = out.len();
        let mut duplicate = false;
        for (idx, q) in out.iter_mut().enumerate() {
            match p.compare(q) {
                Ordering::Less => {
                    insert_at = idx;
                    break;
                }
                Ordering::Equal => {
                    duplicate = true;
                    break;
                }
                Ordering::Greater => {}
            }
        }
        if !duplicate {
            out.insert(insert_at, p);
        }
    }
    // Make neighbouring intervals disjoint so midpoints are usable samples.
    for i in 1..out.len() {
        let (a, b) = out.split_at_mut(i);
        AlgebraicPoint::separate(&mut a[i - 1], &mut b[0]);
    }
    out
}
