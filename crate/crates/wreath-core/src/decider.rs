//! The two top-level decisions: whether the generated semigroup is a group
//! and whether it contains the identity.
//!
//! The group decision classifies generators by displacement sign, settles the
//! displacement-free case by integer programming on the translations, and
//! otherwise walks the double-full pair sets in ascending size, accepting as
//! soon as one passes the positivity and leading-term conditions of its
//! solution module. The identity decision reduces to the group decision over
//! nonempty generator subsets. Both come with a bounded best-effort witness
//! constructor and a brute-force word search used as a testing oracle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::ggraph::build_witness_graph;
use crate::initials::{decide_lc_condition, LcOutcome};
use crate::linmod::{solution_module_basis, solution_system, LinError, ModuleBasis};
use crate::polyring::{LaurentPoly, Rat, Sign};
use crate::realdec::simplex::{phase_one_feasibility, LpOutcome, RatField};
use crate::realdec::{combinations, decide_all_r, positive_integer_combination, AllROutcome};
use crate::wreath::{GeneratorSet, Word};

/// Largest number of displacement pairs the double-full enumeration accepts;
/// the subset count is exponential in this number.
pub const MAX_PAIRS: usize = 16;

/// Errors surfaced by the decision entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecideError {
    /// The decision needs at least one generator.
    EmptyGeneratorSet,
    /// A first coordinate has a denominator that is not a polynomial in
    /// `X^d`, so the residue split of the pair equations does not exist.
    BadDenominator,
}

impl fmt::Display for DecideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecideError::EmptyGeneratorSet => f.write_str("decision needs at least one generator"),
            DecideError::BadDenominator => {
                f.write_str("first-coordinate denominator is not a polynomial in X^d")
            }
        }
    }
}

impl core::error::Error for DecideError {}

/// Work counters accumulated across a decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Candidate configurations examined: double-full pair sets, plus one
    /// for a displacement-free translation test. The identity decision sums
    /// these over the subsets it visits.
    pub candidates_tried: u64,
    /// Sample cells examined across positivity and leading-term decisions.
    pub cells_tested: u64,
    /// Exact linear programs solved.
    pub lp_calls: u64,
}

impl Stats {
    fn add_all_r(&mut self, out: &AllROutcome) {
        self.cells_tested += out.cells_tested;
        self.lp_calls += out.lp_calls;
    }

    fn add_lc(&mut self, out: &LcOutcome) {
        self.cells_tested += out.cells_tested;
        self.lp_calls += out.lp_calls;
    }

    fn add(&mut self, other: &Stats) {
        self.candidates_tried += other.candidates_tried;
        self.cells_tested += other.cells_tested;
        self.lp_calls += other.lp_calls;
    }
}

/// A rejected pair set and the first condition that eliminated it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub pairs: Vec<(usize, usize)>,
    /// Name of the failed condition.
    pub failed: String,
}

/// Evidence attached to a group verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupEvidence {
    /// Displacements of one sign only: no word can return to displacement
    /// zero, so no inverses exist.
    OneSided,
    /// Every displacement vanishes; the verdict is the existence of a
    /// strictly positive integer combination of the translations summing to
    /// zero, included when it exists.
    Translations { combination: Option<Vec<BigInt>> },
    /// This pair set passed every condition; the reports cover the pair sets
    /// rejected before it.
    Pairing {
        pairs: Vec<(usize, usize)>,
        rejected: Vec<PairingReport>,
    },
    /// Every double-full pair set failed some condition.
    Exhausted { rejected: Vec<PairingReport> },
}

/// Outcome of the group decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDecision {
    pub is_group: bool,
    pub evidence: GroupEvidence,
    pub stats: Stats,
}

impl GroupDecision {
    /// The accepted pair set, when the verdict came from one.
    pub fn accepted_pairs(&self) -> Option<&[(usize, usize)]> {
        match &self.evidence {
            GroupEvidence::Pairing { pairs, .. } => Some(pairs),
            _ => None,
        }
    }
}

/// Outcome of the identity decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityDecision {
    pub contains_identity: bool,
    /// Generator indices of the accepting subset, when one exists.
    pub subset: Option<Vec<usize>>,
    /// Group evidence of the accepting subset, rewritten in the original
    /// generator indices (a translation combination stays aligned with the
    /// subset order).
    pub evidence: Option<GroupEvidence>,
    pub stats: Stats,
}

/// Decides whether the semigroup generated by the set is a group.
pub fn decide_group(gens: &GeneratorSet) -> Result<GroupDecision, DecideError> {
    if gens.is_empty() {
        return Err(DecideError::EmptyGeneratorSet);
    }
    let mut stats = Stats::default();
    let i_idx = gens.idx_pos();
    let j_idx = gens.idx_neg();
    if i_idx.is_empty() && j_idx.is_empty() {
        // Pure translations commute, so the set generates a group exactly
        // when some product over every generator is the identity, that is,
        // when a strictly positive combination of the translations vanishes.
        stats.candidates_tried += 1;
        stats.lp_calls += 1;
        let combination = positive_integer_combination(&cleared_translations(gens));
        return Ok(GroupDecision {
            is_group: combination.is_some(),
            evidence: GroupEvidence::Translations { combination },
            stats,
        });
    }
    if i_idx.is_empty() || j_idx.is_empty() {
        // A generator with nonzero displacement needs an oppositely signed
        // displacement to invert, which no word over one sign reaches.
        return Ok(GroupDecision {
            is_group: false,
            evidence: GroupEvidence::OneSided,
            stats,
        });
    }
    let mut rejected = Vec::new();
    for pairs in enumerate_double_full(i_idx, j_idx) {
        stats.candidates_tried += 1;
        let system = match solution_system(gens, &pairs) {
            Ok(system) => system,
            Err(LinError::BadDenominator) => return Err(DecideError::BadDenominator),
            Err(e) => unreachable!("pair set comes from the sign partition: {e}"),
        };
        let basis = solution_module_basis(&system);
        let positivity = decide_all_r(&basis.vectors);
        stats.add_all_r(&positivity);
        if !positivity.holds {
            rejected.push(PairingReport {
                pairs,
                failed: "positivity for all evaluations".into(),
            });
            continue;
        }
        if let Some(ck) = basis.coord_k() {
            let cs = basis.coord_s();
            let top = decide_lc_condition(&basis.vectors, Sign::Plus, 1, cs, ck);
            stats.add_lc(&top);
            if !top.holds {
                rejected.push(PairingReport {
                    pairs,
                    failed: "top leading bound".into(),
                });
                continue;
            }
            let bottom = decide_lc_condition(&basis.vectors, Sign::Minus, 0, cs, ck);
            stats.add_lc(&bottom);
            if !bottom.holds {
                rejected.push(PairingReport {
                    pairs,
                    failed: "bottom leading bound".into(),
                });
                continue;
            }
        }
        return Ok(GroupDecision {
            is_group: true,
            evidence: GroupEvidence::Pairing { pairs, rejected },
            stats,
        });
    }
    Ok(GroupDecision {
        is_group: false,
        evidence: GroupEvidence::Exhausted { rejected },
        stats,
    })
}

/// Decides whether the generated semigroup contains the identity: true
/// exactly when some nonempty generator subset generates a group. Subsets
/// are visited in ascending size, each exactly once, stopping at the first
/// accepting one.
pub fn decide_identity(gens: &GeneratorSet) -> Result<IdentityDecision, DecideError> {
    if gens.is_empty() {
        return Err(DecideError::EmptyGeneratorSet);
    }
    let n = gens.len();
    let mut stats = Stats::default();
    for size in 1..=n {
        for subset in combinations(n, size) {
            let sub = gens.restrict(&subset).expect("subset indices are in range");
            let inner = decide_group(&sub)?;
            stats.add(&inner.stats);
            if inner.is_group {
                return Ok(IdentityDecision {
                    contains_identity: true,
                    evidence: Some(remap_evidence(inner.evidence, &subset)),
                    subset: Some(subset),
                    stats,
                });
            }
        }
    }
    Ok(IdentityDecision {
        contains_identity: false,
        subset: None,
        evidence: None,
        stats,
    })
}

/// Rewrites subset-local generator indices in evidence to the original ones.
fn remap_evidence(evidence: GroupEvidence, subset: &[usize]) -> GroupEvidence {
    fn map_pairs(pairs: Vec<(usize, usize)>, subset: &[usize]) -> Vec<(usize, usize)> {
        pairs
            .into_iter()
            .map(|(i, j)| (subset[i], subset[j]))
            .collect()
    }
    match evidence {
        GroupEvidence::Pairing { pairs, rejected } => GroupEvidence::Pairing {
            pairs: map_pairs(pairs, subset),
            rejected: rejected
                .into_iter()
                .map(|r| PairingReport {
                    pairs: map_pairs(r.pairs, subset),
                    failed: r.failed,
                })
                .collect(),
        },
        GroupEvidence::Exhausted { rejected } => GroupEvidence::Exhausted {
            rejected: rejected
                .into_iter()
                .map(|r| PairingReport {
                    pairs: map_pairs(r.pairs, subset),
                    failed: r.failed,
                })
                .collect(),
        },
        other => other,
    }
}

/// All subsets of `I x J` covering every positive index and every negative
/// index, ascending by size, deterministic. The pair count is capped at
/// `MAX_PAIRS` because the subset count is exponential.
pub fn enumerate_double_full(idx_pos: &[usize], idx_neg: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if idx_pos.is_empty() || idx_neg.is_empty() {
        return Vec::new();
    }
    let all: Vec<(usize, usize)> = idx_pos
        .iter()
        .flat_map(|&i| idx_neg.iter().map(move |&j| (i, j)))
        .collect();
    let m = all.len();
    assert!(
        m <= MAX_PAIRS,
        "double-full enumeration supports at most {MAX_PAIRS} index pairs, got {m}"
    );
    // Coverage contribution of each pair bit.
    let cover: Vec<(u32, u32)> = all
        .iter()
        .map(|&(i, j)| {
            let pi = idx_pos.iter().position(|&x| x == i).unwrap();
            let pj = idx_neg.iter().position(|&x| x == j).unwrap();
            (1u32 << pi, 1u32 << pj)
        })
        .collect();
    let full_i = (1u32 << idx_pos.len()) - 1;
    let full_j = (1u32 << idx_neg.len()) - 1;
    let mut keyed: Vec<(u32, u32)> = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let (ci, cj) = cover
            .iter()
            .enumerate()
            .filter(|(t, _)| mask & (1 << t) != 0)
            .fold((0, 0), |(ci, cj), (_, &(bi, bj))| (ci | bi, cj | bj));
        if ci == full_i && cj == full_j {
            keyed.push((mask.count_ones(), mask));
        }
    }
    keyed.sort_unstable();
    keyed
        .into_iter()
        .map(|(_, mask)| {
            all.iter()
                .enumerate()
                .filter(|(t, _)| mask & (1 << t) != 0)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

/// Best-effort witness word for a pair set the group pipeline accepted; pass
/// an empty pair set for a displacement-free generator set. Searches support
/// windows in `Y = X^d` up to the degree bound for an exact strictly
/// positive solution of the module equations, assembles the witness graph,
/// and returns its Euler word after re-verifying that it evaluates to the
/// identity and uses every generator. `None` when no support within the
/// bound works; the decision verdict stands regardless.
pub fn find_witness(gens: &GeneratorSet, s: &[(usize, usize)], degree_bound: i64) -> Option<Word> {
    if degree_bound < 0 {
        return None;
    }
    if s.is_empty() {
        return translation_witness(gens);
    }
    let system = solution_system(gens, s).ok()?;
    let basis = solution_module_basis(&system);
    let rows = system.full_rows();
    // Exact kernel vectors need no solving.
    for v in &basis.vectors {
        for flip in [false, true] {
            let cand: Vec<LaurentPoly> = if flip {
                v.iter().map(|p| -p).collect()
            } else {
                v.clone()
            };
            if let Some(word) = try_family(gens, &basis, &cand, degree_bound) {
                return Some(word);
            }
        }
    }
    let mut tried: BTreeSet<Vec<(i64, i64)>> = BTreeSet::new();
    // Common support windows, narrowest first.
    for width in 0..=2 * degree_bound {
        for lo in -degree_bound..=(degree_bound - width) {
            let windows = alloc::vec![(lo, lo + width); basis.n_coords()];
            if !tried.insert(windows.clone()) {
                continue;
            }
            if let Some(word) = try_windows(gens, &basis, &rows, &windows, degree_bound) {
                return Some(word);
            }
        }
    }
    // Windows around the kernel vectors' support hulls, slightly grown and
    // shifted, for families whose coordinates need unequal supports.
    for v in &basis.vectors {
        if v.iter().any(|p| p.is_zero()) {
            continue;
        }
        let hulls: Vec<(i64, i64)> = v
            .iter()
            .map(|p| (p.min_exp().unwrap(), p.max_exp().unwrap()))
            .collect();
        for grow in 0..=2i64 {
            for shift in -2..=2i64 {
                let windows: Vec<(i64, i64)> = hulls
                    .iter()
                    .map(|&(lo, hi)| (lo - grow + shift, hi + grow + shift))
                    .collect();
                if windows
                    .iter()
                    .any(|&(lo, hi)| lo < -degree_bound || hi > degree_bound)
                {
                    continue;
                }
                if !tried.insert(windows.clone()) {
                    continue;
                }
                if let Some(word) = try_windows(gens, &basis, &rows, &windows, degree_bound) {
                    return Some(word);
                }
            }
        }
    }
    None
}

/// Best-effort witness word for a settled positive group decision: a full
/// word over every generator evaluating to the identity.
pub fn group_witness(
    gens: &GeneratorSet,
    decision: &GroupDecision,
    degree_bound: i64,
) -> Option<Word> {
    if !decision.is_group {
        return None;
    }
    match &decision.evidence {
        GroupEvidence::Pairing { pairs, .. } => find_witness(gens, pairs, degree_bound),
        GroupEvidence::Translations { .. } => find_witness(gens, &[], degree_bound),
        _ => None,
    }
}

/// Best-effort witness word for a settled positive identity decision: a
/// word over the accepting subset, in original generator indices,
/// evaluating to the identity.
pub fn identity_witness(
    gens: &GeneratorSet,
    decision: &IdentityDecision,
    degree_bound: i64,
) -> Option<Word> {
    if !decision.contains_identity {
        return None;
    }
    let subset = decision.subset.as_ref()?;
    let sub = gens.restrict(subset).ok()?;
    let position = |a: usize| subset.iter().position(|&x| x == a).unwrap();
    let local: Vec<(usize, usize)> = match decision.evidence.as_ref()? {
        GroupEvidence::Pairing { pairs, .. } => pairs
            .iter()
            .map(|&(i, j)| (position(i), position(j)))
            .collect(),
        GroupEvidence::Translations { .. } => Vec::new(),
        _ => return None,
    };
    let word = find_witness(&sub, &local, degree_bound)?;
    let letters = word.letters().iter().map(|&a| subset[a]).collect();
    let word = Word::new(letters).expect("witness words are nonempty");
    debug_assert!(gens
        .eval_word(&word)
        .expect("letters are in range")
        .is_identity());
    Some(word)
}

/// Witness for a displacement-free set: each generator repeated by its
/// weight in a vanishing strictly positive combination, in index order.
fn translation_witness(gens: &GeneratorSet) -> Option<Word> {
    if gens.is_empty() || !gens.idx_pos().is_empty() || !gens.idx_neg().is_empty() {
        return None;
    }
    let combination = positive_integer_combination(&cleared_translations(gens))?;
    let mut letters = Vec::new();
    for (k, count) in combination.iter().enumerate() {
        let count = count.to_usize()?;
        for _ in 0..count {
            letters.push(k);
        }
    }
    let word = Word::new(letters).ok()?;
    let elem = gens.eval_word(&word).ok()?;
    (elem.is_identity() && word.full_image(gens.len())).then_some(word)
}

/// The translations with denominators cleared by their common multiple,
/// which preserves vanishing of positive combinations.
fn cleared_translations(gens: &GeneratorSet) -> Vec<LaurentPoly> {
    let mut lcm = LaurentPoly::one();
    for g in gens.generators() {
        let den = g.y.den();
        let gcd = lcm.gcd(den);
        let (q, r) = den.div_rem(&gcd);
        debug_assert!(r.is_zero());
        lcm = &lcm * &q;
    }
    gens.generators()
        .iter()
        .map(|g| {
            let (q, r) = lcm.div_rem(g.y.den());
            debug_assert!(r.is_zero());
            g.y.num() * &q
        })
        .collect()
}

/// Solves the module equations on fixed support windows and hands any
/// solution to the family check.
fn try_windows(
    gens: &GeneratorSet,
    basis: &ModuleBasis,
    rows: &[Vec<LaurentPoly>],
    windows: &[(i64, i64)],
    degree_bound: i64,
) -> Option<Word> {
    if let Some(ck) = basis.coord_k() {
        // The loop family must not out-reach the pair family at either end;
        // pinned window endpoints decide this before solving.
        let (s_lo, s_hi) = windows[basis.coord_s()];
        let (k_lo, k_hi) = windows[ck];
        if s_hi + 1 < k_hi || s_lo > k_lo {
            return None;
        }
    }
    let family = family_on_windows(rows, windows)?;
    try_family(gens, basis, &family, degree_bound)
}

/// Checks a candidate family in `Y`: nowhere zero, nonnegative, within the
/// degree bound, loop degrees compatible; scales it to integers and builds
/// the witness word.
fn try_family(
    gens: &GeneratorSet,
    basis: &ModuleBasis,
    family: &[LaurentPoly],
    degree_bound: i64,
) -> Option<Word> {
    if family.iter().any(|p| p.is_zero() || !p.is_nonnegative()) {
        return None;
    }
    if family
        .iter()
        .any(|p| p.min_exp().unwrap() < -degree_bound || p.max_exp().unwrap() > degree_bound)
    {
        return None;
    }
    if let Some(ck) = basis.coord_k() {
        let cs = basis.coord_s();
        if family[cs].max_exp().unwrap() + 1 < family[ck].max_exp().unwrap()
            || family[cs].min_exp().unwrap() > family[ck].min_exp().unwrap()
        {
            return None;
        }
    }
    let scale = family
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
        .fold(BigInt::one(), |acc, den| acc.lcm(&den));
    let scale = Rat::from_integer(scale);
    let d = gens.d().expect("pair set implies a grading");
    let f_pairs: BTreeMap<(usize, usize), LaurentPoly> = basis
        .pairs
        .iter()
        .enumerate()
        .map(|(t, &p)| {
            (
                p,
                family[basis.coord_pair(t)]
                    .scale(&scale)
                    .substitute_power(d),
            )
        })
        .collect();
    let f_zeros: BTreeMap<usize, LaurentPoly> = basis
        .zeros
        .iter()
        .enumerate()
        .map(|(t, &k)| {
            (
                k,
                family[basis.coord_zero(t)]
                    .scale(&scale)
                    .substitute_power(d),
            )
        })
        .collect();
    let witness = build_witness_graph(gens, &basis.pairs, &f_pairs, &f_zeros).ok()?;
    let word = witness.graph.euler_circuit().ok()?;
    let elem = gens.eval_word(&word).ok()?;
    (elem.is_identity() && word.full_image(gens.len())).then_some(word)
}

/// Exact LP over a fixed support window per coordinate: every window
/// endpoint coefficient is pinned to at least one (so supports attain their
/// hulls), interior coefficients are nonnegative, and the module equations
/// hold coefficientwise. Returns the integral family on success.
fn family_on_windows(
    rows: &[Vec<LaurentPoly>],
    windows: &[(i64, i64)],
) -> Option<Vec<LaurentPoly>> {
    let mut offsets = Vec::with_capacity(windows.len());
    let mut unknowns = 0usize;
    for &(lo, hi) in windows {
        debug_assert!(lo <= hi);
        offsets.push(unknowns);
        unknowns += (hi - lo + 1) as usize;
    }
    // Substitute u = base + v with base one at the pinned endpoints, so the
    // LP unknowns v are plain nonnegative.
    let mut base = alloc::vec![Rat::from_integer(0.into()); unknowns];
    for (c, &(lo, hi)) in windows.iter().enumerate() {
        base[offsets[c]] = Rat::from_integer(1.into());
        base[offsets[c] + (hi - lo) as usize] = Rat::from_integer(1.into());
    }
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    for row in rows {
        let mut t_lo = i64::MAX;
        let mut t_hi = i64::MIN;
        for (c, p) in row.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            t_lo = t_lo.min(p.min_exp().unwrap() + windows[c].0);
            t_hi = t_hi.max(p.max_exp().unwrap() + windows[c].1);
        }
        for t in t_lo..=t_hi {
            let mut arow = alloc::vec![Rat::from_integer(0.into()); unknowns];
            for (c, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let (lo, hi) = windows[c];
                for e in lo..=hi {
                    let coef = p.coeff(t - e);
                    if !num_traits::Zero::is_zero(&coef) {
                        arow[offsets[c] + (e - lo) as usize] = coef;
                    }
                }
            }
            let rhs = -arow
                .iter()
                .zip(&base)
                .map(|(x, y)| x * y)
                .fold(Rat::from_integer(0.into()), |acc, v| acc + v);
            if arow.iter().all(num_traits::Zero::is_zero) {
                debug_assert!(num_traits::Zero::is_zero(&rhs));
                continue;
            }
            a.push(arow);
            b.push(rhs);
        }
    }
    let u: Vec<Rat> = if a.is_empty() {
        base
    } else {
        match phase_one_feasibility(&RatField, &a, &b) {
            LpOutcome::Feasible(v) => v.iter().zip(&base).map(|(x, y)| x + y).collect(),
            LpOutcome::Infeasible(_) => return None,
        }
    };
    Some(
        windows
            .iter()
            .enumerate()
            .map(|(c, &(lo, hi))| {
                LaurentPoly::from_terms(
                    (lo..=hi).map(|e| (e, u[offsets[c] + (e - lo) as usize].clone())),
                )
            })
            .collect(),
    )
}

/// Result of the brute-force word search.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub found_word: Option<Word>,
    /// True when every word up to the length bound was covered without a
    /// find; false when the search stopped early at a find.
    pub exhausted: bool,
}

/// Breadth-first search for a word over every generator evaluating to the
/// identity, up to the length bound. States are memoized by the reduced
/// first coordinate, the displacement, and the letter-coverage bitmask, so
/// only the shortest arrival at each state is expanded.
pub fn bfs_oracle(gens: &GeneratorSet, max_len: usize) -> OracleOutcome {
    bfs_search(gens, max_len, true)
}

/// Breadth-first search for any identity word, coverage not required: the
/// matching oracle for the identity decision.
pub fn bfs_identity_oracle(gens: &GeneratorSet, max_len: usize) -> OracleOutcome {
    bfs_search(gens, max_len, false)
}

fn bfs_search(gens: &GeneratorSet, max_len: usize, need_full_image: bool) -> OracleOutcome {
    let n = gens.len();
    assert!(n <= 64, "coverage mask is 64 bits");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    type Key = (LaurentPoly, LaurentPoly, i64, u64);
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let mut frontier = alloc::vec![(crate::wreath::WreathElem::identity(), 0u64, Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (elem, mask, letters) in &frontier {
            for (a, g) in gens.generators().iter().enumerate() {
                let product = elem.mul(g);
                let mask = mask | (1 << a);
                let key = (
                    product.y.num().clone(),
                    product.y.den().clone(),
                    product.b,
                    mask,
                );
                if !seen.insert(key) {
                    continue;
                }
                let mut word = letters.clone();
                word.push(a);
                if product.is_identity() && (!need_full_image || mask == full) {
                    return OracleOutcome {
                        found_word: Some(Word::new(word).expect("word is nonempty")),
                        exhausted: false,
                    };
                }
                next.push((product, mask, word));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    OracleOutcome {
        found_word: None,
        exhausted: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use crate::wreath::WreathElem;
    use alloc::vec;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    fn gens(list: &[(&[(i64, i64)], i64)]) -> GeneratorSet {
        GeneratorSet::new(
            list.iter()
                .map(|&(terms, b)| WreathElem::from_poly(poly(terms), b))
                .collect(),
        )
    }

    fn balanced_pair() -> GeneratorSet {
        // (1, 1) and (-X^{-1}, -1): their product in either order is the
        // identity.
        gens(&[(&[(0, 1)], 1), (&[(-1, -1)], -1)])
    }

    #[test]
    fn group_hand_verdicts() {
        let d = decide_group(&balanced_pair()).unwrap();
        assert!(d.is_group);
        assert_eq!(d.accepted_pairs(), Some(&[(0, 1)][..]));

        let d = decide_group(&gens(&[(&[(0, 1)], 1), (&[], -1)])).unwrap();
        assert!(!d.is_group);
        assert!(
            matches!(d.evidence, GroupEvidence::Exhausted { ref rejected } if rejected.len() == 1)
        );

        let d = decide_group(&gens(&[(&[], 6), (&[], -4), (&[], 0)])).unwrap();
        assert!(d.is_group);

        let d = decide_group(&gens(&[(&[(0, 1)], 0), (&[(0, -1)], 0)])).unwrap();
        assert!(d.is_group);
        assert!(matches!(
            d.evidence,
            GroupEvidence::Translations {
                combination: Some(_)
            }
        ));

        let d = decide_group(&gens(&[(&[(0, 1)], 0)])).unwrap();
        assert!(!d.is_group);
        assert!(matches!(
            d.evidence,
            GroupEvidence::Translations { combination: None }
        ));
    }

    #[test]
    fn one_sided_sets_are_rejected() {
        let d = decide_group(&gens(&[(&[(0, 1)], 1)])).unwrap();
        assert!(!d.is_group);
        assert_eq!(d.evidence, GroupEvidence::OneSided);
        // Zero-displacement company does not help.
        let d = decide_group(&gens(&[(&[(0, 1)], 1), (&[(0, 5)], 0)])).unwrap();
        assert!(!d.is_group);
        assert_eq!(d.evidence, GroupEvidence::OneSided);
        assert_eq!(
            decide_group(&GeneratorSet::new(vec![])),
            Err(DecideError::EmptyGeneratorSet)
        );
    }

    #[test]
    fn identity_hand_verdicts() {
        let d =
            decide_identity(&gens(&[(&[(0, 1)], 1), (&[(-1, -1)], -1), (&[(0, 5)], 0)])).unwrap();
        assert!(d.contains_identity);
        assert_eq!(d.subset, Some(vec![0, 1]));
        assert!(matches!(
            d.evidence,
            Some(GroupEvidence::Pairing { ref pairs, .. }) if pairs == &[(0, 1)]
        ));

        let d = decide_identity(&gens(&[(&[], 0)])).unwrap();
        assert!(d.contains_identity);
        assert_eq!(d.subset, Some(vec![0]));

        let d = decide_identity(&gens(&[(&[(0, 1)], 0)])).unwrap();
        assert!(!d.contains_identity);
        assert_eq!(d.subset, None);
    }

    #[test]
    fn double_full_enumeration_counts() {
        assert_eq!(enumerate_double_full(&[0], &[1]), vec![vec![(0, 1)]]);
        assert_eq!(
            enumerate_double_full(&[1, 2], &[3]),
            vec![vec![(1, 3), (2, 3)]]
        );
        let sets = enumerate_double_full(&[1, 2], &[3, 4]);
        assert_eq!(sets.len(), 7);
        // Ascending sizes, every set double-full.
        let mut last = 0;
        for s in &sets {
            assert!(s.len() >= last);
            last = s.len();
            for &i in &[1, 2] {
                assert!(s.iter().any(|&(a, _)| a == i));
            }
            for &j in &[3, 4] {
                assert!(s.iter().any(|&(_, b)| b == j));
            }
        }
        assert_eq!(sets[0].len(), 2);
        assert_eq!(sets[6].len(), 4);
    }

    #[test]
    fn witness_for_balanced_pair() {
        let g = balanced_pair();
        let word = find_witness(&g, &[(0, 1)], 2).unwrap();
        assert!(word.full_image(2));
        assert!(g.eval_word(&word).unwrap().is_identity());
    }

    #[test]
    fn witness_for_zero_translations_pair() {
        // The minimal witness is the 2-letter rearrangement; the emitted
        // Euler word may repeat it, since the graph normalization keeps
        // every circuit multiplicity strictly positive.
        let g = gens(&[(&[], 1), (&[], -1)]);
        let word = find_witness(&g, &[(0, 1)], 1).unwrap();
        assert!(word.full_image(2));
        assert_eq!(word.len() % 2, 0);
        assert!(g.eval_word(&word).unwrap().is_identity());
    }

    #[test]
    fn witness_with_loops_and_grading() {
        let g = gens(&[(&[], 6), (&[], -4), (&[], 0)]);
        let word = find_witness(&g, &[(0, 1)], 6).unwrap();
        assert!(word.full_image(3));
        assert!(g.eval_word(&word).unwrap().is_identity());
    }

    #[test]
    fn witness_for_translations() {
        let g = gens(&[(&[(0, 1)], 0), (&[(0, -1)], 0)]);
        let word = find_witness(&g, &[], 6).unwrap();
        assert_eq!(word.letters(), &[0, 1]);
        assert!(g.eval_word(&word).unwrap().is_identity());
        // No vanishing combination, no witness.
        assert!(find_witness(&gens(&[(&[(0, 1)], 0)]), &[], 6).is_none());
    }

    #[test]
    fn oracle_finds_short_identity_words() {
        let out = bfs_oracle(&balanced_pair(), 2);
        assert_eq!(out.found_word.as_ref().unwrap().letters(), &[0, 1]);
        assert!(!out.exhausted);

        let out = bfs_oracle(&gens(&[(&[(0, 1)], 0)]), 6);
        assert!(out.found_word.is_none());
        assert!(out.exhausted);

        let g = gens(&[(&[], 6), (&[], -4), (&[], 0)]);
        let out = bfs_oracle(&g, 6);
        let word = out.found_word.unwrap();
        assert_eq!(word.len(), 6);
        assert!(word.full_image(3));
        assert!(g.eval_word(&word).unwrap().is_identity());
    }

    #[test]
    fn identity_oracle_skips_coverage() {
        // The identity word over the first two letters exists, but no word
        // covers the third letter and returns to the identity.
        let g = gens(&[(&[(0, 1)], 1), (&[(-1, -1)], -1), (&[(0, 5)], 0)]);
        let out = bfs_oracle(&g, 4);
        assert!(out.found_word.is_none());
        let out = bfs_identity_oracle(&g, 4);
        let word = out.found_word.unwrap();
        assert!(g.eval_word(&word).unwrap().is_identity());
    }

    #[test]
    fn decision_level_witnesses() {
        let g = balanced_pair();
        let d = decide_group(&g).unwrap();
        let word = group_witness(&g, &d, 6).unwrap();
        assert!(word.full_image(2));
        assert!(g.eval_word(&word).unwrap().is_identity());

        // An identity witness stays within the accepting subset but speaks
        // original indices.
        let g = gens(&[(&[(0, 5)], 0), (&[(0, 1)], 1), (&[(-1, -1)], -1)]);
        let d = decide_identity(&g).unwrap();
        assert_eq!(d.subset, Some(vec![1, 2]));
        let word = identity_witness(&g, &d, 6).unwrap();
        assert!(word.letters().iter().all(|&a| a == 1 || a == 2));
        assert!(g.eval_word(&word).unwrap().is_identity());

        let negative = decide_group(&gens(&[(&[(0, 1)], 0)])).unwrap();
        assert!(group_witness(&gens(&[(&[(0, 1)], 0)]), &negative, 6).is_none());
    }

    #[test]
    fn group_decision_is_deterministic() {
        let g = gens(&[(&[(0, 1), (2, 3)], 2), (&[(-1, -1)], -2), (&[(1, 7)], 0)]);
        let first = decide_group(&g).unwrap();
        let second = decide_group(&g).unwrap();
        assert_eq!(first, second);
    }
}
