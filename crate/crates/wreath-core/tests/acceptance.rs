//! Acceptance gate: one test per acceptance criterion. The exhaustive
//! generator grid (every set of at most three generators with displacements
//! in [-2,2] and monomial deposits with coefficients and exponents in
//! [-1,1]) is swept once and shared by every criterion that consumes it.

use std::collections::BTreeSet;
use std::sync::LazyLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wreath_core::decider::{bfs_oracle, decide_group, enumerate_double_full, group_witness};
use wreath_core::ggraph::build_witness_graph;
use wreath_core::initials::{enumerate_weight_cells, initial_data};
use wreath_core::linmod::{compute_h, solution_module_basis, solution_system};
use wreath_core::polyring::{rat, LaurentPoly, Rat, RatFunc};
use wreath_core::realdec::simplex::{gordan_strict_solution, GordanOutcome, RatField};
use wreath_core::realdec::{decide_all_r, verify_refutation};
use wreath_core::wreath::{GeneratorSet, WreathElem};

fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
}

fn elem(terms: &[(i64, i64)], b: i64) -> WreathElem {
    WreathElem::from_poly(poly(terms), b)
}

/// All 35 grid generators: 5 displacements times 7 monomial deposits.
fn grid_pool() -> Vec<WreathElem> {
    let mut pool = Vec::new();
    for b in -2i64..=2 {
        pool.push(WreathElem::from_poly(LaurentPoly::zero(), b));
        for c in [-1i64, 1] {
            for e in -1i64..=1 {
                pool.push(WreathElem::from_poly(LaurentPoly::monomial(rat(c), e), b));
            }
        }
    }
    pool
}

fn keep_first(failures: &mut Vec<String>, count: &mut usize, message: String) {
    *count += 1;
    if failures.len() < 5 {
        failures.push(message);
    }
}

struct GridSweep {
    duration: Duration,
    instances: usize,
    oracle_finds: usize,
    positives: usize,
    witnesses_emitted: usize,
    disagreement_count: usize,
    disagreements: Vec<String>,
    witness_failure_count: usize,
    witness_failures: Vec<String>,
    kernel_vectors: usize,
    kernel_failure_count: usize,
    kernel_failures: Vec<String>,
    power_checks: usize,
    power_failure_count: usize,
    power_failures: Vec<String>,
}

/// One pass over the grid feeding the oracle-agreement, witness round-trip,
/// kernel-exactness, and power-identity criteria.
static GRID: LazyLock<GridSweep> = LazyLock::new(|| {
    let started = Instant::now();
    let pool = grid_pool();
    let n = pool.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        subsets.push(vec![i]);
        for j in i + 1..n {
            subsets.push(vec![i, j]);
            for k in j + 1..n {
                subsets.push(vec![i, j, k]);
            }
        }
    }
    let mut sweep = GridSweep {
        duration: Duration::ZERO,
        instances: subsets.len(),
        oracle_finds: 0,
        positives: 0,
        witnesses_emitted: 0,
        disagreement_count: 0,
        disagreements: Vec::new(),
        witness_failure_count: 0,
        witness_failures: Vec::new(),
        kernel_vectors: 0,
        kernel_failure_count: 0,
        kernel_failures: Vec::new(),
        power_checks: 0,
        power_failure_count: 0,
        power_failures: Vec::new(),
    };
    for subset in &subsets {
        let gens = GeneratorSet::new(subset.iter().map(|&i| pool[i].clone()).collect());
        let decision = decide_group(&gens).expect("nonempty grid instance");
        let oracle = bfs_oracle(&gens, 8);
        if oracle.found_word.is_some() {
            sweep.oracle_finds += 1;
            if !decision.is_group {
                keep_first(
                    &mut sweep.disagreements,
                    &mut sweep.disagreement_count,
                    format!("oracle found a word but the verdict is false on {subset:?}"),
                );
            }
        }
        if decision.is_group {
            sweep.positives += 1;
            if let Some(word) = group_witness(&gens, &decision, 6) {
                sweep.witnesses_emitted += 1;
                let value = gens.eval_word(&word).expect("witness letters in range");
                if !value.is_identity() || !word.full_image(gens.len()) {
                    keep_first(
                        &mut sweep.witness_failures,
                        &mut sweep.witness_failure_count,
                        format!(
                            "witness fails to verify on {subset:?}: {:?}",
                            word.letters()
                        ),
                    );
                }
            }
        }
        if !gens.idx_pos().is_empty() && !gens.idx_neg().is_empty() {
            for s in enumerate_double_full(gens.idx_pos(), gens.idx_neg()) {
                let system = solution_system(&gens, &s).expect("two-sided instance");
                let basis = solution_module_basis(&system);
                let rows = system.full_rows();
                for v in &basis.vectors {
                    sweep.kernel_vectors += 1;
                    for row in &rows {
                        let mut acc = LaurentPoly::zero();
                        for (c, p) in row.iter().enumerate() {
                            acc = &acc + &(p * &v[c]);
                        }
                        if !acc.is_zero() {
                            keep_first(
                                &mut sweep.kernel_failures,
                                &mut sweep.kernel_failure_count,
                                format!("nonzero residual on {subset:?}"),
                            );
                        }
                    }
                }
            }
            let d = gens.d().expect("two-sided instance");
            for &i in gens.idx_pos() {
                for &j in gens.idx_neg() {
                    sweep.power_checks += 1;
                    if !power_identity_holds(&gens, d, i, j) {
                        keep_first(
                            &mut sweep.power_failures,
                            &mut sweep.power_failure_count,
                            format!("power identity fails for ({i}, {j}) on {subset:?}"),
                        );
                    }
                }
            }
        }
    }
    sweep.duration = started.elapsed();
    sweep
});

/// g_i^{|b_j|} g_j^{b_i} = (h_ij * (1 + X^d + ... + X^{b_i |b_j| - d}), 0).
fn power_identity_holds(gens: &GeneratorSet, d: i64, i: usize, j: usize) -> bool {
    let h = match compute_h(gens, i, j) {
        Ok(h) => h,
        Err(_) => return false,
    };
    let gi = &gens.generators()[i];
    let gj = &gens.generators()[j];
    let bi = gens.b(i);
    let bj = gens.b(j).abs();
    let power = &gi.pow(bj as u32) * &gj.pow(bi as u32);
    let window = LaurentPoly::window(d, 0, bi * bj / d - 1);
    power.b == 0 && power.y == &RatFunc::from_poly(window) * &h
}

#[test]
fn oracle_agreement_on_exhaustive_grid() {
    let sweep = &*GRID;
    println!(
        "oracle agreement: {} instances, {} oracle finds, {} disagreements, swept in {:.1?}",
        sweep.instances, sweep.oracle_finds, sweep.disagreement_count, sweep.duration
    );
    assert_eq!(
        sweep.disagreement_count, 0,
        "oracle disagreements: {:?}",
        sweep.disagreements
    );
    assert!(
        sweep.duration < Duration::from_secs(600),
        "grid sweep took {:?}, over the ten-minute budget",
        sweep.duration
    );
}

#[test]
fn witnesses_verify_on_grid_positives() {
    let sweep = &*GRID;
    println!(
        "witness round-trip: {} positives, {} witnesses emitted, {} verification failures",
        sweep.positives, sweep.witnesses_emitted, sweep.witness_failure_count
    );
    assert_eq!(
        sweep.witness_failure_count, 0,
        "witness failures: {:?}",
        sweep.witness_failures
    );
    // The hand-checked positive instances must emit witnesses.
    let hand_positives = [
        GeneratorSet::new(vec![elem(&[(0, 1)], 1), elem(&[(-1, -1)], -1)]),
        GeneratorSet::new(vec![elem(&[], 6), elem(&[], -4), elem(&[], 0)]),
        GeneratorSet::new(vec![elem(&[(0, 1)], 0), elem(&[(0, -1)], 0)]),
    ];
    for (t, gens) in hand_positives.iter().enumerate() {
        let decision = decide_group(gens).unwrap();
        assert!(decision.is_group, "hand positive {t} decided false");
        let word = group_witness(gens, &decision, 6)
            .unwrap_or_else(|| panic!("hand positive {t} emitted no witness"));
        assert!(gens.eval_word(&word).unwrap().is_identity());
        assert!(word.full_image(gens.len()));
    }
}

#[test]
fn hand_checked_verdicts_are_exact() {
    let cases: [(GeneratorSet, bool); 6] = [
        (
            GeneratorSet::new(vec![elem(&[(0, 1)], 1), elem(&[(-1, -1)], -1)]),
            true,
        ),
        (
            GeneratorSet::new(vec![elem(&[(0, 1)], 1), elem(&[], -1)]),
            false,
        ),
        (
            GeneratorSet::new(vec![elem(&[], 6), elem(&[], -4), elem(&[], 0)]),
            true,
        ),
        (
            GeneratorSet::new(vec![elem(&[(0, 1)], 0), elem(&[(0, -1)], 0)]),
            true,
        ),
        (GeneratorSet::new(vec![elem(&[(0, 1)], 0)]), false),
        (GeneratorSet::new(vec![elem(&[], 0)]), true),
    ];
    for (t, (gens, expected)) in cases.iter().enumerate() {
        let decision = decide_group(gens).unwrap();
        assert_eq!(decision.is_group, *expected, "hand verdict {t} mismatched");
    }
    println!("hand verdicts: 6 of 6 exact");
}

fn rng_poly(rng: &mut ChaCha8Rng, max_terms: usize, span: i64, cmax: i64) -> LaurentPoly {
    let t = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms((0..t).map(|_| {
        (
            rng.gen_range(-span..=span),
            rat(rng.gen_range(-cmax..=cmax)),
        )
    }))
}

/// Nonzero, nonnegative, integral polynomial supported on d*[lo, hi].
fn rng_family_poly(rng: &mut ChaCha8Rng, d: i64, lo: i64, hi: i64) -> LaurentPoly {
    let t = rng.gen_range(1..=3);
    LaurentPoly::from_terms((0..t).map(|_| (d * rng.gen_range(lo..=hi), rat(rng.gen_range(1..=3)))))
}

#[test]
fn family_graph_products_match_pairings() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let families = 120;
    for round in 0..families {
        let d = 1 + (round % 2) as i64;
        let mut generators = Vec::new();
        for t in 0..rng.gen_range(1..=2) {
            let mult = if t == 0 { 1 } else { rng.gen_range(1..=2) };
            generators.push(WreathElem::from_poly(rng_poly(&mut rng, 3, 2, 3), d * mult));
        }
        for t in 0..rng.gen_range(1..=2) {
            let mult = if t == 0 { 1 } else { rng.gen_range(1..=2) };
            generators.push(WreathElem::from_poly(
                rng_poly(&mut rng, 3, 2, 3),
                -d * mult,
            ));
        }
        for _ in 0..rng.gen_range(0..=2) {
            generators.push(WreathElem::from_poly(rng_poly(&mut rng, 2, 2, 3), 0));
        }
        let gens = GeneratorSet::new(generators);
        assert_eq!(gens.d(), Some(d));
        let s: Vec<(usize, usize)> = gens
            .idx_pos()
            .iter()
            .flat_map(|&i| gens.idx_neg().iter().map(move |&j| (i, j)))
            .collect();
        let f_pairs: std::collections::BTreeMap<(usize, usize), LaurentPoly> = s
            .iter()
            .map(|&p| (p, rng_family_poly(&mut rng, d, -2, 2)))
            .collect();
        let f_s = f_pairs
            .values()
            .fold(LaurentPoly::zero(), |acc, f| &acc + f);
        let (lo, hi) = (f_s.min_exp().unwrap() / d, f_s.max_exp().unwrap() / d);
        let f_zeros: std::collections::BTreeMap<usize, LaurentPoly> = gens
            .idx_zero()
            .iter()
            .map(|&k| (k, rng_family_poly(&mut rng, d, lo, hi)))
            .collect();
        let wg = build_witness_graph(&gens, &s, &f_pairs, &f_zeros)
            .unwrap_or_else(|e| panic!("family {round} rejected: {e:?}"));
        let mut expect = RatFunc::zero();
        for (&(i, j), f) in &wg.pairs {
            let h = compute_h(&gens, i, j).unwrap();
            expect = &expect + &(&RatFunc::from_poly(f.clone()) * &h);
        }
        for (&k, f) in &wg.zeros {
            expect = &expect + &(&RatFunc::from_poly(f.clone()) * gens.y(k));
        }
        let product = wg.graph.product();
        assert_eq!(product.b, 0, "family {round} graph has net displacement");
        assert_eq!(
            product.y, expect,
            "family {round} product mismatches pairing"
        );
    }
    println!("family graph products: {families} of {families} match exactly");
}

#[test]
fn solution_bases_solve_their_systems_exactly() {
    let sweep = &*GRID;
    println!(
        "kernel exactness: {} basis vectors checked, {} nonzero residuals",
        sweep.kernel_vectors, sweep.kernel_failure_count
    );
    assert!(sweep.kernel_vectors > 0);
    assert_eq!(
        sweep.kernel_failure_count, 0,
        "kernel failures: {:?}",
        sweep.kernel_failures
    );
}

#[test]
fn positivity_verdicts_carry_exact_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let bases = 60;
    let mut holds_count = 0;
    for round in 0..bases {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let vectors: Vec<Vec<LaurentPoly>> = (0..k)
            .map(|_| (0..n).map(|_| rng_poly(&mut rng, 2, 2, 3)).collect())
            .collect();
        let outcome = decide_all_r(&vectors);
        if outcome.holds {
            holds_count += 1;
            let live: Vec<&Vec<LaurentPoly>> = vectors
                .iter()
                .filter(|v| v.iter().any(|p| !p.is_zero()))
                .collect();
            for _ in 0..1000 {
                let den: i64 = rng.gen_range(1..=100);
                let num: i64 = rng.gen_range(1..=den * 100);
                let r = Rat::new(num.into(), den.into());
                let m: Vec<Vec<Rat>> = (0..n)
                    .map(|c| live.iter().map(|v| v[c].eval(&r).unwrap()).collect())
                    .collect();
                assert!(
                    matches!(
                        gordan_strict_solution(&RatField, &m),
                        GordanOutcome::StrictSolution(_)
                    ),
                    "basis {round} decided positive but fails at r = {r}"
                );
            }
        } else {
            let refutation = outcome
                .refutation
                .unwrap_or_else(|| panic!("basis {round} decided negative without a certificate"));
            assert!(
                verify_refutation(&vectors, &refutation),
                "basis {round} carries a certificate that does not verify"
            );
        }
    }
    println!(
        "positivity certificates: {bases} bases, {holds_count} positive (1000 probes each), {} refuted, 0 failures",
        bases - holds_count
    );
}

fn for_each_box(n: usize, lo: i64, hi: i64, f: &mut impl FnMut(&[i64])) {
    let mut alpha = vec![lo; n];
    loop {
        f(&alpha);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            alpha[i] += 1;
            if alpha[i] <= hi {
                break;
            }
            alpha[i] = lo;
            i += 1;
        }
    }
}

/// Optional distinguished-coordinate constraint: (gap bound, S, K).
type CellPlan = Option<(i64, usize, usize)>;

/// Initial-vector sets seen across a cell enumeration, keyed per plan.
type CellVectors = BTreeSet<Vec<Vec<Rat>>>;

#[test]
fn weight_cells_cover_admissible_boxes() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut bases_checked = 0;
    let mut weights_checked = 0usize;
    for n in 1..=4usize {
        for _ in 0..12 {
            let k = rng.gen_range(1..=3);
            let basis: Vec<Vec<LaurentPoly>> = (0..k)
                .map(|_| (0..n).map(|_| rng_poly(&mut rng, 3, 2, 3)).collect())
                .collect();
            if !basis.iter().any(|v| v.iter().any(|p| !p.is_zero())) {
                continue;
            }
            bases_checked += 1;
            let mut plans: Vec<(CellPlan, CellVectors)> = vec![(None, BTreeSet::new())];
            if n >= 2 {
                plans.push((Some((0, 0, 1)), BTreeSet::new()));
                plans.push((Some((1, 0, 1)), BTreeSet::new()));
            }
            for (constraint, reachable) in &mut plans {
                for rep in enumerate_weight_cells(&basis, *constraint) {
                    reachable.insert(initial_data(&basis, &rep).vectors);
                }
            }
            for_each_box(n, -6, 6, &mut |alpha| {
                let data = initial_data(&basis, alpha).vectors;
                for (constraint, reachable) in &plans {
                    if let Some((a, cs, ck)) = constraint {
                        if alpha[*cs] - alpha[*ck] > *a {
                            continue;
                        }
                    }
                    weights_checked += 1;
                    assert!(
                        reachable.contains(&data),
                        "weight {alpha:?} under {constraint:?} hits no enumerated cell"
                    );
                }
            });
        }
    }
    println!(
        "weight-cell coverage: {bases_checked} bases, {weights_checked} box weights, all covered"
    );
}

#[test]
fn power_products_match_radical_windows() {
    let sweep = &*GRID;
    // The ten-factor hand instance exercises the longest window.
    let gens = GeneratorSet::new(vec![
        elem(&[(0, 1)], 6),
        elem(&[(0, 1)], -4),
        elem(&[(0, 1)], 0),
    ]);
    assert!(power_identity_holds(&gens, 2, 0, 1));
    println!(
        "power identity: {} grid pairs plus the ten-factor instance, {} failures",
        sweep.power_checks, sweep.power_failure_count
    );
    assert!(sweep.power_checks > 0);
    assert_eq!(
        sweep.power_failure_count, 0,
        "power identity failures: {:?}",
        sweep.power_failures
    );
}
