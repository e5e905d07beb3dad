//! Multigraphs on the integer line that track products of generator words.
//!
//! A graph holds edges `(start, label)` where the label names a generator;
//! the edge runs from `start` to `start + b_label`. The product of a graph is
//! the wreath element obtained by depositing `X^{start} * y_label` for every
//! edge and summing the displacements, so Euler circuits through a balanced
//! graph realize the product as an explicit word. The base-graph and
//! witness-graph builders assemble the circuits whose Euler words witness
//! identity elements.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::polyring::{LaurentPoly, Rat, RatFunc};
use crate::wreath::{GeneratorSet, Word, WreathElem};

/// Errors raised by graph construction and decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// A word referenced a generator index outside the context.
    BadIndex,
    /// The graph has no Euler circuit through vertex 0 (unbalanced,
    /// disconnected, or empty).
    NotEulerian,
    /// Primitive decomposition was asked of a graph whose labels are not
    /// radical (displacements outside `{-d, 0, d}`).
    NotRadical,
    /// A builder precondition failed; the message names the violated
    /// condition.
    PreconditionViolated(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::BadIndex => f.write_str("label indexes a missing generator"),
            GraphError::NotEulerian => f.write_str("graph has no Euler circuit through 0"),
            GraphError::NotRadical => f.write_str("graph labels are not radical"),
            GraphError::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for GraphError {}

fn precondition(msg: String) -> GraphError {
    GraphError::PreconditionViolated(msg)
}

/// Labeled multigraph over a generator context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGraph {
    gens: GeneratorSet,
    vertices: BTreeSet<i64>,
    /// `(start, label) -> multiplicity`.
    edges: BTreeMap<(i64, usize), usize>,
}

impl GGraph {
    /// The single-vertex graph on `{0}` with no edges.
    pub fn trivial(gens: GeneratorSet) -> Self {
        let mut vertices = BTreeSet::new();
        vertices.insert(0);
        GGraph {
            gens,
            vertices,
            edges: BTreeMap::new(),
        }
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn vertices(&self) -> &BTreeSet<i64> {
        &self.vertices
    }

    /// Edge multiset as `(start, label) -> multiplicity`.
    pub fn edges(&self) -> &BTreeMap<(i64, usize), usize> {
        &self.edges
    }

    /// Total edge count with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// Inserts `mult` copies of the edge `(start, label)`.
    pub fn add_edge(&mut self, start: i64, label: usize, mult: usize) {
        assert!(label < self.gens.len(), "edge label out of range");
        if mult == 0 {
            return;
        }
        self.vertices.insert(start);
        self.vertices.insert(start + self.gens.b(label));
        *self.edges.entry((start, label)).or_insert(0) += mult;
    }

    /// Merges a copy of `circuit` with all vertices shifted by `at`.
    pub fn attach(&self, circuit: &GGraph, at: i64) -> GGraph {
        self.attach_times(circuit, at, 1)
    }

    /// Merges `times` copies of `circuit` shifted by `at`.
    pub fn attach_times(&self, circuit: &GGraph, at: i64, times: usize) -> GGraph {
        debug_assert_eq!(self.gens, circuit.gens, "attach across generator contexts");
        let mut out = self.clone();
        if times == 0 {
            return out;
        }
        for v in &circuit.vertices {
            out.vertices.insert(v + at);
        }
        for (&(s, l), &m) in &circuit.edges {
            *out.edges.entry((s + at, l)).or_insert(0) += m * times;
        }
        out
    }

    /// The wreath element `(sum of X^{start} y_label, sum of b_label)` over
    /// the edge multiset.
    pub fn product(&self) -> WreathElem {
        // Group deposits by label so denominators never pile up.
        let mut by_label: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut b = 0i64;
        for (&(s, l), &m) in &self.edges {
            let mult = LaurentPoly::monomial(Rat::from_integer(m.into()), s);
            let entry = by_label.entry(l).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &mult;
            b += self.gens.b(l) * m as i64;
        }
        let mut y = RatFunc::zero();
        for (l, c) in by_label {
            y = &y + &(&RatFunc::from_poly(c) * self.gens.y(l));
        }
        WreathElem { y, b }
    }

    /// The walk graph of a word: edge `t` starts at the running displacement
    /// after `t` letters. The result is restricted to the undirected
    /// component of vertex 0 (a no-op for walks, which start there).
    pub fn graph_of_word(gens: &GeneratorSet, word: &Word) -> Result<GGraph, GraphError> {
        let mut g = GGraph::trivial(gens.clone());
        let mut pos = 0i64;
        for &a in word.letters() {
            if a >= gens.len() {
                return Err(GraphError::BadIndex);
            }
            g.add_edge(pos, a, 1);
            pos += gens.b(a);
        }
        Ok(g.restrict_to_component_of_zero())
    }

    /// Keeps only vertices in the undirected component of 0 and edges between
    /// them.
    pub fn restrict_to_component_of_zero(&self) -> GGraph {
        let mut adj: BTreeMap<i64, BTreeSet<i64>> = BTreeMap::new();
        for &(s, l) in self.edges.keys() {
            let t = s + self.gens.b(l);
            adj.entry(s).or_default().insert(t);
            adj.entry(t).or_default().insert(s);
        }
        let mut seen = BTreeSet::new();
        let mut frontier = Vec::new();
        seen.insert(0i64);
        frontier.push(0i64);
        while let Some(v) = frontier.pop() {
            if let Some(nbrs) = adj.get(&v) {
                for &w in nbrs {
                    if seen.insert(w) {
                        frontier.push(w);
                    }
                }
            }
        }
        let edges: BTreeMap<(i64, usize), usize> = self
            .edges
            .iter()
            .filter(|((s, _), _)| seen.contains(s))
            .map(|(&k, &m)| (k, m))
            .collect();
        let vertices: BTreeSet<i64> = self.vertices.intersection(&seen).copied().collect();
        GGraph {
            gens: self.gens.clone(),
            vertices,
            edges,
        }
    }

    /// Out-degree minus in-degree per vertex; the graph is balanced when all
    /// entries vanish.
    fn imbalance(&self) -> BTreeMap<i64, i64> {
        let mut delta: BTreeMap<i64, i64> = BTreeMap::new();
        for (&(s, l), &m) in &self.edges {
            *delta.entry(s).or_insert(0) += m as i64;
            *delta.entry(s + self.gens.b(l)).or_insert(0) -= m as i64;
        }
        delta.retain(|_, v| *v != 0);
        delta
    }

    fn is_connected_through_zero(&self) -> bool {
        let restricted = self.restrict_to_component_of_zero();
        restricted.edge_count() == self.edge_count()
    }

    /// Validates the Euler-circuit preconditions: at least one edge, vertex 0
    /// present, balanced, and all edges reachable from 0.
    fn check_eulerian(&self) -> Result<(), GraphError> {
        if self.edges.is_empty() || !self.vertices.contains(&0) {
            return Err(GraphError::NotEulerian);
        }
        if !self.imbalance().is_empty() {
            return Err(GraphError::NotEulerian);
        }
        if !self.is_connected_through_zero() {
            return Err(GraphError::NotEulerian);
        }
        Ok(())
    }

    /// Euler circuit starting and ending at vertex 0, as a word over the
    /// labels. At every vertex the unused edge with the smallest label is
    /// taken first, so the output is deterministic.
    pub fn euler_circuit(&self) -> Result<Word, GraphError> {
        self.check_eulerian()?;
        // Remaining multiplicity per (vertex, label), consumed smallest-label
        // first via range scans.
        let mut remaining = self.edges.clone();
        let mut stack: Vec<(i64, Option<usize>)> = Vec::new();
        stack.push((0, None));
        let mut out: Vec<usize> = Vec::with_capacity(self.edge_count());
        while let Some(&(v, via)) = stack.last() {
            let next = remaining
                .range((v, 0)..=(v, usize::MAX))
                .find(|(_, &m)| m > 0)
                .map(|(&(_, l), _)| l);
            match next {
                Some(l) => {
                    *remaining.get_mut(&(v, l)).unwrap() -= 1;
                    stack.push((v + self.gens.b(l), Some(l)));
                }
                None => {
                    stack.pop();
                    if let Some(l) = via {
                        out.push(l);
                    }
                }
            }
        }
        if remaining.values().any(|&m| m > 0) {
            return Err(GraphError::NotEulerian);
        }
        out.reverse();
        Word::new(out).map_err(|_| GraphError::NotEulerian)
    }
}

/// Kind of a primitive circuit over a radical context: a two-edge up/down
/// pair or a single loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CircuitKind {
    /// One edge `up` (displacement `d`) followed by one edge `down`
    /// (displacement `-d`).
    Pair { up: usize, down: usize },
    /// A single zero-displacement edge.
    Loop { label: usize },
}

/// A primitive circuit together with the vertex it attaches at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimitiveCircuit {
    pub kind: CircuitKind,
    pub attach_vertex: i64,
}

impl PrimitiveCircuit {
    /// The circuit's template graph based at 0.
    pub fn template(&self, gens: &GeneratorSet) -> Result<GGraph, GraphError> {
        let mut g = GGraph::trivial(gens.clone());
        match self.kind {
            CircuitKind::Loop { label } => {
                if label >= gens.len() || gens.b(label) != 0 {
                    return Err(precondition(format!(
                        "loop label {label} must have zero displacement"
                    )));
                }
                g.add_edge(0, label, 1);
            }
            CircuitKind::Pair { up, down } => {
                if up >= gens.len() || down >= gens.len() {
                    return Err(GraphError::BadIndex);
                }
                let bu = gens.b(up);
                if bu <= 0 || gens.b(down) != -bu {
                    return Err(precondition(format!(
                        "pair ({up}, {down}) must have opposite displacements"
                    )));
                }
                g.add_edge(0, up, 1);
                g.add_edge(bu, down, 1);
            }
        }
        Ok(g)
    }

    /// The template shifted onto its attach vertex.
    pub fn realize(&self, gens: &GeneratorSet) -> Result<GGraph, GraphError> {
        Ok(GGraph::trivial(gens.clone()).attach(&self.template(gens)?, self.attach_vertex))
    }
}

impl GGraph {
    /// Decomposes an Eulerian graph over a radical context into primitive
    /// circuits: loops are peeled first (ascending by vertex, then label),
    /// then up/down pairs are peeled from the rightmost vertex, taking the
    /// smallest labels. The returned sequence rebuilds the graph by
    /// attaching onto the single-vertex graph `{0}` in order.
    pub fn primitive_decomposition(&self) -> Result<Vec<PrimitiveCircuit>, GraphError> {
        let d = self.gens.d();
        for &(_, l) in self.edges.keys() {
            let b = self.gens.b(l);
            let radical = match d {
                Some(d) => b == 0 || b == d || b == -d,
                None => b == 0,
            };
            if !radical {
                return Err(GraphError::NotRadical);
            }
        }
        if self.edges.is_empty() {
            // The trivial graph rebuilds from {0} with no circuits.
            return Ok(Vec::new());
        }
        self.check_eulerian()?;
        let mut remaining = self.edges.clone();
        let mut peeled: Vec<PrimitiveCircuit> = Vec::new();
        // Loops first, in ascending (vertex, label) order.
        let loops: Vec<(i64, usize, usize)> = remaining
            .iter()
            .filter(|((_, l), _)| self.gens.b(*l) == 0)
            .map(|(&(s, l), &m)| (s, l, m))
            .collect();
        for (s, l, m) in loops {
            for _ in 0..m {
                peeled.push(PrimitiveCircuit {
                    kind: CircuitKind::Loop { label: l },
                    attach_vertex: s,
                });
            }
            remaining.remove(&(s, l));
        }
        // Pairs from the rightmost vertex down. Every remaining edge moves by
        // exactly d, so the top vertex only connects downward and the peel
        // keeps the rest an interval.
        let d = d.expect("non-loop edges require a grading");
        while !remaining.is_empty() {
            let top = remaining
                .iter()
                .map(|(&(s, l), _)| s.max(s + self.gens.b(l)))
                .max()
                .unwrap();
            let up = remaining
                .range((top - d, 0)..=(top - d, usize::MAX))
                .find(|(&(_, l), &m)| m > 0 && self.gens.b(l) == d)
                .map(|(&(_, l), _)| l)
                .ok_or(GraphError::NotEulerian)?;
            let down = remaining
                .range((top, 0)..=(top, usize::MAX))
                .find(|(&(_, l), &m)| m > 0 && self.gens.b(l) == -d)
                .map(|(&(_, l), _)| l)
                .ok_or(GraphError::NotEulerian)?;
            for key in [(top - d, up), (top, down)] {
                let m = remaining.get_mut(&key).unwrap();
                *m -= 1;
                if *m == 0 {
                    remaining.remove(&key);
                }
            }
            peeled.push(PrimitiveCircuit {
                kind: CircuitKind::Pair { up, down },
                attach_vertex: top - d,
            });
        }
        peeled.reverse();
        Ok(peeled)
    }
}

/// The elementary circuit of a positive/negative generator pair: `|b_j|`
/// edges of label `i` climbing from 0, then `b_i` edges of label `j`
/// descending from `b_i * |b_j|` back to 0.
pub fn elementary_circuit(gens: &GeneratorSet, i: usize, j: usize) -> Result<GGraph, GraphError> {
    if i >= gens.len() || j >= gens.len() {
        return Err(GraphError::BadIndex);
    }
    let bi = gens.b(i);
    let bj = gens.b(j);
    if bi <= 0 || bj >= 0 {
        return Err(precondition(format!(
            "elementary circuit needs b_{i} > 0 and b_{j} < 0"
        )));
    }
    let mut g = GGraph::trivial(gens.clone());
    let top = bi * bj.abs();
    for t in 0..bj.abs() {
        g.add_edge(t * bi, i, 1);
    }
    for t in 0..bi {
        g.add_edge(top - t * bj.abs(), j, 1);
    }
    Ok(g)
}

/// Foundation graph: a connected Eulerian union of elementary circuits whose
/// vertex set contains 0 and the grading `d`.
#[derive(Clone, Debug)]
pub struct BaseGraph {
    pub graph: GGraph,
    /// The pair set it was built for, sorted and deduplicated.
    pub pairs: Vec<(usize, usize)>,
    /// Per pair, the sum of `X^v` over the attach vertices of its elementary
    /// circuits (zero for pairs the foundation never used).
    pub attachments: BTreeMap<(usize, usize), LaurentPoly>,
}

impl BaseGraph {
    /// `a` polynomials: attachments multiplied by the pair window
    /// `1 + X^d + ... + X^{b_i |b_j| - d}`.
    pub fn a_polys(&self) -> BTreeMap<(usize, usize), LaurentPoly> {
        let gens = self.graph.gens();
        let d = gens.d().expect("base graph requires a grading");
        self.attachments
            .iter()
            .map(|(&(i, j), att)| {
                let steps = gens.b(i) * gens.b(j).abs() / d;
                ((i, j), att * &LaurentPoly::window(d, 0, steps - 1))
            })
            .collect()
    }
}

/// Greedy coin-problem decomposition: indices (ascending) whose values sum to
/// `target`, or None. `items` are `(index, positive value)` pairs.
fn monoid_decompose(target: i64, items: &[(usize, i64)]) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    let t = usize::try_from(target).ok()?;
    let mut parent: Vec<Option<usize>> = alloc::vec![None; t + 1];
    let mut reach: Vec<bool> = alloc::vec![false; t + 1];
    reach[0] = true;
    for v in 1..=t {
        for &(idx, val) in items {
            let val = val as usize;
            if v >= val && reach[v - val] {
                parent[v] = Some(idx);
                reach[v] = true;
                break;
            }
        }
    }
    if !reach[t] {
        return None;
    }
    let mut out = Vec::new();
    let by_idx: BTreeMap<usize, i64> = items.iter().copied().collect();
    let mut v = t;
    while v > 0 {
        let idx = parent[v].unwrap();
        out.push(idx);
        v -= by_idx[&idx] as usize;
    }
    out.sort_unstable();
    Some(out)
}

fn validate_pairs(
    gens: &GeneratorSet,
    s: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>, GraphError> {
    if s.is_empty() {
        return Err(precondition("pair set is empty".into()));
    }
    let pairs: BTreeSet<(usize, usize)> = s.iter().copied().collect();
    for &(i, j) in &pairs {
        if i >= gens.len() || j >= gens.len() {
            return Err(GraphError::BadIndex);
        }
        if gens.b(i) <= 0 || gens.b(j) >= 0 {
            return Err(precondition(format!(
                "pair ({i}, {j}) must combine a positive and a negative displacement"
            )));
        }
    }
    let firsts: BTreeSet<usize> = pairs.iter().map(|&(i, _)| i).collect();
    let seconds: BTreeSet<usize> = pairs.iter().map(|&(_, j)| j).collect();
    if firsts != gens.idx_pos().iter().copied().collect::<BTreeSet<_>>() {
        return Err(precondition(
            "pair set must cover every positive-displacement generator".into(),
        ));
    }
    if seconds != gens.idx_neg().iter().copied().collect::<BTreeSet<_>>() {
        return Err(precondition(
            "pair set must cover every negative-displacement generator".into(),
        ));
    }
    Ok(pairs.into_iter().collect())
}

/// Builds the foundation graph for a double-full pair set: an up-chain of
/// elementary circuits climbing to some `A1` in the monoid of the positive
/// displacements, then a down-chain descending to `d = A1 - A2`, recording
/// the attach vertices per pair.
pub fn build_base_graph_a(
    gens: &GeneratorSet,
    s: &[(usize, usize)],
) -> Result<BaseGraph, GraphError> {
    let pairs = validate_pairs(gens, s)?;
    let d = gens.d().expect("pairs imply a grading");
    let pos_items: Vec<(usize, i64)> = gens.idx_pos().iter().map(|&i| (i, gens.b(i))).collect();
    let neg_items: Vec<(usize, i64)> = gens
        .idx_neg()
        .iter()
        .map(|&j| (j, gens.b(j).abs()))
        .collect();
    let d2 = neg_items.iter().fold(0i64, |g, &(_, v)| g.gcd(&v));
    // Both monoids are eventually full past their Frobenius bounds, so the
    // scan below terminates; the cap is a safety net only.
    let max1 = pos_items.iter().map(|&(_, v)| v).max().unwrap();
    let max2 = neg_items.iter().map(|&(_, v)| v).max().unwrap();
    let cap = max1 * max1 + max2 * max2 + d.abs() + 64;
    let mut found = None;
    let mut a2 = 0i64;
    while a2 <= cap {
        let a1 = a2 + d;
        if let Some(dec1) = monoid_decompose(a1, &pos_items) {
            if let Some(dec2) = monoid_decompose(a2, &neg_items) {
                found = Some((dec1, dec2));
                break;
            }
        }
        a2 += d2;
    }
    let (dec1, dec2) = found.expect("foundation search exceeded its bound");
    let smallest_j: BTreeMap<usize, usize> = gens
        .idx_pos()
        .iter()
        .map(|&i| {
            (
                i,
                pairs
                    .iter()
                    .filter(|&&(pi, _)| pi == i)
                    .map(|&(_, j)| j)
                    .min()
                    .unwrap(),
            )
        })
        .collect();
    let smallest_i: BTreeMap<usize, usize> = gens
        .idx_neg()
        .iter()
        .map(|&j| {
            (
                j,
                pairs
                    .iter()
                    .filter(|&&(_, pj)| pj == j)
                    .map(|&(i, _)| i)
                    .min()
                    .unwrap(),
            )
        })
        .collect();
    let mut graph = GGraph::trivial(gens.clone());
    let mut attachments: BTreeMap<(usize, usize), LaurentPoly> =
        pairs.iter().map(|&p| (p, LaurentPoly::zero())).collect();
    let mut pos = 0i64;
    for &i in &dec1 {
        let j = smallest_j[&i];
        graph = graph.attach(&elementary_circuit(gens, i, j)?, pos);
        let att = attachments.get_mut(&(i, j)).unwrap();
        *att = &*att + &LaurentPoly::x_pow(pos);
        pos += gens.b(i);
    }
    for &j in &dec2 {
        let i = smallest_i[&j];
        pos -= gens.b(j).abs();
        graph = graph.attach(&elementary_circuit(gens, i, j)?, pos);
        let att = attachments.get_mut(&(i, j)).unwrap();
        *att = &*att + &LaurentPoly::x_pow(pos);
    }
    debug_assert_eq!(pos, d);
    debug_assert!(graph.vertices.contains(&0) && graph.vertices.contains(&d));
    debug_assert!(graph.imbalance().is_empty());
    Ok(BaseGraph {
        graph,
        pairs,
        attachments,
    })
}

/// A witness graph together with the normalized family it realizes.
#[derive(Clone, Debug)]
pub struct WitnessGraph {
    pub graph: GGraph,
    pub base: BaseGraph,
    /// Normalized pair polynomials (input times `multiplier`).
    pub pairs: BTreeMap<(usize, usize), LaurentPoly>,
    /// Normalized loop polynomials (input times `multiplier`).
    pub zeros: BTreeMap<usize, LaurentPoly>,
    /// The common normalizing factor applied to the whole family.
    pub multiplier: LaurentPoly,
}

struct PairData {
    i: usize,
    j: usize,
    /// `attachments * E_N`: what the foundation copies already deposit.
    covered: LaurentPoly,
    /// Scaled input divided by the pair window; circuit multiplicities come
    /// from `p * spread - covered`.
    spread: LaurentPoly,
}

fn family_shape_error(name: &str, f: &LaurentPoly, d: i64) -> Option<String> {
    if f.is_zero() {
        return Some(format!("{name} must be nonzero"));
    }
    if !f.is_nonnegative() {
        return Some(format!("{name} has a negative coefficient"));
    }
    if !f.is_integral() {
        return Some(format!("{name} has a non-integer coefficient"));
    }
    if f.terms().any(|(e, _)| e.rem_euclid(d) != 0) {
        return Some(format!("{name} has an exponent outside {d}Z"));
    }
    None
}

/// Assembles the witness graph of a family of pair and loop polynomials: the
/// foundation and its shifted copies, one elementary circuit per unit of the
/// normalized pair polynomials beyond what the foundation deposits, and one
/// loop per unit of the normalized loop polynomials.
///
/// The family is scaled by a common normalizing factor (a power of the copy
/// window times a symmetric window times a positive integer) chosen so that
/// all circuit multiplicities are nonnegative integers and the graph is
/// connected; the factor is returned in the result. The graph's product
/// equals the pairing of the normalized family with the radical combinations
/// and the zero-displacement deposits.
pub fn build_witness_graph(
    gens: &GeneratorSet,
    s: &[(usize, usize)],
    f_pairs: &BTreeMap<(usize, usize), LaurentPoly>,
    f_zeros: &BTreeMap<usize, LaurentPoly>,
) -> Result<WitnessGraph, GraphError> {
    let base = build_base_graph_a(gens, s)?;
    let d = gens.d().expect("pairs imply a grading");
    let pair_keys: BTreeSet<(usize, usize)> = base.pairs.iter().copied().collect();
    if f_pairs.keys().copied().collect::<BTreeSet<_>>() != pair_keys {
        return Err(precondition(
            "family must provide exactly one polynomial per pair".into(),
        ));
    }
    let zero_keys: BTreeSet<usize> = gens.idx_zero().iter().copied().collect();
    if f_zeros.keys().copied().collect::<BTreeSet<_>>() != zero_keys {
        return Err(precondition(
            "family must provide exactly one polynomial per zero-displacement generator".into(),
        ));
    }
    for (&(i, j), f) in f_pairs {
        if let Some(msg) = family_shape_error(&format!("pair polynomial ({i}, {j})"), f, d) {
            return Err(precondition(msg));
        }
    }
    for (&k, f) in f_zeros {
        if let Some(msg) = family_shape_error(&format!("loop polynomial {k}"), f, d) {
            return Err(precondition(msg));
        }
    }
    let has_loops = !f_zeros.is_empty();
    if has_loops {
        let f_s = f_pairs
            .values()
            .fold(LaurentPoly::zero(), |acc, f| &acc + f);
        let f_k = f_zeros
            .values()
            .fold(LaurentPoly::zero(), |acc, f| &acc + f);
        let (sp, sm) = (f_s.max_exp().unwrap(), f_s.min_exp().unwrap());
        let (kp, km) = (f_k.max_exp().unwrap(), f_k.min_exp().unwrap());
        if sp + d < kp {
            return Err(precondition(format!(
                "degree condition deg_+(f_S) + d >= deg_+(f_K) violated ({sp} + {d} < {kp})"
            )));
        }
        if sm > km {
            return Err(precondition(format!(
                "degree condition deg_-(f_S) <= deg_-(f_K) violated ({sm} > {km})"
            )));
        }
    }

    let nn: i64 = gens
        .idx_pos()
        .iter()
        .chain(gens.idx_neg())
        .map(|&a| gens.b(a).abs())
        .fold(1i64, |acc, v| {
            acc.checked_mul(v).expect("displacement product overflow")
        });
    let e_n = LaurentPoly::window(d, 0, nn / d - 1);
    let w3 = LaurentPoly::window(d, -1, 1);
    let q2_base = f_pairs
        .values()
        .chain(f_zeros.values())
        .map(|f| {
            f.gap_free_exponent(d, 1, 1)
                .expect("family already validated")
        })
        .max()
        .unwrap_or(0);

    let covered: BTreeMap<(usize, usize), LaurentPoly> = base
        .attachments
        .iter()
        .map(|(&p, att)| (p, att * &e_n))
        .collect();
    let a_polys = base.a_polys();

    let mut q1 = if nn > d { 1 } else { 0 };
    let mut q2 = q2_base;
    let (pair_data, multiplier) = 'search: loop {
        assert!(q1 + q2 < 1_000, "witness normalization failed to converge");
        let mut m = LaurentPoly::x_pow(-q1 * d);
        for _ in 0..q1 {
            m = &m * &e_n;
        }
        for _ in 0..q2 {
            m = &m * &w3;
        }
        let mut data = Vec::new();
        for (&(i, j), f) in f_pairs {
            let steps = gens.b(i) * gens.b(j).abs() / d;
            let e_ij = LaurentPoly::window(d, 0, steps - 1);
            let spread = RatFunc::new(&m * f, e_ij)
                .expect("window is nonzero")
                .to_laurent()
                .expect("copy window divides the scaled family");
            debug_assert!(spread.is_nonnegative());
            // The spread must be one solid block that revisits the
            // foundation's deposit region, wide enough that its circuits
            // cover every grading step they straddle.
            if !spread.is_gap_free(d).unwrap() {
                grow_multiplier(&mut q1, &mut q2, nn, d);
                continue 'search;
            }
            let (lo, hi) = (spread.min_exp().unwrap(), spread.max_exp().unwrap());
            if hi < 0 || lo > nn - d || hi - lo < steps * d - d {
                grow_multiplier(&mut q1, &mut q2, nn, d);
                continue 'search;
            }
            let cov = &covered[&(i, j)];
            if !cov.is_zero() && (cov.min_exp().unwrap() < lo || cov.max_exp().unwrap() > hi) {
                grow_multiplier(&mut q1, &mut q2, nn, d);
                continue 'search;
            }
            if has_loops && !cov.is_zero() {
                let scaled = &m * f;
                let a = &a_polys[&(i, j)];
                if scaled.max_exp().unwrap() <= a.max_exp().unwrap() + nn - d
                    || scaled.min_exp().unwrap() >= a.min_exp().unwrap()
                {
                    grow_multiplier(&mut q1, &mut q2, nn, d);
                    continue 'search;
                }
            }
            data.push(PairData {
                i,
                j,
                covered: cov.clone(),
                spread,
            });
        }
        break (data, m);
    };

    // Smallest positive integer p with p * spread >= covered everywhere, plus
    // one so every circuit multiplicity stays strictly positive on the
    // spread's support (keeping it gap-free).
    let mut p = num_bigint::BigInt::one();
    for pd in &pair_data {
        for (e, c) in pd.covered.terms() {
            let ratio = (c / pd.spread.coeff(e)).ceil().to_integer();
            if ratio > p {
                p = ratio;
            }
        }
    }
    p += 1;
    let p_rat = Rat::from_integer(p);
    let multiplier = multiplier.scale(&p_rat);

    let copies = nn / d;
    let mut graph = base.graph.clone();
    for k in 1..copies {
        graph = graph.attach(&base.graph, d * k);
    }
    let mut pairs_out = BTreeMap::new();
    for pd in &pair_data {
        let g_ij = &pd.spread.scale(&p_rat) - &pd.covered;
        debug_assert!(g_ij.is_nonnegative() && g_ij.is_integral());
        let circuit = elementary_circuit(gens, pd.i, pd.j)?;
        for (e, c) in g_ij.terms() {
            let times = c
                .to_integer()
                .to_usize()
                .expect("circuit multiplicity too large");
            graph = graph.attach_times(&circuit, e, times);
        }
        pairs_out.insert((pd.i, pd.j), &multiplier * &f_pairs[&(pd.i, pd.j)]);
    }
    let mut zeros_out = BTreeMap::new();
    for (&k, f) in f_zeros {
        let scaled = &multiplier * f;
        let tpl = PrimitiveCircuit {
            kind: CircuitKind::Loop { label: k },
            attach_vertex: 0,
        }
        .template(gens)?;
        for (e, c) in scaled.terms() {
            let times = c
                .to_integer()
                .to_usize()
                .expect("loop multiplicity too large");
            graph = graph.attach_times(&tpl, e, times);
        }
        zeros_out.insert(k, scaled);
    }
    debug_assert!(graph.imbalance().is_empty());
    Ok(WitnessGraph {
        graph,
        base,
        pairs: pairs_out,
        zeros: zeros_out,
        multiplier,
    })
}

/// Widens the normalization multiplier. A copy-window factor shifts the
/// scaled hull to `[min - d, max + nn - 2d]`, so it only gains width on the
/// right when `nn > 2d`; otherwise the symmetric window, which widens both
/// ends, is the factor that makes every hull condition eventually reachable.
fn grow_multiplier(q1: &mut i64, q2: &mut i64, nn: i64, d: i64) {
    if nn > 2 * d {
        *q1 += 1;
    } else {
        *q2 += 1;
    }
}
