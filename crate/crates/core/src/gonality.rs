//! Exhaustive searches for degree-`d` morphisms to trees and for divisorially
//! gonal refinements.
//!
//! Size bound used by the search: if `φ : G → T` is non-degenerate of degree
//! `d`, every target vertex `u` has fiber sum `Σ_{φ(v)=u} m(v) = d ≥ 1`, so
//! `φ` is surjective on vertices and `|V(T)| ≤ |V(G⁰)|`. The search therefore
//! enumerates set partitions of `V(G⁰)` (the fibers) instead of trees: the
//! target tree is then forced to be the quotient, since a tree edge joining
//! two fibers with no source edge between them would give `m = 0`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::divisor::{Divisor, DivisorError, DivisorTheory, DEFAULT_CLASS_CAP};
use crate::graph::{are_isomorphic, Edge, Vertex, WeightedGraph};
use crate::hurwitz::{is_hurwitz_type, HurwitzError, PartitionSet};
use crate::morphism::{EdgeAction, IndexedMorphism, MorphismError};

pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GonalityError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Harmonic,
    PseudoHarmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Found,
    NotFound,
    /// The node budget ran out first.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub partitions: u64,
    pub trees: u64,
}

/// Completion data for one source vertex of a Hurwitz-type witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexHurwitz {
    pub vertex: String,
    pub genus: u32,
    pub completed: PartitionSet,
}

#[derive(Debug, Clone)]
pub struct GonalityReport {
    pub decision: Decision,
    pub degree: u32,
    pub mode: Mode,
    pub witness: Option<IndexedMorphism>,
    /// Filled when the Hurwitz check was requested and a witness was found.
    pub hurwitz: Option<Vec<VertexHurwitz>>,
    pub stats: SearchStats,
}

impl GonalityReport {
    pub fn found(&self) -> Option<bool> {
        match self.decision {
            Decision::Found => Some(true),
            Decision::NotFound => Some(false),
            Decision::Inconclusive => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub mode: Mode,
    pub hurwitz: bool,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { mode: Mode::Harmonic, hurwitz: false, budget: DEFAULT_BUDGET }
    }
}

/// Searches for a non-degenerate degree-`d` morphism from the loopless model of
/// `g` (legs dropped) to a tree.
pub fn find_harmonic_to_tree(g: &WeightedGraph, d: u32, opts: SearchOptions) -> Result<GonalityReport, GonalityError> {
    if d == 0 {
        return Err(GonalityError::ZeroDegree);
    }
    let g0 = g.without_legs().loopless_model();
    let mut s = Search::new(&g0, d, opts);
    let mut labels = vec![usize::MAX; g0.vertex_count()];
    let mut sizes = Vec::new();
    let res = s.partitions(0, &mut labels, &mut sizes);
    let decision = match res {
        Flow::Found => Decision::Found,
        Flow::Continue => Decision::NotFound,
        Flow::OutOfBudget => Decision::Inconclusive,
    };
    let (witness, hurwitz) = match s.found.take() {
        Some((phi, h)) => (Some(phi), h),
        None => (None, None),
    };
    Ok(GonalityReport { decision, degree: d, mode: opts.mode, witness, hurwitz, stats: s.stats })
}

/// Harmonic degree-`d` morphism to a tree with every vertex of Hurwitz type.
///
/// The Hurwitz check is not skipped for small `d`: a vertex with `m = 1` and
/// positive weight satisfies the local inequality but lies in no Hurwitz
/// partition set of positive genus.
pub fn is_geometrically_gonal(g: &WeightedGraph, d: u32) -> Result<Option<bool>, GonalityError> {
    let opts = SearchOptions { mode: Mode::Harmonic, hurwitz: true, budget: DEFAULT_BUDGET };
    Ok(find_harmonic_to_tree(g, d, opts)?.found())
}

#[derive(Debug, PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    OutOfBudget,
}

type Found = (IndexedMorphism, Option<Vec<VertexHurwitz>>);

struct Search<'a> {
    g: &'a WeightedGraph,
    d: u32,
    opts: SearchOptions,
    stats: SearchStats,
    hurwitz_cache: HashMap<(PartitionSet, u32), Option<PartitionSet>>,
    found: Option<Found>,
}

/// A fiber partition whose quotient is a tree.
struct Quotient {
    labels: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    /// `(a, b)` with `a < b`, in order of first appearance among source edges.
    tree_edges: Vec<(usize, usize)>,
    /// Source edges over each tree edge.
    over: Vec<Vec<usize>>,
    block_degree: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a WeightedGraph, d: u32, opts: SearchOptions) -> Self {
        Search { g, d, opts, stats: SearchStats::default(), hurwitz_cache: HashMap::new(), found: None }
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        self.stats.nodes <= self.opts.budget
    }

    /// Restricted-growth enumeration of set partitions with blocks of size ≤ d.
    fn partitions(&mut self, v: usize, labels: &mut Vec<usize>, sizes: &mut Vec<usize>) -> Flow {
        if !self.tick() {
            return Flow::OutOfBudget;
        }
        let n = labels.len();
        if v == n {
            self.stats.partitions += 1;
            return match self.quotient(labels, sizes.len()) {
                Some(q) => {
                    self.stats.trees += 1;
                    self.multiplicities(&q)
                }
                None => Flow::Continue,
            };
        }
        for b in 0..=sizes.len() {
            let new_block = b == sizes.len();
            if !new_block && sizes[b] as u32 >= self.d {
                continue;
            }
            labels[v] = b;
            if new_block {
                sizes.push(1);
            } else {
                sizes[b] += 1;
            }
            let ok = self.partial_acyclic(labels, v + 1, sizes.len());
            let flow = if ok { self.partitions(v + 1, labels, sizes) } else { Flow::Continue };
            if new_block {
                sizes.pop();
            } else {
                sizes[b] -= 1;
            }
            labels[v] = usize::MAX;
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Block pairs joined by edges among the first `upto` vertices form a forest.
    fn partial_acyclic(&self, labels: &[usize], upto: usize, blocks: usize) -> bool {
        let mut pairs = BTreeSet::new();
        for e in self.g.edges() {
            let [a, b] = e.ends;
            if a < upto && b < upto && labels[a] != labels[b] {
                pairs.insert((labels[a].min(labels[b]), labels[a].max(labels[b])));
            }
        }
        let mut uf = crate::graph::UnionFind::new(blocks);
        pairs.into_iter().all(|(a, b)| uf.union(a, b))
    }

    fn quotient(&self, labels: &[usize], count: usize) -> Option<Quotient> {
        let mut tree_edges: Vec<(usize, usize)> = Vec::new();
        let mut over: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.g.edges().iter().enumerate() {
            let (a, b) = (labels[e.ends[0]], labels[e.ends[1]]);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            match tree_edges.iter().position(|&p| p == key) {
                Some(t) => over[t].push(i),
                None => {
                    tree_edges.push(key);
                    over.push(vec![i]);
                }
            }
        }
        if tree_edges.len() + 1 != count {
            return None;
        }
        let mut blocks = vec![Vec::new(); count];
        for (v, &b) in labels.iter().enumerate() {
            blocks[b].push(v);
        }
        let mut block_degree = vec![0; count];
        for &(a, b) in &tree_edges {
            block_degree[a] += 1;
            block_degree[b] += 1;
        }
        // every vertex needs an edge over each tree edge at its block
        for (t, &(a, b)) in tree_edges.iter().enumerate() {
            for &side in &[a, b] {
                for &v in &blocks[side] {
                    if !over[t].iter().any(|&e| self.g.edges()[e].ends.contains(&v)) {
                        return None;
                    }
                }
            }
        }
        Some(Quotient { labels: labels.to_vec(), blocks, tree_edges, over, block_degree })
    }

    /// Number of source edges at `v` over tree edge `t`.
    fn count_over(&self, q: &Quotient, v: usize, t: usize) -> u32 {
        q.over[t].iter().filter(|&&e| self.g.edges()[e].ends.contains(&v)).count() as u32
    }

    fn multiplicities(&mut self, q: &Quotient) -> Flow {
        let n = self.g.vertex_count();
        let mut lower = vec![1u32; n];
        for (t, &(a, b)) in q.tree_edges.iter().enumerate() {
            for &side in &[a, b] {
                for &v in &q.blocks[side] {
                    lower[v] = lower[v].max(self.count_over(q, v, t));
                }
            }
        }
        let mut m = vec![0u32; n];
        let order: Vec<usize> = q.blocks.iter().flatten().copied().collect();
        self.assign_m(q, &order, 0, &lower, &mut m, 0)
    }

    /// `R(v)` depends only on `m(v)`: the indices over each tree edge at the
    /// block of `v` sum to `m(v)`, and contracted edges count `−1`.
    fn ramification(&self, q: &Quotient, v: usize, m: u32) -> i64 {
        let m = m as i64;
        let val = self.g.incident_edges(v).len() as i64;
        2 * (m - 1 + self.g.weight(v) as i64) - (m * q.block_degree[q.labels[v]] as i64 - val)
    }

    fn assign_m(&mut self, q: &Quotient, order: &[usize], i: usize, lower: &[u32], m: &mut Vec<u32>, used: u32) -> Flow {
        if !self.tick() {
            return Flow::OutOfBudget;
        }
        if i == order.len() {
            return self.indices(q, m);
        }
        let v = order[i];
        let block = &q.blocks[q.labels[v]];
        let pos = block.iter().position(|&x| x == v).expect("vertex in its block");
        let last = pos + 1 == block.len();
        let rest_lower: u32 = block[pos + 1..].iter().map(|&x| lower[x]).sum();
        if used + lower[v] + rest_lower > self.d {
            return Flow::Continue;
        }
        let max = self.d - used - rest_lower;
        let range = if last { max..=max } else { lower[v]..=max };
        for mv in range {
            if mv < lower[v] {
                continue;
            }
            if self.opts.mode == Mode::Harmonic && self.ramification(q, v, mv) < 0 {
                continue;
            }
            m[v] = mv;
            let next_used = if last { 0 } else { used + mv };
            let flow = self.assign_m(q, order, i + 1, lower, m, next_used);
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Index vectors over every tree edge, ascending, realizing `m`.
    fn indices(&mut self, q: &Quotient, m: &[u32]) -> Flow {
        let mut r = vec![0u32; self.g.edge_count()];
        self.indices_from(q, m, 0, &mut r)
    }

    fn indices_from(&mut self, q: &Quotient, m: &[u32], t: usize, r: &mut Vec<u32>) -> Flow {
        if t == q.tree_edges.len() {
            return self.accept(q, m, r);
        }
        let mut rem: HashMap<usize, u32> = HashMap::new();
        let (a, b) = q.tree_edges[t];
        for &v in q.blocks[a].iter().chain(&q.blocks[b]) {
            rem.insert(v, m[v]);
        }
        let edges = q.over[t].clone();
        self.edge_indices(q, m, t, &edges, 0, &mut rem, r)
    }

    #[allow(clippy::too_many_arguments)]
    fn edge_indices(
        &mut self,
        q: &Quotient,
        m: &[u32],
        t: usize,
        edges: &[usize],
        k: usize,
        rem: &mut HashMap<usize, u32>,
        r: &mut Vec<u32>,
    ) -> Flow {
        if !self.tick() {
            return Flow::OutOfBudget;
        }
        if k == edges.len() {
            if rem.values().any(|&x| x != 0) {
                return Flow::Continue;
            }
            return self.indices_from(q, m, t + 1, r);
        }
        let [x, y] = self.g.edges()[edges[k]].ends;
        let pending = |v: usize| edges[k + 1..].iter().filter(|&&e| self.g.edges()[e].ends.contains(&v)).count() as u32;
        let (px, py) = (pending(x), pending(y));
        let (rx, ry) = (rem[&x], rem[&y]);
        if rx < px + 1 || ry < py + 1 {
            return Flow::Continue;
        }
        let hi = (rx - px).min(ry - py);
        // the last edge at a vertex must absorb its remainder
        let lo = if px == 0 { rx } else { 1 }.max(if py == 0 { ry } else { 1 });
        for idx in lo..=hi {
            if (px == 0 && idx != rx) || (py == 0 && idx != ry) {
                continue;
            }
            r[edges[k]] = idx;
            *rem.get_mut(&x).unwrap() -= idx;
            *rem.get_mut(&y).unwrap() -= idx;
            let flow = self.edge_indices(q, m, t, edges, k + 1, rem, r);
            *rem.get_mut(&x).unwrap() += idx;
            *rem.get_mut(&y).unwrap() += idx;
            if flow != Flow::Continue {
                r[edges[k]] = 0;
                return flow;
            }
        }
        r[edges[k]] = 0;
        Flow::Continue
    }

    fn accept(&mut self, q: &Quotient, m: &[u32], r: &[u32]) -> Flow {
        let hurwitz = if self.opts.hurwitz {
            match self.hurwitz_data(q, m, r) {
                Ok(Some(h)) => Some(h),
                Ok(None) => return Flow::Continue,
                // a vertex degree beyond the solver cap cannot be certified
                Err(_) => return Flow::Continue,
            }
        } else {
            None
        };
        let phi = self.witness(q, m, r);
        self.found = Some((phi, hurwitz));
        Flow::Found
    }

    fn hurwitz_data(&mut self, q: &Quotient, m: &[u32], r: &[u32]) -> Result<Option<Vec<VertexHurwitz>>, HurwitzError> {
        let mut out = Vec::new();
        for v in 0..self.g.vertex_count() {
            let b = q.labels[v];
            let mut parts = Vec::new();
            for (t, &(x, y)) in q.tree_edges.iter().enumerate() {
                if x == b || y == b {
                    parts.push(
                        q.over[t]
                            .iter()
                            .filter(|&&e| self.g.edges()[e].ends.contains(&v))
                            .map(|&e| r[e])
                            .collect(),
                    );
                }
            }
            let ps = PartitionSet::new(m[v], parts)?;
            let genus = self.g.weight(v);
            let key = (ps, genus);
            let completed = match self.hurwitz_cache.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let c = match key.0.complete_with_simple(genus) {
                        Some(c) if is_hurwitz_type(&c)?.is_some() => Some(c),
                        _ => None,
                    };
                    self.hurwitz_cache.insert(key, c.clone());
                    c
                }
            };
            match completed {
                Some(completed) => out.push(VertexHurwitz { vertex: self.g.vertex_id(v).to_string(), genus, completed }),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    fn witness(&self, q: &Quotient, m: &[u32], r: &[u32]) -> IndexedMorphism {
        let vertices: Vec<Vertex> = (0..q.blocks.len()).map(|i| Vertex { id: format!("t{i}"), weight: 0 }).collect();
        let edges: Vec<Edge> = q
            .tree_edges
            .iter()
            .map(|&(a, b)| Edge { id: format!("t{a}-t{b}"), ends: [a, b] })
            .collect();
        let target = WeightedGraph::new(vertices, edges, Vec::new()).expect("quotient tree");
        let mut actions = vec![EdgeAction::Contract; self.g.edge_count()];
        for (t, es) in q.over.iter().enumerate() {
            for &e in es {
                actions[e] = EdgeAction::MapTo(t);
            }
        }
        let phi = IndexedMorphism::new(self.g.clone(), target, q.labels.clone(), actions, r.to_vec())
            .expect("search produces structurally valid morphisms");
        if q.blocks.len() == 1 {
            phi.with_multiplicities(m.to_vec()).expect("length matches")
        } else {
            phi
        }
    }
}

/// A refinement found by [`find_divisorial_refinement`].
#[derive(Debug, Clone)]
pub struct Refinement {
    /// Number of inserted vertices on each edge of the input graph.
    pub inserted: Vec<u32>,
    pub graph: WeightedGraph,
    /// Witness on the weightless model of `graph`.
    pub witness: Divisor,
    pub plans_tried: usize,
}

impl Refinement {
    pub fn total(&self) -> u32 {
        self.inserted.iter().sum()
    }
}

/// Refinements with at most `max_subdiv` inserted vertices per edge, by
/// increasing total and up to isomorphism; returns the first whose `W^r_d`
/// is nonempty.
pub fn find_divisorial_refinement(
    g: &WeightedGraph,
    d: u32,
    r: i64,
    max_subdiv: u32,
) -> Result<Option<Refinement>, GonalityError> {
    let ne = g.edge_count();
    let mut plans_tried = 0;
    for total in 0..=(max_subdiv as usize * ne) as u32 {
        let mut seen: Vec<WeightedGraph> = Vec::new();
        let mut plan = vec![0u32; ne];
        let mut result = None;
        compositions(&mut plan, 0, total, max_subdiv, &mut |p| {
            let refined = g.refine(&p.iter().map(|&k| k + 1).collect::<Vec<_>>()).expect("positive plan");
            if seen.iter().any(|s| are_isomorphic(s, &refined)) {
                return Ok(true);
            }
            plans_tried += 1;
            let mut theory = DivisorTheory::new(&refined);
            if let Some(w) = theory.gonal_witness(d as usize, r, DEFAULT_CLASS_CAP)? {
                result = Some(Refinement { inserted: p.to_vec(), graph: refined, witness: w, plans_tried });
                return Ok(false);
            }
            seen.push(refined);
            Ok(true)
        })?;
        if result.is_some() {
            return Ok(result);
        }
    }
    Ok(None)
}

/// Compositions of `total` into `plan.len()` parts, each at most `max`, in
/// lexicographically decreasing order of the first parts.
fn compositions(
    plan: &mut Vec<u32>,
    i: usize,
    total: u32,
    max: u32,
    f: &mut dyn FnMut(&[u32]) -> Result<bool, DivisorError>,
) -> Result<bool, DivisorError> {
    if i + 1 == plan.len() {
        if total > max {
            return Ok(true);
        }
        plan[i] = total;
        return f(plan);
    }
    if plan.is_empty() {
        return if total == 0 { f(plan) } else { Ok(true) };
    }
    let slots = (plan.len() - i - 1) as u32;
    for k in (0..=total.min(max)).rev() {
        if total - k > slots * max {
            break;
        }
        plan[i] = k;
        if !compositions(plan, i + 1, total - k, max, f)? {
            return Ok(false);
        }
    }
    plan[i] = 0;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{banana, banana_weighted, dvx, pdx, spider_s3};
    use crate::graph::GraphBuilder;

    fn search(g: &WeightedGraph, d: u32, mode: Mode, hurwitz: bool) -> GonalityReport {
        find_harmonic_to_tree(g, d, SearchOptions { mode, hurwitz, budget: DEFAULT_BUDGET }).unwrap()
    }

    #[test]
    fn banana_two_maps_to_an_edge() {
        let rep = search(&banana(2), 2, Mode::Harmonic, false);
        assert_eq!(rep.decision, Decision::Found);
        let phi = rep.witness.unwrap();
        assert_eq!(phi.degree().unwrap(), 2);
        assert!(phi.check_harmonic().unwrap().0);
    }

    #[test]
    fn pdx_is_three_gonal() {
        let rep = search(&pdx(), 3, Mode::Harmonic, true);
        assert_eq!(rep.decision, Decision::Found);
        let phi = rep.witness.unwrap();
        assert_eq!(phi.target().vertex_count(), 4);
        assert_eq!(phi.degree().unwrap(), 3);
        let cert = phi.check_pseudo_harmonic().unwrap();
        assert_eq!(cert.multiplicity, vec![3, 3, 3, 3]);
        assert!(phi.check_harmonic().unwrap().0);
        let mut middle: Vec<u32> = phi.indices()[3..5].to_vec();
        middle.sort();
        assert_eq!(middle, vec![1, 2]);
        assert_eq!(rep.hurwitz.unwrap().len(), 4);
    }

    #[test]
    fn dvx_has_no_pseudo_harmonic_map() {
        let rep = search(&dvx(), 3, Mode::PseudoHarmonic, false);
        assert_eq!(rep.decision, Decision::NotFound);
        assert!(rep.stats.partitions > 0);
    }

    #[test]
    fn spider_is_not_two_gonal() {
        // fibers {l1, l2}, {c}, {l3} satisfy the local inequality, with m = 1 on weight-one feet
        let plain = search(&spider_s3(), 2, Mode::Harmonic, false);
        assert_eq!(plain.decision, Decision::Found);
        assert!(plain.witness.unwrap().check_pseudo_harmonic().unwrap().multiplicity.contains(&1));
        assert_eq!(is_geometrically_gonal(&spider_s3(), 2).unwrap(), Some(false));
    }

    #[test]
    fn weighted_banana_needs_the_hurwitz_check() {
        let g = banana_weighted(3, 0, 1);
        // the point target with m = (1, 1) passes the local inequality ...
        assert_eq!(search(&g, 2, Mode::Harmonic, false).decision, Decision::Found);
        // ... but a degree-one cover cannot have genus one
        assert_eq!(is_geometrically_gonal(&g, 2).unwrap(), Some(false));
        for n in 2..=5 {
            assert_eq!(is_geometrically_gonal(&banana(n), 2).unwrap(), Some(true), "B({n})");
        }
    }

    #[test]
    fn single_weighted_vertex() {
        let g = GraphBuilder::new().vertex("v", 3).build().unwrap();
        let rep = search(&g, 2, Mode::Harmonic, true);
        assert_eq!(rep.decision, Decision::Found);
        let h = rep.hurwitz.unwrap();
        assert_eq!(h[0].completed.len(), 8);
        assert_eq!(search(&g, 1, Mode::Harmonic, true).decision, Decision::NotFound);
    }

    #[test]
    fn budget_makes_it_inconclusive() {
        let rep = find_harmonic_to_tree(&dvx(), 3, SearchOptions { mode: Mode::PseudoHarmonic, hurwitz: false, budget: 10 })
            .unwrap();
        assert_eq!(rep.decision, Decision::Inconclusive);
        assert_eq!(rep.found(), None);
    }

    #[test]
    fn loops_go_through_the_loopless_model() {
        let g = GraphBuilder::new().vertex("v", 1).edge("l", "v", "v").build().unwrap();
        let rep = search(&g, 2, Mode::Harmonic, true);
        assert_eq!(rep.decision, Decision::Found);
        assert_eq!(rep.witness.unwrap().source().vertex_count(), 2);
    }

    #[test]
    fn refinement_identity_plan() {
        let r = find_divisorial_refinement(&banana(3), 2, 1, 2).unwrap().unwrap();
        assert_eq!(r.total(), 0);
        let tree = GraphBuilder::new().vertex("a", 0).vertex("b", 0).edge("e", "a", "b").build().unwrap();
        let r = find_divisorial_refinement(&tree, 1, 1, 1).unwrap().unwrap();
        assert_eq!(r.total(), 0);
        assert_eq!(r.witness.degree(), 1);
    }

    #[test]
    fn composition_order() {
        let mut seen = Vec::new();
        let mut plan = vec![0; 3];
        compositions(&mut plan, 0, 2, 1, &mut |p| {
            seen.push(p.to_vec());
            Ok(true)
        })
        .unwrap();
        assert_eq!(seen, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
    }
}
