#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use chipgraph::graph::{Edge, Vertex};
use chipgraph::morphism::{EdgeAction, IndexedMorphism};
use chipgraph::{canonical_divisor, Divisor, WeightedGraph};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::seq::SliceRandom;
use rand::Rng;

/// Size limits for random graphs.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_weight: u32,
    pub loops: bool,
}

fn build(weights: &[u32], pairs: &[(usize, usize)]) -> WeightedGraph {
    let vertices = weights.iter().enumerate().map(|(i, &w)| Vertex { id: format!("v{}", i + 1), weight: w }).collect();
    let edges = pairs.iter().enumerate().map(|(i, &(a, b))| Edge { id: format!("e{}", i + 1), ends: [a, b] }).collect();
    WeightedGraph::new(vertices, edges, Vec::new()).expect("spanning tree keeps the graph connected")
}

/// Connected graph: a random spanning tree plus random extra edges.
pub fn random_graph<R: Rng>(rng: &mut R, s: Shape) -> WeightedGraph {
    let n = rng.gen_range(1..=s.max_vertices);
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=s.max_weight)).collect();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=s.max_edges.saturating_sub(n - 1));
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b && !s.loops {
            continue;
        }
        pairs.push((a.min(b), a.max(b)));
    }
    build(&weights, &pairs)
}

pub fn arb_graph(s: Shape) -> impl Strategy<Value = WeightedGraph> {
    (1..=s.max_vertices)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0..=s.max_weight, n),
                prop::collection::vec(any::<Index>(), n - 1),
                prop::collection::vec((any::<Index>(), any::<Index>()), 0..=s.max_edges + 1 - n),
            )
        })
        .prop_map(move |(weights, parents, extra)| {
            let n = weights.len();
            let mut pairs: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
            for (a, b) in extra {
                let (a, b) = (a.index(n), b.index(n));
                if a != b || s.loops {
                    pairs.push((a.min(b), a.max(b)));
                }
            }
            build(&weights, &pairs)
        })
}

/// Uniform-ish divisor of the given degree.
pub fn random_divisor<R: Rng>(rng: &mut R, n: usize, degree: i64) -> Divisor {
    let mut c = vec![0i64; n];
    for _ in 0..rng.gen_range(0..=3) {
        let v = rng.gen_range(0..n);
        let k = rng.gen_range(1..=2);
        c[v] += k;
        c[rng.gen_range(0..n)] -= k;
    }
    let diff = degree - c.iter().sum::<i64>();
    c[rng.gen_range(0..n)] += diff;
    Divisor::new(c)
}

/// Random composition of `total` into positive parts.
fn composition<R: Rng>(rng: &mut R, total: u32, max_parts: usize) -> Vec<u32> {
    let parts = rng.gen_range(1..=max_parts.min(total as usize));
    let mut cuts: Vec<u32> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct CoverShape {
    pub max_degree: u32,
    pub max_tree: usize,
    pub max_fiber: usize,
    pub max_weight: u32,
    pub max_target_weight: u32,
    pub contracted: usize,
    /// Every non-contracted edge gets index 1.
    pub simple: bool,
}

/// Random non-degenerate pseudo-harmonic morphism to a tree. Fibers are
/// random compositions of the degree; above each tree edge the units of the
/// two fibers are matched at random and grouped into edges of random index.
pub fn random_cover<R: Rng>(rng: &mut R, s: CoverShape) -> IndexedMorphism {
    loop {
        if let Some(phi) = try_cover(rng, s) {
            return phi;
        }
    }
}

fn try_cover<R: Rng>(rng: &mut R, s: CoverShape) -> Option<IndexedMorphism> {
    let d = rng.gen_range(1..=s.max_degree);
    let k = rng.gen_range(1..=s.max_tree);
    let t_vertices: Vec<Vertex> =
        (0..k).map(|i| Vertex { id: format!("t{}", i + 1), weight: rng.gen_range(0..=s.max_target_weight) }).collect();
    let t_pairs: Vec<(usize, usize)> = (1..k).map(|v| (rng.gen_range(0..v), v)).collect();
    let t_edges: Vec<Edge> =
        t_pairs.iter().enumerate().map(|(i, &(a, b))| Edge { id: format!("f{}", i + 1), ends: [a, b] }).collect();
    let target = WeightedGraph::new(t_vertices, t_edges, Vec::new()).ok()?;

    let mut vertices = Vec::new();
    let mut vmap = Vec::new();
    let mut m = Vec::new();
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for u in 0..k {
        let mut fiber = Vec::new();
        for mv in composition(rng, d, s.max_fiber) {
            let v = vertices.len();
            vertices.push(Vertex { id: format!("v{}", v + 1), weight: rng.gen_range(0..=s.max_weight) });
            vmap.push(u);
            m.push(mv);
            fiber.push(v);
        }
        fibers.push(fiber);
    }
    let mut edges = Vec::new();
    let mut actions = Vec::new();
    let mut index = Vec::new();
    for (f, &(a, b)) in t_pairs.iter().enumerate() {
        let units = |u: usize| -> Vec<usize> {
            fibers[u].iter().flat_map(|&v| std::iter::repeat(v).take(m[v] as usize)).collect()
        };
        let left = units(a);
        let mut right = units(b);
        right.shuffle(rng);
        let mut bundles: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (x, y) in left.into_iter().zip(right) {
            *bundles.entry((x, y)).or_default() += 1;
        }
        for ((x, y), c) in bundles {
            let indices = if s.simple { vec![1; c as usize] } else { composition(rng, c, c as usize) };
            for r in indices {
                edges.push(Edge { id: format!("e{}", edges.len() + 1), ends: [x, y] });
                actions.push(EdgeAction::MapTo(f));
                index.push(r);
            }
        }
    }
    for _ in 0..rng.gen_range(0..=s.contracted) {
        let u = rng.gen_range(0..k);
        if fibers[u].len() < 2 {
            continue;
        }
        let mut pick = fibers[u].clone();
        pick.shuffle(rng);
        edges.push(Edge { id: format!("e{}", edges.len() + 1), ends: [pick[0], pick[1]] });
        actions.push(EdgeAction::Contract);
        index.push(0);
    }
    if k == 1 {
        // a one-vertex target needs a connected fiber of contracted edges
        let n = vertices.len();
        for v in 1..n {
            let w = rng.gen_range(0..v);
            if !edges.iter().any(|e| e.ends == [w, v] || e.ends == [v, w]) {
                edges.push(Edge { id: format!("e{}", edges.len() + 1), ends: [w, v] });
                actions.push(EdgeAction::Contract);
                index.push(0);
            }
        }
    }
    let source = WeightedGraph::new(vertices, edges, Vec::new()).ok()?;
    let phi = IndexedMorphism::new(source, target, vmap, actions, index).ok()?;
    let phi = if k == 1 { phi.with_multiplicities(m).ok()? } else { phi };
    Some(phi)
}

/// Local multiplicities recomputed from the indices: the index sum over the
/// edges above one target edge at `v`, or the declared value over an
/// isolated target vertex.
pub fn multiplicities(phi: &IndexedMorphism) -> Vec<i64> {
    let g = phi.source();
    (0..g.vertex_count())
        .map(|v| {
            let u = phi.vertex_map()[v];
            match phi.target().incident_edges(u).first() {
                None => phi.declared_multiplicities().expect("declared for point targets")[v] as i64,
                Some(&f) => g
                    .incident_edges(v)
                    .iter()
                    .filter(|&&e| phi.actions()[e] == EdgeAction::MapTo(f))
                    .map(|&e| phi.indices()[e] as i64)
                    .sum(),
            }
        })
        .collect()
}

/// `K_source − φ*K_target`, computed from scratch.
pub fn ramification_oracle(phi: &IndexedMorphism) -> Vec<i64> {
    let m = multiplicities(phi);
    let ks = canonical_divisor(phi.source());
    let kt = canonical_divisor(phi.target());
    (0..phi.source().vertex_count()).map(|v| ks.coeffs()[v] - m[v] * kt.coeffs()[phi.vertex_map()[v]]).collect()
}

/// `2(m − 1 + w − m·w′) − Σ (r − 1)` over incident edges, contracted edges
/// counting as `r = 0`.
pub fn local_ramification(phi: &IndexedMorphism) -> Vec<i64> {
    let m = multiplicities(phi);
    let g = phi.source();
    (0..g.vertex_count())
        .map(|v| {
            let wt = phi.target().weight(phi.vertex_map()[v]) as i64;
            let defect: i64 = g.incident_edges(v).iter().map(|&e| phi.indices()[e] as i64 - 1).sum();
            2 * (m[v] - 1 + g.weight(v) as i64 - m[v] * wt) - defect
        })
        .collect()
}

/// Everything criterion 7 asks of a harmonic witness: the global identity,
/// agreement with the local formula, and non-negativity.
pub fn check_witness(phi: &IndexedMorphism) -> Result<(), String> {
    let r = phi.ramification_divisor().map_err(|e| e.to_string())?;
    let oracle = ramification_oracle(phi);
    if r.coeffs() != oracle.as_slice() {
        return Err(format!("K − φ*K′ = {oracle:?} but R = {:?}", r.coeffs()));
    }
    let local = local_ramification(phi);
    if local != oracle {
        return Err(format!("local formula {local:?} differs from {oracle:?}"));
    }
    let (harmonic, _) = phi.check_harmonic().map_err(|e| e.to_string())?;
    if !harmonic || !r.is_effective() {
        return Err(format!("witness not harmonic: R = {:?}", r.coeffs()));
    }
    Ok(())
}

/// Weighted Laplacian of a loopless weightless graph, as an integer matrix.
pub fn laplacian(g: &WeightedGraph) -> Vec<Vec<i128>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0i128; n]; n];
    for e in g.edges() {
        let [a, b] = e.ends;
        if a == b {
            continue;
        }
        l[a][a] += 1;
        l[b][b] += 1;
        l[a][b] -= 1;
        l[b][a] -= 1;
    }
    l
}

/// Smith form `U·L·V = S` keeping only the row transform `U`.
pub struct SmithKey {
    u: Vec<Vec<i128>>,
    diag: Vec<i128>,
}

impl SmithKey {
    pub fn new(l: &[Vec<i128>]) -> Self {
        let n = l.len();
        let mut a: Vec<Vec<i128>> = l.to_vec();
        let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        let cols = if n == 0 { 0 } else { a[0].len() };
        let mut diag = Vec::new();
        let mut t = 0;
        while t < n.min(cols) {
            // pivot: smallest non-zero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..cols {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let p = a[t][t];
                let mut dirty = false;
                for i in t + 1..n {
                    let q = a[i][t] / p;
                    if q != 0 {
                        for j in 0..cols {
                            a[i][j] -= q * a[t][j];
                        }
                        for j in 0..n {
                            u[i][j] -= q * u[t][j];
                        }
                    }
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    let q = a[t][j] / p;
                    if q != 0 {
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
                if !dirty {
                    // the pivot must also divide the rest of the block
                    let bad = (t + 1..n).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            for j in 0..cols {
                                a[t][j] += a[i][j];
                            }
                            for j in 0..n {
                                u[t][j] += u[i][j];
                            }
                            continue;
                        }
                    }
                }
                // move the smallest entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..n {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
            }
            diag.push(a[t][t].abs());
            t += 1;
        }
        SmithKey { u, diag }
    }

    /// Product of the non-zero invariant factors.
    pub fn order(&self) -> i128 {
        self.diag.iter().product()
    }

    /// Equal keys exactly when the divisors differ by an element of the
    /// Laplacian lattice.
    pub fn key(&self, d: &[i64]) -> Vec<i128> {
        let y: Vec<i128> = self.u.iter().map(|row| row.iter().zip(d).map(|(a, &b)| a * b as i128).sum()).collect();
        y.iter().enumerate().map(|(i, &x)| if i < self.diag.len() { x.rem_euclid(self.diag[i]) } else { x }).collect()
    }
}

/// Calls `f` on every effective divisor of degree `k` on `n` vertices.
pub fn each_effective(n: usize, k: i64, f: &mut dyn FnMut(&[i64])) {
    fn go(c: &mut Vec<i64>, i: usize, left: i64, f: &mut dyn FnMut(&[i64])) {
        if i + 1 == c.len() {
            c[i] = left;
            f(c);
            c[i] = 0;
            return;
        }
        for x in 0..=left {
            c[i] = x;
            go(c, i + 1, left - x, f);
        }
        c[i] = 0;
    }
    if k < 0 || n == 0 {
        return;
    }
    let mut c = vec![0; n];
    go(&mut c, 0, k, f);
}

/// Rank by brute force over the Smith-form class keys of a loopless
/// weightless graph: `r(D) ≥ k` iff `D − E` has an effective representative
/// for every effective `E` of degree `k`.
pub struct RankOracle {
    n: usize,
    smith: SmithKey,
    effective: BTreeMap<i64, HashSet<Vec<i128>>>,
}

impl RankOracle {
    pub fn new(g: &WeightedGraph) -> Self {
        RankOracle { n: g.vertex_count(), smith: SmithKey::new(&laplacian(g)), effective: BTreeMap::new() }
    }

    pub fn jacobian_order(&self) -> i128 {
        self.smith.order()
    }

    fn effective_keys(&mut self, k: i64) -> &HashSet<Vec<i128>> {
        let (n, smith) = (self.n, &self.smith);
        self.effective.entry(k).or_insert_with(|| {
            let mut s = HashSet::new();
            each_effective(n, k, &mut |e| {
                s.insert(smith.key(e));
            });
            s
        })
    }

    pub fn is_effective_class(&mut self, d: &[i64]) -> bool {
        let deg = d.iter().sum();
        let key = self.smith.key(d);
        self.effective_keys(deg).contains(&key)
    }

    pub fn rank(&mut self, d: &[i64]) -> i64 {
        let deg: i64 = d.iter().sum();
        let mut k = 0;
        loop {
            let mut ok = true;
            let mut probes = Vec::new();
            each_effective(self.n, k, &mut |e| probes.push(d.iter().zip(e).map(|(a, b)| a - b).collect::<Vec<i64>>()));
            if deg - k < 0 {
                ok = false;
            }
            if ok {
                for p in probes {
                    if !self.is_effective_class(&p) {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                return k - 1;
            }
            k += 1;
        }
    }
}
