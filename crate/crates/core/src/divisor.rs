//! Divisors, chip-firing equivalence and Baker–Norine rank on weighted graphs.
//!
//! Everything is computed on the weightless model `Gʷ` of a weighted graph.
//! The vertices of the input graph occupy the first positions of `Gʷ`, so a
//! divisor on `G` is transported by padding with zeros.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};

/// Default cap on the number of classes an enumeration may produce.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("divisor has {got} coefficients but the graph has {expected} vertices")]
    Length { expected: usize, got: usize },
    #[error("operation requires a loopless weightless graph")]
    NotWeightless,
    #[error("class enumeration exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed divisor JSON: {0}")]
    Json(String),
}

/// Integer chip configuration, indexed by the vertex order of its graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Divisor(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// `c·v` on a graph with `n` vertices.
    pub fn point(n: usize, v: usize, c: i64) -> Self {
        let mut d = vec![0; n];
        d[v] = c;
        Divisor(d)
    }

    /// Builds a divisor from `(vertex id, coefficient)` pairs; repeated ids add up.
    pub fn from_ids(g: &WeightedGraph, terms: &[(&str, i64)]) -> Result<Self, DivisorError> {
        let mut d = vec![0; g.vertex_count()];
        for (id, c) in terms {
            let v = g.vertex(id).ok_or_else(|| DivisorError::UnknownVertex(id.to_string()))?;
            d[v] += c;
        }
        Ok(Divisor(d))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Zero-pads to `n` vertices (inclusion into a model with appended vertices).
    pub fn transport(&self, n: usize) -> Divisor {
        let mut d = self.0.clone();
        d.resize(n, 0);
        Divisor(d)
    }

    /// `{vertex id: coefficient}` with zero coefficients omitted.
    pub fn to_map(&self, g: &WeightedGraph) -> BTreeMap<String, i64> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (g.vertex_id(v).to_string(), c))
            .collect()
    }

    /// Human-readable form such as `2v1 + v2`.
    pub fn display(&self, g: &WeightedGraph) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| match c {
                1 => g.vertex_id(v).to_string(),
                -1 => format!("-{}", g.vertex_id(v)),
                _ => format!("{c}{}", g.vertex_id(v)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|a| -a).collect())
    }
}

/// Divisor wire format: `{"graph": <id or inline graph>, "coeffs": {vertexId: int}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<serde_json::Value>,
    pub coeffs: BTreeMap<String, i64>,
}

impl DivisorJson {
    pub fn to_divisor(&self, g: &WeightedGraph) -> Result<Divisor, DivisorError> {
        let mut d = vec![0; g.vertex_count()];
        for (id, &c) in &self.coeffs {
            let v = g.vertex(id).ok_or_else(|| DivisorError::UnknownVertex(id.clone()))?;
            d[v] = c;
        }
        Ok(Divisor(d))
    }

    pub fn from_divisor(g: &WeightedGraph, d: &Divisor) -> Self {
        DivisorJson { graph: None, coeffs: d.to_map(g) }
    }
}

/// A linear-equivalence class, represented by its `q`-reduced divisor on `Gʷ`
/// (`q` is the first vertex).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicardClass {
    pub representative: Divisor,
    pub degree: i64,
}

/// `K = Σ (2w(v) − 2 + val(v)) v`.
pub fn canonical_divisor(g: &WeightedGraph) -> Divisor {
    Divisor(
        (0..g.vertex_count())
            .map(|v| 2 * g.weight(v) as i64 - 2 + g.valency(v) as i64 - g.legs_at(v) as i64)
            .collect(),
    )
}

/// Chip-firing structure of a loopless weightless graph.
#[derive(Debug, Clone)]
pub struct ChipGraph {
    adj: Vec<Vec<(usize, i64)>>,
    degree: Vec<i64>,
}

impl ChipGraph {
    /// Builds the firing structure; loops are ignored since they never move chips.
    pub fn new(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        let mut mult: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n];
        for e in g.edges() {
            let [a, b] = e.ends;
            if a != b {
                *mult[a].entry(b).or_default() += 1;
                *mult[b].entry(a).or_default() += 1;
            }
        }
        let adj: Vec<Vec<(usize, i64)>> = mult.into_iter().map(|m| m.into_iter().collect()).collect();
        let degree = adj.iter().map(|a| a.iter().map(|&(_, m)| m).sum()).collect();
        ChipGraph { adj, degree }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Fires vertex `v` once (negative `times` borrows).
    pub fn fire(&self, d: &mut [i64], v: usize, times: i64) {
        d[v] -= times * self.degree[v];
        for &(u, m) in &self.adj[v] {
            d[u] += times * m;
        }
    }

    /// The unique `q`-reduced divisor linearly equivalent to `d`.
    pub fn reduce(&self, d: &[i64], q: usize) -> Vec<i64> {
        let mut d = d.to_vec();
        self.make_nonnegative_off(&mut d, q);
        let n = self.len();
        let mut burnt = vec![false; n];
        let mut heat = vec![0i64; n];
        let mut queue = VecDeque::new();
        loop {
            burnt.iter_mut().for_each(|b| *b = false);
            heat.iter_mut().for_each(|h| *h = 0);
            burnt[q] = true;
            queue.push_back(q);
            let mut burnt_count = 1;
            while let Some(x) = queue.pop_front() {
                for &(u, m) in &self.adj[x] {
                    if burnt[u] {
                        continue;
                    }
                    heat[u] += m;
                    if heat[u] > d[u] {
                        burnt[u] = true;
                        burnt_count += 1;
                        queue.push_back(u);
                    }
                }
            }
            if burnt_count == n {
                return d;
            }
            // fire the unburnt set as many times as stays legal
            let mut times = i64::MAX;
            for v in 0..n {
                if !burnt[v] && heat[v] > 0 {
                    times = times.min(d[v] / heat[v]);
                }
            }
            debug_assert!(times >= 1 && times < i64::MAX);
            for v in 0..n {
                if burnt[v] {
                    continue;
                }
                for &(u, m) in &self.adj[v] {
                    if burnt[u] {
                        d[v] -= times * m;
                        d[u] += times * m;
                    }
                }
            }
        }
    }

    /// Moves chips outward layer by layer from `q` until every vertex other
    /// than `q` is non-negative.
    fn make_nonnegative_off(&self, d: &mut [i64], q: usize) {
        let n = self.len();
        let mut dist = vec![usize::MAX; n];
        let mut layers: Vec<Vec<usize>> = vec![vec![q]];
        dist[q] = 0;
        let mut queue = VecDeque::from([q]);
        while let Some(x) = queue.pop_front() {
            for &(u, _) in &self.adj[x] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[x] + 1;
                    if layers.len() <= dist[u] {
                        layers.push(Vec::new());
                    }
                    layers[dist[u]].push(u);
                    queue.push_back(u);
                }
            }
        }
        for layer in (1..layers.len()).rev() {
            let mut times = 0;
            for &v in &layers[layer] {
                if d[v] < 0 {
                    let inward: i64 =
                        self.adj[v].iter().filter(|&&(u, _)| dist[u] + 1 == layer).map(|&(_, m)| m).sum();
                    times = times.max((-d[v] + inward - 1) / inward);
                }
            }
            if times == 0 {
                continue;
            }
            // fire the ball of radius layer-1
            for &v in &layers[layer] {
                for &(u, m) in &self.adj[v] {
                    if dist[u] + 1 == layer {
                        d[v] += times * m;
                        d[u] -= times * m;
                    }
                }
            }
        }
    }

    /// Dhar's test: starting a fire at `q` burns every vertex.
    pub fn is_superstable_off(&self, d: &[i64], q: usize) -> bool {
        let n = self.len();
        let mut burnt = vec![false; n];
        let mut heat = vec![0i64; n];
        burnt[q] = true;
        let mut count = 1;
        let mut stack = vec![q];
        while let Some(x) = stack.pop() {
            for &(u, m) in &self.adj[x] {
                if burnt[u] {
                    continue;
                }
                heat[u] += m;
                if heat[u] > d[u] {
                    burnt[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }
}

/// Cached divisor theory of one weighted graph: its weightless model, chip
/// structure and a memo table for rank queries.
#[derive(Debug, Clone)]
pub struct DivisorTheory {
    base_vertices: usize,
    model: WeightedGraph,
    chips: ChipGraph,
    genus: i64,
    memo: HashMap<(Vec<i64>, i64), bool>,
}

impl DivisorTheory {
    pub fn new(g: &WeightedGraph) -> Self {
        let model = g.weightless_model();
        let chips = ChipGraph::new(&model);
        DivisorTheory {
            base_vertices: g.vertex_count(),
            genus: g.genus() as i64,
            model,
            chips,
            memo: HashMap::new(),
        }
    }

    /// The weightless model `Gʷ` on which everything is computed.
    pub fn model(&self) -> &WeightedGraph {
        &self.model
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// Accepts a divisor on the input graph or on `Gʷ`.
    pub fn lift(&self, d: &Divisor) -> Result<Divisor, DivisorError> {
        let n = self.model.vertex_count();
        if d.len() == self.base_vertices || d.len() == n {
            Ok(d.transport(n))
        } else {
            Err(DivisorError::Length { expected: self.base_vertices, got: d.len() })
        }
    }

    pub fn reduced(&self, d: &Divisor) -> Result<Divisor, DivisorError> {
        Ok(Divisor(self.chips.reduce(self.lift(d)?.coeffs(), 0)))
    }

    pub fn is_equivalent(&self, a: &Divisor, b: &Divisor) -> Result<bool, DivisorError> {
        let (a, b) = (self.lift(a)?, self.lift(b)?);
        if a.degree() != b.degree() {
            return Ok(false);
        }
        Ok(self.chips.reduce(a.coeffs(), 0) == self.chips.reduce(b.coeffs(), 0))
    }

    pub fn class_of(&self, d: &Divisor) -> Result<PicardClass, DivisorError> {
        let representative = self.reduced(d)?;
        Ok(PicardClass { degree: representative.degree(), representative })
    }

    /// Whether some effective divisor is equivalent to `d`.
    pub fn is_effective_class(&self, d: &Divisor) -> Result<bool, DivisorError> {
        let d = self.lift(d)?;
        Ok(self.chips.reduce(d.coeffs(), 0)[0] >= 0)
    }

    /// Baker–Norine rank, `−1` when `d` is not equivalent to an effective divisor.
    pub fn rank(&mut self, d: &Divisor) -> Result<i64, DivisorError> {
        let d = self.lift(d)?;
        let deg = d.degree();
        if !self.at_least(d.coeffs(), 0) {
            return Ok(-1);
        }
        // every divisor of degree >= g is equivalent to an effective one
        let mut k = (deg - self.genus).max(0);
        while self.at_least(d.coeffs(), k + 1) {
            k += 1;
        }
        Ok(k)
    }

    /// `rank(d) >= k`.
    pub fn rank_at_least(&mut self, d: &Divisor, k: i64) -> Result<bool, DivisorError> {
        let d = self.lift(d)?;
        Ok(self.at_least(d.coeffs(), k))
    }

    fn at_least(&mut self, d: &[i64], k: i64) -> bool {
        if k < 0 {
            return true;
        }
        let deg: i64 = d.iter().sum();
        if deg - k < 0 {
            return false;
        }
        if deg - k >= self.genus {
            return true;
        }
        let key = self.chips.reduce(d, 0);
        if k == 0 {
            return key[0] >= 0;
        }
        if key[0] < k {
            return false;
        }
        if let Some(&ans) = self.memo.get(&(key.clone(), k)) {
            return ans;
        }
        let n = self.chips.len();
        let mut reduced_at = Vec::with_capacity(n);
        let mut ans = true;
        for v in 0..n {
            let r = if v == 0 { key.clone() } else { self.chips.reduce(&key, v) };
            if r[v] < k {
                ans = false;
                break;
            }
            reduced_at.push(r);
        }
        if ans {
            for (v, mut r) in reduced_at.into_iter().enumerate() {
                r[v] -= 1;
                if !self.at_least(&r, k - 1) {
                    ans = false;
                    break;
                }
            }
        }
        self.memo.insert((key, k), ans);
        ans
    }

    /// Number of spanning trees of `Gʷ`, by the matrix-tree theorem.
    pub fn jacobian_order(&self) -> u128 {
        let n = self.chips.len();
        if n <= 1 {
            return 1;
        }
        let lap = reduced_laplacian(&self.chips);
        bareiss_determinant(lap).unsigned_abs()
    }

    /// Invariant factors of the Jacobian group (entries equal to 1 omitted).
    pub fn jacobian_invariants(&self) -> Vec<i128> {
        if self.chips.len() <= 1 {
            return Vec::new();
        }
        smith_diagonal(reduced_laplacian(&self.chips)).into_iter().filter(|&x| x != 1).collect()
    }

    /// One class per superstable configuration relative to the first vertex.
    pub fn enumerate_classes(&self, degree: i64, cap: usize) -> Result<Vec<PicardClass>, DivisorError> {
        let n = self.chips.len();
        let mut out = Vec::new();
        let mut config = vec![0i64; n];
        self.superstables(1, &mut config, &mut |c| {
            if out.len() >= cap {
                return false;
            }
            let mut rep = c.to_vec();
            rep[0] = degree - c[1..].iter().sum::<i64>();
            out.push(PicardClass { representative: Divisor(rep), degree });
            true
        });
        if out.len() >= cap && self.count_exceeds(cap) {
            return Err(DivisorError::CapExceeded { cap });
        }
        out.sort();
        Ok(out)
    }

    fn count_exceeds(&self, cap: usize) -> bool {
        let mut count = 0usize;
        let mut config = vec![0i64; self.chips.len()];
        self.superstables(1, &mut config, &mut |_| {
            count += 1;
            count <= cap
        });
        count > cap
    }

    /// Depth-first enumeration of superstables; superstability is closed
    /// under decreasing coordinates, so each coordinate grows until failure.
    fn superstables(&self, v: usize, config: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if v == config.len() {
            return emit(config);
        }
        let mut c = 0;
        loop {
            config[v] = c;
            if !self.chips.is_superstable_off(config, 0) {
                break;
            }
            if !self.superstables(v + 1, config, emit) {
                config[v] = 0;
                return false;
            }
            c += 1;
        }
        config[v] = 0;
        true
    }

    /// Classes of degree `d` with rank at least `r`.
    pub fn w_r_d(&mut self, d: i64, r: i64, cap: usize) -> Result<Vec<PicardClass>, DivisorError> {
        let classes = self.enumerate_classes(d, cap)?;
        let mut out = Vec::new();
        for c in classes {
            if self.at_least(c.representative.coeffs(), r) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Classes of effective degree-`d` divisors, sorted by representative.
    pub fn effective_classes(&self, d: usize, cap: usize) -> Result<Vec<PicardClass>, DivisorError> {
        let n = self.chips.len();
        let mut seen = BTreeSet::new();
        let mut current = vec![0i64; n];
        let mut overflow = false;
        for_each_effective(n, d, &mut current, 0, &mut |e| {
            seen.insert(self.chips.reduce(e, 0));
            if seen.len() > cap {
                overflow = true;
                return false;
            }
            true
        });
        if overflow {
            return Err(DivisorError::CapExceeded { cap });
        }
        Ok(seen
            .into_iter()
            .map(|rep| PicardClass { degree: d as i64, representative: Divisor(rep) })
            .collect())
    }

    /// `W^r_d ≠ ∅`, with the lexicographically least reduced representative as witness.
    pub fn gonal_witness(&mut self, d: usize, r: i64, cap: usize) -> Result<Option<Divisor>, DivisorError> {
        for class in self.effective_classes(d, cap)? {
            if self.at_least(class.representative.coeffs(), r) {
                return Ok(Some(class.representative));
            }
        }
        Ok(None)
    }
}

/// Calls `f` on every effective divisor of degree `d` (stops when `f` returns false).
pub fn for_each_effective(
    n: usize,
    d: usize,
    current: &mut Vec<i64>,
    start: usize,
    f: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if d == 0 {
        return f(current);
    }
    for v in start..n {
        current[v] += 1;
        let go = for_each_effective(n, d - 1, current, v, f);
        current[v] -= 1;
        if !go {
            return false;
        }
    }
    true
}

fn reduced_laplacian(chips: &ChipGraph) -> Vec<Vec<i128>> {
    let n = chips.len();
    let mut m = vec![vec![0i128; n - 1]; n - 1];
    for v in 1..n {
        m[v - 1][v - 1] = chips.degree[v] as i128;
        for &(u, k) in &chips.adj[v] {
            if u != 0 {
                m[v - 1][u - 1] -= k as i128;
            }
        }
    }
    m
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Diagonal of the Smith normal form (non-negative, divisibility chain).
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest non-zero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the remaining block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// The unique `q`-reduced divisor equivalent to `d` on a loopless weightless graph.
pub fn reduce(g: &WeightedGraph, d: &Divisor, q: usize) -> Result<Divisor, DivisorError> {
    if g.has_loops() || g.total_weight() > 0 {
        return Err(DivisorError::NotWeightless);
    }
    if q >= g.vertex_count() {
        return Err(DivisorError::UnknownVertex(format!("#{q}")));
    }
    if d.len() != g.vertex_count() {
        return Err(DivisorError::Length { expected: g.vertex_count(), got: d.len() });
    }
    Ok(Divisor(ChipGraph::new(g).reduce(d.coeffs(), q)))
}

pub fn is_equivalent(g: &WeightedGraph, a: &Divisor, b: &Divisor) -> Result<bool, DivisorError> {
    DivisorTheory::new(g).is_equivalent(a, b)
}

pub fn rank(g: &WeightedGraph, d: &Divisor) -> Result<i64, DivisorError> {
    DivisorTheory::new(g).rank(d)
}

pub fn jacobian_order(g: &WeightedGraph) -> u128 {
    DivisorTheory::new(g).jacobian_order()
}

pub fn enumerate_classes(g: &WeightedGraph, d: i64) -> Result<Vec<PicardClass>, DivisorError> {
    DivisorTheory::new(g).enumerate_classes(d, DEFAULT_CLASS_CAP)
}

pub fn w_r_d(g: &WeightedGraph, d: i64, r: i64) -> Result<Vec<PicardClass>, DivisorError> {
    DivisorTheory::new(g).w_r_d(d, r, DEFAULT_CLASS_CAP)
}

/// `W¹_d ≠ ∅`; the witness lives on `Gʷ`.
pub fn is_divisorially_gonal(g: &WeightedGraph, d: usize) -> Result<(bool, Option<Divisor>), DivisorError> {
    let w = DivisorTheory::new(g).gonal_witness(d, 1, DEFAULT_CLASS_CAP)?;
    Ok((w.is_some(), w))
}
