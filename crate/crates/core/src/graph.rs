//! Weighted multigraphs with legs.
//!
//! Edges are stored as pairs of half-edges: half-edge `2 * e + side` sits at
//! `edges[e].ends[side]` and its involution partner is `h ^ 1`. Arbitrary
//! half-edge data (possibly violating the involution axioms) goes through
//! [`GraphParts`] and [`validate`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{reference}` at {location}")]
    UnknownVertex { reference: String, location: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("operation requires a loopless graph (edge `{0}` is a loop)")]
    HasLoops(String),
    #[error("operation requires genus at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("refinement plan assigns 0 to edge `{0}`")]
    ZeroSubdivision(String),
    #[error("refinement plan has {got} entries for {expected} edges")]
    PlanLength { expected: usize, got: usize },
    #[error("contracting the given edges would contract a cycle (edge `{0}`)")]
    ContractsCycle(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A structural defect found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    DuplicateId { id: String },
    UnknownVertex { owner: String, vertex: String },
    UnknownHalfEdge { owner: String, half_edge: String },
    InvolutionFixedPoint { half_edge: String },
    NotAnInvolution { half_edge: String },
    NegativeWeight { vertex: String, weight: i64 },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no vertices"),
            Violation::DuplicateId { id } => write!(f, "duplicate identifier `{id}`"),
            Violation::UnknownVertex { owner, vertex } => {
                write!(f, "`{owner}` refers to unknown vertex `{vertex}`")
            }
            Violation::UnknownHalfEdge { owner, half_edge } => {
                write!(f, "`{owner}` refers to unknown half-edge `{half_edge}`")
            }
            Violation::InvolutionFixedPoint { half_edge } => {
                write!(f, "involution has fixed point `{half_edge}`")
            }
            Violation::NotAnInvolution { half_edge } => {
                write!(f, "involution is not self-inverse at `{half_edge}`")
            }
            Violation::NegativeWeight { vertex, weight } => {
                write!(f, "vertex `{vertex}` has negative weight {weight}")
            }
            Violation::Disconnected { components } => {
                write!(f, "disconnected ({components} components)")
            }
        }
    }
}

/// Unchecked half-edge description of a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphParts {
    /// `(id, weight)`
    pub vertices: Vec<(String, i64)>,
    pub half_edges: Vec<HalfEdgeSpec>,
    /// `(id, vertex id)`
    pub legs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdgeSpec {
    pub id: String,
    pub vertex: String,
    pub twin: String,
}

/// Returns every violated structural invariant; an empty list means the parts
/// describe a valid connected weighted graph.
pub fn validate(parts: &GraphParts) -> Vec<Violation> {
    let mut out = Vec::new();
    if parts.vertices.is_empty() {
        out.push(Violation::Empty);
    }
    let mut ids = HashSet::new();
    let mut vindex = HashMap::new();
    for (i, (id, w)) in parts.vertices.iter().enumerate() {
        if !ids.insert(id.as_str()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
        vindex.entry(id.as_str()).or_insert(i);
        if *w < 0 {
            out.push(Violation::NegativeWeight { vertex: id.clone(), weight: *w });
        }
    }
    let mut hindex = HashMap::new();
    for (i, h) in parts.half_edges.iter().enumerate() {
        if !ids.insert(h.id.as_str()) {
            out.push(Violation::DuplicateId { id: h.id.clone() });
        }
        hindex.entry(h.id.as_str()).or_insert(i);
    }
    for (id, v) in &parts.legs {
        if !ids.insert(id.as_str()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
        if !vindex.contains_key(v.as_str()) {
            out.push(Violation::UnknownVertex { owner: id.clone(), vertex: v.clone() });
        }
    }

    let mut uf = UnionFind::new(parts.vertices.len());
    for h in &parts.half_edges {
        let Some(&hv) = vindex.get(h.vertex.as_str()) else {
            out.push(Violation::UnknownVertex { owner: h.id.clone(), vertex: h.vertex.clone() });
            continue;
        };
        let Some(&t) = hindex.get(h.twin.as_str()) else {
            out.push(Violation::UnknownHalfEdge { owner: h.id.clone(), half_edge: h.twin.clone() });
            continue;
        };
        let twin = &parts.half_edges[t];
        if twin.id == h.id {
            out.push(Violation::InvolutionFixedPoint { half_edge: h.id.clone() });
            continue;
        }
        if twin.twin != h.id {
            out.push(Violation::NotAnInvolution { half_edge: h.id.clone() });
            continue;
        }
        if let Some(&tv) = vindex.get(twin.vertex.as_str()) {
            uf.union(hv, tv);
        }
    }
    if !parts.vertices.is_empty() {
        let components = uf.count();
        if components > 1 {
            out.push(Violation::Disconnected { components });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
}

/// An edge `[h, h̄]`; `ends[0]` carries half-edge `2e`, `ends[1]` carries `2e + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub ends: [usize; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The endpoint opposite to `v` (for a loop, `v` itself).
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub id: String,
    pub vertex: usize,
}

/// A connected weighted multigraph, possibly with loops and legs.
///
/// Values are immutable once built; every transformation returns a new graph
/// with deterministically generated identifiers for new vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
    incidence: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl WeightedGraph {
    /// Builds a graph from index-based parts, checking identifiers and connectivity.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, legs: Vec<Leg>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !seen.insert(v.id.clone()) {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
            index.insert(v.id.clone(), i);
        }
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if !seen.insert(e.id.clone()) {
                return Err(GraphError::DuplicateId(e.id.clone()));
            }
            for (side, &v) in e.ends.iter().enumerate() {
                if v >= vertices.len() {
                    return Err(GraphError::UnknownVertex {
                        reference: format!("#{v}"),
                        location: format!("edge `{}` end {side}", e.id),
                    });
                }
            }
            edge_index.insert(e.id.clone(), i);
        }
        for l in &legs {
            if !seen.insert(l.id.clone()) {
                return Err(GraphError::DuplicateId(l.id.clone()));
            }
            if l.vertex >= vertices.len() {
                return Err(GraphError::UnknownVertex {
                    reference: format!("#{}", l.vertex),
                    location: format!("leg `{}`", l.id),
                });
            }
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.ends[0]].push(i);
            if !e.is_loop() {
                incidence[e.ends[1]].push(i);
            }
        }
        let g = WeightedGraph { vertices, edges, legs, incidence, index, edge_index };
        if g.vertices.is_empty() {
            return Err(GraphError::Invalid(vec![Violation::Empty]));
        }
        let components = g.component_count();
        if components > 1 {
            return Err(GraphError::Invalid(vec![Violation::Disconnected { components }]));
        }
        Ok(g)
    }

    /// Builds a graph from half-edge parts, reporting every violation.
    pub fn from_parts(parts: &GraphParts) -> Result<Self, GraphError> {
        let violations = validate(parts);
        if !violations.is_empty() {
            return Err(GraphError::Invalid(violations));
        }
        let vindex: HashMap<&str, usize> =
            parts.vertices.iter().enumerate().map(|(i, (id, _))| (id.as_str(), i)).collect();
        let hindex: HashMap<&str, usize> =
            parts.half_edges.iter().enumerate().map(|(i, h)| (h.id.as_str(), i)).collect();
        let vertices = parts
            .vertices
            .iter()
            .map(|(id, w)| Vertex { id: id.clone(), weight: *w as u32 })
            .collect();
        let mut done = vec![false; parts.half_edges.len()];
        let mut edges = Vec::new();
        for (i, h) in parts.half_edges.iter().enumerate() {
            if done[i] {
                continue;
            }
            let t = hindex[h.twin.as_str()];
            done[i] = true;
            done[t] = true;
            let twin = &parts.half_edges[t];
            let id = match (h.id.strip_suffix(".0"), twin.id.strip_suffix(".1")) {
                (Some(a), Some(b)) if a == b => a.to_string(),
                _ => format!("{}~{}", h.id, twin.id),
            };
            edges.push(Edge { id, ends: [vindex[h.vertex.as_str()], vindex[twin.vertex.as_str()]] });
        }
        let legs = parts
            .legs
            .iter()
            .map(|(id, v)| Leg { id: id.clone(), vertex: vindex[v.as_str()] })
            .collect();
        WeightedGraph::new(vertices, edges, legs)
    }

    /// Half-edge description; edge `e` becomes half-edges `e.0` and `e.1`.
    pub fn to_parts(&self) -> GraphParts {
        let mut half_edges = Vec::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            let a = format!("{}.0", e.id);
            let b = format!("{}.1", e.id);
            half_edges.push(HalfEdgeSpec {
                id: a.clone(),
                vertex: self.vertices[e.ends[0]].id.clone(),
                twin: b.clone(),
            });
            half_edges.push(HalfEdgeSpec { id: b, vertex: self.vertices[e.ends[1]].id.clone(), twin: a });
        }
        GraphParts {
            vertices: self.vertices.iter().map(|v| (v.id.clone(), v.weight as i64)).collect(),
            half_edges,
            legs: self.legs.iter().map(|l| (l.id.clone(), self.vertices[l.vertex].id.clone())).collect(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.to_parts())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edge(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.vertices[v].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vertices.iter().map(|v| v.weight).collect()
    }

    pub fn total_weight(&self) -> u32 {
        self.vertices.iter().map(|v| v.weight).sum()
    }

    /// Edges incident to `v`; a loop is listed once.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Number of half-edges of the graph.
    pub fn half_edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Endpoint vertex of half-edge `h`.
    pub fn endpoint(&self, h: usize) -> usize {
        self.edges[h / 2].ends[h % 2]
    }

    /// The fixed-point-free involution on half-edges.
    pub fn involution(&self, h: usize) -> usize {
        h ^ 1
    }

    /// First Betti number plus total weight; legs do not contribute.
    pub fn genus(&self) -> u32 {
        let b1 = self.edges.len() + 1 - self.vertices.len();
        b1 as u32 + self.total_weight()
    }

    /// Incident half-edges plus incident legs (a loop counts twice).
    pub fn valency(&self, v: usize) -> u32 {
        let h: usize = self.incidence[v].iter().map(|&e| if self.edges[e].is_loop() { 2 } else { 1 }).sum();
        (h + self.legs_at(v)) as u32
    }

    pub fn valency_of(&self, id: &str) -> Result<u32, GraphError> {
        let v = self.vertex(id).ok_or_else(|| GraphError::UnknownVertex {
            reference: id.to_string(),
            location: "valency argument".into(),
        })?;
        Ok(self.valency(v))
    }

    pub fn legs_at(&self, v: usize) -> usize {
        self.legs.iter().filter(|l| l.vertex == v).count()
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.incidence[v].iter().filter(|&&e| self.edges[e].is_loop()).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    fn first_loop(&self) -> Option<&Edge> {
        self.edges.iter().find(|e| e.is_loop())
    }

    /// Number of edges joining `a` and `b` (loops at `a` when `a == b`).
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.incidence[a]
            .iter()
            .filter(|&&e| {
                let ends = self.edges[e].ends;
                (ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a)
            })
            .count()
    }

    fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.ends[0], e.ends[1]);
        }
        uf.count()
    }

    /// Connected genus-zero graph (no weights, no cycles).
    pub fn is_tree(&self) -> bool {
        self.genus() == 0
    }

    fn taken_ids(&self) -> HashSet<String> {
        self.vertices
            .iter()
            .map(|v| v.id.clone())
            .chain(self.edges.iter().map(|e| e.id.clone()))
            .chain(self.legs.iter().map(|l| l.id.clone()))
            .collect()
    }

    /// Inserts a weight-zero vertex in the interior of every loop.
    pub fn loopless_model(&self) -> WeightedGraph {
        if !self.has_loops() {
            return self.clone();
        }
        let mut taken = self.taken_ids();
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::with_capacity(self.edges.len() + 4);
        for e in &self.edges {
            if !e.is_loop() {
                edges.push(e.clone());
                continue;
            }
            let v = e.ends[0];
            let mid = vertices.len();
            vertices.push(Vertex { id: fresh(&mut taken, &format!("{}~mid", e.id)), weight: 0 });
            edges.push(Edge { id: fresh(&mut taken, &format!("{}~a", e.id)), ends: [v, mid] });
            edges.push(Edge { id: fresh(&mut taken, &format!("{}~b", e.id)), ends: [mid, v] });
        }
        WeightedGraph::new(vertices, edges, self.legs.clone()).expect("loop subdivision keeps graph valid")
    }

    /// Trades each unit of weight for a subdivided loop; the result is loopless
    /// and weightless. Original vertices keep their positions, so divisors on
    /// `self` transport by zero padding.
    pub fn weightless_model(&self) -> WeightedGraph {
        let base = self.loopless_model();
        if base.total_weight() == 0 {
            return base;
        }
        let mut taken = base.taken_ids();
        let mut vertices: Vec<Vertex> =
            base.vertices.iter().map(|v| Vertex { id: v.id.clone(), weight: 0 }).collect();
        let mut edges = base.edges.clone();
        for (v, vert) in base.vertices.iter().enumerate() {
            for i in 1..=vert.weight {
                let tag = format!("{}~w{}", vert.id, i);
                let u = vertices.len();
                vertices.push(Vertex { id: fresh(&mut taken, &tag), weight: 0 });
                edges.push(Edge { id: fresh(&mut taken, &format!("{tag}a")), ends: [v, u] });
                edges.push(Edge { id: fresh(&mut taken, &format!("{tag}b")), ends: [u, v] });
            }
        }
        WeightedGraph::new(vertices, edges, base.legs.clone()).expect("weight trading keeps graph valid")
    }

    /// Replaces edge `e` by a path of `plan[e]` edges through `plan[e] - 1` new
    /// weight-zero vertices.
    pub fn refine(&self, plan: &[u32]) -> Result<WeightedGraph, GraphError> {
        if plan.len() != self.edges.len() {
            return Err(GraphError::PlanLength { expected: self.edges.len(), got: plan.len() });
        }
        if let Some(i) = plan.iter().position(|&k| k == 0) {
            return Err(GraphError::ZeroSubdivision(self.edges[i].id.clone()));
        }
        let mut taken = self.taken_ids();
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::new();
        for (e, &k) in self.edges.iter().zip(plan) {
            if k == 1 {
                edges.push(e.clone());
                continue;
            }
            let mut prev = e.ends[0];
            for i in 1..k {
                let nv = vertices.len();
                vertices.push(Vertex { id: fresh(&mut taken, &format!("{}~s{}", e.id, i)), weight: 0 });
                edges.push(Edge { id: fresh(&mut taken, &format!("{}~{}", e.id, i)), ends: [prev, nv] });
                prev = nv;
            }
            edges.push(Edge { id: fresh(&mut taken, &format!("{}~{}", e.id, k)), ends: [prev, e.ends[1]] });
        }
        WeightedGraph::new(vertices, edges, self.legs.clone())
    }

    /// [`refine`](Self::refine) keyed by edge id; unlisted edges keep plan 1.
    pub fn refine_by_id(&self, plan: &BTreeMap<String, u32>) -> Result<WeightedGraph, GraphError> {
        let mut dense = vec![1; self.edges.len()];
        for (id, &k) in plan {
            let e = self.edge(id).ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
            dense[e] = k;
        }
        self.refine(&dense)
    }

    /// Repeatedly smooths out weight-zero vertices of valency two that carry no
    /// legs and no loop. The merged edge keeps the identifier of the lower
    /// indexed of the two edges it replaces.
    pub fn remove_two_valent(&self) -> WeightedGraph {
        let mut state = EditableGraph::from(self);
        while let Some(v) = state.find(|s, v| s.is_smoothable(v)) {
            state.smooth(v);
        }
        state.finish(self)
    }

    /// Removes weight-zero leaves and weight-zero two-valent vertices until the
    /// graph is stable. Requires genus at least two.
    pub fn stabilize(&self) -> Result<WeightedGraph, GraphError> {
        let genus = self.genus();
        if genus < 2 {
            return Err(GraphError::GenusTooSmall(genus));
        }
        let mut state = EditableGraph::from(self);
        loop {
            if let Some(v) = state.find(|s, v| s.is_removable_leaf(v)) {
                state.remove_leaf(v);
            } else if let Some(v) = state.find(|s, v| s.is_smoothable(v)) {
                state.smooth(v);
            } else {
                break;
            }
        }
        Ok(state.finish(self))
    }

    /// Weighted contraction of a forest of non-loop edges: each merged vertex
    /// keeps the identifier of its lowest-indexed member and the sum of weights.
    pub fn contract_edges(&self, contract: &[usize]) -> Result<WeightedGraph, GraphError> {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut dropped = vec![false; self.edges.len()];
        for &e in contract {
            let edge = self.edges.get(e).ok_or_else(|| GraphError::UnknownEdge(format!("#{e}")))?;
            if dropped[e] {
                continue;
            }
            if !uf.union(edge.ends[0], edge.ends[1]) {
                return Err(GraphError::ContractsCycle(edge.id.clone()));
            }
            dropped[e] = true;
        }
        let mut rep_index = vec![usize::MAX; self.vertices.len()];
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut new_index = vec![0; self.vertices.len()];
        for v in 0..self.vertices.len() {
            let r = uf.find(v);
            if rep_index[r] == usize::MAX {
                rep_index[r] = vertices.len();
                vertices.push(Vertex { id: self.vertices[v].id.clone(), weight: 0 });
            }
            new_index[v] = rep_index[r];
            vertices[rep_index[r]].weight += self.vertices[v].weight;
        }
        let edges = self
            .edges
            .iter()
            .zip(&dropped)
            .filter(|(_, &d)| !d)
            .map(|(e, _)| Edge { id: e.id.clone(), ends: [new_index[e.ends[0]], new_index[e.ends[1]]] })
            .collect();
        let legs = self.legs.iter().map(|l| Leg { id: l.id.clone(), vertex: new_index[l.vertex] }).collect();
        WeightedGraph::new(vertices, edges, legs)
    }

    /// Cut edges, in increasing edge order.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut time = 0;
        // iterative DFS: (vertex, edge used to enter, next incidence position)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
                if *pos < self.incidence[v].len() {
                    let e = self.incidence[v][*pos];
                    *pos += 1;
                    if e == via || self.edges[e].is_loop() {
                        continue;
                    }
                    let u = self.edges[e].other(v);
                    if disc[u] == usize::MAX {
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        stack.push((u, e, 0));
                    } else {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_2_edge_connected(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Bridges incident to each vertex.
    pub fn bridge_counts(&self) -> Vec<u32> {
        let mut counts = vec![0; self.vertices.len()];
        for e in self.bridges() {
            for v in self.edges[e].ends {
                counts[v] += 1;
            }
        }
        counts
    }

    /// Contracts every bridge (weights add). Requires a loopless graph.
    pub fn contract_bridges(&self) -> Result<WeightedGraph, GraphError> {
        if let Some(e) = self.first_loop() {
            return Err(GraphError::HasLoops(e.id.clone()));
        }
        self.contract_edges(&self.bridges())
    }

    /// Every vertex has `2w(v) − 2 + val(v) > 0`: weight-zero vertices are at
    /// least trivalent and positive-weight vertices are not isolated (unless
    /// the weight is at least 2). This is exactly what stabilization produces.
    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| 2 * self.weight(v) + self.valency(v) >= 3)
    }

    /// Every vertex has `2w(v) − 2 + val(v) >= 0`.
    pub fn is_semistable(&self) -> bool {
        (0..self.vertices.len()).all(|v| 2 * self.weight(v) + self.valency(v) >= 2)
    }

    /// Copy without legs.
    pub fn without_legs(&self) -> WeightedGraph {
        if self.legs.is_empty() {
            return self.clone();
        }
        WeightedGraph::new(self.vertices.clone(), self.edges.clone(), Vec::new()).expect("dropping legs")
    }

    /// Reorders vertices by `order` (a permutation of vertex indices); edges and
    /// legs keep their order.
    pub fn permute_vertices(&self, order: &[usize]) -> WeightedGraph {
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let vertices = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: e.id.clone(), ends: [pos[e.ends[0]], pos[e.ends[1]]] })
            .collect();
        let legs = self.legs.iter().map(|l| Leg { id: l.id.clone(), vertex: pos[l.vertex] }).collect();
        WeightedGraph::new(vertices, edges, legs).expect("permutation keeps graph valid")
    }

    /// Symmetric matrix of edge multiplicities (loops on the diagonal).
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for e in &self.edges {
            let [a, b] = e.ends;
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    pub fn from_json_str(s: &str) -> Result<WeightedGraph, GraphError> {
        let doc: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        WeightedGraph::try_from(doc)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serializes")
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json_string())
    }
}

/// Wire format: `{"vertices":[{"id","weight"}],"edges":[{"id","ends"}],"legs":[{"id","vertex"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub legs: Vec<LegJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegJson {
    pub id: String,
    pub vertex: String,
}

impl GraphJson {
    /// Unchecked half-edge form, so that [`validate`] can list every defect.
    pub fn to_parts(&self) -> GraphParts {
        let mut half_edges = Vec::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            let a = format!("{}.0", e.id);
            let b = format!("{}.1", e.id);
            half_edges.push(HalfEdgeSpec { id: a.clone(), vertex: e.ends[0].clone(), twin: b.clone() });
            half_edges.push(HalfEdgeSpec { id: b, vertex: e.ends[1].clone(), twin: a });
        }
        GraphParts {
            vertices: self.vertices.iter().map(|v| (v.id.clone(), v.weight)).collect(),
            half_edges,
            legs: self.legs.iter().map(|l| (l.id.clone(), l.vertex.clone())).collect(),
        }
    }
}

impl From<&WeightedGraph> for GraphJson {
    fn from(g: &WeightedGraph) -> Self {
        GraphJson {
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexJson { id: v.id.clone(), weight: v.weight as i64 })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    ends: [g.vertices[e.ends[0]].id.clone(), g.vertices[e.ends[1]].id.clone()],
                })
                .collect(),
            legs: g
                .legs
                .iter()
                .map(|l| LegJson { id: l.id.clone(), vertex: g.vertices[l.vertex].id.clone() })
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for WeightedGraph {
    type Error = GraphError;

    fn try_from(doc: GraphJson) -> Result<Self, GraphError> {
        let mut index = HashMap::new();
        let mut negative = Vec::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
            if v.weight < 0 {
                negative.push(Violation::NegativeWeight { vertex: v.id.clone(), weight: v.weight });
            }
        }
        if !negative.is_empty() {
            return Err(GraphError::Invalid(negative));
        }
        let lookup = |id: &str, location: String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex { reference: id.to_string(), location })
        };
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (i, e) in doc.edges.iter().enumerate() {
            let a = lookup(&e.ends[0], format!("edges[{i}].ends[0]"))?;
            let b = lookup(&e.ends[1], format!("edges[{i}].ends[1]"))?;
            edges.push(Edge { id: e.id.clone(), ends: [a, b] });
        }
        let mut legs = Vec::with_capacity(doc.legs.len());
        for (i, l) in doc.legs.iter().enumerate() {
            legs.push(Leg { id: l.id.clone(), vertex: lookup(&l.vertex, format!("legs[{i}].vertex"))? });
        }
        let vertices =
            doc.vertices.iter().map(|v| Vertex { id: v.id.clone(), weight: v.weight as u32 }).collect();
        WeightedGraph::new(vertices, edges, legs)
    }
}

/// Incremental construction by identifier.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String, String)>,
    legs: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: &str, weight: u32) -> Self {
        self.vertices.push(Vertex { id: id.to_string(), weight });
        self
    }

    pub fn edge(mut self, id: &str, a: &str, b: &str) -> Self {
        self.edges.push((id.to_string(), a.to_string(), b.to_string()));
        self
    }

    /// Adds `count` parallel edges `{prefix}1..={prefix}{count}`.
    pub fn parallel(mut self, prefix: &str, a: &str, b: &str, count: usize) -> Self {
        for i in 1..=count {
            self.edges.push((format!("{prefix}{i}"), a.to_string(), b.to_string()));
        }
        self
    }

    pub fn leg(mut self, id: &str, v: &str) -> Self {
        self.legs.push((id.to_string(), v.to_string()));
        self
    }

    pub fn build(self) -> Result<WeightedGraph, GraphError> {
        let doc = GraphJson {
            vertices: self
                .vertices
                .into_iter()
                .map(|v| VertexJson { id: v.id, weight: v.weight as i64 })
                .collect(),
            edges: self.edges.into_iter().map(|(id, a, b)| EdgeJson { id, ends: [a, b] }).collect(),
            legs: self.legs.into_iter().map(|(id, vertex)| LegJson { id, vertex }).collect(),
        };
        WeightedGraph::try_from(doc)
    }
}

/// Exact weight- and leg-respecting multigraph isomorphism test.
pub fn are_isomorphic(g1: &WeightedGraph, g2: &WeightedGraph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// A vertex bijection `g1 -> g2` preserving weights, legs and edge multiplicities.
pub fn find_isomorphism(g1: &WeightedGraph, g2: &WeightedGraph) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() || g1.legs.len() != g2.legs.len() {
        return None;
    }
    let m1 = g1.multiplicity_matrix();
    let m2 = g2.multiplicity_matrix();
    let inv1: Vec<_> = (0..n).map(|v| vertex_invariant(g1, &m1, v)).collect();
    let inv2: Vec<_> = (0..n).map(|v| vertex_invariant(g2, &m2, v)).collect();
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    // map rarest invariant classes first, then by adjacency to mapped vertices
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (s1.iter().filter(|x| **x == inv1[v]).count(), v));
    let mut placed = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    while seq.len() < n {
        let next = order
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (seq.iter().filter(|&&u: &&usize| m1[u][v] > 0).count(), usize::MAX - v))
            .unwrap();
        placed[next] = true;
        seq.push(next);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_extend(&seq, 0, &m1, &m2, &inv1, &inv2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

type VertexInvariant = (u32, usize, usize, usize, Vec<usize>);

fn vertex_invariant(g: &WeightedGraph, m: &[Vec<usize>], v: usize) -> VertexInvariant {
    let mut nbr: Vec<usize> = (0..m.len()).filter(|&u| u != v && m[v][u] > 0).map(|u| m[v][u]).collect();
    nbr.sort_unstable();
    (g.weight(v), g.legs_at(v), m[v][v], g.valency(v) as usize, nbr)
}

#[allow(clippy::too_many_arguments)]
fn iso_extend(
    seq: &[usize],
    depth: usize,
    m1: &[Vec<usize>],
    m2: &[Vec<usize>],
    inv1: &[VertexInvariant],
    inv2: &[VertexInvariant],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == seq.len() {
        return true;
    }
    let v = seq[depth];
    for c in 0..m2.len() {
        if used[c] || inv1[v] != inv2[c] {
            continue;
        }
        if seq[..depth].iter().any(|&u| m1[u][v] != m2[map[u]][c]) {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if iso_extend(seq, depth + 1, m1, m2, inv1, inv2, map, used) {
            return true;
        }
        used[c] = false;
    }
    map[v] = usize::MAX;
    false
}

/// Picks `base`, or `base` followed by primes, whichever is unused.
pub(crate) fn fresh(taken: &mut HashSet<String>, base: &str) -> String {
    let mut id = base.to_string();
    while taken.contains(&id) {
        id.push('\'');
    }
    taken.insert(id.clone());
    id
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.components -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.components
    }
}

/// Mutable working copy used by the vertex-removal transformations.
struct EditableGraph {
    alive_v: Vec<bool>,
    weights: Vec<u32>,
    legs: Vec<usize>,
    edges: Vec<Option<(String, [usize; 2])>>,
}

impl From<&WeightedGraph> for EditableGraph {
    fn from(g: &WeightedGraph) -> Self {
        let mut legs = vec![0; g.vertex_count()];
        for l in &g.legs {
            legs[l.vertex] += 1;
        }
        EditableGraph {
            alive_v: vec![true; g.vertex_count()],
            weights: g.weights(),
            legs,
            edges: g.edges.iter().map(|e| Some((e.id.clone(), e.ends))).collect(),
        }
    }
}

impl EditableGraph {
    fn incident(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().filter(|(_, ends)| ends.contains(&v)).map(|_| i))
            .collect()
    }

    fn edge_valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .flatten()
            .map(|(_, ends)| ends.iter().filter(|&&x| x == v).count())
            .sum()
    }

    fn find(&self, pred: impl Fn(&Self, usize) -> bool) -> Option<usize> {
        (0..self.alive_v.len()).find(|&v| self.alive_v[v] && pred(self, v))
    }

    fn is_removable_leaf(&self, v: usize) -> bool {
        self.weights[v] == 0 && self.legs[v] == 0 && self.edge_valency(v) == 1
    }

    fn is_smoothable(&self, v: usize) -> bool {
        if self.weights[v] != 0 || self.legs[v] != 0 || self.edge_valency(v) != 2 {
            return false;
        }
        let inc = self.incident(v);
        inc.len() == 2
    }

    fn remove_leaf(&mut self, v: usize) {
        let inc = self.incident(v);
        for e in inc {
            self.edges[e] = None;
        }
        self.alive_v[v] = false;
    }

    fn smooth(&mut self, v: usize) {
        let inc = self.incident(v);
        let (e1, e2) = (inc[0], inc[1]);
        let (id1, ends1) = self.edges[e1].clone().unwrap();
        let (_, ends2) = self.edges[e2].clone().unwrap();
        let a = if ends1[0] == v { ends1[1] } else { ends1[0] };
        let b = if ends2[0] == v { ends2[1] } else { ends2[0] };
        self.edges[e1] = Some((id1, [a, b]));
        self.edges[e2] = None;
        self.alive_v[v] = false;
    }

    fn finish(self, original: &WeightedGraph) -> WeightedGraph {
        let mut new_index = vec![usize::MAX; self.alive_v.len()];
        let mut vertices = Vec::new();
        for (v, &alive) in self.alive_v.iter().enumerate() {
            if alive {
                new_index[v] = vertices.len();
                vertices.push(Vertex { id: original.vertices[v].id.clone(), weight: self.weights[v] });
            }
        }
        let edges = self
            .edges
            .into_iter()
            .flatten()
            .map(|(id, [a, b])| Edge { id, ends: [new_index[a], new_index[b]] })
            .collect();
        let legs = original
            .legs
            .iter()
            .map(|l| Leg { id: l.id.clone(), vertex: new_index[l.vertex] })
            .collect();
        WeightedGraph::new(vertices, edges, legs).expect("vertex removal keeps graph valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(n: usize) -> WeightedGraph {
        fixtures::banana(n)
    }

    #[test]
    fn banana_is_valid() {
        assert!(b(2).validate().is_empty());
    }

    #[test]
    fn fixed_point_involution_is_reported() {
        let parts = GraphParts {
            vertices: vec![("v".into(), 0)],
            half_edges: vec![HalfEdgeSpec { id: "h".into(), vertex: "v".into(), twin: "h".into() }],
            legs: vec![],
        };
        let v = validate(&parts);
        assert_eq!(v, vec![Violation::InvolutionFixedPoint { half_edge: "h".into() }]);
        assert_eq!(v[0].to_string(), "involution has fixed point `h`");
        assert!(WeightedGraph::from_parts(&parts).is_err());
    }

    #[test]
    fn two_triangles_are_disconnected() {
        let mut parts = GraphParts::default();
        for t in 0..2 {
            for i in 0..3 {
                parts.vertices.push((format!("t{t}v{i}"), 0));
            }
            for i in 0..3 {
                let a = format!("t{t}v{i}");
                let b = format!("t{t}v{}", (i + 1) % 3);
                let e = format!("t{t}e{i}");
                parts.half_edges.push(HalfEdgeSpec { id: format!("{e}.0"), vertex: a, twin: format!("{e}.1") });
                parts.half_edges.push(HalfEdgeSpec { id: format!("{e}.1"), vertex: b, twin: format!("{e}.0") });
            }
        }
        assert_eq!(validate(&parts), vec![Violation::Disconnected { components: 2 }]);
    }

    #[test]
    fn negative_weight_and_bad_twin() {
        let parts = GraphParts {
            vertices: vec![("a".into(), -1), ("b".into(), 0)],
            half_edges: vec![
                HalfEdgeSpec { id: "x".into(), vertex: "a".into(), twin: "y".into() },
                HalfEdgeSpec { id: "y".into(), vertex: "b".into(), twin: "z".into() },
                HalfEdgeSpec { id: "z".into(), vertex: "b".into(), twin: "x".into() },
            ],
            legs: vec![],
        };
        let v = validate(&parts);
        assert!(v.contains(&Violation::NegativeWeight { vertex: "a".into(), weight: -1 }));
        assert!(v.iter().any(|x| matches!(x, Violation::NotAnInvolution { .. })));
    }

    #[test]
    fn parts_round_trip() {
        let g = fixtures::pdx();
        let back = WeightedGraph::from_parts(&g.to_parts()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn genus_values() {
        assert_eq!(b(2).genus(), 1);
        assert_eq!(fixtures::banana_weighted(2, 0, 1).genus(), 2);
        assert_eq!(fixtures::pdx().genus(), 5);
    }

    #[test]
    fn valency_counts() {
        assert_eq!(b(3).valency(0), 3);
        let one_loop = GraphBuilder::new().vertex("v", 0).edge("l", "v", "v").build().unwrap();
        assert_eq!(one_loop.valency(0), 2);
        let legged = GraphBuilder::new()
            .vertex("v", 0)
            .vertex("u", 0)
            .edge("e", "v", "u")
            .leg("x", "v")
            .leg("y", "v")
            .build()
            .unwrap();
        assert_eq!(legged.valency_of("v").unwrap(), 3);
        assert!(legged.valency_of("nope").is_err());
    }

    #[test]
    fn loopless_model_cases() {
        assert_eq!(b(3).loopless_model(), b(3));
        let one_loop = GraphBuilder::new().vertex("v", 0).edge("l", "v", "v").build().unwrap();
        let m = one_loop.loopless_model();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.multiplicity(0, 1), 2);
        let two_loops =
            GraphBuilder::new().vertex("v", 0).edge("l1", "v", "v").edge("l2", "v", "v").build().unwrap();
        assert_eq!(two_loops.genus(), 2);
        assert_eq!(two_loops.loopless_model().genus(), 2);
        assert!(!two_loops.loopless_model().has_loops());
    }

    #[test]
    fn weightless_model_of_weighted_banana() {
        assert_eq!(b(2).weightless_model(), b(2));
        let g = fixtures::banana_weighted(2, 0, 1);
        let gw = g.weightless_model();
        let expected = GraphBuilder::new()
            .vertex("v1", 0)
            .vertex("v2", 0)
            .vertex("u", 0)
            .parallel("e", "v1", "v2", 2)
            .parallel("f", "v2", "u", 2)
            .build()
            .unwrap();
        assert!(are_isomorphic(&gw, &expected));
        let heavy = fixtures::banana_weighted(2, 2, 0);
        assert_eq!(heavy.genus(), 3);
        assert_eq!(heavy.weightless_model().genus(), 3);
        assert_eq!(heavy.weightless_model().total_weight(), 0);
    }

    #[test]
    fn refine_cases() {
        let g = b(3);
        assert_eq!(g.refine(&[1, 1, 1]).unwrap(), g);
        let single = GraphBuilder::new().vertex("a", 0).vertex("b", 0).edge("e", "a", "b").build().unwrap();
        let r = single.refine(&[3]).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (4, 3));
        assert_eq!(g.refine(&[1, 0, 1]), Err(GraphError::ZeroSubdivision("e2".into())));
        let rs = g.refine(&[2, 3, 1]).unwrap().stabilize().unwrap();
        assert!(are_isomorphic(&rs, &g));
    }

    #[test]
    fn stabilize_cases() {
        let theta = b(3);
        assert_eq!(theta.stabilize().unwrap(), theta);
        let refined = theta.refine(&[2, 1, 1]).unwrap();
        assert!(are_isomorphic(&refined.stabilize().unwrap(), &theta));
        let with_tail = GraphBuilder::new()
            .vertex("v1", 0)
            .vertex("v2", 0)
            .vertex("t1", 0)
            .vertex("t2", 0)
            .vertex("t3", 0)
            .parallel("e", "v1", "v2", 3)
            .edge("x1", "v1", "t1")
            .edge("x2", "t1", "t2")
            .edge("x3", "t2", "t3")
            .build()
            .unwrap();
        assert!(are_isomorphic(&with_tail.stabilize().unwrap(), &theta));
        assert_eq!(b(2).stabilize(), Err(GraphError::GenusTooSmall(1)));
    }

    #[test]
    fn stabilize_keeps_legged_vertices() {
        let g = GraphBuilder::new()
            .vertex("v1", 0)
            .vertex("v2", 0)
            .vertex("t", 0)
            .parallel("e", "v1", "v2", 3)
            .edge("x", "v1", "t")
            .leg("l", "t")
            .build()
            .unwrap();
        let s = g.stabilize().unwrap();
        assert_eq!(s.vertex_count(), 3);
    }

    #[test]
    fn contract_bridges_cases() {
        assert_eq!(b(3).contract_bridges().unwrap(), b(3));
        let joined = GraphBuilder::new()
            .vertex("a1", 0)
            .vertex("a2", 0)
            .vertex("b1", 0)
            .vertex("b2", 0)
            .parallel("e", "a1", "a2", 2)
            .parallel("f", "b1", "b2", 2)
            .edge("bridge", "a2", "b1")
            .build()
            .unwrap();
        assert_eq!(joined.bridges(), vec![4]);
        let c = joined.contract_bridges().unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (3, 4));
        assert!(c.is_2_edge_connected());
        let s3 = fixtures::spider_s3();
        assert_eq!(s3.bridges().len(), 3);
        let c = s3.contract_bridges().unwrap();
        assert_eq!((c.vertex_count(), c.edge_count(), c.weight(0)), (1, 0, 3));
        let looped = GraphBuilder::new().vertex("v", 0).edge("l", "v", "v").build().unwrap();
        assert_eq!(looped.contract_bridges(), Err(GraphError::HasLoops("l".into())));
    }

    #[test]
    fn stability_predicates() {
        assert!(b(3).is_stable());
        assert!(b(4).is_2_edge_connected());
        let s3 = fixtures::spider_s3();
        assert!(s3.is_stable());
        let lone = GraphBuilder::new().vertex("v", 2).build().unwrap();
        assert!(lone.is_stable());
        let two_valent = GraphBuilder::new().vertex("v", 1).vertex("u", 0).edge("a", "v", "u").edge("b", "v", "u").build().unwrap();
        assert!(!two_valent.is_stable());
        assert!(two_valent.is_semistable());
        assert!(fixtures::spider_s3_prime().is_stable());
        let path = GraphBuilder::new().vertex("a", 0).vertex("b", 0).edge("e", "a", "b").build().unwrap();
        assert!(!path.is_semistable());
        assert!(!path.is_stable());
    }

    #[test]
    fn isomorphism_cases() {
        assert!(are_isomorphic(&fixtures::pdx(), &fixtures::pdx()));
        assert!(!are_isomorphic(&b(2), &b(3)));
        assert!(are_isomorphic(&fixtures::banana_weighted(2, 0, 1), &fixtures::banana_weighted(2, 1, 0)));
        assert!(!are_isomorphic(&fixtures::banana_weighted(2, 0, 1), &fixtures::banana_weighted(2, 0, 2)));
        assert!(!are_isomorphic(&fixtures::pdx(), &fixtures::dvx()));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let g = fixtures::dvx();
        let s = g.to_json_string();
        assert_eq!(WeightedGraph::from_json_str(&s).unwrap(), g);
        assert!(s.starts_with(r#"{"vertices":[{"id":"v1","weight":0}"#));
        let bad = r#"{"vertices":[{"id":"a","weight":0}],"edges":[{"id":"e","ends":["a","zz"]}]}"#;
        match WeightedGraph::from_json_str(bad) {
            Err(GraphError::UnknownVertex { reference, location }) => {
                assert_eq!(reference, "zz");
                assert_eq!(location, "edges[0].ends[1]");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(WeightedGraph::from_json_str("{\"vertices\": ["), Err(GraphError::Json(_))));
    }

    #[test]
    fn remove_two_valent_on_cycle_pair() {
        // the 2-cycle collapses to a single vertex with a loop
        let g = b(2);
        let r = g.remove_two_valent();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.genus(), 1);
    }
}
