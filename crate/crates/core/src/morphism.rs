//! Indexed morphisms between loopless weighted graphs.
//!
//! Every source edge is either contracted to a vertex (index 0) or sent to a
//! target edge with a positive index. Pseudo-harmonicity, harmonicity, the
//! pull-back of divisors and the ramification divisor are all computed from
//! that explicit edge data.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{canonical_divisor, Divisor};
use crate::graph::{fresh, Edge, GraphError, GraphJson, Vertex, WeightedGraph};
use crate::hurwitz::PartitionSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("{side} graph has a loop `{edge}`")]
    HasLoops { side: &'static str, edge: String },
    #[error("{0} graph carries legs")]
    HasLegs(&'static str),
    #[error("vertex map has {got} entries for {expected} source vertices")]
    VertexMapLength { expected: usize, got: usize },
    #[error("edge data has {got} entries for {expected} source edges")]
    EdgeDataLength { expected: usize, got: usize },
    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },
    #[error("edge `{edge}` has index {index}, which does not match its action")]
    IndexMismatch { edge: String, index: u32 },
    #[error("edge `{edge}` is sent to `{target}` but its endpoints are not")]
    EndpointMismatch { edge: String, target: String },
    #[error("edge `{edge}` is contracted but its endpoints have different images")]
    ContractionMismatch { edge: String },
    #[error(
        "not pseudo-harmonic at `{vertex}`: target edges `{first}` and `{second}` collect index sums {first_sum} and {second_sum}"
    )]
    NotPseudoHarmonic { vertex: String, first: String, second: String, first_sum: u32, second_sum: u32 },
    #[error("vertex `{0}` maps to a target vertex without edges and has no declared multiplicity")]
    MissingMultiplicity(String),
    #[error("degree is not well defined: fiber sums {0:?}")]
    DegreeMismatch(Vec<u32>),
    #[error("vertex `{0}` has multiplicity zero")]
    Degenerate(String),
    #[error("target is not a tree")]
    TargetNotTree,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed morphism JSON: {0}")]
    Json(String),
}

/// What an indexed morphism does with a source edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeAction {
    Contract,
    MapTo(usize),
}

/// An indexed morphism `φ : (G, w) → (G', w')` of loopless graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedMorphism {
    source: WeightedGraph,
    target: WeightedGraph,
    vertex_map: Vec<usize>,
    actions: Vec<EdgeAction>,
    index: Vec<u32>,
    /// Multiplicities for vertices whose image has no incident target edge
    /// (only possible when the target is a single vertex).
    declared: Option<Vec<u32>>,
}

/// Result of a successful pseudo-harmonicity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicCertificate {
    pub multiplicity: Vec<u32>,
    pub degree: u32,
    pub non_degenerate: bool,
    pub ramification: Divisor,
}

impl IndexedMorphism {
    pub fn new(
        source: WeightedGraph,
        target: WeightedGraph,
        vertex_map: Vec<usize>,
        actions: Vec<EdgeAction>,
        index: Vec<u32>,
    ) -> Result<Self, MorphismError> {
        for (side, g) in [("source", &source), ("target", &target)] {
            if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
                return Err(MorphismError::HasLoops { side, edge: e.id.clone() });
            }
            if !g.legs().is_empty() {
                return Err(MorphismError::HasLegs(side));
            }
        }
        if vertex_map.len() != source.vertex_count() {
            return Err(MorphismError::VertexMapLength { expected: source.vertex_count(), got: vertex_map.len() });
        }
        if let Some(&bad) = vertex_map.iter().find(|&&t| t >= target.vertex_count()) {
            return Err(MorphismError::Unknown { kind: "target vertex", id: format!("#{bad}") });
        }
        if actions.len() != source.edge_count() || index.len() != source.edge_count() {
            return Err(MorphismError::EdgeDataLength {
                expected: source.edge_count(),
                got: actions.len().min(index.len()),
            });
        }
        for (e, (action, &r)) in source.edges().iter().zip(actions.iter().zip(&index)) {
            let [a, b] = [vertex_map[e.ends[0]], vertex_map[e.ends[1]]];
            match *action {
                EdgeAction::Contract => {
                    if r != 0 {
                        return Err(MorphismError::IndexMismatch { edge: e.id.clone(), index: r });
                    }
                    if a != b {
                        return Err(MorphismError::ContractionMismatch { edge: e.id.clone() });
                    }
                }
                EdgeAction::MapTo(t) => {
                    let Some(te) = target.edges().get(t) else {
                        return Err(MorphismError::Unknown { kind: "target edge", id: format!("#{t}") });
                    };
                    if r == 0 {
                        return Err(MorphismError::IndexMismatch { edge: e.id.clone(), index: r });
                    }
                    let [x, y] = te.ends;
                    if !((a == x && b == y) || (a == y && b == x)) {
                        return Err(MorphismError::EndpointMismatch { edge: e.id.clone(), target: te.id.clone() });
                    }
                }
            }
        }
        Ok(IndexedMorphism { source, target, vertex_map, actions, index, declared: None })
    }

    /// Declares multiplicities for vertices over edgeless target vertices.
    pub fn with_multiplicities(mut self, m: Vec<u32>) -> Result<Self, MorphismError> {
        if m.len() != self.source.vertex_count() {
            return Err(MorphismError::VertexMapLength { expected: self.source.vertex_count(), got: m.len() });
        }
        self.declared = Some(m);
        Ok(self)
    }

    pub fn source(&self) -> &WeightedGraph {
        &self.source
    }

    pub fn target(&self) -> &WeightedGraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn actions(&self) -> &[EdgeAction] {
        &self.actions
    }

    /// `r_φ(e)` for every source edge.
    pub fn indices(&self) -> &[u32] {
        &self.index
    }

    pub fn declared_multiplicities(&self) -> Option<&[u32]> {
        self.declared.as_deref()
    }

    /// `r_φ(h)` of half-edge `h` (equal to the index of its edge).
    pub fn half_edge_index(&self, h: usize) -> u32 {
        self.index[h / 2]
    }

    /// All indices at most one.
    pub fn is_simple(&self) -> bool {
        self.index.iter().all(|&r| r <= 1)
    }

    /// No contracted edges.
    pub fn is_homomorphism(&self) -> bool {
        self.actions.iter().all(|a| matches!(a, EdgeAction::MapTo(_)))
    }

    /// Sum of indices of the edges at `v` sent to target edge `t`.
    fn local_sum(&self, v: usize, t: usize) -> u32 {
        self.source
            .incident_edges(v)
            .iter()
            .filter(|&&e| self.actions[e] == EdgeAction::MapTo(t))
            .map(|&e| self.index[e])
            .sum()
    }

    /// Verifies that every vertex sees the same index sum over each target edge
    /// at its image, and that the degree is well defined.
    pub fn check_pseudo_harmonic(&self) -> Result<HarmonicCertificate, MorphismError> {
        let mut m = Vec::with_capacity(self.source.vertex_count());
        for v in 0..self.source.vertex_count() {
            let image = self.vertex_map[v];
            let star = self.target.incident_edges(image);
            if star.is_empty() {
                let declared = self
                    .declared
                    .as_ref()
                    .map(|d| d[v])
                    .ok_or_else(|| MorphismError::MissingMultiplicity(self.source.vertex_id(v).to_string()))?;
                m.push(declared);
                continue;
            }
            let first = self.local_sum(v, star[0]);
            for &t in &star[1..] {
                let s = self.local_sum(v, t);
                if s != first {
                    return Err(MorphismError::NotPseudoHarmonic {
                        vertex: self.source.vertex_id(v).to_string(),
                        first: self.target.edges()[star[0]].id.clone(),
                        second: self.target.edges()[t].id.clone(),
                        first_sum: first,
                        second_sum: s,
                    });
                }
            }
            m.push(first);
        }
        let mut sums = Vec::new();
        for t in 0..self.target.edge_count() {
            sums.push(
                (0..self.source.edge_count())
                    .filter(|&e| self.actions[e] == EdgeAction::MapTo(t))
                    .map(|e| self.index[e])
                    .sum::<u32>(),
            );
        }
        for u in 0..self.target.vertex_count() {
            sums.push((0..m.len()).filter(|&v| self.vertex_map[v] == u).map(|v| m[v]).sum());
        }
        let degree = sums[0];
        if sums.iter().any(|&s| s != degree) {
            return Err(MorphismError::DegreeMismatch(sums));
        }
        let ramification = Divisor::new((0..m.len()).map(|v| self.ramification_at(v, m[v])).collect());
        Ok(HarmonicCertificate { non_degenerate: m.iter().all(|&x| x >= 1), multiplicity: m, degree, ramification })
    }

    /// `2(m − 1 + w(v) − m·w'(φ(v))) − Σ_{e ∋ v} (r(e) − 1)`.
    fn ramification_at(&self, v: usize, m: u32) -> i64 {
        let m = m as i64;
        let w = self.source.weight(v) as i64;
        let w_image = self.target.weight(self.vertex_map[v]) as i64;
        let lhs: i64 = self.source.incident_edges(v).iter().map(|&e| self.index[e] as i64 - 1).sum();
        2 * (m - 1 + w - m * w_image) - lhs
    }

    /// Harmonicity plus the per-vertex slack of the local Riemann–Hurwitz
    /// inequality (the slack is `R_φ(v)`).
    pub fn check_harmonic(&self) -> Result<(bool, Vec<i64>), MorphismError> {
        let cert = self.check_pseudo_harmonic()?;
        let slack = cert.ramification.coeffs().to_vec();
        Ok((slack.iter().all(|&s| s >= 0), slack))
    }

    pub fn degree(&self) -> Result<u32, MorphismError> {
        Ok(self.check_pseudo_harmonic()?.degree)
    }

    /// `φ* v' = Σ_{φ(v) = v'} m_φ(v) v`, extended linearly.
    pub fn pullback(&self, d: &Divisor) -> Result<Divisor, MorphismError> {
        if d.len() != self.target.vertex_count() {
            return Err(MorphismError::VertexMapLength { expected: self.target.vertex_count(), got: d.len() });
        }
        let m = self.check_pseudo_harmonic()?.multiplicity;
        Ok(Divisor::new(
            (0..self.source.vertex_count()).map(|v| m[v] as i64 * d.coeffs()[self.vertex_map[v]]).collect(),
        ))
    }

    pub fn ramification_divisor(&self) -> Result<Divisor, MorphismError> {
        Ok(self.check_pseudo_harmonic()?.ramification)
    }

    /// Checks `K_source = φ* K_target + R_φ` coefficientwise.
    pub fn riemann_hurwitz_holds(&self) -> Result<bool, MorphismError> {
        let pulled = self.pullback(&canonical_divisor(&self.target))?;
        let r = self.ramification_divisor()?;
        Ok(canonical_divisor(&self.source) == &pulled + &r)
    }

    /// The partitions of `m_φ(v)` cut out by the indices over each target
    /// half-edge at `φ(v)`.
    pub fn vertex_partition_set(&self, v: usize) -> Result<PartitionSet, MorphismError> {
        let m = self.check_pseudo_harmonic()?.multiplicity[v];
        if m == 0 {
            return Err(MorphismError::Degenerate(self.source.vertex_id(v).to_string()));
        }
        let mut parts = Vec::new();
        for &t in self.target.incident_edges(self.vertex_map[v]) {
            let p: Vec<u32> = self
                .source
                .incident_edges(v)
                .iter()
                .filter(|&&e| self.actions[e] == EdgeAction::MapTo(t))
                .map(|&e| self.index[e])
                .collect();
            if !p.is_empty() {
                parts.push(p);
            }
        }
        Ok(PartitionSet::new(m, parts).expect("local sums partition the multiplicity"))
    }

    /// Replaces every contracted edge by a pair of index-one edges through a new
    /// vertex and hangs index-one leaves so that the result is a homomorphism
    /// of the same degree onto the target with one extra leaf per contracted
    /// edge. Contracting the first half of each split edge and the new leaves
    /// recovers the original source.
    pub fn homomorphize(&self) -> Result<IndexedMorphism, MorphismError> {
        if !self.target.is_tree() {
            return Err(MorphismError::TargetNotTree);
        }
        let cert = self.check_pseudo_harmonic()?;
        if self.is_homomorphism() {
            return Ok(self.clone());
        }
        let m = cert.multiplicity;
        let src = &self.source;
        let mut taken: HashSet<String> = src
            .vertices()
            .iter()
            .map(|v| v.id.clone())
            .chain(src.edges().iter().map(|e| e.id.clone()))
            .chain(self.target.vertices().iter().map(|v| v.id.clone()))
            .chain(self.target.edges().iter().map(|e| e.id.clone()))
            .collect();

        let mut s_vertices: Vec<Vertex> = src.vertices().to_vec();
        let mut s_edges: Vec<Edge> = Vec::new();
        let mut vmap = self.vertex_map.clone();
        let mut actions = Vec::new();
        let mut index = Vec::new();
        let mut t_vertices: Vec<Vertex> = self.target.vertices().to_vec();
        let mut t_edges: Vec<Edge> = self.target.edges().to_vec();
        let mut leaves: Vec<(Edge, usize)> = Vec::new();

        for (ei, e) in src.edges().iter().enumerate() {
            if let EdgeAction::MapTo(t) = self.actions[ei] {
                s_edges.push(e.clone());
                actions.push(EdgeAction::MapTo(t));
                index.push(self.index[ei]);
                continue;
            }
            let [v1, v2] = e.ends;
            let u = self.vertex_map[v1];
            let w_hat = t_vertices.len();
            t_vertices.push(Vertex { id: fresh(&mut taken, &format!("what:{}", e.id)), weight: 0 });
            let l_hat = t_edges.len();
            t_edges.push(Edge { id: fresh(&mut taken, &format!("lhat:{}", e.id)), ends: [u, w_hat] });

            let v_hat = s_vertices.len();
            s_vertices.push(Vertex { id: fresh(&mut taken, &format!("vhat:{}", e.id)), weight: 0 });
            vmap.push(w_hat);
            s_edges.push(Edge { id: fresh(&mut taken, &format!("ehat1:{}", e.id)), ends: [v1, v_hat] });
            s_edges.push(Edge { id: fresh(&mut taken, &format!("ehat2:{}", e.id)), ends: [v_hat, v2] });
            actions.extend([EdgeAction::MapTo(l_hat); 2]);
            index.extend([1, 1]);

            let mut fiber = vec![v1, v2];
            fiber.extend((0..src.vertex_count()).filter(|&x| x != v1 && x != v2 && self.vertex_map[x] == u));
            for (i, &vi) in fiber.iter().enumerate() {
                let count = if i < 2 { m[vi].saturating_sub(1) } else { m[vi] };
                for j in 1..=count {
                    let tag = format!("{}:{}:{}", e.id, src.vertex_id(vi), j);
                    let leaf = s_vertices.len();
                    s_vertices.push(Vertex { id: fresh(&mut taken, &format!("leaf:{tag}")), weight: 0 });
                    vmap.push(w_hat);
                    leaves.push((Edge { id: fresh(&mut taken, &format!("leafedge:{tag}")), ends: [vi, leaf] }, l_hat));
                }
            }
        }
        for (edge, l_hat) in leaves {
            s_edges.push(edge);
            actions.push(EdgeAction::MapTo(l_hat));
            index.push(1);
        }
        let source = WeightedGraph::new(s_vertices, s_edges, Vec::new())?;
        let target = WeightedGraph::new(t_vertices, t_edges, Vec::new())?;
        IndexedMorphism::new(source, target, vmap, actions, index)
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            vertex_map: (0..self.source.vertex_count())
                .map(|v| {
                    (self.source.vertex_id(v).to_string(), self.target.vertex_id(self.vertex_map[v]).to_string())
                })
                .collect(),
            edges: self
                .source
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| MorphismEdgeJson {
                    id: edge.id.clone(),
                    action: match self.actions[e] {
                        EdgeAction::Contract => "contract".into(),
                        EdgeAction::MapTo(t) => self.target.edges()[t].id.clone(),
                    },
                    index: self.index[e],
                })
                .collect(),
            multiplicities: self.declared.as_ref().map(|d| {
                (0..d.len())
                    .filter(|&v| self.target.incident_edges(self.vertex_map[v]).is_empty())
                    .map(|v| (self.source.vertex_id(v).to_string(), d[v]))
                    .collect()
            }),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, MorphismError> {
        let doc: MorphismJson = serde_json::from_str(s).map_err(|e| MorphismError::Json(e.to_string()))?;
        IndexedMorphism::try_from(doc)
    }
}

/// Morphism wire format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: GraphJson,
    pub target: GraphJson,
    pub vertex_map: BTreeMap<String, String>,
    pub edges: Vec<MorphismEdgeJson>,
    /// Only needed for vertices over an edgeless target vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<BTreeMap<String, u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismEdgeJson {
    pub id: String,
    /// `"contract"` or a target edge id.
    pub action: String,
    pub index: u32,
}

impl TryFrom<MorphismJson> for IndexedMorphism {
    type Error = MorphismError;

    fn try_from(doc: MorphismJson) -> Result<Self, MorphismError> {
        let source = WeightedGraph::try_from(doc.source)?;
        let target = WeightedGraph::try_from(doc.target)?;
        let mut vertex_map = vec![usize::MAX; source.vertex_count()];
        for (s, t) in &doc.vertex_map {
            let sv = source.vertex(s).ok_or_else(|| MorphismError::Unknown { kind: "source vertex", id: s.clone() })?;
            let tv = target.vertex(t).ok_or_else(|| MorphismError::Unknown { kind: "target vertex", id: t.clone() })?;
            vertex_map[sv] = tv;
        }
        if let Some(v) = vertex_map.iter().position(|&x| x == usize::MAX) {
            return Err(MorphismError::Unknown { kind: "image of vertex", id: source.vertex_id(v).to_string() });
        }
        let mut actions = vec![EdgeAction::Contract; source.edge_count()];
        let mut index = vec![0; source.edge_count()];
        let mut seen = vec![false; source.edge_count()];
        for e in &doc.edges {
            let ei = source.edge(&e.id).ok_or_else(|| MorphismError::Unknown { kind: "source edge", id: e.id.clone() })?;
            seen[ei] = true;
            index[ei] = e.index;
            if e.action != "contract" {
                let t = target
                    .edge(&e.action)
                    .ok_or_else(|| MorphismError::Unknown { kind: "target edge", id: e.action.clone() })?;
                actions[ei] = EdgeAction::MapTo(t);
            }
        }
        if let Some(e) = seen.iter().position(|&s| !s) {
            return Err(MorphismError::Unknown { kind: "action for edge", id: source.edges()[e].id.clone() });
        }
        let declared = match &doc.multiplicities {
            None => None,
            Some(map) => {
                let mut m = vec![0; source.vertex_count()];
                for (id, &x) in map {
                    let v = source.vertex(id).ok_or_else(|| MorphismError::Unknown { kind: "source vertex", id: id.clone() })?;
                    m[v] = x;
                }
                Some(m)
            }
        };
        let phi = IndexedMorphism::new(source, target, vertex_map, actions, index)?;
        match declared {
            Some(m) => phi.with_multiplicities(m),
            None => Ok(phi),
        }
    }
}

/// Named morphisms used by tests and examples.
pub mod examples {
    use super::*;
    use crate::fixtures;
    use crate::graph::GraphBuilder;

    /// A path on `k` weightless vertices `u1..uk` with edges `f1..f(k-1)`.
    pub fn path(k: usize) -> WeightedGraph {
        let mut b = GraphBuilder::new();
        for i in 1..=k {
            b = b.vertex(&format!("u{i}"), 0);
        }
        for i in 1..k {
            b = b.edge(&format!("f{i}"), &format!("u{i}"), &format!("u{}", i + 1));
        }
        b.build().expect("path")
    }

    /// `B(2) → ` single edge, both edges with index 1.
    pub fn phi2() -> IndexedMorphism {
        IndexedMorphism::new(
            fixtures::banana(2),
            path(2),
            vec![0, 1],
            vec![EdgeAction::MapTo(0); 2],
            vec![1, 1],
        )
        .expect("phi2")
    }

    /// Degree-3 map from the pdx graph onto a four-vertex path; one of the two
    /// middle edges has index 2.
    pub fn pdx_cover() -> IndexedMorphism {
        let g = fixtures::pdx();
        let actions = vec![
            EdgeAction::MapTo(0),
            EdgeAction::MapTo(0),
            EdgeAction::MapTo(0),
            EdgeAction::MapTo(1),
            EdgeAction::MapTo(1),
            EdgeAction::MapTo(2),
            EdgeAction::MapTo(2),
            EdgeAction::MapTo(2),
        ];
        IndexedMorphism::new(g, path(4), vec![0, 1, 2, 3], actions, vec![1, 1, 1, 2, 1, 1, 1, 1]).expect("pdx_cover")
    }

    /// Triangle `v1 v2 v3` sent to an edge: `v1, v2 ↦ u1`, `v3 ↦ u2`, with the
    /// edge `v1v2` contracted.
    pub fn phi_y() -> IndexedMorphism {
        let g = GraphBuilder::new()
            .vertex("v1", 0)
            .vertex("v2", 0)
            .vertex("v3", 0)
            .edge("a", "v1", "v3")
            .edge("b", "v2", "v3")
            .edge("c", "v1", "v2")
            .build()
            .expect("triangle");
        IndexedMorphism::new(
            g,
            path(2),
            vec![0, 0, 1],
            vec![EdgeAction::MapTo(0), EdgeAction::MapTo(0), EdgeAction::Contract],
            vec![1, 1, 0],
        )
        .expect("phi_y")
    }
}
