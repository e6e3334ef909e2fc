//! Hyperelliptic graphs: involution certificates, the two-vertex closed form,
//! the bridge condition and the stable-curve criterion.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::divisor::{is_divisorially_gonal, DivisorError};
use crate::gonality::{is_geometrically_gonal, GonalityError};
use crate::graph::{Edge, GraphError, Vertex, WeightedGraph};
use crate::morphism::{EdgeAction, IndexedMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperellipticError {
    #[error("graph has loops")]
    HasLoops,
    #[error("graph is not 2-edge-connected")]
    HasBridges,
    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),
    #[error("expected exactly two vertices, found {0}")]
    NotTwoVertices(usize),
    #[error("graph is not stable")]
    NotStable,
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Gonality(#[from] GonalityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An involution of a loopless graph. `inverted[e]` is set for edges fixed by
/// the involution with their endpoints swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvolution {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
    pub inverted: Vec<bool>,
}

impl GraphInvolution {
    pub fn validate(&self, g: &WeightedGraph) -> Result<(), HyperellipticError> {
        let bad = |m: String| Err(HyperellipticError::InvalidInvolution(m));
        if self.vertex.len() != g.vertex_count() || self.edge.len() != g.edge_count() || self.inverted.len() != g.edge_count() {
            return bad("length mismatch".into());
        }
        for (v, &x) in self.vertex.iter().enumerate() {
            if x >= self.vertex.len() || self.vertex[x] != v {
                return bad(format!("vertex map is not an involution at `{}`", g.vertex_id(v)));
            }
        }
        for (e, &f) in self.edge.iter().enumerate() {
            let id = &g.edges()[e].id;
            if f >= self.edge.len() || self.edge[f] != e {
                return bad(format!("edge map is not an involution at `{id}`"));
            }
            let [a, b] = g.edges()[e].ends;
            let [x, y] = g.edges()[f].ends;
            let (ia, ib) = (self.vertex[a], self.vertex[b]);
            if !((ia == x && ib == y) || (ia == y && ib == x)) {
                return bad(format!("edge `{id}` is not sent to an edge between the images of its ends"));
            }
            let swaps_ends = e == f && a != b && ia == b;
            if self.inverted[e] != swaps_ends {
                return bad(format!("inversion flag of `{id}` is inconsistent"));
            }
        }
        Ok(())
    }

    pub fn fixes_positive_weights(&self, g: &WeightedGraph) -> bool {
        (0..g.vertex_count()).all(|v| g.weight(v) == 0 || self.vertex[v] == v)
    }

    pub fn is_identity_on_vertices(&self) -> bool {
        self.vertex.iter().enumerate().all(|(v, &x)| v == x)
    }
}

/// Vertex orbits become vertices, non-inverted edge orbits become edges and
/// inverted edges collapse. Quotient weights are set to zero; only the shape
/// of the quotient is ever used.
pub fn quotient(g: &WeightedGraph, iota: &GraphInvolution) -> Result<WeightedGraph, HyperellipticError> {
    if g.has_loops() {
        return Err(HyperellipticError::HasLoops);
    }
    iota.validate(g)?;
    let (orbit_of, orbits) = vertex_orbits(g, iota);
    let vertices = orbits
        .iter()
        .map(|o| Vertex { id: o.iter().map(|&v| g.vertex_id(v)).collect::<Vec<_>>().join("|"), weight: 0 })
        .collect();
    let mut edges = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let f = iota.edge[e];
        if iota.inverted[e] || f < e {
            continue;
        }
        let id = if f == e { edge.id.clone() } else { format!("{}|{}", edge.id, g.edges()[f].id) };
        edges.push(Edge { id, ends: [orbit_of[edge.ends[0]], orbit_of[edge.ends[1]]] });
    }
    Ok(WeightedGraph::new(vertices, edges, Vec::new())?)
}

fn vertex_orbits(g: &WeightedGraph, iota: &GraphInvolution) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut orbit_of = vec![usize::MAX; g.vertex_count()];
    let mut orbits = Vec::new();
    for v in 0..g.vertex_count() {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let w = iota.vertex[v];
        orbit_of[v] = orbits.len();
        orbit_of[w] = orbits.len();
        orbits.push(if w == v { vec![v] } else { vec![v, w] });
    }
    (orbit_of, orbits)
}

/// The degree-2 quotient map: swapped edges get index 1, straight fixed edges
/// index 2, inverted edges are contracted.
pub fn quotient_morphism(g: &WeightedGraph, iota: &GraphInvolution) -> Result<IndexedMorphism, HyperellipticError> {
    let t = quotient(g, iota)?;
    let (orbit_of, _) = vertex_orbits(g, iota);
    let mut actions = Vec::new();
    let mut index = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let f = iota.edge[e];
        if iota.inverted[e] {
            actions.push(EdgeAction::Contract);
            index.push(0);
            continue;
        }
        let lead = e.min(f);
        let id = if f == e { edge.id.clone() } else { format!("{}|{}", g.edges()[lead].id, g.edges()[e.max(f)].id) };
        actions.push(EdgeAction::MapTo(t.edge(&id).expect("quotient edge")));
        index.push(if f == e { 2 } else { 1 });
    }
    IndexedMorphism::new(g.clone(), t, orbit_of, actions, index)
        .map_err(|e| HyperellipticError::InvalidInvolution(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct InvolutionSearch {
    /// Every involution fixing positive weights with a tree quotient.
    pub involutions: Vec<GraphInvolution>,
    /// Quotient morphism of the first involution when `|V| ≥ 3`.
    pub morphism: Option<IndexedMorphism>,
}

/// Enumerates vertex involutions fixing every positive-weight vertex and, for
/// each, the unique edge extension that can have a tree quotient.
pub fn find_hyperelliptic_involutions(g: &WeightedGraph) -> Result<InvolutionSearch, HyperellipticError> {
    if g.has_loops() {
        return Err(HyperellipticError::HasLoops);
    }
    if !g.is_2_edge_connected() {
        return Err(HyperellipticError::HasBridges);
    }
    if g.genus() < 2 {
        return Err(HyperellipticError::GenusTooSmall(g.genus()));
    }
    let n = g.vertex_count();
    let mut between: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let [a, b] = edge.ends;
        between.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let mut found = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    vertex_involutions(g, 0, &mut sigma, &mut |s| {
        if let Some(iota) = extend(g, s, &between) {
            if quotient(g, &iota).map(|q| q.is_tree()).unwrap_or(false) {
                found.push(iota);
            }
        }
    });
    let morphism = match found.first() {
        Some(iota) if n >= 3 => Some(quotient_morphism(g, iota)?),
        _ => None,
    };
    Ok(InvolutionSearch { involutions: found, morphism })
}

fn vertex_involutions(g: &WeightedGraph, v: usize, sigma: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let n = sigma.len();
    if v == n {
        f(sigma);
        return;
    }
    if sigma[v] != usize::MAX {
        vertex_involutions(g, v + 1, sigma, f);
        return;
    }
    sigma[v] = v;
    vertex_involutions(g, v + 1, sigma, f);
    sigma[v] = usize::MAX;
    if g.weight(v) > 0 {
        return;
    }
    for u in v + 1..n {
        if sigma[u] != usize::MAX || g.weight(u) > 0 || g.valency(u) != g.valency(v) {
            continue;
        }
        sigma[v] = u;
        sigma[u] = v;
        vertex_involutions(g, v + 1, sigma, f);
        sigma[v] = usize::MAX;
        sigma[u] = usize::MAX;
    }
}

/// The edge map is forced once the quotient must be a tree: a fixed pair of
/// fixed vertices carries one straight edge or two swapped edges, a pair of
/// swapped vertices has all its edges inverted, and two distinct pairs
/// exchanged by the involution carry one edge each.
fn extend(g: &WeightedGraph, sigma: &[usize], between: &BTreeMap<(usize, usize), Vec<usize>>) -> Option<GraphInvolution> {
    let ne = g.edge_count();
    let mut edge = vec![usize::MAX; ne];
    let mut inverted = vec![false; ne];
    for (&(a, b), es) in between {
        let (x, y) = (sigma[a], sigma[b]);
        let image = (x.min(y), x.max(y));
        if image == (a, b) {
            if x == a {
                match es.as_slice() {
                    [e] => edge[*e] = *e,
                    [e, f] => {
                        edge[*e] = *f;
                        edge[*f] = *e;
                    }
                    _ => return None,
                }
            } else {
                for &e in es {
                    edge[e] = e;
                    inverted[e] = true;
                }
            }
        } else {
            let other = between.get(&image)?;
            match (es.as_slice(), other.as_slice()) {
                ([e], [f]) => edge[*e] = *f,
                _ => return None,
            }
        }
    }
    Some(GraphInvolution { vertex: sigma.to_vec(), edge, inverted })
}

/// How [`is_hyperelliptic`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LowGenus,
    Divisorial,
    DivisorialAndInvolution,
}

#[derive(Debug, Clone)]
pub struct HyperellipticReport {
    pub hyperelliptic: bool,
    pub method: Method,
    /// `W¹₂ ≠ ∅`, the defining test.
    pub divisorial: bool,
    /// Involution certificate on the bridge-contracted loopless model.
    pub involution: Option<GraphInvolution>,
    pub involution_found: Option<bool>,
    /// The graph the involution search ran on.
    pub reduced: Option<WeightedGraph>,
}

impl HyperellipticReport {
    pub fn methods_agree(&self) -> bool {
        self.involution_found.map_or(true, |i| i == self.divisorial)
    }
}

/// Divisorial 2-gonality, cross-checked by the involution search on the
/// loopless model with bridges contracted.
pub fn is_hyperelliptic(g: &WeightedGraph) -> Result<HyperellipticReport, HyperellipticError> {
    let g = g.without_legs();
    if g.genus() <= 1 {
        return Ok(HyperellipticReport {
            hyperelliptic: true,
            method: Method::LowGenus,
            divisorial: true,
            involution: None,
            involution_found: None,
            reduced: None,
        });
    }
    let divisorial = is_divisorially_gonal(&g, 2)?.0;
    let reduced = g.loopless_model().contract_bridges()?;
    let search = find_hyperelliptic_involutions(&reduced)?;
    let involution = search.involutions.into_iter().next();
    Ok(HyperellipticReport {
        hyperelliptic: divisorial,
        method: Method::DivisorialAndInvolution,
        divisorial,
        involution_found: Some(involution.is_some()),
        involution,
        reduced: Some(reduced),
    })
}

/// Closed form for loopless, 2-edge-connected, two-vertex graphs of genus at
/// least 2: hyperelliptic iff two edges, or both weights zero.
pub fn two_vertex_classification(g: &WeightedGraph) -> Result<bool, HyperellipticError> {
    if g.vertex_count() != 2 {
        return Err(HyperellipticError::NotTwoVertices(g.vertex_count()));
    }
    if g.has_loops() {
        return Err(HyperellipticError::HasLoops);
    }
    if !g.is_2_edge_connected() {
        return Err(HyperellipticError::HasBridges);
    }
    if g.genus() < 2 {
        return Err(HyperellipticError::GenusTooSmall(g.genus()));
    }
    Ok(g.edge_count() == 2 || g.total_weight() == 0)
}

/// Vertices touching more than `2w(v) + 2` bridges.
pub fn bridge_violations(g: &WeightedGraph) -> Vec<String> {
    let counts = g.bridge_counts();
    (0..g.vertex_count())
        .filter(|&v| counts[v] > 2 * g.weight(v) + 2)
        .map(|v| g.vertex_id(v).to_string())
        .collect()
}

pub fn bridge_condition(g: &WeightedGraph) -> bool {
    bridge_violations(g).is_empty()
}

#[derive(Debug, Clone)]
pub struct CurveLocusReport {
    /// Hyperelliptic and the bridge condition holds.
    pub in_locus: bool,
    pub hyperelliptic: bool,
    pub bridge_violations: Vec<String>,
    /// Geometric 2-gonality; `None` inside means the search budget ran out.
    pub two_gonal: Option<bool>,
    /// Whether the two answers are expected to coincide (`|V| ≠ 2`).
    pub comparable: bool,
}

impl CurveLocusReport {
    pub fn consistent(&self) -> bool {
        !self.comparable || self.two_gonal.map_or(true, |t| t == self.in_locus)
    }
}

/// Whether the stratum of a stable graph of genus at least 2 contains a
/// hyperelliptic curve. Two-vertex inputs record both answers without
/// treating a mismatch as an inconsistency.
pub fn stable_curve_hyperelliptic_locus(g: &WeightedGraph) -> Result<CurveLocusReport, HyperellipticError> {
    if !g.is_stable() {
        return Err(HyperellipticError::NotStable);
    }
    if g.genus() < 2 {
        return Err(HyperellipticError::GenusTooSmall(g.genus()));
    }
    let hyperelliptic = is_hyperelliptic(g)?.hyperelliptic;
    let bridge_violations = bridge_violations(g);
    let two_gonal = is_geometrically_gonal(g, 2)?;
    Ok(CurveLocusReport {
        in_locus: hyperelliptic && bridge_violations.is_empty(),
        hyperelliptic,
        bridge_violations,
        two_gonal,
        comparable: g.vertex_count() != 2,
    })
}

/// Distinct involutions (used to assert uniqueness).
pub fn count_distinct(invs: &[GraphInvolution]) -> usize {
    invs.iter().map(|i| (i.vertex.clone(), i.edge.clone())).collect::<HashSet<_>>().len()
}
