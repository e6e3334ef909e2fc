//! Enumeration of stable graphs of a given genus up to isomorphism.

use std::collections::HashSet;

use crate::graph::{Edge, Vertex, WeightedGraph};

/// A graph encoded by weights, loop counts and the upper triangle of the
/// multiplicity matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Shape {
    weights: Vec<u32>,
    loops: Vec<u32>,
    mult: Vec<Vec<u32>>,
}

impl Shape {
    fn n(&self) -> usize {
        self.weights.len()
    }

    fn valency(&self, v: usize) -> u32 {
        2 * self.loops[v] + (0..self.n()).filter(|&u| u != v).map(|u| self.mult[v][u]).sum::<u32>()
    }

    fn permuted(&self, order: &[usize]) -> Shape {
        let n = self.n();
        Shape {
            weights: order.iter().map(|&v| self.weights[v]).collect(),
            loops: order.iter().map(|&v| self.loops[v]).collect(),
            mult: (0..n).map(|i| (0..n).map(|j| self.mult[order[i]][order[j]]).collect()).collect(),
        }
    }

    /// Least encoding over vertex orders compatible with a sorted invariant.
    fn canonical(&self) -> Shape {
        let n = self.n();
        let key = |v: usize| {
            let mut nb: Vec<u32> = (0..n).filter(|&u| u != v).map(|u| self.mult[v][u]).filter(|&m| m > 0).collect();
            nb.sort_unstable();
            (self.weights[v], self.loops[v], self.valency(v), nb)
        };
        let keys: Vec<_> = (0..n).map(key).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        // blocks of equal keys may be permuted freely
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match blocks.last_mut() {
                Some(b) if keys[b[0]] == keys[v] => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        let mut best: Option<Shape> = None;
        let mut current = Vec::with_capacity(n);
        permute_blocks(&blocks, 0, &mut current, &mut |ord| {
            let s = self.permuted(ord);
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        });
        best.expect("at least one order")
    }

    fn to_graph(&self) -> WeightedGraph {
        let n = self.n();
        let vertices = (0..n).map(|i| Vertex { id: format!("v{}", i + 1), weight: self.weights[i] }).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for k in 0..self.loops[i] {
                edges.push(Edge { id: format!("l{}_{}", i + 1, k + 1), ends: [i, i] });
            }
            for j in i + 1..n {
                for k in 0..self.mult[i][j] {
                    edges.push(Edge { id: format!("e{}_{}_{}", i + 1, j + 1, k + 1), ends: [i, j] });
                }
            }
        }
        WeightedGraph::new(vertices, edges, Vec::new()).expect("connected shape")
    }
}

fn permute_blocks(blocks: &[Vec<usize>], i: usize, current: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == blocks.len() {
        f(current);
        return;
    }
    let mut block = blocks[i].clone();
    let k = block.len();
    heap_permutations(&mut block, k, &mut |p| {
        let len = current.len();
        current.extend_from_slice(p);
        permute_blocks(blocks, i + 1, current, f);
        current.truncate(len);
    });
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k {
        heap_permutations(a, k - 1, f);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

/// All stable graphs of genus `g ≥ 2`, one per isomorphism class, in a
/// deterministic order (by vertex count, then canonical encoding).
pub fn stable_graphs(genus: u32) -> Vec<WeightedGraph> {
    assert!(genus >= 2, "stable graphs need genus at least 2");
    let mut out = Vec::new();
    for n in 1..=(2 * genus - 2) as usize {
        let mut found: HashSet<Shape> = HashSet::new();
        let mut weights = vec![0u32; n];
        // weights non-increasing is a harmless symmetry restriction
        weight_vectors(&mut weights, 0, genus, genus, &mut |w| {
            let total_w: u32 = w.iter().sum();
            // |E| = g − 1 + n − Σw
            let edges = genus as i64 - 1 + n as i64 - total_w as i64;
            if edges < n as i64 - 1 {
                return;
            }
            let mut shape = Shape { weights: w.to_vec(), loops: vec![0; n], mult: vec![vec![0; n]; n] };
            fill(&mut shape, 0, 0, edges as u32, &mut |s| {
                if connected(s) {
                    found.insert(s.canonical());
                }
            });
        });
        let mut shapes: Vec<Shape> = found.into_iter().collect();
        shapes.sort();
        out.extend(shapes.iter().map(Shape::to_graph));
    }
    out
}

fn weight_vectors(w: &mut Vec<u32>, i: usize, max: u32, left: u32, f: &mut dyn FnMut(&[u32])) {
    if i == w.len() {
        f(w);
        return;
    }
    for x in (0..=max.min(left)).rev() {
        w[i] = x;
        weight_vectors(w, i + 1, x, left - x, f);
    }
    w[i] = 0;
}

/// Distributes `left` edges over loops and pairs, row by row; a vertex is
/// checked for stability as soon as its row is complete.
fn fill(s: &mut Shape, v: usize, slot: usize, left: u32, f: &mut dyn FnMut(&Shape)) {
    let n = s.n();
    if v == n {
        if left == 0 {
            f(s);
        }
        return;
    }
    // slot 0 is the loop count, slot k ≥ 1 the pair (v, v + k)
    if v + slot == n {
        if 2 * s.weights[v] + s.valency(v) < 3 {
            return;
        }
        fill(s, v + 1, 0, left, f);
        return;
    }
    for x in 0..=left {
        if slot == 0 {
            s.loops[v] = x;
        } else {
            let u = v + slot;
            s.mult[v][u] = x;
            s.mult[u][v] = x;
        }
        fill(s, v, slot + 1, left - x, f);
    }
    if slot == 0 {
        s.loops[v] = 0;
    } else {
        let u = v + slot;
        s.mult[v][u] = 0;
        s.mult[u][v] = 0;
    }
}

fn connected(s: &Shape) -> bool {
    let n = s.n();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if !seen[u] && s.mult[v][u] > 0 {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|x| x)
}
