//! The Hurwitz existence problem for small degrees: permutations with
//! prescribed cycle types whose product is the identity and which generate a
//! transitive group.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// Hard limit of the solver's packed state encoding.
const MAX_DEGREE: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HurwitzError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("partition {index} has a zero part")]
    ZeroPart { index: usize },
    #[error("partition {index} sums to {sum}, expected {degree}")]
    WrongSum { index: usize, sum: u32, degree: u32 },
    #[error("degree {degree} exceeds the solver cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("malformed partition set JSON: {0}")]
    Json(String),
}

/// A multiset of partitions of a common degree `d`. Each partition is kept in
/// non-increasing order; the order of the partitions is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionSet {
    degree: u32,
    partitions: Vec<Vec<u32>>,
}

impl PartitionSet {
    pub fn new(degree: u32, partitions: Vec<Vec<u32>>) -> Result<Self, HurwitzError> {
        if degree == 0 {
            return Err(HurwitzError::ZeroDegree);
        }
        let mut sorted = Vec::with_capacity(partitions.len());
        for (index, mut p) in partitions.into_iter().enumerate() {
            if p.contains(&0) {
                return Err(HurwitzError::ZeroPart { index });
            }
            let sum: u32 = p.iter().sum();
            if sum != degree {
                return Err(HurwitzError::WrongSum { index, sum, degree });
            }
            p.sort_unstable_by(|a, b| b.cmp(a));
            sorted.push(p);
        }
        Ok(PartitionSet { degree, partitions: sorted })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn partitions(&self) -> &[Vec<u32>] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// `Σᵢ Σⱼ (rᵢʲ − 1)`.
    pub fn total_ramification(&self) -> u64 {
        self.partitions.iter().flatten().map(|&r| (r - 1) as u64).sum()
    }

    /// `2g − 2 = −2d + Σᵢ Σⱼ (rᵢʲ − 1)` solved for `g`.
    pub fn rh_genus(&self) -> RhGenus {
        let twice = self.total_ramification() as i64 - 2 * self.degree as i64 + 2;
        if twice % 2 != 0 {
            RhGenus::HalfIntegral { twice_genus: twice }
        } else if twice < 0 {
            RhGenus::Negative(twice / 2)
        } else {
            RhGenus::Genus((twice / 2) as u64)
        }
    }

    /// Appends the all-ones partition.
    pub fn add_trivial(&self) -> PartitionSet {
        let mut out = self.clone();
        out.partitions.push(vec![1; self.degree as usize]);
        out
    }

    /// Appends `k = 2(d − 1 + g) − Σ(r − 1)` simple partitions `(2,1,…,1)` so
    /// that the result has genus `g`. `None` when `k < 0`, or when `d = 1`
    /// and `k > 0` (there are no transpositions in degree one).
    pub fn complete_with_simple(&self, genus: u32) -> Option<PartitionSet> {
        let k = 2 * (self.degree as i64 - 1 + genus as i64) - self.total_ramification() as i64;
        if k < 0 || (self.degree == 1 && k > 0) {
            return None;
        }
        let mut simple = vec![1; self.degree as usize - 1];
        if self.degree > 1 {
            simple[0] = 2;
        }
        let mut out = self.clone();
        out.partitions.extend(std::iter::repeat(simple).take(k as usize));
        Some(out)
    }

    pub fn to_json(&self) -> PartitionSetJson {
        PartitionSetJson { d: self.degree, partitions: self.partitions.clone() }
    }

    pub fn from_json_str(s: &str) -> Result<Self, HurwitzError> {
        let doc: PartitionSetJson = serde_json::from_str(s).map_err(|e| HurwitzError::Json(e.to_string()))?;
        PartitionSet::new(doc.d, doc.partitions)
    }
}

impl fmt::Display for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .partitions
            .iter()
            .map(|p| format!("({})", p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "d={} {{{}}}", self.degree, parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSetJson {
    pub d: u32,
    pub partitions: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhGenus {
    Genus(u64),
    /// The ramification has the wrong parity.
    HalfIntegral { twice_genus: i64 },
    Negative(i64),
}

/// A permutation of `{0, …, d−1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Self {
        Permutation(self.0.iter().map(|&x| next.0[x as usize]).collect())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, non-increasing.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Canonical class representative: cycles of non-increasing length over
    /// consecutive points, each cycle `(a a+1 … b)`.
    pub fn canonical(cycle_type: &[u32]) -> Self {
        let d: u32 = cycle_type.iter().sum();
        let mut images = vec![0u8; d as usize];
        let mut start = 0usize;
        for &len in cycle_type {
            let len = len as usize;
            for i in 0..len {
                images[start + i] = (start + (i + 1) % len) as u8;
            }
            start += len;
        }
        Permutation(images)
    }
}

/// One-based cycle notation with fixed points, e.g. `(1 2)(3)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// Permutations `σ₁ … σ_b` realizing a partition set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzWitness {
    pub permutations: Vec<Permutation>,
}

impl HurwitzWitness {
    /// Checks cycle types, the identity product and transitivity.
    pub fn verify(&self, p: &PartitionSet) -> bool {
        let d = p.degree as usize;
        if self.permutations.len() != p.len() || self.permutations.iter().any(|s| s.0.len() != d) {
            return false;
        }
        if self.permutations.iter().zip(p.partitions()).any(|(s, part)| &s.cycle_type() != part) {
            return false;
        }
        let product = self.permutations.iter().fold(Permutation::identity(d), |acc, s| acc.then(s));
        if product != Permutation::identity(d) {
            return false;
        }
        let mut reached = vec![false; d];
        reached[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for s in &self.permutations {
                let y = s.apply(x);
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        reached.into_iter().all(|r| r)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.permutations.iter().map(Permutation::to_string).collect()
    }
}

/// [`is_hurwitz_type_with_cap`] with the default degree cap.
pub fn is_hurwitz_type(p: &PartitionSet) -> Result<Option<HurwitzWitness>, HurwitzError> {
    is_hurwitz_type_with_cap(p, DEFAULT_DEGREE_CAP)
}

/// Exhaustive search for a witness. `σ₁` is fixed to its canonical class
/// representative, `σ₂ … σ_{b−1}` run over their classes in lexicographic
/// order and `σ_b` is forced. The first witness found is the least one in
/// that order.
pub fn is_hurwitz_type_with_cap(p: &PartitionSet, cap: u32) -> Result<Option<HurwitzWitness>, HurwitzError> {
    let d = p.degree;
    if d > cap.min(MAX_DEGREE) {
        return Err(HurwitzError::DegreeCap { degree: d, cap: cap.min(MAX_DEGREE) });
    }
    let du = d as usize;
    let b = p.len();
    let witness = |perms: Vec<Permutation>| Some(HurwitzWitness { permutations: perms });
    match b {
        0 => return Ok(if d == 1 { witness(vec![]) } else { None }),
        1 => {
            let ok = d == 1;
            return Ok(if ok { witness(vec![Permutation::identity(1)]) } else { None });
        }
        _ => {}
    }
    // sign of the product
    let parity: usize = p.partitions.iter().map(|q| du - q.len()).sum();
    if parity % 2 == 1 {
        return Ok(None);
    }
    // each σ_j can merge at most d − n_j orbits
    let merge: Vec<usize> = p.partitions.iter().map(|q| du - q.len()).collect();
    if merge.iter().sum::<usize>() < du - 1 {
        return Ok(None);
    }
    let mut classes: HashMap<Vec<u32>, Vec<Permutation>> = HashMap::new();
    for q in &p.partitions[1..b - 1] {
        classes.entry(q.clone()).or_default();
    }
    if !classes.is_empty() {
        for_each_permutation(du, |perm| {
            if let Some(list) = classes.get_mut(&perm.cycle_type()) {
                list.push(perm.clone());
            }
        });
    }
    let sigma1 = Permutation::canonical(&p.partitions[0]);
    let mut orbits = Orbits::new(du);
    orbits.absorb(&sigma1);
    let mut search = Search {
        p,
        classes: &classes,
        merge_suffix: suffix_sums(&merge),
        failed: HashSet::new(),
        chosen: vec![sigma1.clone()],
    };
    Ok(search.dfs(1, sigma1, orbits).then(|| HurwitzWitness { permutations: search.chosen }))
}

fn suffix_sums(v: &[usize]) -> Vec<usize> {
    let mut out = vec![0; v.len() + 1];
    for i in (0..v.len()).rev() {
        out[i] = out[i + 1] + v[i];
    }
    out
}

struct Search<'a> {
    p: &'a PartitionSet,
    classes: &'a HashMap<Vec<u32>, Vec<Permutation>>,
    merge_suffix: Vec<usize>,
    /// States `(level, partial product, orbits)` already known to fail.
    failed: HashSet<u64>,
    chosen: Vec<Permutation>,
}

impl Search<'_> {
    /// `level` is the index of the next permutation to choose.
    fn dfs(&mut self, level: usize, product: Permutation, orbits: Orbits) -> bool {
        let b = self.p.len();
        if orbits.count() - 1 > self.merge_suffix[level] {
            return false;
        }
        if level == b - 1 {
            let last = product.inverse();
            if last.cycle_type() != self.p.partitions[level] {
                return false;
            }
            let mut o = orbits;
            o.absorb(&last);
            if o.count() != 1 {
                return false;
            }
            self.chosen.push(last);
            return true;
        }
        let key = state_key(level, &product, &orbits);
        if self.failed.contains(&key) {
            return false;
        }
        let candidates = &self.classes[&self.p.partitions[level]];
        for sigma in candidates {
            let mut o = orbits.clone();
            o.absorb(sigma);
            self.chosen.push(sigma.clone());
            if self.dfs(level + 1, product.then(sigma), o) {
                return true;
            }
            self.chosen.pop();
        }
        self.failed.insert(key);
        false
    }
}

fn state_key(level: usize, product: &Permutation, orbits: &Orbits) -> u64 {
    let mut key = level as u64;
    for (i, &x) in product.0.iter().enumerate() {
        key |= (x as u64) << (16 + 3 * i);
    }
    for i in 0..product.0.len() {
        key |= (orbits.root(i) as u64) << (40 + 3 * i);
    }
    key
}

/// Orbits of the group generated so far, as a tiny union-find.
#[derive(Clone)]
struct Orbits {
    parent: Vec<u8>,
    count: usize,
}

impl Orbits {
    fn new(d: usize) -> Self {
        Orbits { parent: (0..d as u8).collect(), count: d }
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    fn absorb(&mut self, s: &Permutation) {
        for x in 0..self.parent.len() {
            let (a, b) = (self.root(x), self.root(s.apply(x)));
            if a != b {
                // keep the smaller point as root so the encoding is canonical
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                self.parent[hi] = lo as u8;
                self.count -= 1;
            }
        }
        for x in 0..self.parent.len() {
            self.parent[x] = self.root(x) as u8;
        }
    }

    fn count(&self) -> usize {
        self.count
    }
}

/// Visits every permutation of `{0..d}` in lexicographic order.
fn for_each_permutation(d: usize, mut f: impl FnMut(&Permutation)) {
    let mut cur: Vec<u8> = (0..d as u8).collect();
    loop {
        f(&Permutation(cur.clone()));
        let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else { return };
        let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// All partitions of `n`, each non-increasing, in reverse lexicographic order.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(d: u32, parts: &[&[u32]]) -> PartitionSet {
        PartitionSet::new(d, parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn genus_bookkeeping() {
        assert_eq!(set(4, &[&[3, 1], &[2, 2], &[2, 2]]).rh_genus(), RhGenus::Genus(0));
        assert_eq!(set(2, &[&[2], &[2]]).rh_genus(), RhGenus::Genus(0));
        assert_eq!(set(3, &[&[3], &[3], &[3]]).rh_genus(), RhGenus::Genus(1));
        assert!(matches!(set(2, &[&[2]]).rh_genus(), RhGenus::HalfIntegral { .. }));
        assert_eq!(set(3, &[&[3]]).rh_genus(), RhGenus::Negative(-1));
    }

    #[test]
    fn the_classic_obstruction() {
        let p = set(4, &[&[3, 1], &[2, 2], &[2, 2]]);
        assert_eq!(is_hurwitz_type(&p).unwrap(), None);
        assert_eq!(is_hurwitz_type(&p.add_trivial()).unwrap(), None);
    }

    #[test]
    fn small_witnesses() {
        let p = set(2, &[&[2], &[2]]);
        let w = is_hurwitz_type(&p).unwrap().unwrap();
        assert_eq!(w.to_strings(), vec!["(1 2)", "(1 2)"]);
        assert!(w.verify(&p));

        let p = set(3, &[&[3], &[3], &[3]]);
        let w = is_hurwitz_type(&p).unwrap().unwrap();
        assert!(w.verify(&p));
        assert!(w.permutations.iter().all(|s| *s == w.permutations[0]));

        assert_eq!(is_hurwitz_type(&set(4, &[&[2, 2], &[2, 2]])).unwrap(), None);
        let w = is_hurwitz_type(&set(1, &[])).unwrap();
        assert!(w.is_some());
        assert!(is_hurwitz_type(&set(2, &[])).unwrap().is_none());
    }

    #[test]
    fn add_trivial_keeps_witnesses() {
        let p = set(3, &[&[2, 1], &[3], &[2, 1]]);
        let q = p.add_trivial();
        assert_eq!(p.rh_genus(), q.rh_genus());
        assert!(is_hurwitz_type(&p).unwrap().is_some());
        assert!(is_hurwitz_type(&q).unwrap().unwrap().verify(&q));
    }

    #[test]
    fn completion() {
        let p = set(3, &[&[1, 1, 1], &[2, 1]]);
        let c = p.complete_with_simple(0).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.total_ramification(), 4);
        assert_eq!(c.rh_genus(), RhGenus::Genus(0));
        let balanced = set(2, &[&[2], &[2]]);
        assert_eq!(balanced.complete_with_simple(0).unwrap(), balanced);
        assert!(set(2, &[&[2], &[2], &[2], &[2]]).complete_with_simple(0).is_none());
        assert!(set(1, &[&[1]]).complete_with_simple(1).is_none());
        assert_eq!(set(1, &[&[1]]).complete_with_simple(0).unwrap().len(), 1);
    }

    #[test]
    fn validation_and_cap() {
        assert_eq!(PartitionSet::new(0, vec![]), Err(HurwitzError::ZeroDegree));
        assert!(matches!(PartitionSet::new(3, vec![vec![2, 2]]), Err(HurwitzError::WrongSum { .. })));
        assert!(matches!(PartitionSet::new(3, vec![vec![3, 0]]), Err(HurwitzError::ZeroPart { .. })));
        let big = PartitionSet::new(9, vec![vec![9], vec![9]]).unwrap();
        assert!(matches!(is_hurwitz_type(&big), Err(HurwitzError::DegreeCap { .. })));
        assert!(is_hurwitz_type_with_cap(&set(4, &[&[4], &[4]]), 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = PartitionSet::from_json_str(r#"{"d": 4, "partitions": [[1,3],[2,2],[2,2]]}"#).unwrap();
        assert_eq!(p, set(4, &[&[3, 1], &[2, 2], &[2, 2]]));
        let s = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(PartitionSet::from_json_str(&s).unwrap(), p);
    }

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(integer_partitions(4).len(), 5);
        assert_eq!(integer_partitions(4)[0], vec![4]);
        assert_eq!(integer_partitions(8).len(), 22);
    }

    #[test]
    fn canonical_representative() {
        let c = Permutation::canonical(&[3, 2, 1]);
        assert_eq!(c.cycle_type(), vec![3, 2, 1]);
        assert_eq!(c.to_string(), "(1 2 3)(4 5)(6)");
    }
}
