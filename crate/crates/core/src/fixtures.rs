//! Named graphs used throughout the tests and exposed by the `fixtures` CLI command.

use crate::graph::{GraphBuilder, WeightedGraph};

/// `B(n)`: two weightless vertices `v1`, `v2` joined by `n` parallel edges `e1..en`.
pub fn banana(n: usize) -> WeightedGraph {
    banana_weighted(n, 0, 0)
}

/// `B(n; w1, w2)`.
pub fn banana_weighted(n: usize, w1: u32, w2: u32) -> WeightedGraph {
    GraphBuilder::new()
        .vertex("v1", w1)
        .vertex("v2", w2)
        .parallel("e", "v1", "v2", n)
        .build()
        .expect("banana fixture")
}

/// The theta graph `B(3)`.
pub fn theta() -> WeightedGraph {
    banana(3)
}

/// Genus-5 chain `v1 ≡3≡ v2 ≡2≡ v3 ≡3≡ v4`: three-gonal but with `W¹₃ = ∅`.
pub fn pdx() -> WeightedGraph {
    GraphBuilder::new()
        .vertex("v1", 0)
        .vertex("v2", 0)
        .vertex("v3", 0)
        .vertex("v4", 0)
        .parallel("a", "v1", "v2", 3)
        .parallel("b", "v2", "v3", 2)
        .parallel("c", "v3", "v4", 3)
        .build()
        .expect("pdx fixture")
}

/// Genus-5 graph with `3v1 ~ 3v4` but no degree-3 pseudo-harmonic morphism
/// to a tree. Vertex order: `v1, v2, v3, v4, v0`; `v0` is two-valent, so
/// the graph is not stable.
pub fn dvx() -> WeightedGraph {
    GraphBuilder::new()
        .vertex("v1", 0)
        .vertex("v2", 0)
        .vertex("v3", 0)
        .vertex("v4", 0)
        .vertex("v0", 0)
        .parallel("a", "v1", "v2", 3)
        .edge("e0", "v2", "v3")
        .edge("e2", "v2", "v0")
        .edge("e3", "v0", "v3")
        .parallel("c", "v3", "v4", 3)
        .build()
        .expect("dvx fixture")
}

/// Spider: weight-zero center `c` with bridges to weight-one feet `l1, l2, l3`.
pub fn spider_s3() -> WeightedGraph {
    GraphBuilder::new()
        .vertex("c", 0)
        .vertex("l1", 1)
        .vertex("l2", 1)
        .vertex("l3", 1)
        .edge("b1", "c", "l1")
        .edge("b2", "c", "l2")
        .edge("b3", "c", "l3")
        .build()
        .expect("spider fixture")
}

/// Spider whose feet also carry a loop each.
pub fn spider_s3_prime() -> WeightedGraph {
    GraphBuilder::new()
        .vertex("c", 0)
        .vertex("l1", 1)
        .vertex("l2", 1)
        .vertex("l3", 1)
        .edge("b1", "c", "l1")
        .edge("b2", "c", "l2")
        .edge("b3", "c", "l3")
        .edge("o1", "l1", "l1")
        .edge("o2", "l2", "l2")
        .edge("o3", "l3", "l3")
        .build()
        .expect("spider fixture")
}

/// Every named fixture, in a fixed order.
pub fn all() -> Vec<(&'static str, WeightedGraph)> {
    vec![
        ("B2", banana(2)),
        ("B3", banana(3)),
        ("B4", banana(4)),
        ("B2w01", banana_weighted(2, 0, 1)),
        ("B3w01", banana_weighted(3, 0, 1)),
        ("theta", theta()),
        ("pdx", pdx()),
        ("dvx", dvx()),
        ("S3", spider_s3()),
        ("S3prime", spider_s3_prime()),
    ]
}

/// Looks up a fixture by name; `B<n>` and `B<n>w<a><b>` accept any digits.
pub fn by_name(name: &str) -> Option<WeightedGraph> {
    if let Some((_, g)) = all().into_iter().find(|(n, _)| *n == name) {
        return Some(g);
    }
    let rest = name.strip_prefix('B')?;
    match rest.split_once('w') {
        None => rest.parse().ok().filter(|&n| n >= 1).map(banana),
        Some((n, w)) => {
            let n: usize = n.parse().ok()?;
            let digits: Vec<u32> = w.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()?;
            match digits.as_slice() {
                [a, b] if n >= 1 => Some(banana_weighted(n, *a, *b)),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        assert_eq!(pdx().genus(), 5);
        assert_eq!(dvx().genus(), 5);
        assert_eq!(spider_s3().genus(), 3);
        assert_eq!(spider_s3_prime().genus(), 6);
        // stability is asserted per fixture
        assert!(pdx().is_stable());
        assert!(!dvx().is_stable());
        assert!(theta().is_stable());
        assert!(!banana(2).is_stable());
        assert!(!banana_weighted(2, 0, 1).is_stable());
        assert!(banana_weighted(2, 1, 1).is_stable());
        assert!(spider_s3().is_stable());
        assert!(spider_s3_prime().is_stable());
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("B5").unwrap(), banana(5));
        assert_eq!(by_name("B3w12").unwrap(), banana_weighted(3, 1, 2));
        assert_eq!(by_name("pdx").unwrap(), pdx());
        assert!(by_name("nope").is_none());
    }
}
