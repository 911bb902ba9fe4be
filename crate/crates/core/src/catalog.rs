//! Small named graphs used as fixtures and as the vertex-transitive catalog.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::LabeledGraph;

fn transitive(g: LabeledGraph) -> LabeledGraph {
    g.declare_transitive().expect("catalog graph is regular")
}

/// Cycle `C_n`.
pub fn cycle(n: usize) -> LabeledGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    transitive(LabeledGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

pub fn complete(n: usize) -> LabeledGraph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    transitive(LabeledGraph::from_edges(n, edges).unwrap())
}

/// Star `K_{1,k}` with center 0.
pub fn star(k: usize) -> LabeledGraph {
    LabeledGraph::from_edges(k + 1, (1..=k).map(|i| (0, i))).unwrap()
}

/// Prism `C_n x K_2`; vertex `(i, layer)` has index `i + n * layer`.
pub fn prism(n: usize) -> LabeledGraph {
    assert!(n >= 3);
    let mut edges = Vec::new();
    for layer in 0..2 {
        for i in 0..n {
            edges.push((i + n * layer, (i + 1) % n + n * layer));
        }
    }
    edges.extend((0..n).map(|i| (i, i + n)));
    transitive(LabeledGraph::from_edges(2 * n, edges).unwrap())
}

/// Grid torus `C_a x C_b`; vertex `(x, y)` has index `x + a * y`.
pub fn grid_torus(a: usize, b: usize) -> LabeledGraph {
    assert!(a >= 3 && b >= 3);
    let idx = |x: usize, y: usize| (x % a) + a * (y % b);
    let mut edges = Vec::new();
    for y in 0..b {
        for x in 0..a {
            edges.push((idx(x, y), idx(x + 1, y)));
            edges.push((idx(x, y), idx(x, y + 1)));
        }
    }
    transitive(LabeledGraph::from_edges(a * b, edges).unwrap())
}

/// Petersen graph as the Kneser graph on 2-subsets of a 5-set.
pub fn petersen() -> LabeledGraph {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let mut edges = Vec::new();
    for (p, &(a, b)) in pairs.iter().enumerate() {
        for (q, &(c, d)) in pairs.iter().enumerate().skip(p + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((p, q));
            }
        }
    }
    transitive(LabeledGraph::from_edges(10, edges).unwrap())
}

/// Ball of radius `radius` around the root (vertex 0) of the infinite
/// `degree`-regular tree.
pub fn regular_tree_ball(degree: usize, radius: usize) -> LabeledGraph {
    assert!(degree >= 2);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_id = 1;
    for depth in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let children = if depth == 0 { degree } else { degree - 1 };
            for _ in 0..children {
                edges.push((v, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    LabeledGraph::from_edges(next_id, edges).unwrap()
}

/// Uniform-ish random connected simple `degree`-regular graph from the
/// pairing model, retrying until simple and connected.
pub fn random_regular<R: Rng>(n: usize, degree: usize, rng: &mut R) -> LabeledGraph {
    assert!((n * degree).is_multiple_of(2) && degree < n, "no {degree}-regular graph on {n} vertices");
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
        stubs.shuffle(rng);
        let pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let simple = pairs.iter().all(|&(u, v)| u != v) && {
            let mut keys: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            keys.sort_unstable();
            keys.windows(2).all(|w| w[0] != w[1])
        };
        if !simple {
            continue;
        }
        let g = LabeledGraph::from_edges(n, pairs).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}
