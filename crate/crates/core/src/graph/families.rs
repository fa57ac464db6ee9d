//! Standard graph families and seeded random instances used by the test
//! suites, the benchmarks in the README, and for quick experiments.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{boundary_of, Domain, GraphBuilder, GraphFunction, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star with center 0 and `k` leaves `1..=k` marked as boundary; unit
/// weights and measure. Returns the graph and the domain `Ω = {0}`.
pub fn star(k: usize) -> (WeightedGraph, Domain) {
    let mut b = GraphBuilder::with_vertices(k + 1);
    b.set_boundary(0, false).unwrap();
    for leaf in 1..=k {
        b.add_edge(0, leaf, 1.0).unwrap();
        b.set_boundary(leaf, true).unwrap();
    }
    let g = b.build().unwrap();
    let dom = g.marked_domain().unwrap();
    (g, dom)
}

/// Path `0 – 1 – … – (n−1)` with unit weights and measure.
pub fn path(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges, None).unwrap()
}

/// Triangle with unit weights and measure and constant potential `h`.
pub fn triangle_with_potential(h: f64) -> WeightedGraph {
    WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], None)
        .unwrap()
        .with_potential(vec![h; 3])
        .unwrap()
}

/// `nx × ny` grid, 4-neighbor, unit weights and measure.
pub fn grid(nx: usize, ny: usize) -> WeightedGraph {
    let idx = |i: usize, j: usize| i * ny + j;
    let mut edges = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            if i + 1 < nx {
                edges.push((idx(i, j), idx(i + 1, j), 1.0));
            }
            if j + 1 < ny {
                edges.push((idx(i, j), idx(i, j + 1), 1.0));
            }
        }
    }
    WeightedGraph::from_edges(nx * ny, &edges, None).unwrap()
}

/// `nx × ny` interior grid surrounded by a one-vertex-thick boundary ring
/// (the `(nx+2) × (ny+2)` grid without its four corners, which have no
/// interior neighbor). Unit weights and measure; ring vertices are flagged.
pub fn grid_dirichlet(nx: usize, ny: usize) -> (WeightedGraph, Domain) {
    let (mx, my) = (nx + 2, ny + 2);
    let is_corner = |i: usize, j: usize| (i == 0 || i == mx - 1) && (j == 0 || j == my - 1);
    let mut index = vec![usize::MAX; mx * my];
    let mut b = GraphBuilder::new();
    for i in 0..mx {
        for j in 0..my {
            if is_corner(i, j) {
                continue;
            }
            let v = b.add_vertex(format!("{i},{j}").as_str(), 1.0).unwrap();
            let ring = i == 0 || j == 0 || i == mx - 1 || j == my - 1;
            b.set_boundary(v, ring).unwrap();
            index[i * my + j] = v;
        }
    }
    for i in 0..mx {
        for j in 0..my {
            let v = index[i * my + j];
            if v == usize::MAX {
                continue;
            }
            if i + 1 < mx && index[(i + 1) * my + j] != usize::MAX {
                b.add_edge(v, index[(i + 1) * my + j], 1.0).unwrap();
            }
            if j + 1 < my && index[i * my + j + 1] != usize::MAX {
                b.add_edge(v, index[i * my + j + 1], 1.0).unwrap();
            }
        }
    }
    let g = b.build().unwrap();
    let dom = g.marked_domain().unwrap();
    (g, dom)
}

/// Random connected graph: a random spanning tree plus extra edges, with
/// `ω ∈ (0, 2]` and `μ ∈ [0.5, 2]`.
pub fn random_connected(n: usize, seed: u64) -> WeightedGraph {
    let mut rng = rng(seed);
    let mut b = GraphBuilder::with_vertices(n);
    for v in 0..n {
        b.set_measure(v, rng.random_range(0.5..=2.0)).unwrap();
    }
    let weight = |rng: &mut ChaCha8Rng| 2.0 * (1.0 - rng.random::<f64>());
    let mut present = std::collections::HashSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        b.add_edge(u, v, weight(&mut rng)).unwrap();
        present.insert((u, v));
    }
    let extra = n;
    for _ in 0..extra {
        let x = rng.random_range(0..n);
        let y = rng.random_range(0..n);
        let key = (x.min(y), x.max(y));
        if x != y && present.insert(key) {
            b.add_edge(key.0, key.1, weight(&mut rng)).unwrap();
        }
    }
    b.build().unwrap()
}

/// [`random_connected`] with a potential `h ∈ [0.5, 3]`.
pub fn random_whole_graph(n: usize, seed: u64) -> WeightedGraph {
    let g = random_connected(n, seed);
    let mut rng = rng(seed ^ 0x5eed);
    let h = (0..n).map(|_| rng.random_range(0.5..=3.0)).collect();
    g.with_potential(h).unwrap()
}

/// [`random_connected`] with a random nonempty interior whose boundary is
/// nonempty; the closure need not be the whole graph.
pub fn random_dirichlet(n: usize, interior_size: usize, seed: u64) -> (WeightedGraph, Domain) {
    assert!(n >= 2 && interior_size >= 1 && interior_size < n);
    let g = random_connected(n, seed);
    let mut rng = rng(seed ^ 0xd1e1);
    let mut verts: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        verts.swap(i, j);
    }
    let mut interior = verts[..interior_size].to_vec();
    interior.sort_unstable();
    let dom = boundary_of(&g, &interior).unwrap();
    (g, dom)
}

pub fn random_function(n: usize, rng: &mut impl Rng) -> GraphFunction {
    GraphFunction::new((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
}

/// Standard-normal values on the interior, zero elsewhere.
pub fn random_admissible(dom: &Domain, rng: &mut impl Rng) -> GraphFunction {
    let vals: Vec<f64> = dom
        .interior()
        .iter()
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    dom.extend(&vals).unwrap()
}
