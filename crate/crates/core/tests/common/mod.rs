//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use matroid_shift::intersection::BipartiteGraph;
use matroid_shift::{IndependenceOracle, Matrix01, MatroidDesc, MatroidKind, ProfitMatrix, Subset01};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const ALL_KINDS: [MatroidKind; 5] = [
    MatroidKind::Graphic,
    MatroidKind::Uniform,
    MatroidKind::Partition,
    MatroidKind::LinearGf2,
    MatroidKind::Transversal,
];

pub fn random_matroid(rng: &mut TestRng, kind: MatroidKind, d: usize) -> MatroidDesc {
    match kind {
        MatroidKind::Graphic => {
            let vertices = rng.gen_range(2..=4);
            let edges = (0..d)
                .map(|_| {
                    let u = rng.gen_range(0..vertices);
                    // occasional loop
                    let v = if rng.gen_bool(0.1) { u } else { rng.gen_range(0..vertices) };
                    (u, v)
                })
                .collect();
            MatroidDesc::graphic(vertices, edges).unwrap()
        }
        MatroidKind::Uniform => MatroidDesc::uniform(d, rng.gen_range(0..=d)).unwrap(),
        MatroidKind::Partition => {
            let blocks = rng.gen_range(1..=3);
            MatroidDesc::partition(
                (0..d).map(|_| rng.gen_range(0..blocks)).collect(),
                (0..blocks).map(|_| rng.gen_range(0..=2)).collect(),
            )
            .unwrap()
        }
        MatroidKind::LinearGf2 => {
            let rows = rng.gen_range(1..=3);
            MatroidDesc::linear_gf2(
                rows,
                (0..d).map(|_| (0..rows).map(|_| rng.gen_bool(0.5)).collect()).collect(),
            )
            .unwrap()
        }
        MatroidKind::Transversal => {
            let agents = rng.gen_range(1..=3);
            MatroidDesc::transversal(
                agents,
                (0..d)
                    .map(|_| (0..agents).filter(|_| rng.gen_bool(0.5)).collect())
                    .collect(),
            )
            .unwrap()
        }
    }
}

pub fn random_profits(rng: &mut TestRng, d: usize, n: usize, lo: i64, hi: i64) -> ProfitMatrix {
    ProfitMatrix::from_rows(
        &(0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// A random independent set: greedy over a random order, stopping at a random size.
pub fn random_independent<O: IndependenceOracle>(rng: &mut TestRng, m: &O, basis: bool) -> Subset01 {
    let d = m.ground_size();
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    let mut set = vec![false; d];
    let stop = if basis { usize::MAX } else { rng.gen_range(0..=d) };
    let mut size = 0;
    for e in order {
        if size >= stop {
            break;
        }
        set[e] = true;
        if m.independent(&set) {
            size += 1;
        } else {
            set[e] = false;
        }
    }
    Subset01::from_bits(set)
}

/// `y ∈ Sⁿ` with random columns.
pub fn random_product<O: IndependenceOracle>(rng: &mut TestRng, m: &O, n: usize, bases: bool) -> Matrix01 {
    let cols: Vec<Subset01> = (0..n).map(|_| random_independent(rng, m, bases)).collect();
    Matrix01::from_columns(m.ground_size(), &cols).unwrap()
}

/// Permutes every row of `y` independently.
pub fn shuffle_rows(rng: &mut TestRng, y: &Matrix01) -> Matrix01 {
    let mut x = Matrix01::zeros(y.d(), y.n());
    for i in 0..y.d() {
        let mut row = y.row(i).to_vec();
        row.shuffle(rng);
        for (j, b) in row.into_iter().enumerate() {
            x.set(i, j, b);
        }
    }
    x
}

pub fn all_matrices(d: usize, n: usize) -> impl Iterator<Item = Matrix01> {
    (0..1u64 << (d * n)).map(move |mask| Matrix01::from_flat(d, n, &Subset01::from_mask(d * n, mask)).unwrap())
}

pub fn is_connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; vertices];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every connected simple graph on `2..=max_vertices` labeled vertices.
pub fn connected_graphs(max_vertices: usize) -> Vec<MatroidDesc> {
    let mut out = Vec::new();
    for v in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .collect();
        for mask in 1u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if is_connected(v, &edges) {
                out.push(MatroidDesc::graphic(v, edges).unwrap());
            }
        }
    }
    out
}

/// Bipartite graphs with `1..=max_edges` edges and no isolated vertices, one
/// per isomorphism class (side-preserving).
///
/// A graph is the multiset of right-vertex neighbourhoods (bitmasks over the
/// left side); the canonical form minimizes the sorted mask list over all
/// permutations of the left vertices.
pub fn bipartite_graphs(max_edges: usize) -> Vec<BipartiteGraph> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for left in 1..=max_edges {
        let perms = permutations(left);
        let masks: Vec<u32> = (1u32..1 << left).collect();
        let mut chosen = Vec::new();
        collect_multisets(&masks, 0, max_edges, &mut chosen, &mut |ms| {
            let cover = ms.iter().fold(0u32, |a, m| a | m);
            if cover != (1 << left) - 1 {
                return;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut v: Vec<u32> = ms
                        .iter()
                        .map(|&m| (0..left).filter(|&i| m >> i & 1 == 1).fold(0, |a, i| a | 1 << p[i]))
                        .collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .unwrap();
            if seen.insert((left, canon.clone())) {
                let edges = canon
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &m)| (0..left).filter(move |&l| m >> l & 1 == 1).map(move |l| (l, r)))
                    .collect();
                out.push(BipartiteGraph::new(left, canon.len(), edges).unwrap());
            }
        });
    }
    out
}

fn collect_multisets(
    masks: &[u32],
    start: usize,
    budget: usize,
    chosen: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if !chosen.is_empty() {
        visit(chosen);
    }
    for k in start..masks.len() {
        let cost = masks[k].count_ones() as usize;
        if cost <= budget {
            chosen.push(masks[k]);
            collect_multisets(masks, k, budget - cost, chosen, visit);
            chosen.pop();
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// A fixed corpus of small matroids: every uniform matroid with `d ≤ max_d`,
/// plus seeded random members of the other families.
pub fn small_corpus(max_d: usize, per_kind: usize, seed: u64) -> Vec<MatroidDesc> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for d in 1..=max_d {
        for r in 0..=d {
            out.push(MatroidDesc::uniform(d, r).unwrap());
        }
        for kind in [MatroidKind::Graphic, MatroidKind::Partition, MatroidKind::LinearGf2, MatroidKind::Transversal] {
            for _ in 0..per_kind {
                out.push(random_matroid(&mut rng, kind, d));
            }
        }
    }
    out
}
