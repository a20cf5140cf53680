//! Shifted optimization over the intersection of two strongly base orderable
//! matroids, and a complete solver for bipartite matchings.
//!
//! For such `S₁, S₂` the shuffle set of `S = S₁ ∩ S₂` is the intersection of
//! the two shuffle matroids, `[Sⁿ] = [S₁ⁿ] ∩ [S₂ⁿ]`, so weighted matroid
//! intersection yields the optimal shifted value. Recovering an optimal
//! `y ∈ Sⁿ` from it is only implemented for bipartite matchings, where
//! `n`-edge-coloring the multigraph of row sums splits `x` into matchings.

use serde::{Deserialize, Serialize};

use crate::constructions::{LiftOracle, MatroidPartition};
use crate::error::{check_dim, Error, Result};
use crate::families::MatroidDesc;
use crate::matrix::{Matrix01, ProfitMatrix};
use crate::matroid::{Augmenter, IndependenceOracle, Subset01, Weights};
use crate::shifted::ShiftedSolution;

/// Exchange queries relative to a current common independent set.
pub trait ExchangeOracle {
    fn ground_size(&self) -> usize;

    fn set_current(&mut self, set: &[bool]);

    /// `current + x` independent.
    fn can_add(&mut self, x: usize) -> bool;

    /// `current − y + x` independent.
    fn can_exchange(&mut self, y: usize, x: usize) -> bool;
}

/// Answers exchange queries by calling a stateless oracle on the modified set.
pub struct StatelessExchange<O> {
    oracle: O,
    current: Vec<bool>,
}

impl<O: IndependenceOracle> StatelessExchange<O> {
    pub fn new(oracle: O) -> Self {
        let current = vec![false; oracle.ground_size()];
        Self { oracle, current }
    }
}

impl<O: IndependenceOracle> ExchangeOracle for StatelessExchange<O> {
    fn ground_size(&self) -> usize {
        self.current.len()
    }

    fn set_current(&mut self, set: &[bool]) {
        self.current.copy_from_slice(set);
    }

    fn can_add(&mut self, x: usize) -> bool {
        self.current[x] = true;
        let ok = self.oracle.independent(&self.current);
        self.current[x] = false;
        ok
    }

    fn can_exchange(&mut self, y: usize, x: usize) -> bool {
        self.current[y] = false;
        self.current[x] = true;
        let ok = self.oracle.independent(&self.current);
        self.current[x] = false;
        self.current[y] = true;
        ok
    }
}

/// Exchange queries on a matroid union, reusing the decomposition of the
/// current set instead of partitioning from scratch per query.
pub struct PartitionExchange<O> {
    base: MatroidPartition<O>,
    current: MatroidPartition<O>,
}

impl<O: IndependenceOracle + Clone> PartitionExchange<O> {
    pub fn new(empty: MatroidPartition<O>) -> Self {
        Self {
            current: empty.clone(),
            base: empty,
        }
    }
}

impl<O: IndependenceOracle + Clone> ExchangeOracle for PartitionExchange<O> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn set_current(&mut self, set: &[bool]) {
        let mut p = self.base.clone();
        for (e, _) in set.iter().enumerate().filter(|(_, &b)| b) {
            let added = p.try_add(e);
            assert!(added, "current set must be independent in the union");
        }
        self.current = p;
    }

    fn can_add(&mut self, x: usize) -> bool {
        self.current.clone().try_add(x)
    }

    fn can_exchange(&mut self, y: usize, x: usize) -> bool {
        let mut p = self.current.clone();
        p.remove(y);
        p.try_add(x)
    }
}

/// Max-weight common independent set of two matroids given as oracles.
pub fn weighted_matroid_intersection_max<A, B>(m1: &A, m2: &B, w: &Weights) -> Result<Subset01>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    weighted_intersection_with(
        &mut StatelessExchange::new(m1),
        &mut StatelessExchange::new(m2),
        w,
    )
}

/// Weighted matroid intersection by successive shortest augmenting paths.
///
/// Exchange graph for the current set `I`: `y → x` when `I − y + x` is
/// independent in the first matroid, `x → y` when it is in the second;
/// sources can be added in the first, sinks in the second. Node lengths are
/// `−w(x)` outside `I` and `w(y)` inside. Each stage takes a minimum-length
/// path with fewest arcs (ties to the lowest sink index), and the best set
/// over all cardinalities is returned.
pub fn weighted_intersection_with<A, B>(m1: &mut A, m2: &mut B, w: &Weights) -> Result<Subset01>
where
    A: ExchangeOracle + ?Sized,
    B: ExchangeOracle + ?Sized,
{
    let d = m1.ground_size();
    check_dim("second matroid ground size", d, m2.ground_size())?;
    check_dim("weight vector length", d, w.len())?;

    let mut current = vec![false; d];
    let mut best = (0i64, current.clone());
    let mut weight = 0i64;
    loop {
        m1.set_current(&current);
        m2.set_current(&current);
        let inside: Vec<usize> = (0..d).filter(|&e| current[e]).collect();
        let outside: Vec<usize> = (0..d).filter(|&e| !current[e]).collect();

        let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); d];
        for &y in &inside {
            for &x in &outside {
                if m1.can_exchange(y, x) {
                    arcs[y].push(x);
                }
                if m2.can_exchange(y, x) {
                    arcs[x].push(y);
                }
            }
        }
        let is_sink: Vec<bool> = (0..d)
            .map(|e| !current[e] && m2.can_add(e))
            .collect();
        let length = |e: usize| if current[e] { w.get(e) } else { -w.get(e) };

        // Bellman-Ford on (length, arcs) pairs; no negative cycles exist
        // while `current` is max-weight for its size.
        let mut dist: Vec<Option<(i64, usize)>> = vec![None; d];
        let mut parent: Vec<Option<usize>> = vec![None; d];
        for &x in &outside {
            if m1.can_add(x) {
                dist[x] = Some((length(x), 0));
            }
        }
        for _ in 0..d {
            let mut changed = false;
            for u in 0..d {
                let Some((du, hu)) = dist[u] else { continue };
                for &v in &arcs[u] {
                    let cand = (du + length(v), hu + 1);
                    if dist[v].is_none_or(|dv| cand < dv) {
                        dist[v] = Some(cand);
                        parent[v] = Some(u);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let target = (0..d)
            .filter(|&e| is_sink[e])
            .filter_map(|e| dist[e].map(|dv| (dv, e)))
            .min();
        let Some((_, mut node)) = target else { break };
        loop {
            current[node] = !current[node];
            weight += if current[node] { w.get(node) } else { -w.get(node) };
            match parent[node] {
                Some(p) => node = p,
                None => break,
            }
        }
        if weight > best.0 {
            best = (weight, current.clone());
        }
    }
    Ok(Subset01::from_bits(best.1))
}

/// Two strongly base orderable matroids on a shared ground set, `n` copies,
/// and a profit matrix.
#[derive(Debug, Clone)]
pub struct IntersectionInstance {
    m1: MatroidDesc,
    m2: MatroidDesc,
    n: usize,
    c: ProfitMatrix,
}

impl IntersectionInstance {
    pub fn new(m1: MatroidDesc, m2: MatroidDesc, n: usize, c: ProfitMatrix) -> Result<Self> {
        for m in [&m1, &m2] {
            if !m.kind().is_strongly_base_orderable() {
                return Err(Error::DisallowedKind(m.kind().name().into()));
            }
        }
        check_dim("second matroid ground size", m1.ground_size(), m2.ground_size())?;
        check_dim("profit rows", m1.ground_size(), c.d())?;
        check_dim("profit columns", n, c.n())?;
        if n == 0 {
            return Err(Error::InvalidInput("number of copies n must be positive".into()));
        }
        Ok(Self { m1, m2, n, c })
    }

    pub fn m1(&self) -> &MatroidDesc {
        &self.m1
    }

    pub fn m2(&self) -> &MatroidDesc {
        &self.m2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn profits(&self) -> &ProfitMatrix {
        &self.c
    }
}

/// Maximizes `c̄x` over `[S₁ⁿ] ∩ [S₂ⁿ]`; returns the value and the optimal `x`.
fn shuffle_intersection_optimum(inst: &IntersectionInstance) -> Result<(i64, Matrix01)> {
    let (d, n) = (inst.m1.ground_size(), inst.n);
    let cbar = inst.c.shift();
    let w = Weights::new(cbar.matrix().entries().to_vec())?;
    let mut ex1 = PartitionExchange::new(MatroidPartition::new(LiftOracle::new(&inst.m1, n)?, n)?);
    let mut ex2 = PartitionExchange::new(MatroidPartition::new(LiftOracle::new(&inst.m2, n)?, n)?);
    let set = weighted_intersection_with(&mut ex1, &mut ex2, &w)?;
    let x = Matrix01::from_flat(d, n, &set)?;
    Ok((cbar.dot(&x), x))
}

/// `max{c̄x̄ : x ∈ (S₁ ∩ S₂)ⁿ}`.
pub fn shifted_value_intersection(inst: &IntersectionInstance) -> Result<i64> {
    shuffle_intersection_optimum(inst).map(|(v, _)| v)
}

/// Bipartite graph with `left + right` vertices; edge `k` is ground element `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BipartiteWire", into = "BipartiteWire")]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// `edges` are 0-based `(left, right)` pairs.
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(k) = edges.iter().position(|&(l, r)| l >= left || r >= right) {
            return Err(Error::InvalidInput(format!(
                "edge {} has an endpoint outside the declared sides",
                k + 1
            )));
        }
        Ok(Self { left, right, edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The two degree-one partition matroids whose intersection is the
    /// matchings of the graph.
    pub fn matching_matroids(&self) -> Result<(MatroidDesc, MatroidDesc)> {
        let m1 = MatroidDesc::partition(
            self.edges.iter().map(|e| e.0).collect(),
            vec![1; self.left],
        )?;
        let m2 = MatroidDesc::partition(
            self.edges.iter().map(|e| e.1).collect(),
            vec![1; self.right],
        )?;
        Ok((m1, m2))
    }

    pub fn is_matching(&self, s: &Subset01) -> bool {
        let mut used_l = vec![false; self.left];
        let mut used_r = vec![false; self.right];
        s.iter().all(|k| {
            let (l, r) = self.edges[k];
            !std::mem::replace(&mut used_l[l], true) && !std::mem::replace(&mut used_r[r], true)
        })
    }
}

#[derive(Serialize, Deserialize)]
struct BipartiteWire {
    left: usize,
    right: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<BipartiteWire> for BipartiteGraph {
    type Error = Error;

    fn try_from(w: BipartiteWire) -> Result<Self> {
        let edges = w
            .edges
            .into_iter()
            .map(|[l, r]| match (l.checked_sub(1), r.checked_sub(1)) {
                (Some(l), Some(r)) => Ok((l, r)),
                _ => Err(Error::InvalidInput("edge endpoints are 1-based".into())),
            })
            .collect::<Result<_>>()?;
        BipartiteGraph::new(w.left, w.right, edges)
    }
}

impl From<BipartiteGraph> for BipartiteWire {
    fn from(g: BipartiteGraph) -> Self {
        BipartiteWire {
            left: g.left,
            right: g.right,
            edges: g.edges.into_iter().map(|(l, r)| [l + 1, r + 1]).collect(),
        }
    }
}

/// Splits `x` into `n` matchings with the same row sums by `n`-edge-coloring
/// the multigraph carrying `Σⱼ x_{e,j}` copies of each edge `e`.
pub fn fiber_bipartite_matching(g: &BipartiteGraph, n: usize, x: &Matrix01) -> Result<Matrix01> {
    check_dim("matrix rows", g.edges.len(), x.d())?;
    check_dim("matrix columns", n, x.n())?;
    let mult = x.row_sums();
    let mut deg_l = vec![0usize; g.left];
    let mut deg_r = vec![0usize; g.right];
    for (k, &(l, r)) in g.edges.iter().enumerate() {
        deg_l[l] += mult[k];
        deg_r[r] += mult[k];
    }
    if let Some(&top) = deg_l.iter().chain(&deg_r).filter(|&&dg| dg > n).max() {
        return Err(Error::NotInShuffleSet(format!(
            "a vertex has multidegree {top} > n = {n}"
        )));
    }

    // each copy remembers the column it occupies in x as its preferred color
    let copies: Vec<(usize, usize)> = (0..x.d())
        .flat_map(|k| (0..n).filter(move |&j| x.get(k, j)).map(move |j| (k, j)))
        .collect();
    let mut coloring = EdgeColoring::new(g, n);
    for (id, &(edge, preferred)) in copies.iter().enumerate() {
        coloring.insert(id, edge, preferred);
    }
    let mut y = Matrix01::zeros(x.d(), n);
    for (id, &(edge, _)) in copies.iter().enumerate() {
        let c = coloring.color[id].expect("every copy is colored");
        debug_assert!(!y.get(edge, c));
        y.set(edge, c, true);
    }
    Ok(y)
}

/// Proper edge coloring of a bipartite multigraph by alternating-path swaps.
struct EdgeColoring<'g> {
    g: &'g BipartiteGraph,
    /// `slot[side][vertex][color]` holds the copy id using that color there.
    slot: [Vec<Vec<Option<usize>>>; 2],
    endpoints: Vec<(usize, usize)>,
    color: Vec<Option<usize>>,
}

impl<'g> EdgeColoring<'g> {
    fn new(g: &'g BipartiteGraph, n: usize) -> Self {
        Self {
            g,
            slot: [vec![vec![None; n]; g.left], vec![vec![None; n]; g.right]],
            endpoints: Vec::new(),
            color: Vec::new(),
        }
    }

    fn free(&self, side: usize, v: usize) -> usize {
        self.slot[side][v]
            .iter()
            .position(Option::is_none)
            .expect("degree bound leaves a free color")
    }

    fn insert(&mut self, id: usize, edge: usize, preferred: usize) {
        let (l, r) = self.g.edges[edge];
        self.endpoints.push((l, r));
        self.color.push(None);
        let a = if self.slot[0][l][preferred].is_none() && self.slot[1][r][preferred].is_none() {
            preferred
        } else {
            self.free(0, l)
        };
        if self.slot[1][r][a].is_some() {
            let b = self.free(1, r);
            self.swap_path(r, a, b);
        }
        self.slot[0][l][a] = Some(id);
        self.slot[1][r][a] = Some(id);
        self.color[id] = Some(a);
    }

    /// Swaps colors `a` and `b` along the alternating path that starts at
    /// right vertex `start` with an `a`-colored edge. In a bipartite graph
    /// the path cannot end at the left vertex where `a` is free.
    fn swap_path(&mut self, start: usize, a: usize, b: usize) {
        let mut path = Vec::new();
        let (mut side, mut v, mut c) = (1usize, start, a);
        while let Some(id) = self.slot[side][v][c] {
            path.push(id);
            let (l, r) = self.endpoints[id];
            (side, v) = if side == 1 { (0, l) } else { (1, r) };
            c = if c == a { b } else { a };
        }
        for &id in &path {
            let (l, r) = self.endpoints[id];
            let old = self.color[id].unwrap();
            self.slot[0][l][old] = None;
            self.slot[1][r][old] = None;
        }
        for &id in &path {
            let (l, r) = self.endpoints[id];
            let new = if self.color[id] == Some(a) { b } else { a };
            self.slot[0][l][new] = Some(id);
            self.slot[1][r][new] = Some(id);
            self.color[id] = Some(new);
        }
    }
}

/// Complete shifted solver over the matchings of a bipartite graph.
pub fn solve_shifted_bipartite_matching(
    g: &BipartiteGraph,
    n: usize,
    c: &ProfitMatrix,
) -> Result<ShiftedSolution> {
    let (m1, m2) = g.matching_matroids()?;
    let inst = IntersectionInstance::new(m1, m2, n, c.clone())?;
    let (value, x) = shuffle_intersection_optimum(&inst)?;
    let y = fiber_bipartite_matching(g, n, &x)?;
    let solution = ShiftedSolution::evaluate(y, c);
    assert_eq!(solution.value(), value, "edge coloring must preserve the objective");
    Ok(solution)
}
