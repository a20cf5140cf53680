//! Concrete matroid families and their JSON description format.
//!
//! ```json
//! {"kind": "graphic", "d": 3, "params": {"vertices": 3, "edges": [[1,2],[2,3],[1,3]]}}
//! ```
//!
//! Vertices, blocks, agents and edge positions are 1-indexed on the wire and
//! 0-indexed in the Rust API. Edge order (and element order generally) defines
//! ground-element indices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::IndependenceOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatroidKind {
    Graphic,
    Uniform,
    Partition,
    LinearGf2,
    Transversal,
}

impl MatroidKind {
    pub fn name(self) -> &'static str {
        match self {
            MatroidKind::Graphic => "graphic",
            MatroidKind::Uniform => "uniform",
            MatroidKind::Partition => "partition",
            MatroidKind::LinearGf2 => "linear_gf2",
            MatroidKind::Transversal => "transversal",
        }
    }

    /// Kinds known to be strongly base orderable (all are gammoids).
    pub fn is_strongly_base_orderable(self) -> bool {
        matches!(
            self,
            MatroidKind::Uniform | MatroidKind::Partition | MatroidKind::Transversal
        )
    }
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Kind-specific payload, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Forests of a multigraph; element `k` is `edges[k]`. Loops are allowed
    /// and always dependent.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Sets of at most `rank` elements out of `d`.
    Uniform { d: usize, rank: usize },
    /// Element `i` lies in block `blocks[i]`; at most `capacities[b]` per block.
    Partition {
        blocks: Vec<usize>,
        capacities: Vec<usize>,
    },
    /// Element `i` is the column vector `columns[i]` of length `rows` over GF(2).
    LinearGf2 {
        rows: usize,
        columns: Vec<Vec<bool>>,
    },
    /// Element `i` may be represented by any agent in `adjacency[i]`.
    Transversal {
        agents: usize,
        adjacency: Vec<Vec<usize>>,
    },
}

/// A validated description of a concrete matroid over `0..d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "wire::Desc", into = "wire::Desc")]
pub struct MatroidDesc {
    family: Family,
    packed: Option<Vec<Vec<u64>>>,
}

impl MatroidDesc {
    pub fn new(family: Family) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidDescription(msg));
        let d = family_ground_size(&family);
        if d == 0 {
            return invalid("ground set must be nonempty".into());
        }
        match &family {
            Family::Graphic { vertices, edges } => {
                for (k, &(u, v)) in edges.iter().enumerate() {
                    if u >= *vertices || v >= *vertices {
                        return invalid(format!(
                            "edge {} has endpoint outside 1..={vertices}",
                            k + 1
                        ));
                    }
                }
            }
            Family::Uniform { d, rank } => {
                if rank > d {
                    return invalid(format!("uniform rank {rank} exceeds d = {d}"));
                }
            }
            Family::Partition { blocks, capacities } => {
                if let Some((i, b)) = blocks
                    .iter()
                    .enumerate()
                    .find(|&(_, &b)| b >= capacities.len())
                {
                    return invalid(format!(
                        "element {} assigned to block {} but only {} blocks declared",
                        i + 1,
                        b + 1,
                        capacities.len()
                    ));
                }
            }
            Family::LinearGf2 { rows, columns } => {
                if let Some(i) = columns.iter().position(|c| c.len() != *rows) {
                    return invalid(format!("column {} does not have {rows} entries", i + 1));
                }
            }
            Family::Transversal { agents, adjacency } => {
                for (i, adj) in adjacency.iter().enumerate() {
                    if adj.iter().any(|&a| a >= *agents) {
                        return invalid(format!(
                            "element {} references an agent outside 1..={agents}",
                            i + 1
                        ));
                    }
                }
            }
        }
        let packed = match &family {
            Family::LinearGf2 { columns, .. } => Some(columns.iter().map(|c| pack(c)).collect()),
            _ => None,
        };
        Ok(Self { family, packed })
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(Family::Graphic { vertices, edges })
    }

    pub fn uniform(d: usize, rank: usize) -> Result<Self> {
        Self::new(Family::Uniform { d, rank })
    }

    pub fn partition(blocks: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        Self::new(Family::Partition { blocks, capacities })
    }

    pub fn linear_gf2(rows: usize, columns: Vec<Vec<bool>>) -> Result<Self> {
        Self::new(Family::LinearGf2 { rows, columns })
    }

    pub fn transversal(agents: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(Family::Transversal { agents, adjacency })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn kind(&self) -> MatroidKind {
        match self.family {
            Family::Graphic { .. } => MatroidKind::Graphic,
            Family::Uniform { .. } => MatroidKind::Uniform,
            Family::Partition { .. } => MatroidKind::Partition,
            Family::LinearGf2 { .. } => MatroidKind::LinearGf2,
            Family::Transversal { .. } => MatroidKind::Transversal,
        }
    }

    pub fn ground_size(&self) -> usize {
        family_ground_size(&self.family)
    }
}

fn family_ground_size(family: &Family) -> usize {
    match family {
        Family::Graphic { edges, .. } => edges.len(),
        Family::Uniform { d, .. } => *d,
        Family::Partition { blocks, .. } => blocks.len(),
        Family::LinearGf2 { columns, .. } => columns.len(),
        Family::Transversal { adjacency, .. } => adjacency.len(),
    }
}

impl IndependenceOracle for MatroidDesc {
    fn ground_size(&self) -> usize {
        MatroidDesc::ground_size(self)
    }

    fn independent(&self, set: &[bool]) -> bool {
        debug_assert_eq!(set.len(), self.ground_size());
        let chosen = || set.iter().enumerate().filter_map(|(i, &b)| b.then_some(i));
        match &self.family {
            Family::Graphic { vertices, edges } => {
                let mut dsu = Dsu::new(*vertices);
                chosen().all(|k| dsu.union(edges[k].0, edges[k].1))
            }
            Family::Uniform { rank, .. } => chosen().count() <= *rank,
            Family::Partition { blocks, capacities } => {
                let mut used = vec![0usize; capacities.len()];
                chosen().all(|i| {
                    let b = blocks[i];
                    used[b] += 1;
                    used[b] <= capacities[b]
                })
            }
            Family::LinearGf2 { .. } => {
                let packed = self.packed.as_ref().expect("packed columns");
                let mut basis = XorBasis::default();
                chosen().all(|i| basis.insert(&packed[i]))
            }
            Family::Transversal { agents, adjacency } => {
                let elems: Vec<usize> = chosen().collect();
                if elems.len() > *agents {
                    return false;
                }
                let mut owner: Vec<Option<usize>> = vec![None; *agents];
                elems.iter().all(|&e| {
                    let mut seen = vec![false; *agents];
                    kuhn_augment(e, adjacency, &mut owner, &mut seen)
                })
            }
        }
    }
}

/// Disjoint-set forest with path halving and union by size.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

fn pack(bits: &[bool]) -> Vec<u64> {
    let mut limbs = vec![0u64; bits.len().div_ceil(64)];
    for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        limbs[i / 64] |= 1 << (i % 64);
    }
    limbs
}

/// Row-echelon basis over GF(2), keyed by leading (highest) set bit.
#[derive(Default)]
struct XorBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl XorBasis {
    fn leading_bit(v: &[u64]) -> Option<usize> {
        v.iter()
            .enumerate()
            .rev()
            .find(|(_, &l)| l != 0)
            .map(|(k, &l)| k * 64 + 63 - l.leading_zeros() as usize)
    }

    /// Reduces `v` against the basis; returns true (and keeps it) when the
    /// remainder is nonzero.
    fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (lead, row) in &self.rows {
            if v[lead / 64] >> (lead % 64) & 1 == 1 {
                v.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            }
        }
        match Self::leading_bit(&v) {
            Some(lead) => {
                // Keep rows sorted by descending leading bit so one pass reduces.
                let pos = self.rows.partition_point(|(l, _)| *l > lead);
                self.rows.insert(pos, (lead, v));
                true
            }
            None => false,
        }
    }
}

fn kuhn_augment(
    e: usize,
    adjacency: &[Vec<usize>],
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &a in &adjacency[e] {
        if seen[a] {
            continue;
        }
        seen[a] = true;
        match owner[a] {
            None => {
                owner[a] = Some(e);
                return true;
            }
            Some(f) => {
                if kuhn_augment(f, adjacency, owner, seen) {
                    owner[a] = Some(e);
                    return true;
                }
            }
        }
    }
    false
}

mod wire {
    use serde::{Deserialize, Serialize};

    use super::{Family, MatroidDesc};
    use crate::error::Error;

    #[derive(Serialize, Deserialize)]
    pub struct Desc {
        pub d: usize,
        #[serde(flatten)]
        pub body: Body,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", content = "params", rename_all = "snake_case")]
    pub enum Body {
        Graphic {
            vertices: usize,
            edges: Vec<[usize; 2]>,
        },
        Uniform {
            rank: usize,
        },
        Partition {
            blocks: Vec<usize>,
            capacities: Vec<usize>,
        },
        LinearGf2 {
            rows: usize,
            columns: Vec<Vec<u8>>,
        },
        Transversal {
            agents: usize,
            adjacency: Vec<Vec<usize>>,
        },
    }

    fn one_based(k: usize, what: &str) -> Result<usize, Error> {
        k.checked_sub(1)
            .ok_or_else(|| Error::InvalidDescription(format!("{what} indices are 1-based, got 0")))
    }

    impl TryFrom<Desc> for MatroidDesc {
        type Error = Error;

        fn try_from(w: Desc) -> Result<Self, Error> {
            let family = match w.body {
                Body::Graphic { vertices, edges } => Family::Graphic {
                    vertices,
                    edges: edges
                        .into_iter()
                        .map(|[u, v]| Ok((one_based(u, "vertex")?, one_based(v, "vertex")?)))
                        .collect::<Result<_, Error>>()?,
                },
                Body::Uniform { rank } => Family::Uniform { d: w.d, rank },
                Body::Partition { blocks, capacities } => Family::Partition {
                    blocks: blocks
                        .into_iter()
                        .map(|b| one_based(b, "block"))
                        .collect::<Result<_, _>>()?,
                    capacities,
                },
                Body::LinearGf2 { rows, columns } => Family::LinearGf2 {
                    rows,
                    columns: columns
                        .into_iter()
                        .map(|c| {
                            c.into_iter()
                                .map(|b| match b {
                                    0 => Ok(false),
                                    1 => Ok(true),
                                    _ => Err(Error::InvalidDescription(format!(
                                        "GF(2) entry {b} is not 0 or 1"
                                    ))),
                                })
                                .collect()
                        })
                        .collect::<Result<_, _>>()?,
                },
                Body::Transversal { agents, adjacency } => Family::Transversal {
                    agents,
                    adjacency: adjacency
                        .into_iter()
                        .map(|adj| {
                            adj.into_iter()
                                .map(|a| one_based(a, "agent"))
                                .collect::<Result<_, _>>()
                        })
                        .collect::<Result<_, _>>()?,
                },
            };
            let desc = MatroidDesc::new(family)?;
            if desc.ground_size() != w.d {
                return Err(Error::InvalidDescription(format!(
                    "declared d = {} but params describe {} elements",
                    w.d,
                    desc.ground_size()
                )));
            }
            Ok(desc)
        }
    }

    impl From<MatroidDesc> for Desc {
        fn from(m: MatroidDesc) -> Self {
            let d = m.ground_size();
            let body = match m.family {
                Family::Graphic { vertices, edges } => Body::Graphic {
                    vertices,
                    edges: edges.into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
                },
                Family::Uniform { rank, .. } => Body::Uniform { rank },
                Family::Partition { blocks, capacities } => Body::Partition {
                    blocks: blocks.into_iter().map(|b| b + 1).collect(),
                    capacities,
                },
                Family::LinearGf2 { rows, columns } => Body::LinearGf2 {
                    rows,
                    columns: columns
                        .into_iter()
                        .map(|c| c.into_iter().map(u8::from).collect())
                        .collect(),
                },
                Family::Transversal { agents, adjacency } => Body::Transversal {
                    agents,
                    adjacency: adjacency
                        .into_iter()
                        .map(|a| a.into_iter().map(|x| x + 1).collect())
                        .collect(),
                },
            };
            Desc { d, body }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{greedy_max, is_independent, rank, Subset01, Weights};

    fn triangle() -> MatroidDesc {
        MatroidDesc::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn set(d: usize, idx: &[usize]) -> Subset01 {
        Subset01::from_indices(d, idx.iter().copied()).unwrap()
    }

    #[test]
    fn graphic_triangle_independence() {
        let m = triangle();
        assert!(is_independent(&m, &set(3, &[0, 1])).unwrap());
        assert!(!is_independent(&m, &set(3, &[0, 1, 2])).unwrap());
        assert_eq!(rank(&m, &Subset01::full(3)).unwrap(), 2);
    }

    #[test]
    fn graphic_loop_is_dependent() {
        let m = MatroidDesc::graphic(2, vec![(0, 0), (0, 1)]).unwrap();
        assert!(!is_independent(&m, &set(2, &[0])).unwrap());
        assert!(is_independent(&m, &set(2, &[1])).unwrap());
    }

    #[test]
    fn uniform_cardinality() {
        let m = MatroidDesc::uniform(4, 2).unwrap();
        assert!(!is_independent(&m, &set(4, &[0, 1, 2])).unwrap());
        assert_eq!(rank(&m, &Subset01::full(4)).unwrap(), 2);
    }

    #[test]
    fn linear_gf2_rank() {
        let m = MatroidDesc::linear_gf2(
            2,
            vec![vec![true, false], vec![false, true], vec![true, true]],
        )
        .unwrap();
        assert_eq!(rank(&m, &Subset01::full(3)).unwrap(), 2);
        assert!(is_independent(&m, &set(3, &[0, 2])).unwrap());
        assert!(!is_independent(&m, &Subset01::full(3)).unwrap());
    }

    #[test]
    fn linear_gf2_zero_column_is_dependent() {
        let m = MatroidDesc::linear_gf2(70, vec![vec![false; 70], {
            let mut c = vec![false; 70];
            c[68] = true;
            c
        }])
        .unwrap();
        assert!(!is_independent(&m, &set(2, &[0])).unwrap());
        assert!(is_independent(&m, &set(2, &[1])).unwrap());
    }

    #[test]
    fn partition_capacities() {
        let m = MatroidDesc::partition(vec![0, 0, 1, 1], vec![1, 2]).unwrap();
        assert!(!is_independent(&m, &set(4, &[0, 1])).unwrap());
        assert!(is_independent(&m, &set(4, &[0, 2, 3])).unwrap());
    }

    #[test]
    fn transversal_needs_distinct_representatives() {
        // elements 0 and 1 both only adjacent to agent 0
        let m = MatroidDesc::transversal(2, vec![vec![0], vec![0], vec![0, 1]]).unwrap();
        assert!(!is_independent(&m, &set(3, &[0, 1])).unwrap());
        assert!(is_independent(&m, &set(3, &[0, 2])).unwrap());
        assert!(is_independent(&m, &set(3, &[1, 2])).unwrap());
        assert_eq!(rank(&m, &Subset01::full(3)).unwrap(), 2);
    }

    #[test]
    fn greedy_triangle() {
        let w = Weights::new(vec![4, 2, 5]).unwrap();
        let s = greedy_max(&triangle(), &w, false).unwrap();
        assert_eq!(s, set(3, &[0, 2]));
        assert_eq!(w.total(&s), 9);
    }

    #[test]
    fn invalid_descriptions() {
        assert!(MatroidDesc::graphic(2, vec![(0, 2)]).is_err());
        assert!(MatroidDesc::uniform(2, 3).is_err());
        assert!(MatroidDesc::uniform(0, 0).is_err());
        assert!(MatroidDesc::partition(vec![0, 1], vec![1]).is_err());
        assert!(MatroidDesc::linear_gf2(2, vec![vec![true]]).is_err());
        assert!(MatroidDesc::transversal(1, vec![vec![1]]).is_err());
    }

    #[test]
    fn json_round_trip_and_indexing() {
        let text = r#"{"kind":"graphic","d":3,"params":{"vertices":3,"edges":[[1,2],[2,3],[1,3]]}}"#;
        let m: MatroidDesc = serde_json::from_str(text).unwrap();
        assert_eq!(m, triangle());
        let back: serde_json::Value = serde_json::to_value(&m).unwrap();
        assert_eq!(back, serde_json::from_str::<serde_json::Value>(text).unwrap());

        let p: MatroidDesc = serde_json::from_str(
            r#"{"kind":"partition","d":3,"params":{"blocks":[1,1,2],"capacities":[1,1]}}"#,
        )
        .unwrap();
        assert_eq!(p, MatroidDesc::partition(vec![0, 0, 1], vec![1, 1]).unwrap());

        let l: MatroidDesc = serde_json::from_str(
            r#"{"kind":"linear_gf2","d":2,"params":{"rows":2,"columns":[[1,0],[1,1]]}}"#,
        )
        .unwrap();
        assert_eq!(l.kind(), MatroidKind::LinearGf2);
    }

    #[test]
    fn json_rejects_bad_input() {
        for bad in [
            r#"{"kind":"uniform","d":3,"params":{"rank":4}}"#,
            r#"{"kind":"graphic","d":2,"params":{"vertices":3,"edges":[[1,2]]}}"#,
            r#"{"kind":"graphic","d":1,"params":{"vertices":3,"edges":[[0,2]]}}"#,
            r#"{"kind":"linear_gf2","d":1,"params":{"rows":1,"columns":[[2]]}}"#,
            r#"{"kind":"matching","d":1,"params":{}}"#,
        ] {
            assert!(serde_json::from_str::<MatroidDesc>(bad).is_err(), "{bad}");
        }
    }
}
