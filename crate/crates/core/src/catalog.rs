//! Standard matroid families and the enumerated test catalog.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::MatroidError;
use crate::matroid::Matroid;
use crate::subset::{SubsetMask, MAX_GROUND_SET};

/// `U_{k,n}`: every `k`-subset of `[n]` is a basis.
pub fn uniform(k: usize, n: usize) -> Result<Matroid, MatroidError> {
    if n == 0 || k > n {
        return Err(MatroidError::InvalidUniformParams { k, n });
    }
    if n > MAX_GROUND_SET {
        return Err(MatroidError::GroundSetTooLarge { n, max: MAX_GROUND_SET });
    }
    let bases = SubsetMask::all(n).filter(|s| s.len() == k).collect();
    Ok(Matroid::new_unchecked(n, bases))
}

/// An undirected multigraph; loops and parallel edges are allowed.
/// Vertices are `1..=vertices`, edge `i` (1-based, in list order) is ground
/// element `i` of the graphic matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Graph {
        Graph { vertices, edges }
    }

    /// The `k`-cycle `1-2-...-k-1`.
    pub fn cycle(k: usize) -> Graph {
        let edges = (1..=k).map(|i| (i, i % k + 1)).collect();
        Graph::new(k, edges)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v) in &self.edges {
            uf.union(u - 1, v - 1);
        }
        (0..self.vertices).all(|v| uf.find(v) == uf.find(0))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Cycle matroid of `g`: bases are the spanning forests.
pub fn graphic(g: &Graph) -> Result<Matroid, MatroidError> {
    let m = g.edges.len();
    if m == 0 {
        return Err(MatroidError::EmptyGraph);
    }
    if m > MAX_GROUND_SET {
        return Err(MatroidError::GroundSetTooLarge { n: m, max: MAX_GROUND_SET });
    }
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        for w in [u, v] {
            if w == 0 || w > g.vertices {
                return Err(MatroidError::InvalidEdge {
                    edge: i + 1,
                    vertex: w,
                    vertices: g.vertices,
                });
            }
        }
    }
    let mut uf = UnionFind::new(g.vertices);
    let mut rank = 0;
    for &(u, v) in &g.edges {
        if uf.union(u - 1, v - 1) {
            rank += 1;
        }
    }
    let bases = SubsetMask::all(m)
        .filter(|s| s.len() == rank)
        .filter(|s| {
            let mut uf = UnionFind::new(g.vertices);
            s.elements().all(|e| {
                let (u, v) = g.edges[e - 1];
                uf.union(u - 1, v - 1)
            })
        })
        .collect();
    Ok(Matroid::new_unchecked(m, bases))
}

/// A named catalog matroid.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: Matroid,
}

/// Connected multigraphs (loops and parallel edges allowed) with exactly
/// `edges` edges, one representative per isomorphism class, in a fixed order.
pub fn connected_multigraphs(edges: usize) -> Vec<Graph> {
    let mut level: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    level.insert(Vec::new());
    for _ in 0..edges {
        let mut next = BTreeSet::new();
        for current in &level {
            let vertices = vertex_count(current);
            // Either join two existing vertices (possibly equal) or hang a new one.
            for u in 1..=vertices {
                for v in u..=vertices {
                    next.insert(canonical_form(&push(current, (u, v))));
                }
                next.insert(canonical_form(&push(current, (u, vertices + 1))));
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|edges| Graph::new(vertex_count(&edges), edges))
        .collect()
}

fn push(edges: &[(usize, usize)], e: (usize, usize)) -> Vec<(usize, usize)> {
    let mut out = edges.to_vec();
    out.push(e);
    out
}

fn vertex_count(edges: &[(usize, usize)]) -> usize {
    edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(1)
}

/// Lexicographically least sorted edge list over all vertex relabelings.
fn canonical_form(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let n = vertex_count(edges);
    let mut perm: Vec<usize> = (0..=n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permute(&mut perm, 1, edges, &mut best);
    best.expect("at least one permutation")
}

fn permute(
    perm: &mut Vec<usize>,
    k: usize,
    edges: &[(usize, usize)],
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if k == perm.len() {
        let mut relabeled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().map_or(true, |b| relabeled < *b) {
            *best = Some(relabeled);
        }
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, edges, best);
        perm.swap(k, i);
    }
}

/// Uniform matroids `U_{k,n}` (`0 ≤ k ≤ n ≤ max_n`), graphic matroids of all
/// connected multigraphs with at most `max_n` edges, and the duals of all of
/// these. Exact duplicates (identical basis families) are dropped.
pub fn catalog(max_n: usize) -> Vec<CatalogEntry> {
    let mut primal: Vec<CatalogEntry> = Vec::new();
    for n in 1..=max_n {
        for k in 0..=n {
            primal.push(CatalogEntry {
                name: format!("U({k},{n})"),
                matroid: uniform(k, n).expect("valid uniform parameters"),
            });
        }
    }
    for m in 1..=max_n {
        for g in connected_multigraphs(m) {
            primal.push(CatalogEntry {
                name: format!("graph[{g}]"),
                matroid: graphic(&g).expect("catalog graph is valid"),
            });
        }
    }
    let duals: Vec<CatalogEntry> = primal
        .iter()
        .map(|e| CatalogEntry {
            name: format!("dual({})", e.name),
            matroid: e.matroid.dual(),
        })
        .collect();
    let mut seen: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    primal
        .into_iter()
        .chain(duals)
        .filter(|e| {
            let key = (e.matroid.n(), e.matroid.bases().iter().map(|b| b.bits()).collect());
            seen.insert(key)
        })
        .collect()
}
