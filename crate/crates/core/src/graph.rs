//! Weighted symmetric graphs and the graph families and products used
//! throughout the crate.
//!
//! Multigraphs are encoded by integer edge weights (the digon is the two-vertex
//! graph with off-diagonal weight 2) and a self-loop adds 1 to the diagonal.
//! Product vertex orders are fixed: row-major over `(v, w)`, grouped by the
//! left factor's vertex.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Upper bound on the vertex count of any constructed graph.
pub const MAX_VERTICES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    weights: Matrix,
    labels: Vec<String>,
}

/// Vertex `(v, w)` of a corona `G ∘ H`: `w = 0` is the base copy of `v`,
/// `w = 1..=m` are the vertices of `v`'s private copy of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CoronaVertex {
    pub base: usize,
    pub pendant: usize,
}

impl CoronaVertex {
    pub fn new(base: usize, pendant: usize) -> Self {
        CoronaVertex { base, pendant }
    }

    /// Index of this vertex in `corona(G, H)` where `H` has `m` vertices.
    pub fn index(self, m: usize) -> usize {
        self.base * (m + 1) + self.pendant
    }

    pub fn from_index(index: usize, m: usize) -> Self {
        CoronaVertex { base: index / (m + 1), pendant: index % (m + 1) }
    }
}

impl std::fmt::Display for CoronaVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.base, self.pendant)
    }
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_size(family: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams { family: family.into(), reason: "size must be positive".into() });
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidParams {
            family: family.into(),
            reason: format!("{n} vertices exceeds the limit of {MAX_VERTICES}"),
        });
    }
    Ok(())
}

impl Graph {
    /// Builds a graph from a weight matrix, checking symmetry and finiteness.
    pub fn from_weights(weights: Matrix) -> Result<Self> {
        if weights.rows() == 0 || weights.rows() != weights.cols() {
            return Err(Error::InvalidParams { family: "matrix".into(), reason: "must be square and non-empty".into() });
        }
        if weights.as_slice().iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !weights.is_symmetric() {
            return Err(Error::InvalidParams { family: "matrix".into(), reason: "not symmetric".into() });
        }
        let labels = index_labels(weights.rows());
        Ok(Graph { weights, labels })
    }

    fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut w = Matrix::zeros(n, n);
        for (a, b) in edges {
            w[(a, b)] = 1.0;
            w[(b, a)] = 1.0;
        }
        Graph { weights: w, labels: index_labels(n) }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.weights.rows()
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[(u, v)]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Resolves a vertex by label, falling back to a plain integer index.
    pub fn find_vertex(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.labels
            .iter()
            .position(|l| l == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < self.n()))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Row sum of the weight matrix, diagonal included.
    pub fn degree(&self, v: usize) -> f64 {
        self.weights.row(v).iter().sum()
    }

    pub fn is_integer_weighted(&self) -> bool {
        self.weights.as_slice().iter().all(|x| x.fract() == 0.0)
    }

    /// Entries in {0, 1} with a zero diagonal.
    pub fn is_simple(&self) -> bool {
        let n = self.n();
        self.weights.as_slice().iter().all(|&x| x == 0.0 || x == 1.0)
            && (0..n).all(|i| self.weights[(i, i)] == 0.0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.weights.row(v).iter().enumerate().filter(move |&(j, &w)| w != 0.0 && j != v).map(|(j, _)| j)
    }

    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.weights[(i, j)] != 0.0).count()).sum()
    }

    /// Returns `k` when every row of the weight matrix sums to `k`.
    /// Integer graphs are compared exactly; weighted graphs to 1e-12 relative.
    pub fn is_regular(&self) -> Option<f64> {
        let k = self.degree(0);
        let exact = self.is_integer_weighted();
        let tol = 1e-12 * k.abs().max(1.0);
        (0..self.n())
            .all(|v| {
                let d = self.degree(v);
                if exact {
                    d == k
                } else {
                    (d - k).abs() <= tol
                }
            })
            .then_some(k)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for y in self.neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.bfs_distances(s) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    // ---- named families ----------------------------------------------------

    pub fn complete(n: usize) -> Result<Self> {
        check_size("complete", n)?;
        Ok(Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))))
    }

    pub fn empty(n: usize) -> Result<Self> {
        check_size("empty", n)?;
        Ok(Graph::from_edges(n, []))
    }

    pub fn path(n: usize) -> Result<Self> {
        check_size("path", n)?;
        Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i))))
    }

    /// `K_{1,n}` with the conical vertex at index 0.
    pub fn star(n: usize) -> Result<Self> {
        check_size("star", n)?;
        check_size("star", n + 1)?;
        Ok(Graph::from_edges(n + 1, (1..=n).map(|i| (0, i))))
    }

    pub fn digon() -> Self {
        Graph { weights: Matrix::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]), labels: index_labels(2) }
    }

    /// `K_2(α)`: two vertices joined by an edge of weight `alpha`.
    pub fn wk2(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParams { family: "wk2".into(), reason: "weight must be positive and finite".into() });
        }
        Ok(Graph { weights: Matrix::from_rows(&[vec![0.0, alpha], vec![alpha, 0.0]]), labels: index_labels(2) })
    }

    /// The d-cube `Q_d`; vertex `i` is the binary string of `i`.
    pub fn cube(d: usize) -> Result<Self> {
        if d == 0 || d > 13 {
            return Err(Error::InvalidParams { family: "cube".into(), reason: "dimension must be in 1..=13".into() });
        }
        let n = 1usize << d;
        Ok(Graph::from_edges(n, (0..n).flat_map(|i| (0..d).map(move |b| (i, i ^ (1 << b)))).filter(|(i, j)| i < j)))
    }

    /// Cocktail party graph: complement of `n` disjoint edges `{2i, 2i+1}`.
    pub fn cocktail(n: usize) -> Result<Self> {
        check_size("cocktail", n)?;
        check_size("cocktail", 2 * n)?;
        let v = 2 * n;
        Ok(Graph::from_edges(v, (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).filter(|&(i, j)| i / 2 != j / 2)))
    }

    /// Halved 2d-cube: even-weight binary strings of length `2d`, adjacent
    /// iff at Hamming distance 2.
    pub fn halved_cube(d: usize) -> Result<Self> {
        if d == 0 || d > 7 {
            return Err(Error::InvalidParams { family: "halvedcube".into(), reason: "d must be in 1..=7".into() });
        }
        let verts: Vec<u32> = (0u32..1 << (2 * d)).filter(|x| x.count_ones() % 2 == 0).collect();
        let n = verts.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| (verts[i] ^ verts[j]).count_ones() == 2)
            .collect();
        Ok(Graph::from_edges(n, edges))
    }

    /// Named family constructor. `params` are the family's numeric arguments;
    /// all families except `wk2` require integral values.
    pub fn make_named(family: &str, params: &[f64]) -> Result<Self> {
        let int_param = |i: usize| -> Result<usize> {
            let x = *params.get(i).ok_or_else(|| Error::InvalidParams {
                family: family.into(),
                reason: format!("expected {} parameter(s), got {}", i + 1, params.len()),
            })?;
            if x.fract() != 0.0 || x < 1.0 {
                return Err(Error::InvalidParams { family: family.into(), reason: format!("`{x}` is not a positive integer") });
            }
            Ok(x as usize)
        };
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams { family: family.into(), reason: format!("expected {k} parameter(s), got {}", params.len()) })
            }
        };
        match family {
            "complete" => arity(1).and_then(|_| Graph::complete(int_param(0)?)),
            "empty" => arity(1).and_then(|_| Graph::empty(int_param(0)?)),
            "path" => arity(1).and_then(|_| Graph::path(int_param(0)?)),
            "star" => arity(1).and_then(|_| Graph::star(int_param(0)?)),
            "digon" => arity(0).map(|_| Graph::digon()),
            "cube" => arity(1).and_then(|_| Graph::cube(int_param(0)?)),
            "cocktail" => arity(1).and_then(|_| Graph::cocktail(int_param(0)?)),
            "halvedcube" => arity(1).and_then(|_| Graph::halved_cube(int_param(0)?)),
            "wk2" => arity(1).and_then(|_| Graph::wk2(params[0])),
            "selfloop" => Err(Error::InvalidParams { family: family.into(), reason: "takes a graph argument; use Graph::selfloop".into() }),
            other => Err(Error::UnknownFamily(other.into())),
        }
    }

    // ---- operations --------------------------------------------------------

    /// Adds one self-loop (+1 on the diagonal) at every vertex.
    pub fn selfloop(&self) -> Self {
        let mut w = self.weights.clone();
        for i in 0..self.n() {
            w[(i, i)] += 1.0;
        }
        Graph { weights: w, labels: self.labels.clone() }
    }

    /// Frucht–Harary corona `G ∘ H` on `n(1+m)` vertices, ordered
    /// `(v,0), (v,1), …, (v,m)` grouped by `v` and labelled `"v.w"`.
    pub fn corona(&self, h: &Graph) -> Result<Self> {
        let (n, m) = (self.n(), h.n());
        let size = n * (m + 1);
        check_size("corona", size)?;
        let mut w = Matrix::zeros(size, size);
        let idx = |v: usize, p: usize| v * (m + 1) + p;
        for v in 0..n {
            for v2 in 0..n {
                w[(idx(v, 0), idx(v2, 0))] = self.weights[(v, v2)];
            }
            for a in 0..m {
                w[(idx(v, 0), idx(v, a + 1))] = 1.0;
                w[(idx(v, a + 1), idx(v, 0))] = 1.0;
                for b in 0..m {
                    w[(idx(v, a + 1), idx(v, b + 1))] = h.weights[(a, b)];
                }
            }
        }
        let labels = (0..n).flat_map(|v| (0..=m).map(move |p| (v, p))).map(|(v, p)| format!("{}.{p}", self.labels[v])).collect();
        Ok(Graph { weights: w, labels })
    }

    /// Cartesian product with adjacency `A(G)⊗I + I⊗A(H)`.
    pub fn cartesian(&self, h: &Graph) -> Result<Self> {
        check_size("cartesian", self.n() * h.n())?;
        let w = self.weights.kron(&Matrix::identity(h.n())).add(&Matrix::identity(self.n()).kron(&h.weights));
        Ok(Graph { labels: index_labels(w.rows()), weights: w })
    }

    /// Disjoint union, `G`'s vertices first.
    pub fn union(&self, h: &Graph) -> Result<Self> {
        let (n, m) = (self.n(), h.n());
        check_size("union", n + m)?;
        let mut w = Matrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                w[(i, j)] = self.weights[(i, j)];
            }
        }
        for i in 0..m {
            for j in 0..m {
                w[(n + i, n + j)] = h.weights[(i, j)];
            }
        }
        Ok(Graph { weights: w, labels: index_labels(n + m) })
    }

    /// Join `G + H`: the disjoint union plus every edge between the parts.
    pub fn join(&self, h: &Graph) -> Result<Self> {
        if !self.is_simple() || !h.is_simple() {
            return Err(Error::NotSimple { op: "join" });
        }
        let mut g = self.union(h)?;
        let n = self.n();
        for i in 0..n {
            for j in n..g.n() {
                g.weights[(i, j)] = 1.0;
                g.weights[(j, i)] = 1.0;
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Result<Self> {
        if !self.is_simple() {
            return Err(Error::NotSimple { op: "complement" });
        }
        let n = self.n();
        let w = Matrix::from_fn(n, n, |i, j| if i != j && self.weights[(i, j)] == 0.0 { 1.0 } else { 0.0 });
        Ok(Graph { weights: w, labels: self.labels.clone() })
    }

    /// Graph joining vertices at distance exactly `d` in `self`.
    pub fn distance_graph(&self, d: usize) -> Result<Self> {
        if !self.is_simple() {
            return Err(Error::NotSimple { op: "distance_graph" });
        }
        let n = self.n();
        let mut w = Matrix::zeros(n, n);
        for s in 0..n {
            for (t, dist) in self.bfs_distances(s).into_iter().enumerate() {
                if dist.ok_or(Error::Disconnected)? == d && s != t {
                    w[(s, t)] = 1.0;
                }
            }
        }
        Ok(Graph { weights: w, labels: self.labels.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(g: &Graph) -> Vec<Vec<f64>> {
        g.weights().to_rows()
    }

    /// Brute-force isomorphism test over all vertex permutations.
    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        fn permute(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, a: &Graph, b: &Graph) -> bool {
            let n = a.n();
            if k == n {
                return (0..n).all(|i| (0..n).all(|j| a.weight(i, j) == b.weight(perm[i], perm[j])));
            }
            for c in 0..n {
                if !used[c] {
                    used[c] = true;
                    perm.push(c);
                    if permute(k + 1, perm, used, a, b) {
                        return true;
                    }
                    perm.pop();
                    used[c] = false;
                }
            }
            false
        }
        a.n() == b.n() && permute(0, &mut Vec::new(), &mut vec![false; a.n()], a, b)
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn named_families() {
        let k1 = Graph::make_named("complete", &[1.0]).unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);
        assert_eq!(rows(&Graph::make_named("digon", &[]).unwrap()), vec![vec![0.0, 2.0], vec![2.0, 0.0]]);
        assert!(isomorphic(&Graph::cocktail(2).unwrap(), &cycle(4)));
        assert_eq!(Graph::star(3).unwrap().n(), 4);
        assert_eq!(Graph::halved_cube(2).unwrap().n(), 8);
        // halved 4-cube is K_{2,2,2,2} = cocktail(4)
        assert!(isomorphic(&Graph::halved_cube(2).unwrap(), &Graph::cocktail(4).unwrap()));
    }

    #[test]
    fn named_family_errors() {
        assert_eq!(Graph::make_named("torus", &[3.0]), Err(Error::UnknownFamily("torus".into())));
        assert!(Graph::make_named("complete", &[0.0]).is_err());
        assert!(Graph::make_named("cube", &[-1.0]).is_err());
        assert!(Graph::make_named("path", &[]).is_err());
        assert!(Graph::make_named("wk2", &[-0.5]).is_err());
    }

    #[test]
    fn corona_small_cases() {
        let k1 = Graph::complete(1).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let p4 = k2.corona(&k1).unwrap();
        assert!(isomorphic(&p4, &Graph::path(4).unwrap()));
        assert_eq!(p4.labels(), &["0.0", "0.1", "1.0", "1.1"]);
        assert_eq!(rows(&k1.corona(&Graph::complete(3).unwrap()).unwrap()), rows(&Graph::complete(4).unwrap()));
        let dd = Graph::digon().corona(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(dd.n(), 8);
        assert_eq!(dd.weight(0, 4), 2.0);
        assert_eq!(dd.degree(0), 5.0);
    }

    #[test]
    fn corona_degrees() {
        let g = Graph::path(3).unwrap();
        let h = Graph::cube(2).unwrap();
        let c = g.corona(&h).unwrap();
        let m = h.n();
        assert_eq!(c.n(), g.n() * (1 + m));
        for v in 0..g.n() {
            assert_eq!(c.degree(CoronaVertex::new(v, 0).index(m)), g.degree(v) + m as f64);
            for w in 1..=m {
                assert_eq!(c.degree(CoronaVertex::new(v, w).index(m)), h.degree(w - 1) + 1.0);
            }
        }
        assert!(c.weights().is_symmetric());
    }

    #[test]
    fn cartesian_products() {
        let k2 = Graph::complete(2).unwrap();
        assert!(isomorphic(&k2.cartesian(&k2).unwrap(), &cycle(4)));
        let q3 = Graph::cube(2).unwrap().cartesian(&k2).unwrap();
        assert!(isomorphic(&q3, &Graph::cube(3).unwrap()));
        let bunk = Graph::complete(4).unwrap().cartesian(&k2).unwrap();
        assert_eq!(bunk.n(), 8);
        assert_eq!(bunk.is_regular(), Some(4.0));
    }

    #[test]
    fn complement_join_union() {
        assert_eq!(rows(&Graph::empty(3).unwrap().complement().unwrap()), rows(&Graph::complete(3).unwrap()));
        let cone = Graph::complete(1).unwrap().join(&Graph::empty(4).unwrap()).unwrap();
        assert_eq!(rows(&cone), rows(&Graph::star(4).unwrap()));
        let k2 = Graph::complete(2).unwrap();
        let cp = k2.union(&k2).unwrap().complement().unwrap();
        assert!(isomorphic(&cp, &Graph::cocktail(2).unwrap()));
        assert!(Graph::digon().complement().is_err());
        assert!(Graph::complete(2).unwrap().selfloop().complement().is_err());
        assert!(Graph::digon().join(&k2).is_err());
    }

    #[test]
    fn distance_graphs() {
        let d = cycle(4).distance_graph(2).unwrap();
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.is_regular(), Some(1.0));
        let q3 = Graph::cube(3).unwrap();
        let a3 = q3.distance_graph(3).unwrap();
        assert_eq!(a3.edge_count(), 4);
        for i in 0..8 {
            assert_eq!(a3.weight(i, i ^ 7), 1.0);
        }
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.distance_graph(1).unwrap(), k3);
        assert_eq!(Graph::empty(2).unwrap().distance_graph(1), Err(Error::Disconnected));
    }

    #[test]
    fn regularity() {
        assert_eq!(Graph::complete(4).unwrap().is_regular(), Some(3.0));
        assert_eq!(Graph::star(3).unwrap().is_regular(), None);
        assert_eq!(Graph::digon().is_regular(), Some(2.0));
        assert_eq!(Graph::complete(3).unwrap().selfloop().is_regular(), Some(3.0));
    }

    #[test]
    fn vertex_lookup() {
        let c = Graph::path(3).unwrap().corona(&Graph::empty(4).unwrap()).unwrap();
        assert_eq!(c.find_vertex("1.0"), Some(5));
        assert_eq!(c.find_vertex("2.4"), Some(14));
        assert_eq!(c.find_vertex("7"), Some(7));
        assert_eq!(c.find_vertex("3.0"), None);
    }
}
