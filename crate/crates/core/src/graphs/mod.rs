//! Simple undirected graphs, their associated integer matrices and the
//! rooted product.

mod canon;
mod graph6;

pub use canon::{automorphism_orbits, canonical_code, enumerate_graphs, MAX_ENUM_ORDER};
pub use graph6::{emit_graph6, parse_graph6, read_graph6_stream};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{IntMatrix, RatScalar};

/// Simple undirected graph on vertices `0..order` stored as bitset rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        let words = order.div_ceil(64).max(1);
        Graph { order, words, bits: vec![0; words * order] }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(order);
        for &(u, w) in edges {
            g.add_edge(u, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, w: usize) -> Result<()> {
        for x in [u, w] {
            if x >= self.order {
                return Err(Error::IndexOutOfRange { index: x, order: self.order });
            }
        }
        if u == w {
            return Err(Error::SelfLoop(u));
        }
        self.set(u, w);
        self.set(w, u);
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, w: usize) {
        self.bits[u * self.words + w / 64] |= 1 << (w % 64);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.bits[u * self.words + w / 64] >> (w % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.bits[u * self.words..(u + 1) * self.words].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&w| self.has_edge(u, w))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, w)` with `u < w` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for w in u + 1..self.order {
                if self.has_edge(u, w) {
                    out.push((u, w));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let mut seen = vec![false; self.order];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The vertex-deleted subgraph `G - v`, remaining vertices kept in order.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.order {
            return Err(Error::IndexOutOfRange { index: v, order: self.order });
        }
        let keep: Vec<usize> = (0..self.order).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &w) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    g.set(i, j);
                    g.set(j, i);
                }
            }
        }
        g
    }

    /// Relabels so that old vertex `u` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.order);
        for (u, w) in self.edges() {
            g.set(perm[u], perm[w]);
            g.set(perm[w], perm[u]);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for w in u + 1..n {
                g.set(u, w);
                g.set(w, u);
            }
        }
        g
    }

    /// Star `K_{1,n-1}` with centre 0.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).expect("valid star")
    }

    /// Triangle `{0,1,2}` with a pendant vertex 3 attached to 2.
    pub fn paw() -> Graph {
        Self::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).expect("valid paw")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order, self.edges())
    }
}

/// A graph with a distinguished root vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootedGraph {
    graph: Graph,
    root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        if root >= graph.order() {
            return Err(Error::IndexOutOfRange { index: root, order: graph.order() });
        }
        Ok(RootedGraph { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

/// Which symmetric matrix is attached to a graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MatrixKind {
    Adjacency,
    SignlessLaplacian,
    /// `αD + (1 - α)A` with `0 <= α < 1`.
    Aalpha(RatScalar),
}

impl MatrixKind {
    pub fn aalpha(alpha: RatScalar) -> Result<Self> {
        if alpha.is_negative() || alpha >= RatScalar::one() {
            return Err(Error::InvalidKind(format!("alpha = {alpha} must satisfy 0 <= alpha < 1")));
        }
        Ok(MatrixKind::Aalpha(alpha))
    }

    /// Denominator `q` that clears `α = p/q`; 1 for A and Q.
    pub fn scale(&self) -> BigInt {
        match self {
            MatrixKind::Aalpha(a) => a.denom().clone(),
            _ => BigInt::one(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MatrixKind::Adjacency => "A".into(),
            MatrixKind::SignlessLaplacian => "Q".into(),
            MatrixKind::Aalpha(a) => format!("A_{a}"),
        }
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    /// Accepts `a`, `q`, or `aalpha=p/q`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" | "adjacency" => Ok(MatrixKind::Adjacency),
            "q" | "signless" | "signless-laplacian" => Ok(MatrixKind::SignlessLaplacian),
            other => {
                let frac =
                    other.strip_prefix("aalpha=").ok_or_else(|| Error::InvalidKind(format!("unknown kind '{s}'")))?;
                let (p, q) = match frac.split_once('/') {
                    Some((p, q)) => (p, q),
                    None => (frac, "1"),
                };
                let parse = |x: &str| {
                    x.trim().parse::<BigInt>().map_err(|_| Error::InvalidKind(format!("bad fraction '{frac}'")))
                };
                let (p, q) = (parse(p)?, parse(q)?);
                if q.is_zero() {
                    return Err(Error::InvalidKind("zero denominator".into()));
                }
                MatrixKind::aalpha(RatScalar::new(p, q))
            }
        }
    }
}

/// The integer matrix attached to `g` together with its scale.
///
/// `A` and `Q` come back with scale 1. For `A_α` with `α = p/q` the result
/// is `q·A_α = p·D + (q - p)·A` with scale `q`; exact `A_α` walk quantities
/// follow from `det W(cM) = c^{n(n-1)/2} det W(M)`.
pub fn matrix_of(g: &Graph, kind: &MatrixKind) -> (IntMatrix, BigInt) {
    let n = g.order();
    let (diag_w, adj_w, scale) = match kind {
        MatrixKind::Adjacency => (BigInt::zero(), BigInt::one(), BigInt::one()),
        MatrixKind::SignlessLaplacian => (BigInt::one(), BigInt::one(), BigInt::one()),
        MatrixKind::Aalpha(a) => {
            let (p, q) = (a.numer().clone(), a.denom().clone());
            (p.clone(), &q - &p, q)
        }
    };
    let m = IntMatrix::from_fn(n, |i, j| {
        if i == j {
            &diag_w * BigInt::from(g.degree(i))
        } else if g.has_edge(i, j) {
            adj_w.clone()
        } else {
            BigInt::zero()
        }
    });
    (m, scale)
}

/// Adjacency matrix shortcut.
pub fn adjacency(g: &Graph) -> IntMatrix {
    matrix_of(g, &MatrixKind::Adjacency).0
}

/// The rooted product `G ∘ H^(v)`.
///
/// Vertex `i` of `G` glued to vertex `u` of the `i`-th copy of `H` gets
/// index `u·n + i`, where `n = |G|`. With that ordering
/// `M(G∘H) = M(H) ⊗ I_n + D_v ⊗ M(G)` holds entrywise for `A`, `Q` and
/// `A_α`, with `kron`'s row-major block layout.
pub fn rooted_product(g: &Graph, h: &RootedGraph) -> Graph {
    let n = g.order();
    let hg = h.graph();
    let v = h.root();
    let mut out = Graph::empty(n * hg.order());
    for (u, w) in hg.edges() {
        for i in 0..n {
            out.set(u * n + i, w * n + i);
            out.set(w * n + i, u * n + i);
        }
    }
    for (i, j) in g.edges() {
        out.set(v * n + i, v * n + j);
        out.set(v * n + j, v * n + i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn matrix_kinds_on_small_graphs() {
        let k2 = Graph::complete(2);
        assert_eq!(matrix_of(&k2, &MatrixKind::Adjacency), (m(&[&[0, 1], &[1, 0]]), BigInt::one()));
        assert_eq!(matrix_of(&k2, &MatrixKind::SignlessLaplacian), (m(&[&[1, 1], &[1, 1]]), BigInt::one()));
        let p3 = Graph::path(3);
        let half: MatrixKind = "aalpha=1/2".parse().unwrap();
        let (scaled, scale) = matrix_of(&p3, &half);
        assert_eq!(scale, BigInt::from(2));
        assert_eq!(scaled, matrix_of(&p3, &MatrixKind::SignlessLaplacian).0);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("a".parse::<MatrixKind>().unwrap(), MatrixKind::Adjacency);
        assert_eq!("Q".parse::<MatrixKind>().unwrap(), MatrixKind::SignlessLaplacian);
        assert!("aalpha=1/1".parse::<MatrixKind>().is_err());
        assert!("aalpha=-1/3".parse::<MatrixKind>().is_err());
        assert!("aalpha=1/0".parse::<MatrixKind>().is_err());
        assert!("laplacian".parse::<MatrixKind>().is_err());
        assert_eq!("aalpha=2/6".parse::<MatrixKind>().unwrap().scale(), BigInt::from(3), "fractions are reduced");
    }

    #[test]
    fn graph_rejects_loops_and_bad_indices() {
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(Graph::from_edges(3, &[(0, 3)]), Err(Error::IndexOutOfRange { .. })));
        assert!(RootedGraph::new(Graph::path(2), 2).is_err());
    }

    #[test]
    fn product_with_k1_is_identity() {
        let g = Graph::paw();
        let k1 = RootedGraph::new(Graph::empty(1), 0).unwrap();
        assert_eq!(rooted_product(&g, &k1), g);
    }

    #[test]
    fn c4_with_pendant_triangles() {
        let c3 = RootedGraph::new(Graph::cycle(3), 0).unwrap();
        let p = rooted_product(&Graph::cycle(4), &c3);
        assert_eq!(p.order(), 12);
        assert_eq!(p.edge_count(), 4 + 4 * 3);
        // cycle vertices have degree 4, triangle tips degree 2
        let mut degs: Vec<usize> = (0..12).map(|u| p.degree(u)).collect();
        degs.sort_unstable();
        assert_eq!(degs, [2, 2, 2, 2, 2, 2, 2, 2, 4, 4, 4, 4]);
        for i in 0..4 {
            // the copy glued at i is a triangle on {i, 4+i, 8+i}
            assert!(p.has_edge(i, 4 + i) && p.has_edge(i, 8 + i) && p.has_edge(4 + i, 8 + i));
        }
        assert!(p.is_connected());
    }

    #[test]
    fn p2_product_matches_kron() {
        let p2 = Graph::path(2);
        let h = RootedGraph::new(p2.clone(), 0).unwrap();
        let prod = adjacency(&rooted_product(&p2, &h));
        let a = adjacency(&p2);
        let expected = a
            .kron(&IntMatrix::identity(2))
            .add_scaled(&IntMatrix::unit_diagonal(2, 0).unwrap().kron(&a), &BigInt::one())
            .unwrap();
        assert_eq!(prod, expected);
        // P_2 ∘ P_2 is P_4 with vertex order 2-0-1-3
        assert_eq!(prod.det(), BigInt::one());
    }

    #[test]
    fn q_deletion_differs_from_graph_deletion() {
        let star = Graph::star(4);
        let q = MatrixKind::SignlessLaplacian;
        let deleted_matrix = matrix_of(&star, &q).0.delete_row_col(0).unwrap();
        let deleted_graph = matrix_of(&star.remove_vertex(0).unwrap(), &q).0;
        assert_ne!(deleted_matrix, deleted_graph);
        let a = MatrixKind::Adjacency;
        assert_eq!(matrix_of(&star, &a).0.delete_row_col(0).unwrap(), matrix_of(&star.remove_vertex(0).unwrap(), &a).0);
    }
}
