//! Weighted directed graph with dense node ids.
//!
//! Node ids are 1-based at the API surface (`NodeId(1)..=NodeId(n)`), matching the way
//! networks are numbered in edge-list files. Internally vectors are indexed from 0;
//! [`NodeId::index`] converts.
//!
//! A graph is immutable once built. Parallel edges are summed at construction so each
//! ordered pair `(src, dst)` is stored at most once, and edges are kept sorted by
//! `(src, dst)`.

use std::fmt;

use crate::error::{Error, Result};

/// 1-based node identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    /// Node id for the 0-based vector position `index`.
    pub fn from_index(index: usize) -> Self {
        NodeId(index + 1)
    }

    /// 0-based position of this node in score vectors.
    pub fn index(self) -> usize {
        debug_assert!(self.0 >= 1);
        self.0 - 1
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    /// Contact weight; always finite and > 0.
    pub weight: f64,
}

/// Directed graph with positive real edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    /// Sorted by `(src, dst)`, unique per ordered pair.
    edges: Vec<Edge>,
    /// `edges[out_offsets[i]..out_offsets[i + 1]]` are the out-edges of node index `i`.
    out_offsets: Vec<usize>,
    /// Edge positions sorted by `(dst, src)`.
    in_edges: Vec<usize>,
    in_offsets: Vec<usize>,
}

/// Builds a graph on nodes `1..=n` from `(src, dst, weight)` triples.
///
/// Duplicate `(src, dst)` pairs are merged by summing their weights. The first invalid
/// triple rejects the whole input; errors carry the 1-based position of that triple.
pub fn build_graph<I>(n: usize, edge_list: I) -> Result<WeightedDigraph>
where
    I: IntoIterator<Item = (usize, usize, f64)>,
{
    let mut raw = Vec::new();
    for (pos, (src, dst, weight)) in edge_list.into_iter().enumerate() {
        let index = pos + 1;
        for node in [src, dst] {
            if node == 0 || node > n {
                return Err(Error::EndpointOutOfRange { index, node, n });
            }
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidWeight {
                index,
                src,
                dst,
                weight,
            });
        }
        raw.push(Edge {
            src: NodeId(src),
            dst: NodeId(dst),
            weight,
        });
    }
    // Stable sort keeps the summation order of parallel edges equal to input order.
    raw.sort_by_key(|e| (e.src, e.dst));

    let mut edges: Vec<Edge> = Vec::with_capacity(raw.len());
    for e in raw {
        match edges.last_mut() {
            Some(last) if last.src == e.src && last.dst == e.dst => last.weight += e.weight,
            _ => edges.push(e),
        }
    }
    Ok(WeightedDigraph::from_sorted_edges(n, edges))
}

impl WeightedDigraph {
    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for e in &edges {
            out_offsets[e.src.0] += 1;
            in_offsets[e.dst.0] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut in_edges: Vec<usize> = (0..edges.len()).collect();
        in_edges.sort_by_key(|&k| (edges[k].dst, edges[k].src));
        WeightedDigraph {
            n,
            edges,
            out_offsets,
            in_edges,
            in_offsets,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, sorted by `(src, dst)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (1..=self.n).map(NodeId)
    }

    fn check(&self, node: NodeId) -> Result<usize> {
        if node.0 == 0 || node.0 > self.n {
            return Err(Error::NodeOutOfRange {
                node: node.0,
                n: self.n,
            });
        }
        Ok(node.index())
    }

    /// Out-edges of `node`, sorted by destination.
    pub fn out_edges(&self, node: NodeId) -> Result<&[Edge]> {
        let i = self.check(node)?;
        Ok(&self.edges[self.out_offsets[i]..self.out_offsets[i + 1]])
    }

    /// In-edges of `node`, sorted by source.
    pub fn in_edges(&self, node: NodeId) -> Result<impl Iterator<Item = &Edge> + '_> {
        let i = self.check(node)?;
        Ok(self.in_edges[self.in_offsets[i]..self.in_offsets[i + 1]]
            .iter()
            .map(move |&k| &self.edges[k]))
    }

    /// Number of distinct predecessors (not a weight sum).
    pub fn in_degree(&self, node: NodeId) -> Result<usize> {
        let i = self.check(node)?;
        Ok(self.in_offsets[i + 1] - self.in_offsets[i])
    }

    /// Number of distinct successors (not a weight sum).
    pub fn out_degree(&self, node: NodeId) -> Result<usize> {
        let i = self.check(node)?;
        Ok(self.out_offsets[i + 1] - self.out_offsets[i])
    }

    /// Sum of out-edge weights of `node`.
    pub fn out_weight(&self, node: NodeId) -> Result<f64> {
        Ok(self.out_edges(node)?.iter().map(|e| e.weight).sum())
    }

    /// Weight of `src -> dst`, 0 when absent or out of range.
    pub fn weight(&self, src: NodeId, dst: NodeId) -> f64 {
        self.out_edges(src)
            .ok()
            .and_then(|out| {
                out.binary_search_by_key(&dst, |e| e.dst)
                    .ok()
                    .map(|k| out[k].weight)
            })
            .unwrap_or(0.0)
    }

    /// The graph with every edge reversed, weights kept.
    pub fn transpose(&self) -> WeightedDigraph {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                src: e.dst,
                dst: e.src,
                weight: e.weight,
            })
            .collect();
        edges.sort_by_key(|e| (e.src, e.dst));
        WeightedDigraph::from_sorted_edges(self.n, edges)
    }

    /// Same edge set with every weight set to 1.
    pub fn binarize(&self) -> WeightedDigraph {
        self.map_weights(|_| 1.0)
    }

    /// Applies `f` to every weight. `f` must keep weights positive.
    pub fn map_weights(&self, f: impl Fn(f64) -> f64) -> WeightedDigraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                weight: f(e.weight),
                ..*e
            })
            .collect();
        WeightedDigraph::from_sorted_edges(self.n, edges)
    }

    /// Dense adjacency matrix `L`: entry `(i, j)` is the weight of `i -> j`.
    pub fn adjacency(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            m.set(e.src.index(), e.dst.index(), e.weight);
        }
        m
    }

    /// `(LᵀL, LLᵀ)` on raw weights.
    ///
    /// The first drives the decoupled authority iteration, the second the hub iteration.
    pub fn gram_products(&self) -> (DenseMatrix, DenseMatrix) {
        let l = self.adjacency();
        let lt = l.transpose();
        (lt.matmul(&l), l.matmul(&lt))
    }
}

/// Free-function form of [`WeightedDigraph::adjacency`].
pub fn adjacency(graph: &WeightedDigraph) -> DenseMatrix {
    graph.adjacency()
}

/// Free-function form of [`WeightedDigraph::transpose`].
pub fn transpose(graph: &WeightedDigraph) -> WeightedDigraph {
    graph.transpose()
}

/// Free-function form of [`WeightedDigraph::gram_products`].
pub fn gram_products(graph: &WeightedDigraph) -> (DenseMatrix, DenseMatrix) {
    graph.gram_products()
}

/// Row-major dense matrix. Indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Builds from row slices. Panics on ragged input.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        DenseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_node() -> WeightedDigraph {
        build_graph(
            6,
            [(1, 5, 1.0), (2, 4, 1.0), (4, 5, 1.0), (5, 3, 1.0), (6, 1, 1.0)],
        )
        .unwrap()
    }

    #[test]
    fn six_node_adjacency() {
        let l = six_node().adjacency();
        let expected = DenseMatrix::from_rows(&[
            [0., 0., 0., 0., 1., 0.],
            [0., 0., 0., 1., 0., 0.],
            [0., 0., 0., 0., 0., 0.],
            [0., 0., 0., 0., 1., 0.],
            [0., 0., 1., 0., 0., 0.],
            [1., 0., 0., 0., 0., 0.],
        ]);
        assert_eq!(l, expected);
    }

    #[test]
    fn six_node_transpose() {
        let lt = six_node().transpose().adjacency();
        let ones = [(5, 1), (4, 2), (3, 5), (1, 6), (5, 4)];
        for i in 1..=6 {
            for j in 1..=6 {
                let want = if ones.contains(&(i, j)) { 1.0 } else { 0.0 };
                assert_eq!(lt.get(i - 1, j - 1), want, "({i},{j})");
            }
        }
    }

    #[test]
    fn six_node_gram_products() {
        let (auth, hub) = six_node().gram_products();
        let mut want_auth = DenseMatrix::zeros(6, 6);
        for (i, d) in [1., 0., 1., 1., 2., 0.].into_iter().enumerate() {
            want_auth.set(i, i, d);
        }
        assert_eq!(auth, want_auth);

        let mut want_hub = DenseMatrix::zeros(6, 6);
        for (i, d) in [1., 1., 0., 1., 1., 1.].into_iter().enumerate() {
            want_hub.set(i, i, d);
        }
        want_hub.set(0, 3, 1.0);
        want_hub.set(3, 0, 1.0);
        assert_eq!(hub, want_hub);
    }

    #[test]
    fn six_node_degrees() {
        let g = six_node();
        assert_eq!(g.in_degree(NodeId(5)).unwrap(), 2);
        assert_eq!(g.out_degree(NodeId(5)).unwrap(), 1);
        assert!(matches!(
            g.in_degree(NodeId(7)),
            Err(Error::NodeOutOfRange { node: 7, n: 6 })
        ));
        assert!(g.out_degree(NodeId(0)).is_err());
    }

    #[test]
    fn isolated_and_two_cycle_degrees() {
        let g = build_graph(3, [(1, 2, 5.0), (2, 1, 5.0)]).unwrap();
        assert_eq!(g.in_degree(NodeId(3)).unwrap(), 0);
        assert_eq!(g.out_degree(NodeId(3)).unwrap(), 0);
        for v in [NodeId(1), NodeId(2)] {
            assert_eq!(g.in_degree(v).unwrap(), 1);
            assert_eq!(g.out_degree(v).unwrap(), 1);
        }
    }

    #[test]
    fn empty_and_singleton() {
        let g = build_graph(0, []).unwrap();
        let a = g.adjacency();
        assert_eq!((a.rows(), a.cols()), (0, 0));
        assert_eq!(g.transpose(), g);
        let (x, y) = g.gram_products();
        assert_eq!((x.rows(), y.rows()), (0, 0));

        let one = build_graph(1, []).unwrap();
        assert_eq!(one.adjacency(), DenseMatrix::from_rows(&[[0.0]]));
    }

    #[test]
    fn parallel_edges_are_summed() {
        let g = build_graph(2, [(1, 2, 3.0), (1, 2, 4.0)]).unwrap();
        assert_eq!(
            g.edges(),
            &[Edge {
                src: NodeId(1),
                dst: NodeId(2),
                weight: 7.0
            }]
        );
        assert_eq!(g.weight(NodeId(1), NodeId(2)), 7.0);
        assert_eq!(g.weight(NodeId(2), NodeId(1)), 0.0);
    }

    #[test]
    fn self_loops_are_kept() {
        let g = build_graph(2, [(1, 1, 2.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(g.adjacency().get(0, 0), 2.0);
        assert_eq!(g.in_degree(NodeId(1)).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            build_graph(3, [(1, 2, 1.0), (1, 4, 1.0)]),
            Err(Error::EndpointOutOfRange {
                index: 2,
                node: 4,
                n: 3
            })
        ));
        assert!(matches!(
            build_graph(3, [(0, 2, 1.0)]),
            Err(Error::EndpointOutOfRange { index: 1, .. })
        ));
        for w in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                build_graph(3, [(1, 2, 1.0), (2, 3, 1.0), (3, 1, w)]),
                Err(Error::InvalidWeight { index: 3, .. })
            ));
        }
    }

    #[test]
    fn in_edges_sorted_by_source() {
        let g = build_graph(4, [(4, 1, 1.0), (2, 1, 2.0), (3, 1, 3.0)]).unwrap();
        let srcs: Vec<_> = g.in_edges(NodeId(1)).unwrap().map(|e| e.src.0).collect();
        assert_eq!(srcs, vec![2, 3, 4]);
    }
}
