//! Abstract multigraphs: rank and connectivity on spanning subgraphs, the
//! classical Tutte polynomial, and the five-variable universal deletion-
//! contraction invariant of plain graphs. These serve as the graph-level
//! oracles for the ribbon-graph machinery.

use std::collections::{BTreeMap, BTreeSet};

use crate::poly::HalfPoly;
use crate::ribbon::EdgeId;

/// Multigraph with loops and parallel edges. Edges keep stable ids (when a
/// multigraph arises as a quotient of a ribbon graph, the ids are those of
/// the ribbon edges) and remember which endpoint came from which edge end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: BTreeMap<EdgeId, (usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        self.0[ra] = rb;
    }
}

impl MultiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (EdgeId, (usize, usize))>) -> Self {
        let edges: BTreeMap<_, _> = edges.into_iter().collect();
        for &(u, v) in edges.values() {
            assert!(u < n && v < n, "endpoint out of range");
        }
        MultiGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.keys().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[&e]
    }

    /// Number of connected components of the spanning subgraph (V, A).
    pub fn components_of(&self, subset: &BTreeSet<EdgeId>) -> usize {
        let mut uf = UnionFind::new(self.n);
        for (id, &(u, v)) in &self.edges {
            if subset.contains(id) {
                uf.union(u, v);
            }
        }
        let mut roots = BTreeSet::new();
        for x in 0..self.n {
            roots.insert(uf.find(x));
        }
        roots.len()
    }

    pub fn components(&self) -> usize {
        self.components_of(&self.edges.keys().copied().collect())
    }

    /// Rank of the spanning subgraph: |V| - k(A).
    pub fn rank_of(&self, subset: &BTreeSet<EdgeId>) -> i64 {
        self.n as i64 - self.components_of(subset) as i64
    }

    pub fn rank(&self) -> i64 {
        self.rank_of(&self.edges.keys().copied().collect())
    }

    pub fn nullity(&self) -> i64 {
        self.edges.len() as i64 - self.rank()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[&e];
        u == v
    }

    pub fn is_bridge(&self, e: EdgeId) -> bool {
        let all: BTreeSet<EdgeId> = self.edges.keys().copied().collect();
        let mut without = all.clone();
        without.remove(&e);
        self.components_of(&without) > self.components_of(&all)
    }

    /// Bridge test within the spanning subgraph (V, A); e must lie in A.
    pub fn is_bridge_in(&self, subset: &BTreeSet<EdgeId>, e: EdgeId) -> bool {
        debug_assert!(subset.contains(&e));
        let mut without = subset.clone();
        without.remove(&e);
        self.components_of(&without) > self.components_of(subset)
    }

    pub fn delete(&self, e: EdgeId) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.remove(&e).expect("unknown edge");
        MultiGraph { n: self.n, edges }
    }

    /// Contract e: loops are deleted, otherwise the endpoints merge. Vertex
    /// indices are compacted preserving order.
    pub fn contract(&self, e: EdgeId) -> MultiGraph {
        let (u, v) = self.edges[&e];
        if u == v {
            return self.delete(e);
        }
        let (keep, drop) = if u < v { (u, v) } else { (v, u) };
        let map = |x: usize| {
            let x = if x == drop { keep } else { x };
            if x > drop {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|(id, _)| **id != e)
            .map(|(id, &(a, b))| (*id, (map(a), map(b))))
            .collect();
        MultiGraph { n: self.n - 1, edges }
    }

    /// Identity of labelled multigraphs up to renaming vertices: the
    /// partition of (edge, end) incidences by vertex must agree, along with
    /// the number of edgeless vertices.
    pub fn same_up_to_vertex_names(&self, other: &MultiGraph) -> bool {
        if self.n != other.n || self.edges.keys().ne(other.edges.keys()) {
            return false;
        }
        fn blocks(g: &MultiGraph) -> (BTreeSet<Vec<(EdgeId, u8)>>, usize) {
            let mut per_vertex: Vec<Vec<(EdgeId, u8)>> = vec![Vec::new(); g.n];
            for (id, &(u, v)) in &g.edges {
                per_vertex[u].push((*id, 1));
                per_vertex[v].push((*id, 2));
            }
            let mut set = BTreeSet::new();
            let mut edgeless = 0usize;
            for mut b in per_vertex {
                if b.is_empty() {
                    edgeless += 1;
                } else {
                    b.sort();
                    set.insert(b);
                }
            }
            (set, edgeless)
        }
        blocks(self) == blocks(other)
    }

    /// Classical Tutte polynomial in x, y via the subset state sum.
    pub fn tutte_classical(&self) -> HalfPoly {
        let x1 = HalfPoly::var("x").sub(&HalfPoly::one());
        let y1 = HalfPoly::var("y").sub(&HalfPoly::one());
        let all: Vec<EdgeId> = self.edges.keys().copied().collect();
        let r_e = self.rank();
        let mut acc = HalfPoly::zero();
        for mask in 0u64..(1 << all.len()) {
            let subset: BTreeSet<EdgeId> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, id)| *id)
                .collect();
            let r_a = self.rank_of(&subset);
            let term = x1
                .pow((r_e - r_a) as u32)
                .mul(&y1.pow((subset.len() as i64 - r_a) as u32));
            acc = acc.add(&term);
        }
        acc
    }

    /// Classical Tutte polynomial via deletion-contraction, always resolving
    /// the lowest-id edge. Agreement with the state sum is itself a tested
    /// property.
    pub fn tutte_recursive(&self) -> HalfPoly {
        match self.edges.keys().next().copied() {
            None => HalfPoly::one(),
            Some(e) => {
                if self.is_bridge(e) {
                    HalfPoly::var("x").mul(&self.contract(e).tutte_recursive())
                } else if self.is_loop(e) {
                    HalfPoly::var("y").mul(&self.delete(e).tutte_recursive())
                } else {
                    self.delete(e)
                        .tutte_recursive()
                        .add(&self.contract(e).tutte_recursive())
                }
            }
        }
    }

    /// Universal deletion-contraction invariant of plain graphs, in
    /// x, y, a, b, gamma, via its recursion.
    pub fn universal_graph_u(&self) -> HalfPoly {
        match self.edges.keys().next().copied() {
            None => HalfPoly::var("gamma").pow(self.n as u32),
            Some(e) => {
                if self.is_bridge(e) {
                    HalfPoly::var("x").mul(&self.contract(e).universal_graph_u())
                } else if self.is_loop(e) {
                    HalfPoly::var("y").mul(&self.delete(e).universal_graph_u())
                } else {
                    let del = HalfPoly::var("a").mul(&self.delete(e).universal_graph_u());
                    let con = HalfPoly::var("b").mul(&self.contract(e).universal_graph_u());
                    del.add(&con)
                }
            }
        }
    }

    /// Closed form of the universal invariant:
    /// gamma^k(G) a^n(G) b^r(G) T(G; x/b, y/a).
    pub fn universal_graph_u_closed_form(&self) -> HalfPoly {
        let t = self.tutte_classical();
        let xb = HalfPoly::var("x").mul(&HalfPoly::monomial(&["b"], &[(-1, 1)], 1));
        let ya = HalfPoly::var("y").mul(&HalfPoly::monomial(&["a"], &[(-1, 1)], 1));
        let t = t.substitute(&[("x", xb), ("y", ya)]).unwrap();
        let pre = HalfPoly::monomial(
            &["gamma", "a", "b"],
            &[
                (self.components() as i64, 1),
                (self.nullity(), 1),
                (self.rank(), 1),
            ],
            1,
        );
        pre.mul(&t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path2() -> MultiGraph {
        MultiGraph::new(2, [(EdgeId(1), (0, 1))])
    }

    fn loop1() -> MultiGraph {
        MultiGraph::new(1, [(EdgeId(1), (0, 0))])
    }

    fn bouquet2() -> MultiGraph {
        MultiGraph::new(1, [(EdgeId(1), (0, 0)), (EdgeId(2), (0, 0))])
    }

    fn triangle() -> MultiGraph {
        MultiGraph::new(
            3,
            [
                (EdgeId(1), (0, 1)),
                (EdgeId(2), (1, 2)),
                (EdgeId(3), (2, 0)),
            ],
        )
    }

    #[test]
    fn rank_and_loops() {
        assert_eq!(path2().rank_of(&[EdgeId(1)].into()), 1);
        assert!(bouquet2().is_loop(EdgeId(1)));
        assert_eq!(bouquet2().rank(), 0);
    }

    #[test]
    fn tutte_bridge_and_loop() {
        assert_eq!(path2().tutte_classical(), HalfPoly::var("x"));
        assert_eq!(loop1().tutte_classical(), HalfPoly::var("y"));
    }

    /// Independent brute force over the 8 edge subsets of the triangle,
    /// with ranks computed by hand-rolled component counting.
    #[test]
    fn tutte_triangle_against_independent_enumeration() {
        let edges = [(0usize, 1usize), (1, 2), (2, 0)];
        let comp = |subset: &[usize]| -> i64 {
            let mut parent = [0usize, 1, 2];
            fn find(p: &mut [usize; 3], x: usize) -> usize {
                if p[x] != x {
                    p[x] = find(p, p[x]);
                }
                p[x]
            }
            for &i in subset {
                let (u, v) = edges[i];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
            let mut roots = std::collections::BTreeSet::new();
            for x in 0..3 {
                roots.insert(find(&mut parent, x));
            }
            roots.len() as i64
        };
        let mut expected = HalfPoly::zero();
        let x1 = HalfPoly::var("x").sub(&HalfPoly::one());
        let y1 = HalfPoly::var("y").sub(&HalfPoly::one());
        for mask in 0u8..8 {
            let subset: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            let r = 3 - comp(&subset);
            let term = x1.pow((2 - r) as u32).mul(&y1.pow((subset.len() as i64 - r) as u32));
            expected = expected.add(&term);
        }
        // Frozen value from the enumeration above: x^2 + x + y.
        let frozen = HalfPoly::var("x")
            .pow(2)
            .add(&HalfPoly::var("x"))
            .add(&HalfPoly::var("y"));
        assert_eq!(expected, frozen);
        assert_eq!(triangle().tutte_classical(), frozen);
        assert_eq!(triangle().tutte_recursive(), frozen);
    }

    #[test]
    fn universal_u_edgeless() {
        let g = MultiGraph::new(3, []);
        assert_eq!(g.universal_graph_u(), HalfPoly::var("gamma").pow(3));
    }

    #[test]
    fn universal_u_single_bridge_matches_closed_form() {
        let g = path2();
        assert_eq!(g.universal_graph_u(), g.universal_graph_u_closed_form());
        // One recursion step: x * gamma.
        assert_eq!(
            g.universal_graph_u(),
            HalfPoly::var("x").mul(&HalfPoly::var("gamma"))
        );
    }

    #[test]
    fn universal_u_single_loop_matches_closed_form() {
        let g = loop1();
        assert_eq!(g.universal_graph_u(), g.universal_graph_u_closed_form());
        assert_eq!(
            g.universal_graph_u(),
            HalfPoly::var("y").mul(&HalfPoly::var("gamma"))
        );
    }

    #[test]
    fn universal_u_triangle_matches_closed_form() {
        let g = triangle();
        assert_eq!(g.universal_graph_u(), g.universal_graph_u_closed_form());
    }

    #[test]
    fn same_up_to_vertex_names_detects_relabel() {
        let a = MultiGraph::new(3, [(EdgeId(1), (0, 1)), (EdgeId(2), (1, 2))]);
        let b = MultiGraph::new(3, [(EdgeId(1), (2, 0)), (EdgeId(2), (0, 1))]);
        assert!(a.same_up_to_vertex_names(&b));
        let c = MultiGraph::new(3, [(EdgeId(1), (0, 1)), (EdgeId(2), (2, 1))]);
        assert!(!a.same_up_to_vertex_names(&c));
    }
}
