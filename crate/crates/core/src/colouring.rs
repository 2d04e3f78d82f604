//! Vertex and boundary colour partitions, their propagation through
//! deletion, contraction and duality, and the two quotient multigraphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::gem::Gem;
use crate::multigraph::MultiGraph;
use crate::ribbon::{EdgeId, End, Half, RibbonGraph, Side, SideFlag};

/// Partition of {0..size}. Blocks are anonymous: only the grouping matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<BTreeSet<usize>>,
    size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("element {0} out of range (universe size {1})")]
    OutOfRange(usize, usize),
    #[error("element {0} missing from the partition")]
    Missing(usize),
    #[error("element {0} occurs in two blocks")]
    Duplicated(usize),
}

impl Partition {
    pub fn discrete(size: usize) -> Partition {
        Partition { blocks: (0..size).map(|x| [x].into()).collect(), size }
    }

    /// Everything in one block (empty universe gives no blocks).
    pub fn single(size: usize) -> Partition {
        let blocks = if size == 0 { Vec::new() } else { vec![(0..size).collect()] };
        Partition { blocks, size }
    }

    pub fn from_blocks(size: usize, blocks: Vec<BTreeSet<usize>>) -> Result<Partition, PartitionError> {
        let mut seen = vec![false; size];
        for b in &blocks {
            for &x in b {
                if x >= size {
                    return Err(PartitionError::OutOfRange(x, size));
                }
                if seen[x] {
                    return Err(PartitionError::Duplicated(x));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::Missing(x));
        }
        let mut p = Partition { blocks, size };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        self.blocks.retain(|b| !b.is_empty());
        self.blocks.sort_by_key(|b| *b.iter().next().unwrap());
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn block_index(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .unwrap_or_else(|| panic!("element {x} not in partition"))
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_index(a) == self.block_index(b)
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn merge(&self, a: usize, b: usize) -> Partition {
        let (ia, ib) = (self.block_index(a), self.block_index(b));
        if ia == ib {
            return self.clone();
        }
        let mut blocks = self.blocks.clone();
        let moved = blocks[ib].clone();
        blocks[ia].extend(moved);
        blocks.remove(ib);
        let mut p = Partition { blocks, size: self.size };
        p.normalize();
        p
    }

    /// Transport through an incidence relation: the new partition is the
    /// connected-component closure of (old blocks ∪ incidences), restricted
    /// to the new universe. Old and new elements may relate many-to-many.
    pub fn closure_transport(&self, new_size: usize, incidences: &[(usize, usize)]) -> Partition {
        // Union-find over old ⊔ new.
        let total = self.size + new_size;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        for block in &self.blocks {
            let mut it = block.iter();
            if let Some(&first) = it.next() {
                for &x in it {
                    union(&mut parent, first, x);
                }
            }
        }
        for &(old, new) in incidences {
            union(&mut parent, old, self.size + new);
        }
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for j in 0..new_size {
            let r = find(&mut parent, self.size + j);
            groups.entry(r).or_default().insert(j);
        }
        let mut p = Partition { blocks: groups.into_values().collect(), size: new_size };
        p.normalize();
        p
    }

    /// Transport along a bijection; `origin[new] = old`.
    pub fn bijection_transport(&self, origin: &[usize]) -> Partition {
        let incidences: Vec<(usize, usize)> =
            origin.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        self.closure_transport(origin.len(), &incidences)
    }

    /// Concatenate universes: `other`'s elements are shifted past ours.
    pub fn union_shift(&self, other: &Partition) -> Partition {
        let mut blocks = self.blocks.clone();
        for b in &other.blocks {
            blocks.push(b.iter().map(|&x| x + self.size).collect());
        }
        Partition { blocks, size: self.size + other.size }
    }
}

/// A ribbon graph with a vertex colouring and a boundary colouring, the
/// combinatorial form of a graph embedded in a pseudo-surface. Boundary
/// classes refer to canonical boundary-component positions (0-based
/// internally, 1-based in the file format).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredRibbonGraph {
    pub graph: RibbonGraph,
    pub vclasses: Partition,
    pub bclasses: Partition,
}

impl ColouredRibbonGraph {
    pub fn discrete(graph: RibbonGraph) -> ColouredRibbonGraph {
        let v = graph.vertex_count();
        let b = graph.boundary_count();
        ColouredRibbonGraph {
            graph,
            vclasses: Partition::discrete(v),
            bclasses: Partition::discrete(b),
        }
    }

    pub fn new(
        graph: RibbonGraph,
        vclasses: Partition,
        bclasses: Partition,
    ) -> Result<ColouredRibbonGraph, PartitionError> {
        let v = graph.vertex_count();
        let b = graph.boundary_count();
        if vclasses.size() != v {
            return Err(PartitionError::Missing(vclasses.size().min(v)));
        }
        if bclasses.size() != b {
            return Err(PartitionError::Missing(bclasses.size().min(b)));
        }
        Ok(ColouredRibbonGraph { graph, vclasses, bclasses })
    }

    /// Forget the vertex colouring (make it discrete).
    pub fn forget_vclasses(&self) -> ColouredRibbonGraph {
        ColouredRibbonGraph {
            graph: self.graph.clone(),
            vclasses: Partition::discrete(self.graph.vertex_count()),
            bclasses: self.bclasses.clone(),
        }
    }

    /// Forget the boundary colouring (make it discrete).
    pub fn forget_bclasses(&self) -> ColouredRibbonGraph {
        ColouredRibbonGraph {
            graph: self.graph.clone(),
            vclasses: self.vclasses.clone(),
            bclasses: Partition::discrete(self.graph.boundary_count()),
        }
    }

    /// Edge deletion. Vertex classes are untouched; boundary classes follow
    /// the incidence closure between old and new components.
    pub fn delete_edge(&self, e: EdgeId) -> ColouredRibbonGraph {
        let out = self.graph.delete_edge_with_transport(e);
        let b_new = out.graph.boundary_count();
        let bclasses = self.bclasses.closure_transport(b_new, &out.incidences);
        ColouredRibbonGraph { graph: out.graph, vclasses: self.vclasses.clone(), bclasses }
    }

    /// Edge contraction. Boundary classes ride the component bijection;
    /// vertex classes follow the provenance closure, which realises the
    /// non-loop merge, the orientable-loop twin classes, and the
    /// non-orientable replacement in one rule.
    pub fn contract_edge(&self, e: EdgeId) -> ColouredRibbonGraph {
        let out = self.graph.contract_edge_with_transport(e);
        let bclasses = self.bclasses.bijection_transport(&out.component_origin);
        let mut incidences: Vec<(usize, usize)> = Vec::new();
        for (new_v, prov) in out.vertex_provenance.iter().enumerate() {
            for &old_v in prov {
                incidences.push((old_v, new_v));
            }
        }
        let vclasses = self
            .vclasses
            .closure_transport(out.graph.vertex_count(), &incidences);
        ColouredRibbonGraph { graph: out.graph, vclasses, bclasses }
    }

    /// Geometric dual: vertex and boundary colourings swap along the two
    /// canonical correspondences.
    pub fn geometric_dual(&self) -> ColouredRibbonGraph {
        let out = self.graph.geometric_dual_with_transport();
        // Dual vertex i <- old boundary component i.
        let vclasses = self.bclasses.bijection_transport(&out.vertex_from_component);
        let bclasses = self.vclasses.bijection_transport(&out.component_from_vertex);
        ColouredRibbonGraph { graph: out.graph, vclasses, bclasses }
    }

    /// The multigraph on vertex colour classes with one edge per ribbon
    /// edge.
    pub fn quotient_vertex_graph(&self) -> MultiGraph {
        let edges = self.graph.edge_ids().iter().map(|&e| {
            let (u, w) = self.graph.endpoints(e);
            (e, (self.vclasses.block_index(u), self.vclasses.block_index(w)))
        });
        MultiGraph::new(self.vclasses.block_count(), edges)
    }

    /// The multigraph on boundary colour classes; each ribbon edge joins
    /// the classes of the boundary components along its two band sides.
    pub fn quotient_boundary_graph(&self) -> MultiGraph {
        let comps = self.graph.boundary_components();
        let mut comp_of: BTreeMap<SideFlag, usize> = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &f in &c.flags {
                comp_of.insert(f, i);
            }
        }
        let edges = self.graph.edge_ids().iter().map(|&e| {
            let a = comp_of[&SideFlag { edge: e, end: End::One, side: Side::Right }];
            let b = comp_of[&SideFlag { edge: e, end: End::One, side: Side::Left }];
            (e, (self.bclasses.block_index(a), self.bclasses.block_index(b)))
        });
        MultiGraph::new(self.bclasses.block_count(), edges)
    }

    /// Disjoint union; classes of the two operands stay separate.
    pub fn disjoint_union(&self, other: &ColouredRibbonGraph) -> ColouredRibbonGraph {
        let (graph, edge_map) = self.graph.disjoint_union(&other.graph);
        let vclasses = self.vclasses.union_shift(&other.vclasses);
        // Boundary components of the union are those of the parts; match by
        // flags / host vertices to find the new canonical positions.
        let new = graph.boundary_components();
        let mut incidences: Vec<(usize, usize)> = Vec::new();
        let left = self.graph.boundary_components();
        let right = other.graph.boundary_components();
        let vshift = self.graph.vertex_count();
        for (j, comp) in new.iter().enumerate() {
            if let Some(&f) = comp.flags.first() {
                // Which operand owns this flag?
                if self.graph.has_edge(f.edge)
                    && edge_map.values().all(|&m| m != f.edge)
                {
                    let i = left
                        .iter()
                        .position(|c| c.flags.contains(&f))
                        .expect("flag belongs to a left component");
                    incidences.push((i, j));
                } else {
                    let (orig, _) = edge_map
                        .iter()
                        .find(|(_, &m)| m == f.edge)
                        .expect("flag belongs to a right component");
                    let g = SideFlag { edge: *orig, end: f.end, side: f.side };
                    let i = right
                        .iter()
                        .position(|c| c.flags.contains(&g))
                        .expect("flag belongs to a right component");
                    incidences.push((left.len() + i, j));
                }
            } else {
                let v = *comp.host_vertices.iter().next().unwrap();
                if v < vshift {
                    let i = left
                        .iter()
                        .position(|c| c.flags.is_empty() && c.host_vertices.contains(&v))
                        .unwrap();
                    incidences.push((i, j));
                } else {
                    let i = right
                        .iter()
                        .position(|c| {
                            c.flags.is_empty() && c.host_vertices.contains(&(v - vshift))
                        })
                        .unwrap();
                    incidences.push((left.len() + i, j));
                }
            }
        }
        let bclasses = self
            .bclasses
            .union_shift(&other.bclasses)
            .closure_transport(new.len(), &incidences);
        ColouredRibbonGraph { graph, vclasses, bclasses }
    }

    /// One-point join at (vg, vh): the joined vertices' classes are
    /// identified, as are the classes of the two boundary components merged
    /// by the splice.
    pub fn join_at(&self, vg: usize, other: &ColouredRibbonGraph, vh: usize) -> ColouredRibbonGraph {
        let out = self.graph.join_at(vg, &other.graph, vh);
        let vsize = out.graph.vertex_count();
        let mut vinc: Vec<(usize, usize)> = Vec::new();
        for (old, &new) in out.left_vertex.iter().enumerate() {
            vinc.push((old, new));
        }
        for (old, &new) in out.right_vertex.iter().enumerate() {
            vinc.push((self.graph.vertex_count() + old, new));
        }
        let vclasses = self
            .vclasses
            .union_shift(&other.vclasses)
            .closure_transport(vsize, &vinc);
        let bsize = out.graph.boundary_count();
        let mut binc: Vec<(usize, usize)> = out.left_incidences.clone();
        let left_b = self.graph.boundary_count();
        for &(old, new) in &out.right_incidences {
            binc.push((left_b + old, new));
        }
        let bclasses = self
            .bclasses
            .union_shift(&other.bclasses)
            .closure_transport(bsize, &binc);
        ColouredRibbonGraph { graph: out.graph, vclasses, bclasses }
    }

    /// Equivalence of coloured ribbon graphs: a ribbon-graph equivalence
    /// whose induced vertex and boundary maps preserve the colour classes.
    /// Exhaustive flag-propagation search; intended for small graphs.
    pub fn equivalent(&self, other: &ColouredRibbonGraph) -> bool {
        coloured_equivalent(self, other)
    }
}

/// Per-flag colour data for the equivalence search.
struct ColourContext {
    gem: Gem,
    vblock: Vec<usize>,
    fblock: Vec<usize>,
    /// (vblock, bblock) of each isolated vertex.
    isolated: Vec<(usize, usize)>,
}

fn colour_context(cg: &ColouredRibbonGraph) -> ColourContext {
    let gem = Gem::from_ribbon(&cg.graph);
    let comps = cg.graph.boundary_components();
    let mut comp_of: BTreeMap<SideFlag, usize> = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &f in &c.flags {
            comp_of.insert(f, i);
        }
    }
    let vblock = (0..gem.labels.len())
        .map(|i| cg.vclasses.block_index(gem.vertex_of[i]))
        .collect();
    let fblock = (0..gem.labels.len())
        .map(|i| cg.bclasses.block_index(comp_of[&gem.labels[i]]))
        .collect();
    let isolated = comps
        .iter()
        .enumerate()
        .filter(|(_, c)| c.flags.is_empty())
        .map(|(i, c)| {
            let v = *c.host_vertices.iter().next().unwrap();
            (cg.vclasses.block_index(v), cg.bclasses.block_index(i))
        })
        .collect();
    ColourContext { gem, vblock, fblock, isolated }
}

fn coloured_equivalent(a: &ColouredRibbonGraph, b: &ColouredRibbonGraph) -> bool {
    let ca = colour_context(a);
    let cb = colour_context(b);
    if ca.gem.labels.len() != cb.gem.labels.len()
        || ca.isolated.len() != cb.isolated.len()
        || a.vclasses.block_count() != b.vclasses.block_count()
        || a.bclasses.block_count() != b.bclasses.block_count()
    {
        return false;
    }
    // Flag components of a.
    let n = ca.gem.labels.len();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        comp_of[s] = id;
        let mut members = vec![];
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in [ca.gem.sigma0[x], ca.gem.sigma1[x], ca.gem.sigma2[x]] {
                if comp_of[y] == usize::MAX {
                    comp_of[y] = id;
                    stack.push(y);
                }
            }
        }
        comps.push(members);
    }

    // Propagate a flag bijection from a single seed pair; the involutions
    // force the rest of the component.
    let propagate = |seed_a: usize,
                     seed_b: usize,
                     map: &mut BTreeMap<usize, usize>,
                     used: &mut BTreeSet<usize>|
     -> bool {
        let mut queue = vec![(seed_a, seed_b)];
        while let Some((x, y)) = queue.pop() {
            match map.get(&x) {
                Some(&y2) => {
                    if y2 != y {
                        return false;
                    }
                    continue;
                }
                None => {
                    if used.contains(&y) {
                        return false;
                    }
                    map.insert(x, y);
                    used.insert(y);
                    queue.push((ca.gem.sigma0[x], cb.gem.sigma0[y]));
                    queue.push((ca.gem.sigma1[x], cb.gem.sigma1[y]));
                    queue.push((ca.gem.sigma2[x], cb.gem.sigma2[y]));
                }
            }
        }
        true
    };

    // Class-block maps must stay consistent (and injective).
    fn blocks_ok(
        map: &BTreeMap<usize, usize>,
        ca: &ColourContext,
        cb: &ColourContext,
        extra: &[(usize, usize)],
    ) -> bool {
        let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vused: BTreeSet<usize> = BTreeSet::new();
        let mut bmap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut bused: BTreeSet<usize> = BTreeSet::new();
        let mut add = |m: &mut BTreeMap<usize, usize>, u: &mut BTreeSet<usize>, k: usize, v: usize| -> bool {
            match m.get(&k) {
                Some(&v2) => v2 == v,
                None => {
                    if u.contains(&v) {
                        false
                    } else {
                        m.insert(k, v);
                        u.insert(v);
                        true
                    }
                }
            }
        };
        for (&x, &y) in map {
            if !add(&mut vmap, &mut vused, ca.vblock[x], cb.vblock[y])
                || !add(&mut bmap, &mut bused, ca.fblock[x], cb.fblock[y])
            {
                return false;
            }
        }
        // Isolated vertices paired as (a index, b index).
        for &(i, j) in extra {
            let (va, ba) = ca.isolated[i];
            let (vb2, bb2) = cb.isolated[j];
            if !add(&mut vmap, &mut vused, va, vb2) || !add(&mut bmap, &mut bused, ba, bb2) {
                return false;
            }
        }
        true
    }

    // Depth-first over components, then over isolated-vertex pairings.
    fn search(
        comp_idx: usize,
        comps: &[Vec<usize>],
        ca: &ColourContext,
        cb: &ColourContext,
        map: &mut BTreeMap<usize, usize>,
        used: &mut BTreeSet<usize>,
        propagate: &impl Fn(usize, usize, &mut BTreeMap<usize, usize>, &mut BTreeSet<usize>) -> bool,
    ) -> bool {
        if comp_idx == comps.len() {
            // Match isolated vertices by backtracking.
            fn match_isolated(
                i: usize,
                ca: &ColourContext,
                cb: &ColourContext,
                map: &BTreeMap<usize, usize>,
                chosen: &mut Vec<(usize, usize)>,
                used_b: &mut BTreeSet<usize>,
            ) -> bool {
                if i == ca.isolated.len() {
                    return blocks_ok(map, ca, cb, chosen);
                }
                for j in 0..cb.isolated.len() {
                    if used_b.contains(&j) {
                        continue;
                    }
                    chosen.push((i, j));
                    used_b.insert(j);
                    if blocks_ok(map, ca, cb, chosen)
                        && match_isolated(i + 1, ca, cb, map, chosen, used_b)
                    {
                        return true;
                    }
                    chosen.pop();
                    used_b.remove(&j);
                }
                false
            }
            let mut chosen = Vec::new();
            let mut used_b = BTreeSet::new();
            return match_isolated(0, ca, cb, map, &mut chosen, &mut used_b);
        }
        let seed_a = comps[comp_idx][0];
        for seed_b in 0..cb.gem.labels.len() {
            if used.contains(&seed_b) {
                continue;
            }
            let mut map2 = map.clone();
            let mut used2 = used.clone();
            if propagate(seed_a, seed_b, &mut map2, &mut used2)
                && blocks_ok(&map2, ca, cb, &[])
                && search(comp_idx + 1, comps, ca, cb, &mut map2, &mut used2, propagate)
            {
                *map = map2;
                *used = used2;
                return true;
            }
        }
        false
    }

    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    search(0, &comps, &ca, &cb, &mut map, &mut used, &propagate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn partition_closure_merges_through_incidence() {
        let p = Partition::from_blocks(3, vec![[0].into(), [1].into(), [2].into()]).unwrap();
        // Old 0 and 1 both touch new 0; old 2 touches new 1.
        let q = p.closure_transport(2, &[(0, 0), (1, 0), (2, 1)]);
        assert_eq!(q, Partition::discrete(2));
        // Old 0 touches both new components: they end up together.
        let r = p.closure_transport(2, &[(0, 0), (0, 1), (1, 0), (2, 1)]);
        assert_eq!(r, Partition::single(2));
    }

    #[test]
    fn delete_splits_boundary_class() {
        // Two interlaced loops, single boundary class; deleting one loop
        // leaves an annulus whose two circles stay in ONE class.
        let g = fixtures::interlaced_loops();
        let cg = ColouredRibbonGraph::new(
            g,
            Partition::discrete(1),
            Partition::single(1),
        )
        .unwrap();
        let d = cg.delete_edge(EdgeId(2));
        assert_eq!(d.graph.boundary_count(), 2);
        assert_eq!(d.bclasses.block_count(), 1);
    }

    #[test]
    fn delete_single_edge_of_bridge_graph() {
        // The single boundary circle splits into the two vertex circles;
        // the split rule keeps the offspring in one shared class.
        let cg = fixtures::discrete(fixtures::single_edge());
        let d = cg.delete_edge(EdgeId(1));
        assert_eq!(d.graph.vertex_count(), 2);
        assert_eq!(d.graph.boundary_count(), 2);
        assert_eq!(d.bclasses, Partition::single(2));
        assert_eq!(d.vclasses, Partition::discrete(2));
    }

    #[test]
    fn delete_merges_boundary_classes_of_adjacent_loops() {
        // Rotation e e f f with discrete boundary classes. Deleting f
        // merges the classes of the two circles that f's sides joined.
        let g = fixtures::adjacent_loops();
        let cg = fixtures::discrete(g);
        assert_eq!(cg.graph.boundary_count(), 3);
        let d = cg.delete_edge(EdgeId(2));
        assert_eq!(d.graph.boundary_count(), 2);
        // The two circles of the remaining annulus: one inherits a merged
        // class, and the class count drops to 2.
        assert_eq!(d.bclasses.block_count(), 2);
    }

    #[test]
    fn contract_interlaced_loop_creates_twin_vertex_class() {
        let cg = ColouredRibbonGraph::new(
            fixtures::interlaced_loops(),
            Partition::discrete(1),
            Partition::single(1),
        )
        .unwrap();
        let c = cg.contract_edge(EdgeId(2));
        assert_eq!(c.graph.vertex_count(), 2);
        assert!(!c.graph.is_loop_edge(EdgeId(1)));
        assert_eq!(c.graph.boundary_count(), 1);
        // Orientable-loop contraction: the two fresh vertices share a class.
        assert_eq!(c.vclasses.block_count(), 1);
    }

    #[test]
    fn contract_bridge_merges_vertex_classes() {
        let cg = ColouredRibbonGraph::new(
            fixtures::single_edge(),
            Partition::single(2),
            Partition::discrete(1),
        )
        .unwrap();
        let c = cg.contract_edge(EdgeId(1));
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.vclasses.block_count(), 1);
    }

    #[test]
    fn contract_nonorientable_loop_keeps_class() {
        let cg = fixtures::discrete(fixtures::nonorientable_loop());
        let c = cg.contract_edge(EdgeId(1));
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 0);
        assert_eq!(c.vclasses.block_count(), 1);
        assert_eq!(c.graph.boundary_count(), 1);
    }

    #[test]
    fn dual_of_bridge_graph_swaps_colours() {
        let cg = fixtures::discrete(fixtures::single_edge());
        let d = cg.geometric_dual();
        // Dual of the one-edge bridge graph is the orientable loop: one
        // vertex from the single boundary class, two boundary components
        // from the two vertex classes.
        assert_eq!(d.graph.vertex_count(), 1);
        assert_eq!(d.vclasses.block_count(), 1);
        assert_eq!(d.graph.boundary_count(), 2);
        assert_eq!(d.bclasses.block_count(), 2);
    }

    #[test]
    fn dual_is_an_involution_on_coloured_graphs() {
        let cg = fixtures::discrete(fixtures::interlaced_loops());
        let dd = cg.geometric_dual().geometric_dual();
        assert!(cg.equivalent(&dd));
        let cg2 = fixtures::discrete(fixtures::nonorientable_loop());
        let dd2 = cg2.geometric_dual().geometric_dual();
        assert!(cg2.equivalent(&dd2));
    }

    #[test]
    fn dual_of_nonorientable_loop_swaps_class_profile() {
        let cg = fixtures::discrete(fixtures::nonorientable_loop());
        let d = cg.geometric_dual();
        assert_eq!(d.vclasses.block_count(), cg.bclasses.block_count());
        assert_eq!(d.bclasses.block_count(), cg.vclasses.block_count());
    }

    #[test]
    fn quotient_vertex_graph_examples() {
        let b1 = fixtures::discrete(fixtures::single_edge());
        let q = b1.quotient_vertex_graph();
        assert_eq!(q.vertex_count(), 2);
        assert!(!q.is_loop(EdgeId(1)));

        let merged = ColouredRibbonGraph::new(
            fixtures::single_edge(),
            Partition::single(2),
            Partition::discrete(1),
        )
        .unwrap();
        let q2 = merged.quotient_vertex_graph();
        assert_eq!(q2.vertex_count(), 1);
        assert!(q2.is_loop(EdgeId(1)));

        let theta = fixtures::discrete(fixtures::interlaced_loops());
        let q3 = theta.quotient_vertex_graph();
        assert_eq!(q3.vertex_count(), 1);
        assert_eq!(q3.edge_count(), 2);
        assert!(q3.is_loop(EdgeId(1)) && q3.is_loop(EdgeId(2)));
    }

    #[test]
    fn quotient_boundary_graph_examples() {
        let annulus = fixtures::discrete(fixtures::orientable_loop());
        let q = annulus.quotient_boundary_graph();
        assert_eq!(q.vertex_count(), 2);
        assert!(!q.is_loop(EdgeId(1)));

        let one_class = ColouredRibbonGraph::new(
            fixtures::orientable_loop(),
            Partition::discrete(1),
            Partition::single(2),
        )
        .unwrap();
        let q2 = one_class.quotient_boundary_graph();
        assert_eq!(q2.vertex_count(), 1);
        assert!(q2.is_loop(EdgeId(1)));

        let theta = ColouredRibbonGraph::new(
            fixtures::interlaced_loops(),
            Partition::discrete(1),
            Partition::single(1),
        )
        .unwrap();
        let q3 = theta.quotient_boundary_graph();
        assert_eq!(q3.vertex_count(), 1);
        assert_eq!(q3.edge_count(), 2);
        assert!(q3.is_loop(EdgeId(1)) && q3.is_loop(EdgeId(2)));
    }

    #[test]
    fn forgetting_colours_commutes_with_minors() {
        let cg = ColouredRibbonGraph::new(
            fixtures::interlaced_loops(),
            Partition::discrete(1),
            Partition::single(1),
        )
        .unwrap();
        for &e in cg.graph.edge_ids().clone().iter() {
            assert_eq!(cg.delete_edge(e).graph, cg.graph.delete_edge(e));
            assert_eq!(cg.contract_edge(e).graph, cg.graph.contract_edge(e));
        }
    }
}
