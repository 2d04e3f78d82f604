//! Ribbon graphs as signed rotation systems, their boundary components,
//! topological parameters, minors, and (partial) duality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::gem::Gem;
use crate::halfint::HalfInt;
use crate::multigraph::MultiGraph;

/// Stable edge identifier. File format and CLI use 1-based ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    One,
    Two,
}

impl End {
    pub fn index(self) -> u8 {
        match self {
            End::One => 1,
            End::Two => 2,
        }
    }

    pub fn other(self) -> End {
        match self {
            End::One => End::Two,
            End::Two => End::One,
        }
    }
}

/// One of the two half-edges of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half {
    pub edge: EdgeId,
    pub end: End,
}

impl Half {
    pub fn new(edge: u32, end: u8) -> Half {
        Half {
            edge: EdgeId(edge),
            end: match end {
                1 => End::One,
                2 => End::Two,
                _ => panic!("end must be 1 or 2"),
            },
        }
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end.index())
    }
}

/// Side of a half-edge, looking along the stub away from the vertex with
/// the rotation read counterclockwise: Left is the counterclockwise corner,
/// Right the clockwise one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Quarter-edge token: the unit of boundary tracing. A graph with m edges
/// has exactly 4m side-flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideFlag {
    pub edge: EdgeId,
    pub end: End,
    pub side: Side,
}

impl fmt::Display for SideFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        write!(f, "{}.{}{}", self.edge, self.end.index(), s)
    }
}

/// One closed walk along the free boundary of the ribbon surface. Flagless
/// components belong to isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    /// Canonical 1-based index. Components with flags are numbered by their
    /// smallest flag; flagless ones follow in vertex order.
    pub index: usize,
    /// Flags in directed walk order, starting at the smallest flag.
    pub flags: Vec<SideFlag>,
    /// Vertices whose disc boundary the walk visits.
    pub host_vertices: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Diagnostics {
    #[error("half-edge multiplicity: {half} occurs {count} times")]
    HalfEdgeMultiplicity { half: Half, count: usize },
    #[error("missing half-edge {half}")]
    MissingHalf { half: Half },
    #[error("twist entry for nonexistent edge {edge}")]
    TwistUnknownEdge { edge: EdgeId },
}

/// A ribbon graph: cyclic half-edge order per vertex plus a twist flag per
/// edge. Values are immutable after construction; every operation returns a
/// fresh graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    rotations: Vec<Vec<Half>>,
    twisted: BTreeSet<EdgeId>,
    edges: BTreeSet<EdgeId>,
}

/// Boundary transport produced by edge deletion: pairs of (old component,
/// new component) positions that share a surviving flag, or that meet at a
/// (newly) isolated vertex.
pub struct DeleteOutcome {
    pub graph: RibbonGraph,
    pub incidences: Vec<(usize, usize)>,
}

/// Boundary and vertex transport produced by contraction. Contraction
/// preserves boundary components, so the transport is a bijection.
pub struct ContractOutcome {
    pub graph: RibbonGraph,
    /// New component position -> old component position.
    pub component_origin: Vec<usize>,
    /// New vertex -> set of old vertices it absorbed.
    pub vertex_provenance: Vec<BTreeSet<usize>>,
}

/// Correspondences carried by geometric duality.
pub struct DualOutcome {
    pub graph: RibbonGraph,
    /// Dual vertex i corresponds to boundary component i of the original
    /// (positional identity by construction); kept explicit for clarity.
    pub vertex_from_component: Vec<usize>,
    /// Dual boundary component position -> original vertex.
    pub component_from_vertex: Vec<usize>,
}

/// Transport for the one-point join.
pub struct JoinOutcome {
    pub graph: RibbonGraph,
    /// Map from a vertex of the left operand to the joined graph.
    pub left_vertex: Vec<usize>,
    /// Map from a vertex of the right operand to the joined graph.
    pub right_vertex: Vec<usize>,
    /// Map edge of right operand -> its id in the joined graph.
    pub right_edge: BTreeMap<EdgeId, EdgeId>,
    /// (old-left components, old-right components, incidences with the new
    /// components) in the same closure format as deletion.
    pub left_incidences: Vec<(usize, usize)>,
    pub right_incidences: Vec<(usize, usize)>,
}

impl RibbonGraph {
    pub fn try_new(
        mut rotations: Vec<Vec<Half>>,
        twisted: impl IntoIterator<Item = EdgeId>,
    ) -> Result<RibbonGraph, Diagnostics> {
        let twisted: BTreeSet<EdgeId> = twisted.into_iter().collect();
        let mut counts: BTreeMap<Half, usize> = BTreeMap::new();
        for rot in &rotations {
            for &h in rot {
                *counts.entry(h).or_insert(0) += 1;
            }
        }
        for (&half, &count) in &counts {
            if count > 1 {
                return Err(Diagnostics::HalfEdgeMultiplicity { half, count });
            }
        }
        let edges: BTreeSet<EdgeId> = counts.keys().map(|h| h.edge).collect();
        for &e in &edges {
            for end in [End::One, End::Two] {
                let half = Half { edge: e, end };
                if !counts.contains_key(&half) {
                    return Err(Diagnostics::MissingHalf { half });
                }
            }
        }
        for &e in &twisted {
            if !edges.contains(&e) {
                return Err(Diagnostics::TwistUnknownEdge { edge: e });
            }
        }
        for rot in &mut rotations {
            canonical_rotate(rot);
        }
        Ok(RibbonGraph { rotations, twisted, edges })
    }

    /// Convenience constructor from (edge, end) pairs.
    pub fn from_rotations(
        rotations: &[&[(u32, u8)]],
        twisted: &[u32],
    ) -> Result<RibbonGraph, Diagnostics> {
        let rot = rotations
            .iter()
            .map(|r| r.iter().map(|&(e, end)| Half::new(e, end)).collect())
            .collect();
        RibbonGraph::try_new(rot, twisted.iter().map(|&e| EdgeId(e)))
    }

    /// Re-check the construction invariants.
    pub fn validate(&self) -> Result<(), Diagnostics> {
        RibbonGraph::try_new(self.rotations.clone(), self.twisted.iter().copied()).map(|_| ())
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_twisted(&self, e: EdgeId) -> bool {
        self.twisted.contains(&e)
    }

    pub fn rotations(&self) -> &[Vec<Half>] {
        &self.rotations
    }

    pub fn max_edge_id(&self) -> u32 {
        self.edges.iter().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn vertex_of_half(&self, h: Half) -> usize {
        self.rotations
            .iter()
            .position(|rot| rot.contains(&h))
            .unwrap_or_else(|| panic!("unknown half-edge {h}"))
    }

    /// (vertex of e.1, vertex of e.2).
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        (
            self.vertex_of_half(Half { edge: e, end: End::One }),
            self.vertex_of_half(Half { edge: e, end: End::Two }),
        )
    }

    pub fn is_loop_edge(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    /// Forget the embedding.
    pub fn underlying_multigraph(&self) -> MultiGraph {
        MultiGraph::new(
            self.vertex_count(),
            self.edges.iter().map(|&e| (e, self.endpoints(e))),
        )
    }

    /// Number of connected components, isolated vertices included.
    pub fn components(&self) -> usize {
        self.underlying_multigraph().components()
    }

    /// Boundary components in canonical order.
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let gem = Gem::from_ribbon(self);
        let mut out: Vec<BoundaryComponent> = gem
            .faces()
            .into_iter()
            .map(|f| BoundaryComponent { index: 0, flags: f.flags, host_vertices: f.vertices })
            .collect();
        for (v, rot) in self.rotations.iter().enumerate() {
            if rot.is_empty() {
                out.push(BoundaryComponent {
                    index: 0,
                    flags: Vec::new(),
                    host_vertices: [v].into(),
                });
            }
        }
        for (i, c) in out.iter_mut().enumerate() {
            c.index = i + 1;
        }
        out
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_components().len()
    }

    /// Euler genus via 2k - v + e - b.
    pub fn euler_genus(&self) -> i64 {
        let g = 2 * self.components() as i64 - self.vertex_count() as i64
            + self.edge_count() as i64
            - self.boundary_count() as i64;
        debug_assert!(g >= 0);
        g
    }

    /// Orientable iff twists can be removed by local reorientation: no cycle
    /// carries odd total twist.
    pub fn orientable(&self) -> bool {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for &e in &self.edges {
            let (u, v) = self.endpoints(e);
            if u == v {
                if self.is_twisted(e) {
                    return false;
                }
            } else {
                adj[u].push((v, self.is_twisted(e)));
                adj[v].push((u, self.is_twisted(e)));
            }
        }
        let mut side: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                let su = side[u].unwrap();
                for &(v, t) in &adj[u] {
                    let want = su ^ t;
                    match side[v] {
                        None => {
                            side[v] = Some(want);
                            queue.push(v);
                        }
                        Some(s) if s != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Spanning ribbon subgraph on the edge set A.
    pub fn restrict(&self, subset: &BTreeSet<EdgeId>) -> RibbonGraph {
        debug_assert!(subset.is_subset(&self.edges));
        let rotations = self
            .rotations
            .iter()
            .map(|rot| rot.iter().copied().filter(|h| subset.contains(&h.edge)).collect())
            .collect();
        let twisted = self.twisted.intersection(subset).copied();
        RibbonGraph::try_new(rotations, twisted).expect("restriction stays valid")
    }

    /// Half-integer rank rho(A) = (|A| + |V| - b(A)) / 2 of the spanning
    /// subgraph on A.
    pub fn rho(&self, subset: &BTreeSet<EdgeId>) -> HalfInt {
        let b = self.restrict(subset).boundary_count() as i64;
        HalfInt::half(subset.len() as i64 + self.vertex_count() as i64 - b)
    }

    pub fn rho_total(&self) -> HalfInt {
        self.rho(&self.edges.clone())
    }

    pub fn delete_edge(&self, e: EdgeId) -> RibbonGraph {
        assert!(self.has_edge(e), "unknown edge {e}");
        let rotations = self
            .rotations
            .iter()
            .map(|rot| rot.iter().copied().filter(|h| h.edge != e).collect())
            .collect();
        let twisted = self.twisted.iter().copied().filter(|&t| t != e);
        RibbonGraph::try_new(rotations, twisted).expect("deletion stays valid")
    }

    /// Deletion together with the incidence relation between old and new
    /// boundary components (shared surviving flags; flagless components at
    /// isolated vertices matched through their host vertex).
    pub fn delete_edge_with_transport(&self, e: EdgeId) -> DeleteOutcome {
        let old = self.boundary_components();
        let graph = self.delete_edge(e);
        let new = graph.boundary_components();
        let old_of_flag: BTreeMap<SideFlag, usize> = index_flags(&old);
        let mut incidences: Vec<(usize, usize)> = Vec::new();
        for (j, comp) in new.iter().enumerate() {
            if comp.flags.is_empty() {
                let v = *comp.host_vertices.iter().next().unwrap();
                if self.rotations[v].is_empty() {
                    // Was isolated before: its own flagless component.
                    let i = old
                        .iter()
                        .position(|c| c.flags.is_empty() && c.host_vertices.contains(&v))
                        .expect("isolated vertex had a boundary circle");
                    incidences.push((i, j));
                } else {
                    // Newly isolated: incident to every old component whose
                    // walk visited v.
                    for (i, c) in old.iter().enumerate() {
                        if c.host_vertices.contains(&v) {
                            incidences.push((i, j));
                        }
                    }
                }
            } else {
                let mut olds: BTreeSet<usize> = BTreeSet::new();
                for f in &comp.flags {
                    olds.insert(old_of_flag[f]);
                }
                for i in olds {
                    incidences.push((i, j));
                }
            }
        }
        DeleteOutcome { graph, incidences }
    }

    /// Contraction, implemented as partial duality at the edge followed by
    /// deletion.
    pub fn contract_edge(&self, e: EdgeId) -> RibbonGraph {
        self.contract_edge_with_transport(e).graph
    }

    pub fn contract_edge_with_transport(&self, e: EdgeId) -> ContractOutcome {
        assert!(self.has_edge(e), "unknown edge {e}");
        let old = self.boundary_components();
        let old_of_flag: BTreeMap<SideFlag, usize> = index_flags(&old);
        let mut gem = Gem::from_ribbon(self);
        gem.partial_dual(&[e].into());
        let (gem, extra_flagless) = gem.delete_edge(e);
        let rebuilt = gem.to_ribbon(&extra_flagless);
        let graph = rebuilt.graph;
        let inverse: BTreeMap<SideFlag, SideFlag> =
            rebuilt.flag_map.iter().map(|(&o, &n)| (n, o)).collect();
        let new = graph.boundary_components();
        let mut component_origin: Vec<usize> = Vec::with_capacity(new.len());
        for comp in &new {
            if comp.flags.is_empty() {
                let p = *comp.host_vertices.iter().next().unwrap();
                let orbit = &rebuilt.vertex_orbits[p];
                let origin = if orbit.is_empty() {
                    // Inherited isolated vertex.
                    let v = *rebuilt.vertex_provenance[p].iter().next().unwrap();
                    old.iter()
                        .position(|c| c.flags.is_empty() && c.host_vertices.contains(&v))
                        .expect("isolated vertex had a boundary circle")
                } else {
                    // Fresh vertex from an all-e orbit; that orbit is an old
                    // boundary circle.
                    let i = old_of_flag[&orbit[0]];
                    debug_assert!(orbit.iter().all(|f| old_of_flag[f] == i));
                    i
                };
                component_origin.push(origin);
            } else {
                let i = old_of_flag[&inverse[&comp.flags[0]]];
                debug_assert!(comp.flags.iter().all(|f| old_of_flag[&inverse[f]] == i));
                component_origin.push(i);
            }
        }
        // Contraction preserves boundary components.
        debug_assert_eq!(new.len(), old.len());
        debug_assert_eq!(
            component_origin.iter().copied().collect::<BTreeSet<_>>().len(),
            old.len()
        );
        ContractOutcome {
            graph,
            component_origin,
            vertex_provenance: rebuilt.vertex_provenance,
        }
    }

    /// Partial dual with respect to an edge subset.
    pub fn partial_dual(&self, subset: &BTreeSet<EdgeId>) -> RibbonGraph {
        debug_assert!(subset.is_subset(&self.edges));
        let mut gem = Gem::from_ribbon(self);
        gem.partial_dual(subset);
        gem.to_ribbon(&[]).graph
    }

    pub fn geometric_dual(&self) -> RibbonGraph {
        self.geometric_dual_with_transport().graph
    }

    pub fn geometric_dual_with_transport(&self) -> DualOutcome {
        let old = self.boundary_components();
        let mut gem = Gem::from_ribbon(self);
        gem.partial_dual(&self.edges.clone());
        let rebuilt = gem.to_ribbon(&[]);
        let graph = rebuilt.graph;
        // Dual vertices are the old boundary orbits; both sides are ordered
        // by smallest flag, flagless entries after, so the correspondence is
        // positional.
        debug_assert_eq!(graph.vertex_count(), old.len());
        for (i, comp) in old.iter().enumerate() {
            let orbit: BTreeSet<SideFlag> = rebuilt.vertex_orbits[i].iter().copied().collect();
            let expect: BTreeSet<SideFlag> = comp.flags.iter().copied().collect();
            debug_assert_eq!(orbit, expect, "dual vertex order must follow boundary order");
        }
        let vertex_from_component = (0..old.len()).collect();
        let inverse: BTreeMap<SideFlag, SideFlag> =
            rebuilt.flag_map.iter().map(|(&o, &n)| (n, o)).collect();
        let dual_comps = graph.boundary_components();
        debug_assert_eq!(dual_comps.len(), self.vertex_count());
        let component_from_vertex = dual_comps
            .iter()
            .map(|comp| {
                if comp.flags.is_empty() {
                    let p = *comp.host_vertices.iter().next().unwrap();
                    *rebuilt.vertex_provenance[p].iter().next().unwrap()
                } else {
                    let f = inverse[&comp.flags[0]];
                    self.vertex_of_half(Half { edge: f.edge, end: f.end })
                }
            })
            .collect();
        DualOutcome { graph, vertex_from_component, component_from_vertex }
    }

    /// Disjoint union; the right operand's edges are shifted past the left
    /// operand's largest id.
    pub fn disjoint_union(&self, other: &RibbonGraph) -> (RibbonGraph, BTreeMap<EdgeId, EdgeId>) {
        let shift = self.max_edge_id();
        let edge_map: BTreeMap<EdgeId, EdgeId> = other
            .edges
            .iter()
            .map(|&e| (e, EdgeId(e.0 + shift)))
            .collect();
        let mut rotations = self.rotations.clone();
        for rot in &other.rotations {
            rotations.push(rot.iter().map(|h| Half { edge: edge_map[&h.edge], end: h.end }).collect());
        }
        let twisted = self
            .twisted
            .iter()
            .copied()
            .chain(other.twisted.iter().map(|e| edge_map[e]));
        let graph = RibbonGraph::try_new(rotations, twisted).expect("union stays valid");
        (graph, edge_map)
    }

    /// One-point join: merge vertex `vg` of self with vertex `vh` of other,
    /// concatenating their rotations at the canonical arc (after the last
    /// stored half-edge of each).
    pub fn join_at(&self, vg: usize, other: &RibbonGraph, vh: usize) -> JoinOutcome {
        assert!(vg < self.vertex_count(), "unknown vertex {vg}");
        assert!(vh < other.vertex_count(), "unknown vertex {vh}");
        let shift = self.max_edge_id();
        let right_edge: BTreeMap<EdgeId, EdgeId> = other
            .edges
            .iter()
            .map(|&e| (e, EdgeId(e.0 + shift)))
            .collect();
        let map_half =
            |h: &Half| -> Half { Half { edge: right_edge[&h.edge], end: h.end } };
        let mut rotations = self.rotations.clone();
        rotations[vg].extend(other.rotations[vh].iter().map(map_half));
        let mut right_vertex = Vec::with_capacity(other.vertex_count());
        for (v, rot) in other.rotations.iter().enumerate() {
            if v == vh {
                right_vertex.push(vg);
            } else {
                right_vertex.push(rotations.len());
                rotations.push(rot.iter().map(map_half).collect());
            }
        }
        let left_vertex: Vec<usize> = (0..self.vertex_count()).collect();
        let twisted: Vec<EdgeId> = self
            .twisted
            .iter()
            .copied()
            .chain(other.twisted.iter().map(|e| right_edge[e]))
            .collect();
        let graph = RibbonGraph::try_new(rotations, twisted).expect("join stays valid");

        // Boundary transport: surviving flags keep their identity (right
        // side modulo the id shift).
        let old_left = self.boundary_components();
        let old_right = other.boundary_components();
        let new = graph.boundary_components();
        let new_of_flag: BTreeMap<SideFlag, usize> = index_flags(&new);
        let mut left_incidences = Vec::new();
        let mut right_incidences = Vec::new();
        // Which new component absorbs a flagless old circle at the joined
        // vertex: the one passing the splice arc, i.e. containing the Right
        // corner of the first stub of the other side (or the flagless circle
        // of the merged vertex when both sides are edgeless there).
        let absorbing = |rot: &[Half], mapped: bool| -> Option<usize> {
            rot.first().map(|h| {
                let h = if mapped { map_half(h) } else { *h };
                new_of_flag[&SideFlag { edge: h.edge, end: h.end, side: Side::Right }]
            })
        };
        for (i, comp) in old_left.iter().enumerate() {
            if comp.flags.is_empty() {
                let v = *comp.host_vertices.iter().next().unwrap();
                if v == vg {
                    let j = absorbing(&other.rotations[vh], true).unwrap_or_else(|| {
                        new.iter()
                            .position(|c| c.flags.is_empty() && c.host_vertices.contains(&vg))
                            .expect("merged vertex still edgeless")
                    });
                    left_incidences.push((i, j));
                } else {
                    let j = new
                        .iter()
                        .position(|c| c.flags.is_empty() && c.host_vertices.contains(&v))
                        .expect("isolated vertex keeps its circle");
                    left_incidences.push((i, j));
                }
            } else {
                let mut js = BTreeSet::new();
                for f in &comp.flags {
                    js.insert(new_of_flag[f]);
                }
                for j in js {
                    left_incidences.push((i, j));
                }
            }
        }
        for (i, comp) in old_right.iter().enumerate() {
            if comp.flags.is_empty() {
                let v = *comp.host_vertices.iter().next().unwrap();
                if v == vh {
                    let j = absorbing(&self.rotations[vg], false).unwrap_or_else(|| {
                        new.iter()
                            .position(|c| c.flags.is_empty() && c.host_vertices.contains(&vg))
                            .expect("merged vertex still edgeless")
                    });
                    right_incidences.push((i, j));
                } else {
                    let nv = right_vertex[v];
                    let j = new
                        .iter()
                        .position(|c| c.flags.is_empty() && c.host_vertices.contains(&nv))
                        .expect("isolated vertex keeps its circle");
                    right_incidences.push((i, j));
                }
            } else {
                let mut js = BTreeSet::new();
                for f in &comp.flags {
                    let g = SideFlag { edge: right_edge[&f.edge], end: f.end, side: f.side };
                    js.insert(new_of_flag[&g]);
                }
                for j in js {
                    right_incidences.push((i, j));
                }
            }
        }
        JoinOutcome { graph, left_vertex, right_vertex, right_edge, left_incidences, right_incidences }
    }

    /// Loop triviality: a loop is trivial when the graph is a one-point join
    /// of the loop with the rest, i.e. splitting its vertex along the loop's
    /// two attachment arcs disconnects the two arcs.
    pub fn is_trivial_loop(&self, e: EdgeId) -> bool {
        if !self.is_loop_edge(e) {
            return false;
        }
        let v = self.vertex_of_half(Half { edge: e, end: End::One });
        let rot = &self.rotations[v];
        let p1 = rot.iter().position(|h| *h == Half { edge: e, end: End::One }).unwrap();
        let p2 = rot.iter().position(|h| *h == Half { edge: e, end: End::Two }).unwrap();
        let k = rot.len();
        let mut arc = vec![0u8; k]; // 1 = strictly between e.1 and e.2, 2 = other arc
        {
            let mut i = (p1 + 1) % k;
            while i != p2 {
                arc[i] = 1;
                i = (i + 1) % k;
            }
            let mut i = (p2 + 1) % k;
            while i != p1 {
                arc[i] = 2;
                i = (i + 1) % k;
            }
        }
        // Split v into two vertices and test connectivity between the arcs.
        let n = self.vertex_count();
        let va = n; // arc 1
        let vb = n + 1; // arc 2
        let mut parent: Vec<usize> = (0..n + 2).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        let host = |h: Half| -> usize {
            let w = self.vertex_of_half(h);
            if w != v {
                return w;
            }
            let pos = self.rotations[v].iter().position(|x| *x == h).unwrap();
            match arc[pos] {
                1 => va,
                2 => vb,
                _ => unreachable!("the halves of e itself are excluded"),
            }
        };
        for &f in &self.edges {
            if f == e {
                continue;
            }
            let a = host(Half { edge: f, end: End::One });
            let b = host(Half { edge: f, end: End::Two });
            union(&mut parent, a, b);
        }
        find(&mut parent, va) != find(&mut parent, vb)
    }

    /// Bridge test on the underlying multigraph.
    pub fn is_bridge_edge(&self, e: EdgeId) -> bool {
        self.underlying_multigraph().is_bridge(e)
    }

    /// Canonical code up to ribbon-graph equivalence (vertex order, rotation
    /// phase, per-vertex reflection with compensating twists, and edge names
    /// all forgotten).
    pub fn canonical_code(&self) -> CanonicalCode {
        let gem = Gem::from_ribbon(self);
        let n = gem.labels.len();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            comp_of[start] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in [gem.sigma0[x], gem.sigma1[x], gem.sigma2[x]] {
                    if comp_of[y] == usize::MAX {
                        comp_of[y] = id;
                        stack.push(y);
                    }
                }
            }
            comps.push(members);
        }
        let encode_from = |start: usize| -> Vec<[u32; 3]> {
            let mut id_of: BTreeMap<usize, u32> = BTreeMap::new();
            let mut order: Vec<usize> = Vec::new();
            id_of.insert(start, 0);
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for y in [gem.sigma0[x], gem.sigma1[x], gem.sigma2[x]] {
                    if !id_of.contains_key(&y) {
                        id_of.insert(y, order.len() as u32);
                        order.push(y);
                    }
                }
            }
            order
                .iter()
                .map(|&x| [id_of[&gem.sigma0[x]], id_of[&gem.sigma1[x]], id_of[&gem.sigma2[x]]])
                .collect()
        };
        let mut codes: Vec<Vec<[u32; 3]>> = comps
            .iter()
            .map(|members| members.iter().map(|&s| encode_from(s)).min().unwrap())
            .collect();
        codes.sort();
        CanonicalCode {
            components: codes,
            isolated_vertices: self.rotations.iter().filter(|r| r.is_empty()).count(),
        }
    }

    /// Equivalence of ribbon graphs (homeomorphism of the underlying
    /// surfaces preserving the vertex/edge structure).
    pub fn equivalent(&self, other: &RibbonGraph) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalCode {
    components: Vec<Vec<[u32; 3]>>,
    isolated_vertices: usize,
}

fn index_flags(comps: &[BoundaryComponent]) -> BTreeMap<SideFlag, usize> {
    let mut map = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &f in &c.flags {
            map.insert(f, i);
        }
    }
    map
}

/// Rotate a cyclic sequence so the smallest element is first.
fn canonical_rotate(rot: &mut Vec<Half>) {
    if rot.is_empty() {
        return;
    }
    let min_pos = rot
        .iter()
        .enumerate()
        .min_by_key(|(_, h)| **h)
        .map(|(i, _)| i)
        .unwrap();
    rot.rotate_left(min_pos);
}

/// Contraction by the three local rules (non-loop merge, orientable-loop
/// split, non-orientable-loop flip). Kept as an independent oracle for the
/// partial-duality route used by `contract_edge`.
pub(crate) fn contract_edge_by_cases(g: &RibbonGraph, e: EdgeId) -> RibbonGraph {
    assert!(g.has_edge(e), "unknown edge {e}");
    let h1 = Half { edge: e, end: End::One };
    let h2 = Half { edge: e, end: End::Two };
    let (u, w) = g.endpoints(e);
    let mut rotations = g.rotations().to_vec();
    let mut twisted: BTreeSet<EdgeId> = g
        .edge_ids()
        .iter()
        .copied()
        .filter(|&t| g.is_twisted(t) && t != e)
        .collect();
    if u != w {
        // Reorient w first if the edge is twisted: reverse its rotation and
        // toggle the twist of every edge with exactly one end there.
        if g.is_twisted(e) {
            rotations[w].reverse();
            let at_w: Vec<Half> = rotations[w].clone();
            let mut seen: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for h in &at_w {
                *seen.entry(h.edge).or_insert(0) += 1;
            }
            for (&f, &count) in &seen {
                if count == 1 && f != e {
                    if twisted.contains(&f) {
                        twisted.remove(&f);
                    } else {
                        twisted.insert(f);
                    }
                }
            }
        }
        let ru = split_after(&rotations[u], h1);
        let rw = split_after(&rotations[w], h2);
        let merged: Vec<Half> = ru.into_iter().chain(rw).collect();
        let (keep, drop) = if u < w { (u, w) } else { (w, u) };
        rotations[keep] = merged;
        rotations.remove(drop);
    } else {
        let rot = rotations[u].clone();
        let (arc1, arc2) = loop_arcs(&rot, h1, h2);
        if !g.is_twisted(e) {
            rotations[u] = arc1;
            rotations.push(arc2);
        } else {
            // Flip the second arc; edges with exactly one half inside it
            // toggle their twist.
            let inside: BTreeSet<Half> = arc2.iter().copied().collect();
            let mut flipped = arc2.clone();
            flipped.reverse();
            let merged: Vec<Half> = arc1.into_iter().chain(flipped).collect();
            let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for h in &inside {
                *count.entry(h.edge).or_insert(0) += 1;
            }
            for (&f, &c) in &count {
                if c == 1 && f != e {
                    if twisted.contains(&f) {
                        twisted.remove(&f);
                    } else {
                        twisted.insert(f);
                    }
                }
            }
            rotations[u] = merged;
        }
    }
    RibbonGraph::try_new(rotations, twisted).expect("table contraction stays valid")
}

/// Elements after `h` in cyclic order, excluding the halves of h's edge.
fn split_after(rot: &[Half], h: Half) -> Vec<Half> {
    let k = rot.len();
    let p = rot.iter().position(|x| *x == h).unwrap();
    let mut out = Vec::new();
    for i in 1..k {
        let x = rot[(p + i) % k];
        if x.edge != h.edge {
            out.push(x);
        }
    }
    out
}

/// The two arcs of a vertex rotation strictly between the halves of a loop.
fn loop_arcs(rot: &[Half], h1: Half, h2: Half) -> (Vec<Half>, Vec<Half>) {
    let k = rot.len();
    let p1 = rot.iter().position(|x| *x == h1).unwrap();
    let p2 = rot.iter().position(|x| *x == h2).unwrap();
    let mut a = Vec::new();
    let mut i = (p1 + 1) % k;
    while i != p2 {
        a.push(rot[i]);
        i = (i + 1) % k;
    }
    let mut b = Vec::new();
    let mut i = (p2 + 1) % k;
    while i != p1 {
        b.push(rot[i]);
        i = (i + 1) % k;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::halfint::HalfInt;

    #[test]
    fn validate_examples() {
        assert!(single_edge().validate().is_ok());
        let bad = RibbonGraph::from_rotations(&[&[(1, 1)], &[(1, 2), (1, 2)]], &[]);
        assert!(matches!(bad, Err(Diagnostics::HalfEdgeMultiplicity { .. })));
        let empty = RibbonGraph::try_new(Vec::new(), []).unwrap();
        assert!(empty.validate().is_ok());
        let missing = RibbonGraph::from_rotations(&[&[(1, 1)]], &[]);
        assert!(matches!(missing, Err(Diagnostics::MissingHalf { .. })));
        let ghost_twist = RibbonGraph::from_rotations(&[&[(1, 1), (1, 2)]], &[7]);
        assert!(matches!(ghost_twist, Err(Diagnostics::TwistUnknownEdge { .. })));
    }

    /// Frozen boundary counts, each independently forced by Euler's formula
    /// with the known genus of the underlying surface.
    #[test]
    fn boundary_counts() {
        assert_eq!(single_edge().boundary_count(), 1);
        assert_eq!(orientable_loop().boundary_count(), 2);
        assert_eq!(nonorientable_loop().boundary_count(), 1);
        assert_eq!(interlaced_loops().boundary_count(), 1);
        assert_eq!(adjacent_loops().boundary_count(), 3);
        assert_eq!(isolated_vertex().boundary_count(), 1);
    }

    #[test]
    fn boundary_components_partition_all_flags() {
        for g in [single_edge(), orientable_loop(), nonorientable_loop(), interlaced_loops(), adjacent_loops()] {
            let comps = g.boundary_components();
            let mut seen = BTreeSet::new();
            for c in &comps {
                for f in &c.flags {
                    assert!(seen.insert(*f), "flag repeated across components");
                }
            }
            assert_eq!(seen.len(), 4 * g.edge_count());
            for (i, c) in comps.iter().enumerate() {
                assert_eq!(c.index, i + 1);
                if !c.flags.is_empty() {
                    assert_eq!(c.flags[0], *c.flags.iter().min().unwrap());
                }
            }
        }
    }

    #[test]
    fn euler_genus_and_orientability() {
        assert_eq!(interlaced_loops().euler_genus(), 2);
        assert!(interlaced_loops().orientable());
        assert_eq!(nonorientable_loop().euler_genus(), 1);
        assert!(!nonorientable_loop().orientable());
        assert_eq!(isolated_vertex().euler_genus(), 0);
        assert!(isolated_vertex().orientable());
        assert_eq!(single_edge().euler_genus(), 0);
        assert_eq!(adjacent_loops().euler_genus(), 0);
        assert_eq!(triangle().euler_genus(), 0);
    }

    #[test]
    fn rho_examples() {
        let l1n = nonorientable_loop();
        assert_eq!(l1n.rho(&[EdgeId(1)].into()), HalfInt::half(1));
        let theta = interlaced_loops();
        assert_eq!(theta.rho(&BTreeSet::new()), HalfInt::int(0));
        assert_eq!(theta.rho(&[EdgeId(1), EdgeId(2)].into()), HalfInt::int(1));
    }

    #[test]
    fn delete_examples() {
        let g = single_edge().delete_edge(EdgeId(1));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        let h = interlaced_loops().delete_edge(EdgeId(2));
        assert!(h.equivalent(&orientable_loop()));
        let k = nonorientable_loop().delete_edge(EdgeId(1));
        assert!(k.equivalent(&isolated_vertex()));
    }

    #[test]
    fn contract_examples() {
        let g = single_edge().contract_edge(EdgeId(1));
        assert!(g.equivalent(&isolated_vertex()));
        let h = interlaced_loops().contract_edge(EdgeId(2));
        assert_eq!(h.vertex_count(), 2);
        assert!(!h.is_loop_edge(EdgeId(1)));
        assert_eq!(h.boundary_count(), 1);
        let k = nonorientable_loop().contract_edge(EdgeId(1));
        assert!(k.equivalent(&isolated_vertex()));
    }

    #[test]
    fn contraction_preserves_boundary_count() {
        for g in [single_edge(), orientable_loop(), nonorientable_loop(), interlaced_loops(), adjacent_loops(), triangle()] {
            for &e in g.edge_ids().clone().iter() {
                assert_eq!(g.contract_edge(e).boundary_count(), g.boundary_count());
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert!(single_edge().geometric_dual().equivalent(&orientable_loop()));
        assert!(nonorientable_loop().geometric_dual().equivalent(&nonorientable_loop()));
        let theta = interlaced_loops();
        assert!(theta.geometric_dual().geometric_dual().equivalent(&theta));
    }

    #[test]
    fn dual_exchanges_deletion_and_contraction() {
        for g in [single_edge(), orientable_loop(), nonorientable_loop(), interlaced_loops(), adjacent_loops(), triangle()] {
            for &e in g.edge_ids().clone().iter() {
                let lhs = g.contract_edge(e).geometric_dual();
                let rhs = g.geometric_dual().delete_edge(e);
                assert!(lhs.equivalent(&rhs), "contract/dual law failed");
                let lhs2 = g.delete_edge(e).geometric_dual();
                let rhs2 = g.geometric_dual().contract_edge(e);
                assert!(lhs2.equivalent(&rhs2), "delete/dual law failed");
            }
        }
    }

    #[test]
    fn partial_dual_laws() {
        let theta = interlaced_loops();
        assert_eq!(theta.partial_dual(&BTreeSet::new()), theta);
        assert!(single_edge()
            .partial_dual(&[EdgeId(1)].into())
            .equivalent(&orientable_loop()));
        // A quasi-tree subset gives a one-vertex partial dual.
        let pd = theta.partial_dual(&[EdgeId(1), EdgeId(2)].into());
        assert_eq!(pd.vertex_count(), 1);
        for g in [single_edge(), nonorientable_loop(), interlaced_loops(), adjacent_loops(), triangle()] {
            let all = g.edge_ids().clone();
            assert!(g.partial_dual(&all).equivalent(&g.geometric_dual()));
            let some: BTreeSet<EdgeId> = all.iter().copied().take(1).collect();
            assert!(g.partial_dual(&some).partial_dual(&some).equivalent(&g));
        }
    }

    #[test]
    fn restrict_union_join_examples() {
        assert!(interlaced_loops()
            .restrict(&[EdgeId(1)].into())
            .equivalent(&orientable_loop()));
        let (u, _) = single_edge().disjoint_union(&orientable_loop());
        assert_eq!(u.vertex_count(), 3);
        assert_eq!(u.edge_count(), 2);
        assert_eq!(u.components(), 2);
        let j = orientable_loop().join_at(0, &orientable_loop(), 0);
        assert_eq!(j.graph, adjacent_loops());
    }

    #[test]
    fn delete_and_contract_commute_on_disjoint_edges() {
        let g = triangle();
        let a = g.delete_edge(EdgeId(1)).contract_edge(EdgeId(2));
        let b = g.contract_edge(EdgeId(2)).delete_edge(EdgeId(1));
        assert!(a.equivalent(&b));
    }

    #[test]
    fn contraction_rules_match_partial_dual_route() {
        for g in [single_edge(), orientable_loop(), nonorientable_loop(), interlaced_loops(), adjacent_loops(), triangle()] {
            for &e in g.edge_ids().clone().iter() {
                let by_cases = contract_edge_by_cases(&g, e);
                let by_dual = g.contract_edge(e);
                assert!(by_cases.equivalent(&by_dual), "contract mismatch on edge {e}");
            }
        }
    }

    #[test]
    fn trivial_loop_detection() {
        assert!(orientable_loop().is_trivial_loop(EdgeId(1)));
        assert!(nonorientable_loop().is_trivial_loop(EdgeId(1)));
        assert!(!interlaced_loops().is_trivial_loop(EdgeId(1)));
        assert!(!interlaced_loops().is_trivial_loop(EdgeId(2)));
        assert!(adjacent_loops().is_trivial_loop(EdgeId(1)));
        assert!(adjacent_loops().is_trivial_loop(EdgeId(2)));
        assert!(!single_edge().is_trivial_loop(EdgeId(1)));
    }

    #[test]
    fn euler_consistency_across_subsets() {
        for g in [single_edge(), orientable_loop(), nonorientable_loop(), interlaced_loops(), adjacent_loops(), triangle()] {
            let ids: Vec<EdgeId> = g.edge_ids().iter().copied().collect();
            for mask in 0u32..(1 << ids.len()) {
                let a: BTreeSet<EdgeId> = ids
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| *e)
                    .collect();
                let sub = g.restrict(&a);
                let gamma = sub.euler_genus();
                assert!(gamma >= 0);
                let r = sub.underlying_multigraph().rank();
                assert_eq!(g.rho(&a), HalfInt::int(r) + HalfInt::half(gamma));
            }
        }
    }

    #[test]
    fn equivalence_ignores_labels_and_reflection() {
        // Same annulus written with reversed rotation and different ids.
        let a = RibbonGraph::from_rotations(&[&[(1, 1), (1, 2)]], &[]).unwrap();
        let b = RibbonGraph::from_rotations(&[&[(5, 2), (5, 1)]], &[]).unwrap();
        assert!(a.equivalent(&b));
        assert!(!a.equivalent(&nonorientable_loop()));
        // Twisted non-loop edge equals untwisted one up to reflecting an
        // endpoint.
        let c = RibbonGraph::from_rotations(&[&[(1, 1)], &[(1, 2)]], &[1]).unwrap();
        assert!(c.equivalent(&single_edge()));
    }
}
