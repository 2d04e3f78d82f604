//! Flag model of a ribbon graph: three pairings on the 4m side-flags.
//!
//! Every half-edge stub contributes two flags, its Left (counterclockwise)
//! and Right (clockwise) corner. The pairings are:
//!
//! * `sigma0` — across an edge band side. Untwisted bands pair Right with
//!   Left at the far end, twisted bands pair equal sides.
//! * `sigma1` — along a vertex-disc arc, Left corner of a stub with the
//!   Right corner of the next stub in the rotation.
//! * `sigma2` — the two corners of one stub.
//!
//! Vertices are the ⟨sigma1, sigma2⟩ orbits, edges the ⟨sigma0, sigma2⟩
//! orbits, boundary components the ⟨sigma0, sigma1⟩ orbits. Geometric
//! duality swaps `sigma0` and `sigma2` everywhere; partial duality swaps
//! them on the flags of the chosen edges only. Flags keep their original
//! labels through these operations, which is what makes colour transport
//! across minors exact.

use std::collections::{BTreeMap, BTreeSet};

use crate::ribbon::{EdgeId, End, Half, RibbonGraph, Side, SideFlag};

#[derive(Debug, Clone)]
pub(crate) struct Gem {
    /// Flag index -> original label.
    pub labels: Vec<SideFlag>,
    pub sigma0: Vec<usize>,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    /// Original host vertex of each flag.
    pub vertex_of: Vec<usize>,
    /// Original vertex indices that carry no flags.
    pub isolated: Vec<usize>,
}

/// A boundary orbit in label form: flags listed in directed walk order
/// starting from the smallest label.
#[derive(Debug, Clone)]
pub(crate) struct FaceOrbit {
    pub flags: Vec<SideFlag>,
    pub vertices: BTreeSet<usize>,
}

/// Result of converting a gem back into a rotation system.
pub(crate) struct RebuiltRibbon {
    pub graph: RibbonGraph,
    /// Old flag label -> new flag label.
    pub flag_map: BTreeMap<SideFlag, SideFlag>,
    /// For each new vertex, the set of original vertices its flags lived on
    /// (for flagless vertices: the recorded provenance).
    pub vertex_provenance: Vec<BTreeSet<usize>>,
    /// For each new vertex, the flag orbit it was built from (old labels),
    /// empty for flagless vertices.
    pub vertex_orbits: Vec<Vec<SideFlag>>,
}

impl Gem {
    pub fn from_ribbon(g: &RibbonGraph) -> Gem {
        let mut labels = Vec::new();
        let mut vertex_of = Vec::new();
        let mut index = BTreeMap::new();
        for (v, rot) in g.rotations().iter().enumerate() {
            for &h in rot {
                for side in [Side::Left, Side::Right] {
                    let f = SideFlag { edge: h.edge, end: h.end, side };
                    index.insert(f, labels.len());
                    labels.push(f);
                    vertex_of.push(v);
                }
            }
        }
        let n = labels.len();
        let mut sigma0 = vec![usize::MAX; n];
        let mut sigma1 = vec![usize::MAX; n];
        let mut sigma2 = vec![usize::MAX; n];
        let at = |e: EdgeId, end: End, side: Side| index[&SideFlag { edge: e, end, side }];
        for (_, rot) in g.rotations().iter().enumerate() {
            let k = rot.len();
            for (i, &h) in rot.iter().enumerate() {
                let l = at(h.edge, h.end, Side::Left);
                let r = at(h.edge, h.end, Side::Right);
                sigma2[l] = r;
                sigma2[r] = l;
                let next = rot[(i + 1) % k];
                let nr = at(next.edge, next.end, Side::Right);
                sigma1[l] = nr;
                sigma1[nr] = l;
            }
        }
        for &e in g.edge_ids() {
            let (r1, l1) = (at(e, End::One, Side::Right), at(e, End::One, Side::Left));
            let (r2, l2) = (at(e, End::Two, Side::Right), at(e, End::Two, Side::Left));
            if g.is_twisted(e) {
                sigma0[r1] = r2;
                sigma0[r2] = r1;
                sigma0[l1] = l2;
                sigma0[l2] = l1;
            } else {
                sigma0[r1] = l2;
                sigma0[l2] = r1;
                sigma0[l1] = r2;
                sigma0[r2] = l1;
            }
        }
        let isolated = g
            .rotations()
            .iter()
            .enumerate()
            .filter(|(_, rot)| rot.is_empty())
            .map(|(v, _)| v)
            .collect();
        Gem { labels, sigma0, sigma1, sigma2, vertex_of, isolated }
    }

    /// Swap the band and stub pairings on the flags of the given edges.
    pub fn partial_dual(&mut self, edges: &BTreeSet<EdgeId>) {
        for i in 0..self.labels.len() {
            if edges.contains(&self.labels[i].edge) {
                std::mem::swap(&mut self.sigma0[i], &mut self.sigma2[i]);
            }
        }
    }

    fn orbits(&self, a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                orbit.push(x);
                for y in [a[x], b[x]] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            orbit.sort();
            out.push(orbit);
        }
        out.sort_by_key(|o| self.labels[o[0]]);
        out
    }

    /// Vertex orbits (⟨sigma1, sigma2⟩), flagged ones only.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        self.orbits(&self.sigma1, &self.sigma2)
    }

    /// Flagged boundary orbits, in canonical order, each with its directed
    /// walk. The walk starts at the orbit's smallest flag and alternates
    /// band crossings (`sigma0`) with vertex-arc slides (`sigma1`).
    pub fn faces(&self) -> Vec<FaceOrbit> {
        self.orbits(&self.sigma0, &self.sigma1)
            .into_iter()
            .map(|orbit| {
                let start = orbit[0];
                let mut flags = Vec::with_capacity(orbit.len());
                let mut vertices = BTreeSet::new();
                let mut x = start;
                loop {
                    flags.push(self.labels[x]);
                    vertices.insert(self.vertex_of[x]);
                    let y = self.sigma0[x];
                    flags.push(self.labels[y]);
                    vertices.insert(self.vertex_of[y]);
                    x = self.sigma1[y];
                    if x == start {
                        break;
                    }
                }
                debug_assert_eq!(flags.len(), orbit.len());
                FaceOrbit { flags, vertices }
            })
            .collect()
    }

    /// Remove the flags of edge `e`, splicing the vertex-arc pairing past
    /// the removed stubs. Vertex orbits consisting purely of e-flags are
    /// recorded as fresh flagless vertices with their provenance.
    pub fn delete_edge(&self, e: EdgeId) -> (Gem, Vec<(BTreeSet<usize>, Vec<SideFlag>)>) {
        let dead = |i: usize| self.labels[i].edge == e;
        // Vertex orbits that die entirely become flagless vertices.
        let mut new_flagless: Vec<(BTreeSet<usize>, Vec<SideFlag>)> = Vec::new();
        for orbit in self.vertex_orbits() {
            if orbit.iter().all(|&i| dead(i)) {
                let prov: BTreeSet<usize> = orbit.iter().map(|&i| self.vertex_of[i]).collect();
                let flags: Vec<SideFlag> = orbit.iter().map(|&i| self.labels[i]).collect();
                new_flagless.push((prov, flags));
            }
        }
        let n = self.labels.len();
        let mut keep: Vec<usize> = (0..n).filter(|&i| !dead(i)).collect();
        keep.sort_by_key(|&i| self.labels[i]);
        let reindex: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let splice1 = |mut y: usize| -> usize {
            while dead(y) {
                y = self.sigma1[self.sigma2[y]];
            }
            y
        };
        let mut labels = Vec::with_capacity(keep.len());
        let mut vertex_of = Vec::with_capacity(keep.len());
        let mut sigma0 = Vec::with_capacity(keep.len());
        let mut sigma1 = Vec::with_capacity(keep.len());
        let mut sigma2 = Vec::with_capacity(keep.len());
        for &old in &keep {
            labels.push(self.labels[old]);
            vertex_of.push(self.vertex_of[old]);
            sigma0.push(reindex[&self.sigma0[old]]);
            sigma1.push(reindex[&splice1(self.sigma1[old])]);
            sigma2.push(reindex[&self.sigma2[old]]);
        }
        let gem = Gem {
            labels,
            sigma0,
            sigma1,
            sigma2,
            vertex_of,
            isolated: self.isolated.clone(),
        };
        (gem, new_flagless)
    }

    /// Rebuild a rotation system. Flagged vertices come first, ordered by
    /// their smallest flag label; then the inherited flagless vertices, then
    /// any extra flagless vertices supplied by the caller (for example the
    /// ones produced by a contraction).
    pub fn to_ribbon(&self, extra_flagless: &[(BTreeSet<usize>, Vec<SideFlag>)]) -> RebuiltRibbon {
        let orbits = self.vertex_orbits();
        // Walk every vertex orbit: the flag visited first in each stub
        // becomes its Right corner, the partner its Left corner.
        struct StubVisit {
            first: usize,
            second: usize,
        }
        let mut stubs: Vec<StubVisit> = Vec::new();
        let mut stub_rotations: Vec<Vec<usize>> = Vec::new();
        let mut vertex_provenance: Vec<BTreeSet<usize>> = Vec::new();
        let mut vertex_orbits_out: Vec<Vec<SideFlag>> = Vec::new();
        for orbit in &orbits {
            // Walk direction: start so that the stub holding the smallest
            // flag is traversed Right corner first. On an unmodified gem
            // this reproduces the stored rotations.
            let start = if self.labels[orbit[0]].side == Side::Left {
                self.sigma2[orbit[0]]
            } else {
                orbit[0]
            };
            let mut rot = Vec::new();
            let mut x = start;
            loop {
                let y = self.sigma2[x];
                rot.push(stubs.len());
                stubs.push(StubVisit { first: x, second: y });
                x = self.sigma1[y];
                if x == start {
                    break;
                }
            }
            stub_rotations.push(rot);
            vertex_provenance.push(orbit.iter().map(|&i| self.vertex_of[i]).collect());
            vertex_orbits_out.push(orbit.iter().map(|&i| self.labels[i]).collect());
        }
        // The stub holding the smallest flag label of an edge becomes end One.
        let mut stubs_of_edge: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (stub_id, s) in stubs.iter().enumerate() {
            stubs_of_edge.entry(self.labels[s.first].edge).or_default().push(stub_id);
        }
        let mut stub_end: BTreeMap<usize, End> = BTreeMap::new();
        let mut twisted: BTreeSet<EdgeId> = BTreeSet::new();
        for (e, mut sids) in stubs_of_edge {
            debug_assert_eq!(sids.len(), 2, "edge {e:?} must have two stubs");
            sids.sort_by_key(|&sid| {
                let s = &stubs[sid];
                self.labels[s.first].min(self.labels[s.second])
            });
            stub_end.insert(sids[0], End::One);
            stub_end.insert(sids[1], End::Two);
            // Right corner pairing with the far Right corner under sigma0
            // means the band reattaches flipped.
            let partner = self.sigma0[stubs[sids[0]].first];
            if partner == stubs[sids[1]].first {
                twisted.insert(e);
            } else {
                debug_assert_eq!(partner, stubs[sids[1]].second);
            }
        }
        let mut flag_map: BTreeMap<SideFlag, SideFlag> = BTreeMap::new();
        for (stub_id, s) in stubs.iter().enumerate() {
            let e = self.labels[s.first].edge;
            let end = stub_end[&stub_id];
            flag_map.insert(self.labels[s.first], SideFlag { edge: e, end, side: Side::Right });
            flag_map.insert(self.labels[s.second], SideFlag { edge: e, end, side: Side::Left });
        }
        let mut rotations: Vec<Vec<Half>> = stub_rotations
            .into_iter()
            .map(|rot| {
                rot.into_iter()
                    .map(|stub_id| Half {
                        edge: self.labels[stubs[stub_id].first].edge,
                        end: stub_end[&stub_id],
                    })
                    .collect()
            })
            .collect();
        for &v in &self.isolated {
            rotations.push(Vec::new());
            vertex_provenance.push([v].into());
            vertex_orbits_out.push(Vec::new());
        }
        for (prov, flags) in extra_flagless {
            rotations.push(Vec::new());
            vertex_provenance.push(prov.clone());
            vertex_orbits_out.push(flags.clone());
        }
        let graph = RibbonGraph::try_new(rotations, twisted).expect("gem produced a valid ribbon graph");
        RebuiltRibbon { graph, flag_map, vertex_provenance, vertex_orbits: vertex_orbits_out }
    }
}
