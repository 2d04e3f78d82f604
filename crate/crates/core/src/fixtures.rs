//! Small standard graphs used across the test suites and the self-check
//! corpus.

use crate::colouring::ColouredRibbonGraph;
use crate::ribbon::RibbonGraph;

/// Two vertices joined by one untwisted edge.
pub fn single_edge() -> RibbonGraph {
    RibbonGraph::from_rotations(&[&[(1, 1)], &[(1, 2)]], &[]).unwrap()
}

/// One vertex with one untwisted loop (an annulus).
pub fn orientable_loop() -> RibbonGraph {
    RibbonGraph::from_rotations(&[&[(1, 1), (1, 2)]], &[]).unwrap()
}

/// One vertex with one twisted loop (a Möbius band).
pub fn nonorientable_loop() -> RibbonGraph {
    RibbonGraph::from_rotations(&[&[(1, 1), (1, 2)]], &[1]).unwrap()
}

/// One vertex, two untwisted loops interlaced: rotation e f e f.
pub fn interlaced_loops() -> RibbonGraph {
    RibbonGraph::from_rotations(&[&[(1, 1), (2, 1), (1, 2), (2, 2)]], &[]).unwrap()
}

/// One vertex, two untwisted loops side by side: rotation e e f f.
pub fn adjacent_loops() -> RibbonGraph {
    RibbonGraph::from_rotations(&[&[(1, 1), (1, 2), (2, 1), (2, 2)]], &[]).unwrap()
}

/// A single edgeless vertex.
pub fn isolated_vertex() -> RibbonGraph {
    RibbonGraph::try_new(vec![Vec::new()], []).unwrap()
}

/// Planar triangle: three vertices, rotation at each visiting its two
/// incident edges.
pub fn triangle() -> RibbonGraph {
    RibbonGraph::from_rotations(&[&[(1, 1), (3, 2)], &[(2, 1), (1, 2)], &[(3, 1), (2, 2)]], &[])
        .unwrap()
}

/// Wrap with discrete colourings (every vertex and boundary component in
/// its own class).
pub fn discrete(g: RibbonGraph) -> ColouredRibbonGraph {
    ColouredRibbonGraph::discrete(g)
}
