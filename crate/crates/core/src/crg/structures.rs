//! Gray substructures: cycles of given lengths and the small gray patterns
//! that drive the structural bounds for black-vertex p-cores.
//!
//! Everything is subgraph containment in the gray graph, except the chordless
//! 4-cycle, which is an induced 4-cycle (both diagonals non-gray).

use alloc::vec::Vec;

use super::Crg;
use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GrayStructures {
    pub gray_edge: bool,
    pub gray_triangle: bool,
    pub gray_four_cycle: bool,
    /// Four vertices spanning at least five gray edges.
    pub gray_c4_plus: bool,
    /// Five vertices spanning a 5-cycle plus two chords.
    pub gray_c5_plus_plus: bool,
    pub gray_chordless_four_cycle: bool,
    /// `K_{3,3}` minus one edge.
    pub gray_k33_minus: bool,
}

fn pattern(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
    SimpleGraph::from_edges(n, edges).expect("static pattern")
}

fn cycle_with(n: usize, chords: &[(usize, usize)]) -> SimpleGraph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend_from_slice(chords);
    pattern(n, &edges)
}

impl Crg {
    /// Whether the gray graph has a cycle (not necessarily induced) whose
    /// length lies in `lo..=hi`.
    pub fn has_gray_cycle_in_range(&self, lo: usize, hi: usize) -> Result<bool> {
        if lo < 3 || lo > hi {
            return Err(Error::InvalidArgument(alloc::format!("invalid cycle length range [{lo}, {hi}]")));
        }
        let g = self.gray_graph();
        Ok(has_cycle_in_range(&g, lo, hi))
    }

    pub fn detect_structures(&self) -> GrayStructures {
        let g = self.gray_graph();
        let c4 = cycle_with(4, &[]);
        let k33_minus = {
            let mut edges = Vec::new();
            for a in 0..3 {
                for b in 3..6 {
                    if (a, b) != (2, 5) {
                        edges.push((a, b));
                    }
                }
            }
            pattern(6, &edges)
        };
        GrayStructures {
            gray_edge: g.edge_count() > 0,
            gray_triangle: g.contains_subgraph(&cycle_with(3, &[])),
            gray_four_cycle: g.contains_subgraph(&c4),
            gray_c4_plus: g.contains_subgraph(&cycle_with(4, &[(0, 2)])),
            // Two chords of a pentagon either share an endpoint or cross.
            gray_c5_plus_plus: g.contains_subgraph(&cycle_with(5, &[(0, 2), (0, 3)]))
                || g.contains_subgraph(&cycle_with(5, &[(0, 2), (1, 3)])),
            gray_chordless_four_cycle: g.has_induced(&c4),
            gray_k33_minus: g.contains_subgraph(&k33_minus),
        }
    }
}

/// Depth-first search over simple paths rooted at their smallest vertex.
fn has_cycle_in_range(g: &SimpleGraph, lo: usize, hi: usize) -> bool {
    fn walk(g: &SimpleGraph, root: usize, at: usize, len: usize, visited: u64, lo: usize, hi: usize) -> bool {
        if len >= lo && len >= 3 && g.has_edge(at, root) {
            return true;
        }
        if len == hi {
            return false;
        }
        let mut next = g.neighbors(at) & !visited & !((1u64 << root) - 1) & !(1u64 << root);
        while next != 0 {
            let v = next.trailing_zeros() as usize;
            next &= next - 1;
            if walk(g, root, v, len + 1, visited | 1 << v, lo, hi) {
                return true;
            }
        }
        false
    }
    (0..g.n()).any(|root| walk(g, root, root, 1, 1 << root, lo, hi))
}
