//! The embedding relation `H ↦ K` and the clique spectrum of a forbidden family.
//!
//! `φ: V(H) → V(K)` is an embedding when every edge of `H` lands on a black
//! vertex of `K` (both ends on it) or on a black or gray edge, and every
//! non-edge lands on a white vertex or on a white or gray edge.

use alloc::vec;
use alloc::vec::Vec;

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;

/// Whether the pair `(a, b)` of `H`, with `adjacent` telling if it is an
/// edge, may be mapped to the pair `(x, y)` of `K`.
#[inline]
pub(crate) fn pair_allowed(k: &Crg, adjacent: bool, x: usize, y: usize) -> bool {
    if x == y {
        let want = if adjacent { VertexColor::Black } else { VertexColor::White };
        k.vertex(x) == want
    } else {
        match k.edge(x, y) {
            EdgeColor::Gray => true,
            EdgeColor::Black => adjacent,
            EdgeColor::White => !adjacent,
        }
    }
}

/// For each vertex of `K`, the previous vertex of its class of
/// interchangeable vertices (same color, same edge colors to everything
/// else), if any. Swapping two such vertices is an automorphism of `K`.
fn previous_twin(k: &Crg) -> Vec<Option<usize>> {
    let n = k.k();
    let interchangeable =
        |u: usize, v: usize| k.vertex(u) == k.vertex(v) && (0..n).all(|x| x == u || x == v || k.edge(u, x) == k.edge(v, x));
    (0..n).map(|v| (0..v).rev().find(|&u| interchangeable(u, v))).collect()
}

/// A witness that `h` embeds in `k`: the lexicographically first map
/// `(φ(0), φ(1), ...)`, or `None` if `h ↛ k`.
///
/// Backtracks over the vertices of `h` in index order. A vertex of `k` whose
/// interchangeable predecessor has not been used yet is skipped; the
/// lexicographically first witness always passes that test.
pub fn embeds(h: &SimpleGraph, k: &Crg) -> Option<Vec<usize>> {
    let prev = previous_twin(k);
    let mut map = vec![usize::MAX; h.n()];
    fn assign(h: &SimpleGraph, k: &Crg, prev: &[Option<usize>], i: usize, used: u64, map: &mut [usize]) -> bool {
        if i == h.n() {
            return true;
        }
        for x in 0..k.k() {
            if let Some(p) = prev[x] {
                if used >> p & 1 == 0 {
                    continue;
                }
            }
            if (0..i).all(|j| pair_allowed(k, h.has_edge(i, j), x, map[j])) {
                map[i] = x;
                if assign(h, k, prev, i + 1, used | 1 << x, map) {
                    return true;
                }
            }
        }
        false
    }
    assign(h, k, &prev, 0, 0, &mut map).then_some(map)
}

/// Whether `k` lies in the class of the property: no forbidden graph embeds.
pub fn in_property(k: &Crg, forbidden: &[SimpleGraph]) -> bool {
    forbidden.iter().all(|h| embeds(h, k).is_none())
}

/// The downward-closed set of `(r, s)` with no forbidden graph embedding in
/// `K(r, s)`, kept as its extreme points, together with the three chromatic
/// parameters of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSpectrum {
    /// Pairwise incomparable maximal points, by increasing `r`.
    pub extreme_points: Vec<(usize, usize)>,
    /// Smallest chromatic number of a forbidden graph.
    pub chi: usize,
    /// Smallest clique cover number of a forbidden graph.
    pub cochi: usize,
    /// Binary chromatic number: one more than the largest `r + s` in the spectrum.
    pub chi_b: usize,
}

impl CliqueSpectrum {
    /// Membership of `(r, s)`; `(0, 0)` counts as a member.
    pub fn contains(&self, r: usize, s: usize) -> bool {
        self.extreme_points.iter().any(|&(er, es)| r <= er && s <= es)
    }

    /// All members except `(0, 0)`, by increasing `r` then `s`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let max_r = self.extreme_points.iter().map(|p| p.0).max().unwrap_or(0);
        let mut out = Vec::new();
        for r in 0..=max_r {
            let max_s = self.extreme_points.iter().filter(|p| p.0 >= r).map(|p| p.1).max().unwrap_or(0);
            out.extend((0..=max_s).filter(|&s| r + s > 0).map(|s| (r, s)));
        }
        out
    }
}

/// Computes the clique spectrum of the property defined by `forbidden`.
///
/// `K(r, 0)` with `r ≥ |V(H)|` always admits `H`, and symmetrically for
/// `K(0, s)`, so both coordinates stay below the largest forbidden order.
/// Rows are scanned by increasing `r`; each row stops at its first failure.
pub fn clique_spectrum(forbidden: &[SimpleGraph]) -> Result<CliqueSpectrum> {
    if forbidden.is_empty() {
        return Err(Error::InvalidArgument("forbidden family must be non-empty".into()));
    }
    if forbidden.iter().any(|h| h.n() == 0) {
        return Err(Error::InvalidArgument("forbidden graphs need at least one vertex".into()));
    }
    let bound = forbidden.iter().map(SimpleGraph::n).max().unwrap_or(0);
    let member = |r: usize, s: usize| r + s == 0 || in_property(&Crg::krs(r, s).expect("r + s ≥ 1"), forbidden);

    // row_max[r] = largest s with (r, s) in the spectrum.
    let mut row_max: Vec<usize> = Vec::new();
    for r in 0..=bound {
        if !member(r, 0) {
            break;
        }
        let cap = row_max.last().copied().unwrap_or(bound);
        let mut s = 0;
        while s < cap && member(r, s + 1) {
            s += 1;
        }
        row_max.push(s);
    }
    if row_max.len() <= 1 && row_max.first().is_none_or(|&s| s == 0) {
        return Err(Error::TrivialProperty);
    }
    let extreme_points = row_max
        .iter()
        .enumerate()
        .filter(|&(r, &s)| row_max.get(r + 1).is_none_or(|&next| next < s))
        .map(|(r, &s)| (r, s))
        .collect::<Vec<_>>();

    let mut chi = usize::MAX;
    let mut cochi = usize::MAX;
    for h in forbidden {
        chi = chi.min(h.chromatic_number()?);
        cochi = cochi.min(h.clique_cover_number()?);
    }
    let chi_b = 1 + extreme_points.iter().map(|&(r, s)| r + s).max().unwrap_or(0);
    Ok(CliqueSpectrum { extreme_points, chi, cochi, chi_b })
}
