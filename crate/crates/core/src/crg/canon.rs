//! Canonical labeling by exhaustive search and orderly enumeration of
//! black-vertex CRGs.
//!
//! The canonical string of a CRG is its vertex colors, a `|`, then the edge
//! colors in column-major upper-triangular order `(0,1), (0,2), (1,2), (0,3),
//! ...`, minimized lexicographically (`b < g < w`) over all relabelings.
//! Column-major order makes every partial labeling fix a prefix of the
//! string, so branches can be cut as soon as their prefix loses.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Crg, EdgeColor, VertexColor};
use crate::error::{Error, Result};

/// Largest CRG accepted by [`Crg::canonical_form`].
pub const CANONICAL_CAP: usize = 10;

/// Default largest vertex count for [`enumerate_black_crgs`].
pub const ENUMERATION_CAP: usize = 8;

struct Search<'a> {
    crg: &'a Crg,
    target_colors: Vec<VertexColor>,
    perm: Vec<usize>,
    used: u64,
    prefix: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self) {
        let pos = self.perm.len();
        let k = self.crg.k();
        if pos == k {
            let better = match &self.best {
                None => true,
                Some((best, _)) => self.prefix < *best,
            };
            if better {
                self.best = Some((self.prefix.clone(), self.perm.clone()));
            }
            return;
        }
        for v in 0..k {
            if self.used >> v & 1 == 1 || self.crg.vertex(v) != self.target_colors[pos] {
                continue;
            }
            let mark = self.prefix.len();
            for &u in &self.perm {
                self.prefix.push(self.crg.edge(u, v).as_char() as u8);
            }
            let keep_going = match &self.best {
                None => true,
                Some((best, _)) => self.prefix[..] <= best[..self.prefix.len()],
            };
            if keep_going {
                self.perm.push(v);
                self.used |= 1 << v;
                self.run();
                self.used &= !(1 << v);
                self.perm.pop();
            }
            self.prefix.truncate(mark);
        }
    }
}

impl Crg {
    /// The canonical relabeling and its canonical string.
    pub fn canonical(&self) -> Result<(Crg, String)> {
        let k = self.k();
        if k > CANONICAL_CAP {
            return Err(Error::CapExceeded { what: "CRG for canonical form", size: k, cap: CANONICAL_CAP });
        }
        let mut target_colors = self.vertex_colors().to_vec();
        target_colors.sort_by_key(|c| c.as_char());
        let mut search = Search {
            crg: self,
            target_colors,
            perm: Vec::with_capacity(k),
            used: 0,
            prefix: Vec::with_capacity(k * k / 2),
            best: None,
        };
        search.run();
        let (edges, perm) = search.best.expect("at least one labeling");
        let relabeled = self.induced(&perm);
        let mut s: String = relabeled.vertex_colors().iter().map(|c| c.as_char()).collect();
        s.push('|');
        s.extend(edges.iter().map(|&b| b as char));
        Ok((relabeled, s))
    }

    /// Canonical string; equal exactly for color-isomorphic CRGs.
    pub fn canonical_form(&self) -> Result<String> {
        Ok(self.canonical()?.1)
    }
}

/// One representative per isomorphism class of CRGs on `k` black vertices
/// whose edges are white or gray, in order of canonical string.
pub fn enumerate_black_crgs(k: usize) -> Result<Vec<Crg>> {
    if k == 0 {
        return Err(Error::InvalidArgument("enumeration needs k ≥ 1".into()));
    }
    Ok(enumerate_black_crgs_up_to(k)?.pop().unwrap_or_default())
}

/// Levels `1..=max_k` of [`enumerate_black_crgs`]; entry `i` holds `k = i + 1`.
///
/// Each level is grown from the previous one by attaching a new vertex with
/// every possible set of gray edges; since deleting a vertex of any CRG in
/// the class leaves a CRG in the class, no isomorphism type is missed.
pub fn enumerate_black_crgs_up_to(max_k: usize) -> Result<Vec<Vec<Crg>>> {
    if max_k > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "black CRG enumeration", size: max_k, cap: ENUMERATION_CAP });
    }
    let mut levels: Vec<Vec<Crg>> = Vec::new();
    if max_k == 0 {
        return Ok(levels);
    }
    levels.push(vec![Crg::krs(0, 1)?]);
    for k in 2..=max_k {
        let mut found: BTreeMap<String, Crg> = BTreeMap::new();
        for base in &levels[k - 2] {
            for gray_mask in 0u64..(1 << (k - 1)) {
                let mut vcolor = base.vertex_colors().to_vec();
                vcolor.push(VertexColor::Black);
                let grown = Crg::from_fn(vcolor, |i, j| {
                    if j < k - 1 {
                        base.edge(i, j)
                    } else if gray_mask >> i & 1 == 1 {
                        EdgeColor::Gray
                    } else {
                        EdgeColor::White
                    }
                })?;
                let (rep, key) = grown.canonical()?;
                found.entry(key).or_insert(rep);
            }
        }
        levels.push(found.into_values().collect());
    }
    Ok(levels)
}
