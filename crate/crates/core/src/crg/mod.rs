//! Colored regularity graphs.
//!
//! A CRG is a complete graph whose vertices are white or black and whose
//! edges are white, black or gray. Graph classes are encoded by CRGs: a
//! white vertex stands for an independent set, a black one for a clique, and
//! a gray edge for an arbitrary bipartite pattern between two parts.

mod canon;
mod structures;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;

pub use self::canon::{enumerate_black_crgs, enumerate_black_crgs_up_to, CANONICAL_CAP, ENUMERATION_CAP};
pub use self::structures::GrayStructures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    White,
    Black,
    Gray,
}

impl VertexColor {
    pub fn as_char(self) -> char {
        match self {
            VertexColor::White => 'w',
            VertexColor::Black => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'w' => Some(VertexColor::White),
            'b' => Some(VertexColor::Black),
            _ => None,
        }
    }

    /// The edge color that matches this vertex color.
    pub fn as_edge(self) -> EdgeColor {
        match self {
            VertexColor::White => EdgeColor::White,
            VertexColor::Black => EdgeColor::Black,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            VertexColor::White => VertexColor::Black,
            VertexColor::Black => VertexColor::White,
        }
    }
}

impl EdgeColor {
    pub fn as_char(self) -> char {
        match self {
            EdgeColor::White => 'w',
            EdgeColor::Black => 'b',
            EdgeColor::Gray => 'g',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'w' => Some(EdgeColor::White),
            'b' => Some(EdgeColor::Black),
            'g' => Some(EdgeColor::Gray),
            _ => None,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            EdgeColor::White => EdgeColor::Black,
            EdgeColor::Black => EdgeColor::White,
            EdgeColor::Gray => EdgeColor::Gray,
        }
    }
}

/// A colored regularity graph on `k ≥ 1` vertices.
///
/// Edge colors live in a symmetric `k×k` table; the diagonal is unused.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Crg {
    vcolor: Vec<VertexColor>,
    ecolor: Vec<EdgeColor>,
}

impl Crg {
    /// A CRG with the given vertex colors and every edge colored `edge`.
    pub fn uniform(vcolor: Vec<VertexColor>, edge: EdgeColor) -> Result<Self> {
        if vcolor.is_empty() {
            return Err(Error::InvalidArgument("a CRG needs at least one vertex".into()));
        }
        let k = vcolor.len();
        Ok(Crg { vcolor, ecolor: vec![edge; k * k] })
    }

    /// Builds a CRG, taking the color of edge `(i, j)`, `i < j`, from `edge`.
    pub fn from_fn(vcolor: Vec<VertexColor>, mut edge: impl FnMut(usize, usize) -> EdgeColor) -> Result<Self> {
        let mut crg = Self::uniform(vcolor, EdgeColor::Gray)?;
        let k = crg.k();
        for i in 0..k {
            for j in (i + 1)..k {
                crg.set_edge(i, j, edge(i, j));
            }
        }
        Ok(crg)
    }

    /// `K(r, s)`: `r` white then `s` black vertices, every edge gray.
    pub fn krs(r: usize, s: usize) -> Result<Self> {
        if r + s == 0 {
            return Err(Error::InvalidArgument("K(r,s) needs r + s ≥ 1".into()));
        }
        let mut vcolor = vec![VertexColor::White; r];
        vcolor.resize(r + s, VertexColor::Black);
        Self::uniform(vcolor, EdgeColor::Gray)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.vcolor.len()
    }

    #[inline]
    pub fn vertex(&self, v: usize) -> VertexColor {
        self.vcolor[v]
    }

    pub fn vertex_colors(&self) -> &[VertexColor] {
        &self.vcolor
    }

    /// Color of the edge `uv`, `u ≠ v`.
    #[inline]
    pub fn edge(&self, u: usize, v: usize) -> EdgeColor {
        debug_assert!(u != v);
        self.ecolor[u * self.k() + v]
    }

    pub fn set_edge(&mut self, u: usize, v: usize, color: EdgeColor) {
        assert!(u != v, "CRGs have no loops");
        let k = self.k();
        self.ecolor[u * k + v] = color;
        self.ecolor[v * k + u] = color;
    }

    pub fn set_vertex(&mut self, v: usize, color: VertexColor) {
        self.vcolor[v] = color;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.k() {
            return Err(Error::VertexOutOfRange { index: v, len: self.k() });
        }
        Ok(())
    }

    pub fn count_vertices(&self, color: VertexColor) -> usize {
        self.vcolor.iter().filter(|&&c| c == color).count()
    }

    pub fn count_edges(&self, color: EdgeColor) -> usize {
        let k = self.k();
        (0..k).map(|i| ((i + 1)..k).filter(|&j| self.edge(i, j) == color).count()).sum()
    }

    /// Same vertex color on every vertex?
    pub fn all_vertices(&self, color: VertexColor) -> bool {
        self.vcolor.iter().all(|&c| c == color)
    }

    /// Whether every edge has one of `colors`.
    pub fn edges_within(&self, colors: &[EdgeColor]) -> bool {
        let k = self.k();
        (0..k).all(|i| ((i + 1)..k).all(|j| colors.contains(&self.edge(i, j))))
    }

    /// Exchanges black and white on every vertex and edge. Gray is fixed.
    pub fn color_swapped(&self) -> Crg {
        Crg {
            vcolor: self.vcolor.iter().map(|c| c.swapped()).collect(),
            ecolor: self.ecolor.iter().map(|c| c.swapped()).collect(),
        }
    }

    /// `v` and `w` are twins when `v`, `w` and `vw` share one color and every
    /// other vertex sees them through edges of equal colors.
    pub fn are_twins(&self, v: usize, w: usize) -> Result<bool> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Err(Error::InvalidArgument("twin test needs two distinct vertices".into()));
        }
        Ok(self.twins_unchecked(v, w))
    }

    fn twins_unchecked(&self, v: usize, w: usize) -> bool {
        self.vcolor[v] == self.vcolor[w]
            && self.edge(v, w) == self.vcolor[v].as_edge()
            && (0..self.k()).filter(|&x| x != v && x != w).all(|x| self.edge(v, x) == self.edge(w, x))
    }

    /// Fuses twin pairs until none remain. The lower-indexed vertex of each
    /// pair survives, so the result keeps the relative vertex order.
    pub fn fuse_twins(&self) -> Crg {
        let mut keep: Vec<usize> = (0..self.k()).collect();
        'outer: loop {
            for a in 0..keep.len() {
                for b in (a + 1)..keep.len() {
                    if self.twins_unchecked(keep[a], keep[b]) {
                        keep.remove(b);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        self.induced(&keep)
    }

    /// Appends a copy `v'` of vertex `v`; the new edge `vv'` takes the color
    /// of `v`, which makes the two twins.
    pub fn partition_vertex(&self, v: usize) -> Result<Crg> {
        self.check_vertex(v)?;
        let k = self.k();
        let mut vcolor = self.vcolor.clone();
        vcolor.push(self.vcolor[v]);
        Crg::from_fn(vcolor, |i, j| match (i, j) {
            (i, j) if j < k => self.edge(i, j),
            (i, _) if i == v => self.vcolor[v].as_edge(),
            (i, _) => self.edge(i, v),
        })
    }

    /// Vertex sets of the components: the classes of the relation "joined by a
    /// chain of non-gray edges", ordered by smallest vertex.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut label = vec![usize::MAX; k];
        let mut sets = Vec::new();
        for start in 0..k {
            if label[start] != usize::MAX {
                continue;
            }
            let id = sets.len();
            let mut members = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                for w in 0..k {
                    if label[w] == usize::MAX && w != u && self.edge(u, w) != EdgeColor::Gray {
                        label[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            sets.push(members);
        }
        sets
    }

    pub fn components(&self) -> Vec<Crg> {
        self.component_sets().iter().map(|s| self.induced(s)).collect()
    }

    /// The sub-CRG induced on `subset`, keeping the order given.
    pub fn sub_crg(&self, subset: &[usize]) -> Result<Crg> {
        if subset.is_empty() {
            return Err(Error::InvalidArgument("sub-CRG of an empty vertex set".into()));
        }
        for &v in subset {
            self.check_vertex(v)?;
        }
        for (i, a) in subset.iter().enumerate() {
            if subset[i + 1..].contains(a) {
                return Err(Error::InvalidArgument(format!("vertex {a} repeated in sub-CRG subset")));
            }
        }
        Ok(self.induced(subset))
    }

    /// Sub-CRG on the vertices set in `mask`.
    pub fn sub_crg_mask(&self, mask: u64) -> Crg {
        let subset: Vec<usize> = (0..self.k()).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced(&subset)
    }

    pub(crate) fn induced(&self, subset: &[usize]) -> Crg {
        let vcolor = subset.iter().map(|&v| self.vcolor[v]).collect();
        Crg::from_fn(vcolor, |i, j| self.edge(subset[i], subset[j])).expect("non-empty subset")
    }

    /// The simple graph of gray edges.
    pub fn gray_graph(&self) -> SimpleGraph {
        let k = self.k();
        let mut g = SimpleGraph::empty(k).expect("CRG within graph size cap");
        for i in 0..k {
            for j in (i + 1)..k {
                if self.edge(i, j) == EdgeColor::Gray {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Compact single-token form: `crg:` followed by the rows of the file
    /// format joined with `/`, e.g. `crg:wb/g`.
    pub fn to_spec(&self) -> String {
        let mut s = String::from("crg:");
        s.extend(self.vcolor.iter().map(|c| c.as_char()));
        let k = self.k();
        for i in 0..k.saturating_sub(1) {
            s.push('/');
            s.extend(((i + 1)..k).map(|j| self.edge(i, j).as_char()));
        }
        s
    }

    /// Parses `k<r>,<s>` (for `K(r,s)`) or the `crg:` token of [`Crg::to_spec`].
    pub fn from_spec(spec: &str) -> Result<Crg> {
        let spec = spec.trim();
        if let Some(body) = spec.strip_prefix("crg:") {
            let mut text = String::from("crg ");
            for (i, part) in body.split('/').enumerate() {
                if i > 0 {
                    text.push('\n');
                }
                text.push_str(part);
            }
            return text.parse();
        }
        let unknown = || Error::UnknownName(spec.to_string());
        let body = spec.strip_prefix('k').or_else(|| spec.strip_prefix('K')).ok_or_else(unknown)?;
        let (r, s) = body.split_once(',').ok_or_else(unknown)?;
        let r = r.trim().parse::<usize>().map_err(|_| unknown())?;
        let s = s.trim().parse::<usize>().map_err(|_| unknown())?;
        Crg::krs(r, s)
    }
}

impl fmt::Debug for Crg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec())
    }
}

/// CRG file format: `crg <vcolors>` then `k-1` rows of upper-triangular edge colors.
impl fmt::Display for Crg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("crg ")?;
        for c in &self.vcolor {
            write!(f, "{}", c.as_char())?;
        }
        writeln!(f)?;
        let k = self.k();
        for i in 0..k.saturating_sub(1) {
            for j in (i + 1)..k {
                write!(f, "{}", self.edge(i, j).as_char())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Crg {
    type Err = Error;

    fn from_str(text: &str) -> Result<Crg> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let lines: Vec<&str> = text.lines().map(str::trim).collect();
        let header = lines.first().copied().unwrap_or("");
        let vcolors = header
            .strip_prefix("crg")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .ok_or_else(|| err(1, format!("malformed header `{header}`, expected `crg <vcolors>`")))?;
        let vcolor = vcolors
            .chars()
            .map(|c| VertexColor::from_char(c).ok_or_else(|| err(1, format!("illegal vertex color `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        let k = vcolor.len();
        if k > crate::graphs::MAX_VERTICES {
            return Err(err(1, format!("{k} vertices exceed the cap of {}", crate::graphs::MAX_VERTICES)));
        }
        let rows = &lines[1..];
        let trailing_blank = rows.iter().rev().take_while(|l| l.is_empty()).count();
        let rows = &rows[..rows.len() - trailing_blank];
        if rows.len() != k - 1 {
            // Point at the first missing row, or at the first surplus one.
            let line = if rows.len() < k - 1 { rows.len() + 2 } else { k + 1 };
            return Err(err(line, format!("expected {} edge rows for {k} vertices, found {}", k - 1, rows.len())));
        }
        let mut crg = Crg::uniform(vcolor, EdgeColor::Gray)?;
        for (i, row) in rows.iter().enumerate() {
            let line = i + 2;
            let colors: Vec<char> = row.chars().collect();
            if colors.len() != k - 1 - i {
                return Err(err(line, format!("expected {} edge colors, found {}", k - 1 - i, colors.len())));
            }
            for (offset, &c) in colors.iter().enumerate() {
                let color = EdgeColor::from_char(c).ok_or_else(|| err(line, format!("illegal edge color `{c}`")))?;
                crg.set_edge(i, i + 1 + offset, color);
            }
        }
        Ok(crg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexColor::{Black as B, White as W};

    fn crg(text: &str) -> Crg {
        text.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let k11 = crg("crg wb\ng");
        assert_eq!(k11, Crg::krs(1, 1).unwrap());
        let bb = crg("crg bb\nw");
        assert_eq!(bb.vertex_colors(), &[B, B]);
        assert_eq!(bb.edge(0, 1), EdgeColor::White);
        assert_eq!(crg("crg w").k(), 1);
        assert!(matches!("crg ww\nx".parse::<Crg>(), Err(Error::Parse { line: 2, .. })));
        assert!(matches!("crg wx".parse::<Crg>(), Err(Error::Parse { line: 1, .. })));
        assert!(matches!("crg www\ngg".parse::<Crg>(), Err(Error::Parse { .. })));
        assert!(matches!("crg www\ngg\ngg".parse::<Crg>(), Err(Error::Parse { line: 3, .. })));
        assert!("crg ".parse::<Crg>().is_err());
        assert!("graph 2".parse::<Crg>().is_err());
    }

    #[test]
    fn display_and_spec_round_trip() {
        let c = crg("crg wbb\ngw\nb");
        assert_eq!(c.to_string().parse::<Crg>().unwrap(), c);
        assert_eq!(c.to_spec(), "crg:wbb/gw/b");
        assert_eq!(Crg::from_spec(&c.to_spec()).unwrap(), c);
        assert_eq!(Crg::from_spec("k2,1").unwrap(), Crg::krs(2, 1).unwrap());
        assert!(Crg::from_spec("k0,0").is_err());
        assert!(Crg::from_spec("q1").is_err());
    }

    #[test]
    fn krs_examples() {
        let k20 = Crg::krs(2, 0).unwrap();
        assert_eq!(k20.vertex_colors(), &[W, W]);
        assert_eq!(k20.edge(0, 1), EdgeColor::Gray);
        assert_eq!(Crg::krs(0, 1).unwrap().vertex_colors(), &[B]);
        assert_eq!(Crg::krs(1, 2).unwrap().count_edges(EdgeColor::Gray), 3);
        assert!(Crg::krs(0, 0).is_err());
    }

    #[test]
    fn twin_examples() {
        assert!(!Crg::krs(2, 0).unwrap().are_twins(0, 1).unwrap());
        let mut c = Crg::krs(3, 0).unwrap();
        c.set_edge(0, 1, EdgeColor::White);
        assert!(c.are_twins(0, 1).unwrap());
        assert!(!Crg::krs(1, 1).unwrap().are_twins(0, 1).unwrap());
        assert!(c.are_twins(0, 3).is_err());
        assert!(c.are_twins(1, 1).is_err());
    }

    #[test]
    fn fuse_examples() {
        let www = Crg::uniform(vec![W, W, W], EdgeColor::White).unwrap();
        assert_eq!(www.fuse_twins(), crg("crg w"));
        let k11 = Crg::krs(1, 1).unwrap();
        assert_eq!(k11.fuse_twins(), k11);
    }

    #[test]
    fn partition_examples() {
        let w = crg("crg w");
        assert_eq!(w.partition_vertex(0).unwrap(), crg("crg ww\nw"));
        let c = crg("crg wbb\ngw\nb");
        let p = c.partition_vertex(1).unwrap();
        assert_eq!(p.k(), 4);
        assert!(p.are_twins(1, 3).unwrap());
        assert_eq!(p.edge(0, 3), EdgeColor::Gray);
        assert_eq!(p.edge(2, 3), EdgeColor::Black);
        assert_eq!(p.fuse_twins(), c);
        assert!(c.partition_vertex(3).is_err());
    }

    #[test]
    fn component_examples() {
        assert_eq!(Crg::krs(1, 2).unwrap().components().len(), 3);
        assert_eq!(crg("crg bb\nw").components().len(), 1);
        for (r, s) in [(0, 1), (3, 2), (4, 0)] {
            assert_eq!(Crg::krs(r, s).unwrap().components().len(), r + s);
        }
        let c = crg("crg wbwb\ngwg\ngb\ng");
        assert_eq!(c.component_sets(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn sub_crg_examples() {
        let k12 = Crg::krs(1, 2).unwrap();
        assert_eq!(k12.sub_crg(&[0]).unwrap(), Crg::krs(1, 0).unwrap());
        assert_eq!(k12.sub_crg(&[0, 1, 2]).unwrap(), k12);
        assert!(k12.sub_crg(&[]).is_err());
        assert!(k12.sub_crg(&[3]).is_err());
        assert!(k12.sub_crg(&[1, 1]).is_err());
    }

    #[test]
    fn gray_graph_examples() {
        assert_eq!(Crg::krs(1, 2).unwrap().gray_graph(), SimpleGraph::named("K3").unwrap());
        assert_eq!(crg("crg bb\nw").gray_graph(), SimpleGraph::named("E2").unwrap());
        let c = crg("crg wbwb\ngwb\ngg\nb");
        let k = c.k();
        let total = c.gray_graph().edge_count() + c.count_edges(EdgeColor::White) + c.count_edges(EdgeColor::Black);
        assert_eq!(total, k * (k - 1) / 2);
    }
}
