//! Small labeled simple graphs.
//!
//! Vertices are the dense indices `0..n`; adjacency is stored as one `u64`
//! bitmask per vertex, so graphs have at most [`MAX_VERTICES`] vertices. All
//! the exact invariants here are exponential and meant for the handful of
//! vertices that forbidden graphs and gray subgraphs of CRGs have.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Largest graph accepted by [`SimpleGraph::chromatic_number`].
pub const CHROMATIC_CAP: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded { what: "graph", size: n, cap: MAX_VERTICES });
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::empty(n)?.complement())
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Self::empty(n)?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { index: v, len: self.n });
        }
        Ok(())
    }

    /// Adds the edge `uv`. Panics if either endpoint is out of range or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "invalid edge ({u}, {v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Toggles the pair `uv` between edge and non-edge.
    pub fn flip(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Bitmask of the neighbours of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> SimpleGraph {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let adj = self.adj.iter().enumerate().map(|(v, &m)| !m & full & !(1 << v)).collect();
        SimpleGraph { n: self.n, adj }
    }

    /// The subgraph induced on `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph { n: vertices.len(), adj: vec![0; vertices.len()] };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&m| m == 0)
    }

    /// Connected components as vertex bitmasks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Number of parts if the graph is complete multipartite (its complement is
    /// a disjoint union of cliques), otherwise `None`.
    pub fn complete_multipartite_parts(&self) -> Option<usize> {
        self.complement().disjoint_clique_count()
    }

    /// Number of cliques if the graph is a disjoint union of cliques.
    pub fn disjoint_clique_count(&self) -> Option<usize> {
        let comps = self.components();
        comps
            .iter()
            .all(|&c| {
                let mut rest = c;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.adj[v] != c & !(1 << v) {
                        return false;
                    }
                }
                true
            })
            .then_some(comps.len())
    }

    fn max_clique_size(&self) -> usize {
        fn grow(g: &SimpleGraph, size: usize, cand: u64, best: &mut usize) {
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let mut rest = cand;
            while rest != 0 {
                if size + rest.count_ones() as usize <= *best {
                    return;
                }
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow(g, size + 1, rest & g.adj[v], best);
            }
        }
        let mut best = 0;
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        grow(self, 0, all, &mut best);
        best
    }

    /// Colors used by a greedy coloring in order of decreasing degree.
    fn greedy_colors(&self) -> usize {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| core::cmp::Reverse(self.degree(v)));
        let mut color = vec![usize::MAX; self.n];
        let mut used = 0;
        for &v in &order {
            let mut c = 0;
            while (0..self.n).any(|u| self.has_edge(u, v) && color[u] == c) {
                c += 1;
            }
            color[v] = c;
            used = used.max(c + 1);
        }
        used
    }

    fn colorable_with(&self, colors: usize) -> bool {
        // Vertices in decreasing degree order; colors are opened in order so
        // permutations of color labels are never revisited.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| core::cmp::Reverse(self.degree(v)));
        let mut class = vec![0u64; colors];
        fn place(g: &SimpleGraph, order: &[usize], idx: usize, class: &mut [u64], opened: usize) -> bool {
            let Some(&v) = order.get(idx) else { return true };
            let limit = (opened + 1).min(class.len());
            for c in 0..limit {
                if class[c] & g.adj[v] == 0 {
                    class[c] |= 1 << v;
                    let ok = place(g, order, idx + 1, class, opened.max(c + 1));
                    class[c] &= !(1 << v);
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        place(self, &order, 0, &mut class, 0)
    }

    /// Exact chromatic number by branch and bound between the clique number
    /// and a greedy coloring.
    pub fn chromatic_number(&self) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("chromatic number of the empty graph is undefined".into()));
        }
        if self.n > CHROMATIC_CAP {
            return Err(Error::CapExceeded { what: "graph for chromatic number", size: self.n, cap: CHROMATIC_CAP });
        }
        let lower = self.max_clique_size();
        let upper = self.greedy_colors();
        for k in lower..upper {
            if self.colorable_with(k) {
                return Ok(k);
            }
        }
        Ok(upper)
    }

    /// Minimum number of cliques partitioning the vertex set.
    pub fn clique_cover_number(&self) -> Result<usize> {
        self.complement().chromatic_number()
    }

    /// Whether `h` occurs as an induced subgraph.
    pub fn has_induced(&self, h: &SimpleGraph) -> bool {
        self.find_copy(h, true).is_some()
    }

    /// Whether `h` occurs as a (not necessarily induced) subgraph.
    pub fn contains_subgraph(&self, h: &SimpleGraph) -> bool {
        self.find_copy(h, false).is_some()
    }

    /// An injective map `V(h) -> V(self)` carrying edges to edges, and
    /// non-edges to non-edges as well when `induced` is set.
    pub fn find_copy(&self, h: &SimpleGraph, induced: bool) -> Option<Vec<usize>> {
        if h.n > self.n {
            return None;
        }
        if h.edge_count() > self.edge_count() {
            return None;
        }
        let mut map = vec![usize::MAX; h.n];
        fn extend(g: &SimpleGraph, h: &SimpleGraph, induced: bool, i: usize, used: u64, map: &mut [usize]) -> bool {
            if i == h.n {
                return true;
            }
            for v in 0..g.n {
                if used >> v & 1 == 1 || g.degree(v) < h.degree(i) {
                    continue;
                }
                let ok = (0..i).all(|j| {
                    let he = h.has_edge(i, j);
                    let ge = g.has_edge(v, map[j]);
                    if induced {
                        he == ge
                    } else {
                        !he || ge
                    }
                });
                if ok {
                    map[i] = v;
                    if extend(g, h, induced, i + 1, used | 1 << v, map) {
                        return true;
                    }
                }
            }
            false
        }
        extend(self, h, induced, 0, 0, &mut map).then_some(map)
    }

    /// Parses a family token: `C<h>` (cycle, h ≥ 3), `K<h>` (complete, h ≥ 1)
    /// or `E<h>` (edgeless, h ≥ 1).
    pub fn named(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownName(name.to_string());
        let mut chars = name.chars();
        let family = chars.next().ok_or_else(unknown)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let h: usize = digits.parse().map_err(|_| unknown())?;
        match family {
            'C' if (3..=MAX_VERTICES).contains(&h) => Self::cycle(h),
            'K' if (1..=MAX_VERTICES).contains(&h) => Self::complete(h),
            'E' if (1..=MAX_VERTICES).contains(&h) => Self::empty(h),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Writes the graph file format: `graph <n>` followed by one `u v` line per edge.
impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `graph <n>` header".into()))?;
        let n = header
            .strip_prefix("graph")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| err(hline, format!("malformed header `{header}`, expected `graph <n>`")))?;
        let mut g = SimpleGraph::empty(n).map_err(|e| err(hline, e.to_string()))?;

        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = fields[..] else {
                return Err(err(lineno, format!("expected `<u> <v>`, got `{line}`")));
            };
            let parse = |s: &str| s.parse::<usize>().map_err(|_| err(lineno, format!("invalid vertex index `{s}`")));
            let (u, v) = (parse(u)?, parse(v)?);
            if u >= n || v >= n {
                return Err(err(lineno, format!("vertex index {} out of range for n = {n}", u.max(v))));
            }
            if u >= v {
                return Err(err(lineno, format!("edge `{u} {v}` must satisfy u < v")));
            }
            if g.has_edge(u, v) {
                return Err(err(lineno, format!("duplicate edge `{u} {v}`")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }
}
