//! Edit distance functions: `γ_H`, upper envelopes over a bounded class of
//! CRGs, curves and their maxima, the clique bounds, the closed forms for
//! forbidden cycles and a brute-force distance oracle.
//!
//! `ed_H(p)` is the minimum of `g_K(p)` over all CRGs `K` admitting no
//! forbidden graph. The search here covers
//!
//! * `K(r, s)` for every extreme point of the clique spectrum,
//! * every CRG on at most `max_k` black vertices with white or gray edges,
//! * the color-swapped analogues (white vertices, black or gray edges),
//!
//! so every value it returns is an upper bound on `ed_H(p)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::crg::{enumerate_black_crgs_up_to, Crg, ENUMERATION_CAP};
use crate::embed::{clique_spectrum, in_property, CliqueSpectrum};
use crate::error::{Error, Result};
use crate::gfun::{g, g_all_gray, GSolution, PValue, P_MIN};
use crate::graphs::SimpleGraph;

/// A candidate only displaces the incumbent when lower by more than this.
const IMPROVEMENT: f64 = 1e-12;

/// Agreement needed between a searched value and a known exact value for a
/// row to be marked [`RowStatus::Tight`].
pub const TIGHT_TOLERANCE: f64 = 1e-6;

/// Points within this of the maximum belong to the maximizer interval. The
/// envelope is accurate to about 1e-15; a wider band would stretch the
/// interval around smooth peaks by `sqrt(band)`.
pub const MAX_BAND: f64 = 1e-12;

/// Width at which golden-section and boundary refinement stop.
const REFINE_WIDTH: f64 = 1e-12;

/// Largest graph accepted by [`dist_exact`].
pub const DIST_CAP: usize = 7;

/// The CRG attaining a searched value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `K(r, s)`, tagged `k<r>,<s>`.
    Krs(usize, usize),
    /// Any other CRG, tagged by its `crg:` spec token.
    Crg(Crg),
}

impl Witness {
    pub fn crg(&self) -> Crg {
        match self {
            Witness::Krs(r, s) => Crg::krs(*r, *s).expect("spectrum points have r + s ≥ 1"),
            Witness::Crg(c) => c.clone(),
        }
    }

    /// Parses a tag produced by `Display`.
    pub fn from_tag(tag: &str) -> Result<Witness> {
        let crg = Crg::from_spec(tag)?;
        if tag.starts_with('k') {
            let r = crg.count_vertices(crate::VertexColor::White);
            Ok(Witness::Krs(r, crg.k() - r))
        } else {
            Ok(Witness::Crg(crg))
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Krs(r, s) => write!(f, "k{r},{s}"),
            Witness::Crg(c) => f.write_str(&c.to_spec()),
        }
    }
}

/// Minimum of `g_{K(r,s)}(p)` over the extreme points, with the first
/// extreme point (by increasing `r`) that attains it.
pub fn gamma_from_spectrum(spectrum: &CliqueSpectrum, p: PValue) -> (f64, (usize, usize)) {
    let mut best: Option<(f64, (usize, usize))> = None;
    for &(r, s) in &spectrum.extreme_points {
        let v = g_all_gray(r, s, p).expect("extreme points have r + s ≥ 1");
        if best.is_none_or(|(b, _)| v < b - IMPROVEMENT) {
            best = Some((v, (r, s)));
        }
    }
    best.expect("non-trivial spectra have an extreme point")
}

/// `γ_H(p)` and the extreme point attaining it.
pub fn gamma(forbidden: &[SimpleGraph], p: PValue) -> Result<(f64, (usize, usize))> {
    Ok(gamma_from_spectrum(&clique_spectrum(forbidden)?, p))
}

/// If `h` is a cycle, its length.
fn cycle_length(h: &SimpleGraph) -> Option<usize> {
    let n = h.n();
    (n >= 3 && (0..n).all(|v| h.degree(v) == 2) && h.components().len() == 1).then_some(n)
}

/// The candidate CRGs for one forbidden family, independent of `p`.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    forbidden: Vec<SimpleGraph>,
    spectrum: CliqueSpectrum,
    max_k: usize,
    candidates: Vec<Witness>,
}

/// One evaluation of the searched envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct EdfPoint {
    pub p: f64,
    pub value: f64,
    pub witness: Witness,
    pub solution: GSolution,
}

impl SearchSpace {
    /// Builds the candidate list. Fails for a trivial property or when
    /// `max_k` exceeds the enumeration cap.
    pub fn new(forbidden: &[SimpleGraph], max_k: usize) -> Result<Self> {
        if max_k > ENUMERATION_CAP {
            return Err(Error::CapExceeded { what: "search size max_k", size: max_k, cap: ENUMERATION_CAP });
        }
        let spectrum = clique_spectrum(forbidden)?;
        let mut candidates: Vec<Witness> = spectrum.extreme_points.iter().map(|&(r, s)| Witness::Krs(r, s)).collect();
        let levels = enumerate_black_crgs_up_to(max_k)?;
        let mut white = Vec::new();
        for level in &levels {
            for black in level {
                if in_property(black, forbidden) {
                    candidates.push(Witness::Crg(black.clone()));
                }
                let swapped = black.color_swapped();
                if in_property(&swapped, forbidden) {
                    white.push(Witness::Crg(swapped));
                }
            }
        }
        candidates.extend(white);
        Ok(SearchSpace { forbidden: forbidden.to_vec(), spectrum, max_k, candidates })
    }

    pub fn forbidden(&self) -> &[SimpleGraph] {
        &self.forbidden
    }

    pub fn spectrum(&self) -> &CliqueSpectrum {
        &self.spectrum
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn candidates(&self) -> &[Witness] {
        &self.candidates
    }

    /// Minimum of `g_K(p)` over the candidates. Ties go to the earliest
    /// candidate, so `K(r, s)` witnesses win over enumerated ones.
    pub fn upper(&self, p: PValue) -> Result<EdfPoint> {
        let mut best: Option<(GSolution, &Witness)> = None;
        for w in &self.candidates {
            let sol = g(&w.crg(), p)?;
            if best.as_ref().is_none_or(|(b, _)| sol.value < b.value - IMPROVEMENT) {
                best = Some((sol, w));
            }
        }
        let (solution, witness) = best.expect("spectrum contributes at least one candidate");
        Ok(EdfPoint { p: p.get(), value: solution.value, witness: witness.clone(), solution })
    }

    /// A known exact value of `ed_H(p)`: the cycle closed forms for a single
    /// forbidden cycle, or the clique bounds when they coincide.
    pub fn exact_value(&self, p: PValue) -> Option<f64> {
        if let [h] = self.forbidden.as_slice() {
            if let Some(len) = cycle_length(h).filter(|l| (3..=10).contains(l)) {
                return cycle_closed_form(len, p).ok();
            }
        }
        let b = complete_bounds(&self.forbidden, p).ok()?;
        ((b.upper - b.lower).abs() <= 1e-12).then_some(b.upper)
    }

    fn status(&self, p: PValue, value: f64) -> RowStatus {
        if let [h] = self.forbidden.as_slice() {
            if cycle_length(h) == Some(10) && p.get() < 1.0 / 7.0 {
                return RowStatus::UnprovenRegion;
            }
        }
        match self.exact_value(p) {
            Some(exact) if (exact - value).abs() <= TIGHT_TOLERANCE => RowStatus::Tight,
            _ => RowStatus::UpperBound,
        }
    }

    /// A curve row at `p`.
    pub fn row(&self, p: PValue) -> Result<CurveRow> {
        let pt = self.upper(p)?;
        let status = self.status(p, pt.value);
        Ok(CurveRow { p: pt.p, value: pt.value, witness: pt.witness, weights: pt.solution.weights, status })
    }
}

/// Minimum of `g_K(p)` over the searched class for `forbidden`.
pub fn edf_upper(forbidden: &[SimpleGraph], p: PValue, max_k: usize) -> Result<EdfPoint> {
    SearchSpace::new(forbidden, max_k)?.upper(p)
}

/// What is known about a curve value beyond being an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    /// Matches a proven exact value.
    Tight,
    /// Only an upper bound; no exact value is known here.
    UpperBound,
    /// Outside the range where the known formula is proven.
    UnprovenRegion,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Tight => "tight",
            RowStatus::UpperBound => "upper bound",
            RowStatus::UnprovenRegion => "unproven region",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub p: f64,
    pub value: f64,
    pub witness: Witness,
    /// Optimal weights on the witness.
    pub weights: Vec<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdfCurve {
    /// Rows by strictly increasing `p`.
    pub rows: Vec<CurveRow>,
    pub grid_count: usize,
    pub max_k: usize,
    /// FNV-1a hash of the forbidden graphs' text form, in hex.
    pub digest: String,
}

impl EdfCurve {
    pub fn all_tight(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Tight)
    }
}

fn digest(forbidden: &[SimpleGraph]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for h in forbidden {
        for byte in format!("{h};").bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{hash:016x}")
}

/// The searched envelope at `p = i / (grid_count + 1)`, `i = 1..=grid_count`.
pub fn curve_from_space(space: &SearchSpace, grid_count: usize) -> Result<EdfCurve> {
    if grid_count < 3 {
        return Err(Error::InvalidArgument("a curve needs at least 3 grid points".into()));
    }
    let rows = (1..=grid_count)
        .map(|i| space.row(PValue::new(i as f64 / (grid_count + 1) as f64)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdfCurve { rows, grid_count, max_k: space.max_k, digest: digest(&space.forbidden) })
}

pub fn edf_curve(forbidden: &[SimpleGraph], grid_count: usize, max_k: usize) -> Result<EdfCurve> {
    curve_from_space(&SearchSpace::new(forbidden, max_k)?, grid_count)
}

/// Location and value of the maximum of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxPoint {
    pub p_star_lo: f64,
    pub p_star_hi: f64,
    pub d_star: f64,
}

/// Refines the grid maximum of `curve`.
///
/// The envelope is a minimum of concave functions, hence concave, so a
/// golden-section search between the neighbours of the grid argmax finds
/// the peak. The maximizer interval collects every point within
/// [`MAX_BAND`] of the peak; its ends are then bisected against the nearest
/// points outside the band.
pub fn maximize(space: &SearchSpace, curve: &EdfCurve) -> Result<MaxPoint> {
    let rows = &curve.rows;
    if rows.is_empty() {
        return Err(Error::InvalidArgument("cannot maximize an empty curve".into()));
    }
    let eval = |p: f64| -> Result<f64> { Ok(space.upper(PValue::new(p)?)?.value) };
    let mut samples: Vec<(f64, f64)> = rows.iter().map(|r| (r.p, r.value)).collect();
    let top = (0..rows.len()).fold(0, |b, i| if rows[i].value > rows[b].value + IMPROVEMENT { i } else { b });
    let mut a = if top == 0 { P_MIN } else { rows[top - 1].p };
    let mut b = if top + 1 == rows.len() { 1.0 - P_MIN } else { rows[top + 1].p };
    samples.push((a, eval(a)?));
    samples.push((b, eval(b)?));

    let ratio = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (eval(c)?, eval(d)?);
    samples.push((c, fc));
    samples.push((d, fd));
    while b - a > REFINE_WIDTH {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = eval(c)?;
            samples.push((c, fc));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = eval(d)?;
            samples.push((d, fd));
        }
    }
    let d_star = samples.iter().fold(f64::NEG_INFINITY, |m, s| m.max(s.1));
    let inside = |v: f64| v >= d_star - MAX_BAND;
    let lo = samples.iter().filter(|s| inside(s.1)).fold(f64::INFINITY, |m, s| m.min(s.0));
    let hi = samples.iter().filter(|s| inside(s.1)).fold(f64::NEG_INFINITY, |m, s| m.max(s.0));

    // Nearest sampled points outside the band bound the bisection.
    let below = samples.iter().filter(|s| s.0 < lo && !inside(s.1)).map(|s| s.0).fold(None, |m: Option<f64>, p| Some(m.map_or(p, |m| m.max(p))));
    let above = samples.iter().filter(|s| s.0 > hi && !inside(s.1)).map(|s| s.0).fold(None, |m: Option<f64>, p| Some(m.map_or(p, |m| m.min(p))));
    let refine = |mut out: f64, mut inn: f64| -> Result<f64> {
        while (inn - out).abs() > REFINE_WIDTH {
            let mid = (inn + out) / 2.0;
            if inside(eval(mid)?) {
                inn = mid;
            } else {
                out = mid;
            }
        }
        Ok(inn)
    };
    let p_star_lo = match below {
        Some(out) => refine(out, lo)?,
        None => lo,
    };
    let p_star_hi = match above {
        Some(out) => refine(out, hi)?,
        None => hi,
    };
    Ok(MaxPoint { p_star_lo, p_star_hi, d_star })
}

/// Which of the two clique-bound statements applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVariant {
    /// A complete graph is forbidden.
    Complete,
    /// An edgeless graph is forbidden.
    Edgeless,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliqueBounds {
    pub lower: f64,
    pub upper: f64,
    pub variant: BoundVariant,
    /// `χ` (or `χ̄` for the edgeless variant).
    pub chi: usize,
    /// Fewest parts of a forbidden complete multipartite graph (or fewest
    /// cliques of a forbidden disjoint union of cliques).
    pub m: usize,
}

/// Bounds on `ed_H(p)` when a complete graph, or failing that an edgeless
/// graph, is forbidden:
///
/// `min{p/(χ−1), (1−p)/(χ−1) + (2p−1)/(m−1)} ≤ ed ≤ min{p/(χ−1), 1−p + (2p−1)/(m−1)}`
///
/// and, for the edgeless case,
///
/// `min{p/(χ̄−1) + (1−2p)/(m−1), (1−p)/(χ̄−1)} ≤ ed ≤ min{p + (1−2p)/(m−1), (1−p)/(χ̄−1)}`.
pub fn complete_bounds(forbidden: &[SimpleGraph], p: PValue) -> Result<CliqueBounds> {
    let p = p.get();
    let (variant, chi, m) = if forbidden.iter().any(|h| h.n() > 0 && h.is_complete()) {
        let mut chi = usize::MAX;
        for h in forbidden {
            chi = chi.min(h.chromatic_number()?);
        }
        let m = forbidden.iter().filter_map(SimpleGraph::complete_multipartite_parts).min().expect("complete graphs qualify");
        (BoundVariant::Complete, chi, m)
    } else if forbidden.iter().any(|h| h.n() > 0 && h.is_edgeless()) {
        let mut chi = usize::MAX;
        for h in forbidden {
            chi = chi.min(h.clique_cover_number()?);
        }
        let m = forbidden.iter().filter_map(SimpleGraph::disjoint_clique_count).min().expect("edgeless graphs qualify");
        (BoundVariant::Edgeless, chi, m)
    } else {
        return Err(Error::NotApplicable("clique bounds need a forbidden complete or edgeless graph".into()));
    };
    if chi < 2 || m < 2 {
        return Err(Error::TrivialProperty);
    }
    let (c, m1) = ((chi - 1) as f64, (m - 1) as f64);
    let (lower, upper) = match variant {
        BoundVariant::Complete => (
            (p / c).min((1.0 - p) / c + (2.0 * p - 1.0) / m1),
            (p / c).min(1.0 - p + (2.0 * p - 1.0) / m1),
        ),
        BoundVariant::Edgeless => (
            (p / c + (1.0 - 2.0 * p) / m1).min((1.0 - p) / c),
            (p + (1.0 - 2.0 * p) / m1).min((1.0 - p) / c),
        ),
    };
    Ok(CliqueBounds { lower, upper, variant, chi, m })
}

/// `ed_{Forb(C_h)}(p)` for `h = 3..=10`; for `h = 10` only `p ≥ 1/7` is covered.
pub fn cycle_closed_form(h: usize, p: PValue) -> Result<f64> {
    let p = p.get();
    let q = 1.0 - p;
    Ok(match h {
        3 => p / 2.0,
        4 => p * q,
        5 => (p / 2.0).min(q / 2.0),
        6 => (p * q).min(q / 2.0),
        7 => (p / 2.0).min(p * q / (1.0 + p)).min(q / 3.0),
        8 => (p * q / (1.0 + p)).min(q / 3.0),
        9 => (p / 2.0).min(q / 4.0),
        10 if p >= 1.0 / 7.0 => (p * q / (1.0 + 2.0 * p)).min(q / 4.0),
        10 => return Err(Error::NotApplicable(format!("the C10 formula is only proven for p ≥ 1/7, got {p}"))),
        _ => return Err(Error::NotApplicable(format!("no closed form for cycles of length {h}"))),
    })
}

/// Fewest edge flips turning `graph` into a graph with no forbidden induced
/// subgraph; flip sets are tried by increasing size.
pub fn dist_exact(graph: &SimpleGraph, forbidden: &[SimpleGraph]) -> Result<usize> {
    let n = graph.n();
    if n > DIST_CAP {
        return Err(Error::CapExceeded { what: "graph for exact distance", size: n, cap: DIST_CAP });
    }
    let ok = |g: &SimpleGraph| forbidden.iter().all(|h| !g.has_induced(h));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total = pairs.len();
    for flips in 0..=total {
        if flips == 0 {
            if ok(graph) {
                return Ok(0);
            }
            continue;
        }
        // Gosper's hack: every `total`-bit mask with `flips` bits set.
        let mut mask: u64 = (1u64 << flips) - 1;
        while mask < 1u64 << total {
            let mut g = graph.clone();
            let mut bits = mask;
            while bits != 0 {
                let (u, v) = pairs[bits.trailing_zeros() as usize];
                g.flip(u, v);
                bits &= bits - 1;
            }
            if ok(&g) {
                return Ok(flips);
            }
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    Err(Error::TrivialProperty)
}

/// One line of a [`basic_checks`] report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Whether a failure signals a bug, as opposed to a loose search.
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasicReport {
    pub checks: Vec<Check>,
    pub max_point: MaxPoint,
}

impl BasicReport {
    pub fn asserted_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.asserted)
    }
}

/// Tests a curve against the general facts about edit distance functions:
/// the `χ` and `χ̄` bounds, the value at `1/2`, the bound on `d*` from every
/// spectrum point, the linear pieces forced by `χ = χ_B` or `χ̄ = χ_B`, the
/// side of `1/2` on which `p*` lies, and concavity.
pub fn basic_checks(space: &SearchSpace, curve: &EdfCurve) -> Result<BasicReport> {
    const TOL: f64 = 1e-9;
    let sp = space.spectrum();
    let (chi, cochi, chi_b) = (sp.chi, sp.cochi, sp.chi_b);
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool, asserted: bool| checks.push(Check { name, passed, asserted });

    if chi > 1 {
        let c = (chi - 1) as f64;
        push(format!("ed ≤ p/(χ−1) with χ = {chi}"), curve.rows.iter().all(|r| r.value <= r.p / c + TOL), true);
    }
    if cochi > 1 {
        let c = (cochi - 1) as f64;
        push(format!("ed ≤ (1−p)/(χ̄−1) with χ̄ = {cochi}"), curve.rows.iter().all(|r| r.value <= (1.0 - r.p) / c + TOL), true);
    }

    let half = PValue::new(0.5)?;
    let at_half = space.upper(half)?.value;
    let expected = 1.0 / (2.0 * (chi_b - 1) as f64);
    let (gamma_half, _) = gamma_from_spectrum(sp, half);
    push(
        format!("ed(1/2) = 1/(2(χ_B−1)) = γ(1/2) with χ_B = {chi_b}"),
        (at_half - expected).abs() <= TOL && (gamma_half - expected).abs() <= TOL,
        true,
    );

    let max_point = maximize(space, curve)?;
    let spectrum_ok = sp.points().iter().all(|&(r, s)| {
        let root = libm::sqrt(r as f64) + libm::sqrt(s as f64);
        max_point.d_star <= 1.0 / (root * root) + TOL
    });
    push("d* ≤ (√r+√s)⁻² for every spectrum point".into(), spectrum_ok, true);

    if chi == chi_b {
        let c = (chi - 1) as f64;
        let ok = curve.rows.iter().filter(|r| r.p <= 0.5).all(|r| (r.value - r.p / c).abs() <= TOL);
        push("χ = χ_B: ed = p/(χ−1) on [0, 1/2]".into(), ok, true);
    }
    if cochi == chi_b {
        let c = (cochi - 1) as f64;
        let ok = curve.rows.iter().filter(|r| r.p >= 0.5).all(|r| (r.value - (1.0 - r.p) / c).abs() <= TOL);
        push("χ̄ = χ_B: ed = (1−p)/(χ̄−1) on [1/2, 1]".into(), ok, true);
    }

    let tight = curve.all_tight();
    for &(r, s) in sp.extreme_points.iter().filter(|&&(r, s)| r + s == chi_b - 1) {
        if r >= s {
            push(format!("({r},{s}) extreme with r ≥ s: p* ≥ 1/2"), max_point.p_star_hi >= 0.5 - 1e-7, tight);
        }
        if r <= s {
            push(format!("({r},{s}) extreme with r ≤ s: p* ≤ 1/2"), max_point.p_star_lo <= 0.5 + 1e-7, tight);
        }
    }

    let concave = curve.rows.windows(3).all(|w| w[1].value >= (w[0].value + w[2].value) / 2.0 - 1e-6);
    push("grid-midpoint concavity".into(), concave, tight);

    Ok(BasicReport { checks, max_point })
}
