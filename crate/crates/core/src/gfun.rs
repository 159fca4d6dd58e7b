//! The matrix `M_K(p)`, the functions `f_K` and `g_K`, and the p-core and
//! symmetrization diagnostics.
//!
//! `g_K(p) = min xᵀ M_K(p) x` over the simplex. `M` is indefinite as soon as
//! two black vertices share a white edge (or the reverse), so the program is
//! solved exactly by enumerating supports: on a face `S` every interior
//! critical point satisfies `M_S x = λ·1, Σx = 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::error::{Error, Result};
use crate::linalg::solve_in_place;

/// Largest CRG handed to the support enumeration of [`g`].
pub const SUPPORT_CAP: usize = 16;

/// Largest CRG accepted by [`is_p_core`].
pub const CORE_CAP: usize = 10;

/// Smallest admissible density; inputs outside `[P_MIN, 1 - P_MIN]` are clamped.
pub const P_MIN: f64 = 1e-9;

/// Default tolerance for residual checks.
pub const TOLERANCE: f64 = 1e-9;

/// Weights above `-FEASIBLE` count as non-negative; weights at or below
/// `FEASIBLE` are dropped from the support.
const FEASIBLE: f64 = 1e-12;

/// A later face replaces the incumbent only if it is lower by more than this.
const IMPROVEMENT: f64 = 1e-12;

/// A sub-CRG must exceed `g_K` by more than this for `K` to count as a p-core.
const CORE_MARGIN: f64 = 1e-9;

/// An edge density in the open unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PValue(f64);

impl PValue {
    /// Accepts any `p ∈ [0, 1]`, clamping it into `[P_MIN, 1 - P_MIN]`.
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(alloc::format!("p must lie in [0, 1], got {p}")));
        }
        Ok(PValue(p.clamp(P_MIN, 1.0 - P_MIN)))
    }

    /// Whether [`PValue::new`] would move `p`.
    pub fn needs_clamp(p: f64) -> bool {
        (0.0..=1.0).contains(&p) && !(P_MIN..=1.0 - P_MIN).contains(&p)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The symmetric matrix `M_K(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    k: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.k + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.k).map(|i| (0..self.k).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Minimizer of the quadratic program.
#[derive(Debug, Clone, PartialEq)]
pub struct GSolution {
    pub value: f64,
    pub weights: Vec<f64>,
    /// Indices with strictly positive weight, ascending.
    pub support: Vec<usize>,
    /// `max_i (value − (Mx)_i)` clipped below at 0.
    pub kkt_gap: f64,
}

fn vertex_entry(c: VertexColor, p: f64) -> f64 {
    match c {
        VertexColor::White => p,
        VertexColor::Black => 1.0 - p,
    }
}

fn edge_entry(c: EdgeColor, p: f64) -> f64 {
    match c {
        EdgeColor::White => p,
        EdgeColor::Black => 1.0 - p,
        EdgeColor::Gray => 0.0,
    }
}

/// `M_K(p)`: `p` on white vertices and edges, `1 − p` on black, `0` on gray.
pub fn matrix(k: &Crg, p: PValue) -> SymMatrix {
    let n = k.k();
    let p = p.get();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = if i == j { vertex_entry(k.vertex(i), p) } else { edge_entry(k.edge(i, j), p) };
        }
    }
    SymMatrix { k: n, entries }
}

/// `f_K(p)`, the value of the uniform weighting.
pub fn f(k: &Crg, p: PValue) -> f64 {
    let n = k.k() as f64;
    let p = p.get();
    let white = k.count_vertices(VertexColor::White) + 2 * k.count_edges(EdgeColor::White);
    let black = k.count_vertices(VertexColor::Black) + 2 * k.count_edges(EdgeColor::Black);
    (p * white as f64 + (1.0 - p) * black as f64) / (n * n)
}

/// Advances `idx` to the next `m`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let m = idx.len();
    for i in (0..m).rev() {
        if idx[i] < n - m + i {
            idx[i] += 1;
            for j in (i + 1)..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `g_K(p)` with an optimal weighting.
///
/// Faces are visited by increasing size, then lexicographically, and a face
/// only replaces the incumbent when strictly better, which makes the
/// reported weights deterministic. Faces whose bordered system is singular
/// are skipped: along a null direction the objective is constant, so the
/// same value is reached on a smaller face.
pub fn g(k: &Crg, p: PValue) -> Result<GSolution> {
    let n = k.k();
    if n > SUPPORT_CAP {
        return Err(Error::CapExceeded { what: "CRG for exact g (decompose into components first)", size: n, cap: SUPPORT_CAP });
    }
    let m = matrix(k, p);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut a = Vec::with_capacity((n + 1) * (n + 1));
    let mut b = Vec::with_capacity(n + 1);
    for size in 1..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if let Some(x) = face_critical_point(&m, &idx, &mut a, &mut b) {
                let value = m.quad_form(&x);
                if best.as_ref().is_none_or(|(v, _)| value < v - IMPROVEMENT) {
                    best = Some((value, x));
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    let (value, weights) = best.expect("singleton faces always solve");
    let mx = m.mul_vec(&weights);
    let kkt_gap = mx.iter().fold(0.0f64, |gap, &r| gap.max(value - r));
    let support = (0..n).filter(|&i| weights[i] > 0.0).collect();
    Ok(GSolution { value, weights, support, kkt_gap })
}

/// The critical point of the objective on the relative interior of the face
/// `idx`, scattered into a full-length weight vector, if it is feasible.
fn face_critical_point(m: &SymMatrix, idx: &[usize], a: &mut Vec<f64>, b: &mut Vec<f64>) -> Option<Vec<f64>> {
    let s = idx.len();
    let dim = s + 1;
    a.clear();
    a.resize(dim * dim, 0.0);
    b.clear();
    b.resize(dim, 0.0);
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            a[r * dim + c] = m.get(i, j);
        }
        a[r * dim + s] = -1.0;
        a[s * dim + r] = 1.0;
    }
    b[s] = 1.0;
    if !solve_in_place(a, b) {
        return None;
    }
    if b[..s].iter().any(|&w| w.is_nan() || w <= -FEASIBLE) {
        return None;
    }
    let mut x = vec![0.0; m.dim()];
    for (r, &i) in idx.iter().enumerate() {
        if b[r] > FEASIBLE {
            x[i] = b[r];
        }
    }
    let total: f64 = x.iter().sum();
    if total <= 0.0 {
        return None;
    }
    x.iter_mut().for_each(|w| *w /= total);
    Some(x)
}

/// `g_K(p)` through the harmonic identity `1/g_K = Σ 1/g_{K_i}` over the
/// components of `K`.
pub fn g_components(k: &Crg, p: PValue) -> Result<f64> {
    let parts = k.components();
    if parts.len() == 1 {
        return Ok(g(k, p)?.value);
    }
    let mut inverse = 0.0;
    for part in &parts {
        inverse += 1.0 / g_components(part, p)?;
    }
    Ok(1.0 / inverse)
}

/// `g` of `K(r, s)`: `p(1−p) / (r(1−p) + s·p)`.
pub fn g_all_gray(r: usize, s: usize, p: PValue) -> Result<f64> {
    if r + s == 0 {
        return Err(Error::InvalidArgument("K(r,s) needs r + s ≥ 1".into()));
    }
    let p = p.get();
    Ok(p * (1.0 - p) / (r as f64 * (1.0 - p) + s as f64 * p))
}

/// Closed form of `g` for CRGs without gray edges whose vertices share one
/// color and whose edges all have the other color.
pub fn g_no_gray(k: &Crg, p: PValue) -> Result<f64> {
    let n = k.k() as f64;
    let p = p.get();
    if k.all_vertices(VertexColor::White) && k.edges_within(&[EdgeColor::Black]) {
        Ok(p.min(1.0 - p + (2.0 * p - 1.0) / n))
    } else if k.all_vertices(VertexColor::Black) && k.edges_within(&[EdgeColor::White]) {
        Ok((p + (1.0 - 2.0 * p) / n).min(1.0 - p))
    } else {
        Err(Error::NotApplicable(
            "closed form needs white vertices with black edges or black vertices with white edges".into(),
        ))
    }
}

/// Necessary coloring conditions for a p-core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralScreen {
    pub passed: bool,
    /// The first violated condition, if any.
    pub reason: Option<&'static str>,
}

fn structural_screen(k: &Crg, p: f64) -> StructuralScreen {
    let n = k.k();
    let edge_at = |color: VertexColor, edge: EdgeColor| {
        (0..n).any(|u| k.vertex(u) == color && (0..n).any(|v| v != u && k.edge(u, v) == edge))
    };
    let reason = if (p - 0.5).abs() < 1e-12 {
        (!k.edges_within(&[EdgeColor::Gray])).then_some("at p = 1/2 every edge must be gray")
    } else if p < 0.5 {
        if k.count_edges(EdgeColor::Black) > 0 {
            Some("below 1/2 there must be no black edge")
        } else if edge_at(VertexColor::White, EdgeColor::White) {
            Some("below 1/2 no white edge may touch a white vertex")
        } else {
            None
        }
    } else if k.count_edges(EdgeColor::White) > 0 {
        Some("above 1/2 there must be no white edge")
    } else if edge_at(VertexColor::Black, EdgeColor::Black) {
        Some("above 1/2 no black edge may touch a black vertex")
    } else {
        None
    };
    StructuralScreen { passed: reason.is_none(), reason }
}

/// Evidence for the answer of [`is_p_core`].
#[derive(Debug, Clone, PartialEq)]
pub enum CoreCertificate {
    /// A proper sub-CRG, by vertex indices, with `g` no larger than `g_K`.
    Violation { subset: Vec<usize>, value: f64 },
    /// The optimal weighting of `K`; it has full support.
    Optimum(GSolution),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PCoreReport {
    pub is_core: bool,
    pub certificate: CoreCertificate,
    pub screen: StructuralScreen,
}

/// Whether `g_K(p) < g_{K'}(p)` for every proper sub-CRG `K'`.
///
/// Since `g` can only drop when vertices are added, comparing against the
/// `k` single-vertex deletions covers every proper subset.
pub fn is_p_core(k: &Crg, p: PValue) -> Result<PCoreReport> {
    let n = k.k();
    if n > CORE_CAP {
        return Err(Error::CapExceeded { what: "CRG for p-core check", size: n, cap: CORE_CAP });
    }
    let screen = structural_screen(k, p.get());
    let sol = g(k, p)?;
    if sol.support.len() < n {
        let subset = sol.support.clone();
        let certificate = CoreCertificate::Violation { subset, value: sol.value };
        return Ok(PCoreReport { is_core: false, certificate, screen });
    }
    // A single vertex has no proper non-empty sub-CRG.
    for v in (0..n).filter(|_| n > 1) {
        let subset: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let value = g(&k.induced(&subset), p)?.value;
        if value <= sol.value + CORE_MARGIN {
            return Ok(PCoreReport { is_core: false, certificate: CoreCertificate::Violation { subset, value }, screen });
        }
    }
    Ok(PCoreReport { is_core: true, certificate: CoreCertificate::Optimum(sol), screen })
}

/// `max_{i ∈ support} |(Mx)_i − value|`.
pub fn symmetrization_residual(k: &Crg, p: PValue, sol: &GSolution) -> f64 {
    let mx = matrix(k, p).mul_vec(&sol.weights);
    sol.support.iter().fold(0.0f64, |r, &i| r.max((mx[i] - sol.value).abs()))
}

/// Local weighted degrees of one vertex under an optimal weighting.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexDiagnostic {
    pub vertex: usize,
    pub color: VertexColor,
    pub weight: f64,
    /// `x(v)` for white `v`, else the weight of its white neighbourhood.
    pub d_white: f64,
    /// `x(v)` for black `v`, else the weight of its black neighbourhood.
    pub d_black: f64,
    /// Weight of the gray neighbourhood.
    pub d_gray: f64,
    /// `|p·d_W + (1−p)·d_B − g|`.
    pub identity_residual: f64,
    /// Deviation from the local degree formulas that apply at this `p`.
    pub degree_residual: f64,
    /// Whether the weight cap for this vertex holds, when one applies.
    pub weight_cap_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalDegreeReport {
    pub value: f64,
    pub vertices: Vec<VertexDiagnostic>,
}

impl LocalDegreeReport {
    pub fn max_identity_residual(&self) -> f64 {
        self.vertices.iter().fold(0.0, |m, v| m.max(v.identity_residual))
    }

    pub fn max_degree_residual(&self) -> f64 {
        self.vertices.iter().fold(0.0, |m, v| m.max(v.degree_residual))
    }

    pub fn weight_caps_ok(&self) -> bool {
        self.vertices.iter().all(|v| v.weight_cap_ok != Some(false))
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_identity_residual() <= tol && self.max_degree_residual() <= tol && self.weight_caps_ok()
    }
}

/// Per-vertex balance diagnostics for a full-support optimum.
///
/// For `p ≤ 1/2`: white weights equal `g/p`, black vertices have
/// `d_G = (p − g)/p + ((1 − 2p)/p)·x(v)` and `x(v) ≤ g/(1 − p)`. For
/// `p ≥ 1/2` the roles of the colors and of `p`, `1 − p` swap.
pub fn local_degree_check(k: &Crg, p: PValue, sol: &GSolution) -> Result<LocalDegreeReport> {
    let n = k.k();
    if sol.weights.len() != n {
        return Err(Error::InvalidArgument("weight vector does not match the CRG".into()));
    }
    if sol.support.len() != n {
        return Err(Error::NotApplicable("local degree check needs a full-support optimum (a p-core)".into()));
    }
    let p = p.get();
    let q = 1.0 - p;
    let g = sol.value;
    let x = &sol.weights;
    let vertices = (0..n)
        .map(|v| {
            let color = k.vertex(v);
            let around = |c: EdgeColor| (0..n).filter(|&z| z != v && k.edge(v, z) == c).map(|z| x[z]).sum::<f64>();
            let (d_white, d_black) = match color {
                VertexColor::White => (x[v], around(EdgeColor::Black)),
                VertexColor::Black => (around(EdgeColor::White), x[v]),
            };
            let d_gray = around(EdgeColor::Gray);
            let identity_residual = (p * d_white + q * d_black - g).abs();
            let mut degree_residual = 0.0f64;
            let mut weight_cap_ok = None;
            if p <= 0.5 {
                degree_residual = degree_residual.max(match color {
                    VertexColor::White => (x[v] - g / p).abs(),
                    VertexColor::Black => (d_gray - ((p - g) / p + (1.0 - 2.0 * p) / p * x[v])).abs(),
                });
                if color == VertexColor::Black {
                    weight_cap_ok = Some(x[v] <= g / q + TOLERANCE);
                }
            }
            if p >= 0.5 {
                degree_residual = degree_residual.max(match color {
                    VertexColor::Black => (x[v] - g / q).abs(),
                    VertexColor::White => (d_gray - ((q - g) / q + (2.0 * p - 1.0) / q * x[v])).abs(),
                });
                if color == VertexColor::White {
                    weight_cap_ok = Some(weight_cap_ok.unwrap_or(true) && x[v] <= g / p + TOLERANCE);
                }
            }
            VertexDiagnostic { vertex: v, color, weight: x[v], d_white, d_black, d_gray, identity_residual, degree_residual, weight_cap_ok }
        })
        .collect();
    Ok(LocalDegreeReport { value: g, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(p: f64) -> PValue {
        PValue::new(p).unwrap()
    }

    fn crg(s: &str) -> Crg {
        s.parse().unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn p_value_policy() {
        assert!(PValue::new(f64::NAN).is_err());
        assert!(PValue::new(-0.1).is_err());
        assert_eq!(PValue::new(0.0).unwrap().get(), P_MIN);
        assert_eq!(PValue::new(1.0).unwrap().get(), 1.0 - P_MIN);
        assert!(PValue::needs_clamp(0.0) && !PValue::needs_clamp(0.5) && !PValue::needs_clamp(2.0));
    }

    #[test]
    fn matrix_examples() {
        let m = matrix(&Crg::krs(1, 1).unwrap(), pv(1.0 / 3.0));
        assert!(close(m.get(0, 0), 1.0 / 3.0) && close(m.get(1, 1), 2.0 / 3.0));
        assert_eq!(m.get(0, 1), 0.0);
        let m = matrix(&crg("crg bb\nw"), pv(0.3));
        assert_eq!(m.entries(), &[0.7, 0.3, 0.3, 0.7]);
    }

    #[test]
    fn f_examples() {
        assert!(close(f(&Crg::krs(2, 0).unwrap(), pv(0.4)), 0.2));
        assert!(close(f(&crg("crg bb\nw"), pv(0.3)), 0.5));
    }

    #[test]
    fn g_examples() {
        let sol = g(&Crg::krs(1, 1).unwrap(), pv(1.0 / 3.0)).unwrap();
        assert!(close(sol.value, 2.0 / 9.0));
        assert!(close(sol.weights[0], 2.0 / 3.0) && close(sol.weights[1], 1.0 / 3.0));
        assert_eq!(sol.support, vec![0, 1]);

        let bw = crg("crg bb\nw");
        let sol = g(&bw, pv(0.3)).unwrap();
        assert!(close(sol.value, 0.5) && close(sol.weights[0], 0.5));
        let sol = g(&bw, pv(0.7)).unwrap();
        assert!(close(sol.value, 0.3));
        assert_eq!(sol.weights, vec![1.0, 0.0]);
        assert_eq!(sol.support, vec![0]);

        let sol = g(&Crg::krs(1, 0).unwrap(), pv(0.42)).unwrap();
        assert_eq!((sol.value, sol.weights), (0.42, vec![1.0]));
        assert!(g(&Crg::krs(17, 0).unwrap(), pv(0.5)).is_err());
    }

    #[test]
    fn kkt_gap_is_zero_at_optimum() {
        let k = crg("crg wbbw\ngwb\nbg\ng");
        for p in [0.1, 0.35, 0.5, 0.8] {
            let sol = g(&k, pv(p)).unwrap();
            assert!(sol.kkt_gap < 1e-12);
            assert!(close(sol.weights.iter().sum(), 1.0));
            assert!(sol.value <= f(&k, pv(p)) + 1e-12);
        }
    }

    #[test]
    fn component_examples() {
        assert!(close(g_components(&Crg::krs(2, 3).unwrap(), pv(0.5)).unwrap(), 0.1));
        assert!(close(g_components(&Crg::krs(1, 1).unwrap(), pv(1.0 / 3.0)).unwrap(), 2.0 / 9.0));
        let k = crg("crg bb\nw");
        assert_eq!(g_components(&k, pv(0.3)).unwrap(), g(&k, pv(0.3)).unwrap().value);
    }

    #[test]
    fn all_gray_examples() {
        assert!((g_all_gray(1, 2, pv(0.3)).unwrap() - 0.21 / 1.3).abs() < 1e-15);
        assert!(close(g_all_gray(0, 4, pv(1.0 / 3.0)).unwrap(), 1.0 / 6.0));
        assert!(close(g_all_gray(1, 0, pv(0.77)).unwrap(), 0.77));
        assert!(g_all_gray(0, 0, pv(0.5)).is_err());
    }

    #[test]
    fn no_gray_examples() {
        assert!(close(g_no_gray(&crg("crg ww\nb"), pv(0.4)).unwrap(), 0.4));
        assert!(close(g_no_gray(&crg("crg bb\nw"), pv(0.7)).unwrap(), 0.3));
        assert!(close(g_no_gray(&Crg::krs(1, 0).unwrap(), pv(0.2)).unwrap(), 0.2));
        assert!(g_no_gray(&Crg::krs(1, 1).unwrap(), pv(0.2)).is_err());
    }

    #[test]
    fn p_core_examples() {
        let r = is_p_core(&Crg::krs(2, 0).unwrap(), pv(0.3)).unwrap();
        assert!(r.is_core && r.screen.passed);
        assert!(matches!(r.certificate, CoreCertificate::Optimum(ref s) if close(s.weights[0], 0.5)));

        let r = is_p_core(&crg("crg bb\nb"), pv(0.3)).unwrap();
        assert!(!r.screen.passed);

        let r = is_p_core(&crg("crg bb\nw"), pv(0.7)).unwrap();
        assert!(!r.is_core);
        assert!(matches!(r.certificate, CoreCertificate::Violation { ref subset, value } if subset.len() == 1 && close(value, 0.3)));

        assert!(is_p_core(&Crg::krs(1, 0).unwrap(), pv(0.3)).unwrap().is_core);
        assert!(is_p_core(&Crg::krs(11, 0).unwrap(), pv(0.3)).is_err());
    }

    #[test]
    fn residual_examples() {
        let k = Crg::krs(1, 1).unwrap();
        let sol = g(&k, pv(1.0 / 3.0)).unwrap();
        assert!(symmetrization_residual(&k, pv(1.0 / 3.0), &sol) < 1e-15);
        let k = Crg::krs(0, 1).unwrap();
        assert_eq!(symmetrization_residual(&k, pv(0.4), &g(&k, pv(0.4)).unwrap()), 0.0);
    }

    #[test]
    fn local_degree_examples() {
        let k = Crg::krs(2, 0).unwrap();
        let sol = g(&k, pv(0.3)).unwrap();
        let rep = local_degree_check(&k, pv(0.3), &sol).unwrap();
        assert!(rep.passed(1e-12));
        assert!(rep.vertices.iter().all(|v| close(v.weight, 0.5)));

        let k = Crg::krs(1, 1).unwrap();
        let p = pv(1.0 / 3.0);
        let rep = local_degree_check(&k, p, &g(&k, p).unwrap()).unwrap();
        assert!(rep.passed(1e-12));
        assert_eq!(rep.vertices[1].weight_cap_ok, Some(true));

        let k = crg("crg bbb\ngg\ng");
        let rep = local_degree_check(&k, pv(0.25), &g(&k, pv(0.25)).unwrap()).unwrap();
        for v in &rep.vertices {
            assert!(close(v.weight, 1.0 / 3.0) && close(v.d_gray, 2.0 / 3.0));
        }
        assert!(rep.passed(1e-12));

        let k = crg("crg bb\nw");
        let sol = g(&k, pv(0.7)).unwrap();
        assert!(local_degree_check(&k, pv(0.7), &sol).is_err());
    }
}
