//! Library side of the `edfun` binary: argument dispatch, input resolution,
//! output formats and the verification suites.

use std::ffi::OsString;

use clap::Parser;
use edfun_core::edf::{curve_from_space, dist_exact, gamma_from_spectrum, maximize, RowStatus};
use edfun_core::embed::{clique_spectrum, embeds};
use edfun_core::gfun::{f, g, is_p_core, CoreCertificate};
use edfun_core::{Error as CoreError, SearchSpace};
use serde_json::json;

pub mod args;
mod input;
pub mod output;
pub mod verify;

use args::{Cli, Command, Format};
use output::{key_value_csv, num, round9, CurveLine};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::Parse { .. }
                | CoreError::UnknownName(_)
                | CoreError::VertexOutOfRange { .. }
                | CoreError::InvalidArgument(_) => 2,
                CoreError::CapExceeded { .. } | CoreError::TrivialProperty | CoreError::NotApplicable(_) => 3,
            },
        }
    }
}

/// Result of one invocation. `stdout` is written once by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let mut notes = Vec::new();
    match dispatch(&cli, &mut notes) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: join_notes(&notes) },
        Err(e) => {
            notes.push(format!("error: {e}"));
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: join_notes(&notes) }
        }
    }
}

fn join_notes(notes: &[String]) -> String {
    notes.iter().map(|n| format!("{n}\n")).collect()
}

fn scalar(format: Format, key: &str, value: String, number: serde_json::Value) -> String {
    match format {
        Format::Csv => format!("{value}\n"),
        Format::Json => output::json(&json!({ key: number })),
    }
}

fn dispatch(cli: &Cli, notes: &mut Vec<String>) -> Result<(i32, String), CliError> {
    let format = cli.format;
    let out = match &cli.command {
        Command::G(at) => {
            let k = input::crg(&at.crg)?;
            let p = input::density(at.p, notes)?;
            let sol = g(&k, p)?;
            match format {
                Format::Csv => format!("{}\n", num(sol.value)),
                Format::Json => output::json(&json!({
                    "crg": k.to_spec(),
                    "p": round9(p.get()),
                    "value": round9(sol.value),
                    "weights": sol.weights.iter().map(|&w| round9(w)).collect::<Vec<_>>(),
                    "support": sol.support,
                    "kkt_gap": round9(sol.kkt_gap),
                })),
            }
        }
        Command::F(at) => {
            let k = input::crg(&at.crg)?;
            let p = input::density(at.p, notes)?;
            let v = f(&k, p);
            scalar(format, "value", num(v), json!(round9(v)))
        }
        Command::Embed { graph, crg } => {
            let h = input::graph(graph)?;
            let k = input::crg(crg)?;
            let map = embeds(&h, &k);
            let map_text = map.as_ref().map(|m| m.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            match format {
                Format::Csv => key_value_csv(&[
                    ("embeds", map.is_some().to_string()),
                    ("map", map_text.unwrap_or_default()),
                ]),
                Format::Json => output::json(&json!({ "embeds": map.is_some(), "map": map })),
            }
        }
        Command::Spectrum(forbid) => {
            let sp = clique_spectrum(&input::forbidden(forbid)?)?;
            match format {
                Format::Csv => {
                    let points = sp.extreme_points.iter().map(|(r, s)| format!("{r} {s}")).collect::<Vec<_>>().join(";");
                    key_value_csv(&[
                        ("extreme_points", points),
                        ("chi", sp.chi.to_string()),
                        ("cochi", sp.cochi.to_string()),
                        ("chi_b", sp.chi_b.to_string()),
                    ])
                }
                Format::Json => output::json(&json!({
                    "extreme_points": sp.extreme_points,
                    "chi": sp.chi,
                    "cochi": sp.cochi,
                    "chi_b": sp.chi_b,
                })),
            }
        }
        Command::Gamma { forbid, points } => {
            let sp = clique_spectrum(&input::forbidden(forbid)?)?;
            let rows: Vec<CurveLine> = input::densities(points, notes)?
                .into_iter()
                .map(|p| {
                    let (value, (r, s)) = gamma_from_spectrum(&sp, p);
                    CurveLine { p: p.get(), value, witness: format!("k{r},{s}") }
                })
                .collect();
            curve_payload(format, &rows, None)
        }
        Command::Edf { forbid, points, max_k } => {
            let space = SearchSpace::new(&input::forbidden(forbid)?, *max_k)?;
            let mut rows = Vec::new();
            for p in input::densities(points, notes)? {
                rows.push(space.row(p)?);
            }
            let unproven = rows.iter().filter(|r| r.status == RowStatus::UnprovenRegion).count();
            let loose = rows.iter().filter(|r| r.status == RowStatus::UpperBound).count();
            if unproven > 0 {
                notes.push(format!("note: {unproven} row(s) in the unproven region; values are upper bounds only"));
            }
            if loose > 0 {
                notes.push(format!("note: {loose} row(s) are upper bounds without a known exact value"));
            }
            let lines: Vec<CurveLine> =
                rows.iter().map(|r| CurveLine { p: r.p, value: r.value, witness: r.witness.to_string() }).collect();
            let extra: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "weights": r.weights.iter().map(|&w| round9(w)).collect::<Vec<_>>(),
                        "status": r.status.as_str(),
                    })
                })
                .collect();
            curve_payload(format, &lines, Some(&extra))
        }
        Command::Maximize { forbid, max_k, grid } => {
            let space = SearchSpace::new(&input::forbidden(forbid)?, *max_k)?;
            let curve = curve_from_space(&space, *grid)?;
            if !curve.all_tight() {
                notes.push("note: the curve is only an upper bound at some grid points".into());
            }
            let m = maximize(&space, &curve)?;
            match format {
                Format::Csv => key_value_csv(&[
                    ("p_star_lo", num(m.p_star_lo)),
                    ("p_star_hi", num(m.p_star_hi)),
                    ("d_star", num(m.d_star)),
                ]),
                Format::Json => output::json(&json!({
                    "p_star_lo": round9(m.p_star_lo),
                    "p_star_hi": round9(m.p_star_hi),
                    "d_star": round9(m.d_star),
                    "grid": curve.grid_count,
                    "max_k": curve.max_k,
                    "digest": curve.digest,
                })),
            }
        }
        Command::Dist { graph, forbid } => {
            let d = dist_exact(&input::graph(graph)?, &input::forbidden(forbid)?)?;
            scalar(format, "distance", d.to_string(), json!(d))
        }
        Command::Pcore(at) => {
            let k = input::crg(&at.crg)?;
            let p = input::density(at.p, notes)?;
            let report = is_p_core(&k, p)?;
            let (cert, subset, value, weights) = match &report.certificate {
                CoreCertificate::Violation { subset, value } => ("violation", subset.clone(), *value, None),
                CoreCertificate::Optimum(sol) => ("optimum", (0..k.k()).collect(), sol.value, Some(sol.weights.clone())),
            };
            match format {
                Format::Csv => {
                    let subset_text = subset.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                    let weights_text =
                        weights.as_ref().map(|w| w.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")).unwrap_or_default();
                    key_value_csv(&[
                        ("is_core", report.is_core.to_string()),
                        ("certificate", cert.to_owned()),
                        ("subset", subset_text),
                        ("value", num(value)),
                        ("weights", weights_text),
                        ("screen", report.screen.passed.to_string()),
                        ("screen_reason", report.screen.reason.unwrap_or("").to_owned()),
                    ])
                }
                Format::Json => output::json(&json!({
                    "is_core": report.is_core,
                    "certificate": cert,
                    "subset": subset,
                    "value": round9(value),
                    "weights": weights.map(|w| w.iter().map(|&x| round9(x)).collect::<Vec<_>>()),
                    "screen": report.screen.passed,
                    "screen_reason": report.screen.reason,
                })),
            }
        }
        Command::Verify { suite } => {
            let report = verify::run_suite(*suite)?;
            let code = if report.passed() { 0 } else { 1 };
            let text = match format {
                Format::Csv => report.table(),
                Format::Json => output::json(&report),
            };
            return Ok((code, text));
        }
    };
    Ok((0, out))
}

fn curve_payload(format: Format, rows: &[CurveLine], extra: Option<&[serde_json::Value]>) -> String {
    match format {
        Format::Csv => output::curve_csv(rows),
        Format::Json => {
            let list: Vec<serde_json::Value> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut obj = json!({ "p": round9(r.p), "value": round9(r.value), "witness": r.witness });
                    if let (Some(extra), serde_json::Value::Object(map)) = (extra, &mut obj) {
                        if let serde_json::Value::Object(more) = &extra[i] {
                            map.extend(more.clone());
                        }
                    }
                    obj
                })
                .collect();
            output::json(&list)
        }
    }
}
