use infimax_core::infimax::{infimax_prefix, InfimaxSource};
use infimax_core::minimax::{
    brute_force_minimax, minimax, CountVector, PowerWord, DEFAULT_ORACLE_CAP, DEFAULT_WORD_CAP,
};
use infimax_core::regularity::{separation_delta, vertex_images, ClassifyOptions};
use infimax_core::simplex::{itinerary, point_from_finite_itinerary};
use infimax_core::{classify, Alphabet, Classification, Letter};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::input::{parse_counts, parse_finite_itinerary, parse_point, parse_spec};
use crate::{selftest, Cli, CliError, Command, Outcome};

/// Longest block considered when compressing an explicit word.
const RUN_LENGTH_BLOCK: usize = 64;

/// Default step limit for the `itinerary` command.
const DEFAULT_STEP_CAP: usize = 10_000;

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let report = match &cli.command {
        Command::Minimax { counts } => to_value(cmd_minimax(cli, counts)?),
        Command::Oracle { counts, max_sum } => {
            let report = cmd_oracle(cli, counts.as_deref(), *max_sum)?;
            let exit_code = if report.mismatches.is_empty() { 0 } else { 4 };
            return Ok(Outcome {
                report: to_value(report),
                exit_code,
            });
        }
        Command::Itinerary { point } => to_value(cmd_itinerary(cli, point)?),
        Command::Point { itinerary } => to_value(cmd_point(cli, &itinerary.join(" "))?),
        Command::Infimax {
            point,
            itinerary,
            length,
        } => to_value(cmd_infimax(
            cli,
            point.as_deref(),
            itinerary.as_deref(),
            *length,
        )?),
        Command::Regularity { spec, depth } => to_value(cmd_regularity(cli, spec, *depth)?),
        Command::Vertices { spec, depth } => to_value(cmd_vertices(cli, spec, *depth)?),
        Command::Selftest => {
            let report = selftest::run();
            let exit_code = if report.passed() { 0 } else { 4 };
            return Ok(Outcome {
                report: to_value(report),
                exit_code,
            });
        }
    };
    Ok(Outcome {
        report,
        exit_code: 0,
    })
}

fn to_value<T: Serialize>(report: T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn require_k(cli: &Cli) -> Result<usize, CliError> {
    cli.k
        .ok_or_else(|| CliError::Input("this command needs the alphabet size -k".into()))
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn render_word(cli: &Cli, k: usize, letters: &[Letter]) -> String {
    if cli.run_length {
        PowerWord::from_letters(k, letters, RUN_LENGTH_BLOCK).to_string()
    } else {
        infimax_core::word::render_letters(letters, k)
    }
}

#[derive(Debug, Serialize)]
pub struct MinimaxReport {
    pub k: usize,
    pub counts: String,
    /// `α̂, K̂(α̂), ...` down to `(0, ..., 0, c)`.
    pub chain: Vec<String>,
    pub branches: Vec<String>,
    pub length: String,
    pub word: String,
}

pub fn cmd_minimax(cli: &Cli, counts: &str) -> Result<MinimaxReport, CliError> {
    let alpha = parse_counts(counts, cli.k)?;
    let cap = cli.cap.unwrap_or(DEFAULT_WORD_CAP);
    let sol = minimax(&alpha);
    let word = if cli.run_length {
        match sol.power_form() {
            Some(p) => p.to_string(),
            None => render_word(cli, alpha.k(), sol.word(cap)?.letters()),
        }
    } else {
        sol.word(cap)?.to_string()
    };
    let chain = alpha.chain();
    Ok(MinimaxReport {
        k: alpha.k(),
        counts: alpha.to_string(),
        chain: chain.iter().map(|(v, _)| v.to_string()).collect(),
        branches: chain
            .iter()
            .filter_map(|(_, n)| n.as_ref().map(ToString::to_string))
            .collect(),
        length: sol.length().to_string(),
        word,
    })
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub k: usize,
    pub cap: usize,
    pub cases: usize,
    pub agreed: usize,
    pub mismatches: Vec<String>,
    pub status: &'static str,
}

/// Count vectors over `k` letters with total at most `max_sum` and a
/// positive last entry.
fn count_vectors(k: usize, max_sum: u64) -> Vec<Vec<u64>> {
    fn fill(prefix: &mut Vec<u64>, k: usize, left: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == k - 1 {
            for last in 1..=left {
                let mut v = prefix.clone();
                v.push(last);
                out.push(v);
            }
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            fill(prefix, k, left - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::new(), k, max_sum, &mut out);
    out
}

pub fn cmd_oracle(
    cli: &Cli,
    counts: Option<&str>,
    max_sum: Option<u64>,
) -> Result<OracleReport, CliError> {
    let cap = cli.cap.unwrap_or(DEFAULT_ORACLE_CAP);
    let cases: Vec<CountVector> = match (counts, max_sum) {
        (Some(c), _) => vec![parse_counts(c, cli.k)?],
        (None, Some(s)) => {
            let k = require_k(cli)?;
            Alphabet::new(k)?;
            if s > cap as u64 {
                return Err(CliError::Cap(format!(
                    "total {s} above the oracle cap {cap}"
                )));
            }
            count_vectors(k, s)
                .iter()
                .map(|v| CountVector::from_u64(v).expect("last entry positive"))
                .collect()
        }
        (None, None) => {
            return Err(CliError::Input("give a count vector or --max-sum".into()));
        }
    };
    let k = cases[0].k();
    let mut agreed = 0;
    let mut mismatches = Vec::new();
    for alpha in &cases {
        let fast = minimax(alpha).word(DEFAULT_WORD_CAP)?;
        let slow = brute_force_minimax(alpha, cap)?;
        if fast == slow {
            agreed += 1;
        } else {
            mismatches.push(format!("{alpha}: {fast} != {slow}"));
        }
    }
    Ok(OracleReport {
        k,
        cap,
        cases: cases.len(),
        agreed,
        status: if mismatches.is_empty() {
            "pass"
        } else {
            "fail"
        },
        mismatches,
    })
}

#[derive(Debug, Serialize)]
pub struct ItineraryReport {
    pub k: usize,
    pub point: String,
    pub itinerary: String,
    pub steps: usize,
}

fn itinerary_text(entries: &[BigUint]) -> String {
    let mut s = strings(entries).join(" ");
    if !s.is_empty() {
        s.push(' ');
    }
    s.push_str("| 0̄");
    s
}

pub fn cmd_itinerary(cli: &Cli, point: &str) -> Result<ItineraryReport, CliError> {
    let alpha = parse_point(point, cli.k)?;
    let cap = cli.cap.unwrap_or(DEFAULT_STEP_CAP);
    let it = itinerary(&alpha, cap);
    if !it.terminated {
        return Err(CliError::Cap(format!("no termination within {cap} steps")));
    }
    Ok(ItineraryReport {
        k: alpha.k(),
        point: alpha.to_string(),
        itinerary: itinerary_text(&it.entries),
        steps: it.entries.len(),
    })
}

#[derive(Debug, Serialize)]
pub struct PointReport {
    pub k: usize,
    pub itinerary: String,
    pub point: String,
}

pub fn cmd_point(cli: &Cli, text: &str) -> Result<PointReport, CliError> {
    let k = require_k(cli)?;
    let alphabet = Alphabet::new(k)?;
    let it = parse_finite_itinerary(text)?;
    let point = point_from_finite_itinerary(&it.entries, alphabet);
    Ok(PointReport {
        k,
        itinerary: itinerary_text(&it.entries),
        point: point.to_string(),
    })
}

#[derive(Debug, Serialize)]
pub struct InfimaxReport {
    pub k: usize,
    pub source: String,
    pub length: usize,
    /// Itinerary entries used to produce the prefix.
    pub depth: usize,
    pub itinerary_used: Vec<String>,
    /// The sequence is periodic with period `Λ_{n,r}(k)`.
    pub periodic: bool,
    pub period_length: Option<String>,
    pub word: String,
}

pub fn cmd_infimax(
    cli: &Cli,
    point: Option<&str>,
    spec: Option<&str>,
    length: usize,
) -> Result<InfimaxReport, CliError> {
    let (source, k, label) = match (point, spec) {
        (Some(p), None) => {
            let alpha = parse_point(p, cli.k)?;
            let k = alpha.k();
            let label = format!("point {alpha}");
            (InfimaxSource::Point(alpha), k, label)
        }
        (None, Some(s)) => {
            let k = require_k(cli)?;
            (
                InfimaxSource::Itinerary(parse_spec(s)?),
                k,
                format!("itinerary {s}"),
            )
        }
        _ => return Err(CliError::Input("give a point or --itinerary".into())),
    };
    if length == 0 {
        return Err(CliError::Input("-R must be at least 1".into()));
    }
    let cap = cli.cap.unwrap_or(DEFAULT_WORD_CAP);
    if length > cap {
        return Err(CliError::Cap(format!(
            "{length} letters requested, cap is {cap}"
        )));
    }
    let prefix = infimax_prefix(&source, k, length)?;
    Ok(InfimaxReport {
        k,
        source: label,
        length,
        depth: prefix.depth,
        itinerary_used: strings(&prefix.itinerary_used),
        periodic: prefix.periodic,
        period_length: prefix
            .periodic
            .then(|| prefix.exact_total_length.to_string()),
        word: render_word(cli, k, prefix.word.letters()),
    })
}

#[derive(Debug, Serialize)]
pub struct DimensionReport {
    pub depth: usize,
    pub points: usize,
    pub dimension: usize,
}

#[derive(Debug, Serialize)]
pub struct RegularityReport {
    pub k: usize,
    pub verdict: String,
    pub criterion: String,
    pub depth: usize,
    /// Least sup-norm distance among the first `k - 1` vertices, per depth.
    pub delta_trace: Vec<String>,
    /// Hilbert diameter `log D` of the vertex set, per depth.
    pub diameter_trace: Vec<String>,
    pub dimension: Option<DimensionReport>,
    pub reduced: Option<Box<RegularityReport>>,
}

fn decimal(q: &BigRational) -> String {
    match q.to_f64() {
        Some(x) if x.is_finite() => format!("{x:.6}"),
        _ => q.to_string(),
    }
}

impl From<&Classification> for RegularityReport {
    fn from(c: &Classification) -> Self {
        RegularityReport {
            k: c.k,
            verdict: c.verdict.to_string(),
            criterion: c.criterion.to_string(),
            depth: c.depth,
            delta_trace: c.delta_trace.iter().map(decimal).collect(),
            diameter_trace: c
                .diameter_trace
                .iter()
                .map(|d| {
                    let x = d.distance();
                    if x.is_finite() {
                        format!("{x:.6e}")
                    } else {
                        "inf".to_string()
                    }
                })
                .collect(),
            dimension: c.dimension.as_ref().map(|d| DimensionReport {
                depth: d.depth,
                points: d.points,
                dimension: d.dimension,
            }),
            reduced: c
                .reduced
                .as_deref()
                .map(|r| Box::new(RegularityReport::from(r))),
        }
    }
}

pub fn cmd_regularity(cli: &Cli, spec: &str, depth: usize) -> Result<RegularityReport, CliError> {
    let k = require_k(cli)?;
    let spec = parse_spec(spec)?;
    let options = ClassifyOptions {
        max_depth: depth,
        ..ClassifyOptions::default()
    };
    Ok(RegularityReport::from(&classify(&spec, k, &options)?))
}

#[derive(Debug, Serialize)]
pub struct VertexRow {
    pub letter: usize,
    pub length: String,
    pub point: String,
}

#[derive(Debug, Serialize)]
pub struct VerticesReport {
    pub k: usize,
    pub depth: usize,
    pub entries: Vec<String>,
    pub vertices: Vec<VertexRow>,
    pub delta: Option<String>,
    /// Hilbert ratio `D` of the vertex set.
    pub diameter: String,
}

pub fn cmd_vertices(cli: &Cli, spec: &str, depth: usize) -> Result<VerticesReport, CliError> {
    let k = require_k(cli)?;
    let alphabet = Alphabet::new(k)?;
    let spec = parse_spec(spec)?;
    let entries = spec.take(depth + 1);
    if entries.len() < depth + 1 {
        return Err(CliError::Input(format!(
            "itinerary has only {} entries, depth {depth} needs {}",
            entries.len(),
            depth + 1
        )));
    }
    let v = vertex_images(&entries, alphabet)?;
    let vertices = v
        .vertices
        .iter()
        .zip(v.lengths())
        .enumerate()
        .map(|(i, (p, len))| {
            let mut point = String::new();
            infimax_core::simplex::write_rational_vector(&mut point, p).expect("string write");
            VertexRow {
                letter: i + 1,
                length: len.to_string(),
                point,
            }
        })
        .collect();
    Ok(VerticesReport {
        k,
        depth,
        entries: strings(&entries),
        vertices,
        delta: (k >= 3)
            .then(|| separation_delta(&v).map(|d| d.to_string()))
            .transpose()?,
        diameter: infimax_core::regularity::hilbert_diameter(&v.vertices).to_string(),
    })
}
