//! Command implementations. Each returns the text for stdout; failures that
//! still produce a report (a wrong artifact, an oracle disagreement) carry it
//! in [`Report::failure`].

use std::fmt::Write;
use std::fs;
use std::path::Path;

use cmpcc::boolfn::{self, ENUMERATION_CAP};
use cmpcc::ccp::{self, VERIFY_ARITY_CAP};
use cmpcc::cdt::{self, ORACLE_ARITY_CAP};
use cmpcc::fmatrix::{self, generate};
use cmpcc::rectpart::{self, CellRegion, ORACLE_CELL_CAP};
use cmpcc::{ceil_log2, ComparisonTree, FunctionMatrix, Generator, Protocol, TruthTable};

use crate::error::{CliError, ErrorKind};
use crate::format::{self, Document, TilingDoc};
use crate::render;

/// Largest arity for which `count` prints the per-block formula table.
pub const COUNT_FORMULA_CAP: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Report {
    fn ok(text: String) -> Self {
        Self {
            text,
            failure: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    Tree,
    TrivialTree,
    Tiling,
    Protocol,
    TrivialProtocol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleTarget {
    DtreeDepth,
    MinPartition,
    ChiGeom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::new(
            ErrorKind::Io,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    format::parse_document(&text)
        .map_err(|e| CliError::new(ErrorKind::Parse, format!("{}: {e}", path.display())))
}

/// Writes `text` to `output`, or returns it for stdout when there is none.
pub fn emit(text: String, output: Option<&Path>) -> Result<String, CliError> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| {
                CliError::new(
                    ErrorKind::Io,
                    format!("cannot write {}: {e}", path.display()),
                )
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn wrong_input(command: &str, expected: &str, doc: &Document) -> CliError {
    CliError::usage(format!(
        "{command} expects {expected}, got a {}",
        doc.kind()
    ))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    if v.is_empty() {
        "none".to_string()
    } else {
        v.join(" ")
    }
}

fn bit(b: bool) -> u8 {
    b as u8
}

/// `2⌈log₂(2χ)⌉`, the cost of the protocol compiled from a minimum tiling.
pub fn protocol_upper_bound(chi: usize) -> u32 {
    2 * ceil_log2(2 * chi as u64)
}

pub fn analyze(doc: &Document) -> Result<String, CliError> {
    let mut out = String::new();
    writeln!(out, "kind: {}", doc.kind()).unwrap();
    match doc {
        Document::Table(tt) => {
            let blocks = boolfn::blocks(tt);
            writeln!(out, "n: {}", tt.arity()).unwrap();
            writeln!(out, "mu: {}", blocks.count()).unwrap();
            writeln!(out, "dcomp: {}", boolfn::dcomp(tt)).unwrap();
            writeln!(out, "first_value: {}", bit(blocks.first_value())).unwrap();
            writeln!(out, "boundaries: {}", join(blocks.boundaries())).unwrap();
        }
        Document::Matrix(m) => analyze_matrix(m, &mut out)?,
        Document::Tree(t) => {
            writeln!(out, "n: {}", t.arity()).unwrap();
            writeln!(out, "depth: {}", t.depth()).unwrap();
            writeln!(out, "leaves: {}", t.leaf_count()).unwrap();
        }
        Document::Protocol(p) => {
            writeln!(out, "n: {}", p.arity()).unwrap();
            writeln!(out, "cost: {}", p.cost()).unwrap();
            writeln!(out, "leaves: {}", p.leaf_count()).unwrap();
            writeln!(out, "vertices: {}", p.vertex_count()).unwrap();
        }
        Document::Tiling(t) => {
            writeln!(out, "rows: {}", t.rows).unwrap();
            writeln!(out, "cols: {}", t.cols).unwrap();
            writeln!(out, "tiles: {}", t.tiling.len()).unwrap();
            writeln!(
                out,
                "row_strips: {}",
                t.tiling.row_lines().len().saturating_sub(1)
            )
            .unwrap();
            writeln!(
                out,
                "col_strips: {}",
                t.tiling.col_lines().len().saturating_sub(1)
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn analyze_matrix(m: &FunctionMatrix, out: &mut String) -> Result<(), CliError> {
    match m.arity() {
        Some(n) => writeln!(out, "n: {n}").unwrap(),
        None => writeln!(out, "grid: {}x{}", m.cols(), m.rows()).unwrap(),
    }
    let tiling = rectpart::chi_geom_tiling(m)?;
    let chi = tiling.len();
    let ones = tiling.tiles.iter().filter(|t| t.color).count();
    writeln!(out, "chi_geom: {chi}").unwrap();
    writeln!(out, "chi_geom_zero: {}", chi - ones).unwrap();
    writeln!(out, "chi_geom_one: {ones}").unwrap();
    writeln!(out, "log2_chi_geom: {:.6}", (chi as f64).log2()).unwrap();
    writeln!(out, "ceil_log2_chi_geom: {}", ceil_log2(chi as u64)).unwrap();
    writeln!(out, "rank: {}", fmatrix::rank(m)).unwrap();
    writeln!(out, "row_strips: {}", tiling.row_lines().len() - 1).unwrap();
    writeln!(out, "col_strips: {}", tiling.col_lines().len() - 1).unwrap();
    if m.arity().is_some() {
        writeln!(out, "protocol_cost_lower_bound: {}", ceil_log2(chi as u64)).unwrap();
        writeln!(
            out,
            "protocol_cost_upper_bound: {}",
            protocol_upper_bound(chi)
        )
        .unwrap();
    }
    Ok(())
}

fn table_input(doc: Document, command: &str) -> Result<TruthTable, CliError> {
    match doc {
        Document::Table(t) => Ok(t),
        other => Err(wrong_input(command, "a truth table", &other)),
    }
}

fn matrix_input(doc: Document, command: &str) -> Result<FunctionMatrix, CliError> {
    match doc {
        Document::Matrix(m) => Ok(m),
        other => Err(wrong_input(command, "a matrix", &other)),
    }
}

fn require_function_matrix(m: &FunctionMatrix) -> Result<u32, CliError> {
    m.arity().ok_or_else(|| {
        CliError::from(cmpcc::Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    })
}

/// Canonical serialization of the requested artifact.
pub fn build(kind: BuildKind, doc: Document) -> Result<String, CliError> {
    Ok(match kind {
        BuildKind::Tree => format::write_tree(&cdt::build_tree(&table_input(doc, "build tree")?)),
        BuildKind::TrivialTree => {
            format::write_tree(&cdt::trivial_tree(&table_input(doc, "build trivial-tree")?))
        }
        BuildKind::Tiling => {
            let m = matrix_input(doc, "build tiling")?;
            format::write_tiling(&TilingDoc {
                rows: m.rows(),
                cols: m.cols(),
                tiling: rectpart::chi_geom_tiling(&m)?,
            })
        }
        BuildKind::Protocol => {
            let m = matrix_input(doc, "build protocol")?;
            require_function_matrix(&m)?;
            let t = rectpart::chi_geom_tiling(&m)?;
            format::write_protocol(&ccp::protocol_from_tiling(&m, &t)?)
        }
        BuildKind::TrivialProtocol => {
            let m = matrix_input(doc, "build trivial-protocol")?;
            format::write_protocol(&ccp::trivial_protocol(&m)?)
        }
    })
}

/// Exhaustively checks `artifact` against `function`.
pub fn verify(
    artifact: Document,
    function: Document,
    cap: Option<u32>,
) -> Result<Report, CliError> {
    match (artifact, function) {
        (Document::Tree(t), Document::Table(tt)) => verify_tree(&t, &tt),
        (Document::Protocol(p), Document::Matrix(m)) => {
            verify_protocol(&p, &m, cap.unwrap_or(VERIFY_ARITY_CAP))
        }
        (Document::Tiling(t), Document::Matrix(m)) => verify_tiling(&t, &m),
        (a, f) => Err(CliError::usage(format!(
            "cannot verify a {} against a {}; pair tree with table, protocol or tiling with matrix",
            a.kind(),
            f.kind()
        ))),
    }
}

fn verify_tree(t: &ComparisonTree, tt: &TruthTable) -> Result<Report, CliError> {
    let check = cdt::verify_tree(t, tt)?;
    let optimal = boolfn::dcomp(tt);
    let mut out = String::new();
    writeln!(out, "kind: tree").unwrap();
    writeln!(out, "correct: {}", check.correct).unwrap();
    writeln!(out, "depth: {}", check.depth).unwrap();
    writeln!(out, "optimal_depth: {optimal}").unwrap();
    writeln!(out, "depth_at_least_optimal: {}", check.depth >= optimal).unwrap();
    writeln!(out, "optimal: {}", check.correct && check.depth == optimal).unwrap();
    let failure = check.witness.map(|y| {
        let got = t.eval(y);
        writeln!(out, "witness: y={y} tree={} f={}", bit(got), bit(tt.get(y))).unwrap();
        CliError::new(
            ErrorKind::Verify,
            format!(
                "tree outputs {} at y={y} but f(y) = {}",
                bit(got),
                bit(tt.get(y))
            ),
        )
    });
    Ok(Report { text: out, failure })
}

fn verify_protocol(p: &Protocol, m: &FunctionMatrix, cap: u32) -> Result<Report, CliError> {
    let check = ccp::verify_protocol_with_cap(p, m, cap)?;
    let chi = rectpart::chi_geom(m)?;
    let lower = ceil_log2(chi as u64);
    let upper = protocol_upper_bound(chi);
    let mut out = String::new();
    writeln!(out, "kind: protocol").unwrap();
    writeln!(out, "correct: {}", check.correct).unwrap();
    writeln!(out, "cost: {}", check.cost).unwrap();
    writeln!(out, "chi_geom: {chi}").unwrap();
    writeln!(out, "lower_bound: {lower}").unwrap();
    writeln!(out, "cost_at_least_lower_bound: {}", check.cost >= lower).unwrap();
    writeln!(out, "upper_bound: {upper}").unwrap();
    writeln!(out, "cost_within_upper_bound: {}", check.cost <= upper).unwrap();
    let mut failure = None;
    if let Some((x, y)) = check.witness {
        let got = ccp::simulate(p, x, y).output;
        let want = m.get(x as usize, y as usize);
        writeln!(
            out,
            "witness: x={x} y={y} protocol={} f={}",
            bit(got),
            bit(want)
        )
        .unwrap();
        failure = Some(CliError::from(cmpcc::Error::IncorrectProtocol {
            x,
            y,
            got,
            expected: want,
        }));
    } else if check.cost < lower {
        failure = Some(CliError::new(
            ErrorKind::Verify,
            format!(
                "correct protocol with cost {} below lower bound {lower}",
                check.cost
            ),
        ));
    }
    Ok(Report { text: out, failure })
}

fn verify_tiling(t: &TilingDoc, m: &FunctionMatrix) -> Result<Report, CliError> {
    if (t.rows, t.cols) != (m.rows(), m.cols()) {
        return Err(CliError::new(
            ErrorKind::Mismatch,
            format!(
                "tiling covers a {}x{} grid but the matrix is {}x{}",
                t.rows,
                t.cols,
                m.rows(),
                m.cols()
            ),
        ));
    }
    let check = fmatrix::verify_tiling(m, &t.tiling);
    let chi = rectpart::chi_geom(m)?;
    let mut out = String::new();
    writeln!(out, "kind: tiling").unwrap();
    writeln!(out, "valid: {}", check.is_valid()).unwrap();
    writeln!(out, "tiles: {}", t.tiling.len()).unwrap();
    writeln!(out, "chi_geom: {chi}").unwrap();
    writeln!(
        out,
        "minimum: {}",
        check.is_valid() && t.tiling.len() == chi
    )
    .unwrap();
    let failure = check.failure.map(|f| {
        writeln!(out, "failure: {f}").unwrap();
        CliError::from(cmpcc::Error::InvalidTiling(f))
    });
    Ok(Report { text: out, failure })
}

fn agreement(out: &mut String, oracle: usize, fast: usize, what: &str) -> Option<CliError> {
    writeln!(out, "oracle: {oracle}").unwrap();
    writeln!(out, "fast: {fast}").unwrap();
    writeln!(out, "agree: {}", oracle == fast).unwrap();
    (oracle != fast).then(|| {
        CliError::new(
            ErrorKind::Verify,
            format!("{what}: oracle gives {oracle}, fast path gives {fast}"),
        )
    })
}

/// Runs a brute-force oracle and compares it with the fast algorithm.
pub fn oracle(target: OracleTarget, doc: Document, cap: Option<usize>) -> Result<Report, CliError> {
    let mut out = String::new();
    let failure = match target {
        OracleTarget::DtreeDepth => {
            let tt = table_input(doc, "oracle dtree-depth")?;
            let cap = cap.map_or(ORACLE_ARITY_CAP, |c| c.min(u32::MAX as usize) as u32);
            let depth = cdt::min_depth_oracle_with_cap(&tt, cap)?;
            writeln!(out, "target: dtree-depth").unwrap();
            agreement(
                &mut out,
                depth as usize,
                boolfn::dcomp(&tt) as usize,
                "dtree-depth",
            )
        }
        OracleTarget::MinPartition => {
            let m = matrix_input(doc, "oracle min-partition")?;
            let region = CellRegion::from_color(&m, true);
            let exact =
                rectpart::min_partition_oracle_with_cap(&region, cap.unwrap_or(ORACLE_CELL_CAP))?;
            let fast = rectpart::min_partition(&region)?.len();
            writeln!(out, "target: min-partition").unwrap();
            writeln!(out, "cells: {}", region.cell_count()).unwrap();
            agreement(&mut out, exact, fast, "min-partition")
        }
        OracleTarget::ChiGeom => {
            let m = matrix_input(doc, "oracle chi-geom")?;
            let cap = cap.unwrap_or(ORACLE_CELL_CAP);
            let mut exact = 0;
            for color in [false, true] {
                let region = CellRegion::from_color(&m, color);
                exact += rectpart::min_partition_oracle_with_cap(&region, cap)?;
            }
            writeln!(out, "target: chi-geom").unwrap();
            agreement(&mut out, exact, rectpart::chi_geom(&m)?, "chi-geom")
        }
    };
    Ok(Report { text: out, failure })
}

/// Closed-form counts by block number, checked against enumeration when
/// `n` is within the enumeration cap.
pub fn count(n: u32, cap: Option<u32>) -> Result<Report, CliError> {
    if n == 0 {
        return Err(CliError::new(
            ErrorKind::Invalid,
            "arity must be at least 1",
        ));
    }
    if n > COUNT_FORMULA_CAP {
        return Err(CliError::from(cmpcc::Error::CapExceeded {
            what: "count arity",
            value: n as usize,
            cap: COUNT_FORMULA_CAP as usize,
        }));
    }
    let size = 1u64 << n;
    let mut out = String::new();
    writeln!(out, "n: {n}").unwrap();
    writeln!(out, "mu count").unwrap();
    let mut formula = Vec::with_capacity(size as usize);
    for k in 1..=size {
        let c = boolfn::count_by_mu(n, k)?;
        writeln!(out, "{k} {c}").unwrap();
        formula.push(c);
    }
    let max = boolfn::count_max_complexity(n)?;
    writeln!(out, "max_complexity: {max}").unwrap();
    let cap = cap.unwrap_or(ENUMERATION_CAP);
    if n > cap {
        writeln!(out, "enumeration: skipped (n > cap {cap})").unwrap();
        return Ok(Report::ok(out));
    }
    let hist = boolfn::enumerate_histogram_with_cap(n, cap)?;
    let shown = hist.iter().map(|(k, c)| format!("{k}:{c}"));
    writeln!(out, "enumeration: {}", join(shown)).unwrap();
    let by_k_agree = (1..=size).all(|k| {
        let seen = hist.get(&k).copied().unwrap_or(0);
        formula[k as usize - 1] == seen.into()
    });
    let max_seen: u64 = hist.range(size / 2 + 1..).map(|(_, c)| c).sum();
    writeln!(out, "max_complexity_enumerated: {max_seen}").unwrap();
    let agree = by_k_agree && max == max_seen.into();
    writeln!(out, "agree: {agree}").unwrap();
    let failure = (!agree).then(|| {
        CliError::new(
            ErrorKind::Verify,
            "enumeration disagrees with the counting formulas",
        )
    });
    Ok(Report { text: out, failure })
}

/// Renders a tiling, or the minimum tiling of a matrix.
pub fn render(doc: Document, format: RenderFormat) -> Result<String, CliError> {
    let tiling = match doc {
        Document::Tiling(t) => t,
        Document::Matrix(m) => TilingDoc {
            rows: m.rows(),
            cols: m.cols(),
            tiling: rectpart::chi_geom_tiling(&m)?,
        },
        other => return Err(wrong_input("render", "a tiling or a matrix", &other)),
    };
    Ok(match format {
        RenderFormat::Ascii => render::ascii(&tiling),
        RenderFormat::Svg => render::svg(&tiling),
    })
}

/// The matrix file of a named generator.
pub fn generate_matrix(name: &str, n: u32) -> Result<String, CliError> {
    let g: Generator = name.parse()?;
    Ok(format::write_matrix(&generate(g, n)?))
}
