//! The `collapse` command line: class tables, class analysis, Nichols
//! dimensions and type-D witnesses, as JSON or text.

pub mod config;
pub mod inputs;
mod render;

use std::time::Instant;

use collapse_core::braiding::BraidedSpace;
use collapse_core::criteria::{
    analyze_group, is_quasireal, is_real, is_type_d_class, GroupReport, TypeDWitness,
};
use collapse_core::nichols::{
    hilbert_prefix_with, symmetrizer_dump, GradedDims, MatrixDump, RankMethod,
};
use collapse_core::permcore::{ClassTable, PermutationGroup};
use collapse_core::Error;
use serde::Serialize;

pub use config::{Caps, Format, RunConfig, Toggle};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// An error with the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GroupTooLarge { .. }
            | Error::RackTooLarge { .. }
            | Error::MatrixTooLarge { .. } => EXIT_CAP,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command produced: the machine document, its text projection, and
/// the exit code to finish with.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    /// Short human summary, printed to standard output when the document goes to a file.
    pub summary: String,
    pub code: i32,
}

impl Output {
    fn new<T: Serialize>(doc: &T, text: String, summary: String) -> Result<Output, CliError> {
        let json = serde_json::to_value(doc).map_err(|e| CliError::internal(e.to_string()))?;
        Ok(Output {
            json,
            text,
            summary,
            code: 0,
        })
    }

    /// The document in the requested format, newline-terminated.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

fn group_of(config: &RunConfig) -> Result<(PermutationGroup, String), CliError> {
    let source = config
        .group
        .as_deref()
        .ok_or_else(|| CliError::input("--group is required"))?;
    inputs::load_group(source, config.caps.order)
}

#[derive(Serialize)]
pub struct ClassRow {
    pub name: String,
    pub size: usize,
    pub element_order: u64,
    pub representative: String,
    pub real: bool,
    pub quasireal_exponents: Vec<u64>,
    pub inverse_class: String,
}

#[derive(Serialize)]
struct ClassesDoc {
    schema_version: &'static str,
    tool_version: &'static str,
    group: String,
    order: usize,
    classes: Vec<ClassRow>,
}

pub fn cmd_classes(config: &RunConfig) -> Result<Output, CliError> {
    let (g, name) = group_of(config)?;
    let table = ClassTable::new(&g);
    let classes: Vec<ClassRow> = table
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRow {
            name: c.name.clone(),
            size: c.size(),
            element_order: c.element_order,
            representative: c.representative.to_string(),
            real: is_real(c),
            quasireal_exponents: is_quasireal(c),
            inverse_class: table.get(table.inverse_class(&g, i)).name.clone(),
        })
        .collect();
    let text = render::classes(&name, g.order(), &classes);
    let summary = format!("{name}: order {}, {} classes\n", g.order(), classes.len());
    let doc = ClassesDoc {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        group: name,
        order: g.order(),
        classes,
    };
    Output::new(&doc, text, summary)
}

#[derive(Serialize)]
pub struct Timing {
    pub load_ms: u128,
    pub analyze_ms: u128,
}

/// The analysis document. Field order is part of the format.
#[derive(Serialize)]
pub struct AnalyzeDoc {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub group: collapse_core::criteria::GroupInfo,
    pub caps: Caps,
    pub probe_hilbert: bool,
    pub classes: Vec<collapse_core::criteria::ClassReport>,
    pub summary: collapse_core::criteria::Summary,
    pub caveats: Vec<String>,
    /// Wall times; only with `--timing`, since they break byte determinism.
    pub timing: Option<Timing>,
}

pub fn cmd_analyze(config: &RunConfig) -> Result<Output, CliError> {
    let start = Instant::now();
    let (g, name) = group_of(config)?;
    let loaded = Instant::now();
    let report: GroupReport = analyze_group(&g, &name, &config.analyze_options())?;
    let done = Instant::now();
    let invalid: Vec<&str> = report
        .classes
        .iter()
        .filter(|c| c.cocycles_validated == Some(false))
        .map(|c| c.name.as_str())
        .collect();
    let code = if invalid.is_empty() { 0 } else { EXIT_INTERNAL };
    let mut summary = render::analyze_summary(&report);
    if !invalid.is_empty() {
        summary.push_str(&format!(
            "cocycle validation failed for: {}\n",
            invalid.join(", ")
        ));
    }
    let text = render::analyze(&report);
    let doc = AnalyzeDoc {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        group: report.group,
        caps: config.caps,
        probe_hilbert: config.probe_hilbert,
        classes: report.classes,
        summary: report.summary,
        caveats: report.caveats,
        timing: config.timing.then(|| Timing {
            load_ms: (loaded - start).as_millis(),
            analyze_ms: (done - loaded).as_millis(),
        }),
    };
    let mut out = Output::new(&doc, text, summary)?;
    out.code = code;
    Ok(out)
}

#[derive(Serialize)]
struct NicholsDoc {
    schema_version: &'static str,
    tool_version: &'static str,
    rack_size: usize,
    conductor: u64,
    series: GradedDims,
    matrix: Option<MatrixDump>,
}

pub fn cmd_nichols(
    config: &RunConfig,
    rack: &str,
    cocycle: &str,
    max_degree: Option<usize>,
    dump_matrix: Option<usize>,
) -> Result<Output, CliError> {
    let rack = inputs::parse_rack(rack)?;
    let q = inputs::parse_cocycle(&rack, cocycle)?;
    let space = BraidedSpace::new(q);
    let mut caps = config.caps.nichols();
    if let Some(d) = max_degree {
        if d == 0 {
            return Err(CliError::input("--max-degree must be positive"));
        }
        caps.max_degree = d;
    }
    let series = hilbert_prefix_with(&space, &caps, RankMethod::Auto)?;
    let matrix = dump_matrix
        .map(|n| symmetrizer_dump(&space, n, &config.caps.nichols()))
        .transpose()?;
    let text = render::series(&series);
    let doc = NicholsDoc {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        rack_size: space.dimension(),
        conductor: space.conductor(),
        series,
        matrix,
    };
    Output::new(&doc, text.clone(), text)
}

#[derive(Serialize)]
pub struct TypedRow {
    pub class: String,
    pub witness: Option<TypeDWitness>,
    pub complete: bool,
    pub unresolved_pairs: usize,
}

#[derive(Serialize)]
struct TypedDoc {
    schema_version: &'static str,
    tool_version: &'static str,
    group: String,
    classes: Vec<TypedRow>,
}

pub fn cmd_typed(config: &RunConfig, selector: &str) -> Result<Output, CliError> {
    let (g, name) = group_of(config)?;
    let table = ClassTable::new(&g);
    let indices: Vec<usize> = if selector.eq_ignore_ascii_case("all") {
        (0..table.len()).collect()
    } else {
        vec![table
            .by_name(selector)
            .ok_or_else(|| CliError::input(format!("{name} has no class {selector:?}")))?]
    };
    let classes = indices
        .into_iter()
        .map(|i| {
            let cls = table.get(i);
            let r = is_type_d_class(&g, cls, config.caps.subgroup)?;
            Ok(TypedRow {
                class: cls.name.clone(),
                witness: r.witness,
                complete: r.complete,
                unresolved_pairs: r.unresolved_pairs,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = render::typed(&classes);
    let doc = TypedDoc {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        group: name,
        classes,
    };
    Output::new(&doc, text.clone(), text)
}
