//! `mml`: batch front end for parsing, cleaning, querying and comparing
//! parallel-markup MathML.
//!
//! Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 for domain errors (unparsable input, missing branch, failed conversion,
//! invalid gold data) and 2 for usage errors (bad flags, unreadable files).

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mathml_tools::convert::{ConvertError, Registry};
use mathml_tools::gold::{load_gold, validate_entry};
use mathml_tools::mathml::Scope;
use mathml_tools::query::{library_get, PathLibrary, PathQuery};
use mathml_tools::similarity::{
    cosine_similarity, document_distance, emd, hist_distance_absolute, hist_distance_relative, histogram,
    tree_edit_distance_with, CostConfig, DocumentMeasure, GroundDistance, Histogram, LabelMode, SimilarityError,
};
use mathml_tools::{Branch, CleanFeature, MathDoc, MathNode, ParseMode, ParseReport, SerializeOptions};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<mathml_tools::Error> for CliError {
    fn from(e: mathml_tools::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SimilarityError> for CliError {
    fn from(e: SimilarityError) -> Self {
        match e {
            SimilarityError::InvalidCost(_) | SimilarityError::InvalidGround(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ConvertError> for CliError {
    fn from(e: ConvertError) -> Self {
        match e {
            ConvertError::InvalidSpec(_) | ConvertError::DuplicateName(_) | ConvertError::UnknownConverter(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Domain(format!("write failed: {e}"))
    }
}

#[derive(Parser)]
#[command(name = "mml", version, about = "Parse, clean, query and compare parallel-markup MathML")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ModeArgs {
    /// Repair a missing namespace, named entities and MathML prefixes
    #[arg(long, conflicts_with = "strict")]
    lenient: bool,
    /// Reject anything that would need a repair (default)
    #[arg(long)]
    strict: bool,
}

impl ModeArgs {
    fn mode(self) -> ParseMode {
        if self.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        }
    }
}

#[derive(Args, Clone, Copy)]
struct HistArgs {
    #[arg(long, value_enum, default_value = "whole")]
    scope: ScopeArg,
    /// Also count math, semantics and annotation elements
    #[arg(long)]
    include_structural: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Presentation,
    Content,
    Whole,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Presentation => Scope::Presentation,
            ScopeArg::Content => Scope::Content,
            ScopeArg::Whole => Scope::Whole,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Presentation,
    Content,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    HistAbs,
    HistRel,
    Ted,
    Emd,
    Cosine,
}

#[derive(Clone, Copy, ValueEnum)]
enum DocMeasure {
    Emd,
    Cosine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Labels {
    /// Element names
    Name,
    /// Element names plus leaf text
    NameAndText,
}

#[derive(Subcommand)]
enum Command {
    /// Parse one document and print its serialization
    Parse {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        pretty: bool,
        input: String,
    },
    /// Remove cross-references, a branch, or annotations
    Clean {
        #[command(flatten)]
        mode: ModeArgs,
        /// Comma-separated: cross-references, content-branch, presentation-branch, annotations
        #[arg(long, value_delimiter = ',', required = true)]
        features: Vec<String>,
        #[arg(long)]
        pretty: bool,
        input: String,
    },
    /// Print one branch as a standalone document
    Split {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, value_enum)]
        branch: BranchArg,
        #[arg(long)]
        pretty: bool,
        input: String,
    },
    /// List identifiers as kind, text and node index
    Extract {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, value_enum, default_value = "whole")]
        scope: ScopeArg,
        input: String,
    },
    /// Print the subtrees matched by a path expression, one per line
    Select {
        #[command(flatten)]
        mode: ModeArgs,
        /// Path expression, e.g. "//mi | //ci"
        #[arg(long, conflicts_with_all = ["lib", "list"])]
        expr: Option<String>,
        /// Name of a shipped library expression
        #[arg(long, conflicts_with = "list")]
        lib: Option<String>,
        /// Print the shipped library as TSV
        #[arg(long)]
        list: bool,
        #[arg(required_unless_present = "list")]
        input: Option<String>,
    },
    /// Element-name histogram, summed over all inputs
    Histogram {
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        hist: HistArgs,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Distance or similarity between two formulas
    Dist {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, value_enum)]
        measure: Measure,
        #[command(flatten)]
        hist: HistArgs,
        /// Tree edit costs as insert,delete,rename
        #[arg(long, default_value = "1,1,1")]
        costs: String,
        /// What tree edit distance compares
        #[arg(long, value_enum, default_value = "name")]
        labels: Labels,
        a: String,
        b: String,
    },
    /// EMD or cosine between two documents given as formula lists
    DocDist {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, value_enum)]
        measure: DocMeasure,
        #[command(flatten)]
        hist: HistArgs,
        #[arg(long, required = true, num_args = 1..)]
        left: Vec<String>,
        #[arg(long, required = true, num_args = 1..)]
        right: Vec<String>,
    },
    /// Convert TeX with an external tool
    Convert {
        /// Converter spec file (JSON); the built-in stubs are used without it
        #[arg(long)]
        converters: Option<String>,
        #[arg(long, required_unless_present = "list")]
        tool: Option<String>,
        /// Print the registered converter names
        #[arg(long)]
        list: bool,
        #[arg(long)]
        pretty: bool,
        /// File holding the TeX source
        #[arg(required_unless_present = "list")]
        input: Option<String>,
    },
    /// Check every entry of a gold file
    GoldValidate {
        #[arg(long)]
        gold: String,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?
    };
    String::from_utf8(bytes).map_err(|_| CliError::Domain(format!("{path}: input is not UTF-8")))
}

fn check_inputs<'a>(paths: impl IntoIterator<Item = &'a String>) -> Result<(), CliError> {
    let stdin_uses = paths.into_iter().filter(|p| *p == "-").count();
    if stdin_uses > 1 {
        return Err(CliError::Usage("standard input can be named only once".into()));
    }
    Ok(())
}

fn report_diagnostics(path: &str, report: &ParseReport) {
    for r in &report.repairs {
        eprintln!("{path}: repaired {} at byte {}", r.kind, r.offset);
    }
    for (_, target) in &report.dangling_xrefs {
        eprintln!("{path}: dangling xref {target}");
    }
}

fn load(path: &str, mode: ModeArgs) -> Result<MathDoc, CliError> {
    let text = read_input(path)?;
    let (doc, report) = MathDoc::parse(&text, mode.mode()).map_err(|e| CliError::Domain(format!("{path}: {e}")))?;
    report_diagnostics(path, &report);
    Ok(doc)
}

fn serialized(doc: &MathDoc, pretty: bool) -> String {
    let opts = if pretty { SerializeOptions::pretty() } else { SerializeOptions::default() };
    let mut s = doc.serialize(opts);
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Rounds to 10 significant digits; integral values keep a `.0`.
fn number(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{:?}", x.abs());
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
    format!("{rounded:?}")
}

fn parse_costs(text: &str) -> Result<CostConfig, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--costs expects three numbers, got {text:?}")))?;
    match parts.as_slice() {
        &[ins, del, ren] => Ok(CostConfig::new(ins, del, ren)?),
        _ => Err(CliError::Usage(format!("--costs expects insert,delete,rename, got {text:?}"))),
    }
}

fn scope_tree(doc: &MathDoc, scope: Scope) -> Result<MathNode, CliError> {
    Ok(match scope {
        Scope::Whole => doc.to_tree(),
        Scope::Presentation => doc.split(Branch::Presentation)?.to_tree(),
        Scope::Content => doc.split(Branch::Content)?.to_tree(),
    })
}

fn run(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Parse { mode, pretty, input } => {
            let doc = load(&input, mode)?;
            out.write_all(serialized(&doc, pretty).as_bytes())?;
        }
        Command::Clean {
            mode,
            features,
            pretty,
            input,
        } => {
            let features = features
                .iter()
                .map(|f| f.parse::<CleanFeature>().map_err(|e| CliError::Usage(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let doc = load(&input, mode)?;
            out.write_all(serialized(&doc.clean(features)?, pretty).as_bytes())?;
        }
        Command::Split {
            mode,
            branch,
            pretty,
            input,
        } => {
            let branch = match branch {
                BranchArg::Presentation => Branch::Presentation,
                BranchArg::Content => Branch::Content,
            };
            let doc = load(&input, mode)?;
            out.write_all(serialized(&doc.split(branch)?, pretty).as_bytes())?;
        }
        Command::Extract { mode, scope, input } => {
            let doc = load(&input, mode)?;
            for ident in doc.extract_identifiers(scope.into())? {
                writeln!(out, "{}\t{}\t{}", ident.kind.as_str(), ident.text, ident.node.index())?;
            }
        }
        Command::Select {
            mode,
            expr,
            lib,
            list,
            input,
        } => {
            if list {
                out.write_all(PathLibrary::builtin().to_tsv().as_bytes())?;
                return Ok(());
            }
            let query = match (expr, lib) {
                (Some(e), None) => PathQuery::parse(&e).map_err(|e| CliError::Usage(e.to_string()))?,
                (None, Some(name)) => library_get(&name).map_err(|e| CliError::Usage(e.to_string()))?.clone(),
                _ => return Err(CliError::Usage("select needs --expr or --lib".into())),
            };
            let doc = load(input.as_deref().expect("clap requires an input"), mode)?;
            for id in query.select(&doc) {
                writeln!(out, "{}", doc.serialize_subtree(id, SerializeOptions::default()))?;
            }
        }
        Command::Histogram { mode, hist, inputs } => {
            check_inputs(&inputs)?;
            let mut acc = Histogram::new();
            for input in &inputs {
                let doc = load(input, mode)?;
                acc.merge(&histogram(&doc, hist.scope.into(), hist.include_structural)?);
            }
            out.write_all(acc.to_text().as_bytes())?;
        }
        Command::Dist {
            mode,
            measure,
            hist,
            costs,
            labels,
            a,
            b,
        } => {
            check_inputs([&a, &b])?;
            let costs = parse_costs(&costs)?;
            let (da, db) = (load(&a, mode)?, load(&b, mode)?);
            let scope = Scope::from(hist.scope);
            let value = if let Measure::Ted = measure {
                let labels = match labels {
                    Labels::Name => LabelMode::Name,
                    Labels::NameAndText => LabelMode::NameAndLeafText,
                };
                tree_edit_distance_with(&scope_tree(&da, scope)?, &scope_tree(&db, scope)?, &costs, labels)
            } else {
                let ha = histogram(&da, scope, hist.include_structural)?;
                let hb = histogram(&db, scope, hist.include_structural)?;
                match measure {
                    Measure::HistAbs => hist_distance_absolute(&ha, &hb),
                    Measure::HistRel => hist_distance_relative(&ha, &hb),
                    Measure::Emd => emd(&ha, &hb, &GroundDistance::discrete())?,
                    Measure::Cosine => cosine_similarity(&ha, &hb)?,
                    Measure::Ted => unreachable!(),
                }
            };
            writeln!(out, "{}", number(value))?;
        }
        Command::DocDist {
            mode,
            measure,
            hist,
            left,
            right,
        } => {
            check_inputs(left.iter().chain(&right))?;
            let load_all = |paths: &[String]| paths.iter().map(|p| load(p, mode)).collect::<Result<Vec<_>, _>>();
            let (l, r) = (load_all(&left)?, load_all(&right)?);
            let measure = match measure {
                DocMeasure::Emd => DocumentMeasure::Emd(GroundDistance::discrete()),
                DocMeasure::Cosine => DocumentMeasure::Cosine,
            };
            let value = document_distance(&l, &r, &measure, hist.scope.into(), hist.include_structural)?;
            writeln!(out, "{}", number(value))?;
        }
        Command::Convert {
            converters,
            tool,
            list,
            pretty,
            input,
        } => {
            let registry = match converters {
                Some(path) => Registry::from_json(&read_input(&path)?)?,
                None => Registry::with_stubs(),
            };
            if list {
                for name in registry.list() {
                    writeln!(out, "{name}")?;
                }
                return Ok(());
            }
            let tool = tool.expect("clap requires --tool");
            let input = input.expect("clap requires an input");
            registry.get(&tool)?;
            let tex = read_input(&input)?;
            let result = registry.convert(&tool, tex.trim_end())?;
            report_diagnostics(&tool, &result.report);
            out.write_all(serialized(&result.mathml, pretty).as_bytes())?;
        }
        Command::GoldValidate { gold } => {
            let entries = load_gold(&read_input(&gold)?).map_err(|e| CliError::Domain(format!("{gold}: {e}")))?;
            let mut failing = 0;
            for entry in &entries {
                let findings = validate_entry(entry);
                if findings.is_empty() {
                    writeln!(out, "{}\tok", entry.id)?;
                }
                for f in &findings {
                    writeln!(out, "{}\t{f}", entry.id)?;
                }
                failing += usize::from(!findings.is_empty());
            }
            if failing > 0 {
                return Err(CliError::Domain(format!(
                    "{gold}: {failing} of {} entries have findings",
                    entries.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mml: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
