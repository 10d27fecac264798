//! `credal` — uncertain-evidence updating for discrete Bayesian networks.
//!
//! Results go to stdout, diagnostics and timing to stderr. Exit codes:
//! 0 success, 2 unreadable or malformed input, 3 validation or precondition
//! failure, 4 inconsistent evidence, 5 resource cap exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use credal::credal::hardness::gen_hard_instance;
use credal::credal::MethodChoice;
use credal::error::Error;
use credal::evidence::{cse_to_cve, cve_to_cse, se_to_ve, ve_to_se, Evidence};
use credal::io::{
    emit_result, network_to_document, parse_evidence, parse_network, run_query, sig12,
    EvidenceItem, OutputFormat, ParsedNetwork, QueryRequest,
};
use credal::model::{CredalSet, Pmf, Variable};
use credal::pooling::{credal_logop_bounds, logop};

#[derive(Parser)]
#[command(
    name = "credal",
    version,
    about = "Absorb uncertain evidence into discrete Bayesian networks and bound posteriors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Posterior bounds for one variable under a mix of evidence.
    Query(QueryArgs),
    /// Like query, but forces exhaustive vertex enumeration.
    Oracle(OracleArgs),
    /// Rewrite one evidence item into an equivalent kind.
    Convert(ConvertArgs),
    /// Collapse an opinion pool into the single item it pools to.
    Pool(PoolArgs),
    /// Generate a calibrated stress-test network.
    GenHard(GenHardArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// Network document (JSON).
    #[arg(long)]
    net: PathBuf,
    /// Evidence document (JSON); may be omitted for a prior marginal.
    #[arg(long)]
    evidence: Option<PathBuf>,
    /// Query variable.
    #[arg(long)]
    target: String,
    /// Updating engine.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Seed for the randomized engine.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct OracleArgs {
    /// Network document (JSON).
    #[arg(long)]
    net: PathBuf,
    /// Evidence document (JSON); may be omitted for a prior marginal.
    #[arg(long)]
    evidence: Option<PathBuf>,
    /// Query variable.
    #[arg(long)]
    target: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct ConvertArgs {
    /// Network document (JSON); conversions are relative to its marginals.
    #[arg(long)]
    net: PathBuf,
    /// Evidence document (JSON) holding exactly one item.
    #[arg(long)]
    evidence: PathBuf,
    /// Target kind.
    #[arg(long, value_enum)]
    to: ConvertTarget,
}

#[derive(Args)]
struct PoolArgs {
    /// Network document (JSON), used to resolve the variable and its states.
    #[arg(long)]
    net: PathBuf,
    /// Evidence document (JSON) holding exactly one opinion-pool item.
    #[arg(long)]
    evidence: PathBuf,
}

#[derive(Args)]
struct GenHardArgs {
    /// Size parameter; the instance has 2k+1 nodes.
    k: usize,
    /// Seed for the generated tables.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Oracle,
    #[value(name = "two_u")]
    TwoU,
    Approxlp,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> MethodChoice {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Oracle => MethodChoice::Oracle,
            MethodArg::TwoU => MethodChoice::TwoU,
            MethodArg::Approxlp => MethodChoice::Approxlp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Table => OutputFormat::Table,
        }
    }
}

/// What an evidence item can be rewritten into.
#[derive(Clone, Copy, ValueEnum)]
enum ConvertTarget {
    /// Soft → virtual: the likelihood vector inducing the revised marginal.
    Ve,
    /// Virtual → soft: the revised marginal the likelihoods induce.
    Se,
    /// Credal-soft → credal-virtual: a likelihood box covering the set.
    Cve,
    /// Credal-virtual → credal-soft: the hull of revised marginals.
    Cse,
    /// Credal-soft → its interval hull, as a credal-soft item.
    Shadow,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(args) => query(&args),
        Command::Oracle(args) => oracle(&args),
        Command::Convert(args) => convert(&args),
        Command::Pool(args) => pool(&args),
        Command::GenHard(args) => gen_hard(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Validation(_)
        | Error::InvalidEvidence(_)
        | Error::Infeasible(_)
        | Error::Precondition(_)
        | Error::DegeneratePool(_) => 3,
        Error::InconsistentEvidence(_) => 4,
        Error::ResourceCap(_) => 5,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn query(args: &QueryArgs) -> Result<(), Error> {
    run(
        &args.net,
        args.evidence.as_deref(),
        &args.target,
        args.method.into(),
        args.seed,
        args.format.into(),
    )
}

fn oracle(args: &OracleArgs) -> Result<(), Error> {
    run(
        &args.net,
        args.evidence.as_deref(),
        &args.target,
        MethodChoice::Oracle,
        0,
        args.format.into(),
    )
}

fn run(
    net: &Path,
    evidence: Option<&Path>,
    target: &str,
    method: MethodChoice,
    seed: u64,
    format: OutputFormat,
) -> Result<(), Error> {
    let network = read(net)?;
    let evidence_text = evidence.map(read).transpose()?;
    let doc = run_query(&QueryRequest {
        network: &network,
        evidence: evidence_text.as_deref(),
        target,
        method,
        seed,
    })?;
    if let Some(ms) = doc.wall_time_ms {
        eprintln!("wall time: {ms:.1} ms");
    }
    write_stdout(&emit_result(&doc, format));
    Ok(())
}

fn convert(args: &ConvertArgs) -> Result<(), Error> {
    let network = read(&args.net)?;
    let parsed = parse_network(&network)?;
    let items = parse_evidence(&read(&args.evidence)?, parsed.as_credal())?;
    let [item] = items.as_slice() else {
        return Err(Error::InvalidEvidence(format!(
            "convert expects exactly one evidence item, found {}",
            items.len()
        )));
    };
    let ParsedNetwork::Sharp(bn) = &parsed else {
        return Err(Error::Precondition(
            "conversions revise a sharp network's marginals; the network is credal".into(),
        ));
    };
    let var = |name: &str| {
        let i = bn.as_credal().node(name).expect("evidence already resolved");
        bn.as_credal().variable(i)
    };

    let out = match (item, args.to) {
        (Evidence::Soft(se), ConvertTarget::Ve) => {
            let ve = se_to_ve(bn, se)?;
            EvidenceItem::Virtual {
                variable: ve.variable.clone(),
                likelihoods: state_map(var(&ve.variable), &ve.likelihoods),
            }
        }
        (Evidence::Virtual(ve), ConvertTarget::Se) => {
            let se = ve_to_se(bn, ve)?;
            EvidenceItem::Soft {
                variable: se.variable.clone(),
                pmf: state_map(var(&se.variable), &se.pmf.0),
            }
        }
        (Evidence::CredalSoft(cse), ConvertTarget::Cve) => {
            let cve = cse_to_cve(bn, cse)?;
            EvidenceItem::CredalVirtual {
                variable: cve.variable.clone(),
                lower: state_map(var(&cve.variable), &cve.lower),
                upper: state_map(var(&cve.variable), &cve.upper),
            }
        }
        (Evidence::CredalVirtual(cve), ConvertTarget::Cse) => {
            let hull = cve_to_cse(bn, cve)?;
            credal_soft_item(var(&cve.variable), &hull.to_vertices()?)
        }
        (Evidence::CredalSoft(cse), ConvertTarget::Shadow) => {
            credal_soft_item(var(&cse.variable), &cse.cs.shadow().to_vertices()?)
        }
        (other, _) => {
            return Err(Error::InvalidEvidence(format!(
                "{}: this item kind has no such conversion",
                other.variable()
            )))
        }
    };
    print_json(&out)
}

fn pool(args: &PoolArgs) -> Result<(), Error> {
    let network = read(&args.net)?;
    let parsed = parse_network(&network)?;
    let net = parsed.as_credal();
    let items = parse_evidence(&read(&args.evidence)?, net)?;
    let [Evidence::Pool(pool)] = items.as_slice() else {
        return Err(Error::InvalidEvidence(
            "pool expects exactly one opinion-pool item".into(),
        ));
    };
    let variable = net.variable(net.node(&pool.variable).expect("resolved by parse"));
    let out = if pool.is_credal() {
        credal_soft_item(variable, &credal_logop_bounds(pool)?.to_vertices()?)
    } else {
        EvidenceItem::Soft {
            variable: pool.variable.clone(),
            pmf: state_map(variable, &logop(pool)?.0),
        }
    };
    print_json(&out)
}

fn gen_hard(args: &GenHardArgs) -> Result<(), Error> {
    let net = gen_hard_instance(args.k, None, args.seed)?;
    let doc = network_to_document(&net);
    print_json(&doc)
}

fn state_map(var: &Variable, values: &[f64]) -> BTreeMap<String, f64> {
    var.states
        .iter()
        .zip(values)
        .map(|(s, &v)| (s.clone(), sig12(v)))
        .collect()
}

fn credal_soft_item(var: &Variable, set: &CredalSet) -> EvidenceItem {
    EvidenceItem::CredalSoft {
        variable: var.name.clone(),
        vertices: set
            .vertices()
            .iter()
            .map(|p: &Pmf| state_map(var, &p.0))
            .collect(),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("document serializes");
    text.push('\n');
    write_stdout(&text);
    Ok(())
}

/// Writes to stdout, exiting quietly if the consumer closed the pipe
/// (e.g. `credal gen-hard 6 | head`).
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}
