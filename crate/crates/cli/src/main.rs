//! `wflag`: command-line driver for Schubert calculus on weighted partial flag
//! orbifolds of type A.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wflag_core::format::{from_json, read_table, restriction_table};
use wflag_core::gkm::{chevalley_product, monk_identity_check, schubert_class, verify_gkm};
use wflag_core::repr::{
    ambient_weights, enumerate_tableaux, sl_normalize, staircase_shape, tableau_weight, total_weight,
    weight_string,
};
use wflag_core::schubert::{
    double_schubert, schubert_poly, weighted_double_schubert, weighted_schubert, Route,
    WeightedSubstitution,
};
use wflag_core::selftest::{run_all, DEFAULT_SEED};
use wflag_core::weyl::poincare_counts;
use wflag_core::{Error, Flavor, FlagConfig, GkmContext, Permutation, Polynomial, Universe, WeightData};

#[derive(Parser, Debug)]
#[command(name = "wflag", version, about = "Exact Schubert calculus on weighted partial flag orbifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    /// Rank of the ambient `GL_n`.
    #[arg(long)]
    n: usize,

    /// Flag dimensions `d_1 < … < d_r`; the full flag when omitted.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,

    /// Integer weights `w_1, …, w_n`; all zero when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,

    /// The shift `u`.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    u: i64,
}

impl ConfigArgs {
    fn config(&self) -> Result<FlagConfig, Error> {
        match &self.dims {
            Some(dims) => FlagConfig::new(self.n, dims.clone()),
            None => FlagConfig::full(self.n),
        }
    }

    fn context(&self) -> Result<(FlagConfig, WeightData), Error> {
        let config = self.config()?;
        let weights = self.weights.clone().unwrap_or_else(|| vec![0; self.n]);
        let wd = WeightData::new(&config, weights, self.u)?;
        Ok((config, wd))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Single,
    Double,
    Weighted,
    WeightedDouble,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Sum,
    Dd,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal coset representatives, their lengths and Bruhat covers.
    Cosets(ConfigArgs),
    /// Betti numbers and complex dimension.
    Betti(ConfigArgs),
    /// Staircase tableaux with torus weights and the ambient weighted projective space.
    Tableaux(ConfigArgs),
    /// Restriction tables of Schubert classes.
    Restrict {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// One-line word or reduced word; every class when omitted.
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, default_value = "straight")]
        flavor: Flavor,
    },
    /// Checks the GKM condition, on a table read from --input (or `-` for stdin)
    /// or on freshly computed classes.
    VerifyGkm {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', requires = "n")]
        dims: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "n")]
        weights: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        u: i64,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, default_value = "weighted")]
        flavor: Flavor,
    },
    /// Compares both sides of the equivariant Chevalley formula.
    Chevalley {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        sigma: Option<String>,
        /// Every pair (d, σ).
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "weighted")]
        flavor: Flavor,
    },
    /// Checks the weighted Chevalley–Monk identity in `Q[x]`.
    Monk {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        sigma: Option<String>,
        /// Every `1 <= d < n` and `σ ∈ S_n`.
        #[arg(long)]
        all: bool,
    },
    /// Single, double or weighted Schubert polynomials.
    SchubertPoly {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value_t = Kind::Single)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = RouteArg::Dd)]
        route: RouteArg,
    },
    /// Runs the acceptance suite.
    Selftest,
}

/// Failures reported to the user.
enum Failure {
    /// Bad input; exit code 2.
    Input(Error),
    /// Other I/O or decoding trouble; exit code 2.
    Io(String),
    /// A computation disagreed with its expected identity; exit code 1.
    Verification { what: String, first: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidPermutation(_) => "invalid-permutation",
        Error::InvalidConfig(_) => "invalid-config",
        Error::InvalidWeights(_) => "invalid-weights",
        Error::NotMinimalRep { .. } => "not-minimal-representative",
        Error::NotAFlagDimension { .. } => "not-a-flag-dimension",
        Error::UniverseMismatch { .. } => "universe-mismatch",
        Error::VariableOutOfRange(_) => "variable-out-of-range",
        Error::NotLinearForm(_) => "not-linear-form",
        Error::DependentGenerators => "dependent-generators",
        Error::InexactDivision { .. } => "inexact-division",
        Error::AmbientTooSmall { .. } => "ambient-too-small",
        Error::ZeroShift => "zero-shift",
        Error::ContextMismatch => "context-mismatch",
        Error::NotInSpan(_) => "not-in-span",
        Error::MissingRestriction(_) => "missing-restriction",
        Error::Parse(_) => "parse",
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification { .. } => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Input(e) => json!({"error": {"kind": error_kind(e), "message": e.to_string()}}),
            Failure::Io(m) => json!({"error": {"kind": "io", "message": m}}),
            Failure::Verification { what, first } => {
                json!({"error": {"kind": "verification-failed", "check": what, "first_failure": first}})
            }
        }
    }

    fn to_text(&self) -> String {
        match self {
            Failure::Input(e) => format!("error[{}]: {e}", error_kind(e)),
            Failure::Io(m) => format!("error[io]: {m}"),
            Failure::Verification { what, first } => {
                format!("error[verification-failed]: {what}\nfirst failure: {first}")
            }
        }
    }
}

/// A finished report plus an optional failure to signal after printing it.
struct Report {
    text: String,
    json: Value,
    failure: Option<Failure>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, failure: None }
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let (report, failure) = match outcome {
        Ok(r) => (Some((r.text, r.json)), r.failure),
        Err(f) => (None, Some(f)),
    };
    if let Some((text, json)) = report {
        let body = match cli.format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&json).expect("reports serialize") + "\n",
        };
        let written = match &cli.output {
            Some(path) => fs::write(path, body),
            None => io::stdout().lock().write_all(body.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("{}", Failure::Io(e.to_string()).to_text());
            return ExitCode::from(2);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            match cli.format {
                Format::Text => eprintln!("{}", f.to_text()),
                Format::Json => eprintln!("{}", f.to_json()),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Cosets(cfg) => cosets(cfg),
        Command::Betti(cfg) => betti(cfg),
        Command::Tableaux(cfg) => tableaux(cfg),
        Command::Restrict { cfg, sigma, flavor } => restrict(cfg, sigma.as_deref(), *flavor, cli.format),
        Command::VerifyGkm { input, n, dims, weights, u, sigma, flavor } => {
            let cfg = n.map(|n| ConfigArgs {
                n,
                dims: dims.clone(),
                weights: weights.clone(),
                u: *u,
            });
            verify(input.as_ref(), cfg.as_ref(), sigma.as_deref(), *flavor)
        }
        Command::Chevalley { cfg, d, sigma, all, flavor } => chevalley(cfg, *d, sigma.as_deref(), *all, *flavor),
        Command::Monk { cfg, d, sigma, all } => monk(cfg, *d, sigma.as_deref(), *all),
        Command::SchubertPoly { cfg, sigma, kind, route } => schubert(cfg, sigma, *kind, *route),
        Command::Selftest => selftest(cli.seed),
    }
}

fn cosets(cfg: &ConfigArgs) -> Result<Report, Failure> {
    let (config, _) = cfg.context()?;
    let ctx = GkmContext::trivial(&config);
    let system = ctx.system();
    let n = config.n();
    let mut text = format!(
        "W^P for n={n}, dims={:?}: {} representatives\n",
        config.dims(),
        system.len()
    );
    text.push_str("index  length  word  reduced\n");
    let mut reps = Vec::new();
    for (k, (sigma, &len)) in system.reps().iter().zip(system.lengths()).enumerate() {
        let reduced = reduced_string(sigma);
        text.push_str(&format!("{k}  {len}  {}  {reduced}\n", sigma.word_string(n)));
        reps.push(json!({"word": sigma.word_string(n), "length": len, "reduced": reduced}));
    }
    let covers = system.covers();
    text.push_str(&format!("covers: {}\n", covers.len()));
    let mut cover_json = Vec::new();
    for (a, b) in covers {
        let (s, t) = (&system.reps()[a], &system.reps()[b]);
        text.push_str(&format!("{} < {}\n", s.word_string(n), t.word_string(n)));
        cover_json.push(json!([s.word_string(n), t.word_string(n)]));
    }
    Ok(Report::ok(
        text,
        json!({"config": {"n": n, "dims": config.dims()}, "representatives": reps, "covers": cover_json}),
    ))
}

fn reduced_string(sigma: &Permutation) -> String {
    let word = sigma.reduced_word();
    if word.is_empty() {
        "id".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
    }
}

fn betti(cfg: &ConfigArgs) -> Result<Report, Failure> {
    let (config, _) = cfg.context()?;
    let ctx = GkmContext::trivial(&config);
    let counts = poincare_counts(ctx.system());
    let joined = counts.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    let mut text = format!("dim {}\n", counts.dim);
    for (k, c) in counts.counts.iter().enumerate() {
        text.push_str(&format!("H^{}  {c}\n", 2 * k));
    }
    text.push_str(&format!("betti {joined}\n"));
    Ok(Report::ok(
        text,
        json!({"config": {"n": config.n(), "dims": config.dims()}, "dim": counts.dim, "betti": counts.counts}),
    ))
}

fn tableaux(cfg: &ConfigArgs) -> Result<Report, Failure> {
    let (config, wd) = cfg.context()?;
    let n = config.n();
    let shape = staircase_shape(&config);
    let all = enumerate_tableaux(&shape, n);
    let mut text = format!("shape {shape}: {} tableaux\n", all.len());
    let mut rows = Vec::new();
    for y in &all {
        let exps = tableau_weight(y, n);
        let gl = weight_string(&exps);
        let sl = weight_string(&sl_normalize(&exps));
        let w = total_weight(y, &wd);
        text.push_str(&format!("{y}  {gl}  sl={sl}  w={w}\n"));
        rows.push(json!({"tableau": y, "weight": gl, "sl_weight": sl, "w": w}));
    }
    let ambient = ambient_weights(&config, &wd);
    let list = ambient.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
    text.push_str(&format!("ambient P({list})\n"));
    Ok(Report::ok(
        text,
        json!({"shape": shape.rows(), "tableaux": rows, "ambient_weights": ambient}),
    ))
}

fn restrict(cfg: &ConfigArgs, sigma: Option<&str>, flavor: Flavor, format: Format) -> Result<Report, Failure> {
    let (config, wd) = cfg.context()?;
    let ctx = GkmContext::new(&config, &wd)?;
    let sigmas = match sigma {
        Some(s) => {
            let s = parse_perm(s)?;
            config.check_min_rep(&s)?;
            vec![s]
        }
        None => ctx.reps().to_vec(),
    };
    let classes = sigmas
        .into_iter()
        .map(|s| schubert_class(&ctx, &s, flavor).map(|c| (s, c)))
        .collect::<Result<Vec<_>, _>>()?;
    let table = restriction_table(&ctx, flavor, &classes)?;
    let json_value = serde_json::to_value(&table).expect("tables serialize");
    let text = match format {
        Format::Json => String::new(),
        Format::Text => {
            let n = config.n();
            let mut text = String::new();
            for (sigma, class) in &classes {
                text.push_str(&format!("class {} ({flavor})\n", sigma.word_string(n)));
                for (tau, f) in ctx.reps().iter().zip(class.restrictions()) {
                    text.push_str(&format!("  at {}: {f}\n", tau.word_string(n)));
                }
            }
            text
        }
    };
    Ok(Report::ok(text, json_value))
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn verify(
    input: Option<&PathBuf>,
    cfg: Option<&ConfigArgs>,
    sigma: Option<&str>,
    flavor: Flavor,
) -> Result<Report, Failure> {
    let (ctx, classes, flavor) = match (input, cfg) {
        (Some(path), _) => {
            let table = from_json(&read_input(path)?)?;
            let (ctx, classes) = read_table(&table)?;
            (ctx, classes, table.flavor)
        }
        (None, Some(cfg)) => {
            let (config, wd) = cfg.context()?;
            let ctx = GkmContext::new(&config, &wd)?;
            let sigmas = match sigma {
                Some(s) => {
                    let s = parse_perm(s)?;
                    config.check_min_rep(&s)?;
                    vec![s]
                }
                None => ctx.reps().to_vec(),
            };
            let classes = sigmas
                .into_iter()
                .map(|s| schubert_class(&ctx, &s, flavor).map(|c| (s, c)))
                .collect::<Result<Vec<_>, _>>()?;
            (ctx, classes, flavor)
        }
        (None, None) => {
            return Err(Failure::Io("verify-gkm needs --input or --n".into()));
        }
    };
    let n = ctx.config().n();
    let mut text = String::new();
    let mut results = Vec::new();
    let mut first = None;
    let mut edges = 0;
    for (sigma, class) in &classes {
        let report = verify_gkm(class);
        edges += report.edges.len();
        let ok = report.passed();
        let failure = report.first_failure();
        text.push_str(&format!(
            "{} class {} ({} edges)\n",
            if ok { "PASS" } else { "FAIL" },
            sigma.word_string(n),
            report.edges.len()
        ));
        if first.is_none() {
            first = failure.clone().map(|f| format!("class {}: {f}", sigma.word_string(n)));
        }
        results.push(json!({"sigma": sigma.word_string(n), "passed": ok, "edges": report.edges.len(), "first_failure": failure}));
    }
    let passed = first.is_none();
    text.push_str(&if passed {
        format!("PASS (all {} classes, {edges} edge checks, {flavor})\n", classes.len())
    } else {
        format!("FAIL ({flavor})\n")
    });
    let json_value = json!({"flavor": flavor, "passed": passed, "classes": results});
    let mut report = Report::ok(text, json_value);
    report.failure = first.map(|first| Failure::Verification { what: "GKM condition".into(), first });
    Ok(report)
}

fn chevalley(
    cfg: &ConfigArgs,
    d: Option<usize>,
    sigma: Option<&str>,
    all: bool,
    flavor: Flavor,
) -> Result<Report, Failure> {
    let (config, wd) = cfg.context()?;
    let ctx = GkmContext::new(&config, &wd)?;
    let n = config.n();
    let pairs: Vec<(usize, Permutation)> = if all {
        config
            .dims()
            .iter()
            .flat_map(|&d| ctx.reps().iter().map(move |s| (d, s.clone())))
            .collect()
    } else {
        let (Some(d), Some(s)) = (d, sigma) else {
            return Err(Error::InvalidConfig("chevalley needs --d and --sigma, or --all".into()).into());
        };
        let s = parse_perm(s)?;
        config.check_dim(d)?;
        config.check_min_rep(&s)?;
        vec![(d, s)]
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut first = None;
    for (d, s) in &pairs {
        let check = chevalley_product(&ctx, *d, s, flavor)?;
        let ok = check.passed();
        let covers: Vec<String> = check.covers.iter().map(|t| t.word_string(n)).collect();
        if !all || !ok {
            text.push_str(&format!(
                "{} d={d} sigma={}: covers [{}], multiplier at sigma {}\n",
                if ok { "PASS" } else { "FAIL" },
                s.word_string(n),
                covers.join("; "),
                check.diagonal_coefficient
            ));
        }
        if first.is_none() && !ok {
            first = check.mismatch();
        }
        results.push(json!({
            "d": d,
            "sigma": s.word_string(n),
            "passed": ok,
            "covers": covers,
            "multiplier": check.diagonal_coefficient.to_string(),
        }));
    }
    if all && first.is_none() {
        text.push_str(&format!("PASS (all {} products)\n", pairs.len()));
    }
    let mut report = Report::ok(text, json!({"flavor": flavor, "passed": first.is_none(), "products": results}));
    report.failure = first.map(|first| Failure::Verification { what: "Chevalley formula".into(), first });
    Ok(report)
}

fn monk(cfg: &ConfigArgs, d: Option<usize>, sigma: Option<&str>, all: bool) -> Result<Report, Failure> {
    let (config, wd) = cfg.context()?;
    let n = config.n();
    let ws = WeightedSubstitution::new(&config, &wd, Universe::new(n))?;
    let pairs: Vec<(usize, Permutation)> = if all {
        (1..n)
            .flat_map(|d| Permutation::all(n).map(move |s| (d, s)))
            .collect()
    } else {
        let (Some(d), Some(s)) = (d, sigma) else {
            return Err(Error::InvalidConfig("monk needs --d and --sigma, or --all".into()).into());
        };
        vec![(d, parse_perm(s)?)]
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut first = None;
    for (d, s) in &pairs {
        let check = monk_identity_check(&ws, *d, s)?;
        let ok = check.passed();
        let terms: Vec<String> = check.terms.iter().map(|t| t.to_string()).collect();
        if !all || !ok {
            text.push_str(&format!(
                "{} d={d} sigma={s}: terms [{}]\n",
                if ok { "PASS" } else { "FAIL" },
                terms.join("; ")
            ));
        }
        if first.is_none() && !ok {
            first = Some(format!("d={d} sigma={s}: residual {}", check.residual()));
        }
        results.push(json!({"d": d, "sigma": s.to_string(), "passed": ok, "terms": terms}));
    }
    if all && first.is_none() {
        text.push_str(&format!("PASS (all {} identities)\n", pairs.len()));
    }
    let mut report = Report::ok(text, json!({"passed": first.is_none(), "identities": results}));
    report.failure = first.map(|first| Failure::Verification { what: "Chevalley-Monk identity".into(), first });
    Ok(report)
}

fn schubert(cfg: &ConfigArgs, sigma: &str, kind: Kind, route: RouteArg) -> Result<Report, Failure> {
    let s = parse_perm(sigma)?;
    let universe = Universe::new(cfg.n);
    let m = s.size().max(1);
    let route = match route {
        RouteArg::Sum => Route::SumFormula,
        RouteArg::Dd => Route::DividedDifference,
    };
    let p: Polynomial = match kind {
        Kind::Single => schubert_poly(&s, m, universe)?,
        Kind::Double => double_schubert(&s, m, route, universe)?,
        Kind::Weighted | Kind::WeightedDouble => {
            let (config, wd) = cfg.context()?;
            let ws = WeightedSubstitution::new(&config, &wd, universe)?;
            if kind == Kind::Weighted {
                weighted_schubert(&s, &ws)?
            } else {
                weighted_double_schubert(&s, &ws)?
            }
        }
    };
    Ok(Report::ok(
        format!("{p}\n"),
        json!({"sigma": s.to_string(), "text": p.to_string(), "terms": p.to_json_terms()}),
    ))
}

fn selftest(seed: u64) -> Result<Report, Failure> {
    let results = run_all(seed);
    let mut text = String::new();
    // Timings are left out to keep the report reproducible.
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("[{status}] criterion {:>2}: {} ({})\n", r.id, r.name, r.detail));
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    text.push_str(&format!("{}/{} criteria passed\n", results.len() - failed.len(), results.len()));
    let json_value = json!({
        "seed": seed,
        "criteria": results.iter().map(|r| json!({
            "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    let mut report = Report::ok(text, json_value);
    report.failure = failed.first().map(|r| Failure::Verification {
        what: "acceptance suite".into(),
        first: r.line(),
    });
    Ok(report)
}
