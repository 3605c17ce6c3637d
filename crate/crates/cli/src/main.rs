//! Command-line front end: parse a 1-form, reduce it, run the identity
//! checks and emit JSON reports or a DOT dual graph.
//!
//! Exit codes: 0 success, 2 an identity check failed, 3 the input needs an
//! irrational center or exceeded the round budget, 1 anything else. Errors
//! are mirrored as JSON on stderr.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use folres_core::algebra::rat::{rat_from_str, Rat};
use folres_core::entryjson::{entry_from_json, entry_to_json};
use folres_core::error::Error;
use folres_core::examples::{corpus, klughertz, KlughertzParams};
use folres_core::invariants::{
    balanced_json, build_balanced_equation, check_hertling_stage, check_muldic,
    check_relation_multiplicite, check_second_kind_criterion, invariant_report,
    obstruction_dimension,
};
use folres_core::parse::{parse_form, parse_poly};
use folres_core::reduction::{
    audit, reduce, tree_dot, tree_json, ResolutionTree, TrackedCurve, DEFAULT_MAX_DEPTH,
};

#[derive(Parser)]
#[command(
    name = "folres",
    about = "Exact reduction of plane foliation germs and their discrete invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// 1-form, e.g. "x dy - y dx"; when omitted, an entry JSON is read from
    /// standard input
    #[arg(long)]
    form: Option<String>,

    /// Isolated separatrix equation (repeatable)
    #[arg(long = "sep")]
    separatrices: Vec<String>,

    /// Assert that the supplied separatrix list is complete; required with
    /// --form for every balanced-equation command
    #[arg(long)]
    assert_complete: bool,

    /// Round budget for the reduction (FOLRES_MAX_DEPTH overrides the
    /// default)
    #[arg(long)]
    max_depth: Option<usize>,

    /// First pencil attachment coordinate to try
    #[arg(long, default_value_t = 100)]
    seed: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the germ and print the tree as JSON
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        /// Also write the dual graph in DOT format to this path
        #[arg(long)]
        dot: Option<String>,
        /// Write the JSON report here instead of standard output
        #[arg(long)]
        out: Option<String>,
    },
    /// Full identity report: weighted index sum, second kind, balanced
    /// multiplicity relation, obstruction dimension
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Balanced equation of separatrices
    Balanced {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Obstruction-space dimension of the balanced-equation poles
    Obstruction {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Emit a generated example as entry JSON
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
    /// Run every corpus entry against its expected values
    CorpusCheck {
        /// Corrupt the named entry's expected multiplicity first (exercises
        /// the failure exit code)
        #[arg(long)]
        corrupt: Option<String>,
    },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// Family member with n tangencies of orders r at coordinates t
    Klughertz {
        #[arg(long)]
        n: usize,
        /// Comma-separated tangency orders, e.g. 1,1,2
        #[arg(long)]
        r: String,
        /// Comma-separated rational tangency coordinates, e.g. 0,1,-1/2
        #[arg(long)]
        t: String,
    },
}

struct LoadedInput {
    name: String,
    form: folres_core::foliation::OneForm,
    separatrices: Vec<TrackedCurve>,
    max_depth: usize,
    seed: i64,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonRationalSingularity { .. } | Error::DepthExceeded { .. } => 3,
        _ => 1,
    }
}

fn fail(err: Error) -> ExitCode {
    let kind = match &err {
        Error::NonRationalSingularity { .. } => "non-rational-singularity",
        Error::DepthExceeded { .. } => "depth-exceeded",
        Error::SyntaxError { .. } => "syntax-error",
        Error::NonRationalLiteral { .. } => "non-rational-literal",
        Error::NotASeparatrix { .. } => "not-a-separatrix",
        _ => "error",
    };
    eprintln!(
        "{}",
        serde_json::json!({ "error": err.to_string(), "kind": kind })
    );
    ExitCode::from(exit_code_for(&err))
}

fn max_depth_from_env() -> usize {
    std::env::var("FOLRES_MAX_DEPTH")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEPTH)
}

fn load_input(input: &InputArgs, needs_complete_list: bool) -> Result<LoadedInput, Error> {
    let max_depth = input.max_depth.unwrap_or_else(max_depth_from_env);
    if let Some(text) = &input.form {
        if needs_complete_list && !input.assert_complete {
            return Err(Error::InvalidParams(
                "balanced-equation commands need --assert-complete: the separatrix list \
                 (possibly empty) must be asserted complete by the caller"
                    .into(),
            ));
        }
        let form = parse_form(text)?;
        let mut separatrices = Vec::new();
        for s in &input.separatrices {
            separatrices.push(TrackedCurve::Explicit(parse_poly(s)?));
        }
        Ok(LoadedInput {
            name: "input".to_string(),
            form,
            separatrices,
            max_depth,
            seed: input.seed,
        })
    } else {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidParams(format!("reading stdin: {}", e)))?;
        let entry = entry_from_json(&buf)?;
        Ok(LoadedInput {
            name: entry.name,
            form: entry.form,
            separatrices: entry.separatrices,
            max_depth,
            seed: input.seed,
        })
    }
}

fn write_out(path: &Option<String>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::InvalidParams(format!("writing {}: {}", p, e))),
        None => {
            println!("{}", content);
            Ok(())
        }
    }
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Reduce { input, dot, out } => {
            let loaded = load_input(&input, false)?;
            let tree = reduce(&loaded.form, loaded.max_depth)?;
            let violations = audit(&tree)?;
            if !violations.is_empty() {
                eprintln!(
                    "{}",
                    serde_json::json!({ "error": "final audit failed", "violations": violations })
                );
                return Ok(ExitCode::from(2));
            }
            if let Some(p) = dot {
                std::fs::write(&p, tree_dot(&tree))
                    .map_err(|e| Error::InvalidParams(format!("writing {}: {}", p, e)))?;
            }
            let json = serde_json::to_string_pretty(&tree_json(&tree)?).unwrap();
            write_out(&out, &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { input, out } => {
            let loaded = load_input(&input, true)?;
            let tree = reduce(&loaded.form, loaded.max_depth)?;
            let report = invariant_report(&loaded.name, &tree, &loaded.separatrices, loaded.seed)?;
            let ok = report.all_ok();
            write_out(&out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Balanced { input } => {
            let loaded = load_input(&input, true)?;
            let tree = reduce(&loaded.form, loaded.max_depth)?;
            let balanced = build_balanced_equation(&tree, &loaded.separatrices, loaded.seed)?;
            let json = serde_json::to_string_pretty(&balanced_json(&balanced)).unwrap();
            println!("{}", json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Obstruction { input } => {
            let loaded = load_input(&input, true)?;
            let tree = reduce(&loaded.form, loaded.max_depth)?;
            let balanced = build_balanced_equation(&tree, &loaded.separatrices, loaded.seed)?;
            let report = obstruction_dimension(&tree, &balanced.poles);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Example { which } => match which {
            ExampleCommand::Klughertz { n, r, t } => {
                let r: Vec<u32> = r
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Error::InvalidParams("bad --r list".into()))?;
                let t: Vec<Rat> = t
                    .split(',')
                    .map(rat_from_str)
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::InvalidParams("bad --t list".into()))?;
                let params = KlughertzParams::new(n, r, t)?;
                let r_total = i64::from(params.total_order());
                let nn = n as i64;
                let data = klughertz(params)?;
                let entry = folres_core::examples::CorpusEntry {
                    name: format!("klughertz-n{}", n),
                    form: data.form,
                    separatrices: data.separatrices,
                    first_integral: Some(data.first_integral),
                    expected: folres_core::examples::Expected {
                        nu0: r_total as u32 + 1,
                        nu0_balanced: r_total + 2,
                        second_kind: true,
                        obstruction_dim: ((nn - 2) * (nn - 3) / 2) as u64,
                        component_nus: None,
                        note: "family values",
                    },
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&entry_to_json(&entry)).unwrap()
                );
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::CorpusCheck { corrupt } => corpus_check(corrupt),
    }
}

fn corpus_check(corrupt: Option<String>) -> Result<ExitCode, Error> {
    let max_depth = max_depth_from_env();
    let mut entries = corpus();
    if let Some(name) = &corrupt {
        let e = entries
            .iter_mut()
            .find(|e| &e.name == name)
            .ok_or_else(|| Error::InvalidParams(format!("no corpus entry named {}", name)))?;
        e.expected.nu0 += 1;
    }
    let mut all_ok = true;
    for e in &entries {
        match check_entry(e, max_depth) {
            Ok(line) => println!("ok   {}: {}", e.name, line),
            Err(msg) => {
                all_ok = false;
                println!("FAIL {}: {}", e.name, msg);
            }
        }
    }
    if all_ok {
        println!("corpus-check: all entries pass");
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn check_entry(
    e: &folres_core::examples::CorpusEntry,
    max_depth: usize,
) -> Result<String, String> {
    let tree: ResolutionTree = reduce(&e.form, max_depth).map_err(|err| err.to_string())?;
    let violations = audit(&tree).map_err(|err| err.to_string())?;
    if !violations.is_empty() {
        return Err(format!("audit: {:?}", violations));
    }
    if tree.form.multiplicity() != e.expected.nu0 {
        return Err(format!(
            "multiplicity {} expected {}",
            tree.form.multiplicity(),
            e.expected.nu0
        ));
    }
    for k in 1..=tree.n_centers() {
        let h = check_hertling_stage(&tree, k).map_err(|err| err.to_string())?;
        if !h.ok {
            return Err(format!("index sum at stage {}: {} != {}", k, h.lhs, h.rhs));
        }
    }
    let balanced =
        build_balanced_equation(&tree, &e.separatrices, 100).map_err(|err| err.to_string())?;
    if balanced.nu0 != e.expected.nu0_balanced {
        return Err(format!(
            "balanced multiplicity {} expected {}",
            balanced.nu0, e.expected.nu0_balanced
        ));
    }
    let sk = check_second_kind_criterion(&tree, &balanced).map_err(|err| err.to_string())?;
    if !sk.ok || sk.snt_empty != e.expected.second_kind {
        return Err(format!(
            "second kind snt_empty={} mult_identity={} expected {}",
            sk.snt_empty, sk.mult_identity, e.expected.second_kind
        ));
    }
    let rel = check_relation_multiplicite(&tree, &balanced).map_err(|err| err.to_string())?;
    if !rel.ok {
        return Err(format!("balanced relation {} != {}", rel.lhs, rel.rhs));
    }
    if e.expected.second_kind {
        for row in check_muldic(&tree, &balanced) {
            if !row.ok {
                return Err(format!(
                    "component D{} multiplicity alternative: foliation {} balanced {}",
                    row.component, row.nu_foliation, row.nu_balanced
                ));
            }
        }
    }
    let obs = obstruction_dimension(&tree, &balanced.poles);
    if obs.dim != e.expected.obstruction_dim {
        return Err(format!(
            "obstruction {} expected {}",
            obs.dim, e.expected.obstruction_dim
        ));
    }
    if let Some(nus) = &e.expected.component_nus {
        let got: Vec<u64> = tree.components.iter().map(|c| c.nu).collect();
        if &got != nus {
            return Err(format!(
                "component multiplicities {:?} expected {:?}",
                got, nus
            ));
        }
    }
    Ok(format!(
        "{} centers, nu0 {}, balanced {}, second kind {}, obstruction {}",
        tree.n_centers(),
        e.expected.nu0,
        balanced.nu0,
        sk.snt_empty,
        obs.dim
    ))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => fail(err),
    }
}
