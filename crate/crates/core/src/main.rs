use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zxct::catalog::cli_check;
use zxct::diagram::{from_json, parse, to_json, Diagram};
use zxct::rewrite::script::{matches_for_step, proved_derived, rewrite_once, run_script, Dir, Script, Step};
use zxct::rules::{verify_all, Catalog, Plan};
use zxct::semantics::interpret;
use zxct::translate::{zw_to_zx, zx_to_zw};
use zxct::{par, Dyadic};

#[derive(Parser)]
#[command(name = "zxct", version, about = "Exact Clifford+T ZX-calculus toolkit")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps and checks; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Directory of rule fixtures to use instead of the built-in set.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the interpretation of a diagram.
    Eval { file: PathBuf },
    /// Check every rule instance for soundness.
    VerifyRules {
        #[arg(long)]
        rule: Option<String>,
        /// Comma-separated dyadic values for lambda parameters.
        #[arg(long, value_delimiter = ',')]
        lambda_set: Option<Vec<String>>,
        #[arg(long)]
        no_flips: bool,
    },
    /// Run the catalog of equation checks.
    Check {
        #[arg(long)]
        id: Option<String>,
    },
    /// Translate between ZX and ZW.
    Translate {
        #[arg(long, value_enum)]
        dir: TransDir,
        file: PathBuf,
    },
    /// List the matches of a rule's left-hand side.
    Match {
        #[arg(long)]
        rule: String,
        #[arg(long, value_enum, default_value = "lr")]
        dir: CliDir,
        /// Parameter bindings, `name=value`.
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
        file: PathBuf,
    },
    /// Apply one rule at the given anchor nodes.
    Rewrite {
        #[arg(long)]
        rule: String,
        #[arg(long, value_enum, default_value = "lr")]
        dir: CliDir,
        #[arg(long = "at", value_delimiter = ',')]
        at: Vec<u32>,
        /// Nodes beyond the pattern's boundary wires, in boundary order.
        #[arg(long, value_delimiter = ',')]
        via: Vec<u32>,
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
        file: PathBuf,
    },
    /// Replay a derivation script.
    Script { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransDir {
    Zx2zw,
    Zw2zx,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliDir {
    Lr,
    Rl,
}

impl From<CliDir> for Dir {
    fn from(d: CliDir) -> Dir {
        match d {
            CliDir::Lr => Dir::Lr,
            CliDir::Rl => Dir::Rl,
        }
    }
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    s.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())).ok_or_else(|| format!("expected name=value, got `{s}`"))
}

/// A usage or input problem (exit 2) or a failed check (exit 1).
enum Fail {
    Input(String),
    Check(String),
}

fn read_diagram(path: &PathBuf) -> Result<Diagram, Fail> {
    let src = std::fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    let t = src.trim_start();
    let d =
        if t.starts_with('{') { serde_json::from_str(t).map_err(|e| e.to_string()).and_then(|j| from_json(&j)) } else { parse(t).map_err(|e| e.to_string()) };
    d.map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn catalog(cli: &Cli) -> Result<Catalog, Fail> {
    match &cli.fixtures {
        Some(dir) => Catalog::from_dir(dir).map_err(|e| Fail::Input(e.to_string())),
        None => Ok(Catalog::builtin()),
    }
}

fn run(cli: &Cli) -> Result<(), Fail> {
    match &cli.cmd {
        Cmd::Eval { file } => {
            let d = read_diagram(file)?;
            let m = interpret(&d).map_err(|e| Fail::Input(e.to_string()))?;
            if cli.json {
                println!("{}", m.to_json());
            } else {
                println!("{m}");
            }
            Ok(())
        }
        Cmd::VerifyRules { rule, lambda_set, no_flips } => {
            let cat = catalog(cli)?;
            if let Some(r) = rule {
                if cat.get(r).is_none() {
                    return Err(Fail::Input(format!("unknown rule `{r}`")));
                }
            }
            let mut plan = Plan { only: rule.clone(), flips: !no_flips, ..Plan::default() };
            if let Some(ls) = lambda_set {
                plan.lambdas = ls.iter().map(|s| s.parse::<Dyadic>().map_err(|_| Fail::Input(format!("bad lambda `{s}`")))).collect::<Result<_, _>>()?;
            }
            let report = par::with_jobs(Some(cli.jobs), || verify_all(&cat, &plan));
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("{report}");
            }
            if report.passed {
                Ok(())
            } else {
                Err(Fail::Check(format!("{} unsound instances", report.failures)))
            }
        }
        Cmd::Check { id } => {
            let report = par::with_jobs(Some(cli.jobs), || cli_check(id.as_deref()));
            if report.results.is_empty() {
                return Err(Fail::Input(format!("no check matches `{}`", id.as_deref().unwrap_or("*"))));
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("{report}");
            }
            if report.ok() {
                Ok(())
            } else {
                Err(Fail::Check(format!("{} checks failed", report.failed)))
            }
        }
        Cmd::Translate { dir, file } => {
            let d = read_diagram(file)?;
            let out = match dir {
                TransDir::Zx2zw => zx_to_zw(&d),
                TransDir::Zw2zx => zw_to_zx(&d),
            }
            .map_err(|e| Fail::Input(e.to_string()))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json(&out)).unwrap());
            } else {
                println!("{out}");
            }
            Ok(())
        }
        Cmd::Match { rule, dir, params, file } => {
            let d = read_diagram(file)?;
            let cat = catalog(cli)?;
            let step = Step { rule: rule.clone(), dir: (*dir).into(), anchors: vec![], via: vec![], params: params.iter().cloned().collect(), flip: None };
            let found = matches_for_step(&d, &cat, &step).map_err(|e| Fail::Input(e.to_string()))?;
            if cli.json {
                let rows: Vec<_> = found
                    .iter()
                    .map(|(inst, m)| serde_json::json!({"rule": inst.label(), "nodes": m.nodes, "frontier": format!("{:?}", m.frontier)}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                for (inst, m) in &found {
                    println!("{}  nodes {:?}", inst.label(), m.image());
                }
                println!("{} matches", found.len());
            }
            Ok(())
        }
        Cmd::Rewrite { rule, dir, at, via, params, file } => {
            let d = read_diagram(file)?;
            let cat = catalog(cli)?;
            let step =
                Step { rule: rule.clone(), dir: (*dir).into(), anchors: at.clone(), via: via.clone(), params: params.iter().cloned().collect(), flip: None };
            let out = rewrite_once(&d, &cat, &step).map_err(|e| Fail::Check(e.to_string()))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json(&out)).unwrap());
            } else {
                println!("{out}");
            }
            Ok(())
        }
        Cmd::Script { file } => {
            let src = std::fs::read_to_string(file).map_err(|e| Fail::Input(format!("{}: {e}", file.display())))?;
            let s = Script::from_json(&src).map_err(|e| Fail::Input(e.to_string()))?;
            let cat = catalog(cli)?;
            // derived rules a standalone script may lean on are those whose bundled scripts pass
            let unlocked = proved_derived(&cat);
            let trace = run_script(&s, &cat, &unlocked).map_err(|e| Fail::Check(e.to_string()))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&trace).unwrap());
            } else {
                println!("{trace}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
