//! threatval: solve three-player games for their threat (minmax) values.
//!
//! Every value-producing subcommand prints one JSON envelope on stdout:
//! `{"value": ..., "method": ..., "profile": ..., "certificates": ...}`
//! with rationals rendered as exact "p/q" strings. `reduce` prints a game
//! file and `clique-check` a search result; `threat-point` prints one
//! envelope-like entry per player. Exit codes: 0 success, 1 usage,
//! 2 invalid input, 3 budget exceeded, 4 result did not converge.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

use threatval::clique::{build_clique_game, find_clique_bruteforce, Graph};
use threatval::error::Error;
use threatval::exact_two::{classify_case, solve_two_by};
use threatval::format::{parse_game, tensor_to_json, Game};
use threatval::oracle::{oracle_minmax_budgeted, DEFAULT_GRID_BUDGET};
use threatval::rational::{ceil_rational, format_rational, parse_rational, rat_int};
use threatval::simple_approx::approx_minmax_simple;
use threatval::support_enum::{minmax_support_enum, SolveOptions};
use threatval::threat::{bully_threat_value, threat_point};
use threatval::value::{GameValue, ValueCmp};
use threatval::zerosum::maxmin_value;
use threatval::{BullyProfile, Rational, Result};

#[derive(Parser)]
#[command(
    name = "threatval",
    version,
    about = "Solvers for threat (minmax) values of three-player strategic-form games"
)]
struct Cli {
    /// Worker cap (reserved; solvers are sequential).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value of a 0-1 game with two own actions, by case analysis.
    Exact2 {
        /// Game JSON file, or "-" for stdin.
        game: String,
    },
    /// Best uniform-multiset threat of support size s.
    Simple {
        game: String,
        /// Multiset size per punisher.
        #[arg(long)]
        s: usize,
    },
    /// Minmax value by support enumeration.
    Solve {
        game: String,
        /// exact: symbolic where possible; numeric: certified bracket.
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Bracket width target for numeric subgames, as "p/q".
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
        /// Also decide whether the value is at most this threshold.
        #[arg(long)]
        alpha: Option<String>,
        /// Seed for the numeric engine's randomized starts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// LP budget per numeric subgame.
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
    },
    /// Player 1's security (maxmin) value.
    Maxmin { game: String },
    /// Build the 2k x kn x kn coordination game from a graph file.
    Reduce {
        /// Graph file ("n m" header then edge lines), or "-" for stdin.
        graph: String,
        /// Label count.
        #[arg(long)]
        k: usize,
    },
    /// Brute-force search for a k-clique.
    CliqueCheck {
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// Epsilon-accurate minmax via the small-bully lattice scan.
    BullyThreat {
        game: String,
        /// Additive accuracy relative to the payoff span, as "p/q".
        #[arg(long)]
        epsilon: String,
        /// Which punisher is discretized: 2 or 3.
        #[arg(long, default_value_t = 2)]
        bully: usize,
    },
    /// Per-player vector of minmax values.
    ThreatPoint {
        game: String,
        #[arg(long)]
        epsilon: String,
    },
    /// Grid-search bracket from the brute-force oracle.
    Oracle {
        game: String,
        /// Lattice denominator for both punishers.
        #[arg(long)]
        resolution: u32,
        /// Grid point cap (default 10^7).
        #[arg(long)]
        budget: Option<u128>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Validation(_) => ExitCode::from(2),
                Error::Budget { .. } => ExitCode::from(3),
            }
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::validation(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| Error::validation(format!("reading {path}: {e}")))
}

fn load_game(path: &str) -> Result<Game> {
    parse_game(&read_input(path)?)
}

fn load_graph(path: &str) -> Result<Graph> {
    Graph::from_text(&read_input(path)?)
}

fn rational_str(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn value_json(v: &GameValue) -> Value {
    match v {
        GameValue::Exact(x) => json!({ "exact": format_rational(x) }),
        GameValue::QuadIrr { a, b, d } => {
            let d_json = d.to_u64().map(|n| json!(n)).unwrap_or_else(|| json!(d.to_string()));
            json!({ "quadirr": { "a": format_rational(a), "b": format_rational(b), "d": d_json } })
        }
        GameValue::Bracket { lo, hi } => {
            json!({ "bracket": [format_rational(lo), format_rational(hi)] })
        }
    }
}

fn profile_json(p: &BullyProfile) -> Value {
    Value::Array(
        p.strategies
            .iter()
            .map(|s| Value::Array(s.probs.iter().map(rational_str).collect()))
            .collect(),
    )
}

fn envelope(value: &GameValue, method: &str, profile: &BullyProfile, certificates: Value) -> Value {
    json!({
        "value": value_json(value),
        "method": method,
        "profile": profile_json(profile),
        "certificates": certificates,
    })
}

fn emit(v: &Value) {
    println!("{v}");
}

fn parse_positive(text: &str, what: &str) -> Result<Rational> {
    let x = parse_rational(text)?;
    if !x.is_positive() {
        return Err(Error::validation(format!("{what} must be positive")));
    }
    Ok(x)
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Exact2 { game } => {
            let g = load_game(&game)?;
            let case = classify_case(&g.u1)?;
            let (value, profile) = solve_two_by(&g.u1)?;
            emit(&envelope(
                &value,
                "exact-two",
                &profile,
                json!({ "case": case.case_id }),
            ));
            Ok(ExitCode::SUCCESS)
        }
        Command::Simple { game, s } => {
            let g = load_game(&game)?;
            let (value, profile) = approx_minmax_simple(&g.u1, s)?;
            emit(&envelope(&value, "simple", &profile, json!({ "s": s })));
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            game,
            mode,
            tol,
            alpha,
            seed,
            budget,
        } => {
            let g = load_game(&game)?;
            let opts = SolveOptions {
                exact: mode == Mode::Exact,
                tol: parse_positive(&tol, "--tol")?,
                seed,
                lp_budget: budget,
            };
            let sol = minmax_support_enum(&g.u1, &opts)?;
            let mut certificates = serde_json::Map::new();
            if let Some((s2, s3)) = &sol.supports {
                certificates.insert("supports".into(), json!([s2, s3]));
            }
            if let Some(alpha) = alpha {
                let alpha = parse_rational(&alpha)?;
                let decision = match &sol.value {
                    GameValue::Bracket { lo, hi } => {
                        if *hi <= alpha {
                            "yes"
                        } else if *lo > alpha {
                            "no"
                        } else {
                            "unknown"
                        }
                    }
                    v => match v.cmp_rational(&alpha) {
                        ValueCmp::Decided(std::cmp::Ordering::Greater) => "no",
                        ValueCmp::Decided(_) => "yes",
                        ValueCmp::Ambiguous => "unknown",
                    },
                };
                certificates.insert("alpha".into(), rational_str(&alpha));
                certificates.insert("decision".into(), json!(decision));
            }
            let mut out = envelope(
                &sol.value,
                "support-enum",
                &sol.profile,
                Value::Object(certificates),
            );
            if sol.unconverged {
                out["unconverged"] = json!(true);
            }
            emit(&out);
            Ok(if sol.unconverged {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Maxmin { game } => {
            let g = load_game(&game)?;
            let sol = maxmin_value(&g.u1)?;
            let value = GameValue::exact(sol.value.clone());
            let certificates = json!({
                "strategy": sol.row_strategy.probs.iter().map(rational_str).collect::<Vec<_>>(),
                "col_support_size": sol.col_support_size,
            });
            emit(&json!({
                "value": value_json(&value),
                "method": "maxmin-lp",
                "profile": [],
                "certificates": certificates,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { graph, k } => {
            let g = load_graph(&graph)?;
            let game = build_clique_game(&g, k)?;
            emit(&tensor_to_json(&game));
            Ok(ExitCode::SUCCESS)
        }
        Command::CliqueCheck { graph, k } => {
            let g = load_graph(&graph)?;
            let clique = find_clique_bruteforce(&g, k)?;
            emit(&json!({
                "found": clique.is_some(),
                "clique": clique,
                "k": k,
                "n": g.n(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::BullyThreat {
            game,
            epsilon,
            bully,
        } => {
            let g = load_game(&game)?;
            let epsilon = parse_positive(&epsilon, "--epsilon")?;
            let arranged = match bully {
                2 => g.u1.clone(),
                3 => g.u1.swap_bullies()?,
                other => {
                    return Err(Error::validation(format!(
                        "--bully must be 2 or 3, got {other}"
                    )))
                }
            };
            let (unit, scale, shift) = arranged.normalize_unit();
            let (value, profile) = bully_threat_value(&unit, &epsilon)?;
            let span = scale.recip();
            let value = value.affine(&span, &(-&shift * &span));
            let mut strategies = profile.strategies;
            if bully == 3 {
                strategies.reverse();
            }
            let k = arranged.dims()[1] as i64;
            let r = ceil_rational(&(rat_int(2 * (k - 1)) / &epsilon))
                .to_u64()
                .unwrap_or(u64::MAX)
                .max(1);
            emit(&envelope(
                &value,
                "bully-threat",
                &BullyProfile::new(strategies)?,
                json!({ "epsilon": format_rational(&epsilon), "resolution": r, "bully": bully }),
            ));
            Ok(ExitCode::SUCCESS)
        }
        Command::ThreatPoint { game, epsilon } => {
            let g = load_game(&game)?;
            let epsilon = parse_positive(&epsilon, "--epsilon")?;
            let tensors = [g.payoffs_for(1), g.payoffs_for(2), g.payoffs_for(3)];
            let entries = threat_point(&tensors, &epsilon)?;
            let rendered: Vec<Value> = entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "player": i + 1,
                        "method": e.method,
                        "value": e.value.as_ref().map(value_json),
                        "profile": e.profile.as_ref().map(profile_json),
                    })
                })
                .collect();
            emit(&json!({
                "epsilon": format_rational(&epsilon),
                "entries": rendered,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            game,
            resolution,
            budget,
        } => {
            let g = load_game(&game)?;
            let res = oracle_minmax_budgeted(&g.u1, resolution, budget.unwrap_or(DEFAULT_GRID_BUDGET))?;
            let grid = u64::try_from(res.grid_points)
                .map(|n| json!(n))
                .unwrap_or_else(|_| json!(res.grid_points.to_string()));
            emit(&envelope(
                &res.bracket(),
                "oracle",
                &res.witness,
                json!({ "resolution": resolution, "grid_points": grid }),
            ));
            Ok(ExitCode::SUCCESS)
        }
    }
}
