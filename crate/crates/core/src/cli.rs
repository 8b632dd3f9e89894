//! The `ntukit` command-line interface.
//!
//! Exit codes: 0 on success or a clean pass, 1 when a violation or failed
//! claim is found, 2 on input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::axioms::{AxiomId, Solution};
use crate::game::{Coalition, NTUGame, PayoffVector, PlayerId};
use crate::harness::report::{axiom_report_json, region_json, search_json, theorem_json};
use crate::harness::{
    check_theorem1, check_theorem2, check_theorem3, counterexample_search, random_game, read_game,
    write_game, GenConfig, HarnessError,
};
use crate::predicates;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reductions::{
    epsilon_game, epsilon_x_game, ss_reduced, ss_reduced_any_point, ws_reduced,
    ws_reduced_any_point, Epsilon,
};
use crate::region::{core_region, hausdorff_linf, ir_region, pareto_region};

#[derive(Parser)]
#[command(
    name = "ntukit",
    version,
    about = "Exact toolkit for finitely-generated NTU games: cores, reduced games, axiom checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReduceKind {
    Ss,
    Ws,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PerturbKind {
    Eps,
    Epsx,
}

#[derive(Args)]
struct GenArgs {
    /// Number of players for generated games (1..=5).
    #[arg(long, default_value_t = 3)]
    players: u32,
    /// Maximum generators per coalition (1..=6).
    #[arg(long, default_value_t = 3)]
    max_generators: u32,
    /// Largest denominator for random payoff coordinates.
    #[arg(long, default_value_t = 4)]
    denominator_bound: u32,
}

impl GenArgs {
    fn config(&self, seed: u64) -> GenConfig {
        let mut cfg = GenConfig::new(seed, self.players);
        cfg.max_generators = self.max_generators;
        cfg.denominator_bound = self.denominator_bound;
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a game's core as canonical boxes.
    Core {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Report whether a point is feasible, in the core, Pareto-efficient,
    /// and individually rational.
    Membership {
        game: PathBuf,
        /// Comma-separated rationals, one per player in ascending label
        /// order, e.g. "1,1/2".
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a game's weak-Pareto set as canonical boxes.
    Pareto {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a game's individually rational set as canonical boxes.
    Ir {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build a secession reduced game and print (or write) it.
    Reduce {
        game: PathBuf,
        #[arg(long, value_enum)]
        kind: ReduceKind,
        /// Coalition members, e.g. "0,2".
        #[arg(long)]
        coalition: String,
        #[arg(long)]
        point: String,
        /// Skip the Pareto-efficiency precondition on the point.
        #[arg(long)]
        allow_non_pareto: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an epsilon-perturbed game and print (or write) it.
    Perturb {
        game: PathBuf,
        #[arg(long, value_enum)]
        kind: PerturbKind,
        #[arg(long)]
        point: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact L-infinity Hausdorff distance between two games' grand hulls.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run axiom checkers for a solution on one game.
    CheckAxioms {
        game: PathBuf,
        #[arg(long)]
        solution: String,
        /// Comma-separated axiom names, or "all".
        #[arg(long)]
        axioms: String,
        /// Seed for derived artifacts (impoverishment pairs).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Desk-check one of the three characterization theorems on seeded
    /// random games.
    CheckTheorems {
        #[arg(long)]
        which: u8,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Generate a seeded random game file.
    GenRandom {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Search seeded random games for axiom violations.
    Search {
        #[arg(long)]
        solution: String,
        #[arg(long)]
        axioms: String,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Core { game, format } => {
            let g = read_game(&game)?;
            let region = core_region(&g);
            match format {
                Format::Text => println!("{region}"),
                Format::Json => println!("{}", region_json(&region)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pareto { game, format } => {
            let g = read_game(&game)?;
            let region = pareto_region(&g);
            match format {
                Format::Text => println!("{region}"),
                Format::Json => println!("{}", region_json(&region)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ir { game, format } => {
            let g = read_game(&game)?;
            let region = ir_region(&g);
            match format {
                Format::Text => println!("{region}"),
                Format::Json => println!("{}", region_json(&region)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Membership {
            game,
            point,
            format,
        } => {
            let g = read_game(&game)?;
            let x = parse_point(&g, &point)?;
            let feasible = g.grand_generators().hull_contains(&x);
            let core = predicates::in_core(&g, &x);
            let pareto = predicates::is_pareto(&g, &x);
            let ir = predicates::is_individually_rational(&g, &x);
            match format {
                Format::Text => {
                    println!("feasible: {feasible}");
                    println!("core: {core}");
                    println!("pareto: {pareto}");
                    println!("individually-rational: {ir}");
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "feasible": feasible,
                        "core": core,
                        "pareto": pareto,
                        "individually_rational": ir,
                    })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            game,
            kind,
            coalition,
            point,
            allow_non_pareto,
            out,
        } => {
            let g = read_game(&game)?;
            let s = parse_coalition(&coalition)?;
            let x = parse_point(&g, &point)?;
            let reduced = match (kind, allow_non_pareto) {
                (ReduceKind::Ss, false) => ss_reduced(&g, s, &x)?,
                (ReduceKind::Ss, true) => ss_reduced_any_point(&g, s, &x)?,
                (ReduceKind::Ws, false) => ws_reduced(&g, s, &x)?,
                (ReduceKind::Ws, true) => ws_reduced_any_point(&g, s, &x)?,
            };
            emit_game(&reduced, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Perturb {
            game,
            kind,
            point,
            epsilon,
            out,
        } => {
            let g = read_game(&game)?;
            let x = parse_point(&g, &point)?;
            let eps = Epsilon::new(parse_rational(&epsilon)?)?;
            let perturbed = match kind {
                PerturbKind::Eps => epsilon_game(&g, &x, &eps)?,
                PerturbKind::Epsx => epsilon_x_game(&g, &x, &eps)?,
            };
            emit_game(&perturbed, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hausdorff { a, b, format } => {
            let ga = read_game(&a)?;
            let gb = read_game(&b)?;
            let d = hausdorff_linf(&ga, &gb)?;
            match format {
                Format::Text => println!("{}", format_rational(&d)),
                Format::Json => println!("{}", json!({ "distance": format_rational(&d) })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckAxioms {
            game,
            solution,
            axioms,
            seed,
            format,
        } => {
            let g = read_game(&game)?;
            let sol = Solution::builtin(&solution)?;
            let axioms = parse_axioms(&axioms)?;
            let mut reports = Vec::new();
            let mut violated = false;
            for axiom in axioms {
                let (report, _) =
                    crate::harness::search::check_axiom_on_game(&sol, axiom, &g, seed)?;
                violated |= report.is_violated();
                reports.push(report);
            }
            match format {
                Format::Text => {
                    for r in &reports {
                        println!("{r}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "solution": sol.name(),
                        "reports": reports.iter().map(axiom_report_json).collect::<Vec<_>>(),
                    })
                ),
            }
            Ok(exit_by_violation(violated))
        }
        Command::CheckTheorems {
            which,
            trials,
            seed,
            gen,
            format,
        } => run_theorems(which, trials, seed, &gen, format),
        Command::GenRandom { seed, out, gen } => {
            let g = random_game(&gen.config(seed))?;
            write_game(&out, &g)?;
            eprintln!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            solution,
            axioms,
            trials,
            seed,
            gen,
            format,
        } => {
            let sol = Solution::builtin(&solution)?;
            let axioms = parse_axioms(&axioms)?;
            let outcome = counterexample_search(&sol, &axioms, &gen.config(seed), trials)?;
            match format {
                Format::Text => {
                    println!(
                        "{} trials, {} checks, {} violations",
                        outcome.trials,
                        outcome.checks_run,
                        outcome.violations.len()
                    );
                    for v in &outcome.violations {
                        println!("trial {} (seed {}): {}", v.trial, v.seed, v.report);
                    }
                }
                Format::Json => println!("{}", search_json(&outcome)),
            }
            Ok(exit_by_violation(outcome.found_violation()))
        }
    }
}

fn exit_by_violation(violated: bool) -> ExitCode {
    if violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit_game(game: &NTUGame, out: Option<&Path>) -> Result<(), HarnessError> {
    match out {
        Some(path) => {
            write_game(path, game)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", crate::harness::game_to_string(game)),
    }
    Ok(())
}

fn parse_point(game: &NTUGame, s: &str) -> Result<PayoffVector, HarnessError> {
    let values: Vec<Rational> = s
        .split(',')
        .map(|part| parse_rational(part))
        .collect::<Result<_, _>>()?;
    if values.len() != game.num_players() {
        return Err(HarnessError::Format(format!(
            "point has {} coordinates, the game has {} players",
            values.len(),
            game.num_players()
        )));
    }
    Ok(PayoffVector::new(game.players(), values)?)
}

fn parse_coalition(s: &str) -> Result<Coalition, HarnessError> {
    let mut members = Vec::new();
    for part in s.split(',') {
        let id: u32 = part.trim().parse().map_err(|_| {
            HarnessError::Format(format!("invalid player label {part:?} in coalition"))
        })?;
        members.push(PlayerId(id));
    }
    Ok(Coalition::from_members(members)?)
}

fn parse_axioms(s: &str) -> Result<Vec<AxiomId>, HarnessError> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(AxiomId::ALL.to_vec());
    }
    s.split(',')
        .map(|part| AxiomId::from_str(part).map_err(HarnessError::from))
        .collect()
}

fn run_theorems(
    which: u8,
    trials: u32,
    seed: u64,
    gen: &GenArgs,
    format: Format,
) -> Result<ExitCode, HarnessError> {
    if !(1..=3).contains(&which) {
        return Err(HarnessError::BadConfig(format!(
            "theorem must be 1, 2 or 3, got {which}"
        )));
    }
    let eps_cycle = [
        Epsilon::new(Rational::from_integer(1.into())).expect("positive"),
        Epsilon::new(crate::rational::rat(1, 2)).expect("positive"),
        Epsilon::new(crate::rational::rat(1, 4)).expect("positive"),
    ];
    let mut results = Vec::new();
    let mut attempts: u64 = 0;
    let max_attempts = u64::from(trials) * 50 + 50;
    let mut completed = 0u32;
    while completed < trials && attempts < max_attempts {
        let game_seed = seed
            .wrapping_add(attempts.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        attempts += 1;
        let game = random_game(&gen.config(game_seed))?;
        let result = if which == 1 {
            check_theorem1(&game)
        } else {
            // Theorems 2 and 3 need a core point; skip games whose core is
            // empty.
            let core = core_region(&game);
            let Some(x) = core.sample_points().into_iter().next() else {
                continue;
            };
            let eps = &eps_cycle[(completed % 3) as usize];
            if which == 2 {
                check_theorem2(&game, &x, eps)?
            } else {
                check_theorem3(&game, &x, eps)?
            }
        };
        completed += 1;
        results.push((game_seed, result));
    }
    if completed < trials {
        return Err(HarnessError::BadConfig(format!(
            "only {completed} of {trials} trials had usable games (cores kept coming up empty)"
        )));
    }

    let failed: Vec<_> = results.iter().filter(|(_, r)| !r.passed()).collect();
    match format {
        Format::Text => {
            for (game_seed, r) in &results {
                let status = if r.passed() { "pass" } else { "FAIL" };
                println!(
                    "theorem {which}: seed {game_seed}: {status} ({} claims, {} ms)",
                    r.claims.len(),
                    r.elapsed.as_millis()
                );
                if !r.passed() {
                    for c in r.claims.iter().filter(|c| !c.passed) {
                        println!("  claim {}: {}", c.id, c.details);
                        if let Some(bundle) = &c.bundle {
                            println!("  bundle: {bundle}");
                        }
                    }
                }
            }
            println!(
                "theorem {which}: {} trials, {} failed",
                results.len(),
                failed.len()
            );
        }
        Format::Json => {
            let items: Vec<_> = results
                .iter()
                .map(|(game_seed, r)| {
                    let mut v = theorem_json(r);
                    v["seed"] = json!(game_seed);
                    v
                })
                .collect();
            println!(
                "{}",
                json!({ "theorem": which, "trials": results.len(), "failed": failed.len(), "results": items })
            );
        }
    }
    Ok(exit_by_violation(!failed.is_empty()))
}
