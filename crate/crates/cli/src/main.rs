//! `dyckwalk`: tables, oracle verification, `H_m` inspection and walk
//! simulation on the command line.

mod output;
mod probability;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dyckwalk::walk::DEFAULT_MAX_STEPS;
use serde_json::{json, Map, Value};

use crate::output::{CsvTable, OutputRecord, Status};
use crate::probability::ProbabilityArg;

#[derive(Parser, Debug)]
#[command(
    name = "dyckwalk",
    version,
    about = "Height-bounded Dyck path counts and gambler's-ruin walks"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A(n, 0..=kmax) from the generating function.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// Compare the generating function with brute force, DP and the
    /// continued-fraction convergent on a grid.
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k_max: usize,
    },
    /// Simulate the walk on 0..=m started at m-1.
    Walk {
        #[arg(long)]
        m: u64,
        /// Right-step probability, "a/b" (exact comparisons) or a decimal.
        #[arg(long)]
        p: ProbabilityArg,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u64,
    },
    /// Coefficients of H_m, ascending.
    Hpoly {
        #[arg(long)]
        m: usize,
    },
}

struct Outcome {
    status: Status,
    parameters: Map<String, Value>,
    results: Value,
    csv: CsvTable,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = command_name(&cli.command);
    let outcome = match &cli.command {
        Command::Table { n, kmax } => commands::table(*n, *kmax),
        Command::Verify { n_max, k_max } => commands::verify(*n_max, *k_max),
        Command::Walk {
            m,
            p,
            trials,
            seed,
            max_steps,
        } => commands::walk(*m, p, *trials, *seed, *max_steps),
        Command::Hpoly { m } => commands::hpoly(*m),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let outcome = outcome.unwrap_or_else(|(parameters, err)| {
        eprintln!("error: {err}");
        Outcome {
            status: Status::Error,
            parameters,
            results: json!({ "error": err.to_string() }),
            csv: CsvTable::new(&["error"]).row([err.to_string()]),
        }
    });
    let record = OutputRecord {
        command: name.to_string(),
        parameters: outcome.parameters,
        results: outcome.results,
        status: outcome.status,
        elapsed_ms,
    };
    match cli.format {
        Format::Json => println!("{}", record.to_json()),
        Format::Csv => print!("{}", outcome.csv),
    }
    ExitCode::from(record.status.exit_code())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Table { .. } => "table",
        Command::Verify { .. } => "verify",
        Command::Walk { .. } => "walk",
        Command::Hpoly { .. } => "hpoly",
    }
}

mod commands {
    use dyckwalk::{compare_grid, count_table, fl_closed, h_poly, l_exact, pi_closed};
    use dyckwalk::{simulate, Error, WalkConfig};
    use num_traits::ToPrimitive;
    use serde_json::{json, Map, Value};

    use super::Outcome;
    use crate::output::{float, CsvTable, Status};
    use crate::probability::ProbabilityArg;

    type CmdResult = Result<Outcome, (Map<String, Value>, Error)>;

    fn params(v: Value) -> Map<String, Value> {
        match v {
            Value::Object(m) => m,
            _ => unreachable!("parameters are built from object literals"),
        }
    }

    pub fn table(n: usize, kmax: usize) -> CmdResult {
        let parameters = params(json!({ "n": n, "kmax": kmax }));
        let t = count_table(n, kmax).map_err(|e| (parameters.clone(), e))?;
        let counts: Vec<String> = t.counts.iter().map(ToString::to_string).collect();
        let mut csv = CsvTable::new(&["n", "k", "count"]);
        for (k, c) in counts.iter().enumerate() {
            csv = csv.row([n.to_string(), k.to_string(), c.clone()]);
        }
        Ok(Outcome {
            status: Status::Ok,
            parameters,
            results: json!({ "n": n, "kmax": kmax, "counts": counts }),
            csv,
        })
    }

    pub fn verify(n_max: usize, k_max: usize) -> CmdResult {
        let parameters = params(json!({ "n_max": n_max, "k_max": k_max }));
        let report = compare_grid(n_max, k_max).map_err(|e| (parameters.clone(), e))?;
        let mut csv = CsvTable::new(&[
            "n",
            "k",
            "genfunc",
            "bruteforce",
            "dp",
            "continued_fraction",
        ]);
        let mut mismatches = Vec::new();
        for m in &report.mismatches {
            let bf = m.bruteforce.as_ref().map(ToString::to_string);
            csv = csv.row([
                m.n.to_string(),
                m.k.to_string(),
                m.genfunc.to_string(),
                bf.clone().unwrap_or_default(),
                m.dp.to_string(),
                m.continued_fraction.to_string(),
            ]);
            mismatches.push(json!({
                "n": m.n,
                "k": m.k,
                "genfunc": m.genfunc.to_string(),
                "bruteforce": bf,
                "dp": m.dp.to_string(),
                "continued_fraction": m.continued_fraction.to_string(),
            }));
        }
        let status = if report.all_agree() {
            Status::Ok
        } else {
            Status::Mismatch
        };
        Ok(Outcome {
            status,
            parameters,
            results: json!({
                "n_max": n_max,
                "k_max": k_max,
                "cells_checked": report.cells_checked,
                "bruteforce_cells": report.bruteforce_cells,
                "mismatches": mismatches,
            }),
            csv,
        })
    }

    pub fn walk(m: u64, p: &ProbabilityArg, trials: u64, seed: u64, max_steps: u64) -> CmdResult {
        let parameters = params(json!({
            "m": m,
            "p": p.to_string(),
            "p_path": p.path(),
            "trials": trials,
            "seed": seed,
            "max_steps": max_steps,
        }));
        let cfg = WalkConfig::new(m, p.value(), trials, seed).with_max_steps(max_steps);
        let stats = simulate(&cfg).map_err(|e| (parameters.clone(), e))?;

        let mut note = None;
        let exact = match p.exact() {
            None => {
                note = Some("decimal p: simulation only, exact values not computed".to_string());
                None
            }
            Some(q) => {
                let m = m as usize;
                match (pi_closed(m, q), l_exact(m, q), fl_closed(m, q)) {
                    (Ok(pi), Ok(l), Ok(fl)) => Some((pi, l, fl)),
                    (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                        note = Some(format!("exact values unavailable: {e}"));
                        None
                    }
                }
            }
        };
        if stats.is_unreliable() {
            let msg = format!(
                "{} trials hit the step cap; estimates are unreliable",
                stats.truncated
            );
            eprintln!("warning: {msg}");
            note = Some(match note {
                Some(n) => format!("{n}; {msg}"),
                None => msg,
            });
        }

        let (pi_exact, l_exact_v, fl_exact, pi_z, l_z) = match &exact {
            Some((pi, l, fl)) => {
                let pi_f = pi.to_f64().unwrap_or(f64::NAN);
                let l_f = l.to_f64().unwrap_or(f64::NAN);
                (
                    Some(pi.to_string()),
                    Some(l.to_string()),
                    Some(fl.to_string()),
                    float(stats.pi_z(pi_f)),
                    float(stats.l_z(l_f)),
                )
            }
            None => (None, None, None, Value::Null, Value::Null),
        };
        let results = json!({
            "m": m,
            "p": p.to_string(),
            "trials_run": stats.trials_run,
            "hits_right": stats.hits_right,
            "hits_left": stats.hits_left,
            "truncated": stats.truncated,
            "pi_hat": float(stats.pi_hat),
            "pi_se": float(stats.pi_se),
            "l_hat": float(stats.l_hat),
            "l_se": float(stats.l_se),
            "pi_exact": pi_exact,
            "l_exact": l_exact_v,
            "fl_exact": fl_exact,
            "pi_z": pi_z,
            "l_z": l_z,
            "note": note,
        });
        Ok(Outcome {
            status: Status::Ok,
            parameters,
            csv: CsvTable::from_object(&results),
            results,
        })
    }

    pub fn hpoly(m: usize) -> CmdResult {
        let parameters = params(json!({ "m": m }));
        let h = h_poly(m).map_err(|e| (parameters.clone(), e))?;
        let coeffs: Vec<String> = h.coeffs().iter().map(ToString::to_string).collect();
        let mut csv = CsvTable::new(&["m", "j", "coeff"]);
        for (j, c) in coeffs.iter().enumerate() {
            csv = csv.row([m.to_string(), j.to_string(), c.clone()]);
        }
        Ok(Outcome {
            status: Status::Ok,
            parameters,
            results: json!({ "m": m, "coeffs": coeffs, "polynomial": h.to_string() }),
            csv,
        })
    }
}
