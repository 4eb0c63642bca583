//! Argument parsing and subcommand dispatch.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use jumpstat_core::genfunc::{
    self, solve_catalan, solve_depth, solve_jump_distance, solve_jumps, solve_trivariate, Theorem,
};
use jumpstat_core::guess::{guess_rational, limit_at_infinity, Limit, DEFAULT_HOLDOUT};
use jumpstat_core::moments::{
    check_closed_forms, moment_table, reference_forms, MomentSpec, Statistic,
};
use jumpstat_core::trees::{
    compute_stats, enumerate_trees_capped, BinaryTree, DEFAULT_ENUMERATION_CAP,
};
use jumpstat_core::{Error, ExactRational};
use num_bigint::BigInt;
use serde::Serialize;

use crate::format::{self, FormCheckJson, GuessJson, StatsJson, VerdictJson};

/// Largest series order or tree size the CLI will compute.
pub const ORDER_LIMIT: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "jumpstat",
    version,
    about = "Exact jump statistics of full binary trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print {v, j, d, jd} for a tree such as "[[.,.],.]".
    Stats {
        tree: String,
        #[arg(long, env = "JUMPSTAT_MAX_DEPTH", default_value_t = 1_000_000)]
        max_depth: usize,
    },
    /// Stream every tree with N internal vertices.
    Enumerate {
        n: usize,
        #[arg(long, env = "JUMPSTAT_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        /// Only print the number of trees.
        #[arg(long)]
        count: bool,
        #[arg(long, env = "JUMPSTAT_FORMAT", value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Print a generating function as JSON: f, F, H, J or K.
    Series {
        name: String,
        #[arg(long, env = "JUMPSTAT_ORDER", default_value_t = 10)]
        order: usize,
    },
    /// Check a theorem (0-6, or "all") as an exact identity.
    Verify {
        theorem: String,
        #[arg(long, env = "JUMPSTAT_ORDER", default_value_t = genfunc::DEFAULT_VERIFY_ORDER)]
        order: usize,
        #[arg(long, env = "JUMPSTAT_ORACLE_CAP", default_value_t = 12)]
        oracle_cap: usize,
    },
    /// Moment table of "jumps" or "jumpdist".
    Moments {
        stat: String,
        #[arg(
            long = "max-order",
            short = 'r',
            env = "JUMPSTAT_MAX_ORDER",
            default_value_t = 4
        )]
        max_order: usize,
        #[arg(long, env = "JUMPSTAT_NMAX", default_value_t = jumpstat_core::moments::DEFAULT_NMAX)]
        nmax: usize,
        #[arg(long, env = "JUMPSTAT_FORMAT", value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Compare against the printed closed forms; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Guess a rational function of n for a moment sequence.
    Guess {
        stat: String,
        /// mean, variance, raw:R, central:R, scaled:R (even R), scaled-squared:R
        moment: String,
        #[arg(long, env = "JUMPSTAT_FROM", default_value_t = 2)]
        from: usize,
        #[arg(long, env = "JUMPSTAT_TO", default_value_t = 40)]
        to: usize,
        #[arg(long, env = "JUMPSTAT_HOLDOUT", default_value_t = DEFAULT_HOLDOUT)]
        holdout: usize,
        #[arg(long, env = "JUMPSTAT_MAX_DEGREE", default_value_t = 30)]
        max_degree: usize,
    },
    /// Limits as n -> infinity of the printed formulas and of guessed scaled moments.
    Limits {
        #[arg(long, env = "JUMPSTAT_MAX_ORDER", default_value_t = 10)]
        max_order: usize,
        #[arg(long, env = "JUMPSTAT_TO", default_value_t = 40)]
        to: usize,
        #[arg(long, env = "JUMPSTAT_HOLDOUT", default_value_t = DEFAULT_HOLDOUT)]
        holdout: usize,
    },
}

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// A check ran and failed (exit 1). Output has already been written.
    Failed,
    /// Bad arguments or input (exit 2).
    Usage(String),
    /// Refused for size reasons (exit 3).
    Resource(String),
    /// Writing output failed.
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Failed => f.write_str("check failed"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Resource(m) => write!(f, "refused: {m}"),
            CliError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::TooDeep { .. } => CliError::Resource(e.to_string()),
            Error::Parse { .. } | Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn emit<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn within_limit(what: &str, n: usize) -> Result<(), CliError> {
    if n > ORDER_LIMIT {
        return Err(CliError::Resource(format!(
            "{what} {n} exceeds limit {ORDER_LIMIT}"
        )));
    }
    Ok(())
}

fn parse_stat(s: &str) -> Result<Statistic, CliError> {
    Ok(s.parse()?)
}

/// Runs one subcommand, writing its output to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Stats { tree, max_depth } => {
            let tree = BinaryTree::parse_with_limit(&tree, max_depth)?;
            emit(out, &StatsJson::from(compute_stats(&tree)))
        }
        Command::Enumerate {
            n,
            cap,
            count,
            format,
        } => {
            let trees = enumerate_trees_capped(n, cap)?;
            if count {
                return emit(out, &serde_json::json!({ "n": n, "count": trees.count() }));
            }
            for tree in trees {
                match format {
                    ListFormat::Text => writeln!(out, "{tree}")?,
                    ListFormat::Json => {
                        let s = compute_stats(&tree);
                        let line = serde_json::json!({
                            "tree": tree.to_string(), "v": s.v, "j": s.j, "d": s.d, "jd": s.jd
                        });
                        writeln!(out, "{line}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Series { name, order } => {
            within_limit("order", order)?;
            let s = match name.as_str() {
                "f" | "catalan" => solve_catalan(order),
                "F" | "trivariate" => solve_trivariate(order)?,
                "H" | "jumps" => solve_jumps(order)?,
                "J" | "depth" => solve_depth(order)?,
                "K" | "jumpdist" => solve_jump_distance(order)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown series {other:?}; use f, F, H, J or K"
                    )))
                }
            };
            emit(out, &format::series_to_json(&s))
        }
        Command::Verify {
            theorem,
            order,
            oracle_cap,
        } => {
            within_limit("order", order)?;
            if oracle_cap > DEFAULT_ENUMERATION_CAP {
                return Err(CliError::Resource(format!(
                    "oracle cap {oracle_cap} exceeds enumeration cap {DEFAULT_ENUMERATION_CAP}"
                )));
            }
            let theorems: Vec<Theorem> = if theorem == "all" {
                Theorem::ALL.to_vec()
            } else {
                let n: u8 = theorem.parse().map_err(|_| {
                    CliError::Usage(format!("theorem must be 0-6 or all, got {theorem:?}"))
                })?;
                vec![Theorem::from_number(n)
                    .ok_or_else(|| CliError::Usage(format!("no theorem {n}")))?]
            };
            let verdicts = theorems
                .iter()
                .map(|&t| genfunc::verify(t, order, oracle_cap))
                .collect::<Result<Vec<_>, _>>()?;
            let all_pass = verdicts.iter().all(|v| v.pass);
            let json: Vec<VerdictJson> = verdicts.iter().map(VerdictJson::from).collect();
            if json.len() == 1 {
                emit(out, &json[0])?;
            } else {
                emit(out, &json)?;
            }
            if all_pass {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Moments {
            stat,
            max_order,
            nmax,
            format,
            check,
        } => {
            let stat = parse_stat(&stat)?;
            within_limit("nmax", nmax)?;
            within_limit("max order", max_order)?;
            let table = moment_table(stat, max_order, nmax)?;
            let checks = check.then(|| check_closed_forms(&table, &reference_forms()));
            match format {
                TableFormat::Json => {
                    let mut value = serde_json::to_value(format::moment_table_json(&table))
                        .map_err(|e| CliError::Io(e.into()))?;
                    if let Some(c) = &checks {
                        value["checks"] = serde_json::to_value(
                            c.iter().map(FormCheckJson::from).collect::<Vec<_>>(),
                        )
                        .map_err(|e| CliError::Io(e.into()))?;
                    }
                    emit(out, &value)?;
                }
                TableFormat::Csv => {
                    format::write_moment_csv(&table, &mut *out)
                        .map_err(|e| CliError::Io(e.into()))?;
                    if let Some(c) = &checks {
                        // Keep stdout a clean CSV; the verdicts go to stderr.
                        for c in c {
                            eprintln!("{}: {}", c.label, if c.pass { "pass" } else { "FAIL" });
                        }
                    }
                }
            }
            match checks {
                Some(c) if !c.iter().all(|c| c.pass) => Err(CliError::Failed),
                _ => Ok(()),
            }
        }
        Command::Guess {
            stat,
            moment,
            from,
            to,
            holdout,
            max_degree,
        } => {
            let stat = parse_stat(&stat)?;
            let spec: MomentSpec = moment.parse()?;
            within_limit("to", to)?;
            if from > to {
                return Err(CliError::Usage("--from must not exceed --to".into()));
            }
            let table = moment_table(stat, spec.order().max(2), to.max(2))?;
            let points = table.sequence(spec, from..=to);
            let g = guess_rational(&points, max_degree, holdout).map_err(|e| {
                let _ = emit(
                    out,
                    &serde_json::json!({
                        "stat": stat.name(), "moment": spec.to_string(), "error": e.to_string(),
                        "attempted": e.attempted,
                    }),
                );
                CliError::Failed
            })?;
            let limit = limit_at_infinity(&g.formula);
            emit(
                out,
                &GuessJson::new(
                    stat.name(),
                    &spec.to_string(),
                    (from, to),
                    holdout,
                    &g,
                    &limit,
                ),
            )
        }
        Command::Limits {
            max_order,
            to,
            holdout,
        } => {
            within_limit("to", to)?;
            within_limit("max order", max_order)?;
            let reference: Vec<_> = reference_forms()
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "theorem": f.label, "stat": f.stat.name(), "moment": f.spec.to_string(),
                        "formula": f.formula.render(), "limit": limit_at_infinity(&f.formula).to_string(),
                    })
                })
                .collect();
            let table = moment_table(Statistic::Jumps, max_order.max(2), to.max(2))?;
            let mut guessed = Vec::new();
            let mut all_normal = true;
            for r in (2..=max_order).step_by(2) {
                let points = table.sequence(MomentSpec::Scaled(r), 2..=to);
                let normal = normal_moment(r);
                let (formula, limit) = match guess_rational(&points, 30, holdout) {
                    Ok(g) => (Some(g.formula.render()), limit_at_infinity(&g.formula)),
                    Err(_) => (None, Limit::Divergent),
                };
                let matches = limit.value().as_ref() == Some(&normal);
                all_normal &= matches;
                guessed.push(serde_json::json!({
                    "stat": "jumps", "moment": MomentSpec::Scaled(r).to_string(), "formula": formula,
                    "limit": limit.to_string(), "normal": format::rational(&normal), "matches_normal": matches,
                }));
            }
            emit(
                out,
                &serde_json::json!({ "reference": reference, "guessed": guessed }),
            )?;
            if all_normal {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
    }
}

/// `(2k)! / (2^k k!)`, the `2k`-th moment of a standard normal variable.
pub fn normal_moment(order: usize) -> ExactRational {
    let k = order / 2;
    let v: BigInt = (1..=k).map(|i| BigInt::from(2 * i - 1)).product();
    ExactRational::from_integer(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<(), CliError>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("jumpstat").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let r = run(cli, &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn normal_moments() {
        let want = [1, 3, 15, 105, 945];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(
                normal_moment(2 * (k + 1)),
                ExactRational::from_integer((*w).into())
            );
        }
    }

    #[test]
    fn stats_subcommand() {
        let (r, out) = run_args(&["stats", "[[.,.],[.,.]]"]);
        r.unwrap();
        let v: StatsJson = serde_json::from_str(&out).unwrap();
        assert_eq!(
            v,
            StatsJson {
                v: 3,
                j: 1,
                d: 2,
                jd: 1
            }
        );
    }

    #[test]
    fn error_classes() {
        assert_eq!(run_args(&["stats", "[.,"]).0.unwrap_err().exit_code(), 2);
        assert_eq!(
            run_args(&["stats", "--max-depth", "1", "[.,[.,.]]"])
                .0
                .unwrap_err()
                .exit_code(),
            3
        );
        assert_eq!(run_args(&["enumerate", "17"]).0.unwrap_err().exit_code(), 3);
        assert_eq!(run_args(&["verify", "9"]).0.unwrap_err().exit_code(), 2);
        assert_eq!(run_args(&["series", "Z"]).0.unwrap_err().exit_code(), 2);
        assert_eq!(run_args(&["moments", "nope"]).0.unwrap_err().exit_code(), 2);
        assert_eq!(
            run_args(&["guess", "jumps", "scaled:3"])
                .0
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            run_args(&["verify", "0", "--order", "100000"])
                .0
                .unwrap_err()
                .exit_code(),
            3
        );
    }
}
