//! Command-line front end: argument parsing, dispatch, JSON/DOT output.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::ar_quiver;
use crate::catalog::{parse_module_expr, SingularitySpec, StableModule};
use crate::degen;
use crate::error::{Error, Result};
use crate::k0;
use crate::oracle::{self, DegreeBound, FieldChoice, OracleConfig};
use crate::verify;

pub const SCHEMA: &str = "cm-degen/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cm-degen",
    version,
    about = "Exact stable hom order, Grothendieck group and stable degeneration \
             order for Cohen-Macaulay modules over A_n simple singularities"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the stable indecomposable modules of a ring.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Print the AR triangles and the shift-invariance report.
    Quiver {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Compute the full stable-Hom dimension table via the oracle.
    HomTable {
        #[arg(long)]
        ring: String,
        /// Coefficient field: `qi` or `fp:<p>` with p = 1 mod 4.
        #[arg(long, default_value = "qi")]
        field: String,
        /// Truncation window: a fixed degree or `auto`.
        #[arg(long, default_value = "auto")]
        degree_bound: String,
        /// Include the per-cell stabilization certificates.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// Present the Grothendieck group and reduce classes of modules.
    K0 {
        #[arg(long)]
        ring: String,
        /// Module expressions whose canonical classes to print.
        exprs: Vec<String>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Decide the hom order or the stable degeneration order for a pair.
    Order {
        #[arg(long)]
        ring: String,
        /// Compare in the hom order: --hom "<expr>" "<expr>".
        #[arg(long, num_args = 2, value_names = ["M", "N"], conflicts_with = "st")]
        hom: Option<Vec<String>>,
        /// Compare in the stable degeneration order: --st "<expr>" "<expr>".
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        st: Option<Vec<String>>,
        /// Attach a constructive witness to a positive --st decision.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// Construct the degeneration witness triangle Z -> M+Z -> N.
    Witness {
        #[arg(long)]
        ring: String,
        m: String,
        n: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Produce a chain of single-step degenerations from M to N.
    Chain {
        #[arg(long)]
        ring: String,
        m: String,
        n: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Hasse diagram of the degeneration order on bounded modules.
    Hasse {
        #[arg(long)]
        ring: String,
        /// Total multiplicity bound for the node set.
        #[arg(long)]
        bound: u32,
        /// Restrict nodes to the K0 class of this expression.
        #[arg(long)]
        class: Option<String>,
        /// Write Graphviz DOT to a path, or `-` for standard output.
        #[arg(long)]
        dot: Option<String>,
        /// Node count cap.
        #[arg(long, default_value_t = 5000)]
        node_cap: usize,
        #[arg(long)]
        json: Option<String>,
    },
    /// Run the reproduction checks and report pass/fail.
    Verify {
        #[arg(long)]
        ring: String,
        /// Total multiplicity bound for exhaustive scans.
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Run a single named check instead of the full set.
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        json: Option<String>,
    },
}

fn parse_ring(text: &str) -> Result<SingularitySpec> {
    text.parse()
}

fn parse_field(text: &str) -> Result<FieldChoice> {
    if text == "qi" {
        return Ok(FieldChoice::Qi);
    }
    if let Some(p) = text.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad prime in field spec `{text}`")))?;
        return Ok(FieldChoice::Fp(p));
    }
    Err(Error::InvalidSpec(format!(
        "unknown field `{text}`; expected `qi` or `fp:<p>`"
    )))
}

fn parse_degree_bound(text: &str) -> Result<DegreeBound> {
    if text.eq_ignore_ascii_case("auto") {
        return Ok(DegreeBound::Auto);
    }
    text.parse::<u32>()
        .map(DegreeBound::Fixed)
        .map_err(|_| Error::InvalidSpec(format!("bad degree bound `{text}`; expected uint or `auto`")))
}

fn emit(target: &Option<String>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    write_out(target.as_deref().unwrap_or("-"), &format!("{text}\n"))
}

fn write_out(target: &str, text: &str) -> Result<()> {
    if target == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Internal(format!("stdout: {e}")))
    } else {
        std::fs::write(target, text).map_err(|e| Error::Internal(format!("{target}: {e}")))
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| Error::Internal(format!("serialization: {e}")))
}

fn module_pair(
    spec: SingularitySpec,
    m: &str,
    n: &str,
) -> Result<(StableModule, StableModule)> {
    Ok((parse_module_expr(spec, m)?, parse_module_expr(spec, n)?))
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Internal(_) | Error::NonStabilizing { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Parses the process arguments and runs the command; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version via this path with status 0
            let code = if e.exit_code() == 0 { EXIT_OK } else { EXIT_USAGE };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Classify { ring, json } => {
            let spec = parse_ring(&ring)?;
            let reduced = spec.knoerrer_reduce();
            emit(
                &json,
                &json!({
                    "schema": SCHEMA,
                    "ring": spec.to_string(),
                    "reduced_ring": reduced.to_string(),
                    "indecomposables": reduced.classify(),
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Quiver { ring, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let triangles: Vec<Value> = ar_quiver::ar_triangles(spec)
                .iter()
                .map(|t| {
                    json!({
                        "end": t.end,
                        "translate": t.translate,
                        "middle": t.middle,
                    })
                })
                .collect();
            let (holds, reports) = ar_quiver::star_condition(spec);
            let star: Vec<Value> = reports
                .iter()
                .map(|r| json!({"end": r.end, "holds": r.holds}))
                .collect();
            emit(
                &json,
                &json!({
                    "schema": SCHEMA,
                    "ring": spec.to_string(),
                    "triangles": triangles,
                    "star_condition": {"holds": holds, "per_end": star},
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::HomTable { ring, field, degree_bound, certify, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let cfg = OracleConfig {
                field: parse_field(&field)?,
                degree_bound: parse_degree_bound(&degree_bound)?,
                cap: None,
            };
            let (table, certs) = oracle::hom_table_with_config(spec, &cfg)?;
            let mut out = json!({
                "schema": SCHEMA,
                "ring": spec.to_string(),
                "labels": table.labels(),
                "dims": table.dims(),
            });
            if certify {
                let cv: Vec<Value> = certs
                    .iter()
                    .map(|c| {
                        json!({
                            "from": c.from,
                            "to": c.to,
                            "rounds": c.rounds,
                            "stabilized": c.stabilized,
                        })
                    })
                    .collect();
                out["certificates"] = Value::Array(cv);
            }
            emit(&json, &out)?;
            Ok(EXIT_OK)
        }
        Command::K0 { ring, exprs, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let pres = k0::k0_presentation(spec)?;
            let mut classes = serde_json::Map::new();
            for e in &exprs {
                let m = parse_module_expr(spec, e)?;
                classes.insert(e.clone(), to_value(&pres.class(&m)?)?);
            }
            emit(
                &json,
                &json!({
                    "schema": SCHEMA,
                    "ring": spec.to_string(),
                    "group": pres.group_name(),
                    "invariant_factors": pres.invariant_factors,
                    "generators": pres.generators,
                    "relations": pres.relations,
                    "classes": classes,
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Order { ring, hom, st, witness, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            if let Some(pair) = hom {
                let (m, n) = module_pair(spec, &pair[0], &pair[1])?;
                let table = oracle::hom_table(spec)?;
                let leq = table.leq_hom(&m, &n)?;
                let geq = table.leq_hom(&n, &m)?;
                emit(
                    &json,
                    &json!({
                        "schema": SCHEMA,
                        "ring": spec.to_string(),
                        "order": "hom",
                        "leq": leq,
                        "geq": geq,
                        "delta": to_value(&table.delta(&m, &n)?)?,
                    }),
                )?;
                Ok(if leq { EXIT_OK } else { EXIT_NEGATIVE })
            } else if let Some(pair) = st {
                let (m, n) = module_pair(spec, &pair[0], &pair[1])?;
                let d = degen::leq_st(spec, &m, &n, witness)?;
                emit(
                    &json,
                    &json!({
                        "schema": SCHEMA,
                        "ring": spec.to_string(),
                        "order": "st",
                        "leq": d.leq,
                        "leq_hom": d.leq_hom,
                        "same_class": d.same_class,
                        "certificate": to_value(&d.certificate)?,
                    }),
                )?;
                Ok(if d.leq { EXIT_OK } else { EXIT_NEGATIVE })
            } else {
                Err(Error::InvalidSpec(
                    "order needs either --hom or --st with two expressions".into(),
                ))
            }
        }
        Command::Witness { ring, m, n, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let (m, n) = module_pair(spec, &m, &n)?;
            match degen::witness(spec, &m, &n)? {
                Some(w) => {
                    emit(
                        &json,
                        &json!({
                            "schema": SCHEMA,
                            "ring": spec.to_string(),
                            "found": true,
                            "witness": to_value(&w)?,
                        }),
                    )?;
                    Ok(EXIT_OK)
                }
                None => {
                    emit(
                        &json,
                        &json!({
                            "schema": SCHEMA,
                            "ring": spec.to_string(),
                            "found": false,
                        }),
                    )?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Chain { ring, m, n, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let (m, n) = module_pair(spec, &m, &n)?;
            match degen::chain(spec, &m, &n)? {
                Some(c) => {
                    emit(
                        &json,
                        &json!({
                            "schema": SCHEMA,
                            "ring": spec.to_string(),
                            "found": true,
                            "chain": to_value(&c)?,
                        }),
                    )?;
                    Ok(EXIT_OK)
                }
                None => {
                    emit(
                        &json,
                        &json!({
                            "schema": SCHEMA,
                            "ring": spec.to_string(),
                            "found": false,
                        }),
                    )?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Hasse { ring, bound, class, dot, node_cap, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let filter = class
                .map(|e| parse_module_expr(spec, &e))
                .transpose()?;
            let h = degen::hasse(spec, bound, filter.as_ref(), node_cap)?;
            if let Some(target) = &dot {
                write_out(target, &h.to_dot())?;
            }
            if dot.as_deref() != Some("-") || json.is_some() {
                emit(
                    &json,
                    &json!({
                        "schema": SCHEMA,
                        "ring": spec.to_string(),
                        "bound": bound,
                        "nodes": h.nodes,
                        "edges": h.edges,
                    }),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { ring, bound, check, json } => {
            let spec = parse_ring(&ring)?.knoerrer_reduce();
            let reports = match check.as_deref() {
                None => verify::verify_all(spec, bound)?,
                Some("mesh_relation") => vec![verify::verify_mesh(spec.n, spec.d)?],
                Some("theorem_odd_chains") => vec![verify::verify_theorem_odd(spec.n)?],
                Some("order_equivalence") => {
                    vec![verify::verify_equivalence(spec.n, spec.d, bound)?]
                }
                Some("hom_order_counterexample") => {
                    vec![verify::verify_counterexample(spec.n, spec.d)?]
                }
                Some(other) => {
                    return Err(Error::InvalidSpec(format!("unknown check `{other}`")))
                }
            };
            let all_pass = reports.iter().all(|r| r.pass);
            emit(
                &json,
                &json!({
                    "schema": SCHEMA,
                    "ring": spec.to_string(),
                    "reports": to_value(&reports)?,
                    "all_pass": all_pass,
                }),
            )?;
            Ok(if all_pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

/// Configures the rayon pool from `CM_DEGEN_THREADS` when built with the
/// `parallel` feature.
pub fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("CM_DEGEN_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_and_bound_parsing() {
        assert_eq!(parse_field("qi").unwrap(), FieldChoice::Qi);
        assert_eq!(parse_field("fp:13").unwrap(), FieldChoice::Fp(13));
        assert!(parse_field("float").is_err());
        assert_eq!(parse_degree_bound("auto").unwrap(), DegreeBound::Auto);
        assert_eq!(parse_degree_bound("12").unwrap(), DegreeBound::Fixed(12));
        assert!(parse_degree_bound("-1").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(main_with_args(["cm-degen", "nope"]), EXIT_USAGE);
        assert_eq!(
            main_with_args(["cm-degen", "classify", "--ring", "B:1:1"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn order_decisions_drive_exit_codes() {
        assert_eq!(
            main_with_args(["cm-degen", "order", "--ring", "A:5:1", "--st", "I1", "I2"]),
            EXIT_OK
        );
        assert_eq!(
            main_with_args(["cm-degen", "order", "--ring", "A:1:1", "--st", "N+", "N-"]),
            EXIT_NEGATIVE
        );
    }
}
