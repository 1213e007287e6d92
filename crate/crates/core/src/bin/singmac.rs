use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use singmac::cherednik::{apply_cherednik, apply_dunkl, apply_jucys_poly};
use singmac::combinat::{enumerate_rsyt, Composition, Partition};
use singmac::critical::find_critical_partners;
use singmac::macdonald::{build_macdonald, monic_normalize};
use singmac::polyring::MacPoly;
use singmac::quasistair::build_quasistaircase;
use singmac::scalars::{normalize_specialization, QtField, Ring, SpecField};
use singmac::verify::{
    enumerate_singular_params, specialize_macdonald, verify_singular, Status, Strategy,
    VerifyOptions,
};
use singmac::Error;

#[derive(Parser)]
#[command(
    name = "singmac",
    version,
    about = "Singular nonsymmetric Macdonald polynomials"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quasistaircase data
    Qs {
        #[command(subcommand)]
        cmd: QsCmd,
    },
    /// Macdonald polynomials
    Mac {
        #[command(subcommand)]
        cmd: MacCmd,
    },
    /// Critical pairs
    Critical {
        #[command(subcommand)]
        cmd: CriticalCmd,
    },
    /// Singularity checks
    Singular {
        #[command(subcommand)]
        cmd: SingularCmd,
    },
}

#[derive(Subcommand)]
enum QsCmd {
    Info {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long = "K")]
        k: u32,
        #[arg(long = "N")]
        big_n: usize,
    },
    /// Reverse standard Young tableaux of a shape
    Tableaux {
        #[arg(long)]
        shape: Composition,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    #[value(name = "Ti")]
    Ti,
    #[value(name = "Ti-inv")]
    TiInv,
    Pi,
    Xi,
    Dunkl,
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Substitute,
    Project,
}

#[derive(Subcommand)]
enum MacCmd {
    /// Build M_α over Q(q,t), or at a specialization with --at
    Build {
        #[arg(long)]
        alpha: Composition,
        /// Number of variables (pads α with zeros)
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        monic: bool,
        /// Specialization m,n,k
        #[arg(long)]
        at: Option<Composition>,
        #[arg(long, value_enum, default_value = "project")]
        strategy: StrategyArg,
    },
    /// Apply an operator to M_α over Q(q,t)
    Act {
        #[arg(long)]
        op: Op,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        alpha: Composition,
        #[arg(long = "N")]
        big_n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CriticalCmd {
    Search {
        #[arg(long)]
        alpha: Composition,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_len: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SingularCmd {
    Verify {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long = "K")]
        big_k: u32,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Run the polynomial checks regardless of size
        #[arg(long)]
        full: bool,
    },
    /// Singular values for a two-row rectangle label
    Params {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        tau2: usize,
        #[arg(long = "N")]
        big_n: usize,
    },
}

struct Out {
    json: Value,
    text: String,
    ok: bool,
}

impl Out {
    fn ok(json: Value, text: String) -> Self {
        Out {
            json,
            text,
            ok: true,
        }
    }
}

fn pad(alpha: Composition, n: Option<usize>) -> Composition {
    match n {
        Some(n) if n > alpha.len() => alpha.padded(n),
        _ => alpha,
    }
}

fn poly_out<R: Ring>(ring: &R, p: &MacPoly<R>) -> Out {
    Out::ok(p.to_json(|c| Value::String(ring.show(c))), p.to_text(ring))
}

fn run(cli: Cli) -> singmac::Result<Out> {
    match cli.cmd {
        Cmd::Qs {
            cmd: QsCmd::Info { m, n, d, k, big_n },
        } => {
            let q = build_quasistaircase(m, n, d, k, big_n)?;
            let intervals: Vec<_> = (1..=q.rows()).map(|j| q.interval(j)).collect();
            let mut v = serde_json::to_value(&q).map_err(|e| Error::Internal(e.to_string()))?;
            v["intervals"] = json!(intervals);
            let text = format!(
                "λ = {}\nτ = {}\nν = {:?}\n{}",
                q.lambda,
                q.tau,
                q.nu,
                intervals
                    .iter()
                    .enumerate()
                    .map(|(j, (a, b))| format!("I_{} = [{a}, {b}]", j + 1))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            Ok(Out::ok(v, text))
        }
        Cmd::Qs {
            cmd: QsCmd::Tableaux { shape },
        } => {
            let shape = Partition::new(shape.0)?;
            let ts = enumerate_rsyt(&shape)?;
            let rows: Vec<Value> = ts
                .iter()
                .map(|t| json!({"rows": t.rows(), "content": t.content_vector(), "inv": t.inversions()}))
                .collect();
            let text = ts
                .iter()
                .map(|t| {
                    format!(
                        "{:?}  CT {:?}  inv {}",
                        t.rows(),
                        t.content_vector(),
                        t.inversions()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Out::ok(json!(rows), text))
        }
        Cmd::Mac {
            cmd:
                MacCmd::Build {
                    alpha,
                    big_n,
                    monic,
                    at,
                    strategy,
                },
        } => {
            let alpha = pad(alpha, big_n);
            match at {
                None => {
                    let p = build_macdonald(&alpha)?;
                    let p = if monic {
                        monic_normalize(&QtField, &p)?
                    } else {
                        p
                    };
                    Ok(poly_out(&QtField, &p))
                }
                Some(s) => {
                    let [m, n, k] = s.parts() else {
                        return Err(Error::Parse("--at takes m,n,k".into()));
                    };
                    let spec = normalize_specialization(*m as u64, *n as u64, *k as i64)?;
                    let st = match strategy {
                        StrategyArg::Substitute => Strategy::Substitute,
                        StrategyArg::Project => Strategy::Project,
                    };
                    let field = SpecField::new(&spec);
                    let p = specialize_macdonald(&alpha, &spec, st)?;
                    let p = if monic {
                        monic_normalize(&field, &p)?
                    } else {
                        p
                    };
                    Ok(poly_out(&field, &p))
                }
            }
        }
        Cmd::Mac {
            cmd:
                MacCmd::Act {
                    op,
                    i,
                    alpha,
                    big_n,
                },
        } => {
            let alpha = pad(alpha, big_n);
            let p = build_macdonald(&alpha)?;
            let r = match op {
                Op::Ti => p.apply_ti(&QtField, i)?,
                Op::TiInv => p.apply_ti_inv(&QtField, i)?,
                Op::Pi => p.apply_shift(&QtField),
                Op::Xi => apply_cherednik(&QtField, &p, i)?,
                Op::Dunkl => apply_dunkl(&QtField, &p, i)?,
                Op::Phi => apply_jucys_poly(&QtField, &p, i)?,
            };
            Ok(poly_out(&QtField, &r))
        }
        Cmd::Critical {
            cmd:
                CriticalCmd::Search {
                    alpha,
                    m,
                    n,
                    max_len,
                },
        } => {
            let l = max_len.unwrap_or(alpha.len());
            let ps = find_critical_partners(&alpha, m, n, l)?;
            let text = if ps.is_empty() {
                "no partners".into()
            } else {
                ps.iter()
                    .map(|p| format!("β = ({})  ℓ = {}  p = {:?}", p.beta, p.len, p.p))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let v: Vec<Value> = ps
                .iter()
                .map(|p| json!({"beta": p.beta, "p": p.p, "len": p.len}))
                .collect();
            Ok(Out::ok(json!(v), text))
        }
        Cmd::Singular {
            cmd:
                SingularCmd::Verify {
                    m,
                    n,
                    d,
                    big_k,
                    big_n,
                    k,
                    full,
                },
        } => {
            let q = build_quasistaircase(m, n, d, big_k, big_n)?;
            let spec = normalize_specialization(m as u64, n as u64, k)?;
            let opts = VerifyOptions {
                full: full.then_some(true),
                ..Default::default()
            };
            let r = verify_singular(&q, &spec, &opts)?;
            let text = r
                .checks
                .iter()
                .map(|c| {
                    let s = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Skipped => "skip",
                    };
                    format!("{s:5} {:22} {}", c.name, c.detail)
                })
                .collect::<Vec<_>>()
                .join("\n");
            let ok = r.passed();
            let v = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(Out { json: v, text, ok })
        }
        Cmd::Singular {
            cmd: SingularCmd::Params { m, tau2, big_n },
        } => {
            let lam = Partition::new(vec![m; tau2])?;
            let ps = enumerate_singular_params(&lam, big_n)?;
            let text = ps
                .iter()
                .map(|p| {
                    format!(
                        "{}  (ω^{{m/g}} of order {}, k ∈ {:?})",
                        p.relation, p.omega_order, p.ks
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Out::ok(json!(ps), text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Format::Text => out.text,
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => 3,
                Error::Pole { .. } | Error::CriticalObstruction { .. } | Error::EigenCheck(_) => 1,
                _ => 2,
            })
        }
    }
}
