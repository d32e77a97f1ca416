//! `pring` — construct finite commutative rings from a small
//! expression language and decide p-ring / p-ideal / regularity
//! questions about them, by theorem fast path and by brute force.
//!
//! Exit codes: 0 verdict computed (whatever the verdict), 1 theorem
//! and oracle disagreed under `verify`, 2 usage or parse error,
//! 3 size guard refused the computation.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pring_core::decision::{
    has_nonzero_p_ideal_oracle, is_p_ring_oracle, is_p_ring_theorem, is_vnr_oracle,
    is_vnr_theorem, list_p_ideals_oracle, mccoy_decompose, p_ideals_of_zmod,
    quotient_has_p_ideal, DecisionReport, Method,
};
use pring_core::dsl::parse_ring_expr;
use pring_core::eval::{eval_ring_expr, poly_ast_to_fp, EvalContext, EvalError};
use pring_core::{FiniteRing, Limits, RingError, RingKind, RingSummary};

#[derive(Parser)]
#[command(
    name = "pring",
    version,
    about = "finite commutative ring toolkit: p-rings, p-ideals, regularity",
    after_help = "Ring expressions: Z/n, GF(p), R[x]/(f), products with '*', \
triv(R, module), amalg(A, B, hom, ideal), dup(A, ideal).\n\
Examples:\n  pring check \"Z/60\" --p 3\n  pring verify \"GF(2)[x]/(x^2+1)\" --p 2\n  \
pring decompose \"amalg(GF(2)*GF(2), Z/6, scale0:3, (3))\" --p 2\n  pring factor \"x^4-1\" --p 5"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report p-ring and von Neumann regularity verdicts for a ring
    Check(RingArgs),
    /// List the p-ideals of a ring (structural forms where available)
    Ideals(RingArgs),
    /// Decompose a finite p-ring as GF(p)^n with verified projections
    Decompose(RingArgs),
    /// Run theorem fast paths AND oracles; exit 1 if they ever disagree
    Verify(RingArgs),
    /// Factor a polynomial over GF(p) and list its roots
    Factor(FactorArgs),
}

#[derive(Args)]
struct RingArgs {
    /// Ring expression, e.g. "Z/60" or "amalg(GF(2)*GF(2), Z/6, scale0:3, (3))"
    expr: String,
    /// The prime p for p-ring / p-ideal questions
    #[arg(long)]
    p: u64,
    /// Emit the machine-readable report instead of text
    #[arg(long)]
    json: bool,
    /// Largest ring order that may be materialized
    #[arg(long, default_value_t = 4096)]
    max_order: u64,
    /// Largest ring order brute-force oracles will sweep
    #[arg(long, default_value_t = 256)]
    oracle_max: u64,
}

#[derive(Args)]
struct FactorArgs {
    /// Polynomial over GF(p), e.g. "x^4+2x^2+1"
    poly: String,
    /// The prime p
    #[arg(long)]
    p: u64,
    /// Emit the machine-readable report instead of text
    #[arg(long)]
    json: bool,
}

enum CliError {
    /// Exit 2: bad input (parse, semantic, composite p, ...).
    Usage(String),
    /// Exit 3: a size guard refused the computation.
    Guard(String),
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        if e.is_size_guard() {
            CliError::Guard(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        if e.size_guard {
            CliError::Guard(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes (e.g. `pring … | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(a) => cmd_check(&a),
        Command::Ideals(a) => cmd_ideals(&a),
        Command::Decompose(a) => cmd_decompose(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Factor(a) => cmd_factor(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn limits_of(args: &RingArgs) -> Limits {
    Limits {
        max_order: args.max_order,
        oracle_max: args.oracle_max,
    }
}

/// Parse + evaluate, returning the ring and the canonical printed
/// form of the expression.
fn build_ring(args: &RingArgs) -> Result<(Arc<FiniteRing>, String), CliError> {
    let expr = parse_ring_expr(&args.expr).map_err(|e| CliError::Usage(e.to_string()))?;
    let ctx = EvalContext::with_limits(limits_of(args));
    let ring = eval_ring_expr(&expr, &ctx)?;
    Ok((ring, expr.to_string()))
}

fn method_str(m: Method) -> &'static str {
    match m {
        Method::Oracle => "oracle",
        Method::Theorem => "theorem",
    }
}

fn verdict_line(what: &str, rep: &DecisionReport) -> String {
    let mut line = format!("{what}: {} [{}]", rep.verdict, method_str(rep.method));
    if let Some(w) = &rep.witness {
        line.push_str(&format!(
            " — witness {} (index {}): {}",
            w.element, w.index, w.reason
        ));
    }
    line
}

#[derive(Serialize)]
struct CheckReport {
    command: &'static str,
    expr: String,
    ring: RingSummary,
    p: u64,
    p_ring: DecisionReport,
    vnr: DecisionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_ideals: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    has_nonzero_p_ideal: Option<bool>,
}

/// The vNr verdict by structural criterion when one exists, else by
/// (guarded) oracle.
fn vnr_report(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<DecisionReport, CliError> {
    match is_vnr_theorem(ring)? {
        Some(verdict) => Ok(DecisionReport {
            verdict,
            method: Method::Theorem,
            witness: None,
            checked: 0,
            elapsed: std::time::Duration::ZERO,
        }),
        None => Ok(is_vnr_oracle(ring, limits)?),
    }
}

fn cmd_check(args: &RingArgs) -> Result<u8, CliError> {
    let limits = limits_of(args);
    let (ring, expr) = build_ring(args)?;
    let p = args.p;
    let p_ring = is_p_ring_theorem(&ring, p, &limits)?;
    let vnr = vnr_report(&ring, &limits)?;

    let mut p_ideals = None;
    let mut has_nonzero = None;
    match ring.kind() {
        RingKind::Zmod { n } => {
            let ideals = p_ideals_of_zmod(*n, p)?;
            p_ideals = Some(ideals.iter().map(|i| i.to_string()).collect::<Vec<_>>());
        }
        RingKind::Quotient { p: q, modulus } if *q == p => {
            has_nonzero = Some(quotient_has_p_ideal(p, modulus)?.verdict);
        }
        _ => {}
    }

    let report = CheckReport {
        command: "check",
        expr,
        ring: ring.summary(),
        p,
        p_ring,
        vnr,
        p_ideals,
        has_nonzero_p_ideal: has_nonzero,
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("ring: {} (order {}, characteristic {})",
            report.ring.description, report.ring.order, report.ring.characteristic);
        println!("{}", verdict_line(&format!("{p}-ring"), &report.p_ring));
        println!("{}", verdict_line("von Neumann regular", &report.vnr));
        if let Some(ideals) = &report.p_ideals {
            println!("{p}-ideals: {}", ideals.join(", "));
            match ideals.len() {
                1 => println!("no nonzero {p}-ideal"),
                2 => println!("unique nonzero {p}-ideal: {}", ideals[1]),
                _ => {}
            }
        }
        if let Some(h) = report.has_nonzero_p_ideal {
            if h {
                println!("has a nonzero {p}-ideal (modulus has a simple zero)");
            } else {
                println!("no nonzero {p}-ideal (modulus has no simple zero)");
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct IdealEntry {
    display: String,
    size: u64,
}

#[derive(Serialize)]
struct IdealsReport {
    command: &'static str,
    expr: String,
    ring: RingSummary,
    p: u64,
    method: &'static str,
    p_ideals: Vec<IdealEntry>,
}

fn cmd_ideals(args: &RingArgs) -> Result<u8, CliError> {
    let limits = limits_of(args);
    let (ring, expr) = build_ring(args)?;
    let p = args.p;
    let (method, ideals) = match ring.kind() {
        RingKind::Zmod { n } => ("theorem", p_ideals_of_zmod(*n, p)?),
        _ => ("oracle", list_p_ideals_oracle(&ring, p, &limits)?),
    };
    let report = IdealsReport {
        command: "ideals",
        expr,
        ring: ring.summary(),
        p,
        method,
        p_ideals: ideals
            .iter()
            .map(|i| IdealEntry {
                display: i.to_string(),
                size: i.size(),
            })
            .collect(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("ring: {} (order {})", report.ring.description, report.ring.order);
        println!("{p}-ideals [{}]: {}", report.method, report.p_ideals.len());
        for entry in &report.p_ideals {
            println!("  {} (size {})", entry.display, entry.size);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct DecomposeReport {
    command: &'static str,
    expr: String,
    ring: RingSummary,
    p: u64,
    n: usize,
    order: u64,
    ideal_count: u64,
    maximal_ideals: Vec<String>,
    projections: Vec<Vec<u64>>,
    iso: Vec<u64>,
}

fn cmd_decompose(args: &RingArgs) -> Result<u8, CliError> {
    let limits = limits_of(args);
    let (ring, expr) = build_ring(args)?;
    let p = args.p;
    let d = mccoy_decompose(&ring, p, &limits)?;
    let report = DecomposeReport {
        command: "decompose",
        expr,
        ring: ring.summary(),
        p,
        n: d.n,
        order: ring.order(),
        ideal_count: d.ideal_count,
        maximal_ideals: d.maximal_ideals.iter().map(|m| m.to_string()).collect(),
        projections: d.projections.iter().map(|h| h.table().to_vec()).collect(),
        iso: d.iso.table().to_vec(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("ring: {} (order {})", report.ring.description, report.ring.order);
        println!("decomposition: R = GF({p})^{}", report.n);
        println!("elements: {} = {p}^{}", report.order, report.n);
        println!("ideals: {} = 2^{} (all {p}-ideals)", report.ideal_count, report.n);
        for (i, m) in report.maximal_ideals.iter().enumerate() {
            println!("  maximal ideal {}: {}", i + 1, m);
        }
        println!("CRT map verified bijective ring hom onto GF({p})^{}", report.n);
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyCheck {
    question: String,
    theorem: bool,
    oracle: bool,
    agree: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    expr: String,
    ring: RingSummary,
    p: u64,
    checks: Vec<VerifyCheck>,
    agree: bool,
}

fn cmd_verify(args: &RingArgs) -> Result<u8, CliError> {
    let limits = limits_of(args);
    let (ring, expr) = build_ring(args)?;
    let p = args.p;
    let mut checks = Vec::new();

    let thm = is_p_ring_theorem(&ring, p, &limits)?;
    let orc = is_p_ring_oracle(&ring, p, &limits)?;
    checks.push(VerifyCheck {
        question: format!("{p}-ring"),
        theorem: thm.verdict,
        oracle: orc.verdict,
        agree: thm.verdict == orc.verdict,
    });

    if let Some(vt) = is_vnr_theorem(&ring)? {
        let vo = is_vnr_oracle(&ring, &limits)?;
        checks.push(VerifyCheck {
            question: "von Neumann regular".to_string(),
            theorem: vt,
            oracle: vo.verdict,
            agree: vt == vo.verdict,
        });
    }

    match ring.kind() {
        RingKind::Zmod { n } => {
            let fast: Vec<Vec<u64>> = p_ideals_of_zmod(*n, p)?
                .iter()
                .map(|i| i.expand(&limits))
                .collect::<Result<_, _>>()?;
            let slow: Vec<Vec<u64>> = list_p_ideals_oracle(&ring, p, &limits)?
                .iter()
                .map(|i| i.expand(&limits))
                .collect::<Result<_, _>>()?;
            let agree = fast == slow;
            checks.push(VerifyCheck {
                question: format!("{p}-ideal list"),
                theorem: true,
                oracle: agree,
                agree,
            });
        }
        RingKind::Quotient { p: q, modulus } if *q == p => {
            let thm = quotient_has_p_ideal(p, modulus)?;
            let orc = has_nonzero_p_ideal_oracle(&ring, p, &limits)?;
            checks.push(VerifyCheck {
                question: format!("nonzero {p}-ideal existence"),
                theorem: thm.verdict,
                oracle: orc.verdict,
                agree: thm.verdict == orc.verdict,
            });
        }
        _ => {}
    }

    let agree = checks.iter().all(|c| c.agree);
    let report = VerifyReport {
        command: "verify",
        expr,
        ring: ring.summary(),
        p,
        checks,
        agree,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("ring: {} (order {})", report.ring.description, report.ring.order);
        for c in &report.checks {
            println!(
                "{}: theorem = {}, oracle = {} — {}",
                c.question,
                c.theorem,
                c.oracle,
                if c.agree { "agree" } else { "DISAGREE" }
            );
        }
    }
    if agree {
        Ok(0)
    } else {
        eprintln!("verify: theorem fast path and oracle disagree");
        Ok(1)
    }
}

#[derive(Serialize)]
struct FactorEntry {
    factor: String,
    multiplicity: u32,
}

#[derive(Serialize)]
struct RootEntry {
    root: u64,
    multiplicity: u32,
}

#[derive(Serialize)]
struct FactorReport {
    command: &'static str,
    poly: String,
    p: u64,
    degree: usize,
    leading: u64,
    irreducible_factors: Vec<FactorEntry>,
    roots: Vec<RootEntry>,
    divides_xp_minus_x: bool,
    squarefree: bool,
}

fn cmd_factor(args: &FactorArgs) -> Result<u8, CliError> {
    let ast = pring_core::dsl::parse_poly_text(&args.poly)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let f = poly_ast_to_fp(&ast, args.p)?;
    if f.is_constant() {
        return Err(CliError::Usage(format!(
            "'{f}' is constant over GF({}); nothing to factor",
            args.p
        )));
    }
    let fact = f.factor()?;
    let roots = f.roots_with_multiplicity()?;
    let report = FactorReport {
        command: "factor",
        poly: f.to_string(),
        p: args.p,
        degree: f.degree().unwrap(),
        leading: fact.leading,
        irreducible_factors: fact
            .factors
            .iter()
            .map(|(g, e)| FactorEntry {
                factor: g.to_string(),
                multiplicity: *e,
            })
            .collect(),
        roots: roots
            .iter()
            .map(|&(r, m)| RootEntry {
                root: r,
                multiplicity: m,
            })
            .collect(),
        divides_xp_minus_x: f.divides_xp_minus_x()?,
        squarefree: f.is_squarefree()?,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("f = {} over GF({})", report.poly, report.p);
        let parts: Vec<String> = report
            .irreducible_factors
            .iter()
            .map(|e| {
                if e.multiplicity == 1 {
                    format!("({})", e.factor)
                } else {
                    format!("({})^{}", e.factor, e.multiplicity)
                }
            })
            .collect();
        if report.leading == 1 {
            println!("factorization: {}", parts.join(" "));
        } else {
            println!("factorization: {} · {}", report.leading, parts.join(" "));
        }
        if report.roots.is_empty() {
            println!("roots: none in GF({})", report.p);
        } else {
            let rs: Vec<String> = report
                .roots
                .iter()
                .map(|r| format!("{} (multiplicity {})", r.root, r.multiplicity))
                .collect();
            println!("roots: {}", rs.join(", "));
        }
        println!("divides x^{} - x: {}", report.p, report.divides_xp_minus_x);
        println!("squarefree: {}", report.squarefree);
    }
    Ok(0)
}
