//! Command-line front end. Every subcommand prints exact JSON on stdout;
//! diagnostics go to stderr. Exit 0 on success, 1 when a verification sweep
//! finds a counterexample, 2 on usage or input errors.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::charsums::{frobenius_twist, gauss_sum, jacobi_sum};
use crate::convolve::{convolve_arithmetic, convolve_geometric, picard_lefschetz_demo, universal_table};
use crate::error::{Error, Result};
use crate::field::{FqField, GeneratorRule, MulChar};
use crate::ledger::{
    convolution_rank, convolution_swan, dimtot_check, generic_rank, rank_at_zero, LocalInvariants,
    TwistSwan,
};
use crate::oracle::{character_expansion, count_points, verify_point_count, CurveSpec, ExpansionTerm};
use crate::tamerep::TameRep;
use crate::verify::{
    associativity_sweep, gauss_jacobi_sweep, picard_lefschetz_check, point_count_sweep,
    rep_suite_sweep, table_sweep, weil_modulus_sweep, SweepConfig, SweepReport,
};

#[derive(Parser)]
#[command(name = "tameconv", version, about = "Exact local convolution of tame representations over finite fields")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Pick the largest primitive element instead of the smallest.
    #[arg(long, global = true)]
    alt_generator: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Show how a finite field was constructed.
    FieldInfo(FieldArgs),
    /// Gauss sum of a multiplicative character against a twisted additive one.
    Gauss(GaussArgs),
    /// Jacobi sum of two multiplicative characters.
    Jacobi(PairArgs),
    /// Frobenius twist q * conj(J) / |J|^2 attached to a character pair.
    Twist(PairArgs),
    /// Universal convolution table for character levels (n1, n2).
    Table(TableArgs),
    /// Convolve two tame representations given as JSON.
    Convolve(ConvolveArgs),
    /// Iterated self-convolution of the quadratic character rep.
    DemoPl(DemoPlArgs),
    /// Rank and Swan bookkeeping for a convolution.
    Ledger(LedgerArgs),
    /// Brute-force point count with its character-sum breakdown.
    Count(CountArgs),
    /// Run a verification sweep and report every counterexample.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Field order as q or p^f.
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct GaussArgs {
    #[arg(long)]
    field: String,
    /// Multiplicative character as n:e.
    #[arg(long)]
    chi: String,
    /// Additive twist c, as an integer encoding or g^K.
    #[arg(long, default_value = "1")]
    twist: String,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    field: String,
    /// First character as n:e.
    #[arg(long)]
    chi1: String,
    /// Second character as n:e.
    #[arg(long)]
    chi2: String,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    n1: u64,
    #[arg(long)]
    n2: u64,
}

#[derive(Args)]
struct ConvolveArgs {
    /// Required unless --geometric is set.
    #[arg(long)]
    field: Option<String>,
    /// First representation as JSON.
    #[arg(long)]
    rep1: String,
    /// Second representation as JSON.
    #[arg(long)]
    rep2: String,
    /// Drop Frobenius scalars and convolve characters only.
    #[arg(long)]
    geometric: bool,
}

#[derive(Args)]
struct DemoPlArgs {
    #[arg(long)]
    field: String,
    /// Number of convolution powers to emit.
    #[arg(long, default_value_t = 5)]
    r: u32,
}

#[derive(Args)]
struct LedgerArgs {
    #[arg(long)]
    r1: u64,
    #[arg(long)]
    s1: u64,
    #[arg(long)]
    r2: u64,
    #[arg(long)]
    s2: u64,
    /// Swan conductor of the twisting character pair.
    #[arg(long)]
    swt: u64,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    n1: u64,
    #[arg(long)]
    n2: u64,
    /// Right-hand side, a nonzero base-field element (integer or g^K).
    #[arg(long)]
    t: String,
    /// Extension degree to count over.
    #[arg(long, default_value_t = 1)]
    ext: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    mode: VerifyMode,
    /// Largest field order to sweep; defaults depend on the mode.
    #[arg(long)]
    qmax: Option<u64>,
    /// Largest character order; defaults depend on the mode.
    #[arg(long)]
    nmax: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    /// |J|^2 = q on all nontrivial pairs with nontrivial product.
    Weights,
    /// The cross-multiplied Gauss-Jacobi relation.
    GaussJacobi,
    /// The four-Jacobi-sum associativity identity.
    Assoc,
    /// Monoid laws, rank bookkeeping, and scalar erasure on random reps.
    Reps,
    /// Shape and twist weights of every universal table.
    Table,
    /// Brute-force point counts against character sums.
    Points,
    /// The iterated quadratic convolution closed form.
    Pl,
    /// Everything above at its default scale.
    All,
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let rule = if cli.alt_generator {
        GeneratorRule::Largest
    } else {
        GeneratorRule::Smallest
    };
    match dispatch(&cli.cmd, rule, cli.pretty) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("serializable output"));
}

fn parse_num<N: std::str::FromStr>(s: &str, what: &str) -> Result<N> {
    s.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("bad {what}: {s}")))
}

fn parse_field(s: &str, rule: GeneratorRule) -> Result<FqField> {
    if let Some((p, f)) = s.split_once('^') {
        FqField::with_rule(parse_num(p, "prime")?, parse_num(f, "degree")?, rule)
    } else {
        FqField::from_order_with_rule(parse_num(s, "field order")?, rule)
    }
}

fn parse_char(field: &FqField, s: &str) -> Result<MulChar> {
    let (n, e) = s
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("expected a character as n:e, got {s}")))?;
    field.char(parse_num(n, "character order")?, parse_num(e, "character exponent")?)
}

/// Field elements arrive as generator powers g^K or as integer encodings;
/// integers on a prime field are reduced mod p.
fn parse_element(field: &FqField, s: &str) -> Result<u64> {
    if let Some(k) = s.trim().strip_prefix("g^") {
        return Ok(field.pow(field.generator(), parse_num(k, "generator power")?));
    }
    let v: u64 = parse_num(s, "field element")?;
    if field.f() == 1 {
        Ok(v % field.q())
    } else if v < field.q() {
        Ok(v)
    } else {
        Err(Error::Usage(format!(
            "element {v} out of range for a field of order {}",
            field.q()
        )))
    }
}

fn parse_rep(s: &str) -> Result<TameRep> {
    serde_json::from_str(s).map_err(|e| Error::Usage(format!("bad representation JSON: {e}")))
}

#[derive(Serialize)]
struct FieldInfo {
    p: u64,
    f: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: u64,
}

#[derive(Serialize)]
struct LedgerReport {
    generic_rank: u64,
    rank_at_zero: u64,
    conv_rank: u64,
    conv_swan: u64,
    dimtot_ok: bool,
}

#[derive(Serialize)]
struct CountReport {
    q: u64,
    m: u32,
    ext_q: u64,
    n1: u64,
    n2: u64,
    t: u64,
    count: u64,
    terms: Vec<ExpansionTerm>,
    verified: bool,
}

fn dispatch(cmd: &Cmd, rule: GeneratorRule, pretty: bool) -> Result<i32> {
    match cmd {
        Cmd::FieldInfo(a) => {
            let fld = parse_field(&a.field, rule)?;
            emit(
                &FieldInfo {
                    p: fld.p(),
                    f: fld.f(),
                    q: fld.q(),
                    modulus: fld.modulus().to_vec(),
                    generator: fld.generator(),
                },
                pretty,
            );
            Ok(0)
        }
        Cmd::Gauss(a) => {
            let fld = parse_field(&a.field, rule)?;
            let chi = parse_char(&fld, &a.chi)?;
            let c = parse_element(&fld, &a.twist)?;
            emit(&gauss_sum(&fld, chi, c)?, pretty);
            Ok(0)
        }
        Cmd::Jacobi(a) => {
            let fld = parse_field(&a.field, rule)?;
            let chi1 = parse_char(&fld, &a.chi1)?;
            let chi2 = parse_char(&fld, &a.chi2)?;
            emit(&jacobi_sum(&fld, chi1, chi2)?, pretty);
            Ok(0)
        }
        Cmd::Twist(a) => {
            let fld = parse_field(&a.field, rule)?;
            let chi1 = parse_char(&fld, &a.chi1)?;
            let chi2 = parse_char(&fld, &a.chi2)?;
            emit(&frobenius_twist(&fld, chi1, chi2)?, pretty);
            Ok(0)
        }
        Cmd::Table(a) => {
            let fld = parse_field(&a.field, rule)?;
            emit(&universal_table(&fld, a.n1, a.n2)?, pretty);
            Ok(0)
        }
        Cmd::Convolve(a) => {
            let r1 = parse_rep(&a.rep1)?;
            let r2 = parse_rep(&a.rep2)?;
            if a.geometric {
                emit(&convolve_geometric(&r1, &r2), pretty);
            } else {
                let spec = a.field.as_deref().ok_or_else(|| {
                    Error::Usage("--field is required unless --geometric is set".into())
                })?;
                let fld = parse_field(spec, rule)?;
                emit(&convolve_arithmetic(&fld, &r1, &r2)?, pretty);
            }
            Ok(0)
        }
        Cmd::DemoPl(a) => {
            let fld = parse_field(&a.field, rule)?;
            emit(&picard_lefschetz_demo(&fld, a.r)?, pretty);
            Ok(0)
        }
        Cmd::Ledger(a) => {
            let one = LocalInvariants {
                rank: a.r1,
                swan: a.s1,
            };
            let two = LocalInvariants {
                rank: a.r2,
                swan: a.s2,
            };
            let t = TwistSwan { sw_twist: a.swt };
            emit(
                &LedgerReport {
                    generic_rank: generic_rank(one, two),
                    rank_at_zero: rank_at_zero(t),
                    conv_rank: convolution_rank(one, two, t)?,
                    conv_swan: convolution_swan(one, two, t),
                    dimtot_ok: dimtot_check(one, two, t),
                },
                pretty,
            );
            Ok(0)
        }
        Cmd::Count(a) => {
            let fld = parse_field(&a.field, rule)?;
            let spec = CurveSpec {
                n1: a.n1,
                n2: a.n2,
                t: parse_element(&fld, &a.t)?,
                m: a.ext,
            };
            let report = CountReport {
                q: fld.q(),
                m: a.ext,
                ext_q: fld.q().pow(a.ext),
                n1: a.n1,
                n2: a.n2,
                t: spec.t,
                count: count_points(&fld, &spec)?,
                terms: character_expansion(&fld, &spec)?,
                verified: verify_point_count(&fld, &spec)?,
            };
            let code = if report.verified { 0 } else { 1 };
            emit(&report, pretty);
            Ok(code)
        }
        Cmd::Verify(a) => {
            let reports = run_verify(a, rule)?;
            let ok = reports.iter().all(|r| r.pass());
            if reports.len() == 1 {
                emit(&reports[0], pretty);
            } else {
                emit(&reports, pretty);
            }
            for r in &reports {
                eprintln!("{}", r.render());
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn run_verify(a: &VerifyArgs, rule: GeneratorRule) -> Result<Vec<SweepReport>> {
    let cfg = |dq: u64, dn: u64| {
        let mut c = SweepConfig::new(a.qmax.unwrap_or(dq), a.nmax.unwrap_or(dn));
        c.seed = a.seed;
        c.parallelism = a.jobs;
        c.rule = rule;
        c
    };
    let mut out = Vec::new();
    let modes: &[VerifyMode] = if a.mode == VerifyMode::All {
        &[
            VerifyMode::Weights,
            VerifyMode::GaussJacobi,
            VerifyMode::Assoc,
            VerifyMode::Reps,
            VerifyMode::Table,
            VerifyMode::Points,
            VerifyMode::Pl,
        ]
    } else {
        std::slice::from_ref(&a.mode)
    };
    for mode in modes {
        match mode {
            VerifyMode::Weights => out.push(weil_modulus_sweep(&cfg(200, 12))?),
            VerifyMode::GaussJacobi => out.push(gauss_jacobi_sweep(&cfg(200, 12))?),
            VerifyMode::Assoc => out.push(associativity_sweep(&cfg(100, 8))?),
            VerifyMode::Reps => {
                let suite = rep_suite_sweep(&cfg(100, 12))?;
                out.extend([suite.monoid, suite.ledger, suite.erasure]);
            }
            VerifyMode::Table => out.push(table_sweep(&cfg(100, 8))?),
            VerifyMode::Points => out.push(point_count_sweep(&cfg(49, 6))?),
            VerifyMode::Pl => out.push(picard_lefschetz_check(&cfg(13, 2))?),
            VerifyMode::All => unreachable!("expanded above"),
        }
    }
    Ok(out)
}
