//! Bulk verification sweeps: each function runs one family of identity
//! checks over every prime power up to a bound and aggregates the outcome
//! into a stable plain-text report.
//!
//! Reports are byte-deterministic for a fixed config. Enumeration is driven
//! by character labels (n, e) and seeded randomness, never by generator
//! values, so a passing report is also independent of the generator rule.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::charsums::{check_associativity, check_gauss_jacobi, jacobi_sum, CheckOutcome};
use crate::convolve::{
    convolve_arithmetic_with, convolve_geometric, picard_lefschetz_demo, universal_table,
    TwistCache,
};
use crate::cyclotomic::{divisors, lcm_u64, CycInt, CycScalar};
use crate::error::{Error, Result};
use crate::field::{prime_powers_up_to, FqField, GeneratorRule};
use crate::ledger::{convolution_rank, derive_invariants, TwistSwan};
use crate::oracle::{verify_point_count, CurveSpec};
use crate::rng::SplitMix64;
use crate::tamerep::{Component, TameRep};

/// Random representations drawn per field by the rep-suite sweep.
const REPS_PER_FIELD: usize = 500;

/// Point-count sweep limits: extension degree and extension order caps keep
/// the brute-force enumeration at desk scale.
const EXT_DEGREE_LIMIT: u32 = 2;
const EXT_ORDER_LIMIT: u64 = 2500;

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub qmax: u64,
    pub nmax: u64,
    pub seed: u64,
    /// Worker threads; 0 means the global default pool.
    pub parallelism: usize,
    pub rule: GeneratorRule,
}

impl SweepConfig {
    pub fn new(qmax: u64, nmax: u64) -> SweepConfig {
        SweepConfig {
            qmax,
            nmax,
            seed: 1,
            parallelism: 0,
            rule: GeneratorRule::Smallest,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.qmax < 1 || self.nmax < 1 {
            return Err(Error::Usage("qmax and nmax must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one sweep: how many instances were checked, how many were
/// logged as out of scope for the identity, and every counterexample found.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub params: String,
    pub checked: u64,
    pub not_applicable: u64,
    pub failures: Vec<String>,
}

impl SweepReport {
    /// A sweep passes only if something was actually checked.
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    pub fn render(&self) -> String {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{}: {} checked={} not_applicable={} failures={} [{}]",
            self.name,
            self.params,
            self.checked,
            self.not_applicable,
            self.failures.len(),
            verdict
        );
        for f in self.failures.iter().take(10) {
            s.push_str("\n  counterexample: ");
            s.push_str(f);
        }
        if self.failures.len() > 10 {
            s.push_str(&format!("\n  ... {} more", self.failures.len() - 10));
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    na: u64,
    failures: Vec<String>,
}

impl Tally {
    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.na += other.na;
        self.failures.extend(other.failures);
    }
}

fn pooled<T: Send>(parallelism: usize, run: impl FnOnce() -> T + Send) -> T {
    if parallelism == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .expect("worker pool")
            .install(run)
    }
}

/// Fan one per-field job out over all prime powers up to qmax, then merge
/// the tallies in field order so the report is order-stable.
fn sweep_fields<F>(cfg: &SweepConfig, name: &str, params: String, per_field: F) -> Result<SweepReport>
where
    F: Fn(&FqField) -> Result<Tally> + Sync,
{
    cfg.validate()?;
    let qs = prime_powers_up_to(cfg.qmax);
    let parts: Vec<Result<Tally>> = pooled(cfg.parallelism, || {
        qs.par_iter()
            .map(|&q| per_field(&FqField::from_order_with_rule(q, cfg.rule)?))
            .collect()
    });
    let mut tally = Tally::default();
    for part in parts {
        tally.absorb(part?);
    }
    Ok(SweepReport {
        name: name.into(),
        params,
        checked: tally.checked,
        not_applicable: tally.na,
        failures: tally.failures,
    })
}

fn small_divisors(q: u64, nmax: u64) -> Vec<u64> {
    divisors(q - 1).into_iter().filter(|&n| n <= nmax).collect()
}

/// |J(chi1, chi2)|^2 = q for every pair of nontrivial characters of orders
/// up to nmax with nontrivial product; pairs with trivial product are logged.
pub fn weil_modulus_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let params = format!("qmax={} nmax={}", cfg.qmax, cfg.nmax);
    sweep_fields(cfg, "weil-modulus", params, |fld| {
        let q = fld.q();
        let qc = CycInt::from_int(q as i64);
        let ns = small_divisors(q, cfg.nmax);
        let mut t = Tally::default();
        for &n1 in &ns {
            for e1 in 1..n1 {
                let chi1 = fld.char(n1, e1)?;
                for &n2 in &ns {
                    for e2 in 1..n2 {
                        let chi2 = fld.char(n2, e2)?;
                        if fld.char_mul(chi1, chi2).is_trivial() {
                            t.na += 1;
                            continue;
                        }
                        let j = jacobi_sum(fld, chi1, chi2)?;
                        if j.abs_squared() == qc {
                            t.checked += 1;
                        } else {
                            t.fail(format!("q={q} chi1={chi1} chi2={chi2} J={j}"));
                        }
                    }
                }
            }
        }
        Ok(t)
    })
}

/// The cross-multiplied Gauss-Jacobi relation on every nontrivial pair, for
/// the standard additive character and two twists of it.
pub fn gauss_jacobi_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let params = format!("qmax={} nmax={} twists={{1,g,g^2}}", cfg.qmax, cfg.nmax);
    sweep_fields(cfg, "gauss-jacobi", params, |fld| {
        let q = fld.q();
        let g = fld.generator();
        let twists = [1, g, fld.mul(g, g)];
        let ns = small_divisors(q, cfg.nmax);
        let mut t = Tally::default();
        for &n1 in &ns {
            for e1 in 1..n1 {
                let chi1 = fld.char(n1, e1)?;
                for &n2 in &ns {
                    for e2 in 1..n2 {
                        let chi2 = fld.char(n2, e2)?;
                        for &c in &twists {
                            match check_gauss_jacobi(fld, chi1, chi2, c)? {
                                CheckOutcome::Holds => t.checked += 1,
                                CheckOutcome::NotApplicable(_) => t.na += 1,
                                CheckOutcome::Fails(why) => {
                                    t.fail(format!("q={q} chi1={chi1} chi2={chi2} c={c}: {why}"))
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(t)
    })
}

/// The four-Jacobi-sum associativity identity on every character triple of
/// orders up to nmax, trivial labels included so the skips get counted.
pub fn associativity_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let params = format!("qmax={} nmax={}", cfg.qmax, cfg.nmax);
    sweep_fields(cfg, "associativity", params, |fld| {
        let q = fld.q();
        let mut chars = Vec::new();
        for &n in &small_divisors(q, cfg.nmax) {
            for e in 0..n {
                chars.push(fld.char(n, e)?);
            }
        }
        let mut t = Tally::default();
        for &c1 in &chars {
            for &c2 in &chars {
                for &c3 in &chars {
                    match check_associativity(fld, c1, c2, c3)? {
                        CheckOutcome::Holds => t.checked += 1,
                        CheckOutcome::NotApplicable(_) => t.na += 1,
                        CheckOutcome::Fails(why) => {
                            t.fail(format!("q={q} chi1={c1} chi2={c2} chi3={c3}: {why}"))
                        }
                    }
                }
            }
        }
        Ok(t)
    })
}

/// Seeded random representation: a small split tame rep whose level divides
/// q - 1, with roots of unity times small positive rationals as scalars.
pub(crate) fn random_rep(field: &FqField, rng: &mut SplitMix64) -> TameRep {
    let levels: Vec<u64> = small_divisors(field.q(), 12);
    let level = *rng.pick(&levels);
    let count = 1 + rng.below(3);
    let comps = (0..count)
        .map(|_| {
            let e = rng.below(level);
            let mult = 1 + rng.below(2);
            let num = CycInt::root_of_unity(level, rng.below(level))
                .mul_int(&BigInt::from(1 + rng.below(3)));
            let den = BigUint::from(1 + rng.below(3));
            Component::new(e, CycScalar::new(num, den).unwrap(), mult)
        })
        .collect();
    TameRep::new(level, comps).unwrap()
}

/// The three reports of the random-representation suite, produced in one
/// pass over the same draws.
#[derive(Debug, Clone, Serialize)]
pub struct RepSuiteReports {
    /// Unit, commutativity, and associativity laws of the convolution.
    pub monoid: SweepReport,
    /// Engine rank against the additive bookkeeping prediction.
    pub ledger: SweepReport,
    /// Scalar-erased arithmetic convolution against the geometric one and
    /// the plain character tensor.
    pub erasure: SweepReport,
}

/// Draw `REPS_PER_FIELD` seeded representations per field and check monoid
/// laws on all of them, rank bookkeeping and scalar erasure on every pair.
pub fn rep_suite_sweep(cfg: &SweepConfig) -> Result<RepSuiteReports> {
    cfg.validate()?;
    let params = format!("qmax={} reps={} seed={}", cfg.qmax, REPS_PER_FIELD, cfg.seed);
    let qs = prime_powers_up_to(cfg.qmax);
    let parts: Vec<Result<[Tally; 3]>> = pooled(cfg.parallelism, || {
        qs.par_iter()
            .map(|&q| {
                let fld = FqField::from_order_with_rule(q, cfg.rule)?;
                let mut rng = SplitMix64::new(cfg.seed ^ q.wrapping_mul(0x9e3779b97f4a7c15));
                let reps: Vec<TameRep> = (0..REPS_PER_FIELD)
                    .map(|_| random_rep(&fld, &mut rng))
                    .collect();
                let mut cache = TwistCache::new();
                let mut conv = |a: &TameRep, b: &TameRep| {
                    convolve_arithmetic_with(&fld, a, b, &mut cache)
                };

                let mut monoid = Tally::default();
                let mut ledger = Tally::default();
                let mut erasure = Tally::default();

                let unit = TameRep::unit();
                for (i, r) in reps.iter().enumerate() {
                    if conv(&unit, r)? == *r && conv(r, &unit)? == *r {
                        monoid.checked += 1;
                    } else {
                        monoid.fail(format!("q={q} rep={i} law=unit"));
                    }
                }
                for i in (0..reps.len() - 1).step_by(2) {
                    let (a, b) = (&reps[i], &reps[i + 1]);
                    let ab = conv(a, b)?;
                    if ab == conv(b, a)? {
                        monoid.checked += 1;
                    } else {
                        monoid.fail(format!("q={q} reps=({i},{}) law=commutativity", i + 1));
                    }

                    let predicted = convolution_rank(
                        derive_invariants(a),
                        derive_invariants(b),
                        TwistSwan { sw_twist: 0 },
                    )?;
                    if ab.rank() == predicted && predicted == a.rank() * b.rank() {
                        ledger.checked += 1;
                    } else {
                        ledger.fail(format!(
                            "q={q} reps=({i},{}) rank={} predicted={predicted}",
                            i + 1,
                            ab.rank()
                        ));
                    }

                    let geo = convolve_geometric(a, b);
                    if ab.scalar_erased() == geo && geo == a.tensor(b).scalar_erased() {
                        erasure.checked += 1;
                    } else {
                        erasure.fail(format!("q={q} reps=({i},{})", i + 1));
                    }
                }
                for i in (0..reps.len() - 2).step_by(3) {
                    let (a, b, c) = (&reps[i], &reps[i + 1], &reps[i + 2]);
                    let ab = conv(a, b)?;
                    let bc = conv(b, c)?;
                    let left = conv(&ab, c)?;
                    let right = conv(a, &bc)?;
                    if left == right {
                        monoid.checked += 1;
                    } else {
                        monoid.fail(format!(
                            "q={q} reps=({i},{},{}) law=associativity",
                            i + 1,
                            i + 2
                        ));
                    }
                }
                Ok([monoid, ledger, erasure])
            })
            .collect()
    });
    let mut merged: [Tally; 3] = Default::default();
    for part in parts {
        let [m, l, e] = part?;
        merged[0].absorb(m);
        merged[1].absorb(l);
        merged[2].absorb(e);
    }
    let [monoid, ledger, erasure] = merged;
    let report = |name: &str, t: Tally| SweepReport {
        name: name.into(),
        params: params.clone(),
        checked: t.checked,
        not_applicable: t.na,
        failures: t.failures,
    };
    Ok(RepSuiteReports {
        monoid: report("monoid-laws", monoid),
        ledger: report("rank-ledger", ledger),
        erasure: report("scalar-erasure", erasure),
    })
}

/// Shape of every universal table with n1, n2 up to nmax: exactly n1*n2
/// entries in e1-major order, the exponent sum rule, twist 1 on unit rows
/// and columns, and the Weil weight of every other twist.
pub fn table_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let params = format!("qmax={} nmax={}", cfg.qmax, cfg.nmax);
    sweep_fields(cfg, "universal-table", params, |fld| {
        let q = fld.q();
        let ns = small_divisors(q, cfg.nmax);
        let mut t = Tally::default();
        for &n1 in &ns {
            for &n2 in &ns {
                let tbl = universal_table(fld, n1, n2)?;
                let l = lcm_u64(n1, n2);
                let (a1, a2) = (l / n1, l / n2);
                if tbl.entries.len() != (n1 * n2) as usize || tbl.level != l {
                    t.fail(format!("q={q} n1={n1} n2={n2} bad table shape"));
                    continue;
                }
                for (idx, en) in tbl.entries.iter().enumerate() {
                    let (e1, e2) = (idx as u64 / n2, idx as u64 % n2);
                    let in_order = en.e1 == e1 && en.e2 == e2;
                    let exponent = en.e == (e1 * a1 + e2 * a2) % l;
                    let twist = if e1 == 0 || e2 == 0 {
                        en.twist.is_one()
                    } else if en.e == 0 {
                        en.twist.abs_squared() == CycScalar::from_int((q * q) as i64)
                    } else {
                        en.twist.abs_squared() == CycScalar::from_int(q as i64)
                    };
                    if in_order && exponent && twist {
                        t.checked += 1;
                    } else {
                        t.fail(format!("q={q} n1={n1} n2={n2} e1={e1} e2={e2}"));
                    }
                }
            }
        }
        Ok(t)
    })
}

/// Brute-force point counts against their character expansions and Jacobi
/// sums, over every base point t and extension degree within the caps.
pub fn point_count_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let params = format!(
        "qmax={} nmax={} m<={EXT_DEGREE_LIMIT} ext<={EXT_ORDER_LIMIT}",
        cfg.qmax, cfg.nmax
    );
    sweep_fields(cfg, "point-count", params, |fld| {
        let q = fld.q();
        let mut t = Tally::default();
        for m in 1..=EXT_DEGREE_LIMIT {
            let ext_q = q.pow(m);
            if ext_q > EXT_ORDER_LIMIT {
                continue;
            }
            for n1 in 1..=cfg.nmax {
                for n2 in 1..=cfg.nmax {
                    if (ext_q - 1) % n1 != 0 || (ext_q - 1) % n2 != 0 {
                        t.na += 1;
                        continue;
                    }
                    for tv in fld.units() {
                        let spec = CurveSpec { n1, n2, t: tv, m };
                        if verify_point_count(fld, &spec)? {
                            t.checked += 1;
                        } else {
                            t.fail(format!("q={q} m={m} n1={n1} n2={n2} t={tv}"));
                        }
                    }
                }
            }
        }
        Ok(t)
    })
}

/// Iterated self-convolution of the quadratic character rep: rank stays 1,
/// the character alternates, and the scalar is exactly q^floor(r/2).
pub fn picard_lefschetz_check(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    const QS: [u64; 3] = [5, 9, 13];
    const RMAX: u32 = 5;
    let mut t = Tally::default();
    for q in QS {
        let fld = FqField::from_order_with_rule(q, cfg.rule)?;
        let powers = picard_lefschetz_demo(&fld, RMAX)?;
        for (i, rep) in powers.iter().enumerate() {
            let r = i as u64 + 1;
            let want = CycScalar::from_int(q.pow(r as u32 / 2) as i64);
            let ok = rep.rank() == 1
                && rep.level() == 2
                && rep.components().len() == 1
                && rep.components()[0].e == r % 2
                && rep.components()[0].alpha == want;
            if ok {
                t.checked += 1;
            } else {
                t.fail(format!("q={q} r={r}"));
            }
        }
    }
    Ok(SweepReport {
        name: "picard-lefschetz".into(),
        params: format!("q={{5,9,13}} r<={RMAX}"),
        checked: t.checked,
        not_applicable: t.na,
        failures: t.failures,
    })
}
