//! Brute-force oracle: count points on y1^n1 + y2^n2 = t over an extension
//! field by direct enumeration, expand the same count into character sums,
//! and check each sum against the Jacobi-sum formula it is supposed to equal.
//!
//! The point counter works from raw polynomial arithmetic (`pow_raw`), not
//! the discrete-log tables, so the two sides of every comparison go through
//! genuinely different code.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::charsums::jacobi_sum;
use crate::cyclotomic::{cyc_from_group_counts, lcm_u64, CycInt};
use crate::error::{Error, Result};
use crate::field::FqField;

/// Which count to run: exponents, right-hand side t in the base field, and
/// the extension degree m (the count happens over F_{q^m}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub n1: u64,
    pub n2: u64,
    pub t: u64,
    pub m: u32,
}

/// One character-sum term of the expansion of the point count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub e1: u64,
    pub e2: u64,
    pub value: CycInt,
}

fn validate(field: &FqField, spec: &CurveSpec) -> Result<()> {
    if spec.n1 < 1 || spec.n2 < 1 || spec.m < 1 {
        return Err(Error::Usage("exponents and degree must be positive".into()));
    }
    if spec.t == 0 || spec.t >= field.q() {
        return Err(Error::ZeroArgument);
    }
    Ok(())
}

// Sweeps verify thousands of specs over the same handful of extensions, so
// small fields and embedding roots are memoized.
const EXT_CACHE_LIMIT: u64 = 4096;

static EXTENSIONS: LazyLock<Mutex<HashMap<(u64, u32, crate::field::GeneratorRule), Arc<FqField>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

static EMBED_ROOTS: LazyLock<Mutex<HashMap<(u64, u32, u32), u64>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The degree-m extension, built with the same generator rule.
pub(crate) fn extension(field: &FqField, m: u32) -> Result<Arc<FqField>> {
    let key = (field.p(), field.f() * m, field.rule());
    if let Some(f) = EXTENSIONS.lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let ext = Arc::new(FqField::with_rule(key.0, key.1, key.2)?);
    if ext.q() <= EXT_CACHE_LIMIT {
        EXTENSIONS.lock().unwrap().insert(key, ext.clone());
    }
    Ok(ext)
}

/// Smallest root of the base modulus inside the extension; the modulus only
/// depends on (p, f), so the generator rule is not part of the key.
fn embed_root(base: &FqField, ext: &FqField) -> u64 {
    let key = (base.p(), base.f(), ext.f());
    if let Some(&b) = EMBED_ROOTS.lock().unwrap().get(&key) {
        return b;
    }
    let beta = (0..ext.q())
        .find(|&b| {
            let mut acc = 0u64;
            for &c in base.modulus().iter().rev() {
                acc = ext.add(ext.mul_raw(acc, b), c);
            }
            acc == 0
        })
        .expect("the base modulus splits in the extension");
    EMBED_ROOTS.lock().unwrap().insert(key, beta);
    beta
}

/// Field embedding determined by the smallest root of the base modulus.
pub(crate) fn embed_into(base: &FqField, ext: &FqField, x: u64) -> u64 {
    if base.f() == ext.f() {
        return x;
    }
    let beta = embed_root(base, ext);
    let p = base.p();
    let mut digits = Vec::with_capacity(base.f() as usize);
    let mut v = x;
    for _ in 0..base.f() {
        digits.push(v % p);
        v /= p;
    }
    let mut acc = 0u64;
    for &d in digits.iter().rev() {
        acc = ext.add(ext.mul_raw(acc, beta), d);
    }
    acc
}

/// #{(y1, y2) in (F_{q^m}^*)^2 : y1^n1 + y2^n2 = t}, counted by enumerating
/// power fibers. No discrete logs, no character theory.
pub fn count_points(field: &FqField, spec: &CurveSpec) -> Result<u64> {
    validate(field, spec)?;
    let ext = extension(field, spec.m)?;
    let te = embed_into(field, &ext, spec.t);
    let fiber = |n: u64| {
        let mut f = vec![0u64; ext.q() as usize];
        for y in ext.units() {
            f[ext.pow_raw(y, n) as usize] += 1;
        }
        f
    };
    let f1 = fiber(spec.n1);
    let f2 = fiber(spec.n2);
    let mut total = 0u64;
    for u in ext.units() {
        total += f1[u as usize] * f2[ext.sub(te, u) as usize];
    }
    Ok(total)
}

/// The point count broken into character sums: term (e1, e2) is
/// sum over u1 + u2 = t, u1 u2 != 0 of chi_{n1,e1}(u1) chi_{n2,e2}(u2),
/// exact at conductor lcm(n1, n2). Requires n_i | q^m - 1. Terms come back
/// e1-major.
pub fn character_expansion(field: &FqField, spec: &CurveSpec) -> Result<Vec<ExpansionTerm>> {
    validate(field, spec)?;
    let ext = extension(field, spec.m)?;
    for n in [spec.n1, spec.n2] {
        if (ext.q() - 1) % n != 0 {
            return Err(Error::OrderMismatch {
                n,
                order: ext.q() - 1,
            });
        }
    }
    let te = embed_into(field, &ext, spec.t);
    let (n1, n2) = (spec.n1, spec.n2);
    let mut cnt = vec![0i64; (n1 * n2) as usize];
    for u1 in ext.units() {
        let u2 = ext.sub(te, u1);
        if u2 == 0 {
            continue;
        }
        let l1 = ext.log(u1).unwrap() % n1;
        let l2 = ext.log(u2).unwrap() % n2;
        cnt[(l1 * n2 + l2) as usize] += 1;
    }
    let r = lcm_u64(n1, n2);
    let (a1, a2) = (r / n1, r / n2);
    let mut out = Vec::with_capacity((n1 * n2) as usize);
    for e1 in 0..n1 {
        for e2 in 0..n2 {
            let mut counts = vec![0i64; r as usize];
            for l1 in 0..n1 {
                for l2 in 0..n2 {
                    let c = cnt[(l1 * n2 + l2) as usize];
                    if c != 0 {
                        counts[((e1 * l1 * a1 + e2 * l2 * a2) % r) as usize] += c;
                    }
                }
            }
            out.push(ExpansionTerm {
                e1,
                e2,
                value: cyc_from_group_counts(r, &counts),
            });
        }
    }
    Ok(out)
}

/// Full cross-check: the enumerated count equals the character expansion
/// total, and every expansion term equals
/// -chi1(t) chi2(t) J(chi1^{-1}, chi2^{-1}) over the extension field.
pub fn verify_point_count(field: &FqField, spec: &CurveSpec) -> Result<bool> {
    let n = count_points(field, spec)?;
    let terms = character_expansion(field, spec)?;
    let mut total = CycInt::zero(1);
    for term in terms.iter() {
        total = total.add(&term.value);
    }
    if total.as_integer() != Some(BigInt::from(n)) {
        return Ok(false);
    }
    let ext = extension(field, spec.m)?;
    let te = embed_into(field, &ext, spec.t);
    for term in terms.iter() {
        let chi1 = ext.char(spec.n1, term.e1)?;
        let chi2 = ext.char(spec.n2, term.e2)?;
        let j = jacobi_sum(&ext, ext.char_inv(chi1), ext.char_inv(chi2))?;
        let expect = ext
            .char_eval(chi1, te)?
            .mul(&ext.char_eval(chi2, te)?)
            .mul(&j)
            .neg();
        if term.value != expect {
            return Ok(false);
        }
    }
    Ok(true)
}
