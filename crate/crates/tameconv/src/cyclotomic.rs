//! Exact arithmetic in Z[ζ_m], the value ring for all character sums, and in
//! its integer-denominator fractions (Frobenius scalars like q/J).
//!
//! Elements are stored canonically: a conductor m and φ(m) integer
//! coordinates in the power basis 1, ζ, ..., ζ^{φ(m)-1} reduced modulo the
//! m-th cyclotomic polynomial. Equality at one conductor is coefficient
//! equality; across conductors both sides are embedded into the lcm first.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    factorize(m)
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

/// All divisors of m, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1);
    let mut out = vec![1u64];
    for (p, e) in factorize(m) {
        let prev = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

// exact division of integer polynomials, panics if it does not divide
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert!(*den.last().unwrap() == 1, "divisor must be monic");
    let mut rem: Vec<i64> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

static CYCLO_POLYS: LazyLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Coefficients of the m-th cyclotomic polynomial, ascending degree, monic.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1);
    if let Some(p) = CYCLO_POLYS.lock().unwrap().get(&m) {
        return p.clone();
    }
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, built from small divisors up
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in divisors(m) {
        if d < m {
            let phi_d = cyclotomic_poly(d);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    let arc = Arc::new(poly);
    CYCLO_POLYS.lock().unwrap().insert(m, arc.clone());
    arc
}

/// Power-basis data for one conductor: the coordinates of every ζ^k
/// for k in [0, m).
pub(crate) struct Basis {
    pub m: u64,
    pub phi: usize,
    red: Vec<i64>, // m rows of length phi, row k = coordinates of zeta^k
    pub max_red: i64,
}

impl Basis {
    fn build(m: u64) -> Basis {
        let phi = euler_phi(m) as usize;
        let min_poly = cyclotomic_poly(m);
        let mut red = vec![0i64; m as usize * phi];
        let mut max_red = 1i64;
        for k in 0..phi {
            red[k * phi + k] = 1;
        }
        for k in phi..m as usize {
            // zeta^k = zeta * zeta^{k-1}; the overflow coefficient folds by
            // zeta^phi = -(min_poly without its leading term)
            let (lo, hi) = red.split_at_mut(k * phi);
            let prev = &lo[(k - 1) * phi..k * phi];
            let row = &mut hi[..phi];
            let c = prev[phi - 1];
            for i in (1..phi).rev() {
                row[i] = prev[i - 1] - c * min_poly[i];
            }
            row[0] = -c * min_poly[0];
            for &v in row.iter() {
                max_red = max_red.max(v.abs());
            }
        }
        Basis {
            m,
            phi,
            red,
            max_red,
        }
    }

    pub fn row(&self, k: u64) -> &[i64] {
        let k = (k % self.m) as usize;
        &self.red[k * self.phi..(k + 1) * self.phi]
    }
}

const BASIS_CACHE_LIMIT: u64 = 1024;

static BASES: LazyLock<Mutex<HashMap<u64, Arc<Basis>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

pub(crate) fn basis(m: u64) -> Arc<Basis> {
    if m <= BASIS_CACHE_LIMIT {
        if let Some(b) = BASES.lock().unwrap().get(&m) {
            return b.clone();
        }
        let b = Arc::new(Basis::build(m));
        BASES.lock().unwrap().insert(m, b.clone());
        b
    } else {
        Arc::new(Basis::build(m))
    }
}

/// An exact element of Z[ζ_m].
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CycIntRepr", into = "CycIntRepr")]
pub struct CycInt {
    m: u64,
    coeffs: Vec<BigInt>,
}

// operand magnitude limits under which the i64/i128 multiplication path
// provably cannot overflow (phi <= m <= 2^12 in the fast regime)
const FAST_COEFF_LIMIT: i64 = 1 << 40;
const FAST_RED_LIMIT: i64 = 1 << 20;
const FAST_M_LIMIT: u64 = 1 << 12;

impl CycInt {
    pub fn new(m: u64, coeffs: Vec<BigInt>) -> Result<CycInt> {
        if m < 1 {
            return Err(Error::BadConductor);
        }
        let want = euler_phi(m) as usize;
        if coeffs.len() != want {
            return Err(Error::BadCoeffLen {
                m,
                got: coeffs.len(),
                want,
            });
        }
        Ok(CycInt { m, coeffs })
    }

    pub fn zero(m: u64) -> CycInt {
        CycInt {
            m,
            coeffs: vec![BigInt::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one(m: u64) -> CycInt {
        let mut x = CycInt::zero(m);
        x.coeffs[0] = BigInt::one();
        x
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> CycInt {
        CycInt {
            m: 1,
            coeffs: vec![c.into()],
        }
    }

    /// ζ_m^k.
    pub fn root_of_unity(m: u64, k: u64) -> CycInt {
        let b = basis(m);
        let row = b.row(k);
        CycInt {
            m,
            coeffs: row.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into Z[ζ_M] for m | M via ζ_m = ζ_M^{M/m}.
    pub fn embed(&self, big_m: u64) -> Result<CycInt> {
        if big_m % self.m != 0 {
            return Err(Error::NotSubConductor {
                small: self.m,
                big: big_m,
            });
        }
        if big_m == self.m {
            return Ok(self.clone());
        }
        let b = basis(big_m);
        let step = big_m / self.m;
        let mut out = vec![BigInt::zero(); b.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &r) in b.row(i as u64 * step).iter().enumerate() {
                if r != 0 {
                    out[t] += c * r;
                }
            }
        }
        Ok(CycInt {
            m: big_m,
            coeffs: out,
        })
    }

    /// Express this element in Z[ζ_m'] for m' | m, failing if it does not lie
    /// in that subring. Exact linear solve against the embedded power basis.
    pub fn project(&self, small_m: u64) -> Result<CycInt> {
        if self.m % small_m != 0 {
            return Err(Error::NotSubConductor {
                small: small_m,
                big: self.m,
            });
        }
        if small_m == self.m {
            return Ok(self.clone());
        }
        let big = basis(self.m);
        let small_phi = euler_phi(small_m) as usize;
        let step = self.m / small_m;
        let rows = big.phi;
        // augmented matrix [E | x], columns of E = embedded basis of Z[zeta_m']
        let mut mat = vec![vec![BigInt::zero(); small_phi + 1]; rows];
        for j in 0..small_phi {
            for (t, &r) in big.row(j as u64 * step).iter().enumerate() {
                mat[t][j] = BigInt::from(r);
            }
        }
        for (t, c) in self.coeffs.iter().enumerate() {
            mat[t][small_phi] = c.clone();
        }
        let err = || Error::NotInSubring { m: small_m };
        // integer Gaussian elimination, gcd-normalized rows to tame growth
        let mut pivot_row = vec![usize::MAX; small_phi];
        let mut used = vec![false; rows];
        for col in 0..small_phi {
            let r = (0..rows)
                .find(|&r| !used[r] && !mat[r][col].is_zero())
                .expect("embedded basis has full column rank");
            used[r] = true;
            pivot_row[col] = r;
            let pv = mat[r][col].clone();
            for i in 0..rows {
                if i == r || mat[i][col].is_zero() {
                    continue;
                }
                let f = mat[i][col].clone();
                for j in 0..=small_phi {
                    mat[i][j] = &mat[i][j] * &pv - &mat[r][j] * &f;
                }
                let g = mat[i]
                    .iter()
                    .fold(BigInt::zero(), |acc, v| acc.gcd(v));
                if g > BigInt::one() {
                    for v in mat[i].iter_mut() {
                        *v /= &g;
                    }
                }
            }
        }
        for r in 0..rows {
            if !used[r] && !mat[r][small_phi].is_zero() {
                return Err(err());
            }
        }
        let mut out = vec![BigInt::zero(); small_phi];
        for col in 0..small_phi {
            let r = pivot_row[col];
            let (q, rem) = mat[r][small_phi].div_rem(&mat[r][col]);
            if !rem.is_zero() {
                return Err(err());
            }
            out[col] = q;
        }
        Ok(CycInt {
            m: small_m,
            coeffs: out,
        })
    }

    fn aligned(&self, other: &CycInt) -> (CycInt, CycInt) {
        if self.m == other.m {
            (self.clone(), other.clone())
        } else {
            let m = lcm_u64(self.m, other.m);
            (self.embed(m).unwrap(), other.embed(m).unwrap())
        }
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        let (a, b) = self.aligned(other);
        let bs = basis(a.m);
        if let Some(coeffs) = mul_fast(&a, &b, &bs) {
            return CycInt { m: a.m, coeffs };
        }
        CycInt {
            m: a.m,
            coeffs: mul_big(&a, &b, &bs),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> CycInt {
        CycInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Image under ζ ↦ ζ^a for a coprime to the conductor; a ring automorphism.
    pub fn galois(&self, a: u64) -> Result<CycInt> {
        let a = a % self.m;
        if gcd_u64(a, self.m) != 1 {
            return Err(Error::NotCoprime { a, m: self.m });
        }
        let b = basis(self.m);
        let mut out = vec![BigInt::zero(); b.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &r) in b.row(i as u64 * a).iter().enumerate() {
                if r != 0 {
                    out[t] += c * r;
                }
            }
        }
        Ok(CycInt {
            m: self.m,
            coeffs: out,
        })
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> CycInt {
        if self.m <= 2 {
            return self.clone();
        }
        self.galois(self.m - 1).unwrap()
    }

    /// x · conj(x), fixed by conjugation; rational exactly when |x| is.
    pub fn abs_squared(&self) -> CycInt {
        self.mul(&self.conj())
    }

    pub(crate) fn cmp_canonical(&self, other: &CycInt) -> Ordering {
        self.m
            .cmp(&other.m)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn mul_fast(a: &CycInt, b: &CycInt, bs: &Basis) -> Option<Vec<BigInt>> {
    if bs.m > FAST_M_LIMIT || bs.max_red > FAST_RED_LIMIT {
        return None;
    }
    let small = |x: &CycInt| -> Option<Vec<i64>> {
        x.coeffs
            .iter()
            .map(|c| c.to_i64().filter(|v| v.abs() < FAST_COEFF_LIMIT))
            .collect()
    };
    let av = small(a)?;
    let bv = small(b)?;
    let phi = bs.phi;
    let mut conv = vec![0i128; 2 * phi - 1];
    for (i, &x) in av.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in bv.iter().enumerate() {
            conv[i + j] += x as i128 * y as i128;
        }
    }
    let mut out = vec![0i128; phi];
    out.copy_from_slice(&conv[..phi]);
    for (k, &c) in conv.iter().enumerate().skip(phi) {
        if c == 0 {
            continue;
        }
        for (t, &r) in bs.row(k as u64).iter().enumerate() {
            if r != 0 {
                out[t] += c * r as i128;
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

fn mul_big(a: &CycInt, b: &CycInt, bs: &Basis) -> Vec<BigInt> {
    let phi = bs.phi;
    let mut conv = vec![BigInt::zero(); 2 * phi - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            conv[i + j] += x * y;
        }
    }
    let mut out = conv[..phi].to_vec();
    for (k, c) in conv.iter().enumerate().skip(phi) {
        if c.is_zero() {
            continue;
        }
        for (t, &r) in bs.row(k as u64).iter().enumerate() {
            if r != 0 {
                out[t] += c * r;
            }
        }
    }
    out
}

/// Fold a group-ring element sum_k counts[k]·ζ_m^k (counts indexed by
/// exponent mod m) into canonical power-basis form. Streams the reduction
/// rows, so large conductors cost time but no table memory.
pub(crate) fn cyc_from_group_counts(m: u64, counts: &[i64]) -> CycInt {
    assert_eq!(counts.len(), m as usize);
    let phi = euler_phi(m) as usize;
    let min_poly = cyclotomic_poly(m);
    let mut out = vec![0i128; phi];
    let mut row = vec![0i128; phi];
    row[0] = 1;
    for (k, &c) in counts.iter().enumerate() {
        if k > 0 {
            // row <- zeta * row
            let carry = row[phi - 1];
            for i in (1..phi).rev() {
                row[i] = row[i - 1] - carry * min_poly[i] as i128;
            }
            row[0] = -carry * min_poly[0] as i128;
        }
        if c != 0 {
            for (t, &r) in row.iter().enumerate() {
                out[t] += c as i128 * r;
            }
        }
    }
    CycInt {
        m,
        coeffs: out.into_iter().map(BigInt::from).collect(),
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.m, i)?;
            } else {
                write!(f, "{a}*z{}^{}", self.m, i)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    m: u64,
    coeffs: Vec<serde_json::Number>,
}

fn bigint_to_number(c: &BigInt) -> serde_json::Number {
    serde_json::from_str(&c.to_string()).expect("integer literal is a valid JSON number")
}

fn number_to_bigint(n: &serde_json::Number) -> Result<BigInt> {
    let s = n.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Usage(format!("expected an integer, got {s}")));
    }
    BigInt::from_str(&s).map_err(|_| Error::Usage(format!("bad integer {s}")))
}

impl From<CycInt> for CycIntRepr {
    fn from(x: CycInt) -> CycIntRepr {
        CycIntRepr {
            m: x.m,
            coeffs: x.coeffs.iter().map(bigint_to_number).collect(),
        }
    }
}

impl TryFrom<CycIntRepr> for CycInt {
    type Error = Error;
    fn try_from(r: CycIntRepr) -> Result<CycInt> {
        let coeffs = r
            .coeffs
            .iter()
            .map(number_to_bigint)
            .collect::<Result<Vec<_>>>()?;
        CycInt::new(r.m, coeffs)
    }
}

/// A cyclotomic integer divided by a positive rational integer, normalized so
/// the content gcd of (numerator coefficients, denominator) is 1.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CycScalarRepr", into = "CycScalarRepr")]
pub struct CycScalar {
    num: CycInt,
    den: BigUint,
}

impl CycScalar {
    pub fn new(num: CycInt, den: BigUint) -> Result<CycScalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut s = CycScalar { num, den };
        s.normalize();
        Ok(s)
    }

    pub fn from_cyc(num: CycInt) -> CycScalar {
        CycScalar {
            num,
            den: BigUint::one(),
        }
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> CycScalar {
        CycScalar::from_cyc(CycInt::from_int(c))
    }

    pub fn one() -> CycScalar {
        CycScalar::from_int(1)
    }

    pub fn num(&self) -> &CycInt {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = BigUint::one();
            return;
        }
        let mut g = self.den.clone();
        for c in self.num.coeffs.iter() {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                return;
            }
        }
        let gi = BigInt::from(g.clone());
        for c in self.num.coeffs.iter_mut() {
            *c /= &gi;
        }
        self.den /= &g;
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        let mut s = CycScalar {
            num: self.num.mul(&other.num),
            den: &self.den * &other.den,
        };
        s.normalize();
        s
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        let a = self.num.mul_int(&BigInt::from(other.den.clone()));
        let b = other.num.mul_int(&BigInt::from(self.den.clone()));
        let mut s = CycScalar {
            num: a.add(&b),
            den: &self.den * &other.den,
        };
        s.normalize();
        s
    }

    pub fn neg(&self) -> CycScalar {
        CycScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn conj(&self) -> CycScalar {
        CycScalar {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    pub fn abs_squared(&self) -> CycScalar {
        let mut s = CycScalar {
            num: self.num.abs_squared(),
            den: &self.den * &self.den,
        };
        s.normalize();
        s
    }

    /// (numerator, denominator) when the value is rational.
    pub fn as_rational(&self) -> Option<(BigInt, BigUint)> {
        self.num.as_integer().map(|n| (n, self.den.clone()))
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num == CycInt::one(self.num.m)
    }

    /// Total order on stored forms, used for canonical component sorting.
    pub fn cmp_canonical(&self, other: &CycScalar) -> Ordering {
        self.num
            .cmp_canonical(&other.num)
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        // cross multiply; normalization makes same-conductor forms unique but
        // equal values may live at different conductors
        let a = self.num.mul_int(&BigInt::from(other.den.clone()));
        let b = other.num.mul_int(&BigInt::from(self.den.clone()));
        a == b
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycScalarRepr {
    num: CycInt,
    den: serde_json::Number,
}

impl From<CycScalar> for CycScalarRepr {
    fn from(s: CycScalar) -> CycScalarRepr {
        CycScalarRepr {
            den: serde_json::from_str(&s.den.to_string()).expect("valid JSON number"),
            num: s.num,
        }
    }
}

impl TryFrom<CycScalarRepr> for CycScalar {
    type Error = Error;
    fn try_from(r: CycScalarRepr) -> Result<CycScalar> {
        let den = number_to_bigint(&r.den)?;
        if den.sign() != Sign::Plus {
            return Err(Error::ZeroDenominator);
        }
        CycScalar::new(r.num, den.to_biguint().unwrap())
    }
}
