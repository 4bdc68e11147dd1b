//! Finite fields F_q, q = p^f, with deterministic construction: the modulus
//! is the first monic irreducible of degree f in integer-value order, and the
//! generator is the first (or last, under the alternate rule) element of
//! multiplicative order q - 1. Elements are encoded as u64 integers in
//! [0, q) read as base-p digit strings, little-endian.
//!
//! Multiplication runs off discrete-log tables built once at construction;
//! `mul_raw` keeps the table-free polynomial route alive so independent code
//! paths (oracles, construction itself) never depend on the tables they are
//! meant to check.

use std::fmt;

use crate::cyclotomic::{factorize, lcm_u64, CycInt};
use crate::error::{Error, Result};

/// Which primitive element the construction picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GeneratorRule {
    /// Smallest element of order q - 1 in encoding order.
    #[default]
    Smallest,
    /// Largest such element; exists to show results do not depend on the choice.
    Largest,
}

const DEFAULT_MAX_Q: u64 = 1 << 16;

fn max_q() -> u64 {
    std::env::var("TAMECONV_MAX_Q")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_Q)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// arithmetic on polynomials over F_p, digits little-endian, used only during
// construction and by mul_raw

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(mut a: Vec<u64>, g: &[u64], p: u64) -> Vec<u64> {
    // g monic
    let dg = g.len() - 1;
    while a.len() > dg {
        let c = *a.last().unwrap();
        let k = a.len() - 1 - dg;
        if c != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let sub = c * gi % p;
                a[k + i] = (a[k + i] + p - sub) % p;
            }
        }
        a.pop();
    }
    while a.len() < dg {
        a.push(0);
    }
    a
}

fn poly_mul_mod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut conv = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            conv[i + j] = (conv[i + j] + x * y) % p;
        }
    }
    poly_rem(conv, g, p)
}

fn poly_pow_mod(base: &[u64], mut e: u64, g: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![0u64; g.len() - 1];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, g, p);
        }
        b = poly_mul_mod(&b, &b, g, p);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime, a nonzero mod p
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_gcd_is_const(a: Vec<u64>, b: Vec<u64>, p: u64) -> bool {
    let mut a = a;
    let mut b = b;
    poly_trim(&mut a);
    poly_trim(&mut b);
    loop {
        if b.len() == 1 {
            // zero means gcd = a; a nonzero constant means gcd = 1
            return if b[0] == 0 { a.len() == 1 } else { true };
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // make b monic and reduce a mod b
        let inv = mod_inv(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let mut r = poly_rem(a, &monic, p);
        poly_trim(&mut r);
        if r.iter().all(|&c| c == 0) {
            // gcd is b itself
            return b.len() == 1;
        }
        a = b;
        b = r;
    }
}

fn is_irreducible(g: &[u64], p: u64) -> bool {
    let f = (g.len() - 1) as u64;
    if f == 1 {
        return true;
    }
    let x = {
        let mut v = vec![0u64; g.len() - 1];
        v[1] = 1;
        v
    };
    // x^{p^f} must equal x mod g
    let mut xq = x.clone();
    for _ in 0..f {
        xq = poly_pow_mod(&xq, p, g, p);
    }
    if xq != x {
        return false;
    }
    // no factor of degree f/l for prime l | f
    for (l, _) in factorize(f) {
        let mut xq = x.clone();
        for _ in 0..f / l {
            xq = poly_pow_mod(&xq, p, g, p);
        }
        let mut diff = xq;
        diff[1] = (diff[1] + p - 1) % p;
        if !poly_gcd_is_const(g.to_vec(), diff, p) {
            return false;
        }
    }
    true
}

/// A finite field with all lookup tables prebuilt. Immutable after
/// construction.
pub struct FqField {
    p: u64,
    f: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: u64,
    rule: GeneratorRule,
    exp: Vec<u64>,   // exp[k] = g^k, k in [0, q-1)
    log: Vec<u64>,   // log[x] for x != 0; log[0] is a sentinel
    trace: Vec<u64>, // Tr: F_q -> F_p
}

impl FqField {
    pub fn new(p: u64, f: u32) -> Result<FqField> {
        FqField::with_rule(p, f, GeneratorRule::Smallest)
    }

    pub fn with_rule(p: u64, f: u32, rule: GeneratorRule) -> Result<FqField> {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if f < 1 {
            return Err(Error::BadDegree);
        }
        let bound = max_q();
        let mut q = 1u64;
        for _ in 0..f {
            q = q.checked_mul(p).filter(|&v| v <= bound).ok_or_else(|| {
                Error::FieldTooLarge {
                    q: p.saturating_pow(f),
                    bound,
                }
            })?;
        }

        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for v in 0..q {
                let mut digits = Vec::with_capacity(f as usize + 1);
                let mut t = v;
                for _ in 0..f {
                    digits.push(t % p);
                    t /= p;
                }
                digits.push(1);
                if is_irreducible(&digits, p) {
                    found = Some(digits);
                    break;
                }
            }
            found.expect("an irreducible of every degree exists")
        };

        let mut field = FqField {
            p,
            f,
            q,
            modulus,
            generator: 0,
            rule,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
        };

        let order_factors: Vec<u64> = factorize(q - 1).iter().map(|&(l, _)| l).collect();
        let is_gen = |field: &FqField, h: u64| -> bool {
            order_factors
                .iter()
                .all(|&l| field.pow_raw(h, (q - 1) / l) != 1)
        };
        let candidates: Box<dyn Iterator<Item = u64>> = match rule {
            GeneratorRule::Smallest => Box::new(2..q),
            GeneratorRule::Largest => Box::new((2..q).rev()),
        };
        let mut generator = 1; // q = 2 has the empty product generator 1
        for h in candidates {
            if is_gen(&field, h) {
                generator = h;
                break;
            }
        }
        field.generator = generator;

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u64::MAX; q as usize];
        let mut acc = 1u64;
        for k in 0..q - 1 {
            exp.push(acc);
            assert!(log[acc as usize] == u64::MAX, "generator order is not q-1");
            log[acc as usize] = k;
            acc = field.mul_raw(acc, generator);
        }
        assert!(acc == 1);
        field.exp = exp;
        field.log = log;
        field.trace = field.build_trace();
        Ok(field)
    }

    /// Construct from the field order, factoring q = p^f.
    pub fn from_order(q: u64) -> Result<FqField> {
        FqField::from_order_with_rule(q, GeneratorRule::Smallest)
    }

    pub fn from_order_with_rule(q: u64, rule: GeneratorRule) -> Result<FqField> {
        let fs = factorize(q);
        if fs.len() != 1 {
            return Err(Error::NotPrimePower { q });
        }
        FqField::with_rule(fs[0].0, fs[0].1, rule)
    }

    fn build_trace(&self) -> Vec<u64> {
        let (p, f, q) = (self.p, self.f as usize, self.q);
        if f == 1 {
            return (0..q).collect();
        }
        // traces of the power basis via Frobenius images of X
        let g = &self.modulus;
        let x = {
            let mut v = vec![0u64; f];
            v[1] = 1;
            v
        };
        let mut frob = Vec::with_capacity(f);
        let mut cur = x.clone();
        for _ in 0..f {
            frob.push(cur.clone());
            cur = poly_pow_mod(&cur, p, g, p);
        }
        assert!(cur == x, "Frobenius must have order f");
        let mut acc: Vec<Vec<u64>> = vec![
            {
                let mut v = vec![0u64; f];
                v[0] = 1;
                v
            };
            f
        ];
        let mut tr_basis = vec![0u64; f];
        tr_basis[0] = f as u64 % p;
        for i in 1..f {
            let mut total = vec![0u64; f];
            for (j, a) in acc.iter_mut().enumerate() {
                *a = poly_mul_mod(a, &frob[j], g, p);
                for (t, v) in a.iter().enumerate() {
                    total[t] = (total[t] + v) % p;
                }
            }
            assert!(
                total[1..].iter().all(|&c| c == 0),
                "trace of a basis element must be rational"
            );
            tr_basis[i] = total[0];
        }
        let mut table = Vec::with_capacity(q as usize);
        for v in 0..q {
            let mut t = v;
            let mut s = 0u64;
            for &tb in tr_basis.iter() {
                s = (s + t % p * tb) % p;
                t /= p;
            }
            table.push(s);
        }
        table
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn rule(&self) -> GeneratorRule {
        self.rule
    }

    /// Modulus coefficients, ascending degree, monic of degree f.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    /// All nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.q
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        debug_assert!(x < self.q && y < self.q);
        if self.f == 1 {
            return (x + y) % self.p;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.f {
            out += (x % self.p + y % self.p) % self.p * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, x: u64) -> u64 {
        if self.f == 1 {
            return (self.p - x) % self.p;
        }
        let mut x = x;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.f {
            out += (self.p - x % self.p) % self.p * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y))
    }

    /// Table-backed product.
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[((self.log[x as usize] + self.log[y as usize]) % (self.q - 1)) as usize]
    }

    pub fn inv(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.exp[((self.q - 1 - self.log[x as usize]) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, x: u64, e: u64) -> u64 {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = self.log[x as usize] as u128 * e as u128 % (self.q - 1) as u128;
        self.exp[k as usize]
    }

    /// Product by polynomial arithmetic, no tables. Slow; exists so that
    /// table-independent code paths stay table-independent.
    pub fn mul_raw(&self, x: u64, y: u64) -> u64 {
        debug_assert!(x < self.q && y < self.q);
        if self.f == 1 {
            return x * y % self.p;
        }
        let dec = |mut v: u64| {
            let mut d = Vec::with_capacity(self.f as usize);
            for _ in 0..self.f {
                d.push(v % self.p);
                v /= self.p;
            }
            d
        };
        let prod = poly_mul_mod(&dec(x), &dec(y), &self.modulus, self.p);
        let mut out = 0u64;
        for &d in prod.iter().rev() {
            out = out * self.p + d;
        }
        out
    }

    pub fn pow_raw(&self, x: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, b);
            }
            b = self.mul_raw(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn log(&self, x: u64) -> Result<u64> {
        if x == 0 || x >= self.q {
            return Err(Error::ZeroArgument);
        }
        Ok(self.log[x as usize])
    }

    /// Tr(x) as an element of the prime field.
    pub fn trace_of(&self, x: u64) -> u64 {
        self.trace[x as usize]
    }

    /// The character of μ_n sending the fixed n-th root of unity g^{(q-1)/n}
    /// to ζ_n^e.
    pub fn char(&self, n: u64, e: u64) -> Result<MulChar> {
        if n < 1 || (self.q - 1) % n != 0 {
            return Err(Error::OrderMismatch {
                n,
                order: self.q - 1,
            });
        }
        Ok(MulChar { n, e: e % n })
    }

    /// Exponent k in [0, n) with χ(x) = ζ_n^k, for x a unit.
    pub(crate) fn char_exp(&self, chi: MulChar, x: u64) -> u64 {
        let l = self.log[x as usize] % chi.n;
        chi.e * l % chi.n
    }

    /// χ(x) as an exact cyclotomic integer at conductor n. Errors on x = 0.
    pub fn char_eval(&self, chi: MulChar, x: u64) -> Result<CycInt> {
        if x == 0 || x >= self.q {
            return Err(Error::ZeroArgument);
        }
        Ok(CycInt::root_of_unity(chi.n, self.char_exp(chi, x)))
    }

    /// Exponent of ζ_p in ψ_c(x) = ζ_p^{Tr(cx)}.
    pub(crate) fn add_char_exp(&self, c: u64, x: u64) -> u64 {
        self.trace[self.mul(c, x) as usize]
    }

    /// ψ_c(x) = ζ_p^{Tr(cx)} for a nonzero twist c; ψ_c(0) = 1.
    pub fn add_char_eval(&self, c: u64, x: u64) -> Result<CycInt> {
        if c == 0 || c >= self.q {
            return Err(Error::ZeroArgument);
        }
        if x >= self.q {
            return Err(Error::ZeroArgument);
        }
        Ok(CycInt::root_of_unity(self.p, self.add_char_exp(c, x)))
    }

    /// Pointwise product of two characters, presented at the lcm order.
    pub fn char_mul(&self, a: MulChar, b: MulChar) -> MulChar {
        let n = lcm_u64(a.n, b.n);
        MulChar {
            n,
            e: (a.e * (n / a.n) + b.e * (n / b.n)) % n,
        }
    }

    pub fn char_inv(&self, a: MulChar) -> MulChar {
        MulChar {
            n: a.n,
            e: (a.n - a.e) % a.n,
        }
    }

    /// Whether two characters agree as functions on the unit group.
    pub fn chars_equal_on_units(&self, a: MulChar, b: MulChar) -> bool {
        let m = self.q - 1;
        a.e * (m / a.n) % m == b.e * (m / b.n) % m
    }
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqField")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("q", &self.q)
            .field("generator", &self.generator)
            .field("rule", &self.rule)
            .finish()
    }
}

/// A character of μ_n ⊂ F_q^*, stored as (order n, exponent e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct MulChar {
    n: u64,
    e: u64,
}

impl MulChar {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn is_trivial(&self) -> bool {
        self.e == 0
    }
}

impl fmt::Display for MulChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.e)
    }
}

/// Prime powers in [2, bound], ascending; the sweep domain.
pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in 2..=bound {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        while q <= bound {
            out.push(q);
            match q.checked_mul(p) {
                Some(nq) => q = nq,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}
