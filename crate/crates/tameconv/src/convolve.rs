//! Additive convolution of tame representations.
//!
//! Geometrically the local convolution of two tame representations is their
//! tensor product after matching levels. Arithmetically each pair of
//! components picks up a Frobenius twist: q/J(chi1, chi2) when both
//! characters are nontrivial, and nothing at all when either factor is the
//! trivial character, where the convolution degenerates to the unit law.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::charsums::{frobenius_twist, JacobiKey};
use crate::cyclotomic::{lcm_u64, CycScalar};
use crate::error::{Error, Result};
use crate::field::FqField;
use crate::tamerep::{Component, TameRep};

/// Memo for Frobenius twists keyed by the unordered character pair. One
/// sweep reuses the same few Jacobi sums thousands of times.
#[derive(Default)]
pub struct TwistCache {
    map: HashMap<JacobiKey, CycScalar>,
}

impl TwistCache {
    pub fn new() -> TwistCache {
        TwistCache::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn twist(&mut self, field: &FqField, n1: u64, e1: u64, n2: u64, e2: u64) -> Result<CycScalar> {
        let chi1 = field.char(n1, e1)?;
        let chi2 = field.char(n2, e2)?;
        let key = JacobiKey::of(chi1, chi2);
        if let Some(t) = self.map.get(&key) {
            return Ok(t.clone());
        }
        let t = frobenius_twist(field, chi1, chi2)?;
        self.map.insert(key, t.clone());
        Ok(t)
    }
}

fn check_level(field: &FqField, rep: &TameRep) -> Result<()> {
    if (field.q() - 1) % rep.level() != 0 {
        return Err(Error::LevelMismatch {
            level: rep.level(),
            order: field.q() - 1,
        });
    }
    Ok(())
}

/// Convolution with full Frobenius structure. Both levels must divide q - 1.
pub fn convolve_arithmetic(field: &FqField, r1: &TameRep, r2: &TameRep) -> Result<TameRep> {
    let mut cache = TwistCache::new();
    convolve_arithmetic_with(field, r1, r2, &mut cache)
}

/// Same, sharing a twist cache across calls.
pub fn convolve_arithmetic_with(
    field: &FqField,
    r1: &TameRep,
    r2: &TameRep,
    cache: &mut TwistCache,
) -> Result<TameRep> {
    check_level(field, r1)?;
    check_level(field, r2)?;
    let (l1, l2) = (r1.level(), r2.level());
    let n = lcm_u64(l1, l2);
    let (a1, a2) = (n / l1, n / l2);
    let mut comps = Vec::with_capacity(r1.components().len() * r2.components().len());
    for c1 in r1.components() {
        for c2 in r2.components() {
            let e = (c1.e * a1 + c2.e * a2) % n;
            let alpha = if c1.e == 0 || c2.e == 0 {
                c1.alpha.mul(&c2.alpha)
            } else {
                let t = cache.twist(field, l1, c1.e, l2, c2.e)?;
                c1.alpha.mul(&c2.alpha).mul(&t)
            };
            comps.push(Component::new(e, alpha, c1.mult * c2.mult));
        }
    }
    TameRep::new(n, comps)
}

/// Convolution over the algebraic closure: the scalars are forgotten and
/// only the character content remains. Needs no field because the answer is
/// determined by the levels alone.
pub fn convolve_geometric(r1: &TameRep, r2: &TameRep) -> TameRep {
    r1.scalar_erased().tensor(&r2.scalar_erased())
}

/// Monodromy eigenvalue descriptors of the geometric convolution.
pub fn ts_monodromy(r1: &TameRep, r2: &TameRep) -> Vec<(u64, u64)> {
    convolve_geometric(r1, r2).monodromy_eigenvalues()
}

/// One row of the universal convolution table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub e1: u64,
    pub e2: u64,
    /// Exponent of the convolved character at the table's level.
    pub e: u64,
    pub twist: CycScalar,
}

/// The full convolution rule for character pairs at levels (n1, n2): every
/// exponent pair with its convolved exponent and Frobenius twist.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvolutionTable {
    pub q: u64,
    pub n1: u64,
    pub n2: u64,
    /// lcm(n1, n2), the level the e column lives at.
    pub level: u64,
    pub entries: Vec<TableEntry>,
}

/// Tabulate the convolution of single characters for all n1*n2 exponent
/// pairs, e1-major.
pub fn universal_table(field: &FqField, n1: u64, n2: u64) -> Result<ConvolutionTable> {
    if n1 < 1 || (field.q() - 1) % n1 != 0 {
        return Err(Error::OrderMismatch {
            n: n1,
            order: field.q() - 1,
        });
    }
    if n2 < 1 || (field.q() - 1) % n2 != 0 {
        return Err(Error::OrderMismatch {
            n: n2,
            order: field.q() - 1,
        });
    }
    let level = lcm_u64(n1, n2);
    let (a1, a2) = (level / n1, level / n2);
    let mut cache = TwistCache::new();
    let mut entries = Vec::with_capacity((n1 * n2) as usize);
    for e1 in 0..n1 {
        for e2 in 0..n2 {
            let e = (e1 * a1 + e2 * a2) % level;
            let twist = if e1 == 0 || e2 == 0 {
                CycScalar::one()
            } else {
                cache.twist(field, n1, e1, n2, e2)?
            };
            entries.push(TableEntry { e1, e2, e, twist });
        }
    }
    Ok(ConvolutionTable {
        q: field.q(),
        n1,
        n2,
        level,
        entries,
    })
}

/// Iterated self-convolution of the quadratic character sheaf: the local
/// model of a Picard-Lefschetz degeneration. Returns the first `rcount`
/// convolution powers of V = (level 2, e = 1, alpha = 1). Needs q odd.
pub fn picard_lefschetz_demo(field: &FqField, rcount: u32) -> Result<Vec<TameRep>> {
    if rcount < 1 {
        return Err(Error::Usage("need at least one convolution power".into()));
    }
    if (field.q() - 1) % 2 != 0 {
        return Err(Error::LevelMismatch {
            level: 2,
            order: field.q() - 1,
        });
    }
    let v = TameRep::new(2, vec![Component::new(1, CycScalar::one(), 1)])?;
    let mut out = Vec::with_capacity(rcount as usize);
    let mut cache = TwistCache::new();
    out.push(v.clone());
    for _ in 1..rcount {
        let next = convolve_arithmetic_with(field, out.last().unwrap(), &v, &mut cache)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycInt;
    use num_bigint::BigInt;

    fn scalar(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn field(q: u64) -> FqField {
        FqField::from_order(q).unwrap()
    }

    #[test]
    fn unit_law() {
        let fld = field(5);
        let r = TameRep::new(
            4,
            vec![
                Component::new(1, scalar(3), 1),
                Component::new(0, scalar(-2), 2),
            ],
        )
        .unwrap();
        assert_eq!(convolve_arithmetic(&fld, &r, &TameRep::unit()).unwrap(), r);
        assert_eq!(convolve_arithmetic(&fld, &TameRep::unit(), &r).unwrap(), r);
    }

    #[test]
    fn level_must_divide_group_order() {
        let fld = field(5);
        let r = TameRep::new(3, vec![Component::new(1, scalar(1), 1)]).unwrap();
        assert!(matches!(
            convolve_arithmetic(&fld, &r, &TameRep::unit()),
            Err(Error::LevelMismatch { level: 3, order: 4 })
        ));
    }

    #[test]
    fn quadratic_self_convolution_over_f5() {
        let fld = field(5);
        let v = TameRep::new(2, vec![Component::new(1, scalar(1), 1)]).unwrap();
        let vv = convolve_arithmetic(&fld, &v, &v).unwrap();
        // J(chi2, chi2) = 1 over F_5, so the twist is q/J = 5 on the trivial
        // character
        let expect = TameRep::new(2, vec![Component::new(0, scalar(5), 1)]).unwrap();
        assert_eq!(vv, expect);
    }

    #[test]
    fn convolution_is_commutative_and_associative() {
        let fld = field(13);
        let a = TameRep::new(
            4,
            vec![
                Component::new(1, scalar(2), 1),
                Component::new(3, CycScalar::from_cyc(CycInt::root_of_unity(4, 1)), 1),
            ],
        )
        .unwrap();
        let b = TameRep::new(
            6,
            vec![
                Component::new(1, scalar(1), 2),
                Component::new(0, scalar(7), 1),
            ],
        )
        .unwrap();
        let c = TameRep::new(3, vec![Component::new(2, scalar(-1), 1)]).unwrap();
        assert_eq!(
            convolve_arithmetic(&fld, &a, &b).unwrap(),
            convolve_arithmetic(&fld, &b, &a).unwrap()
        );
        let left = convolve_arithmetic(&fld, &convolve_arithmetic(&fld, &a, &b).unwrap(), &c)
            .unwrap();
        let right = convolve_arithmetic(&fld, &a, &convolve_arithmetic(&fld, &b, &c).unwrap())
            .unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn rank_is_multiplicative() {
        let fld = field(9);
        let a = TameRep::new(
            4,
            vec![
                Component::new(1, scalar(2), 2),
                Component::new(2, scalar(1), 1),
            ],
        )
        .unwrap();
        let b = TameRep::new(8, vec![Component::new(5, scalar(3), 3)]).unwrap();
        let conv = convolve_arithmetic(&fld, &a, &b).unwrap();
        assert_eq!(conv.rank(), a.rank() * b.rank());
    }

    #[test]
    fn geometric_convolution_is_scalar_erased_tensor() {
        let fld = field(13);
        let a = TameRep::new(
            4,
            vec![
                Component::new(1, scalar(5), 1),
                Component::new(2, scalar(1), 2),
            ],
        )
        .unwrap();
        let b = TameRep::new(6, vec![Component::new(5, scalar(-3), 1)]).unwrap();
        let arith = convolve_arithmetic(&fld, &a, &b).unwrap();
        let geom = convolve_geometric(&a, &b);
        assert_eq!(arith.scalar_erased(), geom);
        assert_eq!(geom, a.scalar_erased().tensor(&b.scalar_erased()));
        assert_eq!(arith.monodromy_eigenvalues(), ts_monodromy(&a, &b));
    }

    #[test]
    fn universal_table_over_f5() {
        let fld = field(5);
        let t = universal_table(&fld, 2, 2).unwrap();
        assert_eq!(t.level, 2);
        assert_eq!(t.entries.len(), 4);
        let get = |e1: u64, e2: u64| {
            t.entries
                .iter()
                .find(|en| en.e1 == e1 && en.e2 == e2)
                .unwrap()
        };
        assert_eq!((get(0, 0).e, get(0, 0).twist.clone()), (0, scalar(1)));
        assert_eq!((get(0, 1).e, get(0, 1).twist.clone()), (1, scalar(1)));
        assert_eq!((get(1, 0).e, get(1, 0).twist.clone()), (1, scalar(1)));
        assert_eq!((get(1, 1).e, get(1, 1).twist.clone()), (0, scalar(5)));
        // e1-major ordering
        let pairs: Vec<(u64, u64)> = t.entries.iter().map(|en| (en.e1, en.e2)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn universal_table_mixed_orders() {
        let fld = field(7);
        let t = universal_table(&fld, 2, 3).unwrap();
        assert_eq!(t.level, 6);
        assert_eq!(t.entries.len(), 6);
        let en = t
            .entries
            .iter()
            .find(|en| en.e1 == 1 && en.e2 == 1)
            .unwrap();
        assert_eq!(en.e, 5); // 1*3 + 1*2 mod 6
        assert!(universal_table(&fld, 4, 2).is_err());
    }

    #[test]
    fn table_twists_match_componentwise_convolution() {
        let fld = field(13);
        let t = universal_table(&fld, 4, 6).unwrap();
        let mut cache = TwistCache::new();
        for en in t.entries.iter() {
            let a = TameRep::new(4, vec![Component::new(en.e1, scalar(1), 1)]).unwrap();
            let b = TameRep::new(6, vec![Component::new(en.e2, scalar(1), 1)]).unwrap();
            let conv = convolve_arithmetic_with(&fld, &a, &b, &mut cache).unwrap();
            assert_eq!(conv.components().len(), 1);
            assert_eq!(conv.components()[0].e, en.e);
            assert_eq!(conv.components()[0].alpha, en.twist);
        }
    }

    #[test]
    fn picard_lefschetz_powers_over_f5() {
        let fld = field(5);
        let powers = picard_lefschetz_demo(&fld, 5).unwrap();
        for (i, v) in powers.iter().enumerate() {
            let r = (i + 1) as u64;
            assert_eq!(v.rank(), 1, "power {r}");
            let c = &v.components()[0];
            assert_eq!(c.e, r % 2, "power {r}");
            let expect = BigInt::from(5u64).pow((r / 2) as u32);
            assert_eq!(c.alpha, CycScalar::from_cyc(CycInt::from_int(expect)), "power {r}");
        }
        // q even is rejected
        let f4 = FqField::new(2, 2).unwrap();
        assert!(picard_lefschetz_demo(&f4, 2).is_err());
    }

    #[test]
    fn twist_cache_deduplicates() {
        let fld = field(13);
        let mut cache = TwistCache::new();
        let a = TameRep::new(4, vec![Component::new(1, scalar(1), 1)]).unwrap();
        let b = TameRep::new(4, vec![Component::new(3, scalar(1), 1)]).unwrap();
        convolve_arithmetic_with(&fld, &a, &b, &mut cache).unwrap();
        convolve_arithmetic_with(&fld, &b, &a, &mut cache).unwrap();
        // (1, 3) and (3, 1) share one key
        assert_eq!(cache.len(), 1);
    }
}
