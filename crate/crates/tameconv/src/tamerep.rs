//! Tame local representations in their combinatorial normal form: a level n
//! prime to p and a multiset of characters of the level-n Kummer quotient,
//! each tagged with a Frobenius scalar and a multiplicity.
//!
//! A component (e, alpha, mult) stands for mult copies of the character
//! sending the chosen generator of the level-n quotient to zeta_n^e, with
//! Frobenius acting by alpha. Raising n to a multiple refines the same data,
//! so equality and the monodromy invariants are arranged to survive level
//! changes.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{lcm_u64, CycScalar};
use crate::error::{Error, Result};

/// One isotypic piece: exponent e at the ambient level, Frobenius scalar,
/// multiplicity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Component {
    pub e: u64,
    pub alpha: CycScalar,
    pub mult: u64,
}

impl Component {
    pub fn new(e: u64, alpha: CycScalar, mult: u64) -> Component {
        Component { e, alpha, mult }
    }
}

/// A tame representation at a fixed level.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TameRepRepr", into = "TameRepRepr")]
pub struct TameRep {
    level: u64,
    components: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
struct TameRepRepr {
    level: u64,
    components: Vec<Component>,
}

impl From<TameRep> for TameRepRepr {
    fn from(r: TameRep) -> TameRepRepr {
        TameRepRepr {
            level: r.level,
            components: r.components,
        }
    }
}

impl TryFrom<TameRepRepr> for TameRep {
    type Error = Error;
    fn try_from(r: TameRepRepr) -> Result<TameRep> {
        TameRep::new(r.level, r.components)
    }
}

impl TameRep {
    pub fn new(level: u64, components: Vec<Component>) -> Result<TameRep> {
        if level < 1 {
            return Err(Error::BadConductor);
        }
        for c in components.iter() {
            if c.alpha.is_zero() {
                return Err(Error::ZeroScalar);
            }
            if c.mult < 1 {
                return Err(Error::Usage("multiplicity must be positive".into()));
            }
        }
        Ok(TameRep {
            level,
            components: canonicalize(level, components),
        })
    }

    /// The rank-one unramified unit: level 1, trivial character, scalar 1.
    pub fn unit() -> TameRep {
        TameRep {
            level: 1,
            components: vec![Component::new(0, CycScalar::one(), 1)],
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> u64 {
        self.components.iter().map(|c| c.mult).sum()
    }

    /// Present the same representation at a multiple of its level.
    pub fn raise_level(&self, n: u64) -> Result<TameRep> {
        if n < 1 || n % self.level != 0 {
            return Err(Error::BadLevelRaise {
                level: self.level,
                n,
            });
        }
        let k = n / self.level;
        let comps = self
            .components
            .iter()
            .map(|c| Component::new(c.e * k, c.alpha.clone(), c.mult))
            .collect();
        Ok(TameRep {
            level: n,
            components: canonicalize(n, comps),
        })
    }

    /// Tensor product: characters multiply, scalars multiply, ranks multiply.
    pub fn tensor(&self, other: &TameRep) -> TameRep {
        let n = lcm_u64(self.level, other.level);
        let a = self.raise_level(n).unwrap();
        let b = other.raise_level(n).unwrap();
        let mut comps = Vec::with_capacity(a.components.len() * b.components.len());
        for c1 in a.components.iter() {
            for c2 in b.components.iter() {
                comps.push(Component::new(
                    (c1.e + c2.e) % n,
                    c1.alpha.mul(&c2.alpha),
                    c1.mult * c2.mult,
                ));
            }
        }
        TameRep {
            level: n,
            components: canonicalize(n, comps),
        }
    }

    /// Forget the Frobenius scalars (set them all to 1), keeping the
    /// character content. This is the geometric shadow of the representation.
    pub fn scalar_erased(&self) -> TameRep {
        let comps = self
            .components
            .iter()
            .map(|c| Component::new(c.e, CycScalar::one(), c.mult))
            .collect();
        TameRep {
            level: self.level,
            components: canonicalize(self.level, comps),
        }
    }

    /// The multiset of local monodromy eigenvalue descriptors (order, class)
    /// in lowest terms: component e at level n contributes (n/g, e/g) with
    /// g = gcd(n, e), and e = 0 contributes (1, 0). Invariant under
    /// raise_level, so representations at different levels compare directly.
    pub fn monodromy_eigenvalues(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for c in self.components.iter() {
            let g = crate::cyclotomic::gcd_u64(self.level, c.e);
            let desc = if c.e == 0 {
                (1, 0)
            } else {
                (self.level / g, c.e / g)
            };
            for _ in 0..c.mult {
                out.push(desc);
            }
        }
        out.sort_unstable();
        out
    }

    /// Sum of mult * alpha over all components.
    pub fn frobenius_trace(&self) -> CycScalar {
        let mut acc = CycScalar::from_int(0);
        for c in self.components.iter() {
            acc = acc.add(&c.alpha.mul(&CycScalar::from_int(c.mult as i64)));
        }
        acc
    }
}

/// Reduce exponents, merge components with equal (e, alpha), sort.
fn canonicalize(level: u64, comps: Vec<Component>) -> Vec<Component> {
    let mut out: Vec<Component> = Vec::with_capacity(comps.len());
    for mut c in comps {
        c.e %= level;
        // alpha equality is algebraic, so equal scalars presented at
        // different conductors still merge
        if let Some(prev) = out
            .iter_mut()
            .find(|p| p.e == c.e && p.alpha == c.alpha)
        {
            prev.mult += c.mult;
        } else {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.e.cmp(&b.e).then_with(|| a.alpha.cmp_canonical(&b.alpha)));
    out
}

impl PartialEq for TameRep {
    fn eq(&self, other: &Self) -> bool {
        // multiset equality of components; scalar comparison is algebraic, so
        // stored conductors never matter
        if self.level != other.level || self.components.len() != other.components.len() {
            return false;
        }
        let mut used = vec![false; other.components.len()];
        for c in self.components.iter() {
            let hit = other.components.iter().enumerate().find(|(i, o)| {
                !used[*i] && o.e == c.e && o.mult == c.mult && o.alpha == c.alpha
            });
            match hit {
                Some((i, _)) => used[i] = true,
                None => return false,
            }
        }
        true
    }
}

impl Eq for TameRep {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycInt;
    use num_bigint::BigUint;

    fn scalar(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn root(m: u64, k: u64) -> CycScalar {
        CycScalar::from_cyc(CycInt::root_of_unity(m, k))
    }

    #[test]
    fn construction_validates_and_merges() {
        let r = TameRep::new(
            4,
            vec![
                Component::new(5, scalar(2), 1),
                Component::new(1, scalar(2), 2),
                Component::new(3, scalar(1), 1),
            ],
        )
        .unwrap();
        // e = 5 reduces to 1 and merges with the existing (1, 2) component
        assert_eq!(r.components().len(), 2);
        assert_eq!(r.components()[0].e, 1);
        assert_eq!(r.components()[0].mult, 3);
        assert_eq!(r.rank(), 4);

        assert!(TameRep::new(0, vec![]).is_err());
        assert!(TameRep::new(2, vec![Component::new(0, scalar(0), 1)]).is_err());
        assert!(TameRep::new(2, vec![Component::new(0, scalar(1), 0)]).is_err());
    }

    #[test]
    fn merging_is_algebraic_across_conductors() {
        // zeta_6^2 and zeta_3 are the same scalar in different presentations
        let r = TameRep::new(
            2,
            vec![
                Component::new(1, root(6, 2), 1),
                Component::new(1, root(3, 1), 1),
            ],
        )
        .unwrap();
        assert_eq!(r.components().len(), 1);
        assert_eq!(r.components()[0].mult, 2);
    }

    #[test]
    fn equality_ignores_presentation() {
        let a = TameRep::new(
            6,
            vec![
                Component::new(2, root(3, 1), 1),
                Component::new(3, scalar(-1), 2),
            ],
        )
        .unwrap();
        let b = TameRep::new(
            6,
            vec![
                Component::new(3, scalar(-1), 2),
                Component::new(2, root(6, 2), 1),
            ],
        )
        .unwrap();
        assert_eq!(a, b);
        let c = TameRep::new(6, vec![Component::new(2, root(3, 1), 1)]).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn raise_level_preserves_content() {
        let r = TameRep::new(
            2,
            vec![
                Component::new(0, scalar(5), 1),
                Component::new(1, scalar(1), 1),
            ],
        )
        .unwrap();
        let up = r.raise_level(8).unwrap();
        assert_eq!(up.level(), 8);
        assert_eq!(up.rank(), r.rank());
        assert_eq!(up.monodromy_eigenvalues(), r.monodromy_eigenvalues());
        assert_eq!(up.frobenius_trace(), r.frobenius_trace());
        assert!(r.raise_level(3).is_err());
    }

    #[test]
    fn unit_is_neutral_for_tensor() {
        let r = TameRep::new(
            4,
            vec![
                Component::new(1, root(8, 3), 2),
                Component::new(2, scalar(-7), 1),
            ],
        )
        .unwrap();
        assert_eq!(r.tensor(&TameRep::unit()), r);
        assert_eq!(TameRep::unit().tensor(&r), r);
    }

    #[test]
    fn tensor_combines_characters_and_scalars() {
        let a = TameRep::new(2, vec![Component::new(1, scalar(3), 1)]).unwrap();
        let b = TameRep::new(3, vec![Component::new(1, scalar(5), 2)]).unwrap();
        let t = a.tensor(&b);
        assert_eq!(t.level(), 6);
        assert_eq!(t.rank(), 2);
        // e = 1*3 + 1*2 = 5 at level 6
        assert_eq!(t.components()[0].e, 5);
        assert_eq!(t.components()[0].alpha, scalar(15));
        assert_eq!(t.components()[0].mult, 2);
        // commutative and associative
        let c = TameRep::new(2, vec![Component::new(1, root(4, 1), 1)]).unwrap();
        assert_eq!(a.tensor(&b), b.tensor(&a));
        assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        // ranks multiply
        assert_eq!(t.rank(), a.rank() * b.rank());
    }

    #[test]
    fn monodromy_descriptors_are_reduced() {
        let r = TameRep::new(
            4,
            vec![
                Component::new(0, scalar(9), 1),
                Component::new(2, scalar(1), 1),
                Component::new(3, scalar(1), 2),
            ],
        )
        .unwrap();
        assert_eq!(
            r.monodromy_eigenvalues(),
            vec![(1, 0), (2, 1), (4, 3), (4, 3)]
        );
        // a level-6 exponent 4 reduces to (3, 2)
        let s = TameRep::new(6, vec![Component::new(4, scalar(1), 1)]).unwrap();
        assert_eq!(s.monodromy_eigenvalues(), vec![(3, 2)]);
    }

    #[test]
    fn frobenius_trace_sums_scalars() {
        let half = CycScalar::new(CycInt::from_int(-1), BigUint::from(2u32)).unwrap();
        let r = TameRep::new(
            2,
            vec![
                Component::new(0, scalar(2), 3),
                Component::new(1, half, 1),
            ],
        )
        .unwrap();
        assert_eq!(
            r.frobenius_trace(),
            CycScalar::new(CycInt::from_int(11), BigUint::from(2u32)).unwrap()
        );
        assert_eq!(TameRep::unit().frobenius_trace(), scalar(1));
    }

    #[test]
    fn scalar_erasure_merges_by_character() {
        let r = TameRep::new(
            3,
            vec![
                Component::new(1, scalar(2), 1),
                Component::new(1, scalar(5), 2),
                Component::new(0, scalar(-1), 1),
            ],
        )
        .unwrap();
        let g = r.scalar_erased();
        assert_eq!(g.rank(), r.rank());
        assert_eq!(g.components().len(), 2);
        assert!(g.components().iter().all(|c| c.alpha == scalar(1)));
        assert_eq!(g.components()[1].mult, 3);
    }

    #[test]
    fn serde_round_trip() {
        let r = TameRep::new(
            4,
            vec![
                Component::new(1, root(4, 1), 2),
                Component::new(0, scalar(5), 1),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: TameRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        // validation runs on deserialize
        let bad = r#"{"level":2,"components":[{"e":0,"alpha":{"num":{"m":1,"coeffs":[1]},"den":1},"mult":0}]}"#;
        assert!(serde_json::from_str::<TameRep>(bad).is_err());
        let zero = r#"{"level":2,"components":[{"e":0,"alpha":{"num":{"m":1,"coeffs":[0]},"den":1},"mult":1}]}"#;
        assert!(serde_json::from_str::<TameRep>(zero).is_err());
    }
}
