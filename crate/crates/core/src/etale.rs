//! Invariant theta characteristics of an étale double cover `C -> B`.
//!
//! The cover is given by a nonzero `rho` in `V = Pic(B)[2] = GF(2)^{2b}`, and
//! `g(C) = 2b - 1`. An invariant theta characteristic is `pi^* L` where
//! either `L^2 = K_B rho` (always even; kept as an abstract label) or `L` is
//! a theta characteristic of `B`, identified with a quadratic form `q` on
//! `V`. Since `pi^* L = pi^*(L rho)`, forms are taken up to
//! `q ~ q + e(rho, .)`; the stored representative has the smaller basis
//! values.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Vector, SymplecticSpace};
use crate::parity::Parity;
use crate::quadratic::QuadraticForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaleCoverSpec {
    space: SymplecticSpace,
    rho: Gf2Vector,
}

impl EtaleCoverSpec {
    pub fn new(base_genus: u32, rho: Gf2Vector) -> Result<Self> {
        if base_genus == 0 {
            return Err(Error::InvalidParameter(
                "étale covers need a base of genus >= 1".into(),
            ));
        }
        let space = SymplecticSpace::new(base_genus)?;
        space.check(&rho)?;
        if rho.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { space, rho })
    }

    /// `rho = a_1`.
    pub fn standard(base_genus: u32) -> Result<Self> {
        if base_genus == 0 {
            return Err(Error::InvalidParameter(
                "étale covers need a base of genus >= 1".into(),
            ));
        }
        let space = SymplecticSpace::new(base_genus)?;
        Self::new(base_genus, space.a(0))
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn rho(&self) -> Gf2Vector {
        self.rho
    }

    pub fn base_genus(&self) -> u32 {
        self.space.half_dim()
    }

    /// `g = 2b - 1`.
    pub fn genus(&self) -> u32 {
        2 * self.base_genus() - 1
    }

    /// The representative of `{q, q + e(rho, .)}` with smaller basis values.
    pub fn canonical_form(&self, q: &QuadraticForm) -> Result<QuadraticForm> {
        let shifted = q.translate(&self.rho)?;
        Ok(if shifted.basis_values() < q.basis_values() {
            shifted
        } else {
            *q
        })
    }

    pub fn is_canonical(&self, q: &QuadraticForm) -> bool {
        self.canonical_form(q).is_ok_and(|c| c == *q)
    }

    fn check_form(&self, q: &QuadraticForm) -> Result<()> {
        if q.space() != self.space {
            return Err(Error::DimensionMismatch {
                left: self.space.dim(),
                right: q.space().dim(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EtaleThetaChar {
    /// `pi^* L` with `L^2 = K_B rho`, indexed among the `2^{2b-1}` classes.
    Twisted { root: u64 },
    /// `pi^* L` with `L` a theta characteristic of the base.
    Untwisted { form: QuadraticForm },
}

impl EtaleThetaChar {
    pub fn form(&self) -> Option<&QuadraticForm> {
        match self {
            Self::Twisted { .. } => None,
            Self::Untwisted { form } => Some(form),
        }
    }
}

impl Serialize for EtaleThetaChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        match self {
            Self::Twisted { root } => {
                map.serialize_entry("case", "twisted")?;
                map.serialize_entry("root", root)?;
            }
            Self::Untwisted { form } => {
                map.serialize_entry("case", "untwisted")?;
                map.serialize_entry("form", &form.basis_values().to_string())?;
            }
        }
        map.end()
    }
}

/// Canonical untwisted forms in increasing order of basis values.
fn canonical_forms(spec: &EtaleCoverSpec) -> impl Iterator<Item = QuadraticForm> + '_ {
    QuadraticForm::all(spec.space).filter(|q| spec.is_canonical(q))
}

/// All `2^{g+1}` invariant theta characteristics: the twisted labels first,
/// then canonical forms.
pub fn enumerate_etale(spec: &EtaleCoverSpec) -> Vec<EtaleThetaChar> {
    let twisted = 1u64 << (2 * spec.base_genus() - 1);
    (0..twisted)
        .map(|root| EtaleThetaChar::Twisted { root })
        .chain(canonical_forms(spec).map(|form| EtaleThetaChar::Untwisted { form }))
        .collect()
}

/// Twisted ones are even; an untwisted `pi^* L` has parity `q_L(rho)`.
pub fn parity_etale(tc: &EtaleThetaChar, spec: &EtaleCoverSpec) -> Result<Parity> {
    match tc {
        EtaleThetaChar::Twisted { .. } => Ok(Parity::Even),
        EtaleThetaChar::Untwisted { form } => {
            spec.check_form(form)?;
            Ok(Parity::from_bit(form.evaluate(&spec.rho)?))
        }
    }
}

/// Canonical forms with `q(rho) = 0` and Arf invariant one: pullbacks of odd
/// theta characteristics of the base that become even.
pub fn vanishing_set(spec: &EtaleCoverSpec) -> Vec<EtaleThetaChar> {
    canonical_forms(spec)
        .filter(|q| !q.eval_bits(spec.rho.bits()) && q.arf())
        .map(|form| EtaleThetaChar::Untwisted { form })
        .collect()
}

/// Canonical forms with `q(rho) = 0`.
pub fn even_affine_subspace(spec: &EtaleCoverSpec) -> Vec<EtaleThetaChar> {
    canonical_forms(spec)
        .filter(|q| !q.eval_bits(spec.rho.bits()))
        .map(|form| EtaleThetaChar::Untwisted { form })
        .collect()
}

fn untwisted(tc: &EtaleThetaChar) -> Result<&QuadraticForm> {
    tc.form().ok_or_else(|| {
        Error::Unsupported("products involving twisted theta characteristics".into())
    })
}

/// `k1 k2 k3^{-1}`, computed as `q1` translated by the sum of the affine
/// differences `q2 - q1` and `q3 - q1`.
pub fn triple_product(
    t1: &EtaleThetaChar,
    t2: &EtaleThetaChar,
    t3: &EtaleThetaChar,
    spec: &EtaleCoverSpec,
) -> Result<EtaleThetaChar> {
    let (q1, q2, q3) = (untwisted(t1)?, untwisted(t2)?, untwisted(t3)?);
    for q in [q1, q2, q3] {
        spec.check_form(q)?;
    }
    let shift = q1.affine_difference(q2)? + q1.affine_difference(q3)?;
    let form = spec.canonical_form(&q1.translate(&shift)?)?;
    Ok(EtaleThetaChar::Untwisted { form })
}

/// Parity of `k1 k2 k3^{-1}`.
pub fn syzygetic_check(
    t1: &EtaleThetaChar,
    t2: &EtaleThetaChar,
    t3: &EtaleThetaChar,
    spec: &EtaleCoverSpec,
) -> Result<Parity> {
    parity_etale(&triple_product(t1, t2, t3, spec)?, spec)
}

/// Closed forms for a base of genus `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleCounts {
    pub total: u128,
    pub even: u128,
    pub odd: u128,
    /// `2^{b-2}(2^{b-1} - 1)`.
    pub vanishing_set_size: u128,
    /// Dimension `g - 1` of the even affine subspace containing the set.
    pub subspace_dim: u32,
}

pub fn etale_counts(base_genus: u32) -> Result<EtaleCounts> {
    if base_genus == 0 || base_genus > 32 {
        return Err(Error::InvalidParameter(format!(
            "base genus must lie in 1..=32, got {base_genus}"
        )));
    }
    let b = base_genus;
    let g = 2 * b - 1;
    let quarter = 1u128 << (2 * b - 2); // 2^{g-1}
    let vanishing = if b >= 2 {
        (1u128 << (b - 2)) * ((1u128 << (b - 1)) - 1)
    } else {
        0
    };
    Ok(EtaleCounts {
        total: 4 * quarter,
        even: 3 * quarter,
        odd: quarter,
        vanishing_set_size: vanishing,
        subspace_dim: g - 1,
    })
}

/// `2^{g-2} - 2^{(g-3)/2}` evaluated in rationals, for cross-checking the
/// base-genus form of the same count.
pub fn vanishing_set_size_by_genus(genus: u32) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let g = genus as i32;
    // g is odd for étale covers, so (g - 3) / 2 is an integer.
    two.pow(g - 2) - two.pow((g - 3) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumeration_sizes() {
        for (b, total) in [(1, 4), (2, 16), (3, 64)] {
            let spec = EtaleCoverSpec::standard(b).unwrap();
            let all = enumerate_etale(&spec);
            assert_eq!(all.len(), total);
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), total);
            let twisted = all.iter().filter(|t| t.form().is_none()).count();
            assert_eq!(twisted, total / 2);
        }
    }

    #[test]
    fn parity_counts_genus_three() {
        let spec = EtaleCoverSpec::standard(2).unwrap();
        let all = enumerate_etale(&spec);
        let even = all
            .iter()
            .filter(|t| parity_etale(t, &spec).unwrap().is_even())
            .count();
        assert_eq!((even, all.len() - even), (12, 4));
        for t in all.iter().filter(|t| t.form().is_none()) {
            assert_eq!(parity_etale(t, &spec).unwrap(), Parity::Even);
        }
    }

    #[test]
    fn odd_when_form_is_one_at_rho() {
        let spec = EtaleCoverSpec::standard(2).unwrap();
        let q = QuadraticForm::from_bits(spec.space(), 0b0001).unwrap();
        assert!(q.evaluate(&spec.rho()).unwrap());
        let t = EtaleThetaChar::Untwisted { form: q };
        assert_eq!(parity_etale(&t, &spec).unwrap(), Parity::Odd);
    }

    #[test]
    fn vanishing_set_sizes() {
        let sizes: Vec<usize> = (1..=3)
            .map(|b| vanishing_set(&EtaleCoverSpec::standard(b).unwrap()).len())
            .collect();
        assert_eq!(sizes, vec![0, 1, 6]);
    }

    #[test]
    fn canonical_form_respects_rho_twist() {
        let spec = EtaleCoverSpec::standard(3).unwrap();
        for q in QuadraticForm::all(spec.space()) {
            let t = q.translate(&spec.rho()).unwrap();
            assert_eq!(
                spec.canonical_form(&q).unwrap(),
                spec.canonical_form(&t).unwrap()
            );
            assert_eq!(
                q.evaluate(&spec.rho()).unwrap(),
                t.evaluate(&spec.rho()).unwrap()
            );
            if !q.evaluate(&spec.rho()).unwrap() {
                assert_eq!(q.arf(), t.arf());
            }
        }
    }

    #[test]
    fn subspace_genus_three() {
        let spec = EtaleCoverSpec::standard(2).unwrap();
        let sub = even_affine_subspace(&spec);
        assert_eq!(sub.len(), 4);
        let t = vanishing_set(&spec);
        assert!(sub.contains(&t[0]));
    }

    #[test]
    fn triple_examples() {
        let spec = EtaleCoverSpec::standard(2).unwrap();
        let t = vanishing_set(&spec)[0];
        assert_eq!(triple_product(&t, &t, &t, &spec).unwrap(), t);
        assert_eq!(syzygetic_check(&t, &t, &t, &spec).unwrap(), Parity::Even);
        let odd = enumerate_etale(&spec)
            .into_iter()
            .find(|x| x.form().is_some() && !parity_etale(x, &spec).unwrap().is_even())
            .unwrap();
        assert_eq!(syzygetic_check(&t, &t, &odd, &spec).unwrap(), Parity::Odd);
        let twisted = EtaleThetaChar::Twisted { root: 0 };
        assert!(matches!(
            syzygetic_check(&t, &t, &twisted, &spec),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn closed_forms() {
        let c = etale_counts(3).unwrap();
        assert_eq!(
            (c.even, c.odd, c.vanishing_set_size, c.total),
            (48, 16, 6, 64)
        );
        assert_eq!(etale_counts(1).unwrap().vanishing_set_size, 0);
        for b in 1..=16 {
            let c = etale_counts(b).unwrap();
            let by_genus = vanishing_set_size_by_genus(2 * b - 1);
            assert_eq!(
                by_genus,
                BigRational::from_integer(BigInt::from(c.vanishing_set_size))
            );
        }
        assert!(etale_counts(0).is_err());
    }

    #[test]
    fn rejects_bad_rho() {
        let space = SymplecticSpace::new(2).unwrap();
        assert_eq!(EtaleCoverSpec::new(2, space.zero()), Err(Error::ZeroVector));
        assert!(EtaleCoverSpec::new(3, space.a(0)).is_err());
        assert!(EtaleCoverSpec::standard(0).is_err());
    }
}
