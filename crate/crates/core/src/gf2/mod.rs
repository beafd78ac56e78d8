//! Linear and symplectic algebra over the two-element field.
//!
//! Vectors are packed into a single `u64`, so the ambient dimension is capped
//! at 64. The symplectic basis is interleaved: bit `2i` is `a_{i+1}` and bit
//! `2i+1` is `b_{i+1}`, which makes the Gram matrix block diagonal with
//! `e(a_i, b_i) = 1` and all other basis pairings zero.

pub(crate) mod elimination;
mod subspace;

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

pub use subspace::Subspace;

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Exchanges every `a_i` coordinate with its partner `b_i`.
#[inline]
pub(crate) fn swap_pairs(bits: u64) -> u64 {
    ((bits & EVEN_BITS) << 1) | ((bits >> 1) & EVEN_BITS)
}

#[inline]
pub(crate) fn pair_bits(u: u64, v: u64) -> bool {
    (u & swap_pairs(v)).count_ones() & 1 == 1
}

#[inline]
pub(crate) fn low_mask(dim: u32) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    bits: u64,
    dim: u32,
}

impl Gf2Vector {
    pub const MAX_DIM: u32 = 64;

    pub fn new(bits: u64, dim: u32) -> Result<Self> {
        if dim > Self::MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: Self::MAX_DIM,
            });
        }
        if bits & !low_mask(dim) != 0 {
            return Err(Error::InvalidParameter(format!(
                "bits {bits:#x} do not fit in dimension {dim}"
            )));
        }
        Ok(Self { bits, dim })
    }

    /// Builds a vector from bits that are already known to fit.
    pub(crate) fn from_raw(bits: u64, dim: u32) -> Self {
        debug_assert!(dim <= Self::MAX_DIM && bits & !low_mask(dim) == 0);
        Self { bits, dim }
    }

    pub fn zero(dim: u32) -> Self {
        assert!(dim <= Self::MAX_DIM, "dimension {dim} exceeds 64");
        Self { bits: 0, dim }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: u32, i: u32) -> Self {
        assert!(
            i < dim && dim <= Self::MAX_DIM,
            "basis index {i} out of range for dim {dim}"
        );
        Self { bits: 1 << i, dim }
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let dim = bits.len() as u32;
        if dim > Self::MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: Self::MAX_DIM,
            });
        }
        let packed = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Ok(Self { bits: packed, dim })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn get(&self, i: u32) -> bool {
        assert!(i < self.dim, "index {i} out of range for dim {}", self.dim);
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Self {
            bits: self.bits ^ other.bits,
            dim: self.dim,
        })
    }

    /// Coordinatewise product summed mod 2.
    pub fn dot(&self, other: &Self) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }
}

impl Add for Gf2Vector {
    type Output = Gf2Vector;

    fn add(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "adding vectors of different dimension");
        Self {
            bits: self.bits ^ rhs.bits,
            dim: self.dim,
        }
    }
}

impl fmt::Display for Gf2Vector {
    /// Coordinates in basis order, first coordinate leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

/// The space `GF(2)^{2n}` with the standard alternating pairing
/// `e(u, v) = sum_i u_{2i} v_{2i+1} + u_{2i+1} v_{2i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticSpace {
    half_dim: u32,
}

impl SymplecticSpace {
    pub fn new(half_dim: u32) -> Result<Self> {
        if half_dim * 2 > Gf2Vector::MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: half_dim * 2,
                max: Gf2Vector::MAX_DIM,
            });
        }
        Ok(Self { half_dim })
    }

    pub fn half_dim(&self) -> u32 {
        self.half_dim
    }

    pub fn dim(&self) -> u32 {
        2 * self.half_dim
    }

    /// Number of vectors, `2^{2n}`.
    pub fn cardinality(&self) -> u128 {
        1u128 << self.dim()
    }

    pub fn zero(&self) -> Gf2Vector {
        Gf2Vector::zero(self.dim())
    }

    pub fn basis_vector(&self, i: u32) -> Gf2Vector {
        Gf2Vector::unit(self.dim(), i)
    }

    /// `a_{k+1}` in the hyperbolic basis.
    pub fn a(&self, k: u32) -> Gf2Vector {
        self.basis_vector(2 * k)
    }

    /// `b_{k+1}` in the hyperbolic basis.
    pub fn b(&self, k: u32) -> Gf2Vector {
        self.basis_vector(2 * k + 1)
    }

    pub fn vector(&self, bits: u64) -> Result<Gf2Vector> {
        Gf2Vector::new(bits, self.dim())
    }

    /// Every vector of the space in increasing bit order. Only sensible for
    /// small dimensions.
    pub fn vectors(&self) -> impl Iterator<Item = Gf2Vector> {
        let dim = self.dim();
        assert!(dim < 64, "cannot enumerate a 64-dimensional space");
        (0..1u64 << dim).map(move |bits| Gf2Vector::from_raw(bits, dim))
    }

    pub(crate) fn check(&self, v: &Gf2Vector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: v.dim(),
            });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &Gf2Vector, v: &Gf2Vector) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(pair_bits(u.bits(), v.bits()))
    }

    /// The unique `v` with `e(v, e_i) = functional_i` for every basis vector
    /// `e_i`, found by elimination on the Gram matrix.
    pub fn solve_linear(&self, functional: &Gf2Vector) -> Result<Gf2Vector> {
        self.check(functional)?;
        let dim = self.dim();
        // Row i encodes v -> e(v, e_i) as a mask over the coordinates of v.
        let rows: Vec<u64> = (0..dim).map(|i| swap_pairs(1 << i)).collect();
        let rhs: Vec<bool> = (0..dim).map(|i| functional.bits() >> i & 1 == 1).collect();
        let bits =
            elimination::solve(&rows, &rhs, dim).expect("the standard pairing is nondegenerate");
        Ok(Gf2Vector::from_raw(bits, dim))
    }

    /// The first basis vector, in basis order, pairing to one with `rho`.
    pub fn hyperbolic_complement(&self, rho: &Gf2Vector) -> Result<Gf2Vector> {
        self.check(rho)?;
        (0..self.dim())
            .map(|i| self.basis_vector(i))
            .find(|e| pair_bits(rho.bits(), e.bits()))
            .ok_or(Error::ZeroVector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: u32) -> SymplecticSpace {
        SymplecticSpace::new(n).unwrap()
    }

    #[test]
    fn standard_pair() {
        let v = space(2);
        assert!(v.pairing(&v.a(0), &v.b(0)).unwrap());
        assert!(v.pairing(&v.b(0), &v.a(0)).unwrap());
        assert!(!v.pairing(&v.a(0), &v.a(1)).unwrap());
        assert!(!v.pairing(&v.a(0), &v.b(1)).unwrap());
    }

    #[test]
    fn alternating_dim4() {
        let v = space(2);
        for x in v.vectors() {
            assert!(!v.pairing(&x, &x).unwrap());
        }
    }

    #[test]
    fn alternating_and_nondegenerate_up_to_dim8() {
        for n in 1..=4 {
            let v = space(n);
            for x in v.vectors() {
                assert!(!v.pairing(&x, &x).unwrap());
                if !x.is_zero() {
                    assert!(
                        v.vectors().any(|y| v.pairing(&x, &y).unwrap()),
                        "{x} is radical"
                    );
                }
            }
        }
    }

    #[test]
    fn bilinear_up_to_dim6() {
        for n in 1..=3 {
            let v = space(n);
            for x in v.vectors() {
                for y in v.vectors() {
                    let xy = x + y;
                    for z in v.vectors() {
                        let lhs = v.pairing(&xy, &z).unwrap();
                        let rhs = v.pairing(&x, &z).unwrap() ^ v.pairing(&y, &z).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let v = space(2);
        let w = space(3);
        assert_eq!(
            v.pairing(&v.a(0), &w.a(0)),
            Err(Error::DimensionMismatch { left: 4, right: 6 })
        );
        assert!(v.a(0).checked_add(w.a(0)).is_err());
    }

    #[test]
    fn solve_linear_examples() {
        let v = space(2);
        assert_eq!(v.solve_linear(&v.zero()).unwrap(), v.zero());
        // The functional e(a_1, .) has values e(a_1, e_i) on the basis.
        let a1 = v.a(0);
        let values: Vec<bool> = (0..4)
            .map(|i| v.pairing(&a1, &v.basis_vector(i)).unwrap())
            .collect();
        let functional = Gf2Vector::from_bools(&values).unwrap();
        assert_eq!(v.solve_linear(&functional).unwrap(), a1);
    }

    #[test]
    fn solve_linear_rechecks_exhaustively() {
        for n in 1..=4 {
            let v = space(n);
            for f in v.vectors() {
                let x = v.solve_linear(&f).unwrap();
                for i in 0..v.dim() {
                    assert_eq!(v.pairing(&x, &v.basis_vector(i)).unwrap(), f.get(i));
                }
            }
        }
    }

    #[test]
    fn hyperbolic_complement_examples() {
        let v = space(2);
        assert_eq!(v.hyperbolic_complement(&v.a(0)).unwrap(), v.b(0));
        assert_eq!(v.hyperbolic_complement(&(v.a(0) + v.a(1))).unwrap(), v.b(0));
        assert_eq!(v.hyperbolic_complement(&v.b(1)).unwrap(), v.a(1));
        assert_eq!(v.hyperbolic_complement(&v.zero()), Err(Error::ZeroVector));
    }

    #[test]
    fn hyperbolic_complement_always_pairs_to_one() {
        for n in 1..=4 {
            let v = space(n);
            for rho in v.vectors().skip(1) {
                let c = v.hyperbolic_complement(&rho).unwrap();
                assert!(v.pairing(&rho, &c).unwrap());
            }
        }
    }

    #[test]
    fn vector_construction_limits() {
        assert!(Gf2Vector::new(0b100, 2).is_err());
        assert!(Gf2Vector::new(0, 65).is_err());
        assert_eq!(Gf2Vector::new(u64::MAX, 64).unwrap().weight(), 64);
        assert!(SymplecticSpace::new(33).is_err());
        assert_eq!(format!("{}", Gf2Vector::new(0b0110, 4).unwrap()), "0110");
    }
}
