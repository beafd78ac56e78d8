//! Quadratic forms refining the standard symplectic pairing.
//!
//! A form is stored by its values on the hyperbolic basis; every other value
//! follows from `q(u + v) = q(u) + q(v) + e(u, v)`.

use crate::error::{Error, Result};
use crate::gf2::{low_mask, pair_bits, swap_pairs, Gf2Vector, Subspace, SymplecticSpace};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Largest dimension the zero-counting Arf oracle will sweep.
pub const MAX_COUNT_DIM: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    space: SymplecticSpace,
    values: u64,
}

impl QuadraticForm {
    pub fn new(space: SymplecticSpace, basis_values: Gf2Vector) -> Result<Self> {
        if basis_values.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                left: space.dim(),
                right: basis_values.dim(),
            });
        }
        Ok(Self {
            space,
            values: basis_values.bits(),
        })
    }

    pub fn from_bits(space: SymplecticSpace, bits: u64) -> Result<Self> {
        Self::new(space, space.vector(bits)?)
    }

    /// The form vanishing on every basis vector (Arf invariant zero).
    pub fn standard(space: SymplecticSpace) -> Self {
        Self { space, values: 0 }
    }

    /// All `2^{2n}` forms, in increasing order of their basis values.
    pub fn all(space: SymplecticSpace) -> impl Iterator<Item = QuadraticForm> {
        space.vectors().map(move |v| Self {
            space,
            values: v.bits(),
        })
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn basis_values(&self) -> Gf2Vector {
        Gf2Vector::from_raw(self.values, self.space.dim())
    }

    #[inline]
    pub(crate) fn eval_bits(&self, v: u64) -> bool {
        let linear = (v & self.values).count_ones();
        let cross = (v & (v >> 1) & EVEN_BITS).count_ones();
        (linear + cross) & 1 == 1
    }

    pub fn evaluate(&self, v: &Gf2Vector) -> Result<bool> {
        self.space.check(v)?;
        Ok(self.eval_bits(v.bits()))
    }

    /// `sum_i q(a_i) q(b_i)` over the hyperbolic basis.
    pub fn arf(&self) -> bool {
        (self.values & (self.values >> 1) & EVEN_BITS).count_ones() & 1 == 1
    }

    /// Number of zeros of the form, by a Gray-code sweep of the whole space.
    pub fn count_zeros(&self) -> Result<u64> {
        let dim = self.space.dim();
        if dim > MAX_COUNT_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: MAX_COUNT_DIM,
            });
        }
        let mut v = 0u64;
        let mut value = false;
        let mut zeros = 1u64;
        for step in 1u64..1 << dim {
            let j = step.trailing_zeros();
            // q(v + e_j) = q(v) + q(e_j) + e(v, e_j)
            value ^= (self.values >> j & 1 == 1) ^ (v >> (j ^ 1) & 1 == 1);
            v ^= 1 << j;
            zeros += u64::from(!value);
        }
        Ok(zeros)
    }

    /// The Arf invariant from the majority value: the form has Arf zero
    /// exactly when it has `2^{2n-1} + 2^{n-1}` zeros.
    pub fn arf_by_count(&self) -> Result<bool> {
        let zeros = self.count_zeros()?;
        let n = self.space.half_dim();
        let (full, split) = (1u64 << (2 * n), 1u64 << n);
        match zeros {
            z if 2 * z == full + split => Ok(false),
            z if 2 * z == full - split => Ok(true),
            z => unreachable!(
                "a quadratic form on 2^{} vectors cannot have {z} zeros",
                2 * n
            ),
        }
    }

    /// `x -> q(x) + e(alpha, x)`.
    pub fn translate(&self, alpha: &Gf2Vector) -> Result<Self> {
        self.space.check(alpha)?;
        Ok(Self {
            space: self.space,
            values: self.values ^ swap_pairs(alpha.bits()),
        })
    }

    /// The unique `v` with `other = self.translate(v)`.
    pub fn affine_difference(&self, other: &QuadraticForm) -> Result<Gf2Vector> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                left: self.space.dim(),
                right: other.space.dim(),
            });
        }
        let functional = Gf2Vector::from_raw(self.values ^ other.values, self.space.dim());
        self.space.solve_linear(&functional)
    }

    /// The form induced on `subspace`, written in the symplectic basis that
    /// [`Subspace::symplectic_basis`] produces.
    pub fn restrict(&self, subspace: &Subspace) -> Result<QuadraticForm> {
        if subspace.space() != self.space {
            return Err(Error::DimensionMismatch {
                left: self.space.dim(),
                right: subspace.space().dim(),
            });
        }
        let pairs = subspace.symplectic_basis()?;
        let space = SymplecticSpace::new(pairs.len() as u32)?;
        let values = pairs.iter().enumerate().fold(0u64, |acc, (k, (u, w))| {
            acc | (self.eval_bits(u.bits()) as u64) << (2 * k)
                | (self.eval_bits(w.bits()) as u64) << (2 * k + 1)
        });
        debug_assert_eq!(values & !low_mask(space.dim()), 0);
        Ok(Self { space, values })
    }

    /// Polarization identity checked over every pair; exhaustive, small dims only.
    pub fn satisfies_polarization(&self) -> bool {
        let size = 1u64 << self.space.dim();
        (0..size).all(|u| {
            (0..size).all(|v| {
                self.eval_bits(u ^ v) == self.eval_bits(u) ^ self.eval_bits(v) ^ pair_bits(u, v)
            })
        })
    }
}

/// Closed-form number of forms with Arf invariant 0 and 1 on a space of
/// half-dimension `n`: `2^{n-1}(2^n + 1)` and `2^{n-1}(2^n - 1)`.
pub fn arf_class_sizes(half_dim: u32) -> (u128, u128) {
    assert!(half_dim <= 63, "half-dimension {half_dim} overflows u128");
    let full = 1u128 << (2 * half_dim);
    let split = 1u128 << half_dim;
    ((full + split) / 2, (full - split) / 2)
}
