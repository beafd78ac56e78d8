use super::{elimination, pair_bits, Gf2Vector, SymplecticSpace};
use crate::error::{Error, Result};

/// A linear subspace of a symplectic space, stored by an independent basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    space: SymplecticSpace,
    basis: Vec<Gf2Vector>,
}

impl Subspace {
    /// Wraps `basis`, rejecting dependent vectors.
    pub fn new(space: SymplecticSpace, basis: Vec<Gf2Vector>) -> Result<Self> {
        for v in &basis {
            space.check(v)?;
        }
        let rows: Vec<u64> = basis.iter().map(Gf2Vector::bits).collect();
        if elimination::rank(&rows, space.dim()) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { space, basis })
    }

    /// The span of arbitrary vectors; dependent ones are dropped in order.
    pub fn span(space: SymplecticSpace, vectors: &[Gf2Vector]) -> Result<Self> {
        let mut basis: Vec<Gf2Vector> = Vec::new();
        let mut rows: Vec<u64> = Vec::new();
        for v in vectors {
            space.check(v)?;
            rows.push(v.bits());
            if elimination::rank(&rows, space.dim()) > basis.len() {
                basis.push(*v);
            } else {
                rows.pop();
            }
        }
        Ok(Self { space, basis })
    }

    pub fn whole(space: SymplecticSpace) -> Self {
        let basis = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
        Self { space, basis }
    }

    pub fn zero(space: SymplecticSpace) -> Self {
        Self {
            space,
            basis: Vec::new(),
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.basis
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        if v.dim() != self.space.dim() {
            return false;
        }
        let mut rows: Vec<u64> = self.basis.iter().map(Gf2Vector::bits).collect();
        rows.push(v.bits());
        elimination::rank(&rows, self.space.dim()) == self.basis.len()
    }

    /// All `2^dim` elements, indexed by their coordinates in the stored basis.
    pub fn elements(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        assert!(self.basis.len() < 64);
        (0..1u64 << self.basis.len()).map(move |coords| {
            let bits = self
                .basis
                .iter()
                .enumerate()
                .filter(|(i, _)| coords >> i & 1 == 1)
                .fold(0, |acc, (_, v)| acc ^ v.bits());
            Gf2Vector::from_raw(bits, self.space.dim())
        })
    }

    /// `{v : e(v, s) = 0 for all s in self}`.
    pub fn perp(&self) -> Subspace {
        let dim = self.space.dim();
        // e(s, v) = <swap(s), v>, so the rows are the swapped basis vectors.
        let rows: Vec<u64> = self
            .basis
            .iter()
            .map(|s| super::swap_pairs(s.bits()))
            .collect();
        let basis = elimination::nullspace(&rows, dim)
            .into_iter()
            .map(|bits| Gf2Vector::from_raw(bits, dim))
            .collect();
        Subspace {
            space: self.space,
            basis,
        }
    }

    pub fn intersects_trivially(&self, other: &Subspace) -> bool {
        let rows: Vec<u64> = self
            .basis
            .iter()
            .chain(&other.basis)
            .map(Gf2Vector::bits)
            .collect();
        elimination::rank(&rows, self.space.dim()) == self.basis.len() + other.basis.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        let gram: Vec<u64> = self
            .basis
            .iter()
            .map(|u| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| pair_bits(u.bits(), v.bits()))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        elimination::rank(&gram, self.dim()) == self.basis.len()
    }

    /// A symplectic basis `(u_1, w_1), ..., (u_k, w_k)` of the subspace.
    ///
    /// Pairs are formed greedily in basis order: the first remaining vector is
    /// matched with the first later vector pairing to one with it, and the
    /// rest are projected off the new hyperbolic plane.
    pub fn symplectic_basis(&self) -> Result<Vec<(Gf2Vector, Gf2Vector)>> {
        let mut remaining: Vec<u64> = self.basis.iter().map(Gf2Vector::bits).collect();
        let mut pairs = Vec::with_capacity(remaining.len() / 2);
        while !remaining.is_empty() {
            let u = remaining.remove(0);
            let j = remaining
                .iter()
                .position(|&w| pair_bits(u, w))
                .ok_or(Error::DegenerateSubspace)?;
            let w = remaining.remove(j);
            for x in remaining.iter_mut() {
                let mut y = *x;
                if pair_bits(*x, w) {
                    y ^= u;
                }
                if pair_bits(*x, u) {
                    y ^= w;
                }
                *x = y;
            }
            let dim = self.space.dim();
            pairs.push((Gf2Vector::from_raw(u, dim), Gf2Vector::from_raw(w, dim)));
        }
        Ok(pairs)
    }
}

impl PartialEq for Subspace {
    /// Equality of spans, not of stored bases.
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.dim() == other.dim()
            && other.basis.iter().all(|v| self.contains(v))
    }
}

impl Eq for Subspace {}
