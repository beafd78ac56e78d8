//! Invariant theta characteristics of a double cover with ramification.
//!
//! With `R` the `2r` ramification points and `rho` the line bundle on the
//! base with `rho^2 = O(branch divisor)`, every invariant theta
//! characteristic is `pi^* L (E)` for a subset `E` of `R` and a class `L` on
//! the base with `L^2 = K_B rho (-E)`. The pairs `(L, E)` and
//! `(K_B L^{-1}, R - E)` give the same theta characteristic; the stored form
//! keeps `#E < r`, or `#E = r` with the numerically smaller subset mask.

pub mod counts;

use rayon::prelude::*;
use serde::Serialize;

use crate::base_curve::{BaseCurveModel, LineBundleClass, MarkedPoint, SectionCount};
use crate::error::{Error, Result};
use crate::parity::Parity;

/// Largest `r` with `2r` ramification points fitting a 64-bit subset mask.
pub const MAX_R: u32 = 32;

#[derive(Clone, Debug)]
pub struct RamifiedCoverSpec {
    model: BaseCurveModel,
    r: u32,
    branch_points: Vec<MarkedPoint>,
    rho: LineBundleClass,
}

impl RamifiedCoverSpec {
    pub fn new(
        model: BaseCurveModel,
        r: u32,
        branch_points: Vec<MarkedPoint>,
        rho: LineBundleClass,
    ) -> Result<Self> {
        if r == 0 || r > MAX_R {
            return Err(Error::InvalidParameter(format!(
                "r must lie in 1..={MAX_R}, got {r}"
            )));
        }
        if branch_points.len() != 2 * r as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} ramification points, got {}",
                2 * r,
                branch_points.len()
            )));
        }
        if !model.owns(&rho) || rho.degree() != r as i64 {
            return Err(Error::InvalidParameter(format!(
                "rho must be a degree-{r} class of the base model, got {rho:?}"
            )));
        }
        let branch = model.of_divisor(branch_points.iter().map(|p| &p.class))?;
        if rho.power(2) != branch {
            return Err(Error::InvalidParameter(
                "rho^2 is not the class of the branch divisor".into(),
            ));
        }
        Ok(Self {
            model,
            r,
            branch_points,
            rho,
        })
    }

    /// Hyperelliptic case: a rational base.
    pub fn rational(r: u32) -> Result<Self> {
        let model = BaseCurveModel::rational();
        Self::with_uniform_points(model, r)
    }

    /// A base of genus `b >= 2` modelled at the parity level.
    pub fn generic(b: u32, r: u32) -> Result<Self> {
        let model = BaseCurveModel::generic(b)?;
        Self::with_uniform_points(model, r)
    }

    fn with_uniform_points(model: BaseCurveModel, r: u32) -> Result<Self> {
        let point = model.point()?;
        let points = (0..2 * r)
            .map(|i| MarkedPoint::new(format!("w{}", i + 1), point))
            .collect();
        Self::new(model, r, points, model.class(r as i64))
    }

    pub fn model(&self) -> BaseCurveModel {
        self.model
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn base_genus(&self) -> u32 {
        self.model.genus()
    }

    /// `g = 2b + r - 1`.
    pub fn genus(&self) -> u32 {
        2 * self.base_genus() + self.r - 1
    }

    pub fn branch_points(&self) -> &[MarkedPoint] {
        &self.branch_points
    }

    pub fn rho(&self) -> LineBundleClass {
        self.rho
    }

    pub fn full_mask(&self) -> u64 {
        crate::gf2::low_mask(2 * self.r)
    }

    /// `O(pi_* E)` for the subset `mask`.
    pub fn subset_class(&self, mask: u64) -> Result<LineBundleClass> {
        self.model.of_divisor(
            self.branch_points
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| &p.class),
        )
    }

    pub fn subset_names(&self, mask: u64) -> Vec<&str> {
        self.branch_points
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.name.as_str())
            .collect()
    }

    /// `K_B rho (-pi_* E)`, the class whose square roots pair with `E`.
    pub fn theta_target(&self, mask: u64) -> Result<LineBundleClass> {
        self.model
            .canonical_class()
            .tensor(&self.rho)?
            .tensor(&self.subset_class(mask)?.inverse())
    }

    /// Subset masks of the canonical range in enumeration order: by size,
    /// then numerically, keeping only the smaller half at size `r`.
    pub fn canonical_subsets(&self) -> Vec<u64> {
        let n = 2 * self.r;
        let full = self.full_mask();
        let mut out = Vec::new();
        for k in (self.r % 2..=self.r).step_by(2) {
            for mask in masks_of_weight(n, k) {
                if k < self.r || mask < full ^ mask {
                    out.push(mask);
                }
            }
        }
        out
    }
}

/// All `k`-subsets of `0..n` as masks in increasing order (Gosper's hack).
fn masks_of_weight(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = 1u128 << n;
    let start: u128 = if k == 0 { 0 } else { (1u128 << k) - 1 };
    let mut next = Some(start);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u64)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RamifiedThetaChar {
    /// The class `L` on the base.
    pub root: LineBundleClass,
    /// The subset `E` of ramification points as a bitmask.
    pub subset: u64,
}

impl RamifiedThetaChar {
    pub fn subset_size(&self) -> u32 {
        self.subset.count_ones()
    }

    pub fn is_canonical(&self, spec: &RamifiedCoverSpec) -> bool {
        let k = self.subset_size();
        k < spec.r || (k == spec.r && self.subset < spec.full_mask() ^ self.subset)
    }

    /// `L^2 = K_B rho (-pi_* E)` in the model.
    pub fn satisfies_theta_condition(&self, spec: &RamifiedCoverSpec) -> Result<bool> {
        Ok(self.root.power(2) == spec.theta_target(self.subset)?)
    }
}

/// Every invariant theta characteristic once, in canonical form.
pub fn enumerate_theta_chars(spec: &RamifiedCoverSpec) -> Result<Vec<RamifiedThetaChar>> {
    let mut out = Vec::new();
    for mask in spec.canonical_subsets() {
        let target = spec.theta_target(mask)?;
        for root in spec.model.sqrt_classes(&target)? {
            out.push(RamifiedThetaChar { root, subset: mask });
        }
    }
    Ok(out)
}

/// `(r - #E) / 2 mod 2`.
pub fn parity(tc: &RamifiedThetaChar, spec: &RamifiedCoverSpec) -> Result<Parity> {
    let k = tc.subset_size();
    let diff = spec.r as i64 - k as i64;
    if diff % 2 != 0 {
        return Err(Error::ParityViolation {
            subset: k,
            r: spec.r,
        });
    }
    Ok(Parity::from_bit((diff / 2).rem_euclid(2) == 1))
}

/// `deg L - (b - 1) mod 2`, the same parity read off the degree.
pub fn parity_from_degree(tc: &RamifiedThetaChar, spec: &RamifiedCoverSpec) -> Parity {
    let shifted = tc.root.degree() - (spec.base_genus() as i64 - 1);
    Parity::from_bit(shifted.rem_euclid(2) == 1)
}

/// `h0(L) + h0(K_B L^{-1})`.
pub fn h0_theta(tc: &RamifiedThetaChar, spec: &RamifiedCoverSpec) -> Result<SectionCount> {
    let model = spec.model;
    let dual = model.canonical_class().tensor(&tc.root.inverse())?;
    Ok(model.h0(&tc.root)? + model.h0(&dual)?)
}

/// `h0(L) + h0(L rho^{-1} (pi_* E))`, from the eigen-decomposition of the
/// pushforward.
pub fn h0_via_pushforward(
    tc: &RamifiedThetaChar,
    spec: &RamifiedCoverSpec,
) -> Result<SectionCount> {
    let model = spec.model;
    let anti = tc
        .root
        .tensor(&spec.rho.inverse())?
        .tensor(&spec.subset_class(tc.subset)?)?;
    Ok(model.h0(&tc.root)? + model.h0(&anti)?)
}

/// The other representative `(K_B L^{-1}, R - E)`.
pub fn swap_representation(
    tc: &RamifiedThetaChar,
    spec: &RamifiedCoverSpec,
) -> Result<RamifiedThetaChar> {
    Ok(RamifiedThetaChar {
        root: spec.model.canonical_class().tensor(&tc.root.inverse())?,
        subset: spec.full_mask() ^ tc.subset,
    })
}

pub fn canonicalize(tc: &RamifiedThetaChar, spec: &RamifiedCoverSpec) -> Result<RamifiedThetaChar> {
    if tc.is_canonical(spec) {
        Ok(*tc)
    } else {
        swap_representation(tc, spec)
    }
}

/// Whether the theta characteristic is an even one with sections.
///
/// Exact on rational and elliptic bases. On a generic base this is the
/// degree criterion `#E < r` (so `deg L > b - 1`), which only ever
/// undercounts.
pub fn is_vanishing(tc: &RamifiedThetaChar, spec: &RamifiedCoverSpec) -> Result<bool> {
    if !parity(tc, spec)?.is_even() {
        return Ok(false);
    }
    if spec.model.is_concrete() {
        Ok(h0_theta(tc, spec)?.value > 0)
    } else {
        Ok(tc.subset_size() < spec.r)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub total: u64,
    pub even: u64,
    pub odd: u64,
    /// Even theta characteristics with `#E < r`.
    pub even_below_r: u64,
    pub vanishing: u64,
    /// Set when `vanishing` only counts the degree criterion.
    pub vanishing_is_lower_bound: bool,
}

impl EnumerationSummary {
    fn merge(self, other: Self) -> Self {
        Self {
            total: self.total + other.total,
            even: self.even + other.even,
            odd: self.odd + other.odd,
            even_below_r: self.even_below_r + other.even_below_r,
            vanishing: self.vanishing + other.vanishing,
            vanishing_is_lower_bound: self.vanishing_is_lower_bound
                || other.vanishing_is_lower_bound,
        }
    }
}

/// Enumerates and tallies, in parallel over the subsets `E`.
pub fn summarize(spec: &RamifiedCoverSpec) -> Result<EnumerationSummary> {
    let lower_bound = !spec.model.is_concrete();
    spec.canonical_subsets()
        .into_par_iter()
        .map(|mask| -> Result<EnumerationSummary> {
            let roots = spec.model.sqrt_classes(&spec.theta_target(mask)?)?;
            let mut s = EnumerationSummary {
                vanishing_is_lower_bound: lower_bound,
                ..Default::default()
            };
            for root in roots {
                let tc = RamifiedThetaChar { root, subset: mask };
                s.total += 1;
                if parity(&tc, spec)?.is_even() {
                    s.even += 1;
                    if tc.subset_size() < spec.r {
                        s.even_below_r += 1;
                    }
                } else {
                    s.odd += 1;
                }
                if is_vanishing(&tc, spec)? {
                    s.vanishing += 1;
                }
            }
            Ok(s)
        })
        .try_reduce(EnumerationSummary::default, |a, b| Ok(a.merge(b)))
}
