//! Concrete covers built on the finite base-curve models.
//!
//! The genus-6 bielliptic curve: on an elliptic base take a point `p`, a
//! degree-2 class `alpha`, a divisor `A` in `|alpha(p)|` and `A_1, A_2, A_3`
//! in `|alpha|`, all disjoint and avoiding `p`; branch over
//! `A_1 + A_2 + A_3 + A + p` with `rho = alpha^2(p)`. Besides the 40
//! vanishing thetanulls forced by degree, `O(A_i + A_j + p)` (lifted to the
//! cover) gives three more: `L` trivial with `#E = r = 5`.
//!
//! Note for low genus: a non-hyperelliptic curve of genus 5 has at most 10
//! vanishing thetanulls, attained by Humbert curves, and they are
//! syzygetic. Nothing here models that case.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base_curve::{BaseCurveModel, LineBundleClass, MarkedPoint};
use crate::error::{Error, Result};
use crate::ramified::{
    self, canonicalize, counts, enumerate_theta_chars, h0_theta, EnumerationSummary,
    RamifiedCoverSpec, RamifiedThetaChar,
};

/// Resampling budget for point collisions.
pub const MAX_ATTEMPTS: u32 = 64;

fn coords(class: &LineBundleClass) -> [u64; 2] {
    match class {
        LineBundleClass::Elliptic { point, .. } => *point,
        _ => unreachable!("constructions only place points on the elliptic model"),
    }
}

/// The degree-one class completing `partial` to a divisor in `|target|`.
fn completing_point(
    model: &BaseCurveModel,
    target: &LineBundleClass,
    partial: &[LineBundleClass],
) -> Result<LineBundleClass> {
    let missing = target.tensor(&model.of_divisor(partial)?.inverse())?;
    debug_assert_eq!(missing.degree(), 1);
    Ok(missing)
}

fn all_distinct(points: &[LineBundleClass]) -> bool {
    let mut seen = HashSet::new();
    points.iter().all(|p| seen.insert(coords(p)))
}

#[derive(Clone, Debug, Serialize)]
pub struct BiellipticG6Config {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub seed: u64,
    pub p: LineBundleClass,
    pub alpha: LineBundleClass,
    /// `A`, three points in `|alpha(p)|`.
    pub a: [LineBundleClass; 3],
    /// `A_1, A_2, A_3`, two points each in `|alpha|`.
    pub a_pairs: [[LineBundleClass; 2]; 3],
    pub rho: LineBundleClass,
    #[serde(skip)]
    pub cover: RamifiedCoverSpec,
}

impl BiellipticG6Config {
    /// Bit of `p` in the branch ordering `A_1, A_2, A_3, A, p`.
    pub const P_BIT: u64 = 1 << 9;

    pub fn pair_mask(i: usize) -> u64 {
        0b11 << (2 * i)
    }

    pub fn a_mask() -> u64 {
        0b111 << 6
    }

    /// `A_i + A_j + p` as a subset mask.
    pub fn extra_mask(i: usize, j: usize) -> u64 {
        Self::pair_mask(i) | Self::pair_mask(j) | Self::P_BIT
    }

    pub fn model(&self) -> BaseCurveModel {
        self.cover.model()
    }

    /// Re-derives every construction invariant from the stored points.
    pub fn check_invariants(&self) -> Result<Vec<(String, bool)>> {
        let model = self.model();
        let alpha_p = self.alpha.tensor(&self.p)?;
        let points: Vec<LineBundleClass> =
            self.cover.branch_points().iter().map(|m| m.class).collect();
        let even = points.iter().all(|c| coords(c).iter().all(|x| x % 2 == 0));
        let mut out = vec![
            (
                "ten distinct branch points".to_string(),
                points.len() == 10 && all_distinct(&points),
            ),
            ("all coordinates even".to_string(), even),
            ("deg rho = 5".to_string(), self.rho.degree() == 5),
            (
                "rho = alpha^2(p)".to_string(),
                self.alpha.power(2).tensor(&self.p)? == self.rho,
            ),
            (
                "class(A) = alpha(p)".to_string(),
                model.of_divisor(&self.a)? == alpha_p,
            ),
            (
                "class(R) = rho^2".to_string(),
                model.of_divisor(&points)? == self.rho.power(2),
            ),
            ("genus 6".to_string(), self.cover.genus() == 6),
        ];
        for (i, pair) in self.a_pairs.iter().enumerate() {
            out.push((
                format!("class(A_{}) = alpha", i + 1),
                model.of_divisor(pair)? == self.alpha,
            ));
        }
        Ok(out)
    }
}

/// Samples the genus-6 configuration with every point in `2 (Z/N)^2`, forcing
/// the divisor classes by solving for the last point of each divisor.
pub fn build_bielliptic_g6(modulus: u64, seed: u64) -> Result<BiellipticG6Config> {
    let model = BaseCurveModel::elliptic(modulus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let p = model.sample_even_point(&mut rng)?;
        let alpha = model.of_divisor(&[
            model.sample_even_point(&mut rng)?,
            model.sample_even_point(&mut rng)?,
        ])?;
        let mut a_pairs = Vec::with_capacity(3);
        for _ in 0..3 {
            let first = model.sample_even_point(&mut rng)?;
            let second = completing_point(&model, &alpha, &[first])?;
            a_pairs.push([first, second]);
        }
        let a0 = model.sample_even_point(&mut rng)?;
        let a1 = model.sample_even_point(&mut rng)?;
        let a2 = completing_point(&model, &alpha.tensor(&p)?, &[a0, a1])?;
        let a = [a0, a1, a2];

        let mut points: Vec<LineBundleClass> = a_pairs.iter().flatten().copied().collect();
        points.extend(a);
        points.push(p);
        if !all_distinct(&points) {
            continue;
        }

        let rho = alpha.power(2).tensor(&p)?;
        let mut names = Vec::with_capacity(10);
        for i in 1..=3 {
            names.push(format!("A{i}.1"));
            names.push(format!("A{i}.2"));
        }
        names.extend(["A.1", "A.2", "A.3", "p"].map(String::from));
        let marked = names
            .into_iter()
            .zip(&points)
            .map(|(n, c)| MarkedPoint::new(n, *c))
            .collect();
        let cover = RamifiedCoverSpec::new(model, 5, marked, rho)?;
        let a_pairs = [a_pairs[0], a_pairs[1], a_pairs[2]];
        return Ok(BiellipticG6Config {
            modulus,
            seed,
            p,
            alpha,
            a,
            a_pairs,
            rho,
            cover,
        });
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingRecord {
    #[serde(rename = "L")]
    pub root: LineBundleClass,
    #[serde(rename = "E")]
    pub subset: Vec<String>,
    pub h0: u64,
}

impl VanishingRecord {
    fn new(tc: &RamifiedThetaChar, spec: &RamifiedCoverSpec, h0: u64) -> Self {
        let subset = spec
            .subset_names(tc.subset)
            .into_iter()
            .map(String::from)
            .collect();
        Self {
            root: tc.root,
            subset,
            h0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ForcedExtra {
    /// The pair `(i, j)` of `A_i + A_j + p`, one-based.
    pub pair: [usize; 2],
    pub representative: VanishingRecord,
    pub present: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct G6Certificate {
    pub count: usize,
    /// Vanishing thetanulls with `#E < r`, guaranteed by degree.
    #[serde(rename = "generic_40")]
    pub generic: Vec<VanishingRecord>,
    /// Vanishing thetanulls with `#E = r`.
    pub extras: Vec<VanishingRecord>,
    pub forced_extras: Vec<ForcedExtra>,
}

impl G6Certificate {
    pub fn forced_extras_present(&self) -> bool {
        self.forced_extras.iter().all(|f| f.present)
    }

    /// Extras beyond the three forced ones (accidental coincidences of the
    /// sampled points).
    pub fn accidental_extras(&self) -> usize {
        self.extras
            .len()
            .saturating_sub(self.forced_extras.iter().filter(|f| f.present).count())
    }
}

/// Enumerates all 1024 invariant theta characteristics and records the even
/// ones with sections.
pub fn count_vanishing_g6(config: &BiellipticG6Config) -> Result<G6Certificate> {
    let spec = &config.cover;
    let mut generic = Vec::new();
    let mut extras = Vec::new();
    for tc in enumerate_theta_chars(spec)? {
        if !ramified::is_vanishing(&tc, spec)? {
            continue;
        }
        let h0 = h0_theta(&tc, spec)?.value;
        let record = VanishingRecord::new(&tc, spec, h0);
        if tc.subset_size() < spec.r() {
            generic.push(record);
        } else {
            extras.push(record);
        }
    }

    let trivial = config.model().trivial_class();
    let mut forced_extras = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let raw = RamifiedThetaChar {
            root: trivial,
            subset: BiellipticG6Config::extra_mask(i, j),
        };
        let tc = canonicalize(&raw, spec)?;
        let h0 = h0_theta(&tc, spec)?.value;
        let representative = VanishingRecord::new(&tc, spec, h0);
        let present = h0 == 2 && tc.root.is_trivial() && extras.contains(&representative);
        forced_extras.push(ForcedExtra {
            pair: [i + 1, j + 1],
            representative,
            present,
        });
    }

    Ok(G6Certificate {
        count: generic.len() + extras.len(),
        generic,
        extras,
        forced_extras,
    })
}

/// A bielliptic cover with `2r` unconstrained even branch points: `rho` is
/// sampled first and the last point is solved from `rho^2 = O(R)`.
pub fn build_generic_bielliptic(r: u32, modulus: u64, seed: u64) -> Result<RamifiedCoverSpec> {
    if r == 0 || r > ramified::MAX_R {
        return Err(Error::InvalidParameter(format!(
            "r must lie in 1..={}",
            ramified::MAX_R
        )));
    }
    let model = BaseCurveModel::elliptic(modulus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let offset = model.sample_even_point(&mut rng)?;
        let rho = offset.tensor(&model.class(r as i64 - 1))?;
        let mut points: Vec<LineBundleClass> = (0..2 * r - 1)
            .map(|_| model.sample_even_point(&mut rng))
            .collect::<Result<_>>()?;
        points.push(completing_point(&model, &rho.power(2), &points)?);
        if !all_distinct(&points) {
            continue;
        }
        let marked = points
            .iter()
            .enumerate()
            .map(|(i, c)| MarkedPoint::new(format!("R{}", i + 1), *c))
            .collect();
        return RamifiedCoverSpec::new(model, r, marked, rho);
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericBiellipticCount {
    pub genus: u32,
    pub r: u32,
    pub count: u64,
    #[serde(with = "crate::decimal")]
    pub lower_bound: BigUint,
}

/// Vanishing thetanulls on a sampled bielliptic curve of genus `g`
/// (`b = 1`, `r = g - 1`).
pub fn count_vanishing_generic_bielliptic(
    genus: u32,
    modulus: u64,
    seed: u64,
) -> Result<GenericBiellipticCount> {
    if genus < 3 {
        return Err(Error::InvalidParameter(format!(
            "bielliptic genus must be >= 3, got {genus}"
        )));
    }
    let r = genus - 1;
    let spec = build_generic_bielliptic(r, modulus, seed)?;
    let summary = ramified::summarize(&spec)?;
    Ok(GenericBiellipticCount {
        genus,
        r,
        count: summary.vanishing,
        lower_bound: counts::count_vanishing_lb(1, r)?,
    })
}

/// Largest genus for which the hyperelliptic report also enumerates.
pub const HYPERELLIPTIC_ENUMERATION_LIMIT: u32 = 8;

#[derive(Clone, Debug, Serialize)]
pub struct HyperellipticReport {
    pub genus: u32,
    pub r: u32,
    #[serde(with = "crate::decimal")]
    pub even: BigUint,
    #[serde(with = "crate::decimal")]
    pub odd: BigUint,
    #[serde(with = "crate::decimal")]
    pub vanishing: BigUint,
    pub enumerated: Option<EnumerationSummary>,
}

/// Rational base (`b = 0`, `r = g + 1`).
pub fn hyperelliptic_report(genus: u32) -> Result<HyperellipticReport> {
    if genus < 2 {
        return Err(Error::InvalidParameter(format!(
            "hyperelliptic genus must be >= 2, got {genus}"
        )));
    }
    let r = genus + 1;
    let enumerated = if genus <= HYPERELLIPTIC_ENUMERATION_LIMIT {
        Some(ramified::summarize(&RamifiedCoverSpec::rational(r)?)?)
    } else {
        None
    };
    Ok(HyperellipticReport {
        genus,
        r,
        even: counts::count_even(0, r)?,
        odd: counts::count_odd(0, r)?,
        vanishing: counts::count_vanishing_lb(0, r)?,
        enumerated,
    })
}
