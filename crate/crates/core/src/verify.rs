//! Enumeration-versus-formula and oracle suites, shared by the CLI and the
//! acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::build_generic_bielliptic;
use crate::error::{Error, Result};
use crate::etale::{
    enumerate_etale, etale_counts, even_affine_subspace, parity_etale, syzygetic_check,
    vanishing_set, vanishing_set_size_by_genus, EtaleCoverSpec,
};
use crate::gf2::SymplecticSpace;
use crate::quadratic::QuadraticForm;
use crate::ramified::{
    self, counts, enumerate_theta_chars, h0_theta, h0_via_pushforward, parity, parity_from_degree,
    RamifiedCoverSpec,
};
use crate::report::Check;

/// Largest `g - b` the counts suite enumerates (`4^{g-b}` elements).
pub const MAX_ENUMERATED_SPAN: u32 = 10;
pub const MAX_IDENTITY_R: u32 = 1000;
pub const MAX_ETALE_B: u32 = 8;
pub const MAX_SYZYGETIC_B: u32 = 5;
pub const MAX_ORACLE_HALF_DIM: u32 = 10;
/// Half-dimension up to which the oracle suite is exhaustive.
pub const EXHAUSTIVE_ORACLE_HALF_DIM: u32 = 3;
pub const ORACLE_SAMPLES: usize = 10_000;

fn bound(what: &str, value: u32, lo: u32, hi: u32) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::InvalidParameter(format!(
            "{what} must lie in {lo}..={hi}, got {value}"
        )));
    }
    Ok(())
}

/// The cover used for base genus `b`: rational for `b = 0`, a sampled
/// elliptic cover for `b = 1`, the generic model otherwise.
pub fn ramified_cover(b: u32, r: u32, modulus: u64, seed: u64) -> Result<RamifiedCoverSpec> {
    match b {
        0 => RamifiedCoverSpec::rational(r),
        1 => build_generic_bielliptic(r, modulus, seed),
        _ => RamifiedCoverSpec::generic(b, r),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct H0Consistency {
    pub checked: u64,
    /// Theta characteristics where the two `h0` formulas disagree.
    pub formula_mismatches: u64,
    /// Theta characteristics whose `h0` parity differs from `(r - #E)/2`.
    pub parity_mismatches: u64,
}

impl H0Consistency {
    pub fn ok(&self) -> bool {
        self.formula_mismatches == 0 && self.parity_mismatches == 0
    }
}

/// Compares `h0(L) + h0(K L^{-1})` with the pushforward form and with the
/// parity formula on every theta characteristic of a concrete model.
pub fn h0_consistency(spec: &RamifiedCoverSpec) -> Result<H0Consistency> {
    if !spec.model().is_concrete() {
        return Err(Error::Unsupported(
            "h0 consistency needs a rational or elliptic base".into(),
        ));
    }
    let mut out = H0Consistency::default();
    for tc in enumerate_theta_chars(spec)? {
        let direct = h0_theta(&tc, spec)?;
        let pushed = h0_via_pushforward(&tc, spec)?;
        let p = parity(&tc, spec)?;
        out.checked += 1;
        if direct != pushed {
            out.formula_mismatches += 1;
        }
        if direct.value % 2 != p.bit() as u64 || parity_from_degree(&tc, spec) != p {
            out.parity_mismatches += 1;
        }
    }
    Ok(out)
}

/// Enumeration against the closed forms for `b <= max_b`, `1 <= r <= max_r`.
pub fn counts_suite(max_b: u32, max_r: u32, modulus: u64, seed: u64) -> Result<Vec<Check>> {
    bound("max-r", max_r, 1, ramified::MAX_R)?;
    if max_b + max_r - 1 > MAX_ENUMERATED_SPAN {
        return Err(Error::InvalidParameter(format!(
            "max-b + max-r - 1 must be at most {MAX_ENUMERATED_SPAN}"
        )));
    }
    let cases: Vec<(u32, u32)> = (0..=max_b)
        .flat_map(|b| (1..=max_r).map(move |r| (b, r)))
        .collect();
    let per_case: Vec<Vec<Check>> = cases
        .into_par_iter()
        .map(|(b, r)| -> Result<Vec<Check>> {
            let spec = ramified_cover(b, r, modulus, seed)?;
            let s = ramified::summarize(&spec)?;
            let tag = format!("b={b} r={r}");
            let lb = counts::count_vanishing_lb(b, r)?;
            let mut checks = vec![
                Check::equal(format!("{tag} total"), counts::total(b, r)?, s.total),
                Check::equal(format!("{tag} even"), counts::count_even(b, r)?, s.even),
                Check::equal(format!("{tag} odd"), counts::count_odd(b, r)?, s.odd),
                Check::equal(format!("{tag} even with #E<r"), &lb, s.even_below_r),
                Check::holds(
                    format!("{tag} vanishing >= bound"),
                    num_bigint::BigUint::from(s.vanishing) >= lb,
                    format!(">= {lb}"),
                    s.vanishing,
                ),
            ];
            if spec.model().is_concrete() {
                let h = h0_consistency(&spec)?;
                checks.push(Check::holds(
                    format!("{tag} h0 consistency"),
                    h.ok(),
                    "0 mismatches",
                    format!(
                        "{} formula, {} parity mismatches of {}",
                        h.formula_mismatches, h.parity_mismatches, h.checked
                    ),
                ));
            }
            Ok(checks)
        })
        .collect::<Result<_>>()?;
    Ok(per_case.into_iter().flatten().collect())
}

/// The binomial identity, directly and through the roots-of-unity filter.
pub fn identities_suite(max_r: u32) -> Result<Vec<Check>> {
    bound("max-r", max_r, 1, MAX_IDENTITY_R)?;
    Ok((1..=max_r)
        .into_par_iter()
        .map(|r| {
            let ok = counts::binomial_identity_check(r);
            Check::holds(
                format!("identity r={r}"),
                ok,
                "holds",
                if ok { "holds" } else { "fails" },
            )
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EtaleTally {
    pub total: u128,
    pub even: u128,
    pub odd: u128,
    pub vanishing_set_size: u128,
}

/// Enumerated counts for one étale cover.
pub fn etale_tally(spec: &EtaleCoverSpec) -> Result<EtaleTally> {
    let all = enumerate_etale(spec);
    let mut even = 0u128;
    for tc in &all {
        if parity_etale(tc, spec)?.is_even() {
            even += 1;
        }
    }
    let total = all.len() as u128;
    Ok(EtaleTally {
        total,
        even,
        odd: total - even,
        vanishing_set_size: vanishing_set(spec).len() as u128,
    })
}

/// Étale enumeration against the closed forms for `1 <= b <= max_b`.
pub fn etale_suite(max_b: u32) -> Result<Vec<Check>> {
    bound("max-b", max_b, 1, MAX_ETALE_B)?;
    let per_b: Vec<Vec<Check>> = (1..=max_b)
        .into_par_iter()
        .map(|b| -> Result<Vec<Check>> {
            let spec = EtaleCoverSpec::standard(b)?;
            let closed = etale_counts(b)?;
            let t = etale_tally(&spec)?;
            let by_genus = vanishing_set_size_by_genus(spec.genus());
            let tag = format!("b={b}");
            Ok(vec![
                Check::equal(format!("{tag} total"), closed.total, t.total),
                Check::equal(format!("{tag} even"), closed.even, t.even),
                Check::equal(format!("{tag} odd"), closed.odd, t.odd),
                Check::equal(
                    format!("{tag} |T|"),
                    closed.vanishing_set_size,
                    t.vanishing_set_size,
                ),
                Check::equal(
                    format!("{tag} |T| by genus"),
                    by_genus,
                    t.vanishing_set_size,
                ),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per_b.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SyzygeticSummary {
    pub base_genus: u32,
    pub vanishing_set_size: u64,
    pub triples: u64,
    pub odd_triples: u64,
    pub subspace_size: u64,
    pub odd_in_subspace: u64,
    pub outside_subspace: u64,
}

/// All ordered triples of `T`, and the even affine subspace around it.
pub fn syzygetic_summary(spec: &EtaleCoverSpec) -> Result<SyzygeticSummary> {
    let t = vanishing_set(spec);
    let sub = even_affine_subspace(spec);
    let odd_triples = t
        .par_iter()
        .map(|t1| -> Result<u64> {
            let mut odd = 0;
            for t2 in &t {
                for t3 in &t {
                    if !syzygetic_check(t1, t2, t3, spec)?.is_even() {
                        odd += 1;
                    }
                }
            }
            Ok(odd)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let mut odd_in_subspace = 0;
    for tc in &sub {
        if !parity_etale(tc, spec)?.is_even() {
            odd_in_subspace += 1;
        }
    }
    let outside = t.iter().filter(|tc| !sub.contains(tc)).count() as u64;
    let n = t.len() as u64;
    Ok(SyzygeticSummary {
        base_genus: spec.base_genus(),
        vanishing_set_size: n,
        triples: n * n * n,
        odd_triples,
        subspace_size: sub.len() as u64,
        odd_in_subspace,
        outside_subspace: outside,
    })
}

pub fn syzygetic_suite(max_b: u32) -> Result<Vec<Check>> {
    bound("max-b", max_b, 1, MAX_SYZYGETIC_B)?;
    let mut checks = Vec::new();
    for b in 1..=max_b {
        let spec = EtaleCoverSpec::standard(b)?;
        let s = syzygetic_summary(&spec)?;
        let g = spec.genus();
        let tag = format!("b={b}");
        checks.push(Check::equal(format!("{tag} odd triples"), 0, s.odd_triples));
        checks.push(Check::equal(
            format!("{tag} T outside subspace"),
            0,
            s.outside_subspace,
        ));
        checks.push(Check::equal(
            format!("{tag} subspace size"),
            1u64 << (g - 1),
            s.subspace_size,
        ));
        checks.push(Check::equal(
            format!("{tag} odd in subspace"),
            0,
            s.odd_in_subspace,
        ));
    }
    Ok(checks)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleTally {
    pub checked: u64,
    pub mismatches: u64,
}

fn tally(forms: &[QuadraticForm]) -> Result<OracleTally> {
    forms
        .par_iter()
        .map(|q| -> Result<OracleTally> {
            let differs = q.arf() != q.arf_by_count()?;
            Ok(OracleTally {
                checked: 1,
                mismatches: differs as u64,
            })
        })
        .try_reduce(OracleTally::default, |a, b| {
            Ok(OracleTally {
                checked: a.checked + b.checked,
                mismatches: a.mismatches + b.mismatches,
            })
        })
}

/// Basis-formula Arf against the zero count on every form of `GF(2)^{2n}`.
pub fn arf_oracle_exhaustive(half_dim: u32) -> Result<OracleTally> {
    let space = SymplecticSpace::new(half_dim)?;
    tally(&QuadraticForm::all(space).collect::<Vec<_>>())
}

/// The same comparison on seeded random forms with half-dimension uniform in
/// `1..=max_half_dim`.
pub fn arf_oracle_random(samples: usize, max_half_dim: u32, seed: u64) -> Result<OracleTally> {
    bound(
        "half dimension",
        max_half_dim,
        1,
        MAX_ORACLE_HALF_DIM.max(crate::quadratic::MAX_COUNT_DIM / 2),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = (0..samples)
        .map(|_| {
            let space = SymplecticSpace::new(rng.gen_range(1..=max_half_dim))?;
            let bits = rng.gen::<u64>() & ((1u64 << space.dim()) - 1);
            QuadraticForm::from_bits(space, bits)
        })
        .collect::<Result<Vec<_>>>()?;
    tally(&forms)
}

pub fn oracle_suite(max_half_dim: u32, seed: u64) -> Result<Vec<Check>> {
    bound("max-b", max_half_dim, 1, MAX_ORACLE_HALF_DIM)?;
    let mut checks = Vec::new();
    for n in 1..=max_half_dim.min(EXHAUSTIVE_ORACLE_HALF_DIM) {
        let t = arf_oracle_exhaustive(n)?;
        checks.push(Check::holds(
            format!("exhaustive dim={}", 2 * n),
            t.mismatches == 0 && t.checked == 1 << (2 * n),
            format!("0 mismatches of {}", 1u64 << (2 * n)),
            format!("{} mismatches of {}", t.mismatches, t.checked),
        ));
    }
    let t = arf_oracle_random(ORACLE_SAMPLES, max_half_dim, seed)?;
    checks.push(Check::holds(
        format!("random dim<={}", 2 * max_half_dim),
        t.mismatches == 0,
        format!("0 mismatches of {ORACLE_SAMPLES}"),
        format!("{} mismatches of {}", t.mismatches, t.checked),
    ));
    Ok(checks)
}
