//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.
//!
//! Closed forms are re-derived here in plain integer or rational
//! arithmetic so the library formulas are not checked against themselves.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use thetanull::constructions::{build_bielliptic_g6, count_vanishing_g6, hyperelliptic_report};
use thetanull::etale::{vanishing_set, EtaleCoverSpec};
use thetanull::ramified::{counts, summarize};
use thetanull::verify::{
    self, arf_oracle_exhaustive, arf_oracle_random, etale_tally, h0_consistency, ramified_cover,
};

const MODULUS: u64 = 240;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn oracle_counts(b: u128, r: u128) -> (u128, u128, u128, u128) {
    let g = 2 * b + r - 1;
    let total = 1u128 << (2 * (g - b));
    // 2^{g-1}(...) written as 2^g(...)/2 so g = 0 needs no special case.
    let even = ((1u128 << g) * ((1 << (g - 2 * b)) + 1)) / 2;
    let odd = ((1u128 << g) * ((1 << (g - 2 * b)) - 1)) / 2;
    let scaled = (1u128 << (g + r - 1)) * ((1 << (g - 2 * b)) + 1) - (1u128 << g) * binom(2 * r, r);
    assert_eq!(scaled % (1 << r), 0);
    (total, even, odd, scaled >> r)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for b in 0..=3u32 {
        for r in 1..=6u32 {
            let s = summarize(&ramified_cover(b, r, MODULUS, 0).unwrap()).unwrap();
            let (total, even, odd, _) = oracle_counts(b as u128, r as u128);
            if (s.total as u128, s.even as u128, s.odd as u128) != (total, even, odd) {
                bad.push(format!("(b={b},r={r})"));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 10),
        format!(
            "24 cases, mismatches [{}], {:.2}s (< 10s)",
            bad.join(" "),
            t.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for b in 0..=3u32 {
        for r in 1..=6u32 {
            let s = summarize(&ramified_cover(b, r, MODULUS, 0).unwrap()).unwrap();
            let lb = oracle_counts(b as u128, r as u128).3;
            if s.even_below_r as u128 != lb
                || counts::count_vanishing_lb(b, r).unwrap() != BigUint::from(lb)
            {
                bad.push(format!("(b={b},r={r})"));
            }
        }
    }
    let at_1_5 = counts::count_vanishing_lb(1, 5).unwrap();
    outcome(
        bad.is_empty() && at_1_5 == BigUint::from(40u32),
        format!(
            "mismatches [{}], (b,r)=(1,5) gives {at_1_5} (expected 40)",
            bad.join(" ")
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let failing: Vec<u32> = (1..=30)
        .filter(|&r| !counts::binomial_identity_check(r))
        .collect();
    let t = start.elapsed();
    outcome(
        failing.is_empty() && within(t, 1),
        format!(
            "r=1..30, failing {failing:?}, {:.3}s (< 1s)",
            t.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut got = Vec::new();
    let mut enumerated_ok = true;
    for g in 2..=4 {
        let rep = hyperelliptic_report(g).unwrap();
        let e = rep.enumerated.expect("small genus is enumerated");
        enumerated_ok &= BigUint::from(e.vanishing) == rep.vanishing;
        got.push(rep.vanishing);
    }
    let expected: Vec<BigUint> = [0u32, 1, 10].map(BigUint::from).to_vec();
    outcome(
        got == expected && enumerated_ok,
        format!("g=2,3,4 give {got:?} (expected [0, 1, 10]), enumeration agrees: {enumerated_ok}"),
    )
}

fn criterion_5() -> Outcome {
    let mut counts_seen = Vec::new();
    let mut all_forced = true;
    let mut slowest = Duration::ZERO;
    for seed in 0..10 {
        let start = Instant::now();
        let cfg = build_bielliptic_g6(MODULUS, seed).unwrap();
        let cert = count_vanishing_g6(&cfg).unwrap();
        slowest = slowest.max(start.elapsed());
        all_forced &= cert.forced_extras_present()
            && cert
                .forced_extras
                .iter()
                .all(|f| f.representative.h0 == 2 && f.representative.root.is_trivial());
        counts_seen.push(cert.count);
    }
    let exactly = counts_seen.iter().filter(|&&c| c == 43).count();
    let pass =
        counts_seen.iter().all(|&c| c >= 43) && exactly >= 8 && all_forced && within(slowest, 5);
    outcome(
        pass,
        format!(
            "counts {counts_seen:?}, exactly 43 on {exactly}/10, forced extras on every seed: {all_forced}, slowest seed {:.3}s (< 5s)",
            slowest.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for b in 1..=6u32 {
        let t = etale_tally(&EtaleCoverSpec::standard(b).unwrap()).unwrap();
        let g = 2 * b - 1;
        if t.even != 3 << (g - 1) || t.odd != 1 << (g - 1) {
            bad.push(format!("parity b={b}"));
        }
    }
    for b in 1..=8u32 {
        let g = 2 * b as i64 - 1;
        let n = vanishing_set(&EtaleCoverSpec::standard(b).unwrap()).len() as i64;
        // 2^{g-2} - 2^{(g-3)/2}, scaled by 2 so b = 1 stays integral.
        let expected2 = (1i64 << (g - 1)) - (1i64 << ((g - 1) / 2));
        if 2 * n != expected2 {
            bad.push(format!("|T| b={b}"));
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 10),
        format!(
            "mismatches [{}], {:.2}s (< 10s)",
            bad.join(" "),
            t.as_secs_f64()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for b in 1..=5 {
        let spec = EtaleCoverSpec::standard(b).unwrap();
        let s = verify::syzygetic_summary(&spec).unwrap();
        let ok = s.odd_triples == 0
            && s.outside_subspace == 0
            && s.odd_in_subspace == 0
            && s.subspace_size == 1 << (spec.genus() - 1);
        pass &= ok;
        detail.push(format!(
            "b={b}: {} triples, {} odd",
            s.triples, s.odd_triples
        ));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut mismatches = 0;
    for n in 1..=3 {
        let t = arf_oracle_exhaustive(n).unwrap();
        checked += t.checked;
        mismatches += t.mismatches;
    }
    let random = arf_oracle_random(10_000, 10, 0).unwrap();
    outcome(
        mismatches == 0 && random.mismatches == 0 && random.checked == 10_000,
        format!(
            "exhaustive dim<=6: {mismatches}/{checked} mismatches; random dim<=20: {}/{} mismatches",
            random.mismatches, random.checked
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (b, seeds) in [(0u32, 0..1u64), (1, 0..4)] {
        for seed in seeds {
            for r in 1..=6 {
                let h = h0_consistency(&ramified_cover(b, r, MODULUS, seed).unwrap()).unwrap();
                checked += h.checked;
                if !h.ok() {
                    bad.push(format!("(b={b},r={r},seed={seed})"));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} theta characteristics, failing [{}]",
            bad.join(" ")
        ),
    )
}

/// `1 + 2^{1-r} - 2^{2-2r} C(2r, r)` in rationals.
fn oracle_ratio(r: u32) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let c = BigRational::from_integer(BigInt::from(counts::binomial(2 * r as u64, r as u64)));
    BigRational::one() + two.pow(1 - r as i32) - two.pow(2 - 2 * r as i32) * c
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let ratios: Vec<BigRational> = (2..=200)
        .map(|r| counts::asymptotic_ratio(0, r).unwrap())
        .collect();
    let independent = (2..=200u32).all(|r| {
        (1..=3).all(|b| counts::asymptotic_ratio(b, r).unwrap() == ratios[r as usize - 2])
    });
    let matches_oracle = (2..=200u32).all(|r| ratios[r as usize - 2] == oracle_ratio(r));
    let not_increasing: Vec<u32> = (3..=200u32)
        .filter(|&r| ratios[r as usize - 2] <= ratios[r as usize - 3])
        .collect();
    let non_decreasing = ratios.windows(2).all(|w| w[1] >= w[0]);
    let last = &ratios[ratios.len() - 1];
    let exceeds = last > &BigRational::new(BigInt::from(4), BigInt::from(5));
    let t = start.elapsed();
    let first_positive = ratios.iter().position(|q| q.is_positive()).map(|i| i + 2);
    outcome(
        independent && matches_oracle && not_increasing.is_empty() && exceeds && within(t, 5),
        format!(
            "independent of b: {independent}; strictly increasing on 2..200: {} (fails at r={not_increasing:?}, ratio(2)=ratio(3)={}; non-decreasing: {non_decreasing}, first positive at r={first_positive:?}); ratio(200)={:.6} > 0.8: {exceeds}; {:.2}s",
            not_increasing.is_empty(),
            ratios[0],
            last.to_f64().unwrap_or(f64::NAN),
            t.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed form vs enumeration, ramified", criterion_1),
        ("vanishing lower bound", criterion_2),
        ("roots-of-unity identity", criterion_3),
        ("hyperelliptic specialization", criterion_4),
        ("genus-6 bielliptic construction", criterion_5),
        ("etale counts", criterion_6),
        ("syzygetic suite", criterion_7),
        ("Arf oracle equivalence", criterion_8),
        ("h0 cross-consistency", criterion_9),
        ("asymptotic ratio", criterion_10),
    ];
    let mut failed = 0;
    println!();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{mark}] {name}: {}", i + 1, o.detail);
        failed += !o.pass as usize;
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
