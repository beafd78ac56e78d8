//! Closed-form counts for invariant theta characteristics of a ramified
//! double cover `C -> B` with `g(B) = b` and `2r` ramification points, so
//! that `g(C) = 2b + r - 1`.
//!
//! Everything is exact. Formulas with negative powers of two are evaluated
//! with the denominators cleared and the final division asserted exact.

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok(())
}

/// Exact quotient, or an error naming the formula when the division leaves
/// a remainder.
fn exact_div(num: &BigInt, den: &BigUint, what: &str) -> Result<BigUint> {
    let den = BigInt::from(den.clone());
    if (num % &den) != BigInt::zero() {
        return Err(Error::InexactDivision(format!("{what}: {num} / {den}")));
    }
    let q = num / den;
    match q.to_biguint() {
        Some(v) => Ok(v),
        None => Err(Error::InexactDivision(format!(
            "{what}: negative result {q}"
        ))),
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `g = 2b + r - 1`.
pub fn genus(b: u32, r: u32) -> u64 {
    2 * b as u64 + r as u64 - 1
}

/// `2^{2(g-b)}`, the number of invariant theta characteristics.
pub fn total(b: u32, r: u32) -> Result<BigUint> {
    check_r(r)?;
    Ok(pow2(2 * (genus(b, r) - b as u64)))
}

fn signed_count(b: u32, r: u32, sign: i8) -> Result<BigUint> {
    check_r(r)?;
    let g = genus(b, r);
    // 2^{g-1}(2^{g-2b} ± 1) = 2^g (2^{g-2b} ± 1) / 2
    let inner = BigInt::from(pow2(g - 2 * b as u64)) + BigInt::from(sign);
    let num = BigInt::from(pow2(g)) * inner;
    exact_div(&num, &pow2(1), "2^{g-1}(2^{g-2b} ± 1)")
}

/// `2^{g-1}(2^{g-2b} + 1)`.
pub fn count_even(b: u32, r: u32) -> Result<BigUint> {
    signed_count(b, r, 1)
}

/// `2^{g-1}(2^{g-2b} - 1)`.
pub fn count_odd(b: u32, r: u32) -> Result<BigUint> {
    signed_count(b, r, -1)
}

/// `2^{g-1}(2^{g-2b} + 1 - 2^{1-r} C(2r, r))`, the number of invariant
/// vanishing thetanulls guaranteed by degree alone.
pub fn count_vanishing_lb(b: u32, r: u32) -> Result<BigUint> {
    check_r(r)?;
    let g = genus(b, r);
    let r = r as u64;
    // Multiply through by 2^r:
    //   2^{g+r-1}(2^{g-2b} + 1) - 2^g C(2r, r)
    let main = BigInt::from(pow2(g + r - 1)) * (BigInt::from(pow2(g - 2 * b as u64)) + 1);
    let central = BigInt::from(pow2(g)) * BigInt::from(binomial(2 * r, r));
    exact_div(&(main - central), &pow2(r), "vanishing lower bound")
}

/// `sum_{k = r mod 4} C(2r, k)` summed directly.
pub fn residue_class_sum(r: u32) -> BigUint {
    let n = 2 * r as u64;
    (0..=n)
        .filter(|&k| (k + 4 * n - r as u64).is_multiple_of(4))
        .map(|k| binomial(n, k))
        .sum()
}

/// The four-term roots-of-unity filter
/// `(1+1)^{2r} + (-1)^r (1-1)^{2r} + (-i)^r (1+i)^{2r} + i^r (1-i)^{2r}`
/// in exact Gaussian integers.
pub fn roots_of_unity_filter(r: u32) -> Complex<BigInt> {
    let c = |re: i64, im: i64| Complex::new(BigInt::from(re), BigInt::from(im));
    let two_r = 2 * r;
    [
        (c(1, 0), c(2, 0)),
        (c(-1, 0), c(0, 0)),
        (c(0, -1), c(1, 1)),
        (c(0, 1), c(1, -1)),
    ]
    .into_iter()
    .map(|(twist, base)| twist.powu(r) * base.powu(two_r))
    .fold(c(0, 0), |acc, term| acc + term)
}

/// Checks `1/2 C(2r,r) + sum_{j>=1} C(2r, r-4j) = 2^{2r-3} + 2^{r-2}` with
/// denominators cleared, once through the direct binomial sum and once
/// through the roots-of-unity filter.
pub fn binomial_identity_check(r: u32) -> bool {
    if r == 0 {
        return false;
    }
    let r64 = r as u64;
    let central = binomial(2 * r64, r64);
    let tail: BigUint = (1..)
        .take_while(|j| 4 * j <= r64)
        .map(|j| binomial(2 * r64, r64 - 4 * j))
        .sum();
    // Twice the left side, and twice the right side.
    let lhs2 = central + 2u32 * tail;
    let rhs2 = pow2(2 * r64 - 2) + pow2(r64 - 1);

    let filter = roots_of_unity_filter(r);
    let filter_real = filter.im.is_zero() && filter.re.sign() != Sign::Minus;
    let filter_matches = filter_real && filter.re == BigInt::from(4u32 * &lhs2);

    lhs2 == rhs2 && filter_matches && residue_class_sum(r) == lhs2
}

/// `count_vanishing_lb(b, r) / 2^{2g - 1 - 2b}` as an exact rational.
pub fn asymptotic_ratio(b: u32, r: u32) -> Result<BigRational> {
    let lb = BigInt::from(count_vanishing_lb(b, r)?);
    // 2g - 1 - 2b = 2b + 2r - 3
    let exponent = 2 * b as i64 + 2 * r as i64 - 3;
    let ratio = if exponent >= 0 {
        BigRational::new(lb, BigInt::from(pow2(exponent as u64)))
    } else {
        BigRational::from_integer(lb * BigInt::from(pow2((-exponent) as u64)))
    };
    Ok(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Pascal's triangle, independent of the multiplicative formula.
    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..rows {
            let prev = &t[n - 1];
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_matches_pascal() {
        let t = pascal(70);
        for (n, row) in t.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as u64), v);
            }
            assert!(binomial(n as u64, n as u64 + 1).is_zero());
        }
    }

    #[test]
    fn closed_form_examples() {
        let u = |v: BigUint| v.to_u64().unwrap();
        assert_eq!(u(count_even(1, 5).unwrap()), 544);
        assert_eq!(u(count_odd(1, 5).unwrap()), 480);
        assert_eq!(u(count_even(0, 4).unwrap()), 36);
        assert_eq!(u(count_odd(0, 4).unwrap()), 28);
        assert_eq!(u(count_even(2, 1).unwrap()), 16);
        assert_eq!(u(count_odd(2, 1).unwrap()), 0);
        assert_eq!(u(count_even(0, 1).unwrap()), 1);
        assert_eq!(u(count_odd(0, 1).unwrap()), 0);
    }

    #[test]
    fn vanishing_examples() {
        let u = |v: BigUint| v.to_u64().unwrap();
        assert_eq!(u(count_vanishing_lb(1, 5).unwrap()), 40);
        assert_eq!(u(count_vanishing_lb(0, 4).unwrap()), 1);
        assert_eq!(u(count_vanishing_lb(0, 3).unwrap()), 0);
        assert_eq!(u(count_vanishing_lb(0, 5).unwrap()), 10);
        assert_eq!(u(count_vanishing_lb(1, 2).unwrap()), 0);
    }

    /// The formula evaluated literally in rationals.
    fn literal_lb(b: u32, r: u32) -> BigRational {
        let g = genus(b, r) as i32;
        let two = BigRational::from_integer(BigInt::from(2));
        let p = |e: i32| two.pow(e);
        let c = BigRational::from_integer(BigInt::from(binomial(2 * r as u64, r as u64)));
        p(g - 1) * (p(g - 2 * b as i32) + BigRational::one() - p(1 - r as i32) * c)
    }

    #[test]
    fn cleared_denominators_match_literal_formula() {
        for b in 0..=6 {
            for r in 1..=40 {
                let ours = BigRational::from_integer(count_vanishing_lb(b, r).unwrap().into());
                assert_eq!(ours, literal_lb(b, r), "b={b} r={r}");
                let e = count_even(b, r).unwrap();
                let o = count_odd(b, r).unwrap();
                assert_eq!(e + o, total(b, r).unwrap());
            }
        }
    }

    #[test]
    fn large_genus_stays_exact() {
        // g = 46 and far beyond: no overflow anywhere.
        assert!(count_vanishing_lb(0, 47).is_ok());
        assert!(count_vanishing_lb(3, 300).is_ok());
    }

    #[test]
    fn zero_r_is_rejected() {
        assert!(count_even(1, 0).is_err());
        assert!(total(0, 0).is_err());
    }

    #[test]
    fn identity_examples() {
        // r = 2: 1/2 * 6 = 3 = 2 + 1
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        // r = 5: 126 + C(10, 1) = 136 = 2^7 + 2^3
        assert_eq!(
            binomial(10, 5) / 2u32 + binomial(10, 1),
            BigUint::from(136u32)
        );
        for r in 1..=30 {
            assert!(binomial_identity_check(r), "r = {r}");
        }
        assert!(!binomial_identity_check(0));
    }

    #[test]
    fn filter_is_real_and_four_times_class_sum() {
        for r in 1..=12 {
            let f = roots_of_unity_filter(r);
            assert!(f.im.is_zero());
            assert_eq!(f.re, BigInt::from(4u32 * residue_class_sum(r)));
        }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(
            asymptotic_ratio(1, 5).unwrap(),
            BigRational::new(5.into(), 64.into())
        );
        assert!(asymptotic_ratio(0, 3).unwrap().is_zero());
        for r in 1..=20 {
            let base = asymptotic_ratio(0, r).unwrap();
            for b in 1..=4 {
                assert_eq!(asymptotic_ratio(b, r).unwrap(), base);
            }
        }
    }
}
