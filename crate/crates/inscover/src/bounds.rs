//! Certified evaluation and inversion of the closed-form density bounds.
//!
//! Everything is computed in exact rational arithmetic. Square roots are
//! enclosed by integer-sqrt scaling, so every reported number is a valid bound
//! in the stated direction: lower bounds round down, upper bounds round up,
//! with display output at precision 1e-7.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn factorial(r: u32) -> BigInt {
    (1..=u64::from(r)).fold(BigInt::one(), |acc, i| acc * big(i))
}

fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

fn least_prime_factor(m: u64) -> u64 {
    if m < 2 {
        return m;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 1;
    }
    m
}

/// `[lo, hi]` with `lo <= sqrt(q) <= hi`, exact when `q` is a perfect square.
///
/// `digits` decimal digits of enclosure width (scaled by the denominator).
fn sqrt_enclosure(q: &BigRational, digits: u32) -> Result<(BigRational, BigRational), Error> {
    if q.is_negative() {
        return Err(Error::InvalidParameter("square root of a negative value".into()));
    }
    if q.is_zero() {
        return Ok((BigRational::zero(), BigRational::zero()));
    }
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q.numer() * q.denom() * &scale * &scale;
    let m = scaled.sqrt();
    let den = q.denom() * &scale;
    if &m * &m == scaled {
        let exact = BigRational::new(m, den);
        return Ok((exact.clone(), exact));
    }
    Ok((
        BigRational::new(m.clone(), den.clone()),
        BigRational::new(m + BigInt::one(), den),
    ))
}

const SQRT_DIGITS: u32 = 14;

/// `floor(x · 10^7) / 10^7` as a float (safe for lower bounds).
pub fn round_down_1e7(x: &BigRational) -> f64 {
    let scaled = (x * BigRational::from(big(10_000_000))).floor();
    scaled.to_integer().to_f64().unwrap_or(f64::NEG_INFINITY) / 1e7
}

/// `ceil(x · 10^7) / 10^7` as a float (safe for upper bounds).
pub fn round_up_1e7(x: &BigRational) -> f64 {
    let scaled = (x * BigRational::from(big(10_000_000))).ceil();
    scaled.to_integer().to_f64().unwrap_or(f64::INFINITY) / 1e7
}

/// Parses a plain decimal literal (`"0.438334"`, `"12"`, `"-3.5"`) into the
/// exact rational it denotes.
pub fn parse_decimal_rational(text: &str) -> Result<BigRational, Error> {
    let bad = || Error::InvalidParameter(format!("not a decimal number: {text:?}"));
    let (sign, digits) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let mut denom = BigInt::one();
    for c in frac_part.chars() {
        numer = numer * 10 + (c as u8 - b'0');
        denom *= 10;
    }
    Ok(BigRational::new(numer * sign, denom))
}

/// Sphere-covering bound `⌈n^(r+1) / ((r+1)(n−1)+1)⌉` on `S(n, r+1, r)`.
pub fn volume_lower(n: u32, r: u32) -> Result<BigInt, Error> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    let numer = big(u64::from(n)).pow(r + 1);
    let denom = big(u64::from(r + 1) * u64::from(n - 1) + 1);
    Ok((&numer + &denom - 1) / denom)
}

/// Exact density lower bound `1/r` for single-insertion covering codes.
pub fn density_lower_1r(r: u32) -> Result<BigRational, Error> {
    if r == 0 {
        return Err(Error::InvalidParameter("need r >= 1".into()));
    }
    Ok(BigRational::new(BigInt::one(), big(u64::from(r))))
}

/// Integer form of the `1/r` bound: `⌈n^r / r⌉` on `S(n, r+1, r)`.
pub fn count_lower_1r(n: u32, r: u32) -> Result<BigInt, Error> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    let numer = big(u64::from(n)).pow(r);
    let denom = big(u64::from(r));
    Ok((&numer + &denom - 1) / denom)
}

/// Direction a reported value was rounded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// One named bound value with its validity metadata.
#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub name: String,
    pub value: BigRational,
    pub display: f64,
    pub rounding: Rounding,
    /// Valid only for sufficiently large r (threshold unspecified); never
    /// merged into consistency checks.
    pub asymptotic: bool,
    pub note: Option<String>,
}

impl BoundEntry {
    fn lower(name: impl Into<String>, value: BigRational) -> Self {
        let display = round_down_1e7(&value);
        BoundEntry {
            name: name.into(),
            value,
            display,
            rounding: Rounding::Down,
            asymptotic: false,
            note: None,
        }
    }

    fn upper(name: impl Into<String>, value: BigRational) -> Self {
        let display = round_up_1e7(&value);
        BoundEntry {
            name: name.into(),
            value,
            display,
            rounding: Rounding::Up,
            asymptotic: false,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn tagged_asymptotic(mut self) -> Self {
        self.asymptotic = true;
        self
    }
}

/// All bounds for one `r` (optionally with an alphabet size for the volume bound).
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub r: u32,
    pub n: Option<u32>,
    pub lower_bounds: Vec<BoundEntry>,
    pub upper_bounds: Vec<BoundEntry>,
}

impl BoundReport {
    /// Every unconditional lower bound is at most every unconditional upper bound.
    pub fn is_consistent(&self) -> bool {
        self.lower_bounds
            .iter()
            .filter(|e| !e.asymptotic)
            .all(|lo| {
                self.upper_bounds
                    .iter()
                    .filter(|e| !e.asymptotic)
                    .all(|hi| lo.value <= hi.value)
            })
    }
}

/// The three density upper bounds `7/(r+1)`, `6.239/(r+1)`, and the
/// asymptotic-only `4.911/(r+1)`.
pub fn upper_bounds(r: u32) -> Result<Vec<BoundEntry>, Error> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("need r >= 2, got r={r}")));
    }
    let den = big(u64::from(r + 1));
    Ok(vec![
        BoundEntry::upper("7/(r+1)", BigRational::new(big(7), den.clone())),
        BoundEntry::upper("6.239/(r+1)", BigRational::new(big(6239), &den * big(1000))),
        BoundEntry::upper("4.911/(r+1)", BigRational::new(big(4911), &den * big(1000)))
            .tagged_asymptotic()
            .with_note("asymptotic — valid only for sufficiently large r (threshold unspecified)"),
    ])
}

/// Odd-`r` triple-system density bound `(5r − √(9r²+24r) + 12) / (2r(r+3))`,
/// rounded downward. Requires odd `r ≥ 3`.
pub fn chung_lu_odd(r: u32) -> Result<BigRational, Error> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "bound applies to odd r >= 3, got r={r}"
        )));
    }
    let r64 = u64::from(r);
    let radicand = BigRational::from(big(9 * r64 * r64 + 24 * r64));
    let (_, sqrt_hi) = sqrt_enclosure(&radicand, SQRT_DIGITS)?;
    // numerator decreases in the radical, so the upper sqrt gives a lower bound
    let numer = BigRational::from(big(5 * r64 + 12)) - sqrt_hi;
    let denom = BigRational::from(big(2 * r64 * (r64 + 3)));
    Ok(numer / denom)
}

/// Even-`r` triple-system density bound
/// `1/r + (1 − 1/r^(p−1)) (r−1)² / (2 r^p (C(r+p, p−1) + C(r+1, 2)))` with `p`
/// the least prime factor of `r−1`; exact rational. Requires even `r ≥ 4`.
pub fn lu_zhao_even(r: u32) -> Result<BigRational, Error> {
    if r < 4 || r % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "bound applies to even r >= 4, got r={r}"
        )));
    }
    let r64 = u64::from(r);
    let p = least_prime_factor(r64 - 1);
    let one_over_r = BigRational::new(BigInt::one(), big(r64));
    let shrink = BigRational::one()
        - BigRational::new(BigInt::one(), big(r64).pow(u32::try_from(p - 1).unwrap()));
    let numer = shrink * BigRational::from(big((r64 - 1) * (r64 - 1)));
    let denom = BigRational::from(
        big(2) * big(r64).pow(u32::try_from(p).unwrap())
            * (binomial_big(r64 + p, p - 1) + binomial_big(r64 + 1, 2)),
    );
    Ok(one_over_r + numer / denom)
}

fn check_tr_sr_domain(s: &BigRational, r: u32) -> Result<(), Error> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("need r >= 3, got r={r}")));
    }
    let lo = BigRational::new(BigInt::one(), big(u64::from(r)));
    if s < &lo || s > &BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "density argument must lie in [1/{r}, 1], got {s}"
        )));
    }
    Ok(())
}

/// Radicand `r(r+1)(1−s)(s−1/r)`, exact.
fn tr_sr_radicand(s: &BigRational, r: u32) -> BigRational {
    let r64 = u64::from(r);
    let one_over_r = BigRational::new(BigInt::one(), big(r64));
    BigRational::from(big(r64 * (r64 + 1)))
        * (BigRational::one() - s)
        * (s - one_over_r)
}

/// `s + 2·r!·√(r(r+1)(1−s)(s−1/r))`, rounded upward.
pub fn tr_sr_rhs(s: &BigRational, r: u32) -> Result<BigRational, Error> {
    check_tr_sr_domain(s, r)?;
    let (_, sqrt_hi) = sqrt_enclosure(&tr_sr_radicand(s, r), SQRT_DIGITS)?;
    Ok(s + BigRational::from(big(2) * factorial(r)) * sqrt_hi)
}

/// Exact predicate `tr_sr_rhs(s) >= t` with the radical squared away.
fn rhs_at_least(s: &BigRational, t: &BigRational, r: u32) -> bool {
    let diff = t - s;
    if !diff.is_positive() {
        return true;
    }
    let four_fact_sq = BigRational::from(big(4) * factorial(r).pow(2));
    four_fact_sq * tr_sr_radicand(s, r) >= &diff * &diff
}

/// Least `s ∈ [1/r, t_lower]` with `tr_sr_rhs(s, r) ≥ t_lower`, by bisection
/// with the exact rational predicate; the returned value satisfies the
/// predicate and sits within 1e-15 of the true threshold.
///
/// `t_lower ≤ 1/r` returns `1/r` exactly.
pub fn invert_tr_sr(t_lower: &BigRational, r: u32) -> Result<BigRational, Error> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("need r >= 3, got r={r}")));
    }
    let one_over_r = BigRational::new(BigInt::one(), big(u64::from(r)));
    if *t_lower <= one_over_r {
        return Ok(one_over_r);
    }
    if *t_lower > BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "target bound must lie in (1/{r}, 1], got {t_lower}"
        )));
    }
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(15));
    let mut lo = one_over_r;
    let mut hi = t_lower.clone();
    debug_assert!(rhs_at_least(&hi, t_lower, r));
    for _ in 0..200 {
        if &hi - &lo <= tol {
            break;
        }
        let mid = (&lo + &hi) / BigRational::from(big(2));
        if rhs_at_least(&mid, t_lower, r) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Closed-form inversion `1/r + (√(t_r + R²) − R)²` with `t_r = t_lower − 1/r`
/// and `R = r·r!`, rounded downward. Never exceeds [`invert_tr_sr`].
pub fn s_lower_closed(t_lower: &BigRational, r: u32) -> Result<BigRational, Error> {
    if r == 0 {
        return Err(Error::InvalidParameter("need r >= 1".into()));
    }
    let one_over_r = BigRational::new(BigInt::one(), big(u64::from(r)));
    let t_r = t_lower - &one_over_r;
    if !t_r.is_positive() {
        return Ok(one_over_r);
    }
    let rr = BigRational::from(big(u64::from(r)) * factorial(r));
    let (sqrt_lo, _) = sqrt_enclosure(&(&t_r + &rr * &rr), SQRT_DIGITS)?;
    let excess = sqrt_lo - rr;
    if !excess.is_positive() {
        return Ok(one_over_r);
    }
    Ok(one_over_r + &excess * &excess)
}

/// Assembles one [`BoundReport`] per requested `r`, feeding the
/// parity-appropriate bound and any known `t`-lower bound through both
/// inversions. `n` adds the volume bound as a density.
pub fn bounds_table(
    r_list: &[u32],
    known_t_lowers: &BTreeMap<u32, BigRational>,
    n: Option<u32>,
) -> Result<Vec<BoundReport>, Error> {
    let mut out = Vec::new();
    for &r in r_list {
        if r == 0 {
            return Err(Error::InvalidParameter("need r >= 1".into()));
        }
        let mut lower = vec![BoundEntry::lower("1/r", density_lower_1r(r)?)];
        if let Some(n) = n {
            if n >= 1 {
                let numer = big(u64::from(n));
                let denom = big(u64::from(r + 1) * u64::from(n.max(1) - 1) + 1);
                lower.push(
                    BoundEntry::lower("volume", BigRational::new(numer, denom))
                        .with_note(format!("n/((r+1)(n-1)+1) at n={n}")),
                );
            }
        }
        let parity_bound = if r >= 3 && r % 2 == 1 {
            Some(("odd", chung_lu_odd(r)?))
        } else if r >= 4 && r % 2 == 0 {
            Some(("even", lu_zhao_even(r)?))
        } else {
            None
        };
        if let Some((parity, t_bound)) = parity_bound {
            if r >= 3 {
                lower.push(
                    BoundEntry::lower(format!("inverted-{parity}-t-bound"), invert_tr_sr(&t_bound, r)?)
                        .with_note(format!("t-bound {}", round_down_1e7(&t_bound))),
                );
                lower.push(
                    BoundEntry::lower(format!("closed-{parity}-t-bound"), s_lower_closed(&t_bound, r)?)
                        .with_note(format!("t-bound {}", round_down_1e7(&t_bound))),
                );
            }
        }
        if let Some(t_known) = known_t_lowers.get(&r) {
            if r >= 3 {
                lower.push(
                    BoundEntry::lower("inverted-known-t", invert_tr_sr(t_known, r)?)
                        .with_note(format!("t-bound {}", round_down_1e7(t_known))),
                );
                lower.push(
                    BoundEntry::lower("closed-known-t", s_lower_closed(t_known, r)?)
                        .with_note(format!("t-bound {}", round_down_1e7(t_known))),
                );
            }
        }
        let upper = if r >= 2 { upper_bounds(r)? } else { Vec::new() };
        let report = BoundReport { r, n, lower_bounds: lower, upper_bounds: upper };
        if !report.is_consistent() {
            return Err(Error::InvalidParameter(format!(
                "inconsistent bound report for r={r}: a lower bound exceeds an upper bound"
            )));
        }
        out.push(report);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(x: &BigRational, expect: f64, tol: f64) {
        let got = x.to_f64().unwrap();
        assert!(
            (got - expect).abs() <= tol,
            "expected {expect} +- {tol}, got {got}"
        );
    }

    #[test]
    fn volume_lower_examples() {
        assert_eq!(volume_lower(3, 3).unwrap(), BigInt::from(9));
        assert_eq!(volume_lower(1, 5).unwrap(), BigInt::from(1));
        assert_eq!(volume_lower(2, 2).unwrap(), BigInt::from(2));
        assert_eq!(volume_lower(4, 3).unwrap(), BigInt::from(20)); // ceil(256/13)
    }

    #[test]
    fn one_over_r_examples() {
        assert_eq!(density_lower_1r(1).unwrap(), BigRational::one());
        assert_eq!(count_lower_1r(3, 3).unwrap(), BigInt::from(9));
        assert_eq!(count_lower_1r(2, 2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn upper_bound_values() {
        let ub = upper_bounds(3).unwrap();
        assert_eq!(ub[0].display, 1.75);
        assert_eq!(ub[1].display, 1.55975);
        assert_eq!(ub[2].display, 1.22775);
        assert!(ub[2].asymptotic);

        let ub = upper_bounds(6).unwrap();
        assert_eq!(ub[0].display, 1.0);
        assert_eq!(ub[1].display, 0.8912858); // 6.239/7 rounded up at 1e-7
        assert_eq!(ub[2].display, 0.7015715); // 4.911/7 rounded up at 1e-7

        // decreasing in r
        for r in 2..20 {
            let a = upper_bounds(r).unwrap();
            let b = upper_bounds(r + 1).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!(x.value > y.value);
            }
        }
    }

    #[test]
    fn chung_lu_odd_examples() {
        // (27 - sqrt(153)) / 36
        let v = chung_lu_odd(3).unwrap();
        approx(&v, (27.0 - 153f64.sqrt()) / 36.0, 1e-9);

        let v5 = chung_lu_odd(5).unwrap();
        assert!(v5 > ratio(1, 5));

        for r in (3..=21u32).step_by(2) {
            let v = chung_lu_odd(r).unwrap();
            assert!(v >= ratio(1, i64::from(r)), "r={r}");
        }
        assert!(chung_lu_odd(4).is_err());
        assert!(chung_lu_odd(1).is_err());
    }

    #[test]
    fn chung_lu_excess_is_cubic() {
        // value - 1/r - 1/r^2 = O(r^-3): |excess| * r^3 stays bounded
        for r in (3..=21u32).step_by(2) {
            let v = chung_lu_odd(r).unwrap();
            let excess = v - ratio(1, i64::from(r)) - ratio(1, i64::from(r) * i64::from(r));
            let scaled = excess * BigRational::from(BigInt::from(r).pow(3));
            assert!(scaled.abs() <= ratio(2, 1), "r={r}: {scaled}");
        }
    }

    #[test]
    fn lu_zhao_even_examples() {
        // p = 3: exactly 1/4 + 135/63488
        let v = lu_zhao_even(4).unwrap();
        assert_eq!(v, ratio(1, 4) + ratio(135, 63488));

        let v6 = lu_zhao_even(6).unwrap();
        assert!(v6 > ratio(1, 6));

        // r=10 has p=3 again and a larger excess than r=6 (p=5) on the r^-3 scale
        let e6 = (lu_zhao_even(6).unwrap() - ratio(1, 6)) * BigRational::from(big(216));
        let e10 = (lu_zhao_even(10).unwrap() - ratio(1, 10)) * BigRational::from(big(1000));
        assert!(e10 > e6);

        assert!(lu_zhao_even(5).is_err());
        assert!(lu_zhao_even(2).is_err());
    }

    #[test]
    fn tr_sr_rhs_examples() {
        for r in 3..=10u32 {
            let s = ratio(1, i64::from(r));
            assert_eq!(tr_sr_rhs(&s, r).unwrap(), s); // radical vanishes exactly
        }
        assert_eq!(tr_sr_rhs(&BigRational::one(), 3).unwrap(), BigRational::one());

        // r=3, s=4/9: matches 24*sqrt((1-s)(3s-1)) + s both ways
        let s = ratio(4, 9);
        let v = tr_sr_rhs(&s, 3).unwrap();
        let direct = 4.0 / 9.0 + 24.0 * f64::sqrt((5.0 / 9.0) * (1.0 / 3.0));
        approx(&v, direct, 1e-9);
        let alt = 4.0 / 9.0 + 24.0 * f64::sqrt((5.0 / 9.0) * (3.0 * (4.0 / 9.0) - 1.0));
        assert!((direct - alt).abs() < 1e-12);

        assert!(tr_sr_rhs(&ratio(1, 5), 3).is_err()); // below 1/r
        assert!(tr_sr_rhs(&ratio(1, 3), 2).is_err());
    }

    #[test]
    fn invert_examples() {
        let t = parse_decimal_rational("0.438334").unwrap();
        let s = invert_tr_sr(&t, 3).unwrap();
        let display = round_down_1e7(&s);
        assert!((0.3333420..=0.3333440).contains(&display), "got {display}");
        assert_eq!(display, 0.3333429);

        // bisection certificate: rhs(result) in [t, t + 1e-6]
        let rhs = tr_sr_rhs(&s, 3).unwrap();
        assert!(rhs >= t);
        assert!(rhs <= &t + ratio(1, 1_000_000));

        // t <= 1/r returns exactly 1/r
        assert_eq!(invert_tr_sr(&ratio(1, 3), 3).unwrap(), ratio(1, 3));
        assert_eq!(invert_tr_sr(&ratio(1, 7), 3).unwrap(), ratio(1, 3));

        // (0.5, 3): barely above 1/3
        let s = invert_tr_sr(&ratio(1, 2), 3).unwrap();
        assert!(s > ratio(1, 3));
        assert!(s < ratio(1, 3) + ratio(1, 10_000));
    }

    #[test]
    fn closed_form_inversion() {
        assert_eq!(s_lower_closed(&ratio(1, 3), 3).unwrap(), ratio(1, 3));

        let t = parse_decimal_rational("0.438334").unwrap();
        let closed = s_lower_closed(&t, 3).unwrap();
        let inverted = invert_tr_sr(&t, 3).unwrap();
        assert!(closed > ratio(1, 3));
        assert!(closed <= inverted);

        let t = parse_decimal_rational("0.444444").unwrap();
        assert!(s_lower_closed(&t, 3).unwrap() > ratio(1, 3));

        // ordering holds across a grid of targets and r
        for r in 3..=6u32 {
            for i in 0..=10i64 {
                let t = ratio(1, i64::from(r)) + ratio(i, 12); // up to ~1
                if t > BigRational::one() {
                    continue;
                }
                let closed = s_lower_closed(&t, r).unwrap();
                let inverted = invert_tr_sr(&t, r).unwrap();
                assert!(closed <= inverted, "r={r} i={i}");
                assert!(closed >= ratio(1, i64::from(r)));
            }
        }
    }

    #[test]
    fn table_examples() {
        let mut known = BTreeMap::new();
        known.insert(3, parse_decimal_rational("0.438334").unwrap());
        let reports = bounds_table(&[2, 3, 4], &known, None).unwrap();

        let r2 = &reports[0];
        assert_eq!(r2.lower_bounds[0].display, 0.5);

        let r3 = &reports[1];
        assert!(r3.lower_bounds.iter().any(|e| e.display == 0.3333429));
        assert!(r3.upper_bounds.iter().any(|e| e.display == 1.55975));

        let r4 = &reports[2];
        let inv = r4
            .lower_bounds
            .iter()
            .find(|e| e.name == "inverted-even-t-bound")
            .unwrap();
        assert!(inv.value >= ratio(1, 4));

        for rep in &reports {
            assert!(rep.is_consistent());
        }
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal_rational("0.438334").unwrap(), ratio(438334, 1_000_000));
        assert_eq!(parse_decimal_rational("12").unwrap(), ratio(12, 1));
        assert_eq!(parse_decimal_rational("-3.5").unwrap(), ratio(-7, 2));
        assert_eq!(parse_decimal_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_decimal_rational("1e-3").is_err());
        assert!(parse_decimal_rational("").is_err());
    }

    #[test]
    fn sqrt_enclosure_is_directed() {
        for (num, den) in [(2i64, 1i64), (153, 1), (5, 27), (1, 3), (9, 4)] {
            let q = ratio(num, den);
            let (lo, hi) = sqrt_enclosure(&q, 14).unwrap();
            assert!(&lo * &lo <= q);
            assert!(&hi * &hi >= q);
            assert!(&hi - &lo <= ratio(1, 10_000_000_000));
        }
        // perfect squares are exact
        let (lo, hi) = sqrt_enclosure(&ratio(9, 4), 14).unwrap();
        assert_eq!(lo, ratio(3, 2));
        assert_eq!(hi, ratio(3, 2));
    }
}
