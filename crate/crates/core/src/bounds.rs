//! Closed-form error-correction bounds for the repeated-code decoder.
//!
//! Everything is computed in exact rationals; only the reported error
//! counts are floored.

use std::fmt;

use num::rational::Ratio;
use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, usage, Result};

pub type Rational = Ratio<i128>;

fn r(v: i128) -> Rational {
    Rational::from_integer(v)
}

fn floor(x: Rational) -> i64 {
    x.floor().to_integer() as i64
}

/// Code and decoder parameters shared by all bounds.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BoundInput {
    pub n: u64,
    pub k: u64,
    pub l: u64,
    pub b: Option<u64>,
}

impl BoundInput {
    pub fn new(n: u64, k: u64, l: u64, b: Option<u64>) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return usage(format!("need 1 <= k <= n, got n={n} k={k}"));
        }
        if l == 0 {
            return usage("l must be positive");
        }
        if let Some(b) = b {
            if b < 1 || b > l {
                return usage(format!("b = {b} must lie in 1..={l}"));
            }
        }
        Ok(Self { n, k, l, b })
    }

    /// d = n - k + 1
    pub fn d(&self) -> u64 {
        self.n - self.k + 1
    }

    /// floor(l / 2)
    pub fn half_l(&self) -> u64 {
        self.l / 2
    }

    /// n / (k - 1)
    pub fn gamma(&self) -> Result<Rational> {
        if self.k < 2 {
            return domain("n/(k-1) needs k >= 2");
        }
        Ok(Rational::new(self.n as i128, self.k as i128 - 1))
    }

    /// (l*n - 1) / (k - 1), the largest admissible a.
    pub fn delta(&self) -> Result<Rational> {
        if self.k < 2 {
            return domain("(ln-1)/(k-1) needs k >= 2");
        }
        Ok(Rational::new((self.l * self.n) as i128 - 1, self.k as i128 - 1))
    }
}

/// Guaranteed error count for threshold assignment with b in {floor(l/2), floor(l/2)+1},
/// for error patterns where no nonzero error value repeats b times in a column.
pub fn bound_assignment2(n: u64, k: u64, l: u64, b: u64) -> Result<i64> {
    let input = BoundInput::new(n, k, l, Some(b))?;
    let h = input.half_l() as i64;
    let nk = (n - k) as i64;
    let odd = l % 2 == 1;
    if l < 2 {
        return usage("threshold bounds need l >= 2");
    }
    if b as i64 == h + 1 {
        Ok(if odd { nk * (h + 1) + h } else { nk * h + h - 1 })
    } else if b as i64 == h {
        Ok(if odd { nk * (h + 2) + (h + 1) } else { nk * (h + 1) + h })
    } else {
        usage(format!("b = {b} unsupported; use {h} or {}", h + 1))
    }
}

/// Largest k (as a rational) for which [`bound_assignment2`] reaches half the
/// minimum distance of an [l*n, k] Reed-Solomon code.
pub fn rate_threshold(n: u64, l: u64, b: u64) -> Result<Rational> {
    if l < 2 {
        return usage("rate thresholds need l >= 2");
    }
    let h = (l / 2) as i128;
    let n = n as i128;
    let odd = l % 2 == 1;
    if b as i128 == h + 1 {
        Ok(if odd { Rational::new(n + 2 * h - 1, l as i128) } else { Rational::new(2 * h - 3, 2 * h - 1) })
    } else if b as i128 == h && h >= 1 {
        Ok(if odd { Rational::new(3 * n + 2 * h + 1, 2 * h + 3) } else { Rational::new(2 * n + 2 * h - 1, 2 * h + 1) })
    } else {
        usage(format!("b = {b} unsupported; use {h} or {}", h + 1))
    }
}

/// Integer cap floor(rate_threshold).
pub fn rate_threshold_k(n: u64, l: u64, b: u64) -> Result<i64> {
    rate_threshold(n, l, b).map(floor)
}

/// H(a) = (l*n*(a + 1/2 - l/2) - (k-1)*a*(a+1)/2 - 1) / (a - l + 2)
pub fn h_function(n: u64, k: u64, l: u64, a: Rational) -> Result<Rational> {
    let (n, k, l) = (n as i128, k as i128, l as i128);
    let den = a - r(l) + r(2);
    if den.is_zero() {
        return domain("H has a pole at a = l - 2");
    }
    let half = Rational::new(1, 2);
    let num = r(l * n) * (a + half - Rational::new(l, 2)) - r(k - 1) * a * (a + r(1)) * half - r(1);
    Ok(num / den)
}

/// floor(H(Delta)) with Delta = (l*n - 1)/(k - 1). Assumes at most one error
/// per column and Delta >= l - 2.
pub fn bound_highrate(n: u64, k: u64, l: u64) -> Result<i64> {
    let input = BoundInput::new(n, k, l, None)?;
    if k < 2 || l < 3 {
        return usage("high-rate bound needs k >= 2 and l >= 3");
    }
    h_function(n, k, l, input.delta()?).map(floor)
}

/// floor(d * l(l+1)/4 - 1/2), valid when a <= l.
pub fn bound_corollary(d: u64, l: u64) -> Result<i64> {
    if d < 1 || l < 1 {
        return usage("need d >= 1 and l >= 1");
    }
    let v = Rational::new((d * l * (l + 1)) as i128, 4) - Rational::new(1, 2);
    Ok(floor(v))
}

/// J(a) = (-n(l+3) - 1)/(a + 2) - (k-1) a (a+1) / (2(a+2)) + l n
pub fn j_function(n: u64, k: u64, l: u64, a: Rational) -> Result<Rational> {
    let (n, k, l) = (n as i128, k as i128, l as i128);
    let den = a + r(2);
    if den.is_zero() {
        return domain("J has a pole at a = -2");
    }
    Ok(r(-n * (l + 3) - 1) / den - r(k - 1) * a * (a + r(1)) / (r(2) * den) + r(l * n))
}

/// floor(J(l)); intended for n/(k-1) > 2 with J increasing and a >= l.
pub fn bound_lowrate_increasing(n: u64, k: u64, l: u64) -> Result<i64> {
    BoundInput::new(n, k, l, None)?;
    j_function(n, k, l, r(l as i128)).map(floor)
}

/// floor(J(2l)); intended for n/(k-1) > 2 with J decreasing and a <= 2l.
pub fn bound_lowrate_decreasing(n: u64, k: u64, l: u64) -> Result<i64> {
    BoundInput::new(n, k, l, None)?;
    j_function(n, k, l, r(2 * l as i128)).map(floor)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    Neither,
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::Constant => "constant",
            Monotonicity::Neither => "neither",
        };
        f.write_str(s)
    }
}

/// Classifies J over the integers of `lo..=hi` (non-strict monotonicity).
pub fn j_is_monotone_on(n: u64, k: u64, l: u64, lo: i64, hi: i64) -> Result<Monotonicity> {
    let values = (lo..=hi).map(|a| j_function(n, k, l, r(a as i128))).collect::<Result<Vec<_>>>()?;
    let up = values.windows(2).all(|w| w[1] >= w[0]);
    let down = values.windows(2).all(|w| w[1] <= w[0]);
    Ok(match (up, down) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (false, false) => Monotonicity::Neither,
    })
}

/// Number of interpolation conditions for a column error profile:
/// tau + n(l^2 + l)/2 - sum_i (tau_i + 2 tau_i l - tau_i^2)/2.
pub fn equation_count(l: u64, n: u64, profile: &[u64]) -> Result<i64> {
    if profile.len() as u64 != n {
        return usage(format!("profile has {} entries, n = {n}", profile.len()));
    }
    if let Some(t) = profile.iter().find(|&&t| t > l) {
        return usage(format!("column error count {t} exceeds l = {l}"));
    }
    let (l, n) = (l as i128, n as i128);
    let tau: i128 = profile.iter().map(|&t| t as i128).sum();
    // Twice the value, to stay in integers.
    let twice = 2 * tau + n * (l * l + l)
        - profile
            .iter()
            .map(|&t| {
                let t = t as i128;
                t + 2 * t * l - t * t
            })
            .sum::<i128>();
    debug_assert!(twice % 2 == 0);
    Ok((twice / 2) as i64)
}

/// Monomials of (1, k-1)-weighted degree at most a(k-1) + b:
/// a(a+1)/2 (k-1) + (a+1)(b+1).
pub fn monomial_count(k: u64, a: u64, b: u64) -> Result<u64> {
    if k < 2 || b > k - 2 {
        return usage(format!("need k >= 2 and 0 <= b <= k-2, got k={k} b={b}"));
    }
    Ok(a * (a + 1) / 2 * (k - 1) + (a + 1) * (b + 1))
}

/// Splits l*n - tau - 1 = a(k-1) + b with 0 <= b <= k-2.
pub fn weighted_split(n: u64, k: u64, l: u64, tau: u64) -> Result<(u64, u64)> {
    if k < 2 {
        return usage("need k >= 2");
    }
    if tau + 1 > l * n {
        return usage(format!("tau = {tau} must be below l*n = {}", l * n));
    }
    let total = l * n - tau - 1;
    Ok((total / (k - 1), total % (k - 1)))
}

/// floor((len - k) / 2), the unique-decoding radius of an [len, k] MDS code.
pub fn unique_decoding_radius(len: u64, k: u64) -> u64 {
    (len - k) / 2
}

/// One row of a bounds report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRecord {
    pub name: String,
    pub value: Option<String>,
    pub applicable: bool,
    pub condition: String,
}

/// Every bound for the parameters, with its applicability check.
pub fn report(n: u64, k: u64, l: u64, b: Option<u64>) -> Result<Vec<BoundRecord>> {
    let input = BoundInput::new(n, k, l, b)?;
    let mut out = Vec::new();
    let h = input.half_l();
    let gamma = input.gamma().ok();
    let delta = input.delta().ok();

    out.push(BoundRecord {
        name: "unique_repeated".into(),
        value: Some(((l * input.d() - 1) / 2).to_string()),
        applicable: true,
        condition: format!("floor((l*d - 1)/2) for the [{}, {k}, {}] repeated code", l * n, l * input.d()),
    });
    out.push(BoundRecord {
        name: "unique_rs".into(),
        value: Some(unique_decoding_radius(l * n, k).to_string()),
        applicable: true,
        condition: format!("half the distance of an [{}, {k}] Reed-Solomon code", l * n),
    });

    let bs: Vec<u64> = match b {
        Some(b) => vec![b],
        None => [h + 1, h].into_iter().filter(|&b| b >= 1).collect(),
    };
    if l >= 2 {
        for b in bs {
            let supported = b == h || b == h + 1;
            let value = bound_assignment2(n, k, l, b).ok();
            out.push(BoundRecord {
                name: "assignment2".into(),
                value: value.map(|v| v.to_string()),
                applicable: supported,
                condition: format!("b={b}; no nonzero error value repeated b times in a column"),
            });
            if let Ok(t) = rate_threshold(n, l, b) {
                out.push(BoundRecord {
                    name: "rate_threshold".into(),
                    value: Some(format!("{}", floor(t))),
                    applicable: (k as i128) <= floor(t) as i128,
                    condition: format!(
                        "b={b}; largest k beating half the [ln, k] RS distance is {t} ({:.3})",
                        t.to_f64().unwrap_or(f64::NAN)
                    ),
                });
            }
        }
    }

    if let (Some(gamma), Some(delta)) = (gamma, delta) {
        let high = gamma <= r(2);
        let gamma_s = format!("{:.3}", gamma.to_f64().unwrap_or(f64::NAN));
        if l >= 3 {
            let value = bound_highrate(n, k, l).ok();
            out.push(BoundRecord {
                name: "highrate".into(),
                value: value.map(|v| v.to_string()),
                applicable: high && delta > r(l as i128 - 2),
                condition: format!("needs n/(k-1) <= 2 (here {gamma_s}), tau_i <= 1, Delta = {delta} >= l-2"),
            });
        }
        let corollary = bound_corollary(input.d(), l)?;
        let a = u64::try_from(corollary).ok().and_then(|tau| weighted_split(n, k, l, tau).ok()).map(|(a, _)| a);
        let a_s = a.map_or("undefined".to_string(), |a| a.to_string());
        out.push(BoundRecord {
            name: "corollary".into(),
            value: Some(corollary.to_string()),
            applicable: high && a.is_some_and(|a| a <= l),
            condition: format!("needs n/(k-1) <= 2 (here {gamma_s}) and a <= l at tau = {corollary} (here a = {a_s})"),
        });
        let delta_floor = floor(delta);
        let inc = j_is_monotone_on(n, k, l, l as i64, delta_floor.max(l as i64))?;
        out.push(BoundRecord {
            name: "lowrate_increasing".into(),
            value: Some(bound_lowrate_increasing(n, k, l)?.to_string()),
            applicable: !high && inc == Monotonicity::Increasing,
            condition: format!(
                "needs n/(k-1) > 2 (here {gamma_s}), tau_i >= l-2, J increasing on [{l}, {delta_floor}] (is {inc})"
            ),
        });
        let dec = j_is_monotone_on(n, k, l, 0, 2 * l as i64)?;
        out.push(BoundRecord {
            name: "lowrate_decreasing".into(),
            value: Some(bound_lowrate_decreasing(n, k, l)?.to_string()),
            applicable: !high && dec == Monotonicity::Decreasing,
            condition: format!(
                "needs n/(k-1) > 2 (here {gamma_s}), tau_i >= l-2, J decreasing on [0, {}] (is {dec})",
                2 * l
            ),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment2_goldens() {
        assert_eq!(bound_assignment2(63, 14, 5, 3).unwrap(), 149);
        assert_eq!(bound_assignment2(63, 14, 5, 2).unwrap(), 199);
        assert_eq!(bound_assignment2(63, 40, 5, 3).unwrap(), 71);
        assert_eq!(bound_assignment2(63, 40, 5, 2).unwrap(), 95);
        assert_eq!(bound_assignment2(63, 54, 5, 3).unwrap(), 29);
        assert_eq!(bound_assignment2(63, 54, 5, 2).unwrap(), 39);
        assert_eq!(bound_assignment2(63, 25, 4, 2).unwrap(), 116);
        assert!(bound_assignment2(63, 14, 5, 1).is_err());
        assert!(bound_assignment2(63, 14, 5, 6).is_err());
    }

    #[test]
    fn assignment2_is_one_below_erasing_n_minus_k_plus_one_columns() {
        for l in 2..9u64 {
            for b in [l / 2, l / 2 + 1].into_iter().filter(|&b| b >= 1) {
                for (n, k) in [(15u64, 3u64), (63, 14), (31, 20)] {
                    let per_column = (l - b + 1) as i64;
                    assert_eq!(
                        bound_assignment2(n, k, l, b).unwrap(),
                        (n - k + 1) as i64 * per_column - 1,
                        "n={n} k={k} l={l} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn rate_threshold_goldens() {
        assert_eq!(rate_threshold(63, 5, 3).unwrap(), Rational::new(66, 5));
        assert_eq!(rate_threshold_k(63, 5, 3).unwrap(), 13);
        assert_eq!(rate_threshold(63, 5, 2).unwrap(), Rational::new(194, 7));
        assert_eq!(rate_threshold_k(63, 5, 2).unwrap(), 27);
        assert_eq!(rate_threshold(63, 4, 2).unwrap(), Rational::new(129, 5));
        assert_eq!(rate_threshold_k(63, 4, 2).unwrap(), 25);
        assert!(rate_threshold(63, 4, 3).unwrap() < r(1));
    }

    /// The threshold is exactly where the assignment-2 bound meets
    /// floor((l*n - k + 1)/2), checked by direct comparison over k.
    #[test]
    fn rate_threshold_matches_direct_comparison() {
        for l in [3u64, 5, 7] {
            let n = 63;
            for b in [l / 2, l / 2 + 1] {
                let cap = rate_threshold(n, l, b).unwrap();
                for k in 1..=n {
                    let lhs = bound_assignment2(n, k, l, b).unwrap() as i128;
                    let rhs = Rational::new((n * l - k + 1) as i128, 2);
                    assert_eq!(r(lhs) >= rhs, r(k as i128) <= cap, "l={l} b={b} k={k}");
                }
            }
        }
    }

    #[test]
    fn corollary_goldens() {
        assert_eq!(bound_corollary(24, 5).unwrap(), 179);
        assert_eq!(bound_corollary(10, 5).unwrap(), 74);
        assert_eq!(bound_corollary(1, 1).unwrap(), 0);
        assert!(bound_corollary(0, 5).is_err());
    }

    #[test]
    fn h_at_l_equals_corollary_expression() {
        let v = h_function(63, 14, 5, r(5)).unwrap();
        assert_eq!(v, Rational::new(749, 2));
        let d = 50;
        assert_eq!(v, Rational::new(d * 5 * 6, 4) - Rational::new(1, 2));
        assert!(h_function(63, 14, 5, r(3)).is_err());
    }

    #[test]
    fn h_decreasing_on_integers() {
        let vals: Vec<_> = (4..=15).map(|a| h_function(63, 14, 5, r(a)).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn highrate_goldens() {
        let delta = Rational::new(314, 53);
        let h = h_function(63, 54, 5, delta).unwrap();
        assert!((h.to_f64().unwrap() - 50.63).abs() < 0.01, "{h}");
        assert_eq!(bound_highrate(63, 54, 5).unwrap(), 50);
        let sweep: Vec<i64> = (30..=60).map(|k| bound_highrate(63, k, 5).unwrap()).collect();
        assert!(sweep.windows(2).all(|w| w[1] <= w[0]), "{sweep:?}");
        assert!(bound_highrate(63, 54, 2).is_err());
    }

    #[test]
    fn lowrate_goldens() {
        assert_eq!(bound_lowrate_decreasing(63, 14, 5).unwrap(), 213);
        // 159.28..., floored.
        assert_eq!(j_function(63, 40, 5, r(5)).unwrap(), r(-505) / r(7) - r(39 * 30) / r(14) + r(315));
        assert_eq!(bound_lowrate_increasing(63, 40, 5).unwrap(), 159);
        // k = 1 drops the (k-1) term.
        assert_eq!(j_function(63, 1, 5, r(5)).unwrap(), r(315) - Rational::new(63 * 8 + 1, 7));
        // n=63, k=14, l=3: -379/8 - 13*42/16 + 189
        let want = r(-379) / r(8) - r(13 * 42) / r(16) + r(189);
        assert_eq!(bound_lowrate_decreasing(63, 14, 3).unwrap(), floor(want));
        for l in [3u64, 5] {
            let inc: Vec<i64> = (2..40).map(|k| bound_lowrate_increasing(63, k, l).unwrap()).collect();
            let dec: Vec<i64> = (2..40).map(|k| bound_lowrate_decreasing(63, k, l).unwrap()).collect();
            assert!(inc.windows(2).all(|w| w[1] <= w[0]));
            assert!(dec.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn equation_count_edges() {
        assert_eq!(equation_count(5, 4, &[0; 4]).unwrap(), 4 * 15);
        assert_eq!(equation_count(5, 4, &[5; 4]).unwrap(), 20);
        assert!(equation_count(5, 4, &[6, 0, 0, 0]).is_err());
        assert!(equation_count(5, 4, &[0, 0, 0]).is_err());
    }

    #[test]
    fn monomial_count_edges() {
        assert_eq!(monomial_count(5, 0, 0).unwrap(), 1);
        assert_eq!(monomial_count(3, 1, 0).unwrap(), 4);
        assert!(monomial_count(3, 1, 2).is_err());
        assert!(monomial_count(1, 0, 0).is_err());
    }

    #[test]
    fn weighted_split_roundtrip() {
        let (a, b) = weighted_split(63, 14, 5, 229).unwrap();
        assert_eq!(a * 13 + b, 315 - 229 - 1);
        assert!(b <= 12);
        assert!(weighted_split(63, 14, 5, 315).is_err());
    }

    #[test]
    fn report_contains_goldens() {
        let rep = report(63, 14, 5, Some(3)).unwrap();
        let get = |name: &str| rep.iter().find(|r| r.name == name).unwrap().value.clone().unwrap();
        assert_eq!(get("assignment2"), "149");
        assert_eq!(get("lowrate_decreasing"), "213");
        let rep = report(63, 54, 5, None).unwrap();
        let get = |name: &str| rep.iter().find(|r| r.name == name).unwrap().value.clone().unwrap();
        assert_eq!(get("corollary"), "74");
        assert_eq!(get("highrate"), "50");
        assert!(report(63, 64, 5, None).is_err());
    }
}
