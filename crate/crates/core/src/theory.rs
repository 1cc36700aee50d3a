//! Closed-form and fixed-point predictions for `GR1(m, n, t)`.
//!
//! Throughout, `a` and `b` are recomputed from the sizes via
//! `f(a) = t / m` and `f(b) = t / n`, where `f(x) = x / (1 - e^-x)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::distributions::{poisson_pmf, solve_parameter, TruncPoissonParams};
use crate::error::{Error, Result};

/// Work budget (roughly `m * t`) below which surjection counts are exact.
const EXACT_SURJECTION_BUDGET: u128 = 40_000_000;

/// Work budget for the log-space Stirling recurrence.
const STIRLING_DP_BUDGET: u128 = 400_000_000;

/// Number of surjections from a `t`-set onto an `m`-set,
/// `sum_k (-1)^k C(m, k) (m - k)^t`, in exact arithmetic.
pub fn surjections(t: usize, m: usize) -> BigUint {
    if m == 0 {
        return if t == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if t < m {
        return BigUint::zero();
    }
    let t32 = u32::try_from(t).expect("t fits in u32");
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    let mut binom = BigUint::one();
    for k in 0..m {
        let term = &binom * BigUint::from(m - k).pow(t32);
        if k % 2 == 0 {
            positive += term;
        } else {
            negative += term;
        }
        binom = binom * BigUint::from(m - k) / BigUint::from(k + 1);
    }
    positive - negative
}

/// Natural log of a big integer (`-inf` for zero).
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_add_exp(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return y;
    }
    if y == f64::NEG_INFINITY {
        return x;
    }
    let hi = x.max(y);
    hi + (-(x - y).abs()).exp().ln_1p()
}

/// `ln(m! S(t, m))` through the all-positive Stirling recurrence
/// `S(s, k) = k S(s-1, k) + S(s-1, k-1)`.
fn ln_surjections_stirling(t: usize, m: usize) -> f64 {
    if m == 0 {
        return if t == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if t < m {
        return f64::NEG_INFINITY;
    }
    // row[k] = ln S(s, k) for k = 0..=m
    let mut row = vec![f64::NEG_INFINITY; m + 1];
    row[0] = 0.0;
    for s in 1..=t {
        let top = s.min(m);
        for k in (1..=top).rev() {
            row[k] = ln_add_exp((k as f64).ln() + row[k], row[k - 1]);
        }
        row[0] = f64::NEG_INFINITY;
    }
    row[m] + ln_gamma(m as f64 + 1.0)
}

/// `ln` of the number of surjections `t -> m`.
///
/// Exact big-integer inclusion-exclusion within the work budget, otherwise
/// the log-space Stirling recurrence.
pub fn ln_surjections(t: usize, m: usize) -> Option<f64> {
    if t < m {
        return Some(if m == 0 && t == 0 {
            0.0
        } else {
            f64::NEG_INFINITY
        });
    }
    let work = m as u128 * t as u128;
    if work <= EXACT_SURJECTION_BUDGET {
        Some(ln_biguint(&surjections(t, m)))
    } else if work <= STIRLING_DP_BUDGET {
        Some(ln_surjections_stirling(t, m))
    } else {
        None
    }
}

/// `|GR1(m, n, t)| = (mn)^t P(A) P(B)` as an exact integer: the number of
/// ordered `t`-edge sequences covering every vertex.
pub fn count_exact(m: usize, n: usize, t: usize) -> BigUint {
    surjections(t, m) * surjections(t, n)
}

/// `ln |GR1(m, n, t)|`; `-inf` when `t < max(m, n)`.
///
/// Panics only for sizes beyond the Stirling work budget; use
/// [`try_count_exact_log`] there.
pub fn count_exact_log(m: usize, n: usize, t: usize) -> f64 {
    try_count_exact_log(m, n, t).expect("size within the exact-count budget")
}

/// Like [`count_exact_log`], `None` when the instance is too large.
pub fn try_count_exact_log(m: usize, n: usize, t: usize) -> Option<f64> {
    if t < m.max(n) {
        return Some(f64::NEG_INFINITY);
    }
    Some(ln_surjections(t, m)? + ln_surjections(t, n)?)
}

/// `ln` of `(t!)^2 (e^a - 1)^m a^-t (e^b - 1)^n b^-t / (2 pi sigma_a sigma_b sqrt(mn))`.
pub fn count_asymptotic_log(m: usize, n: usize, t: usize) -> Result<f64> {
    let (pa, pb) = rates(m, n, t as f64)?;
    let (mf, nf, tf) = (m as f64, n as f64, t as f64);
    let (a, b) = (pa.a(), pb.a());
    Ok(
        2.0 * ln_gamma(tf + 1.0) + mf * a.exp_m1().ln() - tf * a.ln() + nf * b.exp_m1().ln()
            - tf * b.ln()
            - (2.0 * std::f64::consts::PI * pa.sigma() * pb.sigma() * (mf * nf).sqrt()).ln(),
    )
}

/// `exp(-t^2 / 2mn)`, the limiting probability that `t` draws are distinct.
pub fn birthday_factor(m: usize, n: usize, t: usize) -> f64 {
    let (m, n, t) = (m as f64, n as f64, t as f64);
    (-t * t / (2.0 * m * n)).exp()
}

/// Exact probability that `t` uniform draws from `mn` slots are distinct.
pub fn distinct_probability(m: usize, n: usize, t: usize) -> f64 {
    let slots = m as f64 * n as f64;
    if t as f64 > slots {
        return 0.0;
    }
    (0..t)
        .map(|k| (-(k as f64) / slots).ln_1p())
        .sum::<f64>()
        .exp()
}

/// Bracket `(exp(-(t/m)(t/n)), 1)` for `|G1| / |GR1|`.
pub fn corollary1_bracket(m: usize, n: usize, t: usize) -> (f64, f64) {
    let (m, n, t) = (m as f64, n as f64, t as f64);
    ((-(t / m) * (t / n)).exp(), 1.0)
}

fn rates(m: usize, n: usize, t: f64) -> Result<(TruncPoissonParams, TruncPoissonParams)> {
    if m == 0 || n == 0 {
        return Err(Error::input("need m, n >= 1"));
    }
    Ok((
        solve_parameter(t / m as f64)?,
        solve_parameter(t / n as f64)?,
    ))
}

/// Extinction probabilities of the two-type branching process whose
/// offspring laws are Poisson(`a`) (left to right) and Poisson(`b`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extinction {
    pub zeta_l: f64,
    pub zeta_r: f64,
    pub xi_l: f64,
    pub xi_r: f64,
    /// Largest `|g(zeta) - zeta|` of the two fixed points.
    pub residual: f64,
}

impl Extinction {
    pub fn giant_left_fraction(&self) -> f64 {
        1.0 - self.xi_l
    }

    pub fn giant_right_fraction(&self) -> f64 {
        1.0 - self.xi_r
    }
}

/// `z -> exp(outer (exp(inner (z - 1)) - 1))`.
pub fn composed_pgf(outer: f64, inner: f64, z: f64) -> f64 {
    (outer * (inner * (z - 1.0)).exp_m1()).exp()
}

/// Smallest fixed point in `[0, 1]` of [`composed_pgf`], by monotone
/// iteration from zero. Returns `(fixed point, iterations)`.
pub fn smallest_fixed_point(outer: f64, inner: f64) -> (f64, usize) {
    if outer * inner <= 1.0 {
        return (1.0, 0);
    }
    let mut z = 0.0;
    for it in 1..=1_000_000 {
        let next = composed_pgf(outer, inner, z);
        let done = (next - z).abs() <= 1e-13;
        z = next;
        if done {
            return (z, it);
        }
    }
    (z, 1_000_000)
}

/// The same fixed point by bisection on `g(z) - z`.
pub fn smallest_fixed_point_bisection(outer: f64, inner: f64) -> f64 {
    if outer * inner <= 1.0 {
        return 1.0;
    }
    let h = |z: f64| composed_pgf(outer, inner, z) - z;
    // g(0) > 0; find a point below 1 where g(z) < z.
    let mut hi = 0.5;
    let mut k = 1;
    while h(hi) >= 0.0 && k < 60 {
        k += 1;
        hi = 1.0 - 0.5f64.powi(k);
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `zeta_R` is the smallest fixed point of `z -> psi2(psi1(z))` with
/// `psi1(z) = e^{a(z-1)}`, `psi2(z) = e^{b(z-1)}`; `zeta_L` swaps `a` and
/// `b`. `xi_L = phi1(zeta_R)`, `xi_R = phi2(zeta_L)` with the truncated
/// Poisson generating functions `phi(z) = (e^{az} - 1) / (e^a - 1)`.
pub fn extinction(a: f64, b: f64) -> Result<Extinction> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "rates must be positive, got a={a}, b={b}"
        )));
    }
    let (zeta_r, _) = smallest_fixed_point(b, a);
    let (zeta_l, _) = smallest_fixed_point(a, b);
    let residual = (composed_pgf(b, a, zeta_r) - zeta_r)
        .abs()
        .max((composed_pgf(a, b, zeta_l) - zeta_l).abs());
    let phi = |rate: f64, z: f64| (rate * z).exp_m1() / rate.exp_m1();
    Ok(Extinction {
        zeta_l,
        zeta_r,
        xi_l: phi(a, zeta_r),
        xi_r: phi(b, zeta_l),
        residual,
    })
}

/// `i^{j-1} j^{i-1}`: labeled spanning trees of `K_{i,j}`.
pub fn labeled_tree_count(i: usize, j: usize) -> BigUint {
    assert!(i >= 1 && j >= 1, "tree sides must be non-empty");
    BigUint::from(i).pow((j - 1) as u32) * BigUint::from(j).pow((i - 1) as u32)
}

/// `ln( i^{j-1} j^{i-1} / (i! j!) )`.
fn ln_tree_coefficient(i: usize, j: usize) -> f64 {
    let (fi, fj) = (i as f64, j as f64);
    (fj - 1.0) * fi.ln() + (fi - 1.0) * fj.ln() - ln_gamma(fi + 1.0) - ln_gamma(fj + 1.0)
}

/// Limiting `E A_{i,j}` in terms of the rates:
/// `i^{j-1} j^{i-1} / (i! j!) (e^-b a)^j (e^-a b)^i t / (ab)`.
pub fn expected_trees_for_rates(i: usize, j: usize, a: f64, b: f64, t: f64) -> f64 {
    let (fi, fj) = (i as f64, j as f64);
    (ln_tree_coefficient(i, j) + fj * (a.ln() - b) + fi * (b.ln() - a) + t.ln() - a.ln() - b.ln())
        .exp()
}

/// Limiting expected number of `(i, j)` trees in `GR1(m, n, t)`.
pub fn expected_trees(i: usize, j: usize, m: usize, n: usize, t: usize) -> Result<f64> {
    if i == 0 || j == 0 {
        return Err(Error::input("tree sides must be at least 1"));
    }
    let (pa, pb) = rates(m, n, t as f64)?;
    Ok(expected_trees_for_rates(i, j, pa.a(), pb.a(), t as f64))
}

/// Expected number of `(i, j)` trees in `G(M, N, p)` with `a = Np`,
/// `b = Mp`: `i^{j-1} j^{i-1} / (i! j!) (e^-b a)^j (e^-a b)^i / p`.
pub fn er_expected_trees(i: usize, j: usize, big_m: usize, big_n: usize, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::domain(format!("p must be positive, got {p}")));
    }
    if i == 0 || j == 0 {
        return Err(Error::input("tree sides must be at least 1"));
    }
    let a = big_n as f64 * p;
    let b = big_m as f64 * p;
    let (fi, fj) = (i as f64, j as f64);
    Ok((ln_tree_coefficient(i, j) + fj * (a.ln() - b) + fi * (b.ln() - a) - p.ln()).exp())
}

/// `c` defined by `t = c mn / (m + n) ln(m + n)`.
pub fn connectivity_c(m: usize, n: usize, t: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    t * (m + n) / (m * n * (m + n).ln())
}

/// Edge count at connectivity parameter `c` (real-valued).
pub fn t_for_connectivity(m: usize, n: usize, c: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    c * m * n * (m + n).ln() / (m + n)
}

/// The `c` at which the limiting `E A_{1,1}` equals one. For `m = n` this
/// decreases toward 1 as `n` grows, slowly.
pub fn unit_isolated_pair_c(m: usize, n: usize) -> Result<f64> {
    let ln_ea = |t: f64| -> Result<f64> {
        let (pa, pb) = rates(m, n, t)?;
        Ok(t.ln() - pa.a() - pb.a())
    };
    let mut lo = m.max(n) as f64 * (1.0 + 1e-9);
    if ln_ea(lo)? <= 0.0 {
        return Err(Error::domain(
            "E A_{1,1} is already below one at t = max(m, n)",
        ));
    }
    let mut hi = 2.0 * lo;
    while ln_ea(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_ea(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(connectivity_c(m, n, 0.5 * (lo + hi)))
}

/// Which tail [`poisson_tail`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailDirection {
    /// `P(X >= k)`
    AtLeast,
    /// `P(X <= k)`; with `k = 0` this is `P(X = 0)`.
    AtMost,
}

/// Tail probability of `X ~ Poisson(mean)`.
pub fn poisson_tail(mean: f64, k: u64, direction: TailDirection) -> f64 {
    let below = |k: u64| (0..k).map(|j| poisson_pmf(mean, j)).sum::<f64>();
    match direction {
        TailDirection::AtLeast => (1.0 - below(k)).clamp(0.0, 1.0),
        TailDirection::AtMost => below(k + 1).clamp(0.0, 1.0),
    }
}

/// Everything the analytic side predicts for one `(m, n, t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub a: TruncPoissonParams,
    pub b: TruncPoissonParams,
    pub ab: f64,
    pub supercritical: bool,
    pub zeta_l: f64,
    pub zeta_r: f64,
    pub xi_l: f64,
    pub xi_r: f64,
    pub giant_left_frac: f64,
    pub giant_right_frac: f64,
    pub extinction_residual: f64,
    pub c: f64,
    /// `ea[i-1][j-1]` is the limiting `E A_{i,j}`.
    pub ea: Vec<Vec<f64>>,
    pub log_count_exact: Option<f64>,
    pub log_count_asymptotic: f64,
    pub count_ratio: Option<f64>,
    pub birthday_factor: f64,
    pub corollary1_bracket: (f64, f64),
}

impl PredictionReport {
    pub fn ea(&self, i: usize, j: usize) -> f64 {
        self.ea[i - 1][j - 1]
    }
}

pub fn predict(m: usize, n: usize, t: usize, max_tree: usize) -> Result<PredictionReport> {
    if max_tree == 0 {
        return Err(Error::input("max_tree must be at least 1"));
    }
    let (pa, pb) = rates(m, n, t as f64)?;
    let (a, b) = (pa.a(), pb.a());
    let ext = extinction(a, b)?;
    let ea = (1..=max_tree)
        .map(|i| {
            (1..=max_tree)
                .map(|j| expected_trees_for_rates(i, j, a, b, t as f64))
                .collect()
        })
        .collect();
    let log_count_exact = try_count_exact_log(m, n, t);
    let log_count_asymptotic = count_asymptotic_log(m, n, t)?;
    Ok(PredictionReport {
        m,
        n,
        t,
        a: pa,
        b: pb,
        ab: a * b,
        supercritical: a * b > 1.0,
        zeta_l: ext.zeta_l,
        zeta_r: ext.zeta_r,
        xi_l: ext.xi_l,
        xi_r: ext.xi_r,
        giant_left_frac: ext.giant_left_fraction(),
        giant_right_frac: ext.giant_right_fraction(),
        extinction_residual: ext.residual,
        c: connectivity_c(m, n, t as f64),
        ea,
        log_count_exact,
        log_count_asymptotic,
        count_ratio: log_count_exact.map(|e| (e - log_count_asymptotic).exp()),
        birthday_factor: birthday_factor(m, n, t),
        corollary1_bracket: corollary1_bracket(m, n, t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_exact(2, 2, 2), BigUint::from(4u32));
        assert!((count_exact_log(2, 2, 2) - 4f64.ln()).abs() < 1e-12);
        assert_eq!(count_exact_log(1, 1, 7), 0.0);
        assert!((count_exact_log(1, 2, 2) - 2f64.ln()).abs() < 1e-12);
        assert_eq!(count_exact_log(3, 2, 2), f64::NEG_INFINITY);
    }

    #[test]
    fn surjection_identities() {
        // m! S(t, m) with S(5, 3) = 25
        assert_eq!(surjections(5, 3), BigUint::from(150u32));
        assert_eq!(surjections(0, 0), BigUint::one());
        assert_eq!(surjections(4, 0), BigUint::zero());
        assert_eq!(surjections(3, 3), BigUint::from(6u32));
    }

    #[test]
    fn stirling_route_matches_exact_route() {
        for (t, m) in [(10, 4), (44, 22), (100, 50), (400, 200), (67, 38)] {
            let exact = ln_biguint(&surjections(t, m));
            let dp = ln_surjections_stirling(t, m);
            assert!(
                (exact - dp).abs() <= 1e-9 * exact.abs().max(1.0),
                "t={t} m={m}: {exact} vs {dp}"
            );
        }
    }

    #[test]
    fn asymptotic_count_is_finite() {
        let v = count_asymptotic_log(22, 27, 44).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(count_asymptotic_log(5, 5, 5).is_err());
    }

    #[test]
    fn birthday_values() {
        assert!((birthday_factor(22, 27, 44) - (-1936.0f64 / 1188.0).exp()).abs() < 1e-15);
        assert!((birthday_factor(22, 27, 44) - 0.1961).abs() < 1e-4);
        assert_eq!(birthday_factor(5, 5, 0), 1.0);
        assert_eq!(distinct_probability(1, 1, 2), 0.0);
        assert_eq!(distinct_probability(2, 2, 1), 1.0);
        assert!((distinct_probability(2, 2, 2) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn subcritical_extinction_is_certain() {
        let e = extinction(0.503, 0.605).unwrap();
        assert_eq!((e.zeta_l, e.zeta_r, e.xi_l, e.xi_r), (1.0, 1.0, 1.0, 1.0));
        let e = extinction(1.0, 1.0).unwrap();
        assert_eq!(e.xi_l, 1.0);
    }

    #[test]
    fn fixed_point_two_methods_agree() {
        for (a, b) in [
            (1.5, 1.5),
            (1.1, 1.0),
            (2.0, 1.0),
            (5.0, 1.0),
            (50.0, 2.0),
            (0.6, 3.0),
        ] {
            let (iter, _) = smallest_fixed_point(b, a);
            let bis = smallest_fixed_point_bisection(b, a);
            assert!((iter - bis).abs() <= 1e-10, "a={a} b={b}: {iter} vs {bis}");
            assert!((composed_pgf(b, a, iter) - iter).abs() <= 1e-12);
            assert!(iter < 1.0);
        }
    }

    #[test]
    fn extinction_relations() {
        let e = extinction(2.0, 0.8).unwrap();
        assert!(e.residual <= 1e-12);
        assert!((e.xi_l - (2.0 * e.zeta_r).exp_m1() / 2f64.exp_m1()).abs() < 1e-15);
        assert!((e.xi_r - (0.8 * e.zeta_l).exp_m1() / 0.8f64.exp_m1()).abs() < 1e-15);
        assert!(extinction(0.0, 1.0).is_err());
    }

    #[test]
    fn large_rate_limit() {
        // As a grows, psi1(z) -> 0 on [0, 1), so zeta_R -> e^{-b}.
        let e = extinction(50.0, 2.0).unwrap();
        assert!((e.zeta_r - (-2.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(labeled_tree_count(1, 1), BigUint::one());
        assert_eq!(labeled_tree_count(2, 2), BigUint::from(4u32));
        assert_eq!(labeled_tree_count(2, 3), BigUint::from(12u32));
        assert_eq!(labeled_tree_count(3, 3), BigUint::from(81u32));
        // Beyond u64: 30^29 * 30^29.
        assert!(labeled_tree_count(30, 30).bits() > 64);
    }

    #[test]
    fn expected_trees_table_values() {
        let ea = expected_trees(1, 1, 22, 21, 28).unwrap();
        assert!((ea - 9.23).abs() / 9.23 < 0.02, "{ea}");
        let ea = expected_trees(2, 1, 20, 22, 38).unwrap();
        assert!((ea - 0.37).abs() / 0.37 < 0.03, "{ea}");
        let ea = expected_trees(1, 2, 22, 19, 32).unwrap();
        assert!((ea - 0.57).abs() / 0.57 < 0.03, "{ea}");
    }

    #[test]
    fn one_one_tree_closed_form() {
        let (m, n, t) = (30, 17, 55);
        let a = solve_parameter(t as f64 / m as f64).unwrap().a();
        let b = solve_parameter(t as f64 / n as f64).unwrap().a();
        let ea = expected_trees(1, 1, m, n, t).unwrap();
        assert!((ea - (-a - b).exp() * t as f64).abs() < 1e-12 * ea);
    }

    #[test]
    fn expected_trees_symmetry() {
        for (i, j) in [(1, 2), (2, 3), (3, 1)] {
            let x = expected_trees(i, j, 22, 27, 44).unwrap();
            let y = expected_trees(j, i, 27, 22, 44).unwrap();
            assert!((x - y).abs() < 1e-12 * x);
        }
    }

    #[test]
    fn er_trees() {
        let (mm, nn, p) = (30, 40, 0.04);
        let (a, b) = (nn as f64 * p, mm as f64 * p);
        let v = er_expected_trees(1, 1, mm, nn, p).unwrap();
        assert!((v - (-a - b).exp() * (mm * nn) as f64 * p).abs() < 1e-12);
        assert!(er_expected_trees(1, 1, 3, 3, 0.0).is_err());
    }

    #[test]
    fn er_trees_track_gr1_trees() {
        let er = crate::generators::er_params_for(22, 21, 28).unwrap();
        for (i, j) in [(1, 1), (2, 1), (1, 2)] {
            let x = expected_trees(i, j, 22, 21, 28).unwrap();
            let y = er_expected_trees(i, j, er.m, er.n, er.p).unwrap();
            assert!((x - y).abs() / x < 0.10, "({i},{j}): {x} vs {y}");
        }
    }

    #[test]
    fn connectivity_parameter() {
        assert!((connectivity_c(22, 27, 44.0) - 0.9327).abs() < 1e-4);
        let n = 1000;
        let t = t_for_connectivity(n, n, 1.3);
        assert!((t - (n as f64 / 2.0) * (2.0 * n as f64).ln() * 1.3).abs() < 1e-9);
        assert!((connectivity_c(n, n, t) - 1.3).abs() < 1e-12);
    }

    #[test]
    fn poisson_tails() {
        assert!((poisson_tail(2.63, 0, TailDirection::AtMost) - (-2.63f64).exp()).abs() < 1e-15);
        assert!((poisson_tail(2.63, 0, TailDirection::AtMost) - 0.072).abs() < 5e-4);
        let p3 = poisson_tail(0.86, 3, TailDirection::AtLeast);
        assert!((p3 - 0.0563).abs() < 1e-3, "{p3}");
        assert_eq!(poisson_tail(1.0, 0, TailDirection::AtLeast), 1.0);
    }

    #[test]
    fn prediction_report_consistency() {
        let r = predict(22, 21, 28, 4).unwrap();
        assert!(r.ab < 1.0 && !r.supercritical);
        assert!((r.ea(1, 1) - 9.23).abs() / 9.23 < 0.02);
        assert_eq!(r.ea.len(), 4);
        assert_eq!(r.giant_left_frac, 0.0);
        let r = predict(20, 22, 38, 2).unwrap();
        assert!((r.ab - 1.771).abs() < 2e-3);
        assert!(r.giant_left_frac > 0.0);
        assert!(r.count_ratio.unwrap() > 0.9 && r.count_ratio.unwrap() < 1.1);
    }
}
