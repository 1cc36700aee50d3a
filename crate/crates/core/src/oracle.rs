//! Brute-force references for tiny instances.
//!
//! Everything here is either exhaustive enumeration or an exact count
//! derived by direct combinatorics, and serves as ground truth for the
//! analytic and sampling code.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::gen_tp;
use crate::graph::UnionFind;
use crate::rng::Stream;
use crate::theory::{count_exact, count_exact_log, labeled_tree_count, ln_biguint, surjections};

/// Largest number of sequences the enumerators will visit by default.
pub const SEQUENCE_CAP: u64 = 10_000_000;

/// Sorted edge multiset; the order in which edges were drawn is erased.
pub type CanonicalKey = Vec<(usize, usize)>;

/// Result of visiting every ordered `t`-edge sequence on `m x n` slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveCensus {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub total_sequences: u64,
    pub valid_count: u64,
    /// Valid sequences grouped by their edge multiset; sums to `valid_count`.
    pub outcome_frequencies: BTreeMap<CanonicalKey, u64>,
}

impl ExhaustiveCensus {
    /// Exact law of the canonical multigraph under `GR1(m, n, t)`.
    pub fn exact_law(&self) -> impl Iterator<Item = (&CanonicalKey, f64)> {
        let total = self.valid_count as f64;
        self.outcome_frequencies
            .iter()
            .map(move |(k, &c)| (k, c as f64 / total))
    }
}

/// `(mn)^t`, or `None` if it exceeds `cap`.
pub fn sequence_space(m: usize, n: usize, t: usize, cap: u64) -> Option<u64> {
    let slots = (m as u64).checked_mul(n as u64)?;
    let mut total = 1u64;
    for _ in 0..t {
        total = total.checked_mul(slots)?;
        if total > cap {
            return None;
        }
    }
    (total <= cap).then_some(total)
}

fn check_size(m: usize, n: usize, t: usize, cap: u64) -> Result<u64> {
    sequence_space(m, n, t, cap)
        .ok_or_else(|| Error::Size(format!("(mn)^t for ({m},{n},{t}) exceeds {cap}")))
}

/// Odometer over all sequences of `t` slots in `0..m*n`, tracking how many
/// vertices on each side still have degree zero.
struct Odometer {
    n: usize,
    slots: usize,
    digits: Vec<usize>,
    left: Vec<u32>,
    right: Vec<u32>,
    left_zero: usize,
    right_zero: usize,
}

impl Odometer {
    fn new(m: usize, n: usize, t: usize) -> Self {
        let mut o = Odometer {
            n,
            slots: m * n,
            digits: vec![0; t],
            left: vec![0; m],
            right: vec![0; n],
            left_zero: m,
            right_zero: n,
        };
        for _ in 0..t {
            o.add(0);
        }
        o
    }

    fn add(&mut self, slot: usize) {
        let (u, v) = (slot / self.n, slot % self.n);
        if self.left[u] == 0 {
            self.left_zero -= 1;
        }
        self.left[u] += 1;
        if self.right[v] == 0 {
            self.right_zero -= 1;
        }
        self.right[v] += 1;
    }

    fn remove(&mut self, slot: usize) {
        let (u, v) = (slot / self.n, slot % self.n);
        self.left[u] -= 1;
        if self.left[u] == 0 {
            self.left_zero += 1;
        }
        self.right[v] -= 1;
        if self.right[v] == 0 {
            self.right_zero += 1;
        }
    }

    fn valid(&self) -> bool {
        self.left_zero == 0 && self.right_zero == 0
    }

    /// Moves to the next sequence; `false` after the last one.
    fn advance(&mut self) -> bool {
        for pos in 0..self.digits.len() {
            let old = self.digits[pos];
            self.remove(old);
            let new = if old + 1 == self.slots { 0 } else { old + 1 };
            self.digits[pos] = new;
            self.add(new);
            if new != 0 {
                return true;
            }
        }
        false
    }

    fn edges(&self) -> CanonicalKey {
        let mut e: Vec<(usize, usize)> = self
            .digits
            .iter()
            .map(|&s| (s / self.n, s % self.n))
            .collect();
        e.sort_unstable();
        e
    }
}

/// Visits every ordered sequence and tallies validity and multisets.
pub fn enumerate_sequences(m: usize, n: usize, t: usize) -> Result<ExhaustiveCensus> {
    enumerate_sequences_with_cap(m, n, t, SEQUENCE_CAP)
}

pub fn enumerate_sequences_with_cap(
    m: usize,
    n: usize,
    t: usize,
    cap: u64,
) -> Result<ExhaustiveCensus> {
    let total_sequences = check_size(m, n, t, cap)?;
    let mut census = ExhaustiveCensus {
        m,
        n,
        t,
        total_sequences,
        valid_count: 0,
        outcome_frequencies: BTreeMap::new(),
    };
    if total_sequences == 0 {
        return Ok(census);
    }
    let mut freq: HashMap<CanonicalKey, u64> = HashMap::new();
    let mut odo = Odometer::new(m, n, t);
    loop {
        if odo.valid() {
            census.valid_count += 1;
            *freq.entry(odo.edges()).or_insert(0) += 1;
        }
        if !odo.advance() {
            break;
        }
    }
    census.outcome_frequencies = freq.into_iter().collect();
    Ok(census)
}

/// Number of valid sequences by exhaustive enumeration, without recording
/// multisets.
pub fn count_valid_sequences(m: usize, n: usize, t: usize, cap: u64) -> Result<u64> {
    let total = check_size(m, n, t, cap)?;
    if total == 0 {
        return Ok(0);
    }
    let mut odo = Odometer::new(m, n, t);
    let mut valid = 0u64;
    loop {
        valid += odo.valid() as u64;
        if !odo.advance() {
            return Ok(valid);
        }
    }
}

/// Labeled spanning trees of `K_{i,j}` by checking every `(i+j-1)`-subset
/// of its edges.
pub fn enumerate_trees(i: usize, j: usize) -> Result<u64> {
    if i == 0 || j == 0 {
        return Err(Error::input("tree sides must be at least 1"));
    }
    if i * j > 20 {
        return Err(Error::Size(format!("K_{{{i},{j}}} has more than 20 edges")));
    }
    let edges = i * j;
    let k = i + j - 1;
    let mut count = 0u64;
    // Gosper's hack over k-subsets of the edge set.
    let mut mask: u64 = (1u64 << k) - 1;
    let limit = 1u64 << edges;
    while mask < limit {
        let mut uf = UnionFind::new(i + j);
        let spanning = (0..edges)
            .filter(|e| mask >> e & 1 == 1)
            .all(|e| uf.union(e / j, i + e % j));
        count += spanning as u64;
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(count)
}

/// Exact `E A_{i,j}` in `GR1(m, n, t)` at finite size.
///
/// Fix `I` (i left) and `J` (j right vertices). They form a tree component
/// exactly when `k = i + j - 1` of the draws are the distinct edges of a
/// spanning tree of `K_{I,J}` and the other `t - k` draws cover the
/// remaining vertices:
/// `C(m,i) C(n,j) T(i,j) t!/(t-k)! Surj(t-k, m-i) Surj(t-k, n-j) / |GR1|`.
pub fn exact_expected_trees(i: usize, j: usize, m: usize, n: usize, t: usize) -> Result<f64> {
    if i == 0 || j == 0 {
        return Err(Error::input("tree sides must be at least 1"));
    }
    let total = count_exact(m, n, t);
    if total.is_zero() {
        return Err(Error::input(format!("GR1({m},{n},{t}) is empty")));
    }
    let k = i + j - 1;
    if i > m || j > n || k > t {
        return Ok(0.0);
    }
    let falling: BigUint = ((t - k + 1)..=t).map(BigUint::from).product();
    let favourable = binomial(m, i)
        * binomial(n, j)
        * labeled_tree_count(i, j)
        * falling
        * surjections(t - k, m - i)
        * surjections(t - k, n - j);
    if favourable.is_zero() {
        return Ok(0.0);
    }
    Ok((ln_biguint(&favourable) - ln_biguint(&total)).exp())
}

/// Exact `E A_{i,j}` in `G(M, N, p)`:
/// `C(M,i) C(N,j) T(i,j) p^k (1-p)^{ij - k + i(N-j) + j(M-i)}`.
pub fn exact_er_expected_trees(
    i: usize,
    j: usize,
    big_m: usize,
    big_n: usize,
    p: f64,
) -> Result<f64> {
    if i == 0 || j == 0 {
        return Err(Error::input("tree sides must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("p must lie in [0, 1], got {p}")));
    }
    if i > big_m || j > big_n {
        return Ok(0.0);
    }
    let k = (i + j - 1) as f64;
    let absent = (i * j) as f64 - k + (i * (big_n - j) + j * (big_m - i)) as f64;
    let ln = ln_biguint(&(binomial(big_m, i) * binomial(big_n, j) * labeled_tree_count(i, j)))
        + k * p.ln()
        + absent * (-p).ln_1p();
    Ok(ln.exp())
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for r in 0..k {
        c = c * BigUint::from(n - r) / BigUint::from(r + 1);
    }
    c
}

/// Distance between sampled `TP(m, n, t)` multigraphs and the exact
/// `GR1(m, n, t)` law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub samples: u64,
    pub outcomes: usize,
    pub tv_distance: f64,
    /// `3 sqrt(outcomes / samples)`.
    pub threshold: f64,
    pub pass: bool,
}

/// Samples `TP(m, n, t)` and compares the empirical law of canonical
/// multigraphs with the exact uniform-over-valid-sequences law.
pub fn lemma1_equivalence_test(
    m: usize,
    n: usize,
    t: usize,
    samples: u64,
    rng: &mut Stream,
) -> Result<Lemma1Report> {
    if samples == 0 {
        return Err(Error::input("need at least one sample"));
    }
    let census = enumerate_sequences(m, n, t)?;
    if census.valid_count == 0 {
        return Err(Error::input(format!("GR1({m},{n},{t}) is empty")));
    }
    let mut observed: HashMap<CanonicalKey, u64> = HashMap::new();
    for _ in 0..samples {
        let g = gen_tp(m, n, t, rng, crate::generators::DEFAULT_MAX_ATTEMPTS)?;
        *observed.entry(g.canonical_edges()).or_insert(0) += 1;
    }
    let s = samples as f64;
    let mut tv = 0.0;
    for (key, p) in census.exact_law() {
        let q = observed.remove(key).unwrap_or(0) as f64 / s;
        tv += (p - q).abs();
    }
    // Anything left was never reachable under the exact law.
    tv += observed.values().map(|&c| c as f64 / s).sum::<f64>();
    let outcomes = census.outcome_frequencies.len();
    let threshold = 3.0 * (outcomes as f64 / s).sqrt();
    let tv_distance = 0.5 * tv;
    Ok(Lemma1Report {
        m,
        n,
        t,
        samples,
        outcomes,
        tv_distance,
        threshold,
        pass: tv_distance <= threshold,
    })
}

/// One comparison of an enumerated count against the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountCheck {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub enumerated: u64,
    pub closed_form: u64,
    /// `round(exp(count_exact_log))`.
    pub from_log: u64,
    pub agrees: bool,
}

/// Largest `t` tried when `m = n = 1`, where `(mn)^t` never grows.
pub const SINGLE_SLOT_MAX_T: usize = 30;

/// Side length up to which instances with `t < max(m, n)` (empty `GR1`)
/// are included.
pub const EMPTY_CASE_MAX_SIDE: usize = 4;

/// Every `(m, n, t)` with `m, n >= 1`, `(mn)^t <= cap` and `GR1` non-empty,
/// plus the empty instances with both sides at most
/// [`EMPTY_CASE_MAX_SIDE`].
pub fn count_check_instances(cap: u64) -> Vec<(usize, usize, usize)> {
    let small = |side: usize| side <= EMPTY_CASE_MAX_SIDE;
    let mut out = Vec::new();
    for m in 1.. {
        if !small(m) && sequence_space(m, 1, m, cap).is_none() {
            break;
        }
        for n in 1.. {
            if !small(n) && sequence_space(m, n, m.max(n), cap).is_none() {
                break;
            }
            for t in 0.. {
                if (m == 1 && n == 1 && t > SINGLE_SLOT_MAX_T)
                    || sequence_space(m, n, t, cap).is_none()
                {
                    break;
                }
                if t >= m.max(n) || (small(m) && small(n)) {
                    out.push((m, n, t));
                }
            }
        }
    }
    out
}

/// Enumerates every instance from [`count_check_instances`] and compares
/// with the closed-form count, both exactly and through its logarithm.
pub fn verify_counts(cap: u64) -> Result<Vec<CountCheck>> {
    count_check_instances(cap)
        .into_par_iter()
        .map(|(m, n, t)| {
            let enumerated = count_valid_sequences(m, n, t, cap)?;
            let closed_form = count_exact(m, n, t).to_u64().expect("bounded by the cap");
            let log = count_exact_log(m, n, t);
            let from_log = if log == f64::NEG_INFINITY {
                0
            } else {
                log.exp().round() as u64
            };
            Ok(CountCheck {
                m,
                n,
                t,
                enumerated,
                closed_form,
                from_log,
                agrees: enumerated == closed_form && enumerated == from_log,
            })
        })
        .collect()
}
