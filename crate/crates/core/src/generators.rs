//! Random bipartite multigraph models.
//!
//! * `GR(m, n, t)`: `t` independent uniform draws from the `mn` edge slots.
//! * `GR1(m, n, t)`: `GR` conditioned on every vertex having degree >= 1.
//! * `TP(m, n, t)`: configuration model with zero-truncated Poisson degrees
//!   conditioned to sum to `t` on each side. Same law as `GR1`.
//! * `ER(M, N, p)`: every one of the `MN` edges present independently.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::{solve_parameter, trunc_pmf, TruncPoissonSampler};
use crate::error::{Error, Result};
use crate::graph::{covers, BipartiteMultigraph};
use crate::rng::{stream, Stream};

pub const DEFAULT_MAX_ATTEMPTS: u64 = 1_000_000;

/// A random model together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    Gr {
        m: usize,
        n: usize,
        t: usize,
    },
    Gr1 {
        m: usize,
        n: usize,
        t: usize,
        max_attempts: u64,
    },
    Tp {
        m: usize,
        n: usize,
        t: usize,
        max_attempts: u64,
    },
    Er {
        m: usize,
        n: usize,
        p: f64,
    },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Gr { .. } => "gr",
            Model::Gr1 { .. } => "gr1",
            Model::Tp { .. } => "tp",
            Model::Er { .. } => "er",
        }
    }

    /// Checks the model's preconditions without sampling.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Model::Gr { m, n, t } => {
                if t > 0 && (m == 0 || n == 0) {
                    return Err(Error::input(format!(
                        "gr needs m, n >= 1 to place {t} edges"
                    )));
                }
            }
            Model::Gr1 {
                m,
                n,
                t,
                max_attempts,
            }
            | Model::Tp {
                m,
                n,
                t,
                max_attempts,
            } => {
                check_min_degree_feasible(m, n, t)?;
                if max_attempts == 0 {
                    return Err(Error::input("max_attempts must be at least 1"));
                }
            }
            Model::Er { p, .. } => check_probability(p)?,
        }
        Ok(())
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<BipartiteMultigraph> {
        match *self {
            Model::Gr { m, n, t } => gen_gr(m, n, t, rng),
            Model::Gr1 {
                m,
                n,
                t,
                max_attempts,
            } => gen_gr1_rejection(m, n, t, rng, max_attempts),
            Model::Tp {
                m,
                n,
                t,
                max_attempts,
            } => gen_tp(m, n, t, rng, max_attempts),
            Model::Er { m, n, p } => gen_er(m, n, p, rng),
        }
    }
}

/// A model plus the seed of its stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        Self { model, seed }
    }

    /// Samples from a fresh stream seeded with `self.seed`.
    pub fn generate(&self) -> Result<BipartiteMultigraph> {
        self.model.validate()?;
        let mut rng: Stream = stream(self.seed);
        self.model.generate(&mut rng)
    }
}

fn check_min_degree_feasible(m: usize, n: usize, t: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::input(format!("need m, n >= 1, got m={m}, n={n}")));
    }
    if t < m.max(n) {
        return Err(Error::input(format!(
            "t >= max(m, n) is required for minimum degree 1, got t={t}, m={m}, n={n}"
        )));
    }
    Ok(())
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// `t` uniform draws with replacement from the `mn` edge slots, in draw order.
pub fn gen_gr<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    t: usize,
    rng: &mut R,
) -> Result<BipartiteMultigraph> {
    Model::Gr { m, n, t }.validate()?;
    Ok(BipartiteMultigraph::from_parts_unchecked(
        m,
        n,
        draw_edges(m, n, t, rng),
    ))
}

fn draw_edges<R: Rng + ?Sized>(m: usize, n: usize, t: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if t == 0 {
        return Vec::new();
    }
    let slots = (m as u64) * (n as u64);
    (0..t)
        .map(|_| {
            let s = rng.random_range(0..slots);
            ((s / n as u64) as usize, (s % n as u64) as usize)
        })
        .collect()
}

/// Acceptance probability heuristic `(1 - e^{-t/m})^m (1 - e^{-t/n})^n`.
pub fn gr1_acceptance_estimate(m: usize, n: usize, t: usize) -> f64 {
    let (m, n, t) = (m as f64, n as f64, t as f64);
    ((-(-t / m).exp()).ln_1p() * m + (-(-t / n).exp()).ln_1p() * n).exp()
}

/// `GR` conditioned on minimum degree one, by whole-sample rejection.
pub fn gen_gr1_rejection<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    t: usize,
    rng: &mut R,
    max_attempts: u64,
) -> Result<BipartiteMultigraph> {
    Model::Gr1 {
        m,
        n,
        t,
        max_attempts,
    }
    .validate()?;
    for _ in 0..max_attempts {
        let edges = draw_edges(m, n, t, rng);
        if covers(m, n, &edges) {
            return Ok(BipartiteMultigraph::from_parts_unchecked(m, n, edges));
        }
    }
    Err(Error::AttemptsExhausted {
        what: "gr1 rejection",
        attempts: max_attempts,
        acceptance: gr1_acceptance_estimate(m, n, t),
    })
}

/// Degrees of `count` vertices: iid zero-truncated Poisson with mean
/// `total / count`, conditioned on summing to `total`.
///
/// Rejection sampler: the first `count - 1` degrees are drawn iid, the last
/// is forced to `total - sum` and accepted with probability
/// `pmf(last) / max pmf`. This yields the exact conditional law.
pub fn sample_degree_sequence<R: Rng + ?Sized>(
    count: usize,
    total: usize,
    rng: &mut R,
    max_attempts: u64,
) -> Result<Vec<usize>> {
    if count == 0 {
        return if total == 0 {
            Ok(Vec::new())
        } else {
            Err(Error::input("cannot place edges on an empty side"))
        };
    }
    if total < count {
        return Err(Error::input(format!(
            "degree sum {total} below vertex count {count}"
        )));
    }
    if total == count {
        return Ok(vec![1; count]);
    }
    if count == 1 {
        return Ok(vec![total]);
    }
    let params = solve_parameter(total as f64 / count as f64)?;
    let sampler = TruncPoissonSampler::new(params);
    let pmf_max = sampler.pmf_max();
    let mut degrees = vec![0usize; count];
    'attempt: for _ in 0..max_attempts {
        let mut sum = 0usize;
        for (i, d) in degrees.iter_mut().enumerate().take(count - 1) {
            *d = sampler.sample(rng) as usize;
            sum += *d;
            // every remaining vertex, including the forced last one, needs >= 1
            if sum + (count - 1 - i) > total {
                continue 'attempt;
            }
        }
        let last = total - sum;
        let accept = trunc_pmf(&params, last as u64) / pmf_max;
        if rng.random::<f64>() < accept {
            degrees[count - 1] = last;
            return Ok(degrees);
        }
    }
    let acceptance =
        1.0 / ((2.0 * std::f64::consts::PI * params.sigma2() * count as f64).sqrt() * pmf_max);
    Err(Error::AttemptsExhausted {
        what: "truncated Poisson degree-sum conditioning",
        attempts: max_attempts,
        acceptance,
    })
}

/// Pairs stub lists uniformly: both lists are shuffled and matched by
/// position, so edge `k` joins the `k`-th left and right stubs.
pub fn pair_stubs<R: Rng + ?Sized>(
    left_degrees: &[usize],
    right_degrees: &[usize],
    rng: &mut R,
) -> Result<BipartiteMultigraph> {
    let t: usize = left_degrees.iter().sum();
    if right_degrees.iter().sum::<usize>() != t {
        return Err(Error::input("left and right degree sums differ"));
    }
    let mut left: Vec<usize> = stubs(left_degrees);
    let mut right: Vec<usize> = stubs(right_degrees);
    left.shuffle(rng);
    right.shuffle(rng);
    let edges = left.into_iter().zip(right).collect();
    Ok(BipartiteMultigraph::from_parts_unchecked(
        left_degrees.len(),
        right_degrees.len(),
        edges,
    ))
}

fn stubs(degrees: &[usize]) -> Vec<usize> {
    degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect()
}

/// Samples `TP(m, n, t)`.
pub fn gen_tp<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    t: usize,
    rng: &mut R,
    max_attempts: u64,
) -> Result<BipartiteMultigraph> {
    Model::Tp {
        m,
        n,
        t,
        max_attempts,
    }
    .validate()?;
    let left = sample_degree_sequence(m, t, rng, max_attempts)?;
    let right = sample_degree_sequence(n, t, rng, max_attempts)?;
    pair_stubs(&left, &right, rng)
}

/// Bipartite `G(M, N, p)` as a simple graph, edges in row-major order.
pub fn gen_er<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<BipartiteMultigraph> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for l in 0..m {
        for r in 0..n {
            if rng.random::<f64>() < p {
                edges.push((l, r));
            }
        }
    }
    Ok(BipartiteMultigraph::from_parts_unchecked(m, n, edges))
}

/// `G(M, N, p)` parameters mimicking `GR1(m, n, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErParams {
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub a: f64,
    pub b: f64,
}

/// `M = round(t / a)`, `N = round(t / b)` (at least 1) and `p = ab / t`,
/// with `f(a) = t / m`, `f(b) = t / n`.
pub fn er_params_for(m: usize, n: usize, t: usize) -> Result<ErParams> {
    if m == 0 || n == 0 {
        return Err(Error::input("need m, n >= 1"));
    }
    let a = solve_parameter(t as f64 / m as f64)?.a();
    let b = solve_parameter(t as f64 / n as f64)?.a();
    let t = t as f64;
    let p = a * b / t;
    if p > 1.0 {
        return Err(Error::domain(format!(
            "implied edge probability {p} exceeds 1"
        )));
    }
    Ok(ErParams {
        m: ((t / a).round() as usize).max(1),
        n: ((t / b).round() as usize).max(1),
        p,
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr_edge_cases() {
        let mut rng = stream(1);
        assert_eq!(gen_gr(3, 4, 0, &mut rng).unwrap().t(), 0);
        let g = gen_gr(1, 1, 3, &mut rng).unwrap();
        assert_eq!(g.edges(), &[(0, 0), (0, 0), (0, 0)]);
        assert!(gen_gr(0, 4, 2, &mut rng).is_err());
    }

    #[test]
    fn gr1_trivial_and_infeasible() {
        let mut rng = stream(2);
        assert_eq!(
            gen_gr1_rejection(1, 1, 1, &mut rng, 1).unwrap().edges(),
            &[(0, 0)]
        );
        assert!(matches!(
            gen_gr1_rejection(2, 2, 1, &mut rng, 10),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            gen_gr1_rejection(30, 30, 30, &mut rng, 5),
            Err(Error::AttemptsExhausted { attempts: 5, .. })
        ));
    }

    #[test]
    fn tp_forced_cases() {
        let mut rng = stream(3);
        let g = gen_tp(1, 1, 5, &mut rng, 10).unwrap();
        assert_eq!(g.edges(), &[(0, 0); 5]);
        let g = gen_tp(4, 4, 4, &mut rng, 10).unwrap();
        assert_eq!(g.left_degrees(), vec![1; 4]);
        assert_eq!(g.right_degrees(), vec![1; 4]);
    }

    #[test]
    fn tp_degree_sums_and_min_degree() {
        let mut rng = stream(4);
        for _ in 0..200 {
            let g = gen_tp(7, 5, 13, &mut rng, DEFAULT_MAX_ATTEMPTS).unwrap();
            assert_eq!(g.t(), 13);
            assert!(g.covers_all_vertices());
            assert_eq!(g.left_degrees().iter().sum::<usize>(), 13);
        }
    }

    #[test]
    fn er_extremes() {
        let mut rng = stream(5);
        assert_eq!(gen_er(3, 4, 0.0, &mut rng).unwrap().t(), 0);
        let full = gen_er(3, 4, 1.0, &mut rng).unwrap();
        assert_eq!(full.t(), 12);
        assert!(!full.has_parallel_edges());
        assert!(matches!(gen_er(3, 4, 1.5, &mut rng), Err(Error::Input(_))));
        assert!(gen_er(3, 4, f64::NAN, &mut rng).is_err());
    }

    #[test]
    fn er_params_elephant() {
        let p = er_params_for(22, 27, 44).unwrap();
        assert!((p.a - 1.5936).abs() < 1e-4);
        assert!((p.b - 1.07148).abs() < 1e-4);
        assert_eq!((p.m, p.n), (28, 41));
        assert!((p.p - 0.0388).abs() < 1e-4);
        assert!(er_params_for(5, 5, 5).is_err());
    }

    #[test]
    fn spec_is_deterministic() {
        let spec = ModelSpec::new(
            Model::Tp {
                m: 40,
                n: 30,
                t: 90,
                max_attempts: DEFAULT_MAX_ATTEMPTS,
            },
            99,
        );
        assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        let other = ModelSpec { seed: 100, ..spec };
        assert_ne!(spec.generate().unwrap(), other.generate().unwrap());
    }

    #[test]
    fn model_spec_json_shape() {
        let spec = ModelSpec::new(Model::Er { m: 3, n: 4, p: 0.5 }, 7);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"er","m":3,"n":4,"p":0.5,"seed":7}"#);
        let back: ModelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn acceptance_estimate_small_case() {
        // (2,2,2): exact acceptance 4/16; the heuristic is of the same order.
        let est = gr1_acceptance_estimate(2, 2, 2);
        assert!(est > 0.1 && est < 0.6, "{est}");
    }
}
