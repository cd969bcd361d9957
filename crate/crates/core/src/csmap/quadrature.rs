//! Gauss rules for the weight `x^gamma` on `[0, 1]`, `gamma > -1`.
//!
//! Nodes come from the Golub-Welsch eigenvalue problem for the Jacobi
//! recurrence with exponents `(0, gamma)`, are polished by Newton steps on
//! the orthonormal polynomial, and the weights are the Christoffel numbers
//! `1 / sum_k p_k(x)^2`. The zeroth moment `1 / (gamma + 1)` is elementary,
//! so no Gamma function enters the rule.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    gamma: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Recurrence coefficients of the orthonormal polynomials for `x^gamma`
/// on `[0, 1]`: diagonal `alpha_k` and off-diagonal `beta_k` (`beta_0` unused).
fn recurrence(n: usize, gamma: f64) -> (Vec<f64>, Vec<f64>) {
    let mut alpha = Vec::with_capacity(n);
    let mut beta = vec![0.0; n + 1];
    for k in 0..n {
        let kf = k as f64;
        let a = if k == 0 {
            gamma / (gamma + 2.0)
        } else {
            gamma * gamma / ((2.0 * kf + gamma) * (2.0 * kf + gamma + 2.0))
        };
        alpha.push(0.5 * (1.0 + a));
    }
    for (k, b) in beta.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let s = 2.0 * kf + gamma;
        let b2 = 4.0 * kf * kf * (kf + gamma) * (kf + gamma) / (s * s * (s + 1.0) * (s - 1.0));
        *b = 0.5 * b2.sqrt();
    }
    (alpha, beta)
}

/// Values `p_0..p_n` of the orthonormal polynomials at `x`, and `p_n'(x)`.
fn orthonormal(x: f64, alpha: &[f64], beta: &[f64], mu0: f64) -> (Vec<f64>, f64) {
    let n = alpha.len();
    let mut p = Vec::with_capacity(n + 1);
    let (mut prev, mut cur) = (0.0, 1.0 / mu0.sqrt());
    let (mut dprev, mut dcur) = (0.0, 0.0);
    p.push(cur);
    for k in 0..n {
        let next = ((x - alpha[k]) * cur - beta[k] * prev) / beta[k + 1];
        let dnext = (cur + (x - alpha[k]) * dcur - beta[k] * dprev) / beta[k + 1];
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
        p.push(cur);
    }
    (p, dcur)
}

impl GaussRule {
    /// `n`-point rule for `int_0^1 x^gamma f(x) dx`.
    pub fn new(n: usize, gamma: f64) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        assert!(
            gamma > -1.0 && gamma.is_finite(),
            "weight exponent must exceed -1"
        );
        let (alpha, beta) = recurrence(n, gamma);
        let mu0 = 1.0 / (gamma + 1.0);

        let mut jacobi = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            jacobi[(k, k)] = alpha[k];
            if k + 1 < n {
                jacobi[(k, k + 1)] = beta[k + 1];
                jacobi[(k + 1, k)] = beta[k + 1];
            }
        }
        let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        nodes.sort_by(|a, b| a.total_cmp(b));

        let mut weights = Vec::with_capacity(n);
        for x in &mut nodes {
            for _ in 0..3 {
                let (p, dp) = orthonormal(*x, &alpha, &beta, mu0);
                if dp == 0.0 {
                    break;
                }
                let step = p[n] / dp;
                *x -= step;
                if step.abs() <= 1e-17 {
                    break;
                }
            }
            let (p, _) = orthonormal(*x, &alpha, &beta, mu0);
            let s: f64 = p[..n].iter().map(|v| v * v).sum();
            weights.push(1.0 / s);
        }
        GaussRule {
            gamma,
            nodes,
            weights,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

type RuleKey = (u64, usize);

/// Shared rules, built once per `(gamma, n)`.
pub fn rule(n: usize, gamma: f64) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (gamma.to_bits(), n);
    if let Some(r) = cache.lock().expect("rule cache poisoned").get(&key) {
        return Arc::clone(r);
    }
    let built = Arc::new(GaussRule::new(n, gamma));
    cache
        .lock()
        .expect("rule cache poisoned")
        .entry(key)
        .or_insert(built)
        .clone()
}
