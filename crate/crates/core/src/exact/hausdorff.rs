//! Hausdorff dimension of column carpets by maximizing the Lalley-Gatzouras
//! variational expression over probability vectors on the selected cells:
//!
//! ```text
//!   Σ p_ij log(q_i / p_ij)     Σ q_i log q_i
//!   ----------------------  +  -------------      q_i = Σ_j p_ij
//!   Σ p_ij log(1 / d_ij)       Σ q_i log c_i
//! ```
//!
//! The simplex is parameterized by a softmax, the ascent is BFGS with a
//! backtracking line search, and each restart ends with a few Newton steps on
//! the stationarity conditions so the returned point is stationary to near
//! machine precision.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ExactError;
use crate::model::LgCarpet;

#[derive(Clone, Debug, PartialEq)]
pub struct HausdorffSettings {
    /// Random restarts in addition to the uniform starting point.
    pub restarts: usize,
    pub max_iterations: usize,
    /// Convergence threshold on successive objective values.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for HausdorffSettings {
    fn default() -> Self {
        HausdorffSettings {
            restarts: 16,
            max_iterations: 5_000,
            tolerance: 1e-12,
            seed: 0x5eed,
        }
    }
}

/// The maximizing distribution and the maximum.
#[derive(Clone, Debug, PartialEq)]
pub struct HausdorffOptimum {
    pub dimension: f64,
    /// One probability per map, in the carpet's map order.
    pub distribution: Vec<f64>,
    pub converged_restarts: usize,
}

/// Cell data in log form: column index per cell, `ln c` per column and
/// `ln d` per cell.
#[derive(Clone, Debug)]
struct Problem {
    column: Vec<usize>,
    log_c: Vec<f64>,
    log_d: Vec<f64>,
}

impl Problem {
    fn new(carpet: &LgCarpet) -> Self {
        let mut column = Vec::new();
        let mut log_c = Vec::new();
        let mut log_d = Vec::new();
        for col in carpet.columns().iter().filter(|c| !c.cells.is_empty()) {
            let idx = log_c.len();
            log_c.push(col.width.value().ln());
            for cell in &col.cells {
                column.push(idx);
                log_d.push(cell.height.value().ln());
            }
        }
        Problem { column, log_c, log_d }
    }

    fn len(&self) -> usize {
        self.column.len()
    }

    fn column_masses(&self, p: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; self.log_c.len()];
        for (k, &pk) in p.iter().enumerate() {
            q[self.column[k]] += pk;
        }
        q
    }

    fn value(&self, p: &[f64]) -> f64 {
        let q = self.column_masses(p);
        let mut entropy = 0.0;
        let mut depth = 0.0;
        for (k, &pk) in p.iter().enumerate() {
            if pk > 0.0 {
                entropy += pk * (q[self.column[k]] / pk).ln();
            }
            depth -= pk * self.log_d[k];
        }
        let mut col_entropy = 0.0;
        let mut col_depth = 0.0;
        for (i, &qi) in q.iter().enumerate() {
            if qi > 0.0 {
                col_entropy += qi * qi.ln();
            }
            col_depth += qi * self.log_c[i];
        }
        let first = if depth > 0.0 { entropy / depth } else { 0.0 };
        let second = if col_depth < 0.0 { col_entropy / col_depth } else { 0.0 };
        first + second
    }

    /// Partial derivatives with respect to each `p_ij` (all assumed > 0).
    fn gradient(&self, p: &[f64]) -> Vec<f64> {
        let q = self.column_masses(p);
        let mut a = 0.0;
        let mut b = 0.0;
        for (k, &pk) in p.iter().enumerate() {
            a += pk * (q[self.column[k]] / pk).ln();
            b -= pk * self.log_d[k];
        }
        let mut c = 0.0;
        let mut d = 0.0;
        for (i, &qi) in q.iter().enumerate() {
            c += qi * qi.ln();
            d += qi * self.log_c[i];
        }
        (0..p.len())
            .map(|k| {
                let i = self.column[k];
                let da = (q[i] / p[k]).ln();
                let db = -self.log_d[k];
                let dc = q[i].ln() + 1.0;
                let dd = self.log_c[i];
                let first = (da * b - a * db) / (b * b);
                let second = if d < 0.0 { (dc * d - c * dd) / (d * d) } else { 0.0 };
                first + second
            })
            .collect()
    }
}

/// Evaluates the variational expression at a probability vector over the
/// carpet's maps, with `0·log 0 = 0`.
pub fn hausdorff_objective(carpet: &LgCarpet, p: &[f64]) -> f64 {
    Problem::new(carpet).value(p)
}

fn softmax(theta: &[f64]) -> Vec<f64> {
    let max = theta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = theta.iter().map(|t| (t - max).exp()).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}

/// Objective and its gradient in softmax coordinates.
fn theta_eval(problem: &Problem, theta: &[f64]) -> (f64, Vec<f64>) {
    let p = softmax(theta);
    let g = problem.gradient(&p);
    let mean: f64 = p.iter().zip(&g).map(|(pk, gk)| pk * gk).sum();
    let grad = p.iter().zip(&g).map(|(pk, gk)| pk * (gk - mean)).collect();
    (problem.value(&p), grad)
}

struct Run {
    value: f64,
    p: Vec<f64>,
    converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn ascend(problem: &Problem, mut theta: Vec<f64>, settings: &HausdorffSettings) -> Run {
    let n = theta.len();
    let (mut f, mut g) = theta_eval(problem, &theta);
    let mut h = DMatrix::<f64>::identity(n, n);
    let mut converged = false;
    for _ in 0..settings.max_iterations {
        let gv = DVector::from_column_slice(&g);
        let mut dir: Vec<f64> = (&h * &gv).iter().cloned().collect();
        let mut slope = dot(&g, &dir);
        if slope <= 0.0 {
            h = DMatrix::identity(n, n);
            dir = g.clone();
            slope = dot(&g, &g);
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = theta.iter().zip(&dir).map(|(t, d)| t + step * d).collect();
            let (ft, gt) = theta_eval(problem, &trial);
            if ft.is_finite() && ft >= f + 1e-4 * step * slope {
                accepted = Some((trial, ft, gt));
                break;
            }
            step *= 0.5;
        }
        let Some((next, f_next, g_next)) = accepted else {
            // No ascent left at working precision.
            converged = dot(&g, &g).sqrt() < 1e-5;
            break;
        };
        let s: Vec<f64> = next.iter().zip(&theta).map(|(a, b)| a - b).collect();
        // Maximizing f is minimizing -f: curvature pairs use -gradient.
        let y: Vec<f64> = g.iter().zip(&g_next).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-14 {
            let sv = DVector::from_vec(s);
            let yv = DVector::from_vec(y);
            let rho = 1.0 / sy;
            let i = DMatrix::<f64>::identity(n, n);
            let left = &i - rho * &sv * yv.transpose();
            let right = &i - rho * &yv * sv.transpose();
            h = &left * &h * &right + rho * &sv * sv.transpose();
        }
        let delta = (f_next - f).abs();
        theta = next;
        f = f_next;
        g = g_next;
        if delta < settings.tolerance && dot(&g, &g).sqrt() < 1e-6 {
            converged = true;
            break;
        }
    }
    let p = polish(problem, softmax(&theta));
    let value = problem.value(&p).max(f);
    let p = if problem.value(&p) >= f { p } else { softmax(&theta) };
    Run { value, p, converged }
}

/// Newton iterations on `∇f(p) = λ·1, Σp = 1`, with a finite-difference
/// Jacobian of the analytic gradient.  Steps are kept only while they reduce
/// the projected gradient and stay inside the open simplex.
fn polish(problem: &Problem, mut p: Vec<f64>) -> Vec<f64> {
    let n = p.len();
    if n < 2 {
        return p;
    }
    let residual = |p: &[f64]| -> f64 {
        let g = problem.gradient(p);
        let mean = g.iter().sum::<f64>() / n as f64;
        g.iter().map(|x| (x - mean).powi(2)).sum::<f64>().sqrt()
    };
    let mut current = residual(&p);
    for _ in 0..8 {
        let g = problem.gradient(&p);
        let mut jac = DMatrix::<f64>::zeros(n + 1, n + 1);
        for k in 0..n {
            let h = 1e-7 * p[k].max(1e-3);
            let mut up = p.clone();
            up[k] += h;
            let mut down = p.clone();
            down[k] -= h;
            let gu = problem.gradient(&up);
            let gd = problem.gradient(&down);
            for r in 0..n {
                jac[(r, k)] = (gu[r] - gd[r]) / (2.0 * h);
            }
            jac[(k, n)] = -1.0;
            jac[(n, k)] = 1.0;
        }
        let lambda = dot(&g, &p);
        let mut rhs = DVector::<f64>::zeros(n + 1);
        for r in 0..n {
            rhs[r] = -(g[r] - lambda);
        }
        rhs[n] = 1.0 - p.iter().sum::<f64>();
        // Jacobian row for λ uses the current multiplier estimate.
        let Some(step) = jac.lu().solve(&rhs) else { break };
        let candidate: Vec<f64> = (0..n).map(|k| p[k] + step[k]).collect();
        if candidate.iter().any(|&x| !(x > 0.0)) {
            break;
        }
        let total: f64 = candidate.iter().sum();
        let candidate: Vec<f64> = candidate.into_iter().map(|x| x / total).collect();
        let r = residual(&candidate);
        if !(r < current) {
            break;
        }
        p = candidate;
        current = r;
    }
    p
}

/// Maximizes the variational expression for a column carpet.
///
/// Runs one ascent from the uniform distribution and `settings.restarts`
/// from seeded random starts; the best converged value wins.
pub fn hausdorff_dimension_lg(
    carpet: &LgCarpet,
    settings: &HausdorffSettings,
) -> Result<HausdorffOptimum, ExactError> {
    let problem = Problem::new(carpet);
    let n = problem.len();
    if n == 1 {
        return Ok(HausdorffOptimum { dimension: 0.0, distribution: vec![1.0], converged_restarts: 1 });
    }
    let runs: Vec<Run> = (0..=settings.restarts)
        .into_par_iter()
        .map(|k| {
            let theta = if k == 0 {
                vec![0.0; n]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(k as u64));
                (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()
            };
            ascend(&problem, theta, settings)
        })
        .collect();
    let converged = runs.iter().filter(|r| r.converged).count();
    let best = runs
        .iter()
        .filter(|r| r.converged)
        .fold(None::<&Run>, |acc, r| match acc {
            Some(b) if b.value >= r.value => Some(b),
            _ => Some(r),
        });
    match best {
        Some(b) => Ok(HausdorffOptimum {
            dimension: b.value,
            distribution: b.p.clone(),
            converged_restarts: converged,
        }),
        None => Err(ExactError::NumericalFailure {
            best: runs.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max),
        }),
    }
}
