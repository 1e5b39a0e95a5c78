//! Monte Carlo sequential-measurement oracle.
//!
//! Frequency-based estimates of Born and conditional probabilities that never
//! touch the trace formulas: the state is eigendecomposed once, each trial
//! samples an eigenstate, measures the conditioning projector (collapsing the
//! sampled pure state and renormalizing on success), then measures the target
//! on the updated state. Relative frequencies over accepted trials converge
//! to the Lüders value, giving an implementation-independent cross-check.
//!
//! Trials are addressed as (seed, trial-index), so runs are bit-reproducible
//! and order-independent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::meet;
use crate::matrix::{C64, vec_norm_sqr};
use crate::operators::{DensityMatrix, Projector, ToleranceProfile};
use crate::quantum::Convention;
use crate::rng::Rng;

/// Outcome counts of one sampling run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasurementRun {
    pub seed: u64,
    pub trials: u64,
    /// Trials that passed the conditioning filter.
    pub accepted: u64,
    /// Accepted trials in which the target proposition held.
    pub hits: u64,
    /// hits/accepted.
    pub estimate: f64,
    /// Binomial standard error √(p̂(1 − p̂)/accepted).
    pub stderr: f64,
}

impl MeasurementRun {
    fn from_counts(seed: u64, trials: u64, accepted: u64, hits: u64) -> Result<Self> {
        if accepted == 0 {
            return Err(Error::OracleStarved { trials });
        }
        let estimate = hits as f64 / accepted as f64;
        let stderr = (estimate * (1.0 - estimate) / accepted as f64).sqrt();
        Ok(MeasurementRun {
            seed,
            trials,
            accepted,
            hits,
            estimate,
            stderr,
        })
    }

    /// Fraction of trials that passed the conditioning filter, with its
    /// binomial standard error.
    pub fn acceptance(&self) -> (f64, f64) {
        let f = self.accepted as f64 / self.trials as f64;
        (f, (f * (1.0 - f) / self.trials as f64).sqrt())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run serialization");
        s.push('\n');
        s
    }
}

/// Per-eigenstate sampling data shared by all trials of a run.
struct TrialSetup {
    /// Cumulative eigenvalue weights for categorical sampling.
    cumulative: Vec<f64>,
    /// Acceptance probability ‖Q|v_k⟩‖² per eigenstate.
    accept: Vec<f64>,
    /// Hit probability ⟨v'|P|v'⟩ in the collapsed state per eigenstate.
    hit: Vec<f64>,
}

fn prepare(rho: &DensityMatrix, condition: Option<&Projector>, target: &Projector) -> TrialSetup {
    let eig = rho.eigen();
    let dim = rho.dim();

    // Clamp tolerance-level negative eigenvalues and renormalize the weights.
    let raw: Vec<f64> = eig.values.iter().map(|l| l.max(0.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut cumulative = Vec::with_capacity(dim);
    let mut acc = 0.0;
    for w in &raw {
        acc += w / total;
        cumulative.push(acc);
    }
    if let Some(last) = cumulative.last_mut() {
        *last = 1.0;
    }

    let mut accept = Vec::with_capacity(dim);
    let mut hit = Vec::with_capacity(dim);
    for k in 0..dim {
        let v = eig.vector(k);
        match condition {
            Some(q) => {
                let qv = q.matrix().apply(&v);
                let a = vec_norm_sqr(&qv).clamp(0.0, 1.0);
                if a <= f64::MIN_POSITIVE {
                    accept.push(0.0);
                    hit.push(0.0);
                } else {
                    let inv = 1.0 / a.sqrt();
                    let collapsed: Vec<C64> = qv.iter().map(|z| z * inv).collect();
                    let pv = target.matrix().apply(&collapsed);
                    accept.push(a);
                    hit.push(vec_norm_sqr(&pv).clamp(0.0, 1.0));
                }
            }
            None => {
                let pv = target.matrix().apply(&v);
                accept.push(1.0);
                hit.push(vec_norm_sqr(&pv).clamp(0.0, 1.0));
            }
        }
    }

    TrialSetup {
        cumulative,
        accept,
        hit,
    }
}

fn run_trials(setup: &TrialSetup, trials: u64, seed: u64) -> (u64, u64) {
    let mut accepted = 0u64;
    let mut hits = 0u64;
    for i in 0..trials {
        let mut rng = Rng::from_seed_stream(seed, i);
        let u = rng.uniform();
        let k = setup.cumulative.partition_point(|&c| c < u);
        let a = setup.accept[k];
        // Exact 0/1 acceptance avoids wasting a draw and keeps the
        // target-identity case exact.
        let pass = a >= 1.0 || (a > 0.0 && rng.below(a));
        if !pass {
            continue;
        }
        accepted += 1;
        let h = setup.hit[k];
        if h >= 1.0 || (h > 0.0 && rng.below(h)) {
            hits += 1;
        }
    }
    (accepted, hits)
}

/// Frequency estimate of the Born probability tr(ρP): each trial samples an
/// eigenstate of ρ and declares a hit with the squared projection onto the
/// target's range. All trials are accepted.
pub fn sample_proposition(
    rho: &DensityMatrix,
    target: &Projector,
    trials: u64,
    seed: u64,
) -> Result<MeasurementRun> {
    if trials == 0 {
        return Err(Error::invalid("sampling requires at least one trial"));
    }
    if rho.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: target.dim(),
        });
    }
    let setup = prepare(rho, None, target);
    let (accepted, hits) = run_trials(&setup, trials, seed);
    debug_assert_eq!(accepted, trials);
    MeasurementRun::from_counts(seed, trials, accepted, hits)
}

/// Frequency estimate of the conditional probability: each trial measures the
/// conditioning projector first (accepting on success and collapsing the
/// sampled pure state into its range), then measures the target. The estimate
/// over accepted trials converges to tr(QρQP)/tr(ρQ) and the acceptance
/// fraction to tr(ρQ).
pub fn sample_sequential(
    rho: &DensityMatrix,
    condition: &Projector,
    target: &Projector,
    trials: u64,
    seed: u64,
) -> Result<MeasurementRun> {
    if trials == 0 {
        return Err(Error::invalid("sampling requires at least one trial"));
    }
    if rho.dim() != condition.dim() || rho.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: condition.dim().max(target.dim()),
        });
    }
    // Conditioning on the identity is no conditioning; taking the exact path
    // keeps the reduction to plain proposition sampling bit-exact.
    let cond = if condition.is_identity() {
        None
    } else {
        Some(condition)
    };
    let setup = prepare(rho, cond, target);
    let (accepted, hits) = run_trials(&setup, trials, seed);
    MeasurementRun::from_counts(seed, trials, accepted, hits)
}

/// Δ estimated purely from sampled frequencies, with propagated standard
/// error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaEstimate {
    pub delta: f64,
    pub stderr: f64,
    /// The joint, first-factor, and second-factor runs.
    pub runs: [MeasurementRun; 3],
    pub convention: Convention,
}

impl DeltaEstimate {
    /// Exact-minus-estimate distance in standard errors. When every sampled
    /// component happened to be deterministic the stderr is zero, and the
    /// distance is 0 or infinity by exact agreement.
    pub fn sigmas_from(&self, exact: f64) -> f64 {
        let diff = (self.delta - exact).abs();
        if self.stderr == 0.0 {
            if diff == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            diff / self.stderr
        }
    }
}

/// Assembles Δ from three independent sequential runs (distinct derived
/// seeds): the joint conditional, the first chain factor, and the second
/// chain factor of the chosen convention.
#[allow(clippy::too_many_arguments)]
pub fn delta_oracle(
    rho: &DensityMatrix,
    p: &Projector,
    q: &Projector,
    r: &Projector,
    convention: Convention,
    trials: u64,
    seed: u64,
    tol: &ToleranceProfile,
) -> Result<DeltaEstimate> {
    let meet_pq = meet(p, q, tol)?;
    let seeds = [
        Rng::from_seed_stream(seed, 0x0DE1).next_u64(),
        Rng::from_seed_stream(seed, 0x0DE2).next_u64(),
        Rng::from_seed_stream(seed, 0x0DE3).next_u64(),
    ];
    let (first_target, second_cond, second_target) = match convention {
        Convention::BThenA => (p, meet(p, r, tol)?, q),
        Convention::AThenB => (q, meet(q, r, tol)?, p),
    };
    let joint_run = sample_sequential(rho, r, &meet_pq, trials, seeds[0])?;
    let first_run = sample_sequential(rho, r, first_target, trials, seeds[1])?;
    let second_run = sample_sequential(rho, &second_cond, second_target, trials, seeds[2])?;

    let (e1, e2, e3) = (joint_run.estimate, first_run.estimate, second_run.estimate);
    let (s1, s2, s3) = (joint_run.stderr, first_run.stderr, second_run.stderr);
    let delta = e1 - e2 * e3;
    let stderr = (s1 * s1 + (e3 * s2) * (e3 * s2) + (e2 * s3) * (e2 * s3)).sqrt();
    Ok(DeltaEstimate {
        delta,
        stderr,
        runs: [joint_run, first_run, second_run],
        convention,
    })
}
