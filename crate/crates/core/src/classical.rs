//! Finite classical probability and the plausibility calculus.
//!
//! Events are bitmasks over n elementary propositions. The module provides
//! both axiomatizations of probability — the probability-first form (with the
//! ratio conditional) and the conditional-first form — as residual checkers,
//! plus the plausibility-calculus identities: the multiplicative product
//! form, the negation family S(x) = (1 − x^m)^{1/m}, and the sum rule with
//! its full derivation chain exposed for audit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{AxiomReport, ResidualTracker};
use crate::rng::Rng;

/// An event: a bitmask over the elementary propositions.
pub type Event = u32;

/// Hard cap on the number of elementary propositions (events are bitmasks).
pub const MAX_ATOMS: usize = 20;

/// The sample space Ω = {ω₁, …, ω_n}; its full event algebra is all 2^n masks,
/// which trivially satisfies the closure laws (∅ present, complement-closed,
/// intersection-closed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteEventSpace {
    n: usize,
}

impl FiniteEventSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ATOMS {
            return Err(Error::invalid(format!(
                "event space must have between 1 and {MAX_ATOMS} elementary propositions"
            )));
        }
        Ok(FiniteEventSpace { n })
    }

    pub fn atom_count(&self) -> usize {
        self.n
    }

    /// Ω as a mask.
    pub fn full(&self) -> Event {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn complement(&self, e: Event) -> Event {
        !e & self.full()
    }

    pub fn event_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn events(&self) -> impl Iterator<Item = Event> {
        0..=self.full()
    }
}

/// Probability assignment on a finite event space.
#[derive(Debug, Clone)]
pub struct ProbabilityTable {
    space: FiniteEventSpace,
    weights: Vec<f64>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TableDocument {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl ProbabilityTable {
    /// Validates non-negative weights summing to 1 within 1e-12.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let labels = (0..weights.len()).map(|i| format!("w{}", i + 1)).collect();
        Self::with_labels(labels, weights)
    }

    /// As [`ProbabilityTable::new`], with named elementary propositions.
    pub fn with_labels(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        let space = FiniteEventSpace::new(weights.len())?;
        if labels.len() != weights.len() {
            return Err(Error::invalid("one label per weight required"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid("weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "weights must sum to 1 (got {total:.17})"
            )));
        }
        Ok(ProbabilityTable {
            space,
            weights,
            labels,
        })
    }

    /// Loads `{ "labels": [...], "weights": [...] }`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        Self::with_labels(doc.labels, doc.weights)
    }

    pub fn to_json(&self) -> String {
        let doc = TableDocument {
            labels: self.labels.clone(),
            weights: self.weights.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("table serialization");
        s.push('\n');
        s
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let w = 1.0 / n as f64;
        let mut weights = vec![w; n];
        // Pin the sum to exactly 1.
        let partial: f64 = weights[..n - 1].iter().sum();
        weights[n - 1] = 1.0 - partial;
        ProbabilityTable::new(weights)
    }

    /// Random strictly-positive table drawn from a seeded stream.
    pub fn random(n: usize, rng: &mut Rng) -> Result<Self> {
        let raw: Vec<f64> = (0..n)
            .map(|_| (-(1.0 - rng.uniform()).ln()).max(1e-12))
            .collect();
        let total: f64 = raw.iter().sum();
        let mut weights: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let partial: f64 = weights[..n - 1].iter().sum();
        weights[n - 1] = 1.0 - partial;
        ProbabilityTable::new(weights)
    }

    pub fn space(&self) -> &FiniteEventSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Pr(A) as the subset-sum of elementary weights.
    pub fn probability(&self, event: Event) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.space.n {
            if event & (1 << i) != 0 {
                acc += self.weights[i];
            }
        }
        acc
    }

    /// Ratio conditional Pr(A|B) = Pr(A∩B)/Pr(B).
    pub fn conditional_ratio(&self, a: Event, b: Event) -> Result<f64> {
        let pb = self.probability(b);
        if pb <= 0.0 {
            return Err(Error::ConditioningOnNull {
                context: "B".into(),
                weight: pb,
            });
        }
        Ok(self.probability(a & b) / pb)
    }
}

/// Observed counts from repeated trials; the frequency reading of probability.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    trials: u64,
    counts: Vec<(String, u64)>,
}

impl FrequencyTable {
    pub fn new(counts: Vec<(String, u64)>) -> Result<Self> {
        let trials: u64 = counts.iter().map(|(_, c)| c).sum();
        if trials == 0 {
            return Err(Error::invalid("frequency table needs at least one trial"));
        }
        Ok(FrequencyTable { trials, counts })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn counts(&self) -> &[(String, u64)] {
        &self.counts
    }

    /// Relative frequencies as a probability table.
    pub fn relative_frequencies(&self) -> Result<ProbabilityTable> {
        let n = self.counts.len();
        let mut weights: Vec<f64> = self
            .counts
            .iter()
            .map(|(_, c)| *c as f64 / self.trials as f64)
            .collect();
        let partial: f64 = weights[..n - 1].iter().sum();
        weights[n - 1] = 1.0 - partial;
        let labels = self.counts.iter().map(|(l, _)| l.clone()).collect();
        ProbabilityTable::with_labels(labels, weights)
    }
}

// ---------------------------------------------------------------------------
// Plausibility calculus: regraduation, product form, negation, sum rule.
// ---------------------------------------------------------------------------

/// Strictly increasing map from raw plausibility onto [0, 1].
///
/// The closed forms evaluate exactly; the grid variant linearly interpolates
/// user-supplied monotone samples.
#[derive(Debug, Clone)]
pub enum Regraduation {
    Identity,
    /// w(x) = x^p with p > 0.
    Power(f64),
    Grid(MonotoneGrid),
}

impl Regraduation {
    pub fn w(&self, x: f64) -> f64 {
        match self {
            Regraduation::Identity => x,
            Regraduation::Power(p) => x.powf(*p),
            Regraduation::Grid(g) => g.forward(x),
        }
    }

    pub fn w_inv(&self, y: f64) -> f64 {
        match self {
            Regraduation::Identity => y,
            Regraduation::Power(p) => y.powf(1.0 / *p),
            Regraduation::Grid(g) => g.inverse(y),
        }
    }
}

/// Strictly increasing piecewise-linear function.
#[derive(Debug, Clone)]
pub struct MonotoneGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl MonotoneGrid {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::invalid("grid needs at least two matched samples"));
        }
        let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
        if !increasing(&xs) || !increasing(&ys) {
            return Err(Error::invalid("grid samples must be strictly increasing"));
        }
        if ys.iter().any(|y| !(0.0..=1.0).contains(y)) {
            return Err(Error::invalid("grid values must lie in [0, 1]"));
        }
        Ok(MonotoneGrid { xs, ys })
    }

    fn interp(grid_x: &[f64], grid_y: &[f64], x: f64) -> f64 {
        let n = grid_x.len();
        if x <= grid_x[0] {
            return grid_y[0];
        }
        if x >= grid_x[n - 1] {
            return grid_y[n - 1];
        }
        let k = grid_x.partition_point(|&g| g <= x) - 1;
        let t = (x - grid_x[k]) / (grid_x[k + 1] - grid_x[k]);
        grid_y[k] + t * (grid_y[k + 1] - grid_y[k])
    }

    pub fn forward(&self, x: f64) -> f64 {
        Self::interp(&self.xs, &self.ys, x)
    }

    pub fn inverse(&self, y: f64) -> f64 {
        Self::interp(&self.ys, &self.xs, y)
    }
}

/// The plausibility calculus: a regraduation w, the negation exponent m,
/// and the domain on which functional-equation checks run.
#[derive(Debug, Clone)]
pub struct PlausibilityCalculus {
    pub w: Regraduation,
    pub m: f64,
    pub domain: (f64, f64),
}

/// Margin keeping functional-equation grids away from the endpoint
/// singularities of x^m.
pub const GRID_MARGIN: f64 = 1e-6;

impl PlausibilityCalculus {
    pub fn new(w: Regraduation, m: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::invalid("negation exponent m must be positive and finite"));
        }
        Ok(PlausibilityCalculus {
            w,
            m,
            domain: (GRID_MARGIN, 1.0 - GRID_MARGIN),
        })
    }

    /// The canonical calculus: w = identity, m = 1.
    pub fn canonical() -> Self {
        PlausibilityCalculus::new(Regraduation::Identity, 1.0).unwrap()
    }

    /// Product combination F(x, y) = w⁻¹[w(x)·w(y)].
    pub fn product(&self, x: f64, y: f64) -> f64 {
        self.w.w_inv(self.w.w(x) * self.w.w(y))
    }

    fn check_domain(&self, v: f64) -> Result<()> {
        if v < self.domain.0 || v > self.domain.1 {
            return Err(Error::invalid(format!(
                "argument {v} outside the regraduation domain [{}, {}]",
                self.domain.0, self.domain.1
            )));
        }
        Ok(())
    }
}

/// |F(F(x,y),z) − F(x,F(y,z))| for the calculus' product combination.
pub fn associativity_residual(
    calculus: &PlausibilityCalculus,
    x: f64,
    y: f64,
    z: f64,
) -> Result<f64> {
    for v in [x, y, z] {
        calculus.check_domain(v)?;
    }
    Ok(associativity_residual_of(
        |a, b| calculus.product(a, b),
        x,
        y,
        z,
    ))
}

/// Associativity residual of an arbitrary combination rule; lets tests probe
/// deliberately non-multiplicative rules.
pub fn associativity_residual_of(f: impl Fn(f64, f64) -> f64, x: f64, y: f64, z: f64) -> f64 {
    (f(f(x, y), z) - f(x, f(y, z))).abs()
}

/// The negation family S(x) = (1 − x^m)^{1/m}.
pub fn negation_map(m: f64, x: f64) -> f64 {
    (1.0 - x.powf(m)).max(0.0).powf(1.0 / m)
}

/// |S(S(x)) − x|: the involution residual of the negation family.
pub fn negation_involution_residual(m: f64, x: f64) -> f64 {
    debug_assert!(m > 0.0 && (0.0..=1.0).contains(&x));
    (negation_map(m, negation_map(m, x)) - x).abs()
}

/// Smallest x at which the double-precision composition S(S(x)) stays within
/// ~1e-13 of x. For m > 1 the value S(x) sits within x^m of 1, so once x^m
/// approaches machine epsilon the representation of S(x) destroys x, with
/// round-trip error growing like (ε/m)·x^{1−m}. m ≤ 1 is well conditioned on
/// the whole interval.
pub fn involution_conditioning_floor(m: f64) -> f64 {
    if m <= 1.0 {
        0.0
    } else {
        ((10.0 * f64::EPSILON) / (m * 1e-13)).powf(1.0 / (m - 1.0))
    }
}

/// |w(A|B) + w(¬A|B) − 1|: the m = 1 negation rule on ratio conditionals.
pub fn negation_sum_residual(table: &ProbabilityTable, a: Event, b: Event) -> Result<f64> {
    let not_a = table.space().complement(a);
    let lhs = table.conditional_ratio(a, b)? + table.conditional_ratio(not_a, b)?;
    Ok((lhs - 1.0).abs())
}

/// |w(A∧B|C) − w(B|C)·w(A|B∧C)| with w the table's ratio conditionals.
/// Zero (up to roundoff) on every classical instance.
pub fn cox_product_residual(
    table: &ProbabilityTable,
    a: Event,
    b: Event,
    c: Event,
) -> Result<f64> {
    let lhs = table.conditional_ratio(a & b, c)?;
    let w_b_c = table.conditional_ratio(b, c)?;
    let pbc = table.probability(b & c);
    if pbc <= 0.0 {
        return Err(Error::ConditioningOnNull {
            context: "B∧C".into(),
            weight: pbc,
        });
    }
    let w_a_bc = table.conditional_ratio(a, b & c)?;
    Ok((lhs - w_b_c * w_a_bc).abs())
}

/// One step of the sum-rule derivation chain.
#[derive(Debug, Clone)]
pub struct SumRuleStep {
    pub expression: String,
    pub value: f64,
}

/// The sum-rule identity with its derivation chain exposed.
#[derive(Debug, Clone)]
pub struct SumRuleAudit {
    pub steps: Vec<SumRuleStep>,
    /// |w(A∨B|C) − w(A|C) − w(B|C) + w(A∧B|C)|.
    pub residual: f64,
}

/// Evaluates w(A∨B|C) = w(A|C) + w(B|C) − w(A∧B|C) through its ten-expression
/// derivation chain (duality, product form, negation form), recording every
/// intermediate value. Errors name the step whose conditioning event is null.
pub fn sum_rule_residual(
    table: &ProbabilityTable,
    a: Event,
    b: Event,
    c: Event,
) -> Result<SumRuleAudit> {
    let space = *table.space();
    let not = |e: Event| space.complement(e);

    let pc = table.probability(c);
    if pc <= 0.0 {
        return Err(Error::ConditioningOnNull {
            context: "C".into(),
            weight: pc,
        });
    }
    let p_nac = table.probability(not(a) & c);
    if p_nac <= 0.0 {
        return Err(Error::ConditioningOnNull {
            context: "¬A∧C (steps 4-6)".into(),
            weight: p_nac,
        });
    }
    let p_bc = table.probability(b & c);
    if p_bc <= 0.0 {
        return Err(Error::ConditioningOnNull {
            context: "B∧C (steps 8-9)".into(),
            weight: p_bc,
        });
    }

    let w = |x: Event, y: Event| table.conditional_ratio(x, y);

    let s1 = w(a | b, c)?;
    let s2 = 1.0 - w(not(a | b), c)?;
    let s3 = 1.0 - w(not(a) & not(b), c)?;
    let s4 = 1.0 - w(not(a), c)? * w(not(b), not(a) & c)?;
    let s5 = 1.0 - w(not(a), c)? * (1.0 - w(b, not(a) & c)?);
    let s6 = w(a, c)? + w(not(a), c)? * w(b, not(a) & c)?;
    let s7 = w(a, c)? + w(not(a) & b, c)?;
    let s8 = w(a, c)? + w(b, c)? * w(not(a), b & c)?;
    let s9 = w(a, c)? + w(b, c)? * (1.0 - w(a, b & c)?);
    let s10 = w(a, c)? + w(b, c)? - w(a & b, c)?;

    let steps = vec![
        ("w(A∨B|C)", s1),
        ("1 − w(¬(A∨B)|C)", s2),
        ("1 − w(¬A∧¬B|C)", s3),
        ("1 − w(¬A|C)·w(¬B|¬A∧C)", s4),
        ("1 − w(¬A|C)·[1 − w(B|¬A∧C)]", s5),
        ("w(A|C) + w(¬A|C)·w(B|¬A∧C)", s6),
        ("w(A|C) + w(¬A∧B|C)", s7),
        ("w(A|C) + w(B|C)·w(¬A|B∧C)", s8),
        ("w(A|C) + w(B|C)·[1 − w(A|B∧C)]", s9),
        ("w(A|C) + w(B|C) − w(A∧B|C)", s10),
    ]
    .into_iter()
    .map(|(e, v)| SumRuleStep {
        expression: e.to_string(),
        value: v,
    })
    .collect();

    Ok(SumRuleAudit {
        steps,
        residual: (s1 - s10).abs(),
    })
}

// ---------------------------------------------------------------------------
// Axiom checkers.
// ---------------------------------------------------------------------------

/// Verifies non-negativity, normalization, and finite additivity of the
/// table's probabilities. Disjoint pairs are enumerated exhaustively up to
/// 12 elementary propositions and sampled beyond.
pub fn kolmogorov_check(table: &ProbabilityTable, tol: f64) -> AxiomReport {
    let space = *table.space();
    let full = space.full();

    let mut nonneg = ResidualTracker::new();
    let mut normalization = ResidualTracker::new();
    let mut additivity = ResidualTracker::new();

    normalization.record((table.probability(full) - 1.0).abs());

    if space.atom_count() <= 12 {
        for a in space.events() {
            nonneg.record((-table.probability(a)).max(0.0));
            // All B disjoint from A: submasks of Ω \ A.
            let comp = space.complement(a);
            let mut b = comp;
            loop {
                additivity.record(
                    (table.probability(a | b) - table.probability(a) - table.probability(b))
                        .abs(),
                );
                if b == 0 {
                    break;
                }
                b = (b - 1) & comp;
            }
        }
    } else {
        let mut rng = Rng::from_seed_stream(0x4B4F4C, space.atom_count() as u64);
        for _ in 0..8192 {
            let a = (rng.next_u64() as u32) & full;
            nonneg.record((-table.probability(a)).max(0.0));
            let b = (rng.next_u64() as u32) & space.complement(a);
            additivity.record(
                (table.probability(a | b) - table.probability(a) - table.probability(b)).abs(),
            );
        }
    }

    let instances = nonneg.count() + additivity.count() + 1;
    let mut report = AxiomReport::new("kolmogorov");
    report.instances = instances;
    report.config_entry("atoms", space.atom_count());
    report.push_check(nonneg.into_check("kolmogorov.non-negativity", "Pr(A) ≥ 0", tol));
    report.push_check(normalization.into_check("kolmogorov.normalization", "Pr(Ω) = 1", tol));
    report.push_check(additivity.into_check(
        "kolmogorov.additivity",
        "Pr(A∪B) = Pr(A) + Pr(B) when A∩B = ∅",
        tol,
    ));
    report
}

/// A conditional probability assignment Pr(A|B) for A in the full event
/// algebra and B ranging over an admissible conditioner set.
pub trait ConditionalModel {
    fn space(&self) -> FiniteEventSpace;
    /// Membership in the conditioner set 𝒢.
    fn is_conditioner(&self, b: Event) -> bool;
    /// Pr(A|B); only called when `is_conditioner(b)`.
    fn value(&self, a: Event, b: Event) -> f64;
}

/// The ratio conditional of a probability table, conditioners being the
/// positive-probability events.
pub struct RatioConditional<'a> {
    table: &'a ProbabilityTable,
}

impl<'a> RatioConditional<'a> {
    pub fn new(table: &'a ProbabilityTable) -> Self {
        RatioConditional { table }
    }
}

impl ConditionalModel for RatioConditional<'_> {
    fn space(&self) -> FiniteEventSpace {
        *self.table.space()
    }

    fn is_conditioner(&self, b: Event) -> bool {
        self.table.probability(b) > 0.0
    }

    fn value(&self, a: Event, b: Event) -> f64 {
        self.table.probability(a & b) / self.table.probability(b)
    }
}

/// Verifies the conditional-first axioms: self-conditioning unity, additivity
/// in the first argument, and the nested chain law. Exhaustive up to 6
/// elementary propositions, sampled with `budget` triples beyond.
pub fn renyi_check(model: &dyn ConditionalModel, tol: f64, budget: u64, seed: u64) -> AxiomReport {
    let space = model.space();
    let full = space.full();

    let mut one = ResidualTracker::new();
    let mut additivity = ResidualTracker::new();
    let mut chain = ResidualTracker::new();

    if space.atom_count() <= 12 {
        for b in space.events() {
            if model.is_conditioner(b) {
                one.record((model.value(b, b) - 1.0).abs());
            } else {
                one.skip();
            }
        }
    } else {
        let mut rng = Rng::from_seed_stream(seed, 0x4F4E45);
        for _ in 0..budget.max(1) {
            let b = (rng.next_u64() as u32) & space.full();
            if model.is_conditioner(b) {
                one.record((model.value(b, b) - 1.0).abs());
            } else {
                one.skip();
            }
        }
    }

    let exhaustive = space.atom_count() <= 6;
    if exhaustive {
        for c in space.events() {
            if !model.is_conditioner(c) {
                additivity.skip();
                continue;
            }
            for a in space.events() {
                let comp = space.complement(a);
                let mut b = comp;
                loop {
                    additivity.record(
                        (model.value(a | b, c) - model.value(a, c) - model.value(b, c)).abs(),
                    );
                    if b == 0 {
                        break;
                    }
                    b = (b - 1) & comp;
                }
            }
        }
        for c in space.events() {
            if !model.is_conditioner(c) {
                chain.skip();
                continue;
            }
            // B ⊆ C via submask enumeration.
            let mut b = c;
            loop {
                if model.is_conditioner(b) && model.value(b, c) > 0.0 {
                    for a in space.events() {
                        chain.record(
                            (model.value(a, b) - model.value(a & b, c) / model.value(b, c)).abs(),
                        );
                    }
                } else {
                    chain.skip();
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & c;
            }
        }
    } else {
        let mut rng = Rng::from_seed_stream(seed, 0x52454E59);
        for _ in 0..budget {
            let c = (rng.next_u64() as u32) & full;
            if !model.is_conditioner(c) {
                additivity.skip();
                chain.skip();
                continue;
            }
            let a = (rng.next_u64() as u32) & full;
            let b_disjoint = (rng.next_u64() as u32) & space.complement(a);
            additivity.record(
                (model.value(a | b_disjoint, c)
                    - model.value(a, c)
                    - model.value(b_disjoint, c))
                .abs(),
            );
            let b_nested = (rng.next_u64() as u32) & c;
            if model.is_conditioner(b_nested) && model.value(b_nested, c) > 0.0 {
                chain.record(
                    (model.value(a, b_nested)
                        - model.value(a & b_nested, c) / model.value(b_nested, c))
                    .abs(),
                );
            } else {
                chain.skip();
            }
        }
    }

    let instances = one.count() + additivity.count() + chain.count();
    let mut report = AxiomReport::new("renyi").with_seed(seed);
    report.instances = instances;
    report.config_entry("atoms", space.atom_count());
    report.config_entry("enumeration", if exhaustive { "exhaustive" } else { "sampled" });
    report.push_check(one.into_check("renyi.self-unity", "Pr(B|B) = 1", tol));
    report.push_check(additivity.into_check(
        "renyi.additivity",
        "Pr(A∪B|C) = Pr(A|C) + Pr(B|C) when A∩B = ∅",
        tol,
    ));
    report.push_check(chain.into_check(
        "renyi.chain",
        "Pr(A|B) = Pr(A∩B|C)/Pr(B|C) when B ⊆ C and Pr(B|C) > 0",
        tol,
    ));
    report
}

/// 64 uniform grid points on [GRID_MARGIN, 1 − GRID_MARGIN].
pub fn functional_grid() -> Vec<f64> {
    let lo = GRID_MARGIN;
    let hi = 1.0 - GRID_MARGIN;
    (0..64)
        .map(|i| lo + (hi - lo) * i as f64 / 63.0)
        .collect()
}

/// Configuration of the full classical verification suite.
#[derive(Debug, Clone)]
pub struct ClassicalSuiteConfig {
    pub tables: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// Sampled-check budget per table for spaces too large to enumerate.
    pub budget: u64,
}

impl Default for ClassicalSuiteConfig {
    fn default() -> Self {
        ClassicalSuiteConfig {
            tables: 100,
            seed: 0,
            tolerance: 1e-12,
            budget: 1000,
        }
    }
}

/// Residual trackers for the per-table checks, shared by the randomized
/// suite and single-table verification.
struct TableTrackers {
    kol_nonneg: ResidualTracker,
    kol_norm: ResidualTracker,
    kol_add: ResidualTracker,
    renyi_one: ResidualTracker,
    renyi_add: ResidualTracker,
    renyi_chain: ResidualTracker,
    cox_product: ResidualTracker,
    unit_null: ResidualTracker,
    negation_sum: ResidualTracker,
    sum_rule: ResidualTracker,
}

impl TableTrackers {
    fn new() -> Self {
        TableTrackers {
            kol_nonneg: ResidualTracker::new(),
            kol_norm: ResidualTracker::new(),
            kol_add: ResidualTracker::new(),
            renyi_one: ResidualTracker::new(),
            renyi_add: ResidualTracker::new(),
            renyi_chain: ResidualTracker::new(),
            cox_product: ResidualTracker::new(),
            unit_null: ResidualTracker::new(),
            negation_sum: ResidualTracker::new(),
            sum_rule: ResidualTracker::new(),
        }
    }

    fn absorb(&mut self, table: &ProbabilityTable, tol: f64, budget: u64, seed: u64) {
        let space = *table.space();
        let full = space.full();
        let n = space.atom_count();

        let kol = kolmogorov_check(table, tol);
        self.kol_nonneg.record(kol.checks[0].max_residual);
        self.kol_norm.record(kol.checks[1].max_residual);
        self.kol_add.record(kol.checks[2].max_residual);

        let ratio = RatioConditional::new(table);
        let renyi = renyi_check(&ratio, tol, budget, seed);
        self.renyi_one.record(renyi.checks[0].max_residual);
        self.renyi_add.record(renyi.checks[1].max_residual);
        self.renyi_chain.record(renyi.checks[2].max_residual);

        // Product rule, unit/null laws, negation sum, and the sum-rule chain
        // over event triples: exhaustive for small spaces, sampled beyond.
        let mut rng = Rng::from_seed_stream(seed, 0x545249);
        let mut triples: Vec<(Event, Event, Event)> = Vec::new();
        if n <= 5 {
            for a in space.events() {
                for b in space.events() {
                    for c in space.events() {
                        triples.push((a, b, c));
                    }
                }
            }
        } else {
            for _ in 0..budget {
                triples.push((
                    (rng.next_u64() as u32) & full,
                    (rng.next_u64() as u32) & full,
                    (rng.next_u64() as u32) & full,
                ));
            }
        }

        for &(a, b, c) in &triples {
            if table.probability(c) <= 0.0 {
                self.cox_product.skip();
                self.unit_null.skip();
                self.negation_sum.skip();
                self.sum_rule.skip();
                continue;
            }
            match cox_product_residual(table, a, b, c) {
                Ok(res) => self.cox_product.record(res),
                Err(_) => self.cox_product.skip(),
            }
            self.unit_null
                .record((table.conditional_ratio(full, c).unwrap() - 1.0).abs());
            self.unit_null
                .record(table.conditional_ratio(0, c).unwrap().abs());
            match negation_sum_residual(table, a, c) {
                Ok(res) => self.negation_sum.record(res),
                Err(_) => self.negation_sum.skip(),
            }
            match sum_rule_residual(table, a, b, c) {
                Ok(audit) => self.sum_rule.record(audit.residual),
                Err(_) => self.sum_rule.skip(),
            }
        }
    }

    fn instances(&self) -> u64 {
        self.kol_add.count()
            + self.renyi_one.count()
            + self.renyi_add.count()
            + self.renyi_chain.count()
            + self.cox_product.count()
            + self.sum_rule.count()
    }

    fn push_into(self, report: &mut AxiomReport, tol: f64) {
        report.push_check(self.kol_nonneg.into_check(
            "kolmogorov.non-negativity",
            "Pr(A) ≥ 0",
            tol,
        ));
        report.push_check(self.kol_norm.into_check(
            "kolmogorov.normalization",
            "Pr(Ω) = 1",
            tol,
        ));
        report.push_check(self.kol_add.into_check(
            "kolmogorov.additivity",
            "Pr(A∪B) = Pr(A) + Pr(B) when A∩B = ∅",
            tol,
        ));
        report.push_check(self.renyi_one.into_check(
            "renyi.self-unity",
            "Pr(B|B) = 1",
            tol,
        ));
        report.push_check(self.renyi_add.into_check(
            "renyi.additivity",
            "Pr(A∪B|C) = Pr(A|C) + Pr(B|C) when A∩B = ∅",
            tol,
        ));
        report.push_check(self.renyi_chain.into_check(
            "renyi.chain",
            "Pr(A|B) = Pr(A∩B|C)/Pr(B|C) when B ⊆ C and Pr(B|C) > 0",
            tol,
        ));
        report.push_check(self.cox_product.into_check(
            "cox.product",
            "w(A∧B|C) = w(B|C)·w(A|B∧C)",
            tol,
        ));
        report.push_check(self.unit_null.into_check(
            "cox.unit-and-null",
            "w(Ω|C) = 1 and w(∅|C) = 0",
            tol,
        ));
        report.push_check(self.negation_sum.into_check(
            "cox.negation-sum",
            "w(A|B) + w(¬A|B) = 1",
            tol,
        ));
        report.push_check(self.sum_rule.into_check(
            "sum-rule",
            "w(A∨B|C) = w(A|C) + w(B|C) − w(A∧B|C)",
            tol,
        ));
    }
}

/// Runs every per-table check on one user-supplied probability table.
pub fn verify_table(
    table: &ProbabilityTable,
    tolerance: f64,
    budget: u64,
    seed: u64,
) -> AxiomReport {
    let mut trackers = TableTrackers::new();
    trackers.absorb(table, tolerance, budget, seed);
    let mut report = AxiomReport::new("classical-table").with_seed(seed);
    report.instances = trackers.instances();
    report.config_entry("atoms", table.space().atom_count());
    report.config_entry("budget", budget);
    report.config_entry("tolerance", format!("{:e}", tolerance));
    trackers.push_into(&mut report, tolerance);
    report
}

/// Runs every classical check over seeded random tables (n ∈ {2..8}):
/// Kolmogorov axioms, the conditional-first axioms on the ratio conditional,
/// the product rule, the negation rules, the unit/null laws, associativity
/// of the product combination, and the sum rule.
pub fn run_classical_suite(config: &ClassicalSuiteConfig) -> AxiomReport {
    let tol = config.tolerance;
    let mut trackers = TableTrackers::new();

    for t in 0..config.tables {
        let mut rng = Rng::from_seed_stream(config.seed, t);
        let n = 2 + rng.index(7); // n ∈ {2..8}
        let table = ProbabilityTable::random(n, &mut rng).expect("random table is valid");
        trackers.absorb(&table, tol, config.budget, config.seed ^ t);
    }

    // Functional-equation residuals on the canonical regraduations. For
    // m > 1 the grid is clipped to the region where f64 can represent the
    // round trip at all.
    let mut involution = ResidualTracker::new();
    let grid = functional_grid();
    for &m in &[0.5, 1.0, 2.0, 5.0] {
        let floor = involution_conditioning_floor(m);
        for &x in grid.iter().filter(|&&x| x >= floor) {
            involution.record(negation_involution_residual(m, x));
        }
        if m == 1.0 {
            involution.record(negation_involution_residual(m, 0.0));
            involution.record(negation_involution_residual(m, 1.0));
        }
    }

    let mut assoc = ResidualTracker::new();
    for calculus in [
        PlausibilityCalculus::canonical(),
        PlausibilityCalculus::new(Regraduation::Power(2.0), 1.0).unwrap(),
    ] {
        // Coarser grid for the triple loop; 22³ ≈ 10⁴ points per calculus.
        for &x in grid.iter().step_by(3) {
            for &y in grid.iter().step_by(3) {
                for &z in grid.iter().step_by(3) {
                    assoc.record(associativity_residual(&calculus, x, y, z).unwrap());
                }
            }
        }
    }

    let total = trackers.instances() + involution.count() + assoc.count();

    let mut report = AxiomReport::new("classical").with_seed(config.seed);
    report.instances = total;
    report.config_entry("tables", config.tables);
    report.config_entry("budget", config.budget);
    report.config_entry("tolerance", format!("{:e}", tol));
    trackers.push_into(&mut report, tol);
    report.push_check(involution.into_check(
        "cox.negation-involution",
        "S(S(x)) = x with S(x) = (1 − x^m)^{1/m}",
        tol,
    ));
    report.push_check(assoc.into_check(
        "cox.associativity",
        "F(F(x,y),z) = F(x,F(y,z)) with F(x,y) = w⁻¹[w(x)·w(y)]",
        tol,
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_space_basics() {
        let s = FiniteEventSpace::new(3).unwrap();
        assert_eq!(s.full(), 0b111);
        assert_eq!(s.complement(0b101), 0b010);
        assert_eq!(s.event_count(), 8);
        assert!(FiniteEventSpace::new(0).is_err());
        assert!(FiniteEventSpace::new(MAX_ATOMS + 1).is_err());
    }

    #[test]
    fn unnormalized_weights_are_rejected() {
        assert!(ProbabilityTable::new(vec![0.6, 0.6]).is_err());
        assert!(ProbabilityTable::new(vec![-0.1, 1.1]).is_err());
    }

    #[test]
    fn kolmogorov_passes_on_coin_and_point_mass() {
        let coin = ProbabilityTable::new(vec![0.5, 0.5]).unwrap();
        let report = kolmogorov_check(&coin, 1e-12);
        assert!(report.passed());
        assert!((coin.probability(coin.space().full()) - 1.0).abs() < 1e-15);

        let point = ProbabilityTable::new(vec![1.0]).unwrap();
        assert!(kolmogorov_check(&point, 1e-12).passed());
    }

    #[test]
    fn ratio_conditional_examples() {
        let t = ProbabilityTable::uniform(4).unwrap();
        // A = {ω₁}, B = {ω₁, ω₂}.
        assert!((t.conditional_ratio(0b0001, 0b0011).unwrap() - 0.5).abs() < 1e-15);
        // A = B.
        assert!((t.conditional_ratio(0b0110, 0b0110).unwrap() - 1.0).abs() < 1e-15);
        // Disjoint.
        assert!(t.conditional_ratio(0b1000, 0b0011).unwrap() == 0.0);
        // Conditioning on the empty event.
        assert!(matches!(
            t.conditional_ratio(0b0001, 0),
            Err(Error::ConditioningOnNull { .. })
        ));
    }

    #[test]
    fn renyi_passes_on_ratio_conditionals() {
        let t = ProbabilityTable::new(vec![0.5, 0.3, 0.2]).unwrap();
        let report = renyi_check(&RatioConditional::new(&t), 1e-12, 0, 0);
        assert!(report.passed());

        let uniform = ProbabilityTable::uniform(3).unwrap();
        let report = renyi_check(&RatioConditional::new(&uniform), 1e-12, 0, 0);
        assert!(report.passed());
        assert!(report.max_residual() <= 1e-12);
    }

    /// Ratio conditionals with Pr(B|B) deliberately lowered on one event.
    struct Perturbed<'a> {
        inner: RatioConditional<'a>,
        bad: Event,
    }

    impl ConditionalModel for Perturbed<'_> {
        fn space(&self) -> FiniteEventSpace {
            self.inner.space()
        }
        fn is_conditioner(&self, b: Event) -> bool {
            self.inner.is_conditioner(b)
        }
        fn value(&self, a: Event, b: Event) -> f64 {
            if a == b && b == self.bad {
                0.9
            } else {
                self.inner.value(a, b)
            }
        }
    }

    #[test]
    fn injected_self_unity_violation_is_caught() {
        let t = ProbabilityTable::uniform(3).unwrap();
        let model = Perturbed {
            inner: RatioConditional::new(&t),
            bad: 0b011,
        };
        let report = renyi_check(&model, 1e-12, 0, 0);
        let one = &report.checks[0];
        assert!(!one.pass);
        assert!((one.max_residual - 0.1).abs() < 1e-12);
    }

    #[test]
    fn cox_product_residual_examples() {
        let t = ProbabilityTable::new(vec![0.5, 0.3, 0.2]).unwrap();
        let full = t.space().full();
        // A = B = C = Ω.
        assert!(cox_product_residual(&t, full, full, full).unwrap() == 0.0);
        // A = {ω₁}, B = {ω₁, ω₂}, C = Ω: |0.5 − 0.8·0.625| = 0.
        assert!(cox_product_residual(&t, 0b001, 0b011, full).unwrap() < 1e-15);

        let u = ProbabilityTable::uniform(4).unwrap();
        // Nested A ⊂ B ⊂ C.
        assert!(cox_product_residual(&u, 0b0001, 0b0011, 0b0111).unwrap() < 1e-15);
    }

    #[test]
    fn associativity_of_multiplicative_forms() {
        let id = PlausibilityCalculus::canonical();
        assert!(associativity_residual(&id, 0.2, 0.5, 0.9).unwrap() < 1e-15);

        let sq = PlausibilityCalculus::new(Regraduation::Power(2.0), 1.0).unwrap();
        assert!(associativity_residual(&sq, 0.3, 0.4, 0.8).unwrap() < 1e-12);

        assert!(associativity_residual(&id, -0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn non_multiplicative_rule_fails_associativity_somewhere() {
        let broken = |x: f64, y: f64| x.min(y) + 0.01;
        let grid = functional_grid();
        let mut worst = 0.0f64;
        for &x in grid.iter().step_by(9) {
            for &y in grid.iter().step_by(9) {
                for &z in grid.iter().step_by(9) {
                    worst = worst.max(associativity_residual_of(broken, x, y, z));
                }
            }
        }
        assert!(worst > 1e-3);
    }

    #[test]
    fn negation_involution_examples() {
        assert!((negation_map(1.0, 0.3) - 0.7).abs() < 1e-15);
        assert!(negation_involution_residual(1.0, 0.3) < 1e-15);
        // 3-4-5 triple: S(0.6) = 0.8 for m = 2.
        assert!((negation_map(2.0, 0.6) - 0.8).abs() < 1e-15);
        assert!(negation_involution_residual(2.0, 0.6) < 1e-15);
        // Boundary.
        assert!((negation_map(1.0, 0.0) - 1.0).abs() == 0.0);
        assert!(negation_involution_residual(1.0, 0.0) == 0.0);
    }

    #[test]
    fn involution_holds_for_all_tested_exponents() {
        for &m in &[0.5, 1.0, 2.0, 5.0] {
            let floor = involution_conditioning_floor(m);
            for &x in functional_grid().iter().filter(|&&x| x >= floor) {
                assert!(
                    negation_involution_residual(m, x) < 1e-12,
                    "m = {m}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn involution_conditioning_floor_is_tight() {
        // Below the floor the f64 round trip genuinely degrades: at m = 5 the
        // fifth power of a small x underflows past machine epsilon and
        // S(S(x)) collapses to 0.
        assert!(negation_involution_residual(5.0, 1e-6) > 1e-7);
        assert_eq!(involution_conditioning_floor(1.0), 0.0);
        assert!(involution_conditioning_floor(5.0) < 0.5);
    }

    #[test]
    fn sum_rule_on_the_coin_space() {
        let coin = ProbabilityTable::new(vec![0.5, 0.5]).unwrap();
        let full = coin.space().full();
        // A = {H}, B = {T}: |1 − 0.5 − 0.5 + 0| = 0.
        let audit = sum_rule_residual(&coin, 0b01, 0b10, full).unwrap();
        assert!(audit.residual == 0.0);
        assert_eq!(audit.steps.len(), 10);
        assert!((audit.steps[0].value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sum_rule_with_overlap_and_disjoint_reduction() {
        let u = ProbabilityTable::uniform(4).unwrap();
        let full = u.space().full();
        // Overlapping A, B.
        let audit = sum_rule_residual(&u, 0b0011, 0b0110, full).unwrap();
        assert!(audit.residual < 1e-15);

        // Disjoint A, B reproduces conditional additivity exactly.
        let audit = sum_rule_residual(&u, 0b0001, 0b0010, 0b0111).unwrap();
        assert!(audit.residual < 1e-15);
        let lhs = u.conditional_ratio(0b0011, 0b0111).unwrap();
        let rhs = u.conditional_ratio(0b0001, 0b0111).unwrap()
            + u.conditional_ratio(0b0010, 0b0111).unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
    }

    #[test]
    fn sum_rule_names_the_degenerate_step() {
        let t = ProbabilityTable::new(vec![0.5, 0.5, 0.0]).unwrap();
        let full = t.space().full();
        // B = {ω₃} has probability 0, so steps 8-9 degenerate.
        match sum_rule_residual(&t, 0b001, 0b100, full) {
            Err(Error::ConditioningOnNull { context, .. }) => {
                assert!(context.contains("B∧C"));
            }
            other => panic!("expected ConditioningOnNull, got {other:?}"),
        }
    }

    #[test]
    fn table_json_round_trip() {
        let text = r#"{"labels": ["H", "T"], "weights": [0.5, 0.5]}"#;
        let table = ProbabilityTable::from_json(text).unwrap();
        assert_eq!(table.labels(), ["H", "T"]);
        assert!((table.probability(0b01) - 0.5).abs() < 1e-15);
        let back = ProbabilityTable::from_json(&table.to_json()).unwrap();
        assert_eq!(back.weights(), table.weights());

        // Mismatched labels and unnormalized weights are rejected.
        assert!(ProbabilityTable::from_json(r#"{"labels": ["a"], "weights": [0.5, 0.5]}"#).is_err());
        assert!(ProbabilityTable::from_json(r#"{"labels": ["a", "b"], "weights": [0.6, 0.6]}"#).is_err());
    }

    #[test]
    fn single_table_verification_reports_all_checks() {
        let table = ProbabilityTable::new(vec![0.5, 0.3, 0.2]).unwrap();
        let report = verify_table(&table, 1e-12, 100, 3);
        assert!(report.passed());
        assert_eq!(report.checks.len(), 10);
    }

    #[test]
    fn frequency_table_matches_the_coin_reading() {
        let f = FrequencyTable::new(vec![("H".into(), 507), ("T".into(), 493)]).unwrap();
        assert_eq!(f.trials(), 1000);
        let t = f.relative_frequencies().unwrap();
        assert!((t.probability(0b01) - 0.507).abs() < 1e-15);
        assert!(kolmogorov_check(&t, 1e-12).passed());
    }

    #[test]
    fn suite_runs_clean_on_a_small_budget() {
        let config = ClassicalSuiteConfig {
            tables: 10,
            seed: 7,
            tolerance: 1e-12,
            budget: 200,
        };
        let report = run_classical_suite(&config);
        assert!(report.passed(), "residuals: {:?}", report.checks);
    }
}
