//! Generator weights of the free module of vector-valued forms, Hilbert
//! series, and consistency checks between ρ and its contragredient.
//!
//! M(ρ) and S(ρ) are free over C[E₄, E₆] of rank d, so their Hilbert series
//! are N(z) / ((1 − z⁴)(1 − z⁶)) with N a polynomial of degree ≤ 12 whose
//! coefficients count free generators by weight.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dimensions::RepAnalysis;
use crate::error::{Error, Result};
use crate::modrep::{contragredient, ModularRepresentation, Parity, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Holomorphic,
    Cusp,
}

impl FormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FormKind::Holomorphic => "holomorphic",
            FormKind::Cusp => "cusp",
        }
    }
}

/// Number of free generators in each weight (zero counts omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorProfile {
    pub kind: FormKind,
    pub degree: usize,
    pub counts: BTreeMap<i64, u64>,
}

impl GeneratorProfile {
    pub fn from_analysis(a: &RepAnalysis, kind: FormKind) -> Result<Self> {
        let mut raw: Vec<(i64, i64)> = Vec::new();
        if let Some(e) = a.even_invariants() {
            let g = |k| e.gamma(k);
            let (h0, lp, lm) = (e.h0, e.lambda_plus, e.lambda_minus);
            raw.extend(match kind {
                FormKind::Holomorphic => [
                    (0, h0),
                    (2, g(1) + lp),
                    (4, g(2) + lp - h0),
                    (6, g(3) - g(1) - h0),
                    (8, g(6) - g(5) - lp),
                    (10, h0 - lp),
                    (12, 0),
                ],
                FormKind::Cusp => [
                    (0, 0),
                    (2, g(1) + lm + h0),
                    (4, g(2) + lm),
                    (6, g(3) - g(1) - h0),
                    (8, g(6) - g(5) - lm - h0),
                    (10, -lm),
                    (12, h0),
                ],
            });
        }
        if let Some(o) = a.odd_invariants() {
            if !a.weight_one_exact() {
                return Err(Error::Weight1Indeterminate);
            }
            let g = |k| o.dot_gamma(k);
            let (w1, l) = match kind {
                FormKind::Holomorphic => (a.dim_holomorphic(1)?.value as i64, o.dot_lambda_plus),
                FormKind::Cusp => (a.dim_cusp(1)?.value as i64, o.dot_lambda_minus),
            };
            raw.extend([
                (1, w1),
                (3, g(1) + l),
                (5, g(2) + l - w1),
                (7, g(3) - g(1) - w1),
                (9, g(6) - g(5) - l),
                (11, w1 - l),
            ]);
        }
        let mut counts = BTreeMap::new();
        for (weight, value) in raw {
            if value < 0 {
                return Err(Error::NegativeDimension { weight, value });
            }
            if value > 0 {
                counts.insert(weight, value as u64);
            }
        }
        Ok(GeneratorProfile { kind, degree: a.degree(), counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, weight: i64) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }
}

pub fn generator_profile(
    rep: &ModularRepresentation,
    kind: FormKind,
    settings: &Settings,
) -> Result<GeneratorProfile> {
    GeneratorProfile::from_analysis(&RepAnalysis::new(rep, settings)?, kind)
}

/// Hilbert series Σ dim(weight w) zʷ as numerator over (1 − z⁴)(1 − z⁶).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub kind: FormKind,
    /// Coefficients of N(z), index = weight, length 13.
    pub numerator: Vec<i64>,
}

impl HilbertSeries {
    pub fn from_profile(profile: &GeneratorProfile) -> Self {
        let mut numerator = vec![0i64; 13];
        for (&w, &c) in &profile.counts {
            numerator[w as usize] += c as i64;
        }
        HilbertSeries { kind: profile.kind, numerator }
    }

    /// Coefficients of z⁰ .. z^order.
    pub fn expand(&self, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order + 1];
        for w in 0..=order {
            let at = |c: &[i64], back: usize| if w >= back { c[w - back] } else { 0 };
            let n = self.numerator.get(w).copied().unwrap_or(0);
            c[w] = n + at(&c, 4) + at(&c, 6) - at(&c, 10);
        }
        c
    }

    /// z¹² N(1/z).
    pub fn reflected_numerator(&self) -> Vec<i64> {
        let mut out = self.numerator.clone();
        out.reverse();
        out
    }
}

pub fn hilbert_series(
    rep: &ModularRepresentation,
    kind: FormKind,
    settings: &Settings,
) -> Result<HilbertSeries> {
    Ok(HilbertSeries::from_profile(&generator_profile(rep, kind, settings)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Failed { counterexamples: Vec<String> },
    Skipped { reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub rep: String,
    pub dual: String,
    pub checks: Vec<IdentityCheck>,
}

impl DualityReport {
    /// True when nothing failed (skipped checks are fine).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, CheckOutcome::Failed { .. }))
    }
}

const MAX_COUNTEREXAMPLES: usize = 5;

struct Collector {
    failures: Vec<String>,
    skipped: Option<&'static str>,
}

impl Collector {
    fn new() -> Self {
        Collector { failures: Vec::new(), skipped: None }
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok && self.failures.len() < MAX_COUNTEREXAMPLES {
            self.failures.push(describe());
        }
    }

    fn finish(self, name: &'static str) -> IdentityCheck {
        let outcome = match self.skipped {
            Some(reason) if self.failures.is_empty() => CheckOutcome::Skipped { reason },
            _ if self.failures.is_empty() => CheckOutcome::Passed,
            _ => CheckOutcome::Failed { counterexamples: self.failures },
        };
        IdentityCheck { name, outcome }
    }
}

/// Runs the duality identities between ρ and ρ∨ up to level `n_max`.
pub fn duality_report(
    rep: &ModularRepresentation,
    n_max: u32,
    settings: &Settings,
) -> Result<DualityReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1"));
    }
    let dual = contragredient(rep, settings.tol, settings.order_cap)?;
    let a = RepAnalysis::new(rep, settings)?;
    let b = RepAnalysis::new(&dual, settings)?;
    let n_max = i64::from(n_max);
    let mut checks = Vec::new();

    let d_even = a.part_degree(Parity::Even) as i64;
    let mut c = Collector::new();
    if d_even == 0 {
        c.skipped = Some("no even part");
    }
    for n in 1..=n_max {
        for k in 1..6 * n {
            if d_even == 0 {
                break;
            }
            let lhs = a.dim_holomorphic(2 * k)?.value + b.dim_cusp(12 * n + 2 - 2 * k)?.value;
            c.expect(lhs as i64 == n * d_even, || {
                format!("n={} k={}: {} != {}", n, k, lhs, n * d_even)
            });
        }
    }
    checks.push(c.finish("serre-duality-even"));

    let d_odd = a.part_degree(Parity::Odd) as i64;
    let mut c = Collector::new();
    if d_odd == 0 {
        c.skipped = Some("no odd part");
    }
    for n in 1..=n_max {
        for k in 1..6 * n {
            if d_odd == 0 {
                break;
            }
            let lhs = a.dim_holomorphic(2 * k + 1)?.value + b.dim_cusp(12 * n + 1 - 2 * k)?.value;
            c.expect(lhs as i64 == n * d_odd, || {
                format!("n={} k={}: {} != {}", n, k, lhs, n * d_odd)
            });
        }
    }
    checks.push(c.finish("serre-duality-odd"));

    let mut c = Collector::new();
    let range = -6 * n_max..=6 * n_max;
    if let (Some(e), Some(f)) = (a.even_invariants(), b.even_invariants()) {
        for k in range.clone() {
            let (lhs, rhs) = (f.gamma(k), e.gamma(1) - e.gamma(1 - k));
            c.expect(lhs == rhs, || format!("gamma k={}: {} != {}", k, lhs, rhs));
        }
    }
    if let (Some(e), Some(f)) = (a.odd_invariants(), b.odd_invariants()) {
        for k in range {
            let (lhs, rhs) = (f.dot_gamma(k), -e.dot_gamma(-k));
            c.expect(lhs == rhs, || format!("dot gamma k={}: {} != {}", k, lhs, rhs));
        }
    }
    checks.push(c.finish("gamma-duality"));

    let mut c = Collector::new();
    if let (Some(e), Some(f)) = (a.even_invariants(), b.even_invariants()) {
        let g1 = -e.gamma(1);
        let (x, y) = (e.lambda_plus + f.lambda_minus, f.lambda_plus + e.lambda_minus);
        c.expect(x == g1 && y == g1, || format!("lambda sums {}, {} vs -gamma1 {}", x, y, g1));
    }
    if let (Some(e), Some(f)) = (a.odd_invariants(), b.odd_invariants()) {
        let (x, y) = (f.dot_lambda_plus, -e.dot_lambda_minus);
        c.expect(x == y, || format!("dual dot lambda+ {} != {}", x, y));
    }
    checks.push(c.finish("lambda-reciprocity"));

    let mut c = Collector::new();
    if let Some(e) = a.even_invariants() {
        let x = a.dim_holomorphic(0)?.value as i64 - b.dim_cusp(2)?.value as i64;
        let y = a.dim_cusp(0)?.value as i64 - b.dim_holomorphic(2)?.value as i64;
        c.expect(x == e.lambda_plus, || format!("M0 - S2(dual) = {} != {}", x, e.lambda_plus));
        c.expect(y == e.lambda_minus, || format!("S0 - M2(dual) = {} != {}", y, e.lambda_minus));
    }
    if let Some(o) = a.odd_invariants() {
        if a.weight_one_exact() && b.weight_one_exact() {
            let x = a.dim_holomorphic(1)?.value as i64 - b.dim_cusp(1)?.value as i64;
            let y = a.dim_cusp(1)?.value as i64 - b.dim_holomorphic(1)?.value as i64;
            c.expect(x == o.dot_lambda_plus, || {
                format!("M1 - S1(dual) = {} != {}", x, o.dot_lambda_plus)
            });
            c.expect(y == o.dot_lambda_minus, || {
                format!("S1 - M1(dual) = {} != {}", y, o.dot_lambda_minus)
            });
        } else {
            c.skipped = Some("weight-1 dimensions are only bounds");
        }
    }
    checks.push(c.finish("cohomology"));

    let mut c = Collector::new();
    match (
        GeneratorProfile::from_analysis(&a, FormKind::Holomorphic),
        GeneratorProfile::from_analysis(&b, FormKind::Cusp),
    ) {
        (Ok(pm), Ok(ps)) => {
            let (nm, ns) = (HilbertSeries::from_profile(&pm), HilbertSeries::from_profile(&ps));
            let reflected = nm.reflected_numerator();
            c.expect(ns.numerator == reflected, || {
                format!("{:?} != {:?}", ns.numerator, reflected)
            });
        }
        (Err(Error::Weight1Indeterminate), _) | (_, Err(Error::Weight1Indeterminate)) => {
            c.skipped = Some("weight-1 dimensions are only bounds");
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    }
    checks.push(c.finish("numerator-duality"));

    Ok(DualityReport { rep: String::from(rep.name()), dual: String::from(dual.name()), checks })
}
