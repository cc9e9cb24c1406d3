//! dim M_w(ρ) and dim S_w(ρ) for all integer weights.
//!
//! Even weights only see the even part of ρ and odd weights the odd part.
//! Away from weight 1 the formulas only involve global invariants and are
//! exact for any representation. At weight 1 the closed form max(0, λ̇±) holds
//! per irreducible constituent, so for an odd part not certified irreducible
//! the value returned is only a lower bound.

use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::invariants::{
    complement_floor_trace, even_invariants, exponent_data, floor_trace, odd_invariants,
    EvenInvariants, OddInvariants,
};
use crate::modrep::{
    character_norm, parity_split, validate, Irreducibility, ModularRepresentation, Parity,
    Settings,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimStatus {
    Exact,
    LowerBound,
}

impl DimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DimStatus::Exact => "exact",
            DimStatus::LowerBound => "lower-bound",
        }
    }
}

/// Which formula produced a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// The part of matching parity is zero-dimensional.
    ParityZero,
    NegativeWeight,
    /// dim M₀ = h₀.
    WeightZeroH0,
    /// dim S₀ = 0.
    CuspWeightZero,
    /// λ₊ + γ_k, resp. λ₋ + γ_k, at weight 2k > 0.
    EvenPositive,
    /// λ₋ + γ₁ + h₀ at weight 2.
    EvenCuspWeightTwo,
    /// λ̇± + γ̇_k at weight 2k + 1 > 1.
    OddPositive,
    OddWeightOneIrreducible,
    OddWeightOneBound,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::ParityZero => "parity-zero",
            Rule::NegativeWeight => "negative-weight",
            Rule::WeightZeroH0 => "weight-0-h0",
            Rule::CuspWeightZero => "cusp-weight-0",
            Rule::EvenPositive => "even-k>0",
            Rule::EvenCuspWeightTwo => "even-cusp-k=1",
            Rule::OddPositive => "odd-k>0",
            Rule::OddWeightOneIrreducible => "odd-weight-1-irreducible",
            Rule::OddWeightOneBound => "odd-weight-1-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimResult {
    pub value: u64,
    pub status: DimStatus,
    pub rule: Rule,
}

impl DimResult {
    fn exact(value: u64, rule: Rule) -> Self {
        DimResult { value, status: DimStatus::Exact, rule }
    }

    pub fn is_exact(&self) -> bool {
        self.status == DimStatus::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimRow {
    pub weight: i64,
    pub holomorphic: DimResult,
    pub cusp: DimResult,
}

#[derive(Debug, Clone, PartialEq)]
struct OddPart {
    degree: usize,
    inv: OddInvariants,
    weight_one_exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct EvenPart {
    degree: usize,
    inv: EvenInvariants,
}

/// A validated representation with its invariants extracted once, answering
/// dimension queries for any weight.
#[derive(Debug, Clone, PartialEq)]
pub struct RepAnalysis {
    name: String,
    degree: usize,
    even: Option<EvenPart>,
    odd: Option<OddPart>,
}

impl RepAnalysis {
    pub fn new(rep: &ModularRepresentation, settings: &Settings) -> Result<Self> {
        validate(rep, settings.tol, settings.order_cap, None)?;
        let split = parity_split(rep, settings.tol)?;
        let even = match split.even_part.degree() {
            0 => None,
            degree => Some(EvenPart { degree, inv: even_invariants(&split.even_part, settings)? }),
        };
        let odd = match split.odd_part.degree() {
            0 => None,
            degree => Some(OddPart {
                degree,
                inv: odd_invariants(&split.odd_part, settings)?,
                weight_one_exact: certified_irreducible(&split.odd_part, settings),
            }),
        };
        Ok(RepAnalysis { name: String::from(rep.name()), degree: rep.degree(), even, odd })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn part_degree(&self, parity: Parity) -> usize {
        match parity {
            Parity::Even => self.even.as_ref().map_or(0, |p| p.degree),
            Parity::Odd => self.odd.as_ref().map_or(0, |p| p.degree),
        }
    }

    pub fn even_invariants(&self) -> Option<&EvenInvariants> {
        self.even.as_ref().map(|p| &p.inv)
    }

    pub fn odd_invariants(&self) -> Option<&OddInvariants> {
        self.odd.as_ref().map(|p| &p.inv)
    }

    /// Whether the weight-1 dimensions are exact (always true without an odd part).
    pub fn weight_one_exact(&self) -> bool {
        self.odd.as_ref().is_none_or(|p| p.weight_one_exact)
    }

    pub fn dim_holomorphic(&self, w: i64) -> Result<DimResult> {
        self.dim(w, false)
    }

    pub fn dim_cusp(&self, w: i64) -> Result<DimResult> {
        self.dim(w, true)
    }

    pub fn dim_table(&self, w_min: i64, w_max: i64) -> Result<Vec<DimRow>> {
        if w_min > w_max {
            return Err(Error::InvalidArgument("weight range is empty"));
        }
        (w_min..=w_max)
            .map(|w| {
                Ok(DimRow { weight: w, holomorphic: self.dim_holomorphic(w)?, cusp: self.dim_cusp(w)? })
            })
            .collect()
    }

    fn dim(&self, w: i64, cusp: bool) -> Result<DimResult> {
        if w.rem_euclid(2) == 0 {
            let Some(part) = &self.even else {
                return Ok(DimResult::exact(0, Rule::ParityZero));
            };
            let inv = &part.inv;
            let k = w / 2;
            let (value, rule) = match (cusp, k) {
                (false, k) if k < 0 => (0, Rule::NegativeWeight),
                (false, 0) => (inv.h0, Rule::WeightZeroH0),
                (false, k) => (inv.lambda_plus + inv.gamma(k), Rule::EvenPositive),
                (true, k) if k < 0 => (0, Rule::NegativeWeight),
                (true, 0) => (0, Rule::CuspWeightZero),
                (true, 1) => (inv.lambda_minus + inv.gamma(1) + inv.h0, Rule::EvenCuspWeightTwo),
                (true, k) => (inv.lambda_minus + inv.gamma(k), Rule::EvenPositive),
            };
            Ok(DimResult::exact(non_negative(w, value)?, rule))
        } else {
            let Some(part) = &self.odd else {
                return Ok(DimResult::exact(0, Rule::ParityZero));
            };
            let inv = &part.inv;
            let k = (w - 1).div_euclid(2);
            let lambda = if cusp { inv.dot_lambda_minus } else { inv.dot_lambda_plus };
            if k < 0 {
                Ok(DimResult::exact(0, Rule::NegativeWeight))
            } else if k == 0 {
                let value = lambda.max(0) as u64;
                Ok(if part.weight_one_exact {
                    DimResult::exact(value, Rule::OddWeightOneIrreducible)
                } else {
                    DimResult { value, status: DimStatus::LowerBound, rule: Rule::OddWeightOneBound }
                })
            } else {
                Ok(DimResult::exact(non_negative(w, lambda + inv.dot_gamma(k))?, Rule::OddPositive))
            }
        }
    }
}

fn non_negative(weight: i64, value: i64) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::NegativeDimension { weight, value })
}

/// Degree one, asserted irreducible, or character norm 1 over the image group.
fn certified_irreducible(rep: &ModularRepresentation, settings: &Settings) -> bool {
    match rep.irreducibility() {
        _ if rep.degree() <= 1 => true,
        Irreducibility::Irreducible => true,
        Irreducibility::Reducible => false,
        Irreducibility::Unknown => {
            character_norm(rep, settings.tol, settings.closure_cap) == Ok(1)
        }
    }
}

pub fn dim_holomorphic(rep: &ModularRepresentation, w: i64, settings: &Settings) -> Result<DimResult> {
    RepAnalysis::new(rep, settings)?.dim_holomorphic(w)
}

pub fn dim_cusp(rep: &ModularRepresentation, w: i64, settings: &Settings) -> Result<DimResult> {
    RepAnalysis::new(rep, settings)?.dim_cusp(w)
}

pub fn dim_table(
    rep: &ModularRepresentation,
    w_min: i64,
    w_max: i64,
    settings: &Settings,
) -> Result<Vec<DimRow>> {
    RepAnalysis::new(rep, settings)?.dim_table(w_min, w_max)
}

/// (dim M_k(ρ⊗κ^k), dim S_k(ρ⊗κ^k)) straight from the floor traces of
/// Λ + k/12 and 1 − Λ − k/12. Only meaningful for irreducible even ρ; it is
/// kept as a second route to cross-check the closed formulas.
pub fn dim_via_exponent_shift(
    rep_even: &ModularRepresentation,
    k: i64,
    settings: &Settings,
) -> Result<(u64, u64)> {
    rep_even.require_parity(Parity::Even, settings.tol)?;
    let exp = exponent_data(rep_even, settings)?;
    let shift = Rational64::new(k, 12);
    let holomorphic = floor_trace(&exp, shift)?;
    let cusp = -complement_floor_trace(&exp, Rational64::from_integer(1) - shift)?;
    Ok((holomorphic.max(0) as u64, cusp.max(0) as u64))
}
