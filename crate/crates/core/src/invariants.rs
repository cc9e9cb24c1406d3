//! Numerical invariants of a representation: eigenphases of ρ(T), the
//! signature (α, β₁, β₂), the trace of the exponent matrix Λ, λ± and the γ
//! sequence, together with their odd-parity counterparts computed from
//! ρ̇ = ρ ⊗ κ⁻¹.
//!
//! Λ is never built explicitly. Writing its eigenvalues as Λ_j = x_j + n_j
//! with x_j ∈ [0, 1) the eigenphases of ρ(T) and n_j integers, every floor
//! trace splits as
//!
//! ```text
//! Σ ⌊Λ_j + c⌋ = (Tr Λ − Σ x_j) + Σ ⌊x_j + c⌋
//! ```
//!
//! so only Tr Λ (fixed by the signature) and the phases are needed.

use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{mat_mul, rank_unit_scale, snap_complex_integer, snap_integer, unit_root, ComplexMatrix, C64};
use crate::modrep::{t_order, tensor_kappa, ModularRepresentation, Parity, Settings};

/// Eigenvalue multiplicities of an even representation: α at −1 for ρ(S),
/// β₁ and β₂ at e^{2πi/3} and e^{4πi/3} for ρ(ST⁻¹).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub d: i64,
    pub alpha: i64,
    pub beta1: i64,
    pub beta2: i64,
}

impl Signature {
    pub fn new(d: i64, alpha: i64, beta1: i64, beta2: i64) -> Result<Self> {
        let sig = Signature { d, alpha, beta1, beta2 };
        if d < 0 || !(0..=d).contains(&alpha) || beta1 < 0 || beta2 < 0 || beta1 + beta2 > d {
            return Err(Error::InvalidSignature { d, alpha, beta1, beta2 });
        }
        Ok(sig)
    }

    /// Tr Λ = d − α/2 − (β₁ + 2β₂)/3.
    pub fn trace_lambda(&self) -> Rational64 {
        Rational64::from_integer(self.d)
            - Rational64::new(self.alpha, 2)
            - Rational64::new(self.beta1 + 2 * self.beta2, 3)
    }

    /// Signature of the contragredient: β₁ and β₂ swap.
    pub fn dual(&self) -> Signature {
        Signature { beta1: self.beta2, beta2: self.beta1, ..*self }
    }

    pub fn sum(&self, other: &Signature) -> Signature {
        Signature {
            d: self.d + other.d,
            alpha: self.alpha + other.alpha,
            beta1: self.beta1 + other.beta1,
            beta2: self.beta2 + other.beta2,
        }
    }
}

/// Eigenphases x_j ∈ [0,1) of ρ(T) (sorted, with multiplicity) and Tr Λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentData {
    pub phases: Vec<Rational64>,
    pub trace_lambda: Rational64,
}

impl ExponentData {
    pub fn new(mut phases: Vec<Rational64>, trace_lambda: Rational64) -> Result<Self> {
        phases.sort();
        let data = ExponentData { phases, trace_lambda };
        data.offset()?;
        Ok(data)
    }

    /// Σ n_j = Tr Λ − Σ x_j, which must be an integer.
    pub fn offset(&self) -> Result<i64> {
        let gap = self.trace_lambda - self.phases.iter().copied().sum::<Rational64>();
        if gap.is_integer() {
            Ok(gap.to_integer())
        } else {
            Err(Error::TraceInconsistency)
        }
    }

    pub fn multiplicity(&self, phase: Rational64) -> usize {
        self.phases.iter().filter(|&&x| x == phase).count()
    }
}

/// The integer sequence γ_k, determined by γ₀..γ₅ and γ_{k+6} = γ_k + d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaSequence {
    d: i64,
    base: [i64; 6],
}

impl GammaSequence {
    pub fn from_signature(sig: &Signature) -> Self {
        let Signature { d, alpha, beta1, beta2 } = *sig;
        GammaSequence {
            d,
            base: [0, alpha + beta1 + beta2 - d, beta2, alpha, beta1 + beta2, alpha + beta2],
        }
    }

    pub fn at(&self, k: i64) -> i64 {
        self.base[k.rem_euclid(6) as usize] + k.div_euclid(6) * self.d
    }

    pub fn degree(&self) -> i64 {
        self.d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvenInvariants {
    pub sig: Signature,
    pub exp: ExponentData,
    pub lambda_plus: i64,
    pub lambda_minus: i64,
    /// Multiplicity of the trivial representation.
    pub h0: i64,
    pub gamma: GammaSequence,
}

impl EvenInvariants {
    pub fn gamma(&self, k: i64) -> i64 {
        self.gamma.at(k)
    }
}

/// Invariants of an odd ρ, all read off from the even ρ̇ = ρ ⊗ κ⁻¹.
#[derive(Debug, Clone, PartialEq)]
pub struct OddInvariants {
    pub dot_sig: Signature,
    pub dot_exp: ExponentData,
    pub dot_lambda_plus: i64,
    pub dot_lambda_minus: i64,
    pub dot_gamma: GammaSequence,
}

impl OddInvariants {
    pub fn dot_gamma(&self, k: i64) -> i64 {
        self.dot_gamma.at(k)
    }

    /// λ₊ of ρ̇ itself (the lower end of λ₊(ρ̇) ≤ λ̇₋ ≤ λ̇₊).
    pub fn lambda_plus_of_dot(&self) -> Result<i64> {
        floor_trace(&self.dot_exp, Rational64::zero())
    }
}

/// Eigenphases m/n of ρ(T), n the order of ρ(T), via the multiplicity formula
/// mult(m/n) = n⁻¹ Σ_k Tr(ρ(T)^k) e^{−2πi mk/n}.
pub fn t_eigenphases(rep: &ModularRepresentation, settings: &Settings) -> Result<Vec<Rational64>> {
    let n = t_order(rep, settings.tol, settings.order_cap)?;
    let mut traces = Vec::with_capacity(n);
    let mut power = ComplexMatrix::identity(rep.degree());
    for _ in 0..n {
        traces.push(power.trace());
        power = mat_mul(&power, rep.t_image())?;
    }
    let roots: Vec<C64> = (0..n as i64).map(|k| unit_root(-k, n as u64)).collect();
    let mut phases = Vec::with_capacity(rep.degree());
    for m in 0..n {
        let sum: C64 = traces.iter().enumerate().map(|(k, tr)| tr * roots[(m * k) % n]).sum();
        let mult = snap_complex_integer(sum / n as f64, settings.tol)?;
        if mult < 0 {
            return Err(Error::SnapFailure { value: mult as f64, eps: settings.tol.eps() });
        }
        for _ in 0..mult {
            phases.push(Rational64::new(m as i64, n as i64));
        }
    }
    if phases.len() != rep.degree() {
        return Err(Error::SnapFailure { value: phases.len() as f64, eps: settings.tol.eps() });
    }
    Ok(phases)
}

/// Signature of a purely even representation, read off from the traces of
/// ρ(S) and ρ(ST⁻¹).
pub fn signature(rep: &ModularRepresentation, settings: &Settings) -> Result<Signature> {
    rep.require_parity(Parity::Even, settings.tol)?;
    let tol = settings.tol;
    let d = rep.degree() as f64;
    let n = t_order(rep, tol, settings.order_cap)?;
    let tr_s = rep.s_image().trace();
    let alpha = snap_complex_integer(C64::new((d - tr_s.re) / 2.0, tr_s.im), tol)?;
    // Tr ρ(ST⁻¹) = d − (3/2)(β₁ + β₂) + i(√3/2)(β₁ − β₂)
    let tr = rep.st_inverse_image(n)?.trace();
    let sum = snap_integer(2.0 * (d - tr.re) / 3.0, tol)?;
    let diff = snap_integer(2.0 * tr.im / Float::sqrt(3.0), tol)?;
    if (sum + diff).rem_euclid(2) != 0 {
        return Err(Error::SnapFailure { value: (sum + diff) as f64 / 2.0, eps: tol.eps() });
    }
    Signature::new(rep.degree() as i64, alpha, (sum + diff) / 2, (sum - diff) / 2)
}

/// Signature of ρ ⊗ κ^{−2k} in terms of that of ρ.
pub fn signature_of_twist(sig: &Signature, k: i64) -> Signature {
    let Signature { d, alpha, beta1, beta2 } = *sig;
    let rest = d - beta1 - beta2;
    let (alpha, beta1, beta2) = match k.rem_euclid(6) {
        0 => (alpha, beta1, beta2),
        1 => (d - alpha, beta2, rest),
        2 => (alpha, rest, beta1),
        3 => (d - alpha, beta1, beta2),
        4 => (alpha, beta2, rest),
        _ => (d - alpha, rest, beta1),
    };
    Signature { d, alpha, beta1, beta2 }
}

/// Eigenphases together with the exponent trace fixed by the signature.
pub fn exponent_data(rep: &ModularRepresentation, settings: &Settings) -> Result<ExponentData> {
    let sig = signature(rep, settings)?;
    ExponentData::new(t_eigenphases(rep, settings)?, sig.trace_lambda())
}

/// Σ_j ⌊Λ_j + shift⌋.
pub fn floor_trace(exp: &ExponentData, shift: Rational64) -> Result<i64> {
    let tail: i64 = exp.phases.iter().map(|&x| (x + shift).floor().to_integer()).sum();
    Ok(exp.offset()? + tail)
}

/// Σ_j ⌊c − Λ_j⌋.
pub fn complement_floor_trace(exp: &ExponentData, c: Rational64) -> Result<i64> {
    let tail: i64 = exp.phases.iter().map(|&x| (c - x).floor().to_integer()).sum();
    Ok(tail - exp.offset()?)
}

pub fn even_invariants(rep: &ModularRepresentation, settings: &Settings) -> Result<EvenInvariants> {
    let sig = signature(rep, settings)?;
    let exp = ExponentData::new(t_eigenphases(rep, settings)?, sig.trace_lambda())?;
    let lambda_plus = floor_trace(&exp, Rational64::zero())?;
    let lambda_minus = -complement_floor_trace(&exp, Rational64::one())?;
    let d = rep.degree();
    let id = ComplexMatrix::identity(d);
    let stacked = ComplexMatrix::vstack(&rep.s_image().sub(&id)?, &rep.t_image().sub(&id)?)?;
    let h0 = (d - rank_unit_scale(&stacked, settings.tol)) as i64;
    Ok(EvenInvariants {
        gamma: GammaSequence::from_signature(&sig),
        sig,
        exp,
        lambda_plus,
        lambda_minus,
        h0,
    })
}

pub fn odd_invariants(rep: &ModularRepresentation, settings: &Settings) -> Result<OddInvariants> {
    rep.require_parity(Parity::Odd, settings.tol)?;
    let dotted = tensor_kappa(rep, -1);
    let dot_sig = signature(&dotted, settings)?;
    let dot_exp = ExponentData::new(t_eigenphases(&dotted, settings)?, dot_sig.trace_lambda())?;
    let dot_lambda_plus = floor_trace(&dot_exp, Rational64::new(1, 12))?;
    let dot_lambda_minus = -complement_floor_trace(&dot_exp, Rational64::new(11, 12))?;
    Ok(OddInvariants {
        dot_gamma: GammaSequence::from_signature(&dot_sig),
        dot_sig,
        dot_exp,
        dot_lambda_plus,
        dot_lambda_minus,
    })
}

/// Checks γ_{k+7} + γ_k = γ_{k+3} + γ_{k+4} and γ_{k+5} + γ_k = γ_{k+3} + γ_{k+2}
/// for |k| ≤ `kmax`.
pub fn gamma_sequence_check(gamma: &GammaSequence, kmax: i64) -> bool {
    (-kmax..=kmax).all(|k| {
        gamma.at(k + 7) + gamma.at(k) == gamma.at(k + 3) + gamma.at(k + 4)
            && gamma.at(k + 5) + gamma.at(k) == gamma.at(k + 3) + gamma.at(k + 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::{build_kappa_power, build_p1_permutation, build_rho0, direct_sum};
    use alloc::vec;

    fn settings() -> Settings {
        Settings::default()
    }

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn sig(d: i64, a: i64, b1: i64, b2: i64) -> Signature {
        Signature::new(d, a, b1, b2).unwrap()
    }

    #[test]
    fn phases_of_catalog_reps() {
        assert_eq!(t_eigenphases(&build_rho0(), &settings()).unwrap(), vec![r(0, 1)]);
        assert_eq!(t_eigenphases(&build_kappa_power(1), &settings()).unwrap(), vec![r(1, 12)]);
        let p2 = build_p1_permutation(2).unwrap();
        assert_eq!(t_eigenphases(&p2, &settings()).unwrap(), vec![r(0, 1), r(0, 1), r(1, 2)]);
    }

    #[test]
    fn signatures_of_characters() {
        assert_eq!(signature(&build_rho0(), &settings()), Ok(sig(1, 0, 0, 0)));
        assert_eq!(signature(&build_kappa_power(2), &settings()), Ok(sig(1, 1, 1, 0)));
        assert_eq!(signature(&build_kappa_power(4), &settings()), Ok(sig(1, 0, 0, 1)));
        assert_eq!(
            signature(&build_kappa_power(1), &settings()),
            Err(Error::ParityError { expected: Parity::Even })
        );
    }

    #[test]
    fn twist_table_rows() {
        let s = sig(7, 3, 2, 1);
        assert_eq!(signature_of_twist(&s, 0), s);
        assert_eq!(signature_of_twist(&s, 6), s);
        let rho0 = sig(1, 0, 0, 0);
        assert_eq!(signature_of_twist(&rho0, 1), sig(1, 1, 0, 1));
        assert_eq!(signature_of_twist(&rho0, 3), sig(1, 1, 0, 0));
        assert_eq!(signature_of_twist(&rho0, 4), sig(1, 0, 0, 1));
    }

    #[test]
    fn floor_traces() {
        let rho0 = exponent_data(&build_rho0(), &settings()).unwrap();
        assert_eq!(rho0.trace_lambda, r(1, 1));
        assert_eq!(floor_trace(&rho0, r(0, 1)), Ok(1));
        let k2 = exponent_data(&build_kappa_power(2), &settings()).unwrap();
        assert_eq!(k2.trace_lambda, r(1, 6));
        assert_eq!(k2.phases, vec![r(1, 6)]);
        assert_eq!(floor_trace(&k2, r(0, 1)), Ok(0));
    }

    #[test]
    fn floor_and_complement_count_zero_phases() {
        for rep in [build_rho0(), build_kappa_power(6), build_p1_permutation(4).unwrap()] {
            let exp = exponent_data(&rep, &settings()).unwrap();
            let zeros = exp.multiplicity(r(0, 1)) as i64;
            let total = floor_trace(&exp, r(0, 1)).unwrap() + complement_floor_trace(&exp, r(1, 1)).unwrap();
            assert_eq!(total, zeros);
        }
    }

    #[test]
    fn inconsistent_exponent_data() {
        assert_eq!(ExponentData::new(vec![r(1, 3)], r(1, 2)), Err(Error::TraceInconsistency));
    }

    #[test]
    fn trivial_even_invariants() {
        let inv = even_invariants(&build_rho0(), &settings()).unwrap();
        assert_eq!((inv.lambda_plus, inv.lambda_minus, inv.h0), (1, 0, 1));
        let g: Vec<i64> = (0..6).map(|k| inv.gamma(k)).collect();
        assert_eq!(g, vec![0, -1, 0, 0, 0, 0]);
    }

    #[test]
    fn kappa_square_and_fourth_invariants() {
        let k2 = even_invariants(&build_kappa_power(2), &settings()).unwrap();
        assert_eq!((k2.lambda_plus, k2.lambda_minus, k2.h0), (0, 0, 0));
        assert_eq!((0..6).map(|k| k2.gamma(k)).collect::<Vec<_>>(), vec![0, 1, 0, 1, 1, 1]);
        let k4 = even_invariants(&build_kappa_power(4), &settings()).unwrap();
        assert_eq!((k4.lambda_plus, k4.lambda_minus, k4.h0), (0, 0, 0));
        assert_eq!((0..6).map(|k| k4.gamma(k)).collect::<Vec<_>>(), vec![0, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn gamma_periodicity_and_negative_indices() {
        let g = GammaSequence::from_signature(&sig(3, 1, 1, 1));
        assert_eq!(g.at(0), 0);
        for k in -20..20 {
            assert_eq!(g.at(k + 6), g.at(k) + 3);
        }
        assert_eq!(g.at(-1), g.at(5) - 3);
    }

    #[test]
    fn odd_invariants_of_kappa() {
        let k = odd_invariants(&build_kappa_power(1), &settings()).unwrap();
        assert_eq!((k.dot_lambda_plus, k.dot_lambda_minus), (1, 1));
        assert_eq!(k.dot_gamma(1), -1);
        for j in [0, 2, 3, 4, 5] {
            assert_eq!(k.dot_gamma(j), 0);
        }
        let dual = odd_invariants(&build_kappa_power(11), &settings()).unwrap();
        assert_eq!(dual.dot_lambda_plus, -1);
        let k3 = odd_invariants(&build_kappa_power(3), &settings()).unwrap();
        assert_eq!(k3.dot_sig, signature(&build_kappa_power(2), &settings()).unwrap());
        assert!(matches!(
            odd_invariants(&build_rho0(), &settings()),
            Err(Error::ParityError { expected: Parity::Odd })
        ));
    }

    #[test]
    fn odd_lambda_difference_counts_t_invariants() {
        for j in [1, 3, 5, 7, 9, 11] {
            let inv = odd_invariants(&build_kappa_power(j), &settings()).unwrap();
            let fixed = inv.dot_exp.multiplicity(r(11, 12)) as i64;
            assert_eq!(inv.dot_lambda_plus - inv.dot_lambda_minus, fixed);
            let low = inv.lambda_plus_of_dot().unwrap();
            assert!(low <= inv.dot_lambda_minus && inv.dot_lambda_minus <= inv.dot_lambda_plus);
        }
    }

    #[test]
    fn gamma_recurrences() {
        let s = settings();
        for rep in [build_rho0(), build_kappa_power(2), build_p1_permutation(2).unwrap()] {
            let inv = even_invariants(&rep, &s).unwrap();
            assert!(gamma_sequence_check(&inv.gamma, 20));
        }
        let broken = GammaSequence { d: 1, base: [0, 5, 0, 0, 0, 0] };
        assert!(!gamma_sequence_check(&broken, 2));
    }

    #[test]
    fn signature_is_additive() {
        let s = settings();
        let a = build_kappa_power(2);
        let b = build_p1_permutation(3).unwrap();
        let sum = signature(&direct_sum(&a, &b), &s).unwrap();
        assert_eq!(sum, signature(&a, &s).unwrap().sum(&signature(&b, &s).unwrap()));
    }

    #[test]
    fn signature_range_checks() {
        assert!(Signature::new(1, 2, 0, 0).is_err());
        assert!(Signature::new(2, 0, 2, 1).is_err());
        assert!(Signature::new(2, 0, -1, 1).is_err());
    }
}
