//! Finite-image representations of SL(2,Z) and the constructions on them.
//!
//! A representation is stored through the images of the standard generators
//! S = [[0,-1],[1,0]] and T = [[1,1],[0,1]]. The element ST⁻¹ = [[0,-1],[1,-1]]
//! used for the signature is derived from these.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Relation, Result};
use crate::linalg::{
    identity_residual, inverse, is_identity, mat_mul, mat_pow, pivot_columns, snap_integer,
    unit_root, ComplexMatrix, Tolerance, C64,
};

/// What the caller asserts about irreducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Numerical knobs shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: Tolerance,
    /// Largest order of ρ(T) searched for.
    pub order_cap: usize,
    /// Largest image group enumerated when certifying irreducibility.
    pub closure_cap: usize,
}

impl Settings {
    pub const DEFAULT_ORDER_CAP: usize = 4096;
    pub const DEFAULT_CLOSURE_CAP: usize = 20_000;
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: Tolerance::default(),
            order_cap: Self::DEFAULT_ORDER_CAP,
            closure_cap: Self::DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularRepresentation {
    name: String,
    s: ComplexMatrix,
    t: ComplexMatrix,
    irreducible: Irreducibility,
}

impl ModularRepresentation {
    /// Wraps the generator images. Only shapes are checked here; the group
    /// relations are checked by [`validate`].
    pub fn new(
        name: impl Into<String>,
        s: ComplexMatrix,
        t: ComplexMatrix,
        irreducible: Irreducibility,
    ) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
        }
        if !t.is_square() {
            return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
        }
        if s.rows() != t.rows() {
            return Err(Error::DegreeMismatch { s: s.rows(), t: t.rows() });
        }
        Ok(ModularRepresentation { name: name.into(), s, t, irreducible })
    }

    /// The zero-dimensional representation.
    pub fn empty(name: impl Into<String>) -> Self {
        ModularRepresentation {
            name: name.into(),
            s: ComplexMatrix::zeros(0, 0),
            t: ComplexMatrix::zeros(0, 0),
            irreducible: Irreducibility::Reducible,
        }
    }

    pub fn degree(&self) -> usize {
        self.s.rows()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn s_image(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn t_image(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducible
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_irreducibility(mut self, irreducible: Irreducibility) -> Self {
        self.irreducible = irreducible;
        self
    }

    /// ρ(ST⁻¹), with T⁻¹ = T^{n-1} for the order n of ρ(T).
    pub fn st_inverse_image(&self, t_order: usize) -> Result<ComplexMatrix> {
        let t_inv = mat_pow(&self.t, t_order.saturating_sub(1) as u64)?;
        mat_mul(&self.s, &t_inv)
    }

    /// Which parity the representation has, if it is pure.
    pub fn parity(&self, tol: Tolerance) -> Option<Parity> {
        let s2 = mat_mul(&self.s, &self.s).ok()?;
        if is_identity(&s2, tol) {
            Some(Parity::Even)
        } else if is_identity(&s2.scale(-C64::one()), tol) {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub(crate) fn require_parity(&self, expected: Parity, tol: Tolerance) -> Result<()> {
        if self.degree() == 0 || self.parity(tol) == Some(expected) {
            Ok(())
        } else {
            Err(Error::ParityError { expected })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub relations_ok: bool,
    pub t_order: Option<usize>,
    pub group_size: Option<usize>,
    pub max_residual: f64,
}

/// Checks the SL(2,Z) relations, finds the order of ρ(T) and, when
/// `closure_cap` is given, enumerates the image group.
pub fn validate(
    rep: &ModularRepresentation,
    tol: Tolerance,
    order_cap: usize,
    closure_cap: Option<usize>,
) -> Result<ValidationReport> {
    if order_cap == 0 {
        return Err(Error::InvalidArgument("order cap must be at least 1"));
    }
    let s = &rep.s;
    let t = &rep.t;
    let s2 = mat_mul(s, s)?;
    let s4 = mat_mul(&s2, &s2)?;
    let st = mat_mul(s, t)?;
    let st3 = mat_mul(&mat_mul(&st, &st)?, &st)?;
    let residuals = [
        (Relation::SFourth, identity_residual(&s4)),
        (Relation::Braid, st3.max_abs_diff(&s2)?),
        (Relation::CentralSquare, mat_mul(&s2, t)?.max_abs_diff(&mat_mul(t, &s2)?)?),
    ];
    let mut max_residual: f64 = 0.0;
    for (relation, residual) in residuals {
        if residual > tol.eps() {
            return Err(Error::RelationViolation { relation, residual });
        }
        max_residual = max_residual.max(residual);
    }
    let order = t_order(rep, tol, order_cap)?;
    let group_size = match closure_cap {
        Some(cap) => Some(group_closure(rep, cap)?.len()),
        None => None,
    };
    Ok(ValidationReport { relations_ok: true, t_order: Some(order), group_size, max_residual })
}

/// The least n ≤ `cap` with ρ(T)^n = I.
pub fn t_order(rep: &ModularRepresentation, tol: Tolerance, cap: usize) -> Result<usize> {
    let mut power = rep.t.clone();
    for n in 1..=cap {
        if is_identity(&power, tol) {
            return Ok(n);
        }
        power = mat_mul(&power, &rep.t)?;
    }
    Err(Error::TOrderNotFound { cap })
}

fn closure_key(m: &ComplexMatrix) -> Vec<i64> {
    // six decimal digits
    m.entries()
        .iter()
        .flat_map(|z| [Float::round(z.re * 1e6) as i64, Float::round(z.im * 1e6) as i64])
        .collect()
}

/// All elements of the image group, by breadth-first right multiplication
/// with the generator images.
pub fn group_closure(rep: &ModularRepresentation, cap: usize) -> Result<Vec<ComplexMatrix>> {
    let identity = ComplexMatrix::identity(rep.degree());
    let mut seen = BTreeSet::new();
    seen.insert(closure_key(&identity));
    let mut elements = alloc::vec![identity];
    let mut next = 0;
    while next < elements.len() {
        for generator in [&rep.s, &rep.t] {
            let product = mat_mul(&elements[next], generator)?;
            if seen.insert(closure_key(&product)) {
                if elements.len() == cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                elements.push(product);
            }
        }
        next += 1;
    }
    Ok(elements)
}

/// ⟨χ, χ⟩ = |G|⁻¹ Σ |χ(g)|² over the image group; 1 exactly for irreducibles.
pub fn character_norm(rep: &ModularRepresentation, tol: Tolerance, cap: usize) -> Result<i64> {
    let group = group_closure(rep, cap)?;
    let total: f64 = group.iter().map(|g| g.trace().norm_sqr()).sum();
    snap_integer(total / group.len() as f64, tol.scaled(1e3))
}

/// The decomposition ρ = ρ₊ ⊕ ρ₋ into eigenspaces of ρ(S)² = ρ(-I).
#[derive(Debug, Clone, PartialEq)]
pub struct ParityDecomposition {
    pub even_part: ModularRepresentation,
    pub odd_part: ModularRepresentation,
    /// d × d₊, columns spanning the +1 eigenspace.
    pub even_basis: ComplexMatrix,
    /// d × d₋, columns spanning the −1 eigenspace.
    pub odd_basis: ComplexMatrix,
}

pub fn parity_split(rep: &ModularRepresentation, tol: Tolerance) -> Result<ParityDecomposition> {
    let d = rep.degree();
    let even_name = format!("{}[even]", rep.name);
    let odd_name = format!("{}[odd]", rep.name);
    match rep.parity(tol) {
        Some(Parity::Even) => {
            return Ok(ParityDecomposition {
                even_part: rep.clone(),
                odd_part: ModularRepresentation::empty(odd_name),
                even_basis: ComplexMatrix::identity(d),
                odd_basis: ComplexMatrix::zeros(d, 0),
            })
        }
        Some(Parity::Odd) if d > 0 => {
            return Ok(ParityDecomposition {
                even_part: ModularRepresentation::empty(even_name),
                odd_part: rep.clone(),
                even_basis: ComplexMatrix::zeros(d, 0),
                odd_basis: ComplexMatrix::identity(d),
            })
        }
        _ => {}
    }

    let s2 = mat_mul(&rep.s, &rep.s)?;
    let id = ComplexMatrix::identity(d);
    let half = C64::new(0.5, 0.0);
    let plus = id.add_scaled(&s2, C64::one())?.scale(half);
    let minus = id.add_scaled(&s2, -C64::one())?.scale(half);
    let even_basis = plus.select_columns(&pivot_columns(&plus, tol));
    let odd_basis = minus.select_columns(&pivot_columns(&minus, tol));
    let (de, dodd) = (even_basis.cols(), odd_basis.cols());
    if de + dodd != d {
        return Err(Error::ProjectorDefect { even: de, odd: dodd, degree: d });
    }

    let change = ComplexMatrix::from_fn(d, d, |i, j| {
        if j < de {
            even_basis[(i, j)]
        } else {
            odd_basis[(i, j - de)]
        }
    });
    let change_inv = inverse(&change, tol).map_err(|_| Error::ProjectorDefect {
        even: de,
        odd: dodd,
        degree: d,
    })?;
    let restrict = |m: &ComplexMatrix| -> Result<ComplexMatrix> {
        mat_mul(&mat_mul(&change_inv, m)?, &change)
    };
    let s_new = restrict(&rep.s)?;
    let t_new = restrict(&rep.t)?;

    // Every constituent of a pure part keeps an irreducibility assertion only
    // when the whole representation is known irreducible.
    let part_irr = match rep.irreducible {
        Irreducibility::Irreducible => Irreducibility::Irreducible,
        _ => Irreducibility::Unknown,
    };
    let even_part = ModularRepresentation::new(
        even_name,
        s_new.block(0, de, 0, de),
        t_new.block(0, de, 0, de),
        part_irr,
    )?;
    let odd_part = ModularRepresentation::new(
        odd_name,
        s_new.block(de, d, de, d),
        t_new.block(de, d, de, d),
        part_irr,
    )?;
    Ok(ParityDecomposition { even_part, odd_part, even_basis, odd_basis })
}

pub fn direct_sum(a: &ModularRepresentation, b: &ModularRepresentation) -> ModularRepresentation {
    let irreducible = match (a.degree(), b.degree()) {
        (0, _) => b.irreducible,
        (_, 0) => a.irreducible,
        _ => Irreducibility::Reducible,
    };
    ModularRepresentation {
        name: format!("{}+{}", a.name, b.name),
        s: ComplexMatrix::block_diag(&a.s, &b.s),
        t: ComplexMatrix::block_diag(&a.t, &b.t),
        irreducible,
    }
}

/// κ^j(S) = (−i)^j = e^{2πi(−3j)/12}
fn kappa_s(j: i64) -> C64 {
    unit_root(-3 * j, 12)
}

/// κ^j(T) = e^{2πij/12}
fn kappa_t(j: i64) -> C64 {
    unit_root(j, 12)
}

/// ρ ⊗ κ^j; `j` is taken mod 12.
pub fn tensor_kappa(rep: &ModularRepresentation, j: i64) -> ModularRepresentation {
    let j = j.rem_euclid(12);
    if j == 0 {
        return rep.clone();
    }
    ModularRepresentation {
        name: if rep.name.contains('+') {
            format!("({})*k^{}", rep.name, j)
        } else {
            format!("{}*k^{}", rep.name, j)
        },
        s: rep.s.scale(kappa_s(j)),
        t: rep.t.scale(kappa_t(j)),
        irreducible: rep.irreducible,
    }
}

/// ρ∨(γ) = ρ(γ⁻¹)ᵗ, using S⁻¹ = S³ and T⁻¹ = T^{n−1}.
pub fn contragredient(
    rep: &ModularRepresentation,
    tol: Tolerance,
    order_cap: usize,
) -> Result<ModularRepresentation> {
    let n = t_order(rep, tol, order_cap)?;
    let s_inv = mat_pow(&rep.s, 3)?;
    let t_inv = mat_pow(&rep.t, (n - 1) as u64)?;
    Ok(ModularRepresentation {
        name: dual_name(&rep.name),
        s: s_inv.transpose(),
        t: t_inv.transpose(),
        irreducible: rep.irreducible,
    })
}

/// `~name`, parenthesised for composite names; applying it twice gives back `name`.
fn dual_name(name: &str) -> String {
    let atomic = |n: &str| !n.contains(['+', '*', '~']);
    let balanced = |n: &str| {
        let mut depth = 0i32;
        n.chars().all(|c| {
            depth += match c {
                '(' => 1,
                ')' => -1,
                _ => 0,
            };
            depth >= 0
        }) && depth == 0
    };
    if let Some(inner) = name.strip_prefix("~(").and_then(|r| r.strip_suffix(')')) {
        if balanced(inner) {
            return String::from(inner);
        }
    }
    match name.strip_prefix('~') {
        Some(inner) if atomic(inner) => String::from(inner),
        _ if atomic(name) => format!("~{}", name),
        _ => format!("~({})", name),
    }
}

pub fn build_rho0() -> ModularRepresentation {
    ModularRepresentation {
        name: String::from("rho0"),
        s: ComplexMatrix::identity(1),
        t: ComplexMatrix::identity(1),
        irreducible: Irreducibility::Irreducible,
    }
}

/// The linear character κ^j, with κ(S) = −i and κ(T) = e^{2πi/12}.
pub fn build_kappa_power(j: i64) -> ModularRepresentation {
    let j = j.rem_euclid(12);
    if j == 0 {
        return build_rho0();
    }
    ModularRepresentation {
        name: format!("kappa^{}", j),
        s: ComplexMatrix::scalar(kappa_s(j)),
        t: ComplexMatrix::scalar(kappa_t(j)),
        irreducible: Irreducibility::Irreducible,
    }
}

/// Canonical representatives of P¹(Z/NZ), sorted lexicographically.
///
/// Each point is the lexicographically smallest pair (uc mod N, ud mod N)
/// over units u.
pub fn p1_points(n: u32) -> Vec<(u32, u32)> {
    let units: Vec<u32> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
    let mut points = BTreeSet::new();
    for c in 0..n {
        for d in 0..n {
            if c.gcd(&d).gcd(&n) == 1 {
                points.insert(p1_canonical(c, d, n, &units));
            }
        }
    }
    points.into_iter().collect()
}

fn p1_canonical(c: u32, d: u32, n: u32, units: &[u32]) -> (u32, u32) {
    units
        .iter()
        .map(|&u| ((u * c) % n, (u * d) % n))
        .min()
        .unwrap_or((c % n, d % n))
}

/// The permutation representation on P¹(Z/NZ), for the right action
/// (c:d)·S = (d:−c), (c:d)·T = (c:c+d). Row p of ρ(g) has its 1 in column p·g.
pub fn build_p1_permutation(n: u32) -> Result<ModularRepresentation> {
    if !(2..=30).contains(&n) {
        return Err(Error::InvalidArgument("P1(Z/NZ) requires 2 <= N <= 30"));
    }
    let units: Vec<u32> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
    let points = p1_points(n);
    let index = |p: (u32, u32)| points.binary_search(&p).expect("canonical point");
    let image = |act: &dyn Fn(u32, u32) -> (u32, u32)| {
        let targets: Vec<usize> = points
            .iter()
            .map(|&(c, d)| {
                let (c2, d2) = act(c, d);
                index(p1_canonical(c2, d2, n, &units))
            })
            .collect();
        ComplexMatrix::from_fn(points.len(), points.len(), |i, j| {
            if targets[i] == j {
                C64::one()
            } else {
                C64::zero()
            }
        })
    };
    let s = image(&|c, d| (d, (n - c) % n));
    let t = image(&|c, d| (c, (c + d) % n));
    Ok(ModularRepresentation {
        name: format!("p1({})", n),
        s,
        t,
        irreducible: Irreducibility::Reducible,
    })
}
