//! Dimensions of spaces of vector-valued modular forms of integer weight.
//!
//! Given a finite-image representation ρ of SL(2,Z), specified by the images
//! of the generators S = [[0,-1],[1,0]] and T = [[1,1],[0,1]], this crate
//! computes
//!
//! * the numerical invariants of ρ: the eigenphases of ρ(T), the signature
//!   (α, β₁, β₂), the trace of the exponent matrix, λ± and the γ sequence
//!   (with their odd-parity analogues),
//! * dim M_w(ρ) and dim S_w(ρ) for every integer weight w,
//! * the weight distribution of free generators of the graded modules of
//!   holomorphic and cusp forms over C[E₄, E₆] (the Hilbert–Poincaré
//!   numerators),
//! * the holomorphic/cusp duality identities between ρ and its contragredient.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line front end live in the `vvmf` crate.
//!
//! ```
//! use vvmf_core::{build_rho0, RepAnalysis, Settings};
//!
//! let rho0 = build_rho0();
//! let analysis = RepAnalysis::new(&rho0, &Settings::default()).unwrap();
//! assert_eq!(analysis.dim_holomorphic(12).unwrap().value, 2);
//! assert_eq!(analysis.dim_cusp(12).unwrap().value, 1);
//! ```

#![no_std]

extern crate alloc;

mod error;
pub mod linalg;
pub mod modrep;
pub mod invariants;
pub mod dimensions;
pub mod series;

pub use error::{Error, Relation, Result};
pub use linalg::{
    is_identity, mat_mul, mat_pow, rank, snap_integer, unit_root, ComplexMatrix, Tolerance, C64,
};
pub use modrep::{
    build_kappa_power, build_p1_permutation, build_rho0, character_norm, contragredient,
    direct_sum, group_closure, p1_points, parity_split, t_order, tensor_kappa, validate,
    Irreducibility, ModularRepresentation, Parity, ParityDecomposition, Settings,
    ValidationReport,
};
pub use invariants::{
    complement_floor_trace, even_invariants, exponent_data, floor_trace, gamma_sequence_check,
    odd_invariants, signature, signature_of_twist, t_eigenphases, EvenInvariants, ExponentData,
    GammaSequence, OddInvariants, Signature,
};
pub use dimensions::{
    dim_cusp, dim_holomorphic, dim_table, dim_via_exponent_shift, DimResult, DimRow, DimStatus,
    RepAnalysis, Rule,
};
pub use series::{
    duality_report, generator_profile, hilbert_series, CheckOutcome, DualityReport, FormKind,
    GeneratorProfile, HilbertSeries, IdentityCheck,
};
