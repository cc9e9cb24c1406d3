#![allow(dead_code)]

use proptest::prelude::*;
use vvmf_core::{
    build_kappa_power, build_p1_permutation, build_rho0, contragredient, direct_sum,
    tensor_kappa, ModularRepresentation, RepAnalysis, Settings,
};

pub fn settings() -> Settings {
    Settings::default()
}

pub fn analyse(rep: &ModularRepresentation) -> RepAnalysis {
    RepAnalysis::new(rep, &settings()).unwrap()
}

pub fn dual(rep: &ModularRepresentation) -> ModularRepresentation {
    let s = settings();
    contragredient(rep, s.tol, s.order_cap).unwrap()
}

/// rho0, kappa^1..11 and p1(2)..p1(7).
pub fn atoms() -> Vec<ModularRepresentation> {
    let mut out = vec![build_rho0()];
    out.extend((1..12).map(build_kappa_power));
    out.extend((2..=7).map(|n| build_p1_permutation(n).unwrap()));
    out
}

/// The atoms plus two direct sums and two twists.
pub fn catalog() -> Vec<ModularRepresentation> {
    let mut out = atoms();
    out.push(direct_sum(&build_rho0(), &build_kappa_power(2)));
    out.push(direct_sum(&build_kappa_power(1), &build_kappa_power(5)));
    out.push(tensor_kappa(&build_p1_permutation(2).unwrap(), 1));
    out.push(tensor_kappa(&build_p1_permutation(3).unwrap(), 4));
    out
}

/// Random small representations: sums of one to three twisted, possibly
/// dualised catalog atoms.
pub fn arb_rep() -> impl Strategy<Value = ModularRepresentation> {
    let piece = (0usize..15, 0i64..12, any::<bool>()).prop_map(|(i, j, flip)| {
        let atoms = atoms();
        let base = tensor_kappa(&atoms[i], j);
        if flip { dual(&base) } else { base }
    });
    prop::collection::vec(piece, 1..=3).prop_map(|pieces| {
        let mut it = pieces.into_iter();
        let first = it.next().unwrap();
        it.fold(first, |acc, p| direct_sum(&acc, &p))
    })
}
