mod common;

use envelope_core::catalog::{lookup, parse_relations};
use envelope_core::center::{centrality_sweep, generator_polys, generator_record, VerifyOptions};
use envelope_core::expr::parse_poly;
use envelope_core::invariants::*;
use envelope_core::{ClaimStatus, Envelope, LieAlgebra, LieAlgebraSpec, ParamKind, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(alg: &LieAlgebra, s: &str) -> Poly {
    parse_poly(s, alg.field(), alg.dim(), alg.eps()).unwrap()
}

fn custom(name: &str, dim: usize, relations: &str, p: u32) -> LieAlgebra {
    let spec = LieAlgebraSpec {
        name: name.into(),
        dim,
        param_kind: ParamKind::None,
        brackets: parse_relations(dim, relations).unwrap(),
        table: None,
    };
    LieAlgebra::from_spec(spec, p, None).unwrap()
}

#[test]
fn action_examples() {
    let g = lookup("g_4", 5, None).unwrap();
    assert!(apply_action(&g, 0, &poly(&g, "x3^2 - 2*x2*x4"))
        .unwrap()
        .is_zero());
    for i in 0..4 {
        for j in 0..4 {
            let f = Poly::var(g.field(), 4, j).unwrap().pow(5).unwrap();
            assert!(apply_action(&g, i, &f).unwrap().is_zero());
        }
    }
    let h = lookup("g_6_25", 5, None).unwrap();
    assert!(is_invariant(&h, &poly(&h, "x3*x6 - x4*x5")).unwrap());
    assert!(is_invariant(&h, &poly(&h, "4")).unwrap());
    let g3 = lookup("g_3", 5, None).unwrap();
    assert!(!is_invariant(&g3, &poly(&g3, "x1")).unwrap());
}

#[test]
fn heisenberg_degree_one() {
    // a*x1 + b*x2 + c*x3 is invariant iff x1 . f = b*x3 = 0 and x2 . f = -a*x3 = 0.
    let g = lookup("g_3", 3, None).unwrap();
    let b = invariant_basis(&g, 1).unwrap();
    assert_eq!(b.basis, [poly(&g, "1"), poly(&g, "x3")]);
}

#[test]
fn g4_degree_two() {
    let g = lookup("g_4", 5, None).unwrap();
    let b = invariant_basis(&g, 2).unwrap();
    assert_eq!(b.dims, [1, 2, 4]);
    let want = ["1", "x4", "x4^2", "x3^2 - 2*x2*x4"].map(|s| poly(&g, s));
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let monos: Vec<_> = envelope_core::Monomial::all_of_degree(4, 2)
        .into_iter()
        .chain(envelope_core::Monomial::all_of_degree(4, 1))
        .chain(envelope_core::Monomial::all_of_degree(4, 0))
        .collect();
    for f in b.basis.iter().chain(want.iter()) {
        rows.push(f.coefficients_on(&monos));
    }
    let m = envelope_core::FpMatrix::from_rows(
        g.field(),
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect::<Vec<_>>(),
    );
    assert_eq!(m.rank(), 4);
    assert_eq!(b.pp_part.len(), 3);
}

#[test]
fn action_is_a_derivation() {
    let insts = common::instances();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let alg = &insts[rng.random_range(0..insts.len())];
        let f = common::random_poly(&mut rng, alg.field(), alg.dim(), 3, 4);
        let g = common::random_poly(&mut rng, alg.field(), alg.dim(), 3, 4);
        let i = rng.random_range(0..alg.dim());
        let lhs = apply_action(alg, i, &f.mul(&g).unwrap()).unwrap();
        let rhs = apply_action(alg, i, &f)
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&apply_action(alg, i, &g).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "{}", alg.name());
    }
}

#[test]
fn invariants_are_closed_under_products() {
    for alg in common::smallest_prime_instances() {
        let b = invariant_basis(&alg, 2).unwrap();
        for f in &b.basis {
            for g in &b.basis {
                assert!(
                    is_invariant(&alg, &f.mul(g).unwrap()).unwrap(),
                    "{}: ({f})({g})",
                    alg.name()
                );
            }
        }
    }
}

#[test]
fn permuting_an_abelian_factor_keeps_dimensions() {
    let a = custom("h_plus_ab", 5, "[1,2]=3", 5);
    let b = custom("h_plus_ab_perm", 5, "[1,3]=5", 5);
    let c = custom("h_plus_ab_perm2", 5, "[2,4]=1", 5);
    let da = invariant_basis(&a, 3).unwrap().dims;
    assert_eq!(invariant_basis(&b, 3).unwrap().dims, da);
    assert_eq!(invariant_basis(&c, 3).unwrap().dims, da);
}

#[test]
fn filiform_invariants_avoid_x1() {
    for (name, p) in [("g_5_5", 5), ("g_5_5", 7), ("g_6_18", 5)] {
        let alg = lookup(name, p, None).unwrap();
        for f in invariant_basis(&alg, 3).unwrap().basis {
            assert!(f.partial_derivative(0).unwrap().is_zero(), "{name}: {f}");
        }
    }
}

#[test]
fn low_degree_dimensions_agree_with_the_center() {
    for alg in common::smallest_prime_instances() {
        let bound = 3.min(alg.p() as usize - 1);
        let inv = invariant_basis(&alg, bound).unwrap();
        let sweep = centrality_sweep(&Envelope::new(alg.clone()), bound).unwrap();
        assert_eq!(inv.dims, sweep.dims, "{} at p = {}", alg.name(), alg.p());
    }
}

#[test]
fn listed_generators_are_invariant() {
    for alg in common::instances() {
        if generator_record(alg.name()).is_some() {
            for z in generator_polys(&alg).unwrap() {
                assert!(is_invariant(&alg, &z).unwrap(), "{}: {z}", alg.name());
            }
        }
    }
}

#[test]
fn reports() {
    let opts = VerifyOptions::default();
    let r = verify_theorem2(&Envelope::new(lookup("g_6_22", 2, Some(1)).unwrap()), &opts).unwrap();
    assert_eq!(
        r.get("th2.only_central_variables").unwrap().status,
        ClaimStatus::Pass
    );
    assert!(r.all_passed(), "{r}");

    let r = verify_theorem2(&Envelope::new(lookup("g_5_5", 5, None).unwrap()), &opts).unwrap();
    for id in [
        "th2.invariant.z1",
        "th2.invariant.z2",
        "th2.pp.x1",
        "th2.graded_dims.d3",
        "th2.filiform.no_x1",
    ] {
        assert_eq!(r.get(id).unwrap().status, ClaimStatus::Pass, "{id}");
    }

    let ab = LieAlgebra::abelian(4, 3).unwrap();
    let r = verify_theorem2(&Envelope::new(ab), &opts).unwrap();
    assert!(r.all_passed(), "{r}");
    assert_eq!(r.count(ClaimStatus::Fail), 0);
}

#[test]
fn every_catalog_report_passes() {
    for alg in common::instances() {
        let r = verify_theorem2(&Envelope::new(alg), &VerifyOptions::default()).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
