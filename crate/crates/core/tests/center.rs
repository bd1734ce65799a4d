mod common;

use std::sync::Arc;

use envelope_core::catalog::{self, lookup, CENTER_EQUALS_PCENTER};
use envelope_core::center::*;
use envelope_core::expr::parse_poly;
use envelope_core::{ClaimStatus, Envelope, Error, FpMatrix, PbwElement, PrimeField};

fn env(name: &str, p: u32, eps: Option<i64>) -> Arc<Envelope> {
    Envelope::new(lookup(name, p, eps).unwrap())
}

fn el(e: &Arc<Envelope>, s: &str) -> PbwElement {
    PbwElement::parse(e, s).unwrap()
}

#[test]
fn pcenter_membership_examples() {
    for p in [3, 5, 7] {
        let e = env("g_4", p, None);
        let fr = PCenterFrame::new(e.algebra()).unwrap();
        assert!(in_p_center(&el(&e, &format!("x1^{p}")), &fr).unwrap());
        assert!(in_p_center(&el(&e, "x4"), &fr).unwrap());
        assert!(!in_p_center(&el(&e, "x3^2 - 2*x2*x4"), &fr).unwrap());
    }
}

#[test]
fn listed_generators() {
    let e = env("g_6_17", 5, None);
    let z = table3_generators(&e).unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(z[0], el(&e, "x5^2 - 2*x4*x6"));

    let e = env("g_6_18", 7, None);
    let z = table3_generators(&e).unwrap();
    let want = [
        "x4^2 + 2*x2*x6 - 2*x3*x5",
        "x5^2 - 2*x4*x6",
        "x5^3 - 3*x4*x5*x6 + 3*x3*x6^2",
    ];
    assert_eq!(z, want.map(|s| el(&e, s)));

    assert!(matches!(
        table3_generators(&env("g_3", 3, None)),
        Err(Error::NotInGeneratorTable(_))
    ));
}

#[test]
fn generator_table_covers_the_complement_of_the_pcenter_list() {
    let mut names: Vec<&str> = GENERATOR_TABLE.iter().map(|r| r.algebra).collect();
    names.extend(CENTER_EQUALS_PCENTER);
    names.sort();
    let mut all = catalog::names();
    all.sort();
    assert_eq!(names, all);
    let open: Vec<&str> = GENERATOR_TABLE
        .iter()
        .filter(|r| !r.integrally_closed_already)
        .map(|r| r.algebra)
        .collect();
    assert_eq!(open, ["g_5_5", "g_6_18", "g_6_25"]);
}

#[test]
fn listed_generators_with_parameter() {
    let e = env("g_6_19", 5, Some(3));
    let z = &table3_generators(&e).unwrap()[0];
    assert_eq!(*z, el(&e, "x5^2 + 3*x4^2 + 6*x1*x6 - 2*x3*x6"));
    assert!(z.is_central().unwrap());
}

#[test]
fn listed_generators_central_outside_and_pth_inside() {
    for alg in common::instances() {
        if generator_record(alg.name()).is_none() {
            continue;
        }
        let e = Envelope::new(alg);
        let fr = PCenterFrame::new(e.algebra()).unwrap();
        for z in table3_generators(&e).unwrap() {
            assert!(z.is_central().unwrap(), "{}: {z}", e.algebra().name());
            assert!(!in_p_center(&z, &fr).unwrap());
            assert!(in_p_center(&z.pth_power().unwrap(), &fr).unwrap());
        }
    }
}

#[test]
fn small_reports() {
    let r = verify_theorem1(&env("g_5_2", 2, None), &VerifyOptions::default()).unwrap();
    assert!(r.all_passed(), "{r}");
    assert_eq!(r.get("th1.central.z1").unwrap().status, ClaimStatus::Pass);

    let r = verify_theorem1(&env("g_5_5", 5, None), &VerifyOptions::default()).unwrap();
    assert!(r.all_passed(), "{r}");
    for id in [
        "th1.central.z1",
        "th1.central.z2",
        "th1.tower.z2",
        "th1.sweep.contains_generated",
    ] {
        assert_eq!(r.get(id).unwrap().status, ClaimStatus::Pass, "{id}");
    }
    assert!(matches!(
        lookup("g_5_5", 3, None),
        Err(Error::CharacteristicTooSmall { .. })
    ));
}

#[test]
fn every_catalog_report_passes() {
    for alg in common::instances() {
        let r = verify_theorem1(&Envelope::new(alg), &VerifyOptions::default()).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

/// Closed-form commutators in U(g_3): with `[x1,x2] = x3` central,
/// `[x1, x1^a x2^b x3^c] = b x1^a x2^(b-1) x3^(c+1)` and
/// `[x2, x1^a x2^b x3^c] = -a x1^(a-1) x2^b x3^(c+1)`.
fn heisenberg_central_dims(p: u32, bound: usize) -> Vec<usize> {
    let f = PrimeField::new(p).unwrap();
    let mut cols = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound - a {
            for c in 0..=bound - a - b {
                cols.push([a, b, c]);
            }
        }
    }
    let pos = |m: [usize; 3]| cols.iter().position(|&c| c == m);
    (0..=bound)
        .map(|d| {
            let sub: Vec<[usize; 3]> = cols
                .iter()
                .copied()
                .filter(|m| m.iter().sum::<usize>() <= d)
                .collect();
            let mut m = FpMatrix::zeros(f, 2 * cols.len(), sub.len());
            for (k, &[a, b, c]) in sub.iter().enumerate() {
                if b > 0 && a + b + c <= bound {
                    let r = pos([a, b - 1, c + 1]).unwrap();
                    m.set(r, k, f.reduce(b as i64));
                }
                if a > 0 {
                    let r = pos([a - 1, b, c + 1]).unwrap();
                    m.set(cols.len() + r, k, f.reduce(-(a as i64)));
                }
            }
            m.kernel_basis().len()
        })
        .collect()
}

#[test]
fn heisenberg_sweep_matches_closed_form() {
    let s = centrality_sweep(&env("g_3", 3, None), 2).unwrap();
    let shown: Vec<String> = s.basis.iter().map(|u| u.to_string()).collect();
    assert_eq!(shown, ["x3^2", "x3", "1"]);
    for (p, bound) in [(2, 4), (3, 2), (3, 5), (5, 6)] {
        let s = centrality_sweep(&env("g_3", p, None), bound).unwrap();
        assert_eq!(s.dims, heisenberg_central_dims(p, bound), "p = {p}");
    }
}

#[test]
fn sweep_finds_the_listed_generator() {
    let e = env("g_4", 3, None);
    let s = centrality_sweep(&e, 2).unwrap();
    let z = el(&e, "x3^2 - 2*x2*x4");
    assert!(span_contains(e.field(), &s.basis, &[z]));
    let fr = PCenterFrame::new(e.algebra()).unwrap();
    assert_eq!(s.outside(&fr).len(), 1);
}

#[test]
fn sweep_contains_pcenter_and_is_deterministic() {
    for name in ["g_5_3", "g_6_13", "g_6_26"] {
        let e = env(name, 5, None);
        let fr = PCenterFrame::new(e.algebra()).unwrap();
        let a = centrality_sweep(&e, 4).unwrap();
        let b = centrality_sweep(&e, 4).unwrap();
        assert_eq!(a.basis, b.basis);
        let pc: Vec<PbwElement> = fr
            .monomials_up_to(4)
            .into_iter()
            .map(|m| {
                PbwElement::embed_commutative(
                    &e,
                    &envelope_core::Poly::from_terms(e.field(), e.dim(), [(m, 1)]),
                    envelope_core::OrderingPolicy::Strict,
                )
                .unwrap()
            })
            .collect();
        assert!(span_contains(e.field(), &a.basis, &pc));
    }
}

#[test]
fn sweep_equals_pcenter_on_the_pcenter_list() {
    for name in CENTER_EQUALS_PCENTER {
        let s = catalog::spec(name).unwrap();
        let p = catalog::default_primes(&s)[0];
        for eps in catalog::default_eps(s.param_kind) {
            let e = env(name, p, eps);
            let fr = PCenterFrame::new(e.algebra()).unwrap();
            let bound = (p as usize).min(4);
            let sweep = centrality_sweep(&e, bound).unwrap();
            assert!(sweep.outside(&fr).is_empty(), "{name}");
            assert_eq!(sweep.dims, fr.dims_up_to(bound), "{name}");
        }
    }
}

#[test]
fn central_pth_powers_land_in_pcenter() {
    let e = env("g_6_25", 5, None);
    let fr = PCenterFrame::new(e.algebra()).unwrap();
    for u in centrality_sweep(&e, 3).unwrap().basis {
        assert!(in_p_center(&u.pth_power().unwrap(), &fr).unwrap(), "{u}");
    }
}

#[test]
fn membership_search() {
    let e = env("g_5_5", 5, None);
    let fr = PCenterFrame::new(e.algebra()).unwrap();
    let z = table3_generators(&e).unwrap();
    let mut gens = fr.generators(&e).unwrap();
    gens.push(z[0].clone());
    assert!(!subalgebra_membership(&z[1], &gens, 6).unwrap());
    assert!(subalgebra_membership(&z[0], &gens, 6).unwrap());
    let sq = z[0].mul(&z[0]).unwrap();
    assert!(subalgebra_membership(&sq, &gens, 4).unwrap());
    assert!(!subalgebra_membership(&sq, &gens, 3).unwrap());
    let x1 = PbwElement::generator(&e, 0).unwrap();
    let x2 = PbwElement::generator(&e, 1).unwrap();
    assert!(matches!(
        subalgebra_membership(&z[0], &[x1, x2], 2),
        Err(Error::NonCommutingInputs)
    ));
}

#[test]
fn published_generator_lists() {
    let f = PrimeField::new(5).unwrap();
    let g = macaulay2_generators(5).unwrap();
    assert_eq!(g.len(), 7);
    let z1 = parse_poly(M2_Z1, f, 5, None).unwrap();
    let z2 = parse_poly(M2_Z2, f, 5, None).unwrap();
    let x4p = parse_poly("x4^5", f, 5, None).unwrap();
    assert_eq!(g[0].numerator, z1.mul(&z2).unwrap().add(&x4p).unwrap());
    assert_eq!(g[0].denominator_exponent, Some(2));
    let fourth = z1.pow(3).unwrap().add(&z2.pow(2).unwrap()).unwrap();
    assert_eq!(g[3].numerator, fourth);
    assert_eq!(g[3].denominator_exponent, Some(2));
    assert_eq!(g[4].denominator_exponent, None);
    assert_eq!(macaulay2_generators(7).unwrap().len(), 13);
    assert!(matches!(
        macaulay2_generators(11),
        Err(Error::UnsupportedPrime(11))
    ));
}

#[test]
fn published_numerators_are_central() {
    for p in [5, 7] {
        let r = verify_macaulay2(p).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.count(ClaimStatus::Pass), if p == 5 { 29 } else { 53 });
    }
}

#[test]
fn quotient_degrees_match_the_sweep_excess() {
    // The first published quotient has degree 3, the degree at which the
    // sweep first exceeds the algebra generated by the p-center and z1, z2.
    let g = macaulay2_generators(5).unwrap();
    let q = g[0]
        .numerator
        .div_exact(&g[0].denominator)
        .unwrap()
        .unwrap();
    assert_eq!(q.degree(), Some(3));
    let e = env("g_5_5", 5, None);
    let fr = PCenterFrame::new(e.algebra()).unwrap();
    let zs = table3_generators(&e).unwrap();
    let gen = generated_span(&e, &fr, &zs, 3).unwrap();
    let gdims = span_dims(e.field(), &gen, 3);
    let sdims = centrality_sweep(&e, 3).unwrap().dims;
    assert_eq!(gdims[..3], sdims[..3]);
    assert_eq!(sdims[3], gdims[3] + 1);
    let qu = PbwElement::embed_commutative(&e, &q, envelope_core::OrderingPolicy::Strict).unwrap();
    let sweep = centrality_sweep(&e, 3).unwrap();
    assert!(span_contains(e.field(), &sweep.basis, &[qu]));
}
