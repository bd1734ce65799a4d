use envelope_core::catalog::{self, default_eps, default_primes, lookup};
use envelope_core::{Error, GVector, LieAlgebra, LieAlgebraSpec};

fn instances() -> Vec<(LieAlgebraSpec, LieAlgebra)> {
    let mut out = Vec::new();
    for spec in catalog::catalog() {
        for p in default_primes(&spec) {
            for eps in default_eps(spec.param_kind) {
                let alg = LieAlgebra::from_spec(spec.clone(), p, eps).unwrap();
                out.push((spec.clone(), alg));
            }
        }
    }
    out
}

#[test]
fn structure_matches_tables() {
    for (spec, alg) in instances() {
        let table = spec.table.as_ref().unwrap();
        let tag = format!("{} p={} eps={:?}", spec.name, alg.p(), alg.eps());
        assert!(alg.check_jacobi(), "{tag}: Jacobi");
        let expected: Vec<GVector> = table.center.iter().map(|&k| alg.basis_vector(k)).collect();
        assert_eq!(alg.center(), expected, "{tag}: center");
        assert_eq!(alg.nilpotency_class(), Some(table.class), "{tag}: class");
        assert_eq!(alg.rank_mg(), table.rank, "{tag}: rank");
    }
}

#[test]
fn multiplication_matrix_is_antisymmetric() {
    for (_, alg) in instances() {
        let m = alg.multiplication_matrix();
        for i in 0..alg.dim() {
            assert!(m.get(i, i).is_zero());
            for j in 0..alg.dim() {
                assert_eq!(*m.get(i, j), m.get(j, i).neg());
            }
        }
    }
}

#[test]
fn displayed_matrix_of_g_6_25() {
    let g = lookup("g_6_25", 3, None).unwrap();
    let m = g.multiplication_matrix();
    let row: Vec<String> = (0..6).map(|j| m.get(0, j).to_string()).collect();
    assert_eq!(row, ["0", "x3", "x5", "x6", "0", "0"]);
    assert_eq!(g.rank_mg(), 2);
}

#[test]
fn g_3_matrix_is_padded_heisenberg_block() {
    let g = lookup("g_3", 3, None).unwrap();
    let m = g.multiplication_matrix();
    let shown: Vec<String> = (0..9).map(|k| m.get(k / 3, k % 3).to_string()).collect();
    assert_eq!(shown, ["0", "x3", "0", "-x3", "0", "0", "0", "0", "0"]);
}

fn corrupted_g_4(extra: &str) -> LieAlgebra {
    let mut spec = catalog::spec("g_4").unwrap();
    spec.brackets
        .extend(catalog::parse_relations(4, extra).unwrap());
    let f = envelope_core::PrimeField::new(5).unwrap();
    LieAlgebra::new_unchecked(spec, f, None).unwrap()
}

fn jacobi_sum(g: &LieAlgebra, a: usize, b: usize, c: usize) -> GVector {
    let x: Vec<GVector> = (0..g.dim()).map(|i| g.basis_vector(i)).collect();
    let t1 = g.bracket(&g.bracket(&x[a], &x[b]).unwrap(), &x[c]).unwrap();
    let t2 = g.bracket(&g.bracket(&x[b], &x[c]).unwrap(), &x[a]).unwrap();
    let t3 = g.bracket(&g.bracket(&x[c], &x[a]).unwrap(), &x[b]).unwrap();
    t1.add(&t2).add(&t3)
}

#[test]
fn corrupted_bracket_breaks_jacobi() {
    // [[x1,x2],x3] + [[x2,x3],x1] + [[x3,x1],x2] = 0 + [x2,x1] + [-x4,x2] = -x3
    let g = corrupted_g_4("[2,3]=2");
    assert_eq!(
        jacobi_sum(&g, 0, 1, 2),
        GVector::from_coords(g.field(), &[0, 0, -1, 0])
    );
    assert!(!g.check_jacobi());
    assert_eq!(g.jacobi_violation(), Some((0, 1, 2)));
}

#[test]
fn adding_x2_x3_to_x1_keeps_jacobi() {
    let g = corrupted_g_4("[2,3]=1");
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        assert!(jacobi_sum(&g, a, b, c).is_zero());
    }
    assert!(g.check_jacobi());
}

#[test]
fn spot_brackets() {
    let g4 = lookup("g_4", 3, None).unwrap();
    assert_eq!(
        g4.bracket(&g4.basis_vector(0), &g4.basis_vector(2))
            .unwrap(),
        g4.basis_vector(3)
    );
    let g = lookup("g_5_1", 2, None).unwrap();
    let (x, y, z) = g.find_abelian_triple().unwrap();
    assert_eq!(
        (x, y, z),
        (g.basis_vector(0), g.basis_vector(2), g.basis_vector(3))
    );
    assert!(lookup("g_3", 2, None)
        .unwrap()
        .find_abelian_triple()
        .is_none());
}

#[test]
fn published_classes_and_ranks() {
    assert_eq!(
        lookup("g_6_18", 5, None).unwrap().nilpotency_class(),
        Some(5)
    );
    assert_eq!(lookup("g_6_18", 5, None).unwrap().rank_mg(), 2);
    assert_eq!(lookup("g_5_1", 2, None).unwrap().rank_mg(), 4);
    assert!(matches!(
        lookup("g_6_18", 3, None),
        Err(Error::CharacteristicTooSmall { .. })
    ));
}

#[test]
fn triple_search_reaches_beyond_basis_sums() {
    // For g_6_24(1) the only triples need a difference such as x1 - x2.
    let g = lookup("g_6_24", 3, Some(1)).unwrap();
    let (x, y, z) = g.find_abelian_triple().unwrap();
    assert!(g.bracket(&x, &y).unwrap().is_zero());
    assert!(g.bracket(&x, &z).unwrap().is_zero());
    assert!(!g.bracket(&y, &z).unwrap().is_zero());
}

#[test]
fn non_split_parameters_have_no_triple_over_the_prime_field() {
    // x^2 + x + 1 is irreducible over F_2 and 2 is not a square mod 3 or 5.
    for (name, p, eps) in [
        ("g_6_7_2", 2, 1),
        ("g_6_22", 3, 2),
        ("g_6_24", 3, 2),
        ("g_6_24", 5, 2),
    ] {
        assert!(
            lookup(name, p, Some(eps))
                .unwrap()
                .find_abelian_triple()
                .is_none(),
            "{name}"
        );
    }
    for (name, p, eps) in [("g_6_7_2", 2, 0), ("g_6_22", 3, 1), ("g_6_24", 5, 4)] {
        assert!(
            lookup(name, p, Some(eps))
                .unwrap()
                .find_abelian_triple()
                .is_some(),
            "{name}"
        );
    }
}
