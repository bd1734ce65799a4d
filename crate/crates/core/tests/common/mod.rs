#![allow(dead_code)]

use envelope_core::catalog::{catalog, default_eps, default_primes, lookup};
use envelope_core::{LieAlgebra, Monomial, Poly, PrimeField};
use rand::Rng;

/// Every catalog algebra at each default prime and parameter value.
pub fn instances() -> Vec<LieAlgebra> {
    let mut out = Vec::new();
    for s in catalog() {
        for p in default_primes(&s) {
            for e in default_eps(s.param_kind) {
                out.push(lookup(&s.name, p, e).unwrap());
            }
        }
    }
    out
}

/// Every catalog algebra at its smallest default prime.
pub fn smallest_prime_instances() -> Vec<LieAlgebra> {
    let mut out = Vec::new();
    for s in catalog() {
        let p = default_primes(&s)[0];
        for e in default_eps(s.param_kind) {
            out.push(lookup(&s.name, p, e).unwrap());
        }
    }
    out
}

pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, max_deg: usize) -> Monomial {
    let d = rng.random_range(0..=max_deg);
    let mut e = vec![0u32; nvars];
    for _ in 0..d {
        e[rng.random_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&e).unwrap()
}

pub fn random_poly<R: Rng>(
    rng: &mut R,
    f: PrimeField,
    nvars: usize,
    max_deg: usize,
    terms: usize,
) -> Poly {
    let p = f.modulus();
    Poly::from_terms(
        f,
        nvars,
        (0..terms).map(|_| (random_monomial(rng, nvars, max_deg), rng.random_range(0..p))),
    )
}
