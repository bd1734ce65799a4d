use std::fmt::Write as _;
use std::sync::Arc;

use envelope_core::catalog::{self, parse_algebra_text};
use envelope_core::center::{generator_polys, generator_record, verify_macaulay2, verify_theorem1};
use envelope_core::field::prime_at_least;
use envelope_core::invariants::{in_pp_monomial, invariant_basis, verify_theorem2};
use envelope_core::{
    ClaimStatus, Envelope, Error, LieAlgebra, ParamKind, Poly, VerificationReport, VerifyOptions,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cli::{Format, Target};

/// What a command produced: the rendered output and whether every
/// non-skipped claim passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

pub type CmdResult = Result<Outcome, String>;

fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogRow {
    pub name: String,
    pub dim: usize,
    pub parameter: ParamKind,
    pub relations: String,
    pub center: Vec<String>,
    pub class: usize,
    pub rank: usize,
}

pub fn list(dim: Option<usize>, format: Format) -> CmdResult {
    let rows: Vec<CatalogRow> = catalog::catalog()
        .into_iter()
        .filter(|s| dim.is_none_or(|d| s.dim == d))
        .map(|s| {
            let t = s.table.clone().expect("catalog rows carry table data");
            CatalogRow {
                relations: s.relations_string(),
                center: t.center.iter().map(|i| format!("x{}", i + 1)).collect(),
                class: t.class,
                rank: t.rank,
                name: s.name,
                dim: s.dim,
                parameter: s.param_kind,
            }
        })
        .collect();
    let text = match format {
        Format::Json => json(&rows)?,
        Format::Text => {
            let mut out = format!(
                "{:<8} {:>3}  {:<8} {:>5} {:>4}  {:<9} {}\n",
                "name", "dim", "C(g)", "cl(g)", "r(g)", "eps", "relations"
            );
            for r in &rows {
                let eps = match r.parameter {
                    ParamKind::None => "-",
                    ParamKind::EpsAny => "any",
                    ParamKind::EpsNonzero => "nonzero",
                    ParamKind::EpsChar2 => "p = 2",
                };
                writeln!(
                    out,
                    "{:<8} {:>3}  {:<8} {:>5} {:>4}  {:<9} {}",
                    r.name,
                    r.dim,
                    r.center.join(","),
                    r.class,
                    r.rank,
                    eps,
                    r.relations
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Outcome { text, passed: true })
}

fn from_file(target: &Target) -> Result<LieAlgebra, String> {
    let path = target.which.algebra_file.as_ref().expect("target group");
    if target.eps.is_some() {
        return Err("--eps applies only to catalog families".into());
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path
        .file_stem()
        .map_or_else(|| "custom".into(), |s| s.to_string_lossy().into_owned());
    let spec = parse_algebra_text(&name, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    let alg = match target.p {
        Some(p) => LieAlgebra::from_spec(spec, p, None),
        None => {
            let mut p = 2;
            loop {
                match LieAlgebra::from_spec(spec.clone(), p, None) {
                    Err(Error::CharacteristicTooSmall { class, .. }) => {
                        p = prime_at_least(class as u32)
                    }
                    other => break other,
                }
            }
        }
    }
    .map_err(|e| e.to_string())?;
    if let Some((i, j, k)) = alg.jacobi_violation() {
        return Err(format!(
            "{}: the Jacobi identity fails for x{}, x{}, x{}",
            path.display(),
            i + 1,
            j + 1,
            k + 1
        ));
    }
    Ok(alg)
}

/// The algebra named by a target, with defaults for `p` and `eps` filled in.
pub fn resolve(target: &Target) -> Result<LieAlgebra, String> {
    let Some(name) = &target.which.name else {
        return from_file(target);
    };
    let spec = catalog::spec(name).map_err(|e| e.to_string())?;
    let p = match target.p {
        Some(p) => p,
        None => catalog::default_primes(&spec)[0],
    };
    let eps = match target.eps {
        None if spec.param_kind.takes_eps() => Some(1),
        e => e,
    };
    LieAlgebra::from_spec(spec, p, eps).map_err(|e| e.to_string())
}

fn envelope(alg: LieAlgebra, degree_cap: usize) -> Arc<Envelope> {
    Envelope::with_degree_cap(alg, degree_cap)
}

fn full_report(env: &Arc<Envelope>, opts: &VerifyOptions) -> Result<VerificationReport, Error> {
    let mut r = verify_theorem1(env, opts)?;
    r.merge(verify_theorem2(env, opts)?);
    Ok(r)
}

fn render_report(r: &VerificationReport, format: Format) -> CmdResult {
    let text = match format {
        Format::Json => json(r)?,
        Format::Text => format!("{r}\n"),
    };
    Ok(Outcome {
        text,
        passed: r.all_passed(),
    })
}

pub fn verify(
    target: &Target,
    opts: &VerifyOptions,
    degree_cap: usize,
    format: Format,
) -> CmdResult {
    let env = envelope(resolve(target)?, degree_cap);
    let r = full_report(&env, opts).map_err(|e| e.to_string())?;
    render_report(&r, format)
}

struct Job {
    name: &'static str,
    p: u32,
    eps: Option<i64>,
}

enum JobResult {
    Report(VerificationReport),
    NotApplicable(String),
    Error(String),
}

pub fn verify_all(
    only_table3: bool,
    p: Option<u32>,
    opts: &VerifyOptions,
    degree_cap: usize,
    format: Format,
) -> CmdResult {
    if let Some(p) = p {
        envelope_core::PrimeField::new(p).map_err(|e| e.to_string())?;
    }
    let mut jobs = Vec::new();
    for name in catalog::names() {
        if only_table3 && generator_record(name).is_none() {
            continue;
        }
        let spec = catalog::spec(name).map_err(|e| e.to_string())?;
        let primes = match p {
            Some(p) => vec![p],
            None => catalog::default_primes(&spec),
        };
        for &p in &primes {
            // Parameter values are taken mod p; drop repeats and zeros the
            // family does not allow.
            let mut seen = Vec::new();
            for eps in catalog::default_eps(spec.param_kind) {
                let r = eps.map(|e| e.rem_euclid(p as i64));
                if seen.contains(&r) || (spec.param_kind == ParamKind::EpsNonzero && r == Some(0)) {
                    continue;
                }
                seen.push(r);
                jobs.push(Job { name, p, eps });
            }
        }
    }
    let results: Vec<(Job, JobResult)> = jobs
        .into_par_iter()
        .map(|job| {
            let res = match catalog::lookup(job.name, job.p, job.eps) {
                Err(e @ (Error::CharacteristicTooSmall { .. } | Error::Char2Only(_))) => {
                    JobResult::NotApplicable(e.to_string())
                }
                Err(e) => JobResult::Error(e.to_string()),
                Ok(alg) => match full_report(&envelope(alg, degree_cap), opts) {
                    Ok(r) => JobResult::Report(r),
                    Err(e) => JobResult::Error(e.to_string()),
                },
            };
            (job, res)
        })
        .collect();

    let errors: Vec<String> = results
        .iter()
        .filter_map(|(j, r)| match r {
            JobResult::Error(e) => Some(format!("{} at p = {}: {e}", j.name, j.p)),
            _ => None,
        })
        .collect();
    if !errors.is_empty() {
        return Err(errors.join("\n"));
    }
    let reports: Vec<&VerificationReport> = results
        .iter()
        .filter_map(|(_, r)| match r {
            JobResult::Report(r) => Some(r),
            _ => None,
        })
        .collect();
    let passed = reports.iter().all(|r| r.all_passed());
    let text = match format {
        Format::Json => json(&reports)?,
        Format::Text => {
            let mut out = format!(
                "{:<8} {:>2} {:>3}  {:>4} {:>4} {:>4}\n",
                "algebra", "p", "eps", "pass", "fail", "skip"
            );
            for (job, res) in &results {
                match res {
                    JobResult::Report(r) => writeln!(
                        out,
                        "{:<8} {:>2} {:>3}  {:>4} {:>4} {:>4}",
                        r.algebra,
                        r.p,
                        r.eps.map_or("-".into(), |e| e.to_string()),
                        r.count(ClaimStatus::Pass),
                        r.count(ClaimStatus::Fail),
                        r.count(ClaimStatus::Skipped),
                    ),
                    JobResult::NotApplicable(why) => {
                        writeln!(out, "{:<8} {:>2}  not applicable: {why}", job.name, job.p)
                    }
                    JobResult::Error(_) => unreachable!(),
                }
                .unwrap();
            }
            for r in reports.iter().filter(|r| !r.all_passed()) {
                for c in r.failures() {
                    writeln!(
                        out,
                        "FAIL {} {}: {}",
                        r.header(),
                        c.id,
                        c.witness.as_deref().unwrap_or("")
                    )
                    .unwrap();
                }
            }
            let failures: usize = reports.iter().map(|r| r.count(ClaimStatus::Fail)).sum();
            writeln!(out, "{} reports, {} failed claims", reports.len(), failures).unwrap();
            out
        }
    };
    Ok(Outcome { text, passed })
}

pub fn macaulay2(p: u32, format: Format) -> CmdResult {
    let r = verify_macaulay2(p).map_err(|e| e.to_string())?;
    render_report(&r, format)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantElement {
    pub degree: usize,
    pub poly: String,
    /// Every monomial is a product of `x_i^p` and central variables.
    pub in_pp: bool,
    /// Listed center generators proportional to this element.
    pub matches: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ListedGenerator {
    pub id: String,
    pub poly: String,
    pub degree: usize,
    /// Whether the generator lies in the computed span; absent above the
    /// degree bound.
    pub in_span: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantListing {
    pub schema_version: u32,
    pub algebra: String,
    pub p: u32,
    pub eps: Option<u32>,
    pub degree_bound: usize,
    /// Cumulative dimensions by degree.
    pub dims: Vec<usize>,
    pub basis: Vec<InvariantElement>,
    pub generators: Vec<ListedGenerator>,
}

fn monic(f: &Poly) -> Poly {
    match f.leading_term() {
        Some((_, c)) => f.scale(f.field().inv(c).expect("nonzero leading coefficient")),
        None => f.clone(),
    }
}

/// Whether `z` is a combination of `rows`, whose leading monomials are
/// distinct.
fn in_span(z: &Poly, rows: &[&Poly]) -> bool {
    let mut rows: Vec<Poly> = rows.iter().map(|r| monic(r)).collect();
    rows.sort_by(|a, b| {
        b.leading_term()
            .map(|t| t.0)
            .cmp(&a.leading_term().map(|t| t.0))
    });
    let mut z = z.clone();
    for r in &rows {
        let (m, _) = r.leading_term().expect("nonzero row");
        let c = z.coeff(&m);
        if c != 0 {
            z = z.sub(&r.scale(c)).expect("same ring");
        }
    }
    z.is_zero()
}

pub fn invariants(target: &Target, degree: usize, format: Format) -> CmdResult {
    let alg = resolve(target)?;
    let inv = invariant_basis(&alg, degree).map_err(|e| e.to_string())?;
    let listed: Vec<Poly> = if alg.spec().table.is_some() && generator_record(alg.name()).is_some()
    {
        match generator_polys(&alg) {
            Ok(v) => v,
            Err(Error::GeneratorVanishes { .. }) => Vec::new(),
            Err(e) => return Err(e.to_string()),
        }
    } else {
        Vec::new()
    };
    let listed_monic: Vec<Poly> = listed.iter().map(monic).collect();
    let basis: Vec<InvariantElement> = inv
        .basis
        .iter()
        .map(|f| {
            let m = monic(f);
            InvariantElement {
                degree: f.degree().unwrap_or(0),
                poly: f.to_string(),
                in_pp: f.terms().all(|(mono, _)| in_pp_monomial(&alg, mono)),
                matches: listed_monic
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| **z == m)
                    .map(|(k, _)| format!("z{}", k + 1))
                    .collect(),
            }
        })
        .collect();
    let generators = listed
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let d = z.degree().unwrap_or(0);
            let block: Vec<&Poly> = inv.basis.iter().filter(|f| f.degree() == Some(d)).collect();
            ListedGenerator {
                id: format!("z{}", k + 1),
                poly: z.to_string(),
                degree: d,
                in_span: (d <= degree).then(|| in_span(z, &block)),
            }
        })
        .collect();
    let listing = InvariantListing {
        schema_version: envelope_core::report::SCHEMA_VERSION,
        algebra: alg.name().into(),
        p: alg.p(),
        eps: alg.eps(),
        degree_bound: degree,
        dims: inv.dims.clone(),
        basis,
        generators,
    };
    let passed = listing.generators.iter().all(|g| g.in_span != Some(false));
    let text = match format {
        Format::Json => json(&listing)?,
        Format::Text => render_invariants(&listing),
    };
    Ok(Outcome { text, passed })
}

fn render_invariants(l: &InvariantListing) -> String {
    let mut out = match l.eps {
        Some(e) => format!("{} (p = {}, eps = {})", l.algebra, l.p, e),
        None => format!("{} (p = {})", l.algebra, l.p),
    };
    writeln!(out, ": invariants of S(g) up to degree {}", l.degree_bound).unwrap();
    let dims: Vec<String> = l.dims.iter().map(|d| d.to_string()).collect();
    writeln!(out, "dimensions by degree bound: {}", dims.join(" ")).unwrap();
    for e in &l.basis {
        let mut flags = Vec::new();
        if e.in_pp {
            flags.push("P_p".to_string());
        }
        flags.extend(e.matches.iter().map(|z| format!("listed {z}")));
        let flags = if flags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", flags.join(", "))
        };
        writeln!(out, "  deg {}: {}{}", e.degree, e.poly, flags).unwrap();
    }
    if !l.generators.is_empty() {
        writeln!(out, "listed center generators:").unwrap();
        for g in &l.generators {
            let status = match g.in_span {
                Some(true) => "in the span",
                Some(false) => "NOT in the span",
                None => "above the degree bound",
            };
            writeln!(out, "  {} = {}: {}", g.id, g.poly, status).unwrap();
        }
    }
    out
}
