//! The nilpotent Lie algebras of dimension at most six.
//!
//! Relations use the compact form `[i,j]=terms`, where a term is an optional
//! signed integer, an optional `eps*`, and a 1-based basis index, e.g.
//! `[2,4]=eps*6` or `[3,4]=5+6`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{next_prime, prime_at_least};
use crate::lie::{BracketSpec, LieAlgebra, LieAlgebraSpec, ParamKind, StructureTerm, TableData};

struct Row {
    name: &'static str,
    dim: usize,
    kind: ParamKind,
    relations: &'static str,
    center: &'static [usize],
    class: usize,
    rank: usize,
}

const fn row(
    name: &'static str,
    dim: usize,
    kind: ParamKind,
    relations: &'static str,
    center: &'static [usize],
    class: usize,
    rank: usize,
) -> Row {
    Row {
        name,
        dim,
        kind,
        relations,
        center,
        class,
        rank,
    }
}

use ParamKind::{EpsAny, EpsChar2, EpsNonzero, None as Plain};

#[rustfmt::skip]
const ROWS: &[Row] = &[
    row("g_3", 3, Plain, "[1,2]=3", &[3], 2, 2),
    row("g_4", 4, Plain, "[1,2]=3 [1,3]=4", &[4], 3, 2),
    row("g_5_1", 5, Plain, "[1,2]=5 [3,4]=5", &[5], 2, 4),
    row("g_5_2", 5, Plain, "[1,2]=4 [1,3]=5", &[4, 5], 2, 2),
    row("g_5_3", 5, Plain, "[1,2]=4 [1,4]=5 [2,3]=5", &[5], 3, 4),
    row("g_5_4", 5, Plain, "[1,2]=3 [1,3]=4 [2,3]=5", &[4, 5], 3, 2),
    row("g_5_5", 5, Plain, "[1,2]=3 [1,3]=4 [1,4]=5", &[5], 4, 2),
    row("g_5_6", 5, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [2,3]=5", &[5], 4, 4),
    row("g_6_7_2", 6, EpsChar2, "[1,2]=5 [1,3]=6 [2,4]=eps*6 [3,4]=5+6", &[5, 6], 2, 4),
    row("g_6_10", 6, Plain, "[1,2]=3 [1,3]=6 [4,5]=6", &[6], 3, 4),
    row("g_6_11", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=6 [2,3]=6 [2,5]=6", &[6], 4, 4),
    row("g_6_12", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=6 [2,5]=6", &[6], 4, 4),
    row("g_6_13", 6, Plain, "[1,2]=3 [1,3]=5 [1,5]=6 [2,4]=5 [3,4]=6", &[6], 4, 4),
    row("g_6_14", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [2,3]=5 [2,5]=6 [3,4]=-6", &[6], 5, 4),
    row("g_6_15", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [1,5]=6 [2,3]=5 [2,4]=6", &[6], 5, 4),
    row("g_6_16", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [2,5]=6 [3,4]=-6", &[6], 5, 4),
    row("g_6_17", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [1,5]=6 [2,3]=6", &[6], 5, 4),
    row("g_6_18", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [1,5]=6", &[6], 5, 2),
    row("g_6_19", 6, EpsNonzero, "[1,2]=4 [1,3]=5 [1,5]=6 [2,4]=6 [3,5]=eps*6", &[6], 3, 4),
    row("g_6_20", 6, Plain, "[1,2]=4 [1,3]=5 [1,5]=6 [2,4]=6", &[6], 3, 4),
    row("g_6_21", 6, EpsNonzero, "[1,2]=3 [1,3]=4 [1,4]=6 [2,3]=5 [2,5]=eps*6", &[6], 4, 4),
    row("g_6_22", 6, EpsAny, "[1,2]=5 [1,3]=6 [2,4]=eps*6 [3,4]=5", &[5, 6], 2, 4),
    row("g_6_23", 6, Plain, "[1,2]=3 [1,3]=5 [1,4]=6 [2,4]=5", &[5, 6], 3, 4),
    row("g_6_24", 6, EpsAny, "[1,2]=3 [1,3]=5 [1,4]=eps*6 [2,3]=6 [2,4]=5", &[5, 6], 3, 4),
    row("g_6_25", 6, Plain, "[1,2]=3 [1,3]=5 [1,4]=6", &[5, 6], 3, 2),
    row("g_6_26", 6, Plain, "[1,2]=4 [1,3]=5 [2,3]=6", &[4, 5, 6], 2, 2),
    row("g_6_27", 6, Plain, "[1,2]=3 [1,3]=5 [2,4]=6", &[5, 6], 3, 4),
    row("g_6_28", 6, Plain, "[1,2]=3 [1,3]=4 [1,4]=5 [2,3]=6", &[5, 6], 4, 4),
];

/// Algebras whose center is generated by the p-center alone.
pub const CENTER_EQUALS_PCENTER: &[&str] = &[
    "g_3", "g_5_1", "g_5_3", "g_5_6", "g_6_7_2", "g_6_22", "g_6_23", "g_6_24", "g_6_27", "g_6_28",
];

/// Algebras for which a triple `x, y, z` with `x` non-central,
/// `[x,y] = [x,z] = 0` and `[y,z] != 0` is needed.
pub const ABELIAN_TRIPLE_TARGETS: &[&str] = &[
    "g_5_1", "g_5_3", "g_5_6", "g_6_7_2", "g_6_22", "g_6_23", "g_6_24", "g_6_27", "g_6_28",
    "g_6_10", "g_6_11", "g_6_12", "g_6_13", "g_6_14", "g_6_15", "g_6_16", "g_6_17", "g_6_19",
    "g_6_20", "g_6_21",
];

/// Parse relations in the compact catalog form.
pub fn parse_relations(dim: usize, text: &str) -> Result<Vec<BracketSpec>> {
    let bad = |s: &str| Error::InvalidSpec(format!("bad relation `{s}`"));
    let mut out = Vec::new();
    for rel in text.split_whitespace() {
        let (lhs, rhs) = rel.split_once('=').ok_or_else(|| bad(rel))?;
        let inner = lhs
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad(rel))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| bad(rel))?;
        let i: usize = a.trim().parse().map_err(|_| bad(rel))?;
        let j: usize = b.trim().parse().map_err(|_| bad(rel))?;
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(bad(rel));
        }
        let mut terms = Vec::new();
        let mut rest = rhs;
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let factors: Vec<&str> = body[..end].split('*').collect();
            rest = &body[end..];
            let (index, scalars) = factors.split_last().ok_or_else(|| bad(rel))?;
            let mut coeff = sign;
            let mut eps = false;
            for s in scalars {
                if *s == "eps" && !eps {
                    eps = true;
                } else {
                    coeff *= s.parse::<i64>().map_err(|_| bad(rel))?;
                }
            }
            let k: usize = index.parse().map_err(|_| bad(rel))?;
            if k == 0 || k > dim {
                return Err(bad(rel));
            }
            terms.push(StructureTerm {
                target: k - 1,
                coeff,
                eps,
            });
        }
        out.push(BracketSpec {
            i: i - 1,
            j: j - 1,
            terms,
        });
    }
    Ok(out)
}

/// Parse a user-supplied algebra: a line `dim n`, then lines
/// `i j -> k1:c1 k2:c2 ...` with 1-based indices and integer coefficients
/// (`k` alone means coefficient 1). `#` starts a comment. A pair given as
/// `j i` with `j > i` is stored as `[x_i, x_j]` with negated coefficients.
pub fn parse_algebra_text(name: &str, text: &str) -> Result<LieAlgebraSpec> {
    let bad = |line: usize, msg: &str| Error::InvalidSpec(format!("line {line}: {msg}"));
    let mut dim = None;
    let mut brackets = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some(dim) = dim else {
            let d = body
                .strip_prefix("dim")
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| bad(line, "expected `dim n` first"))?;
            dim = Some(d);
            continue;
        };
        let (lhs, rhs) = body
            .split_once("->")
            .ok_or_else(|| bad(line, "expected `i j -> k:c ...`"))?;
        let idx = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(k) if k >= 1 && k <= dim => Ok(k - 1),
                _ => Err(bad(line, &format!("index `{s}` not in 1..={dim}"))),
            }
        };
        let pair: Vec<&str> = lhs.split_whitespace().collect();
        let [a, b] = pair[..] else {
            return Err(bad(line, "expected two indices before `->`"));
        };
        let (mut i, mut j) = (idx(a)?, idx(b)?);
        if i == j {
            return Err(bad(line, "a basis vector commutes with itself"));
        }
        let sign = if i > j {
            core::mem::swap(&mut i, &mut j);
            -1
        } else {
            1
        };
        let mut terms = Vec::new();
        for t in rhs.split_whitespace() {
            let (k, c) = t.split_once(':').unwrap_or((t, "1"));
            let coeff: i64 = c
                .parse()
                .map_err(|_| bad(line, &format!("bad coefficient `{c}`")))?;
            terms.push(StructureTerm {
                target: idx(k)?,
                coeff: sign * coeff,
                eps: false,
            });
        }
        brackets.push(BracketSpec { i, j, terms });
    }
    let spec = LieAlgebraSpec {
        name: name.to_string(),
        dim: dim.ok_or_else(|| Error::InvalidSpec("missing `dim n` line".into()))?,
        param_kind: ParamKind::None,
        brackets,
        table: None,
    };
    spec.validate()?;
    Ok(spec)
}

fn build(r: &Row) -> LieAlgebraSpec {
    LieAlgebraSpec {
        name: r.name.to_string(),
        dim: r.dim,
        param_kind: r.kind,
        brackets: parse_relations(r.dim, r.relations).expect("catalog relations parse"),
        table: Some(TableData {
            center: r.center.iter().map(|&k| k - 1).collect(),
            class: r.class,
            rank: r.rank,
        }),
    }
}

/// Every catalog entry, in table order.
pub fn catalog() -> Vec<LieAlgebraSpec> {
    ROWS.iter().map(build).collect()
}

pub fn names() -> Vec<&'static str> {
    ROWS.iter().map(|r| r.name).collect()
}

pub fn spec(name: &str) -> Result<LieAlgebraSpec> {
    ROWS.iter()
        .find(|r| r.name == name)
        .map(build)
        .ok_or_else(|| Error::UnknownAlgebra(String::from(name)))
}

/// The two smallest admissible primes: the least prime `>= max(2, class)`
/// and the next one. Characteristic-2 families get `[2]` only.
pub fn default_primes(spec: &LieAlgebraSpec) -> Vec<u32> {
    if spec.param_kind == ParamKind::EpsChar2 {
        return alloc::vec![2];
    }
    let class = spec.table.as_ref().map_or(1, |t| t.class);
    let first = prime_at_least(class.max(2) as u32);
    alloc::vec![first, next_prime(first)]
}

/// Parameter values exercised by default for a family.
pub fn default_eps(kind: ParamKind) -> Vec<Option<i64>> {
    match kind {
        ParamKind::None => alloc::vec![None],
        ParamKind::EpsNonzero => alloc::vec![Some(1), Some(2)],
        ParamKind::EpsAny => alloc::vec![Some(0), Some(1), Some(2)],
        ParamKind::EpsChar2 => alloc::vec![Some(0), Some(1)],
    }
}

/// Instantiate a catalog algebra at prime `p` with optional parameter.
pub fn lookup(name: &str, p: u32, eps: Option<i64>) -> Result<LieAlgebra> {
    LieAlgebra::from_spec(spec(name)?, p, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::GVector;

    #[test]
    fn catalog_has_every_table_row() {
        assert_eq!(catalog().len(), 28);
        assert_eq!(catalog().iter().filter(|s| s.dim <= 5).count(), 8);
    }

    #[test]
    fn relation_parsing() {
        let b = parse_relations(6, "[3,4]=5+6 [2,4]=eps*6 [3,5]=-6").unwrap();
        assert_eq!(b[0].terms.len(), 2);
        assert!(b[1].terms[0].eps);
        assert_eq!(b[2].terms[0].coeff, -1);
        assert!(parse_relations(3, "[1,2]=4").is_err());
        assert!(parse_relations(3, "[1,2]3").is_err());
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(
            lookup("g_6_19", 5, Some(0)),
            Err(Error::EpsMustBeNonzero(_))
        ));
        assert!(matches!(
            lookup("g_5_5", 3, None),
            Err(Error::CharacteristicTooSmall { class: 4, p: 3, .. })
        ));
        assert!(matches!(
            lookup("g_9", 3, None),
            Err(Error::UnknownAlgebra(_))
        ));
        assert!(matches!(
            lookup("g_6_22", 3, None),
            Err(Error::MissingEps(_))
        ));
        assert!(matches!(
            lookup("g_6_7_2", 3, Some(1)),
            Err(Error::Char2Only(_))
        ));
        assert!(matches!(lookup("g_4", 4, None), Err(Error::NotPrime(4))));
    }

    #[test]
    fn algebra_text_format() {
        let text = "# filiform\ndim 4\n1 2 -> 3\n3 1 -> 4:-1  # same as [x1,x3] = x4\n";
        let s = parse_algebra_text("mine", text).unwrap();
        assert_eq!(s.relations_string(), "[x1, x2] = x3, [x1, x3] = x4");
        assert_eq!(s.brackets, spec("g_4").unwrap().brackets);
        let g = LieAlgebra::from_spec(s, 3, None).unwrap();
        assert_eq!(g.nilpotency_class(), Some(3));
        for bad in [
            "1 2 -> 3",
            "dim 3\n1 1 -> 3",
            "dim 3\n1 2 -> 4",
            "dim 3\n1 2 3",
            "dim 3\n1 2 -> 3:x",
        ] {
            assert!(
                matches!(parse_algebra_text("b", bad), Err(Error::InvalidSpec(_))),
                "{bad}"
            );
        }
        let dup = "dim 3\n1 2 -> 3\n2 1 -> 3";
        assert!(parse_algebra_text("d", dup).is_err());
    }

    #[test]
    fn eps_enters_bracket() {
        let g = lookup("g_6_22", 5, Some(3)).unwrap();
        let v = g.bracket(&g.basis_vector(1), &g.basis_vector(3)).unwrap();
        assert_eq!(v, GVector::from_coords(g.field(), &[0, 0, 0, 0, 0, 3]));
    }
}
