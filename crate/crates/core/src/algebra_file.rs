//! Line-oriented algebra definition format.
//!
//! ```text
//! # comments run to the end of the line
//! name A3_1+2A1                      # optional label
//! dim 5
//! param alpha positive               # positive | negative | nonzero | free
//! bracket 1 2 : alpha*e5             # [v1,v2] = alpha v5, requires i < j
//! sample alpha = 1                   # optional; `name^2 = q` assigns a square
//! ```
//!
//! The right-hand side of a bracket is a polynomial literal that is linear
//! in the basis symbols `e1..en`. Omitted pairs are zero.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{is_identifier, MetricLieAlgebra, ParameterConstraint, Relation, Sample};
use crate::ratpoly::{parse_polynomial, Polynomial, PolyError, LAMBDA0, SOLITON_C};

const DEFAULT_LABEL: &str = "custom";

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub algebra: MetricLieAlgebra,
    pub sample: Option<Sample>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn basis_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn lift(line: usize, e: PolyError) -> Error {
    match e {
        PolyError::Syntax { column, message } => {
            syntax(line, format!("column {column}: {message}"))
        }
        other => syntax(line, other.to_string()),
    }
}

/// Splits a bracket right-hand side into coordinates `c_1..c_n`.
fn coordinates(line: usize, dim: usize, rhs: &Polynomial) -> Result<Vec<Polynomial>> {
    let mut out = vec![Polynomial::int(0); dim];
    for (m, c) in rhs.terms() {
        let basis: Vec<(usize, u32)> = m
            .iter()
            .filter_map(|(n, e)| basis_index(n).map(|k| (k, e)))
            .collect();
        let k = match basis.as_slice() {
            [(k, 1)] => *k,
            _ => {
                return Err(syntax(
                    line,
                    format!("term `{c}*{m}` must contain exactly one basis symbol e1..e{dim} to the first power"),
                ))
            }
        };
        if k == 0 || k > dim {
            return Err(syntax(line, format!("basis symbol e{k} out of range 1..{dim}")));
        }
        let (rest, _) = m.without(&format!("e{k}"));
        out[k - 1] = &out[k - 1] + &Polynomial::term(c.clone(), rest);
    }
    Ok(out)
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    let mut label: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut constraints: Vec<ParameterConstraint> = Vec::new();
    let mut brackets: Vec<(usize, usize, Vec<Polynomial>)> = Vec::new();
    let mut seen_pairs = BTreeSet::new();
    let mut sample: Option<Sample> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        match keyword {
            "name" => {
                if rest.is_empty() {
                    return Err(syntax(line, "`name` needs a label"));
                }
                if label.replace(rest.to_string()).is_some() {
                    return Err(syntax(line, "`name` given twice"));
                }
            }
            "dim" => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid dimension `{rest}`")))?;
                if n == 0 {
                    return Err(syntax(line, "dimension must be positive"));
                }
                if dim.replace(n).is_some() {
                    return Err(syntax(line, "`dim` given twice"));
                }
            }
            "param" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, relation] = parts.as_slice() else {
                    return Err(syntax(line, "expected `param <name> <relation>`"));
                };
                if !is_identifier(name) {
                    return Err(syntax(line, format!("invalid parameter name `{name}`")));
                }
                if *name == LAMBDA0 || *name == SOLITON_C || basis_index(name).is_some() {
                    return Err(syntax(line, format!("`{name}` is a reserved name")));
                }
                if constraints.iter().any(|c| c.name == *name) {
                    return Err(syntax(line, format!("parameter `{name}` declared twice")));
                }
                let relation: Relation = relation.parse().map_err(|m: String| syntax(line, m))?;
                constraints.push(ParameterConstraint::new(*name, relation));
            }
            "bracket" => {
                let n = dim.ok_or_else(|| syntax(line, "`dim` must precede brackets"))?;
                let (lhs, rhs) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `bracket <i> <j> : <expr>`"))?;
                let idx: Vec<usize> = lhs
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| syntax(line, format!("invalid index `{t}`"))))
                    .collect::<Result<_>>()?;
                let [i, j] = idx.as_slice() else {
                    return Err(syntax(line, "expected two basis indices"));
                };
                let (i, j) = (*i, *j);
                for k in [i, j] {
                    if k == 0 || k > n {
                        return Err(syntax(line, format!("basis index {k} out of range 1..{n}")));
                    }
                }
                if i >= j {
                    return Err(syntax(line, format!("bracket indices must satisfy i < j, got {i} {j}")));
                }
                if !seen_pairs.insert((i, j)) {
                    return Err(Error::DuplicateBracket(i, j));
                }
                let poly = parse_polynomial(rhs).map_err(|e| lift(line, e))?;
                brackets.push((i, j, coordinates(line, n, &poly)?));
            }
            "sample" => {
                let one = Sample::parse(rest).map_err(|e| match e {
                    Error::Syntax { message, .. } => syntax(line, message),
                    Error::Poly(p) => lift(line, p),
                    other => other,
                })?;
                let acc = sample.get_or_insert_with(Sample::new);
                for (name, v) in one.iter() {
                    if acc.get(name).is_some() {
                        return Err(syntax(line, format!("parameter `{name}` sampled twice")));
                    }
                    acc.set(name, v.clone()).map_err(|e| match e {
                        Error::Poly(p) => lift(line, p),
                        other => other,
                    })?;
                    if one.is_squared(name) {
                        acc.mark_squared(name);
                    }
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let dim = dim.ok_or_else(|| syntax(text.lines().count().max(1), "missing `dim`"))?;
    let algebra = MetricLieAlgebra::from_brackets(
        label.unwrap_or_else(|| DEFAULT_LABEL.to_string()),
        dim,
        brackets,
        constraints,
    )?;
    if let Some(s) = &sample {
        algebra.check_sample(s)?;
    }
    Ok(AlgebraFile { algebra, sample })
}

fn render_rhs(coords: &[Polynomial]) -> String {
    let mut out = String::new();
    for (k, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let basis = format!("e{}", k + 1);
        let term = if c.num_terms() == 1 {
            match c.pretty().as_str() {
                "1" => basis,
                "-1" => format!("-{basis}"),
                p => format!("{p}*{basis}"),
            }
        } else {
            format!("({})*{basis}", c.pretty())
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            let _ = write!(out, " - {rest}");
        } else {
            let _ = write!(out, " + {term}");
        }
    }
    out
}

/// Canonical text of an algebra and optional sample.
pub fn print_algebra_file(file: &AlgebraFile) -> String {
    let g = &file.algebra;
    let mut out = String::new();
    let _ = writeln!(out, "name {}", g.label());
    let _ = writeln!(out, "dim {}", g.dim());
    for c in g.constraints() {
        let _ = writeln!(out, "param {} {}", c.name, c.relation);
    }
    for (i, j, v) in g.lie().nonzero_brackets() {
        let _ = writeln!(out, "bracket {} {} : {}", i + 1, j + 1, render_rhs(&v.0));
    }
    if let Some(s) = &file.sample {
        for item in s.to_string().split(',').filter(|t| !t.is_empty()) {
            let (name, value) = item.split_once('=').expect("sample items are `name=value`");
            let _ = writeln!(out, "sample {name} = {value}");
        }
    }
    out
}

pub fn print_algebra(g: &MetricLieAlgebra) -> String {
    print_algebra_file(&AlgebraFile {
        algebra: g.clone(),
        sample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = "\
# Heisenberg plus a line
dim 4
param alpha positive
param beta free
bracket 1 2 : alpha*e3 - (beta + 1)*e4   # two coordinates
sample alpha = 2
sample beta^2 = 2
";

    #[test]
    fn parse_and_round_trip() {
        let f = parse_algebra_file(HEIS).unwrap();
        assert_eq!(f.algebra.label(), "custom");
        assert_eq!(f.algebra.dim(), 4);
        let v = f.algebra.lie().basis_bracket(0, 1);
        assert_eq!(v.0[2], Polynomial::var("alpha"));
        assert_eq!(v.0[3], parse_polynomial("-beta - 1").unwrap());
        let printed = print_algebra_file(&f);
        assert_eq!(
            printed,
            "name custom\ndim 4\nparam alpha positive\nparam beta free\n\
             bracket 1 2 : alpha*e3 + (-beta - 1)*e4\nsample alpha = 2\nsample beta^2 = 2\n"
        );
        assert_eq!(parse_algebra_file(&printed).unwrap(), f);
    }

    #[test]
    fn line_numbered_errors() {
        let err = |t: &str| parse_algebra_file(t).unwrap_err();
        assert_eq!(
            err("dim 5\nbracket 1 1 : e2"),
            Error::Syntax {
                line: 2,
                message: "bracket indices must satisfy i < j, got 1 1".into()
            }
        );
        assert!(matches!(err("dim 3\n\nbracket 1 2 : e3*e3"), Error::Syntax { line: 3, .. }));
        assert!(matches!(err("dim 3\nbracket 1 2 : 2"), Error::Syntax { line: 2, .. }));
        assert!(matches!(err("dim 3\nbracket 1 2 : e4"), Error::Syntax { line: 2, .. }));
        assert!(matches!(err("dim 3\nbracket 1 2 : e3 +"), Error::Syntax { line: 2, .. }));
        assert!(matches!(err("bracket 1 2 : e3"), Error::Syntax { line: 1, .. }));
        assert!(matches!(err("dim 3\nparam c free"), Error::Syntax { line: 2, .. }));
        assert!(matches!(err("dim 3\nparam e2 free"), Error::Syntax { line: 2, .. }));
        assert!(matches!(err("dim 3\nparam a sometimes"), Error::Syntax { line: 2, .. }));
        assert!(matches!(err("dim x"), Error::Syntax { line: 1, .. }));
        assert!(matches!(err("frobnicate"), Error::Syntax { line: 1, .. }));
        assert!(matches!(err("param a free"), Error::Syntax { .. }));
        assert_eq!(
            err("dim 3\nbracket 1 2 : e3\nbracket 1 2 : e3"),
            Error::DuplicateBracket(1, 2)
        );
        assert!(matches!(
            err("dim 3\nbracket 1 2 : e3\nbracket 1 3 : e1"),
            Error::JacobiViolation(_)
        ));
        assert_eq!(
            err("dim 3\nbracket 1 2 : a*e3"),
            Error::UndeclaredParameter("a".into())
        );
        assert!(matches!(
            err("dim 3\nparam a positive\nbracket 1 2 : a*e3\nsample a = -1"),
            Error::ConstraintViolation { .. }
        ));
    }

    #[test]
    fn empty_bracket_section_is_abelian() {
        let f = parse_algebra_file("dim 5\n").unwrap();
        assert!(f.algebra.lie().is_abelian());
        assert_eq!(f.sample, None);
    }
}
