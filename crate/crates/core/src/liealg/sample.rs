use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ratpoly::{parse_rational, Field, PolyError, Rational, Real};

/// A point in parameter space.
///
/// Values are exact reals in one common quadratic field. Entries given as
/// squares (`name^2 = q`) hold the non-negative root until
/// [`Sample::oriented`] applies the sign demanded by a constraint.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Sample {
    values: BTreeMap<String, Real>,
    squared: BTreeSet<String>,
}

impl Sample {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rationals<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Rational)>) -> Self {
        let mut s = Self::new();
        for (name, q) in pairs {
            s.values.insert(name.into(), Real::rational(q));
        }
        s
    }

    pub fn insert(&mut self, name: impl Into<String>, value: Rational) {
        let name = name.into();
        self.squared.remove(&name);
        self.values.insert(name, Real::rational(value));
    }

    /// Assigns `name^2 = square`, storing the non-negative root.
    pub fn insert_squared(&mut self, name: impl Into<String>, square: &Rational) -> Result<()> {
        let root = Real::sqrt(square)?;
        for v in self.values.values() {
            v.compatible(&root)?;
        }
        let name = name.into();
        self.squared.insert(name.clone());
        self.values.insert(name, root);
        Ok(())
    }

    /// Assigns an arbitrary exact value from the sample's field.
    pub fn set(&mut self, name: impl Into<String>, value: Real) -> Result<()> {
        for v in self.values.values() {
            v.compatible(&value)?;
        }
        let name = name.into();
        self.squared.remove(&name);
        self.values.insert(name, value);
        Ok(())
    }

    /// Parses `alpha=1,beta^2=3/4,...`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::new();
        for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (lhs, rhs) = item.split_once('=').ok_or_else(|| Error::Syntax {
                line: 1,
                message: format!("expected `name=value`, found `{item}`"),
            })?;
            let lhs = lhs.trim();
            let (name, squared) = match lhs.strip_suffix("^2") {
                Some(n) => (n.trim(), true),
                None => (lhs, false),
            };
            if !is_identifier(name) {
                return Err(Error::Syntax {
                    line: 1,
                    message: format!("invalid parameter name `{name}`"),
                });
            }
            if s.values.contains_key(name) {
                return Err(Error::Syntax {
                    line: 1,
                    message: format!("parameter `{name}` assigned twice"),
                });
            }
            let q = parse_rational(rhs)?;
            if squared {
                s.insert_squared(name, &q)?;
            } else {
                s.insert(name, q);
            }
        }
        Ok(s)
    }

    pub fn get(&self, name: &str) -> Option<&Real> {
        self.values.get(name)
    }

    pub fn is_squared(&self, name: &str) -> bool {
        self.squared.contains(name)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Real)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Radicand shared by all irrational values, 1 if all are rational.
    pub fn radicand(&self) -> u64 {
        self.values
            .values()
            .map(Real::radicand)
            .find(|&d| d != 1)
            .unwrap_or(1)
    }

    /// Every value multiplied by `t`.
    pub fn scaled(&self, t: &Rational) -> Self {
        let t = Real::rational(t.clone());
        Self {
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * t.clone()))
                .collect(),
            squared: self.squared.clone(),
        }
    }

    /// Flips squared entries whose constraint demands a negative value.
    pub fn oriented(&self, constraints: &[super::ParameterConstraint]) -> Self {
        let mut out = self.clone();
        for c in constraints {
            if c.relation == super::Relation::Negative && self.squared.contains(&c.name) {
                if let Some(v) = out.values.get_mut(&c.name) {
                    if v.sign().is_gt() {
                        *v = -v.clone();
                    }
                }
            }
        }
        out
    }

    pub(crate) fn mark_squared(&mut self, name: &str) {
        if self.values.contains_key(name) {
            self.squared.insert(name.to_string());
        }
    }

    pub(crate) fn lookup(&self, name: &str) -> Option<Real> {
        self.values.get(name).cloned()
    }

    pub(crate) fn require(&self, name: &str) -> Result<&Real> {
        self.values
            .get(name)
            .ok_or_else(|| PolyError::MissingParameter(name.into()).into())
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let sq = v.clone() * v.clone();
            match (v.as_rational(), sq.as_rational()) {
                (Some(q), _) if !self.squared.contains(name) || v.sign().is_lt() => {
                    write!(f, "{name}={q}")?
                }
                (_, Some(sq)) if v.sign().is_ge() => write!(f, "{name}^2={sq}")?,
                _ => write!(f, "{name}={v}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sample({self})")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
