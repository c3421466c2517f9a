use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{LieAlgebra, Sample, Vector};
use crate::error::{Error, Result};
use crate::ratpoly::{Field, Polynomial, Real, LAMBDA0, SOLITON_C};

/// Sign condition on a structure parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Positive,
    Negative,
    Nonzero,
    Free,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Positive => "positive",
            Relation::Negative => "negative",
            Relation::Nonzero => "nonzero",
            Relation::Free => "free",
        }
    }

    pub fn admits<F: Field>(self, x: &F) -> bool {
        match self {
            Relation::Positive => x.sign().is_gt(),
            Relation::Negative => x.sign().is_lt(),
            Relation::Nonzero => !x.is_zero(),
            Relation::Free => true,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "positive" => Ok(Relation::Positive),
            "negative" => Ok(Relation::Negative),
            "nonzero" => Ok(Relation::Nonzero),
            "free" => Ok(Relation::Free),
            other => Err(format!(
                "unknown relation `{other}` (expected positive, negative, nonzero or free)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterConstraint {
    pub name: String,
    pub relation: Relation,
}

impl ParameterConstraint {
    pub fn new(name: impl Into<String>, relation: Relation) -> Self {
        Self {
            name: name.into(),
            relation,
        }
    }
}

/// A Lie algebra with polynomial structure constants in an orthonormal basis.
///
/// Invariants, checked by [`MetricLieAlgebra::new`]:
/// every parameter in the structure constants has exactly one constraint,
/// constraint names avoid `lambda0` and `c`, and the Jacobi identity holds
/// as a polynomial identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricLieAlgebra {
    label: String,
    lie: LieAlgebra<Polynomial>,
    constraints: Vec<ParameterConstraint>,
}

impl MetricLieAlgebra {
    pub fn new(
        label: impl Into<String>,
        lie: LieAlgebra<Polynomial>,
        constraints: Vec<ParameterConstraint>,
    ) -> Result<Self> {
        let mut declared = BTreeSet::new();
        for c in &constraints {
            if c.name == LAMBDA0 || c.name == SOLITON_C {
                return Err(Error::ReservedParameter(c.name.clone()));
            }
            if !declared.insert(c.name.as_str()) {
                return Err(Error::DuplicateConstraint(c.name.clone()));
            }
        }
        for name in structure_parameters(&lie) {
            if !declared.contains(name.as_str()) {
                return Err(Error::UndeclaredParameter(name));
            }
        }
        let violations = lie.jacobi_check();
        if !violations.is_empty() {
            return Err(Error::JacobiViolation(
                violations.iter().map(ToString::to_string).collect(),
            ));
        }
        Ok(Self {
            label: label.into(),
            lie,
            constraints,
        })
    }

    /// Convenience constructor from 1-based bracket triples.
    pub fn from_brackets(
        label: impl Into<String>,
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<Polynomial>)>,
        constraints: Vec<ParameterConstraint>,
    ) -> Result<Self> {
        let mut zero_based = Vec::new();
        for (i, j, v) in brackets {
            if i == 0 || j == 0 {
                return Err(Error::IndexOutOfRange { index: 0, dim });
            }
            zero_based.push((i - 1, j - 1, Vector(v)));
        }
        let lie = LieAlgebra::from_brackets(dim, zero_based)?;
        Self::new(label, lie, constraints)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn lie(&self) -> &LieAlgebra<Polynomial> {
        &self.lie
    }

    pub fn constraints(&self) -> &[ParameterConstraint] {
        &self.constraints
    }

    pub fn constraint(&self, name: &str) -> Option<Relation> {
        self.constraints
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.relation)
    }

    /// Declared parameter names, in declaration order.
    pub fn parameters(&self) -> impl Iterator<Item = &str> {
        self.constraints.iter().map(|c| c.name.as_str())
    }

    /// Orients squared entries, then checks that every declared parameter
    /// is assigned, no unknown names occur, and all signs are admissible.
    pub fn check_sample(&self, sample: &Sample) -> Result<Sample> {
        for name in sample.names() {
            if self.constraint(name).is_none() {
                return Err(Error::UndeclaredParameter(name.to_string()));
            }
        }
        let oriented = sample.oriented(&self.constraints);
        for c in &self.constraints {
            let v = oriented.require(&c.name)?;
            if !c.relation.admits(v) {
                return Err(Error::ConstraintViolation {
                    name: c.name.clone(),
                    value: v.to_string(),
                    relation: c.relation.to_string(),
                });
            }
        }
        Ok(oriented)
    }

    /// Structure constants at an admissible sample.
    pub fn evaluate(&self, sample: &Sample) -> Result<LieAlgebra<Real>> {
        let s = self.check_sample(sample)?;
        Ok(self.lie.try_map(|p| p.eval_with(|n| s.lookup(n)))?)
    }

    /// Nilpotency step at a sample; see [`LieAlgebra::nilpotency_step`].
    pub fn nilpotency_step(&self, sample: &Sample) -> Result<usize> {
        self.evaluate(sample)?.nilpotency_step()
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            ..self.clone()
        }
    }
}

impl AsRef<LieAlgebra<Polynomial>> for MetricLieAlgebra {
    fn as_ref(&self) -> &LieAlgebra<Polynomial> {
        &self.lie
    }
}

fn structure_parameters(lie: &LieAlgebra<Polynomial>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (_, _, v) in lie.nonzero_brackets() {
        for p in &v.0 {
            out.extend(p.variables());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn heis(constraint: Relation) -> MetricLieAlgebra {
        let a = Polynomial::var("alpha");
        let z = Polynomial::int(0);
        MetricLieAlgebra::from_brackets(
            "heis",
            3,
            [(1, 2, vec![z.clone(), z, a])],
            vec![ParameterConstraint::new("alpha", constraint)],
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        let a = Polynomial::var("alpha");
        let z = Polynomial::int(0);
        let br = || [(1, 2, vec![z.clone(), z.clone(), a.clone()])];
        assert_eq!(
            MetricLieAlgebra::from_brackets("x", 3, br(), vec![]).unwrap_err(),
            Error::UndeclaredParameter("alpha".into())
        );
        let dup = vec![
            ParameterConstraint::new("alpha", Relation::Free),
            ParameterConstraint::new("alpha", Relation::Positive),
        ];
        assert_eq!(
            MetricLieAlgebra::from_brackets("x", 3, br(), dup).unwrap_err(),
            Error::DuplicateConstraint("alpha".into())
        );
        let reserved = vec![ParameterConstraint::new("lambda0", Relation::Free)];
        assert_eq!(
            MetricLieAlgebra::from_brackets("x", 3, [], reserved).unwrap_err(),
            Error::ReservedParameter("lambda0".into())
        );
        let one = Polynomial::int(1);
        let bad = [
            (1, 2, vec![z.clone(), z.clone(), one.clone()]),
            (1, 3, vec![one, z.clone(), z.clone()]),
        ];
        assert!(matches!(
            MetricLieAlgebra::from_brackets("x", 3, bad, vec![]).unwrap_err(),
            Error::JacobiViolation(v) if v.len() == 1
        ));
    }

    #[test]
    fn sample_checks() {
        let g = heis(Relation::Positive);
        assert_eq!(g.nilpotency_step(&Sample::parse("alpha=1").unwrap()), Ok(2));
        assert!(matches!(
            g.check_sample(&Sample::parse("alpha=0").unwrap()),
            Err(Error::ConstraintViolation { .. })
        ));
        assert!(matches!(
            g.check_sample(&Sample::parse("").unwrap()),
            Err(Error::Poly(_))
        ));
        assert_eq!(
            g.check_sample(&Sample::parse("alpha=1,beta=2").unwrap()),
            Err(Error::UndeclaredParameter("beta".into()))
        );
        let g = heis(Relation::Negative);
        let s = g.check_sample(&Sample::parse("alpha^2=4").unwrap()).unwrap();
        assert_eq!(s.get("alpha"), Some(&Real::rational(rat(-2))));
        // abelian at alpha = 0
        assert_eq!(
            heis(Relation::Free).nilpotency_step(&Sample::parse("alpha=0").unwrap()),
            Ok(1)
        );
    }
}
