//! Derivation residuals, obstruction systems and soliton decisions.
//!
//! `D = Ric - (lambda0 * s + c) Id` is a derivation exactly when every
//! residual `D[v_i,v_j] - [D v_i, v_j] - [v_i, D v_j]` vanishes. The
//! residual is affine in the scalar `mu = lambda0 * s + c`, which gives the
//! numeric oracle: stack the residual coordinates as `r0 + mu * r1` and
//! decide solvability of that one-unknown linear system.
//!
//! [`nilsoliton_check`] answers the same question by a different route:
//! it computes a basis of `Der(g)` and tests `Ric` against `span(Id, Der)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::curvature::ricci_operator;
use crate::error::{Error, Result};
use crate::liealg::{null_space, LieAlgebra, Matrix, MetricLieAlgebra, Sample, Vector};
use crate::ratpoly::{Field, Polynomial, Real, Scalar, LAMBDA0, SOLITON_C};

/// Absolute residual-norm tolerance of float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

/// Residual of the derivation identity for one basis pair `i < j` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct PairResidual<T> {
    pub pair: (usize, usize),
    pub residual: Vector<T>,
}

/// `D[v_i,v_j] - [D v_i, v_j] - [v_i, D v_j]` for every `i < j`.
pub fn derivation_residual<T: Scalar, G: AsRef<LieAlgebra<T>>>(
    g: &G,
    d: &Matrix<T>,
) -> Result<Vec<PairResidual<T>>> {
    let g = g.as_ref();
    let n = g.dim();
    if d.size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d.size(),
        });
    }
    let cols: Vec<_> = (0..n).map(|j| d.column(j)).collect();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.apply(&g.basis_bracket(i, j));
            let a = g.bracket_unchecked(&cols[i], &Vector::basis(n, j));
            let b = g.bracket_unchecked(&Vector::basis(n, i), &cols[j]);
            out.push(PairResidual {
                pair: (i, j),
                residual: lhs.sub(&a).sub(&b),
            });
        }
    }
    Ok(out)
}

/// `Ric - (lambda0 * s + c) Id` over the structure parameters and `lambda0`, `c`.
///
/// Symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateDerivation {
    pub matrix: Matrix<Polynomial>,
}

pub fn candidate_derivation(g: &MetricLieAlgebra) -> CandidateDerivation {
    let ric = ricci_operator(g);
    let s = ric.trace();
    let shift = &(&Polynomial::var(LAMBDA0) * &s) + &Polynomial::var(SOLITON_C);
    let n = g.dim();
    CandidateDerivation {
        matrix: ric.sub(&Matrix::identity(n).scale(&shift)),
    }
}

/// Origin of a generator: basis pair `(i, j)` and coordinate `k`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub pair: (usize, usize),
    pub coordinate: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.pair;
        write!(f, "[v{},v{}] e{}", i + 1, j + 1, self.coordinate + 1)
    }
}

/// Sign-normalized, duplicate-free residual coordinates of the candidate
/// derivation, in order of first occurrence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObstructionSystem {
    generators: Vec<Polynomial>,
    provenance: Vec<Provenance>,
}

impl ObstructionSystem {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Polynomial, &Provenance)> {
        self.generators.iter().zip(&self.provenance)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether `p`, after sign normalization, is one of the generators.
    pub fn contains(&self, p: &Polynomial) -> bool {
        p.normalize_sign()
            .map(|q| self.generators.contains(&q))
            .unwrap_or(false)
    }

    /// Generator values at an admissible sample and given `lambda0`, `c`.
    pub fn evaluate(
        &self,
        g: &MetricLieAlgebra,
        sample: &Sample,
        lambda0: &Real,
        c: &Real,
    ) -> Result<Vec<Real>> {
        let s = g.check_sample(sample)?;
        let lookup = |name: &str| match name {
            LAMBDA0 => Some(lambda0.clone()),
            SOLITON_C => Some(c.clone()),
            _ => s.get(name).cloned(),
        };
        self.generators
            .iter()
            .map(|p| Ok(p.eval_with(lookup)?))
            .collect()
    }
}

pub fn obstruction_system(g: &MetricLieAlgebra) -> ObstructionSystem {
    let d = candidate_derivation(g).matrix;
    let residuals = derivation_residual(g, &d).expect("candidate has the algebra dimension");
    let mut seen = BTreeSet::new();
    let mut sys = ObstructionSystem::default();
    for r in residuals {
        for (k, p) in r.residual.0.iter().enumerate() {
            let Ok(q) = p.normalize_sign() else { continue };
            if seen.insert(q.to_string()) {
                sys.generators.push(q);
                sys.provenance.push(Provenance {
                    pair: r.pair,
                    coordinate: k,
                });
            }
        }
    }
    sys
}

/// Symmetry with respect to the orthonormal basis: `D == D^T`.
pub fn symmetric_derivation_check<T: Scalar>(d: &Matrix<T>) -> bool {
    d.is_symmetric()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Feasible,
    Infeasible,
}

impl Status {
    pub fn is_feasible(self) -> bool {
        self == Status::Feasible
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a soliton decision at one sample.
///
/// `best_mu` is the least-squares `mu` even when infeasible; the witness
/// fields are present exactly when the status is feasible, with
/// `witness_d = Ric - witness_mu * Id`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonVerdict<F> {
    pub status: Status,
    pub best_mu: F,
    pub witness_mu: Option<F>,
    pub witness_d: Option<Matrix<F>>,
    pub residual_norm: f64,
}

impl<F: Field> SolitonVerdict<F> {
    fn build(status: Status, ric: &Matrix<F>, mu: F, residual_norm: f64) -> Self {
        let n = ric.size();
        let (witness_mu, witness_d) = match status {
            Status::Feasible => (
                Some(mu.clone()),
                Some(ric.sub(&Matrix::identity(n).scale(&mu))),
            ),
            Status::Infeasible => (None, None),
        };
        Self {
            status,
            best_mu: mu,
            witness_mu,
            witness_d,
            residual_norm,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status.is_feasible()
    }
}

fn flatten<T: Clone>(rs: Vec<PairResidual<T>>) -> Vec<T> {
    rs.into_iter().flat_map(|r| r.residual.0).collect()
}

fn norm<F: Field>(xs: &[F]) -> f64 {
    xs.iter()
        .map(|x| {
            let f = x.to_f64();
            f * f
        })
        .sum::<f64>()
        .sqrt()
}

/// Affine-in-`mu` decision on an evaluated algebra.
///
/// `tolerance = None` is exact mode (the residual must vanish identically);
/// otherwise the residual norm is compared with the tolerance.
pub fn affine_oracle<F: Field>(g: &LieAlgebra<F>, tolerance: Option<f64>) -> SolitonVerdict<F> {
    let n = g.dim();
    let ric = ricci_operator(g);
    let r0 = flatten(derivation_residual(g, &ric).expect("square"));
    let r1: Vec<F> = flatten(derivation_residual(g, &Matrix::identity(n)).expect("square"))
        .into_iter()
        .map(|x| -x)
        .collect();
    let dot = |a: &[F], b: &[F]| {
        a.iter()
            .zip(b)
            .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };
    let r11 = dot(&r1, &r1);
    let degenerate = match tolerance {
        None => r11.is_zero(),
        Some(t) => r11.to_f64().sqrt() <= t,
    };
    let mu = if degenerate {
        F::zero()
    } else {
        -(dot(&r0, &r1) * r11.inv().expect("nonzero"))
    };
    let r: Vec<F> = r0
        .iter()
        .zip(&r1)
        .map(|(a, b)| a.clone() + mu.clone() * b.clone())
        .collect();
    let residual_norm = norm(&r);
    let feasible = match tolerance {
        None => r.iter().all(|x| x.is_zero()),
        Some(t) => residual_norm <= t,
    };
    let status = if feasible {
        Status::Feasible
    } else {
        Status::Infeasible
    };
    SolitonVerdict::build(status, &ric, mu, residual_norm)
}

fn nilpotent_at(g: &MetricLieAlgebra, sample: &Sample) -> Result<LieAlgebra<Real>> {
    let lie = g.evaluate(sample)?;
    lie.nilpotency_step()?;
    Ok(lie)
}

/// Decides, exactly, whether some `mu` makes `Ric - mu Id` a derivation.
pub fn numeric_soliton_oracle(g: &MetricLieAlgebra, sample: &Sample) -> Result<SolitonVerdict<Real>> {
    Ok(affine_oracle(&nilpotent_at(g, sample)?, None))
}

/// Float-mode variant of [`numeric_soliton_oracle`] with tolerance [`FLOAT_TOLERANCE`].
pub fn numeric_soliton_oracle_f64(
    g: &MetricLieAlgebra,
    sample: &Sample,
) -> Result<SolitonVerdict<f64>> {
    let lie = nilpotent_at(g, sample)?.map(Field::to_f64);
    Ok(affine_oracle(&lie, Some(FLOAT_TOLERANCE)))
}

/// Index form `ric_ij = -1/2 sum c_iak c_jak + 1/4 sum c_abi c_abj`.
fn ricci_tensor_index_form<F: Field>(g: &LieAlgebra<F>) -> Matrix<F> {
    let n = g.dim();
    let half = F::from_rational(&crate::ratpoly::ratio(1, 2));
    let quarter = F::from_rational(&crate::ratpoly::ratio(1, 4));
    let c = |i, j, k| g.structure_constant(i, j, k).clone();
    Matrix::from_fn(n, |i, j| {
        let mut first = F::zero();
        let mut second = F::zero();
        for a in 0..n {
            for k in 0..n {
                first = first + c(i, a, k) * c(j, a, k);
                second = second + c(a, k, i) * c(a, k, j);
            }
        }
        quarter.clone() * second - half.clone() * first
    })
}

/// Tensor form of the Schouten-like condition at a given `mu`:
/// `ric(v_i, v_j) = mu delta_ij + D_ij` with `D = Ric - mu Id` a symmetric
/// derivation. `ric` is computed from the structure constants directly.
pub fn schouten_like_check(g: &MetricLieAlgebra, sample: &Sample, mu: &Real) -> Result<bool> {
    let lie = nilpotent_at(g, sample)?;
    let n = lie.dim();
    let d = ricci_operator(&lie).sub(&Matrix::identity(n).scale(mu));
    let ric = ricci_tensor_index_form(&lie);
    let tensor_form = ric == Matrix::identity(n).scale(mu).add(&d);
    let derivation = derivation_residual(&lie, &d)?
        .iter()
        .all(|r| r.residual.is_zero());
    Ok(tensor_form && derivation && symmetric_derivation_check(&d))
}

/// Basis of `Der(g)`, as matrices, from the null space of the derivation identity.
pub fn derivation_algebra<F: Field>(g: &LieAlgebra<F>) -> Vec<Matrix<F>> {
    let n = g.dim();
    let c = |i, j, k| g.structure_constant(i, j, k).clone();
    let var = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![F::zero(); n * n];
                for m in 0..n {
                    // D[v_i,v_j]_k - [D v_i, v_j]_k - [v_i, D v_j]_k
                    row[var(k, m)] = row[var(k, m)].clone() + c(i, j, m);
                    row[var(m, i)] = row[var(m, i)].clone() - c(m, j, k);
                    row[var(m, j)] = row[var(m, j)].clone() - c(i, m, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    null_space(rows, n * n)
        .into_iter()
        .map(|x| Matrix::from_fn(n, |a, b| x[var(a, b)].clone()))
        .collect()
}

/// Whether `Ric` lies in `R Id + Der(g)`, decided through a basis of `Der(g)`.
pub fn nilsoliton_check_on<F: Field>(g: &LieAlgebra<F>) -> SolitonVerdict<F> {
    let n = g.dim();
    let ric = ricci_operator(g);
    if g.is_abelian() {
        return SolitonVerdict::build(Status::Feasible, &ric, F::zero(), 0.0);
    }
    let flat = |m: &Matrix<F>| -> Vec<F> { m.rows().flatten().cloned().collect() };
    // columns: Id, D_1..D_r, -Ric; a null vector with last entry 1 gives
    // Ric = mu Id + sum a_k D_k
    let mut cols = vec![flat(&Matrix::identity(n))];
    cols.extend(derivation_algebra(g).iter().map(flat));
    cols.push(flat(&ric).into_iter().map(|x| -x).collect());
    let ncols = cols.len();
    let rows: Vec<Vec<F>> = (0..n * n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let solution = null_space(rows, ncols)
        .into_iter()
        .find(|x| !x[ncols - 1].is_zero());
    match solution {
        Some(x) => {
            let scale = x[ncols - 1].inv().expect("nonzero");
            let mu = x[0].clone() * scale;
            SolitonVerdict::build(Status::Feasible, &ric, mu, 0.0)
        }
        None => {
            let fallback = affine_oracle(g, None);
            SolitonVerdict::build(Status::Infeasible, &ric, fallback.best_mu, fallback.residual_norm)
        }
    }
}

/// Nilsoliton decision at a sample: `Ric in R Id + Der(g)`.
pub fn nilsoliton_check(g: &MetricLieAlgebra, sample: &Sample) -> Result<SolitonVerdict<Real>> {
    Ok(nilsoliton_check_on(&nilpotent_at(g, sample)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{ParameterConstraint, Relation};
    use crate::ratpoly::{rat, Rational};

    fn heis() -> MetricLieAlgebra {
        let z = Polynomial::int(0);
        MetricLieAlgebra::from_brackets(
            "heis",
            3,
            [(1, 2, vec![z.clone(), z, Polynomial::var("alpha")])],
            vec![ParameterConstraint::new("alpha", Relation::Positive)],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_is_a_soliton() {
        let g = heis();
        let s = Sample::parse("alpha=2").unwrap();
        let v = numeric_soliton_oracle(&g, &s).unwrap();
        assert!(v.is_feasible());
        // Ric = diag(-2,-2,2), D = Ric - mu Id with mu = -6
        assert_eq!(v.witness_mu, Some(Real::rational(rat(-6))));
        let w = nilsoliton_check(&g, &s).unwrap();
        assert_eq!(w.witness_mu, v.witness_mu);
        assert!(schouten_like_check(&g, &s, &Real::rational(rat(-6))).unwrap());
        assert!(!schouten_like_check(&g, &s, &Real::rational(rat(-5))).unwrap());
    }

    #[test]
    fn heisenberg_obstruction_system() {
        let sys = obstruction_system(&heis());
        assert_eq!(sys.len(), 1);
        // alpha * ((3 - lambda0) alpha^2 + 2c) / 2 after normalization
        let p = crate::ratpoly::parse_polynomial("3*alpha^3 - lambda0*alpha^3 + 2*alpha*c").unwrap();
        assert!(sys.contains(&p));
        assert_eq!(sys.provenance()[0].to_string(), "[v1,v2] e3");
    }

    #[test]
    fn derivation_algebra_of_heisenberg() {
        // Der(h3) has dimension 6
        let z = Rational::from_integer(0.into());
        let one = rat(1);
        let h = LieAlgebra::from_brackets(3, [(0, 1, Vector(vec![z.clone(), z, one]))]).unwrap();
        let der = derivation_algebra(&h);
        assert_eq!(der.len(), 6);
        for d in &der {
            assert!(derivation_residual(&h, d)
                .unwrap()
                .iter()
                .all(|r| r.residual.is_zero()));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = heis();
        assert!(matches!(
            derivation_residual(&g, &Matrix::<Polynomial>::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_nilpotent_sample_is_rejected() {
        let z = Polynomial::int(0);
        let g = MetricLieAlgebra::from_brackets(
            "aff",
            2,
            [(1, 2, vec![z, Polynomial::var("alpha")])],
            vec![ParameterConstraint::new("alpha", Relation::Positive)],
        )
        .unwrap();
        assert_eq!(
            numeric_soliton_oracle(&g, &Sample::parse("alpha=1").unwrap()),
            Err(Error::NotNilpotentAtSample)
        );
    }
}
