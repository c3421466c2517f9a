use std::fmt;

use super::matrix::{row_reduce, Matrix, Vector};
use crate::error::{Error, Result};
use crate::ratpoly::{Field, Scalar};

/// Lie algebra given by structure constants in an orthonormal basis.
///
/// `[v_i, v_j] = sum_k c[i][j][k] v_k`. Indices are 0-based in the API;
/// rendered output uses the 1-based `v1..vn` names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra<T> {
    dim: usize,
    structure: Vec<T>,
}

/// One failing triple of the Jacobi identity, with the nonzero Jacobiator.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiViolation<T> {
    pub triple: (usize, usize, usize),
    pub residual: Vector<T>,
}

impl<T: fmt::Display> fmt::Display for JacobiViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "({},{},{}) residual [", i + 1, j + 1, k + 1)?;
        for (n, x) in self.residual.0.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl<T> LieAlgebra<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &T {
        &self.structure[self.idx(i, j, k)]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> LieAlgebra<U> {
        LieAlgebra {
            dim: self.dim,
            structure: self.structure.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<LieAlgebra<U>, E> {
        Ok(LieAlgebra {
            dim: self.dim,
            structure: self.structure.iter().map(f).collect::<Result<_, _>>()?,
        })
    }
}

impl<T> AsRef<LieAlgebra<T>> for LieAlgebra<T> {
    fn as_ref(&self) -> &LieAlgebra<T> {
        self
    }
}

impl<T: Scalar> LieAlgebra<T> {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            structure: vec![T::zero(); dim * dim * dim],
        }
    }

    /// Builds an algebra from the brackets `[v_i, v_j]` with `i < j`
    /// (0-based); the rest follows by antisymmetry or is zero.
    pub fn from_brackets(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector<T>)>,
    ) -> Result<Self> {
        let mut alg = Self::abelian(dim);
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in brackets {
            for index in [i, j] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index: index + 1, dim });
                }
            }
            if i >= j {
                return Err(Error::BracketOrder(i + 1, j + 1));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if std::mem::replace(&mut seen[i * dim + j], true) {
                return Err(Error::DuplicateBracket(i + 1, j + 1));
            }
            for k in 0..dim {
                let a = alg.idx(i, j, k);
                let b = alg.idx(j, i, k);
                alg.structure[a] = v[k].clone();
                alg.structure[b] = -v[k].clone();
            }
        }
        Ok(alg)
    }

    /// Nonzero brackets `[v_i, v_j]`, `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector<T>)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.basis_bracket(i, j);
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|x| x.is_zero())
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector<T> {
        Vector(
            (0..self.dim)
                .map(|k| self.structure_constant(i, j, k).clone())
                .collect(),
        )
    }

    fn check_len(&self, v: &Vector<T>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, u: &Vector<T>, v: &Vector<T>) -> Result<Vector<T>> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &Vector<T>, v: &Vector<T>) -> Vector<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let uv = u[i].clone() * v[j].clone();
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *slot = slot.clone() + uv.clone() * c.clone();
                    }
                }
            }
        }
        Vector(out)
    }

    /// Matrix of `ad_u`; column `j` is `[u, v_j]`.
    pub fn ad_matrix(&self, u: &Vector<T>) -> Result<Matrix<T>> {
        self.check_len(u)?;
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.bracket_unchecked(u, &Vector::basis(self.dim, j)))
            .collect();
        Ok(Matrix::from_columns(&cols))
    }

    /// Matrix of the adjoint of `ad_v`; the transpose, the basis being orthonormal.
    pub fn ad_star_matrix(&self, v: &Vector<T>) -> Result<Matrix<T>> {
        Ok(self.ad_matrix(v)?.transpose())
    }

    /// Matrix of `J_u`, where `J_u v = ad*_v u`.
    pub fn j_operator_matrix(&self, u: &Vector<T>) -> Result<Matrix<T>> {
        self.check_len(u)?;
        let cols: Vec<_> = (0..self.dim)
            .map(|j| {
                self.ad_star_matrix(&Vector::basis(self.dim, j))
                    .map(|m| m.apply(u))
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&cols))
    }

    pub(crate) fn ad_basis(&self, i: usize) -> Matrix<T> {
        self.ad_matrix(&Vector::basis(self.dim, i))
            .expect("basis vector has the algebra dimension")
    }

    /// All triples `i < j < k` whose Jacobiator does not vanish.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation<T>> {
        let n = self.dim;
        let e = |i| Vector::basis(n, i);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_unchecked(&self.basis_bracket(i, j), &e(k));
                    let b = self.bracket_unchecked(&self.basis_bracket(j, k), &e(i));
                    let c = self.bracket_unchecked(&self.basis_bracket(k, i), &e(j));
                    let residual = a.add(&b).add(&c);
                    if !residual.is_zero() {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        out
    }

    /// `B(v_i, v_j) = tr(ad_{v_i} ad_{v_j})`.
    pub fn killing_form(&self) -> Matrix<T> {
        let ads: Vec<_> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        Matrix::from_fn(self.dim, |i, j| ads[i].trace_of_product(&ads[j]))
    }

    /// Coordinates `<H, v_i> = tr(ad_{v_i})`.
    pub fn mean_curvature_vector(&self) -> Vector<T> {
        Vector((0..self.dim).map(|i| self.ad_basis(i).trace()).collect())
    }
}

impl<F: Field> LieAlgebra<F> {
    /// Dimensions of `g, [g,g], [g,[g,g]], ...` down to the point where the
    /// series stops shrinking.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let n = self.dim;
        let mut current: Vec<Vec<F>> = (0..n).map(|i| Vector::<F>::basis(n, i).0).collect();
        let mut dims = vec![n];
        loop {
            let mut next: Vec<Vec<F>> = Vec::new();
            for x in 0..n {
                let ex = Vector::basis(n, x);
                for y in &current {
                    let b = self.bracket_unchecked(&ex, &Vector(y.clone()));
                    if !b.is_zero() {
                        next.push(b.0);
                    }
                }
            }
            let rank = row_reduce(&mut next);
            let last = *dims.last().expect("non-empty");
            if rank == last {
                return dims;
            }
            dims.push(rank);
            if rank == 0 {
                return dims;
            }
            current = next;
        }
    }

    /// Nilpotency step: the least `k` with `g^(k+1) = 0` (1 for abelian).
    ///
    /// A zero-dimensional algebra reports step 1.
    pub fn nilpotency_step(&self) -> Result<usize> {
        let dims = self.lower_central_series_dims();
        match dims.last() {
            Some(0) if dims.len() > 1 => Ok(dims.len() - 1),
            Some(0) => Ok(1),
            _ => Err(Error::NotNilpotentAtSample),
        }
    }
}
