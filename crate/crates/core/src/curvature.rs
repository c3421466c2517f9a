//! Ricci curvature of a left-invariant metric.
//!
//! All functions read the structure constants in an orthonormal basis, so
//! the (0,2) Ricci tensor and the Ricci operator share one matrix.
//! Conventions: `tr(A B) = sum_ij A_ij B_ji`, column `j` of an operator is
//! the image of `v_{j+1}`.

use crate::liealg::{LieAlgebra, Matrix};
use crate::ratpoly::{ratio, Scalar};

/// Which Ricci formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Formula {
    /// `-1/2 tr(ad_u ad*_v) - 1/4 tr(J_u J_v)`; valid for nilpotent algebras.
    #[default]
    Nilpotent,
    /// The nilpotent terms plus `-1/2 B(u,v)` and the mean curvature term.
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData<T> {
    pub ricci_tensor: Matrix<T>,
    pub ricci_operator: Matrix<T>,
    pub scalar: T,
}

impl<T: Scalar> CurvatureData<T> {
    pub fn compute<G: AsRef<LieAlgebra<T>>>(g: &G, formula: Formula) -> Self {
        let ricci_tensor = match formula {
            Formula::Nilpotent => ricci_tensor_nilpotent(g),
            Formula::General => ricci_tensor_general(g),
        };
        let scalar = ricci_tensor.trace();
        Self {
            ricci_operator: ricci_tensor.clone(),
            ricci_tensor,
            scalar,
        }
    }
}

fn half<T: Scalar>() -> T {
    T::from_rational(&ratio(1, 2))
}

fn quarter<T: Scalar>() -> T {
    T::from_rational(&ratio(1, 4))
}

/// `ric(v_i, v_j) = -1/2 tr(ad_i ad*_j) - 1/4 tr(J_i J_j)`.
pub fn ricci_tensor_nilpotent<T: Scalar, G: AsRef<LieAlgebra<T>>>(g: &G) -> Matrix<T> {
    let g = g.as_ref();
    let n = g.dim();
    let ads: Vec<_> = (0..n).map(|i| g.ad_basis(i)).collect();
    let ad_stars: Vec<_> = ads.iter().map(Matrix::transpose).collect();
    // column j of J_{v_i} is ad*_{v_j} v_i, i.e. row i of ad_{v_j}
    let js: Vec<Matrix<T>> = (0..n)
        .map(|i| Matrix::from_fn(n, |r, j| ads[j][(i, r)].clone()))
        .collect();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let a = ads[i].trace_of_product(&ad_stars[j]);
            let b = js[i].trace_of_product(&js[j]);
            let v = -(half::<T>() * a) - quarter::<T>() * b;
            out[(j, i)] = v.clone();
            out[(i, j)] = v;
        }
    }
    out
}

/// Four-term formula with the Killing form `B` and mean curvature vector `H`:
/// `-1/2 B(u,v) - 1/2 tr(ad_u ad*_v) - 1/4 tr(J_u J_v) - 1/2 (<ad_H u, v> + <ad_H v, u>)`.
pub fn ricci_tensor_general<T: Scalar, G: AsRef<LieAlgebra<T>>>(g: &G) -> Matrix<T> {
    let g = g.as_ref();
    let n = g.dim();
    let killing = g.killing_form();
    let h = g.mean_curvature_vector();
    let ad_h = g
        .ad_matrix(&h)
        .expect("mean curvature vector has the algebra dimension");
    let nil = ricci_tensor_nilpotent(g);
    Matrix::from_fn(n, |i, j| {
        // <ad_H v_i, v_j> = (ad_H)_{j i}
        let mixed = ad_h[(j, i)].clone() + ad_h[(i, j)].clone();
        nil[(i, j)].clone() - half::<T>() * killing[(i, j)].clone() - half::<T>() * mixed
    })
}

/// The Ricci operator; the same matrix as the Ricci tensor in an orthonormal basis.
pub fn ricci_operator<T: Scalar, G: AsRef<LieAlgebra<T>>>(g: &G) -> Matrix<T> {
    ricci_tensor_nilpotent(g)
}

pub fn scalar_curvature<T: Scalar, G: AsRef<LieAlgebra<T>>>(g: &G) -> T {
    ricci_operator(g).trace()
}
