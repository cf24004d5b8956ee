//! The complex structure J = X^-1 ∘ d/dx on truncated Fourier space.
//!
//! The space is spanned by (cos x, sin x, ..., cos Nx, sin Nx): mean-zero
//! functions on the circle up to frequency N, unnormalized (each basis
//! function has L2 norm^2 = pi, so the inner-product matrix is a scalar
//! multiple of the identity and orthogonality statements are plain matrix
//! statements).

use crate::cstruct::{split_pm, ComplexStructureOp};
use crate::mat::Mat;
use crate::scalar::{gqi, GaussRat};

/// Basis bookkeeping for frequencies 1..N; dimension 2N.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedFourierSpace {
    pub n: usize,
}

impl TruncatedFourierSpace {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        TruncatedFourierSpace { n }
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Index of cos(kx) in the basis, k 1-based.
    pub fn cos_idx(&self, k: usize) -> usize {
        2 * (k - 1)
    }

    /// Index of sin(kx) in the basis, k 1-based.
    pub fn sin_idx(&self, k: usize) -> usize {
        2 * (k - 1) + 1
    }
}

/// d/dx: cos kx -> -k sin kx, sin kx -> k cos kx.
pub fn derivative_matrix(space: TruncatedFourierSpace) -> Mat<GaussRat> {
    let mut d = Mat::zeros(space.dim(), space.dim());
    for k in 1..=space.n {
        d[(space.sin_idx(k), space.cos_idx(k))] = gqi(-(k as i64));
        d[(space.cos_idx(k), space.sin_idx(k))] = gqi(k as i64);
    }
    d
}

/// X: the positive square root of -d^2/dx^2; diagonal with entry k on both
/// basis vectors of frequency k.
pub fn sqrt_matrix(space: TruncatedFourierSpace) -> Mat<GaussRat> {
    let mut x = Mat::zeros(space.dim(), space.dim());
    for k in 1..=space.n {
        x[(space.cos_idx(k), space.cos_idx(k))] = gqi(k as i64);
        x[(space.sin_idx(k), space.sin_idx(k))] = gqi(k as i64);
    }
    x
}

/// J = X^-1 D; satisfies J^2 = -id exactly.
pub fn complex_structure(space: TruncatedFourierSpace) -> ComplexStructureOp<GaussRat> {
    let d = derivative_matrix(space);
    let x_inv = sqrt_matrix(space).inverse().expect("X is invertible");
    ComplexStructureOp::new(x_inv.matmul(&d)).expect("J^2 = -id")
}

/// Verification data for the action of X on the J-eigenspaces.
#[derive(Debug)]
pub struct WPmReport {
    pub dim_plus: usize,
    pub dim_minus: usize,
    /// X v = -i D v on every W+ basis vector.
    pub plus_ok: bool,
    /// X v = +i D v on every W- basis vector.
    pub minus_ok: bool,
}

/// On W± (the e^{±ikx} lines) the operator X acts as ∓ i d/dx.
pub fn w_pm_action(space: TruncatedFourierSpace) -> WPmReport {
    let d = derivative_matrix(space);
    let x = sqrt_matrix(space);
    let j = complex_structure(space);
    let (plus, minus) = split_pm(&j);
    let i = GaussRat::new(crate::scalar::rint(0), crate::scalar::rint(1));
    let check = |basis: &[Vec<GaussRat>], sign: GaussRat| {
        basis.iter().all(|v| {
            let xv = x.mul_vec(v);
            let dv = d.mul_vec(v);
            xv.iter()
                .zip(dv.iter())
                .all(|(a, b)| *a == sign.clone() * b.clone())
        })
    };
    WPmReport {
        dim_plus: plus.len(),
        dim_minus: minus.len(),
        plus_ok: check(&plus, -i.clone()),
        minus_ok: check(&minus, i),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstruct::is_orthogonal;
    use crate::cstruct::RealQuadraticSpace;
    use num_traits::Zero;

    #[test]
    fn derivative_n1() {
        let s = TruncatedFourierSpace::new(1);
        let d = derivative_matrix(s);
        // D cos x = -sin x, D sin x = cos x.
        assert_eq!(d[(1, 0)], gqi(-1));
        assert_eq!(d[(0, 1)], gqi(1));
        assert_eq!(d[(0, 0)], gqi(0));
    }

    #[test]
    fn antisymmetric_and_negative_laplacian() {
        let s = TruncatedFourierSpace::new(16);
        let d = derivative_matrix(s);
        assert_eq!(d.transpose(), d.scale(&gqi(-1)));
        let d2 = d.matmul(&d);
        for k in 1..=16usize {
            assert_eq!(d2[(s.cos_idx(k), s.cos_idx(k))], gqi(-((k * k) as i64)));
            assert_eq!(d2[(s.sin_idx(k), s.sin_idx(k))], gqi(-((k * k) as i64)));
        }
    }

    #[test]
    fn x_matrix_relations() {
        let s = TruncatedFourierSpace::new(16);
        let d = derivative_matrix(s);
        let x = sqrt_matrix(s);
        assert_eq!(x[(s.cos_idx(2), s.cos_idx(2))], gqi(2));
        assert!(x.matmul(&x).add(&d.matmul(&d)).is_zero());
        assert!(x.matmul(&d).sub(&d.matmul(&x)).is_zero());
    }

    #[test]
    fn j_on_basis() {
        let s = TruncatedFourierSpace::new(4);
        let j = complex_structure(s);
        // J cos 3x = -sin 3x.
        let mut v = vec![GaussRat::zero(); s.dim()];
        v[s.cos_idx(3)] = gqi(1);
        let jv = j.matrix().mul_vec(&v);
        assert_eq!(jv[s.sin_idx(3)], gqi(-1));
        assert!(jv.iter().enumerate().all(|(i, c)| i == s.sin_idx(3) || c.is_zero()));
    }

    #[test]
    fn j_is_orthogonal() {
        let s = TruncatedFourierSpace::new(8);
        let j = complex_structure(s);
        let space = RealQuadraticSpace::euclidean(s.dim());
        assert!(is_orthogonal(&j, &space));
    }

    #[test]
    fn w_pm_report() {
        let s = TruncatedFourierSpace::new(8);
        let r = w_pm_action(s);
        assert_eq!(r.dim_plus, 8);
        assert_eq!(r.dim_minus, 8);
        assert!(r.plus_ok);
        assert!(r.minus_ok);
    }
}
