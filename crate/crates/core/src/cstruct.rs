//! Complex structures on real scalar-product spaces: the W± split,
//! orthogonality, and the induced Hermitian form.
//!
//! Convention, fixed once for the whole crate: multiplication by i on a
//! space with complex structure J is `i w = J(w)` (not `-J(w)`).

use crate::error::Error;
use crate::mat::{normalize_first_nonzero, Mat};
use crate::scalar::Scalar;

/// Scalar field containing a square root of -1.
pub trait ComplexScalar: Scalar {
    fn i() -> Self;
}

impl ComplexScalar for crate::scalar::GaussRat {
    fn i() -> Self {
        crate::scalar::im_unit()
    }
}

/// A finite-dimensional real vector space with a symmetric, non-degenerate
/// bilinear form, given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct RealQuadraticSpace<T> {
    g: Mat<T>,
}

impl<T: Scalar> RealQuadraticSpace<T> {
    pub fn new(g: Mat<T>) -> Result<Self, Error> {
        if g.nrows() != g.ncols() || g != g.transpose() {
            return Err(Error::Invalid("scalar product matrix must be symmetric".into()));
        }
        if g.det().is_zero() {
            return Err(Error::DegenerateMetric);
        }
        Ok(RealQuadraticSpace { g })
    }

    pub fn euclidean(dim: usize) -> Self {
        RealQuadraticSpace {
            g: Mat::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn gram(&self) -> &Mat<T> {
        &self.g
    }

    /// The bilinear form g(v, w) = v^T g w (no conjugation; this is also
    /// its C-bilinear extension when the entries are complex).
    pub fn pair(&self, v: &[T], w: &[T]) -> T {
        let gw = self.g.mul_vec(w);
        v.iter()
            .zip(gw.iter())
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

/// A linear automorphism J with J^2 = -id on an even-dimensional space.
#[derive(Clone, Debug)]
pub struct ComplexStructureOp<T> {
    j: Mat<T>,
}

impl<T: Scalar> ComplexStructureOp<T> {
    pub fn new(j: Mat<T>) -> Result<Self, Error> {
        let n = j.nrows();
        if n != j.ncols() || n % 2 != 0 {
            return Err(Error::NotComplexStructure);
        }
        if !j.matmul(&j).scale(&(-T::one())).is_identity() {
            return Err(Error::NotComplexStructure);
        }
        Ok(ComplexStructureOp { j })
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.nrows()
    }
}

/// True iff J^T g J = g exactly.
pub fn is_orthogonal<T: Scalar>(
    j: &ComplexStructureOp<T>,
    space: &RealQuadraticSpace<T>,
) -> bool {
    let jm = j.matrix();
    jm.transpose().matmul(space.gram()).matmul(jm) == *space.gram()
}

/// Eigenbases of J_C for +i (W+) and -i (W-) inside the complexification.
/// Columns are scaled so the first nonzero entry is one.
pub fn split_pm<T: ComplexScalar>(
    j: &ComplexStructureOp<T>,
) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let n = j.dim();
    let half = |sign: T| {
        // kernel of (J -+ i id)
        let mut m = j.matrix().clone();
        for d in 0..n {
            m[(d, d)] = m[(d, d)].clone() - sign.clone();
        }
        let mut basis = m.kernel();
        for v in &mut basis {
            normalize_first_nonzero(v);
        }
        basis
    };
    let plus = half(T::i());
    let minus = half(-T::i());
    debug_assert_eq!(plus.len(), n / 2);
    debug_assert_eq!(minus.len(), n / 2);
    (plus, minus)
}

/// True iff the C-bilinear extension of g vanishes on all pairs from the
/// given basis (a zero-dimensional span is vacuously null).
pub fn totally_null_check<T: Scalar>(
    basis: &[Vec<T>],
    space: &RealQuadraticSpace<T>,
) -> bool {
    for v in basis {
        for w in basis {
            if !space.pair(v, w).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The Hermitian form h(w1, w2) = g(w1, w2) + i g(J w1, w2); requires J
/// orthogonal with J^2 = -id. Antilinear in the first slot under i w = J w.
pub fn hermitian_form<T: ComplexScalar>(
    space: &RealQuadraticSpace<T>,
    j: &ComplexStructureOp<T>,
    w1: &[T],
    w2: &[T],
) -> Result<T, Error> {
    if !is_orthogonal(j, space) {
        return Err(Error::NotOrthogonal);
    }
    let jw1 = j.matrix().mul_vec(w1);
    Ok(space.pair(w1, w2) + T::i() * space.pair(&jw1, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gqi, GaussRat};

    fn rot90() -> Mat<GaussRat> {
        Mat::from_rows(vec![vec![gqi(0), gqi(-1)], vec![gqi(1), gqi(0)]])
    }

    #[test]
    fn split_pm_2d() {
        // J = rotation by 90 degrees: W+ spanned by (1, -i), W- by (1, i).
        let j = ComplexStructureOp::new(rot90()).unwrap();
        let (p, m) = split_pm(&j);
        assert_eq!(p, vec![vec![gqi(1), -GaussRat::i()]]);
        assert_eq!(m, vec![vec![gqi(1), GaussRat::i()]]);
        // Eigenvalue equations hold.
        let jp = j.matrix().mul_vec(&p[0]);
        assert_eq!(jp, p[0].iter().map(|x| x * GaussRat::i()).collect::<Vec<_>>());
    }

    #[test]
    fn split_pm_4d_block() {
        let mut j4 = Mat::zeros(4, 4);
        for b in 0..2 {
            j4[(2 * b, 2 * b + 1)] = gqi(-1);
            j4[(2 * b + 1, 2 * b)] = gqi(1);
        }
        let j = ComplexStructureOp::new(j4).unwrap();
        let (p, m) = split_pm(&j);
        assert_eq!(p.len(), 2);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn minus_j_swaps_split() {
        let j = ComplexStructureOp::new(rot90()).unwrap();
        let jm = ComplexStructureOp::new(rot90().scale(&gqi(-1))).unwrap();
        let (p, m) = split_pm(&j);
        let (p2, m2) = split_pm(&jm);
        assert_eq!(p, m2);
        assert_eq!(m, p2);
    }

    #[test]
    fn reject_non_structure() {
        assert!(ComplexStructureOp::new(rot90().scale(&gqi(2))).is_err());
        assert!(ComplexStructureOp::new(Mat::<GaussRat>::identity(3)).is_err());
    }

    #[test]
    fn orthogonality() {
        let space = RealQuadraticSpace::euclidean(2);
        let j = ComplexStructureOp::new(rot90()).unwrap();
        assert!(is_orthogonal(&j, &space));
        // g = diag(1,-1): J^T g J evaluates to -g, so not orthogonal.
        let g = Mat::from_rows(vec![vec![gqi(1), gqi(0)], vec![gqi(0), gqi(-1)]]);
        let lorentz = RealQuadraticSpace::new(g).unwrap();
        assert!(!is_orthogonal(&j, &lorentz));
    }

    #[test]
    fn null_planes() {
        let space = RealQuadraticSpace::euclidean(2);
        let j = ComplexStructureOp::new(rot90()).unwrap();
        let (p, m) = split_pm(&j);
        assert!(totally_null_check(&p, &space));
        assert!(totally_null_check(&m, &space));
        assert!(!totally_null_check(&[vec![gqi(1), gqi(0)]], &space));
        assert!(totally_null_check(&[], &space));
    }

    #[test]
    fn hermitian_form_examples() {
        let space = RealQuadraticSpace::euclidean(2);
        let j = ComplexStructureOp::new(rot90()).unwrap();
        let e1 = vec![gqi(1), gqi(0)];
        let e2 = vec![gqi(0), gqi(1)];
        // h(e1, e1) = 1.
        assert_eq!(hermitian_form(&space, &j, &e1, &e1).unwrap(), gqi(1));
        // J e1 = e2, so h(e1, e2) = i.
        assert_eq!(j.matrix().mul_vec(&e1), e2);
        assert_eq!(hermitian_form(&space, &j, &e1, &e2).unwrap(), GaussRat::i());
        // Swapping arguments conjugates.
        let h12 = hermitian_form(&space, &j, &e1, &e2).unwrap();
        let h21 = hermitian_form(&space, &j, &e2, &e1).unwrap();
        assert_eq!(h12.conj(), h21);
        // Non-orthogonal J is rejected.
        let g = Mat::from_rows(vec![vec![gqi(1), gqi(0)], vec![gqi(0), gqi(-1)]]);
        let lorentz = RealQuadraticSpace::new(g).unwrap();
        assert!(hermitian_form(&lorentz, &j, &e1, &e2).is_err());
    }
}
