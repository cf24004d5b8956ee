//! CR structures in a polynomial chart, optical (Robinson-Trautman style)
//! metrics, totally null plane bundles, null 2-forms with their duality
//! signs, the spinor correspondence at a point, and the gradient-cross
//! conjecture verifier.
//!
//! Charts, fixed here: the CR chart has coordinates (u, x, y) with
//! z = x + iy; the optical 4-chart appends r. The verifier works on
//! (x, y, u) with the flat 3-space cross product.

use crate::error::Error;
use crate::forms::{contract, lie_bracket, membership_in_span, PolyForm, PolyVField, SymTensor2};
use crate::mat::Mat;
use crate::poly::{coords, Poly};
use crate::scalar::{gqi, im_unit, rat, rat_to_f64, GaussRat, Rat, Scalar};
use crate::spinor::{Chirality, GammaRep};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub fn cr_coords() -> Vec<String> {
    coords(&["u", "x", "y"])
}

pub fn chart_coords() -> Vec<String> {
    coords(&["u", "x", "y", "r"])
}

/// A CR structure on the 3-chart, given by its L-function.
#[derive(Clone, Debug)]
pub struct CRData {
    pub l: Poly,
}

impl CRData {
    pub fn new(l: Poly) -> Result<Self, Error> {
        if l.vars() != cr_coords() {
            return Err(Error::CoordinateMismatch);
        }
        Ok(CRData { l })
    }
}

/// An adapted coframe (lambda, mu) with the antiholomorphic field Z.
#[derive(Clone, Debug)]
pub struct CRFrame {
    pub lambda: PolyForm,
    pub mu: PolyForm,
    pub z: PolyVField,
}

/// dz = dx + i dy on the CR chart.
pub fn dz_form() -> PolyForm {
    let v = cr_coords();
    PolyForm::d_coord(&v, "x").add(&PolyForm::d_coord(&v, "y").scale(&im_unit()))
}

impl CRFrame {
    /// Frame invariants: Z annihilates lambda and mu, pairs invertibly
    /// with mu-bar (nonzero, exactly one after `cr_frame`), lambda is
    /// real, and lambda, mu, mu-bar span the cotangent space.
    pub fn validate(&self) -> Result<(), Error> {
        let zl = contract(&self.z, &self.lambda);
        let zm = contract(&self.z, &self.mu);
        if !zl.is_zero() || !zm.is_zero() {
            return Err(Error::Invalid("Z does not annihilate lambda, mu".into()));
        }
        let zmb = contract(&self.z, &self.mu.conj());
        if zmb.is_zero() {
            return Err(Error::Invalid("Z pairs to zero with mu-bar".into()));
        }
        if self.lambda.coeffs().values().any(|p| !p.is_real()) {
            return Err(Error::Invalid("lambda is not real".into()));
        }
        let vol = self.lambda.wedge(&self.mu).wedge(&self.mu.conj());
        if vol.is_zero() {
            return Err(Error::Invalid("lambda ^ mu ^ mu-bar vanishes".into()));
        }
        Ok(())
    }
}

/// The adapted frame of an L-function:
/// lambda = du + conj(L) dz + L dz-bar, mu = dz, Z = d/dz-bar - L d/du.
pub fn cr_frame(data: &CRData) -> CRFrame {
    let v = cr_coords();
    let du = PolyForm::d_coord(&v, "u");
    let dz = dz_form();
    let lambda = du
        .add(&dz.scale_poly(&data.l.conj()))
        .add(&dz.conj().scale_poly(&data.l));
    let half = GaussRat::new(rat(1, 2), rat(0, 1));
    let ihalf = im_unit() * half.clone();
    let z = PolyVField::new(
        &v,
        vec![
            data.l.neg(),
            Poly::constant(&v, half),
            Poly::constant(&v, ihalf),
        ],
    );
    let frame = CRFrame {
        lambda,
        mu: dz,
        z,
    };
    debug_assert!(frame.validate().is_ok());
    frame
}

/// The residual Zf = d/dz-bar f - L d/du f; zero iff f is a CR function.
pub fn cr_function_check(data: &CRData, f: &Poly) -> Poly {
    cr_frame(data).z.apply(f)
}

#[derive(Debug)]
pub struct SectionReport {
    pub closed: bool,
    pub z_annihilated: bool,
}

/// F' = f(z_fn, w_fn) dz_fn ^ dw_fn for CR functions z_fn, w_fn and a
/// polynomial f in two formal arguments.
pub fn canonical_section(
    data: &CRData,
    z_fn: &Poly,
    w_fn: &Poly,
    f: &Poly,
) -> Result<(PolyForm, SectionReport), Error> {
    if !cr_function_check(data, z_fn).is_zero() || !cr_function_check(data, w_fn).is_zero() {
        return Err(Error::NotCrFunction);
    }
    let dz = PolyForm::scalar(z_fn.clone()).d();
    let dw = PolyForm::scalar(w_fn.clone()).d();
    let area = dz.wedge(&dw);
    if area.is_zero() {
        return Err(Error::Invalid("dz_fn ^ dw_fn vanishes identically".into()));
    }
    let coeff = f.compose(&[z_fn.clone(), w_fn.clone()]);
    let fprime = area.scale_poly(&coeff);
    let report = SectionReport {
        closed: fprime.d().is_zero(),
        z_annihilated: contract(&cr_frame(data).z, &fprime).is_zero(),
    };
    Ok((fprime, report))
}

#[derive(Debug)]
pub struct FrameChangeReport {
    /// new lambda ^ mu equals (a b) * old lambda ^ mu.
    pub direction_invariant: bool,
}

/// Frame change lambda -> a lambda, mu -> b mu + c lambda, with a real.
/// Z is unchanged; it still annihilates the new frame and pairs with the
/// new mu-bar through conj(b), which must not vanish identically.
pub fn frame_change(
    frame: &CRFrame,
    a: &Poly,
    b: &Poly,
    c: &Poly,
) -> Result<(CRFrame, FrameChangeReport), Error> {
    if a.is_zero() {
        return Err(Error::ZeroFrameCoefficient("a"));
    }
    if b.is_zero() {
        return Err(Error::ZeroFrameCoefficient("b"));
    }
    if !a.is_real() {
        return Err(Error::Invalid("a must be real".into()));
    }
    let lambda = frame.lambda.scale_poly(a);
    let mu = frame.mu.scale_poly(b).add(&frame.lambda.scale_poly(c));
    let new = CRFrame {
        lambda,
        mu,
        z: frame.z.clone(),
    };
    new.validate()?;
    let old_dir = frame.lambda.wedge(&frame.mu);
    let new_dir = new.lambda.wedge(&new.mu);
    let scaled = old_dir.scale_poly(&a.mul(b));
    Ok((
        new,
        FrameChangeReport {
            direction_invariant: new_dir == scaled,
        },
    ))
}

/// An optical metric on the 4-chart with its ray field.
#[derive(Clone, Debug)]
pub struct OpticalChart {
    pub metric: SymTensor2,
    pub k: PolyVField,
    pub lambda: PolyForm,
    pub mu: PolyForm,
}

fn lift_poly(p: &Poly) -> Poly {
    let ch = chart_coords();
    Poly::from_terms(
        &ch,
        p.terms().iter().map(|(e, c)| {
            let mut e2 = e.clone();
            e2.push(0);
            (e2, c.clone())
        }),
    )
}

fn lift_form(f: &PolyForm) -> PolyForm {
    let ch = chart_coords();
    let mut out = PolyForm::zero(&ch, f.degree());
    for (k, p) in f.coeffs() {
        out.add_term(k.clone(), lift_poly(p));
    }
    out
}

fn lift_vf(v: &PolyVField) -> PolyVField {
    let ch = chart_coords();
    let mut comps: Vec<Poly> = v.components().iter().map(lift_poly).collect();
    comps.push(Poly::zero(&ch));
    PolyVField::new(&ch, comps)
}

/// g = P^2 (mu (x)_sym mu-bar) + lambda (x)_sym xi on the 4-chart, with
/// k = d/dr. P and xi live on the 4-chart; lambda, mu come from the CR
/// frame and are lifted.
pub fn rt_metric(data: &CRData, p: &Poly, xi: &PolyForm) -> Result<OpticalChart, Error> {
    let ch = chart_coords();
    if p.vars() != ch || xi.vars() != ch || xi.degree() != 1 {
        return Err(Error::CoordinateMismatch);
    }
    let frame = cr_frame(data);
    let lambda = lift_form(&frame.lambda);
    let mu = lift_form(&frame.mu);
    let vol = mu
        .wedge(&mu.conj())
        .wedge(&lambda)
        .wedge(xi)
        .scale_poly(&p.pow(2));
    if vol.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    let metric = SymTensor2::from_symmetrized_pairs(
        &ch,
        &[
            (p.pow(2), mu.clone(), mu.conj()),
            (Poly::one(&ch), lambda.clone(), xi.clone()),
        ],
    )?;
    let k = PolyVField::coordinate(&ch, "r");
    // The ray field is null and its metric dual points along lambda.
    if !metric.pair(&k, &k).is_zero() {
        return Err(Error::Invalid("ray field is not null".into()));
    }
    if !metric.lower(&k).wedge(&lambda).is_zero() {
        return Err(Error::Invalid("g(k) is not proportional to lambda".into()));
    }
    Ok(OpticalChart {
        metric,
        k,
        lambda,
        mu,
    })
}

/// A complex 2-plane spanned by two fields, totally null for an ambient
/// metric.
#[derive(Clone, Debug)]
pub struct NullPlaneData {
    pub span: [PolyVField; 2],
}

/// All pairwise g-products of the span vanish identically.
pub fn totally_null(span: &[PolyVField; 2], g: &SymTensor2) -> bool {
    for a in span {
        for b in span {
            if !g.pair(a, b).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The plane bundle {d/dr, lift of Z} of an optical chart.
pub fn null_plane_from_chart(chart: &OpticalChart, data: &CRData) -> Result<NullPlaneData, Error> {
    let zhat = lift_vf(&cr_frame(data).z);
    let span = [chart.k.clone(), zhat];
    if !totally_null(&span, &chart.metric) {
        return Err(Error::NotTotallyNull("chart plane bundle".into()));
    }
    Ok(NullPlaneData { span })
}

/// Involutivity [Gamma(N), Gamma(N)] inside Gamma(N).
pub fn integrability_check(n: &NullPlaneData) -> bool {
    let br = lie_bracket(&n.span[0], &n.span[1]);
    membership_in_span(&br, &n.span)
}

/// Report for the pointwise duality of a null 2-form.
#[derive(Debug)]
pub struct DualityReport {
    /// The contracted epsilon image of F is proportional to F.
    pub star_proportional: bool,
    /// With s = |det g| at the sample point and W = w F, the identity
    /// star F = sign * iota * F forces s w^2 = -1 (iota = i) or
    /// s w^2 = +1 (iota = 1); true when the matching identity holds.
    pub norm_ok: bool,
    /// iota = i at the sample point (Lorentzian-type case).
    pub iota_imaginary: bool,
    /// The sign in star F = ± iota F.
    pub sign: i8,
    /// F ^ conj(F) vanishes identically as a polynomial form.
    pub f_wedge_fbar_zero: bool,
}

fn perm_sign(p: [usize; 4]) -> i32 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// The matrix of a constant 2-form from its sorted-key coefficients.
fn two_form_matrix(coeffs: &BTreeMap<Vec<u8>, GaussRat>) -> Mat<GaussRat> {
    let mut f = Mat::zeros(4, 4);
    for (k, c) in coeffs {
        let (i, j) = (k[0] as usize, k[1] as usize);
        f[(i, j)] = c.clone();
        f[(j, i)] = -c.clone();
    }
    f
}

/// Pointwise contracted-epsilon dual of a constant 2-form with covariant
/// components: W_ij = o (1/2) eps_{ijkl} F^{kl}, indices raised by g^{-1};
/// the true Hodge dual is sqrt|det g| * W. The orientation factor
/// o = -sign(det g) fixes the chart orientation per conformal class: it is
/// the identity on Lorentzian charts and reverses definite and neutral
/// ones, which is exactly the choice making positive-chirality spinor
/// planes self-dual in every four-dimensional signature at once.
pub fn epsilon_dual(
    coeffs: &BTreeMap<Vec<u8>, GaussRat>,
    g: &Mat<GaussRat>,
) -> Option<Mat<GaussRat>> {
    let f = two_form_matrix(coeffs);
    let det = g.det();
    let orient = if det.re < Rat::zero() {
        GaussRat::one()
    } else {
        -GaussRat::one()
    };
    let ginv = g.inverse()?;
    let fup = ginv.matmul(&f).matmul(&ginv);
    let mut w = Mat::zeros(4, 4);
    let half = GaussRat::new(rat(1, 2), rat(0, 1));
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let mut acc = GaussRat::zero();
            for k in 0..4 {
                for l in 0..4 {
                    if k == l || k == i || k == j || l == i || l == j {
                        continue;
                    }
                    let s = perm_sign([i, j, k, l]);
                    let term = fup[(k, l)].clone();
                    acc = if s > 0 { acc + term } else { acc - term };
                }
            }
            w[(i, j)] = orient.clone() * half.clone() * acc;
        }
    }
    Some(w)
}

/// Pick a rational sample point where the metric is invertible and the
/// form does not vanish.
fn sample_point(g: &SymTensor2, f: &PolyForm) -> Option<Vec<GaussRat>> {
    let candidates: Vec<Vec<i64>> = vec![
        vec![0, 0, 0, 0],
        vec![1, 1, 1, 1],
        vec![1, 2, 3, 4],
        vec![2, -1, 1, 3],
        vec![-1, 2, -2, 1],
        vec![3, 1, -1, 2],
    ];
    for c in candidates {
        let pt: Vec<GaussRat> = c.iter().map(|&v| gqi(v)).collect();
        let gm = g.eval(&pt);
        if gm.det().is_zero() {
            continue;
        }
        if f.eval_coeffs(&pt).is_empty() {
            continue;
        }
        return Some(pt);
    }
    None
}

/// F = g(n1) ^ g(n2) with its duality report at a generic sample point.
pub fn null_2form(
    n: &NullPlaneData,
    g: &SymTensor2,
) -> Result<(PolyForm, DualityReport), Error> {
    if !totally_null(&n.span, g) {
        return Err(Error::NotTotallyNull("null_2form input".into()));
    }
    let f = g.lower(&n.span[0]).wedge(&g.lower(&n.span[1]));
    if f.is_zero() {
        return Err(Error::Invalid("degenerate span: F = 0".into()));
    }
    let pt = sample_point(g, &f).ok_or(Error::DegenerateMetric)?;
    let gm = g.eval(&pt);
    let fpt = f.eval_coeffs(&pt);
    let w = epsilon_dual(&fpt, &gm).ok_or(Error::DegenerateMetric)?;
    let fm = two_form_matrix(&fpt);
    let ratio = w.proportionality(&fm);
    let (star_proportional, norm_ok, iota_imaginary, sign) = match ratio {
        None => (false, false, false, 0),
        Some(c) => {
            let det = gm.det();
            debug_assert!(det.is_real());
            let s = if det.re >= Rat::zero() {
                det.re.clone()
            } else {
                -det.re.clone()
            };
            let c2s = c.clone() * c.clone() * GaussRat::new(s, Rat::zero());
            if c.is_real() {
                (true, c2s == GaussRat::one(), false, if c.re > Rat::zero() { 1 } else { -1 })
            } else if c.re.is_zero() {
                (
                    true,
                    c2s == -GaussRat::one(),
                    true,
                    if c.im > Rat::zero() { 1 } else { -1 },
                )
            } else {
                (true, false, false, 0)
            }
        }
    };
    let report = DualityReport {
        star_proportional,
        norm_ok,
        iota_imaginary,
        sign,
        f_wedge_fbar_zero: f.wedge(&f.conj()).is_zero(),
    };
    Ok((f, report))
}

/// Constant diagonal metric of a (k,l) signature on generic 4-chart
/// coordinates.
pub fn constant_diag_metric(k: u32, l: u32) -> SymTensor2 {
    assert_eq!(k + l, 4);
    let v = coords(&["x1", "x2", "x3", "x4"]);
    let mut entries = vec![vec![Poly::zero(&v); 4]; 4];
    for (i, row) in entries.iter_mut().enumerate() {
        let sign = if (i as u32) < k { gqi(1) } else { gqi(-1) };
        row[i] = Poly::constant(&v, sign);
    }
    SymTensor2::new(&v, entries).expect("diagonal")
}

/// N = {n : gamma(n) phi = 0} for a chirality-pure spinor in a dim-4
/// representation, as constant fields on the generic 4-chart.
pub fn null_plane_from_spinor(
    rep: &GammaRep,
    phi: &[GaussRat],
) -> Result<NullPlaneData, Error> {
    if rep.sig().dim() != 4 {
        return Err(Error::UnsupportedSignature {
            k: rep.sig().k(),
            l: rep.sig().l(),
        });
    }
    if phi.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroSpinor);
    }
    if rep.chirality_of(phi) == Chirality::Mixed {
        return Err(Error::MixedChirality);
    }
    // Columns gamma_mu phi; the kernel of the 4x4 system is N.
    let cols: Vec<Vec<GaussRat>> = rep.gammas().iter().map(|g| g.mul_vec(phi)).collect();
    let a = Mat::from_fn(rep.spinor_dim(), 4, |i, j| cols[j][i].clone());
    let kernel = a.kernel();
    if kernel.len() != 2 {
        return Err(Error::KernelDimension { got: kernel.len() });
    }
    let v = coords(&["x1", "x2", "x3", "x4"]);
    let fields: Vec<PolyVField> = kernel
        .iter()
        .map(|vec| {
            PolyVField::new(
                &v,
                vec.iter().map(|c| Poly::constant(&v, c.clone())).collect(),
            )
        })
        .collect();
    let span = [fields[0].clone(), fields[1].clone()];
    let g = constant_diag_metric(rep.sig().k(), rep.sig().l());
    if !totally_null(&span, &g) {
        return Err(Error::NotTotallyNull("spinor plane".into()));
    }
    Ok(NullPlaneData { span })
}

/// Floating signature of the metric at a point: (positive, negative)
/// eigenvalue counts, requiring every eigenvalue to clear the tolerance.
pub fn metric_signature_at(g: &SymTensor2, point: &[GaussRat], tol: f64) -> Option<(usize, usize)> {
    let gm = g.eval(point);
    let n = gm.nrows();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = &gm[(i, j)];
            if !e.is_real() {
                return None;
            }
            a[(i, j)] = rat_to_f64(&e.re);
        }
    }
    let eig = nalgebra::SymmetricEigen::new(a);
    let mut pos = 0;
    let mut neg = 0;
    for v in eig.eigenvalues.iter() {
        if *v > tol {
            pos += 1;
        } else if *v < -tol {
            neg += 1;
        } else {
            return None;
        }
    }
    Some((pos, neg))
}

/// Flat 3-space gradient on (x, y, u).
pub fn grad3(f: &Poly) -> PolyVField {
    let v = f.vars().to_vec();
    assert_eq!(v.len(), 3);
    PolyVField::new(&v, (0..3).map(|i| f.diff(i)).collect())
}

/// Flat 3-space cross product.
pub fn cross3(a: &PolyVField, b: &PolyVField) -> PolyVField {
    assert_eq!(a.vars(), b.vars());
    let (a1, a2, a3) = (&a.components()[0], &a.components()[1], &a.components()[2]);
    let (b1, b2, b3) = (&b.components()[0], &b.components()[1], &b.components()[2]);
    PolyVField::new(
        a.vars(),
        vec![
            a2.mul(b3).sub(&a3.mul(b2)),
            a3.mul(b1).sub(&a1.mul(b3)),
            a1.mul(b2).sub(&a2.mul(b1)),
        ],
    )
}

pub fn div3(f: &PolyVField) -> Poly {
    let mut acc = Poly::zero(f.vars());
    for (i, c) in f.components().iter().enumerate() {
        acc = acc.add(&c.diff(i));
    }
    acc
}

#[derive(Debug)]
pub struct ConjectureReport {
    pub div_zero: bool,
    pub cross_conj_nonzero: bool,
    pub matches_gradients: bool,
}

impl ConjectureReport {
    pub fn verified(&self) -> bool {
        self.div_zero && self.cross_conj_nonzero && self.matches_gradients
    }
}

/// Verify a candidate triple for F = grad z x grad w with div F = 0 and
/// F x conj(F) not identically zero. The conjecture itself is not
/// decided; only the given candidate is checked.
pub fn conjecture_verify(f: &PolyVField, z: &Poly, w: &Poly) -> ConjectureReport {
    let g = cross3(&grad3(z), &grad3(w));
    ConjectureReport {
        div_zero: div3(f).is_zero(),
        cross_conj_nonzero: !cross3(f, &f.conj()).is_zero(),
        matches_gradients: f.sub(&g).is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::random_poly;
    use crate::spinor::{build_gamma, normalize_pair, weyl_split};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn heisenberg() -> CRData {
        // L = -iz = -i(x + iy) = y - ix.
        let v = cr_coords();
        let x = Poly::var(&v, "x");
        let y = Poly::var(&v, "y");
        CRData::new(y.sub(&x.scale(&im_unit()))).unwrap()
    }

    fn trivial() -> CRData {
        CRData::new(Poly::zero(&cr_coords())).unwrap()
    }

    fn w_heisenberg() -> Poly {
        // w = u - i z z-bar = u - i(x^2 + y^2).
        let v = cr_coords();
        let u = Poly::var(&v, "u");
        let x = Poly::var(&v, "x");
        let y = Poly::var(&v, "y");
        u.sub(&x.pow(2).add(&y.pow(2)).scale(&im_unit()))
    }

    fn z_coord() -> Poly {
        let v = cr_coords();
        Poly::var(&v, "x").add(&Poly::var(&v, "y").scale(&im_unit()))
    }

    #[test]
    fn frames_and_nondegeneracy() {
        let f0 = cr_frame(&trivial());
        f0.validate().unwrap();
        assert!(f0.lambda.wedge(&f0.lambda.d()).is_zero(), "L = 0 is embeddable-flat");
        let fh = cr_frame(&heisenberg());
        fh.validate().unwrap();
        assert!(
            !fh.lambda.wedge(&fh.lambda.d()).is_zero(),
            "Heisenberg contact form"
        );
        // Z pairs to exactly one with mu-bar in the canonical frame.
        let one = contract(&fh.z, &fh.mu.conj());
        assert_eq!(one.coeff(&[]), Poly::one(&cr_coords()));
    }

    #[test]
    fn cr_functions() {
        assert!(cr_function_check(&trivial(), &z_coord()).is_zero());
        assert!(cr_function_check(&heisenberg(), &z_coord()).is_zero());
        assert!(cr_function_check(&heisenberg(), &w_heisenberg()).is_zero());
        let zbar = z_coord().conj();
        let res = cr_function_check(&heisenberg(), &zbar);
        assert_eq!(res, Poly::one(&cr_coords()));
    }

    #[test]
    fn canonical_sections() {
        let formal = coords(&["s", "t"]);
        let one = Poly::one(&formal);
        // Trivial chart: F' = dz ^ du.
        let u = Poly::var(&cr_coords(), "u");
        let (f0, r0) = canonical_section(&trivial(), &z_coord(), &u, &one).unwrap();
        assert!(r0.closed && r0.z_annihilated);
        assert!(!f0.is_zero());
        // Heisenberg with w and f = 1, then f = s^2.
        let (_, r1) =
            canonical_section(&heisenberg(), &z_coord(), &w_heisenberg(), &one).unwrap();
        assert!(r1.closed && r1.z_annihilated);
        let s2 = Poly::var(&formal, "s").pow(2);
        let (_, r2) =
            canonical_section(&heisenberg(), &z_coord(), &w_heisenberg(), &s2).unwrap();
        assert!(r2.closed && r2.z_annihilated);
        // Non-CR input rejected.
        let err = canonical_section(&heisenberg(), &z_coord().conj(), &u, &one);
        assert!(matches!(err, Err(Error::NotCrFunction)));
    }

    #[test]
    fn frame_changes() {
        let v = cr_coords();
        let fh = cr_frame(&heisenberg());
        let one = Poly::one(&v);
        let (same, r) = frame_change(&fh, &one, &one, &Poly::zero(&v)).unwrap();
        assert!(r.direction_invariant);
        assert_eq!(same.lambda, fh.lambda);
        // a = 2, b = i: lambda ^ mu scales by 2i.
        let two = Poly::constant(&v, gqi(2));
        let iconst = Poly::constant(&v, im_unit());
        let (_, r2) = frame_change(&fh, &two, &iconst, &Poly::zero(&v)).unwrap();
        assert!(r2.direction_invariant);
        // c-term wedges away.
        let (_, r3) = frame_change(&fh, &one, &one, &z_coord()).unwrap();
        assert!(r3.direction_invariant);
        assert!(frame_change(&fh, &Poly::zero(&v), &one, &one).is_err());
    }

    fn dr() -> PolyForm {
        PolyForm::d_coord(&chart_coords(), "r")
    }

    #[test]
    fn rt_charts() {
        let ch = chart_coords();
        let p1 = Poly::one(&ch);
        let flat = rt_metric(&trivial(), &p1, &dr()).unwrap();
        assert!(flat.metric.pair(&flat.k, &flat.k).is_zero());
        let heis = rt_metric(&heisenberg(), &p1, &dr()).unwrap();
        assert!(heis.metric.pair(&heis.k, &heis.k).is_zero());
        // Degenerate: xi = du coincides with lambda when L = 0.
        let du = PolyForm::d_coord(&ch, "u");
        assert!(matches!(
            rt_metric(&trivial(), &p1, &du),
            Err(Error::DegenerateVolume)
        ));
        // Lorentzian signature at sample points.
        let pts = [
            vec![gqi(0), gqi(0), gqi(0), gqi(1)],
            vec![gqi(1), gqi(2), gqi(-1), gqi(1)],
        ];
        for pt in &pts {
            assert_eq!(metric_signature_at(&heis.metric, pt, 1e-9), Some((3, 1)));
        }
    }

    #[test]
    fn chart_null_planes_and_integrability() {
        let ch = chart_coords();
        let p1 = Poly::one(&ch);
        for data in [trivial(), heisenberg()] {
            let chart = rt_metric(&data, &p1, &dr()).unwrap();
            let n = null_plane_from_chart(&chart, &data).unwrap();
            assert!(integrability_check(&n));
            // Perturbing the span with d/du breaks nullity.
            let bad = [
                n.span[0].clone(),
                n.span[1].add(&PolyVField::coordinate(&ch, "u")),
            ];
            assert!(!totally_null(&bad, &chart.metric));
        }
        // A non-involutive pair.
        let v = coords(&["x", "y", "u"]);
        let a = PolyVField::coordinate(&v, "x")
            .add(&PolyVField::coordinate(&v, "y").scale_poly(&Poly::var(&v, "u")));
        let b = PolyVField::coordinate(&v, "u");
        let n = NullPlaneData { span: [a, b] };
        assert!(!integrability_check(&n));
    }

    #[test]
    fn random_rt_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let ch = chart_coords();
        let p1 = Poly::one(&ch);
        for _ in 0..20 {
            let l = random_poly(&mut rng, &cr_coords(), 3, 3);
            let data = CRData::new(l).unwrap();
            cr_frame(&data).validate().unwrap();
            let chart = rt_metric(&data, &p1, &dr()).unwrap();
            let n = null_plane_from_chart(&chart, &data).unwrap();
            assert!(integrability_check(&n));
        }
    }

    #[test]
    fn rt_null_2form_duality() {
        let ch = chart_coords();
        let p1 = Poly::one(&ch);
        let data = heisenberg();
        let chart = rt_metric(&data, &p1, &dr()).unwrap();
        let n = null_plane_from_chart(&chart, &data).unwrap();
        let (_f, report) = null_2form(&n, &chart.metric).unwrap();
        assert!(report.star_proportional, "{report:?}");
        assert!(report.norm_ok, "{report:?}");
        assert!(report.iota_imaginary);
        assert!(report.f_wedge_fbar_zero, "Lorentzian F ^ F-bar = 0");
    }

    #[test]
    fn epsilon_dual_is_an_exact_involution() {
        // Unit-diagonal charts have |det g| = 1, so W is the full dual and
        // W(W(F)) = sign(det g) F on every 2-form, in every signature.
        for (k, l) in [(4u32, 0u32), (3, 1), (2, 2), (1, 3), (0, 4)] {
            let g = constant_diag_metric(k, l);
            let gm = g.eval(&[gqi(0), gqi(0), gqi(0), gqi(0)]);
            let sign = gqi(if l % 2 == 1 { -1 } else { 1 });
            for i in 0..4u8 {
                for j in (i + 1)..4u8 {
                    let mut coeffs = BTreeMap::new();
                    coeffs.insert(vec![i, j], GaussRat::new(rat(2, 3), rat(1, 5)));
                    let w = epsilon_dual(&coeffs, &gm).unwrap();
                    let mut wc = BTreeMap::new();
                    for a in 0..4u8 {
                        for b in (a + 1)..4u8 {
                            let c = w[(a as usize, b as usize)].clone();
                            if !c.is_zero() {
                                wc.insert(vec![a, b], c);
                            }
                        }
                    }
                    let ww = epsilon_dual(&wc, &gm).unwrap();
                    for a in 0..4u8 {
                        for b in (a + 1)..4u8 {
                            let orig = coeffs
                                .get(&vec![a, b])
                                .cloned()
                                .unwrap_or_else(GaussRat::zero);
                            assert_eq!(
                                ww[(a as usize, b as usize)],
                                sign.clone() * orig,
                                "({k},{l}) {i}{j}->{a}{b}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_dual_matches_volume_star_definite() {
        // Raising indices is trivial for (4,0), so the dual agrees with
        // left multiplication by the volume element blade by blade there.
        use crate::clifford::{hodge_star, ExteriorElement, Signature};
        let sig = Signature::new(4, 0).unwrap();
        let g = constant_diag_metric(4, 0);
        let gm = g.eval(&[gqi(0), gqi(0), gqi(0), gqi(0)]);
        for i in 0..4u8 {
            for j in (i + 1)..4u8 {
                let mut coeffs = BTreeMap::new();
                coeffs.insert(vec![i, j], GaussRat::one());
                let w = epsilon_dual(&coeffs, &gm).unwrap();
                let blade = (1u16 << i) | (1u16 << j);
                let ext: ExteriorElement<GaussRat> =
                    ExteriorElement::from_terms(sig, [(blade, GaussRat::one())]);
                let star = hodge_star(&ext);
                for a in 0..4u8 {
                    for b in (a + 1)..4u8 {
                        let sb = (1u16 << a) | (1u16 << b);
                        assert_eq!(
                            w[(a as usize, b as usize)],
                            star.coeff(sb),
                            "{i}{j}->{a}{b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spinor_planes_by_signature() {
        // (3,1): chirality sign of phi matches the duality sign of F.
        let rep = build_gamma(3, 1).unwrap();
        let g = constant_diag_metric(3, 1);
        let (plus, minus) = weyl_split(&rep);
        let mut signs = Vec::new();
        for (basis, chir) in [(plus, 1i8), (minus, -1i8)] {
            let n = null_plane_from_spinor(&rep, &basis[0]).unwrap();
            let (_f, report) = null_2form(&n, &g).unwrap();
            assert!(report.star_proportional && report.norm_ok, "{report:?}");
            assert!(report.iota_imaginary);
            assert!(report.f_wedge_fbar_zero);
            signs.push((chir, report.sign));
        }
        assert_eq!(signs[0].1, signs[0].0);
        assert_eq!(signs[1].1, signs[1].0);
    }

    #[test]
    fn euclidean_spinor_plane() {
        let rep = build_gamma(4, 0).unwrap();
        let g = constant_diag_metric(4, 0);
        let (plus, _) = weyl_split(&rep);
        let n = null_plane_from_spinor(&rep, &plus[0]).unwrap();
        let (_f, report) = null_2form(&n, &g).unwrap();
        assert!(report.star_proportional && report.norm_ok, "{report:?}");
        assert!(!report.iota_imaginary, "definite signature has iota = 1");
        assert!(!report.f_wedge_fbar_zero, "N and conj(N) intersect trivially");
    }

    #[test]
    fn neutral_majorana_plane() {
        // (2,2): pick a Weyl spinor with <B phi_c, phi> = 0; N = conj(N).
        let rep = build_gamma(2, 2).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let (plus, _) = weyl_split(&rep);
        let mut found = false;
        for phi in &plus {
            let phic = crate::spinor::charge_conjugate(&rep, &pair, phi);
            let bphic = pair.b.mul_vec(&phic.components);
            let pairing: GaussRat = bphic
                .iter()
                .zip(phi.iter())
                .map(|(a, b)| a.clone() * b.clone())
                .fold(GaussRat::zero(), |acc, t| acc + t);
            if !pairing.is_zero() {
                continue;
            }
            found = true;
            let n = null_plane_from_spinor(&rep, phi).unwrap();
            // Real span: conjugates stay inside.
            let conj0 = n.span[0].conj();
            let conj1 = n.span[1].conj();
            assert!(membership_in_span(&conj0, &n.span));
            assert!(membership_in_span(&conj1, &n.span));
        }
        assert!(found, "a null-pairing Weyl spinor exists in (2,2)");
    }

    #[test]
    fn conjecture_examples() {
        let v = coords(&["x", "y", "u"]);
        let z = Poly::var(&v, "x").add(&Poly::var(&v, "y").scale(&im_unit()));
        let w = Poly::var(&v, "u");
        let f = PolyVField::new(
            &v,
            vec![
                Poly::constant(&v, im_unit()),
                Poly::constant(&v, gqi(-1)),
                Poly::zero(&v),
            ],
        );
        let report = conjecture_verify(&f, &z, &w);
        assert!(report.div_zero && report.cross_conj_nonzero && report.matches_gradients);
        assert!(report.verified());
        // Heisenberg image.
        let zz = Poly::var(&v, "x").pow(2).add(&Poly::var(&v, "y").pow(2));
        let wh = Poly::var(&v, "u").sub(&zz.scale(&im_unit()));
        let fh = cross3(&grad3(&z), &grad3(&wh));
        assert!(conjecture_verify(&fh, &z, &wh).verified());
        // Mismatch.
        let bad = PolyVField::new(
            &v,
            vec![Poly::one(&v), Poly::zero(&v), Poly::zero(&v)],
        );
        let rb = conjecture_verify(&bad, &z, &w);
        assert!(!rb.verified());
        assert!(!rb.matches_gradients);
    }
}
