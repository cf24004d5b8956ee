//! Exact multivector arithmetic in Cl(k,l).
//!
//! Blades are bitmasks over the generators `e_1..e_m` (bit `mu-1` set means
//! `e_mu` is a factor), so a multivector is a sparse map from blade masks to
//! scalars. The product sign is computed by counting the transpositions
//! needed to merge two sorted index lists, then applying the generator
//! squares for repeated indices.

use crate::error::Error;
use crate::mat::Mat;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Maximum supported number of generators; keeps blade counts at 4096.
pub const MAX_DIM: u32 = 12;

/// Signature (k,l): `k` generators squaring to +1, `l` to -1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Signature {
    k: u32,
    l: u32,
}

impl Signature {
    pub fn new(k: u32, l: u32) -> Result<Self, Error> {
        if k + l > MAX_DIM {
            return Err(Error::DimensionCap { k, l, cap: MAX_DIM });
        }
        Ok(Signature { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> u32 {
        self.k + self.l
    }

    /// Square of the generator `e_mu` (1-based index): +1 or -1.
    pub fn gen_square(&self, mu: u32) -> i64 {
        debug_assert!(mu >= 1 && mu <= self.dim());
        if mu <= self.k {
            1
        } else {
            -1
        }
    }
}

pub type Blade = u16;

/// Sign from moving every index of `b` past the larger indices of `a` when
/// concatenating `a` then `b` into one sorted word, together with the merged
/// mask. Repeated generators contribute their metric square.
fn blade_mul(sig: Signature, a: Blade, b: Blade) -> (Blade, i64) {
    let mut sign: i64 = 1;
    // Transpositions: each index i in b must move past all indices of a
    // strictly greater than i.
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros(); // 0-based generator index
        let higher = a >> (i + 1);
        if higher.count_ones() % 2 == 1 {
            sign = -sign;
        }
        bb &= bb - 1;
    }
    // Repeated generators square to the metric.
    let mut rep = a & b;
    while rep != 0 {
        let i = rep.trailing_zeros();
        sign *= sig.gen_square(i + 1);
        rep &= rep - 1;
    }
    (a ^ b, sign)
}

/// Wedge of two blades: zero on overlap, else the permutation sign.
fn blade_wedge(a: Blade, b: Blade) -> Option<(Blade, i64)> {
    if a & b != 0 {
        return None;
    }
    let mut sign: i64 = 1;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        if (a >> (i + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        bb &= bb - 1;
    }
    Some((a | b, sign))
}

/// Contraction of the covector `g(e_mu)` with a blade (`mu` 1-based).
fn blade_contract(sig: Signature, mu: u32, b: Blade) -> Option<(Blade, i64)> {
    let bit = 1u16 << (mu - 1);
    if b & bit == 0 {
        return None;
    }
    // Position of mu inside the sorted blade word.
    let pos = (b & (bit - 1)).count_ones();
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((b & !bit, sign * sig.gen_square(mu)))
}

fn scalar_from_sign<T: Scalar>(s: i64) -> T {
    if s >= 0 {
        T::one()
    } else {
        -T::one()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<T> {
    sig: Signature,
    coeffs: BTreeMap<Blade, T>,
}

/// An element of the exterior algebra over the same blade representation.
#[derive(Clone, PartialEq, Debug)]
pub struct ExteriorElement<T> {
    sig: Signature,
    coeffs: BTreeMap<Blade, T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: Signature, s: T) -> Self {
        let mut m = Self::zero(sig);
        m.add_term(0, s);
        m
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, T::one())
    }

    /// The generator `e_mu`, 1-based.
    pub fn generator(sig: Signature, mu: u32) -> Self {
        assert!(mu >= 1 && mu <= sig.dim());
        let mut m = Self::zero(sig);
        m.add_term(1 << (mu - 1), T::one());
        m
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, T)>) -> Self {
        let mut m = Self::zero(sig);
        for (b, c) in terms {
            m.add_term(b, c);
        }
        m
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &BTreeMap<Blade, T> {
        &self.coeffs
    }

    pub fn coeff(&self, b: Blade) -> T {
        self.coeffs.get(&b).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, b: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(b).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.sig, other.sig);
        let mut out = self.clone();
        for (&b, c) in &other.coeffs {
            out.add_term(b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|(&b, c)| (b, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.sig);
        for (&b, c) in &self.coeffs {
            out.add_term(b, c.clone() * s.clone());
        }
        out
    }

    /// The Clifford (geometric) product.
    pub fn geometric_product(&self, other: &Self) -> Result<Self, Error> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = Self::zero(self.sig);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                let (m, s) = blade_mul(self.sig, a, b);
                out.add_term(m, ca.clone() * cb.clone() * scalar_from_sign::<T>(s));
            }
        }
        Ok(out)
    }

    /// Keep only the terms of the given grade.
    pub fn grade_part(&self, grade: u32) -> Self {
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(b, _)| b.count_ones() == grade)
                .map(|(&b, c)| (b, c.clone()))
                .collect(),
        }
    }

    /// Grades present, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.coeffs.keys().map(|b| b.count_ones()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }
}

impl<T: Scalar> ExteriorElement<T> {
    pub fn zero(sig: Signature) -> Self {
        ExteriorElement {
            sig,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, T)>) -> Self {
        let mut e = Self::zero(sig);
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &BTreeMap<Blade, T> {
        &self.coeffs
    }

    pub fn coeff(&self, b: Blade) -> T {
        self.coeffs.get(&b).cloned().unwrap_or_else(T::zero)
    }

    fn add_term(&mut self, b: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(b).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.sig, other.sig);
        let mut out = self.clone();
        for (&b, c) in &other.coeffs {
            out.add_term(b, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.sig, other.sig);
        let mut out = Self::zero(self.sig);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                if let Some((m, s)) = blade_wedge(a, b) {
                    out.add_term(m, ca.clone() * cb.clone() * scalar_from_sign::<T>(s));
                }
            }
        }
        out
    }

    /// Contraction `g(e_mu) ⌟ self`, `mu` 1-based.
    pub fn contract_generator(&self, mu: u32) -> Self {
        let mut out = Self::zero(self.sig);
        for (&b, c) in &self.coeffs {
            if let Some((m, s)) = blade_contract(self.sig, mu, b) {
                out.add_term(m, c.clone() * scalar_from_sign::<T>(s));
            }
        }
        out
    }

    pub fn grade_part(&self, grade: u32) -> Self {
        ExteriorElement {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(b, _)| b.count_ones() == grade)
                .map(|(&b, c)| (b, c.clone()))
                .collect(),
        }
    }
}

/// The volume element eta = e_1 ... e_m (the full blade with coefficient 1).
pub fn volume_element<T: Scalar>(sig: Signature) -> Multivector<T> {
    let full: Blade = if sig.dim() == 0 {
        0
    } else {
        ((1u32 << sig.dim()) - 1) as Blade
    };
    Multivector::from_terms(sig, [(full, T::one())])
}

/// Sign of eta^2, computed by an actual geometric product.
pub fn eta_square_sign<T: Scalar>(sig: Signature) -> i64 {
    let eta = volume_element::<T>(sig);
    let sq = eta.geometric_product(&eta).expect("same signature");
    let c = sq.coeff(0);
    if c == T::one() {
        1
    } else if c == -T::one() {
        -1
    } else {
        panic!("eta^2 is not +-1");
    }
}

/// The isomorphism Cl(k,l) -> exterior algebra. In an orthonormal frame it
/// is the identity on the blade coefficient map; the defining recursion
/// `kappa(v a) = v ∧ kappa(a) + g(v) ⌟ kappa(a)` is checked as a property
/// in the tests rather than used as the implementation.
pub fn kappa<T: Scalar>(a: &Multivector<T>) -> ExteriorElement<T> {
    ExteriorElement {
        sig: a.sig,
        coeffs: a.coeffs.clone(),
    }
}

pub fn kappa_inv<T: Scalar>(w: &ExteriorElement<T>) -> Multivector<T> {
    Multivector {
        sig: w.sig,
        coeffs: w.coeffs.clone(),
    }
}

/// Hodge-Kähler duality: `star(kappa(a)) = kappa(eta a)`, with eta acting
/// by left multiplication.
pub fn hodge_star<T: Scalar>(w: &ExteriorElement<T>) -> ExteriorElement<T> {
    let eta = volume_element::<T>(w.sig);
    let prod = eta
        .geometric_product(&kappa_inv(w))
        .expect("same signature");
    kappa(&prod)
}

/// The graded component(s) on which Hodge duality is a complex structure,
/// together with the matrix of star in the sorted-blade basis.
#[derive(Clone, Debug)]
pub struct DualityStructure<T> {
    /// The exterior degrees spanned by the invariant subspace.
    pub grades: Vec<u32>,
    /// Blade masks forming the ordered basis of that subspace.
    pub basis: Vec<Blade>,
    /// Matrix of star on the subspace; satisfies `j^2 = -id`.
    pub j: Mat<T>,
}

/// When eta^2 = -1, star restricts to a complex structure: on the middle
/// degree for even dimension, on degrees (n, n+1) for dimension 2n+1.
pub fn duality_complex_structure<T: Scalar>(sig: Signature) -> Option<DualityStructure<T>> {
    if eta_square_sign::<T>(sig) != -1 {
        return None;
    }
    let m = sig.dim();
    let grades: Vec<u32> = if m % 2 == 0 {
        vec![m / 2]
    } else {
        vec![m / 2, m / 2 + 1]
    };
    let mut basis: Vec<Blade> = Vec::new();
    for b in 0..(1u32 << m) {
        if grades.contains(&(b.count_ones())) {
            basis.push(b as Blade);
        }
    }
    let n = basis.len();
    let mut j = Mat::zeros(n, n);
    for (col, &b) in basis.iter().enumerate() {
        let img = hodge_star(&ExteriorElement::from_terms(sig, [(b, T::one())]));
        for (&ib, c) in img.coeffs() {
            let row = basis
                .iter()
                .position(|&x| x == ib)
                .expect("star leaves the subspace invariant");
            j[(row, col)] = c.clone();
        }
    }
    assert!(
        j.matmul(&j).scale(&(-T::one())).is_identity(),
        "star^2 != -id on the duality subspace"
    );
    Some(DualityStructure { grades, basis, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gqi, GaussRat};

    type Mv = Multivector<GaussRat>;

    fn sig(k: u32, l: u32) -> Signature {
        Signature::new(k, l).unwrap()
    }

    #[test]
    fn generator_squares() {
        let s = sig(1, 1);
        let e1 = Mv::generator(s, 1);
        let e2 = Mv::generator(s, 2);
        assert_eq!(e1.geometric_product(&e1).unwrap(), Mv::one(s));
        assert_eq!(e2.geometric_product(&e2).unwrap(), Mv::one(s).neg());
    }

    #[test]
    fn anticommutation() {
        for (k, l) in [(2, 0), (1, 1), (0, 2), (3, 2)] {
            let s = sig(k, l);
            let e1 = Mv::generator(s, 1);
            let e2 = Mv::generator(s, 2);
            let ab = e1.geometric_product(&e2).unwrap();
            let ba = e2.geometric_product(&e1).unwrap();
            assert!(ab.add(&ba).is_zero(), "({k},{l})");
        }
    }

    #[test]
    fn signature_mismatch_rejected() {
        let a = Mv::one(sig(1, 1));
        let b = Mv::one(sig(2, 0));
        assert!(matches!(
            a.geometric_product(&b),
            Err(Error::SignatureMismatch)
        ));
    }

    #[test]
    fn eta_square_examples() {
        // (3,1): exponent (l-k)(l-k+1)/2 = 1 -> -1; (2,0): also -1; (0,0): +1.
        assert_eq!(eta_square_sign::<GaussRat>(sig(3, 1)), -1);
        assert_eq!(eta_square_sign::<GaussRat>(sig(2, 0)), -1);
        assert_eq!(eta_square_sign::<GaussRat>(sig(0, 0)), 1);
        let empty = volume_element::<GaussRat>(sig(0, 0));
        assert_eq!(empty, Mv::one(sig(0, 0)));
    }

    #[test]
    fn kappa_examples() {
        let s = sig(1, 1);
        assert_eq!(kappa(&Mv::one(s)).coeff(0), gqi(1));
        // kappa(e1 e2) = e1 ∧ e2 for orthogonal generators.
        let e1 = Mv::generator(s, 1);
        let e2 = Mv::generator(s, 2);
        let prod = e1.geometric_product(&e2).unwrap();
        assert_eq!(kappa(&prod).coeff(0b11), gqi(1));
        // kappa(e1 e1) = g(e1) ⌟ e1 = +1 here.
        let sq = e1.geometric_product(&e1).unwrap();
        assert_eq!(kappa(&sq).coeff(0), gqi(1));
        // and in Cl(0,1): e1^2 = -1.
        let s2 = sig(0, 1);
        let f1 = Mv::generator(s2, 1);
        assert_eq!(kappa(&f1.geometric_product(&f1).unwrap()).coeff(0), gqi(-1));
    }

    #[test]
    fn kappa_recursion_property() {
        // kappa(v a) = v ∧ kappa(a) + g(v) ⌟ kappa(a) for every generator v.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for (k, l) in [(2, 0), (1, 1), (0, 2), (2, 1), (3, 1), (2, 3)] {
            let s = sig(k, l);
            for _ in 0..40 {
                let a = Mv::from_terms(
                    s,
                    (0..4).map(|_| {
                        (
                            (rng.gen_range(0..(1u32 << s.dim()))) as Blade,
                            gqi(rng.gen_range(-5..=5)),
                        )
                    }),
                );
                for mu in 1..=s.dim() {
                    let v = Mv::generator(s, mu);
                    let lhs = kappa(&v.geometric_product(&a).unwrap());
                    let vb = ExteriorElement::from_terms(s, [(1 << (mu - 1), gqi(1))]);
                    let rhs = vb.wedge(&kappa(&a)).add(&kappa(&a).contract_generator(mu));
                    assert_eq!(lhs, rhs, "({k},{l}) mu={mu}");
                }
            }
        }
    }

    #[test]
    fn kappa_grading() {
        let s = sig(2, 1);
        let a = Mv::from_terms(s, [(0b11, gqi(2)), (0b110, gqi(-1)), (0b000, gqi(3))]);
        let w = kappa(&a);
        for (&b, _) in w.coeffs() {
            assert_eq!(b.count_ones() % 2, 0);
        }
    }

    #[test]
    fn hodge_star_examples() {
        // Cl(0,2): star 1 = e1 ∧ e2.
        let s = sig(0, 2);
        let one = kappa(&Mv::one(s));
        assert_eq!(hodge_star(&one).coeff(0b11), gqi(1));
        // Cl(2,0): star on grade 1 squares to -id.
        let s2 = sig(2, 0);
        for b in [0b01u16, 0b10u16] {
            let w = ExteriorElement::from_terms(s2, [(b, gqi(1))]);
            let ss = hodge_star(&hodge_star(&w));
            assert_eq!(ss, ExteriorElement::from_terms(s2, [(b, gqi(-1))]));
        }
        // Cl(3,1): star squares to -id on all six basis 2-forms.
        let s3 = sig(3, 1);
        for b in 0u32..16 {
            if b.count_ones() != 2 {
                continue;
            }
            let w = ExteriorElement::from_terms(s3, [(b as Blade, gqi(1))]);
            let ss = hodge_star(&hodge_star(&w));
            assert_eq!(ss, ExteriorElement::from_terms(s3, [(b as Blade, gqi(-1))]));
        }
    }

    #[test]
    fn duality_structures() {
        let d = duality_complex_structure::<GaussRat>(sig(3, 1)).unwrap();
        assert_eq!(d.grades, vec![2]);
        assert_eq!(d.basis.len(), 6);
        let d2 = duality_complex_structure::<GaussRat>(sig(0, 1)).unwrap();
        assert_eq!(d2.grades, vec![0, 1]);
        assert_eq!(d2.basis.len(), 2);
        let d3 = duality_complex_structure::<GaussRat>(sig(2, 0)).unwrap();
        assert_eq!(d3.grades, vec![1]);
        assert!(duality_complex_structure::<GaussRat>(sig(1, 1)).is_none());
    }
}
