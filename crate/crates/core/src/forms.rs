//! Exterior calculus over polynomial coefficients: forms, vector fields,
//! wedge, exterior derivative, contraction, Lie bracket and derivative,
//! symmetric 2-tensors, and span membership over the function ring.
//!
//! Contraction convention: (v . w)(v2,...,vp) = w(v, v2,...,vp).

use crate::error::Error;
use crate::mat::Mat;
use crate::poly::Poly;
use crate::scalar::GaussRat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Sort an index list; `None` on a repeated index, otherwise the sorted
/// list and the sign of the sorting permutation.
fn sort_key(key: &[u8]) -> Option<(Vec<u8>, i32)> {
    let mut k = key.to_vec();
    let mut sign = 1;
    // Insertion sort, counting transpositions.
    for i in 1..k.len() {
        let mut j = i;
        while j > 0 && k[j - 1] > k[j] {
            k.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if k.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((k, sign))
    }
}

/// A differential form of fixed degree; keys are strictly increasing
/// coordinate-index lists, values are polynomial coefficients.
#[derive(Clone, PartialEq)]
pub struct PolyForm {
    vars: Vec<String>,
    degree: usize,
    coeffs: BTreeMap<Vec<u8>, Poly>,
}

impl PolyForm {
    pub fn zero(vars: &[String], degree: usize) -> Self {
        PolyForm {
            vars: vars.to_vec(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A function, as a degree-0 form.
    pub fn scalar(f: Poly) -> Self {
        let vars = f.vars().to_vec();
        let mut out = PolyForm::zero(&vars, 0);
        out.add_term(vec![], f);
        out
    }

    /// The coordinate differential `d name`.
    pub fn d_coord(vars: &[String], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown coordinate {name}")) as u8;
        let mut out = PolyForm::zero(vars, 1);
        out.add_term(vec![idx], Poly::one(vars));
        out
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u8>, Poly> {
        &self.coeffs
    }

    pub fn coeff(&self, key: &[u8]) -> Poly {
        self.coeffs
            .get(key)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Add a (possibly unsorted) term with antisymmetric sign bookkeeping.
    pub fn add_term(&mut self, key: Vec<u8>, p: Poly) {
        assert_eq!(key.len(), self.degree, "degree mismatch");
        if p.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_key(&key) else {
            return;
        };
        let signed = if sign < 0 { p.neg() } else { p };
        let entry = self
            .coeffs
            .entry(sorted.clone())
            .or_insert_with(|| Poly::zero(&self.vars));
        *entry = entry.add(&signed);
        if entry.is_zero() {
            self.coeffs.remove(&sorted);
        }
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.vars, other.vars);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, p) in &other.coeffs {
            out.add_term(k.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        self.map(|p| p.neg())
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyForm {
        let mut out = PolyForm::zero(&self.vars, self.degree);
        for (k, p) in &self.coeffs {
            out.add_term(k.clone(), f(p));
        }
        out
    }

    pub fn scale(&self, s: &GaussRat) -> PolyForm {
        self.map(|p| p.scale(s))
    }

    pub fn scale_poly(&self, f: &Poly) -> PolyForm {
        self.map(|p| p.mul(f))
    }

    /// Coefficient-wise conjugation (real coordinates).
    pub fn conj(&self) -> PolyForm {
        self.map(|p| p.conj())
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.vars, other.vars, "coordinate mismatch");
        let mut out = PolyForm::zero(&self.vars, self.degree + other.degree);
        for (ka, pa) in &self.coeffs {
            for (kb, pb) in &other.coeffs {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                out.add_term(key, pa.mul(pb));
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.vars, self.degree + 1);
        for (k, p) in &self.coeffs {
            for idx in 0..self.vars.len() {
                let dp = p.diff(idx);
                if dp.is_zero() {
                    continue;
                }
                let mut key = vec![idx as u8];
                key.extend_from_slice(k);
                out.add_term(key, dp);
            }
        }
        out
    }

    /// Evaluate every coefficient at a rational point; constant-form data
    /// for pointwise linear algebra.
    pub fn eval_coeffs(&self, point: &[GaussRat]) -> BTreeMap<Vec<u8>, GaussRat> {
        let mut out = BTreeMap::new();
        for (k, p) in &self.coeffs {
            let v = p.eval(point);
            if !v.is_zero() {
                out.insert(k.clone(), v);
            }
        }
        out
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, p) in &self.coeffs {
            let basis: Vec<&str> = k.iter().map(|&i| self.vars[i as usize].as_str()).collect();
            let tag = basis
                .iter()
                .map(|n| format!("d{n}"))
                .collect::<Vec<_>>()
                .join("^");
            parts.push(format!("[{p:?}] {tag}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A vector field: one polynomial component per coordinate.
#[derive(Clone, PartialEq)]
pub struct PolyVField {
    vars: Vec<String>,
    components: Vec<Poly>,
}

impl PolyVField {
    pub fn new(vars: &[String], components: Vec<Poly>) -> Self {
        assert_eq!(components.len(), vars.len());
        assert!(components.iter().all(|p| p.vars() == vars));
        PolyVField {
            vars: vars.to_vec(),
            components,
        }
    }

    pub fn zero(vars: &[String]) -> Self {
        PolyVField::new(vars, vec![Poly::zero(vars); vars.len()])
    }

    /// The coordinate field d/d name.
    pub fn coordinate(vars: &[String], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown coordinate {name}"));
        let mut comps = vec![Poly::zero(vars); vars.len()];
        comps[idx] = Poly::one(vars);
        PolyVField::new(vars, comps)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &PolyVField) -> PolyVField {
        assert_eq!(self.vars, other.vars);
        PolyVField::new(
            &self.vars,
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyVField {
        PolyVField::new(
            &self.vars,
            self.components.iter().map(|p| p.neg()).collect(),
        )
    }

    pub fn sub(&self, other: &PolyVField) -> PolyVField {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &GaussRat) -> PolyVField {
        PolyVField::new(
            &self.vars,
            self.components.iter().map(|p| p.scale(s)).collect(),
        )
    }

    pub fn scale_poly(&self, f: &Poly) -> PolyVField {
        PolyVField::new(
            &self.vars,
            self.components.iter().map(|p| p.mul(f)).collect(),
        )
    }

    pub fn conj(&self) -> PolyVField {
        PolyVField::new(
            &self.vars,
            self.components.iter().map(|p| p.conj()).collect(),
        )
    }

    /// Directional derivative X(f).
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.vars);
        for (idx, c) in self.components.iter().enumerate() {
            acc = acc.add(&c.mul(&f.diff(idx)));
        }
        acc
    }

    pub fn eval(&self, point: &[GaussRat]) -> Vec<GaussRat> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }
}

impl fmt::Debug for PolyVField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(&self.vars)
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, n)| format!("[{p:?}] d/d{n}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Contraction v . w; degree drops by one.
pub fn contract(v: &PolyVField, w: &PolyForm) -> PolyForm {
    assert_eq!(v.vars(), w.vars(), "coordinate mismatch");
    assert!(w.degree() >= 1, "cannot contract a function");
    let mut out = PolyForm::zero(w.vars(), w.degree() - 1);
    for (key, p) in w.coeffs() {
        for (t, &idx) in key.iter().enumerate() {
            let vi = &v.components()[idx as usize];
            if vi.is_zero() {
                continue;
            }
            let mut rest: Vec<u8> = key.clone();
            rest.remove(t);
            let mut term = vi.mul(p);
            if t % 2 == 1 {
                term = term.neg();
            }
            out.add_term(rest, term);
        }
    }
    out
}

/// Lie bracket [X,Y]^i = X(Y^i) - Y(X^i).
pub fn lie_bracket(x: &PolyVField, y: &PolyVField) -> PolyVField {
    assert_eq!(x.vars(), y.vars(), "coordinate mismatch");
    let comps = x
        .components()
        .iter()
        .zip(y.components())
        .enumerate()
        .map(|(_, _)| Poly::zero(x.vars()))
        .collect();
    let mut out = PolyVField::new(x.vars(), comps);
    for i in 0..x.vars().len() {
        out.components[i] = x.apply(&y.components()[i]).sub(&y.apply(&x.components()[i]));
    }
    out
}

/// Lie derivative of a form along a field, by the component formula
/// (L_X w)_K = X(w_K) + sum_t (d_{k_t} X^j) w_{K with k_t -> j}.
pub fn lie_derivative(x: &PolyVField, w: &PolyForm) -> PolyForm {
    assert_eq!(x.vars(), w.vars());
    let n = x.vars().len();
    let mut out = PolyForm::zero(w.vars(), w.degree());
    for (key, p) in w.coeffs() {
        out.add_term(key.clone(), x.apply(p));
        for t in 0..key.len() {
            for m in 0..n {
                let dxc = x.components()[key[t] as usize].diff(m);
                if dxc.is_zero() {
                    continue;
                }
                let mut k2 = key.clone();
                k2[t] = m as u8;
                out.add_term(k2, dxc.mul(p));
            }
        }
    }
    out
}

/// True iff v wedges to zero against the whole span, i.e. v lies in the
/// span over the function ring at generic points. Points where the span
/// drops rank are not analyzed separately.
pub fn membership_in_span(v: &PolyVField, span: &[PolyVField]) -> bool {
    // Multivectors share the PolyForm key bookkeeping (components are
    // contravariant, but antisymmetry is identical).
    let mut acc = PolyForm::zero(v.vars(), 0);
    acc.add_term(vec![], Poly::one(v.vars()));
    for x in span.iter().chain(std::iter::once(v)) {
        let mut as_form = PolyForm::zero(v.vars(), 1);
        for (idx, c) in x.components().iter().enumerate() {
            as_form.add_term(vec![idx as u8], c.clone());
        }
        acc = acc.wedge(&as_form);
    }
    acc.is_zero()
}

/// A symmetric 2-tensor with polynomial entries.
#[derive(Clone, PartialEq, Debug)]
pub struct SymTensor2 {
    vars: Vec<String>,
    entries: Vec<Vec<Poly>>,
}

impl SymTensor2 {
    pub fn new(vars: &[String], entries: Vec<Vec<Poly>>) -> Result<Self, Error> {
        let n = vars.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("tensor shape mismatch".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Invalid("tensor is not symmetric".into()));
                }
            }
        }
        Ok(SymTensor2 {
            vars: vars.to_vec(),
            entries,
        })
    }

    /// g = sum of symmetrized products of pairs of 1-forms, each pair with
    /// a polynomial weight: sum_w weight * (alpha (x)_sym beta).
    pub fn from_symmetrized_pairs(
        vars: &[String],
        pairs: &[(Poly, PolyForm, PolyForm)],
    ) -> Result<Self, Error> {
        let n = vars.len();
        let mut entries = vec![vec![Poly::zero(vars); n]; n];
        for (weight, a, b) in pairs {
            if a.degree() != 1 || b.degree() != 1 {
                return Err(Error::Invalid("metric pairs must be 1-forms".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    let ai = a.coeff(&[i as u8]);
                    let bj = b.coeff(&[j as u8]);
                    let aj = a.coeff(&[j as u8]);
                    let bi = b.coeff(&[i as u8]);
                    let half = GaussRat::new(
                        crate::scalar::rat(1, 2),
                        crate::scalar::rat(0, 1),
                    );
                    let term = ai.mul(&bj).add(&aj.mul(&bi)).scale(&half).mul(weight);
                    entries[i][j] = entries[i][j].add(&term);
                }
            }
        }
        SymTensor2::new(vars, entries)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    /// g(v, w) as a polynomial (C-bilinear, no conjugation).
    pub fn pair(&self, v: &PolyVField, w: &PolyVField) -> Poly {
        let n = self.vars.len();
        let mut acc = Poly::zero(&self.vars);
        for i in 0..n {
            for j in 0..n {
                if self.entries[i][j].is_zero() {
                    continue;
                }
                acc = acc.add(
                    &self.entries[i][j]
                        .mul(&v.components()[i])
                        .mul(&w.components()[j]),
                );
            }
        }
        acc
    }

    /// Index lowering: the 1-form g(v, .).
    pub fn lower(&self, v: &PolyVField) -> PolyForm {
        let n = self.vars.len();
        let mut out = PolyForm::zero(&self.vars, 1);
        for j in 0..n {
            let mut acc = Poly::zero(&self.vars);
            for i in 0..n {
                acc = acc.add(&self.entries[i][j].mul(&v.components()[i]));
            }
            out.add_term(vec![j as u8], acc);
        }
        out
    }

    /// Gram matrix at a rational point.
    pub fn eval(&self, point: &[GaussRat]) -> Mat<GaussRat> {
        let n = self.vars.len();
        Mat::from_fn(n, n, |i, j| self.entries[i][j].eval(point))
    }
}
