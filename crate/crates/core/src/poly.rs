//! Exact multivariate polynomials with Gaussian-rational coefficients over
//! a named, ordered list of real coordinates.

use crate::error::Error;
use crate::scalar::{GaussRat, Rat, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Canonical form: no zero coefficients; every exponent vector has the
/// length of the coordinate list.
#[derive(Clone, PartialEq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, GaussRat>,
}

pub fn coords(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: GaussRat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Poly::constant(vars, GaussRat::one())
    }

    /// The coordinate with the given name, as a polynomial.
    pub fn var(vars: &[String], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown coordinate {name}"));
        Poly::monomial(vars, idx)
    }

    pub fn monomial(vars: &[String], idx: usize) -> Self {
        let mut exps = vec![0u32; vars.len()];
        exps[idx] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(exps, GaussRat::one());
        p
    }

    pub fn from_terms(
        vars: &[String],
        terms: impl IntoIterator<Item = (Vec<u32>, GaussRat)>,
    ) -> Self {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, GaussRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    fn add_term(&mut self, exps: Vec<u32>, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(GaussRat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn check_same_vars(&self, other: &Poly) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::CoordinateMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars, "coordinate mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &GaussRat) -> Poly {
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Coefficient-wise complex conjugation (the coordinates are real).
    pub fn conj(&self) -> Poly {
        self.map_coeffs(|c| c.conj())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars, "coordinate mismatch");
        let mut out = Poly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(&self.vars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to the idx-th coordinate.
    pub fn diff(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            let k = GaussRat::new(Rat::from_integer((e[idx] as i64).into()), Rat::zero());
            out.add_term(e2, c.clone() * k);
        }
        out
    }

    pub fn diff_var(&self, name: &str) -> Poly {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown coordinate {name}"));
        self.diff(idx)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (exp, x) in e.iter().zip(point) {
                for _ in 0..*exp {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitute a polynomial for each coordinate (the images share a
    /// common coordinate list).
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .expect("at least one coordinate");
        assert!(images.iter().all(|p| p.vars == target));
        let mut acc = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (exp, img) in e.iter().zip(images) {
                term = term.mul(&img.pow(*exp));
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }
}

/// Wirtinger derivatives for the pair z = x + iy:
/// (d/dz f, d/dz-bar f) = ((f_x - i f_y)/2, (f_x + i f_y)/2).
pub fn wirtinger(f: &Poly, x: &str, y: &str) -> (Poly, Poly) {
    let fx = f.diff_var(x);
    let fy = f.diff_var(y);
    let half = GaussRat::new(Rat::new(1.into(), 2.into()), Rat::zero());
    let ihalf = crate::scalar::im_unit() * half.clone();
    (
        fx.scale(&half).sub(&fy.scale(&ihalf)),
        fx.scale(&half).add(&fy.scale(&ihalf)),
    )
}

/// Random polynomial with small rational coefficients, for property
/// sweeps. Degree bounded by `max_deg`, at most `n_terms` monomials.
pub fn random_poly(
    rng: &mut impl rand::Rng,
    vars: &[String],
    max_deg: u32,
    n_terms: usize,
) -> Poly {
    let mut p = Poly::zero(vars);
    for _ in 0..n_terms {
        let mut e = vec![0u32; vars.len()];
        let mut budget = max_deg;
        for slot in e.iter_mut() {
            let d = rng.gen_range(0..=budget);
            *slot = d;
            budget -= d;
        }
        let c = GaussRat::new(
            Rat::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into()),
            Rat::new(rng.gen_range(-2i64..=2).into(), 1.into()),
        );
        p = p.add(&Poly::from_terms(vars, [(e, c)]));
    }
    p
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut s = format!("({})", crate::scalar::format_gauss(c));
            for (exp, name) in e.iter().zip(&self.vars) {
                if *exp == 1 {
                    s.push_str(&format!("*{name}"));
                } else if *exp > 1 {
                    s.push_str(&format!("*{name}^{exp}"));
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}
