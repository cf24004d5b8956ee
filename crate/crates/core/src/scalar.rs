//! Scalar abstraction and Gaussian-rational helpers.
//!
//! All algebraic identities in this crate are checked exactly, so the
//! default scalar is a Gaussian rational: a complex number whose real and
//! imaginary parts are arbitrary-precision rationals. The [`Scalar`] trait
//! keeps the container types (`Mat`, `Multivector`, `Poly`) generic so the
//! same code runs over `f64` where a floating cross-check is wanted.

use num::bigint::BigInt;
use num::{BigRational, Complex, Zero};
use num_traits::{Num, One};
use std::fmt;
use std::ops::Neg;

/// Exact rational scalar.
pub type Rat = BigRational;
/// Exact Gaussian-rational scalar, the workhorse of the crate.
pub type GaussRat = Complex<Rat>;

/// Field scalar with a conjugation. `conj` is the identity on real types.
pub trait Scalar: Clone + PartialEq + Num + Neg<Output = Self> + fmt::Debug {
    fn conj(&self) -> Self;
    /// True for scalars with no imaginary part.
    fn is_real(&self) -> bool;
}

impl Scalar for f64 {
    fn conj(&self) -> f64 {
        *self
    }
    fn is_real(&self) -> bool {
        true
    }
}

impl Scalar for Rat {
    fn conj(&self) -> Rat {
        self.clone()
    }
    fn is_real(&self) -> bool {
        true
    }
}

impl Scalar for GaussRat {
    fn conj(&self) -> GaussRat {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Gaussian rational from rational parts.
pub fn gq(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

/// Real integer as a Gaussian rational.
pub fn gqi(n: i64) -> GaussRat {
    gq(rint(n), rint(0))
}

/// `a/b` as a Gaussian rational.
pub fn gqr(a: i64, b: i64) -> GaussRat {
    gq(rat(a, b), rint(0))
}

/// The imaginary unit.
pub fn im_unit() -> GaussRat {
    gq(rint(0), rint(1))
}

/// |z|^2 as an exact rational.
pub fn abs_sq(z: &GaussRat) -> Rat {
    &z.re * &z.re + &z.im * &z.im
}

/// Floating approximation of an exact rational.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Floating approximation of an exact Gaussian rational.
pub fn gauss_to_c64(z: &GaussRat) -> Complex<f64> {
    Complex::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r < &Rat::zero() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a Gaussian rational in the `a/b+c/di` wire format.
pub fn format_gauss(z: &GaussRat) -> String {
    if z.im.is_zero() {
        return fmt_rat(&z.re);
    }
    let im = if z.im >= Rat::zero() {
        format!("+{}i", fmt_rat(&z.im))
    } else {
        format!("-{}i", fmt_rat(&(-z.im.clone())))
    };
    if z.re.is_zero() {
        im.trim_start_matches('+').to_string()
    } else {
        format!("{}{}", fmt_rat(&z.re), im)
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() || s == "+" {
        return Ok(Rat::one());
    }
    if s == "-" {
        return Ok(-Rat::one());
    }
    s.parse::<Rat>().map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Parse the `a/b+c/di` wire format. Accepts pure-real (`-3/4`), pure
/// imaginary (`i`, `-2i`, `5/3i`) and mixed (`1/2-7/4i`) forms.
pub fn parse_gauss(s: &str) -> Result<GaussRat, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty scalar".into());
    }
    if let Some(body) = t.strip_suffix('i') {
        // Split off the real part, if any: scan for a +/- that is not the
        // leading sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if bytes[k] == b'+' || bytes[k] == b'-' {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re = parse_rat(&body[..k])?;
                let im = parse_rat(&body[k..])?;
                Ok(gq(re, im))
            }
            None => Ok(gq(Rat::zero(), parse_rat(body)?)),
        }
    } else {
        Ok(gq(parse_rat(&t)?, Rat::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_roundtrip() {
        for s in ["0", "5", "-3/4", "i", "-i", "1/2+7/4i", "1/2-7/4i", "-2i"] {
            let z = parse_gauss(s).unwrap();
            let back = parse_gauss(&format_gauss(&z)).unwrap();
            assert_eq!(z, back, "{s}");
        }
        assert_eq!(parse_gauss("1/2 + 3 i").unwrap(), gq(rat(1, 2), rint(3)));
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 1)), None);
        assert_eq!(rat_sqrt(&rat(0, 1)), Some(rint(0)));
    }
}
