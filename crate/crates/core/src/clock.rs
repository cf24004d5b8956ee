//! The spinorial clock: matrix-algebra classification of Cl(k,l) and
//! Brauer-Wall Z8 arithmetic.

use std::fmt;

/// Base algebra of a real matrix-algebra type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Base {
    R,
    C,
    H,
    TwoR,
    TwoH,
}

impl Base {
    /// Real dimension of the base algebra.
    pub fn real_dim(&self) -> u64 {
        match self {
            Base::R => 1,
            Base::C => 2,
            Base::H => 4,
            Base::TwoR => 2,
            Base::TwoH => 8,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::R => write!(f, "R"),
            Base::C => write!(f, "C"),
            Base::H => write!(f, "H"),
            Base::TwoR => write!(f, "2R"),
            Base::TwoH => write!(f, "2H"),
        }
    }
}

/// `base(size)`: the algebra of `size x size` matrices over the base
/// (doubled for the 2R/2H tags). `size` is always a power of two.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MatrixAlgebraType {
    pub base: Base,
    pub size: u64,
}

impl MatrixAlgebraType {
    /// Total real dimension: dim(2A(N)) = 2 dim(A) N^2.
    pub fn real_dim(&self) -> u64 {
        self.base.real_dim() * self.size * self.size
    }
}

impl fmt::Display for MatrixAlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.base, self.size)
    }
}

/// The eight clock entries (A_h, nu_h), h = 0..7, where nu_h = log2 of the
/// real dimension of A_h. Pinned against the brute-force oracle in tests.
pub const CLOCK: [(Base, u32); 8] = [
    (Base::R, 0),
    (Base::C, 1),
    (Base::H, 2),
    (Base::TwoH, 3),
    (Base::H, 2),
    (Base::C, 1),
    (Base::R, 0),
    (Base::TwoR, 1),
];

/// Hour of Cl(k,l) on the spinorial clock: (l - k) mod 8.
pub fn hour(k: u32, l: u32) -> u32 {
    ((l as i64 - k as i64).rem_euclid(8)) as u32
}

/// Cl(k,l) = A_h(2^((k+l-nu_h)/2)) with h = (l-k) mod 8.
pub fn classify(k: u32, l: u32) -> MatrixAlgebraType {
    let h = hour(k, l) as usize;
    let (base, nu) = CLOCK[h];
    let m = k + l;
    debug_assert!(m >= nu && (m - nu) % 2 == 0, "clock bookkeeping broken");
    MatrixAlgebraType {
        base,
        size: 1u64 << ((m - nu) / 2),
    }
}

/// Type of the even subalgebra Cl0(k,l), via Cl(k,l) ≅ Cl0(k,l+1):
/// Cl0(k,l) ≅ Cl(k,l-1) for l >= 1, and Cl0(k,0) ≅ Cl(0,k-1).
pub fn even_subalgebra(k: u32, l: u32) -> MatrixAlgebraType {
    assert!(k + l >= 1, "even subalgebra needs at least one generator");
    if l >= 1 {
        classify(k, l - 1)
    } else {
        classify(0, k - 1)
    }
}

/// Same Brauer-Wall type iff k + l' ≡ k' + l (mod 8).
pub fn same_type(k: u32, l: u32, k2: u32, l2: u32) -> bool {
    (k + l2) % 8 == (k2 + l) % 8
}

/// Group law of the Brauer-Wall Z8: graded tensor products add hours.
pub fn brauer_wall_add(h1: u32, h2: u32) -> u32 {
    assert!(h1 < 8 && h2 < 8);
    (h1 + h2) % 8
}

/// Independent brute-force oracle: classify Cl(k,l) from its trace form
/// alone, never consulting the clock table.
///
/// The form <a,b> = scalar part of ab is diagonal on blades with entries
/// e_I^2 = +-1, so its signature difference t = sum_I sign(e_I^2) is
/// computable from the geometric product. For the five candidate matrix
/// algebras of total real dimension 2^m the differences are distinct:
/// R(N): +N, C(N): 0, H(N): -2N, 2R(N): +2N, 2H(N): -4N.
pub fn trace_form_oracle(k: u32, l: u32) -> MatrixAlgebraType {
    use crate::clifford::{Multivector, Signature};
    use crate::scalar::Rat;
    use num_traits::One;

    let sig = Signature::new(k, l).expect("within dimension cap");
    let m = k + l;
    let mut t: i64 = 0;
    for b in 0..(1u32 << m) as u16 {
        let blade: Multivector<Rat> = Multivector::from_terms(sig, [(b, Rat::one())]);
        let sq = blade.geometric_product(&blade).expect("same signature");
        let c = sq.coeff(0);
        if c == Rat::one() {
            t += 1;
        } else if c == -Rat::one() {
            t -= 1;
        } else {
            panic!("blade square is not +-1");
        }
    }
    if m % 2 == 0 {
        let n = 1i64 << (m / 2);
        if t == n {
            MatrixAlgebraType {
                base: Base::R,
                size: n as u64,
            }
        } else if t == -n {
            MatrixAlgebraType {
                base: Base::H,
                size: (n / 2) as u64,
            }
        } else {
            panic!("no matrix algebra of dimension 2^{m} has trace signature {t}");
        }
    } else {
        let n = 1i64 << ((m - 1) / 2);
        if t == 0 {
            MatrixAlgebraType {
                base: Base::C,
                size: n as u64,
            }
        } else if t == 2 * n {
            MatrixAlgebraType {
                base: Base::TwoR,
                size: n as u64,
            }
        } else if t == -2 * n && n >= 2 {
            MatrixAlgebraType {
                base: Base::TwoH,
                size: (n / 2) as u64,
            }
        } else {
            panic!("no matrix algebra of dimension 2^{m} has trace signature {t}");
        }
    }
}
