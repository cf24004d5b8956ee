//! Plane-wave solutions of the Dirac equation in signature (2n-1,1) and
//! the conserved current built from the intertwiner pair.
//!
//! Conventions, fixed here: the time-like direction is last; indices are
//! raised with g = diag(+1,...,+1,-1), so `gamma^mu = gamma_mu` for the
//! space-like directions and `gamma^{2n} = -gamma_{2n}`. A plane wave is
//! `a exp(i p_mu x^mu)` with a lower-index momentum covector.

use crate::error::Error;
use crate::scalar::{gauss_to_c64, rat_to_f64, GaussRat, Rat};
use crate::spinor::{GammaRep, Intertwiner, MatG};
use num::Complex;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// A single summand `amplitude * exp(i p.x)`.
#[derive(Clone, Debug)]
pub struct PlaneWave {
    pub p: Vec<Rat>,
    pub amplitude: Vec<GaussRat>,
}

/// A finite superposition of plane waves sharing mass, charge and constant
/// potential.
#[derive(Clone, Debug)]
pub struct WaveFunction {
    pub waves: Vec<PlaneWave>,
    pub m: Rat,
    pub e: Rat,
    pub a_pot: Vec<Rat>,
}

impl WaveFunction {
    pub fn new(waves: Vec<PlaneWave>, m: Rat, e: Rat, a_pot: Vec<Rat>) -> Self {
        WaveFunction { waves, m, e, a_pot }
    }

    pub fn free(waves: Vec<PlaneWave>, m: Rat) -> Self {
        let dim = waves.first().map_or(0, |w| w.p.len());
        WaveFunction::new(waves, m, Rat::zero(), vec![Rat::zero(); dim])
    }

    /// Merge per-summand parameters, rejecting disagreement.
    pub fn from_summands(
        summands: Vec<(PlaneWave, Rat, Rat, Vec<Rat>)>,
    ) -> Result<Self, Error> {
        let Some((_, m0, e0, a0)) = summands.first().cloned() else {
            return Err(Error::Invalid("empty wave function".into()));
        };
        let mut waves = Vec::new();
        for (w, m, e, a) in summands {
            if m != m0 || e != e0 || a != a0 {
                return Err(Error::MixedWaveParameters);
            }
            waves.push(w);
        }
        Ok(WaveFunction::new(waves, m0, e0, a0))
    }
}

/// gamma with the index raised by g = diag(+,...,+,-).
pub fn gammas_up(rep: &GammaRep) -> Vec<MatG> {
    let m = rep.sig().dim() as usize;
    rep.gammas()
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            if idx == m - 1 {
                g.scale(&(-GaussRat::one()))
            } else {
                g.clone()
            }
        })
        .collect()
}

fn rat_to_gauss(r: &Rat) -> GaussRat {
    GaussRat::new(r.clone(), Rat::zero())
}

/// The matrix `i gamma^mu q_mu - m id` whose kernel is the amplitude space.
pub fn dirac_matrix(rep: &GammaRep, q: &[Rat], m: &Rat) -> MatG {
    let d = rep.spinor_dim();
    let i = GaussRat::i();
    let mut out = crate::mat::Mat::identity(d).scale(&(-rat_to_gauss(m)));
    for (mu, g) in gammas_up(rep).iter().enumerate() {
        let c = i.clone() * rat_to_gauss(&q[mu]);
        if !c.is_zero() {
            out = out.add(&g.scale(&c));
        }
    }
    out
}

/// Dispersion check p_{2n}^2 = p_1^2 + ... + p_{2n-1}^2 + m^2.
pub fn on_shell(p: &[Rat], m: &Rat) -> bool {
    let last = p.len() - 1;
    let spatial: Rat = p[..last].iter().map(|x| x * x).sum();
    &p[last] * &p[last] == spatial + m * m
}

/// Kernel basis of `i gamma^mu p_mu - m id`; dimension 2^{n-1} on shell and
/// 0 off shell.
pub fn solve_amplitudes(rep: &GammaRep, p: &[Rat], m: &Rat) -> Vec<Vec<GaussRat>> {
    dirac_matrix(rep, p, m).kernel()
}

/// The kinetic momentum q = p - eA of each summand.
fn kinetic_momenta(psi: &WaveFunction) -> Vec<Vec<Rat>> {
    psi.waves
        .iter()
        .map(|w| {
            w.p.iter()
                .zip(&psi.a_pot)
                .map(|(p, a)| p - &(&psi.e * a))
                .collect()
        })
        .collect()
}

/// True iff every summand solves the Dirac equation
/// `gamma^mu (d_mu - i e A_mu) psi = m psi`.
pub fn solves_dirac(rep: &GammaRep, psi: &WaveFunction) -> bool {
    kinetic_momenta(psi).iter().zip(&psi.waves).all(|(q, w)| {
        dirac_matrix(rep, q, &psi.m)
            .mul_vec(&w.amplitude)
            .iter()
            .all(|x| x.is_zero())
    })
}

/// A finite exponential polynomial `sum_nu c_nu exp(i nu.x)` with exact
/// rational frequency covectors.
pub type ExpPoly = BTreeMap<Vec<Rat>, GaussRat>;

fn exp_add(poly: &mut ExpPoly, freq: Vec<Rat>, coeff: GaussRat) {
    if coeff.is_zero() {
        return;
    }
    let entry = poly.entry(freq).or_insert_with(GaussRat::zero);
    *entry = entry.clone() + coeff;
    if entry.is_zero() {
        // Re-fetch to drop: the borrow above keeps canonical form.
        let key: Vec<Rat> = poly
            .iter()
            .find(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .expect("just inserted");
        poly.remove(&key);
    }
}

/// The current as 2n exponential polynomials (one per raised index).
#[derive(Clone, Debug)]
pub struct CurrentRep {
    pub components: Vec<ExpPoly>,
}

/// psi_c as a wave function: conjugated amplitudes, reversed momenta,
/// opposite charge.
pub fn conjugate_wave(pair: &Intertwiner, psi: &WaveFunction) -> WaveFunction {
    let waves = psi
        .waves
        .iter()
        .map(|w| {
            let conj: Vec<GaussRat> = w.amplitude.iter().map(|x| x.conj()).collect();
            PlaneWave {
                p: w.p.iter().map(|x| -x.clone()).collect(),
                amplitude: pair.c_inv.mul_vec(&conj),
            }
        })
        .collect();
    WaveFunction {
        waves,
        m: psi.m.clone(),
        e: -psi.e.clone(),
        a_pot: psi.a_pot.clone(),
    }
}

/// j^mu(psi) = i^{n+1} <B gamma_{2n+1} psi_c, gamma^mu psi>, assembled as
/// exact exponential polynomials in x.
pub fn current_exp(
    rep: &GammaRep,
    pair: &Intertwiner,
    psi: &WaveFunction,
) -> Result<CurrentRep, Error> {
    if !pair.normalized {
        return Err(Error::UnnormalizedIntertwiner);
    }
    let m = rep.sig().dim() as usize;
    let i = GaussRat::i();
    let mut pref = GaussRat::one();
    for _ in 0..rep.n() + 1 {
        pref = pref * i.clone();
    }
    let bg5 = pair.b.matmul(rep.gamma_chir());
    let ups = gammas_up(rep);
    // Left factors: B gamma_{2n+1} C^{-1} conj(a_alpha), frequency -p_alpha.
    let lefts: Vec<Vec<GaussRat>> = psi
        .waves
        .iter()
        .map(|w| {
            let conj: Vec<GaussRat> = w.amplitude.iter().map(|x| x.conj()).collect();
            bg5.mul_vec(&pair.c_inv.mul_vec(&conj))
        })
        .collect();
    let mut components = vec![ExpPoly::new(); m];
    for (alpha, wa) in psi.waves.iter().enumerate() {
        for wb in psi.waves.iter() {
            let freq: Vec<Rat> = wb.p.iter().zip(&wa.p).map(|(b, a)| b - a).collect();
            for (mu, g) in ups.iter().enumerate() {
                let right = g.mul_vec(&wb.amplitude);
                let mut acc = GaussRat::zero();
                for (x, y) in lefts[alpha].iter().zip(&right) {
                    acc = acc + x.clone() * y.clone();
                }
                exp_add(&mut components[mu], freq.clone(), pref.clone() * acc);
            }
        }
    }
    Ok(CurrentRep { components })
}

/// Exact reality: a real-valued exponential polynomial has
/// c_{-nu} = conj(c_nu) for every frequency.
pub fn exp_is_real(poly: &ExpPoly) -> bool {
    poly.iter().all(|(nu, c)| {
        let neg: Vec<Rat> = nu.iter().map(|x| -x.clone()).collect();
        poly.get(&neg).map_or(false, |d| d == &c.conj())
    })
}

pub fn current_is_real(cur: &CurrentRep) -> bool {
    cur.components.iter().all(exp_is_real)
}

/// Exact divergence d_mu j^mu as one exponential polynomial.
pub fn divergence_exp(cur: &CurrentRep) -> ExpPoly {
    let mut out = ExpPoly::new();
    let i = GaussRat::i();
    for (mu, comp) in cur.components.iter().enumerate() {
        for (nu, c) in comp {
            let factor = i.clone() * rat_to_gauss(&nu[mu]);
            exp_add(&mut out, nu.clone(), factor * c.clone());
        }
    }
    out
}

/// Floating evaluation of an exponential polynomial at a point.
pub fn exp_eval(poly: &ExpPoly, x: &[f64]) -> Complex<f64> {
    let mut acc = Complex::new(0.0, 0.0);
    for (nu, c) in poly {
        let phase: f64 = nu.iter().zip(x).map(|(a, b)| rat_to_f64(a) * b).sum();
        acc += gauss_to_c64(c) * Complex::new(0.0, phase).exp();
    }
    acc
}

/// Real current components at a sample point.
pub fn current_at(cur: &CurrentRep, x: &[f64]) -> Vec<f64> {
    cur.components.iter().map(|c| exp_eval(c, x).re).collect()
}

/// Central-difference divergence at a point, step h.
pub fn divergence_numeric_at(cur: &CurrentRep, x: &[f64], h: f64) -> f64 {
    let m = cur.components.len();
    let mut div = 0.0;
    for mu in 0..m {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[mu] += h;
        xm[mu] -= h;
        div += (exp_eval(&cur.components[mu], &xp).re - exp_eval(&cur.components[mu], &xm).re)
            / (2.0 * h);
    }
    div
}

/// Max relative central-difference divergence over sample points; the
/// denominator floors at one so a tiny current cannot inflate the ratio.
pub fn divergence_numeric(cur: &CurrentRep, rng: &mut impl Rng, samples: usize) -> f64 {
    let m = cur.components.len();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let scale = current_at(cur, &x)
            .iter()
            .fold(1.0_f64, |acc, v| acc.max(v.abs()));
        let div = divergence_numeric_at(cur, &x, 1e-6);
        worst = worst.max(div.abs() / scale);
    }
    worst
}

/// Check that psi_c solves `gamma^mu (d_mu + i e A_mu) psi_c = m psi_c`
/// algebraically on amplitudes, given that psi solves the charge-e
/// equation.
pub fn conjugate_equation_check(
    rep: &GammaRep,
    pair: &Intertwiner,
    psi: &WaveFunction,
) -> bool {
    solves_dirac(rep, psi) && solves_dirac(rep, &conjugate_wave(pair, psi))
}

// --- Random exact on-shell data -------------------------------------------

fn small_rat(rng: &mut impl Rng) -> Rat {
    Rat::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into())
}

fn small_gauss(rng: &mut impl Rng) -> GaussRat {
    GaussRat::new(small_rat(rng), small_rat(rng))
}

/// A rational point on the unit sphere in dimension d, via the inverse
/// stereographic image of a random rational point.
pub fn rational_unit_vector(rng: &mut impl Rng, d: usize) -> Vec<Rat> {
    assert!(d >= 1);
    loop {
        let x: Vec<Rat> = (0..d - 1).map(|_| small_rat(rng)).collect();
        let norm2: Rat = x.iter().map(|a| a * a).sum();
        let denom = &norm2 + Rat::one();
        let mut u: Vec<Rat> = x
            .iter()
            .map(|a| Rat::new(2.into(), 1.into()) * a / &denom)
            .collect();
        u.push((&norm2 - Rat::one()) / &denom);
        if u.iter().any(|c| !c.is_zero()) {
            return u;
        }
    }
}

/// A random momentum covector satisfying the dispersion relation for mass
/// m exactly, with positive energy. For any rational q > m, the pair
/// |p| = (q^2 - m^2)/2q, E = (q^2 + m^2)/2q is exactly on shell.
pub fn random_on_shell(rng: &mut impl Rng, dim: usize, m: &Rat) -> Vec<Rat> {
    let spatial = dim - 1;
    let q = m + Rat::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=3).into());
    let two_q = Rat::new(2.into(), 1.into()) * &q;
    let radius = (&q * &q - m * m) / &two_q;
    let energy = (&q * &q + m * m) / &two_q;
    let dir = rational_unit_vector(rng, spatial);
    let mut p: Vec<Rat> = dir.into_iter().map(|c| c * &radius).collect();
    p.push(energy);
    debug_assert!(on_shell(&p, m));
    p
}

/// A random on-shell superposition with `n_waves` distinct momenta and
/// random kernel amplitudes, for charge e and constant potential A.
pub fn random_superposition(
    rep: &GammaRep,
    rng: &mut impl Rng,
    n_waves: usize,
    m: &Rat,
    e: &Rat,
    a_pot: &[Rat],
) -> WaveFunction {
    let dim = rep.sig().dim() as usize;
    let mut waves = Vec::new();
    let mut seen: Vec<Vec<Rat>> = Vec::new();
    while waves.len() < n_waves {
        let q = random_on_shell(rng, dim, m);
        if seen.contains(&q) {
            continue;
        }
        seen.push(q.clone());
        let basis = solve_amplitudes(rep, &q, m);
        assert_eq!(basis.len(), rep.spinor_dim() / 2, "on-shell kernel dim");
        let mut amp = vec![GaussRat::zero(); rep.spinor_dim()];
        while amp.iter().all(|x| x.is_zero()) {
            amp = vec![GaussRat::zero(); rep.spinor_dim()];
            for b in &basis {
                let c = small_gauss(rng);
                for (a, x) in amp.iter_mut().zip(b) {
                    *a = a.clone() + c.clone() * x.clone();
                }
            }
        }
        // p = q + eA turns the kinetic on-shell momentum into the
        // canonical one.
        let p: Vec<Rat> = q
            .iter()
            .zip(a_pot)
            .map(|(qi, ai)| qi + &(e * ai))
            .collect();
        waves.push(PlaneWave { p, amplitude: amp });
    }
    WaveFunction::new(waves, m.clone(), e.clone(), a_pot.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;
    use crate::spinor::{build_gamma, normalize_pair, paper8_rep};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rat {
        rint(n)
    }

    fn zeros(n: usize) -> Vec<Rat> {
        vec![r(0); n]
    }

    #[test]
    fn rest_frame_kernel_dims() {
        let rep = build_gamma(3, 1).unwrap();
        let p = vec![r(0), r(0), r(0), r(1)];
        assert_eq!(solve_amplitudes(&rep, &p, &r(1)).len(), 2);
        // Off shell: empty kernel.
        let bad = vec![r(1), r(0), r(0), r(1)];
        assert!(!on_shell(&bad, &r(1)));
        assert_eq!(solve_amplitudes(&rep, &bad, &r(1)).len(), 0);
        let rep8 = paper8_rep();
        let p8 = vec![r(0), r(0), r(0), r(0), r(0), r(0), r(0), r(2)];
        assert_eq!(solve_amplitudes(&rep8, &p8, &r(2)).len(), 8);
    }

    #[test]
    fn three_four_five_shell() {
        // (0,0,3,5) with m = 4 is exactly on shell.
        let p = vec![r(0), r(0), r(3), r(5)];
        assert!(on_shell(&p, &r(4)));
        let rep = build_gamma(3, 1).unwrap();
        assert_eq!(solve_amplitudes(&rep, &p, &r(4)).len(), 2);
    }

    #[test]
    fn random_momenta_are_on_shell() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [4usize, 8] {
            for _ in 0..20 {
                let m = r(2);
                let p = random_on_shell(&mut rng, dim, &m);
                assert!(on_shell(&p, &m));
                assert!(p[dim - 1] > Rat::zero());
            }
        }
    }

    #[test]
    fn single_wave_current_is_constant_and_real() {
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = random_superposition(&rep, &mut rng, 1, &r(1), &r(0), &zeros(4));
        let cur = current_exp(&rep, &pair, &psi).unwrap();
        for comp in &cur.components {
            for nu in comp.keys() {
                assert!(nu.iter().all(|x| x.is_zero()), "constant current");
            }
        }
        assert!(current_is_real(&cur));
    }

    #[test]
    fn reality_and_conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (k, l) in [(3u32, 1u32), (7, 1)] {
            let rep = if (k, l) == (7, 1) {
                paper8_rep()
            } else {
                build_gamma(k, l).unwrap()
            };
            let pair = normalize_pair(&rep).unwrap();
            for _ in 0..3 {
                let psi =
                    random_superposition(&rep, &mut rng, 2, &r(1), &r(0), &zeros(rep.sig().dim() as usize));
                let cur = current_exp(&rep, &pair, &psi).unwrap();
                assert!(current_is_real(&cur));
                let cur_c =
                    current_exp(&rep, &pair, &conjugate_wave(&pair, &psi)).unwrap();
                for (a, b) in cur.components.iter().zip(&cur_c.components) {
                    assert_eq!(a, b, "j(psi_c) = j(psi)");
                }
            }
        }
    }

    #[test]
    fn divergence_exact_zero_on_shell() {
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = random_superposition(&rep, &mut rng, 3, &r(1), &r(0), &zeros(4));
        assert!(solves_dirac(&rep, &psi));
        let cur = current_exp(&rep, &pair, &psi).unwrap();
        assert!(divergence_exp(&cur).is_empty());
        // Numeric cross-check.
        let worst = divergence_numeric(&cur, &mut rng, 20);
        assert!(worst <= 1e-8, "numeric divergence {worst}");
    }

    #[test]
    fn off_shell_summand_breaks_conservation() {
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut psi = random_superposition(&rep, &mut rng, 2, &r(1), &r(0), &zeros(4));
        // Corrupt one momentum off shell, keeping the amplitude.
        psi.waves[0].p[0] = psi.waves[0].p[0].clone() + r(1);
        assert!(!solves_dirac(&rep, &psi));
        let cur = current_exp(&rep, &pair, &psi).unwrap();
        assert!(!divergence_exp(&cur).is_empty());
    }

    #[test]
    fn conjugate_equation_with_and_without_potential() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let free = random_superposition(&rep, &mut rng, 2, &r(1), &r(1), &zeros(4));
        assert!(conjugate_equation_check(&rep, &pair, &free));
        let a_pot = vec![Rat::new(1.into(), 2.into()), r(0), r(0), r(0)];
        let gauged = random_superposition(&rep, &mut rng, 2, &r(1), &r(1), &a_pot);
        assert!(solves_dirac(&rep, &gauged));
        assert!(conjugate_equation_check(&rep, &pair, &gauged));
        let rep8 = paper8_rep();
        let pair8 = normalize_pair(&rep8).unwrap();
        let psi8 = random_superposition(&rep8, &mut rng, 2, &r(1), &r(1), &zeros(8));
        assert!(conjugate_equation_check(&rep8, &pair8, &psi8));
    }

    #[test]
    fn mixed_parameters_rejected() {
        let w = PlaneWave {
            p: vec![r(0); 4],
            amplitude: vec![GaussRat::one(); 4],
        };
        let ok = WaveFunction::from_summands(vec![
            (w.clone(), r(1), r(0), vec![r(0); 4]),
            (w.clone(), r(1), r(0), vec![r(0); 4]),
        ]);
        assert!(ok.is_ok());
        let bad = WaveFunction::from_summands(vec![
            (w.clone(), r(1), r(0), vec![r(0); 4]),
            (w, r(2), r(0), vec![r(0); 4]),
        ]);
        assert!(matches!(bad, Err(Error::MixedWaveParameters)));
    }
}
