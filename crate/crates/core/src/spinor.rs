//! Gamma-matrix representations of Cl(k,l) for even k+l, the chirality
//! element, Weyl split, the intertwiners B and C, charge conjugation and
//! Majorana structures.
//!
//! Matrix transcriptions of the abstract maps, fixed here once: the dual
//! pairing is `<s', s> = sum_a s'_a s_a` with no conjugation, so B as a
//! bilinear form satisfies `B gamma_mu = gamma_mu^T B`; C is applied as a
//! plain matrix with the conjugation living in the type of the target
//! space, so `C gamma_mu = conj(gamma_mu) C`. `conj(C) C` and
//! `conj(B) C = conj(C)^T B^T` are literal matrix products.

use crate::clifford::{eta_square_sign, Signature};
use crate::error::Error;
use crate::mat::{in_span, normalize_first_nonzero, Mat};
use crate::scalar::{abs_sq, gqi, im_unit, rat_sqrt, GaussRat, Rat, Scalar};
use num_traits::{One, Zero};

pub type MatG = Mat<GaussRat>;

pub fn sigma_x() -> MatG {
    Mat::from_rows(vec![vec![gqi(0), gqi(1)], vec![gqi(1), gqi(0)]])
}

pub fn sigma_y() -> MatG {
    let i = im_unit();
    Mat::from_rows(vec![vec![gqi(0), -i.clone()], vec![i, gqi(0)]])
}

pub fn sigma_z() -> MatG {
    Mat::from_rows(vec![vec![gqi(1), gqi(0)], vec![gqi(0), gqi(-1)]])
}

pub fn pauli_id() -> MatG {
    Mat::identity(2)
}

/// Tensor product of a chain of 2x2 factors, leftmost factor outermost.
pub fn tensor(factors: &[MatG]) -> MatG {
    let mut out = Mat::identity(1);
    for f in factors {
        out = out.kron(f);
    }
    out
}

/// Chirality tag of a spinor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chirality {
    Plus,
    Minus,
    Mixed,
}

#[derive(Clone, Debug)]
pub struct Spinor {
    pub components: Vec<GaussRat>,
    pub chirality: Chirality,
}

/// A concrete representation of Cl(k,l) on 2^n-dimensional spinor space,
/// k+l = 2n, with the chirality element and iota.
#[derive(Clone, Debug)]
pub struct GammaRep {
    sig: Signature,
    gammas: Vec<MatG>,
    gamma_chir: MatG,
    iota: GaussRat,
}

impl GammaRep {
    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn n(&self) -> u32 {
        self.sig.dim() / 2
    }

    pub fn spinor_dim(&self) -> usize {
        1 << self.n()
    }

    pub fn gammas(&self) -> &[MatG] {
        &self.gammas
    }

    pub fn gamma(&self, mu: usize) -> &MatG {
        &self.gammas[mu - 1]
    }

    /// gamma_{2n+1} = gamma_1 ... gamma_{2n}.
    pub fn gamma_chir(&self) -> &MatG {
        &self.gamma_chir
    }

    /// iota = 1 when eta^2 = 1, i when eta^2 = -1; always computed from
    /// the exact square of the volume element.
    pub fn iota(&self) -> &GaussRat {
        &self.iota
    }

    /// Chirality of a spinor under gamma_{2n+1}.
    pub fn chirality_of(&self, phi: &[GaussRat]) -> Chirality {
        let img = self.gamma_chir.mul_vec(phi);
        let plus: Vec<GaussRat> = phi.iter().map(|x| x.clone() * self.iota.clone()).collect();
        if img == plus {
            return Chirality::Plus;
        }
        let minus: Vec<GaussRat> = plus.iter().map(|x| -x.clone()).collect();
        if img == minus {
            Chirality::Minus
        } else {
            Chirality::Mixed
        }
    }

    pub fn spinor(&self, components: Vec<GaussRat>) -> Spinor {
        let chirality = self.chirality_of(&components);
        Spinor {
            components,
            chirality,
        }
    }
}

fn rep_from_gammas(sig: Signature, gammas: Vec<MatG>) -> GammaRep {
    let mut chir = Mat::identity(gammas[0].nrows());
    for g in &gammas {
        chir = chir.matmul(g);
    }
    let iota = if eta_square_sign::<GaussRat>(sig) == 1 {
        gqi(1)
    } else {
        im_unit()
    };
    GammaRep {
        sig,
        gammas,
        gamma_chir: chir,
        iota,
    }
}

/// Independent checker for the Clifford relations
/// `gamma_mu gamma_nu + gamma_nu gamma_mu = 2 g_{mu nu} id`
/// with g = diag(+1 x k, -1 x l). Coded directly from the definition; the
/// construction below never feeds it.
pub fn check_clifford_relations(gammas: &[MatG], k: u32, l: u32) -> bool {
    let m = (k + l) as usize;
    if gammas.len() != m {
        return false;
    }
    let dim = gammas[0].nrows();
    for mu in 0..m {
        for nu in 0..m {
            let anti = gammas[mu]
                .matmul(&gammas[nu])
                .add(&gammas[nu].matmul(&gammas[mu]));
            let expected = if mu == nu {
                let sq = if mu < k as usize { gqi(2) } else { gqi(-2) };
                Mat::identity(dim).scale(&sq)
            } else {
                Mat::zeros(dim, dim)
            };
            if anti != expected {
                return false;
            }
        }
    }
    true
}

/// Build a deterministic gamma representation for even k+l between 2 and 8.
///
/// Construction: the (n,n) representation comes from the tensor recursion
/// (sigma_z padding on earlier factors, then sigma_x or i sigma_y), then
/// enough generators are multiplied by i to reach (k,l), and finally the
/// +1-square generators are listed first. Entries stay in {0, ±1, ±i}.
pub fn build_gamma(k: u32, l: u32) -> Result<GammaRep, Error> {
    let m = k + l;
    if m % 2 != 0 {
        return Err(Error::OddDimension { dim: m });
    }
    if m < 2 || m > 8 {
        return Err(Error::UnsupportedSignature { k, l });
    }
    let n = (m / 2) as usize;
    let i = im_unit();
    let mut plus: Vec<MatG> = Vec::new();
    let mut minus: Vec<MatG> = Vec::new();
    for j in 0..n {
        let mut fx: Vec<MatG> = Vec::new();
        let mut fy: Vec<MatG> = Vec::new();
        for p in 0..n {
            if p < j {
                fx.push(sigma_z());
                fy.push(sigma_z());
            } else if p == j {
                fx.push(sigma_x());
                fy.push(sigma_y().scale(&i));
            } else {
                fx.push(pauli_id());
                fy.push(pauli_id());
            }
        }
        plus.push(tensor(&fx));
        minus.push(tensor(&fy));
    }
    // Flip squares with factors of i until the counts match (k,l).
    while plus.len() > k as usize {
        let g = plus.pop().expect("nonempty");
        minus.push(g.scale(&i));
    }
    while minus.len() > l as usize {
        let g = minus.pop().expect("nonempty");
        plus.push(g.scale(&i));
    }
    let mut gammas = plus;
    gammas.extend(minus);
    let sig = Signature::new(k, l)?;
    Ok(rep_from_gammas(sig, gammas))
}

/// The explicit dimension-8 representation of Cl(7,1) given by the eight
/// tensor-product matrices, exposed as the `paper8` preset.
pub fn paper8_rep() -> GammaRep {
    let i = im_unit();
    let gammas = vec![
        tensor(&[sigma_x(), pauli_id(), pauli_id(), pauli_id()]),
        tensor(&[sigma_y(), sigma_y(), pauli_id(), pauli_id()]),
        tensor(&[sigma_y(), sigma_x(), sigma_y(), pauli_id()]),
        tensor(&[sigma_y(), sigma_x(), sigma_x(), sigma_y()]),
        tensor(&[sigma_y(), sigma_x(), sigma_z(), sigma_y()]),
        tensor(&[sigma_y(), sigma_z(), pauli_id(), sigma_y()]),
        tensor(&[sigma_y(), sigma_z(), sigma_y(), sigma_x()]),
        tensor(&[sigma_y(), sigma_z(), sigma_y(), sigma_z()]).scale(&i),
    ];
    rep_from_gammas(Signature::new(7, 1).expect("in cap"), gammas)
}

/// The charge-conjugation matrix accompanying the `paper8` preset.
pub fn paper8_c() -> MatG {
    tensor(&[sigma_x(), sigma_z(), sigma_y(), sigma_z()])
}

/// Bases of S+ and S- (eigenspaces of gamma_{2n+1} for ±iota).
pub fn weyl_split(rep: &GammaRep) -> (Vec<Vec<GaussRat>>, Vec<Vec<GaussRat>>) {
    let d = rep.spinor_dim();
    let half = |sign: GaussRat| {
        let mut m = rep.gamma_chir().clone();
        for idx in 0..d {
            m[(idx, idx)] = m[(idx, idx)].clone() - sign.clone();
        }
        let mut basis = m.kernel();
        for v in &mut basis {
            normalize_first_nonzero(v);
        }
        basis
    };
    let plus = half(rep.iota().clone());
    let minus = half(-rep.iota().clone());
    debug_assert_eq!(plus.len(), d / 2);
    debug_assert_eq!(minus.len(), d / 2);
    (plus, minus)
}

// ---------------------------------------------------------------------------
// Intertwiner solving: exact kernel of the stacked system  X g_mu = T_mu X.
//
// All representations built here are monomial (one nonzero per column), so
// each constraint couples matrix entries in pairs and the stacked kernel is
// a weighted union-find over the N^2 entries. A dense Gauss-Jordan path
// covers non-monomial input and cross-checks the fast path in tests.
// ---------------------------------------------------------------------------

/// A monomial matrix: column j holds its only nonzero, `coeff[j]`, in row
/// `perm[j]`.
struct Monomial {
    perm: Vec<usize>,
    coeff: Vec<GaussRat>,
}

fn as_monomial(m: &MatG) -> Option<Monomial> {
    let n = m.nrows();
    if n != m.ncols() {
        return None;
    }
    let mut perm = vec![usize::MAX; n];
    let mut coeff = vec![GaussRat::zero(); n];
    let mut seen = vec![false; n];
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            if !m[(i, j)].is_zero() {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            }
        }
        let i = hit?;
        if seen[i] {
            return None;
        }
        seen[i] = true;
        perm[j] = i;
        coeff[j] = m[(i, j)].clone();
    }
    Some(Monomial { perm, coeff })
}

struct WeightedUnion {
    parent: Vec<usize>,
    weight: Vec<GaussRat>, // val[x] = weight[x] * val[parent[x]]
    dead: Vec<bool>,       // on roots: component forced to zero
}

impl WeightedUnion {
    fn new(n: usize) -> Self {
        WeightedUnion {
            parent: (0..n).collect(),
            weight: vec![GaussRat::one(); n],
            dead: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, GaussRat) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        let mut acc = GaussRat::one();
        for &node in path.iter().rev() {
            acc = self.weight[node].clone() * acc;
            self.parent[node] = root;
            self.weight[node] = acc.clone();
        }
        let w = if x == root {
            GaussRat::one()
        } else {
            self.weight[x].clone()
        };
        (root, w)
    }

    /// Impose val[u] = f * val[v].
    fn union(&mut self, u: usize, v: usize, f: GaussRat) {
        let (ru, wu) = self.find(u);
        let (rv, wv) = self.find(v);
        if ru == rv {
            if wu != f.clone() * wv {
                self.dead[ru] = true;
            }
            return;
        }
        // val[ru] = (f * wv / wu) * val[rv]
        let dead = self.dead[ru] || self.dead[rv];
        self.parent[ru] = rv;
        self.weight[ru] = f * wv / wu;
        self.dead[rv] = dead;
    }
}

fn kernel_monomial(gammas: &[Monomial], targets: &[Monomial], n: usize) -> Vec<MatG> {
    let mut uf = WeightedUnion::new(n * n);
    for (g, t) in gammas.iter().zip(targets) {
        for i in 0..n {
            for j in 0..n {
                // X_{t.perm(i), g.perm(j)} * g.coeff[j] = t.coeff[i] * X_{i,j}
                let u = t.perm[i] * n + g.perm[j];
                let v = i * n + j;
                let f = t.coeff[i].clone() / g.coeff[j].clone();
                uf.union(u, v, f);
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut weights: Vec<(usize, usize, GaussRat)> = Vec::new(); // (root, node, w)
    for node in 0..n * n {
        let (r, w) = uf.find(node);
        if !roots.contains(&r) {
            roots.push(r);
        }
        weights.push((r, node, w));
    }
    let mut out = Vec::new();
    for &r in &roots {
        if uf.dead[r] {
            continue;
        }
        let mut x = Mat::zeros(n, n);
        for (root, node, w) in &weights {
            if *root == r {
                x[(node / n, node % n)] = w.clone();
            }
        }
        out.push(x);
    }
    out
}

fn kernel_dense(gammas: &[MatG], targets: &[MatG], n: usize) -> Vec<MatG> {
    // Basis of candidate solutions, refined one constraint at a time.
    let mut basis: Vec<MatG> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut e = Mat::zeros(n, n);
            e[(i, j)] = GaussRat::one();
            basis.push(e);
        }
    }
    for (g, t) in gammas.iter().zip(targets) {
        if basis.is_empty() {
            break;
        }
        let residuals: Vec<MatG> = basis
            .iter()
            .map(|x| x.matmul(g).sub(&t.matmul(x)))
            .collect();
        let mut rows = Mat::zeros(n * n, basis.len());
        for (b, r) in residuals.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    rows[(i * n + j, b)] = r[(i, j)].clone();
                }
            }
        }
        let coords = rows.kernel();
        basis = coords
            .iter()
            .map(|c| {
                let mut acc = Mat::zeros(n, n);
                for (b, coef) in c.iter().enumerate() {
                    if !coef.is_zero() {
                        acc = acc.add(&basis[b].scale(coef));
                    }
                }
                acc
            })
            .collect();
    }
    basis
}

/// Solve `X gamma_mu = target_mu X` for all mu; the solution space must be
/// one-dimensional. The result is scaled so the entry of largest magnitude
/// (first in row-major order among ties) is exactly one.
fn solve_intertwiner(gammas: &[MatG], targets: &[MatG]) -> Result<MatG, Error> {
    let n = gammas[0].nrows();
    let monos: Option<(Vec<Monomial>, Vec<Monomial>)> = gammas
        .iter()
        .map(as_monomial)
        .collect::<Option<Vec<_>>>()
        .and_then(|g| {
            targets
                .iter()
                .map(as_monomial)
                .collect::<Option<Vec<_>>>()
                .map(|t| (g, t))
        });
    let sols = match &monos {
        Some((g, t)) => kernel_monomial(g, t, n),
        None => kernel_dense(gammas, targets, n),
    };
    if sols.len() != 1 {
        return Err(Error::KernelDimension { got: sols.len() });
    }
    let x = &sols[0];
    let mut best: Option<(Rat, usize, usize)> = None;
    for i in 0..n {
        for j in 0..n {
            if x[(i, j)].is_zero() {
                continue;
            }
            let mag = abs_sq(&x[(i, j)]);
            let better = match &best {
                None => true,
                Some((bm, _, _)) => mag > *bm,
            };
            if better {
                best = Some((mag, i, j));
            }
        }
    }
    let (_, bi, bj) = best.ok_or(Error::KernelDimension { got: 0 })?;
    let inv = GaussRat::one() / x[(bi, bj)].clone();
    Ok(x.scale(&inv))
}

/// B with `B gamma_mu = gamma_mu^T B` for all mu.
pub fn solve_b(rep: &GammaRep) -> Result<MatG, Error> {
    let targets: Vec<MatG> = rep.gammas().iter().map(|g| g.transpose()).collect();
    solve_intertwiner(rep.gammas(), &targets)
}

/// C with `C gamma_mu = conj(gamma_mu) C`, scaled so `conj(C) C = ±id`
/// exactly when the required magnitude is a perfect square in the scalar
/// field. Returns the matrix and the `normalized` flag.
pub fn solve_c(rep: &GammaRep) -> Result<(MatG, bool), Error> {
    let targets: Vec<MatG> = rep.gammas().iter().map(|g| g.conj()).collect();
    let c = solve_intertwiner(rep.gammas(), &targets)?;
    let z = c
        .conj()
        .matmul(&c)
        .scalar_of_identity()
        .ok_or_else(|| Error::ConventionBug("conj(C) C is not scalar".into()))?;
    if !z.is_real() {
        return Err(Error::ConventionBug("conj(C) C is not real".into()));
    }
    let mag = if z.re >= Rat::zero() {
        z.re.clone()
    } else {
        -z.re.clone()
    };
    match rat_sqrt(&mag) {
        Some(root) => {
            // conj(tC)(tC) = t^2 z for real t; t = 1/sqrt(|z|).
            let t = GaussRat::new(Rat::one() / root, Rat::zero());
            Ok((c.scale(&t), true))
        }
        None => {
            // Floating fallback: |z| not a perfect square.
            let approx: f64 = rat_to_f64(&mag).sqrt().recip();
            let t = GaussRat::new(
                Rat::from_float(approx).unwrap_or_else(Rat::one),
                Rat::zero(),
            );
            Ok((c.scale(&t), false))
        }
    }
}

use crate::scalar::rat_to_f64;

/// Expected sign of conj(C) C: (-1)^{(l-k)(l-k+2)/8}.
pub fn cc_sign(sig: Signature) -> i64 {
    let d = sig.l() as i64 - sig.k() as i64;
    let e = d * (d + 2) / 8;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The intertwiner pair with C's inverse cached.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub b: MatG,
    pub c: MatG,
    pub c_inv: MatG,
    pub normalized: bool,
}

/// Solve both intertwiners and fix the residual phase of B so that
/// `conj(B) C = conj(C)^T B^T` holds exactly.
pub fn normalize_pair(rep: &GammaRep) -> Result<Intertwiner, Error> {
    let b = solve_b(rep)?;
    let (c, normalized) = solve_c(rep)?;
    let b = fix_bc_phase(&b, &c)?;
    let c_inv = c
        .inverse()
        .ok_or_else(|| Error::ConventionBug("C is singular".into()))?;
    Ok(Intertwiner {
        b,
        c,
        c_inv,
        normalized,
    })
}

/// Rescale B (phase only) so the pairing identity holds; the identity is
/// guaranteed up to scale by the commutant argument, so any failure beyond
/// that is a conventions bug.
pub fn fix_bc_phase(b: &MatG, c: &MatG) -> Result<MatG, Error> {
    let x = b.conj().matmul(c);
    let y = c.conj().transpose().matmul(&b.transpose());
    let w = x
        .proportionality(&y)
        .ok_or_else(|| Error::ConventionBug("conj(B)C not proportional to conj(C)^T B^T".into()))?;
    if abs_sq(&w) != Rat::one() {
        return Err(Error::ConventionBug(format!(
            "phase between conj(B)C and conj(C)^T B^T has |w| != 1: {w:?}"
        )));
    }
    // B -> tB with t/conj(t) = w; t = 1+w works unless w = -1, where t = i.
    let t = if w == -GaussRat::one() {
        im_unit()
    } else {
        GaussRat::one() + w
    };
    let b2 = b.scale(&t);
    let x2 = b2.conj().matmul(c);
    let y2 = c.conj().transpose().matmul(&b2.transpose());
    if x2 != y2 {
        return Err(Error::ConventionBug("BC phase fix failed".into()));
    }
    Ok(b2)
}

/// Pass/fail record for the five intertwiner identities.
#[derive(Clone, Debug)]
pub struct Prop1Report {
    /// B^T = (-1)^{n(n-1)/2} B.
    pub b_symmetry: bool,
    /// gamma_{2n+1}^T = (-1)^n B gamma_{2n+1} B^{-1}.
    pub chir_transpose: bool,
    /// conj(gamma_{2n+1}) = C gamma_{2n+1} C^{-1}.
    pub chir_conjugate: bool,
    /// conj(C) C = (-1)^{(l-k)(l-k+2)/8} id.
    pub cc_sign: bool,
    /// conj(B) C = conj(C)^T B^T.
    pub bc_identity: bool,
}

impl Prop1Report {
    pub fn all_pass(&self) -> bool {
        self.b_symmetry
            && self.chir_transpose
            && self.chir_conjugate
            && self.cc_sign
            && self.bc_identity
    }
}

pub fn prop1_audit(rep: &GammaRep, pair: &Intertwiner) -> Prop1Report {
    let n = rep.n() as i64;
    let b_sign = if (n * (n - 1) / 2).rem_euclid(2) == 0 {
        gqi(1)
    } else {
        gqi(-1)
    };
    let b_symmetry = pair.b.transpose() == pair.b.scale(&b_sign);
    let b_inv = pair.b.inverse().expect("B invertible");
    let chir_sign = if n.rem_euclid(2) == 0 { gqi(1) } else { gqi(-1) };
    let chir_transpose = rep.gamma_chir().transpose()
        == pair
            .b
            .matmul(rep.gamma_chir())
            .matmul(&b_inv)
            .scale(&chir_sign);
    let chir_conjugate =
        rep.gamma_chir().conj() == pair.c.matmul(rep.gamma_chir()).matmul(&pair.c_inv);
    let cc = pair.c.conj().matmul(&pair.c);
    let cc_ok = cc == Mat::identity(rep.spinor_dim()).scale(&gqi(cc_sign(rep.sig())));
    let x = pair.b.conj().matmul(&pair.c);
    let y = pair.c.conj().transpose().matmul(&pair.b.transpose());
    Prop1Report {
        b_symmetry,
        chir_transpose,
        chir_conjugate,
        cc_sign: cc_ok,
        bc_identity: x == y,
    }
}

/// Charge conjugation phi -> C^{-1} conj(phi).
pub fn charge_conjugate(rep: &GammaRep, pair: &Intertwiner, phi: &[GaussRat]) -> Spinor {
    let conj: Vec<GaussRat> = phi.iter().map(|x| x.conj()).collect();
    rep.spinor(pair.c_inv.mul_vec(&conj))
}

fn realify(v: &[GaussRat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(2 * v.len());
    for x in v {
        out.push(x.re.clone());
    }
    for x in v {
        out.push(x.im.clone());
    }
    out
}

/// Real basis of the Dirac-Majorana space S_R = {phi : phi_c = phi}, when
/// conj(C) C = +id; `None` in the quaternionic case.
pub fn majorana_basis(rep: &GammaRep, pair: &Intertwiner) -> Option<Vec<Vec<GaussRat>>> {
    let d = rep.spinor_dim();
    let cc = pair.c.conj().matmul(&pair.c);
    if !cc.is_identity() {
        return None;
    }
    let theta = |phi: &[GaussRat]| -> Vec<GaussRat> {
        let conj: Vec<GaussRat> = phi.iter().map(|x| x.conj()).collect();
        pair.c_inv.mul_vec(&conj)
    };
    let mut candidates: Vec<Vec<GaussRat>> = Vec::new();
    let i = im_unit();
    for j in 0..d {
        let mut e = vec![GaussRat::zero(); d];
        e[j] = GaussRat::one();
        let mut v = theta(&e);
        for (a, b) in v.iter_mut().zip(&e) {
            *a = a.clone() + b.clone();
        }
        candidates.push(v);
        let ie: Vec<GaussRat> = e.iter().map(|x| x.clone() * i.clone()).collect();
        let mut w = theta(&ie);
        for (a, b) in w.iter_mut().zip(&ie) {
            *a = a.clone() + b.clone();
        }
        candidates.push(w);
    }
    // Greedy maximal R-independent subset; S_R has real dimension d.
    let mut chosen: Vec<Vec<GaussRat>> = Vec::new();
    let mut chosen_real: Vec<Vec<Rat>> = Vec::new();
    for cand in candidates {
        if cand.iter().all(|x| x.is_zero()) {
            continue;
        }
        let r = realify(&cand);
        if in_span(&r, &chosen_real) {
            continue;
        }
        chosen_real.push(r);
        chosen.push(cand);
        if chosen.len() == d {
            break;
        }
    }
    debug_assert_eq!(chosen.len(), d);
    Some(chosen)
}

/// The complex structure J = gamma(eta) on Dirac-Majorana space, in the
/// Majorana basis, for signatures (3+p, 1+p). Its entries are real.
pub fn majorana_complex_structure(
    rep: &GammaRep,
    pair: &Intertwiner,
    basis: &[Vec<GaussRat>],
) -> Result<MatG, Error> {
    let (k, l) = (rep.sig().k(), rep.sig().l());
    if !(k >= 3 && l >= 1 && k - 3 == l - 1 && k - 3 <= 1) {
        return Err(Error::UnsupportedSignature { k, l });
    }
    let _ = pair;
    let d = rep.spinor_dim();
    assert_eq!(basis.len(), d);
    // Solve the real coordinates of J b_j in the Majorana basis.
    let mut a = Mat::<Rat>::zeros(2 * d, d);
    for (col, b) in basis.iter().enumerate() {
        let r = realify(b);
        for (row, val) in r.into_iter().enumerate() {
            a[(row, col)] = val;
        }
    }
    let mut j = Mat::<GaussRat>::zeros(d, d);
    for (col, b) in basis.iter().enumerate() {
        let img = rep.gamma_chir().mul_vec(b);
        let target = realify(&img);
        // Augmented solve: [A | target].
        let mut aug = Mat::<Rat>::zeros(2 * d, d + 1);
        for rw in 0..2 * d {
            for cl in 0..d {
                aug[(rw, cl)] = a[(rw, cl)].clone();
            }
            aug[(rw, d)] = target[rw].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&d) {
            return Err(Error::ConventionBug(
                "gamma(eta) does not preserve the Majorana space".into(),
            ));
        }
        let mut pivot_of_col = vec![None; d];
        for (row, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(row);
        }
        for cl in 0..d {
            if let Some(row) = pivot_of_col[cl] {
                j[(cl, col)] = GaussRat::new(aug[(row, d)].clone(), Rat::zero());
            }
        }
    }
    if !j.matmul(&j).scale(&-GaussRat::one()).is_identity() {
        return Err(Error::NotComplexStructure);
    }
    Ok(j)
}

/// Map a complex coordinate vector in the Majorana basis back to a spinor.
pub fn from_majorana_coords(basis: &[Vec<GaussRat>], coords: &[GaussRat]) -> Vec<GaussRat> {
    let d = basis[0].len();
    let mut out = vec![GaussRat::zero(); d];
    for (b, c) in basis.iter().zip(coords) {
        for (o, x) in out.iter_mut().zip(b) {
            *o = o.clone() + c.clone() * x.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::same_span;

    #[test]
    fn build_small_reps() {
        for (k, l) in [(1, 1), (2, 0), (0, 2), (3, 1), (2, 2), (1, 3), (0, 4)] {
            let rep = build_gamma(k, l).unwrap();
            assert!(
                check_clifford_relations(rep.gammas(), k, l),
                "relations ({k},{l})"
            );
        }
        assert!(matches!(
            build_gamma(2, 1),
            Err(Error::OddDimension { dim: 3 })
        ));
    }

    #[test]
    fn rep_1_1_is_pauli() {
        let rep = build_gamma(1, 1).unwrap();
        assert_eq!(rep.gammas()[0], sigma_x());
        assert_eq!(rep.gammas()[1], sigma_y().scale(&im_unit()));
        // iota = 1 since eta^2 = +1 for (1,1).
        assert_eq!(rep.iota(), &gqi(1));
    }

    #[test]
    fn rep_3_1_entries() {
        let rep = build_gamma(3, 1).unwrap();
        assert_eq!(rep.spinor_dim(), 4);
        for g in rep.gammas() {
            for i in 0..4 {
                for j in 0..4 {
                    let e = &g[(i, j)];
                    assert!(
                        e.is_zero() || abs_sq(e) == Rat::one(),
                        "entries stay in 0, ±1, ±i"
                    );
                }
            }
        }
        assert_eq!(rep.iota(), &im_unit());
    }

    #[test]
    fn paper8_relations() {
        let rep = paper8_rep();
        assert!(check_clifford_relations(rep.gammas(), 7, 1));
        assert_eq!(rep.iota(), &im_unit());
    }

    #[test]
    fn weyl_split_dims() {
        for (k, l) in [(1, 1), (3, 1)] {
            let rep = build_gamma(k, l).unwrap();
            let (p, m) = weyl_split(&rep);
            assert_eq!(p.len(), rep.spinor_dim() / 2);
            assert_eq!(m.len(), rep.spinor_dim() / 2);
            for v in &p {
                assert_eq!(rep.chirality_of(v), Chirality::Plus);
            }
            for v in &m {
                assert_eq!(rep.chirality_of(v), Chirality::Minus);
            }
        }
        let rep = paper8_rep();
        let (p, m) = weyl_split(&rep);
        assert_eq!((p.len(), m.len()), (8, 8));
    }

    #[test]
    fn monomial_and_dense_kernels_agree() {
        let rep = build_gamma(1, 1).unwrap();
        let targets: Vec<MatG> = rep.gammas().iter().map(|g| g.transpose()).collect();
        let monos: Vec<Monomial> = rep.gammas().iter().map(|g| as_monomial(g).unwrap()).collect();
        let tm: Vec<Monomial> = targets.iter().map(|g| as_monomial(g).unwrap()).collect();
        let fast = kernel_monomial(&monos, &tm, 2);
        let dense = kernel_dense(rep.gammas(), &targets, 2);
        assert_eq!(fast.len(), 1);
        assert_eq!(dense.len(), 1);
        assert!(fast[0].proportionality(&dense[0]).is_some());
    }

    #[test]
    fn b_symmetry_by_dimension() {
        // n = 1: symmetric; n = 2: antisymmetric; n = 4: symmetric.
        let rep = build_gamma(1, 1).unwrap();
        let b = solve_b(&rep).unwrap();
        assert_eq!(b.transpose(), b);
        let rep = build_gamma(3, 1).unwrap();
        let b = solve_b(&rep).unwrap();
        assert_eq!(b.transpose(), b.scale(&gqi(-1)));
        let rep = paper8_rep();
        let b = solve_b(&rep).unwrap();
        assert_eq!(b.transpose(), b);
    }

    #[test]
    fn cc_signs() {
        // (3,1): +1 (Majorana exists); (1,3): -1; (7,1): -1.
        assert_eq!(cc_sign(Signature::new(3, 1).unwrap()), 1);
        assert_eq!(cc_sign(Signature::new(1, 3).unwrap()), -1);
        assert_eq!(cc_sign(Signature::new(7, 1).unwrap()), -1);
        for (k, l) in [(3, 1), (1, 3), (1, 1), (2, 2), (0, 4)] {
            let rep = build_gamma(k, l).unwrap();
            let (c, normalized) = solve_c(&rep).unwrap();
            assert!(normalized, "({k},{l})");
            let cc = c.conj().matmul(&c);
            let expect =
                Mat::identity(rep.spinor_dim()).scale(&gqi(cc_sign(rep.sig())));
            assert_eq!(cc, expect, "({k},{l})");
        }
    }

    #[test]
    fn paper8_c_matches_solver() {
        let rep = paper8_rep();
        let (c, _) = solve_c(&rep).unwrap();
        // The preset C intertwines and agrees with the solved one up to scale.
        for g in rep.gammas() {
            assert_eq!(paper8_c().matmul(g), g.conj().matmul(&paper8_c()));
        }
        assert!(c.proportionality(&paper8_c()).is_some());
        let cc = c.conj().matmul(&c);
        assert_eq!(cc, Mat::identity(16).scale(&gqi(-1)));
    }

    #[test]
    fn normalized_pair_and_prop1() {
        for (k, l) in [(1, 1), (3, 1), (2, 2), (0, 4), (1, 3)] {
            let rep = build_gamma(k, l).unwrap();
            let pair = normalize_pair(&rep).unwrap();
            let report = prop1_audit(&rep, &pair);
            assert!(report.all_pass(), "({k},{l}): {report:?}");
        }
        let rep = paper8_rep();
        let pair = normalize_pair(&rep).unwrap();
        assert!(prop1_audit(&rep, &pair).all_pass());
    }

    #[test]
    fn scaling_b_by_i_breaks_bc() {
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let bad = pair.b.scale(&im_unit());
        let x = bad.conj().matmul(&pair.c);
        let y = pair.c.conj().transpose().matmul(&bad.transpose());
        assert_ne!(x, y);
    }

    #[test]
    fn conjugation_chirality_rule() {
        // eta^2 = +1 preserves chirality, eta^2 = -1 flips it.
        for (k, l) in [(1, 1), (3, 1), (2, 2)] {
            let rep = build_gamma(k, l).unwrap();
            let pair = normalize_pair(&rep).unwrap();
            let flips = eta_square_sign::<GaussRat>(rep.sig()) == -1;
            let (p, _m) = weyl_split(&rep);
            for v in &p {
                let c = charge_conjugate(&rep, &pair, v);
                let expect = if flips { Chirality::Minus } else { Chirality::Plus };
                assert_eq!(c.chirality, expect, "({k},{l})");
            }
        }
        let rep = paper8_rep();
        let pair = normalize_pair(&rep).unwrap();
        let (p, _) = weyl_split(&rep);
        let c = charge_conjugate(&rep, &pair, &p[0]);
        assert_eq!(c.chirality, Chirality::Minus);
    }

    #[test]
    fn involutive_when_real() {
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let phi: Vec<GaussRat> = vec![gqi(1), gqi(2) + im_unit(), gqi(-3), im_unit()];
        let once = charge_conjugate(&rep, &pair, &phi);
        let twice = charge_conjugate(&rep, &pair, &once.components);
        assert_eq!(twice.components, phi);
    }

    #[test]
    fn majorana_existence() {
        // (3,1) and (1,1): real case; (7,1): quaternionic.
        for (k, l, exists) in [(3u32, 1u32, true), (1, 1, true), (1, 3, false)] {
            let rep = build_gamma(k, l).unwrap();
            let pair = normalize_pair(&rep).unwrap();
            let mb = majorana_basis(&rep, &pair);
            assert_eq!(mb.is_some(), exists, "({k},{l})");
            if let Some(basis) = mb {
                assert_eq!(basis.len(), rep.spinor_dim());
            }
        }
        let rep = paper8_rep();
        let pair = normalize_pair(&rep).unwrap();
        assert!(majorana_basis(&rep, &pair).is_none());
    }

    #[test]
    fn majorana_j_and_weyl_match() {
        let rep = build_gamma(3, 1).unwrap();
        let pair = normalize_pair(&rep).unwrap();
        let basis = majorana_basis(&rep, &pair).unwrap();
        let j = majorana_complex_structure(&rep, &pair, &basis).unwrap();
        // Real 4x4 with J^2 = -id.
        for i in 0..4 {
            for jj in 0..4 {
                assert!(j[(i, jj)].is_real());
            }
        }
        let jop = crate::cstruct::ComplexStructureOp::new(j).unwrap();
        let (wp, wm) = crate::cstruct::split_pm(&jop);
        let to_spinors =
            |vs: &[Vec<GaussRat>]| -> Vec<Vec<GaussRat>> {
                vs.iter().map(|v| from_majorana_coords(&basis, v)).collect()
            };
        let (sp, sm) = weyl_split(&rep);
        let wp_s = to_spinors(&wp);
        let wm_s = to_spinors(&wm);
        let match_a = same_span(&wp_s, &sp) && same_span(&wm_s, &sm);
        let match_b = same_span(&wp_s, &sm) && same_span(&wm_s, &sp);
        assert!(match_a || match_b, "W± must be the Weyl spaces");
    }

    #[test]
    fn i_gamma_swaps_signature() {
        for (k, l) in [(1, 1), (3, 1), (2, 2)] {
            let rep = build_gamma(k, l).unwrap();
            let swapped: Vec<MatG> = rep
                .gammas()
                .iter()
                .map(|g| g.scale(&im_unit()))
                .collect();
            // i gamma: squares flip, so reorder (-1 squares of the original
            // +1 block become the new +1 block).
            let mut reordered: Vec<MatG> = swapped[k as usize..].to_vec();
            reordered.extend_from_slice(&swapped[..k as usize]);
            assert!(check_clifford_relations(&reordered, l, k), "({k},{l})");
        }
    }
}
