//! PBW models of (generalized) Verma modules for `sl2` and `sl3`, built from matrix units.
//!
//! A Lie algebra element is an integer `n×n` matrix. Module vectors are maps from PBW
//! exponent vectors (in the fixed order of [`Algebra::lowering`]) to polynomial coefficients.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::rational::{qi, to_i64, Q};
use serde::Serialize;
use std::collections::BTreeMap;

pub type Mat = Vec<Vec<i64>>;
pub type Mono = Vec<u32>;
pub type Vector = BTreeMap<Mono, Poly>;

/// Largest order and label accepted for `sl3`.
pub const SL3_CAP: usize = 4;
/// Largest order accepted for `sl2`.
pub const SL2_CAP: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Sl2,
    Sl3,
}

impl std::str::FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" | "a1" => Ok(Algebra::Sl2),
            "sl3" | "a2" => Ok(Algebra::Sl3),
            _ => Err(Error::Invalid(format!("oracle: unsupported algebra {s} (sl2 or sl3)"))),
        }
    }
}

/// Which parabolic the module is induced from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Induction {
    /// Full Verma module (Borel).
    Borel,
    /// `sl3` with the first node crossed: the `F2` exponent is bounded by the second label.
    FirstNodeCrossed,
}

impl Algebra {
    pub fn size(self) -> usize {
        match self {
            Algebra::Sl2 => 2,
            Algebra::Sl3 => 3,
        }
    }

    pub fn rank(self) -> usize {
        self.size() - 1
    }

    /// Matrix positions of the lowering operators in PBW order:
    /// `F` for `sl2`; `F1 = E21`, `Fθ = E31`, `F2 = E32` for `sl3`.
    pub fn lowering(self) -> Vec<(usize, usize)> {
        match self {
            Algebra::Sl2 => vec![(1, 0)],
            Algebra::Sl3 => vec![(1, 0), (2, 0), (2, 1)],
        }
    }

    /// Simple-root coefficients subtracted by each lowering operator.
    pub fn lowering_weights(self) -> Vec<Vec<u32>> {
        match self {
            Algebra::Sl2 => vec![vec![1]],
            Algebra::Sl3 => vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        }
    }

    fn cap(self) -> usize {
        match self {
            Algebra::Sl2 => SL2_CAP,
            Algebra::Sl3 => SL3_CAP,
        }
    }

    pub fn unit(self, i: usize, j: usize) -> Mat {
        let n = self.size();
        let mut m = vec![vec![0; n]; n];
        m[i][j] = 1;
        m
    }

    /// `E_i = E_{i,i+1}`.
    pub fn raising(self, i: usize) -> Mat {
        self.unit(i, i + 1)
    }

    /// `H_i = E_ii − E_{i+1,i+1}`.
    pub fn cartan(self, i: usize) -> Mat {
        let mut m = self.unit(i, i);
        m[i + 1][i + 1] = -1;
        m
    }

    /// Chevalley-type basis: raising, Cartan and lowering matrix units.
    pub fn basis(self) -> Vec<(String, Mat)> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push((format!("E{}{}", i + 1, j + 1), self.unit(i, j)));
                }
            }
        }
        for i in 0..self.rank() {
            out.push((format!("H{}", i + 1), self.cartan(i)));
        }
        out
    }
}

pub fn bracket(x: &Mat, y: &Mat) -> Mat {
    let n = x.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s += x[i][k] * y[k][j] - y[i][k] * x[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

fn is_zero(x: &Mat) -> bool {
    x.iter().all(|r| r.iter().all(|&v| v == 0))
}

fn add_into(acc: &mut Vector, v: Vector, scale: &Poly) {
    for (m, c) in v {
        let e = acc.entry(m).or_insert_with(Poly::zero);
        *e += &c * scale;
    }
}

fn prune(v: &mut Vector) {
    v.retain(|_, c| !c.is_zero());
}

/// A (generalized) Verma module with highest weight given by Cartan eigenvalues `labels`.
#[derive(Clone, Debug)]
pub struct VermaModule {
    pub algebra: Algebra,
    pub labels: Vec<Poly>,
    pub induction: Induction,
    /// Per lowering operator, an exponent bound (quotient by the Levi singular vector).
    bounds: Vec<Option<u32>>,
}

impl VermaModule {
    pub fn new(algebra: Algebra, labels: Vec<Poly>, induction: Induction) -> Result<Self> {
        if labels.len() != algebra.rank() {
            return Err(Error::RankMismatch { expected: algebra.rank(), found: labels.len() });
        }
        let mut bounds = vec![None; algebra.lowering().len()];
        if induction == Induction::FirstNodeCrossed {
            if algebra != Algebra::Sl3 {
                return Err(Error::Invalid("oracle: first-node-crossed induction needs sl3".into()));
            }
            let b = labels[1]
                .as_constant()
                .and_then(|c| to_i64(&c))
                .filter(|&c| c >= 0)
                .ok_or_else(|| Error::NotDominant(format!("uncrossed label {}", labels[1])))?;
            bounds[2] = Some(b as u32);
        }
        Ok(VermaModule { algebra, labels, induction, bounds })
    }

    pub fn generator(&self) -> Vector {
        let mut v = Vector::new();
        v.insert(vec![0; self.algebra.lowering().len()], Poly::one());
        v
    }

    fn admissible(&self, m: &Mono) -> bool {
        m.iter().zip(&self.bounds).all(|(e, b)| b.is_none_or(|b| *e <= b))
    }

    /// `λ(D)` for a diagonal traceless `D`.
    fn weight_of(&self, d: &Mat) -> Poly {
        let mut acc = Poly::zero();
        let mut partial = 0;
        for i in 0..self.algebra.rank() {
            partial += d[i][i];
            acc += self.labels[i].scale(&qi(partial));
        }
        acc
    }

    fn act_on_generator(&self, x: &Mat) -> Vector {
        let low = self.algebra.lowering();
        let mut out = Vector::new();
        let n = self.algebra.size();
        let mut diag = vec![vec![0; n]; n];
        for i in 0..n {
            diag[i][i] = x[i][i];
        }
        let h = self.weight_of(&diag);
        if !h.is_zero() {
            out.insert(vec![0; low.len()], h);
        }
        for (k, &(i, j)) in low.iter().enumerate() {
            if x[i][j] != 0 {
                let mut m = vec![0; low.len()];
                m[k] = 1;
                *out.entry(m).or_insert_with(Poly::zero) += Poly::int(x[i][j]);
            }
        }
        out
    }

    /// `F_k · v`, reordering into PBW form.
    fn prepend(&self, k: usize, v: Vector) -> Vector {
        let f = {
            let (i, j) = self.algebra.lowering()[k];
            self.algebra.unit(i, j)
        };
        let mut out = Vector::new();
        for (m, c) in v {
            if m[..k].iter().all(|&e| e == 0) {
                let mut m2 = m;
                m2[k] += 1;
                *out.entry(m2).or_insert_with(Poly::zero) += c;
            } else {
                add_into(&mut out, self.act_mono_full(&f, &m), &c);
            }
        }
        out
    }

    /// `x · m` in the full Verma module.
    fn act_mono_full(&self, x: &Mat, m: &Mono) -> Vector {
        if is_zero(x) {
            return Vector::new();
        }
        let Some(k) = m.iter().position(|&e| e > 0) else {
            return self.act_on_generator(x);
        };
        let mut rest = m.clone();
        rest[k] -= 1;
        let (i, j) = self.algebra.lowering()[k];
        let fk = self.algebra.unit(i, j);
        // x F_k r = F_k (x r) + [x, F_k] r
        let mut out = self.prepend(k, self.act_mono_full(x, &rest));
        add_into(&mut out, self.act_mono_full(&bracket(x, &fk), &rest), &Poly::one());
        prune(&mut out);
        out
    }

    pub fn act(&self, x: &Mat, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (m, c) in v {
            add_into(&mut out, self.act_mono_full(x, m), c);
        }
        out.retain(|m, c| !c.is_zero() && self.admissible(m));
        out
    }

    pub fn mono_vector(&self, m: &Mono) -> Vector {
        let mut v = Vector::new();
        if self.admissible(m) {
            v.insert(m.clone(), Poly::one());
        }
        v
    }

    /// Admissible PBW monomials lowering by exactly `depth` (simple-root coefficients).
    pub fn monomials_at(&self, depth: &[u32]) -> Vec<Mono> {
        let weights = self.algebra.lowering_weights();
        let mut out = Vec::new();
        let mut cur = vec![0u32; weights.len()];
        fn rec(k: usize, rem: Vec<i64>, weights: &[Vec<u32>], cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if k == weights.len() {
                if rem.iter().all(|&r| r == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let mut e = 0u32;
            let mut r = rem.clone();
            loop {
                if r.iter().any(|&x| x < 0) {
                    break;
                }
                cur[k] = e;
                rec(k + 1, r.clone(), weights, cur, out);
                for (ri, w) in r.iter_mut().zip(&weights[k]) {
                    *ri -= *w as i64;
                }
                e += 1;
            }
            cur[k] = 0;
        }
        rec(0, depth.iter().map(|&d| d as i64).collect(), &weights, &mut cur, &mut out);
        out.retain(|m| self.admissible(m));
        out
    }
}

/// Raising matrices of the weight space at a given depth, together with its basis.
#[derive(Clone, Debug, Serialize)]
pub struct PbwState {
    pub algebra: Algebra,
    pub order: usize,
    /// Basis of the weight space: one monomial per factor.
    pub basis: Vec<Vec<Mono>>,
    /// Target basis for each simple raising operator.
    pub target_bases: Vec<Vec<Vec<Mono>>>,
    /// Exact matrices `rows = target basis`, `cols = basis`, one per simple root.
    #[serde(skip)]
    pub raising_matrices: Vec<Matrix>,
}

fn numeric(c: &Poly) -> Result<Q> {
    c.as_constant().ok_or_else(|| Error::Invalid("oracle: labels must be numeric for the nullspace".into()))
}

fn tensor_basis(mods: &[&VermaModule], depth: &[u32]) -> Vec<Vec<Mono>> {
    let r = depth.len();
    let mut out: Vec<Vec<Mono>> = vec![vec![]];
    for (f, module) in mods.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            let used: Vec<u32> = (0..r)
                .map(|i| {
                    partial
                        .iter()
                        .flat_map(|m| m.iter().zip(module.algebra.lowering_weights()).map(move |(e, w)| e * w[i]))
                        .sum()
                })
                .collect();
            if used.iter().zip(depth).any(|(u, d)| u > d) {
                continue;
            }
            let rem: Vec<u32> = depth.iter().zip(&used).map(|(d, u)| d - u).collect();
            let choices: Vec<Mono> = if f + 1 == mods.len() {
                module.monomials_at(&rem)
            } else {
                all_below(module, &rem)
            };
            for m in choices {
                let mut p = partial.clone();
                p.push(m);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn all_below(module: &VermaModule, depth: &[u32]) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut idx = vec![0u32; depth.len()];
    loop {
        out.extend(module.monomials_at(&idx));
        let mut k = 0;
        while k < idx.len() {
            if idx[k] < depth[k] {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    out
}

/// Raising action of `E_i` on a tensor monomial, expanded in tensor monomials.
fn raise_tensor(mods: &[&VermaModule], i: usize, t: &[Mono]) -> BTreeMap<Vec<Mono>, Q> {
    let e = mods[0].algebra.raising(i);
    let mut out: BTreeMap<Vec<Mono>, Q> = BTreeMap::new();
    for (f, module) in mods.iter().enumerate() {
        let image = module.act(&e, &module.mono_vector(&t[f]));
        for (m, c) in image {
            let mut key = t.to_vec();
            key[f] = m;
            *out.entry(key).or_insert_with(|| qi(0)) += c.as_constant().expect("numeric labels");
        }
    }
    out
}

/// State of the weight space `depth` below the top in `M(λ₁) ⊗ ⋯`.
pub fn pbw_state(mods: &[&VermaModule], depth: &[u32], order: usize) -> Result<PbwState> {
    let algebra = mods[0].algebra;
    for m in mods {
        for l in &m.labels {
            numeric(l)?;
        }
    }
    let basis = tensor_basis(mods, depth);
    let mut target_bases = Vec::new();
    let mut raising_matrices = Vec::new();
    for i in 0..algebra.rank() {
        if depth[i] == 0 {
            target_bases.push(vec![]);
            raising_matrices.push(vec![]);
            continue;
        }
        let mut d = depth.to_vec();
        d[i] -= 1;
        let targets = tensor_basis(mods, &d);
        let index: BTreeMap<&Vec<Mono>, usize> = targets.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let mut mat = vec![vec![qi(0); basis.len()]; targets.len()];
        for (col, t) in basis.iter().enumerate() {
            for (key, c) in raise_tensor(mods, i, t) {
                let row = *index.get(&key).expect("raising stays in the weight lattice");
                mat[row][col] += c;
            }
        }
        target_bases.push(targets);
        raising_matrices.push(mat);
    }
    Ok(PbwState { algebra, order, basis, target_bases, raising_matrices })
}

impl PbwState {
    /// Exact basis of the singular vectors.
    pub fn singular_vectors(&self) -> Vec<Vec<Q>> {
        let rows: Matrix = self.raising_matrices.iter().flatten().cloned().collect();
        linalg::nullspace(&rows, self.basis.len())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularVectors {
    pub dimension: usize,
    /// Basis monomials, one PBW exponent vector per factor.
    pub basis: Vec<Vec<Mono>>,
    #[serde(serialize_with = "ser_q_rows")]
    pub vectors: Vec<Vec<Q>>,
}

fn ser_q_rows<S: serde::Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn check_caps(algebra: Algebra, labels: &[&[Q]], m: usize) -> Result<()> {
    if m > algebra.cap() {
        return Err(Error::DegreeCap(m, algebra.cap()));
    }
    if algebra == Algebra::Sl3 {
        for l in labels.iter().flat_map(|v| v.iter()) {
            if num_traits::Signed::abs(l) > qi(SL3_CAP as i64 * 3) {
                return Err(Error::DegreeCap(m, SL3_CAP));
            }
        }
    }
    Ok(())
}

fn module(algebra: Algebra, labels: &[Q], induction: Induction) -> Result<VermaModule> {
    VermaModule::new(algebra, labels.iter().cloned().map(Poly::constant).collect(), induction)
}

/// Singular vectors of weight `λ+ν−Mα` in `M(λ) ⊗ M(ν)`, where `alpha` gives the simple-root
/// coefficients of the positive root `α`.
pub fn singular_vectors_biverma(
    algebra: Algebra,
    induction: Induction,
    lambda: &[Q],
    nu: &[Q],
    alpha: &[u32],
    m: usize,
) -> Result<SingularVectors> {
    check_caps(algebra, &[lambda, nu], m)?;
    let a = module(algebra, lambda, induction)?;
    let b = module(algebra, nu, induction)?;
    let depth: Vec<u32> = alpha.iter().map(|c| c * m as u32).collect();
    let state = pbw_state(&[&a, &b], &depth, m)?;
    let vectors = state.singular_vectors();
    Ok(SingularVectors { dimension: vectors.len(), basis: state.basis, vectors })
}

/// Dimension of the singular vectors of weight `λ − Σ depth_i α_i` in `M(λ)`.
pub fn singular_vectors_verma(algebra: Algebra, induction: Induction, lambda: &[Q], depth: &[u32]) -> Result<SingularVectors> {
    let total: u32 = depth.iter().sum();
    check_caps(algebra, &[lambda], total as usize)?;
    let a = module(algebra, lambda, induction)?;
    let state = pbw_state(&[&a], depth, total as usize)?;
    let vectors = state.singular_vectors();
    Ok(SingularVectors { dimension: vectors.len(), basis: state.basis, vectors })
}

/// `E F^k v` in the `sl2` Verma module with symbolic `H`-eigenvalue `h`; the commutation identity
/// predicts `(k h + k(1−k)) F^{k−1} v`. Returns the computed coefficients for `k = 1..=kmax`.
pub fn commutation_audit(kmax: usize) -> Vec<(usize, Poly, bool)> {
    let h = Poly::var("h");
    let v = VermaModule::new(Algebra::Sl2, vec![h.clone()], Induction::Borel).expect("rank 1");
    let e = Algebra::Sl2.raising(0);
    (1..=kmax)
        .map(|k| {
            let image = v.act(&e, &v.mono_vector(&vec![k as u32]));
            let coeff = image.get(&vec![k as u32 - 1]).cloned().unwrap_or_else(Poly::zero);
            let k_ = k as i64;
            let expected = &h.scale(&qi(k_)) + &Poly::int(k_ * (1 - k_));
            let ok = image.len() <= 1 && coeff == expected;
            (k, coeff, ok)
        })
        .collect()
}

/// Checks `X(Y m) − Y(X m) = [X,Y] m` on every PBW monomial up to `depth` for every basis pair.
pub fn structure_constant_audit(algebra: Algebra, labels: &[Poly], max_depth: u32) -> Result<usize> {
    let v = VermaModule::new(algebra, labels.to_vec(), Induction::Borel)?;
    let basis = algebra.basis();
    let r = algebra.rank();
    let mut monos = Vec::new();
    let mut idx = vec![0u32; r];
    loop {
        monos.extend(v.monomials_at(&idx));
        let mut k = 0;
        while k < r {
            if idx[k] < max_depth {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    let mut checked = 0;
    for m in &monos {
        let mv = v.mono_vector(m);
        for (xn, x) in &basis {
            for (yn, y) in &basis {
                let lhs = {
                    let mut a = v.act(x, &v.act(y, &mv));
                    add_into(&mut a, v.act(y, &v.act(x, &mv)), &Poly::int(-1));
                    prune(&mut a);
                    a
                };
                let rhs = v.act(&bracket(x, y), &mv);
                if lhs != rhs {
                    return Err(Error::Invalid(format!("oracle: [{xn},{yn}] fails on {m:?}")));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
