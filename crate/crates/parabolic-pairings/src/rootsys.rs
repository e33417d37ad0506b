//! Root data for the families A, B, C, D and G2.
//!
//! Weights are stored either by Dynkin labels (`Basis::Fundamental`) or by
//! ε-coordinates (`Basis::Epsilon`). The bilinear form is the Killing form,
//! normalised so that a long root has squared length `1/h∨`.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::rational::{fmt_q, qf, qi, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 3,
            Family::G2 => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn a(rank: usize) -> Self {
        LieType::new(Family::A, rank).expect("valid A rank")
    }

    pub fn b(rank: usize) -> Self {
        LieType::new(Family::B, rank).expect("valid B rank")
    }

    pub fn c(rank: usize) -> Self {
        LieType::new(Family::C, rank).expect("valid C rank")
    }

    pub fn d(rank: usize) -> Self {
        LieType::new(Family::D, rank).expect("valid D rank")
    }

    pub fn g2() -> Self {
        LieType { family: Family::G2, rank: 2 }
    }

    /// Dimension of the ε-coordinate space.
    pub fn eps_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let l = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            Family::A => fact(l + 1),
            Family::B | Family::C => (1u128 << l) * fact(l),
            Family::D => (1u128 << (l - 1)) * fact(l),
            Family::G2 => 12,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::G2 => write!(f, "G2"),
            fam => write!(f, "{:?}{}", fam, self.rank),
        }
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("G2") {
            return Ok(LieType::g2());
        }
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G2,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnsupportedType(s.to_string()))?;
        LieType::new(fam, rank)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Fundamental,
    Epsilon,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<Q>,
    pub basis: Basis,
    pub lie_type: LieType,
}

impl Weight {
    pub fn labels(lie_type: LieType, labels: Vec<Q>) -> Self {
        Weight { coords: labels, basis: Basis::Fundamental, lie_type }
    }

    pub fn from_ints(lie_type: LieType, labels: &[i64]) -> Self {
        Weight::labels(lie_type, labels.iter().map(|&x| qi(x)).collect())
    }

    pub fn epsilon(lie_type: LieType, coords: Vec<Q>) -> Self {
        Weight { coords, basis: Basis::Epsilon, lie_type }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Fundamental => "labels",
            Basis::Epsilon => "eps",
        };
        let c: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "{}:{}({})", self.lie_type, tag, c.join(","))
    }
}

/// Precomputed root data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    /// `cartan[i][j] = B(α_i, α_j^∨)`.
    pub cartan: Vec<Vec<i64>>,
    /// `gram[i][j] = B(α_i, α_j)`.
    pub gram: Matrix,
    cartan_inv: Matrix,
    /// `B(ω_i, ω_j)`.
    label_form: Matrix,
    eps_simple: Matrix,
    eps_form: Matrix,
    /// Positive roots as simple-root coefficient vectors, ordered by height.
    positive: Vec<Vec<i64>>,
    pos_labels: Vec<Vec<i64>>,
    /// Coefficients of α^∨ in the simple coroots.
    pos_coroot: Vec<Vec<i64>>,
    pos_norm: Vec<Q>,
}

impl RootSystem {
    pub fn new(t: LieType) -> Result<Self> {
        let t = LieType::new(t.family, t.rank)?;
        let l = t.rank;
        let d = t.eps_dim();
        let e = |i: usize| -> Vec<Q> { (0..d).map(|k| if k == i { qi(1) } else { qi(0) }).collect() };
        let sub = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
        let add = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        let scalar_form = |c: Q| -> Matrix {
            (0..d).map(|i| (0..d).map(|j| if i == j { c.clone() } else { qi(0) }).collect()).collect()
        };
        let (eps_simple, eps_form): (Matrix, Matrix) = match t.family {
            Family::A => {
                let n = (l + 1) as i64;
                let form = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                let delta = if i == j { qi(1) } else { qi(0) };
                                (delta - qf(1, n)) * qf(1, 2 * n)
                            })
                            .collect()
                    })
                    .collect();
                ((0..l).map(|i| sub(e(i), e(i + 1))).collect(), form)
            }
            Family::B => {
                let mut s: Matrix = (0..l - 1).map(|i| sub(e(i), e(i + 1))).collect();
                s.push(e(l - 1));
                (s, scalar_form(qf(1, 4 * l as i64 - 2)))
            }
            Family::C => {
                let mut s: Matrix = (0..l - 1).map(|i| sub(e(i), e(i + 1))).collect();
                s.push(e(l - 1).iter().map(|x| x * qi(2)).collect());
                (s, scalar_form(qf(1, 4 * (l as i64 + 1))))
            }
            Family::D => {
                let mut s: Matrix = (0..l - 1).map(|i| sub(e(i), e(i + 1))).collect();
                s.push(add(e(l - 2), e(l - 1)));
                (s, scalar_form(qf(1, 4 * l as i64 - 4)))
            }
            Family::G2 => {
                // simple-root coordinates; α1 short, α2 long
                let s = vec![e(0), e(1)];
                let g = vec![vec![qf(1, 12), qf(-1, 8)], vec![qf(-1, 8), qf(1, 4)]];
                (s, g)
            }
        };
        let gram: Matrix = (0..l)
            .map(|i| (0..l).map(|j| linalg::dot(&linalg::vec_mat(&eps_simple[i], &eps_form), &eps_simple[j])).collect())
            .collect();
        let mut cartan = vec![vec![0i64; l]; l];
        let mut cartan_q: Matrix = vec![vec![qi(0); l]; l];
        for i in 0..l {
            for j in 0..l {
                let v = &gram[i][j] * qi(2) / &gram[j][j];
                cartan[i][j] = crate::rational::to_i64(&v).expect("integral Cartan matrix");
                cartan_q[i][j] = v;
            }
        }
        let cartan_inv = linalg::inverse(&cartan_q).expect("nondegenerate Cartan matrix");
        let label_form = linalg::mat_mul(&linalg::mat_mul(&cartan_inv, &gram), &linalg::transpose(&cartan_inv));
        let mut rs = RootSystem {
            lie_type: t,
            cartan,
            gram,
            cartan_inv,
            label_form,
            eps_simple,
            eps_form,
            positive: vec![],
            pos_labels: vec![],
            pos_coroot: vec![],
            pos_norm: vec![],
        };
        rs.generate_roots();
        Ok(rs)
    }

    fn generate_roots(&mut self) {
        let l = self.rank();
        let mut roots: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..l {
                    if beta.iter().enumerate().all(|(j, &c)| c == i64::from(i == j)) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if roots.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..l).map(|j| beta[j] * self.cartan[j][i]).sum();
                    let q = p - pair;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !roots.contains(&up) && !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        self.pos_labels = roots.iter().map(|r| self.coeffs_to_int_labels(r)).collect();
        self.pos_norm = roots.iter().map(|r| self.coeff_norm(r)).collect();
        self.pos_coroot = roots
            .iter()
            .zip(&self.pos_norm)
            .map(|(r, n)| {
                (0..l)
                    .map(|i| crate::rational::to_i64(&(qi(r[i]) * &self.gram[i][i] / n)).expect("integral coroot"))
                    .collect()
            })
            .collect();
        self.positive = roots;
    }

    fn coeffs_to_int_labels(&self, c: &[i64]) -> Vec<i64> {
        let l = self.rank();
        (0..l).map(|j| (0..l).map(|i| c[i] * self.cartan[i][j]).sum()).collect()
    }

    fn coeff_norm(&self, c: &[i64]) -> Q {
        let v: Vec<Q> = c.iter().map(|&x| qi(x)).collect();
        linalg::dot(&linalg::vec_mat(&v, &self.gram), &v)
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Positive roots as simple-root coefficient vectors.
    pub fn positive_coeffs(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Dynkin labels of the positive roots (same order as `positive_coeffs`).
    pub fn positive_labels(&self) -> &[Vec<i64>] {
        &self.pos_labels
    }

    /// Coefficients of the coroot of each positive root in simple coroots.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.pos_coroot
    }

    pub fn positive_norms(&self) -> &[Q] {
        &self.pos_norm
    }

    pub fn long_norm(&self) -> Q {
        self.pos_norm.iter().max().cloned().unwrap_or_else(Q::zero)
    }

    /// Index of the highest root in `positive_coeffs`.
    pub fn highest_root_index(&self) -> usize {
        self.positive.len() - 1
    }

    pub fn highest_root_coeffs(&self) -> &[i64] {
        &self.positive[self.highest_root_index()]
    }

    pub fn simple_labels(&self, i: usize) -> Vec<i64> {
        self.cartan[i].clone()
    }

    /// Simple root `α_i` (0-based) in ε-coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        self.to_epsilon(&Weight::from_ints(self.lie_type, &self.simple_labels(i)))
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        self.pos_labels.iter().map(|l| self.to_epsilon(&Weight::from_ints(self.lie_type, l))).collect()
    }

    pub fn highest_root(&self) -> Weight {
        self.to_epsilon(&Weight::from_ints(self.lie_type, &self.pos_labels[self.highest_root_index()]))
    }

    /// ρ, the sum of fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight::labels(self.lie_type, vec![qi(1); self.rank()])
    }

    pub fn rho_labels(&self) -> Vec<Q> {
        vec![qi(1); self.rank()]
    }

    /// Half-sum of the positive roots whose support avoids the crossed nodes.
    pub fn rho0_labels(&self, crossed: &[usize]) -> Vec<Q> {
        let mut acc = vec![qi(0); self.rank()];
        for (c, lab) in self.positive.iter().zip(&self.pos_labels) {
            if crossed.iter().all(|&i| c[i] == 0) {
                for (a, &x) in acc.iter_mut().zip(lab) {
                    *a += qf(x, 2);
                }
            }
        }
        acc
    }

    pub fn rho0(&self, crossed: &[usize]) -> Weight {
        Weight::labels(self.lie_type, self.rho0_labels(crossed))
    }

    /// Simple-root coordinates of a label vector.
    pub fn labels_to_coeffs(&self, labels: &[Q]) -> Vec<Q> {
        linalg::vec_mat(labels, &self.cartan_inv)
    }

    pub fn coeffs_to_labels(&self, c: &[Q]) -> Vec<Q> {
        let l = self.rank();
        (0..l).map(|j| (0..l).map(|i| &c[i] * qi(self.cartan[i][j])).sum()).collect()
    }

    /// `B` on Dynkin-label vectors.
    pub fn form_labels(&self, a: &[Q], b: &[Q]) -> Q {
        linalg::dot(&linalg::vec_mat(a, &self.label_form), b)
    }

    /// `B` on label vectors with polynomial entries.
    pub fn form_poly(&self, a: &[Poly], b: &[Poly]) -> Poly {
        let l = self.rank();
        let mut acc = Poly::zero();
        for i in 0..l {
            for j in 0..l {
                if self.label_form[i][j].is_zero() {
                    continue;
                }
                acc += (&a[i] * &b[j]).scale(&self.label_form[i][j]);
            }
        }
        acc
    }

    /// `B(ω_i, ω_j)`.
    pub fn fundamental_form(&self) -> &Matrix {
        &self.label_form
    }

    fn check_type(&self, w: &Weight) -> Result<()> {
        if w.lie_type != self.lie_type {
            return Err(Error::TypeMismatch(self.lie_type.to_string(), w.lie_type.to_string()));
        }
        let want = match w.basis {
            Basis::Fundamental => self.rank(),
            Basis::Epsilon => self.lie_type.eps_dim(),
        };
        if w.coords.len() != want {
            return Err(Error::Invalid(format!("rootsys: weight {w} has {} coordinates, expected {want}", w.coords.len())));
        }
        Ok(())
    }

    /// Dynkin labels of any weight.
    pub fn labels_of(&self, w: &Weight) -> Result<Vec<Q>> {
        self.check_type(w)?;
        Ok(match w.basis {
            Basis::Fundamental => w.coords.clone(),
            Basis::Epsilon => {
                let fe = linalg::vec_mat(&w.coords, &self.eps_form);
                (0..self.rank()).map(|j| linalg::dot(&fe, &self.eps_simple[j]) * qi(2) / &self.gram[j][j]).collect()
            }
        })
    }

    pub fn to_fundamental(&self, w: &Weight) -> Weight {
        Weight::labels(self.lie_type, self.labels_of(w).expect("weight of this type"))
    }

    pub fn to_epsilon(&self, w: &Weight) -> Weight {
        match w.basis {
            Basis::Epsilon => {
                let mut c = w.coords.clone();
                self.normalize_eps(&mut c);
                Weight::epsilon(self.lie_type, c)
            }
            Basis::Fundamental => {
                let c = self.labels_to_coeffs(&w.coords);
                let mut eps = linalg::vec_mat(&c, &self.eps_simple);
                self.normalize_eps(&mut eps);
                Weight::epsilon(self.lie_type, eps)
            }
        }
    }

    fn normalize_eps(&self, c: &mut [Q]) {
        if self.lie_type.family == Family::A {
            let last = c[c.len() - 1].clone();
            for x in c.iter_mut() {
                *x -= &last;
            }
        }
    }

    pub fn convert_basis(&self, w: &Weight, target: Basis) -> Weight {
        match target {
            Basis::Fundamental => self.to_fundamental(w),
            Basis::Epsilon => self.to_epsilon(w),
        }
    }

    pub fn bilinear_form(&self, a: &Weight, b: &Weight) -> Result<Q> {
        let la = self.labels_of(a)?;
        let lb = self.labels_of(b)?;
        Ok(self.form_labels(&la, &lb))
    }

    /// Position in the positive roots and sign, when `labels` is a root.
    pub fn find_root(&self, labels: &[Q]) -> Option<(usize, i64)> {
        for (k, lab) in self.pos_labels.iter().enumerate() {
            if lab.iter().zip(labels).all(|(&x, y)| qi(x) == *y) {
                return Some((k, 1));
            }
            if lab.iter().zip(labels).all(|(&x, y)| qi(-x) == *y) {
                return Some((k, -1));
            }
        }
        None
    }

    /// `B(λ, α^∨)` for the positive root with index `k`, on label vectors.
    pub fn coroot_pair_index(&self, labels: &[Q], k: usize) -> Q {
        self.pos_coroot[k].iter().zip(labels).map(|(&c, x)| x * qi(c)).sum()
    }

    pub fn coroot_pair_index_poly(&self, labels: &[Poly], k: usize) -> Poly {
        let mut acc = Poly::zero();
        for (&c, x) in self.pos_coroot[k].iter().zip(labels) {
            acc += x.scale(&qi(c));
        }
        acc
    }

    pub fn coroot_pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<Q> {
        let la = self.labels_of(lambda)?;
        let al = self.labels_of(alpha)?;
        let (k, sign) = self.find_root(&al).ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
        Ok(self.coroot_pair_index(&la, k) * qi(sign))
    }

    /// Reflection of a label vector in the positive root with index `k`.
    pub fn reflect_index(&self, labels: &[Q], k: usize) -> Vec<Q> {
        let m = self.coroot_pair_index(labels, k);
        labels.iter().zip(&self.pos_labels[k]).map(|(x, &a)| x - &m * qi(a)).collect()
    }

    /// Simple reflection `s_i` on labels: `λ_j ↦ λ_j − λ_i A_ij`.
    pub fn simple_reflect_labels(&self, labels: &[Q], i: usize) -> Vec<Q> {
        let li = labels[i].clone();
        labels.iter().enumerate().map(|(j, x)| x - &li * qi(self.cartan[i][j])).collect()
    }

    pub fn simple_reflect_ints(&self, labels: &[i64], i: usize) -> Vec<i64> {
        let li = labels[i];
        labels.iter().enumerate().map(|(j, &x)| x - li * self.cartan[i][j]).collect()
    }

    /// Index of a positive root given as simple-root coefficients.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive.iter().position(|r| r.as_slice() == coeffs)
    }

    pub fn is_long_index(&self, k: usize) -> bool {
        self.pos_norm[k] == self.long_norm()
    }

    /// Squared length of a weight given by labels.
    pub fn norm_labels(&self, a: &[Q]) -> Q {
        self.form_labels(a, a)
    }

    pub fn zero_labels(&self) -> Vec<Q> {
        vec![Q::zero(); self.rank()]
    }

    pub fn unit(&self) -> Q {
        Q::one()
    }
}
