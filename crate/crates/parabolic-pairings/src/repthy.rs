//! Finite-dimensional representation combinatorics for semisimple Lie algebras and for
//! the Levi factors `g_0` of parabolics.
//!
//! Labels follow the diagram convention: a label vector is the highest weight of the dual
//! representation. Levi computations depend only on the uncrossed labels; crossed labels
//! ride along and may be rational or symbolic.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::parabolic::ParabolicStructure;
use crate::poly::Poly;
use crate::rational::{qi, to_i64, Q};
use crate::rootsys::{Family, RootSystem, Weight};
use crate::weyl;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Default cap on the dimension of representations whose characters are tabulated.
pub const DIM_CAP: u128 = 1_000_000;

/// Root data of the semisimple subsystem spanned by a set of simple roots.
#[derive(Clone, Debug)]
pub struct LeviData {
    /// Simple roots of the subsystem (0-based nodes of the ambient diagram).
    pub nodes: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Matrix,
    /// Form on subsystem label vectors.
    form: Matrix,
    /// Positive roots as subsystem labels.
    pos_labels: Vec<Vec<i64>>,
    pos_coroots: Vec<Vec<i64>>,
}

impl LeviData {
    pub fn new(rs: &RootSystem, nodes: &[usize]) -> Self {
        let r = nodes.len();
        let cartan: Vec<Vec<i64>> = nodes.iter().map(|&i| nodes.iter().map(|&j| rs.cartan[i][j]).collect()).collect();
        let cq: Matrix = cartan.iter().map(|row| row.iter().map(|&x| qi(x)).collect()).collect();
        let cartan_inv = if r == 0 { vec![] } else { linalg::inverse(&cq).expect("invertible subsystem") };
        let gram: Matrix = nodes.iter().map(|&i| nodes.iter().map(|&j| rs.gram[i][j].clone()).collect()).collect();
        let form = if r == 0 {
            vec![]
        } else {
            linalg::mat_mul(&linalg::mat_mul(&cartan_inv, &gram), &linalg::transpose(&cartan_inv))
        };
        let mut pos_labels = Vec::new();
        let mut pos_coroots = Vec::new();
        for (k, c) in rs.positive_coeffs().iter().enumerate() {
            let supported = c.iter().enumerate().all(|(i, &x)| x == 0 || nodes.contains(&i));
            if supported {
                let sub: Vec<i64> = nodes.iter().map(|&j| (0..rs.rank()).map(|i| c[i] * rs.cartan[i][j]).sum()).collect();
                pos_labels.push(sub);
                pos_coroots.push(nodes.iter().map(|&j| rs.positive_coroots()[k][j]).collect());
            }
        }
        LeviData { nodes: nodes.to_vec(), cartan, cartan_inv, form, pos_labels, pos_coroots }
    }

    /// Levi factor of a parabolic: the uncrossed nodes.
    pub fn of(rs: &RootSystem, p: &ParabolicStructure) -> Self {
        LeviData::new(rs, &p.uncrossed())
    }

    pub fn full(rs: &RootSystem) -> Self {
        LeviData::new(rs, &(0..rs.rank()).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_positive(&self) -> usize {
        self.pos_labels.len()
    }

    fn form_i(&self, a: &[i64], b: &[i64]) -> Q {
        let mut acc = Q::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc += &self.form[i][j] * qi(x * y);
                }
            }
        }
        acc
    }

    fn reflect(&self, v: &[i64], i: usize) -> Vec<i64> {
        let vi = v[i];
        v.iter().enumerate().map(|(j, &x)| x - vi * self.cartan[i][j]).collect()
    }

    /// Dominant conjugate and the parity of the number of reflections used.
    pub fn dominant(&self, v: &[i64]) -> (Vec<i64>, bool) {
        let mut v = v.to_vec();
        let mut odd = false;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            v = self.reflect(&v, i);
            odd = !odd;
        }
        (v, odd)
    }

    /// Weyl dimension formula.
    pub fn dim(&self, lab: &[i64]) -> Result<u128> {
        if lab.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(format!("{lab:?}")));
        }
        let mut acc = qi(1);
        for c in &self.pos_coroots {
            let num: i64 = c.iter().zip(lab).map(|(&a, &x)| a * (x + 1)).sum();
            let den: i64 = c.iter().sum();
            acc = acc * qi(num) / qi(den);
        }
        Ok(acc.to_integer().to_u128().expect("dimension fits"))
    }

    /// Coefficients `k` with `top − Σ k_j α_j = lab` (subsystem labels).
    pub fn k_vector(&self, top: &[i64], lab: &[i64]) -> Vec<Q> {
        let diff: Vec<Q> = top.iter().zip(lab).map(|(a, b)| qi(a - b)).collect();
        if diff.is_empty() {
            return vec![];
        }
        linalg::vec_mat(&diff, &self.cartan_inv)
    }

    /// Weight multiplicities (Freudenthal), keyed by subsystem labels.
    pub fn character(&self, lab: &[i64], cap: u128) -> Result<BTreeMap<Vec<i64>, u64>> {
        let d = self.dim(lab)?;
        if d > cap {
            return Err(Error::DimensionCap(d, cap));
        }
        let r = self.rank();
        if r == 0 {
            return Ok(std::iter::once((vec![], 1)).collect());
        }
        // dominant weights below the highest weight
        let mut dom: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut stack = vec![lab.to_vec()];
        dom.insert(lab.to_vec());
        while let Some(v) = stack.pop() {
            for a in &self.pos_labels {
                let w: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - y).collect();
                if w.iter().all(|&x| x >= 0) && dom.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        let level = |w: &[i64]| -> Q { self.k_vector(lab, w).iter().sum() };
        let mut order: Vec<Vec<i64>> = dom.into_iter().collect();
        order.sort_by_key(|w| level(w));
        let ones = vec![1i64; r];
        let shift = |w: &[i64]| -> Vec<i64> { w.iter().zip(&ones).map(|(a, b)| a + b).collect() };
        let top_norm = self.form_i(&shift(lab), &shift(lab));
        let mut mult: HashMap<Vec<i64>, Q> = HashMap::new();
        for mu in &order {
            if mu == lab {
                mult.insert(mu.clone(), qi(1));
                continue;
            }
            let mut acc = Q::zero();
            for a in &self.pos_labels {
                let mut nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + y).collect();
                loop {
                    let (dnu, _) = self.dominant(&nu);
                    let Some(m) = mult.get(&dnu) else { break };
                    acc += m * self.form_i(&nu, a);
                    nu = nu.iter().zip(a).map(|(x, y)| x + y).collect();
                }
            }
            let den = &top_norm - self.form_i(&shift(mu), &shift(mu));
            let m = acc * qi(2) / den;
            mult.insert(mu.clone(), m);
        }
        let mut out = BTreeMap::new();
        for (mu, m) in &mult {
            let m = to_i64(m).expect("integral multiplicity");
            if m == 0 {
                continue;
            }
            for w in self.orbit(mu) {
                out.insert(w, m as u64);
            }
        }
        Ok(out)
    }

    fn orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(v.to_vec());
        let mut stack = vec![v.to_vec()];
        while let Some(x) = stack.pop() {
            for i in 0..self.rank() {
                let y = self.reflect(&x, i);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Klimyk decomposition of `V(a) ⊗ V(b)`, keyed by subsystem labels.
    pub fn tensor(&self, a: &[i64], b: &[i64], cap: u128) -> Result<BTreeMap<Vec<i64>, u64>> {
        let (big, small) = if self.dim(a)? >= self.dim(b)? { (a, b) } else { (b, a) };
        let ch = self.character(small, cap)?;
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (nu, m) in ch {
            let x: Vec<i64> = big.iter().zip(&nu).map(|(p, q)| p + q + 1).collect();
            let (d, odd) = self.dominant(&x);
            if d.contains(&0) {
                continue;
            }
            let hw: Vec<i64> = d.iter().map(|v| v - 1).collect();
            *acc.entry(hw).or_insert(0) += if odd { -(m as i64) } else { m as i64 };
        }
        let mut out = BTreeMap::new();
        for (k, v) in acc {
            if v < 0 {
                return Err(Error::Invalid(format!("repthy: negative multiplicity for {k:?}")));
            }
            if v > 0 {
                out.insert(k, v as u64);
            }
        }
        Ok(out)
    }
}

/// Restrict a label vector to the given nodes as integers.
pub fn sub_labels_int(labels: &[Poly], nodes: &[usize]) -> Result<Vec<i64>> {
    nodes
        .iter()
        .map(|&j| {
            labels[j]
                .as_constant()
                .and_then(|c| to_i64(&c))
                .filter(|&x| x >= 0)
                .ok_or_else(|| Error::NotDominant(format!("label over node {} is {}", j + 1, labels[j])))
        })
        .collect()
}

/// `top − Σ_j k_j α_j` on full label vectors.
pub fn subtract_roots(rs: &RootSystem, nodes: &[usize], top: &[Poly], k: &[Q]) -> Vec<Poly> {
    let mut out = top.to_vec();
    for (kj, &j) in k.iter().zip(nodes) {
        if kj.is_zero() {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            let c = rs.cartan[j][i];
            if c != 0 {
                *o = &*o - &Poly::constant(kj * qi(c));
            }
        }
    }
    out
}

/// Irreducible decomposition with labels of arbitrary (possibly symbolic) crossed entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IrrepDecomposition {
    pub summands: Vec<(Vec<Poly>, u64)>,
}

fn sort_key(labels: &[Poly]) -> Vec<(Q, String)> {
    labels
        .iter()
        .map(|p| {
            let c = p.terms().find(|(m, _)| m.is_empty()).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero);
            (c, p.render_expanded(&[]))
        })
        .collect()
}

impl IrrepDecomposition {
    pub fn from_map(m: BTreeMap<Vec<Poly>, u64>) -> Self {
        let mut summands: Vec<(Vec<Poly>, u64)> = m.into_iter().filter(|(_, c)| *c > 0).collect();
        summands.sort_by_key(|(l, _)| sort_key(l));
        IrrepDecomposition { summands }
    }

    pub fn multiplicity(&self, labels: &[Poly]) -> u64 {
        self.summands.iter().filter(|(l, _)| l.as_slice() == labels).map(|(_, m)| m).sum()
    }

    pub fn total(&self) -> u64 {
        self.summands.iter().map(|(_, m)| m).sum()
    }

    /// Numeric labels when every entry is constant.
    pub fn numeric(&self) -> Option<Vec<(Vec<Q>, u64)>> {
        self.summands
            .iter()
            .map(|(l, m)| crate::parabolic::poly_to_labels(l).map(|v| (v, *m)))
            .collect()
    }
}

/// Tensor product of two `g_0`-irreducibles given by full label vectors.
pub fn levi_tensor(rs: &RootSystem, p: &ParabolicStructure, a: &[Poly], b: &[Poly], cap: u128) -> Result<IrrepDecomposition> {
    let levi = LeviData::of(rs, p);
    let ja = sub_labels_int(a, &levi.nodes)?;
    let jb = sub_labels_int(b, &levi.nodes)?;
    let sum: Vec<Poly> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let jsum: Vec<i64> = ja.iter().zip(&jb).map(|(x, y)| x + y).collect();
    let mut out: BTreeMap<Vec<Poly>, u64> = BTreeMap::new();
    for (lab, m) in levi.tensor(&ja, &jb, cap)? {
        let k = levi.k_vector(&jsum, &lab);
        *out.entry(subtract_roots(rs, &levi.nodes, &sum, &k)).or_insert(0) += m;
    }
    Ok(IrrepDecomposition::from_map(out))
}

/// Dimension of the `g_0^S`-irreducible with the given full labels.
pub fn levi_dim(rs: &RootSystem, p: &ParabolicStructure, labels: &[Poly]) -> Result<u128> {
    let levi = LeviData::of(rs, p);
    levi.dim(&sub_labels_int(labels, &levi.nodes)?)
}

/// Decompose a `g_0`-character on integral full labels by repeatedly peeling the highest weight.
pub fn levi_peel(rs: &RootSystem, p: &ParabolicStructure, ch: &BTreeMap<Vec<i64>, i64>, cap: u128) -> Result<Vec<(Vec<i64>, u64)>> {
    let levi = LeviData::of(rs, p);
    let nodes = levi.nodes.clone();
    let height = |lab: &[i64]| -> Q {
        let q: Vec<Q> = lab.iter().map(|&x| qi(x)).collect();
        let c = rs.labels_to_coeffs(&q);
        nodes.iter().map(|&j| c[j].clone()).sum()
    };
    let mut rest: BTreeMap<Vec<i64>, i64> = ch.iter().filter(|(_, &m)| m != 0).map(|(k, v)| (k.clone(), *v)).collect();
    let mut out = Vec::new();
    while let Some(top) = rest.keys().max_by_key(|k| height(k)).cloned() {
        let m = rest[&top];
        let jl: Vec<i64> = nodes.iter().map(|&j| top[j]).collect();
        if m < 0 || jl.iter().any(|&x| x < 0) {
            return Err(Error::Invalid(format!("repthy: character is not a sum of irreducibles at {top:?}")));
        }
        let sub = levi.character(&jl, cap)?;
        let topq: Vec<Poly> = top.iter().map(|&x| Poly::int(x)).collect();
        for (w, mult) in sub {
            let k = levi.k_vector(&jl, &w);
            let full = subtract_roots(rs, &nodes, &topq, &k);
            let key: Vec<i64> = full.iter().map(|x| to_i64(&x.as_constant().unwrap()).unwrap()).collect();
            let e = rest.entry(key.clone()).or_insert(0);
            *e -= m * mult as i64;
            if *e == 0 {
                rest.remove(&key);
            }
        }
        out.push((top, m as u64));
    }
    out.sort();
    Ok(out)
}

/// Character of `⊙^l g_1` (multisets of `g_-1` roots), on full labels.
pub fn sym_power_g1_character(rs: &RootSystem, p: &ParabolicStructure, l: usize) -> BTreeMap<Vec<i64>, i64> {
    let roots: Vec<Vec<i64>> = p.gminus1_indices(rs).iter().map(|&k| rs.positive_labels()[k].iter().map(|x| -x).collect()).collect();
    let mut out = BTreeMap::new();
    let mut idx = vec![0usize; l];
    fn rec(roots: &[Vec<i64>], l: usize, start: usize, acc: &mut Vec<i64>, depth: usize, out: &mut BTreeMap<Vec<i64>, i64>, idx: &mut Vec<usize>) {
        if depth == l {
            *out.entry(acc.clone()).or_insert(0) += 1;
            return;
        }
        for r in start..roots.len() {
            for (a, x) in acc.iter_mut().zip(&roots[r]) {
                *a += x;
            }
            idx[depth] = r;
            rec(roots, l, r, acc, depth + 1, out, idx);
            for (a, x) in acc.iter_mut().zip(&roots[r]) {
                *a -= x;
            }
        }
    }
    let mut acc = vec![0i64; rs.rank()];
    rec(&roots, l, 0, &mut acc, 0, &mut out, &mut idx);
    out
}

/// Character of `⊗^m g_1` on full labels.
pub fn tensor_power_g1_character(rs: &RootSystem, p: &ParabolicStructure, m: usize) -> BTreeMap<Vec<i64>, i64> {
    let roots: Vec<Vec<i64>> = p.gminus1_indices(rs).iter().map(|&k| rs.positive_labels()[k].iter().map(|x| -x).collect()).collect();
    let mut cur: BTreeMap<Vec<i64>, i64> = std::iter::once((vec![0i64; rs.rank()], 1)).collect();
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for (w, c) in &cur {
            for r in &roots {
                let s: Vec<i64> = w.iter().zip(r).map(|(a, b)| a + b).collect();
                *next.entry(s).or_insert(0) += c;
            }
        }
        cur = next;
    }
    cur
}

/// `⊙^l g_1 ⊗ E` as `g_0`-modules.
pub fn sym_power_g1_tensor(rs: &RootSystem, p: &ParabolicStructure, l: usize, e: &[Poly], cap: u128) -> Result<IrrepDecomposition> {
    let parts = levi_peel(rs, p, &sym_power_g1_character(rs, p, l), cap)?;
    let mut out: BTreeMap<Vec<Poly>, u64> = BTreeMap::new();
    for (lab, m) in parts {
        let lp: Vec<Poly> = lab.iter().map(|&x| Poly::int(x)).collect();
        for (w, c) in levi_tensor(rs, p, &lp, e, cap)?.summands {
            *out.entry(w).or_insert(0) += m * c;
        }
    }
    Ok(IrrepDecomposition::from_map(out))
}

/// Weight multiplicities of a dominant weight of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub highest_weight: Vec<i64>,
    pub entries: BTreeMap<Vec<i64>, u64>,
}

impl CharacterTable {
    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }
}

fn dominant_ints(rs: &RootSystem, w: &Weight) -> Result<Vec<i64>> {
    let l = rs.labels_of(w)?;
    l.iter()
        .map(|x| to_i64(x).filter(|&v| v >= 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotDominant(w.to_string()))
}

pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<CharacterTable> {
    let hw = dominant_ints(rs, lambda)?;
    let entries = LeviData::full(rs).character(&hw, DIM_CAP)?;
    Ok(CharacterTable { highest_weight: hw, entries })
}

pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    let hw = dominant_ints(rs, lambda)?;
    LeviData::full(rs).dim(&hw)
}

pub fn weyl_dim_labels(rs: &RootSystem, labels: &[i64]) -> Result<u128> {
    LeviData::full(rs).dim(labels)
}

/// Decomposition of `V(λ) ⊗ V(μ)` for `g`, sorted lexicographically by labels.
pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<Vec<(Vec<i64>, u64)>> {
    let a = dominant_ints(rs, lambda)?;
    let b = dominant_ints(rs, mu)?;
    Ok(LeviData::full(rs).tensor(&a, &b, DIM_CAP)?.into_iter().collect())
}

pub fn cartan_product(lambda: &[Q], mu: &[Q]) -> Vec<Q> {
    lambda.iter().zip(mu).map(|(a, b)| a + b).collect()
}

/// Data of an M-module `V_M(E^0)`: highest weight `Λ = Σ M_i ω_i + λ_0` and slot-0 crossed labels.
#[derive(Clone, Debug)]
pub struct MModuleSpec {
    pub parabolic: ParabolicStructure,
    /// Labels of `E^0` over the uncrossed nodes, in node order.
    pub e0: Vec<i64>,
    /// `M_i` for each crossed node, in node order.
    pub m: Vec<i64>,
    /// Crossed labels of the slot-0 module (the twist is `slot0 − M`).
    pub slot0_crossed: Vec<Poly>,
}

impl MModuleSpec {
    /// Projective-type spec on `A_n` with node 1 crossed.
    pub fn projective(n: usize, a: &[i64], m: i64, k: Poly) -> Result<Self> {
        if a.len() + 1 != n {
            return Err(Error::RankMismatch { expected: n - 1, found: a.len() });
        }
        Ok(MModuleSpec {
            parabolic: ParabolicStructure::new(crate::rootsys::LieType::new(Family::A, n)?, vec![0])?,
            e0: a.to_vec(),
            m: vec![m],
            slot0_crossed: vec![k],
        })
    }

    /// `Λ` as integer labels.
    pub fn lambda(&self) -> Vec<i64> {
        let rank = self.parabolic.lie_type.rank;
        let mut out = vec![0i64; rank];
        for (j, &a) in self.parabolic.uncrossed().iter().zip(&self.e0) {
            out[*j] = a;
        }
        for (i, &m) in self.parabolic.crossed.iter().zip(&self.m) {
            out[*i] = m;
        }
        out
    }

    pub fn slot0(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = self.lambda().iter().map(|&x| Poly::int(x)).collect();
        for (i, k) in self.parabolic.crossed.iter().zip(&self.slot0_crossed) {
            out[*i] = k.clone();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub index: usize,
    pub components: IrrepDecomposition,
    /// False for slots beyond the range where the structure is known.
    pub resolved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    pub slots: Vec<Slot>,
    /// Total slot count when known (`N+1` slots for the A series).
    pub n_slots: Option<usize>,
}

/// Composition series of an M-module by slots.
///
/// For `A_n` with node 1 crossed the slots come from interlacing; otherwise only the slots
/// `l ≤ min M_i` are produced (as `⊙^l g_1 ⊗ E^0`) and one unresolved slot marks the rest.
pub fn branch_slots(rs: &RootSystem, spec: &MModuleSpec) -> Result<CompositionSeries> {
    let p = &spec.parabolic;
    let lam = spec.lambda();
    if lam.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{lam:?}")));
    }
    if rs.lie_type.family == Family::A && p.crossed == vec![0] {
        return Ok(branch_slots_a(rs.rank(), &spec.e0, spec.m[0], &spec.slot0_crossed[0]));
    }
    let mmin = *spec.m.iter().min().unwrap_or(&0);
    let e0 = spec.slot0();
    let mut slots = Vec::new();
    for l in 0..=mmin as usize {
        slots.push(Slot { index: l, components: sym_power_g1_tensor(rs, p, l, &e0, DIM_CAP)?, resolved: true });
    }
    slots.push(Slot { index: mmin as usize + 1, components: IrrepDecomposition::default(), resolved: false });
    Ok(CompositionSeries { slots, n_slots: None })
}

/// Interlacing branching for `A_n ⊃ gl_n`: slot `l` lists `(M−k+l | b̃)` with `Σ(b − b̃) = l`.
pub fn branch_slots_a(n: usize, a: &[i64], m: i64, k: &Poly) -> CompositionSeries {
    let mut b = vec![m];
    for &x in a {
        let last = *b.last().unwrap();
        b.push(last + x);
    }
    let nn: i64 = a.iter().sum::<i64>() + m;
    let mut slots: Vec<BTreeMap<Vec<Poly>, u64>> = vec![BTreeMap::new(); nn as usize + 1];
    let mut cur = vec![0i64; n];
    fn rec(i: usize, b: &[i64], cur: &mut Vec<i64>, m: i64, k: &Poly, slots: &mut Vec<BTreeMap<Vec<Poly>, u64>>) {
        let n = b.len();
        if i == n {
            let l: i64 = b.iter().zip(cur.iter()).map(|(x, y)| x - y).sum();
            let mut labels = Vec::with_capacity(n);
            // x(b̃0 − (M − k + l))
            labels.push(k + &Poly::int(cur[0] - m - l));
            for j in 1..n {
                labels.push(Poly::int(cur[j] - cur[j - 1]));
            }
            *slots[l as usize].entry(labels).or_insert(0) += 1;
            return;
        }
        let lo = if i == 0 { 0 } else { b[i - 1] };
        for v in lo..=b[i] {
            cur[i] = v;
            rec(i + 1, b, cur, m, k, slots);
        }
    }
    rec(0, &b, &mut cur, m, k, &mut slots);
    CompositionSeries {
        slots: slots
            .into_iter()
            .enumerate()
            .map(|(l, s)| Slot { index: l, components: IrrepDecomposition::from_map(s), resolved: true })
            .collect(),
        n_slots: Some(nn as usize + 1),
    }
}

/// Kostant: `H^d(g_-, V_Λ)` is the sum of `w.Λ` over Hasse elements of length `d`.
pub fn kostant_cohomology(rs: &RootSystem, p: &ParabolicStructure, lambda: &[Q], d: usize) -> Result<Vec<Vec<Q>>> {
    if lambda.iter().any(|x| !x.is_integer() || x.is_negative()) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    let h = weyl::hasse(rs, p, weyl::DEFAULT_CAP)?;
    let mut out: Vec<Vec<Q>> = h.elements.iter().filter(|e| e.1 == d).map(|e| e.0.dot_labels(rs, lambda)).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::LieType;
    use proptest::prelude::*;

    fn rs(t: LieType) -> RootSystem {
        RootSystem::new(t).unwrap()
    }

    fn polys(v: &[i64]) -> Vec<Poly> {
        v.iter().map(|&x| Poly::int(x)).collect()
    }

    #[test]
    fn adjoint_of_a2() {
        let r = rs(LieType::a(2));
        let ch = weight_multiplicities(&r, &Weight::from_ints(LieType::a(2), &[1, 1])).unwrap();
        assert_eq!(ch.entries[&vec![0, 0]], 2);
        assert_eq!(ch.dim(), 8);
        let triv = weight_multiplicities(&r, &Weight::from_ints(LieType::a(2), &[0, 0])).unwrap();
        assert_eq!(triv.entries.len(), 1);
    }

    #[test]
    fn minuscule_multiplicities_are_one() {
        for l in 1..=5 {
            let r = rs(LieType::a(l));
            for i in 0..l {
                let mut lab = vec![0i64; l];
                lab[i] = 1;
                let ch = weight_multiplicities(&r, &Weight::from_ints(LieType::a(l), &lab)).unwrap();
                assert!(ch.entries.values().all(|&m| m == 1));
                assert_eq!(ch.dim() as u128, weyl_dim_labels(&r, &lab).unwrap());
            }
        }
    }

    #[test]
    fn dimensions() {
        let a1 = rs(LieType::a(1));
        for m in 0..6 {
            assert_eq!(weyl_dim_labels(&a1, &[m]).unwrap(), m as u128 + 1);
        }
        assert_eq!(weyl_dim_labels(&rs(LieType::a(3)), &[1, 0, 0]).unwrap(), 4);
        assert_eq!(weyl_dim_labels(&rs(LieType::d(4)), &[0, 1, 0, 0]).unwrap(), 28);
        assert_eq!(weyl_dim_labels(&rs(LieType::g2()), &[1, 0]).unwrap(), 7);
        assert!(weyl_dim_labels(&a1, &[-1]).is_err());
    }

    #[test]
    fn clebsch_gordan() {
        let r = rs(LieType::a(1));
        let t = LieType::a(1);
        let dec = tensor_decompose(&r, &Weight::from_ints(t, &[2]), &Weight::from_ints(t, &[2])).unwrap();
        assert_eq!(dec, vec![(vec![0], 1), (vec![2], 1), (vec![4], 1)]);
        let lam = Weight::from_ints(t, &[3]);
        assert_eq!(tensor_decompose(&r, &lam, &Weight::from_ints(t, &[0])).unwrap(), vec![(vec![3], 1)]);
    }

    #[test]
    fn levi_tensor_of_the_comparison_example() {
        // ⊙²g_1 ⊗ V for V = x(-1)o(0)o(1) on A3 with node 1 crossed
        let r = rs(LieType::a(3));
        let p = ParabolicStructure::new(LieType::a(3), vec![0]).unwrap();
        let dec = sym_power_g1_tensor(&r, &p, 2, &polys(&[-1, 0, 1]), DIM_CAP).unwrap();
        assert_eq!(dec.summands, vec![(polys(&[-5, 2, 1]), 1), (polys(&[-4, 1, 0]), 1)]);
    }

    #[test]
    fn peel_symmetric_square() {
        let r = rs(LieType::a(3));
        let p = ParabolicStructure::new(LieType::a(3), vec![0]).unwrap();
        let parts = levi_peel(&r, &p, &sym_power_g1_character(&r, &p, 2), DIM_CAP).unwrap();
        assert_eq!(parts, vec![(vec![-4, 2, 0], 1)]);
    }

    #[test]
    fn printed_composition_series() {
        let v = Poly::var("v");
        let w = Poly::var("w");
        let one = Poly::one();
        let n = 4;
        // T(v), M = 1
        let s = branch_slots_a(n, &[0, 0, 1], 1, &(&v + &one));
        let lab = |c: Poly, rest: &[i64]| -> Vec<Poly> {
            let mut out = vec![c];
            out.extend(rest.iter().map(|&x| Poly::int(x)));
            out
        };
        assert_eq!(s.slots.len(), 3);
        assert_eq!(s.slots[0].components.summands, vec![(lab(&v + &one, &[0, 0, 1]), 1)]);
        let mut slot1: Vec<Vec<Poly>> = s.slots[1].components.summands.iter().map(|x| x.0.clone()).collect();
        slot1.sort();
        let mut want1 = vec![lab(v.clone(), &[0, 0, 0]), lab(&v - &one, &[1, 0, 1])];
        want1.sort();
        assert_eq!(slot1, want1);
        assert_eq!(s.slots[2].components.summands, vec![(lab(&v - &Poly::int(2), &[1, 0, 0]), 1)]);
        // E(w), general M
        for m in 0..5 {
            let s = branch_slots_a(n, &[0, 0, 0], m, &w);
            assert_eq!(s.slots.len(), m as usize + 1);
            for (j, slot) in s.slots.iter().enumerate() {
                assert_eq!(slot.components.summands, vec![(lab(&w - &Poly::int(2 * j as i64), &[j as i64, 0, 0]), 1)]);
            }
        }
        // ⊙²T(v): five slots
        let s = branch_slots_a(n, &[0, 0, 2], 2, &(&v + &Poly::int(2)));
        assert_eq!(s.slots.len(), 5);
    }

    #[test]
    fn interlacing_dimension_audit() {
        for n in 2..=5usize {
            let r = rs(LieType::a(n));
            let p = ParabolicStructure::new(LieType::a(n), vec![0]).unwrap();
            let k = Poly::var("k");
            for a in all_vectors(n - 1, 2) {
                for m in 0..3 {
                    let s = branch_slots_a(n, &a, m, &k);
                    let mut total = 0u128;
                    for slot in &s.slots {
                        for (lab, mult) in &slot.components.summands {
                            total += levi_dim(&r, &p, lab).unwrap() * *mult as u128;
                        }
                    }
                    let mut lam = vec![m];
                    lam.extend(&a);
                    assert_eq!(total, weyl_dim_labels(&r, &lam).unwrap());
                }
            }
        }
    }

    #[test]
    fn interlacing_agrees_with_symmetric_powers_in_the_exact_range() {
        for n in 2..=4usize {
            let r = rs(LieType::a(n));
            let p = ParabolicStructure::new(LieType::a(n), vec![0]).unwrap();
            for a in all_vectors(n - 1, 2) {
                for m in 0..3 {
                    let k = Poly::int(5);
                    let s = branch_slots_a(n, &a, m, &k);
                    let mut e0 = vec![k.clone()];
                    e0.extend(a.iter().map(|&x| Poly::int(x)));
                    for l in 0..=m as usize {
                        let generic = sym_power_g1_tensor(&r, &p, l, &e0, DIM_CAP).unwrap();
                        assert_eq!(s.slots[l].components, generic, "n={n} a={a:?} M={m} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_slots_respect_the_crossed_label_bound() {
        // untwisted M-modules: slot-l components of V ⊗ W have crossed label ≥ 2(M − l)
        let n = 3;
        for a in all_vectors(n - 1, 2) {
            for b in all_vectors(n - 1, 2) {
                for m in 1..3 {
                    let sa = branch_slots_a(n, &a, m, &Poly::int(m));
                    let sb = branch_slots_a(n, &b, m, &Poly::int(m));
                    for (i, x) in sa.slots.iter().enumerate() {
                        for (j, y) in sb.slots.iter().enumerate() {
                            for (lx, _) in &x.components.summands {
                                for (ly, _) in &y.components.summands {
                                    let c = (&lx[0] + &ly[0]).as_constant().unwrap();
                                    assert!(c >= qi(2 * (m - (i + j) as i64)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generic_branching_marks_deeper_slots_unresolved() {
        let r = rs(LieType::b(3));
        let p = ParabolicStructure::new(LieType::b(3), vec![0]).unwrap();
        let spec = MModuleSpec { parabolic: p.clone(), e0: vec![0, 1], m: vec![1], slot0_crossed: vec![Poly::var("v")] };
        let s = branch_slots(&r, &spec).unwrap();
        assert_eq!(s.slots.len(), 3);
        assert!(s.slots[0].resolved && s.slots[1].resolved && !s.slots[2].resolved);
        assert_eq!(s.slots[0].components.summands.len(), 1);
    }

    #[test]
    fn kostant_low_degrees() {
        let r = rs(LieType::b(3));
        let p = ParabolicStructure::new(LieType::b(3), vec![0, 2]).unwrap();
        let lam: Vec<Q> = vec![qi(2), qi(1), qi(3)];
        assert_eq!(kostant_cohomology(&r, &p, &lam, 0).unwrap(), vec![lam.clone()]);
        let mut want: Vec<Vec<Q>> = p
            .crossed
            .iter()
            .map(|&i| lam.iter().zip(r.simple_labels(i)).map(|(x, a)| x - (&lam[i] + qi(1)) * qi(a)).collect())
            .collect();
        want.sort();
        assert_eq!(kostant_cohomology(&r, &p, &lam, 1).unwrap(), want);
        let a2 = rs(LieType::a(2));
        let borel = ParabolicStructure::new(LieType::a(2), vec![0, 1]).unwrap();
        let top = kostant_cohomology(&a2, &borel, &[qi(0), qi(0)], 3).unwrap();
        assert_eq!(top, vec![vec![qi(-2), qi(-2)]]);
    }

    #[test]
    fn cartan_products() {
        assert_eq!(cartan_product(&[qi(1), qi(0)], &[qi(0), qi(1)]), vec![qi(1), qi(1)]);
        assert_eq!(cartan_product(&[qi(3), qi(2)], &[qi(0), qi(0)]), vec![qi(3), qi(2)]);
    }

    fn all_vectors(len: usize, max: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|v| (0..=max).map(move |x| { let mut w = v.clone(); w.push(x); w })).collect();
        }
        out
    }

    proptest! {
        #[test]
        fn tensor_is_symmetric_and_dimension_exact(a in proptest::collection::vec(0i64..3, 2), b in proptest::collection::vec(0i64..3, 2), fam in 0usize..3) {
            let t = [LieType::a(2), LieType::b(2), LieType::g2()][fam];
            let r = rs(t);
            let wa = Weight::from_ints(t, &a);
            let wb = Weight::from_ints(t, &b);
            let ab = tensor_decompose(&r, &wa, &wb).unwrap();
            let ba = tensor_decompose(&r, &wb, &wa).unwrap();
            prop_assert_eq!(&ab, &ba);
            let total: u128 = ab.iter().map(|(l, m)| weyl_dim_labels(&r, l).unwrap() * *m as u128).sum();
            prop_assert_eq!(total, weyl_dim(&r, &wa).unwrap() * weyl_dim(&r, &wb).unwrap());
        }

        #[test]
        fn characters_are_weyl_symmetric(a in proptest::collection::vec(0i64..3, 3), fam in 0usize..3) {
            let t = [LieType::a(3), LieType::b(3), LieType::c(3)][fam];
            let r = rs(t);
            let ch = weight_multiplicities(&r, &Weight::from_ints(t, &a)).unwrap();
            prop_assert_eq!(ch.dim() as u128, weyl_dim_labels(&r, &a).unwrap());
            prop_assert_eq!(ch.entries[&a], 1);
            for (w, m) in &ch.entries {
                for i in 0..3 {
                    prop_assert_eq!(ch.entries.get(&r.simple_reflect_ints(w, i)), Some(m));
                }
            }
        }
    }
}
