//! Formal characters from Kostant's multiplicity formula, used to audit tensor decompositions.

use crate::error::{Error, Result};
use crate::rational::{qi, to_i64, Q};
use crate::repthy::{tensor_decompose, weight_multiplicities, weyl_dim_labels};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{self, WeylElement};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul};

/// Largest rank and dimension accepted by the character audit.
pub const CHARACTER_RANK_CAP: usize = 3;
pub const CHARACTER_DIM_CAP: u128 = 200;

/// Weight (Dynkin labels) → integer multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormalCharacter {
    pub entries: BTreeMap<Vec<i64>, i64>,
}

impl FormalCharacter {
    pub fn dim(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn scaled(&self, c: i64) -> Self {
        FormalCharacter { entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    fn cleaned(mut self) -> Self {
        self.entries.retain(|_, v| *v != 0);
        self
    }
}

impl Add for &FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, o: &FormalCharacter) -> FormalCharacter {
        let mut e = self.entries.clone();
        for (k, v) in &o.entries {
            *e.entry(k.clone()).or_insert(0) += v;
        }
        FormalCharacter { entries: e }.cleaned()
    }
}

impl Mul for &FormalCharacter {
    type Output = FormalCharacter;
    fn mul(self, o: &FormalCharacter) -> FormalCharacter {
        let mut e: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (a, x) in &self.entries {
            for (b, y) in &o.entries {
                let w: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *e.entry(w).or_insert(0) += x * y;
            }
        }
        FormalCharacter { entries: e }.cleaned()
    }
}

/// Kostant partition function on simple-root coefficient vectors.
pub struct PartitionFunction<'a> {
    roots: &'a [Vec<i64>],
    memo: HashMap<(Vec<i64>, usize), u64>,
}

impl<'a> PartitionFunction<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        PartitionFunction { roots: rs.positive_coeffs(), memo: HashMap::new() }
    }

    /// Number of ways to write `gamma` as a sum of positive roots.
    pub fn count(&mut self, gamma: &[i64]) -> u64 {
        self.count_from(gamma.to_vec(), 0)
    }

    fn count_from(&mut self, gamma: Vec<i64>, idx: usize) -> u64 {
        if gamma.iter().any(|&g| g < 0) {
            return 0;
        }
        if gamma.iter().all(|&g| g == 0) {
            return 1;
        }
        if idx == self.roots.len() {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(gamma.clone(), idx)) {
            return v;
        }
        let mut total = 0;
        let mut g = gamma.clone();
        while g.iter().all(|&x| x >= 0) {
            total += self.count_from(g.clone(), idx + 1);
            for (x, r) in g.iter_mut().zip(&self.roots[idx]) {
                *x -= r;
            }
        }
        self.memo.insert((gamma, idx), total);
        total
    }
}

fn coeffs(rs: &RootSystem, labels: &[i64]) -> Option<Vec<i64>> {
    let q: Vec<Q> = labels.iter().map(|&x| qi(x)).collect();
    rs.labels_to_coeffs(&q).iter().map(to_i64).collect()
}

/// Character of the irreducible module with dominant labels `λ` by Kostant's formula
/// `m(μ) = Σ_w sgn(w) P(w(λ+ρ) − (μ+ρ))`.
pub fn kostant_character(rs: &RootSystem, lambda: &[i64]) -> Result<FormalCharacter> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    let group: Vec<WeylElement> = weyl::all_elements(rs, weyl::DEFAULT_CAP)?;
    let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let images: Vec<(Vec<i64>, i64)> = group
        .iter()
        .map(|w| (w.act_ints(rs, &shifted), if w.length() % 2 == 0 { 1 } else { -1 }))
        .collect();
    // λ − w0λ bounds the depth of every weight
    let neg: Vec<Q> = lambda.iter().map(|&x| qi(-x)).collect();
    let (dom, _) = weyl::dominant_conjugate(rs, &neg);
    let span: Vec<i64> = lambda.iter().zip(&dom).map(|(a, b)| a + to_i64(b).expect("integral")).collect();
    let bound = coeffs(rs, &span).ok_or_else(|| Error::Invalid("oracle: non-integral root span".into()))?;
    let simple: Vec<Vec<i64>> = (0..rs.rank()).map(|i| rs.simple_labels(i)).collect();
    let mut pf = PartitionFunction::new(rs);
    let mut out = BTreeMap::new();
    let mut depth = vec![0i64; rs.rank()];
    loop {
        let mu: Vec<i64> = (0..rs.rank())
            .map(|j| lambda[j] - depth.iter().zip(&simple).map(|(d, s)| d * s[j]).sum::<i64>())
            .collect();
        let mut m = 0i64;
        for (img, sign) in &images {
            let diff: Vec<i64> = img.iter().zip(&mu).map(|(a, b)| a - b - 1).collect();
            if let Some(c) = coeffs(rs, &diff) {
                m += sign * pf.count(&c) as i64;
            }
        }
        if m != 0 {
            out.insert(mu, m);
        }
        let mut k = 0;
        while k < depth.len() {
            if depth[k] < bound[k] {
                depth[k] += 1;
                break;
            }
            depth[k] = 0;
            k += 1;
        }
        if k == depth.len() {
            break;
        }
    }
    Ok(FormalCharacter { entries: out })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterProductReport {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub decomposition: Vec<(Vec<i64>, u64)>,
    /// Kostant and Freudenthal agree on both factors.
    pub factors_agree: bool,
    /// `ch λ · ch μ = Σ m_ν ch ν`.
    pub product_matches: bool,
}

impl CharacterProductReport {
    pub fn passed(&self) -> bool {
        self.factors_agree && self.product_matches
    }
}

fn freudenthal(rs: &RootSystem, lambda: &[i64]) -> Result<FormalCharacter> {
    let t = weight_multiplicities(rs, &Weight::from_ints(rs.lie_type, lambda))?;
    Ok(FormalCharacter { entries: t.entries.into_iter().map(|(k, v)| (k, v as i64)).collect() })
}

/// Compares the pointwise character product with the character sum over `tensor_decompose`.
pub fn character_product_check(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<CharacterProductReport> {
    if rs.rank() > CHARACTER_RANK_CAP {
        return Err(Error::FamilyUnsupported(format!("rank {} > {CHARACTER_RANK_CAP}", rs.rank())));
    }
    for l in [lambda, mu] {
        let d = weyl_dim_labels(rs, l)?;
        if d > CHARACTER_DIM_CAP {
            return Err(Error::DimensionCap(d, CHARACTER_DIM_CAP));
        }
    }
    let a = kostant_character(rs, lambda)?;
    let b = kostant_character(rs, mu)?;
    let factors_agree = a == freudenthal(rs, lambda)? && b == freudenthal(rs, mu)?;
    let lhs = &a * &b;
    let decomposition = tensor_decompose(rs, &Weight::from_ints(rs.lie_type, lambda), &Weight::from_ints(rs.lie_type, mu))?;
    let mut rhs = FormalCharacter::default();
    for (nu, m) in &decomposition {
        rhs = &rhs + &kostant_character(rs, nu)?.scaled(*m as i64);
    }
    Ok(CharacterProductReport { lambda: lambda.to_vec(), mu: mu.to_vec(), decomposition, factors_agree, product_matches: lhs == rhs })
}
