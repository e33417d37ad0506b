//! Weyl group actions, orbits, lengths and Hasse diagrams of parabolics.
//!
//! An element `w` is identified with the integral weight `w(ρ)`; its canonical word is
//! read off by repeatedly stripping the smallest left descent.

use crate::error::{Error, Result};
use crate::parabolic::ParabolicStructure;
use crate::rational::{qi, Q};
use crate::rootsys::{Basis, RootSystem, Weight};
use num_traits::Signed;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// Default enumeration cap on the Weyl group order.
pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Reduced word of 0-based simple-reflection indices; `w = s_{word[0]} s_{word[1]} ⋯`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: vec![] }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `w(ρ)` as integer labels.
    pub fn rho_image(&self, rs: &RootSystem) -> Vec<i64> {
        let mut mu = vec![1i64; rs.rank()];
        for &i in self.word.iter().rev() {
            mu = rs.simple_reflect_ints(&mu, i);
        }
        mu
    }

    /// Canonical element with `w(ρ) = mu`.
    pub fn from_rho_image(rs: &RootSystem, mu: &[i64]) -> Self {
        let mut mu = mu.to_vec();
        let mut word = Vec::new();
        while let Some(i) = mu.iter().position(|&x| x < 0) {
            word.push(i);
            mu = rs.simple_reflect_ints(&mu, i);
        }
        WeylElement { word }
    }

    /// Reduce an arbitrary word to the canonical reduced word.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        for &i in word {
            if i >= rs.rank() {
                return Err(Error::IndexOutOfRange(i + 1, rs.rank()));
            }
        }
        let w = WeylElement { word: word.to_vec() };
        Ok(WeylElement::from_rho_image(rs, &w.rho_image(rs)))
    }

    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(other.word.iter().copied());
        WeylElement::from_rho_image(rs, &WeylElement { word }.rho_image(rs))
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_rho_image(rs, &WeylElement { word }.rho_image(rs))
    }

    /// Linear action on labels.
    pub fn act_labels(&self, rs: &RootSystem, labels: &[Q]) -> Vec<Q> {
        let mut v = labels.to_vec();
        for &i in self.word.iter().rev() {
            v = rs.simple_reflect_labels(&v, i);
        }
        v
    }

    pub fn act_ints(&self, rs: &RootSystem, labels: &[i64]) -> Vec<i64> {
        let mut v = labels.to_vec();
        for &i in self.word.iter().rev() {
            v = rs.simple_reflect_ints(&v, i);
        }
        v
    }

    /// Dot action `w.λ = w(λ+ρ)−ρ` on labels.
    pub fn dot_labels(&self, rs: &RootSystem, labels: &[Q]) -> Vec<Q> {
        let shifted: Vec<Q> = labels.iter().map(|x| x + qi(1)).collect();
        self.act_labels(rs, &shifted).into_iter().map(|x| x - qi(1)).collect()
    }

    /// 1-based word for display, e.g. `s1 s2`.
    pub fn display(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
        }
    }
}

fn to_basis(rs: &RootSystem, labels: Vec<Q>, like: &Weight) -> Weight {
    let w = Weight::labels(rs.lie_type, labels);
    match like.basis {
        Basis::Fundamental => w,
        Basis::Epsilon => rs.to_epsilon(&w),
    }
}

/// Simple reflection `σ_{α_i}` (0-based `i`).
pub fn reflect(rs: &RootSystem, i: usize, lambda: &Weight) -> Result<Weight> {
    if i >= rs.rank() {
        return Err(Error::IndexOutOfRange(i + 1, rs.rank()));
    }
    let l = rs.labels_of(lambda)?;
    Ok(to_basis(rs, rs.simple_reflect_labels(&l, i), lambda))
}

pub fn affine_act(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
    let l = rs.labels_of(lambda)?;
    Ok(to_basis(rs, w.dot_labels(rs, &l), lambda))
}

/// Dominant conjugate of a label vector and an element carrying it there.
pub fn dominant_conjugate(rs: &RootSystem, labels: &[Q]) -> (Vec<Q>, Vec<usize>) {
    let mut v = labels.to_vec();
    let mut word = Vec::new();
    while let Some(i) = v.iter().position(|x| x.is_negative()) {
        v = rs.simple_reflect_labels(&v, i);
        word.push(i);
    }
    (v, word)
}

fn orbit_labels(rs: &RootSystem, start: &[Q]) -> Vec<Vec<Q>> {
    let mut seen: HashSet<Vec<Q>> = HashSet::new();
    let mut out = vec![start.to_vec()];
    seen.insert(start.to_vec());
    let mut queue: VecDeque<Vec<Q>> = VecDeque::from(vec![start.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank() {
            let r = rs.simple_reflect_labels(&v, i);
            if seen.insert(r.clone()) {
                out.push(r.clone());
                queue.push_back(r);
            }
        }
    }
    out
}

/// Full orbit under the linear action; refuses groups larger than `cap`.
pub fn orbit(rs: &RootSystem, lambda: &Weight, cap: u128) -> Result<Vec<Weight>> {
    let order = rs.lie_type.weyl_order();
    if order > cap {
        return Err(Error::OrbitTooLarge(order, cap));
    }
    let l = rs.labels_of(lambda)?;
    Ok(orbit_labels(rs, &l).into_iter().map(|v| to_basis(rs, v, lambda)).collect())
}

/// Whether two roots lie in one Weyl orbit.
pub fn same_orbit(rs: &RootSystem, alpha: &Weight, beta: &Weight) -> Result<bool> {
    let a = rs.labels_of(alpha)?;
    let b = rs.labels_of(beta)?;
    rs.find_root(&a).ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
    rs.find_root(&b).ok_or_else(|| Error::NotARoot(beta.to_string()))?;
    Ok(orbit_labels(rs, &a).contains(&b))
}

#[derive(Clone, Debug)]
pub struct HasseDiagram {
    pub parabolic: ParabolicStructure,
    /// Elements with their lengths, sorted by length then by canonical word.
    pub elements: Vec<(WeylElement, usize)>,
    /// `w(ρ)` for each element.
    pub rho_images: Vec<Vec<i64>>,
    /// Bruhat covers between consecutive lengths, with the positive root index `γ` of `w' = s_γ w`.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl HasseDiagram {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_length(&self) -> usize {
        self.elements.iter().map(|e| e.1).max().unwrap_or(0)
    }
}

/// Whether `w` is a minimal coset representative: `w⁻¹` maps every uncrossed simple root to a positive root.
pub fn in_hasse_by_inverse(rs: &RootSystem, p: &ParabolicStructure, w: &WeylElement) -> bool {
    let inv = w.inverse(rs);
    p.uncrossed().iter().all(|&j| {
        let image = inv.act_ints(rs, &rs.simple_labels(j));
        let q: Vec<Q> = image.iter().map(|&x| qi(x)).collect();
        matches!(rs.find_root(&q), Some((_, 1)))
    })
}

/// The Hasse diagram `W^p` of minimal-length coset representatives.
pub fn hasse(rs: &RootSystem, p: &ParabolicStructure, cap: u128) -> Result<HasseDiagram> {
    let order = rs.lie_type.weyl_order();
    if order > cap {
        return Err(Error::OrbitTooLarge(order, cap));
    }
    let j_nodes = p.uncrossed();
    let rho: Vec<i64> = vec![1; rs.rank()];
    let mut levels: Vec<Vec<(WeylElement, Vec<i64>)>> = vec![vec![(WeylElement::identity(), rho)]];
    loop {
        let mut next: Vec<(WeylElement, Vec<i64>)> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        for (w, mu) in levels.last().unwrap() {
            for i in 0..rs.rank() {
                // w s_i (ρ) = w(ρ) − w(α_i); length grows iff w(α_i) > 0
                let wa = w.act_ints(rs, &rs.simple_labels(i));
                let waq: Vec<Q> = wa.iter().map(|&x| qi(x)).collect();
                if !matches!(rs.find_root(&waq), Some((_, 1))) {
                    continue;
                }
                let nu: Vec<i64> = mu.iter().zip(&wa).map(|(a, b)| a - b).collect();
                if j_nodes.iter().all(|&j| nu[j] > 0) && seen.insert(nu.clone()) {
                    next.push((WeylElement::from_rho_image(rs, &nu), nu));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.0.word.cmp(&b.0.word));
        levels.push(next);
    }
    let mut elements = Vec::new();
    let mut rho_images = Vec::new();
    for (len, lvl) in levels.iter().enumerate() {
        for (w, mu) in lvl {
            elements.push((w.clone(), len));
            rho_images.push(mu.clone());
        }
    }
    let index: HashMap<Vec<i64>, usize> = rho_images.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let mut arrows = Vec::new();
    for (a, mu) in rho_images.iter().enumerate() {
        let len = elements[a].1;
        let muq: Vec<Q> = mu.iter().map(|&x| qi(x)).collect();
        for g in 0..rs.num_positive() {
            let img = rs.reflect_index(&muq, g);
            let img: Vec<i64> = img.iter().map(|x| crate::rational::to_i64(x).expect("integral")).collect();
            if let Some(&b) = index.get(&img) {
                if elements[b].1 == len + 1 {
                    arrows.push((a, b, g));
                }
            }
        }
    }
    arrows.sort();
    Ok(HasseDiagram { parabolic: p.clone(), elements, rho_images, arrows })
}

/// Whole Weyl group (Borel Hasse diagram), enumerated by length.
pub fn all_elements(rs: &RootSystem, cap: u128) -> Result<Vec<WeylElement>> {
    let p = ParabolicStructure::new(rs.lie_type, (0..rs.rank()).collect())?;
    Ok(hasse(rs, &p, cap)?.elements.into_iter().map(|e| e.0).collect())
}

/// Grade of a root (simple-root coefficients) with respect to the crossed nodes.
fn root_grade(p: &ParabolicStructure, coeffs: &[i64]) -> i64 {
    p.crossed.iter().map(|&i| coeffs[i]).sum()
}

/// Extremality of a root `θ` of `g_-1`.
pub fn is_extremal(rs: &RootSystem, p: &ParabolicStructure, theta: &Weight) -> Result<bool> {
    let lab = rs.labels_of(theta)?;
    let (k, sign) = rs.find_root(&lab).ok_or_else(|| Error::NotARoot(theta.to_string()))?;
    is_extremal_index(rs, p, k, sign).ok_or_else(|| Error::NotInGminus1(theta.to_string()))
}

/// Extremality of `sign·β_k`; `None` when that root is not in `g_-1`.
pub fn is_extremal_index(rs: &RootSystem, p: &ParabolicStructure, k: usize, sign: i64) -> Option<bool> {
    let c = &rs.positive_coeffs()[k];
    if sign != -1 || root_grade(p, c) != 1 {
        return None;
    }
    let i = *p.crossed.iter().find(|&&i| c[i] == 1)?;
    let simple_idx = rs.root_index(&(0..rs.rank()).map(|j| i64::from(j == i)).collect::<Vec<_>>())?;
    let long = rs.is_long_index(simple_idx);
    Some(long && rs.positive_norms()[k] == rs.positive_norms()[simple_idx])
}

/// Crossed node whose `g_-1` summand contains the root `-β_k`.
pub fn gminus1_node(p: &ParabolicStructure, rs: &RootSystem, k: usize) -> Option<usize> {
    let c = &rs.positive_coeffs()[k];
    if root_grade(p, c) != 1 {
        return None;
    }
    p.crossed.iter().copied().find(|&i| c[i] == 1)
}

/// Set of weights `{w.λ}` for `w` in the whole group (used by tests and central characters).
pub fn dot_orbit(rs: &RootSystem, labels: &[Q]) -> BTreeSet<Vec<Q>> {
    let shifted: Vec<Q> = labels.iter().map(|x| x + qi(1)).collect();
    orbit_labels(rs, &shifted).into_iter().map(|v| v.into_iter().map(|x| x - qi(1)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootsys::LieType;
    use proptest::prelude::*;

    fn labels(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn rank_one_reflection() {
        let rs = RootSystem::new(LieType::a(1)).unwrap();
        let w = Weight::from_ints(LieType::a(1), &[1]);
        assert_eq!(reflect(&rs, 0, &w).unwrap(), Weight::from_ints(LieType::a(1), &[-1]));
        assert!(matches!(reflect(&rs, 1, &w), Err(Error::IndexOutOfRange(2, 1))));
    }

    #[test]
    fn type_a_reflections_permute() {
        let t = LieType::a(3);
        let rs = RootSystem::new(t).unwrap();
        let b = vec![qi(5), qi(2), qi(-1), qi(0)];
        let w = Weight::epsilon(t, b.clone());
        for i in 0..3 {
            let r = reflect(&rs, i, &w).unwrap();
            let mut sw = b.clone();
            sw.swap(i, i + 1);
            assert_eq!(r, rs.to_epsilon(&Weight::epsilon(t, sw)));
        }
        let fixed = Weight::from_ints(t, &[0, 3, 1]);
        assert_eq!(reflect(&rs, 0, &fixed).unwrap(), fixed);
    }

    #[test]
    fn dot_action_examples() {
        let rs = RootSystem::new(LieType::a(2)).unwrap();
        let s1 = WeylElement::from_word(&rs, &[0]).unwrap();
        let (a, b) = (qi(3), qi(5));
        let out = s1.dot_labels(&rs, &[a.clone(), b.clone()]);
        assert_eq!(out, vec![-a.clone() - qi(2), a + b + qi(1)]);
        let id = WeylElement::identity();
        assert_eq!(id.dot_labels(&rs, &labels(&[4, 7])), labels(&[4, 7]));
        // σ_i.Λ = Λ − (M_i+1)α_i
        let rs4 = RootSystem::new(LieType::b(3)).unwrap();
        let lam = labels(&[2, 0, 3]);
        for i in 0..3 {
            let s = WeylElement::from_word(&rs4, &[i]).unwrap();
            let alpha = rs4.simple_labels(i);
            let want: Vec<Q> = lam.iter().zip(&alpha).map(|(x, &a)| x - (&lam[i] + qi(1)) * qi(a)).collect();
            assert_eq!(s.dot_labels(&rs4, &lam), want);
        }
    }

    #[test]
    fn orbits() {
        let rs = RootSystem::new(LieType::a(2)).unwrap();
        let generic = Weight::from_ints(LieType::a(2), &[2, 1]);
        assert_eq!(orbit(&rs, &generic, DEFAULT_CAP).unwrap().len(), 6);
        let zero = Weight::from_ints(LieType::a(2), &[0, 0]);
        assert_eq!(orbit(&rs, &zero, DEFAULT_CAP).unwrap(), vec![zero]);
        let b2 = RootSystem::new(LieType::b(2)).unwrap();
        let e1 = Weight::epsilon(LieType::b(2), vec![qi(1), qi(0)]);
        let orb: BTreeSet<Vec<Q>> = orbit(&b2, &e1, DEFAULT_CAP).unwrap().into_iter().map(|w| w.coords).collect();
        let want: BTreeSet<Vec<Q>> =
            [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|v| v.iter().map(|&x| qi(x)).collect()).collect();
        assert_eq!(orb, want);
        let big = RootSystem::new(LieType::a(9)).unwrap();
        assert!(matches!(orbit(&big, &Weight::from_ints(LieType::a(9), &[0; 9]), DEFAULT_CAP), Err(Error::OrbitTooLarge(..))));
    }

    #[test]
    fn type_a_orbit_is_permutation_orbit() {
        let t = LieType::a(3);
        let rs = RootSystem::new(t).unwrap();
        let b = [3i64, 1, 1, 0];
        let orb: BTreeSet<Vec<Q>> = orbit(&rs, &Weight::epsilon(t, labels(&b)), DEFAULT_CAP).unwrap().into_iter().map(|w| rs.to_epsilon(&w).coords).collect();
        let mut perms = BTreeSet::new();
        let mut idx = [0usize, 1, 2, 3];
        permute(&mut idx, 0, &mut |p| {
            let v: Vec<Q> = p.iter().map(|&i| qi(b[i])).collect();
            perms.insert(rs.to_epsilon(&Weight::epsilon(t, v)).coords);
        });
        assert_eq!(orb, perms);
    }

    fn permute(a: &mut [usize; 4], k: usize, f: &mut dyn FnMut(&[usize; 4])) {
        if k == a.len() {
            f(a);
            return;
        }
        for i in k..a.len() {
            a.swap(k, i);
            permute(a, k + 1, f);
            a.swap(k, i);
        }
    }

    #[test]
    fn same_orbit_by_length() {
        let a = RootSystem::new(LieType::a(4)).unwrap();
        let roots = a.positive_roots();
        for r in &roots {
            for s in &roots {
                assert!(same_orbit(&a, r, s).unwrap());
            }
        }
        let b = RootSystem::new(LieType::b(3)).unwrap();
        let e1 = Weight::epsilon(LieType::b(3), labels(&[1, 0, 0]));
        let e12 = Weight::epsilon(LieType::b(3), labels(&[1, -1, 0]));
        assert!(!same_orbit(&b, &e1, &e12).unwrap());
        assert!(same_orbit(&b, &e1, &e1).unwrap());
        let roots = b.positive_roots();
        for (k, r) in roots.iter().enumerate() {
            for (m, s) in roots.iter().enumerate() {
                assert_eq!(same_orbit(&b, r, s).unwrap(), b.positive_norms()[k] == b.positive_norms()[m]);
            }
        }
    }

    #[test]
    fn hasse_sizes() {
        for n in 1..=5 {
            let rs = RootSystem::new(LieType::a(n)).unwrap();
            let p = ParabolicStructure::new(LieType::a(n), vec![0]).unwrap();
            let h = hasse(&rs, &p, DEFAULT_CAP).unwrap();
            assert_eq!(h.len(), n + 1);
            for (k, (_, len)) in h.elements.iter().enumerate() {
                assert_eq!(*len, k);
            }
        }
        for l in 3..=5 {
            let rs = RootSystem::new(LieType::d(l)).unwrap();
            let p = ParabolicStructure::new(LieType::d(l), vec![0]).unwrap();
            let h = hasse(&rs, &p, DEFAULT_CAP).unwrap();
            assert_eq!(h.len(), 2 * l);
            assert_eq!(h.elements.iter().filter(|e| e.1 == l - 1).count(), 2);
        }
        let rs = RootSystem::new(LieType::b(2)).unwrap();
        let borel = ParabolicStructure::new(LieType::b(2), vec![0, 1]).unwrap();
        let h = hasse(&rs, &borel, DEFAULT_CAP).unwrap();
        assert_eq!(h.len(), 8);
        assert_eq!(h.elements.iter().filter(|e| e.1 == 0).count(), 1);
    }

    #[test]
    fn hasse_index_formula_and_inverse_criterion() {
        let types = [LieType::a(3), LieType::a(4), LieType::b(3), LieType::c(3), LieType::d(4), LieType::g2(), LieType::b(4)];
        for t in types {
            let rs = RootSystem::new(t).unwrap();
            let all = all_elements(&rs, DEFAULT_CAP).unwrap();
            assert_eq!(all.len() as u128, t.weyl_order());
            for mask in 1u32..(1 << t.rank) {
                let crossed: Vec<usize> = (0..t.rank).filter(|i| mask & (1 << i) != 0).collect();
                let p = ParabolicStructure::new(t, crossed.clone()).unwrap();
                let h = hasse(&rs, &p, DEFAULT_CAP).unwrap();
                // |W^p| · |W_p| = |W|, with W_p counted by brute force
                let levi = all.iter().filter(|w| w.word.iter().all(|i| !crossed.contains(i))).count();
                assert_eq!(h.len() * levi, all.len(), "{t} {crossed:?}");
                let members: BTreeSet<Vec<usize>> = h.elements.iter().map(|e| e.0.word.clone()).collect();
                let by_inverse: BTreeSet<Vec<usize>> =
                    all.iter().filter(|w| in_hasse_by_inverse(&rs, &p, w)).map(|w| w.word.clone()).collect();
                assert_eq!(members, by_inverse);
                for (w, len) in &h.elements {
                    assert_eq!(w.length(), *len);
                }
            }
        }
    }

    #[test]
    fn extremal_roots() {
        let a = RootSystem::new(LieType::a(4)).unwrap();
        let p = ParabolicStructure::new(LieType::a(4), vec![0]).unwrap();
        for j in 1..5 {
            let mut v = vec![qi(0); 5];
            v[0] = qi(-1);
            v[j] = qi(1);
            assert!(is_extremal(&a, &p, &Weight::epsilon(LieType::a(4), v)).unwrap());
        }
        let b = RootSystem::new(LieType::b(3)).unwrap();
        let pb = ParabolicStructure::new(LieType::b(3), vec![0]).unwrap();
        let t = LieType::b(3);
        assert!(!is_extremal(&b, &pb, &Weight::epsilon(t, labels(&[-1, 0, 0]))).unwrap());
        assert!(is_extremal(&b, &pb, &Weight::epsilon(t, labels(&[-1, 1, 0]))).unwrap());
        assert!(matches!(is_extremal(&b, &pb, &Weight::epsilon(t, labels(&[0, 1, -1]))), Err(Error::NotInGminus1(_))));
    }

    proptest! {
        #[test]
        fn dot_action_is_a_group_action(w1 in proptest::collection::vec(0usize..3, 0..6), w2 in proptest::collection::vec(0usize..3, 0..6), lam in proptest::collection::vec(-5i64..6, 3), d in 1i64..3) {
            let rs = RootSystem::new(LieType::b(3)).unwrap();
            let a = WeylElement::from_word(&rs, &w1).unwrap();
            let b = WeylElement::from_word(&rs, &w2).unwrap();
            let l: Vec<Q> = lam.iter().map(|&x| qf(x, d)).collect();
            let ab = a.compose(&rs, &b);
            prop_assert_eq!(a.dot_labels(&rs, &b.dot_labels(&rs, &l)), ab.dot_labels(&rs, &l));
            // canonical words are reduced
            let neg = rs.positive_coeffs().len() - (0..rs.num_positive()).filter(|&k| {
                let mu: Vec<Q> = ab.rho_image(&rs).iter().map(|&x| qi(x)).collect();
                rs.coroot_pair_index(&mu, k) > qi(0)
            }).count();
            prop_assert_eq!(neg, ab.length());
        }

        #[test]
        fn reflections_are_involutions(lam in proptest::collection::vec(-5i64..6, 4), i in 0usize..4) {
            let rs = RootSystem::new(LieType::d(4)).unwrap();
            let w = Weight::from_ints(LieType::d(4), &lam);
            let r = reflect(&rs, i, &reflect(&rs, i, &w).unwrap()).unwrap();
            prop_assert_eq!(r, w);
        }
    }
}
