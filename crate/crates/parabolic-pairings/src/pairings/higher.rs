//! Symbols `q`, `q'` of a higher-order pairing along extremal roots, with its preconditions.

use crate::error::{Error, Result};
use crate::parabolic::{self, ParabolicStructure};
use crate::poly::Poly;
use crate::rational::{qi, Q};
use crate::repthy::{levi_peel, levi_tensor, tensor_power_g1_character, DIM_CAP};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HigherOrderSetup {
    #[serde(serialize_with = "super::gamma::ser_poly")]
    pub q: Poly,
    #[serde(serialize_with = "super::gamma::ser_poly")]
    pub q_prime: Poly,
    #[serde(serialize_with = "super::gamma::ser_polys")]
    pub target: Vec<Poly>,
    pub target_multiplicity: u64,
    pub checks: Vec<Check>,
}

impl HigherOrderSetup {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn root_index(rs: &RootSystem, p: &ParabolicStructure, alpha: &[i64]) -> Result<(usize, i64)> {
    let lab: Vec<Q> = alpha.iter().map(|&x| qi(x)).collect();
    let (k, sign) = rs.find_root(&lab).ok_or_else(|| Error::NotARoot(format!("{alpha:?}")))?;
    match weyl::is_extremal_index(rs, p, k, sign) {
        Some(true) => Ok((k, sign)),
        _ => Err(Error::NotExtremal(format!("{alpha:?}"))),
    }
}

/// `−B(λ+ρ, α^∨) − 1`.
fn symbol(rs: &RootSystem, lambda: &[Poly], k: usize, sign: i64) -> Poly {
    let shifted: Vec<Poly> = lambda.iter().map(|x| x + &Poly::one()).collect();
    let pair = rs.coroot_pair_index_poly(&shifted, k).scale(&qi(sign));
    &(-&pair) - &Poly::one()
}

fn shift(labels: &[Poly], root: &[i64], j: i64) -> Vec<Poly> {
    labels.iter().zip(root).map(|(x, &r)| x + &Poly::int(r * j)).collect()
}

fn p_dominant(p: &ParabolicStructure, labels: &[Poly]) -> bool {
    p.uncrossed().iter().all(|&i| labels[i].as_constant().is_some_and(|c| c >= qi(0)))
}

/// Multiplicity of `target` in `⊗^M g_1 ⊗ V ⊗ W` as `g_0`-modules.
pub fn target_multiplicity(rs: &RootSystem, p: &ParabolicStructure, v: &[Poly], w: &[Poly], m: usize, target: &[Poly]) -> Result<u64> {
    let parts = levi_peel(rs, p, &tensor_power_g1_character(rs, p, m), DIM_CAP)?;
    let mut vw: BTreeMap<Vec<Poly>, u64> = BTreeMap::new();
    for (lab, c) in levi_tensor(rs, p, v, w, DIM_CAP)?.summands {
        *vw.entry(lab).or_insert(0) += c;
    }
    let mut total = 0u64;
    for (lab, mult) in parts {
        let e: Vec<Poly> = lab.iter().map(|&x| Poly::int(x)).collect();
        for (u, c) in &vw {
            total += mult * c * levi_tensor(rs, p, &e, u, DIM_CAP)?.multiplicity(target);
        }
    }
    Ok(total)
}

/// Symbols and preconditions for an `M`-th order pairing `V × W → E_μ`, `μ = λ + ν + Mα`.
pub fn higher_order_setup(
    rs: &RootSystem,
    p: &ParabolicStructure,
    lambda: &[Poly],
    nu: &[Poly],
    alpha: &[i64],
    beta: &[i64],
    m: usize,
) -> Result<HigherOrderSetup> {
    let (ka, sa) = root_index(rs, p, alpha)?;
    let (kb, sb) = root_index(rs, p, beta)?;
    let wa = Weight::from_ints(rs.lie_type, alpha);
    let wb = Weight::from_ints(rs.lie_type, beta);
    if !weyl::same_orbit(rs, &wa, &wb)? {
        return Err(Error::OrbitMismatch(format!("{alpha:?}"), format!("{beta:?}")));
    }
    let mut checks = Vec::new();
    for j in 1..=m as i64 {
        let a = shift(lambda, alpha, j);
        let b = shift(nu, beta, j);
        if !p_dominant(p, &a) || !p_dominant(p, &b) {
            return Err(Error::DominanceFails(j as usize));
        }
    }
    checks.push(Check { name: "dominance".into(), passed: true, detail: format!("λ+jα and ν+jβ p-dominant for j=1..{m}") });
    let target: Vec<Poly> = lambda.iter().zip(nu).zip(alpha).map(|((a, b), &r)| &(a + b) + &Poly::int(r * m as i64)).collect();
    let mult = target_multiplicity(rs, p, lambda, nu, m, &target)?;
    checks.push(Check {
        name: "multiplicity_one".into(),
        passed: mult == 1,
        detail: format!("target {} occurs {mult} time(s)", parabolic::format_dynkin_poly(p, &target)),
    });
    Ok(HigherOrderSetup { q: symbol(rs, lambda, ka, sa), q_prime: symbol(rs, nu, kb, sb), target, target_multiplicity: mult, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parse_dynkin_symbolic;
    use crate::rootsys::LieType;

    fn setup(v: &str, w: &str, alpha: &[i64], beta: &[i64], m: usize) -> Result<HigherOrderSetup> {
        let (p, lam) = parse_dynkin_symbolic(v)?;
        let (_, nu) = parse_dynkin_symbolic(w)?;
        let rs = RootSystem::new(p.lie_type)?;
        higher_order_setup(&rs, &p, &lam, &nu, alpha, beta, m)
    }

    fn poly(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn simple_root_gives_label() {
        let s = setup("A3:x(a)o(1)o(0)", "A3:x(b)o(0)o(2)", &[-2, 1, 0], &[-2, 1, 0], 2).unwrap();
        assert_eq!(s.q, poly("a"));
        assert_eq!(s.q_prime, poly("b"));
        assert!(s.all_passed());
    }

    #[test]
    fn projective_vector_fields_and_densities() {
        for n in 2..=5usize {
            let k = 2i64;
            let v = format!("A{n}:x({k}+v){}o({k})", "o(0)".repeat(n - 2));
            let w = format!("A{n}:x(w){}", "o(0)".repeat(n - 1));
            let mut alpha = vec![0i64; n];
            alpha[0] = -1;
            alpha[n - 1] -= 1;
            let mut beta = vec![0i64; n];
            beta[0] = -2;
            beta[1] = 1;
            let s = setup(&v, &w, &alpha, &beta, 2).unwrap();
            assert_eq!(s.q, poly(&format!("v+{}", n as i64 + 2 * k - 1)), "n={n}");
            assert_eq!(s.q_prime, poly("w"));
            assert!(s.all_passed(), "{:?}", s.checks);
        }
    }

    #[test]
    fn errors() {
        let rs = RootSystem::new(LieType::a(2)).unwrap();
        let p = ParabolicStructure::new(LieType::a(2), vec![0]).unwrap();
        let lam = vec![Poly::var("a"), Poly::int(0)];
        assert!(matches!(higher_order_setup(&rs, &p, &lam, &lam, &[1, 1], &[-2, 1], 1), Err(Error::NotExtremal(_))));
        assert!(matches!(higher_order_setup(&rs, &p, &lam, &lam, &[-1, -1], &[-2, 1], 1), Err(Error::DominanceFails(1))));
    }
}
