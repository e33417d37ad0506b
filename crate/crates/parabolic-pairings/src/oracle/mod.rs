//! Independent brute-force checks: PBW models of Verma modules, Kostant characters and
//! numeric invariance on the Riemann sphere.

pub mod characters;
pub mod cp1;
pub mod pbw;

pub use characters::{character_product_check, kostant_character, CharacterProductReport, FormalCharacter};
pub use cp1::{cp1_invariance_residual, residual_with_coefficients, Cp1Report, Mobius, Sampling};
pub use pbw::{singular_vectors_biverma, singular_vectors_verma, Algebra, Induction, PbwState, SingularVectors};

use crate::error::Result;
use crate::linalg;
use crate::pairings::gamma_coefficients;
use crate::poly::Poly;
use crate::rational::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// One `sl2` comparison between the bi-Verma nullspace and the coefficient system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sl2Comparison {
    pub order: usize,
    pub q: String,
    pub q_prime: String,
    pub oracle_dim: usize,
    pub system_dim: usize,
    pub degenerate: bool,
    /// Same solution space (spanned by the oracle vectors and the system basis).
    pub agree: bool,
}

pub fn sl2_compare(m: usize, q: &Q, qp: &Q) -> Result<Sl2Comparison> {
    let s = singular_vectors_biverma(Algebra::Sl2, Induction::Borel, std::slice::from_ref(q), std::slice::from_ref(qp), &[1], m)?;
    let g = gamma_coefficients(m, &Poly::constant(q.clone()), &Poly::constant(qp.clone()));
    let basis: Vec<Vec<Q>> = g.basis.iter().map(|v| v.iter().map(|p| p.as_constant().expect("numeric")).collect()).collect();
    let mut agree = linalg::same_span(&s.vectors, &basis);
    if !g.degenerate {
        let closed: Vec<Q> = g.coefficients.iter().map(|p| p.as_constant().expect("numeric")).collect();
        agree &= s.dimension == 1 && linalg::proportional(&s.vectors[0], &closed);
    }
    Ok(Sl2Comparison {
        order: m,
        q: q.to_string(),
        q_prime: qp.to_string(),
        oracle_dim: s.dimension,
        system_dim: g.solution_dim,
        degenerate: g.degenerate,
        agree,
    })
}

/// Random `sl2` instances: integers (including the critical set) and fractions.
pub fn sl2_concordance(instances: usize, max_order: usize, seed: u64) -> Result<Vec<Sl2Comparison>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(instances);
    for i in 0..instances {
        let m = rng.gen_range(0..=max_order);
        let draw = |rng: &mut ChaCha8Rng, critical: bool| -> Q {
            if critical && m > 0 {
                crate::rational::qi(rng.gen_range(0..m as i64))
            } else if rng.gen_bool(0.5) {
                crate::rational::qi(rng.gen_range(-6..=12))
            } else {
                crate::rational::qf(rng.gen_range(-40..=40), rng.gen_range(2..=7))
            }
        };
        // every third instance has both weights in the critical set
        let critical = i % 3 == 2;
        let q = draw(&mut rng, critical);
        let qp = draw(&mut rng, critical);
        out.push(sl2_compare(m, &q, &qp)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::ParabolicStructure;
    use crate::pairings::higher_order_setup;
    use crate::rational::qi;
    use crate::rootsys::{LieType, RootSystem};

    #[test]
    fn concordance_covers_both_outcomes() {
        let all = sl2_concordance(30, 6, 2024).unwrap();
        assert!(all.iter().all(|c| c.agree && c.oracle_dim == c.system_dim), "{all:?}");
        assert!(all.iter().any(|c| c.degenerate && c.oracle_dim == 2));
        assert!(all.iter().any(|c| !c.degenerate && c.oracle_dim == 1));
    }

    #[test]
    fn sl3_extremal_pairings_exist_when_preconditions_hold() {
        let rs = RootSystem::new(LieType::a(2)).unwrap();
        let p = ParabolicStructure::new(LieType::a(2), vec![0]).unwrap();
        // g_-1 roots: −α1 and −(α1+α2), labels and lowering depth per unit
        let roots: [(&[i64], [u32; 2]); 2] = [(&[-2, 1], [1, 0]), (&[-1, -1], [1, 1])];
        let mut checked = 0;
        for (alpha, depth) in roots {
            for m in 1..=3usize {
                for (a, b) in [(3i64, 0i64), (5, 1), (-7, 2), (4, 2)] {
                    for (c, d) in [(2i64, 1i64), (6, 0), (-5, 1)] {
                        let lam = [Poly::int(a), Poly::int(b)];
                        let nu = [Poly::int(c), Poly::int(d)];
                        let Ok(setup) = higher_order_setup(&rs, &p, &lam, &nu, alpha, alpha, m) else { continue };
                        if !setup.all_passed() {
                            continue;
                        }
                        let s = singular_vectors_biverma(Algebra::Sl3, Induction::FirstNodeCrossed, &[qi(a), qi(b)], &[qi(c), qi(d)], &depth, m)
                            .unwrap();
                        assert!(s.dimension >= 1, "α={alpha:?} M={m} λ=({a},{b}) ν=({c},{d})");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked >= 10, "{checked}");
    }

    #[test]
    fn levi_instance_matches_semisimple_characters() {
        let rs = RootSystem::new(LieType::a(3)).unwrap();
        let p = ParabolicStructure::new(LieType::a(3), vec![0]).unwrap();
        let ints = |v: &[i64]| v.iter().map(|&x| Poly::int(x)).collect::<Vec<_>>();
        let d = crate::repthy::levi_tensor(&rs, &p, &ints(&[-4, 2, 0]), &ints(&[-1, 0, 1]), 1000).unwrap();
        let got = d.numeric().unwrap();
        let want = vec![(vec![qi(-5), qi(2), qi(1)], 1), (vec![qi(-4), qi(1), qi(0)], 1)];
        assert_eq!(got.len(), 2);
        for w in &want {
            assert!(got.contains(w), "{got:?}");
        }
        // the semisimple part alone, through characters
        let a2 = RootSystem::new(LieType::a(2)).unwrap();
        let r = character_product_check(&a2, &[2, 0], &[0, 1]).unwrap();
        assert!(r.passed());
        assert_eq!(r.decomposition, vec![(vec![1, 0], 1), (vec![2, 1], 1)]);
    }
}
