//! Casimir eigenvalues, first-order pairing constants and central characters.

use crate::error::{Error, Result};
use crate::parabolic::{self, ParabolicStructure};
use crate::poly::Poly;
use crate::rational::{qi, Q};
use crate::rootsys::{Family, LieType, RootSystem};
use crate::weyl;
use num_traits::Zero;
use serde::Serialize;

/// Which half-sum enters `B(λ, λ + 2ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoChoice {
    Full,
    /// Half-sum of the positive roots of the Levi factor of a parabolic.
    Levi(Vec<usize>),
}

fn rho_for(rs: &RootSystem, choice: &RhoChoice) -> Vec<Q> {
    match choice {
        RhoChoice::Full => rs.rho_labels(),
        RhoChoice::Levi(crossed) => rs.rho0_labels(crossed),
    }
}

/// `B(λ, λ + 2ρ)` on label vectors.
pub fn casimir_eigenvalue(rs: &RootSystem, lambda: &[Q], choice: &RhoChoice) -> Q {
    let rho = rho_for(rs, choice);
    let shifted: Vec<Q> = lambda.iter().zip(&rho).map(|(a, r)| a + r * qi(2)).collect();
    rs.form_labels(lambda, &shifted)
}

/// `‖λ + ρ‖²`.
pub fn shifted_norm(rs: &RootSystem, lambda: &[Q]) -> Q {
    let s: Vec<Q> = lambda.iter().map(|a| a + qi(1)).collect();
    rs.norm_labels(&s)
}

pub fn shifted_norm_poly(rs: &RootSystem, lambda: &[Poly]) -> Poly {
    let s: Vec<Poly> = lambda.iter().map(|a| a + &Poly::one()).collect();
    rs.form_poly(&s, &s)
}

/// The constant `c_{λτ}` with its normalized `|1|`-graded variant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingConstant {
    /// `½(‖τ+ρ‖² − ‖λ+ρ‖²)` for the Killing form.
    #[serde(serialize_with = "ser_poly")]
    pub value: Poly,
    /// Value in the scale where the grading weight has unit length (`|1|`-gradings only).
    #[serde(serialize_with = "ser_opt_poly")]
    pub normalized: Option<Poly>,
    /// Geometric weight `ω` of the source bundle (`|1|`-gradings only).
    #[serde(serialize_with = "ser_opt_poly")]
    pub geometric_weight: Option<Poly>,
    /// Levi part `c⁰ = ω − normalized` (`|1|`-gradings only).
    #[serde(serialize_with = "ser_opt_poly")]
    pub levi_part: Option<Poly>,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render_expanded(&[]))
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<Poly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.render_expanded(&[])),
        None => s.serialize_none(),
    }
}

/// Squared length of the grading element's dual, i.e. the factor relating the two scales.
pub fn grading_scale(rs: &RootSystem, i0: usize) -> Q {
    let form = rs.fundamental_form();
    let a_omega = rs.gram[i0][i0].clone() / qi(2);
    &a_omega * &a_omega / &form[i0][i0]
}

pub fn pairing_constant_c(rs: &RootSystem, p: &ParabolicStructure, lambda: &[Poly], tau: &[Poly]) -> Result<PairingConstant> {
    let value = (&shifted_norm_poly(rs, tau) - &shifted_norm_poly(rs, lambda)).scale(&Q::new(1.into(), 2.into()));
    let (normalized, geometric_weight, levi_part) = if p.crossed.len() == 1 && p.is_one_graded(rs) {
        let i0 = p.crossed[0];
        let nv = value.scale(&(qi(1) / grading_scale(rs, i0)));
        let om = parabolic::geometric_weight_poly(rs, p, lambda)?;
        let c0 = &om - &nv;
        (Some(nv), Some(om), Some(c0))
    } else {
        (None, None, None)
    };
    Ok(PairingConstant { value, normalized, geometric_weight, levi_part })
}

/// `c⁰_{λ₀τ₀}` computed directly from the Levi projections and the Levi half-sum.
pub fn levi_constant(rs: &RootSystem, p: &ParabolicStructure, lambda: &[Q], tau: &[Q]) -> Result<Q> {
    if p.crossed.len() != 1 || !p.is_one_graded(rs) {
        return Err(Error::NotOneGraded(p.k0(rs)));
    }
    let i0 = p.crossed[0];
    let proj = |v: &[Q]| -> Vec<Q> {
        let mut w = v.to_vec();
        w[i0] = Q::zero();
        // the component along ω_{i0} is removed; the remainder is orthogonal to it
        let c = rs.labels_to_coeffs(&w);
        let mut x = rs.coeffs_to_labels(&c);
        // keep only the semisimple part: subtract the multiple of ω_{i0} that fixes label i0 at zero
        let f = rs.fundamental_form();
        let t = rs.form_labels(&x, &unit(rs.rank(), i0)) / &f[i0][i0];
        x[i0] -= t;
        x
    };
    let scale = grading_scale(rs, i0);
    let rho0 = rs.rho0_labels(&p.crossed);
    let cas = |v: &[Q]| -> Q {
        let s: Vec<Q> = v.iter().zip(&rho0).map(|(a, r)| a + r * qi(2)).collect();
        rs.form_labels(v, &s) / &scale
    };
    let alpha: Vec<Q> = rs.simple_labels(i0).iter().map(|&x| qi(-x)).collect();
    let (t0, l0, a0) = (proj(tau), proj(lambda), proj(&alpha));
    Ok(-(cas(&t0) - cas(&l0) - cas(&a0)) / qi(2))
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k == i { qi(1) } else { qi(0) }).collect()
}

/// Canonical representative of the Weyl orbit of `λ + ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CentralCharacterKey {
    pub lie_type: String,
    #[serde(serialize_with = "ser_qs")]
    pub orbit_canonical_form: Vec<Q>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::rational::fmt_q(x))?;
    }
    seq.end()
}

/// Orbit key from ε-coordinates: sorted coordinates for `A` (centred), sorted absolute values for
/// `B`/`C`, and for `D` the sign of the product as well. `G2` uses the dominant conjugate.
pub fn central_character_key(rs: &RootSystem, lambda: &[Q]) -> CentralCharacterKey {
    let shifted: Vec<Q> = lambda.iter().map(|a| a + qi(1)).collect();
    let t = rs.lie_type;
    let form = match t.family {
        Family::G2 => weyl::dominant_conjugate(rs, &shifted).0,
        _ => {
            let w = crate::rootsys::Weight::labels(t, shifted);
            let mut e = rs.to_epsilon(&w).coords;
            match t.family {
                Family::A => {
                    let mean = e.iter().cloned().sum::<Q>() / qi(e.len() as i64);
                    for x in e.iter_mut() {
                        *x -= &mean;
                    }
                }
                Family::B | Family::C => {
                    for x in e.iter_mut() {
                        *x = num_traits::Signed::abs(x);
                    }
                }
                Family::D => {
                    let negatives = e.iter().filter(|x| num_traits::Signed::is_negative(*x)).count();
                    let has_zero = e.iter().any(|x| x.is_zero());
                    for x in e.iter_mut() {
                        *x = num_traits::Signed::abs(x);
                    }
                    e.sort_by(|a, b| b.cmp(a));
                    if negatives % 2 == 1 && !has_zero {
                        let last = e.len() - 1;
                        e[last] = -e[last].clone();
                    }
                    return CentralCharacterKey { lie_type: t.to_string(), orbit_canonical_form: e };
                }
                Family::G2 => unreachable!(),
            }
            e.sort_by(|a, b| b.cmp(a));
            e
        }
    };
    CentralCharacterKey { lie_type: t.to_string(), orbit_canonical_form: form }
}

/// Harish-Chandra: equal central characters iff `λ+ρ` and `μ+ρ` are Weyl conjugate.
pub fn same_central_character(rs: &RootSystem, lambda: &[Q], mu: &[Q]) -> Result<bool> {
    if lambda.len() != rs.rank() || mu.len() != rs.rank() {
        return Err(Error::RankMismatch { expected: rs.rank(), found: lambda.len().min(mu.len()) });
    }
    Ok(central_character_key(rs, lambda) == central_character_key(rs, mu))
}

/// Same test through the dominant conjugate of `λ+ρ` in label coordinates.
pub fn same_central_character_by_reflection(rs: &RootSystem, lambda: &[Q], mu: &[Q]) -> bool {
    let s = |v: &[Q]| -> Vec<Q> { v.iter().map(|a| a + qi(1)).collect() };
    weyl::dominant_conjugate(rs, &s(lambda)).0 == weyl::dominant_conjugate(rs, &s(mu)).0
}

/// Labels of the `A_n` weight written `(c | d_1, …, d_n)`: node 1 gets `d_1 − c`, node `i` gets `d_i − d_{i−1}`.
pub fn from_bar_notation(c: &Q, d: &[Q]) -> Vec<Q> {
    let mut out = vec![&d[0] - c];
    for w in d.windows(2) {
        out.push(&w[1] - &w[0]);
    }
    out
}

/// Inverse of [`from_bar_notation`] with the given leading entry.
pub fn to_bar_notation(labels: &[Q], c: &Q) -> (Q, Vec<Q>) {
    let mut d = Vec::with_capacity(labels.len());
    let mut acc = c.clone();
    for x in labels {
        acc += x;
        d.push(acc.clone());
    }
    (c.clone(), d)
}

fn require_a2(rs: &RootSystem) -> Result<()> {
    if rs.lie_type != LieType::a(2) {
        return Err(Error::WrongFamily(format!("A2, got {}", rs.lie_type)));
    }
    Ok(())
}

/// Symmetric cubic in `H_1, H_2, H_3` representing `18 φ(π(K³))` for `sl_3`.
pub fn sl3_k3_polynomial(h: [&Q; 3]) -> Q {
    let [a, b, c] = h;
    let p3 = a * a * a + b * b * b + c * c * c;
    let mixed = a * a * b + a * a * c + b * b * a + b * b * c + c * c * a + c * c * b;
    let p2 = a * a + b * b + c * c;
    let e2 = a * b + a * c + b * c;
    qi(6) * p3 - qi(9) * mixed + qi(36) * a * b * c - qi(27) * p2 + qi(27) * e2 + qi(81)
}

/// Value of the cubic invariant at `λ + ρ`, with `H` chosen so that `H_1 − H_2`, `H_2 − H_3` are its labels.
pub fn sl3_k3_eval(rs: &RootSystem, lambda: &[Q]) -> Result<Q> {
    require_a2(rs)?;
    let h1 = &lambda[0] + qi(1);
    let h2 = &lambda[1] + qi(1);
    let big = [&h1 + &h2, h2.clone(), Q::zero()];
    Ok(sl3_k3_polynomial([&big[0], &big[1], &big[2]]))
}

/// The same invariant in the Cartan coordinates `h_1, h_2`, evaluated at the labels of `λ + ρ`.
pub fn sl3_k3_eval_cartan(rs: &RootSystem, lambda: &[Q]) -> Result<Q> {
    require_a2(rs)?;
    let a = &lambda[0] + qi(1);
    let b = &lambda[1] + qi(1);
    Ok(qi(6) * &a * &a * &a - qi(6) * &b * &b * &b - qi(27) * &a * &a - qi(27) * &b * &b + qi(9) * &a * &a * &b
        - qi(9) * &a * &b * &b
        - qi(27) * &a * &b
        + qi(81))
}

/// `9 φ(π(K²))` at `λ + ρ`; equals a fixed multiple of the Casimir eigenvalue.
pub fn sl3_k2_eval(rs: &RootSystem, lambda: &[Q]) -> Result<Q> {
    require_a2(rs)?;
    let h1 = &lambda[0] + qi(1);
    let h2 = &lambda[1] + qi(1);
    let (a, b, c) = (&h1 + &h2, h2, Q::zero());
    Ok(&a * &a + &b * &b + &c * &c - &a * &b - &a * &c - &b * &c - qi(3))
}
