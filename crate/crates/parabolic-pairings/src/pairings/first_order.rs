//! First-order pairings `V × W → E_μ` through the constants `c_{λτ}` and `c_{νσ}`.

use crate::central::pairing_constant_c;
use crate::error::{Error, Result};
use crate::parabolic::{self, ParabolicStructure};
use crate::poly::Poly;
use crate::rational::{gcd_int, lcm_int, Q};
use crate::repthy::{levi_tensor, DIM_CAP};
use crate::rootsys::RootSystem;
use num_traits::Zero;
use serde::Serialize;

/// The target bundle: either uncrossed labels only (the crossed ones follow from the grading) or
/// full labels.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Levi(Vec<i64>),
    Full(Vec<Poly>),
}

impl Target {
    fn matches(&self, p: &ParabolicStructure, labels: &[Poly]) -> bool {
        match self {
            Target::Full(t) => t.as_slice() == labels,
            Target::Levi(j) => {
                let un = p.uncrossed();
                j.len() == un.len() && un.iter().zip(j).all(|(&i, &x)| labels[i] == Poly::int(x))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    XParameterFamily,
    Degenerate,
}

/// One intermediate bundle `V_τ ⊂ g_1 ⊗ V` (or `W_σ ⊂ g_1 ⊗ W`) that reaches the target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Channel {
    pub node: usize,
    #[serde(serialize_with = "super::gamma::ser_polys")]
    pub labels: Vec<Poly>,
    /// Multiplicity in `g_1^i ⊗ V` times the multiplicity of the target in the product with the other factor.
    pub weight: u64,
    #[serde(serialize_with = "super::gamma::ser_poly")]
    pub c: Poly,
    #[serde(serialize_with = "ser_opt")]
    pub c_normalized: Option<Poly>,
}

fn ser_opt<S: serde::Serializer>(p: &Option<Poly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.render(&[])),
        None => s.serialize_none(),
    }
}

/// A weight at which some `c` vanishes, naming the first-order operator that then exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub variable: Option<String>,
    pub value: Option<String>,
    pub operator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FirstOrderReport {
    pub source_v: String,
    pub source_w: String,
    pub target: String,
    pub multiplicity: u64,
    pub tau: Vec<Channel>,
    pub sigma: Vec<Channel>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// `(a, b)` with `a·X∇f + b·(∇X)f`-type coefficients, multiplicity one only.
    pub coefficients: Option<(String, String)>,
    #[serde(skip)]
    pub coefficient_polys: Option<(Poly, Poly)>,
}

fn channels(rs: &RootSystem, p: &ParabolicStructure, src: &[Poly], other: &[Poly], target: &Target) -> Result<(Vec<Channel>, Vec<Poly>)> {
    let mut out = Vec::new();
    let mut target_labels = Vec::new();
    for &i in &p.crossed {
        let g1: Vec<Poly> = rs.simple_labels(i).iter().map(|&x| Poly::int(-x)).collect();
        for (tau, m) in levi_tensor(rs, p, &g1, src, DIM_CAP)?.summands {
            let mut reach = 0u64;
            for (mu, c) in levi_tensor(rs, p, &tau, other, DIM_CAP)?.summands {
                if target.matches(p, &mu) {
                    reach += c;
                    target_labels = mu;
                }
            }
            if reach > 0 {
                let pc = pairing_constant_c(rs, p, src, &tau)?;
                out.push(Channel { node: i, labels: tau, weight: m * reach, c: pc.value, c_normalized: pc.normalized });
            }
        }
    }
    Ok((out, target_labels))
}

fn all_nonzero(cs: &[Channel]) -> bool {
    cs.iter().all(|c| !c.c.is_zero())
}

fn witnesses(p: &ParabolicStructure, src: &[Poly], cs: &[Channel]) -> Vec<Witness> {
    let mut out = Vec::new();
    for ch in cs {
        let op = format!("{} -> {}", parabolic::format_dynkin_poly(p, src), parabolic::format_dynkin_poly(p, &ch.labels));
        if ch.c.is_zero() {
            out.push(Witness { variable: None, value: None, operator: op });
            continue;
        }
        let vars = ch.c.vars();
        if vars.len() == 1 && ch.c.total_degree() == 1 {
            let v = vars.into_iter().next().unwrap_or_default();
            let lin = ch.c.substitute_q(&v, &Q::from_integer(1.into())) - ch.c.substitute_q(&v, &Q::zero());
            let (Some(slope), Some(c0)) = (lin.as_constant(), ch.c.substitute_q(&v, &Q::zero()).as_constant()) else { continue };
            let root = -c0 / slope;
            let at: Vec<Poly> = src.iter().map(|x| x.substitute_q(&v, &root)).collect();
            let op = format!("{} -> {}", parabolic::format_dynkin_poly(p, &at), parabolic::format_dynkin_poly(p, &ch.labels.iter().map(|x| x.substitute_q(&v, &root)).collect::<Vec<_>>()));
            out.push(Witness { variable: Some(v), value: Some(crate::rational::fmt_q(&root)), operator: op });
        }
    }
    out
}

fn rational_gcd(a: &Q, b: &Q) -> Q {
    Q::new(gcd_int(a.numer(), b.numer()), lcm_int(a.denom(), b.denom()))
}

fn leading_sign(p: &Poly) -> bool {
    let order = ["v", "w", "q", "q'"];
    let r = p.render_expanded(&order);
    r.starts_with('-')
}

/// Normalize `(a, b)` to coprime integer content with `a` leading positive.
pub fn normalize_pair(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let g = if a.is_zero() {
        b.content()
    } else if b.is_zero() {
        a.content()
    } else {
        rational_gcd(&a.content(), &b.content())
    };
    let mut s = Q::from_integer(1.into()) / g;
    if leading_sign(if a.is_zero() { b } else { a }) {
        s = -s;
    }
    (a.scale(&s), b.scale(&s))
}

pub fn first_order_classify(rs: &RootSystem, p: &ParabolicStructure, lambda: &[Poly], nu: &[Poly], target: &Target) -> Result<FirstOrderReport> {
    let (tau, mu_a) = channels(rs, p, lambda, nu, target)?;
    let (sigma, mu_b) = channels(rs, p, nu, lambda, target)?;
    let x: u64 = tau.iter().map(|c| c.weight).sum();
    let target_name = match target {
        Target::Full(t) => parabolic::format_dynkin_poly(p, t),
        Target::Levi(j) => format!("levi labels {j:?}"),
    };
    if x == 0 {
        return Err(Error::TargetAbsent(target_name));
    }
    let mu = if mu_a.is_empty() { mu_b } else { mu_a };
    let verdict = if all_nonzero(&tau) || all_nonzero(&sigma) { Verdict::XParameterFamily } else { Verdict::Degenerate };
    let mut wit = witnesses(p, lambda, &tau);
    wit.extend(witnesses(p, nu, &sigma));
    let coefficient_polys = if x == 1 && tau.len() == 1 && sigma.len() == 1 {
        let pick = |c: &Channel| c.c_normalized.clone().unwrap_or_else(|| c.c.clone());
        Some(normalize_pair(&pick(&sigma[0]), &-&pick(&tau[0])))
    } else {
        None
    };
    let order = ["v", "w", "q", "q'"];
    Ok(FirstOrderReport {
        source_v: parabolic::format_dynkin_poly(p, lambda),
        source_w: parabolic::format_dynkin_poly(p, nu),
        target: parabolic::format_dynkin_poly(p, &mu),
        multiplicity: x,
        tau,
        sigma,
        verdict,
        witnesses: wit,
        coefficients: coefficient_polys.as_ref().map(|(a, b)| (a.render(&order), b.render(&order))),
        coefficient_polys,
    })
}

impl FirstOrderReport {
    pub fn c_tau(&self) -> Vec<Poly> {
        self.tau.iter().map(|c| c.c.clone()).collect()
    }

    pub fn c_sigma(&self) -> Vec<Poly> {
        self.sigma.iter().map(|c| c.c.clone()).collect()
    }
}
