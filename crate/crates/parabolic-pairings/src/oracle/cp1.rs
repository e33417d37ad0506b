//! Numeric Möbius-invariance residuals of order-`M` pairings on the Riemann sphere.
//!
//! Sections of `O(q)` are functions `f(z)` with `(φf)(z) = (d−bz)^q f((az−c)/(d−bz))` for
//! `φ = [[a,b],[c,d]]`. Derivatives come from truncated Taylor jets in `f64`.

use crate::error::{Error, Result};
use crate::pairings::gamma::closed_form;
use crate::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Relative tolerance used by the checks.
pub const CP1_TOLERANCE: f64 = 1e-9;
const Z_RANGE: (f64, f64) = (0.1, 2.0);

/// Truncated Taylor series `Σ c_k h^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    fn constant(x: f64, n: usize) -> Jet {
        let mut c = vec![0.0; n + 1];
        c[0] = x;
        Jet(c)
    }

    fn linear(x: f64, slope: f64, n: usize) -> Jet {
        let mut j = Jet::constant(x, n);
        if n > 0 {
            j.0[1] = slope;
        }
        j
    }

    fn order(&self) -> usize {
        self.0.len() - 1
    }

    fn mul(&self, o: &Jet) -> Jet {
        let n = self.order();
        let mut c = vec![0.0; n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }

    fn div(&self, o: &Jet) -> Jet {
        let n = self.order();
        let mut c = vec![0.0; n + 1];
        for k in 0..=n {
            let mut s = self.0[k];
            for j in 1..=k {
                s -= o.0[j] * c[k - j];
            }
            c[k] = s / o.0[0];
        }
        Jet(c)
    }

    fn add_scalar(&self, x: f64) -> Jet {
        let mut c = self.0.clone();
        c[0] += x;
        Jet(c)
    }

    /// `(β + s h)^e` for a linear jet, by the binomial series.
    fn linear_power(beta: f64, slope: f64, e: f64, n: usize) -> Jet {
        let base = beta.powf(e);
        let r = slope / beta;
        let mut c = vec![0.0; n + 1];
        let mut binom = 1.0;
        let mut rk = 1.0;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = base * binom * rk;
            binom *= (e - k as f64) / (k as f64 + 1.0);
            rk *= r;
        }
        Jet(c)
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.0[k] * f
    }
}

/// Polynomial `Σ c_k z^k` composed with a jet.
fn compose(coeffs: &[f64], u: &Jet) -> Jet {
    let n = u.order();
    let mut acc = Jet::constant(0.0, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(u).add_scalar(*c);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// `(φf)(z) = f(z+μ)`.
    pub fn translation(mu: f64) -> Mobius {
        Mobius { a: 1.0, b: 0.0, c: -mu, d: 1.0 }
    }

    /// `(φf)(z) = λ^{−q} f(λ²z)`.
    pub fn dilation(lambda: f64) -> Mobius {
        Mobius { a: lambda, b: 0.0, c: 0.0, d: 1.0 / lambda }
    }

    /// `(φf₂)(ζ) = f₂(ζ+κ)` in the other chart.
    pub fn inversion_translation(kappa: f64) -> Mobius {
        Mobius { a: 1.0, b: kappa, c: 0.0, d: 1.0 }
    }

    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    fn denominator(&self, z: f64) -> f64 {
        self.d - self.b * z
    }

    fn image(&self, z: f64) -> f64 {
        (self.a * z - self.c) / self.denominator(z)
    }

    /// Jet of `φf` at `z` for a section of weight `q`.
    pub fn act_jet(&self, f: &[f64], q: f64, z: f64, n: usize) -> Jet {
        let num = Jet::linear(self.a * z - self.c, self.a, n);
        let den = Jet::linear(self.denominator(z), -self.b, n);
        let u = num.div(&den);
        let w = Jet::linear_power(self.denominator(z), -self.b, q, n);
        w.mul(&compose(f, &u))
    }
}

/// `Σ_j γ_j F^{(j)} G^{(M−j)}` with its absolute-value scale.
fn pair(gamma: &[f64], f: &Jet, g: &Jet) -> (f64, f64) {
    let m = gamma.len() - 1;
    let mut v = 0.0;
    let mut s = 0.0;
    for (j, c) in gamma.iter().enumerate() {
        let t = c * f.derivative(j) * g.derivative(m - j);
        v += t;
        s += t.abs();
    }
    (v, s)
}

/// Relative residual `|P(φf,φg) − φP(f,g)| / scale` at one point.
pub fn residual_at(gamma: &[f64], q: f64, qp: f64, f: &[f64], g: &[f64], phi: &Mobius, z: f64) -> f64 {
    let m = gamma.len() - 1;
    let (lhs, ls) = pair(gamma, &phi.act_jet(f, q, z, m), &phi.act_jet(g, qp, z, m));
    let u = phi.image(z);
    let (inner, is) = pair(gamma, &Mobius::IDENTITY.act_jet(f, q, u, m), &Mobius::IDENTITY.act_jet(g, qp, u, m));
    let w = Jet::linear_power(phi.denominator(z), -phi.b, q + qp - 2.0 * m as f64, 0).0[0];
    let rhs = w * inner;
    let scale = ls.max(w.abs() * is).max(f64::MIN_POSITIVE);
    (lhs - rhs).abs() / scale
}

/// Which transformations a trial draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    Identity,
    Translations,
    /// Random products of one to three generators from all three families.
    Generators,
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Vec<f64> {
    (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn random_generator(rng: &mut ChaCha8Rng) -> Mobius {
    match rng.gen_range(0..3) {
        0 => Mobius::translation(rng.gen_range(-0.5..0.5)),
        1 => Mobius::dilation(rng.gen_range(0.8..1.25)),
        _ => Mobius::inversion_translation(rng.gen_range(-0.5..0.5)),
    }
}

fn sample_phi(rng: &mut ChaCha8Rng, sampling: Sampling) -> Mobius {
    match sampling {
        Sampling::Identity => Mobius::IDENTITY,
        Sampling::Translations => Mobius::translation(rng.gen_range(-1.0..1.0)),
        Sampling::Generators => {
            let k = rng.gen_range(1..=3);
            (0..k).fold(Mobius::IDENTITY, |acc, _| acc.compose(&random_generator(rng)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cp1Report {
    pub order: usize,
    pub q: f64,
    pub q_prime: f64,
    pub coefficients: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub sampling: Sampling,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Max residual of the pairing with the given coefficients over random sections, points and transformations.
pub fn residual_with_coefficients(gamma: &[f64], q: f64, qp: f64, trials: usize, seed: u64, sampling: Sampling) -> Cp1Report {
    let m = gamma.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = random_poly(&mut rng, m + 3);
        let g = random_poly(&mut rng, m + 3);
        let (phi, z) = loop {
            let phi = sample_phi(&mut rng, sampling);
            let z = rng.gen_range(Z_RANGE.0..Z_RANGE.1);
            if phi.denominator(z) > 0.2 && phi.image(z).abs() < 5.0 {
                break (phi, z);
            }
        };
        worst = worst.max(residual_at(gamma, q, qp, &f, &g, &phi, z));
    }
    Cp1Report {
        order: m,
        q,
        q_prime: qp,
        coefficients: gamma.to_vec(),
        trials,
        seed,
        sampling,
        max_residual: worst,
        tolerance: CP1_TOLERANCE,
        passed: worst < CP1_TOLERANCE,
    }
}

fn in_critical_set(x: f64, m: usize) -> bool {
    x.fract() == 0.0 && x >= 0.0 && x < m as f64
}

/// Residual of the closed-form pairing; both weights in `{0,…,M−1}` is rejected.
pub fn cp1_invariance_residual(m: usize, q: f64, qp: f64, trials: usize, seed: u64, sampling: Sampling) -> Result<Cp1Report> {
    if in_critical_set(q, m) && in_critical_set(qp, m) {
        return Err(Error::DegenerateWeights(q.to_string(), qp.to_string(), m));
    }
    let gamma = closed_form(m, &Poly::var("q"), &Poly::var("p"));
    let mut at = std::collections::HashMap::new();
    at.insert("q".to_string(), q);
    at.insert("p".to_string(), qp);
    let coeffs: Vec<f64> = gamma.iter().map(|g| eval_f64(g, &at)).collect();
    Ok(residual_with_coefficients(&coeffs, q, qp, trials, seed, sampling))
}

fn eval_f64(p: &Poly, at: &std::collections::HashMap<String, f64>) -> f64 {
    use num_traits::ToPrimitive;
    p.terms()
        .map(|(mono, c)| {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, e) in mono.iter() {
                t *= at[v].powi(*e as i32);
            }
            t
        })
        .sum()
}
