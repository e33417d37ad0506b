//! The `M`-th order pairing `Σ_j γ_{M,j} 𝒟_j s ⊗ 𝒟_{M−j} t`, expanded and collected.

use super::gamma::{gamma_coefficients, GammaVector};
use super::ricci::{ricci_expand, DWord, Letter, Term};
use crate::poly::Poly;
use serde::Serialize;
use std::collections::BTreeMap;

pub const VARS: [&str; 2] = ["q", "q'"];

/// A collected monomial: `Γ^g` in front, then `s_rest s` times `t_rest t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollectedTerm {
    pub leading_gammas: usize,
    pub s_word: String,
    pub t_word: String,
    pub coefficient: String,
    pub latex: String,
    #[serde(skip)]
    pub s_rest: DWord,
    #[serde(skip)]
    pub t_rest: DWord,
    #[serde(skip)]
    pub coeff: Poly,
}

/// `(j, γ_{M,j}, 𝒟_j in q, 𝒟_{M−j} in q')`.
#[derive(Clone, Debug)]
pub struct FormulaPiece {
    pub j: usize,
    pub gamma: Poly,
    pub s_terms: Vec<Term>,
    pub t_terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct PairingFormula {
    pub order: usize,
    pub gamma: GammaVector,
    pub pieces: Vec<FormulaPiece>,
    pub collected: Vec<CollectedTerm>,
}

type Key = (usize, DWord, DWord);

fn strip_leading_gammas(w: &DWord) -> (usize, DWord) {
    let g = w.0.iter().take_while(|l| **l == Letter::Gamma).count();
    (g, DWord(w.0[g..].to_vec()))
}

/// Collect `Σ γ_j 𝒟_j s 𝒟_{M−j} t`, treating leading `Γ`s of either factor as scalars.
pub fn collect(gammas: &[Poly], m: usize) -> BTreeMap<Key, Poly> {
    let mut out: BTreeMap<Key, Poly> = BTreeMap::new();
    for (j, g) in gammas.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let ds = ricci_expand(j, VARS[0]);
        let dt = ricci_expand(m - j, VARS[1]);
        for a in &ds {
            let (ga, ra) = strip_leading_gammas(&a.word);
            for b in &dt {
                let (gb, rb) = strip_leading_gammas(&b.word);
                let c = &(g * &a.constant) * &b.constant;
                let e = out.entry((ga + gb, ra.clone(), rb)).or_insert_with(Poly::zero);
                *e = &*e + &c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sort_key(k: &Key) -> (usize, usize, usize, DWord, DWord) {
    let (g, s, t) = k;
    let inner = s.gamma_count() + t.gamma_count();
    (g + inner, inner, s.0.len(), s.clone(), t.clone())
}

fn gamma_power_latex(g: usize) -> String {
    match g {
        0 => String::new(),
        1 => "\\Gamma".to_string(),
        g => format!("\\Gamma^{{{g}}}"),
    }
}

fn plain_word(w: &DWord, var: &str) -> String {
    w.latex_applied(var, false)
}

/// LaTeX for the monomial part of a collected term.
pub fn monomial_latex(g: usize, s: &DWord, t: &DWord) -> String {
    let gp = gamma_power_latex(g);
    let has_gamma = g > 0 || s.gamma_count() + t.gamma_count() > 0;
    let factor = |w: &DWord, var: &str| if w.is_empty() { var.to_string() } else { format!("({})", plain_word(w, var)) };
    if !has_gamma {
        return format!("{}{}", factor(s, "s"), factor(t, "t"));
    }
    match (s.is_empty(), t.is_empty()) {
        (true, true) => format!("st{gp}"),
        (true, false) => format!("s{gp}{}", glue(&gp, &plain_word(t, "t"))),
        (false, true) => format!("t{gp}{}", glue(&gp, &plain_word(s, "s"))),
        (false, false) => format!("{gp}{}{}", factor(s, "s"), factor(t, "t")),
    }
}

fn glue(prefix: &str, rest: &str) -> String {
    if prefix.is_empty() || rest.starts_with('\\') {
        rest.to_string()
    } else {
        format!(" {rest}")
    }
}

/// LaTeX of the collected formula.
pub fn collected_latex(terms: &[CollectedTerm]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let c = if t.coeff == Poly::one() {
            String::new()
        } else if t.coeff == Poly::int(-1) {
            "-".to_string()
        } else {
            t.coeff.latex(&VARS)
        };
        if i > 0 && !c.starts_with('-') {
            out.push('+');
        }
        out.push_str(&c);
        out.push_str(&t.latex);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn word_text(w: &DWord) -> String {
    if w.is_empty() {
        String::new()
    } else {
        w.text_applied("")
    }
}

fn build(gamma: GammaVector, coeffs: &[Poly]) -> PairingFormula {
    let m = gamma.order;
    let pieces = coeffs
        .iter()
        .enumerate()
        .map(|(j, g)| FormulaPiece { j, gamma: g.clone(), s_terms: ricci_expand(j, VARS[0]), t_terms: ricci_expand(m - j, VARS[1]) })
        .collect();
    let mut keyed: Vec<(Key, Poly)> = collect(coeffs, m).into_iter().collect();
    keyed.sort_by_key(|(k, _)| sort_key(k));
    let collected = keyed
        .into_iter()
        .map(|((g, s, t), c)| CollectedTerm {
            leading_gammas: g,
            s_word: word_text(&s),
            t_word: word_text(&t),
            coefficient: c.render(&VARS),
            latex: monomial_latex(g, &s, &t),
            s_rest: s,
            t_rest: t,
            coeff: c,
        })
        .collect();
    PairingFormula { order: m, gamma, pieces, collected }
}

/// The pairing formula for symbols `q` (on `s`) and `q'` (on `t`); constants specialize the
/// indeterminates. Degenerate inputs yield one formula per basis vector.
pub fn pairing_formula(m: usize, q: &Poly, qp: &Poly) -> Vec<PairingFormula> {
    let gamma = gamma_coefficients(m, q, qp);
    let bases: Vec<Vec<Poly>> = if gamma.degenerate { gamma.basis.clone() } else { vec![gamma.coefficients.clone()] };
    bases
        .iter()
        .map(|b| {
            let mut f = build(gamma.clone(), b);
            for t in &mut f.collected {
                t.coeff = specialize(&t.coeff, q, qp);
                t.coefficient = t.coeff.render(&VARS);
            }
            f.collected.retain(|t| !t.coeff.is_zero());
            f
        })
        .collect()
}

/// The generic formula in the indeterminates `q`, `q'`.
pub fn pairing_formula_symbolic(m: usize) -> PairingFormula {
    let (q, qp) = (Poly::var(VARS[0]), Poly::var(VARS[1]));
    let gamma = gamma_coefficients(m, &q, &qp);
    let coeffs = gamma.coefficients.clone();
    build(gamma, &coeffs)
}

fn specialize(c: &Poly, q: &Poly, qp: &Poly) -> Poly {
    // Rename first so a substituted q' cannot be captured by the q substitution.
    let tmp = c.substitute(VARS[1], &Poly::var("__t")).substitute(VARS[0], q);
    tmp.substitute("__t", qp)
}

impl PairingFormula {
    pub fn latex(&self) -> String {
        collected_latex(&self.collected)
    }

    pub fn text(&self) -> String {
        let parts: Vec<String> = self
            .collected
            .iter()
            .map(|t| {
                let g = match t.leading_gammas {
                    0 => String::new(),
                    1 => "Γ".to_string(),
                    g => format!("Γ^{g}"),
                };
                format!("[{}] {g}({}s)({}t)", t.coefficient, t.s_word, t.t_word)
            })
            .collect();
        parts.join(" + ")
    }

    /// Coefficient of the monomial `Γ^g (s_rest s)(t_rest t)`.
    pub fn coefficient(&self, g: usize, s_rest: &str, t_rest: &str) -> Poly {
        let s = DWord::parse(s_rest).unwrap_or_default();
        let t = DWord::parse(t_rest).unwrap_or_default();
        self.collected
            .iter()
            .find(|c| c.leading_gammas == g && c.s_rest == s && c.t_rest == t)
            .map(|c| c.coeff.clone())
            .unwrap_or_else(Poly::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn second_order() {
        let f = pairing_formula_symbolic(2);
        assert_eq!(f.coefficient(1, "", ""), p("q q'(q+q'-2)"));
        assert_eq!(f.coefficient(0, "", "NN"), p("q(q-1)"));
        assert_eq!(f.coefficient(0, "N", "N"), p("-2(q-1)(q'-1)"));
        assert_eq!(f.coefficient(0, "NN", ""), p("q'(q'-1)"));
        assert_eq!(f.collected.len(), 4);
        assert_eq!(f.latex(), r"q(q-1)s(\nabla^{2}t)-2(q-1)(q'-1)(\nabla s)(\nabla t)+q'(q'-1)(\nabla^{2}s)t+qq'(q+q'-2)st\Gamma");
    }

    #[test]
    fn third_order() {
        let f = pairing_formula_symbolic(3);
        assert_eq!(f.coefficient(1, "", "N"), p("q(q-2)(q'-1)(2q+3q'-8)"));
        assert_eq!(f.coefficient(1, "N", ""), p("-q'(q'-2)(q-1)(3q+2q'-8)"));
        assert_eq!(f.coefficient(0, "", "NG"), p("q q'(q-1)(q-2)"));
        assert_eq!(f.coefficient(0, "NG", ""), p("-q q'(q'-1)(q'-2)"));
        assert_eq!(f.collected.len(), 8);
        let monos: Vec<&str> = f.collected.iter().map(|c| c.latex.as_str()).collect();
        assert_eq!(
            monos,
            vec![
                r"s(\nabla^{3}t)",
                r"(\nabla s)(\nabla^{2}t)",
                r"(\nabla^{2}s)(\nabla t)",
                r"(\nabla^{3}s)t",
                r"s\Gamma\nabla t",
                r"t\Gamma\nabla s",
                r"s\nabla\Gamma t",
                r"t\nabla\Gamma s",
            ]
        );
    }

    #[test]
    fn zeroth_order() {
        let f = pairing_formula_symbolic(0);
        assert_eq!(f.latex(), "st");
    }

    #[test]
    fn degenerate_inputs_give_a_basis() {
        let fs = pairing_formula(2, &Poly::int(1), &Poly::int(1));
        assert_eq!(fs.len(), 2);
        let latex: Vec<String> = fs.iter().map(|f| f.latex()).collect();
        assert!(latex.iter().any(|l| l.contains(r"s(\nabla^{2}t)")));
        assert!(latex.iter().any(|l| l.contains(r"(\nabla^{2}s)t")));
    }

    #[test]
    fn gamma_free_part_is_the_flat_formula() {
        for m in 0..=6 {
            let f = pairing_formula_symbolic(m);
            for j in 0..=m {
                let s = "N".repeat(j);
                let t = "N".repeat(m - j);
                assert_eq!(f.coefficient(0, &s, &t), f.gamma.coefficients[j]);
            }
        }
    }

    proptest! {
        #[test]
        fn vanishing_low_orders(m in 1usize..7, jj in 1usize..7) {
            let j = jj.min(m);
            let q = Poly::int(j as i64 - 1);
            let g = gamma_coefficients(m, &q, &Poly::var("q'"));
            for i in 0..j {
                prop_assert!(g.coefficients[i].is_zero());
            }
            let fs = pairing_formula(m, &q, &Poly::var("q'"));
            prop_assert_eq!(fs.len(), 1);
            for i in 0..j {
                let s = "N".repeat(i);
                let t = "N".repeat(m - i);
                prop_assert!(fs[0].coefficient(0, &s, &t).is_zero());
            }
        }
    }
}
