//! Ricci-corrected operators `𝒟_k` as sums of words in `∇` and `Γ`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binomial, qi, Q};
use std::collections::BTreeMap;
use std::fmt;

/// Ordering puts `Nabla` before `Gamma`, which is the display order of expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Nabla,
    Gamma,
}

impl Letter {
    pub fn grade(self) -> usize {
        match self {
            Letter::Nabla => 1,
            Letter::Gamma => 2,
        }
    }
}

/// A word; the leftmost letter is the outermost operator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DWord(pub Vec<Letter>);

impl DWord {
    pub fn grade(&self) -> usize {
        self.0.iter().map(|l| l.grade()).sum()
    }

    pub fn gamma_count(&self) -> usize {
        self.0.iter().filter(|l| **l == Letter::Gamma).count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse a compact word such as `"NGGN"` or `"∇Γ∇"`.
    pub fn parse(s: &str) -> Result<DWord> {
        let mut out = Vec::new();
        for ch in s.chars() {
            match ch {
                'N' | 'n' | '∇' => out.push(Letter::Nabla),
                'G' | 'g' | 'Γ' => out.push(Letter::Gamma),
                c if c.is_whitespace() => {}
                c => return Err(Error::Invalid(format!("unexpected letter {c:?} in word"))),
            }
        }
        Ok(DWord(out))
    }

    fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    /// LaTeX for the word applied to `var`; with `nest`, each `∇`-run followed somewhere by a
    /// `Γ` opens a parenthesis.
    pub fn latex_applied(&self, var: &str, nest: bool) -> String {
        let runs = self.runs();
        let mut out = String::new();
        let mut open = 0;
        for (idx, &(l, n)) in runs.iter().enumerate() {
            let name = match l {
                Letter::Nabla => "\\nabla",
                Letter::Gamma => "\\Gamma",
            };
            out.push_str(name);
            if n > 1 {
                out.push_str(&format!("^{{{n}}}"));
            }
            if nest && l == Letter::Nabla && runs[idx + 1..].iter().any(|r| r.0 == Letter::Gamma) {
                out.push('(');
                open += 1;
            }
        }
        if !out.is_empty() && !out.ends_with('}') && !out.ends_with('(') {
            out.push(' ');
        }
        out.push_str(var);
        out.push_str(&")".repeat(open));
        out
    }

    pub fn text_applied(&self, var: &str) -> String {
        let mut out = String::new();
        for (l, n) in self.runs() {
            out.push(match l {
                Letter::Nabla => '∇',
                Letter::Gamma => 'Γ',
            });
            if n > 1 {
                out.push_str(&superscript(n));
            }
        }
        out.push_str(var);
        out
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for DWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.text_applied(""))
    }
}

/// One term of an expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub word: DWord,
    pub constant: Poly,
}

/// Expansion of `𝒟_k` in the indeterminate `var`, terms in word order.
pub fn ricci_expand(k: usize, var: &str) -> Vec<Term> {
    let q = Poly::var(var);
    let mut levels: Vec<BTreeMap<DWord, Poly>> = Vec::with_capacity(k + 1);
    for level in 0..=k {
        let mut map = BTreeMap::new();
        if level == 0 {
            map.insert(DWord::default(), Poly::one());
        } else {
            for (w, c) in &levels[level - 1] {
                let mut nw = vec![Letter::Nabla];
                nw.extend_from_slice(&w.0);
                map.insert(DWord(nw), c.clone());
            }
            if level >= 2 {
                let factor = (&q - &Poly::int(level as i64 - 2)).scale(&qi(level as i64 - 1));
                for (w, c) in &levels[level - 2] {
                    let mut nw = vec![Letter::Gamma];
                    nw.extend_from_slice(&w.0);
                    map.insert(DWord(nw), &factor * c);
                }
            }
        }
        levels.push(map);
    }
    levels.pop().unwrap_or_default().into_iter().map(|(word, constant)| Term { word, constant }).collect()
}

/// `∏ (i_m − 1)(q − i_m + 2)` over the `Γ` letters, `i_m` the leftmost of the two positions a
/// `Γ` occupies, counted from the right.
pub fn cct_constant(word: &DWord, var: &str) -> Poly {
    let q = Poly::var(var);
    let mut pos = 0usize;
    let mut out = Poly::one();
    for &l in word.0.iter().rev() {
        pos += l.grade();
        if l == Letter::Gamma {
            let i = pos as i64;
            out = &out * &(&q - &Poly::int(i - 2)).scale(&qi(i - 1));
        }
    }
    out
}

/// `Σ_j C(k−j, j)`, the number of words of grade `k`.
pub fn term_count(k: usize) -> u64 {
    let total: Q = (0..=k / 2).map(|j| binomial((k - j) as u64, j as u64)).sum();
    crate::rational::to_i64(&total).unwrap_or(0) as u64
}

fn coeff_prefix(c: &Poly, order: &[&str]) -> String {
    if *c == Poly::one() {
        String::new()
    } else if *c == Poly::int(-1) {
        "-".to_string()
    } else {
        c.latex(order)
    }
}

/// LaTeX for `𝒟_k s`.
pub fn expansion_latex(terms: &[Term], var: &str, arg: &str) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let c = coeff_prefix(&t.constant, &[var]);
        if i > 0 && !c.starts_with('-') {
            out.push('+');
        }
        out.push_str(&c);
        out.push_str(&t.word.latex_applied(arg, true));
    }
    out
}

pub fn expansion_text(terms: &[Term], var: &str, arg: &str) -> String {
    let parts: Vec<String> = terms
        .iter()
        .map(|t| {
            let c = if t.constant == Poly::one() { String::new() } else { t.constant.render(&[var]) };
            format!("{c}{}", t.word.text_applied(arg))
        })
        .collect();
    parts.join(" + ")
}

/// Parse a printed LaTeX expansion such as `\nabla^{2}s+q\Gamma s` into words and constants.
pub fn parse_expansion_latex(s: &str, arg: char) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push(parse_term(&cur, arg)?);
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        terms.push(parse_term(&cur, arg)?);
    }
    Ok(terms)
}

fn parse_term(s: &str, arg: char) -> Result<Term> {
    let s = s.trim();
    let split = s.find('\\').or_else(|| s.rfind(arg)).ok_or_else(|| Error::Invalid(format!("no operator in {s:?}")))?;
    let (coef, rest) = s.split_at(split);
    let constant = if coef.trim().is_empty() { Poly::one() } else { parse_factored(coef)? };
    let mut letters = Vec::new();
    let chars: Vec<char> = rest.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\\' {
            let name: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_alphabetic()).collect();
            i += 1 + name.len();
            let letter = match name.as_str() {
                "nabla" => Letter::Nabla,
                "Gamma" => Letter::Gamma,
                other => return Err(Error::Invalid(format!("unknown command \\{other}"))),
            };
            let mut count = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let digits: String = if chars.get(i) == Some(&'{') {
                    let d: String = chars[i + 1..].iter().take_while(|c| **c != '}').collect();
                    i += d.len() + 2;
                    d
                } else {
                    i += 1;
                    chars[i - 1].to_string()
                };
                count = digits.trim().parse().map_err(|_| Error::Invalid(format!("bad exponent {digits:?}")))?;
            }
            letters.extend(std::iter::repeat_n(letter, count));
        } else if c == arg || c == '(' || c == ')' || c.is_whitespace() {
            i += 1;
        } else {
            return Err(Error::Invalid(format!("unexpected {c:?} in term {s:?}")));
        }
    }
    Ok(Term { word: DWord(letters), constant })
}

/// Parse a product such as `3(q-2)q` or `4q(q-3)`.
fn parse_factored(s: &str) -> Result<Poly> {
    Poly::parse(s).map_err(Error::Invalid)
}

/// Canonical form for comparing expansions regardless of printed term order or factor order.
pub fn canonical(terms: &[Term]) -> BTreeMap<DWord, Poly> {
    let mut map: BTreeMap<DWord, Poly> = BTreeMap::new();
    for t in terms {
        let e = map.entry(t.word.clone()).or_insert_with(Poly::zero);
        *e = &*e + &t.constant;
    }
    map.retain(|_, c| !c.is_zero());
    map
}
