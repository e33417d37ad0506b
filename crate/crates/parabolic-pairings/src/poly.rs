//! Multivariate polynomials over the rationals with named indeterminates.
//!
//! Rendering comes in an expanded and a factored flavour; the factored form pulls out
//! the rational content, the monomial content and integer-root linear factors.

use crate::rational::{fmt_q, latex_q, qi, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exponent map of a monomial; absent variables have exponent zero.
pub type Mono = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(qi(n))
    }

    pub fn var(name: &str) -> Self {
        let mut m = Mono::new();
        m.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, Q::one());
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    /// Constant value when the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.terms.get(&Mono::new()).cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.get(v).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.values().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace indeterminate `v` by the polynomial `p`.
    pub fn substitute(&self, v: &str, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * p;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.remove(v);
            let mono = Poly { terms: std::iter::once((rest, c.clone())).collect() };
            out += &mono * &powers[e];
        }
        out
    }

    pub fn substitute_q(&self, v: &str, x: &Q) -> Poly {
        self.substitute(v, &Poly::constant(x.clone()))
    }

    /// Evaluate at a full assignment; missing variables are an error.
    pub fn eval(&self, at: &HashMap<String, Q>) -> Result<Q, String> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m {
                let x = at.get(v).ok_or_else(|| format!("no value for indeterminate {v}"))?;
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient by `(v - c)` if it divides.
    pub fn div_linear(&self, v: &str, c: &Q) -> Option<Poly> {
        if !self.substitute_q(v, c).is_zero() {
            return None;
        }
        // synthetic division in `v` with polynomial coefficients
        let deg = self.degree_in(v);
        let mut coeffs: Vec<Poly> = vec![Poly::zero(); deg as usize + 1];
        for (m, x) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0) as usize;
            let mut rest = m.clone();
            rest.remove(v);
            coeffs[e].add_term(rest, x.clone());
        }
        let mut quot: Vec<Poly> = vec![Poly::zero(); deg as usize];
        let mut carry = Poly::zero();
        for e in (1..=deg as usize).rev() {
            carry = &coeffs[e] + &carry.scale(c);
            quot[e - 1] = carry.clone();
        }
        let vp = Poly::var(v);
        let mut out = Poly::zero();
        for (e, p) in quot.iter().enumerate() {
            out += p * &vp.pow(e as u32);
        }
        Some(out)
    }

    /// Positive rational content so that `self / content` has coprime integer coefficients.
    pub fn content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = crate::rational::gcd_int(&num, c.numer());
            den = crate::rational::lcm_int(&den, c.denom());
        }
        if num.is_zero() {
            Q::one()
        } else {
            Q::new(num, den)
        }
    }

    fn mono_key(m: &Mono, order: &[String]) -> (u32, Vec<u32>) {
        let total: u32 = m.values().sum();
        let exps = order.iter().map(|v| m.get(v).copied().unwrap_or(0)).collect();
        (total, exps)
    }

    /// Variable order for rendering: the given order first, then remaining names sorted.
    fn full_order(&self, order: &[&str]) -> Vec<String> {
        let mut out: Vec<String> = order.iter().map(|s| s.to_string()).collect();
        for v in self.vars() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Terms sorted for display: total degree descending, then lexicographic in `order`.
    fn sorted_terms(&self, order: &[String]) -> Vec<(Mono, Q)> {
        let mut ts: Vec<(Mono, Q)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        ts.sort_by(|a, b| Poly::mono_key(&b.0, order).cmp(&Poly::mono_key(&a.0, order)));
        ts
    }

    fn mono_text(m: &Mono, order: &[String], latex: bool) -> String {
        let mut s = String::new();
        for v in order {
            if let Some(&e) = m.get(v) {
                s.push_str(v);
                if e > 1 {
                    if latex {
                        s.push_str(&format!("^{{{e}}}"));
                    } else {
                        s.push_str(&format!("^{e}"));
                    }
                }
            }
        }
        s
    }

    fn coeff_prefix(c: &Q, latex: bool) -> String {
        if c.is_one() {
            String::new()
        } else if (-c).is_one() {
            "-".to_string()
        } else if c.is_integer() {
            fmt_q(c)
        } else if latex {
            latex_q(c)
        } else {
            format!("({})", fmt_q(c))
        }
    }

    fn expanded(&self, order: &[String], latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms(order).iter().enumerate() {
            let body = if m.is_empty() {
                if latex {
                    latex_q(&c.abs())
                } else {
                    fmt_q(&c.abs())
                }
            } else {
                format!("{}{}", Poly::coeff_prefix(&c.abs(), latex), Poly::mono_text(m, order, latex))
            };
            if c.is_negative() {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            s.push_str(&body);
        }
        s
    }

    /// Expanded rendering with the given variable priority.
    pub fn render_expanded(&self, order: &[&str]) -> String {
        self.expanded(&self.full_order(order), false)
    }

    pub fn latex_expanded(&self, order: &[&str]) -> String {
        self.expanded(&self.full_order(order), true)
    }

    /// Factored rendering such as `qq'(q+q'-2)` or `-2(w-1)(v-1)`.
    pub fn render(&self, order: &[&str]) -> String {
        self.factored(&self.full_order(order), false)
    }

    pub fn latex(&self, order: &[&str]) -> String {
        self.factored(&self.full_order(order), true)
    }

    fn factored(&self, order: &[String], latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if let Some(c) = self.as_constant() {
            return if latex { latex_q(&c) } else { fmt_q(&c) };
        }
        let mut content = self.content();
        let lead = self.sorted_terms(order)[0].1.clone();
        if lead.is_negative() {
            content = -content;
        }
        let mut rest = self.scale(&(Q::one() / &content));
        // monomial content
        let mut mono = Mono::new();
        for v in order {
            let e = rest.terms.keys().map(|m| m.get(v).copied().unwrap_or(0)).min().unwrap_or(0);
            if e > 0 {
                mono.insert(v.clone(), e);
            }
        }
        if !mono.is_empty() {
            rest = Poly {
                terms: rest
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut m2 = m.clone();
                        for (v, e) in &mono {
                            let x = m2.get_mut(v).unwrap();
                            *x -= e;
                            if *x == 0 {
                                m2.remove(v);
                            }
                        }
                        (m2, c.clone())
                    })
                    .collect(),
            };
        }
        // integer-root linear factors per variable
        let mut factors: Vec<String> = Vec::new();
        for v in order {
            let mut found: Vec<i64> = Vec::new();
            while rest.degree_in(v) > 0 {
                let hit = (0..=64i64)
                    .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
                    .find_map(|c| rest.div_linear(v, &qi(c)).map(|qt| (c, qt)));
                match hit {
                    Some((c, qt)) => {
                        found.push(c);
                        rest = qt;
                    }
                    None => break,
                }
            }
            found.sort();
            for c in found {
                let shifted = &Poly::var(v) - &Poly::int(c);
                factors.push(format!("({})", shifted.expanded(order, latex)));
            }
        }
        let mut s = Poly::coeff_prefix(&content, latex);
        let mono_s = Poly::mono_text(&mono, order, latex);
        s.push_str(&mono_s);
        let mut body = factors.concat();
        let rest_const = rest.as_constant();
        match &rest_const {
            Some(c) if c.is_one() => {}
            Some(c) => {
                // cannot happen for primitive input, but keep the output faithful
                body.push_str(&format!("({})", if latex { latex_q(c) } else { fmt_q(c) }));
            }
            None => {
                let r = rest.expanded(order, latex);
                if mono_s.is_empty() && factors.is_empty() && content.is_one() {
                    body.push_str(&r);
                } else {
                    body.push_str(&format!("({r})"));
                }
            }
        }
        if s.is_empty() && mono_s.is_empty() && factors.len() == 1 && rest_const.as_ref().is_some_and(|c| c.is_one()) {
            return factors[0][1..factors[0].len() - 1].to_string();
        }
        if body.is_empty() && mono_s.is_empty() {
            // pure constant after all; already handled above
            return if latex { latex_q(&content) } else { fmt_q(&content) };
        }
        s.push_str(&body);
        s
    }

    /// Parse expressions such as `3(q-2)q`, `qq'(q+q'-2)`, `1+v`, `-n/(n+1)`.
    pub fn parse(s: &str) -> Result<Poly, String> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(format!("unexpected token at position {}", p.pos));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{00b7}' | '\u{00d7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let n: String = chars[st..i].iter().collect();
                out.push(Tok::Num(n.parse().map_err(|_| "bad number".to_string())?));
            }
            a if a.is_alphabetic() => {
                let mut name = a.to_string();
                i += 1;
                while i < chars.len() && (chars[i] == '\'' || chars[i] == '\u{2032}') {
                    name.push('\'');
                    i += 1;
                }
                out.push(Tok::Ident(name));
            }
            other => return Err(format!("unexpected character '{other}' at {i}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = Poly::zero();
        let mut sign = Q::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -Q::one();
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        acc += self.term()?.scale(&sign);
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let c = d.as_constant().ok_or("division by a non-constant")?;
                    if c.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = acc.scale(&(Q::one() / c));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, String> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.to_string().parse().map_err(|_| "exponent too large")?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err("expected integer exponent".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Q::from_integer(n)))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Poly::var(&v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl From<Q> for Poly {
    fn from(c: Q) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r += o.clone();
        r
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, o: Poly) -> Poly {
        self += o;
        self
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, o: Poly) {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, o: Poly) {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r -= o.clone();
        r
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, o: Poly) -> Poly {
        self -= o;
        self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                r.add_term(m, c1 * c2);
            }
        }
        r
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
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
    fn factored_rendering() {
        assert_eq!(p("q q'(q+q'-2)").render(&["q", "q'"]), "qq'(q+q'-2)");
        assert_eq!(p("-2(w-1)(v-1)").render(&["w", "v"]), "-2(w-1)(v-1)");
        assert_eq!(p("(w-1)w").render(&["w", "v"]), "w(w-1)");
        assert_eq!(p("56(q-1)(q-3)(q-6)").render(&["q"]), "56(q-1)(q-3)(q-6)");
        assert_eq!(p("q(q-2)(q'-1)(2q+3q'-8)").render(&["q", "q'"]), "q(q-2)(q'-1)(2q+3q'-8)");
        assert_eq!(p("v+4").render(&["v"]), "v+4");
        assert_eq!(p("-w").render(&["v", "w"]), "-w");
        assert_eq!(p("3").render(&[]), "3");
        assert_eq!(p("n/2").render(&["n"]), "(1/2)n");
    }

    #[test]
    fn parse_primes_and_unicode() {
        assert_eq!(p("q\u{2032}"), Poly::var("q'"));
        assert_eq!(p("3(q\u{2212}2)q"), p("3q^2-6q"));
        assert!(Poly::parse("q/(q+1)").is_err());
    }

    #[test]
    fn latex_form() {
        assert_eq!(p("qq'(q+q'-2)").latex(&["q", "q'"]), "qq'(q+q'-2)");
        assert_eq!(p("q^2/2").latex_expanded(&["q"]), "\\frac{1}{2}q^{2}");
    }

    #[test]
    fn division_by_linear_factor() {
        let f = p("(q-3)(q+q'-1)");
        assert_eq!(f.div_linear("q", &qi(3)).unwrap(), p("q+q'-1"));
        assert!(f.div_linear("q", &qi(2)).is_none());
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(a in -5i64..5, b in -5i64..5, c in -5i64..5, d in 0i64..4) {
            let f = &(&p("q").pow(d as u32) * &Poly::int(a)) + &(&(&p("q'") * &Poly::int(b)) + &Poly::int(c));
            let g = &f * &(&p("q") - &Poly::int(b));
            prop_assert_eq!(Poly::parse(&g.render(&["q", "q'"])).unwrap(), g.clone());
            prop_assert_eq!(Poly::parse(&g.render_expanded(&["q", "q'"])).unwrap(), g);
        }

        #[test]
        fn ring_laws(a in -9i64..9, b in -9i64..9) {
            let x = &p("q") + &Poly::int(a);
            let y = &p("q'") - &Poly::int(b);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
            let mut at = HashMap::new();
            at.insert("q".to_string(), qi(2));
            at.insert("q'".to_string(), qi(-1));
            prop_assert_eq!((&x * &y).eval(&at).unwrap(), qi(2 + a) * qi(-1 - b));
        }
    }
}
