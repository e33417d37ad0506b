//! BGG sequences: nodes `w.λ` for `w` in the Hasse diagram, arrows labeled by order and root.

use crate::error::{Error, Result};
use crate::parabolic::{self, ParabolicStructure};
use crate::poly::Poly;
use crate::rational::qi;
use crate::repthy::levi_dim;
use crate::rootsys::{Family, RootSystem};
use crate::weyl::{self, WeylElement};
use serde::{Serialize, Serializer};
use std::fmt::Write as _;

fn ser_labels<S: Serializer>(v: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.render_expanded(&[])))
}

fn ser_poly<S: Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render_expanded(&[]))
}

/// The printed families; anything else is generated by the same rule but flagged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BggFamily {
    /// `A_n`, first node crossed.
    Projective,
    /// `B_l`, first node crossed.
    ConformalOdd,
    /// `D_l`, first node crossed.
    ConformalEven,
    /// `A_{n+1}`, both end nodes crossed.
    Cr,
}

impl BggFamily {
    pub fn detect(p: &ParabolicStructure) -> Option<Self> {
        let t = p.lie_type;
        match (t.family, p.crossed.as_slice()) {
            (Family::A, [0]) => Some(BggFamily::Projective),
            (Family::B, [0]) => Some(BggFamily::ConformalOdd),
            (Family::D, [0]) => Some(BggFamily::ConformalEven),
            (Family::A, [0, last]) if *last == t.rank - 1 && t.rank >= 2 => Some(BggFamily::Cr),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BggNode {
    pub index: usize,
    /// Length of the Weyl element, i.e. the column of the diagram.
    pub length: usize,
    pub element: String,
    #[serde(serialize_with = "ser_labels")]
    pub labels: Vec<Poly>,
    pub dynkin: String,
    /// Dimension of the inducing `g_0`-module, when the labels are numeric.
    pub levi_dim: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BggArrow {
    pub from: usize,
    pub to: usize,
    /// `m` with `labels(to) = labels(from) + m·θ`.
    #[serde(serialize_with = "ser_poly")]
    pub order: Poly,
    /// `θ` as simple-root coefficients (all non-positive).
    pub root_coeffs: Vec<i64>,
    /// `θ` as Dynkin labels.
    pub root_labels: Vec<i64>,
    /// Grade of `θ` (1 for `g_-1`, 2 for `g_-2`, ...).
    pub grade: i64,
    pub extremal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerCheck {
    /// `(−1)^length · dim` per node.
    pub signed_dims: Vec<i128>,
    pub sum: i128,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BggDiagram {
    pub lie_type: String,
    /// 0-based crossed nodes.
    pub crossed: Vec<usize>,
    #[serde(serialize_with = "ser_labels")]
    pub lambda: Vec<Poly>,
    pub family: Option<BggFamily>,
    pub nodes: Vec<BggNode>,
    pub arrows: Vec<BggArrow>,
    pub euler: Option<EulerCheck>,
    pub warnings: Vec<String>,
}

impl BggDiagram {
    pub fn max_length(&self) -> usize {
        self.nodes.iter().map(|n| n.length).max().unwrap_or(0)
    }

    pub fn column(&self, length: usize) -> Vec<&BggNode> {
        self.nodes.iter().filter(|n| n.length == length).collect()
    }

    pub fn arrows_from(&self, i: usize) -> Vec<&BggArrow> {
        self.arrows.iter().filter(|a| a.from == i).collect()
    }

    pub fn arrows_into(&self, i: usize) -> Vec<&BggArrow> {
        self.arrows.iter().filter(|a| a.to == i).collect()
    }

    /// Node with the given labels.
    pub fn find(&self, labels: &[Poly]) -> Option<&BggNode> {
        self.nodes.iter().find(|n| n.labels == labels)
    }

    /// One column per length, then the edge list.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let fam = self.family.map(|f| format!("{f:?}")).unwrap_or_else(|| "other".into());
        let _ = writeln!(out, "BGG sequence for {} (family: {fam})", self.nodes[0].dynkin);
        for len in 0..=self.max_length() {
            let names: Vec<String> = self.column(len).iter().map(|n| format!("[{}] {}", n.index, n.dynkin)).collect();
            let _ = writeln!(out, "  length {len}: {}", names.join("  |  "));
        }
        let _ = writeln!(out, "arrows:");
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  [{}] -> [{}]  order {}  root {:?}  grade {}  {}",
                a.from,
                a.to,
                a.order.render_expanded(&[]),
                a.root_labels,
                a.grade,
                if a.extremal { "extremal" } else { "non-extremal" }
            );
        }
        if let Some(e) = &self.euler {
            let _ = writeln!(out, "euler: sum {} ({})", e.sum, if e.passed { "ok" } else { "FAILED" });
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    /// Edge list in DOT syntax.
    pub fn render_dot(&self) -> String {
        let mut out = String::from("digraph bgg {\n  rankdir=LR;\n");
        for n in &self.nodes {
            let lab: String = n
                .labels
                .iter()
                .enumerate()
                .map(|(k, v)| format!("{}({})", if self.crossed.contains(&k) { "x" } else { "" }, v.render_expanded(&[])))
                .collect();
            let _ = writeln!(out, "  n{} [label=\"{lab}\"];", n.index);
        }
        for a in &self.arrows {
            let style = if a.extremal { "solid" } else { "dotted" };
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\", style={style}];", a.from, a.to, a.order.render_expanded(&[]));
        }
        out.push_str("}\n");
        out
    }
}

fn act_poly(rs: &RootSystem, w: &WeylElement, labels: &[Poly]) -> Vec<Poly> {
    let mut v = labels.to_vec();
    for &i in w.word.iter().rev() {
        let li = v[i].clone();
        v = v.iter().enumerate().map(|(j, x)| x - &li.scale(&qi(rs.cartan[i][j]))).collect();
    }
    v
}

fn check_dominant(lambda: &[Poly]) -> Result<()> {
    for x in lambda {
        if let Some(c) = x.as_constant() {
            if c < qi(0) || !c.is_integer() {
                return Err(Error::NotDominant(format!("{lambda:?}")));
            }
        }
    }
    Ok(())
}

/// BGG diagram of the finite-dimensional module with (dual) highest weight `λ`.
/// Symbolic labels are treated as non-negative integer parameters.
pub fn bgg_sequence(rs: &RootSystem, p: &ParabolicStructure, lambda: &[Poly], cap: u128) -> Result<BggDiagram> {
    if lambda.len() != rs.rank() {
        return Err(Error::RankMismatch { expected: rs.rank(), found: lambda.len() });
    }
    check_dominant(lambda)?;
    let h = weyl::hasse(rs, p, cap)?;
    let shifted: Vec<Poly> = lambda.iter().map(|x| x + &Poly::one()).collect();
    let images: Vec<Vec<Poly>> = h.elements.iter().map(|(w, _)| act_poly(rs, w, &shifted)).collect();
    let numeric = lambda.iter().all(Poly::is_constant);
    let mut nodes = Vec::with_capacity(h.len());
    for (k, ((w, len), img)) in h.elements.iter().zip(&images).enumerate() {
        let labels: Vec<Poly> = img.iter().map(|x| x - &Poly::one()).collect();
        let dim = if numeric { Some(levi_dim(rs, p, &labels)?) } else { None };
        nodes.push(BggNode { index: k, length: *len, element: w.display(), dynkin: parabolic::format_dynkin_poly(p, &labels), labels, levi_dim: dim });
    }
    let mut arrows = Vec::new();
    let mut warnings = Vec::new();
    for &(a, b, g) in &h.arrows {
        // w_b = s_g w_a, so w_b.λ − w_a.λ = −⟨w_a(λ+ρ), β_g^∨⟩ β_g
        let order = rs.coroot_pair_index_poly(&images[a], g);
        let root_coeffs: Vec<i64> = rs.positive_coeffs()[g].iter().map(|c| -c).collect();
        let root_labels: Vec<i64> = rs.positive_labels()[g].iter().map(|c| -c).collect();
        let grade = p.grade(&rs.positive_coeffs()[g]);
        let extremal = weyl::is_extremal_index(rs, p, g, -1).unwrap_or(false);
        if let Some(c) = order.as_constant() {
            if c <= qi(0) {
                warnings.push(format!("arrow {a}->{b} has non-positive order {c}"));
            }
        }
        arrows.push(BggArrow { from: a, to: b, order, root_coeffs, root_labels, grade, extremal });
    }
    let euler = if numeric {
        let signed_dims: Vec<i128> = nodes
            .iter()
            .map(|n| {
                let d = n.levi_dim.unwrap_or(0) as i128;
                if n.length % 2 == 0 { d } else { -d }
            })
            .collect();
        let sum: i128 = signed_dims.iter().sum();
        Some(EulerCheck { signed_dims, passed: sum == 0, sum })
    } else {
        warnings.push("euler check skipped: symbolic labels".into());
        None
    };
    let family = BggFamily::detect(p);
    if family.is_none() {
        warnings.push("convention: arrows follow the root-multiple rule outside the tabulated families".into());
    }
    Ok(BggDiagram {
        lie_type: p.lie_type.to_string(),
        crossed: p.crossed.clone(),
        lambda: lambda.to_vec(),
        family,
        nodes,
        arrows,
        euler,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parse_dynkin_affine;
    use crate::rootsys::LieType;
    use crate::weyl::DEFAULT_CAP;
    use proptest::prelude::*;

    fn diagram(text: &str) -> BggDiagram {
        let (p, lam) = parse_dynkin_affine(text).unwrap();
        let rs = RootSystem::new(p.lie_type).unwrap();
        bgg_sequence(&rs, &p, &lam, DEFAULT_CAP).unwrap()
    }

    fn polys(v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| Poly::parse(s).unwrap()).collect()
    }

    fn vars(l: usize) -> Vec<String> {
        ["a", "b", "c", "d", "e", "f", "g"][..l].iter().map(|s| s.to_string()).collect()
    }

    fn symbolic(t: &str, l: usize, crossed: &[usize]) -> BggDiagram {
        let body: String = vars(l)
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}({v})", if crossed.contains(&i) { 'x' } else { 'o' }))
            .collect();
        diagram(&format!("{t}{l}:{body}"))
    }

    /// The unique chain of a diagram whose columns are singletons, plus the orders along it.
    fn chain(d: &BggDiagram) -> Vec<usize> {
        (0..=d.max_length()).map(|k| {
            let c = d.column(k);
            assert_eq!(c.len(), 1, "column {k}");
            c[0].index
        }).collect()
    }

    fn arrow(d: &BggDiagram, a: usize, b: usize) -> &BggArrow {
        d.arrows.iter().find(|x| x.from == a && x.to == b).unwrap_or_else(|| panic!("no arrow {a}->{b}"))
    }

    #[test]
    fn a2_chain() {
        let d = diagram("A2:x(a)o(b)");
        let c = chain(&d);
        assert_eq!(c.len(), 3);
        assert_eq!(d.nodes[c[1]].labels, polys(&["-a-2", "a+b+1"]));
        assert_eq!(d.nodes[c[2]].labels, polys(&["-a-b-3", "a"]));
        assert_eq!(arrow(&d, c[0], c[1]).order, Poly::parse("a+1").unwrap());
        assert_eq!(arrow(&d, c[1], c[2]).order, Poly::parse("b+1").unwrap());
        assert!(d.arrows.iter().all(|a| a.extremal));
        assert_eq!(d.arrows.len(), 2);
    }

    #[test]
    fn projective_chains() {
        for n in 2..=5usize {
            let d = symbolic("A", n, &[0]);
            let a = vars(n);
            let c = chain(&d);
            assert_eq!(c.len(), n + 1);
            for i in 0..n {
                let ar = arrow(&d, c[i], c[i + 1]);
                assert_eq!(ar.order, Poly::parse(&format!("{}+1", a[i])).unwrap(), "n={n} i={i}");
                let mut theta = vec![0i64; n];
                theta[..=i].iter_mut().for_each(|x| *x = -1);
                assert_eq!(ar.root_coeffs, theta);
                assert!(ar.extremal);
            }
            // last node: x(a_1)…(a_{n−1}) with x = −(Σa + n + 1)
            let sum: String = a.join("+");
            let mut last = vec![format!("-({sum})-{}", n + 1)];
            last.extend(a[..n - 1].iter().cloned());
            let last: Vec<&str> = last.iter().map(String::as_str).collect();
            assert_eq!(d.nodes[c[n]].labels, polys(&last));
        }
    }

    #[test]
    fn odd_conformal_chain() {
        for l in 2..=5usize {
            let d = symbolic("B", l, &[0]);
            let a = vars(l);
            let c = chain(&d);
            assert_eq!(c.len(), 2 * l);
            let mut expected: Vec<String> = a.iter().map(|x| format!("{x}+1")).collect();
            expected.extend(a[..l - 1].iter().rev().map(|x| format!("{x}+1")));
            for i in 0..2 * l - 1 {
                let ar = arrow(&d, c[i], c[i + 1]);
                assert_eq!(ar.order, Poly::parse(&expected[i]).unwrap(), "l={l} i={i}");
                assert_eq!(ar.extremal, i != l - 1, "l={l} i={i}");
                assert_eq!(ar.grade, 1);
            }
            // V_l and the last node
            let head: String = a[..l - 1].join("+");
            let mut vl = vec![format!("-({head})-{l}")];
            vl.extend(a[..l - 2].iter().cloned());
            vl.push(format!("{}+2{}+2", a[l - 1], a[l - 2]));
            let vl: Vec<&str> = vl.iter().map(String::as_str).collect();
            assert_eq!(d.nodes[c[l - 1]].labels, polys(&vl), "l={l}");
            let mid: String = a[1..l - 1].iter().map(|x| format!("+2{x}")).collect();
            // the density end of the chain: x = −(a_1 + 2a_2 + … + 2a_{l−1} + a_l) − (2l−1)
            let mut last = vec![format!("-({}{mid}+{})-{}", a[0], a[l - 1], 2 * l - 1)];
            last.extend(a[1..].iter().cloned());
            let last: Vec<&str> = last.iter().map(String::as_str).collect();
            assert_eq!(d.nodes[c[2 * l - 1]].labels, polys(&last), "l={l}");
        }
    }

    #[test]
    fn even_conformal_diamond() {
        for l in 3..=5usize {
            let d = symbolic("D", l, &[0]);
            let a = vars(l);
            assert_eq!(d.nodes.len(), 2 * l);
            assert_eq!(d.max_length(), 2 * l - 2);
            for k in 0..=d.max_length() {
                assert_eq!(d.column(k).len(), if k == l - 1 { 2 } else { 1 }, "l={l} k={k}");
            }
            assert_eq!(d.arrows.len(), 2 * l);
            assert!(d.arrows.iter().all(|x| x.extremal && x.grade == 1));
            let before = d.column(l - 2)[0].index;
            let after = d.column(l)[0].index;
            // V_{l−1} = (y, a_1, …, a_{l−3}, a_{l−1}+a_{l−2}+1, a_l+a_{l−2}+1)
            let y = format!("-({})-{}", a[..l - 2].join("+"), l - 1);
            let mut v = vec![y.clone()];
            v.extend(a[..l - 3].iter().cloned());
            v.push(format!("{}+{}+1", a[l - 2], a[l - 3]));
            v.push(format!("{}+{}+1", a[l - 1], a[l - 3]));
            let v: Vec<&str> = v.iter().map(String::as_str).collect();
            assert_eq!(d.nodes[before].labels, polys(&v), "l={l}");
            let (g, hh) = (&a[l - 2], &a[l - 1]);
            for mid in d.column(l - 1) {
                let into = arrow(&d, before, mid.index);
                let out = arrow(&d, mid.index, after);
                // opposite spin roots on the two sides of each middle node
                assert_eq!(&into.order + &out.order, Poly::parse(&format!("{g}+{hh}+2")).unwrap());
                assert_ne!(into.root_coeffs, out.root_coeffs);
            }
            let up = d.column(l - 1).into_iter().find(|m| arrow(&d, before, m.index).root_coeffs[l - 1] == 0).unwrap();
            assert_eq!(arrow(&d, before, up.index).order, Poly::parse(&format!("{g}+1")).unwrap());
            let mut top = vec![format!("{y}-{g}-1")];
            top.extend(a[..l - 3].iter().cloned());
            top.push(a[l - 3].clone());
            top.push(format!("{hh}+{}+{g}+2", a[l - 3]));
            let top: Vec<&str> = top.iter().map(String::as_str).collect();
            assert_eq!(up.labels, polys(&top));
            // last node: x(a_2)…(a_{l−2})(a_l)(a_{l−1}) with x = −a_1 − 2(a_2+…+a_{l−2}) − a_{l−1} − a_l − 2(l−1)
            let mid: String = a[1..l - 2].iter().map(|x| format!("+2{x}")).collect();
            let mut last = vec![format!("-({}{mid}+{g}+{hh})-{}", a[0], 2 * (l - 1))];
            last.extend(a[1..l - 2].iter().cloned());
            last.push(hh.clone());
            last.push(g.clone());
            let last: Vec<&str> = last.iter().map(String::as_str).collect();
            assert_eq!(d.column(2 * l - 2)[0].labels, polys(&last), "l={l}");
            // Chain orders outside the diamond: a_1+1, …, a_{l−2}+1, then back down.
            let c: Vec<usize> = (0..=d.max_length()).filter(|&k| k != l - 1).map(|k| d.column(k)[0].index).collect();
            for i in 0..l - 2 {
                assert_eq!(arrow(&d, c[i], c[i + 1]).order, Poly::parse(&format!("{}+1", a[i])).unwrap());
                let j = c.len() - 1 - i;
                assert_eq!(arrow(&d, c[j - 1], c[j]).order, Poly::parse(&format!("{}+1", a[i])).unwrap());
            }
        }
    }

    #[test]
    fn cr_double_triangle() {
        for n in 1..=4usize {
            let d = symbolic("A", n + 1, &[0, n]);
            let a = vars(n + 1);
            let ord = |k: usize| Poly::parse(&format!("{}+1", a[k - 1])).unwrap();
            assert_eq!(d.nodes.len(), (n + 1) * (n + 2));
            // V triangle at lengths 0..=n, W triangle mirrored at n+1..=2n+1
            for k in 0..=n {
                assert_eq!(d.column(k).len(), k + 1);
                assert_eq!(d.column(2 * n + 1 - k).len(), k + 1);
            }
            // θ_i = −(α_1+…+α_i), Θ_i = −(α_{i+1}+…+α_{n+1})
            let theta = |i: usize| -> Vec<i64> { (0..=n).map(|j| -i64::from(j < i)).collect() };
            let big_theta = |i: usize| -> Vec<i64> { (0..=n).map(|j| -i64::from(j >= i)).collect() };
            let which = |r: &[i64]| -> Option<(bool, usize)> {
                (1..=n).find_map(|i| if theta(i) == r { Some((false, i)) } else if big_theta(i) == r { Some((true, i)) } else { None })
            };
            let g2 = vec![-1i64; n + 1];
            for ar in &d.arrows {
                let from = &d.nodes[ar.from];
                if ar.root_coeffs == g2 {
                    assert!(from.length == n && !ar.extremal && ar.grade == 2);
                    continue;
                }
                assert!(ar.extremal && ar.grade == 1);
                let (big, i) = which(&ar.root_coeffs).unwrap_or_else(|| panic!("{:?}", ar.root_coeffs));
                if from.length == n {
                    continue;
                }
                // θ_i carries a_i+1 and Θ_i carries a_{i+1}+1 on the V side; the W side mirrors this
                let v_side = from.length < n;
                let k = if big == v_side { i + 1 } else { i };
                assert_eq!(ar.order, ord(k), "n={n} {:?}", ar.root_coeffs);
            }
            assert_eq!(d.arrows.iter().filter(|x| !x.extremal).count(), n + 1);
            assert_eq!(d.arrows.iter().filter(|x| d.nodes[x.from].length < n).count(), n * (n + 1));
            // outer edges of both triangles
            let step = |from: usize, big: bool, fwd: bool| -> (usize, &BggArrow) {
                let ar = d
                    .arrows
                    .iter()
                    .find(|x| (if fwd { x.from } else { x.to }) == from && which(&x.root_coeffs).is_some_and(|w| w.0 == big))
                    .unwrap();
                (if fwd { ar.to } else { ar.from }, ar)
            };
            let (mut top, mut bottom) = (0usize, 0usize);
            for i in 1..=n {
                let (t, ar) = step(top, false, true);
                assert_eq!((ar.root_coeffs.clone(), ar.order.clone()), (theta(i), ord(i)), "V_{{{i},1}}");
                let (b, ar) = step(bottom, true, true);
                assert_eq!((ar.root_coeffs.clone(), ar.order.clone()), (big_theta(n + 1 - i), ord(n + 2 - i)), "V_{{{i},{i}}}");
                top = t;
                bottom = b;
            }
            let end = d.column(2 * n + 1)[0].index;
            let (mut top, mut bottom) = (end, end);
            for i in 2..=n + 1 {
                let (t, ar) = step(top, true, false);
                assert_eq!(ar.root_coeffs, big_theta(i - 1), "W_{{{i},1}}");
                assert_eq!(ar.order, ord(i - 1));
                let (b, ar) = step(bottom, false, false);
                assert_eq!(ar.root_coeffs, theta(n + 2 - i), "W_{{{i},{i}}}");
                assert_eq!(ar.order, ord(n + 3 - i));
                top = t;
                bottom = b;
            }
        }
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let cases: Vec<(LieType, Vec<usize>)> = (2..=5)
            .flat_map(|r| {
                let mut v = vec![(LieType::a(r), vec![0]), (LieType::b(r), vec![0]), (LieType::a(r), vec![0, r - 1])];
                if r >= 3 {
                    v.push((LieType::d(r), vec![0]));
                }
                v
            })
            .collect();
        for (t, crossed) in cases {
            let rs = RootSystem::new(t).unwrap();
            let p = ParabolicStructure::new(t, crossed).unwrap();
            for lam in [vec![0i64; t.rank], (0..t.rank as i64).map(|i| i % 2).collect(), vec![1; t.rank]] {
                let lam: Vec<Poly> = lam.iter().map(|&x| Poly::int(x)).collect();
                let d = bgg_sequence(&rs, &p, &lam, DEFAULT_CAP).unwrap();
                let e = d.euler.as_ref().unwrap();
                assert!(e.passed, "{t} {lam:?}: {}", e.sum);
                assert!(d.family.is_some());
                assert!(d.warnings.is_empty());
            }
        }
    }

    #[test]
    fn other_shapes_are_flagged() {
        let d = diagram("C3:x(1)o(0)o(1)");
        assert!(d.family.is_none());
        assert!(d.warnings.iter().any(|w| w.starts_with("convention")));
        assert!(d.euler.unwrap().passed);
        let d = diagram("A3:o(0)x(0)o(0)");
        assert!(d.family.is_none());
    }

    #[test]
    fn errors() {
        let rs = RootSystem::new(LieType::a(2)).unwrap();
        let p = ParabolicStructure::new(LieType::a(2), vec![0]).unwrap();
        assert!(matches!(bgg_sequence(&rs, &p, &[Poly::int(-1), Poly::int(0)], DEFAULT_CAP), Err(Error::NotDominant(_))));
        let rs = RootSystem::new(LieType::a(5)).unwrap();
        let p = ParabolicStructure::new(LieType::a(5), vec![0]).unwrap();
        assert!(matches!(bgg_sequence(&rs, &p, &vec![Poly::int(0); 5], 10), Err(Error::OrbitTooLarge(720, 10))));
    }

    #[test]
    fn renderings() {
        let d = diagram("A2:x(a)o(b)");
        let t = d.render_text();
        assert!(t.contains("order a+1") && t.contains("order b+1"), "{t}");
        assert!(d.render_dot().starts_with("digraph bgg"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn nodes_share_central_character_and_are_p_dominant(r in 2usize..=4, fam in 0usize..4, seed in prop::collection::vec(0i64..3, 4)) {
            let (t, crossed) = match fam {
                0 => (LieType::a(r), vec![0]),
                1 => (LieType::b(r), vec![0]),
                2 => (LieType::d(r.max(3)), vec![0]),
                _ => (LieType::a(r), vec![0, r - 1]),
            };
            let rs = RootSystem::new(t).unwrap();
            let p = ParabolicStructure::new(t, crossed).unwrap();
            let lam: Vec<Poly> = seed[..t.rank].iter().map(|&x| Poly::int(x)).collect();
            let d = bgg_sequence(&rs, &p, &lam, DEFAULT_CAP).unwrap();
            let base = parabolic::poly_to_labels(&lam).unwrap();
            for n in &d.nodes {
                let q = parabolic::poly_to_labels(&n.labels).unwrap();
                prop_assert!(parabolic::is_p_dominant(&p, &q));
                prop_assert!(crate::central::same_central_character(&rs, &base, &q).unwrap());
            }
            for a in &d.arrows {
                let m = a.order.as_constant().unwrap();
                prop_assert!(m > qi(0));
                let from = parabolic::poly_to_labels(&d.nodes[a.from].labels).unwrap();
                let to = parabolic::poly_to_labels(&d.nodes[a.to].labels).unwrap();
                for ((x, y), r) in from.iter().zip(&to).zip(&a.root_labels) {
                    prop_assert_eq!(y - x, &m * qi(*r));
                }
            }
        }
    }
}
