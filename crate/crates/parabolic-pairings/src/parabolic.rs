//! Parabolic structures: crossed nodes, gradings, p-dominance, geometric weights and the
//! Dynkin-diagram text codec (`"A3: x(-1) o(0) o(1)"`).

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{fmt_q, parse_q, qi, Q};
use crate::rootsys::{LieType, RootSystem, Weight};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicStructure {
    pub lie_type: LieType,
    /// Crossed nodes, 0-based and sorted.
    pub crossed: Vec<usize>,
}

/// One irreducible summand `g_1^i` of `g_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G1Component {
    /// Crossed node (0-based).
    pub node: usize,
    /// Labels `−α_i` (the highest weight of the dual summand).
    pub label: Vec<i64>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingInfo {
    pub k0: usize,
    pub grading_dims: BTreeMap<i64, usize>,
    pub g1_components: Vec<G1Component>,
}

impl ParabolicStructure {
    pub fn new(lie_type: LieType, mut crossed: Vec<usize>) -> Result<Self> {
        crossed.sort_unstable();
        crossed.dedup();
        if let Some(&bad) = crossed.iter().find(|&&i| i >= lie_type.rank) {
            return Err(Error::IndexOutOfRange(bad + 1, lie_type.rank));
        }
        Ok(ParabolicStructure { lie_type, crossed })
    }

    /// Convenience constructor from 1-based node numbers.
    pub fn from_nodes(lie_type: LieType, nodes: &[usize]) -> Result<Self> {
        if nodes.contains(&0) {
            return Err(Error::IndexOutOfRange(0, lie_type.rank));
        }
        ParabolicStructure::new(lie_type, nodes.iter().map(|n| n - 1).collect())
    }

    pub fn is_crossed(&self, i: usize) -> bool {
        self.crossed.contains(&i)
    }

    /// Uncrossed nodes J.
    pub fn uncrossed(&self) -> Vec<usize> {
        (0..self.lie_type.rank).filter(|i| !self.is_crossed(*i)).collect()
    }

    /// Number of crossed nodes.
    pub fn l0(&self) -> usize {
        self.crossed.len()
    }

    /// Grade of a root given by simple-root coefficients.
    pub fn grade(&self, coeffs: &[i64]) -> i64 {
        self.crossed.iter().map(|&i| coeffs[i]).sum()
    }

    pub fn k0(&self, rs: &RootSystem) -> usize {
        self.grade(rs.highest_root_coeffs()) as usize
    }

    pub fn is_one_graded(&self, rs: &RootSystem) -> bool {
        self.k0(rs) == 1
    }

    pub fn grading_info(&self, rs: &RootSystem) -> GradingInfo {
        let k0 = self.k0(rs);
        let mut dims: BTreeMap<i64, usize> = (-(k0 as i64)..=k0 as i64).map(|g| (g, 0)).collect();
        *dims.get_mut(&0).unwrap() += rs.rank();
        for c in rs.positive_coeffs() {
            let g = self.grade(c);
            *dims.get_mut(&g).unwrap() += 1;
            *dims.get_mut(&-g).unwrap() += 1;
        }
        let g1_components = self
            .crossed
            .iter()
            .map(|&i| G1Component {
                node: i,
                label: rs.simple_labels(i).iter().map(|x| -x).collect(),
                dim: rs.positive_coeffs().iter().filter(|c| self.grade(c) == 1 && c[i] == 1).count(),
            })
            .collect();
        GradingInfo { k0, grading_dims: dims, g1_components }
    }

    /// Dimension of `g_-`.
    pub fn manifold_dim(&self, rs: &RootSystem) -> usize {
        rs.positive_coeffs().iter().filter(|c| self.grade(c) > 0).count()
    }

    /// Roots of `g_-1` (negated positive roots of grade one), as positive-root indices.
    pub fn gminus1_indices(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.num_positive()).filter(|&k| self.grade(&rs.positive_coeffs()[k]) == 1).collect()
    }

    /// Labels of the roots of `g_-1` belonging to crossed node `i`.
    pub fn gminus1_labels(&self, rs: &RootSystem, i: usize) -> Vec<Vec<i64>> {
        self.gminus1_indices(rs)
            .into_iter()
            .filter(|&k| rs.positive_coeffs()[k][i] == 1)
            .map(|k| rs.positive_labels()[k].iter().map(|x| -x).collect())
            .collect()
    }
}

/// All labels integral and uncrossed labels non-negative.
pub fn is_p_dominant(p: &ParabolicStructure, labels: &[Q]) -> bool {
    labels.iter().all(|x| x.is_integer()) && p.uncrossed().iter().all(|&j| !labels[j].is_negative())
}

/// Uncrossed labels are non-negative integers; crossed labels may be any rational.
pub fn is_levi_dominant(p: &ParabolicStructure, labels: &[Q]) -> bool {
    p.uncrossed().iter().all(|&j| labels[j].is_integer() && !labels[j].is_negative())
}

/// A weight whose labels are integral over J but not over every crossed node.
pub fn is_density_twisted(p: &ParabolicStructure, labels: &[Q]) -> bool {
    is_levi_dominant(p, labels) && !labels.iter().all(|x| x.is_integer())
}

/// Geometric weight of a `|1|`-graded representation: minus the coefficient of `α_{i0}`.
pub fn geometric_weight(rs: &RootSystem, p: &ParabolicStructure, labels: &[Q]) -> Result<Q> {
    let k0 = p.k0(rs);
    if k0 != 1 || p.crossed.len() != 1 {
        return Err(Error::NotOneGraded(k0));
    }
    let c = rs.labels_to_coeffs(labels);
    Ok(-c[p.crossed[0]].clone())
}

pub fn geometric_weight_poly(rs: &RootSystem, p: &ParabolicStructure, labels: &[Poly]) -> Result<Poly> {
    let k0 = p.k0(rs);
    if k0 != 1 || p.crossed.len() != 1 {
        return Err(Error::NotOneGraded(k0));
    }
    let i0 = p.crossed[0];
    let mut acc = Poly::zero();
    for (j, lab) in labels.iter().enumerate() {
        // coefficient of α_{i0} in ω_j
        let unit: Vec<Q> = (0..rs.rank()).map(|k| if k == j { qi(1) } else { qi(0) }).collect();
        let c = rs.labels_to_coeffs(&unit)[i0].clone();
        acc += lab.scale(&c);
    }
    Ok(-acc)
}

/// Labels `x(w) o(0) … o(0) x(w')` of the CR density bundle `E(w, w')` on `A_{n+1}` with both ends crossed.
pub fn cr_density_labels(n: usize, w: Poly, w_prime: Poly) -> Vec<Poly> {
    let mut v = vec![Poly::zero(); n + 1];
    v[0] = w;
    v[n] = w_prime;
    v
}

fn parse_err(pos: usize, msg: &str) -> Error {
    Error::Parse { pos, msg: msg.to_string() }
}

/// Tokenised diagram: type, crossed flags and raw label strings with positions.
fn scan(text: &str) -> Result<(LieType, Vec<(bool, String, usize)>)> {
    let (head, body) = text.split_once(':').ok_or_else(|| parse_err(0, "expected '<family><rank>:'"))?;
    let lie_type: LieType = head.trim().parse().map_err(|_| parse_err(0, "unknown Lie type"))?;
    let offset = head.len() + 1;
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    let mut nodes = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let crossed = match c {
            'x' | 'X' => true,
            'o' | 'O' => false,
            _ => return Err(parse_err(offset + i, "expected node 'x(...)' or 'o(...)'")),
        };
        i += 1;
        if i >= chars.len() || chars[i] != '(' {
            return Err(parse_err(offset + i, "expected '('"));
        }
        let start = i + 1;
        let mut depth = 1;
        i += 1;
        while i < chars.len() && depth > 0 {
            match chars[i] {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            i += 1;
        }
        if depth != 0 {
            return Err(parse_err(offset + start, "unbalanced parentheses"));
        }
        let inner: String = chars[start..i - 1].iter().collect();
        nodes.push((crossed, inner, offset + start));
    }
    if nodes.len() != lie_type.rank {
        return Err(Error::RankMismatch { expected: lie_type.rank, found: nodes.len() });
    }
    Ok((lie_type, nodes))
}

/// Strict codec: every label must be a rational number.
pub fn parse_dynkin(text: &str) -> Result<(ParabolicStructure, Weight)> {
    let (t, nodes) = scan(text)?;
    let mut labels = Vec::new();
    let mut crossed = Vec::new();
    for (k, (x, raw, pos)) in nodes.iter().enumerate() {
        let v = parse_q(raw).ok_or_else(|| parse_err(*pos, "label must be rational"))?;
        labels.push(v);
        if *x {
            crossed.push(k);
        }
    }
    Ok((ParabolicStructure::new(t, crossed)?, Weight::labels(t, labels)))
}

/// Parametric codec: crossed labels may be affine expressions such as `1+v`;
/// uncrossed labels must be rational constants.
pub fn parse_dynkin_symbolic(text: &str) -> Result<(ParabolicStructure, Vec<Poly>)> {
    let (t, nodes) = scan(text)?;
    let mut labels = Vec::new();
    let mut crossed = Vec::new();
    for (k, (x, raw, pos)) in nodes.iter().enumerate() {
        let v = Poly::parse(raw).map_err(|m| parse_err(*pos, &m))?;
        if v.total_degree() > 1 {
            return Err(parse_err(*pos, "labels must be affine in the parameters"));
        }
        if !*x && !v.is_constant() {
            return Err(parse_err(*pos, "uncrossed labels must be constants"));
        }
        labels.push(v);
        if *x {
            crossed.push(k);
        }
    }
    Ok((ParabolicStructure::new(t, crossed)?, labels))
}

/// Affine labels on every node, e.g. `A2: x(a) o(b)` for a symbolic g-dominant weight.
pub fn parse_dynkin_affine(text: &str) -> Result<(ParabolicStructure, Vec<Poly>)> {
    let (t, nodes) = scan(text)?;
    let mut labels = Vec::new();
    let mut crossed = Vec::new();
    for (k, (x, raw, pos)) in nodes.iter().enumerate() {
        let v = Poly::parse(raw).map_err(|m| parse_err(*pos, &m))?;
        if v.total_degree() > 1 {
            return Err(parse_err(*pos, "labels must be affine in the parameters"));
        }
        labels.push(v);
        if *x {
            crossed.push(k);
        }
    }
    Ok((ParabolicStructure::new(t, crossed)?, labels))
}

pub fn format_dynkin(p: &ParabolicStructure, labels: &[Q]) -> String {
    let nodes: Vec<String> = labels
        .iter()
        .enumerate()
        .map(|(k, v)| format!("{}({})", if p.is_crossed(k) { 'x' } else { 'o' }, fmt_q(v)))
        .collect();
    format!("{}: {}", p.lie_type, nodes.join(" "))
}

pub fn format_dynkin_poly(p: &ParabolicStructure, labels: &[Poly]) -> String {
    let nodes: Vec<String> = labels
        .iter()
        .enumerate()
        .map(|(k, v)| format!("{}({})", if p.is_crossed(k) { 'x' } else { 'o' }, v.render_expanded(&[])))
        .collect();
    format!("{}: {}", p.lie_type, nodes.join(" "))
}

/// Compact label string used in reports: `x(-5)(2)(1)` style for one crossed node.
pub fn compact_labels(p: &ParabolicStructure, labels: &[Poly]) -> String {
    labels
        .iter()
        .enumerate()
        .map(|(k, v)| format!("{}({})", if p.is_crossed(k) { "x" } else { "" }, v.render_expanded(&[])))
        .collect()
}

pub fn labels_to_poly(labels: &[Q]) -> Vec<Poly> {
    labels.iter().map(|x| Poly::constant(x.clone())).collect()
}

/// Constant labels of a polynomial label vector, when all entries are constants.
pub fn poly_to_labels(labels: &[Poly]) -> Option<Vec<Q>> {
    labels.iter().map(|p| p.as_constant()).collect()
}

/// Whether every crossed entry is zero.
pub fn crossed_zero(p: &ParabolicStructure, labels: &[Q]) -> bool {
    p.crossed.iter().all(|&i| labels[i].is_zero())
}
