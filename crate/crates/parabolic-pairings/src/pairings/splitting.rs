//! Splitting-operator recursions: denominators and the weights where they vanish.

use super::excluded::projective_excluded_weights;
use crate::central::same_central_character;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{fmt_q, qf, qi, Q};
use crate::rootsys::{Family, LieType, RootSystem};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Projective,
    Conformal,
    CrHolomorphic,
    CrAntiholomorphic,
}

impl FromStr for Geometry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', ' '], "_").as_str() {
            "projective" => Ok(Geometry::Projective),
            "conformal" => Ok(Geometry::Conformal),
            "cr_holomorphic" | "cr" | "crholomorphic" => Ok(Geometry::CrHolomorphic),
            "cr_antiholomorphic" | "crantiholomorphic" => Ok(Geometry::CrAntiholomorphic),
            other => Err(Error::UnsupportedGeometry(other.to_string())),
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Geometry::Projective => "projective",
            Geometry::Conformal => "conformal",
            Geometry::CrHolomorphic => "cr_holomorphic",
            Geometry::CrAntiholomorphic => "cr_antiholomorphic",
        };
        write!(f, "{s}")
    }
}

impl Geometry {
    /// Name of the weight parameter the denominators depend on.
    pub fn parameter(self) -> &'static str {
        match self {
            Geometry::Projective | Geometry::Conformal => "v",
            Geometry::CrHolomorphic => "w'",
            Geometry::CrAntiholomorphic => "w",
        }
    }

    /// Formal meaning of `Γ` in the corrected operators.
    pub fn gamma_meaning(self) -> &'static str {
        match self {
            Geometry::Projective => "projective Schouten tensor P_ab",
            Geometry::Conformal => "conformal Rho-tensor P_ab",
            Geometry::CrHolomorphic | Geometry::CrAntiholomorphic => "pseudohermitian torsion -iA^{ab}",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcludedEntry {
    pub value: String,
    pub family: usize,
    pub index: i64,
    pub source: String,
    pub target: Option<String>,
    /// Whether source and target share a central character (`None` when not checked).
    pub central_character_match: Option<bool>,
    #[serde(skip)]
    pub exact: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplittingCoefficients {
    pub geometry: Geometry,
    pub n: usize,
    pub k: usize,
    pub order: Option<usize>,
    pub parameter: String,
    pub gamma_meaning: String,
    #[serde(serialize_with = "super::gamma::ser_polys")]
    pub denominators: Vec<Poly>,
    pub excluded_weights: Vec<ExcludedEntry>,
    pub warnings: Vec<String>,
}

impl SplittingCoefficients {
    pub fn excluded_values(&self) -> Vec<Q> {
        self.excluded_weights.iter().map(|e| e.exact.clone()).collect()
    }

    pub fn family(&self, f: usize) -> Vec<Q> {
        self.excluded_weights.iter().filter(|e| e.family == f).map(|e| e.exact.clone()).collect()
    }
}

fn fmt_labels(rs_type: LieType, crossed: &[usize], v: &[Q]) -> String {
    let mut s = format!("{rs_type}:");
    for (i, x) in v.iter().enumerate() {
        s.push(if crossed.contains(&i) { 'x' } else { 'o' });
        s.push_str(&format!("({})", fmt_q(x)));
    }
    s
}

/// The orthogonal algebra for conformal geometry of dimension `n`.
pub fn conformal_type(n: usize) -> Result<LieType> {
    if n < 3 {
        return Err(Error::UnsupportedGeometry(format!("conformal n={n}")));
    }
    if n % 2 == 0 {
        LieType::new(Family::D, n / 2 + 1)
    } else {
        LieType::new(Family::B, n.div_ceil(2))
    }
}

struct Checker {
    rs: RootSystem,
    crossed: Vec<usize>,
}

impl Checker {
    fn new(t: LieType, crossed: Vec<usize>) -> Result<Self> {
        Ok(Checker { rs: RootSystem::new(t)?, crossed })
    }

    fn entry(&self, family: usize, index: i64, value: Q, source: Vec<Q>, target: Option<Vec<Q>>) -> Result<ExcludedEntry> {
        let t = self.rs.lie_type;
        let (target_s, check) = match &target {
            Some(tg) if tg.len() == source.len() => (Some(fmt_labels(t, &self.crossed, tg)), Some(same_central_character(&self.rs, &source, tg)?)),
            _ => (None, None),
        };
        Ok(ExcludedEntry {
            value: fmt_q(&value),
            family,
            index,
            source: fmt_labels(t, &self.crossed, &source),
            target: target_s,
            central_character_match: check,
            exact: value,
        })
    }

    /// Search `λ + mθ` over `g_-1` roots `θ` and `1 ≤ m ≤ bound` for a p-dominant weight with the
    /// same central character.
    fn root_witness(&self, lambda: &[Q], bound: i64) -> Result<Option<Vec<Q>>> {
        let p = crate::parabolic::ParabolicStructure::new(self.rs.lie_type, self.crossed.clone())?;
        for &kidx in &p.gminus1_indices(&self.rs) {
            let theta: Vec<i64> = self.rs.positive_labels()[kidx].iter().map(|x| -x).collect();
            for m in 1..=bound {
                let mu: Vec<Q> = lambda.iter().zip(&theta).map(|(a, &t)| a + qi(m * t)).collect();
                if crate::parabolic::is_p_dominant(&p, &mu) && same_central_character(&self.rs, lambda, &mu)? {
                    return Ok(Some(mu));
                }
            }
        }
        Ok(None)
    }
}

fn zeros(n: usize) -> Vec<Q> {
    vec![qi(0); n]
}

/// `c` times the highest weight of the Levi factor's vector representation (crossed label 0).
/// Low ranks differ: `B_2` carries it on the short node doubled, `D_3` on both spinor nodes.
pub fn levi_vector(t: LieType, c: Q) -> Vec<Q> {
    let mut s = zeros(t.rank);
    match (t.family, t.rank) {
        (Family::B, 2) => s[1] = c * qi(2),
        (Family::D, 3) => {
            s[1] = c.clone();
            s[2] = c;
        }
        _ => s[1] = c,
    }
    s
}

/// `c` times the highest weight of the Levi factor's two-forms, when it is fundamental-like.
pub fn levi_two_form(t: LieType, c: Q) -> Option<Vec<Q>> {
    let mut s = zeros(t.rank);
    match (t.family, t.rank) {
        (Family::B, 2) | (Family::D, 3) => return None,
        (Family::B, 3) => s[2] = c * qi(2),
        (Family::D, 4) => {
            s[2] = c.clone();
            s[3] = c;
        }
        _ => s[2] = c,
    }
    Some(s)
}

/// Denominators and excluded weights of the splitting recursion for valence `k`; with
/// `order = Some(M)` the projective and conformal lists are extended to the full set of weights
/// for which the order-`M` construction breaks down.
pub fn splitting_recursion(geometry: Geometry, n: usize, k: usize, order: Option<usize>) -> Result<SplittingCoefficients> {
    if k == 0 {
        return Err(Error::Invalid("splitting: valence k must be at least 1".into()));
    }
    let x = Poly::var(geometry.parameter());
    let (nn, kk) = (n as i64, k as i64);
    let mut warnings = Vec::new();
    let mut excluded = Vec::new();
    let denominators: Vec<Poly>;
    match geometry {
        Geometry::Projective => {
            if n < 2 {
                return Err(Error::UnsupportedGeometry(format!("projective n={n}")));
            }
            denominators = (1..=kk).map(|a| &x + &Poly::int(nn + kk + a - 1)).collect();
            let ch = Checker::new(LieType::a(n), vec![0])?;
            let mut a_labels = vec![0i64; n - 1];
            a_labels[n - 2] = kk;
            let bundle = |v: &Q| -> Vec<Q> {
                let mut s = zeros(n);
                s[0] = v + qi(kk);
                s[n - 1] = qi(kk);
                s
            };
            let table = projective_excluded_weights(&a_labels, order.unwrap_or(k).max(k));
            let target_for = |v: &Q, node: usize| -> Option<Vec<Q>> {
                let kl = crate::rational::to_i64(&(v + qi(kk)))?;
                table.iter().find(|e| e.k == kl && e.node == node).map(|e| e.target.iter().map(|&t| qi(t)).collect())
            };
            for a in 1..=kk {
                let v = qi(-(nn + kk + a - 1));
                excluded.push(ch.entry(1, a, v.clone(), bundle(&v), target_for(&v, n - 1))?);
            }
            if let Some(m) = order {
                for a in 0..m as i64 {
                    let v = qi(a - kk);
                    excluded.push(ch.entry(2, a, v.clone(), bundle(&v), target_for(&v, 0))?);
                }
            }
        }
        Geometry::Conformal => {
            let t = conformal_type(n)?;
            denominators = (1..=kk).map(|a| &x + &Poly::int(nn + kk + a - 2)).collect();
            let ch = Checker::new(t, vec![0])?;
            let with_crossed = |c: Q, mut s: Vec<Q>| -> Vec<Q> {
                s[0] = c;
                s
            };
            let bundle = |v: &Q| with_crossed(v.clone(), levi_vector(t, qi(kk)));
            for a in 1..=kk {
                let v = qi(-(nn + kk + a - 2));
                let src = bundle(&v);
                let witness = ch.root_witness(&src, 2 * (kk + nn))?;
                if witness.is_none() {
                    warnings.push(format!("no root witness found for v = {}", fmt_q(&v)));
                }
                excluded.push(ch.entry(1, a, v, src, witness)?);
            }
            if let Some(m) = order {
                if levi_two_form(t, qi(1)).is_none() {
                    warnings.push(format!("{t}: the Levi factor has no separate two-form node; family 2 targets are omitted"));
                }
                for a in 0..kk {
                    let v = qi(a - kk - 1);
                    let target = levi_two_form(t, qi(a + 1)).map(|tf| {
                        let vec = levi_vector(t, qi(kk - a - 1));
                        let s: Vec<Q> = tf.iter().zip(&vec).map(|(x, y)| x + y).collect();
                        with_crossed(qi(-kk - 2), s)
                    });
                    excluded.push(ch.entry(2, a, v.clone(), bundle(&v), target)?);
                }
                for a in 0..m as i64 {
                    let v = qi(a);
                    let tg = with_crossed(qi(-a - 2), levi_vector(t, qi(kk + a + 1)));
                    excluded.push(ch.entry(3, a, v.clone(), bundle(&v), Some(tg))?);
                }
                for a in 0..(kk + m as i64) {
                    let v = qi(1 - kk + a) - qf(nn, 2);
                    let tg = with_crossed(&v - qi(2 * a + 2), levi_vector(t, qi(kk)));
                    excluded.push(ch.entry(4, a, v.clone(), bundle(&v), Some(tg))?);
                }
            }
        }
        Geometry::CrHolomorphic | Geometry::CrAntiholomorphic => {
            if n < 2 {
                return Err(Error::UnsupportedGeometry(format!("CR n={n}")));
            }
            let holo = geometry == Geometry::CrHolomorphic;
            denominators = (0..kk).map(|s| &x + &Poly::int(nn + s)).collect();
            if order.is_some() {
                warnings.push("order-dependent exclusions are only tabulated for projective and conformal geometry".into());
            }
            let rank = n + 1;
            let ch = Checker::new(LieType::a(rank), vec![0, rank - 1])?;
            // The other weight is a spectator; it is fixed at a generic rational value.
            let spectator = qf(7, 3);
            for s in 0..kk {
                let val = qi(-(nn + s));
                let l = kk - s;
                let (src, tg) = if holo {
                    let (w, wp) = (spectator.clone(), val.clone());
                    let mut src = zeros(rank);
                    src[0] = &w - qi(2 * kk);
                    src[1] = qi(kk);
                    src[rank - 1] = wp.clone();
                    let mut tg = zeros(rank);
                    tg[0] = &w - qi(2 * kk - l);
                    tg[1] = qi(kk - l);
                    tg[rank - 1] = &wp - qi(l);
                    (src, tg)
                } else {
                    let (w, wp) = (val.clone(), spectator.clone());
                    let mut src = zeros(rank);
                    src[0] = w.clone();
                    src[rank - 2] = qi(kk);
                    src[rank - 1] = &wp - qi(2 * kk);
                    let mut tg = zeros(rank);
                    tg[0] = &w - qi(l);
                    tg[rank - 2] = qi(kk - l);
                    tg[rank - 1] = &wp - qi(2 * kk - l);
                    (src, tg)
                };
                excluded.push(ch.entry(1, s, val, src, Some(tg))?);
            }
        }
    }
    Ok(SplittingCoefficients {
        geometry,
        n,
        k,
        order,
        parameter: geometry.parameter().to_string(),
        gamma_meaning: geometry.gamma_meaning().to_string(),
        denominators,
        excluded_weights: excluded,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn parse_geometry() {
        assert_eq!("CR-holomorphic".parse::<Geometry>().unwrap(), Geometry::CrHolomorphic);
        assert_eq!("conformal".parse::<Geometry>().unwrap(), Geometry::Conformal);
        assert!(matches!("riemannian".parse::<Geometry>(), Err(Error::UnsupportedGeometry(_))));
    }

    #[test]
    fn denominators_vanish_exactly_at_excluded_weights() {
        for g in [Geometry::Projective, Geometry::Conformal, Geometry::CrHolomorphic, Geometry::CrAntiholomorphic] {
            for n in 3..=7 {
                for k in 1..=4 {
                    let s = splitting_recursion(g, n, k, None).unwrap();
                    let var = g.parameter();
                    let roots: Vec<Q> = s.denominators.iter().map(|d| -d.substitute_q(var, &qi(0)).as_constant().unwrap()).collect();
                    assert_eq!(roots, s.excluded_values());
                }
            }
        }
    }

    #[test]
    fn printed_lists() {
        for n in 2..=6i64 {
            for k in 1..=4i64 {
                let s = splitting_recursion(Geometry::Projective, n as usize, k as usize, None).unwrap();
                assert_eq!(s.excluded_values(), ints(&(1..=k).map(|a| -(n + k + a - 1)).collect::<Vec<_>>()));
                assert!(s.excluded_weights.iter().all(|e| e.central_character_match == Some(true)));
                let s = splitting_recursion(Geometry::CrHolomorphic, n as usize, k as usize, None).unwrap();
                assert_eq!(s.excluded_values(), ints(&(0..k).map(|j| -(n + j)).collect::<Vec<_>>()));
                assert!(s.excluded_weights.iter().all(|e| e.central_character_match == Some(true)), "{:?}", s.excluded_weights);
                let s = splitting_recursion(Geometry::CrAntiholomorphic, n as usize, k as usize, None).unwrap();
                assert!(s.excluded_weights.iter().all(|e| e.central_character_match == Some(true)), "{:?}", s.excluded_weights);
                if n >= 3 {
                    let s = splitting_recursion(Geometry::Conformal, n as usize, k as usize, None).unwrap();
                    assert_eq!(s.excluded_values(), ints(&(1..=k).map(|a| -(n + k + a - 2)).collect::<Vec<_>>()));
                }
            }
        }
    }

    #[test]
    fn projective_with_order() {
        for n in 2..=5i64 {
            for k in 1..=3i64 {
                for m in 1..=3i64 {
                    let s = splitting_recursion(Geometry::Projective, n as usize, k as usize, Some(m as usize)).unwrap();
                    assert_eq!(s.family(2), ints(&(0..m).map(|a| a - k).collect::<Vec<_>>()));
                    assert!(s.excluded_weights.iter().all(|e| e.central_character_match == Some(true)), "{:?}", s.excluded_weights);
                }
            }
        }
    }

    #[test]
    fn conformal_families_share_central_characters() {
        for n in 3..=9usize {
            for k in 1..=3usize {
                let s = splitting_recursion(Geometry::Conformal, n, k, Some(2)).unwrap();
                assert_eq!(s.family(4).len(), k + 2);
                assert_eq!(s.family(4)[0], qi(1 - k as i64) - qf(n as i64, 2));
                for f in [1usize, 2, 3, 4] {
                    let omitted = f == 2 && levi_two_form(conformal_type(n).unwrap(), qi(1)).is_none();
                    let expect = if omitted { None } else { Some(true) };
                    for e in s.excluded_weights.iter().filter(|e| e.family == f) {
                        assert_eq!(e.central_character_match, expect, "n={n} k={k} family {f}: {e:?}");
                    }
                }
            }
        }
    }
}

