//! The coefficient system `γ_{M,j+1}(j+1)(q−j) + γ_{M,j}(M−j)(q'−M+j+1) = 0`.

use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::rational::{binomial, qi, to_i64, Q};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaVector {
    pub order: usize,
    #[serde(serialize_with = "crate::pairings::gamma::ser_poly")]
    pub q: Poly,
    #[serde(serialize_with = "crate::pairings::gamma::ser_poly")]
    pub q_prime: Poly,
    /// Closed-form coefficients (identically zero when both weights are degenerate).
    #[serde(serialize_with = "crate::pairings::gamma::ser_polys")]
    pub coefficients: Vec<Poly>,
    /// Basis of the solution space (exact nullspace for numeric input, the closed form otherwise).
    #[serde(serialize_with = "crate::pairings::gamma::ser_basis")]
    pub basis: Vec<Vec<Poly>>,
    pub solution_dim: usize,
    pub degenerate: bool,
}

pub(crate) fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.render(&["q", "q'"]))
}

pub(crate) fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.render(&["q", "q'"]))?;
    }
    seq.end()
}

fn ser_basis<S: serde::Serializer>(v: &[Vec<Poly>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let r: Vec<String> = row.iter().map(|p| p.render(&["q", "q'"])).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

/// `(−1)^j C(M,j) ∏_{i=j}^{M−1}(q−i) ∏_{i=M−j}^{M−1}(q'−i)`.
pub fn closed_form(m: usize, q: &Poly, qp: &Poly) -> Vec<Poly> {
    if let (Some(a), Some(b)) = (q.as_constant(), qp.as_constant()) {
        return closed_form_numeric(m, &a, &b).into_iter().map(Poly::constant).collect();
    }
    (0..=m)
        .map(|j| {
            let sign = if j % 2 == 0 { qi(1) } else { qi(-1) };
            let mut p = Poly::constant(sign * binomial(m as u64, j as u64));
            for i in j..m {
                p = &p * &(q - &Poly::int(i as i64));
            }
            for i in (m - j)..m {
                p = &p * &(qp - &Poly::int(i as i64));
            }
            p
        })
        .collect()
}

/// The closed form at numeric weights.
pub fn closed_form_numeric(m: usize, q: &Q, qp: &Q) -> Vec<Q> {
    (0..=m)
        .map(|j| {
            let mut x = binomial(m as u64, j as u64);
            if j % 2 == 1 {
                x = -x;
            }
            for i in j..m {
                x *= q - qi(i as i64);
            }
            for i in (m - j)..m {
                x *= qp - qi(i as i64);
            }
            x
        })
        .collect()
}

/// The coefficient system at numeric weights.
pub fn system_rows_numeric(m: usize, q: &Q, qp: &Q) -> Matrix {
    (0..m)
        .map(|j| {
            let mut row = vec![qi(0); m + 1];
            row[j + 1] = (q - qi(j as i64)) * qi(j as i64 + 1);
            row[j] = (qp - qi(m as i64 - j as i64 - 1)) * qi((m - j) as i64);
            row
        })
        .collect()
}

/// Rows of the coefficient system, one per `j = 0..M−1`.
pub fn system_rows(m: usize, q: &Poly, qp: &Poly) -> Vec<Vec<Poly>> {
    (0..m)
        .map(|j| {
            let mut row = vec![Poly::zero(); m + 1];
            row[j + 1] = (q - &Poly::int(j as i64)).scale(&qi(j as i64 + 1));
            row[j] = (qp - &Poly::int(m as i64 - j as i64 - 1)).scale(&qi((m - j) as i64));
            row
        })
        .collect()
}

/// The same equations as they arise from coordinate changes on the Riemann sphere.
pub fn sphere_rows(m: usize, q: &Poly, qp: &Poly) -> Vec<Vec<Poly>> {
    (0..m)
        .map(|s| {
            let mut row = vec![Poly::zero(); m + 1];
            row[s] = (&Poly::int((m - s) as i64 - 1) - qp).scale(&qi((m - s) as i64));
            row[s + 1] = (&Poly::int(s as i64) - q).scale(&qi(s as i64 + 1));
            row
        })
        .collect()
}

/// The obstruction equations with the root lengths kept explicit.
pub fn weighted_rows(m: usize, q: &Poly, qp: &Poly, norm_a: &Q, norm_b: &Q) -> Vec<Vec<Poly>> {
    (0..m)
        .map(|j| {
            let mut row = vec![Poly::zero(); m + 1];
            row[j + 1] = (q - &Poly::int(j as i64)).scale(&(qi(j as i64 + 1) * norm_a));
            row[j] = (qp + &Poly::int(j as i64 + 1 - m as i64)).scale(&(qi((m - j) as i64) * norm_b));
            row
        })
        .collect()
}

/// Every obstruction coefficient in the chart change `ζ = −1/z`, for `s + t ≤ M − 1`.
pub fn obstruction_rows(m: usize, q: &Poly, qp: &Poly) -> Vec<Vec<Poly>> {
    let mut rows = Vec::new();
    for s in 0..m {
        for t in 0..(m - s) {
            let mut row = vec![Poly::zero(); m + 1];
            for (j, slot) in row.iter_mut().enumerate().take(m - t + 1).skip(s) {
                let mut c = Poly::constant(binomial(j as u64, (j - s) as u64) * binomial((m - j) as u64, (m - j - t) as u64));
                for l in 1..=(j - s) {
                    c = &c * &(&Poly::int(j as i64 - l as i64) - q);
                }
                for k in 1..=(m - j - t) {
                    c = &c * &(&Poly::int(m as i64 - j as i64 - k as i64) - qp);
                }
                *slot = c;
            }
            rows.push(row);
        }
    }
    rows
}

fn numeric(rows: &[Vec<Poly>]) -> Option<Matrix> {
    rows.iter().map(|r| r.iter().map(|p| p.as_constant()).collect::<Option<Vec<Q>>>()).collect()
}

/// Exact nullspace of a system whose entries are constants.
pub fn numeric_nullspace(rows: &[Vec<Poly>], cols: usize) -> Option<Vec<Vec<Q>>> {
    let m = numeric(rows)?;
    if m.is_empty() {
        return Some((0..cols).map(|i| (0..cols).map(|k| if k == i { qi(1) } else { qi(0) }).collect()).collect());
    }
    Some(linalg::nullspace(&m, cols))
}

fn in_degenerate_range(x: &Poly, m: usize) -> bool {
    x.as_constant().and_then(|c| to_i64(&c)).is_some_and(|v| v >= 0 && (v as usize) < m)
}

pub fn is_degenerate(m: usize, q: &Poly, qp: &Poly) -> bool {
    in_degenerate_range(q, m) && in_degenerate_range(qp, m)
}

pub fn gamma_coefficients(m: usize, q: &Poly, qp: &Poly) -> GammaVector {
    if let (Some(a), Some(b)) = (q.as_constant(), qp.as_constant()) {
        let coefficients: Vec<Poly> = closed_form_numeric(m, &a, &b).into_iter().map(Poly::constant).collect();
        let basis: Vec<Vec<Poly>> = if m == 0 {
            vec![vec![Poly::one()]]
        } else {
            linalg::nullspace(&system_rows_numeric(m, &a, &b), m + 1)
                .into_iter()
                .map(|v| v.into_iter().map(Poly::constant).collect())
                .collect()
        };
        let degenerate = is_degenerate(m, q, qp);
        return GammaVector { order: m, q: q.clone(), q_prime: qp.clone(), coefficients, solution_dim: basis.len(), basis, degenerate };
    }
    let coefficients = closed_form(m, q, qp);
    let degenerate = is_degenerate(m, q, qp);
    let basis: Vec<Vec<Poly>> = match numeric_nullspace(&system_rows(m, q, qp), m + 1) {
        Some(ns) => ns.into_iter().map(|v| v.into_iter().map(Poly::constant).collect()).collect(),
        None => vec![coefficients.clone()],
    };
    GammaVector { order: m, q: q.clone(), q_prime: qp.clone(), coefficients, solution_dim: basis.len(), basis, degenerate }
}

/// Residual of row `j` of the coefficient system.
pub fn residual(v: &[Poly], m: usize, q: &Poly, qp: &Poly, j: usize) -> Poly {
    let rows = system_rows(m, q, qp);
    rows[j].iter().zip(v).fold(Poly::zero(), |acc, (a, b)| &acc + &(a * b))
}
