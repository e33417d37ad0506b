//! Excluded weights of the projective splitting: the bundle `x(k)a_1…a_{n−1}` on `A_n`.

use crate::central::same_central_character;
use crate::error::Result;
use crate::poly::Poly;
use crate::rational::{qi, Q};
use crate::repthy::branch_slots_a;
use crate::rootsys::{LieType, RootSystem};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedWeight {
    /// Crossed label of the source bundle.
    pub k: i64,
    /// Order of the operator that obstructs the splitting.
    pub order: usize,
    /// Node index `j` (0 for the crossed node).
    pub node: usize,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub operator: String,
}

fn fmt_labels(v: &[i64]) -> String {
    let mut s = format!("x({})", v[0]);
    for x in &v[1..] {
        s.push_str(&format!("o({x})"));
    }
    s
}

/// Weights `k` where an order-`l` invariant operator leaves `x(k)a`, for `1 ≤ l ≤ M`:
/// `k = l − 1` (`j = 0`) and `k = −(a_1+…+a_j + j − l + 1)` when `a_j ≥ l`.
/// Ordered by `l`, then `j`.
pub fn projective_excluded_weights(a: &[i64], m: usize) -> Vec<ExcludedWeight> {
    let n = a.len() + 1;
    let mut out = Vec::new();
    for l in 1..=m as i64 {
        for j in 0..n {
            let k = if j == 0 {
                l - 1
            } else {
                if a[j - 1] < l {
                    continue;
                }
                -(a[..j].iter().sum::<i64>() + j as i64 - l + 1)
            };
            let mut source = vec![k];
            source.extend_from_slice(a);
            let mut target = source.clone();
            if j == 0 {
                target[0] = k - 2 * l;
                if n > 1 {
                    target[1] += l;
                }
            } else {
                target[0] = k - l;
                target[j] -= l;
                if j + 1 < n {
                    target[j + 1] += l;
                }
            }
            let operator = format!("{} -> {} (order {l})", fmt_labels(&source), fmt_labels(&target));
            out.push(ExcludedWeight { k, order: l as usize, node: j, source, target, operator });
        }
    }
    out
}

/// Second route: integer `k` in `range` where slot 0 of the M-module shares its central character
/// with some component of a deeper slot.
pub fn excluded_by_central_character(a: &[i64], m: i64, range: std::ops::RangeInclusive<i64>) -> Result<BTreeSet<i64>> {
    let n = a.len() + 1;
    let rs = RootSystem::new(LieType::a(n))?;
    let series = branch_slots_a(n, a, m, &Poly::var("k"));
    let mut out = BTreeSet::new();
    for k in range {
        let at = |v: &[Poly]| -> Vec<Q> { v.iter().map(|x| x.substitute_q("k", &qi(k)).as_constant().unwrap_or_else(|| qi(0))).collect() };
        let slot0: Vec<Q> = std::iter::once(qi(k)).chain(a.iter().map(|&x| qi(x))).collect();
        'slots: for slot in series.slots.iter().skip(1) {
            for (labels, _) in &slot.components.summands {
                if same_central_character(&rs, &slot0, &at(labels))? {
                    out.insert(k);
                    break 'slots;
                }
            }
        }
    }
    Ok(out)
}

/// `v` values for `⊙^m T(v)`-type bundles, where `k = v + shift`.
pub fn in_terms_of(weights: &[ExcludedWeight], shift: i64) -> Vec<i64> {
    weights.iter().map(|w| w.k - shift).collect()
}
