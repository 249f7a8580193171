//! The majorization partial order on sorted spectra, verdicts with partial-sum
//! gap profiles, and constructive witnesses as chains of two-level mixing
//! operations (T-transforms).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::POLICY;
use crate::states::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Majorizes,
    MajorizedBy,
    Equal,
    Incomparable,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Relation::Majorizes => "Majorizes",
            Relation::MajorizedBy => "MajorizedBy",
            Relation::Equal => "Equal",
            Relation::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

/// Outcome of a partial-sum comparison, with the full gap profile
/// gaps[n-1] = sum_{i<=n} (p_i - q_i).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    pub gaps: Vec<f64>,
}

impl MajorizationVerdict {
    pub fn min_gap(&self) -> f64 {
        self.gaps.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Partial-sum test of Hardy-Littlewood-Polya majorization at tolerance `tol`.
pub fn compare(p: &Spectrum, q: &Spectrum, tol: f64) -> Result<MajorizationVerdict> {
    if p.dim() != q.dim() {
        return Err(Error::DimMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let mut gaps = Vec::with_capacity(p.dim());
    let mut acc = 0.0;
    for (a, b) in p.as_slice().iter().zip(q.as_slice()) {
        acc += a - b;
        gaps.push(acc);
    }
    let all_ge = gaps.iter().all(|&g| g >= -tol);
    let all_le = gaps.iter().all(|&g| g <= tol);
    let relation = match (all_ge, all_le) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Majorizes,
        (false, true) => Relation::MajorizedBy,
        (false, false) => Relation::Incomparable,
    };
    Ok(MajorizationVerdict { relation, gaps })
}

pub fn compare_default(p: &Spectrum, q: &Spectrum) -> Result<MajorizationVerdict> {
    compare(p, q, POLICY.verdict_strict)
}

/// One two-level mixing step: (p_i, p_j) -> (w p_i + (1-w) p_j,
/// (1-w) p_i + w p_j) with w in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTransform {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Constructive witness of p majorizing q: applying the steps in order maps
/// p onto q. At most d - 1 steps.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TTransformChain {
    pub steps: Vec<TTransform>,
}

/// Hardy-Littlewood-Polya construction of a T-transform chain carrying `p`
/// to `q`. Requires `p` to majorize `q` (or equal it) at the strict default
/// tolerance.
pub fn t_transform_witness(p: &Spectrum, q: &Spectrum) -> Result<TTransformChain> {
    let verdict = compare_default(p, q)?;
    match verdict.relation {
        Relation::Majorizes | Relation::Equal => {}
        _ => return Err(Error::NotMajorizing),
    }
    let d = p.dim();
    let target = q.as_slice();
    let mut cur: Vec<f64> = p.as_slice().to_vec();
    let mut steps = Vec::new();
    // Each step matches at least one more coordinate, so d - 1 rounds suffice.
    for _ in 0..d.saturating_sub(1) {
        let tol = POLICY.tie;
        // Largest index with cur > target.
        let Some(hi) = (0..d).rev().find(|&i| cur[i] - target[i] > tol) else {
            break;
        };
        // Smallest index above it with cur < target.
        let Some(lo) = ((hi + 1)..d).find(|&j| target[j] - cur[j] > tol) else {
            break;
        };
        let delta = (cur[hi] - target[hi]).min(target[lo] - cur[lo]);
        let spread = cur[hi] - cur[lo];
        debug_assert!(spread > 0.0);
        let weight = 1.0 - delta / spread;
        cur[hi] -= delta;
        cur[lo] += delta;
        steps.push(TTransform {
            i: hi,
            j: lo,
            weight,
        });
    }
    Ok(TTransformChain { steps })
}

/// Applies a chain of T-transforms to a spectrum; the output is re-sorted
/// non-increasing.
pub fn apply_t_transforms(p: &Spectrum, chain: &TTransformChain) -> Result<Spectrum> {
    let d = p.dim();
    let mut cur: Vec<f64> = p.as_slice().to_vec();
    for step in &chain.steps {
        if step.i >= d || step.j >= d || step.i == step.j {
            return Err(Error::RangeError(format!(
                "T-transform indices ({}, {}) invalid for dim {d}",
                step.i, step.j
            )));
        }
        if !(0.0..=1.0).contains(&step.weight) {
            return Err(Error::RangeError(format!(
                "T-transform weight {} outside [0, 1]",
                step.weight
            )));
        }
        let (a, b) = (cur[step.i], cur[step.j]);
        cur[step.i] = step.weight * a + (1.0 - step.weight) * b;
        cur[step.j] = (1.0 - step.weight) * a + step.weight * b;
    }
    Spectrum::from_unsorted(cur)
}
