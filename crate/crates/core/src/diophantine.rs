//! Dimensions in which two intermediate skeleton centroids coincide.
//!
//! Skeletons `k1 < k2` of the standard simplex in `R^N` share a centroid
//! exactly when `k1 = a² − 1`, `k2 = b² − 1` and `N = Q(a, b)` with
//! `Q(a, b) = b² + ab + a² − (b + a) − 1`. This module enumerates that
//! family and checks it against the exhaustive scan in
//! [`crate::centroids::coincidence_groups`].

use std::collections::BTreeMap;

use crate::centroids::{centroid_coefficient, coincidence_groups, coincident_pairs};
use crate::exact::QuadraticNumber;
use crate::{par, Result};

/// One solution of `N = Q(a, b)` with its shared centroid coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceRow {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub k1: u64,
    pub k2: u64,
    pub coordinate: QuadraticNumber,
}

/// `Q(a, b) = (b² + ab + a²) − (b + a) − 1`.
pub fn q_form(a: u64, b: u64) -> u128 {
    let (a, b) = (a as u128, b as u128);
    (b * b + a * b + a * a) - (b + a) - 1
}

/// All rows with `2 ≤ a < b` and `Q(a, b) ≤ n_max`, sorted by `(N, k1)`.
///
/// `a = 1` would give `k1 = 0`, the vertex skeleton, which is not an
/// intermediate skeleton.
pub fn enumerate_coincidences(n_max: u64) -> Result<Vec<CoincidenceRow>> {
    let limit = n_max as u128;
    let mut params = Vec::new();
    let mut a = 2u64;
    while q_form(a, a + 1) <= limit {
        let mut b = a + 1;
        while q_form(a, b) <= limit {
            params.push((a, b));
            b += 1;
        }
        a += 1;
    }
    let mut rows = par::map_slice(&params, |&(a, b)| {
        let n = q_form(a, b) as u64;
        let (k1, k2) = (a * a - 1, b * b - 1);
        debug_assert!(1 <= k1 && k1 < k2 && k2 < n);
        Ok(CoincidenceRow { a, b, n, k1, k2, coordinate: centroid_coefficient(n, k1)? })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.n, r.k1));
    Ok(rows)
}

/// A dimension with every `(a, b)` pair that reaches it.
pub type SharedDimension = (u64, Vec<(u64, u64)>);

/// Dimensions reached by more than one `(a, b)` pair.
pub fn duplicate_dimensions(n_max: u64) -> Result<Vec<SharedDimension>> {
    let mut by_n: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for row in enumerate_coincidences(n_max)? {
        by_n.entry(row.n).or_default().push((row.a, row.b));
    }
    Ok(by_n.into_iter().filter(|(_, v)| v.len() > 1).collect())
}

/// A dimension where the exhaustive scan and the parametrisation disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub n: u64,
    pub exhaustive: Vec<(u64, u64)>,
    pub parametrized: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub n_max: u64,
    /// Coincident pairs found by the exact scan, keyed by dimension.
    pub exhaustive: BTreeMap<u64, Vec<(u64, u64)>>,
    /// Pairs predicted by `N = Q(a, b)`, keyed by dimension.
    pub parametrized: BTreeMap<u64, Vec<(u64, u64)>>,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerificationReport {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn row_count(&self) -> usize {
        self.parametrized.values().map(Vec::len).sum()
    }
}

/// Compare the exhaustive exact scan with the parametrised family for every
/// `2 ≤ N ≤ n_max`.
pub fn verify_theorem10(n_max: u64) -> Result<VerificationReport> {
    let dims: Vec<u64> = (2..=n_max).collect();
    let scanned = par::map_slice(&dims, |&n| Ok((n, coincident_pairs(n)?)))
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut parametrized: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for row in enumerate_coincidences(n_max)? {
        parametrized.entry(row.n).or_default().push((row.k1, row.k2));
    }
    for v in parametrized.values_mut() {
        v.sort();
    }

    let mut exhaustive = BTreeMap::new();
    let mut discrepancies = Vec::new();
    for (n, mut pairs) in scanned {
        pairs.sort();
        let predicted = parametrized.get(&n).cloned().unwrap_or_default();
        if pairs != predicted {
            discrepancies.push(Discrepancy { n, exhaustive: pairs.clone(), parametrized: predicted });
        }
        if !pairs.is_empty() {
            exhaustive.insert(n, pairs);
        }
    }
    Ok(VerificationReport { n_max, exhaustive, parametrized, discrepancies })
}

/// Dimensions `N ≤ n_max` with three or more intermediate skeletons sharing
/// a centroid, with the offending groups.
pub fn triples(n_max: u64) -> Result<Vec<(u64, Vec<u64>)>> {
    let dims: Vec<u64> = (2..=n_max).collect();
    let found = par::map_slice(&dims, |&n| {
        let big: Vec<(u64, Vec<u64>)> = coincidence_groups(n)?
            .into_iter()
            .filter(|g| g.len() >= 3)
            .map(|g| (n, g))
            .collect();
        Ok(big)
    });
    let mut out = Vec::new();
    for r in found {
        out.extend(r?);
    }
    Ok(out)
}

/// True when no `N ≤ n_max` has three intermediate skeletons with a common
/// centroid.
pub fn no_triple(n_max: u64) -> Result<bool> {
    Ok(triples(n_max)?.is_empty())
}
