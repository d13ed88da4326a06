//! Plücker coordinates of a p-plane in ℂⁿ and the blow-up map 𝒦 given by
//! simultaneous projectivization of the strata.

use crate::error::{Error, Result};
use crate::indices::{enumerate_full, enumerate_stratum, GrassParams, IndexTuple};
use crate::linalg::RatMatrix;
use crate::rat::{parse_rat, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// All Plücker coordinates of a p×n matrix of full rank p.
///
/// `coords[I]` is the maximal minor on the columns of I.  Inside a minor the
/// columns are taken in ascending column order; this is the convention under
/// which the chart normal forms take the sign values asserted elsewhere in
/// the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerVector {
    pub p: usize,
    pub n: usize,
    coords: BTreeMap<IndexTuple, Rat>,
}

impl PluckerVector {
    pub fn coord(&self, t: &IndexTuple) -> &Rat {
        &self.coords[t]
    }

    /// Coordinates in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&IndexTuple, &Rat)> {
        self.coords.iter()
    }

    /// The coordinates indexed by the stratum 𝕀ᵏ, in canonical order.
    pub fn project_stratum(&self, s: usize, k: usize) -> Result<Vec<(IndexTuple, Rat)>> {
        let g = GrassParams::new(s, self.p, self.n)?;
        Ok(enumerate_stratum(&g, self.p, k)?
            .into_iter()
            .map(|t| {
                let v = self.coords[&t].clone();
                (t, v)
            })
            .collect())
    }
}

/// Compute every Plücker coordinate of `m` (a p×n matrix, p <= n).
pub fn plucker_vector(m: &RatMatrix) -> Result<PluckerVector> {
    let (p, n) = (m.nrows(), m.ncols());
    if p == 0 || p > n {
        return Err(Error::InvalidParams(format!(
            "need a p x n matrix with 1 <= p <= n, got {p} x {n}"
        )));
    }
    let mut coords = BTreeMap::new();
    for t in enumerate_full(p, n)? {
        // Ascending column order inside the minor.
        let cols: Vec<usize> = t.entries().iter().rev().map(|&i| i - 1).collect();
        let d = m.select_columns(&cols).det()?;
        coords.insert(t, d);
    }
    if coords.values().all(|v| v.is_zero()) {
        return Err(Error::InvalidParams(
            "matrix does not have full rank p".into(),
        ));
    }
    Ok(PluckerVector { p, n, coords })
}

/// One projectivized stratum component of the blow-up map.
#[derive(Debug, Clone)]
pub struct StratumComponent {
    pub k: usize,
    /// Coordinates in canonical order, normalized so the first nonzero entry
    /// (in canonical order) equals 1.
    pub coords: Vec<(IndexTuple, Rat)>,
}

/// The blow-up map: for each nonempty stratum 𝕀ᵏ, the projectivized Plücker
/// coordinates.  Errors when some nonempty stratum vanishes identically (the
/// point is outside the domain of 𝒦) and names the offending k.
pub fn blowup_map(pv: &PluckerVector, s: usize) -> Result<Vec<StratumComponent>> {
    let mut out = Vec::new();
    for k in 0..=pv.p {
        let coords = pv.project_stratum(s, k)?;
        if coords.is_empty() {
            continue;
        }
        let Some(pivot) = coords.iter().map(|(_, v)| v).find(|v| !v.is_zero()) else {
            return Err(Error::OutsideBlowupDomain { k });
        };
        let pivot = pivot.clone();
        out.push(StratumComponent {
            k,
            coords: coords
                .into_iter()
                .map(|(t, v)| (t, v / &pivot))
                .collect(),
        });
    }
    Ok(out)
}

/// Parse a matrix file: first line `p n`, then p rows of n whitespace
/// separated rationals (`num` or `num/den`).
pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| Error::Parse(format!("bad dimension `{w}`"))))
        .collect::<Result<_>>()?;
    let [p, n] = dims[..] else {
        return Err(Error::Parse("header must be `p n`".into()));
    };
    let mut rows = Vec::with_capacity(p);
    for _ in 0..p {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {p} matrix rows")))?;
        let row: Vec<Rat> = line
            .split_whitespace()
            .map(|w| parse_rat(w).ok_or_else(|| Error::Parse(format!("bad rational `{w}`"))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after matrix rows".into()));
    }
    RatMatrix::from_rows(rows)
}
