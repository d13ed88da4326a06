//! Index tuples for Plücker coordinates, their canonical order, the strata
//! 𝕀ᵏ, and the distinguished index families I_k, I*_k, I^k_{μν}, I^{k*}_{μν}.

use crate::error::{Error, Result};
use itertools::Itertools;
use serde::Serialize;

/// Parameters (s, p, n) of a blow-up space 𝒯_{s,p,n} / ℳ_{s,p,n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GrassParams {
    pub s: usize,
    pub p: usize,
    pub n: usize,
}

impl GrassParams {
    /// Validate 1 ≤ p ≤ n−1 and 1 ≤ s ≤ n−1.
    pub fn new(s: usize, p: usize, n: usize) -> Result<Self> {
        if n < 2 || p == 0 || p >= n || s == 0 || s >= n {
            return Err(Error::InvalidParams(format!(
                "need 1 <= p <= n-1 and 1 <= s <= n-1, got s={s}, p={p}, n={n}"
            )));
        }
        Ok(GrassParams { s, p, n })
    }

    /// r = min{s, n−s, p, n−p}.
    pub fn rank(&self) -> usize {
        self.s
            .min(self.n - self.s)
            .min(self.p)
            .min(self.n - self.p)
    }
}

/// A strictly decreasing tuple (i₁ > i₂ > … > i_p) with entries in 1..=n.
///
/// The derived `Ord` (lexicographic on the decreasing representation) is the
/// canonical order used everywhere: for p=2, n=4 it is
/// (2,1) < (3,1) < (3,2) < (4,1) < (4,2) < (4,3).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    /// Build from a strictly decreasing vector.
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParams("empty index tuple".into()));
        }
        for w in entries.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::InvalidParams(format!(
                    "index tuple {entries:?} is not strictly decreasing"
                )));
            }
        }
        if entries[0] > n || *entries.last().unwrap() == 0 {
            return Err(Error::InvalidParams(format!(
                "index tuple {entries:?} has entries outside 1..={n}"
            )));
        }
        Ok(IndexTuple(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of entries greater than s, i.e. the stratum 𝕀ᵏ containing the
    /// tuple.
    pub fn stratum(&self, s: usize) -> usize {
        self.0.iter().filter(|&&i| i > s).count()
    }

    /// Render as `(i1,i2,...,ip)`.
    pub fn display(&self) -> String {
        format!("({})", self.0.iter().map(|i| i.to_string()).join(","))
    }
}

/// All strictly decreasing p-tuples in 1..=n, in canonical order.
pub fn enumerate_full(p: usize, n: usize) -> Result<Vec<IndexTuple>> {
    if p == 0 || p > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= p <= n, got p={p}, n={n}"
        )));
    }
    let mut all: Vec<IndexTuple> = (1..=n)
        .combinations(p)
        .map(|mut c| {
            c.reverse();
            IndexTuple(c)
        })
        .collect();
    all.sort();
    Ok(all)
}

/// The stratum 𝕀ᵏ: tuples whose first k entries lie in [s+1, n] and whose
/// remaining p−k entries lie in [1, s], in canonical order.  Empty when the
/// required binomials vanish.
pub fn enumerate_stratum(g: &GrassParams, p: usize, k: usize) -> Result<Vec<IndexTuple>> {
    if p == 0 || p > g.n || k > p {
        return Err(Error::InvalidParams(format!(
            "need 1 <= p <= n and 0 <= k <= p, got p={p}, k={k}"
        )));
    }
    let mut out: Vec<IndexTuple> = enumerate_full(p, g.n)?
        .into_iter()
        .filter(|t| t.stratum(g.s) == k)
        .collect();
    out.sort();
    Ok(out)
}

/// Check that the strata 𝕀⁰, …, 𝕀ᵖ partition the full index set and that each
/// has cardinality C(s, p−k)·C(n−s, k).
pub fn partition_check(g: &GrassParams, p: usize) -> Result<bool> {
    let full = enumerate_full(p, g.n)?;
    let mut seen = 0usize;
    for k in 0..=p {
        let stratum = enumerate_stratum(g, p, k)?;
        if stratum.len() != binomial(g.s, p - k) * binomial(g.n - g.s, k) {
            return Ok(false);
        }
        seen += stratum.len();
    }
    Ok(seen == full.len())
}

/// Binomial coefficient as usize (small arguments only).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Identifier of a distinguished index tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpecialIndex {
    /// I_k = (s+k, s+k−1, …, s−p+k+1), 0 ≤ k ≤ p.
    IK { k: usize },
    /// I*_k = (s+k+1, s+k−1, …, s−p+k+2, s−p+k), 1 ≤ k ≤ p−1.
    IStar { k: usize },
    /// I^k_{μν}: I_k with μ removed and ν appended, s−p+k+1 ≤ μ ≤ s,
    /// 1 ≤ ν ≤ s−p+k.
    IMuNu { k: usize, mu: usize, nu: usize },
    /// I^{k*}_{μν}: I_k with μ removed and ν prepended, s+1 ≤ μ ≤ s+k,
    /// s+k+1 ≤ ν ≤ n.
    IStarMuNu { k: usize, mu: usize, nu: usize },
}

fn i_k_run(g: &GrassParams, p: usize, k: usize) -> Result<Vec<usize>> {
    if k > p {
        return Err(Error::InvalidParams(format!("k={k} exceeds p={p}")));
    }
    if g.s + k > g.n || g.s + k + 1 < p + 1 {
        return Err(Error::InvalidParams(format!(
            "I_{k} does not fit inside 1..={} for s={}, p={p}",
            g.n, g.s
        )));
    }
    // (s+k, s+k-1, ..., s-p+k+1)
    Ok((g.s + k + 1 - p..=g.s + k).rev().collect())
}

/// Construct a distinguished index tuple.
pub fn special_index(g: &GrassParams, p: usize, id: SpecialIndex) -> Result<IndexTuple> {
    match id {
        SpecialIndex::IK { k } => IndexTuple::new(i_k_run(g, p, k)?, g.n),
        SpecialIndex::IStar { k } => {
            if k == 0 || k >= p {
                return Err(Error::InvalidParams(format!(
                    "I*_k needs 1 <= k <= p-1, got k={k}, p={p}"
                )));
            }
            let mut v = i_k_run(g, p, k)?;
            // Top bump must stay <= n and the bottom drop must stay >= 1.
            if g.s + k + 1 > g.n || v[v.len() - 1] == 1 {
                return Err(Error::InvalidParams(format!(
                    "I*_{k} does not fit inside 1..={}",
                    g.n
                )));
            }
            v[0] += 1; // s+k -> s+k+1
            let last = v.len() - 1;
            v[last] -= 1; // s-p+k+1 -> s-p+k
            IndexTuple::new(v, g.n)
        }
        SpecialIndex::IMuNu { k, mu, nu } => {
            let run = i_k_run(g, p, k)?;
            let lo = g.s + k + 1 - p; // s-p+k+1
            if !(lo <= mu && mu <= g.s) || nu == 0 || nu + 1 > lo {
                return Err(Error::InvalidParams(format!(
                    "I^{k}_{{{mu},{nu}}} needs s-p+k+1 <= mu <= s and 1 <= nu <= s-p+k"
                )));
            }
            let mut v: Vec<usize> = run.into_iter().filter(|&i| i != mu).collect();
            v.push(nu);
            IndexTuple::new(v, g.n)
        }
        SpecialIndex::IStarMuNu { k, mu, nu } => {
            let run = i_k_run(g, p, k)?;
            if !(g.s + 1 <= mu && mu <= g.s + k) || !(g.s + k + 1 <= nu && nu <= g.n) {
                return Err(Error::InvalidParams(format!(
                    "I^{{{k}*}}_{{{mu},{nu}}} needs s+1 <= mu <= s+k and s+k+1 <= nu <= n"
                )));
            }
            let mut v = vec![nu];
            v.extend(run.into_iter().filter(|&i| i != mu));
            IndexTuple::new(v, g.n)
        }
    }
}

/// All distinguished families a tuple belongs to.
pub fn classify_special(g: &GrassParams, p: usize, t: &IndexTuple) -> Vec<SpecialIndex> {
    let mut out = Vec::new();
    let k = t.stratum(g.s);
    let candidates: Vec<SpecialIndex> = {
        let mut c = vec![SpecialIndex::IK { k }];
        if k >= 1 && k + 1 <= p {
            c.push(SpecialIndex::IStar { k });
        }
        for mu in 1..=g.n {
            for nu in 1..=g.n {
                c.push(SpecialIndex::IMuNu { k, mu, nu });
                c.push(SpecialIndex::IStarMuNu { k, mu, nu });
            }
        }
        c
    };
    for id in candidates {
        if let Ok(c) = special_index(g, p, id) {
            if &c == t {
                out.push(id);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: usize, p: usize, n: usize) -> GrassParams {
        GrassParams::new(s, p, n).unwrap()
    }

    #[test]
    fn canonical_order_p2_n4() {
        let all = enumerate_full(2, 4).unwrap();
        let want = [
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
            vec![4, 1],
            vec![4, 2],
            vec![4, 3],
        ];
        assert_eq!(all.len(), 6);
        for (t, w) in all.iter().zip(want.iter()) {
            assert_eq!(t.entries(), w.as_slice());
        }
    }

    #[test]
    fn full_count_is_binomial() {
        for n in 2..=9 {
            for p in 1..n {
                assert_eq!(enumerate_full(p, n).unwrap().len(), binomial(n, p));
            }
        }
    }

    #[test]
    fn stratum_cardinality_and_partition() {
        // C(s, p-k) * C(n-s, k), strata partition the full set.
        for n in 2..=9usize {
            for s in 1..n {
                for p in 1..n {
                    let gp = g(s, p, n);
                    let mut total = 0;
                    for k in 0..=p {
                        let st = enumerate_stratum(&gp, p, k).unwrap();
                        assert_eq!(
                            st.len(),
                            binomial(s, p - k) * binomial(n - s, k),
                            "s={s} p={p} n={n} k={k}"
                        );
                        total += st.len();
                    }
                    assert_eq!(total, binomial(n, p));
                    assert!(partition_check(&gp, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn stratum_3_2_5_k1() {
        // k=1: first entry in [4,5], second in [1,3]: six tuples.
        let st = enumerate_stratum(&g(3, 2, 5), 2, 1).unwrap();
        let want = [
            vec![4, 1],
            vec![4, 2],
            vec![4, 3],
            vec![5, 1],
            vec![5, 2],
            vec![5, 3],
        ];
        assert_eq!(st.len(), 6);
        for (t, w) in st.iter().zip(want.iter()) {
            assert_eq!(t.entries(), w.as_slice());
        }
    }

    #[test]
    fn special_examples() {
        // I*_1 for s=4, p=3 is (6,4,2).
        let t = special_index(&g(4, 3, 8), 3, SpecialIndex::IStar { k: 1 }).unwrap();
        assert_eq!(t.entries(), &[6, 4, 2]);
        // I^0_{3,1} for s=3, p=2 is (2,1).
        let t = special_index(&g(3, 2, 6), 2, SpecialIndex::IMuNu { k: 0, mu: 3, nu: 1 }).unwrap();
        assert_eq!(t.entries(), &[2, 1]);
        // I_k runs.
        let t = special_index(&g(4, 2, 8), 2, SpecialIndex::IK { k: 0 }).unwrap();
        assert_eq!(t.entries(), &[4, 3]);
        let t = special_index(&g(4, 2, 8), 2, SpecialIndex::IK { k: 2 }).unwrap();
        assert_eq!(t.entries(), &[6, 5]);
        // I^{1*}_{5,7} for s=4, p=2, n=8: run (5,4) minus 5, prepend 7.
        let t = special_index(
            &g(4, 2, 8),
            2,
            SpecialIndex::IStarMuNu { k: 1, mu: 5, nu: 7 },
        )
        .unwrap();
        assert_eq!(t.entries(), &[7, 4]);
    }

    #[test]
    fn classification_round_trip() {
        let gp = g(4, 3, 8);
        for k in 0..=3usize {
            let t = special_index(&gp, 3, SpecialIndex::IK { k }).unwrap();
            assert!(classify_special(&gp, 3, &t).contains(&SpecialIndex::IK { k }));
        }
        let t = special_index(&gp, 3, SpecialIndex::IStar { k: 2 }).unwrap();
        assert!(classify_special(&gp, 3, &t).contains(&SpecialIndex::IStar { k: 2 }));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(g(4, 2, 8).rank(), 2);
        assert_eq!(g(5, 3, 10).rank(), 3);
        assert_eq!(g(4, 4, 8).rank(), 4);
        assert_eq!(g(7, 3, 9).rank(), 2);
    }
}
