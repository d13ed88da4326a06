//! B-invariant curve families of 𝒯_{s,p,n}, their intersection numbers with
//! the stable divisors, and anti-canonical degrees.
//!
//! Each degree is computed twice — by pairing the curve row with the
//! canonical-bundle expansion, and from the closed-form lemmas — and the two
//! must agree.

use crate::error::{Error, Result};
use crate::indices::GrassParams;
use crate::picard::TPic;

/// A B-invariant curve (closure of a 1-dimensional B-orbit).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    /// γ_l, 0 <= l <= r−1.
    Gamma { l: usize },
    /// ζ^l_j, 0 <= l <= r, j in [2, r−l] ∪ [r−l+2, r].
    Zeta { l: usize, j: usize },
    /// ζ^{l,k}_{u,v}; k in [1, r−l] (b-side) or [r−l+1, r] (a-side).
    ZetaUv { l: usize, k: usize, u: usize, v: usize },
    /// δ^l_{m1,m2}, 1 <= m1 <= p−l, 1 <= m2 <= s−p+l.
    SmallDelta { l: usize, m1: usize, m2: usize },
    /// Δ^l_{m1,m2}, 1 <= m1 <= n−s−l, 1 <= m2 <= l.
    CapDelta { l: usize, m1: usize, m2: usize },
}

impl Curve {
    pub fn name(&self) -> String {
        match self {
            Curve::Gamma { l } => format!("gamma_{l}"),
            Curve::Zeta { l, j } => format!("zeta^{l}_{j}"),
            Curve::ZetaUv { l, k, u, v } => format!("zeta^{l},{k}_{u},{v}"),
            Curve::SmallDelta { l, m1, m2 } => format!("delta^{l}_{m1},{m2}"),
            Curve::CapDelta { l, m1, m2 } => format!("Delta^{l}_{m1},{m2}"),
        }
    }
}

/// Intersection numbers of a curve with H, D⁻_1..D⁻_r, D⁺_1..D⁺_r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub h: i64,
    pub dminus: Vec<i64>,
    pub dplus: Vec<i64>,
}

impl CurveClass {
    fn new(r: usize) -> Self {
        CurveClass {
            h: 0,
            dminus: vec![0; r],
            dplus: vec![0; r],
        }
    }

    /// Add `c` at D⁻_i if 1 <= i <= r (entries at out-of-range indices are
    /// absent divisors and contribute nothing).
    fn dm(&mut self, i: usize, c: i64) {
        if (1..=self.dminus.len()).contains(&i) {
            self.dminus[i - 1] += c;
        }
    }

    fn dp(&mut self, i: usize, c: i64) {
        if (1..=self.dplus.len()).contains(&i) {
            self.dplus[i - 1] += c;
        }
    }
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("invalid curve parameters: {what}")))
    }
}

/// Validate the curve against the standing assumption and family ranges.
pub fn validate(g: &GrassParams, c: &Curve) -> Result<()> {
    if 2 * g.p > g.n || g.n > 2 * g.s {
        return Err(Error::InvalidParams("need 2p <= n <= 2s".into()));
    }
    let GrassParams { s, p, n } = *g;
    let r = g.rank();
    match *c {
        Curve::Gamma { l } => check(l <= r - 1, "gamma_l needs 0 <= l <= r-1"),
        Curve::Zeta { l, j } => check(
            l <= r && 2 <= j && j <= r && j != r - l + 1 && (j <= r - l || j >= r - l + 2),
            "zeta^l_j needs 0 <= l <= r and j in [2,r-l] u [r-l+2,r]",
        ),
        Curve::ZetaUv { l, k, u, v } => {
            check(l <= r && 1 <= k && k <= r, "zeta^{l,k}_{u,v} needs 0 <= l <= r, 1 <= k <= r")?;
            if k <= r - l {
                let ok = (u == l + k && s + l + k + 1 <= v && v <= n)
                    || (v == s + l + k && l + k + 1 <= u && u <= p);
                check(ok, "b-side zeta^{l,k}_{u,v} index pattern")
            } else {
                let ok = (u == r - k + 1 && 1 <= v && v <= s - p + r - k)
                    || (v == s - p + r - k + 1 && 1 <= u && u <= r - k);
                check(ok, "a-side zeta^{l,k}_{u,v} index pattern")
            }
        }
        Curve::SmallDelta { l, m1, m2 } => check(
            l <= r && 1 <= m1 && l + m1 <= p && 1 <= m2 && m2 <= s - p + l,
            "delta^l_{m1,m2} needs 1 <= m1 <= p-l, 1 <= m2 <= s-p+l",
        ),
        Curve::CapDelta { l, m1, m2 } => check(
            1 <= l && l <= r && 1 <= m1 && l + m1 <= n - s && 1 <= m2 && m2 <= l,
            "Delta^l_{m1,m2} needs 1 <= m1 <= n-s-l, 1 <= m2 <= l",
        ),
    }
}

/// Intersection numbers of the curve with H and the stable divisors.
pub fn curve_class(g: &GrassParams, c: &Curve) -> Result<CurveClass> {
    validate(g, c)?;
    let r = g.rank();
    let GrassParams { s, .. } = *g;
    let p = g.p;
    let mut row = CurveClass::new(r);
    match *c {
        Curve::Gamma { l } => {
            row.h = 1;
            row.dm(l + 1, 1);
            row.dm(l + 2, -1);
            row.dp(r - l, 1);
            row.dp(r - l + 1, -1);
        }
        Curve::Zeta { l, j } => {
            if j <= r - l {
                row.dm(l + j - 1, -1);
                row.dm(l + j, 2);
                row.dm(l + j + 1, -1);
            } else {
                row.dp(j - 1, -1);
                row.dp(j, 2);
                row.dp(j + 1, -1);
            }
        }
        Curve::ZetaUv { l, k, u, v } => {
            if k <= r - l {
                row.dm(l + k, -1);
                row.dm(l + k + 1, 1);
                if u == l + k {
                    row.dm(v - s, 1);
                    row.dm(v - s + 1, -1);
                } else {
                    row.dm(u, 1);
                    row.dm(u + 1, -1);
                }
            } else {
                row.dp(k, -1);
                row.dp(k + 1, 1);
                if u == r - k + 1 {
                    row.dp(s - p + r + 1 - v, 1);
                    row.dp(s - p + r + 2 - v, -1);
                } else {
                    row.dp(r + 1 - u, 1);
                    row.dp(r + 2 - u, -1);
                }
            }
        }
        Curve::SmallDelta { l, m1, m2 } => {
            row.h = 1;
            row.dm(l + m1, 1);
            row.dm(l + m1 + 1, -1);
            row.dp(r - l + m2, 1);
            row.dp(r - l + m2 + 1, -1);
        }
        Curve::CapDelta { l, m1, m2 } => {
            row.h = 1;
            row.dm(l + m1, 1);
            row.dm(l + m1 + 1, -1);
            row.dp(r - l + m2, 1);
            row.dp(r - l + m2 + 1, -1);
        }
    }
    Ok(row)
}

/// −K_𝒯 · curve from the closed-form degree lemmas.
pub fn closed_form_degree(g: &GrassParams, c: &Curve) -> Result<i64> {
    validate(g, c)?;
    let r = g.rank();
    let GrassParams { s, p, n } = *g;
    let (si, pi, ni, ri) = (s as i64, p as i64, n as i64, r as i64);
    Ok(match *c {
        Curve::Gamma { l } => {
            if r == 1 {
                2
            } else if l == 0 || l == r - 1 {
                1
            } else {
                0
            }
        }
        Curve::Zeta { l, j } => {
            if j <= r - l {
                if j == r - l {
                    3
                } else {
                    2
                }
            } else if j == r {
                3
            } else {
                2
            }
        }
        Curve::ZetaUv { l, k, u, v } => {
            let (li, ki, ui, vi) = (l as i64, k as i64, u as i64, v as i64);
            if k <= r - l {
                if u == l + k {
                    if v <= r + s - 1 {
                        2 * (vi - si - li - ki)
                    } else if v == r + s {
                        2 * (ri - li - ki) + 1
                    } else if k == r - l {
                        ni - si + pi - 2 * ri
                    } else {
                        ni - si + pi - 2 * (li + ki) + 1
                    }
                } else if u <= r - 1 {
                    2 * (ui - li - ki)
                } else if u == r {
                    2 * (ri - li - ki) + 1
                } else if k == r - l {
                    ni - si + pi - 2 * ri
                } else {
                    ni - si + pi - 2 * (li + ki) + 1
                }
            } else if u == r - k + 1 {
                if v >= s - p + 2 {
                    2 * (si - pi + ri - ki + 1 - vi)
                } else if v == s - p + 1 {
                    2 * (ri - ki) + 1
                } else if k == r {
                    si - pi
                } else {
                    2 * (ri - ki) + si - pi + 1
                }
            } else if u >= 2 {
                2 * (ri - ki + 1 - ui)
            } else {
                2 * (ri - ki) + 1
            }
        }
        Curve::SmallDelta { l, m1, m2 } => {
            let (li, m1i, m2i) = (l as i64, m1 as i64, m2 as i64);
            if m1 + l <= r - 1 {
                if m2 + 1 <= l {
                    2 * m1i + 2 * m2i - 2
                } else if m2 == l {
                    2 * m1i + 2 * li - 1
                } else {
                    2 * m1i + 2 * li - 1 + si - pi
                }
            } else if m1 + l == r {
                if m2 + 1 <= l {
                    2 * (ri - li + m2i) - 1
                } else if m2 == l {
                    2 * ri
                } else {
                    2 * ri + si - pi
                }
            } else if m2 + 1 <= l {
                2 * (ri - li + m2i) - 1 + si + pi - ni
            } else if m2 == l {
                ni - si + pi
            } else {
                ni
            }
        }
        Curve::CapDelta { l, m1, m2 } => {
            let (li, m1i, m2i) = (l as i64, m1 as i64, m2 as i64);
            if m1 + l <= r - 1 {
                if m2 + 1 <= l {
                    2 * m1i + 2 * m2i - 2
                } else {
                    2 * m1i + 2 * li - 1
                }
            } else if m1 + l == r {
                if m2 + 1 <= l {
                    2 * (ri - li + m2i) - 1
                } else {
                    2 * ri
                }
            } else if m2 + 1 <= l {
                2 * (ri - li + m2i) - 1 + ni - si - pi
            } else {
                ni - si + pi
            }
        }
    })
}

/// −K_𝒯 · curve by pairing with the canonical-bundle coefficients,
/// cross-checked against the closed form.
pub fn antik_degree_t(g: &GrassParams, c: &Curve) -> Result<i64> {
    let row = curve_class(g, c)?;
    let t = TPic::new(*g)?;
    let (kh, kdp, kdm) = t.canonical_generic();
    let mut deg = kh * row.h;
    for i in 0..t.r {
        deg += kdm[i] * row.dminus[i] + kdp[i] * row.dplus[i];
    }
    deg = -deg;
    let cf = closed_form_degree(g, c)?;
    if deg != cf {
        return Err(Error::CrossCheck(format!(
            "-K.{} at (s,p,n)=({},{},{}): pairing gives {deg}, closed form gives {cf}",
            c.name(),
            g.s,
            g.p,
            g.n
        )));
    }
    Ok(deg)
}

/// (−K_𝒯 − D⁻_1) · curve; for curves inside ℳ = D⁻_1 this is −K_ℳ · curve
/// by adjunction.
pub fn antik_degree_m(g: &GrassParams, c: &Curve) -> Result<i64> {
    let deg_t = antik_degree_t(g, c)?;
    let row = curve_class(g, c)?;
    Ok(deg_t - row.dminus[0])
}

/// All B-invariant curves of 𝒯_{s,p,n}.
pub fn enumerate_t(g: &GrassParams) -> Result<Vec<Curve>> {
    if 2 * g.p > g.n || g.n > 2 * g.s {
        return Err(Error::InvalidParams("need 2p <= n <= 2s".into()));
    }
    let r = g.rank();
    let GrassParams { s, p, n } = *g;
    let mut out = Vec::new();
    for l in 0..r {
        out.push(Curve::Gamma { l });
    }
    for l in 0..=r {
        for j in 2..=r {
            if j == r - l + 1 {
                continue;
            }
            out.push(Curve::Zeta { l, j });
        }
        for k in 1..=r.saturating_sub(l) {
            for v in s + l + k + 1..=n {
                out.push(Curve::ZetaUv { l, k, u: l + k, v });
            }
            for u in l + k + 1..=p {
                out.push(Curve::ZetaUv { l, k, u, v: s + l + k });
            }
        }
        for k in (r - l + 1).max(1)..=r {
            for v in 1..=s + r - p - k {
                out.push(Curve::ZetaUv { l, k, u: r - k + 1, v });
            }
            for u in 1..=r - k {
                out.push(Curve::ZetaUv { l, k, u, v: s - p + r - k + 1 });
            }
        }
        for m1 in 1..=p.saturating_sub(l) {
            for m2 in 1..=s - p + l {
                out.push(Curve::SmallDelta { l, m1, m2 });
            }
        }
        if l >= 1 {
            for m1 in 1..=(n - s).saturating_sub(l) {
                for m2 in 1..=l {
                    out.push(Curve::CapDelta { l, m1, m2 });
                }
            }
        }
    }
    Ok(out)
}

/// The B-invariant curves lying in ℳ_{s,p,n} (the l = 0 families).
pub fn enumerate_m(g: &GrassParams) -> Result<Vec<Curve>> {
    Ok(enumerate_t(g)?
        .into_iter()
        .filter(|c| match c {
            Curve::Zeta { l, .. }
            | Curve::ZetaUv { l, .. }
            | Curve::SmallDelta { l, .. }
            | Curve::CapDelta { l, .. } => *l == 0,
            Curve::Gamma { .. } => false,
        })
        .collect())
}

/// Nef/ample verdict for −K_𝒯 with a witness curve of minimal degree.
#[derive(Debug, Clone)]
pub struct NefAmple {
    pub nef: bool,
    pub ample: bool,
    pub min_degree: i64,
    pub witness: Curve,
}

pub fn nef_ample_t(g: &GrassParams) -> Result<NefAmple> {
    let curves = enumerate_t(g)?;
    let mut best: Option<(i64, Curve)> = None;
    for c in curves {
        let d = antik_degree_t(g, &c)?;
        if best.as_ref().map_or(true, |(m, _)| d < *m) {
            best = Some((d, c));
        }
    }
    let (min_degree, witness) =
        best.ok_or_else(|| Error::InvalidParams("no invariant curves".into()))?;
    Ok(NefAmple {
        nef: min_degree >= 0,
        ample: min_degree > 0,
        min_degree,
        witness,
    })
}

/// Minimal degree of −K_ℳ on the invariant curves of ℳ (positive: ℳ is
/// Fano); `None` when ℳ has no invariant curves (r = 1 boundary cases have
/// some unless the index ranges are all empty).
pub fn min_antik_degree_m(g: &GrassParams) -> Result<Option<i64>> {
    let mut best: Option<i64> = None;
    for c in enumerate_m(g)? {
        let d = antik_degree_m(g, &c)?;
        best = Some(best.map_or(d, |m| m.min(d)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_normalized(max_n: usize) -> Vec<GrassParams> {
        let mut v = Vec::new();
        for n in 2..=max_n {
            for s in 1..n {
                for p in 1..n {
                    if 2 * p <= n && n <= 2 * s {
                        v.push(GrassParams::new(s, p, n).unwrap());
                    }
                }
            }
        }
        v
    }

    #[test]
    fn pairing_matches_closed_forms() {
        for g in all_normalized(9) {
            for c in enumerate_t(&g).unwrap() {
                antik_degree_t(&g, &c).unwrap_or_else(|e| panic!("{e}"));
            }
        }
    }

    #[test]
    fn antik_t_nef_and_ample_iff_rank_le_2() {
        for g in all_normalized(9) {
            let na = nef_ample_t(&g).unwrap();
            assert!(na.nef, "-K_T not nef at {g:?}: {:?}", na.witness);
            assert_eq!(na.ample, g.rank() <= 2, "ampleness at {g:?}");
            if g.rank() >= 3 {
                // γ_l, 1 <= l <= r−2, are explicit zero-degree witnesses.
                for l in 1..=g.rank() - 2 {
                    assert_eq!(antik_degree_t(&g, &Curve::Gamma { l }).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn antik_m_positive() {
        for g in all_normalized(9) {
            if let Some(min) = min_antik_degree_m(&g).unwrap() {
                assert!(min >= 1, "-K_M not ample at {g:?} (min degree {min})");
            }
        }
    }

    #[test]
    fn m_side_pairing_agrees_with_adjunction() {
        // −K_M · γ computed from the mkan coefficients and the D⁻ rows must
        // equal (−K_T − D⁻_1) · γ for the curves inside ℳ.
        for g in all_normalized(9) {
            let r = g.rank();
            for c in enumerate_m(&g).unwrap() {
                let row = curve_class(&g, &c).unwrap();
                // Pair the mkan coefficients with γ·H and γ·Ď_i = γ·D⁻_i.
                let GrassParams { s, p, n } = g;
                let mut deg = -(n as i64) * row.h + (p * (n - s)) as i64 * row.dminus[0];
                for i in 2..=r {
                    deg += (((p + 1 - i) * (n - s + 1 - i)) as i64 - 1) * row.dminus[i - 1];
                }
                deg = -deg;
                let want = antik_degree_m(&g, &c).unwrap();
                assert_eq!(deg, want, "curve {} at {g:?}", c.name());
            }
        }
    }

    #[test]
    fn spec_example_5_3_10_not_ample() {
        let g = GrassParams::new(5, 3, 10).unwrap();
        let na = nef_ample_t(&g).unwrap();
        assert!(na.nef);
        assert!(!na.ample);
        assert_eq!(antik_degree_t(&g, &Curve::Gamma { l: 1 }).unwrap(), 0);
    }

    #[test]
    fn rejects_invalid_curves() {
        let g = GrassParams::new(4, 2, 6).unwrap();
        assert!(validate(&g, &Curve::Gamma { l: 2 }).is_err());
        assert!(validate(&g, &Curve::Zeta { l: 1, j: 2 }).is_err()); // j = r−l+1
        assert!(validate(&g, &Curve::CapDelta { l: 0, m1: 1, m2: 1 }).is_err());
    }
}
