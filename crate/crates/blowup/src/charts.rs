//! Van der Waerden normal-form charts Γ_l^τ of the blow-up, the chart
//! coordinates B⃗ᵏ / X̃ / Ỹ, the normal-form claims for the distinguished
//! Plücker coordinates, and the ℂ*-action weights.
//!
//! Charts exist for p <= s; the number of B-vectors is r = min{p, n−s}
//! (tuples have length p when p <= n−s and length n−s otherwise, which is r
//! in both regimes).

use crate::error::{Error, Result};
use crate::indices::{special_index, GrassParams, SpecialIndex};
use crate::linalg::RatMatrix;
use crate::poly::MultiPoly;
use crate::rat::{rat, ratq, Rat};
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// One chart coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coord {
    /// Leading coordinate b_{i_k j_k} of the k-th vector (1 <= k <= r−l).
    LeadB { k: usize },
    /// Leading coordinate a_{i_k j_k} of the k-th vector (r−l+1 <= k <= r).
    LeadA { k: usize },
    /// ξ^{(k)}_{i_k, t}: the row entry of vector k at column label t.
    XiRow { k: usize, t: usize },
    /// ξ^{(k)}_{t, j_k}: the column entry of vector k at row label t.
    XiCol { k: usize, t: usize },
    /// X̃ entry x_{t,u} (1 <= t <= l, s+l+1 <= u <= n).
    X { t: usize, u: usize },
    /// Ỹ entry y_{t,u} (l+1 <= t <= p, 1 <= u <= s−p+l).
    Y { t: usize, u: usize },
}

/// A chart index τ ∈ 𝕁_l: the row labels i_k and column labels j_k of the r
/// vectors (b-type for k <= r−l, a-type afterwards).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub g: GrassParams,
    pub l: usize,
    pub i_row: Vec<usize>,
    pub j_row: Vec<usize>,
    coords: Vec<Coord>,
    index_of: BTreeMap<Coord, usize>,
}

/// A point of a chart: rationals aligned with [`Chart::coords`].
pub type ChartPoint = Vec<Rat>;

impl Chart {
    /// Validate and build a chart for given τ.
    pub fn new(g: GrassParams, l: usize, i_row: Vec<usize>, j_row: Vec<usize>) -> Result<Self> {
        let GrassParams { s, p, n } = g;
        if p > s {
            return Err(Error::InvalidParams(format!(
                "charts require p <= s, got p={p}, s={s}"
            )));
        }
        let r = p.min(n - s);
        if l > r {
            return Err(Error::InvalidParams(format!("need 0 <= l <= r={r}, got l={l}")));
        }
        if i_row.len() != r || j_row.len() != r {
            return Err(Error::InvalidParams(format!(
                "chart index must list r={r} row and column labels"
            )));
        }
        let distinct = |v: &[usize]| {
            let mut w = v.to_vec();
            w.sort_unstable();
            w.dedup();
            w.len() == v.len()
        };
        let b_i = &i_row[..r - l];
        let b_j = &j_row[..r - l];
        let a_i = &i_row[r - l..];
        let a_j = &j_row[r - l..];
        if !b_i.iter().all(|&i| l + 1 <= i && i <= p)
            || !b_j.iter().all(|&j| s + l + 1 <= j && j <= n)
            || !a_i.iter().all(|&i| 1 <= i && i <= l)
            || !a_j.iter().all(|&j| 1 <= j && j <= s - p + l)
            || !distinct(b_i)
            || !distinct(b_j)
            || !distinct(a_i)
            || !distinct(a_j)
        {
            return Err(Error::InvalidParams(format!(
                "invalid chart index for l={l}: i={i_row:?}, j={j_row:?}"
            )));
        }
        let mut chart = Chart {
            g,
            l,
            i_row,
            j_row,
            coords: Vec::new(),
            index_of: BTreeMap::new(),
        };
        chart.coords = chart.build_coords();
        chart.index_of = chart
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        Ok(chart)
    }

    /// The canonical chart τ_l: rows (l+1, …, r, l, …, 1), columns
    /// (s+l+1, …, s+r, s−p+l, …, s−p+1).
    pub fn canonical(g: GrassParams, l: usize) -> Result<Self> {
        let GrassParams { s, p, n } = g;
        if p > s {
            return Err(Error::InvalidParams(format!(
                "charts require p <= s, got p={p}, s={s}"
            )));
        }
        let r = p.min(n - s);
        if l > r {
            return Err(Error::InvalidParams(format!("need 0 <= l <= r={r}, got l={l}")));
        }
        let mut i_row: Vec<usize> = (l + 1..=r).collect();
        i_row.extend((1..=l).rev());
        let mut j_row: Vec<usize> = (s + l + 1..=s + r).collect();
        j_row.extend((s - p + 1..=s - p + l).rev());
        Chart::new(g, l, i_row, j_row)
    }

    pub fn r(&self) -> usize {
        self.g.p.min(self.g.n - self.g.s)
    }

    fn is_b(&self, k: usize) -> bool {
        k <= self.r() - self.l
    }

    /// Column labels of the ξ-row of vector k (ascending).
    fn xi_row_labels(&self, k: usize) -> Vec<usize> {
        let GrassParams { s, p, n } = self.g;
        let (range, taken): (Vec<usize>, &[usize]) = if self.is_b(k) {
            ((s + self.l + 1..=n).collect(), &self.j_row[..k])
        } else {
            (
                (1..=s - p + self.l).collect(),
                &self.j_row[self.r() - self.l..k],
            )
        };
        range.into_iter().filter(|t| !taken.contains(t)).collect()
    }

    /// Row labels of the ξ-column of vector k (ascending).
    fn xi_col_labels(&self, k: usize) -> Vec<usize> {
        let p = self.g.p;
        let (range, taken): (Vec<usize>, &[usize]) = if self.is_b(k) {
            ((self.l + 1..=p).collect(), &self.i_row[..k])
        } else {
            ((1..=self.l).collect(), &self.i_row[self.r() - self.l..k])
        };
        range.into_iter().filter(|t| !taken.contains(t)).collect()
    }

    fn build_coords(&self) -> Vec<Coord> {
        let GrassParams { s, p, n } = self.g;
        let (r, l) = (self.r(), self.l);
        let mut out = Vec::new();
        for k in 1..=r {
            out.push(if k <= r - l {
                Coord::LeadB { k }
            } else {
                Coord::LeadA { k }
            });
            for t in self.xi_row_labels(k) {
                out.push(Coord::XiRow { k, t });
            }
            for t in self.xi_col_labels(k) {
                out.push(Coord::XiCol { k, t });
            }
        }
        for t in 1..=l {
            for u in s + l + 1..=n {
                out.push(Coord::X { t, u });
            }
        }
        for t in l + 1..=p {
            for u in 1..=s - p + l {
                out.push(Coord::Y { t, u });
            }
        }
        out
    }

    /// The chart coordinates in canonical listing order.
    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Human-readable coordinate name.
    pub fn coord_name(&self, c: &Coord) -> String {
        match *c {
            Coord::LeadB { k } => format!("b({},{})", self.i_row[k - 1], self.j_row[k - 1]),
            Coord::LeadA { k } => format!("a({},{})", self.i_row[k - 1], self.j_row[k - 1]),
            Coord::XiRow { k, t } => format!("xi^({k})({},{t})", self.i_row[k - 1]),
            Coord::XiCol { k, t } => format!("xi^({k})({t},{})", self.j_row[k - 1]),
            Coord::X { t, u } => format!("x({t},{u})"),
            Coord::Y { t, u } => format!("y({t},{u})"),
        }
    }

    fn coord_index(&self, c: Coord) -> usize {
        self.index_of[&c]
    }

    /// Value of a coordinate at a point.
    pub fn value(&self, pt: &ChartPoint, c: Coord) -> Rat {
        pt[self.coord_index(c)].clone()
    }

    /// ℂ*-action weights: the leading coordinate of the first a-vector has
    /// weight −1, the leading coordinate of the first b-vector weight +1,
    /// everything else weight 0.  For l=0 only the +1 weight appears, for
    /// l=r only the −1 weight.
    pub fn cstar_weights(&self) -> Vec<(Coord, i64)> {
        let (r, l) = (self.r(), self.l);
        self.coords
            .iter()
            .map(|&c| {
                let w = match c {
                    Coord::LeadB { k } if k == 1 && l < r => 1,
                    Coord::LeadA { k } if k == r - l + 1 && l > 0 => -1,
                    _ => 0,
                };
                (c, w)
            })
            .collect()
    }

    /// Apply the ℂ*-dilation Ψ(λ) to a point.
    pub fn dilate(&self, pt: &ChartPoint, lambda: &Rat) -> ChartPoint {
        self.cstar_weights()
            .iter()
            .zip(pt)
            .map(|((_, w), v)| match w {
                1 => v * lambda,
                -1 => v / lambda,
                _ => v.clone(),
            })
            .collect()
    }

    /// The origin of the chart.
    pub fn zero_point(&self) -> ChartPoint {
        vec![Rat::zero(); self.coords.len()]
    }

    /// A random point with small rational entries; leading coordinates are
    /// forced nonzero so the point is generic for the blow-up map.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> ChartPoint {
        self.coords
            .iter()
            .map(|c| {
                let den = rng.gen_range(1i64..=9);
                let num = match c {
                    Coord::LeadA { .. } | Coord::LeadB { .. } => {
                        let x = rng.gen_range(1i64..=9);
                        if rng.gen_bool(0.5) {
                            x
                        } else {
                            -x
                        }
                    }
                    _ => rng.gen_range(-9i64..=9),
                };
                ratq(num, den)
            })
            .collect()
    }

    /// Γ_l^τ with symbolic entries: polynomials in the chart coordinates
    /// (variable i = coordinate i in listing order).
    pub fn gamma_symbolic(&self) -> Vec<Vec<MultiPoly>> {
        let GrassParams { s, p, n } = self.g;
        let (r, l) = (self.r(), self.l);
        let nv = self.coords.len();
        let var = |c: Coord| MultiPoly::var(nv, self.coord_index(c));
        let mut m = vec![vec![MultiPoly::zero(nv); n]; p];

        // Identity blocks: I_l at rows 1..l, columns s+1..s+l;
        // I_{p−l} at rows l+1..p, columns s−p+l+1..s.
        for t in 1..=l {
            m[t - 1][s + t - 1] = MultiPoly::one(nv);
        }
        for t in 1..=p - l {
            m[l + t - 1][s - p + l + t - 1] = MultiPoly::one(nv);
        }
        // X̃ at rows 1..l, columns s+l+1..n; Ỹ at rows l+1..p, columns
        // 1..s−p+l.
        for t in 1..=l {
            for u in s + l + 1..=n {
                m[t - 1][u - 1] = var(Coord::X { t, u });
            }
        }
        for t in l + 1..=p {
            for u in 1..=s - p + l {
                m[t - 1][u - 1] = var(Coord::Y { t, u });
            }
        }

        // B-sum at rows l+1..p, columns s+l+1..n.
        let mut lead_prod = MultiPoly::one(nv);
        for k in 1..=r - l {
            lead_prod = lead_prod.mul(&var(Coord::LeadB { k }));
            let xi = |row: usize| -> MultiPoly {
                // Ξ_k entry at row label `row` ∈ [l+1, p].
                if row == self.i_row[k - 1] {
                    MultiPoly::one(nv)
                } else if self.i_row[..k - 1].contains(&row) {
                    MultiPoly::zero(nv)
                } else {
                    var(Coord::XiCol { k, t: row })
                }
            };
            let om = |col: usize| -> MultiPoly {
                if col == self.j_row[k - 1] {
                    MultiPoly::one(nv)
                } else if self.j_row[..k - 1].contains(&col) {
                    MultiPoly::zero(nv)
                } else {
                    var(Coord::XiRow { k, t: col })
                }
            };
            for row in l + 1..=p {
                let v = xi(row);
                if v.is_zero() {
                    continue;
                }
                for col in s + l + 1..=n {
                    let w = om(col);
                    if w.is_zero() {
                        continue;
                    }
                    let term = lead_prod.mul(&v).mul(&w);
                    m[row - 1][col - 1] = m[row - 1][col - 1].add(&term);
                }
            }
        }

        // A-sum at rows 1..l, columns 1..s−p+l.
        let mut lead_prod = MultiPoly::one(nv);
        for k in r - l + 1..=r {
            lead_prod = lead_prod.mul(&var(Coord::LeadA { k }));
            let first_a = r - l;
            let xi = |row: usize| -> MultiPoly {
                if row == self.i_row[k - 1] {
                    MultiPoly::one(nv)
                } else if self.i_row[first_a..k - 1].contains(&row) {
                    MultiPoly::zero(nv)
                } else {
                    var(Coord::XiCol { k, t: row })
                }
            };
            let om = |col: usize| -> MultiPoly {
                if col == self.j_row[k - 1] {
                    MultiPoly::one(nv)
                } else if self.j_row[first_a..k - 1].contains(&col) {
                    MultiPoly::zero(nv)
                } else {
                    var(Coord::XiRow { k, t: col })
                }
            };
            for row in 1..=l {
                let v = xi(row);
                if v.is_zero() {
                    continue;
                }
                for col in 1..=s - p + l {
                    let w = om(col);
                    if w.is_zero() {
                        continue;
                    }
                    let term = lead_prod.mul(&v).mul(&w);
                    m[row - 1][col - 1] = m[row - 1][col - 1].add(&term);
                }
            }
        }
        m
    }

    /// Γ_l^τ evaluated at a chart point: the p×n matrix whose maximal minors
    /// are the pulled-back Plücker coordinates.
    pub fn gamma(&self, pt: &ChartPoint) -> Result<RatMatrix> {
        if pt.len() != self.coords.len() {
            return Err(Error::InvalidParams(format!(
                "chart point has {} coordinates, expected {}",
                pt.len(),
                self.coords.len()
            )));
        }
        let sym = self.gamma_symbolic();
        RatMatrix::from_rows(
            sym.iter()
                .map(|row| row.iter().map(|e| e.eval(pt)).collect())
                .collect(),
        )
    }
}

/// Result of claim verification: every mismatch lists the stratum k, the
/// index tuple, the minor value, and the formula value.
#[derive(Debug, Clone)]
pub struct ClaimMismatch {
    pub k: usize,
    pub index: String,
    pub minor: Rat,
    pub formula: Rat,
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn sign_pm(e: usize) -> Rat {
    if e % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// ∏_{t=1}^{k−l} b_t^{k−l+1−t} (for k > l), the claim-I leading product.
fn b_prod(chart: &Chart, pt: &ChartPoint, k: usize) -> Rat {
    let l = chart.l;
    let mut acc = Rat::one();
    for t in 1..=k - l {
        let b = chart.value(pt, Coord::LeadB { k: t });
        acc *= pow_rat(&b, (k - l + 1 - t) as u32);
    }
    acc
}

/// ∏_{t=1}^{l−k} a_t^{l−k+1−t} (for k < l), over the a-vectors in order.
fn a_prod(chart: &Chart, pt: &ChartPoint, k: usize) -> Rat {
    let (r, l) = (chart.r(), chart.l);
    let mut acc = Rat::one();
    for t in 1..=l - k {
        let a = chart.value(pt, Coord::LeadA { k: r - l + t });
        acc *= pow_rat(&a, (l - k + 1 - t) as u32);
    }
    acc
}

/// The claim value of P_{I_k} on the chart.
fn claim_i_value(chart: &Chart, pt: &ChartPoint, k: usize) -> Rat {
    let (p, l) = (chart.g.p, chart.l);
    let sgn = sign_pm(k * (p - k));
    let prod = match k.cmp(&l) {
        std::cmp::Ordering::Equal => Rat::one(),
        std::cmp::Ordering::Less => a_prod(chart, pt, k),
        std::cmp::Ordering::Greater => b_prod(chart, pt, k),
    };
    sgn * prod
}

fn minor_of(g: &GrassParams, gamma: &RatMatrix, t: &crate::indices::IndexTuple) -> Result<Rat> {
    let _ = g;
    let cols: Vec<usize> = t.entries().iter().rev().map(|&i| i - 1).collect();
    gamma.select_columns(&cols).det()
}

/// Verify Claim I at a point: P_{I_k}(Γ) equals the leading-product formula
/// for all 0 <= k <= r.
pub fn verify_claim_i(chart: &Chart, pt: &ChartPoint) -> Result<Vec<ClaimMismatch>> {
    let g = chart.g;
    let gamma = chart.gamma(pt)?;
    let mut bad = Vec::new();
    for k in 0..=chart.r() {
        let t = special_index(&g, g.p, SpecialIndex::IK { k })?;
        let minor = minor_of(&g, &gamma, &t)?;
        let formula = claim_i_value(chart, pt, k);
        if minor != formula {
            bad.push(ClaimMismatch {
                k,
                index: t.display(),
                minor,
                formula,
            });
        }
    }
    Ok(bad)
}

/// Verify Claims III, III′, III′′, III′′′ and III′′′′ at a point of the
/// canonical chart τ_l.  Returns all mismatches (empty = verified).
pub fn verify_claim_iii(chart: &Chart, pt: &ChartPoint) -> Result<Vec<ClaimMismatch>> {
    let g = chart.g;
    let GrassParams { s, p, n } = g;
    let (r, l) = (chart.r(), chart.l);
    let gamma = chart.gamma(pt)?;
    let mut bad = Vec::new();
    let mut check = |k: usize, id: SpecialIndex, formula: Rat| -> Result<()> {
        let t = special_index(&g, p, id)?;
        let minor = minor_of(&g, &gamma, &t)?;
        if minor != formula {
            bad.push(ClaimMismatch {
                k,
                index: t.display(),
                minor,
                formula,
            });
        }
        Ok(())
    };

    // Claim III: 0 <= k <= l−1, μ = s−p+k+1, 1 <= ν <= s−p+k.
    for k in 0..l {
        let kv = r - k; // ξ-vector index (a-type)
        for nu in 1..=s - p + k {
            let xi = chart.value(pt, Coord::XiRow { k: kv, t: nu });
            let val = sign_pm(k * (p - k)) * a_prod(chart, pt, k) * xi;
            check(
                k,
                SpecialIndex::IMuNu {
                    k,
                    mu: s - p + k + 1,
                    nu,
                },
                val,
            )?;
        }
    }

    // Claim III′: 1 <= k <= l−1, s+1 <= μ <= s+k, ν = s+k+1; and I*_k.
    for k in 1..l {
        let kv = r - k;
        for mu in s + 1..=s + k {
            let xi = chart.value(pt, Coord::XiCol { k: kv, t: mu - s });
            let val = sign_pm(k * (p - k) + s + k + 1 - mu) * a_prod(chart, pt, k) * xi;
            check(
                k,
                SpecialIndex::IStarMuNu {
                    k,
                    mu,
                    nu: s + k + 1,
                },
                val,
            )?;
        }
        let a_next = chart.value(pt, Coord::LeadA { k: r - k + 1 });
        let xi1 = chart.value(pt, Coord::XiRow { k: kv, t: s - p + k });
        let xi2 = chart.value(pt, Coord::XiCol { k: kv, t: k });
        let val = sign_pm(k * (p - k) + 1) * a_prod(chart, pt, k) * (a_next + xi1 * xi2);
        check(k, SpecialIndex::IStar { k }, val)?;
    }

    // Claim III′′: l+1 <= k <= r, μ = s+k, s+k+1 <= ν <= n.
    for k in l + 1..=r {
        let kv = k - l; // ξ-vector index (b-type)
        for nu in s + k + 1..=n {
            let xi = chart.value(pt, Coord::XiRow { k: kv, t: nu });
            let val = sign_pm(k * (p - k)) * b_prod(chart, pt, k) * xi;
            check(k, SpecialIndex::IStarMuNu { k, mu: s + k, nu }, val)?;
        }
    }

    // Claim III′′′: l+1 <= k <= min(p−1, r), s−p+k+1 <= μ <= s, ν = s−p+k;
    // and I*_k for l+1 <= k <= min(p−1, r−1).
    for k in l + 1..=r.min(p - 1) {
        let kv = k - l;
        for mu in s - p + k + 1..=s {
            let xi = chart.value(pt, Coord::XiCol { k: kv, t: mu + p - s });
            let val = sign_pm(k * (p - k) + mu + p - s - k) * b_prod(chart, pt, k) * xi;
            check(
                k,
                SpecialIndex::IMuNu {
                    k,
                    mu,
                    nu: s - p + k,
                },
                val,
            )?;
        }
        if k + 1 - l <= r - l {
            let b_next = chart.value(pt, Coord::LeadB { k: k - l + 1 });
            let xi1 = chart.value(pt, Coord::XiRow { k: kv, t: s + k + 1 });
            let xi2 = chart.value(pt, Coord::XiCol { k: kv, t: k + 1 });
            let val = sign_pm(k * (p - k) + 1) * b_prod(chart, pt, k) * (b_next + xi1 * xi2);
            check(k, SpecialIndex::IStar { k }, val)?;
        }
    }

    // Claim III′′′′ (k = l): the X̃ and Ỹ entries.
    {
        let k = l;
        for mu in s - p + l + 1..=s {
            for nu in 1..=s - p + l {
                let y = chart.value(pt, Coord::Y { t: mu + p - s, u: nu });
                let val = sign_pm(k * (p - k) + mu + p - s - l + 1) * y;
                check(k, SpecialIndex::IMuNu { k, mu, nu }, val)?;
            }
        }
        for mu in s + 1..=s + l {
            for nu in s + l + 1..=n {
                let x = chart.value(pt, Coord::X { t: mu - s, u: nu });
                // Parity of μ−s−l, written without usize underflow.
                let val = sign_pm(k * (p - k) + (mu - s) + l) * x;
                check(k, SpecialIndex::IStarMuNu { k, mu, nu }, val)?;
            }
        }
    }
    Ok(bad)
}

/// Verify the ℂ*-weight table at a point: for every k,
/// P_{I_k}(Γ(Ψ_λ pt)) = λ^{k−l} P_{I_k}(Γ(pt)).
pub fn verify_cstar_weights(chart: &Chart, pt: &ChartPoint, lambda: &Rat) -> Result<Vec<ClaimMismatch>> {
    let g = chart.g;
    let l = chart.l;
    let gamma0 = chart.gamma(pt)?;
    let dil = chart.dilate(pt, lambda);
    let gamma1 = chart.gamma(&dil)?;
    let mut bad = Vec::new();
    for k in 0..=chart.r() {
        let t = special_index(&g, g.p, SpecialIndex::IK { k })?;
        let v0 = minor_of(&g, &gamma0, &t)?;
        let v1 = minor_of(&g, &gamma1, &t)?;
        let scale = if k >= l {
            pow_rat(lambda, (k - l) as u32)
        } else {
            Rat::one() / pow_rat(lambda, (l - k) as u32)
        };
        let expect = v0.clone() * scale;
        if v1 != expect {
            bad.push(ClaimMismatch {
                k,
                index: t.display(),
                minor: v1,
                formula: expect,
            });
        }
    }
    Ok(bad)
}
