//! Picard lattices of 𝒯_{s,p,n} and ℳ_{s,p,n}: B-stable divisors, canonical
//! bundles in both generator systems, pullbacks under the natural
//! isomorphisms, and the spherical weight data ρ(B_j), valuations.
//!
//! Everything assumes the standing normalization 2p <= n <= 2s (hence
//! p <= s and r = min{p, n−s}).

use crate::error::{Error, Result};
use crate::indices::GrassParams;
use crate::linalg::RatMatrix;
use crate::rat::{rat, Rat};
use num_traits::{One, Zero};

/// Which space a divisor class lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Space {
    T,
    M,
}

/// Basis variant of the Picard lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Variant {
    /// p < s and p ≠ n−s: all generators independent.
    Generic,
    /// p = n−s < s: D⁻_r (resp. Ď_r) is dropped from the basis.
    PEqNs,
    /// p = s = n−s: D⁺_r and D⁻_r are dropped; on ℳ also H ≡ 0.
    PEqSEqNs,
}

/// Determine the basis variant from normalized parameters.
pub fn variant_of(g: &GrassParams) -> Variant {
    let ns = g.n - g.s;
    if g.p == g.s && g.p == ns {
        Variant::PEqSEqNs
    } else if g.p == ns {
        Variant::PEqNs
    } else {
        Variant::Generic
    }
}

fn check_normalized(g: &GrassParams) -> Result<()> {
    if 2 * g.p > g.n || g.n > 2 * g.s {
        return Err(Error::InvalidParams(format!(
            "need 2p <= n <= 2s, got s={}, p={}, n={}",
            g.s, g.p, g.n
        )));
    }
    Ok(())
}

/// A divisor class expressed over the active basis of a fixed lattice.
/// Arithmetic across different lattices (space/variant/parameters) is an
/// error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivClass {
    pub space: Space,
    pub variant: Variant,
    pub g: GrassParams,
    pub coeffs: Vec<Rat>,
}

impl DivClass {
    fn compatible(&self, other: &DivClass) -> Result<()> {
        if self.space != other.space || self.variant != other.variant || self.g != other.g {
            return Err(Error::InvalidParams(
                "divisor classes live in different Picard lattices".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &DivClass) -> Result<DivClass> {
        self.compatible(other)?;
        Ok(DivClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &DivClass) -> Result<DivClass> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rat) -> DivClass {
        DivClass {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// The Picard lattice of 𝒯_{s,p,n} over the basis
/// {H, D⁺_1..D⁺_{rp}, D⁻_1..D⁻_{rm}}.
#[derive(Debug, Clone)]
pub struct TPic {
    pub g: GrassParams,
    pub variant: Variant,
    pub r: usize,
    rp: usize,
    rm: usize,
}

impl TPic {
    pub fn new(g: GrassParams) -> Result<Self> {
        check_normalized(&g)?;
        let r = g.rank();
        let variant = variant_of(&g);
        let (rp, rm) = match variant {
            Variant::Generic => (r, r),
            Variant::PEqNs => (r, r - 1),
            Variant::PEqSEqNs => (r - 1, r - 1),
        };
        Ok(TPic { g, variant, r, rp, rm })
    }

    pub fn dim(&self) -> usize {
        1 + self.rp + self.rm
    }

    pub fn basis_names(&self) -> Vec<String> {
        let mut v = vec!["H".to_string()];
        v.extend((1..=self.rp).map(|i| format!("D+_{i}")));
        v.extend((1..=self.rm).map(|i| format!("D-_{i}")));
        v
    }

    fn zero(&self) -> DivClass {
        DivClass {
            space: Space::T,
            variant: self.variant,
            g: self.g,
            coeffs: vec![Rat::zero(); self.dim()],
        }
    }

    pub fn h(&self) -> DivClass {
        let mut c = self.zero();
        c.coeffs[0] = Rat::one();
        c
    }

    /// D⁺_i (1 <= i <= r), substituting D⁺_r = H − Σ_{i<r}(r+1−i)D⁺_i when
    /// the generator is dropped.
    pub fn dplus(&self, i: usize) -> Result<DivClass> {
        if i == 0 || i > self.r {
            return Err(Error::InvalidParams(format!("D+_{i} out of range 1..={}", self.r)));
        }
        let mut c = self.zero();
        if i <= self.rp {
            c.coeffs[i] = Rat::one();
        } else {
            c.coeffs[0] = Rat::one();
            for i2 in 1..=self.r - 1 {
                c.coeffs[i2] = -rat((self.r + 1 - i2) as i64);
            }
        }
        Ok(c)
    }

    /// D⁻_i (1 <= i <= r), substituting D⁻_r = H − Σ_{i<r}(r+1−i)D⁻_i when
    /// the generator is dropped.
    pub fn dminus(&self, i: usize) -> Result<DivClass> {
        if i == 0 || i > self.r {
            return Err(Error::InvalidParams(format!("D-_{i} out of range 1..={}", self.r)));
        }
        let mut c = self.zero();
        if i <= self.rm {
            c.coeffs[1 + self.rp + i - 1] = Rat::one();
        } else {
            c.coeffs[0] = Rat::one();
            for i2 in 1..=self.r - 1 {
                c.coeffs[1 + self.rp + i2 - 1] = -rat((self.r + 1 - i2) as i64);
            }
        }
        Ok(c)
    }

    /// B_j = H − Σ_{i=1}^{r−j}(r−j+1−i)D⁺_i − Σ_{i=1}^{j}(j+1−i)D⁻_i,
    /// except B_0 = D⁺_r when p = s and B_r = D⁻_r when p = n−s.
    pub fn divisor_b(&self, j: usize) -> Result<DivClass> {
        if j > self.r {
            return Err(Error::InvalidParams(format!("B_{j} out of range 0..={}", self.r)));
        }
        if j == 0 && self.g.p == self.g.s {
            return self.dplus(self.r);
        }
        if j == self.r && self.g.p == self.g.n - self.g.s {
            return self.dminus(self.r);
        }
        let mut acc = self.h();
        for i in 1..=self.r - j {
            acc = acc.sub(&self.dplus(i)?.scale(&rat((self.r - j + 1 - i) as i64)))?;
        }
        for i in 1..=j {
            acc = acc.sub(&self.dminus(i)?.scale(&rat((j + 1 - i) as i64)))?;
        }
        Ok(acc)
    }

    /// Canonical-bundle coefficients over the *generic* symbols
    /// (H, D⁺_1..D⁺_r, D⁻_1..D⁻_r), used for intersection pairing.
    pub fn canonical_generic(&self) -> (i64, Vec<i64>, Vec<i64>) {
        let GrassParams { s, p, n } = self.g;
        let ns = n - s;
        let r = self.r;
        let dm: Vec<i64> = (1..=r)
            .map(|i| ((p + 1 - i) * (ns + 1 - i)) as i64 - 1)
            .collect();
        let dp: Vec<i64> = (1..=r)
            .map(|i| {
                if p <= ns {
                    ((p + 1 - i) * (s + 1 - i)) as i64 - 1
                } else {
                    ((n - p + 1 - i) * (ns + 1 - i)) as i64 - 1
                }
            })
            .collect();
        (-(n as i64), dp, dm)
    }

    /// K_T over the active basis.
    pub fn canonical(&self) -> Result<DivClass> {
        let (h, dp, dm) = self.canonical_generic();
        let mut acc = self.h().scale(&rat(h));
        for (i, c) in dp.iter().enumerate() {
            acc = acc.add(&self.dplus(i + 1)?.scale(&rat(*c)))?;
        }
        for (i, c) in dm.iter().enumerate() {
            acc = acc.add(&self.dminus(i + 1)?.scale(&rat(*c)))?;
        }
        Ok(acc)
    }

    /// K_T expanded from the B-stable presentation; must equal
    /// [`Self::canonical`].
    pub fn canonical_bform(&self) -> Result<DivClass> {
        let GrassParams { s, p, n } = self.g;
        let ns = n - s;
        let r = self.r;
        let mut acc = self.zero();
        if p < ns {
            // p < n−s <= s.
            acc = acc.sub(&self.divisor_b(0)?.scale(&rat((s - p + 1) as i64)))?;
            for j in 1..p {
                acc = acc.sub(&self.divisor_b(j)?.scale(&rat(2)))?;
            }
            acc = acc.sub(&self.divisor_b(p)?.scale(&rat((ns - p + 1) as i64)))?;
        } else if p == ns && p < s {
            acc = acc.sub(&self.divisor_b(0)?.scale(&rat((s - p + 1) as i64)))?;
            for j in 1..p {
                acc = acc.sub(&self.divisor_b(j)?.scale(&rat(2)))?;
            }
        } else if p > ns {
            // n−s < p < s, r = n−s.
            acc = acc.sub(&self.divisor_b(0)?.scale(&rat((s - p + 1) as i64)))?;
            for j in 1..r {
                acc = acc.sub(&self.divisor_b(j)?.scale(&rat(2)))?;
            }
            acc = acc.sub(&self.divisor_b(r)?.scale(&rat((p - r + 1) as i64)))?;
        } else {
            // p = s = n−s.
            for j in 1..p {
                acc = acc.sub(&self.divisor_b(j)?.scale(&rat(2)))?;
            }
        }
        for i in 1..=r {
            acc = acc.sub(&self.dminus(i)?)?;
            acc = acc.sub(&self.dplus(i)?)?;
        }
        Ok(acc)
    }

    /// Pullback matrix of the isomorphism USD (n = 2s) or DUAL (n = 2p):
    /// H ↦ H, D⁺_i ↔ D⁻_i.  Column j is the image of basis vector j.
    pub fn swap_pullback(&self) -> Result<RatMatrix> {
        if self.g.n != 2 * self.g.s && self.g.n != 2 * self.g.p {
            return Err(Error::InvalidParams(
                "the divisor swap exists only for n = 2s (USD) or n = 2p (DUAL)".into(),
            ));
        }
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        let set_col = |m: &mut RatMatrix, j: usize, v: &DivClass| {
            for (i, c) in v.coeffs.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        };
        set_col(&mut m, 0, &self.h());
        for i in 1..=self.rp {
            set_col(&mut m, i, &self.dminus(i)?);
        }
        for i in 1..=self.rm {
            set_col(&mut m, self.rp + i, &self.dplus(i)?);
        }
        Ok(m)
    }

    /// Apply a pullback matrix to a class.
    pub fn apply(&self, m: &RatMatrix, c: &DivClass) -> Result<DivClass> {
        let mut out = self.zero();
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                let t = &m[(i, j)] * &c.coeffs[j];
                out.coeffs[i] += t;
            }
        }
        Ok(out)
    }

    /// The principal divisor classes (f_k) of the spherical functions; all
    /// must vanish in the Picard lattice.  Stated for p <= n−s.
    pub fn principal_divisors(&self) -> Result<Vec<DivClass>> {
        let GrassParams { s, p, n } = self.g;
        let ns = n - s;
        let r = self.r;
        if p > ns {
            return Err(Error::InvalidParams(
                "principal divisor displays are stated for p <= n-s".into(),
            ));
        }
        let b = |j: usize| self.divisor_b(j);
        let generic_f1 = || -> Result<DivClass> {
            let mut acc = b(1)?.sub(&b(0)?)?.add(&self.dminus(1)?)?;
            for i in 1..=r {
                acc = acc.sub(&self.dplus(i)?)?;
            }
            Ok(acc)
        };
        let generic_fk = |k: usize| -> Result<DivClass> {
            b(k)?
                .sub(&b(k - 1)?.scale(&rat(2)))?
                .add(&b(k - 2)?)?
                .add(&self.dminus(k)?)?
                .add(&self.dplus(r + 2 - k)?)
        };
        let mut out = Vec::new();
        match (p == ns, p == s) {
            (false, _) => {
                // p < n−s <= s.
                out.push(generic_f1()?);
                for k in 2..=r {
                    out.push(generic_fk(k)?);
                }
            }
            (true, false) if r == 1 => {
                // 1 = n−s = p < s.
                let f1 = b(0)?
                    .scale(&rat(-1))
                    .add(&self.dminus(1)?)?
                    .sub(&self.dplus(1)?)?;
                out.push(f1);
            }
            (true, false) => {
                // 2 <= n−s = p < s.
                out.push(generic_f1()?);
                for k in 2..r {
                    out.push(generic_fk(k)?);
                }
                let fr = self
                    .dminus(r)?
                    .sub(&b(r - 1)?.scale(&rat(2)))?
                    .add(&b(r - 2)?)?
                    .add(&self.dplus(2)?)?;
                out.push(fr);
            }
            (true, true) if r == 1 => {
                // 1 = n−s = p = s.
                out.push(self.dminus(1)?.sub(&self.dplus(1)?)?);
            }
            (true, true) if r == 2 => {
                // 2 = n−s = p = s.
                let f1 = b(1)?
                    .sub(&self.dplus(2)?)?
                    .add(&self.dminus(1)?)?
                    .sub(&self.dplus(1)?)?;
                let f2 = self
                    .dminus(2)?
                    .sub(&b(1)?.scale(&rat(2)))?
                    .add(&self.dplus(2)?)?;
                out.push(f1);
                out.push(f2);
            }
            (true, true) => {
                // 3 <= n−s = p = s.
                let mut f1 = b(1)?.sub(&self.dplus(r)?)?.add(&self.dminus(1)?)?;
                for i in 1..r {
                    f1 = f1.sub(&self.dplus(i)?)?;
                }
                out.push(f1);
                let f2 = b(2)?
                    .sub(&b(1)?.scale(&rat(2)))?
                    .add(&self.dplus(r)?)?
                    .add(&self.dminus(2)?)?;
                out.push(f2);
                for k in 3..r {
                    out.push(generic_fk(k)?);
                }
                let fr = self
                    .dminus(r)?
                    .sub(&b(r - 1)?.scale(&rat(2)))?
                    .add(&b(r - 2)?)?
                    .add(&self.dplus(2)?)?;
                out.push(fr);
            }
        }
        Ok(out)
    }
}

/// The Picard lattice of ℳ_{s,p,n} over {H, Ď_1..Ď_{rd}} (H absent when
/// p = s = n−s).
#[derive(Debug, Clone)]
pub struct MPic {
    pub g: GrassParams,
    pub variant: Variant,
    pub r: usize,
    rd: usize,
    has_h: bool,
}

impl MPic {
    pub fn new(g: GrassParams) -> Result<Self> {
        check_normalized(&g)?;
        let r = g.rank();
        let variant = variant_of(&g);
        let (rd, has_h) = match variant {
            Variant::Generic => (r, true),
            Variant::PEqNs => (r - 1, true),
            Variant::PEqSEqNs => (r - 1, false),
        };
        Ok(MPic { g, variant, r, rd, has_h })
    }

    pub fn dim(&self) -> usize {
        usize::from(self.has_h) + self.rd
    }

    pub fn basis_names(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.has_h {
            v.push("H".to_string());
        }
        v.extend((1..=self.rd).map(|i| format!("Dch_{i}")));
        v
    }

    fn zero(&self) -> DivClass {
        DivClass {
            space: Space::M,
            variant: self.variant,
            g: self.g,
            coeffs: vec![Rat::zero(); self.dim()],
        }
    }

    /// H (the zero class when p = s = n−s, where B̌_0 is empty).
    pub fn h(&self) -> DivClass {
        let mut c = self.zero();
        if self.has_h {
            c.coeffs[0] = Rat::one();
        }
        c
    }

    /// Ď_i (1 <= i <= r), substituting Ď_r = H − rĎ_1 − Σ_{k=2}^{r−1}(r+1−k)Ď_k
    /// when the generator is dropped.
    pub fn dcheck(&self, i: usize) -> Result<DivClass> {
        if i == 0 || i > self.r {
            return Err(Error::InvalidParams(format!("Dch_{i} out of range 1..={}", self.r)));
        }
        let off = usize::from(self.has_h);
        let mut c = self.zero();
        if i <= self.rd {
            c.coeffs[off + i - 1] = Rat::one();
        } else {
            // Ď_r = H − rĎ_1 − Σ_{k=2}^{r−1}(r+1−k)Ď_k over the remaining
            // generators; for r = 1 this reads Ď_1 = H.
            c = self.h();
            if self.r >= 2 {
                c.coeffs[off] = -rat(self.r as i64);
                for k in 2..self.r {
                    c.coeffs[off + k - 1] = -rat((self.r + 1 - k) as i64);
                }
            }
        }
        Ok(c)
    }

    /// B̌_j = H − jĎ_1 − Σ_{k=2}^{j}(j+1−k)Ď_k, except B̌_r = Ď_r when
    /// p = n−s (and B̌_0 = ∅ ≅ 0 when p = s, handled by H = 0).
    pub fn divisor_bcheck(&self, j: usize) -> Result<DivClass> {
        if j > self.r {
            return Err(Error::InvalidParams(format!("Bch_{j} out of range 0..={}", self.r)));
        }
        if j == self.r && self.g.p == self.g.n - self.g.s {
            return self.dcheck(self.r);
        }
        let mut acc = self.h();
        if j >= 1 {
            acc = acc.sub(&self.dcheck(1)?.scale(&rat(j as i64)))?;
        }
        for k in 2..=j {
            acc = acc.sub(&self.dcheck(k)?.scale(&rat((j + 1 - k) as i64)))?;
        }
        Ok(acc)
    }

    /// K_M = −nH + p(n−s)Ď_1 + Σ_{i=2}^{r}((p−i+1)(n−s−i+1)−1)Ď_i.
    pub fn canonical(&self) -> Result<DivClass> {
        let GrassParams { s, p, n } = self.g;
        let ns = n - s;
        let mut acc = self.h().scale(&rat(-(n as i64)));
        acc = acc.add(&self.dcheck(1)?.scale(&rat((p * ns) as i64)))?;
        for i in 2..=self.r {
            let c = ((p + 1 - i) * (ns + 1 - i)) as i64 - 1;
            acc = acc.add(&self.dcheck(i)?.scale(&rat(c)))?;
        }
        Ok(acc)
    }

    /// K_M expanded from the B̌-presentation; must equal [`Self::canonical`].
    pub fn canonical_bform(&self) -> Result<DivClass> {
        let GrassParams { s, p, n } = self.g;
        let ns = n - s;
        let r = self.r;
        let b = |j: usize| self.divisor_bcheck(j);
        let mut acc = self.zero();
        if p < ns && p < s {
            acc = acc.sub(&b(0)?.scale(&rat((s - p + 1) as i64)))?;
            for j in 1..p {
                acc = acc.sub(&b(j)?.scale(&rat(2)))?;
            }
            acc = acc.sub(&b(p)?.scale(&rat((ns - p + 1) as i64)))?;
        } else if p == ns && p < s {
            acc = acc.sub(&b(0)?.scale(&rat((s - p + 1) as i64)))?;
            for j in 1..p {
                acc = acc.sub(&b(j)?.scale(&rat(2)))?;
            }
        } else if p > ns {
            acc = acc.sub(&b(0)?.scale(&rat((s - p + 1) as i64)))?;
            for j in 1..r {
                acc = acc.sub(&b(j)?.scale(&rat(2)))?;
            }
            acc = acc.sub(&b(r)?.scale(&rat((p - r + 1) as i64)))?;
        } else {
            // p = s = n−s.
            for j in 1..p {
                acc = acc.sub(&b(j)?.scale(&rat(2)))?;
            }
        }
        for i in 2..=r {
            acc = acc.sub(&self.dcheck(i)?)?;
        }
        Ok(acc)
    }

    /// Pullback of the involution (Usd for n = 2s, Dual for n = 2p, both
    /// with p < s): Ď_i ↦ Ď_{r+2−i} (2 <= i <= r), Ď_1 ↦ −ΣĎ_i,
    /// H ↦ H − Σ(r+1−i)Ď_i.  Returns (matrix, non_integral flag).
    pub fn swap_pullback(&self) -> Result<(RatMatrix, bool)> {
        let GrassParams { s, p, n } = self.g;
        if n != 2 * s && n != 2 * p {
            return Err(Error::InvalidParams(
                "the involution exists only for n = 2s (Usd) or n = 2p (Dual)".into(),
            ));
        }
        let d = self.dim();
        let r = self.r;
        let mut m = RatMatrix::zeros(d, d);
        let set_col = |m: &mut RatMatrix, j: usize, v: &DivClass| {
            for (i, c) in v.coeffs.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        };
        if p < s {
            // Integral involution on {H, Ď_1..Ď_r} (generic basis here:
            // n = 2s or n = 2p with p < s both force p ≠ n−s).
            let mut h_img = self.h();
            for i in 1..=r {
                h_img = h_img.sub(&self.dcheck(i)?.scale(&rat((r + 1 - i) as i64)))?;
            }
            set_col(&mut m, 0, &h_img);
            let mut d1_img = self.zero();
            for i in 1..=r {
                d1_img = d1_img.sub(&self.dcheck(i)?)?;
            }
            set_col(&mut m, 1, &d1_img);
            for i in 2..=r {
                set_col(&mut m, i, &self.dcheck(r + 2 - i)?);
            }
            Ok((m, false))
        } else {
            // ℳ_{p,p,2p}: Ď_1 ↦ −Σ_{i=2}^r ((i−1)/r)Ď_i, non-integral.
            let mut d1_img = self.zero();
            for i in 2..=r {
                let c = Rat::new((i as i64 - 1).into(), (r as i64).into());
                d1_img = d1_img.sub(&self.dcheck(i)?.scale(&c))?;
            }
            set_col(&mut m, 0, &d1_img);
            for i in 2..r {
                set_col(&mut m, i - 1, &self.dcheck(r + 2 - i)?);
            }
            Ok((m, true))
        }
    }

    pub fn apply(&self, m: &RatMatrix, c: &DivClass) -> Result<DivClass> {
        let mut out = self.zero();
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                let t = &m[(i, j)] * &c.coeffs[j];
                out.coeffs[i] += t;
            }
        }
        Ok(out)
    }
}

/// Spherical weight data of 𝒯 over the basis γ_1..γ_r of 𝒩: the images
/// ρ(B_j) and the valuations of the B-stable divisors.
#[derive(Debug, Clone)]
pub struct TWeightData {
    /// ρ(B_j) for j = 0..r.
    pub rho_b: Vec<Vec<Rat>>,
    /// v_{D⁺_i} for i = 1..r.
    pub v_dplus: Vec<Vec<Rat>>,
    /// v_{D⁻_i} for i = 1..r.
    pub v_dminus: Vec<Vec<Rat>>,
}

/// Weight data of 𝒯 (lemmas bfor and val).
pub fn t_weight_data(g: &GrassParams) -> Result<TWeightData> {
    check_normalized(g)?;
    let r = g.rank();
    let gamma = |i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); r];
        v[i - 1] = Rat::one();
        v
    };
    let add = |a: &[Rat], b: &[Rat]| -> Vec<Rat> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let neg = |a: &[Rat]| -> Vec<Rat> { a.iter().map(|x| -x.clone()).collect() };
    let scale = |a: &[Rat], c: i64| -> Vec<Rat> { a.iter().map(|x| x * rat(c)).collect() };

    let mut rho_b = Vec::with_capacity(r + 1);
    if r == 1 {
        rho_b.push(neg(&gamma(1)));
        rho_b.push(gamma(1));
    } else {
        rho_b.push(add(&neg(&gamma(1)), &gamma(2)));
        for j in 1..=r - 2 {
            let v = add(&add(&gamma(j), &scale(&gamma(j + 1), -2)), &gamma(j + 2));
            rho_b.push(v);
        }
        rho_b.push(add(&gamma(r - 1), &scale(&gamma(r), -2)));
        rho_b.push(gamma(r));
    }

    let mut v_dplus = Vec::with_capacity(r);
    v_dplus.push(neg(&gamma(1)));
    for i in 2..=r {
        v_dplus.push(add(&neg(&gamma(1)), &gamma(r + 2 - i)));
    }
    let v_dminus: Vec<Vec<Rat>> = (1..=r).map(gamma).collect();
    Ok(TWeightData {
        rho_b,
        v_dplus,
        v_dminus,
    })
}

/// Weight data of ℳ over the basis γ_2..γ_r (lemma mval): ρ̌(B̌_j) and
/// the valuations v_{Ď_i}, with γ_i := 0 for i < 2 or i > r.
#[derive(Debug, Clone)]
pub struct MWeightData {
    /// (j, ρ̌(B̌_j)); j runs over 0..r for p < s and 1..r for p = s = n−s.
    pub rho_b: Vec<(usize, Vec<Rat>)>,
    /// v_{Ď_i} for i = 2..r.
    pub v_dcheck: Vec<Vec<Rat>>,
}

pub fn m_weight_data(g: &GrassParams) -> Result<MWeightData> {
    check_normalized(g)?;
    let r = g.rank();
    let dimv = r - 1; // coordinates γ_2..γ_r
    let gamma = |i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dimv];
        if (2..=r).contains(&i) {
            v[i - 2] = Rat::one();
        }
        v
    };
    let j_range: Vec<usize> = if g.p < g.s { (0..=r).collect() } else { (1..=r).collect() };
    let rho_b = j_range
        .into_iter()
        .map(|j| {
            let mut v = gamma(j);
            for (idx, c) in gamma(j + 1).iter().enumerate() {
                v[idx] -= c * rat(2);
            }
            for (idx, c) in gamma(j + 2).iter().enumerate() {
                v[idx] += c;
            }
            (j, v)
        })
        .collect();
    let v_dcheck: Vec<Vec<Rat>> = (2..=r).map(gamma).collect();
    Ok(MWeightData { rho_b, v_dcheck })
}
