//! Sparse multivariate polynomials with exact rational coefficients.

use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat_str, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A polynomial in `nvars` variables: exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable x_i (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    /// A linear polynomial c0 + Σ c_i x_i.
    pub fn linear(nvars: usize, c0: Rat, coeffs: &[Rat]) -> Self {
        assert_eq!(coeffs.len(), nvars);
        let mut p = Self::constant(nvars, c0);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.add_term(e, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Substitute x_i := subs[i] (each a polynomial in a common new variable
    /// set).  Used both for affine changes of coordinates and for pinning
    /// variables to constants.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let out_nvars = subs.first().map_or(0, |s| s.nvars);
        assert!(subs.iter().all(|s| s.nvars == out_nvars));
        let mut out = MultiPoly::zero(out_nvars);
        // Cache powers of each substituted variable.
        let mut powers: Vec<Vec<MultiPoly>> =
            subs.iter().map(|s| vec![MultiPoly::one(out_nvars), s.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(out_nvars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                while powers[i].len() <= exp as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][exp as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Render in the line-based text format (`term: coeff e1 ... ed`).
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return format!(
                "term: 0 {}\n",
                vec!["0"; self.nvars].join(" ")
            );
        }
        let mut out = String::new();
        for (e, c) in &self.terms {
            out.push_str("term: ");
            out.push_str(&rat_str(c));
            for x in e {
                out.push(' ');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Parse the line-based polynomial format: each nonempty line is
/// `term: coeff e1 ... ed`.  The variable count is inferred from the first
/// line and must be consistent.
pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    let mut poly: Option<MultiPoly> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("term:")
            .ok_or_else(|| Error::Parse(format!("expected `term:` line, got `{line}`")))?;
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.is_empty() {
            return Err(Error::Parse("term line with no coefficient".into()));
        }
        let coeff =
            parse_rat(toks[0]).ok_or_else(|| Error::Parse(format!("bad coefficient `{}`", toks[0])))?;
        let exps: Vec<u32> = toks[1..]
            .iter()
            .map(|w| w.parse().map_err(|_| Error::Parse(format!("bad exponent `{w}`"))))
            .collect::<Result<_>>()?;
        let d = exps.len();
        let p = poly.get_or_insert_with(|| MultiPoly::zero(d));
        if p.nvars != d {
            return Err(Error::Parse(format!(
                "inconsistent variable count: {} vs {d}",
                p.nvars
            )));
        }
        p.add_term(exps, coeff);
    }
    poly.ok_or_else(|| Error::Parse("empty polynomial file".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};

    #[test]
    fn arithmetic_and_eval() {
        // (2x2 - x1 + 2)^2 over (x1, x2).
        let f = MultiPoly::linear(2, rat(2), &[rat(-1), rat(2)]).pow(2);
        assert_eq!(f.nterms(), 6);
        assert_eq!(f.eval(&[rat(1), rat(3)]), rat(49));
        assert_eq!(f.total_degree(), 2);
    }

    #[test]
    fn substitution_is_ring_hom() {
        let f = MultiPoly::var(2, 0).mul(&MultiPoly::var(2, 1)).add(&MultiPoly::one(2));
        // x -> u+1, y -> 2u: f = (u+1)(2u) + 1 = 2u^2 + 2u + 1.
        let subs = vec![
            MultiPoly::linear(1, rat(1), &[rat(1)]),
            MultiPoly::linear(1, rat(0), &[rat(2)]),
        ];
        let g = f.substitute(&subs);
        assert_eq!(g.eval(&[rat(3)]), rat(25));
        assert_eq!(g.total_degree(), 2);
    }

    #[test]
    fn text_round_trip() {
        let f = MultiPoly::linear(3, ratq(1, 2), &[rat(0), rat(-3), rat(1)]);
        let g = parse_poly(&f.to_text()).unwrap();
        assert_eq!(f, g);
        assert!(parse_poly("junk\n").is_err());
        assert!(parse_poly("term: 1 2\nterm: 1 2 3\n").is_err());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let f = MultiPoly::var(1, 0);
        let g = f.sub(&f);
        assert!(g.is_zero());
        assert_eq!(g.nterms(), 0);
    }
}
