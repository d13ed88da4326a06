//! Convex polytopes in H-representation with exact vertex enumeration,
//! triangulation and polynomial integration.
//!
//! Everything here is exact: vertices come from solving d×d subsystems,
//! boundedness/emptiness checks use Fourier–Motzkin elimination, and
//! integration uses the closed-form monomial integral over a simplex.

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::poly::MultiPoly;
use crate::rat::{parse_rat, rat_str, Rat};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Maximum ambient dimension for vertex enumeration.
pub const MAX_DIM: usize = 6;

/// A polytope {x : a·x <= b for each inequality}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    ineqs: Vec<(Vec<Rat>, Rat)>,
}

/// A d-simplex given by d+1 affinely independent vertices.
#[derive(Debug, Clone)]
pub struct Simplex {
    pub vertices: Vec<Vec<Rat>>,
}

impl HPolytope {
    pub fn new(dim: usize, ineqs: Vec<(Vec<Rat>, Rat)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Polytope("dimension must be positive".into()));
        }
        if ineqs.iter().any(|(a, _)| a.len() != dim) {
            return Err(Error::Polytope("inequality length mismatch".into()));
        }
        Ok(HPolytope { dim, ineqs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[(Vec<Rat>, Rat)] {
        &self.ineqs
    }

    /// A copy with one extra inequality a·x <= b.
    pub fn with_ineq(&self, a: Vec<Rat>, b: Rat) -> Result<Self> {
        let mut ineqs = self.ineqs.clone();
        ineqs.push((a, b));
        HPolytope::new(self.dim, ineqs)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|(a, b)| {
            let dot: Rat = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum();
            dot <= *b
        })
    }

    /// All vertices, deduplicated and sorted.  Errors on empty or unbounded
    /// polytopes and on ambient dimension above [`MAX_DIM`].
    pub fn vertices(&self) -> Result<Vec<Vec<Rat>>> {
        let d = self.dim;
        if d > MAX_DIM {
            return Err(Error::Polytope(format!(
                "vertex enumeration limited to dimension {MAX_DIM}, got {d}"
            )));
        }
        if !fm_feasible(d, &self.ineqs) {
            return Err(Error::Polytope("empty polytope".into()));
        }
        if !self.is_bounded() {
            return Err(Error::Polytope("unbounded polyhedron".into()));
        }
        let mut verts: Vec<Vec<Rat>> = Vec::new();
        for combo in (0..self.ineqs.len()).combinations(d) {
            let a = RatMatrix::from_rows(
                combo.iter().map(|&i| self.ineqs[i].0.clone()).collect(),
            )?;
            let b: Vec<Rat> = combo.iter().map(|&i| self.ineqs[i].1.clone()).collect();
            let Some(x) = a.solve(&b)? else { continue };
            if self.contains(&x) && !verts.contains(&x) {
                verts.push(x);
            }
        }
        if verts.is_empty() {
            return Err(Error::Polytope("polytope has no vertices".into()));
        }
        verts.sort();
        Ok(verts)
    }

    /// Bounded iff the recession cone {a·x <= 0} is trivial.
    fn is_bounded(&self) -> bool {
        let cone: Vec<(Vec<Rat>, Rat)> = self
            .ineqs
            .iter()
            .map(|(a, _)| (a.clone(), Rat::zero()))
            .collect();
        for i in 0..self.dim {
            for sgn in [1i64, -1] {
                // Is there a recession direction with x_i = sgn?
                let mut sys = cone.clone();
                let mut row = vec![Rat::zero(); self.dim];
                row[i] = crate::rat::rat(sgn);
                sys.push((row.clone(), crate::rat::rat(1)));
                let neg: Vec<Rat> = row.iter().map(|v| -v.clone()).collect();
                sys.push((neg, crate::rat::rat(-1)));
                if fm_feasible(self.dim, &sys) {
                    return false;
                }
            }
        }
        true
    }

    /// Affine dimension of the polytope (via its vertex set).
    pub fn affine_dim(&self) -> Result<usize> {
        let verts = self.vertices()?;
        Ok(affine_rank(&verts))
    }

    /// Triangulate into simplices by coning from the lexicographically least
    /// vertex over recursively triangulated facets.  Errors when the
    /// polytope is not full-dimensional.
    pub fn triangulate(&self) -> Result<Vec<Simplex>> {
        let verts = self.vertices()?;
        if affine_rank(&verts) != self.dim {
            return Err(Error::Polytope(format!(
                "triangulation requires a full-dimensional polytope (affine dim {} < {})",
                affine_rank(&verts),
                self.dim
            )));
        }
        let mut out = Vec::new();
        triangulate_face(&self.ineqs, &verts, self.dim, &mut out)?;
        Ok(out.into_iter().map(|vertices| Simplex { vertices }).collect())
    }
}

/// Affine rank of a point set (dimension of its affine hull).
fn affine_rank(pts: &[Vec<Rat>]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let base = &pts[0];
    let rows: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    RatMatrix::from_rows(rows).unwrap().rank()
}

/// Fourier–Motzkin feasibility of {a·x <= b}.
fn fm_feasible(dim: usize, ineqs: &[(Vec<Rat>, Rat)]) -> bool {
    let mut sys: Vec<(Vec<Rat>, Rat)> = ineqs.to_vec();
    for var in (0..dim).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for (a, b) in sys {
            let c = a[var].clone();
            if c.is_zero() {
                rest.push((a, b));
            } else if c.is_positive() {
                pos.push((a, b));
            } else {
                neg.push((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // Combine to eliminate x_var: scale so coefficients cancel.
                let cp = &ap[var];
                let cn = &an[var]; // negative
                let row: Vec<Rat> = (0..dim)
                    .map(|j| &ap[j] / cp - &an[j] / cn)
                    .collect();
                let b = bp / cp - bn / cn;
                rest.push((row, b));
            }
        }
        sys = rest;
    }
    // Only constant rows remain: 0 <= b must hold for all.
    sys.iter().all(|(_, b)| !b.is_negative())
}

/// Recursively triangulate a k-face given by its vertex set, coning from its
/// lexicographically least vertex over the facets that avoid it.
fn triangulate_face(
    all_ineqs: &[(Vec<Rat>, Rat)],
    face_verts: &[Vec<Rat>],
    k: usize,
    out: &mut Vec<Vec<Vec<Rat>>>,
) -> Result<()> {
    if face_verts.len() == k + 1 {
        out.push(face_verts.to_vec());
        return Ok(());
    }
    let apex = face_verts.iter().min().unwrap().clone();
    let mut seen: Vec<Vec<Vec<Rat>>> = Vec::new();
    for (a, b) in all_ineqs {
        let tight: Vec<Vec<Rat>> = face_verts
            .iter()
            .filter(|v| {
                let dot: Rat = a.iter().zip(v.iter()).map(|(ai, xi)| ai * xi).sum();
                dot == *b
            })
            .cloned()
            .collect();
        if tight.len() < k || affine_rank(&tight) != k - 1 {
            continue;
        }
        if tight.contains(&apex) {
            continue;
        }
        if seen.contains(&tight) {
            continue;
        }
        seen.push(tight.clone());
        let mut sub = Vec::new();
        triangulate_face(all_ineqs, &tight, k - 1, &mut sub)?;
        for mut simplex in sub {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    Ok(())
}

impl Simplex {
    /// d! scaled volume sign: det of edge matrix.
    fn jacobian_det(&self) -> Result<Rat> {
        let base = &self.vertices[0];
        let rows: Vec<Vec<Rat>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        RatMatrix::from_rows(rows)?.det()
    }

    /// Euclidean volume.
    pub fn volume(&self) -> Result<Rat> {
        let d = self.vertices.len() - 1;
        Ok(self.jacobian_det()?.abs() / Rat::from_integer(factorial(d as u32)))
    }
}

/// n! as a big integer (memoized per thread).
pub fn factorial(n: u32) -> BigInt {
    thread_local! {
        static CACHE: std::cell::RefCell<Vec<BigInt>> =
            std::cell::RefCell::new(vec![BigInt::one()]);
    }
    CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        while cache.len() <= n as usize {
            let next = cache.last().unwrap() * BigInt::from(cache.len());
            cache.push(next);
        }
        cache[n as usize].clone()
    })
}

/// ∫ over the standard d-simplex of u^b du = (∏ b_i!) / (|b| + d)!.
fn std_simplex_monomial(b: &[u32], d: usize) -> Rat {
    let total: u32 = b.iter().sum();
    let mut num = BigInt::one();
    for &bi in b {
        num *= factorial(bi);
    }
    Rat::new(num, factorial(total + d as u32))
}

/// Exact integral of `f` over one simplex.
pub fn integrate_over_simplex(f: &MultiPoly, s: &Simplex) -> Result<Rat> {
    let d = f.nvars();
    if s.vertices.len() != d + 1 || s.vertices.iter().any(|v| v.len() != d) {
        return Err(Error::Polytope("simplex/polynomial dimension mismatch".into()));
    }
    let jac = s.jacobian_det()?;
    if jac.is_zero() {
        return Err(Error::Polytope("degenerate simplex".into()));
    }
    let g = f.substitute(&simplex_substitution(s));
    let mut acc = Rat::zero();
    for (e, c) in g.terms() {
        acc += c * std_simplex_monomial(e, d);
    }
    Ok(acc * jac.abs())
}

/// The affine substitution x_i := v0_i + Σ_j (v_j - v0)_i u_j mapping the
/// standard simplex onto `s`.
fn simplex_substitution(s: &Simplex) -> Vec<MultiPoly> {
    let d = s.vertices.len() - 1;
    let base = &s.vertices[0];
    (0..base.len())
        .map(|i| {
            let coeffs: Vec<Rat> = (1..=d).map(|j| &s.vertices[j][i] - &base[i]).collect();
            MultiPoly::linear(d, base[i].clone(), &coeffs)
        })
        .collect()
}

/// Exact integral of `f` over `p` (full-dimensional).
pub fn integrate(f: &MultiPoly, p: &HPolytope) -> Result<Rat> {
    if f.nvars() != p.dim() {
        return Err(Error::Polytope(format!(
            "polynomial has {} variables, polytope has dimension {}",
            f.nvars(),
            p.dim()
        )));
    }
    let simplices = p.triangulate()?;
    let mut acc = Rat::zero();
    for s in &simplices {
        acc += integrate_over_simplex(f, s)?;
    }
    Ok(acc)
}

/// Integrals of ρ = ∏ factors_i ^ e_i and of m·ρ for each moment m, over `p`.
///
/// The density is expanded simplex-by-simplex in barycentric coordinates in
/// factored form (products of substituted low-degree polynomials), which is
/// far cheaper than expanding a high-degree density in ambient coordinates
/// and substituting monomial-by-monomial.  Work parallelizes over simplices.
pub fn integrate_factored(
    factors: &[(MultiPoly, u32)],
    moments: &[MultiPoly],
    p: &HPolytope,
) -> Result<Vec<Rat>> {
    let d = p.dim();
    if factors.iter().any(|(f, _)| f.nvars() != d) || moments.iter().any(|m| m.nvars() != d) {
        return Err(Error::Polytope("factored integrand dimension mismatch".into()));
    }
    let simplices = p.triangulate()?;
    let partials: Vec<Result<Vec<Rat>>> = simplices
        .par_iter()
        .map(|s| {
            let subs = simplex_substitution(s);
            let jac = s.jacobian_det()?.abs();
            let mut rho = MultiPoly::one(d);
            for (f, e) in factors {
                let fl = f.substitute(&subs);
                rho = rho.mul(&fl.pow(*e));
            }
            let mut row = Vec::with_capacity(1 + moments.len());
            let base: Rat = rho
                .terms()
                .map(|(e, c)| c * std_simplex_monomial(e, d))
                .sum();
            row.push(base * &jac);
            for m in moments {
                let mrho = rho.mul(&m.substitute(&subs));
                let v: Rat = mrho
                    .terms()
                    .map(|(e, c)| c * std_simplex_monomial(e, d))
                    .sum();
                row.push(v * &jac);
            }
            Ok(row)
        })
        .collect();
    let mut acc = vec![Rat::zero(); 1 + moments.len()];
    for row in partials {
        for (a, v) in acc.iter_mut().zip(row?) {
            *a += v;
        }
    }
    Ok(acc)
}

/// Parse the line-based polytope format: each nonempty line is
/// `ineq: a1 ... ad <= b`.
pub fn parse_polytope(text: &str) -> Result<HPolytope> {
    let mut dim: Option<usize> = None;
    let mut ineqs = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("ineq:")
            .ok_or_else(|| Error::Parse(format!("expected `ineq:` line, got `{line}`")))?;
        let (lhs, rhs) = rest
            .split_once("<=")
            .ok_or_else(|| Error::Parse(format!("missing `<=` in `{line}`")))?;
        let a: Vec<Rat> = lhs
            .split_whitespace()
            .map(|w| parse_rat(w).ok_or_else(|| Error::Parse(format!("bad rational `{w}`"))))
            .collect::<Result<_>>()?;
        let b = parse_rat(rhs.trim())
            .ok_or_else(|| Error::Parse(format!("bad right-hand side `{rhs}`")))?;
        if a.is_empty() {
            return Err(Error::Parse("inequality with no coefficients".into()));
        }
        match dim {
            None => dim = Some(a.len()),
            Some(d) if d != a.len() => {
                return Err(Error::Parse(format!(
                    "inconsistent dimension: {d} vs {}",
                    a.len()
                )))
            }
            _ => {}
        }
        ineqs.push((a, b));
    }
    let d = dim.ok_or_else(|| Error::Parse("empty polytope file".into()))?;
    HPolytope::new(d, ineqs)
}

/// Render in the line-based text format.
pub fn polytope_to_text(p: &HPolytope) -> String {
    let mut out = String::new();
    for (a, b) in p.ineqs() {
        out.push_str("ineq:");
        for c in a {
            out.push(' ');
            out.push_str(&rat_str(c));
        }
        out.push_str(" <= ");
        out.push_str(&rat_str(b));
        out.push('\n');
    }
    out
}

/// Axis-aligned box [lo_i, hi_i]^d as an H-polytope.
pub fn box_polytope(bounds: &[(Rat, Rat)]) -> Result<HPolytope> {
    let d = bounds.len();
    let mut ineqs = Vec::new();
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let mut row = vec![Rat::zero(); d];
        row[i] = Rat::one();
        ineqs.push((row.clone(), hi.clone()));
        let neg: Vec<Rat> = row.iter().map(|v| -v.clone()).collect();
        ineqs.push((neg, -lo.clone()));
    }
    HPolytope::new(d, ineqs)
}

/// The standard simplex {x_i >= 0, Σ x_i <= 1}.
pub fn standard_simplex(d: usize) -> Result<HPolytope> {
    let mut ineqs = Vec::new();
    for i in 0..d {
        let mut row = vec![Rat::zero(); d];
        row[i] = -Rat::one();
        ineqs.push((row, Rat::zero()));
    }
    ineqs.push((vec![Rat::one(); d], Rat::one()));
    HPolytope::new(d, ineqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};

    #[test]
    fn unit_square_vertices_and_volume() {
        let sq = box_polytope(&[(rat(0), rat(1)), (rat(0), rat(1))]).unwrap();
        let v = sq.vertices().unwrap();
        assert_eq!(v.len(), 4);
        let one = MultiPoly::one(2);
        assert_eq!(integrate(&one, &sq).unwrap(), rat(1));
        // ∫ x y over the unit square = 1/4.
        let xy = MultiPoly::var(2, 0).mul(&MultiPoly::var(2, 1));
        assert_eq!(integrate(&xy, &sq).unwrap(), ratq(1, 4));
    }

    #[test]
    fn standard_simplex_volume() {
        for d in 1..=5 {
            let s = standard_simplex(d).unwrap();
            let vol = integrate(&MultiPoly::one(d), &s).unwrap();
            assert_eq!(vol, Rat::new(BigInt::one(), factorial(d as u32)));
        }
    }

    #[test]
    fn empty_and_unbounded_are_errors() {
        // x <= 0 and x >= 1: empty.
        let p = HPolytope::new(1, vec![(vec![rat(1)], rat(0)), (vec![rat(-1)], rat(-1))]).unwrap();
        assert!(p.vertices().is_err());
        // x >= 0 only: unbounded.
        let p = HPolytope::new(1, vec![(vec![rat(-1)], rat(0))]).unwrap();
        assert!(p.vertices().is_err());
        // Band in 2d: unbounded but feasible.
        let p = HPolytope::new(
            2,
            vec![
                (vec![rat(1), rat(0)], rat(1)),
                (vec![rat(-1), rat(0)], rat(1)),
            ],
        )
        .unwrap();
        assert!(p.vertices().is_err());
    }

    #[test]
    fn lower_dimensional_triangulation_is_error() {
        // Segment {0 <= x <= 1, y = 0} in the plane.
        let p = HPolytope::new(
            2,
            vec![
                (vec![rat(1), rat(0)], rat(1)),
                (vec![rat(-1), rat(0)], rat(0)),
                (vec![rat(0), rat(1)], rat(0)),
                (vec![rat(0), rat(-1)], rat(0)),
            ],
        )
        .unwrap();
        assert_eq!(p.vertices().unwrap().len(), 2);
        assert!(p.triangulate().is_err());
    }

    #[test]
    fn one_dimensional_integrals() {
        // ∫_{-1}^{1} x (2x+2)^2 dx = 16/3.
        let f = MultiPoly::var(1, 0)
            .mul(&MultiPoly::linear(1, rat(2), &[rat(2)]).pow(2));
        let seg = box_polytope(&[(rat(-1), rat(1))]).unwrap();
        assert_eq!(integrate(&f, &seg).unwrap(), ratq(16, 3));
    }

    #[test]
    fn factored_matches_plain() {
        let sq = box_polytope(&[(rat(0), rat(2)), (rat(-1), rat(1))]).unwrap();
        let f = MultiPoly::linear(2, rat(1), &[rat(1), rat(-2)]);
        let g = MultiPoly::linear(2, rat(0), &[rat(1), rat(1)]);
        let rho = f.pow(3).mul(&g.pow(2));
        let moments = vec![MultiPoly::var(2, 0), MultiPoly::var(2, 1)];
        let fac = integrate_factored(&[(f, 3), (g, 2)], &moments, &sq).unwrap();
        assert_eq!(fac[0], integrate(&rho, &sq).unwrap());
        assert_eq!(fac[1], integrate(&rho.mul(&moments[0]), &sq).unwrap());
        assert_eq!(fac[2], integrate(&rho.mul(&moments[1]), &sq).unwrap());
    }

    #[test]
    fn triangulation_additivity() {
        // Volume of the hexagon |x|<=2, |y|<=2, |x+y|<=3 via triangulation
        // equals box volume minus two corner triangles: 16 - 1 = 15.
        let p = HPolytope::new(
            2,
            vec![
                (vec![rat(1), rat(0)], rat(2)),
                (vec![rat(-1), rat(0)], rat(2)),
                (vec![rat(0), rat(1)], rat(2)),
                (vec![rat(0), rat(-1)], rat(2)),
                (vec![rat(1), rat(1)], rat(3)),
                (vec![rat(-1), rat(-1)], rat(3)),
            ],
        )
        .unwrap();
        assert_eq!(integrate(&MultiPoly::one(2), &p).unwrap(), rat(15));
    }
}
