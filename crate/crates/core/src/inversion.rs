//! The inversion map j(Fx) = Fx⁻¹ and what it does to lines.
//!
//! For a line through Fa and Fb put ω = a·b⁻¹ and m = [F_q(ω) : F_q]. Then
//!
//! ```text
//! (t₀a + t₁b)⁻¹ ∝ b⁻¹ · ∏_{i=1}^{m-1} (t₀·ω^{q^i} + t₁)
//! ```
//!
//! because the full product over i = 0..m-1 is the norm of t₀ω + t₁ down to
//! F_q. Expanding the right side gives m coefficient vectors in L, so j maps
//! the line onto the image of the (m-1)-uple embedding of PG(1, q).

use crate::error::{Error, Result};
use crate::gf::{gcd, theta, FieldElement, Tower};
use crate::pg::{combinations, ProjPoint, Subspace};

/// j(P).
#[inline]
pub fn invert_point(t: &Tower, p: ProjPoint) -> ProjPoint {
    // rep is nonzero, so the inverse exists
    t.point_of(t.inv(p.rep()).expect("points are nonzero"))
}

/// The points of PG(1, q) as (t₀, t₁) pairs of F_q codes, canonical order:
/// (0:1) first, then (1:u).
pub fn projective_line_params(t: &Tower) -> Vec<(u32, u32)> {
    let one = t.base().one();
    std::iter::once((0, one))
        .chain(t.base().elements().map(move |u| (one, u)))
        .collect()
}

/// True iff every `k`-subset of `points` is linearly independent.
pub fn is_arc(t: &Tower, points: &[ProjPoint], k: usize) -> bool {
    if k > points.len() {
        return false;
    }
    if k == points.len() {
        return t.point_rank(points) == k;
    }
    combinations(points.len(), k).into_iter().all(|idx| {
        let subset: Vec<FieldElement> = idx.iter().map(|&i| points[i].rep()).collect();
        t.rank(&subset) == k
    })
}

fn line_frame(l: &Subspace) -> Result<(FieldElement, FieldElement)> {
    if !l.is_line() {
        return Err(Error::NotALine);
    }
    Ok((l.basis()[0], l.basis()[1]))
}

/// m = [F_q(a·b⁻¹) : F_q] for any two distinct points Fa, Fb on the line.
pub fn line_inversion_degree(t: &Tower, l: &Subspace) -> Result<usize> {
    let (a, b) = line_frame(l)?;
    Ok(t.degree_over_base(t.div(a, b)?))
}

/// Image of a line under j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineImage {
    pub source: Subspace,
    pub points: Vec<ProjPoint>,
    pub m: usize,
    pub span_pdim: usize,
}

pub fn line_image(t: &Tower, l: &Subspace) -> Result<LineImage> {
    let m = line_inversion_degree(t, l)?;
    let mut points: Vec<ProjPoint> = t
        .subspace_points(l)
        .into_iter()
        .map(|p| invert_point(t, p))
        .collect();
    points.sort_unstable();
    let span_pdim = t.span_pdim(&points) as usize;
    Ok(LineImage {
        source: l.clone(),
        points,
        m,
        span_pdim,
    })
}

/// Coefficients c₀..c_{m-1} of the binary form b⁻¹·∏_{i=1}^{m-1}(t₀ω^{q^i} + t₁),
/// with c_j multiplying t₀^{m-1-j}·t₁^j.
pub fn nrc_coefficients(t: &Tower, a: FieldElement, b: FieldElement) -> Result<Vec<FieldElement>> {
    let pa = t.point(a)?;
    let pb = t.point(b)?;
    if pa == pb {
        return Err(Error::CoincidentPoints);
    }
    let b_inv = t.inv(b)?;
    let omega = t.mul(a, b_inv);
    let m = t.degree_over_base(omega);
    // by_t0[k] is the coefficient of t₀^k
    let mut by_t0 = vec![t.one()];
    for i in 1..m {
        let w = t.frobenius(omega, i as u64);
        let mut next = vec![FieldElement::ZERO; by_t0.len() + 1];
        for (k, &c) in by_t0.iter().enumerate() {
            next[k] = t.add(next[k], c);
            next[k + 1] = t.add(next[k + 1], t.mul(c, w));
        }
        by_t0 = next;
    }
    Ok((0..m).map(|j| t.mul(b_inv, by_t0[m - 1 - j])).collect())
}

/// Evaluates a binary form with coefficients `coeffs` (c_j on
/// t₀^{d-j}·t₁^j, d = len-1) at every point of PG(1, q).
pub fn evaluate_binary_form(t: &Tower, coeffs: &[FieldElement]) -> Vec<ProjPoint> {
    let f = t.base();
    let d = coeffs.len() as u64 - 1;
    let mut out: Vec<ProjPoint> = projective_line_params(t)
        .into_iter()
        .map(|(t0, t1)| {
            let v = coeffs
                .iter()
                .enumerate()
                .fold(FieldElement::ZERO, |acc, (j, &c)| {
                    let mono = f.mul(f.pow(t0, d - j as u64), f.pow(t1, j as u64));
                    if mono == 0 {
                        acc
                    } else {
                        t.add(acc, t.scale(mono, c))
                    }
                });
            t.point_of(v)
        })
        .collect();
    out.sort_unstable();
    out
}

/// Point set of the curve defined by `nrc_coefficients(a, b)`.
pub fn nrc_points(t: &Tower, a: FieldElement, b: FieldElement) -> Result<Vec<ProjPoint>> {
    Ok(evaluate_binary_form(t, &nrc_coefficients(t, a, b)?))
}

/// The r-uple embedding of PG(1, q), with the monomials t₀^{r-j}t₁^j in the
/// first r+1 coordinates.
pub fn canonical_nrc(t: &Tower, r: usize) -> Result<Vec<ProjPoint>> {
    if r == 0 {
        return Err(Error::InvalidConfig("r must be positive".into()));
    }
    if t.n() < r + 1 {
        return Err(Error::AmbientTooSmall);
    }
    let coeffs: Vec<FieldElement> = (0..=r).map(|j| t.basis_vector(j)).collect();
    Ok(evaluate_binary_form(t, &coeffs))
}

/// Explicit projectivity for a line with m = 2.
///
/// Source coordinates (t, u) stand for the point F(t·b + u·a), target
/// coordinates (t', u') for F(t'·b⁻¹ + u'·ω·b⁻¹), where a, b are the echelon
/// basis rows and ω = a·b⁻¹ satisfies ω² = αω + β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityWitness {
    pub a: FieldElement,
    pub b: FieldElement,
    pub alpha: u32,
    pub beta: u32,
    /// Row-major 2×2 matrix over F_q acting on column vectors (t, u).
    pub matrix: [[u32; 2]; 2],
}

pub fn check_projectivity_deg2(t: &Tower, l: &Subspace) -> Result<(bool, ProjectivityWitness)> {
    let (a, b) = line_frame(l)?;
    let b_inv = t.inv(b)?;
    let omega = t.mul(a, b_inv);
    let m = t.degree_over_base(omega);
    if m != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: m,
        });
    }
    let f = t.base();
    let omega_sq = t.mul(omega, omega);
    let (alpha, beta) = f
        .elements()
        .find_map(|alpha| {
            let rest = t.sub(omega_sq, t.scale(alpha, omega));
            t.coords(rest)[1..]
                .iter()
                .all(|&c| c == 0)
                .then(|| (alpha, t.coord(rest, 0)))
        })
        .expect("degree-2 element has a quadratic relation over F_q");
    let one = f.one();
    let matrix = [[one, alpha], [0, f.neg(one)]];
    let ok = projective_line_params(t).into_iter().all(|(s, u)| {
        let source = t.point_of(t.add(t.scale(s, b), t.scale(u, a)));
        let s2 = f.add(f.mul(matrix[0][0], s), f.mul(matrix[0][1], u));
        let u2 = f.add(f.mul(matrix[1][0], s), f.mul(matrix[1][1], u));
        let image = t.mul(b_inv, t.add(t.embed(s2), t.scale(u2, omega)));
        !image.is_zero() && invert_point(t, source) == t.point_of(image)
    });
    Ok((
        ok,
        ProjectivityWitness {
            a,
            b,
            alpha,
            beta,
            matrix,
        },
    ))
}

/// Parameters of the projection exponent identity
/// t^{q^{h'}-1} = k⁻¹·x^{q^{h'}-q^h} with t = ℓ·x^{exponent}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionParams {
    pub n: usize,
    pub h: usize,
    pub h_prime: usize,
    pub k: FieldElement,
    /// Inverse of θ_{h'-1} modulo θ_{n-1}.
    pub e: u128,
    pub ell: FieldElement,
    /// -q^{h'}·e·θ_{h-h'-1} reduced modulo q^n - 1.
    pub exponent: u128,
}

fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u128)
}

pub fn psi_params(
    t: &Tower,
    h: usize,
    h_prime: usize,
    k: FieldElement,
) -> Result<ProjectionParams> {
    let n = t.n();
    if !(0 < h_prime && h_prime < h && h < n) {
        return Err(Error::InvalidConfig(format!(
            "need 0 < h' < h <= n-1, got h = {h}, h' = {h_prime}, n = {n}"
        )));
    }
    if gcd((h - h_prime) as u64, n as u64) != 1 || gcd(h_prime as u64, n as u64) != 1 {
        return Err(Error::InvalidGcd { h, h_prime, n });
    }
    if k.is_zero() || t.norm(k, 1)? != t.one() {
        return Err(Error::NormNotOne);
    }
    let q = t.q() as u64;
    let e = mod_inverse(theta(q, h_prime as i64 - 1), theta(q, n as i64 - 1))
        .ok_or(Error::InvalidGcd { h, h_prime, n })?;
    assemble_psi_params(t, h, h_prime, k, e)
}

/// Builds the parameter set for a given `e` without validating it; used to
/// probe that a wrong `e` breaks the identity.
pub fn assemble_psi_params(
    t: &Tower,
    h: usize,
    h_prime: usize,
    k: FieldElement,
    e: u128,
) -> Result<ProjectionParams> {
    let q = t.q() as u128;
    let group = q.pow(t.n() as u32) - 1;
    let k_pow = t.pow(k, -((e % group) as i128))?;
    let ell = t.root_q_minus_1(k_pow)?;
    let magnitude = q.pow(h_prime as u32) % group * (e % group) % group
        * (theta(q as u64, (h - h_prime) as i64 - 1) % group)
        % group;
    let exponent = (group - magnitude) % group;
    Ok(ProjectionParams {
        n: t.n(),
        h,
        h_prime,
        k,
        e,
        ell,
        exponent,
    })
}

/// Whether t = ℓ·x^{exponent} satisfies t^{q^{h'}-1} = k⁻¹·x^{q^{h'}-q^h}.
pub fn psi_check(t: &Tower, x: FieldElement, params: &ProjectionParams) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let q = t.q() as i128;
    let tv = t.mul(params.ell, t.pow(x, params.exponent as i128)?);
    let lhs = t.pow(tv, q.pow(params.h_prime as u32) - 1)?;
    let rhs = t.mul(
        t.inv(params.k)?,
        t.pow(x, q.pow(params.h_prime as u32) - q.pow(params.h as u32))?,
    );
    Ok(lhs == rhs)
}
