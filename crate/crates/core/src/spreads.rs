//! Desarguesian spreads, the twist φ, reguli, and the scattered line spread.
//!
//! Throughout, for the half-spread constructions, L = F_{q^{2n}},
//! M = F_{q^n}, and every z ∈ L is written uniquely as z = a + i·b with
//! a, b ∈ M for a fixed i ∈ L \ M.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{theta, FieldElement, Tower};
use crate::inversion::{invert_point, line_image};
use crate::pg::{ProjPoint, Subspace};

const NO_ELEMENT: u32 = u32::MAX;

/// A set of pairwise disjoint subspaces of equal dimension covering every
/// point. Construction verifies all three properties.
#[derive(Clone, Debug)]
pub struct Spread {
    elements: Vec<Subspace>,
    vdim: usize,
    /// element index of each point, indexed by representative code
    locator: Vec<u32>,
}

impl PartialEq for Spread {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Spread {
    /// Verifies and wraps a candidate spread. Elements keep their order.
    pub fn new(t: &Tower, elements: Vec<Subspace>) -> Result<Self> {
        let locator = verify_spread(t, &elements).map_err(Error::NotASpread)?;
        let vdim = elements[0].vdim();
        Ok(Spread {
            elements,
            vdim,
            locator,
        })
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Vector dimension shared by all elements.
    pub fn vdim(&self) -> usize {
        self.vdim
    }

    /// Index of the element containing `p`.
    pub fn element_of(&self, p: ProjPoint) -> usize {
        self.locator[p.rep().code() as usize] as usize
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.elements.binary_search(s).is_ok() || self.elements.contains(s)
    }
}

/// Independent spread check: equal dimension, no point covered twice, every
/// point covered. Returns the point-to-element table on success.
pub fn verify_spread(t: &Tower, elements: &[Subspace]) -> std::result::Result<Vec<u32>, String> {
    let Some(first) = elements.first() else {
        return Err("empty".into());
    };
    let vdim = first.vdim();
    if vdim == 0 {
        return Err("zero-dimensional elements".into());
    }
    if let Some((i, s)) = elements.iter().enumerate().find(|(_, s)| s.vdim() != vdim) {
        return Err(format!(
            "element {i} has dimension {} instead of {vdim}",
            s.vdim()
        ));
    }
    let mut locator = vec![NO_ELEMENT; t.order() as usize];
    let mut covered: u128 = 0;
    for (idx, s) in elements.iter().enumerate() {
        for p in t.subspace_points(s) {
            let slot = &mut locator[p.rep().code() as usize];
            if *slot != NO_ELEMENT {
                return Err(format!("elements {} and {idx} share a point", *slot));
            }
            *slot = idx as u32;
            covered += 1;
        }
    }
    if covered != t.point_count() {
        return Err(format!("covers {covered} of {} points", t.point_count()));
    }
    Ok(locator)
}

/// True iff `s` meets every element of `spread` in at most one point.
pub fn is_scattered(t: &Tower, s: &Subspace, spread: &Spread) -> bool {
    let mut seen: Vec<usize> = t
        .subspace_points(s)
        .into_iter()
        .map(|p| spread.element_of(p))
        .collect();
    let len = seen.len();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == len
}

/// D = {Cx : x ∈ L*} with C = F_{q²}; needs n even.
pub fn desarguesian_line_spread(t: &Tower) -> Result<Spread> {
    subfield_spread(t, 2)
}

/// The Desarguesian spread {F_{q^d}·x} of (d-1)-subspaces.
pub fn subfield_spread(t: &Tower, d: usize) -> Result<Spread> {
    let n = t.n();
    if d == 2 && !n.is_multiple_of(2) {
        return Err(Error::OddDegree);
    }
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, n });
    }
    let q = t.q() as u64;
    let group = q.pow(n as u32) - 1;
    let sub_group = q.pow(d as u32) - 1;
    // F_{q^d}* is generated by g^(group/sub_group); cosets are g^k, k < group/sub_group
    let w = t.exp(group / sub_group);
    let basis: Vec<FieldElement> = (0..d as i128).map(|j| t.pow(w, j).unwrap()).collect();
    let mut elements: Vec<Subspace> = (0..group / sub_group)
        .map(|k| {
            let x = t.exp(k);
            let span: Vec<FieldElement> = basis.iter().map(|&b| t.mul(b, x)).collect();
            t.span(&span)
        })
        .collect();
    elements.sort();
    Spread::new(t, elements)
}

/// Index of an element of the half spread: a ∈ M or ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpreadIndex {
    Infinity,
    Finite(FieldElement),
}

/// Coordinates for L = M ⊕ iM and everything built on them.
#[derive(Debug)]
pub struct HalfSpreadFrame<'t> {
    t: &'t Tower,
    half: usize,
    i: FieldElement,
    /// (i - i^{q^n})⁻¹
    conj_gap_inv: FieldElement,
    /// generator of M*
    gamma: FieldElement,
}

impl<'t> HalfSpreadFrame<'t> {
    /// Frame with the smallest i ∈ L \ M in code order.
    pub fn new(t: &'t Tower) -> Result<Self> {
        let half = half_degree(t)?;
        let i = t
            .elements()
            .find(|&z| !t.in_subfield(z, half))
            .expect("L is larger than M");
        Self::with_i(t, i)
    }

    pub fn with_i(t: &'t Tower, i: FieldElement) -> Result<Self> {
        let half = half_degree(t)?;
        if t.in_subfield(i, half) {
            return Err(Error::InvalidI);
        }
        let conj_gap_inv = t.inv(t.sub(i, t.frobenius(i, half as u64)))?;
        let q = t.q() as u64;
        let gamma = t.exp((q.pow(2 * half as u32) - 1) / (q.pow(half as u32) - 1));
        Ok(HalfSpreadFrame {
            t,
            half,
            i,
            conj_gap_inv,
            gamma,
        })
    }

    pub fn tower(&self) -> &'t Tower {
        self.t
    }

    /// n, the degree of M over F_q.
    pub fn half_degree(&self) -> usize {
        self.half
    }

    pub fn i(&self) -> FieldElement {
        self.i
    }

    pub fn in_m(&self, z: FieldElement) -> bool {
        self.t.in_subfield(z, self.half)
    }

    /// F_q-basis 1, γ, …, γ^{n-1} of M.
    pub fn m_basis(&self) -> Vec<FieldElement> {
        (0..self.half as i128)
            .map(|j| self.t.pow(self.gamma, j).unwrap())
            .collect()
    }

    /// All elements of M in code order.
    pub fn m_elements(&self) -> Vec<FieldElement> {
        let q = self.t.q() as u64;
        let mut out: Vec<FieldElement> = std::iter::once(FieldElement::ZERO)
            .chain((0..q.pow(self.half as u32) - 1).map(|k| self.pow_gamma(k)))
            .collect();
        out.sort_unstable();
        out
    }

    fn pow_gamma(&self, k: u64) -> FieldElement {
        self.t.pow(self.gamma, k as i128).unwrap()
    }

    /// (a, b) ∈ M × M with z = a + i·b.
    pub fn decompose(&self, z: FieldElement) -> (FieldElement, FieldElement) {
        let t = self.t;
        let conj = t.frobenius(z, self.half as u64);
        let b = t.mul(t.sub(z, conj), self.conj_gap_inv);
        let a = t.sub(z, t.mul(self.i, b));
        (a, b)
    }

    /// φ̂(a + ib) = a^q + ib.
    pub fn phi(&self, z: FieldElement) -> FieldElement {
        let (a, b) = self.decompose(z);
        self.t.add(self.t.frobenius(a, 1), self.t.mul(self.i, b))
    }

    pub fn phi_subspace(&self, s: &Subspace) -> Subspace {
        let images: Vec<FieldElement> = s.basis().iter().map(|&z| self.phi(z)).collect();
        self.t.span(&images)
    }

    fn check_index(&self, idx: SpreadIndex) -> Result<()> {
        match idx {
            SpreadIndex::Finite(a) if !self.in_m(a) => Err(Error::IndexNotInM),
            _ => Ok(()),
        }
    }

    /// S_a = {F c(a+i) : c ∈ M*}, S_∞ = {Fc : c ∈ M*}.
    pub fn element(&self, idx: SpreadIndex) -> Result<Subspace> {
        self.check_index(idx)?;
        let shift = match idx {
            SpreadIndex::Infinity => self.t.one(),
            SpreadIndex::Finite(a) => self.t.add(a, self.i),
        };
        let span: Vec<FieldElement> = self
            .m_basis()
            .iter()
            .map(|&c| self.t.mul(c, shift))
            .collect();
        Ok(self.t.span(&span))
    }

    pub fn phi_element(&self, idx: SpreadIndex) -> Result<Subspace> {
        Ok(self.phi_subspace(&self.element(idx)?))
    }

    pub fn indices(&self) -> Vec<SpreadIndex> {
        std::iter::once(SpreadIndex::Infinity)
            .chain(self.m_elements().into_iter().map(SpreadIndex::Finite))
            .collect()
    }

    /// The spread S, elements in index order (∞ first).
    pub fn spread(&self) -> Result<Spread> {
        let elements = self
            .indices()
            .into_iter()
            .map(|idx| self.element(idx))
            .collect::<Result<Vec<_>>>()?;
        Spread::new(self.t, elements)
    }

    /// The spread S^φ, in the same index order.
    pub fn phi_spread(&self) -> Result<Spread> {
        let elements = self
            .indices()
            .into_iter()
            .map(|idx| self.phi_element(idx))
            .collect::<Result<Vec<_>>>()?;
        Spread::new(self.t, elements)
    }

    /// Number of points in S_a ∩ S_b^φ for a, b ∈ M*.
    pub fn scattered_intersection_check(&self, a: FieldElement, b: FieldElement) -> Result<u128> {
        for x in [a, b] {
            if !self.in_m(x) {
                return Err(Error::IndexNotInM);
            }
            if x.is_zero() {
                return Err(Error::ZeroIndex);
            }
        }
        let sa = self.element(SpreadIndex::Finite(a))?;
        let sb = self.phi_element(SpreadIndex::Finite(b))?;
        let d = self.t.intersection_vdim(&sa, &sb);
        Ok(theta(self.t.q() as u64, d as i64 - 1))
    }

    /// Regulus {S_∞, S_0} ∪ {S_{μa₀}^φ : μ ∈ F*} with its transversals
    /// ⟨c^q a₀^q, c·i⟩, c ∈ M*/F*.
    pub fn regulus_with_transversals(&self, a0: FieldElement) -> Result<Regulus> {
        if a0.is_zero() {
            return Err(Error::ZeroIndex);
        }
        if !self.in_m(a0) {
            return Err(Error::IndexNotInM);
        }
        let t = self.t;
        let mut indices = vec![
            SpreadIndex::Infinity,
            SpreadIndex::Finite(FieldElement::ZERO),
        ];
        indices.extend((1..t.q()).map(|mu| SpreadIndex::Finite(t.scale(mu, a0))));
        let elements = indices
            .iter()
            .map(|&idx| self.phi_element(idx))
            .collect::<Result<Vec<_>>>()?;
        let a0q = t.frobenius(a0, 1);
        let q = t.q() as u64;
        // M*/F* has representatives γ^k, k < θ_{n-1}
        let reps = theta(q, self.half as i64 - 1) as u64;
        let mut transversals: Vec<Subspace> = (0..reps)
            .map(|k| {
                let c = self.pow_gamma(k);
                t.span(&[t.mul(t.frobenius(c, 1), a0q), t.mul(c, self.i)])
            })
            .collect();
        transversals.sort();
        Ok(Regulus {
            indices,
            elements,
            transversals,
        })
    }

    /// Line spread of S_a^φ: the F_{q²}-spread of M pushed through
    /// c ↦ c^q·a^q + c·i.
    pub fn subspace_line_spread(&self, a: FieldElement) -> Result<Vec<Subspace>> {
        if !self.half.is_multiple_of(2) {
            return Err(Error::OddDegree);
        }
        if !self.in_m(a) {
            return Err(Error::IndexNotInM);
        }
        let t = self.t;
        let q = t.q() as u64;
        let aq = t.frobenius(a, 1);
        let push = |c: FieldElement| t.add(t.mul(t.frobenius(c, 1), aq), t.mul(c, self.i));
        let cosets = (q.pow(self.half as u32) - 1) / (q * q - 1);
        let w = self.pow_gamma(cosets);
        let mut lines: Vec<Subspace> = (0..cosets)
            .map(|k| {
                let c = self.pow_gamma(k);
                t.span(&[push(c), push(t.mul(w, c))])
            })
            .collect();
        lines.sort();
        Ok(lines)
    }

    /// A line spread of PG(2n-1, q) all of whose lines are scattered with
    /// respect to S: the transversals of the regulus at a₀ = 1, plus a line
    /// spread of every S_a^φ outside that regulus.
    pub fn scattered_line_spread(&self) -> Result<Spread> {
        if !self.half.is_multiple_of(2) {
            return Err(Error::OddDegree);
        }
        let t = self.t;
        let regulus = self.regulus_with_transversals(t.one())?;
        let outside: Vec<FieldElement> = self
            .m_elements()
            .into_iter()
            .filter(|&a| !t.in_subfield(a, 1))
            .collect();
        let parts = outside
            .par_iter()
            .map(|&a| self.subspace_line_spread(a))
            .collect::<Result<Vec<_>>>()?;
        let mut lines = regulus.transversals;
        lines.extend(parts.into_iter().flatten());
        lines.sort();
        Spread::new(t, lines)
    }
}

fn half_degree(t: &Tower) -> Result<usize> {
    if !t.n().is_multiple_of(2) {
        return Err(Error::OddDegree);
    }
    Ok(t.n() / 2)
}

/// q+1 subspaces of a Desarguesian spread together with their transversal
/// lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regulus {
    pub indices: Vec<SpreadIndex>,
    pub elements: Vec<Subspace>,
    pub transversals: Vec<Subspace>,
}

/// Every transversal meets every element in one point, and the transversals
/// partition the union of the elements.
pub fn verify_regulus(t: &Tower, r: &Regulus) -> std::result::Result<(), String> {
    for (ti, l) in r.transversals.iter().enumerate() {
        if !l.is_line() {
            return Err(format!("transversal {ti} is not a line"));
        }
        for (ei, e) in r.elements.iter().enumerate() {
            let d = t.intersection_vdim(l, e);
            if d != 1 {
                return Err(format!(
                    "transversal {ti} meets element {ei} in dimension {d}"
                ));
            }
        }
    }
    let mut union: Vec<ProjPoint> = r
        .elements
        .iter()
        .flat_map(|e| t.subspace_points(e))
        .collect();
    union.sort_unstable();
    let before = union.len();
    union.dedup();
    if union.len() != before {
        return Err("regulus elements are not disjoint".into());
    }
    let mut covered: Vec<ProjPoint> = r
        .transversals
        .iter()
        .flat_map(|l| t.subspace_points(l))
        .collect();
    covered.sort_unstable();
    if covered != union {
        return Err("transversals do not partition the regulus".into());
    }
    Ok(())
}

/// Number of lines of D fixed (as sets) by j.
pub fn fixed_line_census(t: &Tower) -> Result<usize> {
    let d = desarguesian_line_spread(t)?;
    Ok(d.elements()
        .par_iter()
        .filter(|l| {
            let pts = t.subspace_points(l);
            let mut img: Vec<ProjPoint> = pts.iter().map(|&p| invert_point(t, p)).collect();
            img.sort_unstable();
            img == pts
        })
        .count())
}

/// All lines whose image under j is a line, in canonical order.
pub fn line_image_census(t: &Tower, budget: u128) -> Result<Vec<Subspace>> {
    let lines: Vec<Subspace> = t.lines(budget)?.collect();
    let mut hits = lines
        .into_par_iter()
        .map(|l| line_image(t, &l).map(|img| (img.span_pdim == 1).then_some(l)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    hits.sort();
    Ok(hits)
}

/// Outcome of scanning all (m-1)-subspaces.
#[derive(Clone, Debug)]
pub struct SubspaceCensus {
    pub m: usize,
    pub total: u128,
    /// subspaces whose j-image is again an (m-1)-subspace, canonical order
    pub matching: Vec<Subspace>,
    /// the matching set is a spread with (q^n-1)/(q^m-1) elements
    pub is_spread: bool,
}

pub fn subspace_image_census(t: &Tower, m: usize, budget: u128) -> Result<SubspaceCensus> {
    let n = t.n();
    if m < 2 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor { d: m, n });
    }
    let all: Vec<Subspace> = t.subspaces(m, budget)?.collect();
    let total = all.len() as u128;
    let mut matching: Vec<Subspace> = all
        .into_par_iter()
        .filter(|s| {
            let img: Vec<ProjPoint> = t
                .subspace_points(s)
                .into_iter()
                .map(|p| invert_point(t, p))
                .collect();
            t.point_rank(&img) == m
        })
        .collect();
    matching.sort();
    let q = t.q() as u128;
    let expected = (q.pow(n as u32) - 1) / (q.pow(m as u32) - 1);
    let is_spread = matching.len() as u128 == expected && verify_spread(t, &matching).is_ok();
    Ok(SubspaceCensus {
        m,
        total,
        matching,
        is_spread,
    })
}
