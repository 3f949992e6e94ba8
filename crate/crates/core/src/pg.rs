//! PG(n-1, q) modeled on L modulo F_q^*.
//!
//! A point is stored as its canonical representative: the lowest-index
//! nonzero F_q coordinate equals 1. A subspace is stored as its reduced row
//! echelon basis with pivots ascending, which is unique per subspace.

use crate::error::{Error, Result};
use crate::gf::{theta, FieldElement, Tower};

/// Default cap on the number of enumerated objects.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// A point Fx, held by its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(FieldElement);

impl ProjPoint {
    #[inline]
    pub fn rep(self) -> FieldElement {
        self.0
    }
}

/// A subspace of L over F_q in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<FieldElement>,
}

impl Subspace {
    pub fn basis(&self) -> &[FieldElement] {
        &self.rows
    }

    /// Vector dimension.
    pub fn vdim(&self) -> usize {
        self.rows.len()
    }

    /// Projective dimension, -1 for the zero subspace.
    pub fn pdim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    pub fn is_line(&self) -> bool {
        self.rows.len() == 2
    }
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl Tower {
    #[inline]
    fn is_binary(&self) -> bool {
        self.q() == 2
    }

    /// Canonical representative of Fx (x must be nonzero).
    #[inline]
    pub(crate) fn normalize(&self, x: FieldElement) -> FieldElement {
        debug_assert!(!x.is_zero());
        if self.is_binary() {
            return x;
        }
        let lead = (0..self.n())
            .map(|i| self.coord(x, i))
            .find(|&c| c != 0)
            .expect("nonzero vector");
        if lead == self.base().one() {
            x
        } else {
            self.scale(self.base().inv(lead), x)
        }
    }

    pub fn point(&self, x: FieldElement) -> Result<ProjPoint> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint(self.normalize(x)))
    }

    /// Point from a value already known to be nonzero.
    #[inline]
    pub fn point_of(&self, x: FieldElement) -> ProjPoint {
        ProjPoint(self.normalize(x))
    }

    /// θ_{n-1}, the number of points of the ambient space.
    pub fn point_count(&self) -> u128 {
        theta(self.q() as u64, self.n() as i64 - 1)
    }

    /// Every point of PG(n-1, q) in canonical order.
    pub fn all_points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        let q = self.q();
        let one = self.base().one();
        (0..self.n()).rev().flat_map(move |i| {
            // lowest nonzero coordinate is i; trailing n-1-i coordinates free
            let tail = q.pow((self.n() - 1 - i) as u32);
            let start = one * tail;
            (start..start + tail).map(|c| ProjPoint(self.element(c).unwrap()))
        })
    }

    /// Reduced row echelon form of a set of vectors, returned as codes.
    pub(crate) fn rref(&self, vectors: &[FieldElement]) -> Vec<FieldElement> {
        if self.is_binary() {
            return self.rref_binary(vectors);
        }
        let n = self.n();
        let f = self.base();
        let mut m: Vec<u32> = Vec::with_capacity(vectors.len() * n);
        for &v in vectors {
            if !v.is_zero() {
                let start = m.len();
                m.resize(start + n, 0);
                self.coords_into(v, &mut m[start..]);
            }
        }
        let rows = m.len() / n;
        let mut r = 0;
        for col in 0..n {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * n + col] != 0) else {
                continue;
            };
            if piv != r {
                for c in 0..n {
                    m.swap(piv * n + c, r * n + c);
                }
            }
            let inv = f.inv(m[r * n + col]);
            for c in col..n {
                m[r * n + c] = f.mul(m[r * n + c], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m[i * n + col];
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = f.mul(factor, m[r * n + c]);
                    m[i * n + c] = f.sub(m[i * n + c], v);
                }
            }
            r += 1;
        }
        (0..r)
            .map(|i| self.from_coords(&m[i * n..(i + 1) * n]))
            .collect()
    }

    /// Over F_2 the code is a bit vector whose coordinate i sits at bit n-1-i.
    fn rref_binary(&self, vectors: &[FieldElement]) -> Vec<FieldElement> {
        let mut rows: Vec<u32> = Vec::with_capacity(vectors.len());
        for &v in vectors {
            let mut x = v.code();
            for &r in &rows {
                if x & top_bit(r) != 0 {
                    x ^= r;
                }
            }
            if x != 0 {
                let b = top_bit(x);
                for r in rows.iter_mut() {
                    if *r & b != 0 {
                        *r ^= x;
                    }
                }
                rows.push(x);
            }
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        rows.into_iter().map(|c| self.element(c).unwrap()).collect()
    }

    /// Rank over F_q.
    pub fn rank(&self, vectors: &[FieldElement]) -> usize {
        if self.is_binary() {
            let mut basis: Vec<u32> = Vec::with_capacity(vectors.len());
            for &v in vectors {
                let mut x = v.code();
                for &r in &basis {
                    x = x.min(x ^ r);
                }
                if x != 0 {
                    basis.push(x);
                    basis.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
            return basis.len();
        }
        self.rref(vectors).len()
    }

    /// Rank of a set of points.
    pub fn point_rank(&self, points: &[ProjPoint]) -> usize {
        let reps: Vec<FieldElement> = points.iter().map(|p| p.rep()).collect();
        self.rank(&reps)
    }

    /// Projective dimension of the span of a point set.
    pub fn span_pdim(&self, points: &[ProjPoint]) -> isize {
        self.point_rank(points) as isize - 1
    }

    pub fn span(&self, vectors: &[FieldElement]) -> Subspace {
        Subspace {
            rows: self.rref(vectors),
        }
    }

    pub fn span_points(&self, points: &[ProjPoint]) -> Subspace {
        let reps: Vec<FieldElement> = points.iter().map(|p| p.rep()).collect();
        self.span(&reps)
    }

    pub fn line_through(&self, a: ProjPoint, b: ProjPoint) -> Result<Subspace> {
        if a == b {
            return Err(Error::CoincidentPoints);
        }
        Ok(self.span(&[a.rep(), b.rep()]))
    }

    /// Points of a subspace in canonical order; θ_{vdim-1} of them.
    pub fn subspace_points(&self, s: &Subspace) -> Vec<ProjPoint> {
        let q = self.q();
        let rows = s.basis();
        let k = rows.len();
        let mut out = Vec::with_capacity(theta(q as u64, k as i64 - 1) as usize);
        for i in 0..k {
            let tail = &rows[i + 1..];
            let count = (q as u64).pow(tail.len() as u32);
            for mut c in 0..count {
                let mut v = rows[i];
                for &r in tail {
                    let lambda = (c % q as u64) as u32;
                    c /= q as u64;
                    if lambda != 0 {
                        v = self.add(v, self.scale(lambda, r));
                    }
                }
                out.push(ProjPoint(v));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, s: &Subspace, x: FieldElement) -> bool {
        let mut v = s.basis().to_vec();
        v.push(x);
        self.rank(&v) == s.vdim()
    }

    /// dim(A ∩ B) = dim A + dim B - dim(A + B).
    pub fn intersection_vdim(&self, a: &Subspace, b: &Subspace) -> usize {
        let mut v = a.basis().to_vec();
        v.extend_from_slice(b.basis());
        a.vdim() + b.vdim() - self.rank(&v)
    }

    /// Every subspace of vector dimension `vdim`, each exactly once, in a
    /// fixed order (pivot sets lexicographically, then free entries).
    pub fn subspaces(
        &self,
        vdim: usize,
        budget: u128,
    ) -> Result<impl Iterator<Item = Subspace> + '_> {
        let n = self.n();
        let q = self.q();
        let needed = gaussian_binomial(n, vdim, q as u64);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let one = self.base().one();
        Ok(combinations(n, vdim).into_iter().flat_map(move |pivots| {
            // (row, column) of each free entry
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    (p + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let total = (q as u64).pow(free.len() as u32);
            (0..total).map(move |mut counter| {
                let mut coords = vec![vec![0u32; n]; pivots.len()];
                for (r, &p) in pivots.iter().enumerate() {
                    coords[r][p] = one;
                }
                for &(r, c) in &free {
                    coords[r][c] = (counter % q as u64) as u32;
                    counter /= q as u64;
                }
                Subspace {
                    rows: coords.iter().map(|c| self.from_coords(c)).collect(),
                }
            })
        }))
    }

    pub fn lines(&self, budget: u128) -> Result<impl Iterator<Item = Subspace> + '_> {
        self.subspaces(2, budget)
    }
}

#[inline]
fn top_bit(x: u32) -> u32 {
    1 << (31 - x.leading_zeros())
}
