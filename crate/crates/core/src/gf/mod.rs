//! Arithmetic in the tower F_p ⊂ F_q ⊂ L = F_{q^n}.
//!
//! Elements of L are packed into a single integer code. The code is the
//! big-endian base-p number formed by the flattened F_p coordinates
//! (L-basis index first, then F_q-basis index), so numeric order on codes is
//! the lexicographic order on little-endian coordinate vectors. All sorting in
//! the crate relies on this.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! tower from the smallest primitive element.

mod base;
pub(crate) mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use base::{BaseField, MAX_BASE_ORDER};

use crate::error::{Error, Result};

/// Largest supported order of L.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// An element of L, as its packed coordinate code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Description of a field tower, as it appears in exported files.
///
/// `base_modulus` holds the F_p coefficients of the degree-e modulus,
/// little-endian and including the leading 1. `ext_modulus` holds n+1
/// coefficients over F_q, each one a little-endian F_p vector of length e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerConfig {
    pub p: u32,
    pub e: usize,
    pub n: usize,
    pub base_modulus: Vec<u32>,
    pub ext_modulus: Vec<Vec<u32>>,
}

impl TowerConfig {
    /// Configuration using the lexicographically smallest monic irreducible
    /// moduli at both levels.
    pub fn with_defaults(p: u32, e: usize, n: usize) -> Result<Self> {
        Self::with_moduli(p, e, n, None, None)
    }

    /// Configuration with optional modulus overrides; a missing extension
    /// modulus defaults to the smallest one over the chosen base field.
    /// Overrides are checked by [`Tower::new`].
    pub fn with_moduli(
        p: u32,
        e: usize,
        n: usize,
        base_modulus: Option<Vec<u32>>,
        ext_modulus: Option<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        check_order(p, e, n)?;
        let base = match base_modulus {
            Some(m) => BaseField::new(p, m)?,
            None => BaseField::with_default_modulus(p, e)?,
        };
        if base.e() != e {
            return Err(Error::InvalidConfig(format!(
                "base modulus has degree {}, expected {e}",
                base.e()
            )));
        }
        let ext_modulus = match ext_modulus {
            Some(m) => m,
            None => poly::smallest_irreducible(&base, n)
                .iter()
                .map(|&c| base.to_fp(c))
                .collect(),
        };
        Ok(TowerConfig {
            p,
            e,
            n,
            base_modulus: base.modulus().to_vec(),
            ext_modulus,
        })
    }
}

fn check_order(p: u32, e: usize, n: usize) -> Result<u64> {
    if e == 0 || n == 0 {
        return Err(Error::InvalidConfig("e and n must be positive".into()));
    }
    let too_large = || Error::FieldTooLarge(format!("{p}^({e}*{n})"));
    let digits = u32::try_from(e.checked_mul(n).ok_or_else(too_large)?).map_err(|_| too_large())?;
    (p as u64)
        .checked_pow(digits)
        .filter(|&o| o <= MAX_FIELD_ORDER)
        .ok_or_else(too_large)
}

/// θ_s = (q^(s+1) - 1)/(q - 1), the number of points of PG(s, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theta {
    pub s: i64,
    pub value: u128,
}

impl Theta {
    pub fn new(q: u64, s: i64) -> Self {
        assert!(s >= -1, "theta index below -1");
        let value = (0..=s).fold(0u128, |acc, _| acc * q as u128 + 1);
        Theta { s, value }
    }
}

/// Shorthand for `Theta::new(q, s).value`.
pub fn theta(q: u64, s: i64) -> u128 {
    Theta::new(q, s).value
}

/// The extension L = F_{q^n} over F_q = F_{p^e}.
pub struct Tower {
    config: TowerConfig,
    base: BaseField,
    n: usize,
    q: u32,
    order: u32,
    /// F_q codes of the extension modulus, little-endian, monic
    ext: Vec<u32>,
    /// q^i for i in 0..=n
    qpow: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: FieldElement,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("p", &self.config.p)
            .field("e", &self.config.e)
            .field("n", &self.n)
            .field("ext_modulus", &self.config.ext_modulus)
            .finish()
    }
}

impl Tower {
    pub fn new(config: TowerConfig) -> Result<Self> {
        let order = check_order(config.p, config.e, config.n)? as u32;
        let base = BaseField::new(config.p, config.base_modulus.clone())?;
        if base.e() != config.e {
            return Err(Error::InvalidConfig(format!(
                "base modulus has degree {}, expected {}",
                base.e(),
                config.e
            )));
        }
        let n = config.n;
        if config.ext_modulus.len() != n + 1 {
            return Err(Error::InvalidConfig(format!(
                "extension modulus needs {} coefficients",
                n + 1
            )));
        }
        let mut ext = Vec::with_capacity(n + 1);
        for c in &config.ext_modulus {
            if c.len() != config.e || c.iter().any(|&d| d >= config.p) {
                return Err(Error::InvalidConfig(
                    "malformed extension modulus coefficient".into(),
                ));
            }
            ext.push(base.from_fp(c));
        }
        if ext[n] != base.one() {
            return Err(Error::InvalidConfig(
                "extension modulus must be monic".into(),
            ));
        }
        if !poly::is_irreducible(&base, &ext) {
            return Err(Error::Reducible("extension modulus"));
        }
        let q = base.q();
        let qpow = (0..=n).map(|i| q.pow(i as u32)).collect();
        let mut tower = Tower {
            config,
            base,
            n,
            q,
            order,
            ext,
            qpow,
            exp: Vec::new(),
            log: Vec::new(),
            generator: FieldElement::ZERO,
        };
        tower.build_tables();
        Ok(tower)
    }

    pub fn with_defaults(p: u32, e: usize, n: usize) -> Result<Self> {
        Self::new(TowerConfig::with_defaults(p, e, n)?)
    }

    fn build_tables(&mut self) {
        let group = self.order as u64 - 1;
        let factors = poly::prime_factors(group);
        let generator = (1..self.order)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(g, group / r) != self.one())
            })
            .expect("multiplicative group is cyclic");
        self.generator = generator;

        // row j: coordinates of α^j · g
        let n = self.n;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|j| self.coords(self.slow_mul(self.basis_vector(j), generator)))
            .collect();
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![u32::MAX; self.order as usize];
        let mut cur = self.coords(self.one());
        let mut next = vec![0u32; n];
        for k in 0..group as u32 {
            let code = self.from_coords(&cur).0;
            exp.push(code);
            log[code as usize] = k;
            next.iter_mut().for_each(|x| *x = 0);
            for (j, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (x, &r) in next.iter_mut().zip(&rows[j]) {
                    *x = self.base.add(*x, self.base.mul(c, r));
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        debug_assert!(log[1..].iter().all(|&l| l != u32::MAX));
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut pa = self.coords(a);
        let mut pb = self.coords(b);
        poly::trim(&mut pa);
        poly::trim(&mut pb);
        let prod = poly::rem(&self.base, &poly::mul(&self.base, &pa, &pb), &self.ext);
        self.from_coords(&prod)
    }

    fn slow_pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut r = self.one();
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.slow_mul(r, b);
            }
            k >>= 1;
            if k > 0 {
                b = self.slow_mul(b, b);
            }
        }
        r
    }

    pub fn config(&self) -> &TowerConfig {
        &self.config
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn p(&self) -> u32 {
        self.config.p
    }

    pub fn e(&self) -> usize {
        self.config.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of L over F_q.
    pub fn n(&self) -> usize {
        self.n
    }

    /// |L| = q^n.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The primitive element used for discrete logarithms.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Wraps a raw code, checking range.
    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.order {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidConfig(format!(
                "element code {code} out of range"
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.embed(self.base.one())
    }

    /// The F_q element `c` (a base field code) as an element of L.
    #[inline]
    pub fn embed(&self, c: u32) -> FieldElement {
        FieldElement(c * self.qpow[self.n - 1])
    }

    /// The L-basis vector α^j.
    pub fn basis_vector(&self, j: usize) -> FieldElement {
        FieldElement(self.base.one() * self.qpow[self.n - 1 - j])
    }

    /// The defining root α (equal to `basis_vector(1)` when n > 1).
    pub fn alpha(&self) -> FieldElement {
        if self.n > 1 {
            self.basis_vector(1)
        } else {
            self.embed(self.base.neg(self.ext[0]))
        }
    }

    /// Coordinate `i` (coefficient of α^i) as an F_q code.
    #[inline]
    pub fn coord(&self, z: FieldElement, i: usize) -> u32 {
        z.0 / self.qpow[self.n - 1 - i] % self.q
    }

    /// F_q coordinates of `z`, coefficient of α^0 first.
    pub fn coords(&self, z: FieldElement) -> Vec<u32> {
        let mut out = vec![0; self.n];
        self.coords_into(z, &mut out);
        out
    }

    #[inline]
    pub fn coords_into(&self, z: FieldElement, out: &mut [u32]) {
        let mut c = z.0;
        for slot in out[..self.n].iter_mut().rev() {
            *slot = c % self.q;
            c /= self.q;
        }
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        let mut code = 0;
        for i in 0..self.n {
            code = code * self.q + coords.get(i).copied().unwrap_or(0);
        }
        FieldElement(code)
    }

    /// Flattened little-endian F_p coordinates.
    pub fn flatten(&self, z: FieldElement) -> Vec<u32> {
        let p = self.p();
        let len = self.e() * self.n;
        let mut out = vec![0; len];
        let mut c = z.0;
        for slot in out.iter_mut().rev() {
            *slot = c % p;
            c /= p;
        }
        out
    }

    pub fn from_flat(&self, flat: &[u32]) -> Result<FieldElement> {
        let p = self.p();
        if flat.len() != self.e() * self.n || flat.iter().any(|&d| d >= p) {
            return Err(Error::InvalidConfig(format!(
                "expected {} coordinates in [0, {p})",
                self.e() * self.n
            )));
        }
        Ok(FieldElement(flat.iter().fold(0, |acc, &d| acc * p + d)))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.config.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let q = self.q;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.n {
            out += self.base.add(x % q, y % q) * w;
            x /= q;
            y /= q;
            w *= q;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.config.p == 2 {
            return a;
        }
        let q = self.q;
        let mut x = a.0;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.n {
            out += self.base.neg(x % q) * w;
            x /= q;
            w *= q;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    fn group_order(&self) -> u64 {
        self.order as u64 - 1
    }

    /// Discrete logarithm to the base `generator()`; `None` for zero.
    #[inline]
    pub fn log(&self, z: FieldElement) -> Option<u64> {
        if z.0 == 0 {
            None
        } else {
            Some(self.log[z.0 as usize] as u64)
        }
    }

    /// generator()^k.
    #[inline]
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % self.group_order()) as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        let g = self.group_order();
        FieldElement(self.exp[(if s >= g { s - g } else { s }) as usize])
    }

    /// Product of an F_q scalar (base code) with an element of L.
    #[inline]
    pub fn scale(&self, c: u32, z: FieldElement) -> FieldElement {
        self.mul(self.embed(c), z)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let g = self.group_order();
        Ok(FieldElement(
            self.exp[((g - self.log[a.0 as usize] as u64) % g) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for any integer k; negative exponents need a nonzero base.
    pub fn pow(&self, a: FieldElement, k: i128) -> Result<FieldElement> {
        if a.0 == 0 {
            return match k {
                0 => Ok(self.one()),
                k if k > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let g = self.group_order() as i128;
        let k = k.rem_euclid(g) as u128;
        let l = self.log[a.0 as usize] as u128;
        Ok(FieldElement(self.exp[(l * k % g as u128) as usize]))
    }

    /// q^j reduced modulo q^n - 1.
    fn q_power_mod_group(&self, j: u64) -> u64 {
        let g = self.group_order() as u128;
        if g == 1 {
            return 0;
        }
        let mut r = 1u128;
        let mut b = self.q as u128 % g;
        let mut j = j;
        while j > 0 {
            if j & 1 == 1 {
                r = r * b % g;
            }
            b = b * b % g;
            j >>= 1;
        }
        r as u64
    }

    /// z^(q^j).
    pub fn frobenius(&self, z: FieldElement, j: u64) -> FieldElement {
        if z.0 == 0 {
            return z;
        }
        let k = self.q_power_mod_group(j) as u128;
        let l = self.log[z.0 as usize] as u128;
        FieldElement(self.exp[(l * k % self.group_order() as u128) as usize])
    }

    /// True iff z lies in the subfield F_{q^d}.
    pub fn in_subfield(&self, z: FieldElement, d: usize) -> bool {
        self.frobenius(z, d as u64) == z
    }

    /// Norm from L down to F_{q^d}: z^((q^n - 1)/(q^d - 1)).
    pub fn norm(&self, z: FieldElement, d: usize) -> Result<FieldElement> {
        self.relative_norm(z, self.n, d)
    }

    /// Norm from F_{q^from} down to F_{q^to} of an element of F_{q^from}.
    pub fn relative_norm(&self, z: FieldElement, from: usize, to: usize) -> Result<FieldElement> {
        if to == 0 || !from.is_multiple_of(to) {
            return Err(Error::NotADivisor { d: to, n: from });
        }
        if from == 0 || !self.n.is_multiple_of(from) {
            return Err(Error::NotADivisor { d: from, n: self.n });
        }
        let q = self.q as u128;
        let exponent = (q.pow(from as u32) - 1) / (q.pow(to as u32) - 1);
        let out = self.pow(z, exponent as i128)?;
        debug_assert!(z.0 == 0 || self.in_subfield(out, to));
        Ok(out)
    }

    /// [F_q(z) : F_q], the least d | n with z^(q^d) = z.
    pub fn degree_over_base(&self, z: FieldElement) -> usize {
        divisors(self.n)
            .into_iter()
            .find(|&d| self.in_subfield(z, d))
            .unwrap_or(self.n)
    }

    /// Some ℓ with ℓ^(q-1) = u, namely g^(log u / (q-1)).
    pub fn root_q_minus_1(&self, u: FieldElement) -> Result<FieldElement> {
        let l = self.log(u).ok_or(Error::ZeroArgument)?;
        let qm1 = self.q as u64 - 1;
        if l % qm1 != 0 {
            return Err(Error::NoRoot);
        }
        Ok(self.exp(l / qm1))
    }
}

/// Divisors of n in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
