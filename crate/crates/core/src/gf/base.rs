use super::poly::{self, PrimeField, SmallField};
use crate::error::{Error, Result};

/// Largest supported base field order; arithmetic is fully tabulated.
pub const MAX_BASE_ORDER: u32 = 256;

/// The base field F_q = F_p[β]/(base_modulus), with every operation
/// tabulated.
///
/// Element codes pack the F_p coordinates big-endian: the coordinate of β^j
/// has weight p^(e-1-j). Numeric order of codes is therefore the
/// lexicographic order of the little-endian coordinate vectors.
#[derive(Clone, Debug)]
pub struct BaseField {
    p: u32,
    e: usize,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl BaseField {
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !poly::is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        let e = modulus.len().saturating_sub(1);
        if e == 0 || modulus[e] != 1 {
            return Err(Error::InvalidConfig(
                "base modulus must be monic of degree >= 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidConfig(
                "base modulus coefficient out of range".into(),
            ));
        }
        let q = (p as u64)
            .checked_pow(e as u32)
            .filter(|&q| q <= MAX_BASE_ORDER as u64)
            .ok_or_else(|| Error::FieldTooLarge(format!("q = {p}^{e}")))? as u32;
        let fp = PrimeField { p };
        if !poly::is_irreducible(&fp, &modulus) {
            return Err(Error::Reducible("base modulus"));
        }

        let mut field = BaseField {
            p,
            e,
            q,
            modulus,
            add: vec![0; (q * q) as usize],
            mul: vec![0; (q * q) as usize],
            neg: vec![0; q as usize],
            inv: vec![0; q as usize],
        };
        let polys: Vec<Vec<u32>> = (0..q).map(|c| field.to_fp(c)).collect();
        for a in 0..q {
            for b in 0..q {
                let idx = (a * q + b) as usize;
                let sum: Vec<u32> = polys[a as usize]
                    .iter()
                    .zip(&polys[b as usize])
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                field.add[idx] = field.from_fp(&sum) as u8;
                let prod = poly::rem(
                    &fp,
                    &poly::mul(&fp, &polys[a as usize], &polys[b as usize]),
                    &field.modulus,
                );
                field.mul[idx] = field.from_fp(&prod) as u8;
            }
        }
        let one = field.one();
        for a in 0..q {
            let neg = (0..q)
                .find(|&b| field.add[(a * q + b) as usize] == 0)
                .unwrap();
            field.neg[a as usize] = neg as u8;
            if a != 0 {
                let inv = (1..q)
                    .find(|&b| field.mul[(a * q + b) as usize] as u32 == one)
                    .ok_or(Error::Reducible("base modulus"))?;
                field.inv[a as usize] = inv as u8;
            }
        }
        Ok(field)
    }

    /// Base field with the default (lexicographically smallest) modulus.
    pub fn with_default_modulus(p: u32, e: usize) -> Result<Self> {
        if !poly::is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidConfig("e must be positive".into()));
        }
        if (p as u64)
            .checked_pow(e as u32)
            .is_none_or(|q| q > MAX_BASE_ORDER as u64)
        {
            return Err(Error::FieldTooLarge(format!("q = {p}^{e}")));
        }
        let modulus = poly::smallest_irreducible(&PrimeField { p }, e);
        Self::new(p, modulus)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Little-endian F_p coordinates of a code.
    pub fn to_fp(&self, code: u32) -> Vec<u32> {
        let mut out = vec![0; self.e];
        let mut c = code;
        for j in (0..self.e).rev() {
            out[j] = c % self.p;
            c /= self.p;
        }
        out
    }

    pub fn from_fp(&self, coeffs: &[u32]) -> u32 {
        let mut code = 0;
        for j in 0..self.e {
            code = code * self.p + coeffs.get(j).copied().unwrap_or(0);
        }
        code
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        self.p.pow(self.e as u32 - 1)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize] as u32)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize] as u32
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut r = self.one();
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    /// Elements in code order (which is the canonical element order).
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl SmallField for BaseField {
    fn order(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        BaseField::add(self, a, b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        BaseField::sub(self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        BaseField::mul(self, a, b)
    }
    fn inv(&self, a: u32) -> u32 {
        BaseField::inv(self, a)
    }
    fn one(&self) -> u32 {
        BaseField::one(self)
    }
}
