//! Dense polynomials over small finite fields, used to validate and search
//! for moduli. Coefficients are little-endian field codes.

/// Minimal field interface over `u32` codes.
pub(crate) trait SmallField {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    fn one(&self) -> u32;
}

/// The prime field Z/pZ, codes are the residues themselves.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u32,
}

impl SmallField for PrimeField {
    fn order(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        let mut r = 1u64;
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        r as u32
    }
    fn one(&self) -> u32 {
        1
    }
}

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul<F: SmallField>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub(crate) fn rem<F: SmallField>(f: &F, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = f.inv(m[dm]);
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (k, &mk) in m[..=dm].iter().enumerate() {
            r[shift + k] = f.sub(r[shift + k], f.mul(c, mk));
        }
        trim(&mut r);
    }
    r
}

fn sub<F: SmallField>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd<F: SmallField>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    x
}

fn pow_mod<F: SmallField>(f: &F, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut result = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    result
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Rabin's irreducibility test for a monic polynomial `m`.
pub(crate) fn is_irreducible<F: SmallField>(f: &F, m: &[u32]) -> bool {
    let Some(d) = degree(m) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let order = f.order() as u64;
    let x = vec![0, f.one()];
    // frob[i] = x^(Q^(i+1)) mod m
    let mut frob = Vec::with_capacity(d);
    let mut cur = rem(f, &x, m);
    for _ in 0..d {
        cur = pow_mod(f, &cur, order, m);
        frob.push(cur.clone());
    }
    if frob[d - 1] != rem(f, &x, m) {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|r| {
        let h = sub(f, &frob[d / r as usize - 1], &x);
        let g = gcd(f, &h, m);
        degree(&g) == Some(0)
    })
}

fn has_root<F: SmallField>(f: &F, m: &[u32]) -> bool {
    (0..f.order()).any(|x| m.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
}

/// Lexicographically smallest monic irreducible polynomial of degree `d`,
/// comparing coefficients low-degree-first. Field codes must already be in
/// canonical element order.
pub(crate) fn smallest_irreducible<F: SmallField>(f: &F, d: usize) -> Vec<u32> {
    let order = f.order();
    // digits[0] is the most significant position of the counter
    let mut digits = vec![0u32; d];
    if d > 1 {
        // a zero constant term leaves x as a factor
        digits[0] = 1;
    }
    loop {
        let mut poly = digits.clone();
        poly.push(f.one());
        if (d == 1 || !has_root(f, &poly)) && is_irreducible(f, &poly) {
            return poly;
        }
        let mut pos = d;
        loop {
            assert!(pos > 0, "no irreducible polynomial of degree {d}");
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < order {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_f2_matches_known_list() {
        let f = PrimeField { p: 2 };
        assert!(is_irreducible(&f, &[1, 1, 1]));
        assert!(!is_irreducible(&f, &[1, 0, 1]));
        assert!(is_irreducible(&f, &[1, 1, 0, 0, 1]));
        assert!(is_irreducible(&f, &[1, 0, 0, 1, 1]));
        assert!(is_irreducible(&f, &[1, 1, 1, 1, 1]));
        assert!(!is_irreducible(&f, &[1, 0, 0, 0, 1]));
        // (x^2+x+1)^2
        assert!(!is_irreducible(&f, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn count_of_irreducibles_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18
        let f = PrimeField { p: 3 };
        let mut count = 0;
        for code in 0..81u32 {
            let poly = vec![code % 3, code / 3 % 3, code / 9 % 3, code / 27, 1];
            if is_irreducible(&f, &poly) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }

    #[test]
    fn smallest_irreducible_is_low_degree_first() {
        let f = PrimeField { p: 2 };
        assert_eq!(smallest_irreducible(&f, 4), vec![1, 0, 0, 1, 1]);
        let f3 = PrimeField { p: 3 };
        assert_eq!(smallest_irreducible(&f3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(&f3, 1), vec![0, 1]);
    }
}
