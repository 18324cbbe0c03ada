//! Finite fields GF(p^k) with elements encoded as integers `0..q`.
//!
//! An element is the base-`p` digit vector of its code, digit `i` being the
//! coefficient of `x^i`. Extension fields reduce modulo the least monic
//! irreducible polynomial of degree `k`, ordering candidates by the integer
//! code of their non-leading coefficients (equivalently lexicographically,
//! highest degree first).

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    modulus: Vec<u32>,
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q % d == 0).unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((u32::try_from(p).ok()?, k))
}

fn digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic `m` (coefficients low to high, `m`
/// including its leading 1).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let off = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[off + i] = (r[off + i] + p - (lead * c) % p) % p;
        }
    }
    r.resize(dm, 0);
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = (m.len() - 1) as u32;
    // Any factorization has a monic factor of degree <= k/2.
    for d in 1..=k / 2 {
        for low in 0..p.pow(d) {
            let mut f = digits(low, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > u16::MAX as u64 {
            return Err(Error::InvalidParameter(format!("field of size {q} is too large")));
        }
        let q = q as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(k))
                .map(|low| {
                    let mut m = digits(low, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let digs: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, k)).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = digs[a].iter().zip(&digs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s, p) as u16;
                let prod = poly_rem(&poly_mul(&digs[a], &digs[b], p), &modulus, p);
                mul[a * n + b] = undigits(&prod, p) as u16;
            }
        }
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16)
            .collect();
        Ok(FiniteField {
            p,
            q,
            add,
            mul,
            neg,
            modulus,
        })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Coefficients of the reduction polynomial, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}
