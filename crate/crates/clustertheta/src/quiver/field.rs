//! Small finite fields `F_q`, `q = p^k ≤ 256`, by lookup tables.
//!
//! Elements are the integers `0..q`; the base-`p` digits of an element are
//! its coefficients in `F_p[x]/(f)` for a fixed monic irreducible `f`. Integer
//! `a` maps to `a mod p`.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut x = q;
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    (x == 1).then_some((p, k))
}

/// Prime powers in increasing order, up to `max`.
pub fn prime_powers(max: usize) -> Vec<usize> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
        if q > 256 {
            return Err(Error::Resource(format!(
                "field of order {q} exceeds table size 256"
            )));
        }
        let k = k as usize;
        let modulus = irreducible(p, k);
        let digits = |x: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            let mut x = x;
            for c in d.iter_mut() {
                *c = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s) as u8;
                // schoolbook product then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for i in 0..k {
                            prod[deg - k + i] = (prod[deg - k + i] + (p - c) * modulus[i]) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8
                }
            })
            .collect();
        Ok(FiniteField {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, a: i64) -> u8 {
        a.rem_euclid(self.p as i64) as u8
    }
}

// Lowest monic irreducible of degree k over F_p, as coefficients c_0..c_{k−1}
// of f = x^k + Σ c_i x^i.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    let total = p.pow(k as u32);
    for code in 0..total {
        let mut c = vec![0; k];
        let mut x = code;
        for ci in c.iter_mut() {
            *ci = x % p;
            x /= p;
        }
        let mut f = c.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = vec![0; d + 1];
            let mut x = code;
            for gi in g.iter_mut().take(d) {
                *gi = x % p;
                x /= p;
            }
            g[d] = 1;
            if poly_rem(f, &g, p).iter().all(|&r| r == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * gi) % p;
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q as u8 {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q}");
                }
                for b in 0..q as u8 {
                    for c in [0u8, 1, (q - 1) as u8] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // multiplicative group is cyclic of order q−1: some element has full order
            let gen = (1..q as u8).any(|g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = f.mul(x, g);
                    ord += 1;
                }
                ord == q - 1
            });
            assert!(gen, "q={q}");
        }
        assert!(FiniteField::new(6).is_err());
        assert_eq!(prime_powers(12), vec![2, 3, 4, 5, 7, 8, 9, 11]);
    }
}
