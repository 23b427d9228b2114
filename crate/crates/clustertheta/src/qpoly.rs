//! Laurent polynomials in one variable `q` and rational functions of `q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, String)>", into = "Vec<(i64, String)>")]
pub struct QPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl From<QPoly> for Vec<(i64, String)> {
    fn from(p: QPoly) -> Self {
        p.coeffs
            .into_iter()
            .map(|(e, c)| (e, c.to_string()))
            .collect()
    }
}

impl TryFrom<Vec<(i64, String)>> for QPoly {
    type Error = String;
    fn try_from(v: Vec<(i64, String)>) -> Result<Self, String> {
        let mut p = QPoly::zero();
        for (e, c) in v {
            p.add_term(e, c.parse().map_err(|_| format!("bad coefficient {c:?}"))?);
        }
        Ok(p)
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c·q^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut p = QPoly::default();
        p.add_term(e, c);
        p
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    pub fn from_coeffs(cs: &[BigInt]) -> Self {
        let mut p = QPoly::default();
        for (i, c) in cs.iter().enumerate() {
            p.add_term(i as i64, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let mut r = self.clone();
        for (e, c) in &o.coeffs {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let mut r = self.clone();
        for (e, c) in &o.coeffs {
            r.add_term(*e, -c);
        }
        r
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        let mut r = QPoly::default();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> QPoly {
        (0..k).fold(QPoly::one(), |acc, _| acc.mul(self))
    }

    /// Value at an integer `q`; negative powers need `q = ±1`.
    pub fn eval(&self, q: &BigInt) -> BigRational {
        let qr = BigRational::from_integer(q.clone());
        self.coeffs.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let pw = if *e >= 0 {
                num_traits::pow(qr.clone(), *e as usize)
            } else {
                num_traits::pow(qr.recip(), e.unsigned_abs() as usize)
            };
            acc + BigRational::from_integer(c.clone()) * pw
        })
    }

    /// Value at `q = 1`: the sum of coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// `num / den` with equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatQ {
    pub num: QPoly,
    pub den: QPoly,
}

impl RatQ {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatQ { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatQ {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn add(&self, o: &RatQ) -> RatQ {
        RatQ::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatQ) -> RatQ {
        RatQ::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &RatQ) -> RatQ {
        RatQ::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl PartialEq for RatQ {
    fn eq(&self, o: &RatQ) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}
