//! Laurent polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::lattice::LatticeVec;

/// A finite sum `Σ c_m z^m` with `c_m ≠ 0`, exponents in a lattice of fixed rank.
///
/// Terms are kept in lexicographic exponent order, which fixes every
/// serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LaurentJson", into = "LaurentJson")]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<LatticeVec, BigInt>,
}

/// Serialized form: coefficients as decimal strings, terms in exponent order.
#[derive(Serialize, Deserialize)]
struct LaurentJson {
    nvars: usize,
    terms: Vec<(LatticeVec, String)>,
}

impl From<LaurentPoly> for LaurentJson {
    fn from(p: LaurentPoly) -> Self {
        LaurentJson {
            nvars: p.nvars,
            terms: p
                .terms
                .into_iter()
                .map(|(e, c)| (e, c.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<LaurentJson> for LaurentPoly {
    type Error = Error;
    fn try_from(j: LaurentJson) -> Result<Self> {
        let mut p = LaurentPoly::zero(j.nvars);
        for (e, c) in j.terms {
            check_len(j.nvars, e.len())?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient {c:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Serde helper writing a big integer as a decimal string.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(BigInt::one(), LatticeVec::zero(nvars))
    }

    pub fn monomial(c: BigInt, exp: LatticeVec) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The monomial `z^exp` with coefficient 1.
    pub fn z(exp: LatticeVec) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticeVec, BigInt)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVec, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &LatticeVec) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: LatticeVec, c: BigInt) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by `z^m`.
    pub fn shift(&self, m: &LatticeVec) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e + m, c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only exponents accepted by `keep`.
    pub fn mul_filtered<F: Fn(&LatticeVec) -> bool>(
        &self,
        other: &LaurentPoly,
        keep: F,
    ) -> LaurentPoly {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if keep(&e) {
                    r.add_term(e, c1 * c2);
                }
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `Some((c, m))` if the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&LatticeVec, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&LatticeVec, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum and maximum of the exponents.
    pub fn exponent_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for e in it {
            for i in 0..self.nvars {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / d` in the Laurent ring.
    ///
    /// Division by leading terms in lex order; every quotient exponent must stay
    /// inside the box forced by the Newton polytopes, otherwise the division is
    /// not exact.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        check_len(self.nvars, d.nvars)?;
        if d.is_zero() {
            return Err(Error::NonExactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (rlo, rhi) = self.exponent_box().unwrap();
        let (dlo, dhi) = d.exponent_box().unwrap();
        let (dlead, dcoef) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = &e - &dlead;
            let inside =
                (0..self.nvars).all(|i| qe[i] >= rlo[i] - dlo[i] && qe[i] <= rhi[i] - dhi[i]);
            let (qc, r) = c.div_rem(&dcoef);
            if !inside || !r.is_zero() {
                return Err(Error::NonExactDivision(format!("{self} by {d}")));
            }
            let t = Self::monomial(qc, qe);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Ok(q)
    }

    /// Sets the variables with index in `vars` to 1.
    pub fn specialize_to_one(&self, vars: &[usize]) -> LaurentPoly {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            for &i in vars {
                e2.0[i] = 0;
            }
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Keeps only the coordinates in `keep`, summing collapsed terms.
    pub fn project(&self, keep: &[usize]) -> LaurentPoly {
        let mut r = Self::zero(keep.len());
        for (e, c) in &self.terms {
            r.add_term(LatticeVec(keep.iter().map(|&i| e[i]).collect()), c.clone());
        }
        r
    }

    pub fn all_coeffs_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Applies `f` to every term, dropping those mapped to `None`.
    pub fn map_terms<F: Fn(&LatticeVec, &BigInt) -> Option<(LatticeVec, BigInt)>>(
        &self,
        nvars: usize,
        f: F,
    ) -> LaurentPoly {
        let mut r = Self::zero(nvars);
        for (e, c) in &self.terms {
            if let Some((e2, c2)) = f(e, c) {
                r.add_term(e2, c2);
            }
        }
        r
    }

    /// Canonical text, reading the exponent as `(A_1..A_n, X_1..X_n)`.
    pub fn to_canonical(&self) -> String {
        let n = self.nvars / 2;
        let names: Vec<String> = if self.nvars % 2 == 0 {
            (1..=n)
                .map(|i| format!("A{i}"))
                .chain((1..=n).map(|i| format!("X{i}")))
                .collect()
        } else {
            (1..=self.nvars).map(|i| format!("z{i}")).collect()
        };
        self.to_string_with(&names)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&mag.to_string());
            let factors: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, x)| format!("{}^{}", names[i], x))
                    .collect();
            if !factors.is_empty() {
                out.push_str(" * ");
                out.push_str(&factors.join(" "));
            }
        }
        out
    }

    /// Parses the canonical form produced by [`LaurentPoly::to_canonical`].
    pub fn parse_canonical(s: &str, n: usize) -> Result<LaurentPoly> {
        let nvars = 2 * n;
        let mut p = Self::zero(nvars);
        let s = s.trim();
        if s == "0" {
            return Ok(p);
        }
        let mut sign = BigInt::one();
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        }
        let mut chunks: Vec<(BigInt, &str)> = Vec::new();
        let mut cur_sign = sign;
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let cut = match (plus, minus) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            match cut {
                Some(i) => {
                    chunks.push((cur_sign.clone(), &rest[..i]));
                    cur_sign = if rest[i..].starts_with(" - ") {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    };
                    rest = &rest[i + 3..];
                }
                None => {
                    chunks.push((cur_sign.clone(), rest));
                    break;
                }
            }
        }
        let bad = |t: &str| Error::Invalid(format!("cannot parse term {t:?}"));
        for (sg, t) in chunks {
            let (cs, mono) = match t.split_once(" * ") {
                Some((a, b)) => (a, b),
                None => (t, ""),
            };
            let c: BigInt = cs.trim().parse().map_err(|_| bad(t))?;
            let mut e = vec![0i64; nvars];
            for f in mono.split_whitespace() {
                let (name, pw) = f.split_once('^').ok_or_else(|| bad(t))?;
                let pw: i64 = pw.parse().map_err(|_| bad(t))?;
                let (kind, idx) = name.split_at(1);
                let idx: usize = idx.parse().map_err(|_| bad(t))?;
                if idx == 0 || idx > n {
                    return Err(bad(t));
                }
                match kind {
                    "A" => e[idx - 1] += pw,
                    "X" => e[n + idx - 1] += pw,
                    _ => return Err(bad(t)),
                }
            }
            p.add_term(LatticeVec(e), sg * c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: &[i64]) -> LaurentPoly {
        LaurentPoly::z(LatticeVec(e.to_vec()))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = z(&[1, 0]).add(&z(&[0, 1]));
        let b = z(&[1, 0]).sub(&z(&[0, 1]));
        let p = a.mul(&b);
        assert_eq!(p, z(&[2, 0]).sub(&z(&[0, 2])));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.pow(3).len(), 4);
    }

    #[test]
    fn exact_division() {
        let a = z(&[1, 0]).add(&z(&[0, 1]));
        let b = z(&[-1, 2]).add(&LaurentPoly::one(2));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        let odd = z(&[1, 0]).add(&LaurentPoly::one(2));
        assert!(odd
            .div_exact(&z(&[0, 1]).add(&LaurentPoly::one(2)))
            .is_err());
        let two = LaurentPoly::monomial(BigInt::from(2), LatticeVec::zero(2));
        assert!(LaurentPoly::one(2).div_exact(&two).is_err());
    }

    #[test]
    fn canonical_text_round_trip() {
        let p = LaurentPoly::from_terms(
            4,
            vec![
                (LatticeVec(vec![1, -1, 0, 0]), BigInt::from(1)),
                (LatticeVec(vec![-1, -1, 0, 1]), BigInt::from(-2)),
                (LatticeVec(vec![0, 0, 0, 0]), BigInt::from(3)),
            ],
        );
        let s = p.to_canonical();
        assert_eq!(s, "-2 * A1^-1 A2^-1 X2^1 + 3 + 1 * A1^1 A2^-1");
        assert_eq!(LaurentPoly::parse_canonical(&s, 2).unwrap(), p);
        assert_eq!(LaurentPoly::zero(4).to_canonical(), "0");
    }

    #[test]
    fn specialization() {
        let p = z(&[1, -1, 0, 1]).add(&z(&[1, -1, 1, 0]));
        let q = p.specialize_to_one(&[2, 3]);
        assert_eq!(q.coeff(&LatticeVec(vec![1, -1, 0, 0])), BigInt::from(2));
    }
}
