//! Truncated series graded by the `N⁺` degree.
//!
//! For an exponent `(m, n) ∈ M ⊕ N` the degree is `Σ n_i`. Wall functions are
//! series in `z^{p̃*(n,0)}`, so the degree counts wall factors.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::laurent::LaurentPoly;
use crate::limits::limits;

/// Degree of an exponent in `M ⊕ N`: the sum of its `N` half.
pub fn degree(exp: &LatticeVec) -> i64 {
    let n = exp.len() / 2;
    exp.0[n..].iter().sum()
}

/// Truncated graded series: all terms have degree at most `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSeries {
    order: u32,
    poly: LaurentPoly,
}

impl GradedSeries {
    pub fn new(poly: LaurentPoly, order: u32) -> Self {
        GradedSeries {
            poly: truncate(&poly, order as i64),
            order,
        }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        GradedSeries {
            poly: LaurentPoly::one(nvars),
            order,
        }
    }

    /// `1 + c·z^e`.
    pub fn binomial(e: LatticeVec, c: BigInt, order: u32) -> Self {
        let nv = e.len();
        Self::new(
            LaurentPoly::one(nv).add(&LaurentPoly::monomial(c, e)),
            order,
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_one(&self) -> bool {
        self.poly == LaurentPoly::one(self.poly.nvars())
    }

    pub fn constant_term(&self) -> BigInt {
        self.poly.coeff(&LatticeVec::zero(self.poly.nvars()))
    }

    /// Re-truncates to a lower order.
    pub fn with_order(&self, order: u32) -> Self {
        Self::new(self.poly.clone(), order.min(self.order))
    }

    pub fn mul(&self, other: &GradedSeries) -> Result<GradedSeries> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let k = self.order as i64;
        let poly = self.poly.mul_filtered(&other.poly, |e| degree(e) <= k);
        check_terms(&poly)?;
        Ok(GradedSeries {
            order: self.order,
            poly,
        })
    }

    /// Multiplicative inverse; needs constant term 1 and positive degree elsewhere.
    pub fn inverse(&self) -> Result<GradedSeries> {
        let nv = self.nvars();
        if self.constant_term() != BigInt::one() {
            return Err(Error::NotInvertible("constant term is not 1".into()));
        }
        let h = self.poly.sub(&LaurentPoly::one(nv));
        if h.terms().any(|(e, _)| degree(e) <= 0) {
            return Err(Error::NotInvertible(
                "non-constant term of degree ≤ 0".into(),
            ));
        }
        // (1+h)^{-1} = Σ (−h)^j, terminating since deg h ≥ 1
        let neg_h = GradedSeries::new(h.neg(), self.order);
        let mut acc = GradedSeries::one(nv, self.order);
        let mut power = GradedSeries::one(nv, self.order);
        for _ in 0..self.order {
            power = power.mul(&neg_h)?;
            if power.poly.is_zero() {
                break;
            }
            acc = GradedSeries {
                order: self.order,
                poly: acc.poly.add(&power.poly),
            };
        }
        Ok(acc)
    }

    /// `f^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Result<GradedSeries> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut result = GradedSeries::one(self.nvars(), self.order);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(result)
    }
}

pub(crate) fn truncate(p: &LaurentPoly, max_degree: i64) -> LaurentPoly {
    p.map_terms(p.nvars(), |e, c| {
        (degree(e) <= max_degree).then(|| (e.clone(), c.clone()))
    })
}

pub(crate) fn check_terms(p: &LaurentPoly) -> Result<()> {
    let cap = limits().max_terms;
    if p.len() > cap {
        return Err(Error::Resource(format!(
            "series holds {} terms, ceiling is {cap}",
            p.len()
        )));
    }
    Ok(())
}

/// Coefficient sequence of a series in one monomial `x = z^step`: returns `c_0..c_k`.
pub fn univariate_coeffs(f: &GradedSeries, step: &LatticeVec) -> Vec<BigInt> {
    let k = f.order() as i64;
    let d = degree(step).max(1);
    (0..=k / d)
        .map(|j| f.poly().coeff(&step.scale(j)))
        .collect()
}

/// Exponents `c_j` with `f = ∏_j (1 + x^j)^{c_j}` modulo degree `order`.
///
/// `f` must be a power series in `x = z^step` with constant term 1.
pub fn factor_binomial_product(f: &GradedSeries, step: &LatticeVec) -> Result<Vec<(i64, BigInt)>> {
    let nv = f.nvars();
    let mut rest = f.clone();
    let d = degree(step).max(1);
    let mut out = Vec::new();
    let top = f.order() as i64 / d;
    for j in 1..=top {
        let c = rest.poly().coeff(&step.scale(j));
        if c.is_zero() {
            continue;
        }
        let inv = GradedSeries::binomial(step.scale(j), BigInt::one(), f.order())
            .pow(-i64::try_from(&c).map_err(|_| Error::Resource("exponent too large".into()))?)?;
        rest = rest.mul(&inv)?;
        out.push((j, c));
    }
    if rest.poly() != &LaurentPoly::one(nv) {
        return Err(Error::Invalid(
            "series is not a power series in the given monomial".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LatticeVec {
        LatticeVec(vec![0, 2, 1, 0])
    }

    fn series(coeffs: &[i64], k: u32) -> GradedSeries {
        let p = LaurentPoly::from_terms(
            4,
            coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| (x().scale(j as i64), BigInt::from(c))),
        );
        GradedSeries::new(p, k)
    }

    #[test]
    fn product_truncates() {
        let f = series(&[1, 1], 2);
        assert_eq!(f.mul(&f).unwrap(), series(&[1, 2, 1], 2));
        assert_eq!(f.mul(&GradedSeries::one(4, 2)).unwrap(), f);
        assert!(f.mul(&series(&[1, 1], 3)).is_err());
        let g = series(&[1, -1, 1, -1], 3);
        assert_eq!(series(&[1, 1], 3).mul(&g).unwrap(), GradedSeries::one(4, 3));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            series(&[1, 1], 3).inverse().unwrap(),
            series(&[1, -1, 1, -1], 3)
        );
        assert_eq!(
            GradedSeries::one(4, 3).inverse().unwrap(),
            GradedSeries::one(4, 3)
        );
        // (1−x)^{-2} = Σ (j+1) x^j, inverse is (1−x)² = 1−2x+x²
        let central = series(&[1, 2, 3, 4, 5], 4);
        assert_eq!(central.inverse().unwrap(), series(&[1, -2, 1], 4));
        assert!(series(&[2, 1], 3).inverse().is_err());
        let bad = GradedSeries::new(
            LaurentPoly::one(4).add(&LaurentPoly::z(LatticeVec(vec![1, 0, 0, 0]))),
            3,
        );
        assert!(bad.inverse().is_err());
    }

    #[test]
    fn negative_powers() {
        let f = series(&[1, -1], 4);
        assert_eq!(f.pow(-2).unwrap(), series(&[1, 2, 3, 4, 5], 4));
        assert_eq!(f.pow(0).unwrap(), GradedSeries::one(4, 4));
    }

    #[test]
    fn binomial_factorization() {
        let f = series(&[1, 2, 3, 4, 5, 6, 7, 8, 9], 8);
        let fac = factor_binomial_product(&f, &x()).unwrap();
        let cs: Vec<(i64, i64)> = fac
            .iter()
            .map(|(j, c)| (*j, i64::try_from(c).unwrap()))
            .collect();
        assert_eq!(cs, vec![(1, 2), (2, 2), (4, 2), (8, 2)]);
    }
}
