//! Exact plane geometry for rank-2 diagrams.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVec;

/// A rational point (or direction) in `M_R ≅ R²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[String; 2]", try_from = "[String; 2]")]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn from_lattice(v: &LatticeVec) -> Result<Self> {
        crate::error::check_len(2, v.len())?;
        Ok(Point::from_ints(v[0], v[1]))
    }

    /// Parses `x,y` where each coordinate is an integer or `p/q`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Invalid(format!("expected two coordinates in {s:?}")));
        }
        Ok(Point::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
        ))
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, t: &BigRational) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    pub fn neg(&self) -> Point {
        Point::new(-&self.x, -&self.y)
    }

    pub fn dot(&self, o: &Point) -> BigRational {
        &self.x * &o.x + &self.y * &o.y
    }

    /// `self × o`, positive when `o` is anticlockwise from `self`.
    pub fn cross(&self, o: &Point) -> BigRational {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Rotation by a quarter turn anticlockwise.
    pub fn rot90(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    /// Pairing with an integer covector `(n_1, n_2)`.
    pub fn pair(&self, n: &LatticeVec) -> BigRational {
        &self.x * rat(n[0]) + &self.y * rat(n[1])
    }

    /// Approximate coordinates, for drawing only.
    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_f64(&self.x), ratio_f64(&self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<Point> for [String; 2] {
    fn from(p: Point) -> Self {
        [p.x.to_string(), p.y.to_string()]
    }
}

impl TryFrom<[String; 2]> for Point {
    type Error = Error;
    fn try_from(v: [String; 2]) -> Result<Self> {
        Ok(Point::new(parse_rational(&v[0])?, parse_rational(&v[1])?))
    }
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Parses an integer or a `p/q` literal; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("not a rational literal: {s:?} (use p/q)"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde helper writing a rational as its `p/q` string.
pub mod rational_str {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(D::Error::custom)
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(0.0);
    let d: f64 = r.denom().to_string().parse().unwrap_or(1.0);
    n / d
}

fn half(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Orders nonzero directions by angle in `[0, 2π)` from the positive x-axis.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Orders directions by anticlockwise angle measured from `from`, in `[0, 2π)`.
pub fn angle_cmp_from(from: &Point, a: &Point, b: &Point) -> Ordering {
    let rel = |v: &Point| Point::new(from.dot(v), from.cross(v));
    angle_cmp(&rel(a), &rel(b))
}

/// Whether two nonzero directions point the same way.
pub fn same_direction(a: &Point, b: &Point) -> bool {
    a.cross(b).is_zero() && a.dot(b).is_positive()
}

/// Where a segment meets a half-line from the origin.
#[derive(Debug, PartialEq)]
pub enum Hit {
    None,
    /// Interior crossing at parameter `t ∈ (0, 1)`.
    At(BigRational),
    /// The segment touches the half-line at an end, passes through the
    /// origin, or runs along it.
    Degenerate(String),
}

/// Intersection of `p + t·v` (`t ∈ [0, 1]`, or `t ≥ 0` if `unbounded`) with `R_{>0}·r`.
pub fn segment_ray(p: &Point, v: &Point, r: &Point, unbounded: bool) -> Hit {
    let in_range = |t: &BigRational| !t.is_negative() && (unbounded || *t <= rat(1));
    let den = v.cross(r);
    let num = p.cross(r);
    if den.is_zero() {
        if !num.is_zero() {
            return Hit::None;
        }
        // collinear with the line through r: check overlap with the half-line
        let s0 = p.dot(r);
        let s1 = p.add(v).dot(r);
        let overlaps = s0.is_positive()
            || (if unbounded {
                v.dot(r).is_positive()
            } else {
                s1.is_positive()
            });
        return if overlaps || s0.is_zero() {
            Hit::Degenerate("path runs along a wall".into())
        } else {
            Hit::None
        };
    }
    let t = -num / den;
    if !in_range(&t) {
        return Hit::None;
    }
    let q = p.add(&v.scale(&t));
    let s = q.dot(r);
    if s.is_zero() {
        return Hit::Degenerate("path meets the origin".into());
    }
    if s.is_negative() {
        return Hit::None;
    }
    if t.is_zero() || (!unbounded && t == rat(1)) {
        return Hit::Degenerate(format!("path touches a wall at its end {q}"));
    }
    Hit::At(t)
}
