//! Exact rationals and the string encoding used by every JSON surface.
//!
//! `QQ` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. On the wire a rational is a string, either `"p/q"`
//! or a bare integer `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type QQ = BigRational;

/// A point or direction in ℚⁿ.
pub type QVector = Vec<QQ>;

pub fn qq(n: i64) -> QQ {
    QQ::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
pub fn frac(num: i64, den: i64) -> QQ {
    QQ::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_qq(s: &str) -> Result<QQ, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(QQ::new(p, q))
        }
        None => Ok(QQ::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn format_qq(x: &QQ) -> String {
    x.to_string()
}

pub fn format_vec(v: &[QQ]) -> Vec<String> {
    v.iter().map(format_qq).collect()
}

pub fn parse_vec(v: &[String]) -> Result<QVector, Error> {
    v.iter().map(|s| parse_qq(s)).collect()
}

pub fn dot(a: &[QQ], b: &[QQ]) -> QQ {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(QQ::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[QQ], b: &[QQ]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[QQ], b: &[QQ]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[QQ], c: &QQ) -> QVector {
    a.iter().map(|x| x * c).collect()
}

pub fn coordinate_sum(a: &[QQ]) -> QQ {
    a.iter().fold(QQ::zero(), |acc, x| acc + x)
}

/// Standard basis vector `e_i` of ℚⁿ (0-based `i`).
pub fn unit(n: usize, i: usize) -> QVector {
    let mut v = vec![QQ::zero(); n];
    v[i] = QQ::one();
    v
}

/// Scales `v` by a positive rational so that it becomes a primitive integer
/// vector. Returns the integer vector and the factor used. The zero vector
/// maps to itself with factor one.
pub fn primitive_integer(v: &[QQ]) -> (Vec<BigInt>, QQ) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return (ints, QQ::one());
    }
    let ints = ints.into_iter().map(|x| x / &gcd).collect();
    (ints, QQ::new(lcm, gcd))
}

/// Divides an integer vector by the gcd of its entries (sign kept).
pub fn primitive_bigint(v: &mut [BigInt]) {
    let gcd = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() || gcd.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &gcd;
    }
}

pub fn to_f64(x: &QQ) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators: fall back to a scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

pub fn abs(x: &QQ) -> QQ {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_lowest_terms() {
        assert_eq!(format_qq(&parse_qq("6/8").unwrap()), "3/4");
        assert_eq!(format_qq(&parse_qq("-4/2").unwrap()), "-2");
        assert_eq!(format_qq(&parse_qq("0").unwrap()), "0");
        assert_eq!(parse_qq(" 9/4 ").unwrap(), frac(9, 4));
        assert!(parse_qq("1/0").is_err());
        assert!(parse_qq("x").is_err());
    }

    #[test]
    fn primitive_integer_scaling() {
        let (v, s) = primitive_integer(&[frac(3, 4), frac(-1, 4), frac(-1, 2)]);
        assert_eq!(v, vec![BigInt::from(3), BigInt::from(-1), BigInt::from(-2)]);
        assert_eq!(s, qq(4));
        let (v, s) = primitive_integer(&[qq(4), qq(6)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(s, frac(1, 2));
    }
}
