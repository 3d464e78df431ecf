//! Exact rational scalars and the small dense vector helpers the rest of the
//! crate is built on.
//!
//! Values are `num_rational::BigRational`, which keeps every result in lowest
//! terms with a positive denominator, so structural equality is numeric
//! equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RatVector = Vec<Rational>;
pub type RatMatrix = Vec<RatVector>;

/// Builds `n / d` in canonical form.
pub fn canonicalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n.into(), d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn floor_rat(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_rat(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Fractional part `r - floor(r)`, always in `[0, 1)`.
pub fn frac_part(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    debug_assert_eq!(u.len(), v.len());
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_rational_vec(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn denominator_lcm<'a>(v: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    v.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Positive factor `s` such that `s * v` is an integer vector with gcd 1.
///
/// Returns `None` for the zero vector.
pub fn primitive_scale(v: &[Rational]) -> Option<Rational> {
    if is_zero_vector(v) {
        return None;
    }
    let lcm = denominator_lcm(v);
    let gcd = v
        .iter()
        .map(|r| (r * Rational::from_integer(lcm.clone())).to_integer().abs())
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    Some(Rational::new(lcm, gcd))
}

/// Scales a nonzero rational vector to the primitive integer vector pointing
/// the same way.
pub fn primitive_integer_vector(v: &[Rational]) -> Result<Vec<BigInt>> {
    let s = primitive_scale(v).ok_or(Error::ZeroVector)?;
    Ok(v.iter().map(|r| (r * &s).to_integer()).collect())
}

/// Parses the textual syntax `n` or `n/d` with an optional leading `-`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(token.to_string());
    let body = token.strip_prefix('-').unwrap_or(token);
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(bad());
    }
    let mut n: BigInt = num.parse().map_err(|_| bad())?;
    if token.starts_with('-') {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn fmt_vec(v: &[Rational]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn fmt_int_vec(v: &[BigInt]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Rank of a dense rational matrix by fraction-keeping Gaussian elimination.
pub fn rank(rows: &[RatVector]) -> usize {
    let mut m: Vec<RatVector> = rows
        .iter()
        .filter(|r| !is_zero_vector(r))
        .cloned()
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonicalize(2, 4).unwrap(), frac(1, 2));
        let r = canonicalize(3, -6).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (big(-1), big(2)));
        let z = canonicalize(0, 7).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (big(0), big(1)));
        assert!(matches!(canonicalize(1, 0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rounding() {
        assert_eq!(floor_rat(&frac(-2, 5)), big(-1));
        assert_eq!(ceil_rat(&frac(-2, 5)), big(0));
        assert_eq!(ceil_rat(&frac(8, 5)), big(2));
        assert_eq!(ceil_rat(&(int(2) - frac(2, 5))), big(2));
        assert_eq!(floor_rat(&int(3)), big(3));
        assert_eq!(ceil_rat(&int(3)), big(3));
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[frac(1, 2), frac(1, 2), int(0)]).unwrap();
        assert_eq!(v, vec![big(1), big(1), big(0)]);
        let v = primitive_integer_vector(&[int(2), int(4), int(6)]).unwrap();
        assert_eq!(v, vec![big(1), big(2), big(3)]);
        let v = primitive_integer_vector(&[int(0), int(0), int(1), int(1)]).unwrap();
        assert_eq!(v, vec![big(0), big(0), big(1), big(1)]);
        let v = primitive_integer_vector(&[frac(-2, 3), frac(4, 9)]).unwrap();
        assert_eq!(v, vec![big(-3), big(2)]);
        assert!(matches!(
            primitive_integer_vector(&[int(0), int(0)]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(Error::DivisionByZero)));
        for bad in ["", "-", "+1", "1/", "/2", "1.5", "1 /2", "--1", "1/-2", "a"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
        assert_eq!(frac(-7, 3).to_string(), "-7/3");
        assert_eq!(int(-4).to_string(), "-4");
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert_eq!(
            rank(&[
                vec![int(0), int(1)],
                vec![int(1), int(0)],
                vec![int(1), int(1)]
            ]),
            2
        );
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn field_identities(a in rational(), b in rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
            let s = &a * &b + &a;
            prop_assert!(s.denom() > &BigInt::zero());
            prop_assert!(s.numer().gcd(s.denom()).is_one());
        }

        #[test]
        fn floor_ceil_bracket(r in rational()) {
            let f = Rational::from_integer(floor_rat(&r));
            let c = Rational::from_integer(ceil_rat(&r));
            prop_assert!(f <= r && r < &f + int(1));
            prop_assert!(&c - int(1) < r && r <= c);
        }

        #[test]
        fn primitive_is_idempotent(v in proptest::collection::vec(rational(), 1..6)) {
            prop_assume!(!is_zero_vector(&v));
            let once = primitive_integer_vector(&v).unwrap();
            let twice = primitive_integer_vector(&to_rational_vec(&once)).unwrap();
            prop_assert_eq!(&once, &twice);
            let g = once.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
            prop_assert!(g.is_one());
        }
    }
}
