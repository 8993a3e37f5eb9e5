//! Exact integer and rational helpers.
//!
//! Integers are [`BigInt`] and rationals are [`BigRational`]; the latter is always
//! stored reduced with a positive denominator, so derived `PartialEq` is structural
//! equality of values. On the wire both use base-10 strings, rationals as `num/den`
//! with the denominator omitted when it is one.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(v: i64) -> ExactRat {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a non-negative integer, `None` when `n` is not a square.
pub fn isqrt(n: &ExactInt) -> Result<Option<ExactInt>> {
    if n.is_negative() {
        return Err(Error::domain(format!("isqrt of negative integer {n}")));
    }
    let s = n.sqrt();
    Ok((&s * &s == *n).then_some(s))
}

/// Non-negative rational square root, `None` for negatives and non-squares.
pub fn rat_sqrt(q: &ExactRat) -> Option<ExactRat> {
    if q.is_negative() {
        return None;
    }
    // reduced form: q is a square iff numerator and denominator both are
    let n = isqrt(q.numer()).ok()??;
    let d = isqrt(q.denom()).ok()??;
    Some(BigRational::new(n, d))
}

/// Splits a positive integer as `core * scale^4` with `core` fourth-power-free.
///
/// Trial division stops once `p^4` exceeds the unfactored cofactor: any prime
/// left in the cofactor then occurs to a power below four.
pub fn fourth_power_free_uint(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "fourth_power_free_uint of zero");
    let mut rest = n.clone();
    let mut core = BigUint::one();
    let mut scale = BigUint::one();
    let mut p = BigUint::from(2u32);
    loop {
        let p4 = p.pow(4);
        if p4 > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            scale *= p.pow(e / 4);
            core *= p.pow(e % 4);
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    (core * rest, scale)
}

/// Decomposes `q = core * scale^4` where numerator and denominator of `core` are
/// both fourth-power-free, `scale > 0` and `core` carries the sign of `q`.
pub fn fourth_power_free_rat(q: &ExactRat) -> Result<(ExactRat, ExactRat)> {
    if q.is_zero() {
        return Err(Error::domain("fourth-power-free decomposition of zero"));
    }
    let (cn, sn) = fourth_power_free_uint(q.numer().magnitude());
    let (cd, sd) = fourth_power_free_uint(q.denom().magnitude());
    let core = BigRational::new(BigInt::from_biguint(q.numer().sign(), cn), BigInt::from(cd));
    let scale = BigRational::new(BigInt::from(sn), BigInt::from(sd));
    Ok((core, scale))
}

/// Like [`fourth_power_free_rat`] but forces an integral core:
/// `q = core * scale^4` with `core` a fourth-power-free integer and `scale > 0`.
///
/// With `q = ±m/n`, `(cm, sm)` and `(cn, sn)` the fourth-power-free splits of `m`
/// and `n`, we have `q = ±cm*cn^3 * (sm / (sn*cn))^4`, and `cm*cn^3` is split once
/// more.
pub fn integral_fourth_power_free(q: &ExactRat) -> Result<(ExactInt, ExactRat)> {
    if q.is_zero() {
        return Err(Error::domain("fourth-power-free decomposition of zero"));
    }
    let (cm, sm) = fourth_power_free_uint(q.numer().magnitude());
    let (cn, sn) = fourth_power_free_uint(q.denom().magnitude());
    let (core, s2) = fourth_power_free_uint(&(cm * cn.pow(3)));
    let core = BigInt::from_biguint(q.numer().sign(), core);
    let scale = BigRational::new(BigInt::from(s2 * sm), BigInt::from(sn * cn));
    Ok((core, scale))
}

/// Divides a vector by the gcd of the absolute values of its entries.
pub fn primitive_normalize(v: &[ExactInt]) -> Result<(Vec<ExactInt>, ExactInt)> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::domain(
            "primitive normalization of an all-zero vector",
        ));
    }
    Ok((v.iter().map(|x| x / &g).collect(), g))
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[ExactRat]) -> Vec<ExactInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Parses `p` or `p/q` (optional leading `-` or `+`, no whitespace).
pub fn parse_rat(s: &str) -> Result<ExactRat> {
    let err = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(n).map_err(|_| err("numerator is not an integer"))?;
    let den = match d {
        Some(d) if d.starts_with(['-', '+']) => return Err(err("signed denominator")),
        Some(d) => parse_int(d).map_err(|_| err("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses a base-10 integer with an optional sign.
pub fn parse_int(s: &str) -> Result<ExactInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            input: s.to_string(),
            reason: "not a base-10 integer".to_string(),
        });
    }
    let mag = BigUint::parse_bytes(digits.as_bytes(), 10).expect("checked digits");
    let sign = if s.starts_with('-') {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Ok(BigInt::from_biguint(sign, mag))
}

/// Wire form of a rational: `num/den`, or `num` when the denominator is one.
pub fn format_rat(q: &ExactRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn isqrt_cases() {
        assert_eq!(isqrt(&BigInt::from(16)).unwrap(), Some(BigInt::from(4)));
        assert_eq!(isqrt(&BigInt::from(2)).unwrap(), None);
        assert_eq!(isqrt(&BigInt::from(0)).unwrap(), Some(BigInt::from(0)));
        // t^4 + 2t^2 + 1 at t = 2, the resolvent's right side for rho = 1
        let t = BigInt::from(2);
        let v = t.pow(4) + 2 * t.pow(2) + 1;
        assert_eq!(isqrt(&v).unwrap(), Some(BigInt::from(5)));
        assert!(matches!(isqrt(&BigInt::from(-4)), Err(Error::Domain(_))));
    }

    #[test]
    fn rat_sqrt_cases() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat_int(-1)), None);
        assert_eq!(rat_sqrt(&rat(625, 256)), Some(rat(25, 16)));
        assert_eq!(rat_sqrt(&rat(2, 9)), None);
        assert_eq!(rat_sqrt(&rat_int(0)), Some(rat_int(0)));
    }

    #[test]
    fn fourth_power_free_cases() {
        assert_eq!(
            fourth_power_free_rat(&rat_int(16)).unwrap(),
            (rat_int(1), rat_int(2))
        );
        assert_eq!(
            fourth_power_free_rat(&rat_int(48)).unwrap(),
            (rat_int(3), rat_int(2))
        );
        // u^2 + 9/4 at u = 7/16
        let u = rat(7, 16);
        let a = &u * &u + rat(9, 4);
        assert_eq!(a, rat(625, 256));
        assert_eq!(fourth_power_free_rat(&a).unwrap(), (rat_int(1), rat(5, 4)));
        assert_eq!(
            fourth_power_free_rat(&rat(-1, 8)).unwrap(),
            (rat(-1, 8), rat_int(1))
        );
        assert!(fourth_power_free_rat(&rat_int(0)).is_err());
    }

    #[test]
    fn integral_core_cases() {
        let check = |q: ExactRat, core: i64, scale: ExactRat| {
            let (c, s) = integral_fourth_power_free(&q).unwrap();
            assert_eq!((c.clone(), s.clone()), (BigInt::from(core), scale));
            let back = BigRational::from_integer(c) * s.pow(4);
            assert_eq!(back, q);
        };
        check(rat(1, 8), 2, rat(1, 2));
        check(rat(1, 4), 4, rat(1, 2));
        check(rat(1, 9), 9, rat(1, 3));
        check(rat(625, 256), 1, rat(5, 4));
        check(rat(-16, 1), -1, rat_int(2));
        check(rat(1, 3), 27, rat(1, 3));
        check(rat(-81, 32), -8, rat(3, 4));
    }

    #[test]
    fn primitive_normalize_cases() {
        let (v, g) = primitive_normalize(&ints(&[10112, -3776, 8512, 8576])).unwrap();
        assert_eq!((v, g), (ints(&[158, -59, 133, 134]), BigInt::from(64)));
        let (v, g) = primitive_normalize(&ints(&[2, 4, 6, 8])).unwrap();
        assert_eq!((v, g), (ints(&[1, 2, 3, 4]), BigInt::from(2)));
        let (v, g) = primitive_normalize(&ints(&[7, 157, -227, 239])).unwrap();
        assert_eq!((v, g), (ints(&[7, 157, -227, 239]), BigInt::from(1)));
        assert!(primitive_normalize(&ints(&[0, 0, 0, 0])).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("5/3").unwrap(), rat(5, 3));
        assert_eq!(parse_rat("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("4/2").unwrap(), rat_int(2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        for bad in ["", "1/0", "1 /2", "a", "1/-2", "1/2/3", "--1"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rat(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rat(&rat_int(12)), "12");
    }

    #[test]
    fn clears_denominators() {
        let v = vec![rat(291, 2), rat(25, 2), rat(1, 3)];
        assert_eq!(clear_denominators(&v), ints(&[873, 75, 2]));
    }

    proptest! {
        #[test]
        fn isqrt_agrees_with_floor_root(n in 0u64..2_000_000_000) {
            let big = BigInt::from(n);
            let fl = (n as f64).sqrt() as u64;
            let is_sq = (fl.saturating_sub(1)..=fl + 1).any(|s| s * s == n);
            match isqrt(&big).unwrap() {
                Some(s) => { prop_assert!(is_sq); prop_assert_eq!(&s * &s, big); }
                None => prop_assert!(!is_sq),
            }
        }

        #[test]
        fn fourth_power_free_reconstructs(num in -100_000i64..100_000, den in 1i64..100_000) {
            prop_assume!(num != 0);
            let q = rat(num, den);
            let (core, scale) = fourth_power_free_rat(&q).unwrap();
            prop_assert!(scale.is_positive());
            prop_assert_eq!(core.is_negative(), q.is_negative());
            prop_assert_eq!(&core * scale.pow(4), q.clone());
            for part in [core.numer().magnitude().clone(), core.denom().magnitude().clone()] {
                for p in 2u32..=20 {
                    prop_assert!(!(&part % BigUint::from(p).pow(4)).is_zero());
                }
            }
            let (icore, iscale) = integral_fourth_power_free(&q).unwrap();
            prop_assert_eq!(BigRational::from_integer(icore) * iscale.pow(4), q);
        }

        #[test]
        fn primitive_output_has_unit_gcd(v in proptest::collection::vec(-1000i64..1000, 4)) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let (w, g) = primitive_normalize(&ints(&v)).unwrap();
            prop_assert!(g.is_positive());
            let gw = w.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
            prop_assert!(gw.is_one());
            for (x, y) in v.iter().zip(&w) {
                prop_assert_eq!(BigInt::from(*x), y * &g);
            }
        }

        #[test]
        fn rat_round_trips_text(num in -10_000i64..10_000, den in 1i64..10_000) {
            let q = rat(num, den);
            prop_assert_eq!(parse_rat(&format_rat(&q)).unwrap(), q);
        }
    }
}
