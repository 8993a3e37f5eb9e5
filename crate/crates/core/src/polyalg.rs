//! Univariate polynomials and rational functions with exact rational coefficients.
//!
//! [`RatFn`] is kept in a canonical reduced form so that `==` is equality of
//! functions. Both types implement [`Field`], which lets the resolvent and family
//! formulas run either numerically (on [`ExactRat`]) or symbolically (on [`RatFn`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rat, ExactRat};

/// The arithmetic the parametrization formulas need.
pub trait Field:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// `None` when `rhs` is zero.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Field for ExactRat {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

/// Dense polynomial, `coeffs[i]` multiplies `x^i`. Trailing zeros are stripped, so
/// the zero polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients listed from the highest power down, as they are written.
    pub fn from_desc(desc: &[i64]) -> Self {
        Poly::from_coeffs(
            desc.iter()
                .rev()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&ExactRat> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactRat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// `c` such that `self / c` has coprime integer coefficients and a positive
    /// leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> ExactRat {
        let Some(lead) = self.lead() else {
            return BigRational::zero();
        };
        let num_gcd = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let c = BigRational::new(num_gcd, den_lcm);
        if lead.is_negative() {
            -c
        } else {
            c
        }
    }

    /// Renders in descending powers, e.g. `-t^12 + 214t^10 - 1`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                if mag.is_integer() {
                    out.push_str(&mag.to_string());
                } else if i == 0 {
                    out.push_str(&format_rat(&mag));
                } else {
                    out.push_str(&format!("({})", format_rat(&mag)));
                }
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Poly, Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Reduced quotient of polynomials.
///
/// Canonical form: `gcd(num, den) = 1`, all coefficients integers with no common
/// factor across numerator and denominator, and the denominator's leading
/// coefficient positive. The zero function is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFn {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
            }
        };
        // one scalar brings both to coprime integer coefficients with lc(den) > 0
        let cn = num.content();
        let cd = den.content();
        let g = BigRational::new(cn.numer().gcd(cd.numer()), cn.denom().lcm(cd.denom()));
        let g = if cd.is_negative() { -g } else { g };
        let inv = g.recip();
        RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::reduce(p, Poly::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_identically_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `x`, or a pole error naming the vanishing denominator.
    pub fn eval(&self, x: &ExactRat) -> Result<ExactRat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::pole(self.den.display("x")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Zero test by evaluation alone: checks `deg(num) + deg(den) + 1` distinct
    /// non-pole rationals. A nonzero numerator of degree `d` has at most `d` roots.
    pub fn vanishes_by_evaluation(&self) -> bool {
        let needed = self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0) + 1;
        let mut seen = 0;
        let mut k: i64 = 0;
        while seen < needed {
            // 0, 1/2, -2/3, 3/4, -4/5, ... are distinct
            let x = BigRational::new(
                BigInt::from(if k % 2 == 0 { k } else { -k }),
                BigInt::from(k + 1),
            );
            k += 1;
            match self.eval(&x) {
                Ok(v) if !v.is_zero() => return false,
                Ok(_) => seen += 1,
                Err(_) => continue,
            }
        }
        true
    }

    pub fn display(&self, var: &str) -> String {
        if self.den.degree() == Some(0) && self.den.lead().is_some_and(One::is_one) {
            return self.num.display(var);
        }
        let terms = |p: &Poly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num = match terms(&self.num) {
            1 => self.num.display(var),
            _ => format!("({})", self.num.display(var)),
        };
        // a bare power or constant needs no parentheses after the slash
        let bare = terms(&self.den) == 1
            && (self.den.degree() == Some(0) || self.den.lead().is_some_and(One::is_one));
        let den = if bare {
            self.den.display(var)
        } else {
            format!("({})", self.den.display(var))
        };
        format!("{num}/{den}")
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn> {
        if rhs.is_identically_zero() {
            return Err(Error::domain("division by the zero rational function"));
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatFn, Add add, Sub sub, Mul mul);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl Field for RatFn {
    fn from_int(v: i64) -> Self {
        RatFn::constant(BigRational::from_integer(BigInt::from(v)))
    }

    fn is_zero_elem(&self) -> bool {
        self.is_identically_zero()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use proptest::prelude::*;

    fn p(desc: &[i64]) -> Poly {
        Poly::from_desc(desc)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        // (t^2 + 1)(-t^4 + 18t^2 - 1)
        assert_eq!(
            &p(&[1, 0, 1]) * &p(&[-1, 0, 18, 0, -1]),
            p(&[-1, 0, 17, 0, 17, 0, -1])
        );
        assert_eq!(p(&[1, 0, 1]).pow(0), Poly::one());
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!((&p(&[1, 2]) * &p(&[3, 0, 1])).degree(), Some(3));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p(&[1, 0, -1]).eval(&rat_int(1)), rat_int(0));
        let q = &p(&[1, 0, 1]) * &p(&[-1, 0, 18, 0, -1]);
        assert_eq!(q.eval(&rat_int(3)), rat_int(800));
        assert_eq!(Poly::var().eval(&rat(5, 3)), rat(5, 3));
    }

    #[test]
    fn reduction_examples() {
        let f = RatFn::new(p(&[1, 0, -1]), p(&[1, -1])).unwrap();
        assert_eq!(f, RatFn::from_poly(p(&[1, 1])));
        let f = RatFn::new(p(&[1, 0, -3]), Poly::one()).unwrap();
        assert_eq!(f.num(), &p(&[1, 0, -3]));
        let f = RatFn::new(p(&[2, 0, 2]), p(&[2])).unwrap();
        assert_eq!(f, RatFn::from_poly(p(&[1, 0, 1])));
        assert!(RatFn::new(Poly::one(), Poly::zero()).is_err());
        // negative denominators are flipped; rational content cleared
        let f = RatFn::new(p(&[1]), Poly::from_coeffs(vec![rat(-1, 2)])).unwrap();
        assert_eq!(f, RatFn::constant(rat_int(-2)));
        let f = RatFn::new(p(&[3, 0, 12]), p(&[-6, 0, 0])).unwrap();
        assert_eq!(f.num(), &p(&[-1, 0, -4]));
        assert_eq!(f.den(), &p(&[2, 0, 0]));
    }

    #[test]
    fn zero_tests() {
        assert!(RatFn::constant(rat_int(0)).is_identically_zero());
        let f = RatFn::new(p(&[1, 0, -1]), p(&[1, 2])).unwrap();
        assert!(!f.is_identically_zero());
        assert!(!f.vanishes_by_evaluation());
        let x = RatFn::var();
        let g = &(&x * &x) - &(&x * &x);
        assert!(g.is_identically_zero() && g.vanishes_by_evaluation());
    }

    #[test]
    fn display_convention() {
        assert_eq!(
            p(&[-1, 0, 214, 0, 2481, 0, 2804, 0, 2481, 0, 214, 0, -1]).display("t"),
            "-t^12 + 214t^10 + 2481t^8 + 2804t^6 + 2481t^4 + 214t^2 - 1"
        );
        assert_eq!(Poly::zero().display("t"), "0");
        assert_eq!(
            Poly::from_coeffs(vec![rat(9, 4), rat_int(0), rat_int(1)]).display("u"),
            "u^2 + 9/4"
        );
        let a = RatFn::new(p(&[1, 0, 4]).pow(2), p(&[9, 0, 0, 0, 0])).unwrap();
        assert_eq!(a.display("u"), "(u^4 + 8u^2 + 16)/(9u^4)");
    }

    #[test]
    fn pole_reports_denominator() {
        let f = RatFn::new(Poly::one(), p(&[1, -1])).unwrap();
        assert!(matches!(f.eval(&rat_int(1)), Err(Error::Pole { .. })));
        assert_eq!(f.eval(&rat_int(3)).unwrap(), rat(1, 2));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 3]);
        let b = &p(&[1, 1]) * &p(&[1, -5]);
        assert_eq!(Poly::gcd(&a, &b), p(&[1, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-9i64..10, 1i64..4), 0..5)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn distributive(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        }

        #[test]
        fn eval_is_multiplicative(f in small_poly(), g in small_poly(), n in -20i64..20, d in 1i64..7) {
            let x = rat(n, d);
            prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
        }

        #[test]
        fn reduce_ignores_common_factor(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assume!(!g.is_zero() && !h.is_zero());
            let a = RatFn::new(f.clone(), g.clone()).unwrap();
            let b = RatFn::new(&f * &h, &g * &h).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(b.den().lead().unwrap().is_positive());
        }

        #[test]
        fn structural_and_evaluation_zero_tests_agree(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assume!(!h.is_zero());
            // f*g - g*f plus an optional perturbation
            let a = RatFn::new(&f * &g, h.clone()).unwrap();
            let b = RatFn::new(&g * &f, h.clone()).unwrap();
            let diff = &a - &b;
            prop_assert!(diff.is_identically_zero());
            prop_assert!(diff.vanishes_by_evaluation());
            let c = RatFn::new(f.clone(), h.clone()).unwrap();
            prop_assert_eq!(c.is_identically_zero(), c.vanishes_by_evaluation());
        }

        #[test]
        fn div_rem_reconstructs(f in small_poly(), g in small_poly()) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
        }
    }
}
