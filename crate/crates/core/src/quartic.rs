//! Data model and transform laws of `A^4 + a*B^4 = C^4 + a*D^4`.
//!
//! The substitution `A = p+q, C = p-q, D = r+s, B = r-s` turns the equation into
//! `pq(p^2+q^2) = a*rs(r^2+s^2)`. Writing `p = ry, s = qx, r = qt` and introducing
//! `rho` and `omega`, every solution of the resolvent
//!
//! ```text
//! a^2 rho^3 t^4 + (3 a rho^2 - 1) t^2 + a rho^3 = omega^2
//! ```
//!
//! yields `p = t(a rho t^2 + 1), q = omega, r = omega t, s = t^2 + rho`.
//!
//! Canonical forms absorb fourth powers of `a` (so `a` becomes a fourth-power-free
//! integer), drop signs, and take the lexicographically greatest element of the
//! symmetry orbit.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    clear_denominators, format_rat, integral_fourth_power_free, primitive_normalize, ExactInt,
    ExactRat,
};
use crate::polyalg::Field;

/// How a generated quadruple is presented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Denominators cleared and gcd removed; signs and order kept.
    Raw,
    /// Orbit representative, see [`canonicalize`].
    Canonical,
}

/// Integer candidate `(A, B, C, D)` with coefficient `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadruple {
    pub entries: [ExactInt; 4],
    pub a: ExactRat,
}

impl Quadruple {
    pub fn new(entries: [ExactInt; 4], a: ExactRat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::domain("coefficient a must be nonzero"));
        }
        if entries.iter().all(Zero::is_zero) {
            return Err(Error::domain("quadruple with all entries zero"));
        }
        Ok(Quadruple { entries, a })
    }

    /// Convenience constructor for literals; panics on invalid input.
    pub fn from_i64(entries: [i64; 4], a: ExactRat) -> Self {
        Quadruple::new(entries.map(BigInt::from), a).expect("valid literal quadruple")
    }

    pub fn a_entry(&self) -> &ExactInt {
        &self.entries[0]
    }

    pub fn b_entry(&self) -> &ExactInt {
        &self.entries[1]
    }

    pub fn c_entry(&self) -> &ExactInt {
        &self.entries[2]
    }

    pub fn d_entry(&self) -> &ExactInt {
        &self.entries[3]
    }

    pub fn max_abs_entry(&self) -> ExactInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .expect("four entries")
    }
}

impl std::fmt::Display for Quadruple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "({a}, {b}, {c}, {d}; a={})", format_rat(&self.a))
    }
}

/// Rational `(p, q, r, s)` with coefficient `a`. Validity is checked with
/// [`verify_pqrs`], never assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PqrsTuple {
    pub p: ExactRat,
    pub q: ExactRat,
    pub r: ExactRat,
    pub s: ExactRat,
    pub a: ExactRat,
}

impl PqrsTuple {
    pub fn new(p: ExactRat, q: ExactRat, r: ExactRat, s: ExactRat, a: ExactRat) -> Self {
        PqrsTuple { p, q, r, s, a }
    }

    pub fn from_i64(v: [i64; 4], a: ExactRat) -> Self {
        let [p, q, r, s] = v.map(|x| BigRational::from_integer(BigInt::from(x)));
        PqrsTuple { p, q, r, s, a }
    }

    pub fn parts(&self) -> [&ExactRat; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// True when both tuples give the same projective quadruple, i.e. one is a
    /// nonzero multiple of the other and `a` agrees.
    pub fn proportional_to(&self, other: &PqrsTuple) -> bool {
        if self.a != other.a {
            return false;
        }
        let lhs = self.parts();
        let rhs = other.parts();
        (0..4).all(|i| (0..4).all(|j| lhs[i] * rhs[j] == lhs[j] * rhs[i]))
            && lhs.iter().any(|x| !x.is_zero())
            && rhs.iter().any(|x| !x.is_zero())
    }
}

/// A point `(a, rho, t, omega)` for the resolvent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RhoState {
    pub a: ExactRat,
    pub rho: ExactRat,
    pub t: ExactRat,
    pub omega: ExactRat,
}

impl RhoState {
    pub fn new(a: ExactRat, rho: ExactRat, t: ExactRat, omega: ExactRat) -> Self {
        RhoState { a, rho, t, omega }
    }
}

/// `(x, y, t, a)` with `x = s/q` and `y = p/r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XyState {
    pub x: ExactRat,
    pub y: ExactRat,
    pub t: ExactRat,
    pub a: ExactRat,
}

impl XyState {
    /// `(xy + 1) / (a x^2 + y^2)`, `None` if the denominator vanishes.
    pub fn rho(&self) -> Option<ExactRat> {
        let den = &self.a * &self.x * &self.x + &self.y * &self.y;
        (!den.is_zero()).then(|| (&self.x * &self.y + BigInt::one()) / den)
    }

    /// `(a x^3 - y) / (y^3 - a x)`, which equals `t^2` for a solution.
    pub fn t_squared(&self) -> Option<ExactRat> {
        let den = self.y.pow(3) - &self.a * &self.x;
        (!den.is_zero()).then(|| (&self.a * self.x.pow(3) - &self.y) / den)
    }
}

/// `(p+q, r-s, p-q, r+s)` with denominators cleared and common factor removed;
/// canonical mode additionally applies [`canonicalize`].
pub fn pqrs_to_quadruple(ps: &PqrsTuple, mode: Mode) -> Result<Quadruple> {
    let rational = [&ps.p + &ps.q, &ps.r - &ps.s, &ps.p - &ps.q, &ps.r + &ps.s];
    let ints = clear_denominators(&rational);
    let (prim, _) = primitive_normalize(&ints)
        .map_err(|_| Error::domain("p, q, r, s give the all-zero quadruple"))?;
    let raw = Quadruple::new(to_array(prim), ps.a.clone())?;
    Ok(match mode {
        Mode::Raw => raw,
        Mode::Canonical => canonicalize(&raw),
    })
}

pub fn quadruple_to_pqrs(q: &Quadruple) -> PqrsTuple {
    let half = |x: ExactInt| BigRational::new(x, BigInt::from(2));
    let [a, b, c, d] = &q.entries;
    PqrsTuple {
        p: half(a + c),
        q: half(a - c),
        r: half(d + b),
        s: half(d - b),
        a: q.a.clone(),
    }
}

/// `A^4 + aB^4 - C^4 - aD^4`.
pub fn verify_quadruple(q: &Quadruple) -> ExactRat {
    let [a, b, c, d] = &q.entries;
    let lhs = BigRational::from_integer(a.pow(4) - c.pow(4));
    lhs + &q.a * BigRational::from_integer(b.pow(4) - d.pow(4))
}

/// `pq(p^2+q^2) - a*rs(r^2+s^2)`.
pub fn verify_pqrs(ps: &PqrsTuple) -> ExactRat {
    pqrs_residual(&ps.p, &ps.q, &ps.r, &ps.s, &ps.a)
}

pub fn pqrs_residual<F: Field>(p: &F, q: &F, r: &F, s: &F, a: &F) -> F {
    let left = p.clone() * q.clone() * (p.clone() * p.clone() + q.clone() * q.clone());
    let right = r.clone() * s.clone() * (r.clone() * r.clone() + s.clone() * s.clone());
    left - a.clone() * right
}

/// Resolvent residual `a^2 rho^3 t^4 + (3 a rho^2 - 1) t^2 + a rho^3 - omega^2`.
pub fn resolvent_residual<F: Field>(a: &F, rho: &F, t: &F, omega: &F) -> F {
    let rho3 = rho.powi(3);
    let t2 = t.powi(2);
    a.powi(2) * rho3.clone() * t2.powi(2)
        + (F::from_int(3) * a.clone() * rho.powi(2) - F::from_int(1)) * t2
        + a.clone() * rho3
        - omega.powi(2)
}

/// `(p, q, r, s) = (t(a rho t^2 + 1), omega, omega t, t^2 + rho)`.
pub fn resolvent_pqrs<F: Field>(a: &F, rho: &F, t: &F, omega: &F) -> [F; 4] {
    let t2 = t.powi(2);
    [
        t.clone() * (a.clone() * rho.clone() * t2.clone() + F::from_int(1)),
        omega.clone(),
        omega.clone() * t.clone(),
        t2 + rho.clone(),
    ]
}

pub fn eq7_residual(st: &RhoState) -> ExactRat {
    resolvent_residual(&st.a, &st.rho, &st.t, &st.omega)
}

/// Builds `(p, q, r, s)` from a state on the resolvent.
pub fn state_to_pqrs(st: &RhoState) -> Result<PqrsTuple> {
    let res = eq7_residual(st);
    if !res.is_zero() {
        return Err(Error::Precondition(format!(
            "state is not on the resolvent (residual {})",
            format_rat(&res)
        )));
    }
    let [p, q, r, s] = resolvent_pqrs(&st.a, &st.rho, &st.t, &st.omega);
    Ok(PqrsTuple::new(p, q, r, s, st.a.clone()))
}

/// `x = (t^2 + rho)/omega, y = (a rho t^2 + 1)/omega`.
pub fn state_to_xy(st: &RhoState) -> Result<XyState> {
    if st.omega.is_zero() {
        return Err(Error::domain("omega = 0"));
    }
    let t2 = &st.t * &st.t;
    Ok(XyState {
        x: (&t2 + &st.rho) / &st.omega,
        y: (&st.a * &st.rho * &t2 + BigInt::one()) / &st.omega,
        t: st.t.clone(),
        a: st.a.clone(),
    })
}

/// `(a c^-4, rho c^2, t c, omega c)`; the resolvent residual scales by `c^2`.
pub fn scale_state(st: &RhoState, c: &ExactRat) -> Result<RhoState> {
    if c.is_zero() {
        return Err(Error::domain("scale factor c = 0"));
    }
    let c2 = c * c;
    Ok(RhoState {
        a: &st.a / (&c2 * &c2),
        rho: &st.rho * &c2,
        t: &st.t * c,
        omega: &st.omega * c,
    })
}

type Entries = [ExactInt; 4];

fn to_array(v: Vec<ExactInt>) -> Entries {
    v.try_into().expect("four entries")
}

/// Rewrites `(entries, a)` with `a` a fourth-power-free integer, entries primitive
/// and non-negative. `a = core * scale^4` moves `scale` onto `B` and `D`.
fn absorb(entries: &[ExactRat; 4], a: &ExactRat) -> (Entries, ExactInt) {
    let (core, scale) = integral_fourth_power_free(a).expect("a is nonzero");
    let scaled = [
        entries[0].clone(),
        &entries[1] * &scale,
        entries[2].clone(),
        &entries[3] * &scale,
    ];
    let ints = clear_denominators(&scaled);
    let (prim, _) = primitive_normalize(&ints).expect("nonzero quadruple");
    (to_array(prim.into_iter().map(|x| x.abs()).collect()), core)
}

fn as_rats(e: &Entries) -> [ExactRat; 4] {
    e.clone().map(BigRational::from_integer)
}

fn pair_swapped(e: &Entries) -> Entries {
    let [a, b, c, d] = e.clone();
    [b, a, d, c]
}

/// Orbit of a normalized quadruple under the symmetries that keep `a` fixed:
/// side swap always; both within-side swaps for `a = 1`; `(A, C, B, D)` for
/// `a = -1`; pair swap followed by re-absorption whenever `1/a` absorbs back to `a`.
fn orbit(start: Entries, a: &ExactInt) -> BTreeSet<Entries> {
    let inv = BigRational::new(BigInt::one(), a.clone());
    let self_dual = integral_fourth_power_free(&inv).expect("a nonzero").0 == *a;
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(e) = stack.pop() {
        if !seen.insert(e.clone()) {
            continue;
        }
        let [x, y, z, w] = e.clone();
        let mut next = vec![[z.clone(), w.clone(), x.clone(), y.clone()]];
        if a.is_one() {
            next.push([y.clone(), x.clone(), z.clone(), w.clone()]);
            next.push([x.clone(), y.clone(), w.clone(), z.clone()]);
        }
        if *a == -BigInt::one() {
            next.push([x.clone(), z.clone(), y.clone(), w.clone()]);
        }
        if self_dual {
            next.push(absorb(&as_rats(&pair_swapped(&e)), &inv).0);
        }
        stack.extend(next.into_iter().filter(|n| !seen.contains(n)));
    }
    seen
}

/// Orbit representative of a quadruple for a fixed equation up to rescaling.
///
/// Steps: move `a` to the smaller of the fourth-power-free integer forms of `a`
/// and `1/a` (the latter through the pair swap `(B, A, D, C)`), drop signs, then
/// return the lexicographically greatest element of [`orbit`].
pub fn canonicalize(q: &Quadruple) -> Quadruple {
    let direct = absorb(&as_rats(&q.entries), &q.a);
    let swapped = absorb(&as_rats(&pair_swapped(&q.entries)), &q.a.recip());
    let (entries, a) = if swapped.1.abs() < direct.1.abs() {
        swapped
    } else {
        direct
    };
    let best = orbit(entries, &a)
        .into_iter()
        .next_back()
        .expect("nonempty orbit");
    Quadruple {
        entries: best,
        a: BigRational::from_integer(a),
    }
}

fn class_order(x: &Quadruple, y: &Quadruple) -> Ordering {
    // smaller |a| first, positive before negative, then greater entries first
    x.a.abs()
        .cmp(&y.a.abs())
        .then(x.a.is_negative().cmp(&y.a.is_negative()))
        .then(y.entries.cmp(&x.entries))
}

/// Representative under the full equivalence that also relates `a` and `-a`
/// through `(A, B, C, D; a) -> (A, D, C, B; -a)`. Used where solutions of
/// different-signed coefficients are listed together, e.g. a sum-form listing of
/// `a = -1` solutions under `a = 1`.
pub fn canonical_class(q: &Quadruple) -> Quadruple {
    let [a, b, c, d] = q.entries.clone();
    let reflected = Quadruple {
        entries: [a, d, c, b],
        a: -q.a.clone(),
    };
    let x = canonicalize(q);
    let y = canonicalize(&reflected);
    std::cmp::min_by(x, y, class_order)
}

/// Both sides coincide term by term in some equivalent form: the class
/// representative has `A = C` and `B = D`.
pub fn is_trivial(q: &Quadruple) -> bool {
    let c = canonical_class(q);
    c.entries[0] == c.entries[2] && c.entries[1] == c.entries[3]
}

/// `A^4 - B^4 = C^4 - D^4` rewritten as `A^4 + D^4 = C^4 + B^4`.
pub fn sum_form(q: &Quadruple) -> Result<Quadruple> {
    if q.a != -BigRational::one() {
        return Err(Error::domain(format!(
            "sum form needs a = -1, got a = {}",
            format_rat(&q.a)
        )));
    }
    let [a, b, c, d] = q.entries.clone();
    Ok(Quadruple {
        entries: [a, d, c, b],
        a: BigRational::one(),
    })
}

/// A named symmetry; `None` when it does not apply to the given `a`.
pub type Generator = (&'static str, fn(&Quadruple) -> Option<Quadruple>);

/// The individual generators of the symmetry group, for checking that each one
/// maps solutions to solutions. Each returns the image quadruple (with its own
/// coefficient) or `None` when the generator is not admissible for `q.a`.
pub fn symmetry_generators() -> Vec<Generator> {
    fn with(q: &Quadruple, idx: [usize; 4], a: ExactRat) -> Quadruple {
        Quadruple {
            entries: idx.map(|i| q.entries[i].clone()),
            a,
        }
    }
    vec![
        ("side swap", |q| Some(with(q, [2, 3, 0, 1], q.a.clone()))),
        ("pair swap", |q| Some(with(q, [1, 0, 3, 2], q.a.recip()))),
        ("reflection", |q| Some(with(q, [0, 3, 2, 1], -q.a.clone()))),
        ("negate A", |q| {
            let mut r = q.clone();
            r.entries[0] = -r.entries[0].clone();
            Some(r)
        }),
        ("negate B", |q| {
            let mut r = q.clone();
            r.entries[1] = -r.entries[1].clone();
            Some(r)
        }),
        ("swap A,B (a = 1)", |q| {
            q.a.is_one().then(|| with(q, [1, 0, 2, 3], q.a.clone()))
        }),
        ("swap A,C inner (a = -1)", |q| {
            (q.a == -BigRational::one()).then(|| with(q, [0, 2, 1, 3], q.a.clone()))
        }),
    ]
}
