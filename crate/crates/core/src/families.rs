//! Parametric families of solutions and the chains that derive them.
//!
//! Every registered family stores `p, q, r, s` and `a` as rational functions of a
//! single parameter. Registration checks symbolically that
//! `pq(p^2+q^2) - a*rs(r^2+s^2)` vanishes identically, so a transcription slip
//! fails loudly instead of producing wrong tables.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rat, rat_sqrt, ExactRat};
use crate::polyalg::{Field, Poly, RatFn};
use crate::quartic::{
    canonicalize, pqrs_residual, pqrs_to_quadruple, resolvent_pqrs, state_to_pqrs, Mode, PqrsTuple,
    Quadruple, RhoState,
};

/// Rows of the ρ = 1 table that carry rational data (row 11 involves √2).
pub const TABLE6_ROWS: [u8; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// Euler's first solution, degree 7 in `t`.
    Euler1,
    /// Euler's second solution, degree 13 in `t`.
    Euler2,
    /// The `a = -1` family in `n` from the second resolvent chain.
    NegA16,
    /// Degree-13 `a = 1` family in `n`.
    Deg13,
    /// Degree-15 `a = 1` family in `n`.
    Deg15,
    /// Hayashi's family with `a = u^2 - 3`.
    Hayashi,
    /// Row `i` of the ρ = 1 table, one of [`TABLE6_ROWS`].
    T6(u8),
}

impl FamilyId {
    /// Every registered family, in display order.
    pub fn all() -> Vec<FamilyId> {
        let mut v = vec![
            FamilyId::Euler1,
            FamilyId::Euler2,
            FamilyId::NegA16,
            FamilyId::Deg13,
            FamilyId::Deg15,
            FamilyId::Hayashi,
        ];
        v.extend(TABLE6_ROWS.iter().map(|&i| FamilyId::T6(i)));
        v
    }

    pub fn tag(&self) -> String {
        match self {
            FamilyId::Euler1 => "euler1".into(),
            FamilyId::Euler2 => "euler2".into(),
            FamilyId::NegA16 => "nega16".into(),
            FamilyId::Deg13 => "deg13".into(),
            FamilyId::Deg15 => "deg15".into(),
            FamilyId::Hayashi => "hayashi".into(),
            FamilyId::T6(i) => format!("t6_{i}"),
        }
    }

    pub fn parse(tag: &str) -> Result<FamilyId> {
        let lower = tag.to_ascii_lowercase();
        FamilyId::all()
            .into_iter()
            .find(|id| id.tag() == lower)
            .ok_or_else(|| Error::UnknownFamily(tag.to_string()))
    }

    pub fn param_name(&self) -> &'static str {
        match self {
            FamilyId::Euler1 | FamilyId::Euler2 => "t",
            FamilyId::NegA16 | FamilyId::Deg13 | FamilyId::Deg15 => "n",
            FamilyId::Hayashi | FamilyId::T6(_) => "u",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// One parametric family: `p, q, r, s, a` as functions of `param`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub param: &'static str,
    pub p: RatFn,
    pub q: RatFn,
    pub r: RatFn,
    pub s: RatFn,
    pub a: RatFn,
}

impl FamilySpec {
    pub fn parts(&self) -> [&RatFn; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// `pq(p^2+q^2)*den(a) - num(a)*rs(r^2+s^2)`, reduced.
    pub fn identity_residual(&self) -> RatFn {
        let res = pqrs_residual(&self.p, &self.q, &self.r, &self.s, &self.a);
        &res * &RatFn::from_poly(self.a.den().clone())
    }

    /// Exact value at `x`; a pole names the vanishing denominator.
    pub fn eval(&self, x: &ExactRat) -> Result<PqrsTuple> {
        let at = |f: &RatFn| {
            f.eval(x)
                .map_err(|_| Error::pole(f.den().display(self.param)))
        };
        let a = at(&self.a)?;
        if a.is_zero() {
            return Err(Error::domain(format!(
                "a vanishes at {} = {}",
                self.param,
                format_rat(x)
            )));
        }
        Ok(PqrsTuple::new(
            at(&self.p)?,
            at(&self.q)?,
            at(&self.r)?,
            at(&self.s)?,
            a,
        ))
    }

    /// Multi-line rendering in descending powers.
    pub fn describe(&self) -> String {
        let v = self.param;
        format!(
            "{}\n  p = {}\n  q = {}\n  r = {}\n  s = {}\n  a = {}",
            self.name,
            self.p.display(v),
            self.q.display(v),
            self.r.display(v),
            self.s.display(v),
            self.a.display(v)
        )
    }
}

fn px(desc: &[i64]) -> Poly {
    Poly::from_desc(desc)
}

fn prod(ps: &[Poly]) -> RatFn {
    RatFn::from_poly(ps.iter().fold(Poly::one(), |acc, p| &acc * p))
}

fn ratio(num: &[Poly], den: &[Poly]) -> RatFn {
    prod(num)
        .checked_div(&prod(den))
        .expect("nonzero denominator")
}

fn konst(n: i64) -> Poly {
    px(&[n])
}

fn var() -> Poly {
    px(&[1, 0])
}

fn spec(id: FamilyId, parts: [RatFn; 5]) -> FamilySpec {
    let [p, q, r, s, a] = parts;
    FamilySpec {
        name: id.tag(),
        param: id.param_name(),
        p,
        q,
        r,
        s,
        a,
    }
}

/// Euler2's `q(t)`; the symmetric reading `-t^12 + 214t^10 + 2481t^8 + 2804t^6 + ...`.
fn euler2_q() -> Poly {
    px(&[-1, 0, 214, 0, 2481, 0, 2804, 0, 2481, 0, 214, 0, -1])
}

fn build(id: FamilyId) -> FamilySpec {
    let one = RatFn::from_int(1);
    let t = var();
    match id {
        FamilyId::Euler1 => {
            let q = [px(&[1, 0, 1]), px(&[-1, 0, 18, 0, -1])];
            spec(
                id,
                [
                    prod(&[konst(2), t.clone(), px(&[1, 0, 10, 0, 1, 0, 4])]),
                    prod(&q),
                    prod(&[t.clone(), q[0].clone(), q[1].clone()]),
                    prod(&[konst(2), px(&[4, 0, 1, 0, 10, 0, 1])]),
                    one,
                ],
            )
        }
        FamilyId::Euler2 => {
            let sq = px(&[1, 0, -1]).pow(2);
            spec(
                id,
                [
                    prod(&[
                        konst(3),
                        t.clone(),
                        sq.clone(),
                        px(&[1, 0, 100, 0, 190, 0, -44, 0, 9]),
                    ]),
                    prod(&[euler2_q()]),
                    prod(&[t.clone(), euler2_q()]),
                    prod(&[konst(3), sq, px(&[9, 0, -44, 0, 190, 0, 100, 0, 1])]),
                    one,
                ],
            )
        }
        FamilyId::NegA16 => {
            let n = t;
            let n1 = px(&[1, 1]);
            let q3 = px(&[1, 1, 1]);
            let c3 = px(&[1, 1, 0, 1]);
            let c4 = px(&[1, 3, 3, 3, 1]);
            spec(
                id,
                [
                    prod(&[konst(-1), n.pow(4), n1.clone(), px(&[1, 2, 2]), c4.clone()]),
                    prod(&[q3.clone(), c3.clone(), px(&[1, 2, 2, 2, 3, 2, 1])]),
                    prod(&[n.clone(), n1, q3, c3, c4]),
                    prod(&[n, px(&[1, 4, 8, 10, 7, 2, 1, 2, 3, 2, 1])]),
                    RatFn::from_int(-1),
                ],
            )
        }
        FamilyId::Deg13 => {
            let n = t;
            let c3 = px(&[1, 1, 0, 1]);
            let q3 = px(&[1, 1, 1]);
            let d3 = px(&[1, 0, 1, -1]);
            let d4 = px(&[1, 2, 2, 1, 1]);
            spec(
                id,
                [
                    prod(&[c3.clone(), q3.clone(), px(&[1, 4, 9, 14, 14, 10, 6, 2, 1])]),
                    prod(&[n.pow(4), px(&[1, 2, 2]), d3.clone(), d4.clone()]),
                    prod(&[
                        n.clone(),
                        px(&[1, 6, 19, 40, 64, 80, 82, 68, 46, 26, 12, 4, 1]),
                    ]),
                    prod(&[n, c3, d3, q3, d4]),
                    one,
                ],
            )
        }
        FamilyId::Deg15 => {
            let n = t;
            let n1 = px(&[1, 1]);
            let c4 = px(&[1, 3, 3, 3, 1]);
            let e4 = px(&[1, 2, 0, -1, -1]);
            let e5 = px(&[1, 5, 8, 5, 1, 1]);
            spec(
                id,
                [
                    prod(&[
                        n1.clone(),
                        px(&[1, 8, 32, 90, 195, 320, 391, 358, 254, 146, 71, 30, 12, 4, 1]),
                    ]),
                    prod(&[n.clone(), n1.clone(), c4.clone(), e4.clone(), e5.clone()]),
                    prod(&[n, n1.pow(4), c4, px(&[1, 4, 9, 6, 3, 2, 1])]),
                    prod(&[e4, e5, px(&[1, 2, 2, 2, 3, 2, 1])]),
                    one,
                ],
            )
        }
        FamilyId::Hayashi => {
            let u = t;
            spec(
                id,
                [
                    prod(&[u.clone(), px(&[1, 0, -3])]),
                    prod(&[konst(2), px(&[1, 0, -1])]),
                    prod(&[u, px(&[1, 0, -1])]),
                    prod(&[konst(2)]),
                    prod(&[px(&[1, 0, -3])]),
                ],
            )
        }
        FamilyId::T6(i) => spec(id, table6_row(i)),
    }
}

/// `(p, q, r, s, a)` of a ρ = 1 table row, as printed. In row 10 the factor
/// written `r` in front of the p and r cells is the parameter `u`.
fn table6_row(i: u8) -> [RatFn; 5] {
    let u = var();
    match i {
        1 => [
            prod(&[u.clone(), px(&[1, 0, 4])]),
            prod(&[px(&[1, 0, -2])]),
            prod(&[u, px(&[1, 0, -2])]),
            prod(&[konst(4), px(&[1, 0, 1])]),
            ratio(&[konst(1)], &[konst(4)]),
        ],
        2 => [
            prod(&[u.clone(), px(&[1, 0, 16])]),
            prod(&[px(&[1, 0, -20])]),
            prod(&[u.clone(), px(&[1, 0, -20])]),
            prod(&[konst(9), u.pow(2)]),
            ratio(&[px(&[1, 0, 4]).pow(2)], &[konst(9), u.pow(4)]),
        ],
        3 => [
            prod(&[px(&[1, 0, 1])]),
            prod(std::slice::from_ref(&u)),
            prod(&[konst(1)]),
            prod(&[u, px(&[1, 0, 2])]),
            ratio(&[konst(1)], &[px(&[1, 0, 2])]),
        ],
        4 => [
            prod(&[u.clone(), px(&[9, 0, 1])]),
            prod(&[px(&[9, 0, -4])]),
            prod(&[u, px(&[9, 0, -4])]),
            prod(&[px(&[-6, 0, 1])]),
            ratio(&[px(&[9, 0, 16])], &[px(&[-6, 0, 1])]),
        ],
        5 => [
            prod(&[u.clone(), px(&[1, 0, 1])]),
            prod(&[konst(3), px(&[1, 0, 2])]),
            prod(&[konst(3), u.clone()]),
            prod(&[u.pow(2), px(&[1, 0, 4])]),
            ratio(&[px(&[1, 0, 2])], &[u.pow(4)]),
        ],
        6 => [
            prod(&[u.clone(), px(&[4, 0, -7, 0, 16])]),
            prod(&[px(&[4, 0, -19, 0, 4])]),
            prod(&[u, px(&[4, 0, -19, 0, 4])]),
            prod(&[konst(8), px(&[1, 0, 1]), px(&[-1, 0, 2])]),
            ratio(&[px(&[4, 0, 1])], &[konst(8), px(&[-1, 0, 2])]),
        ],
        7 => [
            prod(&[px(&[1, 0, -1, 0, 1])]),
            prod(&[u.clone(), px(&[2, 0, -1])]),
            prod(&[px(&[2, 0, -1])]),
            prod(&[u, px(&[1, 0, 0, 0, -1])]),
            ratio(&[konst(1)], &[px(&[1, 0, -1])]),
        ],
        8 => [
            prod(&[px(&[3, 0, 2]), px(&[9, 0, 1])]),
            prod(&[konst(2), u.clone(), px(&[1, 0, -1]).pow(2)]),
            prod(&[px(&[3, 0, 2]), px(&[-1, 0, 1])]),
            prod(&[konst(10), u, px(&[4, 0, 1])]),
            ratio(&[px(&[-1, 0, 0, 0, 1])], &[konst(5)]),
        ],
        9 => [
            prod(&[px(&[3, 0, -5]), px(&[1, 0, -1, 0, -9, 0, 25])]),
            prod(&[u.clone(), px(&[1, 0, -7]), px(&[1, 0, -3, 0, 3, 0, -25])]),
            prod(&[px(&[3, 0, -5]), px(&[1, 0, -3, 0, 3, 0, -25])]),
            prod(&[u, px(&[1, 0, -3]), px(&[1, 0, 1]), px(&[1, 0, -6, 0, 25])]),
            ratio(&[px(&[1, 0, -7])], &[px(&[1, 0, -3])]),
        ],
        10 => [
            prod(&[u.clone(), px(&[4, 0, 9, 0, 4])]),
            prod(&[px(&[4, 0, 9, 0, 6])]),
            prod(&[u, px(&[4, 0, 9, 0, 6])]),
            prod(&[konst(4), px(&[1, 0, 1])]),
            ratio(&[px(&[4, 0, 9])], &[konst(4)]),
        ],
        12 => [
            prod(&[konst(2), px(&[1, 0, 1])]),
            prod(&[konst(3), u.clone()]),
            prod(&[konst(6), u]),
            prod(&[konst(2), px(&[-1, 0, 2])]),
            ratio(&[px(&[4, 0, 1])], &[konst(8), px(&[-1, 0, 2])]),
        ],
        _ => panic!("no rational row {i} in the ρ = 1 table"),
    }
}

/// `(alpha_i(u), t_i(u), a_i(u))` of the ρ = 1 parameter table, rows 1 to 10.
pub fn table5_params(i: u8) -> Option<(RatFn, RatFn, RatFn)> {
    let u = var();
    let c = |n: i64, d: i64| RatFn::constant(BigRational::new(n.into(), d.into()));
    let row = match i {
        1 => (c(1, 2), prod(std::slice::from_ref(&u)), c(1, 4)),
        2 => (
            ratio(&[px(&[3, 0, 4])], &[u.pow(2)]),
            prod(std::slice::from_ref(&u)),
            ratio(&[px(&[1, 0, 4]).pow(2)], &[konst(9), u.pow(4)]),
        ),
        3 => (
            ratio(&[konst(1)], &[u.pow(2)]),
            ratio(&[konst(1)], std::slice::from_ref(&u)),
            ratio(&[konst(1)], &[px(&[1, 0, 2])]),
        ),
        4 => (
            prod(&[konst(-1), px(&[3, 0, 4])]),
            prod(std::slice::from_ref(&u)),
            ratio(&[px(&[9, 0, 16])], &[px(&[-6, 0, 1])]),
        ),
        5 => (
            ratio(&[px(&[3, 0, 4])], &[u.pow(2), px(&[1, 0, 2])]),
            ratio(std::slice::from_ref(&u), &[px(&[1, 0, 2])]),
            ratio(&[px(&[1, 0, 2])], &[u.pow(4)]),
        ),
        6 => (
            ratio(&[px(&[-4, 0, 1])], &[konst(4)]),
            prod(std::slice::from_ref(&u)),
            ratio(&[px(&[4, 0, 1])], &[konst(8), px(&[-1, 0, 2])]),
        ),
        7 => (
            ratio(&[konst(-2)], &[u.pow(2)]),
            ratio(&[konst(1)], std::slice::from_ref(&u)),
            ratio(&[konst(1)], &[px(&[1, 0, -1])]),
        ),
        8 => (
            ratio(&[px(&[1, 0, 2, 0, 2])], &[konst(2), px(&[-1, 0, 1])]),
            ratio(&[px(&[3, 0, 2])], &[konst(2), u.clone(), px(&[1, 0, -1])]),
            ratio(&[px(&[-1, 0, 0, 0, 1])], &[konst(5)]),
        ),
        9 => (
            ratio(&[px(&[1, 0, 9])], &[px(&[1, 0, -7])]),
            ratio(&[px(&[3, 0, -5])], &[u.clone(), px(&[1, 0, -7])]),
            ratio(&[px(&[1, 0, -7])], &[px(&[1, 0, -3])]),
        ),
        10 => (
            c(-3, 2),
            prod(std::slice::from_ref(&u)),
            ratio(&[px(&[4, 0, 9])], &[konst(4)]),
        ),
        _ => return None,
    };
    Some(row)
}

fn registry() -> &'static [FamilySpec] {
    static REGISTRY: OnceLock<Vec<FamilySpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        FamilyId::all()
            .into_iter()
            .map(|id| {
                let s = build(id);
                let res = s.identity_residual();
                assert!(
                    res.is_identically_zero(),
                    "family {id} fails its identity: residual {}",
                    res.display(s.param)
                );
                s
            })
            .collect()
    })
}

/// The registered spec of a family.
pub fn family_spec(id: FamilyId) -> &'static FamilySpec {
    let idx = FamilyId::all()
        .iter()
        .position(|x| *x == id)
        .unwrap_or_else(|| panic!("unregistered family {id:?}"));
    &registry()[idx]
}

pub fn identity_residual(id: FamilyId) -> RatFn {
    family_spec(id).identity_residual()
}

pub fn eval_family(id: FamilyId, param: &ExactRat) -> Result<PqrsTuple> {
    family_spec(id).eval(param)
}

pub fn generate(id: FamilyId, param: &ExactRat, mode: Mode) -> Result<Quadruple> {
    pqrs_to_quadruple(&eval_family(id, param)?, mode)
}

/// Which root of the cubic in `z` the first resolvent chain uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case1Variant {
    /// `omega` linear in `z`; leads to Euler's first solution.
    Linear,
    /// `omega` quadratic in `z`; leads to Euler's second solution.
    Quadratic,
}

/// `(z, rho, omega)` for the `a = 1` chain with `rho = 1 + z`.
///
/// Linear: `omega = (3/2)(t^2+1) z + (t^2+1)`, `z = -3(t^2-1)^2 / (4(t^4+1))`.
/// Quadratic: `omega = 3(t^2-1)^2/(8(t^2+1)) z^2 + (3/2)(t^2+1) z + (t^2+1)` and
/// `z = 8(t^2+1)^2 (-t^4+18t^2-1) / (9(t^2-1)^4)`.
pub fn case1_chain<F: Field>(t: &F, variant: Case1Variant) -> Result<(F, F, F)> {
    let int = F::from_int;
    let t2 = t.powi(2);
    let w0 = t2.clone() + int(1);
    let w1 = int(3).try_div(&int(2)).unwrap() * w0.clone();
    let tm = t2.clone() - int(1);
    let z = match variant {
        Case1Variant::Linear => {
            let den = int(4) * (t2.powi(2) + int(1));
            (int(-3) * tm.powi(2))
                .try_div(&den)
                .ok_or_else(|| Error::pole("4(t⁴ + 1)"))?
        }
        Case1Variant::Quadratic => {
            let num = int(8) * w0.powi(2) * (-t2.powi(2) + int(18) * t2.clone() - int(1));
            num.try_div(&(int(9) * tm.powi(4)))
                .ok_or_else(|| Error::pole("(t²−1)⁴"))?
        }
    };
    let mut omega = w1 * z.clone() + w0.clone();
    if variant == Case1Variant::Quadratic {
        let w2 = (int(3) * tm.powi(2))
            .try_div(&(int(8) * w0))
            .ok_or_else(|| Error::pole("8(t² + 1)"))?;
        omega = omega + w2 * z.powi(2);
    }
    let rho = int(1) + z.clone();
    Ok((z, rho, omega))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case1Derivation {
    pub t: ExactRat,
    pub variant: Case1Variant,
    pub z: ExactRat,
    pub rho: ExactRat,
    pub omega: ExactRat,
}

impl Case1Derivation {
    pub fn state(&self) -> RhoState {
        RhoState::new(
            BigRational::one(),
            self.rho.clone(),
            self.t.clone(),
            self.omega.clone(),
        )
    }

    pub fn pqrs(&self) -> Result<PqrsTuple> {
        state_to_pqrs(&self.state())
    }
}

pub fn derive_case1(t: &ExactRat, variant: Case1Variant) -> Result<Case1Derivation> {
    if variant == Case1Variant::Quadratic {
        if t.is_zero() {
            return Err(Error::domain("t = 0 gives a degenerate state"));
        }
        if t.abs().is_one() {
            return Err(Error::pole("(t²−1)⁴"));
        }
    }
    let (z, rho, omega) = case1_chain(t, variant)?;
    let d = Case1Derivation {
        t: t.clone(),
        variant,
        z,
        rho,
        omega,
    };
    debug_assert!(crate::quartic::eq7_residual(&d.state()).is_zero());
    Ok(d)
}

/// Intermediates of the `a = -1` chain in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Derivation {
    pub n: ExactRat,
    pub v: ExactRat,
    pub k: ExactRat,
    pub z: ExactRat,
    pub rho: ExactRat,
    pub t: ExactRat,
    pub omega: ExactRat,
    pub delta: ExactRat,
    /// Sign of `delta` in `t^2 = (3 rho^2 + 1 ± delta) / (2 rho^3)` that holds.
    pub delta_branch: i8,
}

impl Case2Derivation {
    pub fn state(&self) -> RhoState {
        RhoState::new(
            -BigRational::one(),
            self.rho.clone(),
            self.t.clone(),
            self.omega.clone(),
        )
    }

    pub fn pqrs(&self) -> Result<PqrsTuple> {
        state_to_pqrs(&self.state())
    }
}

pub fn derive_case2(n: &ExactRat) -> Result<Case2Derivation> {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    if n.is_zero() {
        return Err(Error::pole("n²"));
    }
    let n2 = n * n;
    let v = (&n2 + n + int(1)) / &n2;
    let rho_den = &n2 * &v * &v - int(2) * &v - (&n2 - int(1));
    if rho_den.is_zero() {
        return Err(Error::pole("n²(2n³ + 2n² − 1)"));
    }
    let rho = (&v * &v + (n + int(1)).pow(2)) / rho_den;
    if rho.is_zero() {
        return Err(Error::pole("ρ"));
    }
    let t = (&rho + &v) / &rho;
    let k_den = &rho * &n2 - int(1);
    if k_den.is_zero() {
        return Err(Error::pole("ρn² − 1"));
    }
    let rho2p1 = &rho * &rho + int(1);
    let two_rho_p1 = int(2) * &rho + int(1);
    let k = (&two_rho_p1 * n + int(2)) / &k_den;
    let z = int(1) + &k;
    let omega = &rho2p1 * &z / &rho;
    let delta = &rho2p1 * (&two_rho_p1 * &rho * &n2 + int(4) * &rho * n + &two_rho_p1) / &k_den;

    let rho3 = rho.pow(3);
    let d2 = &rho2p1 * &rho2p1 * (int(4) * &rho * &rho + int(1)) + int(4) * &rho3 * &omega * &omega;
    if &delta * &delta != d2 {
        return Err(Error::Precondition(
            "Δ² does not match its defining quartic".into(),
        ));
    }
    let lhs14 = &delta * &delta / (&rho2p1 * &rho2p1);
    if lhs14 != int(4) * &rho * &rho + int(4) * &rho * &z * &z + int(1) {
        return Err(Error::Precondition("Δ²/(ρ²+1)² ≠ 4ρ² + 4ρz² + 1".into()));
    }
    let base = int(3) * &rho * &rho + int(1);
    let t2 = &t * &t;
    let delta_branch = if t2 == (&base + &delta) / (int(2) * &rho3) {
        1
    } else if t2 == (&base - &delta) / (int(2) * &rho3) {
        -1
    } else {
        return Err(Error::Precondition("t² matches neither branch of Δ".into()));
    };
    let d = Case2Derivation {
        n: n.clone(),
        v,
        k,
        z,
        rho,
        t,
        omega,
        delta,
        delta_branch,
    };
    if !crate::quartic::eq7_residual(&d.state()).is_zero() {
        return Err(Error::Precondition("chain leaves the resolvent".into()));
    }
    Ok(d)
}

/// `a = (alpha^2 + t^2)/((2 alpha + 3) t^2 + 1)` and the ρ = 1 solution
/// `(t(a t^2 + 1), a t^2 - alpha, t(a t^2 - alpha), t^2 + 1)`.
pub fn rho1_formula<F: Field>(alpha: &F, t: &F) -> Option<([F; 4], F)> {
    let int = F::from_int;
    let t2 = t.powi(2);
    let den = (int(2) * alpha.clone() + int(3)) * t2.clone() + int(1);
    let a = (alpha.powi(2) + t2.clone()).try_div(&den)?;
    let omega = a.clone() * t2 - alpha.clone();
    Some((resolvent_pqrs(&a, &int(1), t, &omega), a))
}

/// `(alpha, t)` for the ρ = 1 solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rho1Params {
    pub alpha: ExactRat,
    pub t: ExactRat,
}

pub fn rho1_solve(params: &Rho1Params) -> Result<PqrsTuple> {
    let ([p, q, r, s], a) =
        rho1_formula(&params.alpha, &params.t).ok_or_else(|| Error::pole("(2α + 3)t² + 1"))?;
    if a.is_zero() {
        return Err(Error::domain("a = 0 (α = t = 0)"));
    }
    Ok(PqrsTuple::new(p, q, r, s, a))
}

/// The state `(a, 1, t, a t^2 - alpha)` behind [`rho1_solve`].
pub fn rho1_state(params: &Rho1Params) -> Result<RhoState> {
    let ps = rho1_solve(params)?;
    let omega = ps.q.clone();
    Ok(RhoState::new(
        ps.a,
        BigRational::one(),
        params.t.clone(),
        omega,
    ))
}

/// The ρ = 1 solution for fixed `alpha` as a family in `t`.
pub fn rho1_spec(alpha: &ExactRat) -> Result<FamilySpec> {
    let al = RatFn::constant(alpha.clone());
    let ([p, q, r, s], a) =
        rho1_formula(&al, &RatFn::var()).ok_or_else(|| Error::pole("(2α + 3)t² + 1"))?;
    Ok(FamilySpec {
        name: format!("rho1(alpha={})", format_rat(alpha)),
        param: "t",
        p,
        q,
        r,
        s,
        a,
    })
}

/// True when two `(p, q, r, s)` tuples of rational functions describe the same
/// quadruples up to scale and the sign/order symmetries of `pq(p²+q²) = a rs(r²+s²)`:
/// swapping within `{p, q}` or `{r, s}`, and sign patterns that scale `pq` and `rs`
/// equally.
pub fn projectively_equivalent(x: [&RatFn; 4], y: [&RatFn; 4]) -> bool {
    let orders = [[0, 1, 2, 3], [1, 0, 2, 3], [0, 1, 3, 2], [1, 0, 3, 2]];
    for ord in orders {
        for signs in 0u8..16 {
            let sg = |i: usize| if signs >> i & 1 == 1 { -1 } else { 1 };
            if sg(0) * sg(1) != sg(2) * sg(3) {
                continue;
            }
            let cand: Vec<RatFn> = (0..4)
                .map(|i| x[ord[i]] * &RatFn::from_int(sg(i)))
                .collect();
            let ok = (0..4).all(|i| (0..4).all(|j| &cand[i] * y[j] == &cand[j] * y[i]))
                && cand.iter().any(|c| !c.is_identically_zero());
            if ok {
                return true;
            }
        }
    }
    false
}

/// `t = (B + D)/(A - C)`, which equals `r/q`.
pub fn recover_t(q: &Quadruple) -> Result<ExactRat> {
    let [a, b, c, d] = &q.entries;
    if a == c {
        return Err(Error::domain("A = C"));
    }
    Ok(BigRational::new(b + d, a - c))
}

/// Outcome of recovering `n` for the `a = -1` family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRecovery {
    /// Rational roots of `n^2 (v - 1) - n - 1 = 0`.
    pub candidates: Vec<ExactRat>,
    /// Candidates that regenerate the quadruple's canonical form.
    pub validated: Vec<ExactRat>,
    /// `(y - x)(y - 1)/(x - (y^2 + y + 1))`, when defined; reported, not trusted.
    pub xy_estimate: Option<ExactRat>,
}

/// Recovers `n` from an `a = -1` quadruple through `x = (D-B)/(A-C)`,
/// `y = (A+C)/(D+B)`, `rho = (xy+1)/(y^2-x^2)`, `t = (B+D)/(A-C)`, `v = rho t - rho`
/// and the quadratic for `n` in `v = (n^2+n+1)/n^2`.
pub fn recover_n(q: &Quadruple) -> Result<NRecovery> {
    if q.a != -BigRational::one() {
        return Err(Error::domain("recover_n needs a = -1"));
    }
    let [a, b, c, d] = &q.entries;
    if a == c {
        return Err(Error::domain("A = C"));
    }
    if d + b == BigInt::zero() {
        return Err(Error::domain("D = -B"));
    }
    let one = BigRational::one();
    let x = BigRational::new(d - b, a - c);
    let y = BigRational::new(a + c, d + b);
    let xy_estimate = {
        let den = &x - (&y * &y + &y + &one);
        (!den.is_zero()).then(|| (&y - &x) * (&y - &one) / den)
    };
    let mut out = NRecovery {
        candidates: Vec::new(),
        validated: Vec::new(),
        xy_estimate,
    };
    let rden = &y * &y - &x * &x;
    if rden.is_zero() {
        return Ok(out);
    }
    let rho = (&x * &y + &one) / rden;
    let t = BigRational::new(b + d, a - c);
    let v = &rho * &t - &rho;
    // (v - 1) n^2 - n - 1 = 0
    let lead = &v - &one;
    let mut roots = Vec::new();
    if lead.is_zero() {
        roots.push(-one.clone());
    } else if let Some(sq) = rat_sqrt(&(&one + BigRational::from_integer(4.into()) * &lead)) {
        let two_lead = &lead * BigRational::from_integer(2.into());
        roots.push((&one + &sq) / &two_lead);
        roots.push((&one - &sq) / &two_lead);
    }
    roots.sort();
    roots.dedup();
    let target = canonicalize(q);
    for n in &roots {
        if let Ok(g) = generate(FamilyId::NegA16, n, Mode::Canonical) {
            if g == target {
                out.validated.push(n.clone());
            }
        }
    }
    out.candidates = roots;
    Ok(out)
}
