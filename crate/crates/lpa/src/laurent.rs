//! Exact Laurent polynomial arithmetic over the rationals, with the
//! comaximality and unimodular-row-reduction checks for pairs over
//! `K[z, z^-1]`.
//!
//! The units of the Laurent ring are the nonzero monomials `c·z^k`. For a
//! pair `(f, g)`, `f + v·g` is a unit for some `v` exactly when the residue
//! of `f` modulo the polynomial normalization of `g` is a nonzero scalar
//! multiple of a power of `z`. When `z` has finite multiplicative order in
//! that quotient ring the finitely many powers decide the question either
//! way; otherwise a bounded window of exponents is searched and the verdict
//! may honestly be inconclusive.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

type Q = BigRational;

/// A Laurent polynomial: finitely many exponents with nonzero rational
/// coefficients. Zero coefficients are never stored, so representation is
/// unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(Q::one(), 0)
    }

    pub fn monomial(coeff: Q, exp: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `num/den · z^exp` from machine integers; handy in tests.
    pub fn term(num: i64, den: i64, exp: i64) -> LaurentPoly {
        LaurentPoly::monomial(Q::new(BigInt::from(num), BigInt::from(den)), exp)
    }

    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::term(c, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the polynomial is `c·z^k` with `c != 0`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, exp: i64) -> Q {
        self.terms.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplicative inverse of a unit.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let (&exp, coeff) = self.terms.iter().next().expect("unit has one term");
        Some(LaurentPoly::monomial(Q::one() / coeff.clone(), -exp))
    }

    fn insert(&mut self, exp: i64, coeff: Q) {
        if !coeff.is_zero() {
            self.terms.insert(exp, coeff);
        }
    }

    /// Writes `self = z^shift · p` with `p` a polynomial having nonzero
    /// constant term; `None` for the zero polynomial.
    fn normalize(&self) -> Option<(i64, Poly)> {
        let shift = self.min_exp()?;
        let top = self.max_exp().expect("nonzero");
        let mut coeffs = vec![Q::zero(); (top - shift) as usize + 1];
        for (exp, c) in self.terms() {
            coeffs[(exp - shift) as usize] = c.clone();
        }
        Some((shift, Poly::new(coeffs)))
    }

    fn from_poly(shift: i64, p: &Poly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, c) in p.coeffs.iter().enumerate() {
            out.insert(shift + i as i64, c.clone());
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (exp, c) in rhs.terms() {
            let sum = out.coeff(exp) + c;
            out.terms.remove(&exp);
            out.insert(exp, sum);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                let exp = ea + eb;
                let sum = out.coeff(exp) + ca * cb;
                out.terms.remove(&exp);
                out.insert(exp, sum);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if exp == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if exp == 1 {
                    f.write_str("z")?;
                } else {
                    write!(f, "z^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses literals like `1+z`, `1+z^2`, `3*z^-2`, `-1/2*z + z^3`.
pub fn parse_laurent(input: &str) -> Result<LaurentPoly> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| Error::Parse {
        line: 1,
        col: pos + 1,
        msg: msg.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let parse_digits = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| {
            chars[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .expect("digits parse")
        })
    };
    let mut out = LaurentPoly::zero();
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(err(pos, "empty polynomial"));
    }
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        if !first || matches!(chars.get(pos), Some('+' | '-')) {
            match chars.get(pos) {
                Some('+') => pos += 1,
                Some('-') => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                Some(c) => return Err(err(pos, &format!("expected `+` or `-`, found `{c}`"))),
                None => return Err(err(pos, "dangling sign")),
            }
            skip_ws(&mut pos);
        }
        first = false;
        // coefficient, if any
        let mut coeff = None;
        if let Some(n) = parse_digits(&mut pos) {
            let mut den = BigInt::one();
            if chars.get(pos) == Some(&'/') {
                pos += 1;
                den = parse_digits(&mut pos).ok_or_else(|| err(pos, "expected a denominator"))?;
                if den.is_zero() {
                    return Err(err(pos, "zero denominator"));
                }
            }
            coeff = Some(Q::new(n, den));
        }
        skip_ws(&mut pos);
        let mut saw_star = false;
        if chars.get(pos) == Some(&'*') {
            if coeff.is_none() {
                return Err(err(pos, "`*` without a coefficient"));
            }
            saw_star = true;
            pos += 1;
            skip_ws(&mut pos);
        }
        // variable part, if any
        let mut exp = 0i64;
        let mut saw_var = false;
        if chars.get(pos) == Some(&'z') {
            saw_var = true;
            pos += 1;
            exp = 1;
            if chars.get(pos) == Some(&'^') {
                pos += 1;
                let mut exp_neg = false;
                match chars.get(pos) {
                    Some('-') => {
                        exp_neg = true;
                        pos += 1;
                    }
                    Some('+') => pos += 1,
                    _ => {}
                }
                let digits =
                    parse_digits(&mut pos).ok_or_else(|| err(pos, "expected an exponent"))?;
                let magnitude: i64 = digits
                    .try_into()
                    .map_err(|_| err(pos, "exponent too large"))?;
                exp = if exp_neg { -magnitude } else { magnitude };
            }
        }
        if coeff.is_none() && !saw_var {
            return Err(err(pos, "expected a coefficient or `z`"));
        }
        if saw_star && !saw_var {
            return Err(err(pos, "expected `z` after `*`"));
        }
        let mut c = coeff.unwrap_or_else(Q::one);
        if negative {
            c = -c;
        }
        let sum = out.coeff(exp) + c;
        out.terms.remove(&exp);
        out.insert(exp, sum);
        skip_ws(&mut pos);
    }
    Ok(out)
}

/// Dense polynomial over the rationals; only used inside this module.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly {
    coeffs: Vec<Q>, // lowest power first, no trailing zeros
}

impl Poly {
    fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(Q::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    fn one() -> Poly {
        Poly::new(vec![Q::one()])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }

    fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }

    /// Division with remainder over the rational field.
    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.deg().expect("nonzero divisor");
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.deg() {
            if rd < dd {
                break;
            }
            let factor = rem.coeffs.last().expect("nonzero rem") / lead;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut sub = vec![Q::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Poly::new(sub));
        }
        (Poly::new(quot), rem)
    }

    fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }
}

/// Extended Euclid over `Q[z]`: returns `(d, s, t)` with `s·a + t·b = d`.
fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
        (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
    }
    (r0, s0, t0)
}

/// Witnesses `a·f + b·g = 1` by extended Euclid on the polynomial
/// normalizations; `None` when the gcd is not a unit of the Laurent ring.
pub fn bezout(f: &LaurentPoly, g: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return None,
        (true, false) => return g.unit_inverse().map(|inv| (LaurentPoly::zero(), inv)),
        (false, true) => return f.unit_inverse().map(|inv| (inv, LaurentPoly::zero())),
        (false, false) => {}
    }
    let (shift_f, fhat) = f.normalize().expect("nonzero");
    let (shift_g, ghat) = g.normalize().expect("nonzero");
    let (d, s, t) = ext_gcd(&fhat, &ghat);
    if d.deg() != Some(0) {
        return None;
    }
    let c = d.coeffs[0].clone();
    let a = &LaurentPoly::from_poly(-shift_f, &s) * &LaurentPoly::monomial(Q::one() / c.clone(), 0);
    let b = &LaurentPoly::from_poly(-shift_g, &t) * &LaurentPoly::monomial(Q::one() / c, 0);
    Some((a, b))
}

/// Checker outcome for "is `f + v·g` a unit for some `v`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionWitness {
    Reducible(LaurentPoly),
    Irreducible(IrreducibleProof),
    Inconclusive,
}

/// Proof that no `v` makes `f + v·g` a unit: `z` has finite order `period`
/// modulo the normalization of `g`, and no scalar multiple of any residue
/// `z^k` equals the residue of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleProof {
    pub modulus: LaurentPoly,
    pub period: usize,
    pub residues: Vec<LaurentPoly>,
    pub f_residue: LaurentPoly,
}

impl IrreducibleProof {
    /// Recomputes every residue class and re-checks the non-matching.
    pub fn verify(&self, f: &LaurentPoly, g: &LaurentPoly) -> bool {
        let Some((_, ghat)) = g.normalize() else {
            return false;
        };
        if LaurentPoly::from_poly(0, &ghat) != self.modulus || self.period == 0 {
            return false;
        }
        let Some(fres) = residue(f, &ghat) else {
            return false;
        };
        if LaurentPoly::from_poly(0, &fres) != self.f_residue {
            return false;
        }
        let z = Poly::new(vec![Q::zero(), Q::one()]);
        let mut power = Poly::one();
        for (k, expected) in self.residues.iter().enumerate() {
            if LaurentPoly::from_poly(0, &power) != *expected {
                return false;
            }
            if proportionality(&fres, &power).is_some() {
                return false;
            }
            power = power.mul(&z).rem(&ghat);
            if power == Poly::one() && k + 1 != self.period {
                return false;
            }
        }
        power == Poly::one()
    }
}

/// Tuning for [`reduction_witness_with`].
#[derive(Debug, Clone)]
pub struct ReductionConfig {
    /// Exponent window `[-window, window]` searched when `z` has no
    /// detected finite order in the quotient.
    pub window: i64,
    /// How many powers of `z` to try when looking for a finite order.
    pub period_bound: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            window: 8,
            period_bound: 512,
        }
    }
}

pub fn reduction_witness(f: &LaurentPoly, g: &LaurentPoly) -> Result<ReductionWitness> {
    reduction_witness_with(f, g, &ReductionConfig::default())
}

pub fn reduction_witness_with(
    f: &LaurentPoly,
    g: &LaurentPoly,
    config: &ReductionConfig,
) -> Result<ReductionWitness> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Ok(ReductionWitness::Reducible(LaurentPoly::zero()));
    }
    let (_, ghat) = g.normalize().expect("nonzero");
    if ghat.deg() == Some(0) {
        // g is a unit: v = (1 - f) / g
        let v = exact_div(&(&LaurentPoly::one() - f), g);
        return Ok(ReductionWitness::Reducible(v));
    }
    let fres = residue(f, &ghat).expect("ghat nonconstant");
    let z = Poly::new(vec![Q::zero(), Q::one()]);
    let mut powers = vec![Poly::one()];
    let mut period = None;
    for _ in 0..config.period_bound {
        let next = powers.last().expect("nonempty").mul(&z).rem(&ghat);
        if next == Poly::one() {
            period = Some(powers.len());
            break;
        }
        powers.push(next);
    }
    if let Some(period) = period {
        for (k, residue) in powers.iter().enumerate() {
            if let Some(c) = proportionality(&fres, residue) {
                let unit = LaurentPoly::monomial(c, k as i64);
                let v = exact_div(&(&unit - f), g);
                return Ok(ReductionWitness::Reducible(v));
            }
        }
        return Ok(ReductionWitness::Irreducible(IrreducibleProof {
            modulus: LaurentPoly::from_poly(0, &ghat),
            period,
            residues: powers
                .iter()
                .map(|p| LaurentPoly::from_poly(0, p))
                .collect(),
            f_residue: LaurentPoly::from_poly(0, &fres),
        }));
    }
    // no finite order detected: search a window of exponents
    let zinv = z_inverse(&ghat);
    for k in -config.window..=config.window {
        let mut power = Poly::one();
        let step = if k >= 0 { &z } else { &zinv };
        for _ in 0..k.unsigned_abs() {
            power = power.mul(step).rem(&ghat);
        }
        if let Some(c) = proportionality(&fres, &power) {
            let unit = LaurentPoly::monomial(c, k);
            let v = exact_div(&(&unit - f), g);
            return Ok(ReductionWitness::Reducible(v));
        }
    }
    Ok(ReductionWitness::Inconclusive)
}

/// The class of `f` in `Q[z]/(ghat)`; `z` is invertible there because
/// `ghat` has a nonzero constant term.
fn residue(f: &LaurentPoly, ghat: &Poly) -> Option<Poly> {
    let Some((shift, fhat)) = f.normalize() else {
        return Some(Poly::zero());
    };
    let mut r = fhat.rem(ghat);
    if shift != 0 {
        let z = Poly::new(vec![Q::zero(), Q::one()]);
        let zinv = z_inverse(ghat);
        let step = if shift > 0 { z } else { zinv };
        for _ in 0..shift.unsigned_abs() {
            r = r.mul(&step).rem(ghat);
        }
    }
    Some(r)
}

/// Inverse of `z` modulo `ghat`: from `ghat = g0 + z·q`, `z·(-q/g0) ≡ 1`.
fn z_inverse(ghat: &Poly) -> Poly {
    let g0 = ghat.coeffs[0].clone();
    assert!(!g0.is_zero(), "normalization has a nonzero constant term");
    let q = Poly::new(ghat.coeffs[1..].to_vec());
    q.scale(&(-Q::one() / g0)).rem(ghat)
}

/// `Some(c)` iff `a = c·b` with `c` a nonzero rational.
fn proportionality(a: &Poly, b: &Poly) -> Option<Q> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let i = b.coeffs.iter().position(|c| !c.is_zero())?;
    let c = a.coeffs.get(i)? / &b.coeffs[i];
    if c.is_zero() {
        return None;
    }
    (b.scale(&c) == *a).then_some(c)
}

/// Exact division in the Laurent ring; the divisor must divide exactly.
fn exact_div(num: &LaurentPoly, den: &LaurentPoly) -> LaurentPoly {
    if num.is_zero() {
        return LaurentPoly::zero();
    }
    let (sn, nhat) = num.normalize().expect("nonzero");
    let (sd, dhat) = den.normalize().expect("nonzero divisor");
    let (q, r) = nhat.div_rem(&dhat);
    assert!(r.is_zero(), "inexact Laurent division");
    LaurentPoly::from_poly(sn - sd, &q)
}
