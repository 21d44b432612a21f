//! The coefficient field `Q(i)(s)` with `s² = q`.
//!
//! A [`Scalar`] is a reduced fraction of polynomials in the formal symbol `s`
//! whose coefficients are Gaussian rationals. The denominator is always monic
//! and coprime to the numerator, so two equal values have identical
//! representations and `==` is syntactic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational `x + y·i`.
pub type Coeff = Complex<BigRational>;

pub(crate) fn coeff_int(n: i64) -> Coeff {
    Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
}

pub(crate) fn coeff_i() -> Coeff {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Dense polynomial in `s`, lowest power first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<Coeff>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Coeff::one()])
    }

    pub fn monomial(c: Coeff, power: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Coeff::zero(); power + 1];
        v[power] = c;
        Poly(v)
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.0
    }

    /// Lowest power of `s` with a nonzero coefficient.
    fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn leading(&self) -> Option<&Coeff> {
        self.0.last()
    }

    fn is_monomial(&self) -> bool {
        !self.is_zero() && self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }

    fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.0.get(k), other.0.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly(v).trim()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Coeff::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = &v[i + j] + a * b;
            }
        }
        Poly(v).trim()
    }

    /// Euclidean division; `divisor` must be nonzero.
    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = Coeff::one() / divisor.leading().unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Coeff::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = &rem[k] * &lead_inv;
            for (j, c) in divisor.0.iter().enumerate() {
                rem[k - dd + j] = &rem[k - dd + j] - &f * c;
            }
            quot[k - dd] = f;
        }
        rem.truncate(dd);
        (Poly(quot).trim(), Poly(rem).trim())
    }

    fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero());
        q
    }

    fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(Coeff::one() / l)),
            None => Poly::zero(),
        }
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        // pure powers of s are common in Laurent-type data
        if a.is_monomial() || b.is_monomial() {
            let k = a.valuation().min(b.valuation());
            return Poly::monomial(Coeff::one(), k);
        }
        let k = a.valuation().min(b.valuation());
        let (mut x, mut y) = (a.shift_down(k).monic(), b.shift_down(k).monic());
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        let g = x.monic();
        if k == 0 {
            g
        } else {
            g.mul(&Poly::monomial(Coeff::one(), k))
        }
    }

    fn conj(&self) -> Poly {
        Poly(self.0.iter().map(|c| c.conj()).collect())
    }

    fn eval(&self, x: &BigRational) -> Coeff {
        let mut acc = Coeff::zero();
        for c in self.0.iter().rev() {
            acc = Complex::new(&acc.re * x, &acc.im * x) + c;
        }
        acc
    }
}

/// An element of `Q(i)(s)`, `s² = q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(coeff_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        let r = BigRational::new(n.into(), d.into());
        Self::from_coeff(Complex::new(r, BigRational::zero()))
    }

    pub fn from_coeff(c: Coeff) -> Self {
        Scalar { num: Poly::monomial(c, 0), den: Poly::one() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_coeff(coeff_i())
    }

    /// The formal square root `s` of `q`.
    pub fn s() -> Self {
        Self::s_pow(1)
    }

    pub fn q() -> Self {
        Self::s_pow(2)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar { num: Poly::monomial(Coeff::one(), k as usize), den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: Poly::monomial(Coeff::one(), (-k) as usize) }
        }
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// Builds `num / den`, reducing to canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = Coeff::one() / lead;
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    /// True when the value does not depend on `s`.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.coeffs().first().cloned().unwrap_or_else(Coeff::zero))
    }

    /// Total number of stored coefficients, a proxy for expression size.
    pub fn complexity(&self) -> usize {
        self.num.coeffs().len() + self.den.coeffs().len()
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv_unchecked())
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Scalar {
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Complex conjugation: `i ↦ -i`, `s ↦ s`.
    pub fn conj(&self) -> Scalar {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    /// Exact substitution `s = s0`.
    pub fn specialize(&self, s0: &BigRational) -> Result<Coeff> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(Error::Pole { at: s0.to_string() });
        }
        Ok(self.num.eval(s0) / d)
    }

    /// Substitutes `s = s0` and keeps the result as a constant scalar.
    pub fn specialize_scalar(&self, s0: &BigRational) -> Result<Scalar> {
        self.specialize(s0).map(Scalar::from_coeff)
    }

    /// Sign of a real constant; `None` if non-real or non-constant.
    pub fn real_sign(&self) -> Option<Ordering> {
        let c = self.as_constant()?;
        if !c.im.is_zero() {
            return None;
        }
        Some(if c.re.is_positive() {
            Ordering::Greater
        } else if c.re.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }

    /// Canonical text form, accepted back by the expression parser.
    pub fn render(&self) -> String {
        if self.den == Poly::one() {
            return render_poly(&self.num, 0);
        }
        if self.den.is_monomial() {
            return render_poly(&self.num, self.den.degree().unwrap() as i64);
        }
        format!("({})^-1*({})", render_poly(&self.den, 0), render_poly(&self.num, 0))
    }

    /// True if rendering needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        let terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if self.den != Poly::one() && !self.den.is_monomial() {
            return true;
        }
        if terms > 1 {
            return true;
        }
        // a single term with a two-part Gaussian coefficient renders parenthesized already
        false
    }
}

fn render_coeff(c: &Coeff) -> String {
    let re = &c.re;
    let im = &c.im;
    let fmt_rat = |r: &BigRational| -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    if im.is_zero() {
        return fmt_rat(re);
    }
    let imag = if im.is_one() {
        "i".to_string()
    } else if (-im).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rat(im))
    };
    if re.is_zero() {
        imag
    } else if im.is_negative() {
        format!("({}{})", fmt_rat(re), imag)
    } else {
        format!("({}+{})", fmt_rat(re), imag)
    }
}

/// Renders `p(s) / s^shift` as a Laurent polynomial in `q` when all
/// exponents are even, otherwise in `s`.
fn render_poly(p: &Poly, shift: i64) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let exps: Vec<(i64, &Coeff)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64 - shift, c))
        .collect();
    let use_q = exps.iter().all(|(e, _)| e % 2 == 0);
    let mut out = String::new();
    for (idx, (e, c)) in exps.iter().enumerate() {
        let (var, e) = if use_q { ("q", e / 2) } else { ("s", *e) };
        let power = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        let neg_real = c.im.is_zero() && c.re.is_negative();
        let mag = if neg_real { -(*c).clone() } else { (*c).clone() };
        let body = if power.is_empty() {
            render_coeff(&mag)
        } else if mag.is_one() {
            power
        } else {
            format!("{}*{}", render_coeff(&mag), power)
        };
        let body = if !neg_real && body.starts_with('-') && idx > 0 {
            // -i and friends
            out.push('-');
            body[1..].to_string()
        } else {
            if idx > 0 {
                out.push(if neg_real { '-' } else { '+' });
            } else if neg_real {
                out.push('-');
            }
            body
        };
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.render())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::reduce(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if rhs.den == Poly::one() && rhs.num.degree() == Some(0) {
            // constant factor: no new common divisors can appear
            let c = &rhs.num.coeffs()[0];
            return Scalar { num: self.num.scale(c), den: self.den.clone() };
        }
        if self.den == Poly::one() && self.num.degree() == Some(0) {
            let c = &self.num.coeffs()[0];
            return Scalar { num: rhs.num.scale(c), den: rhs.den.clone() };
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = Coeff::one() / lead;
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a fallible form.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Parses a rational like `7/10` or `3`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse { message: format!("not a rational number: {t:?}"), line: 1, column: 1 };
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn inverse_pair() {
        assert_eq!(&q() * &q().inv().unwrap(), one());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn gcd_reduction_then_add() {
        // (1-q²)/(1-q) reduces to 1+q; adding q gives 1+2q
        let num = &one() - &(&q() * &q());
        let den = &one() - &q();
        let x = &num / &den;
        assert_eq!(x, &one() + &q());
        assert_eq!(&x + &q(), &one() + &(&Scalar::from_int(2) * &q()));
        assert_eq!(x.denom(), &Poly::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(q().checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn conjugation() {
        let iq = &Scalar::i() * &q();
        assert_eq!(iq.conj(), -&iq);
        let r = Scalar::from_ratio(3, 2);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn specialization() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(q().specialize(&half).unwrap(), Complex::new(BigRational::new(1.into(), 4.into()), BigRational::zero()));
        let pole = &one() / &(&one() - &q());
        assert!(matches!(pole.specialize(&BigRational::one()), Err(Error::Pole { .. })));
        let x = &(&one() - &(&q() * &q())) / &(&one() - &q());
        assert_eq!(x.specialize(&BigRational::one()).unwrap(), coeff_int(2));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let x = &Scalar::from_int(3) / &(&Scalar::from_int(2) * &(&one() + &q()));
        assert!(x.denom().coeffs().last().unwrap().is_one());
    }

    #[test]
    fn rendering() {
        assert_eq!(q().render(), "q");
        assert_eq!((-&q().inv().unwrap()).render(), "-q^-1");
        assert_eq!((&q() - &q().inv().unwrap()).render(), "-q^-1+q");
        assert_eq!((&Scalar::i() * &q()).render(), "i*q");
        assert_eq!(Scalar::s().render(), "s");
        let x = &(-&q()) / &(&one() + &(&q() * &q()));
        assert_eq!(x.render(), "(1+q^2)^-1*(-q)");
        let c = Scalar::from_coeff(Complex::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into())));
        assert_eq!(c.render(), "(1/2+3*i)");
    }
}
