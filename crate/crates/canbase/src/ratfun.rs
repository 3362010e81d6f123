//! Exact rational functions in v over the integers.
//!
//! A `RationalCoeff` is a reduced fraction of integer Laurent polynomials.
//! The canonical form makes equality structural: numerator and denominator
//! share no polynomial factor and no integer content, the denominator is an
//! ordinary polynomial (lowest exponent 0) with positive leading
//! coefficient, and any v-shift is carried by the numerator.
//!
//! The second half of the module is the v^-1-adic toolkit: order of
//! vanishing at v = infinity, exact power-series expansion with integer
//! coefficients, membership in v^-1 Z[[v^-1]], and the extraction of the
//! bar-symmetric polynomial part. Everything is decided exactly; there is no
//! floating point and no truncation that is not re-verified by exact
//! arithmetic afterwards.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalCoeff {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalCoeff {
    pub fn zero() -> Self {
        RationalCoeff {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalCoeff {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalCoeff {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn v_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::var_pow(k))
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// Build and reduce a fraction. Errors on a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::OutOfRange("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let shift = den.low_degree().unwrap();
        if shift != 0 {
            den = den.shifted(-shift);
            num = num.shifted(-shift);
        }
        if den.leading_coeff().is_negative() {
            den = -&den;
            num = -&num;
        }
        RationalCoeff { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::OutOfRange("inverse of zero".into()));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::OutOfRange("division by zero".into()));
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// The bar involution v -> v^-1, renormalized.
    pub fn bar(&self) -> Self {
        Self::reduced(self.num.bar(), self.den.bar())
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.bar() == *self
    }

    /// Order of vanishing at v = infinity: deg(den) - deg(num).
    /// None encodes +infinity (the zero function).
    pub fn v_infinity_valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.den.degree().unwrap() - self.num.degree().unwrap())
    }

    pub fn is_regular_at_infinity(&self) -> bool {
        self.v_infinity_valuation().map_or(true, |v| v >= 0)
    }

    /// Does the full v^-1-adic expansion have integer coefficients?
    ///
    /// In reduced form this is exactly the condition that the denominator's
    /// leading coefficient is 1 (if a rational function is an integer power
    /// series in v^-1, its reduced denominator is monic at the top).
    pub fn has_integral_expansion(&self) -> bool {
        self.is_zero() || self.den.leading_coeff().is_one()
    }

    /// Membership in v^-1 Z[[v^-1]].
    pub fn is_in_vinv_lattice(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.v_infinity_valuation().unwrap() >= 1 && self.has_integral_expansion()
    }

    /// Membership in 1 + v^-1 Z[[v^-1]].
    pub fn is_in_one_plus_vinv(&self) -> bool {
        (self - &RationalCoeff::one()).is_in_vinv_lattice()
    }

    /// Expansion coefficients a_k of f = sum_{k <= K} a_k v^k around
    /// v = infinity, for all k with down_to <= k <= K. Returned as
    /// (exponent, coefficient) pairs in descending exponent order.
    pub fn expansion_high_coeffs(&self, down_to: i64) -> Result<Vec<(i64, BigInt)>> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        if !self.has_integral_expansion() {
            return Err(Error::NotExpandable(format!("{self}")));
        }
        let nd = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let top = nd - dd; // = -valuation
        if top < down_to {
            return Ok(Vec::new());
        }
        let order = (top - down_to) as usize;
        // u-coefficients: num_u[j] = coeff of v^{nd-j}, den_u[j] likewise.
        let num_u = |j: i64| self.num.coeff(nd - j);
        let den_u = |j: i64| self.den.coeff(dd - j);
        // invert the denominator as a power series in u (den_u[0] = 1)
        let mut inv: Vec<BigInt> = Vec::with_capacity(order + 1);
        inv.push(BigInt::one());
        for t in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=t {
                acc += den_u(j as i64) * &inv[t - j];
            }
            inv.push(-acc);
        }
        let mut out = Vec::with_capacity(order + 1);
        for t in 0..=order {
            let mut acc = BigInt::zero();
            for j in 0..=t {
                acc += num_u(j as i64) * &inv[t - j];
            }
            out.push((top - t as i64, acc));
        }
        Ok(out)
    }

    /// The unique bar-symmetric Laurent polynomial c with f - c in
    /// v^-1 Z[[v^-1]]: mirror the non-negative part of the expansion.
    ///
    /// The result is re-verified by exact arithmetic; a fraction whose
    /// expansion is not integral is rejected with `NotExpandable`.
    pub fn symmetric_polynomial_part(&self) -> Result<LaurentPoly> {
        if self.is_zero() || self.v_infinity_valuation().unwrap() >= 1 {
            // nothing at non-negative degrees; still insist on integrality
            if !self.has_integral_expansion() {
                return Err(Error::NotExpandable(format!("{self}")));
            }
            return Ok(LaurentPoly::zero());
        }
        let coeffs = self.expansion_high_coeffs(0)?;
        let mut c = LaurentPoly::zero();
        for (k, a) in coeffs {
            debug_assert!(k >= 0);
            c.add_term(k, a.clone());
            if k > 0 {
                c.add_term(-k, a);
            }
        }
        let residue = self - &Self::from_laurent(c.clone());
        if !residue.is_in_vinv_lattice() {
            return Err(Error::NotExpandable(format!(
                "residue {residue} escapes v^-1 Z[[v^-1]]"
            )));
        }
        Ok(c)
    }

    /// Exact conversion to a Laurent polynomial; `NotPolynomial` signals an
    /// element outside the integral form.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        self.num
            .exact_div(&self.den)
            .ok_or_else(|| Error::NotPolynomial(format!("{self}")))
    }

    /// Value at v = 1 via the integral form (the classical limit).
    pub fn classical_value(&self) -> Result<BigInt> {
        Ok(self.to_laurent()?.eval_one())
    }

    /// Value at v = infinity for a function regular there: the constant term
    /// of the v^-1 expansion. Errors if there is a pole or the value is not
    /// an integer.
    pub fn value_at_infinity(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Ok(BigInt::zero());
        }
        let val = self.v_infinity_valuation().unwrap();
        if val < 0 {
            return Err(Error::NotInLattice(format!("pole at infinity: {self}")));
        }
        if val > 0 {
            return Ok(BigInt::zero());
        }
        let (n, d) = (self.num.leading_coeff(), self.den.leading_coeff());
        let (q, r) = num_integer::Integer::div_rem(&n, &d);
        if !r.is_zero() {
            return Err(Error::NotInLattice(format!(
                "non-integer value at infinity: {self}"
            )));
        }
        Ok(q)
    }

    /// Parse "num / den" or a plain polynomial.
    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once('/') {
            None => Ok(Self::from_laurent(LaurentPoly::parse(text)?)),
            Some((n, d)) => {
                Self::new(LaurentPoly::parse(n.trim())?, LaurentPoly::parse(d.trim())?)
            }
        }
    }

    pub fn to_text(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.den.num_terms() == 1 || self.num.num_terms() <= 1 {
            write!(f, "{} / {}", self.num, self.den)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalCoeff {
    type Output = RationalCoeff;
    fn add(self, rhs: &RationalCoeff) -> RationalCoeff {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalCoeff::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalCoeff::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalCoeff {
    type Output = RationalCoeff;
    fn sub(self, rhs: &RationalCoeff) -> RationalCoeff {
        self + &(-rhs)
    }
}

impl Neg for &RationalCoeff {
    type Output = RationalCoeff;
    fn neg(self) -> RationalCoeff {
        RationalCoeff {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalCoeff {
    type Output = RationalCoeff;
    fn mul(self, rhs: &RationalCoeff) -> RationalCoeff {
        if self.is_zero() || rhs.is_zero() {
            return RationalCoeff::zero();
        }
        // cross-reduce before multiplying to keep degrees down
        let a = RationalCoeff::reduced(self.num.clone(), rhs.den.clone());
        let b = RationalCoeff::reduced(rhs.num.clone(), self.den.clone());
        RationalCoeff {
            num: &a.num * &b.num,
            den: &a.den * &b.den,
        }
    }
}

impl serde::Serialize for RationalCoeff {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_text())
    }
}

impl<'de> serde::Deserialize<'de> for RationalCoeff {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        RationalCoeff::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// (1 - v^-2)^-1 as a reduced fraction: v^2 / (v^2 - 1).
pub fn one_minus_vinv2_inverse() -> RationalCoeff {
    let den = LaurentPoly::from_terms([(0, BigInt::one()), (-2, -BigInt::one())]);
    RationalCoeff::new(LaurentPoly::one(), den).unwrap()
}
