//! Integer Laurent polynomials in the quantum parameter v.
//!
//! Coefficients are arbitrary-precision integers, stored sparsely by
//! exponent. The invariant is that no zero coefficient is ever stored, so
//! equality is structural. Quantum integers, factorials and the balanced
//! Gaussian binomials live here; all of them are bar-symmetric Laurent
//! polynomials, never fractions.
//!
//! Text form used in every artifact: `v^2 - 1 + 3*v^-4` (descending
//! exponents). The parser accepts the same grammar.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// c * v^k, normalizing away c = 0.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// v^k.
    pub fn var_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Top exponent, None for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Bottom exponent, None for zero.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(BigInt::zero)
    }

    pub fn trailing_coeff(&self) -> BigInt {
        self.low_degree()
            .map(|d| self.coeff(d))
            .unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiply by v^k.
    pub fn shifted(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution v -> v^-1.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e).map_or(false, |d| d == c))
    }

    /// Value at v = 1 (the classical limit of an integral element).
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Positive gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Exact division, None if the divisor does not divide self.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Shift both to ordinary polynomials and do exact long division.
        let sl = self.low_degree().unwrap();
        let dl = d.low_degree().unwrap();
        let mut rem = self.shifted(-sl);
        let div = d.shifted(-dl);
        let ddeg = div.degree().unwrap();
        let dlead = div.leading_coeff();
        let mut q = LaurentPoly::zero();
        while !rem.is_zero() {
            let rdeg = rem.degree().unwrap();
            if rdeg < ddeg {
                return None;
            }
            let rlead = rem.leading_coeff();
            let (quot, r) = rlead.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            let t = LaurentPoly::monomial(quot, rdeg - ddeg);
            rem -= &t * &div;
            q += t;
        }
        Some(q.shifted(sl - dl))
    }

    /// Gcd up to units v^k and sign: returned with lowest exponent 0,
    /// positive leading coefficient, and full integer content.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        fn normalize(p: &LaurentPoly) -> LaurentPoly {
            let l = p.low_degree().unwrap();
            let mut q = p.shifted(-l);
            if q.leading_coeff().is_negative() {
                q = -&q;
            }
            q
        }
        if self.is_zero() {
            return if other.is_zero() {
                LaurentPoly::zero()
            } else {
                normalize(other)
            };
        }
        if other.is_zero() {
            return normalize(self);
        }
        let content = self.content().gcd(&other.content());
        let mut a = primitive_part(&normalize(self));
        let mut b = primitive_part(&normalize(other));
        // primitive polynomial remainder sequence
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_zero() {
                LaurentPoly::zero()
            } else {
                primitive_part(&normalize(&r))
            };
        }
        let mut g = a;
        if g.leading_coeff().is_negative() {
            g = -&g;
        }
        g.mul_scalar(&content)
    }

    /// Quantum integer [n] = v^{n-1} + v^{n-3} + ... + v^{1-n} for n >= 0.
    pub fn quantum_integer(n: u32) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        let n = n as i64;
        let mut k = n - 1;
        while k >= 1 - n {
            p.add_term(k, BigInt::one());
            k -= 2;
        }
        p
    }

    /// Quantum factorial [n]! = [1][2]...[n].
    pub fn quantum_factorial(n: u32) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for k in 2..=n {
            p = &p * &Self::quantum_integer(k);
        }
        p
    }

    /// Balanced Gaussian binomial [n over k] = [n]! / ([k]![n-k]!).
    ///
    /// Always an exact, bar-symmetric Laurent polynomial with non-negative
    /// integer coefficients. Requires 0 <= k <= n.
    pub fn quantum_binomial(n: u32, k: i64) -> Result<LaurentPoly> {
        if k < 0 || k as u32 > n {
            return Err(Error::OutOfRange(format!("binomial ({n} over {k})")));
        }
        let k = k as u32;
        let k = k.min(n - k);
        // [n][n-1]...[n-k+1] / [k]!
        let mut num = LaurentPoly::one();
        for j in 0..k {
            num = &num * &Self::quantum_integer(n - j);
        }
        num.exact_div(&Self::quantum_factorial(k))
            .ok_or_else(|| Error::InvariantViolation("gaussian binomial division".into()))
    }

    /// Render in the artifact text form.
    pub fn to_text(&self) -> String {
        format!("{self}")
    }

    /// Parse the artifact text form, e.g. `v^2 - 1 + 3*v^-4`.
    pub fn parse(text: &str) -> Result<LaurentPoly> {
        let s: Vec<char> = text.chars().collect();
        let mut pos = 0usize;
        let mut out = LaurentPoly::zero();
        skip_ws(&s, &mut pos);
        if pos == s.len() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        let mut first = true;
        while pos < s.len() {
            let mut sign = BigInt::one();
            skip_ws(&s, &mut pos);
            if pos < s.len() && (s[pos] == '+' || s[pos] == '-') {
                if s[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&s, &mut pos);
            } else if !first {
                return Err(Error::Parse(format!("expected + or - at {pos} in '{text}'")));
            }
            first = false;
            // coefficient digits (optional if a v follows)
            let start = pos;
            while pos < s.len() && s[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if pos > start {
                s[start..pos].iter().collect::<String>().parse().unwrap()
            } else {
                BigInt::one()
            };
            skip_ws(&s, &mut pos);
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
                skip_ws(&s, &mut pos);
            }
            let mut exp = 0i64;
            if pos < s.len() && s[pos] == 'v' {
                pos += 1;
                exp = 1;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    let mut esign = 1i64;
                    if pos < s.len() && s[pos] == '-' {
                        esign = -1;
                        pos += 1;
                    }
                    let estart = pos;
                    while pos < s.len() && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == estart {
                        return Err(Error::Parse(format!("missing exponent in '{text}'")));
                    }
                    let e: i64 = s[estart..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::Parse(format!("exponent overflow in '{text}'")))?;
                    exp = esign * e;
                }
            } else if pos == start {
                return Err(Error::Parse(format!("expected term at {pos} in '{text}'")));
            }
            out.add_term(exp, sign * coeff);
            skip_ws(&s, &mut pos);
        }
        return Ok(out);

        fn skip_ws(s: &[char], pos: &mut usize) {
            while *pos < s.len() && s[*pos].is_whitespace() {
                *pos += 1;
            }
        }
    }
}

fn primitive_part(p: &LaurentPoly) -> LaurentPoly {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.exact_div(&LaurentPoly::constant(c)).unwrap()
}

/// Pseudo-remainder of two ordinary polynomials (lowest exponent 0).
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let db = b.degree().unwrap();
    let lb = b.leading_coeff();
    let mut r = a.clone();
    loop {
        let dr = match r.degree() {
            Some(d) if d >= db => d,
            _ => return r,
        };
        // r <- lb*r - lead(r) v^{dr-db} b  kills the top term exactly
        let lead = r.leading_coeff();
        r = &r.mul_scalar(&lb) - &(b.shifted(dr - db).mul_scalar(&lead));
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            if e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !unit_coeff {
                    write!(f, "{abs}*")?;
                }
                if e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in rhs.terms.iter() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in rhs.terms.iter() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in self.terms.iter() {
            for (&e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

// Serialize as the text form so artifacts stay human-readable.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_text())
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        LaurentPoly::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_laurent(rng: &mut impl Rng, max_terms: usize, max_exp: i64) -> LaurentPoly {
        let nterms = rng.gen_range(0..=max_terms);
        let mut p = LaurentPoly::zero();
        for _ in 0..nterms {
            let e = rng.gen_range(-max_exp..=max_exp);
            let c = rng.gen_range(-9i64..=9);
            p.add_term(e, c.into());
        }
        p
    }

    #[test]
    fn quantum_integers_and_binomials() {
        assert_eq!(LaurentPoly::quantum_integer(2).to_text(), "v + v^-1");
        assert_eq!(
            LaurentPoly::quantum_binomial(2, 1).unwrap().to_text(),
            "v + v^-1"
        );
        // frozen expected value, derived by expanding [4][3]/([2][1])
        assert_eq!(
            LaurentPoly::quantum_binomial(4, 2).unwrap().to_text(),
            "v^4 + v^2 + 2 + v^-2 + v^-4"
        );
        assert!(LaurentPoly::quantum_binomial(2, 3).is_err());
        assert!(LaurentPoly::quantum_binomial(2, -1).is_err());
    }

    /// Independent oracle: the balanced Pascal recursion
    /// [n over k] = v^k [n-1 over k] + v^{k-n} [n-1 over k-1].
    #[test]
    fn binomials_match_pascal_recursion() {
        for n in 1..=12u32 {
            for k in 1..n as i64 {
                let lhs = LaurentPoly::quantum_binomial(n, k).unwrap();
                let a = LaurentPoly::quantum_binomial(n - 1, k).unwrap().shifted(k);
                let b = LaurentPoly::quantum_binomial(n - 1, k - 1)
                    .unwrap()
                    .shifted(k - n as i64);
                assert_eq!(lhs, &a + &b, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn binomials_are_bar_symmetric_and_classical() {
        for n in 0..=12u32 {
            for k in 0..=n as i64 {
                let b = LaurentPoly::quantum_binomial(n, k).unwrap();
                assert!(b.is_bar_symmetric());
                // classical binomial
                let mut c = BigInt::one();
                for j in 0..k {
                    c = c * (n as i64 - j) / (j + 1);
                }
                assert_eq!(b.eval_one(), c, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bar_is_involutive_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..200 {
            let p = random_laurent(&mut rng, 8, 10);
            assert_eq!(p.bar().bar(), p);
        }
    }

    #[test]
    fn exact_division_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = random_laurent(&mut rng, 6, 8);
            let mut g = random_laurent(&mut rng, 6, 8);
            if g.is_zero() {
                g = LaurentPoly::one();
            }
            let prod = &f * &g;
            assert_eq!(prod.exact_div(&g).unwrap(), f);
        }
    }

    #[test]
    fn gcd_divides_both() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_laurent(&mut rng, 5, 6);
            let b = random_laurent(&mut rng, 5, 6);
            let g = a.gcd(&b);
            if g.is_zero() {
                assert!(a.is_zero() && b.is_zero());
                continue;
            }
            assert!(a.exact_div(&g).is_some());
            assert!(b.exact_div(&g).is_some());
        }
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let p = random_laurent(&mut rng, 8, 12);
            let s = p.to_text();
            assert_eq!(LaurentPoly::parse(&s).unwrap(), p, "text: {s}");
        }
        assert_eq!(
            LaurentPoly::parse("v^2 - 1 + 3*v^-4").unwrap().to_text(),
            "v^2 - 1 + 3*v^-4"
        );
    }
}
