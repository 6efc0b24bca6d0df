use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored in ascending degree order with a nonzero leading
/// coefficient; the zero polynomial is the empty coefficient list and reports
/// degree `-1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `x^deg`.
    pub fn monomial(deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = Rational::one();
        Self { coeffs }
    }

    /// `x + c` and friends: ascending coefficients as a convenience literal.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(BigInt::from(c))).collect())
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from(BigInt::from(k)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for k in (ddeg..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / &dlead;
            let shift = k - ddeg;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &q * d;
                rem[shift + j] -= t;
            }
            quot[shift] = q;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd via a primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b.monic();
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Divides by the leading coefficient; identity on the zero polynomial.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        self.mul_scalar(&(Rational::one() / lead))
    }

    /// The square-free part `p / gcd(p, p')`, normalized to be primitive with
    /// a positive leading coefficient. Same distinct roots as `p`.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "square-free part of the zero polynomial");
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        let q = self.div_exact(&g);
        let mut p = q.primitive_part();
        if p.leading().is_negative() {
            p = p.neg();
        }
        p
    }

    /// Multiplicity of 0 as a root, i.e. the number of trailing zero
    /// coefficients. Undefined (panics) on the zero polynomial.
    pub fn zero_root_multiplicity(&self) -> usize {
        assert!(!self.is_zero(), "zero multiplicity of the zero polynomial");
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `p(x + c)` via Horner expansion.
    pub fn shifted(&self, c: &Rational) -> Self {
        let shift = Self::from_coeffs(vec![c.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::constant(coeff.clone()));
        }
        acc
    }

    /// Rescales to an integer-coefficient polynomial with content 1, keeping
    /// the sign: returns `q` with `self = s * q` for some rational `s > 0`.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ints, _) = self.to_primitive_integer();
        Self::from_coeffs(ints.into_iter().map(Rational::from).collect())
    }

    /// Integer image of `primitive_part`, plus the positive rational scale
    /// with `self = scale * primitive`.
    pub fn to_primitive_integer(&self) -> (Vec<BigInt>, Rational) {
        assert!(!self.is_zero(), "primitive part of the zero polynomial");
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &content).collect();
        (prim, Rational::new(content, den_lcm))
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = if c.is_negative() { -c } else { c.clone() };
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}
