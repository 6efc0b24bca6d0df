use num_traits::{Signed, Zero};

use super::poly::RationalPolynomial;
use super::rational::Rational;
use super::AlgebraError;

/// Sturm chain of the square-free part of a polynomial.
///
/// The head is the square-free part of the input (primitive, positive leading
/// coefficient), the second entry is its derivative, and every later entry is
/// a positive rational multiple of the negated remainder of the previous two,
/// rescaled to a primitive integer polynomial. Positive rescaling leaves every
/// sign-variation count unchanged, so root counts are unaffected. For
/// square-free input the chain always terminates in a nonzero constant.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RationalPolynomial>,
}

impl SturmChain {
    pub fn new(p: &RationalPolynomial) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let head = p.squarefree_part();
        let mut chain = vec![head.clone()];
        let mut prev = head;
        let mut cur = chain[0].derivative();
        while !cur.is_zero() {
            cur = cur.primitive_part();
            let (_, r) = prev.divrem(&cur);
            chain.push(cur.clone());
            prev = std::mem::replace(&mut cur, r.neg());
        }
        Ok(Self { chain })
    }

    pub fn polynomials(&self) -> &[RationalPolynomial] {
        &self.chain
    }

    /// Number of sign changes in the chain evaluated at `x`, zeros skipped.
    pub fn variations_at(&self, x: &Rational) -> usize {
        let signs = self.chain.iter().map(|p| p.eval(x)).filter(|v| !v.is_zero());
        let mut variations = 0;
        let mut last: Option<bool> = None;
        for v in signs {
            let neg = v.is_negative();
            if let Some(prev) = last {
                if prev != neg {
                    variations += 1;
                }
            }
            last = Some(neg);
        }
        variations
    }

    /// `1 + max |c_i| / |lead|` over the chain head: every real root of the
    /// head lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let head = &self.chain[0];
        let lead = head.leading();
        let mut max = Rational::zero();
        let deg = head.degree() as usize;
        for k in 0..deg {
            let a = head.coeff(k).abs();
            if a > max {
                max = a;
            }
        }
        Rational::from(num_bigint::BigInt::from(1)) + max / lead.abs()
    }
}

/// Multiplicity of 0 as a root of `p`; errors on the zero polynomial.
pub fn zero_multiplicity(p: &RationalPolynomial) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(p.zero_root_multiplicity())
}

/// Number of distinct real roots of `p` strictly in `(0, oo)`.
///
/// The power of `x` dividing `p` is stripped first, so the chain head is
/// nonzero at 0 and the count is the plain Sturm difference `V(0) - V(B)`
/// with `B` the Cauchy bound.
pub fn count_roots_positive(p: &RationalPolynomial) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let k = p.zero_root_multiplicity();
    let reduced = RationalPolynomial::from_coeffs(p.coeffs()[k..].to_vec());
    if reduced.degree() <= 0 {
        return Ok(0);
    }
    let chain = SturmChain::new(&reduced)?;
    let bound = chain.root_bound();
    Ok(chain.variations_at(&Rational::zero()) - chain.variations_at(&bound))
}

/// Number of distinct real roots of `p` strictly in `(a, oo)`.
pub fn count_roots_above(p: &RationalPolynomial, a: &Rational) -> Result<usize, AlgebraError> {
    count_roots_positive(&p.shifted(a))
}
