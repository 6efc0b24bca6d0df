use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::RationalPolynomial;
use super::rational::Rational;
use super::AlgebraError;

/// Dense square matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "row of length {} in a {}x{} matrix",
                    r.len(),
                    n,
                    n
                )));
            }
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.n {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Principal submatrix on the given (strictly increasing) index set.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]).clone())
    }

    /// `x I - M`.
    pub fn lambda_shift(&self, x: &Rational) -> Self {
        let mut m = self.scale(&-Rational::one());
        for i in 0..self.n {
            let v = m.get(i, i) + x;
            m.set(i, i, v);
        }
        m
    }

    /// Clears denominators row by row; returns the integer matrix and the
    /// product of the row scales (`det(self) = det(int) / scale_product`).
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let rows = (0..self.n)
            .map(|i| {
                let mut l = BigInt::one();
                for j in 0..self.n {
                    l = l.lcm(self.get(i, j).denom());
                }
                scale_product *= &l;
                (0..self.n)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&l / e.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, scale_product)
    }

    /// Uniform scaling `s` with `s * self` integral, plus that integer matrix.
    pub(crate) fn integer_uniform(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut s = BigInt::one();
        for e in &self.entries {
            s = s.lcm(e.denom());
        }
        let rows = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&s / e.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, s)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            write!(f, "  [")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Bareiss fraction-free elimination on the
/// denominator-cleared integer matrix. The empty matrix has determinant 1.
pub fn fraction_free_det(m: &RationalMatrix) -> Rational {
    let n = m.dim();
    if n == 0 {
        return Rational::one();
    }
    let (mut a, scale) = m.integer_rows();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if sign < 0 {
        det = -det;
    }
    Rational::new(det, scale)
}

/// Above this dimension the trace recursion's dense big-integer products
/// start losing badly to the prime-image route.
const PRIME_IMAGE_CUTOFF: usize = 12;

/// Exact characteristic polynomial `det(xI - M)`, monic of degree `dim`.
///
/// Small matrices run the Faddeev-LeVerrier trace recursion on the
/// denominator-cleared integer matrix (every division in the recursion is
/// exact over the integers); larger ones are reconstructed from word-size
/// prime images with a rigorous coefficient bound. Both routes are exact and
/// are tested against each other. The 0x0 matrix yields the constant
/// polynomial 1.
pub fn char_poly(m: &RationalMatrix) -> RationalPolynomial {
    if m.dim() <= PRIME_IMAGE_CUTOFF {
        char_poly_leverrier(m)
    } else {
        super::modular::char_poly_via_primes(m)
    }
}

fn char_poly_leverrier(m: &RationalMatrix) -> RationalPolynomial {
    let n = m.dim();
    if n == 0 {
        return RationalPolynomial::one();
    }
    let (a, s) = m.integer_uniform();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // B starts as the identity; A_k = a * B_{k-1}.
    let mut b: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for k in 1..=n {
        let mut ak = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if b[l][j].is_zero() {
                        continue;
                    }
                    let t = &a[i][l] * &b[l][j];
                    ak[i][j] += t;
                }
            }
        }
        let mut tr = BigInt::zero();
        for (i, row) in ak.iter().enumerate() {
            tr += &row[i];
        }
        let (c, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "trace recursion division must be exact");
        for (i, row) in ak.iter_mut().enumerate() {
            row[i] += &c;
        }
        coeffs[n - k] = c;
        b = ak;
    }
    // det(xI - M) = det(sxI - sM) / s^n: coefficient k picks up s^(k-n).
    let mut spow = BigInt::one();
    let rat_coeffs = (0..=n)
        .rev()
        .map(|k| {
            let c = Rational::new(coeffs[k].clone(), spow.clone());
            if k > 0 {
                spow *= &s;
            }
            c
        })
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    RationalPolynomial::from_coeffs(rat_coeffs)
}

/// Schur complement onto the kept (strictly increasing) index set:
/// `A - B D^{-1} C` after partitioning by kept/eliminated indices.
pub fn schur_complement(m: &RationalMatrix, keep: &[usize]) -> Result<RationalMatrix, AlgebraError> {
    let n = m.dim();
    for w in keep.windows(2) {
        if w[0] >= w[1] {
            return Err(AlgebraError::DimensionMismatch(
                "kept indices must be strictly increasing".into(),
            ));
        }
    }
    if keep.iter().any(|&i| i >= n) {
        return Err(AlgebraError::DimensionMismatch("kept index out of range".into()));
    }
    let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let k = keep.len();
    let e = elim.len();
    if e == 0 {
        return Ok(m.clone());
    }
    // Solve D X = C for X (C is e x k), Gaussian elimination with pivoting.
    let mut d: Vec<Vec<Rational>> = elim
        .iter()
        .map(|&i| elim.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    let mut x: Vec<Vec<Rational>> = elim
        .iter()
        .map(|&i| keep.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    for col in 0..e {
        let pivot = (col..e).find(|&r| !d[r][col].is_zero()).ok_or(AlgebraError::SingularEliminatedBlock)?;
        d.swap(col, pivot);
        x.swap(col, pivot);
        let p = d[col][col].clone();
        for j in 0..e {
            d[col][j] /= &p;
        }
        for j in 0..k {
            x[col][j] /= &p;
        }
        for r in 0..e {
            if r == col || d[r][col].is_zero() {
                continue;
            }
            let f = d[r][col].clone();
            for j in 0..e {
                let t = &f * &d[col][j];
                d[r][j] -= t;
            }
            for j in 0..k {
                let t = &f * &x[col][j];
                x[r][j] -= t;
            }
        }
    }
    let mut s = RationalMatrix::from_fn(k, |i, j| m.get(keep[i], keep[j]).clone());
    for i in 0..k {
        for j in 0..k {
            let mut acc = s.get(i, j).clone();
            for (r, &ei) in elim.iter().enumerate() {
                let b = m.get(keep[i], ei);
                if !b.is_zero() {
                    acc -= b * &x[r][j];
                }
            }
            s.set(i, j, acc);
        }
    }
    Ok(s)
}

/// Determinants of the leading principal blocks, sizes 1..=dim, each computed
/// independently by `fraction_free_det`.
pub fn leading_principal_minors(m: &RationalMatrix) -> Vec<Rational> {
    (1..=m.dim())
        .map(|k| {
            let keep: Vec<usize> = (0..k).collect();
            fraction_free_det(&m.principal_submatrix(&keep))
        })
        .collect()
}
