//! Exact Schur complements of caterpillar quotient matrices at the zero
//! eigenvalue, restricted to the spine-edge coordinates.
//!
//! Two families are covered. A *defect form* is the spine-edge Schur
//! complement for the caterpillar with single leaves at both spine ends and
//! at one interior spine vertex `i`; its determinant has the closed form
//!
//! ```text
//! det = (-1)^(m+1) * (8i^2 - 8im - 8i + 13m + 20) / (81 * 2^(m-2))
//! ```
//!
//! An *endpoint form* is the spine-edge Schur complement for the caterpillar
//! with `a` leaves at one spine end, `b` at the other, and none in between;
//! it is tridiagonal and its leading principal minors have closed forms in
//! `rho = 2(3-a)/(a+1)` and `sigma = 2(b-3)/(b+1)`.
//!
//! Both matrices are constructed through the generic [`schur_complement`]
//! elimination, never from a hand-written stencil; the closed forms are
//! companions that the construction must reproduce, which the tests and the
//! `schur-check` command verify over exact arithmetic.

use num_traits::{One, Signed};

use crate::algebra::{rat, schur_complement, RationalMatrix};
use crate::algebra::{leading_principal_minors, Rational};
use crate::quotient::build_quotient;
use crate::tree::{defect_param, endpoint_param, TreeError};

/// Spine-edge Schur form of the caterpillar with single leaves at the two
/// spine ends and at interior position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectSchur {
    m: usize,
    i: usize,
}

impl DefectSchur {
    /// Requires `m >= 4` and an interior position `2 <= i <= m-1`.
    pub fn new(m: usize, i: usize) -> Result<Self, TreeError> {
        if m < 4 || i < 2 || i > m - 1 {
            return Err(TreeError::InvalidParameter(format!(
                "defect form needs m >= 4 and 2 <= i <= m-1, got m={m}, i={i}"
            )));
        }
        Ok(DefectSchur { m, i })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn i(&self) -> usize {
        self.i
    }

    /// The quadratic `8i^2 - 8im - 8i + 13m + 20` controlling the
    /// determinant sign. Symmetric under `i -> m+1-i`.
    pub fn b_value(&self) -> Rational {
        let m = self.m as i64;
        let i = self.i as i64;
        rat(8 * i * i - 8 * i * m - 8 * i + 13 * m + 20, 1)
    }

    /// Closed-form determinant `(-1)^(m+1) * B / (81 * 2^(m-2))`.
    pub fn det_closed(&self) -> Rational {
        let sign = if self.m % 2 == 0 { -Rational::one() } else { Rational::one() };
        let denom = rat(81, 1) * rat(2, 1).pow((self.m - 2) as i32);
        sign * self.b_value() / denom
    }

    /// The `(m-1) x (m-1)` symmetric spine-edge matrix, eliminated through
    /// the generic Schur complement of the quotient matrix.
    pub fn matrix(&self) -> RationalMatrix {
        let p = defect_param(self.m, self.i).expect("validated in new");
        let q = build_quotient(&p).expect("defect parameter has a spine");
        let keep: Vec<usize> = (0..self.m - 1).collect();
        schur_complement(q.matrix(), &keep).expect("pendant block is invertible")
    }

    /// True when the determinant sign already rules out negative
    /// definiteness, forcing a nonnegative top eigenvalue of the full
    /// edge-index matrix (strict positivity when `b_value < 0`).
    pub fn forces_nonnegative_top(&self) -> bool {
        !self.b_value().is_positive()
    }
}

/// Spine-edge Schur form of the caterpillar with `a` leaves at one end of
/// the spine, `b` at the other, and bare interior vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointSchur {
    m: usize,
    a: u32,
    b: u32,
}

impl EndpointSchur {
    /// Requires `m >= 2` and `a, b >= 1`.
    pub fn new(m: usize, a: u32, b: u32) -> Result<Self, TreeError> {
        if m < 2 || a == 0 || b == 0 {
            return Err(TreeError::InvalidParameter(format!(
                "endpoint form needs m >= 2 and a, b >= 1, got m={m}, a={a}, b={b}"
            )));
        }
        Ok(EndpointSchur { m, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Matrix dimension `n = m - 1`.
    pub fn n(&self) -> usize {
        self.m - 1
    }

    /// `rho = 2(3-a)/(a+1)`, the left-endpoint correction.
    pub fn rho(&self) -> Rational {
        let a = self.a as i64;
        rat(2 * (3 - a), a + 1)
    }

    /// `sigma = 2(b-3)/(b+1)`, the right-endpoint correction.
    pub fn sigma(&self) -> Rational {
        let b = self.b as i64;
        rat(2 * (b - 3), b + 1)
    }

    /// Diagonal entry `-(x+9) / (6(x+1))` adjacent to an endpoint with `x`
    /// leaves.
    pub fn endpoint_diag(x: u32) -> Rational {
        let x = x as i64;
        rat(-(x + 9), 6 * (x + 1))
    }

    /// The `n x n` tridiagonal spine-edge matrix, eliminated through the
    /// generic Schur complement of the quotient matrix.
    pub fn matrix(&self) -> RationalMatrix {
        let p = endpoint_param(self.m, self.a, self.b).expect("validated in new");
        let q = build_quotient(&p).expect("endpoint parameter has a spine");
        let keep: Vec<usize> = (0..self.m - 1).collect();
        schur_complement(q.matrix(), &keep).expect("pendant block is invertible")
    }

    /// Closed-form leading principal minors `P_1 .. P_n`:
    /// `P_k = (-1)^k 2^(-k) r_k` with `r_k = 1 + (k/3) rho` for `k < n`, and
    /// `P_n = (-1)^n 2^(-n) t_n` with
    /// `t_n = (rho - sigma (1 + ((n-1)/3) rho)) / 3`.
    pub fn minors_closed(&self) -> Vec<Rational> {
        let n = self.n();
        let rho = self.rho();
        let sigma = self.sigma();
        let mut out = Vec::with_capacity(n);
        for k in 1..n {
            let r_k = Rational::one() + rat(k as i64, 3) * rho.clone();
            out.push(sign_pow(k) * half_pow(k) * r_k);
        }
        let r_prev = Rational::one() + rat(n as i64 - 1, 3) * rho.clone();
        let t_n = (rho - sigma * r_prev) / rat(3, 1);
        out.push(sign_pow(n) * half_pow(n) * t_n);
        out
    }

    /// True when every closed-form minor has the strict alternating sign
    /// `(-1)^k`, i.e. the form is negative definite.
    pub fn is_negative_definite(&self) -> bool {
        self.minors_closed()
            .iter()
            .enumerate()
            .all(|(idx, p)| if idx % 2 == 0 { p.is_negative() } else { p.is_positive() })
    }
}

fn sign_pow(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn half_pow(k: usize) -> Rational {
    rat(1, 2).pow(k as i32)
}

/// Exact leading principal minors of the constructed endpoint matrix, the
/// oracle counterpart of [`EndpointSchur::minors_closed`].
pub fn endpoint_minors_oracle(form: &EndpointSchur) -> Vec<Rational> {
    leading_principal_minors(&form.matrix())
}
