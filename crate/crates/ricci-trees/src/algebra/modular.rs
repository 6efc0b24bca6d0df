//! Exact integer linear algebra through word-size prime images.
//!
//! The characteristic polynomial of an integer matrix is recovered from its
//! images modulo enough 62-bit primes: a Hadamard-style bound on the
//! coefficients fixes how many primes are needed, so the Chinese-remainder
//! reconstruction is exact, not heuristic. The same machinery yields a
//! verified square-free part for monic integer polynomials (candidate gcds
//! are checked by exact division before being trusted). These routines back
//! the large classification sweeps where big-rational elimination would be
//! orders of magnitude too slow; they are cross-checked against the plain
//! rational implementations in the test suite.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RationalPolynomial;
use super::rational::Rational;

const PRIME_CEILING: u64 = 1 << 62;
const PRIME_FLOOR: u64 = 1 << 61;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p.
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64 (the listed bases decide primality for
/// every 64-bit integer).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn prime_pool() -> &'static Mutex<Vec<u64>> {
    static POOL: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    POOL.get_or_init(|| Mutex::new(Vec::new()))
}

/// The first `count` primes below 2^62, descending.
fn primes(count: usize) -> Vec<u64> {
    let mut pool = prime_pool().lock().expect("prime pool poisoned");
    let mut next = pool.last().map(|&p| p - 2).unwrap_or(PRIME_CEILING - 1);
    while pool.len() < count {
        while !is_prime_u64(next) {
            next -= 2;
        }
        assert!(next > PRIME_FLOOR, "prime pool exhausted its range");
        pool.push(next);
        next -= 2;
    }
    pool[..count].to_vec()
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    r.to_u64().expect("residue fits in u64")
}

/// Characteristic polynomial of `a` modulo `p` (ascending, monic): similarity
/// reduction to Hessenberg form followed by the leading-minor recurrence.
fn char_poly_mod(mut a: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
            continue;
        };
        if r != k + 1 {
            a.swap(r, k + 1);
            for row in a.iter_mut() {
                row.swap(r, k + 1);
            }
        }
        let inv = invmod(a[k + 1][k], p);
        for i in k + 2..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = mulmod(a[i][k], inv, p);
            for j in k..n {
                let t = mulmod(f, a[k + 1][j], p);
                a[i][j] = submod(a[i][j], t, p);
            }
            for row in a.iter_mut() {
                let t = mulmod(f, row[i], p);
                row[k + 1] = addmod(row[k + 1], t, p);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let h = a[k - 1][k - 1];
        let prev = &polys[k - 1];
        let mut t = vec![0u64; k + 1];
        for (i, &c) in prev.iter().enumerate() {
            t[i + 1] = addmod(t[i + 1], c, p);
            t[i] = submod(t[i], mulmod(h, c, p), p);
        }
        let mut prod = 1u64;
        for i in (0..k.saturating_sub(1)).rev() {
            prod = mulmod(prod, a[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let hik = a[i][k - 1];
            if hik == 0 {
                continue;
            }
            let f = mulmod(hik, prod, p);
            for (idx, &c) in polys[i].iter().enumerate() {
                t[idx] = submod(t[idx], mulmod(f, c, p), p);
            }
        }
        polys.push(t);
    }
    polys.pop().expect("at least the constant 1")
}

/// Upper bound on |coefficient| of the characteristic polynomial of an
/// integer matrix: `max_k C(n, k) * prod of the k largest row norms`.
fn char_poly_coeff_bound(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut norms: Vec<BigInt> = rows
        .iter()
        .map(|row| {
            let sq: BigInt = row.iter().map(|v| v * v).sum();
            sq.sqrt() + 1
        })
        .collect();
    norms.sort_by(|a, b| b.cmp(a));
    let mut best = BigInt::one();
    let mut binom = BigInt::one();
    let mut prod = BigInt::one();
    for k in 1..=n {
        binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
        prod *= &norms[k - 1];
        let cand = &binom * &prod;
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Exact characteristic polynomial (ascending, monic) of an integer matrix
/// via prime images and Chinese-remainder reconstruction; the prime count is
/// driven by a rigorous coefficient bound, so the result is exact.
pub(crate) fn char_poly_int(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let bound = char_poly_coeff_bound(rows);
    let bits = bound.bits() as usize;
    let count = (bits + 2).div_ceil(61);
    let ps = primes(count);
    let images: Vec<Vec<u64>> = ps
        .iter()
        .map(|&p| {
            let a: Vec<Vec<u64>> =
                rows.iter().map(|row| row.iter().map(|v| bigint_mod(v, p)).collect()).collect();
            char_poly_mod(a, p)
        })
        .collect();
    (0..=n)
        .map(|k| {
            let residues: Vec<u64> = images.iter().map(|im| im[k]).collect();
            crt_symmetric(&residues, &ps)
        })
        .collect()
}

/// Combines residues into the symmetric range (-P/2, P/2].
fn crt_symmetric(residues: &[u64], ps: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&r, &p) in residues.iter().zip(ps) {
        let p_big = BigInt::from(p);
        let x_mod_p = bigint_mod(&x, p);
        let m_mod_p = bigint_mod(&modulus, p);
        let diff = submod(r, x_mod_p, p);
        let t = mulmod(diff, invmod(m_mod_p, p), p);
        x += &modulus * BigInt::from(t);
        modulus *= p_big;
    }
    let half = &modulus >> 1;
    if x > half {
        x -= &modulus;
    }
    x
}

/// Characteristic polynomial of a rational matrix through the uniform integer
/// scaling: exact, fast for dimensions where big-rational elimination bogs
/// down. Used by `char_poly` above a dimension cutoff.
pub(crate) fn char_poly_via_primes(m: &super::RationalMatrix) -> RationalPolynomial {
    let n = m.dim();
    let (rows, s) = m.integer_uniform();
    let scaled = char_poly_int(&rows);
    let mut spow = BigInt::one();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        coeffs[k] = Rational::new(scaled[k].clone(), spow.clone());
        if k > 0 {
            spow *= &s;
        }
    }
    RationalPolynomial::from_coeffs(coeffs)
}

/// Characteristic polynomial of `s*M` (`s` the minimal uniform denominator
/// scale): integer coefficients, monic, same sign pattern and zero-root
/// multiplicity as the characteristic polynomial of `M` itself since the
/// roots only rescale by `s > 0`.
pub(crate) fn scaled_char_poly(m: &super::RationalMatrix) -> Vec<BigInt> {
    let (rows, _) = m.integer_uniform();
    char_poly_int(&rows)
}

/// Sign changes in an ascending coefficient list, zeros skipped.
pub(crate) fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut variations = 0;
    let mut last: Option<bool> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if let Some(prev) = last {
            if prev != neg {
                variations += 1;
            }
        }
        last = Some(neg);
    }
    variations
}

fn poly_deriv_int(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
}

fn poly_mod(p: &[BigInt], q: u64) -> Vec<u64> {
    let mut v: Vec<u64> = p.iter().map(|c| bigint_mod(c, q)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd of two polynomials over Z_q; returns ascending coefficients.
fn gcd_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        // a mod b
        let lead_inv = invmod(*b.last().unwrap(), q);
        while a.len() >= b.len() {
            let c = *a.last().unwrap();
            if c != 0 {
                let f = mulmod(c, lead_inv, q);
                let shift = a.len() - b.len();
                for (j, &bc) in b.iter().enumerate() {
                    let t = mulmod(f, bc, q);
                    a[shift + j] = submod(a[shift + j], t, q);
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.len() < b.len() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return a;
    }
    let inv = invmod(*a.last().unwrap(), q);
    for c in a.iter_mut() {
        *c = mulmod(*c, inv, q);
    }
    a
}

fn to_rational_poly(p: &[BigInt]) -> RationalPolynomial {
    RationalPolynomial::from_coeffs(p.iter().cloned().map(Rational::from).collect())
}

fn divides_exactly(d: &[BigInt], p: &[BigInt]) -> bool {
    let (_, r) = to_rational_poly(p).divrem(&to_rational_poly(d));
    r.is_zero()
}

/// Square-free part of a monic integer polynomial, verified exactly.
///
/// The gcd with the derivative is located modulo primes; a candidate is only
/// accepted once it exactly divides both the polynomial and its derivative
/// over the integers, so an unlucky prime can delay but never corrupt the
/// answer. Returns the monic integer quotient.
pub(crate) fn squarefree_part_monic(p: &[BigInt]) -> Vec<BigInt> {
    let deg = p.len() - 1;
    assert!(deg >= 1 && p[deg].is_one(), "input must be monic of degree >= 1");
    let dp = poly_deriv_int(p);
    let mut offset = 0;
    loop {
        // A fresh prime each round; skip any dividing the derivative's lead.
        offset += 1;
        let q = *primes(offset).last().unwrap();
        if bigint_mod(&dp[dp.len() - 1], q) == 0 {
            continue;
        }
        let g = gcd_mod(&poly_mod(p, q), &poly_mod(&dp, q), q);
        if g.len() <= 1 {
            // gcd degree over Q is at most the mod-q degree: square-free.
            return p.to_vec();
        }
        // Repeated roots (or an unlucky prime): reconstruct the gcd from
        // however many primes it takes, validating by exact division. The
        // gcd of a monic integer polynomial with its derivative is monic, so
        // monic images can be combined directly.
        let target_deg = g.len() - 1;
        let mut ps: Vec<u64> = vec![q];
        let mut images: Vec<Vec<u64>> = vec![g];
        for extra in 1..64 {
            let candidate: Vec<BigInt> = (0..=target_deg)
                .map(|k| {
                    let residues: Vec<u64> =
                        images.iter().map(|im| im.get(k).copied().unwrap_or(0)).collect();
                    crt_symmetric(&residues, &ps)
                })
                .collect();
            if candidate[target_deg].is_one()
                && divides_exactly(&candidate, p)
                && divides_exactly(&candidate, &dp)
            {
                let quotient = to_rational_poly(p).div_exact(&to_rational_poly(&candidate));
                let (ints, _) = quotient.to_primitive_integer();
                return ints;
            }
            let q2 = *primes(offset + extra).last().unwrap();
            if bigint_mod(&dp[dp.len() - 1], q2) == 0 {
                continue;
            }
            let g2 = gcd_mod(&poly_mod(p, q2), &poly_mod(&dp, q2), q2);
            match (g2.len() - 1).cmp(&target_deg) {
                std::cmp::Ordering::Less => {
                    // Every earlier prime was unlucky; start over from here.
                    break;
                }
                std::cmp::Ordering::Equal => {
                    ps.push(q2);
                    images.push(g2);
                }
                std::cmp::Ordering::Greater => {} // q2 unlucky, drop it
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{char_poly, rat, RationalMatrix};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn finds_62_bit_primes() {
        let ps = primes(3);
        assert_eq!(ps.len(), 3);
        for p in ps {
            assert!(p > PRIME_FLOOR && p < PRIME_CEILING);
            assert!(is_prime_u64(p));
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let naive = |n: u64| -> bool {
            if n < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        };
        for n in 0..2000 {
            assert_eq!(is_prime_u64(n), naive(n), "disagree at {n}");
        }
    }

    #[test]
    fn prime_image_char_poly_matches_rational_path() {
        let mut rng = StdRng::seed_from_u64(97);
        for n in 1..=7 {
            let m =
                RationalMatrix::from_fn(n, |_, _| rat(rng.gen_range(-30..=30), rng.gen_range(1..=6)));
            assert_eq!(char_poly_via_primes(&m), char_poly(&m));
        }
    }

    #[test]
    fn char_poly_int_on_a_known_matrix() {
        // [[0, 1], [-2, -3]] has char poly x^2 + 3x + 2.
        let rows = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(-2), BigInt::from(-3)],
        ];
        let cp = char_poly_int(&rows);
        assert_eq!(cp, vec![BigInt::from(2), BigInt::from(3), BigInt::from(1)]);
    }

    #[test]
    fn sign_variation_counts() {
        let v = |xs: &[i64]| sign_variations(&xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert_eq!(v(&[1, 2, 3]), 0);
        assert_eq!(v(&[-1, 0, 2, -5]), 2);
        assert_eq!(v(&[0, 0, 4]), 0);
    }

    #[test]
    fn squarefree_part_strips_repeated_factors() {
        // (x-2)^3 (x+1) = x^4 - 5x^3 + 6x^2 + 4x - 8
        let p: Vec<BigInt> = [-8i64, 4, 6, -5, 1].iter().map(|&c| BigInt::from(c)).collect();
        let sf = squarefree_part_monic(&p);
        // (x-2)(x+1) = x^2 - x - 2
        assert_eq!(sf, vec![BigInt::from(-2), BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn squarefree_part_of_squarefree_is_identity() {
        let p: Vec<BigInt> = [-6i64, 11, -6, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(squarefree_part_monic(&p), p);
    }

    #[test]
    fn squarefree_matches_rational_gcd_on_random_products() {
        let mut rng = StdRng::seed_from_u64(131);
        for _ in 0..20 {
            // Random monic product of linear factors with repetitions.
            let mut poly = RationalPolynomial::one();
            for _ in 0..rng.gen_range(1..=6) {
                let r = rng.gen_range(-4..=4);
                let factor = RationalPolynomial::from_i64(&[-r, 1]);
                let e = rng.gen_range(1..=3);
                poly = poly.mul(&factor.pow(e));
            }
            let ints: Vec<BigInt> = poly.coeffs().iter().map(|c| c.numer().clone()).collect();
            let sf = squarefree_part_monic(&ints);
            let expect = poly.squarefree_part();
            assert_eq!(to_rational_poly(&sf), expect);
        }
    }
}
