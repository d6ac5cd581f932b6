//! Univariate integer polynomials: characteristic polynomials of integer
//! matrices and cyclotomic factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lattice::IntegerMatrix;

/// Coefficients of `det(t·I - A)`, constant term first; length `n + 1`.
///
/// Faddeev–LeVerrier recursion; every division is exact over Z.
pub fn characteristic_polynomial(a: &IntegerMatrix) -> Vec<BigInt> {
    assert!(a.is_square(), "characteristic polynomial of non-square matrix");
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntegerMatrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &IntegerMatrix::identity(n).scale(&coeffs[n - k + 1]);
        let tr = (a * &m).trace();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
    }
    coeffs
}

/// Quotient and remainder of `num / den` for monic `den`.
pub fn divide_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = trim(num.to_vec());
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd && !rem.is_empty() {
        let shift = rem.len() - 1 - dd;
        let lead = rem[rem.len() - 1].clone();
        for (i, c) in den.iter().enumerate() {
            rem[shift + i] -= &lead * c;
        }
        q[shift] = lead;
        rem = trim(rem);
    }
    (trim(q), rem)
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// The `k`-th cyclotomic polynomial Φ_k.
pub fn cyclotomic(k: u32) -> Vec<BigInt> {
    assert!(k >= 1);
    // t^k - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); k as usize + 1];
    p[0] = BigInt::from(-1);
    p[k as usize] = BigInt::one();
    for d in (1..k).filter(|d| k % d == 0) {
        let (q, r) = divide_monic(&p, &cyclotomic(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}
