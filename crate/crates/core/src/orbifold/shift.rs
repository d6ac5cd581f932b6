use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::epoly::charpoly::{characteristic_polynomial, cyclotomic, divide_monic};
use crate::epoly::SpaceDescriptor;
use crate::error::{Error, Result};
use crate::lattice::{rational_rank, IntegerMatrix};

/// Largest element order searched for by the eigenvalue oracle.
const ORDER_LIMIT: u32 = 10_000;

/// `F(w) = rank(w - 1)`: the age of `w` on the doubled tangent space.
pub fn fermionic_shift(w: &IntegerMatrix) -> u32 {
    rational_rank(&w.minus_identity()) as u32
}

/// Age of `w` on the tangent space of a product space: each factor carries
/// one complex copy of `Λ ⊗ C`, contributing half of `rank(w - 1)`.
pub fn space_shift(space: &SpaceDescriptor, w: &IntegerMatrix) -> Result<u32> {
    let total = space.factors().len() as u32 * fermionic_shift(w);
    if total % 2 != 0 {
        return Err(Error::NonIntegral(format!(
            "fermionic shift {total}/2 of {w} on space '{}'",
            space.name()
        )));
    }
    Ok(total / 2)
}

/// Sum of eigenvalue angles of `w` in `[0, 1)`, doubled, read off from the
/// cyclotomic factorization of the characteristic polynomial.
pub fn direct_shift_oracle(w: &IntegerMatrix) -> Result<u32> {
    let order = w
        .order(ORDER_LIMIT)
        .ok_or_else(|| Error::InvalidArgument(format!("{w} has no finite order up to {ORDER_LIMIT}")))?;
    let mut rest = characteristic_polynomial(w);
    let mut angle_sum = BigRational::zero();
    for k in (1..=order).filter(|k| order % k == 0) {
        let phi = cyclotomic(k);
        loop {
            let (q, r) = divide_monic(&rest, &phi);
            if !r.is_empty() || q.is_empty() {
                break;
            }
            rest = q;
            // one eigenvalue e^{2πi j/k} for each j coprime to k
            for j in (0..k).filter(|j| j.gcd(&k) == 1) {
                angle_sum += BigRational::new(BigInt::from(j), BigInt::from(k));
            }
        }
    }
    if rest != [BigInt::one()] {
        return Err(Error::InvalidArgument(format!("{w}: characteristic polynomial is not a product of cyclotomics")));
    }
    let doubled = angle_sum * BigRational::from_integer(2.into());
    if !doubled.is_integer() {
        return Err(Error::NonIntegral(format!("doubled age {doubled} of {w}")));
    }
    Ok(doubled.to_integer().to_u32().expect("age fits in u32"))
}
