//! Exact integer lattice algebra: matrices, Smith and Hermite normal forms,
//! fixed sublattices and the finite abelian groups that arise as torsion of
//! cokernels.

mod abelian;
mod matrix;
mod normal_form;
mod rational;

pub use abelian::{
    fixed_count, induced_automorphism, torsion_of_cokernel, CokernelTorsion, FiniteAbelianGroup,
    GroupAutomorphism,
};
pub use matrix::IntegerMatrix;
pub use normal_form::{column_lattice_basis, hermite_normal_form, smith_normal_form, SmithDecomposition};
pub use rational::RationalMatrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Saturated basis of `ker(w - 1) ∩ Z^r`, as columns in Hermite order.
///
/// An element of `Z^r` fixed by `w` lies in the returned span; the quotient
/// `Z^r / span` is torsion-free.
pub fn fixed_sublattice(w: &IntegerMatrix) -> IntegerMatrix {
    assert!(w.is_square(), "fixed sublattice of a non-square matrix");
    let r = w.rows();
    let kernel = w.minus_identity().to_rational().nullspace();
    if kernel.is_empty() {
        return IntegerMatrix::zeros(r, 0);
    }
    let columns: Vec<Vec<BigInt>> = kernel.iter().map(|v| primitive_integer_vector(v)).collect();
    saturate(&IntegerMatrix::from_columns(r, &columns))
}

/// Basis of `Q·span(cols) ∩ Z^r` for a full-column-rank integer matrix.
pub fn saturate(gens: &IntegerMatrix) -> IntegerMatrix {
    let k = gens.cols();
    if k == 0 {
        return gens.clone();
    }
    // U·G·V = D puts the span inside the first k coordinates of U·Z^r, so the
    // first k columns of U⁻¹ are a basis of the saturation.
    let smith = smith_normal_form(gens);
    let u_inv = smith.u.inverse_unimodular().expect("Smith transform is unimodular");
    column_lattice_basis(&u_inv.column_range(0, smith.rank()))
}

/// Scales a rational vector to the primitive integer vector on its ray.
pub fn primitive_integer_vector(v: &[num_rational::BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// The matrix of `c` restricted to the sublattice with column basis `basis`,
/// i.e. the integer `X` with `c·B = B·X`.
pub fn restrict_to_sublattice(c: &IntegerMatrix, basis: &IntegerMatrix) -> Result<IntegerMatrix> {
    if basis.cols() == 0 {
        return Ok(IntegerMatrix::zeros(0, 0));
    }
    let image = (c * basis).to_rational();
    let x = basis
        .to_rational()
        .solve(&image)
        .ok_or_else(|| Error::InvalidArgument(format!("{c} does not preserve the sublattice")))?;
    x.to_integer()
        .ok_or_else(|| Error::InvalidArgument(format!("{c} restricted to the sublattice is not integral")))
}

/// Rank over Q.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    m.to_rational().rank()
}

/// Index `[L : S]` of the column span `S` of `sub` in the column span `L` of
/// `sup`, both full column rank of the same rank, with `S ⊆ L`.
pub fn sublattice_index(sup: &RationalMatrix, sub: &RationalMatrix) -> Result<BigInt> {
    if sup.cols() != sub.cols() {
        return Err(Error::Dimension("lattices of different rank".into()));
    }
    let coords = sup
        .solve(sub)
        .ok_or_else(|| Error::InvalidArgument("not contained in the ambient span".into()))?;
    let coords = coords
        .to_integer()
        .ok_or_else(|| Error::InvalidArgument("not a sublattice".into()))?;
    Ok(coords.determinant().abs())
}
