//! Bivariate E-polynomials and the equivariant E-characters of the torus
//! factors `A_kind ⊗ M`.

pub mod charpoly;
mod poly;
mod space;

pub use poly::{fmt_rational, integer_value, parse_rational, BivariatePolynomial, Monomial};
pub use space::{
    char_poly_product, char_poly_product_from_coeffs, factor_character_from_charpoly, factor_e_character,
    factor_e_polynomial, space_e_character, Factor, FactorKind, LatticeSide, SpaceDescriptor,
};
