//! Coweight lattices with Weyl group actions and their Langlands duals.
//!
//! A lattice is stored as an integer column basis in a fixed rational
//! ambient space together with a common denominator, so a datum and its dual
//! can be compared in the same coordinates. The Weyl generators act on basis
//! coordinates; everything downstream works in those coordinates.

mod builtins;
mod file;

pub use builtins::{ClassicalFamily, ClassicalForm};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{column_lattice_basis, IntegerMatrix, RationalMatrix};
use crate::weyl::MatrixGroup;

/// Bound used when checking that generators have finite order.
const GENERATOR_ORDER_LIMIT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    label: String,
    /// ambient_dim × rank; the basis vectors are `basis / denominator`
    basis: IntegerMatrix,
    denominator: BigInt,
    generators: Vec<IntegerMatrix>,
    gram: RationalMatrix,
}

impl RootDatum {
    /// Validates and normalizes a datum. Errors name the first violated
    /// invariant.
    pub fn new(
        label: impl Into<String>,
        basis: IntegerMatrix,
        denominator: BigInt,
        generators: Vec<IntegerMatrix>,
        gram: RationalMatrix,
    ) -> Result<Self> {
        let rank = basis.cols();
        if !denominator.is_positive() {
            return Err(Error::InvalidDatum("denominator must be positive".into()));
        }
        if basis.to_rational().rank() != rank {
            return Err(Error::InvalidDatum("basis vectors are linearly dependent".into()));
        }
        if gram.rows() != rank || gram.cols() != rank {
            return Err(Error::InvalidDatum(format!("gram must be {rank}x{rank}")));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidDatum("gram is not symmetric".into()));
        }
        if !gram.is_positive_definite() {
            return Err(Error::InvalidDatum("gram is not positive definite".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            let n = i + 1;
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::InvalidDatum(format!("generator {n} must be {rank}x{rank}")));
            }
            let det = g.determinant();
            if !det.abs().is_one() {
                return Err(Error::InvalidDatum(format!("generator {n} is not unimodular (det {det})")));
            }
            let gq = g.to_rational();
            if &(&gq.transpose() * &gram) * &gq != gram {
                return Err(Error::InvalidDatum(format!("generator {n} does not preserve the form")));
            }
            if g.order(GENERATOR_ORDER_LIMIT).is_none() {
                return Err(Error::InvalidDatum(format!("generator {n} does not have finite order")));
            }
        }
        let (basis, denominator) = normalize(basis, denominator);
        Ok(RootDatum { label: label.into(), basis, denominator, generators, gram })
    }

    /// The rank-0 datum with trivial Weyl group.
    pub fn trivial() -> Self {
        RootDatum {
            label: "trivial".into(),
            basis: IntegerMatrix::zeros(0, 0),
            denominator: BigInt::one(),
            generators: Vec::new(),
            gram: RationalMatrix::zeros(0, 0),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn generators(&self) -> &[IntegerMatrix] {
        &self.generators
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    /// Basis vectors in ambient rational coordinates, as columns.
    pub fn ambient_basis(&self) -> RationalMatrix {
        self.basis.to_rational().scale(&BigRational::new(BigInt::one(), self.denominator.clone()))
    }

    pub fn weyl_group(&self, cap: usize) -> Result<MatrixGroup> {
        MatrixGroup::generate(&self.generators, self.rank(), cap)
    }

    /// The Langlands dual: `Λ̂ = Hom(Λ, Z)` realized through the gram pairing
    /// (dual basis `B·G⁻¹`), generators replaced by their inverse transposes
    /// and the form by its inverse.
    pub fn dual(&self) -> Self {
        let gram_inv = self.gram.inverse().expect("gram is nondegenerate");
        let dual_basis = &self.ambient_basis() * &gram_inv;
        let den = dual_basis.common_denominator();
        let basis = dual_basis
            .scale(&BigRational::from_integer(den.clone()))
            .to_integer()
            .expect("cleared denominators");
        let (basis, denominator) = normalize(basis, den);
        let generators = self
            .generators
            .iter()
            .map(|g| g.inverse_unimodular().expect("generators are unimodular").transpose())
            .collect();
        let label = match self.label.strip_prefix("dual of ") {
            Some(orig) => orig.to_string(),
            None => format!("dual of {}", self.label),
        };
        RootDatum { label, basis, denominator, generators, gram: gram_inv }
    }

    /// Same lattice and action with the form multiplied by `factor > 0`.
    pub fn with_gram_scaled(&self, factor: &BigRational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::InvalidArgument("gram scale factor must be positive".into()));
        }
        let mut out = self.clone();
        out.gram = self.gram.scale(factor);
        Ok(out)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Matrix, in basis coordinates, of an ambient linear map preserving the
    /// lattice.
    pub fn basis_action(&self, ambient: &RationalMatrix) -> Result<IntegerMatrix> {
        let b = self.ambient_basis();
        let image = ambient * &b;
        b.solve(&image)
            .and_then(|x| x.to_integer())
            .ok_or_else(|| Error::InvalidDatum("ambient map does not preserve the lattice".into()))
    }

    /// True when `other` is the same lattice in the same ambient space with
    /// the same Weyl group and form, up to choice of basis.
    pub fn equivalent(&self, other: &RootDatum, cap: usize) -> Result<bool> {
        if self.ambient_dim() != other.ambient_dim() || self.rank() != other.rank() {
            return Ok(false);
        }
        let den = self.denominator.lcm(&other.denominator);
        let canon = |d: &RootDatum| column_lattice_basis(&d.basis.scale(&(&den / &d.denominator)));
        let canonical = canon(self);
        if canonical != canon(other) {
            return Ok(false);
        }
        let c = canonical.to_rational().scale(&BigRational::new(BigInt::one(), den.clone()));
        let into_canonical = |d: &RootDatum| -> Result<(HashSet<IntegerMatrix>, RationalMatrix)> {
            // B_d = C·T with T unimodular
            let t = c.solve(&d.ambient_basis()).expect("same lattice");
            let t_inv = t.inverse().expect("basis change is invertible");
            let group = d.weyl_group(cap)?;
            let elements = group
                .elements()
                .iter()
                .map(|g| (&(&t * &g.to_rational()) * &t_inv).to_integer().expect("unimodular change of basis"))
                .collect();
            let gram = &(&t_inv.transpose() * &d.gram) * &t_inv;
            Ok((elements, gram))
        };
        let (ga, fa) = into_canonical(self)?;
        let (gb, fb) = into_canonical(other)?;
        Ok(ga == gb && fa == fb)
    }

    /// Index `[Λ : sub]` for a datum whose lattice contains `sub`'s lattice.
    pub fn index_of(&self, sub: &RootDatum) -> Result<BigInt> {
        crate::lattice::sublattice_index(&self.ambient_basis(), &sub.ambient_basis())
    }
}

/// Divides basis and denominator by their common content.
fn normalize(basis: IntegerMatrix, denominator: BigInt) -> (IntegerMatrix, BigInt) {
    let g = basis.content().gcd(&denominator);
    if g.is_one() || g.is_zero() {
        return (basis, denominator);
    }
    (basis.map_entries(|x| x / &g), denominator / g)
}

/// Lattice spanned by rational ambient vectors, as `(integer basis, denominator)`.
pub(crate) fn lattice_from_generators(ambient_dim: usize, gens: &[Vec<BigRational>]) -> (IntegerMatrix, BigInt) {
    let den = gens.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let cols: Vec<Vec<BigInt>> =
        gens.iter().map(|v| v.iter().map(|x| (x * &den).to_integer()).collect()).collect();
    let basis = column_lattice_basis(&IntegerMatrix::from_columns(ambient_dim, &cols));
    normalize(basis, den)
}
