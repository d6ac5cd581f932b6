use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::epoly::charpoly::characteristic_polynomial;
use crate::epoly::poly::BivariatePolynomial;
use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;

/// One-dimensional connected abelian group tensored with a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// An elliptic curve: `U(1)^2` as a real group.
    Elliptic,
    /// The multiplicative group `C^×`: `R × U(1)`.
    CStar,
    /// The additive group `C`: `R^2`.
    AffineLine,
}

impl FactorKind {
    /// Number of `U(1)` factors of the underlying real group.
    pub fn circle_count(self) -> u32 {
        match self {
            FactorKind::Elliptic => 2,
            FactorKind::CStar => 1,
            FactorKind::AffineLine => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Elliptic => "elliptic",
            FactorKind::CStar => "c_star",
            FactorKind::AffineLine => "affine_line",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeSide {
    Primal,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub side: LatticeSide,
}

/// A product of factors `A_kind ⊗ (Λ or Λ̂)`, all acted on diagonally by W.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    name: String,
    factors: Vec<Factor>,
}

impl SpaceDescriptor {
    pub fn new(name: impl Into<String>, factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("space descriptor needs at least one factor".into()));
        }
        Ok(SpaceDescriptor { name: name.into(), factors })
    }

    fn of(name: &str, factors: &[(FactorKind, LatticeSide)]) -> Self {
        SpaceDescriptor {
            name: name.to_string(),
            factors: factors.iter().map(|&(kind, side)| Factor { kind, side }).collect(),
        }
    }

    /// `(H × H)/W`: two copies of `C^× ⊗ Λ`.
    pub fn betti() -> Self {
        use FactorKind::*;
        Self::of("betti", &[(CStar, LatticeSide::Primal), (CStar, LatticeSide::Primal)])
    }

    /// `(T*C ⊗ Λ)/W` with `T*C = C × C` for an elliptic curve `C`.
    pub fn dolbeault() -> Self {
        use FactorKind::*;
        Self::of("dolbeault", &[(Elliptic, LatticeSide::Primal), (AffineLine, LatticeSide::Primal)])
    }

    /// `(J ⊗ Λ)/W`. `J` is a Zariski-locally-trivial affine-line bundle over an
    /// elliptic curve, so its E-data coincide with the Dolbeault factors.
    pub fn de_rham() -> Self {
        let mut s = Self::dolbeault();
        s.name = "derham".into();
        s
    }

    /// `(A ⊗ Λ)/W` for an abelian surface `A = C × D`.
    pub fn abelian_surface() -> Self {
        use FactorKind::*;
        Self::of("abelian-surface", &[(Elliptic, LatticeSide::Primal), (Elliptic, LatticeSide::Primal)])
    }

    /// `((D ⊗ Λ̂) × (C ⊗ Λ))/W`.
    pub fn mixed() -> Self {
        use FactorKind::*;
        Self::of("mixed", &[(Elliptic, LatticeSide::Dual), (Elliptic, LatticeSide::Primal)])
    }

    /// Looks up a named space, or parses a factor list such as
    /// `elliptic:dual,c_star:primal`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "betti" => Ok(Self::betti()),
            "dolbeault" => Ok(Self::dolbeault()),
            "derham" | "de-rham" => Ok(Self::de_rham()),
            "abelian-surface" | "abelian" => Ok(Self::abelian_surface()),
            "mixed" => Ok(Self::mixed()),
            other => {
                let factors = other
                    .split(',')
                    .map(|f| {
                        let (kind, side) = f.split_once(':').unwrap_or((f, "primal"));
                        Ok(Factor { kind: kind.trim().parse()?, side: side.trim().parse()? })
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| Error::InvalidArgument(format!("unknown space '{other}'")))?;
                Self::new(other, factors)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn uses_side(&self, side: LatticeSide) -> bool {
        self.factors.iter().any(|f| f.side == side)
    }

    /// Total number of `U(1)` factors per lattice rank, when every factor sits
    /// on the same side (the `d` of `A = R^c × U(1)^d`).
    pub fn circle_count(&self) -> u32 {
        self.factors.iter().map(|f| f.kind.circle_count()).sum()
    }

    /// E-polynomial of the one-dimensional group `A` whose product with the
    /// lattice this descriptor encodes (`E(A)` for `A = Π A_kind`).
    pub fn base_e_polynomial(&self) -> BivariatePolynomial {
        self.factors.iter().fold(BivariatePolynomial::one(), |acc, f| &acc * &factor_e_polynomial(f.kind, 1))
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl FromStr for FactorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elliptic" => Ok(FactorKind::Elliptic),
            "c_star" | "cstar" => Ok(FactorKind::CStar),
            "affine_line" | "affine" => Ok(FactorKind::AffineLine),
            _ => Err(Error::InvalidArgument(format!("unknown factor kind '{s}'"))),
        }
    }
}

impl FromStr for LatticeSide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primal" => Ok(LatticeSide::Primal),
            "dual" => Ok(LatticeSide::Dual),
            _ => Err(Error::InvalidArgument(format!("unknown lattice side '{s}'"))),
        }
    }
}

/// `det(I - x·c)` with `x = u^p v^q`, from the characteristic polynomial
/// coefficients of `c` (constant term first).
pub fn char_poly_product_from_coeffs(charpoly: &[BigInt], x: (u32, u32)) -> BivariatePolynomial {
    // det(I - x c) = x^n χ(1/x) = Σ_j χ_j x^(n-j)
    let n = charpoly.len() - 1;
    BivariatePolynomial::from_terms(charpoly.iter().enumerate().map(|(j, c)| {
        let e = (n - j) as u32;
        (x.0 * e, x.1 * e, BigRational::from_integer(c.clone()))
    }))
}

/// `det(I - x·c)` for the formal monomial `x = u^p v^q`.
pub fn char_poly_product(c: &IntegerMatrix, x: (u32, u32)) -> BivariatePolynomial {
    char_poly_product_from_coeffs(&characteristic_polynomial(c), x)
}

/// Trace-valued E-polynomial of `c` acting on `A_kind ⊗ M`, given the
/// characteristic polynomial of `c` on `M`.
pub fn factor_character_from_charpoly(kind: FactorKind, charpoly: &[BigInt]) -> BivariatePolynomial {
    let rank = (charpoly.len() - 1) as u32;
    match kind {
        FactorKind::Elliptic => {
            &char_poly_product_from_coeffs(charpoly, (1, 0)) * &char_poly_product_from_coeffs(charpoly, (0, 1))
        }
        // det(uv·I - c) = χ_c(uv)
        FactorKind::CStar => BivariatePolynomial::from_terms(
            charpoly
                .iter()
                .enumerate()
                .map(|(j, c)| (j as u32, j as u32, BigRational::from_integer(c.clone()))),
        ),
        FactorKind::AffineLine => BivariatePolynomial::uv_pow(rank),
    }
}

/// Trace-valued E-polynomial of `c` acting on `A_kind ⊗ M`:
///
/// * elliptic: `det(I - u·c) det(I - v·c)`
/// * `C^×`: `det(uv·I - c)`
/// * affine line: `(uv)^rank`
pub fn factor_e_character(kind: FactorKind, c: &IntegerMatrix) -> BivariatePolynomial {
    factor_character_from_charpoly(kind, &characteristic_polynomial(c))
}

/// Non-equivariant E-polynomial of `A_kind ⊗ Z^rank`.
pub fn factor_e_polynomial(kind: FactorKind, rank: usize) -> BivariatePolynomial {
    factor_e_character(kind, &IntegerMatrix::identity(rank))
}

/// Product of the factor characters; `restricted[i]` is `c` acting on the
/// fixed sublattice used by factor `i`.
pub fn space_e_character(space: &SpaceDescriptor, restricted: &[IntegerMatrix]) -> Result<BivariatePolynomial> {
    if restricted.len() != space.factors.len() {
        return Err(Error::Dimension(format!(
            "{} factors but {} matrices",
            space.factors.len(),
            restricted.len()
        )));
    }
    Ok(space
        .factors
        .iter()
        .zip(restricted)
        .fold(BivariatePolynomial::one(), |acc, (f, c)| &acc * &factor_e_character(f.kind, c)))
}
