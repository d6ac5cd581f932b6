//! Built-in coweight data. Classical types use Bourbaki coordinates in `Q^n`
//! with the standard Euclidean form:
//!
//! | type | roots                  | simply connected (coroot lattice) | adjoint (coweights)      |
//! |------|------------------------|-----------------------------------|--------------------------|
//! | B_n  | ±eᵢ±eⱼ, ±eᵢ            | even-sum sublattice of Z^n        | Z^n                      |
//! | C_n  | ±eᵢ±eⱼ, ±2eᵢ           | Z^n                               | Z^n + Z·(½,…,½)          |
//! | D_n  | ±eᵢ±eⱼ                 | even-sum sublattice of Z^n        | Z^n + Z·(½,…,½)          |
//!
//! W is the group of signed permutations for B and C, and the even signed
//! permutations for D.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{lattice_from_generators, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::RationalMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalFamily {
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalForm {
    SimplyConnected,
    Adjoint,
}

impl FromStr for ClassicalFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(ClassicalFamily::B),
            "C" | "c" => Ok(ClassicalFamily::C),
            "D" | "d" => Ok(ClassicalFamily::D),
            _ => Err(Error::InvalidArgument(format!("unknown classical family '{s}' (expected B, C or D)"))),
        }
    }
}

impl FromStr for ClassicalForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply_connected" | "simply-connected" => Ok(ClassicalForm::SimplyConnected),
            "ad" | "adjoint" => Ok(ClassicalForm::Adjoint),
            _ => Err(Error::InvalidArgument(format!("unknown form '{s}' (expected sc or ad)"))),
        }
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl fmt::Display for ClassicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalForm::SimplyConnected => write!(f, "sc"),
            ClassicalForm::Adjoint => write!(f, "ad"),
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    for &(i, c) in terms {
        v[i] += rat(c);
    }
    v
}

fn half_vector(n: usize, m: i64) -> Vec<BigRational> {
    vec![BigRational::new(BigInt::one(), m.into()); n]
}

fn permutation_matrix(n: usize, images: &[usize]) -> RationalMatrix {
    let mut p = RationalMatrix::zeros(n, n);
    for (i, &j) in images.iter().enumerate() {
        p[(j, i)] = BigRational::one();
    }
    p
}

/// Adjacent transpositions (i i+1) as ambient matrices.
fn transpositions(n: usize) -> Vec<RationalMatrix> {
    (0..n - 1)
        .map(|i| {
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(i, i + 1);
            permutation_matrix(n, &images)
        })
        .collect()
}

impl RootDatum {
    /// Builds a datum from ambient lattice generators and ambient Weyl
    /// generators, with the standard form restricted to the lattice.
    fn from_ambient(
        label: String,
        ambient_dim: usize,
        lattice_gens: &[Vec<BigRational>],
        weyl_gens: &[RationalMatrix],
    ) -> Result<Self> {
        let (basis, den) = lattice_from_generators(ambient_dim, lattice_gens);
        let provisional = RootDatum {
            label: label.clone(),
            basis: basis.clone(),
            denominator: den.clone(),
            generators: Vec::new(),
            gram: RationalMatrix::identity(basis.cols()),
        };
        let b = provisional.ambient_basis();
        let gram = &b.transpose() * &b;
        let generators = weyl_gens.iter().map(|w| provisional.basis_action(w)).collect::<Result<Vec<_>>>()?;
        RootDatum::new(label, basis, den, generators, gram)
    }

    /// Coweight lattice of `SL(n)/Z_m`: `{x ∈ Z^n + Z·(1/m,…,1/m) : Σxⱼ = 0}`
    /// with `S_n` permuting coordinates.
    pub fn sl_quotient(n: usize, m: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("SL(n) needs n >= 2, got {n}")));
        }
        if m == 0 || n % m != 0 {
            return Err(Error::InvalidArgument(format!("m = {m} does not divide n = {n}")));
        }
        let mut gens: Vec<Vec<BigRational>> = (0..n - 1).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect();
        if m > 1 {
            // (1/m)(1,…,1) - (n/m) e_n has coordinate sum zero
            let mut v = half_vector(n, m as i64);
            v[n - 1] -= rat((n / m) as i64);
            gens.push(v);
        }
        let label = if m == 1 { format!("SL({n})") } else { format!("SL({n})/Z_{m}") };
        Self::from_ambient(label, n, &gens, &transpositions(n))
    }

    pub fn classical(family: ClassicalFamily, n: usize, form: ClassicalForm) -> Result<Self> {
        let min = if family == ClassicalFamily::D { 3 } else { 2 };
        if n < min {
            return Err(Error::InvalidArgument(format!("{family}_{n}: rank must be at least {min}")));
        }
        let integral: Vec<Vec<BigRational>> = (0..n).map(|i| unit(n, i)).collect();
        let even: Vec<Vec<BigRational>> = (0..n - 1)
            .map(|i| combo(n, &[(i, 1), (i + 1, -1)]))
            .chain(std::iter::once(combo(n, &[(n - 2, 1), (n - 1, 1)])))
            .collect();
        let with_half: Vec<Vec<BigRational>> =
            integral.iter().cloned().chain(std::iter::once(half_vector(n, 2))).collect();
        use ClassicalFamily::*;
        use ClassicalForm::*;
        let lattice = match (family, form) {
            (B, SimplyConnected) | (D, SimplyConnected) => even,
            (B, Adjoint) | (C, SimplyConnected) => integral,
            (C, Adjoint) | (D, Adjoint) => with_half,
        };
        let mut weyl = transpositions(n);
        match family {
            B | C => {
                let mut flip = RationalMatrix::identity(n);
                flip[(n - 1, n - 1)] = rat(-1);
                weyl.push(flip);
            }
            D => {
                // e_{n-1} ↦ -e_n, e_n ↦ -e_{n-1}
                let mut s = RationalMatrix::identity(n);
                s[(n - 2, n - 2)] = BigRational::zero();
                s[(n - 1, n - 1)] = BigRational::zero();
                s[(n - 1, n - 2)] = rat(-1);
                s[(n - 2, n - 1)] = rat(-1);
                weyl.push(s);
            }
        }
        Self::from_ambient(format!("{family}{n} {form}"), n, &lattice, &weyl)
    }
}
