use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::matrix::IntegerMatrix;
use crate::lattice::normal_form::{smith_normal_form, SmithDecomposition};

/// `⊕ Z/dᵢ` with each `dᵢ ≥ 2` dividing the next. The trivial group has no
/// divisors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    divisors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { divisors: Vec::new() }
    }

    /// From a divisibility chain of invariant factors; factors equal to 1 are
    /// dropped.
    pub fn from_invariant_factors(factors: &[BigInt]) -> Result<Self> {
        let divisors: Vec<BigInt> = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        if divisors.iter().any(|d| d < &BigInt::from(2)) {
            return Err(Error::InvalidArgument("elementary divisors must be positive".into()));
        }
        if divisors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidArgument("divisors must form a divisibility chain".into()));
        }
        Ok(FiniteAbelianGroup { divisors })
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Every element as a residue tuple, in mixed-radix order. Only sensible
    /// for small groups.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for d in &self.divisors {
            let d = d.to_u64().expect("group too large to enumerate");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut e = prefix.clone();
                        e.push(BigInt::from(x));
                        e
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An automorphism of a [`FiniteAbelianGroup`], as an integer matrix acting
/// on residue tuples (row `i` reduced mod `dᵢ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAutomorphism {
    group: FiniteAbelianGroup,
    matrix: IntegerMatrix,
}

impl GroupAutomorphism {
    pub fn identity(group: FiniteAbelianGroup) -> Self {
        let k = group.divisors.len();
        GroupAutomorphism { group, matrix: IntegerMatrix::identity(k) }
    }

    /// Checks that `matrix` induces a well-defined map on the group.
    pub fn new(group: FiniteAbelianGroup, matrix: IntegerMatrix) -> Result<Self> {
        let k = group.divisors.len();
        if matrix.rows() != k || matrix.cols() != k {
            return Err(Error::Dimension(format!("automorphism of rank-{k} group needs {k}x{k} matrix")));
        }
        for i in 0..k {
            for j in 0..k {
                if !(&matrix[(i, j)] * &group.divisors[j]).is_multiple_of(&group.divisors[i]) {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) is not compatible with the divisors"
                    )));
                }
            }
        }
        let matrix = reduce_rows(&matrix, &group.divisors);
        Ok(GroupAutomorphism { group, matrix })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let d = &self.group.divisors;
        (0..d.len())
            .map(|i| {
                let s: BigInt = (0..d.len()).map(|j| &self.matrix[(i, j)] * &x[j]).sum();
                s.mod_floor(&d[i])
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        let d = &self.group.divisors;
        (0..d.len()).all(|i| {
            (0..d.len()).all(|j| {
                let target = if i == j { BigInt::one() } else { BigInt::zero() };
                // column j has order d_j, so compare the image of the generator
                (&self.matrix[(i, j)] - target).is_multiple_of(&d[i])
            })
        })
    }

    /// Number of fixed elements, `|ker(A - 1)|`.
    ///
    /// The kernel of `A - 1` on `Z^k / D·Z^k` has the same order as the
    /// cokernel of `[A - 1 | D]`, i.e. the product of its Smith divisors.
    pub fn fixed_count(&self) -> BigInt {
        let k = self.group.divisors.len();
        if k == 0 {
            return BigInt::one();
        }
        let stacked = self.matrix.minus_identity().hstack(&IntegerMatrix::diagonal(&self.group.divisors));
        smith_normal_form(&stacked).diagonal().iter().product()
    }
}

fn reduce_rows(m: &IntegerMatrix, divisors: &[BigInt]) -> IntegerMatrix {
    let mut out = m.clone();
    for (i, d) in divisors.iter().enumerate() {
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)].mod_floor(d);
        }
    }
    out
}

/// The torsion part of `Z^r / im(M)` for square `M`, with the Smith data
/// needed to transport lattice automorphisms onto it.
#[derive(Clone, Debug)]
pub struct CokernelTorsion {
    smith: SmithDecomposition,
    u_inv: IntegerMatrix,
    group: FiniteAbelianGroup,
    /// Indices of the Smith coordinates carrying a factor ≥ 2.
    torsion_coords: Vec<usize>,
}

impl CokernelTorsion {
    pub fn new(m: &IntegerMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("torsion of cokernel needs a square matrix".into()));
        }
        let smith = smith_normal_form(m);
        let diag = smith.diagonal();
        let torsion_coords: Vec<usize> =
            (0..diag.len()).filter(|&i| !diag[i].is_zero() && !diag[i].is_one()).collect();
        let group = FiniteAbelianGroup::from_invariant_factors(&smith.invariant_factors())?;
        let u_inv = smith.u.inverse_unimodular()?;
        Ok(CokernelTorsion { smith, u_inv, group, torsion_coords })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    /// Action of the lattice automorphism `c` on the torsion subgroup.
    pub fn automorphism(&self, c: &IntegerMatrix) -> Result<GroupAutomorphism> {
        let r = self.smith.d.rows();
        if c.rows() != r || c.cols() != r {
            return Err(Error::Dimension(format!("expected {r}x{r} matrix")));
        }
        let diag = self.smith.diagonal();
        // c in Smith coordinates y = U x
        let a = &(&self.smith.u * c) * &self.u_inv;
        for j in 0..r {
            if diag[j].is_zero() {
                continue;
            }
            for i in 0..r {
                let image = &a[(i, j)] * &diag[j];
                let ok = if diag[i].is_zero() { image.is_zero() } else { image.is_multiple_of(&diag[i]) };
                if !ok {
                    return Err(Error::NotCentralizing(format!("{c}")));
                }
            }
        }
        let k = self.torsion_coords.len();
        let mut block = IntegerMatrix::zeros(k, k);
        for (bi, &i) in self.torsion_coords.iter().enumerate() {
            for (bj, &j) in self.torsion_coords.iter().enumerate() {
                block[(bi, bj)] = a[(i, j)].clone();
            }
        }
        GroupAutomorphism::new(self.group.clone(), block)
    }
}

/// `Tor(Z^r / M·Z^r)` for a square integer matrix `M`.
pub fn torsion_of_cokernel(m: &IntegerMatrix) -> Result<FiniteAbelianGroup> {
    Ok(CokernelTorsion::new(m)?.group)
}

/// Action of `c` on `Tor(Z^r / M·Z^r)`; fails when `c` does not preserve `im M`.
pub fn induced_automorphism(c: &IntegerMatrix, m: &IntegerMatrix) -> Result<GroupAutomorphism> {
    CokernelTorsion::new(m)?.automorphism(c)
}

pub fn fixed_count(aut: &GroupAutomorphism) -> BigInt {
    aut.fixed_count()
}
