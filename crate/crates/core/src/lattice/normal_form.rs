use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::matrix::IntegerMatrix;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D` (length `min(rows, cols)`), zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries; they come first and form a divisibility chain.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen as the entry of least absolute value in the active
/// submatrix, ties going to the lowest row-major index, so the transforms are
/// deterministic.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                return finish(u, a, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, a, v)
}

fn finish(u: IntegerMatrix, d: IntegerMatrix, v: IntegerMatrix) -> SmithDecomposition {
    SmithDecomposition { u, d, v }
}

fn smallest_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Row-style Hermite normal form `H = U·M`: echelon with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.clone();
    let rows = a.rows();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == rows {
            break;
        }
        loop {
            let pick = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()).then(x.cmp(&y)));
            let Some(p) = pick else { break };
            a.swap_rows(r, p);
            let pivot = a[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -a[(i, c)].div_floor(&pivot);
                a.add_row_multiple(i, r, &q);
                clean &= a[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        let pivot = a[(r, c)].clone();
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&pivot);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    a
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn column_lattice_basis(gens: &IntegerMatrix) -> IntegerMatrix {
    let h = hermite_normal_form(&gens.transpose());
    let nonzero: Vec<Vec<BigInt>> =
        (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).map(|i| h.row(i).to_vec()).collect();
    IntegerMatrix::from_columns(gens.rows(), &nonzero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_decomposition(m: &IntegerMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "U M V != D for {m}");
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        let k = s.rank();
        assert!(diag[k..].iter().all(Zero::is_zero));
        for w in diag[..k].windows(2) {
            assert!(w[0].is_positive() && w[1].is_multiple_of(&w[0]));
        }
        if k > 0 {
            assert!(diag[k - 1].is_positive());
        }
    }

    #[test]
    fn sign_normalized() {
        let s = smith_normal_form(&IntegerMatrix::from_rows(&[[-2]]));
        assert_eq!(s.d, IntegerMatrix::from_rows(&[[2]]));
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntegerMatrix::identity(4);
        assert_eq!(smith_normal_form(&id).d, id);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntegerMatrix::from_rows(&[[1, 0], [0, 6]]));
        check_decomposition(&m);
    }

    #[test]
    fn rectangular_and_zero() {
        check_decomposition(&IntegerMatrix::from_rows(&[[0, 0, 0], [0, 0, 0]]));
        check_decomposition(&IntegerMatrix::from_rows(&[[2, 4, 6], [4, 8, 13]]));
        check_decomposition(&IntegerMatrix::from_rows(&[[6], [10], [15]]));
    }

    #[test]
    fn hnf_of_known_matrix() {
        let m = IntegerMatrix::from_rows(&[[2, 4], [3, 5]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h, IntegerMatrix::from_rows(&[[1, 1], [0, 2]]));
    }

    #[test]
    fn lattice_basis_drops_dependent_generators() {
        // columns (2,0), (0,2), (1,1) span the checkerboard lattice
        let g = IntegerMatrix::from_rows(&[[2, 0, 1], [0, 2, 1]]);
        let b = column_lattice_basis(&g);
        assert_eq!(b.cols(), 2);
        assert_eq!(b.determinant().abs(), BigInt::from(2));
    }

    proptest! {
        #[test]
        fn smith_invariants_hold(rows in 1usize..4, cols in 1usize..4,
                                 entries in proptest::collection::vec(-9i64..=9, 16)) {
            let data = entries[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
            let m = IntegerMatrix::new(rows, cols, data).unwrap();
            check_decomposition(&m);
        }

        #[test]
        fn hnf_preserves_row_lattice(entries in proptest::collection::vec(-6i64..=6, 9)) {
            let data = entries.iter().map(|&x| BigInt::from(x)).collect();
            let m = IntegerMatrix::new(3, 3, data).unwrap();
            let h = hermite_normal_form(&m);
            prop_assert_eq!(h.determinant().abs(), m.determinant().abs());
            prop_assert_eq!(hermite_normal_form(&h), h);
        }
    }
}
