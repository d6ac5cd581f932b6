//! Finite matrix groups by explicit enumeration: closure, conjugacy classes
//! and centralizers.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;

/// A finite group of integer matrices with a deterministic element order.
/// Element 0 is always the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    elements: Vec<IntegerMatrix>,
    index: HashMap<IntegerMatrix, usize>,
    generators: Vec<usize>,
}

impl MatrixGroup {
    /// Breadth-first closure of `generators`, applied in sorted order on the
    /// right. Fails once more than `cap` elements have been found.
    pub fn generate(generators: &[IntegerMatrix], dim: usize, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument("group cap must be at least 1".into()));
        }
        for g in generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!("generator is {}x{}, expected {dim}x{dim}", g.rows(), g.cols())));
            }
            if !g.is_unimodular() {
                return Err(Error::NotUnimodular(g.to_string()));
            }
        }
        let mut gens: Vec<IntegerMatrix> = generators.to_vec();
        gens.sort();
        gens.dedup();

        let identity = IntegerMatrix::identity(dim);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = &elements[i] * g;
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(Error::CapExceeded { cap, partial: elements.len() + 1 });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(MatrixGroup { dim, elements, index, generators })
    }

    /// Subgroup given by indices into `self`, kept in `self`'s order. The
    /// caller guarantees closure.
    fn subgroup(&self, members: Vec<usize>) -> Self {
        let elements: Vec<IntegerMatrix> = members.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let generators = (1..elements.len()).collect();
        MatrixGroup { dim: self.dim, elements, index, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntegerMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntegerMatrix {
        &self.elements[i]
    }

    /// Indices of the generators actually used, in application order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, m: &IntegerMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntegerMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let inv = self.elements[a].inverse_unimodular().expect("group elements are unimodular");
        self.index[&inv]
    }

    /// The image group under `g ↦ (g⁻¹)ᵀ`, which is how W acts on the dual
    /// lattice in dual coordinates. Element order is carried over.
    pub fn inverse_transpose(&self) -> Self {
        let elements: Vec<IntegerMatrix> = self
            .elements
            .iter()
            .map(|g| g.inverse_unimodular().expect("group elements are unimodular").transpose())
            .collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MatrixGroup { dim: self.dim, elements, index, generators: self.generators.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Index of the representative, the least element of the class.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClassTable {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

impl ConjugacyClassTable {
    /// Orbits under conjugation by the generators, ordered by representative.
    pub fn new(group: &MatrixGroup) -> Self {
        let gens: Vec<(usize, usize)> =
            group.generator_indices().iter().map(|&s| (s, group.inverse(s))).collect();
        let mut class_of = vec![usize::MAX; group.order()];
        let mut classes = Vec::new();
        for start in 0..group.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut cursor = 0;
            while cursor < members.len() {
                let x = members[cursor];
                cursor += 1;
                for &(s, s_inv) in &gens {
                    let y = group.multiply(group.multiply(s_inv, x), s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass { representative: start, members });
        }
        ConjugacyClassTable { classes, class_of }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }
}

/// Centralizer of `w` in `group`, as a group in its own right.
pub fn centralizer(group: &MatrixGroup, w: &IntegerMatrix) -> Result<MatrixGroup> {
    if !group.contains(w) {
        return Err(Error::NotInGroup);
    }
    Ok(group.subgroup(centralizer_indices(group, w)))
}

/// Indices of the elements commuting with `w`.
pub fn centralizer_indices(group: &MatrixGroup, w: &IntegerMatrix) -> Vec<usize> {
    group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, c)| &(*c * w) == &(w * *c))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{ClassicalFamily, ClassicalForm, RootDatum};

    fn a2() -> MatrixGroup {
        RootDatum::sl_quotient(3, 1).unwrap().weyl_group(100).unwrap()
    }

    fn class_sizes(g: &MatrixGroup) -> Vec<usize> {
        let mut s: Vec<usize> = ConjugacyClassTable::new(g).classes().iter().map(|c| c.size()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn s3_classes() {
        let g = a2();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        assert_eq!(class_sizes(&g), vec![1, 2, 3]);
    }

    #[test]
    fn b2_has_five_classes() {
        let d = RootDatum::classical(ClassicalFamily::B, 2, ClassicalForm::Adjoint).unwrap();
        let g = d.weyl_group(100).unwrap();
        assert_eq!(g.order(), 8);
        let table = ConjugacyClassTable::new(&g);
        assert_eq!(table.len(), 5);
        // brute force: orbits under conjugation by every element
        for x in 0..g.order() {
            for y in 0..g.order() {
                let conj = g.multiply(g.multiply(g.inverse(y), x), y);
                assert_eq!(table.class_of(conj), table.class_of(x));
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = MatrixGroup::generate(&[], 0, 1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(ConjugacyClassTable::new(&g).len(), 1);
    }

    #[test]
    fn centralizers_in_s3() {
        let g = a2();
        let table = ConjugacyClassTable::new(&g);
        let mut orders: Vec<(usize, usize)> = table
            .classes()
            .iter()
            .map(|c| (c.size(), centralizer(&g, g.element(c.representative)).unwrap().order()))
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![(1, 6), (2, 3), (3, 2)]);
    }

    #[test]
    fn centralizer_rejects_outsider() {
        let g = a2();
        let outsider = -&IntegerMatrix::identity(2);
        assert!(!g.contains(&outsider));
        assert_eq!(centralizer(&g, &outsider).unwrap_err(), Error::NotInGroup);
    }

    #[test]
    fn infinite_order_hits_cap() {
        let shear = IntegerMatrix::from_rows(&[[1, 1], [0, 1]]);
        match MatrixGroup::generate(&[shear], 2, 10_000) {
            Err(Error::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 10_000);
                assert!(partial > cap);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn representatives_are_class_minima() {
        let d = RootDatum::classical(ClassicalFamily::D, 4, ClassicalForm::SimplyConnected).unwrap();
        let g = d.weyl_group(10_000).unwrap();
        let table = ConjugacyClassTable::new(&g);
        assert_eq!(table.classes().iter().map(|c| c.size()).sum::<usize>(), g.order());
        for c in table.classes() {
            assert_eq!(c.representative, c.members[0]);
            let cent = centralizer(&g, g.element(c.representative)).unwrap();
            assert_eq!(cent.order() * c.size(), g.order());
        }
        let reps: Vec<usize> = table.classes().iter().map(|c| c.representative).collect();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn inverse_transpose_preserves_structure() {
        let g = a2();
        let h = g.inverse_transpose();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(h.multiply(a, b), g.multiply(a, b));
            }
        }
    }
}
