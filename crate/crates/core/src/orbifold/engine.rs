use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::shift::{fermionic_shift, space_shift};
use crate::epoly::charpoly::characteristic_polynomial;
use crate::epoly::{factor_character_from_charpoly, BivariatePolynomial, LatticeSide, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::lattice::{fixed_sublattice, restrict_to_sublattice, CokernelTorsion, FiniteAbelianGroup, IntegerMatrix};
use crate::root_data::RootDatum;
use crate::weyl::{centralizer_indices, ConjugacyClassTable, MatrixGroup};

/// Fixed locus of `w` on the compact torus `T = (Λ ⊗ R)/Λ`: the identity
/// component is spanned by `Λ^w`, the component group is `Tor(Λ/(w-1)Λ)`.
#[derive(Clone, Debug)]
pub struct FixedPointData {
    pub w: IntegerMatrix,
    pub fixed_basis: IntegerMatrix,
    pub pi0: FiniteAbelianGroup,
    pub shift: u32,
    torsion: CokernelTorsion,
}

impl FixedPointData {
    pub fn new(w: &IntegerMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::Dimension(format!("{w} is not square")));
        }
        let torsion = CokernelTorsion::new(&w.minus_identity())?;
        Ok(FixedPointData {
            w: w.clone(),
            fixed_basis: fixed_sublattice(w),
            pi0: torsion.group().clone(),
            shift: fermionic_shift(w),
            torsion,
        })
    }

    /// Characteristic polynomial of `c` on `Λ^w` and the number of
    /// components of `T^w` that `c` fixes.
    pub fn sample(&self, c: &IntegerMatrix) -> Result<(Vec<BigInt>, BigInt)> {
        let restricted = restrict_to_sublattice(c, &self.fixed_basis)
            .map_err(|_| Error::NotCentralizing(format!("{c} does not preserve the fixed sublattice")))?;
        let fixed = self.torsion.automorphism(c)?.fixed_count();
        Ok((characteristic_polynomial(&restricted), fixed))
    }
}

/// Fixed-point data of `w` acting on the lattice of `datum`.
pub fn fixed_point_data(datum: &RootDatum, w: &IntegerMatrix) -> Result<FixedPointData> {
    if w.rows() != datum.rank() || w.cols() != datum.rank() {
        return Err(Error::Dimension(format!("expected a {0}x{0} matrix", datum.rank())));
    }
    FixedPointData::new(w)
}

/// What a centralizer element contributes, up to the choice of space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SampleKey {
    primal: (Vec<BigInt>, BigInt),
    dual: (Vec<BigInt>, BigInt),
}

impl SampleKey {
    fn side(&self, side: LatticeSide) -> &(Vec<BigInt>, BigInt) {
        match side {
            LatticeSide::Primal => &self.primal,
            LatticeSide::Dual => &self.dual,
        }
    }

    /// `Π_factors Fix(c, π₀)^{d(kind)} · E-character of c on A_kind ⊗ Λ^w`.
    fn bracket(&self, space: &SpaceDescriptor) -> BivariatePolynomial {
        space.factors().iter().fold(BivariatePolynomial::one(), |acc, f| {
            let (charpoly, fixed) = self.side(f.side);
            let components = num_traits::pow(fixed.clone(), f.kind.circle_count() as usize);
            &acc * &factor_character_from_charpoly(f.kind, charpoly).scale_int(&components)
        })
    }
}

#[derive(Clone, Debug)]
struct ClassData {
    rep: usize,
    size: usize,
    centralizer_order: usize,
    primal: FixedPointData,
    dual: FixedPointData,
    samples: Vec<(SampleKey, usize)>,
}

/// One term `Ē_{C(w)}(X^w)·(uv)^{F(w)}` of the orbifold sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassContribution {
    pub class_index: usize,
    pub class_rep: IntegerMatrix,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub shift: u32,
    pub pi0_divisors: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_pi0_divisors: Option<Vec<u64>>,
    pub average_poly: BivariatePolynomial,
    pub weighted_poly: BivariatePolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldReport {
    pub datum: String,
    pub space: String,
    pub group_order: usize,
    pub classes: Vec<ClassContribution>,
    pub total: BivariatePolynomial,
}

fn divisors_u64(g: &FiniteAbelianGroup) -> Vec<u64> {
    g.divisors().iter().map(|d| d.to_u64().expect("component group divisor fits in u64")).collect()
}

/// Average of the brackets over the centralizer, from `(sample, multiplicity)` pairs.
fn average_over(space: &SpaceDescriptor, samples: &[(SampleKey, usize)], order: usize) -> BivariatePolynomial {
    let sum: BivariatePolynomial =
        samples.iter().map(|(key, count)| key.bracket(space).scale_int(&BigInt::from(*count))).sum();
    sum.scale(&BigRational::new(1.into(), BigInt::from(order)))
}

fn collect_samples(
    primal: &FixedPointData,
    dual: &FixedPointData,
    cs: impl Iterator<Item = (IntegerMatrix, IntegerMatrix)>,
) -> Result<Vec<(SampleKey, usize)>> {
    let mut counts: HashMap<SampleKey, usize> = HashMap::new();
    let mut order: Vec<SampleKey> = Vec::new();
    for (c, c_dual) in cs {
        let key = SampleKey { primal: primal.sample(&c)?, dual: dual.sample(&c_dual)? };
        let n = counts.entry(key.clone()).or_insert(0);
        if *n == 0 {
            order.push(key);
        }
        *n += 1;
    }
    Ok(order
        .into_iter()
        .map(|k| {
            let n = counts[&k];
            (k, n)
        })
        .collect())
}

fn inverse_transpose(m: &IntegerMatrix) -> Result<IntegerMatrix> {
    Ok(m.inverse_unimodular()?.transpose())
}

/// Contribution of the class of `w`, given the full centralizer `C(w)`.
/// Dual-side factors see `w` and `c` through `g ↦ (g⁻¹)ᵀ`. The ambient group
/// is not known here, so `class_size` is reported as 0.
pub fn class_contribution(
    datum: &RootDatum,
    space: &SpaceDescriptor,
    w: &IntegerMatrix,
    centralizer: &[IntegerMatrix],
) -> Result<ClassContribution> {
    let primal = fixed_point_data(datum, w)?;
    let dual = FixedPointData::new(&inverse_transpose(w)?)?;
    if centralizer.is_empty() {
        return Err(Error::InvalidArgument("centralizer must contain the identity".into()));
    }
    let pairs = centralizer.iter().map(|c| Ok((c.clone(), inverse_transpose(c)?))).collect::<Result<Vec<_>>>()?;
    let samples = collect_samples(&primal, &dual, pairs.into_iter())?;
    let data = ClassData {
        rep: 0,
        size: 0,
        centralizer_order: centralizer.len(),
        primal,
        dual,
        samples,
    };
    contribution(&data, space, 0)
}

fn contribution(data: &ClassData, space: &SpaceDescriptor, class_index: usize) -> Result<ClassContribution> {
    let shift = space_shift(space, &data.primal.w)?;
    let average = average_over(space, &data.samples, data.centralizer_order);
    let weighted = average.shift(shift, shift);
    Ok(ClassContribution {
        class_index,
        class_rep: data.primal.w.clone(),
        class_size: data.size,
        centralizer_order: data.centralizer_order,
        shift,
        pi0_divisors: divisors_u64(&data.primal.pi0),
        dual_pi0_divisors: space.uses_side(LatticeSide::Dual).then(|| divisors_u64(&data.dual.pi0)),
        average_poly: average,
        weighted_poly: weighted,
    })
}

/// Group, classes and per-class fixed-point samples for one datum, shared by
/// every space evaluated on it.
#[derive(Clone, Debug)]
pub struct OrbifoldEngine {
    datum: RootDatum,
    group: MatrixGroup,
    dual_action: MatrixGroup,
    table: ConjugacyClassTable,
    classes: Vec<ClassData>,
}

impl OrbifoldEngine {
    pub fn new(datum: &RootDatum, cap: usize) -> Result<Self> {
        let group = datum.weyl_group(cap)?;
        let dual_action = group.inverse_transpose();
        let table = ConjugacyClassTable::new(&group);
        let classes = table
            .classes()
            .par_iter()
            .map(|class| {
                let w = group.element(class.representative);
                let primal = FixedPointData::new(w)?;
                let dual = FixedPointData::new(dual_action.element(class.representative))?;
                if primal.shift != dual.shift {
                    return Err(Error::InvalidDatum(format!("shift of {w} differs on the dual lattice")));
                }
                let cent = centralizer_indices(&group, w);
                let samples = collect_samples(
                    &primal,
                    &dual,
                    cent.iter().map(|&i| (group.element(i).clone(), dual_action.element(i).clone())),
                )?;
                Ok(ClassData {
                    rep: class.representative,
                    size: class.size(),
                    centralizer_order: cent.len(),
                    primal,
                    dual,
                    samples,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbifoldEngine { datum: datum.clone(), group, dual_action, table, classes })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    /// W acting on the dual lattice, indexed like [`Self::group`].
    pub fn dual_action(&self) -> &MatrixGroup {
        &self.dual_action
    }

    pub fn class_table(&self) -> &ConjugacyClassTable {
        &self.table
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Group index of the representative of class `class`.
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class].rep
    }

    pub fn fixed_point_data(&self, class: usize) -> (&FixedPointData, &FixedPointData) {
        (&self.classes[class].primal, &self.classes[class].dual)
    }

    /// For every centralizer element of class `class`: fixed counts on the
    /// `Λ` and `Λ̂` component groups, with multiplicities.
    pub fn fixed_count_pairs(&self, class: usize) -> Vec<(BigInt, BigInt, usize)> {
        self.classes[class].samples.iter().map(|(k, n)| (k.primal.1.clone(), k.dual.1.clone(), *n)).collect()
    }

    /// The orbifold E-polynomial with its per-class terms. Fails if the total
    /// has a non-integer coefficient.
    pub fn evaluate(&self, space: &SpaceDescriptor) -> Result<OrbifoldReport> {
        let classes = self
            .classes
            .par_iter()
            .enumerate()
            .map(|(i, data)| contribution(data, space, i))
            .collect::<Result<Vec<_>>>()?;
        let total: BivariatePolynomial = classes.iter().map(|c| c.weighted_poly.clone()).sum();
        if !total.has_integer_coefficients() {
            return Err(Error::NonIntegral(format!("E_orb of {} on {} is {total}", self.datum.label(), space.name())));
        }
        Ok(OrbifoldReport {
            datum: self.datum.label().to_string(),
            space: space.name().to_string(),
            group_order: self.group.order(),
            classes,
            total,
        })
    }
}

/// `E_orb((A ⊗ Λ)/W) = Σ_{w} Ē_{C(w)}(X^w)·(uv)^{F(w)}` over conjugacy classes.
pub fn orbifold_e_polynomial(datum: &RootDatum, space: &SpaceDescriptor, cap: usize) -> Result<OrbifoldReport> {
    OrbifoldEngine::new(datum, cap)?.evaluate(space)
}
