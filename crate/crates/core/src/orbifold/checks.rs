use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::engine::{OrbifoldEngine, OrbifoldReport};
use crate::epoly::{BivariatePolynomial, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::root_data::RootDatum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairDiff {
    pub primal_class: usize,
    pub dual_class: usize,
    pub primal_rep: IntegerMatrix,
    pub dual_rep: IntegerMatrix,
    pub difference: BivariatePolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorReport {
    pub primal: OrbifoldReport,
    pub dual: OrbifoldReport,
    pub pair_diffs: Vec<PairDiff>,
    /// `w ↦ (w⁻¹)ᵀ` is a bijection between the two class lists.
    pub classes_matched: bool,
    pub totals_equal: bool,
    pub term_by_term_equal: bool,
    pub verdict: bool,
}

/// Compares `E_orb` of `(datum, space)` with `(dual datum, space)`, the
/// factor sides read relative to each datum. The dual group is generated
/// from the dual datum on its own; classes are then matched by `w ↦ (w⁻¹)ᵀ`.
pub fn mirror_check(datum: &RootDatum, space: &SpaceDescriptor, cap: usize) -> Result<MirrorReport> {
    let (primal, dual) =
        rayon::join(|| OrbifoldEngine::new(datum, cap), || OrbifoldEngine::new(&datum.dual(), cap));
    mirror_check_engines(&primal?, &dual?, space)
}

/// [`mirror_check`] on engines built beforehand, e.g. to reuse them across spaces.
pub fn mirror_check_engines(
    primal: &OrbifoldEngine,
    dual: &OrbifoldEngine,
    space: &SpaceDescriptor,
) -> Result<MirrorReport> {
    let primal_report = primal.evaluate(space)?;
    let dual_report = dual.evaluate(space)?;
    let mut pair_diffs = Vec::with_capacity(primal.class_count());
    let mut hit = vec![false; dual.class_count()];
    let mut classes_matched = primal.class_count() == dual.class_count();
    for (i, term) in primal_report.classes.iter().enumerate() {
        let image = primal.dual_action().element(primal.representative(i));
        let j = match dual.group().index_of(image) {
            Some(idx) => dual.class_table().class_of(idx),
            None => {
                return Err(Error::InvalidDatum(format!(
                    "{image} is not in the Weyl group of {}",
                    dual.datum().label()
                )))
            }
        };
        classes_matched &= !std::mem::replace(&mut hit[j], true);
        let other = &dual_report.classes[j];
        pair_diffs.push(PairDiff {
            primal_class: i,
            dual_class: j,
            primal_rep: term.class_rep.clone(),
            dual_rep: other.class_rep.clone(),
            difference: &term.weighted_poly - &other.weighted_poly,
        });
    }
    let totals_equal = primal_report.total == dual_report.total;
    let term_by_term_equal = pair_diffs.iter().all(|p| p.difference.is_zero());
    Ok(MirrorReport {
        verdict: classes_matched && totals_equal && term_by_term_equal,
        primal: primal_report,
        dual: dual_report,
        pair_diffs,
        classes_matched,
        totals_equal,
        term_by_term_equal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityClassRecord {
    pub class_index: usize,
    pub class_rep: IntegerMatrix,
    pub centralizer_order: usize,
    pub primal_pi0_divisors: Vec<u64>,
    pub dual_pi0_divisors: Vec<u64>,
    pub primal_shift: u32,
    pub dual_shift: u32,
    pub orders_equal: bool,
    /// Centralizer elements whose fixed-component counts differ between sides.
    pub fixed_count_mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub datum: String,
    pub classes: Vec<DualityClassRecord>,
    pub verdict: bool,
}

fn to_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|d| d.to_u64().expect("divisor fits in u64")).collect()
}

/// For every class and every element of its centralizer, compares the
/// permutation actions on `π₀` computed from `Λ` and from `Λ̂`.
pub fn duality_check(datum: &RootDatum, cap: usize) -> Result<DualityReport> {
    Ok(duality_check_engine(&OrbifoldEngine::new(datum, cap)?))
}

pub fn duality_check_engine(engine: &OrbifoldEngine) -> DualityReport {
    let classes: Vec<DualityClassRecord> = (0..engine.class_count())
        .map(|i| {
            let (p, d) = engine.fixed_point_data(i);
            let pairs = engine.fixed_count_pairs(i);
            DualityClassRecord {
                class_index: i,
                class_rep: p.w.clone(),
                centralizer_order: pairs.iter().map(|(_, _, n)| n).sum(),
                primal_pi0_divisors: to_u64(p.pi0.divisors()),
                dual_pi0_divisors: to_u64(d.pi0.divisors()),
                primal_shift: p.shift,
                dual_shift: d.shift,
                orders_equal: p.pi0.order() == d.pi0.order(),
                fixed_count_mismatches: pairs.iter().filter(|(a, b, _)| a != b).map(|(_, _, n)| n).sum(),
            }
        })
        .collect();
    let verdict =
        classes.iter().all(|c| c.orders_equal && c.primal_shift == c.dual_shift && c.fixed_count_mismatches == 0);
    DualityReport { datum: engine.datum().label().to_string(), classes, verdict }
}
