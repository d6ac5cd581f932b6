//! Orbifold E-polynomials of `(A ⊗ Λ)/W` and the mirror comparisons between
//! a datum and its dual.
//!
//! For a class `{w}` with centralizer `C(w)`, the fixed locus of `w` on each
//! factor `A_kind ⊗ Λ` is `|π₀|^{d(kind)}` translates of `A_kind ⊗ Λ^w`, with
//! `π₀ = Tor(Λ/(w-1)Λ)`. An element `c ∈ C(w)` permutes the translates and
//! acts on each one it fixes as on the identity component, so the trace of
//! `c` is `Fix(c, π₀)^{d(kind)}` times the character of `c` on `Λ^w`.

mod checks;
mod engine;
mod shift;

pub use checks::{
    duality_check, duality_check_engine, mirror_check, mirror_check_engines, DualityClassRecord, DualityReport,
    MirrorReport, PairDiff,
};
pub use engine::{
    class_contribution, fixed_point_data, orbifold_e_polynomial, ClassContribution, FixedPointData, OrbifoldEngine,
    OrbifoldReport,
};
pub use shift::{direct_shift_oracle, fermionic_shift, space_shift};

/// Default bound on Weyl group size.
pub const DEFAULT_CAP: usize = 10_000_000;
