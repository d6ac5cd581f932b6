//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use eorb_core::epoly::{BivariatePolynomial, SpaceDescriptor};
use eorb_core::lattice::{IntegerMatrix, RationalMatrix};
use eorb_core::orbifold::{
    direct_shift_oracle, duality_check_engine, fermionic_shift, mirror_check_engines, MirrorReport, OrbifoldEngine,
};
use eorb_core::root_data::{ClassicalFamily, ClassicalForm, RootDatum};
use eorb_core::sln::{
    closed_form_eorb, direct_sym_oracle, partition_count, sym_e_polynomial, tau, Partition, Surface,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

const CAP: usize = 1_000_000;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spaces() -> Vec<SpaceDescriptor> {
    vec![
        SpaceDescriptor::betti(),
        SpaceDescriptor::dolbeault(),
        SpaceDescriptor::abelian_surface(),
        SpaceDescriptor::mixed(),
    ]
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|m| n % m == 0).collect()
}

/// A datum together with the independently constructed datum its dual
/// should coincide with.
struct DualPair {
    datum: RootDatum,
    partner: RootDatum,
}

fn mirror_cases() -> Vec<DualPair> {
    use ClassicalFamily::*;
    use ClassicalForm::*;
    let mut out = Vec::new();
    for n in 2..=6 {
        for m in divisors(n) {
            out.push(DualPair {
                datum: RootDatum::sl_quotient(n, m).unwrap(),
                partner: RootDatum::sl_quotient(n, n / m).unwrap(),
            });
        }
    }
    for n in 2..=4 {
        for (a, b) in [((B, SimplyConnected), (C, Adjoint)), ((C, SimplyConnected), (B, Adjoint))] {
            out.push(DualPair {
                datum: RootDatum::classical(a.0, n, a.1).unwrap(),
                partner: RootDatum::classical(b.0, n, b.1).unwrap(),
            });
        }
    }
    for n in 3..=4 {
        for (a, b) in [(SimplyConnected, Adjoint), (Adjoint, SimplyConnected)] {
            out.push(DualPair {
                datum: RootDatum::classical(D, n, a).unwrap(),
                partner: RootDatum::classical(D, n, b).unwrap(),
            });
        }
    }
    out
}

/// Every built-in datum of rank at most `max_rank`.
fn builtins(max_rank: usize) -> Vec<RootDatum> {
    use ClassicalFamily::*;
    use ClassicalForm::*;
    let mut out = Vec::new();
    for n in 2..=max_rank + 1 {
        for m in divisors(n) {
            out.push(RootDatum::sl_quotient(n, m).unwrap());
        }
    }
    for n in 2..=max_rank {
        for fam in [B, C, D] {
            if fam == D && n < 3 {
                continue;
            }
            for form in [SimplyConnected, Adjoint] {
                out.push(RootDatum::classical(fam, n, form).unwrap());
            }
        }
    }
    out
}

/// Mirror reports for every case of criterion 1, computed once.
struct MirrorRun {
    label: String,
    dual_matches_partner: bool,
    reports: Vec<MirrorReport>,
}

fn run_mirror_cases() -> Result<Vec<MirrorRun>, String> {
    mirror_cases()
        .into_iter()
        .map(|case| {
            let dual = case.datum.dual();
            let dual_matches_partner = dual.equivalent(&case.partner, CAP).map_err(|e| e.to_string())?;
            let primal = OrbifoldEngine::new(&case.datum, CAP).map_err(|e| e.to_string())?;
            let dual_engine = OrbifoldEngine::new(&dual, CAP).map_err(|e| e.to_string())?;
            let reports = spaces()
                .iter()
                .map(|s| mirror_check_engines(&primal, &dual_engine, s).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MirrorRun { label: case.datum.label().to_string(), dual_matches_partner, reports })
        })
        .collect()
}

fn criterion_1(runs: &[MirrorRun]) -> Outcome {
    let mut pairs = 0;
    for run in runs {
        check(run.dual_matches_partner, || format!("dual of {} is not the expected partner datum", run.label))?;
        for r in &run.reports {
            let diff = &r.primal.total - &r.dual.total;
            check(diff.is_zero() && r.totals_equal, || {
                format!("{} on {}: E_orb differs by {diff}", run.label, r.primal.space)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} data x {} spaces, {pairs} equalities", runs.len(), spaces().len()))
}

fn criterion_2(runs: &[MirrorRun]) -> Outcome {
    let mut terms = 0;
    for run in runs {
        for r in &run.reports {
            check(r.classes_matched, || format!("{} on {}: classes not in bijection", run.label, r.primal.space))?;
            for p in &r.pair_diffs {
                check(p.difference.is_zero(), || {
                    format!("{} on {}: class {} differs by {}", run.label, r.primal.space, p.primal_class, p.difference)
                })?;
                terms += 1;
            }
        }
    }
    Ok(format!("{terms} matched class pairs"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in 1..=6usize {
        for m in divisors(n) {
            let datum = if n == 1 { RootDatum::trivial() } else { RootDatum::sl_quotient(n, m).unwrap() };
            let engine = OrbifoldEngine::new(&datum, CAP).map_err(|e| e.to_string())?;
            for (space, surface) in
                [(SpaceDescriptor::betti(), Surface::CStarSquared), (SpaceDescriptor::abelian_surface(), Surface::AbelianSurface)]
            {
                let general = engine.evaluate(&space).map_err(|e| e.to_string())?.total;
                let closed = closed_form_eorb(n as u32, m as u32, surface.circle_count(), &surface.e_polynomial())
                    .map_err(|e| e.to_string())?;
                check(general == closed, || {
                    format!("SL({n})/Z_{m} {}: engine {general} vs closed form {closed}", space.name())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (n, m, space) cases"))
}

/// Literal enumeration over all of `Z_g^d × Z_g^d`.
fn tau_brute_force(l: u64, m: u64, g: u64, d: u32) -> u64 {
    let total = g.pow(2 * d);
    let (mg, lg) = (m.gcd(&g), l.gcd(&g));
    (0..total)
        .filter(|&code| {
            let digits: Vec<u64> = (0..2 * d).map(|i| code / g.pow(i) % g).collect();
            let (r, s) = digits.split_at(d as usize);
            r.iter().all(|x| mg * x % g == 0)
                && s.iter().all(|x| lg * x % g == 0)
                && r.iter().zip(s).map(|(a, b)| a * b).sum::<u64>() % g == 0
        })
        .count() as u64
}

fn criterion_4() -> Outcome {
    for l in 1..=6u64 {
        for m in 1..=6u64 {
            for g in 1..=6u64 {
                for d in 0..=4u32 {
                    let t = tau(l, m, g, d);
                    check(t == tau(m, l, g, d), || format!("tau not symmetric at l={l} m={m} g={g} d={d}"))?;
                    if l.gcd(&g) == 1 {
                        check(t == m.gcd(&g).pow(d), || format!("tau({l},{m},{g},{d}) = {t} != (m,g)^d"))?;
                    }
                    if g.pow(2 * d) <= 4096 {
                        let b = tau_brute_force(l, m, g, d);
                        check(t == b, || format!("tau({l},{m},{g},{d}) = {t}, enumeration gives {b}"))?;
                    }
                }
            }
        }
    }
    let pinned = tau_brute_force(2, 2, 2, 2);
    check(pinned == 10 && tau(2, 2, 2, 2) == 10, || format!("tau_(2,2)^(2,2) = {pinned}"))?;
    Ok("symmetry, coprime case and tau_(2,2)^(2,2) = 10".into())
}

/// The permutation of coordinates induced by `w` on the ambient `Q^n` of an
/// `SL(n)` datum, fixing `(1, …, 1)`.
fn ambient_permutation(datum: &RootDatum, w: &IntegerMatrix) -> Vec<usize> {
    let n = datum.ambient_dim();
    let b = datum.ambient_basis();
    let mut frame = RationalMatrix::zeros(n, n);
    let image_cols = &b * &w.to_rational();
    let mut image = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n - 1 {
            frame[(i, j)] = b[(i, j)].clone();
            image[(i, j)] = image_cols[(i, j)].clone();
        }
        frame[(i, n - 1)] = BigRational::one();
        image[(i, n - 1)] = BigRational::one();
    }
    let a = &image * &frame.inverse().expect("frame is a basis");
    (0..n).map(|j| (0..n).find(|&i| a[(i, j)].is_one()).expect("permutation matrix")).collect()
}

fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    Partition::new(parts).unwrap()
}

fn criterion_5() -> Outcome {
    let mut elements = 0;
    for datum in builtins(4) {
        for w in datum.weyl_group(CAP).map_err(|e| e.to_string())?.elements() {
            let oracle = direct_shift_oracle(w).map_err(|e| e.to_string())?;
            check(fermionic_shift(w) == oracle, || format!("{}: shift of {w} is {} but oracle {oracle}", datum.label(), fermionic_shift(w)))?;
            elements += 1;
        }
    }
    for n in 2..=7usize {
        let datum = RootDatum::sl_quotient(n, 1).unwrap();
        let engine = OrbifoldEngine::new(&datum, CAP).map_err(|e| e.to_string())?;
        check(engine.class_count() as u64 == partition_count(n as u32), || format!("S_{n}: class count"))?;
        let mut seen = std::collections::HashSet::new();
        for class in engine.class_table().classes() {
            let w = engine.group().element(class.representative);
            let alpha = cycle_type(&ambient_permutation(&datum, w));
            check(fermionic_shift(w) == n as u32 - alpha.size(), || format!("S_{n}: cycle type {alpha} has shift {}", fermionic_shift(w)))?;
            seen.insert(alpha);
        }
        check(seen.len() as u64 == partition_count(n as u32), || format!("S_{n}: not every cycle type seen"))?;
    }
    let mut classes = 0;
    for n in 2..=6usize {
        for m in divisors(n) {
            let datum = RootDatum::sl_quotient(n, m).unwrap();
            classes += lemma_r(&datum)?;
        }
    }
    for datum in builtins(4).into_iter().filter(|d| !d.label().starts_with("SL")) {
        classes += lemma_r(&datum)?;
    }
    Ok(format!("{elements} elements against the oracle, S_2..S_7 cycle types, {classes} classes across duality"))
}

/// Shift of each class on `Λ` against the matched element of the separately
/// generated dual group acting on `Λ̂`.
fn lemma_r(datum: &RootDatum) -> Result<usize, String> {
    let engine = OrbifoldEngine::new(datum, CAP).map_err(|e| e.to_string())?;
    let dual_group = datum.dual().weyl_group(CAP).map_err(|e| e.to_string())?;
    for class in engine.class_table().classes() {
        let w = engine.group().element(class.representative);
        let w_dual = w.inverse_unimodular().unwrap().transpose();
        check(dual_group.contains(&w_dual), || format!("{}: {w_dual} missing from dual group", datum.label()))?;
        check(fermionic_shift(w) == fermionic_shift(&w_dual), || format!("{}: shift of {w} differs on the dual", datum.label()))?;
    }
    Ok(engine.class_count())
}

fn criterion_6() -> Outcome {
    let mut classes = 0;
    for datum in builtins(4) {
        let engine = OrbifoldEngine::new(&datum, CAP).map_err(|e| e.to_string())?;
        let report = duality_check_engine(&engine);
        for c in &report.classes {
            check(c.orders_equal && c.fixed_count_mismatches == 0, || {
                format!("{}: class {} has component groups {:?} vs {:?}", datum.label(), c.class_index, c.primal_pi0_divisors, c.dual_pi0_divisors)
            })?;
        }
        check(report.verdict, || format!("{}: duality verdict false", datum.label()))?;
        classes += report.classes.len();
    }
    Ok(format!("{classes} classes with all centralizer fixed counts equal"))
}

fn criterion_7() -> Outcome {
    let surfaces =
        [Surface::Point, Surface::CStar, Surface::CStarSquared, Surface::EllipticCurve, Surface::AbelianSurface];
    for s in surfaces {
        let e = s.e_polynomial();
        for a in 0..=5 {
            let gf = sym_e_polynomial(&e, a).map_err(|e| e.to_string())?;
            let avg = direct_sym_oracle(&e, a).map_err(|e| e.to_string())?;
            check(gf == avg, || format!("Sym^{a} of {s}: {gf} vs {avg}"))?;
        }
    }
    let sym2 = sym_e_polynomial(&Surface::CStar.e_polynomial(), 2).map_err(|e| e.to_string())?;
    let expected = BivariatePolynomial::from_int_terms(&[(2, 2, 1), (1, 1, -1)]);
    check(sym2 == expected, || format!("Sym^2(C^x) = {sym2}"))?;
    Ok("5 surfaces, a <= 5; Sym^2(C^x) = uv(uv - 1)".into())
}

/// `W = {±1}` on `Z`, `X = (C^×)² ⊗ Z`. Identity class: `c = 1` has trace
/// `(uv-1)²` on `H_c`, `c = -1` inverts both coordinates with trace `(uv+1)²`.
/// Class of `-1`: its fixed points are the four points of order two, fixed
/// by both centralizer elements, age 1.
fn sl2_betti_by_hand() -> BivariatePolynomial {
    let p = BivariatePolynomial::from_int_terms;
    let half = BigRational::new(1.into(), 2.into());
    let identity_class = (&p(&[(1, 1, 1), (0, 0, -1)]).pow(2) + &p(&[(1, 1, 1), (0, 0, 1)]).pow(2)).scale(&half);
    let minus_class = p(&[(0, 0, 4)]).shift(1, 1);
    &identity_class + &minus_class
}

fn criterion_8() -> Outcome {
    let pinned = BivariatePolynomial::from_int_terms(&[(2, 2, 1), (1, 1, 4), (0, 0, 1)]);
    let hand = sl2_betti_by_hand();
    let engine = OrbifoldEngine::new(&RootDatum::sl_quotient(2, 1).unwrap(), CAP)
        .and_then(|e| e.evaluate(&SpaceDescriptor::betti()))
        .map_err(|e| e.to_string())?
        .total;
    let closed = closed_form_eorb(2, 1, 2, &Surface::CStarSquared.e_polynomial()).map_err(|e| e.to_string())?;
    check(hand == pinned && engine == pinned && closed == pinned, || {
        format!("hand {hand}, engine {engine}, closed form {closed}")
    })?;
    Ok(format!("E_orb = {pinned} on all three paths"))
}

fn criterion_9(runs: &[MirrorRun]) -> Outcome {
    let one = BigRational::one();
    let mut totals = 0;
    for run in runs {
        for r in &run.reports {
            for side in [&r.primal, &r.dual] {
                check(side.total.has_integer_coefficients(), || format!("{} on {}: non-integral", side.datum, side.space))?;
                totals += 1;
                if side.space == "betti" || side.space == "abelian-surface" {
                    let at_one = side.total.evaluate(&one, &one);
                    check(at_one.is_integer() && at_one.is_positive(), || {
                        format!("{} on {}: value {at_one} at u = v = 1", side.datum, side.space)
                    })?;
                }
            }
        }
    }
    let factors = [BigRational::from_integer(2.into()), BigRational::new(BigInt::one(), 3.into())];
    let mut rescaled = 0;
    for case in mirror_cases().into_iter().filter(|c| c.datum.rank() <= 3) {
        let base = reports_for(&case.datum)?;
        for f in &factors {
            let scaled = case.datum.with_gram_scaled(f).map_err(|e| e.to_string())?;
            let again = reports_for(&scaled)?;
            check(again == base, || format!("{}: output changed under gram scaling by {f}", case.datum.label()))?;
            rescaled += 1;
        }
    }
    Ok(format!("{totals} integral totals, {rescaled} rescaled data unchanged"))
}

/// Everything the mirror check outputs, keyed by space.
fn reports_for(datum: &RootDatum) -> Result<BTreeMap<String, String>, String> {
    let primal = OrbifoldEngine::new(datum, CAP).map_err(|e| e.to_string())?;
    let dual = OrbifoldEngine::new(&datum.dual(), CAP).map_err(|e| e.to_string())?;
    spaces()
        .iter()
        .map(|s| {
            let r = mirror_check_engines(&primal, &dual, s).map_err(|e| e.to_string())?;
            let mut v = serde_json::to_value(&r).map_err(|e| e.to_string())?;
            // labels are the only field allowed to mention the datum
            v["primal"]["datum"] = serde_json::Value::Null;
            v["dual"]["datum"] = serde_json::Value::Null;
            Ok((s.name().to_string(), v.to_string()))
        })
        .collect()
}

fn main() {
    let start = Instant::now();
    let runs = run_mirror_cases();
    let mirror_secs = start.elapsed().as_secs_f64();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            1,
            "mirror equality of totals",
            Box::new(|| {
                criterion_1(runs.as_ref().map_err(Clone::clone)?).map(|d| format!("{d}, computed in {mirror_secs:.1}s"))
            }),
        ),
        (2, "term-by-term mirror equality", Box::new(|| criterion_2(runs.as_ref().map_err(Clone::clone)?))),
        (3, "closed form equals general engine", Box::new(criterion_3)),
        (4, "tau properties", Box::new(criterion_4)),
        (5, "fermionic shifts", Box::new(criterion_5)),
        (6, "component-group duality", Box::new(criterion_6)),
        (7, "symmetric-product oracle", Box::new(criterion_7)),
        (8, "pinned SL(2) Betti value", Box::new(criterion_8)),
        (9, "integrality and gram invariance", Box::new(|| criterion_9(runs.as_ref().map_err(Clone::clone)?))),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {n}: {name} ({detail}) [{:.1}s]", t.elapsed().as_secs_f64()),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {n}: {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
