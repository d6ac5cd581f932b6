//! Closed form for `E_orb((A ⊗ Λ)/S_n)` when `Λ` is the coweight lattice of
//! `SL(n)/Z_m`:
//!
//! ```text
//! E_orb = (1/E(A)) Σ_{α ∈ P(n)} τ_{l,m}^{g(α),d} (uv)^{n-|α|} Π_i E(Sym^{α_i} A),   l = n/m
//! ```
//!
//! where `α_i` counts the parts of size `i`, `|α| = Σ α_i`, `g(α)` is the gcd
//! of the part sizes and `d` is the number of `U(1)` factors of `A`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::epoly::BivariatePolynomial;
use crate::error::{Error, Result};

/// A partition of `n`, stored as its parts in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive and nonempty".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `α_i` for `i = 1..=n`, at index `i - 1`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut alpha = vec![0; self.n() as usize];
        for &p in &self.parts {
            alpha[p as usize - 1] += 1;
        }
        alpha
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `|α|`, the number of parts.
    pub fn size(&self) -> u32 {
        self.parts.len() as u32
    }

    /// `g(α)`: gcd of the part sizes.
    pub fn gcd(&self) -> u32 {
        self.parts.iter().fold(0, |g, &p| g.gcd(&p))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse lexicographic order: `(n), (n-1,1), …, (1^n)`.
pub fn partitions(n: u32) -> Vec<Partition> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![n];
    loop {
        out.push(Partition { parts: cur.clone() });
        // drop trailing ones, decrement the last larger part, refill greedily
        let ones = cur.iter().rev().take_while(|&&p| p == 1).count() as u32;
        cur.truncate(cur.len() - ones as usize);
        let Some(last) = cur.pop() else { break };
        let k = last - 1;
        cur.push(k);
        let mut rest = ones + 1;
        while rest > 0 {
            let p = rest.min(k);
            cur.push(p);
            rest -= p;
        }
    }
    out
}

/// `τ_{l,m}^{g,d} = #{(r, s) ∈ Z_g^d × Z_g^d : (m,g)r = 0 = (l,g)s, Σ rⱼsⱼ ≡ 0 mod g}`.
pub fn tau(l: u64, m: u64, g: u64, d: u32) -> u64 {
    assert!(g >= 1, "tau needs g >= 1");
    let rs = torsion_vectors(g, m.gcd(&g), d);
    let ss = torsion_vectors(g, l.gcd(&g), d);
    rs.par_iter()
        .map(|r| {
            ss.iter().filter(|s| r.iter().zip(s.iter()).map(|(a, b)| a * b).sum::<u64>() % g == 0).count() as u64
        })
        .sum()
}

/// Vectors in `Z_g^d` killed by `k`, where `k | g`: entries are multiples of `g/k`.
fn torsion_vectors(g: u64, k: u64, d: u32) -> Vec<Vec<u64>> {
    let step = g / k;
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..k).map(move |i| {
                    let mut w = v.clone();
                    w.push(i * step);
                    w
                })
            })
            .collect();
    }
    out
}

fn binomial(n: &BigInt, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - BigInt::from(i)) / BigInt::from(i + 1))
}

/// `E(Sym^a A)`: the coefficient of `t^a` in `Π_{p,q} (1 - u^p v^q t)^{-e^{p,q}}`
/// with `e^{p,q}` the coefficients of `E_A`.
pub fn sym_e_polynomial(e_a: &BivariatePolynomial, a: u32) -> Result<BivariatePolynomial> {
    if !e_a.has_integer_coefficients() {
        return Err(Error::NonIntegral(format!("E(A) = {e_a} must have integer coefficients")));
    }
    // series[k] is the coefficient of t^k, truncated at t^a
    let mut series = vec![BivariatePolynomial::zero(); a as usize + 1];
    series[0] = BivariatePolynomial::one();
    for (&(p, q), c) in e_a.terms() {
        let e = c.to_integer();
        let factor: Vec<BivariatePolynomial> = (0..=a)
            .map(|k| {
                let coeff = if e.is_positive() {
                    // (1 - x t)^{-e} = Σ C(e+k-1, k) x^k t^k
                    binomial(&(&e + BigInt::from(k) - 1), k)
                } else {
                    // (1 - x t)^{|e|} = Σ C(|e|, k) (-x)^k t^k
                    let b = binomial(&e.abs(), k);
                    if k % 2 == 0 { b } else { -b }
                };
                BivariatePolynomial::monomial(BigRational::from_integer(coeff), p * k, q * k)
            })
            .collect();
        series = (0..=a as usize)
            .map(|k| (0..=k).map(|j| &series[j] * &factor[k - j]).sum())
            .collect();
    }
    Ok(series.swap_remove(a as usize))
}

/// Largest `a` accepted by [`direct_sym_oracle`].
pub const ORACLE_MAX_DEGREE: u32 = 5;

/// `(1/a!) Σ_{σ ∈ S_a} Π_{cycles of σ} E_A(u^len, v^len)`, by enumerating `S_a`.
pub fn direct_sym_oracle(e_a: &BivariatePolynomial, a: u32) -> Result<BivariatePolynomial> {
    if a > ORACLE_MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("direct oracle enumerates S_a only for a <= {ORACLE_MAX_DEGREE}")));
    }
    let perms = permutations(a as usize);
    let sum: BivariatePolynomial = perms
        .iter()
        .map(|sigma| {
            cycle_lengths(sigma)
                .into_iter()
                .fold(BivariatePolynomial::one(), |acc, len| &acc * &e_a.substitute_powers(len))
        })
        .sum();
    Ok(sum.scale(&BigRational::new(BigInt::one(), BigInt::from(perms.len()))))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn cycle_lengths(sigma: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for start in 0..sigma.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = sigma[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// The closed-form `E_orb((A ⊗ Λ)/S_n)` for `Λ` the coweight lattice of
/// `SL(n)/Z_m` and `A` with E-polynomial `e_a` and `d` circle factors.
pub fn closed_form_eorb(n: u32, m: u32, d: u32, e_a: &BivariatePolynomial) -> Result<BivariatePolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if m == 0 || n % m != 0 {
        return Err(Error::InvalidArgument(format!("m = {m} does not divide n = {n}")));
    }
    let l = n / m;
    let sym: Vec<BivariatePolynomial> = (0..=n).map(|a| sym_e_polynomial(e_a, a)).collect::<Result<_>>()?;
    let sum: BivariatePolynomial = partitions(n)
        .par_iter()
        .map(|alpha| {
            let t = tau(l.into(), m.into(), alpha.gcd().into(), d);
            let shift = n - alpha.size();
            alpha
                .multiplicities()
                .iter()
                .fold(BivariatePolynomial::one(), |acc, &k| &acc * &sym[k as usize])
                .shift(shift, shift)
                .scale_int(&BigInt::from(t))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    sum.exact_divide(e_a)
}

/// Built-in choices of the abelian group `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Point,
    CStar,
    /// `C^× × C^×`, the Betti case.
    CStarSquared,
    EllipticCurve,
    AbelianSurface,
    /// `T^*E = E × C`, the Dolbeault case.
    Dolbeault,
}

impl Surface {
    pub const ALL: [Surface; 6] = [
        Surface::Point,
        Surface::CStar,
        Surface::CStarSquared,
        Surface::EllipticCurve,
        Surface::AbelianSurface,
        Surface::Dolbeault,
    ];

    pub fn e_polynomial(self) -> BivariatePolynomial {
        let p = BivariatePolynomial::from_int_terms;
        let cstar = p(&[(1, 1, 1), (0, 0, -1)]);
        let curve = p(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]);
        match self {
            Surface::Point => BivariatePolynomial::one(),
            Surface::CStar => cstar,
            Surface::CStarSquared => cstar.pow(2),
            Surface::EllipticCurve => curve,
            Surface::AbelianSurface => curve.pow(2),
            Surface::Dolbeault => curve.shift(1, 1),
        }
    }

    /// Number of `U(1)` factors `d`.
    pub fn circle_count(self) -> u32 {
        match self {
            Surface::Point => 0,
            Surface::CStar => 1,
            Surface::CStarSquared | Surface::EllipticCurve | Surface::Dolbeault => 2,
            Surface::AbelianSurface => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Surface::Point => "point",
            Surface::CStar => "cstar",
            Surface::CStarSquared => "betti",
            Surface::EllipticCurve => "elliptic",
            Surface::AbelianSurface => "abelian",
            Surface::Dolbeault => "dolbeault",
        }
    }
}

impl FromStr for Surface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Surface::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown surface '{s}'")))
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of partitions of `n` by the pentagonal-number recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as i64;
    let mut p = vec![0i64; n as usize + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[i as usize] += sign * p[(i - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                p[i as usize] += sign * p[(i - g2) as usize];
            }
            k += 1;
        }
    }
    p[n as usize].to_u64().expect("partition counts are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_int_terms(terms)
    }

    #[test]
    fn partitions_order_and_counts() {
        let p2: Vec<Vec<u32>> = partitions(2).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p2, vec![vec![2], vec![1, 1]]);
        let p4: Vec<String> = partitions(4).iter().map(ToString::to_string).collect();
        assert_eq!(p4, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(10).len(), 42);
        for n in 1..=15 {
            assert_eq!(partitions(n).len() as u64, partition_count(n));
            assert!(partitions(n).iter().all(|p| p.n() == n));
        }
    }

    #[test]
    fn partition_statistics() {
        let p = Partition::new(vec![2, 4, 2]).unwrap();
        assert_eq!(p.parts(), &[4, 2, 2]);
        assert_eq!(p.multiplicities(), vec![0, 2, 0, 1, 0, 0, 0, 0]);
        assert_eq!((p.n(), p.size(), p.gcd()), (8, 3, 2));
        assert!(Partition::new(vec![]).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(2, 2, 2, 2), 10);
        assert_eq!(tau(1, 1, 1, 3), 1);
        assert_eq!(tau(3, 2, 2, 2), 4);
        assert_eq!(tau(5, 5, 5, 0), 1);
    }

    #[test]
    fn sym_examples() {
        let cstar = Surface::CStar.e_polynomial();
        assert_eq!(sym_e_polynomial(&cstar, 0).unwrap(), BivariatePolynomial::one());
        assert_eq!(sym_e_polynomial(&cstar, 1).unwrap(), cstar);
        assert_eq!(sym_e_polynomial(&cstar, 2).unwrap(), poly(&[(2, 2, 1), (1, 1, -1)]));
        let two = Surface::CStarSquared.e_polynomial();
        let expected = &two * &poly(&[(2, 2, 1), (0, 0, 1)]);
        assert_eq!(sym_e_polynomial(&two, 2).unwrap(), expected);
        assert_eq!(direct_sym_oracle(&two, 2).unwrap(), expected);
        assert!(direct_sym_oracle(&two, 6).is_err());
    }

    #[test]
    fn sym_matches_oracle() {
        for s in Surface::ALL {
            let e = s.e_polynomial();
            for a in 0..=ORACLE_MAX_DEGREE {
                assert_eq!(sym_e_polynomial(&e, a).unwrap(), direct_sym_oracle(&e, a).unwrap(), "{s} a={a}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let betti = Surface::CStarSquared.e_polynomial();
        let expected = poly(&[(2, 2, 1), (1, 1, 4), (0, 0, 1)]);
        assert_eq!(closed_form_eorb(2, 1, 2, &betti).unwrap(), expected);
        assert_eq!(closed_form_eorb(2, 2, 2, &betti).unwrap(), expected);
        for s in Surface::ALL {
            assert_eq!(closed_form_eorb(1, 1, s.circle_count(), &s.e_polynomial()).unwrap(), BivariatePolynomial::one());
        }
        assert!(closed_form_eorb(4, 3, 2, &betti).is_err());
    }

    #[test]
    fn surface_names_roundtrip() {
        for s in Surface::ALL {
            assert_eq!(s.name().parse::<Surface>().unwrap(), s);
        }
        assert!("torus".parse::<Surface>().is_err());
    }

    proptest! {
        #[test]
        fn tau_is_symmetric(l in 1u64..=6, m in 1u64..=6, g in 1u64..=6, d in 0u32..=3) {
            prop_assert_eq!(tau(l, m, g, d), tau(m, l, g, d));
        }

        #[test]
        fn tau_coprime_case(l in 1u64..=6, m in 1u64..=6, g in 1u64..=6, d in 0u32..=3) {
            prop_assume!(l.gcd(&g) == 1);
            prop_assert_eq!(tau(l, m, g, d), m.gcd(&g).pow(d));
        }
    }
}
