//! Cellular complexes of the lens spaces L(p,q), their torsions, and the
//! classification predicates.
//!
//! The complex has one cell `e_j` per dimension. Cell `e_j` sits in cochain
//! degree `3 - j`, so the differentials read
//!
//! ```text
//! e3 --(1 - t^r)--> e2 --(1 + t + ... + t^(p-1))--> e1 --(1 - t)--> e0
//! ```
//!
//! in degrees 0 to 3, with `qr ≡ 1 (mod p)`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::chaincomplex::BasedComplex;
use crate::cyclofield::{CycloNum, Representation, TorsionClass};
use crate::error::{Error, Result};
use crate::grouprings::{GroupRingElem, GroupSpec};
use crate::matrix::{Matrix, Ring};
use crate::torsion::reidemeister_torsion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LensParams {
    p: i64,
    q: i64,
}

impl LensParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidGroup(format!("lens space order must be at least 2, got {p}")));
        }
        if q.gcd(&p) != 1 {
            return Err(Error::NotCoprime { q, p });
        }
        Ok(Self { p, q: q.rem_euclid(p) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `r` with `qr ≡ 1 (mod p)`.
    pub fn r(&self) -> i64 {
        modp_inverse(self.q, self.p).expect("q is a unit mod p")
    }
}

impl fmt::Display for LensParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// The `r` in `1..p` with `qr ≡ 1 (mod p)`; `r = 0` only for `p = 1`.
pub fn modp_inverse(q: i64, p: i64) -> Result<i64> {
    if p < 1 {
        return Err(Error::InvalidGroup(format!("modulus must be positive, got {p}")));
    }
    let e = q.rem_euclid(p).extended_gcd(&p);
    if e.gcd != 1 {
        return Err(Error::NotCoprime { q, p });
    }
    Ok(e.x.rem_euclid(p))
}

/// The lens complex with `t` the generator of `factor` raised to `twist`.
pub fn lens_complex_in(spec: &GroupSpec, factor: usize, twist: i64, params: &LensParams) -> Result<BasedComplex> {
    let order = *spec
        .factor_orders()
        .get(factor)
        .ok_or_else(|| Error::InvalidGroup(format!("{spec} has no factor {factor}")))?;
    if order as i64 != params.p {
        return Err(Error::LensModulusMismatch(order as i64, params.p));
    }
    let t_pow = |k: i64| -> Result<GroupRingElem> { Ok(GroupRingElem::from_word(spec.letter(factor, twist * k)?)) };
    let one_minus = |k: i64| -> Result<GroupRingElem> { Ok(GroupRingElem::one().add(&t_pow(k)?.neg())) };
    let mut norm = GroupRingElem::zero();
    for k in 0..params.p {
        norm = spec.add(&norm, &t_pow(k)?);
    }
    let m1 = |x| Matrix::from_vec(1, 1, vec![x]);
    let labels = ["e3", "e2", "e1", "e0"].iter().map(|s| vec![s.to_string()]).collect();
    let c = BasedComplex::new(
        spec.clone(),
        0,
        vec![1; 4],
        vec![m1(one_minus(params.r())?), m1(norm), m1(one_minus(1)?)],
        Some(labels),
    )?;
    Ok(c)
}

/// The cellular complex of L(p,q) over Z[Z/p].
pub fn lens_complex(params: &LensParams) -> BasedComplex {
    lens_complex_in(&GroupSpec::Cyclic(params.p as u64), 0, 1, params).expect("cyclic lens complex")
}

/// Reidemeister torsion of L(p,q) under `t ↦ ζ_p^d`.
pub fn lens_torsion(params: &LensParams, d: i64) -> Result<TorsionClass> {
    let rep = Representation::new(GroupSpec::Cyclic(params.p as u64), params.p as u64, vec![d])?;
    reidemeister_torsion(&lens_complex(params), &rep)
}

fn same_modulus(a: &LensParams, b: &LensParams) -> Result<()> {
    if a.p != b.p {
        return Err(Error::LensModulusMismatch(a.p, b.p));
    }
    Ok(())
}

/// `q q' ≡ sign · m² (mod p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyWitness {
    pub m: i64,
    pub sign: i64,
}

pub fn homotopy_equivalent(a: &LensParams, b: &LensParams) -> Result<Option<HomotopyWitness>> {
    same_modulus(a, b)?;
    let p = a.p;
    let prod = (a.q * b.q).rem_euclid(p);
    for m in 0..p {
        for sign in [1, -1] {
            if (sign * m * m).rem_euclid(p) == prod {
                return Ok(Some(HomotopyWitness { m, sign }));
            }
        }
    }
    Ok(None)
}

/// `q' ≡ sign · q^{±1} (mod p)`, `inverse` selecting the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleWitness {
    pub sign: i64,
    pub inverse: bool,
}

pub fn simple_homotopy_equivalent(a: &LensParams, b: &LensParams) -> Result<Option<SimpleWitness>> {
    same_modulus(a, b)?;
    let p = a.p;
    let r = a.r();
    for (base, inverse) in [(a.q, false), (r, true)] {
        for sign in [1, -1] {
            if (sign * base).rem_euclid(p) == b.q {
                return Ok(Some(SimpleWitness { sign, inverse }));
            }
        }
    }
    Ok(None)
}

/// A twist `d` with `Δ_{t↦ζ^d}(a) = Δ_{t↦ζ}(b)`, or `None` when the torsions
/// tell the two spaces apart.
pub fn torsion_distinguish(a: &LensParams, b: &LensParams) -> Result<Option<i64>> {
    same_modulus(a, b)?;
    let target = lens_torsion(b, 1)?;
    for d in (1..a.p).filter(|d| d.gcd(&a.p) == 1) {
        if lens_torsion(a, d)? == target {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensVerdict {
    pub a: LensParams,
    pub b: LensParams,
    pub homotopy: Option<HomotopyWitness>,
    pub simple: Option<SimpleWitness>,
    /// The matching twist when the torsions agree.
    pub torsion_match: Option<i64>,
}

impl LensVerdict {
    pub fn homotopy_equivalent(&self) -> bool {
        self.homotopy.is_some()
    }

    pub fn simple_homotopy_equivalent(&self) -> bool {
        self.simple.is_some()
    }

    pub fn torsion_distinguished(&self) -> bool {
        self.torsion_match.is_none()
    }
}

/// All three predicates, failing with `CrossCheckFailed` if torsion and
/// arithmetic disagree.
pub fn classify(a: &LensParams, b: &LensParams) -> Result<LensVerdict> {
    let verdict = LensVerdict {
        a: *a,
        b: *b,
        homotopy: homotopy_equivalent(a, b)?,
        simple: simple_homotopy_equivalent(a, b)?,
        torsion_match: torsion_distinguish(a, b)?,
    };
    if verdict.torsion_distinguished() == verdict.simple_homotopy_equivalent() {
        return Err(Error::CrossCheckFailed(format!(
            "{a} vs {b}: torsion distinguished = {}, simple homotopy equivalent = {}",
            verdict.torsion_distinguished(),
            verdict.simple_homotopy_equivalent()
        )));
    }
    if verdict.simple_homotopy_equivalent() && !verdict.homotopy_equivalent() {
        return Err(Error::CrossCheckFailed(format!("{a} vs {b}: simple but not homotopy equivalent")));
    }
    Ok(verdict)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRow {
    pub l: i64,
    /// `None` when the twisted complex is not acyclic after base change.
    pub torsion: Option<TorsionClass>,
    /// Exponents `(s, k)` with `first = s·ζ^k · second`.
    pub matching_units: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProductReport {
    pub p: i64,
    pub first: LensParams,
    pub second: LensParams,
    pub second_torsion: TorsionClass,
    pub unit_group_order: usize,
    pub rows: Vec<TwistRow>,
    pub comparisons: usize,
}

impl FreeProductReport {
    /// The first `(l, sign, k)` where the torsions agree.
    pub fn first_match(&self) -> Option<(i64, i64, i64)> {
        self.rows.iter().find_map(|r| r.matching_units.first().map(|&(s, k)| (r.l, s, k)))
    }
}

/// Both lens complexes over `Z/p * Z/p`, the first on `η^l` for each twist
/// `l`, the second on `ν`, compared under `η, ν ↦ ζ_p`.
pub fn free_product_scenario(p: i64, q: i64, q2: i64) -> Result<FreeProductReport> {
    if !is_prime(p) {
        return Err(Error::NonPrimeUnsupported(p));
    }
    let first = LensParams::new(p, q)?;
    let second = LensParams::new(p, q2)?;
    let spec = GroupSpec::free_product(vec![p as u64, p as u64])?;
    let rep = Representation::new(spec.clone(), p as u64, vec![1, 1])?;
    let field = rep.field().clone();
    let units: Vec<((i64, i64), CycloNum)> = [1, -1]
        .into_iter()
        .flat_map(|s| (0..p).map(move |k| (s, k)))
        .map(|(s, k)| ((s, k), field.mul(&field.from_int(s), &field.zeta_pow(k))))
        .collect();
    let target = reidemeister_torsion(&lens_complex_in(&spec, 1, 1, &second)?, &rep)?;
    let target_value = target.representative().clone();
    let mut comparisons = 0;
    let mut rows = Vec::new();
    for l in 1..p {
        let complex = lens_complex_in(&spec, 0, l, &first)?;
        let row = match reidemeister_torsion(&complex, &rep) {
            Ok(class) => {
                let value = class.representative();
                let mut matching_units = Vec::new();
                for (label, u) in &units {
                    comparisons += 1;
                    if *value == field.mul(u, &target_value) {
                        matching_units.push(*label);
                    }
                }
                TwistRow { l, torsion: Some(class.clone()), matching_units }
            }
            Err(Error::NotAcyclic { .. }) => TwistRow { l, torsion: None, matching_units: vec![] },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(FreeProductReport {
        p,
        first,
        second,
        second_torsion: target,
        unit_group_order: units.len(),
        rows,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincomplex::integral_homology;
    use crate::cyclofield::CycloField;
    use num_bigint::BigInt;

    fn lp(p: i64, q: i64) -> LensParams {
        LensParams::new(p, q).unwrap()
    }

    #[test]
    fn modp_inverse_examples() {
        assert_eq!(modp_inverse(1, 7).unwrap(), 1);
        assert_eq!(modp_inverse(2, 7).unwrap(), 4);
        assert_eq!(modp_inverse(4, 17).unwrap(), 13);
        assert_eq!(modp_inverse(-3, 7).unwrap(), 2);
        assert_eq!(modp_inverse(2, 6), Err(Error::NotCoprime { q: 2, p: 6 }));
    }

    #[test]
    fn params_are_reduced() {
        assert_eq!(lp(7, 9).q(), 2);
        assert_eq!(lp(7, -1).q(), 6);
        assert!(matches!(LensParams::new(6, 2), Err(Error::NotCoprime { .. })));
        assert!(LensParams::new(1, 1).is_err());
    }

    #[test]
    fn complex_examples() {
        let c7 = GroupSpec::Cyclic(7);
        let t = |k: i64| GroupRingElem::from_word(c7.letter(0, k).unwrap());
        let one_minus = |k| GroupRingElem::one().add(&t(k).neg());
        let norm = c7.norm_element(0, 1).unwrap();
        for (q, r) in [(1, 1), (2, 4)] {
            let c = lens_complex(&lp(7, q));
            c.validate().unwrap();
            assert_eq!(c.differential(0)[(0, 0)], one_minus(r));
            assert_eq!(c.differential(1)[(0, 0)], norm);
            assert_eq!(c.differential(2)[(0, 0)], one_minus(1));
            assert_eq!(c.labels(0), &["e3"]);
            assert_eq!(c.labels(3), &["e0"]);
        }
    }

    #[test]
    fn collapsed_homology_by_cell_dimension() {
        for p in [2, 5, 7, 12] {
            let h = integral_homology(&lens_complex(&lp(p, 1)).augment()).unwrap();
            let by_dim: Vec<_> = h.iter().rev().map(|(_, h)| (h.betti, h.torsion.clone())).collect();
            assert_eq!(
                by_dim,
                vec![(1, vec![]), (0, vec![BigInt::from(p)]), (0, vec![]), (1, vec![])],
                "p = {p}"
            );
        }
    }

    #[test]
    fn torsion_examples() {
        let f = CycloField::new(7).unwrap();
        let x = |k| f.sub(&f.one(), &f.zeta_pow(k));
        assert!(lens_torsion(&lp(7, 1), 1).unwrap().contains(&f.mul(&x(1), &x(1))).unwrap());
        assert!(lens_torsion(&lp(7, 2), 1).unwrap().contains(&f.mul(&x(1), &x(4))).unwrap());
        assert!(matches!(lens_torsion(&lp(7, 1), 0), Err(Error::NotAcyclic { .. })));
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(homotopy_equivalent(&lp(7, 1), &lp(7, 2)).unwrap(), Some(HomotopyWitness { m: 3, sign: 1 }));
        assert!(homotopy_equivalent(&lp(17, 2), &lp(17, 4)).unwrap().is_some());
        assert_eq!(homotopy_equivalent(&lp(5, 1), &lp(5, 2)).unwrap(), None);
        assert_eq!(simple_homotopy_equivalent(&lp(7, 1), &lp(7, 2)).unwrap(), None);
        assert_eq!(
            simple_homotopy_equivalent(&lp(7, 1), &lp(7, 6)).unwrap(),
            Some(SimpleWitness { sign: -1, inverse: false })
        );
        assert_eq!(simple_homotopy_equivalent(&lp(17, 1), &lp(17, 4)).unwrap(), None);
        assert_eq!(torsion_distinguish(&lp(7, 1), &lp(7, 2)).unwrap(), None);
        assert_eq!(torsion_distinguish(&lp(7, 2), &lp(7, 2)).unwrap(), Some(1));
        assert!(torsion_distinguish(&lp(7, 1), &lp(7, 6)).unwrap().is_some());
        assert_eq!(homotopy_equivalent(&lp(7, 1), &lp(5, 1)), Err(Error::LensModulusMismatch(7, 5)));
    }

    #[test]
    fn free_product_examples() {
        let distinct = free_product_scenario(7, 1, 2).unwrap();
        assert_eq!(distinct.rows.len(), 6);
        assert_eq!(distinct.unit_group_order, 14);
        assert_eq!(distinct.comparisons, 84);
        assert_eq!(distinct.first_match(), None);

        assert_eq!(free_product_scenario(7, 2, 2).unwrap().first_match().map(|m| m.0), Some(1));
        assert!(free_product_scenario(7, 1, 6).unwrap().first_match().is_some());
        assert_eq!(free_product_scenario(9, 1, 2), Err(Error::NonPrimeUnsupported(9)));
        assert!(matches!(free_product_scenario(7, 7, 2), Err(Error::NotCoprime { .. })));
    }
}
