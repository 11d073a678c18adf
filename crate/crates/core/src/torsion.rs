//! Milnor torsion over fields and the Reidemeister torsion classes built on it.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chaincomplex::{BasedComplex, ChainMap, Complex};
use crate::cyclofield::{CycloNum, Representation, TorsionClass};
use crate::error::{Error, Result};
use crate::grouprings::GroupSpec;
use crate::matrix::{determinant, pivot_columns, Field, Matrix, Ring};

/// Order in which columns are offered to the greedy pivot search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotStrategy {
    FirstColumns,
    LastColumns,
    Shuffled(u64),
}

impl PivotStrategy {
    fn order(self, n: usize, degree: i64) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        match self {
            PivotStrategy::FirstColumns => {}
            PivotStrategy::LastColumns => order.reverse(),
            PivotStrategy::Shuffled(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (degree as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                order.shuffle(&mut rng);
            }
        }
        order
    }
}

/// `∏_i det[q_i, lift(q_{i+1}) / c_i]^{(-1)^{i-1}}` for an acyclic complex
/// over a field.
pub fn milnor_torsion<F: Field + Clone>(c: &Complex<F>, strategy: PivotStrategy) -> Result<F::Elem> {
    let field = c.ring();
    let pivots: Vec<Vec<usize>> = c
        .degrees()
        .map(|i| {
            let d = c.differential(i);
            pivot_columns(field, &d, &strategy.order(d.cols(), i))
        })
        .collect();
    let pivots_at = |i: i64| -> &[usize] {
        let k = i - c.min_degree();
        if k < 0 || k as usize >= pivots.len() {
            &[]
        } else {
            &pivots[k as usize]
        }
    };
    let mut acc = field.one();
    for i in c.degrees() {
        let n = c.rank(i);
        let incoming = pivots_at(i - 1);
        let outgoing = pivots_at(i);
        if incoming.len() + outgoing.len() != n {
            return Err(Error::NotAcyclic {
                degree: i,
                defect: n.abs_diff(incoming.len() + outgoing.len()),
            });
        }
        let d_in = c.differential(i - 1);
        let mut m = Matrix::zeros(field, n, n);
        for (col, &j) in incoming.iter().enumerate() {
            for r in 0..n {
                m[(r, col)] = d_in[(r, j)].clone();
            }
        }
        for (k, &j) in outgoing.iter().enumerate() {
            m[(j, incoming.len() + k)] = field.one();
        }
        let det = determinant(field, &m);
        if field.is_zero(&det) {
            return Err(Error::NotAComplex { degree: i - 1 });
        }
        let det = if (i - 1).rem_euclid(2) == 0 { det } else { field.inv(&det).expect("nonzero") };
        acc = field.mul(&acc, &det);
    }
    Ok(acc)
}

pub fn field_torsion(c: &crate::chaincomplex::FieldComplex) -> Result<CycloNum> {
    milnor_torsion(c, PivotStrategy::FirstColumns)
}

/// `Δ_ρ(C)` as a class modulo `±ρ(G)`.
pub fn reidemeister_torsion(c: &BasedComplex, rep: &Representation) -> Result<TorsionClass> {
    let value = field_torsion(&c.base_change(rep)?)?;
    TorsionClass::new(&value, &rep.unit_subgroup())
}

/// Torsion of a chain map, taken as the torsion of its mapping cone.
pub fn torsion_of_map(f: &ChainMap<GroupSpec>, rep: &Representation) -> Result<TorsionClass> {
    reidemeister_torsion(&f.mapping_cone(), rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FingerprintEntry {
    Class(TorsionClass),
    NotAcyclic { degree: i64, defect: usize },
}

impl FingerprintEntry {
    pub fn class(&self) -> Option<&TorsionClass> {
        match self {
            FingerprintEntry::Class(c) => Some(c),
            FingerprintEntry::NotAcyclic { .. } => None,
        }
    }
}

impl fmt::Display for FingerprintEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FingerprintEntry::Class(c) => write!(f, "{}", c.representative().poly_string()),
            FingerprintEntry::NotAcyclic { .. } => write!(f, "NOT_ACYCLIC"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFingerprint {
    entries: Vec<(Representation, FingerprintEntry)>,
}

#[derive(Serialize)]
struct FingerprintLine {
    representation: String,
    torsion: String,
}

impl TorsionFingerprint {
    pub fn entries(&self) -> &[(Representation, FingerprintEntry)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_trivial(&self) -> bool {
        self.entries.iter().all(|(_, e)| e.class().is_some_and(TorsionClass::is_trivial))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let lines: Vec<FingerprintLine> = self
            .entries
            .iter()
            .map(|(r, e)| FingerprintLine { representation: r.to_string(), torsion: e.to_string() })
            .collect();
        serde_json::to_value(lines).expect("fingerprint serializes")
    }
}

impl fmt::Display for TorsionFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, e) in &self.entries {
            writeln!(f, "{r} -> {e}")?;
        }
        Ok(())
    }
}

/// Reidemeister torsion under each representation, duplicates dropped, in
/// the order given.
pub fn fingerprint(c: &BasedComplex, reps: &[Representation]) -> Result<TorsionFingerprint> {
    let mut distinct: Vec<&Representation> = Vec::new();
    for r in reps {
        if r.spec() != c.spec() {
            return Err(Error::SpecMismatch(format!("representation {r} is not over {}", c.spec())));
        }
        if !distinct.contains(&r) {
            distinct.push(r);
        }
    }
    let entries = distinct
        .par_iter()
        .map(|&r| {
            let entry = match reidemeister_torsion(c, r) {
                Ok(class) => FingerprintEntry::Class(class),
                Err(Error::NotAcyclic { degree, defect }) => FingerprintEntry::NotAcyclic { degree, defect },
                Err(e) => return Err(e),
            };
            Ok((r.clone(), entry))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TorsionFingerprint { entries })
}

/// Entry `i` of `a` is compared with entry `matching[i]` of `b`.
pub fn fingerprints_equivalent(a: &TorsionFingerprint, b: &TorsionFingerprint, matching: &[usize]) -> Result<bool> {
    let n = a.len();
    if b.len() != n || matching.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "matching of length {} between fingerprints of length {} and {}",
            matching.len(),
            n,
            b.len()
        )));
    }
    let mut seen = vec![false; n];
    for &j in matching {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::ShapeMismatch("matching is not a permutation".into()));
        }
    }
    let mut equal = true;
    for (i, &j) in matching.iter().enumerate() {
        match (&a.entries[i].1, &b.entries[j].1) {
            (FingerprintEntry::Class(x), FingerprintEntry::Class(y)) => {
                if x.units() != y.units() {
                    return Err(Error::ShapeMismatch(format!(
                        "representations {} and {} have different unit groups",
                        a.entries[i].0, b.entries[j].0
                    )));
                }
                equal &= x == y;
            }
            (FingerprintEntry::NotAcyclic { .. }, FingerprintEntry::NotAcyclic { .. }) => {}
            _ => equal = false,
        }
    }
    Ok(equal)
}

/// The matching that pairs the representation with exponents `e` in `a` with
/// the one with exponents `d·e` in `b`, if every such partner is present.
pub fn twist_matching(a: &TorsionFingerprint, b: &TorsionFingerprint, d: i64) -> Option<Vec<usize>> {
    a.entries
        .iter()
        .map(|(ra, _)| {
            let n = ra.modulus() as i64;
            let want: Vec<i64> = ra.generator_exponents().iter().map(|e| (e * d).rem_euclid(n)).collect();
            b.entries.iter().position(|(rb, _)| {
                rb.modulus() == ra.modulus()
                    && rb.generator_exponents().iter().map(|e| e.rem_euclid(n)).eq(want.iter().copied())
            })
        })
        .collect()
}

/// Writes a class as `(1-z^a)(1-z^b)` when it has a representative of that
/// shape, `1` when trivial. Squares are tried first, then the largest `b`
/// for each `a`.
pub fn product_form(class: &TorsionClass) -> Option<String> {
    if class.is_trivial() {
        return Some("1".into());
    }
    let field = class.units().field();
    let n = field.modulus() as i64;
    if n > 64 {
        return None;
    }
    let factor = |a: i64| field.sub(&field.one(), &field.zeta_pow(a));
    let term = |a: i64| if a == 1 { "(1-z)".to_string() } else { format!("(1-z^{a})") };
    for a in 1..n {
        if class.contains(&factor(a)).ok()? {
            return Some(term(a));
        }
    }
    for a in 1..n {
        for b in std::iter::once(a).chain((a + 1..n).rev()) {
            let v = field.mul(&factor(a), &factor(b));
            if class.contains(&v).ok()? {
                return Some(if a == b { format!("{}^2", term(a)) } else { format!("{}{}", term(a), term(b)) });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::CycloField;
    use crate::grouprings::GroupRingElem;

    fn m1<T: Clone>(x: T) -> Matrix<T> {
        Matrix::from_vec(1, 1, vec![x])
    }

    #[test]
    fn single_map_torsion_is_its_entry() {
        let f = CycloField::new(7).unwrap();
        let a = f.add(&f.from_int(3), &f.zeta_pow(2));
        let c = Complex::new(f.clone(), 0, vec![1, 1], vec![m1(a.clone())], None).unwrap();
        assert_eq!(field_torsion(&c).unwrap(), a);
        assert_eq!(field_torsion(&c.shift(1)).unwrap(), f.inv(&f.neg(&a)).unwrap());
    }

    #[test]
    fn zero_complex_has_torsion_one() {
        let f = CycloField::new(5).unwrap();
        assert_eq!(field_torsion(&Complex::zero(f.clone())).unwrap(), f.one());
    }

    #[test]
    fn not_acyclic_names_the_degree() {
        let f = CycloField::new(5).unwrap();
        let c = Complex::new(f.clone(), 2, vec![1, 1], vec![m1(f.zero())], None).unwrap();
        assert_eq!(field_torsion(&c), Err(Error::NotAcyclic { degree: 2, defect: 1 }));
    }

    #[test]
    fn identity_map_has_trivial_torsion() {
        let c7 = GroupSpec::Cyclic(7);
        let t = GroupRingElem::from_word(c7.letter(0, 1).unwrap());
        let c = Complex::new(c7.clone(), 0, vec![1, 1], vec![m1(GroupRingElem::one().add(&t.neg()))], None).unwrap();
        let rep = Representation::new(c7, 7, vec![1]).unwrap();
        assert!(torsion_of_map(&ChainMap::identity(&c), &rep).unwrap().is_trivial());
    }

    #[test]
    fn product_form_rendering() {
        let f = CycloField::new(7).unwrap();
        let rep = Representation::new(GroupSpec::Cyclic(7), 7, vec![1]).unwrap();
        let units = rep.unit_subgroup();
        let x = |a| f.sub(&f.one(), &f.zeta_pow(a));
        let cls = |v: &CycloNum| TorsionClass::new(v, &units).unwrap();
        assert_eq!(product_form(&cls(&f.mul(&x(1), &x(4)))).unwrap(), "(1-z)(1-z^4)");
        assert_eq!(product_form(&cls(&f.mul(&x(1), &x(1)))).unwrap(), "(1-z)^2");
        assert_eq!(product_form(&cls(&f.zeta_pow(3))).unwrap(), "1");
        assert_eq!(product_form(&cls(&f.from_int(5))), None);
    }
}
