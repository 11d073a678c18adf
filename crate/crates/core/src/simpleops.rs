//! Elementary simple operations on based complexes and certificates built
//! from them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chaincomplex::BasedComplex;
use crate::error::{Error, Result};
use crate::grouprings::{GroupRingElem, GroupWord};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum SimpleOp {
    /// Adds `[Z G --1--> Z G]` as basis vector `position` of degrees
    /// `degree` and `degree + 1`.
    Expansion { degree: i64, position: usize },
    /// Removes a summand `[Z G --±g--> Z G]` sitting at `position` in degrees
    /// `degree` and `degree + 1`.
    Retraction { degree: i64, position: usize },
    /// `c_target <- c_target + c_source · coefficient`.
    HandleSlide { degree: i64, target: usize, source: usize, coefficient: GroupRingElem },
    /// `c_index <- c_index · word`.
    DeckTransform { degree: i64, index: usize, word: GroupWord },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidOp(msg.into())
}

fn next_degree(degree: i64) -> Result<i64> {
    degree.checked_add(1).ok_or_else(|| invalid("degree out of range"))
}

fn check_index(c: &BasedComplex, degree: i64, index: usize) -> Result<()> {
    if index >= c.rank(degree) {
        return Err(invalid(format!("index {index} out of range for rank {} in degree {degree}", c.rank(degree))));
    }
    Ok(())
}

fn row_is_zero(m: &Matrix<GroupRingElem>, r: usize, skip: Option<usize>) -> bool {
    (0..m.cols()).all(|c| Some(c) == skip || m[(r, c)].is_zero())
}

fn col_is_zero(m: &Matrix<GroupRingElem>, c: usize, skip: Option<usize>) -> bool {
    (0..m.rows()).all(|r| Some(r) == skip || m[(r, c)].is_zero())
}

pub fn apply_op(c: &BasedComplex, op: &SimpleOp) -> Result<BasedComplex> {
    let spec = c.spec().clone();
    let mut out = c.clone();
    match op {
        &SimpleOp::Expansion { degree, position } => {
            let upper = next_degree(degree)?;
            let limit = c.rank(degree).min(c.rank(upper));
            if position > limit {
                return Err(invalid(format!("expansion position {position} exceeds {limit}")));
            }
            out.insert_basis(degree, position, format!("x{degree}"));
            out.insert_basis(upper, position, format!("y{upper}"));
            out.differential_mut(degree).expect("degree now in range")[(position, position)] = GroupRingElem::one();
        }
        &SimpleOp::Retraction { degree, position } => {
            let upper = next_degree(degree)?;
            check_index(c, degree, position)?;
            check_index(c, upper, position)?;
            let d = c.differential(degree);
            if d[(position, position)].as_signed_word().is_none() {
                return Err(invalid(format!("entry ({position}, {position}) in degree {degree} is not ±g")));
            }
            let isolated = row_is_zero(&d, position, Some(position))
                && col_is_zero(&d, position, Some(position))
                && row_is_zero(&c.differential(degree - 1), position, None)
                && col_is_zero(&c.differential(upper), position, None);
            if !isolated {
                return Err(invalid(format!("basis vectors at {position} in degrees {degree}, {upper} are linked to others")));
            }
            out.remove_basis(upper, position);
            out.remove_basis(degree, position);
        }
        SimpleOp::HandleSlide { degree, target, source, coefficient } => {
            if target == source {
                return Err(invalid("handle slide of a basis vector onto itself"));
            }
            check_index(c, *degree, *target)?;
            check_index(c, *degree, *source)?;
            spec.check_elem(coefficient).map_err(|e| invalid(format!("bad slide coefficient: {e}")))?;
            out.slide_basis(*degree, *target, *source, coefficient);
        }
        SimpleOp::DeckTransform { degree, index, word } => {
            check_index(c, *degree, *index)?;
            spec.check_word(word).map_err(|e| invalid(format!("bad deck word: {e}")))?;
            let g = GroupRingElem::from_word(word.clone());
            let g_inv = GroupRingElem::from_word(spec.word_inverse(word));
            out.rescale_basis(*degree, *index, &g, &g_inv);
        }
    }
    Ok(out.finish())
}

/// A claimed simple homotopy equivalence: `ops` applied to `start` give `end`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpCertificate {
    pub start: BasedComplex,
    pub ops: Vec<SimpleOp>,
    pub end: BasedComplex,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    start: serde_json::Value,
    ops: Vec<SimpleOp>,
    end: serde_json::Value,
}

impl OpCertificate {
    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            start: self.start.to_json_value(),
            ops: self.ops.clone(),
            end: self.end.to_json_value(),
        };
        serde_json::to_string_pretty(&file).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: CertificateFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let start = BasedComplex::from_json_value(file.start).map_err(|e| Error::Parse(format!("start: {e}")))?;
        let end = BasedComplex::from_json_value(file.end).map_err(|e| Error::Parse(format!("end: {e}")))?;
        if start.spec() != end.spec() {
            return Err(Error::SpecMismatch("certificate start and end are over different groups".into()));
        }
        Ok(Self { start, ops: file.ops, end })
    }
}

/// Applies every op in turn, reporting the first failing step.
pub fn replay_ops(start: &BasedComplex, ops: &[SimpleOp]) -> Result<BasedComplex> {
    let mut cur = start.clone();
    for (step, op) in ops.iter().enumerate() {
        cur = apply_op(&cur, op).map_err(|e| Error::ReplayFailed { step, source: Box::new(e) })?;
    }
    Ok(cur)
}

pub fn replay(cert: &OpCertificate) -> Result<bool> {
    Ok(replay_ops(&cert.start, &cert.ops)? == cert.end)
}

fn retraction_candidates(c: &BasedComplex) -> Vec<SimpleOp> {
    let mut out = Vec::new();
    for degree in c.degrees() {
        for position in 0..c.rank(degree).min(c.rank(degree + 1)) {
            let op = SimpleOp::Retraction { degree, position };
            if apply_op(c, &op).is_ok() {
                out.push(op);
            }
        }
    }
    out
}

fn random_coefficient(c: &BasedComplex, rng: &mut ChaCha8Rng) -> GroupRingElem {
    let spec = c.spec();
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    let mut x = GroupRingElem::from_term(sign.into(), spec.random_word(rng, 2));
    if rng.random_bool(0.25) {
        x = x.add(&GroupRingElem::from_term(rng.random_range(-2..=2).into(), spec.random_word(rng, 2)));
    }
    x
}

/// A reproducible random sequence of valid ops and the complex it ends at.
/// Expansions stop once the total rank reaches the start's rank plus eight.
pub fn random_op_sequence(c: &BasedComplex, length: usize, seed: u64) -> OpCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = c.total_rank() + 8;
    let mut cur = c.clone();
    let mut ops = Vec::with_capacity(length);
    while ops.len() < length {
        let op = match rng.random_range(0..4) {
            0 if cur.total_rank() + 2 <= cap => {
                let (lo, hi) = if cur.is_zero() { (0, 0) } else { (cur.min_degree() - 1, cur.max_degree()) };
                let degree = rng.random_range(lo..=hi);
                let limit = cur.rank(degree).min(cur.rank(degree + 1));
                SimpleOp::Expansion { degree, position: rng.random_range(0..=limit) }
            }
            1 => {
                let candidates = retraction_candidates(&cur);
                if candidates.is_empty() {
                    continue;
                }
                candidates[rng.random_range(0..candidates.len())].clone()
            }
            2 => {
                let degrees: Vec<i64> = cur.degrees().filter(|&i| cur.rank(i) >= 2).collect();
                if degrees.is_empty() {
                    continue;
                }
                let degree = degrees[rng.random_range(0..degrees.len())];
                let n = cur.rank(degree);
                let target = rng.random_range(0..n);
                let source = (target + rng.random_range(1..n)) % n;
                SimpleOp::HandleSlide { degree, target, source, coefficient: random_coefficient(&cur, &mut rng) }
            }
            3 => {
                let degrees: Vec<i64> = cur.degrees().filter(|&i| cur.rank(i) >= 1).collect();
                if degrees.is_empty() {
                    continue;
                }
                let degree = degrees[rng.random_range(0..degrees.len())];
                let index = rng.random_range(0..cur.rank(degree));
                SimpleOp::DeckTransform { degree, index, word: cur.spec().random_word(&mut rng, 2) }
            }
            _ => continue,
        };
        cur = apply_op(&cur, &op).expect("generated ops are valid");
        ops.push(op);
    }
    OpCertificate { start: c.clone(), ops, end: cur }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens72() -> BasedComplex {
        crate::lensspaces::lens_complex(&crate::lensspaces::LensParams::new(7, 2).unwrap())
    }

    #[test]
    fn expansion_then_retraction() {
        let c = lens72();
        for degree in -1..=3 {
            let e = apply_op(&c, &SimpleOp::Expansion { degree, position: 0 }).unwrap();
            assert_eq!(e.total_rank(), c.total_rank() + 2);
            e.validate().unwrap();
            let r = apply_op(&e, &SimpleOp::Retraction { degree, position: 0 }).unwrap();
            assert_eq!(r, c);
        }
    }

    #[test]
    fn deck_transform_inverse() {
        let c = lens72();
        let g = c.spec().letter(0, 3).unwrap();
        let g_inv = c.spec().word_inverse(&g);
        let once = apply_op(&c, &SimpleOp::DeckTransform { degree: 1, index: 0, word: g }).unwrap();
        assert_ne!(once, c);
        once.validate().unwrap();
        let back = apply_op(&once, &SimpleOp::DeckTransform { degree: 1, index: 0, word: g_inv }).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn handle_slide_inverse() {
        let c = apply_op(&lens72(), &SimpleOp::Expansion { degree: 1, position: 1 }).unwrap();
        let c = apply_op(&c, &SimpleOp::Expansion { degree: 1, position: 0 }).unwrap();
        let g = GroupRingElem::from_word(c.spec().letter(0, 2).unwrap());
        let slide = |coefficient| SimpleOp::HandleSlide { degree: 1, target: 2, source: 0, coefficient };
        let once = apply_op(&c, &slide(g.clone())).unwrap();
        once.validate().unwrap();
        assert_ne!(once, c);
        assert_eq!(apply_op(&once, &slide(g.neg())).unwrap(), c);
    }

    #[test]
    fn invalid_ops_are_rejected() {
        let c = lens72();
        let cases = [
            SimpleOp::Expansion { degree: 0, position: 2 },
            SimpleOp::Retraction { degree: 0, position: 0 },
            SimpleOp::Retraction { degree: 7, position: 0 },
            SimpleOp::HandleSlide { degree: 0, target: 0, source: 0, coefficient: GroupRingElem::one() },
            SimpleOp::HandleSlide { degree: 0, target: 0, source: 1, coefficient: GroupRingElem::one() },
            SimpleOp::DeckTransform { degree: 5, index: 0, word: GroupWord::identity() },
            SimpleOp::DeckTransform { degree: 0, index: 0, word: GroupWord(vec![(0, 9)]) },
            SimpleOp::Expansion { degree: i64::MAX, position: 0 },
        ];
        for op in cases {
            assert!(matches!(apply_op(&c, &op), Err(Error::InvalidOp(_))), "{op:?}");
        }
    }

    #[test]
    fn retraction_needs_a_unit_entry() {
        let c = apply_op(&lens72(), &SimpleOp::Expansion { degree: 0, position: 1 }).unwrap();
        let mut two = c.clone();
        two.differential_mut(0).unwrap()[(1, 1)] = GroupRingElem::from_int(2);
        assert!(apply_op(&two, &SimpleOp::Retraction { degree: 0, position: 1 }).is_err());
        let mut neg = c.clone();
        neg.differential_mut(0).unwrap()[(1, 1)] = GroupRingElem::from_term((-1).into(), c.spec().letter(0, 5).unwrap());
        assert_eq!(apply_op(&neg, &SimpleOp::Retraction { degree: 0, position: 1 }).unwrap(), lens72());
    }

    #[test]
    fn replay_examples() {
        let c = lens72();
        let empty = OpCertificate { start: c.clone(), ops: vec![], end: c.clone() };
        assert!(replay(&empty).unwrap());

        let cert = random_op_sequence(&c, 50, 1);
        assert_eq!(cert.ops.len(), 50);
        assert!(replay(&cert).unwrap());
        assert_eq!(random_op_sequence(&c, 50, 1), cert);
        assert_eq!(random_op_sequence(&c, 0, 9).end, c);

        let mut tampered = cert.clone();
        tampered.end = apply_op(&tampered.end, &SimpleOp::Expansion { degree: 0, position: 0 }).unwrap();
        assert!(!replay(&tampered).unwrap());

        let mut broken = cert.clone();
        broken.ops.insert(3, SimpleOp::DeckTransform { degree: 40, index: 0, word: GroupWord::identity() });
        assert!(matches!(replay(&broken), Err(Error::ReplayFailed { step: 3, .. })));
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = random_op_sequence(&lens72(), 20, 4);
        let text = cert.to_json();
        let back = OpCertificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn ops_preserve_the_complex_property_and_ranks() {
        let c = lens72();
        for seed in 0..20 {
            let cert = random_op_sequence(&c, 40, seed);
            let mut cur = c.clone();
            for op in &cert.ops {
                let next = apply_op(&cur, op).unwrap();
                next.validate().unwrap();
                let delta = next.total_rank() as i64 - cur.total_rank() as i64;
                let expected = match op {
                    SimpleOp::Expansion { .. } => 2,
                    SimpleOp::Retraction { .. } => -2,
                    _ => 0,
                };
                assert_eq!(delta, expected);
                cur = next;
            }
        }
    }
}
