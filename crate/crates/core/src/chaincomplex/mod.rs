//! Based cochain complexes: differentials raise degree, `∂_i : C_i -> C_{i+1}`
//! is a `rank(i+1) × rank(i)` matrix acting on coordinate columns.
//!
//! Modules are right modules over the coefficient ring, so a basis change
//! `c'_j = Σ_i c_i P_ij` turns an outgoing differential `D` into `D·P` and an
//! incoming one into `P⁻¹·D`, and composition is the ordinary matrix product
//! even over the noncommutative group rings of free products.

mod file;
mod smith;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::cyclofield::{CycloField, Representation};
use crate::error::{Error, Result};
use crate::grouprings::{GroupRingElem, GroupSpec};
use crate::matrix::{is_zero_matrix, mat_add, mat_mul, mat_neg, Matrix, Ring};

pub use smith::smith_normal_form;

#[derive(Clone, Debug, PartialEq)]
pub struct Complex<R: Ring> {
    ring: R,
    min_degree: i64,
    ranks: Vec<usize>,
    /// `differentials[k]` maps degree `min_degree + k` to the next one.
    differentials: Vec<Matrix<R::Elem>>,
    labels: Vec<Vec<String>>,
}

/// Free Z G-modules with ordered bases.
pub type BasedComplex = Complex<GroupSpec>;

/// The base change of a [`BasedComplex`] along a representation.
pub type FieldComplex = Complex<CycloField>;

fn default_labels(min_degree: i64, ranks: &[usize]) -> Vec<Vec<String>> {
    ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| (0..r).map(|a| format!("c{}_{}", min_degree + k as i64, a)).collect())
        .collect()
}

impl<R: Ring + Clone> Complex<R> {
    /// Checks shapes only; use [`Complex::validate`] for `∂∘∂ = 0`.
    pub fn new(
        ring: R,
        min_degree: i64,
        ranks: Vec<usize>,
        differentials: Vec<Matrix<R::Elem>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self> {
        let expected = ranks.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "{} differentials for {} degrees",
                differentials.len(),
                ranks.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::ShapeMismatch(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    min_degree + k as i64,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != ranks.len() || l.iter().zip(&ranks).any(|(l, &r)| l.len() != r) {
                    return Err(Error::ShapeMismatch("basis labels do not match ranks".into()));
                }
                l
            }
            None => default_labels(min_degree, &ranks),
        };
        let mut c = Self { ring, min_degree, ranks, differentials, labels };
        c.trim();
        Ok(c)
    }

    pub fn zero(ring: R) -> Self {
        Self { ring, min_degree: 0, ranks: vec![], differentials: vec![], labels: vec![] }
    }

    /// Drops zero-rank degrees at both ends so equal complexes are equal
    /// structurally.
    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.labels.pop();
            self.differentials.pop();
        }
        let lead = self.ranks.iter().take_while(|&&r| r == 0).count();
        if lead == self.ranks.len() {
            self.ranks.clear();
            self.labels.clear();
            self.differentials.clear();
            self.min_degree = 0;
            return;
        }
        if lead > 0 {
            self.ranks.drain(..lead);
            self.labels.drain(..lead);
            self.differentials.drain(..lead);
            self.min_degree += lead as i64;
        }
    }

    /// Extends the stored range with zero-rank degrees so that `degree` is
    /// inside it. Undone by the trim in every public constructor.
    pub(crate) fn ensure_degree(&mut self, degree: i64) {
        if self.ranks.is_empty() {
            self.min_degree = degree;
            self.ranks.push(0);
            self.labels.push(vec![]);
            return;
        }
        while degree < self.min_degree {
            self.min_degree -= 1;
            let next = self.ranks[0];
            self.ranks.insert(0, 0);
            self.labels.insert(0, vec![]);
            self.differentials.insert(0, Matrix::zeros(&self.ring, next, 0));
        }
        while degree > self.max_degree() {
            let prev = *self.ranks.last().unwrap();
            self.ranks.push(0);
            self.labels.push(vec![]);
            self.differentials.push(Matrix::zeros(&self.ring, 0, prev));
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.trim();
        self
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// `min_degree - 1` for the zero complex.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        let k = degree.checked_sub(self.min_degree)?;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |k| self.ranks[k])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.slot(degree).map_or(&[], |k| &self.labels[k])
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn differential_ref(&self, degree: i64) -> Option<&Matrix<R::Elem>> {
        self.slot(degree).and_then(|k| self.differentials.get(k))
    }

    /// `∂_degree`, a zero matrix of the right shape outside the stored range.
    pub fn differential(&self, degree: i64) -> Matrix<R::Elem> {
        match self.differential_ref(degree) {
            Some(d) => d.clone(),
            None => Matrix::zeros(&self.ring, self.rank(degree + 1), self.rank(degree)),
        }
    }

    pub(crate) fn differential_mut(&mut self, degree: i64) -> Option<&mut Matrix<R::Elem>> {
        let k = self.slot(degree)?;
        self.differentials.get_mut(k)
    }

    /// Inserts a basis vector with no differential in or out.
    pub(crate) fn insert_basis(&mut self, degree: i64, position: usize, label: String) {
        self.ensure_degree(degree);
        let k = self.slot(degree).unwrap();
        assert!(position <= self.ranks[k]);
        self.ranks[k] += 1;
        self.labels[k].insert(position, label);
        let zero = self.ring.zero();
        if k < self.differentials.len() {
            let d = &mut self.differentials[k];
            d.insert_col(position, vec![zero.clone(); d.rows()]);
        }
        if k > 0 {
            let d = &mut self.differentials[k - 1];
            d.insert_row(position, vec![zero; d.cols()]);
        }
    }

    pub(crate) fn remove_basis(&mut self, degree: i64, position: usize) {
        let k = self.slot(degree).expect("degree in range");
        self.ranks[k] -= 1;
        self.labels[k].remove(position);
        if k < self.differentials.len() {
            self.differentials[k].remove_col(position);
        }
        if k > 0 {
            self.differentials[k - 1].remove_row(position);
        }
    }

    /// `∂_{i+1} ∘ ∂_i = 0` in every degree; the error names the first `i`
    /// where it fails.
    pub fn validate(&self) -> Result<()> {
        for i in self.min_degree..self.max_degree() - 1 {
            let prod = mat_mul(&self.ring, &self.differential(i + 1), &self.differential(i));
            if !is_zero_matrix(&self.ring, &prod) {
                return Err(Error::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    /// `C[k]`: degree `i` content moves to `i - k`, differential negated for
    /// odd `k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if self.is_zero() {
            return out;
        }
        out.min_degree -= k;
        if k.rem_euclid(2) == 1 {
            out.differentials = out.differentials.iter().map(|d| mat_neg(&self.ring, d)).collect();
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self>
    where
        R: PartialEq,
    {
        if self.ring != other.ring {
            return Err(Error::SpecMismatch("direct sum of complexes over different rings".into()));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let ranks: Vec<usize> = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let labels = (lo..=hi)
            .map(|i| self.labels(i).iter().chain(other.labels(i)).cloned().collect())
            .collect();
        let differentials = (lo..hi)
            .map(|i| {
                let a = self.differential(i);
                let b = other.differential(i);
                Matrix::block(
                    &a,
                    &Matrix::zeros(&self.ring, a.rows(), b.cols()),
                    &Matrix::zeros(&self.ring, b.rows(), a.cols()),
                    &b,
                )
            })
            .collect();
        Self::new(self.ring.clone(), lo, ranks, differentials, Some(labels))
    }

    /// Applies a ring map entrywise.
    pub fn map_entries<S: Ring + Clone>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Complex<S> {
        Complex {
            ring,
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(|d| d.map(&f)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Replaces `c_target` by `c_target + c_source·λ` in `degree`.
    pub(crate) fn slide_basis(&mut self, degree: i64, target: usize, source: usize, lambda: &R::Elem) {
        let ring = self.ring.clone();
        if let Some(d) = self.differential_mut(degree) {
            // outgoing: column target += column source · λ
            for r in 0..d.rows() {
                let t = ring.mul(&d[(r, source)], lambda);
                d[(r, target)] = ring.add(&d[(r, target)], &t);
            }
        }
        if let Some(d) = self.differential_mut(degree - 1) {
            // incoming: row source -= λ · row target
            for c in 0..d.cols() {
                let t = ring.mul(lambda, &d[(target, c)]);
                d[(source, c)] = ring.sub(&d[(source, c)], &t);
            }
        }
    }

    /// Replaces `c_index` by `c_index·u` for a unit `u` with inverse `u_inv`.
    pub(crate) fn rescale_basis(&mut self, degree: i64, index: usize, u: &R::Elem, u_inv: &R::Elem) {
        let ring = self.ring.clone();
        if let Some(d) = self.differential_mut(degree) {
            for r in 0..d.rows() {
                d[(r, index)] = ring.mul(&d[(r, index)], u);
            }
        }
        if let Some(d) = self.differential_mut(degree - 1) {
            for c in 0..d.cols() {
                d[(index, c)] = ring.mul(u_inv, &d[(index, c)]);
            }
        }
    }
}

impl BasedComplex {
    pub fn spec(&self) -> &GroupSpec {
        self.ring()
    }

    /// `C ⊗_{Z G} Q(ζ_n)` along `rep`, bases `c ⊗ 1`.
    pub fn base_change(&self, rep: &Representation) -> Result<FieldComplex> {
        if rep.spec() != self.spec() {
            return Err(Error::SpecMismatch(format!(
                "representation of {} applied to a complex over {}",
                rep.spec(),
                self.spec()
            )));
        }
        Ok(self.map_entries(rep.field().clone(), |x| rep.evaluate_unchecked(x)))
    }

    /// Coefficients collapsed along `G -> 1`.
    pub fn augment(&self) -> BasedComplex {
        self.map_entries(GroupSpec::trivial(), |x| GroupRingElem::from_int(x.augmentation())).finish()
    }

    /// Checks every entry is a valid element for the group.
    pub fn check_entries(&self) -> Result<()> {
        for (k, d) in self.differentials.iter().enumerate() {
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    self.spec().check_elem(&d[(r, c)]).map_err(|e| {
                        Error::InvalidWord(format!(
                            "degree {} entry ({r}, {c}): {e}",
                            self.min_degree() + k as i64
                        ))
                    })?;
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        file::from_json(s)
    }

    pub fn to_json(&self) -> String {
        file::to_json(self)
    }

    pub(crate) fn to_json_value(&self) -> serde_json::Value {
        file::to_value(self)
    }

    pub(crate) fn from_json_value(v: serde_json::Value) -> Result<Self> {
        file::from_value(v)
    }
}

/// A degree-0 map commuting with the differentials: `∂ᵀ_i F_i = F_{i+1} ∂ˢ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<R: Ring> {
    source: Complex<R>,
    target: Complex<R>,
    components: BTreeMap<i64, Matrix<R::Elem>>,
}

impl<R: Ring + Clone + PartialEq> ChainMap<R> {
    pub fn new(source: Complex<R>, target: Complex<R>, components: BTreeMap<i64, Matrix<R::Elem>>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::SpecMismatch("chain map between complexes over different rings".into()));
        }
        let mut kept = BTreeMap::new();
        for (i, m) in components {
            if m.rows() != target.rank(i) || m.cols() != source.rank(i) {
                return Err(Error::ShapeMismatch(format!(
                    "chain map component in degree {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(i),
                    source.rank(i)
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                kept.insert(i, m);
            }
        }
        let f = Self { source, target, components: kept };
        f.check_commutes()?;
        Ok(f)
    }

    fn check_commutes(&self) -> Result<()> {
        let ring = &self.source.ring;
        let lo = self.source.min_degree().min(self.target.min_degree()) - 1;
        let hi = self.source.max_degree().max(self.target.max_degree()) + 1;
        for i in lo..=hi {
            let left = mat_mul(ring, &self.target.differential(i), &self.component(i));
            let right = mat_mul(ring, &self.component(i + 1), &self.source.differential(i));
            if left != right && !is_zero_matrix(ring, &mat_add(ring, &left, &mat_neg(ring, &right))) {
                return Err(Error::NotAChainMap { degree: i });
            }
        }
        Ok(())
    }

    pub fn identity(c: &Complex<R>) -> Self {
        let components = c.degrees().map(|i| (i, Matrix::identity(&c.ring, c.rank(i)))).collect();
        Self::new(c.clone(), c.clone(), components).expect("identity is a chain map")
    }

    pub fn zero(source: &Complex<R>, target: &Complex<R>) -> Result<Self> {
        Self::new(source.clone(), target.clone(), BTreeMap::new())
    }

    /// `∂h + h∂` for `h_i : C_i -> D_{i-1}`.
    pub fn null_homotopic(
        source: &Complex<R>,
        target: &Complex<R>,
        homotopy: &BTreeMap<i64, Matrix<R::Elem>>,
    ) -> Result<Self> {
        let ring = &source.ring;
        let h = |i: i64| -> Matrix<R::Elem> {
            homotopy
                .get(&i)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(ring, target.rank(i - 1), source.rank(i)))
        };
        for (&i, m) in homotopy {
            if m.rows() != target.rank(i - 1) || m.cols() != source.rank(i) {
                return Err(Error::ShapeMismatch(format!("homotopy component in degree {i} has the wrong shape")));
            }
        }
        let lo = source.min_degree().min(target.min_degree());
        let hi = source.max_degree().max(target.max_degree());
        let components = (lo..=hi)
            .map(|i| {
                let a = mat_mul(ring, &target.differential(i - 1), &h(i));
                let b = mat_mul(ring, &h(i + 1), &source.differential(i));
                (i, mat_add(ring, &a, &b))
            })
            .collect();
        Self::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &Complex<R> {
        &self.source
    }

    pub fn target(&self) -> &Complex<R> {
        &self.target
    }

    pub fn component(&self, degree: i64) -> Matrix<R::Elem> {
        self.components.get(&degree).cloned().unwrap_or_else(|| {
            Matrix::zeros(&self.source.ring, self.target.rank(degree), self.source.rank(degree))
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("composing maps with mismatched middle complex".into()));
        }
        let ring = &self.source.ring;
        let components = first
            .source
            .degrees()
            .map(|i| (i, mat_mul(ring, &self.component(i), &first.component(i))))
            .collect();
        Self::new(first.source.clone(), self.target.clone(), components)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("adding chain maps with different endpoints".into()));
        }
        let ring = &self.source.ring;
        let components = self
            .source
            .degrees()
            .map(|i| (i, mat_add(ring, &self.component(i), &other.component(i))))
            .collect();
        Self::new(self.source.clone(), self.target.clone(), components)
    }

    /// `C[1] ⊕ D` with differential `[[-∂_C, 0], [-f, ∂_D]]`; the basis is
    /// the source basis followed by the target basis in each degree.
    pub fn mapping_cone(&self) -> Complex<R> {
        let ring = &self.source.ring;
        let shifted = self.source.shift(1);
        if shifted.is_zero() && self.target.is_zero() {
            return Complex::zero(ring.clone());
        }
        let (lo, hi) = match (shifted.is_zero(), self.target.is_zero()) {
            (true, _) => (self.target.min_degree(), self.target.max_degree()),
            (_, true) => (shifted.min_degree(), shifted.max_degree()),
            _ => (
                shifted.min_degree().min(self.target.min_degree()),
                shifted.max_degree().max(self.target.max_degree()),
            ),
        };
        let ranks = (lo..=hi).map(|i| shifted.rank(i) + self.target.rank(i)).collect();
        let labels = (lo..=hi)
            .map(|i| shifted.labels(i).iter().chain(self.target.labels(i)).cloned().collect())
            .collect();
        let differentials = (lo..hi)
            .map(|i| {
                let dc = shifted.differential(i);
                let dd = self.target.differential(i);
                let f = mat_neg(ring, &self.component(i + 1));
                Matrix::block(&dc, &Matrix::zeros(ring, dc.rows(), dd.cols()), &f, &dd)
            })
            .collect();
        Complex::new(ring.clone(), lo, ranks, differentials, Some(labels)).expect("cone shapes are consistent")
    }
}

impl ChainMap<GroupSpec> {
    pub fn base_change(&self, rep: &Representation) -> Result<ChainMap<CycloField>> {
        let components =
            self.components.iter().map(|(&i, m)| (i, m.map(|x| rep.evaluate_unchecked(x)))).collect();
        Ok(ChainMap {
            source: self.source.base_change(rep)?,
            target: self.target.base_change(rep)?,
            components,
        })
    }
}

/// Graded tensor product `A ⊗_Z B` of a complex over Z (the trivial group)
/// with a complex over Z G, differential `∂_A ⊗ 1 + (-1)^{deg} 1 ⊗ ∂_B` and
/// basis `{a ⊗ b}` ordered by the degree of `a`, then `a`, then `b`.
pub fn tensor_z_complexes(a: &BasedComplex, b: &BasedComplex) -> Result<BasedComplex> {
    if !a.spec().is_trivial() {
        return Err(Error::SpecMismatch(format!("left tensor factor must be over Z, found {}", a.spec())));
    }
    let ring = b.spec().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(Complex::zero(ring));
    }
    let lo = a.min_degree() + b.min_degree();
    let hi = a.max_degree() + b.max_degree();
    // basis of degree n: (i, x, y) with x in A_i, y in B_{n-i}
    let basis = |n: i64| -> Vec<(i64, usize, usize)> {
        let mut out = Vec::new();
        for i in a.degrees() {
            for x in 0..a.rank(i) {
                for y in 0..b.rank(n - i) {
                    out.push((i, x, y));
                }
            }
        }
        out
    };
    let bases: Vec<Vec<(i64, usize, usize)>> = (lo..=hi).map(basis).collect();
    let index = |n: i64, key: (i64, usize, usize)| -> usize {
        bases[(n - lo) as usize].iter().position(|&k| k == key).expect("basis element exists")
    };
    let ranks = bases.iter().map(Vec::len).collect();
    let labels = (lo..=hi)
        .map(|n| {
            bases[(n - lo) as usize]
                .iter()
                .map(|&(i, x, y)| format!("{}⊗{}", a.labels(i)[x], b.labels(n - i)[y]))
                .collect()
        })
        .collect();
    let mut differentials = Vec::new();
    for n in lo..hi {
        let src = &bases[(n - lo) as usize];
        let tgt_len = bases[(n + 1 - lo) as usize].len();
        let mut d = Matrix::zeros(&ring, tgt_len, src.len());
        for (col, &(i, x, y)) in src.iter().enumerate() {
            let da = a.differential(i);
            for x2 in 0..da.rows() {
                let c = da[(x2, x)].constant_term();
                if c != BigInt::from(0) {
                    let row = index(n + 1, (i + 1, x2, y));
                    d[(row, col)] = d[(row, col)].add(&GroupRingElem::from_int(c));
                }
            }
            let db = b.differential(n - i);
            for y2 in 0..db.rows() {
                let e = &db[(y2, y)];
                if !e.is_zero() {
                    let row = index(n + 1, (i, x, y2));
                    let e = if i.rem_euclid(2) == 1 { e.neg() } else { e.clone() };
                    d[(row, col)] = d[(row, col)].add(&e);
                }
            }
        }
        differentials.push(d);
    }
    Complex::new(ring, lo, ranks, differentials, Some(labels))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Cohomology `ker ∂_i / im ∂_{i-1}` of a complex over Z, degree by degree.
pub fn integral_homology(c: &BasedComplex) -> Result<Vec<(i64, Homology)>> {
    if !c.spec().is_trivial() {
        return Err(Error::SpecMismatch(format!("integral homology needs a complex over Z, found {}", c.spec())));
    }
    let int_matrix = |m: &Matrix<GroupRingElem>| m.map(GroupRingElem::constant_term);
    let factors: BTreeMap<i64, Vec<BigInt>> = c
        .degrees()
        .map(|i| (i, smith_normal_form(&int_matrix(&c.differential(i)))))
        .collect();
    Ok(c.degrees()
        .map(|i| {
            let out_rank = factors[&i].len();
            let incoming = factors.get(&(i - 1)).cloned().unwrap_or_default();
            let betti = c.rank(i) - out_rank - incoming.len();
            let torsion = incoming.into_iter().filter(|d| *d != BigInt::from(1)).collect();
            (i, Homology { betti, torsion })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Ring;

    fn t(spec: &GroupSpec, e: i64) -> GroupRingElem {
        GroupRingElem::from_word(spec.letter(0, e).unwrap())
    }

    fn one_minus_t(spec: &GroupSpec, e: i64) -> GroupRingElem {
        GroupRingElem::one().add(&t(spec, e).neg())
    }

    fn m1(x: GroupRingElem) -> Matrix<GroupRingElem> {
        Matrix::from_vec(1, 1, vec![x])
    }

    fn int_complex(min_degree: i64, ranks: Vec<usize>, diffs: Vec<Vec<Vec<i64>>>) -> BasedComplex {
        let differentials = diffs
            .into_iter()
            .zip(ranks.windows(2))
            .map(|(rows, w)| {
                Matrix::from_rows(
                    rows.into_iter().map(|r| r.into_iter().map(GroupRingElem::from_int).collect()).collect(),
                    w[0],
                )
                .unwrap()
            })
            .collect();
        Complex::new(GroupSpec::trivial(), min_degree, ranks, differentials, None).unwrap()
    }

    #[test]
    fn validate_examples() {
        let c7 = GroupSpec::Cyclic(7);
        let two_term = Complex::new(c7.clone(), 0, vec![1, 1], vec![m1(GroupRingElem::one())], None).unwrap();
        two_term.validate().unwrap();

        let bad = Complex::new(
            c7.clone(),
            0,
            vec![1, 1, 1],
            vec![m1(one_minus_t(&c7, 1)), m1(one_minus_t(&c7, 1))],
            None,
        )
        .unwrap();
        assert_eq!(bad.validate(), Err(Error::NotAComplex { degree: 0 }));

        let shape = Complex::new(c7.clone(), 0, vec![2, 1], vec![m1(GroupRingElem::one())], None);
        assert!(matches!(shape, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn trimming_makes_zero_ends_disappear() {
        let c = int_complex(-2, vec![0, 1, 1, 0], vec![vec![vec![]], vec![vec![3]], vec![]]);
        assert_eq!(c.min_degree(), -1);
        assert_eq!(c.ranks(), &[1, 1]);
        let z = int_complex(4, vec![0, 0], vec![vec![]]);
        assert!(z.is_zero());
        assert_eq!(z, Complex::zero(GroupSpec::trivial()));
    }

    #[test]
    fn shift_examples() {
        let c = int_complex(0, vec![1, 2], vec![vec![vec![2], vec![-1]]]);
        assert_eq!(c.shift(1).shift(-1), c);
        assert_eq!(c.shift(1).min_degree(), -1);
        assert_eq!(c.shift(1).differential(-1)[(0, 0)], GroupRingElem::from_int(-2));
        assert_eq!(c.shift(2).differential(-2), c.differential(0));
        let z = Complex::zero(GroupSpec::trivial());
        assert_eq!(z.shift(5), z);
    }

    #[test]
    fn direct_sum_examples() {
        let a = int_complex(0, vec![1, 1], vec![vec![vec![2]]]);
        let b = int_complex(1, vec![2, 1], vec![vec![vec![1, 1]]]);
        let z = Complex::zero(GroupSpec::trivial());
        assert_eq!(a.direct_sum(&z).unwrap(), a);
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.ranks(), &[1, 3, 1]);
        assert_eq!(s.labels(1), &["c1_0", "c1_0", "c1_1"]);
        s.validate().unwrap();
        let other = Complex::zero(GroupSpec::Cyclic(7));
        assert!(matches!(a.direct_sum(&other), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn cone_of_identity_on_a_point() {
        let c7 = GroupSpec::Cyclic(7);
        let point = Complex::new(c7.clone(), 0, vec![1], vec![], None).unwrap();
        let cone = ChainMap::identity(&point).mapping_cone();
        assert_eq!(cone.min_degree(), -1);
        assert_eq!(cone.ranks(), &[1, 1]);
        assert_eq!(cone.differential(-1), m1(GroupRingElem::from_int(-1)));
    }

    #[test]
    fn cone_of_zero_map_is_a_sum() {
        let a = int_complex(0, vec![1, 1], vec![vec![vec![1]]]);
        let b = int_complex(0, vec![2, 2], vec![vec![vec![1, 0], vec![0, 1]]]);
        let f = ChainMap::zero(&a, &b).unwrap();
        assert_eq!(f.mapping_cone(), a.shift(1).direct_sum(&b).unwrap());
    }

    #[test]
    fn chain_map_must_commute() {
        let a = int_complex(0, vec![1, 1], vec![vec![vec![2]]]);
        let comps = BTreeMap::from([(0, m1(GroupRingElem::one()))]);
        assert_eq!(ChainMap::new(a.clone(), a.clone(), comps).unwrap_err(), Error::NotAChainMap { degree: 0 });
        let comps = BTreeMap::from([(0, m1(GroupRingElem::from_int(3))), (1, m1(GroupRingElem::from_int(3)))]);
        ChainMap::new(a.clone(), a, comps).unwrap();
    }

    #[test]
    fn null_homotopic_maps_commute() {
        let c7 = GroupSpec::Cyclic(7);
        let c = Complex::new(
            c7.clone(),
            0,
            vec![1, 1, 1, 1],
            vec![m1(one_minus_t(&c7, 4)), m1(c7.norm_element(0, 1).unwrap()), m1(one_minus_t(&c7, 1))],
            None,
        )
        .unwrap();
        let h = BTreeMap::from([(1, m1(t(&c7, 2))), (3, m1(one_minus_t(&c7, 3)))]);
        let f = ChainMap::null_homotopic(&c, &c, &h).unwrap();
        let g = ChainMap::identity(&c).add(&f).unwrap();
        g.compose(&g).unwrap();
        g.mapping_cone().validate().unwrap();
    }

    #[test]
    fn tensor_with_a_point_is_identity() {
        let c7 = GroupSpec::Cyclic(7);
        let b = Complex::new(c7.clone(), 0, vec![1, 1], vec![m1(one_minus_t(&c7, 1))], None).unwrap();
        let point = int_complex(0, vec![1], vec![]);
        let p = tensor_z_complexes(&point, &b).unwrap();
        assert_eq!(p.ranks(), b.ranks());
        assert_eq!(p.differential(0), b.differential(0));
        assert!(matches!(tensor_z_complexes(&b, &point), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn tensor_signs_square_to_zero() {
        let c7 = GroupSpec::Cyclic(7);
        let a = int_complex(0, vec![1, 2, 1], vec![vec![vec![1], vec![2]], vec![vec![2, -1]]]);
        a.validate().unwrap();
        let b = Complex::new(
            c7.clone(),
            -1,
            vec![1, 1, 1],
            vec![m1(one_minus_t(&c7, 1)), m1(c7.norm_element(0, 1).unwrap())],
            None,
        )
        .unwrap();
        b.validate().unwrap();
        let p = tensor_z_complexes(&a, &b).unwrap();
        assert_eq!(p.ranks(), &[1, 3, 4, 3, 1]);
        p.validate().unwrap();
    }

    #[test]
    fn smith_examples() {
        let m = |rows: &[&[i64]]| {
            Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), rows[0].len())
                .unwrap()
        };
        assert_eq!(smith_normal_form(&m(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_normal_form(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), vec![BigInt::from(1); 3]);
        assert!(smith_normal_form(&m(&[&[0, 0], &[0, 0]])).is_empty());
    }

    #[test]
    fn integral_homology_examples() {
        let c = int_complex(0, vec![1, 1], vec![vec![vec![2]]]);
        let h = integral_homology(&c).unwrap();
        assert_eq!(h[0].1, Homology { betti: 0, torsion: vec![] });
        assert_eq!(h[1].1, Homology { betti: 0, torsion: vec![BigInt::from(2)] });

        let acyclic = int_complex(0, vec![1, 1], vec![vec![vec![1]]]);
        assert!(integral_homology(&acyclic).unwrap().iter().all(|(_, h)| h.is_zero()));

        let c7 = Complex::new(GroupSpec::Cyclic(7), 0, vec![1], vec![], None).unwrap();
        assert!(matches!(integral_homology(&c7), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn base_change_examples() {
        let c7 = GroupSpec::Cyclic(7);
        let rep = Representation::new(c7.clone(), 7, vec![1]).unwrap();
        let c = Complex::new(c7.clone(), 0, vec![1, 1], vec![m1(one_minus_t(&c7, 1))], None).unwrap();
        let f = c.base_change(&rep).unwrap();
        f.validate().unwrap();
        let field = rep.field();
        assert_eq!(f.differential(0)[(0, 0)], field.sub(&field.one(), &field.zeta_pow(1)));
        let z = Complex::zero(c7.clone());
        assert!(z.base_change(&rep).unwrap().is_zero());
        let wrong = Representation::new(GroupSpec::Cyclic(5), 5, vec![1]).unwrap();
        assert!(matches!(c.base_change(&wrong), Err(Error::SpecMismatch(_))));
    }
}
