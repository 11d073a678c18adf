#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whtorsion_core::chaincomplex::tensor_z_complexes;
use whtorsion_core::matrix::{mat_add, mat_mul, mat_neg};
use whtorsion_core::simpleops::random_op_sequence;
use whtorsion_core::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m1<T: Clone>(x: T) -> Matrix<T> {
    Matrix::from_vec(1, 1, vec![x])
}

/// `t ↦ ζ_n^d` for every `d` in `1..n`.
pub fn cyclic_reps(n: u64) -> Vec<Representation> {
    (1..n as i64).map(|d| Representation::new(GroupSpec::Cyclic(n), n, vec![d]).unwrap()).collect()
}

/// Six characters of Z/7 * Z/7.
pub fn free_product_reps() -> Vec<Representation> {
    let spec = GroupSpec::free_product(vec![7, 7]).unwrap();
    [(1, 1), (1, 2), (2, 1), (3, 5), (6, 6), (4, 0)]
        .into_iter()
        .map(|(a, b)| Representation::new(spec.clone(), 7, vec![a, b]).unwrap())
        .collect()
}

pub fn random_elem(rng: &mut ChaCha8Rng, spec: &GroupSpec, max_terms: usize) -> GroupRingElem {
    let mut x = GroupRingElem::zero();
    for _ in 0..rng.random_range(1..=max_terms) {
        let c: i64 = rng.random_range(-3..=3);
        x = x.add(&GroupRingElem::from_term(c.into(), spec.random_word(rng, 3)));
    }
    x
}

/// A random element whose image under every representation is nonzero.
pub fn nonvanishing_elem(rng: &mut ChaCha8Rng, spec: &GroupSpec, reps: &[Representation]) -> GroupRingElem {
    loop {
        let x = random_elem(rng, spec, 3);
        if reps.iter().all(|r| !r.evaluate(&x).unwrap().is_zero()) && !x.is_zero() {
            return x;
        }
    }
}

pub fn point(spec: &GroupSpec, degree: i64) -> BasedComplex {
    Complex::new(spec.clone(), degree, vec![1], vec![], None).unwrap()
}

pub fn two_term(spec: &GroupSpec, degree: i64, x: GroupRingElem) -> BasedComplex {
    Complex::new(spec.clone(), degree, vec![1, 1], vec![m1(x)], None).unwrap()
}

fn scramble(rng: &mut ChaCha8Rng, c: BasedComplex, max_ops: usize) -> BasedComplex {
    let len = rng.random_range(0..=max_ops);
    random_op_sequence(&c, len, rng.random()).end
}

fn sum_all(spec: &GroupSpec, pieces: Vec<BasedComplex>) -> BasedComplex {
    pieces.into_iter().fold(Complex::zero(spec.clone()), |acc, c| acc.direct_sum(&c).unwrap())
}

/// Acyclic after base change along every one of `reps`, with generic-looking
/// differentials.
pub fn random_acyclic(rng: &mut ChaCha8Rng, spec: &GroupSpec, reps: &[Representation]) -> BasedComplex {
    let pieces = (0..rng.random_range(1..=3))
        .map(|_| {
            let degree = rng.random_range(-1..=2);
            two_term(spec, degree, nonvanishing_elem(rng, spec, reps))
        })
        .collect();
    scramble(rng, sum_all(spec, pieces), 20)
}

/// Any complex, acyclic or not.
pub fn random_complex(rng: &mut ChaCha8Rng, spec: &GroupSpec) -> BasedComplex {
    let pieces = (0..rng.random_range(1..=3))
        .map(|_| {
            let degree = rng.random_range(-1..=2);
            if rng.random_bool(0.3) {
                point(spec, degree)
            } else {
                two_term(spec, degree, random_elem(rng, spec, 2))
            }
        })
        .collect();
    scramble(rng, sum_all(spec, pieces), 12)
}

/// Acyclic over Z.
pub fn z_acyclic(rng: &mut ChaCha8Rng) -> BasedComplex {
    let z = GroupSpec::trivial();
    let pieces = (0..rng.random_range(1..=2))
        .map(|_| {
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            two_term(&z, rng.random_range(-1..=1), GroupRingElem::from_int(sign))
        })
        .collect();
    scramble(rng, sum_all(&z, pieces), 10)
}

/// Any complex over Z.
pub fn z_complex(rng: &mut ChaCha8Rng) -> BasedComplex {
    let z = GroupSpec::trivial();
    let pieces = (0..rng.random_range(1..=2))
        .map(|_| {
            let degree = rng.random_range(-1..=1);
            if rng.random_bool(0.3) {
                point(&z, degree)
            } else {
                two_term(&z, degree, GroupRingElem::from_int(rng.random_range(-3..=3)))
            }
        })
        .collect();
    scramble(rng, sum_all(&z, pieces), 10)
}

/// Acyclic with trivial torsion: built from expansions and simple ops only.
pub fn class_one_acyclic(rng: &mut ChaCha8Rng, spec: &GroupSpec) -> BasedComplex {
    let len = rng.random_range(1..=20);
    let c = random_op_sequence(&Complex::zero(spec.clone()), len, rng.random()).end;
    if c.is_zero() {
        return tensor_z_complexes(&z_acyclic(rng), &point(spec, 0)).unwrap();
    }
    c
}

pub fn random_matrix(rng: &mut ChaCha8Rng, spec: &GroupSpec, rows: usize, cols: usize) -> Matrix<GroupRingElem> {
    let data = (0..rows * cols)
        .map(|_| if rng.random_bool(0.5) { GroupRingElem::zero() } else { random_elem(rng, spec, 2) })
        .collect();
    Matrix::from_vec(rows, cols, data)
}

/// Random `h_i : C_i -> D_{i+shift}` over the degrees of `c`.
pub fn random_graded_map(
    rng: &mut ChaCha8Rng,
    c: &BasedComplex,
    d: &BasedComplex,
    shift: i64,
) -> BTreeMap<i64, Matrix<GroupRingElem>> {
    c.degrees()
        .map(|i| (i, random_matrix(rng, c.spec(), d.rank(i + shift), c.rank(i))))
        .collect()
}

/// The extension of `b` by `a` with differential `[[∂_A, θ], [0, ∂_B]]`,
/// `θ = ∂_A h - h ∂_B` for a random degree-0 map `h : B -> A`.
pub fn filtered_extension(rng: &mut ChaCha8Rng, a: &BasedComplex, b: &BasedComplex) -> BasedComplex {
    let spec = a.spec();
    let h = |i: i64, map: &BTreeMap<i64, Matrix<GroupRingElem>>| {
        map.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(spec, a.rank(i), b.rank(i)))
    };
    let hmap = random_graded_map(rng, b, a, 0);
    let lo = a.min_degree().min(b.min_degree());
    let hi = a.max_degree().max(b.max_degree());
    let ranks = (lo..=hi).map(|i| a.rank(i) + b.rank(i)).collect();
    let differentials = (lo..hi)
        .map(|i| {
            let theta = mat_add(
                spec,
                &mat_mul(spec, &a.differential(i), &h(i, &hmap)),
                &mat_neg(spec, &mat_mul(spec, &h(i + 1, &hmap), &b.differential(i))),
            );
            let zero = Matrix::zeros(spec, b.rank(i + 1), a.rank(i));
            Matrix::block(&a.differential(i), &theta, &zero, &b.differential(i))
        })
        .collect();
    let c = Complex::new(spec.clone(), lo, ranks, differentials, None).unwrap();
    c.validate().unwrap();
    c
}

/// The identity of modules `C -> C'` written in the two bases, where `C'` is
/// `C` after one handle slide or deck transform.
pub fn random_basis_change(rng: &mut ChaCha8Rng, c: &BasedComplex) -> ChainMap<GroupSpec> {
    use whtorsion_core::simpleops::apply_op;
    let spec = c.spec();
    let degrees: Vec<i64> = c.degrees().filter(|&i| c.rank(i) >= 1).collect();
    let degree = degrees[rng.random_range(0..degrees.len())];
    let n = c.rank(degree);
    let mut comps: BTreeMap<i64, Matrix<GroupRingElem>> = c.degrees().map(|i| (i, Matrix::identity(spec, c.rank(i)))).collect();
    let op = if n >= 2 && rng.random_bool(0.6) {
        let target = rng.random_range(0..n);
        let source = (target + rng.random_range(1..n)) % n;
        let lambda = random_elem(rng, spec, 2);
        // x'_source = x_source - λ x_target
        let f = comps.get_mut(&degree).unwrap();
        f[(source, target)] = lambda.neg();
        SimpleOp::HandleSlide { degree, target, source, coefficient: lambda }
    } else {
        let index = rng.random_range(0..n);
        let word = spec.random_word(rng, 2);
        let f = comps.get_mut(&degree).unwrap();
        f[(index, index)] = GroupRingElem::from_word(spec.word_inverse(&word));
        SimpleOp::DeckTransform { degree, index, word }
    };
    let target = apply_op(c, &op).unwrap();
    ChainMap::new(c.clone(), target, comps).unwrap()
}
