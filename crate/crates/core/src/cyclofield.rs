//! Exact arithmetic in cyclotomic fields Q(ζ_n), representations of group
//! rings into them, and torsion values modulo the trivial units ±ρ(G).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::grouprings::{GroupRingElem, GroupSpec};
use crate::matrix::{Field, Ring};

pub type Rational = BigRational;

pub fn euler_phi(n: u64) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..dd {
            rem[k - dd + j] -= &c * &den[j];
        }
        quot[k - dd] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Φ_n as integer coefficients, lowest degree first: x^n - 1 divided by Φ_d
/// for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = divide_monic(&poly, &cyclotomic_polynomial(d));
        debug_assert!(r.iter().all(Zero::is_zero));
        poly = q;
    }
    poly
}

#[derive(Debug)]
struct FieldData {
    n: u64,
    phi: Vec<BigInt>,
    /// ζ^k reduced, for k in 0..n.
    powers: Vec<Vec<BigInt>>,
}

/// The field Q(ζ_n); cheap to clone.
#[derive(Clone)]
pub struct CycloField(Arc<FieldData>);

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.n)
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}

impl Eq for CycloField {}

/// An element of Q(ζ_n): `num / den` with `num` a polynomial in ζ of degree
/// below φ(n), `den > 0`, and no common factor. Reduction is canonical, so
/// derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNum {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Coefficients of 1, ζ, ζ², …, ζ^{φ(n)-1}.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    /// Polynomial rendering in `z`, without the modulus suffix.
    pub fn poly_string(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let z = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, true) => out.push_str(&z),
                (_, false) => out.push_str(&format!("{mag}*{z}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn normalize(mut self) -> Self {
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.is_zero() {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
        self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod Phi_{})", self.poly_string(), self.n)
    }
}

impl Ord for CycloNum {
    /// Modulus first, then coefficient vectors lexicographically by value.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let ord = (a * &other.den).cmp(&(b * &self.den));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CycloField {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRepresentation("cyclotomic modulus must be >= 1".into()));
        }
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); d];
        cur[0] = BigInt::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce
            let mut next = vec![BigInt::zero(); d + 1];
            for (k, c) in cur.iter().enumerate() {
                next[k + 1] = c.clone();
            }
            cur = divide_monic(&next, &phi).1;
            cur.resize(d, BigInt::zero());
        }
        Ok(CycloField(Arc::new(FieldData { n, phi, powers })))
    }

    pub fn modulus(&self) -> u64 {
        self.0.n
    }

    pub fn degree(&self) -> usize {
        self.0.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.0.phi
    }

    fn make(&self, num: Vec<BigInt>, den: BigInt) -> CycloNum {
        CycloNum { n: self.0.n, num, den }.normalize()
    }

    /// Reduces an arbitrary-degree polynomial in ζ with integer coefficients.
    pub fn from_int_poly(&self, poly: &[BigInt], den: BigInt) -> CycloNum {
        assert!(den.is_positive());
        let d = self.degree();
        let mut rem = if poly.len() > d { divide_monic(poly, &self.0.phi).1 } else { poly.to_vec() };
        rem.resize(d, BigInt::zero());
        self.make(rem, den)
    }

    pub fn from_rational(&self, r: &Rational) -> CycloNum {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        // BigRational keeps a positive denominator
        self.make(num, r.denom().clone())
    }

    pub fn from_coeffs(&self, coeffs: &[Rational]) -> CycloNum {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        self.from_int_poly(&poly, den)
    }

    pub fn zeta_pow(&self, k: i64) -> CycloNum {
        let idx = k.rem_euclid(self.0.n as i64) as usize;
        self.make(self.0.powers[idx].clone(), BigInt::one())
    }

    fn check(&self, a: &CycloNum) -> Result<()> {
        if a.n != self.0.n {
            return Err(Error::ModulusMismatch(self.0.n, a.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_inv(&self, a: &CycloNum) -> Result<CycloNum> {
        self.check(a)?;
        self.inv(a).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        Ok(self.mul(a, &self.checked_inv(b)?))
    }

    pub fn pow(&self, a: &CycloNum, k: i64) -> Result<CycloNum> {
        let base = if k < 0 { self.checked_inv(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// Integer coefficients in `-bound..=bound`, over a denominator in `1..=max_den`.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64, max_den: i64) -> CycloNum {
        let num = (0..self.degree()).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect();
        self.make(num, BigInt::from(rng.random_range(1..=max_den.max(1))))
    }

    /// Inverse of an integral polynomial modulo Φ_n by the extended Euclidean
    /// algorithm over Q[x].
    fn inv_poly(&self, a: &[BigInt]) -> Vec<Rational> {
        type Poly = Vec<Rational>;
        fn trim(p: &mut Poly) {
            while p.last().is_some_and(Zero::is_zero) {
                p.pop();
            }
        }
        fn sub_mul(a: &Poly, q: &Poly, b: &Poly) -> Poly {
            let mut out = a.clone();
            let len = (q.len() + b.len()).saturating_sub(1).max(a.len());
            out.resize(len, Rational::zero());
            for (i, x) in q.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    out[i + j] -= x * y;
                }
            }
            trim(&mut out);
            out
        }
        fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
            let mut rem = a.clone();
            let db = b.len() - 1;
            let lead = b[db].recip();
            if rem.len() <= db {
                return (vec![], rem);
            }
            let mut quot = vec![Rational::zero(); rem.len() - db];
            for k in (db..rem.len()).rev() {
                if rem[k].is_zero() {
                    continue;
                }
                let c = &rem[k] * &lead;
                for j in 0..=db {
                    let t = &c * &b[j];
                    rem[k - db + j] -= t;
                }
                quot[k - db] = c;
            }
            trim(&mut rem);
            (quot, rem)
        }

        let to_q = |p: &[BigInt]| -> Poly {
            let mut v: Poly = p.iter().map(|c| Rational::from_integer(c.clone())).collect();
            trim(&mut v);
            v
        };
        let (mut r0, mut r1) = (to_q(&self.0.phi), to_q(a));
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_n is irreducible, so the gcd r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        s0.iter().map(|x| x * &c).collect()
    }
}

impl Ring for CycloField {
    type Elem = CycloNum;

    fn zero(&self) -> CycloNum {
        CycloNum { n: self.0.n, num: vec![BigInt::zero(); self.degree()], den: BigInt::one() }
    }

    fn one(&self) -> CycloNum {
        self.from_int(1)
    }

    fn is_zero(&self, a: &CycloNum) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        assert_eq!(a.n, b.n, "cyclotomic modulus mismatch");
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return self.make(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        self.make(num, &a.den * &b.den)
    }

    fn neg(&self, a: &CycloNum) -> CycloNum {
        CycloNum { n: a.n, num: a.num.iter().map(|x| -x).collect(), den: a.den.clone() }
    }

    fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        assert_eq!(a.n, b.n, "cyclotomic modulus mismatch");
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let d = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.from_int_poly(&prod, &a.den * &b.den)
    }

    fn from_int(&self, k: i64) -> CycloNum {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = BigInt::from(k);
        CycloNum { n: self.0.n, num, den: BigInt::one() }
    }
}

impl Field for CycloField {
    fn inv(&self, a: &CycloNum) -> Option<CycloNum> {
        if a.is_zero() {
            return None;
        }
        let s = self.inv_poly(&a.num);
        let mut inv = self.from_coeffs(&s);
        if !a.den.is_one() {
            inv = self.mul(&inv, &self.from_rational(&Rational::from_integer(a.den.clone())));
        }
        Some(inv)
    }
}

/// A ring homomorphism Z G -> Q(ζ_n) sending the generator of factor `i` to
/// ζ_n^{e_i}.
#[derive(Clone)]
pub struct Representation {
    spec: GroupSpec,
    generator_exponents: Vec<i64>,
    field: CycloField,
}

impl Representation {
    pub fn new(spec: GroupSpec, modulus_n: u64, generator_exponents: Vec<i64>) -> Result<Self> {
        spec.check()?;
        let field = CycloField::new(modulus_n)?;
        if generator_exponents.len() != spec.num_factors() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generator exponents for {} factors",
                generator_exponents.len(),
                spec.num_factors()
            )));
        }
        let n = modulus_n as i64;
        let generator_exponents: Vec<i64> = generator_exponents.iter().map(|e| e.rem_euclid(n)).collect();
        for (i, (&m, &e)) in spec.factor_orders().iter().zip(&generator_exponents).enumerate() {
            if (m as i64 * e) % n != 0 {
                return Err(Error::InvalidRepresentation(format!(
                    "generator {i} of order {m} cannot map to z^{e} in Q(zeta_{n})"
                )));
            }
        }
        Ok(Self { spec, generator_exponents, field })
    }

    /// Parses `n=<modulus>;g0=<e0>,g1=<e1>,...`; a missing `n=` defaults to
    /// `default_modulus`.
    pub fn parse(spec: &GroupSpec, s: &str, default_modulus: Option<u64>) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("representation {s:?}: {msg}"));
        let mut modulus = default_modulus;
        let mut exps: Vec<Option<i64>> = vec![None; spec.num_factors()];
        for part in s.split([';', ',']).map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let key = key.trim();
            let value = value.trim();
            if key == "n" {
                modulus = Some(value.parse().map_err(|_| bad(format!("bad modulus {value:?}")))?);
            } else if let Some(idx) = key.strip_prefix('g') {
                let idx: usize = idx.parse().map_err(|_| bad(format!("bad generator key {key:?}")))?;
                let slot = exps.get_mut(idx).ok_or_else(|| bad(format!("no generator {idx}")))?;
                *slot = Some(value.parse().map_err(|_| bad(format!("bad exponent {value:?}")))?);
            } else {
                return Err(bad(format!("unknown key {key:?}")));
            }
        }
        let modulus = modulus.ok_or_else(|| bad("missing n=<modulus>".into()))?;
        let exps = exps
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| bad(format!("missing g{i}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec.clone(), modulus, exps)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn generator_exponents(&self) -> &[i64] {
        &self.generator_exponents
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn evaluate(&self, x: &GroupRingElem) -> Result<CycloNum> {
        self.spec.check_elem(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &GroupRingElem) -> CycloNum {
        let n = self.field.modulus();
        let mut acc = vec![BigInt::zero(); n as usize];
        for (w, c) in x.terms() {
            let k = w
                .letters()
                .iter()
                .map(|&(f, e)| (e as i64 * self.generator_exponents[f]).rem_euclid(n as i64))
                .sum::<i64>()
                .rem_euclid(n as i64) as usize;
            acc[k] += c;
        }
        let d = self.field.degree();
        let mut poly = vec![BigInt::zero(); d];
        for (k, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in poly.iter_mut().zip(&self.field.0.powers[k]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        self.field.make(poly, BigInt::one())
    }

    /// `±ρ(G)`: the group generated by -1 and the generator images.
    pub fn unit_subgroup(&self) -> UnitSubgroup {
        let f = &self.field;
        let mut gens = vec![f.from_int(-1)];
        gens.extend(self.generator_exponents.iter().map(|&e| f.zeta_pow(e)));
        let mut elements: BTreeSet<CycloNum> = BTreeSet::from([f.one()]);
        let mut frontier = vec![f.one()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = f.mul(&x, g);
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        UnitSubgroup { field: f.clone(), elements: elements.into_iter().collect() }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> =
            self.generator_exponents.iter().enumerate().map(|(i, e)| format!("g{i}={e}")).collect();
        write!(f, "n={};{}", self.modulus(), gens.join(","))
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({} over {})", self, self.spec)
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.modulus() == other.modulus()
            && self.generator_exponents == other.generator_exponents
    }
}

impl Eq for Representation {}

/// A finite subgroup of Q(ζ_n)^× containing ±1, elements sorted.
#[derive(Clone, Debug)]
pub struct UnitSubgroup {
    field: CycloField,
    elements: Vec<CycloNum>,
}

impl PartialEq for UnitSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for UnitSubgroup {}

impl UnitSubgroup {
    pub fn elements(&self) -> &[CycloNum] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn contains(&self, u: &CycloNum) -> bool {
        self.elements.binary_search(u).is_ok()
    }

    /// The least element of the orbit `{w·u : w ∈ units}`.
    pub fn canonical_rep(&self, u: &CycloNum) -> Result<CycloNum> {
        self.field.check(u)?;
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self
            .elements
            .iter()
            .map(|w| self.field.mul(w, u))
            .min()
            .expect("unit subgroup contains 1"))
    }

    /// Whether `u / v` is one of the units.
    pub fn same_class(&self, u: &CycloNum, v: &CycloNum) -> Result<bool> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.field.div(u, v)?;
        Ok(self.contains(&q))
    }
}

/// A nonzero value in Q(ζ_n)^× / units, stored by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionClass {
    representative: CycloNum,
    units: UnitSubgroup,
}

impl TorsionClass {
    pub fn new(value: &CycloNum, units: &UnitSubgroup) -> Result<Self> {
        Ok(Self { representative: units.canonical_rep(value)?, units: units.clone() })
    }

    pub fn trivial(units: &UnitSubgroup) -> Self {
        Self::new(&units.field.one(), units).expect("1 is nonzero")
    }

    pub fn representative(&self) -> &CycloNum {
        &self.representative
    }

    pub fn units(&self) -> &UnitSubgroup {
        &self.units
    }

    pub fn is_trivial(&self) -> bool {
        self.units.contains(&self.representative)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.units != other.units {
            return Err(Error::ShapeMismatch("torsion classes over different unit groups".into()));
        }
        Self::new(&self.units.field.mul(&self.representative, &other.representative), &self.units)
    }

    pub fn inv(&self) -> Self {
        let inv = self.units.field.checked_inv(&self.representative).expect("class representatives are nonzero");
        Self::new(&inv, &self.units).expect("inverse is nonzero")
    }

    pub fn contains(&self, value: &CycloNum) -> Result<bool> {
        self.units.same_class(value, &self.representative)
    }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}

/// `u / v ∈ units`.
pub fn torsion_class_eq(u: &CycloNum, v: &CycloNum, units: &UnitSubgroup) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::DivisionByZero);
    }
    units.same_class(u, v)
}
