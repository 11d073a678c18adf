//! Integral group rings of finite cyclic groups and of free products of
//! finite cyclic groups.
//!
//! Words are kept fully reduced (alternating factors, exponents in
//! `1..order`), so structural equality of [`GroupRingElem`]s is equality in
//! the ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(u64),
    FreeProduct(Vec<u64>),
}

impl GroupSpec {
    pub fn cyclic(order: u64) -> Result<Self> {
        let spec = GroupSpec::Cyclic(order);
        spec.check()?;
        Ok(spec)
    }

    pub fn free_product(orders: Vec<u64>) -> Result<Self> {
        let spec = GroupSpec::FreeProduct(orders);
        spec.check()?;
        Ok(spec)
    }

    pub fn trivial() -> Self {
        GroupSpec::Cyclic(1)
    }

    pub fn check(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic(0) => Err(Error::InvalidGroup("cyclic order must be >= 1".into())),
            GroupSpec::Cyclic(_) => Ok(()),
            GroupSpec::FreeProduct(orders) if orders.is_empty() => {
                Err(Error::InvalidGroup("free product needs at least one factor".into()))
            }
            GroupSpec::FreeProduct(orders) => match orders.iter().find(|&&m| m < 2) {
                Some(m) => Err(Error::InvalidGroup(format!("free product factor of order {m}"))),
                None => Ok(()),
            },
        }
    }

    pub fn factor_orders(&self) -> &[u64] {
        match self {
            GroupSpec::Cyclic(n) => std::slice::from_ref(n),
            GroupSpec::FreeProduct(orders) => orders,
        }
    }

    pub fn num_factors(&self) -> usize {
        self.factor_orders().len()
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupSpec::Cyclic(1))
    }

    pub fn check_word(&self, w: &GroupWord) -> Result<()> {
        let orders = self.factor_orders();
        if matches!(self, GroupSpec::Cyclic(_)) && w.0.len() > 1 {
            return Err(Error::InvalidWord(format!("{w} has more than one letter in a cyclic group")));
        }
        for (k, &(f, e)) in w.0.iter().enumerate() {
            let Some(&m) = orders.get(f) else {
                return Err(Error::InvalidWord(format!("{w}: no factor {f}")));
            };
            if e == 0 || e >= m {
                return Err(Error::InvalidWord(format!("{w}: exponent {e} not in 1..{m}")));
            }
            if k > 0 && w.0[k - 1].0 == f {
                return Err(Error::InvalidWord(format!("{w}: adjacent letters share factor {f}")));
            }
        }
        Ok(())
    }

    pub fn check_elem(&self, x: &GroupRingElem) -> Result<()> {
        x.terms.keys().try_for_each(|w| self.check_word(w))
    }

    /// The reduced word `g_factor^exp`; the identity when `exp` is a multiple
    /// of the factor order.
    pub fn letter(&self, factor: usize, exp: i64) -> Result<GroupWord> {
        let m = *self
            .factor_orders()
            .get(factor)
            .ok_or_else(|| Error::InvalidWord(format!("no factor {factor}")))?;
        let e = exp.rem_euclid(m as i64) as u64;
        Ok(if e == 0 { GroupWord::identity() } else { GroupWord(vec![(factor, e)]) })
    }

    pub fn word_multiply(&self, a: &GroupWord, b: &GroupWord) -> Result<GroupWord> {
        self.check_word(a)?;
        self.check_word(b)?;
        Ok(self.mul_words(a, b))
    }

    pub(crate) fn mul_words(&self, a: &GroupWord, b: &GroupWord) -> GroupWord {
        if b.0.is_empty() {
            return a.clone();
        }
        if a.0.is_empty() {
            return b.clone();
        }
        let orders = self.factor_orders();
        let mut out = a.0.clone();
        for &(f, e) in &b.0 {
            match out.last_mut() {
                Some(top) if top.0 == f => {
                    let s = (top.1 + e) % orders[f];
                    if s == 0 {
                        out.pop();
                    } else {
                        top.1 = s;
                    }
                }
                _ => out.push((f, e)),
            }
        }
        GroupWord(out)
    }

    pub fn word_inverse(&self, w: &GroupWord) -> GroupWord {
        let orders = self.factor_orders();
        GroupWord(w.0.iter().rev().map(|&(f, e)| (f, orders[f] - e)).collect())
    }

    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, max_letters: usize) -> GroupWord {
        let orders = self.factor_orders();
        let len = match self {
            GroupSpec::Cyclic(1) => 0,
            GroupSpec::Cyclic(_) => rng.random_range(0..=1),
            GroupSpec::FreeProduct(_) => rng.random_range(0..=max_letters),
        };
        let mut letters: Vec<(usize, u64)> = Vec::with_capacity(len);
        while letters.len() < len {
            let f = rng.random_range(0..orders.len());
            if letters.last().is_some_and(|&(g, _)| g == f) {
                if orders.len() == 1 {
                    break;
                }
                continue;
            }
            letters.push((f, rng.random_range(1..orders[f])));
        }
        GroupWord(letters)
    }

    pub fn norm_element(&self, factor: usize, generator_exp: i64) -> Result<GroupRingElem> {
        let m = self.factor_orders()[factor] as i64;
        let mut x = GroupRingElem::zero();
        for k in 0..m {
            x = x.add(&GroupRingElem::from_word(self.letter(factor, generator_exp * k)?));
        }
        Ok(x)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z/{n}"),
            GroupSpec::FreeProduct(orders) => {
                let parts: Vec<String> = orders.iter().map(|m| format!("Z/{m}")).collect();
                write!(f, "{}", parts.join(" * "))
            }
        }
    }
}

/// A reduced word: `(factor, exponent)` letters, adjacent factors distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord(pub Vec<(usize, u64)>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[(usize, u64)] {
        &self.0
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { format!("g{g}") } else { format!("g{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Finite Z-linear combination of reduced words, zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElem {
    terms: BTreeMap<GroupWord, BigInt>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(GroupWord::identity())
    }

    pub fn from_word(w: GroupWord) -> Self {
        Self::from_term(BigInt::one(), w)
    }

    pub fn from_int(k: impl Into<BigInt>) -> Self {
        Self::from_term(k.into(), GroupWord::identity())
    }

    pub fn from_term(c: BigInt, w: GroupWord) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, GroupWord)>) -> Self {
        let mut x = Self::zero();
        for (c, w) in terms {
            x.add_term(c.into(), w);
        }
        x
    }

    fn add_term(&mut self, c: BigInt, w: GroupWord) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    /// Sum of coefficients: the ring map Z G -> Z induced by G -> 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The coefficient of the identity word.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&GroupWord::identity()).cloned().unwrap_or_default()
    }

    /// `Some((±1, g))` when this element is a trivial unit `±g`.
    pub fn as_signed_word(&self) -> Option<(i8, &GroupWord)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, w))
        } else if (-c).is_one() {
            Some((-1, w))
        } else {
            None
        }
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (w.is_identity(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{w}")?,
                (false, false) => write!(f, "{mag}*{w}")?,
            }
        }
        Ok(())
    }
}

impl Ring for GroupSpec {
    type Elem = GroupRingElem;

    fn zero(&self) -> GroupRingElem {
        GroupRingElem::zero()
    }

    fn one(&self) -> GroupRingElem {
        GroupRingElem::one()
    }

    fn is_zero(&self, a: &GroupRingElem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        a.add(b)
    }

    fn neg(&self, a: &GroupRingElem) -> GroupRingElem {
        a.neg()
    }

    fn mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.add_term(ca * cb, self.mul_words(wa, wb));
            }
        }
        out
    }

    fn from_int(&self, k: i64) -> GroupRingElem {
        GroupRingElem::from_int(k)
    }
}

// Serialized as `[[coeff, [[factor, exp], ...]], ...]`. Coefficients that do
// not fit an i64 are written as decimal strings.

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("coefficient {n} is not an integer")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer literal {s:?}")),
        other => Err(format!("expected integer coefficient, found {other}")),
    }
}

impl Serialize for GroupRingElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&(bigint_to_json(c), w))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GroupRingElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ElemVisitor;

        impl<'de> Visitor<'de> for ElemVisitor {
            type Value = GroupRingElem;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of [coefficient, word] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut x = GroupRingElem::zero();
                while let Some((c, w)) = seq.next_element::<(serde_json::Value, GroupWord)>()? {
                    let c = bigint_from_json(&c).map_err(de::Error::custom)?;
                    x.add_term(c, w);
                }
                Ok(x)
            }
        }

        d.deserialize_seq(ElemVisitor)
    }
}
