//! Core domain types: binary and m-ary linear forms, Bézout data, finite
//! integer sets, and finitely described target functions f: ℤ → ℕ₀ ∪ {∞}
//! with decidable zero-sets.
//!
//! A binary form u1*x1 + u2*x2 is *eligible* for the augmentation machinery
//! when its coefficients are nonzero, relatively prime, and u1*u2 avoids
//! {1, -1, -2}. Eligibility is exactly what makes the seven coefficients
//! -u1², -u1u2, u1u2, u2², u2²-u1², u2(u1+u2), -u1(u1+u2) pairwise
//! distinct, which the augmentation search depends on.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Nonnegative gcd of two machine integers; gcd(0, 0) = 0.
///
/// Returned as u64 because |i64::MIN| does not fit in i64.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns (g, v1, v2) with u1*v1 + u2*v2 = g = gcd(u1, u2) > 0.
///
/// The output is canonical: among all valid pairs, v1 has minimal absolute
/// value, with ties broken toward v1 >= 0. When u2 = 0 the cofactor v2 is
/// unconstrained and fixed to 0.
pub fn extended_gcd(u1: i64, u2: i64) -> Result<(i64, i64, i64)> {
    if u1 == 0 && u2 == 0 {
        return Err(Error::BothZero);
    }
    let (a, b) = (i128::from(u1), i128::from(u2));
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let (mut g, mut v1) = (old_r, old_s);
    if g < 0 {
        g = -g;
        v1 = -v1;
    }
    let v2;
    if b != 0 {
        // All solutions differ in v1 by multiples of u2/g; pick the residue
        // of minimal absolute value, preferring the nonnegative one on ties.
        let step = (b / g).abs();
        let r1 = v1.rem_euclid(step);
        let alt = r1 - step;
        v1 = if alt.abs() < r1.abs() { alt } else { r1 };
        v2 = (g - a * v1) / b;
    } else {
        v2 = 0;
    }
    let g = i64::try_from(g).map_err(|_| Error::Range)?;
    let v1 = i64::try_from(v1).map_err(|_| Error::Range)?;
    let v2 = i64::try_from(v2).map_err(|_| Error::Range)?;
    Ok((g, v1, v2))
}

/// The seven integers attached to a coefficient pair:
/// [-u1², -u1u2, u1u2, u2², u2²-u1², u2(u1+u2), -u1(u1+u2)].
///
/// Computable for any pair (overflow aside); pairwise distinct exactly when
/// the pair is nonzero, coprime and u1*u2 avoids {1, -1, -2}. Exposed raw so
/// the excluded products can be probed for their collisions.
pub fn seven_coefficients(u1: i64, u2: i64) -> Result<[i64; 7]> {
    let sq1 = u1.checked_mul(u1).ok_or(Error::Range)?;
    let sq2 = u2.checked_mul(u2).ok_or(Error::Range)?;
    let prod = u1.checked_mul(u2).ok_or(Error::Range)?;
    let sum = u1.checked_add(u2).ok_or(Error::Range)?;
    Ok([
        sq1.checked_neg().ok_or(Error::Range)?,
        prod.checked_neg().ok_or(Error::Range)?,
        prod,
        sq2,
        sq2.checked_sub(sq1).ok_or(Error::Range)?,
        u2.checked_mul(sum).ok_or(Error::Range)?,
        u1.checked_mul(sum)
            .ok_or(Error::Range)?
            .checked_neg()
            .ok_or(Error::Range)?,
    ])
}

fn pairwise_distinct(xs: &[i64]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, x)| xs[i + 1..].iter().all(|y| y != x))
}

/// A binary linear form u1*x1 + u2*x2 with nonzero, relatively prime
/// coefficients whose product avoids {1, -1, -2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearForm {
    u1: i64,
    u2: i64,
    seven: [i64; 7],
}

impl LinearForm {
    /// Validates the coefficient pair and returns the form. Each rejected
    /// invariant maps to its own error: zero coefficient, common factor,
    /// excluded product.
    pub fn new(u1: i64, u2: i64) -> Result<Self> {
        if u1 == 0 {
            return Err(Error::ZeroCoefficient(1));
        }
        if u2 == 0 {
            return Err(Error::ZeroCoefficient(2));
        }
        let g = gcd(u1, u2);
        if g != 1 {
            return Err(Error::NotCoprime { gcd: g });
        }
        let prod = u1.checked_mul(u2).ok_or(Error::Range)?;
        if prod == 1 || prod == -1 || prod == -2 {
            return Err(Error::ExcludedProduct(prod));
        }
        let seven = seven_coefficients(u1, u2)?;
        // Guaranteed by eligibility; kept as a bug trap.
        assert!(
            pairwise_distinct(&seven),
            "seven-coefficient certificate collided for eligible form ({u1}, {u2})"
        );
        Ok(LinearForm { u1, u2, seven })
    }

    pub fn u1(&self) -> i64 {
        self.u1
    }

    pub fn u2(&self) -> i64 {
        self.u2
    }

    /// The distinctness certificate computed at validation time.
    pub fn seven_coefficients(&self) -> [i64; 7] {
        self.seven
    }

    /// Exact evaluation u1*a1 + u2*a2 in 64-bit arithmetic.
    pub fn apply(&self, a1: i64, a2: i64) -> Result<i64> {
        self.u1
            .checked_mul(a1)
            .and_then(|x| self.u2.checked_mul(a2).and_then(|y| x.checked_add(y)))
            .ok_or(Error::Range)
    }

    /// Evaluation in 128-bit arithmetic; cannot overflow for 64-bit inputs.
    pub fn apply_wide(&self, a1: i64, a2: i64) -> i128 {
        i128::from(self.u1) * i128::from(a1) + i128::from(self.u2) * i128::from(a2)
    }

    /// The form with the two coefficients swapped (always eligible too).
    pub fn swapped(&self) -> LinearForm {
        LinearForm {
            u1: self.u2,
            u2: self.u1,
            seven: seven_coefficients(self.u2, self.u1)
                .expect("swap cannot overflow when the original did not"),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x1 + {}*x2", self.u1, self.u2)
    }
}

/// Cofactors (v1, v2) with u1*v1 + u2*v2 = 1 for an associated binary form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutPair {
    v1: i64,
    v2: i64,
}

impl BezoutPair {
    /// The canonical pair for a validated form (coprimality makes it exist).
    pub fn for_form(form: &LinearForm) -> BezoutPair {
        let (g, v1, v2) =
            extended_gcd(form.u1(), form.u2()).expect("validated form has nonzero coefficients");
        debug_assert_eq!(g, 1);
        BezoutPair { v1, v2 }
    }

    /// Wraps externally supplied cofactors, checking the identity.
    pub fn new(form: &LinearForm, v1: i64, v2: i64) -> Result<BezoutPair> {
        let lhs = i128::from(form.u1()) * i128::from(v1) + i128::from(form.u2()) * i128::from(v2);
        if lhs != 1 {
            return Err(Error::InvalidParams(format!(
                "({v1}, {v2}) is not a Bezout pair for {form}: combination = {lhs}"
            )));
        }
        Ok(BezoutPair { v1, v2 })
    }

    pub fn v1(&self) -> i64 {
        self.v1
    }

    pub fn v2(&self) -> i64 {
        self.v2
    }
}

/// An m-ary linear form u1*x1 + ... + um*xm with nonzero coefficients of
/// gcd 1. Unlike [`LinearForm`] there is no excluded-product condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaryForm {
    coefficients: Vec<i64>,
}

impl MaryForm {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "a linear form needs at least 2 coefficients, got {}",
                coefficients.len()
            )));
        }
        for (i, &u) in coefficients.iter().enumerate() {
            if u == 0 {
                return Err(Error::ZeroCoefficient(i + 1));
            }
        }
        let g = coefficients
            .iter()
            .fold(0u64, |acc, &u| gcd_u64(acc, u.unsigned_abs()));
        if g != 1 {
            return Err(Error::NotCoprime { gcd: g });
        }
        Ok(MaryForm { coefficients })
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Exact evaluation in 64-bit arithmetic.
    pub fn apply(&self, tuple: &[i64]) -> Result<i64> {
        assert_eq!(tuple.len(), self.arity(), "tuple arity mismatch");
        let mut acc = 0i64;
        for (&u, &a) in self.coefficients.iter().zip(tuple) {
            let term = u.checked_mul(a).ok_or(Error::Range)?;
            acc = acc.checked_add(term).ok_or(Error::Range)?;
        }
        Ok(acc)
    }
}

impl From<&LinearForm> for MaryForm {
    fn from(form: &LinearForm) -> MaryForm {
        MaryForm {
            coefficients: vec![form.u1(), form.u2()],
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A finite set of integers stored strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntSet {
    elements: Vec<i64>,
}

impl IntSet {
    pub fn new() -> IntSet {
        IntSet::default()
    }

    /// Builds a set from arbitrary values; duplicates collapse.
    pub fn from_vec(mut elements: Vec<i64>) -> IntSet {
        elements.sort_unstable();
        elements.dedup();
        IntSet { elements }
    }

    /// The set with two extra members (used for two-element augmentations).
    pub fn with_pair(&self, a: i64, b: i64) -> IntSet {
        let mut elements = self.elements.clone();
        elements.push(a);
        elements.push(b);
        IntSet::from_vec(elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, n: i64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, i64>> {
        self.elements.iter().copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.elements
    }

    /// Number of members in the closed interval [x1, x2]; 0 if x1 > x2.
    pub fn count_between(&self, x1: i64, x2: i64) -> u64 {
        if x1 > x2 {
            return 0;
        }
        let lo = self.elements.partition_point(|&a| a < x1);
        let hi = self.elements.partition_point(|&a| a <= x2);
        (hi - lo) as u64
    }

    pub fn is_superset_of(&self, other: &IntSet) -> bool {
        other.iter().all(|a| self.contains(a))
    }

    /// Parses either of the two accepted file formats: a JSON array of
    /// integers, or plain text with one decimal integer per line (blank
    /// lines ignored). Duplicates collapse.
    pub fn from_text(text: &str) -> Result<IntSet> {
        if text.trim_start().starts_with('[') {
            let elements: Vec<i64> = serde_json::from_str(text)?;
            return Ok(IntSet::from_vec(elements));
        }
        let mut elements = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: i64 = line.parse().map_err(|e| Error::Parse {
                line: idx + 1,
                message: format!("{e}: {line:?}"),
            })?;
            elements.push(value);
        }
        Ok(IntSet::from_vec(elements))
    }
}

impl FromIterator<i64> for IntSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> IntSet {
        IntSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = i64;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, i64>>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<IntSet, D::Error> {
        let elements = Vec::<i64>::deserialize(deserializer)?;
        Ok(IntSet::from_vec(elements))
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A value in ℕ₀ ∪ {∞}: how many representations a target should receive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub const ZERO: Multiplicity = Multiplicity::Finite(0);
    pub const ONE: Multiplicity = Multiplicity::Finite(1);

    pub fn is_zero(&self) -> bool {
        *self == Multiplicity::ZERO
    }

    /// True when the value is at least r (∞ dominates everything).
    pub fn at_least(&self, r: u64) -> bool {
        match self {
            Multiplicity::Finite(k) => *k >= r,
            Multiplicity::Infinite => true,
        }
    }

    /// min(self, cap) as a plain integer; ∞ collapses to the cap.
    pub fn capped(&self, cap: u64) -> u64 {
        match self {
            Multiplicity::Finite(k) => (*k).min(cap),
            Multiplicity::Infinite => cap,
        }
    }

    /// True when `count` many representations stay within the value.
    pub fn admits(&self, count: u64) -> bool {
        self.at_least(count)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(k) => serializer.serialize_u64(*k),
            Multiplicity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Multiplicity, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Multiplicity;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or the string \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(
                self,
                v: u64,
            ) -> std::result::Result<Multiplicity, E> {
                Ok(Multiplicity::Finite(v))
            }
            fn visit_i64<E: serde::de::Error>(
                self,
                v: i64,
            ) -> std::result::Result<Multiplicity, E> {
                u64::try_from(v)
                    .map(Multiplicity::Finite)
                    .map_err(|_| E::custom("multiplicity must be nonnegative"))
            }
            fn visit_str<E: serde::de::Error>(
                self,
                v: &str,
            ) -> std::result::Result<Multiplicity, E> {
                if v == "inf" {
                    Ok(Multiplicity::Infinite)
                } else {
                    Err(E::custom(format!("expected \"inf\", got {v:?}")))
                }
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

/// A decidable description of a density-zero set of integers.
///
/// The catalog is closed: every kind denotes a set of asymptotic density
/// zero by construction (finite lists trivially; squares and base powers by
/// growth; affine images and finite unions because density zero survives
/// dilation, translation and finite union).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZeroSetSpec {
    /// The empty set.
    #[default]
    Empty,
    /// An explicit finite list of members.
    FiniteList { members: Vec<i64> },
    /// {0, 1, 4, 9, ...}.
    PerfectSquares,
    /// {1, k, k², ...} for a base k >= 2.
    PowersOfBase { base: i64 },
    /// {scale*x + offset : x in inner} for scale != 0.
    ShiftedScaled {
        scale: i64,
        offset: i64,
        inner: Box<ZeroSetSpec>,
    },
    /// Finite union of catalog sets.
    Union { parts: Vec<ZeroSetSpec> },
}

impl ZeroSetSpec {
    pub fn finite_list(members: impl IntoIterator<Item = i64>) -> ZeroSetSpec {
        let mut members: Vec<i64> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        ZeroSetSpec::FiniteList { members }
    }

    /// Checks the per-kind parameter constraints (base >= 2, scale != 0).
    pub fn validate(&self) -> Result<()> {
        match self {
            ZeroSetSpec::Empty | ZeroSetSpec::FiniteList { .. } | ZeroSetSpec::PerfectSquares => {
                Ok(())
            }
            ZeroSetSpec::PowersOfBase { base } => {
                if *base < 2 {
                    Err(Error::InvalidParams(format!(
                        "powers-of-base requires base >= 2, got {base}"
                    )))
                } else {
                    Ok(())
                }
            }
            ZeroSetSpec::ShiftedScaled { scale, inner, .. } => {
                if *scale == 0 {
                    return Err(Error::InvalidParams(
                        "shifted-scaled requires scale != 0".to_string(),
                    ));
                }
                inner.validate()
            }
            ZeroSetSpec::Union { parts } => parts.iter().try_for_each(ZeroSetSpec::validate),
        }
    }

    /// Membership query; constant arithmetic per kind level.
    pub fn contains(&self, n: i64) -> bool {
        self.contains_wide(i128::from(n))
    }

    // Wide arithmetic keeps affine preimages exact near the i64 boundary.
    fn contains_wide(&self, n: i128) -> bool {
        match self {
            ZeroSetSpec::Empty => false,
            ZeroSetSpec::FiniteList { members } => members.iter().any(|&m| i128::from(m) == n),
            ZeroSetSpec::PerfectSquares => {
                if n < 0 {
                    return false;
                }
                let r = (n as u128).isqrt();
                r * r == n as u128
            }
            ZeroSetSpec::PowersOfBase { base } => {
                if n < 1 {
                    return false;
                }
                let base = i128::from(*base);
                let mut m = n;
                while m % base == 0 {
                    m /= base;
                }
                m == 1
            }
            ZeroSetSpec::ShiftedScaled {
                scale,
                offset,
                inner,
            } => {
                let Some(d) = n.checked_sub(i128::from(*offset)) else {
                    return false;
                };
                let scale = i128::from(*scale);
                d % scale == 0 && inner.contains_wide(d / scale)
            }
            ZeroSetSpec::Union { parts } => parts.iter().any(|p| p.contains_wide(n)),
        }
    }

    /// Number of members in [x1, x2], by membership queries; 0 if x1 > x2.
    pub fn count_between(&self, x1: i64, x2: i64) -> u64 {
        if x1 > x2 {
            return 0;
        }
        (x1..=x2).filter(|&n| self.contains(n)).count() as u64
    }

    pub fn is_empty_kind(&self) -> bool {
        matches!(self, ZeroSetSpec::Empty)
    }
}

/// A finitely described function f: ℤ → ℕ₀ ∪ {∞}.
///
/// Evaluation rule: an override wins, then zero-set membership forces 0,
/// then the default applies. Consistency demands a positive default (a zero
/// default would make f vanish on a co-finite set, which no density-zero
/// catalog entry can express) and forbids positive overrides inside the
/// zero set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTargetSpec")]
pub struct TargetSpec {
    default: Multiplicity,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    overrides: BTreeMap<i64, Multiplicity>,
    zero_set: ZeroSetSpec,
}

#[derive(Deserialize)]
struct RawTargetSpec {
    default: Multiplicity,
    #[serde(default)]
    overrides: BTreeMap<i64, Multiplicity>,
    #[serde(default)]
    zero_set: ZeroSetSpec,
}

impl TryFrom<RawTargetSpec> for TargetSpec {
    type Error = Error;
    fn try_from(raw: RawTargetSpec) -> Result<TargetSpec> {
        TargetSpec::new(raw.default, raw.overrides, raw.zero_set)
    }
}

impl TargetSpec {
    pub fn new(
        default: Multiplicity,
        overrides: BTreeMap<i64, Multiplicity>,
        zero_set: ZeroSetSpec,
    ) -> Result<TargetSpec> {
        if default.is_zero() {
            return Err(Error::InvalidSpec(
                "default multiplicity must be positive; a zero default zeroes the function \
                 outside a finite override set"
                    .to_string(),
            ));
        }
        zero_set.validate()?;
        for (&n, &v) in &overrides {
            if !v.is_zero() && zero_set.contains(n) {
                return Err(Error::InvalidSpec(format!(
                    "override {n} ↦ {v} contradicts zero-set membership of {n}"
                )));
            }
        }
        Ok(TargetSpec {
            default,
            overrides,
            zero_set,
        })
    }

    /// f ≡ value everywhere (value must be positive).
    pub fn constant(value: Multiplicity) -> Result<TargetSpec> {
        TargetSpec::new(value, BTreeMap::new(), ZeroSetSpec::Empty)
    }

    pub fn default_value(&self) -> Multiplicity {
        self.default
    }

    pub fn overrides(&self) -> &BTreeMap<i64, Multiplicity> {
        &self.overrides
    }

    pub fn zero_set(&self) -> &ZeroSetSpec {
        &self.zero_set
    }

    /// Evaluates f(n). Pure and total.
    pub fn eval(&self, n: i64) -> Multiplicity {
        if let Some(&v) = self.overrides.get(&n) {
            return v;
        }
        if self.zero_set.contains(n) {
            return Multiplicity::ZERO;
        }
        self.default
    }

    /// The full zero set W = f⁻¹(0): the declared zero set joined with the
    /// zero-valued overrides. This is the W the augmentation search must
    /// avoid.
    pub fn effective_zero_set(&self) -> ZeroSetSpec {
        let zeros: Vec<i64> = self
            .overrides
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(&n, _)| n)
            .collect();
        if zeros.is_empty() {
            return self.zero_set.clone();
        }
        let listed = ZeroSetSpec::finite_list(zeros);
        if self.zero_set.is_empty_kind() {
            listed
        } else {
            ZeroSetSpec::Union {
                parts: vec![self.zero_set.clone(), listed],
            }
        }
    }
}
