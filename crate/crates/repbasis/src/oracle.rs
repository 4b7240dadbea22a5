//! Brute-force ground truth: representation functions, image sets, and
//! Sidon / B_F[g] predicates for finite sets under binary and m-ary forms.
//!
//! Everything here counts by exhaustive enumeration of ordered tuples; the
//! point is to be obviously correct, not fast. Counts are exact: pair values
//! are evaluated in 128-bit arithmetic, so nothing ever wraps, and a value
//! that cannot be represented in the result type is an explicit error.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{IntSet, LinearForm, MaryForm};

/// Window-restricted tabulation n ↦ R_{A,F}(n). Zero counts are omitted
/// from storage and serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepTable {
    lo: i64,
    hi: i64,
    counts: BTreeMap<i64, u64>,
}

impl RepTable {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Exact count at n. Panics if n lies outside the tabulated window,
    /// where the table knows nothing.
    pub fn count(&self, n: i64) -> u64 {
        assert!(
            self.lo <= n && n <= self.hi,
            "count({n}) outside tabulated window [{}, {}]",
            self.lo,
            self.hi
        );
        self.counts.get(&n).copied().unwrap_or(0)
    }

    /// (n, count) pairs with count > 0, ascending in n.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&n, &c)| (n, c))
    }

    pub fn max_count(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Total number of tuples landing inside the window.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

// Exact pair value; cannot overflow i128 for a validated binary form
// (coprimality rules out both coefficients being i64::MIN).
fn pair_value(form: &LinearForm, a1: i64, a2: i64) -> i128 {
    form.apply_wide(a1, a2)
}

/// R_{A,F}(n): the number of ordered pairs (a1, a2) ∈ A² with
/// u1*a1 + u2*a2 = n. Ordered means (a, a') and (a', a) count separately.
pub fn rep_count(a: &IntSet, form: &LinearForm, n: i64) -> Result<u64> {
    let target = i128::from(n);
    let mut count = 0u64;
    for a1 in a {
        for a2 in a {
            if pair_value(form, a1, a2) == target {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Tabulates R_{A,F} over the closed window [lo, hi] in a single pass over
/// all ordered pairs; values outside the window are discarded.
pub fn rep_table(a: &IntSet, form: &LinearForm, lo: i64, hi: i64) -> Result<RepTable> {
    if lo > hi {
        return Err(Error::InvalidParams(format!(
            "window is empty: lo = {lo} > hi = {hi}"
        )));
    }
    let (wlo, whi) = (i128::from(lo), i128::from(hi));
    let mut counts = BTreeMap::new();
    for a1 in a {
        for a2 in a {
            let v = pair_value(form, a1, a2);
            if wlo <= v && v <= whi {
                *counts.entry(v as i64).or_insert(0u64) += 1;
            }
        }
    }
    Ok(RepTable { lo, hi, counts })
}

/// Counts for every attained value, i.e. the support of R_{A,F} with
/// multiplicities. Sum of all counts is |A|² exactly.
pub fn rep_counts(a: &IntSet, form: &LinearForm) -> Result<BTreeMap<i64, u64>> {
    let mut counts = BTreeMap::new();
    for a1 in a {
        for a2 in a {
            let v = i64::try_from(pair_value(form, a1, a2)).map_err(|_| Error::Range)?;
            *counts.entry(v).or_insert(0u64) += 1;
        }
    }
    Ok(counts)
}

/// F(A, B) = {u1*a + u2*b : a ∈ A, b ∈ B}; `image(a, a, form)` realizes F(A).
pub fn image(a: &IntSet, b: &IntSet, form: &LinearForm) -> Result<IntSet> {
    let mut values = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            values.push(i64::try_from(pair_value(form, x, y)).map_err(|_| Error::Range)?);
        }
    }
    Ok(IntSet::from_vec(values))
}

// Work estimate |A|^m, saturating; anything above the cap is rejected
// before enumeration starts.
fn tuple_budget(set_len: usize, arity: usize) -> u128 {
    let mut budget: u128 = 1;
    for _ in 0..arity {
        budget = budget.saturating_mul(set_len as u128);
    }
    budget
}

fn check_cap(a: &IntSet, form: &MaryForm, cap: u64) -> Result<()> {
    let required = tuple_budget(a.len(), form.arity());
    if required > u128::from(cap) {
        return Err(Error::WorkCapExceeded { required, cap });
    }
    Ok(())
}

// Exhaustive m-ary enumeration with exact branch-and-bound pruning: the
// suffix extrema bracket every completion of a partial tuple, so a subtree
// is skipped only when no completion can land in [lo, hi].
struct MaryEnum<'a> {
    elements: &'a [i64],
    coeffs: &'a [i64],
    suffix_min: Vec<i128>,
    suffix_max: Vec<i128>,
}

impl<'a> MaryEnum<'a> {
    fn new(a: &'a IntSet, form: &'a MaryForm) -> MaryEnum<'a> {
        let elements = a.as_slice();
        let coeffs = form.coefficients();
        let m = coeffs.len();
        let (mut suffix_min, mut suffix_max) = (vec![0i128; m + 1], vec![0i128; m + 1]);
        if let (Some(&min_a), Some(&max_a)) = (elements.first(), elements.last()) {
            for i in (0..m).rev() {
                let u = i128::from(coeffs[i]);
                let (lo_term, hi_term) = if u > 0 {
                    (u * i128::from(min_a), u * i128::from(max_a))
                } else {
                    (u * i128::from(max_a), u * i128::from(min_a))
                };
                suffix_min[i] = suffix_min[i + 1].saturating_add(lo_term);
                suffix_max[i] = suffix_max[i + 1].saturating_add(hi_term);
            }
        }
        MaryEnum {
            elements,
            coeffs,
            suffix_min,
            suffix_max,
        }
    }

    fn visit_window(&self, lo: i128, hi: i128, visit: &mut impl FnMut(i128)) -> Result<()> {
        if self.elements.is_empty() {
            return Ok(());
        }
        self.recurse(0, 0, lo, hi, visit)
    }

    fn recurse(
        &self,
        depth: usize,
        partial: i128,
        lo: i128,
        hi: i128,
        visit: &mut impl FnMut(i128),
    ) -> Result<()> {
        if depth == self.coeffs.len() {
            if lo <= partial && partial <= hi {
                visit(partial);
            }
            return Ok(());
        }
        if partial.saturating_add(self.suffix_min[depth]) > hi
            || partial.saturating_add(self.suffix_max[depth]) < lo
        {
            return Ok(());
        }
        let u = i128::from(self.coeffs[depth]);
        for &a in self.elements {
            let term = u.checked_mul(i128::from(a)).ok_or(Error::Range)?;
            let next = partial.checked_add(term).ok_or(Error::Range)?;
            self.recurse(depth + 1, next, lo, hi, visit)?;
        }
        Ok(())
    }
}

/// R_{A,F}(n) for an m-ary form, by capped exhaustive enumeration of A^m.
pub fn mary_rep_count(a: &IntSet, form: &MaryForm, n: i64, cap: u64) -> Result<u64> {
    check_cap(a, form, cap)?;
    let mut count = 0u64;
    let target = i128::from(n);
    MaryEnum::new(a, form).visit_window(target, target, &mut |_| count += 1)?;
    Ok(count)
}

/// Window tabulation of the m-ary representation function, one capped
/// enumeration for the whole window.
pub fn mary_rep_table(a: &IntSet, form: &MaryForm, lo: i64, hi: i64, cap: u64) -> Result<RepTable> {
    if lo > hi {
        return Err(Error::InvalidParams(format!(
            "window is empty: lo = {lo} > hi = {hi}"
        )));
    }
    check_cap(a, form, cap)?;
    let mut counts = BTreeMap::new();
    MaryEnum::new(a, form).visit_window(i128::from(lo), i128::from(hi), &mut |v| {
        *counts.entry(v as i64).or_insert(0u64) += 1;
    })?;
    Ok(RepTable { lo, hi, counts })
}

/// Answer of a B_F[g] check: either the bound holds on the window, or the
/// smallest violating value is reported with its count.
#[derive(Debug, Clone, Serialize)]
pub struct BfgVerdict {
    pub holds: bool,
    pub g: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BfgWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BfgWitness {
    pub n: i64,
    pub count: u64,
}

/// Decides whether R_{A,F}(n) <= g for every n in [lo, hi]; g = 1 is the
/// Sidon property. The empty set holds vacuously.
pub fn is_b_f_g(
    a: &IntSet,
    form: &MaryForm,
    g: u64,
    lo: i64,
    hi: i64,
    cap: u64,
) -> Result<BfgVerdict> {
    if g < 1 {
        return Err(Error::InvalidParams("g must be at least 1".to_string()));
    }
    let table = mary_rep_table(a, form, lo, hi, cap)?;
    let witness = table
        .nonzero()
        .find(|&(_, count)| count > g)
        .map(|(n, count)| BfgWitness { n, count });
    Ok(BfgVerdict {
        holds: witness.is_none(),
        g,
        witness,
    })
}

/// [`is_b_f_g`] for a binary form.
pub fn is_b_f_g_binary(
    a: &IntSet,
    form: &LinearForm,
    g: u64,
    lo: i64,
    hi: i64,
    cap: u64,
) -> Result<BfgVerdict> {
    is_b_f_g(a, &MaryForm::from(form), g, lo, hi, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn form23() -> LinearForm {
        LinearForm::new(2, 3).unwrap()
    }

    #[test]
    fn rep_count_examples() {
        let a = IntSet::from_vec(vec![0]);
        assert_eq!(rep_count(&a, &form23(), 0).unwrap(), 1);
        assert_eq!(rep_count(&a, &form23(), 1).unwrap(), 0);
        let a = IntSet::from_vec(vec![-2, 3]);
        assert_eq!(rep_count(&a, &form23(), 0).unwrap(), 1); // F(3, -2) = 0
        assert_eq!(rep_count(&IntSet::new(), &form23(), 5).unwrap(), 0);
    }

    #[test]
    fn rep_table_examples() {
        let a = IntSet::from_vec(vec![-2, 3]);
        let table = rep_table(&a, &form23(), -11, 16).unwrap();
        let expected: Vec<(i64, u64)> = vec![(-10, 1), (0, 1), (5, 1), (15, 1)];
        assert_eq!(table.nonzero().collect::<Vec<_>>(), expected);
        assert_eq!(table.count(7), 0);
        assert_eq!(table.total(), 4);

        let single = rep_table(&IntSet::from_vec(vec![0]), &form23(), 0, 0).unwrap();
        assert_eq!(single.count(0), 1);

        let empty = rep_table(&IntSet::new(), &form23(), -5, 5).unwrap();
        assert_eq!(empty.total(), 0);

        assert!(rep_table(&a, &form23(), 3, -3).is_err());
    }

    #[test]
    #[should_panic(expected = "outside tabulated window")]
    fn rep_table_refuses_out_of_window_queries() {
        let a = IntSet::from_vec(vec![-2, 3]);
        let table = rep_table(&a, &form23(), -11, 16).unwrap();
        let _ = table.count(17);
    }

    #[test]
    fn image_examples() {
        let a = IntSet::from_vec(vec![3, -2]);
        let img = image(&a, &a, &form23()).unwrap();
        assert_eq!(img.as_slice(), &[-10, 0, 5, 15]);
        assert!(image(&IntSet::new(), &a, &form23()).unwrap().is_empty());
        let zero = IntSet::from_vec(vec![0]);
        assert_eq!(image(&zero, &zero, &form23()).unwrap().as_slice(), &[0]);
    }

    #[test]
    fn mary_rep_count_examples() {
        let f = MaryForm::new(vec![1, 2]).unwrap();
        let a = IntSet::from_vec(vec![0, 1]);
        assert_eq!(mary_rep_count(&a, &f, 3, 100).unwrap(), 1);
        assert_eq!(mary_rep_count(&a, &f, 4, 100).unwrap(), 0);

        let f3 = MaryForm::new(vec![1, 2, 4]).unwrap();
        let zero = IntSet::from_vec(vec![0]);
        assert_eq!(mary_rep_count(&zero, &f3, 0, 100).unwrap(), 1);
    }

    #[test]
    fn mary_work_cap_is_enforced() {
        let f = MaryForm::new(vec![1, 2]).unwrap();
        let a = IntSet::from_vec(vec![0, 1]);
        let err = mary_rep_count(&a, &f, 3, 3).unwrap_err();
        match err {
            Error::WorkCapExceeded { required, cap } => {
                assert_eq!((required, cap), (4, 3));
            }
            other => panic!("expected work-cap error, got {other:?}"),
        }
    }

    #[test]
    fn bfg_examples() {
        let a = IntSet::from_vec(vec![-2, 3]);
        let verdict = is_b_f_g_binary(&a, &form23(), 1, -20, 20, 10_000).unwrap();
        assert!(verdict.holds);

        let f = MaryForm::new(vec![1, 2]).unwrap();
        let a = IntSet::from_vec(vec![0, 1, 3]);
        let verdict = is_b_f_g(&a, &f, 1, 0, 9, 10_000).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness, Some(BfgWitness { n: 3, count: 2 }));

        let verdict = is_b_f_g(&IntSet::new(), &f, 1, -5, 5, 10_000).unwrap();
        assert!(verdict.holds);

        assert!(is_b_f_g(&a, &f, 0, 0, 9, 10_000).is_err());
    }

    #[test]
    fn rep_table_serialization_omits_zeros() {
        let a = IntSet::from_vec(vec![-2, 3]);
        let table = rep_table(&a, &form23(), -11, 16).unwrap();
        let json = serde_json::to_string(&table).unwrap();
        assert_eq!(
            json,
            r#"{"lo":-11,"hi":16,"counts":{"-10":1,"0":1,"5":1,"15":1}}"#
        );
        let back: RepTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
    }

    proptest! {
        // Tabulation agrees with single-fiber enumeration pointwise.
        #[test]
        fn table_matches_rep_count(
            elements in proptest::collection::btree_set(-40i64..40, 0..7),
            lo in -60i64..0,
            hi in 0i64..60,
        ) {
            let a: IntSet = elements.into_iter().collect();
            let form = form23();
            let table = rep_table(&a, &form, lo, hi).unwrap();
            for n in lo..=hi {
                prop_assert_eq!(table.count(n), rep_count(&a, &form, n).unwrap());
            }
        }

        // Every ordered pair lands somewhere: Σ counts = |A|².
        #[test]
        fn full_counts_sum_to_square(
            elements in proptest::collection::btree_set(-50i64..50, 0..10),
            u1 in -9i64..=9,
            u2 in -9i64..=9,
        ) {
            prop_assume!(LinearForm::new(u1, u2).is_ok());
            let form = LinearForm::new(u1, u2).unwrap();
            let a: IntSet = elements.into_iter().collect();
            let counts = rep_counts(&a, &form).unwrap();
            let total: u64 = counts.values().sum();
            prop_assert_eq!(total, (a.len() * a.len()) as u64);
            // image(A, A) is exactly the support of the counts.
            let img = image(&a, &a, &form).unwrap();
            let support: Vec<i64> = counts.keys().copied().collect();
            prop_assert_eq!(img.as_slice(), &support[..]);
        }

        // Transposing the pair swaps the coefficients: counts agree.
        #[test]
        fn swap_symmetry(
            elements in proptest::collection::btree_set(-30i64..30, 0..7),
            n in -100i64..100,
        ) {
            let a: IntSet = elements.into_iter().collect();
            let form = form23();
            let swapped = form.swapped();
            prop_assert_eq!(
                rep_count(&a, &form, n).unwrap(),
                rep_count(&a, &swapped, n).unwrap()
            );
        }

        // The m-ary path with m = 2 agrees with the binary tabulation.
        #[test]
        fn mary_agrees_with_binary(
            elements in proptest::collection::btree_set(-20i64..20, 0..6),
        ) {
            let a: IntSet = elements.into_iter().collect();
            let form = form23();
            let mary = MaryForm::from(&form);
            let t1 = rep_table(&a, &form, -150, 150).unwrap();
            let t2 = mary_rep_table(&a, &mary, -150, 150, 1_000_000).unwrap();
            prop_assert_eq!(t1, t2);
        }
    }
}
