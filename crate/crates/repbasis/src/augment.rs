//! The two-element augmentation engine.
//!
//! Given a finite set A', a target b, and a zero set W disjoint from
//! F(A') ∪ {b}, the Bézout identity u1*v1 + u2*v2 = 1 makes every pair
//!
//! ```text
//! B_t = { b*v1 + u2*t,  b*v2 - u1*t }
//! ```
//!
//! hit the target: F(b*v1 + u2*t, b*v2 - u1*t) = b for every t. A value of
//! t is *admissible* when C_t = A' ∪ B_t raises the count at b by exactly
//! one, preserves every other existing count, gives each genuinely new value
//! count exactly one, and keeps F(C_t) clear of W. All but a density-zero
//! set of t qualify, so a short scan 0, 1, -1, 2, -2, ... finds one fast.
//!
//! Admissibility is decided by direct oracle verification of those four
//! outcomes on the finite sets involved, not by re-deriving the sparse
//! collision equations that make bad t rare.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{BezoutPair, IntSet, LinearForm, ZeroSetSpec};
use crate::oracle;

/// Default scan radius for the admissible-t search.
pub const DEFAULT_SEARCH_RADIUS: i64 = 10_000;

/// A candidate augmentation: the pair B_t and the grown set C_t = A' ∪ B_t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub t: i64,
    pub b: i64,
    /// (b*v1 + u2*t, b*v2 - u1*t); may degenerate to a single value.
    pub pair: (i64, i64),
    /// A' ∪ {pair}; has |A'| + 2 members exactly when t is admissible.
    pub c_set: IntSet,
}

/// Which admissibility requirement a candidate t failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectionCase {
    /// The pair collapsed or collided with A'.
    DegeneratePair,
    /// The count at b did not rise by exactly one.
    TargetCount,
    /// Some existing value of F(A') changed its count.
    PreservedCount,
    /// Some new value of F(C) received count ≠ 1.
    NewValueCount,
    /// Some value of F(C) lies in the zero set W.
    ZeroSetHit,
}

impl fmt::Display for RejectionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            RejectionCase::DegeneratePair => "degenerate-pair",
            RejectionCase::TargetCount => "target-count",
            RejectionCase::PreservedCount => "preserved-count",
            RejectionCase::NewValueCount => "new-value-count",
            RejectionCase::ZeroSetHit => "zero-set-hit",
        };
        f.write_str(label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Admissible,
    Rejected,
}

/// The failed case with the value that witnesses it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Rejection {
    pub case: RejectionCase,
    pub witness: i64,
    /// Observed count at the witness, where a count is what failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

/// How much verification work the check performed.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct CheckStats {
    /// Values of F(A') whose counts were re-verified.
    pub preserved_values: usize,
    /// Values of F(C) \ (F(A') ∪ {b}) whose counts were verified.
    pub new_values: usize,
}

/// Outcome of checking one candidate t.
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub verdict: Verdict,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<Rejection>,
    pub stats: CheckStats,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        matches!(self.verdict, Verdict::Admissible)
    }

    fn rejected(case: RejectionCase, witness: i64, count: Option<u64>, stats: CheckStats) -> Self {
        AdmissibilityReport {
            verdict: Verdict::Rejected,
            rejection: Some(Rejection {
                case,
                witness,
                count,
            }),
            stats,
        }
    }
}

/// Builds B_t and C_t for a candidate t. The identity F(pair) = b holds for
/// every t by the Bézout relation and is re-asserted by evaluation.
pub fn make_augmentation(
    a_prime: &IntSet,
    b: i64,
    t: i64,
    form: &LinearForm,
    bez: &BezoutPair,
) -> Result<Augmentation> {
    let x = b
        .checked_mul(bez.v1())
        .and_then(|bv| form.u2().checked_mul(t).and_then(|ut| bv.checked_add(ut)))
        .ok_or(Error::Range)?;
    let y = b
        .checked_mul(bez.v2())
        .and_then(|bv| form.u1().checked_mul(t).and_then(|ut| bv.checked_sub(ut)))
        .ok_or(Error::Range)?;
    assert_eq!(
        form.apply_wide(x, y),
        i128::from(b),
        "augmentation identity failed for t = {t}"
    );
    Ok(Augmentation {
        t,
        b,
        pair: (x, y),
        c_set: a_prime.with_pair(x, y),
    })
}

// W must avoid F(A') ∪ {b}; re-checked on every call because the builder's
// induction depends on it.
fn check_hypothesis(f_a: &IntSet, b: i64, w: &ZeroSetSpec) -> Result<()> {
    if w.contains(b) {
        return Err(Error::HypothesisViolated { witness: b });
    }
    if let Some(x) = f_a.iter().find(|&x| w.contains(x)) {
        return Err(Error::HypothesisViolated { witness: x });
    }
    Ok(())
}

/// Decides admissibility of one augmentation by direct oracle computation:
/// the pair must be two fresh elements, the count at b must become
/// R_{A',F}(b) + 1, counts on F(A') \ {b} must be unchanged, every value of
/// F(C) \ (F(A') ∪ {b}) must have count exactly 1, and F(C) must avoid W.
pub fn check_admissible(
    a_prime: &IntSet,
    b: i64,
    w: &ZeroSetSpec,
    aug: &Augmentation,
    form: &LinearForm,
) -> Result<AdmissibilityReport> {
    let f_a = oracle::image(a_prime, a_prime, form)?;
    check_hypothesis(&f_a, b, w)?;

    let mut stats = CheckStats::default();
    let (x, y) = aug.pair;
    if x == y {
        return Ok(AdmissibilityReport::rejected(
            RejectionCase::DegeneratePair,
            x,
            None,
            stats,
        ));
    }
    for v in [x, y] {
        if a_prime.contains(v) {
            return Ok(AdmissibilityReport::rejected(
                RejectionCase::DegeneratePair,
                v,
                None,
                stats,
            ));
        }
    }

    let a_counts = oracle::rep_counts(a_prime, form)?;
    let c_counts = oracle::rep_counts(&aug.c_set, form)?;
    let count_at = |counts: &BTreeMap<i64, u64>, n: i64| counts.get(&n).copied().unwrap_or(0);

    let target_count = count_at(&c_counts, b);
    if target_count != count_at(&a_counts, b) + 1 {
        return Ok(AdmissibilityReport::rejected(
            RejectionCase::TargetCount,
            b,
            Some(target_count),
            stats,
        ));
    }

    for (&n, &old_count) in &a_counts {
        if n == b {
            continue;
        }
        stats.preserved_values += 1;
        let new_count = count_at(&c_counts, n);
        if new_count != old_count {
            return Ok(AdmissibilityReport::rejected(
                RejectionCase::PreservedCount,
                n,
                Some(new_count),
                stats,
            ));
        }
    }

    for (&n, &count) in &c_counts {
        if n == b || a_counts.contains_key(&n) {
            continue;
        }
        stats.new_values += 1;
        if count != 1 {
            return Ok(AdmissibilityReport::rejected(
                RejectionCase::NewValueCount,
                n,
                Some(count),
                stats,
            ));
        }
    }

    for &n in c_counts.keys() {
        if w.contains(n) {
            return Ok(AdmissibilityReport::rejected(
                RejectionCase::ZeroSetHit,
                n,
                None,
                stats,
            ));
        }
    }

    Ok(AdmissibilityReport {
        verdict: Verdict::Admissible,
        rejection: None,
        stats,
    })
}

/// The deterministic scan order 0, 1, -1, 2, -2, ... out to the radius.
pub fn scan_order(max_radius: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=max_radius).flat_map(|k| [k, -k]))
}

// Incremental admissibility checker for the scan loop.
//
// [`check_admissible`] retabulates R over all of C² per candidate, which the
// scan cannot afford: late build steps reject thousands of t before the
// first admissible one. Growing A' by {x, y} only adds the pairs involving
// x or y, so the count deltas are the 4|A'| + 4 values below and every
// verdict can be decided against the precomputed A'-side tables. Witness
// values, case priorities and stats replicate the full checker exactly;
// the tests hold the two paths together.
struct Scanner<'a> {
    a_prime: &'a IntSet,
    form: &'a LinearForm,
    w: &'a ZeroSetSpec,
    b: i64,
    f_a: IntSet,
    a_counts: BTreeMap<i64, u64>,
    count_a_at_b: u64,
    delta: Vec<i64>,
}

impl<'a> Scanner<'a> {
    fn new(
        a_prime: &'a IntSet,
        b: i64,
        w: &'a ZeroSetSpec,
        form: &'a LinearForm,
    ) -> Result<Scanner<'a>> {
        let f_a = oracle::image(a_prime, a_prime, form)?;
        check_hypothesis(&f_a, b, w)?;
        let a_counts = oracle::rep_counts(a_prime, form)?;
        let count_a_at_b = a_counts.get(&b).copied().unwrap_or(0);
        Ok(Scanner {
            a_prime,
            form,
            w,
            b,
            f_a,
            a_counts,
            count_a_at_b,
            delta: Vec::new(),
        })
    }

    fn admissible_stats(&self, new_values: usize) -> CheckStats {
        let b_in_f_a = usize::from(self.a_counts.contains_key(&self.b));
        CheckStats {
            preserved_values: self.a_counts.len() - b_in_f_a,
            new_values,
        }
    }

    fn check(&mut self, aug: &Augmentation) -> Result<AdmissibilityReport> {
        let stats = CheckStats::default();
        let (x, y) = aug.pair;
        if x == y {
            return Ok(AdmissibilityReport::rejected(
                RejectionCase::DegeneratePair,
                x,
                None,
                stats,
            ));
        }
        for v in [x, y] {
            if self.a_prime.contains(v) {
                return Ok(AdmissibilityReport::rejected(
                    RejectionCase::DegeneratePair,
                    v,
                    None,
                    stats,
                ));
            }
        }

        // All pair values of C² \ A'²; counts of C are A'-counts plus these.
        self.delta.clear();
        for a in self.a_prime.iter() {
            for (p, q) in [(a, x), (a, y), (x, a), (y, a)] {
                self.delta
                    .push(i64::try_from(self.form.apply_wide(p, q)).map_err(|_| Error::Range)?);
            }
        }
        for (p, q) in [(x, x), (x, y), (y, x), (y, y)] {
            self.delta
                .push(i64::try_from(self.form.apply_wide(p, q)).map_err(|_| Error::Range)?);
        }
        self.delta.sort_unstable();

        // Count at b must become count_A(b) + 1: exactly one added pair.
        let added_at_b = (self.delta.partition_point(|&v| v <= self.b)
            - self.delta.partition_point(|&v| v < self.b)) as u64;
        if added_at_b != 1 {
            return Ok(AdmissibilityReport::rejected(
                RejectionCase::TargetCount,
                self.b,
                Some(self.count_a_at_b + added_at_b),
                stats,
            ));
        }

        // Existing values must keep their counts: no delta may land on
        // F(A') \ {b}. Witness = smallest disturbed value, as in the full
        // checker's ascending sweep.
        for run in self.delta.chunk_by(|p, q| p == q) {
            let v = run[0];
            if v != self.b && self.f_a.contains(v) {
                let old = self.a_counts.get(&v).copied().unwrap_or(0);
                return Ok(AdmissibilityReport::rejected(
                    RejectionCase::PreservedCount,
                    v,
                    Some(old + run.len() as u64),
                    stats,
                ));
            }
        }

        // Genuinely new values must have count exactly 1.
        let mut new_values = 0usize;
        for run in self.delta.chunk_by(|p, q| p == q) {
            let v = run[0];
            if v == self.b || self.f_a.contains(v) {
                continue;
            }
            new_values += 1;
            if run.len() != 1 {
                return Ok(AdmissibilityReport::rejected(
                    RejectionCase::NewValueCount,
                    v,
                    Some(run.len() as u64),
                    stats,
                ));
            }
        }

        // F(C) = F(A') ∪ {delta values}; the A' side is W-free by the
        // hypothesis, so only the delta side can hit W.
        for run in self.delta.chunk_by(|p, q| p == q) {
            if self.w.contains(run[0]) {
                return Ok(AdmissibilityReport::rejected(
                    RejectionCase::ZeroSetHit,
                    run[0],
                    None,
                    stats,
                ));
            }
        }

        Ok(AdmissibilityReport {
            verdict: Verdict::Admissible,
            rejection: None,
            stats: self.admissible_stats(new_values),
        })
    }
}

/// Result of a traced scan: the chosen parameter with its report, plus the
/// rejection histogram of every candidate tried before it.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub t: i64,
    pub augmentation: Augmentation,
    pub report: AdmissibilityReport,
    pub rejections: BTreeMap<RejectionCase, u64>,
}

/// Scans t in the order 0, 1, -1, 2, -2, ... and returns the first
/// admissible augmentation together with the rejection histogram.
/// Exhaustion is an error carrying the same histogram: either the radius is
/// too small or the supplied zero set is dense enough to block every
/// candidate.
pub fn scan_admissible_t(
    a_prime: &IntSet,
    b: i64,
    w: &ZeroSetSpec,
    form: &LinearForm,
    bez: &BezoutPair,
    max_radius: i64,
) -> Result<ScanOutcome> {
    if max_radius < 1 {
        return Err(Error::InvalidParams(format!(
            "search radius must be positive, got {max_radius}"
        )));
    }
    let mut scanner = Scanner::new(a_prime, b, w, form)?;
    let mut rejections: BTreeMap<RejectionCase, u64> = BTreeMap::new();
    for t in scan_order(max_radius) {
        let aug = make_augmentation(a_prime, b, t, form, bez)?;
        let report = scanner.check(&aug)?;
        match report.rejection {
            None => {
                debug_assert!(
                    check_admissible(a_prime, b, w, &aug, form)?.is_admissible(),
                    "incremental and full checkers disagree at t = {t}"
                );
                return Ok(ScanOutcome {
                    t,
                    augmentation: aug,
                    report,
                    rejections,
                });
            }
            Some(rejection) => *rejections.entry(rejection.case).or_insert(0) += 1,
        }
    }
    Err(Error::SearchExhausted {
        max_radius,
        histogram: rejections,
    })
}

/// [`scan_admissible_t`] without the histogram.
pub fn find_admissible_t(
    a_prime: &IntSet,
    b: i64,
    w: &ZeroSetSpec,
    form: &LinearForm,
    bez: &BezoutPair,
    max_radius: i64,
) -> Result<(i64, Augmentation, AdmissibilityReport)> {
    let outcome = scan_admissible_t(a_prime, b, w, form, bez, max_radius)?;
    Ok((outcome.t, outcome.augmentation, outcome.report))
}
