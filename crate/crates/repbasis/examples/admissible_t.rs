//! Anatomy of a single augmentation step.
//!
//! To raise the count at b by one, the engine tries pairs
//! B_t = {b*v1 + u2*t, b*v2 - u1*t}, which hit b by the Bézout identity,
//! and keeps the first t whose grown set passes all admissibility checks.
//! This walks the scan by hand for a small set and then measures how rare
//! rejected t actually are.

use repbasis::augment::{self, Verdict};
use repbasis::forms::{BezoutPair, IntSet, LinearForm, ZeroSetSpec};

fn main() -> repbasis::Result<()> {
    let form = LinearForm::new(2, 3)?;
    let bez = BezoutPair::for_form(&form);
    println!(
        "form {form}, Bezout pair ({}, {}): 2*{} + 3*{} = 1",
        bez.v1(),
        bez.v2(),
        bez.v1(),
        bez.v2()
    );

    let a_prime = IntSet::from_vec(vec![-2, 3]);
    let b = 4;
    let w = ZeroSetSpec::Empty;
    println!("growing A' = {a_prime} toward target b = {b}:");
    for t in augment::scan_order(6) {
        let aug = augment::make_augmentation(&a_prime, b, t, &form, &bez)?;
        let report = augment::check_admissible(&a_prime, b, &w, &aug, &form)?;
        let (x, y) = aug.pair;
        match (report.verdict, report.rejection) {
            (Verdict::Admissible, _) => {
                println!("  t = {t:2}: pair ({x:3}, {y:3})  admissible");
            }
            (Verdict::Rejected, Some(r)) => {
                println!(
                    "  t = {t:2}: pair ({x:3}, {y:3})  rejected ({}, witness {})",
                    r.case, r.witness
                );
            }
            _ => unreachable!(),
        }
    }

    // The actual search takes the first admissible candidate.
    let outcome = augment::scan_admissible_t(&a_prime, b, &w, &form, &bez, 1_000)?;
    println!(
        "search picks t = {} -> C = {} (rejected before: {:?})",
        outcome.t, outcome.augmentation.c_set, outcome.rejections
    );

    // Rejections are the exception: count them over a symmetric range for
    // several targets.
    let empty = IntSet::new();
    for b in 0..=4 {
        let mut admissible = 0u32;
        for t in -100..=100 {
            let aug = augment::make_augmentation(&empty, b, t, &form, &bez)?;
            if augment::check_admissible(&empty, b, &w, &aug, &form)?.is_admissible() {
                admissible += 1;
            }
        }
        println!("b = {b}: {admissible}/201 t in [-100, 100] admissible from A' = {{}}");
    }
    Ok(())
}
