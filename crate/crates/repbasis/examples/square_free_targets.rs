//! A target function vanishing on the perfect squares: the built set
//! represents every non-square on the window exactly once and never
//! represents any square — not just on the window, but anywhere.

use std::collections::BTreeMap;

use repbasis::builder;
use repbasis::forms::{LinearForm, Multiplicity, TargetSpec, ZeroSetSpec};
use repbasis::oracle;

fn main() -> repbasis::Result<()> {
    let form = LinearForm::new(3, -5)?;
    let target = TargetSpec::new(
        Multiplicity::ONE,
        BTreeMap::new(),
        ZeroSetSpec::PerfectSquares,
    )?;

    let window = 12;
    let construction = builder::build(&form, &target, window, 1, 10_000)?;
    println!("form: {form}");
    println!("final set: {}", construction.final_set);

    let table = oracle::rep_table(&construction.final_set, &form, -window, window)?;
    let squares: Vec<i64> = (0..=window)
        .map(|k| k * k)
        .filter(|&s| s <= window)
        .collect();
    println!("squares in window: {squares:?}");
    for n in -window..=window {
        let expected = u64::from(!ZeroSetSpec::PerfectSquares.contains(n));
        assert_eq!(table.count(n), expected, "count at {n}");
    }
    println!("window check: non-squares once, squares never");

    // Global avoidance: the attained-value certificate window covers every
    // value the set can produce, and no square appears there either.
    let report = builder::certify_default(&construction)?;
    assert!(report.clean);
    let (lo, hi) = report.window;
    let wide = oracle::rep_table(&construction.final_set, &form, lo, hi)?;
    let represented_squares: Vec<i64> = wide
        .nonzero()
        .map(|(n, _)| n)
        .filter(|&n| ZeroSetSpec::PerfectSquares.contains(n))
        .collect();
    assert!(represented_squares.is_empty());
    println!(
        "global check on {:?}: no square is ever attained",
        report.window
    );
    Ok(())
}
