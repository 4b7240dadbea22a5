//! Realize a non-constant target function: three representations at 0, none
//! at 5, unboundedly many at 7 (served up to the round cap), and one
//! everywhere else on the window.

use std::collections::BTreeMap;

use repbasis::builder;
use repbasis::forms::{LinearForm, Multiplicity, TargetSpec, ZeroSetSpec};
use repbasis::oracle;

fn main() -> repbasis::Result<()> {
    let form = LinearForm::new(2, 3)?;
    let target = TargetSpec::new(
        Multiplicity::ONE,
        BTreeMap::from([
            (0, Multiplicity::Finite(3)),
            (5, Multiplicity::ZERO),
            (7, Multiplicity::Infinite),
        ]),
        ZeroSetSpec::Empty,
    )?;

    let window = 8;
    let rounds = 4; // caps the ∞ target at 4 representations
    let construction = builder::build(&form, &target, window, rounds, 10_000)?;
    println!(
        "final set ({} elements) after {} emissions",
        construction.final_set.len(),
        construction.chain.len()
    );

    let table = oracle::rep_table(&construction.final_set, &form, -window, window)?;
    println!(" n | f(n) | achieved (cap {rounds})");
    for n in -window..=window {
        let f_n = target.eval(n);
        println!("{n:3} | {f_n:>4} | {}", table.count(n));
        assert_eq!(table.count(n), f_n.capped(rounds));
    }

    let report = builder::certify_default(&construction)?;
    println!(
        "certificate on {:?}: {}",
        report.window,
        if report.clean { "clean" } else { "VIOLATED" }
    );
    Ok(())
}
