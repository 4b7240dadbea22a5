//! Build a unique representation basis: a set A with exactly one ordered
//! representation u1*a1 + u2*a2 = n for every target n, here for the form
//! 2*x1 + 3*x2 on the window |n| <= 8.

use repbasis::builder::{self, StepAction};
use repbasis::forms::{LinearForm, Multiplicity, TargetSpec};
use repbasis::oracle;

fn main() -> repbasis::Result<()> {
    let form = LinearForm::new(2, 3)?;
    let target = TargetSpec::constant(Multiplicity::ONE)?;

    let construction = builder::build(&form, &target, 8, 1, 10_000)?;
    println!("form: {form}");
    println!(
        "final set ({} elements): {}",
        construction.final_set.len(),
        construction.final_set
    );

    for step in &construction.chain {
        match step.action {
            StepAction::Chosen { t } => println!(
                "  target {:3}: augmented with t = {t:3} (set size {})",
                step.target, step.set_size
            ),
            StepAction::Skipped => {
                println!("  target {:3}: already represented, skipped", step.target)
            }
        }
    }

    // Certify against the spec over a window containing every attained value.
    let report = builder::certify_default(&construction)?;
    println!(
        "certificate on {:?}: {}",
        report.window,
        if report.clean { "clean" } else { "VIOLATED" }
    );

    // Independent spot check with the brute-force oracle.
    let table = oracle::rep_table(&construction.final_set, &form, -8, 8)?;
    for n in -8..=8 {
        assert_eq!(table.count(n), 1);
    }
    println!("oracle check: every |n| <= 8 has exactly one representation");

    // The set is Sidon on the whole attained range: no value repeats.
    let (lo, hi) = report.window;
    let verdict = oracle::is_b_f_g_binary(&construction.final_set, &form, 1, lo, hi, 10_000_000)?;
    println!("Sidon on [{lo}, {hi}]: {}", verdict.holds);
    Ok(())
}
