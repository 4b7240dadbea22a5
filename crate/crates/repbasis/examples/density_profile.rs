//! Empirical density profiles of the zero-set catalog.
//!
//! Target functions may vanish only on density-zero sets; these profiles
//! show the ratio |W ∩ [-x, x]| / (2x + 1) falling with the radius for
//! every catalog shape. A zero set whose ratio refuses to fall is exactly
//! the kind that eventually exhausts the augmentation search.

use repbasis::density::{counting_function, density_profile};
use repbasis::forms::ZeroSetSpec;

fn main() -> repbasis::Result<()> {
    let radii = [10i64, 100, 1_000, 10_000, 100_000];
    let catalog: Vec<(&str, ZeroSetSpec)> = vec![
        ("empty", ZeroSetSpec::Empty),
        ("finite {1,2,3}", ZeroSetSpec::finite_list([1, 2, 3])),
        ("perfect squares", ZeroSetSpec::PerfectSquares),
        ("powers of 2", ZeroSetSpec::PowersOfBase { base: 2 }),
        (
            "4*squares + 3",
            ZeroSetSpec::ShiftedScaled {
                scale: 4,
                offset: 3,
                inner: Box::new(ZeroSetSpec::PerfectSquares),
            },
        ),
        (
            "squares ∪ powers of 3",
            ZeroSetSpec::Union {
                parts: vec![
                    ZeroSetSpec::PerfectSquares,
                    ZeroSetSpec::PowersOfBase { base: 3 },
                ],
            },
        ),
    ];

    println!(
        "{:22} {}",
        "zero set",
        radii.map(|x| format!("{x:>10}")).join(" ")
    );
    for (name, spec) in &catalog {
        let profile = density_profile(spec, &radii)?;
        let cells: Vec<String> = profile.ratios.iter().map(|r| format!("{r:10.6}")).collect();
        println!("{name:22} {}", cells.join(" "));
    }

    // The counting function behind the ratios, on a sample interval.
    let squares = ZeroSetSpec::PerfectSquares;
    println!(
        "\nsquares in [0, 100]: {} (0, 1, 4, ..., 100)",
        counting_function(&squares, 0, 100)
    );
    Ok(())
}
