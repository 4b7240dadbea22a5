//! The digit-restricted Sidon basis: nonnegative integers whose base-g^m
//! digits stay below g form a Sidon basis for ℕ₀ under the weighted form
//! x1 + g*x2 + ... + g^(m-1)*xm, with a fast digit-dealing decoder.

use repbasis::gadic::{gadic_decode, gadic_form, gadic_member, gadic_set, GadicParams};
use repbasis::oracle;

fn main() -> repbasis::Result<()> {
    let params = GadicParams::new(2, 2)?;
    let form = gadic_form(&params)?;
    println!("form coefficients: {:?}", form.coefficients());

    let members = gadic_set(&params, 100)?;
    println!("members up to 100: {members}");
    // Membership is a plain digit test.
    assert!(gadic_member(&params, 21)?); // 21 = 111 base 4
    assert!(!gadic_member(&params, 2)?); // digit 2 in base 4

    // Every n has exactly one representation; the decoder finds it without
    // any search by dealing the base-2 digits of n between the two slots.
    println!(" n | decoded tuple");
    for n in [0, 1, 2, 3, 6, 11, 27, 100] {
        let tuple = gadic_decode(&params, n)?;
        println!("{n:3} | {tuple:?}");
        assert_eq!(tuple[0] + 2 * tuple[1], n);
    }

    // Cross-check both claims against the brute-force oracle on [0, 300]:
    // a Sidon set (counts <= 1) that is also a basis (counts >= 1).
    let big = gadic_set(&params, 300)?;
    let table = oracle::mary_rep_table(&big, &form, 0, 300, 1_000_000)?;
    assert!((0..=300).all(|n| table.count(n) == 1));
    println!("oracle check: every n in [0, 300] has exactly one representation");

    let verdict = oracle::is_b_f_g(&big, &form, 1, 0, 300, 1_000_000)?;
    println!("B_F[1] (Sidon) on [0, 300]: {}", verdict.holds);
    Ok(())
}
