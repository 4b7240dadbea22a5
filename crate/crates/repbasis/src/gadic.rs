//! Digit-restricted Sidon bases for ℕ₀ under the weighted form
//! x1 + g*x2 + g²*x3 + ... + g^(m-1)*xm.
//!
//! The member set consists of the nonnegative integers whose base-g^m
//! digits all stay below g. Writing any n >= 0 in base g and dealing digit
//! j to slot j mod m reassembles n as a unique weighted sum of m members,
//! so every n has exactly one representation: the set is simultaneously a
//! Sidon set and a basis for ℕ₀. The decoder below runs that digit deal
//! directly, giving an O(log n) witness the brute-force oracle can be
//! checked against.

use crate::error::{Error, Result};
use crate::forms::{IntSet, MaryForm};

/// Parameters of the digit construction: digit bound g >= 2 and arity m >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadicParams {
    g: i64,
    m: u32,
}

impl GadicParams {
    pub fn new(g: i64, m: u32) -> Result<GadicParams> {
        if g < 2 {
            return Err(Error::InvalidParams(format!("g must be >= 2, got {g}")));
        }
        if m < 2 {
            return Err(Error::InvalidParams(format!("m must be >= 2, got {m}")));
        }
        Ok(GadicParams { g, m })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// g^m, the digit base of the member set.
    fn big_base(&self) -> Result<i64> {
        self.g.checked_pow(self.m).ok_or(Error::Range)
    }
}

/// The weighted form [1, g, g², ..., g^(m-1)]; gcd is 1 because the leading
/// coefficient is 1.
pub fn gadic_form(p: &GadicParams) -> Result<MaryForm> {
    let mut coefficients = Vec::with_capacity(p.m as usize);
    let mut weight = 1i64;
    for k in 0..p.m {
        coefficients.push(weight);
        if k + 1 < p.m {
            weight = weight.checked_mul(p.g).ok_or(Error::Range)?;
        }
    }
    MaryForm::new(coefficients)
}

/// True iff every base-g^m digit of a is < g.
pub fn gadic_member(p: &GadicParams, a: i64) -> Result<bool> {
    if a < 0 {
        return Err(Error::InvalidParams(format!(
            "members are nonnegative, got {a}"
        )));
    }
    let base = p.big_base()?;
    let mut x = a;
    while x > 0 {
        if x % base >= p.g {
            return Ok(false);
        }
        x /= base;
    }
    Ok(true)
}

/// All members up to `limit`, generated directly as digit sums
/// Σ d_i * (g^m)^i with d_i < g. (Independent of [`gadic_member`]; the two
/// must agree, which the tests exploit.)
pub fn gadic_set(p: &GadicParams, limit: i64) -> Result<IntSet> {
    if limit < 0 {
        return Ok(IntSet::new());
    }
    let mut weights = Vec::new();
    let mut w = 1i64;
    loop {
        if w > limit {
            break;
        }
        weights.push(w);
        match w.checked_mul(p.big_base()?) {
            Some(next) => w = next,
            None => break,
        }
    }
    let mut members = vec![0i64];
    for &w in &weights {
        let mut grown = Vec::with_capacity(members.len() * p.g as usize);
        for &m in &members {
            for d in 0..p.g {
                // d*w <= (g-1)*w <= limit * g stays in range for i64 limits
                // because w <= limit; guard anyway.
                let term = d.checked_mul(w).ok_or(Error::Range)?;
                match m.checked_add(term) {
                    Some(v) if v <= limit => grown.push(v),
                    _ => {}
                }
            }
        }
        members = grown;
    }
    Ok(IntSet::from_vec(members))
}

/// The unique tuple (a_1, ..., a_m) of members with
/// a_1 + g*a_2 + ... + g^(m-1)*a_m = n, computed by dealing the base-g
/// digits of n: digit j goes to slot j mod m at weight (g^m)^(j div m).
pub fn gadic_decode(p: &GadicParams, n: i64) -> Result<Vec<i64>> {
    if n < 0 {
        return Err(Error::InvalidParams(format!(
            "decoding is defined for nonnegative n, got {n}"
        )));
    }
    let base = p.big_base()?;
    let m = p.m as usize;
    let mut tuple = vec![0i64; m];
    let mut place = vec![1i64; m]; // running weight (g^m)^q per slot
    let mut x = n;
    let mut j = 0usize;
    while x > 0 {
        let digit = x % p.g;
        x /= p.g;
        let slot = j % m;
        let term = digit.checked_mul(place[slot]).ok_or(Error::Range)?;
        tuple[slot] = tuple[slot].checked_add(term).ok_or(Error::Range)?;
        // A saturated weight is only ever met by digit 0: a nonzero digit at
        // weight W implies W <= n, which fits.
        place[slot] = place[slot].saturating_mul(base);
        j += 1;
    }
    // Both halves of the construction, re-asserted on every decode.
    for &a in &tuple {
        assert!(
            gadic_member(p, a)?,
            "decoded slot value {a} violates the digit restriction"
        );
    }
    let form = gadic_form(p)?;
    assert_eq!(
        form.apply(&tuple)?,
        n,
        "decoded tuple does not reassemble n = {n}"
    );
    Ok(tuple)
}
