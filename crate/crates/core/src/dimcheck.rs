//! Dimension counts guaranteeing low-degree surfaces through the `s+1`
//! points: sections of `O(⌊a_e/3⌋)` on the threefold `Y` and on a surface
//! `V_1 ⊂ Y`, computed exactly and via the closed-form lower estimates.

use num_traits::pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat_int, serde_exact, Integer, Rational};
use crate::hilbert::{h0_ci_nested, CompleteIntersectionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCountReport {
    pub twist: u64,
    #[serde(with = "serde_exact::integer")]
    pub exact_h0: Integer,
    #[serde(with = "serde_exact::rational")]
    pub estimate: Rational,
    #[serde(with = "serde_exact::integer")]
    pub required: Integer,
    pub exact_pass: bool,
    pub estimate_pass: bool,
    pub both_pass: bool,
}

impl DimCountReport {
    fn new(twist: u64, exact_h0: Integer, estimate: Rational, s: u64) -> Self {
        let required = Integer::from(s) + 1;
        let exact_pass = exact_h0 > required;
        let estimate_pass = estimate > rat_int(required.clone());
        DimCountReport {
            twist,
            exact_h0,
            estimate,
            required,
            exact_pass,
            estimate_pass,
            both_pass: exact_pass && estimate_pass,
        }
    }
}

fn check_degrees(e: u32, degrees_y: &[u64], a_e: u64) -> Result<()> {
    if e < 2 {
        return Err(Error::argument("dimension counts need e >= 2"));
    }
    if degrees_y.len() != e as usize - 1 {
        return Err(Error::argument(format!(
            "expected {} threefold degrees, got {}",
            e - 1,
            degrees_y.len()
        )));
    }
    if a_e == 0 {
        return Err(Error::argument("a_e must be at least 1"));
    }
    Ok(())
}

fn alpha(degrees_y: &[u64]) -> Integer {
    degrees_y.iter().map(|&d| Integer::from(d)).product()
}

/// `h^0(Y, O(⌊a_e/3⌋))` on the threefold of type `degrees_y`, against the
/// estimate `α a_e³ / (6 (3e)^{e+2})`.
pub fn check_first_surface(e: u32, degrees_y: &[u64], a_e: u64, s: u64) -> Result<DimCountReport> {
    check_degrees(e, degrees_y, a_e)?;
    let twist = a_e / 3;
    let y = CompleteIntersectionSpec::new(3, degrees_y.to_vec())?;
    let exact = h0_ci_nested(&y, twist as i64);
    let estimate = Rational::new(
        alpha(degrees_y) * pow(Integer::from(a_e), 3),
        Integer::from(6) * pow(Integer::from(3 * e), e as usize + 2),
    );
    Ok(DimCountReport::new(twist, exact, estimate, s))
}

/// `h^0(V_1, O(⌊a_e/3⌋))` on the surface `V_1 = Y ∩ {deg b_1}`, against the
/// estimate `α a_e² / (2 (3e)^{e+1})`.
pub fn check_second_surface(
    e: u32,
    degrees_y: &[u64],
    b1: u64,
    a_e: u64,
    s: u64,
) -> Result<DimCountReport> {
    check_degrees(e, degrees_y, a_e)?;
    let twist = a_e / 3;
    if b1 == 0 || b1 > twist {
        return Err(Error::argument(format!(
            "need 1 <= b1 <= ⌊a_e/3⌋ = {twist}, got b1 = {b1}"
        )));
    }
    let mut degrees = degrees_y.to_vec();
    degrees.push(b1);
    let v1 = CompleteIntersectionSpec::new(2, degrees)?;
    let exact = h0_ci_nested(&v1, twist as i64);
    let estimate = Rational::new(
        alpha(degrees_y) * pow(Integer::from(a_e), 2),
        Integer::from(2) * pow(Integer::from(3 * e), e as usize + 1),
    );
    Ok(DimCountReport::new(twist, exact, estimate, s))
}

/// `H^1(I_Γ(ℓ))` vanishes for `ℓ` above
/// `a_1 + ... + a_{e-1} - e - 2 + b_1 + b_2`; this returns that threshold.
pub fn castelnuovo_vanishing_threshold(degrees_y: &[u64], b1: u64, b2: u64) -> i64 {
    let e = degrees_y.len() as i64 + 1;
    let sum: u64 = degrees_y.iter().sum();
    sum as i64 - e - 2 + b1 as i64 + b2 as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn first_surface_examples() {
        let r = check_first_surface(2, &[6], 18, 3).unwrap();
        assert_eq!(r.twist, 6);
        // C(10,4) - C(4,4)
        assert_eq!(r.exact_h0, int(209));
        assert_eq!(r.estimate, rat(9, 2));
        assert!(r.both_pass);

        let r = check_first_surface(2, &[6], 18, 1_000_000).unwrap();
        assert!(!r.both_pass);

        assert!(check_first_surface(1, &[], 18, 3).is_err());
    }

    #[test]
    fn second_surface_examples() {
        let r = check_second_surface(2, &[6], 6, 18, 3).unwrap();
        // C(10,4) - 2 C(4,4)
        assert_eq!(r.exact_h0, int(208));
        assert_eq!(r.estimate, rat(9, 2));
        assert!(r.both_pass);

        assert!(check_second_surface(2, &[6], 7, 18, 3).is_err());

        let r = check_second_surface(2, &[6], 6, 18, 0).unwrap();
        assert!(r.both_pass);
    }

    #[test]
    fn vanishing_threshold_sits_below_the_spike() {
        for e in 2..=4u64 {
            for a in (3 * e)..(3 * e + 10) {
                let degrees_y = vec![a; e as usize - 1];
                for a_e in a..a + 10 {
                    let b = a_e / 3;
                    let threshold = castelnuovo_vanishing_threshold(&degrees_y, b, b);
                    let spike = (a * (e - 1) + 2 * a_e / 3) as i64 - e as i64 - 1;
                    assert!(threshold < spike);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn estimates_are_lower_bounds(
            e in 2u32..4,
            start in 0u64..12,
            gaps in prop::collection::vec(0u64..10, 3),
            b_frac in 1u64..4,
        ) {
            let mut degrees = Vec::new();
            let mut d = 3 * e as u64 + start;
            for i in 0..e as usize {
                d += gaps[i];
                degrees.push(d);
            }
            let (a_e, degrees_y) = degrees.split_last().unwrap();
            let first = check_first_surface(e, degrees_y, *a_e, 0).unwrap();
            prop_assert!(rat_int(first.exact_h0.clone()) >= first.estimate);
            let b1 = (a_e / 3 / b_frac).max(1);
            let second = check_second_surface(e, degrees_y, b1, *a_e, 0).unwrap();
            prop_assert!(rat_int(second.exact_h0.clone()) >= second.estimate);
        }
    }
}
