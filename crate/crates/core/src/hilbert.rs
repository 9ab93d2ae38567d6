//! Hilbert functions `h^0(Y, O(l))` of complete intersections, computed
//! three independent ways:
//!
//! * [`h0_ci_koszul`]: inclusion-exclusion over the Koszul resolution,
//! * [`h0_ci_nested`]: the nested sum `Σ_{j_i < a_i} h^0(P^n, O(l - Σ j_i))`,
//! * [`h0_series_oracle`]: a coefficient of the Hilbert series
//!   `∏(1 - t^{a_i}) / (1 - t)^{n+f+1}` via truncated power series.
//!
//! The nested-sum identity is usually stated for `n >= 2`; every formula here
//! stays well defined for `n >= 1`, so that is what is accepted.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, Integer};

/// A complete intersection `Y ⊂ P^{dim + codim}` of the given multidegree.
/// The codimension is the length of `degrees`; an empty list is projective
/// space itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompleteIntersectionSpec {
    dim: u32,
    degrees: Vec<u64>,
}

impl CompleteIntersectionSpec {
    pub fn new(dim: u32, degrees: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::argument("complete intersection dimension must be at least 1"));
        }
        if let Some(bad) = degrees.iter().find(|&&d| d == 0) {
            return Err(Error::argument(format!("defining degrees must be >= 1, got {bad}")));
        }
        Ok(CompleteIntersectionSpec { dim, degrees })
    }

    pub fn projective_space(dim: u32) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn codim(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn ambient_dim(&self) -> u32 {
        self.dim + self.codim()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().sum()
    }

    /// Degree of `Y` as a subvariety of projective space.
    pub fn degree(&self) -> Integer {
        self.degrees.iter().map(|&d| Integer::from(d)).product()
    }
}

/// `h^0(P^n, O(l)) = C(l + n, n)`, zero for negative twists.
pub fn h0_projective(n: u32, twist: i64) -> Integer {
    binomial(twist + n as i64, n as i64).expect("lower index is nonnegative")
}

/// Koszul inclusion-exclusion:
/// `Σ_{S ⊆ degrees} (-1)^{|S|} h^0(P^{n+f}, O(l - Σ_{i∈S} a_i))`.
pub fn h0_ci_koszul(spec: &CompleteIntersectionSpec, twist: i64) -> Integer {
    let ambient = spec.ambient_dim();
    let f = spec.degrees.len();
    let mut total = Integer::zero();
    for mask in 0u64..(1u64 << f) {
        let shift: i64 = (0..f)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| spec.degrees[i] as i64)
            .sum();
        let term = h0_projective(ambient, twist - shift);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(!total.is_negative());
    total
}

/// The nested sum over `0 <= j_i <= a_i - 1`. Branches whose partial sum
/// already exceeds the twist contribute nothing and are skipped.
pub fn h0_ci_nested(spec: &CompleteIntersectionSpec, twist: i64) -> Integer {
    fn go(n: u32, degrees: &[u64], remaining: i64) -> Integer {
        if remaining < 0 {
            return Integer::zero();
        }
        match degrees.split_first() {
            None => h0_projective(n, remaining),
            Some((&a, rest)) => {
                let top = (a as i64 - 1).min(remaining);
                (0..=top).map(|j| go(n, rest, remaining - j)).sum()
            }
        }
    }
    go(spec.dim, &spec.degrees, twist)
}

/// Dense power series truncated after a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Integer>,
}

impl TruncatedSeries {
    pub fn one(max_degree: usize) -> Self {
        let mut coeffs = vec![Integer::zero(); max_degree + 1];
        coeffs[0] = Integer::from(1);
        TruncatedSeries { coeffs }
    }

    pub fn coeff(&self, degree: usize) -> &Integer {
        &self.coeffs[degree]
    }

    /// Multiply by `1 - t^a`.
    pub fn mul_one_minus_power(&mut self, a: usize) {
        for i in (a..self.coeffs.len()).rev() {
            let lower = self.coeffs[i - a].clone();
            self.coeffs[i] -= lower;
        }
    }

    /// Multiply by `1 / (1 - t)`, i.e. take prefix sums.
    pub fn div_one_minus_t(&mut self) {
        for i in 1..self.coeffs.len() {
            let prev = self.coeffs[i - 1].clone();
            self.coeffs[i] += prev;
        }
    }
}

/// Coefficient of `t^l` in the Hilbert series of the complete intersection.
/// Uses only polynomial arithmetic, no binomial coefficients.
pub fn h0_series_oracle(spec: &CompleteIntersectionSpec, twist: i64) -> Result<Integer> {
    if twist < 0 {
        return Err(Error::argument(format!(
            "series oracle needs a nonnegative twist, got {twist}"
        )));
    }
    let top = twist as usize;
    let mut series = TruncatedSeries::one(top);
    for &a in &spec.degrees {
        series.mul_one_minus_power(a as usize);
    }
    for _ in 0..=spec.ambient_dim() {
        series.div_one_minus_t();
    }
    Ok(series.coeff(top).clone())
}
