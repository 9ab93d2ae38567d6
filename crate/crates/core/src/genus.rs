//! Genus and multiplicity inequalities for curves on complete intersections.
//!
//! All bounds are returned in the exact form they are stated in; clamping a
//! negative genus bound at zero is left to the caller so that the
//! feasibility systems can use the literal inequalities.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    floor, pow10, rat, rat_int, rational_power_enclosure, Enclosure, Integer, Rational,
};
use crate::hilbert::CompleteIntersectionSpec;

/// A curve of degree `k` on a complete intersection, passing through points
/// with the listed multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveOnCI {
    ambient: CompleteIntersectionSpec,
    degree: u64,
    mults: Vec<u64>,
}

impl CurveOnCI {
    pub fn new(ambient: CompleteIntersectionSpec, degree: u64, mults: Vec<u64>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::argument("curve degree must be at least 1"));
        }
        let cap = degree * ambient.ambient_dim() as u64;
        let total: u64 = mults.iter().sum();
        if total > cap {
            return Err(Error::argument(format!(
                "multiplicity sum {total} exceeds the sanity cap degree·ambient_dim = {cap}"
            )));
        }
        Ok(CurveOnCI {
            ambient,
            degree,
            mults,
        })
    }

    pub fn ambient(&self) -> &CompleteIntersectionSpec {
        &self.ambient
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    /// `Σ m_i(m_i - 1)/2`, the plane-projection delta contribution.
    pub fn double_point_count(&self) -> Integer {
        self.mults
            .iter()
            .map(|&m| Integer::from(m) * (m.saturating_sub(1)) / 2u32)
            .sum()
    }

    /// Whether the multiplicities fit under the plane-projection gap
    /// combined with the generic genus lower bound of the ambient variety.
    pub fn satisfies_plane_gap(&self) -> Result<bool> {
        let g = genus_lower_bound(&self.ambient, self.degree)?;
        let gap = plane_gap_bound(self.degree, &g)?;
        Ok(rat_int(self.double_point_count()) <= gap)
    }
}

/// Lower bound `1 + (Σd_i - 2n - f)·deg / 2` for the geometric genus of any
/// curve on a very general complete intersection of dimension `n >= 2`.
/// May be negative, in which case it carries no information.
pub fn genus_lower_bound(spec: &CompleteIntersectionSpec, degree: u64) -> Result<Rational> {
    if spec.dim() < 2 {
        return Err(Error::argument("genus lower bound needs dimension at least 2"));
    }
    if degree == 0 {
        return Err(Error::argument("curve degree must be at least 1"));
    }
    let coeff = spec.degree_sum() as i64 - 2 * spec.dim() as i64 - spec.codim() as i64;
    Ok(rat(1, 1) + rat(coeff, 2) * rat_int(degree))
}

/// `(k-1)(k-2)/2 - g`: the room left for `Σ m_i(m_i-1)/2` after a generic
/// projection to the plane. Negative means no such curve exists.
pub fn plane_gap_bound(degree: u64, genus_lb: &Rational) -> Result<Rational> {
    if degree == 0 {
        return Err(Error::argument("curve degree must be at least 1"));
    }
    let k = degree as i64;
    Ok(rat((k - 1) * (k - 2), 2) - genus_lb)
}

/// Largest integer certified to lie below
/// `(n-1)^{n/(n-1)}/n · m^{n/(n-1)} - n·m`, clamped at zero since
/// `p_a - p_g` is never negative.
pub fn delta_lower_bound(n: u32, m: u64, precision: u32) -> Result<Integer> {
    if n < 2 {
        return Err(Error::argument("delta bound needs ambient dimension n >= 2"));
    }
    if m == 0 {
        return Err(Error::argument("multiplicity must be at least 1"));
    }
    // (n-1)^{n/(n-1)} m^{n/(n-1)} = ((n-1) m)^{n/(n-1)}
    let base = Integer::from(n - 1) * m;
    let power = rational_power_enclosure(&rat_int(base), n as i64, n - 1, precision)?;
    let lower = power.lower() / rat(n as i64, 1) - rat_int(Integer::from(n) * m);
    let value = floor(&lower);
    Ok(if value.is_negative() { Integer::zero() } else { value })
}

/// `(Σ a_i + 2 a_e / 3) · deg`: the Castelnuovo-style upper bound on the
/// arithmetic genus of a curve cut out inside surfaces of degree at most
/// `a_e / 3` on the threefold of type `degrees_y`.
pub fn castelnuovo_upper_bound(degrees_y: &[u64], a_e: u64, degree: u64) -> Result<Rational> {
    if degree == 0 {
        return Err(Error::argument("curve degree must be at least 1"));
    }
    let sum: u64 = degrees_y.iter().sum();
    Ok((rat_int(sum) + rat(2 * a_e as i64, 3)) * rat_int(degree))
}

/// The one-spike estimate `1 + (Σ a_i + ⌊2a_e/3⌋ - e - 2)·deg` that precedes
/// the rounded [`castelnuovo_upper_bound`]; never larger than it.
pub fn castelnuovo_spike_bound(degrees_y: &[u64], a_e: u64, degree: u64) -> Result<Rational> {
    if degree == 0 {
        return Err(Error::argument("curve degree must be at least 1"));
    }
    let e = degrees_y.len() as i64 + 1;
    let sum: u64 = degrees_y.iter().sum();
    let spike = sum as i64 + (2 * a_e / 3) as i64 - e - 2;
    Ok(rat(1, 1) + rat_int(spike) * rat_int(degree))
}

/// The most even split of `total` into `parts` nonnegative integers, in
/// ascending order. Minimizes every separable convex sum.
pub fn balanced_partition(total: u64, parts: usize) -> Vec<u64> {
    assert!(parts > 0, "balanced partition into zero parts");
    let q = total / parts as u64;
    let r = (total % parts as u64) as usize;
    let mut v = vec![q; parts - r];
    v.extend(std::iter::repeat(q + 1).take(r));
    v
}

/// Enclosure of `parts · (total/parts)^{num/den}`, the minimum of
/// `Σ m_i^{num/den}` over reals `m_i >= 0` with `Σ m_i = total`.
/// Exact when the exponent is an integer.
pub fn min_power_sum(
    total: u64,
    parts: u64,
    exponent_num: i64,
    exponent_den: u32,
    precision: u32,
) -> Result<Enclosure> {
    if parts == 0 || total < parts {
        return Err(Error::argument(format!(
            "need total >= parts >= 1, got total={total} parts={parts}"
        )));
    }
    if exponent_den == 0 || exponent_num < exponent_den as i64 {
        return Err(Error::argument("exponent must be a rational >= 1"));
    }
    // Scaling by `parts` multiplies the width; pay for it with extra digits.
    let extra = parts.to_string().len() as u32;
    let mean = rat(total as i64, parts as i64);
    let per_part = rational_power_enclosure(&mean, exponent_num, exponent_den, precision + extra)?;
    let result = per_part.scale(&rat(parts as i64, 1));
    debug_assert!(result.width() <= Rational::new(1.into(), pow10(precision)));
    Ok(result)
}

/// `Σ m_i(m_i - 1)` for a multiplicity vector.
pub fn pair_sum(mults: &[u64]) -> u64 {
    mults.iter().map(|&m| m * m.saturating_sub(1)).sum()
}
