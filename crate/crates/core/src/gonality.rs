//! Covering-gonality lower bounds for very general complete intersections:
//! the codimension-two bound, the bound for surfaces of special multidegree,
//! and the bound for surfaces of arbitrary large multidegree obtained by
//! prime-degree adjustment.
//!
//! Every bound comes out of the "K_X separates r points" route, so the
//! integer guarantee is always `⌊bound⌋ + 1`.

use num_integer::Integer as _;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, floor, gcd, rat, rat_int, serde_exact, Integer, Rational};
use crate::primesel::{degree_threshold, select_prime_degrees, PrimeDegreeSelection};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

impl HypothesisCheck {
    pub fn new(name: impl Into<String>, satisfied: bool, detail: impl Into<String>) -> Self {
        HypothesisCheck {
            name: name.into(),
            satisfied,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedConstant {
    pub name: String,
    #[serde(with = "serde_exact::rational")]
    pub value: Rational,
}

impl NamedConstant {
    fn new(name: impl Into<String>, value: Rational) -> Self {
        NamedConstant {
            name: name.into(),
            value,
        }
    }
}

/// A certified lower bound `cg(X) >= integer_guarantee`, together with the
/// hypotheses that were checked to get it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    #[serde(with = "serde_exact::rational")]
    pub bound: Rational,
    #[serde(with = "serde_exact::integer")]
    pub guarantee: Integer,
    pub hypotheses: Vec<HypothesisCheck>,
    pub constants_used: Vec<NamedConstant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<PrimeDegreeSelection>,
    pub remarks: Vec<String>,
}

impl BoundCertificate {
    fn build(
        bound: Rational,
        hypotheses: Vec<HypothesisCheck>,
        constants_used: Vec<NamedConstant>,
        selection: Option<PrimeDegreeSelection>,
        mut remarks: Vec<String>,
    ) -> Result<Self> {
        if let Some(bad) = hypotheses.iter().find(|h| !h.satisfied) {
            return Err(Error::hypothesis(bad.name.clone(), bad.detail.clone()));
        }
        remarks.push("irr(X) >= cg(X), so the guarantee also bounds the degree of irrationality".into());
        let guarantee = floor(&bound) + 1;
        Ok(BoundCertificate {
            bound,
            guarantee,
            hypotheses,
            constants_used,
            selection,
            remarks,
        })
    }

    /// `r = ⌊bound⌋`, the number of points separated by `K_X`.
    pub fn points(&self) -> Integer {
        floor(&self.bound)
    }
}

fn pow(base: impl Into<Integer>, exp: u32) -> Integer {
    num_traits::pow(base.into(), exp as usize)
}

/// `cg(X) >= 2ab / (3(n+1)^2)` for a very general complete intersection of
/// type `(a, b)` and dimension `n >= 2`, provided `a, b >= 18n/7`.
pub fn cg_bound_codim2(n: u32, a: u64, b: u64) -> Result<BoundCertificate> {
    if n < 2 {
        return Err(Error::argument("codimension-two bound needs n >= 2"));
    }
    let threshold = |d: u64, label: &str| {
        HypothesisCheck::new(
            format!("{label} >= 18n/7"),
            7 * d >= 18 * n as u64,
            format!("7·{label} = {} vs 18n = {}", 7 * d, 18 * n),
        )
    };
    let mut hypotheses = vec![threshold(a, "a"), threshold(b, "b")];

    let constant = rat(2, 3 * (n as i64 + 1).pow(2));
    let bound = &constant * rat_int(Integer::from(a) * b);
    let r = floor(&bound);

    // (bH - Σ(n+1)E_i)^{n+1} = a b^{n+1} - r (n+1)^{n+1} on the blow-up of the
    // hypersurface of the smaller degree.
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let top = Integer::from(lo) * pow(hi, n + 1);
    let loss = &r * pow(n + 1, n + 1);
    hypotheses.push(HypothesisCheck::new(
        "b >= a >= n+1",
        lo > n as u64,
        format!("sorted degrees ({lo}, {hi}), n+1 = {}", n + 1),
    ));
    hypotheses.push(HypothesisCheck::new(
        "bigness (L^{n+1}) > 0",
        top > loss,
        format!("a·b^(n+1) = {top} vs r·(n+1)^(n+1) = {loss}"),
    ));
    BoundCertificate::build(
        bound,
        hypotheses,
        vec![NamedConstant::new("2/(3(n+1)^2)", constant)],
        None,
        Vec::new(),
    )
}

/// `2 / (3^4 (3e+2) ((e+1)!)^e)`.
fn special_constant(e: u32) -> Result<Rational> {
    let fact = factorial(e as i64 + 1)?;
    let den = Integer::from(81) * (3 * e + 2) * num_traits::pow(fact, e as usize);
    Ok(Rational::new(Integer::from(2), den))
}

/// Bound for a very general surface of type `(a_1, ..., a_e)` with
/// `a_i = (e+1)! q_i` (`i < e`), the `q_i` pairwise coprime, and
/// `3e <= a_1 <= ... <= a_e`.
pub fn cg_bound_surface_special(e: u32, adjusted: &[u64]) -> Result<BoundCertificate> {
    if e < 2 {
        return Err(Error::argument("surface bound needs e >= 2"));
    }
    if adjusted.len() != e as usize {
        return Err(Error::argument(format!(
            "expected {e} degrees, got {}",
            adjusted.len()
        )));
    }
    let fact = factorial(e as i64 + 1)?;
    let mut hypotheses = Vec::new();
    hypotheses.push(HypothesisCheck::new(
        "ascending degrees",
        adjusted.windows(2).all(|w| w[0] <= w[1]),
        format!("{adjusted:?}"),
    ));
    hypotheses.push(HypothesisCheck::new(
        "a_1 >= 3e",
        adjusted[0] >= 3 * e as u64,
        format!("a_1 = {}, 3e = {}", adjusted[0], 3 * e),
    ));
    let head = &adjusted[..e as usize - 1];
    let not_divisible: Vec<u64> = head
        .iter()
        .copied()
        .filter(|&a| !Integer::from(a).is_multiple_of(&fact))
        .collect();
    hypotheses.push(HypothesisCheck::new(
        "a_i = (e+1)!·q_i",
        not_divisible.is_empty(),
        if not_divisible.is_empty() {
            format!("all of {head:?} divisible by {fact}")
        } else {
            format!("{not_divisible:?} not divisible by {fact}")
        },
    ));
    let qs: Vec<Integer> = head.iter().map(|&a| Integer::from(a) / &fact).collect();
    let mut clash = None;
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            if clash.is_none() && gcd(&qs[i], &qs[j]) != Integer::one() {
                clash = Some((i, j));
            }
        }
    }
    hypotheses.push(HypothesisCheck::new(
        "q_i pairwise coprime",
        clash.is_none(),
        match clash {
            None => format!("q = {qs:?}"),
            Some((i, j)) => format!("gcd(q_{}, q_{}) = gcd({}, {}) > 1", i + 1, j + 1, qs[i], qs[j]),
        },
    ));

    let constant = special_constant(e)?;
    let product: Integer = adjusted.iter().map(|&a| Integer::from(a)).product();
    let bound = &constant * rat_int(product);
    let r = floor(&bound);
    // (a_e H - 3ΣE_i)^3 = α a_e^3 - 27 r on the blown-up threefold
    let alpha: Integer = head.iter().map(|&a| Integer::from(a)).product();
    let cube = alpha * pow(adjusted[e as usize - 1], 3);
    hypotheses.push(HypothesisCheck::new(
        "bigness (L^3) > 0",
        cube > Integer::from(27) * &r,
        format!("α·a_e^3 = {cube} vs 27r = {}", Integer::from(27) * &r),
    ));

    let mut remarks = Vec::new();
    let small: Vec<&Integer> = qs
        .iter()
        .filter(|q| **q <= Integer::one() << (e + 1))
        .collect();
    if !small.is_empty() {
        remarks.push(format!(
            "the divisibility step for curve degrees assumes q_i > 2^(e+1) = {}; not met by {small:?}",
            1u64 << (e + 1)
        ));
    }
    BoundCertificate::build(
        bound,
        hypotheses,
        vec![NamedConstant::new("2/(3^4(3e+2)((e+1)!)^e)", constant)],
        None,
        remarks,
    )
}

/// `B(e) = 2 / (3^4 (3e+2) ((e+1)!)^e 2^{e-1})`.
pub fn constant_b(e: u32) -> Result<Rational> {
    if e < 2 {
        return Err(Error::argument("B(e) is defined for e >= 2"));
    }
    Ok(special_constant(e)? / rat_int(Integer::one() << (e - 1)))
}

/// Certified ceiling of `(e+1)! · 4(e-1) · log 4(e-1)`.
pub fn constant_a(e: u32) -> Result<Integer> {
    degree_threshold(e)
}

/// `cg(X) >= B(e) · d_1 ⋯ d_e` for a very general surface of type
/// `(d_1, ..., d_e)` with every `d_i >= A(e)`, via a degeneration to the
/// adjusted special multidegree.
pub fn cg_bound_surface_general(e: u32, degrees: &[u64]) -> Result<BoundCertificate> {
    if e < 3 {
        return Err(Error::argument(
            "the general surface bound needs e >= 3; use the special-form or codimension-two bound",
        ));
    }
    if degrees.len() != e as usize {
        return Err(Error::argument(format!(
            "expected {e} degrees, got {}",
            degrees.len()
        )));
    }
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::argument("degrees must be sorted ascending"));
    }
    let a = constant_a(e)?;
    if let Some(&low) = degrees.iter().find(|&&d| Integer::from(d) < a) {
        return Err(Error::Threshold {
            detail: format!("degree {low} is below A({e}) = {a}"),
        });
    }
    let selection = select_prime_degrees(e, &degrees[..e as usize - 1])?;
    let b = constant_b(e)?;
    let product: Integer = degrees.iter().map(|&d| Integer::from(d)).product();
    let bound = &b * rat_int(product);

    let mut adjusted = selection.adjusted.clone();
    adjusted.push(degrees[e as usize - 1]);
    let adjusted_product: Integer = adjusted.iter().map(|&d| Integer::from(d)).product();
    let special_bound = special_constant(e)? * rat_int(adjusted_product);

    let hypotheses = vec![
        HypothesisCheck::new("d_i >= A(e)", true, format!("d_1 = {} >= A({e}) = {a}", degrees[0])),
        HypothesisCheck::new(
            "prime selection",
            selection.validate().is_ok(),
            format!("q = {:?}, a = {:?}", selection.primes, selection.adjusted),
        ),
        HypothesisCheck::new(
            "adjusted bound dominates",
            special_bound >= bound,
            format!("special bound at adjusted degrees = {special_bound}"),
        ),
    ];
    debug_assert!(!bound.is_negative());
    BoundCertificate::build(
        bound,
        hypotheses,
        vec![
            NamedConstant::new("A(e)", rat_int(a)),
            NamedConstant::new("B(e)", b),
            NamedConstant::new("special bound at adjusted degrees", special_bound),
        ],
        Some(selection),
        Vec::new(),
    )
}
