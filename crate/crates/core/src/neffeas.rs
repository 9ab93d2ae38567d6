//! Integer feasibility systems behind the induction on the number of points.
//!
//! A failure of nefness at step `s -> s+1` is witnessed by a curve of degree
//! `k` through `s+1` points with multiplicities `m_i`. Each system collects
//! the inequalities such a curve must satisfy. Feasibility is decided two
//! ways: an analytic route that solves the inequality chain for an interval
//! of admissible `k`, and a brute-force scan over `k` and `S = Σ m_i`.
//!
//! The scan only ever looks at balanced multiplicity vectors. For fixed `S`
//! the constraints other than the genus/delta one depend on `S` alone, and
//! the balanced vector minimizes every separable convex sum, so it is the
//! best candidate. The convex sums also grow with `S`, so once the balanced
//! vector fails the genus/delta constraint, every larger `S` fails too.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    ceil, factorial, floor, gcd, power_enclosure, rat, rat_int, serde_exact, Enclosure, Integer,
    Rational,
};
use crate::genus::{balanced_partition, genus_lower_bound, pair_sum, plane_gap_bound};
use crate::gonality::{cg_bound_codim2, cg_bound_surface_special};
use crate::hilbert::CompleteIntersectionSpec;

/// Precision (decimal digits) beyond which an indecisive enclosure
/// comparison is reported as undecided.
pub const PRECISION_CAP: u32 = 40;

/// Upper limit on `(k, S)` pairs visited by one surface scan.
pub const SURFACE_STATE_CAP: u64 = 1_000_000;

/// Numerical class of a curve: degree `k` and multiplicities at the points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    pub k: u64,
    pub mults: Vec<u64>,
}

impl CurveClass {
    pub fn new(k: u64, mults: Vec<u64>) -> Self {
        CurveClass { k, mults }
    }

    pub fn mult_sum(&self) -> u64 {
        self.mults.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintStatus {
    Satisfied,
    Violated,
    Undecided,
}

impl ConstraintStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            ConstraintStatus::Satisfied
        } else {
            ConstraintStatus::Violated
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub status: ConstraintStatus,
}

impl ConstraintCheck {
    fn new(name: &str, status: ConstraintStatus) -> Self {
        ConstraintCheck {
            name: name.to_string(),
            status,
        }
    }
}

pub fn all_satisfied(checks: &[ConstraintCheck]) -> bool {
    checks.iter().all(|c| c.status == ConstraintStatus::Satisfied)
}

/// Which right-hand side to use for the genus constraint of the
/// codimension-two system. The two are algebraically equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusForm {
    /// `(k² + (2n - a)k) / 2`
    #[default]
    Simplified,
    /// `(k-1)(k-2)/2 - g(k)` with `g` the genus lower bound on the hypersurface.
    Expanded,
}

/// How the `n·m_i` term of the delta bound is carried through the surface
/// chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaForm {
    /// `2 m_i` per point, giving `Σ a_i + 5a_e/3`.
    #[default]
    Literal,
    /// `3 m_i` per point, as the delta bound gives on a threefold;
    /// the coefficient becomes `13/6`.
    FullMultiplicity,
}

impl DeltaForm {
    pub fn coefficient(self) -> Rational {
        match self {
            DeltaForm::Literal => rat(5, 3),
            DeltaForm::FullMultiplicity => rat(13, 6),
        }
    }
}

/// One bound on `k` and the inequality it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KBound {
    #[serde(with = "serde_exact::integer")]
    pub value: Integer,
    pub source: String,
}

impl KBound {
    fn new(value: Integer, source: impl Into<String>) -> Self {
        KBound {
            value,
            source: source.into(),
        }
    }
}

/// Certified range `lower <= k <= upper` for the degree of a violating curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KInterval {
    pub lower: KBound,
    pub upper: Option<KBound>,
}

impl KInterval {
    pub fn is_empty(&self) -> bool {
        self.upper
            .as_ref()
            .is_some_and(|u| u.value < self.lower.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// No curve class exists; certified.
    Infeasible,
    /// No curve class with `k <= horizon`; larger `k` not examined.
    InfeasibleWithinHorizon,
    Witness,
    /// An enclosure comparison stayed indecisive at [`PRECISION_CAP`].
    Undecided,
}

/// Result of deciding one system.
///
/// `Infeasible` is backed either by an empty interval or by an exhaustive
/// scan of a finite one (`exhaustive` set). A witness is re-checked against
/// the raw constraints before a verdict carrying it is built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub outcome: Outcome,
    pub interval: Option<KInterval>,
    pub exhaustive: bool,
    pub witness: Option<CurveClass>,
    pub undecided_at: Option<CurveClass>,
    pub horizon: Option<u64>,
    pub states: u64,
    /// The divisibility constraint was not available, so only part of the
    /// system was decided.
    pub partial: bool,
}

impl FeasibilityVerdict {
    fn base(outcome: Outcome, interval: Option<KInterval>, states: u64, partial: bool) -> Self {
        FeasibilityVerdict {
            outcome,
            interval,
            exhaustive: false,
            witness: None,
            undecided_at: None,
            horizon: None,
            states,
            partial,
        }
    }

    fn infeasible_empty(interval: KInterval, partial: bool) -> Self {
        assert!(interval.is_empty(), "infeasible certificate with non-empty interval");
        Self::base(Outcome::Infeasible, Some(interval), 0, partial)
    }

    fn infeasible_searched(interval: KInterval, states: u64, partial: bool) -> Self {
        assert!(interval.upper.is_some(), "exhaustive search needs a finite interval");
        let mut v = Self::base(Outcome::Infeasible, Some(interval), states, partial);
        v.exhaustive = true;
        v
    }

    fn within_horizon(interval: Option<KInterval>, horizon: u64, states: u64, partial: bool) -> Self {
        let mut v = Self::base(Outcome::InfeasibleWithinHorizon, interval, states, partial);
        v.horizon = Some(horizon);
        v
    }

    fn witness(
        interval: Option<KInterval>,
        class: CurveClass,
        checks: &[ConstraintCheck],
        states: u64,
        partial: bool,
    ) -> Self {
        assert!(
            all_satisfied(checks),
            "witness {class:?} fails re-validation: {checks:?}"
        );
        let mut v = Self::base(Outcome::Witness, interval, states, partial);
        v.witness = Some(class);
        v
    }

    fn undecided(interval: Option<KInterval>, class: CurveClass, states: u64, partial: bool) -> Self {
        let mut v = Self::base(Outcome::Undecided, interval, states, partial);
        v.undecided_at = Some(class);
        v
    }

    pub fn has_witness(&self) -> bool {
        self.outcome == Outcome::Witness
    }
}

enum Scan {
    Witness(CurveClass),
    Undecided(CurveClass),
    Done,
    /// State cap hit; every `k` up to the payload was fully scanned.
    Capped(u64),
}

fn check_class_shape(expected: u64, k: u64, mults: &[u64]) -> Result<()> {
    if k == 0 {
        return Err(Error::argument("curve degree k must be at least 1"));
    }
    if mults.len() as u64 != expected {
        return Err(Error::argument(format!(
            "expected {expected} multiplicities, got {}",
            mults.len()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// codimension two

/// `X ⊂ Y ⊂ P^{n+2}` with `Y` of degree `a`, `X` cut by degree `b`, at the
/// step from `s` to `s+1` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codim2System {
    n: u32,
    a: u64,
    b: u64,
    s: u64,
    #[serde(default)]
    genus_form: GenusForm,
}

const CODIM2_NAMES: [&str; 4] = [
    "(i) sum m > bk/(n+1)",
    "(ii) sum m <= (s+1)bk/(s(n+1))",
    "(iii) sum m(m-1)/2 <= genus room",
    "(iv) m_i >= 1",
];

impl Codim2System {
    pub fn new(n: u32, a: u64, b: u64, s: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::argument("codimension-two system needs n >= 2"));
        }
        if s < 2 {
            return Err(Error::argument("induction step needs s >= 2"));
        }
        if a == 0 || b == 0 {
            return Err(Error::argument("degrees a, b must be at least 1"));
        }
        Ok(Codim2System {
            n,
            a,
            b,
            s,
            genus_form: GenusForm::default(),
        })
    }

    pub fn with_genus_form(mut self, form: GenusForm) -> Self {
        self.genus_form = form;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn genus_form(&self) -> GenusForm {
        self.genus_form
    }

    fn points(&self) -> u64 {
        self.s + 1
    }

    /// Twice the genus room, so the comparison with `Σ m(m-1)` stays integral.
    fn room_twice(&self, k: u64) -> i128 {
        let (k, n, a) = (k as i128, self.n as i128, self.a as i128);
        match self.genus_form {
            GenusForm::Simplified => k * k + (2 * n - a) * k,
            GenusForm::Expanded => (k - 1) * (k - 2) - 2 - (a - 2 * n - 3) * k,
        }
    }

    /// Integer range of `S = Σ m_i` allowed by (i), (ii) and (iv).
    fn sum_window(&self, k: u64) -> Option<(u64, u64)> {
        let (n1, b, k, s) = (self.n as u128 + 1, self.b as u128, k as u128, self.s as u128);
        let lo = (b * k / n1 + 1).max(s + 1);
        let hi = (s + 1) * b * k / (s * n1);
        (lo <= hi).then(|| (lo as u64, hi as u64))
    }

    fn scan(&self, k_lo: u64, k_hi: u64) -> (Scan, u64) {
        let mut states = 0;
        for k in k_lo.max(1)..=k_hi {
            let Some((lo, hi)) = self.sum_window(k) else {
                continue;
            };
            let room = self.room_twice(k);
            for total in lo..=hi {
                states += 1;
                let mults = balanced_partition(total, self.points() as usize);
                if (pair_sum(&mults) as i128) <= room {
                    return (Scan::Witness(CurveClass::new(k, mults)), states);
                }
                break;
            }
        }
        (Scan::Done, states)
    }

    fn revalidate(&self, class: &CurveClass) -> Vec<ConstraintCheck> {
        codim2_constraints(self, class.k, &class.mults).expect("witness has the right shape")
    }
}

/// Evaluate (i)-(iv) for a candidate class, exactly.
pub fn codim2_constraints(sys: &Codim2System, k: u64, mults: &[u64]) -> Result<Vec<ConstraintCheck>> {
    check_class_shape(sys.points(), k, mults)?;
    let total: u128 = mults.iter().map(|&m| m as u128).sum();
    let (n1, b, kk, s) = (sys.n as u128 + 1, sys.b as u128, k as u128, sys.s as u128);
    let lower = total * n1 > b * kk;
    let upper = total * s * n1 <= (s + 1) * b * kk;
    let genus = match sys.genus_form {
        GenusForm::Simplified => (pair_sum(mults) as i128) <= sys.room_twice(k),
        GenusForm::Expanded => {
            let hypersurface = CompleteIntersectionSpec::new(sys.n + 1, vec![sys.a])?;
            let room = plane_gap_bound(k, &genus_lower_bound(&hypersurface, k)?)?;
            rat(pair_sum(mults) as i64, 2) <= room
        }
    };
    let positive = mults.iter().all(|&m| m >= 1);
    Ok([lower, upper, genus, positive]
        .iter()
        .zip(CODIM2_NAMES)
        .map(|(&ok, name)| ConstraintCheck::new(name, ConstraintStatus::from_bool(ok)))
        .collect())
}

/// The certified `k`-range: `k >= max(1, a - 2n)` from the genus constraint
/// with `Σ m(m-1) >= 0`, and `c·k < D` from the quadratic-mean chain, where
/// `c = b²/((n+1)²(s+1)) - 1` and `D = 2n - a + (s+1)b/(s(n+1))`.
pub fn codim2_interval(sys: &Codim2System) -> KInterval {
    let (n, a, b, s) = (sys.n as i64, sys.a as i64, sys.b as i64, sys.s as i64);
    let mut lower = KBound::new(
        Integer::from((a - 2 * n).max(1)),
        "k >= a - 2n: genus room must be nonnegative",
    );
    let c = rat(b * b, (n + 1) * (n + 1) * (s + 1)) - rat(1, 1);
    let d = rat(2 * n - a, 1) + rat((s + 1) * b, s * (n + 1));
    let detail = format!("c·k < D with c = {c}, D = {d}");
    let upper = if c.is_positive() {
        Some(KBound::new(ceil(&(&d / &c)) - 1, format!("k < D/c: {detail}")))
    } else if c.is_zero() {
        (!d.is_positive()).then(|| KBound::new(Integer::zero(), format!("0 < D fails: {detail}")))
    } else {
        // c < 0 flips the inequality to k > D/c
        let from_chain = floor(&(&d / &c)) + 1;
        if from_chain > lower.value {
            lower = KBound::new(from_chain, format!("k > D/c: {detail}"));
        }
        None
    };
    KInterval { lower, upper }
}

/// Analytic route with the default brute-force horizon `5a` for the case
/// where the chain gives no upper bound.
pub fn codim2_decide_analytic(sys: &Codim2System) -> FeasibilityVerdict {
    codim2_decide_analytic_with_horizon(sys, 5 * sys.a)
}

pub fn codim2_decide_analytic_with_horizon(sys: &Codim2System, horizon: u64) -> FeasibilityVerdict {
    let interval = codim2_interval(sys);
    if interval.is_empty() {
        return FeasibilityVerdict::infeasible_empty(interval, false);
    }
    let lo = interval.lower.value.to_u64().unwrap_or(u64::MAX);
    let hi = match &interval.upper {
        Some(u) => u.value.to_u64().expect("finite upper bound fits in u64"),
        None => horizon,
    };
    let (scan, states) = sys.scan(lo, hi);
    match scan {
        Scan::Witness(class) => {
            let checks = sys.revalidate(&class);
            FeasibilityVerdict::witness(Some(interval), class, &checks, states, false)
        }
        _ if interval.upper.is_some() => FeasibilityVerdict::infeasible_searched(interval, states, false),
        _ => FeasibilityVerdict::within_horizon(Some(interval), horizon, states, false),
    }
}

/// Independent oracle: scan `k = 1..=k_max` without using the chain.
pub fn codim2_decide_bruteforce(sys: &Codim2System, k_max: u64) -> Result<FeasibilityVerdict> {
    if k_max == 0 {
        return Err(Error::argument("k_max must be at least 1"));
    }
    let (scan, states) = sys.scan(1, k_max);
    Ok(match scan {
        Scan::Witness(class) => {
            let checks = sys.revalidate(&class);
            FeasibilityVerdict::witness(None, class, &checks, states, false)
        }
        _ => FeasibilityVerdict::within_horizon(None, k_max, states, false),
    })
}

// ---------------------------------------------------------------------------
// surfaces

/// Degrees `a_i = (e+1)! q_i` with the `q_i` pairwise coprime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialForm {
    pub q: Vec<u64>,
    #[serde(with = "serde_exact::integer")]
    pub q_product: Integer,
}

/// `X ⊂ Y ⊂ P^{e+2}` with `Y` the threefold of type `degrees_y`, `X` cut by
/// degree `a_e`, at the step from `s` to `s+1` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSystem {
    e: u32,
    degrees_y: Vec<u64>,
    a_e: u64,
    s: u64,
    #[serde(with = "serde_exact::integer")]
    alpha: Integer,
    special: Option<SpecialForm>,
    #[serde(default)]
    delta_form: DeltaForm,
}

impl SurfaceSystem {
    pub fn new(e: u32, degrees_y: Vec<u64>, a_e: u64, s: u64) -> Result<Self> {
        if e < 2 {
            return Err(Error::argument("surface system needs e >= 2"));
        }
        if degrees_y.len() != e as usize - 1 {
            return Err(Error::argument(format!(
                "expected {} threefold degrees, got {}",
                e - 1,
                degrees_y.len()
            )));
        }
        if degrees_y.iter().any(|&d| d == 0) || a_e == 0 {
            return Err(Error::argument("degrees must be at least 1"));
        }
        let mut all = degrees_y.clone();
        all.push(a_e);
        if all.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::argument("degrees must satisfy a_1 <= ... <= a_e"));
        }
        if s < 2 {
            return Err(Error::argument("induction step needs s >= 2"));
        }
        let alpha = degrees_y.iter().map(|&d| Integer::from(d)).product();
        let special = detect_special_form(e, &degrees_y)?;
        Ok(SurfaceSystem {
            e,
            degrees_y,
            a_e,
            s,
            alpha,
            special,
            delta_form: DeltaForm::default(),
        })
    }

    pub fn with_delta_form(mut self, form: DeltaForm) -> Self {
        self.delta_form = form;
        self
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn degrees_y(&self) -> &[u64] {
        &self.degrees_y
    }

    pub fn a_e(&self) -> u64 {
        self.a_e
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn alpha(&self) -> &Integer {
        &self.alpha
    }

    pub fn special(&self) -> Option<&SpecialForm> {
        self.special.as_ref()
    }

    pub fn delta_form(&self) -> DeltaForm {
        self.delta_form
    }

    fn points(&self) -> u64 {
        self.s + 1
    }

    /// `T = Σ a_i + c·a_e`, the per-unit-degree right side of (iii).
    fn rhs_coefficient(&self) -> Rational {
        let sum: u64 = self.degrees_y.iter().sum();
        rat_int(sum) + self.delta_form.coefficient() * rat_int(self.a_e)
    }

    fn e_factorial(&self) -> Integer {
        factorial(self.e as i64).expect("e is nonnegative")
    }

    fn divisibility_ok(&self, k: u64) -> Option<bool> {
        self.special
            .as_ref()
            .map(|sp| self.e_factorial() * k >= sp.q_product)
    }

    fn sum_window(&self, k: u64) -> Option<(u64, u64)> {
        let (a, k, s) = (self.a_e as u128, k as u128, self.s as u128);
        let lo = (a * k / 3 + 1).max(s + 1);
        let hi = (s + 1) * a * k / (3 * s);
        (lo <= hi).then(|| (lo as u64, hi as u64))
    }

    /// Default brute-force horizon `5α / ((e+1)!)^{e-1}`.
    pub fn default_horizon(&self) -> u64 {
        let fact = factorial(self.e as i64 + 1).expect("e is nonnegative");
        let h = Integer::from(5) * &self.alpha / num_traits::pow(fact, self.e as usize - 1);
        h.to_u64().unwrap_or(u64::MAX).max(1)
    }

    fn scan(&self, k_lo: u64, k_hi: u64, precision: u32, cap: u64) -> (Scan, u64) {
        let mut cache = PowerCache::default();
        let mut states = 0;
        let mut undecided = None;
        let t = self.rhs_coefficient();
        for k in k_lo.max(1)..=k_hi {
            if self.divisibility_ok(k) == Some(false) {
                continue;
            }
            let Some((lo, hi)) = self.sum_window(k) else {
                continue;
            };
            let rhs = &t * rat_int(k);
            for total in lo..=hi {
                if states == cap {
                    return (Scan::Capped(k - 1), states);
                }
                states += 1;
                let mults = balanced_partition(total, self.points() as usize);
                match cache.decide(&multiset(&mults), &rhs, precision) {
                    ConstraintStatus::Satisfied => {
                        return (Scan::Witness(CurveClass::new(k, mults)), states)
                    }
                    ConstraintStatus::Violated => break,
                    // cannot use monotonicity past an undecided point
                    ConstraintStatus::Undecided => {
                        undecided.get_or_insert(CurveClass::new(k, mults));
                    }
                }
            }
        }
        match undecided {
            Some(class) => (Scan::Undecided(class), states),
            None => (Scan::Done, states),
        }
    }

    fn revalidate(&self, class: &CurveClass, precision: u32) -> Vec<ConstraintCheck> {
        surface_constraints(self, class.k, &class.mults, precision).expect("witness has the right shape")
    }
}

fn detect_special_form(e: u32, degrees_y: &[u64]) -> Result<Option<SpecialForm>> {
    let fact = factorial(e as i64 + 1)?;
    let mut q = Vec::with_capacity(degrees_y.len());
    for &d in degrees_y {
        let (quot, rem) = Integer::from(d).div_rem(&fact);
        if !rem.is_zero() {
            return Ok(None);
        }
        q.push(quot.to_u64().expect("quotient of a u64"));
    }
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            if gcd(&Integer::from(q[i]), &Integer::from(q[j])) != Integer::one() {
                return Ok(None);
            }
        }
    }
    let q_product = q.iter().map(|&x| Integer::from(x)).product();
    Ok(Some(SpecialForm { q, q_product }))
}

fn multiset(mults: &[u64]) -> Vec<(u64, u64)> {
    let mut counts = BTreeMap::new();
    for &m in mults {
        *counts.entry(m).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

/// Memoized enclosures of `(2m)^{3/2}`.
#[derive(Default)]
struct PowerCache {
    map: HashMap<(u64, u32), Enclosure>,
}

impl PowerCache {
    fn get(&mut self, m: u64, precision: u32) -> Enclosure {
        self.map
            .entry((m, precision))
            .or_insert_with(|| {
                power_enclosure(&Integer::from(2 * m), 3, 2, precision).expect("valid power arguments")
            })
            .clone()
    }

    /// Decide `(1/3) Σ (2m_i)^{3/2} <= rhs`, escalating precision.
    fn decide(&mut self, counts: &[(u64, u64)], rhs: &Rational, precision: u32) -> ConstraintStatus {
        let mut p = precision.max(1);
        loop {
            // each term is scaled by its count; buy that many extra digits
            let extra = counts.iter().map(|&(_, c)| c).sum::<u64>().to_string().len() as u32;
            let mut lhs = Enclosure::point(Rational::zero());
            for &(m, c) in counts {
                lhs = &lhs + &self.get(m, p + extra).scale(&rat_int(c));
            }
            let lhs = lhs.scale(&rat(1, 3));
            if lhs.upper() <= rhs {
                return ConstraintStatus::Satisfied;
            }
            if lhs.lower() > rhs {
                return ConstraintStatus::Violated;
            }
            if p >= PRECISION_CAP {
                return ConstraintStatus::Undecided;
            }
            p = (p + 8).min(PRECISION_CAP);
        }
    }
}

const SURFACE_NAMES: [&str; 5] = [
    "(i) sum m > a_e k/3",
    "(ii) sum m <= (s+1)a_e k/(3s)",
    "(iii) (1/3) sum (2m)^(3/2) <= (sum a_i + c a_e) k",
    "(iv) e! k >= q_1...q_(e-1)",
    "(v) m_i >= 1",
];

/// Evaluate the surface constraints. (iii) is decided by enclosures and may
/// come back undecided; (iv) is present only for special-form degrees.
pub fn surface_constraints(
    sys: &SurfaceSystem,
    k: u64,
    mults: &[u64],
    precision: u32,
) -> Result<Vec<ConstraintCheck>> {
    check_class_shape(sys.points(), k, mults)?;
    if precision == 0 {
        return Err(Error::argument("precision must be at least 1"));
    }
    let total: u128 = mults.iter().map(|&m| m as u128).sum();
    let (a, kk, s) = (sys.a_e as u128, k as u128, sys.s as u128);
    let from_bool = ConstraintStatus::from_bool;
    let rhs = sys.rhs_coefficient() * rat_int(k);
    let mut checks = vec![
        ConstraintCheck::new(SURFACE_NAMES[0], from_bool(3 * total > a * kk)),
        ConstraintCheck::new(SURFACE_NAMES[1], from_bool(3 * s * total <= (s + 1) * a * kk)),
        ConstraintCheck::new(
            SURFACE_NAMES[2],
            PowerCache::default().decide(&multiset(mults), &rhs, precision),
        ),
    ];
    if let Some(ok) = sys.divisibility_ok(k) {
        checks.push(ConstraintCheck::new(SURFACE_NAMES[3], from_bool(ok)));
    }
    checks.push(ConstraintCheck::new(
        SURFACE_NAMES[4],
        from_bool(mults.iter().all(|&m| m >= 1)),
    ));
    Ok(checks)
}

/// The certified `k`-range: squaring the power-mean lower bound against (iii)
/// gives `k < 243 T² (s+1) / (8 a_e³)`; divisibility gives `k >= Q / e!`.
pub fn surface_interval(sys: &SurfaceSystem) -> KInterval {
    let lower = match &sys.special {
        Some(sp) => {
            let needed = ceil(&Rational::new(sp.q_product.clone(), sys.e_factorial()));
            KBound::new(
                needed.max(Integer::one()),
                format!("e! k >= q_1...q_(e-1) = {}", sp.q_product),
            )
        }
        None => KBound::new(Integer::one(), "k >= 1"),
    };
    let t = sys.rhs_coefficient();
    let a3 = num_traits::pow(Integer::from(sys.a_e), 3);
    let bound = rat(243, 8) * &t * &t * rat_int(sys.s + 1) / rat_int(a3);
    let upper = KBound::new(
        ceil(&bound) - 1,
        format!("k < 243 T^2 (s+1) / (8 a_e^3) = {bound}, T = {t}"),
    );
    KInterval {
        lower,
        upper: Some(upper),
    }
}

pub fn surface_decide(sys: &SurfaceSystem, k_max: u64, precision: u32) -> Result<FeasibilityVerdict> {
    if k_max == 0 {
        return Err(Error::argument("k_max must be at least 1"));
    }
    let partial = sys.special.is_none();
    let interval = surface_interval(sys);
    if interval.is_empty() {
        return Ok(FeasibilityVerdict::infeasible_empty(interval, partial));
    }
    let lo = interval.lower.value.to_u64().unwrap_or(u64::MAX);
    let hi = interval
        .upper
        .as_ref()
        .and_then(|u| u.value.to_u64())
        .unwrap_or(u64::MAX);
    let (scan, states) = sys.scan(lo, hi.min(k_max), precision, SURFACE_STATE_CAP);
    Ok(match scan {
        Scan::Witness(class) => {
            let checks = sys.revalidate(&class, precision);
            FeasibilityVerdict::witness(Some(interval), class, &checks, states, partial)
        }
        Scan::Undecided(class) => FeasibilityVerdict::undecided(Some(interval), class, states, partial),
        Scan::Capped(last) => FeasibilityVerdict::within_horizon(Some(interval), last, states, partial),
        Scan::Done if hi <= k_max => FeasibilityVerdict::infeasible_searched(interval, states, partial),
        Scan::Done => FeasibilityVerdict::within_horizon(Some(interval), k_max, states, partial),
    })
}

/// Independent oracle for the surface system: scan `k = 1..=k_max`.
pub fn surface_decide_bruteforce(
    sys: &SurfaceSystem,
    k_max: u64,
    precision: u32,
) -> Result<FeasibilityVerdict> {
    if k_max == 0 {
        return Err(Error::argument("k_max must be at least 1"));
    }
    let partial = sys.special.is_none();
    let (scan, states) = sys.scan(1, k_max, precision, SURFACE_STATE_CAP);
    Ok(match scan {
        Scan::Witness(class) => {
            let checks = sys.revalidate(&class, precision);
            FeasibilityVerdict::witness(None, class, &checks, states, partial)
        }
        Scan::Undecided(class) => FeasibilityVerdict::undecided(None, class, states, partial),
        Scan::Capped(last) => FeasibilityVerdict::within_horizon(None, last, states, partial),
        Scan::Done => FeasibilityVerdict::within_horizon(None, k_max, states, partial),
    })
}

// ---------------------------------------------------------------------------
// induction replay

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum InductionTarget {
    Codim2 { n: u32, a: u64, b: u64 },
    /// `degrees` is the full type `(a_1, ..., a_e)`.
    Surface { e: u32, degrees: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionOptions {
    /// Horizon for open-ended scans; defaults per system when absent.
    pub k_max: Option<u64>,
    pub precision: u32,
    pub genus_form: GenusForm,
    pub delta_form: DeltaForm,
}

impl Default for InductionOptions {
    fn default() -> Self {
        InductionOptions {
            k_max: None,
            precision: 12,
            genus_form: GenusForm::default(),
            delta_form: DeltaForm::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionStep {
    pub s: u64,
    pub verdict: FeasibilityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionReport {
    pub target: InductionTarget,
    /// Number of points the bound separates; steps run for `s = 2..r`.
    pub r: u64,
    pub steps: Vec<InductionStep>,
    pub all_infeasible: bool,
}

impl InductionReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &InductionStep> {
        self.steps.iter().filter(|st| st.verdict.has_witness())
    }
}

/// Replay every induction step `s -> s+1` for `s = 2, ..., r-1`. The
/// theorem's hypotheses are checked before any step runs.
pub fn verify_induction(target: &InductionTarget, options: &InductionOptions) -> Result<InductionReport> {
    let (r, steps): (u64, Vec<InductionStep>) = match target {
        InductionTarget::Codim2 { n, a, b } => {
            let r = points(&cg_bound_codim2(*n, *a, *b)?.points())?;
            // Y is the hypersurface of smaller degree
            let (lo, hi) = if a <= b { (*a, *b) } else { (*b, *a) };
            let steps = (2..r)
                .into_par_iter()
                .map(|s| {
                    let sys = Codim2System::new(*n, lo, hi, s)?.with_genus_form(options.genus_form);
                    let verdict =
                        codim2_decide_analytic_with_horizon(&sys, options.k_max.unwrap_or(5 * lo));
                    Ok(InductionStep { s, verdict })
                })
                .collect::<Result<_>>()?;
            (r, steps)
        }
        InductionTarget::Surface { e, degrees } => {
            let r = points(&cg_bound_surface_special(*e, degrees)?.points())?;
            let (a_e, degrees_y) = degrees.split_last().expect("length checked by the bound");
            let steps = (2..r)
                .into_par_iter()
                .map(|s| {
                    let sys = SurfaceSystem::new(*e, degrees_y.to_vec(), *a_e, s)?
                        .with_delta_form(options.delta_form);
                    let horizon = options.k_max.unwrap_or_else(|| sys.default_horizon());
                    let verdict = surface_decide(&sys, horizon, options.precision)?;
                    Ok(InductionStep { s, verdict })
                })
                .collect::<Result<_>>()?;
            (r, steps)
        }
    };
    let all_infeasible = steps.iter().all(|st| st.verdict.outcome == Outcome::Infeasible);
    Ok(InductionReport {
        target: target.clone(),
        r,
        steps,
        all_infeasible,
    })
}

fn points(r: &Integer) -> Result<u64> {
    r.to_u64()
        .ok_or_else(|| Error::argument(format!("r = {r} is too large to replay step by step")))
}
