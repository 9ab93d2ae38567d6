//! Primes: a lazily extended segmented sieve, prime counting, Ramanujan
//! primes, the prime-degree adjustment used to reach general multidegrees,
//! and the minimal curve degree forced by divisibility.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, floor, gcd, log_enclosure, rat, rat_int, Integer};

const INITIAL_LIMIT: u64 = 1 << 12;
const MAX_SEGMENT: u64 = 1 << 20;

/// Verification horizon used by [`ramanujan_prime`].
pub const DEFAULT_RAMANUJAN_HORIZON: u64 = 100_000;

#[derive(Debug)]
struct SieveState {
    limit: u64,
    primes: Vec<u64>,
}

impl SieveState {
    fn new() -> Self {
        let n = INITIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        SieveState {
            limit: INITIAL_LIMIT,
            primes,
        }
    }

    /// Sieve `[limit+1, target]` segment by segment. Each segment stays
    /// below `limit^2`, so the known primes are always enough to sieve it.
    fn extend_to(&mut self, target: u64) {
        while self.limit < target {
            let lo = self.limit + 1;
            let hi = target
                .min(self.limit.saturating_mul(self.limit))
                .min(self.limit + MAX_SEGMENT);
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &p in &self.primes {
                if p * p > hi {
                    break;
                }
                let mut j = (p * p).max(lo.div_ceil(p) * p);
                while j <= hi {
                    composite[(j - lo) as usize] = true;
                    j += p;
                }
            }
            self.primes.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64),
            );
            self.limit = hi;
        }
    }
}

/// Prime table that grows on demand. Reads run concurrently; extension
/// takes the write lock, so there is a single writer at a time.
#[derive(Debug)]
pub struct PrimeSieve {
    state: RwLock<SieveState>,
}

impl Default for PrimeSieve {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeSieve {
    pub fn new() -> Self {
        PrimeSieve {
            state: RwLock::new(SieveState::new()),
        }
    }

    fn ensure(&self, limit: u64) {
        if self.state.read().expect("sieve lock").limit >= limit {
            return;
        }
        self.state.write().expect("sieve lock").extend_to(limit);
    }

    pub fn limit(&self) -> u64 {
        self.state.read().expect("sieve lock").limit
    }

    /// Number of primes `<= x`.
    pub fn pi(&self, x: u64) -> u64 {
        self.ensure(x);
        let st = self.state.read().expect("sieve lock");
        st.primes.partition_point(|&p| p <= x) as u64
    }

    /// Primes `p` with `lo_exclusive < p <= hi`, ascending.
    pub fn primes_in(&self, lo_exclusive: u64, hi: u64) -> Vec<u64> {
        if hi <= lo_exclusive {
            return Vec::new();
        }
        self.ensure(hi);
        let st = self.state.read().expect("sieve lock");
        let start = st.primes.partition_point(|&p| p <= lo_exclusive);
        let end = st.primes.partition_point(|&p| p <= hi);
        st.primes[start..end].to_vec()
    }

    /// `π(x)` for every `x` in `0..=limit`.
    pub fn pi_table(&self, limit: u64) -> Vec<u32> {
        self.ensure(limit);
        let st = self.state.read().expect("sieve lock");
        let mut table = vec![0u32; limit as usize + 1];
        let mut next = st.primes.iter().peekable();
        let mut count = 0u32;
        for (x, slot) in table.iter_mut().enumerate() {
            while next.peek().is_some_and(|&&p| p <= x as u64) {
                next.next();
                count += 1;
            }
            *slot = count;
        }
        table
    }

    pub fn is_prime(&self, x: u64) -> bool {
        x >= 2 && self.pi(x) > self.pi(x - 1)
    }
}

/// Process-wide sieve shared by the free functions of this module.
pub fn global_sieve() -> &'static PrimeSieve {
    static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
    SIEVE.get_or_init(PrimeSieve::new)
}

pub fn prime_pi(x: u64) -> u64 {
    global_sieve().pi(x)
}

/// Certified integer above Sondow's bound `4n log 4n`.
pub fn sondow_upper(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::argument("Ramanujan primes are indexed from 1"));
    }
    let four_n = rat(4 * n as i64, 1);
    let enc = log_enclosure(&four_n, 12)?.scale(&four_n);
    Ok(crate::exactnum::ceil(enc.upper())
        .to_u64()
        .expect("Sondow bound fits in u64"))
}

/// `R_n`, the least `R` with `π(x) - π(x/2) >= n` for all `x >= R`, checked
/// against the definition on `[1, max(horizon, ⌈4n log 4n⌉)]`.
pub fn ramanujan_prime_with_horizon(n: u64, horizon: u64) -> Result<u64> {
    let limit = sondow_upper(n)?.max(horizon);
    let pi = global_sieve().pi_table(limit);
    let last_failure = (1..=limit)
        .rev()
        .find(|&x| ((pi[x as usize] - pi[(x / 2) as usize]) as u64) < n)
        .expect("x = 1 always fails for n >= 1");
    Ok(last_failure + 1)
}

pub fn ramanujan_prime(n: u64) -> Result<u64> {
    ramanujan_prime_with_horizon(n, DEFAULT_RAMANUJAN_HORIZON)
}

/// Certified ceiling of `(e+1)! · 4(e-1) · log 4(e-1)`, the smallest degree
/// from which prime selection is guaranteed to succeed.
pub fn degree_threshold(e: u32) -> Result<Integer> {
    if e < 2 {
        return Err(Error::argument("degree threshold needs e >= 2"));
    }
    let fact = factorial(e as i64 + 1)?;
    let x = 4 * (e as i64 - 1);
    let coeff = rat_int(fact * x);
    // log of an integer >= 2 is irrational, so the enclosure eventually
    // sits strictly between two integers.
    let mut precision = 12;
    loop {
        let enc = log_enclosure(&rat(x, 1), precision)?.scale(&coeff);
        let lo = floor(enc.lower());
        let hi = floor(enc.upper());
        if lo == hi {
            return Ok(hi + 1);
        }
        precision += 10;
    }
}

/// Distinct primes `q_i` with `d_i / (2(e+1)!) < q_i <= d_i / (e+1)!` and
/// the adjusted degrees `a_i = (e+1)! q_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDegreeSelection {
    pub e: u32,
    pub input_degrees: Vec<u64>,
    pub primes: Vec<u64>,
    pub adjusted: Vec<u64>,
    /// Set when greedy selection got stuck and backtracking was needed.
    pub used_fallback: bool,
}

impl PrimeDegreeSelection {
    /// Re-check every invariant of the selection.
    pub fn validate(&self) -> Result<()> {
        let fact = factorial(self.e as i64 + 1)?
            .to_u64()
            .ok_or_else(|| Error::argument("(e+1)! overflows u64"))?;
        let sieve = global_sieve();
        for (i, ((&d, &q), &a)) in self
            .input_degrees
            .iter()
            .zip(&self.primes)
            .zip(&self.adjusted)
            .enumerate()
        {
            if !sieve.is_prime(q) {
                return Err(Error::hypothesis("prime", format!("q_{} = {q} is not prime", i + 1)));
            }
            if !(2 * fact * q > d && fact * q <= d) {
                return Err(Error::hypothesis(
                    "prime interval",
                    format!("q_{} = {q} outside (d/(2(e+1)!), d/(e+1)!] for d = {d}", i + 1),
                ));
            }
            if a != fact * q || !(2 * a > d && a <= d) {
                return Err(Error::hypothesis(
                    "adjusted degree",
                    format!("a_{} = {a} must equal (e+1)!·q and satisfy d/2 < a <= d", i + 1),
                ));
            }
        }
        let mut sorted = self.primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.primes.len() {
            return Err(Error::hypothesis("distinct primes", format!("{:?}", self.primes)));
        }
        Ok(())
    }
}

fn backtrack(candidates: &[Vec<u64>], idx: usize, used: &mut Vec<u64>, out: &mut [u64]) -> bool {
    if idx == candidates.len() {
        return true;
    }
    for &q in candidates[idx].iter().rev() {
        if used.contains(&q) {
            continue;
        }
        used.push(q);
        out[idx] = q;
        if backtrack(candidates, idx + 1, used, out) {
            return true;
        }
        used.pop();
    }
    false
}

/// Pick the primes for `d_1 <= ... <= d_{e-1}`, working from the largest
/// degree down and taking the largest unused prime in each interval.
pub fn select_prime_degrees(e: u32, degrees: &[u64]) -> Result<PrimeDegreeSelection> {
    if e < 3 {
        return Err(Error::argument("prime selection needs e >= 3"));
    }
    if degrees.len() != e as usize - 1 {
        return Err(Error::argument(format!(
            "expected {} degrees, got {}",
            e - 1,
            degrees.len()
        )));
    }
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::argument("degrees must be sorted ascending"));
    }
    let threshold = degree_threshold(e)?;
    if Integer::from(degrees[0]) < threshold {
        return Err(Error::Threshold {
            detail: format!("d_1 = {} is below A({e}) = {threshold}", degrees[0]),
        });
    }
    let fact = factorial(e as i64 + 1)?
        .to_u64()
        .ok_or_else(|| Error::argument("(e+1)! overflows u64"))?;
    let sieve = global_sieve();
    let candidates: Vec<Vec<u64>> = degrees
        .iter()
        .map(|&d| sieve.primes_in(d / (2 * fact), d / fact))
        .collect();

    let mut primes = vec![0u64; degrees.len()];
    let mut used_fallback = false;
    for i in (0..degrees.len()).rev() {
        match candidates[i]
            .iter()
            .rev()
            .find(|q| !primes[i + 1..].contains(q))
        {
            Some(&q) => primes[i] = q,
            None => {
                used_fallback = true;
                break;
            }
        }
    }
    if used_fallback {
        let mut used = Vec::new();
        if !backtrack(&candidates, 0, &mut used, &mut primes) {
            let idx = candidates.iter().position(|c| c.is_empty()).unwrap_or(0);
            return Err(Error::Exhausted {
                index: idx + 1,
                lower: format!("{}/{}", degrees[idx], 2 * fact),
                upper: format!("{}/{}", degrees[idx], fact),
            });
        }
    }
    let selection = PrimeDegreeSelection {
        e,
        input_degrees: degrees.to_vec(),
        adjusted: primes.iter().map(|&q| q * fact).collect(),
        primes,
        used_fallback,
    };
    selection.validate()?;
    Ok(selection)
}

/// Least positive `d` with `q_1 ⋯ q_f | (n+f-2)! · d`, for pairwise coprime
/// `q_i > 2^{n+f-1}`.
pub fn min_curve_degree(n: u32, f: u32, primes: &[u64]) -> Result<Integer> {
    if n == 0 || f == 0 {
        return Err(Error::argument("need n >= 1 and f >= 1"));
    }
    if primes.len() != f as usize {
        return Err(Error::argument(format!(
            "expected {f} values q_i, got {}",
            primes.len()
        )));
    }
    let bound = Integer::one() << (n + f - 1);
    for (i, &q) in primes.iter().enumerate() {
        if Integer::from(q) <= bound {
            return Err(Error::hypothesis(
                "q_i > 2^(n+f-1)",
                format!("q_{} = {q} is not above 2^{} = {bound}", i + 1, n + f - 1),
            ));
        }
    }
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            if gcd(&primes[i].into(), &primes[j].into()) != Integer::one() {
                return Err(Error::hypothesis(
                    "pairwise coprime",
                    format!("gcd(q_{}, q_{}) > 1", i + 1, j + 1),
                ));
            }
        }
    }
    let product: Integer = primes.iter().map(|&q| Integer::from(q)).product();
    let fact = factorial(n as i64 + f as i64 - 2)?;
    let g = gcd(&product, &fact);
    Ok(product / g)
}
