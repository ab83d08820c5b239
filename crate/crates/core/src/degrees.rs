//! Arithmetic of groups of order `d(d+e)` with an irreducible character of degree `d`.

use serde::Serialize;
use thiserror::Error;

use crate::table::gcd_u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("e = {0} is out of range (need 2 <= e and e^4 to fit in 64 bits)")]
    EOutOfRange(u64),
    #[error("|N| = {m} does not divide |G| = {n}")]
    BadDivisibility { n: u64, m: u64 },
    #[error("need 1 < |N| < |G|, got |N| = {m} and |G| = {n}")]
    NormalOrderOutOfRange { n: u64, m: u64 },
    #[error("the degree must be positive")]
    ZeroDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DegreePair {
    pub e: u64,
    pub d: u64,
    pub n: u64,
}

/// Orbit length `k = |G:G_θ|`, ramification index `e_ram` and `t = θ(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RamificationTriple {
    pub k: u64,
    pub e_ram: u64,
    pub t: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FeasibilityOpts {
    pub n_abelian: bool,
    pub n_central: bool,
    pub coprime_extension: bool,
}

/// `e^4 - e^3`, the largest order a group of order `d(d+e)` can have.
pub fn hls_max_order(e: u64) -> Result<u64, DegreeError> {
    if e < 2 {
        return Err(DegreeError::EOutOfRange(e));
    }
    e.checked_pow(4).map(|e4| e4 - e * e * e).ok_or(DegreeError::EOutOfRange(e))
}

/// Every `d >= 1` with `d(d+e) <= e^4 - e^3`, ascending.
pub fn enumerate_pairs(e: u64) -> Result<Vec<DegreePair>, DegreeError> {
    let bound = hls_max_order(e)?;
    Ok((1..)
        .map(|d| DegreePair { e, d, n: d * (d + e) })
        .take_while(|p| p.n <= bound)
        .collect())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Clifford-theoretic ways a character of degree `d` of a group of order `n`
/// can restrict to a normal subgroup of order `m`. An empty result means no
/// such normal subgroup can exist.
pub fn feasible_ramifications(
    n: u64,
    d: u64,
    m: u64,
    opts: FeasibilityOpts,
) -> Result<Vec<RamificationTriple>, DegreeError> {
    if d == 0 {
        return Err(DegreeError::ZeroDegree);
    }
    if m <= 1 || m >= n {
        return Err(DegreeError::NormalOrderOutOfRange { n, m });
    }
    if n % m != 0 {
        return Err(DegreeError::BadDivisibility { n, m });
    }
    let index = n / m;
    let mut out = Vec::new();
    for k in divisors(index) {
        let stabilizer_index = index / k;
        for e_ram in divisors(stabilizer_index) {
            if d % (k * e_ram) != 0 {
                continue;
            }
            let t = d / (k * e_ram);
            let t2 = u128::from(t) * u128::from(t);
            let ok = u128::from(e_ram) * u128::from(e_ram) <= u128::from(stabilizer_index)
                && u128::from(k) * t2 < u128::from(m)
                && (!opts.n_abelian || t == 1)
                && (!opts.n_central || (k == 1 && t == 1))
                && (!opts.coprime_extension || gcd_u64(m, stabilizer_index) != 1 || e_ram == 1)
                && u128::from(d) * u128::from(d) * t2 <= u128::from(index) * u128::from(m - 1);
            if ok {
                out.push(RamificationTriple { k, e_ram, t });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scenario {
    /// Label of the excluded pair `(d, e)` in the classification, e.g. "(i)".
    pub case: &'static str,
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub opts: FeasibilityOpts,
    pub triples: Vec<RamificationTriple>,
}

impl Scenario {
    pub fn feasible(&self) -> bool {
        !self.triples.is_empty()
    }
}

/// The arithmetic cores of the exclusions of `(d, e) = (32, 8), (48, 8), (54, 9)`.
pub fn lemma_scenarios() -> Vec<Scenario> {
    let abelian = FeasibilityOpts { n_abelian: true, ..Default::default() };
    let coprime = FeasibilityOpts { coprime_extension: true, ..abelian };
    let mut plan = Vec::new();
    plan.extend([64, 128, 256].map(|m| ("(i)", 1280, 32, m, FeasibilityOpts::default())));
    plan.extend([2, 4, 8].map(|m| ("(ii)", 2688, 48, m, abelian)));
    plan.push(("(iii)", 3402, 54, 7, abelian));
    plan.push(("(iii)", 3402, 54, 7, coprime));
    plan.into_iter()
        .map(|(case, n, d, m, opts)| Scenario {
            case,
            n,
            d,
            m,
            opts,
            triples: feasible_ramifications(n, d, m, opts).expect("scenario parameters are admissible"),
        })
        .collect()
}
