//! Degree-sequence lower bounds on biholes and balanced induced
//! `d`-degenerate subgraphs, in exact rational arithmetic.
//!
//! For a balanced `n x n` graph with side maxima `Δ_A`, `Δ_B` and potential
//! `f(x) = min(1, (d+1)/(x+1))`:
//!
//! * floor bound: `⌊ Σ_v f(d(v)) / 2 ⌋`
//! * strengthened bound: `S = (f(Δ_A) + f(Δ_B) + Σ_v f(d(v))) / 2 - 1`
//! * average-degree bound: `n / (d̄ + 1) - 2` with `d̄ = |E| / n`
//!
//! The empty graph (`n = 0`) gets 0 for every bound.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side};
use crate::rational::Rational;

/// `min(1, (d+1)/(x+1))`; equals 1 exactly when `x <= d`.
pub fn potential(x: usize, d: usize) -> Rational {
    if x <= d {
        Rational::one()
    } else {
        Rational::from(d + 1) / Rational::from(x + 1)
    }
}

/// `Σ_v potential(d(v), d)` over both sides. Does not require balance.
pub fn caro_wei_sum(g: &BipartiteGraph, d: usize) -> Rational {
    // Group equal degrees so the sum costs one rational op per distinct degree.
    let mut counts = std::collections::BTreeMap::<usize, usize>::new();
    for deg in g.all_degrees() {
        *counts.entry(deg).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(deg, count)| potential(deg, d) * Rational::from(count))
        .sum()
}

pub fn floor_bound(g: &BipartiteGraph, d: usize) -> Result<usize> {
    g.balanced_size()?;
    let half = caro_wei_sum(g, d) / Rational::from_integer(2);
    Ok(half
        .floor()
        .to_usize()
        .expect("floor bound is between 0 and n"))
}

pub fn strengthened_bound(g: &BipartiteGraph, d: usize) -> Result<Rational> {
    let n = g.balanced_size()?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    let delta_a = g.max_degree(Side::Left)?;
    let delta_b = g.max_degree(Side::Right)?;
    let total = potential(delta_a, d) + potential(delta_b, d) + caro_wei_sum(g, d);
    Ok(total / Rational::from_integer(2) - Rational::one())
}

/// `d̄ = |E| / n`, exact.
pub fn average_degree(g: &BipartiteGraph) -> Result<Rational> {
    let n = g.balanced_size()?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(Rational::from(g.edge_count()) / Rational::from(n))
}

pub fn average_degree_bound(g: &BipartiteGraph) -> Result<Rational> {
    let n = g.balanced_size()?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    let avg = average_degree(g)?;
    Ok(Rational::from(n) / (avg + Rational::one()) - Rational::from_integer(2))
}

/// The asymptotic reference value `(ε/2) · n · ln(d̄) / d̄`, reported only.
///
/// The natural log is evaluated in `f64` (relative error within a few ulp,
/// about 1e-15) and then carried exactly, so `value` is approximate while
/// `eps` and `avg_degree` are exact. The unknown threshold on `d̄` is never
/// assumed; only the checkable size hypothesis is reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogReference {
    pub eps: Rational,
    pub avg_degree: Rational,
    pub value: Rational,
    /// Whether `n >= (1 + ε) d̄` holds.
    pub size_hypothesis_holds: bool,
}

pub fn log_reference_formula(n: usize, avg_degree: &Rational, eps: &Rational) -> Rational {
    let ln = Rational::from_f64(avg_degree.to_f64().ln()).unwrap_or_else(Rational::zero);
    eps / &Rational::from_integer(2) * Rational::from(n) * ln / avg_degree.clone()
}

pub fn log_reference_bound(g: &BipartiteGraph, eps: &Rational) -> Result<LogReference> {
    if *eps <= 0 || *eps >= 1 {
        return Err(Error::InvalidEpsilon);
    }
    let n = g.balanced_size()?;
    let avg = average_degree(g)?;
    if avg <= 1 {
        return Err(Error::DegreeTooSmall(avg.to_string()));
    }
    let value = log_reference_formula(n, &avg, eps);
    let size_hypothesis_holds = Rational::from(n) >= (Rational::one() + eps.clone()) * avg.clone();
    Ok(LogReference {
        eps: eps.clone(),
        avg_degree: avg,
        value,
        size_hypothesis_holds,
    })
}

/// Every bound for one graph and one degeneracy parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub edge_count: usize,
    pub caro_wei_sum: Rational,
    pub floor_bound: usize,
    pub strengthened: Rational,
    pub ceil_strengthened: i64,
    pub average_degree_bound: Rational,
    /// Present when an ε was requested and `d̄ > 1`.
    pub log_reference: Option<LogReference>,
}

impl BoundReport {
    pub fn compute(g: &BipartiteGraph, d: usize, eps: Option<&Rational>) -> Result<Self> {
        let n = g.balanced_size()?;
        let strengthened = strengthened_bound(g, d)?;
        let log_reference = match eps {
            Some(eps) if n > 0 => match log_reference_bound(g, eps) {
                Ok(r) => Some(r),
                Err(Error::DegreeTooSmall(_)) => None,
                Err(e) => return Err(e),
            },
            Some(eps) if *eps <= 0 || *eps >= 1 => return Err(Error::InvalidEpsilon),
            _ => None,
        };
        Ok(BoundReport {
            n,
            d,
            edge_count: g.edge_count(),
            caro_wei_sum: caro_wei_sum(g, d),
            floor_bound: floor_bound(g, d)?,
            ceil_strengthened: strengthened.ceil().to_i64().expect("bounded by n + 1"),
            strengthened,
            average_degree_bound: average_degree_bound(g)?,
            log_reference,
        })
    }
}
