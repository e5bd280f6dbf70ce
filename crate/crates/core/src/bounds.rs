// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Closed-form bounds: H-simplicity probability (regular and sparse
//! irregular), the feasibility condition for `c0`, the output total
//! variation bound of the rejection sampler, the asymptotic count of
//! bipartite graphs, and switch-chain mixing-time budgets.
//!
//! Asymptotic `o(1)` and `O(.)` corrections are dropped everywhere. Each
//! asymptotic quantity comes with a concrete proxy for its growth condition
//! so callers can see when the leading term is trustworthy.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::rejection::{fpaus_cap, inner_eps};
use crate::types::{BipartiteDegreeSequence, HypergraphInstance};

/// Leading-order value together with whether its validity proxy holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptotic {
    pub value: f64,
    pub proxy_holds: bool,
}

impl Asymptotic {
    pub fn new(value: f64, proxy_holds: bool) -> Self {
        Self { value, proxy_holds }
    }
}

/// A quantity too large for a plain decimal; serialises as `{"ln": v}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue(pub f64);

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("ln", &self.0)?;
        map.end()
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact below `u64::MAX`, log-gamma above. `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let kk = k.min(n - k);
    let mut acc: u128 = 1;
    let mut exact = true;
    for i in 0..kk {
        match acc.checked_mul((n - i) as u128) {
            Some(v) if v / (i as u128 + 1) <= u64::MAX as u128 => acc = v / (i as u128 + 1),
            _ => {
                exact = false;
                break;
            }
        }
    }
    if exact {
        (acc as f64).ln()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

fn clamp_rational(r: BigRational) -> BigRational {
    if r < BigRational::zero() {
        BigRational::zero()
    } else {
        r
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `max(0, 1 - C(m,2) / C(n,k))` with `m = nd/k`, exactly.
pub fn regular_simplicity_bound_exact(n: usize, d: usize, k: usize) -> Result<BigRational> {
    if !(n * d).is_multiple_of(k) {
        return Err(Error::IndivisibleTotal {
            total: (n * d) as u64,
            k: k as u64,
        });
    }
    let m = (n * d / k) as u64;
    let pairs = binomial(m, 2);
    let subsets = binomial(n as u64, k as u64);
    if subsets.is_zero() {
        return Ok(BigRational::zero());
    }
    let ratio = BigRational::new(pairs.into(), subsets.into());
    Ok(clamp_rational(BigRational::one() - ratio))
}

/// Lower bound on the probability that a uniform element of `B(n, d, k)` is
/// H-simple. Non-asymptotic.
pub fn regular_simplicity_bound(n: usize, d: usize, k: usize) -> Result<f64> {
    regular_simplicity_bound_exact(n, d, k).map(|r| rational_to_f64(&r))
}

/// `ln((n d_max / M)^k C(m,2) / C(n,k))`.
fn ln_irregular_ratio(inst: &HypergraphInstance) -> f64 {
    let n = inst.n() as f64;
    let k = inst.k() as f64;
    let ratio = n * inst.d_max() as f64 / inst.total_degree() as f64;
    k * ratio.ln() + ln_binomial(inst.edge_count() as u64, 2)
        - ln_binomial(inst.n() as u64, inst.k() as u64)
}

/// `(n d_max)^k C(m,2) / (M^k C(n,k))` exactly; `None` when `k > n`.
pub fn irregular_ratio_exact(inst: &HypergraphInstance) -> Option<BigRational> {
    let subsets = binomial(inst.n() as u64, inst.k() as u64);
    if subsets.is_zero() {
        return None;
    }
    let k = inst.k() as u32;
    let num = BigUint::from(inst.n() * inst.d_max()).pow(k) * binomial(inst.edge_count() as u64, 2);
    let den = BigUint::from(inst.total_degree()).pow(k) * subsets;
    Some(BigRational::new(num.into(), den.into()))
}

/// Leading term of the sparse irregular bound,
/// `max(0, 1 - (n d_max / M)^k C(m,2) / C(n,k))`, evaluated in log space.
/// Proxy for `k^2 d_max^2 = o(M)`: `k^2 d_max^2 <= M / 10`.
pub fn irregular_simplicity_bound(inst: &HypergraphInstance) -> Asymptotic {
    let k = inst.k() as f64;
    let dm = inst.d_max() as f64;
    let proxy = k * k * dm * dm <= inst.total_degree() as f64 / 10.0;
    let value = (1.0 - ln_irregular_ratio(inst).exp()).clamp(0.0, 1.0);
    Asymptotic::new(value, proxy)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct C0Verdict {
    pub holds: bool,
    /// Smallest `c0` for which the condition holds.
    pub min_c0: f64,
}

/// `(d_max / d)^k C(m,2) <= c0 C(n,k)` with `d = M / n`, in log space.
pub fn c0_condition(inst: &HypergraphInstance, c0: f64) -> C0Verdict {
    let ln_ratio = ln_irregular_ratio(inst);
    C0Verdict {
        holds: ln_ratio <= c0.ln() + 1e-12,
        min_c0: ln_ratio.exp(),
    }
}

fn check_c0(c0: f64) -> Result<()> {
    if c0 > 0.0 && c0 < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidRegion(format!("c0 = {c0} is not in (0, 1)")))
    }
}

/// `3 eps / (2 (1 - c0))`.
pub fn tv_output_bound(eps: f64, c0: f64) -> Result<f64> {
    check_c0(c0)?;
    if eps < 0.0 || eps.is_nan() {
        return Err(Error::InvalidRegion(format!("eps = {eps} is negative")));
    }
    Ok(3.0 * eps / (2.0 * (1.0 - c0)))
}

/// `(1 - c0 - eps)^{-1}`, the factor multiplying the per-iteration cost in
/// the expected runtime.
pub fn runtime_factor(eps: f64, c0: f64) -> Result<f64> {
    check_c0(c0)?;
    if c0 + eps >= 1.0 {
        return Err(Error::InvalidRegion(format!(
            "c0 + eps = {} >= 1",
            c0 + eps
        )));
    }
    Ok(1.0 / (1.0 - c0 - eps))
}

/// `ln M! - sum ln d_i! - sum ln k_j! - M_2 L_2 / (2 M^2)`; the
/// `O(d_max^2 k_max^2 / M)` term is dropped. Proxy for
/// `k_max d_max = o(M^{2/3})`: `(k_max d_max)^{3/2} <= M / 10`.
pub fn gmw_log_count(bds: &BipartiteDegreeSequence) -> Asymptotic {
    let total = bds.total() as f64;
    let ln_fact = |a: usize| ln_gamma(a as f64 + 1.0);
    let mut value = ln_fact(bds.total());
    value -= bds.left().iter().map(|&d| ln_fact(d)).sum::<f64>();
    value -= bds.right().iter().map(|&k| ln_fact(k)).sum::<f64>();
    if total > 0.0 {
        value -= bds.left_moment(2) as f64 * bds.right_moment(2) as f64 / (2.0 * total * total);
    }
    let proxy = ((bds.k_max() * bds.d_max()) as f64).powf(1.5) <= total / 10.0;
    Asymptotic::new(value, proxy)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidRegion(format!(
            "eps = {eps} is not in (0, 1)"
        )))
    }
}

/// `ln(32 d^17 n^6 (2dn ln(2dn) + ln(1/eps)))`, the switch-chain mixing
/// bound on `d`-regular bipartite graphs with `n` nodes per side.
pub fn mixing_budget_regular(n: usize, d: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let (n, d) = (n as f64, d as f64);
    let two_dn = 2.0 * d * n;
    Ok(32f64.ln() + 17.0 * d.ln() + 6.0 * n.ln() + (two_dn * two_dn.ln() - eps.ln()).ln())
}

/// `ln(D^10 M^7 (M ln(M) / 2 + ln(1/eps)))` with `D = max(d_max, k)`.
/// The proxy reports whether `3 <= d_max, k <= sqrt(M) / 3`.
pub fn mixing_budget_irregular(inst: &HypergraphInstance, eps: f64) -> Result<Asymptotic> {
    check_eps(eps)?;
    let total = inst.total_degree() as f64;
    let delta = inst.d_max().max(inst.k()) as f64;
    let value = 10.0 * delta.ln() + 7.0 * total.ln() + (0.5 * total * total.ln() - eps.ln()).ln();
    let limit = total.sqrt() / 3.0;
    let in_range = |x: usize| x >= 3 && x as f64 <= limit;
    Ok(Asymptotic::new(
        value,
        in_range(inst.d_max()) && in_range(inst.k()),
    ))
}

/// `min(exp(ln_budget), cap)` as a step count.
pub fn steps_from_budget(ln_budget: f64, cap: u64) -> u64 {
    if ln_budget >= (cap as f64).ln() {
        cap
    } else {
        ln_budget.exp().ceil() as u64
    }
}

/// Mixing-budget accuracy used when the caller does not supply one.
pub const DEFAULT_MIXING_EPS: f64 = 0.01;

/// Every bound for one instance. Flat when serialised; probabilities as
/// decimals, huge quantities as `{"ln": v}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    pub edge_count: usize,
    pub total_degree: usize,
    pub d_max: usize,
    pub m2: usize,
    /// False when `k < 3`; the simplicity bounds are then out of theorem range.
    pub in_theorem_range: bool,
    pub regular_simplicity_lower_bound: Option<f64>,
    pub irregular_simplicity_lower_bound: f64,
    pub irregular_bound_proxy_holds: bool,
    pub implied_c0: f64,
    pub c0: Option<f64>,
    pub c0_feasible: Option<bool>,
    pub expected_config_trials: f64,
    pub config_trials_proxy_holds: bool,
    pub gmw_log_count: LogValue,
    pub gmw_proxy_holds: bool,
    pub mixing_eps: f64,
    pub mixing_budget_regular: Option<LogValue>,
    pub mixing_budget_irregular: LogValue,
    pub mixing_range_holds: bool,
    pub eps: Option<f64>,
    pub tv_output_bound: Option<f64>,
    pub runtime_factor: Option<f64>,
    pub fpaus_cap: Option<u64>,
    pub inner_eps: Option<f64>,
}

impl BoundsReport {
    /// `c0` must lie in `(0, 1)` and `eps` in `(0, 1]` when given. Quantities
    /// needing `c0 + eps < 1` are `None` outside that region.
    pub fn compute(inst: &HypergraphInstance, c0: Option<f64>, eps: Option<f64>) -> Result<Self> {
        if let Some(c) = c0 {
            check_c0(c)?;
        }
        if let Some(e) = eps {
            check_eps(e)?;
        }
        let mixing_eps = eps.unwrap_or(DEFAULT_MIXING_EPS);
        let regular = inst.regular_degree();
        let irregular = irregular_simplicity_bound(inst);
        let trials = crate::config_model::expected_trials_estimate(inst);
        let gmw = gmw_log_count(&inst.bipartite());
        let mix = mixing_budget_irregular(inst, mixing_eps)?;
        let mixing_budget_regular = match regular {
            Some(d) if d == inst.k() => {
                Some(LogValue(mixing_budget_regular(inst.n(), d, mixing_eps)?))
            }
            _ => None,
        };
        let both = c0.zip(eps);
        Ok(Self {
            n: inst.n(),
            k: inst.k(),
            edge_count: inst.edge_count(),
            total_degree: inst.total_degree(),
            d_max: inst.d_max(),
            m2: inst.m2(),
            in_theorem_range: inst.in_theorem_range(),
            regular_simplicity_lower_bound: regular
                .map(|d| regular_simplicity_bound(inst.n(), d, inst.k()))
                .transpose()?,
            irregular_simplicity_lower_bound: irregular.value,
            irregular_bound_proxy_holds: irregular.proxy_holds,
            implied_c0: c0_condition(inst, 0.5).min_c0,
            c0,
            c0_feasible: c0.map(|c| c0_condition(inst, c).holds),
            expected_config_trials: trials.value,
            config_trials_proxy_holds: trials.proxy_holds,
            gmw_log_count: LogValue(gmw.value),
            gmw_proxy_holds: gmw.proxy_holds,
            mixing_eps,
            mixing_budget_regular,
            mixing_budget_irregular: LogValue(mix.value),
            mixing_range_holds: mix.proxy_holds,
            eps,
            tv_output_bound: both.map(|(c, e)| tv_output_bound(e, c)).transpose()?,
            runtime_factor: both.and_then(|(c, e)| runtime_factor(e, c).ok()),
            fpaus_cap: both.and_then(|(c, e)| fpaus_cap(c, e).ok()),
            inner_eps: both.map(|(c, e)| inner_eps(e, c)),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }
}
