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

//! Histograms over canonical encodings, total variation distance and a
//! chi-square uniformity diagnostic.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};

/// Counts keyed by canonical encoding.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram {
    counts: BTreeMap<String, u64>,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: String) {
        *self.counts.entry(key).or_default() += 1;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (key, c) in other.counts {
            *self.counts.entry(key).or_default() += c;
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Relative frequencies.
    pub fn normalized(&self) -> BTreeMap<String, f64> {
        let total = self.total().max(1) as f64;
        self.counts
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / total))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("histogram serialises")
    }
}

impl FromIterator<String> for Histogram {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        let mut h = Histogram::new();
        for key in iter {
            h.add(key);
        }
        h
    }
}

/// Calls `draw` `draws` times and tallies the encodings it returns.
pub fn empirical_distribution<F>(draws: u64, mut draw: F) -> Result<Histogram>
where
    F: FnMut() -> Result<String>,
{
    if draws == 0 {
        return Err(Error::PreconditionViolated(
            "draws must be at least 1".into(),
        ));
    }
    let mut h = Histogram::new();
    for _ in 0..draws {
        h.add(draw()?);
    }
    Ok(h)
}

/// `1/2 sum |p(x) - q(x)|` over the union of both supports.
pub fn tv_distance(p: &BTreeMap<String, f64>, q: &BTreeMap<String, f64>) -> f64 {
    let mut sum = 0.0;
    for (key, &a) in p {
        sum += (a - q.get(key).copied().unwrap_or(0.0)).abs();
    }
    for (key, &b) in q {
        if !p.contains_key(key) {
            sum += b.abs();
        }
    }
    0.5 * sum
}

/// Distance of a histogram from the uniform law on `states`.
pub fn tv_from_uniform(hist: &Histogram, states: &[String]) -> f64 {
    let u = 1.0 / states.len() as f64;
    let reference: BTreeMap<String, f64> = states.iter().map(|s| (s.clone(), u)).collect();
    tv_distance(&hist.normalized(), &reference)
}

/// Exact total variation distance between two rational laws.
pub fn tv_distance_exact<K: Ord>(
    p: &BTreeMap<K, BigRational>,
    q: &BTreeMap<K, BigRational>,
) -> BigRational {
    let mut sum = BigRational::zero();
    for (key, a) in p {
        match q.get(key) {
            Some(b) => sum += (a - b).abs(),
            None => sum += a.abs(),
        }
    }
    for (key, b) in q {
        if !p.contains_key(key) {
            sum += b.abs();
        }
    }
    sum / BigRational::from_integer(2.into())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub p_value: f64,
    /// Expected count per state is below 5, so the p-value is unreliable.
    pub low_expected: bool,
}

/// Pearson statistic of `hist` against the uniform law on `states` states,
/// with `states - 1` degrees of freedom. States absent from the histogram
/// count as zero.
pub fn chi_square_uniformity(hist: &Histogram, states: usize) -> Result<ChiSquare> {
    if states < 2 {
        return Err(Error::PreconditionViolated(
            "need at least two states".into(),
        ));
    }
    if hist.len() > states {
        return Err(Error::PreconditionViolated(
            "histogram has more bins than states".into(),
        ));
    }
    let total = hist.total() as f64;
    let expected = total / states as f64;
    let missing = (states - hist.len()) as f64;
    let observed: f64 = hist
        .counts()
        .values()
        .map(|&c| (c as f64 - expected).powi(2))
        .sum();
    let statistic = if expected > 0.0 {
        (observed + missing * expected * expected) / expected
    } else {
        0.0
    };
    let df = (states - 1) as f64;
    let p_value = if statistic <= 0.0 {
        1.0
    } else {
        gamma_ur(df / 2.0, statistic / 2.0)
    };
    Ok(ChiSquare {
        statistic,
        p_value,
        low_expected: expected < 5.0,
    })
}
