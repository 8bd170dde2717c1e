use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};
use crate::recurrence::LinearRecurrence;

pub const MAX_WINDOW_ENV: &str = "RECAP_MAX_WINDOW";
pub const DEFAULT_MAX_WINDOW: i64 = 5000;

/// Largest admissible search window, from `RECAP_MAX_WINDOW` if set.
pub fn max_window() -> i64 {
    std::env::var(MAX_WINDOW_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &i64| v > 0)
        .unwrap_or(DEFAULT_MAX_WINDOW)
}

fn check_window(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::Domain(format!("empty window {lo}:{hi}")));
    }
    let size = hi - lo + 1;
    let cap = max_window();
    if size > cap {
        return Err(Error::Resource(format!(
            "window of {size} indices exceeds the cap of {cap} (set {MAX_WINDOW_ENV})"
        )));
    }
    Ok(())
}

/// Where the mean index sits among the three indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeanPosition {
    Lowest,
    Middle,
    Highest,
}

/// `f_m + f_k = 2 f_n` with the mean `n` stored centrally and the outer
/// indices ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct APSolution {
    pub mean: i64,
    pub outer: [i64; 2],
    /// `[f_outer0, f_mean, f_outer1]`
    #[serde(with = "exactnum::serde_rational_array")]
    pub values: [Rational; 3],
}

impl APSolution {
    pub fn new(mean: i64, m: i64, k: i64, f_mean: Rational, f_m: Rational, f_k: Rational) -> Self {
        if m <= k {
            APSolution {
                mean,
                outer: [m, k],
                values: [f_m, f_mean, f_k],
            }
        } else {
            APSolution {
                mean,
                outer: [k, m],
                values: [f_k, f_mean, f_m],
            }
        }
    }

    pub fn mean_position(&self) -> MeanPosition {
        if self.mean < self.outer[0] {
            MeanPosition::Lowest
        } else if self.mean > self.outer[1] {
            MeanPosition::Highest
        } else {
            MeanPosition::Middle
        }
    }

    /// Indices in ascending order.
    pub fn sorted_indices(&self) -> [i64; 3] {
        let mut v = [self.mean, self.outer[0], self.outer[1]];
        v.sort();
        v
    }

    pub fn key(&self) -> (i64, i64, i64) {
        (self.mean, self.outer[0], self.outer[1])
    }

    pub fn holds(&self) -> bool {
        &self.values[0] + &self.values[2] == &self.values[1] + &self.values[1]
    }
}

impl fmt::Display for APSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f_{} + f_{} = 2 f_{}  ({} + {} = 2*{})",
            self.outer[0], self.outer[1], self.mean, self.values[0], self.values[2], self.values[1]
        )
    }
}

/// Four terms in progression order (strictly increasing values).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct APSolution4 {
    pub indices: [i64; 4],
    #[serde(with = "exactnum::serde_rational_array")]
    pub values: [Rational; 4],
}

impl fmt::Display for APSolution4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.indices;
        let [a, b, c, d] = &self.values;
        write!(f, "(f_{i}, f_{j}, f_{k}, f_{l}) = ({a}, {b}, {c}, {d})")
    }
}

/// Output of either search arity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Solutions {
    Three(Vec<APSolution>),
    Four(Vec<APSolution4>),
}

fn value_index(values: &[Rational], lo: i64) -> HashMap<&Rational, Vec<i64>> {
    let mut map: HashMap<&Rational, Vec<i64>> = HashMap::new();
    for (i, v) in values.iter().enumerate() {
        map.entry(v).or_default().push(lo + i as i64);
    }
    map
}

/// All three-term progressions `f_m + f_k = 2 f_n` with indices in
/// `[lo, hi]` and pairwise-distinct values, sorted by `(mean, outer)`.
pub fn brute_force_aps(
    rec: &LinearRecurrence,
    lo: i64,
    hi: i64,
    allow_zero_mean: bool,
) -> Result<Vec<APSolution>> {
    check_window(lo, hi)?;
    let values = rec.sequence().range(lo, hi);
    let index = value_index(&values, lo);
    let two = exactnum::rat(2);
    let mut out: Vec<APSolution> = (0..values.len())
        .into_par_iter()
        .flat_map_iter(|ni| {
            let vn = &values[ni];
            let index = &index;
            let values = &values;
            let two = &two;
            let skip = !allow_zero_mean && vn.is_zero();
            (0..values.len())
                .filter(move |&mi| !skip && values[mi] < *vn)
                .flat_map(move |mi| {
                    let target = two * vn - &values[mi];
                    index
                        .get(&target)
                        .into_iter()
                        .flatten()
                        .map(move |&k| {
                            APSolution::new(
                                lo + ni as i64,
                                lo + mi as i64,
                                k,
                                vn.clone(),
                                values[mi].clone(),
                                target.clone(),
                            )
                        })
                })
        })
        .collect();
    out.sort_by_key(|s| s.key());
    Ok(out)
}

/// All four-term progressions with indices in `[lo, hi]`, listed in
/// increasing value order. Progressions with a zero interior term are
/// dropped unless `allow_zero_mean`.
pub fn brute_force_aps4(
    rec: &LinearRecurrence,
    lo: i64,
    hi: i64,
    allow_zero_mean: bool,
) -> Result<Vec<APSolution4>> {
    check_window(lo, hi)?;
    let values = rec.sequence().range(lo, hi);
    let index = value_index(&values, lo);
    let mut out: Vec<APSolution4> = (0..values.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let values = &values;
            let index = &index;
            (0..values.len())
                .filter(move |&j| values[j] > values[i])
                .flat_map(move |j| {
                    let d = &values[j] - &values[i];
                    let v2 = &values[j] + &d;
                    let v3 = &v2 + &d;
                    let ks = index.get(&v2).cloned().unwrap_or_default();
                    let ls = index.get(&v3).cloned().unwrap_or_default();
                    let mut found = Vec::new();
                    for &k in &ks {
                        for &l in &ls {
                            found.push(APSolution4 {
                                indices: [lo + i as i64, lo + j as i64, k, l],
                                values: [values[i].clone(), values[j].clone(), v2.clone(), v3.clone()],
                            });
                        }
                    }
                    found
                })
        })
        .filter(|s| allow_zero_mean || !(s.values[1].is_zero() || s.values[2].is_zero()))
        .collect();
    out.sort_by_key(|s| s.indices);
    Ok(out)
}

/// Dispatches on the number of terms (3 or 4).
pub fn search(
    rec: &LinearRecurrence,
    lo: i64,
    hi: i64,
    terms: u8,
    allow_zero_mean: bool,
) -> Result<Solutions> {
    match terms {
        3 => Ok(Solutions::Three(brute_force_aps(rec, lo, hi, allow_zero_mean)?)),
        4 => Ok(Solutions::Four(brute_force_aps4(rec, lo, hi, allow_zero_mean)?)),
        t => Err(Error::Domain(format!("terms must be 3 or 4, got {t}"))),
    }
}
