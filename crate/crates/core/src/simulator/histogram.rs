use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Counts of integer outcomes. Serializes as a sorted array of
/// `[value, count]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<(u32, u64)>", into = "Vec<(u32, u64)>")]
pub struct Histogram {
    counts: BTreeMap<u32, u64>,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, value: u32) {
        *self.counts.entry(value).or_insert(0) += 1;
    }

    pub fn add(&mut self, value: u32, count: u64) {
        if count > 0 {
            *self.counts.entry(value).or_insert(0) += count;
        }
    }

    pub fn merge(mut self, other: Histogram) -> Self {
        for (v, c) in other.counts {
            self.add(v, c);
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, value: u32) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Relative frequency of `value`.
    pub fn frequency(&self, value: u32) -> f64 {
        self.count(value) as f64 / self.total() as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn min(&self) -> Option<u32> {
        self.counts.keys().next().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.counts.keys().next_back().copied()
    }

    /// Every observation, in increasing order.
    pub fn expand(&self) -> Vec<u32> {
        self.iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c as usize))
            .collect()
    }

    pub fn summary(&self) -> Summary {
        let total = self.total();
        if total == 0 {
            return Summary {
                count: 0,
                mean: f64::NAN,
                variance: f64::NAN,
                std_error: f64::NAN,
            };
        }
        let n = total as f64;
        let mean = self
            .iter()
            .map(|(v, c)| f64::from(v) * c as f64)
            .sum::<f64>()
            / n;
        let variance = if total > 1 {
            self.iter()
                .map(|(v, c)| {
                    let d = f64::from(v) - mean;
                    d * d * c as f64
                })
                .sum::<f64>()
                / (n - 1.0)
        } else {
            0.0
        };
        Summary {
            count: total,
            mean,
            variance,
            std_error: (variance / n).sqrt(),
        }
    }
}

impl From<Vec<(u32, u64)>> for Histogram {
    fn from(pairs: Vec<(u32, u64)>) -> Self {
        let mut h = Histogram::new();
        for (v, c) in pairs {
            h.add(v, c);
        }
        h
    }
}

impl From<Histogram> for Vec<(u32, u64)> {
    fn from(h: Histogram) -> Self {
        h.counts.into_iter().collect()
    }
}

impl FromIterator<u32> for Histogram {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut h = Histogram::new();
        for v in iter {
            h.record(v);
        }
        h
    }
}

/// Sample mean, unbiased sample variance and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: u64,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_statistics() {
        let h: Histogram = [1, 2, 3, 4].into_iter().collect();
        let s = h.summary();
        assert_eq!(s.count, 4);
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-12);
        assert!((s.std_error - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
        assert_eq!(Histogram::from(vec![(7, 1)]).summary().variance, 0.0);
        assert!(Histogram::new().summary().mean.is_nan());
    }

    #[test]
    fn json_shape() {
        let h: Histogram = [3, 1, 3].into_iter().collect();
        assert_eq!(serde_json::to_string(&h).unwrap(), "[[1,1],[3,2]]");
        let back: Histogram = serde_json::from_str("[[3,2],[1,1]]").unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn merging_is_additive() {
        let a: Histogram = [1, 2].into_iter().collect();
        let b: Histogram = [2, 5].into_iter().collect();
        let m = a.merge(b);
        assert_eq!(m.total(), 4);
        assert_eq!(m.count(2), 2);
        assert_eq!(m.expand(), vec![1, 2, 2, 5]);
        assert_eq!((m.min(), m.max()), (Some(1), Some(5)));
    }
}
