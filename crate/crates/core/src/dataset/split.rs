//! Deterministic train/validation/test splitting.

use serde::{Deserialize, Serialize};

use super::DatasetError;

/// Split fractions; must be nonnegative and sum to 1 (within 1e-9).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitFractions {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        SplitFractions {
            train: 0.8,
            validation: 0.1,
            test: 0.1,
        }
    }
}

impl SplitFractions {
    pub fn validate(&self) -> Result<(), DatasetError> {
        if self.train < 0.0 || self.validation < 0.0 || self.test < 0.0 {
            return Err(DatasetError::Config(
                "split fractions must be nonnegative".to_string(),
            ));
        }
        let sum = self.train + self.validation + self.test;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(DatasetError::Config(format!(
                "split fractions must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}

/// Items assigned to each split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitAssignment<T> {
    pub train: Vec<T>,
    pub validation: Vec<T>,
    pub test: Vec<T>,
}

/// Deterministically shuffle `items` under `seed` and partition them. The
/// validation and test sizes are `round(fraction * n)`; the remainder goes
/// to train. Documents are never split, only queries, since ad-hoc
/// retrieval assumes one fixed collection.
pub fn split_queries<T>(
    mut items: Vec<T>,
    fractions: &SplitFractions,
    seed: u64,
) -> Result<SplitAssignment<T>, DatasetError> {
    fractions.validate()?;
    shuffle(&mut items, seed);
    let n = items.len();
    let n_validation = ((fractions.validation * n as f64).round() as usize).min(n);
    let n_test = ((fractions.test * n as f64).round() as usize).min(n - n_validation);
    let n_train = n - n_validation - n_test;

    let mut iter = items.into_iter();
    let train: Vec<T> = iter.by_ref().take(n_train).collect();
    let validation: Vec<T> = iter.by_ref().take(n_validation).collect();
    let test: Vec<T> = iter.collect();
    Ok(SplitAssignment {
        train,
        validation,
        test,
    })
}

/// Fisher-Yates driven by splitmix64. Hand-rolled so the assignment is
/// byte-stable across platforms and dependency upgrades.
fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut state = seed;
    for i in (1..items.len()).rev() {
        let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("q{i}")).collect()
    }

    #[test]
    fn ten_items_split_eight_one_one() {
        let split = split_queries(ids(10), &SplitFractions::default(), 7).unwrap();
        assert_eq!(split.train.len(), 8);
        assert_eq!(split.validation.len(), 1);
        assert_eq!(split.test.len(), 1);
    }

    #[test]
    fn rounding_remainder_goes_to_train() {
        // round(0.1 * 78631) = 7863 for both small splits
        let split = split_queries(ids(78_631), &SplitFractions::default(), 1).unwrap();
        assert_eq!(split.train.len(), 62_905);
        assert_eq!(split.validation.len(), 7_863);
        assert_eq!(split.test.len(), 7_863);
    }

    #[test]
    fn same_seed_gives_identical_assignment() {
        let a = split_queries(ids(100), &SplitFractions::default(), 42).unwrap();
        let b = split_queries(ids(100), &SplitFractions::default(), 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let a = split_queries(ids(100), &SplitFractions::default(), 1).unwrap();
        let b = split_queries(ids(100), &SplitFractions::default(), 2).unwrap();
        assert_ne!(a.train, b.train);
    }

    #[test]
    fn splits_are_disjoint_and_cover_everything() {
        let split = split_queries(ids(101), &SplitFractions::default(), 5).unwrap();
        let mut all: Vec<String> = split
            .train
            .iter()
            .chain(&split.validation)
            .chain(&split.test)
            .cloned()
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 101);
    }

    #[test]
    fn bad_fractions_are_a_fatal_config_error() {
        let bad = SplitFractions {
            train: 0.8,
            validation: 0.1,
            test: 0.0,
        };
        assert!(split_queries(ids(4), &bad, 0).is_err());
        let negative = SplitFractions {
            train: 1.2,
            validation: -0.1,
            test: -0.1,
        };
        assert!(split_queries(ids(4), &negative, 0).is_err());
    }

    #[test]
    fn degenerate_all_train_split_is_allowed() {
        let all_train = SplitFractions {
            train: 1.0,
            validation: 0.0,
            test: 0.0,
        };
        let split = split_queries(ids(5), &all_train, 0).unwrap();
        assert_eq!(split.train.len(), 5);
        assert!(split.validation.is_empty() && split.test.is_empty());
    }
}
