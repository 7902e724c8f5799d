//! Search limits, loadable from a TOML file.
//!
//! ```toml
//! max_cliques = 100000
//! chi_max_n = 20
//! falsify_denominators = [1, 2]
//! ```
//!
//! Missing keys take their defaults; unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Maximal cliques enumerated before giving up.
    pub max_cliques: u64,
    /// Largest graph for exact chromatic and clique cover numbers.
    pub chi_max_n: usize,
    /// Largest graph for q-perfectness tables (3^n work).
    pub q_perfect_max_n: usize,
    /// Largest graph for odd hole and antihole search.
    pub perfect_max_n: usize,
    /// Largest graph for induced path parity enumeration.
    pub parity_max_n: usize,
    /// Largest graph for transitive orientation search.
    pub orientation_max_n: usize,
    /// Square submatrices examined by the TU test.
    pub tu_max_minors: u64,
    /// Largest row set handed to the signed row partition search.
    pub row_partition_max_rows: usize,
    /// Maximal cliques allowed for the direct ESP test (all subsets are tried).
    pub esp_max_cliques: usize,
    /// Memoized cover states across one ESP computation.
    pub esp_max_states: u64,
    /// Replication vectors tried by the perfect-graph ESP test.
    pub reform_max_points: u64,
    /// Residual states in the integral dual searches.
    pub dual_max_states: u64,
    /// Largest entry of `w` swept by the falsifier.
    pub falsify_max_w: i64,
    /// Denominators of the upper bounds `u` swept by the falsifier.
    pub falsify_denominators: Vec<i64>,
    /// `(u, w)` pairs evaluated by the falsifier.
    pub falsify_max_pairs: u64,
    /// Simple dicycles enumerated when validating a p-comparability input.
    pub max_dicycles: u64,
    /// Largest side for class Q enumeration.
    pub enumerate_q_max_side: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cliques: 100_000,
            chi_max_n: 20,
            q_perfect_max_n: 14,
            perfect_max_n: 16,
            parity_max_n: 12,
            orientation_max_n: 14,
            tu_max_minors: 50_000_000,
            row_partition_max_rows: 24,
            esp_max_cliques: 20,
            esp_max_states: 20_000_000,
            reform_max_points: 5_000_000,
            dual_max_states: 5_000_000,
            falsify_max_w: 2,
            falsify_denominators: vec![1, 2],
            falsify_max_pairs: 200_000_000,
            max_dicycles: crate::graph::DEFAULT_DICYCLE_BUDGET,
            enumerate_q_max_side: 5,
        }
    }
}

impl Budget {
    pub fn from_toml(text: &str) -> Result<Budget> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(1);
            Error::parse(line, e.message().to_string())
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("budget serializes")
    }

    pub(crate) fn require_n(&self, what: &str, n: usize, max: usize) -> Result<()> {
        if n > max {
            Err(Error::budget(format!("{what} on {n} vertices"), max as u64))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let b = Budget::from_toml("chi_max_n = 9\nfalsify_denominators = [1, 3]\n").unwrap();
        assert_eq!(b.chi_max_n, 9);
        assert_eq!(b.falsify_denominators, vec![1, 3]);
        assert_eq!(b.max_cliques, Budget::default().max_cliques);
    }

    #[test]
    fn unknown_keys_are_rejected_with_a_line() {
        let err = Budget::from_toml("chi_max_n = 9\nbogus = 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn round_trip() {
        let b = Budget::default();
        assert_eq!(Budget::from_toml(&b.to_toml()).unwrap(), b);
    }
}
