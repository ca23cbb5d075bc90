//! Reference counters for the partition families, independent of the series
//! engine.
//!
//! Two methods are provided. [`enum_count`] walks every tuple of partitions
//! explicitly and is the ground truth for small n. [`dp_count`] runs a
//! textbook dynamic program over part sizes, summing each size's geometric
//! factor by direct convolution; it shares no code with the polynomial
//! kernels it is used to check. [`cross_check`] compares the dynamic program
//! against the generating-function expansion.

use crate::qseries::{family_series, FamilySpec};
use crate::series::{CoeffRing, SeriesError};
use crate::wide::I256;

type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountMethod {
    Enumeration,
    DynamicProgram,
}

/// Counts produced by one oracle run: `values[n]` is the number of weighted
/// tuples of total size n.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub family: String,
    pub method: CountMethod,
    pub values: Vec<I256>,
}

const ENUM_LIMIT: usize = 25;

/// Counts by exhaustive enumeration for every n up to `n_max` (at most 25).
///
/// A single component is enumerated by recursion over part sizes in
/// decreasing order; a used size contributes a factor 2 when the family
/// allows overlining its first occurrence. Components are combined by
/// convolution of the single-component table.
pub fn enum_count(spec: FamilySpec, n_max: usize) -> Result<OracleResult> {
    if n_max > ENUM_LIMIT {
        return Err(SeriesError::Invalid(format!(
            "enumeration supports n_max <= {ENUM_LIMIT}, got {n_max}"
        )));
    }
    let weight: u128 = if spec.overlined() { 2 } else { 1 };
    let mut single = vec![0u128; n_max + 1];
    for (n, s) in single.iter_mut().enumerate() {
        *s = enum_partitions(n, n, spec.odd_parts_only(), weight);
    }
    let mut total = vec![0u128; n_max + 1];
    total[0] = 1;
    for _ in 0..spec.components() {
        let mut next = vec![0u128; n_max + 1];
        for (i, &a) in total.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in single.iter().enumerate().take(n_max + 1 - i) {
                next[i + j] += a * b;
            }
        }
        total = next;
    }
    Ok(OracleResult {
        family: spec.name(),
        method: CountMethod::Enumeration,
        values: total.into_iter().map(I256::from).collect(),
    })
}

/// Partitions of n with all parts <= max_part, where each used part size
/// multiplies the count by `weight` (2 when first occurrences may be
/// overlined, 1 otherwise).
fn enum_partitions(n: usize, max_part: usize, odd_only: bool, weight: u128) -> u128 {
    if n == 0 {
        return 1;
    }
    let mut count = 0;
    for s in (1..=max_part.min(n)).rev() {
        if odd_only && s % 2 == 0 {
            continue;
        }
        for mult in 1..=n / s {
            count += weight * enum_partitions(n - mult * s, s - 1, odd_only, weight);
        }
    }
    count
}

/// Counts by dynamic programming over part sizes for every n up to `n_max`.
///
/// For each component and each admissible size s the table is convolved with
/// the factor 1 + w q^s + w q^(2s) + ... (w = 2 for overlined families),
/// written out as the explicit sum rather than the closed form 1/(1 - q^s),
/// so the recurrence stays independent of the series division code.
pub fn dp_count(spec: FamilySpec, n_max: usize) -> Result<OracleResult> {
    let weight = I256::from(if spec.overlined() { 2u8 } else { 1 });
    let mut table = vec![I256::ZERO; n_max + 1];
    table[0] = I256::ONE;
    for _ in 0..spec.components() {
        for s in 1..=n_max {
            if spec.odd_parts_only() && s % 2 == 0 {
                continue;
            }
            let mut next = table.clone();
            for (i, &a) in table.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let contrib = a.checked_mul(weight).ok_or(SeriesError::Overflow)?;
                let mut j = i + s;
                while j <= n_max {
                    next[j] = next[j].checked_add(contrib).ok_or(SeriesError::Overflow)?;
                    j += s;
                }
            }
            table = next;
        }
    }
    Ok(OracleResult {
        family: spec.name(),
        method: CountMethod::DynamicProgram,
        values: table,
    })
}

/// Expands the family's generating function over the exact ring and compares
/// it with [`dp_count`] for n up to `n_max`. Returns the first index where
/// the two disagree, or None when they match everywhere.
pub fn cross_check(spec: FamilySpec, n_max: usize) -> Result<Option<usize>> {
    let dp = dp_count(spec, n_max)?;
    let series = family_series(spec, n_max + 1, CoeffRing::Exact)?;
    for (n, &v) in dp.values.iter().enumerate() {
        if series.coeff_exact(n) != Some(v) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(r: &OracleResult) -> Vec<i128> {
        r.values
            .iter()
            .map(|&v| crate::wide::to_i128_saturating(v))
            .collect()
    }

    #[test]
    fn plain_partition_anchor_values() {
        let e = enum_count(FamilySpec::P, 10).unwrap();
        assert_eq!(prefix(&e), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn overpartition_anchor_values() {
        let e = enum_count(FamilySpec::Pbar, 8).unwrap();
        assert_eq!(prefix(&e), vec![1, 2, 4, 8, 14, 24, 40, 64, 100]);
    }

    #[test]
    fn odd_overpartition_anchor_values() {
        let e = enum_count(FamilySpec::PbarO, 9).unwrap();
        assert_eq!(prefix(&e), vec![1, 2, 2, 4, 6, 8, 12, 16, 22, 30]);
    }

    #[test]
    fn triple_anchor_values() {
        let e = enum_count(FamilySpec::Opt, 5).unwrap();
        assert_eq!(prefix(&e), vec![1, 6, 18, 44, 102, 216]);
    }

    #[test]
    fn pair_anchor_values() {
        let e = enum_count(FamilySpec::OptK(2), 9).unwrap();
        assert_eq!(prefix(&e), vec![1, 4, 8, 16, 32, 56, 96, 160, 256, 404]);
    }

    #[test]
    fn quadruple_anchor_values() {
        let e = enum_count(FamilySpec::OptK(4), 5).unwrap();
        assert_eq!(prefix(&e), vec![1, 8, 32, 96, 256, 624]);
    }

    #[test]
    fn enumeration_agrees_with_dp() {
        for spec in [
            FamilySpec::P,
            FamilySpec::Pbar,
            FamilySpec::PbarK(2),
            FamilySpec::PbarO,
            FamilySpec::Opt,
            FamilySpec::OptK(1),
            FamilySpec::OptK(2),
            FamilySpec::OptK(3),
        ] {
            let e = enum_count(spec, 16).unwrap();
            let d = dp_count(spec, 16).unwrap();
            assert_eq!(e.values, d.values, "{}", spec.name());
        }
    }

    #[test]
    fn dp_agrees_with_generating_functions() {
        for spec in [
            FamilySpec::P,
            FamilySpec::Pbar,
            FamilySpec::PbarK(2),
            FamilySpec::PbarO,
            FamilySpec::Opt,
            FamilySpec::OptK(4),
            FamilySpec::OptK(5),
        ] {
            assert_eq!(cross_check(spec, 120).unwrap(), None, "{}", spec.name());
        }
    }

    #[test]
    fn enum_limit_enforced() {
        assert!(enum_count(FamilySpec::P, 26).is_err());
    }

    #[test]
    fn single_component_tuple_matches_base_family() {
        let one = dp_count(FamilySpec::OptK(1), 40).unwrap();
        let base = dp_count(FamilySpec::PbarO, 40).unwrap();
        assert_eq!(one.values, base.values);
    }
}
