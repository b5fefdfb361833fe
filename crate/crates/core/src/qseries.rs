//! Truncated power series with exact integer coefficients.
//!
//! Products of `1/(1 - q^k)` give fast partition counts for classes defined
//! by allowed part sizes, independently of enumeration.

use crate::classes::FamilyIndex;
use crate::error::{checked_add, Count, Error, Result};

/// Coefficients of `q^0 .. q^(order-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coefficients: Vec<Count>,
}

impl PowerSeries {
    pub fn from_coefficients(coefficients: Vec<Count>) -> Self {
        Self { coefficients }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut coefficients = vec![0; order];
        if let Some(c) = coefficients.first_mut() {
            *c = 1;
        }
        Self { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficient of `q^k`, `None` at or past the truncation order.
    pub fn coefficient(&self, k: usize) -> Option<Count> {
        self.coefficients.get(k).copied()
    }

    pub fn coefficients(&self) -> &[Count] {
        &self.coefficients
    }
}

/// `1 + q^k + q^{2k} + ...` truncated at `order`.
pub fn geometric_factor(part_size: usize, order: usize) -> PowerSeries {
    assert!(part_size >= 1, "part size must be positive");
    let mut coefficients = vec![0; order];
    for c in coefficients.iter_mut().step_by(part_size) {
        *c = 1;
    }
    PowerSeries { coefficients }
}

/// Truncated Cauchy product.
pub fn multiply(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let order = a.order();
    let mut out = vec![0; order];
    for (j, &x) in a.coefficients.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (k, &y) in b.coefficients[..order - j].iter().enumerate() {
            let term = x.checked_mul(y).ok_or(Error::Overflow("series product"))?;
            out[j + k] = checked_add(out[j + k], term, "series product")?;
        }
    }
    Ok(PowerSeries { coefficients: out })
}

/// Product of geometric factors over every part size `1..order` accepted by `allow`.
pub fn product_over_parts<F>(order: usize, allow: F) -> Result<PowerSeries>
where
    F: Fn(usize) -> bool,
{
    (1..order.max(1))
        .filter(|&k| allow(k))
        .try_fold(PowerSeries::one(order), |acc, k| {
            multiply(&acc, &geometric_factor(k, order))
        })
}

/// Generating function of partitions into parts `≡ 1,4,7 (mod 8)` (`i = 1`)
/// or `≡ 3,4,5 (mod 8)` (`i = 2`).
pub fn gprime_series(i: FamilyIndex, order: usize) -> Result<PowerSeries> {
    let residues: [usize; 3] = match i {
        FamilyIndex::One => [1, 4, 7],
        FamilyIndex::Two => [3, 4, 5],
    };
    product_over_parts(order, |k| residues.contains(&(k % 8)))
}

/// Euler's product over all part sizes: coefficients are p(n).
pub fn euler_product(order: usize) -> Result<PowerSeries> {
    product_over_parts(order, |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_factor(1, 4).coefficients(), &[1, 1, 1, 1]);
        assert_eq!(geometric_factor(3, 7).coefficients(), &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(geometric_factor(8, 5).coefficients(), &[1, 0, 0, 0, 0]);
        assert_eq!(geometric_factor(2, 0).order(), 0);
    }

    #[test]
    fn multiply_examples() {
        let a = PowerSeries::from_coefficients(vec![1, 1, 0]);
        assert_eq!(multiply(&a, &a).unwrap().coefficients(), &[1, 2, 1]);
        assert_eq!(multiply(&a, &PowerSeries::one(3)).unwrap(), a);
        assert_eq!(
            multiply(&a, &PowerSeries::one(4)),
            Err(Error::OrderMismatch(3, 4))
        );
    }

    #[test]
    fn multiply_reports_overflow() {
        let big = PowerSeries::from_coefficients(vec![u64::MAX, 1]);
        let two = PowerSeries::from_coefficients(vec![2, 0]);
        assert!(matches!(multiply(&big, &two), Err(Error::Overflow(_))));
    }

    #[test]
    fn nine_factors_give_p9() {
        let prod = (1..=9).try_fold(PowerSeries::one(10), |acc, k| {
            multiply(&acc, &geometric_factor(k, 10))
        });
        assert_eq!(prod.unwrap().coefficient(9), Some(30));
    }

    #[test]
    fn gprime_examples() {
        let g1 = gprime_series(FamilyIndex::One, 10).unwrap();
        let g2 = gprime_series(FamilyIndex::Two, 10).unwrap();
        assert_eq!(g1.coefficient(9), Some(5));
        assert_eq!(g2.coefficient(9), Some(2));
        assert_eq!(g1.coefficient(0), Some(1));
        assert_eq!(g1.coefficient(10), None);
        assert_eq!(gprime_series(FamilyIndex::One, 1).unwrap().coefficients(), &[1]);
    }

    fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
        proptest::collection::vec(0u64..1000, order).prop_map(PowerSeries::from_coefficients)
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_associates(
            a in series(12), b in series(12), c in series(12)
        ) {
            let ab = multiply(&a, &b).unwrap();
            prop_assert_eq!(&ab, &multiply(&b, &a).unwrap());
            prop_assert_eq!(
                multiply(&ab, &c).unwrap(),
                multiply(&a, &multiply(&b, &c).unwrap()).unwrap()
            );
        }

        #[test]
        fn identity_is_neutral(a in series(9)) {
            prop_assert_eq!(multiply(&a, &PowerSeries::one(9)).unwrap(), a);
        }
    }
}
