//! Closed-form bound evaluation in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constructions::TnValue;

pub(crate) fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `f(x) = x − 4x²/n² + 6x/n`, the bound on `e(G) − e(B)` as a function of
/// `x = e(G)`; decreasing for `x ≥ n²/8 + 3n/4`.
pub fn f_eval(x: &BigRational, n: u64) -> BigRational {
    let n = int(n);
    x - int(4) * x * x / (&n * &n) + int(6) * x / n
}

/// Left end `n²/8 + 3n/4` of the interval on which `f` decreases.
pub fn f_decreasing_from(n: u64) -> BigRational {
    let n = int(n);
    &n * &n / int(8) + int(3) * n / int(4)
}

/// `n²/25 − 2n/5`, the explicit lower estimate for `t(n)`.
pub fn quadratic_lower(n: u64) -> BigRational {
    let n = int(n);
    &n * &n / int(25) - int(2) * n / int(5)
}

/// `n²/25 + 3n/25 + δn`.
pub fn global_upper(n: u64, delta: &BigRational) -> BigRational {
    let nr = int(n);
    &nr * &nr / int(25) + int(3) * &nr / int(25) + delta * nr
}

/// `q² + q(6 + 8r/5 − 3·[r ∈ {3,4}] + δ)`, the linear-error upper bound with
/// its vanishing term replaced by `δ` and the non-positive `−Σs²/n` dropped.
pub fn linear_error_upper(n: u64, delta: &BigRational) -> BigRational {
    let tn = TnValue::of(n);
    let q = int(tn.q);
    let indicator = if tn.r >= 3 { int(3) } else { BigRational::zero() };
    &q * &q + &q * (int(6) + int(8 * tn.r) / int(5) - indicator + delta)
}

/// Same bound keeping the instance term: `… − Σ s_v² / n`.
pub fn linear_error_upper_with_deviation(n: u64, delta: &BigRational, sum_s_sq: &BigRational) -> BigRational {
    if n == 0 {
        return linear_error_upper(n, delta);
    }
    linear_error_upper(n, delta) - sum_s_sq / int(n)
}

/// `(6 + 8r/5 + δ) q n`, the cap on `Σ s_v²`.
pub fn deviation_upper(n: u64, delta: &BigRational) -> BigRational {
    let tn = TnValue::of(n);
    (int(6) + int(8 * tn.r) / int(5) + delta) * int(tn.q) * int(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u64,
    pub q: u64,
    pub r: u64,
    pub t: u64,
    pub quadratic_lower: BigRational,
    pub global_upper: BigRational,
    pub linear_error_upper: BigRational,
}

impl BoundsRow {
    pub fn lower_le_global(&self) -> bool {
        int(self.t) <= self.global_upper
    }

    pub fn lower_le_linear(&self) -> bool {
        int(self.t) <= self.linear_error_upper
    }

    pub fn quadratic_le_lower(&self) -> bool {
        self.quadratic_lower <= int(self.t)
    }
}

pub fn bounds_table(n_min: u64, n_max: u64, delta: &BigRational) -> Vec<BoundsRow> {
    (n_min..=n_max)
        .map(|n| {
            let tn = TnValue::of(n);
            BoundsRow {
                n,
                q: tn.q,
                r: tn.r,
                t: tn.t,
                quadratic_lower: quadratic_lower(n),
                global_upper: global_upper(n, delta),
                linear_error_upper: linear_error_upper(n, delta),
            }
        })
        .collect()
}

pub(crate) fn one() -> BigRational {
    BigRational::one()
}
