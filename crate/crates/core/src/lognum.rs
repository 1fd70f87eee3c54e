//! Signed log-space numbers for bound expressions whose values overflow any
//! fixed-width type (the quantities here reach `d^(2^k)` and beyond).

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use std::cmp::Ordering;
use std::f64::consts::{LN_2, PI};

/// Sign of a [`LogNumber`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// A real number stored as sign plus natural log of its absolute value.
///
/// Multiplication adds log-magnitudes; addition uses log-sum-exp. The
/// magnitude field is `-inf` exactly when the sign is `Zero`.
#[derive(Clone, Copy, Debug)]
pub struct LogNumber {
    sign: Sign,
    ln_mag: f64,
}

impl LogNumber {
    pub fn zero() -> LogNumber {
        LogNumber {
            sign: Sign::Zero,
            ln_mag: f64::NEG_INFINITY,
        }
    }

    pub fn one() -> LogNumber {
        LogNumber {
            sign: Sign::Pos,
            ln_mag: 0.0,
        }
    }

    pub fn from_f64(x: f64) -> LogNumber {
        if x == 0.0 {
            LogNumber::zero()
        } else if x > 0.0 {
            LogNumber {
                sign: Sign::Pos,
                ln_mag: x.ln(),
            }
        } else {
            LogNumber {
                sign: Sign::Neg,
                ln_mag: (-x).ln(),
            }
        }
    }

    /// Positive number given directly as its natural log.
    pub fn pos_from_ln(ln_mag: f64) -> LogNumber {
        LogNumber {
            sign: Sign::Pos,
            ln_mag,
        }
    }

    pub fn from_sign_ln(sign: Sign, ln_mag: f64) -> LogNumber {
        match sign {
            Sign::Zero => LogNumber::zero(),
            _ => LogNumber { sign, ln_mag },
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Natural log of |value|; `-inf` for zero.
    pub fn ln_mag(&self) -> f64 {
        self.ln_mag
    }

    /// Base-10 log of |value|.
    pub fn log10_mag(&self) -> f64 {
        self.ln_mag / std::f64::consts::LN_10
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Neg
    }

    /// Converts back to f64; overflows to `+-inf` past the f64 range.
    pub fn to_f64(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            Sign::Pos => self.ln_mag.exp(),
            Sign::Neg => -self.ln_mag.exp(),
        }
    }

    pub fn neg(&self) -> LogNumber {
        let sign = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
        };
        LogNumber {
            sign,
            ln_mag: self.ln_mag,
        }
    }

    pub fn mul(&self, other: &LogNumber) -> LogNumber {
        if self.is_zero() || other.is_zero() {
            return LogNumber::zero();
        }
        let sign = if self.sign == other.sign {
            Sign::Pos
        } else {
            Sign::Neg
        };
        LogNumber {
            sign,
            ln_mag: self.ln_mag + other.ln_mag,
        }
    }

    pub fn add(&self, other: &LogNumber) -> LogNumber {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.ln_mag >= other.ln_mag {
            (self, other)
        } else {
            (other, self)
        };
        let delta = (lo.ln_mag - hi.ln_mag).exp();
        if self.sign == other.sign {
            LogNumber {
                sign: hi.sign,
                ln_mag: hi.ln_mag + delta.ln_1p(),
            }
        } else if delta == 1.0 {
            // Equal magnitudes, opposite signs.
            LogNumber::zero()
        } else {
            LogNumber {
                sign: hi.sign,
                ln_mag: hi.ln_mag + (-delta).ln_1p(),
            }
        }
    }

    pub fn sub(&self, other: &LogNumber) -> LogNumber {
        self.add(&other.neg())
    }

    /// `self^e` for nonnegative real exponents; requires a nonnegative base.
    pub fn powf(&self, e: f64) -> LogNumber {
        assert!(
            self.sign != Sign::Neg,
            "powf is defined for nonnegative log-numbers only"
        );
        if self.is_zero() {
            return if e == 0.0 {
                LogNumber::one()
            } else {
                LogNumber::zero()
            };
        }
        LogNumber {
            sign: Sign::Pos,
            ln_mag: self.ln_mag * e,
        }
    }

    pub fn cmp_value(&self, other: &LogNumber) -> Ordering {
        let rank = |s: Sign| match s {
            Sign::Neg => 0,
            Sign::Zero => 1,
            Sign::Pos => 2,
        };
        match rank(self.sign).cmp(&rank(other.sign)) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Ordering::Equal,
                Sign::Pos => self.ln_mag.partial_cmp(&other.ln_mag).unwrap(),
                Sign::Neg => other.ln_mag.partial_cmp(&self.ln_mag).unwrap(),
            },
            ord => ord,
        }
    }
}

impl PartialEq for LogNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for LogNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

/// Largest argument for which `ln n!` is summed exactly.
pub const EXACT_LN_FACTORIAL_LIMIT: u64 = 1 << 20;

/// `ln n!`: exact compensated summation up to `2^20`, Stirling series with
/// bounded error beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= EXACT_LN_FACTORIAL_LIMIT {
        // Kahan summation: individual ln terms are O(14), the sum is O(1e7),
        // so plain accumulation would shed low bits.
        let mut sum = 0.0f64;
        let mut c = 0.0f64;
        for i in 2..=n {
            let y = (i as f64).ln() - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        sum
    } else {
        stirling_ln_factorial(n as f64)
    }
}

/// Stirling series for `ln x!` with huge non-integer-width arguments (for
/// `(2^k - 1)!` with `k` beyond u64 range). Error is below the first omitted
/// term, which is negligible for `x >= 2^20`.
pub fn stirling_ln_factorial(x: f64) -> f64 {
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x * x2 * x2)
}

/// `ln((2^k - 1)!)` valid for all `k` up to f64 exponent range.
pub fn ln_factorial_pow2_minus_1(k: u32) -> f64 {
    if k <= 20 {
        ln_factorial((1u64 << k) - 1)
    } else if k <= 63 {
        stirling_ln_factorial(((1u64 << k) - 1) as f64)
    } else {
        stirling_ln_factorial(2.0f64.powi(k as i32))
    }
}

/// `ln C(n, r)` for `0 <= r <= n`.
pub fn ln_binomial(n: u64, r: u64) -> f64 {
    assert!(r <= n);
    if r == 0 || r == n {
        return 0.0;
    }
    ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r)
}

/// Natural log of a positive big integer, accurate to f64 precision even
/// when the integer itself overflows f64.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    assert!(bits > 0, "ln of zero");
    if bits <= 53 {
        return (n.to_u64().expect("fits") as f64).ln();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_u64().expect("53 bits fit") as f64;
    top.ln() + shift as f64 * LN_2
}
