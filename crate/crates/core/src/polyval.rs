//! Complex values carried as log-modulus plus argument.
//!
//! Products of truncated exponentials and the crude majorants reach
//! magnitudes far outside double range; accumulating log |.| and arg
//! separately keeps them finite.

use num_complex::Complex64;

/// A complex value stored as (log |z|, arg z). `log_modulus = -inf`
/// represents exact zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyValue {
    pub log_modulus: f64,
    pub argument: f64,
}

impl PolyValue {
    pub const ONE: PolyValue = PolyValue { log_modulus: 0.0, argument: 0.0 };
    pub const ZERO: PolyValue = PolyValue { log_modulus: f64::NEG_INFINITY, argument: 0.0 };

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        PolyValue { log_modulus: z.norm().ln(), argument: z.arg() }
    }

    /// Nonnegative real value from its logarithm.
    pub fn from_log(log_modulus: f64) -> Self {
        PolyValue { log_modulus, argument: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    /// Reconstruct the complex value. Overflows to +-inf components when
    /// log_modulus > ~709; callers guard where that matters.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_modulus.exp(), self.argument)
    }

    pub fn mul(&self, other: &PolyValue) -> PolyValue {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        let mut arg = self.argument + other.argument;
        if arg > std::f64::consts::PI {
            arg -= 2.0 * std::f64::consts::PI;
        } else if arg <= -std::f64::consts::PI {
            arg += 2.0 * std::f64::consts::PI;
        }
        PolyValue { log_modulus: self.log_modulus + other.log_modulus, argument: arg }
    }

    /// |z|^e as a log-space value (argument discarded).
    pub fn abs_powf(&self, e: f64) -> PolyValue {
        if self.is_zero() {
            return Self::ZERO;
        }
        PolyValue::from_log(self.log_modulus * e)
    }
}
