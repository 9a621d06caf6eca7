//! Work budgets for the exhaustive operations.
//!
//! Several operations are exact enumerations whose cost is known up front
//! (brute-force Gowers sums, exact error maxima, graph matrix powers). Each
//! estimates its work in abstract units before starting and refuses to run
//! past the budget instead of hanging.

use crate::{Error, Result};

/// Environment variable overriding [`Budget::default`].
pub const BUDGET_ENV: &str = "DIGITDIST_BUDGET";

/// Default work budget: 2×10⁷ units, sized so that the largest sanctioned
/// brute-force Gowers sum (4^12 terms) just fits.
pub const DEFAULT_WORK: u128 = 20_000_000;

/// An abstract work allowance, in "inner loop iterations".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    work: u128,
}

impl Default for Budget {
    /// Reads `DIGITDIST_BUDGET` if set, else [`DEFAULT_WORK`].
    fn default() -> Self {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => match v.trim().parse::<u128>() {
                Ok(work) => Budget { work },
                Err(_) => Budget { work: DEFAULT_WORK },
            },
            Err(_) => Budget { work: DEFAULT_WORK },
        }
    }
}

impl Budget {
    pub fn new(work: u128) -> Self {
        Budget { work }
    }

    pub fn work(&self) -> u128 {
        self.work
    }

    /// Errors out unless `needed` fits inside the allowance.
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.work {
            Err(Error::Budget {
                needed,
                budget: self.work,
            })
        } else {
            Ok(())
        }
    }

    /// `base^exp` with an overflow check against the budget, so callers can
    /// reject `q^Λ`-style blowups before multiplying further.
    pub fn checked_pow(&self, base: u64, exp: u32) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc
                .checked_mul(base as u128)
                .ok_or(Error::Budget {
                    needed: u128::MAX,
                    budget: self.work,
                })?;
            if acc > self.work {
                return Err(Error::Budget {
                    needed: acc,
                    budget: self.work,
                });
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_accepts_within_and_rejects_above() {
        let b = Budget::new(100);
        assert!(b.check(100).is_ok());
        assert!(matches!(b.check(101), Err(Error::Budget { .. })));
    }

    #[test]
    fn checked_pow_caps_early() {
        let b = Budget::new(1000);
        assert_eq!(b.checked_pow(10, 3).unwrap(), 1000);
        assert!(b.checked_pow(10, 4).is_err());
        assert!(b.checked_pow(u64::MAX, 3).is_err());
    }
}
