use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact number of members of a family.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyCount(BigUint);

impl FamilyCount {
    pub fn zero() -> Self {
        Self(BigUint::zero())
    }

    pub fn one() -> Self {
        Self(BigUint::one())
    }

    pub fn pow2(exp: usize) -> Self {
        Self(BigUint::one() << exp)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Scientific notation rounded half-up to `digits` significant digits,
    /// e.g. `5.33e8`.
    pub fn to_scientific(&self, digits: usize) -> String {
        let (mantissa, exp) = self.significant(digits);
        if digits <= 1 {
            return format!("{mantissa}e{exp}");
        }
        format!("{}.{}e{}", &mantissa[..1], &mantissa[1..], exp)
    }

    /// The count rounded half-up to `digits` significant digits, returned as
    /// the digit string and the decimal exponent of its leading digit.
    pub fn significant(&self, digits: usize) -> (String, usize) {
        assert!(digits >= 1);
        let dec = self.0.to_str_radix(10);
        let exp = dec.len() - 1;
        if dec.len() <= digits {
            let mut m = dec;
            while m.len() < digits {
                m.push('0');
            }
            return (m, exp);
        }
        let head: BigUint = dec[..digits].parse().expect("decimal digits");
        let round_up = dec.as_bytes()[digits] >= b'5';
        let head = if round_up { head + 1u32 } else { head };
        let s = head.to_str_radix(10);
        if s.len() > digits {
            // carried into a new leading digit, e.g. 9.995 -> 1.00
            (s[..digits].to_string(), exp + 1)
        } else {
            (s, exp)
        }
    }
}

impl From<u64> for FamilyCount {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<BigUint> for FamilyCount {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

impl Add<&FamilyCount> for &FamilyCount {
    type Output = FamilyCount;

    fn add(self, rhs: &FamilyCount) -> FamilyCount {
        FamilyCount(&self.0 + &rhs.0)
    }
}

impl AddAssign<&FamilyCount> for FamilyCount {
    fn add_assign(&mut self, rhs: &FamilyCount) {
        self.0 += &rhs.0;
    }
}

impl fmt::Display for FamilyCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific() {
        assert_eq!(FamilyCount::from(532_912_345).to_scientific(3), "5.33e8");
        assert_eq!(FamilyCount::from(532_499_999).to_scientific(3), "5.32e8");
        assert_eq!(FamilyCount::from(999_600).to_scientific(3), "1.00e6");
        assert_eq!(FamilyCount::from(7).to_scientific(3), "7.00e0");
        assert_eq!(FamilyCount::from(1023).to_scientific(3), "1.02e3");
        assert_eq!(FamilyCount::zero().to_scientific(3), "0.00e0");
    }

    #[test]
    fn big_values() {
        let c = FamilyCount::pow2(4490);
        assert_eq!(c.to_u64(), None);
        // 2^4490 = 1.68...e1351
        assert!(c.to_scientific(3).ends_with("e1351"));
    }
}
