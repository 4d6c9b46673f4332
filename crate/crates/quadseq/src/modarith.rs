//! Exact arbitrary-precision arithmetic modulo odd integers, primarily
//! `4^(2n) - 1` and its coprime factors `4^n - 1` and `4^n + 1`.
//!
//! All residues are kept in least non-negative form; signed intermediate
//! quantities are folded back by adding the modulus before reduction.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A value reduced modulo a fixed odd modulus `>= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    value: BigUint,
    modulus: BigUint,
}

impl Residue {
    pub fn new(value: BigUint, modulus: BigUint) -> Result<Self> {
        check_modulus(&modulus)?;
        Ok(Residue {
            value: value % &modulus,
            modulus,
        })
    }

    pub fn from_u64(value: u64, modulus: &BigUint) -> Result<Self> {
        Residue::new(BigUint::from(value), modulus.clone())
    }

    pub fn zero(modulus: &BigUint) -> Result<Self> {
        Residue::new(BigUint::zero(), modulus.clone())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, rhs: &Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        Residue {
            value: (&self.value + &rhs.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    /// `self - rhs`, wrapping negatives by adding the modulus first.
    pub fn sub(&self, rhs: &Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        Residue {
            value: (&self.value + &self.modulus - &rhs.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn mul(&self, rhs: &Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        Residue {
            value: (&self.value * &rhs.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn square(&self) -> Residue {
        self.mul(self)
    }

    pub fn sub_u64(&self, k: u64) -> Residue {
        self.sub(&Residue::from_u64(k, &self.modulus).expect("same modulus"))
    }

    /// Multiply by a possibly negative integer coefficient.
    pub fn scale(&self, c: i64) -> Residue {
        let mag = BigUint::from(c.unsigned_abs());
        let prod = (&self.value * mag) % &self.modulus;
        let value = if c < 0 && !prod.is_zero() {
            &self.modulus - prod
        } else {
            prod
        };
        Residue {
            value,
            modulus: self.modulus.clone(),
        }
    }

    /// Reduce into a smaller modulus that divides the current one.
    pub fn reduce_mod(&self, new_modulus: &BigUint) -> Result<Residue> {
        if !(&self.modulus % new_modulus).is_zero() {
            return Err(Error::ShapeError(format!(
                "{} does not divide residue modulus",
                new_modulus
            )));
        }
        Residue::new(self.value.clone(), new_modulus.clone())
    }
}

fn check_modulus(modulus: &BigUint) -> Result<()> {
    if *modulus < BigUint::from(3u32) {
        return Err(Error::InvalidModulus(format!("{modulus} < 3")));
    }
    if modulus.is_even() {
        return Err(Error::InvalidModulus(format!("{modulus} is even")));
    }
    Ok(())
}

/// `4^e - 1` as an exact integer.
pub fn four_pow_minus_one(e: u64) -> BigUint {
    (BigUint::one() << (2 * e)) - BigUint::one()
}

/// `4^e + 1` as an exact integer.
pub fn four_pow_plus_one(e: u64) -> BigUint {
    (BigUint::one() << (2 * e)) + BigUint::one()
}

/// `4^exponent mod modulus`.
pub fn pow4_mod(exponent: u64, modulus: &BigUint) -> Result<Residue> {
    check_modulus(modulus)?;
    let value = BigUint::from(4u32).modpow(&BigUint::from(exponent), modulus);
    Residue::new(value, modulus.clone())
}

/// Geometric sum `sum_{j=0}^{count-1} 4^(step*j) mod modulus`.
pub fn geom_sum4(step: u64, count: u64, modulus: &BigUint) -> Result<Residue> {
    assert!(step >= 1 && count >= 1, "step and count must be positive");
    check_modulus(modulus)?;
    let ratio = pow4_mod(step, modulus)?;
    let mut acc = BigUint::zero();
    let mut term = BigUint::one();
    for _ in 0..count {
        acc = (acc + &term) % modulus;
        term = (term * ratio.value()) % modulus;
    }
    Residue::new(acc, modulus.clone())
}

/// Non-negative gcd of exact integers; gcd(0, 0) is rejected.
pub fn gcd_big(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    Ok(a.gcd(b))
}

/// If the modulus has the shape `4^(2n) - 1`, return `n`.
pub fn half_exponent_of(modulus: &BigUint) -> Option<u64> {
    let m1 = modulus + BigUint::one();
    // 4^(2n) = 2^(4n): a single set bit at a position divisible by 4
    if m1.count_ones() != 1 {
        return None;
    }
    let bit = m1.trailing_zeros()?;
    if bit == 0 || bit % 4 != 0 {
        return None;
    }
    Some(bit / 4)
}

/// Split a residue mod `4^(2n) - 1` into its reductions modulo the coprime
/// factors `4^n - 1` and `4^n + 1`.
pub fn crt_split(v: &Residue) -> Result<(Residue, Residue)> {
    let n = half_exponent_of(v.modulus()).ok_or_else(|| {
        Error::ShapeError("modulus is not of the form 4^(2n) - 1".to_string())
    })?;
    let lo = v.reduce_mod(&four_pow_minus_one(n))?;
    let hi = v.reduce_mod(&four_pow_plus_one(n))?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(u: u64) -> BigUint {
        BigUint::from(u)
    }

    #[test]
    fn pow4_identity_exponent() {
        let r = pow4_mod(0, &big(15)).unwrap();
        assert_eq!(r.value(), &big(1));
    }

    #[test]
    fn pow4_order_divides_double_exponent() {
        let m = four_pow_minus_one(30);
        let r = pow4_mod(30, &m).unwrap();
        assert_eq!(r.value(), &big(1));
    }

    #[test]
    fn pow4_mid_exponent() {
        let m = four_pow_minus_one(30);
        let r = pow4_mod(10, &m).unwrap();
        assert_eq!(r.value(), &big(1048576));
    }

    #[test]
    fn pow4_rejects_small_modulus() {
        assert!(matches!(pow4_mod(3, &big(2)), Err(Error::InvalidModulus(_))));
        assert!(matches!(pow4_mod(3, &big(1)), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn geom_sum_matches_direct_summation() {
        let m = four_pow_minus_one(30);
        let r = geom_sum4(10, 3, &m).unwrap();
        assert_eq!(r.value(), &big(1_099_512_676_353));
        // equals (4^30 - 1) / (4^10 - 1)
        assert_eq!(r.value(), &(four_pow_minus_one(30) / four_pow_minus_one(10)));
    }

    #[test]
    fn geom_sum_is_fifteenth_of_modulus() {
        let n = 13u64;
        let m = four_pow_minus_one(2 * n);
        let r = geom_sum4(2, n, &m).unwrap();
        assert_eq!(r.value(), &(four_pow_minus_one(2 * n) / big(15)));
    }

    #[test]
    fn geom_sum_single_term() {
        let r = geom_sum4(7, 1, &big(1_000_003)).unwrap();
        assert_eq!(r.value(), &big(1));
    }

    #[test]
    fn gcd_of_adjacent_factors_is_one() {
        let g = gcd_big(&four_pow_minus_one(15), &four_pow_plus_one(15)).unwrap();
        assert_eq!(g, big(1));
    }

    #[test]
    fn gcd_with_zero() {
        assert_eq!(gcd_big(&big(0), &big(7)).unwrap(), big(7));
        assert!(matches!(gcd_big(&big(0), &big(0)), Err(Error::UndefinedGcd)));
    }

    #[test]
    fn crt_split_of_four_pow_n() {
        let n = 6u64;
        let m = four_pow_minus_one(2 * n);
        let v = pow4_mod(n, &m).unwrap();
        let (lo, hi) = crt_split(&v).unwrap();
        assert_eq!(lo.value(), &big(1));
        // -1 in canonical form
        assert_eq!(hi.value(), &(four_pow_plus_one(n) - big(1)));
    }

    #[test]
    fn crt_split_of_zero() {
        let m = four_pow_minus_one(10);
        let v = Residue::zero(&m).unwrap();
        let (lo, hi) = crt_split(&v).unwrap();
        assert!(lo.is_zero() && hi.is_zero());
    }

    #[test]
    fn crt_split_rejects_other_moduli() {
        let v = Residue::from_u64(5, &big(1023)).unwrap();
        assert!(matches!(crt_split(&v), Err(Error::ShapeError(_))));
    }

    #[test]
    fn scale_folds_negative_coefficients() {
        let m = big(101);
        let r = Residue::from_u64(7, &m).unwrap();
        assert_eq!(r.scale(-3).value(), &big(101 - 21));
        assert_eq!(r.scale(3).value(), &big(21));
        assert_eq!(r.scale(0).value(), &big(0));
    }

    #[test]
    fn residue_rejects_even_modulus() {
        assert!(Residue::from_u64(1, &big(16)).is_err());
    }

    // Independent oracle: repeated multiplication, no squaring ladder.
    fn pow4_oracle(e: u64, m: &BigUint) -> BigUint {
        let mut acc = BigUint::one() % m;
        for _ in 0..e {
            acc = (acc * 4u32) % m;
        }
        acc
    }

    proptest! {
        #[test]
        fn pow4_agrees_with_repeated_multiplication(e in 0u64..4096, m in 3u64..100_000) {
            let m = big(m | 1).max(big(3));
            let got = pow4_mod(e, &m).unwrap();
            prop_assert_eq!(got.value(), &pow4_oracle(e, &m));
        }

        #[test]
        fn geom_sum_times_ratio_minus_one(step in 1u64..40, count in 1u64..40, n in 2u64..40) {
            // sum * (4^step - 1) == 4^(step*count) - 1 (mod M)
            let m = four_pow_minus_one(n);
            let s = geom_sum4(step, count, &m).unwrap();
            let lhs = s.mul(&pow4_mod(step, &m).unwrap().sub_u64(1));
            let rhs = pow4_mod(step * count, &m).unwrap().sub_u64(1);
            prop_assert_eq!(lhs.value(), rhs.value());
        }

        #[test]
        fn crt_gcd_product_rule(n in 1u64..20, v in any::<u64>()) {
            let m = four_pow_minus_one(2 * n);
            let r = Residue::new(big(v) % &m, m.clone()).unwrap();
            let (lo, hi) = crt_split(&r).unwrap();
            let whole = gcd_big(r.value(), &m).unwrap();
            let part = gcd_big(lo.value(), &four_pow_minus_one(n)).unwrap()
                * gcd_big(hi.value(), &four_pow_plus_one(n)).unwrap();
            prop_assert_eq!(whole, part);
        }
    }
}
