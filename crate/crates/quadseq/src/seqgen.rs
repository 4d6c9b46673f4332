//! Binary base sequences: twin-prime pairs, GMW pairs, and the cyclotomic
//! sequences of order four, together with the cyclotomic structure
//! (generator, classes, class numbers) underlying them.
//!
//! Parameters are desk-scale, so primality checking is plain trial division
//! and finite-field arithmetic runs on `u64` bit masks.

use std::fmt;
use std::str::FromStr;

use crate::correlate::{check_pair_tables, PairTableSpec};
use crate::error::{Error, Result};

/// A fixed-period sequence over {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence {
    bits: Vec<u8>,
}

impl BinarySequence {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::ShapeError("empty binary sequence".to_string()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::ShapeError("entries must be 0 or 1".to_string()));
        }
        Ok(BinarySequence { bits })
    }

    pub fn zeros(period: usize) -> Result<Self> {
        BinarySequence::new(vec![0; period])
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i % self.bits.len()]
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    /// Parses a line of '0'/'1' digits; a trailing newline is tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let line = s.trim_end_matches(['\n', '\r']);
        if line.is_empty() {
            return Err(Error::Parse("empty binary sequence line".to_string()));
        }
        let bits = line
            .bytes()
            .map(|c| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                other => Err(Error::Parse(format!(
                    "unexpected byte {other:#x} in binary sequence"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BinarySequence::new(bits)
    }
}

/// Deterministic trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol (a | p) for an odd prime p, as +1, -1, or 0.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = (p - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut result = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Smallest primitive root of an odd prime.
pub fn smallest_primitive_root(n: u64) -> u64 {
    let factors = prime_factors(n - 1);
    (2..n)
        .find(|&g| factors.iter().all(|&q| pow_mod_u64(g, (n - 1) / q, n) != 1))
        .expect("a prime has a primitive root")
}

/// Twin-prime sequence pair of period `p(p+2)`.
///
/// The base sequence is 0 at index 0 and on multiples of `p+2`, 1 on the
/// other multiples of `p`, and on units it is 1 exactly where the product
/// of Legendre symbols mod `p` and mod `p+2` is -1. The modified sequence
/// complements the base at every multiple of `p+2`.
pub fn twin_prime_pair(p: u64) -> Result<(BinarySequence, BinarySequence)> {
    if p < 3 || !is_prime(p) || !is_prime(p + 2) {
        return Err(Error::InvalidFamily(format!(
            "{p} and {} must both be prime (p >= 3)",
            p + 2
        )));
    }
    let q = p + 2;
    let n = p * q;
    let mut bits = Vec::with_capacity(n as usize);
    for i in 0..n {
        let b = if i == 0 {
            0
        } else if i % q == 0 {
            0
        } else if i % p == 0 {
            1
        } else if legendre(i, p) * legendre(i, q) == -1 {
            1
        } else {
            0
        };
        bits.push(b);
    }
    let t0 = BinarySequence::new(bits)?;
    let t1 = modify_flip(&t0, q as usize);
    Ok((t0, t1))
}

/// Complement the bit at every index divisible by `m` (including 0).
pub fn modify_flip(seq: &BinarySequence, m: usize) -> BinarySequence {
    assert!(m >= 1 && m < seq.period(), "flip step out of range");
    let mut bits = seq.bits().to_vec();
    let mut i = 0;
    while i < bits.len() {
        bits[i] ^= 1;
        i += m;
    }
    BinarySequence::new(bits).expect("flipping preserves shape")
}

// ---------------------------------------------------------------------------
// GMW pairs over GF(2^(2k))
// ---------------------------------------------------------------------------

/// Field configuration for a GMW pair: a primitive polynomial over GF(2) of
/// degree `2k` (bit mask, bit `i` = coefficient of x^i) and a decimation
/// exponent `r` coprime to `2^k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GmwConfig {
    pub poly: u64,
    pub r: u64,
}

// Primitive polynomials of degree 2k for the supported k.
const GMW_POLYS: [(u32, u64); 4] = [
    (2, 0b1_0011),          // x^4 + x + 1
    (3, 0b100_0011),        // x^6 + x + 1
    (4, 0b1_0001_1101),     // x^8 + x^4 + x^3 + x^2 + 1
    (5, 0b100_0000_1001),   // x^10 + x^3 + 1
];

impl GmwConfig {
    /// Built-in configuration for `k`: the tabled polynomial and the
    /// smallest valid decimation, r = 1.
    pub fn default_for(k: u32) -> Result<Self> {
        let poly = GMW_POLYS
            .iter()
            .find(|&&(kk, _)| kk == k)
            .map(|&(_, p)| p)
            .ok_or_else(|| Error::InvalidFamily(format!("no built-in field for k = {k}")))?;
        Ok(GmwConfig { poly, r: 1 })
    }
}

fn gf_mul(mut a: u64, mut b: u64, poly: u64, deg: u32) -> u64 {
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> deg) & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

fn gf_pow(mut a: u64, mut e: u64, poly: u64, deg: u32) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf_mul(acc, a, poly, deg);
        }
        a = gf_mul(a, a, poly, deg);
        e >>= 1;
    }
    acc
}

fn poly_degree(poly: u64) -> u32 {
    63 - poly.leading_zeros()
}

/// A degree-d polynomial is primitive iff x has multiplicative order 2^d - 1.
fn is_primitive_poly(poly: u64, deg: u32) -> bool {
    if poly_degree(poly) != deg || poly & 1 == 0 {
        return false;
    }
    let order = (1u64 << deg) - 1;
    let mut a = 2u64;
    for _ in 1..order {
        if a == 1 {
            return false;
        }
        a = gf_mul(a, 2, poly, deg);
    }
    a == 1
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// GMW sequence pair of period `2^(2k) - 1`.
///
/// The base sequence is `t(i) = Tr_{k->1}[(Tr_{2k->k}(alpha^i))^r]` for the
/// field generator `alpha = x`; the modified sequence complements the base
/// at every multiple of `2^k + 1`. The pair is gated on its full
/// auto/cross-correlation table before being returned.
pub fn gmw_pair(k: u32, config: &GmwConfig) -> Result<(BinarySequence, BinarySequence)> {
    if !(2..=5).contains(&k) {
        return Err(Error::InvalidFamily(format!("k = {k} outside supported range 2..=5")));
    }
    let deg = 2 * k;
    if !is_primitive_poly(config.poly, deg) {
        return Err(Error::InvalidField(format!(
            "{:#b} is not a primitive polynomial of degree {deg}",
            config.poly
        )));
    }
    let subfield_order = (1u64 << k) - 1;
    if config.r == 0 || gcd_u64(config.r, subfield_order) != 1 {
        return Err(Error::InvalidField(format!(
            "decimation {} shares a factor with 2^{k} - 1",
            config.r
        )));
    }

    let n = (1u64 << deg) - 1;
    let mut bits = Vec::with_capacity(n as usize);
    let mut alpha_i = 1u64;
    for _ in 0..n {
        // Tr_{2k->k}(x) = x + x^(2^k), fixed by the subfield Frobenius
        let tr_inner = alpha_i ^ gf_pow(alpha_i, 1 << k, config.poly, deg);
        let y = gf_pow(tr_inner, config.r, config.poly, deg);
        // Tr_{k->1}(y) = y + y^2 + ... + y^(2^(k-1)) lands in {0, 1}
        let mut t = 0u64;
        let mut z = y;
        for _ in 0..k {
            t ^= z;
            z = gf_mul(z, z, config.poly, deg);
        }
        debug_assert!(t <= 1);
        bits.push(t as u8);
        alpha_i = gf_mul(alpha_i, 2, config.poly, deg);
    }
    let t0 = BinarySequence::new(bits)?;
    let m = (1u64 << k) + 1;
    let t1 = modify_flip(&t0, m as usize);

    let table = PairTableSpec {
        exceptional_step: m as usize,
        cross_in_phase: ((1i64 << (2 * k)) - (1i64 << (k + 1)) + 1),
        cross_exceptional: -(1i64 << (k + 1)) + 1,
    };
    if let Some(violation) = check_pair_tables(&t0, &t1, &table) {
        return Err(Error::ConstructionRejected(violation));
    }
    Ok((t0, t1))
}

// ---------------------------------------------------------------------------
// Cyclotomy of order four
// ---------------------------------------------------------------------------

/// Cyclotomic classes of order four in F_n for a prime `n = 4f + 1 = x^2 + 4`
/// with `f` odd, labelled so that the class numbers take the closed form
/// with `x = 1 (mod 4)` and `y = -1`.
#[derive(Debug, Clone)]
pub struct CyclotomicStructure {
    n: u64,
    f: u64,
    x: i64,
    theta: u64,
    classes: [Vec<u64>; 4],
    class_of: Vec<u8>, // index -> class id; NO_CLASS for 0
}

const NO_CLASS: u8 = u8::MAX;

impl CyclotomicStructure {
    /// Build the classes for an explicit generator without adjusting the
    /// labelling. The class-number convention is then the caller's problem.
    pub fn with_generator(n: u64, theta: u64) -> Result<Self> {
        let f = check_cyclotomic_hypothesis(n)?;
        let factors = prime_factors(n - 1);
        if theta == 0
            || theta >= n
            || !factors.iter().all(|&q| pow_mod_u64(theta, (n - 1) / q, n) != 1)
        {
            return Err(Error::InvalidFamily(format!(
                "{theta} is not a primitive root of {n}"
            )));
        }
        let x0 = (n as f64 - 4.0).sqrt().round() as i64;
        debug_assert_eq!((x0 * x0) as u64, n - 4);
        let x = if x0 % 4 == 1 { x0 } else { -x0 };

        let mut classes: [Vec<u64>; 4] = Default::default();
        let mut class_of = vec![NO_CLASS; n as usize];
        let theta4 = pow_mod_u64(theta, 4, n);
        for gamma in 0..4u8 {
            let start = pow_mod_u64(theta, gamma as u64, n);
            let mut v = start;
            for _ in 0..f {
                classes[gamma as usize].push(v);
                class_of[v as usize] = gamma;
                v = (v as u128 * theta4 as u128 % n as u128) as u64;
            }
            classes[gamma as usize].sort_unstable();
        }
        Ok(CyclotomicStructure {
            n,
            f,
            x,
            theta,
            classes,
            class_of,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    /// The root of `n = x^2 + 4` with `x = 1 (mod 4)`.
    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn class(&self, gamma: u8) -> &[u64] {
        &self.classes[gamma as usize]
    }

    pub fn class_of(&self, i: u64) -> Option<u8> {
        let c = self.class_of[(i % self.n) as usize];
        (c != NO_CLASS).then_some(c)
    }

    /// Closed-form class-number coefficients (A, B, C, Bbar, D) for y = -1,
    /// each 16 times the corresponding class number.
    pub fn coefficients(&self) -> (i64, i64, i64, i64, i64) {
        let n = self.n as i64;
        let x = self.x;
        let a = n - 7 + 2 * x;
        let b = n + 9 + 2 * x; // n + 1 + 2x - 8y at y = -1
        let c = n + 1 - 6 * x;
        let bbar = n - 7 + 2 * x; // n + 1 + 2x + 8y at y = -1
        let d = n - 3 - 2 * x;
        (a, b, c, bbar, d)
    }

    /// Closed-form class-number matrix entry, sixteen-fold.
    pub fn closed_form_16(&self, i: u8, j: u8) -> i64 {
        let (a, b, c, bbar, d) = self.coefficients();
        match (i % 4, j % 4) {
            (0, 0) | (2, 0) | (2, 2) => a,
            (0, 1) | (1, 3) | (3, 2) => b,
            (0, 3) | (1, 2) | (3, 1) => bbar,
            (0, 2) => c,
            _ => d,
        }
    }
}

fn check_cyclotomic_hypothesis(n: u64) -> Result<u64> {
    if !is_prime(n) || n % 4 != 1 {
        return Err(Error::InvalidFamily(format!("{n} is not a prime = 1 (mod 4)")));
    }
    let f = (n - 1) / 4;
    if f % 2 != 1 {
        return Err(Error::InvalidFamily(format!("f = {f} must be odd")));
    }
    let x0 = ((n - 4) as f64).sqrt().round() as u64;
    if x0 * x0 != n - 4 {
        return Err(Error::InvalidFamily(format!("{n} - 4 is not a perfect square")));
    }
    Ok(f)
}

/// Build the order-four cyclotomic structure with the labelling fixed so the
/// counted class numbers equal the closed forms with `y = -1`. Primitive
/// roots are scanned in increasing order; a root lying in the mirrored class
/// swaps classes 1 and 3, so the first root whose labelling matches is kept.
pub fn cyclotomic_structure(n: u64) -> Result<CyclotomicStructure> {
    check_cyclotomic_hypothesis(n)?;
    let factors = prime_factors(n - 1);
    for theta in 2..n {
        if !factors.iter().all(|&q| pow_mod_u64(theta, (n - 1) / q, n) != 1) {
            continue;
        }
        let st = CyclotomicStructure::with_generator(n, theta)?;
        if count_cyclotomic(&st, 0, 1) as i64 * 16 != st.closed_form_16(0, 1) {
            continue; // mirrored labelling, try the next primitive root
        }
        // cross-check the whole matrix against the closed forms
        for i in 0..4u8 {
            for j in 0..4u8 {
                if count_cyclotomic(&st, i, j) as i64 * 16 != st.closed_form_16(i, j) {
                    return Err(Error::InvalidFamily(format!(
                        "class numbers of {n} do not match their closed form"
                    )));
                }
            }
        }
        return Ok(st);
    }
    Err(Error::InvalidFamily(format!(
        "no generator of {n} yields the expected class labelling"
    )))
}

fn count_cyclotomic(st: &CyclotomicStructure, i: u8, j: u8) -> u64 {
    st.class(i)
        .iter()
        .filter(|&&a| st.class_of((a + 1) % st.n()) == Some(j))
        .count() as u64
}

/// Class-number matrix `(i, j) = |(D_i + 1) n D_j|` by direct counting.
pub fn cyclotomic_numbers(st: &CyclotomicStructure) -> [[u64; 4]; 4] {
    let mut m = [[0u64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = count_cyclotomic(st, i as u8, j as u8);
        }
    }
    m
}

/// Support-class pairs for the six cyclotomic sequences, indexed 1..=6.
pub const CYCLO_SUPPORT: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The sequence t_index of period n: 1 on the union of its two support
/// classes, 0 elsewhere (position 0 included).
pub fn cyclo_sequence(st: &CyclotomicStructure, index: u8) -> Result<BinarySequence> {
    if !(1..=6).contains(&index) {
        return Err(Error::InvalidIndex(format!("sequence index {index} outside 1..=6")));
    }
    let (c1, c2) = CYCLO_SUPPORT[(index - 1) as usize];
    let bits = (0..st.n())
        .map(|i| match st.class_of(i) {
            Some(g) if g == c1 || g == c2 => 1,
            _ => 0,
        })
        .collect();
    BinarySequence::new(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlate::binary_autocorr_profile;

    #[test]
    fn twin_prime_three_matches_known_bits() {
        let (t0, t1) = twin_prime_pair(3).unwrap();
        assert_eq!(t0.to_string(), "000100110101111");
        assert_eq!(t1.to_string(), "100101110111111");
    }

    #[test]
    fn twin_prime_rejects_non_twin() {
        assert!(matches!(twin_prime_pair(7), Err(Error::InvalidFamily(_))));
        assert!(matches!(twin_prime_pair(4), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn twin_prime_five_has_ideal_autocorrelation() {
        let (t0, _) = twin_prime_pair(5).unwrap();
        let profile = binary_autocorr_profile(&t0);
        assert_eq!(profile[0], 35);
        assert!(profile[1..].iter().all(|&v| v == -1));
    }

    #[test]
    fn modify_flip_examples() {
        let z = BinarySequence::zeros(15).unwrap();
        assert_eq!(modify_flip(&z, 5).to_string(), "100001000010000");
        let (t0, _) = twin_prime_pair(3).unwrap();
        let once = modify_flip(&t0, 5);
        assert_eq!(modify_flip(&once, 5), t0);
    }

    #[test]
    fn gmw_k3_default_matches_known_bits() {
        let cfg = GmwConfig::default_for(3).unwrap();
        let (t0, t1) = gmw_pair(3, &cfg).unwrap();
        assert_eq!(
            t0.to_string(),
            "000001000011000101001111010001110010010110111011001101010111111"
        );
        assert_eq!(
            t1.to_string(),
            "100001000111000101101111010101110010110110111111001101110111111"
        );
    }

    #[test]
    fn gmw_vanishes_on_subfield_cosets() {
        // indices divisible by 2^k + 1 give trace zero in the base sequence
        for k in [2u32, 3, 4] {
            let cfg = GmwConfig::default_for(k).unwrap();
            let (t0, _) = gmw_pair(k, &cfg).unwrap();
            let m = (1usize << k) + 1;
            assert!((0..t0.period()).step_by(m).all(|i| t0.bit(i) == 0));
        }
    }

    #[test]
    fn gmw_rejects_bad_configs() {
        // x^4 + x^2 + 1 = (x^2+x+1)^2 is not primitive
        let r = gmw_pair(2, &GmwConfig { poly: 0b1_0101, r: 1 });
        assert!(matches!(r, Err(Error::InvalidField(_))));
        // decimation sharing a factor with 2^3 - 1 = 7
        let r = gmw_pair(3, &GmwConfig { poly: 0b100_0011, r: 7 });
        assert!(matches!(r, Err(Error::InvalidField(_))));
    }

    #[test]
    fn gmw_k3_alternate_decimation_passes_gate() {
        let (t0, _) = gmw_pair(3, &GmwConfig { poly: 0b100_0011, r: 3 }).unwrap();
        let profile = binary_autocorr_profile(&t0);
        assert!(profile[1..].iter().all(|&v| v == -1));
    }

    #[test]
    fn cyclotomic_structure_13() {
        let st = cyclotomic_structure(13).unwrap();
        assert_eq!(st.theta(), 2);
        assert_eq!(st.x(), -3);
        assert_eq!(st.class(0), &[1, 3, 9]);
        assert_eq!(st.class(1), &[2, 5, 6]);
        assert_eq!(st.class(2), &[4, 10, 12]);
        assert_eq!(st.class(3), &[7, 8, 11]);
    }

    #[test]
    fn cyclotomic_structure_29_class_sizes() {
        let st = cyclotomic_structure(29).unwrap();
        assert!((0..4).all(|g| st.class(g).len() == 7));
    }

    #[test]
    fn cyclotomic_rejects_bad_n() {
        assert!(cyclotomic_structure(17).is_err()); // f = 4 even
        assert!(cyclotomic_structure(37).is_err()); // 33 not a square
        assert!(cyclotomic_structure(15).is_err()); // composite
    }

    #[test]
    fn cyclotomic_numbers_13() {
        let st = cyclotomic_structure(13).unwrap();
        let m = cyclotomic_numbers(&st);
        assert_eq!(m[0][0], 0);
        assert_eq!(m[0][2], 2);
        assert_eq!(m[0][1], 1);
        assert_eq!(m[1][0], 1);
    }

    #[test]
    fn cyclotomic_numbers_sum_counts_unit_pairs() {
        for n in [13u64, 29, 53] {
            let st = cyclotomic_structure(n).unwrap();
            let m = cyclotomic_numbers(&st);
            let total: u64 = m.iter().flatten().sum();
            // direct enumeration of alpha in F_n* with alpha + 1 in F_n*
            let direct = (1..n).filter(|&a| (a + 1) % n != 0).count() as u64;
            assert_eq!(total, direct);
            assert_eq!(total, n - 2);
        }
    }

    #[test]
    fn classes_partition_and_shift_cyclically() {
        for n in [13u64, 29, 53] {
            let st = cyclotomic_structure(n).unwrap();
            let mut seen = vec![false; n as usize];
            for g in 0..4u8 {
                for &v in st.class(g) {
                    assert!(!seen[v as usize]);
                    seen[v as usize] = true;
                    // multiplication by theta maps D_g onto D_{g+1}
                    let w = (v as u128 * st.theta() as u128 % n as u128) as u64;
                    assert_eq!(st.class_of(w), Some((g + 1) % 4));
                }
            }
            assert!(seen[1..].iter().all(|&s| s));
        }
    }

    #[test]
    fn cyclo_sequences_13_match_known_bits() {
        let st = cyclotomic_structure(13).unwrap();
        assert_eq!(cyclo_sequence(&st, 1).unwrap().to_string(), "0111011001000");
        assert_eq!(cyclo_sequence(&st, 2).unwrap().to_string(), "0101100001101");
        assert_eq!(cyclo_sequence(&st, 6).unwrap().to_string(), "0000100110111");
        assert!(matches!(cyclo_sequence(&st, 0), Err(Error::InvalidIndex(_))));
        assert!(matches!(cyclo_sequence(&st, 7), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn binary_sequence_parse_round_trip() {
        let s: BinarySequence = "0101100001101\n".parse().unwrap();
        assert_eq!(s.to_string(), "0101100001101");
        assert!("01a1".parse::<BinarySequence>().is_err());
        assert!("".parse::<BinarySequence>().is_err());
    }
}
