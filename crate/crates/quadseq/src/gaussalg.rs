//! Gauss periods of order four valued in Z mod (4^(2n) - 1), the quadratic
//! character sum built from them, and the small divisors they pin down in
//! the factor rings mod (4^n - 1)/3 and (4^n + 1)/5.

use num_bigint::BigUint;

use crate::error::Result;
use crate::modarith::{
    four_pow_minus_one, four_pow_plus_one, gcd_big, geom_sum4, pow4_mod, Residue,
};
use crate::seqgen::{cyclotomic_numbers, CyclotomicStructure};

/// The four class sums `eta_g = sum_{i in D_g} 4^(2i)` and the alternating
/// sum `g = eta_0 - eta_1 + eta_2 - eta_3`, all modulo `4^(2n) - 1`.
#[derive(Debug, Clone)]
pub struct GaussPeriods {
    n: u64,
    eta: [Residue; 4],
    g: Residue,
}

impl GaussPeriods {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn eta(&self, gamma: u8) -> &Residue {
        &self.eta[(gamma % 4) as usize]
    }

    pub fn g(&self) -> &Residue {
        &self.g
    }

    pub fn modulus(&self) -> &BigUint {
        self.g.modulus()
    }
}

/// Compute the four periods and their alternating sum exactly.
pub fn gauss_periods(st: &CyclotomicStructure) -> GaussPeriods {
    let n = st.n();
    let modulus = four_pow_minus_one(2 * n);
    let eta: [Residue; 4] = std::array::from_fn(|gamma| {
        let mut acc = Residue::zero(&modulus).expect("modulus is valid");
        for &i in st.class(gamma as u8) {
            acc = acc.add(&pow4_mod(2 * i, &modulus).expect("modulus is valid"));
        }
        acc
    });
    let g = eta[0].sub(&eta[1]).add(&eta[2]).sub(&eta[3]);
    GaussPeriods { n, eta, g }
}

/// One verified congruence in the identity suite.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub gamma: Option<u8>,
    pub mu: Option<u8>,
    pub pass: bool,
}

/// Outcome of the full identity suite for one structure.
#[derive(Debug, Clone)]
pub struct IdentitySuiteReport {
    pub n: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentitySuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Check, as exact congruences mod 4^(2n) - 1:
///
/// * the period sum `eta_0 + .. + eta_3 = (4^(2n)-1)/15 - 1`;
/// * the square of the alternating sum, `g^2 = n - (4^(2n)-1)/15`;
/// * every pairwise product expanded over class numbers;
/// * the closed forms of `16 eta_g^2`, `16 eta_g eta_(g+1)`,
///   `16 eta_g eta_(g+2)` with the stored `x` (labelling `y = -1`);
/// * the alternating-sum values of `(eta_0-eta_1)^2 + (eta_2-eta_3)^2`
///   and `(eta_0-eta_3)^2 + (eta_2-eta_1)^2`.
pub fn check_identity_suite(
    st: &CyclotomicStructure,
    periods: &GaussPeriods,
) -> IdentitySuiteReport {
    let n = st.n();
    let modulus = periods.modulus().clone();
    let mut checks = Vec::new();
    let res = |v: u64| Residue::from_u64(v, &modulus).expect("modulus is valid");

    // T = sum_{j=0}^{n-1} 4^(2j) = (4^(2n)-1)/15
    let t = geom_sum4(2, n, &modulus).expect("modulus is valid");
    let eta_sum = periods
        .eta(0)
        .add(periods.eta(1))
        .add(periods.eta(2))
        .add(periods.eta(3));
    checks.push(IdentityCheck {
        name: "eta_sum",
        gamma: None,
        mu: None,
        pass: eta_sum == t.sub_u64(1),
    });

    let g2 = periods.g().square();
    checks.push(IdentityCheck {
        name: "gauss_square",
        gamma: None,
        mu: None,
        pass: g2 == res(n).sub(&t),
    });

    // eta_g eta_m = ((n-1)/4) [g = m+2] + sum_v (g-v+2, m-v) eta_v
    let numbers = cyclotomic_numbers(st);
    for gamma in 0..4u8 {
        for mu in 0..4u8 {
            let lhs = periods.eta(gamma).mul(periods.eta(mu));
            let mut rhs = if (gamma + 4 - (mu + 2) % 4) % 4 == 0 {
                res((n - 1) / 4)
            } else {
                Residue::zero(&modulus).expect("modulus is valid")
            };
            for nu in 0..4u8 {
                let i = (gamma + 4 - nu + 2) % 4;
                let j = (mu + 4 - nu) % 4;
                let count = numbers[i as usize][j as usize];
                rhs = rhs.add(&periods.eta(nu).scale(count as i64));
            }
            checks.push(IdentityCheck {
                name: "eta_product",
                gamma: Some(gamma),
                mu: Some(mu),
                pass: lhs == rhs,
            });
        }
    }

    let (ca, cb, cc, cbbar, cd) = st.coefficients();
    let base = t.sub_u64(1).scale(n as i64);
    for gamma in 0..4u8 {
        let e0 = periods.eta(gamma);
        let e1 = periods.eta(gamma + 1);
        let e2 = periods.eta(gamma + 2);
        let e3 = periods.eta(gamma + 3);

        let lhs = e0.square().scale(16);
        let rhs = e0
            .scale(ca)
            .add(&e1.scale(cb))
            .add(&e2.scale(cc))
            .add(&e3.scale(cbbar));
        checks.push(IdentityCheck {
            name: "eta_square_closed",
            gamma: Some(gamma),
            mu: None,
            pass: lhs == rhs,
        });

        // same product with the period sum folded in
        let x = st.x();
        let rhs = base
            .add(&e0.add(e3).scale(-7 + 2 * x))
            .add(&e1.scale(9 + 2 * x))
            .add(&e2.scale(1 - 6 * x));
        checks.push(IdentityCheck {
            name: "eta_square_reduced",
            gamma: Some(gamma),
            mu: None,
            pass: lhs == rhs,
        });

        let lhs = e0.mul(e1).scale(16);
        let rhs = base
            .add(&e0.add(e1).scale(cd - (n as i64)))
            .add(&e2.scale(ca - (n as i64)))
            .add(&e3.scale(cb - (n as i64)));
        checks.push(IdentityCheck {
            name: "eta_adjacent_closed",
            gamma: Some(gamma),
            mu: None,
            pass: lhs == rhs,
        });

        let lhs = e0.mul(e2).scale(16);
        let rhs = base
            .add(&e0.add(e2).scale(ca - (n as i64)))
            .add(&e1.add(e3).scale(cd - (n as i64)))
            .add(&res(4 * (n - 1)));
        checks.push(IdentityCheck {
            name: "eta_opposite_closed",
            gamma: Some(gamma),
            mu: None,
            pass: lhs == rhs,
        });
    }

    // (eta_0 - eta_1)^2 + (eta_2 - eta_3)^2 = g
    let d01 = periods.eta(0).sub(periods.eta(1));
    let d23 = periods.eta(2).sub(periods.eta(3));
    checks.push(IdentityCheck {
        name: "gauss_diff_plus",
        gamma: None,
        mu: None,
        pass: d01.square().add(&d23.square()) == *periods.g(),
    });

    // (eta_0 - eta_3)^2 + (eta_2 - eta_1)^2 = -g
    let d03 = periods.eta(0).sub(periods.eta(3));
    let d21 = periods.eta(2).sub(periods.eta(1));
    checks.push(IdentityCheck {
        name: "gauss_diff_minus",
        gamma: None,
        mu: None,
        pass: d03.square().add(&d21.square()) == periods.g().scale(-1),
    });

    IdentitySuiteReport { n, checks }
}

/// `gcd(eta_g - eta_(g-1) - 1, (4^n - 1)/3)`, the divisor this difference
/// pins in the minus-factor ring. The result always divides n^2 + 3n + 4.
pub fn d1(st: &CyclotomicStructure, gamma: u8) -> Result<BigUint> {
    let gamma = gamma % 4;
    let periods = gauss_periods(st);
    let n = st.n();
    let factor = four_pow_minus_one(n);
    let target = &factor / BigUint::from(3u32);
    let diff = periods
        .eta(gamma)
        .sub(periods.eta(gamma + 3))
        .sub_u64(1)
        .reduce_mod(&factor)?;
    let d = gcd_big(&(diff.value() % &target), &target)?;
    let bound = BigUint::from(n * n + 3 * n + 4);
    assert!(
        (&bound % &d) == BigUint::from(0u32),
        "divisor {d} must divide n^2 + 3n + 4 = {bound}"
    );
    Ok(d)
}

/// `gcd(eta_g - eta_(g-1), (4^n + 1)/5)`, the plus-factor analogue; it is
/// always 1 for the families handled here.
pub fn d2(st: &CyclotomicStructure, gamma: u8) -> Result<BigUint> {
    let gamma = gamma % 4;
    let periods = gauss_periods(st);
    let factor = four_pow_plus_one(st.n());
    let target = &factor / BigUint::from(5u32);
    let diff = periods
        .eta(gamma)
        .sub(periods.eta(gamma + 3))
        .reduce_mod(&factor)?;
    gcd_big(&(diff.value() % &target), &target)
}
