//! Exact arithmetic in the ring of cyclotomic integers ℤ[ζ_N].
//!
//! Every quantity `2cos(π/m)` with `2m | N` is an element of this ring, so
//! the reflection representation of a Coxeter group whose labels divide `N/2`
//! has all its matrix entries here. Elements are stored in the power basis
//! `1, ζ, …, ζ^{d-1}` with `d = φ(N)`, reduced modulo the cyclotomic
//! polynomial, which makes equality (and hashing) exact.

use std::f64::consts::PI;

/// An element of ℤ[ζ_N], as power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc(Vec<i128>);

impl Cyc {
    pub fn coords(&self) -> &[i128] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// The ring ℤ[ζ_N] together with its reduction data.
#[derive(Clone, Debug)]
pub struct CyclotomicRing {
    order: usize,
    /// Φ_N, lowest degree first, monic.
    modulus: Vec<i128>,
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // den is monic.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0i128; rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k - dd + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    assert!(n >= 1);
    let mut num = vec![0i128; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("cyclotomic coefficient overflow")
}

impl CyclotomicRing {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    /// The smallest ring containing `2cos(π/m)` for every finite label `m ≥ 3`.
    pub fn for_labels(labels: impl IntoIterator<Item = u32>) -> Self {
        let order = labels
            .into_iter()
            .filter(|&m| m >= 3)
            .fold(1usize, |acc, m| lcm(acc, 2 * m as usize));
        Self::new(order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![0; self.dim()])
    }

    pub fn from_int(&self, n: i128) -> Cyc {
        let mut v = vec![0; self.dim()];
        v[0] = n;
        Cyc(v)
    }

    fn reduce(&self, mut coeffs: Vec<i128>) -> Cyc {
        let d = self.dim();
        for k in (d..coeffs.len()).rev() {
            let c = coeffs[k];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = k - d + i;
                coeffs[idx] = checked(coeffs[idx].checked_sub(checked(c.checked_mul(m))));
            }
        }
        coeffs.truncate(d);
        coeffs.resize(d, 0);
        Cyc(coeffs)
    }

    /// Matrix of `x ↦ c·x` in the power basis, row-major `d × d`.
    pub fn multiplication_matrix(&self, c: &Cyc) -> Vec<i128> {
        let d = self.dim();
        let mut m = vec![0; d * d];
        for k in 0..d {
            let mut e = vec![0; d];
            e[k] = 1;
            let col = self.mul(c, &Cyc(e));
            for (i, v) in col.0.into_iter().enumerate() {
                m[i * d + k] = v;
            }
        }
        m
    }

    /// ζ_N^k.
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let n = self.order as i64;
        let e = k.rem_euclid(n) as usize;
        let mut v = vec![0; e + 1];
        v[e] = 1;
        self.reduce(v)
    }

    /// `2cos(π/m)`; `m = 0` encodes ∞ (value 2).
    pub fn two_cos_pi_over(&self, m: u32) -> Cyc {
        match m {
            0 => self.from_int(2),
            2 => self.zero(),
            _ => {
                assert!(
                    self.order.is_multiple_of(2 * m as usize),
                    "label {m} not supported by ring of order {}",
                    self.order
                );
                let k = (self.order / (2 * m as usize)) as i64;
                self.add(&self.zeta_pow(k), &self.zeta_pow(-k))
            }
        }
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| checked(x.checked_add(*y))).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| checked(x.checked_sub(*y))).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let d = self.dim();
        if d == 1 {
            return Cyc(vec![checked(a.0[0].checked_mul(b.0[0]))]);
        }
        let mut out = vec![0i128; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    out[i + j] = checked(out[i + j].checked_add(checked(x.checked_mul(y))));
                }
            }
        }
        self.reduce(out)
    }

    /// Real part of the complex embedding ζ ↦ e^{2πi/N}.
    pub fn to_f64(&self, a: &Cyc) -> f64 {
        a.0.iter()
            .enumerate()
            .map(|(k, &c)| c as f64 * (2.0 * PI * k as f64 / self.order as f64).cos())
            .sum()
    }

    /// Sign of a real element: exact zero test, numeric sign otherwise.
    pub fn sign(&self, a: &Cyc) -> i32 {
        if a.is_zero() {
            return 0;
        }
        let v = self.to_f64(a);
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            // A nonzero algebraic integer this close to zero is beyond the
            // precision we support.
            panic!("cannot resolve sign of nonzero cyclotomic integer");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn two_cos_values_match_floats() {
        let ring = CyclotomicRing::for_labels([3, 4, 5, 6]);
        for m in [2u32, 3, 4, 5, 6] {
            let v = ring.to_f64(&ring.two_cos_pi_over(m));
            assert!((v - 2.0 * (PI / m as f64).cos()).abs() < 1e-12, "m = {m}");
        }
        assert_eq!(ring.to_f64(&ring.two_cos_pi_over(0)), 2.0);
    }

    #[test]
    fn golden_ratio_identity_is_exact() {
        // (2cos(π/5))² = 2cos(π/5) + 1
        let ring = CyclotomicRing::for_labels([5]);
        let phi = ring.two_cos_pi_over(5);
        let lhs = ring.mul(&phi, &phi);
        let rhs = ring.add(&phi, &ring.from_int(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sqrt_two_and_three_squares() {
        let ring = CyclotomicRing::for_labels([4, 6]);
        let r2 = ring.two_cos_pi_over(4);
        assert_eq!(ring.mul(&r2, &r2), ring.from_int(2));
        let r3 = ring.two_cos_pi_over(6);
        assert_eq!(ring.mul(&r3, &r3), ring.from_int(3));
        assert_eq!(ring.sign(&ring.sub(&r3, &r2)), 1);
    }
}
