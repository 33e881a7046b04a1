//! Exact arithmetic in rings of cyclotomic integers Z(w_m), where w_m is
//! a primitive m-th root of unity. Elements are integer vectors in the
//! power basis 1, w, ..., w^{phi(m)-1}, reduced modulo the m-th
//! cyclotomic polynomial, so equality is coefficientwise. Coefficients
//! are arbitrary precision: power sums of L-function roots reach
//! magnitudes around q^{n/2} with n in the hundreds.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, euler_phi, legendre_symbol};
use crate::error::{Error, Result};

/// Coefficients of the m-th cyclotomic polynomial, little-endian, monic.
/// Computed by dividing x^m - 1 by the cyclotomic polynomials of the
/// proper divisors; memoized globally.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let result = if m == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^m - 1
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in arith::divisors(m as u64) {
            if d < m as u64 {
                let phi_d = cyclotomic_polynomial(d as u32);
                num = exact_div(&num, &phi_d);
            }
        }
        num
    };
    cache.lock().unwrap().insert(m, result.clone());
    result
}

/// Exact division of integer polynomials (monic divisor).
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for shift in (0..quot.len()).rev() {
        let lead = std::mem::take(&mut rem[shift + d]);
        if !lead.is_zero() {
            for i in 0..d {
                let t = &lead * &den[i];
                rem[shift + i] -= t;
            }
        }
        quot[shift] = lead;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An exact element of Z(w_m).
#[derive(Clone, Debug)]
pub struct CyclotomicInt {
    order: u32,
    /// length phi(order); coordinates in the power basis
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(order: u32) -> CyclotomicInt {
        CyclotomicInt {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order as u64) as usize],
        }
    }

    pub fn from_int(order: u32, value: impl Into<BigInt>) -> CyclotomicInt {
        let mut z = CyclotomicInt::zero(order);
        z.coeffs[0] = value.into();
        z
    }

    /// w_m^k, any integer k.
    pub fn root_of_unity(order: u32, k: i64) -> CyclotomicInt {
        let k = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        CyclotomicInt::reduce(order, poly)
    }

    fn reduce(order: u32, mut poly: Vec<BigInt>) -> CyclotomicInt {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        while poly.len() > d {
            let lead = poly.pop().unwrap();
            if !lead.is_zero() {
                let shift = poly.len() - d;
                for i in 0..d {
                    let t = &lead * &phi[i];
                    poly[shift + i] -= t;
                }
            }
        }
        poly.resize(d, BigInt::zero());
        CyclotomicInt { order, coeffs: poly }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer value, if the element lies in Z.
    pub fn as_int(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Z(w_M) for order | M, preserving the value under
    /// w_m = w_M^{M/m}.
    pub fn embed(&self, target: u32) -> Result<CyclotomicInt> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::OrderNotDividing {
                order: self.order,
                target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(CyclotomicInt::reduce(target, poly))
    }

    fn coerce(a: &CyclotomicInt, b: &CyclotomicInt) -> (CyclotomicInt, CyclotomicInt) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = arith::lcm(a.order as u64, b.order as u64) as u32;
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    pub fn add(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let (mut a, b) = CyclotomicInt::coerce(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let (mut a, b) = CyclotomicInt::coerce(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CyclotomicInt {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn mul(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let (a, b) = CyclotomicInt::coerce(self, other);
        let mut poly = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        CyclotomicInt::reduce(a.order, poly)
    }

    pub fn scalar_mul(&self, k: &BigInt) -> CyclotomicInt {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= k;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> CyclotomicInt {
        let mut acc = CyclotomicInt::from_int(self.order, 1);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// The field automorphism sending w_m to w_m^lambda, for lambda
    /// coprime to m. Fixes the integers; lambda = m-1 is conjugation.
    pub fn galois_apply(&self, lambda: i64) -> Result<CyclotomicInt> {
        let m = self.order as i64;
        let l = lambda.rem_euclid(m) as u64;
        if arith::gcd(l, self.order as u64) != 1 {
            return Err(Error::NotCoprime(l, self.order as u64));
        }
        let mut poly = vec![BigInt::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let target = (i as u64 * l % self.order as u64) as usize;
                poly[target] += c;
            }
        }
        Ok(CyclotomicInt::reduce(self.order, poly))
    }

    pub fn conjugate(&self) -> CyclotomicInt {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois_apply(self.order as i64 - 1).unwrap()
    }

    /// Numeric embedding w_m -> exp(2 pi i / m).
    pub fn to_complex(&self) -> Complex64 {
        let m = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / m;
            let cf = c.to_f64().unwrap_or(f64::INFINITY);
            acc += Complex64::new(angle.cos(), angle.sin()) * cf;
        }
        acc
    }

    /// Text form: integer polynomial in w, e.g. "2 + 1*w^1 - 1*w^3".
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if i == 0 {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*w^{i}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl PartialEq for CyclotomicInt {
    /// Valuewise equality: both sides are embedded into the lcm order
    /// and compared coefficientwise there.
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CyclotomicInt::coerce(self, other);
        a.coeffs == b.coeffs
    }
}
impl Eq for CyclotomicInt {}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Quadratic Gauss sum g_p = sum over a of (a/p) w_p^a, for odd p.
/// Its square is exactly (-1)^((p-1)/2) p.
pub fn gauss_sum(p: u64) -> Result<CyclotomicInt> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut poly = vec![BigInt::zero(); p as usize];
    for a in 1..p {
        poly[a as usize] = BigInt::from(legendre_symbol(a as i64, p));
    }
    Ok(CyclotomicInt::reduce(p as u32, poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(m: u32, k: i64) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(m, k)
    }

    fn int(m: u32, v: i64) -> CyclotomicInt {
        CyclotomicInt::from_int(m, v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.iter().map(|c| c.to_i64().unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(9)), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(
            as_i64(cyclotomic_polynomial(24)),
            vec![1, 0, 0, 0, -1, 0, 0, 0, 1]
        );
    }

    #[test]
    fn ring_op_examples() {
        // w_4^2 = -1
        assert_eq!(root(4, 1).mul(&root(4, 1)), int(4, -1));
        // w_3 + w_3^2 = -1
        assert_eq!(root(3, 1).add(&root(3, 2)), int(3, -1));
        // (1+w_8)(1+w_8^7) = 2 + w_8 + w_8^-1
        let lhs = int(8, 1).add(&root(8, 1)).mul(&int(8, 1).add(&root(8, 7)));
        let rhs = int(8, 2).add(&root(8, 1)).add(&root(8, -1));
        assert_eq!(lhs, rhs);
        // as a vector mod Phi_8 = x^4+1: w^7 = -w^3
        assert_eq!(
            lhs.coeffs(),
            &[BigInt::from(2), BigInt::from(1), BigInt::from(0), BigInt::from(-1)]
        );
    }

    #[test]
    fn root_powers_wrap() {
        for m in [3u32, 4, 5, 8, 9, 24] {
            assert_eq!(root(m, m as i64), int(m, 1));
            // sum of all m-th roots of unity vanishes
            let mut s = CyclotomicInt::zero(m);
            for k in 0..m {
                s = s.add(&root(m, k as i64));
            }
            assert!(s.is_zero(), "m={m}");
        }
    }

    #[test]
    fn embedding() {
        assert_eq!(root(4, 1).embed(8).unwrap(), root(8, 2));
        assert_eq!(int(3, 7).embed(12).unwrap(), int(12, 7));
        assert!(root(4, 1).embed(6).is_err());
        // embed-then-multiply equals multiply-then-embed
        let a = root(3, 1).add(&int(3, 1));
        let b = root(4, 1);
        let prod = a.embed(12).unwrap().mul(&b.embed(12).unwrap());
        let auto = a.mul(&b); // auto-coerced to order 12
        assert_eq!(prod, auto);
        let numeric = a.to_complex() * b.to_complex();
        assert!((prod.to_complex() - numeric).norm() < 1e-12);
    }

    #[test]
    fn galois_action() {
        let x = root(5, 1).add(&int(5, 3));
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert_eq!(root(5, 1).galois_apply(2).unwrap(), root(5, 2));
        assert!(root(4, 1).galois_apply(2).is_err());
        // conjugation matches the numeric conjugate
        for m in [5u32, 8, 9] {
            let z = root(m, 1).add(&root(m, 3)).add(&int(m, 2));
            let c = z.conjugate();
            assert!((c.to_complex() - z.to_complex().conj()).norm() < 1e-12);
        }
        // automorphisms compose and respect products
        let mut rng = crate::arith::SplitMix64::new(9);
        for _ in 0..40 {
            let m = 15u32;
            let mk = |rng: &mut crate::arith::SplitMix64| {
                let mut z = CyclotomicInt::zero(m);
                for c in z.coeffs.iter_mut() {
                    *c = BigInt::from(rng.below(19) as i64 - 9);
                }
                z
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            for l in [2i64, 4, 7, 8, 11, 13, 14] {
                let lhs = a.mul(&b).galois_apply(l).unwrap();
                let rhs = a.galois_apply(l).unwrap().mul(&b.galois_apply(l).unwrap());
                assert_eq!(lhs, rhs);
                let sum_l = a.add(&b).galois_apply(l).unwrap();
                assert_eq!(sum_l, a.galois_apply(l).unwrap().add(&b.galois_apply(l).unwrap()));
            }
            // sigma_2 . sigma_8 = sigma_16 = sigma_1
            assert_eq!(
                a.galois_apply(2).unwrap().galois_apply(8).unwrap(),
                a
            );
        }
    }

    #[test]
    fn gauss_sum_squares() {
        for p in [3u64, 5, 7, 11, 13] {
            let g = gauss_sum(p).unwrap();
            let expect = if (p - 1) / 2 % 2 == 0 {
                int(p as u32, p as i64)
            } else {
                int(p as u32, -(p as i64))
            };
            assert_eq!(g.mul(&g), expect, "p={p}");
        }
        assert!(gauss_sum(2).is_err());
        assert!(gauss_sum(9).is_err());
        // sign convention: g_5 is the positive square root of 5
        let g5 = gauss_sum(5).unwrap().to_complex();
        assert!((g5.re - 5f64.sqrt()).abs() < 1e-9 && g5.im.abs() < 1e-9);
        // g_3 = i sqrt(3)
        let g3 = gauss_sum(3).unwrap().to_complex();
        assert!(g3.re.abs() < 1e-9 && (g3.im - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn numeric_embedding() {
        assert_eq!(int(4, 5).to_complex(), Complex64::new(5.0, 0.0));
        assert!((root(4, 1).to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        // multiplicativity within tolerance
        let a = root(8, 1).add(&int(8, 2));
        let b = root(8, 5).add(&int(8, -1));
        let lhs = a.mul(&b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        assert!((lhs - rhs).norm() < 1e-9);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyc(m: u32) -> impl Strategy<Value = CyclotomicInt> {
            let phi = euler_phi(m as u64) as usize;
            proptest::collection::vec(-50i64..50, phi).prop_map(move |cs| {
                let mut z = CyclotomicInt::zero(m);
                for (slot, c) in z.coeffs.iter_mut().zip(cs) {
                    *slot = BigInt::from(c);
                }
                z
            })
        }

        proptest! {
            #[test]
            fn embed_commutes_with_ring_ops(a in arb_cyc(12), b in arb_cyc(12)) {
                let big = 36u32;
                prop_assert_eq!(
                    a.mul(&b).embed(big).unwrap(),
                    a.embed(big).unwrap().mul(&b.embed(big).unwrap())
                );
                prop_assert_eq!(
                    a.add(&b).embed(big).unwrap(),
                    a.embed(big).unwrap().add(&b.embed(big).unwrap())
                );
            }

            #[test]
            fn galois_is_a_ring_automorphism(a in arb_cyc(15), b in arb_cyc(15), l in 0u32..30) {
                prop_assume!(crate::arith::gcd(l as u64, 15) == 1);
                let l = l as i64;
                prop_assert_eq!(
                    a.mul(&b).galois_apply(l).unwrap(),
                    a.galois_apply(l).unwrap().mul(&b.galois_apply(l).unwrap())
                );
                prop_assert_eq!(
                    a.add(&b).galois_apply(l).unwrap(),
                    a.galois_apply(l).unwrap().add(&b.galois_apply(l).unwrap())
                );
            }

            #[test]
            fn ring_is_commutative_and_distributive(
                a in arb_cyc(8), b in arb_cyc(8), c in arb_cyc(8)
            ) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(
                    a.mul(&b.add(&c)),
                    a.mul(&b).add(&a.mul(&c))
                );
            }
        }
    }

    #[test]
    fn integer_detection_and_display() {
        assert_eq!(int(8, 42).as_int(), Some(BigInt::from(42)));
        assert_eq!(root(8, 1).as_int(), None);
        assert_eq!(root(4, 1).mul(&root(4, 1)).as_int(), Some(BigInt::from(-1)));
        assert_eq!(int(8, 0).display(), "0");
        assert_eq!(
            int(8, 2).add(&root(8, 1)).sub(&root(8, 3)).display(),
            "2 + 1*w^1 - 1*w^3"
        );
    }
}
