//! L-functions of characters of the class group. For a nontrivial
//! character the L-function is a polynomial of degree below the level;
//! its coefficients are exact cyclotomic integers obtained by summing
//! character values over monic polynomials of each degree. Root data is
//! extracted two ways that never mix:
//!
//! * exactly, through power sums of the inverse roots computed by the
//!   Newton identities in Z(w_e) — all root-of-unity statements reduce
//!   to integer identities s_{N+j} = q^{N/2} s_j for even N;
//! * numerically, for the absolute-value (Riemann Hypothesis) checks,
//!   with closed forms at degree <= 2 and a simultaneous-iteration
//!   fallback above.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use crate::characters::{recover_lambdas, Character};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Relative tolerance for the numeric |root| = sqrt(q) test.
pub const RH_REL_TOL: f64 = 1e-9;

/// The L-polynomial 1 + c_1 u + ... + c_d u^d of a nontrivial character,
/// with exact coefficients in Z(w_e) and c_d != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    level: u32,
    order: u32,
    coeffs: Vec<CyclotomicInt>,
}

impl LPolynomial {
    pub fn from_coeffs(level: u32, order: u32, mut coeffs: Vec<CyclotomicInt>) -> LPolynomial {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        assert!(coeffs[0].as_int() == Some(BigInt::one()), "c_0 must be 1");
        LPolynomial {
            level,
            order,
            coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Cyclotomic order of the coefficient ring.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[CyclotomicInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &CyclotomicInt {
        &self.coeffs[j]
    }
}

/// Direct coefficient sum: the value sum of chi over all monic
/// polynomials of degree d, for d <= level. This is the defining series
/// coefficient of the L-function.
pub fn l_coefficient_direct(chi: &Character, d: u32) -> CyclotomicInt {
    let group = chi.group();
    let q = group.field().q();
    let level = group.level();
    assert!(d <= level);
    let e = group.exponent();
    // histogram of value exponents over the q^d classes (a_1..a_d,0,..,0)
    let mut hist = vec![0u64; e as usize];
    let stride = q.pow(level - d);
    for t in 0..q.pow(d) {
        hist[chi.exponent_at_index(t * stride) as usize] += 1;
    }
    let mut acc = CyclotomicInt::zero(e as u32);
    for (k, &count) in hist.iter().enumerate() {
        if count > 0 {
            acc = acc.add(
                &CyclotomicInt::root_of_unity(e as u32, k as i64)
                    .scalar_mul(&BigInt::from(count)),
            );
        }
    }
    acc
}

/// The exact L-polynomial of a nontrivial character. The trivial
/// character's L-function is the non-polynomial 1/(1-qu) and is refused.
pub fn l_polynomial(chi: &Character) -> Result<LPolynomial> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let group = chi.group();
    let level = group.level();
    let e = group.exponent() as u32;
    let coeffs: Vec<CyclotomicInt> = (0..level).map(|d| l_coefficient_direct(chi, d)).collect();
    Ok(LPolynomial::from_coeffs(level, e, coeffs))
}

/// Power sums s_n of the inverse roots of 1 + c_1 u + ... + c_d u^d for
/// n = 1..n_max, by the Newton identities. Exact.
pub fn power_sums_from_coeffs(
    order: u32,
    coeffs: &[CyclotomicInt],
    n_max: usize,
) -> Vec<CyclotomicInt> {
    let d = coeffs.len() - 1;
    let mut sums: Vec<CyclotomicInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut s = if n <= d {
            coeffs[n].scalar_mul(&BigInt::from(n as i64)).neg()
        } else {
            CyclotomicInt::zero(order)
        };
        for i in 1..=d.min(n - 1) {
            s = s.sub(&coeffs[i].mul(&sums[n - 1 - i]));
        }
        sums.push(s);
    }
    sums
}

pub fn power_sums(l: &LPolynomial, n_max: usize) -> Vec<CyclotomicInt> {
    power_sums_from_coeffs(l.order(), l.coeffs(), n_max)
}

/// s_{N+j} = q^{N/2} s_j for j = 1..d, given precomputed sums reaching
/// index N + d. Equivalent to every inverse root divided by sqrt(q)
/// being an N-th root of unity.
pub(crate) fn unity_order_check(
    q: u64,
    degree: usize,
    sums: &[CyclotomicInt],
    n: u64,
) -> bool {
    debug_assert!(n.is_multiple_of(2));
    let scale = BigInt::from(q).pow((n / 2) as u32);
    (1..=degree).all(|j| {
        let lhs = &sums[(n as usize + j) - 1];
        let rhs = sums[j - 1].scalar_mul(&scale);
        *lhs == rhs
    })
}

/// Exact test that all normalized inverse roots are N-th roots of unity,
/// for even N, through the power-sum identity.
pub fn unity_order_dividing(q: u64, l: &LPolynomial, n: u64) -> Result<bool> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddUnityOrder(n));
    }
    let d = l.degree();
    if d == 0 {
        return Err(Error::Refusal(
            "L-function of degree 0 has no roots to test".into(),
        ));
    }
    let sums = power_sums(l, n as usize + d);
    Ok(unity_order_check(q, d, &sums, n))
}

/// Smallest even N <= max_n passing the root-of-unity identity, if any.
pub fn minimal_unity_order(q: u64, l: &LPolynomial, max_n: u64) -> Result<Option<u64>> {
    if !max_n.is_multiple_of(2) {
        return Err(Error::OddUnityOrder(max_n));
    }
    let d = l.degree();
    if d == 0 {
        return Err(Error::Refusal(
            "L-function of degree 0 has no roots to test".into(),
        ));
    }
    let sums = power_sums(l, max_n as usize + d);
    for n in (2..=max_n).step_by(2) {
        if unity_order_check(q, d, &sums, n) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Numeric roots.

/// Inverse roots of the L-polynomial as complex doubles, sorted by
/// (re, im) for reproducible reports. Degree <= 2 uses closed forms with
/// exact discriminant zero-testing; higher degrees use simultaneous
/// (Durand-Kerner) iteration.
pub fn inverse_roots_numeric(l: &LPolynomial) -> Vec<Complex64> {
    let d = l.degree();
    let mut roots = match d {
        0 => Vec::new(),
        1 => vec![-l.coeff(1).to_complex()],
        2 => {
            let c1 = l.coeff(1);
            let c2 = l.coeff(2);
            // exact discriminant c_1^2 - 4 c_2 decides the double-root case
            let disc = c1.mul(c1).sub(&c2.scalar_mul(&BigInt::from(4)));
            let c1n = c1.to_complex();
            if disc.is_zero() {
                let r = -c1n / 2.0;
                vec![r, r]
            } else {
                let s = disc.to_complex().sqrt();
                vec![(-c1n + s) / 2.0, (-c1n - s) / 2.0]
            }
        }
        _ => durand_kerner(l),
    };
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

fn durand_kerner(l: &LPolynomial) -> Vec<Complex64> {
    let d = l.degree();
    // monic polynomial with the inverse roots as zeros:
    // z^d + c_1 z^{d-1} + ... + c_d
    let coeffs: Vec<Complex64> = (0..=d).map(|j| l.coeff(j).to_complex()).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter() {
            acc = acc * z + c;
        }
        acc
    };
    let bound = 1.0
        + coeffs
            .iter()
            .skip(1)
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|k| bound * seed.powu(k as u32 + 1))
        .collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= zs[i] - zs[j];
                }
            }
            let step = eval(zs[i]) / den;
            zs[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    zs
}

/// Numeric Riemann Hypothesis check: every inverse root has absolute
/// value sqrt(q) within RH_REL_TOL relative tolerance. Degree 0 holds
/// vacuously.
pub fn check_rh_numeric(q: u64, l: &LPolynomial) -> bool {
    let sq = (q as f64).sqrt();
    inverse_roots_numeric(l)
        .iter()
        .all(|g| (g.norm() - sq).abs() <= RH_REL_TOL * sq)
}

// ---------------------------------------------------------------------
// Structural identities for the L-coefficients.

/// Roots of mu c^3 + lambda c^2 + 1 in F_q.
pub fn epsilon_cubic_roots(
    field: &crate::field::FieldDesc,
    lambda: FieldElement,
    mu: FieldElement,
) -> Vec<FieldElement> {
    field
        .elements()
        .filter(|&c| {
            let c2 = field.mul(c, c);
            let c3 = field.mul(c2, c);
            let v = field.add(
                field.add(field.mul(mu, c3), field.mul(lambda, c2)),
                FieldElement::ONE,
            );
            v.is_zero()
        })
        .collect()
}

/// The characteristic-2 level-3 identities: writing L(u/sqrt(q)) =
/// 1 + alpha u + beta u^2 and epsilon(chi) = (lambda, mu),
///
///   beta    = chi(lambda/mu, 0, 0)
///   alpha^2 = chi(lambda/mu, 0, 0) + sum over roots c of
///             mu c^3 + lambda c^2 + 1 of chi(c, 0, 0)
///
/// verified exactly after clearing the sqrt(q) denominators: c_2 = q beta
/// and c_1^2 = q alpha^2. Fails with IdentityFailed if either side
/// differs.
pub fn verify_fomenko(chi: &Character) -> Result<()> {
    let group = chi.group();
    let field = group.field().clone();
    if field.p() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            got: field.p(),
        });
    }
    if group.level() != 3 {
        return Err(Error::WrongLevel {
            expected: "3",
            got: group.level(),
        });
    }
    if !chi.is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let (lambda, mu) = crate::characters::fomenko_epsilon(chi)?;
    debug_assert!(!mu.is_zero());
    let l = l_polynomial(chi)?;
    if l.degree() != 2 {
        return Err(Error::IdentityFailed(format!(
            "primitive level-3 character has L-degree {}, expected 2",
            l.degree()
        )));
    }
    let q = BigInt::from(field.q());
    let chi_at = |c: FieldElement| -> CyclotomicInt {
        let class = crate::coset::CosetClass::new(vec![
            c,
            FieldElement::ZERO,
            FieldElement::ZERO,
        ]);
        chi.evaluate(&class).unwrap()
    };
    let pivot = chi_at(field.div(lambda, mu));

    let beta_ok = *l.coeff(2) == pivot.scalar_mul(&q);
    let mut alpha_sq = pivot;
    for c in epsilon_cubic_roots(&field, lambda, mu) {
        alpha_sq = alpha_sq.add(&chi_at(c));
    }
    let alpha_ok = l.coeff(1).mul(l.coeff(1)) == alpha_sq.scalar_mul(&q);
    if !(beta_ok && alpha_ok) {
        return Err(Error::IdentityFailed(format!(
            "epsilon identities failed for character {} (beta_ok={beta_ok}, alpha_ok={alpha_ok})",
            chi.index()
        )));
    }
    Ok(())
}

/// The p >= 5 level-3 normal form: for a primitive character with
/// coefficient vector (lambda_1, lambda_2, lambda_3) there are a != 0, b
/// and a twist exponent c with
///
///   c_1 = w_p^c * sum over x of (additive character of a x^3 + b x)
///   c_2 = q * w_p^{2c}
///
/// where a = lambda_3/3, b = lambda_1 - lambda_2^2/(4 lambda_3) and c is
/// the trace of lambda_1 lambda_2/(2 lambda_3) - lambda_2^3/(12 lambda_3^2).
/// Returns (a, b, c) after verifying both identities exactly in Z(w_p).
pub fn verify_cubic_normal_form(chi: &Character) -> Result<(FieldElement, FieldElement, u64)> {
    let group = chi.group();
    let field = group.field().clone();
    let p = field.p();
    if p < 5 {
        return Err(Error::WrongCharacteristic {
            expected: ">= 5",
            got: p,
        });
    }
    if group.level() != 3 {
        return Err(Error::WrongLevel {
            expected: "3",
            got: group.level(),
        });
    }
    if !chi.is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let lambdas = match chi.lambdas() {
        Some(ls) => ls.to_vec(),
        None => recover_lambdas(chi)?,
    };
    let (l1, l2, l3) = (lambdas[0], lambdas[1], lambdas[2]);
    debug_assert!(!l3.is_zero(), "primitive means lambda_3 != 0");

    let a = field.div(l3, field.from_int(3));
    let b = field.sub(
        l1,
        field.div(field.mul(l2, l2), field.int_mul(4, l3)),
    );
    // twist: additive character exponent of l1 l2/(2 l3) - l2^3/(12 l3^2)
    let twist_arg = field.sub(
        field.div(field.mul(l1, l2), field.int_mul(2, l3)),
        field.div(
            field.mul(field.mul(l2, l2), l2),
            field.int_mul(12, field.mul(l3, l3)),
        ),
    );
    let c = field.trace(twist_arg);

    let e = group.exponent() as u32;
    debug_assert_eq!(e as u64, p);
    // S = sum over x of w_p^{Tr(a x^3 + b x)}
    let mut s = CyclotomicInt::zero(e);
    for x in field.elements() {
        let x3 = field.mul(field.mul(x, x), x);
        let arg = field.add(field.mul(a, x3), field.mul(b, x));
        s = s.add(&CyclotomicInt::root_of_unity(e, field.trace(arg) as i64));
    }
    let l = l_polynomial(chi)?;
    if l.degree() != 2 {
        return Err(Error::IdentityFailed(format!(
            "primitive level-3 character has L-degree {}, expected 2",
            l.degree()
        )));
    }
    let c1_ok = *l.coeff(1) == CyclotomicInt::root_of_unity(e, c as i64).mul(&s);
    let c2_expect = CyclotomicInt::root_of_unity(e, 2 * c as i64)
        .scalar_mul(&BigInt::from(field.q()));
    let c2_ok = *l.coeff(2) == c2_expect;
    if !(c1_ok && c2_ok) {
        return Err(Error::IdentityFailed(format!(
            "cubic normal form failed for character {} (c1_ok={c1_ok}, c2_ok={c2_ok})",
            chi.index()
        )));
    }
    Ok((a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{
        character_from_lambdas, enumerate_characters, ClassGroup, DEFAULT_GROUP_BUDGET,
    };
    use crate::field::FieldDesc;
    use std::sync::Arc;

    fn group(p: u64, r: u32, level: u32) -> Arc<ClassGroup> {
        let f = FieldDesc::new(p, r, None).unwrap();
        ClassGroup::new(&f, level, DEFAULT_GROUP_BUDGET).unwrap()
    }

    #[test]
    fn trivial_character_is_refused() {
        let g = group(2, 1, 2);
        assert!(matches!(
            l_polynomial(&crate::characters::Character::trivial(&g)),
            Err(Error::TrivialCharacter)
        ));
    }

    #[test]
    fn level_one_l_functions_are_constant() {
        for (p, r) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let g = group(p, r, 1);
            for chi in enumerate_characters(&g).iter().skip(1) {
                let l = l_polynomial(chi).unwrap();
                assert_eq!(l.degree(), 0, "nontrivial level-1 characters have L = 1");
            }
        }
    }

    #[test]
    fn degree_bound_and_primitive_degree() {
        for (p, r, level) in [(2u64, 1u32, 2u32), (2, 1, 3), (3, 1, 2), (2, 2, 3), (5, 1, 3)] {
            let g = group(p, r, level);
            for chi in enumerate_characters(&g).iter().skip(1) {
                let l = l_polynomial(chi).unwrap();
                assert!(l.degree() < level as usize);
                // the coefficient at d = level vanishes by orthogonality
                assert!(l_coefficient_direct(chi, level).is_zero());
                if chi.is_primitive().unwrap() {
                    assert_eq!(l.degree(), level as usize - 1);
                }
            }
        }
    }

    #[test]
    fn level_two_linear_coefficient_is_value_sum_over_linears() {
        for (p, r) in [(2u64, 1u32), (3, 1), (5, 1), (2, 2)] {
            let g = group(p, r, 2);
            let field = g.field().clone();
            for chi in enumerate_characters(&g).iter().skip(1) {
                let l = l_polynomial(chi).unwrap();
                // c_1 = sum over a of chi(T + a) = sum over classes (a, 0)
                let mut s = CyclotomicInt::zero(g.exponent() as u32);
                for a in field.elements() {
                    let cls = crate::coset::CosetClass::new(vec![a, FieldElement::ZERO]);
                    s = s.add(&chi.evaluate(&cls).unwrap());
                }
                if l.degree() >= 1 {
                    assert_eq!(*l.coeff(1), s);
                } else {
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn newton_power_sums_simple_cases() {
        // degree 0: all sums vanish
        let one = CyclotomicInt::from_int(4, 1);
        let sums = power_sums_from_coeffs(4, std::slice::from_ref(&one), 10);
        assert!(sums.iter().all(|s| s.is_zero()));
        // single root: L = 1 + c u has s_n = (-c)^n
        let c = CyclotomicInt::root_of_unity(4, 1).add(&CyclotomicInt::from_int(4, 1));
        let sums = power_sums_from_coeffs(4, &[one.clone(), c.clone()], 8);
        for (n, s) in sums.iter().enumerate() {
            assert_eq!(*s, c.neg().pow(n as u64 + 1));
        }
    }

    #[test]
    fn newton_matches_numeric_roots() {
        let g = group(2, 2, 3);
        let q = g.field().q();
        let chars = enumerate_characters(&g);
        for chi in chars.iter().skip(1).step_by(5) {
            let l = l_polynomial(chi).unwrap();
            if l.degree() == 0 {
                continue;
            }
            let roots = inverse_roots_numeric(&l);
            let sums = power_sums(&l, 12);
            for n in 1..=12usize {
                let numeric: Complex64 = roots.iter().map(|g| g.powu(n as u32)).sum();
                let exact = sums[n - 1].to_complex();
                let scale = (q as f64).powf(n as f64 / 2.0) * l.degree() as f64;
                assert!(
                    (numeric - exact).norm() <= 1e-6 * scale.max(1.0),
                    "chi {} n {}: numeric {} exact {}",
                    chi.index(),
                    n,
                    numeric,
                    exact
                );
            }
        }
    }

    #[test]
    fn rh_holds_at_desk_scale() {
        for (p, r, level) in [
            (2u64, 1u32, 3u32),
            (3, 1, 3),
            (5, 1, 3),
            (2, 2, 3),
            (7, 1, 2),
            (2, 3, 3),
            (3, 2, 3),
        ] {
            let g = group(p, r, level);
            let q = g.field().q();
            for chi in enumerate_characters(&g).iter().skip(1) {
                let l = l_polynomial(chi).unwrap();
                assert!(check_rh_numeric(q, &l), "chi {} over {p}^{r}", chi.index());
                // leading coefficient has absolute value q^{d/2}
                let d = l.degree();
                if d > 0 {
                    let lead = l.coeff(d).to_complex().norm();
                    let expect = (q as f64).powf(d as f64 / 2.0);
                    assert!((lead - expect).abs() <= 1e-9 * expect);
                }
            }
        }
        // scaled example: 1 + q u^2 has roots of absolute value sqrt(q)
        let l = LPolynomial::from_coeffs(
            3,
            4,
            vec![
                CyclotomicInt::from_int(4, 1),
                CyclotomicInt::zero(4),
                CyclotomicInt::from_int(4, 7),
            ],
        );
        assert!(check_rh_numeric(7, &l));
    }

    #[test]
    fn unity_orders_at_level_two() {
        // over F_2 the normalized root of a level-2 character has order
        // dividing 8; over F_4 (even extension) it divides 4
        for (p, r, o_q) in [(2u64, 1u32, 8u64), (2, 2, 4), (5, 1, 10), (3, 1, 12)] {
            let g = group(p, r, 2);
            let q = g.field().q();
            for chi in enumerate_characters(&g).iter().skip(1) {
                if !chi.is_primitive().unwrap() {
                    continue;
                }
                let l = l_polynomial(chi).unwrap();
                assert_eq!(l.degree(), 1);
                assert!(unity_order_dividing(q, &l, o_q).unwrap(), "o_q={o_q}");
                let min = minimal_unity_order(q, &l, 240).unwrap().unwrap();
                assert!(o_q % min == 0, "minimal order {min} divides {o_q}");
            }
        }
    }

    #[test]
    fn unity_order_rejects_odd_and_degree_zero() {
        let g = group(2, 1, 2);
        let chi = &enumerate_characters(&g)[1];
        let l = l_polynomial(chi).unwrap();
        assert!(matches!(
            unity_order_dividing(2, &l, 7),
            Err(Error::OddUnityOrder(7))
        ));
        let g1 = group(2, 1, 1);
        let chi1 = &enumerate_characters(&g1)[1];
        let l1 = l_polynomial(chi1).unwrap();
        assert!(unity_order_dividing(2, &l1, 24).is_err());
    }

    #[test]
    fn lift_raises_inverse_roots_to_the_extension_degree() {
        // inverse roots of the lifted L-function are the r-th powers of
        // the original ones; in power sums, s_n(lift) = s_{rn}(chi)
        for (p, level) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
            let small = FieldDesc::new(p, 1, None).unwrap();
            let big = FieldDesc::new(p, 2, None).unwrap();
            let gs = ClassGroup::new(&small, level, DEFAULT_GROUP_BUDGET).unwrap();
            let gb = ClassGroup::new(&big, level, DEFAULT_GROUP_BUDGET).unwrap();
            for chi in enumerate_characters(&gs).iter().skip(1) {
                let lifted = crate::characters::lift_character(chi, &gb).unwrap();
                let l_small = l_polynomial(chi).unwrap();
                let sums_small = power_sums(&l_small, 16);
                let sums_big = if lifted.is_trivial() {
                    // no lifted character sums to compare against
                    assert_eq!(l_small.degree(), 0, "only degenerate lifts are trivial");
                    continue;
                } else {
                    power_sums(&l_polynomial(&lifted).unwrap(), 8)
                };
                for n in 1..=8usize {
                    assert_eq!(
                        sums_big[n - 1],
                        sums_small[2 * n - 1],
                        "p={p} level={level} chi#{} n={n}",
                        chi.index()
                    );
                }
            }
        }
    }

    #[test]
    fn conjugate_character_has_conjugate_coefficients() {
        let g = group(2, 2, 3);
        for chi in enumerate_characters(&g).iter().skip(1).step_by(9) {
            let l = l_polynomial(chi).unwrap();
            let lc = l_polynomial(&chi.conjugate()).unwrap();
            assert_eq!(l.degree(), lc.degree());
            for j in 0..=l.degree() {
                assert_eq!(*lc.coeff(j), l.coeff(j).conjugate());
            }
        }
    }

    #[test]
    fn fomenko_identities_hold_for_all_primitive_characters() {
        for (p, r) in [(2u64, 1u32), (2, 2)] {
            let g = group(p, r, 3);
            let mut primitive = 0;
            for chi in enumerate_characters(&g) {
                if chi.is_trivial() || !chi.is_primitive().unwrap() {
                    continue;
                }
                primitive += 1;
                verify_fomenko(&chi).unwrap();
            }
            let q = g.field().q();
            assert_eq!(primitive, (q * q * q - q * q) as usize);
        }
        // wrong characteristic refused
        let g = group(3, 1, 3);
        let chi = enumerate_characters(&g).into_iter().nth(1).unwrap();
        assert!(verify_fomenko(&chi).is_err());
    }

    #[test]
    fn cubic_normal_form_examples() {
        let g = group(5, 1, 3);
        let field = g.field().clone();
        // lambda = (0,0,1): a = 1/3 = 2, b = 0, twist = 0
        let chi = character_from_lambdas(
            &g,
            &[
                FieldElement::ZERO,
                FieldElement::ZERO,
                FieldElement::ONE,
            ],
        )
        .unwrap();
        let (a, b, c) = verify_cubic_normal_form(&chi).unwrap();
        assert_eq!(a, field.el(2).unwrap());
        assert_eq!(b, FieldElement::ZERO);
        assert_eq!(c, 0);

        // every primitive character over F_5 and F_7 passes
        for p in [5u64, 7] {
            let g = group(p, 1, 3);
            let field = g.field().clone();
            let q = field.q();
            let mut count = 0;
            for idx in 0..q.pow(3) {
                let l3 = idx % q;
                if l3 == 0 {
                    continue;
                }
                let lam = vec![
                    field.el(idx / (q * q)).unwrap(),
                    field.el(idx / q % q).unwrap(),
                    field.el(l3).unwrap(),
                ];
                let chi = character_from_lambdas(&g, &lam).unwrap();
                verify_cubic_normal_form(&chi).unwrap();
                count += 1;
            }
            assert_eq!(count, q.pow(3) - q.pow(2));
        }
    }

    #[test]
    fn double_root_case_is_exact() {
        // (1 - u)^2 = 1 - 2u + u^2 scaled: inverse roots both equal 1;
        // with q = 1 the RH band test passes exactly through the
        // discriminant-zero branch
        let l = LPolynomial::from_coeffs(
            3,
            4,
            vec![
                CyclotomicInt::from_int(4, 1),
                CyclotomicInt::from_int(4, -2),
                CyclotomicInt::from_int(4, 1),
            ],
        );
        let roots = inverse_roots_numeric(&l);
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }
}
