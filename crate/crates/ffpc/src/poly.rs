//! Monic polynomials over F_q: deterministic enumeration, irreducibility,
//! the polynomial von Mangoldt function, and the brute-force counting
//! oracle for psi and pi. The oracle is the ground truth the character
//! formulas are checked against, so everything here is exact and the
//! enumeration order is fixed.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{divisors, mobius};
use crate::coset::CosetClass;
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElement};

/// Brute-force enumeration refuses above q^n = 2^26 unless forced.
pub const DEFAULT_BRUTE_BUDGET: u64 = 1 << 26;

/// A monic polynomial T^n + a_1 T^{n-1} + ... + a_n, stored by its
/// next-to-leading coefficients (a_1, ..., a_n). Coefficients beyond the
/// degree read as zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonicPoly {
    coeffs: Vec<FieldElement>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<FieldElement>) -> MonicPoly {
        MonicPoly { coeffs }
    }

    /// The constant polynomial 1 (degree 0).
    pub fn one() -> MonicPoly {
        MonicPoly { coeffs: Vec::new() }
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// (a_1, ..., a_n).
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// j-th next-to-leading coefficient, zero when j > degree.
    pub fn next_to_leading(&self, j: u32) -> FieldElement {
        if j == 0 || j > self.degree() {
            FieldElement::ZERO
        } else {
            self.coeffs[j as usize - 1]
        }
    }

    /// Little-endian dense form, length degree+1, leading coefficient 1.
    pub fn dense(&self) -> Vec<FieldElement> {
        let n = self.coeffs.len();
        let mut d = vec![FieldElement::ZERO; n + 1];
        d[n] = FieldElement::ONE;
        for (j, &c) in self.coeffs.iter().enumerate() {
            d[n - 1 - j] = c;
        }
        d
    }

    /// From a dense little-endian vector with leading coefficient 1.
    pub fn from_dense(dense: &[FieldElement]) -> MonicPoly {
        let n = dense.len() - 1;
        assert_eq!(dense[n], FieldElement::ONE, "polynomial must be monic");
        MonicPoly {
            coeffs: (0..n).map(|j| dense[n - 1 - j]).collect(),
        }
    }

    pub fn mul(field: &FieldDesc, a: &MonicPoly, b: &MonicPoly) -> MonicPoly {
        MonicPoly::from_dense(&dense_mul(field, &a.dense(), &b.dense()))
    }

    /// "T^3+T+1" style rendering, coefficients by integer encoding.
    pub fn display(&self) -> String {
        let n = self.coeffs.len();
        let mut terms = vec![power_term(1, n as u32)];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.push(power_term(c.encoding(), (n - 1 - j) as u32));
            }
        }
        terms.join("+")
    }
}

fn power_term(c: u64, k: u32) -> String {
    match (c, k) {
        (c, 0) => format!("{c}"),
        (1, 1) => "T".to_string(),
        (1, k) => format!("T^{k}"),
        (c, 1) => format!("{c}*T"),
        (c, k) => format!("{c}*T^{k}"),
    }
}

// ---------------------------------------------------------------------
// Dense little-endian polynomial arithmetic over a field.

pub(crate) fn dense_trim(v: &mut Vec<FieldElement>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn dense_mul(
    field: &FieldDesc,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj));
        }
    }
    out
}

/// Remainder of a by monic f, in place.
pub(crate) fn dense_rem(field: &FieldDesc, a: &mut Vec<FieldElement>, f: &[FieldElement]) {
    let d = f.len() - 1;
    debug_assert!(f[d] == FieldElement::ONE);
    while a.len() > d {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - d;
        if !lead.is_zero() {
            for i in 0..d {
                a[shift + i] = field.sub(a[shift + i], field.mul(lead, f[i]));
            }
        }
        a.pop();
    }
    dense_trim(a);
}

/// Quotient and remainder of a by monic f.
pub(crate) fn dense_divrem(
    field: &FieldDesc,
    a: &[FieldElement],
    f: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let d = f.len() - 1;
    let mut rem = a.to_vec();
    dense_trim(&mut rem);
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![FieldElement::ZERO; rem.len() - d];
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        quot[shift] = lead;
        if !lead.is_zero() {
            for i in 0..d {
                rem[shift + i] = field.sub(rem[shift + i], field.mul(lead, f[i]));
            }
        }
        rem.pop();
    }
    dense_trim(&mut rem);
    (quot, rem)
}

/// Monic gcd (empty vector encodes 0).
pub(crate) fn dense_gcd(
    field: &FieldDesc,
    mut a: Vec<FieldElement>,
    mut b: Vec<FieldElement>,
) -> Vec<FieldElement> {
    dense_trim(&mut a);
    dense_trim(&mut b);
    while !b.is_empty() {
        let inv = field.inv(*b.last().unwrap());
        for c in b.iter_mut() {
            *c = field.mul(*c, inv);
        }
        dense_rem(field, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = field.inv(lead);
        for c in a.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    a
}

/// base^e mod f for monic f.
pub(crate) fn dense_pow_mod(
    field: &FieldDesc,
    base: &[FieldElement],
    e: u64,
    f: &[FieldElement],
) -> Vec<FieldElement> {
    let mut acc = vec![FieldElement::ONE];
    if e == 0 {
        return acc;
    }
    let mut sq = base.to_vec();
    dense_rem(field, &mut sq, f);
    let mut e = e;
    loop {
        if e & 1 == 1 {
            acc = dense_mul(field, &acc, &sq);
            dense_rem(field, &mut acc, f);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = dense_mul(field, &sq, &sq);
        dense_rem(field, &mut sq, f);
    }
    acc
}

fn dense_eval(field: &FieldDesc, f: &[FieldElement], x: FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    for &c in f.iter().rev() {
        acc = field.add(field.mul(acc, x), c);
    }
    acc
}

// ---------------------------------------------------------------------
// Von Mangoldt and irreducibility on dense monic polynomials.

/// Does f equal g^k exactly? (f, g monic)
fn is_pure_power(field: &FieldDesc, f: &[FieldElement], g: &[FieldElement], k: u32) -> bool {
    let mut cur = f.to_vec();
    for _ in 0..k {
        let (q, r) = dense_divrem(field, &cur, g);
        if !r.is_empty() {
            return false;
        }
        cur = q;
    }
    cur == [FieldElement::ONE]
}

/// Is f exactly (T - c)^n? Compared coefficientwise via the binomial
/// expansion, without constructing the power.
fn is_linear_power(field: &FieldDesc, f: &[FieldElement], c: FieldElement) -> bool {
    let n = f.len() - 1;
    // coefficient of T^i is binom(n, i) * (-c)^(n-i)
    let minus_c = field.neg(c);
    let mut pw = FieldElement::ONE; // (-c)^(n-i), built from i = n down
    // walk i from n down to 0, maintaining binom(n, i) exactly
    let mut binom: u128 = 1;
    let p = field.p();
    for i in (0..n).rev() {
        // binom(n, i) = binom(n, i+1) * (i+1) / (n-i)
        binom = binom * (i as u128 + 1) / (n as u128 - i as u128);
        pw = field.mul(pw, minus_c);
        let expect = field.int_mul((binom % p as u128) as i64, pw);
        if f[i] != expect {
            return false;
        }
    }
    true
}

/// Lambda(f): deg P when f = P^k with P irreducible, 0 otherwise.
pub(crate) fn von_mangoldt_dense(field: &FieldDesc, f: &[FieldElement]) -> u64 {
    let n = f.len() - 1;
    debug_assert!(n >= 1 && f[n] == FieldElement::ONE);
    if n == 1 {
        return 1;
    }
    // Linear factors first: cheap and settles most polynomials.
    for c in field.elements() {
        if dense_eval(field, f, c).is_zero() {
            return if is_linear_power(field, f, c) { 1 } else { 0 };
        }
    }
    // No roots: scan for the smallest prime factor degree m >= 2 by
    // gcd(f, x^{q^m} - x). The first hit is the product of all prime
    // factors of that degree.
    let q = field.q();
    let mut h = dense_pow_mod(field, &[FieldElement::ZERO, FieldElement::ONE], q, f);
    for m in 2..=n / 2 {
        h = dense_pow_mod(field, &h, q, f);
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, FieldElement::ZERO);
        }
        diff[1] = field.sub(diff[1], FieldElement::ONE);
        dense_trim(&mut diff);
        let g = dense_gcd(field, f.to_vec(), diff);
        if g.len() > 1 {
            if g.len() - 1 != m || !n.is_multiple_of(m) {
                return 0;
            }
            return if is_pure_power(field, f, &g, (n / m) as u32) {
                m as u64
            } else {
                0
            };
        }
    }
    // No factor of degree <= n/2: f is irreducible.
    n as u64
}

pub(crate) fn is_irreducible_dense(field: &FieldDesc, f: &[FieldElement]) -> bool {
    let n = f.len() - 1;
    debug_assert!(n >= 1 && f[n] == FieldElement::ONE);
    if n == 1 {
        return true;
    }
    for c in field.elements() {
        if dense_eval(field, f, c).is_zero() {
            return false;
        }
    }
    let q = field.q();
    let mut h = dense_pow_mod(field, &[FieldElement::ZERO, FieldElement::ONE], q, f);
    for _m in 2..=n / 2 {
        h = dense_pow_mod(field, &h, q, f);
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, FieldElement::ZERO);
        }
        diff[1] = field.sub(diff[1], FieldElement::ONE);
        dense_trim(&mut diff);
        let g = dense_gcd(field, f.to_vec(), diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// True iff f is irreducible over its field.
pub fn is_irreducible(field: &FieldDesc, f: &MonicPoly) -> Result<bool> {
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(is_irreducible_dense(field, &f.dense()))
}

/// The polynomial von Mangoldt function.
pub fn von_mangoldt(field: &FieldDesc, f: &MonicPoly) -> Result<u64> {
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(von_mangoldt_dense(field, &f.dense()))
}

// ---------------------------------------------------------------------
// Deterministic enumeration of monic polynomials.

/// Stream of all monic degree-n polynomials whose first `level` next-to-
/// leading coefficients match `prefix`, in lexicographic order over the
/// free coefficients (a_1 compared first, elements by integer encoding).
///
/// For n < level the stream follows the zero-padding convention: it is
/// the single polynomial T^n + t_1 T^{n-1} + ... + t_n when the prefix
/// entries beyond position n are all zero, and empty otherwise.
pub struct MonicIter {
    field: Arc<FieldDesc>,
    prefix: Vec<FieldElement>,
    n: u32,
    next_index: u64,
    count: u64,
}

impl Iterator for MonicIter {
    type Item = MonicPoly;

    fn next(&mut self) -> Option<MonicPoly> {
        if self.next_index >= self.count {
            return None;
        }
        let idx = self.next_index;
        self.next_index += 1;
        let q = self.field.q();
        let mut coeffs = self.prefix.clone();
        coeffs.resize(self.n as usize, FieldElement::ZERO);
        let mut v = idx;
        for slot in (self.prefix.len()..self.n as usize).rev() {
            coeffs[slot] = FieldElement((v % q) as u16);
            v /= q;
        }
        debug_assert_eq!(v, 0);
        Some(MonicPoly::new(coeffs))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.count - self.next_index) as usize;
        (rem, Some(rem))
    }
}

pub fn enumerate_monic(
    field: &Arc<FieldDesc>,
    n: u32,
    prefix: Option<&CosetClass>,
) -> MonicIter {
    let (entries, level) = match prefix {
        Some(t) => (t.entries().to_vec(), t.level()),
        None => (Vec::new(), 0),
    };
    if n < level {
        // single representative or nothing, by the padding convention
        let ok = entries[n as usize..].iter().all(|c| c.is_zero());
        return MonicIter {
            field: field.clone(),
            prefix: entries[..n as usize].to_vec(),
            n,
            next_index: 0,
            count: if ok { 1 } else { 0 },
        };
    }
    let count = field.q().pow(n - level);
    MonicIter {
        field: field.clone(),
        prefix: entries,
        n,
        next_index: 0,
        count,
    }
}

// ---------------------------------------------------------------------
// Brute-force counting oracle.

fn check_budget(field: &FieldDesc, n: u32, budget: u64) -> Result<()> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.saturating_mul(field.q());
    }
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: "brute-force enumeration",
            needed: total,
            budget,
        });
    }
    Ok(())
}

/// Decode an enumeration index into the dense form of a monic degree-n
/// polynomial with the given fixed class prefix.
#[inline]
fn decode_into(
    q: u64,
    n: usize,
    prefix: &[FieldElement],
    mut idx: u64,
    dense: &mut [FieldElement],
) {
    dense[n] = FieldElement::ONE;
    for (j, &t) in prefix.iter().enumerate() {
        dense[n - 1 - j] = t;
    }
    for slot in dense.iter_mut().take(n - prefix.len()) {
        *slot = FieldElement((idx % q) as u16);
        idx /= q;
    }
    debug_assert_eq!(idx, 0);
}

fn brute_sum<FV: Fn(&FieldDesc, &[FieldElement]) -> u64 + Sync>(
    field: &FieldDesc,
    n: u32,
    t: &CosetClass,
    budget: u64,
    value: FV,
) -> Result<u64> {
    let level = t.level();
    if n < level {
        // padding convention: at most one representative
        if !t.entries()[n as usize..].iter().all(|c| c.is_zero()) {
            return Ok(0);
        }
        if n == 0 {
            return Ok(0);
        }
        let f = MonicPoly::new(t.entries()[..n as usize].to_vec());
        return Ok(value(field, &f.dense()));
    }
    check_budget(field, n, budget)?;
    let q = field.q();
    let free = (n - level) as usize;
    let count = q.pow(free as u32);
    let chunk: u64 = 1 << 14;
    let chunks: Vec<u64> = (0..count.div_ceil(chunk)).collect();
    let total = chunks
        .par_iter()
        .map(|&c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(count);
            let mut dense = vec![FieldElement::ZERO; n as usize + 1];
            let mut acc = 0u64;
            for idx in lo..hi {
                decode_into(q, n as usize, t.entries(), idx, &mut dense);
                acc += value(field, &dense);
            }
            acc
        })
        .sum();
    Ok(total)
}

/// Sum of the von Mangoldt function over the degree-n polynomials in the
/// class of `t`. With level 0 this is exactly q^n.
pub fn brute_psi(field: &FieldDesc, n: u32, t: &CosetClass, budget: u64) -> Result<u64> {
    brute_sum(field, n, t, budget, von_mangoldt_dense)
}

/// Number of irreducibles of degree n in the class of `t`.
pub fn brute_pi(field: &FieldDesc, n: u32, t: &CosetClass, budget: u64) -> Result<u64> {
    brute_sum(field, n, t, budget, |fd, f| is_irreducible_dense(fd, f) as u64)
}

fn brute_all<FV: Fn(&FieldDesc, &[FieldElement]) -> u64 + Sync>(
    field: &FieldDesc,
    n: u32,
    level: u32,
    budget: u64,
    value: FV,
) -> Result<Vec<u64>> {
    assert!(n >= level, "per-class table needs n >= level");
    check_budget(field, n, budget)?;
    let q = field.q();
    let classes = q.pow(level);
    let per_class = q.pow(n - level);
    let count = q.pow(n);
    let chunk: u64 = 1 << 14;
    let chunks: Vec<u64> = (0..count.div_ceil(chunk)).collect();
    let table = chunks
        .par_iter()
        .map(|&c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(count);
            let mut dense = vec![FieldElement::ZERO; n as usize + 1];
            let mut acc = vec![0u64; classes as usize];
            for idx in lo..hi {
                decode_into(q, n as usize, &[], idx, &mut dense);
                acc[(idx / per_class) as usize] += value(field, &dense);
            }
            acc
        })
        .reduce(
            || vec![0u64; classes as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(table)
}

/// brute_psi for every class of the given level at once (one pass over
/// all q^n polynomials), indexed by class index.
pub fn brute_psi_all(field: &FieldDesc, n: u32, level: u32, budget: u64) -> Result<Vec<u64>> {
    brute_all(field, n, level, budget, von_mangoldt_dense)
}

/// brute_pi for every class of the given level at once.
pub fn brute_pi_all(field: &FieldDesc, n: u32, level: u32, budget: u64) -> Result<Vec<u64>> {
    brute_all(field, n, level, budget, |fd, f| {
        is_irreducible_dense(fd, f) as u64
    })
}

/// Number of monic irreducibles of degree n over F_q by the divisor-sum
/// formula (1/n) sum mu(d) q^{n/d}.
pub fn gauss_count(q: u64, n: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for d in divisors(n as u64) {
        sum += mobius(d) * BigInt::from(q).pow((n as u64 / d) as u32);
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(n));
    assert!(rem.is_zero(), "divisor sum must be divisible by n");
    quot
}
