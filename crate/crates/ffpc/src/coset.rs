//! The abelian group of monic polynomials modulo agreement of the first
//! `level` next-to-leading coefficients. A class is the tuple
//! (a_1, ..., a_level); multiplying representatives multiplies the power
//! series 1 + a_1 u + ... + a_level u^level truncated at u^{level+1}, so
//! the group operations below are truncated power-series arithmetic.

use crate::arith::inv_mod;
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElement};
use crate::poly::MonicPoly;

/// A class of the level-l relation: the first l next-to-leading
/// coefficients. The identity is the all-zero tuple (class of 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CosetClass {
    entries: Vec<FieldElement>,
}

impl CosetClass {
    pub fn new(entries: Vec<FieldElement>) -> CosetClass {
        CosetClass { entries }
    }

    pub fn identity(level: u32) -> CosetClass {
        CosetClass {
            entries: vec![FieldElement::ZERO; level as usize],
        }
    }

    pub fn from_encodings(field: &FieldDesc, encs: &[u64]) -> Result<CosetClass> {
        let entries: Result<Vec<FieldElement>> =
            encs.iter().map(|&e| field.el(e)).collect();
        Ok(CosetClass { entries: entries? })
    }

    pub fn level(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    /// Index in the fixed enumeration: a_1 is the most significant digit
    /// base q. This matches the lexicographic enumeration order used
    /// everywhere else.
    pub fn index(&self, field: &FieldDesc) -> u64 {
        let mut idx = 0;
        for &c in &self.entries {
            idx = idx * field.q() + c.encoding();
        }
        idx
    }

    pub fn from_index(field: &FieldDesc, level: u32, mut idx: u64) -> CosetClass {
        let mut entries = vec![FieldElement::ZERO; level as usize];
        for slot in (0..level as usize).rev() {
            entries[slot] = FieldElement((idx % field.q()) as u16);
            idx /= field.q();
        }
        debug_assert_eq!(idx, 0);
        CosetClass { entries }
    }

    /// Comma-separated integer encodings, e.g. "1,0,1". Level 0 prints
    /// as the empty string.
    pub fn display(&self) -> String {
        self.entries
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(field: &FieldDesc, s: &str) -> Result<CosetClass> {
        if s.is_empty() {
            return Ok(CosetClass::identity(0));
        }
        let encs: std::result::Result<Vec<u64>, _> =
            s.split(',').map(|tok| tok.trim().parse::<u64>()).collect();
        let encs = encs.map_err(|_| Error::Parse(format!("bad class tuple '{s}'")))?;
        CosetClass::from_encodings(field, &encs)
    }
}

/// First `level` next-to-leading coefficients of f, zero-padded beyond
/// its degree.
pub fn coset_of(f: &MonicPoly, level: u32) -> CosetClass {
    CosetClass {
        entries: (1..=level).map(|j| f.next_to_leading(j)).collect(),
    }
}

/// Class of the product of any two representatives.
pub fn group_mul(field: &FieldDesc, a: &CosetClass, b: &CosetClass) -> CosetClass {
    assert_eq!(a.level(), b.level(), "level mismatch");
    let l = a.entries.len();
    let mut out = vec![FieldElement::ZERO; l];
    for (k, slot) in out.iter_mut().enumerate() {
        // c_{k+1} = a_{k+1} + b_{k+1} + sum_{i+j=k+1} a_i b_j
        let mut c = field.add(a.entries[k], b.entries[k]);
        for i in 0..k {
            // a_{i+1} * b_{k-1-i+1}
            c = field.add(c, field.mul(a.entries[i], b.entries[k - 1 - i]));
        }
        *slot = c;
    }
    CosetClass { entries: out }
}

/// Inverse class: the truncated power-series inverse of 1 + sum a_i u^i.
pub fn group_inverse(field: &FieldDesc, a: &CosetClass) -> CosetClass {
    let l = a.entries.len();
    let mut inv = vec![FieldElement::ZERO; l];
    for k in 0..l {
        // b_{k+1} = -(a_{k+1} + sum_{i=1..k} a_i b_{k+1-i})
        let mut c = a.entries[k];
        for i in 0..k {
            c = field.add(c, field.mul(a.entries[i], inv[k - 1 - i]));
        }
        inv[k] = field.neg(c);
    }
    CosetClass { entries: inv }
}

/// k-th power by square-and-multiply; negative k goes through the
/// inverse. The binomial-coefficient expansion of powers is kept as a
/// test oracle only.
pub fn group_pow(field: &FieldDesc, a: &CosetClass, k: i64) -> CosetClass {
    let base = if k < 0 { group_inverse(field, a) } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = CosetClass::identity(a.level());
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = group_mul(field, &acc, &sq);
        }
        sq = group_mul(field, &sq, &sq);
        e >>= 1;
    }
    acc
}

/// Exponent of the level-l group: p^ceil(log_p(l+1)). Level 0 gives the
/// trivial group with exponent 1.
pub fn group_exponent(p: u64, level: u32) -> u64 {
    let mut e = 1u64;
    while e < level as u64 + 1 {
        e *= p;
    }
    e
}

/// Coefficients of u^1..u^l in log(1 + a_1 u + ... + a_l u^l) truncated
/// past u^l. Requires p > l so that the divisions by 1..l make sense.
pub fn truncated_log(field: &FieldDesc, a: &CosetClass) -> Result<Vec<FieldElement>> {
    let l = a.level();
    if field.p() <= l as u64 {
        return Err(Error::RequiresLargeCharacteristic { p: field.p(), level: l });
    }
    let l = l as usize;
    // series: sum_{j>=1} (-1)^{j+1} A^j / j with A = sum a_i u^i
    let mut out = vec![FieldElement::ZERO; l];
    // powers of A truncated at degree l, indexed from u^1
    let mut apow: Vec<FieldElement> = a.entries.clone();
    for j in 1..=l {
        let sign = if j % 2 == 1 { 1i64 } else { -1 };
        let inv_j = field.from_int(inv_mod(j as u64, field.p()) as i64);
        let scalar = field.int_mul(sign, inv_j);
        for m in 0..l {
            out[m] = field.add(out[m], field.mul(scalar, apow[m]));
        }
        if j < l {
            // apow <- apow * A, truncated: coefficient of u^{m+1}
            let mut next = vec![FieldElement::ZERO; l];
            for m in 0..l {
                let mut c = FieldElement::ZERO;
                for i in 0..=m {
                    // u^{i+1} from A times u^{m-i} from apow
                    if m > i {
                        c = field.add(c, field.mul(a.entries[i], apow[m - i - 1]));
                    }
                }
                next[m] = c;
            }
            apow = next;
        }
    }
    Ok(out)
}

/// Two-sided inverse of `truncated_log`: the truncated exponential.
pub fn truncated_exp(field: &FieldDesc, v: &[FieldElement]) -> Result<CosetClass> {
    let l = v.len() as u32;
    if field.p() <= l as u64 {
        return Err(Error::RequiresLargeCharacteristic { p: field.p(), level: l });
    }
    let l = l as usize;
    let mut out = vec![FieldElement::ZERO; l];
    // sum_{j>=0} V^j / j!; V has no constant term so V^j starts at u^j
    let mut vpow: Vec<FieldElement> = v.to_vec(); // V^1
    let mut factorial_inv = FieldElement::ONE;
    for j in 1..=l {
        factorial_inv = field.mul(
            factorial_inv,
            field.from_int(inv_mod(j as u64, field.p()) as i64),
        );
        for m in 0..l {
            out[m] = field.add(out[m], field.mul(factorial_inv, vpow[m]));
        }
        if j < l {
            let mut next = vec![FieldElement::ZERO; l];
            for m in 0..l {
                let mut c = FieldElement::ZERO;
                for i in 0..=m {
                    if m > i {
                        c = field.add(c, field.mul(v[i], vpow[m - i - 1]));
                    }
                }
                next[m] = c;
            }
            vpow = next;
        }
    }
    Ok(CosetClass { entries: out })
}

/// Lucas: binom(n, k) mod p for non-negative integers via base-p digits.
fn binom_lucas(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * binom_small(nd, kd) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn binom_small(n: u64, k: u64) -> u64 {
    // n, k < p <= 2^16; exact in u128 then reduced by the caller
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as u64
}

/// binom(x, s) mod p for a p-integral rational x = num/den. The value
/// depends only on x modulo p^e where p^e is the least power exceeding
/// s, and equals the ordinary binomial of that residue by Lucas.
pub fn binom_padic(num: i64, den: i64, s: u64, p: u64) -> Result<u64> {
    if den.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime(den.unsigned_abs(), p));
    }
    let mut pe = 1u64;
    while pe <= s {
        pe *= p;
    }
    let num_m = num.rem_euclid(pe as i64) as u64;
    let den_m = den.rem_euclid(pe as i64) as u64;
    let x = num_m * inv_mod(den_m, pe) % pe;
    Ok(binom_lucas(x, s, p))
}

/// Multinomial (sum c_i; c_1, ..., c_m) as an exact integer; the inputs
/// here are bounded by the level, so u128 is plenty.
pub(crate) fn multinomial(cs: &[u64]) -> u128 {
    let mut total: u64 = cs.iter().sum();
    let mut acc: u128 = 1;
    for &c in cs {
        // multiply binom(total, c) into acc
        acc *= {
            let mut num: u128 = 1;
            let mut den: u128 = 1;
            for i in 0..c {
                num *= (total - i) as u128;
                den *= (i + 1) as u128;
            }
            num / den
        };
        total -= c;
    }
    acc
}

/// Compositions (c_1, ..., c_m) with sum i*c_i = j, for the coordinate
/// formula of d-th roots.
pub(crate) fn weighted_compositions(j: usize, m: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; m];
    fn rec(i: usize, remaining: usize, m: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if i > m || i > remaining {
            return;
        }
        // choose c_i = t for t = 0.. while i*t <= remaining
        let mut t = 0;
        while i * t <= remaining {
            cur[i - 1] = t as u64;
            rec(i + 1, remaining - i * t, m, cur, out);
            t += 1;
        }
        cur[i - 1] = 0;
    }
    rec(1, j, m, &mut cur, &mut out);
    out
}

/// All classes B with B^d = A. Empty when some a_i != 0 with i not
/// divisible by the p-part d' of d; otherwise the first floor(l/d')
/// coordinates of B are forced by the root-coordinate formula and the
/// rest range freely, giving q^(l - floor(l/d')) solutions.
pub fn solve_power(field: &FieldDesc, a: &CosetClass, d: u64) -> Vec<CosetClass> {
    assert!(d >= 1);
    let p = field.p();
    let l = a.level() as usize;
    if l == 0 {
        return vec![CosetClass::identity(0)];
    }

    // d = d' * k with d' the largest power of p dividing d
    let mut dp = 1u64;
    let mut k = d;
    while k.is_multiple_of(p) {
        dp *= p;
        k /= p;
    }

    for (i0, &ai) in a.entries.iter().enumerate() {
        let i = i0 as u64 + 1;
        if !ai.is_zero() && !i.is_multiple_of(dp) {
            return Vec::new();
        }
    }

    // e: least exponent with q^e >= d'
    let mut qe = 1u64;
    while qe < dp {
        qe *= field.q();
    }

    let m = l / dp as usize; // forced coordinates
    let mut forced = vec![FieldElement::ZERO; m];
    // alpha_i = a_{i d'}^{q^e / d'}: the unique d'-th root of a_{i d'}
    let alphas: Vec<FieldElement> = (1..=m)
        .map(|i| field.pow(a.entries[i * dp as usize - 1], qe / dp))
        .collect();
    for j in 1..=m {
        let mut bj = FieldElement::ZERO;
        for cs in weighted_compositions(j, m) {
            let s: u64 = cs.iter().sum();
            let scalar = binom_padic(1, k as i64, s, p).expect("k coprime to p")
                * (multinomial(&cs) % p as u128) as u64
                % p;
            if scalar == 0 {
                continue;
            }
            let mut term = field.from_int(scalar as i64);
            for (i0, &c) in cs.iter().enumerate() {
                if c > 0 {
                    term = field.mul(term, field.pow(alphas[i0], c));
                }
            }
            bj = field.add(bj, term);
        }
        forced[j - 1] = bj;
    }

    // free coordinates
    let free = l - m;
    let q = field.q();
    let count = q.pow(free as u32);
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut entries = forced.clone();
        entries.resize(l, FieldElement::ZERO);
        let mut v = idx;
        for slot in (m..l).rev() {
            entries[slot] = FieldElement((v % q) as u16);
            v /= q;
        }
        out.push(CosetClass { entries });
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(field: &FieldDesc, encs: &[u64]) -> CosetClass {
        CosetClass::from_encodings(field, encs).unwrap()
    }

    fn all_classes(field: &FieldDesc, level: u32) -> Vec<CosetClass> {
        (0..field.q().pow(level))
            .map(|i| CosetClass::from_index(field, level, i))
            .collect()
    }

    /// Power via the binomial-coefficient coordinate expansion; test
    /// oracle for group_pow.
    fn pow_by_binomial(field: &FieldDesc, a: &CosetClass, k: u64) -> CosetClass {
        let l = a.level() as usize;
        let mut entries = vec![FieldElement::ZERO; l];
        for j in 1..=l {
            let mut cj = FieldElement::ZERO;
            for cs in weighted_compositions(j, l) {
                let s: u64 = cs.iter().sum();
                if s > k {
                    continue;
                }
                let scalar = binom_lucas(k, s, field.p())
                    * (multinomial(&cs) % field.p() as u128) as u64
                    % field.p();
                if scalar == 0 {
                    continue;
                }
                let mut term = field.from_int(scalar as i64);
                for (i0, &c) in cs.iter().enumerate() {
                    if c > 0 {
                        term = field.mul(term, field.pow(a.entries[i0], c));
                    }
                }
                cj = field.add(cj, term);
            }
            entries[j - 1] = cj;
        }
        CosetClass { entries }
    }

    #[test]
    fn coset_extraction() {
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let f = MonicPoly::new(vec![FieldElement::ZERO, FieldElement::ONE, FieldElement::ONE]);
        assert_eq!(coset_of(&f, 3), cls(&f2, &[0, 1, 1])); // T^3+T+1
        let lin = MonicPoly::new(vec![FieldElement::ONE]);
        assert_eq!(coset_of(&lin, 3), cls(&f2, &[1, 0, 0])); // T+1, padded
        assert_eq!(coset_of(&MonicPoly::one(), 2), CosetClass::identity(2));
    }

    #[test]
    fn multiplication_matches_polynomial_products() {
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let a = cls(&f2, &[1, 0, 0]);
        assert_eq!(group_mul(&f2, &a, &CosetClass::identity(3)), a);
        // (T+1)^2 = T^2+1 -> class (0,1,0)
        assert_eq!(group_mul(&f2, &a, &a), cls(&f2, &[0, 1, 0]));

        let f3 = FieldDesc::new(3, 1, None).unwrap();
        // (T^2+T+1)(T+2) = T^3 + 3T^2 + ... -> class product (1,1)*(2,0) = (0,0)
        let x = cls(&f3, &[1, 1]);
        let y = cls(&f3, &[2, 0]);
        assert_eq!(group_mul(&f3, &x, &y), cls(&f3, &[0, 0]));

        // homomorphism against actual polynomial multiplication
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let mut rng = crate::arith::SplitMix64::new(5);
        for _ in 0..50 {
            let n = 3 + (rng.below(3) as u32);
            let mk = |rng: &mut crate::arith::SplitMix64| {
                MonicPoly::new(
                    (0..n).map(|_| FieldElement(rng.below(4) as u16)).collect(),
                )
            };
            let g = mk(&mut rng);
            let h = mk(&mut rng);
            let prod = MonicPoly::mul(&f4, &g, &h);
            for level in 0..=3 {
                assert_eq!(
                    coset_of(&prod, level),
                    group_mul(&f4, &coset_of(&g, level), &coset_of(&h, level))
                );
            }
        }
    }

    #[test]
    fn powers_and_inverses() {
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let a = cls(&f2, &[1, 0, 0]);
        assert_eq!(group_pow(&f2, &a, 1), a);
        // (T+1)^3 = T^3+T^2+T+1
        assert_eq!(group_pow(&f2, &a, 3), cls(&f2, &[1, 1, 1]));
        // the level-3 group over F_2 has exponent 4
        assert_eq!(group_pow(&f2, &a, 4), CosetClass::identity(3));
        assert_eq!(group_inverse(&f2, &a), cls(&f2, &[1, 1, 1]));
        assert_eq!(group_inverse(&f2, &CosetClass::identity(3)), CosetClass::identity(3));

        for (p, r, level) in [(2u64, 1u32, 3u32), (3, 1, 2), (2, 2, 3), (5, 1, 3)] {
            let f = FieldDesc::new(p, r, None).unwrap();
            let e = group_exponent(p, level) as i64;
            for a in all_classes(&f, level) {
                assert_eq!(
                    group_mul(&f, &a, &group_inverse(&f, &a)),
                    CosetClass::identity(level)
                );
                assert_eq!(group_pow(&f, &a, e), CosetClass::identity(level));
                assert_eq!(group_pow(&f, &a, -1), group_inverse(&f, &a));
                assert_eq!(group_pow(&f, &a, e - 1), group_inverse(&f, &a));
            }
        }
    }

    #[test]
    fn exponent_formula() {
        assert_eq!(group_exponent(2, 3), 4);
        assert_eq!(group_exponent(5, 3), 5);
        assert_eq!(group_exponent(2, 4), 8);
        assert_eq!(group_exponent(3, 3), 9);
        assert_eq!(group_exponent(7, 2), 7);
        assert_eq!(group_exponent(2, 0), 1);
        // the class of T+1 attains the exponent
        for (p, level) in [(2u64, 3u32), (2, 4), (3, 3), (5, 3)] {
            let f = FieldDesc::new(p, 1, None).unwrap();
            let mut t1 = CosetClass::identity(level);
            t1.entries[0] = FieldElement::ONE;
            let e = group_exponent(p, level);
            assert_eq!(group_pow(&f, &t1, e as i64), CosetClass::identity(level));
            assert_ne!(
                group_pow(&f, &t1, e as i64 / p as i64),
                CosetClass::identity(level)
            );
        }
    }

    #[test]
    fn pow_matches_binomial_oracle_and_iteration() {
        for (p, r, level) in [(2u64, 1u32, 3u32), (3, 1, 3), (2, 2, 2), (5, 1, 3), (7, 1, 2)] {
            let f = FieldDesc::new(p, r, None).unwrap();
            if f.q().pow(level) > 1000 {
                continue;
            }
            for a in all_classes(&f, level) {
                let mut iterated = CosetClass::identity(level);
                for k in 0..=12i64 {
                    assert_eq!(group_pow(&f, &a, k), iterated, "p={p} k={k}");
                    assert_eq!(pow_by_binomial(&f, &a, k as u64), iterated, "p={p} k={k}");
                    iterated = group_mul(&f, &iterated, &a);
                }
                for k in 1..=12i64 {
                    assert_eq!(
                        group_pow(&f, &a, -k),
                        group_inverse(&f, &group_pow(&f, &a, k))
                    );
                }
            }
        }
    }

    #[test]
    fn log_exp_round_trip() {
        let f5 = FieldDesc::new(5, 1, None).unwrap();
        // log(1+u) truncated: (1, -1/2, 1/3) = (1, 2, 2) mod 5
        let a = cls(&f5, &[1, 0, 0]);
        let lg = truncated_log(&f5, &a).unwrap();
        assert_eq!(lg, vec![f5.el(1).unwrap(), f5.el(2).unwrap(), f5.el(2).unwrap()]);
        assert_eq!(truncated_log(&f5, &CosetClass::identity(3)).unwrap(), vec![FieldElement::ZERO; 3]);

        // exp((1,0)) over F_7: (1, 1/2) = (1, 4)
        let f7 = FieldDesc::new(7, 1, None).unwrap();
        let e = truncated_exp(&f7, &[FieldElement::ONE, FieldElement::ZERO]).unwrap();
        assert_eq!(e, cls(&f7, &[1, 4]));

        // exhaustive bijection and homomorphism over F_5, level 3
        let mut seen = std::collections::HashSet::new();
        for a in all_classes(&f5, 3) {
            let lg = truncated_log(&f5, &a).unwrap();
            assert_eq!(truncated_exp(&f5, &lg).unwrap(), a);
            seen.insert(lg.clone());
            for b in all_classes(&f5, 3) {
                let lhs = truncated_log(&f5, &group_mul(&f5, &a, &b)).unwrap();
                let lb = truncated_log(&f5, &b).unwrap();
                let sum: Vec<FieldElement> = lg
                    .iter()
                    .zip(&lb)
                    .map(|(&x, &y)| f5.add(x, y))
                    .collect();
                assert_eq!(lhs, sum);
            }
        }
        assert_eq!(seen.len(), 125);

        // log(A^2) = 2 log(A) over F_7, level 3
        let f7 = FieldDesc::new(7, 1, None).unwrap();
        let mut rng = crate::arith::SplitMix64::new(11);
        for _ in 0..30 {
            let a = CosetClass::from_index(&f7, 3, rng.below(343));
            let la = truncated_log(&f7, &a).unwrap();
            let doubled: Vec<FieldElement> = la.iter().map(|&x| f7.int_mul(2, x)).collect();
            assert_eq!(
                truncated_log(&f7, &group_pow(&f7, &a, 2)).unwrap(),
                doubled
            );
        }

        assert!(truncated_log(&f5, &CosetClass::identity(5)).is_err());
    }

    #[test]
    fn binom_padic_values() {
        assert_eq!(binom_padic(5, 1, 2, 3).unwrap(), 1); // binom(5,2)=10=1 mod 3
        for p in [2u64, 3, 5, 7] {
            for s in 2..6 {
                assert_eq!(binom_padic(1, 1, s, p).unwrap(), 0);
            }
            assert_eq!(binom_padic(1, 1, 1, p).unwrap(), 1);
            assert_eq!(binom_padic(1, 1, 0, p).unwrap(), 1);
        }
        assert_eq!(binom_padic(1, 3, 2, 5).unwrap(), 1); // binom(17,2)=136=1 mod 5
        assert!(binom_padic(1, 5, 2, 5).is_err());

        // cross-check against the Euler-exponent form binom(k^(phi(p^e)-1), s)
        for p in [3u64, 5, 7] {
            for k in 1..10i64 {
                if (k as u64).is_multiple_of(p) {
                    continue;
                }
                for s in 0..8u64 {
                    let mut pe1 = 1u64;
                    while pe1 < 16 {
                        pe1 *= p;
                    }
                    let phi = pe1 - pe1 / p;
                    let mut kpow = 1u64;
                    for _ in 0..phi - 1 {
                        kpow = kpow * (k as u64 % pe1) % pe1;
                    }
                    assert_eq!(
                        binom_padic(1, k, s, p).unwrap(),
                        binom_lucas(kpow, s, p),
                        "p={p} k={k} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn solve_power_examples() {
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let a = cls(&f2, &[0, 1, 0]);
        assert_eq!(solve_power(&f2, &a, 1), vec![a.clone()]);
        // d=2: b_1 forced to 1, two free coordinates
        let sols = solve_power(&f2, &a, 2);
        assert_eq!(sols.len(), 4);
        for b in &sols {
            assert_eq!(group_pow(&f2, b, 2), a);
        }
        // a_1 != 0 with 2 not dividing 1: no square roots
        assert!(solve_power(&f2, &cls(&f2, &[1, 0, 0]), 2).is_empty());
    }

    #[test]
    fn solve_power_matches_exhaustive() {
        for (p, r, lmax) in [(2u64, 1u32, 4u32), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let f = FieldDesc::new(p, r, None).unwrap();
            for level in 1..=lmax {
                if f.q().pow(level) > 512 {
                    continue;
                }
                let classes = all_classes(&f, level);
                for d in 1..=12u64 {
                    // group all d-th powers
                    let mut by_target: std::collections::HashMap<CosetClass, Vec<CosetClass>> =
                        std::collections::HashMap::new();
                    for b in &classes {
                        by_target
                            .entry(group_pow(&f, b, d as i64))
                            .or_default()
                            .push(b.clone());
                    }
                    for a in &classes {
                        let mut expect = by_target.remove(a).unwrap_or_default();
                        expect.sort();
                        assert_eq!(
                            solve_power(&f, a, d),
                            expect,
                            "p={p} r={r} level={level} d={d} a={}",
                            a.display()
                        );
                    }
                }
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_monic(q: u64, n: usize) -> impl Strategy<Value = MonicPoly> {
            proptest::collection::vec(0..q, n).prop_map(|encs| {
                MonicPoly::new(encs.into_iter().map(|e| FieldElement(e as u16)).collect())
            })
        }

        proptest! {
            #[test]
            fn class_extraction_is_a_homomorphism(
                f in arb_monic(4, 5),
                g in arb_monic(4, 4),
                level in 0u32..=4
            ) {
                let field = FieldDesc::new(2, 2, None).unwrap();
                let prod = MonicPoly::mul(&field, &f, &g);
                prop_assert_eq!(
                    coset_of(&prod, level),
                    group_mul(&field, &coset_of(&f, level), &coset_of(&g, level))
                );
            }

            #[test]
            fn inverse_and_exponent(index in 0u64..125) {
                let field = FieldDesc::new(5, 1, None).unwrap();
                let a = CosetClass::from_index(&field, 3, index);
                prop_assert!(group_mul(&field, &a, &group_inverse(&field, &a)).is_identity());
                let e = group_exponent(5, 3) as i64;
                prop_assert!(group_pow(&field, &a, e).is_identity());
            }
        }
    }

    #[test]
    fn index_and_text_round_trip() {
        let f3 = FieldDesc::new(3, 1, None).unwrap();
        for i in 0..27 {
            let c = CosetClass::from_index(&f3, 3, i);
            assert_eq!(c.index(&f3), i);
            assert_eq!(CosetClass::parse(&f3, &c.display()).unwrap(), c);
        }
        assert_eq!(CosetClass::parse(&f3, "1,0,1").unwrap(), cls(&f3, &[1, 0, 1]));
        assert!(CosetClass::parse(&f3, "1,x").is_err());
    }

}
