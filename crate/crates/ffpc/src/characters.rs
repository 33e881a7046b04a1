//! The dual group of the level-l class group: enumeration of all q^l
//! characters, exact evaluation as roots of unity, primitivity, lifts to
//! extension fields through polynomial norms, explicit lambda-vector
//! characters when p > l, and the epsilon map onto F_q + F_q used in
//! characteristic 2 at level 3.
//!
//! The class group is an abelian p-group; we decompose it into cyclic
//! factors generically (repeatedly splitting off an element of maximal
//! order in the quotient of what has been captured so far), which works
//! uniformly also when p <= l and the logarithm parameterization is not
//! available. Characters are stored as generator exponents against that
//! decomposition plus a shared discrete-log table, O(q^l) memory total.

use std::collections::HashMap;
use std::sync::Arc;

use crate::coset::{self, CosetClass};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{Embedding, FieldDesc, FieldElement};
use crate::poly::MonicPoly;

/// Character enumeration refuses above q^l = 2^16 by default.
pub const DEFAULT_GROUP_BUDGET: u64 = 1 << 16;

/// The group of level-l classes with its cyclic decomposition and the
/// discrete logarithm of every class against the chosen generators.
/// Immutable after construction and shared via Arc.
pub struct ClassGroup {
    field: Arc<FieldDesc>,
    level: u32,
    size: u64,
    exponent: u64,
    gens: Vec<CosetClass>,
    /// cyclic factor orders, non-increasing, product = size
    orders: Vec<u64>,
    /// flattened [size x gens.len()] discrete logs
    dlog: Vec<u32>,
}

impl ClassGroup {
    pub fn new(field: &Arc<FieldDesc>, level: u32, budget: u64) -> Result<Arc<ClassGroup>> {
        let size = field
            .q()
            .checked_pow(level)
            .filter(|&s| s <= budget)
            .ok_or(Error::BudgetExceeded {
                what: "character enumeration",
                needed: field.q().saturating_pow(level),
                budget,
            })?;
        let exponent = coset::group_exponent(field.p(), level);
        let p = field.p();

        let mut gens: Vec<CosetClass> = Vec::new();
        let mut orders: Vec<u64> = Vec::new();
        // captured subgroup: class index -> generator exponents
        let mut sub: HashMap<u64, Vec<u32>> = HashMap::new();
        sub.insert(CosetClass::identity(level).index(field), Vec::new());

        while (sub.len() as u64) < size {
            // element of maximal order in G / <captured>, first index wins
            let mut best: Option<(u64, u64)> = None; // (order, class index)
            for idx in 0..size {
                if sub.contains_key(&idx) {
                    continue;
                }
                let mut y = CosetClass::from_index(field, level, idx);
                let mut ord = 1u64;
                loop {
                    y = coset::group_pow(field, &y, p as i64);
                    ord *= p;
                    if sub.contains_key(&y.index(field)) {
                        break;
                    }
                }
                if best.is_none_or(|(b, _)| ord > b) {
                    best = Some((ord, idx));
                }
            }
            let (m, idx) = best.expect("group not yet captured");
            let x = CosetClass::from_index(field, level, idx);
            // x^m lies in the captured subgroup; divide it out of x so the
            // new generator meets the old ones trivially
            let t = sub[&coset::group_pow(field, &x, m as i64).index(field)].clone();
            let mut fresh = x;
            for (i, &ti) in t.iter().enumerate() {
                assert!(
                    (ti as u64).is_multiple_of(m),
                    "maximal-order pick guarantees divisibility"
                );
                let correction =
                    coset::group_pow(field, &gens[i], -((ti as u64 / m) as i64));
                fresh = coset::group_mul(field, &fresh, &correction);
            }
            debug_assert!(coset::group_pow(field, &fresh, m as i64).is_identity());
            if let Some(&last) = orders.last() {
                assert!(m <= last, "factor orders must be non-increasing");
            }
            // extend the captured subgroup by the new cyclic factor
            let mut extended = HashMap::with_capacity(sub.len() * m as usize);
            for (&cidx, vec) in &sub {
                let base = CosetClass::from_index(field, level, cidx);
                let mut acc = base;
                for e in 0..m as u32 {
                    let mut v = vec.clone();
                    v.push(e);
                    let prev = extended.insert(acc.index(field), v);
                    assert!(prev.is_none(), "decomposition must be direct");
                    if e + 1 < m as u32 {
                        acc = coset::group_mul(field, &acc, &fresh);
                    }
                }
            }
            sub = extended;
            gens.push(fresh);
            orders.push(m);
        }

        let k = gens.len();
        let mut dlog = vec![0u32; size as usize * k];
        for (idx, vec) in sub {
            debug_assert_eq!(vec.len(), k);
            dlog[idx as usize * k..idx as usize * k + k].copy_from_slice(&vec);
        }
        debug_assert_eq!(orders.iter().product::<u64>(), size);

        Ok(Arc::new(ClassGroup {
            field: field.clone(),
            level,
            size,
            exponent,
            gens,
            orders,
            dlog,
        }))
    }

    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Group exponent, also the root-of-unity order of character values.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[CosetClass] {
        &self.gens
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.orders
    }

    fn dlog_of(&self, class_index: u64) -> &[u32] {
        let k = self.gens.len();
        &self.dlog[class_index as usize * k..class_index as usize * k + k]
    }

    pub fn classes(self: &Arc<Self>) -> impl Iterator<Item = CosetClass> + 'static {
        let field = self.field.clone();
        let level = self.level;
        (0..self.size).map(move |i| CosetClass::from_index(&field, level, i))
    }
}

/// A character of the level-l class group. Values are roots of unity of
/// order dividing the group exponent e; `evaluate` returns them as exact
/// cyclotomic integers.
#[derive(Clone)]
pub struct Character {
    group: Arc<ClassGroup>,
    index: u64,
    /// weight_i = x_i * (e / m_i): chi(class) = w_e ^ (sum weight_i dlog_i)
    weights: Vec<u64>,
    lambdas: Option<Vec<FieldElement>>,
}

impl Character {
    /// Character by enumeration index: the mixed-radix digits of the
    /// index over the cyclic factor orders are the generator exponents,
    /// first factor most significant. Index 0 is the trivial character.
    pub fn from_index(group: &Arc<ClassGroup>, index: u64) -> Result<Character> {
        if index >= group.size {
            return Err(Error::BadCharacterIndex {
                index,
                count: group.size,
            });
        }
        let mut digits = vec![0u64; group.orders.len()];
        let mut v = index;
        for (slot, &m) in group.orders.iter().enumerate().rev() {
            digits[slot] = v % m;
            v /= m;
        }
        let weights = digits
            .iter()
            .zip(&group.orders)
            .map(|(&x, &m)| x * (group.exponent / m) % group.exponent)
            .collect();
        Ok(Character {
            group: group.clone(),
            index,
            weights,
            lambdas: None,
        })
    }

    pub fn trivial(group: &Arc<ClassGroup>) -> Character {
        Character::from_index(group, 0).unwrap()
    }

    pub fn group(&self) -> &Arc<ClassGroup> {
        &self.group
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn lambdas(&self) -> Option<&[FieldElement]> {
        self.lambdas.as_deref()
    }

    /// Exponent k with chi(class) = w_e^k, addressed by class index.
    #[inline]
    pub fn exponent_at_index(&self, class_index: u64) -> u64 {
        let dlog = self.group.dlog_of(class_index);
        let e = self.group.exponent;
        let mut acc = 0u64;
        for (w, &d) in self.weights.iter().zip(dlog) {
            acc += w * d as u64 % e;
        }
        acc % e
    }

    pub fn evaluate(&self, a: &CosetClass) -> Result<CyclotomicInt> {
        if a.level() != self.group.level {
            return Err(Error::Mismatch);
        }
        let k = self.exponent_at_index(a.index(&self.group.field));
        Ok(CyclotomicInt::root_of_unity(
            self.group.exponent as u32,
            k as i64,
        ))
    }

    /// Value on a monic polynomial through its class.
    pub fn evaluate_poly(&self, f: &MonicPoly) -> CyclotomicInt {
        let class = coset::coset_of(f, self.group.level);
        self.evaluate(&class).unwrap()
    }

    pub fn conjugate(&self) -> Character {
        let digits = self.digits();
        let conj: Vec<u64> = digits
            .iter()
            .zip(&self.group.orders)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        Character::from_digits(&self.group, &conj)
    }

    /// Pointwise product of characters.
    pub fn mul(&self, other: &Character) -> Character {
        let a = self.digits();
        let b = other.digits();
        let sum: Vec<u64> = a
            .iter()
            .zip(&b)
            .zip(&self.group.orders)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        Character::from_digits(&self.group, &sum)
    }

    fn digits(&self) -> Vec<u64> {
        let mut digits = vec![0u64; self.group.orders.len()];
        let mut v = self.index;
        for (slot, &m) in self.group.orders.iter().enumerate().rev() {
            digits[slot] = v % m;
            v /= m;
        }
        digits
    }

    fn from_digits(group: &Arc<ClassGroup>, digits: &[u64]) -> Character {
        let mut index = 0u64;
        for (&x, &m) in digits.iter().zip(&group.orders) {
            debug_assert!(x < m);
            index = index * m + x;
        }
        Character::from_index(group, index).unwrap()
    }

    /// Primitive at its level: not constant on the subgroup of classes
    /// (0, ..., 0, a), equivalently not induced from level l-1.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.group.level == 0 {
            return Err(Error::WrongLevel {
                expected: ">= 1",
                got: 0,
            });
        }
        for a in 1..self.group.field.q() {
            // class (0,...,0,a) has index equal to the encoding of a
            if self.exponent_at_index(a) != 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Build a character from prescribed values on a generating set;
    /// values are given as exponents of w_e. Fails if the set does not
    /// generate or the values are inconsistent.
    pub fn from_generator_values(
        group: &Arc<ClassGroup>,
        pairs: &[(CosetClass, u64)],
    ) -> Result<Character> {
        let field = &group.field;
        let e = group.exponent;
        let mut table: Vec<Option<u64>> = vec![None; group.size as usize];
        table[CosetClass::identity(group.level).index(field) as usize] = Some(0);
        let mut frontier: Vec<CosetClass> = vec![CosetClass::identity(group.level)];
        while let Some(c) = frontier.pop() {
            let base = table[c.index(field) as usize].unwrap();
            for (g, t) in pairs {
                let next = coset::group_mul(field, &c, g);
                let idx = next.index(field) as usize;
                let val = (base + t) % e;
                match table[idx] {
                    None => {
                        table[idx] = Some(val);
                        frontier.push(next);
                    }
                    Some(prev) => {
                        if prev != val {
                            return Err(Error::IdentityFailed(
                                "prescribed generator values are inconsistent".into(),
                            ));
                        }
                    }
                }
            }
        }
        if table.iter().any(|v| v.is_none()) {
            return Err(Error::IdentityFailed(
                "given classes do not generate the group".into(),
            ));
        }
        // project onto the stored decomposition and cross-check everywhere
        let digits: Vec<u64> = group
            .gens
            .iter()
            .zip(&group.orders)
            .map(|(g, &m)| {
                let t = table[g.index(field) as usize].unwrap();
                let step = e / m;
                assert!(t.is_multiple_of(step), "value order must divide generator order");
                t / step
            })
            .collect();
        let chi = Character::from_digits(group, &digits);
        for idx in 0..group.size {
            if chi.exponent_at_index(idx) != table[idx as usize].unwrap() {
                return Err(Error::IdentityFailed(
                    "prescribed values do not extend to a character".into(),
                ));
            }
        }
        Ok(chi)
    }
}

/// All q^l characters in index order; the trivial character comes first
/// and the set is closed under conjugation and products.
pub fn enumerate_characters(group: &Arc<ClassGroup>) -> Vec<Character> {
    (0..group.size)
        .map(|i| Character::from_index(group, i).unwrap())
        .collect()
}

/// The explicit character attached to a coefficient vector
/// (lambda_1, ..., lambda_l) when p > l: the value on a class is the
/// additive character of sum_j lambda_j [u^j] log(1 + a_1 u + ...).
pub fn character_from_lambdas(
    group: &Arc<ClassGroup>,
    lambdas: &[FieldElement],
) -> Result<Character> {
    let field = group.field.clone();
    let level = group.level;
    if lambdas.len() != level as usize {
        return Err(Error::Mismatch);
    }
    if field.p() <= level as u64 {
        return Err(Error::RequiresLargeCharacteristic {
            p: field.p(),
            level,
        });
    }
    debug_assert_eq!(group.exponent, field.p());
    let digits: Vec<u64> = group
        .gens
        .iter()
        .zip(&group.orders)
        .map(|(g, &m)| {
            let lg = coset::truncated_log(&field, g).expect("p > level");
            let mut s = FieldElement::ZERO;
            for (lam, v) in lambdas.iter().zip(&lg) {
                s = field.add(s, field.mul(*lam, *v));
            }
            let t = field.trace(s); // exponent of w_p
            let step = group.exponent / m;
            debug_assert!(t.is_multiple_of(step));
            t / step
        })
        .collect();
    let mut chi = Character::from_digits(group, &digits);
    chi.lambdas = Some(lambdas.to_vec());
    Ok(chi)
}

/// Recover the lambda-vector of a character when p > l, by matching the
/// linear functional it induces on the logarithm side.
pub fn recover_lambdas(chi: &Character) -> Result<Vec<FieldElement>> {
    let group = &chi.group;
    let field = group.field.clone();
    let level = group.level;
    if field.p() <= level as u64 {
        return Err(Error::RequiresLargeCharacteristic {
            p: field.p(),
            level,
        });
    }
    let mut lambdas = Vec::with_capacity(level as usize);
    for j in 0..level as usize {
        let mut found = None;
        'cand: for lam in field.elements() {
            for c in field.elements() {
                // class with log vector c * e_j
                let mut v = vec![FieldElement::ZERO; level as usize];
                v[j] = c;
                let class = coset::truncated_exp(&field, &v).expect("p > level");
                let got = chi.exponent_at_index(class.index(&field));
                if got != field.trace(field.mul(lam, c)) {
                    continue 'cand;
                }
            }
            found = Some(lam);
            break;
        }
        lambdas.push(found.expect("a matching lambda exists for every character"));
    }
    Ok(lambdas)
}

/// Lift along the norm to an extension: the lifted character's value on
/// a class over F_{q^m} is the original character's value on the class
/// of the norm of any representative.
pub fn lift_character(chi: &Character, big_group: &Arc<ClassGroup>) -> Result<Character> {
    let small = chi.group.field.clone();
    let big = big_group.field.clone();
    if big.p() != small.p() || !big.r().is_multiple_of(small.r()) || big_group.level != chi.group.level
    {
        return Err(Error::Mismatch);
    }
    if big_group.level == 0 {
        return Ok(Character::trivial(big_group));
    }
    let emb = Embedding::new(&small, &big)?;
    let e_big = big_group.exponent;
    debug_assert_eq!(e_big, chi.group.exponent);
    let digits: Vec<u64> = big_group
        .gens
        .iter()
        .zip(&big_group.orders)
        .map(|(g, &m)| {
            let rep = MonicPoly::new(g.entries().to_vec());
            let norm = crate::field::norm_poly(&big, &small, &emb, &rep);
            let class = coset::coset_of(&norm, chi.group.level);
            let t = chi.exponent_at_index(class.index(&small));
            let step = e_big / m;
            assert!(t.is_multiple_of(step), "lift value order divides generator order");
            t / step
        })
        .collect();
    Ok(Character::from_digits(big_group, &digits))
}

/// The pair (lambda, mu) describing the restriction of a characteristic-2
/// level-3 character to the subgroup of classes (0, a, b): the value
/// there is the additive character of lambda a + mu b.
pub fn fomenko_epsilon(chi: &Character) -> Result<(FieldElement, FieldElement)> {
    let group = &chi.group;
    let field = group.field.clone();
    if field.p() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            got: field.p(),
        });
    }
    if group.level != 3 {
        return Err(Error::WrongLevel {
            expected: "3",
            got: group.level,
        });
    }
    let e = group.exponent; // 4
    let bit_of = |class: CosetClass| -> Result<u64> {
        let t = chi.exponent_at_index(class.index(&field));
        // values on this subgroup are +-1
        if !t.is_multiple_of(e / 2) {
            return Err(Error::IdentityFailed(
                "character is not +-1 on the (0,a,b) subgroup".into(),
            ));
        }
        Ok(t / (e / 2))
    };
    let solve = |component: usize| -> Result<FieldElement> {
        'cand: for lam in field.elements() {
            for x in field.elements() {
                let mut entries = vec![FieldElement::ZERO; 3];
                entries[component] = x;
                let bit = bit_of(CosetClass::new(entries))?;
                if bit != field.trace(field.mul(lam, x)) {
                    continue 'cand;
                }
            }
            return Ok(lam);
        }
        unreachable!("trace functionals exhaust the dual of F_q")
    };
    Ok((solve(1)?, solve(2)?))
}
