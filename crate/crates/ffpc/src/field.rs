//! Exact arithmetic in F_p and F_{p^r} in a polynomial basis, together
//! with the pieces of the field tower the rest of the crate needs:
//! trace to the prime field, the additive character exponent, subfield
//! embeddings, and coefficientwise Frobenius / norms of polynomials.
//!
//! Elements are encoded as integers `a_0 + a_1 p + ... + a_{r-1} p^{r-1}`
//! in `[0, q)`; that encoding is also the text form used by the CLI.
//! Fields are desk scale by policy (`q <= 2^16`), so multiplication goes
//! through discrete-log tables and, for small q, full q x q tables.

use std::fmt;
use std::sync::Arc;

use crate::arith::{self, is_prime};
use crate::error::{Error, Result};
use crate::poly::MonicPoly;

/// Largest q for which full q x q add/mul tables are materialized.
const TABLE_LIMIT: u64 = 1024;

/// An element of F_{p^r}, stored by its integer encoding in [0, q).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn encoding(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Descriptor of F_{p^r}: the modulus and all derived lookup tables.
/// Immutable after construction; arithmetic methods are pure.
pub struct FieldDesc {
    p: u64,
    r: u32,
    q: u64,
    /// Monic irreducible modulus, little-endian, length r+1.
    modulus: Vec<u64>,
    /// exp[i] = g^i for a fixed generator g, length q-1.
    exp: Vec<u16>,
    /// log[enc] for enc != 0; log[0] unused.
    log: Vec<u32>,
    /// Full multiplication/addition tables when q <= TABLE_LIMIT.
    mul_table: Vec<u16>,
    add_table: Vec<u16>,
    neg_table: Vec<u16>,
    /// trace to F_p, as residues in [0, p).
    trace_table: Vec<u16>,
    /// x -> x^p.
    frob_table: Vec<u16>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldDesc(F_{}^{}, modulus {:?})", self.p, self.r, self.modulus)
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}
impl Eq for FieldDesc {}

// ---------------------------------------------------------------------
// F_p[x] helpers used only during construction (before tables exist).
// Polynomials are little-endian coefficient vectors of residues mod p.

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    // f monic of degree >= 1
    let d = f.len() - 1;
    while a.len() > d {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - d;
        if lead != 0 {
            for i in 0..=d {
                a[shift + i] = (a[shift + i] + p - lead * f[i] % p) % p;
            }
        }
        a.pop();
    }
    fp_trim(&mut a);
    a
}

fn fp_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    fp_rem(prod, f, p)
}

/// Irreducibility over F_p of a monic polynomial of degree r >= 1:
/// no factor of degree <= r/2, tested by gcd with x^{p^k} - x.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    debug_assert!(r >= 1 && *f.last().unwrap() == 1);
    let mut h = vec![0u64, 1]; // x
    h = fp_rem(h, f, p);
    for _k in 1..=r / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mul_mod(&acc, &base, f, p);
            }
            base = fp_mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        // gcd(f, h - x) must be 1
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        let g = fp_gcd_euclid(f.to_vec(), diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn fp_gcd_euclid(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let lead_inv = arith::inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        let r = fp_rem(a, &monic, p);
        a = monic;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = arith::inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

// ---------------------------------------------------------------------

impl FieldDesc {
    /// Construct F_{p^r}. When `modulus` is `None`, the lexicographically
    /// smallest monic irreducible of degree r is selected (coefficient
    /// tuples compared low-degree-first), which makes runs reproducible.
    pub fn new(p: u64, r: u32, modulus: Option<Vec<u64>>) -> Result<Arc<FieldDesc>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::ModulusDegree { expected: 1, got: 0 });
        }
        let mut q: u64 = 1;
        for _ in 0..r {
            q = q.saturating_mul(p);
            if q > 1 << 16 {
                return Err(Error::FieldTooLarge { q });
            }
        }
        let modulus = match modulus {
            Some(mut m) => {
                fp_trim(&mut m);
                if m.len() != r as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::ModulusDegree {
                        expected: r,
                        got: m.len().saturating_sub(1) as u32,
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::ElementRange {
                        value: *m.iter().find(|&&c| c >= p).unwrap(),
                        q: p,
                    });
                }
                if !fp_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => Self::default_modulus(p, r),
        };

        let mut fd = FieldDesc {
            p,
            r,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            mul_table: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
            trace_table: Vec::new(),
            frob_table: Vec::new(),
        };
        fd.build_tables();
        Ok(Arc::new(fd))
    }

    /// Parse "p^r" or "p^r:m" where m is the integer encoding of the
    /// modulus, sum of c_i p^i including the leading 1.
    pub fn parse_spec(spec: &str) -> Result<Arc<FieldDesc>> {
        let (base, modulus) = match spec.split_once(':') {
            Some((b, m)) => {
                let enc: u64 = m
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus encoding '{m}'")))?;
                (b, Some(enc))
            }
            None => (spec, None),
        };
        let (p, r) = match base.split_once('^') {
            Some((ps, rs)) => {
                let p = ps
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field spec '{spec}'")))?;
                let r = rs
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field spec '{spec}'")))?;
                (p, r)
            }
            None => (
                base.parse()
                    .map_err(|_| Error::Parse(format!("bad field spec '{spec}'")))?,
                1,
            ),
        };
        let modulus = modulus.map(|enc| {
            let mut digits = Vec::new();
            let mut v = enc;
            while v > 0 {
                digits.push(v % p);
                v /= p;
            }
            digits
        });
        FieldDesc::new(p, r, modulus)
    }

    /// Canonical spec string "p^r:m".
    pub fn spec_string(&self) -> String {
        let mut enc: u64 = 0;
        for &c in self.modulus.iter().rev() {
            enc = enc * self.p + c;
        }
        format!("{}^{}:{}", self.p, self.r, enc)
    }

    pub fn short_name(&self) -> String {
        format!("{}^{}", self.p, self.r)
    }

    fn default_modulus(p: u64, r: u32) -> Vec<u64> {
        // Scan tuples (c_0, ..., c_{r-1}) in lexicographic order,
        // low-degree coefficient compared first.
        let mut count: u64 = 1;
        for _ in 0..r {
            count *= p;
        }
        for k in 0..count {
            let mut digits = vec![0u64; r as usize + 1];
            digits[r as usize] = 1;
            let mut v = k;
            // c_0 is the most significant comparison position
            for i in (0..r as usize).rev() {
                digits[i] = v % p;
                v /= p;
            }
            if fp_is_irreducible(&digits, p) {
                return digits;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let p = self.p;

        // Discrete-log tables over a multiplicative generator.
        let gen = self.find_generator();
        let mut exp = vec![0u16; q - 1];
        let mut log = vec![0u32; q];
        let mut acc = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_slow(acc, gen);
        }
        debug_assert_eq!(acc, FieldElement::ONE);
        self.exp = exp;
        self.log = log;

        // Trace and Frobenius per element.
        let mut trace_table = vec![0u16; q];
        let mut frob_table = vec![0u16; q];
        for enc in 0..q as u64 {
            let x = FieldElement(enc as u16);
            let mut acc = x;
            let mut tr = acc;
            for _ in 1..self.r {
                acc = self.pow_slow(acc, p);
                tr = self.add_digits(tr, acc);
            }
            // trace lands in the prime subfield, whose encodings are < p
            debug_assert!(tr.encoding() < p);
            trace_table[enc as usize] = tr.0;
            frob_table[enc as usize] = self.pow_slow(x, p).0;
        }
        self.trace_table = trace_table;
        self.frob_table = frob_table;

        if self.q <= TABLE_LIMIT {
            let mut mul_table = vec![0u16; q * q];
            let mut add_table = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    add_table[a * q + b] =
                        self.add_digits(FieldElement(a as u16), FieldElement(b as u16)).0;
                    mul_table[a * q + b] = if a == 0 || b == 0 {
                        0
                    } else {
                        let e = (self.log[a] as u64 + self.log[b] as u64) % (self.q - 1);
                        self.exp[e as usize]
                    };
                }
            }
            self.mul_table = mul_table;
            self.add_table = add_table;
        }
        let mut neg_table = vec![0u16; q];
        for a in 0..q as u64 {
            let digits = self.decode(FieldElement(a as u16));
            let neg: Vec<u64> = digits.iter().map(|&d| (p - d) % p).collect();
            neg_table[a as usize] = self.encode(&neg).0;
        }
        self.neg_table = neg_table;
    }

    fn find_generator(&self) -> FieldElement {
        let order = self.q - 1;
        let mut prime_factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                prime_factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            prime_factors.push(m);
        }
        'cand: for enc in 1..self.q {
            let x = FieldElement(enc as u16);
            for &f in &prime_factors {
                if self.pow_slow(x, order / f) == FieldElement::ONE {
                    continue 'cand;
                }
            }
            return x;
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    // -- slow digit-based arithmetic, used to bootstrap tables and as the
    //    fallback when q > TABLE_LIMIT --

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        let (mut av, mut bv) = (a.encoding(), b.encoding());
        let mut out: u64 = 0;
        let mut place: u64 = 1;
        for _ in 0..self.r {
            out += (av % p + bv % p) % p * place;
            av /= p;
            bv /= p;
            place *= p;
        }
        FieldElement(out as u16)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let adig = self.decode(a);
        let bdig = self.decode(b);
        let prod = fp_mul_mod(&adig, &bdig, &self.modulus, self.p);
        self.encode(&prod)
    }

    fn pow_slow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    // -- public interface --

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Element from its integer encoding.
    pub fn el(&self, enc: u64) -> Result<FieldElement> {
        if enc < self.q {
            Ok(FieldElement(enc as u16))
        } else {
            Err(Error::ElementRange { value: enc, q: self.q })
        }
    }

    /// Residue k mod p as the prime-subfield element k * 1.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u16)
    }

    pub fn decode(&self, x: FieldElement) -> Vec<u64> {
        let mut v = x.encoding();
        let mut digits = vec![0u64; self.r as usize];
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    pub fn encode(&self, digits: &[u64]) -> FieldElement {
        debug_assert!(digits.len() <= self.r as usize);
        let mut out: u64 = 0;
        for &d in digits.iter().rev() {
            debug_assert!(d < self.p);
            out = out * self.p + d;
        }
        FieldElement(out as u16)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.add_table.is_empty() {
            FieldElement(self.add_table[a.0 as usize * self.q as usize + b.0 as usize])
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.mul_table.is_empty() {
            FieldElement(self.mul_table[a.0 as usize * self.q as usize + b.0 as usize])
        } else if a.is_zero() || b.is_zero() {
            FieldElement::ZERO
        } else {
            let e = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64)
                % (self.q - 1);
            FieldElement(self.exp[e as usize])
        }
    }

    /// Multiply by an integer scalar (k mod p).
    pub fn int_mul(&self, k: i64, x: FieldElement) -> FieldElement {
        self.mul(self.from_int(k), x)
    }

    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "division by zero in F_{}", self.q);
        let e = (self.q - 1 - self.log[a.0 as usize] as u64) % (self.q - 1);
        FieldElement(self.exp[e as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.is_zero() {
            return FieldElement::ZERO;
        }
        let le = self.log[x.0 as usize] as u64 * (e % (self.q - 1)) % (self.q - 1);
        FieldElement(self.exp[le as usize])
    }

    /// Trace down to F_p: x + x^p + ... + x^{p^{r-1}}, as a residue mod p.
    pub fn trace(&self, x: FieldElement) -> u64 {
        self.trace_table[x.0 as usize] as u64
    }

    /// Exponent k with additive character value omega_p^k.
    pub fn additive_character_exponent(&self, x: FieldElement) -> u64 {
        self.trace(x)
    }

    /// x -> x^p.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.frob_table[x.0 as usize])
    }

    /// x -> x^{s^i} for a subfield size s (power of p).
    pub fn frobenius_power(&self, x: FieldElement, s: u64, i: u32) -> FieldElement {
        if x.is_zero() {
            return x;
        }
        let e = arith::pow_mod(s % (self.q - 1), i as u64, self.q - 1);
        self.pow(x, e)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|e| FieldElement(e as u16))
    }
}

/// Embedding of a subfield F_{p^s} into F_{p^t} with s | t, realized by
/// sending the small field's generator to the lexicographically smallest
/// root of the small modulus in the big field.
pub struct Embedding {
    map: Vec<u16>,
    preimage: Vec<Option<u16>>,
}

impl Embedding {
    pub fn new(small: &FieldDesc, big: &FieldDesc) -> Result<Embedding> {
        if small.p != big.p || !big.r.is_multiple_of(small.r) {
            return Err(Error::Mismatch);
        }
        // scan for the smallest root of the small modulus in the big field
        let mut root = None;
        'outer: for cand in big.elements() {
            let mut val = FieldElement::ZERO;
            let mut pw = FieldElement::ONE;
            for &c in small.modulus.iter() {
                val = big.add(val, big.int_mul(c as i64, pw));
                pw = big.mul(pw, cand);
            }
            if val.is_zero() {
                root = Some(cand);
                break 'outer;
            }
        }
        let root = root.expect("the big field contains a root of the small modulus");
        let mut map = vec![0u16; small.q as usize];
        let mut preimage = vec![None; big.q as usize];
        for x in small.elements() {
            let digits = small.decode(x);
            let mut val = FieldElement::ZERO;
            let mut pw = FieldElement::ONE;
            for &d in &digits {
                val = big.add(val, big.int_mul(d as i64, pw));
                pw = big.mul(pw, root);
            }
            map[x.0 as usize] = val.0;
            preimage[val.0 as usize] = Some(x.0);
        }
        Ok(Embedding { map, preimage })
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.map[x.0 as usize])
    }

    /// Inverse image, if x lies in the embedded subfield.
    pub fn pull_back(&self, x: FieldElement) -> Option<FieldElement> {
        self.preimage[x.0 as usize].map(FieldElement)
    }
}

/// Coefficientwise Frobenius x -> x^{s^i} applied to a monic polynomial
/// over the big field, where s is the subfield size.
pub fn frobenius_poly(big: &FieldDesc, f: &MonicPoly, s: u64, i: u32) -> MonicPoly {
    MonicPoly::new(
        f.coeffs()
            .iter()
            .map(|&c| big.frobenius_power(c, s, i))
            .collect(),
    )
}

/// Norm of a monic polynomial over F_{s^m} down to F_s: the product of
/// its m Frobenius conjugates. The result's coefficients lie in the
/// embedded copy of F_s and are pulled back through `emb`.
pub fn norm_poly(
    big: &FieldDesc,
    small: &FieldDesc,
    emb: &Embedding,
    f: &MonicPoly,
) -> MonicPoly {
    let s = small.q();
    let m = big.r() / small.r();
    // product of sigma^1(f) .. sigma^m(f) in dense form over the big field
    let mut acc = vec![FieldElement::ONE];
    for i in 1..=m {
        let fi = frobenius_poly(big, f, s, i);
        acc = crate::poly::dense_mul(big, &acc, &fi.dense());
    }
    let n = acc.len() - 1;
    debug_assert_eq!(n as u32, m * f.degree());
    debug_assert_eq!(acc[n], FieldElement::ONE);
    let coeffs: Vec<FieldElement> = (0..n)
        .map(|j| {
            let c = acc[n - 1 - j];
            emb.pull_back(c)
                .expect("norm coefficients lie in the subfield")
        })
        .collect();
    MonicPoly::new(coeffs)
}
