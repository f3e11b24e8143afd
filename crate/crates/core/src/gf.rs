//! Arithmetic in the finite field `F_q`, `q = p^m`, with deterministic
//! construction.
//!
//! Elements are residues in `F_p[x]` modulo a fixed monic irreducible
//! polynomial of degree `m`. The modulus is not configurable: it is the
//! lexicographically smallest monic irreducible of degree `m`, comparing
//! coefficient vectors from the constant term upward, so two runs (or two
//! machines) always agree on what "the" field `F_q` is. For `m = 1` the
//! modulus is `x` itself and arithmetic is plain arithmetic mod `p`.
//!
//! An element is serialized as the integer `c_0 + c_1 p + ... + c_{m-1}
//! p^{m-1}` built from its coefficient vector, giving a canonical bijection
//! with `[0, q)`. The distinguished generator `gamma` of the multiplicative
//! group is the first element in this serialization order whose order is
//! exactly `q - 1`.
//!
//! Multiplication runs on exp/log tables over `gamma`, addition digitwise
//! in base `p`; both are exposed raw (on serialized values) for hot loops
//! and wrapped by [`FieldElement`] for everything else.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest field size allowed by [`FieldSpec::make`]; use
/// [`FieldSpec::make_bounded`] to raise it explicitly.
pub const DEFAULT_SIZE_BOUND: u64 = 256;

/// A fully constructed finite field `F_{p^m}`.
///
/// Obtained from [`FieldSpec::make`] as an `Arc`; all elements, polynomials,
/// and matrices over the field share that `Arc`. Two specs compare equal
/// when they describe the same field (same `p`, `m`, and modulus), whether
/// or not they are the same allocation.
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients of the modulus from the constant term up; length `m + 1`,
    /// last entry 1.
    modulus: Vec<u32>,
    /// Serialized value of the distinguished multiplicative generator.
    gamma: u32,
    /// `exp[k]` = serialized value of `gamma^k`, for `k` in `[0, q-1)`.
    exp: Vec<u32>,
    /// `log[v]` = the `k` with `exp[k] = v`, for `v` in `[1, q)`; entry 0 unused.
    log: Vec<u32>,
    /// Factorials mod `p`: `fact[k] = k! mod p` for `k < p`.
    fact: Vec<u32>,
    /// Inverse factorials mod `p`.
    inv_fact: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(p={}, m={}, modulus={:?})", self.p, self.m, self.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over `F_p` as coefficient vectors from the constant term up,
/// used only during field construction (modulus search, bootstrap
/// multiplication before the log tables exist).
mod prime_poly {
    use alloc::vec;
    use alloc::vec::Vec;

    /// Remainder of `a` modulo the monic polynomial `b`, coefficients mod `p`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        debug_assert_eq!(*b.last().unwrap(), 1, "divisor must be monic");
        let mut r: Vec<u32> = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db {
            let lead = *r.last().unwrap();
            let dr = r.len() - 1;
            if lead != 0 {
                // Subtract lead * x^(dr - db) * b.
                for k in 0..=db {
                    let idx = dr - db + k;
                    let sub = (lead * b[k]) % p;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
        }
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
        r
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Product of `a` and `b` reduced modulo the monic `modulus`.
    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&prod, modulus, p)
    }
}

fn value_to_coeffs(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; m as usize];
    for c in coeffs.iter_mut() {
        *c = v % p;
        v /= p;
    }
    coeffs
}

fn coeffs_to_value(coeffs: &[u32], p: u32) -> u32 {
    let mut v = 0u32;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v
}

/// True when `candidate` (monic, coefficients from constant term up) has no
/// monic divisor of degree between 1 and half its own degree.
fn is_irreducible(candidate: &[u32], p: u32) -> bool {
    let deg = candidate.len() - 1;
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d, low coefficients counting in base p.
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = low;
            for _ in 0..d {
                divisor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            divisor.push(1);
            if prime_poly::is_zero(&prime_poly::rem(candidate, &divisor, p)) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Construct `F_{p^m}` with the default size bound of
    /// [`DEFAULT_SIZE_BOUND`].
    pub fn make(p: u32, m: u32) -> Result<Arc<FieldSpec>> {
        FieldSpec::make_bounded(p, m, DEFAULT_SIZE_BOUND)
    }

    /// Construct `F_{p^m}`, allowing `q = p^m` up to `bound`.
    pub fn make_bounded(p: u32, m: u32, bound: u64) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if m < 1 {
            return Err(Error::BadExtensionDegree { m });
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= bound);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p, m, bound }),
        };

        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            // Lexicographically first monic irreducible of degree m, comparing
            // coefficients from the constant term upward.
            let mut found = None;
            'search: for c0 in 0..(p as u64).pow(m) {
                // The loop variable in base p, *most significant digit first*,
                // is the lexicographic rank of the low-coefficient vector.
                let mut coeffs = vec![0u32; m as usize];
                let mut rest = c0;
                for k in (0..m as usize).rev() {
                    coeffs[k] = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                coeffs.push(1);
                if is_irreducible(&coeffs, p) {
                    found = Some(coeffs);
                    break 'search;
                }
            }
            // A monic irreducible of every degree exists over every prime field.
            found.expect("no irreducible polynomial found")
        };

        // Bootstrap multiplication straight off the modulus to find gamma.
        let raw_mul = |a: u32, b: u32| -> u32 {
            let ca = value_to_coeffs(a, p, m);
            let cb = value_to_coeffs(b, p, m);
            let mut r = prime_poly::mul_mod(&ca, &cb, &modulus, p);
            r.resize(m as usize, 0);
            coeffs_to_value(&r, p)
        };

        let mut gamma = 0;
        'outer: for v in 1..q {
            let mut acc = v;
            let mut order = 1u32;
            while acc != 1 {
                acc = raw_mul(acc, v);
                order += 1;
                if order > q - 1 {
                    continue 'outer;
                }
            }
            if order == q - 1 {
                gamma = v;
                break;
            }
        }
        debug_assert!(gamma != 0 || q == 2);
        if q == 2 {
            gamma = 1;
        }

        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for k in 0..q - 1 {
            exp.push(acc);
            log[acc as usize] = k;
            acc = raw_mul(acc, gamma);
        }
        debug_assert_eq!(acc, 1, "gamma must have order q - 1");

        let mut fact = vec![1u32; p as usize];
        for k in 1..p as usize {
            fact[k] = (fact[k - 1] * k as u32) % p;
        }
        let inv_fact = fact
            .iter()
            .map(|&f| {
                // Fermat inverse mod p.
                let mut result = 1u64;
                let mut base = f as u64;
                let mut e = p as u64 - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % p as u64;
                    }
                    base = base * base % p as u64;
                    e >>= 1;
                }
                result as u32
            })
            .collect();

        Ok(Arc::new(FieldSpec {
            p,
            m,
            q,
            modulus,
            gamma,
            exp,
            log,
            fact,
            inv_fact,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients from the constant term up; length `m + 1`, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The element with serialized value `v`; panics when `v >= q`.
    pub fn element(self: &Arc<Self>, v: u32) -> FieldElement {
        assert!(v < self.q, "value {v} is outside F_{}", self.q);
        FieldElement { spec: Arc::clone(self), val: v }
    }

    /// The element with serialized value `v`, validating the range.
    pub fn try_element(self: &Arc<Self>, v: u64) -> Result<FieldElement> {
        if v >= self.q as u64 {
            return Err(Error::ElementOutOfRange { value: v, q: self.q });
        }
        Ok(self.element(v as u32))
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.element(0)
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.element(1)
    }

    /// The distinguished multiplicative generator.
    pub fn gamma(self: &Arc<Self>) -> FieldElement {
        self.element(self.gamma)
    }

    /// All `q` elements in serialization order `0, 1, ..., q - 1`.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| self.element(v))
    }

    /// Image of the integer `k` in the prime subfield (i.e. `k mod p`).
    pub fn embed_integer(self: &Arc<Self>, k: i64) -> FieldElement {
        self.element(k.rem_euclid(self.p as i64) as u32)
    }

    /// Image of `k!` in the field. Zero exactly when `k >= p`.
    pub fn factorial_image(self: &Arc<Self>, k: u64) -> FieldElement {
        if k >= self.p as u64 {
            return self.zero();
        }
        self.element(self.fact[k as usize])
    }

    /// Image of the multinomial coefficient `total! / (parts[0]! ... )` in
    /// the field, computed as a chain of binomial coefficients each reduced
    /// by Lucas digit products, so arbitrarily large totals stay exact.
    pub fn multinomial_image(self: &Arc<Self>, total: u64, parts: &[u64]) -> Result<FieldElement> {
        let sum = parts.iter().try_fold(0u64, |acc, &part| acc.checked_add(part));
        match sum {
            Some(s) if s == total => {}
            Some(s) => return Err(Error::PartsSumMismatch { total, sum: s }),
            None => return Err(Error::PartsSumMismatch { total, sum: u64::MAX }),
        }
        let mut remaining = total;
        let mut acc = 1u32;
        for &part in parts {
            acc = (acc * self.binomial_mod_p(remaining, part)) % self.p;
            if acc == 0 {
                return Ok(self.zero());
            }
            remaining -= part;
        }
        Ok(self.element(acc))
    }

    /// Image of the multinomial coefficient computed digit-by-digit in base
    /// `p`: zero as soon as adding the parts carries, otherwise the product
    /// of the per-digit multinomials. An independent route to the same value
    /// as [`Self::multinomial_image`].
    pub fn multinomial_digitwise(self: &Arc<Self>, total: u64, parts: &[u64]) -> Result<FieldElement> {
        let sum = parts.iter().try_fold(0u64, |acc, &part| acc.checked_add(part));
        match sum {
            Some(s) if s == total => {}
            Some(s) => return Err(Error::PartsSumMismatch { total, sum: s }),
            None => return Err(Error::PartsSumMismatch { total, sum: u64::MAX }),
        }
        let p = self.p as u64;
        let mut t = total;
        let mut ps: Vec<u64> = parts.to_vec();
        let mut acc = 1u32;
        while t > 0 {
            let td = (t % p) as usize;
            let digit_sum: u64 = ps.iter().map(|x| x % p).sum();
            if digit_sum != td as u64 {
                return Ok(self.zero());
            }
            acc = (acc * self.fact[td]) % self.p;
            for x in ps.iter_mut() {
                acc = (acc * self.inv_fact[(*x % p) as usize]) % self.p;
                *x /= p;
            }
            t /= p;
        }
        // All remaining part digits must be zero once the total runs out.
        if ps.iter().any(|&x| x != 0) {
            return Ok(self.zero());
        }
        Ok(self.element(acc))
    }

    /// Binomial coefficient `C(n, k)` mod `p` by Lucas digit products.
    fn binomial_mod_p(&self, n: u64, k: u64) -> u32 {
        let p = self.p as u64;
        let mut n = n;
        let mut k = k;
        let mut acc = 1u32;
        while k > 0 || n > 0 {
            let nd = (n % p) as usize;
            let kd = (k % p) as usize;
            if kd > nd {
                return 0;
            }
            acc = (acc * self.fact[nd]) % self.p;
            acc = (acc * self.inv_fact[kd]) % self.p;
            acc = (acc * self.inv_fact[nd - kd]) % self.p;
            n /= p;
            k /= p;
        }
        acc
    }

    // ------------------------------------------------------------------
    // Raw operations on serialized values, for hot loops.
    // ------------------------------------------------------------------

    /// Sum of two serialized values.
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if self.p == 2 {
            return a ^ b;
        }
        let mut result = 0u32;
        let mut scale = 1u32;
        let (mut a, mut b) = (a, b);
        while a > 0 || b > 0 {
            result += (a % self.p + b % self.p) % self.p * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        result
    }

    /// Negation of a serialized value.
    pub fn neg_raw(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if self.p == 2 {
            return a;
        }
        let mut result = 0u32;
        let mut scale = 1u32;
        let mut a = a;
        while a > 0 {
            result += (self.p - a % self.p) % self.p * scale;
            a /= self.p;
            scale *= self.p;
        }
        result
    }

    /// Difference of two serialized values.
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    /// Product of two serialized values.
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        let idx = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[idx as usize]
    }

    /// Inverse of a serialized value, `None` for zero.
    pub fn inv_raw(&self, a: u32) -> Option<u32> {
        debug_assert!(a < self.q);
        if a == 0 {
            return None;
        }
        let idx = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[idx as usize])
    }

    /// Power of a serialized value; `0^0 = 1`, and exponents of nonzero
    /// bases reduce modulo `q - 1`.
    pub fn pow_raw(&self, a: u32, k: u64) -> u32 {
        debug_assert!(a < self.q);
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let idx = (self.log[a as usize] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[idx as usize]
    }
}

/// An element of a [`FieldSpec`], carrying its field.
///
/// Arithmetic operators require both operands to live in the same field and
/// panic otherwise; that is a programming error, not an input error.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    val: u32,
}

impl FieldElement {
    /// Serialized value in `[0, q)`.
    pub fn val(&self) -> u32 {
        self.val
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.val == 0
    }

    pub fn is_one(&self) -> bool {
        self.val == 1
    }

    fn assert_same_spec(&self, other: &FieldElement) {
        assert!(
            Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec,
            "elements of different fields: {} vs {}",
            self.spec,
            other.spec,
        );
    }

    /// `self^k`; `0^0 = 1`, exponents of nonzero bases reduce mod `q - 1`.
    pub fn pow(&self, k: u64) -> FieldElement {
        FieldElement { spec: Arc::clone(&self.spec), val: self.spec.pow_raw(self.val, k) }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self) -> Option<FieldElement> {
        self.spec
            .inv_raw(self.val)
            .map(|v| FieldElement { spec: Arc::clone(&self.spec), val: v })
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        self.checked_inv().expect("inverse of zero")
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val
            && (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.val, self.spec)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.val)
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl<'b> $trait<&'b FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                self.assert_same_spec(rhs);
                FieldElement {
                    spec: Arc::clone(&self.spec),
                    val: self.spec.$raw(self.val, rhs.val),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

field_binop!(Add, add, add_raw);
field_binop!(Sub, sub, sub_raw);
field_binop!(Mul, mul, mul_raw);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_spec(rhs);
        self * rhs.inv()
    }
}

impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { spec: Arc::clone(&self.spec), val: self.spec.neg_raw(self.val) }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Prime powers up to the bound, as (p, m) pairs.
    fn prime_powers(bound: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for p in 2..=bound {
            if !is_prime(p) {
                continue;
            }
            let mut q = p as u64;
            let mut m = 1;
            while q <= bound as u64 {
                out.push((p, m));
                q *= p as u64;
                m += 1;
            }
        }
        out
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::make(1, 1).unwrap_err(), Error::NotPrime { p: 1 });
        assert_eq!(FieldSpec::make(4, 1).unwrap_err(), Error::NotPrime { p: 4 });
        assert_eq!(FieldSpec::make(0, 2).unwrap_err(), Error::NotPrime { p: 0 });
        assert_eq!(FieldSpec::make(2, 0).unwrap_err(), Error::BadExtensionDegree { m: 0 });
        assert_eq!(
            FieldSpec::make(2, 9).unwrap_err(),
            Error::FieldTooLarge { p: 2, m: 9, bound: 256 }
        );
        assert!(FieldSpec::make_bounded(2, 9, 1024).is_ok());
    }

    #[test]
    fn prime_field_modulus_is_x() {
        for p in [2, 3, 5, 7, 11, 13] {
            let spec = FieldSpec::make(p, 1).unwrap();
            assert_eq!(spec.modulus(), &[0, 1]);
            assert_eq!(spec.q(), p);
        }
    }

    #[test]
    fn f4_is_the_expected_field() {
        let f4 = FieldSpec::make(2, 2).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2.
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.gamma().val(), 2);
        // omega * (omega + 1) = 1 in F_4.
        let omega = f4.element(2);
        let omega1 = f4.element(3);
        assert_eq!(&omega * &omega1, f4.one());
        assert_eq!(&omega + &omega1, f4.one());
        assert_eq!(omega.pow(3), f4.one());
    }

    /// Independent modulus oracle for F_9: root-search over all monic
    /// quadratics in lexicographic order (constant term first).
    #[test]
    fn f9_modulus_matches_root_search_oracle() {
        let mut oracle = None;
        'outer: for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let has_root = (0..3u32).any(|x| (x * x + c1 * x + c0) % 3 == 0);
                if !has_root {
                    oracle = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let f9 = FieldSpec::make(3, 2).unwrap();
        assert_eq!(f9.modulus(), oracle.unwrap().as_slice());
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    /// Independent gamma oracle for F_9 = F_3[x]/(x^2+1): naive coefficient
    /// arithmetic, no exp/log tables.
    #[test]
    fn f9_gamma_matches_naive_order_computation() {
        // (a0 + a1 x)(b0 + b1 x) mod (x^2 + 1) = (a0 b0 - a1 b1) + (a0 b1 + a1 b0) x.
        let mul = |a: u32, b: u32| -> u32 {
            let (a0, a1) = (a % 3, a / 3);
            let (b0, b1) = (b % 3, b / 3);
            let c0 = (a0 * b0 + 2 * a1 * b1) % 3;
            let c1 = (a0 * b1 + a1 * b0) % 3;
            c0 + 3 * c1
        };
        let order = |v: u32| -> u32 {
            let mut acc = v;
            let mut k = 1;
            while acc != 1 {
                acc = mul(acc, v);
                k += 1;
            }
            k
        };
        let first_generator = (1..9).find(|&v| order(v) == 8).unwrap();
        let f9 = FieldSpec::make(3, 2).unwrap();
        assert_eq!(f9.gamma().val(), first_generator);
        assert_eq!(f9.gamma().val(), 4);
        // And gamma really has order 8 through the table arithmetic as well.
        let gamma = f9.gamma();
        let mut acc = gamma.clone();
        for k in 1..8 {
            assert_ne!(acc, f9.one(), "gamma^{k} must not be 1");
            acc = &acc * &gamma;
        }
        assert_eq!(acc, f9.one());
    }

    /// Table arithmetic agrees with naive polynomial arithmetic for F_8 and
    /// F_9, exhaustively over all pairs.
    #[test]
    fn table_arithmetic_matches_polynomial_oracle() {
        for (p, m) in [(2u32, 3u32), (3, 2)] {
            let spec = FieldSpec::make(p, m).unwrap();
            let q = spec.q();
            let naive_mul = |a: u32, b: u32| -> u32 {
                let ca = value_to_coeffs(a, p, m);
                let cb = value_to_coeffs(b, p, m);
                let mut r = prime_poly::mul_mod(&ca, &cb, spec.modulus(), p);
                r.resize(m as usize, 0);
                coeffs_to_value(&r, p)
            };
            let naive_add = |a: u32, b: u32| -> u32 {
                let ca = value_to_coeffs(a, p, m);
                let cb = value_to_coeffs(b, p, m);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                coeffs_to_value(&sum, p)
            };
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(spec.mul_raw(a, b), naive_mul(a, b), "mul {a} {b} in F_{q}");
                    assert_eq!(spec.add_raw(a, b), naive_add(a, b), "add {a} {b} in F_{q}");
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_has_exponent_q_minus_1() {
        for (p, m) in prime_powers(64) {
            let spec = FieldSpec::make(p, m).unwrap();
            for a in spec.elements() {
                if !a.is_zero() {
                    assert_eq!(a.pow(spec.q() as u64 - 1), spec.one());
                    assert_eq!(&a * &a.inv(), spec.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for (p, m) in prime_powers(16) {
            let spec = FieldSpec::make(p, m).unwrap();
            for a in spec.elements() {
                for b in spec.elements() {
                    let lhs = (&a + &b).pow(p as u64);
                    let rhs = a.pow(p as u64) + b.pow(p as u64);
                    assert_eq!(lhs, rhs, "Frobenius failed at {a:?}, {b:?}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold_on_small_fields() {
        for (p, m) in prime_powers(9) {
            let spec = FieldSpec::make(p, m).unwrap();
            for a in spec.elements() {
                for b in spec.elements() {
                    assert_eq!(&a + &b, &b + &a);
                    assert_eq!(&a * &b, &b * &a);
                    assert_eq!(&(&a + &b) - &b, a);
                    for c in spec.elements() {
                        let left = &a * &(&b + &c);
                        let right = &(&a * &b) + &(&a * &c);
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn embed_integer_reduces_mod_p() {
        let f4 = FieldSpec::make(2, 2).unwrap();
        assert_eq!(f4.embed_integer(6), f4.zero());
        assert_eq!(f4.embed_integer(7), f4.one());
        assert_eq!(f4.embed_integer(-1), f4.one());
        let f9 = FieldSpec::make(3, 2).unwrap();
        assert_eq!(f9.embed_integer(2), f9.element(2));
        assert_eq!(f9.embed_integer(-1), f9.element(2));
        assert_eq!(f9.embed_integer(3), f9.zero());
    }

    #[test]
    fn factorial_image_matches_exact_factorials() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let spec = FieldSpec::make(p, 1).unwrap();
            let mut exact: u128 = 1;
            for k in 0..=20u64 {
                if k > 0 {
                    exact *= k as u128;
                }
                let expected = (exact % p as u128) as u32;
                assert_eq!(spec.factorial_image(k).val(), expected, "{k}! mod {p}");
            }
        }
        // Vanishing is exactly at k >= p.
        let f4 = FieldSpec::make(2, 2).unwrap();
        assert_eq!(f4.factorial_image(0), f4.one());
        assert_eq!(f4.factorial_image(1), f4.one());
        assert!(f4.factorial_image(2).is_zero());
        assert!(f4.factorial_image(3).is_zero());
        let f9 = FieldSpec::make(3, 2).unwrap();
        assert_eq!(f9.factorial_image(2), f9.element(2));
        assert!(f9.factorial_image(3).is_zero());
    }

    fn exact_multinomial(total: u64, parts: &[u64]) -> u128 {
        // Safe for totals <= 20.
        let fact = |k: u64| -> u128 { (1..=k as u128).product::<u128>().max(1) };
        let mut v = fact(total);
        for &part in parts {
            v /= fact(part);
        }
        v
    }

    #[test]
    fn multinomial_matches_exact_values() {
        for p in [2u32, 3, 5, 7] {
            let spec = FieldSpec::make(p, 1).unwrap();
            for total in 0..=12u64 {
                for a in 0..=total {
                    for b in 0..=total - a {
                        let c = total - a - b;
                        let expected = (exact_multinomial(total, &[a, b, c]) % p as u128) as u32;
                        let got = spec.multinomial_image(total, &[a, b, c]).unwrap();
                        assert_eq!(got.val(), expected, "({total}; {a},{b},{c}) mod {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn multinomial_routes_agree() {
        for (p, m) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let spec = FieldSpec::make(p, m).unwrap();
            for total in 0..=30u64 {
                for a in 0..=total {
                    for b in 0..=total - a {
                        let c = total - a - b;
                        let lhs = spec.multinomial_image(total, &[a, b, c]).unwrap();
                        let rhs = spec.multinomial_digitwise(total, &[a, b, c]).unwrap();
                        assert_eq!(lhs, rhs, "({total}; {a},{b},{c}) mod {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn multinomial_handles_special_shapes() {
        let f2 = FieldSpec::make(2, 1).unwrap();
        assert!(f2.multinomial_image(2, &[1, 1]).unwrap().is_zero());
        // C(p^k; p^k, 0) = 1 in every characteristic.
        for (p, m) in [(2u32, 2u32), (3, 1), (5, 1)] {
            let spec = FieldSpec::make(p, m).unwrap();
            for k in 0..=4u32 {
                let pk = (p as u64).pow(k);
                assert_eq!(spec.multinomial_image(pk, &[pk, 0]).unwrap(), spec.one());
            }
        }
        // Huge totals stay exact: C(2^40; 2^40) = 1, and a carry kills it.
        let f4 = FieldSpec::make(2, 2).unwrap();
        let big = 1u64 << 40;
        assert_eq!(f4.multinomial_image(big, &[big]).unwrap(), f4.one());
        assert!(f4.multinomial_image(big, &[big / 2, big / 2]).unwrap().is_zero());
        // Mismatched parts are rejected.
        assert_eq!(
            f4.multinomial_image(3, &[1, 1]).unwrap_err(),
            Error::PartsSumMismatch { total: 3, sum: 2 }
        );
    }

    #[test]
    fn powers_reduce_mod_q_minus_1() {
        let f9 = FieldSpec::make(3, 2).unwrap();
        for a in f9.elements().filter(|a| !a.is_zero()) {
            for k in 0..20u64 {
                assert_eq!(a.pow(k + 8), a.pow(k));
            }
        }
        assert_eq!(f9.zero().pow(0), f9.one());
        assert!(f9.zero().pow(5).is_zero());
    }

    #[test]
    fn elements_iterate_in_serialization_order() {
        let f8 = FieldSpec::make(2, 3).unwrap();
        let vals: Vec<u32> = f8.elements().map(|e| e.val()).collect();
        assert_eq!(vals, (0..8).collect::<Vec<u32>>());
        assert_eq!(f8.element(5).val(), 5);
    }

    #[test]
    fn checked_inverse_of_zero_is_none() {
        let f4 = FieldSpec::make(2, 2).unwrap();
        assert!(f4.zero().checked_inv().is_none());
        assert_eq!(f4.try_element(4).unwrap_err(), Error::ElementOutOfRange { value: 4, q: 4 });
    }

    #[test]
    #[should_panic(expected = "elements of different fields")]
    fn mixing_fields_panics() {
        let f4 = FieldSpec::make(2, 2).unwrap();
        let f9 = FieldSpec::make(3, 2).unwrap();
        let _ = f4.one() + f9.one();
    }

    #[test]
    fn equal_fields_from_separate_constructions_interoperate() {
        let a = FieldSpec::make(2, 2).unwrap();
        let b = FieldSpec::make(2, 2).unwrap();
        assert!(!Arc::ptr_eq(&a, &b));
        assert_eq!(a.element(2) + b.element(3), a.element(1));
    }
}
