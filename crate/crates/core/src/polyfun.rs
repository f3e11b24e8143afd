//! Reduced polynomial functions on `F_q^n` and the monomial bases of the
//! Reed-Muller quotients.
//!
//! A *reduced* polynomial has every exponent at most `q - 1`; reduced
//! polynomials biject with functions `F_q^n -> F_q`. Exponent reduction
//! follows the function semantics: an exponent `e > 0` becomes
//! `((e - 1) mod (q - 1)) + 1`, so nonzero exponents never collapse to zero
//! (as functions, `x^{q-1}` and `x^0` differ at `x = 0`).
//!
//! The quotient `H_q(r, n)` of polynomials of degree at most `r` modulo
//! those of degree below `r` has the monomial basis `Omega(q, n, r)`: all
//! reduced exponent tuples of weight exactly `r`, enumerated here in
//! ascending lexicographic order. [`HElement`] is a coset in that quotient,
//! held as its homogeneous degree-`r` representative.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// An exponent tuple `(i_1, ..., i_n)`; ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentTuple(Vec<u32>);

impl fmt::Debug for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl ExponentTuple {
    pub fn new(entries: Vec<u32>) -> ExponentTuple {
        ExponentTuple(entries)
    }

    /// Validating constructor: every entry must be at most `q - 1`.
    pub fn reduced(entries: Vec<u32>, q: u32) -> Result<ExponentTuple> {
        for &e in &entries {
            if e > q - 1 {
                return Err(Error::ExponentTooLarge { exponent: e as u64, max: q - 1 });
            }
        }
        Ok(ExponentTuple(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree of the monomial `X^i`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The complementary tuple with entries `q - 1 - i_j`.
    pub fn complement(&self, q: u32) -> ExponentTuple {
        ExponentTuple(self.0.iter().map(|&e| q - 1 - e).collect())
    }

    /// Base-`p` digit expansion: row `s` holds the `m` digits of `i_s`,
    /// least significant first.
    pub fn digit_matrix(&self, p: u32, m: u32) -> DigitMatrix {
        let mut digits = Vec::with_capacity(self.0.len() * m as usize);
        for &e in &self.0 {
            let mut rest = e;
            for _ in 0..m {
                digits.push(rest % p);
                rest /= p;
            }
        }
        DigitMatrix { n: self.0.len(), m: m as usize, digits }
    }

    /// Image of `i_1! i_2! ... i_n!` in the field.
    pub fn factorial_image(&self, spec: &Arc<FieldSpec>) -> FieldElement {
        let mut acc = spec.one();
        for &e in &self.0 {
            acc = acc * spec.factorial_image(e as u64);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

/// The `n x m` matrix of base-`p` digits of an exponent tuple: row `s`,
/// column `k` is the coefficient of `p^k` in `i_s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DigitMatrix {
    n: usize,
    m: usize,
    digits: Vec<u32>,
}

impl DigitMatrix {
    pub fn new(n: usize, m: usize) -> DigitMatrix {
        DigitMatrix { n, m, digits: vec![0; n * m] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn at(&self, row: usize, col: usize) -> u32 {
        assert!(row < self.n && col < self.m);
        self.digits[row * self.m + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: u32) {
        assert!(row < self.n && col < self.m);
        self.digits[row * self.m + col] = v;
    }

    /// Reassemble the exponent tuple from the digits.
    pub fn to_tuple(&self, p: u32) -> ExponentTuple {
        let entries = (0..self.n)
            .map(|row| {
                (0..self.m)
                    .rev()
                    .fold(0u32, |acc, col| acc * p + self.at(row, col))
            })
            .collect();
        ExponentTuple::new(entries)
    }

    /// Per-column digit sums `s_k = sum_s d_{s,k}`.
    pub fn column_sums(&self) -> Vec<u32> {
        (0..self.m)
            .map(|col| (0..self.n).map(|row| self.at(row, col)).sum())
            .collect()
    }
}

/// All reduced exponent tuples of weight `r` in `n` variables over `F_q`,
/// ascending lexicographically. This is the monomial basis of `H_q(r, n)`.
pub fn enumerate_omega(q: u32, n: usize, r: u32) -> Result<Vec<ExponentTuple>> {
    let max = n as u32 * (q - 1);
    if r > max {
        return Err(Error::DegreeOutOfRange { r, max });
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill_omega(q, n, r, 0, &mut current, &mut out);
    Ok(out)
}

fn fill_omega(q: u32, n: usize, remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<ExponentTuple>) {
    if pos == n {
        if remaining == 0 {
            out.push(ExponentTuple::new(current.clone()));
        }
        return;
    }
    let capacity_after = (n - pos - 1) as u32 * (q - 1);
    let lo = remaining.saturating_sub(capacity_after);
    let hi = remaining.min(q - 1);
    for e in lo..=hi {
        current[pos] = e;
        fill_omega(q, n, remaining - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// Reduce a single exponent by the function semantics.
pub fn reduce_exponent(e: u64, q: u32) -> u32 {
    if e == 0 {
        0
    } else {
        (((e - 1) % (q as u64 - 1)) + 1) as u32
    }
}

/// A polynomial function on `F_q^n` in reduced form: nonzero coefficients
/// only, every exponent at most `q - 1`, terms sorted lexicographically by
/// exponent tuple.
#[derive(Clone)]
pub struct ReducedPolynomial {
    spec: Arc<FieldSpec>,
    n: usize,
    /// Exponent tuple -> nonzero serialized coefficient.
    terms: BTreeMap<ExponentTuple, u32>,
}

impl PartialEq for ReducedPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.terms == other.terms
            && (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec)
    }
}

impl Eq for ReducedPolynomial {}

impl fmt::Debug for ReducedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*X^{:?}", exp.entries())?;
        }
        Ok(())
    }
}

impl ReducedPolynomial {
    pub fn zero(spec: &Arc<FieldSpec>, n: usize) -> ReducedPolynomial {
        ReducedPolynomial { spec: Arc::clone(spec), n, terms: BTreeMap::new() }
    }

    pub fn constant(spec: &Arc<FieldSpec>, n: usize, c: &FieldElement) -> ReducedPolynomial {
        let mut p = ReducedPolynomial::zero(spec, n);
        if !c.is_zero() {
            p.terms.insert(ExponentTuple::new(vec![0; n]), c.val());
        }
        p
    }

    /// The monomial `c * X^exp`; exponents must already be reduced.
    pub fn monomial(spec: &Arc<FieldSpec>, exp: ExponentTuple, coeff: &FieldElement) -> Result<ReducedPolynomial> {
        for &e in exp.entries() {
            if e > spec.q() - 1 {
                return Err(Error::ExponentTooLarge { exponent: e as u64, max: spec.q() - 1 });
            }
        }
        let n = exp.len();
        let mut p = ReducedPolynomial::zero(spec, n);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff.val());
        }
        Ok(p)
    }

    /// The variable `X_{index+1}` as a polynomial.
    pub fn variable(spec: &Arc<FieldSpec>, n: usize, index: usize) -> ReducedPolynomial {
        assert!(index < n);
        let mut exp = vec![0u32; n];
        exp[index] = 1;
        let mut p = ReducedPolynomial::zero(spec, n);
        p.terms.insert(ExponentTuple::new(exp), 1);
        p
    }

    /// Build from raw terms with arbitrary exponents, reducing exponents by
    /// the function semantics and summing collisions.
    pub fn from_raw_terms(
        spec: &Arc<FieldSpec>,
        n: usize,
        raw: &[(Vec<u64>, u32)],
    ) -> Result<ReducedPolynomial> {
        let mut p = ReducedPolynomial::zero(spec, n);
        for (exps, coeff) in raw {
            if exps.len() != n {
                return Err(Error::ArityMismatch { expected: n, got: exps.len() });
            }
            if *coeff >= spec.q() {
                return Err(Error::ElementOutOfRange { value: *coeff as u64, q: spec.q() });
            }
            let reduced: Vec<u32> = exps.iter().map(|&e| reduce_exponent(e, spec.q())).collect();
            p.add_term(ExponentTuple::new(reduced), *coeff);
        }
        Ok(p)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentTuple, u32)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Serialized coefficient of `X^exp` (zero when absent).
    pub fn coefficient(&self, exp: &ExponentTuple) -> u32 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.weight()).max()
    }

    fn add_term(&mut self, exp: ExponentTuple, coeff: u32) {
        if coeff == 0 {
            return;
        }
        debug_assert_eq!(exp.len(), self.n);
        let entry = self.terms.entry(exp);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.spec.add_raw(*o.get(), coeff);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &ReducedPolynomial) -> ReducedPolynomial {
        self.check_compatible(other);
        let mut out = self.clone();
        for (exp, &c) in &other.terms {
            out.add_term(exp.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &ReducedPolynomial) -> ReducedPolynomial {
        self.check_compatible(other);
        let mut out = self.clone();
        for (exp, &c) in &other.terms {
            out.add_term(exp.clone(), self.spec.neg_raw(c));
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> ReducedPolynomial {
        if c.is_zero() {
            return ReducedPolynomial::zero(&self.spec, self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, &v)| (e.clone(), self.spec.mul_raw(v, c.val())))
            .collect();
        ReducedPolynomial { spec: Arc::clone(&self.spec), n: self.n, terms }
    }

    /// Product, reducing exponents as they combine.
    pub fn mul(&self, other: &ReducedPolynomial) -> ReducedPolynomial {
        self.check_compatible(other);
        let q = self.spec.q();
        let mut out = ReducedPolynomial::zero(&self.spec, self.n);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exp: Vec<u32> = ea
                    .entries()
                    .iter()
                    .zip(eb.entries())
                    .map(|(&x, &y)| reduce_exponent(x as u64 + y as u64, q))
                    .collect();
                out.add_term(ExponentTuple::new(exp), self.spec.mul_raw(ca, cb));
            }
        }
        out
    }

    /// `self^k` by binary exponentiation; `f^0 = 1`.
    pub fn pow(&self, k: u32) -> ReducedPolynomial {
        let mut result = ReducedPolynomial::constant(&self.spec, self.n, &self.spec.one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// Value at a point given as serialized coordinates.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.n, "point arity mismatch");
        let mut acc = 0u32;
        for (exp, &c) in &self.terms {
            let mut term = c;
            for (&x, &e) in point.iter().zip(exp.entries()) {
                if e != 0 {
                    term = self.spec.mul_raw(term, self.spec.pow_raw(x, e as u64));
                    if term == 0 {
                        break;
                    }
                }
            }
            acc = self.spec.add_raw(acc, term);
        }
        acc
    }

    /// The sum of the terms of total degree exactly `r`.
    pub fn homogeneous_component(&self, r: u32) -> ReducedPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.weight() == r)
            .map(|(e, &c)| (e.clone(), c))
            .collect();
        ReducedPolynomial { spec: Arc::clone(&self.spec), n: self.n, terms }
    }

    /// The sum of the terms of total degree at most `r`.
    pub fn truncate_degree(&self, r: u32) -> ReducedPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.weight() <= r)
            .map(|(e, &c)| (e.clone(), c))
            .collect();
        ReducedPolynomial { spec: Arc::clone(&self.spec), n: self.n, terms }
    }

    fn check_compatible(&self, other: &ReducedPolynomial) {
        assert_eq!(self.n, other.n, "polynomials in different variable counts");
        assert!(
            Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec,
            "polynomials over different fields"
        );
    }
}

/// Sum of `f(x) g(x)` over every point `x` of `F_q^n`.
pub fn inner_product(f: &ReducedPolynomial, g: &ReducedPolynomial) -> FieldElement {
    assert_eq!(f.n(), g.n(), "inner product needs equal variable counts");
    let spec = f.spec();
    let table_f = ValueTable::of_polynomial(f);
    let table_g = ValueTable::of_polynomial(g);
    let mut acc = 0u32;
    for (a, b) in table_f.values().iter().zip(table_g.values()) {
        acc = spec.add_raw(acc, spec.mul_raw(*a, *b));
    }
    spec.element(acc)
}

/// The full table of values of a function `F_q^n -> F_q`.
///
/// Point order is lexicographic in the serialized coordinates with the last
/// variable moving fastest: index `t` decodes to coordinates by writing `t`
/// in base `q`, most significant digit first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValueTable {
    spec: Arc<FieldSpec>,
    n: usize,
    values: Vec<u32>,
}

impl ValueTable {
    /// Validating constructor from raw values.
    pub fn from_values(spec: &Arc<FieldSpec>, n: usize, values: Vec<u32>) -> Result<ValueTable> {
        let expected = (spec.q() as usize).pow(n as u32);
        if values.len() != expected {
            return Err(Error::ValueTableSize { expected, got: values.len() });
        }
        for &v in &values {
            if v >= spec.q() {
                return Err(Error::ElementOutOfRange { value: v as u64, q: spec.q() });
            }
        }
        Ok(ValueTable { spec: Arc::clone(spec), n, values })
    }

    /// Evaluate a polynomial at every point.
    pub fn of_polynomial(f: &ReducedPolynomial) -> ValueTable {
        let spec = f.spec();
        let q = spec.q() as usize;
        let count = q.pow(f.n() as u32);
        let mut point = vec![0u32; f.n()];
        let mut values = Vec::with_capacity(count);
        for idx in 0..count {
            decode_point(idx, q as u32, &mut point);
            values.push(f.evaluate(&point));
        }
        ValueTable { spec: Arc::clone(spec), n: f.n(), values }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coordinates of the point at table index `idx`.
    pub fn point(&self, idx: usize) -> Vec<u32> {
        let mut point = vec![0u32; self.n];
        decode_point(idx, self.spec.q(), &mut point);
        point
    }

    /// Table index of the given point.
    pub fn index_of(&self, point: &[u32]) -> usize {
        assert_eq!(point.len(), self.n);
        point.iter().fold(0usize, |acc, &x| acc * self.spec.q() as usize + x as usize)
    }

    /// The unique reduced polynomial with these values, by summation against
    /// the point indicators `prod_j (1 - (X_j - a_j)^(q-1))`.
    pub fn interpolate(&self) -> ReducedPolynomial {
        let spec = &self.spec;
        let q = spec.q();
        // Indicator of the value a in one variable, precomputed per a.
        let one = spec.one();
        let univariate_indicators: Vec<ReducedPolynomial> = (0..q)
            .map(|a| {
                let x = ReducedPolynomial::variable(spec, 1, 0);
                let a_poly = ReducedPolynomial::constant(spec, 1, &spec.element(a));
                let one_poly = ReducedPolynomial::constant(spec, 1, &one);
                one_poly.sub(&x.sub(&a_poly).pow(q - 1))
            })
            .collect();
        let mut acc = ReducedPolynomial::zero(spec, self.n);
        let mut point = vec![0u32; self.n];
        for (idx, &value) in self.values.iter().enumerate() {
            if value == 0 {
                continue;
            }
            decode_point(idx, q, &mut point);
            // Product over variables of the one-variable indicators, with the
            // variable index remapped from 1 to n.
            let mut indicator = ReducedPolynomial::constant(spec, self.n, &one);
            for (j, &a) in point.iter().enumerate() {
                let uni = &univariate_indicators[a as usize];
                let lifted_terms: Vec<(Vec<u64>, u32)> = uni
                    .terms()
                    .map(|(e, c)| {
                        let mut exp = vec![0u64; self.n];
                        exp[j] = e.entries()[0] as u64;
                        (exp, c)
                    })
                    .collect();
                let lifted = ReducedPolynomial::from_raw_terms(spec, self.n, &lifted_terms).unwrap();
                indicator = indicator.mul(&lifted);
            }
            acc = acc.add(&indicator.scale(&spec.element(value)));
        }
        acc
    }
}

fn decode_point(idx: usize, q: u32, out: &mut [u32]) {
    let mut rest = idx;
    for slot in out.iter_mut().rev() {
        *slot = (rest % q as usize) as u32;
        rest /= q as usize;
    }
}

/// An element of the quotient `H_q(r, n)`, held as its homogeneous
/// degree-`r` coset representative.
#[derive(Clone, PartialEq, Eq)]
pub struct HElement {
    poly: ReducedPolynomial,
    r: u32,
}

impl fmt::Debug for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]_{}", self.poly, self.r)
    }
}

impl HElement {
    /// The coset of `poly` in `H_q(r, n)`: keeps exactly the degree-`r`
    /// homogeneous part. Terms of degree above `r` are rejected since the
    /// polynomial then lies outside the degree-`r` code.
    pub fn from_polynomial(poly: &ReducedPolynomial, r: u32) -> Result<HElement> {
        if let Some(d) = poly.degree() {
            if d > r {
                return Err(Error::DegreeOutOfRange { r: d, max: r });
            }
        }
        Ok(HElement { poly: poly.homogeneous_component(r), r })
    }

    /// The coset of the monomial basis element `X^i`, which must have
    /// weight `r`... any reduced tuple works, with `r` taken from the tuple.
    pub fn from_monomial(spec: &Arc<FieldSpec>, exp: ExponentTuple, coeff: &FieldElement) -> Result<HElement> {
        let r = exp.weight();
        let poly = ReducedPolynomial::monomial(spec, exp, coeff)?;
        Ok(HElement { poly, r })
    }

    pub fn zero(spec: &Arc<FieldSpec>, n: usize, r: u32) -> HElement {
        HElement { poly: ReducedPolynomial::zero(spec, n), r }
    }

    /// The canonical homogeneous representative.
    pub fn representative(&self) -> &ReducedPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.poly.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &HElement) -> HElement {
        assert_eq!(self.r, other.r, "cosets of different degrees");
        HElement { poly: self.poly.add(&other.poly), r: self.r }
    }

    pub fn scale(&self, c: &FieldElement) -> HElement {
        HElement { poly: self.poly.scale(c), r: self.r }
    }

    /// Coefficient vector with respect to the basis `omega` (which must be
    /// `enumerate_omega` of the right parameters).
    pub fn coordinates(&self, omega: &[ExponentTuple]) -> Vec<u32> {
        omega.iter().map(|e| self.poly.coefficient(e)).collect()
    }

    /// Rebuild a coset from its coefficient vector over `omega`.
    pub fn from_coordinates(
        spec: &Arc<FieldSpec>,
        n: usize,
        r: u32,
        omega: &[ExponentTuple],
        coords: &[u32],
    ) -> HElement {
        assert_eq!(omega.len(), coords.len(), "coordinate length mismatch");
        let mut poly = ReducedPolynomial::zero(spec, n);
        for (exp, &c) in omega.iter().zip(coords) {
            poly.add_term(exp.clone(), c);
        }
        HElement { poly, r }
    }

    /// Flat, deterministic serialization used as a set/ordering key: for
    /// each term, the exponent entries followed by the coefficient.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.poly.term_count() * (self.n() + 1));
        for (exp, c) in self.poly.terms() {
            key.extend_from_slice(exp.entries());
            key.push(c);
        }
        key
    }
}

/// The bilinear pairing between `H_q(r, n)` and `H_q(r', n)` for
/// `r + r' = n(q - 1)`: the inner product of the representatives. It is
/// independent of the representative choice because lower-degree terms pair
/// to zero against anything of degree at most the complementary degree.
pub fn pairing(a: &HElement, b: &HElement) -> Result<FieldElement> {
    let n = a.n() as u32;
    let q = a.spec().q();
    let required = n * (q - 1);
    if a.degree() + b.degree() != required {
        return Err(Error::PairingDegrees {
            r: a.degree(),
            r_prime: b.degree(),
            required_sum: required,
        });
    }
    Ok(inner_product(a.representative(), b.representative()))
}
