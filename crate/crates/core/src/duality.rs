//! Duality between `H_q(r, n)` and `H_q(n(q-1) - r, n)`.
//!
//! The duality map theta sends the coset of `X^i` to
//! `i! (-1)^n X^(complement of i)` and extends linearly; the factorials are
//! taken as images in `F_q`, so theta kills every monomial with an exponent
//! of `p` or more and is a bijection exactly when `q` is prime. The
//! factorial-free variant [`c_map`] (complement map) is always a bijection
//! on monomials but does *not* respect the group action in general — the
//! bundled quartic example demonstrates the failure over `F_4`.
//!
//! The compatibility that does hold, for every invertible `A`, is the
//! commuting square `theta(A(f)) = (A^{-1})^T (theta(f))`, checked here both
//! element-by-element and through the independent matrix-transpose identity
//! from [`crate::glaction::check_transpose_identity`].
//!
//! This module also provides orbit enumeration and orbit-membership
//! equivalence testing in the quotient, breadth-first over the generator
//! action with an explicit state budget.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::glaction::{
    action_matrix_direct, all_group_elements, check_transpose_identity, generators, gl_order,
    random_group_element, GroupElement,
};
use crate::polyfun::{enumerate_omega, ExponentTuple, HElement, ReducedPolynomial};
use crate::rng::SplitMix64;

/// Default cap on the number of distinct states an orbit search may visit.
pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;

/// Group-element count below which verification sweeps run exhaustively.
pub const EXHAUSTIVE_GROUP_BOUND: u128 = 10_000;

/// The duality map: `X^i -> i! (-1)^n X^(complement)`, extended linearly.
/// Lands in the complementary-degree quotient.
pub fn theta(h: &HElement) -> HElement {
    let spec = h.spec().clone();
    let n = h.n();
    let q = spec.q();
    let r_prime = n as u32 * (q - 1) - h.degree();
    let sign = spec.embed_integer(if n % 2 == 0 { 1 } else { -1 });
    let mut poly = ReducedPolynomial::zero(&spec, n);
    for (exp, coeff) in h.representative().terms() {
        let factor = exp.factorial_image(&spec) * &sign * spec.element(coeff);
        if factor.is_zero() {
            continue;
        }
        let image = ReducedPolynomial::monomial(&spec, exp.complement(q), &factor).unwrap();
        poly = poly.add(&image);
    }
    HElement::from_polynomial(&poly, r_prime).expect("complement weights are homogeneous")
}

/// The factorial-free complement map: `X^i -> (-1)^n X^(complement)`.
pub fn c_map(h: &HElement) -> HElement {
    let spec = h.spec().clone();
    let n = h.n();
    let q = spec.q();
    let r_prime = n as u32 * (q - 1) - h.degree();
    let sign = spec.embed_integer(if n % 2 == 0 { 1 } else { -1 });
    let mut poly = ReducedPolynomial::zero(&spec, n);
    for (exp, coeff) in h.representative().terms() {
        let factor = &sign * spec.element(coeff);
        let image = ReducedPolynomial::monomial(&spec, exp.complement(q), &factor).unwrap();
        poly = poly.add(&image);
    }
    HElement::from_polynomial(&poly, r_prime).expect("complement weights are homogeneous")
}

/// Result of checking the duality square for one group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    /// `theta(A(X^i)) = (A^{-1})^T(theta(X^i))` for every basis monomial.
    pub diagram: bool,
    /// The matrix-transpose identity, an independent route.
    pub transpose_identity: bool,
    /// Basis monomials where the diagram failed.
    pub failures: Vec<ExponentTuple>,
}

impl DualityCheck {
    pub fn verified(&self) -> bool {
        self.diagram && self.transpose_identity && self.failures.is_empty()
    }
}

/// Check the commuting square on `H_q(r, n)` for one element. Affine parts
/// are ignored: translations act trivially on the quotient.
pub fn check_duality_square(g: &GroupElement, r: u32) -> Result<DualityCheck> {
    let spec = g.spec();
    let n = g.n();
    let basis = enumerate_omega(spec.q(), n, r)?;
    let linear = GroupElement::linear(g.matrix().clone())?;
    let contragredient = linear.inverse().transpose();
    let mut failures = Vec::new();
    for exp in &basis {
        let x_i = HElement::from_monomial(spec, exp.clone(), &spec.one())?;
        let lhs = theta(&apply_on_quotient(&linear, &x_i));
        let rhs = apply_on_quotient(&contragredient, &theta(&x_i));
        if lhs != rhs {
            failures.push(exp.clone());
        }
    }
    let transpose_identity = check_transpose_identity(&linear, r)?;
    Ok(DualityCheck { diagram: failures.is_empty(), transpose_identity, failures })
}

/// Action of a group element on a coset: substitute and keep the top
/// homogeneous part.
pub fn apply_on_quotient(g: &GroupElement, h: &HElement) -> HElement {
    let image = g.apply(h.representative());
    HElement::from_polynomial(&image.truncate_degree(h.degree()), h.degree())
        .expect("the action preserves the degree filtration")
}

/// Aggregated verification of the duality square over many group elements.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub q: u32,
    pub n: usize,
    pub r: u32,
    pub r_complement: u32,
    /// Whether the whole group was swept (vs. seeded sampling).
    pub exhaustive: bool,
    pub elements_checked: u64,
    pub failures: u64,
}

impl DualityReport {
    pub fn verified(&self) -> bool {
        self.failures == 0
    }
}

/// Sweep the full `GL(n, F_q)`; intended for group orders at most
/// [`EXHAUSTIVE_GROUP_BOUND`].
pub fn verify_duality_exhaustive(spec: &Arc<FieldSpec>, n: usize, r: u32) -> Result<DualityReport> {
    let mut checked = 0;
    let mut failures = 0;
    for g in all_group_elements(spec, n, false) {
        checked += 1;
        if !check_duality_square(&g, r)?.verified() {
            failures += 1;
        }
    }
    Ok(DualityReport {
        q: spec.q(),
        n,
        r,
        r_complement: n as u32 * (spec.q() - 1) - r,
        exhaustive: true,
        elements_checked: checked,
        failures,
    })
}

/// Check `trials` seeded-random elements.
pub fn verify_duality_sampled(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    trials: u64,
    seed: u64,
) -> Result<DualityReport> {
    let mut rng = SplitMix64::from_seed_and_stream(seed, 0x7d);
    let mut failures = 0;
    for _ in 0..trials {
        let g = random_group_element(spec, n, false, &mut rng);
        if !check_duality_square(&g, r)?.verified() {
            failures += 1;
        }
    }
    Ok(DualityReport {
        q: spec.q(),
        n,
        r,
        r_complement: n as u32 * (spec.q() - 1) - r,
        exhaustive: false,
        elements_checked: trials,
        failures,
    })
}

/// Outcome of an orbit enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The orbit closed within the budget; the element list is complete.
    Closed,
    /// The budget ran out; the element list is a partial lower bound.
    BudgetExceeded,
}

/// Orbit of a coset under the generator action.
#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub status: SearchStatus,
    /// Distinct orbit elements in canonical (coordinate-lexicographic) order.
    pub elements: Vec<HElement>,
}

impl OrbitResult {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first orbit of `h` under `GL(n, F_q)`, visiting at most `budget`
/// distinct states.
pub fn orbit(h: &HElement, budget: usize) -> Result<OrbitResult> {
    orbit_search(h, None, budget).map(|(result, _)| result)
}

/// Answer of an orbit-membership equivalence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    BudgetExceeded,
}

/// Are `f` and `g` in the same `GL(n, F_q)`-orbit of the quotient? Searches
/// the orbit of `f` breadth-first until `g` appears, the orbit closes, or
/// the budget runs out.
pub fn gl_equivalent(f: &HElement, g: &HElement, budget: usize) -> Result<Equivalence> {
    if f.n() != g.n() {
        return Err(Error::ArityMismatch { expected: f.n(), got: g.n() });
    }
    if f.spec() != g.spec() {
        return Err(Error::Invalid(String::from("cosets over different fields")));
    }
    if f.degree() != g.degree() {
        return Err(Error::Invalid(format!(
            "cannot compare cosets of degrees {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    let (result, found) = orbit_search(f, Some(g), budget)?;
    if found {
        return Ok(Equivalence::Equivalent);
    }
    match result.status {
        SearchStatus::Closed => Ok(Equivalence::NotEquivalent),
        SearchStatus::BudgetExceeded => Ok(Equivalence::BudgetExceeded),
    }
}

fn orbit_search(
    h: &HElement,
    target: Option<&HElement>,
    budget: usize,
) -> Result<(OrbitResult, bool)> {
    let spec = h.spec().clone();
    let n = h.n();
    let r = h.degree();
    let omega = enumerate_omega(spec.q(), n, r)?;
    let gens = generators(&spec, n, false);
    let gen_matrices: Vec<_> = gens
        .iter()
        .map(|g| action_matrix_direct(g, r))
        .collect::<Result<Vec<_>>>()?;

    let start = h.coordinates(&omega);
    let target_coords = target.map(|t| t.coordinates(&omega));
    let mut found = target_coords.as_ref() == Some(&start);

    let mut visited: BTreeSet<Vec<u32>> = BTreeSet::new();
    visited.insert(start.clone());
    let mut frontier = vec![start];
    let mut status = SearchStatus::Closed;
    'search: while let Some(coords) = frontier.pop() {
        for gm in &gen_matrices {
            let image = gm.apply_coords(&coords);
            if target_coords.as_ref() == Some(&image) {
                found = true;
            }
            if !visited.contains(&image) {
                if visited.len() >= budget {
                    status = SearchStatus::BudgetExceeded;
                    break 'search;
                }
                visited.insert(image.clone());
                frontier.push(image);
            }
        }
        if found && target.is_some() {
            // Membership answers do not need the full orbit.
            break;
        }
    }
    let elements = visited
        .into_iter()
        .map(|coords| HElement::from_coordinates(&spec, n, r, &omega, &coords))
        .collect();
    Ok((OrbitResult { status, elements }, found))
}

/// One verified claim of a bundled worked example.
#[derive(Clone, Debug)]
pub struct ClaimOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The quartic duality example over `F_4` in two variables: two equivalent
/// degree-4 cosets whose factorial-free complements are *not* equivalent,
/// while theta annihilates both. Returns one outcome per claim; all must
/// pass.
pub fn quartic_duality_example() -> Result<Vec<ClaimOutcome>> {
    let spec = FieldSpec::make(2, 2)?;
    let f_poly = ReducedPolynomial::from_raw_terms(&spec, 2, &[(vec![3, 1], 1)])?;
    let g_poly = ReducedPolynomial::from_raw_terms(
        &spec,
        2,
        &[(vec![3, 1], 1), (vec![2, 2], 1), (vec![1, 3], 1)],
    )?;
    let f = HElement::from_polynomial(&f_poly, 4)?;
    let g = HElement::from_polynomial(&g_poly, 4)?;

    let mut outcomes = Vec::new();

    // The transvection X_1 -> X_1 + X_2 carries f to g in the quotient.
    let witness = GroupElement::linear(
        crate::linalg::GfMatrix::from_rows(&spec, &[vec![1, 0], vec![1, 1]])?,
    )?;
    let image = apply_on_quotient(&witness, &f);
    outcomes.push(ClaimOutcome {
        name: String::from("witness-carries-f-to-g"),
        pass: image == g,
        detail: format!("image of f under the transvection: {:?}", image),
    });

    let equivalent = gl_equivalent(&f, &g, DEFAULT_ORBIT_BUDGET)?;
    outcomes.push(ClaimOutcome {
        name: String::from("f-equivalent-to-g"),
        pass: equivalent == Equivalence::Equivalent,
        detail: format!("orbit search answered {:?}", equivalent),
    });

    // The complement images.
    let fc = c_map(&f);
    let gc = c_map(&g);
    let fc_expected = HElement::from_polynomial(
        &ReducedPolynomial::from_raw_terms(&spec, 2, &[(vec![0, 2], 1)])?,
        2,
    )?;
    let gc_expected = HElement::from_polynomial(
        &ReducedPolynomial::from_raw_terms(
            &spec,
            2,
            &[(vec![0, 2], 1), (vec![1, 1], 1), (vec![2, 0], 1)],
        )?,
        2,
    )?;
    outcomes.push(ClaimOutcome {
        name: String::from("complement-images-have-known-forms"),
        pass: fc == fc_expected && gc == gc_expected,
        detail: format!("f^c = {:?}, g^c = {:?}", fc, gc),
    });

    let c_equivalent = gl_equivalent(&fc, &gc, DEFAULT_ORBIT_BUDGET)?;
    outcomes.push(ClaimOutcome {
        name: String::from("complement-images-not-equivalent"),
        pass: c_equivalent == Equivalence::NotEquivalent,
        detail: format!(
            "orbit search answered {:?}; the complement map does not respect the action",
            c_equivalent
        ),
    });

    let tf = theta(&f);
    let tg = theta(&g);
    outcomes.push(ClaimOutcome {
        name: String::from("theta-annihilates-both"),
        pass: tf.is_zero() && tg.is_zero(),
        detail: format!("theta(f) = {:?}, theta(g) = {:?}", tf, tg),
    });

    Ok(outcomes)
}

/// Convenience: choose exhaustive or sampled duality verification by the
/// group order.
pub fn verify_duality_auto(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    trials: u64,
    seed: u64,
) -> Result<DualityReport> {
    if gl_order(spec.q() as u64, n as u32) <= EXHAUSTIVE_GROUP_BOUND {
        verify_duality_exhaustive(spec, n, r)
    } else {
        verify_duality_sampled(spec, n, r, trials, seed)
    }
}
