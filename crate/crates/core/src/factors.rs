//! Composition series and composition factors of `H_q(r, n)`.
//!
//! Peeling maximal signatures off the poset one at a time yields a chain of
//! ideals `∅ = I_0 ⊂ I_1 ⊂ … ⊂ I_N` whose successive module quotients are
//! the composition factors. The factor attached to a signature `t` has
//! basis `T^{-1}(t)` and carries the truncated action: apply a group
//! element, keep only the terms whose exponent has signature exactly `t`.
//! Its dimension has a closed product formula over the column sums, the
//! number of factors per degree has a finite generating function, and the
//! factors are pairwise non-isomorphic except for the single trivial pair
//! in degrees `0` and `n(q-1)` — this module gathers computational evidence
//! for that (dimension comparison and trace fingerprints), never claiming
//! more than the computation shows.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::glaction::{all_group_elements, generators, gl_order, random_group_element, GroupElement};
use crate::lattice::{
    enumerate_signatures, prime_power_split, PosetIdeal, TPoset, TSignature,
};
use crate::linalg::{GfMatrix, Subspace};
use crate::polyfun::{ExponentTuple, ReducedPolynomial};
use crate::rng::SplitMix64;

/// Group orders up to this bound are swept exhaustively for trace
/// fingerprints.
pub const EXHAUSTIVE_FINGERPRINT_BOUND: u128 = 10_000;

/// Sample size for fingerprints over larger groups.
pub const FINGERPRINT_SAMPLE: u64 = 512;

/// Fixed seed for reproducible fingerprint samples.
pub const FINGERPRINT_SEED: u64 = 0x524D_4851;

/// A maximal chain of ideals, from the empty ideal to the whole poset, each
/// step adding one signature.
#[derive(Clone, Debug)]
pub struct CompositionChain {
    poset: TPoset,
    /// `ideals[0] = ∅ ⊂ ideals[1] ⊂ … ⊂ ideals[N]` = full poset.
    ideals: Vec<PosetIdeal>,
    /// `removed[k]` is the signature in `ideals[k+1] \ ideals[k]`; ascending
    /// step order.
    removed: Vec<TSignature>,
}

impl CompositionChain {
    pub fn poset(&self) -> &TPoset {
        &self.poset
    }

    pub fn ideals(&self) -> &[PosetIdeal] {
        &self.ideals
    }

    /// Signatures in ascending chain order (bottom factor first).
    pub fn removed(&self) -> &[TSignature] {
        &self.removed
    }

    /// Signatures in the order they were peeled off the top.
    pub fn peel_order(&self) -> Vec<TSignature> {
        self.removed.iter().rev().cloned().collect()
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.removed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.removed.is_empty()
    }
}

/// The deterministic composition chain at `(q, n, r)`: repeatedly remove
/// the lexicographically largest maximal signature.
pub fn composition_chain(q: u32, n: usize, r: u32) -> Result<CompositionChain> {
    let poset = enumerate_signatures(q, n, r)?;
    let mut current: Vec<TSignature> = poset.nodes().to_vec();
    let mut peeled: Vec<TSignature> = Vec::with_capacity(current.len());
    while !current.is_empty() {
        let pick = current
            .iter()
            .filter(|t| !current.iter().any(|u| *t != u && t.leq(u)))
            .max()
            .cloned()
            .expect("a finite nonempty poset has a maximal element");
        current.retain(|t| t != &pick);
        peeled.push(pick);
    }
    let removed: Vec<TSignature> = peeled.into_iter().rev().collect();
    let mut ideals = Vec::with_capacity(removed.len() + 1);
    ideals.push(PosetIdeal::empty());
    let mut prefix: Vec<TSignature> = Vec::new();
    for t in &removed {
        prefix.push(t.clone());
        ideals.push(PosetIdeal::from_members(&poset, &prefix)?);
    }
    Ok(CompositionChain { poset, ideals, removed })
}

/// A composition factor: basis `T^{-1}(t)` with the truncated action.
#[derive(Clone, Debug)]
pub struct FactorModule {
    spec: Arc<FieldSpec>,
    n: usize,
    signature: TSignature,
    /// Lexicographically ascending.
    basis: Vec<ExponentTuple>,
}

/// The factor attached to a signature of the poset.
pub fn factor_module(
    spec: &Arc<FieldSpec>,
    poset: &TPoset,
    t: &TSignature,
) -> Result<FactorModule> {
    if spec.q() != poset.q() {
        return Err(Error::Invalid(format!(
            "field order {} does not match poset order {}",
            spec.q(),
            poset.q()
        )));
    }
    let basis = poset.fiber(t)?.to_vec();
    Ok(FactorModule { spec: spec.clone(), n: poset.n(), signature: t.clone(), basis })
}

impl FactorModule {
    pub fn signature(&self) -> &TSignature {
        &self.signature
    }

    pub fn basis(&self) -> &[ExponentTuple] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.signature.r()
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// The matrix of `g` on the factor: apply, keep the degree-`r` part,
    /// keep only coefficients on `T^{-1}(t)`. Row `i` holds the image
    /// coefficients of the `i`-th basis monomial. Translation parts act
    /// trivially and are ignored.
    pub fn action(&self, g: &GroupElement) -> GfMatrix {
        assert_eq!(g.n(), self.n, "group element arity mismatch");
        assert_eq!(g.spec(), &self.spec, "group element over a different field");
        let r = self.r();
        let dim = self.basis.len();
        let mut mat = GfMatrix::zero(&self.spec, dim, dim);
        for (row, exp) in self.basis.iter().enumerate() {
            let mono = ReducedPolynomial::monomial(&self.spec, exp.clone(), &self.spec.one())
                .expect("basis monomials are valid");
            let image = g.apply(&mono).homogeneous_component(r);
            for (col, target) in self.basis.iter().enumerate() {
                mat.set(row, col, image.coefficient(target));
            }
        }
        mat
    }
}

/// Free-standing form of the truncated action.
pub fn factor_action(
    spec: &Arc<FieldSpec>,
    poset: &TPoset,
    t: &TSignature,
    g: &GroupElement,
) -> Result<GfMatrix> {
    Ok(factor_module(spec, poset, t)?.action(g))
}

/// Exact binomial coefficient.
fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for k in 0..b {
        acc = acc * (a - k) as u128 / (k + 1) as u128;
    }
    acc
}

/// The dimension of the factor at `t`: the product over columns of the
/// number of digit columns with the prescribed sum,
/// `N(s) = sum_k (-1)^k C(n,k) C(n-1+s-kp, n-1)`.
pub fn dim_formula(t: &TSignature, q: u32, n: usize) -> Result<u64> {
    let (p, m) = prime_power_split(q)?;
    if t.m() != m as usize {
        return Err(Error::Invalid(format!(
            "signature has {} components, expected {m}",
            t.m()
        )));
    }
    // Re-validate the column-sum conditions.
    TSignature::from_components(t.components().to_vec(), p, n)?;
    let mut product: u128 = 1;
    for s in t.column_sums(p) {
        let mut count: i128 = 0;
        for k in 0..=(s / p) as u64 {
            let term = (binomial(n as u64, k)
                * binomial(n as u64 - 1 + s as u64 - k * p as u64, n as u64 - 1))
                as i128;
            count += if k % 2 == 0 { term } else { -term };
        }
        assert!(count > 0, "column count must be positive for a realizable signature");
        product *= count as u128;
    }
    Ok(product as u64)
}

/// Coefficient list over `r` of the factor-count generating function
/// `prod_k (1 + X^{p^k} + … + X^{n(p-1) p^k})`; entry `r` is the number of
/// composition factors of `H_q(r, n)`.
pub fn counting_series(q: u32, n: usize) -> Result<Vec<u64>> {
    let (p, m) = prime_power_split(q)?;
    let len = n * (q as usize - 1) + 1;
    let mut poly = vec![0u64; len];
    poly[0] = 1;
    for k in 0..m {
        let step = p.pow(k) as usize;
        let mut next = vec![0u64; len];
        for (deg, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..=(n * (p as usize - 1)) {
                let d = deg + j * step;
                if d < len {
                    next[d] += c;
                }
            }
        }
        poly = next;
    }
    Ok(poly)
}

/// Total number of composition factors over all degrees: `(n(p-1)+1)^m`.
pub fn total_length(q: u32, n: usize) -> Result<u64> {
    let (p, m) = prime_power_split(q)?;
    Ok(((n as u64) * (p as u64 - 1) + 1).pow(m))
}

/// What a factor-pair comparison concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceVerdict {
    /// Dimensions or trace fingerprints differ: provably non-isomorphic.
    Distinguished,
    /// Nothing separated the factors; no claim either way.
    Inconclusive,
    /// The one sanctioned pair — degrees `0` and `n(q-1)` — where both
    /// factors are one-dimensional with identically trivial action.
    IsomorphicTrivial,
}

/// How the comparison element set is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceMode {
    /// Whole group when its order is at most
    /// [`EXHAUSTIVE_FINGERPRINT_BOUND`], otherwise a fixed-seed sample.
    Auto,
    /// Whole group regardless of size.
    Exhaustive,
    /// A seeded sample of the given size.
    Sampled { trials: u64, seed: u64 },
}

/// Comparison evidence for a pair of factors.
#[derive(Clone, Debug)]
pub struct EvidenceReport {
    pub q: u32,
    pub n: usize,
    pub t1: TSignature,
    pub t2: TSignature,
    pub dim1: u64,
    pub dim2: u64,
    pub verdict: EvidenceVerdict,
    /// The dimensions already differ.
    pub by_dimension: bool,
    /// Whether the whole group was swept.
    pub exhaustive: bool,
    pub elements_compared: u64,
    /// Rows of a group element whose traces differ, when one was found.
    pub witness: Option<Vec<Vec<u32>>>,
}

fn trace(spec: &Arc<FieldSpec>, mat: &GfMatrix) -> u32 {
    let mut acc = 0;
    for i in 0..mat.rows() {
        acc = spec.add_raw(acc, mat.at(i, i));
    }
    acc
}

/// Compare the factors at `t1` and `t2` (possibly from different degrees of
/// the same `(q, n)`): dimension first, then trace fingerprints element by
/// element. A difference proves non-isomorphism; agreement proves nothing
/// and is reported as inconclusive. The single positively-isomorphic answer
/// is the trivial pair in degrees `0` and `n(q-1)`.
pub fn nonisomorphism_evidence(
    spec: &Arc<FieldSpec>,
    n: usize,
    t1: &TSignature,
    t2: &TSignature,
    mode: EvidenceMode,
) -> Result<EvidenceReport> {
    let q = spec.q();
    let top = n as u32 * (q - 1);
    let (r1, r2) = (t1.r(), t2.r());
    if r1 > top || r2 > top {
        return Err(Error::Invalid(String::from("signature degree exceeds n(q-1)")));
    }
    let poset1 = enumerate_signatures(q, n, r1)?;
    let poset2 = enumerate_signatures(q, n, r2)?;
    let factor1 = factor_module(spec, &poset1, t1)?;
    let factor2 = factor_module(spec, &poset2, t2)?;
    let dim1 = dim_formula(t1, q, n)?;
    let dim2 = dim_formula(t2, q, n)?;

    // The sanctioned trivial pair.
    if (r1, r2) == (0, top) || (r1, r2) == (top, 0) {
        assert_eq!((dim1, dim2), (1, 1));
        let mut rng = SplitMix64::from_seed_and_stream(FINGERPRINT_SEED, 0x71);
        for _ in 0..32 {
            let g = random_group_element(spec, n, false, &mut rng);
            assert_eq!(trace(spec, &factor1.action(&g)), 1, "degree-0 factor must be trivial");
            assert_eq!(
                trace(spec, &factor2.action(&g)),
                1,
                "top-degree factor must be trivial"
            );
        }
        return Ok(EvidenceReport {
            q,
            n,
            t1: t1.clone(),
            t2: t2.clone(),
            dim1,
            dim2,
            verdict: EvidenceVerdict::IsomorphicTrivial,
            by_dimension: false,
            exhaustive: false,
            elements_compared: 32,
            witness: None,
        });
    }

    if dim1 != dim2 {
        return Ok(EvidenceReport {
            q,
            n,
            t1: t1.clone(),
            t2: t2.clone(),
            dim1,
            dim2,
            verdict: EvidenceVerdict::Distinguished,
            by_dimension: true,
            exhaustive: false,
            elements_compared: 0,
            witness: None,
        });
    }

    let exhaustive = match mode {
        EvidenceMode::Exhaustive => true,
        EvidenceMode::Sampled { .. } => false,
        EvidenceMode::Auto => gl_order(q as u64, n as u32) <= EXHAUSTIVE_FINGERPRINT_BOUND,
    };
    let mut elements_compared = 0;
    let mut witness = None;
    if exhaustive {
        for g in all_group_elements(spec, n, false) {
            elements_compared += 1;
            if trace(spec, &factor1.action(&g)) != trace(spec, &factor2.action(&g)) {
                witness = Some(matrix_rows(g.matrix()));
                break;
            }
        }
    } else {
        let (trials, seed) = match mode {
            EvidenceMode::Sampled { trials, seed } => (trials, seed),
            _ => (FINGERPRINT_SAMPLE, FINGERPRINT_SEED),
        };
        let mut rng = SplitMix64::from_seed_and_stream(seed, 0x51);
        for _ in 0..trials {
            let g = random_group_element(spec, n, false, &mut rng);
            elements_compared += 1;
            if trace(spec, &factor1.action(&g)) != trace(spec, &factor2.action(&g)) {
                witness = Some(matrix_rows(g.matrix()));
                break;
            }
        }
    }
    let verdict = if witness.is_some() {
        EvidenceVerdict::Distinguished
    } else {
        EvidenceVerdict::Inconclusive
    };
    Ok(EvidenceReport {
        q,
        n,
        t1: t1.clone(),
        t2: t2.clone(),
        dim1,
        dim2,
        verdict,
        by_dimension: false,
        exhaustive,
        elements_compared,
        witness,
    })
}

fn matrix_rows(mat: &GfMatrix) -> Vec<Vec<u32>> {
    (0..mat.rows()).map(|i| mat.row(i).to_vec()).collect()
}

/// Outcome of sampling for irreducibility of one factor.
#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub signature: TSignature,
    pub dim: usize,
    pub trials: u64,
    /// Every sampled nonzero vector generated the whole factor.
    pub all_spanned: bool,
    /// A vector whose closure was proper, if one was found (which would
    /// falsify the implementation).
    pub counterexample: Option<Vec<u32>>,
}

/// For each trial, draw a random nonzero factor vector and close it under
/// the generator actions inside the factor; irreducibility predicts the
/// closure is always the whole factor.
pub fn irreducibility_sample_check(
    spec: &Arc<FieldSpec>,
    poset: &TPoset,
    t: &TSignature,
    trials: u64,
    seed: u64,
) -> Result<IrreducibilityReport> {
    let factor = factor_module(spec, poset, t)?;
    let dim = factor.dim();
    let gen_mats: Vec<GfMatrix> = generators(spec, factor.n(), false)
        .iter()
        .map(|g| factor.action(g))
        .collect();
    let mut rng = SplitMix64::from_seed_and_stream(seed, 0x49);
    let mut all_spanned = true;
    let mut counterexample = None;
    for _ in 0..trials {
        let start: Vec<u32> = loop {
            let v: Vec<u32> = (0..dim).map(|_| rng.below(spec.q() as u64) as u32).collect();
            if v.iter().any(|&c| c != 0) {
                break v;
            }
        };
        let mut space = Subspace::zero(spec, dim);
        space.insert(&start);
        let mut queue = vec![start.clone()];
        while let Some(v) = queue.pop() {
            for gm in &gen_mats {
                let image = gm.mul_row_vec(&v);
                if space.insert(&image) {
                    queue.push(image);
                }
            }
        }
        if space.dim() != dim {
            all_spanned = false;
            counterexample = Some(start);
            break;
        }
    }
    Ok(IrreducibilityReport { signature: t.clone(), dim, trials, all_spanned, counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfun::enumerate_omega;

    fn f(p: u32, m: u32) -> Arc<FieldSpec> {
        FieldSpec::make(p, m).unwrap()
    }

    fn sig(q: u32, t: &[u32]) -> TSignature {
        let (p, _) = prime_power_split(q).unwrap();
        // n is generous here; tests only build signatures that exist in
        // their posets, which were validated on enumeration.
        TSignature::from_components(t.to_vec(), p, 8).unwrap()
    }

    #[test]
    fn chain_known_examples() {
        // Prime fields: a single factor.
        for r in 0..=4u32 {
            let chain = composition_chain(3, 2, r).unwrap();
            assert_eq!(chain.len(), 1);
        }
        // q=4, n=2, r=4: remove (2,4) then (0,4).
        let chain = composition_chain(4, 2, 4).unwrap();
        assert_eq!(chain.peel_order(), vec![sig(4, &[2, 4]), sig(4, &[0, 4])]);
        assert_eq!(chain.removed(), &[sig(4, &[0, 4]), sig(4, &[2, 4])]);
        // q=8, n=4, r=8: seven factors.
        assert_eq!(composition_chain(8, 4, 8).unwrap().len(), 7);
    }

    #[test]
    fn chain_structure_invariants() {
        let mut cases: Vec<(u32, usize, u32)> =
            (0..=6).map(|r| (4u32, 2usize, r)).collect();
        cases.extend([(8, 2, 3), (9, 2, 4), (8, 4, 8)]);
        for (q, n, r) in cases {
            let chain = composition_chain(q, n, r).unwrap();
            let poset = chain.poset();
            assert_eq!(chain.len(), poset.len());
            assert!(chain.ideals()[0].is_empty());
            assert_eq!(chain.ideals()[chain.len()].len(), poset.len());
            let mut concatenated: Vec<ExponentTuple> = Vec::new();
            for (k, t) in chain.removed().iter().enumerate() {
                let before = &chain.ideals()[k];
                let after = &chain.ideals()[k + 1];
                assert_eq!(after.len(), before.len() + 1);
                assert!(!before.contains(t) && after.contains(t));
                assert!(before.members().iter().all(|u| after.contains(u)));
                // Maximality of the removed signature in the larger ideal.
                assert!(after.members().iter().all(|u| u == t || !t.leq(u)));
                concatenated.extend(poset.fiber(t).unwrap().iter().cloned());
            }
            concatenated.sort();
            assert_eq!(concatenated, enumerate_omega(q, n, r).unwrap());
        }
    }

    #[test]
    fn dimension_formula_counts_fibers_everywhere() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            for n in 1..=4usize {
                for r in 0..=n as u32 * (q - 1) {
                    let poset = enumerate_signatures(q, n, r).unwrap();
                    let mut total = 0u64;
                    for t in poset.nodes() {
                        let dim = dim_formula(t, q, n).unwrap();
                        assert_eq!(
                            dim,
                            poset.fiber(t).unwrap().len() as u64,
                            "q={q} n={n} r={r} t={t:?}"
                        );
                        total += dim;
                    }
                    assert_eq!(total, enumerate_omega(q, n, r).unwrap().len() as u64);
                }
            }
        }
    }

    #[test]
    fn quartic_factor_dimensions() {
        // (q,n) = (4,2): factor dimensions per degree.
        let expected: [&[u64]; 7] = [&[1], &[2], &[2, 1], &[4], &[1, 2], &[2], &[1]];
        for (r, dims) in expected.iter().enumerate() {
            let poset = enumerate_signatures(4, 2, r as u32).unwrap();
            let got: Vec<u64> = poset
                .nodes()
                .iter()
                .map(|t| dim_formula(t, 4, 2).unwrap())
                .collect();
            let mut got_sorted = got.clone();
            got_sorted.sort();
            let mut want = dims.to_vec();
            want.sort();
            assert_eq!(got_sorted, want, "r={r}");
        }
        assert_eq!(dim_formula(&sig(4, &[2, 4]), 4, 2).unwrap(), 2);
        assert_eq!(dim_formula(&sig(4, &[0, 4]), 4, 2).unwrap(), 1);
    }

    #[test]
    fn series_and_total_length() {
        assert_eq!(counting_series(4, 2).unwrap(), vec![1, 1, 2, 1, 2, 1, 1]);
        assert_eq!(total_length(4, 2).unwrap(), 9);
        assert_eq!(total_length(8, 4).unwrap(), 125);
        assert_eq!(counting_series(8, 4).unwrap()[8], 7);
        for n in 1..=4usize {
            assert_eq!(total_length(2, n).unwrap(), n as u64 + 1);
            assert_eq!(counting_series(3, n).unwrap(), vec![1; 2 * n + 1]);
        }
        for q in [4u32, 8, 9] {
            for n in 1..=3usize {
                let series = counting_series(q, n).unwrap();
                for (r, &count) in series.iter().enumerate() {
                    let poset = enumerate_signatures(q, n, r as u32).unwrap();
                    assert_eq!(count, poset.len() as u64, "q={q} n={n} r={r}");
                }
                assert_eq!(series.iter().sum::<u64>(), total_length(q, n).unwrap());
            }
        }
    }

    #[test]
    fn factor_action_of_identity_is_identity() {
        let spec = f(2, 2);
        for r in 0..=6u32 {
            let poset = enumerate_signatures(4, 2, r).unwrap();
            let id = GroupElement::identity(&spec, 2);
            for t in poset.nodes() {
                let mat = factor_action(&spec, &poset, t, &id).unwrap();
                assert_eq!(mat, GfMatrix::identity(&spec, mat.rows()));
            }
        }
    }

    #[test]
    fn top_degree_factor_is_trivial() {
        // At r = n(q-1) the single factor is 1-dimensional and every
        // element acts as [1].
        for (p, m) in [(2u32, 1u32), (3, 1), (2, 2)] {
            let spec = f(p, m);
            let q = spec.q();
            let r = 2 * (q - 1);
            let poset = enumerate_signatures(q, 2, r).unwrap();
            assert_eq!(poset.len(), 1);
            let t = &poset.nodes()[0];
            let elements = if q <= 3 {
                all_group_elements(&spec, 2, false)
            } else {
                let mut rng = SplitMix64::new(17);
                (0..20).map(|_| random_group_element(&spec, 2, false, &mut rng)).collect()
            };
            for g in elements {
                let mat = factor_action(&spec, &poset, t, &g).unwrap();
                assert_eq!(mat.rows(), 1);
                assert_eq!(mat.at(0, 0), 1);
            }
        }
    }

    #[test]
    fn factor_action_respects_the_group_law() {
        // Action matrices compose contravariantly: F(ab) = F(b) F(a).
        let spec = f(2, 2);
        let mut rng = SplitMix64::new(23);
        let poset = enumerate_signatures(4, 2, 4).unwrap();
        let factor = factor_module(&spec, &poset, &sig(4, &[2, 4])).unwrap();
        for _ in 0..100 {
            let a = random_group_element(&spec, 2, false, &mut rng);
            let b = random_group_element(&spec, 2, false, &mut rng);
            let ab = a.mul(&b);
            assert_eq!(factor.action(&ab), factor.action(&b).mul(&factor.action(&a)));
        }
        // And across every signature of every degree, more lightly.
        for r in 0..=6u32 {
            let poset = enumerate_signatures(4, 2, r).unwrap();
            for t in poset.nodes() {
                let factor = factor_module(&spec, &poset, t).unwrap();
                for _ in 0..10 {
                    let a = random_group_element(&spec, 2, false, &mut rng);
                    let b = random_group_element(&spec, 2, false, &mut rng);
                    assert_eq!(
                        factor.action(&a.mul(&b)),
                        factor.action(&b).mul(&factor.action(&a))
                    );
                }
            }
        }
    }

    #[test]
    fn evidence_for_known_pairs() {
        let spec = f(2, 2);
        // The sanctioned trivial pair: degrees 0 and 6.
        let report = nonisomorphism_evidence(
            &spec,
            2,
            &sig(4, &[0, 0]),
            &sig(4, &[2, 6]),
            EvidenceMode::Auto,
        )
        .unwrap();
        assert_eq!(report.verdict, EvidenceVerdict::IsomorphicTrivial);
        // Natural (r=1) vs Frobenius twist (r=2, signature (0,2)): same
        // dimension, distinguished by traces over the whole group.
        let report = nonisomorphism_evidence(
            &spec,
            2,
            &sig(4, &[1, 1]),
            &sig(4, &[0, 2]),
            EvidenceMode::Auto,
        )
        .unwrap();
        assert_eq!(report.verdict, EvidenceVerdict::Distinguished);
        assert!(!report.by_dimension);
        assert!(report.exhaustive);
        assert!(report.witness.is_some());
        // The two factors of H_4(4,2) differ in dimension.
        let report = nonisomorphism_evidence(
            &spec,
            2,
            &sig(4, &[0, 4]),
            &sig(4, &[2, 4]),
            EvidenceMode::Auto,
        )
        .unwrap();
        assert_eq!(report.verdict, EvidenceVerdict::Distinguished);
        assert!(report.by_dimension);
        // Signatures absent from their poset are rejected: column sum 4
        // is impossible with n = 2 over characteristic 2.
        assert!(nonisomorphism_evidence(
            &spec,
            2,
            &sig(4, &[1, 1]),
            &sig(4, &[4, 4]),
            EvidenceMode::Auto
        )
        .is_err());
    }

    #[test]
    fn all_quartic_pairs_are_separated() {
        // q=4, n <= 2: every pair of distinct factors is positively
        // distinguished, except the sanctioned trivial pair.
        let spec = f(2, 2);
        for n in 1..=2usize {
            let top = n as u32 * 3;
            let mut all: Vec<TSignature> = Vec::new();
            for r in 0..=top {
                all.extend(enumerate_signatures(4, n, r).unwrap().nodes().iter().cloned());
            }
            for (i, t1) in all.iter().enumerate() {
                for t2 in all.iter().skip(i + 1) {
                    let report =
                        nonisomorphism_evidence(&spec, n, t1, t2, EvidenceMode::Auto).unwrap();
                    let sanctioned = (t1.r(), t2.r()) == (0, top);
                    if sanctioned {
                        assert_eq!(report.verdict, EvidenceVerdict::IsomorphicTrivial);
                    } else {
                        assert_eq!(
                            report.verdict,
                            EvidenceVerdict::Distinguished,
                            "pair {t1:?}, {t2:?} (n={n}) not separated"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn factors_sampled_irreducible() {
        // Single factor of dimension 4 at (4,2,3).
        let spec = f(2, 2);
        let poset = enumerate_signatures(4, 2, 3).unwrap();
        assert_eq!(poset.len(), 1);
        let report =
            irreducibility_sample_check(&spec, &poset, &poset.nodes()[0], 50, 31).unwrap();
        assert_eq!(report.dim, 4);
        assert!(report.all_spanned);
        assert!(report.counterexample.is_none());
        // Single factor of dimension 4 at (8,2,3).
        let spec8 = f(2, 3);
        let poset8 = enumerate_signatures(8, 2, 3).unwrap();
        assert_eq!(poset8.len(), 1);
        let report8 =
            irreducibility_sample_check(&spec8, &poset8, &poset8.nodes()[0], 20, 37).unwrap();
        assert_eq!(report8.dim, 4);
        assert!(report8.all_spanned);
        // A 1-dimensional factor is trivially spanned.
        let poset2 = enumerate_signatures(4, 2, 2).unwrap();
        let one_dim = poset2
            .nodes()
            .iter()
            .find(|t| dim_formula(t, 4, 2).unwrap() == 1)
            .unwrap();
        let report1 = irreducibility_sample_check(&spec, &poset2, one_dim, 5, 41).unwrap();
        assert!(report1.all_spanned);
    }

    #[test]
    fn binomial_is_exact() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(52, 5), 2_598_960);
    }
}
