//! `rmhq` — deterministic computations in Reed-Muller quotient modules.
//!
//! Enumeration (monomial bases, signature posets, submodule lattices,
//! composition chains), orbit and equivalence searches, verifiers that
//! exit nonzero with a machine-readable counterexample when a claimed
//! identity fails, and reproduction of two embedded worked examples.
//! Every invocation with the same arguments produces byte-identical
//! output.

mod golden;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use rmhq_core::duality::{
    check_duality_square, gl_equivalent, orbit, quartic_duality_example, Equivalence,
    SearchStatus, DEFAULT_ORBIT_BUDGET, EXHAUSTIVE_GROUP_BOUND,
};
use rmhq_core::factors::{
    composition_chain, counting_series, dim_formula, factor_module, total_length,
};
use rmhq_core::gf::FieldSpec;
use rmhq_core::glaction::{
    action_matrix_combinatorial, action_matrix_direct, all_group_elements,
    check_transpose_identity, gl_order, random_group_element, GroupElement,
};
use rmhq_core::lattice::{
    enumerate_signatures, ideals_enumerate, module_of_ideal, verify_submodule_correspondence,
    CorrespondenceReport, PosetIdeal, TSignature,
};
use rmhq_core::polyfun::{enumerate_omega, ExponentTuple, HElement, ReducedPolynomial};
use rmhq_core::rng::SplitMix64;

const DEFAULT_SEED: u64 = 24601;
const BUDGET_ENV: &str = "RMHQ_BUDGET";

#[derive(Parser)]
#[command(
    name = "rmhq",
    version,
    about = "Deterministic computations in Reed-Muller quotient modules H_q(r,n)",
    long_about = "Deterministic computations in the quotients H_q(r,n) of generalized \
Reed-Muller codes: monomial bases, signature posets, the full lattice of invariant \
subspaces, composition chains and factor dimensions, orbit/equivalence searches, \
verifiers, and embedded worked examples.\n\n\
Exit status: 0 on success or a verified claim; 1 on a usage error; 2 when a verifier \
or reproduction finds a falsified claim (a counterexample is printed).\n\n\
Output is byte-identical across repeated runs with the same arguments. JSON output \
uses canonical form: sorted object keys, fixed array orders."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field characteristic (a prime)
    #[arg(long)]
    p: u32,
    /// Extension degree: the field has q = p^m elements
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Number of variables
    #[arg(long)]
    n: usize,
}

#[derive(Args, Clone)]
struct DegreeArg {
    /// Homogeneous degree of the quotient, 0 <= r <= n(q-1)
    #[arg(long)]
    r: u32,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Seed for randomized trial streams; trial k draws from (seed, k)
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of randomized trials when a sweep is not exhaustive
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Search budget: orbit/equivalence searches visit at most this many
    /// elements, and the invariant-subspace scan checks at most this many
    /// subsets [default: $RMHQ_BUDGET if set, else 1000000]
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Emit canonical JSON (sorted keys) instead of text
    #[arg(long)]
    json: bool,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the monomial basis of H_q(r,n): all exponent tuples of weight r
    Omega {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the signature poset of H_q(r,n) with fiber sizes
    Tsig {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate every downward-closed set of the signature poset; these
    /// are in bijection with the invariant subspaces of H_q(r,n)
    Ideals {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The invariant subspace spanned by the monomials below a boundary
    Submodule {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        /// Boundary signatures: components joined by commas, signatures by
        /// semicolons, e.g. "0,8,8;4,4,8" (empty string for the zero space)
        #[arg(long, allow_hyphen_values = false, default_value = "")]
        boundary: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The composition chain of H_q(r,n): peel one maximal signature at a
    /// time; each step lists the removed signature and its factor basis
    Chain {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Composition factor dimensions of H_q(r,n) by signature
    Dims {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number of composition factors of H_q(r,n) for each r, with total
    Series {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Breadth-first orbit of an element of H_q(r,n) under the group
    Orbit {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        /// The element: terms joined by semicolons, each "coeff:e1,...,en",
        /// e.g. "1:3,1;1:2,2" for X1^3 X2 + X1^2 X2^2
        #[arg(long)]
        element: String,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether two elements of H_q(r,n) lie in the same orbit
    Equivalent {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        /// First element (same syntax as orbit --element)
        #[arg(short = 'f', long)]
        f: String,
        /// Second element
        #[arg(short = 'g', long)]
        g: String,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verifier; exits 2 with a counterexample if the claim fails
    Verify {
        /// duality: the square theta(A(f)) = (A^-1)^T(theta(f));
        /// lemma21: the matrix identity M(A^T) D = D M(A)^T;
        /// sigma: combinatorial vs. substitution action matrices;
        /// theorem38: the ideal/invariant-subspace correspondence;
        /// all: every verifier above
        #[arg(value_enum)]
        what: VerifyWhat,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        deg: DegreeArg,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-derive an embedded worked example and diff against golden data
    Reproduce {
        /// example-2.4: the equivalent quartic pair whose complement-map
        /// images are inequivalent (q=4, n=2);
        /// example-3.9: the signature poset, its eleven ideals, and their
        /// monomial contents (q=8, n=4, r=8)
        #[arg(value_enum)]
        which: ReproduceWhich,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyWhat {
    Duality,
    Lemma21,
    Sigma,
    Theorem38,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReproduceWhich {
    #[value(name = "example-2.4")]
    Example24,
    #[value(name = "example-3.9")]
    Example39,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write_stdout(&e.to_string());
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

/// Write to stdout, treating a closed pipe as a normal early exit.
fn write_stdout(s: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn err(e: rmhq_core::Error) -> String {
    e.to_string()
}

fn setup(field: &FieldArgs) -> Result<(Arc<FieldSpec>, usize), String> {
    if field.n == 0 {
        return Err(String::from("n must be at least 1"));
    }
    let spec = FieldSpec::make(field.p, field.m).map_err(err)?;
    Ok((spec, field.n))
}

fn check_degree(spec: &Arc<FieldSpec>, n: usize, r: u32) -> Result<(), String> {
    let top = n as u32 * (spec.q() - 1);
    if r > top {
        return Err(format!(
            "degree r={r} out of range: H_{}(r,{n}) needs 0 <= r <= {top}",
            spec.q()
        ));
    }
    Ok(())
}

fn resolve_budget(flag: Option<usize>) -> Result<usize, String> {
    let budget = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("{BUDGET_ENV} must be a positive integer, got `{s}`"))?,
            Err(_) => DEFAULT_ORBIT_BUDGET,
        },
    };
    if budget == 0 {
        return Err(String::from("budget must be at least 1"));
    }
    Ok(budget)
}

fn emit(output: &OutputArgs, text: String, json_value: Value) -> Result<(), String> {
    let bytes = if output.json {
        let mut s = serde_json::to_string(&json_value)
            .map_err(|e| format!("cannot serialize output: {e}"))?;
        s.push('\n');
        s
    } else {
        let mut t = text;
        if !t.ends_with('\n') {
            t.push('\n');
        }
        t
    };
    match &output.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            write_stdout(&bytes);
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Small serializers shared by the subcommands.

fn tuple_str(e: &ExponentTuple) -> String {
    e.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn tuple_json(e: &ExponentTuple) -> Value {
    json!(e.entries())
}

fn sig_str(t: &TSignature) -> String {
    t.components().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn sig_json(t: &TSignature) -> Value {
    json!(t.components())
}

fn sig_list_str(ts: &[TSignature]) -> String {
    if ts.is_empty() {
        return String::from("{}");
    }
    format!("{{{}}}", ts.iter().map(sig_str).collect::<Vec<_>>().join("; "))
}

fn element_str(h: &HElement) -> String {
    let terms: Vec<String> = h
        .representative()
        .terms()
        .map(|(e, c)| format!("{c}:{}", tuple_str(e)))
        .collect();
    if terms.is_empty() {
        String::from("0")
    } else {
        terms.join(";")
    }
}

fn element_json(h: &HElement) -> Value {
    let terms: Vec<Value> = h
        .representative()
        .terms()
        .map(|(e, c)| json!({"coeff": c, "exp": e.entries()}))
        .collect();
    json!({"n": h.n(), "q": h.spec().q(), "r": h.degree(), "terms": terms})
}

fn group_json(g: &GroupElement) -> Value {
    let rows: Vec<Vec<u32>> = (0..g.n()).map(|i| g.matrix().row(i).to_vec()).collect();
    json!({"A": rows, "a": g.translation()})
}

fn group_str(g: &GroupElement) -> String {
    let rows: Vec<String> = (0..g.n())
        .map(|i| {
            g.matrix().row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        })
        .collect();
    format!("A=[{}]", rows.join("; "))
}

// ---------------------------------------------------------------------------
// Input parsing.

fn parse_element(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    s: &str,
) -> Result<HElement, String> {
    let mut raw: Vec<(Vec<u64>, u32)> = Vec::new();
    for term in s.split(';') {
        let term = term.trim();
        // `0` is how the zero element prints; accept it back as an input.
        if term.is_empty() || term == "0" {
            continue;
        }
        let (c, e) = term
            .split_once(':')
            .ok_or_else(|| format!("term `{term}` must look like coeff:e1,...,en"))?;
        let coeff: u32 = c
            .trim()
            .parse()
            .map_err(|_| format!("bad coefficient `{}` in term `{term}`", c.trim()))?;
        let exps: Vec<u64> = e
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| format!("bad exponents `{e}` in term `{term}`"))?;
        raw.push((exps, coeff));
    }
    let poly = ReducedPolynomial::from_raw_terms(spec, n, &raw).map_err(err)?;
    HElement::from_polynomial(&poly, r).map_err(err)
}

fn parse_boundary(
    spec: &Arc<FieldSpec>,
    n: usize,
    s: &str,
) -> Result<Vec<TSignature>, String> {
    let p = spec.p();
    let mut sigs = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let comps: Vec<u32> = part
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| format!("bad signature `{part}`: components must be integers"))?;
        sigs.push(TSignature::from_components(comps, p, n).map_err(err)?);
    }
    Ok(sigs)
}

// ---------------------------------------------------------------------------
// Verifier sweeps.

struct Sweep {
    exhaustive: bool,
    checked: u64,
    failures: u64,
    witness: Option<GroupElement>,
}

/// Run a per-element check over the whole group when it is small, or over
/// seeded random elements otherwise; trial `k` draws from `(seed, k)`.
fn sweep<F>(
    spec: &Arc<FieldSpec>,
    n: usize,
    trials: u64,
    seed: u64,
    stream: u64,
    mut check: F,
) -> Result<Sweep, String>
where
    F: FnMut(&GroupElement) -> Result<bool, rmhq_core::Error>,
{
    let exhaustive = gl_order(spec.q() as u64, n as u32) <= EXHAUSTIVE_GROUP_BOUND;
    let mut checked = 0u64;
    let mut failures = 0u64;
    let mut witness = None;
    if exhaustive {
        for g in all_group_elements(spec, n, false) {
            checked += 1;
            if !check(&g).map_err(err)? {
                failures += 1;
                if witness.is_none() {
                    witness = Some(g);
                }
            }
        }
    } else {
        for k in 0..trials {
            let mut rng = SplitMix64::from_seed_and_stream(seed, stream ^ k);
            let g = random_group_element(spec, n, false, &mut rng);
            checked += 1;
            if !check(&g).map_err(err)? {
                failures += 1;
                if witness.is_none() {
                    witness = Some(g);
                }
            }
        }
    }
    Ok(Sweep { exhaustive, checked, failures, witness })
}

fn sweep_json(spec: &Arc<FieldSpec>, n: usize, r: u32, s: &Sweep, extra: &[(&str, Value)]) -> Value {
    let mut map = Map::new();
    map.insert("checked".into(), json!(s.checked));
    map.insert("exhaustive".into(), json!(s.exhaustive));
    map.insert("failures".into(), json!(s.failures));
    map.insert("n".into(), json!(n));
    map.insert("q".into(), json!(spec.q()));
    map.insert("r".into(), json!(r));
    map.insert("verified".into(), json!(s.failures == 0));
    map.insert(
        "witness".into(),
        s.witness.as_ref().map(group_json).unwrap_or(Value::Null),
    );
    for (k, v) in extra {
        map.insert((*k).into(), v.clone());
    }
    Value::Object(map)
}

fn sweep_text(title: &str, spec: &Arc<FieldSpec>, n: usize, r: u32, s: &Sweep) -> String {
    let mut text = format!(
        "# verify {title}: q={} n={n} r={r}\nexhaustive={} checked={} failures={}\n",
        spec.q(),
        s.exhaustive,
        s.checked,
        s.failures
    );
    if let Some(w) = &s.witness {
        text += &format!("counterexample: {}\n", group_str(w));
    }
    text += &format!("verified={}\n", s.failures == 0);
    text
}

fn verify_duality_cmd(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    search: &SearchArgs,
) -> Result<(String, Value, bool), String> {
    let s = sweep(spec, n, search.trials, search.seed, 0x6475_616c, |g| {
        check_duality_square(g, r).map(|c| c.verified())
    })?;
    let r_complement = n as u32 * (spec.q() - 1) - r;
    let json_value = sweep_json(spec, n, r, &s, &[("r_complement", json!(r_complement))]);
    let text = sweep_text("duality", spec, n, r, &s);
    let ok = s.failures == 0;
    Ok((text, json_value, ok))
}

fn verify_lemma21_cmd(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    search: &SearchArgs,
) -> Result<(String, Value, bool), String> {
    let s = sweep(spec, n, search.trials, search.seed, 0x6c65_6d61, |g| {
        check_transpose_identity(g, r)
    })?;
    let json_value = sweep_json(spec, n, r, &s, &[]);
    let text = sweep_text("lemma21", spec, n, r, &s);
    let ok = s.failures == 0;
    Ok((text, json_value, ok))
}

fn verify_sigma_cmd(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    search: &SearchArgs,
) -> Result<(String, Value, bool), String> {
    let s = sweep(spec, n, search.trials, search.seed, 0x7369_676d, |g| {
        let direct = action_matrix_direct(g, r)?;
        let combinatorial = action_matrix_combinatorial(g, r)?;
        Ok(direct.matrix() == combinatorial.matrix())
    })?;
    let json_value = sweep_json(spec, n, r, &s, &[]);
    let text = sweep_text("sigma", spec, n, r, &s);
    let ok = s.failures == 0;
    Ok((text, json_value, ok))
}

fn correspondence_json(rep: &CorrespondenceReport) -> Value {
    json!({
        "exhaustive_scan": rep.exhaustive_scan,
        "ideal_count": rep.ideal_count,
        "ideal_modules_invariant": rep.ideal_modules_invariant,
        "modules_distinct": rep.modules_distinct,
        "n": rep.n,
        "omega_size": rep.omega_size,
        "principal_closures_match": rep.principal_closures_match,
        "q": rep.q,
        "r": rep.r,
        "random_closures_monomial": rep.random_closures_monomial,
        "signature_count": rep.signature_count,
        "verified": rep.verified(),
    })
}

fn verify_theorem38_cmd(
    spec: &Arc<FieldSpec>,
    n: usize,
    r: u32,
    search: &SearchArgs,
    budget: usize,
) -> Result<(String, Value, bool), String> {
    // The subset scan visits 2^|Omega| subsets; keep that within budget.
    let exhaustive_bound = (usize::BITS - 1 - budget.leading_zeros()) as usize;
    let rep = verify_submodule_correspondence(
        spec,
        n,
        r,
        exhaustive_bound,
        search.trials,
        search.seed,
    )
    .map_err(err)?;
    let scan = match rep.exhaustive_scan {
        Some(b) => b.to_string(),
        None => String::from("skipped"),
    };
    let text = format!(
        "# verify theorem38: q={} n={n} r={r}\n\
         monomials={} signatures={} ideals={}\n\
         principal_closures_match={} ideal_modules_invariant={} modules_distinct={}\n\
         exhaustive_scan={scan} random_closures_monomial={}\n\
         verified={}\n",
        rep.q,
        rep.omega_size,
        rep.signature_count,
        rep.ideal_count,
        rep.principal_closures_match,
        rep.ideal_modules_invariant,
        rep.modules_distinct,
        rep.random_closures_monomial,
        rep.verified()
    );
    let ok = rep.verified();
    Ok((text, correspondence_json(&rep), ok))
}

// ---------------------------------------------------------------------------
// Reproductions.

fn reproduce_example24() -> Result<(String, Value, bool), String> {
    let claims = quartic_duality_example().map_err(err)?;
    let mut text = String::from("# worked example: q=4 n=2, quartic pair and complements\n");
    let mut ok = true;
    let mut rows = Vec::new();
    for claim in &claims {
        ok &= claim.pass;
        text += &format!(
            "{} {} — {}\n",
            if claim.pass { "PASS" } else { "FAIL" },
            claim.name,
            claim.detail
        );
        rows.push(json!({"detail": claim.detail, "name": claim.name, "pass": claim.pass}));
    }
    text += &format!("verified={ok}\n");
    Ok((text, json!({"claims": rows, "verified": ok}), ok))
}

/// All distinct coordinate permutations of a 4-tuple.
fn permutations_of(t: [u32; 4]) -> BTreeSet<ExponentTuple> {
    let mut out = BTreeSet::new();
    let idx = [0usize, 1, 2, 3];
    let mut perm = idx;
    // Heap's algorithm, iterative.
    let mut c = [0usize; 4];
    out.insert(ExponentTuple::new(perm.iter().map(|&i| t[i]).collect()));
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.insert(ExponentTuple::new(perm.iter().map(|&i| t[i]).collect()));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn golden_sig_set(raw: &[[u32; 3]], spec: &Arc<FieldSpec>, n: usize) -> Result<BTreeSet<TSignature>, String> {
    raw.iter()
        .map(|t| TSignature::from_components(t.to_vec(), spec.p(), n).map_err(err))
        .collect()
}

fn reproduce_example39() -> Result<(String, Value, bool), String> {
    let spec = FieldSpec::make(2, 3).map_err(err)?;
    let (q, n, r) = (8u32, 4usize, 8u32);
    let poset = enumerate_signatures(q, n, r).map_err(err)?;
    let omega: BTreeSet<ExponentTuple> =
        enumerate_omega(q, n, r).map_err(err)?.into_iter().collect();

    let mut text = format!("# worked example: the submodule tables at q={q} n={n} r={r}\n");
    let mut ok = true;

    // Signatures.
    let computed_sigs: BTreeSet<TSignature> = poset.nodes().iter().cloned().collect();
    let golden_sigs = golden_sig_set(&golden::SIGNATURES, &spec, n)?;
    let signatures_matched = computed_sigs == golden_sigs;
    ok &= signatures_matched;
    text += &format!(
        "signatures: computed {} expected {} matched={signatures_matched}\n",
        computed_sigs.len(),
        golden_sigs.len()
    );

    // Ideals, matched by boundary content rather than enumeration order.
    let computed = ideals_enumerate(&poset);
    let count_matched = computed.len() == golden::IDEALS.len();
    ok &= count_matched;
    text += &format!(
        "ideals: computed {} expected {} matched={count_matched}\n",
        computed.len(),
        golden::IDEALS.len()
    );

    let mut used = BTreeSet::new();
    let mut rows = Vec::new();
    for (j, gold) in golden::IDEALS.iter().enumerate() {
        let boundary = golden_sig_set(gold.boundary, &spec, n)?;
        let members = golden_sig_set(gold.members, &spec, n)?;
        let found = computed.iter().enumerate().find(|(_, ideal)| {
            ideal.boundary().iter().cloned().collect::<BTreeSet<_>>() == boundary
        });
        let (matched_boundary, matched_members, matched_monomials, monomial_count, diff) =
            match found {
                None => (false, false, false, 0usize, String::from("no ideal has this boundary")),
                Some((idx, ideal)) => {
                    used.insert(idx);
                    let member_set: BTreeSet<TSignature> =
                        ideal.members().iter().cloned().collect();
                    let members_ok = member_set == members;
                    let mut monomials: BTreeSet<ExponentTuple> = BTreeSet::new();
                    for t in ideal.members() {
                        monomials.extend(poset.fiber(t).map_err(err)?.iter().cloned());
                    }
                    let expected: BTreeSet<ExponentTuple> = match gold.representatives {
                        None => omega.clone(),
                        Some(reps) => {
                            let mut set = BTreeSet::new();
                            for rep in reps {
                                set.extend(permutations_of(*rep));
                            }
                            set
                        }
                    };
                    let monomials_ok = monomials == expected;
                    let mut diff = String::new();
                    if !monomials_ok {
                        let missing: Vec<String> =
                            expected.difference(&monomials).take(8).map(tuple_str).collect();
                        let extra: Vec<String> =
                            monomials.difference(&expected).take(8).map(tuple_str).collect();
                        diff = format!(
                            "missing=[{}] unexpected=[{}]",
                            missing.join("; "),
                            extra.join("; ")
                        );
                    }
                    (true, members_ok, monomials_ok, monomials.len(), diff)
                }
            };
        let row_ok = matched_boundary && matched_members && matched_monomials;
        ok &= row_ok;
        text += &format!(
            "{} ideal {j}: boundary={} members_matched={matched_members} monomials={monomial_count} monomials_matched={matched_monomials}",
            if row_ok { "PASS" } else { "FAIL" },
            sig_list_str(&golden_sig_set(gold.boundary, &spec, n)?.into_iter().collect::<Vec<_>>()),
        );
        if !diff.is_empty() {
            text += &format!(" diff: {diff}");
        }
        text.push('\n');
        rows.push(json!({
            "boundary": gold.boundary.iter().map(|t| json!(t)).collect::<Vec<_>>(),
            "index": j,
            "matched_boundary": matched_boundary,
            "matched_members": matched_members,
            "matched_monomials": matched_monomials,
            "monomial_count": monomial_count,
        }));
    }

    // The match must be a bijection, and the full ideal holds all 161
    // monomials.
    let bijection = used.len() == computed.len() && count_matched;
    ok &= bijection;
    let full_count_ok = omega.len() == golden::FULL_MONOMIAL_COUNT;
    ok &= full_count_ok;
    text += &format!(
        "bijection={bijection} full_monomial_count={} expected={}\n",
        omega.len(),
        golden::FULL_MONOMIAL_COUNT
    );
    text += &format!("verified={ok}\n");

    let json_value = json!({
        "ideals": rows,
        "signatures_matched": signatures_matched,
        "verified": ok,
    });
    Ok((text, json_value, ok))
}

// ---------------------------------------------------------------------------
// Dispatch.

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Omega { field, deg, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let omega = enumerate_omega(spec.q(), n, deg.r).map_err(err)?;
            let mut text = format!(
                "# {} monomials of degree {} in {n} variables over F_{}\n",
                omega.len(),
                deg.r,
                spec.q()
            );
            for e in &omega {
                text += &tuple_str(e);
                text.push('\n');
            }
            let json_value = Value::Array(omega.iter().map(tuple_json).collect());
            emit(&output, text, json_value)?;
            Ok(0)
        }
        Command::Tsig { field, deg, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let poset = enumerate_signatures(spec.q(), n, deg.r).map_err(err)?;
            let mut text = format!(
                "# {} signatures for q={} n={n} r={}\n",
                poset.len(),
                spec.q(),
                deg.r
            );
            for t in poset.nodes() {
                text += &format!("t={} fiber={}\n", sig_str(t), poset.fiber(t).map_err(err)?.len());
            }
            let json_value = Value::Array(poset.nodes().iter().map(sig_json).collect());
            emit(&output, text, json_value)?;
            Ok(0)
        }
        Command::Ideals { field, deg, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let poset = enumerate_signatures(spec.q(), n, deg.r).map_err(err)?;
            let ideals = ideals_enumerate(&poset);
            let mut text = format!(
                "# {} ideals of the signature poset for q={} n={n} r={}\n",
                ideals.len(),
                spec.q(),
                deg.r
            );
            let mut arr = Vec::new();
            for (k, ideal) in ideals.iter().enumerate() {
                text += &format!(
                    "ideal {k}: boundary={} members={}\n",
                    sig_list_str(ideal.boundary()),
                    sig_list_str(ideal.members())
                );
                arr.push(json!({
                    "boundary": ideal.boundary().iter().map(sig_json).collect::<Vec<_>>(),
                    "members": ideal.members().iter().map(sig_json).collect::<Vec<_>>(),
                }));
            }
            emit(&output, text, Value::Array(arr))?;
            Ok(0)
        }
        Command::Submodule { field, deg, boundary, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let poset = enumerate_signatures(spec.q(), n, deg.r).map_err(err)?;
            let sigs = parse_boundary(&spec, n, &boundary)?;
            let ideal = PosetIdeal::from_boundary(&poset, &sigs).map_err(err)?;
            let module = module_of_ideal(&spec, &poset, &ideal).map_err(err)?;
            let mut text = format!(
                "# submodule of dimension {} spanned by {} monomials\n",
                module.space().dim(),
                module.monomials().len()
            );
            for e in module.monomials() {
                text += &tuple_str(e);
                text.push('\n');
            }
            let json_value = json!({
                "dim": module.space().dim(),
                "monomials": module.monomials().iter().map(tuple_json).collect::<Vec<_>>(),
            });
            emit(&output, text, json_value)?;
            Ok(0)
        }
        Command::Chain { field, deg, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let chain = composition_chain(spec.q(), n, deg.r).map_err(err)?;
            let mut text = format!(
                "# composition chain of length {} for q={} n={n} r={}\n",
                chain.len(),
                spec.q(),
                deg.r
            );
            let mut steps = Vec::new();
            for (k, t) in chain.removed().iter().enumerate() {
                let factor = factor_module(&spec, chain.poset(), t).map_err(err)?;
                let basis: Vec<String> = factor.basis().iter().map(tuple_str).collect();
                text += &format!(
                    "step {k}: signature={} dim={} basis={}\n",
                    sig_str(t),
                    factor.dim(),
                    basis.join("; ")
                );
                steps.push(json!({
                    "factor_basis": factor.basis().iter().map(tuple_json).collect::<Vec<_>>(),
                    "factor_dim": factor.dim(),
                    "removed": sig_json(t),
                }));
            }
            emit(&output, text, json!({ "steps": steps }))?;
            Ok(0)
        }
        Command::Dims { field, deg, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let poset = enumerate_signatures(spec.q(), n, deg.r).map_err(err)?;
            let mut text = format!(
                "# composition factor dimensions for q={} n={n} r={}\n",
                spec.q(),
                deg.r
            );
            let mut arr = Vec::new();
            for t in poset.nodes().iter().rev() {
                let dim = dim_formula(t, spec.q(), n).map_err(err)?;
                text += &format!("t={} dim={dim}\n", sig_str(t));
                arr.push(json!({"dim": dim, "t": t.components()}));
            }
            emit(&output, text, Value::Array(arr))?;
            Ok(0)
        }
        Command::Series { field, output } => {
            let (spec, n) = setup(&field)?;
            let series = counting_series(spec.q(), n).map_err(err)?;
            let total = total_length(spec.q(), n).map_err(err)?;
            let mut text = format!("# composition factor counts for q={} n={n}\n", spec.q());
            for (r, count) in series.iter().enumerate() {
                text += &format!("r={r}: {count}\n");
            }
            text += &format!("total: {total}\n");
            emit(&output, text, json!({"coefficients": series, "total": total}))?;
            Ok(0)
        }
        Command::Orbit { field, deg, element, search, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let budget = resolve_budget(search.budget)?;
            let h = parse_element(&spec, n, deg.r, &element)?;
            let result = orbit(&h, budget).map_err(err)?;
            let closed = result.status == SearchStatus::Closed;
            let mut text = format!(
                "# orbit search: size={} closed={closed} budget={budget}\n",
                result.len()
            );
            for e in &result.elements {
                text += &element_str(e);
                text.push('\n');
            }
            let json_value = json!({
                "budget": budget,
                "closed": closed,
                "elements": result.elements.iter().map(element_json).collect::<Vec<_>>(),
                "size": result.len(),
            });
            emit(&output, text, json_value)?;
            Ok(0)
        }
        Command::Equivalent { field, deg, f, g, search, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let budget = resolve_budget(search.budget)?;
            let fe = parse_element(&spec, n, deg.r, &f)?;
            let ge = parse_element(&spec, n, deg.r, &g)?;
            let status = match gl_equivalent(&fe, &ge, budget).map_err(err)? {
                Equivalence::Equivalent => "equivalent",
                Equivalence::NotEquivalent => "not-equivalent",
                Equivalence::BudgetExceeded => "budget-exceeded",
            };
            let text = format!("status={status}\n");
            emit(&output, text, json!({"budget": budget, "status": status}))?;
            Ok(0)
        }
        Command::Verify { what, field, deg, search, output } => {
            let (spec, n) = setup(&field)?;
            check_degree(&spec, n, deg.r)?;
            let budget = resolve_budget(search.budget)?;
            let r = deg.r;
            let (text, json_value, ok) = match what {
                VerifyWhat::Duality => verify_duality_cmd(&spec, n, r, &search)?,
                VerifyWhat::Lemma21 => verify_lemma21_cmd(&spec, n, r, &search)?,
                VerifyWhat::Sigma => verify_sigma_cmd(&spec, n, r, &search)?,
                VerifyWhat::Theorem38 => {
                    verify_theorem38_cmd(&spec, n, r, &search, budget)?
                }
                VerifyWhat::All => {
                    let (t1, j1, ok1) = verify_duality_cmd(&spec, n, r, &search)?;
                    let (t2, j2, ok2) = verify_lemma21_cmd(&spec, n, r, &search)?;
                    let (t3, j3, ok3) = verify_sigma_cmd(&spec, n, r, &search)?;
                    let (t4, j4, ok4) = verify_theorem38_cmd(&spec, n, r, &search, budget)?;
                    let ok = ok1 && ok2 && ok3 && ok4;
                    let text = format!("{t1}{t2}{t3}{t4}all verified={ok}\n");
                    let json_value = json!({
                        "duality": j1,
                        "lemma21": j2,
                        "sigma": j3,
                        "theorem38": j4,
                        "verified": ok,
                    });
                    (text, json_value, ok)
                }
            };
            emit(&output, text, json_value)?;
            Ok(if ok { 0 } else { 2 })
        }
        Command::Reproduce { which, output } => {
            let (text, json_value, ok) = match which {
                ReproduceWhich::Example24 => reproduce_example24()?,
                ReproduceWhich::Example39 => reproduce_example39()?,
            };
            emit(&output, text, json_value)?;
            Ok(if ok { 0 } else { 2 })
        }
    }
}
