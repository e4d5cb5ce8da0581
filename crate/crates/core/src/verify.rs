//! Exhaustive checks over all intervals up to a length bound, and the
//! report types they produce.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closedform::{
    step_identity_check, kl_basis_theta, kl_basis_theta1, kl_basis_theta2,
    kl_basis_x, kl_fast, lower_interval_sizes, m_union_size, product_identity_check, Version,
};
use crate::error::{Error, Result};
use crate::hecke::{is_monotonic, kl_basis, kl_polynomial};
use crate::laurent::QPoly;
use crate::poset::{
    fingerprint, is_isomorphic, structural_lemma_checks, theta2_coatoms, theta2_expected_coatoms,
    theta2_parent_table, verify_certificate, x_chain_expected_parents, x_chain_parents,
    z_preserved_check, Interval,
};
use crate::regions::{
    boundary_union_check, intersection_check, matching_kinds, theta, theta1, theta2, x_chain,
    ThetaIndex,
};
use crate::weyl::{bruhat_leq, enumerate_up_to_length, enumeration_cap, lower_interval, Element, Symmetry};

/// Bounds used when a suite is run without explicit parameters.
pub const DEFAULT_CONJECTURE_BOUND: u32 = 8;
pub const DEFAULT_FORMULA_BOUND: u32 = 15;
pub const DEFAULT_LEMMA_PARAM: u32 = 4;
pub const DEFAULT_STRUCTURAL_BOUND: u32 = 10;

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    /// Counterexamples; the first one is the smallest.
    pub witnesses: Vec<Value>,
    pub details: Value,
}

impl SuiteResult {
    fn new(name: &str, checked: usize, witnesses: Vec<Value>, details: Value) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            passed: witnesses.is_empty(),
            checked,
            witnesses,
            details,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witnesses": self.witnesses,
            "details": self.details,
        })
    }
}

/// Number of isomorphism classes among intervals of one height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub height: u32,
    pub intervals: usize,
    pub classes: usize,
    /// Distinct `(size, rank sizes, fingerprint)` keys.
    pub buckets: usize,
    /// Buckets that hold more than one class.
    pub collisions: usize,
}

impl CensusRow {
    pub fn to_json(&self) -> Value {
        json!({
            "height": self.height,
            "intervals": self.intervals,
            "classes": self.classes,
            "buckets": self.buckets,
            "collisions": self.collisions,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub max_length: u32,
    pub suites: Vec<SuiteResult>,
    pub census: Vec<CensusRow>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scope": {
                "max_length": self.max_length,
                "suites": self.suites.iter().map(|s| s.name.clone()).collect::<Vec<_>>(),
            },
            "passed": self.passed(),
            "suites": self.suites.iter().map(SuiteResult::to_json).collect::<Vec<_>>(),
            "census": self.census.iter().map(CensusRow::to_json).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed_ms as u64,
        })
    }

    /// One line per suite, then one line per census row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,passed,checked,witness\n");
        for s in &self.suites {
            let witness = s
                .witnesses
                .first()
                .map(|w| w.to_string().replace('"', "'"))
                .unwrap_or_default();
            let _ = writeln!(out, "{},{},{},\"{}\"", s.name, s.passed, s.checked, witness);
        }
        if !self.census.is_empty() {
            out.push_str("height,intervals,classes,buckets,collisions\n");
            for r in &self.census {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.height, r.intervals, r.classes, r.buckets, r.collisions
                );
            }
        }
        out
    }

    fn merge(reports: Vec<VerificationReport>) -> VerificationReport {
        let mut out = VerificationReport {
            max_length: 0,
            suites: Vec::new(),
            census: Vec::new(),
            elapsed_ms: 0,
        };
        for r in reports {
            out.max_length = out.max_length.max(r.max_length);
            out.suites.extend(r.suites);
            if out.census.is_empty() {
                out.census = r.census;
            }
            out.elapsed_ms += r.elapsed_ms;
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConjectureOptions {
    pub max_length: u32,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Fraction of intervals whose fast-path polynomial is re-derived by the
    /// generic recursion and compared.
    pub sample_rate: f64,
    pub seed: u64,
    pub check_z_invariants: bool,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        ConjectureOptions {
            max_length: DEFAULT_CONJECTURE_BOUND,
            jobs: 0,
            sample_rate: 0.01,
            seed: 0x5eed,
            check_z_invariants: true,
        }
    }
}

fn check_cap(max_length: u32) -> Result<()> {
    let cap = enumeration_cap();
    if max_length as usize > cap {
        return Err(Error::ResourceLimit {
            requested: max_length as usize,
            cap,
        });
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(pool.install(f))
}

type BucketKey = (u32, usize, Vec<usize>, u64);

#[derive(Clone, Debug)]
struct Entry {
    x: Element,
    y: Element,
    p: QPoly,
}

impl Entry {
    fn order_key(&self) -> ((u32, crate::weyl::Word), (u32, crate::weyl::Word)) {
        (self.y.shortlex_key(), self.x.shortlex_key())
    }

    fn describe(&self) -> Value {
        json!({"x": self.x.to_string(), "y": self.y.to_string(), "p": self.p.to_string()})
    }
}

struct BucketOutcome {
    height: u32,
    intervals: usize,
    classes: usize,
    certificates: usize,
    violations: Vec<(Entry, Entry)>,
    bad_certificates: Vec<(Entry, Entry)>,
    z_failures: Vec<(Entry, Entry)>,
}

fn classify_bucket(entries: &[Entry], check_z: bool) -> Result<BucketOutcome> {
    let mut reps: Vec<(Interval, &Entry)> = Vec::new();
    let mut out = BucketOutcome {
        height: entries[0].y.length() - entries[0].x.length(),
        intervals: entries.len(),
        classes: 0,
        certificates: 0,
        violations: Vec::new(),
        bad_certificates: Vec::new(),
        z_failures: Vec::new(),
    };
    for e in entries {
        let iv = Interval::build(&e.x, &e.y)?;
        let mut matched = false;
        for (rep, rep_entry) in &reps {
            if let Some(cert) = is_isomorphic(rep, &iv) {
                matched = true;
                out.certificates += 1;
                if !verify_certificate(rep, &iv, &cert) {
                    out.bad_certificates.push(((*rep_entry).clone(), e.clone()));
                }
                if rep_entry.p != e.p {
                    out.violations.push(((*rep_entry).clone(), e.clone()));
                }
                if check_z && !z_preserved_check(rep, &iv, &cert)? {
                    out.z_failures.push(((*rep_entry).clone(), e.clone()));
                }
                break;
            }
        }
        if !matched {
            reps.push((iv, e));
        }
    }
    out.classes = reps.len();
    Ok(out)
}

fn pair_witness(pairs: &mut [(Entry, Entry)]) -> Vec<Value> {
    pairs.sort_by_key(|(a, b)| {
        let (first, second) = if a.order_key() <= b.order_key() { (a, b) } else { (b, a) };
        (first.order_key(), second.order_key())
    });
    pairs
        .iter()
        .map(|(a, b)| json!({"a": a.describe(), "b": b.describe()}))
        .collect()
}

/// Checks that isomorphic intervals `[x,y]` with `ℓ(y) ≤ max_length` have
/// equal KL polynomials.
///
/// Intervals are bucketed by `(height, size, rank sizes, fingerprint)`; each
/// interval is compared against the class representatives of its bucket.
/// Polynomials come from the generic recursion; a seeded sample of the fast
/// path is compared against them.
pub fn verify_conjecture(opts: &ConjectureOptions) -> Result<VerificationReport> {
    check_cap(opts.max_length)?;
    let start = Instant::now();
    let tops = enumerate_up_to_length(opts.max_length as usize)?;
    let (suites, census) = with_pool(opts.jobs, || -> Result<_> {
        let per_top: Vec<Vec<(BucketKey, Entry)>> = tops
            .par_iter()
            .map(|y| -> Result<Vec<(BucketKey, Entry)>> {
                let basis = kl_basis(y)?;
                Interval::with_top(y)
                    .into_iter()
                    .map(|iv| {
                        let x = iv.bottom();
                        let p = basis.coefficient(&x).to_q(iv.height())?;
                        let key = (iv.height(), iv.len(), iv.rank_sizes(), fingerprint(&iv));
                        Ok((key, Entry { x, y: *y, p }))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let all: Vec<Entry> = per_top.iter().flatten().map(|(_, e)| e.clone()).collect();
        let mut buckets: BTreeMap<BucketKey, Vec<Entry>> = BTreeMap::new();
        for (key, e) in per_top.into_iter().flatten() {
            buckets.entry(key).or_default().push(e);
        }
        for entries in buckets.values_mut() {
            entries.sort_by_key(Entry::order_key);
        }
        let outcomes: Vec<BucketOutcome> = buckets
            .par_iter()
            .map(|(_, entries)| classify_bucket(entries, opts.check_z_invariants))
            .collect::<Result<_>>()?;

        let mut violations = Vec::new();
        let mut bad = Vec::new();
        let mut z_fail = Vec::new();
        let mut certificates = 0;
        let mut rows: BTreeMap<u32, CensusRow> = BTreeMap::new();
        for o in outcomes {
            certificates += o.certificates;
            violations.extend(o.violations);
            bad.extend(o.bad_certificates);
            z_fail.extend(o.z_failures);
            let row = rows.entry(o.height).or_insert(CensusRow {
                height: o.height,
                intervals: 0,
                classes: 0,
                buckets: 0,
                collisions: 0,
            });
            row.intervals += o.intervals;
            row.classes += o.classes;
            row.buckets += 1;
            row.collisions += usize::from(o.classes > 1);
        }

        let mut fast_mismatch = Vec::new();
        let k = ((all.len() as f64 * opts.sample_rate).ceil() as usize).clamp(1, all.len().max(1));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut picked: Vec<usize> = sample(&mut rng, all.len(), k.min(all.len())).into_vec();
        picked.sort_unstable();
        for &i in &picked {
            let e = &all[i];
            if kl_fast(&e.x, &e.y)? != e.p {
                fast_mismatch.push(e.describe());
            }
        }

        let mut suites = vec![SuiteResult::new(
            "conjecture",
            all.len(),
            pair_witness(&mut violations),
            json!({
                "isomorphic_pairs_checked": certificates,
                "classes": rows.values().map(|r| r.classes).sum::<usize>(),
            }),
        )];
        suites.push(SuiteResult::new(
            "certificates",
            certificates,
            pair_witness(&mut bad),
            json!({}),
        ));
        suites.push(SuiteResult::new(
            "fast_path_sample",
            picked.len(),
            fast_mismatch,
            json!({"seed": opts.seed, "rate": opts.sample_rate}),
        ));
        if opts.check_z_invariants {
            suites.push(SuiteResult::new(
                "z_preservation",
                certificates,
                pair_witness(&mut z_fail),
                json!({"m": [1, 2, 3, 4]}),
            ));
        }
        Ok((suites, rows.into_values().collect::<Vec<_>>()))
    })??;
    Ok(VerificationReport {
        max_length: opts.max_length,
        suites,
        census,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Isomorphism class counts per interval height for `ℓ(y) ≤ max_length`.
pub fn iso_class_census(max_length: u32, jobs: usize) -> Result<Vec<CensusRow>> {
    let opts = ConjectureOptions {
        max_length,
        jobs,
        check_z_invariants: false,
        ..Default::default()
    };
    Ok(verify_conjecture(&opts)?.census)
}

/// Closed forms against the generic recursion for every family member of
/// length `≤ max_length`, both presentations of the `s₀θs` family, and the
/// product identities for `m, n ≤ 3`.
pub fn verify_closed_forms(max_length: u32) -> Result<VerificationReport> {
    check_cap(max_length)?;
    let start = Instant::now();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut check = |family: &'static str, w: Element, closed: crate::hecke::HeckeElement| -> Result<()> {
        *counts.entry(family).or_default() += 1;
        if closed != *kl_basis(&w)? {
            witnesses.push(json!({"family": family, "element": w.to_string()}));
        }
        Ok(())
    };
    for n in 1..=max_length {
        check("x", x_chain(n)?, kl_basis_x(n)?)?;
    }
    for total in 0..=max_length.saturating_sub(3) / 2 {
        for m in 0..=total {
            let idx = ThetaIndex::new(m, total - m);
            if 2 * total + 3 <= max_length {
                check("theta", theta(idx), kl_basis_theta(idx))?;
            }
            if 2 * total + 4 <= max_length {
                check("theta1", theta1(idx), kl_basis_theta1(idx))?;
            }
            if 2 * total + 5 <= max_length {
                check("theta2_v1", theta2(idx), kl_basis_theta2(idx, Version::One))?;
                check("theta2_v2", theta2(idx), kl_basis_theta2(idx, Version::Two))?;
            }
        }
    }
    let checked = counts.values().sum();
    let mut suites = vec![SuiteResult::new("closed_forms", checked, witnesses, json!(counts))];

    let mut version_witnesses = Vec::new();
    let mut product_witnesses = Vec::new();
    let mut products = 0;
    for m in 0..=3 {
        for n in 0..=3 {
            let idx = ThetaIndex::new(m, n);
            if kl_basis_theta2(idx, Version::One) != kl_basis_theta2(idx, Version::Two) {
                version_witnesses.push(json!({"m": m, "n": n}));
            }
            if theta2(idx).length() <= max_length {
                products += 1;
                let report = product_identity_check(idx)?;
                if !report.holds {
                    product_witnesses.push(report.to_json());
                }
            }
        }
    }
    suites.push(SuiteResult::new("theta2_versions", 16, version_witnesses, json!({})));
    suites.push(SuiteResult::new("product_identities", products, product_witnesses, json!({})));
    Ok(VerificationReport {
        max_length,
        suites,
        census: Vec::new(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn poly(m: u32, n: u32, a: u32, b: u32, c: u32) -> usize {
    (3 * m * m + 3 * n * n + 12 * m * n + a * m + b * n + c) as usize
}

/// Interval sizes `|θ↓|`, `|θs↓|`, `|s₀θs↓|` and the `M` union against the
/// quadratic formulas, for `m, n ≤ bound`.
pub fn check_cardinalities(bound: u32) -> SuiteResult {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for m in 0..=bound {
        for n in 0..=bound {
            let idx = ThetaIndex::new(m, n);
            let got = lower_interval_sizes(idx);
            let want = [poly(m, n, 9, 9, 6), poly(m, n, 15, 15, 12), poly(m, n, 21, 21, 22)];
            checked += 3;
            if got != want {
                witnesses.push(json!({"m": m, "n": n, "got": got, "want": want}));
            }
            if m > 0 && n > 0 {
                checked += 1;
                let got = m_union_size(idx).expect("m, n >= 1");
                if got != poly(m, n, 9, 9, 2) {
                    witnesses.push(json!({"m": m, "n": n, "m_union": got}));
                }
            }
        }
    }
    SuiteResult::new("cardinalities", checked, witnesses, json!({"bound": bound}))
}

pub fn check_intersections(bound: u32) -> Result<SuiteResult> {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for m in 1..=bound {
        for n in 1..=bound {
            checked += 1;
            if !intersection_check(m, n)? {
                witnesses.push(json!({"m": m, "n": n}));
            }
        }
    }
    Ok(SuiteResult::new("intersection", checked, witnesses, json!({"bound": bound})))
}

pub fn check_boundaries(bound: u32) -> SuiteResult {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for m in 0..=bound {
        for n in 0..=bound {
            checked += 1;
            if !boundary_union_check(ThetaIndex::new(m, n)) {
                witnesses.push(json!({"m": m, "n": n}));
            }
        }
    }
    SuiteResult::new("boundary_union", checked, witnesses, json!({"bound": bound}))
}

/// The step identity for `1 ≤ m, n ≤ bound`: equality, contents and
/// monotonicity of the left side.
pub fn check_step_identity(bound: u32) -> Result<SuiteResult> {
    let mut witnesses = Vec::new();
    let mut reports = Vec::new();
    for m in 1..=bound {
        for n in 1..=bound {
            let report = step_identity_check(m, n)?.report();
            if !report.holds {
                witnesses.push(report.to_json());
            }
            reports.push(report.to_json());
        }
    }
    let checked = reports.len();
    Ok(SuiteResult::new("step_identity", checked, witnesses, json!(reports)))
}

/// 3 for the pairs `{1,2}` and `{3,4}`, 2 otherwise.
pub fn expected_parent_count(i: usize, j: usize) -> usize {
    if (i, j) == (1, 2) || (i, j) == (3, 4) {
        3
    } else {
        2
    }
}

/// The 2-parent table for `y = s₀θ(m,n)s`, `m, n ≤ bound`, and the
/// four-parent set of the chain family for even `6 ≤ k ≤ max_k`.
pub fn check_parents(bound: u32, max_k: u32) -> Result<SuiteResult> {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    let mut interior_failures = 0;
    for m in 0..=bound {
        for n in 0..=bound {
            for ((i, j), count) in theta2_parent_table(ThetaIndex::new(m, n))? {
                checked += 1;
                if count != expected_parent_count(i, j) {
                    interior_failures += usize::from(m > 0 && n > 0);
                    witnesses.push(json!({"m": m, "n": n, "pair": [i, j], "count": count}));
                }
            }
        }
    }
    for k in (6..=max_k).step_by(2) {
        checked += 1;
        let got = x_chain_parents(k)?;
        if got.len() != 4 || got != x_chain_expected_parents(k)? {
            let words: Vec<String> = got.iter().map(|w| w.to_string()).collect();
            witnesses.push(json!({"k": k, "parents": words}));
        }
    }
    let details = json!({"bound": bound, "max_k": max_k, "interior_failures": interior_failures});
    Ok(SuiteResult::new("parents", checked, witnesses, details))
}

pub fn check_coatoms(bound: u32) -> Result<SuiteResult> {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for m in 1..=bound {
        for n in 1..=bound {
            let idx = ThetaIndex::new(m, n);
            checked += 1;
            if theta2_coatoms(idx)? != theta2_expected_coatoms(idx)? {
                witnesses.push(json!({"m": m, "n": n}));
            }
        }
    }
    Ok(SuiteResult::new("coatoms", checked, witnesses, json!({"bound": bound})))
}

pub fn check_structural_lemmas(bound: u32) -> Result<SuiteResult> {
    check_cap(bound)?;
    let tops = enumerate_up_to_length(bound as usize)?;
    let report = structural_lemma_checks(&tops, bound)?;
    let checked = report.outcomes.iter().map(|o| o.checked).sum();
    let witnesses = report
        .outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| o.to_json())
        .collect();
    Ok(SuiteResult::new("structural_lemmas", checked, witnesses, report.to_json()))
}

/// `h_{x,y} − v^{ℓ(z)−ℓ(x)}h_{z,y} ∈ ℕ[v]` and `P_{x,y} − P_{z,y} ∈ ℕ[q]`
/// for every `x ≤ z ≤ y` with `ℓ(y) ≤ max_length`, plus monotonicity of
/// each `H̲_y` as an element.
pub fn check_monotonicity(max_length: u32, jobs: usize) -> Result<SuiteResult> {
    check_cap(max_length)?;
    let tops = enumerate_up_to_length(max_length as usize)?;
    let per_top = with_pool(jobs, || {
        tops.par_iter()
            .map(|y| -> Result<(usize, Vec<Value>)> {
                let basis = kl_basis(y)?;
                let below = lower_interval(y);
                let mut checked = 0;
                let mut bad = Vec::new();
                if !is_monotonic(&basis) {
                    bad.push(json!({"y": y.to_string(), "element": "not monotonic"}));
                }
                let qs: HashMap<Element, QPoly> = below
                    .iter()
                    .map(|x| Ok((*x, basis.coefficient(x).to_q(y.length() - x.length())?)))
                    .collect::<Result<_>>()?;
                for x in below.iter() {
                    let hx = basis.coefficient(x);
                    for z in below.iter() {
                        if z.length() <= x.length() || !bruhat_leq(x, z) {
                            continue;
                        }
                        checked += 1;
                        let shifted = basis.coefficient(z).shift((z.length() - x.length()) as i32);
                        let v_ok = (&hx - &shifted).is_nonneg();
                        let q_ok = (&qs[x] - &qs[z]).is_nonneg();
                        if !(v_ok && q_ok) {
                            bad.push(json!({"x": x.to_string(), "z": z.to_string(), "y": y.to_string()}));
                        }
                    }
                }
                Ok((checked, bad))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let checked = per_top.iter().map(|(c, _)| c).sum();
    let witnesses = per_top.into_iter().flat_map(|(_, b)| b).collect();
    Ok(SuiteResult::new("monotonicity", checked, witnesses, json!({"max_length": max_length})))
}

/// Every non-identity element of length `≤ max_length` lies in exactly one
/// region, and there are `3n` elements of each length `n ≥ 1`.
pub fn check_partition(max_length: u32) -> Result<SuiteResult> {
    check_cap(max_length)?;
    let elems = enumerate_up_to_length(max_length as usize)?;
    let mut witnesses = Vec::new();
    let mut per_length = vec![0usize; max_length as usize + 1];
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    for w in &elems {
        per_length[w.length() as usize] += 1;
        if w.is_identity() {
            continue;
        }
        let kinds = matching_kinds(w);
        if kinds.len() != 1 {
            let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
            witnesses.push(json!({"element": w.to_string(), "kinds": names}));
        } else {
            *census.entry(kinds[0].name().to_string()).or_default() += 1;
        }
    }
    for (n, &count) in per_length.iter().enumerate().skip(1) {
        if count != 3 * n {
            witnesses.push(json!({"length": n, "count": count}));
        }
    }
    Ok(SuiteResult::new("partition", elems.len(), witnesses, json!(census)))
}

/// Symmetries preserve lengths, the Bruhat order and KL polynomials.
pub fn check_symmetry(max_length: u32, jobs: usize) -> Result<SuiteResult> {
    check_cap(max_length)?;
    let elems = enumerate_up_to_length(max_length as usize)?;
    let all = Symmetry::all();
    let per_y = with_pool(jobs, || {
        elems
            .par_iter()
            .map(|y| -> Result<(usize, Vec<Value>)> {
                let mut checked = 0;
                let mut bad = Vec::new();
                for tau in &all {
                    let ty = tau.apply(y);
                    checked += 1;
                    if ty.length() != y.length() {
                        bad.push(json!({"y": y.to_string(), "tau": tau.name(), "what": "length"}));
                    }
                    for x in &elems {
                        checked += 1;
                        let tx = tau.apply(x);
                        if bruhat_leq(x, y) != bruhat_leq(&tx, &ty) {
                            bad.push(json!({"x": x.to_string(), "y": y.to_string(), "tau": tau.name(), "what": "order"}));
                        }
                    }
                    for x in lower_interval(y).iter() {
                        checked += 1;
                        if kl_polynomial(x, y)?.1 != kl_polynomial(&tau.apply(x), &ty)?.1 {
                            bad.push(json!({"x": x.to_string(), "y": y.to_string(), "tau": tau.name(), "what": "kl"}));
                        }
                    }
                }
                Ok((checked, bad))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let checked = per_y.iter().map(|(c, _)| c).sum();
    let witnesses = per_y.into_iter().flat_map(|(_, b)| b).collect();
    Ok(SuiteResult::new("symmetry", checked, witnesses, json!({"max_length": max_length})))
}

/// Every lemma-level check with default bounds.
pub fn verify_lemma_suite() -> Result<VerificationReport> {
    let start = Instant::now();
    let p = DEFAULT_LEMMA_PARAM;
    let suites = vec![
        check_cardinalities(p),
        check_intersections(p)?,
        check_boundaries(3),
        check_step_identity(3)?,
        check_parents(3, 12)?,
        check_coatoms(3)?,
        check_structural_lemmas(DEFAULT_STRUCTURAL_BOUND)?,
        check_monotonicity(DEFAULT_STRUCTURAL_BOUND, 0)?,
        check_partition(14)?,
    ];
    Ok(VerificationReport {
        max_length: DEFAULT_STRUCTURAL_BOUND,
        suites,
        census: Vec::new(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs a named suite: `conjecture`, `closed-forms`, `lemmas`,
/// `monotonicity`, `partition`, `symmetry` or `all`.
pub fn run_suite(name: &str, max_length: Option<u32>, jobs: usize) -> Result<VerificationReport> {
    let single = |suite: SuiteResult, bound: u32| VerificationReport {
        max_length: bound,
        suites: vec![suite],
        census: Vec::new(),
        elapsed_ms: 0,
    };
    match name {
        "conjecture" => verify_conjecture(&ConjectureOptions {
            max_length: max_length.unwrap_or(DEFAULT_CONJECTURE_BOUND),
            jobs,
            ..Default::default()
        }),
        "closed-forms" => verify_closed_forms(max_length.unwrap_or(DEFAULT_FORMULA_BOUND)),
        "lemmas" => verify_lemma_suite(),
        "monotonicity" => {
            let bound = max_length.unwrap_or(DEFAULT_STRUCTURAL_BOUND);
            Ok(single(check_monotonicity(bound, jobs)?, bound))
        }
        "partition" => {
            let bound = max_length.unwrap_or(14);
            Ok(single(check_partition(bound)?, bound))
        }
        "symmetry" => {
            let bound = max_length.unwrap_or(DEFAULT_CONJECTURE_BOUND);
            Ok(single(check_symmetry(bound, jobs)?, bound))
        }
        "all" => Ok(VerificationReport::merge(vec![
            run_suite("conjecture", max_length, jobs)?,
            run_suite("closed-forms", None, jobs)?,
            run_suite("lemmas", None, jobs)?,
        ])),
        other => Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
    }
}
