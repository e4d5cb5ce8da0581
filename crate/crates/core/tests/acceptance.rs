//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use bruhat_forge::closedform::{
    step_identity_check, kl_basis_theta, kl_basis_theta1, kl_basis_theta2, kl_basis_x, Version,
};
use bruhat_forge::hecke::{content, kl_basis, m_element};
use bruhat_forge::poset::{
    is_isomorphic, structural_lemma_checks, theta2_parent_table, verify_certificate, x_chain_expected_parents,
    x_chain_parents,
};
use bruhat_forge::regions::{classify, intersection_check, matching_kinds, s_mn, theta, theta1, theta2, x_chain};
use bruhat_forge::render::render_regions;
use bruhat_forge::verify::{check_monotonicity, check_symmetry, verify_conjecture, ConjectureOptions};
use bruhat_forge::weyl::{enumerate_up_to_length, lower_interval};
use bruhat_forge::{Interval, LaurentPoly, Result, Side, Symmetry, ThetaIndex};

type Criterion = (&'static str, fn() -> Result<Verdict>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict {
        pass,
        detail: detail.into(),
    })
}

fn idx(m: u32, n: u32) -> ThetaIndex {
    ThetaIndex::new(m, n)
}

fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

fn closed_forms() -> Result<Verdict> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=14 {
        checked += 1;
        if kl_basis_x(n)? != *kl_basis(&x_chain(n)?)? {
            bad.push(format!("x_{n}"));
        }
    }
    for m in 0..=6 {
        for n in 0..=6 - m {
            let i = idx(m, n);
            let cases = [
                ("theta", theta(i), kl_basis_theta(i)),
                ("theta1", theta1(i), kl_basis_theta1(i)),
                ("theta2 v1", theta2(i), kl_basis_theta2(i, Version::One)),
                ("theta2 v2", theta2(i), kl_basis_theta2(i, Version::Two)),
            ];
            for (name, w, closed) in cases {
                if w.length() > 15 {
                    continue;
                }
                checked += 1;
                if closed != *kl_basis(&w)? {
                    bad.push(format!("{name}({m},{n})"));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} elements compared, mismatches {bad:?}"))
}

fn quad(m: u32, n: u32, a: u32, c: u32) -> usize {
    (3 * m * m + 3 * n * n + 12 * m * n + a * m + a * n + c) as usize
}

fn cardinalities() -> Result<Verdict> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in 0..=4 {
        for n in 0..=4 {
            let i = idx(m, n);
            let sizes = [
                (lower_interval(&theta(i)).len(), quad(m, n, 9, 6)),
                (lower_interval(&theta1(i)).len(), quad(m, n, 15, 12)),
                (lower_interval(&theta2(i)).len(), quad(m, n, 21, 22)),
            ];
            for (k, (got, want)) in sizes.into_iter().enumerate() {
                checked += 1;
                if got != want {
                    bad.push(format!("({m},{n}) size {k}: {got} vs {want}"));
                }
            }
            // M_{ρ(θ(m,n−1))s, ρ²(θ(m−1,n))s} only exists for m, n ≥ 1
            if m > 0 && n > 0 {
                let s = s_mn(i);
                let a = Symmetry::rho_pow(1).apply(&theta(idx(m, n - 1))).mul_gen(s, Side::Right);
                let b = Symmetry::rho_pow(2).apply(&theta(idx(m - 1, n))).mul_gen(s, Side::Right);
                checked += 1;
                let got = content(&m_element(&a, &b));
                if got != quad(m, n, 9, 2).into() {
                    bad.push(format!("({m},{n}) M content {got}"));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} counts, mismatches {bad:?}"))
}

fn step_identity() -> Result<Verdict> {
    let stated = [lp(&[(0, 1)]), lp(&[(3, 1), (1, 1)]), lp(&[(3, 1), (1, 1)]), lp(&[(4, 1), (1, 2)])];
    let mut equal = 0;
    let mut contents = 0;
    let mut anchor_misses: BTreeMap<(usize, String), usize> = BTreeMap::new();
    for m in 1..=3 {
        for n in 1..=3 {
            let a = step_identity_check(m, n)?;
            equal += usize::from(a.holds());
            contents += usize::from(a.left_content == a.right_content && a.left_content == a.expected_content());
            for (k, (anchor, want)) in a.anchors.iter().zip(&stated).enumerate() {
                if anchor.left != *want || anchor.right != *want {
                    *anchor_misses.entry((k + 1, anchor.left.to_string())).or_default() += 1;
                }
            }
        }
    }
    let misses: Vec<String> = anchor_misses
        .iter()
        .map(|((k, got), count)| format!("anchor {k} is {got}, stated {} ({count}/9)", stated[k - 1]))
        .collect();
    verdict(
        equal == 9 && contents == 9 && misses.is_empty(),
        format!(
            "sides equal {equal}/9, contents {contents}/9, {}",
            if misses.is_empty() { "anchors match".into() } else { misses.join("; ") }
        ),
    )
}

fn intersections() -> Result<Verdict> {
    let mut bad = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            if !intersection_check(m, n)? {
                bad.push((m, n));
            }
        }
    }
    verdict(bad.is_empty(), format!("16 cases, failures {bad:?}"))
}

fn parents() -> Result<Verdict> {
    let mut table_checked = 0;
    let mut bad = Vec::new();
    for m in 0..=3 {
        for n in 0..=3 {
            for ((i, j), count) in theta2_parent_table(idx(m, n))? {
                table_checked += 1;
                let want = if (i, j) == (1, 2) || (i, j) == (3, 4) { 3 } else { 2 };
                if count != want {
                    bad.push(format!("(m,n)=({m},{n}) pair {{{i},{j}}}: {count} vs {want}"));
                }
            }
        }
    }
    let mut chain_bad = Vec::new();
    for k in (6..=12).step_by(2) {
        let got = x_chain_parents(k)?;
        if got.len() != 4 || got != x_chain_expected_parents(k)? {
            chain_bad.push(k);
        }
    }
    verdict(
        bad.is_empty() && chain_bad.is_empty(),
        format!(
            "{table_checked} defined pairs, {} off the table {bad:?}; chain k=6..12 failures {chain_bad:?}",
            bad.len()
        ),
    )
}

fn main_theorem() -> Result<Verdict> {
    let mut parts = Vec::new();
    let mut pass = true;
    for (bound, budget) in [(8u32, 15 * 60), (10, u64::MAX)] {
        let start = Instant::now();
        let report = verify_conjecture(&ConjectureOptions {
            max_length: bound,
            jobs: 4,
            check_z_invariants: false,
            ..Default::default()
        })?;
        let secs = start.elapsed().as_secs_f64();
        let suite = report.suite("conjecture").expect("conjecture suite");
        let ok = suite.passed && report.suite("certificates").is_some_and(|s| s.passed) && (secs as u64) < budget;
        pass &= ok;
        parts.push(format!(
            "ℓ(y)≤{bound}: {} intervals, {} violations, {secs:.1}s",
            suite.checked,
            suite.witnesses.len()
        ));
    }
    verdict(pass, parts.join("; "))
}

fn z_and_structural() -> Result<Verdict> {
    let report = verify_conjecture(&ConjectureOptions {
        max_length: 10,
        jobs: 4,
        ..Default::default()
    })?;
    let z = report.suite("z_preservation").expect("z suite");
    let tops = enumerate_up_to_length(10)?;
    let structural = structural_lemma_checks(&tops, 10)?;
    let lemmas: Vec<String> = structural
        .outcomes
        .iter()
        .map(|o| format!("{} {}/{}", o.name, o.checked - o.violations.len(), o.checked))
        .collect();
    verdict(
        z.passed && structural.passed(),
        format!(
            "Z^1..Z^4 preserved on {} isomorphic pairs ({} failures); {}",
            z.checked,
            z.witnesses.len(),
            lemmas.join(", ")
        ),
    )
}

fn monotonicity() -> Result<Verdict> {
    let s = check_monotonicity(10, 4)?;
    verdict(s.passed, format!("{} chains, {} violations", s.checked, s.witnesses.len()))
}

/// Rank-preserving bijections tried one by one, rank by rank.
fn brute_force_isomorphic(a: &Interval, b: &Interval) -> bool {
    if a.len() != b.len() || a.rank_sizes() != b.rank_sizes() {
        return false;
    }
    let covers_b: std::collections::HashSet<(usize, usize)> = b.covers().collect();
    let covers_a: Vec<(usize, usize)> = a.covers().collect();
    if covers_a.len() != covers_b.len() {
        return false;
    }
    let by_rank = |iv: &Interval| {
        let mut ranks = vec![Vec::new(); iv.height() as usize + 1];
        for i in 0..iv.len() {
            ranks[iv.rank(i) as usize].push(i);
        }
        ranks
    };
    let (ra, rb) = (by_rank(a), by_rank(b));
    let mut map = vec![usize::MAX; a.len()];
    fn permute(
        r: usize,
        ra: &[Vec<usize>],
        rb: &[Vec<usize>],
        map: &mut Vec<usize>,
        check: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if r == ra.len() {
            return check(map);
        }
        let mut perm = rb[r].clone();
        heap_permutations(&mut perm, &mut |p| {
            for (&i, &j) in ra[r].iter().zip(p) {
                map[i] = j;
            }
            permute(r + 1, ra, rb, map, check)
        })
    }
    let check = |map: &[usize]| covers_a.iter().all(|&(i, j)| covers_b.contains(&(map[i], map[j])));
    permute(0, &ra, &rb, &mut map, &check)
}

/// Calls `f` on every permutation of `items`; stops early once `f` is true.
fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let n = items.len();
    let mut c = vec![0; n];
    if f(items) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            items.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            if f(items) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

fn property_suites() -> Result<Verdict> {
    let elems = enumerate_up_to_length(10)?;
    let mut intervals = Vec::new();
    for y in &elems {
        for x in lower_interval(y).iter() {
            intervals.push(Interval::build(x, y)?);
        }
    }
    let ungraded = intervals.iter().filter(|iv| !iv.is_graded()).count();

    let mut groups: HashMap<(usize, Vec<usize>), Vec<&Interval>> = HashMap::new();
    for iv in intervals.iter().filter(|iv| iv.len() <= 10) {
        groups.entry((iv.len(), iv.rank_sizes())).or_default().push(iv);
    }
    let (mut small, mut comparisons, mut iso_disagree) = (0, 0, 0);
    for members in groups.values() {
        let mut reps: Vec<&Interval> = Vec::new();
        for &iv in members {
            small += 1;
            let mut found = false;
            for &rep in &reps {
                comparisons += 1;
                let oracle = brute_force_isomorphic(rep, iv);
                let fast = is_isomorphic(rep, iv);
                if oracle != fast.is_some() || fast.is_some_and(|c| !verify_certificate(rep, iv, &c)) {
                    iso_disagree += 1;
                }
                found |= oracle;
            }
            if !found {
                reps.push(iv);
            }
        }
    }

    let upto14 = enumerate_up_to_length(14)?;
    let mut per_length = [0usize; 15];
    let mut not_single = 0;
    for w in &upto14 {
        per_length[w.length() as usize] += 1;
        if !w.is_identity() && matching_kinds(w).len() != 1 {
            not_single += 1;
        }
    }
    let bad_lengths: Vec<usize> = (1..=14).filter(|&n| per_length[n] != 3 * n).collect();

    let symmetry = check_symmetry(10, 4)?;
    let pass = ungraded == 0 && iso_disagree == 0 && not_single == 0 && bad_lengths.is_empty() && symmetry.passed;
    verdict(
        pass,
        format!(
            "{} intervals ungraded {ungraded}; iso vs brute force on {small} small intervals, \
             {comparisons} comparisons, {iso_disagree} disagreements; partition to 14: {not_single} \
             elements outside exactly one region, lengths off 3n {bad_lengths:?}; symmetry {} checks, {} failures",
            intervals.len(),
            symmetry.checked,
            symmetry.witnesses.len()
        ),
    )
}

fn renderer() -> Result<Verdict> {
    const BOUNDARY_COMPLETION: usize = 0;
    let expected = 1 + (1..=6).map(|n| 3 * n).sum::<usize>() + BOUNDARY_COMPLETION;
    let svg = render_regions(6)?.svg;
    let polygons = svg.matches("<polygon").count();
    let mut census: BTreeMap<&str, usize> = BTreeMap::new();
    for w in enumerate_up_to_length(6)? {
        *census.entry(classify(&w)?.kind.name()).or_default() += 1;
    }
    let mut drift = Vec::new();
    for (kind, &want) in &census {
        let got = svg.matches(&format!("data-region=\"{kind}\"")).count();
        if got != want {
            drift.push(format!("{kind} {got} vs {want}"));
        }
    }
    verdict(
        polygons == expected && drift.is_empty(),
        format!("{polygons} alcoves (expected {expected}), census {census:?}, drift {drift:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed forms equal the recursion", closed_forms),
        ("lower interval cardinalities", cardinalities),
        ("step identity N_θ·H̲_s", step_identity),
        ("intersection of lower intervals", intersections),
        ("parents lemma", parents),
        ("isomorphic intervals have equal KL polynomials", main_theorem),
        ("Z-invariants and structural lemmas", z_and_structural),
        ("monotonicity", monotonicity),
        ("property suites", property_suites),
        ("renderer", renderer),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match run() {
            Ok(v) => (if v.pass { "PASS" } else { "FAIL" }, v.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        failed += usize::from(status == "FAIL");
        println!(
            "{status} criterion {:>2} {name}: {detail} [{:.1}s]",
            k + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
