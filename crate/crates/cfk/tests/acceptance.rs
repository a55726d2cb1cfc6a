//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see them).
//!
//! Criteria:
//! 1. fixture validation            6. main-theorem assembly
//! 2. the figure-2 invariants       7. property suites over the corpus
//! 3. a-sequence prefixes           8. oracle equivalence
//! 4. multiple-pattern identity     9. CLI and serialization contract
//! 5. classification instances

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cfk::invariants::{self, Tail};
use cfk::order::{self, ArchOutcome, DominanceOutcome};
use cfk::region::{self, RegionSpec};
use cfk::{catalog, io, suite, Complex};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn report(
    criterion: u32,
    result: Result<String, String>,
    budget: Option<Duration>,
    spent: Duration,
) {
    match &result {
        Ok(msg) => println!("[criterion {criterion}] PASS: {msg} ({spent:.2?})"),
        Err(msg) => println!("[criterion {criterion}] FAIL: {msg} ({spent:.2?})"),
    }
    if let Err(msg) = result {
        panic!("criterion {criterion} failed: {msg}");
    }
    if let Some(b) = budget {
        assert!(
            spent <= b,
            "criterion {criterion} exceeded its {b:.0?} budget: {spent:.2?}"
        );
    }
}

fn all_fixture_complexes() -> Vec<Complex> {
    let mut v = vec![
        catalog::unknot(),
        catalog::staircase(&[1, 1]).unwrap(),
        catalog::staircase(&[2, 2]).unwrap(),
        catalog::staircase(&[1, 2, 2, 1]).unwrap(),
        catalog::staircase(&[1, 3, 3, 1]).unwrap(),
        catalog::torus_complex(2, 3).unwrap(),
        catalog::torus_complex(3, 4).unwrap(),
        catalog::torus_complex(4, 5).unwrap(),
        catalog::figure2_fixture(),
    ];
    for n in 2..=5 {
        v.push(catalog::trefoil_cable_complex(n).unwrap());
    }
    for n in 2..=4 {
        v.push(catalog::kn_model(n).unwrap());
    }
    v
}

#[test]
fn criterion_1_fixture_validation() {
    let start = Instant::now();
    let result = (|| {
        let fixtures = all_fixture_complexes();
        for c in &fixtures {
            let violations = c.validate();
            if !violations.is_empty() {
                return Err(format!("{} invalid: {violations:?}", c.name()));
            }
        }
        // The shipped files parse back to the builders byte for byte.
        for (stem, c) in [
            ("unknot", catalog::unknot()),
            ("st_1_2_2_1", catalog::staircase(&[1, 2, 2, 1]).unwrap()),
            ("t45", catalog::torus_complex(4, 5).unwrap()),
            ("kn3", catalog::kn_model(3).unwrap()),
        ] {
            let path = fixtures_dir().join(format!("{stem}.json"));
            let text =
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            if text != io::serialize(&c) {
                return Err(format!("{stem}.json is not the builder serialization"));
            }
        }
        // The data-only fixture validates too.
        let t2321 =
            io::read_complex(&fixtures_dir().join("t23_2_1.json")).map_err(|e| e.to_string())?;
        if !t2321.validate().is_empty() {
            return Err("t23_2_1 fixture invalid".into());
        }
        Ok(format!("{} fixtures validate", fixtures.len() + 1))
    })();
    report(1, result, Some(Duration::from_secs(10)), start.elapsed());
}

#[test]
fn criterion_2_figure2_invariants() {
    let start = Instant::now();
    let result = (|| {
        let c = catalog::figure2_fixture();
        let eps = invariants::epsilon(&c).map_err(|e| e.to_string())?;
        let tau = invariants::tau(&c).map_err(|e| e.to_string())?;
        if eps != 0 {
            return Err(format!("ε = {eps}, expected 0"));
        }
        if tau != 0 {
            return Err(format!("τ = {tau}, expected 0"));
        }
        Ok("ε = 0 and τ = 0 on the figure-2 fixture".into())
    })();
    report(2, result, None, start.elapsed());
}

#[test]
fn criterion_3_a_sequences() {
    let start = Instant::now();
    let result = (|| {
        let c2 = catalog::trefoil_cable_complex(2).unwrap();
        let a = invariants::a_sequence(&c2, 8, None).map_err(|e| e.to_string())?;
        if !(a.terms == vec![1, 2, 2, 1] && a.tail == Tail::Complete) {
            return Err(format!("a(cable 2) = {:?} tail {:?}", a.terms, a.tail));
        }
        for n in 3..=5i64 {
            let c = catalog::trefoil_cable_complex(n).unwrap();
            let a = invariants::a_sequence(&c, 6, None).map_err(|e| e.to_string())?;
            let want = [1, n, 1, n - 2];
            if a.terms.len() < 4 || a.terms[..4] != want {
                return Err(format!(
                    "a(cable {n}) begins {:?}, expected {want:?}",
                    a.terms
                ));
            }
            let t = catalog::torus_complex(n, n + 1).unwrap();
            let a = invariants::a_sequence(&t, 5, None).map_err(|e| e.to_string())?;
            let want = [1, n - 1, 2];
            if a.terms.len() < 3 || a.terms[..3] != want {
                return Err(format!(
                    "a(torus {n}) begins {:?}, expected {want:?}",
                    a.terms
                ));
            }
        }
        Ok("cable and torus a-sequence prefixes match".into())
    })();
    report(3, result, Some(Duration::from_secs(60)), start.elapsed());
}

#[test]
fn criterion_4_multiple_pattern_identity() {
    let start = Instant::now();
    let result = (|| {
        for n in [2i64, 3] {
            for k in 1..=3u32 {
                let base = catalog::staircase(&[1, n, n, 1]).unwrap();
                let power = base.multiple(k).unwrap();
                let mut steps = Vec::new();
                for _ in 0..k {
                    steps.push(1);
                    steps.push(n);
                }
                for _ in 0..k {
                    steps.push(n);
                    steps.push(1);
                }
                let pattern = catalog::staircase(&steps).unwrap();
                let v = order::compare(&power, &pattern).map_err(|e| e.to_string())?;
                if v != 0 {
                    return Err(format!("n = {n}, k = {k}: compare = {v}"));
                }
            }
        }
        Ok("k-fold brackets equal the pattern staircases for n in {2,3}, k in {1,2,3}".into())
    })();
    report(4, result, Some(Duration::from_secs(300)), start.elapsed());
}

#[test]
fn criterion_5_classification_instances() {
    let start = Instant::now();
    let result = (|| {
        // The three worked identities.
        let st = catalog::staircase(&[1, 3, 3, 1]).unwrap();
        let checks: Vec<(Complex, Complex, Vec<i64>)> = vec![
            (
                catalog::staircase(&[1, 3, 1, 2, 2, 1, 3, 1]).unwrap(),
                st.clone(),
                vec![1, 2],
            ),
            (
                catalog::staircase(&[1, 3, 2, 2, 3, 1]).unwrap(),
                st.clone(),
                vec![2],
            ),
            (
                st.clone(),
                catalog::staircase(&[1, 3, 4, 4, 3, 1]).unwrap(),
                vec![3],
            ),
        ];
        for (pos, neg, prefix) in checks {
            let d = pos.difference(&neg).unwrap().reduce().unwrap();
            let a =
                invariants::a_sequence(&d, prefix.len() + 6, None).map_err(|e| e.to_string())?;
            let got = a.with_primes();
            if got.len() < prefix.len() || got[..prefix.len()] != prefix {
                return Err(format!(
                    "difference of {} and {}: a begins {got:?}, expected {prefix:?}",
                    pos.name(),
                    neg.name()
                ));
            }
        }
        // The symmetric family at k = 1 over n in {2,3}, m in {2..n+1},
        // through the classification dispatcher.
        let mut ran = 0;
        for n in [2i64, 3] {
            for m in 2..=n + 1 {
                for steps in [vec![1, n, m, m, n, 1], vec![1, n, 1, m, m, 1, n, 1]] {
                    let c = catalog::staircase(&steps).unwrap();
                    for e in suite::check_section4(&c, n, 4) {
                        ran += 1;
                        if !e.pass {
                            return Err(format!(
                                "{}: expected {}, computed {}",
                                e.id, e.expected, e.computed
                            ));
                        }
                    }
                }
            }
        }
        Ok(format!("3 worked identities and {ran} family checks hold"))
    })();
    report(5, result, None, start.elapsed());
}

#[test]
fn criterion_6_main_theorem_assembly() {
    let start = Instant::now();
    let result = (|| {
        for n in [2i64, 3, 4] {
            let kn = catalog::kn_model(n).unwrap();
            let st = catalog::staircase(&[1, n, n, 1]).unwrap();
            let w = order::arch_equivalent(&kn, &st, 8).map_err(|e| e.to_string())?;
            match w.outcome {
                ArchOutcome::Witness(v) if v <= 2 => {}
                other => {
                    return Err(format!(
                        "arch witness for n = {n}: {other:?}, expected N <= 2"
                    ))
                }
            }
        }
        for n in [2i64, 3] {
            let small = catalog::kn_model(n).unwrap();
            let big = catalog::kn_model(n + 1).unwrap();
            let r = order::dominance_consistent(&small, &big, 4).map_err(|e| e.to_string())?;
            match r.outcome {
                DominanceOutcome::ConsistentUpTo(4) => {}
                other => {
                    return Err(format!(
                        "dominance n = {n} < {}: {other:?} (stopped: {:?})",
                        n + 1,
                        r.stopped_early
                    ))
                }
            }
        }
        Ok("arch witnesses at N <= 2 for n = 2,3,4; dominance consistent to 4 for n = 2,3".into())
    })();
    report(6, result, Some(Duration::from_secs(600)), start.elapsed());
}

#[test]
fn criterion_7_property_suites() {
    let start = Instant::now();
    let result = (|| {
        let mut total = 0usize;
        for n in [2i64, 3] {
            let mrange: Vec<i64> = (2..=n + 1).collect();
            let corpus = suite::corpus_generate(n, 2, &mrange).map_err(|e| e.to_string())?;
            for notice in &corpus.notices {
                println!("  corpus notice: {notice}");
            }
            let complexes: Vec<Complex> = corpus.items.iter().map(|i| i.complex.clone()).collect();
            for c in &complexes {
                if c.len() > 2000 {
                    return Err(format!("{} exceeds the 2000-generator budget", c.name()));
                }
            }
            let eps = suite::check_epsilon_calculus(&complexes);
            let s3 = suite::check_section3(&corpus.items, n);
            let ord = suite::check_order_coherence(&complexes);
            for (label, rep) in [("ε-calculus", &eps), ("constraints", &s3), ("order", &ord)] {
                for e in &rep.entries {
                    if !e.pass {
                        return Err(format!(
                            "n = {n} {label} {}: expected {}, computed {}",
                            e.id, e.expected, e.computed
                        ));
                    }
                }
                total += rep.entries.len();
            }
        }
        Ok(format!(
            "{total} property checks pass over the n in {{2,3}} corpus"
        ))
    })();
    report(7, result, None, start.elapsed());
}

/// Naive non-bit-packed F₂ elimination oracle.
fn naive_rank(columns: &[Vec<u32>], dim: usize) -> usize {
    let mut rows: Vec<Vec<bool>> = columns
        .iter()
        .map(|col| {
            let mut v = vec![false; dim];
            for &k in col {
                v[k as usize] = true;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for pivot in 0..dim {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][pivot]) else {
            continue;
        };
        rows.swap(rank, r);
        for r2 in 0..rows.len() {
            if r2 != rank && rows[r2][pivot] {
                let (a, b) = if r2 < rank {
                    let (lo, hi) = rows.split_at_mut(rank);
                    (&mut lo[r2], &hi[0])
                } else {
                    let (lo, hi) = rows.split_at_mut(r2);
                    (&mut hi[0], &lo[rank])
                };
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn criterion_8_oracle_equivalence() {
    let start = Instant::now();
    let result = (|| {
        let mut pairs = 0;
        for c in all_fixture_complexes() {
            let t = invariants::tau(&c).map_err(|e| e.to_string())?;
            let (lo, hi) = c.alexander_range();
            let w = region::window(&c, t, 4);
            let specs = vec![
                RegionSpec::ColumnI0,
                RegionSpec::MinHook { tau: t },
                RegionSpec::MaxHook { tau: t },
                RegionSpec::TruncatedMinHook { tau: t, s: 1 },
                RegionSpec::TruncatedMinHook {
                    tau: t,
                    s: (hi - lo).max(1),
                },
                RegionSpec::SRegion {
                    tau: t,
                    prefix: vec![1],
                    s: 2,
                },
                RegionSpec::ColumnSegment {
                    i: 0,
                    jmin: lo,
                    jmax: hi,
                },
            ];
            for spec in specs {
                let r = match region::realize_region(&c, &spec) {
                    Ok(r) => r,
                    Err(e) => return Err(format!("{} {spec:?}: {e}", c.name())),
                };
                // Brute-force dimension: enumerate the window box and count
                // (generator, point-on-diagonal-in-region) incidences.
                let mut brute = 0usize;
                for g in c.generators() {
                    for i in -w..=w {
                        let j = g.alexander + i;
                        if j.abs() <= w && spec.contains(i, j) {
                            brute += 1;
                        }
                    }
                }
                if brute != r.dim() {
                    return Err(format!(
                        "{} {spec:?}: realized {} copies, brute force {brute}",
                        c.name(),
                        r.dim()
                    ));
                }
                if r.dim() <= 200 {
                    let rank = naive_rank(&r.boundary, r.dim());
                    let naive_h = r.dim() - 2 * rank;
                    let h = r.homology().rank;
                    if naive_h != h {
                        return Err(format!(
                            "{} {spec:?}: homology {h}, naive oracle {naive_h}",
                            c.name()
                        ));
                    }
                }
                pairs += 1;
            }
        }
        Ok(format!(
            "{pairs} fixture/region pairs agree with the brute-force oracles"
        ))
    })();
    report(8, result, None, start.elapsed());
}

#[test]
fn criterion_9_cli_and_serialization() {
    let start = Instant::now();
    let result = (|| {
        // Byte-stable round trips.
        for c in all_fixture_complexes() {
            let s = io::serialize(&c);
            let back = io::parse(&s).map_err(|e| e.to_string())?;
            if back != c || io::serialize(&back) != s {
                return Err(format!("round trip failed for {}", c.name()));
            }
        }
        // Exit-code contract through the real binary.
        let bin = env!("CARGO_BIN_EXE_cfk");
        let fx = fixtures_dir();
        let run = |args: &[&str]| -> (i32, String) {
            let out = Command::new(bin)
                .args(args)
                .current_dir(&fx)
                .output()
                .expect("binary runs");
            (
                out.status.code().unwrap_or(-1),
                String::from_utf8_lossy(&out.stdout).to_string(),
            )
        };
        let (code, out) = run(&["invariants", "t34.json"]);
        if code != 0 || !out.contains("\"tau\": 3") || !out.contains("[1, 2, 2, 1]") {
            return Err(format!("invariants t34: exit {code}, out {out}"));
        }
        let (code, out) = run(&["compare", "t34.json", "t34.json"]);
        if code != 0 || out.trim() != "0" {
            return Err(format!("compare: exit {code}, out {out:?}"));
        }
        let (code, _) = run(&["invariants", "unknot.json"]);
        if code != 2 {
            return Err(format!("unknot invariants: exit {code}, expected 2"));
        }
        let (code, _) = run(&["validate", "missing-file.json"]);
        if code != 3 {
            return Err(format!("missing file: exit {code}, expected 3"));
        }
        let (code, _) = run(&["build", "torus", "--p", "4", "--q", "6"]);
        if code != 1 {
            return Err(format!("non-coprime build: exit {code}, expected 1"));
        }
        Ok("serialization is byte-stable and the exit-code contract holds".into())
    })();
    report(9, result, None, start.elapsed());
}
