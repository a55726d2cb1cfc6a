//! Mechanized verification of the lemma calculus: corpus generation, the
//! classification of positive a-sequences into forms, the per-form tensor
//! identities, the ε-property checks, the sequence constraint checks, and
//! the final assembly of witnesses for the family of difference models.
//!
//! Checks run on a small work queue (`CFK_THREADS` caps the worker count)
//! and the report order is deterministic by check id.

use std::collections::VecDeque;
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::catalog;
use crate::complex::Complex;
use crate::error::CfkError;
use crate::invariants::{self, ASequence, Tail};
use crate::io;
use crate::order::{self, ArchOutcome, DominanceOutcome};
use crate::stream;

/// The form of a positive a-sequence relative to the pattern
/// ((1,n)^k, (n,1)^k), following the case split of the classification
/// lemma. `k = 0` marks the degenerate (1, m, ...) prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormsCase {
    /// (m, ...) with m >= 2.
    A { m: i64 },
    /// (1, 1, ...).
    B,
    /// ((1,n)^k, 1, m, ...).
    C { k: u32, m: i64 },
    /// ((1,n)^k, m, ...) with m != -1.
    D { k: u32, m: i64 },
    /// ((1,n)^k, -1, m, ...).
    E { k: u32, m: i64 },
    /// ((1,n)^k, (n,1)^l, m, ...) with 1 <= l < k, position odd.
    F { k: u32, l: u32, m: i64 },
    /// ((1,n)^k, (n,1)^l, n, m, ...) with l < k, position even.
    G { k: u32, l: u32, m: i64 },
    /// ((1,n)^k, (n,1)^k, m, ...).
    H { k: u32, m: i64 },
    /// Exactly the complete pattern [(1,n)^k, (n,1)^k].
    MultiplePattern { k: u32 },
}

fn pattern(n: i64, k: u32) -> Vec<i64> {
    let mut v = Vec::with_capacity(4 * k as usize);
    for _ in 0..k {
        v.push(1);
        v.push(n);
    }
    for _ in 0..k {
        v.push(n);
        v.push(1);
    }
    v
}

fn pattern_steps(n: i64, k: u32) -> Vec<i64> {
    pattern(n, k)
}

/// Classifies a positive a-sequence against the multiple pattern for n.
pub fn classify_form(aseq: &ASequence, n: i64) -> Result<FormsCase, CfkError> {
    let seq = aseq.with_primes();
    if seq.is_empty() {
        return Err(CfkError::Unclassifiable("empty sequence".into()));
    }
    if seq[0] != 1 {
        return Ok(FormsCase::A { m: seq[0] });
    }
    if seq.len() < 2 {
        return Err(CfkError::Unclassifiable(
            "single-term sequence: depth insufficient".into(),
        ));
    }
    if seq[1] == 1 {
        return Ok(FormsCase::B);
    }
    // Best agreement with ((1,n)^k, (n,1)^k), least k on ties.
    let kmax = (seq.len() / 2 + 1).max(1) as u32;
    let mut bestode = (0usize, 1u32);
    for k in 1..=kmax {
        let pat = pattern(n, k);
        let agree = seq
            .iter()
            .zip(pat.iter())
            .take_while(|(a, b)| a == b)
            .count();
        if agree > bestode.0 {
            bestode = (agree, k);
        }
    }
    let (agree, k) = bestode;
    let p = agree + 1; // 1-based position of the first difference
    if p > seq.len() {
        // The sequence ran out before differing from the pattern.
        if aseq.is_complete() && seq == pattern(n, k) {
            return Ok(FormsCase::MultiplePattern { k });
        }
        return Err(CfkError::Unclassifiable(format!(
            "sequence agrees with the pattern for {agree} terms; depth insufficient"
        )));
    }
    let m = seq[p - 1];
    let kk = k as usize;
    if p == 2 * kk {
        Ok(FormsCase::C { k: k - 1, m })
    } else if p == 2 * kk + 1 {
        if m == -1 {
            match seq.get(p) {
                Some(&m2) => Ok(FormsCase::E { k, m: m2 }),
                None => Err(CfkError::Unclassifiable(
                    "term after -1 missing; depth insufficient".into(),
                )),
            }
        } else {
            Ok(FormsCase::D { k, m })
        }
    } else if p <= 4 * kk && p % 2 == 1 {
        Ok(FormsCase::F {
            k,
            l: ((p - 1 - 2 * kk) / 2) as u32,
            m,
        })
    } else if p <= 4 * kk {
        Ok(FormsCase::G {
            k,
            l: ((p - 2 * kk) / 2 - 1) as u32,
            m,
        })
    } else {
        Ok(FormsCase::H { k, m })
    }
}

/// A corpus element: the complex plus its step vector when it is a
/// staircase built directly from one.
pub struct CorpusItem {
    pub complex: Complex,
    pub steps: Option<Vec<i64>>,
}

pub struct Corpus {
    pub items: Vec<CorpusItem>,
    pub notices: Vec<String>,
}

const SIZE_BUDGET: usize = 2000;

/// Deterministic instance corpus for the property checks: pattern
/// staircases, symmetric staircases with inserted middles, their duals,
/// reduced differences with the n-bracket staircase, and the torus and
/// cable complexes.
pub fn corpus_generate(n: i64, kmax: u32, mrange: &[i64]) -> Result<Corpus, CfkError> {
    let mut items: Vec<CorpusItem> = Vec::new();
    let mut notices = Vec::new();
    fn push(
        items: &mut Vec<CorpusItem>,
        notices: &mut Vec<String>,
        c: Complex,
        steps: Option<Vec<i64>>,
    ) {
        if c.len() > SIZE_BUDGET {
            notices.push(format!("{} exceeds size budget, skipped", c.name()));
        } else {
            items.push(CorpusItem { complex: c, steps });
        }
    }
    let mut staircases: Vec<Vec<i64>> = Vec::new();
    for k in 1..=kmax {
        staircases.push(pattern_steps(n, k));
    }
    for &m in mrange {
        if m < 1 {
            continue;
        }
        for k in 1..=kmax {
            let mut a = Vec::new();
            for _ in 0..k {
                a.push(1);
                a.push(n);
            }
            a.push(m);
            a.push(m);
            for _ in 0..k {
                a.push(n);
                a.push(1);
            }
            staircases.push(a);
            let mut b = Vec::new();
            for _ in 0..k {
                b.push(1);
                b.push(n);
            }
            b.extend_from_slice(&[1, m, m, 1]);
            for _ in 0..k {
                b.push(n);
                b.push(1);
            }
            staircases.push(b);
        }
    }
    staircases.sort();
    staircases.dedup();
    for steps in &staircases {
        push(
            &mut items,
            &mut notices,
            catalog::staircase(steps)?,
            Some(steps.clone()),
        );
    }
    push(
        &mut items,
        &mut notices,
        catalog::torus_complex(n, n + 1)?,
        None,
    );
    push(
        &mut items,
        &mut notices,
        catalog::trefoil_cable_complex(n)?,
        None,
    );
    // Reduced differences with the bracket staircase.
    let bracket = catalog::staircase(&[1, n, n, 1])?;
    let base: Vec<Complex> = items.iter().map(|i| i.complex.clone()).collect();
    for c in &base {
        let d = c.difference(&bracket)?.reduce()?;
        push(&mut items, &mut notices, d, None);
    }
    // Duals of everything so far.
    let all: Vec<Complex> = items.iter().map(|i| i.complex.clone()).collect();
    for c in &all {
        push(&mut items, &mut notices, c.dual()?, None);
    }
    Ok(Corpus { items, notices })
}

/// One suite record.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub id: String,
    pub params: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub millis: u128,
    /// Serialized offending complex for replay, on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<String>,
}

#[derive(Debug, Default, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "[{}] {} | {} | expected {} | computed {} ({} ms)\n",
                if e.pass { "PASS" } else { "FAIL" },
                e.id,
                e.params,
                e.expected,
                e.computed,
                e.millis
            ));
        }
        let (p, t) = (
            self.entries.iter().filter(|e| e.pass).count(),
            self.entries.len(),
        );
        out.push_str(&format!("{p}/{t} checks passed\n"));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

type Job<'a> = Box<dyn FnOnce() -> SuiteEntry + Send + 'a>;

fn worker_count(jobs: usize) -> usize {
    let avail = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("CFK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(avail);
    cap.clamp(1, jobs.max(1))
}

fn run_jobs(jobs: Vec<Job>) -> Vec<SuiteEntry> {
    let workers = worker_count(jobs.len());
    let queue: Mutex<VecDeque<Job>> = Mutex::new(jobs.into());
    let results: Mutex<Vec<SuiteEntry>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop_front();
                match job {
                    Some(j) => {
                        let entry = j();
                        results.lock().unwrap().push(entry);
                    }
                    None => break,
                }
            });
        }
    });
    let mut out = results.into_inner().unwrap();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

fn entry(
    id: String,
    params: String,
    expected: String,
    computed: String,
    pass: bool,
    start: Instant,
    replay: Option<&Complex>,
) -> SuiteEntry {
    SuiteEntry {
        id,
        params,
        expected,
        computed,
        pass,
        millis: start.elapsed().as_millis(),
        replay: if pass {
            None
        } else {
            replay.map(io::serialize)
        },
    }
}

/// Does the a-sequence of `pos ⊗ neg*` start with the stated prefix?
fn difference_prefix_check(
    pos: &Complex,
    neg: &Complex,
    prefix: &[i64],
) -> Result<(bool, String), CfkError> {
    let d = pos.difference(neg)?.reduce()?;
    let a = invariants::a_sequence(&d, prefix.len() + 6, None)?;
    let got = a.with_primes();
    let ok = got.len() >= prefix.len() && got[..prefix.len()] == *prefix;
    Ok((ok, format!("{got:?} tail {:?}", a.tail)))
}

/// Checks the classification-lemma conclusion for one complex.
pub fn check_section4(c: &Complex, n: i64, nbound: u32) -> Vec<SuiteEntry> {
    let start = Instant::now();
    let id = format!("s4/n={n}/{}", c.name());
    let eps = match invariants::epsilon(c) {
        Ok(e) => e,
        Err(e) => {
            return vec![entry(
                id,
                String::new(),
                "ε = ±1".into(),
                format!("error: {e}"),
                false,
                start,
                Some(c),
            )]
        }
    };
    if eps == 0 {
        return vec![entry(
            id,
            "ε = 0".into(),
            "skip (zero element)".into(),
            "skipped".into(),
            true,
            start,
            None,
        )];
    }
    // Orient positively.
    let oriented;
    let pos: &Complex = if eps == 1 {
        c
    } else {
        oriented = c.dual().expect("dual of valid complex");
        &oriented
    };
    let aseq = match invariants::a_sequence(pos, 6 * (nbound as usize + 2), None) {
        Ok(a) => a,
        Err(e) => {
            return vec![entry(
                id,
                String::new(),
                "a-sequence".into(),
                format!("error: {e}"),
                false,
                start,
                Some(pos),
            )]
        }
    };
    let case = match classify_form(&aseq, n) {
        Ok(f) => f,
        Err(CfkError::Unclassifiable(msg)) => {
            return vec![entry(
                id,
                format!("a = {:?}", aseq.with_primes()),
                "classifiable".into(),
                format!("out of corpus reach: {msg}"),
                true,
                start,
                None,
            )]
        }
        Err(e) => {
            return vec![entry(
                id,
                String::new(),
                "classifiable".into(),
                format!("error: {e}"),
                false,
                start,
                Some(pos),
            )]
        }
    };
    let bracket = catalog::staircase(&[1, n, n, 1]).expect("bracket staircase");
    let params = format!("a = {:?}, case {:?}", aseq.with_primes(), case);
    let dominance_entry = |dominated: &Complex, label: &str| -> SuiteEntry {
        match order::dominance_consistent(dominated, &bracket, nbound) {
            Ok(r) => {
                let pass = matches!(r.outcome, DominanceOutcome::ConsistentUpTo(b) if b == nbound);
                entry(
                    id.clone(),
                    params.clone(),
                    format!("{label}: consistent to {nbound}"),
                    format!("{:?}", r.outcome),
                    pass,
                    start,
                    Some(pos),
                )
            }
            Err(e) => entry(
                id.clone(),
                params.clone(),
                format!("{label}: consistent to {nbound}"),
                format!("error: {e}"),
                false,
                start,
                Some(pos),
            ),
        }
    };
    let reverse_dominance_entry = |label: &str| -> SuiteEntry {
        match order::dominance_consistent(&bracket, pos, nbound) {
            Ok(r) => {
                let pass = matches!(r.outcome, DominanceOutcome::ConsistentUpTo(b) if b == nbound);
                entry(
                    id.clone(),
                    params.clone(),
                    format!("{label}: consistent to {nbound}"),
                    format!("{:?}", r.outcome),
                    pass,
                    start,
                    Some(pos),
                )
            }
            Err(e) => entry(
                id.clone(),
                params.clone(),
                format!("{label}: consistent to {nbound}"),
                format!("error: {e}"),
                false,
                start,
                Some(pos),
            ),
        }
    };
    let prefix_entry = |swap: bool, prefix: Vec<i64>, label: &str| -> SuiteEntry {
        let r = if swap {
            // bracket^k - C.
            let stk = catalog::staircase(&pattern_steps(n, prefix_case_k(&case)))
                .expect("pattern staircase");
            difference_prefix_check(&stk, pos, &prefix)
        } else {
            let stk = catalog::staircase(&pattern_steps(n, prefix_case_k(&case)))
                .expect("pattern staircase");
            difference_prefix_check(pos, &stk, &prefix)
        };
        match r {
            Ok((ok, got)) => entry(
                id.clone(),
                params.clone(),
                format!("{label}: difference begins {prefix:?}"),
                got,
                ok,
                start,
                Some(pos),
            ),
            Err(e) => entry(
                id.clone(),
                params.clone(),
                format!("{label}: difference begins {prefix:?}"),
                format!("error: {e}"),
                false,
                start,
                Some(pos),
            ),
        }
    };
    match case {
        FormsCase::A { .. } | FormsCase::B => {
            vec![dominance_entry(pos, "dominated by the bracket")]
        }
        FormsCase::C { k: 0, m } => {
            if m > n {
                vec![reverse_dominance_entry("dominates the bracket")]
            } else {
                vec![dominance_entry(pos, "dominated by the bracket")]
            }
        }
        FormsCase::C { m, .. } => {
            if m > n {
                vec![reverse_dominance_entry("dominates the bracket")]
            } else if m > 0 {
                vec![prefix_entry(false, vec![1, m], "k-bracket plus (1, m)")]
            } else if m < -n {
                vec![reverse_dominance_entry("dominates the bracket")]
            } else {
                vec![entry(
                    id,
                    params,
                    "m outside (-n, 0) by the constraint lemma".into(),
                    format!("m = {m}"),
                    false,
                    start,
                    Some(pos),
                )]
            }
        }
        FormsCase::D { m, .. } => {
            if m > n {
                vec![prefix_entry(true, vec![n], "k-bracket minus (n)")]
            } else if m > 1 {
                vec![prefix_entry(false, vec![m], "k-bracket plus (m)")]
            } else if m < -1 {
                vec![prefix_entry(
                    true,
                    vec![m.abs().min(n)],
                    "k-bracket minus (min)",
                )]
            } else {
                vec![entry(
                    id,
                    params,
                    "m in a lemma range".into(),
                    format!("m = {m}"),
                    false,
                    start,
                    Some(pos),
                )]
            }
        }
        FormsCase::E { m, .. } => {
            if -n < m && m < 0 {
                vec![prefix_entry(
                    true,
                    vec![1, m.abs()],
                    "k-bracket minus (1, |m|)",
                )]
            } else {
                vec![entry(
                    id,
                    params,
                    "second term in (-n, 0)".into(),
                    format!("m = {m}"),
                    false,
                    start,
                    Some(pos),
                )]
            }
        }
        FormsCase::F { m, .. } => {
            if m > 0 && m < n {
                vec![prefix_entry(false, vec![n], "k-bracket plus (n)")]
            } else {
                vec![prefix_entry(true, vec![n], "k-bracket minus (n)")]
            }
        }
        FormsCase::G { .. } => {
            vec![prefix_entry(false, vec![n], "k-bracket plus (n)")]
        }
        FormsCase::H { m, .. } => {
            if m > 0 {
                vec![prefix_entry(false, vec![m.max(n)], "k-bracket plus (max)")]
            } else {
                vec![prefix_entry(
                    true,
                    vec![m.abs().max(n)],
                    "k-bracket minus (max)",
                )]
            }
        }
        FormsCase::MultiplePattern { k } => {
            let stk = catalog::staircase(&pattern_steps(n, k)).expect("pattern staircase");
            match order::compare(pos, &stk) {
                Ok(v) => vec![entry(
                    id,
                    params,
                    "equals the k-fold bracket".into(),
                    format!("compare = {v}"),
                    v == 0,
                    start,
                    Some(pos),
                )],
                Err(e) => vec![entry(
                    id,
                    params,
                    "equals the k-fold bracket".into(),
                    format!("error: {e}"),
                    false,
                    start,
                    Some(pos),
                )],
            }
        }
    }
}

fn prefix_case_k(case: &FormsCase) -> u32 {
    match case {
        FormsCase::C { k, .. } => (*k).max(1),
        FormsCase::D { k, .. }
        | FormsCase::E { k, .. }
        | FormsCase::F { k, .. }
        | FormsCase::G { k, .. }
        | FormsCase::H { k, .. } => *k,
        FormsCase::MultiplePattern { k } => *k,
        _ => 1,
    }
}

/// ε-calculus over the corpus: dual negation, tensor sign rules, zero
/// summands, and ε = 0 ⟹ τ = 0.
pub fn check_epsilon_calculus(corpus: &[Complex]) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        jobs.push(Box::new(move || {
            let start = Instant::now();
            let id = format!("eps/dual/{i:03}/{}", c.name());
            match (
                invariants::epsilon(c),
                c.dual().and_then(|d| invariants::epsilon(&d)),
            ) {
                (Ok(e), Ok(ed)) => entry(
                    id,
                    String::new(),
                    format!("ε(dual) = {}", -e),
                    format!("{ed}"),
                    ed == -e,
                    start,
                    Some(c),
                ),
                (a, b) => entry(
                    id,
                    String::new(),
                    "ε computable".into(),
                    format!("{a:?} / {b:?}"),
                    false,
                    start,
                    Some(c),
                ),
            }
        }));
        jobs.push(Box::new(move || {
            let start = Instant::now();
            let id = format!("eps/zero-tau/{i:03}/{}", c.name());
            match (invariants::epsilon(c), invariants::tau(c)) {
                (Ok(0), Ok(t)) => entry(
                    id,
                    String::new(),
                    "ε = 0 ⟹ τ = 0".into(),
                    format!("τ = {t}"),
                    t == 0,
                    start,
                    Some(c),
                ),
                (Ok(e), Ok(t)) => entry(
                    id,
                    String::new(),
                    "no constraint".into(),
                    format!("ε = {e}, τ = {t}"),
                    true,
                    start,
                    None,
                ),
                (a, b) => entry(
                    id,
                    String::new(),
                    "computable".into(),
                    format!("{a:?} / {b:?}"),
                    false,
                    start,
                    Some(c),
                ),
            }
        }));
    }
    // Tensor sign rules over ordered pairs.
    for (i, c1) in corpus.iter().enumerate() {
        for (j, c2) in corpus.iter().enumerate() {
            if j <= i {
                continue;
            }
            jobs.push(Box::new(move || {
                let start = Instant::now();
                let id = format!("eps/tensor/{i:03}+{j:03}");
                let e1 = invariants::epsilon(c1);
                let e2 = invariants::epsilon(c2);
                let et = stream::epsilon_factors(&[(c1, false), (c2, false)]);
                match (e1, e2, et) {
                    (Ok(e1), Ok(e2), Ok(et)) => {
                        let (expected, relevant) = if e1 == e2 {
                            (e1, true)
                        } else if e1 == 0 {
                            (e2, true)
                        } else if e2 == 0 {
                            (e1, true)
                        } else {
                            (0, false) // opposite signs: no constraint
                        };
                        if relevant {
                            entry(
                                id,
                                format!("ε = ({e1}, {e2})"),
                                format!("ε(tensor) = {expected}"),
                                format!("{et}"),
                                et == expected,
                                start,
                                Some(c1),
                            )
                        } else {
                            entry(
                                id,
                                format!("ε = ({e1}, {e2})"),
                                "no constraint".into(),
                                format!("{et}"),
                                true,
                                start,
                                None,
                            )
                        }
                    }
                    (a, b, c) => entry(
                        id,
                        String::new(),
                        "computable".into(),
                        format!("{a:?} / {b:?} / {c:?}"),
                        false,
                        start,
                        Some(c1),
                    ),
                }
            }));
        }
    }
    SuiteReport {
        entries: run_jobs(jobs),
    }
}

/// Constraint checks on a-sequences over the corpus.
pub fn check_section3(corpus: &[CorpusItem], n: i64) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    for (i, item) in corpus.iter().enumerate() {
        let c = &item.complex;
        let steps = item.steps.clone();
        jobs.push(Box::new(move || {
            let start = Instant::now();
            let id = format!("s3/aseq/{i:03}/{}", c.name());
            let eps = match invariants::epsilon(c) {
                Ok(e) => e,
                Err(e) => {
                    return entry(
                        id,
                        String::new(),
                        "ε computable".into(),
                        format!("error: {e}"),
                        false,
                        start,
                        Some(c),
                    )
                }
            };
            if eps != 1 {
                return entry(
                    id,
                    format!("ε = {eps}"),
                    "skip (not positive)".into(),
                    "skipped".into(),
                    true,
                    start,
                    None,
                );
            }
            let a = match invariants::a_sequence(c, 40, None) {
                Ok(a) => a,
                Err(e) => {
                    return entry(
                        id,
                        String::new(),
                        "a-sequence computable".into(),
                        format!("error: {e}"),
                        false,
                        start,
                        Some(c),
                    )
                }
            };
            let mut problems: Vec<String> = Vec::new();
            // a1 = 1 forces a2 to exist.
            if a.terms == [1] && a.tail != Tail::DepthLimit {
                problems.push("a1 = 1 but a2 does not exist".into());
            }
            // ((1,n)^k, 1) with a primed tail: the prime is below -n.
            let is_pattern_prefix = |t: &[i64], odd_end: bool| -> Option<u32> {
                // t == (1,n)^k (+ trailing 1 when odd_end).
                let body = if odd_end {
                    if t.last() != Some(&1) {
                        return None;
                    }
                    &t[..t.len() - 1]
                } else {
                    t
                };
                if body.len() % 2 != 0 || body.is_empty() {
                    return None;
                }
                for (idx, &v) in body.iter().enumerate() {
                    let want = if idx % 2 == 0 { 1 } else { n };
                    if v != want {
                        return None;
                    }
                }
                Some((body.len() / 2) as u32)
            };
            if let Some(_k) = is_pattern_prefix(&a.terms, true) {
                match a.tail {
                    Tail::Prime(v) if v >= -n => {
                        problems.push(format!("((1,n)^k, 1) prime {v} not below -{n}"))
                    }
                    Tail::PrimePair(v, _) if v >= -n => {
                        problems.push(format!("((1,n)^k, 1) prime {v} not below -{n}"))
                    }
                    _ => {}
                }
            }
            // ((1,n)^k, (n,1)^l): same bound for the odd prime.
            let is_bracket_like = |t: &[i64]| -> bool {
                // (1,n)^k then (n,1)^l with k, l >= 1.
                if t.len() < 4 || !t.len().is_multiple_of(2) {
                    return false;
                }
                for k in 1..t.len() / 2 {
                    let (head, tail) = t.split_at(2 * k);
                    let head_ok = head
                        .iter()
                        .enumerate()
                        .all(|(i, &v)| v == if i % 2 == 0 { 1 } else { n });
                    let tail_ok = tail
                        .iter()
                        .enumerate()
                        .all(|(i, &v)| v == if i % 2 == 0 { n } else { 1 });
                    if head_ok && tail_ok && !tail.is_empty() {
                        return true;
                    }
                }
                false
            };
            if is_bracket_like(&a.terms) {
                match a.tail {
                    Tail::Prime(v) if v >= -n => {
                        problems.push(format!("((1,n)^k,(n,1)^l) prime {v} not below -{n}"))
                    }
                    Tail::PrimePair(v, _) if v >= -n => {
                        problems.push(format!("((1,n)^k,(n,1)^l) prime {v} not below -{n}"))
                    }
                    _ => {}
                }
            }
            // ((1,n)^k) with first prime -1: the second exists with
            // 0 < |a''| < n.
            if let Some(_k) = is_pattern_prefix(&a.terms, false) {
                if let Tail::PrimePair(-1, second) = a.tail {
                    if !(0 < second.abs() && second.abs() < n) {
                        problems.push(format!(
                            "((1,n)^k, -1, m): |m| = {} outside (0, {n})",
                            second.abs()
                        ));
                    }
                }
            }
            // Staircase consistency.
            if let Some(steps) = &steps {
                if !(a.terms == *steps && a.tail == Tail::Complete) {
                    problems.push(format!(
                        "staircase steps {steps:?} but a-sequence {:?} tail {:?}",
                        a.terms, a.tail
                    ));
                }
            }
            entry(
                id,
                format!("a = {:?} tail {:?}", a.terms, a.tail),
                "constraint lemmas hold".into(),
                if problems.is_empty() {
                    "ok".into()
                } else {
                    problems.join("; ")
                },
                problems.is_empty(),
                start,
                Some(c),
            )
        }));
    }
    // ε-equivalent pairs share a-sequences.
    for (i, it1) in corpus.iter().enumerate() {
        for (j, it2) in corpus.iter().enumerate() {
            if j <= i {
                continue;
            }
            let c1 = &it1.complex;
            let c2 = &it2.complex;
            jobs.push(Box::new(move || {
                let start = Instant::now();
                let id = format!("s3/eqinv/{i:03}+{j:03}");
                let e1 = invariants::epsilon(c1).unwrap_or(9);
                let e2 = invariants::epsilon(c2).unwrap_or(9);
                if e1 != 1 || e2 != 1 {
                    return entry(
                        id,
                        String::new(),
                        "skip".into(),
                        "skipped".into(),
                        true,
                        start,
                        None,
                    );
                }
                match order::compare(c1, c2) {
                    Ok(0) => {
                        let a1 = invariants::a_sequence(c1, 40, None);
                        let a2 = invariants::a_sequence(c2, 40, None);
                        match (a1, a2) {
                            (Ok(a1), Ok(a2)) => {
                                let same = a1.terms == a2.terms && a1.tail == a2.tail;
                                entry(
                                    id,
                                    format!("{} ~ {}", c1.name(), c2.name()),
                                    "equal a-sequences".into(),
                                    format!(
                                        "{:?}/{:?} vs {:?}/{:?}",
                                        a1.terms, a1.tail, a2.terms, a2.tail
                                    ),
                                    same,
                                    start,
                                    Some(c1),
                                )
                            }
                            (a, b) => entry(
                                id,
                                String::new(),
                                "computable".into(),
                                format!("{a:?} / {b:?}"),
                                false,
                                start,
                                Some(c1),
                            ),
                        }
                    }
                    Ok(_) => entry(
                        id,
                        String::new(),
                        "skip".into(),
                        "not ε-equivalent".into(),
                        true,
                        start,
                        None,
                    ),
                    Err(e) => entry(
                        id,
                        String::new(),
                        "comparable".into(),
                        format!("error: {e}"),
                        false,
                        start,
                        Some(c1),
                    ),
                }
            }));
        }
    }
    SuiteReport {
        entries: run_jobs(jobs),
    }
}

/// Order coherence over a fixture list: antisymmetry, transitivity spot
/// checks, and translation invariance.
pub fn check_order_coherence(corpus: &[Complex]) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    for (i, c1) in corpus.iter().enumerate() {
        for (j, c2) in corpus.iter().enumerate() {
            if j <= i {
                continue;
            }
            jobs.push(Box::new(move || {
                let start = Instant::now();
                let id = format!("ord/antisym/{i:03}+{j:03}");
                match (order::compare(c1, c2), order::compare(c2, c1)) {
                    (Ok(a), Ok(b)) => entry(
                        id,
                        format!("{} vs {}", c1.name(), c2.name()),
                        "compare(x,y) = -compare(y,x)".into(),
                        format!("{a} / {b}"),
                        a == -b,
                        start,
                        Some(c1),
                    ),
                    (a, b) => entry(
                        id,
                        String::new(),
                        "computable".into(),
                        format!("{a:?} / {b:?}"),
                        false,
                        start,
                        Some(c1),
                    ),
                }
            }));
        }
    }
    // Transitivity over ordered triples of a trimmed subset.
    let small: Vec<&Complex> = corpus.iter().take(6).collect();
    for (i, &c1) in small.iter().enumerate() {
        for (j, &c2) in small.iter().enumerate() {
            for (k, &c3) in small.iter().enumerate() {
                if i == j || j == k || i == k {
                    continue;
                }
                jobs.push(Box::new(move || {
                    let start = Instant::now();
                    let id = format!("ord/trans/{i}{j}{k}");
                    match (
                        order::compare(c1, c2),
                        order::compare(c2, c3),
                        order::compare(c1, c3),
                    ) {
                        (Ok(ab), Ok(bc), Ok(ac)) => {
                            let ok = if ab >= 0 && bc >= 0 {
                                ac >= 0 && (ac > 0 || (ab == 0 && bc == 0))
                            } else if ab <= 0 && bc <= 0 {
                                ac <= 0 && (ac < 0 || (ab == 0 && bc == 0))
                            } else {
                                true
                            };
                            entry(
                                id,
                                format!("{} {} {}", c1.name(), c2.name(), c3.name()),
                                "transitive".into(),
                                format!("{ab},{bc},{ac}"),
                                ok,
                                start,
                                Some(c1),
                            )
                        }
                        (a, b, c) => entry(
                            id,
                            String::new(),
                            "computable".into(),
                            format!("{a:?}/{b:?}/{c:?}"),
                            false,
                            start,
                            Some(c1),
                        ),
                    }
                }));
            }
        }
    }
    // Translation invariance: compare(C1 ⊗ D, C2 ⊗ D) = compare(C1, C2).
    if corpus.len() >= 3 {
        let d = &corpus[corpus.len() - 1];
        for (i, c1) in corpus.iter().enumerate().take(4) {
            for (j, c2) in corpus.iter().enumerate().take(4) {
                if j <= i {
                    continue;
                }
                jobs.push(Box::new(move || {
                    let start = Instant::now();
                    let id = format!("ord/transl/{i:03}+{j:03}");
                    let plain = order::compare(c1, c2);
                    let shifted =
                        stream::epsilon_factors(&[(c1, false), (d, false), (c2, true), (d, true)]);
                    match (plain, shifted) {
                        (Ok(a), Ok(b)) => entry(
                            id,
                            format!("{} vs {} (+ {})", c1.name(), c2.name(), d.name()),
                            "translation invariant".into(),
                            format!("{a} / {b}"),
                            a == b,
                            start,
                            Some(c1),
                        ),
                        (a, b) => entry(
                            id,
                            String::new(),
                            "computable".into(),
                            format!("{a:?} / {b:?}"),
                            false,
                            start,
                            Some(c1),
                        ),
                    }
                }));
            }
        }
    }
    SuiteReport {
        entries: run_jobs(jobs),
    }
}

/// The assembly: Archimedean witnesses for the difference models against
/// the bracket staircases, dominance between consecutive models, and the
/// multiple-pattern identity.
pub fn check_main_theorem(nrange: &[i64], nbound: u32) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    let models: Vec<(i64, Complex)> = nrange
        .iter()
        .map(|&n| (n, catalog::kn_model(n).expect("model builds")))
        .collect();
    let models = std::sync::Arc::new(models);
    for (idx, &n) in nrange.iter().enumerate() {
        let arch_models = models.clone();
        jobs.push(Box::new(move || {
            let start = Instant::now();
            let id = format!("main/arch/n={n}");
            let kn = &arch_models[idx].1;
            let st = catalog::staircase(&[1, n, n, 1]).expect("bracket");
            match order::arch_equivalent(kn, &st, 8) {
                Ok(w) => {
                    let pass = matches!(w.outcome, ArchOutcome::Witness(_));
                    entry(
                        id,
                        format!("kn_model({n}) vs st[1,{n},{n},1]"),
                        "witness found".into(),
                        format!("{:?}", w.outcome),
                        pass,
                        start,
                        Some(kn),
                    )
                }
                Err(e) => entry(
                    id,
                    String::new(),
                    "witness found".into(),
                    format!("error: {e}"),
                    false,
                    start,
                    Some(kn),
                ),
            }
        }));
        for k in 1..=3u32 {
            jobs.push(Box::new(move || {
                let start = Instant::now();
                let id = format!("main/pattern/n={n}/k={k}");
                let st = catalog::staircase(&[1, n, n, 1]).expect("bracket");
                let pat = catalog::staircase(&pattern_steps(n, k)).expect("pattern");
                let mut parts: Vec<(&Complex, bool)> = Vec::new();
                for _ in 0..k {
                    parts.push((&st, false));
                }
                parts.push((&pat, true));
                match stream::epsilon_factors(&parts) {
                    Ok(v) => entry(
                        id,
                        format!("k·[1,{n},{n},1] vs pattern"),
                        "compare = 0".into(),
                        format!("{v}"),
                        v == 0,
                        start,
                        Some(&pat),
                    ),
                    Err(e) => entry(
                        id,
                        String::new(),
                        "compare = 0".into(),
                        format!("error: {e}"),
                        false,
                        start,
                        Some(&pat),
                    ),
                }
            }));
        }
        if idx + 1 < nrange.len() {
            let models = models.clone();
            let n2 = nrange[idx + 1];
            jobs.push(Box::new(move || {
                let start = Instant::now();
                let id = format!("main/dom/n={n}<{n2}");
                let small = &models[idx].1;
                let big = &models[idx + 1].1;
                match order::dominance_consistent(small, big, nbound) {
                    Ok(r) => {
                        let pass =
                            matches!(r.outcome, DominanceOutcome::ConsistentUpTo(b) if b == nbound);
                        entry(
                            id,
                            format!("kn_model({n}) ≪ kn_model({n2})?"),
                            format!("consistent to {nbound}"),
                            format!("{:?} {:?}", r.outcome, r.stopped_early),
                            pass,
                            start,
                            Some(small),
                        )
                    }
                    Err(e) => entry(
                        id,
                        String::new(),
                        format!("consistent to {nbound}"),
                        format!("error: {e}"),
                        false,
                        start,
                        Some(small),
                    ),
                }
            }));
        }
    }
    SuiteReport {
        entries: run_jobs(jobs),
    }
}

/// Runs section-4 checks over the full corpus of positive elements.
pub fn check_section4_corpus(n: i64, kmax: u32, nbound: u32) -> Result<SuiteReport, CfkError> {
    let mrange: Vec<i64> = (2..=n + 1).collect();
    let corpus = corpus_generate(n, kmax, &mrange)?;
    let mut jobs: Vec<Job> = Vec::new();
    let items = &corpus.items;
    for item in items {
        let c = &item.complex;
        jobs.push(Box::new(move || {
            let entries = check_section4(c, n, nbound);
            // One job per complex; merge multiple conclusions into one
            // entry when needed.
            if entries.len() == 1 {
                entries.into_iter().next().unwrap()
            } else {
                let pass = entries.iter().all(|e| e.pass);
                let start = Instant::now();
                entry(
                    entries[0].id.clone(),
                    entries[0].params.clone(),
                    "all conclusions".into(),
                    format!("{} sub-checks", entries.len()),
                    pass,
                    start,
                    Some(c),
                )
            }
        }));
    }
    Ok(SuiteReport {
        entries: run_jobs(jobs),
    })
}
