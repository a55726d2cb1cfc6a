//! The concordance-style invariants τ, ε, and the a-sequence with its
//! primed extensions, computed homologically from region realizations.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::error::CfkError;
use crate::f2::LinearSystem;
use crate::region::{
    self, quotient_include_map, realize_region_with_window, RegionComplex, RegionSpec,
};
use crate::stream;

/// Termination tag of an a-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// Square-bracket class: neither the next unprimed term nor a primed
    /// term exists; the sequence determines the ε-equivalence class.
    Complete,
    /// A primed term a'_{n+1} <= -2.
    Prime(i64),
    /// a'_{n+1} = -1 followed by a'_{n+2} < 0.
    PrimePair(i64, i64),
    /// A search bound was hit before the computation could conclude.
    DepthLimit,
}

/// The tuple a(C) with its termination tag and the bounds used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASequence {
    pub terms: Vec<i64>,
    pub tail: Tail,
    pub max_len: usize,
    pub max_val: i64,
}

impl ASequence {
    /// The terms with primed entries appended, for prefix matching.
    pub fn with_primes(&self) -> Vec<i64> {
        let mut v = self.terms.clone();
        match self.tail {
            Tail::Prime(a) => v.push(a),
            Tail::PrimePair(a, b) => {
                v.push(a);
                v.push(b);
            }
            _ => {}
        }
        v
    }

    pub fn is_complete(&self) -> bool {
        self.tail == Tail::Complete
    }
}

/// Which complex the a-sequence was computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Direct,
    /// ε was -1, so the sequence belongs to the dual.
    OfDual,
}

/// τ, ε, and the a-sequence when it is defined.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub tau: i64,
    pub epsilon: i8,
    pub aseq: Option<(ASequence, Orientation)>,
}

/// τ: the minimal Alexander level in the i = 0 column that supports the
/// column homology generator, by an elimination sweep over the column.
pub fn tau(c: &Complex) -> Result<i64, CfkError> {
    Ok(tau_with_rep(c)?.0)
}

/// Copies of a chain in the column: (generator index, lattice point).
type ColumnChain = Vec<(u32, (i64, i64))>;

/// τ together with a minimal-top representative of the generator class,
/// as (generator, lattice point) copies in the i = 0 column.
fn tau_with_rep(c: &Complex) -> Result<(i64, ColumnChain), CfkError> {
    c.require_valid()?;
    c.require_reduced()?;
    let col = region::realize_region(c, &RegionSpec::ColumnI0)?;
    let h = col.homology();
    if h.rank != 1 {
        return Err(CfkError::InvalidComplex(vec![format!(
            "column homology has dimension {}",
            h.rank
        )]));
    }
    let rep: Vec<(u32, (i64, i64))> = h.representatives[0]
        .iter()
        .map(|&p| col.basis[p as usize])
        .collect();
    // The representative's top copy realizes the minimal level.
    let t = rep
        .iter()
        .map(|&(_, (_, j))| j)
        .max()
        .expect("nonempty representative");
    Ok((t, rep))
}

/// ε via the natural maps on hook-shaped subquotients: +1 when F kills the
/// generator, -1 when the generator misses the image of G, else 0.
///
/// Computed by the streaming engine; [`epsilon_via_maps`] is the direct
/// region construction of the same two maps, and the two agree on every
/// desk-scale input (asserted in tests).
pub fn epsilon(c: &Complex) -> Result<i8, CfkError> {
    c.require_valid()?;
    c.require_reduced()?;
    stream::epsilon_factors(&[(c, false)])
}

/// ε built literally from the quotient-then-include maps F and G.
pub fn epsilon_via_maps(c: &Complex) -> Result<i8, CfkError> {
    let t = tau(c)?;
    let w = region::window(c, t, 0);
    let f = quotient_include_map(
        c,
        &RegionSpec::ColumnI0,
        &RegionSpec::ColumnSegment {
            i: 0,
            jmin: -w,
            jmax: t - 1,
        },
        &RegionSpec::MinHook { tau: t },
    )?;
    let killed_g: Vec<(i64, i64)> = (-w..0).map(|i| (i, t)).collect();
    let g = quotient_include_map(
        c,
        &RegionSpec::MaxHook { tau: t },
        &RegionSpec::Explicit(killed_g),
        &RegionSpec::ColumnI0,
    )?;
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(CfkError::InvariantContradiction),
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        (false, false) => Ok(0),
    }
}

/// Is the map from the column into C{S(prefix, s)} trivial on homology?
pub fn h_map_trivial(c: &Complex, prefix: &[i64], s: i64) -> Result<bool, CfkError> {
    if epsilon(c)? != 1 {
        return Err(CfkError::UndefinedInvariant(
            "H-map family requires ε = +1".into(),
        ));
    }
    let eng = ASeqEngine::new(c)?;
    eng.h_trivial(prefix, s)
}

/// The a-sequence of an ε = +1 complex.
pub fn a_sequence(
    c: &Complex,
    max_len: usize,
    max_val: Option<i64>,
) -> Result<ASequence, CfkError> {
    match epsilon(c)? {
        1 => {}
        0 => {
            return Err(CfkError::UndefinedInvariant(
                "a-sequence undefined for ε = 0".into(),
            ))
        }
        _ => {
            return Err(CfkError::UndefinedInvariant(
                "a-sequence of an ε = -1 complex is computed on the dual".into(),
            ))
        }
    }
    let eng = ASeqEngine::new(c)?;
    eng.run(max_len, max_val)
}

/// Full invariant report. For ε = -1 the a-sequence is computed on the
/// dual and flagged.
pub fn invariants(
    c: &Complex,
    max_len: usize,
    max_val: Option<i64>,
) -> Result<InvariantReport, CfkError> {
    let t = tau(c)?;
    let e = epsilon(c)?;
    if e == 0 && t != 0 {
        return Err(CfkError::InvalidComplex(vec![format!(
            "ε = 0 forces τ = 0, found τ = {t}"
        )]));
    }
    let aseq = match e {
        1 => Some((a_sequence(c, max_len, max_val)?, Orientation::Direct)),
        -1 => {
            let d = c.dual()?;
            Some((a_sequence(&d, max_len, max_val)?, Orientation::OfDual))
        }
        _ => None,
    };
    Ok(InvariantReport {
        tau: t,
        epsilon: e,
        aseq,
    })
}

/// Sweep state shared by the a-sequence levels.
struct ASeqEngine<'a> {
    c: &'a Complex,
    tau: i64,
    w: i64,
    /// Certifying sweep bound: beyond it regions stop acquiring copies.
    cert: i64,
    /// Generators per Alexander level.
    by_level: BTreeMap<i64, Vec<u32>>,
    /// Generator-class representative copies in the column.
    rep: ColumnChain,
}

impl<'a> ASeqEngine<'a> {
    fn new(c: &'a Complex) -> Result<ASeqEngine<'a>, CfkError> {
        let (t, rep) = tau_with_rep(c)?;
        let (lo, hi) = c.alexander_range();
        let cert = 2 * (hi - lo) + 2;
        let w = region::window(c, t, 4 * cert);
        let mut by_level: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        for (k, g) in c.generators().iter().enumerate() {
            by_level.entry(g.alexander).or_default().push(k as u32);
        }
        Ok(ASeqEngine {
            c,
            tau: t,
            w,
            cert,
            by_level,
            rep,
        })
    }

    fn gens_at(&self, level: i64) -> &[u32] {
        self.by_level
            .get(&level)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    fn region(&self, prefix: &[i64], s: i64) -> Result<RegionComplex<'a>, CfkError> {
        realize_region_with_window(
            self.c,
            &RegionSpec::SRegion {
                tau: self.tau,
                prefix: prefix.to_vec(),
                s,
            },
            Some(self.w),
        )
    }

    /// Projects the generator representative into a region (the copies at
    /// (0, j >= tau) are shared).
    fn rep_positions(&self, r: &RegionComplex) -> Result<Vec<u32>, CfkError> {
        let mut out = Vec::new();
        for &(g, (i, j)) in &self.rep {
            if i == 0 && j >= self.tau {
                let p = r.position_of(g, (i, j)).ok_or_else(|| {
                    CfkError::ChainMapViolation(format!(
                        "generator copy at (0, {j}) missing from region"
                    ))
                })?;
                out.push(p);
            }
        }
        Ok(out)
    }

    fn h_trivial(&self, prefix: &[i64], s: i64) -> Result<bool, CfkError> {
        let r = self.region(prefix, s)?;
        let h = r.homology();
        let rep = self.rep_positions(&r)?;
        Ok(h.is_boundary(&rep))
    }

    fn run(&self, max_len: usize, max_val: Option<i64>) -> Result<ASequence, CfkError> {
        let bound = max_val.unwrap_or(self.cert);
        let sweep_hi = bound.min(self.cert);
        let certifying = bound >= self.cert;
        let mut terms: Vec<i64> = Vec::new();
        loop {
            if terms.len() >= max_len {
                return Ok(ASequence {
                    terms,
                    tail: Tail::DepthLimit,
                    max_len,
                    max_val: bound,
                });
            }
            let n = terms.len();
            // Index n+1: odd indices are trivial-thresholds, even indices
            // non-trivial-thresholds.
            let want_trivial = n.is_multiple_of(2);
            let mut found = None;
            for s in 0..=sweep_hi {
                if self.h_trivial(&terms, s)? == want_trivial {
                    found = Some(s);
                    break;
                }
            }
            match found {
                Some(s) => {
                    if s == 0 {
                        return Err(CfkError::InvalidComplex(vec![
                            "a-sequence term of 0 contradicts the level construction".into(),
                        ]));
                    }
                    terms.push(s);
                }
                None if !certifying => {
                    return Ok(ASequence {
                        terms,
                        tail: Tail::DepthLimit,
                        max_len,
                        max_val: bound,
                    });
                }
                None => {
                    // No unprimed term exists; try the primed extension.
                    if terms.is_empty() {
                        return Err(CfkError::InvalidComplex(vec![
                            "ε = +1 but the first sweep never became trivial".into(),
                        ]));
                    }
                    let tail = self.primed_tail(&terms)?;
                    return Ok(ASequence {
                        terms,
                        tail,
                        max_len,
                        max_val: bound,
                    });
                }
            }
        }
    }

    /// Computes a'_{n+1} (and a'_{n+2} when needed) after the unprimed
    /// sweep certifies that no further term exists.
    fn primed_tail(&self, terms: &[i64]) -> Result<Tail, CfkError> {
        let n = terms.len();
        if n % 2 == 1 {
            let first = self.prime_odd(terms)?;
            match first {
                None => Ok(Tail::Complete),
                Some(v) if v <= -2 => Ok(Tail::Prime(v)),
                Some(_) => match self.prime_second_odd(terms)? {
                    Some(v2) => Ok(Tail::PrimePair(-1, v2)),
                    None => Ok(Tail::DepthLimit),
                },
            }
        } else {
            let first = self.prime_even(terms)?;
            match first {
                None => Ok(Tail::Complete),
                Some(v) if v <= -2 => Ok(Tail::Prime(v)),
                Some(_) => match self.prime_second_even(terms)? {
                    Some(v2) => Ok(Tail::PrimePair(-1, v2)),
                    None => Ok(Tail::DepthLimit),
                },
            }
        }
    }

    /// Position sums: (odd-position sum, even-position sum) over 1-based
    /// positions of the prefix.
    fn position_sums(terms: &[i64]) -> (i64, i64) {
        let odd: i64 = terms.iter().step_by(2).sum();
        let even: i64 = terms.iter().skip(1).step_by(2).sum();
        (odd, even)
    }

    /// The δ-condition data for n odd: the corner point P closing the last
    /// horizontal segment, the pair sub = S(a_1..a_n - 1) ⊂ total.
    fn prime_odd(&self, terms: &[i64]) -> Result<Option<i64>, CfkError> {
        let n = terms.len();
        let (odd_sum, even_sum) = Self::position_sums(terms);
        let p_point = (odd_sum, self.tau - even_sum);
        let sub = self.region(&terms[..n - 1], terms[n - 1] - 1)?;
        let sub_h = sub.homology();
        let rep = self.rep_positions(&sub)?;
        let rcoords = sub_h.coordinates(&rep).ok_or(CfkError::NotACycle)?;
        if rcoords.iter().all(|&b| !b) {
            return Err(CfkError::InvalidComplex(vec![
                "generator class vanished one step before the final term".into(),
            ]));
        }
        // δ of each copy at P: the boundary of its lift lands in sub.
        let level_p = p_point.1 - p_point.0;
        let p_gens = self.gens_at(level_p).to_vec();
        let mut delta: BTreeMap<u32, Vec<bool>> = BTreeMap::new();
        for &t in &p_gens {
            let mut chain = Vec::new();
            for &(tt, u) in self.c.arrows_from(t) {
                let ti = p_point.0 - u as i64;
                let tj = self.c.gen(tt).alexander + ti;
                if let Some(pos) = sub.position_of(tt, (ti, tj)) {
                    chain.push(pos);
                }
            }
            let coords = sub_h.coordinates(&chain).ok_or(CfkError::NotACycle)?;
            delta.insert(t, coords);
        }
        for h in 1..=self.cert {
            let y_level = (p_point.1 + h) - p_point.0;
            let y_gens = self.gens_at(y_level);
            if y_gens.is_empty() {
                continue;
            }
            let mut sys = LinearSystem::new(y_gens.len());
            // Vertical components strictly between P and y vanish.
            for dj in 1..h {
                let lvl = y_level - dj;
                for &t in self.gens_at(lvl) {
                    let mut lhs = Vec::new();
                    for (k, &g) in y_gens.iter().enumerate() {
                        let hits = self
                            .c
                            .arrows_from(g)
                            .iter()
                            .filter(|&&(tt, u)| u == 0 && tt == t)
                            .count();
                        if hits % 2 == 1 {
                            lhs.push(k);
                        }
                    }
                    sys.add_row(&lhs, false);
                }
            }
            // δ([(∂y)|_P]) = [x0]: one row per homology coordinate of sub.
            for coord in 0..sub_h.rank {
                let mut lhs = Vec::new();
                for (k, &g) in y_gens.iter().enumerate() {
                    let mut bit = false;
                    for &(tt, u) in self.c.arrows_from(g) {
                        // Vertical arrows stay in the column; the
                        // P-component needs A(tt) = level_p.
                        if u == 0 && self.c.gen(tt).alexander == level_p {
                            bit ^= delta[&tt][coord];
                        }
                    }
                    if bit {
                        lhs.push(k);
                    }
                }
                sys.add_row(&lhs, rcoords[coord]);
            }
            if sys.solve().is_some() {
                return Ok(Some(-h));
            }
        }
        Ok(None)
    }

    /// For n odd with a'_{n+1} = -1: the shortest outgoing horizontal
    /// component over the height-one witness space.
    fn prime_second_odd(&self, terms: &[i64]) -> Result<Option<i64>, CfkError> {
        let n = terms.len();
        let (odd_sum, even_sum) = Self::position_sums(terms);
        let p_point = (odd_sum, self.tau - even_sum);
        let sub = self.region(&terms[..n - 1], terms[n - 1] - 1)?;
        let sub_h = sub.homology();
        let rep = self.rep_positions(&sub)?;
        let rcoords = sub_h.coordinates(&rep).ok_or(CfkError::NotACycle)?;
        let level_p = p_point.1 - p_point.0;
        let y_level = level_p + 1;
        let y_gens = self.gens_at(y_level).to_vec();
        if y_gens.is_empty() {
            return Ok(None);
        }
        let mut delta: BTreeMap<u32, Vec<bool>> = BTreeMap::new();
        for &t in self.gens_at(level_p) {
            let mut chain = Vec::new();
            for &(tt, u) in self.c.arrows_from(t) {
                let ti = p_point.0 - u as i64;
                let tj = self.c.gen(tt).alexander + ti;
                if let Some(pos) = sub.position_of(tt, (ti, tj)) {
                    chain.push(pos);
                }
            }
            delta.insert(t, sub_h.coordinates(&chain).ok_or(CfkError::NotACycle)?);
        }
        let mut sys = LinearSystem::new(y_gens.len());
        for coord in 0..sub_h.rank {
            let mut lhs = Vec::new();
            for (k, &g) in y_gens.iter().enumerate() {
                let mut bit = false;
                for &(tt, u) in self.c.arrows_from(g) {
                    if u == 0 && self.c.gen(tt).alexander == level_p {
                        bit ^= delta[&tt][coord];
                    }
                }
                if bit {
                    lhs.push(k);
                }
            }
            sys.add_row(&lhs, rcoords[coord]);
        }
        let Some((particular, kernel)) = sys.solve() else {
            return Ok(None);
        };
        // Measure horizontal components of ∂y at (i_P - d, j_P + 1).
        for d in 1..=self.cert {
            let t_level = (p_point.1 + 1) - (p_point.0 - d);
            let t_gens = self.gens_at(t_level);
            if t_gens.is_empty() {
                continue;
            }
            let eval = |y: &[bool]| -> bool {
                // Nonzero component at distance d?
                t_gens.iter().any(|&t| {
                    let mut bit = false;
                    for (k, &g) in y_gens.iter().enumerate() {
                        if !y[k] {
                            continue;
                        }
                        let hits = self
                            .c
                            .arrows_from(g)
                            .iter()
                            .filter(|&&(tt, u)| tt == t && u as i64 == d)
                            .count();
                        if hits % 2 == 1 {
                            bit = !bit;
                        }
                    }
                    bit
                })
            };
            if eval(&particular) || kernel.iter().any(|k| eval(k)) {
                return Ok(Some(-d));
            }
        }
        Ok(None)
    }

    /// The ι-condition for n even: chains at the bottom corner Q of the
    /// final vertical segment representing the generator class inside
    /// S(a_1..a_n); minimize the outgoing horizontal length.
    ///
    /// When some valid chain has no horizontal differential at all, the
    /// corner element can be chosen as a horizontal cycle and the primed
    /// term does not exist — the square-bracket situation. Only when every
    /// valid chain has a horizontal component is the minimum taken; this
    /// is what makes the tail an invariant of the ε-class.
    fn prime_even(&self, terms: &[i64]) -> Result<Option<i64>, CfkError> {
        let space = self.valid_y_space_even(terms)?;
        let Some((q_point, y_gens, particular, kernel)) = space else {
            return Ok(None);
        };
        if self.zero_horizontal_choice(&y_gens, &particular, &kernel, q_point) {
            return Ok(None);
        }
        for d in 1..=self.cert {
            let t_level = q_point.1 - (q_point.0 - d);
            if self.gens_at(t_level).is_empty() {
                continue;
            }
            if self.achievable_nonzero(&y_gens, &particular, &kernel, q_point, d, q_point.1) {
                return Ok(Some(-d));
            }
        }
        Ok(None)
    }

    /// Does the affine family contain a chain whose boundary has no
    /// component anywhere on the row through Q?
    fn zero_horizontal_choice(
        &self,
        y_gens: &[u32],
        particular: &[bool],
        kernel: &[Vec<bool>],
        q: (i64, i64),
    ) -> bool {
        let mut sys = LinearSystem::new(kernel.len());
        for d in 1..=self.cert {
            let t_level = q.1 - (q.0 - d);
            for &t in self.gens_at(t_level) {
                let coef = |y: &[bool]| -> bool {
                    let mut bit = false;
                    for (k, &g) in y_gens.iter().enumerate() {
                        if !y[k] {
                            continue;
                        }
                        let hits = self
                            .c
                            .arrows_from(g)
                            .iter()
                            .filter(|&&(tt, u)| tt == t && u as i64 == d)
                            .count();
                        if hits % 2 == 1 {
                            bit = !bit;
                        }
                    }
                    bit
                };
                let mut lhs = Vec::new();
                for (r, kv) in kernel.iter().enumerate() {
                    if coef(kv) {
                        lhs.push(r);
                    }
                }
                sys.add_row(&lhs, coef(particular));
            }
        }
        sys.solve().is_some()
    }

    /// Affine space of valid corner chains for n even: supported at Q,
    /// cycles of the total region homologous to the generator image.
    /// Returns (Q, generator ids at Q, particular, kernel basis).
    #[allow(clippy::type_complexity)]
    fn valid_y_space_even(
        &self,
        terms: &[i64],
    ) -> Result<Option<((i64, i64), Vec<u32>, Vec<bool>, Vec<Vec<bool>>)>, CfkError> {
        let n = terms.len();
        let (odd_sum, even_sum) = Self::position_sums(terms);
        let q_point = (odd_sum, self.tau - even_sum);
        let total = self.region(&terms[..n - 1], terms[n - 1])?;
        let rep = self.rep_positions(&total)?;
        let q_positions: Vec<u32> = total.copies_at(q_point);
        if q_positions.is_empty() {
            return Ok(None);
        }
        let y_gens: Vec<u32> = q_positions
            .iter()
            .map(|&p| total.basis[p as usize].0)
            .collect();
        // Unknowns: y over the Q copies, x over all positions; equations:
        // y + ∂x = rep  (so y is a cycle in the class of the generator).
        let dim = total.dim();
        let nq = q_positions.len();
        let mut sys = LinearSystem::new(nq + dim);
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); dim];
        for (k, &q) in q_positions.iter().enumerate() {
            rows[q as usize].push(k);
        }
        for (m, col) in total.boundary.iter().enumerate() {
            for &t in col {
                rows[t as usize].push(nq + m);
            }
        }
        let rep_set: std::collections::BTreeSet<u32> = rep.iter().copied().collect();
        for (t, lhs) in rows.iter().enumerate() {
            sys.add_row(lhs, rep_set.contains(&(t as u32)));
        }
        let Some((joint_particular, joint_kernel)) = sys.solve() else {
            return Ok(None);
        };
        // Project to the y block and re-echelonize the kernel there.
        let particular: Vec<bool> = joint_particular[..nq].to_vec();
        let mut kernel: Vec<Vec<bool>> = Vec::new();
        for v in joint_kernel {
            let y: Vec<bool> = v[..nq].to_vec();
            if y.iter().any(|&b| b) {
                kernel.push(y);
            }
        }
        Ok(Some((q_point, y_gens, particular, kernel)))
    }

    /// Does some chain in the affine family have a nonzero boundary
    /// component at (q.0 - d, row)?
    fn achievable_nonzero(
        &self,
        y_gens: &[u32],
        particular: &[bool],
        kernel: &[Vec<bool>],
        q: (i64, i64),
        d: i64,
        row: i64,
    ) -> bool {
        let t_level = row - (q.0 - d);
        let t_gens = self.gens_at(t_level);
        let eval = |y: &[bool]| -> bool {
            t_gens.iter().any(|&t| {
                let mut bit = false;
                for (k, &g) in y_gens.iter().enumerate() {
                    if !y[k] {
                        continue;
                    }
                    let hits = self
                        .c
                        .arrows_from(g)
                        .iter()
                        .filter(|&&(tt, u)| tt == t && u as i64 == d)
                        .count();
                    if hits % 2 == 1 {
                        bit = !bit;
                    }
                }
                bit
            })
        };
        eval(particular) || kernel.iter().any(|k| eval(k))
    }

    /// For n even with a'_{n+1} = -1: the incoming vertical length to the
    /// horizontal target, over chains z whose vertical boundary equals the
    /// witness's horizontal boundary exactly.
    fn prime_second_even(&self, terms: &[i64]) -> Result<Option<i64>, CfkError> {
        let space = self.valid_y_space_even(terms)?;
        let Some((q_point, y_gens, particular, kernel)) = space else {
            return Ok(None);
        };
        // Witness target point: one column to the left of Q.
        let w_point = (q_point.0 - 1, q_point.1);
        let w_level = w_point.1 - w_point.0;
        let w_gens = self.gens_at(w_level).to_vec();
        if w_gens.is_empty() {
            return Ok(None);
        }
        for d in 1..=self.cert {
            let z_level = (q_point.1 + d) - (q_point.0 - 1);
            let z_gens = self.gens_at(z_level).to_vec();
            if z_gens.is_empty() {
                continue;
            }
            // Joint unknowns: y-family coefficients (affine: particular +
            // span of kernel) and z over z_gens. Encode y = particular +
            // Σ c_r kernel_r with unknowns c_r.
            let nk = kernel.len();
            let nz = z_gens.len();
            let mut sys = LinearSystem::new(nk + nz);
            // (2) y's horizontal components at distances >= 2 vanish.
            for d2 in 2..=self.cert {
                let lvl = q_point.1 - (q_point.0 - d2);
                for &t in self.gens_at(lvl) {
                    let coef = |y: &[bool]| -> bool {
                        let mut bit = false;
                        for (k, &g) in y_gens.iter().enumerate() {
                            if !y[k] {
                                continue;
                            }
                            let hits = self
                                .c
                                .arrows_from(g)
                                .iter()
                                .filter(|&&(tt, u)| tt == t && u as i64 == d2)
                                .count();
                            if hits % 2 == 1 {
                                bit = !bit;
                            }
                        }
                        bit
                    };
                    let mut lhs = Vec::new();
                    for (r, kv) in kernel.iter().enumerate() {
                        if coef(kv) {
                            lhs.push(r);
                        }
                    }
                    sys.add_row(&lhs, coef(&particular));
                }
            }
            // (3) z's vertical components vanish except at the witness row.
            for dj in 1..=(d + self.cert) {
                let lvl = z_level - dj;
                if lvl == w_level {
                    continue;
                }
                for &t in self.gens_at(lvl) {
                    let mut lhs = Vec::new();
                    for (k, &g) in z_gens.iter().enumerate() {
                        let hits = self
                            .c
                            .arrows_from(g)
                            .iter()
                            .filter(|&&(tt, u)| u == 0 && tt == t)
                            .count();
                        if hits % 2 == 1 {
                            lhs.push(nk + k);
                        }
                    }
                    sys.add_row(&lhs, false);
                }
            }
            // (4) (∂z)|_W = (∂y)|_W componentwise.
            for &t in &w_gens {
                let ycoef = |y: &[bool]| -> bool {
                    let mut bit = false;
                    for (k, &g) in y_gens.iter().enumerate() {
                        if !y[k] {
                            continue;
                        }
                        let hits = self
                            .c
                            .arrows_from(g)
                            .iter()
                            .filter(|&&(tt, u)| tt == t && u == 1)
                            .count();
                        if hits % 2 == 1 {
                            bit = !bit;
                        }
                    }
                    bit
                };
                let mut lhs = Vec::new();
                for (r, kv) in kernel.iter().enumerate() {
                    if ycoef(kv) {
                        lhs.push(r);
                    }
                }
                for (k, &g) in z_gens.iter().enumerate() {
                    let hits = self
                        .c
                        .arrows_from(g)
                        .iter()
                        .filter(|&&(tt, u)| u == 0 && tt == t)
                        .count();
                    if hits % 2 == 1 {
                        lhs.push(nk + k);
                    }
                }
                sys.add_row(&lhs, ycoef(&particular));
            }
            // Nonzero witness: (∂y)|_W != 0 for the chosen y.
            let Some((part, kern)) = sys.solve() else {
                continue;
            };
            let witness_nonzero = |sol: &[bool]| -> bool {
                let y: Vec<bool> = {
                    let mut y = particular.clone();
                    for (r, kv) in kernel.iter().enumerate() {
                        if sol[r] {
                            for (b, &kb) in y.iter_mut().zip(kv.iter()) {
                                *b ^= kb;
                            }
                        }
                    }
                    y
                };
                w_gens.iter().any(|&t| {
                    let mut bit = false;
                    for (k, &g) in y_gens.iter().enumerate() {
                        if !y[k] {
                            continue;
                        }
                        let hits = self
                            .c
                            .arrows_from(g)
                            .iter()
                            .filter(|&&(tt, u)| tt == t && u == 1)
                            .count();
                        if hits % 2 == 1 {
                            bit = !bit;
                        }
                    }
                    bit
                })
            };
            if witness_nonzero(&part) {
                return Ok(Some(-d));
            }
            let mut found = false;
            for kv in &kern {
                let mut sol = part.clone();
                for (b, &kb) in sol.iter_mut().zip(kv.iter()) {
                    *b ^= kb;
                }
                if witness_nonzero(&sol) {
                    found = true;
                    break;
                }
            }
            if found {
                return Ok(Some(-d));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn tau_values() {
        assert_eq!(tau(&catalog::unknot()).unwrap(), 0);
        let t34 = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        assert_eq!(tau(&t34).unwrap(), 3);
        assert_eq!(tau(&t34.dual().unwrap()).unwrap(), -3);
    }

    #[test]
    fn epsilon_values_and_route_agreement() {
        let fixtures = [
            catalog::unknot(),
            catalog::staircase(&[1, 1]).unwrap(),
            catalog::staircase(&[2, 2]).unwrap(),
            catalog::staircase(&[1, 2, 2, 1]).unwrap(),
            catalog::figure2_fixture(),
        ];
        let expected = [0i8, 1, 1, 1, 0];
        for (c, &want) in fixtures.iter().zip(expected.iter()) {
            assert_eq!(epsilon(c).unwrap(), want, "{}", c.name());
            assert_eq!(epsilon_via_maps(c).unwrap(), want, "{} via maps", c.name());
            let d = c.dual().unwrap();
            assert_eq!(epsilon(&d).unwrap(), -want, "{} dual", c.name());
            assert_eq!(
                epsilon_via_maps(&d).unwrap(),
                -want,
                "{} dual via maps",
                c.name()
            );
        }
    }

    #[test]
    fn figure2_report() {
        let r = invariants(&catalog::figure2_fixture(), 12, None).unwrap();
        assert_eq!(r.epsilon, 0);
        assert_eq!(r.tau, 0);
        assert!(r.aseq.is_none());
    }

    #[test]
    fn h_map_examples() {
        let t34 = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        assert!(!h_map_trivial(&t34, &[], 0).unwrap());
        assert!(h_map_trivial(&t34, &[], 1).unwrap());
        assert!(h_map_trivial(&catalog::unknot(), &[], 0).is_err());
    }

    #[test]
    fn a_sequence_staircases_complete() {
        for steps in [
            vec![1, 1],
            vec![2, 2],
            vec![1, 2, 2, 1],
            vec![1, 3, 3, 1],
            vec![1, 3, 2, 2, 3, 1],
            vec![1, 3, 1, 1, 1, 1, 3, 1],
        ] {
            let c = catalog::staircase(&steps).unwrap();
            let a = a_sequence(&c, steps.len() + 2, None).unwrap();
            assert_eq!(a.terms, steps, "{}", c.name());
            assert_eq!(a.tail, Tail::Complete, "{}", c.name());
        }
    }

    #[test]
    fn a_sequence_torus_and_cable_prefixes() {
        let t45 = catalog::torus_complex(4, 5).unwrap();
        let a = a_sequence(&t45, 12, None).unwrap();
        assert!(a.terms.starts_with(&[1, 3, 2]));
        let c4 = catalog::trefoil_cable_complex(4).unwrap();
        let a = a_sequence(&c4, 16, None).unwrap();
        assert!(a.terms.starts_with(&[1, 4, 1, 2]));
    }

    #[test]
    fn a_sequence_depth_limit() {
        let c = catalog::trefoil_cable_complex(3).unwrap();
        let a = a_sequence(&c, 3, None).unwrap();
        assert_eq!(a.terms.len(), 3);
        assert_eq!(a.tail, Tail::DepthLimit);
    }

    #[test]
    fn a_sequence_of_difference_has_prime_pair() {
        // [(1,n)^k, (n,1)^k] - (1, m, ...) has sequence ((1,n)^k, -1, -m, ...)
        // at n = 3, m = 2, k = 1.
        let big = catalog::staircase(&[1, 3, 3, 1]).unwrap();
        let small = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        let d = big.difference(&small).unwrap().reduce().unwrap();
        let a = a_sequence(&d, 12, None).unwrap();
        assert_eq!(a.terms, vec![1, 3]);
        assert_eq!(a.tail, Tail::PrimePair(-1, -2));
    }

    #[test]
    fn invariant_report_negative_side() {
        let c = catalog::staircase(&[1, 2, 2, 1]).unwrap().dual().unwrap();
        let r = invariants(&c, 8, None).unwrap();
        assert_eq!(r.epsilon, -1);
        assert_eq!(r.tau, -3);
        let (a, o) = r.aseq.unwrap();
        assert_eq!(o, Orientation::OfDual);
        assert_eq!(a.terms, vec![1, 2, 2, 1]);
    }

    #[test]
    fn kn_models_tau_epsilon() {
        for n in [2i64, 3] {
            let kn = catalog::kn_model(n).unwrap();
            assert_eq!(epsilon(&kn).unwrap(), 1, "kn_model({n})");
            assert_eq!(tau(&kn).unwrap(), n, "kn_model({n})");
        }
    }

    #[test]
    fn basis_order_does_not_change_invariants() {
        // Renaming generators reverses the id sort; τ, ε and the sequence
        // must not care.
        let c = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        let renamed = {
            let gens: Vec<_> = c
                .generators()
                .iter()
                .map(|g| crate::complex::Generator {
                    id: format!("z{}", 9 - g.id[1..].parse::<i64>().unwrap()),
                    alexander: g.alexander,
                    maslov: g.maslov,
                })
                .collect();
            let ren = |id: &str| format!("z{}", 9 - id[1..].parse::<i64>().unwrap());
            let arrows: Vec<_> = c
                .arrows()
                .iter()
                .map(|a| crate::complex::Arrow {
                    from: ren(&a.from),
                    to: ren(&a.to),
                    upower: a.upower,
                })
                .collect();
            Complex::new("renamed", gens, arrows).unwrap()
        };
        assert_eq!(tau(&renamed).unwrap(), 3);
        assert_eq!(epsilon(&renamed).unwrap(), 1);
        let a = a_sequence(&renamed, 8, None).unwrap();
        assert_eq!(a.terms, vec![1, 2, 2, 1]);
        assert_eq!(a.tail, Tail::Complete);
    }
}
