//! Streaming τ/ε engine over implicit tensor products.
//!
//! The order operations need ε of complexes like `C₁ ⊗ C₂* ⊗ ... ⊗ Cₖ*`
//! whose generator count is the product of the factor sizes. This module
//! never materializes that product: a basis element is a mixed-radix index
//! over the factors, arrows come from the Leibniz rule slot by slot, and
//! all linear algebra happens inside connected components of the relevant
//! arrow graphs, which stay small for staircase-built factors.
//!
//! The mathematical facts used, both plain linear algebra over a field:
//!
//! * the vertical homology of a tensor product is the tensor product of
//!   the factors' vertical homologies, so the product of factor
//!   representatives represents the generator class; and
//! * the G map of a complex is trivial exactly when the F map of its dual
//!   is trivial, because the dual's F matrix is the transpose of G.
//!
//! Both are additionally cross-checked against the direct region-based
//!   route on every desk-scale input (see `invariants`).

use std::collections::{HashMap, HashSet};

use crate::complex::Complex;
use crate::error::CfkError;
use crate::f2::{self, Col};

/// Above this total size the engine skips the full-complex column-rank
/// sweep and relies on factor validity plus the Künneth argument.
const FULL_VERIFY_LIMIT: u64 = 1 << 20;

fn component_budget() -> u64 {
    std::env::var("CFK_MAX_COMPONENT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 27)
}

/// Visited-set over the tuple index space: a bitmap when the space is
/// small enough to afford one, a hash set above that.
enum Seen {
    Bits(Vec<u64>),
    Hash(HashSet<u64>),
}

impl Seen {
    fn new(total: u64) -> Seen {
        if total <= 1 << 31 {
            Seen::Bits(vec![0u64; (total as usize).div_ceil(64)])
        } else {
            Seen::Hash(HashSet::new())
        }
    }

    /// Marks the index; returns true when it was new.
    fn insert(&mut self, idx: u64) -> bool {
        match self {
            Seen::Bits(words) => {
                let w = (idx >> 6) as usize;
                let bit = 1u64 << (idx & 63);
                let fresh = words[w] & bit == 0;
                words[w] |= bit;
                fresh
            }
            Seen::Hash(set) => set.insert(idx),
        }
    }

    fn contains(&self, idx: u64) -> bool {
        match self {
            Seen::Bits(words) => words[(idx >> 6) as usize] & (1u64 << (idx & 63)) != 0,
            Seen::Hash(set) => set.contains(&idx),
        }
    }
}

fn total_budget() -> u64 {
    std::env::var("CFK_MAX_BASIS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 40)
}

/// One tensor factor: a complex used either directly or dualized.
struct Factor {
    size: u32,
    alex: Vec<i64>,
    /// All outgoing arrows (target, upower), dual-adjusted.
    out: Vec<Vec<(u32, u32)>>,
    /// All incoming arrows (source, upower), dual-adjusted.
    inc: Vec<Vec<(u32, u32)>>,
    /// Column (vertical) homology representative; the factor must have
    /// column homology of rank one.
    col_rep: Vec<u32>,
}

impl Factor {
    fn build(c: &Complex, dual: bool) -> Result<Factor, CfkError> {
        let n = c.len();
        let mut alex = Vec::with_capacity(n);
        for g in c.generators() {
            alex.push(if dual { -g.alexander } else { g.alexander });
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (f, t, u) in c.arrow_triples() {
            if dual {
                out[t as usize].push((f, u));
                inc[f as usize].push((t, u));
            } else {
                out[f as usize].push((t, u));
                inc[t as usize].push((f, u));
            }
        }
        // Vertical homology of the factor column, basis ascending (A, idx).
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| (alex[i as usize], i));
        let mut pos = vec![0u32; n];
        for (p, &i) in order.iter().enumerate() {
            pos[i as usize] = p as u32;
        }
        let h = f2::homology(n, |j| {
            let g = order[j as usize];
            let mut v: Vec<u32> = out[g as usize]
                .iter()
                .filter(|&&(_, u)| u == 0)
                .map(|&(t, _)| pos[t as usize])
                .collect();
            v.sort_unstable();
            v
        });
        if h.rank != 1 {
            return Err(CfkError::InvalidComplex(vec![format!(
                "tensor factor {} has column homology of dimension {}",
                c.name(),
                h.rank
            )]));
        }
        let col_rep: Vec<u32> = h.reps[0]
            .1
            .indices()
            .iter()
            .map(|&p| order[p as usize])
            .collect();
        Ok(Factor {
            size: n as u32,
            alex,
            out,
            inc,
            col_rep,
        })
    }
}

/// An implicit tensor product of factors.
pub struct Tensor {
    factors: Vec<Factor>,
    strides: Vec<u64>,
    total: u64,
}

impl Tensor {
    /// Builds the product of `(complex, dualized?)` pairs. Factors must be
    /// valid and reduced.
    pub fn new(parts: &[(&Complex, bool)]) -> Result<Tensor, CfkError> {
        if parts.is_empty() {
            return Err(CfkError::BadArgument("empty tensor factor list".into()));
        }
        let mut factors = Vec::with_capacity(parts.len());
        let mut strides = Vec::with_capacity(parts.len());
        let mut total: u64 = 1;
        for &(c, dual) in parts {
            c.require_valid()?;
            c.require_reduced()?;
            strides.push(total);
            let f = Factor::build(c, dual)?;
            total = total
                .checked_mul(f.size as u64)
                .ok_or(CfkError::SizeBudget {
                    needed: u64::MAX,
                    budget: total_budget(),
                })?;
            factors.push(f);
        }
        if total > total_budget() {
            return Err(CfkError::SizeBudget {
                needed: total,
                budget: total_budget(),
            });
        }
        Ok(Tensor {
            factors,
            strides,
            total,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// The same product with every factor's dual flag flipped.
    fn flipped(&self) -> Tensor {
        let factors: Vec<Factor> = self
            .factors
            .iter()
            .map(|f| {
                // Flip in place: negate gradings, swap adjacency. The
                // column representative is recomputed since the vertical
                // arrows reverse.
                let n = f.size as usize;
                let alex: Vec<i64> = f.alex.iter().map(|&a| -a).collect();
                let out = f.inc.clone();
                let inc = f.out.clone();
                let mut order: Vec<u32> = (0..n as u32).collect();
                order.sort_by_key(|&i| (alex[i as usize], i));
                let mut pos = vec![0u32; n];
                for (p, &i) in order.iter().enumerate() {
                    pos[i as usize] = p as u32;
                }
                let h = f2::homology(n, |j| {
                    let g = order[j as usize];
                    let mut v: Vec<u32> = out[g as usize]
                        .iter()
                        .filter(|&&(_, u)| u == 0)
                        .map(|&(t, _)| pos[t as usize])
                        .collect();
                    v.sort_unstable();
                    v
                });
                assert_eq!(h.rank, 1, "dual factor lost column rank one");
                let col_rep: Vec<u32> = h.reps[0]
                    .1
                    .indices()
                    .iter()
                    .map(|&p| order[p as usize])
                    .collect();
                Factor {
                    size: f.size,
                    alex,
                    out,
                    inc,
                    col_rep,
                }
            })
            .collect();
        Tensor {
            factors,
            strides: self.strides.clone(),
            total: self.total,
        }
    }

    fn digit(&self, idx: u64, slot: usize) -> u32 {
        ((idx / self.strides[slot]) % self.factors[slot].size as u64) as u32
    }

    fn alexander(&self, idx: u64) -> i64 {
        let mut a = 0i64;
        for (k, f) in self.factors.iter().enumerate() {
            a += f.alex[self.digit(idx, k) as usize];
        }
        a
    }

    /// Undirected neighbors through vertical (upower zero) arrows.
    fn vertical_neighbors(&self, idx: u64, buf: &mut Vec<u64>) {
        buf.clear();
        for (k, f) in self.factors.iter().enumerate() {
            let g = self.digit(idx, k);
            let base = idx - g as u64 * self.strides[k];
            for &(t, u) in &f.out[g as usize] {
                if u == 0 {
                    buf.push(base + t as u64 * self.strides[k]);
                }
            }
            for &(s, u) in &f.inc[g as usize] {
                if u == 0 {
                    buf.push(base + s as u64 * self.strides[k]);
                }
            }
        }
    }

    /// Vertical boundary (upower zero arrows, outgoing).
    fn vertical_boundary(&self, idx: u64, buf: &mut Vec<u64>) {
        buf.clear();
        for (k, f) in self.factors.iter().enumerate() {
            let g = self.digit(idx, k);
            let base = idx - g as u64 * self.strides[k];
            for &(t, u) in &f.out[g as usize] {
                if u == 0 {
                    buf.push(base + t as u64 * self.strides[k]);
                }
            }
        }
    }

    /// Outgoing arrows (target tuple, upower).
    fn arrows_from(&self, idx: u64, buf: &mut Vec<(u64, u32)>) {
        buf.clear();
        for (k, f) in self.factors.iter().enumerate() {
            let g = self.digit(idx, k);
            let base = idx - g as u64 * self.strides[k];
            for &(t, u) in &f.out[g as usize] {
                buf.push((base + t as u64 * self.strides[k], u));
            }
        }
    }

    fn arrows_into(&self, idx: u64, buf: &mut Vec<(u64, u32)>) {
        buf.clear();
        for (k, f) in self.factors.iter().enumerate() {
            let g = self.digit(idx, k);
            let base = idx - g as u64 * self.strides[k];
            for &(s, u) in &f.inc[g as usize] {
                buf.push((base + s as u64 * self.strides[k], u));
            }
        }
    }

    /// Column position of a tuple on the min-hook at level tau.
    fn hook_column(&self, idx: u64, tau: i64) -> i64 {
        (tau - self.alexander(idx)).max(0)
    }

    /// Connected component of the vertical arrow graph containing `start`,
    /// skipping tuples already in `seen`.
    fn vertical_component(
        &self,
        start: u64,
        seen: &mut Seen,
        budget: u64,
    ) -> Result<Vec<u64>, CfkError> {
        let mut comp = Vec::new();
        let mut stack = vec![start];
        let mut nbrs = Vec::new();
        seen.insert(start);
        while let Some(u) = stack.pop() {
            comp.push(u);
            if comp.len() as u64 > budget {
                return Err(CfkError::SizeBudget {
                    needed: comp.len() as u64,
                    budget,
                });
            }
            self.vertical_neighbors(u, &mut nbrs);
            for &v in nbrs.iter() {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        Ok(comp)
    }

    /// Homology bookkeeping for one vertical component: returns the local
    /// reduction over the component sorted ascending by (A, idx).
    fn component_order(&self, comp: &mut Vec<u64>) -> Vec<i64> {
        comp.sort_unstable();
        let mut keyed: Vec<(i64, u64)> = comp.iter().map(|&u| (self.alexander(u), u)).collect();
        keyed.sort_unstable();
        *comp = keyed.iter().map(|&(_, u)| u).collect();
        keyed.into_iter().map(|(a, _)| a).collect()
    }

    /// Boundary columns over a component in its given order. Targets of
    /// vertical arrows stay inside the component, so lookups are by
    /// position in a sorted copy.
    fn component_boundary_columns(&self, comp: &[u64]) -> Vec<Vec<u32>> {
        let mut sorted: Vec<(u64, u32)> = comp
            .iter()
            .enumerate()
            .map(|(k, &u)| (u, k as u32))
            .collect();
        sorted.sort_unstable();
        let lookup = |v: u64| -> u32 {
            let p = sorted
                .binary_search_by_key(&v, |&(u, _)| u)
                .expect("target in component");
            sorted[p].1
        };
        let mut buf = Vec::new();
        comp.iter()
            .map(|&u| {
                self.vertical_boundary(u, &mut buf);
                let mut col: Vec<u32> = buf.iter().map(|&v| lookup(v)).collect();
                col.sort_unstable();
                col
            })
            .collect()
    }

    /// τ plus a minimal-top representative of the column generator class,
    /// as a set of tuples (their column copies all sit at (0, A)).
    pub fn tau_and_rep(&self) -> Result<(i64, Vec<u64>), CfkError> {
        // Product of the factor representatives.
        let mut support: Vec<u64> = vec![0];
        for (k, f) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(support.len() * f.col_rep.len());
            for &base in &support {
                for &g in &f.col_rep {
                    next.push(base + g as u64 * self.strides[k]);
                }
            }
            support = next;
        }
        let budget = component_budget();
        let mut seen = Seen::new(self.total);
        let mut carrier: Option<(Vec<u64>, Vec<u32>)> = None; // (component, z restriction)
        for &s in &support {
            if seen.contains(s) {
                continue;
            }
            let mut comp = self.vertical_component(s, &mut seen, budget)?;
            self.component_order(&mut comp);
            let local: HashMap<u64, u32> = comp
                .iter()
                .enumerate()
                .map(|(k, &u)| (u, k as u32))
                .collect();
            let cols = self.component_boundary_columns(&comp);
            let red = f2::reduce_boundary(comp.len(), |j| cols[j as usize].clone(), false);
            let z_local: Vec<u32> = support
                .iter()
                .filter_map(|u| local.get(u).copied())
                .collect();
            let z = Col::from_unsorted(z_local.clone());
            if !red.in_image(z) {
                if carrier.is_some() {
                    return Err(CfkError::InvalidComplex(vec![
                        "column generator class split across components".into(),
                    ]));
                }
                carrier = Some((comp, z_local));
            }
        }
        let (comp, _z) = carrier.ok_or_else(|| {
            CfkError::InvalidComplex(vec!["column generator class is null-homologous".into()])
        })?;
        // Canonical homology of the carrier for the minimal-top
        // representative.
        let cols = self.component_boundary_columns(&comp);
        let h = f2::homology(comp.len(), |j| cols[j as usize].clone());
        if h.rank != 1 {
            return Err(CfkError::InvalidComplex(vec![format!(
                "carrier component has column homology of dimension {}",
                h.rank
            )]));
        }
        let (beta, rep) = &h.reps[0];
        let tau = self.alexander(comp[*beta as usize]);
        let rep_tuples: Vec<u64> = rep.indices().iter().map(|&p| comp[p as usize]).collect();
        // Full verification sweep at desk scale: the whole column must
        // have homology of dimension one.
        if self.total <= FULL_VERIFY_LIMIT {
            let mut seen_all = Seen::new(self.total);
            let mut rank = 0usize;
            for idx in 0..self.total {
                if seen_all.contains(idx) {
                    continue;
                }
                let mut c = self.vertical_component(idx, &mut seen_all, budget)?;
                self.component_order(&mut c);
                let cols = self.component_boundary_columns(&c);
                let red = f2::reduce_boundary(c.len(), |j| cols[j as usize].clone(), false);
                rank += red.homology_rank();
            }
            if rank != 1 {
                return Err(CfkError::InvalidComplex(vec![format!(
                    "product column homology has dimension {rank}"
                )]));
            }
        }
        Ok((tau, rep_tuples))
    }

    /// Is the F map trivial: does the hook projection of the column
    /// generator representative bound inside the min-hook realization?
    fn f_trivial(&self) -> Result<bool, CfkError> {
        let (tau, rep) = self.tau_and_rep()?;
        // Projection keeps the copies with A >= tau (all at column 0).
        let b_support: Vec<u64> = rep
            .iter()
            .copied()
            .filter(|&u| self.alexander(u) >= tau)
            .collect();
        if b_support.is_empty() {
            return Ok(true);
        }
        // Explore the hook-graph components around the support.
        let budget = component_budget();
        let mut seen = Seen::new(self.total);
        let mut members: Vec<u64> = Vec::new();
        let mut stack: Vec<u64> = Vec::new();
        let mut outs = Vec::new();
        let mut ins = Vec::new();
        for &s in &b_support {
            if !seen.insert(s) {
                continue;
            }
            stack.push(s);
            while let Some(u) = stack.pop() {
                members.push(u);
                if members.len() as u64 > budget {
                    return Err(CfkError::SizeBudget {
                        needed: members.len() as u64,
                        budget,
                    });
                }
                let cu = self.hook_column(u, tau);
                self.arrows_from(u, &mut outs);
                for &(v, n) in outs.iter() {
                    if self.hook_column(v, tau) == cu - n as i64 && seen.insert(v) {
                        stack.push(v);
                    }
                }
                self.arrows_into(u, &mut ins);
                for &(w, n) in ins.iter() {
                    if cu == self.hook_column(w, tau) - n as i64 && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        members.sort_unstable();
        let lookup = |v: u64| -> Option<u32> { members.binary_search(&v).ok().map(|p| p as u32) };
        let mut buf = Vec::new();
        let red = f2::reduce_boundary(
            members.len(),
            |j| {
                let u = members[j as usize];
                let cu = self.hook_column(u, tau);
                self.arrows_from(u, &mut buf);
                let mut col: Vec<u32> = buf
                    .iter()
                    .filter(|&&(v, n)| self.hook_column(v, tau) == cu - n as i64)
                    .filter_map(|&(v, _)| lookup(v))
                    .collect();
                col.sort_unstable();
                col
            },
            false,
        );
        let b = Col::from_unsorted(b_support.iter().filter_map(|&u| lookup(u)).collect());
        Ok(red.in_image(b))
    }
}

/// ε of a formal tensor expression given as `(complex, dualized?)` parts.
pub fn epsilon_factors(parts: &[(&Complex, bool)]) -> Result<i8, CfkError> {
    let t = Tensor::new(parts)?;
    let f_triv = t.f_trivial()?;
    let g_triv = t.flipped().f_trivial()?;
    match (f_triv, g_triv) {
        (true, true) => Err(CfkError::InvariantContradiction),
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        (false, false) => Ok(0),
    }
}

/// τ of a formal tensor expression.
pub fn tau_factors(parts: &[(&Complex, bool)]) -> Result<i64, CfkError> {
    let t = Tensor::new(parts)?;
    Ok(t.tau_and_rep()?.0)
}
