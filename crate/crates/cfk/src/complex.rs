//! The data model for CFK∞-like complexes and their algebra: validation,
//! dual, tensor product, Gaussian reduction, formal differences and
//! multiples.
//!
//! A complex stores finitely many generators, each with an Alexander
//! grading `A` and a Maslov grading `M`, plus a set of F₂ arrows carrying
//! U-powers. Every generator is normalized to U-power 0: its lattice
//! copies sit at `(i, A + i)`, and an arrow with upower `n` connects the
//! copy of `from` at `(i, A(from) + i)` to the copy of `to` at
//! `(i - n, A(to) + i - n)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::CfkError;
use crate::f2;

/// A generator with its two gradings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub id: String,
    pub alexander: i64,
    pub maslov: i64,
}

/// One F₂ differential component: `∂(from) ∋ U^upower · to`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub upower: u32,
}

/// Classification of an arrow of a reduced complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowKind {
    /// Preserves the i-coordinate: upower 0, Alexander drop > 0.
    Vertical,
    /// Preserves the j-coordinate: upower > 0 with A(to) - n = A(from).
    Horizontal,
    /// Drops both coordinates.
    Diagonal,
}

/// A bifiltered chain complex over F₂[U, U⁻¹].
///
/// Generators are kept sorted by id, so index order and id order agree
/// everywhere; this is what makes reduction tie-breaks and homology pivot
/// choices stable across serialization round trips.
#[derive(Clone, Debug)]
pub struct Complex {
    name: String,
    gens: Vec<Generator>,
    /// (from index, to index, upower), ordered.
    arrows: BTreeSet<(u32, u32, u32)>,
    reduced: bool,
    out_adj: Vec<Vec<(u32, u32)>>,
    in_adj: Vec<Vec<(u32, u32)>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.gens == other.gens && self.arrows == other.arrows
    }
}
impl Eq for Complex {}

fn id_ok(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '*' || c == '^')
}

impl Complex {
    /// Builds a complex from generator and arrow lists.
    ///
    /// Enforces structural sanity only (unique ids over the permitted
    /// charset, arrows referencing known generators, no duplicate arrows);
    /// the mathematical invariants are checked by [`validate`].
    pub fn new(
        name: impl Into<String>,
        mut generators: Vec<Generator>,
        arrows: Vec<Arrow>,
    ) -> Result<Complex, CfkError> {
        generators.sort_by(|a, b| a.id.cmp(&b.id));
        for w in generators.windows(2) {
            if w[0].id == w[1].id {
                return Err(CfkError::BadArgument(format!(
                    "duplicate generator id {}",
                    w[0].id
                )));
            }
        }
        for g in &generators {
            if !id_ok(&g.id) {
                return Err(CfkError::BadArgument(format!(
                    "bad generator id {:?}",
                    g.id
                )));
            }
        }
        let index: BTreeMap<&str, u32> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.id.as_str(), i as u32))
            .collect();
        let mut set = BTreeSet::new();
        for a in &arrows {
            let f = *index.get(a.from.as_str()).ok_or_else(|| {
                CfkError::BadArgument(format!("arrow from unknown id {}", a.from))
            })?;
            let t = *index
                .get(a.to.as_str())
                .ok_or_else(|| CfkError::BadArgument(format!("arrow to unknown id {}", a.to)))?;
            if !set.insert((f, t, a.upower)) {
                return Err(CfkError::BadArgument(format!(
                    "duplicate arrow {} -> {} (U^{})",
                    a.from, a.to, a.upower
                )));
            }
        }
        Ok(Complex::assemble(name.into(), generators, set))
    }

    fn assemble(name: String, gens: Vec<Generator>, arrows: BTreeSet<(u32, u32, u32)>) -> Complex {
        let n = gens.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut reduced = true;
        for &(f, t, u) in &arrows {
            out_adj[f as usize].push((t, u));
            in_adj[t as usize].push((f, u));
            if u == 0 && gens[f as usize].alexander == gens[t as usize].alexander {
                reduced = false;
            }
        }
        Complex {
            name,
            gens,
            arrows,
            reduced,
            out_adj,
            in_adj,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Complex {
        let mut c = self.clone();
        c.name = name.into();
        c
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when no arrow preserves both filtrations.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn arrow_triples(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.arrows.iter().copied()
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        self.arrows
            .iter()
            .map(|&(f, t, u)| Arrow {
                from: self.gens[f as usize].id.clone(),
                to: self.gens[t as usize].id.clone(),
                upower: u,
            })
            .collect()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn index_of(&self, id: &str) -> Option<u32> {
        self.gens
            .binary_search_by(|g| g.id.as_str().cmp(id))
            .ok()
            .map(|i| i as u32)
    }

    pub fn gen(&self, idx: u32) -> &Generator {
        &self.gens[idx as usize]
    }

    /// Outgoing arrows of a generator as (target index, upower).
    pub fn arrows_from(&self, idx: u32) -> &[(u32, u32)] {
        &self.out_adj[idx as usize]
    }

    /// Incoming arrows of a generator as (source index, upower).
    pub fn arrows_into(&self, idx: u32) -> &[(u32, u32)] {
        &self.in_adj[idx as usize]
    }

    pub fn alexander_range(&self) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = 0;
        for (k, g) in self.gens.iter().enumerate() {
            if k == 0 {
                lo = g.alexander;
                hi = g.alexander;
            } else {
                lo = lo.min(g.alexander);
                hi = hi.max(g.alexander);
            }
        }
        (lo, hi)
    }

    /// Checks every complex invariant; an empty report means valid.
    ///
    /// Reducedness is deliberately not a violation: the `reduced` flag
    /// records it, and operations that require it say so.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for &(f, t, u) in &self.arrows {
            let gf = &self.gens[f as usize];
            let gt = &self.gens[t as usize];
            let drop = gt.alexander - gf.alexander;
            if (u as i64) < drop.max(0) {
                out.push(format!(
                    "arrow {} -> {}: upower {} below Alexander demand {}",
                    gf.id,
                    gt.id,
                    u,
                    drop.max(0)
                ));
            }
            if gt.maslov != gf.maslov - 1 + 2 * u as i64 {
                out.push(format!(
                    "arrow {} -> {}: Maslov gradings violate M(to) = M(from) - 1 + 2n",
                    gf.id, gt.id
                ));
            }
        }
        // ∂² = 0: two-arrow paths between each ordered pair, split by total
        // U-power, must come in even numbers.
        let mut paths: BTreeMap<(u32, u32, u32), u32> = BTreeMap::new();
        for &(f, m, u1) in &self.arrows {
            for &(t, u2) in self.arrows_from(m) {
                *paths.entry((f, t, u1 + u2)).or_insert(0) += 1;
            }
        }
        for ((f, t, u), count) in paths {
            if count % 2 == 1 {
                out.push(format!(
                    "∂² != 0: odd number of paths {} -> {} at total U-power {}",
                    self.gens[f as usize].id, self.gens[t as usize].id, u
                ));
            }
        }
        // Column condition: the i = 0 column (vertical arrows only) has
        // homology of dimension 1.
        let cdim = self.column_homology_rank();
        if cdim != 1 {
            out.push(format!(
                "column condition: i=0 column homology has dimension {cdim}"
            ));
        }
        // Collapse condition: forgetting U leaves one-dimensional homology.
        let fdim = self.collapse_homology_rank();
        if fdim != 1 {
            out.push(format!(
                "collapse condition: forget-U homology has dimension {fdim}"
            ));
        }
        // Symmetry necessary condition on the (A, M) multiset.
        let mut direct: Vec<(i64, i64)> =
            self.gens.iter().map(|g| (g.alexander, g.maslov)).collect();
        let mut mirrored: Vec<(i64, i64)> = self
            .gens
            .iter()
            .map(|g| (-g.alexander, g.maslov - 2 * g.alexander))
            .collect();
        direct.sort_unstable();
        mirrored.sort_unstable();
        if direct != mirrored {
            out.push(
                "symmetry condition: (A, M) multiset not invariant under filtration swap".into(),
            );
        }
        out
    }

    pub fn require_valid(&self) -> Result<(), CfkError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CfkError::InvalidComplex(v))
        }
    }

    pub fn require_reduced(&self) -> Result<(), CfkError> {
        if self.reduced {
            return Ok(());
        }
        for &(f, t, u) in &self.arrows {
            if u == 0 && self.gens[f as usize].alexander == self.gens[t as usize].alexander {
                return Err(CfkError::NotReduced {
                    from: self.gens[f as usize].id.clone(),
                    to: self.gens[t as usize].id.clone(),
                });
            }
        }
        unreachable!("reduced flag disagrees with arrow scan");
    }

    /// Dimension of the homology of the i = 0 column.
    pub(crate) fn column_homology_rank(&self) -> usize {
        // Basis sorted ascending by (A, id); vertical arrows only.
        let mut order: Vec<u32> = (0..self.gens.len() as u32).collect();
        order.sort_by_key(|&i| (self.gens[i as usize].alexander, i));
        let mut pos = vec![0u32; order.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i as usize] = p as u32;
        }
        let red = f2::reduce_boundary(
            order.len(),
            |j| {
                let g = order[j as usize];
                let mut v: Vec<u32> = self
                    .arrows_from(g)
                    .iter()
                    .filter(|&&(_, u)| u == 0)
                    .map(|&(t, _)| pos[t as usize])
                    .collect();
                v.sort_unstable();
                v
            },
            false,
        );
        red.homology_rank()
    }

    /// Dimension of the homology after forgetting U entirely.
    pub(crate) fn collapse_homology_rank(&self) -> usize {
        let red = f2::reduce_boundary(
            self.gens.len(),
            |j| {
                // Arrows with equal (from, to) and different upower cancel
                // mod 2 once U is forgotten.
                let mut v: Vec<u32> = self.arrows_from(j).iter().map(|&(t, _)| t).collect();
                v.sort_unstable();
                let mut out = Vec::with_capacity(v.len());
                let mut i = 0;
                while i < v.len() {
                    let mut k = i + 1;
                    while k < v.len() && v[k] == v[i] {
                        k += 1;
                    }
                    if (k - i) % 2 == 1 {
                        out.push(v[i]);
                    }
                    i = k;
                }
                out
            },
            false,
        );
        red.homology_rank()
    }

    /// The dual complex: gradings negated, arrows reversed, ids marked
    /// with a `^` suffix.
    pub fn dual(&self) -> Result<Complex, CfkError> {
        self.require_valid()?;
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> Complex {
        let gens: Vec<Generator> = self
            .gens
            .iter()
            .map(|g| Generator {
                id: format!("{}^", g.id),
                alexander: -g.alexander,
                maslov: -g.maslov,
            })
            .collect();
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|&(f, t, u)| Arrow {
                from: format!("{}^", self.gens[t as usize].id),
                to: format!("{}^", self.gens[f as usize].id),
                upower: u,
            })
            .collect();
        Complex::new(format!("{}^", self.name), gens, arrows).expect("dual is structurally sound")
    }

    /// Tensor product over F₂[U, U⁻¹] with the Leibniz differential.
    pub fn tensor(&self, other: &Complex) -> Result<Complex, CfkError> {
        self.require_valid()?;
        other.require_valid()?;
        Ok(self.tensor_unchecked(other))
    }

    pub(crate) fn tensor_unchecked(&self, other: &Complex) -> Complex {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(Generator {
                    id: format!("{}*{}", a.id, b.id),
                    alexander: a.alexander + b.alexander,
                    maslov: a.maslov + b.maslov,
                });
            }
        }
        let mut arrows = Vec::new();
        for &(f, t, u) in &self.arrows {
            for b in &other.gens {
                arrows.push(Arrow {
                    from: format!("{}*{}", self.gens[f as usize].id, b.id),
                    to: format!("{}*{}", self.gens[t as usize].id, b.id),
                    upower: u,
                });
            }
        }
        for &(f, t, u) in &other.arrows {
            for a in &self.gens {
                arrows.push(Arrow {
                    from: format!("{}*{}", a.id, other.gens[f as usize].id),
                    to: format!("{}*{}", a.id, other.gens[t as usize].id),
                    upower: u,
                });
            }
        }
        Complex::new(format!("{}*{}", self.name, other.name), gens, arrows)
            .expect("tensor is structurally sound")
    }

    /// `self ⊗ dual(other)`: the group difference.
    pub fn difference(&self, other: &Complex) -> Result<Complex, CfkError> {
        self.require_valid()?;
        let d = other.dual()?;
        Ok(self.tensor_unchecked(&d))
    }

    /// k-fold tensor power, k >= 1.
    pub fn multiple(&self, k: u32) -> Result<Complex, CfkError> {
        if k < 1 {
            return Err(CfkError::BadArgument(format!(
                "multiple requires k >= 1, got {k}"
            )));
        }
        self.require_valid()?;
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.tensor_unchecked(self);
        }
        Ok(acc)
    }

    /// Classifies an arrow of a reduced complex.
    pub fn arrow_kind(&self, arrow: &Arrow) -> Result<ArrowKind, CfkError> {
        let f = self
            .index_of(&arrow.from)
            .ok_or_else(|| CfkError::BadArgument(format!("unknown id {}", arrow.from)))?;
        let t = self
            .index_of(&arrow.to)
            .ok_or_else(|| CfkError::BadArgument(format!("unknown id {}", arrow.to)))?;
        if !self.arrows.contains(&(f, t, arrow.upower)) {
            return Err(CfkError::BadArgument(format!(
                "arrow {} -> {} (U^{}) not in complex",
                arrow.from, arrow.to, arrow.upower
            )));
        }
        let da = self.gens[t as usize].alexander - self.gens[f as usize].alexander;
        if arrow.upower == 0 {
            if da == 0 {
                return Err(CfkError::NotReduced {
                    from: arrow.from.clone(),
                    to: arrow.to.clone(),
                });
            }
            Ok(ArrowKind::Vertical)
        } else if da - arrow.upower as i64 == 0 {
            Ok(ArrowKind::Horizontal)
        } else {
            Ok(ArrowKind::Diagonal)
        }
    }

    /// Gaussian cancellation of both-filtration-preserving arrows.
    ///
    /// Cancels the lexicographically least (from-id, to-id) eligible arrow
    /// first, splicing composite arrows with F₂ coefficients and summed
    /// U-powers, until the complex is reduced. Filtered chain homotopy
    /// equivalent to the input.
    pub fn reduce(&self) -> Result<Complex, CfkError> {
        // Valid except possibly reducedness: run validate but ignore
        // nothing — reducedness is not part of validate.
        self.require_valid()?;
        if self.reduced {
            return Ok(self.clone());
        }
        let n = self.gens.len();
        let mut alive = vec![true; n];
        let mut out: Vec<BTreeSet<(u32, u32)>> = self
            .out_adj
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        let mut inc: Vec<BTreeSet<(u32, u32)>> = self
            .in_adj
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        let eligible = |gens: &[Generator], f: u32, t: u32, u: u32| {
            u == 0 && gens[f as usize].alexander == gens[t as usize].alexander
        };
        let mut queue: BTreeSet<(u32, u32)> = BTreeSet::new();
        for &(f, t, u) in &self.arrows {
            if eligible(&self.gens, f, t, u) {
                queue.insert((f, t));
            }
        }
        while let Some(&(f, t)) = queue.iter().next() {
            queue.remove(&(f, t));
            if !alive[f as usize] || !alive[t as usize] || !out[f as usize].contains(&(t, 0)) {
                continue;
            }
            let into_t: Vec<(u32, u32)> = inc[t as usize]
                .iter()
                .copied()
                .filter(|&(w, _)| w != f)
                .collect();
            let from_f: Vec<(u32, u32)> = out[f as usize]
                .iter()
                .copied()
                .filter(|&(z, _)| z != t)
                .collect();
            // Detach f and t completely.
            for &(z, u) in out[f as usize].clone().iter() {
                inc[z as usize].remove(&(f, u));
            }
            for &(w, u) in inc[f as usize].clone().iter() {
                out[w as usize].remove(&(f, u));
            }
            for &(z, u) in out[t as usize].clone().iter() {
                inc[z as usize].remove(&(t, u));
            }
            for &(w, u) in inc[t as usize].clone().iter() {
                out[w as usize].remove(&(t, u));
            }
            out[f as usize].clear();
            inc[f as usize].clear();
            out[t as usize].clear();
            inc[t as usize].clear();
            alive[f as usize] = false;
            alive[t as usize] = false;
            // Splice w -> z with summed U-powers, toggling mod 2.
            for &(w, uw) in &into_t {
                if !alive[w as usize] {
                    continue;
                }
                for &(z, uz) in &from_f {
                    if !alive[z as usize] {
                        continue;
                    }
                    let key = (z, uw + uz);
                    if out[w as usize].remove(&key) {
                        inc[z as usize].remove(&(w, uw + uz));
                        if eligible(&self.gens, w, z, uw + uz) {
                            queue.remove(&(w, z));
                        }
                    } else {
                        out[w as usize].insert(key);
                        inc[z as usize].insert((w, uw + uz));
                        if eligible(&self.gens, w, z, uw + uz) {
                            queue.insert((w, z));
                        }
                    }
                }
            }
        }
        let gens: Vec<Generator> = self
            .gens
            .iter()
            .enumerate()
            .filter(|&(i, _)| alive[i])
            .map(|(_, g)| g.clone())
            .collect();
        let mut arrows = Vec::new();
        for (f, adj) in out.iter().enumerate() {
            if !alive[f] {
                continue;
            }
            for &(t, u) in adj {
                arrows.push(Arrow {
                    from: self.gens[f].id.clone(),
                    to: self.gens[t as usize].id.clone(),
                    upower: u,
                });
            }
        }
        Complex::new(self.name.clone(), gens, arrows)
    }
}
