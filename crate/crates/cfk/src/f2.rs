//! F₂ linear algebra: bit-packed vectors and the canonical column
//! reduction used for every homology computation.
//!
//! The reduction is the standard one for chain-complex boundary matrices:
//! process columns in ascending basis order, repeatedly adding the stored
//! column with the same top (maximum) index until tops are distinct or the
//! column vanishes. With the basis sorted ascending by filtration level the
//! surviving (essential) indices give homology representatives whose top
//! index is minimal over their class, which is exactly what the τ sweep
//! needs.
//!
//! Columns switch between a sorted index list and a bit-packed word block
//! depending on density; small matrices therefore run fully bit-packed
//! while multi-million-dimensional columns stay sparse.

/// Density threshold: a column with more than `len / SPARSE_RATIO` entries
/// is converted to bit-packed form.
const SPARSE_RATIO: usize = 32;

/// One F₂ column over a basis `0..len`, sparse or bit-packed.
#[derive(Clone, Debug)]
pub enum Col {
    /// Sorted ascending, no duplicates.
    Sparse(Vec<u32>),
    /// Bit-packed; `words[i >> 6] >> (i & 63) & 1`.
    Dense { words: Vec<u64>, count: usize },
}

impl Col {
    pub fn empty() -> Col {
        Col::Sparse(Vec::new())
    }

    pub fn from_sorted(v: Vec<u32>) -> Col {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Col::Sparse(v)
    }

    pub fn from_unsorted(mut v: Vec<u32>) -> Col {
        v.sort_unstable();
        // XOR semantics: an index appearing twice cancels.
        let mut out = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i + 1;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(v[i]);
            }
            i = j;
        }
        Col::Sparse(out)
    }

    pub fn singleton(i: u32) -> Col {
        Col::Sparse(vec![i])
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Col::Sparse(v) => v.is_empty(),
            Col::Dense { count, .. } => *count == 0,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Col::Sparse(v) => v.len(),
            Col::Dense { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Maximum set index, or None when zero.
    pub fn top(&self) -> Option<u32> {
        match self {
            Col::Sparse(v) => v.last().copied(),
            Col::Dense { words, .. } => {
                for (w, &word) in words.iter().enumerate().rev() {
                    if word != 0 {
                        let b = 63 - word.leading_zeros();
                        return Some(((w as u32) << 6) | b);
                    }
                }
                None
            }
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        match self {
            Col::Sparse(v) => v.binary_search(&i).is_ok(),
            Col::Dense { words, .. } => {
                let w = (i >> 6) as usize;
                w < words.len() && (words[w] >> (i & 63)) & 1 == 1
            }
        }
    }

    pub fn indices(&self) -> Vec<u32> {
        match self {
            Col::Sparse(v) => v.clone(),
            Col::Dense { words, .. } => {
                let mut out = Vec::new();
                for (w, &word) in words.iter().enumerate() {
                    let mut m = word;
                    while m != 0 {
                        let b = m.trailing_zeros();
                        out.push(((w as u32) << 6) | b);
                        m &= m - 1;
                    }
                }
                out
            }
        }
    }

    fn to_dense(&self, ambient: usize) -> Col {
        match self {
            Col::Dense { .. } => self.clone(),
            Col::Sparse(v) => {
                let mut words = vec![0u64; ambient.div_ceil(64)];
                for &i in v {
                    words[(i >> 6) as usize] ^= 1u64 << (i & 63);
                }
                Col::Dense {
                    words,
                    count: v.len(),
                }
            }
        }
    }

    /// `self ^= other`, converting representation when density warrants.
    pub fn xor(&mut self, other: &Col, ambient: usize) {
        match (&mut *self, other) {
            (Col::Dense { words, count }, Col::Dense { words: ow, .. }) => {
                if words.len() < ow.len() {
                    words.resize(ow.len(), 0);
                }
                let mut c = 0usize;
                for (a, &b) in words.iter_mut().zip(ow.iter()) {
                    *a ^= b;
                    c += a.count_ones() as usize;
                }
                for a in words.iter().skip(ow.len()) {
                    c += a.count_ones() as usize;
                }
                *count = c;
            }
            (Col::Dense { words, count }, Col::Sparse(v)) => {
                let need = v.last().map_or(0, |&m| ((m >> 6) + 1) as usize);
                if words.len() < need {
                    words.resize(need, 0);
                }
                let mut c = *count as isize;
                for &i in v {
                    let w = &mut words[(i >> 6) as usize];
                    let bit = 1u64 << (i & 63);
                    if *w & bit != 0 {
                        c -= 1;
                    } else {
                        c += 1;
                    }
                    *w ^= bit;
                }
                *count = c as usize;
            }
            (Col::Sparse(v), other) => {
                let ov = match other {
                    Col::Sparse(o) => o.clone(),
                    Col::Dense { .. } => other.indices(),
                };
                let mut merged = Vec::with_capacity(v.len() + ov.len());
                let (mut i, mut j) = (0, 0);
                while i < v.len() && j < ov.len() {
                    use std::cmp::Ordering::*;
                    match v[i].cmp(&ov[j]) {
                        Less => {
                            merged.push(v[i]);
                            i += 1;
                        }
                        Greater => {
                            merged.push(ov[j]);
                            j += 1;
                        }
                        Equal => {
                            i += 1;
                            j += 1;
                        }
                    }
                }
                merged.extend_from_slice(&v[i..]);
                merged.extend_from_slice(&ov[j..]);
                *v = merged;
                if ambient >= 64 && v.len() > ambient / SPARSE_RATIO {
                    *self = self.to_dense(ambient);
                }
            }
        }
    }
}

/// Result of the canonical reduction of a boundary matrix ∂ : V → V over
/// an ordered basis `0..n`.
pub struct Reduction {
    pub n: usize,
    /// Reduced column per basis index; zero columns are dropped.
    /// `pivots[top] = j` means reduced column j has top index `top`.
    pub reduced: Vec<Option<Col>>,
    pub pivots: std::collections::HashMap<u32, u32>,
    /// Accumulated combination per column: `chains[j] = e_j + ...`, so that
    /// ∂(chains[j]) = reduced[j]. Only retained when requested.
    pub chains: Option<Vec<Col>>,
}

impl Reduction {
    /// Homology rank: `n - 2 * rank(∂)`.
    pub fn homology_rank(&self) -> usize {
        self.n - 2 * self.pivots.len()
    }

    /// Essential indices: basis positions whose column reduced to zero and
    /// that are no reduced column's top. Ascending order.
    pub fn essential(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|j| self.reduced[*j as usize].is_none() && !self.pivots.contains_key(j))
            .collect()
    }

    /// Reduces a chain against the boundary echelon; the result is zero
    /// exactly when the input lies in the image of ∂.
    pub fn reduce_against_boundaries(&self, mut c: Col) -> Col {
        while let Some(t) = c.top() {
            match self.pivots.get(&t) {
                Some(&j) => {
                    let rc = self.reduced[j as usize].as_ref().unwrap();
                    c.xor(rc, self.n);
                }
                None => break,
            }
        }
        c
    }

    pub fn in_image(&self, c: Col) -> bool {
        self.reduce_against_boundaries(c).is_zero()
    }
}

/// Runs the canonical reduction of the boundary matrix given by
/// `boundary(j)` = ∂ of basis element j (as sorted indices), processing
/// columns in ascending order. `with_chains` retains the combination
/// matrix so cycle representatives can be extracted.
pub fn reduce_boundary<F>(n: usize, mut boundary: F, with_chains: bool) -> Reduction
where
    F: FnMut(u32) -> Vec<u32>,
{
    let mut reduced: Vec<Option<Col>> = Vec::with_capacity(n);
    let mut pivots: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    let mut chains: Option<Vec<Col>> = if with_chains {
        Some(Vec::with_capacity(n))
    } else {
        None
    };
    for j in 0..n as u32 {
        let mut col = Col::from_sorted(boundary(j));
        let mut chain = Col::singleton(j);
        while let Some(t) = col.top() {
            match pivots.get(&t) {
                Some(&pj) => {
                    let pc = reduced[pj as usize].as_ref().unwrap().clone();
                    col.xor(&pc, n);
                    if let Some(ch) = &chains {
                        let pchain = ch[pj as usize].clone();
                        chain.xor(&pchain, n);
                    }
                }
                None => break,
            }
        }
        if let Some(t) = col.top() {
            pivots.insert(t, j);
            reduced.push(Some(col));
        } else {
            reduced.push(None);
        }
        if let Some(ch) = &mut chains {
            ch.push(chain);
        }
    }
    Reduction {
        n,
        reduced,
        pivots,
        chains,
    }
}

/// Full homology data over an ordered basis: rank plus cycle
/// representatives for the essential classes, each with distinct top index.
pub struct Homology {
    pub rank: usize,
    /// (essential index, representative cycle); representatives ascend by
    /// their top index, which equals the essential index.
    pub reps: Vec<(u32, Col)>,
    pub reduction: Reduction,
}

pub fn homology<F>(n: usize, boundary: F) -> Homology
where
    F: FnMut(u32) -> Vec<u32>,
{
    let red = reduce_boundary(n, boundary, true);
    let chains = red.chains.as_ref().unwrap();
    let reps: Vec<(u32, Col)> = red
        .essential()
        .into_iter()
        .map(|j| (j, chains[j as usize].clone()))
        .collect();
    Homology {
        rank: reps.len(),
        reps,
        reduction: red,
    }
}

impl Homology {
    /// Coordinates of a cycle in the essential-representative basis, or
    /// None when the input is not a cycle-coset member (never happens for
    /// genuine cycles).
    pub fn class_coordinates(&self, cycle: Col) -> Option<Vec<bool>> {
        let mut coords = vec![false; self.reps.len()];
        let mut c = cycle;
        loop {
            c = self.reduction.reduce_against_boundaries(c);
            let t = match c.top() {
                None => return Some(coords),
                Some(t) => t,
            };
            match self.reps.binary_search_by_key(&t, |(j, _)| *j) {
                Ok(k) => {
                    coords[k] ^= true;
                    let rep = self.reps[k].1.clone();
                    c.xor(&rep, self.reduction.n);
                }
                Err(_) => return None,
            }
        }
    }

    /// True when the two cycles are homologous.
    pub fn classes_equal(&self, u: Col, v: Col) -> bool {
        let mut d = u;
        d.xor(&v, self.reduction.n);
        self.reduction.in_image(d)
    }
}

/// A dense affine system over F₂: rows of (coefficients, rhs).
pub struct LinearSystem {
    pub unknowns: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> LinearSystem {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn words(&self) -> usize {
        self.unknowns.div_ceil(64)
    }

    /// Adds the row Σ lhs[i]·x_i = rhs.
    pub fn add_row(&mut self, lhs: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words()];
        for &i in lhs {
            row[i >> 6] ^= 1u64 << (i & 63);
        }
        self.rows.push((row, rhs));
    }

    /// Returns a particular solution and a basis of the homogeneous
    /// kernel, or None when the system is inconsistent.
    pub fn solve(mut self) -> Option<(Vec<bool>, Vec<Vec<bool>>)> {
        let n = self.unknowns;
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; self.rows.len()];
        for (col, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
            let (w, b) = (col >> 6, col & 63);
            let mut pivot = None;
            for (r, (row, _)) in self.rows.iter().enumerate() {
                if !used[r] && (row[w] >> b) & 1 == 1 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            used[p] = true;
            *pivot_slot = Some(p);
            let (prow, prhs) = self.rows[p].clone();
            for (r, (row, rhs)) in self.rows.iter_mut().enumerate() {
                if r != p && (row[w] >> b) & 1 == 1 {
                    for (a, &c) in row.iter_mut().zip(prow.iter()) {
                        *a ^= c;
                    }
                    *rhs ^= prhs;
                }
            }
        }
        // After full elimination every unused row is zero; inconsistency
        // shows as a surviving rhs bit.
        for (r, (_, rhs)) in self.rows.iter().enumerate() {
            if !used[r] && *rhs {
                return None;
            }
        }
        let mut particular = vec![false; n];
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(p) = *pivot {
                particular[col] = self.rows[p].1;
            }
        }
        let mut kernel = Vec::new();
        for free in 0..n {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![false; n];
            v[free] = true;
            let (w, b) = (free >> 6, free & 63);
            for col in 0..n {
                if let Some(p) = pivot_of_col[col] {
                    if (self.rows[p].0[w] >> b) & 1 == 1 {
                        v[col] = true;
                    }
                }
            }
            kernel.push(v);
        }
        Some((particular, kernel))
    }
}
