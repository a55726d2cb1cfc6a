//! Convex lattice regions realized as finite F₂ chain complexes, with
//! homology, quotient-then-include induced maps, and connecting
//! homomorphisms.
//!
//! A region is a subset S of the (i, j) lattice. Realizing it against a
//! complex C collects, for every generator x, the copies U^{-i}x whose
//! position (i, A(x) + i) lies in S, together with all arrows connecting
//! two collected copies. Regions in use here are order-convex, so the
//! induced boundary squares to zero.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::error::CfkError;
use crate::f2::{self, Col};

/// Symbolic description of a lattice region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionSpec {
    /// The full column i = 0.
    ColumnI0,
    /// The column i with jmin <= j <= jmax.
    ColumnSegment { i: i64, jmin: i64, jmax: i64 },
    /// { min(i, j - tau) = 0 }.
    MinHook { tau: i64 },
    /// { max(i, j - tau) = 0 }.
    MaxHook { tau: i64 },
    /// { min(i, j - tau) = 0, i <= s }.
    TruncatedMinHook { tau: i64, s: i64 },
    /// The staircase-shaped region S(a_1, ..., a_n, s) based at tau.
    SRegion { tau: i64, prefix: Vec<i64>, s: i64 },
    /// A finite explicit point set (must be order-convex).
    Explicit(Vec<(i64, i64)>),
}

/// One axis-parallel piece of a region: a segment or ray of lattice
/// points. Rays are clipped to the realization window before use.
#[derive(Clone, Debug)]
enum Piece {
    /// Fixed i, j in [jlo, jhi]; jhi may be clipped from +infinity.
    Vertical { i: i64, jlo: i64, jhi: i64 },
    /// Fixed j, i in [ilo, ihi]; ilo may be clipped from -infinity.
    Horizontal { j: i64, ilo: i64, ihi: i64 },
}

impl RegionSpec {
    /// Decomposes the region into axis-parallel pieces inside the window
    /// [-w, w] x [-w, w]. Unbounded ray ends clip to the window.
    fn pieces(&self, w: i64) -> Result<Vec<Piece>, CfkError> {
        let clip = |v: i64| v.clamp(-w, w);
        Ok(match self {
            RegionSpec::ColumnI0 => vec![Piece::Vertical {
                i: 0,
                jlo: -w,
                jhi: w,
            }],
            RegionSpec::ColumnSegment { i, jmin, jmax } => {
                vec![Piece::Vertical {
                    i: *i,
                    jlo: clip(*jmin),
                    jhi: clip(*jmax),
                }]
            }
            RegionSpec::MinHook { tau } => vec![
                Piece::Vertical {
                    i: 0,
                    jlo: *tau,
                    jhi: w,
                },
                Piece::Horizontal {
                    j: *tau,
                    ilo: 0,
                    ihi: w,
                },
            ],
            RegionSpec::MaxHook { tau } => vec![
                Piece::Vertical {
                    i: 0,
                    jlo: -w,
                    jhi: *tau,
                },
                Piece::Horizontal {
                    j: *tau,
                    ilo: -w,
                    ihi: 0,
                },
            ],
            RegionSpec::TruncatedMinHook { tau, s } => {
                if *s < 0 {
                    return Err(CfkError::BadArgument(
                        "truncation bound must be >= 0".into(),
                    ));
                }
                vec![
                    Piece::Vertical {
                        i: 0,
                        jlo: *tau,
                        jhi: w,
                    },
                    Piece::Horizontal {
                        j: *tau,
                        ilo: 0,
                        ihi: *s,
                    },
                ]
            }
            RegionSpec::SRegion { tau, prefix, s } => {
                let mut segs = s_region_pieces(*tau, prefix, *s)?;
                for p in &mut segs {
                    if let Piece::Vertical { jhi, .. } = p {
                        if *jhi == i64::MAX {
                            *jhi = w;
                        }
                    }
                }
                segs
            }
            RegionSpec::Explicit(points) => {
                check_convex(points)?;
                points
                    .iter()
                    .map(|&(i, j)| Piece::Vertical { i, jlo: j, jhi: j })
                    .collect()
            }
        })
    }

    /// Lattice membership; used by the brute-force enumeration oracle.
    pub fn contains(&self, i: i64, j: i64) -> bool {
        match self {
            RegionSpec::ColumnI0 => i == 0,
            RegionSpec::ColumnSegment { i: c, jmin, jmax } => i == *c && *jmin <= j && j <= *jmax,
            RegionSpec::MinHook { tau } => i.min(j - tau) == 0,
            RegionSpec::MaxHook { tau } => i.max(j - tau) == 0,
            RegionSpec::TruncatedMinHook { tau, s } => i.min(j - tau) == 0 && i <= *s,
            RegionSpec::SRegion { tau, prefix, s } => match s_region_pieces(*tau, prefix, *s) {
                Ok(pieces) => pieces.iter().any(|p| match *p {
                    Piece::Vertical { i: c, jlo, jhi } => {
                        i == c && jlo <= j && (jhi == i64::MAX || j <= jhi)
                    }
                    Piece::Horizontal { j: r, ilo, ihi } => j == r && ilo <= i && i <= ihi,
                }),
                Err(_) => false,
            },
            RegionSpec::Explicit(points) => points.contains(&(i, j)),
        }
    }
}

/// Pieces of S(a_1, ..., a_n, s): the truncated hook S(a_1) plus one
/// alternating segment per further term, ending with the parameter s.
///
/// Consuming the terms a_1, ..., a_n, s in order, an even-positioned term
/// appends a vertical segment at i = a_odd descending from just below
/// tau - a_even, and an odd-positioned term past the first appends a
/// horizontal segment at j = tau - a_even extending right of i = a_odd.
fn s_region_pieces(tau: i64, prefix: &[i64], s: i64) -> Result<Vec<Piece>, CfkError> {
    let mut all: Vec<i64> = prefix.to_vec();
    all.push(s);
    if all[..all.len() - 1].iter().any(|&a| a < 1) || s < 0 {
        return Err(CfkError::BadArgument(format!(
            "S-region terms must be positive with s >= 0, got {all:?}"
        )));
    }
    let mut pieces = vec![
        Piece::Vertical {
            i: 0,
            jlo: tau,
            jhi: i64::MAX,
        },
        Piece::Horizontal {
            j: tau,
            ilo: 0,
            ihi: all[0],
        },
    ];
    let mut odd_sum = all[0];
    let mut even_sum = 0i64;
    for (idx, &term) in all.iter().enumerate().skip(1) {
        let k = idx + 1; // 1-based position of this term
        if k % 2 == 0 {
            pieces.push(Piece::Vertical {
                i: odd_sum,
                jlo: tau - even_sum - term,
                jhi: tau - even_sum - 1,
            });
            even_sum += term;
        } else {
            pieces.push(Piece::Horizontal {
                j: tau - even_sum,
                ilo: odd_sum + 1,
                ihi: odd_sum + term,
            });
            odd_sum += term;
        }
    }
    Ok(pieces)
}

fn check_convex(points: &[(i64, i64)]) -> Result<(), CfkError> {
    let set: std::collections::BTreeSet<(i64, i64)> = points.iter().copied().collect();
    for &p in &set {
        for &r in &set {
            if p.0 <= r.0 && p.1 <= r.1 {
                for i in p.0..=r.0 {
                    for j in p.1..=r.1 {
                        if !set.contains(&(i, j)) {
                            return Err(CfkError::NonConvex { hole: (i, j) });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The bounding window half-width used for realizations.
pub fn window(c: &Complex, tau: i64, s: i64) -> i64 {
    let (lo, hi) = c.alexander_range();
    2 * (hi - lo) + tau.abs() + s.abs() + 2
}

/// A finite F₂ chain complex of lattice copies of generators inside a
/// region, ordered ascending by (j, i, generator index).
pub struct RegionComplex<'a> {
    pub complex: &'a Complex,
    pub spec: RegionSpec,
    /// (generator index, (i, j)) per basis position.
    pub basis: Vec<(u32, (i64, i64))>,
    index: BTreeMap<(u32, (i64, i64)), u32>,
    /// Boundary columns: entry k lists the basis positions of ∂(basis[k]).
    pub boundary: Vec<Vec<u32>>,
}

/// Cycle representatives spanning the homology of a region complex.
pub struct HomologyBasis {
    pub rank: usize,
    /// Representatives as basis-index sets, ascending by top basis index.
    pub representatives: Vec<Vec<u32>>,
    pub(crate) inner: f2::Homology,
}

impl HomologyBasis {
    /// True when u and v are homologous cycles.
    pub fn class_equal(&self, u: &[u32], v: &[u32]) -> bool {
        self.inner.classes_equal(
            Col::from_unsorted(u.to_vec()),
            Col::from_unsorted(v.to_vec()),
        )
    }

    /// Coordinates of a cycle against the representative basis.
    pub fn coordinates(&self, cycle: &[u32]) -> Option<Vec<bool>> {
        self.inner
            .class_coordinates(Col::from_unsorted(cycle.to_vec()))
    }

    pub fn is_boundary(&self, cycle: &[u32]) -> bool {
        self.inner
            .reduction
            .in_image(Col::from_unsorted(cycle.to_vec()))
    }
}

/// Realizes a region against a valid reduced complex.
pub fn realize_region<'a>(
    c: &'a Complex,
    spec: &RegionSpec,
) -> Result<RegionComplex<'a>, CfkError> {
    realize_region_with_window(c, spec, None)
}

pub fn realize_region_with_window<'a>(
    c: &'a Complex,
    spec: &RegionSpec,
    window_override: Option<i64>,
) -> Result<RegionComplex<'a>, CfkError> {
    let w = window_override.unwrap_or_else(|| suggested_window(c, &[spec]));
    let pieces = spec.pieces(w)?;
    let mut set: std::collections::BTreeSet<(u32, (i64, i64))> = Default::default();
    for (gi, g) in c.generators().iter().enumerate() {
        let a = g.alexander;
        for p in &pieces {
            let hit = match *p {
                Piece::Vertical { i, jlo, jhi } => {
                    let j = a + i;
                    (jlo <= j && j <= jhi).then_some((i, j))
                }
                Piece::Horizontal { j, ilo, ihi } => {
                    let i = j - a;
                    (ilo <= i && i <= ihi).then_some((i, j))
                }
            };
            if let Some((i, j)) = hit {
                if i.abs() > w || j.abs() > w {
                    return Err(CfkError::InfiniteRegion(format!(
                        "copy of {} at ({i}, {j}) escapes window {w}",
                        g.id
                    )));
                }
                set.insert((gi as u32, (i, j)));
            }
        }
    }
    // Canonical basis order: ascending (j, i, generator index). With j
    // first, the τ sweep reads its answer straight off the reduction.
    let mut basis: Vec<(u32, (i64, i64))> = set.into_iter().collect();
    basis.sort_by_key(|&(g, (i, j))| (j, i, g));
    let index: BTreeMap<(u32, (i64, i64)), u32> = basis
        .iter()
        .enumerate()
        .map(|(k, &b)| (b, k as u32))
        .collect();
    let mut boundary = Vec::with_capacity(basis.len());
    for &(g, (i, _j)) in &basis {
        let mut col = Vec::new();
        for &(t, u) in c.arrows_from(g) {
            let ti = i - u as i64;
            let tj = c.gen(t).alexander + ti;
            if let Some(&k) = index.get(&(t, (ti, tj))) {
                col.push(k);
            }
        }
        col.sort_unstable();
        boundary.push(col);
    }
    let rc = RegionComplex {
        complex: c,
        spec: spec.clone(),
        basis,
        index,
        boundary,
    };
    rc.check_d_squared()?;
    Ok(rc)
}

impl<'a> RegionComplex<'a> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position_of(&self, gen: u32, point: (i64, i64)) -> Option<u32> {
        self.index.get(&(gen, point)).copied()
    }

    /// Positions of all copies at a given lattice point.
    pub fn copies_at(&self, point: (i64, i64)) -> Vec<u32> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, &(_, p))| p == point)
            .map(|(k, _)| k as u32)
            .collect()
    }

    fn check_d_squared(&self) -> Result<(), CfkError> {
        let mut counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (k, col) in self.boundary.iter().enumerate() {
            for &m in col {
                for &t in &self.boundary[m as usize] {
                    *counts.entry((k as u32, t)).or_insert(0) += 1;
                }
            }
        }
        for ((f, t), n) in counts {
            if n % 2 == 1 {
                let (gf, pf) = self.basis[f as usize];
                let (gt, pt) = self.basis[t as usize];
                return Err(CfkError::ChainMapViolation(format!(
                    "region boundary does not square to zero: {} at {:?} reaches {} at {:?} oddly",
                    self.complex.gen(gf).id,
                    pf,
                    self.complex.gen(gt).id,
                    pt
                )));
            }
        }
        Ok(())
    }

    /// Homology with deterministic representatives.
    pub fn homology(&self) -> HomologyBasis {
        let h = f2::homology(self.dim(), |k| self.boundary[k as usize].clone());
        let representatives = h.reps.iter().map(|(_, c)| c.indices()).collect();
        HomologyBasis {
            rank: h.rank,
            representatives,
            inner: h,
        }
    }

    fn contains_all(&self, sub: &RegionComplex) -> bool {
        sub.basis
            .iter()
            .all(|&(g, p)| self.index.contains_key(&(g, p)))
    }
}

/// Induced map on homology of a quotient-then-include chain map. Rows
/// index target homology classes, columns source classes.
pub struct InducedMap {
    pub matrix: Vec<Vec<bool>>,
    pub source_rank: usize,
    pub target_rank: usize,
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&b| !b)
    }
}

/// Builds the chain map that quotients `source` by `killed` and includes
/// the survivors into `target`, then returns the induced map on homology.
///
/// `killed` must be a subcomplex of `source`; the surviving copies must
/// all lie in `target` and span a subcomplex of it.
pub fn quotient_include_map(
    c: &Complex,
    source: &RegionSpec,
    killed: &RegionSpec,
    target: &RegionSpec,
) -> Result<InducedMap, CfkError> {
    let w = suggested_window(c, &[source, killed, target]);
    let src = realize_region_with_window(c, source, Some(w))?;
    let kil = realize_region_with_window(c, killed, Some(w))?;
    let tgt = realize_region_with_window(c, target, Some(w))?;
    quotient_include_on(&src, &kil, &tgt).map(|(m, _, _)| m)
}

pub(crate) fn suggested_window(c: &Complex, specs: &[&RegionSpec]) -> i64 {
    let mut tau = 0i64;
    let mut span = 0i64;
    for s in specs {
        match s {
            RegionSpec::MinHook { tau: t }
            | RegionSpec::MaxHook { tau: t }
            | RegionSpec::TruncatedMinHook { tau: t, .. }
            | RegionSpec::SRegion { tau: t, .. } => tau = tau.max(t.abs()),
            _ => {}
        }
        if let RegionSpec::SRegion {
            prefix, s: extra, ..
        } = s
        {
            span = span.max(prefix.iter().sum::<i64>() + *extra);
        }
        if let RegionSpec::TruncatedMinHook { s: extra, .. } = s {
            span = span.max(*extra);
        }
    }
    window(c, tau, span)
}

pub(crate) fn quotient_include_on(
    src: &RegionComplex,
    kil: &RegionComplex,
    tgt: &RegionComplex,
) -> Result<(InducedMap, HomologyBasis, HomologyBasis), CfkError> {
    if !src.contains_all(kil) {
        return Err(CfkError::ChainMapViolation(
            "killed region not inside source".into(),
        ));
    }
    let killed_in_src: std::collections::BTreeSet<u32> = kil
        .basis
        .iter()
        .map(|&(g, p)| src.position_of(g, p).unwrap())
        .collect();
    for &k in &killed_in_src {
        for &t in &src.boundary[k as usize] {
            if !killed_in_src.contains(&t) {
                return Err(CfkError::ChainMapViolation(
                    "killed region is not a subcomplex of source".into(),
                ));
            }
        }
    }
    let mut shared_src_to_tgt: BTreeMap<u32, u32> = BTreeMap::new();
    for (k, &(g, p)) in src.basis.iter().enumerate() {
        let k = k as u32;
        if killed_in_src.contains(&k) {
            continue;
        }
        match tgt.position_of(g, p) {
            Some(t) => {
                shared_src_to_tgt.insert(k, t);
            }
            None => {
                return Err(CfkError::ChainMapViolation(format!(
                    "surviving copy of {} at {:?} missing from target",
                    src.complex.gen(g).id,
                    p
                )))
            }
        }
    }
    let shared_tgt: std::collections::BTreeSet<u32> = shared_src_to_tgt.values().copied().collect();
    for &t in &shared_tgt {
        for &m in &tgt.boundary[t as usize] {
            if !shared_tgt.contains(&m) {
                return Err(CfkError::ChainMapViolation(
                    "surviving copies are not a subcomplex of target".into(),
                ));
            }
        }
    }
    // f ∂_src = ∂_tgt f on every source basis element.
    for (k, col) in src.boundary.iter().enumerate() {
        let k = k as u32;
        let lhs: Vec<u32> = col
            .iter()
            .filter_map(|m| shared_src_to_tgt.get(m).copied())
            .collect();
        let rhs: Vec<u32> = match shared_src_to_tgt.get(&k) {
            Some(&t) => tgt.boundary[t as usize].clone(),
            None => Vec::new(),
        };
        let mut l = Col::from_unsorted(lhs);
        l.xor(&Col::from_unsorted(rhs), tgt.dim());
        if !l.is_zero() {
            return Err(CfkError::ChainMapViolation(
                "copy-identity correspondence does not commute with boundaries".into(),
            ));
        }
    }
    let hs = src.homology();
    let ht = tgt.homology();
    let mut cols = Vec::with_capacity(hs.rank);
    for rep in &hs.representatives {
        let image: Vec<u32> = rep
            .iter()
            .filter_map(|m| shared_src_to_tgt.get(m).copied())
            .collect();
        let coords = ht.coordinates(&image).ok_or(CfkError::NotACycle)?;
        cols.push(coords);
    }
    let m = InducedMap {
        matrix: (0..ht.rank)
            .map(|r| (0..hs.rank).map(|c| cols[c][r]).collect())
            .collect(),
        source_rank: hs.rank,
        target_rank: ht.rank,
    };
    Ok((m, hs, ht))
}

/// Connecting homomorphism of the pair sub ⊂ total.
///
/// `class` is a cycle of the quotient complex, given as (generator id,
/// point) copies of total ∖ sub; the lift is the same chain read in the
/// total realization, and the result is the class of its boundary in the
/// homology of sub, as coordinates against the sub representatives.
pub fn connecting_map(
    c: &Complex,
    sub: &RegionSpec,
    total: &RegionSpec,
    class: &[(String, (i64, i64))],
) -> Result<Vec<bool>, CfkError> {
    let w = suggested_window(c, &[sub, total]);
    let sub_r = realize_region_with_window(c, sub, Some(w))?;
    let tot_r = realize_region_with_window(c, total, Some(w))?;
    if !tot_r.contains_all(&sub_r) {
        return Err(CfkError::ChainMapViolation("sub not inside total".into()));
    }
    let sub_in_tot: std::collections::BTreeSet<u32> = sub_r
        .basis
        .iter()
        .map(|&(g, p)| tot_r.position_of(g, p).unwrap())
        .collect();
    for &k in &sub_in_tot {
        for &t in &tot_r.boundary[k as usize] {
            if !sub_in_tot.contains(&t) {
                return Err(CfkError::ChainMapViolation(
                    "sub is not a subcomplex of total".into(),
                ));
            }
        }
    }
    let mut lift: Vec<u32> = Vec::new();
    for (id, p) in class {
        let g = c
            .index_of(id)
            .ok_or_else(|| CfkError::BadArgument(format!("unknown generator {id}")))?;
        let k = tot_r
            .position_of(g, *p)
            .ok_or_else(|| CfkError::BadArgument(format!("{id} has no copy at {p:?} in total")))?;
        if sub_in_tot.contains(&k) {
            return Err(CfkError::BadArgument(format!(
                "{id} at {p:?} lies in sub, not in the quotient"
            )));
        }
        lift.push(k);
    }
    let mut boundary = Vec::new();
    for &k in &lift {
        boundary.extend(tot_r.boundary[k as usize].iter().copied());
    }
    let bcol = Col::from_unsorted(boundary);
    for &t in &bcol.indices() {
        if !sub_in_tot.contains(&t) {
            return Err(CfkError::NotACycle);
        }
    }
    let sub_h = sub_r.homology();
    let in_sub: Vec<u32> = bcol
        .indices()
        .iter()
        .map(|&t| {
            let (g, p) = tot_r.basis[t as usize];
            sub_r.position_of(g, p).unwrap()
        })
        .collect();
    sub_h.coordinates(&in_sub).ok_or(CfkError::NotACycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn t34() -> Complex {
        catalog::staircase(&[1, 2, 2, 1]).unwrap()
    }

    fn t23() -> Complex {
        catalog::staircase(&[1, 1]).unwrap()
    }

    #[test]
    fn column_of_staircase() {
        let c = t34();
        let r = realize_region(&c, &RegionSpec::ColumnI0).unwrap();
        assert_eq!(r.dim(), 5);
        let entries: usize = r.boundary.iter().map(|b| b.len()).sum();
        assert_eq!(entries, 2);
        let h = r.homology();
        assert_eq!(h.rank, 1);
        let x0 = c.index_of("x0").unwrap();
        let pos = r.position_of(x0, (0, 3)).unwrap();
        assert_eq!(h.representatives[0], vec![pos]);
    }

    #[test]
    fn unknot_min_hook() {
        let c = catalog::unknot();
        let r = realize_region(&c, &RegionSpec::MinHook { tau: 0 }).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.boundary.iter().all(|b| b.is_empty()));
    }

    #[test]
    fn min_hook_of_staircase() {
        let c = t34();
        let r = realize_region(&c, &RegionSpec::MinHook { tau: 3 }).unwrap();
        assert_eq!(r.dim(), 5);
        let mut pts: Vec<(i64, i64)> = r.basis.iter().map(|&(_, p)| p).collect();
        pts.sort_unstable();
        assert_eq!(pts, vec![(0, 3), (1, 3), (3, 3), (5, 3), (6, 3)]);
        assert_eq!(r.homology().rank, 1);
    }

    #[test]
    fn figure2_column_survivor_is_e() {
        let c = catalog::figure2_fixture();
        let r = realize_region(&c, &RegionSpec::ColumnI0).unwrap();
        let h = r.homology();
        assert_eq!(h.rank, 1);
        let e = c.index_of("e").unwrap();
        let pos = r.position_of(e, (0, 0)).unwrap();
        assert_eq!(h.representatives[0], vec![pos]);
        assert!(!h.class_equal(&[pos], &[]));
    }

    #[test]
    fn f_map_of_staircase_is_zero() {
        let c = t34();
        let w = suggested_window(&c, &[&RegionSpec::ColumnI0]);
        let killed = RegionSpec::ColumnSegment {
            i: 0,
            jmin: -w,
            jmax: 2,
        };
        let m = quotient_include_map(
            &c,
            &RegionSpec::ColumnI0,
            &killed,
            &RegionSpec::MinHook { tau: 3 },
        )
        .unwrap();
        assert_eq!(m.source_rank, 1);
        assert!(m.is_zero());
    }

    #[test]
    fn f_map_of_unknot_is_iso() {
        let c = catalog::unknot();
        let killed = RegionSpec::ColumnSegment {
            i: 0,
            jmin: -4,
            jmax: -1,
        };
        let m = quotient_include_map(
            &c,
            &RegionSpec::ColumnI0,
            &killed,
            &RegionSpec::MinHook { tau: 0 },
        )
        .unwrap();
        assert_eq!(m.source_rank, 1);
        assert_eq!(m.target_rank, 1);
        assert!(!m.is_zero());
    }

    #[test]
    fn g_map_of_figure2_hits_generator() {
        let c = catalog::figure2_fixture();
        let w = suggested_window(&c, &[&RegionSpec::ColumnI0]);
        let killed: Vec<(i64, i64)> = (-w..0).map(|i| (i, 0)).collect();
        let m = quotient_include_map(
            &c,
            &RegionSpec::MaxHook { tau: 0 },
            &RegionSpec::Explicit(killed),
            &RegionSpec::ColumnI0,
        )
        .unwrap();
        assert!(!m.is_zero());
    }

    #[test]
    fn connecting_map_trefoil_corner() {
        // total = S(1) at tau = 1, sub = total minus the corner (1, 1);
        // δ of the corner copy class is the x0 copy class.
        let c = t23();
        let w = suggested_window(&c, &[&RegionSpec::ColumnI0]);
        let sub_points: Vec<(i64, i64)> = (1..=w).map(|j| (0, j)).collect();
        let delta = connecting_map(
            &c,
            &RegionSpec::Explicit(sub_points),
            &RegionSpec::TruncatedMinHook { tau: 1, s: 1 },
            &[("x1".into(), (1, 1))],
        )
        .unwrap();
        assert_eq!(delta, vec![true]);
    }

    #[test]
    fn connecting_map_zigzag_on_t34() {
        // sub = S(1, 2) ⊂ total = S(1, 2, 2): δ of the x3 corner class at
        // (3, 1) equals the x0 class via the staircase zig-zag.
        let c = t34();
        let delta = connecting_map(
            &c,
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1],
                s: 2,
            },
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1, 2],
                s: 2,
            },
            &[("x3".into(), (3, 1))],
        )
        .unwrap();
        assert_eq!(delta.len(), 1);
        assert!(delta[0]);
    }

    #[test]
    fn connecting_map_zero_class() {
        let c = t34();
        let delta = connecting_map(
            &c,
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1],
                s: 2,
            },
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1, 2],
                s: 2,
            },
            &[],
        )
        .unwrap();
        assert_eq!(delta, vec![false]);
    }

    #[test]
    fn connecting_map_rejects_downward_extension() {
        // An even-position extension grows the region downward, so the
        // new bottom point includes as a subcomplex instead of splitting
        // off as a quotient; the pair in this orientation must be
        // rejected (the x3 copy above maps onto the new point).
        let c = t34();
        let err = connecting_map(
            &c,
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1, 2, 2],
                s: 0,
            },
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1, 2, 2],
                s: 1,
            },
            &[("x4".into(), (3, 0))],
        );
        assert!(matches!(err, Err(CfkError::ChainMapViolation(_))));
    }

    #[test]
    fn class_equal_examples() {
        let c = t34();
        let hook = realize_region(&c, &RegionSpec::MinHook { tau: 3 }).unwrap();
        let h = hook.homology();
        let x0 = c.index_of("x0").unwrap();
        let pos = hook.position_of(x0, (0, 3)).unwrap();
        // x0-copy is a boundary inside the hook (of the x1 copy at (1, 3)).
        assert!(h.class_equal(&[pos], &[]));
        assert!(h.class_equal(&[pos], &[pos]));
    }

    #[test]
    fn explicit_region_convexity() {
        let bad = RegionSpec::Explicit(vec![(0, 0), (2, 0)]);
        let c = t23();
        assert!(matches!(
            realize_region(&c, &bad),
            Err(CfkError::NonConvex { hole: (1, 0) })
        ));
    }

    #[test]
    fn column_segment_realization() {
        let c = t34();
        let r = realize_region(
            &c,
            &RegionSpec::ColumnSegment {
                i: 0,
                jmin: 0,
                jmax: 3,
            },
        )
        .unwrap();
        // Copies at (0, A) for A in {0, 2, 3}.
        assert_eq!(r.dim(), 3);
    }

    #[test]
    fn s_region_matches_hand_picture() {
        // S(1, 2) on the T_{3,4} staircase: the hook piece plus the
        // vertical segment at i = 1 descending 2 from just below tau = 3.
        let c = t34();
        let r = realize_region(
            &c,
            &RegionSpec::SRegion {
                tau: 3,
                prefix: vec![1],
                s: 2,
            },
        )
        .unwrap();
        let mut pts: Vec<(i64, i64)> = r.basis.iter().map(|&(_, p)| p).collect();
        pts.sort_unstable();
        assert_eq!(pts, vec![(0, 3), (1, 1), (1, 3)]);
    }

    #[test]
    fn every_nearby_column_has_rank_one() {
        for c in [t23(), t34(), catalog::figure2_fixture()] {
            let w = window(&c, 0, 0);
            for i in -1..=1i64 {
                let r = realize_region(
                    &c,
                    &RegionSpec::ColumnSegment {
                        i,
                        jmin: -w,
                        jmax: w,
                    },
                )
                .unwrap();
                assert_eq!(r.homology().rank, 1, "column {i} of {}", c.name());
            }
        }
    }
}
