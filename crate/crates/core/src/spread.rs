//! Field reduction between `PG(n-1, q^t)` ("big") and `PG(nt-1, q)`
//! ("small"): the Desarguesian spread, the `B(U)` map, scattered
//! subspaces and plane sections of a regulus.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::gf::{field_of_order, Elem, ExtensionSpec};
use crate::pg::{gaussian_binomial, PointSet, ProjPoint, ProjSpace, Subspace, DEFAULT_CAP};

/// The data fixing the Desarguesian `(t-1)`-spread of `PG(nt-1, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadContext {
    n: usize,
    ext: ExtensionSpec,
    big: ProjSpace,
    small: ProjSpace,
}

/// A `D_{r-1}`-subspace: the field reduction of an `(r-1)`-space of the big
/// space, of dimension `rt - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSubspace {
    pub subspace: Subspace,
    pub level: usize,
}

/// Outcome of [`SpreadContext::is_scattered`]. The witness is a spread
/// element meeting the subspace in at least two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatterVerdict {
    pub scattered: bool,
    pub witness: Option<Subspace>,
}

/// Parameters of [`SpreadContext::find_scattered`].
#[derive(Clone, Debug)]
pub struct ScatterSearch {
    pub seed: u64,
    /// Maximum number of candidate extensions tried by the random phase.
    pub budget: u64,
    /// Enumerate exhaustively when the number of candidate subspaces is at
    /// most this.
    pub exhaustive_limit: u128,
}

impl Default for ScatterSearch {
    fn default() -> Self {
        ScatterSearch { seed: 0, budget: 100_000, exhaustive_limit: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScatterOutcome {
    Found { subspace: Subspace, restart: u64, exhaustive: bool },
    /// Nothing found. `exhaustive` means every candidate was checked, so
    /// none exists; `rank_bound` means the rank exceeds `nt/2`.
    NotFound { exhaustive: bool, rank_bound: bool, attempts: u64 },
}

/// How a plane meets the point set of a regulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneSection {
    Line,
    TwoLines,
    Conic,
}

impl SpreadContext {
    pub fn new(n: usize, ext: ExtensionSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionOutOfRange("n must be at least 1".into()));
        }
        let big = ProjSpace::new(n - 1, ext.field().clone())?;
        let small = ProjSpace::new(n * ext.t() - 1, ext.base().clone())?;
        Ok(SpreadContext { n, ext, big, small })
    }

    /// Context with default moduli for `GF(q)` and its degree-`t` extension.
    pub fn with_orders(n: usize, t: u32, q: u64) -> Result<Self> {
        let base = field_of_order(q)?;
        Self::new(n, ExtensionSpec::new(base, t, None)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.ext.t()
    }

    pub fn q(&self) -> u32 {
        self.ext.q()
    }

    pub fn ext(&self) -> &ExtensionSpec {
        &self.ext
    }

    pub fn big(&self) -> &ProjSpace {
        &self.big
    }

    pub fn small(&self) -> &ProjSpace {
        &self.small
    }

    /// Number of spread elements, `(q^{nt} - 1)/(q^t - 1)`.
    pub fn spread_size(&self) -> u128 {
        self.big.point_count()
    }

    fn expand(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.ext.field();
        v.iter().flat_map(|&x| f.digits(x)).collect()
    }

    fn collapse(&self, w: &[Elem]) -> Vec<Elem> {
        let f = self.ext.field();
        w.chunks(self.t()).map(|c| f.from_digits(c)).collect()
    }

    /// `GF(q^t)`-scalar multiple of a small vector.
    pub fn scale_small(&self, w: &[Elem], lambda: Elem) -> Vec<Elem> {
        let f = self.ext.field();
        let v: Vec<Elem> = self.collapse(w).into_iter().map(|x| f.mul(x, lambda)).collect();
        self.expand(&v)
    }

    /// The big point whose spread element contains `p`.
    pub fn collapse_point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let p = self.small.normalize(p.coords())?;
        Ok(self.big.normalize_unchecked(&self.collapse(p.coords())).expect("nonzero"))
    }


    fn reduce_rows(&self, rows: &[Elem]) -> Vec<Elem> {
        let f = self.ext.field();
        let alpha = self.q();
        let mut out = Vec::new();
        for row in rows.chunks(self.n) {
            let mut v = row.to_vec();
            for _ in 0..self.t() {
                out.extend(self.expand(&v));
                v.iter_mut().for_each(|x| *x = f.mul(*x, alpha));
            }
        }
        out
    }

    /// The spread element of `q`: all `GF(q)`-coordinates of the
    /// `GF(q^t)`-multiples of a representative.
    pub fn expand_point(&self, q: &ProjPoint) -> Result<Subspace> {
        let q = self.big.normalize(q.coords())?;
        Ok(self.small.subspace_from_rows(self.reduce_rows(q.coords())))
    }

    /// The spread element through the small point `p`.
    pub fn spread_element(&self, p: &ProjPoint) -> Result<Subspace> {
        self.expand_point(&self.collapse_point(p)?)
    }

    pub fn field_reduce(&self, s: &Subspace) -> Result<DSubspace> {
        if s.ncols() != self.n {
            return Err(Error::AmbientMismatch(format!(
                "subspace with {} coordinates in {:?}",
                s.ncols(),
                self.big
            )));
        }
        if s.rank() == 0 {
            return Err(Error::EmptyInput("field reduction of the empty subspace".into()));
        }
        let subspace = self.small.subspace_from_rows(self.reduce_rows(s.rows()));
        Ok(DSubspace { subspace, level: s.rank() })
    }

    /// `B(U)`: the big points whose spread elements meet `U`.
    pub fn b_map(&self, u: &PointSet) -> Result<PointSet> {
        if u.space() != &self.small {
            return Err(Error::AmbientMismatch(format!("{:?} is not {:?}", u.space(), self.small)));
        }
        let mut out = PointSet::new(self.big.clone());
        for p in u.iter() {
            out.insert(&self.big.normalize_unchecked(&self.collapse(p.coords())).expect("nonzero"));
        }
        Ok(out)
    }

    /// The union of the spread elements of the points of `b`.
    pub fn expand_set(&self, b: &PointSet) -> Result<PointSet> {
        if b.space() != &self.big {
            return Err(Error::AmbientMismatch(format!("{:?} is not {:?}", b.space(), self.big)));
        }
        let mut out = PointSet::new(self.small.clone());
        for p in b.iter() {
            out.extend(&self.small.points_of(&self.expand_point(&p)?))?;
        }
        Ok(out)
    }

    /// Recognizes `s` as a `D`-subspace: it must equal the field reduction
    /// of the span of its collapsed basis rows.
    pub fn as_d_subspace(&self, s: &Subspace) -> Option<DSubspace> {
        if s.ncols() != self.small.ncols() || s.rank() == 0 || !s.rank().is_multiple_of(self.t()) {
            return None;
        }
        let rows: Vec<Elem> = (0..s.rank()).flat_map(|i| self.collapse(s.row(i))).collect();
        let u = self.big.subspace_from_rows(rows);
        let red = self.field_reduce(&u).ok()?;
        (red.subspace == *s).then_some(red)
    }

    /// The big subspace whose field reduction is the `D`-subspace `s`.
    pub fn collapse_subspace(&self, s: &Subspace) -> Option<Subspace> {
        let d = self.as_d_subspace(s)?;
        let rows: Vec<Elem> = (0..s.rank()).flat_map(|i| self.collapse(s.row(i))).collect();
        let u = self.big.subspace_from_rows(rows);
        debug_assert_eq!(u.rank(), d.level);
        Some(u)
    }

    /// The `D_{level-1}`-subspaces contained in `s`, i.e. the big subspaces
    /// of rank `level` whose field reduction lies in `s`.
    pub fn d_subspaces_in(&self, s: &Subspace, level: usize) -> Result<Vec<Subspace>> {
        let mut out = Vec::new();
        for u in self.big.subspaces(level as isize - 1, None, DEFAULT_CAP)? {
            if self.small.contains(s, &self.field_reduce(&u)?.subspace) {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// Is every spread element meeting `s` met in exactly one point?
    pub fn is_scattered(&self, s: &Subspace) -> Result<ScatterVerdict> {
        if s.ncols() != self.small.ncols() {
            return Err(Error::AmbientMismatch(format!("subspace not in {:?}", self.small)));
        }
        let count = gaussian_binomial(s.rank(), 1, self.q() as u64);
        if count > DEFAULT_CAP {
            return Err(Error::InstanceTooLarge { count, cap: DEFAULT_CAP });
        }
        Ok(match self.first_repeat(s) {
            None => ScatterVerdict { scattered: true, witness: None },
            Some(big) => ScatterVerdict {
                scattered: false,
                witness: Some(self.expand_point(&self.big.decode(big))?),
            },
        })
    }

    /// First big point (in enumeration order) hit twice by points of `s`.
    fn first_repeat(&self, s: &Subspace) -> Option<u64> {
        let mut seen = BTreeSet::new();
        let mut dup = None;
        self.small.for_each_point(s, |v| {
            if dup.is_none() {
                let big = self.big.normalize_unchecked(&self.collapse(v)).expect("nonzero");
                let k = self.big.key(big.coords());
                if !seen.insert(k) {
                    dup = Some(k);
                }
            }
        });
        dup
    }

    fn scattered_quick(&self, s: &Subspace) -> bool {
        self.first_repeat(s).is_none()
    }

    /// Looks for a scattered subspace of projective dimension `d`: seeded
    /// random greedy extension with restarts, then an exhaustive scan when
    /// the candidate count is at most `search.exhaustive_limit`.
    pub fn find_scattered(&self, d: usize, search: &ScatterSearch) -> Result<ScatterOutcome> {
        let rank = d + 1;
        let nt = self.small.ncols();
        if rank > nt {
            return Err(Error::DimensionOutOfRange(format!("dimension {d} in {:?}", self.small)));
        }
        let rank_bound = 2 * rank > nt;
        let mut attempts = 0;
        if !rank_bound {
            let mut restart = 0;
            while attempts < search.budget {
                let mut rng = SplitMix64::seed_from_u64(restart_seed(search.seed, restart));
                if let Some(s) = self.greedy_scattered(rank, &mut rng, &mut attempts, search.budget) {
                    return Ok(ScatterOutcome::Found { subspace: s, restart, exhaustive: false });
                }
                restart += 1;
            }
        }
        let count = gaussian_binomial(nt, rank, self.q() as u64);
        if count > search.exhaustive_limit {
            return Ok(ScatterOutcome::NotFound { exhaustive: false, rank_bound, attempts });
        }
        for s in self.small.subspaces(d as isize, None, count)? {
            if self.scattered_quick(&s) {
                return Ok(ScatterOutcome::Found { subspace: s, restart: 0, exhaustive: true });
            }
        }
        Ok(ScatterOutcome::NotFound { exhaustive: true, rank_bound, attempts })
    }

    fn greedy_scattered(
        &self,
        rank: usize,
        rng: &mut SplitMix64,
        attempts: &mut u64,
        budget: u64,
    ) -> Option<Subspace> {
        let nt = self.small.ncols();
        let q = self.q();
        let mut s = Subspace::empty(nt);
        // give up on a restart after this many consecutive failures
        let patience = 64 * nt as u64;
        while s.rank() < rank {
            let mut failures = 0;
            loop {
                if *attempts >= budget || failures >= patience {
                    return None;
                }
                *attempts += 1;
                let v: Vec<Elem> = (0..nt).map(|_| rng.random_range(0..q)).collect();
                let mut rows = s.rows().to_vec();
                rows.extend(v);
                let next = self.small.subspace_from_rows(rows);
                if next.rank() == s.rank() + 1 && self.scattered_quick(&next) {
                    s = next;
                    break;
                }
                failures += 1;
            }
        }
        Some(s)
    }

    /// The `q + 1` spread elements through the points of the scattered
    /// line `ell`, in the order of the line's points.
    pub fn regulus(&self, ell: &Subspace) -> Result<Vec<Subspace>> {
        if ell.rank() != 2 {
            return Err(Error::DimensionMismatch(format!("regulus needs a line, got rank {}", ell.rank())));
        }
        if !self.is_scattered(ell)?.scattered {
            return Err(Error::NotScattered);
        }
        self.small.points_of(ell).iter().map(|p| self.spread_element(&p)).collect()
    }

    /// Classifies the intersection of the plane `pi` with the point set of
    /// the regulus through `ell`. Line-containment is tested first.
    pub fn classify_regulus_plane_meet(&self, ell: &Subspace, pi: &Subspace) -> Result<PlaneSection> {
        if pi.rank() != 3 {
            return Err(Error::DimensionMismatch(format!("expected a plane, got rank {}", pi.rank())));
        }
        let reg = self.regulus(ell)?;
        let sp = &self.small;
        for (i, r) in reg.iter().enumerate() {
            if sp.meet(r, pi)?.rank() == 0 {
                return Err(Error::PlaneMissesRegulus(i));
            }
        }
        let mut x = PointSet::new(sp.clone());
        for r in &reg {
            x.extend(&sp.points_of(&sp.meet(r, pi)?))?;
        }
        let q = self.q() as usize;
        let pts = x.to_vec();
        let mut full_lines = BTreeMap::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                let l = sp.span(&[a, b], &[])?;
                if !full_lines.contains_key(&l) && x.contains_subspace(&l) {
                    full_lines.insert(l, ());
                }
            }
        }
        let lines: Vec<Subspace> = full_lines.into_keys().collect();
        if lines.len() == 1 && x.len() == q + 1 {
            return Ok(PlaneSection::Line);
        }
        if lines.len() == 2 && x.len() == 2 * q + 1 {
            return Ok(PlaneSection::TwoLines);
        }
        if lines.is_empty() && x.len() == q + 1 {
            // no full line inside X, and q + 1 >= 3 points: check no three collinear
            let collinear = pts.iter().enumerate().any(|(i, a)| {
                pts[i + 1..].iter().enumerate().any(|(j, b)| {
                    let l = sp.span(&[a, b], &[]).expect("same ambient");
                    pts[i + j + 2..].iter().any(|c| sp.contains_point(&l, c))
                })
            });
            if !collinear {
                return Ok(PlaneSection::Conic);
            }
        }
        Err(Error::UnrecognizedIntersection(format!(
            "{} points, {} full lines",
            x.len(),
            lines.len()
        )))
    }
}

/// Seed of restart `index` derived from the user seed.
pub(crate) fn restart_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_pg52() {
        let ctx = SpreadContext::with_orders(3, 2, 2).unwrap();
        let all = ctx.small().points_of(&ctx.small().full());
        assert_eq!(all.len(), 63);
        let mut fibers: BTreeMap<ProjPoint, usize> = BTreeMap::new();
        for p in all.iter() {
            *fibers.entry(ctx.collapse_point(&p).unwrap()).or_default() += 1;
        }
        assert_eq!(fibers.len(), 21);
        assert!(fibers.values().all(|&c| c == 3));
        let big = ctx.big().points_of(&ctx.big().full()).to_vec();
        let elems: Vec<Subspace> = big.iter().map(|b| ctx.expand_point(b).unwrap()).collect();
        let mut union = PointSet::new(ctx.small().clone());
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(e.rank(), 2);
            for f in &elems[i + 1..] {
                assert_eq!(ctx.small().meet(e, f).unwrap().rank(), 0);
            }
            union.extend(&ctx.small().points_of(e)).unwrap();
        }
        assert_eq!(union.len(), 63);
    }

    #[test]
    fn partition_counts_small_instances() {
        for (n, t, q) in [(2, 2, 3), (2, 3, 2), (3, 2, 3), (2, 2, 4), (2, 4, 2), (2, 2, 9)] {
            let ctx = SpreadContext::with_orders(n, t, q).unwrap();
            let mut total = 0u128;
            let mut union = PointSet::new(ctx.small().clone());
            for b in ctx.big().points_of(&ctx.big().full()).iter() {
                let e = ctx.expand_point(&b).unwrap();
                assert_eq!(e.rank(), t as usize);
                let pts = ctx.small().points_of(&e);
                total += pts.len() as u128;
                union.extend(&pts).unwrap();
            }
            assert_eq!(total, ctx.small().point_count());
            assert_eq!(union.len() as u128, total, "pairwise disjoint");
        }
    }

    #[test]
    fn collapse_of_expanded_representative() {
        let ctx = SpreadContext::with_orders(3, 2, 2).unwrap();
        for b in ctx.big().points_of(&ctx.big().full()).iter() {
            let w = ctx.ext().expand_vector(b.coords()).unwrap();
            let p = ctx.small().normalize(&w).unwrap();
            assert_eq!(ctx.collapse_point(&p).unwrap(), b);
            for q in ctx.small().points_of(&ctx.expand_point(&b).unwrap()).iter() {
                assert_eq!(ctx.collapse_point(&q).unwrap(), b);
            }
        }
    }

    #[test]
    fn field_reduce_examples() {
        let ctx = SpreadContext::with_orders(3, 2, 2).unwrap();
        let big = ctx.big();
        let p = big.normalize(&[0, 1, 3]).unwrap();
        let ps = big.point_subspace(&p);
        assert_eq!(ctx.field_reduce(&ps).unwrap().subspace, ctx.expand_point(&p).unwrap());
        let line = big.subspace(&[1, 0, 2, 0, 1, 1]).unwrap();
        let red = ctx.field_reduce(&line).unwrap();
        assert_eq!(red.level, 2);
        assert_eq!(red.subspace.rank(), 4);
        let pts = ctx.small().points_of(&red.subspace);
        assert_eq!(pts.len(), 15);
        let lp = big.points_of(&line);
        assert_eq!(ctx.expand_set(&lp).unwrap(), pts);
        assert_eq!(ctx.b_map(&pts).unwrap(), lp);
        assert_eq!(ctx.field_reduce(&big.full()).unwrap().subspace, ctx.small().full());
        assert!(matches!(ctx.field_reduce(&Subspace::empty(3)), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn recognizes_d_subspaces() {
        let ctx = SpreadContext::with_orders(3, 2, 3).unwrap();
        let line = ctx.big().subspace(&[1, 0, 4, 0, 1, 7]).unwrap();
        let red = ctx.field_reduce(&line).unwrap();
        assert_eq!(ctx.as_d_subspace(&red.subspace), Some(red.clone()));
        assert_eq!(ctx.collapse_subspace(&red.subspace), Some(line));
        let generic = ctx.small().subspace(&[1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(ctx.as_d_subspace(&generic), None);
        let mut spread_lines = 0;
        for s in ctx.small().subspaces(1, None, DEFAULT_CAP).unwrap() {
            if ctx.as_d_subspace(&s).is_some() {
                spread_lines += 1;
            }
        }
        assert_eq!(spread_lines as u128, ctx.spread_size());
    }

    #[test]
    fn b_map_examples() {
        let ctx = SpreadContext::with_orders(2, 2, 3).unwrap();
        assert!(ctx.b_map(&PointSet::new(ctx.small().clone())).unwrap().is_empty());
        let b = ctx.big().normalize(&[1, 5]).unwrap();
        let e = ctx.small().points_of(&ctx.expand_point(&b).unwrap());
        assert_eq!(ctx.b_map(&e).unwrap().len(), 1);
        let ell = ctx.small().subspace(&[1, 0, 0, 0, 0, 0, 1, 0]).unwrap();
        assert!(ctx.is_scattered(&ell).unwrap().scattered);
        assert_eq!(ctx.b_map(&ctx.small().points_of(&ell)).unwrap().len(), 4);
    }

    #[test]
    fn scattered_examples() {
        let ctx = SpreadContext::with_orders(2, 2, 3).unwrap();
        let b = ctx.big().normalize(&[1, 2]).unwrap();
        let e = ctx.expand_point(&b).unwrap();
        let v = ctx.is_scattered(&e).unwrap();
        assert!(!v.scattered);
        assert_eq!(v.witness, Some(e));
        // every line of PG(3,3) is either a spread element or scattered
        let mut spread_lines = 0;
        for l in ctx.small().subspaces(1, None, DEFAULT_CAP).unwrap() {
            let v = ctx.is_scattered(&l).unwrap();
            if !v.scattered {
                assert_eq!(v.witness.as_ref(), Some(&l));
                spread_lines += 1;
            }
            let image = ctx.b_map(&ctx.small().points_of(&l)).unwrap().len();
            assert_eq!(v.scattered, image == 4);
        }
        assert_eq!(spread_lines, 10);
    }

    #[test]
    fn find_scattered_examples() {
        let ctx = SpreadContext::with_orders(2, 2, 3).unwrap();
        let out = ctx.find_scattered(1, &ScatterSearch::default()).unwrap();
        let ScatterOutcome::Found { subspace, .. } = out else { panic!("{out:?}") };
        assert!(ctx.is_scattered(&subspace).unwrap().scattered);
        assert_eq!(subspace.rank(), 2);

        let ctx = SpreadContext::with_orders(3, 2, 2).unwrap();
        let out = ctx.find_scattered(3, &ScatterSearch::default()).unwrap();
        assert_eq!(out, ScatterOutcome::NotFound { exhaustive: true, rank_bound: true, attempts: 0 });
        let out = ctx.find_scattered(2, &ScatterSearch::default()).unwrap();
        assert!(matches!(out, ScatterOutcome::Found { .. }));

        let ctx = SpreadContext::with_orders(2, 4, 2).unwrap();
        let search = ScatterSearch { seed: 11, ..ScatterSearch::default() };
        let out = ctx.find_scattered(3, &search).unwrap();
        let ScatterOutcome::Found { subspace, .. } = out.clone() else { panic!("{out:?}") };
        assert_eq!(subspace.rank(), 4);
        assert!(ctx.is_scattered(&subspace).unwrap().scattered);
        assert_eq!(ctx.find_scattered(3, &search).unwrap(), out, "deterministic");
    }

    #[test]
    fn every_hyperplane_contains_one_d_subspace() {
        let ctx = SpreadContext::with_orders(3, 2, 2).unwrap();
        let mut total = 0;
        for h in ctx.small().subspaces(4, None, DEFAULT_CAP).unwrap() {
            assert_eq!(ctx.d_subspaces_in(&h, 2).unwrap().len(), 1);
            total += 1;
        }
        assert_eq!(total, 63);
    }

    #[test]
    fn regulus_plane_tallies_pg33() {
        let ctx = SpreadContext::with_orders(2, 2, 3).unwrap();
        let sp = ctx.small();
        let ell = sp.subspace(&[1, 0, 0, 0, 0, 0, 1, 0]).unwrap();
        let reg = ctx.regulus(&ell).unwrap();
        let mut reg_pts = PointSet::new(sp.clone());
        for r in &reg {
            reg_pts.extend(&sp.points_of(r)).unwrap();
        }
        assert_eq!(reg_pts.len(), 16);
        let mut tally: BTreeMap<PlaneSection, usize> = BTreeMap::new();
        for pi in sp.subspaces(2, None, DEFAULT_CAP).unwrap() {
            let class = ctx.classify_regulus_plane_meet(&ell, &pi).unwrap();
            // oracle from the section size alone: 2q+1 for a line pair, q+1 otherwise
            let size = reg_pts.count_in(&pi);
            let expect = if size == 7 { PlaneSection::TwoLines } else { PlaneSection::Conic };
            assert!(size == 7 || size == 4);
            assert_eq!(class, expect);
            *tally.entry(class).or_default() += 1;
        }
        assert_eq!(tally[&PlaneSection::TwoLines], 16);
        assert_eq!(tally[&PlaneSection::Conic], 24);
    }

    #[test]
    fn regulus_plane_errors() {
        let ctx = SpreadContext::with_orders(3, 2, 3).unwrap();
        let sp = ctx.small();
        let spread_line = ctx.expand_point(&ctx.big().normalize(&[1, 0, 0]).unwrap()).unwrap();
        let pi = sp.subspace(&[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(ctx.classify_regulus_plane_meet(&spread_line, &pi), Err(Error::NotScattered));
        let ell = sp.subspace(&[1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        let far = sp.subspace(&[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(ctx.classify_regulus_plane_meet(&ell, &far), Err(Error::PlaneMissesRegulus(1))));
    }
}
