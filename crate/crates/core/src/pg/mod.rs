//! Projective spaces `PG(N, q)`: normalized points, subspaces in canonical
//! RREF form, span and meet, point sets, enumeration and projection.

mod enumerate;
pub mod linalg;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

pub use enumerate::{gaussian_binomial, SubspaceIter};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Default cap on the number of subspaces a single enumeration may visit.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// `PG(dim, q)`: the lattice of subspaces of `GF(q)^(dim+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjSpace {
    field: Arc<Field>,
    dim: usize,
}

impl fmt::Debug for ProjSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({}, {})", self.dim, self.field.order())
    }
}

/// A point, stored as its normalized coordinate vector (first nonzero
/// coordinate equal to 1). Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.0
    }
}

/// A subspace as its canonical basis: a `rank × ncols` matrix in reduced
/// row echelon form. Rank 0 is the empty subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ncols: usize,
    rows: Vec<Elem>,
    pivots: Vec<usize>,
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ncols, self.rank(), &self.rows).cmp(&(other.ncols, other.rank(), &other.rows))
    }
}

impl Subspace {
    pub(crate) fn from_canonical(ncols: usize, rows: Vec<Elem>, pivots: Vec<usize>) -> Self {
        Subspace { ncols, rows, pivots }
    }

    pub fn empty(ncols: usize) -> Self {
        Subspace { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Projective dimension, `rank - 1` (`-1` for the empty subspace).
    pub fn dim(&self) -> isize {
        self.rank() as isize - 1
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Elem] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

impl ProjSpace {
    /// `PG(dim, q)` over `field`. Point keys are `(dim+1)`-digit base-`q`
    /// integers, so `q^(dim+1)` must stay below 2^63.
    pub fn new(dim: usize, field: Arc<Field>) -> Result<Self> {
        let bits = (dim as f64 + 1.0) * (field.order() as f64).log2();
        if bits > 63.0 {
            return Err(Error::UnsupportedSize(format!(
                "PG({dim}, {}) points do not fit 63-bit keys",
                field.order()
            )));
        }
        Ok(ProjSpace { field, dim })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of homogeneous coordinates, `dim + 1`.
    pub fn ncols(&self) -> usize {
        self.dim + 1
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn point_count(&self) -> u128 {
        gaussian_binomial(self.ncols(), 1, self.q() as u64)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ncols() {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {len} in {:?} (needs {})",
                self,
                self.ncols()
            )));
        }
        Ok(())
    }

    fn check_sub(&self, s: &Subspace) -> Result<()> {
        self.check_len(s.ncols)
    }

    /// Scales `v` so that its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &[Elem]) -> Result<ProjPoint> {
        self.check_len(v.len())?;
        for &x in v {
            self.field.check(x as u64)?;
        }
        let lead = v.iter().copied().find(|&x| x != 0).ok_or(Error::ZeroVector)?;
        Ok(ProjPoint(self.scale_unchecked(v, lead)))
    }

    pub(crate) fn normalize_unchecked(&self, v: &[Elem]) -> Option<ProjPoint> {
        let lead = v.iter().copied().find(|&x| x != 0)?;
        Some(ProjPoint(self.scale_unchecked(v, lead)))
    }

    fn scale_unchecked(&self, v: &[Elem], lead: Elem) -> Vec<Elem> {
        if lead == 1 {
            return v.to_vec();
        }
        let inv = self.field.inv(lead);
        v.iter().map(|&x| self.field.mul(x, inv)).collect()
    }

    /// Canonical integer key of a normalized point; numeric order of keys
    /// is lexicographic order of coordinates.
    pub fn key(&self, coords: &[Elem]) -> u64 {
        let q = self.q() as u64;
        coords.iter().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn decode(&self, mut key: u64) -> ProjPoint {
        let q = self.q() as u64;
        let mut v = vec![0; self.ncols()];
        for slot in v.iter_mut().rev() {
            *slot = (key % q) as Elem;
            key /= q;
        }
        ProjPoint(v)
    }

    /// Canonical subspace spanned by the rows of `rows` (row-major,
    /// `ncols` wide; dependent rows allowed).
    pub fn subspace_from_rows(&self, mut rows: Vec<Elem>) -> Subspace {
        let pivots = linalg::rref(&self.field, &mut rows, self.ncols());
        Subspace { ncols: self.ncols(), rows, pivots }
    }

    /// Checked variant of [`ProjSpace::subspace_from_rows`].
    pub fn subspace(&self, rows: &[Elem]) -> Result<Subspace> {
        if !rows.len().is_multiple_of(self.ncols()) {
            return Err(Error::AmbientMismatch(format!(
                "{} entries is not a whole number of rows of width {}",
                rows.len(),
                self.ncols()
            )));
        }
        for &x in rows {
            self.field.check(x as u64)?;
        }
        Ok(self.subspace_from_rows(rows.to_vec()))
    }

    pub fn full(&self) -> Subspace {
        let n = self.ncols();
        let mut rows = vec![0; n * n];
        for i in 0..n {
            rows[i * n + i] = 1;
        }
        Subspace { ncols: n, rows, pivots: (0..n).collect() }
    }

    pub fn point_subspace(&self, p: &ProjPoint) -> Subspace {
        self.subspace_from_rows(p.0.clone())
    }

    /// Smallest subspace containing all the given points and subspaces.
    pub fn span(&self, points: &[&ProjPoint], subspaces: &[&Subspace]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for p in points {
            self.check_len(p.0.len())?;
            rows.extend_from_slice(&p.0);
        }
        for s in subspaces {
            self.check_sub(s)?;
            rows.extend_from_slice(&s.rows);
        }
        Ok(self.subspace_from_rows(rows))
    }

    pub fn join(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.span(&[], &[a, b])
    }

    /// Annihilator rows of `s`: a basis of the dual subspace.
    pub fn dual_rows(&self, s: &Subspace) -> Vec<Elem> {
        linalg::nullspace(&self.field, &s.rows, &s.pivots, s.ncols)
    }

    /// The subspace whose annihilator is spanned by `dual` rows.
    pub fn from_dual(&self, dual: Vec<Elem>) -> Subspace {
        let d = self.subspace_from_rows(dual);
        let rows = linalg::nullspace(&self.field, &d.rows, &d.pivots, d.ncols);
        self.subspace_from_rows(rows)
    }

    /// Set-theoretic intersection, via `ann(A ∩ B) = ann(A) + ann(B)`.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_sub(a)?;
        self.check_sub(b)?;
        let mut dual = self.dual_rows(a);
        dual.extend(self.dual_rows(b));
        Ok(self.from_dual(dual))
    }

    /// Does the vector `v` lie in `s`?
    pub fn contains_vec(&self, s: &Subspace, v: &[Elem]) -> bool {
        let f = &self.field;
        let n = s.ncols;
        let mut w = v.to_vec();
        for (i, &p) in s.pivots.iter().enumerate() {
            let c = w[p];
            if c != 0 {
                linalg::axpy(f, &mut w, f.neg(c), &s.rows[i * n..(i + 1) * n]);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_point(&self, s: &Subspace, p: &ProjPoint) -> bool {
        self.contains_vec(s, &p.0)
    }

    /// Is `inner ⊆ outer`?
    pub fn contains(&self, outer: &Subspace, inner: &Subspace) -> bool {
        (0..inner.rank()).all(|i| self.contains_vec(outer, inner.row(i)))
    }

    /// Coefficients of `v` in the canonical basis of `s`, if `v ∈ s`.
    pub fn coords_in(&self, s: &Subspace, v: &[Elem]) -> Option<Vec<Elem>> {
        let c: Vec<Elem> = s.pivots.iter().map(|&p| v[p]).collect();
        (self.combine(s, &c) == v).then_some(c)
    }

    /// `Σ c_i row_i` over the canonical basis of `s`.
    pub fn combine(&self, s: &Subspace, c: &[Elem]) -> Vec<Elem> {
        let mut v = vec![0; s.ncols];
        for (i, &ci) in c.iter().enumerate() {
            linalg::axpy(&self.field, &mut v, ci, s.row(i));
        }
        v
    }

    /// All `(q^rank - 1)/(q - 1)` points of `s`, in lexicographic order.
    pub fn points_of(&self, s: &Subspace) -> PointSet {
        let mut set = PointSet::new(self.clone());
        self.for_each_point(s, |v| {
            set.keys.insert(self.key(v));
        });
        set
    }

    /// Calls `f` on the normalized coordinates of every point of `s`.
    pub fn for_each_point(&self, s: &Subspace, mut f: impl FnMut(&[Elem])) {
        let r = s.rank();
        let q = self.q();
        // leading coefficient 1 on the first nonzero coefficient makes
        // each combination a normalized point
        for lead in 0..r {
            let mut c = vec![0; r];
            c[lead] = 1;
            loop {
                let v = self.combine(s, &c);
                f(&v);
                // odometer over coefficients after `lead`
                let mut j = r;
                loop {
                    if j == lead + 1 {
                        j = usize::MAX;
                        break;
                    }
                    j -= 1;
                    c[j] += 1;
                    if c[j] < q {
                        break;
                    }
                    c[j] = 0;
                }
                if j == usize::MAX {
                    break;
                }
            }
        }
    }

    /// Subspaces of projective dimension `d` (optionally through `through`),
    /// refusing enumerations larger than `cap`.
    pub fn subspaces(&self, d: isize, through: Option<&Subspace>, cap: u128) -> Result<SubspaceIter> {
        let rank = self.subspace_rank(d)?;
        if let Some(w) = through {
            self.check_sub(w)?;
            if w.rank() > rank {
                return Err(Error::DimensionOutOfRange(format!(
                    "fixed subspace of dimension {} exceeds target dimension {d}",
                    w.dim()
                )));
            }
        }
        let count = self.subspace_count(d, through)?;
        if count > cap {
            return Err(Error::InstanceTooLarge { count, cap });
        }
        Ok(SubspaceIter::new(self, rank, through))
    }

    fn subspace_rank(&self, d: isize) -> Result<usize> {
        if d < -1 || d > self.dim as isize {
            return Err(Error::DimensionOutOfRange(format!("dimension {d} in {:?}", self)));
        }
        Ok((d + 1) as usize)
    }

    /// Number of `d`-dimensional subspaces (through `through` if given).
    pub fn subspace_count(&self, d: isize, through: Option<&Subspace>) -> Result<u128> {
        let rank = self.subspace_rank(d)?;
        let q = self.q() as u64;
        Ok(match through {
            None => gaussian_binomial(self.ncols(), rank, q),
            Some(w) if w.rank() <= rank => {
                gaussian_binomial(self.ncols() - w.rank(), rank - w.rank(), q)
            }
            Some(_) => 0,
        })
    }

    /// Projection of `p` from `vertex` onto `screen`: the point where
    /// `<vertex, p>` meets `screen`.
    pub fn project(&self, p: &ProjPoint, vertex: &Subspace, screen: &Subspace) -> Result<ProjPoint> {
        self.check_len(p.0.len())?;
        if self.meet(vertex, screen)?.rank() != 0
            || self.join(vertex, screen)?.rank() != self.ncols()
        {
            return Err(Error::BadFrame("vertex and screen are not complementary".into()));
        }
        if self.contains_point(vertex, p) {
            return Err(Error::PointInVertex);
        }
        let through = self.span(&[p], &[vertex])?;
        let m = self.meet(&through, screen)?;
        debug_assert_eq!(m.rank(), 1);
        Ok(ProjPoint(m.row(0).to_vec()))
    }

    /// Maps planar (or any lower-dimensional) coordinates onto `target`
    /// through its canonical basis, or through explicit basis rows.
    pub fn embed_points(&self, set: &PointSet, basis: &[Elem]) -> Result<PointSet> {
        let k = set.space().ncols();
        if basis.len() != k * self.ncols() {
            return Err(Error::AmbientMismatch(format!(
                "{} basis entries for {} source coordinates",
                basis.len(),
                k
            )));
        }
        if linalg::rank(&self.field, basis, self.ncols()) != k {
            return Err(Error::BadFrame("embedding basis is not independent".into()));
        }
        let mut out = PointSet::new(self.clone());
        for p in set.iter() {
            let mut v = vec![0; self.ncols()];
            for (i, &c) in p.coords().iter().enumerate() {
                linalg::axpy(&self.field, &mut v, c, &basis[i * self.ncols()..(i + 1) * self.ncols()]);
            }
            out.insert_vec(&v)?;
        }
        Ok(out)
    }

    /// A uniformly random vector of `s`.
    pub fn random_vector_in(&self, s: &Subspace, rng: &mut impl Rng) -> Vec<Elem> {
        let q = self.q();
        let c: Vec<Elem> = (0..s.rank()).map(|_| rng.random_range(0..q)).collect();
        self.combine(s, &c)
    }

    /// A random subspace of `within` of the given rank, built by adding
    /// random vectors; `None` if `rank` exceeds the rank of `within`.
    pub fn random_subspace_in(&self, within: &Subspace, rank: usize, rng: &mut impl Rng) -> Option<Subspace> {
        if rank > within.rank() {
            return None;
        }
        let mut cur = Subspace::empty(self.ncols());
        while cur.rank() < rank {
            let mut rows = cur.rows;
            rows.extend(self.random_vector_in(within, rng));
            cur = self.subspace_from_rows(rows);
        }
        Some(cur)
    }

    /// Re-expresses the points of `set` lying in `s` in the coordinates of
    /// `s`'s canonical basis, as a point set of `PG(rank-1, q)`.
    pub fn restrict(&self, set: &PointSet, s: &Subspace) -> Result<PointSet> {
        let sub = ProjSpace::new(s.rank().saturating_sub(1), self.field.clone())?;
        let mut out = PointSet::new(sub);
        for p in set.iter() {
            if let Some(c) = self.coords_in(s, p.coords()) {
                out.insert_vec(&c)?;
            }
        }
        Ok(out)
    }
}

/// A finite set of points of one ambient space, keyed by canonical
/// encoding. Iteration is in lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    space: ProjSpace,
    keys: BTreeSet<u64>,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet({:?}, {} points)", self.space, self.keys.len())
    }
}

impl PointSet {
    pub fn new(space: ProjSpace) -> Self {
        PointSet { space, keys: BTreeSet::new() }
    }

    pub fn from_points(space: ProjSpace, points: impl IntoIterator<Item = ProjPoint>) -> Self {
        let keys = points.into_iter().map(|p| space.key(&p.0)).collect();
        PointSet { space, keys }
    }

    pub fn space(&self) -> &ProjSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Normalizes and inserts `v`; returns whether it was new.
    pub fn insert_vec(&mut self, v: &[Elem]) -> Result<bool> {
        let p = self.space.normalize(v)?;
        Ok(self.keys.insert(self.space.key(&p.0)))
    }

    pub fn insert(&mut self, p: &ProjPoint) -> bool {
        self.keys.insert(self.space.key(&p.0))
    }

    pub fn remove(&mut self, p: &ProjPoint) -> bool {
        self.keys.remove(&self.space.key(&p.0))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.keys.contains(&self.space.key(&p.0))
    }

    /// Membership of a normalized coordinate vector.
    pub fn contains_coords(&self, v: &[Elem]) -> bool {
        self.keys.contains(&self.space.key(v))
    }

    pub fn keys(&self) -> impl Iterator<Item = u64> + '_ {
        self.keys.iter().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.keys.iter().map(|&k| self.space.decode(k))
    }

    pub fn to_vec(&self) -> Vec<ProjPoint> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<ProjPoint> {
        self.keys.first().map(|&k| self.space.decode(k))
    }

    fn check_same(&self, other: &PointSet) -> Result<()> {
        if self.space != other.space {
            return Err(Error::AmbientMismatch(format!("{:?} vs {:?}", self.space, other.space)));
        }
        Ok(())
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.check_same(other)?;
        let keys = self.keys.union(&other.keys).copied().collect();
        Ok(PointSet { space: self.space.clone(), keys })
    }

    pub fn extend(&mut self, other: &PointSet) -> Result<()> {
        self.check_same(other)?;
        self.keys.extend(other.keys.iter().copied());
        Ok(())
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.space == other.space && self.keys.is_subset(&other.keys)
    }

    /// Number of points of `self` lying in `s`.
    pub fn count_in(&self, s: &Subspace) -> usize {
        self.iter().filter(|p| self.space.contains_point(s, p)).count()
    }

    /// Does the set contain every point of `s`?
    pub fn contains_subspace(&self, s: &Subspace) -> bool {
        let mut all = true;
        self.space.for_each_point(s, |v| {
            all = all && self.contains_coords(v);
        });
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{field_of_order, Field};

    fn pg(dim: usize, q: u64) -> ProjSpace {
        ProjSpace::new(dim, field_of_order(q).unwrap()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = pg(2, 3);
        assert_eq!(s.normalize(&[0, 2, 1]).unwrap().coords(), &[0, 1, 2]);
        assert_eq!(s.normalize(&[1, 0, 0]).unwrap().coords(), &[1, 0, 0]);
        assert_eq!(s.normalize(&[0, 0, 0]), Err(Error::ZeroVector));
        assert!(matches!(s.normalize(&[1, 0]), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn normalize_is_scale_invariant_pg23() {
        let s = pg(2, 3);
        let all = s.points_of(&s.full());
        assert_eq!(all.len(), 13);
        for p in all.iter() {
            for l in 1..3 {
                let v: Vec<Elem> = p.coords().iter().map(|&x| s.field().mul(x, l)).collect();
                assert_eq!(s.normalize(&v).unwrap(), p);
            }
        }
    }

    #[test]
    fn span_and_points() {
        let s = pg(2, 3);
        assert_eq!(s.span(&[], &[]).unwrap().rank(), 0);
        let a = s.normalize(&[1, 0, 0]).unwrap();
        let b = s.normalize(&[0, 1, 1]).unwrap();
        let l = s.span(&[&a, &b], &[]).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(s.points_of(&l).len(), 4);
        assert!(s.points_of(&Subspace::empty(3)).is_empty());
        let s4 = pg(2, 4);
        let line = s4.subspace(&[1, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(s4.points_of(&line).len(), 5);
        let s52 = pg(5, 2);
        let r4 = s52.subspace(&[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(s52.points_of(&r4).len(), 15);
    }

    #[test]
    fn meet_examples() {
        let s = pg(2, 5);
        let l1 = s.subspace(&[1, 0, 0, 0, 1, 0]).unwrap();
        let l2 = s.subspace(&[1, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(s.meet(&l1, &l2).unwrap().rank(), 1);
        assert_eq!(s.meet(&l1, &s.full()).unwrap(), l1);
        assert_eq!(s.meet(&l1, &l1).unwrap(), l1);
        let s52 = pg(5, 2);
        let h1 = s52.from_dual(vec![1, 0, 0, 0, 0, 0]);
        let h2 = s52.from_dual(vec![0, 1, 1, 0, 0, 0]);
        assert_eq!(h1.rank(), 5);
        assert_eq!(s52.meet(&h1, &h2).unwrap().rank(), 4);
    }

    #[test]
    fn enumeration_examples() {
        let s = pg(2, 2);
        assert_eq!(s.subspaces(1, None, DEFAULT_CAP).unwrap().count(), 7);
        let s52 = pg(5, 2);
        assert_eq!(s52.subspaces(3, None, DEFAULT_CAP).unwrap().count(), 651);
        let w = s52.subspace(&[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0]).unwrap();
        let through: Vec<_> = s52.subspaces(4, Some(&w), DEFAULT_CAP).unwrap().collect();
        assert_eq!(through.len(), 3);
        assert!(through.iter().all(|h| s52.contains(h, &w)));
        assert!(matches!(
            s52.subspaces(3, None, 100),
            Err(Error::InstanceTooLarge { count: 651, cap: 100 })
        ));
        assert!(matches!(s52.subspaces(6, None, DEFAULT_CAP), Err(Error::DimensionOutOfRange(_))));
        assert!(matches!(s52.subspaces(2, Some(&w), DEFAULT_CAP), Err(Error::DimensionOutOfRange(_))));
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let s = pg(3, 3);
        let lines: Vec<_> = s.subspaces(1, None, DEFAULT_CAP).unwrap().collect();
        assert_eq!(lines.len(), 130);
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn through_enumeration_matches_filter() {
        let s = pg(4, 2);
        let p = s.normalize(&[0, 1, 1, 0, 1]).unwrap();
        let ps = s.point_subspace(&p);
        let mut via_quotient: Vec<_> = s.subspaces(2, Some(&ps), DEFAULT_CAP).unwrap().collect();
        let via_filter: Vec<_> =
            s.subspaces(2, None, DEFAULT_CAP).unwrap().filter(|x| s.contains_point(x, &p)).collect();
        via_quotient.sort();
        assert_eq!(via_quotient, via_filter);
    }

    #[test]
    fn projection_examples() {
        let s = pg(2, 3);
        let vertex = s.subspace(&[1, 0, 0]).unwrap();
        let screen = s.from_dual(vec![1, 0, 0]);
        let p = s.normalize(&[1, 1, 2]).unwrap();
        assert_eq!(s.project(&p, &vertex, &screen).unwrap().coords(), &[0, 1, 2]);
        let on_screen = s.normalize(&[0, 1, 1]).unwrap();
        assert_eq!(s.project(&on_screen, &vertex, &screen).unwrap(), on_screen);
        let v = s.normalize(&[1, 0, 0]).unwrap();
        assert_eq!(s.project(&v, &vertex, &screen), Err(Error::PointInVertex));
        let bad_screen = s.subspace(&[1, 0, 0, 0, 1, 0]).unwrap();
        assert!(matches!(s.project(&p, &vertex, &bad_screen), Err(Error::BadFrame(_))));
    }

    #[test]
    fn projection_fibers_have_size_q() {
        for q in [2u64, 3, 4, 5] {
            let s = pg(2, q);
            let vertex = s.subspace(&[1, 0, 0]).unwrap();
            let screen = s.from_dual(vec![1, 0, 0]);
            let mut fibers = std::collections::BTreeMap::new();
            for p in s.points_of(&s.full()).iter() {
                if s.contains_point(&vertex, &p) {
                    continue;
                }
                *fibers.entry(s.project(&p, &vertex, &screen).unwrap()).or_insert(0) += 1;
            }
            assert_eq!(fibers.len() as u64, q + 1);
            assert!(fibers.values().all(|&c| c == q));
        }
    }

    #[test]
    fn hyperplanes_equal_points() {
        for (dim, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (5, 2), (2, 7), (3, 4)] {
            let s = pg(dim, q);
            let h = s.subspaces(dim as isize - 1, None, DEFAULT_CAP).unwrap().count() as u128;
            assert_eq!(h, s.point_count());
        }
    }

    #[test]
    fn grassmann_identity_random() {
        use rand::{Rng, SeedableRng};
        let s = pg(5, 2);
        let f = s.field().clone();
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(7);
        for _ in 0..1000 {
            let ra = rng.random_range(0..=6);
            let rb = rng.random_range(0..=6);
            let a = s.subspace_from_rows((0..ra * 6).map(|_| rng.random_range(0..2)).collect());
            let b = s.subspace_from_rows((0..rb * 6).map(|_| rng.random_range(0..2)).collect());
            let join = s.join(&a, &b).unwrap().rank();
            // meet computed through duals, independently of the join
            let meet = s.meet(&a, &b).unwrap().rank();
            assert_eq!(join + meet, a.rank() + b.rank());
            let _ = &f;
        }
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        use rand::{Rng, SeedableRng};
        let s = ProjSpace::new(4, Field::new(3, 1, None).unwrap()).unwrap();
        let f = s.field().clone();
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(3);
        for _ in 0..10_000 {
            let r = rng.random_range(1..=4);
            let rows: Vec<Elem> = (0..r * 5).map(|_| rng.random_range(0..3)).collect();
            let a = s.subspace_from_rows(rows.clone());
            // random invertible row mixing: add multiples and permute
            let mut mixed = rows.clone();
            for _ in 0..5 {
                let i = rng.random_range(0..r);
                let j = rng.random_range(0..r);
                let c = rng.random_range(1..3);
                if i != j {
                    let src: Vec<Elem> = mixed[j * 5..j * 5 + 5].to_vec();
                    linalg::axpy(&f, &mut mixed[i * 5..i * 5 + 5], c, &src);
                } else {
                    for x in &mut mixed[i * 5..i * 5 + 5] {
                        *x = f.mul(*x, c);
                    }
                }
            }
            mixed.rotate_left(5 * rng.random_range(0..r));
            assert_eq!(s.subspace_from_rows(mixed), a);
        }
    }

    #[test]
    fn restrict_and_embed_round_trip() {
        let s = pg(3, 3);
        let plane = s.subspace(&[1, 0, 0, 2, 0, 1, 0, 1, 0, 0, 1, 1]).unwrap();
        let pts = s.points_of(&plane);
        let local = s.restrict(&pts, &plane).unwrap();
        assert_eq!(local.len(), 13);
        let back = s.embed_points(&local, plane.rows()).unwrap();
        assert_eq!(back, pts);
    }
}
