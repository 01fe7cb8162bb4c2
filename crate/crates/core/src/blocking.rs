//! Verification of blocking sets by exhaustive enumeration: blocking and
//! minimality with witnesses, tangent spaces, minimization, exponent,
//! intersection spectrum and the classification flags.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::pg::{gaussian_binomial, linalg, PointSet, ProjPoint, ProjSpace, Subspace, DEFAULT_CAP};

/// Limits and parallelism for enumeration-driven checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Largest number of subspaces a single scan may visit.
    pub cap: u128,
    /// Worker threads; 1 runs inline.
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { cap: DEFAULT_CAP, jobs: 1 }
    }
}

const CHUNK: usize = 4096;

/// Runs `work` on every `d`-subspace (through `through` if given) and feeds
/// the results to `consume` in enumeration order; `consume` returning
/// `false` stops the scan. Chunks are processed in parallel when
/// `opts.jobs > 1`, but consumption order is always the enumeration order.
pub(crate) fn scan<R: Send>(
    space: &ProjSpace,
    d: isize,
    through: Option<&Subspace>,
    opts: &ScanOptions,
    work: impl Fn(&Subspace) -> R + Sync,
    mut consume: impl FnMut(Subspace, R) -> bool,
) -> Result<()> {
    let mut iter = space.subspaces(d, through, opts.cap)?;
    let pool = if opts.jobs > 1 {
        rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().ok()
    } else {
        None
    };
    let Some(pool) = pool else {
        for s in iter {
            let r = work(&s);
            if !consume(s, r) {
                break;
            }
        }
        return Ok(());
    };
    loop {
        let chunk: Vec<Subspace> = iter.by_ref().take(CHUNK * opts.jobs).collect();
        if chunk.is_empty() {
            return Ok(());
        }
        let results: Vec<R> = pool.install(|| chunk.par_iter().map(&work).collect());
        for (s, r) in chunk.into_iter().zip(results) {
            if !consume(s, r) {
                return Ok(());
            }
        }
    }
}

/// Computes which points of a fixed set lie in a given subspace, choosing
/// between testing every set point against the subspace's equations and
/// enumerating the subspace's points.
pub(crate) struct Meter {
    space: ProjSpace,
    coords: Vec<Elem>,
    keys: Vec<u64>,
}

impl Meter {
    pub(crate) fn new(set: &PointSet) -> Self {
        let space = set.space().clone();
        let keys: Vec<u64> = set.keys().collect();
        let coords = set.iter().flat_map(|p| p.into_coords()).collect();
        Meter { space, coords, keys }
    }

    pub(crate) fn len(&self) -> usize {
        self.keys.len()
    }

    /// Indices (in lexicographic order of the set) of the set points in `s`.
    pub(crate) fn meet(&self, s: &Subspace) -> Vec<u32> {
        let n = self.space.ncols();
        let r = s.rank();
        let q = self.space.q() as u128;
        let npts = (q.pow(r as u32) - 1) / (q - 1);
        let codim = n - r;
        let cost_dual = (self.keys.len() * codim.min(2) * n) as u128;
        let cost_enum = npts * (r * n + 16) as u128;
        if cost_dual <= cost_enum {
            let dual = self.space.dual_rows(s);
            let f = self.space.field();
            let mut out = Vec::new();
            for (i, p) in self.coords.chunks(n).enumerate() {
                if dual.chunks(n).all(|d| linalg::dot(f, d, p) == 0) {
                    out.push(i as u32);
                }
            }
            out
        } else {
            let mut out = Vec::new();
            self.space.for_each_point(s, |v| {
                if let Ok(i) = self.keys.binary_search(&self.space.key(v)) {
                    out.push(i as u32);
                }
            });
            out.sort_unstable();
            out
        }
    }
}

/// Result of [`is_blocking`]: the lexicographically first skew subspace
/// when the set is not blocking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingVerdict {
    pub blocking: bool,
    pub witness: Option<Subspace>,
}

/// Result of [`is_minimal`]: the first non-essential point when the set is
/// not minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVerdict {
    pub minimal: bool,
    pub witness: Option<ProjPoint>,
}

/// Rédei-type status; only defined for hyperplane blockers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Redei {
    NotApplicable,
    No,
    Yes(Subspace),
}

/// Everything [`classify`] determines about a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingReport {
    pub ambient_dim: usize,
    pub q: u32,
    pub blocked_dim: usize,
    pub size: usize,
    pub blocking: bool,
    pub unblocked: Option<Subspace>,
    pub minimal: bool,
    pub non_essential: Option<ProjPoint>,
    pub small: bool,
    pub trivial: bool,
    pub trivial_witness: Option<Subspace>,
    pub redei: Redei,
    pub exponent: u32,
    /// Intersection size -> number of blocked-dimension subspaces.
    pub spectrum: BTreeMap<usize, u64>,
}

fn check_dim(space: &ProjSpace, d: usize) -> Result<()> {
    if d >= space.dim() {
        return Err(Error::DimensionOutOfRange(format!(
            "blocked dimension {d} must be below the ambient dimension {}",
            space.dim()
        )));
    }
    Ok(())
}

/// Does every `d`-subspace meet `set`?
pub fn is_blocking(set: &PointSet, d: usize, opts: &ScanOptions) -> Result<BlockingVerdict> {
    let space = set.space();
    check_dim(space, d)?;
    let meter = Meter::new(set);
    let mut witness = None;
    scan(space, d as isize, None, opts, |s| meter.meet(s).is_empty(), |s, skew| {
        if skew {
            witness = Some(s);
        }
        witness.is_none()
    })?;
    if let Some(w) = &witness {
        if set.count_in(w) != 0 {
            return Err(Error::SelfCheckFailed("skew witness meets the set".into()));
        }
    }
    Ok(BlockingVerdict { blocking: witness.is_none(), witness })
}

/// The `d`-subspaces through `p` meeting `set` only in `p`, at most `limit`.
pub fn tangent_spaces(
    set: &PointSet,
    p: &ProjPoint,
    d: usize,
    limit: Option<usize>,
    opts: &ScanOptions,
) -> Result<Vec<Subspace>> {
    let space = set.space();
    check_dim(space, d)?;
    let p = space.normalize(p.coords())?;
    if !set.contains(&p) {
        return Err(Error::PointNotInSet);
    }
    let meter = Meter::new(set);
    let through = space.point_subspace(&p);
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    scan(space, d as isize, Some(&through), opts, |s| meter.meet(s).len() == 1, |s, tangent| {
        if tangent {
            out.push(s);
        }
        out.len() < limit
    })?;
    Ok(out)
}

/// Number of tangent `d`-spaces through each point of `set`, in
/// lexicographic order of the points.
pub fn tangent_counts(set: &PointSet, d: usize, opts: &ScanOptions) -> Result<Vec<usize>> {
    let space = set.space();
    check_dim(space, d)?;
    let meter = Meter::new(set);
    let mut counts = vec![0; meter.len()];
    scan(space, d as isize, None, opts, |s| meter.meet(s), |_, hits| {
        if hits.len() == 1 {
            counts[hits[0] as usize] += 1;
        }
        true
    })?;
    Ok(counts)
}

/// Aggregate of one full scan over the `d`-subspaces.
struct Census {
    spectrum: BTreeMap<usize, u64>,
    essential: Vec<bool>,
    unblocked: Option<Subspace>,
    redei: Option<Subspace>,
}

fn census(set: &PointSet, d: usize, redei_size: Option<usize>, opts: &ScanOptions) -> Result<Census> {
    let space = set.space();
    check_dim(space, d)?;
    let meter = Meter::new(set);
    let mut c = Census {
        spectrum: BTreeMap::new(),
        essential: vec![false; meter.len()],
        unblocked: None,
        redei: None,
    };
    let mut total: u128 = 0;
    let mut visited: u128 = 0;
    scan(space, d as isize, None, opts, |s| meter.meet(s), |s, hits| {
        visited += 1;
        total += hits.len() as u128;
        *c.spectrum.entry(hits.len()).or_default() += 1;
        if hits.len() == 1 {
            c.essential[hits[0] as usize] = true;
        }
        if hits.is_empty() && c.unblocked.is_none() {
            c.unblocked = Some(s);
        } else if Some(hits.len()) == redei_size && c.redei.is_none() {
            c.redei = Some(s);
        }
        true
    })?;
    self_check(space, d, set.len(), visited, total)?;
    Ok(c)
}

/// Double counting: the intersection sizes over all `d`-subspaces sum to
/// `|B|` times the number of `d`-subspaces through a point.
fn self_check(space: &ProjSpace, d: usize, size: usize, visited: u128, total: u128) -> Result<()> {
    let q = space.q() as u64;
    let count = gaussian_binomial(space.ncols(), d + 1, q);
    let through = gaussian_binomial(space.ncols() - 1, d, q);
    if visited != count || total != size as u128 * through {
        return Err(Error::SelfCheckFailed(format!(
            "visited {visited} of {count} subspaces; incidence sum {total}, expected {}",
            size as u128 * through
        )));
    }
    Ok(())
}

/// Is `set` a blocking set w.r.t. `d`-spaces all of whose points are
/// essential?
pub fn is_minimal(set: &PointSet, d: usize, opts: &ScanOptions) -> Result<MinimalVerdict> {
    let c = census(set, d, None, opts)?;
    if c.unblocked.is_some() {
        return Err(Error::NotBlocking);
    }
    let witness = c.essential.iter().position(|&e| !e).map(|i| set.space().decode(set.keys().nth(i).unwrap()));
    Ok(MinimalVerdict { minimal: witness.is_none(), witness })
}

/// Removes non-essential points in lexicographic order until the set is
/// minimal. Essentiality is monotone under removal, so one ordered pass
/// gives the same result as restarting from the smallest non-essential
/// point after every removal.
pub fn minimize(set: &PointSet, d: usize, opts: &ScanOptions) -> Result<PointSet> {
    let space = set.space();
    check_dim(space, d)?;
    let meter = Meter::new(set);
    let mut counts: Vec<u32> = Vec::new();
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); meter.len()];
    let mut total: u128 = 0;
    let mut skew = false;
    scan(space, d as isize, None, opts, |s| meter.meet(s), |_, hits| {
        let id = counts.len() as u32;
        counts.push(hits.len() as u32);
        total += hits.len() as u128;
        skew |= hits.is_empty();
        for &i in &hits {
            incident[i as usize].push(id);
        }
        true
    })?;
    self_check(space, d, set.len(), counts.len() as u128, total)?;
    if skew {
        return Err(Error::NotBlocking);
    }
    let keys: Vec<u64> = set.keys().collect();
    let mut out = set.clone();
    for (i, subs) in incident.iter().enumerate() {
        let essential = subs.iter().any(|&s| counts[s as usize] == 1);
        if !essential {
            for &s in subs {
                counts[s as usize] -= 1;
            }
            out.remove(&space.decode(keys[i]));
        }
    }
    Ok(out)
}

/// Largest `e <= h` (`q = p^h`) with every size in the spectrum equal to
/// 1 mod `p^e`.
pub fn exponent_of_spectrum(spectrum: &BTreeMap<usize, u64>, p: u32, h: u32) -> u32 {
    let mut e = 0;
    let mut m: u64 = 1;
    while e < h {
        m *= p as u64;
        if spectrum.keys().all(|&k| k as u64 % m == 1 % m) {
            e += 1;
        } else {
            break;
        }
    }
    e
}

/// Exponent of a blocking set w.r.t. `d`-spaces.
pub fn exponent(set: &PointSet, d: usize, opts: &ScanOptions) -> Result<u32> {
    let c = census(set, d, None, opts)?;
    if c.unblocked.is_some() {
        return Err(Error::NotBlocking);
    }
    let f = set.space().field();
    Ok(exponent_of_spectrum(&c.spectrum, f.characteristic(), f.prime_degree()))
}

/// A subspace of the given rank all of whose points lie in `set`, found by
/// depth-first extension through points of the set.
pub fn find_subspace_in(set: &PointSet, rank: usize) -> Option<Subspace> {
    let space = set.space();
    if rank == 0 {
        return Some(Subspace::empty(space.ncols()));
    }
    let pts = set.to_vec();
    let mut seen = HashSet::new();
    fn extend(
        space: &ProjSpace,
        set: &PointSet,
        pts: &[ProjPoint],
        cur: Subspace,
        from: usize,
        rank: usize,
        seen: &mut HashSet<Subspace>,
    ) -> Option<Subspace> {
        if cur.rank() == rank {
            return Some(cur);
        }
        for (i, p) in pts.iter().enumerate().skip(from) {
            if space.contains_point(&cur, p) {
                continue;
            }
            let next = space.span(&[p], &[&cur]).expect("same ambient");
            if !seen.insert(next.clone()) || !set.contains_subspace(&next) {
                continue;
            }
            if let Some(found) = extend(space, set, pts, next, i + 1, rank, seen) {
                return Some(found);
            }
        }
        None
    }
    extend(space, set, &pts, Subspace::empty(space.ncols()), 0, rank, &mut seen)
}

/// Fills every field of a [`BlockingReport`] for blocking w.r.t. `d`-spaces.
pub fn classify(set: &PointSet, d: usize, opts: &ScanOptions) -> Result<BlockingReport> {
    let space = set.space();
    check_dim(space, d)?;
    let n = space.dim();
    let q = space.q();
    let hyper = d + 1 == n;
    let redei_size = if hyper { set.len().checked_sub(q as usize) } else { None };
    let c = census(set, d, redei_size, opts)?;
    let blocking = c.unblocked.is_none();
    let non_essential = if blocking {
        c.essential.iter().position(|&e| !e).map(|i| space.decode(set.keys().nth(i).unwrap()))
    } else {
        None
    };
    let minimal = blocking && non_essential.is_none();
    // small: 2|B| < 3(Q^{N-K} + 1)
    let small = (2 * set.len() as u128) < 3 * ((q as u128).pow((n - d) as u32) + 1);
    let trivial_witness = find_subspace_in(set, n - d + 1);
    let redei = match (hyper, c.redei) {
        (false, _) => Redei::NotApplicable,
        (true, Some(h)) => Redei::Yes(h),
        (true, None) => Redei::No,
    };
    let f = space.field();
    let report = BlockingReport {
        ambient_dim: n,
        q,
        blocked_dim: d,
        size: set.len(),
        blocking,
        unblocked: c.unblocked,
        minimal,
        non_essential,
        small,
        trivial: trivial_witness.is_some(),
        trivial_witness,
        redei,
        exponent: exponent_of_spectrum(&c.spectrum, f.characteristic(), f.prime_degree()),
        spectrum: c.spectrum,
    };
    reverify(set, &report, opts)?;
    Ok(report)
}

/// Checks every witness in `report` directly against `set`.
fn reverify(set: &PointSet, r: &BlockingReport, opts: &ScanOptions) -> Result<()> {
    let fail = |what: &str| Err(Error::SelfCheckFailed(format!("{what} witness does not re-verify")));
    if let Some(w) = &r.unblocked {
        if w.rank() != r.blocked_dim + 1 || set.count_in(w) != 0 {
            return fail("skew subspace");
        }
    }
    if let Redei::Yes(h) = &r.redei {
        if set.count_in(h) + r.q as usize != set.len() {
            return fail("Redei hyperplane");
        }
    }
    if let Some(t) = &r.trivial_witness {
        if !set.contains_subspace(t) || t.rank() != r.ambient_dim - r.blocked_dim + 1 {
            return fail("trivial subspace");
        }
    }
    if let Some(p) = &r.non_essential {
        if !tangent_spaces(set, p, r.blocked_dim, Some(1), opts)?.is_empty() {
            return fail("non-essential point");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_of_order;

    fn pg(dim: usize, q: u64) -> ProjSpace {
        ProjSpace::new(dim, field_of_order(q).unwrap()).unwrap()
    }

    fn line(s: &ProjSpace) -> PointSet {
        s.points_of(&s.from_dual(vec![1, 0, 0]))
    }

    fn set_of(s: &ProjSpace, pts: &[&[Elem]]) -> PointSet {
        let mut out = PointSet::new(s.clone());
        for p in pts {
            out.insert_vec(p).unwrap();
        }
        out
    }

    /// Points of `x^{r+1} + y^{r+1} + z^{r+1} = 0`, `r = sqrt(q)`.
    fn hermitian(s: &ProjSpace) -> PointSet {
        let f = s.field();
        let r = (s.q() as f64).sqrt() as u64;
        let all = s.points_of(&s.full());
        let pts = all.iter().filter(|p| {
            let c = p.coords();
            let v = c.iter().fold(0, |acc, &x| f.add(acc, f.pow(x, r + 1)));
            v == 0
        });
        PointSet::from_points(s.clone(), pts)
    }

    /// Points with all coordinates in the subfield of order `sqrt(q)`.
    fn baer(s: &ProjSpace) -> PointSet {
        let r = (s.q() as f64).sqrt() as u32;
        let sub: HashSet<Elem> = s.field().subfield(r).into_iter().collect();
        let all = s.points_of(&s.full());
        let pts = all.iter().filter(|p| p.coords().iter().all(|c| sub.contains(c)));
        PointSet::from_points(s.clone(), pts)
    }

    #[test]
    fn lines_block_lines() {
        for q in [2, 3, 4, 5, 9] {
            let s = pg(2, q);
            let v = is_blocking(&line(&s), 1, &ScanOptions::default()).unwrap();
            assert!(v.blocking);
            assert!(is_minimal(&line(&s), 1, &ScanOptions::default()).unwrap().minimal);
        }
    }

    #[test]
    fn conic_is_not_blocking() {
        let s = pg(2, 4);
        let f = s.field();
        let mut conic = set_of(&s, &[&[0, 0, 1]]);
        for x in 0..4 {
            conic.insert_vec(&[1, x, f.mul(x, x)]).unwrap();
        }
        assert_eq!(conic.len(), 5);
        let v = is_blocking(&conic, 1, &ScanOptions::default()).unwrap();
        assert!(!v.blocking);
        assert_eq!(conic.count_in(v.witness.as_ref().unwrap()), 0);
        // the witness is the first external line in enumeration order
        let first = s.subspaces(1, None, DEFAULT_CAP).unwrap().find(|l| conic.count_in(l) == 0);
        assert_eq!(v.witness, first);
    }

    #[test]
    fn tangent_examples() {
        let opts = ScanOptions::default();
        let s = pg(2, 4);
        let h = hermitian(&s);
        assert_eq!(h.len(), 9);
        for p in h.iter() {
            let t = tangent_spaces(&h, &p, 1, None, &opts).unwrap();
            assert_eq!(t.len(), 1);
            assert_eq!(h.count_in(&t[0]), 1);
        }
        assert_eq!(tangent_counts(&h, 1, &opts).unwrap(), vec![1; 9]);
        let b = baer(&s);
        assert_eq!(b.len(), 7);
        assert_eq!(tangent_counts(&b, 1, &opts).unwrap(), vec![2; 7]);
        for p in b.iter() {
            assert_eq!(tangent_spaces(&b, &p, 1, None, &opts).unwrap().len(), 2);
            assert_eq!(tangent_spaces(&b, &p, 1, Some(1), &opts).unwrap().len(), 1);
        }
        let full = s.points_of(&s.full());
        let p = full.first().unwrap();
        assert!(tangent_spaces(&full, &p, 1, None, &opts).unwrap().is_empty());
        let off = s.normalize(&[1, 0, 0]).unwrap();
        assert_eq!(tangent_spaces(&line(&s), &off, 1, None, &opts), Err(Error::PointNotInSet));
    }

    #[test]
    fn line_plus_point() {
        let opts = ScanOptions::default();
        for q in [2, 3, 4] {
            let s = pg(2, q);
            let mut b = line(&s);
            let extra = s.normalize(&[1, 1, 1]).unwrap();
            b.insert(&extra);
            let v = is_minimal(&b, 1, &opts).unwrap();
            assert!(!v.minimal);
            assert_eq!(v.witness, Some(extra));
            assert_eq!(minimize(&b, 1, &opts).unwrap(), line(&s));
        }
        let s = pg(2, 3);
        let conic_like = set_of(&s, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(is_minimal(&conic_like, 1, &opts), Err(Error::NotBlocking));
        assert_eq!(minimize(&conic_like, 1, &opts), Err(Error::NotBlocking));
    }

    #[test]
    fn minimize_fixed_point() {
        let opts = ScanOptions::default();
        let s = pg(2, 4);
        let h = hermitian(&s);
        assert_eq!(minimize(&h, 1, &opts).unwrap(), h);
    }

    /// The literal procedure: find the smallest non-essential point from
    /// scratch, remove it, repeat.
    fn naive_minimize(set: &PointSet, d: usize) -> PointSet {
        let opts = ScanOptions::default();
        let mut cur = set.clone();
        loop {
            let first = cur.iter().find(|p| tangent_spaces(&cur, p, d, Some(1), &opts).unwrap().is_empty());
            match first {
                Some(p) => {
                    cur.remove(&p);
                }
                None => return cur,
            }
        }
    }

    #[test]
    fn minimize_matches_naive_procedure() {
        use rand::{Rng, SeedableRng};
        let opts = ScanOptions::default();
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(5);
        for (dim, q, d) in [(2, 3, 1), (2, 4, 1), (3, 2, 2), (3, 2, 1), (3, 3, 2)] {
            let s = pg(dim, q);
            let all = s.points_of(&s.full()).to_vec();
            for _ in 0..15 {
                let mut b = PointSet::new(s.clone());
                let density = rng.random_range(0.3..0.9);
                for p in &all {
                    if rng.random_bool(density) {
                        b.insert(p);
                    }
                }
                if !is_blocking(&b, d, &opts).unwrap().blocking {
                    continue;
                }
                let m = minimize(&b, d, &opts).unwrap();
                assert_eq!(m, naive_minimize(&b, d));
                assert!(m.is_subset(&b));
                assert!(is_minimal(&m, d, &opts).unwrap().minimal);
            }
        }
    }

    #[test]
    fn exponent_examples() {
        let opts = ScanOptions::default();
        for (q, e) in [(2, 1), (3, 1), (4, 2), (8, 3), (9, 2)] {
            let s = pg(2, q);
            assert_eq!(exponent(&line(&s), 1, &opts).unwrap(), e, "q = {q}");
        }
        // the Baer subplane of PG(2,4) meets lines in 1 or 3 points
        let s = pg(2, 4);
        assert_eq!(exponent(&baer(&s), 1, &opts).unwrap(), 1);
        // two lines: their common point gives intersections of size 2
        let mut two = line(&s);
        two.extend(&s.points_of(&s.from_dual(vec![0, 1, 0]))).unwrap();
        assert_eq!(exponent(&two, 1, &opts).unwrap(), 0);
    }

    #[test]
    fn classify_line_pg29() {
        let s = pg(2, 9);
        let r = classify(&line(&s), 1, &ScanOptions::default()).unwrap();
        assert_eq!(r.size, 10);
        assert!(r.blocking && r.minimal && r.trivial);
        assert!(r.small);
        assert!(matches!(r.redei, Redei::Yes(_)));
        assert_eq!(r.spectrum, BTreeMap::from([(1, 90), (10, 1)]));
        assert_eq!(r.exponent, 2);
    }

    #[test]
    fn classify_hermitian_pg24() {
        let s = pg(2, 4);
        let r = classify(&hermitian(&s), 1, &ScanOptions::default()).unwrap();
        assert_eq!(r.size, 9);
        assert!(r.blocking && r.minimal);
        assert!(!r.small && !r.trivial);
        assert_eq!(r.spectrum, BTreeMap::from([(1, 9), (3, 12)]));
        // |B| - q = 5 is never an intersection size
        assert_eq!(r.redei, Redei::No);
    }

    #[test]
    fn classify_non_hyperplane() {
        let s = pg(3, 2);
        let plane = s.points_of(&s.from_dual(vec![0, 0, 0, 1]));
        let r = classify(&plane, 1, &ScanOptions::default()).unwrap();
        assert!(r.blocking && r.minimal && r.trivial);
        assert_eq!(r.redei, Redei::NotApplicable);
        let pt = set_of(&s, &[&[1, 0, 0, 0]]);
        let r = classify(&pt, 1, &ScanOptions::default()).unwrap();
        assert!(!r.blocking && !r.minimal);
        assert_eq!(r.exponent, 0);
        assert!(r.unblocked.is_some());
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let s = pg(3, 3);
        let plane = s.points_of(&s.from_dual(vec![0, 1, 0, 1]));
        let serial = classify(&plane, 1, &ScanOptions::default()).unwrap();
        let par = classify(&plane, 1, &ScanOptions { jobs: 3, ..ScanOptions::default() }).unwrap();
        assert_eq!(serial, par);
    }

    #[test]
    fn cap_is_enforced() {
        let s = pg(2, 9);
        let opts = ScanOptions { cap: 10, jobs: 1 };
        assert!(matches!(is_blocking(&line(&s), 1, &opts), Err(Error::InstanceTooLarge { count: 91, cap: 10 })));
    }

    #[test]
    fn monotone_under_supersets() {
        let opts = ScanOptions::default();
        let s = pg(2, 5);
        let mut b = line(&s);
        for p in s.points_of(&s.full()).iter().step_by(7) {
            b.insert(&p);
            assert!(is_blocking(&b, 1, &opts).unwrap().blocking);
        }
    }
}
