//! Seeded random searches for frames satisfying the hypotheses of the
//! constructions. Restart `i` draws from a generator seeded with a mix of
//! the user seed and `i`; the first restart whose frame passes the
//! validator wins, so a search is reproducible from its seed.

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use super::{
    validate_construction_1, validate_construction_2, validate_mps, ConeSpec, Construction1, Construction2Spec,
    MpsSpec, MpsVariant,
};
use crate::blocking::{self, ScanOptions};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::pg::{linalg, PointSet, ProjSpace, Subspace};
use crate::spread::{restart_seed, SpreadContext};

/// Seed and number of restarts for a frame search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameSearch {
    pub seed: u64,
    pub budget: u64,
}

impl Default for FrameSearch {
    fn default() -> Self {
        FrameSearch { seed: 0, budget: 1000 }
    }
}

/// Errors meaning "this frame is unlucky, try another one".
fn is_frame_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BadFrame(_)
            | Error::DimensionMismatch(_)
            | Error::SpanConditionFailed { .. }
            | Error::BaseMeetsNu
            | Error::BaseLineConditionFailed
            | Error::BaseGammaMeetNotPoint(_)
    )
}

fn run<T>(search: &FrameSearch, mut attempt: impl FnMut(&mut SplitMix64) -> Result<Option<T>>) -> Result<(T, u64)> {
    for restart in 0..search.budget {
        let mut rng = SplitMix64::seed_from_u64(restart_seed(search.seed, restart));
        match attempt(&mut rng) {
            Ok(Some(found)) => return Ok((found, restart)),
            Ok(None) => {}
            Err(e) if is_frame_error(&e) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(search.budget))
}

fn check_planar(ctx: &SpreadContext, base: &PointSet) -> Result<()> {
    let s = base.space();
    if s.dim() != 2 || s.field() != ctx.small().field() {
        return Err(Error::AmbientMismatch(format!("base must live in PG(2, {})", ctx.q())));
    }
    Ok(())
}

/// Random rows spanning `s`, as a basis matrix.
fn random_basis(space: &ProjSpace, s: &Subspace, rng: &mut SplitMix64) -> Vec<Elem> {
    loop {
        let rows: Vec<Elem> = (0..s.rank()).flat_map(|_| space.random_vector_in(s, rng)).collect();
        if linalg::rank(space.field(), &rows, space.ncols()) == s.rank() {
            return rows;
        }
    }
}

/// A random subspace of `within` of the given rank skew from `avoid`.
fn random_skew(
    space: &ProjSpace,
    within: &Subspace,
    rank: usize,
    avoid: &Subspace,
    rng: &mut SplitMix64,
) -> Result<Option<Subspace>> {
    let Some(s) = space.random_subspace_in(within, rank, rng) else {
        return Ok(None);
    };
    Ok((space.meet(&s, avoid)?.rank() == 0).then_some(s))
}

/// Finds `Omega`, `Gamma` and an embedding of the planar `base` for
/// Construction 1.
pub fn search_construction_1(
    ctx: &SpreadContext,
    k: usize,
    base: &PointSet,
    check_tangents: bool,
    search: &FrameSearch,
    opts: &ScanOptions,
) -> Result<(Construction1, u64)> {
    check_planar(ctx, base)?;
    let sp = ctx.small();
    let (n, t) = (ctx.n(), ctx.t());
    if k < 2 || k >= n {
        return Err(Error::DimensionMismatch(format!("k = {k} needs 2 <= k <= n - 1 = {}", n - 1)));
    }
    let full = sp.full();
    run(search, |rng| {
        let omega = sp.random_subspace_in(&full, n * t - k * t - 1, rng).expect("rank fits");
        let Some(gamma) = random_skew(sp, &full, 3, &omega, rng)? else {
            return Ok(None);
        };
        let placed = sp.embed_points(base, &random_basis(sp, &gamma, rng))?;
        let spec = Construction1 { k, omega, gamma, base: placed, check_tangents };
        validate_construction_1(ctx, &spec, opts)?;
        Ok(Some(spec))
    })
}

/// Finds `nu`, `Pi`, `Omega`, `Gamma` and an embedding of `base` for
/// Construction 2.
pub fn search_construction_2(
    ctx: &SpreadContext,
    k: usize,
    base: &PointSet,
    search: &FrameSearch,
    opts: &ScanOptions,
) -> Result<(Construction2Spec, u64)> {
    check_planar(ctx, base)?;
    let (sp, bp) = (ctx.small(), ctx.big());
    let (n, t) = (ctx.n(), ctx.t());
    if t < 4 {
        return Err(Error::TExponentTooSmall(t));
    }
    if k < 2 || k >= n {
        return Err(Error::DimensionMismatch(format!("k = {k} needs 2 <= k <= n - 1 = {}", n - 1)));
    }
    let e = n * t - k * t;
    run(search, |rng| {
        let u = bp.random_subspace_in(&bp.full(), n - k, rng).expect("rank fits");
        let nu = ctx.field_reduce(&u)?.subspace;
        let mut rows = nu.rows().to_vec();
        for _ in 0..2 {
            rows.extend(sp.random_vector_in(&sp.full(), rng));
        }
        let pi = sp.subspace_from_rows(rows);
        if pi.rank() != e + 2 || super::b_span_rank(ctx, &pi)? != n - k + 2 {
            return Ok(None);
        }
        let mut rows = sp.random_subspace_in(&nu, e - 3, rng).expect("rank fits").rows().to_vec();
        for _ in 0..2 {
            rows.extend(sp.random_vector_in(&pi, rng));
        }
        let omega = sp.subspace_from_rows(rows);
        if omega.rank() != e - 1 || sp.meet(&omega, &nu)?.rank() != e - 3 {
            return Ok(None);
        }
        let Some(gamma) = random_skew(sp, &pi, 3, &omega, rng)? else {
            return Ok(None);
        };
        for _ in 0..64 {
            let placed = sp.embed_points(base, &random_basis(sp, &gamma, rng))?;
            if placed.iter().any(|p| sp.contains_point(&nu, &p)) {
                continue;
            }
            let spec = Construction2Spec {
                k,
                nu: nu.clone(),
                pi: pi.clone(),
                omega: omega.clone(),
                gamma: gamma.clone(),
                base: placed,
            };
            validate_construction_2(ctx, &spec, opts)?;
            return Ok(Some(spec));
        }
        Ok(None)
    })
}

/// A random point of the subspace `s` of the plane `space` other than
/// `not`.
fn random_point_other(space: &ProjSpace, s: &Subspace, not: &[Elem], rng: &mut SplitMix64) -> Vec<Elem> {
    loop {
        let v = space.random_vector_in(s, rng);
        if let Ok(p) = space.normalize(&v) {
            if p.coords() != not {
                return p.into_coords();
            }
        }
    }
}

/// Finds a frame for the MPS construction and places the planar `base` in
/// a plane of `Gamma'` so that it meets `Gamma` in one point `Q`, equal to
/// `T` for variant A and different from it for variant B.
pub fn search_mps(
    ctx: &SpreadContext,
    base: &PointSet,
    variant: MpsVariant,
    search: &FrameSearch,
    opts: &ScanOptions,
) -> Result<(MpsSpec, u64)> {
    check_planar(ctx, base)?;
    let (sp, bp) = (ctx.small(), ctx.big());
    let plane = base.space();
    let field = sp.field().clone();
    let (n, t) = (ctx.n(), ctx.t());
    if n < 2 {
        return Err(Error::DimensionMismatch("the MPS construction needs n >= 2".into()));
    }
    if !blocking::is_blocking(base, 1, opts)?.blocking {
        return Err(Error::NotBlocking);
    }
    // a base point with a tangent line
    let mut anchor = None;
    for p in base.iter() {
        if let Some(l) = blocking::tangent_spaces(base, &p, 1, Some(1), opts)?.pop() {
            anchor = Some((p, l));
            break;
        }
    }
    let (q0, l0) = anchor.ok_or_else(|| Error::BadFrame("no base point lies on a tangent line".into()))?;
    let q0 = q0.into_coords();
    run(search, |rng| {
        let h = bp.random_subspace_in(&bp.full(), n - 1, rng).expect("rank fits");
        let sigma = ctx.field_reduce(&h)?.subspace;
        let mut rows = sigma.rows().to_vec();
        rows.extend(sp.random_vector_in(&sp.full(), rng));
        let sigma_prime = sp.subspace_from_rows(rows);
        if sigma_prime.rank() != sigma.rank() + 1 {
            return Ok(None);
        }
        let Ok(yp) = bp.normalize(&bp.random_vector_in(&h, rng)) else {
            return Ok(None);
        };
        let y = ctx.expand_point(&yp)?;
        let omega = sp.random_subspace_in(&y, t - 1, rng).expect("rank fits");
        let Some(gamma_prime) = random_skew(sp, &sigma_prime, n * t - 2 * t + 2, &omega, rng)? else {
            return Ok(None);
        };
        let gamma = sp.meet(&gamma_prime, &sigma)?;
        let tp = sp.meet(&gamma, &y)?;
        if gamma.rank() + 1 != gamma_prime.rank() || tp.rank() != 1 {
            return Ok(None);
        }
        // images: g1 = T, g2 another point of Gamma, g3 off Gamma
        let g1 = tp.row(0).to_vec();
        let g2 = sp.random_vector_in(&gamma, rng);
        let g3 = sp.random_vector_in(&gamma_prime, rng);
        let g: Vec<Elem> = [g1, g2, g3].concat();
        if linalg::rank(&field, &g, sp.ncols()) != 3 || sp.contains_vec(&gamma, &g[2 * sp.ncols()..]) {
            return Ok(None);
        }
        // preimages: a1, a2 span the tangent line at Q0, a3 lies off it
        let other = random_point_other(plane, &l0, &q0, rng);
        let (a1, a2) = match variant {
            MpsVariant::A => (q0.clone(), other),
            MpsVariant::B => (other, q0.clone()),
        };
        let a3 = loop {
            let v = plane.random_vector_in(&plane.full(), rng);
            if !plane.contains_vec(&l0, &v) {
                break v;
            }
        };
        let a: Vec<Elem> = [a1, a2, a3].concat();
        let a_inv = linalg::invert(&field, &a, 3).expect("independent rows");
        let basis = linalg::matmul(&field, &a_inv, &g, 3, sp.ncols());
        let placed = sp.embed_points(base, &basis)?;
        let spec = MpsSpec { sigma, sigma_prime, y, omega, gamma_prime, base: placed };
        let frame = validate_mps(ctx, &spec, opts)?;
        Ok((frame.variant == variant).then_some(spec))
    })
}

/// Adds to the base of a valid MPS frame the first point (in lexicographic
/// order) of the base's span, off `Gamma`, that keeps every hypothesis
/// true and makes the base non-minimal in `Gamma'`.
pub fn with_extra_base_point(ctx: &SpreadContext, spec: &MpsSpec, opts: &ScanOptions) -> Result<MpsSpec> {
    let sp = ctx.small();
    let frame = validate_mps(ctx, spec, opts)?;
    let pts = spec.base.to_vec();
    let span = sp.span(&pts.iter().collect::<Vec<_>>(), &[])?;
    let candidates = sp.points_of(&span);
    for p in candidates.iter() {
        if spec.base.contains(&p) || sp.contains_point(&frame.gamma, &p) {
            continue;
        }
        let mut next = spec.clone();
        next.base.insert(&p);
        match validate_mps(ctx, &next, opts) {
            Ok(f) if !f.base_minimal => return Ok(next),
            Ok(_) => {}
            Err(e) if is_frame_error(&e) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(candidates.len() as u64))
}

/// A random `(nt - kt)`-space of the small space, the input of
/// [`super::linear_bs`].
pub fn random_linear_frame(ctx: &SpreadContext, k: usize, seed: u64) -> Result<Subspace> {
    let (n, t) = (ctx.n(), ctx.t());
    if k == 0 || k >= n {
        return Err(Error::DimensionMismatch(format!("k = {k} needs 1 <= k <= n - 1")));
    }
    let sp = ctx.small();
    let mut rng = SplitMix64::seed_from_u64(restart_seed(seed, 0));
    Ok(sp.random_subspace_in(&sp.full(), n * t - k * t + 1, &mut rng).expect("rank fits"))
}

/// A cone frame in `space`: a random vertex of rank `vertex_rank`, a
/// random plane skew from it, and the planar `base` placed in that plane
/// through a random basis.
pub fn random_cone_spec(space: &ProjSpace, vertex_rank: usize, base: &PointSet, seed: u64) -> Result<ConeSpec> {
    if base.space().dim() != 2 || base.space().field() != space.field() {
        return Err(Error::AmbientMismatch(format!("base must live in PG(2, {})", space.q())));
    }
    if vertex_rank + 3 > space.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "a vertex of dimension {} and a plane do not fit in {space:?}",
            vertex_rank as isize - 1
        )));
    }
    let full = space.full();
    let search = FrameSearch { seed, budget: 1000 };
    let (spec, _) = run(&search, |rng| {
        let vertex = space.random_subspace_in(&full, vertex_rank, rng).expect("rank fits");
        let Some(screen) = random_skew(space, &full, 3, &vertex, rng)? else {
            return Ok(None);
        };
        let placed = space.embed_points(base, &random_basis(space, &screen, rng))?;
        Ok(Some(ConeSpec { vertex, screen, base: placed }))
    })?;
    Ok(spec)
}
