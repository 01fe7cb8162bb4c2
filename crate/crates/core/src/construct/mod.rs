//! Generators: planar base blocking sets, cones, linear blocking sets, the
//! MPS construction, Constructions 1 and 2 and the decomposition of
//! hyperplane blocking sets through field reduction. Every generator checks
//! its hypotheses before building.

mod frames;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use frames::{
    random_cone_spec, random_linear_frame, search_construction_1, search_construction_2, search_mps,
    with_extra_base_point, FrameSearch,
};

use crate::blocking::{self, ScanOptions};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::pg::{PointSet, ProjSpace, Subspace, DEFAULT_CAP};
use crate::spread::SpreadContext;

/// The classical planar blocking sets used as cone bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Line,
    Baer,
    Hermitian,
    Triangle,
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseKind::Line => "line",
            BaseKind::Baer => "baer",
            BaseKind::Hermitian => "hermitian",
            BaseKind::Triangle => "triangle",
        })
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(BaseKind::Line),
            "baer" => Ok(BaseKind::Baer),
            "hermitian" => Ok(BaseKind::Hermitian),
            "triangle" => Ok(BaseKind::Triangle),
            other => Err(Error::Parse { line: 0, msg: format!("unknown base kind {other:?}") }),
        }
    }
}

/// A planar base together with the number of tangent lines through each of
/// its points (in lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarBase {
    pub kind: BaseKind,
    pub points: PointSet,
    pub tangents: Vec<usize>,
}

/// Square root of `q` when `q` is an even power of its characteristic.
fn square_root(field: &Field) -> Option<u32> {
    let h = field.prime_degree();
    h.is_multiple_of(2).then(|| field.characteristic().pow(h / 2))
}

/// Builds a planar base in `PG(2, q)` and verifies that it is a minimal
/// blocking set w.r.t. lines.
pub fn planar_base(kind: BaseKind, field: &Arc<Field>, opts: &ScanOptions) -> Result<PlanarBase> {
    let space = ProjSpace::new(2, field.clone())?;
    let f = field.as_ref();
    let all = || space.points_of(&space.full());
    let points = match kind {
        BaseKind::Line => space.points_of(&space.from_dual(vec![1, 0, 0])),
        BaseKind::Baer => {
            let r = square_root(f)
                .ok_or_else(|| Error::FieldShapeMismatch(format!("Baer subplane needs a square order, got {}", f.order())))?;
            let sub: HashSet<Elem> = f.subfield(r).into_iter().collect();
            let pts: Vec<_> = all().iter().filter(|p| p.coords().iter().all(|c| sub.contains(c))).collect();
            PointSet::from_points(space.clone(), pts)
        }
        BaseKind::Hermitian => {
            let r = square_root(f)
                .ok_or_else(|| Error::FieldShapeMismatch(format!("Hermitian curve needs a square order, got {}", f.order())))?;
            let e = r as u64 + 1;
            let pts: Vec<_> = all()
                .iter()
                .filter(|p| p.coords().iter().fold(0, |acc, &x| f.add(acc, f.pow(x, e))) == 0)
                .collect();
            PointSet::from_points(space.clone(), pts)
        }
        BaseKind::Triangle => {
            if f.characteristic() == 2 {
                return Err(Error::FieldShapeMismatch(format!(
                    "projective triangle needs odd order, got {}",
                    f.order()
                )));
            }
            // {(0,1,-s), (-s,0,1), (1,-s,0) : s a square or 0}
            let squares: HashSet<Elem> = (0..f.order()).map(|x| f.mul(x, x)).collect();
            let mut set = PointSet::new(space.clone());
            for &s in &squares {
                let m = f.neg(s);
                for v in [[0, 1, m], [m, 0, 1], [1, m, 0]] {
                    set.insert_vec(&v)?;
                }
            }
            set
        }
    };
    let verdict = blocking::is_minimal(&points, 1, opts)?;
    if !verdict.minimal {
        return Err(Error::SelfCheckFailed(format!("{kind} base is not minimal")));
    }
    let tangents = blocking::tangent_counts(&points, 1, opts)?;
    Ok(PlanarBase { kind, points, tangents })
}

/// Size of a cone with a vertex of rank `vertex_rank` over `base_len` points.
pub fn cone_size(q: u32, vertex_rank: usize, base_len: usize) -> u128 {
    let qs = (q as u128).pow(vertex_rank as u32);
    qs * base_len as u128 + (qs - 1) / (q as u128 - 1)
}

/// The cone with vertex `vertex` over `base`, where `base` lies in a
/// subspace `screen` skew from the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    pub vertex: Subspace,
    pub screen: Subspace,
    pub base: PointSet,
}

pub fn cone(spec: &ConeSpec) -> Result<PointSet> {
    let space = spec.base.space();
    if spec.vertex.ncols() != space.ncols() || spec.screen.ncols() != space.ncols() {
        return Err(Error::AmbientMismatch("cone frame is not in the base's ambient".into()));
    }
    if space.meet(&spec.vertex, &spec.screen)?.rank() != 0 {
        return Err(Error::BadFrame("vertex meets the base subspace".into()));
    }
    if spec.base.iter().any(|p| !space.contains_point(&spec.screen, &p)) {
        return Err(Error::BadFrame("base point outside the base subspace".into()));
    }
    let mut k = space.points_of(&spec.vertex);
    for p in spec.base.iter() {
        k.extend(&space.points_of(&space.span(&[&p], &[&spec.vertex])?))?;
    }
    let expected = cone_size(space.q(), spec.vertex.rank(), spec.base.len());
    if k.len() as u128 != expected || k.count_in(&spec.screen) != spec.base.len() {
        return Err(Error::SelfCheckFailed(format!("cone has {} points, expected {expected}", k.len())));
    }
    Ok(k)
}

/// A generated big point set with the small-space cone it came from and
/// named facts for the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub set: PointSet,
    pub cone: PointSet,
    pub facts: Vec<(String, String)>,
}

fn check_small(ctx: &SpreadContext, s: &Subspace, what: &str) -> Result<()> {
    if s.ncols() != ctx.small().ncols() {
        return Err(Error::AmbientMismatch(format!("{what} is not in {:?}", ctx.small())));
    }
    Ok(())
}

fn check_rank(s: &Subspace, rank: usize, what: &str) -> Result<()> {
    if s.rank() != rank {
        return Err(Error::DimensionMismatch(format!(
            "{what} has dimension {}, expected {}",
            s.dim(),
            rank as isize - 1
        )));
    }
    Ok(())
}

fn check_k(ctx: &SpreadContext, k: usize) -> Result<()> {
    if k < 2 || k >= ctx.n() {
        return Err(Error::DimensionMismatch(format!("k = {k} needs 2 <= k <= n - 1 = {}", ctx.n() - 1)));
    }
    Ok(())
}

fn check_inside(space: &ProjSpace, outer: &Subspace, inner: &Subspace, what: &str) -> Result<()> {
    if !space.contains(outer, inner) {
        return Err(Error::BadFrame(what.to_string()));
    }
    Ok(())
}

/// `B(pi)` for an `(nt - kt)`-space `pi`: a linear blocking set w.r.t.
/// `(k-1)`-spaces.
pub fn linear_bs(ctx: &SpreadContext, pi: &Subspace, k: usize) -> Result<PointSet> {
    check_small(ctx, pi, "pi")?;
    let (n, t) = (ctx.n(), ctx.t());
    if k == 0 || k >= n {
        return Err(Error::DimensionMismatch(format!("k = {k} needs 1 <= k <= n - 1")));
    }
    check_rank(pi, n * t - k * t + 1, "pi")?;
    ctx.b_map(&ctx.small().points_of(pi))
}

/// Frame and base of Construction 1: vertex `omega` of dimension
/// `nt - kt - 2`, plane `gamma` skew from it, base in `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction1 {
    pub k: usize,
    pub omega: Subspace,
    pub gamma: Subspace,
    pub base: PointSet,
    /// Enforce the "two tangent lines per base point" hypothesis.
    pub check_tangents: bool,
}

/// Re-expresses a base lying in `plane` in the plane's own coordinates.
fn local_base(space: &ProjSpace, base: &PointSet, plane: &Subspace) -> Result<PointSet> {
    if base.iter().any(|p| !space.contains_point(plane, &p)) {
        return Err(Error::BadFrame("base point outside its plane".into()));
    }
    space.restrict(base, plane)
}

/// Checks the hypotheses of Construction 1; returns report facts.
pub fn validate_construction_1(
    ctx: &SpreadContext,
    spec: &Construction1,
    opts: &ScanOptions,
) -> Result<Vec<(String, String)>> {
    let sp = ctx.small();
    let (n, t, k) = (ctx.n(), ctx.t(), spec.k);
    check_k(ctx, k)?;
    check_small(ctx, &spec.omega, "Omega")?;
    check_small(ctx, &spec.gamma, "Gamma")?;
    if spec.base.space() != sp {
        return Err(Error::AmbientMismatch("base is not in the small space".into()));
    }
    check_rank(&spec.omega, n * t - k * t - 1, "Omega")?;
    check_rank(&spec.gamma, 3, "Gamma")?;
    if sp.meet(&spec.omega, &spec.gamma)?.rank() != 0 {
        return Err(Error::BadFrame("Gamma meets Omega".into()));
    }
    let local = local_base(sp, &spec.base, &spec.gamma)?;
    let mut facts = Vec::new();
    if spec.check_tangents {
        if !blocking::is_blocking(&local, 1, opts)?.blocking {
            return Err(Error::NotBlocking);
        }
        let counts = blocking::tangent_counts(&local, 1, opts)?;
        if let Some((i, &c)) = counts.iter().enumerate().find(|(_, &c)| c < 2) {
            let lp = local.iter().nth(i).expect("index in range");
            let point = sp.normalize(&sp.combine(&spec.gamma, lp.coords()))?;
            return Err(Error::TangentConditionFailed { point: point.into_coords(), tangents: c });
        }
        facts.push(("min_tangents".into(), counts.iter().min().copied().unwrap_or(0).to_string()));
    } else {
        facts.push(("tangent_check".into(), "bypassed".into()));
    }
    Ok(facts)
}

pub fn construction_1(ctx: &SpreadContext, spec: &Construction1, opts: &ScanOptions) -> Result<Built> {
    let mut facts = validate_construction_1(ctx, spec, opts)?;
    let k_set = cone(&ConeSpec { vertex: spec.omega.clone(), screen: spec.gamma.clone(), base: spec.base.clone() })?;
    let set = ctx.b_map(&k_set)?;
    facts.push(("cone_size".into(), k_set.len().to_string()));
    Ok(Built { set, cone: k_set, facts })
}

/// Frame and base of Construction 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction2Spec {
    pub k: usize,
    /// A `D_{n-k-1}`-subspace.
    pub nu: Subspace,
    /// An `(nt - kt + 1)`-space through `nu`.
    pub pi: Subspace,
    /// An `(nt - kt - 2)`-space of `pi` meeting `nu` in dimension `nt - kt - 4`.
    pub omega: Subspace,
    /// A plane of `pi` skew from `omega`.
    pub gamma: Subspace,
    pub base: PointSet,
}

/// Closed-form part of the size of a Construction 2 set, without `epsilon`.
pub fn construction_2_size_without_epsilon(q: u32, n: usize, t: usize, k: usize, base_len: usize) -> i128 {
    let q = q as i128;
    let e = (n * t - k * t) as u32;
    base_len as i128 * (q.pow(e - 1) - q.pow(e - 3)) + q.pow(e - 2) + q.pow(e - 3)
}

/// Rank of the span of `B(pi)` in the big space.
pub fn b_span_rank(ctx: &SpreadContext, pi: &Subspace) -> Result<usize> {
    let image = ctx.b_map(&ctx.small().points_of(pi))?;
    let rows: Vec<Elem> = image.iter().flat_map(|p| p.into_coords()).collect();
    Ok(ctx.big().subspace_from_rows(rows).rank())
}

pub fn validate_construction_2(ctx: &SpreadContext, spec: &Construction2Spec, opts: &ScanOptions) -> Result<()> {
    let sp = ctx.small();
    let (n, t, k) = (ctx.n(), ctx.t(), spec.k);
    if t < 4 {
        return Err(Error::TExponentTooSmall(t));
    }
    check_k(ctx, k)?;
    for (s, what) in [(&spec.nu, "nu"), (&spec.pi, "Pi"), (&spec.omega, "Omega"), (&spec.gamma, "Gamma")] {
        check_small(ctx, s, what)?;
    }
    if spec.base.space() != sp {
        return Err(Error::AmbientMismatch("base is not in the small space".into()));
    }
    let e = n * t - k * t;
    check_rank(&spec.nu, (n - k) * t, "nu")?;
    if ctx.as_d_subspace(&spec.nu).is_none() {
        return Err(Error::DimensionMismatch("nu is not spanned by spread elements".into()));
    }
    check_rank(&spec.pi, e + 2, "Pi")?;
    check_inside(sp, &spec.pi, &spec.nu, "Pi does not contain nu")?;
    let got = b_span_rank(ctx, &spec.pi)?;
    if got != n - k + 2 {
        return Err(Error::SpanConditionFailed { got, expected: n - k + 2 });
    }
    check_rank(&spec.omega, e - 1, "Omega")?;
    check_inside(sp, &spec.pi, &spec.omega, "Omega is not in Pi")?;
    let on = sp.meet(&spec.omega, &spec.nu)?;
    if on.rank() != e - 3 {
        return Err(Error::DimensionMismatch(format!(
            "Omega meets nu in dimension {}, expected {}",
            on.dim(),
            e as isize - 4
        )));
    }
    check_rank(&spec.gamma, 3, "Gamma")?;
    check_inside(sp, &spec.pi, &spec.gamma, "Gamma is not in Pi")?;
    if sp.meet(&spec.omega, &spec.gamma)?.rank() != 0 {
        return Err(Error::BadFrame("Gamma meets Omega".into()));
    }
    let local = local_base(sp, &spec.base, &spec.gamma)?;
    if spec.base.iter().any(|p| sp.contains_point(&spec.nu, &p)) {
        return Err(Error::BaseMeetsNu);
    }
    if !blocking::is_blocking(&local, 1, opts)?.blocking || !blocking::is_minimal(&local, 1, opts)?.minimal {
        return Err(Error::NotMinimalInput);
    }
    Ok(())
}

pub fn construction_2(ctx: &SpreadContext, spec: &Construction2Spec, opts: &ScanOptions) -> Result<Built> {
    validate_construction_2(ctx, spec, opts)?;
    let (n, t, k) = (ctx.n(), ctx.t(), spec.k);
    let k_set = cone(&ConeSpec { vertex: spec.omega.clone(), screen: spec.gamma.clone(), base: spec.base.clone() })?;
    let set = ctx.b_map(&k_set)?;
    let closed = construction_2_size_without_epsilon(ctx.q(), n, t, k, spec.base.len());
    let epsilon = set.len() as i128 - closed;
    let facts = vec![
        ("cone_size".into(), k_set.len().to_string()),
        ("size_closed_form".into(), closed.to_string()),
        ("epsilon".into(), epsilon.to_string()),
    ];
    Ok(Built { set, cone: k_set, facts })
}

/// Frame and base of the MPS construction in the field-reduced model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpsSpec {
    /// A `D_{n-2}`-subspace.
    pub sigma: Subspace,
    /// An `(nt - t)`-space containing `sigma`.
    pub sigma_prime: Subspace,
    /// A spread element inside `sigma`.
    pub y: Subspace,
    /// A hyperplane of `y`.
    pub omega: Subspace,
    /// An `(nt - 2t + 1)`-subspace of `sigma_prime` skew from `omega`.
    pub gamma_prime: Subspace,
    pub base: PointSet,
}

/// `A` when the base meets `Gamma` in `T`, `B` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpsVariant {
    A,
    B,
}

impl fmt::Display for MpsVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MpsVariant::A => "A",
            MpsVariant::B => "B",
        })
    }
}

/// Derived points and subspaces of a validated MPS frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpsFrame {
    pub gamma: Subspace,
    pub t_point: Subspace,
    pub q_point: Subspace,
    pub variant: MpsVariant,
    pub base_minimal: bool,
}

/// Checks every hypothesis of the MPS construction.
pub fn validate_mps(ctx: &SpreadContext, spec: &MpsSpec, opts: &ScanOptions) -> Result<MpsFrame> {
    let sp = ctx.small();
    let (n, t) = (ctx.n(), ctx.t());
    if n < 2 {
        return Err(Error::DimensionMismatch("the MPS construction needs n >= 2".into()));
    }
    for (s, what) in [
        (&spec.sigma, "Sigma"),
        (&spec.sigma_prime, "Sigma'"),
        (&spec.y, "Y"),
        (&spec.omega, "Omega"),
        (&spec.gamma_prime, "Gamma'"),
    ] {
        check_small(ctx, s, what)?;
    }
    if spec.base.space() != sp {
        return Err(Error::AmbientMismatch("base is not in the small space".into()));
    }
    check_rank(&spec.sigma, (n - 1) * t, "Sigma")?;
    if ctx.as_d_subspace(&spec.sigma).is_none() {
        return Err(Error::DimensionMismatch("Sigma is not spanned by spread elements".into()));
    }
    check_rank(&spec.sigma_prime, n * t - t + 1, "Sigma'")?;
    check_inside(sp, &spec.sigma_prime, &spec.sigma, "Sigma' does not contain Sigma")?;
    check_rank(&spec.y, t, "Y")?;
    if ctx.as_d_subspace(&spec.y).is_none() {
        return Err(Error::DimensionMismatch("Y is not a spread element".into()));
    }
    check_inside(sp, &spec.sigma, &spec.y, "Y is not in Sigma")?;
    check_rank(&spec.omega, t - 1, "Omega")?;
    check_inside(sp, &spec.y, &spec.omega, "Omega is not in Y")?;
    check_rank(&spec.gamma_prime, n * t - 2 * t + 2, "Gamma'")?;
    check_inside(sp, &spec.sigma_prime, &spec.gamma_prime, "Gamma' is not in Sigma'")?;
    if sp.meet(&spec.gamma_prime, &spec.omega)?.rank() != 0 {
        return Err(Error::BadFrame("Gamma' meets Omega".into()));
    }
    let gamma = sp.meet(&spec.gamma_prime, &spec.sigma)?;
    check_rank(&gamma, n * t - 2 * t + 1, "Gamma")?;
    let t_point = sp.meet(&gamma, &spec.y)?;
    check_rank(&t_point, 1, "Gamma meet Y")?;

    if spec.base.iter().any(|p| !sp.contains_point(&spec.gamma_prime, &p)) {
        return Err(Error::BadFrame("base point outside Gamma'".into()));
    }
    let local = sp.restrict(&spec.base, &spec.gamma_prime)?;
    let hyper = spec.gamma_prime.rank() - 2;
    if !blocking::is_blocking(&local, hyper, opts)?.blocking {
        return Err(Error::NotBlocking);
    }
    let on_gamma: Vec<_> = spec.base.iter().filter(|p| sp.contains_point(&gamma, p)).collect();
    if on_gamma.len() != 1 {
        return Err(Error::BaseGammaMeetNotPoint(on_gamma.len()));
    }
    let q_point = sp.point_subspace(&on_gamma[0]);
    // lines of Gamma' through T: none may have all its points but T in the base
    let t_vec = t_point.row(0).to_vec();
    let t_proj = sp.normalize(&t_vec)?;
    for line in sp.subspaces(1, Some(&t_point), DEFAULT_CAP)? {
        if !sp.contains(&spec.gamma_prime, &line) {
            continue;
        }
        let mut all_in = true;
        sp.for_each_point(&line, |v| {
            all_in = all_in && (v == t_proj.coords() || spec.base.contains_coords(v));
        });
        if all_in {
            return Err(Error::BaseLineConditionFailed);
        }
    }
    let variant = if q_point == t_point { MpsVariant::A } else { MpsVariant::B };
    let base_minimal = blocking::is_minimal(&local, hyper, opts)?.minimal;
    Ok(MpsFrame { gamma, t_point, q_point, variant, base_minimal })
}

pub fn construction_mps(ctx: &SpreadContext, spec: &MpsSpec, opts: &ScanOptions) -> Result<Built> {
    let frame = validate_mps(ctx, spec, opts)?;
    let k_set = cone(&ConeSpec {
        vertex: spec.omega.clone(),
        screen: spec.gamma_prime.clone(),
        base: spec.base.clone(),
    })?;
    let set = ctx.b_map(&k_set)?;
    let facts = vec![
        ("variant".into(), frame.variant.to_string()),
        ("base_minimal".into(), yes_no(frame.base_minimal).into()),
        ("cone_size".into(), k_set.len().to_string()),
    ];
    Ok(Built { set, cone: k_set, facts })
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Output of [`decompose`]: the union `tilde` of the spread elements of
/// `B`, and a minimal blocking set `prime` inside it with `B(prime) = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub tilde: PointSet,
    pub prime: PointSet,
}

/// Writes a minimal hyperplane blocking set of the big space as `B(B')`
/// with `B'` minimal w.r.t. `(nt - t - 1)`-spaces.
pub fn decompose(ctx: &SpreadContext, b: &PointSet, opts: &ScanOptions) -> Result<Decomposition> {
    if b.space() != ctx.big() {
        return Err(Error::AmbientMismatch(format!("{:?} is not {:?}", b.space(), ctx.big())));
    }
    let (n, t) = (ctx.n(), ctx.t());
    if n < 2 {
        return Err(Error::DimensionMismatch("decomposition needs n >= 2".into()));
    }
    match blocking::is_minimal(b, n - 2, opts) {
        Ok(v) if v.minimal => {}
        Ok(_) | Err(Error::NotBlocking) => return Err(Error::NotMinimalInput),
        Err(e) => return Err(e),
    }
    let tilde = ctx.expand_set(b)?;
    let d = n * t - t - 1;
    let prime = blocking::minimize(&tilde, d, opts)?;
    if &ctx.b_map(&prime)? != b {
        return Err(Error::SelfCheckFailed("B(B') differs from B".into()));
    }
    if !blocking::is_minimal(&prime, d, opts)?.minimal {
        return Err(Error::SelfCheckFailed("B' is not minimal".into()));
    }
    Ok(Decomposition { tilde, prime })
}
