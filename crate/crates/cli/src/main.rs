//! `blockset`: build, verify and decompose blocking sets from the command
//! line. Exit codes: 0 success, 2 validator failure or nothing found, 3
//! instance too large, 64 usage error, 74 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blockset::blocking::{self, ScanOptions};
use blockset::construct::{self, BaseKind, Built, FrameSearch, MpsVariant};
use blockset::format::{self, ParamFile};
use blockset::gf::{field_of_order, ExtensionSpec, Field};
use blockset::pg::{PointSet, ProjSpace, DEFAULT_CAP};
use blockset::spread::{ScatterOutcome, ScatterSearch, SpreadContext};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "blockset", version, about = "Blocking sets in finite projective spaces via field reduction")]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunFlags {
    /// Worker threads for verification scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Seed for every randomized search (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Restarts (frame searches) or candidate extensions (scattered search).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest number of subspaces a single enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
}

impl RunFlags {
    fn scan(&self) -> ScanOptions {
        ScanOptions { cap: self.cap as u128, jobs: self.jobs as usize }
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn frames(&self) -> FrameSearch {
        FrameSearch { seed: self.seed(), budget: self.budget.unwrap_or(FrameSearch::default().budget) }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a blocking set and verify it.
    Construct(ConstructArgs),
    /// Classify a point-set file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Dimension of the subspaces to block (default: hyperplanes).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Write a hyperplane blocking set of PG(n-1, q^t) as B(B').
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Field-reduce a point set (union of spread elements) or a subspace block.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// The input is a `PG` header followed by a `SUBSPACE` block.
        #[arg(long)]
        subspace: bool,
    },
    /// Map a point set of PG(nt-1, q) to B(U) in PG(n-1, q^t).
    Collapse {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: u32,
        /// Extension modulus as comma-separated base-field codes.
        #[arg(long)]
        ext_mod: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a scattered subspace with respect to the Desarguesian spread.
    Scattered {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: u64,
    },
    /// List the planar base blocking sets of PG(2, q).
    Bases {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        kind: Option<BaseKind>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the subspaces of a given dimension of PG(m, q).
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: isize,
        /// Only count subspaces through the subspace in this file.
        #[arg(long)]
        through: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ConstructKind {
    C1,
    C2,
    Mps,
    Cone,
    Linear,
}

impl ConstructKind {
    fn name(self) -> &'static str {
        match self {
            ConstructKind::C1 => "c1",
            ConstructKind::C2 => "c2",
            ConstructKind::Mps => "mps",
            ConstructKind::Cone => "cone",
            ConstructKind::Linear => "linear",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    A,
    B,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    kind: ConstructKind,
    /// Construction parameter file; flags override its values.
    #[arg(long)]
    params: Option<PathBuf>,
    /// The big space is PG(n-1, q^t)
    #[arg(long)]
    n: Option<usize>,
    /// Extension degree
    #[arg(long)]
    t: Option<u32>,
    /// Order of the subfield
    #[arg(long)]
    q: Option<u64>,
    /// Block (k-1)-spaces of PG(n-1, q^t).
    #[arg(long)]
    k: Option<usize>,
    /// A base kind (line, baer, hermitian, triangle) or a point-set file.
    #[arg(long)]
    base: Option<String>,
    /// MPS variant: A places Q = T, B places Q != T.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// MPS: add one point to the base so that it is no longer minimal.
    #[arg(long)]
    extra_point: bool,
    /// Construction 1: skip the two-tangents check and only measure.
    #[arg(long)]
    no_tangent_check: bool,
    /// Linear: use a scattered subspace found by search.
    #[arg(long)]
    scattered: bool,
    /// Cone: ambient dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Cone: rank of the vertex (vertex dimension plus one).
    #[arg(long)]
    vertex_rank: Option<usize>,
    /// Write the constructed point set here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the frame that was used as a parameter file.
    #[arg(long)]
    frame_out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Lib(blockset::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    NotFound(String),
}

impl From<blockset::Error> for Failure {
    fn from(e: blockset::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(blockset::Error::InstanceTooLarge { .. }) => 3,
            Failure::Lib(_) | Failure::NotFound(_) => 2,
            Failure::Usage(_) => 64,
            Failure::Io(..) => 74,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => {
                let dbg = format!("{e:?}");
                let name = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error");
                format!("{name}: {e}")
            }
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Usage(m) => format!("usage: {m}"),
            Failure::NotFound(m) => format!("NotFound: {m}"),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn header(cmd: &str, run: &RunFlags, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut h = vec![
        ("blockset".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("command".to_string(), cmd.to_string()),
        ("seed".to_string(), run.seed().to_string()),
        ("budget".to_string(), run.budget.unwrap_or(default_budget(cmd)).to_string()),
        ("jobs".to_string(), run.jobs.to_string()),
        ("cap".to_string(), run.cap.to_string()),
    ];
    h.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    h
}

fn default_budget(cmd: &str) -> u64 {
    if cmd == "scattered" {
        ScatterSearch::default().budget
    } else {
        FrameSearch::default().budget
    }
}

fn header_text(h: &[(String, String)]) -> String {
    h.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let run = cli.run;
    match cli.command {
        Command::Construct(args) => construct_cmd(&run, args),
        Command::Verify { input, k } => verify_cmd(&run, &input, k),
        Command::Decompose { input, out } => decompose_cmd(&run, &input, out.as_deref()),
        Command::Reduce { input, out, subspace } => reduce_cmd(&run, &input, out.as_deref(), subspace),
        Command::Collapse { input, t, ext_mod, out } => {
            collapse_cmd(&run, &input, t, ext_mod.as_deref(), out.as_deref())
        }
        Command::Scattered { dim, n, t, q } => scattered_cmd(&run, dim, n, t, q),
        Command::Bases { q, kind, out } => bases_cmd(&run, q, kind, out.as_deref()),
        Command::Count { m, q, d, through } => count_cmd(&run, m, q, d, through.as_deref()),
    }
}

fn verify_cmd(run: &RunFlags, input: &Path, k: Option<usize>) -> Outcome {
    let set = format::read_point_set(&read(input)?)?;
    let d = k.unwrap_or(set.space().dim().saturating_sub(1));
    let report = blocking::classify(&set, d, &run.scan())?;
    let h = header(
        "verify",
        run,
        &[("input", input.display().to_string()), ("space", format::space_header(set.space()))],
    );
    Ok(format::write_report(&report, &h))
}

/// The spread context of a point set living in an extension field.
fn context_of(space: &ProjSpace) -> std::result::Result<SpreadContext, Failure> {
    let ext = ExtensionSpec::from_field(space.field().clone())
        .map_err(|_| Failure::Usage("the input field must be an extension (an EXT block in the header)".into()))?;
    Ok(SpreadContext::new(space.ncols(), ext)?)
}

fn context_header(ctx: &SpreadContext) -> Vec<(&'static str, String)> {
    vec![
        ("n", ctx.n().to_string()),
        ("t", ctx.t().to_string()),
        ("q", ctx.q().to_string()),
        ("big", format::space_header(ctx.big())),
        ("small", format::space_header(ctx.small())),
    ]
}

fn decompose_cmd(run: &RunFlags, input: &Path, out: Option<&Path>) -> Outcome {
    let set = format::read_point_set(&read(input)?)?;
    let ctx = context_of(set.space())?;
    let opts = run.scan();
    let d = construct::decompose(&ctx, &set, &opts)?;
    let mut extra = context_header(&ctx);
    extra.insert(0, ("input", input.display().to_string()));
    let mut text = header_text(&header("decompose", run, &extra));
    let _ = writeln!(text, "SIZE {}", set.len());
    let _ = writeln!(text, "TILDE_SIZE {}", d.tilde.len());
    let _ = writeln!(text, "PRIME_SIZE {}", d.prime.len());
    let _ = writeln!(text, "COLLAPSES_TO_INPUT yes");
    let _ = writeln!(text, "PRIME_MINIMAL yes");
    let _ = writeln!(text, "PRIME_BLOCKS_DIM {}", ctx.n() * ctx.t() - ctx.t() - 1);
    if let Some(p) = out {
        write(p, &format::write_point_set(&d.prime))?;
    }
    Ok(text)
}

fn reduce_cmd(run: &RunFlags, input: &Path, out: Option<&Path>, subspace: bool) -> Outcome {
    let text = read(input)?;
    let header_line = text
        .lines()
        .find(|l| l.starts_with("PG "))
        .ok_or_else(|| Failure::Usage("missing PG header".into()))?;
    let space = format::read_point_set(header_line)?.space().clone();
    let ctx = context_of(&space)?;
    let mut extra = context_header(&ctx);
    extra.insert(0, ("input", input.display().to_string()));
    let mut report = header_text(&header("reduce", run, &extra));
    let body = if subspace {
        let s = format::read_subspace(&space, &text)?;
        let red = ctx.field_reduce(&s)?;
        let _ = writeln!(report, "LEVEL {}", red.level);
        format!("{}\n{}", format::space_header(ctx.small()), format::write_subspace(&red.subspace))
    } else {
        let set = format::read_point_set(&text)?;
        let tilde = ctx.expand_set(&set)?;
        let _ = writeln!(report, "SIZE {}", tilde.len());
        format::write_point_set(&tilde)
    };
    match out {
        Some(p) => write(p, &body)?,
        None => report.push_str(&body),
    }
    Ok(report)
}

fn collapse_cmd(run: &RunFlags, input: &Path, t: u32, ext_mod: Option<&str>, out: Option<&Path>) -> Outcome {
    let set = format::read_point_set(&read(input)?)?;
    let ncols = set.space().ncols();
    if t == 0 || ncols % t as usize != 0 {
        return Err(Failure::Usage(format!("t = {t} does not divide the {ncols} coordinates")));
    }
    let m = ext_mod.map(|s| format::parse_codes(s, 0)).transpose()?;
    let ext = ExtensionSpec::new(set.space().field().clone(), t, m.as_deref())?;
    let ctx = SpreadContext::new(ncols / t as usize, ext)?;
    let image = ctx.b_map(&set)?;
    let mut extra = context_header(&ctx);
    extra.insert(0, ("input", input.display().to_string()));
    let mut report = header_text(&header("collapse", run, &extra));
    let _ = writeln!(report, "SIZE {}", image.len());
    let body = format::write_point_set(&image);
    match out {
        Some(p) => write(p, &body)?,
        None => report.push_str(&body),
    }
    Ok(report)
}

fn scattered_cmd(run: &RunFlags, dim: usize, n: usize, t: u32, q: u64) -> Outcome {
    let ctx = SpreadContext::with_orders(n, t, q)?;
    let search = ScatterSearch {
        seed: run.seed(),
        budget: run.budget.unwrap_or(ScatterSearch::default().budget),
        exhaustive_limit: (run.cap as u128).min(ScatterSearch::default().exhaustive_limit),
    };
    let mut text = header_text(&header("scattered", run, &[("dim", dim.to_string())]));
    for (k, v) in context_header(&ctx) {
        let _ = writeln!(text, "# {k}: {v}");
    }
    match ctx.find_scattered(dim, &search)? {
        ScatterOutcome::Found { subspace, restart, exhaustive } => {
            let verdict = ctx.is_scattered(&subspace)?;
            if !verdict.scattered {
                return Err(blockset::Error::SelfCheckFailed("search returned a non-scattered subspace".into()).into());
            }
            let _ = writeln!(text, "SCATTERED yes");
            let _ = writeln!(text, "RESTART {restart}");
            let _ = writeln!(text, "EXHAUSTIVE {}", yes_no(exhaustive));
            text.push_str(&format::write_subspace(&subspace));
            Ok(text)
        }
        ScatterOutcome::NotFound { exhaustive, rank_bound, attempts } => {
            print!("{text}SCATTERED no\nEXHAUSTIVE {}\nRANK_BOUND {}\nATTEMPTS {attempts}\n", yes_no(exhaustive), yes_no(rank_bound));
            let why = match (exhaustive, rank_bound) {
                (true, true) => "exhaustive (rank bound)",
                (true, false) => "exhaustive",
                (false, _) => "search budget spent",
            };
            Err(Failure::NotFound(why.into()))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bases_cmd(run: &RunFlags, q: u64, kind: Option<BaseKind>, out: Option<&Path>) -> Outcome {
    let field = field_of_order(q)?;
    let opts = run.scan();
    let mut text = header_text(&header("bases", run, &[("field", field.descriptor())]));
    let kinds = match kind {
        Some(k) => vec![k],
        None => vec![BaseKind::Line, BaseKind::Baer, BaseKind::Hermitian, BaseKind::Triangle],
    };
    if out.is_some() && kind.is_none() {
        return Err(Failure::Usage("--out needs --kind".into()));
    }
    for k in kinds {
        match construct::planar_base(k, &field, &opts) {
            Ok(b) => {
                let lo = b.tangents.iter().min().copied().unwrap_or(0);
                let hi = b.tangents.iter().max().copied().unwrap_or(0);
                let _ = writeln!(text, "BASE {k} SIZE {} TANGENTS {lo}..{hi}", b.points.len());
                if let Some(p) = out {
                    write(p, &format::write_point_set(&b.points))?;
                }
            }
            Err(blockset::Error::FieldShapeMismatch(why)) if kind.is_none() => {
                let _ = writeln!(text, "BASE {k} UNAVAILABLE {why}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(text)
}

fn count_cmd(run: &RunFlags, m: usize, q: u64, d: isize, through: Option<&Path>) -> Outcome {
    let space = ProjSpace::new(m, field_of_order(q)?)?;
    let w = through.map(|p| read(p).and_then(|t| Ok(format::read_subspace(&space, &t)?))).transpose()?;
    let count = space.subspace_count(d, w.as_ref())?;
    let mut text = header_text(&header("count", run, &[("space", format::space_header(&space))]));
    let _ = writeln!(text, "COUNT {count}");
    Ok(text)
}

/// Resolved construction parameters: flags first, then the parameter file.
struct Resolved {
    file: Option<(ParamFile, PathBuf)>,
    args: ConstructArgs,
}

impl Resolved {
    fn value<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> std::result::Result<Option<T>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        match &self.file {
            Some((pf, _)) => Ok(pf.get(key)?),
            None => Ok(None),
        }
    }

    fn need<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> std::result::Result<T, Failure> {
        self.value(flag, key)?.ok_or_else(|| Failure::Usage(format!("--{} is required", key.replace('_', "-"))))
    }

    fn frame(&self, name: &str, space: &ProjSpace) -> std::result::Result<Option<blockset::pg::Subspace>, Failure> {
        match &self.file {
            Some((pf, _)) => Ok(pf.frame(name, space)?),
            None => Ok(None),
        }
    }

    /// `base=` as a planar kind, or a point-set file.
    fn base(&self, field: &std::sync::Arc<Field>, opts: &ScanOptions) -> std::result::Result<PointSet, Failure> {
        let spec: String = self.need(self.args.base.clone(), "base")?;
        if let Ok(kind) = spec.parse::<BaseKind>() {
            return Ok(construct::planar_base(kind, field, opts)?.points);
        }
        let path = match (&self.file, self.args.base.is_some()) {
            (Some((_, dir)), false) => dir.join(&spec),
            _ => PathBuf::from(&spec),
        };
        Ok(format::read_point_set(&read(&path)?)?)
    }
}

fn construct_cmd(run: &RunFlags, args: ConstructArgs) -> Outcome {
    let file = match &args.params {
        Some(p) => {
            let pf = ParamFile::parse(&read(p)?)?;
            if pf.construction != args.kind.name() {
                return Err(Failure::Usage(format!(
                    "parameter file describes {:?}, not {}",
                    pf.construction,
                    args.kind.name()
                )));
            }
            let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
            Some((pf, dir))
        }
        None => None,
    };
    let r = Resolved { file, args };
    let mut run = run.clone();
    if r.args.params.is_some() {
        // seed and budget from the file unless given on the command line
        if run.seed.is_none() {
            run.seed = r.value(None, "seed")?;
        }
        if run.budget.is_none() {
            run.budget = r.value(None, "budget")?;
        }
    }
    let opts = run.scan();
    if r.args.kind == ConstructKind::Cone {
        return cone_cmd(&run, &r, &opts);
    }
    let n: usize = r.need(r.args.n, "n")?;
    let t: u32 = r.need(r.args.t, "t")?;
    let q: u64 = r.need(r.args.q, "q")?;
    let ctx = match &r.file {
        Some((ParamFile { field: Some(f), .. }, _)) => SpreadContext::new(n, ExtensionSpec::from_field(f.clone())?)?,
        _ => SpreadContext::with_orders(n, t, q)?,
    };
    if ctx.t() != t as usize || ctx.q() as u64 != q {
        return Err(Failure::Usage("FIELD block disagrees with t and q".into()));
    }
    let sp = ctx.small().clone();
    let mut frame = ParamFile { construction: r.args.kind.name().into(), ..Default::default() };
    frame.field = Some(ctx.big().field().clone());
    for (k, v) in [("n", n.to_string()), ("t", t.to_string()), ("q", q.to_string())] {
        frame.values.insert(k.into(), v);
    }
    let (built, d) = match r.args.kind {
        ConstructKind::Linear => {
            let k: usize = r.need(r.args.k, "k")?;
            let pi = match r.frame("pi", &sp)? {
                Some(pi) => pi,
                None if r.args.scattered => {
                    let search = ScatterSearch {
                        seed: run.seed(),
                        budget: run.budget.unwrap_or(ScatterSearch::default().budget),
                        ..Default::default()
                    };
                    match ctx.find_scattered(n * t as usize - k * t as usize, &search)? {
                        ScatterOutcome::Found { subspace, .. } => subspace,
                        ScatterOutcome::NotFound { .. } => {
                            return Err(Failure::NotFound("no scattered subspace of that dimension".into()))
                        }
                    }
                }
                None => construct::random_linear_frame(&ctx, k, run.seed())?,
            };
            frame.values.insert("k".into(), k.to_string());
            frame.set_frame("pi", &pi);
            let set = construct::linear_bs(&ctx, &pi, k)?;
            let facts = vec![("rank".into(), pi.rank().to_string())];
            (Built { cone: sp.points_of(&pi), set, facts }, k - 1)
        }
        ConstructKind::C1 => {
            let k: usize = r.need(r.args.k, "k")?;
            let base = r.base(sp.field(), &opts)?;
            let check = !r.args.no_tangent_check;
            let spec = match (r.frame("omega", &sp)?, r.frame("gamma", &sp)?) {
                (Some(omega), Some(gamma)) => {
                    let base = placed_base(&base, &sp)?;
                    construct::Construction1 { k, omega, gamma, base, check_tangents: check }
                }
                _ => construct::search_construction_1(&ctx, k, &base, check, &run.frames(), &opts)?.0,
            };
            frame.values.insert("k".into(), k.to_string());
            frame.set_frame("omega", &spec.omega);
            frame.set_frame("gamma", &spec.gamma);
            write_base(&r, &mut frame, &spec.base)?;
            (construct::construction_1(&ctx, &spec, &opts)?, k - 1)
        }
        ConstructKind::C2 => {
            let k: usize = r.need(r.args.k, "k")?;
            let base = r.base(sp.field(), &opts)?;
            let names = ["nu", "pi", "omega", "gamma"];
            let given: Vec<_> = names.iter().map(|n| r.frame(n, &sp)).collect::<Result<_, _>>()?;
            let spec = if given.iter().all(Option::is_some) {
                let mut g = given.into_iter().map(Option::unwrap);
                construct::Construction2Spec {
                    k,
                    nu: g.next().unwrap(),
                    pi: g.next().unwrap(),
                    omega: g.next().unwrap(),
                    gamma: g.next().unwrap(),
                    base: placed_base(&base, &sp)?,
                }
            } else {
                construct::search_construction_2(&ctx, k, &base, &run.frames(), &opts)?.0
            };
            frame.values.insert("k".into(), k.to_string());
            for (name, s) in names.iter().zip([&spec.nu, &spec.pi, &spec.omega, &spec.gamma]) {
                frame.set_frame(name, s);
            }
            write_base(&r, &mut frame, &spec.base)?;
            (construct::construction_2(&ctx, &spec, &opts)?, k - 1)
        }
        ConstructKind::Mps => {
            let base = r.base(sp.field(), &opts)?;
            let variant = match r.args.variant {
                Some(VariantArg::B) => MpsVariant::B,
                Some(VariantArg::A) => MpsVariant::A,
                None => match r.value::<String>(None, "variant")?.as_deref() {
                    Some("B") | Some("b") => MpsVariant::B,
                    _ => MpsVariant::A,
                },
            };
            let names = ["sigma", "sigma_prime", "y", "omega", "gamma_prime"];
            let given: Vec<_> = names.iter().map(|n| r.frame(n, &sp)).collect::<Result<_, _>>()?;
            let mut spec = if given.iter().all(Option::is_some) {
                let mut g = given.into_iter().map(Option::unwrap);
                construct::MpsSpec {
                    sigma: g.next().unwrap(),
                    sigma_prime: g.next().unwrap(),
                    y: g.next().unwrap(),
                    omega: g.next().unwrap(),
                    gamma_prime: g.next().unwrap(),
                    base: placed_base(&base, &sp)?,
                }
            } else {
                construct::search_mps(&ctx, &base, variant, &run.frames(), &opts)?.0
            };
            if r.args.extra_point {
                spec = construct::with_extra_base_point(&ctx, &spec, &opts)?;
            }
            for (name, s) in
                names.iter().zip([&spec.sigma, &spec.sigma_prime, &spec.y, &spec.omega, &spec.gamma_prime])
            {
                frame.set_frame(name, s);
            }
            frame.values.insert("variant".into(), variant.to_string());
            write_base(&r, &mut frame, &spec.base)?;
            (construct::construction_mps(&ctx, &spec, &opts)?, n - 2)
        }
        ConstructKind::Cone => unreachable!("handled above"),
    };
    let report = blocking::classify(&built.set, d, &opts)?;
    let mut extra = context_header(&ctx);
    extra.push(("construction", r.args.kind.name().into()));
    if let Some(b) = r.value::<String>(r.args.base.clone(), "base")? {
        extra.push(("base", b));
    }
    let mut text = String::new();
    for (k, v) in &built.facts {
        let _ = writeln!(text, "FACT {k} {v}");
    }
    let mut out = format::write_report(&report, &header("construct", &run, &extra));
    out.push_str(&text);
    if let Some(p) = &r.args.out {
        write(p, &format::write_point_set(&built.set))?;
    }
    if let Some(p) = &r.args.frame_out {
        frame.values.insert("seed".into(), run.seed().to_string());
        write(p, &frame.write())?;
    }
    Ok(out)
}

/// A base already placed in the small space (for fixed frames).
fn placed_base(base: &PointSet, sp: &ProjSpace) -> std::result::Result<PointSet, Failure> {
    if base.space() != sp {
        return Err(Failure::Usage(format!("a fixed frame needs a base file in {}", format::space_header(sp))));
    }
    Ok(base.clone())
}

/// Stores the placed base next to the frame file and references it.
fn write_base(r: &Resolved, frame: &mut ParamFile, base: &PointSet) -> std::result::Result<(), Failure> {
    if let Some(p) = &r.args.frame_out {
        let mut name = p.file_name().map(|s| s.to_os_string()).unwrap_or_default();
        name.push(".base.pts");
        let path = p.with_file_name(&name);
        write(&path, &format::write_point_set(base))?;
        frame.values.insert("base".into(), name.to_string_lossy().into_owned());
    }
    Ok(())
}

fn cone_cmd(run: &RunFlags, r: &Resolved, opts: &ScanOptions) -> Outcome {
    let q: u64 = r.need(r.args.q, "q")?;
    let vr: usize = r.value(r.args.vertex_rank, "vertex_rank")?.unwrap_or(1);
    let dim: usize = r.value(r.args.dim, "dim")?.unwrap_or(vr + 2);
    let space = ProjSpace::new(dim, field_of_order(q)?)?;
    let base = r.base(space.field(), opts)?;
    let spec = construct::random_cone_spec(&space, vr, &base, run.seed())?;
    let k = construct::cone(&spec)?;
    let report = blocking::classify(&k, 1.min(dim - 1), opts)?;
    let extra = [
        ("space", format::space_header(&space)),
        ("construction", "cone".to_string()),
        ("vertex_rank", vr.to_string()),
    ];
    let mut out = format::write_report(&report, &header("construct", run, &extra));
    let _ = writeln!(out, "FACT cone_size_formula {}", construct::cone_size(space.q(), vr, base.len()));
    if let Some(p) = &r.args.out {
        write(p, &format::write_point_set(&k))?;
    }
    Ok(out)
}
