use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use blockset::construct::{planar_base, BaseKind};
use blockset::format;
use blockset::blocking::ScanOptions;
use blockset::spread::SpreadContext;

fn blockset(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockset")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fields(o: &Output) -> std::collections::BTreeMap<String, String> {
    format::report_fields(&stdout(o))
}

#[test]
fn verify_line_of_pg29() {
    let dir = tempfile::tempdir().unwrap();
    let o = blockset(&["bases", "--q", "9", "--kind", "line", "--out", "line.pts"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let o = blockset(&["verify", "--k", "1", "--in", "line.pts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let f = fields(&o);
    assert_eq!(f["BLOCKING"], "yes");
    assert_eq!(f["MINIMAL"], "yes");
    assert_eq!(f["TRIVIAL"], "yes");
    assert_eq!(f["SIZE"], "10");
}

#[test]
fn construct_mps_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "mps", "--n", "3", "--t", "2", "--q", "3", "--seed", "7", "--base", "triangle"];
    let o = blockset(&[&args[..], &["--out", "mps.pts"]].concat(), dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fields(&o)["MINIMAL"], "yes");
    let text = fs::read_to_string(dir.path().join("mps.pts")).unwrap();
    let set = format::read_point_set(&text).unwrap();
    assert_eq!(set.len(), 16);
    assert_eq!(format::write_point_set(&set), text);
    let again = blockset(&args, dir.path());
    assert_eq!(stdout(&again), stdout(&o));
    let fat = blockset(&[&args[..], &["--extra-point"]].concat(), dir.path());
    assert!(fat.status.success(), "{}", stderr(&fat));
    assert_eq!(fields(&fat)["BLOCKING"], "yes");
    assert_eq!(fields(&fat)["MINIMAL"], "no");
}

#[test]
fn scattered_rank_bound_is_not_found() {
    let dir = tempfile::tempdir().unwrap();
    let o = blockset(&["scattered", "--dim", "3", "--n", "3", "--t", "2", "--q", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotFound"));
    assert_eq!(fields(&o)["RANK_BOUND"], "yes");
    assert_eq!(fields(&o)["EXHAUSTIVE"], "yes");
    let o = blockset(&["scattered", "--dim", "1", "--n", "2", "--t", "2", "--q", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SCATTERED yes\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(blockset(&["frobnicate"], dir.path()).status.code(), Some(64));
    assert_eq!(blockset(&["verify"], dir.path()).status.code(), Some(64));
    assert_eq!(blockset(&["--jobs", "0", "count", "--m", "2", "--q", "2", "--d", "1"], dir.path()).status.code(), Some(64));
    assert_eq!(blockset(&["verify", "--in", "missing.pts"], dir.path()).status.code(), Some(74));
    assert_eq!(blockset(&["--help"], dir.path()).status.code(), Some(0));
    let o = blockset(&["bases", "--q", "16", "--kind", "line", "--out", "l16.pts"], dir.path());
    assert!(o.status.success());
    let o = blockset(&["--cap", "100", "verify", "--in", "l16.pts"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = blockset(&["construct", "c1", "--n", "3", "--t", "2", "--q", "4", "--k", "2", "--base", "hermitian"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TangentConditionFailed"), "{}", stderr(&o));
    let o = blockset(&["construct", "c2", "--n", "3", "--t", "3", "--q", "2", "--k", "2", "--base", "line"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TExponentTooSmall"));
}

#[test]
fn count_subspaces() {
    let dir = tempfile::tempdir().unwrap();
    let o = blockset(&["count", "--m", "2", "--q", "16", "--d", "1"], dir.path());
    assert_eq!(fields(&o)["COUNT"], "273");
    let o = blockset(&["count", "--m", "5", "--q", "2", "--d", "3"], dir.path());
    assert_eq!(fields(&o)["COUNT"], "651");
    fs::write(dir.path().join("p.sub"), "SUBSPACE rank=1\n1,0,0,0,0,0\n").unwrap();
    let o = blockset(&["count", "--m", "5", "--q", "2", "--d", "3", "--through", "p.sub"], dir.path());
    assert_eq!(fields(&o)["COUNT"], "155");
}

#[test]
fn frame_file_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = blockset(
        &[
            "construct", "c1", "--n", "3", "--t", "2", "--q", "4", "--k", "2", "--base", "baer", "--seed", "3", "--out",
            "a.pts", "--frame-out", "c1.frame",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fields(&o)["MINIMAL"], "yes");
    let o = blockset(&["construct", "c1", "--params", "c1.frame", "--out", "b.pts"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let a = fs::read_to_string(dir.path().join("a.pts")).unwrap();
    let b = fs::read_to_string(dir.path().join("b.pts")).unwrap();
    assert_eq!(a, b);
    let o = blockset(&["construct", "mps", "--params", "c1.frame"], dir.path());
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn jobs_do_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "c1", "--n", "3", "--t", "2", "--q", "4", "--k", "2", "--base", "baer"];
    let one = stdout(&blockset(&args, dir.path()));
    let four = stdout(&blockset(&[&["--jobs", "4"], &args[..]].concat(), dir.path()));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("# jobs")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&one), strip(&four));
}

#[test]
fn reduce_collapse_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = SpreadContext::with_orders(3, 2, 2).unwrap();
    let h = planar_base(BaseKind::Hermitian, ctx.big().field(), &ScanOptions::default()).unwrap();
    fs::write(dir.path().join("herm.pts"), format::write_point_set(&h.points)).unwrap();

    let o = blockset(&["reduce", "--in", "herm.pts", "--out", "tilde.pts"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fields(&o)["SIZE"], "27");
    let o = blockset(&["collapse", "--in", "tilde.pts", "--t", "2", "--out", "back.pts"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let back = fs::read_to_string(dir.path().join("back.pts")).unwrap();
    assert_eq!(back, format::write_point_set(&h.points));

    let o = blockset(&["decompose", "--in", "herm.pts", "--out", "prime.pts"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fields(&o)["TILDE_SIZE"], "27");
    let prime = format::read_point_set(&fs::read_to_string(dir.path().join("prime.pts")).unwrap()).unwrap();
    assert_eq!(ctx.b_map(&prime).unwrap(), h.points);

    fs::write(dir.path().join("line.sub"), format!("{}\nSUBSPACE rank=2\n1,0,0\n0,1,0\n", format::space_header(ctx.big())))
        .unwrap();
    let o = blockset(&["reduce", "--subspace", "--in", "line.sub"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("LEVEL 2\n"));
    assert!(stdout(&o).contains("SUBSPACE rank=4\n"));

    // GF(4) over GF(2) is an extension; a prime field is not
    let o = blockset(&["bases", "--q", "4", "--kind", "line", "--out", "l4.pts"], dir.path());
    assert!(o.status.success());
    let o = blockset(&["decompose", "--in", "l4.pts"], dir.path());
    assert_eq!(fields(&o)["TILDE_SIZE"], "15");
    let o = blockset(&["bases", "--q", "5", "--kind", "line", "--out", "l5.pts"], dir.path());
    assert!(o.status.success());
    assert_eq!(blockset(&["decompose", "--in", "l5.pts"], dir.path()).status.code(), Some(64));
}

#[test]
fn cone_and_linear() {
    let dir = tempfile::tempdir().unwrap();
    let o = blockset(&["construct", "cone", "--q", "3", "--base", "triangle", "--seed", "5"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fields(&o)["SIZE"], "19");
    assert_eq!(fields(&o)["MINIMAL"], "yes");
    let o = blockset(
        &["construct", "linear", "--n", "3", "--t", "2", "--q", "4", "--k", "2", "--scattered", "--seed", "1"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let f = fields(&o);
    assert_eq!(f["SIZE"], "21");
    assert_eq!(f["SMALL"], "yes");
    assert_eq!(f["MINIMAL"], "yes");
}
