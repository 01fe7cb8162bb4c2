//! Line-oriented text formats: point-set files, subspace blocks, reports and
//! construction parameter files. Comments start with `#`; blank lines are
//! ignored on input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::blocking::{BlockingReport, Redei};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::pg::{PointSet, ProjPoint, ProjSpace, Subspace};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn join_codes(v: &[Elem]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Comma-separated decimal codes, no whitespace.
pub fn parse_codes(s: &str, line: usize) -> Result<Vec<Elem>> {
    s.split(',')
        .map(|t| {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(line, format!("bad element code {t:?}")));
            }
            t.parse::<Elem>().map_err(|e| parse_err(line, format!("bad element code {t:?}: {e}")))
        })
        .collect()
}

fn key_value<'a>(tok: &'a str, key: &str, line: usize) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=..., found {tok:?}")))
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("bad number {s:?}")))
}

/// Parses `FIELD p=.. h=.. mod=..` optionally followed by any number of
/// `EXT t=.. mod=..` groups.
pub fn parse_field(tokens: &[&str], line: usize) -> Result<Arc<Field>> {
    let mut it = tokens.iter();
    if it.next() != Some(&"FIELD") {
        return Err(parse_err(line, "expected FIELD"));
    }
    let mut next = |key: &str| -> Result<&str> {
        let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {key}=")))?;
        key_value(tok, key, line)
    };
    let p: u32 = parse_num(next("p")?, line)?;
    let h: u32 = parse_num(next("h")?, line)?;
    let m = parse_codes(next("mod")?, line)?;
    let mut field = Field::new(p, h, Some(&m))?;
    while let Some(tok) = it.next() {
        if *tok != "EXT" {
            return Err(parse_err(line, format!("unexpected {tok:?}")));
        }
        let t = it.next().ok_or_else(|| parse_err(line, "missing t="))?;
        let t: u32 = parse_num(key_value(t, "t", line)?, line)?;
        let m = it.next().ok_or_else(|| parse_err(line, "missing mod="))?;
        let m = parse_codes(key_value(m, "mod", line)?, line)?;
        field = Field::extend(&field, t, Some(&m))?;
    }
    Ok(field)
}

/// `PG m=<dim> FIELD ...`
pub fn space_header(space: &ProjSpace) -> String {
    format!("PG m={} {}", space.dim(), space.field().descriptor())
}

fn parse_space_header(line: &str, lineno: usize) -> Result<ProjSpace> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 2 || toks[0] != "PG" {
        return Err(parse_err(lineno, "expected a `PG m=... FIELD ...` header"));
    }
    let m: usize = parse_num(key_value(toks[1], "m", lineno)?, lineno)?;
    let field = parse_field(&toks[2..], lineno)?;
    ProjSpace::new(m, field)
}

/// Meaningful lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim_end();
        (!l.is_empty() && !l.starts_with('#')).then_some((i + 1, l))
    })
}

pub fn write_point_set(set: &PointSet) -> String {
    let mut out = space_header(set.space());
    out.push('\n');
    for p in set.iter() {
        out.push_str(&join_codes(p.coords()));
        out.push('\n');
    }
    out
}

pub fn read_point_set(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (n, header) = lines.next().ok_or_else(|| parse_err(0, "empty point-set file"))?;
    let space = parse_space_header(header, n)?;
    let mut set = PointSet::new(space.clone());
    for (n, l) in lines {
        let v = parse_codes(l, n)?;
        if v.len() != space.ncols() {
            return Err(parse_err(n, format!("{} coordinates, expected {}", v.len(), space.ncols())));
        }
        for &c in &v {
            space.field().check(c as u64).map_err(|e| parse_err(n, e.to_string()))?;
        }
        set.insert_vec(&v).map_err(|e| parse_err(n, e.to_string()))?;
    }
    Ok(set)
}

/// `SUBSPACE rank=r` followed by the canonical basis rows.
pub fn write_subspace(s: &Subspace) -> String {
    let mut out = format!("SUBSPACE rank={}\n", s.rank());
    for i in 0..s.rank() {
        out.push_str(&join_codes(s.row(i)));
        out.push('\n');
    }
    out
}

/// Reads a subspace block starting at `lines[at]`; returns the subspace and
/// the index after the block.
fn read_subspace_at(space: &ProjSpace, lines: &[(usize, &str)], at: usize) -> Result<(Subspace, usize)> {
    let (n, head) = lines[at];
    let rank: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["SUBSPACE", r] => parse_num(key_value(r, "rank", n)?, n)?,
        _ => return Err(parse_err(n, "expected `SUBSPACE rank=r`")),
    };
    let mut rows = Vec::new();
    for k in 0..rank {
        let (n, l) = *lines.get(at + 1 + k).ok_or_else(|| parse_err(n, "subspace block ends early"))?;
        let v = parse_codes(l, n)?;
        if v.len() != space.ncols() {
            return Err(parse_err(n, format!("{} coordinates, expected {}", v.len(), space.ncols())));
        }
        rows.extend(v);
    }
    let s = space.subspace(&rows).map_err(|e| parse_err(n, e.to_string()))?;
    if s.rank() != rank {
        return Err(parse_err(n, format!("rows span rank {}, declared {rank}", s.rank())));
    }
    Ok((s, at + 1 + rank))
}

/// A single subspace block (after an optional `PG` header line).
pub fn read_subspace(space: &ProjSpace, text: &str) -> Result<Subspace> {
    let lines: Vec<_> = content_lines(text).filter(|(_, l)| !l.starts_with("PG ")).collect();
    if lines.is_empty() {
        return Err(parse_err(0, "no subspace block"));
    }
    Ok(read_subspace_at(space, &lines, 0)?.0)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Renders a verification report. `header` pairs become `# key: value`
/// lines so that the report records the run configuration.
pub fn write_report(r: &BlockingReport, header: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in header {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "AMBIENT PG({},{})", r.ambient_dim, r.q);
    let _ = writeln!(out, "BLOCKED_DIM {}", r.blocked_dim);
    let _ = writeln!(out, "BLOCKING {}", yes_no(r.blocking));
    let _ = writeln!(out, "MINIMAL {}", yes_no(r.minimal));
    let _ = writeln!(out, "SIZE {}", r.size);
    let _ = writeln!(out, "SMALL {}", yes_no(r.small));
    let _ = writeln!(out, "TRIVIAL {}", yes_no(r.trivial));
    let redei = match r.redei {
        Redei::NotApplicable => "n/a",
        Redei::No => "no",
        Redei::Yes(_) => "yes",
    };
    let _ = writeln!(out, "REDEI {redei}");
    let _ = writeln!(out, "EXPONENT {}", r.exponent);
    let spectrum: Vec<String> = r.spectrum.iter().map(|(v, c)| format!("{v}:{c}")).collect();
    let _ = writeln!(out, "SPECTRUM {}", spectrum.join(","));
    if let Some(s) = &r.unblocked {
        let _ = write!(out, "WITNESS unblocked\n{}", write_subspace(s));
    }
    if let Some(p) = &r.non_essential {
        let _ = writeln!(out, "WITNESS non_essential\nPOINT {}", join_codes(p.coords()));
    }
    if let Some(s) = &r.trivial_witness {
        let _ = write!(out, "WITNESS trivial\n{}", write_subspace(s));
    }
    if let Redei::Yes(h) = &r.redei {
        let _ = write!(out, "WITNESS redei\n{}", write_subspace(h));
    }
    out
}

/// Report fields as `KEY -> value` for the single-line entries.
pub fn report_fields(text: &str) -> BTreeMap<String, String> {
    content_lines(text)
        .filter_map(|(_, l)| l.split_once(' '))
        .filter(|(k, _)| k.chars().all(|c| c.is_ascii_uppercase() || c == '_'))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// The point of a `POINT c0,c1,...` line.
pub fn parse_point(space: &ProjSpace, line: &str, lineno: usize) -> Result<ProjPoint> {
    let rest = line.strip_prefix("POINT ").ok_or_else(|| parse_err(lineno, "expected POINT"))?;
    space.normalize(&parse_codes(rest, lineno)?).map_err(|e| parse_err(lineno, e.to_string()))
}

/// A construction parameter file: `CONSTRUCTION <name>`, `key=value`
/// lines, an optional `FIELD ...` line for the big field, and named frame
/// subspaces given as `FRAME <name>` followed by a subspace block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamFile {
    pub construction: String,
    pub values: BTreeMap<String, String>,
    pub field: Option<Arc<Field>>,
    /// Raw frame blocks: name -> (declared rank, rows).
    pub frames: BTreeMap<String, (usize, Vec<Vec<Elem>>)>,
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<ParamFile> {
        let lines: Vec<_> = content_lines(text).collect();
        let mut pf = ParamFile::default();
        let mut i = 0;
        while i < lines.len() {
            let (n, l) = lines[i];
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[0] {
                "CONSTRUCTION" if toks.len() == 2 => pf.construction = toks[1].to_string(),
                "FIELD" => pf.field = Some(parse_field(&toks, n)?),
                "FRAME" if toks.len() == 2 => {
                    let (hn, head) = *lines.get(i + 1).ok_or_else(|| parse_err(n, "FRAME without a block"))?;
                    let rank: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
                        ["SUBSPACE", r] => parse_num(key_value(r, "rank", hn)?, hn)?,
                        _ => return Err(parse_err(hn, "expected `SUBSPACE rank=r`")),
                    };
                    let mut rows = Vec::new();
                    for k in 0..rank {
                        let (rn, rl) =
                            *lines.get(i + 2 + k).ok_or_else(|| parse_err(hn, "subspace block ends early"))?;
                        rows.push(parse_codes(rl, rn)?);
                    }
                    pf.frames.insert(toks[1].to_string(), (rank, rows));
                    i += 2 + rank;
                    continue;
                }
                _ => {
                    let (k, v) = l.split_once('=').ok_or_else(|| parse_err(n, format!("unrecognized line {l:?}")))?;
                    pf.values.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
            i += 1;
        }
        if pf.construction.is_empty() {
            return Err(parse_err(0, "missing CONSTRUCTION line"));
        }
        Ok(pf)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.values
            .get(key)
            .map(|v| v.parse().map_err(|_| parse_err(0, format!("bad value for {key}: {v:?}"))))
            .transpose()
    }

    /// The named frame as a subspace of `space`.
    pub fn frame(&self, name: &str, space: &ProjSpace) -> Result<Option<Subspace>> {
        let Some((rank, rows)) = self.frames.get(name) else {
            return Ok(None);
        };
        if rows.iter().any(|r| r.len() != space.ncols()) {
            return Err(parse_err(0, format!("frame {name} rows must have {} entries", space.ncols())));
        }
        let s = space.subspace(&rows.concat())?;
        if s.rank() != *rank {
            return Err(parse_err(0, format!("frame {name} rows span rank {}, declared {rank}", s.rank())));
        }
        Ok(Some(s))
    }

    pub fn write(&self) -> String {
        let mut out = format!("CONSTRUCTION {}\n", self.construction);
        if let Some(f) = &self.field {
            let _ = writeln!(out, "{}", f.descriptor());
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k}={v}");
        }
        for (name, (rank, rows)) in &self.frames {
            let _ = writeln!(out, "FRAME {name}\nSUBSPACE rank={rank}");
            for r in rows {
                let _ = writeln!(out, "{}", join_codes(r));
            }
        }
        out
    }

    /// Records a frame subspace.
    pub fn set_frame(&mut self, name: &str, s: &Subspace) {
        let rows = (0..s.rank()).map(|i| s.row(i).to_vec()).collect();
        self.frames.insert(name.to_string(), (s.rank(), rows));
    }
}
