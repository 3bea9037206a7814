//! `.pmx` and `.vop` text formats and DOT export.
//!
//! ```text
//! pmx 1
//! rank 2
//! flags 6
//! perm 0: 1 0 3 2 5 4
//! perm 1: 5 2 1 4 3 0
//! ```
//!
//! A `.vop` file starts `vop 1`, then `source-rank`, `rank`, `flags`, the
//! `perm` lines and one `volt <i>:` line per color listing the voltage of
//! each dart `(j, i)` as a bracketed word. `#` starts a comment.

use std::fmt::Write as _;

use crate::coxword::{format_letters, parse_letters};
use crate::error::{Error, Result};
use crate::premaniplex::{validate_perms, Premaniplex, ValidationReport};
use crate::voltage::{validate_operator, OperatorReport, VoltageOperator};

/// Parsed but unvalidated `.pmx` contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmxData {
    pub rank: usize,
    pub flag_count: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PmxData {
    pub fn validate(&self) -> ValidationReport {
        validate_perms(self.rank, self.flag_count, &self.perms)
    }
}

/// Parsed but unvalidated `.vop` contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VopData {
    pub source_rank: usize,
    pub y: PmxData,
    /// `volts[color][flag]`, raw letters.
    pub volts: Vec<Vec<Vec<usize>>>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines {
            inner,
            pos: 0,
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self.inner.get(self.pos).copied().ok_or_else(|| {
            parse_error(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )
        })?;
        self.pos += 1;
        self.last = item.0;
        Ok(item)
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next(&format!("`{key}`"))?;
        let rest = line
            .strip_prefix(key)
            .filter(|r| r.starts_with([' ', '\t', ':']))
            .ok_or_else(|| parse_error(n, format!("expected `{key}`, found `{line}`")))?;
        Ok((n, rest.trim()))
    }

    fn number(&mut self, key: &str) -> Result<usize> {
        let (n, rest) = self.keyword(key)?;
        rest.parse().map_err(|_| {
            parse_error(
                n,
                format!("expected a number after `{key}`, found `{rest}`"),
            )
        })
    }

    fn indexed(&mut self, key: &str, index: usize) -> Result<(usize, &'a str)> {
        let (n, rest) = self.keyword(key)?;
        let (idx, body) = rest
            .split_once(':')
            .ok_or_else(|| parse_error(n, format!("expected `{key} {index}:`")))?;
        if idx.trim().parse::<usize>().ok() != Some(index) {
            return Err(parse_error(
                n,
                format!("expected `{key} {index}:`, found `{key} {}:`", idx.trim()),
            ));
        }
        Ok((n, body.trim()))
    }

    fn finish(&self) -> Result<()> {
        match self.inner.get(self.pos) {
            Some(&(n, l)) => Err(parse_error(n, format!("unexpected trailing content `{l}`"))),
            None => Ok(()),
        }
    }
}

fn header(lines: &mut Lines, magic: &str) -> Result<()> {
    let (n, rest) = lines.keyword(magic)?;
    if rest != "1" {
        return Err(parse_error(
            n,
            format!("unsupported {magic} version `{rest}`"),
        ));
    }
    Ok(())
}

fn perm_block(lines: &mut Lines, rank: usize, flag_count: usize) -> Result<Vec<Vec<usize>>> {
    (0..rank)
        .map(|i| {
            let (n, body) = lines.indexed("perm", i)?;
            let perm = body
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| parse_error(n, format!("bad flag `{t}`")))
                })
                .collect::<Result<Vec<usize>>>()?;
            if perm.len() != flag_count {
                return Err(parse_error(
                    n,
                    format!("expected {flag_count} entries, found {}", perm.len()),
                ));
            }
            Ok(perm)
        })
        .collect()
}

fn pmx_body(lines: &mut Lines) -> Result<PmxData> {
    let rank = lines.number("rank")?;
    let flag_count = lines.number("flags")?;
    let perms = perm_block(lines, rank, flag_count)?;
    Ok(PmxData {
        rank,
        flag_count,
        perms,
    })
}

pub fn parse_pmx(text: &str) -> Result<PmxData> {
    let mut lines = Lines::new(text);
    header(&mut lines, "pmx")?;
    let data = pmx_body(&mut lines)?;
    lines.finish()?;
    Ok(data)
}

/// Parses and validates a `.pmx` file.
pub fn read_pmx(text: &str) -> Result<Premaniplex> {
    let data = parse_pmx(text)?;
    if data.rank == 0 || data.flag_count == 0 {
        return Err(Error::InvalidPremaniplex(
            "rank and flag count must be positive".into(),
        ));
    }
    Premaniplex::new(data.perms)
}

fn write_perms(out: &mut String, p: &Premaniplex) {
    for (i, perm) in p.perms().iter().enumerate() {
        let _ = write!(out, "perm {i}:");
        for a in perm {
            let _ = write!(out, " {a}");
        }
        out.push('\n');
    }
}

pub fn write_pmx(p: &Premaniplex) -> String {
    let mut out = format!("pmx 1\nrank {}\nflags {}\n", p.rank(), p.flag_count());
    write_perms(&mut out, p);
    out
}

pub fn parse_vop(text: &str) -> Result<VopData> {
    let mut lines = Lines::new(text);
    header(&mut lines, "vop")?;
    let source_rank = lines.number("source-rank")?;
    let y = pmx_body(&mut lines)?;
    let volts = (0..y.rank)
        .map(|i| {
            let (n, body) = lines.indexed("volt", i)?;
            let words = split_words(body).map_err(|m| parse_error(n, m))?;
            if words.len() != y.flag_count {
                return Err(parse_error(
                    n,
                    format!("expected {} voltages, found {}", y.flag_count, words.len()),
                ));
            }
            words
                .iter()
                .map(|w| parse_letters(w).map_err(|e| parse_error(n, e.to_string())))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    Ok(VopData {
        source_rank,
        y,
        volts,
    })
}

fn split_words(body: &str) -> std::result::Result<Vec<&str>, String> {
    let mut words = Vec::new();
    let mut rest = body.trim_start();
    while !rest.is_empty() {
        if !rest.starts_with('[') {
            return Err(format!("expected `[`, found `{rest}`"));
        }
        let end = rest.find(']').ok_or("unterminated word")?;
        words.push(&rest[..=end]);
        rest = rest[end + 1..].trim_start();
    }
    Ok(words)
}

impl VopData {
    /// Structural checks on `Y` then the dart conditions.
    pub fn validate(&self) -> (ValidationReport, Option<OperatorReport>) {
        let report = self.y.validate();
        if !report.is_valid() || self.y.rank == 0 || self.y.flag_count == 0 {
            return (report, None);
        }
        let y = Premaniplex::new(self.y.perms.clone()).expect("validated");
        let words = self
            .volts
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| crate::coxword::normal_form(l, self.source_rank))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>();
        let op_report = match words {
            Ok(words) => validate_operator(self.source_rank, &y, &words),
            Err(e) => OperatorReport {
                violations: vec![crate::voltage::OperatorViolation::Shape(e.to_string())],
            },
        };
        (report, Some(op_report))
    }
}

/// Parses a `.vop` file and enforces [`validate_operator`].
pub fn read_vop(text: &str) -> Result<VoltageOperator> {
    let data = parse_vop(text)?;
    if data.y.rank == 0 || data.y.flag_count == 0 {
        return Err(Error::InvalidOperator(
            "rank and flag count must be positive".into(),
        ));
    }
    let y = Premaniplex::new(data.y.perms)?;
    VoltageOperator::from_letters(data.source_rank, y, &data.volts)
}

pub fn write_vop(op: &VoltageOperator) -> String {
    let y = op.premaniplex();
    let mut out = format!(
        "vop 1\nsource-rank {}\nrank {}\nflags {}\n",
        op.source_rank(),
        y.rank(),
        y.flag_count()
    );
    write_perms(&mut out, y);
    for (i, row) in op.voltages().iter().enumerate() {
        let _ = write!(out, "volt {i}:");
        for w in row {
            let _ = write!(out, " {}", format_letters(w.letters()));
        }
        out.push('\n');
    }
    out
}

/// Undirected DOT graph: one node per flag in ascending order, then edges
/// color by color, each edge once from its lower endpoint. Semi-edges are
/// self-loops drawn dashed.
pub fn to_dot(p: &Premaniplex) -> String {
    let mut out = String::from("graph premaniplex {\n");
    for x in 0..p.flag_count() {
        let _ = writeln!(out, "  {x};");
    }
    for i in 0..p.rank() {
        for x in 0..p.flag_count() {
            let y = p.adj(x, i);
            if y == x {
                let _ = writeln!(out, "  {x} -- {x} [label={i}, style=dashed];");
            } else if x < y {
                let _ = writeln!(out, "  {x} -- {y} [label={i}];");
            }
        }
    }
    out.push_str("}\n");
    out
}
