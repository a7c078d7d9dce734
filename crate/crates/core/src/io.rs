//! Text formats: `.dgt` table files and `.tds` construction files.
//!
//! ```text
//! # optional comments
//! digroup 2
//! 0 1
//! 1 0
//! ;
//! 0 1
//! 1 0
//! ```
//!
//! ```text
//! gamma 2
//! delta 2
//! base 0
//! gen 1 0
//! theta 1 0
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::digroup::{Digroup, OpTable, StructureError};
use crate::perm::{PermError, Permutation};
use crate::transform::{TransDigroup, TransDigroupSpec, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based numbers; comment bodies are collected.
fn content_lines<'a>(text: &'a str, comments: &mut Vec<String>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if let Some(body) = t.strip_prefix('#') {
            comments.push(body.strip_prefix(' ').unwrap_or(body).to_string());
        } else if !t.is_empty() {
            out.push((i + 1, t));
        }
    }
    out
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        err(
            line,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

fn parse_row(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|t| parse_usize(line, t))
        .collect()
}

/// Contents of a `.dgt` file. The tables need not satisfy the digroup axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgtFile {
    pub left: OpTable,
    pub right: OpTable,
    pub comments: Vec<String>,
}

impl DgtFile {
    pub fn from_digroup(d: &Digroup) -> Self {
        DgtFile {
            left: d.left_table().clone(),
            right: d.right_table().clone(),
            comments: Vec::new(),
        }
    }

    /// Tables of a construction, with a comment per element giving its l-map.
    pub fn from_construction(t: &TransDigroup) -> Self {
        let mut file = Self::from_digroup(&t.digroup);
        let spec = &t.spec;
        file.comments.push(format!(
            "l-maps over gamma {} delta {} base {}",
            spec.gamma_size(),
            spec.delta_size(),
            spec.base_point()
        ));
        for (x, l) in t.elements.iter().enumerate() {
            file.comments.push(format!("{x} = {l}"));
        }
        file
    }

    pub fn order(&self) -> usize {
        self.left.n()
    }

    pub fn into_digroup(self) -> Result<Digroup, crate::digroup::DigroupError> {
        Digroup::new(self.left, self.right)
    }
}

fn read_table<'a>(
    n: usize,
    which: &str,
    it: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<OpTable, ParseError> {
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        let (ln, text) = it
            .next()
            .ok_or_else(|| err(0, format!("{which} table ends after {r} of {n} rows")))?;
        if text == ";" {
            return Err(err(ln, format!("{which} table has only {r} of {n} rows")));
        }
        let row = parse_row(ln, text)?;
        if row.len() != n {
            return Err(err(
                ln,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(err(ln, format!("entry {v} is outside 0..{n}")));
        }
        entries.extend(row);
    }
    OpTable::new(n, entries).map_err(|e: StructureError| err(0, e.to_string()))
}

pub fn parse_dgt(text: &str) -> Result<DgtFile, ParseError> {
    let mut comments = Vec::new();
    let lines = content_lines(text, &mut comments);
    let mut it = lines.into_iter();
    let (hl, header) = it
        .next()
        .ok_or_else(|| err(0, "empty file, expected `digroup <n>`"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["digroup", n] => parse_usize(hl, n)?,
        _ => return Err(err(hl, format!("expected `digroup <n>`, found `{header}`"))),
    };
    if n == 0 {
        return Err(err(hl, "order must be at least 1"));
    }
    let left = read_table(n, "left", &mut it)?;
    match it.next() {
        Some((_, ";")) => {}
        Some((ln, other)) => return Err(err(ln, format!("expected `;`, found `{other}`"))),
        None => return Err(err(0, "missing `;` and right table")),
    }
    let right = read_table(n, "right", &mut it)?;
    if let Some((ln, extra)) = it.next() {
        return Err(err(
            ln,
            format!("unexpected content after the right table: `{extra}`"),
        ));
    }
    Ok(DgtFile {
        left,
        right,
        comments,
    })
}

fn write_table(out: &mut String, t: &OpTable) {
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

pub fn format_dgt(file: &DgtFile) -> String {
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "digroup {}", file.order());
    write_table(&mut out, &file.left);
    out.push_str(";\n");
    write_table(&mut out, &file.right);
    out
}

/// How permutations are written in a `.tds` file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PermNotation {
    /// Images of `0, 1, ...` separated by spaces: `1 0` is a swap.
    #[default]
    OneLine,
    /// `(0 1)(2 3)`, with `()` for the identity.
    Cycles,
}

impl PermNotation {
    fn parse(self, line: usize, degree: usize, text: &str) -> Result<Permutation, ParseError> {
        let wrap = |e: PermError| err(line, e.to_string());
        match self {
            PermNotation::OneLine => {
                let images = parse_row(line, text)?;
                if images.len() != degree {
                    return Err(err(
                        line,
                        format!("permutation needs {degree} images, found {}", images.len()),
                    ));
                }
                Permutation::new(images).map_err(wrap)
            }
            PermNotation::Cycles => Permutation::parse_cycles(degree, text).map_err(wrap),
        }
    }

    fn format(self, p: &Permutation) -> String {
        match self {
            PermNotation::OneLine => {
                let parts: Vec<String> = p.images().iter().map(|x| x.to_string()).collect();
                parts.join(" ")
            }
            PermNotation::Cycles => p.to_cycle_string(),
        }
    }
}

/// Contents of a `.tds` file: the data of a transformation digroup, with `theta`
/// given on generators only and not yet checked to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdsFile {
    pub gamma: usize,
    pub delta: usize,
    pub base: usize,
    /// `(generator of G, its image under theta)`.
    pub gens: Vec<(Permutation, Permutation)>,
    pub comments: Vec<String>,
}

impl TdsFile {
    pub fn from_spec(spec: &TransDigroupSpec) -> Self {
        TdsFile {
            gamma: spec.gamma_size(),
            delta: spec.delta_size(),
            base: spec.base_point(),
            gens: spec
                .group()
                .generators()
                .iter()
                .cloned()
                .zip(spec.generator_images())
                .collect(),
            comments: Vec::new(),
        }
    }

    /// Closes the generators into `G` and extends `theta`, rejecting non-homomorphisms.
    pub fn to_spec(&self) -> Result<TransDigroupSpec, TransformError> {
        let (gens, images): (Vec<_>, Vec<_>) = self.gens.iter().cloned().unzip();
        TransDigroupSpec::from_generators(self.gamma, self.delta, &gens, &images, self.base)
    }
}

pub fn parse_tds(text: &str, notation: PermNotation) -> Result<TdsFile, ParseError> {
    let mut comments = Vec::new();
    let lines = content_lines(text, &mut comments);
    let (mut gamma, mut delta, mut base) = (None, None, None);
    let mut gens: Vec<(Permutation, Permutation)> = Vec::new();
    let mut pending: Option<(usize, Permutation)> = None;
    for (ln, line) in lines {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let scalar = |slot: &mut Option<usize>| -> Result<(), ParseError> {
            if slot.is_some() {
                return Err(err(ln, format!("duplicate `{key}` line")));
            }
            *slot = Some(parse_usize(ln, rest)?);
            Ok(())
        };
        match key {
            "gamma" => scalar(&mut gamma)?,
            "delta" => scalar(&mut delta)?,
            "base" => scalar(&mut base)?,
            "gen" | "theta" if gamma.is_none() || delta.is_none() => {
                return Err(err(ln, format!("`{key}` before both `gamma` and `delta`")));
            }
            "gen" => {
                if let Some((gl, _)) = pending {
                    return Err(err(gl, "`gen` line without a following `theta` line"));
                }
                pending = Some((ln, notation.parse(ln, gamma.unwrap_or(0), rest)?));
            }
            "theta" => {
                let (_, g) = pending
                    .take()
                    .ok_or_else(|| err(ln, "`theta` line without a preceding `gen` line"))?;
                gens.push((g, notation.parse(ln, delta.unwrap_or(0), rest)?));
            }
            other => return Err(err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some((gl, _)) = pending {
        return Err(err(gl, "`gen` line without a following `theta` line"));
    }
    let gamma = gamma.ok_or_else(|| err(0, "missing `gamma` line"))?;
    let delta = delta.ok_or_else(|| err(0, "missing `delta` line"))?;
    if gamma == 0 || delta == 0 {
        return Err(err(0, "gamma and delta must be at least 1"));
    }
    let base = base.unwrap_or(0);
    if base >= delta {
        return Err(err(0, format!("base {base} is outside 0..{delta}")));
    }
    Ok(TdsFile {
        gamma,
        delta,
        base,
        gens,
        comments,
    })
}

pub fn format_tds(file: &TdsFile, notation: PermNotation) -> String {
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "gamma {}", file.gamma);
    let _ = writeln!(out, "delta {}", file.delta);
    let _ = writeln!(out, "base {}", file.base);
    for (g, t) in &file.gens {
        let _ = writeln!(out, "gen {}", notation.format(g));
        let _ = writeln!(out, "theta {}", notation.format(t));
    }
    out
}
