use std::collections::BTreeMap;
use std::fmt::Write;

use super::IoError;
use crate::complex::{Exhaustion, FiniteComplex, GlueSpec, Identification, Simplex, VertexId};
use crate::homology::SimplicialMap;

/// Contents of a complex file: the stages it describes and the declared
/// star stability. A file without stage annotations has a single stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub stages: Vec<FiniteComplex>,
    pub stability: BTreeMap<Simplex, usize>,
}

impl ComplexFile {
    /// The union of all stages.
    pub fn complex(&self) -> &FiniteComplex {
        self.stages.last().expect("at least one stage")
    }

    pub fn is_staged(&self) -> bool {
        self.stages.len() > 1
    }

    pub fn exhaustion(&self) -> Result<Exhaustion, IoError> {
        Ok(Exhaustion::build(self.stages.clone(), self.stability.clone())?)
    }
}

fn err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

fn strip_comment(l: &str) -> &str {
    l.split('#').next().unwrap_or("").trim()
}

/// Vertices of a simplex followed by an optional `@stage`.
fn parse_simplex(rest: &str, line: usize) -> Result<(Simplex, Option<usize>), IoError> {
    let mut verts = Vec::new();
    let mut stage = None;
    let mut tokens = rest.split_whitespace().peekable();
    while let Some(t) = tokens.next() {
        if let Some(s) = t.strip_prefix('@') {
            let s = if s.is_empty() { tokens.next().unwrap_or("") } else { s };
            stage = Some(s.parse().map_err(|_| err(line, format!("bad stage `{s}`")))?);
            if tokens.peek().is_some() {
                return Err(err(line, "trailing tokens after the stage"));
            }
        } else {
            verts.push(t.parse::<u32>().map_err(|_| err(line, format!("bad vertex `{t}`")))?);
        }
    }
    let s = Simplex::new(verts).map_err(|e| err(line, e.to_string()))?;
    Ok((s, stage))
}

/// Parses `S` and `STAB` lines. Faces take the earliest stage of a listed
/// coface; simplices without a `STAB` line are declared stable from the
/// last stage.
pub fn parse_complex(text: &str) -> Result<ComplexFile, IoError> {
    let mut born: BTreeMap<Simplex, usize> = BTreeMap::new();
    let mut declared = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let l = strip_comment(raw);
        if l.is_empty() {
            continue;
        }
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match head {
            "S" => {
                let (s, stage) = parse_simplex(rest, line)?;
                let stage = stage.unwrap_or(0);
                for f in s.faces() {
                    let b = born.entry(f).or_insert(stage);
                    *b = (*b).min(stage);
                }
            }
            "STAB" => {
                let (s, stage) = parse_simplex(rest, line)?;
                let stage = stage.ok_or_else(|| err(line, "STAB needs `@stage`"))?;
                declared.insert(s, stage);
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    if born.is_empty() {
        return Err(err(0, "no simplices"));
    }
    let last = born.values().copied().max().unwrap_or(0);
    let stages = (0..=last)
        .map(|n| FiniteComplex::closure(born.iter().filter(|(_, &b)| b <= n).map(|(s, _)| s.clone())))
        .collect();
    if let Some(s) = declared.keys().find(|s| !born.contains_key(*s)) {
        return Err(err(0, format!("STAB for {s}, which is not in the complex")));
    }
    let stability = born
        .keys()
        .map(|s| (s.clone(), declared.get(s).copied().unwrap_or(last)))
        .collect();
    Ok(ComplexFile { stages, stability })
}

fn simplex_line(out: &mut String, head: &str, s: &Simplex, stage: Option<usize>) {
    out.push_str(head);
    for v in s.vertices() {
        write!(out, " {v}").unwrap();
    }
    if let Some(n) = stage {
        write!(out, " @{n}").unwrap();
    }
    out.push('\n');
}

/// Simplices not implied by a listed coface of the same stage.
fn listed(k: &FiniteComplex, birth: impl Fn(&Simplex) -> usize) -> Vec<&Simplex> {
    let mut out: Vec<&Simplex> = k
        .iter()
        .filter(|s| !k.cofaces(s).any(|t| t != *s && birth(t) == birth(s)))
        .collect();
    out.sort();
    out
}

/// Maximal simplices of `k`, one per line.
pub fn write_complex(k: &FiniteComplex) -> String {
    let mut out = String::new();
    for s in listed(k, |_| 0) {
        simplex_line(&mut out, "S", s, None);
    }
    out
}

/// Lossless encoding of the materialized prefix of `x`.
pub fn write_exhaustion(x: &Exhaustion) -> String {
    let last = x.stage_count() - 1;
    let birth = |s: &Simplex| x.birth(s).expect("simplex of the exhaustion");
    let mut out = String::new();
    for s in listed(x.last(), birth) {
        let b = birth(s);
        simplex_line(&mut out, "S", s, (b > 0).then_some(b));
    }
    for (s, &n) in x.stability() {
        if n != last {
            simplex_line(&mut out, "STAB", s, Some(n));
        }
    }
    out
}

/// Splits a file into sections headed by the given keywords. Lines before
/// the first header are rejected; other lines are kept with their numbers.
fn sections<'a>(text: &'a str, headers: &[&'a str]) -> Result<Vec<(&'a str, Vec<(usize, &'a str)>)>, IoError> {
    let mut out: Vec<(&str, Vec<(usize, &str)>)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let l = strip_comment(raw);
        if l.is_empty() {
            continue;
        }
        if let Some(h) = headers.iter().find(|h| l == **h) {
            out.push((h, Vec::new()));
        } else if let Some(last) = out.last_mut() {
            last.1.push((no + 1, l));
        } else {
            return Err(err(no + 1, format!("expected one of {}", headers.join(", "))));
        }
    }
    Ok(out)
}

fn section_complex(lines: &[(usize, &str)]) -> Result<FiniteComplex, IoError> {
    let mut simplices = Vec::new();
    for &(line, l) in lines {
        let rest = l.strip_prefix("S ").ok_or_else(|| err(line, "expected `S`"))?;
        let (s, stage) = parse_simplex(rest, line)?;
        if stage.is_some() {
            return Err(err(line, "stages are not allowed here"));
        }
        simplices.push(s);
    }
    if simplices.is_empty() {
        return Err(err(0, "empty complex"));
    }
    Ok(FiniteComplex::closure(simplices))
}

fn vertex_pair(t: &str, line: usize) -> Result<(VertexId, VertexId), IoError> {
    let (a, b) = t.split_once(':').ok_or_else(|| err(line, format!("expected `u:v`, got `{t}`")))?;
    let p = |x: &str| x.parse::<u32>().map(VertexId).map_err(|_| err(line, format!("bad vertex `{x}`")));
    Ok((p(a)?, p(b)?))
}

/// `PART` sections of `S` lines, then `GLUE from to u:v ...` lines
/// identifying vertex `u` of part `from` with vertex `v` of part `to`.
pub fn parse_glue_spec(text: &str) -> Result<GlueSpec, IoError> {
    let mut spec = GlueSpec::default();
    for (head, lines) in sections(text, &["PART", "IDENTIFY"])? {
        if head == "PART" {
            spec.parts.push(section_complex(&lines)?);
            continue;
        }
        for (line, l) in lines {
            let mut t = l.split_whitespace();
            if t.next() != Some("GLUE") {
                return Err(err(line, "expected `GLUE from to u:v ...`"));
            }
            let mut part = || -> Result<usize, IoError> {
                let x = t.next().ok_or_else(|| err(line, "missing part index"))?;
                x.parse().map_err(|_| err(line, format!("bad part `{x}`")))
            };
            let (from, to) = (part()?, part()?);
            let pairs = t.map(|p| vertex_pair(p, line)).collect::<Result<_, _>>()?;
            spec.identifications.push(Identification { from, to, pairs });
        }
    }
    Ok(spec)
}

pub fn write_glue_spec(spec: &GlueSpec) -> String {
    let mut out = String::new();
    for p in &spec.parts {
        out.push_str("PART\n");
        out.push_str(&write_complex(p));
    }
    if !spec.identifications.is_empty() {
        out.push_str("IDENTIFY\n");
    }
    for id in &spec.identifications {
        write!(out, "GLUE {} {}", id.from, id.to).unwrap();
        for (u, v) in &id.pairs {
            write!(out, " {u}:{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// `SOURCE` and `TARGET` sections of `S` lines and a `MAP` section of
/// `u:v` pairs, one or more per line.
pub fn parse_map(text: &str) -> Result<SimplicialMap, IoError> {
    let mut source = None;
    let mut target = None;
    let mut map = BTreeMap::new();
    for (head, lines) in sections(text, &["SOURCE", "TARGET", "MAP"])? {
        match head {
            "SOURCE" => source = Some(section_complex(&lines)?),
            "TARGET" => target = Some(section_complex(&lines)?),
            _ => {
                for (line, l) in lines {
                    for t in l.split_whitespace() {
                        let (u, v) = vertex_pair(t, line)?;
                        if map.insert(u, v).is_some() {
                            return Err(err(line, format!("vertex {u} mapped twice")));
                        }
                    }
                }
            }
        }
    }
    let source = source.ok_or_else(|| err(0, "missing SOURCE"))?;
    let target = target.ok_or_else(|| err(0, "missing TARGET"))?;
    Ok(SimplicialMap::from_map(source, target, map)?)
}

pub fn write_map(f: &SimplicialMap) -> String {
    let mut out = String::from("SOURCE\n");
    out.push_str(&write_complex(f.source()));
    out.push_str("TARGET\n");
    out.push_str(&write_complex(f.target()));
    out.push_str("MAP\n");
    let pairs: Vec<String> = f.vertex_map().iter().map(|(u, v)| format!("{u}:{v}")).collect();
    out.push_str(&pairs.join(" "));
    out.push('\n');
    out
}
