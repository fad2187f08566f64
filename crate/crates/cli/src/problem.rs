//! Sectioned problem files.
//!
//! ```text
//! # comment
//! [source]
//! vars = z, w
//! defining = w + ~w - 2*z^2*~z^2
//!
//! [target]
//! vars = z, w
//! defining = w + ~w - 2*z*~z
//!
//! [map]
//! component = z^2
//! component = w
//!
//! [options]
//! bracket_cap = 8
//! order = degrevlex
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use crlab_core::parse::parse_poly_at;
use crlab_core::{BaseOrder, Caps, FormalMapJet, GenericSubmanifold, Poly, RealVariety, VarTable};

use crate::error::CliError;

/// Values of the `[options]` section; unset keys fall back to [`Caps::default`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub bracket_cap: Option<u32>,
    pub colength_cap: Option<u32>,
    pub jet_cap: Option<u32>,
    pub order: Option<BaseOrder>,
}

impl Options {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            bracket_cap: self.bracket_cap.unwrap_or(d.bracket_cap),
            colength_cap: self.colength_cap.unwrap_or(d.colength_cap),
            jet_cap: self.jet_cap.unwrap_or(d.jet_cap),
            order: self.order.unwrap_or(d.order),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub source: GenericSubmanifold,
    pub target: Option<RealVariety>,
    pub map: Option<FormalMapJet>,
    pub options: Options,
}

impl ProblemFile {
    /// The target variety, or the source itself when no `[target]` is given.
    pub fn target_or_source(&self) -> &RealVariety {
        self.target.as_ref().unwrap_or(self.source.variety())
    }

    /// Canonical text form; parsing it back yields an equal value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_variety(&mut out, "source", self.source.variety());
        if let Some(t) = &self.target {
            out.push('\n');
            write_variety(&mut out, "target", t);
        }
        if let Some(h) = &self.map {
            out.push_str("\n[map]\n");
            for c in h.components() {
                let _ = writeln!(out, "component = {c}");
            }
            let _ = writeln!(out, "degree_cap = {}", h.degree_cap());
        }
        let o = &self.options;
        if *o != Options::default() {
            out.push_str("\n[options]\n");
            if let Some(v) = o.bracket_cap {
                let _ = writeln!(out, "bracket_cap = {v}");
            }
            if let Some(v) = o.colength_cap {
                let _ = writeln!(out, "colength_cap = {v}");
            }
            if let Some(v) = o.jet_cap {
                let _ = writeln!(out, "jet_cap = {v}");
            }
            if let Some(v) = o.order {
                let _ = writeln!(out, "order = {}", v.name());
            }
        }
        out
    }
}

fn write_variety(out: &mut String, header: &str, v: &RealVariety) {
    let _ = writeln!(out, "[{header}]");
    let _ = writeln!(out, "vars = {}", v.holo_table().names().join(", "));
    let defs: Vec<String> = v.defining().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "defining = {}", defs.join("; "));
    if let Some(d) = v.dim_hint() {
        let _ = writeln!(out, "dim = {d}");
    }
}

pub fn parse_order(s: &str) -> Option<BaseOrder> {
    match s {
        "lex" => Some(BaseOrder::Lex),
        "degrevlex" => Some(BaseOrder::DegRevLex),
        _ => None,
    }
}

/// A value with the 1-based position of its first character.
#[derive(Clone, Debug)]
struct Spanned {
    text: String,
    line: usize,
    column: usize,
}

#[derive(Debug)]
struct Entry {
    key: Spanned,
    value: Spanned,
}

#[derive(Debug)]
struct Section {
    name: Spanned,
    entries: Vec<Entry>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Core(crlab_core::Error::Syntax {
        line,
        column,
        message: message.into(),
    })
}

fn at(s: &Spanned, e: crlab_core::Error) -> CliError {
    CliError::At {
        line: s.line,
        column: s.column,
        source: e,
    }
}

fn col_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn split_sections(text: &str) -> Result<Vec<Section>, CliError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(syntax(
                    lineno,
                    col_of(raw, lead),
                    "unterminated section header",
                ));
            };
            sections.push(Section {
                name: Spanned {
                    text: name.trim().to_string(),
                    line: lineno,
                    column: col_of(raw, lead),
                },
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(syntax(lineno, col_of(raw, lead), "expected `key = value`"));
        };
        let Some(section) = sections.last_mut() else {
            return Err(syntax(
                lineno,
                col_of(raw, lead),
                "entry outside of any section",
            ));
        };
        let key = content[..eq].trim();
        let after = &content[eq + 1..];
        let vlead = eq + 1 + (after.len() - after.trim_start().len());
        section.entries.push(Entry {
            key: Spanned {
                text: key.to_string(),
                line: lineno,
                column: col_of(raw, lead),
            },
            value: Spanned {
                text: after.trim().to_string(),
                line: lineno,
                column: col_of(raw, vlead),
            },
        });
    }
    Ok(sections)
}

fn parse_u32(v: &Spanned) -> Result<u32, CliError> {
    v.text.parse().map_err(|_| {
        syntax(
            v.line,
            v.column,
            format!("expected a natural number, found `{}`", v.text),
        )
    })
}

fn unique<'a>(section: &'a Section, key: &str) -> Result<Option<&'a Entry>, CliError> {
    let mut found = section.entries.iter().filter(|e| e.key.text == key);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(syntax(
            dup.key.line,
            dup.key.column,
            format!("duplicate key `{key}`"),
        ));
    }
    Ok(first)
}

fn check_keys(section: &Section, allowed: &[&str]) -> Result<(), CliError> {
    for e in &section.entries {
        if !allowed.contains(&e.key.text.as_str()) {
            return Err(syntax(
                e.key.line,
                e.key.column,
                format!("unknown key `{}` in [{}]", e.key.text, section.name.text),
            ));
        }
    }
    Ok(())
}

/// Splits on `;`, keeping the column of each piece.
fn split_polys(v: &Spanned) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in v.text.split(';') {
        let lead = piece.len() - piece.trim_start().len();
        out.push(Spanned {
            text: piece.trim().to_string(),
            line: v.line,
            column: v.column + v.text[..start + lead].chars().count(),
        });
        start += piece.len() + 1;
    }
    out
}

fn poly(v: &Spanned, table: &Arc<VarTable>) -> Result<Poly, CliError> {
    if v.text.is_empty() {
        return Err(syntax(v.line, v.column, "empty polynomial"));
    }
    Ok(parse_poly_at(&v.text, table, (v.line, v.column))?)
}

fn variety(section: &Section) -> Result<RealVariety, CliError> {
    check_keys(section, &["vars", "defining", "dim"])?;
    let vars = unique(section, "vars")?.ok_or_else(|| {
        syntax(
            section.name.line,
            section.name.column,
            format!("[{}] needs `vars`", section.name.text),
        )
    })?;
    let names: Vec<&str> = vars.value.text.split(',').map(str::trim).collect();
    let table = VarTable::paired(&names).map_err(|e| at(&vars.value, e))?;
    let defining = unique(section, "defining")?.ok_or_else(|| {
        syntax(
            section.name.line,
            section.name.column,
            format!("[{}] needs `defining`", section.name.text),
        )
    })?;
    let sigma = split_polys(&defining.value)
        .iter()
        .map(|p| poly(p, &table))
        .collect::<Result<Vec<_>, _>>()?;
    let dim = unique(section, "dim")?
        .map(|e| parse_u32(&e.value))
        .transpose()?;
    RealVariety::new(&table, sigma, dim).map_err(|e| at(&defining.value, e))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let sections = split_sections(text)?;
    let mut seen: Vec<&str> = Vec::new();
    for s in &sections {
        if !["source", "target", "map", "options"].contains(&s.name.text.as_str()) {
            return Err(syntax(
                s.name.line,
                s.name.column,
                format!("unknown section [{}]", s.name.text),
            ));
        }
        if seen.contains(&s.name.text.as_str()) {
            return Err(syntax(
                s.name.line,
                s.name.column,
                format!("duplicate section [{}]", s.name.text),
            ));
        }
        seen.push(&s.name.text);
    }
    let find = |name: &str| sections.iter().find(|s| s.name.text == name);
    let src = find("source").ok_or_else(|| syntax(1, 1, "missing [source] section"))?;
    let source_variety = variety(src)?;
    let source = GenericSubmanifold::new(source_variety).map_err(|e| at(&src.name, e))?;
    let target = find("target").map(variety).transpose()?;

    let map = match find("map") {
        None => None,
        Some(m) => {
            if m.name.line < src.name.line {
                return Err(syntax(
                    m.name.line,
                    m.name.column,
                    "[map] refers to variables declared later in [source]",
                ));
            }
            check_keys(m, &["component", "degree_cap"])?;
            let table = source.holo_table();
            let comps: Vec<&Entry> = m
                .entries
                .iter()
                .filter(|e| e.key.text == "component")
                .collect();
            let arity = target.as_ref().map_or(source.n(), RealVariety::n);
            if comps.len() != arity {
                return Err(syntax(
                    m.name.line,
                    m.name.column,
                    format!(
                        "[map] has {} components but the target has {arity} variables",
                        comps.len()
                    ),
                ));
            }
            let polys = comps
                .iter()
                .map(|e| poly(&e.value, table))
                .collect::<Result<Vec<_>, _>>()?;
            let cap = match unique(m, "degree_cap")? {
                Some(e) => parse_u32(&e.value)?,
                None => polys
                    .iter()
                    .filter_map(Poly::total_degree)
                    .max()
                    .unwrap_or(1)
                    .max(1),
            };
            let anchor = comps.first().map_or(&m.name, |e| &e.value);
            let shown: Vec<String> = polys.iter().map(|p| format!("`{p}`")).collect();
            let jet = FormalMapJet::new(table, polys, cap).map_err(|e| {
                // point at the offending component when we can tell which
                let msg = e.to_string();
                let pos = shown
                    .iter()
                    .position(|s| msg.contains(s.as_str()))
                    .map_or(anchor, |i| &comps[i].value);
                at(pos, e)
            })?;
            Some(jet)
        }
    };

    let mut options = Options::default();
    if let Some(o) = find("options") {
        check_keys(o, &["bracket_cap", "colength_cap", "jet_cap", "order"])?;
        options.bracket_cap = unique(o, "bracket_cap")?
            .map(|e| parse_u32(&e.value))
            .transpose()?;
        options.colength_cap = unique(o, "colength_cap")?
            .map(|e| parse_u32(&e.value))
            .transpose()?;
        options.jet_cap = unique(o, "jet_cap")?
            .map(|e| parse_u32(&e.value))
            .transpose()?;
        if let Some(e) = unique(o, "order")? {
            options.order = Some(parse_order(&e.value.text).ok_or_else(|| {
                syntax(
                    e.value.line,
                    e.value.column,
                    format!("unknown order `{}`", e.value.text),
                )
            })?);
        }
    }
    Ok(ProblemFile {
        source,
        target,
        map,
        options,
    })
}
