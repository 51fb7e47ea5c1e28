//! Text formats.
//!
//! `cgt1` (Cayley tables):
//! ```text
//! cgt1 <n>
//! labels <n names>          optional
//! # gens: <indices>         optional, the distinguished generators
//! # <key>: <value>          metadata, any number, e.g. "# recipe: u(2)"
//! <n lines of n indices>
//! ```
//!
//! `ctp1` (class-2 presentations), generators numbered from 1:
//! ```text
//! ctp1 p=<p> m=<m> s=<s>
//! names <m + s names>       optional
//! sq i <s digits>           one per generator
//! comm i j <s digits>       only the non-trivial pairs, i < j
//! ```
//!
//! `aut1` (automorphisms): `aut1 <n>` followed by one line with the image of
//! every index. The shorthand `gens: i1 i2 ... -> j1 j2 ...` gives the images
//! of generators only.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::constructors::CTPresentation;
use crate::group::{FiniteGroup, GroupError};
use crate::morphisms::{automorphism_from_images, AutomorphismMap, MorphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Morph(#[from] MorphError),
}

fn format_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Format { line, msg: msg.into() }
}

fn parse_indices(line_no: usize, text: &str) -> Result<Vec<usize>, IoError> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| format_err(line_no, format!("{t:?} is not an index"))))
        .collect()
}

pub fn write_cgt1(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = String::with_capacity(n * n * 4 + 64);
    writeln!(out, "cgt1 {n}").unwrap();
    if let Some(labels) = g.labels() {
        writeln!(out, "labels {}", labels.join(" ")).unwrap();
    }
    let gens: Vec<String> = g.gens().iter().map(usize::to_string).collect();
    writeln!(out, "# gens: {}", gens.join(" ")).unwrap();
    for (k, v) in g.meta() {
        writeln!(out, "# {k}: {v}").unwrap();
    }
    for a in 0..n {
        let row = g.row(a);
        for (b, x) in row.iter().enumerate() {
            if b > 0 {
                out.push(' ');
            }
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_cgt1(text: &str) -> Result<FiniteGroup, IoError> {
    read_cgt1_seeded(text, crate::group::DEFAULT_SEED)
}

/// As [`read_cgt1`]; `seed` drives the sampled associativity check on large tables.
pub fn read_cgt1_seeded(text: &str, seed: u64) -> Result<FiniteGroup, IoError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| format_err(1, "empty file"))?;
    let n: usize = header
        .strip_prefix("cgt1 ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| format_err(1, "expected header `cgt1 <n>`"))?;
    if n == 0 || n > crate::group::MAX_ORDER {
        return Err(format_err(1, format!("order {n} out of range")));
    }
    let mut labels = None;
    let mut gens = None;
    let mut meta: Vec<(String, String)> = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut row_lines = Vec::with_capacity(n);
    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix('#') {
            let (k, v) = rest
                .trim_start()
                .split_once(": ")
                .ok_or_else(|| format_err(no, "comment lines must read `# key: value`"))?;
            if k == "gens" {
                gens = Some((no, parse_indices(no, v)?));
            } else {
                meta.push((k.to_string(), v.to_string()));
            }
        } else if let Some(rest) = line.strip_prefix("labels ") {
            if !rows.is_empty() || labels.is_some() {
                return Err(format_err(no, "labels must precede the table"));
            }
            let l: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if l.len() != n {
                return Err(format_err(no, format!("{} labels for {n} elements", l.len())));
            }
            labels = Some(l);
        } else if line.trim().is_empty() {
            continue;
        } else {
            let row = parse_indices(no, line)?;
            if row.len() != n {
                return Err(format_err(no, format!("row has {} entries, expected {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in &row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(format_err(no, format!("row is not a permutation of 0..{n} (entry {x})")));
                }
            }
            if rows.len() == n {
                return Err(format_err(no, "more than n table rows"));
            }
            rows.push(row);
            row_lines.push(no);
        }
    }
    if rows.len() != n {
        return Err(format_err(text.lines().count(), format!("found {} table rows, expected {n}", rows.len())));
    }
    for b in 0..n {
        let mut seen = vec![false; n];
        for (a, row) in rows.iter().enumerate() {
            if std::mem::replace(&mut seen[row[b]], true) {
                return Err(format_err(row_lines[a], format!("column {b} repeats entry {}", row[b])));
            }
        }
    }
    if (0..n).any(|b| rows[0][b] != b || rows[b][0] != b) {
        return Err(format_err(row_lines[0], "element 0 must be the identity"));
    }
    let mut g = FiniteGroup::from_table_seeded(&rows, seed)?;
    if let Some(l) = labels {
        g = g.with_labels(l);
    }
    if let Some((no, gens)) = gens {
        if gens.iter().any(|&x| x >= n) || g.closure(&gens).len() != n {
            return Err(format_err(no, "the `gens` line does not generate the group"));
        }
        g = g.with_gens(gens);
    }
    for (k, v) in meta {
        g = g.with_meta(&k, &v);
    }
    Ok(g)
}

pub fn save_group(g: &FiniteGroup, path: impl AsRef<Path>) -> Result<(), IoError> {
    if g.labels().is_some_and(|l| l.iter().any(|s| s.is_empty() || s.contains(char::is_whitespace))) {
        return Err(format_err(2, "labels may not contain whitespace"));
    }
    std::fs::write(path, write_cgt1(g))?;
    Ok(())
}

pub fn load_group(path: impl AsRef<Path>) -> Result<FiniteGroup, IoError> {
    read_cgt1(&std::fs::read_to_string(path)?)
}

fn digits(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_ctp1(ct: &CTPresentation) -> String {
    let mut out = format!("ctp1 p={} m={} s={}\n", ct.p, ct.m, ct.s);
    if let Some(names) = &ct.names {
        writeln!(out, "names {}", names.join(" ")).unwrap();
    }
    for (i, v) in ct.sq.iter().enumerate() {
        writeln!(out, "sq {} {}", i + 1, digits(v)).unwrap();
    }
    for i in 0..ct.m {
        for j in i + 1..ct.m {
            let v = &ct.comm[i][j];
            if v.iter().any(|&d| d != 0) {
                writeln!(out, "comm {} {} {}", i + 1, j + 1, digits(v)).unwrap();
            }
        }
    }
    out
}

pub fn read_ctp1(text: &str) -> Result<CTPresentation, IoError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| format_err(1, "empty file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("ctp1") {
        return Err(format_err(1, "expected header `ctp1 p=<p> m=<m> s=<s>`"));
    }
    let mut get = |key: &str| -> Result<usize, IoError> {
        fields
            .next()
            .and_then(|f| f.strip_prefix(key))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| format_err(1, format!("expected {key}<int>")))
    };
    let (p, m, s) = (get("p=")?, get("m=")?, get("s=")?);
    let mut ct = CTPresentation::new(p, m, s);
    let vector = |no: usize, toks: &[&str]| -> Result<Vec<u32>, IoError> {
        if toks.len() != s {
            return Err(format_err(no, format!("vector has {} digits, expected {s}", toks.len())));
        }
        toks.iter()
            .map(|t| match t.parse::<u32>() {
                Ok(d) if (d as usize) < p => Ok(d),
                _ => Err(format_err(no, format!("{t:?} is not a digit mod {p}"))),
            })
            .collect()
    };
    let generator = |no: usize, t: &str| -> Result<usize, IoError> {
        match t.parse::<usize>() {
            Ok(i) if (1..=m).contains(&i) => Ok(i - 1),
            _ => Err(format_err(no, format!("{t:?} is not a generator number in 1..={m}"))),
        }
    };
    for (no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [c, ..] if c.starts_with('#') => {}
            ["names", names @ ..] => {
                if names.len() != m + s {
                    return Err(format_err(no, format!("{} names, expected {}", names.len(), m + s)));
                }
                ct = ct.with_names(names);
            }
            ["sq", i, rest @ ..] => {
                let i = generator(no, i)?;
                ct.sq[i] = vector(no, rest)?;
            }
            ["comm", i, j, rest @ ..] => {
                let (i, j) = (generator(no, i)?, generator(no, j)?);
                if i >= j {
                    return Err(format_err(no, "commutator lines need i < j"));
                }
                ct.comm[i][j] = vector(no, rest)?;
            }
            _ => return Err(format_err(no, format!("unrecognised line {line:?}"))),
        }
    }
    Ok(ct)
}

pub fn write_aut1(phi: &AutomorphismMap) -> String {
    let images: Vec<String> = phi.perm().iter().map(u32::to_string).collect();
    format!("aut1 {}\n{}\n", images.len(), images.join(" "))
}

/// Reads either the full `aut1` form or the `gens: ... -> ...` shorthand.
pub fn read_aut1(text: &str, g: &FiniteGroup) -> Result<AutomorphismMap, IoError> {
    let body: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let Some(&(first_no, first)) = body.first() else {
        return Err(format_err(1, "empty automorphism"));
    };
    if let Some(rest) = first.strip_prefix("gens:") {
        let (l, r) = rest.split_once("->").ok_or_else(|| format_err(first_no, "expected `->`"))?;
        let (gens, images) = (parse_indices(first_no, l)?, parse_indices(first_no, r)?);
        if let Some(&bad) = gens.iter().chain(&images).find(|&&x| x >= g.order()) {
            return Err(format_err(first_no, format!("index {bad} out of range")));
        }
        return Ok(automorphism_from_images(g, &gens, &images)?);
    }
    let n: usize = first
        .strip_prefix("aut1 ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| format_err(first_no, "expected `aut1 <n>` or `gens: ... -> ...`"))?;
    if n != g.order() {
        return Err(format_err(first_no, format!("automorphism of order-{n} group, group has order {}", g.order())));
    }
    let &(no, line) = body.get(1).ok_or_else(|| format_err(first_no + 1, "missing image line"))?;
    let images = parse_indices(no, line)?;
    if images.len() != n {
        return Err(format_err(no, format!("{} images, expected {n}", images.len())));
    }
    if images.iter().any(|&x| x >= n) {
        return Err(format_err(no, "image out of range"));
    }
    Ok(AutomorphismMap::new(g, images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{builtin, cyclic};
    use crate::recipe;

    #[test]
    fn cgt1_round_trip_is_bit_exact() {
        for g in [cyclic(6).unwrap(), builtin("Q8").unwrap(), recipe::build("famA(1,0)").unwrap()] {
            let text = write_cgt1(&g);
            let back = read_cgt1(&text).unwrap();
            assert!(back.table_eq(&g));
            assert_eq!(back.gens(), g.gens());
            assert_eq!(write_cgt1(&back), text);
        }
        let q8 = read_cgt1(&write_cgt1(&builtin("Q8").unwrap())).unwrap();
        assert_eq!(q8.labels().unwrap()[0], "1");
    }

    #[test]
    fn recipe_metadata_survives() {
        let g = recipe::build("dihedral(3)").unwrap();
        let text = write_cgt1(&g);
        assert!(text.contains("# recipe: dihedral(3)\n"));
        assert_eq!(read_cgt1(&text).unwrap().recipe(), Some("dihedral(3)"));
    }

    #[test]
    fn non_latin_rows_are_rejected_with_line() {
        let bad = "cgt1 2\n0 1\n1 1\n";
        match read_cgt1(bad) {
            Err(IoError::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let short = "cgt1 3\n0 1 2\n1 2 0\n";
        assert!(matches!(read_cgt1(short), Err(IoError::Format { .. })));
        let not_group = "cgt1 3\n0 1 2\n1 0 2\n2 2 0\n";
        assert!(read_cgt1(not_group).is_err());
    }

    #[test]
    fn ctp1_round_trip() {
        let ct = crate::constructors::u_presentation(2).unwrap();
        let text = write_ctp1(&ct);
        let back = read_ctp1(&text).unwrap();
        assert_eq!(back.compile().unwrap().order(), 128);
        assert_eq!(write_ctp1(&back), text);
        assert!(matches!(read_ctp1("ctp1 p=2 m=1 s=1\nsq 1 2\n"), Err(IoError::Format { line: 2, .. })));
    }

    #[test]
    fn aut1_forms() {
        let z7 = cyclic(7).unwrap();
        let phi = read_aut1("gens: 1 -> 2", &z7).unwrap();
        assert_eq!(phi.order(), 3);
        let text = write_aut1(&phi);
        assert_eq!(text, "aut1 7\n0 2 4 6 1 3 5\n");
        assert_eq!(read_aut1(&text, &z7).unwrap().perm(), phi.perm());
        assert!(read_aut1("aut1 7\n0 1 1 3 4 5 6\n", &z7).is_err());
        assert!(read_aut1("gens: 1 -> 7", &z7).is_err());
    }
}
