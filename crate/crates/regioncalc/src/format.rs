//! The `surface_diagram v1` text format and the matrix text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use regioncalc_core::{DiagramError, DiagramParts, Gf2Matrix, NodeKind, SurfaceDiagram};

pub const HEADER: &str = "surface_diagram v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("missing `{HEADER}` header")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("edge label `{label}` used {count} times, expected 2")]
    EdgeLabelCount { label: String, count: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, word: &str) -> Result<T, FormatError> {
    word.parse()
        .map_err(|_| malformed(line, format!("expected a non-negative integer, found `{word}`")))
}

pub fn parse_diagram(text: &str) -> Result<SurfaceDiagram, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        _ => return Err(FormatError::MissingHeader),
    }

    let mut parts = DiagramParts::default();
    // label -> darts carrying it, in order of appearance
    let mut uses: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut darts = 0;
    for (ln, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "crossing" | "marker" => {
                let (kind, over) = if words[0] == "crossing" {
                    if words.len() != 7 {
                        return Err(malformed(ln, "expected `crossing <id> <e0> <e1> <e2> <e3> over=<0|1>`"));
                    }
                    let over = match words[6] {
                        "over=0" => false,
                        "over=1" => true,
                        w => return Err(malformed(ln, format!("expected over=0 or over=1, found `{w}`"))),
                    };
                    (NodeKind::Crossing, over)
                } else {
                    if words.len() != 4 {
                        return Err(malformed(ln, "expected `marker <id> <e0> <e1>`"));
                    }
                    (NodeKind::Marker, false)
                };
                parts.labels.push(words[1].to_string());
                parts.kinds.push(kind);
                parts.over.push(over);
                for &label in &words[2..2 + kind.degree()] {
                    let entry = uses.entry(label.to_string()).or_insert_with(|| {
                        order.push(label.to_string());
                        Vec::new()
                    });
                    entry.push(darts);
                    darts += 1;
                }
            }
            "tube" => {
                if words.len() != 3 {
                    return Err(malformed(ln, "expected `tube <faceA> <faceB>`"));
                }
                parts.tubes.push((number(ln, words[1])?, number(ln, words[2])?));
            }
            "handles" => {
                if words.len() != 3 {
                    return Err(malformed(ln, "expected `handles <face> <k>`"));
                }
                parts.handles.push((number(ln, words[1])?, number(ln, words[2])?));
            }
            w => return Err(malformed(ln, format!("unknown record `{w}`"))),
        }
    }

    parts.alpha = vec![0; darts];
    for label in &order {
        let ds = &uses[label];
        if ds.len() != 2 {
            return Err(FormatError::EdgeLabelCount {
                label: label.clone(),
                count: ds.len(),
            });
        }
        parts.alpha[ds[0]] = ds[1];
        parts.alpha[ds[1]] = ds[0];
    }
    Ok(parts.build()?)
}

/// Serializes with edge labels `e0, e1, …` numbered by edge index.
pub fn write_diagram(d: &SurfaceDiagram) -> String {
    let map = d.map();
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    for node in 0..map.node_count() {
        let edges: Vec<String> = map.darts_of(node).map(|x| format!("e{}", d.edge_of(x))).collect();
        match map.kind(node) {
            NodeKind::Crossing => writeln!(
                out,
                "crossing {} {} over={}",
                d.label(node),
                edges.join(" "),
                d.over(node) as u8
            ),
            NodeKind::Marker => writeln!(out, "marker {} {}", d.label(node), edges.join(" ")),
        }
        .unwrap();
    }
    for &(a, b) in d.tubes() {
        writeln!(out, "tube {a} {b}").unwrap();
    }
    for (f, k) in d.handles() {
        writeln!(out, "handles {f} {k}").unwrap();
    }
    out
}

/// Matrix text form, preceded by `#` lines naming the row and column order.
pub fn write_matrix(m: &Gf2Matrix, rows: &str, cols: &str) -> String {
    format!("# rows: {rows}\n# columns: {cols}\n{m}")
}

/// Reads the matrix text form. `#` lines and blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<Gf2Matrix, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, head) = lines.next().ok_or_else(|| malformed(1, "empty matrix"))?;
    let dims: Vec<&str> = head.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(malformed(ln, "expected `rows cols`"));
    }
    let (r, c): (usize, usize) = (number(ln, dims[0])?, number(ln, dims[1])?);
    let mut m = Gf2Matrix::zeros(r, c);
    for i in 0..r {
        let (ln, row) = lines.next().ok_or_else(|| malformed(ln, format!("expected {r} rows")))?;
        if row.len() != c {
            return Err(malformed(ln, format!("expected {c} columns")));
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(i, j, true),
                _ => return Err(malformed(ln, format!("unexpected character `{ch}`"))),
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(malformed(ln, "trailing content"));
    }
    Ok(m)
}
