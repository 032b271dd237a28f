//! The `.2cx` text format:
//!
//! ```text
//! # torus
//! vertex v
//! edge a v v
//! edge b v v
//! face f = a+ b+ a- b-
//! ```

use std::collections::HashMap;

use super::complex::parse_signed_word;
use super::{CellSet, ComplexBuilder, ComplexError, Subcomplex, TwoComplex};

pub fn parse_2cx(text: &str) -> Result<TwoComplex, ComplexError> {
    let mut b = ComplexBuilder::new();
    let mut vidx: HashMap<String, usize> = HashMap::new();
    let mut eidx: HashMap<String, usize> = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: &str| ComplexError::Parse { line: line_no, msg: msg.to_string() };
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("vertex") => {
                let name = toks.next().ok_or_else(|| perr("vertex needs a name"))?;
                if toks.next().is_some() {
                    return Err(perr("trailing tokens after vertex name"));
                }
                let id = b.vertex(name);
                vidx.insert(name.to_string(), id);
            }
            Some("edge") => {
                let parts: Vec<&str> = toks.collect();
                let [name, src, dst] = parts[..] else {
                    return Err(perr("expected `edge <name> <src> <dst>`"));
                };
                let s = *vidx.get(src).ok_or_else(|| ComplexError::DanglingEndpoint { edge: name.into(), vertex: src.into() })?;
                let d = *vidx.get(dst).ok_or_else(|| ComplexError::DanglingEndpoint { edge: name.into(), vertex: dst.into() })?;
                let id = b.edge(name, s, d);
                eidx.insert(name.to_string(), id);
            }
            Some("face") => {
                let rest = line["face".len()..].trim();
                let (name, word) = rest.split_once('=').ok_or_else(|| perr("expected `face <name> = <word>`"))?;
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(perr("bad face name"));
                }
                let w = parse_signed_word(word, |n| eidx.get(n).copied())?;
                b.face(name, w);
            }
            Some(other) => return Err(perr(&format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    b.build()
}

/// Canonical printer; `parse_2cx(print_2cx(x)) == x` and printing is byte-stable.
pub fn print_2cx(x: &TwoComplex) -> String {
    let mut out = String::new();
    for v in x.vertex_names() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in x.edges() {
        out.push_str(&format!("edge {} {} {}\n", e.name, x.vertex_name(e.src), x.vertex_name(e.dst)));
    }
    for f in x.faces() {
        out.push_str(&format!("face {} = {}\n", f.name, x.format_word(&f.word)));
    }
    out
}

/// Parses a `.cells` file (`vertex <name>`, `edge <name>`, `face <name>` lines) and closes
/// the listed cells under the boundary relation.
pub fn parse_cells(x: &TwoComplex, text: &str) -> Result<Subcomplex, ComplexError> {
    let mut cells = CellSet::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| ComplexError::Parse { line: n + 1, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [kind, name] = toks[..] else {
            return Err(perr("expected `<vertex|edge|face> <name>`".into()));
        };
        let unknown = || perr(format!("unknown {kind} `{name}`"));
        match kind {
            "vertex" => cells.vertices.insert(x.vertex_id(name).ok_or_else(unknown)?),
            "edge" => cells.edges.insert(x.edge_id(name).ok_or_else(unknown)?),
            "face" => cells.faces.insert(x.face_id(name).ok_or_else(unknown)?),
            _ => return Err(perr(format!("unknown cell kind `{kind}`"))),
        };
    }
    Subcomplex::induced(x, &cells)
}

/// Canonical `.cells` listing of a subcomplex: every cell, by dimension then id.
pub fn print_cells(x: &TwoComplex, s: &Subcomplex) -> String {
    let mut out = String::new();
    for &v in &s.cells.vertices {
        out.push_str(&format!("vertex {}\n", x.vertex_name(v)));
    }
    for &e in &s.cells.edges {
        out.push_str(&format!("edge {}\n", x.edge(e).name));
    }
    for &f in &s.cells.faces {
        out.push_str(&format!("face {}\n", x.face(f).name));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_close_up() {
        let x = parse_2cx("vertex v\nedge a v v\nedge b v v\nedge c v v\nface f = a b a- b- c-\n").unwrap();
        let s = parse_cells(&x, "# T\nface f\n").unwrap();
        assert_eq!(s.cells.edges.len(), 3);
        assert_eq!(print_cells(&x, &s), "vertex v\nedge a\nedge b\nedge c\nface f\n");
        assert_eq!(parse_cells(&x, &print_cells(&x, &s)).unwrap(), s);
        assert!(matches!(parse_cells(&x, "face g\n"), Err(ComplexError::Parse { line: 1, .. })));
        assert!(matches!(parse_cells(&x, "edge\n"), Err(ComplexError::Parse { .. })));
    }

    #[test]
    fn parse_print_round_trip_is_byte_stable() {
        let text = "# torus\nvertex v\nedge a v v\nedge b v v\nface f = a b a- b-   # square\n";
        let x = parse_2cx(text).unwrap();
        let canon = print_2cx(&x);
        assert_eq!(canon, "vertex v\nedge a v v\nedge b v v\nface f = a+ b+ a- b-\n");
        assert_eq!(print_2cx(&parse_2cx(&canon).unwrap()), canon);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_2cx("vertex v\nbogus\n"), Err(ComplexError::Parse { line: 2, .. })));
        assert!(matches!(parse_2cx("edge a v v\n"), Err(ComplexError::DanglingEndpoint { .. })));
        assert!(matches!(parse_2cx("vertex v\nface f = q\n"), Err(ComplexError::UnknownEdge(_))));
    }
}
