use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use super::{AdmError, AdmissibleSurface, Assignment, FPiece, FreeArc, HPiece, NamedLoop, Pieces, Side, Slot, Target, VPiece, End};
use crate::homlin::EdgeLoop;

fn perr(line: usize, msg: impl Into<String>) -> AdmError {
    AdmError::Parse { line, msg: msg.into() }
}

fn lookup(map: &HashMap<&str, usize>, name: &str, line: usize, kind: &str) -> Result<usize, AdmError> {
    map.get(name).copied().ok_or_else(|| perr(line, format!("unknown {kind} `{name}`")))
}

/// Parses the `.adm` text format against a target surface.
///
/// ```text
/// loop w = c- x 1
/// vdisc D at v : h1.src h1.dst free
/// handle h1 over a
/// cdisc F over f sign + : h1 h2 h3
/// bdry h1.L -> w degree 1 via f 1
/// certificate incompressible
/// ```
pub fn parse_adm(target: Arc<Target>, text: &str) -> Result<AdmissibleSurface, AdmError> {
    let x = &target.complex;
    let mut lines: Vec<(usize, &str, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        lines.push((i + 1, toks[0], toks));
    }
    let mut loop_ids = HashMap::new();
    let mut vd_ids = HashMap::new();
    let mut h_ids = HashMap::new();
    let mut f_ids = HashMap::new();
    for (ln, kind, toks) in &lines {
        let name = *toks.get(1).ok_or_else(|| perr(*ln, "missing name"))?;
        let map = match *kind {
            "loop" => &mut loop_ids,
            "vdisc" => &mut vd_ids,
            "handle" => &mut h_ids,
            "cdisc" => &mut f_ids,
            "bdry" | "certificate" => continue,
            other => return Err(perr(*ln, format!("unknown stanza `{other}`"))),
        };
        let next = map.len();
        if map.insert(name, next).is_some() {
            return Err(perr(*ln, format!("duplicate name `{name}`")));
        }
    }

    let mut loops = Vec::new();
    let mut pieces = Pieces::default();
    for (ln, kind, toks) in &lines {
        let ln = *ln;
        match *kind {
            "loop" => {
                let body = toks[2..].to_vec();
                if body.first() != Some(&"=") {
                    return Err(perr(ln, "expected `loop <name> = <word>`"));
                }
                let (word_toks, mult) = match body.iter().position(|t| *t == "x") {
                    Some(p) => {
                        let m: i64 = body
                            .get(p + 1)
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| perr(ln, "bad multiplicity"))?;
                        (&body[1..p], m)
                    }
                    None => (&body[1..], 1),
                };
                let word = x.parse_word(&word_toks.join(" ")).map_err(|e| perr(ln, e.to_string()))?;
                loops.push(NamedLoop { name: toks[1].to_string(), edge_loop: EdgeLoop::new(word, mult) });
            }
            "vdisc" => {
                if toks.get(2) != Some(&"at") || toks.get(4).is_some_and(|t| *t != ":") {
                    return Err(perr(ln, "expected `vdisc <name> at <vertex> : <slots>`"));
                }
                let vname = toks.get(3).ok_or_else(|| perr(ln, "missing vertex"))?;
                let vertex = x.vertex_id(vname).ok_or_else(|| perr(ln, format!("unknown vertex `{vname}`")))?;
                let mut slots = Vec::new();
                for t in toks.iter().skip(5) {
                    if *t == "free" {
                        slots.push(Slot::Free);
                        continue;
                    }
                    let (h, e) = t.rsplit_once('.').ok_or_else(|| perr(ln, format!("bad slot `{t}`")))?;
                    let end = match e {
                        "src" => End::Src,
                        "dst" => End::Dst,
                        _ => return Err(perr(ln, format!("bad handle end `{t}`"))),
                    };
                    slots.push(Slot::End(lookup(&h_ids, h, ln, "handle")?, end));
                }
                pieces.vpieces.push(VPiece { name: toks[1].to_string(), vertex, slots });
            }
            "handle" => {
                if toks.len() != 4 || toks[2] != "over" {
                    return Err(perr(ln, "expected `handle <name> over <edge>`"));
                }
                let edge = x.edge_id(toks[3]).ok_or_else(|| perr(ln, format!("unknown edge `{}`", toks[3])))?;
                pieces.hpieces.push(HPiece { name: toks[1].to_string(), edge });
            }
            "cdisc" => {
                if toks.len() < 7 || toks[2] != "over" || toks[4] != "sign" || toks[6] != ":" {
                    return Err(perr(ln, "expected `cdisc <name> over <face> sign +|- : <handles>`"));
                }
                let face = x.face_id(toks[3]).ok_or_else(|| perr(ln, format!("unknown face `{}`", toks[3])))?;
                let sign = match toks[5] {
                    "+" => 1,
                    "-" => -1,
                    s => return Err(perr(ln, format!("bad sign `{s}`"))),
                };
                let sides = toks[7..].iter().map(|h| lookup(&h_ids, h, ln, "handle")).collect::<Result<_, _>>()?;
                pieces.fpieces.push(FPiece { name: toks[1].to_string(), face, sign, sides });
            }
            "bdry" => {
                if toks.len() < 6 || toks[2] != "->" || toks[4] != "degree" {
                    return Err(perr(ln, "expected `bdry <arc> -> <loop> degree <d> [via <face> <k> ...]`"));
                }
                let arc = parse_arc(toks[1], &vd_ids, &h_ids, ln)?;
                let circle = lookup(&loop_ids, toks[3], ln, "loop")?;
                let degree: i64 = toks[5].parse().map_err(|_| perr(ln, "bad degree"))?;
                let mut homotopy = BTreeMap::new();
                if toks.len() > 6 {
                    if toks[6] != "via" || (toks.len() - 7) % 2 != 0 {
                        return Err(perr(ln, "expected `via <face> <coefficient> ...`"));
                    }
                    for pair in toks[7..].chunks(2) {
                        let f = x.face_id(pair[0]).ok_or_else(|| perr(ln, format!("unknown face `{}`", pair[0])))?;
                        let k: i64 = pair[1].parse().map_err(|_| perr(ln, "bad coefficient"))?;
                        *homotopy.entry(f).or_insert(0) += k;
                    }
                    homotopy.retain(|_, k| *k != 0);
                }
                pieces.assignments.push(Assignment { arc, circle, degree, homotopy });
            }
            "certificate" => {
                if toks.len() != 2 || toks[1] != "incompressible" {
                    return Err(perr(ln, "expected `certificate incompressible`"));
                }
                pieces.incompressible = true;
            }
            _ => unreachable!(),
        }
    }
    AdmissibleSurface::new(target, Arc::new(loops), pieces)
}

fn parse_arc(t: &str, vd: &HashMap<&str, usize>, hs: &HashMap<&str, usize>, ln: usize) -> Result<FreeArc, AdmError> {
    let (name, part) = t.rsplit_once('.').ok_or_else(|| perr(ln, format!("bad arc `{t}`")))?;
    match part {
        "L" => Ok(FreeArc::Side(lookup(hs, name, ln, "handle")?, Side::Left)),
        "R" => Ok(FreeArc::Side(lookup(hs, name, ln, "handle")?, Side::Right)),
        "loop" => Ok(FreeArc::Loop(lookup(vd, name, ln, "vertex disc")?)),
        _ => {
            let d = lookup(vd, name, ln, "vertex disc")?;
            let idx = |s: &str| s.parse::<usize>().map_err(|_| perr(ln, format!("bad arc `{t}`")));
            if let Some(i) = part.strip_prefix('s') {
                Ok(FreeArc::Slot(d, idx(i)?))
            } else if let Some(i) = part.strip_prefix('c') {
                Ok(FreeArc::Corner(d, idx(i)?))
            } else {
                Err(perr(ln, format!("bad arc `{t}`")))
            }
        }
    }
}

pub fn format_arc(s: &AdmissibleSurface, a: FreeArc) -> String {
    match a {
        FreeArc::Side(h, Side::Left) => format!("{}.L", s.hpieces()[h].name),
        FreeArc::Side(h, Side::Right) => format!("{}.R", s.hpieces()[h].name),
        FreeArc::Slot(d, i) => format!("{}.s{i}", s.vpieces()[d].name),
        FreeArc::Corner(d, i) => format!("{}.c{i}", s.vpieces()[d].name),
        FreeArc::Loop(d) => format!("{}.loop", s.vpieces()[d].name),
    }
}

/// Canonical `.adm` text; `parse_adm(target, &print_adm(s))` reproduces `s`.
pub fn print_adm(s: &AdmissibleSurface) -> String {
    let x = s.complex();
    let mut out = String::new();
    for l in s.loops().iter() {
        let _ = write!(out, "loop {} = {}", l.name, x.format_word(&l.edge_loop.word));
        if l.edge_loop.mult != 1 {
            let _ = write!(out, " x {}", l.edge_loop.mult);
        }
        out.push('\n');
    }
    for h in s.hpieces() {
        let _ = writeln!(out, "handle {} over {}", h.name, x.edge(h.edge).name);
    }
    for v in s.vpieces() {
        let _ = write!(out, "vdisc {} at {} :", v.name, x.vertex_name(v.vertex));
        for slot in &v.slots {
            match slot {
                Slot::Free => out.push_str(" free"),
                Slot::End(h, e) => {
                    let tag = if *e == End::Src { "src" } else { "dst" };
                    let _ = write!(out, " {}.{tag}", s.hpieces()[*h].name);
                }
            }
        }
        out.push('\n');
    }
    for f in s.fpieces() {
        let sign = if f.sign > 0 { "+" } else { "-" };
        let _ = write!(out, "cdisc {} over {} sign {sign} :", f.name, x.face(f.face).name);
        for &h in &f.sides {
            let _ = write!(out, " {}", s.hpieces()[h].name);
        }
        out.push('\n');
    }
    for a in s.assignments() {
        let _ = write!(out, "bdry {} -> {} degree {}", format_arc(s, a.arc), s.loops()[a.circle].name, a.degree);
        if !a.homotopy.is_empty() {
            out.push_str(" via");
            for (f, k) in &a.homotopy {
                let _ = write!(out, " {} {k}", x.face(*f).name);
            }
        }
        out.push('\n');
    }
    if s.incompressible() {
        out.push_str("certificate incompressible\n");
    }
    out
}
