//! Command-line front end.
//!
//! Exit status: 0 when every asserted property holds, 1 for a negative mathematical verdict,
//! 2 for unreadable input, usage errors and failed preconditions.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::admsurf::{parse_adm, print_adm, AdmissibleSurface, StandardFormReport, Target};
use crate::cellcx::{parse_2cx, parse_cells, print_2cx, Subcomplex, TwoComplex};
use crate::homlin::{cone_homology, homology, is_orientable, relative_homology, EdgeLoop, HomologySummary, Ring};
use crate::normalize::{make_standard_form, promote_orientation_perfect, Metrics, MoveLog};
use crate::par::ExecPolicy;
use crate::sclopt::{bavard_sandwich, scl_compare_under_inclusion, scl_lp, scl_upper_from_surface, OneChain, RotStructure};
use crate::veriharness::fixtures::FixtureSet;
use crate::veriharness::{chain_corpus, theorem_a_harness, theorem_b_harness, verify_theorem_main, Mode, Verdict};

#[derive(Parser, Debug)]
#[command(name = "sclcx", version, about = "2-complexes, admissible surfaces and exact scl")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Out::Text, global = true)]
    pub out: Out,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Sequential,
    Parallel,
}

impl From<Policy> for ExecPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Sequential => ExecPolicy::Sequential,
            Policy::Parallel => ExecPolicy::Parallel,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Surface, small-links and orientability checks of a `.2cx` complex.
    Check {
        complex: PathBuf,
        #[arg(long, default_value = "z")]
        ring: Ring,
    },
    /// Absolute, relative (`--rel` with a `.cells` file) or mapping-cone (`--loop`) homology.
    Homology {
        complex: PathBuf,
        cells: Option<PathBuf>,
        #[arg(long)]
        rel: bool,
        /// Edge word of a loop for the mapping cone, e.g. `"a+ b- c"`.
        #[arg(long = "loop")]
        loops: Vec<String>,
        #[arg(long, default_value = "z")]
        ring: Ring,
    },
    /// Admissible surfaces (`.adm`) over a target surface.
    Adm {
        #[command(subcommand)]
        command: AdmCommand,
    },
    /// scl of a chain in a free group, a comparison under basis inclusion, or a rotation sandwich.
    Scl {
        chain: Option<String>,
        /// Comma-separated generators; defaults to `a` up to the last letter used.
        #[arg(long)]
        basis: Option<String>,
        /// Compare with the value over this larger basis.
        #[arg(long)]
        compare: Option<String>,
        /// Target `.2cx` for the rotation lower bound.
        #[arg(long)]
        sandwich: Option<PathBuf>,
        #[arg(long = "loop")]
        loops: Vec<String>,
        /// `.adm` surface giving the upper bound.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Policy::Parallel)]
        policy: Policy,
    },
    /// Runs the containment verifier for a surface relative to a subcomplex.
    VerifyMain {
        target: PathBuf,
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Standard)]
        mode: Mode,
        #[arg(long, default_value = "q")]
        ring: Ring,
    },
    /// Isometric embedding harnesses for a subcomplex `T` of a surface `S`.
    Harness {
        #[command(subcommand)]
        which: HarnessCommand,
    },
    /// Built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum AdmCommand {
    Validate { target: PathBuf, surface: PathBuf },
    Report {
        target: PathBuf,
        surface: PathBuf,
        #[arg(long, default_value = "q")]
        ring: Ring,
    },
    Normalize { target: PathBuf, surface: PathBuf },
    Promote {
        target: PathBuf,
        surface: PathBuf,
        #[arg(long, value_parser = parse_eps)]
        eps: BigRational,
    },
}

#[derive(Subcommand, Debug)]
pub enum HarnessCommand {
    /// scl under the inclusion of fundamental groups, on a chain corpus or given chains.
    #[command(name = "a", alias = "A")]
    A {
        complex: PathBuf,
        cells: PathBuf,
        /// Chain over the basis of `π₁T`; repeatable. Defaults to the built-in corpus.
        #[arg(long)]
        chain: Vec<String>,
        #[arg(long, value_enum, default_value_t = Policy::Parallel)]
        policy: Policy,
    },
    /// `H2(T, c) → H2(S, c)` and transport of witness bounds.
    #[command(name = "b", alias = "B")]
    B {
        complex: PathBuf,
        cells: PathBuf,
        /// `.adm` witness over the extracted subcomplex `T`; repeatable.
        #[arg(long, required = true)]
        witness: Vec<PathBuf>,
        #[arg(long, default_value = "q")]
        ring: Ring,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixturesCommand {
    List,
    /// Prints a complex as `.2cx` or a surface as `.adm`.
    Dump { name: String },
}

fn parse_eps(s: &str) -> Result<BigRational, String> {
    s.parse::<BigRational>().map_err(|e| format!("`{s}` is not a rational p/q: {e}"))
}

/// Error carrying its exit status.
#[derive(Debug)]
struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

type Run = Result<(String, i32), Failure>;

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn run_cli<I, S>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<TwoComplex, Failure> {
    parse_2cx(&read(path)?).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load_cells(x: &TwoComplex, path: &Path) -> Result<Subcomplex, Failure> {
    parse_cells(x, &read(path)?).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load_target(path: &Path) -> Result<Arc<Target>, Failure> {
    Ok(Arc::new(Target::new(load_complex(path)?).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?))
}

fn load_surface(target: Arc<Target>, path: &Path) -> Result<AdmissibleSurface, Failure> {
    parse_adm(target, &read(path)?).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(fmt: Out, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match fmt {
        Out::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Out::Text => text(value),
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> Run {
    let fmt = cli.out;
    match &cli.command {
        Command::Check { complex, ring } => check(fmt, &load_complex(complex)?, *ring),
        Command::Homology { complex, cells, rel, loops, ring } => {
            let x = load_complex(complex)?;
            homology_cmd(fmt, &x, cells.as_deref(), *rel, loops, *ring)
        }
        Command::Adm { command } => adm(fmt, command),
        Command::Scl { chain, basis, compare, sandwich, loops, witness, policy } => match (sandwich, chain) {
            (Some(t), None) => sandwich_cmd(fmt, t, loops, witness.as_deref()),
            (None, Some(c)) => scl_cmd(fmt, c, basis.as_deref(), compare.as_deref(), (*policy).into()),
            _ => Err(Failure(2, "give either a chain or --sandwich <target>".into())),
        },
        Command::VerifyMain { target, surface, sub, mode, ring } => {
            let tg = load_target(target)?;
            let s = load_surface(tg.clone(), surface)?;
            let t = load_cells(&tg.complex, sub)?;
            let r = verify_theorem_main(&s, &t, *ring, *mode)?;
            let code = status(r.verdict == Verdict::Contained && r.agrees());
            Ok((emit(fmt, &r, containment_text), code))
        }
        Command::Harness { which } => harness(fmt, which),
        Command::Fixtures { command } => fixtures(fmt, command),
    }
}

#[derive(Serialize)]
struct CheckReport {
    vertices: usize,
    edges: usize,
    faces: usize,
    euler: i64,
    surface: bool,
    boundary_vertices: Vec<String>,
    non_surface_vertices: Vec<String>,
    small_links: bool,
    small_links_witness: Option<String>,
    orientable: bool,
    ring: Ring,
}

fn check(fmt: Out, x: &TwoComplex, ring: Ring) -> Run {
    let s = x.surface_check();
    let small = x.has_small_links();
    let names = |vs: &[usize]| vs.iter().map(|&v| x.vertex_name(v).to_string()).collect();
    let r = CheckReport {
        vertices: x.num_vertices(),
        edges: x.num_edges(),
        faces: x.num_faces(),
        euler: x.euler_characteristic(),
        surface: s.is_surface,
        boundary_vertices: names(&s.boundary_vertices),
        non_surface_vertices: names(&s.non_surface_vertices),
        small_links: small.holds,
        small_links_witness: small.witness.map(|e| x.edge(e).name.clone()),
        orientable: is_orientable(x, ring).is_some(),
        ring,
    };
    let code = status(r.surface && r.small_links && r.orientable);
    Ok((
        emit(fmt, &r, |r| {
            let mut t = format!("cells {} {} {}\neuler {}\n", r.vertices, r.edges, r.faces, r.euler);
            let _ = writeln!(t, "surface {}", r.surface);
            let _ = writeln!(t, "boundary_vertices [{}]", r.boundary_vertices.join(", "));
            if !r.non_surface_vertices.is_empty() {
                let _ = writeln!(t, "non_surface_vertices [{}]", r.non_surface_vertices.join(", "));
            }
            let _ = writeln!(t, "small_links {}", r.small_links);
            if let Some(w) = &r.small_links_witness {
                let _ = writeln!(t, "small_links_witness {w}");
            }
            let _ = writeln!(t, "orientable {} over {}", r.orientable, r.ring);
            t
        }),
        code,
    ))
}

fn homology_text(h: &HomologySummary) -> String {
    let mut t = String::new();
    for d in &h.degrees {
        let _ = write!(t, "H{} rank {}", d.degree, d.rank);
        if !d.torsion.is_empty() {
            let tors: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
            let _ = write!(t, " torsion {}", tors.join(" "));
        }
        t.push('\n');
    }
    t
}

fn homology_cmd(fmt: Out, x: &TwoComplex, cells: Option<&Path>, rel: bool, loops: &[String], ring: Ring) -> Run {
    let h = match (rel, cells, loops.is_empty()) {
        (true, Some(c), true) => relative_homology(x, &load_cells(x, c)?, ring)?,
        (false, None, true) => homology(x, ring),
        (false, None, false) => {
            let ls: Vec<EdgeLoop> =
                loops.iter().map(|w| Ok(EdgeLoop::new(x.parse_word(w)?, 1))).collect::<Result<_, Failure>>()?;
            cone_homology(x, &ls, ring)?.summary
        }
        (true, None, _) => return Err(Failure(2, "--rel needs a .cells file".into())),
        (false, Some(_), _) => return Err(Failure(2, "a .cells file needs --rel".into())),
        (true, Some(_), false) => return Err(Failure(2, "--rel and --loop are exclusive".into())),
    };
    Ok((emit(fmt, &h, homology_text), 0))
}

#[derive(Serialize)]
struct AdmReport {
    pieces: [usize; 3],
    euler: i64,
    chi_minus: i64,
    components: usize,
    degrees: Vec<i64>,
    uniform_degree: Option<i64>,
    standard_form: StandardFormReport,
    standard: bool,
    perfect: bool,
    pushforward: Vec<String>,
    coordinates: Vec<String>,
}

fn adm_report(s: &AdmissibleSurface, ring: Ring) -> Result<AdmReport, Failure> {
    let d = s.degree();
    let p = s.pushforward_class(ring)?;
    let x = s.complex();
    let report = s.standard_form_report();
    Ok(AdmReport {
        pieces: [s.vpieces().len(), s.hpieces().len(), s.fpieces().len()],
        euler: s.euler_characteristic(),
        chi_minus: -s.reduced_euler(),
        components: s.components().len(),
        degrees: d.per_circle,
        uniform_degree: d.n,
        standard: report.is_standard(),
        perfect: report.is_perfect(),
        standard_form: report,
        pushforward: p
            .chain
            .iter()
            .enumerate()
            .filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign)
            .map(|(f, c)| format!("{c}*{}", x.face(f).name))
            .collect(),
        coordinates: p.coordinates.iter().map(ToString::to_string).collect(),
    })
}

fn adm_text(r: &AdmReport) -> String {
    let f = &r.standard_form;
    let mut t = String::new();
    let _ = writeln!(t, "pieces {} vdiscs {} handles {} cdiscs", r.pieces[0], r.pieces[1], r.pieces[2]);
    let _ = writeln!(t, "euler {}\nchi_minus {}\ncomponents {}", r.euler, r.chi_minus, r.components);
    let degs: Vec<String> = r.degrees.iter().map(ToString::to_string).collect();
    let _ = writeln!(t, "degrees [{}]", degs.join(", "));
    match r.uniform_degree {
        Some(n) => {
            let _ = writeln!(t, "uniform_degree {n}");
        }
        None => t.push_str("uniform_degree none\n"),
    }
    for (k, v) in [
        ("transverse", f.transverse),
        ("incompressible", f.incompressible),
        ("disc_sphere_free", f.disc_sphere_free),
        ("monotone", f.monotone),
        ("connected_links", f.connected_links),
        ("non_folded", f.non_folded),
        ("orientation_perfect", f.orientation_perfect),
        ("standard", r.standard),
        ("perfect", r.perfect),
    ] {
        let _ = writeln!(t, "{k} {v}");
    }
    let _ = writeln!(t, "pushforward {}", if r.pushforward.is_empty() { "0".into() } else { r.pushforward.join(" + ") });
    let _ = writeln!(t, "coordinates [{}]", r.coordinates.join(", "));
    t
}

#[derive(Serialize)]
struct Rewritten {
    log: MoveLog,
    before: Metrics,
    after: Metrics,
    cover_degree: Option<usize>,
    gluings: Option<usize>,
    ratio_before: Option<String>,
    ratio_after: Option<String>,
    allowance: Option<String>,
    bound_holds: Option<bool>,
    standard: bool,
    perfect: bool,
    surface: String,
}

fn rewritten_text(r: &Rewritten) -> String {
    let mut t = r.log.to_string();
    let _ = writeln!(t, "chi_minus {} -> {}", r.before.chi_minus, r.after.chi_minus);
    let _ = writeln!(t, "standard {}\nperfect {}", r.standard, r.perfect);
    if let (Some(n), Some(g)) = (r.cover_degree, r.gluings) {
        let _ = writeln!(t, "cover_degree {n}\ngluings {g}");
    }
    if let (Some(a), Some(b), Some(e), Some(ok)) = (&r.ratio_before, &r.ratio_after, &r.allowance, r.bound_holds) {
        let _ = writeln!(t, "ratio {a} -> {b} allowance {e} bound_holds {ok}");
    }
    t.push_str("---\n");
    t.push_str(&r.surface);
    t
}

fn adm(fmt: Out, cmd: &AdmCommand) -> Run {
    match cmd {
        AdmCommand::Validate { target, surface } => {
            let s = load_surface(load_target(target)?, surface)?;
            let r = serde_json::json!({ "valid": true, "vdiscs": s.vpieces().len(), "handles": s.hpieces().len(), "cdiscs": s.fpieces().len() });
            Ok((emit(fmt, &r, |_| "valid\n".into()), 0))
        }
        AdmCommand::Report { target, surface, ring } => {
            let s = load_surface(load_target(target)?, surface)?;
            let r = adm_report(&s, *ring)?;
            Ok((emit(fmt, &r, adm_text), 0))
        }
        AdmCommand::Normalize { target, surface } => {
            let s = load_surface(load_target(target)?, surface)?;
            let (n, log) = make_standard_form(&s)?;
            let preserved = log.is_chained() && log.entries.iter().all(|e| e.class_preserved != Some(false));
            let r = Rewritten {
                before: Metrics::of(&s),
                after: Metrics::of(&n),
                log,
                cover_degree: None,
                gluings: None,
                ratio_before: None,
                ratio_after: None,
                allowance: None,
                bound_holds: None,
                standard: n.standard_form_report().is_standard(),
                perfect: n.standard_form_report().is_perfect(),
                surface: print_adm(&n),
            };
            Ok((emit(fmt, &r, rewritten_text), status(preserved)))
        }
        AdmCommand::Promote { target, surface, eps } => {
            let s = load_surface(load_target(target)?, surface)?;
            let p = promote_orientation_perfect(&s, eps)?;
            let r = Rewritten {
                before: Metrics::of(&s),
                after: Metrics::of(&p.surface),
                log: p.log.clone(),
                cover_degree: Some(p.cover_degree),
                gluings: Some(p.gluings),
                ratio_before: Some(p.ratio_before.to_string()),
                ratio_after: Some(p.ratio_after.to_string()),
                allowance: Some(p.allowance.to_string()),
                bound_holds: Some(p.bound_holds()),
                standard: p.surface.standard_form_report().is_standard(),
                perfect: p.surface.standard_form_report().is_perfect(),
                surface: print_adm(&p.surface),
            };
            Ok((emit(fmt, &r, rewritten_text), status(p.bound_holds() && p.surface.standard_form_report().is_perfect())))
        }
    }
}

fn parse_basis(text: &str) -> Result<Vec<char>, Failure> {
    let mut out = Vec::new();
    for tok in text.split(',') {
        let mut cs = tok.trim().chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) if c.is_ascii_lowercase() && !out.contains(&c) => out.push(c),
            _ => return Err(Failure(2, format!("bad generator `{tok}` in basis `{text}`"))),
        }
    }
    Ok(out)
}

fn default_basis(chain: &str) -> Vec<char> {
    let top = chain.chars().filter(char::is_ascii_alphabetic).map(|c| c.to_ascii_lowercase()).max().unwrap_or('a');
    ('a'..=top).collect()
}

#[derive(Serialize)]
struct SclReport {
    chain: String,
    basis: String,
    value: crate::sclopt::SclValue,
    certificate_verified: bool,
}

fn scl_cmd(fmt: Out, chain: &str, basis: Option<&str>, compare: Option<&str>, policy: ExecPolicy) -> Run {
    let basis = match basis {
        Some(b) => parse_basis(b)?,
        None => default_basis(chain),
    };
    let c = OneChain::parse(chain, &basis)?;
    if let Some(amb) = compare {
        let r = scl_compare_under_inclusion(&c, &parse_basis(amb)?, policy)?;
        let code = status(r.monotone && r.equal);
        return Ok((
            emit(fmt, &r, |r| format!("chain {}\nsub {}\nambient {}\nmonotone {}\nequal {}\n", r.chain, r.sub, r.ambient, r.monotone, r.equal)),
            code,
        ));
    }
    let res = scl_lp(&c, policy)?;
    let r = SclReport { chain: c.to_string(), basis: basis.iter().collect(), certificate_verified: res.verify(), value: res.value };
    if !r.certificate_verified {
        return Err(Failure(1, format!("LP certificate for `{}` does not verify", r.chain)));
    }
    Ok((emit(fmt, &r, |r| format!("{}\n", r.value)), 0))
}

fn sandwich_cmd(fmt: Out, target: &Path, loops: &[String], witness: Option<&Path>) -> Run {
    let tg = load_target(target)?;
    let (edge_loops, upper) = match witness {
        Some(w) => {
            let s = load_surface(tg.clone(), w)?;
            if !loops.is_empty() {
                return Err(Failure(2, "--loop is taken from the witness; do not give both".into()));
            }
            (s.edge_loops(), Some(scl_upper_from_surface(&s)?))
        }
        None if loops.is_empty() => return Err(Failure(2, "--sandwich needs --loop or --witness".into())),
        None => (
            loops.iter().map(|w| Ok(EdgeLoop::new(tg.complex.parse_word(w)?, 1))).collect::<Result<_, Failure>>()?,
            None,
        ),
    };
    let rot = RotStructure::balanced(tg)?;
    let s = bavard_sandwich(&rot, &edge_loops, upper)?;
    Ok((
        emit(fmt, &s, |s| {
            let mut t = format!("lower {}\n", s.lower);
            match (&s.upper, s.exact()) {
                (Some(u), Some(e)) => {
                    let _ = writeln!(t, "upper {u}\nexact {e}");
                }
                (Some(u), None) => {
                    let _ = writeln!(t, "upper {u}");
                }
                _ => t.push_str("upper none\n"),
            }
            t
        }),
        0,
    ))
}

fn names(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

fn containment_text(r: &crate::veriharness::ContainmentReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "mode {} ring {}", r.mode, r.ring);
    let _ = writeln!(t, "image vertices {} edges {} faces {}", names(&r.image.vertices), names(&r.image.edges), names(&r.image.faces));
    let _ = writeln!(t, "image_in_t faces {}", names(&r.image_in_t.faces));
    let _ = writeln!(t, "image_small_links {}\nimage_orientable {}", r.image_small_links, r.image_orientable);
    let _ = writeln!(t, "hypothesis {} ({})", r.hypothesis.holds, r.hypothesis.detail);
    for (f, k) in &r.hypothesis.class_outside {
        let _ = writeln!(t, "class_outside {f} {k}");
    }
    let _ = writeln!(t, "image_hypothesis {} ({})", r.image_hypothesis.holds, r.image_hypothesis.detail);
    let _ = writeln!(t, "boundary_claim {}\nno_isolated_cells {}", r.boundary_claim, r.no_isolated_cells);
    for f in &r.faces {
        let _ = writeln!(t, "face {} over {} in_t {}", f.piece, f.face, f.in_t);
    }
    let _ = writeln!(t, "proof_contained {}\ndirect_contained {}", r.proof_contained, r.direct_contained);
    let _ = writeln!(t, "verdict {:?}", r.verdict);
    t
}

fn harness(fmt: Out, which: &HarnessCommand) -> Run {
    match which {
        HarnessCommand::A { complex, cells, chain, policy } => {
            let x = load_complex(complex)?;
            let t = load_cells(&x, cells)?;
            let (tx, _) = t.extract(&x);
            let rank = crate::veriharness::Spine::new(&tx)?.rank();
            let basis = OneChain::standard_basis(rank);
            let chains: Vec<OneChain> = if chain.is_empty() {
                chain_corpus(rank)
            } else {
                chain.iter().map(|c| OneChain::parse(c, &basis)).collect::<Result<_, _>>()?
            };
            let r = theorem_a_harness(&x, &t, &chains, (*policy).into())?;
            let code = status(r.holds);
            Ok((
                emit(fmt, &r, |r| {
                    let mut s = format!("basis {} -> {}\n", r.sub_basis, r.ambient_basis);
                    for (g, w) in r.sub_basis.chars().zip(&r.images) {
                        let _ = writeln!(s, "image {g} = {w}");
                    }
                    let _ = writeln!(s, "h1_injective {}\nh2_rel_rank {}", r.h1.injective, r.h1.rank_h2_rel);
                    for row in &r.rows {
                        let _ = writeln!(s, "{} | {} | {} | {} | {}", row.chain, row.image, row.sub, row.ambient, if row.holds { "ok" } else { "FAIL" });
                    }
                    let _ = writeln!(s, "holds {}", r.holds);
                    s
                }),
                code,
            ))
        }
        HarnessCommand::B { complex, cells, witness, ring } => {
            let x = load_complex(complex)?;
            let t = load_cells(&x, cells)?;
            let (tx, _) = t.extract(&x);
            let tt = Arc::new(Target::new(tx)?);
            let ws: Vec<(String, AdmissibleSurface)> = witness
                .iter()
                .map(|p| Ok((p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(), load_surface(tt.clone(), p)?)))
                .collect::<Result<_, Failure>>()?;
            let r = theorem_b_harness(&x, &t, &ws, *ring)?;
            let code = status(r.holds);
            Ok((
                emit(fmt, &r, |r| {
                    let mut s = format!("H2(T,c) rank {}\nH2(S,c) rank {}\nimage rank {}\ninjective {}\n", r.rank_h2_t_c, r.rank_h2_s_c, r.rank_image, r.injective);
                    for w in &r.witnesses {
                        let c = w.containment.as_ref().map_or("n/a".to_string(), |v| format!("{v:?}"));
                        let _ = writeln!(s, "witness {} bound_in_t {} bound_in_s {} equal {} containment {c}", w.name, w.bound_in_t, w.bound_in_s, w.equal);
                    }
                    let _ = writeln!(s, "holds {}\nscope {}", r.holds, r.scope);
                    s
                }),
                code,
            ))
        }
    }
}

#[derive(Serialize)]
struct FixtureEntry {
    name: &'static str,
    kind: &'static str,
    detail: String,
}

fn fixtures(fmt: Out, cmd: &FixturesCommand) -> Run {
    let set = FixtureSet::load();
    match cmd {
        FixturesCommand::List => {
            let mut rows: Vec<FixtureEntry> = set
                .complexes
                .iter()
                .map(|f| FixtureEntry { name: f.name, kind: "complex", detail: format!("euler {} betti {:?}", f.euler, f.betti) })
                .collect();
            rows.extend(set.surfaces.iter().map(|f| FixtureEntry { name: f.name, kind: "surface", detail: format!("over {}", f.target) }));
            let bad = set.self_check();
            if !bad.is_empty() {
                return Err(Failure(1, format!("fixtures fail their self-checks: {}", bad.join(", "))));
            }
            Ok((
                emit(fmt, &rows, |rows| rows.iter().map(|r| format!("{} {} {}\n", r.kind, r.name, r.detail)).collect()),
                0,
            ))
        }
        FixturesCommand::Dump { name } => {
            if let Some(x) = set.complex(name) {
                return Ok((emit(fmt, &serde_json::json!({ "name": name, "2cx": print_2cx(x) }), |_| print_2cx(x)), 0));
            }
            let f = set.surface(name).ok_or_else(|| Failure(2, format!("no fixture named `{name}`")))?;
            let text = print_adm(&f.surface);
            Ok((emit(fmt, &serde_json::json!({ "name": name, "target": f.target, "adm": text }), |_| text.clone()), 0))
        }
    }
}
