//! The `qtoric` command surface. Every command returns an [`Output`]: either a
//! descriptor (when no `--out` is given to a constructing command) or a
//! deterministic JSON [`Report`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qtoric_core::analogous::{c_matrix, classify_shift, face_rank_check, support_distances};
use qtoric_core::cohomology::poly::Poly;
use qtoric_core::cohomology::{chern_numbers, partition_label, presentation, sign_mismatches, toric_obstruction};
use qtoric_core::io::{self, HPolytopeDesc, OmniDesc, QuadraticDesc};
use qtoric_core::moment_angle::{quadratic_system, verify_samples};
use qtoric_core::quasitoric::builders;
use qtoric_core::quasitoric::sum::{add_cobordism, box_sum, connected_sum};
use qtoric_core::quasitoric::validate_dichar;
use qtoric_core::rational::format_rational;
use qtoric_core::{Error, HPolytope, OmniQT};

#[derive(Parser, Debug)]
#[command(name = "qtoric", version, about = "Omnioriented quasitoric manifolds from polytopes and matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a standard example: cp N, cp-eps N e1..eN, cube N, bott N d.., bflag N,
    /// s2n N, brs R S, simplex-polytope N, cube-polytope N, product A.json B.json
    Build {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        /// Reverse the orientation
        #[arg(long)]
        reverse: bool,
        /// Conjugate the facial bundle of this facet (1-based)
        #[arg(long)]
        conjugate: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected sum at the initial vertices
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box sum through an intermediate cube
    Boxsum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum of cobordism classes, with an additivity check on Chern numbers
    Add {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex signs
    Signs { file: PathBuf },
    /// Characteristic numbers and the Todd genus
    Chern { file: PathBuf },
    /// Cohomology ring presentation
    Ring {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The quadrics cutting out the moment-angle complex, with sampled checks
    Quadrics {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Classify a shifted arrangement
    Analogous {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        shift: PathBuf,
    },
    /// Run every invariant check on a descriptor
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(command: &str, inputs: Vec<InputDigest>, results: Value) -> Self {
        Report { command: command.into(), inputs, results, checks: Vec::new() }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug)]
pub enum Output {
    Descriptor(String),
    Report(Report),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Report(r) if !r.passed() => 1,
            _ => 0,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Output::Descriptor(s) => s.clone(),
            Output::Report(r) => io::to_json(r),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_input(path: &Path) -> CliResult<(String, InputDigest)> {
    let bytes = fs::read(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let digest = InputDigest { name: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) };
    let text = String::from_utf8(bytes).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Ok((text, digest))
}

fn write_output(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, format!("{text}\n")).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load_omni(path: &Path) -> CliResult<(OmniQT, InputDigest)> {
    let (text, digest) = read_input(path)?;
    let desc: OmniDesc = io::from_json(&text)?;
    Ok((desc.to_omniqt()?, digest))
}

/// An H descriptor, or the geometry of a manifold descriptor.
fn load_polytope(path: &Path) -> CliResult<(HPolytope, InputDigest)> {
    let (text, digest) = read_input(path)?;
    let value: Value = io::from_json(&text)?;
    let geometry = match value.get("geometry") {
        Some(g) => g.clone(),
        None if value.get("polytope").is_some() => return Err(usage(format!("{}: descriptor has no geometry", path.display()))),
        None => value,
    };
    let desc: HPolytopeDesc = serde_json::from_value(geometry).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((desc.to_polytope()?, digest))
}

fn labels(v: &[usize]) -> Vec<usize> {
    v.iter().map(|f| f + 1).collect()
}

fn summary(m: &OmniQT) -> Value {
    json!({
        "n": m.dim(),
        "m": m.num_facets(),
        "q": m.num_vertices(),
        "q_plus": m.q_plus(),
        "q_minus": m.q_minus(),
        "sign_sum": m.sign_sum(),
    })
}

/// `3*u3^2*u4 - u4^2`, with generator `i` of the substituted ring printed as
/// `u{offset + i + 1}`.
pub fn format_poly(p: &Poly, offset: usize) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.terms().iter().rev() {
        let negative = c < &qtoric_core::rational::int(0);
        let abs = if negative { -c.clone() } else { c.clone() };
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("u{}", offset + i + 1) } else { format!("u{}^{k}", offset + i + 1) })
            .collect();
        let mut term = factors.join("*");
        if term.is_empty() {
            term = format_rational(&abs);
        } else if abs != qtoric_core::rational::int(1) {
            term = format!("{}*{term}", format_rational(&abs));
        }
        if out.is_empty() {
            out = if negative { format!("-{term}") } else { term };
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    out
}

fn parse_params<T: std::str::FromStr>(name: &str, params: &[String], count: Option<usize>) -> CliResult<Vec<T>> {
    if let Some(c) = count {
        if params.len() != c {
            return Err(usage(format!("build {name} takes {c} parameter(s), got {}", params.len())));
        }
    }
    params.iter().map(|p| p.parse().map_err(|_| usage(format!("build {name}: cannot parse {p:?}")))).collect()
}

fn one_param(name: &str, params: &[String]) -> CliResult<usize> {
    Ok(parse_params::<usize>(name, params, Some(1))?[0])
}

enum Built {
    Manifold(OmniQT),
    Polytope(HPolytope),
}

fn build(name: &str, params: &[String], inputs: &mut Vec<InputDigest>) -> CliResult<Built> {
    Ok(match name {
        "cp" => Built::Manifold(builders::cp(one_param(name, params)?)?),
        "cp-eps" => {
            let (n, eps) = params.split_first().ok_or_else(|| usage("build cp-eps N e1 .. eN"))?;
            let n: usize = n.parse().map_err(|_| usage("build cp-eps: N must be a positive integer"))?;
            Built::Manifold(builders::cp_eps(n, &parse_params::<i64>(name, eps, Some(n))?)?)
        }
        "cube" => Built::Manifold(builders::cube(one_param(name, params)?)?),
        "bott" => {
            let (n, rest) = params.split_first().ok_or_else(|| usage("build bott N d(1,2) d(1,3) d(2,3) .."))?;
            let n: usize = n.parse().map_err(|_| usage("build bott: N must be a positive integer"))?;
            let values = parse_params::<i64>(name, rest, Some(n * n.saturating_sub(1) / 2))?;
            let mut it = values.into_iter();
            let d: Vec<Vec<i64>> = (0..n).map(|j| it.by_ref().take(j).collect()).collect();
            Built::Manifold(builders::bott_tower(n, &d)?)
        }
        "bflag" => Built::Manifold(builders::bounded_flag(one_param(name, params)?)?),
        "s2n" => Built::Manifold(builders::s_product(one_param(name, params)?)?),
        "brs" => {
            let rs = parse_params::<usize>(name, params, Some(2))?;
            Built::Manifold(builders::b_rs(rs[0], rs[1])?)
        }
        "simplex-polytope" => Built::Polytope(HPolytope::simplex(one_param(name, params)?)),
        "cube-polytope" => Built::Polytope(HPolytope::cube(one_param(name, params)?)),
        "product" => {
            if params.len() != 2 {
                return Err(usage("build product A.json B.json"));
            }
            let (a, da) = load_omni(Path::new(&params[0]))?;
            let (b, db) = load_omni(Path::new(&params[1]))?;
            inputs.extend([da, db]);
            Built::Manifold(a.product(&b)?)
        }
        other => {
            return Err(usage(format!(
                "unknown builder {other:?}; expected cp, cp-eps, cube, bott, bflag, s2n, brs, simplex-polytope, cube-polytope or product"
            )))
        }
    })
}

fn emit_manifold(command: &str, m: &OmniQT, inputs: Vec<InputDigest>, out: Option<&Path>) -> CliResult<Output> {
    let text = io::to_json(&OmniDesc::from(m));
    match out {
        None => Ok(Output::Descriptor(text)),
        Some(path) => {
            write_output(path, &text)?;
            let mut results = summary(m);
            results["output"] = json!(path.display().to_string());
            Ok(Output::Report(Report::new(command, inputs, results)))
        }
    }
}

fn cmd_build(name: &str, params: &[String], reverse: bool, conjugate: Option<usize>, out: Option<&Path>) -> CliResult<Output> {
    let mut inputs = Vec::new();
    match build(name, params, &mut inputs)? {
        Built::Manifold(mut m) => {
            if let Some(j) = conjugate {
                let j = j.checked_sub(1).ok_or_else(|| usage("--conjugate takes a 1-based facet label"))?;
                m = m.conjugate_facet(j)?;
            }
            if reverse {
                m = m.reverse_orientation();
            }
            emit_manifold("build", &m, inputs, out)
        }
        Built::Polytope(p) => {
            if reverse || conjugate.is_some() {
                return Err(usage("--reverse and --conjugate apply to manifolds only"));
            }
            let text = io::to_json(&HPolytopeDesc::from(&p));
            match out {
                None => Ok(Output::Descriptor(text)),
                Some(path) => {
                    write_output(path, &text)?;
                    let results = json!({
                        "n": p.dim(),
                        "m": p.num_facets(),
                        "vertices": p.num_vertices(),
                        "output": path.display().to_string(),
                    });
                    Ok(Output::Report(Report::new("build", inputs, results)))
                }
            }
        }
    }
}

fn cmd_binary(command: &str, a: &Path, b: &Path, out: Option<&Path>) -> CliResult<Output> {
    let (ma, da) = load_omni(a)?;
    let (mb, db) = load_omni(b)?;
    let m = match command {
        "sum" => connected_sum(&ma, &mb)?,
        "boxsum" => box_sum(&ma, &mb)?,
        _ => add_cobordism(&ma, &mb)?,
    };
    let mut output = emit_manifold(command, &m, vec![da, db], out)?;
    if command == "add" {
        if let Output::Report(report) = &mut output {
            let (ca, cb, cs) = (chern_numbers(&ma)?, chern_numbers(&mb)?, chern_numbers(&m)?);
            let mut ok = true;
            let mut numbers = serde_json::Map::new();
            for (((p, x), (_, y)), (_, z)) in ca.values.iter().zip(&cb.values).zip(&cs.values) {
                ok &= x + y == *z;
                numbers.insert(partition_label(p), json!(z));
            }
            report.results["chern_numbers"] = Value::Object(numbers);
            report.check("chern additivity", ok, format!("{:?} + {:?} -> {:?}", ca.values, cb.values, cs.values));
        }
    }
    Ok(output)
}

fn cross_check(report: &mut Report, m: &OmniQT) -> CliResult<()> {
    let mismatches = sign_mismatches(m)?;
    let top = chern_numbers(m)?.top();
    report.check(
        "sign/chern cross-check",
        mismatches.is_empty() && top == m.sign_sum(),
        format!("c{} = {top}, sign sum = {}, {} vertex mismatches", m.dim(), m.sign_sum(), mismatches.len()),
    );
    Ok(())
}

fn cmd_signs(file: &Path) -> CliResult<Output> {
    let (m, digest) = load_omni(file)?;
    let signs: Vec<Value> = m.polytope().vertex_sets().iter().zip(m.signs()).map(|(w, s)| json!({"vertex": labels(w), "sign": s.value()})).collect();
    let mut results = summary(&m);
    results["signs"] = json!(signs);
    let mut report = Report::new("signs", vec![digest], results);
    cross_check(&mut report, &m)?;
    Ok(Output::Report(report))
}

fn cmd_chern(file: &Path) -> CliResult<Output> {
    let (m, digest) = load_omni(file)?;
    let c = chern_numbers(&m)?;
    let ob = toric_obstruction(&m)?;
    let mut numbers = serde_json::Map::new();
    for (p, v) in &c.values {
        numbers.insert(partition_label(p), json!(v));
    }
    let verdict = if ob.class_obstructed {
        "no smooth projective toric variety in this cobordism class"
    } else if ob.not_toric_like {
        "negative vertices: not toric-like"
    } else {
        "no obstruction"
    };
    let mut results = json!({
        "n": m.dim(),
        "chern_numbers": numbers,
        "reference_vertex": labels(&c.reference_vertex),
        "q_minus": ob.q_minus,
        "todd": ob.todd.as_ref().map(format_rational),
        "verdict": verdict,
    });
    if m.dim() == 2 && m.num_facets() == 3 && m.q_minus() > 0 {
        results["open_questions"] = json!([
            "nonstandard omniorientation of CP2: the characteristic numbers above are derived; the alternative class [CP2] - 4[CP1]^2 is recorded as an open question and not asserted"
        ]);
    }
    let mut report = Report::new("chern", vec![digest], results);
    report.check("integral characteristic numbers", true, format!("{} partitions", c.values.len()));
    Ok(Output::Report(report))
}

fn cmd_ring(file: &Path, degree: Option<usize>) -> CliResult<Output> {
    let (m, digest) = load_omni(file)?;
    let pres = presentation(&m)?;
    let n = pres.dim;
    let d = degree.unwrap_or(n);
    let piece = pres.graded_piece(d)?;
    let k = pres.num_free();
    let basis: Vec<String> = piece.basis.iter().map(|e| format_poly(&Poly::monomial(e.clone(), qtoric_core::rational::int(1)), n)).collect();
    let gens: Vec<String> = pres.generator_forms().iter().enumerate().map(|(i, f)| format!("u{} = {}", i + 1, format_poly(f, n))).collect();
    let sr: Vec<String> = pres.sr_nonfaces.iter().map(|f| f.iter().map(|i| format!("u{}", i + 1)).collect::<Vec<_>>().join("*")).collect();
    let substituted: Vec<String> = pres.sr_generators().iter().map(|g| format_poly(g, n)).collect();
    let results = json!({
        "n": n,
        "m": pres.num_gens,
        "free_generators": (n + 1..=n + k).map(|i| format!("u{i}")).collect::<Vec<_>>(),
        "linear_relations": gens,
        "stanley_reisner": sr,
        "relations": substituted,
        "betti_numbers": pres.betti_numbers()?,
        "degree": d,
        "basis": basis,
    });
    let mut report = Report::new("ring", vec![digest], results);
    let top = pres.graded_piece(n)?.dim();
    report.check("top degree has rank one", top == 1, format!("dim H^{} = {top}", 2 * n));
    Ok(Output::Report(report))
}

fn sampling_checks(report: &mut Report, p: &HPolytope, samples: usize, seed: u64) -> CliResult<()> {
    let c = c_matrix(p)?;
    report.check("C A_P = 0", c.annihilates(p), "exact");
    let expected = p.num_facets() - p.dim();
    report.check("rank C = m - n", c.rank() == expected, format!("rank {} of {expected}", c.rank()));
    let faces = face_rank_check(&c, &p.combinatorial());
    report.check("face ranks", faces.passed(), format!("{} faces, {} failures", faces.faces_checked, faces.failures.len()));
    let s = verify_samples(p, samples, seed)?;
    report.check(
        "quadric sampling",
        s.passed(),
        format!("{} points, max residual {:.3e}, min rank {} of {}", s.samples, s.max_residual, s.min_rank, s.expected_rank),
    );
    Ok(())
}

fn cmd_quadrics(polytope: &Path, samples: usize, seed: u64, export: Option<&Path>) -> CliResult<Output> {
    let (p, digest) = load_polytope(polytope)?;
    let system = quadratic_system(&p)?;
    let desc = QuadraticDesc::from(&system);
    if let Some(path) = export {
        write_output(path, &io::to_json(&desc))?;
    }
    let equations: Vec<String> = system
        .equations
        .iter()
        .map(|eq| {
            let terms: Vec<String> = eq
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| *c != &qtoric_core::rational::int(0))
                .map(|(k, c)| format!("{}|z{}|^2", format_rational(c), k + 1))
                .collect();
            format!("{} = {}", terms.join(" + "), format_rational(&eq.constant))
        })
        .collect();
    let results = json!({
        "m": system.num_complex_vars,
        "real_dimension": system.dimension(),
        "equations": equations,
        "system": desc,
        "samples": samples,
        "seed": seed,
    });
    let mut report = Report::new("quadrics", vec![digest], results);
    sampling_checks(&mut report, &p, samples, seed)?;
    Ok(Output::Report(report))
}

fn cmd_analogous(polytope: &Path, shift: &Path) -> CliResult<Output> {
    let (p, dp) = load_polytope(polytope)?;
    let (text, ds) = read_input(shift)?;
    let h = io::parse_shift(&text)?;
    if h.len() != p.num_facets() {
        return Err(usage(format!("shift has {} entries, polytope has {} facets", h.len(), p.num_facets())));
    }
    let class = classify_shift(&p, &h)?;
    let c = c_matrix(&p)?;
    let distances = support_distances(&p, &h).map(|d| io::rational_vector(&d));
    let results = json!({
        "classification": class.as_str(),
        "distances": distances.ok(),
        "c_matrix": io::rational_matrix(&c.entries),
    });
    Ok(Output::Report(Report::new("analogous", vec![dp, ds], results)))
}

fn cmd_verify(file: &Path, samples: usize, seed: u64) -> CliResult<Output> {
    let (text, digest) = read_input(file)?;
    let desc: OmniDesc = io::from_json(&text)?;
    let parts = desc.parts()?;
    let mut report = Report::new("verify", vec![digest], json!({}));

    let dichar = validate_dichar(&parts.polytope, &parts.lambda)?;
    let violations: Vec<String> = dichar.violations.iter().map(|(w, d)| format!("{:?}: det {d}", labels(w))).collect();
    report.check(
        "dicharacteristic",
        dichar.is_ok(),
        if violations.is_empty() { format!("{} vertices unimodular", dichar.vertices_checked) } else { violations.join("; ") },
    );
    if let Some(g) = &parts.geometry {
        report.check("geometry matches", g.combinatorial() == parts.polytope, "combinatorial type of the H descriptor");
        match sampling_checks(&mut report, g, samples, seed) {
            Ok(()) => {}
            Err(CliError::Core(e)) => report.check("geometry", false, e.to_string()),
            Err(e) => return Err(e),
        }
    }
    if dichar.is_ok() {
        let m = OmniQT::new(parts.polytope, parts.lambda, parts.signs, parts.geometry)?;
        report.results = summary(&m);
        let betti: usize = presentation(&m)?.betti_numbers()?.iter().sum();
        let q = m.num_vertices();
        report.check(
            "count identities",
            q == m.q_plus() + m.q_minus() && betti == q,
            format!("q = {q} = {} + {}, total Betti number {betti}", m.q_plus(), m.q_minus()),
        );
        cross_check(&mut report, &m)?;
    }
    Ok(Output::Report(report))
}

pub fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Build { name, params, reverse, conjugate, out } => cmd_build(&name, &params, reverse, conjugate, out.as_deref()),
        Command::Sum { a, b, out } => cmd_binary("sum", &a, &b, out.as_deref()),
        Command::Boxsum { a, b, out } => cmd_binary("boxsum", &a, &b, out.as_deref()),
        Command::Add { a, b, out } => cmd_binary("add", &a, &b, out.as_deref()),
        Command::Signs { file } => cmd_signs(&file),
        Command::Chern { file } => cmd_chern(&file),
        Command::Ring { file, degree } => cmd_ring(&file, degree),
        Command::Quadrics { polytope, samples, seed, export } => cmd_quadrics(&polytope, samples, seed, export.as_deref()),
        Command::Analogous { polytope, shift } => cmd_analogous(&polytope, &shift),
        Command::Verify { file, samples, seed } => cmd_verify(&file, samples, seed),
    }
}
