use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;
use weyl_core::cartan::validate_scheme;
use weyl_core::checks::{run_checks, CheckOptions};
use weyl_core::complex::{arrangement, coxeter_complex, geometric_faces};
use weyl_core::order::OrderError;
use weyl_core::simplicial::check_pseudomanifold;
use weyl_core::{
    check_axioms, generate_roots, roots, CartanScheme, GroupoidError, IntervalOptions, Morphism, SchemeError,
    StructureError, WeakOrders, WeylGroupoid,
};

use crate::scheme_file::{parse_scheme_file, ParseError};
use crate::{Command, GraphFormat, PairArgs, ReportFormat};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("{0}")]
    Usage(String),
    /// The input is well formed but not a finite Cartan scheme.
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => 1,
            CliError::Parse(_) | CliError::Structure(_) | CliError::Usage(_) => 2,
        }
    }
}

/// Runs one command, writing its output to `out`. Returns the exit code
/// for completed runs (0, or 1 when a reported property fails).
pub fn run(command: &Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Validate { file } => validate(file, out),
        Command::Roots { file, object } => {
            let g = load(file)?;
            let a = object_arg(&g, object)?;
            for root in g.roots().positive(a) {
                writeln!(out, "{}", serde_json::to_string(root).expect("vectors serialize"))?;
            }
            Ok(0)
        }
        Command::Hom { file, target } => {
            let g = load(file)?;
            let a = object_arg(&g, target)?;
            for w in g.enumerate_hom_to(a).elements() {
                writeln!(out, "{}", serde_json::to_string(&morphism_json(&g, w)).expect("serializes"))?;
            }
            Ok(0)
        }
        Command::Poset { file, target, format } => {
            let g = load(file)?;
            let a = object_arg(&g, target)?;
            poset(&g, a, *format, out)?;
            Ok(0)
        }
        Command::Poincare { file, target } => {
            let g = load(file)?;
            let a = object_arg(&g, target)?;
            let p = orders(&g)?.poset(a).poincare_polynomial();
            let coefficients: Vec<String> = p.coefficients.iter().map(u64::to_string).collect();
            writeln!(out, "coefficients: {}", coefficients.join(","))?;
            writeln!(out, "unimodal: {}", p.unimodal)?;
            writeln!(out, "factorization: {}", p.factorization_string().unwrap_or_else(|| "none".into()))?;
            Ok(0)
        }
        Command::Meet(args) | Command::Join(args) => {
            let g = load(&args.file)?;
            let (u, v) = pair(&g, args)?;
            let o = orders(&g)?;
            let w = if matches!(command, Command::Meet(_)) { o.meet(&u, &v) } else { o.join(&u, &v) };
            writeln!(out, "{}", serde_json::to_string(&morphism_json(&g, &w)).expect("serializes"))?;
            Ok(0)
        }
        Command::Interval(args) => {
            let g = load(&args.file)?;
            let (u, v) = pair(&g, args)?;
            let o = orders(&g)?;
            let report = o.classify_interval(&u, &v, IntervalOptions::default()).map_err(|e| match e {
                OrderError::NotComparable(..) => {
                    CliError::Usage(format!("{} is not below {} in weak order", g.label(&u), g.label(&v)))
                }
                OrderError::Degenerate(gap) => {
                    CliError::Usage(format!("length difference {gap} is too small; need at least 2"))
                }
                other => CliError::Invalid(other.to_string()),
            })?;
            let doc = json!({
                "u": g.label(&u),
                "v": g.label(&v),
                "classification": report.classification,
                "descent_set": report.descent_set,
                "f_vector": report.f_vector,
                "reduced_euler_characteristic": report.reduced_euler,
                "reduced_betti_gf2": report.reduced_betti,
                "consistent": report.consistent,
            });
            writeln!(out, "{}", pretty(&doc))?;
            Ok(if report.consistent { 0 } else { 1 })
        }
        Command::Complex { file, object, format } => {
            let g = load(file)?;
            let a = object_arg(&g, object)?;
            complex(&g, a, *format, out)
        }
        Command::Arrangement { file, object } => {
            let g = load(file)?;
            let a = object_arg(&g, object)?;
            let faces = geometric_faces(&g, a);
            let report = arrangement(&g, a, &faces);
            let hom = g.enumerate_hom_to(a);
            let chambers: Vec<_> = report
                .chambers
                .iter()
                .map(|c| {
                    json!({
                        "morphism": g.label(hom.get(c.morphism)),
                        "signs": sign_string(&c.signs),
                        "walls": c.walls,
                        "rays": c.rays,
                        "simplicial": c.simplicial,
                    })
                })
                .collect();
            let doc = json!({
                "object": g.scheme().object_name(a),
                "normals": report.normals,
                "chambers": chambers,
                "walls_two_sided": report.walls_two_sided,
                "simplicial": report.simplicial,
            });
            writeln!(out, "{}", pretty(&doc))?;
            Ok(if report.simplicial { 0 } else { 1 })
        }
        Command::Check { file, object, format } => {
            let g = load(file)?;
            let object = object.as_deref().map(|o| object_arg(&g, o)).transpose()?;
            let suite = run_checks(&g, CheckOptions { object, ..CheckOptions::default() });
            match format {
                ReportFormat::Json => {
                    let doc = json!({ "passed": suite.passed(), "results": suite.results });
                    writeln!(out, "{}", pretty(&doc))?;
                }
                ReportFormat::Text => {
                    for r in &suite.results {
                        let scope = r.object.as_deref().map(|o| format!(" [{o}]")).unwrap_or_default();
                        let status = if r.passed() { "PASS" } else { "FAIL" };
                        write!(out, "{status} {}{scope}: {} cases", r.name, r.cases)?;
                        if let Some(f) = &r.first_failure {
                            write!(out, ", {} failed, first: {f}", r.failures)?;
                        }
                        writeln!(out)?;
                    }
                    let failed = suite.failed().count();
                    writeln!(out, "summary: {} checks, {failed} failed", suite.results.len())?;
                }
            }
            Ok(if suite.passed() { 0 } else { 1 })
        }
    }
}

fn pretty(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn sign_string(signs: &[i8]) -> String {
    signs
        .iter()
        .map(|&s| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect()
}

fn scheme(path: &Path) -> Result<CartanScheme, CliError> {
    let raw = parse_scheme_file(path)?;
    CartanScheme::from_raw(&raw).map_err(|e| match e {
        SchemeError::Structure(s) => CliError::Structure(s),
        SchemeError::Axioms(report) => {
            let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            CliError::Invalid(format!("not a Cartan scheme:\n  {}", lines.join("\n  ")))
        }
    })
}

fn load(path: &Path) -> Result<WeylGroupoid, CliError> {
    WeylGroupoid::new(scheme(path)?).map_err(|e| match e {
        GroupoidError::Axioms(report) => {
            let lines: Vec<String> = report.failures.iter().map(ToString::to_string).collect();
            CliError::Invalid(format!("root system axioms fail:\n  {}", lines.join("\n  ")))
        }
        other => CliError::Invalid(other.to_string()),
    })
}

fn orders(g: &WeylGroupoid) -> Result<WeakOrders<'_>, CliError> {
    WeakOrders::build(g).map_err(|e| CliError::Invalid(e.to_string()))
}

fn object_arg(g: &WeylGroupoid, name: &str) -> Result<usize, CliError> {
    g.scheme()
        .object_index(name)
        .ok_or_else(|| CliError::Usage(format!("unknown object `{name}`")))
}

/// Parses `1,2,3` (or `id`) into internal indices.
fn word_arg(g: &WeylGroupoid, word: &str) -> Result<Vec<usize>, CliError> {
    let word = word.trim();
    if word.is_empty() || word == "id" {
        return Ok(Vec::new());
    }
    word.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .ok()
                .and_then(|l| g.scheme().index_of_label(l))
                .ok_or_else(|| CliError::Usage(format!("`{part}` is not an index label in word `{word}`")))
        })
        .collect()
}

fn morphism_arg(g: &WeylGroupoid, word: &str, source: &str, target: usize) -> Result<Morphism, CliError> {
    let source_index = object_arg(g, source)?;
    let w = g
        .from_word(&word_arg(g, word)?, source_index)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if w.target() != target {
        return Err(CliError::Usage(format!(
            "word `{word}` from `{source}` ends at `{}`, not at `{}`",
            g.scheme().object_name(w.target()),
            g.scheme().object_name(target)
        )));
    }
    Ok(w)
}

fn pair(g: &WeylGroupoid, args: &PairArgs) -> Result<(Morphism, Morphism), CliError> {
    let a = object_arg(g, &args.target)?;
    Ok((morphism_arg(g, &args.u, &args.su, a)?, morphism_arg(g, &args.v, &args.sv, a)?))
}

fn morphism_json(g: &WeylGroupoid, w: &Morphism) -> serde_json::Value {
    let word: Vec<usize> = g.reduced_word(w).iter().map(|&i| g.scheme().label(i)).collect();
    json!({
        "label": g.label(w),
        "source": g.scheme().object_name(w.source()),
        "target": g.scheme().object_name(w.target()),
        "word": word,
        "length": w.length(),
    })
}

fn validate(path: &Path, out: &mut dyn Write) -> Result<u8, CliError> {
    let raw = parse_scheme_file(path)?;
    let report = validate_scheme(&raw)?;
    writeln!(out, "objects: {}", raw.objects.len())?;
    writeln!(out, "rank: {}", raw.rank)?;
    for axiom in ["GCM", "C1", "C2"] {
        let failures: Vec<_> = report.violations.iter().filter(|v| v.axiom() == axiom).collect();
        writeln!(out, "{axiom}: {}", if failures.is_empty() { "pass" } else { "FAIL" })?;
        for v in failures {
            writeln!(out, "  {v}")?;
        }
    }
    if !report.is_empty() {
        writeln!(out, "result: invalid")?;
        return Ok(1);
    }
    let scheme = CartanScheme::from_raw(&raw).expect("validated above");
    let data = match generate_roots(&scheme, roots::default_cap(&scheme)) {
        Ok(data) => data,
        Err(e) => {
            writeln!(out, "roots: {e}")?;
            writeln!(out, "result: invalid")?;
            return Ok(1);
        }
    };
    writeln!(out, "roots: finite")?;
    let axioms = check_axioms(&scheme, &data);
    for axiom in ["R1", "R2", "R3", "R4"] {
        writeln!(out, "{axiom}: {}", if axioms.passes(axiom) { "pass" } else { "FAIL" })?;
        for f in axioms.failures.iter().filter(|f| f.axiom() == axiom) {
            writeln!(out, "  {f}")?;
        }
    }
    if !axioms.is_empty() {
        writeln!(out, "result: invalid")?;
        return Ok(1);
    }
    let g = WeylGroupoid::new(scheme).map_err(|e| CliError::Invalid(e.to_string()))?;
    for a in 0..g.object_count() {
        writeln!(
            out,
            "object {}: {} positive roots, longest element length {}, tau = {}",
            g.scheme().object_name(a),
            g.roots().positive(a).len(),
            g.longest(a).length(),
            g.scheme().object_name(g.tau(a)),
        )?;
    }
    writeln!(out, "result: valid")?;
    Ok(0)
}

fn poset(g: &WeylGroupoid, a: usize, format: GraphFormat, out: &mut dyn Write) -> Result<(), CliError> {
    let o = orders(g)?;
    let p = o.poset(a);
    let mut covers = Vec::new();
    for k in 0..p.len() {
        for i in 0..g.rank() {
            let x = g.times_simple(p.element(k), i);
            if x.length() == p.element(k).length() + 1 {
                covers.push((k, p.index_of(&x).expect("hom set is complete"), g.scheme().label(i)));
            }
        }
    }
    let target = g.scheme().object_name(a);
    match format {
        GraphFormat::Dot => {
            writeln!(out, "digraph \"Hom(->{target})\" {{")?;
            writeln!(out, "  rankdir=BT;")?;
            writeln!(out, "  node [shape=plaintext];")?;
            for k in 0..p.len() {
                writeln!(out, "  n{k} [label=\"{}\"];", g.label(p.element(k)))?;
            }
            for (from, to, label) in &covers {
                writeln!(out, "  n{from} -> n{to} [label=\"{label}\"];")?;
            }
            writeln!(out, "}}")?;
        }
        GraphFormat::Json => {
            let elements: Vec<_> = p.hom().elements().iter().map(|w| morphism_json(g, w)).collect();
            let covers: Vec<_> = covers
                .iter()
                .map(|(from, to, label)| json!({ "from": from, "to": to, "index": label }))
                .collect();
            let doc = json!({
                "target": target,
                "elements": elements,
                "covers": covers,
                "rank_sizes": p.rank_sizes(),
            });
            writeln!(out, "{}", pretty(&doc))?;
        }
    }
    Ok(())
}

fn complex(g: &WeylGroupoid, a: usize, format: GraphFormat, out: &mut dyn Write) -> Result<u8, CliError> {
    let data = coxeter_complex(g, a);
    let vertex_label = |k: usize| {
        let c = &data.vertices[k];
        format!("{} W{}", g.label(&c.representative), c.subset)
    };
    let report = check_pseudomanifold(&data.complex);
    match format {
        GraphFormat::Dot => {
            writeln!(out, "graph \"coxeter-complex-{}\" {{", g.scheme().object_name(a))?;
            for k in 0..data.vertices.len() {
                writeln!(out, "  v{k} [label=\"{}\"];", vertex_label(k))?;
            }
            for edge in data.complex.faces_of_dim(1) {
                writeln!(out, "  v{} -- v{};", edge[0], edge[1])?;
            }
            writeln!(out, "}}")?;
        }
        GraphFormat::Json => {
            let hom = g.enumerate_hom_to(a);
            let vertices: Vec<_> = data
                .vertices
                .iter()
                .map(|c| json!({ "representative": g.label(&c.representative), "subset": c.subset }))
                .collect();
            let facets: Vec<_> = data
                .facets
                .iter()
                .zip(hom.elements())
                .map(|(f, w)| json!({ "morphism": g.label(w), "vertices": f }))
                .collect();
            let doc = json!({
                "object": g.scheme().object_name(a),
                "dimension": data.dimension(),
                "f_vector": data.complex.f_vector(),
                "euler_characteristic": data.complex.euler_characteristic(),
                "betti_gf2": data.complex.gf2_betti(),
                "pseudomanifold": report,
                "vertices": vertices,
                "facets": facets,
            });
            writeln!(out, "{}", pretty(&doc))?;
        }
    }
    let sphere = g.rank() < 2 || report.closed;
    Ok(if sphere { 0 } else { 1 })
}
