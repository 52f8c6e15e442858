//! Command line front end: reads an instance file, runs one computation and
//! prints a text or JSON report.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use prospecies::dsl::{self, Instance, ModuleSummand, SummandKind};
use prospecies::modules::{is_isomorphic, search_seed, stable_hom_dim, Dimension, Module};
use prospecies::preprojective::{is_dualisable, preprojective_algebra, Dualisability, Preprojective};
use prospecies::presentation::{
    present_preprojective, present_tensor_algebra, verify_preprojective_presentation, verify_tensor_presentation,
    Presentation, PresentationCheck,
};
use prospecies::prospecies::{
    is_iwanaga_gorenstein, representations_isomorphic, tensor_algebra, ProSpecies, Tri, WordAlgebra,
};
use prospecies::reflection::{sigma_minus, sigma_plus, sigma_via_ideal, verify_reflection_sequences, Sign};
use prospecies::separated::{gamma_algebra, is_in_rep_epi, separated_prospecies, separation_functor};
use prospecies::{fixtures, Error, Field};
use rand::SeedableRng;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "prospecies", version, about = "Exact computations with pro-species")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of the tensor algebra.
    TensorAlgebra { instance: PathBuf },
    /// Quiver with relations of the tensor algebra.
    Present { instance: PathBuf },
    /// Quiver with relations of the preprojective algebra.
    PresentPi {
        instance: PathBuf,
        /// Compare degrees below this bound.
        #[arg(long, default_value_t = 8)]
        truncate: usize,
    },
    /// Graded dimensions of the preprojective algebra below a degree.
    Preprojective {
        instance: PathBuf,
        #[arg(long, default_value_t = 8)]
        truncate: usize,
    },
    /// Property checks.
    Check {
        what: CheckKind,
        instance: PathBuf,
        /// Gorenstein degree of the vertex algebras.
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Bound on resolution lengths.
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Reflection functors on preprojective modules.
    Reflect {
        instance: PathBuf,
        #[arg(long)]
        vertex: String,
        /// `+` for the kernel construction, `-` for the cokernel construction.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        dir: Sign,
        #[arg(long, default_value_t = 8)]
        truncate: usize,
    },
    /// The separated pro-species and the separation functor on the regular module.
    Separate { instance: PathBuf },
    /// Stable homomorphisms before and after separation on a random corpus.
    StableHom {
        instance: PathBuf,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
    },
    /// Vertex dimensions and arrow ranks.
    Valuation { instance: PathBuf },
    /// Minimal projective resolutions over the tensor algebra.
    Resolve {
        instance: PathBuf,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Dualisable,
    LocallyProjective,
    Gorenstein,
    Gp,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected '+' or '-', found '{s}'")),
    }
}

/// Failure of a command, with the exit code it maps to.
enum Failure {
    Input(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::TensorAlgebra { .. } => "tensor-algebra",
            Command::Present { .. } => "present",
            Command::PresentPi { .. } => "present-pi",
            Command::Preprojective { .. } => "preprojective",
            Command::Check { .. } => "check",
            Command::Reflect { .. } => "reflect",
            Command::Separate { .. } => "separate",
            Command::StableHom { .. } => "stable-hom",
            Command::Valuation { .. } => "valuation",
            Command::Resolve { .. } => "resolve",
        }
    }

    fn instance(&self) -> &PathBuf {
        match self {
            Command::TensorAlgebra { instance }
            | Command::Present { instance }
            | Command::PresentPi { instance, .. }
            | Command::Preprojective { instance, .. }
            | Command::Check { instance, .. }
            | Command::Reflect { instance, .. }
            | Command::Separate { instance }
            | Command::StableHom { instance, .. }
            | Command::Valuation { instance }
            | Command::Resolve { instance, .. } => instance,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let (code, out) = match run(&cli.command) {
        Ok((hash, field, result)) => {
            let report = json!({ "command": name, "instance_hash": hash, "field": field.name(), "result": result });
            (0, report)
        }
        Err(Failure::Input(msg)) => (2, json!({ "command": name, "error": msg })),
        Err(Failure::Domain(e)) => (1, json!({ "command": name, "error": e.to_string() })),
    };
    if code != 0 {
        eprintln!("error: {}", out["error"].as_str().unwrap_or_default());
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialisable"));
    } else if code == 0 {
        print!("{}", render_text(&out));
    }
    ExitCode::from(code)
}

fn run(cmd: &Command) -> Outcome<(String, Field, Value)> {
    let path = cmd.instance();
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let hash = format!("{:x}", Sha256::digest(text.as_bytes()));
    let inst = dsl::parse_document(&text)?;
    let field = inst.prospecies.field();
    let ps = Arc::new(inst.prospecies.clone());
    let result = match cmd {
        Command::TensorAlgebra { .. } => tensor_report(&ps)?,
        Command::Present { .. } => {
            let p = present_tensor_algebra(&ps)?;
            let check = verify_tensor_presentation(&ps, &p)?;
            presentation_report(&p, field, &check)
        }
        Command::PresentPi { truncate, .. } => {
            let p = present_preprojective(&ps)?;
            let pi = preprojective(&ps, *truncate)?;
            let check = verify_preprojective_presentation(&pi, &p)?;
            let mut report = presentation_report(&p, field, &check);
            report["conventions"] = pi_conventions();
            report
        }
        Command::Preprojective { truncate, .. } => {
            let pi = preprojective(&ps, *truncate)?;
            json!({
                "truncate": truncate,
                "graded_dims": pi.graded_dims(),
                "dim": pi.graded_dims().iter().sum::<usize>(),
                "finite_certified": pi.finite_certified(),
                "conventions": pi_conventions(),
            })
        }
        Command::Check { what, n, bound, .. } => check_report(&ps, &inst, *what, *n, *bound)?,
        Command::Reflect { vertex, dir, truncate, .. } => reflect_report(&ps, &inst, vertex, *dir, *truncate)?,
        Command::Separate { .. } => separate_report(&ps)?,
        Command::StableHom { count, max_rank, .. } => stable_hom_report(&ps, *count, *max_rank)?,
        Command::Valuation { .. } => valuation_report(&ps)?,
        Command::Resolve { length, .. } => resolve_report(&ps, &inst, *length)?,
    };
    Ok((hash, field, result))
}

/// Conventions behind the preprojective relation and the double.
fn pi_conventions() -> Value {
    json!({
        "starred_bimodule": "right_dual",
        "sign": "+1 on original arrows, -1 on starred arrows",
        "sign_placement": "in_map",
    })
}

/// Preprojective algebra in degrees below `truncate`.
fn preprojective(ps: &Arc<ProSpecies>, truncate: usize) -> Outcome<Preprojective> {
    if truncate < 3 {
        return Err(Failure::Input("--truncate must be at least 3".into()));
    }
    Ok(preprojective_algebra(ps, truncate - 1)?)
}

fn tensor_report(ps: &Arc<ProSpecies>) -> Outcome<Value> {
    let t = tensor_algebra(ps)?;
    let q = ps.quiver();
    let paths: Vec<Value> = t
        .paths()
        .iter()
        .enumerate()
        .map(|(k, p)| json!({ "path": p.display(q).to_string(), "dim": t.block(k).len() }))
        .collect();
    Ok(json!({ "dim": t.algebra().dim(), "graded_dims": t.graded_dims(), "paths": paths }))
}

fn presentation_report(p: &Presentation, field: Field, check: &PresentationCheck) -> Value {
    let casimir = p.relation_origins.iter().filter(|o| o.tag().starts_with("casimir_")).count();
    json!({
        "vertices": p.quiver().num_vertices(),
        "arrows": p.quiver().num_arrows(),
        "relations": p.relations().len(),
        "casimir_relations": casimir,
        "presentation": dsl::print_presentation(p, field),
        "check": {
            "presented_dims": check.presented_dims,
            "source_dims": check.source_dims,
            "iso_certified": check.iso_certified,
            "passed": check.passed(),
        },
    })
}

fn dimension(d: Dimension) -> Value {
    match d {
        Dimension::Exact(n) => json!(n),
        Dimension::AtLeast(n) => json!(format!(">={n}")),
    }
}

fn tri(t: Tri) -> Value {
    match t {
        Tri::True => json!(true),
        Tri::False => json!(false),
        Tri::Unknown => json!("unknown"),
    }
}

/// Modules named in the module block, or every simple and indecomposable
/// projective, over an algebra whose idempotents follow the vertex labels.
fn named_modules(ps: &ProSpecies, inst: &Instance, alg: &Arc<prospecies::algebra::Algebra>) -> Outcome<Vec<(String, Module)>> {
    let build = |s: &ModuleSummand| -> Outcome<Module> {
        let k = dsl::idempotent_index(ps, &s.vertex)?;
        Ok(match s.kind {
            SummandKind::Simple => Module::simple(alg.clone(), k)?,
            SummandKind::Projective => Module::projective(alg.clone(), k),
        })
    };
    let describe = |s: &ModuleSummand| match s.kind {
        SummandKind::Simple => format!("simple {}", s.vertex),
        SummandKind::Projective => format!("projective {}", s.vertex),
    };
    match &inst.module {
        Some(items) if !items.is_empty() => {
            let mods = items.iter().map(build).collect::<Outcome<Vec<_>>>()?;
            let name = items.iter().map(describe).collect::<Vec<_>>().join(" + ");
            Ok(vec![(name, Module::direct_sum(&mods.iter().collect::<Vec<_>>()))])
        }
        _ => {
            let mut out = Vec::new();
            for kind in [SummandKind::Simple, SummandKind::Projective] {
                for vertex in dsl::idempotent_labels(ps) {
                    let s = ModuleSummand { kind, vertex };
                    out.push((describe(&s), build(&s)?));
                }
            }
            Ok(out)
        }
    }
}

fn check_report(ps: &Arc<ProSpecies>, inst: &Instance, what: CheckKind, n: usize, bound: usize) -> Outcome<Value> {
    Ok(match what {
        CheckKind::Dualisable => {
            let q = ps.quiver();
            match is_dualisable(ps) {
                Dualisability::Certified(phis) => {
                    let certs: Vec<Value> = phis
                        .iter()
                        .enumerate()
                        .map(|(a, m)| json!({ "arrow": q.arrow(a).label, "iso_dim": m.rows(), "rank": m.rank() }))
                        .collect();
                    json!({ "dualisable": true, "status": "certified", "certificates": certs })
                }
                Dualisability::NotDualisable(a) => {
                    json!({ "dualisable": false, "status": "not_isomorphic", "arrow": q.arrow(a).label })
                }
                Dualisability::ProbablyNot(a) => json!({
                    "dualisable": false,
                    "status": "probably_not",
                    "arrow": q.arrow(a).label,
                    "seed": search_seed(),
                }),
            }
        }
        CheckKind::LocallyProjective => {
            let t = tensor_algebra(ps)?;
            let mut rows = Vec::new();
            for (name, m) in named_modules(ps, inst, t.algebra())? {
                let (rep, _) = t.module_to_rep(&m)?;
                rows.push(json!({ "module": name, "locally_projective": rep.is_locally_projective()? }));
            }
            json!({ "modules": rows })
        }
        CheckKind::Gorenstein => {
            let t = tensor_algebra(ps)?;
            let failing = ps.first_non_gorenstein_vertex(n)?;
            let mut out = Map::new();
            out.insert("n".into(), json!(n));
            out.insert("locally_gorenstein".into(), json!(failing.is_none()));
            if let Some(v) = failing {
                out.insert("failing_vertex".into(), json!(ps.quiver().vertices()[v]));
            } else {
                out.insert("tensor_gorenstein".into(), json!(is_iwanaga_gorenstein(t.algebra(), n + 1)?));
                let mut rows = Vec::new();
                for (name, m) in named_modules(ps, inst, t.algebra())? {
                    let r = t.gorenstein_conditions(n, &m, bound)?;
                    rows.push(json!({
                        "module": name,
                        "conditions": r.values,
                        "agree": r.all_agree(),
                        "proj_dim": dimension(r.proj_dim),
                        "inj_dim": dimension(r.inj_dim),
                        "bound": r.bound,
                    }));
                }
                out.insert("modules".into(), Value::Array(rows));
            }
            Value::Object(out)
        }
        CheckKind::Gp => {
            let t = tensor_algebra(ps)?;
            let mut rows = Vec::new();
            for (name, m) in named_modules(ps, inst, t.algebra())? {
                rows.push(json!({ "module": name, "gorenstein_projective": tri(t.is_gorenstein_projective(&m, bound)?) }));
            }
            json!({ "bound": bound, "modules": rows })
        }
    })
}

fn reflect_report(ps: &Arc<ProSpecies>, inst: &Instance, vertex: &str, dir: Sign, truncate: usize) -> Outcome<Value> {
    let i = ps.quiver().vertex_index(vertex).ok_or_else(|| Error::Semantic(format!("unknown vertex '{vertex}'")))?;
    let pi = preprojective(ps, truncate)?;
    if !pi.finite_certified() {
        return Err(Error::NotFiniteDimensional.into());
    }
    let mut rows = Vec::new();
    for (name, m) in named_modules(ps, inst, pi.algebra())? {
        let out = match dir {
            Sign::Plus => sigma_plus(&pi, &m, i)?,
            Sign::Minus => sigma_minus(&pi, &m, i)?,
        };
        let ideal = sigma_via_ideal(&pi, &m, i, dir)?;
        let seq = verify_reflection_sequences(&pi, &m, i)?;
        rows.push(json!({
            "module": name,
            "dim_vector": m.dim_vector(),
            "reflected_dim_vector": out.dim_vector(),
            "ideal_description_iso": is_isomorphic(&out, &ideal).is_iso(),
            "sequences_exact": seq.passed(),
        }));
    }
    let dir = if dir == Sign::Plus { "+" } else { "-" };
    Ok(json!({ "vertex": vertex, "dir": dir, "truncate": truncate, "modules": rows }))
}

fn separate_report(ps: &Arc<ProSpecies>) -> Outcome<Value> {
    let sep = Arc::new(separated_prospecies(ps)?);
    let q = sep.quiver();
    let arrows: Vec<String> =
        q.arrows().iter().map(|a| format!("{}: {} -> {}", a.label, q.vertices()[a.source], q.vertices()[a.target])).collect();
    let g = gamma_algebra(ps)?;
    let (rep, _) = g.rep_of(&Module::regular(g.algebra().clone()))?;
    let f = separation_functor(&sep, &rep)?;
    let dims: Vec<usize> = f.rep.modules().iter().map(Module::dim).collect();
    Ok(json!({
        "vertices": q.vertices(),
        "arrows": arrows,
        "tensor_dim": tensor_algebra(&sep)?.algebra().dim(),
        "gamma_dim": g.algebra().dim(),
        "separated_regular_dims": dims,
        "separated_regular_in_epi": is_in_rep_epi(&f.rep)?,
    }))
}

fn stable_hom_report(ps: &Arc<ProSpecies>, count: usize, max_rank: usize) -> Outcome<Value> {
    let seed = search_seed();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let sep = Arc::new(separated_prospecies(ps)?);
    let t_sep: WordAlgebra = tensor_algebra(&sep)?;
    let g = gamma_algebra(ps)?;
    let mut corpus = Vec::new();
    while corpus.len() < count {
        let rep = fixtures::random_locally_projective(ps, max_rank, &mut rng);
        if let Ok(m) = g.module_of(&rep) {
            let f = separation_functor(&sep, &rep)?.rep;
            corpus.push((m, t_sep.rep_to_module(&f)?, f));
        }
    }
    let mut pairs = Vec::new();
    let (mut agree, mut reflects) = (true, true);
    for (a, (ma, fa, ra)) in corpus.iter().enumerate() {
        for (b, (mb, fb, rb)) in corpus.iter().enumerate() {
            let lhs = stable_hom_dim(ma, mb)?;
            let rhs = stable_hom_dim(fa, fb)?;
            agree &= lhs == rhs;
            if representations_isomorphic(&t_sep, ra, rb)?.is_iso() {
                reflects &= is_isomorphic(ma, mb).is_iso();
            }
            pairs.push(json!([a, b, lhs, rhs]));
        }
    }
    let dims: Vec<usize> = corpus.iter().map(|(m, ..)| m.dim()).collect();
    Ok(json!({
        "seed": seed,
        "module_dims": dims,
        "pairs": pairs,
        "agree": agree,
        "reflects_isomorphism": reflects,
    }))
}

fn valuation_report(ps: &Arc<ProSpecies>) -> Outcome<Value> {
    let v = ps.valuation()?;
    let q = ps.quiver();
    let vertices: Vec<Value> = q.vertices().iter().zip(&v.vertices).map(|(l, d)| json!({ "vertex": l, "dim": d })).collect();
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .zip(&v.arrows)
        .map(|(a, (r, l))| {
            json!({
                "arrow": a.label,
                "source": q.vertices()[a.source],
                "target": q.vertices()[a.target],
                "right_rank": r,
                "left_rank": l,
            })
        })
        .collect();
    Ok(json!({ "vertices": vertices, "arrows": arrows }))
}

fn resolve_report(ps: &Arc<ProSpecies>, inst: &Instance, length: usize) -> Outcome<Value> {
    let t = tensor_algebra(ps)?;
    let labels = dsl::idempotent_labels(ps);
    let mut rows = Vec::new();
    let targets: Vec<(String, Module)> = match &inst.module {
        Some(_) => named_modules(ps, inst, t.algebra())?,
        None => named_modules(ps, inst, t.algebra())?.into_iter().filter(|(n, _)| n.starts_with("simple")).collect(),
    };
    for (name, m) in targets {
        let steps = m.minimal_resolution(length)?;
        let mut terms: Vec<Value> = steps
            .iter()
            .map(|s| {
                let summands: Vec<&str> = s.summands.iter().map(|&k| labels[k].as_str()).collect();
                json!({ "dim": s.projective.dim(), "summands": summands })
            })
            .collect();
        while terms.len() > 1 && terms.last().is_some_and(|t| t["dim"] == 0) {
            terms.pop();
        }
        let (rep, _) = t.module_to_rep(&m)?;
        let standard = if rep.is_locally_projective()? {
            let std = t.standard_resolution(&rep)?;
            json!({ "p1_dim": std.p1.dim(), "p0_dim": std.p0.dim(), "exact": std.exact })
        } else {
            json!("not locally projective")
        };
        rows.push(json!({
            "module": name,
            "terms": terms,
            "proj_dim": dimension(m.proj_dim(length)?),
            "standard": standard,
        }));
    }
    Ok(json!({ "length": length, "modules": rows }))
}

/// Line-oriented rendering of a report: one `key: value` per scalar, nested
/// objects indented, multi-line strings printed verbatim.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            Some(format!("[{}]", xs.iter().map(|x| inline(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Object(_) | Value::Array(_) | Value::String(_) => None,
        other => Some(other.to_string()),
    }
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match (inline(x), x) {
                    (Some(s), _) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    (None, Value::String(s)) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    (None, _) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_parse() {
        assert_eq!(parse_sign("+").unwrap(), Sign::Plus);
        assert_eq!(parse_sign("minus").unwrap(), Sign::Minus);
        assert!(parse_sign("*").is_err());
    }

    #[test]
    fn text_rendering_is_line_oriented() {
        let v = json!({ "a": 1, "b": [1, 2], "c": { "d": "x\ny" }, "e": [{ "f": true }] });
        assert_eq!(render_text(&v), "a: 1\nb: [1, 2]\nc:\n  d:\n    x\n    y\ne:\n  -\n    f: true\n");
    }
}
