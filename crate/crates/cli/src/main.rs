//! `rhmap`: rational models of spaces of maps from configuration spaces to
//! spheres.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rhmap_core::algebra::Combination;
use rhmap_core::coalgebra::dualize;
use rhmap_core::components::{
    component_model, components_distinct, degree_zero_system, enumerate_augmentation_families, Augmentation,
};
use rhmap_core::config_space::{build_cohomology_bounded, DEFAULT_MAX_K};
use rhmap_core::descriptor::{HomotopyTypeDescriptor, Style};
use rhmap_core::mapping::{sphere_mapping_model, MappingModel};
use rhmap_core::recognizer::{component_type, full_type};
use rhmap_core::serial::CdgaDocument;
use rhmap_core::thom::{corollary_case, corollary_dimension, thom_decomposition};
use rhmap_core::{selftest, Cdga, Error, Result};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "rhmap", version, about = "Rational homotopy of map(F(R^m,k), S^n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology ring of F(R^m, k): basis, dimensions, products.
    Cohomology {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Also print the coproduct of the dual coalgebra.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Sullivan model of the mapping space.
    Model {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Degree-zero system and its solution families.
    Components {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Model of the component of one augmentation.
    Component {
        #[command(flatten)]
        target: Target,
        /// Values of degree-0 generators, e.g. "q1=1,q2=0,q3=0".
        #[arg(long, default_value = "")]
        aug: String,
        #[command(flatten)]
        out: Output,
    },
    /// Rational homotopy type of the whole mapping space.
    Type {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Closed-form decomposition for odd-dimensional spheres.
    Thom {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Both decompositions for the target S^{(m-1)(k-1)-1}.
    Corollary {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded randomized invariant checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, allow_negative_numbers = true)]
    n: i32,
    /// Based maps instead of free maps.
    #[arg(long)]
    pointed: bool,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Use Unicode glyphs in text output.
    #[arg(long)]
    unicode: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Output {
    fn style(&self) -> Style {
        if self.unicode {
            Style::Unicode
        } else {
            Style::Ascii
        }
    }

    fn emit(&self, text: String, value: Value) -> String {
        match self.format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&value).expect("values always serialize"),
        }
    }
}

fn max_k() -> Result<usize> {
    match std::env::var("RHMAP_MAX_K") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("RHMAP_MAX_K must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_K),
    }
}

fn model_for(t: &Target) -> Result<MappingModel> {
    sphere_mapping_model(t.m, t.k, t.n, t.pointed, max_k()?)
}

fn combination(labels: &dyn Fn(usize) -> String, c: &Combination) -> String {
    let mut p = String::new();
    for (i, (b, coeff)) in c.iter().enumerate() {
        let neg = coeff.is_negative();
        let abs = if neg { -coeff.clone() } else { coeff.clone() };
        let sep = match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let body = if abs.is_one() { labels(*b) } else { format!("{abs}*{}", labels(*b)) };
        p.push_str(sep);
        p.push_str(&body);
    }
    if p.is_empty() {
        p.push('0');
    }
    p
}

fn combination_json(labels: &dyn Fn(usize) -> String, c: &Combination) -> Value {
    Value::Array(
        c.iter()
            .map(|(b, coeff)| json!({ "coeff": coeff.to_string(), "element": labels(*b) }))
            .collect(),
    )
}

fn cohomology(m: usize, k: usize, dual: bool, out: &Output) -> Result<String> {
    let coh = build_cohomology_bounded(m, k, max_k()?)?;
    let alg = coh.algebra();
    let label = |i: usize| alg.basis()[i].label.clone();
    let dims = alg.dims_by_degree();

    let mut text = format!("H*(F(R^{m},{k}); Q)\ndims:");
    for (d, c) in &dims {
        write!(text, " {d}:{c}").unwrap();
    }
    text.push_str("\nbasis:\n");
    for b in alg.basis() {
        writeln!(text, "  [{}] {}", b.degree, b.label).unwrap();
    }
    text.push_str("products:\n");
    let mut table = Vec::new();
    for ((a, b), c) in alg.table() {
        if *a == alg.unit() || *b == alg.unit() || c.is_empty() {
            continue;
        }
        writeln!(text, "  {} * {} = {}", label(*a), label(*b), combination(&label, c)).unwrap();
        table.push(json!({ "left": label(*a), "right": label(*b), "product": combination_json(&label, c) }));
    }
    let mut value = json!({
        "m": m,
        "k": k,
        "basis": alg.basis().iter().map(|b| json!({ "label": b.label, "degree": b.degree })).collect::<Vec<_>>(),
        "dims": dims.iter().map(|(d, c)| (d.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "products": table,
    });
    if dual {
        let co = dualize(alg, false);
        text.push_str("coproducts:\n");
        let mut entries = Vec::new();
        for i in 0..co.dim() {
            let terms = co.coproduct(i);
            let mut line = String::new();
            let mut json_terms = Vec::new();
            for (j, (l, r, c)) in terms.iter().enumerate() {
                let neg = c.is_negative();
                let abs = if neg { -c.clone() } else { c.clone() };
                let sep = match (j, neg) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let coeff = if abs.is_one() { String::new() } else { format!("{abs}*") };
                write!(line, "{sep}{coeff}{} (x) {}", co.label(*l), co.label(*r)).unwrap();
                json_terms.push(json!({ "coeff": c.to_string(), "left": co.label(*l), "right": co.label(*r) }));
            }
            writeln!(text, "  D({}) = {}", co.label(i), if line.is_empty() { "0".into() } else { line }).unwrap();
            entries.push(json!({ "element": co.label(i), "degree": co.degree(i), "terms": json_terms }));
        }
        value["coproducts"] = Value::Array(entries);
    }
    Ok(out.emit(text.trim_end().to_string(), value))
}

fn document(cdga: &Cdga) -> Value {
    serde_json::to_value(CdgaDocument::from_cdga(cdga)).expect("documents always serialize")
}

fn show_cdga(cdga: &Cdga, name: &dyn Fn(&rhmap_core::Generator) -> String) -> String {
    let mut text = String::from("generators:\n");
    let mut degrees: Vec<i32> = cdga.generators().iter().map(|g| g.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees.iter().rev() {
        let mut names: Vec<String> = cdga.generators().iter().filter(|g| g.degree() == *d).map(name).collect();
        names.sort();
        writeln!(text, "  [{d}] {}", names.join(", ")).unwrap();
    }
    text.push_str("differential:\n");
    for (g, p) in cdga.differentials() {
        if !p.is_zero() {
            writeln!(text, "  d({}) = {}", name(g), p.fmt_with(name)).unwrap();
        }
    }
    text
}

fn model(t: &Target, out: &Output) -> Result<String> {
    let mm = model_for(t)?;
    let mut text = format!(
        "model of {}(F(R^{},{}), S^{})\n",
        if t.pointed { "map*" } else { "map" },
        t.m,
        t.k,
        t.n
    );
    text.push_str(&show_cdga(mm.cdga(), &|g| mm.display_name(g)));
    text.push_str("provenance:\n");
    for g in mm.cdga().generators() {
        let p = &mm.provenance()[g.name()];
        let alias = mm.aliases().get(g.name()).map(|a| format!(" ({a})")).unwrap_or_default();
        writeln!(text, "  {}{alias} = {} (x) {}", g.name(), p.v, p.beta).unwrap();
    }
    let mut value = document(mm.cdga());
    value["pointed"] = json!(t.pointed);
    value["provenance"] = serde_json::to_value(mm.provenance()).expect("provenance serializes");
    value["aliases"] = json!(mm.aliases());
    Ok(out.emit(text.trim_end().to_string(), value))
}

fn components(t: &Target, out: &Output) -> Result<String> {
    let mm = model_for(t)?;
    let system = degree_zero_system(&mm);
    let families = enumerate_augmentation_families(&system)?;
    let report = components_distinct(&mm, &families);
    let unknowns: Vec<String> = system.unknowns.iter().map(|g| mm.display_name(g)).collect();

    let mut text = format!("unknowns: ({})\nsystem:\n", unknowns.join(", "));
    let equations: Vec<String> = system.equations.iter().map(|e| format!("{} = 0", mm.show(&e.polynomial))).collect();
    if equations.is_empty() {
        text.push_str("  (none)\n");
    }
    for e in &equations {
        writeln!(text, "  {e}").unwrap();
    }
    text.push_str("families:\n");
    let mut fams = Vec::new();
    for (i, f) in families.iter().enumerate() {
        writeln!(text, "  F{}: {}  dim {}", i + 1, f.tuple(), f.dimension()).unwrap();
        let values: serde_json::Map<String, Value> = f
            .values
            .iter()
            .map(|(name, v)| {
                let g = mm.cdga().generator(name).expect("family values name generators");
                (mm.display_name(&g), json!(v.to_string()))
            })
            .collect();
        fams.push(json!({
            "tuple": f.tuple(),
            "dimension": f.dimension(),
            "parameters": f.parameters,
            "values": values,
        }));
    }
    text.push_str("distinctness:\n");
    let mut pairs = Vec::new();
    for (i, j, v) in &report.pairs {
        writeln!(text, "  F{} vs F{}: {v:?}", i + 1, j + 1).unwrap();
        pairs.push(json!({ "left": i + 1, "right": j + 1, "verdict": v }));
    }
    for (i, v) in report.within.iter().enumerate() {
        writeln!(text, "  within F{}: {v:?}", i + 1).unwrap();
    }
    let value = json!({
        "unknowns": unknowns,
        "equations": equations,
        "families": fams,
        "distinct_pairs": pairs,
        "distinct_within": report.within,
    });
    Ok(out.emit(text.trim_end().to_string(), value))
}

fn component(t: &Target, aug: &str, out: &Output) -> Result<String> {
    let mm = model_for(t)?;
    let u = Augmentation::parse(&mm, aug)?;
    let cm = component_model(&mm, &u)?;
    let factors = component_type(&mm, &u, t.n)?;
    let kind = HomotopyTypeDescriptor::single(factors);

    let assigned: Vec<String> = u
        .values
        .iter()
        .map(|(name, v)| {
            let g = mm.cdga().generator(name).expect("parsed names are generators");
            format!("{}={v}", mm.display_name(&g))
        })
        .collect();
    let mut text = format!("augmentation: {}\n", if assigned.is_empty() { "0".into() } else { assigned.join(", ") });
    text.push_str(&show_cdga(&cm.cdga, &|g| g.name().to_string()));
    writeln!(text, "type: {}", kind.render(out.style())).unwrap();

    let mut value = document(&cm.cdga);
    value["augmentation"] = json!(assigned);
    value["type"] = serde_json::from_str(&kind.to_json()).expect("descriptor json parses");
    Ok(out.emit(text.trim_end().to_string(), value))
}

fn descriptor(d: &HomotopyTypeDescriptor, out: &Output) -> String {
    let mut text = d.render(out.style());
    for note in &d.notes {
        write!(text, "\nnote: {note}").unwrap();
    }
    out.emit(text, serde_json::from_str(&d.to_json()).expect("descriptor json parses"))
}

fn corollary(m: usize, k: usize, out: &Output) -> Result<String> {
    let (free, pointed) = corollary_case(m, k)?;
    let n = corollary_dimension(m, k);
    let text = format!(
        "map(F(R^{m},{k}), S^{n}) = {}\nmap*(F(R^{m},{k}), S^{n}) = {}",
        free.render(out.style()),
        pointed.render(out.style())
    );
    let value = json!({
        "m": m,
        "k": k,
        "n": n,
        "free": serde_json::from_str::<Value>(&free.to_json()).expect("descriptor json parses"),
        "pointed": serde_json::from_str::<Value>(&pointed.to_json()).expect("descriptor json parses"),
    });
    Ok(out.emit(text, value))
}

fn selftest(seed: u64, out: &Output) -> Result<(String, bool)> {
    let report = selftest::run(seed)?;
    let mut text = format!("seed {seed}\n");
    for c in &report.checks {
        writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
    let value = json!({
        "seed": seed,
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
    });
    Ok((out.emit(text.trim_end().to_string(), value), report.passed()))
}

fn dispatch(cmd: &Command) -> Result<(String, bool)> {
    let ok = |s: String| Ok((s, true));
    match cmd {
        Command::Cohomology { m, k, dual, out } => ok(cohomology(*m, *k, *dual, out)?),
        Command::Model { target, out } => ok(model(target, out)?),
        Command::Components { target, out } => ok(components(target, out)?),
        Command::Component { target, aug, out } => ok(component(target, aug, out)?),
        Command::Type { target, out } => {
            let d = full_type(target.m, target.k, target.n, target.pointed, max_k()?)?;
            ok(descriptor(&d, out))
        }
        Command::Thom { target, out } => {
            let d = thom_decomposition(target.m, target.k, target.n, target.pointed)?;
            ok(descriptor(&d, out))
        }
        Command::Corollary { m, k, out } => ok(corollary(*m, *k, out)?),
        Command::Selftest { seed, out } => selftest(*seed, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => {
                    if !e.to_string().contains("Usage:") {
                        eprintln!("\n{}", Cli::command().render_usage());
                    }
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((text, passed)) => {
            println!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), one_line(&e.to_string()));
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rhmap_core::Scalar;

    #[test]
    fn combinations_render_signs() {
        let labels = |i: usize| ["1", "a", "b"][i].to_string();
        let c = vec![(1, Scalar::from_int(-1)), (2, Scalar::from_int(3))];
        assert_eq!(combination(&labels, &c), "-a + 3*b");
        assert_eq!(combination(&labels, &vec![]), "0");
    }

    #[test]
    fn errors_fit_on_one_line() {
        assert_eq!(one_line("a\n  b\tc"), "a b c");
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["rhmap", "type", "--m", "3", "--k", "3", "--n", "2", "--pointed"]).unwrap();
        match cli.command {
            Command::Type { target, out } => {
                assert!(target.pointed);
                assert_eq!(out.format, Format::Text);
            }
            other => panic!("{other:?}"),
        }
        Cli::command().debug_assert();
    }
}
