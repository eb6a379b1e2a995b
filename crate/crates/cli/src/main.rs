//! `netbundle`: command-line front end for the netbundle library.

mod load;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use netbundle::cech::{self, to_locally_constant};
use netbundle::cohomology::{
    self, classify_cocycles, classify_with_oracle, cochains_equivalent, reconstruct_bundle, Holonomy,
};
use netbundle::groups::{enumerate_homomorphisms, Letter, Word};
use netbundle::io;
use netbundle::sample::Sampler;
use netbundle::{Cochain1, Complex, Elem, Error, Execution, Group, Poset, Presentation, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use load::{Failure, Inputs};
use report::{Format, Report};

#[derive(Parser)]
#[command(name = "netbundle", version, about = "Bundles, connections and cohomology over finite posets")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on exhaustive search spaces.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Poset for data files, overriding the name in their header.
    #[arg(long, global = true)]
    poset: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the simplices of one degree.
    Simplices { poset: String, degree: usize },
    /// Presentation of the fundamental group.
    Pi1 {
        poset: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Equivalence classes of cocycles.
    Classify {
        poset: String,
        group: String,
        /// Cross-check against exhaustive enumeration of cochains.
        #[arg(long)]
        oracle: bool,
    },
    /// Reports on a connection cochain.
    Connection {
        #[arg(value_enum)]
        action: ConnectionAction,
        cochain: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Čech maps.
    Cech {
        #[command(subcommand)]
        action: CechAction,
    },
    /// Validates a principal bundle file and classifies its cocycle.
    Bundle { bundle: PathBuf },
    /// A random cochain file.
    Sample {
        poset: String,
        group: String,
        #[arg(long, value_enum, default_value_t = SampleKind::Connection)]
        kind: SampleKind,
    },
    /// Graph export in dot form.
    Export {
        poset: String,
        #[arg(long, value_enum)]
        what: ExportWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnectionAction {
    Check,
    Curvature,
    Bianchi,
    Holonomy,
    Reduce,
}

#[derive(Subcommand)]
enum CechAction {
    /// Net cocycle on K to Čech cocycle on the opposite poset.
    ToCech { cochain: PathBuf },
    /// Čech cocycle to net cocycle on the same poset.
    ToNet { cech: PathBuf },
    /// Checks z°° = z.
    Roundtrip { cochain: PathBuf },
    /// Locally constant cocycle on the point model.
    ToLc {
        cech: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cover: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Cochain,
    Cocycle,
    Connection,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportWhat {
    Hasse,
    Skeleton,
}

struct Ctx {
    inputs: Inputs,
    exec: Execution,
    budget: u128,
    seed: u64,
    format: Format,
    poset: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx {
        inputs: Inputs::default(),
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
        budget: cli.budget,
        seed: cli.seed,
        format: cli.format,
        poset: cli.poset,
    };
    let result = run(&mut ctx, cli.command);
    let elapsed = start.elapsed();
    match result {
        Ok(out) => {
            print!("{out}");
            eprintln!("elapsed {elapsed:.1?}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}

fn run(ctx: &mut Ctx, command: Command) -> Result<String, Failure> {
    match command {
        Command::Simplices { poset, degree } => simplices(ctx, &poset, degree),
        Command::Pi1 { poset, base } => pi1(ctx, &poset, base.as_deref()),
        Command::Classify { poset, group, oracle } => classify(ctx, &poset, &group, oracle),
        Command::Connection { action, cochain, base } => connection(ctx, action, &cochain, base.as_deref()),
        Command::Cech { action } => cech_cmd(ctx, action),
        Command::Bundle { bundle } => bundle_cmd(ctx, &bundle),
        Command::Sample { poset, group, kind } => sample(ctx, &poset, &group, kind),
        Command::Export { poset, what } => export(ctx, &poset, what),
    }
}

fn group(spec: &str) -> Result<Arc<Group>, Failure> {
    Group::parse(spec).map(Group::into_shared).map_err(|e| Failure::Parse(e.to_string()))
}

fn element(poset: &Poset, id: &str) -> Result<Elem, Failure> {
    poset.elem(id).map_err(|_| Failure::Parse(format!("unknown element `{id}`")))
}

fn members(g: &Group, s: &Subgroup) -> String {
    let items: Vec<String> = s.members().iter().map(|&x| g.format(x)).collect();
    format!("{{{}}}", items.join(", "))
}

fn finish(r: Report) -> Result<String, Failure> {
    Ok(r.finish())
}

fn simplices(ctx: &mut Ctx, poset: &str, degree: usize) -> Result<String, Failure> {
    let p = ctx.inputs.poset(poset, None)?;
    let c = Complex::new(p);
    let list = c.simplices(degree)?;
    let mut r = report(ctx, format!("simplices {} {degree}", c.poset().name()));
    for s in &list {
        let shown = s.display(c.poset()).to_string();
        r.both(&shown, &[("simplex", shown.clone())]);
    }
    r.both(format!("count: {}", list.len()), &[("count", list.len().to_string())]);
    finish(r)
}

fn report(ctx: &mut Ctx, command: String) -> Report {
    let digest = std::mem::take(&mut ctx.inputs).digest();
    Report::new(ctx.format, &command, &digest)
}

fn word_text(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|l| if l.inverse { format!("g{}^-1", l.generator) } else { format!("g{}", l.generator) })
        .collect();
    parts.join(" ")
}

fn reduce(word: Word) -> Word {
    let mut out: Word = Vec::new();
    for l in word {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && out[0] == out[out.len() - 1].inverted() {
        out.pop();
        out.remove(0);
    }
    out
}

/// Eliminates generators killed or identified by relators of length one or
/// two. Returns the surviving generators and the remaining relators.
fn simplify(generators: usize, relators: &[Word]) -> (Vec<u32>, Vec<Word>) {
    let mut sub: Vec<Option<Word>> = vec![None; generators];
    fn expand(sub: &[Option<Word>], w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for &l in w {
            match &sub[l.generator as usize] {
                None => out.push(l),
                Some(rep) => {
                    let mut x = expand(sub, rep);
                    if l.inverse {
                        x = x.iter().rev().map(|l| l.inverted()).collect();
                    }
                    out.extend(x);
                }
            }
        }
        out
    }
    loop {
        let mut changed = false;
        for rel in relators {
            let w = reduce(expand(&sub, rel));
            match w[..] {
                [l] => {
                    sub[l.generator as usize] = Some(Vec::new());
                    changed = true;
                }
                [a, b] if a.generator != b.generator => {
                    // a b = 1, so a = b⁻¹
                    let rep = if a.inverse { vec![b] } else { vec![b.inverted()] };
                    sub[a.generator as usize] = Some(rep);
                    changed = true;
                }
                _ => {}
            }
            if changed {
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let surviving = (0..generators as u32).filter(|&g| sub[g as usize].is_none()).collect();
    let mut remaining: Vec<Word> = Vec::new();
    for rel in relators {
        let w = reduce(expand(&sub, rel));
        if !w.is_empty() && !remaining.contains(&w) {
            remaining.push(w);
        }
    }
    (surviving, remaining)
}

fn pi1(ctx: &mut Ctx, poset: &str, base: Option<&str>) -> Result<String, Failure> {
    let p = ctx.inputs.poset(poset, None)?;
    p.require_connected()?;
    let base = match base {
        Some(b) => element(&p, b)?,
        None => Elem::new(0),
    };
    let c = Complex::new(p).into_shared();
    let pres = Presentation::new(&c, base)?;
    let lp = c.poset();
    let mut r = report(ctx, format!("pi1 {} --base {}", lp.name(), lp.label(base)));
    r.both(format!("basepoint: {}", lp.label(base)), &[("basepoint", lp.label(base).to_string())]);
    r.both(format!("generators: {}", pres.generators().len()), &[("generators", pres.generators().len().to_string())]);
    for (i, &e) in pres.generators().iter().enumerate() {
        let shown = c.edge(e).display(lp).to_string();
        r.both(format!("  g{i} = {shown}"), &[("generator", format!("g{i}")), ("simplex", shown)]);
    }
    r.both(format!("relators: {}", pres.relators().len()), &[("relators", pres.relators().len().to_string())]);
    for (i, w) in pres.relators().iter().enumerate() {
        r.both(format!("  r{i} = {}", word_text(w)), &[("relator", format!("r{i}")), ("word", word_text(w))]);
    }
    let (surviving, remaining) = simplify(pres.generators().len(), pres.relators());
    let names: Vec<String> = surviving.iter().map(|g| format!("g{g}")).collect();
    r.both(
        format!("surviving generators: {} [{}]", surviving.len(), names.join(", ")),
        &[("surviving_generators", surviving.len().to_string())],
    );
    r.both(format!("remaining relators: {}", remaining.len()), &[("remaining_relators", remaining.len().to_string())]);
    for w in &remaining {
        r.text(format!("  {}", word_text(w)));
    }
    for spec in ["Z2", "Z3"] {
        let g = group(spec)?;
        let homs = enumerate_homomorphisms(pres.generators().len(), pres.relators(), &g, ctx.budget, ctx.exec)?;
        r.both(
            format!("homs to {spec}: {}", homs.len()),
            &[("homs", homs.len().to_string()), ("group", spec.to_string())],
        );
    }
    finish(r)
}

fn classify(ctx: &mut Ctx, poset: &str, spec: &str, oracle: bool) -> Result<String, Failure> {
    let p = ctx.inputs.poset(poset, None)?;
    p.require_connected()?;
    let g = group(spec)?;
    let c = Complex::new(p).into_shared();
    let (cl, report_oracle) = if oracle {
        let (cl, o, agree) = classify_with_oracle(&c, &g, ctx.budget, ctx.exec)?;
        (cl, Some((o, agree)))
    } else {
        (classify_cocycles(&c, &g, ctx.budget, ctx.exec)?, None)
    };
    let flag = if oracle { " --oracle" } else { "" };
    let mut r = report(ctx, format!("classify {} {}{flag}", c.poset().name(), g.descriptor()));
    r.both(
        format!("presentation: {} generators, {} relators", cl.presentation.generators().len(), cl.presentation.relators().len()),
        &[
            ("generators", cl.presentation.generators().len().to_string()),
            ("relators", cl.presentation.relators().len().to_string()),
        ],
    );
    r.both(format!("homomorphisms: {}", cl.hom_count), &[("homomorphisms", cl.hom_count.to_string())]);
    r.both(format!("classes: {}", cl.classes.len()), &[("classes", cl.classes.len().to_string())]);
    for (i, class) in cl.classes.iter().enumerate() {
        let images: Vec<String> = class.hom.iter().map(|&x| g.format(x)).collect();
        let image = g.subgroup_generated(&class.hom)?;
        r.both(
            format!("  class {i}: hom [{}]  size {}  image order {}", images.join(", "), class.size, image.len()),
            &[
                ("class", i.to_string()),
                ("hom", format!("[{}]", images.join(";"))),
                ("size", class.size.to_string()),
                ("image_order", image.len().to_string()),
            ],
        );
    }
    if let Some((o, agree)) = report_oracle {
        r.both(
            format!(
                "oracle: {} cochains, {} cocycles, {} classes, agrees: {agree}",
                o.cochains_scanned,
                o.cocycle_count,
                o.representatives.len()
            ),
            &[
                ("oracle_cochains", o.cochains_scanned.to_string()),
                ("oracle_cocycles", o.cocycle_count.to_string()),
                ("oracle_classes", o.representatives.len().to_string()),
                ("oracle_agrees", agree.to_string()),
            ],
        );
    }
    finish(r)
}

fn load_cochain(ctx: &mut Ctx, path: &std::path::Path) -> Result<(String, Cochain1), Failure> {
    let (text, complex) = ctx.inputs.data_file(path, ctx.poset.as_deref())?;
    let header = io::read_header(&text)?;
    Ok((header.name, io::parse_cochain(&text, complex)?))
}

fn connection(
    ctx: &mut Ctx,
    action: ConnectionAction,
    path: &std::path::Path,
    base: Option<&str>,
) -> Result<String, Failure> {
    let (name, u) = load_cochain(ctx, path)?;
    let c = u.complex().clone();
    let p = c.poset();
    let g = u.group().clone();
    let base = match base {
        Some(b) => element(p, b)?,
        None => Elem::new(0),
    };
    let label = match action {
        ConnectionAction::Check => "check",
        ConnectionAction::Curvature => "curvature",
        ConnectionAction::Bianchi => "bianchi",
        ConnectionAction::Holonomy => "holonomy",
        ConnectionAction::Reduce => "reduce",
    };
    if let ConnectionAction::Check = action {
        let (edges, triangles) = u.connection_violations();
        if !edges.is_empty() || !triangles.is_empty() {
            for e in edges {
                eprintln!("not reverse-symmetric on {}", c.edge(e).display(p));
            }
            for t in triangles {
                eprintln!("nerve cocycle identity fails on {}", c.triangles()[t].display(p));
            }
            return Err(Failure::Domain(Error::NotConnection));
        }
        let mut r = report(ctx, format!("connection check {name}"));
        r.both("connection: true", &[("connection", "true".into())]);
        r.both(format!("cocycle: {}", u.is_cocycle()), &[("cocycle", u.is_cocycle().to_string())]);
        return finish(r);
    }
    if !u.is_connection() {
        return Err(Failure::Domain(Error::NotConnection));
    }
    let mut r = report(ctx, format!("connection {label} {name}"));
    match action {
        ConnectionAction::Check => unreachable!("handled above"),
        ConnectionAction::Curvature => {
            let w = cohomology::curvature(&u)?;
            let support = w.support();
            r.both(format!("flat: {}", support.is_empty()), &[("flat", support.is_empty().to_string())]);
            r.both(
                format!("nonflat simplices: {} of {}", support.len(), w.values().len()),
                &[("nonflat", support.len().to_string()), ("triangles", w.values().len().to_string())],
            );
            for t in support {
                let shown = c.triangles()[t].display(p).to_string();
                let value = g.format(w.value(t));
                r.both(format!("  w {shown} = {value}"), &[("simplex", shown), ("curvature", value)]);
            }
        }
        ConnectionAction::Bianchi => {
            let v = cohomology::bianchi_check(&u)?;
            let total = c.tetrahedra().len();
            r.both(
                format!("3-simplices: {total}, violations: {}", v.len()),
                &[("tetrahedra", total.to_string()), ("violations", v.len().to_string())],
            );
            for x in v {
                r.both(
                    format!("  violation at {}", c.tetrahedra()[x.tetrahedron].simplex.display(p)),
                    &[("violation", c.tetrahedra()[x.tetrahedron].simplex.display(p).to_string())],
                );
            }
        }
        ConnectionAction::Holonomy => {
            let h = Holonomy::compute(&u, base)?;
            let normal = h.restricted_is_normal(&u);
            r.both(
                format!("holonomy at {}: order {} {}", p.label(base), h.full.len(), members(&g, &h.full)),
                &[("base", p.label(base).into()), ("holonomy_order", h.full.len().to_string()), ("holonomy", members(&g, &h.full))],
            );
            r.both(
                format!("restricted holonomy: order {} {}", h.restricted.len(), members(&g, &h.restricted)),
                &[("restricted_order", h.restricted.len().to_string()), ("restricted", members(&g, &h.restricted))],
            );
            r.both(format!("restricted normal: {normal}"), &[("restricted_normal", normal.to_string())]);
        }
        ConnectionAction::Reduce => {
            let red = cohomology::reduce_to_holonomy(&u, base)?;
            let ok = red.witness.is_morphism(&red.reduced, &u);
            r.both(
                format!("holonomy group: order {} {}", red.subgroup.len(), members(&g, &red.subgroup)),
                &[("subgroup_order", red.subgroup.len().to_string()), ("subgroup", members(&g, &red.subgroup))],
            );
            r.both(format!("proper: {}", !red.subgroup.is_whole()), &[("proper", (!red.subgroup.is_whole()).to_string())]);
            r.both(format!("witness is a morphism: {ok}"), &[("witness_ok", ok.to_string())]);
            for a in p.elements() {
                let v = g.format(red.witness.value(a));
                r.both(format!("  f {} = {v}", p.label(a)), &[("witness", p.label(a).into()), ("value", v)]);
            }
            r.text("");
            r.text(io::format_cochain(&format!("{name}.reduced"), &red.reduced).trim_end());
            for (e, b) in c.edges().iter().enumerate() {
                r.record(&[("edge", b.display(p).to_string()), ("reduced", g.format(red.reduced.value(e)))]);
            }
        }
    }
    finish(r)
}

fn cech_cmd(ctx: &mut Ctx, action: CechAction) -> Result<String, Failure> {
    match action {
        CechAction::ToCech { cochain } => {
            let (name, z) = load_cochain(ctx, &cochain)?;
            let xi = cech::to_cech(&z)?;
            let mut r = report(ctx, format!("cech to-cech {name}"));
            r.raw(&io::format_cech(&format!("{name}.c"), &xi));
            finish(r)
        }
        CechAction::ToNet { cech: path } => {
            let (name, xi) = load_cech(ctx, &path)?;
            let z = cech::to_net(&xi)?;
            let mut r = report(ctx, format!("cech to-net {name}"));
            r.raw(&io::format_cochain(&format!("{name}.n"), &z));
            finish(r)
        }
        CechAction::Roundtrip { cochain } => {
            let (name, z) = load_cochain(ctx, &cochain)?;
            let twice = cech::circle_map(&cech::circle_map(&z)?)?;
            let same = cech::verify_double_circle(&z)?;
            let differing = (0..z.complex().edge_count()).filter(|&e| twice.value(e) != z.value(e)).count();
            let mut r = report(ctx, format!("cech roundtrip {name}"));
            r.both(format!("z°° = z: {same}"), &[("double_circle", same.to_string())]);
            r.both(format!("differing simplices: {differing}"), &[("differing", differing.to_string())]);
            finish(r)
        }
        CechAction::ToLc { cech: path, cover } => {
            let (name, xi) = load_cech(ctx, &path)?;
            let p = xi.poset().clone();
            let cover: Vec<Elem> = cover.iter().map(|a| element(&p, a.trim())).collect::<Result<_, _>>()?;
            let lc = to_locally_constant(&xi, &cover)?;
            let labels: Vec<&str> = cover.iter().map(|&a| p.label(a)).collect();
            let mut r = report(ctx, format!("cech to-lc {name} --cover {}", labels.join(",")));
            let points: Vec<&str> = cech::points(&p).into_iter().map(|x| p.label(x)).collect();
            r.both(format!("points: {}", points.join(" ")), &[("points", points.join(","))]);
            for &(i, j, x, v) in lc.entries() {
                if i == j {
                    continue;
                }
                let (a, b) = (p.label(cover[i]), p.label(cover[j]));
                let value = xi.group().format(v);
                r.both(
                    format!("f ({a},{b}) at {} = {value}", p.label(x)),
                    &[("pair", format!("({a},{b})")), ("point", p.label(x).into()), ("value", value)],
                );
            }
            finish(r)
        }
    }
}

fn load_cech(ctx: &mut Ctx, path: &std::path::Path) -> Result<(String, cech::CechCocycle), Failure> {
    let (text, complex) = ctx.inputs.data_file(path, ctx.poset.as_deref())?;
    let header = io::read_header(&text)?;
    let xi = io::parse_cech(&text, complex)?;
    if let Some(v) = xi.violations().into_iter().next() {
        return Err(Failure::Domain(Error::InvalidCech(v)));
    }
    Ok((header.name, xi))
}

fn bundle_cmd(ctx: &mut Ctx, path: &std::path::Path) -> Result<String, Failure> {
    let (text, complex) = ctx.inputs.data_file(path, ctx.poset.as_deref())?;
    let header = io::read_header(&text)?;
    let pb = Arc::new(io::parse_bundle(&text, complex.clone())?);
    let g = pb.group().clone();
    let theta = pb.local_trivialization(&vec![0; complex.poset().len()])?;
    let z = cech::to_net(&theta.transition_functions())?;
    let cl = classify_cocycles(&complex, &g, ctx.budget, ctx.exec)?;
    let class = cl.class_of(&z)?;
    let trivial = pb.bundle().global_section()?.is_some();
    let rebuilt = reconstruct_bundle(&z)?;
    let same = cochains_equivalent(&z, &rebuilt.cocycle()?)?.is_some();
    let mut r = report(ctx, format!("bundle {}", header.name));
    r.both("valid: true", &[("valid", "true".into())]);
    r.both(format!("cocycle class: {class} of {}", cl.classes.len()), &[("class", class.to_string()), ("classes", cl.classes.len().to_string())]);
    r.both(format!("trivial: {trivial}"), &[("trivial", trivial.to_string())]);
    r.both(format!("reconstruction agrees: {same}"), &[("reconstruction", same.to_string())]);
    r.text("");
    r.text(io::format_cochain(&format!("{}.z", header.name), &z).trim_end());
    finish(r)
}

fn sample(ctx: &mut Ctx, poset: &str, spec: &str, kind: SampleKind) -> Result<String, Failure> {
    let p = ctx.inputs.poset(poset, None)?;
    p.require_connected()?;
    let g = group(spec)?;
    let c = Complex::new(p).into_shared();
    let s = Sampler::new(c.clone(), g, ctx.budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let z = match kind {
        SampleKind::Cochain => s.random_cochain(&mut rng),
        SampleKind::Cocycle => s.random_cocycle(&mut rng),
        SampleKind::Connection => s.random_connection(&mut rng),
    };
    let name = format!("sample{}", ctx.seed);
    let mut r = report(ctx, format!("sample {} {}", c.poset().name(), s.group().descriptor()));
    r.raw(&io::format_cochain(&name, &z));
    finish(r)
}

fn export(ctx: &mut Ctx, poset: &str, what: ExportWhat) -> Result<String, Failure> {
    let p = ctx.inputs.poset(poset, None)?;
    let c = Complex::new(p);
    let p = c.poset();
    let mut out = String::new();
    match what {
        ExportWhat::Hasse => {
            out.push_str(&format!("digraph \"{}\" {{\n", p.name()));
            for a in p.elements() {
                out.push_str(&format!("  \"{}\";\n", p.label(a)));
            }
            for (a, b) in p.covers() {
                out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.label(a), p.label(b)));
            }
        }
        ExportWhat::Skeleton => {
            out.push_str(&format!("graph \"{}.skeleton\" {{\n", p.name()));
            for a in p.elements() {
                out.push_str(&format!("  \"{}\";\n", p.label(a)));
            }
            for e in c.skeleton() {
                let b = c.edge(e);
                out.push_str(&format!(
                    "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                    p.label(b.face1()),
                    p.label(b.face0()),
                    p.label(b.support())
                ));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
