use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};

use supertropical::catalog;
use supertropical::equalizers::{feq, is_ghost_separating_feq, validate_path, PathTree};
use supertropical::format::{write_classes, write_monoid, write_path, Workspace};
use supertropical::isolation::{
    is_isolated, isolate, sis_path_witness, son_isolating_relation, tyrant_path_witness, tyrant_relation,
    IsolationReport,
};
use supertropical::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use supertropical::oracle::enumerate_mfce;
use supertropical::partition::Partition;
use supertropical::relations::{classify, mfce_violation, quotient};
use supertropical::sections::{is_tyrant, IgSection};
use supertropical::transmission::{ghost_map, tm_factorization_general, Transmission};
use supertropical::verify::{run, search_obstructions, VerifyConfig};

use crate::{Cli, Command, VerifyArgs};

const VIOLATION: u8 = 1;

pub fn dispatch(cli: &Cli) -> Result<ExitCode> {
    let mut files = cli.files.clone();
    if let Command::Check { inputs: extra } = &cli.command {
        files.extend(extra.iter().cloned());
    }
    let ws = load(&files)?;
    let out = Output { porcelain: cli.porcelain };
    match &cli.command {
        Command::Check { .. } => check(&ws, out),
        Command::Factorize { name, relation, verify } => factorize(&ws, out, name, relation.as_deref(), *verify),
        Command::Equalize { monoid, set, paths } => equalize(&ws, out, monoid, set, *paths),
        Command::Tyrant { monoid, element, paths } => tyrant(&ws, out, monoid, element, *paths),
        Command::Isolate { monoid, element, paths } => isolation(&ws, out, monoid, element, *paths),
        Command::Verify(args) => verify(out, args),
        Command::Search { seed, count, size } => search(*seed, *count, *size),
        Command::Lattice { monoid, dot } => lattice(&ws, out, monoid, *dot),
    }
}

#[derive(Clone, Copy)]
struct Output {
    porcelain: bool,
}

fn load(files: &[PathBuf]) -> Result<Workspace> {
    let mut ws = Workspace::default();
    for path in files {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        ws.load_str(&text).map_err(|e| anyhow!("{}:{e}", path.display()))?;
    }
    Ok(ws)
}

fn monoid(ws: &Workspace, name: &str) -> Result<MonoidRef> {
    ws.monoid(name)
        .cloned()
        .or_else(|| catalog::by_name(name))
        .ok_or_else(|| anyhow!("unknown monoid `{name}`"))
}

fn element(u: &SupertropicalMonoid, name: &str) -> Result<ElementId> {
    u.lookup(name).map_err(|_| anyhow!("unknown element `{name}` of {}", u.name()))
}

fn tangible(u: &SupertropicalMonoid, name: &str) -> Result<ElementId> {
    let x = element(u, name)?;
    if !u.is_tangible(x) {
        bail!("`{name}` is not tangible in {}", u.name());
    }
    Ok(x)
}

fn names(u: &SupertropicalMonoid, xs: &[ElementId]) -> String {
    xs.iter().map(|&x| u.element_name(x)).collect::<Vec<_>>().join(",")
}

/// `classes={a,b}{c,d}`, nontrivial classes only.
fn porcelain_classes(u: &SupertropicalMonoid, p: &Partition) -> String {
    let body: String = p
        .classes()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("{{{}}}", names(u, &c)))
        .collect();
    format!("classes={body}")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn finish(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VIOLATION)
    }
}

fn check(ws: &Workspace, out: Output) -> Result<ExitCode> {
    let mut ok = true;
    let mut report = String::new();
    for u in &ws.monoids {
        let witness = u.distributivity_witness();
        if out.porcelain {
            let w = witness.map_or(String::new(), |(a, b, c)| format!(" witness={}", names(u, &[a, b, c])));
            writeln!(
                report,
                "kind=monoid name={} status=ok size={} semiring={} unfolded={}{w}",
                u.name(),
                u.size(),
                yes_no(witness.is_none()),
                yes_no(u.is_unfolded())
            )?;
        } else {
            let semiring = match witness {
                None => "YES".to_string(),
                Some((a, b, c)) => format!("NO (witness {})", names(u, &[a, b, c])),
            };
            writeln!(report, "monoid {}: OK; semiring: {semiring}", u.name())?;
        }
    }
    let mut line = |kind: &str, name: &str, owner: &str, problem: Option<String>| -> Result<()> {
        ok &= problem.is_none();
        match (&problem, out.porcelain) {
            (None, true) => writeln!(report, "kind={kind} name={name} of={owner} status=ok")?,
            (Some(p), true) => writeln!(report, "kind={kind} name={name} of={owner} status=invalid reason={p}")?,
            (None, false) => writeln!(report, "{kind} {name} on {owner}: OK")?,
            (Some(p), false) => writeln!(report, "{kind} {name} on {owner}: INVALID ({p})")?,
        }
        Ok(())
    };
    for r in &ws.relations {
        let u = monoid(ws, &r.monoid)?;
        let problem = mfce_violation(&u, &r.partition).map(|v| v.describe(&u));
        line("relation", &r.name, &r.monoid, problem)?;
    }
    for s in &ws.sections {
        let u = monoid(ws, &s.monoid)?;
        let problem = IgSection::from_pairs(&u, &s.pairs).err().map(|e| e.to_string());
        line("section", &s.name, &s.monoid, problem)?;
    }
    for m in &ws.maps {
        let owner = format!("{}->{}", m.source.name(), m.target.name());
        line("map", &m.name, &owner, m.transmission().err().map(|e| e.to_string()))?;
    }
    for r in &ws.semirings {
        line("semiring", r.name(), r.name(), None)?;
    }
    for v in &ws.valuations {
        let owner = format!("{}->{}", v.source.name(), v.target.name());
        line("val", &v.name, &owner, v.supervaluation().err().map(|e| e.to_string()))?;
    }
    for (i, p) in ws.paths.iter().enumerate() {
        let u = monoid(ws, &p.monoid)?;
        let members: BTreeSet<ElementId> = p.path.labels.iter().flat_map(|l| [l.s, l.t]).collect();
        let problem = validate_path(&u, &p.path, &members).err().map(|e| e.to_string());
        line("path", &format!("#{}", i + 1), &p.monoid, problem)?;
    }
    print!("{report}");
    Ok(finish(ok))
}

fn map_text(t: &Transmission) -> String {
    let (s, g) = (t.source(), t.target());
    s.elements()
        .map(|x| format!("{}->{}", s.element_name(x), g.element_name(t.apply(x))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn factorize(ws: &Workspace, out: Output, name: &str, relation: Option<&str>, verify: bool) -> Result<ExitCode> {
    let alpha = match relation {
        Some(r) => {
            let u = monoid(ws, name)?;
            let rel = ws
                .relations
                .iter()
                .find(|x| x.name == r && x.monoid == u.name())
                .ok_or_else(|| anyhow!("unknown relation `{r}` on {}", u.name()))?;
            quotient(&u, &rel.partition)?.projection
        }
        None => match ws.map(name) {
            Some(m) => m.transmission().with_context(|| format!("map `{name}` is not a transmission"))?,
            None => ghost_map(&monoid(ws, name)?),
        },
    };
    let f = tm_factorization_general(&alpha)?;
    let trivial = f.tangible_part.is_injective();
    let mut text = String::new();
    if out.porcelain {
        writeln!(text, "source={} target={}", alpha.source().name(), alpha.target().name())?;
        writeln!(text, "middle={} middle_size={} trivial={}", f.middle.name(), f.middle.size(), yes_no(trivial))?;
        writeln!(text, "tangible_part={}", map_text(&f.tangible_part))?;
        writeln!(text, "mixing_part={}", map_text(&f.mixing_part))?;
    } else {
        writeln!(text, "transmission {} -> {}", alpha.source().name(), alpha.target().name())?;
        if trivial {
            writeln!(text, "the tangible part is an isomorphism; the factorization is trivial")?;
        }
        writeln!(text, "tangible part: {}", map_text(&f.tangible_part))?;
        writeln!(text, "middle monoid {} ({} elements):", f.middle.name(), f.middle.size())?;
        text.push_str(&f.middle.table_text());
        writeln!(text, "mixing part: {}", map_text(&f.mixing_part))?;
    }
    let mut ok = true;
    if verify {
        let composite = f.composite() == alpha;
        let t = f.tangible_part.is_tangible();
        let m = f.mixing_part.is_mixing();
        ok = composite && t && m;
        if out.porcelain {
            writeln!(text, "verify composite={} tangible={} mixing={}", yes_no(composite), yes_no(t), yes_no(m))?;
        } else {
            writeln!(
                text,
                "verify: composite {}, tangible part {}, mixing part {}",
                if composite { "agrees" } else { "DIFFERS" },
                if t { "tangible" } else { "NOT tangible" },
                if m { "mixing" } else { "NOT mixing" }
            )?;
        }
    }
    print!("{text}");
    Ok(finish(ok))
}

fn parse_set(u: &SupertropicalMonoid, words: &[String]) -> Result<BTreeSet<ElementId>> {
    words
        .iter()
        .flat_map(|w| w.split(|c: char| c.is_whitespace() || c == '{' || c == '}' || c == ','))
        .filter(|w| !w.is_empty())
        .map(|w| element(u, w))
        .collect()
}

fn equalize(ws: &Workspace, out: Output, name: &str, set: &[String], paths: bool) -> Result<ExitCode> {
    let u = monoid(ws, name)?;
    let s = parse_set(&u, set)?;
    let f = feq(&u, &s);
    let separating = is_ghost_separating_feq(&u, std::slice::from_ref(&s));
    let mut text = String::new();
    if out.porcelain {
        writeln!(text, "monoid={} set={} {}", u.name(), names(&u, &s.iter().copied().collect::<Vec<_>>()), porcelain_classes(&u, &f))?;
        writeln!(text, "ghost_separating={}", yes_no(separating))?;
    } else {
        writeln!(text, "Feq{} on {}: {}", u.format_set(&s), u.name(), write_classes(&u, &f))?;
        writeln!(text, "ghost separating: {}", yes_no(separating))?;
    }
    if paths {
        for class in f.classes().into_iter().filter(|c| c.len() > 1) {
            let tree = PathTree::new(&u, std::slice::from_ref(&s), class[0]);
            for &w in &class[1..] {
                let p = tree.path_to(&u, w).ok_or_else(|| anyhow!("no path inside a class"))?;
                write!(text, "{} ~ {} ", u.element_name(class[0]), u.element_name(w))?;
                text.push_str(&write_path(&u, &p));
            }
        }
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn relation_block(u: &SupertropicalMonoid, label: &str, r: &IsolationReport, out: Output) -> Result<String> {
    let mut text = String::new();
    if out.porcelain {
        writeln!(text, "relation={label} {}", r.render(u))?;
        writeln!(text, "relation={label} {}", porcelain_classes(u, &r.relation))?;
    } else {
        writeln!(text, "{label}({}): case {}", u.element_name(r.subject), r.case)?;
        writeln!(text, "  {}", write_classes(u, &r.relation))?;
        if let Some(w) = &r.witness {
            writeln!(text, "  witness ({})", names(u, w))?;
        }
        if let Ok(k) = classify(u, &r.relation) {
            writeln!(text, "  ghost separating: {}", yes_no(k.is_ghost_separating))?;
        }
    }
    Ok(text)
}

fn tyrant(ws: &Workspace, out: Output, name: &str, x: &str, paths: bool) -> Result<ExitCode> {
    let u = monoid(ws, name)?;
    let x = tangible(&u, x)?;
    let r = tyrant_relation(&u, x)?;
    let mut text = String::new();
    if out.porcelain {
        writeln!(text, "monoid={} x={} tyrant={}", u.name(), u.element_name(x), yes_no(is_tyrant(&u, x)?))?;
    } else {
        let verdict = if is_tyrant(&u, x)? { "is" } else { "is not" };
        writeln!(text, "{} {verdict} a tyrant in {}", u.element_name(x), u.name())?;
    }
    text.push_str(&relation_block(&u, "T", &r, out)?);
    if paths {
        if let Some(p) = tyrant_path_witness(&u, x) {
            text.push_str(&write_path(&u, &p));
        }
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn isolation(ws: &Workspace, out: Output, name: &str, x: &str, paths: bool) -> Result<ExitCode> {
    let u = monoid(ws, name)?;
    let x = tangible(&u, x)?;
    let isolated = is_isolated(&u, x)?;
    let mut text = String::new();
    if out.porcelain {
        writeln!(text, "monoid={} x={} isolated={}", u.name(), u.element_name(x), yes_no(isolated))?;
    } else if isolated {
        writeln!(text, "{} is already isolated in {}", u.element_name(x), u.name())?;
    } else {
        writeln!(text, "{} is not isolated in {}", u.element_name(x), u.name())?;
    }
    text.push_str(&relation_block(&u, "Is", &isolate(&u, x)?, out)?);
    text.push_str(&relation_block(&u, "Sis", &son_isolating_relation(&u, x)?, out)?);
    if paths {
        if let Some((z, p)) = sis_path_witness(&u, x) {
            write!(text, "son {} ", u.element_name(z))?;
            text.push_str(&write_path(&u, &p));
        }
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn verify(out: Output, args: &VerifyArgs) -> Result<ExitCode> {
    let config = VerifyConfig {
        seed: args.seed,
        count: args.count,
        size: args.size,
        cap: args.cap,
        include_catalog: !args.no_catalog,
    };
    let report = run(&config);
    print!("{}", if out.porcelain { report.porcelain() } else { report.human() });
    Ok(finish(report.passed()))
}

fn search(seed: u64, count: usize, size: usize) -> Result<ExitCode> {
    for (u, found) in search_obstructions(seed, count, size) {
        let keys: Vec<&str> = found.iter().map(|o| o.key()).collect();
        println!("# obstructions: {}", keys.join(" "));
        println!("{}", write_monoid(&u));
    }
    Ok(ExitCode::SUCCESS)
}

fn lattice(ws: &Workspace, out: Output, name: &str, dot: bool) -> Result<ExitCode> {
    let u = monoid(ws, name)?;
    let mut all: Vec<Partition> = enumerate_mfce(&u)?;
    all.sort_by_key(|p| (std::cmp::Reverse(p.num_classes()), p.labels().to_vec()));
    let covers: Vec<(usize, usize)> = (0..all.len())
        .flat_map(|i| (0..all.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            i != j
                && all[i].is_finer(&all[j])
                && !(0..all.len()).any(|k| k != i && k != j && all[i].is_finer(&all[k]) && all[k].is_finer(&all[j]))
        })
        .collect();
    let flags = |p: &Partition| {
        let k = classify(&u, p).expect("enumerated relations are MFCE");
        (k.is_ghost_separating, k.is_mixing)
    };
    let mut text = String::new();
    if dot {
        writeln!(text, "digraph \"{}\" {{", u.name())?;
        writeln!(text, "  rankdir=BT;")?;
        for (i, p) in all.iter().enumerate() {
            let (g, m) = flags(p);
            let shape = match (g, m) {
                (true, true) => "doublecircle",
                (true, false) => "box",
                (false, true) => "ellipse",
                (false, false) => "plaintext",
            };
            writeln!(text, "  r{i} [label=\"{}\", shape={shape}];", write_classes(&u, p))?;
        }
        for (i, j) in &covers {
            writeln!(text, "  r{i} -> r{j};")?;
        }
        writeln!(text, "}}")?;
    } else {
        for (i, p) in all.iter().enumerate() {
            let (g, m) = flags(p);
            let up: Vec<String> = covers.iter().filter(|c| c.0 == i).map(|c| format!("r{}", c.1)).collect();
            if out.porcelain {
                writeln!(
                    text,
                    "relation=r{i} ghost_separating={} mixing={} covered_by={} {}",
                    yes_no(g),
                    yes_no(m),
                    up.join(","),
                    porcelain_classes(&u, p)
                )?;
            } else {
                writeln!(
                    text,
                    "r{i}: {}{}{}{}",
                    write_classes(&u, p),
                    if g { "  [ghost separating]" } else { "" },
                    if m { "  [mixing]" } else { "" },
                    if up.is_empty() { String::new() } else { format!("  < {}", up.join(" ")) }
                )?;
            }
        }
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}
