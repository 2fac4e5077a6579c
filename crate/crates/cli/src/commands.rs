use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use spinelab::drill::{cut_along_hypersurface, sample_off_skeleton_points, spine_ids_in_first};
use spinelab::format::{parse_bundle, parse_complex, parse_partition, write_bundle, write_complex};
use spinelab::homology::{
    betti_numbers, hypersurface_from_class, nonzero_classes, top_cycle_basis,
};
use spinelab::manifold::{is_closed_manifold, is_closed_pseudomanifold};
use spinelab::nerve::nerve_of_pair;
use spinelab::normal::census_line;
use spinelab::search::DEFAULT_ITERATIONS;
use spinelab::strata::type_disagreements;
use spinelab::{
    derived, drill, dual_spine, enumerate_normal_discs, models, nerve, nerve_checks,
    search_min_vertices, stratum_components, verify_spine, Certificate, Complex, DrillSite, Error,
    SearchBudget, SpineComplex, VerifyOptions, VertexPartition,
};

use crate::{Cli, Command, Global, Input, PartitionArg};

pub const CHECK_FAILED: u8 = 2;
pub const INVARIANT: u8 = 3;

pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Invariant(_)) => INVARIANT,
        Some(Error::NoCertifiedPartition) => CHECK_FAILED,
        _ => 1,
    }
}

struct Loaded {
    name: String,
    complex: Complex,
    classes: Option<Vec<Vec<String>>>,
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn load(input: &Input) -> Result<Loaded> {
    if let Some(name) = &input.name {
        return Ok(Loaded {
            name: name.clone(),
            complex: models::named(name)?,
            classes: None,
        });
    }
    let bundle = parse_bundle(&read_text(input.input.as_deref())?)?;
    if bundle.complex.is_empty() {
        bail!("input complex is empty");
    }
    let name = input
        .input
        .as_ref()
        .map_or("stdin".to_string(), |p| p.display().to_string());
    Ok(Loaded {
        name,
        complex: bundle.complex,
        classes: bundle.classes,
    })
}

fn partition(l: &Loaded, arg: &PartitionArg) -> Result<Option<VertexPartition>> {
    let n = l.complex.num_vertices();
    Ok(match arg.partition.as_deref() {
        Some("discrete") => Some(VertexPartition::discrete(n)),
        Some("single") => Some(VertexPartition::single(n)),
        Some(path) => Some(VertexPartition::from_labels(
            &l.complex,
            &parse_partition(&read_text(Some(Path::new(path)))?)?,
        )?),
        None => match &l.classes {
            Some(c) => Some(VertexPartition::from_labels(&l.complex, c)?),
            None => None,
        },
    })
}

fn require_partition(l: &Loaded, arg: &PartitionArg) -> Result<VertexPartition> {
    partition(l, arg)?.ok_or_else(|| {
        anyhow!("no partition: pass --partition or add `#@ class` lines to the input")
    })
}

fn show_partition(c: &Complex, p: &VertexPartition) -> String {
    p.labels(c)
        .iter()
        .map(|cl| cl.join(" "))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn join_nums(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Prints the report, then the complex text to stdout, or to `--out` when given.
/// On stdout the report lines become comments so the output still parses.
fn emit(g: &Global, report: &str, text: &str) -> Result<()> {
    match &g.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            print!("{report}");
        }
        None => {
            for line in report.lines() {
                println!("# {line}");
            }
            print!("{text}");
        }
    }
    Ok(())
}

/// Writes `text` to `--out` when given, then prints the report.
fn report_with_file(g: &Global, report: &str, text: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = &g.out {
        std::fs::write(path, text()).with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{report}");
    Ok(())
}

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen {
            name,
            simplex,
            sphere,
            list,
        } => gen(g, name.as_deref(), *simplex, *sphere, *list),
        Command::Subdivide { input, times } => {
            let l = load(input)?;
            let mut c = l.complex;
            for _ in 0..*times {
                c = derived(&c).complex().clone();
            }
            emit(
                g,
                &format!("f-vector: {}\n", join_nums(&c.f_vector())),
                &write_complex(&c),
            )?;
            Ok(0)
        }
        Command::DualSpine { input, partition } => {
            let l = load(input)?;
            let p = require_partition(&l, partition)?;
            let s = dual_spine(&l.complex, &p)?;
            let mut r = String::new();
            writeln!(r, "vertices: {}", s.vertex_count())?;
            writeln!(r, "cells: {}", s.cells().len())?;
            writeln!(r, "spine f-vector: {}", join_nums(&s.complex().f_vector()))?;
            // The bundle carries what later pipeline stages need; `--out` gets the spine itself.
            match &g.out {
                Some(path) => {
                    std::fs::write(path, write_complex(&s.complex()))
                        .with_context(|| format!("writing {}", path.display()))?;
                    print!("{r}");
                }
                None => {
                    for line in r.lines() {
                        println!("# {line}");
                    }
                    print!("{}", write_bundle(&l.complex, &p.labels(&l.complex)));
                }
            }
            Ok(0)
        }
        Command::VerifySpine { input, partition } => {
            let l = load(input)?;
            let s = dual_spine(&l.complex, &require_partition(&l, partition)?)?;
            let rep = verify_spine(
                &s,
                VerifyOptions {
                    seed: g.seed,
                    ..VerifyOptions::default()
                },
            );
            println!(
                "certificate: {}, vertices: {}",
                rep.certificate, rep.vertex_count
            );
            for st in &rep.regions {
                let outcome = match st.outcome {
                    spinelab::spine::RegionOutcome::Ball => "ball",
                    spinelab::spine::RegionOutcome::Collar => "collar",
                    spinelab::spine::RegionOutcome::NotCollapsed => "not collapsed",
                };
                println!(
                    "region class {} component {}: {} top faces, {outcome}",
                    st.class, st.component, st.top_faces
                );
            }
            if let Some(note) = &rep.note {
                println!("note: {note}");
            }
            Ok(if rep.certificate == Certificate::Unknown {
                CHECK_FAILED
            } else {
                0
            })
        }
        Command::Strata { input, partition } => {
            let l = load(input)?;
            let s = dual_spine(&l.complex, &require_partition(&l, partition)?)?;
            let (text, ok) = strata_lines(&s)?;
            print!("{text}");
            Ok(if ok { 0 } else { INVARIANT })
        }
        Command::Search { input, exhaustive } => {
            let l = load(input)?;
            let budget = SearchBudget {
                force_exhaustive: *exhaustive,
                iterations: g.budget.unwrap_or(DEFAULT_ITERATIONS),
                seed: g.seed,
                jobs: g.jobs,
                ..SearchBudget::default()
            };
            let r = search_min_vertices(&l.complex, &budget)?;
            let mut out = String::new();
            writeln!(
                out,
                "best_count: {}, proven_exhaustive: {}",
                r.best_count, r.proven_exhaustive
            )?;
            writeln!(out, "evaluated: {}", r.evaluated)?;
            writeln!(
                out,
                "partition: {}",
                show_partition(&l.complex, &r.best_partition)
            )?;
            report_with_file(g, &out, || {
                write_bundle(&l.complex, &r.best_partition.labels(&l.complex))
            })?;
            Ok(0)
        }
        Command::Nerve {
            input,
            partition,
            sub,
        } => {
            let l = load(input)?;
            if let Some(path) = sub {
                let y = parse_complex(&read_text(Some(path))?)?;
                let ids = l.complex.embed(&y)?;
                let np = nerve_of_pair(&l.complex, &ids);
                let mut out = String::new();
                writeln!(out, "components: {}", np.strata.len())?;
                writeln!(
                    out,
                    "prenerve f-vector: {}",
                    join_nums(&np.prenerve.f_vector())
                )?;
                writeln!(out, "nerve f-vector: {}", join_nums(&np.nerve().f_vector()))?;
                writeln!(
                    out,
                    "nerve betti: {}",
                    join_nums(&betti_numbers(np.nerve()))
                )?;
                let fibers = np.stein.disconnected_fibers().is_empty();
                let dims = np.stein.dimension_drops().is_empty();
                writeln!(out, "stein-fibers-connected: {}", mark(fibers))?;
                writeln!(out, "stein-g-dimension: {}", mark(dims))?;
                report_with_file(g, &out, || write_complex(np.nerve()))?;
                return Ok(if fibers && dims { 0 } else { INVARIANT });
            }
            let s = dual_spine(&l.complex, &require_partition(&l, partition)?)?;
            if !is_closed_manifold(&l.complex) {
                bail!("nerve checks need a closed manifold; use --sub for a pair");
            }
            let np = nerve(&s);
            let rep = nerve_checks(&np, &s);
            let mut out = String::new();
            writeln!(out, "components: {}", np.strata.len())?;
            writeln!(
                out,
                "prenerve f-vector: {}",
                join_nums(&np.prenerve.f_vector())
            )?;
            writeln!(out, "nerve f-vector: {}", join_nums(&np.nerve().f_vector()))?;
            writeln!(
                out,
                "nerve betti: {}",
                join_nums(&betti_numbers(np.nerve()))
            )?;
            writeln!(out, "vertices: {}", s.vertex_count())?;
            for line in rep.lines() {
                writeln!(out, "{line}")?;
            }
            report_with_file(g, &out, || write_complex(np.nerve()))?;
            Ok(if rep.all_pass() { 0 } else { INVARIANT })
        }
        Command::Homology { input, classes } => {
            let l = load(input)?;
            let c = &l.complex;
            println!("betti: {}", join_nums(&betti_numbers(c)));
            println!("euler: {}", c.euler_characteristic());
            let mut ok = true;
            if *classes {
                let list = nonzero_classes(&top_cycle_basis(c))?;
                println!("nonzero top classes: {}", list.len());
                for (i, class) in list.iter().enumerate() {
                    let closed = hypersurface_from_class(c, class)
                        .is_ok_and(|ids| is_closed_pseudomanifold(&c.subcomplex(&ids)));
                    ok &= closed;
                    println!(
                        "class {i}: {} top faces, closed: {}",
                        class.len(),
                        mark(closed)
                    );
                }
            }
            Ok(if ok { 0 } else { INVARIANT })
        }
        Command::NormalDiscs { n } => {
            let discs = enumerate_normal_discs(*n)?;
            for (i, d) in discs.iter().enumerate() {
                let classes = d.partition.labels(&d.ambient_simplex);
                println!(
                    "disc {i}: {} | {} type ({},{}) f-vector {}",
                    classes[0].join(" "),
                    classes[1].join(" "),
                    d.disc_type.0,
                    d.disc_type.1,
                    join_nums(&d.disc.f_vector())
                );
            }
            println!("{}", census_line(&discs));
            Ok(0)
        }
        Command::Drill {
            input,
            partition,
            face,
            point,
            random,
            class,
        } => {
            let l = load(input)?;
            let s = dual_spine(&l.complex, &require_partition(&l, partition)?)?;
            drill_cmd(
                g,
                &l,
                &s,
                face.as_deref(),
                point.as_deref(),
                *random,
                *class,
            )
        }
        Command::Report {
            input,
            partition: arg,
        } => report(g, &load(input)?, arg),
    }
}

fn gen(
    g: &Global,
    name: Option<&str>,
    simplex: Option<usize>,
    sphere: Option<usize>,
    list: bool,
) -> Result<u8> {
    if list {
        for n in models::catalogue_names() {
            println!("{n}");
        }
        return Ok(0);
    }
    let c = match (name, simplex, sphere) {
        (Some(n), None, None) => models::named(n)?,
        (None, Some(n), None) => models::simplex(n),
        (None, None, Some(n)) => models::boundary_sphere(n),
        _ => bail!("give exactly one of --name, --simplex, --sphere"),
    };
    emit(
        g,
        &format!("f-vector: {}\n", join_nums(&c.f_vector())),
        &write_complex(&c),
    )?;
    Ok(0)
}

fn strata_lines(s: &SpineComplex) -> Result<(String, bool)> {
    let d = s.dim();
    let st = stratum_components(s);
    let mut out = String::new();
    writeln!(out, "dim: {d}")?;
    for (k, c) in st.counts_by_kind(d).iter().enumerate().take(d) {
        writeln!(out, "type-{k}: {c}")?;
    }
    writeln!(out, "regions: {}", st.region_count())?;
    let relations: usize = st.above.iter().map(|a| a.len()).sum();
    writeln!(out, "order relations: {relations}")?;
    let ok = if d <= 3 {
        let bad = type_disagreements(s)?;
        writeln!(out, "type-rule-vs-links: {}", mark(bad.is_empty()))?;
        bad.is_empty()
    } else {
        writeln!(out, "type-rule-vs-links: skipped (dimension {d})")?;
        true
    };
    Ok((out, ok))
}

fn drill_cmd(
    g: &Global,
    l: &Loaded,
    s: &SpineComplex,
    face: Option<&str>,
    point: Option<&str>,
    random: Option<usize>,
    class: Option<usize>,
) -> Result<u8> {
    let t = &l.complex;
    if let Some(count) = random {
        let mut ok = true;
        for p in sample_off_skeleton_points(s, count, g.seed) {
            let r = drill(s, &DrillSite::Derived(vec![p]))?;
            let label = s.derived().complex().face_label(p);
            let kept =
                r.vertex_count == Some(s.vertex_count()) && r.unclassified_vertices.is_empty();
            ok &= kept;
            let after = r
                .vertex_count
                .map_or("unknown".to_string(), |v| v.to_string());
            println!("point {label}: vertices {} -> {after}", s.vertex_count());
        }
        println!("drill-preserves-vertices: {}", mark(ok));
        return Ok(if ok { 0 } else { INVARIANT });
    }
    if let Some(i) = class {
        let sc = s.complex();
        let classes = nonzero_classes(&top_cycle_basis(&sc))?;
        let cycle = classes.get(i).ok_or_else(|| {
            anyhow!(
                "class {i} out of range; the spine has {} nonzero classes",
                classes.len()
            )
        })?;
        let ids = hypersurface_from_class(&sc, cycle)?;
        let surface = spine_ids_in_first(s, &sc, &ids)?;
        let cut = cut_along_hypersurface(s, &surface)?;
        let ok = cut.new_vertex_count <= cut.old_vertex_count
            && cut.result.unclassified_vertices.is_empty();
        let out = format!(
            "vertices: {} -> {}\ncut-no-increase: {}\n",
            cut.old_vertex_count,
            cut.new_vertex_count,
            mark(ok)
        );
        report_with_file(g, &out, || write_complex(&cut.result.complex()))?;
        return Ok(if ok { 0 } else { INVARIANT });
    }
    let site = if let Some(f) = face {
        let labels: Vec<&str> = f.split(',').map(str::trim).collect();
        let id = t.face_id_by_labels(&labels)?;
        DrillSite::Base(t.closure_of([id]))
    } else if let Some(p) = point {
        let k = s.derived().complex();
        let v = k
            .vertex_by_label(p)
            .ok_or_else(|| Error::UnknownVertex(p.to_string()))?;
        DrillSite::Derived(vec![k.vertex_face(v)])
    } else {
        bail!("give one of --face, --point, --random, --class");
    };
    let r = drill(s, &site)?;
    let mut out = String::new();
    let after = r
        .vertex_count
        .map_or("unknown".to_string(), |v| v.to_string());
    writeln!(out, "vertices: {} -> {after}", s.vertex_count())?;
    writeln!(out, "neighborhood faces: {}", r.neighborhood.len())?;
    match r.non_simple_cells() {
        Some(bad) => writeln!(out, "drilled-simple: {}", mark(bad.is_empty()))?,
        None => writeln!(out, "drilled-simple: skipped (dimension {})", s.dim())?,
    }
    report_with_file(g, &out, || write_complex(&r.complex()))?;
    Ok(0)
}

fn report(g: &Global, l: &Loaded, arg: &PartitionArg) -> Result<u8> {
    let t = &l.complex;
    let d = t.dim().unwrap_or(0);
    println!(
        "complex: {}, dim {d}, f-vector {}",
        l.name,
        join_nums(&t.f_vector())
    );
    let (p, source) = match partition(l, arg)? {
        Some(p) => (p, "given".to_string()),
        None => {
            let budget = SearchBudget {
                iterations: g.budget.unwrap_or(DEFAULT_ITERATIONS),
                seed: g.seed,
                jobs: g.jobs,
                ..SearchBudget::default()
            };
            let r = search_min_vertices(t, &budget)?;
            (
                r.best_partition,
                format!("search, proven_exhaustive: {}", r.proven_exhaustive),
            )
        }
    };
    println!("partition: {} ({source})", show_partition(t, &p));
    let s = dual_spine(t, &p)?;
    let rep = verify_spine(
        &s,
        VerifyOptions {
            seed: g.seed,
            ..VerifyOptions::default()
        },
    );
    println!(
        "certificate: {}, vertices: {}",
        rep.certificate, rep.vertex_count
    );
    let (strata, types_ok) = strata_lines(&s)?;
    print!("{strata}");
    let mut code = if types_ok { 0 } else { INVARIANT };
    if rep.certificate == Certificate::Unknown || !is_closed_manifold(t) {
        println!("nerve: skipped (needs a certified spine of a closed manifold)");
        return Ok(code.max(CHECK_FAILED));
    }
    let np = nerve(&s);
    let nr = nerve_checks(&np, &s);
    let dim = np
        .nerve()
        .dim()
        .map_or("empty".to_string(), |x| x.to_string());
    println!(
        "nerve: dim {dim}, f-vector {}",
        join_nums(&np.nerve().f_vector())
    );
    for line in nr.lines() {
        println!("{line}");
    }
    if !nr.all_pass() {
        code = INVARIANT;
    }
    Ok(code)
}
