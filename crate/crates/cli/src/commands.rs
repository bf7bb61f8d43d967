use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use serde_json::json;

use contractlab::contraction::{violation_witness, ContractionSet, Mode, Tolerance};
use contractlab::graph::{
    generate_planted_biclique, generate_random_bipartite, parse_graph, parse_rational, render_bipartite, render_graph,
    BipartiteGraph, ParsedGraph, Rational,
};
use contractlab::lab::{reverify, run_suite, GoldenFile, SuiteConfig, Verdict};
use contractlab::reductions::{build_gadget, build_gadget_unchecked, build_tensor_square};
use contractlab::solvers::{
    max_balanced_biclique_exact, max_contraction_by_components, max_edge_biclique_exact, Biclique, SolveResult,
    SolverConfig, Witness,
};

use crate::{Format, GenCommand, Kind, LabArgs, Problem, ReduceArgs, SolveArgs, ToleranceArgs, VerifyArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<ParsedGraph> {
    parse_graph(&read(path)?).with_context(|| format!("cannot parse {}", path.display()))
}

fn rational(name: &str, text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| anyhow!("--{name}: malformed rational {text:?} (expected an integer or p/q)"))
}

fn tolerance(args: &ToleranceArgs) -> Result<Tolerance> {
    Ok(Tolerance::new(rational("alpha", &args.alpha)?, rational("beta", &args.beta)?)?)
}

fn parse_contraction(text: &str) -> Result<ContractionSet> {
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let id = line.parse::<usize>().map_err(|_| anyhow!("line {}: malformed edge id {line:?}", i + 1))?;
        ids.push(id);
    }
    Ok(ContractionSet::new(ids))
}

/// Bipartite view of the input with, for general inputs, the original id of
/// every view vertex (left side first).
fn bipartite_input(parsed: ParsedGraph) -> Result<(BipartiteGraph, Option<Vec<usize>>)> {
    match parsed {
        ParsedGraph::Bipartite(b) => Ok((b, None)),
        ParsedGraph::General(g) => {
            let (b, origin) = BipartiteGraph::from_graph(&g).ok_or_else(|| anyhow!("input graph is not bipartite"))?;
            Ok((b, Some(origin)))
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let parsed = read_graph(&args.graph)?;
    let c = parse_contraction(&read(&args.contraction)?)?;
    let t = tolerance(&args.tolerance)?;
    let mode = if args.weak { Mode::Weak } else { Mode::Strong };
    let violation = violation_witness(parsed.graph(), &c, &t, mode)?;
    match args.format {
        Format::Json => println!(
            "{}",
            json!({ "valid": violation.is_none(), "mode": mode, "contraction": c, "violation": violation })
        ),
        Format::Text | Format::Csv => match &violation {
            None => println!("valid"),
            Some(v) => println!("invalid: {v}"),
        },
    }
    Ok(if violation.is_none() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render_solve(problem: Problem, res: &SolveResult, format: Format) -> String {
    let name = match problem {
        Problem::Cont => "cont",
        Problem::Weakcont => "weakcont",
        Problem::Meb => "meb",
        Problem::Mbb => "mbb",
    };
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(res).expect("results serialize");
            v["problem"] = json!(name);
            format!("{v}\n")
        }
        Format::Text | Format::Csv => {
            let witness = match &res.witness {
                Witness::Contraction(c) => c.to_string(),
                Witness::Biclique(b) => format!("left {:?} right {:?}", b.left, b.right),
            };
            format!("problem {name}\nobjective {}\nwitness {witness}\nexplored {}\n", res.objective, res.explored)
        }
    }
}

pub fn solve(args: SolveArgs) -> Result<ExitCode> {
    let parsed = read_graph(&args.graph)?;
    let config = SolverConfig { edge_cap: args.cap_edges, side_cap: args.cap_side, threads: args.threads };
    let res = match args.problem {
        Problem::Cont | Problem::Weakcont => {
            let t = tolerance(&args.tolerance)?;
            let mode = if args.problem == Problem::Weakcont { Mode::Weak } else { Mode::Strong };
            max_contraction_by_components(parsed.graph(), &t, mode, &config)?
        }
        Problem::Meb | Problem::Mbb => {
            let (b, origin) = bipartite_input(parsed)?;
            let mut res = if args.problem == Problem::Meb {
                max_edge_biclique_exact(&b, &config)?
            } else {
                max_balanced_biclique_exact(&b, &config)?
            };
            if let (Some(origin), Witness::Biclique(w)) = (origin, &res.witness) {
                let nl = b.left_count();
                let mapped = Biclique::new(w.left.iter().map(|&l| origin[l]), w.right.iter().map(|&r| origin[nl + r]));
                res.witness = Witness::Biclique(mapped);
            }
            res
        }
    };
    print!("{}", render_solve(args.problem, &res, args.format));
    Ok(ExitCode::SUCCESS)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".provenance.json");
    PathBuf::from(name)
}

pub fn reduce(args: ReduceArgs) -> Result<ExitCode> {
    let (b, origin) = bipartite_input(read_graph(&args.graph)?)?;
    let (text, provenance) = match args.kind {
        Kind::Gadget => {
            let weight = rational("weight", &args.weight)?;
            let bg = if args.allow_disconnected {
                build_gadget_unchecked(&b, &weight)?
            } else {
                build_gadget(&b, &weight).map_err(|e| anyhow!("{e} (use --allow-disconnected to build it anyway)"))?
            };
            let nl = b.left_count();
            let vertices: Vec<_> = (0..bg.graph().vertex_count())
                .map(|v| {
                    let o = bg.origin(v);
                    let source = origin.as_ref().map(|m| match o.side {
                        contractlab::reductions::Side::Left => m[o.index],
                        contractlab::reductions::Side::Right => m[nl + o.index],
                    });
                    json!({ "vertex": v, "side": o.side, "index": o.index, "copy": o.copy, "source_vertex": source })
                })
                .collect();
            let edges: Vec<_> =
                bg.edge_kinds().iter().enumerate().map(|(id, k)| json!({ "edge": id, "kind": k })).collect();
            let prov = json!({
                "kind": "gadget",
                "weight": bg.weight().to_string(),
                "source_left": b.left_count(),
                "source_right": b.right_count(),
                "vertices": vertices,
                "edges": edges,
            });
            (render_graph(bg.graph()), prov)
        }
        Kind::Tensor => {
            let t = build_tensor_square(&b);
            let left: Vec<_> = (0..t.part_size()).map(|i| t.left_pair(i)).collect();
            let right: Vec<_> = (0..t.part_size()).map(|j| t.right_pair(j)).collect();
            let prov = json!({
                "kind": "tensor",
                "source_left": b.left_count(),
                "source_right": b.right_count(),
                "source_vertices": origin,
                "left_pairs": left,
                "right_pairs": right,
            });
            (render_bipartite(t.graph()), prov)
        }
    };
    write_output(Some(&args.out), &text)?;
    let mut prov = serde_json::to_string_pretty(&provenance)?;
    prov.push('\n');
    write_output(Some(&sidecar_path(&args.out)), &prov)?;
    Ok(ExitCode::SUCCESS)
}

pub fn lab(args: LabArgs) -> Result<ExitCode> {
    let mut config = match &args.config {
        Some(path) => serde_json::from_str::<SuiteConfig>(&read(path)?)
            .with_context(|| format!("cannot parse suite config {}", path.display()))?,
        None => SuiteConfig::standard(),
    };
    if let Some(t) = args.threads {
        config.threads = Some(t);
    }
    if let Some(cap) = args.cap_edges {
        config.edge_cap = cap;
    }
    if let Some(cap) = args.cap_path_len {
        config.path_len = Some(cap);
    }
    let output = run_suite(&config)?;

    let mut failed = false;
    for r in &output.reports {
        if !reverify(r)? {
            eprintln!("witness failed re-verification: {} on {}", r.claim, r.instance.key());
            failed = true;
        }
    }
    if let Some(path) = &args.out {
        let mut text = serde_json::to_string_pretty(&output)?;
        text.push('\n');
        write_output(Some(path), &text)?;
    }
    match args.format {
        Format::Csv => print!("{}", output.summary_csv()),
        Format::Json => println!("{}", serde_json::to_string(&output)?),
        Format::Text => {
            let mut text = output.summary_csv();
            for r in output.reports.iter().filter(|r| r.verdict == Verdict::Counterexample) {
                writeln!(text, "counterexample {} {}", r.claim, r.instance.key()).unwrap();
            }
            for e in &output.errors {
                writeln!(text, "error {} {}: {}", e.claim, e.instance.key(), e.message).unwrap();
            }
            print!("{text}");
        }
    }

    if let Some(path) = &args.golden {
        match GoldenFile::load(path).with_context(|| format!("cannot load golden file {}", path.display()))? {
            None => {
                let golden = GoldenFile::from_reports(&output.reports);
                golden.save(path).with_context(|| format!("cannot write {}", path.display()))?;
                eprintln!(
                    "golden file {} was missing: pinned {} verdicts (not a regression)",
                    path.display(),
                    golden.len()
                );
            }
            Some(golden) => {
                let diff = golden.compare(&output.reports);
                for r in &diff.regressions {
                    eprintln!("regression: {} on {}: pinned {}, found {}", r.claim, r.instance, r.pinned, r.found);
                }
                if !diff.unpinned.is_empty() {
                    eprintln!("{} verdicts have no pinned value", diff.unpinned.len());
                }
                if !diff.is_clean() {
                    let claims: Vec<String> = diff.regressed_claims().iter().map(|c| c.to_string()).collect();
                    eprintln!("regressed claims: {}", claims.join(", "));
                    failed = true;
                }
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

pub fn gen(cmd: GenCommand) -> Result<ExitCode> {
    match cmd {
        GenCommand::Random { left, right, p, seed, out } => {
            let b = generate_random_bipartite(left, right, &rational("p", &p)?, seed)?;
            write_output(out.as_deref(), &render_bipartite(&b))?;
        }
        GenCommand::Planted { left, right, plant_left, plant_right, noise, seed, out } => {
            let (b, plant) =
                generate_planted_biclique(left, right, plant_left, plant_right, &rational("noise", &noise)?, seed)?;
            let text = format!("# planted left {:?} right {:?}\n{}", plant.left, plant.right, render_bipartite(&b));
            write_output(out.as_deref(), &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
