//! `engel`: build groups and Engel graphs, run SCC, witness and coset-graph
//! suites, oracle verdicts, and the verification suites.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use engel_cli::cache::Cache;
use engel_cli::suites::{engel_digraph, run_suite, Suite};
use engel_graph::classify::{cross_validate, predict};
use engel_graph::delta::{run_instance, shipped_instances, SubgroupSel};
use engel_graph::engel::Word;
use engel_graph::graph::{export_dot, export_json, import_json, scc, weak_components_and_diameter};
use engel_graph::grp::{build_group, hypercenter, spectrum_prime_graph, structure, GroupSpec};
use engel_graph::witness::{
    field_aut_commutator_check, lemma3_check, nr1_witness, paley_graph, pgl2_witness,
    psl2_coset_coverage, psl_companion_witness, sp4_even_witness, unitary_witness, FieldAutCase,
};
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "engel",
    about = "Engel graphs of finite groups: construction, connectivity, witnesses"
)]
struct Cli {
    /// Worker threads for parallel regions (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cache directory for neighbor bitsets (or ENGEL_CACHE_DIR)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Group facts: order, classes, element-order spectrum, prime graph,
    /// hypercenter
    Group {
        descriptor: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an Engel graph (word: engel:N, engel:*, commuting), optionally
    /// run SCC, and export JSON / DOT
    Graph {
        descriptor: String,
        word: String,
        #[arg(long)]
        scc: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Weak connectivity and diameter of the symmetrized graph
        #[arg(long)]
        diameter: bool,
    },
    /// Strongly connected components of an imported graph document
    Scc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Witness constructions (paley, nr1, psl-companion, unitary, sp4, pgl2,
    /// coset-coverage, lemma3, fieldaut-psl2-even-square, fieldaut-psl2-q02,
    /// fieldaut-sz)
    Witness {
        lemma: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        q0: Option<u64>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coset-graph instances: hypotheses, vertex formula, components, bound
    Delta {
        #[arg(long)]
        group: Option<String>,
        /// borel | sylow-normalizer:p | torus:order
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        torus: Option<u64>,
        /// Run the shipped instance library
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oracle verdict for a descriptor and word, optionally cross-validated
    Classify {
        descriptor: String,
        word: String,
        #[arg(long)]
        cross_validate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verification suites: paper | properties | witness | delta
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Derived CSV listing of the checks
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn write_or_print(out: Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(&p, content).with_context(|| format!("writing {p:?}")),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{content}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(Into::into),
            }
        }
    }
}

fn parse_word(s: &str) -> Result<Word> {
    Word::parse(s).ok_or_else(|| anyhow!("bad word `{s}` (engel:N, engel:*, commuting)"))
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    } else if let Ok(v) = std::env::var("ENGEL_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cache = Cache::from_env(cli.cache_dir.clone());
    match run(cli, cache.as_ref()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli, cache: Option<&Cache>) -> Result<i32> {
    match cli.cmd {
        Cmd::Group { descriptor, out } => {
            let spec = GroupSpec::parse(&descriptor)?;
            let g = build_group(&spec)?;
            let cd = structure(&g);
            let mut spectrum: Vec<u32> = cd.element_order.clone();
            spectrum.sort_unstable();
            spectrum.dedup();
            let pg = spectrum_prime_graph(&g, &cd);
            let z = hypercenter(&g, &cd);
            let mut class_sizes = cd.sizes.clone();
            class_sizes.sort_unstable();
            let doc = json!({
                "descriptor": descriptor,
                "order": g.order(),
                "classes": cd.n_classes(),
                "class_sizes": class_sizes,
                "spectrum": spectrum,
                "prime_graph": {
                    "primes": pg.primes,
                    "edges": pg.edges,
                    "components": pg.components,
                },
                "hypercenter_order": z.len(),
            });
            write_or_print(out, &serde_json::to_string_pretty(&doc)?)?;
            Ok(0)
        }
        Cmd::Graph {
            descriptor,
            word,
            scc: do_scc,
            out,
            dot,
            diameter,
        } => {
            let spec = GroupSpec::parse(&descriptor)?;
            let w = parse_word(&word)?;
            let g = build_group(&spec)?;
            let cd = structure(&g);
            let d = engel_digraph(&g, &cd, w, cache)?;
            let r = if do_scc {
                Some(scc(Some(&g), Some(&cd), &d))
            } else {
                None
            };
            if diameter {
                let (comps, diam) = weak_components_and_diameter(Some(&g), Some(&cd), &d)?;
                eprintln!("weak components: {comps}, diameter: {diam}");
            }
            if let Some(p) = dot {
                std::fs::write(&p, export_dot(&d, Some(&g), Some(&cd))?)?;
            }
            write_or_print(out, &export_json(&d, Some(&g), Some(&cd), r.as_ref()))?;
            Ok(0)
        }
        Cmd::Scc { input, out } => {
            let bytes = std::fs::read(&input)?;
            let d = import_json(&bytes)?;
            let r = scc(None, None, &d);
            let doc = json!({
                "group": d.group_desc,
                "word": d.word_desc,
                "scc": { "count": r.count, "sizes": r.sizes, "empty": r.empty },
            });
            write_or_print(out, &serde_json::to_string_pretty(&doc)?)?;
            Ok(0)
        }
        Cmd::Witness {
            lemma,
            q,
            m,
            q0,
            e,
            out,
        } => {
            let need_q = || q.ok_or_else(|| anyhow!("--q required"));
            let report = match lemma.as_str() {
                "paley" => paley_graph(need_q()?)?.report,
                "nr1" => nr1_witness(need_q()?)?,
                "psl-companion" => {
                    psl_companion_witness(m.ok_or_else(|| anyhow!("--m required"))?, need_q()?)?
                }
                "unitary" => {
                    unitary_witness(m.ok_or_else(|| anyhow!("--m required"))?, need_q()?)?
                }
                "sp4" => sp4_even_witness(need_q()?)?,
                "pgl2" => pgl2_witness(need_q()?)?,
                "coset-coverage" => psl2_coset_coverage(need_q()?)?,
                "lemma3" => lemma3_check(need_q()?)?,
                "fieldaut-psl2-even-square" => field_aut_commutator_check(
                    FieldAutCase::Psl2EvenSquare {
                        q0: q0.ok_or_else(|| anyhow!("--q0 required"))?,
                    },
                )?,
                "fieldaut-psl2-q02" => field_aut_commutator_check(FieldAutCase::Psl2Q02 {
                    e: e.ok_or_else(|| anyhow!("--e required"))?,
                })?,
                "fieldaut-sz" => {
                    field_aut_commutator_check(FieldAutCase::Sz { q: need_q()? })?
                }
                other => bail!("unknown lemma `{other}`"),
            };
            let found = report.found;
            write_or_print(out, &serde_json::to_string_pretty(&report)?)?;
            Ok(if found { 0 } else { 1 })
        }
        Cmd::Delta {
            group,
            h,
            torus,
            all,
            out,
        } => {
            let mut docs = Vec::new();
            let mut ok = true;
            let runs: Vec<(String, SubgroupSel, u64)> = if all {
                shipped_instances()
                    .into_iter()
                    .map(|(d, s, t)| (d.to_string(), s, t))
                    .collect()
            } else {
                let gdesc = group.ok_or_else(|| anyhow!("--group required (or --all)"))?;
                let hsel = SubgroupSel::parse(&h.ok_or_else(|| anyhow!("--h required"))?)?;
                let t = torus.ok_or_else(|| anyhow!("--torus required"))?;
                vec![(gdesc, hsel, t)]
            };
            for (gdesc, hsel, t) in runs {
                let spec = GroupSpec::parse(&gdesc)?;
                let g = build_group(&spec)?;
                let cd = structure(&g);
                let run = run_instance(&g, &cd, hsel, t)?;
                ok &= run.instance.all_hold()
                    && run.report.components_complete_in_cosets
                    && run.report.c_eq_hc_over_h
                    && run.report.le_bound
                    && run.report.gap_ok
                    && run.bound.3;
                docs.push(json!({
                    "group": gdesc,
                    "torus": t,
                    "hypotheses": run.instance.hyp,
                    "report": run.report,
                    "cauchy_schwarz": {
                        "v_squared": run.bound.0,
                        "arcs": run.bound.1,
                        "components": run.bound.2,
                        "holds": run.bound.3,
                    },
                }));
            }
            write_or_print(out, &serde_json::to_string_pretty(&json!(docs))?)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Classify {
            descriptor,
            word,
            cross_validate: do_cv,
            out,
        } => {
            let spec = GroupSpec::parse(&descriptor)?;
            let w = parse_word(&word)?;
            if do_cv {
                let cv = cross_validate(&spec, w)?;
                let failed = cv.agree == Some(false);
                write_or_print(out, &serde_json::to_string_pretty(&cv)?)?;
                Ok(if failed { 1 } else { 0 })
            } else {
                let v = predict(&spec, w)?;
                write_or_print(out, &serde_json::to_string_pretty(&v)?)?;
                Ok(0)
            }
        }
        Cmd::Verify {
            suite,
            filter,
            out,
            csv,
        } => {
            let s = Suite::parse(&suite)
                .ok_or_else(|| anyhow!("unknown suite `{suite}` (paper|properties|witness|delta)"))?;
            let report = run_suite(s, &filter, cache)?;
            for c in &report.checks {
                println!(
                    "[{}] {} ({} ms): expected {}, observed {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.runtime_ms,
                    c.expected,
                    c.observed
                );
            }
            println!(
                "suite {}: {} ({} checks)",
                report.suite,
                if report.pass { "PASS" } else { "FAIL" },
                report.checks.len()
            );
            if let Some(p) = out {
                std::fs::write(&p, serde_json::to_string_pretty(&report)?)?;
            }
            if let Some(p) = csv {
                let mut w = String::from("name,expected,observed,pass,runtime_ms\n");
                for c in &report.checks {
                    w.push_str(&format!(
                        "{},{},{},{},{}\n",
                        csv_field(&c.name),
                        csv_field(&c.expected),
                        csv_field(&c.observed),
                        c.pass,
                        c.runtime_ms
                    ));
                }
                std::fs::write(&p, w)?;
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
