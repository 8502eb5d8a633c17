//! `fcartin`: command-line access to FC-type Artin group computations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fc_artin::complexes::{cp, deligne, growth};
use fc_artin::fc::FcGroup;
use fc_artin::garside::GarsideGroup;
use fc_artin::graph::GraphJson;
use fc_artin::parabolic::{MinimalSearch, Parabolic, ParabolicCalculus};
use fc_artin::{catalog, DefiningGraph, GenSet, Word};

#[derive(Parser)]
#[command(name = "fcartin", version, about = "Parabolic subgroups and complexes of FC-type Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args)]
struct GraphArg {
    /// Defining graph file (edge list, or JSON with `vertices` and `edges`).
    #[arg(short, long, conflicts_with = "catalog", required_unless_present = "catalog")]
    graph: Option<PathBuf>,
    /// Built-in graph by name.
    #[arg(long)]
    catalog: Option<String>,
}

impl GraphArg {
    fn load(&self) -> Result<DefiningGraph> {
        if let Some(name) = &self.catalog {
            return catalog::get(name)
                .ok_or_else(|| anyhow!("unknown catalog graph `{name}` (known: {})", catalog::names().join(", ")));
        }
        let path = self.graph.as_ref().expect("clap requires one of the two");
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let graph = if path.extension().is_some_and(|e| e == "json") {
            let json: GraphJson = serde_json::from_str(&text).context("malformed graph JSON")?;
            DefiningGraph::from_json(&json)?
        } else {
            DefiningGraph::parse(&text)?
        };
        Ok(graph)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Spherical subsets, FC verdict and irreducibility.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Normal form of a word.
    Nf {
        #[command(flatten)]
        graph: GraphArg,
        word: String,
    },
    /// Whether two words represent the same element.
    Equal {
        #[command(flatten)]
        graph: GraphArg,
        first: String,
        second: String,
    },
    /// Garside element of a spherical subset, e.g. `{s,t}`.
    Delta {
        #[command(flatten)]
        graph: GraphArg,
        subset: String,
    },
    /// Central element and key of a parabolic `g;{x,y}`.
    Z {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        p: String,
    },
    /// Whether a word lies in a parabolic.
    Member {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        p: String,
        word: String,
    },
    /// Adjacency of two vertices of the complex of parabolic subgroups.
    Adjacent {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        p: String,
        #[arg(short)]
        q: String,
        #[arg(long, default_value_t = 3, value_parser = bound(0, 6))]
        conjugator_bound: u64,
    },
    /// Smallest parabolic containing a word found by bounded search.
    Minimal {
        #[command(flatten)]
        graph: GraphArg,
        word: String,
        /// A parabolic known to contain the word.
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, default_value_t = 3, value_parser = bound(0, 5))]
        conjugator_bound: u64,
    },
    /// Certified-bounded intersection of two parabolics.
    Intersect {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short)]
        p: String,
        #[arg(short)]
        q: String,
        #[arg(long, default_value_t = 4, value_parser = bound(0, 6))]
        budget: u64,
    },
    /// Standard vertices of the complex and the edges among them.
    CpDomain {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Ball in the complex of parabolic subgroups around a vertex.
    CpBall {
        #[command(flatten)]
        graph: GraphArg,
        /// Center vertex; defaults to the first standard vertex.
        #[arg(short)]
        p: Option<String>,
        #[arg(long, default_value_t = 4, value_parser = bound(0, 8))]
        radius: u64,
        #[arg(long, default_value_t = 3, value_parser = bound(0, 5))]
        conjugator_bound: u64,
    },
    /// Ball around `A_∅` in the Deligne complex.
    DeligneBall {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 4, value_parser = bound(0, 8))]
        radius: u64,
        /// Length of the words used for downward steps.
        #[arg(long, default_value_t = 1, value_parser = bound(0, 4))]
        down_bound: u64,
    },
    /// Distances from ε to powers of a target in the normalizer Cayley graph.
    Growth {
        #[command(flatten)]
        graph: GraphArg,
        /// Defaults to the product of all generators.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 5, value_parser = bound(1, 50))]
        horizon: u64,
        /// Maximal length of normalizer generators.
        #[arg(long, default_value_t = 2, value_parser = bound(1, 4))]
        length_bound: u64,
        #[arg(long, default_value_t = 2_000_000, value_parser = bound(1, 100_000_000))]
        node_budget: u64,
    },
}

fn bound(lo: u64, hi: u64) -> clap::builder::RangedU64ValueParser {
    clap::value_parser!(u64).range(lo..=hi)
}

/// One result in every format it supports.
#[derive(Default)]
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    csv: Option<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Self { text, json, ..Self::default() }
    }

    fn render(self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.text),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Dot => self.dot.ok_or_else(|| anyhow!("this command has no DOT output")),
            Format::Csv => self.csv.ok_or_else(|| anyhow!("this command has no CSV output")),
        }
    }
}

fn calculus(graph: &GraphArg) -> Result<ParabolicCalculus> {
    Ok(ParabolicCalculus::new(&graph.load()?)?)
}

fn parabolic(pc: &ParabolicCalculus, text: &str) -> Result<Parabolic> {
    pc.parse(text).with_context(|| format!("parabolic `{text}`"))
}

fn word(graph: &DefiningGraph, text: &str) -> Result<Word> {
    Word::parse(graph, text).with_context(|| format!("word `{text}`"))
}

fn set_text(graph: &DefiningGraph, x: GenSet) -> String {
    graph.format_set(x)
}

fn classify(graph: &DefiningGraph) -> Result<Report> {
    let spherical = graph.spherical_subsets();
    let fc = graph.is_fc_type();
    let irreducible = graph.is_irreducible(graph.all());
    let mut text = format!(
        "generators: {}\nFC type: {fc}\nirreducible: {irreducible}\nspherical subsets ({}):\n",
        graph.names().join(" "),
        spherical.len()
    );
    let mut rows = Vec::new();
    for &x in &spherical {
        let class = graph.classify(x)?;
        let kind = graph.recognize_finite_type(x).map(|t| format!("{t:?}"));
        text.push_str(&format!(
            "  {}  order {}{}\n",
            set_text(graph, x),
            class.coxeter_order.map_or("?".into(), |o| o.to_string()),
            if class.irreducible { "" } else { "  reducible" }
        ));
        rows.push(json!({
            "subset": graph.set_names(x),
            "irreducible": class.irreducible,
            "coxeter_order": class.coxeter_order.map(|o| o.to_string()),
            "type": kind,
        }));
    }
    let json = json!({
        "graph": graph.to_json(),
        "fc_type": fc,
        "irreducible": irreducible,
        "spherical_subsets": rows,
    });
    Ok(Report::new(text, json))
}

fn run(cli: Cli) -> Result<String> {
    let report = match &cli.command {
        Command::Classify { graph } => classify(&graph.load()?)?,
        Command::Nf { graph, word: w } => {
            let g = graph.load()?;
            let fc = FcGroup::new(&g)?;
            let f = fc.normal_form(&word(&g, w)?)?;
            let form = fc.serialize(&f);
            let rendered = f.word().freely_reduced().render(&g);
            Report::new(format!("{form}\n{rendered}\n"), json!({"normal_form": form, "word": rendered}))
        }
        Command::Equal { graph, first, second } => {
            let g = graph.load()?;
            let fc = FcGroup::new(&g)?;
            let equal = fc.equal_words(&word(&g, first)?, &word(&g, second)?)?;
            Report::new(format!("{}\n", if equal { "equal" } else { "different" }), json!({ "equal": equal }))
        }
        Command::Delta { graph, subset } => {
            let g = graph.load()?;
            let x = g.parse_set(subset)?;
            let gg = GarsideGroup::new(&g, x)?;
            let delta = gg.delta();
            let rendered = gg.to_word(&delta).render(&g);
            Report::new(
                format!("{rendered}\n"),
                json!({
                    "subset": g.set_names(x),
                    "delta": rendered,
                    "length": gg.to_word(&delta).len(),
                    "center_exponent": gg.center_exponent(),
                }),
            )
        }
        Command::Z { graph, p } => {
            let pc = calculus(graph)?;
            let par = parabolic(&pc, p)?;
            let z = par.z().word().freely_reduced().render(pc.graph());
            let mut json = pc.to_json(&par);
            json["z"] = json!(z);
            Report::new(format!("{}\nz = {z}\nkey = {}\n", pc.display(&par), par.key()), json)
        }
        Command::Member { graph, p, word: w } => {
            let pc = calculus(graph)?;
            let par = parabolic(&pc, p)?;
            let member = pc.member_word(&word(pc.graph(), w)?, &par)?;
            Report::new(
                format!("{}\n", if member { "member" } else { "not a member" }),
                json!({ "member": member, "parabolic": pc.to_json(&par) }),
            )
        }
        Command::Adjacent { graph, p, q, conjugator_bound } => {
            let pc = calculus(graph)?;
            let (a, b) = (parabolic(&pc, p)?, parabolic(&pc, q)?);
            let adj = pc.is_adjacent(&a, &b, *conjugator_bound as usize)?;
            let g = pc.graph();
            let verdict = match (&adj.witness, adj.adjacent(), adj.equal) {
                (_, _, true) => "equal".to_string(),
                (Some(w), true, _) => format!("adjacent ({})", w.kind),
                (None, true, _) => "adjacent".to_string(),
                (_, false, _) => "not adjacent".to_string(),
            };
            let mut text = format!("{verdict}\n");
            if let Some(w) = &adj.witness {
                text.push_str(&format!(
                    "witness h = {}: A{} and A{}\n",
                    w.conjugator.render(g),
                    set_text(g, w.x),
                    set_text(g, w.y)
                ));
            }
            let witness = adj.witness.as_ref().map(|w| {
                json!({
                    "kind": w.kind,
                    "conjugator": w.conjugator.render(g),
                    "x": g.set_names(w.x),
                    "y": g.set_names(w.y),
                })
            });
            Report::new(
                text,
                json!({
                    "adjacent": adj.adjacent(),
                    "equal": adj.equal,
                    "centers_commute": adj.centers_commute,
                    "witness": witness,
                    "p": pc.to_json(&a),
                    "q": pc.to_json(&b),
                }),
            )
        }
        Command::Minimal { graph, word: w, witness, conjugator_bound } => {
            let pc = calculus(graph)?;
            let alpha = pc.form(&word(pc.graph(), w)?)?;
            let witness = witness.as_deref().map(|t| parabolic(&pc, t)).transpose()?;
            let search = MinimalSearch { conjugator_bound: *conjugator_bound as usize, seeds: Vec::new() };
            let m = pc.minimal_parabolic(&alpha, witness.as_ref(), &search)?;
            let mut json = pc.to_json(&m.parabolic);
            json["containing"] = json!(m.containing);
            json["violations"] = json!(m.violations);
            Report::new(
                format!(
                    "{}\ncertified against {} containing parabolics, {} violations\n",
                    pc.display(&m.parabolic),
                    m.containing,
                    m.violations
                ),
                json,
            )
        }
        Command::Intersect { graph, p, q, budget } => {
            let pc = calculus(graph)?;
            let (a, b) = (parabolic(&pc, p)?, parabolic(&pc, q)?);
            let r = pc.intersect(&a, &b, *budget as usize)?;
            let c = &r.certificate;
            let mut json = pc.to_json(&r.parabolic);
            json["certificate"] = serde_json::to_value(c)?;
            json["passed"] = json!(c.passed());
            Report::new(
                format!(
                    "{}\ncontainment {} saturation {} ({} common elements, {} candidates, budget {})\n",
                    pc.display(&r.parabolic),
                    c.containment,
                    c.saturation,
                    c.sampled_common,
                    c.candidates,
                    c.budget
                ),
                json,
            )
        }
        Command::CpDomain { graph } => {
            let pc = calculus(graph)?;
            let d = cp::cp_fundamental_domain(&pc)?;
            let g = pc.graph();
            let mut text = format!(
                "{} vertices, {} edges, {} components; connected {} (criterion {})\n",
                d.vertices.len(),
                d.edges.len(),
                d.components,
                d.connected,
                d.criterion
            );
            for &(a, b, kind) in &d.edges {
                let tag = kind.map_or("z-commute".to_string(), |k| k.to_string());
                text.push_str(&format!(
                    "  A{} -- A{} ({tag})\n",
                    set_text(g, d.vertices[a]),
                    set_text(g, d.vertices[b])
                ));
            }
            Report { dot: Some(d.to_dot(g)), ..Report::new(text, d.to_json(g)) }
        }
        Command::CpBall { graph, p, radius, conjugator_bound } => {
            let pc = calculus(graph)?;
            let base = match p {
                Some(t) => parabolic(&pc, t)?,
                None => {
                    let x = *pc.standard_vertices().first().ok_or_else(|| anyhow!("the complex has no vertices"))?;
                    pc.standard(x)?
                }
            };
            let ball = cp::cp_ball(&pc, &base, *radius as usize, *conjugator_bound as usize)?;
            let mut text = format!(
                "{} vertices, {} edges, base degree {}\n",
                ball.len(),
                ball.edges.len(),
                ball.base_degree()
            );
            for (v, d) in ball.vertices.iter().zip(&ball.distance) {
                text.push_str(&format!("  {d} {}\n", pc.display(v)));
            }
            Report { dot: Some(ball.to_dot(&pc)), ..Report::new(text, ball.to_json(&pc)) }
        }
        Command::DeligneBall { graph, radius, down_bound } => {
            let g = graph.load()?;
            let fc = FcGroup::new(&g)?;
            let ball = deligne::deligne_ball(&fc, *radius as usize, *down_bound as usize)?;
            let mut text = format!(
                "{} vertices, {} edges, {} cubes\n",
                ball.len(),
                ball.edges.len(),
                ball.cubes.len()
            );
            for v in 0..ball.len() {
                text.push_str(&format!("  {} {}\n", ball.distance[v], ball.vertex_label(&fc, v)));
            }
            Report { dot: Some(ball.to_dot(&fc)), ..Report::new(text, ball.to_json(&fc)) }
        }
        Command::Growth { graph, target, horizon, length_bound, node_budget } => {
            let pc = calculus(graph)?;
            let target = match target {
                Some(t) => word(pc.graph(), t)?,
                None => growth::default_target(pc.graph()),
            };
            let gens = growth::normalizer_generators(&pc, *length_bound as usize)?;
            let rows = growth::cayley_growth(pc.fc(), &target, &gens, *horizon as usize, *node_budget as usize)?;
            let csv = growth::to_csv(&rows);
            let json = json!({
                "target": target.render(pc.graph()),
                "generators": gens.len(),
                "rows": rows.iter().map(|r| json!({
                    "n": r.n,
                    "distance": r.distance,
                    "nodes_expanded": r.nodes_expanded,
                    "method": match r.method { growth::Method::Bounds => "bounds", growth::Method::Search => "search" },
                })).collect::<Vec<_>>(),
            });
            Report { csv: Some(csv.clone()), ..Report::new(csv, json) }
        }
    };
    report.render(cli.format)
}

fn write(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, out) = (cli.format, cli.out.clone());
    match run(cli).and_then(|text| write(out.as_deref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            if format == Format::Json {
                eprintln!("{}", json!({ "error": chain.join(": ") }));
            } else {
                eprintln!("error: {}", chain.join(": "));
            }
            ExitCode::FAILURE
        }
    }
}

