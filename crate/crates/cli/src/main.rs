//! `resq`: decide, complete, represent and verify finite residuated
//! semigroups; probe point-algebra reducts; prove and refute Lambek sequents.
//!
//! Exit codes: 0 pass, 1 violation, 2 input error, 3 resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use resq_core::completion::{build_quantale, embed, quantale_residuals};
use resq_core::error::ParseErrorKind;
use resq_core::lambek::{self, CounterOptions, CounterOutcome, Prover};
use resq_core::pointalg::{build_point_algebra, element_name, frp_probe, parse_generators, reduct};
use resq_core::relrep::{dump_json, dump_text, parse_dump, represent, GeneratorMode, Interpretation, RepresentOptions, UnitalizeMode};
use resq_core::search::{search_representation, SearchOptions, SearchOutcome, DEFAULT_NODE_BUDGET};
use resq_core::verifier::{check_representation, check_sp_representation, check_union_transitive};
use resq_core::{parse_algebra, validate, Error, FiniteResiduatedSemigroup};
use serde_json::{json, Value};

mod render;

use render::{Format, Out};

#[derive(Parser)]
#[command(name = "resq", version, about = "Residuated semigroups and their relational representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the algebra in FILE is a residuated semigroup.
    Decide { file: PathBuf },
    /// Print the Dedekind-MacNeille completion of FILE as a quantale.
    Complete { file: PathBuf },
    /// Build the relational representation of FILE and verify it.
    Represent {
        file: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
        /// Also write the bare representation dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Verify a representation dump against the algebra in FILE.
    Verify { file: PathBuf, dump: PathBuf },
    /// Search small bases for a representation of FILE.
    Search {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Probe a (;,+) reduct of the point algebra for finite representations.
    Pointalg {
        /// Comma-separated elements, e.g. "<,>" or "<,=".
        #[arg(long, default_value = "<,>")]
        generators: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Report wall-clock time (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Lambek calculus tools.
    Lambek {
        #[command(subcommand)]
        command: LambekCommand,
    },
}

#[derive(Subcommand)]
enum LambekCommand {
    /// Decide derivability; exit 0 when derivable, 1 otherwise.
    Prove {
        sequent: String,
        /// Print the derivation found.
        #[arg(long)]
        trace: bool,
        #[arg(long, env = "RESQ_NODE_BUDGET", default_value_t = lambek::prover::DEFAULT_PROOF_BUDGET)]
        node_budget: u64,
    },
    /// Search finite relational countermodels; exit 1 when one is found.
    Counter {
        sequent: String,
        #[arg(long, default_value_t = 3)]
        max_base: usize,
        /// Try only the first N relations for each atom.
        #[arg(long)]
        max_atom_relations: Option<usize>,
        #[arg(long, env = "RESQ_NODE_BUDGET", default_value_t = lambek::model::DEFAULT_COUNTER_BUDGET)]
        node_budget: u64,
    },
    /// Evaluate a sequent in the model stored in MODEL; exit 1 when false.
    Eval { sequent: String, model: PathBuf },
}

#[derive(Args, Clone, Copy)]
struct RepArgs {
    #[arg(long, value_enum, default_value_t = Generators::All)]
    generators: Generators,
    #[arg(long, value_enum, default_value_t = Unitalize::Auto)]
    unitalize: Unitalize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generators {
    All,
    JoinIrreducible,
}

#[derive(Clone, Copy, ValueEnum)]
enum Unitalize {
    On,
    Off,
    Auto,
}

impl RepArgs {
    fn options(self) -> RepresentOptions {
        RepresentOptions {
            generators: match self.generators {
                Generators::All => GeneratorMode::All,
                Generators::JoinIrreducible => GeneratorMode::JoinIrreducible,
            },
            unitalize: match self.unitalize {
                Unitalize::On => UnitalizeMode::On,
                Unitalize::Off => UnitalizeMode::Off,
                Unitalize::Auto => UnitalizeMode::Auto,
            },
        }
    }
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    max_base: usize,
    #[arg(long, env = "RESQ_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Split the search across threads. The verdict does not change.
    #[arg(long)]
    parallel: bool,
}

impl SearchArgs {
    fn options(self) -> SearchOptions {
        SearchOptions {
            max_base: self.max_base,
            node_budget: self.node_budget,
            symmetry_breaking: true,
            parallel: self.parallel,
        }
    }
}

/// A finished command: what to print and the exit status.
struct Done {
    out: Out,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(done) => {
            print!("{}", done.out.render(cli.format));
            ExitCode::from(if done.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit { .. } => 3,
                Error::QuantaleLaw { .. } | Error::Embedding { .. } => 1,
                _ => 2,
            })
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteResiduatedSemigroup, Error> {
    Ok(parse_algebra(&read(path)?)?)
}

fn run(cli: &Cli) -> Result<Done, Error> {
    match &cli.command {
        Command::Decide { file } => decide(file),
        Command::Complete { file } => complete(file),
        Command::Represent { file, rep, dump } => represent_cmd(file, *rep, dump.as_deref(), cli.format),
        Command::Verify { file, dump } => verify(file, dump),
        Command::Search { file, search } => search_cmd(file, *search),
        Command::Pointalg { generators, search, timing } => pointalg(generators, *search, *timing),
        Command::Lambek { command } => lambek_cmd(command),
    }
}

fn decide(file: &Path) -> Result<Done, Error> {
    let alg = match parse_algebra(&read(file)?) {
        Ok(alg) => alg,
        Err(e) => {
            if let ParseErrorKind::Residual(nr) = &e.kind {
                let mut out = Out::new(json!({ "valid": false, "residual": nr.to_string() }));
                out.line(format!("valid: no\nno residual: {nr}"));
                return Ok(Done { out, pass: false });
            }
            return Err(e.into());
        }
    };
    let report = validate(&alg);
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({ "axiom": f.axiom.name(), "witness": f.witness.map(|i| alg.name(i)) }))
        .collect();
    let mut out = Out::new(json!({ "elements": alg.len(), "valid": report.valid, "failures": failures }));
    out.line(format!("elements: {}", alg.len()));
    out.line(format!("valid: {}", render::yes_no(report.valid)));
    for f in &report.failures {
        let [a, b, c] = f.witness.map(|i| alg.name(i));
        out.line(format!("fail {} at ({a}, {b}, {c})", f.axiom));
    }
    Ok(Done { out, pass: report.valid })
}

fn complete(file: &Path) -> Result<Done, Error> {
    let alg = load(file)?;
    let c = build_quantale(&alg)?;
    let f = embed(&alg, &c)?;
    let q = &c.quantale;
    let n = q.len();
    let (lres, rres) = quantale_residuals(q);
    let table = |g: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| g(a, b)).collect()).collect()
    };
    let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| q.leq(a, b)).collect()).collect();
    let comp = table(&|a, b| q.comp(a, b));
    let sup = table(&|a, b| q.sup(a, b));
    let lres = table(&|a, b| lres[a * n + b]);
    let rres = table(&|a, b| rres[a * n + b]);
    let embedding: serde_json::Map<String, Value> =
        alg.names().iter().zip(&f).map(|(name, &i)| (name.clone(), json!(i))).collect();
    let mut out = Out::new(json!({
        "elements": q.labels(),
        "leq": leq,
        "comp": comp,
        "sup": sup,
        "lres": lres,
        "rres": rres,
        "bottom": q.bottom(),
        "top": q.top(),
        "unit": q.unit(),
        "embedding": embedding,
    }));
    out.line(format!("quantale: {n} elements"));
    for (i, label) in q.labels().iter().enumerate() {
        out.line(format!("{i} {label}"));
    }
    out.line(format!("bottom: {}", q.bottom()));
    out.line(format!("top: {}", q.top()));
    out.line(format!("unit: {}", q.unit().map_or("none".to_string(), |u| u.to_string())));
    out.table("leq", &leq.iter().map(|r| r.iter().map(|&b| usize::from(b)).collect()).collect::<Vec<_>>());
    out.table("comp", &comp);
    out.table("sup", &sup);
    out.table("lres", &lres);
    out.table("rres", &rres);
    let pairs: Vec<String> = alg.names().iter().zip(&f).map(|(name, i)| format!("{name}->{i}")).collect();
    out.line(format!("embedding: {}", pairs.join(" ")));
    Ok(Done { out, pass: true })
}

fn represent_cmd(file: &Path, rep: RepArgs, dump: Option<&Path>, format: Format) -> Result<Done, Error> {
    let alg = load(file)?;
    let r = represent(&alg, rep.options())?;
    let structure = r.interpretation.to_structure();
    if let Some(path) = dump {
        let body = match format {
            Format::Text => dump_text(&structure),
            Format::Json => format!("{:#}\n", dump_json(&structure)),
        };
        fs::write(path, body).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    }
    let report = check_representation(&alg, &r.interpretation)?;
    let transitive = check_union_transitive(&r.interpretation);
    let gens: Vec<&str> = r.generators.members.iter().map(|g| r.quantale.label(g)).collect();
    let mut out = Out::new(json!({
        "unitalized": r.unitalized,
        "generators": gens,
        "representation": dump_json(&structure),
        "hat": render::hat_json(&r.hat_report, &r.quantale),
        "report": render::report_json(&report, &alg, &r.interpretation),
        "union_transitive": transitive,
    }));
    out.line(format!("unitalized: {}", render::yes_no(r.unitalized)));
    out.line(format!("generators: {}", gens.join(" ")));
    out.raw(dump_text(&structure));
    render::hat_text(&mut out, &r.hat_report, &r.quantale);
    render::report_text(&mut out, &report, &alg, &r.interpretation);
    out.line(format!("union-transitive: {}", render::yes_no(transitive)));
    Ok(Done { out, pass: report.all_pass() })
}

fn verify(file: &Path, dump: &Path) -> Result<Done, Error> {
    let alg = load(file)?;
    let structure = parse_dump(&read(dump)?)?;
    let interp = Interpretation::from_structure(&alg, &structure)?;
    let report = check_representation(&alg, &interp)?;
    let transitive = check_union_transitive(&interp);
    let mut out = Out::new(json!({
        "base": interp.base_size(),
        "report": render::report_json(&report, &alg, &interp),
        "union_transitive": transitive,
    }));
    out.line(format!("base: {}", interp.base_size()));
    render::report_text(&mut out, &report, &alg, &interp);
    out.line(format!("union-transitive: {}", render::yes_no(transitive)));
    Ok(Done { out, pass: report.all_pass() })
}

fn search_cmd(file: &Path, args: SearchArgs) -> Result<Done, Error> {
    let alg = load(file)?;
    let (outcome, stats) = search_representation(&alg, args.options())?;
    Ok(render::outcome(&outcome, &stats.nodes_per_base, None))
}

fn pointalg(generators: &str, args: SearchArgs, timing: bool) -> Result<Done, Error> {
    let p = build_point_algebra();
    let red = reduct(&p, &parse_generators(generators)?)?;
    let s = &red.structure;
    let probe = frp_probe(s, args.options())?;
    if let SearchOutcome::Found(interp) = &probe.outcome {
        if !check_sp_representation(s, interp)?.all_pass() {
            return Err(Error::Invalid("probe witness failed re-verification".into()));
        }
    }
    let n = s.len();
    let comp: Vec<Vec<&str>> = red.elements.iter().map(|&a| red.elements.iter().map(|&b| element_name(p.comp(a, b))).collect()).collect();
    let mut done = render::outcome(&probe.outcome, &probe.stats.nodes_per_base, timing.then_some(probe.elapsed));
    let mut head = Out::new(json!({}));
    head.line(format!("reduct: {}", s.names().join(" ")));
    head.line("comp:".to_string());
    for (i, row) in comp.iter().enumerate() {
        head.line(format!("  {} | {}", s.names()[i], row.join(" ")));
    }
    done.out.prepend(head);
    done.out.insert("reduct", json!(s.names()));
    done.out.insert("comp", json!(comp));
    debug_assert_eq!(comp.len(), n);
    Ok(done)
}

fn lambek_cmd(cmd: &LambekCommand) -> Result<Done, Error> {
    match cmd {
        LambekCommand::Prove { sequent, trace, node_budget } => {
            let s = lambek::parse_sequent(sequent)?;
            let mut prover = Prover::new(*node_budget);
            let proof = prover.prove(&s)?;
            let mut out = Out::new(json!({
                "sequent": s.to_string(),
                "derivable": proof.is_some(),
                "visited": prover.visited(),
                "proof": proof.as_ref().filter(|_| *trace).map(|p| p.render()),
            }));
            out.line(format!("sequent: {s}"));
            out.line(format!("derivable: {}", render::yes_no(proof.is_some())));
            if let (Some(p), true) = (&proof, *trace) {
                out.raw(p.render());
            }
            Ok(Done { out, pass: proof.is_some() })
        }
        LambekCommand::Counter { sequent, max_base, max_atom_relations, node_budget } => {
            let s = lambek::parse_sequent(sequent)?;
            let opts = CounterOptions {
                max_base: *max_base,
                max_atom_relations: *max_atom_relations,
                symmetry_breaking: true,
                budget: *node_budget,
            };
            let outcome = lambek::countermodel_search(&s, opts)?;
            let mut out;
            match &outcome {
                CounterOutcome::Found(m) => {
                    let valuation: serde_json::Map<String, Value> =
                        m.valuation.iter().map(|(k, r)| (k.clone(), json!(r.pairs().collect::<Vec<_>>()))).collect();
                    out = Out::new(json!({
                        "sequent": s.to_string(),
                        "countermodel": { "base": m.base, "valuation": valuation },
                    }));
                    out.line(format!("sequent: {s}"));
                    out.line(format!("countermodel found at base {}", m.base));
                    out.raw(m.to_string());
                }
                CounterOutcome::Exhausted { max_base } => {
                    out = Out::new(json!({ "sequent": s.to_string(), "countermodel": null, "max_base": max_base }));
                    out.line(format!("sequent: {s}"));
                    out.line(format!("no countermodel up to base {max_base}"));
                }
            }
            Ok(Done { out, pass: matches!(outcome, CounterOutcome::Exhausted { .. }) })
        }
        LambekCommand::Eval { sequent, model } => {
            let s = lambek::parse_sequent(sequent)?;
            let m = lambek::parse_model(&read(model)?)?;
            let holds = lambek::evaluate(&s, &m)?;
            let mut out = Out::new(json!({ "sequent": s.to_string(), "base": m.base, "holds": holds }));
            out.line(format!("sequent: {s}"));
            out.line(format!("holds: {}", render::yes_no(holds)));
            Ok(Done { out, pass: holds })
        }
    }
}
