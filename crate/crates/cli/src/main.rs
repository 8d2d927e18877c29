//! `raag`: command-line access to canonical forms, coalgebra checks, graph
//! recovery and the equalizer experiment.
//!
//! Exit codes: 0 affirmative, 1 negative or budget exhausted, 2 error.
//! Machine output goes to stdout, witnesses and diagnostics to stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raag_core::coalgebra::{cohom_to_graph_hom, is_cohomomorphism};
use raag_core::format;
use raag_core::recovery::{
    abelianization_rank, recover_graph, search_coalgebra, smith_normal_form, FinitePresentation, RecoveryError,
    SearchOutcome,
};
use raag_core::{
    a_on_hom, canonical_coalgebra, equalizer, is_coreflexive_pair, Check, CoalgebraVerdict, Graph,
    Syllable, Word,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "raag", version, about = "Right-angled Artin groups and the commutation-graph comonad")]
struct Cli {
    /// Structured JSON output instead of plain lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of a word.
    Nf {
        #[arg(long)]
        graph: PathBuf,
        /// Print the central form, blocks separated by ` | `.
        #[arg(long)]
        central: bool,
        word: String,
    },
    /// Whether two words are equal.
    Eq(PairArgs),
    /// Whether two words commute.
    Commutes(PairArgs),
    /// Whether a homomorphism is a cohomomorphism of coalgebras.
    IsCohom {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        dst: PathBuf,
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        src_coalg: Option<PathBuf>,
        #[arg(long)]
        dst_coalg: Option<PathBuf>,
    },
    /// Checks the coalgebra axioms.
    CheckCoalgebra {
        #[arg(long)]
        coalg: PathBuf,
    },
    /// Recovers the graph from a coalgebra.
    Recover {
        #[arg(long)]
        coalg: PathBuf,
        #[arg(long)]
        max_length: usize,
    },
    /// Samples words and checks that the equalizer of a coreflexive pair is preserved.
    EqualizerTest {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Bounded search for a coalgebra structure on a presented group.
    SearchCoalgebra {
        #[arg(long)]
        presentation: PathBuf,
        /// Graph file or group description realizing the presentation.
        #[arg(long)]
        promise_graph: PathBuf,
        #[arg(long)]
        symbol_budget: usize,
        #[arg(long)]
        image_budget: usize,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(clap::Args)]
struct PairArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Graph for the second word; defaults to `--graph`.
    #[arg(long)]
    graph2: Option<PathBuf>,
    w1: String,
    w2: String,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Yes,
    No,
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .format_timestamp(None)
        .format_target(false)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}

/// Error text prefixed with the failure's name, e.g. `NotACoalgebra: …`.
fn describe(e: &anyhow::Error) -> String {
    let Some(inner) = e.downcast_ref::<raag_core::Error>() else {
        return format!("{e:#}");
    };
    let debug = format!("{inner:?}");
    let name: String = debug
        .split_once('(')
        .map_or(debug.as_str(), |(_, rest)| rest)
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect();
    format!("{name}: {e:#}")
}

fn verdict(b: bool) -> Verdict {
    if b {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON value serializes"));
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Ok(format::read_graph(path)?)
}

/// Word text, with `1` for the identity unless `1` names a vertex.
fn parse_word(graph: &Graph, text: &str) -> anyhow::Result<Word> {
    if text.trim() == "1" && graph.index_of("1").is_none() {
        return Ok(Word::identity(graph));
    }
    Word::parse(graph, text).with_context(|| format!("cannot parse `{text}`"))
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    match &cli.command {
        Command::Nf { graph, central, word } => {
            let g = read_graph(graph)?;
            let w = parse_word(&g, word)?;
            let cf = w.central_form();
            if cli.json {
                let blocks: Vec<String> = cf
                    .blocks()
                    .iter()
                    .map(|b| Word::from_syllables(&g, b.clone()).map(|w| w.to_string()))
                    .collect::<Result<_, _>>()?;
                print_json(&json!({ "word": w.canonical_form().to_string(), "blocks": blocks }));
            } else if *central {
                println!("{}", if cf.blocks().is_empty() { "1".into() } else { cf.to_string() });
            } else {
                println!("{}", show(&w.canonical_form()));
            }
            Ok(Verdict::Yes)
        }
        Command::Eq(args) | Command::Commutes(args) => {
            let g1 = read_graph(&args.graph)?;
            let g2 = match &args.graph2 {
                Some(p) => read_graph(p)?,
                None => g1.clone(),
            };
            let w1 = parse_word(&g1, &args.w1)?;
            let w2 = parse_word(&g2, &args.w2)?;
            let (key, answer) = match &cli.command {
                Command::Eq(_) => ("equal", w1.equals(&w2)?),
                _ => ("commute", w1.commutes(&w2)?),
            };
            if cli.json {
                print_json(&json!({ key: answer }));
            } else {
                println!("{answer}");
            }
            Ok(verdict(answer))
        }
        Command::IsCohom {
            src,
            dst,
            hom,
            src_coalg,
            dst_coalg,
        } => is_cohom(cli.json, src, dst, hom, src_coalg.as_deref(), dst_coalg.as_deref()),
        Command::CheckCoalgebra { coalg } => {
            let c = format::read_coalgebra(coalg)?;
            let v = c.check_coalgebra();
            let detail = match &v {
                CoalgebraVerdict::CounitFailed { detail, .. }
                | CoalgebraVerdict::CoassociativityFailed { detail, .. } => Some(detail.clone()),
                CoalgebraVerdict::NotHomomorphism { .. } => match c.is_homomorphism_to_acg() {
                    Check::Fails { detail, .. } => Some(detail),
                    Check::Holds => None,
                },
                CoalgebraVerdict::Coalgebra => None,
            };
            if let Some(d) = &detail {
                eprintln!("{d}");
            }
            if cli.json {
                print_json(&json!({ "coalgebra": v.is_coalgebra(), "verdict": v.to_string(), "detail": detail }));
            } else {
                println!("{v}");
            }
            Ok(verdict(v.is_coalgebra()))
        }
        Command::Recover { coalg, max_length } => {
            let c = format::read_coalgebra(coalg)?;
            let v = c.check_coalgebra();
            if !v.is_coalgebra() {
                bail!("NotACoalgebra: {v}");
            }
            let rank = abelianization_rank(&FinitePresentation::of_group(c.group()));
            eprintln!("rank: {rank}");
            match recover_graph(&c, rank, *max_length) {
                Ok(r) => {
                    print_json(&format::graph_to_json(&r.graph, Some(&r.labels)));
                    Ok(Verdict::Yes)
                }
                Err(RecoveryError::BudgetExhausted { found, wanted }) => {
                    if cli.json {
                        print_json(&json!({ "exhausted": true, "found": found, "wanted": wanted }));
                    } else {
                        println!("found {found} of {wanted}");
                    }
                    Ok(Verdict::No)
                }
                Err(e) => Err(raag_core::Error::from(e).into()),
            }
        }
        Command::EqualizerTest {
            alpha,
            beta,
            rho,
            trials,
            max_len,
            seed,
        } => equalizer_test(cli.json, alpha, beta, rho, *trials, *max_len, *seed),
        Command::SearchCoalgebra {
            presentation,
            promise_graph,
            symbol_budget,
            image_budget,
        } => {
            let p = format::read_presentation(presentation)?;
            let group = format::read_group(promise_graph)?;
            let outcome = search_coalgebra(&p, &group, *symbol_budget, *image_budget).map_err(raag_core::Error::from)?;
            match outcome {
                SearchOutcome::Found(c) => {
                    print_json(&format::coalgebra_to_json(&c));
                    Ok(Verdict::Yes)
                }
                SearchOutcome::Exhausted {
                    symbol_budget,
                    image_budget,
                    tried,
                } => {
                    if cli.json {
                        print_json(&json!({
                            "exhausted": true,
                            "symbol_budget": symbol_budget,
                            "image_budget": image_budget,
                            "tried": tried,
                        }));
                    } else {
                        println!("exhausted symbol-budget {symbol_budget} image-budget {image_budget} tried {tried}");
                    }
                    Ok(Verdict::No)
                }
            }
        }
        Command::Snf { matrix } => {
            let m = format::read_matrix(matrix)?;
            let snf = smith_normal_form(&m);
            let invariants: Vec<String> = snf.invariants.iter().map(ToString::to_string).collect();
            if cli.json {
                print_json(&json!({ "invariants": invariants, "rank": snf.rank }));
            } else {
                println!("invariants:{}", invariants.iter().map(|x| format!(" {x}")).collect::<String>());
                println!("rank: {}", snf.rank);
            }
            Ok(Verdict::Yes)
        }
    }
}

fn is_cohom(
    json_out: bool,
    src: &Path,
    dst: &Path,
    hom: &Path,
    src_coalg: Option<&Path>,
    dst_coalg: Option<&Path>,
) -> anyhow::Result<Verdict> {
    let source = format::read_group(src)?;
    let target = format::read_group(dst)?;
    let f = format::read_group_hom(hom, &source, &target)?;
    let cs = match src_coalg {
        Some(p) => format::read_coalgebra(p)?,
        None => canonical_coalgebra(source.graph()),
    };
    let cd = match dst_coalg {
        Some(p) => format::read_coalgebra(p)?,
        None => canonical_coalgebra(target.graph()),
    };
    if cs.group() != &source || cd.group() != &target {
        bail!("EndsMismatch: coalgebra groups differ from --src/--dst");
    }
    let check = is_cohomomorphism(&f, &cs, &cd).map_err(raag_core::Error::from)?;
    match check {
        Check::Holds => {
            let phi = if cs.is_canonical() && cd.is_canonical() {
                cohom_to_graph_hom(&f, &cs, &cd).map_err(raag_core::Error::from)?
            } else {
                None
            };
            if json_out {
                let map = phi.as_ref().map(|p| p.pairs().collect::<BTreeMap<_, _>>());
                print_json(&json!({ "cohomomorphism": true, "phi": map }));
            } else {
                println!("true");
                if let Some(p) = &phi {
                    for (v, u) in p.pairs() {
                        println!("{v} -> {u}");
                    }
                }
            }
            Ok(Verdict::Yes)
        }
        Check::Fails { at, detail } => {
            eprintln!("{at}: {detail}");
            if json_out {
                print_json(&json!({ "cohomomorphism": false, "at": at, "witness": detail }));
            } else {
                println!("false");
            }
            Ok(Verdict::No)
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, graph: &Graph, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let syllables = (0..len)
        .map(|_| {
            let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            Syllable::new(rng.gen_range(0..graph.len()), sign)
        })
        .collect();
    Word::from_syllables(graph, syllables).expect("letters are vertices")
}

fn equalizer_test(
    json_out: bool,
    alpha: &Path,
    beta: &Path,
    rho: &Path,
    trials: u64,
    max_len: usize,
    seed: u64,
) -> anyhow::Result<Verdict> {
    let (a, b, r) = (
        format::read_graph_hom(alpha)?,
        format::read_graph_hom(beta)?,
        format::read_graph_hom(rho)?,
    );
    if !is_coreflexive_pair(&a, &b, &r).map_err(raag_core::Error::from)? {
        bail!("NotCoreflexive: rho is not a common retraction of alpha and beta");
    }
    let (theta, _) = equalizer(&a, &b).map_err(raag_core::Error::from)?;
    let (fa, fb) = (a_on_hom(&a), a_on_hom(&b));
    let source = a.source();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut premise, mut violations) = (0u64, 0u64);
    for _ in 0..trials {
        if source.is_empty() {
            break;
        }
        let g = random_word(&mut rng, source, max_len);
        if fa.apply(&g.canonical_form()) == fb.apply(&g.canonical_form()) {
            premise += 1;
            if !g.in_special_subgroup(theta.vertices())? {
                violations += 1;
                eprintln!("violation: {g}");
            }
        }
    }
    if json_out {
        print_json(&json!({ "trials": trials, "premise": premise, "violations": violations }));
    } else {
        println!("trials: {trials}");
        println!("premise: {premise}");
        println!("violations: {violations}");
    }
    Ok(verdict(violations == 0))
}
