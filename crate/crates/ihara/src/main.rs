use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ihara::graph::{build_oriented, OrientedGraph, UnorientedGraphSpec};
use ihara::identities::{
    verify_amitsur, verify_bass_from_8_1, verify_macmahon, verify_prop_8_1, verify_thm_1_1,
    verify_thm_4_1, Prop81Mode,
};
use ihara::poly::Matrix;
use ihara::words::{
    beta_dec, beta_vert, decreasing_factorization, donlyn, is_lyndon, lyndon_factorization, phi,
    phi_inverse, standard_factorization, BMonomial, Word,
};
use ihara::zeta::{enumerate_prime_reduced_cycles, verify_bass};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ihara",
    version,
    about = "Ihara-Selberg zeta function of a multigraph by three exact routes, plus identity checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the zeta polynomial from the edge and vertex determinant
    /// formulas and the truncated cycle product, and check they agree.
    Zeta {
        /// Graph file (`vertices N` then `edge I J` lines).
        graph: PathBuf,
        /// Truncation degree for the cycle product (default max(2c1, 10)).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List prime reduced cycle classes by length.
    Cycles {
        graph: PathBuf,
        /// Maximum cycle length (default max(2c1, 10)).
        #[arg(long)]
        max_len: Option<usize>,
        /// Also include cycles that backtrack (drop the reducedness filter).
        #[arg(long)]
        include_unreduced: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every graph-level identity check on one graph.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify the word/matrix identities at chosen sizes.
    Identity {
        /// Beta-homomorphism chain: alphabet size and total degree.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        thm11: Option<Vec<usize>>,
        /// Sign-reversing involution: alphabet size and total degree.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        thm41: Option<Vec<usize>>,
        /// Master-theorem series identity: alphabet size and total degree.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        macmahon: Option<Vec<usize>>,
        /// Determinant product identity on random integer matrices:
        /// matrix count, dimension, truncation degree, number of instances.
        #[arg(long, num_args = 4, value_names = ["K", "DIM", "D", "SEEDS"])]
        amitsur: Option<Vec<usize>>,
        /// Common-origin determinant factorization on this graph.
        #[arg(long)]
        prop81: Option<PathBuf>,
        /// Expand the factorization symbolically (needs 2c1 <= 8).
        #[arg(long)]
        symbolic: bool,
        /// Check the factorization at N random integer points instead.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        /// Seed for randomized checks.
        #[arg(long, default_value_t = 12345)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Factorizations and the rearrangement bijection for one word
    /// (comma-separated letters, e.g. `3,4,5,1,2,4,2`).
    Words {
        word: String,
        /// What to compute: all, lyndon, decreasing, standard, donlyn, phi,
        /// phi-inverse.
        #[arg(long, default_value = "all")]
        op: String,
    },
}

fn load_graph(path: &PathBuf) -> Result<OrientedGraph, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec = UnorientedGraphSpec::parse(&text).map_err(|e| e.to_string())?;
    build_oriented(&spec).map_err(|e| e.to_string())
}

fn default_degree(g: &OrientedGraph, requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| (2 * g.c1()).max(10))
}

fn format_bmonomial(bm: &BMonomial) -> String {
    bm.to_string()
}

fn cmd_zeta(graph: &PathBuf, degree: Option<usize>, format: Format) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let l = default_degree(&g, degree);
    let report = verify_bass(&g, l).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).unwrap()
        ),
        Format::Text => {
            println!("zeta_edges:    {}", report.zeta_edges);
            println!("zeta_vertices: {}", report.zeta_vertices);
            println!("eta_truncated: {} (L = {})", report.eta_truncated, report.max_degree);
            let census: Vec<String> = report
                .census
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect();
            println!("cycle census:  {{{}}}", census.join(", "));
            println!("pass_13: {}", report.pass_13);
            println!("pass_12: {}", report.pass_12);
        }
    }
    Ok(if report.all_pass() { 0 } else { EXIT_VIOLATION })
}

fn cmd_cycles(
    graph: &PathBuf,
    max_len: Option<usize>,
    include_unreduced: bool,
    format: Format,
) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let l = default_degree(&g, max_len);
    let cycles = enumerate_prime_reduced_cycles(&g, l, !include_unreduced);
    let mut by_len: BTreeMap<usize, Vec<&ihara::zeta::CycleClass>> = BTreeMap::new();
    for c in &cycles {
        by_len.entry(c.len()).or_default().push(c);
    }
    match format {
        Format::Json => {
            let census: serde_json::Map<String, serde_json::Value> = by_len
                .iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::from(v.len())))
                .collect();
            let list: Vec<serde_json::Value> = cycles
                .iter()
                .map(|c| serde_json::json!({ "length": c.len(), "edges": c.edges }))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "max_len": l,
                    "census": census,
                    "cycles": list,
                }))
                .unwrap()
            );
        }
        Format::Text => {
            println!("prime{} cycles up to length {l}:", if include_unreduced { "" } else { " reduced" });
            for (len, group) in &by_len {
                println!("length {len} ({} classes):", group.len());
                for c in group {
                    let ids: Vec<String> = c.edges.iter().map(|e| e.to_string()).collect();
                    println!("  [{}]", ids.join(", "));
                }
            }
            println!("total: {}", cycles.len());
        }
    }
    Ok(0)
}

fn cmd_verify(graph: &PathBuf, degree: Option<usize>, format: Format) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let l = default_degree(&g, degree);
    let report = verify_bass(&g, l).map_err(|e| e.to_string())?;
    let factorization = verify_bass_from_8_1(&g).map_err(|e| e.to_string())?;
    let all = report.all_pass() && factorization;
    match format {
        Format::Json => {
            let mut json = report.to_json();
            json["pass_factorization"] = serde_json::Value::from(factorization);
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
        Format::Text => {
            println!("pass_13 (determinant formulas agree): {}", report.pass_13);
            println!("pass_12 (cycle product matches, L = {l}): {}", report.pass_12);
            println!("pass_factorization (common-origin route): {factorization}");
        }
    }
    Ok(if all { 0 } else { EXIT_VIOLATION })
}

#[allow(clippy::too_many_arguments)]
fn cmd_identity(
    thm11: Option<Vec<usize>>,
    thm41: Option<Vec<usize>>,
    macmahon: Option<Vec<usize>>,
    amitsur: Option<Vec<usize>>,
    prop81: Option<PathBuf>,
    symbolic: bool,
    random: Option<usize>,
    seed: u64,
    format: Format,
) -> Result<u8, String> {
    let mut results: Vec<(String, bool)> = Vec::new();
    if let Some(nd) = thm11 {
        let r = verify_thm_1_1(nd[0], nd[1]).map_err(|e| e.to_string())?;
        results.push((format!("thm11 n={} d={}", nd[0], nd[1]), r.all_pass()));
    }
    if let Some(nd) = thm41 {
        let r = verify_thm_4_1(nd[0], nd[1]).map_err(|e| e.to_string())?;
        results.push((format!("thm41 n={} d={}", nd[0], nd[1]), r.all_pass()));
    }
    if let Some(nd) = macmahon {
        let ok = verify_macmahon(nd[0], nd[1]).map_err(|e| e.to_string())?;
        results.push((format!("macmahon n={} d={}", nd[0], nd[1]), ok));
    }
    if let Some(args) = amitsur {
        let (k, dim, d, seeds) = (args[0], args[1], args[2], args[3]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut all = true;
        for _ in 0..seeds {
            let mats: Vec<Matrix<BigInt>> = (0..k)
                .map(|_| {
                    Matrix::from_fn(dim, dim, |_, _| BigInt::from(rng.gen_range(-3i64..=3)))
                })
                .collect();
            all &= verify_amitsur(&mats, d).map_err(|e| e.to_string())?;
        }
        results.push((format!("amitsur k={k} dim={dim} d={d} seeds={seeds}"), all));
    }
    if let Some(path) = prop81 {
        let g = load_graph(&path)?;
        let mode = if symbolic || random.is_none() {
            Prop81Mode::Symbolic
        } else {
            Prop81Mode::RandomEval {
                points: random.unwrap(),
                seed,
            }
        };
        let r = verify_prop_8_1(&g, mode).map_err(|e| e.to_string())?;
        results.push((format!("prop81 {}", path.display()), r.pass));
    }
    if results.is_empty() {
        return Err("no identity check requested".to_string());
    }
    let all = results.iter().all(|(_, ok)| *ok);
    match format {
        Format::Json => {
            let checks: Vec<serde_json::Value> = results
                .iter()
                .map(|(name, ok)| serde_json::json!({ "check": name, "pass": ok }))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "checks": checks,
                    "pass": all,
                }))
                .unwrap()
            );
        }
        Format::Text => {
            for (name, ok) in &results {
                println!("{name}: {}", if *ok { "pass" } else { "FAIL" });
            }
        }
    }
    Ok(if all { 0 } else { EXIT_VIOLATION })
}

fn cmd_words(word: &str, op: &str) -> Result<u8, String> {
    let w = Word::parse(word).map_err(|e| e.to_string())?;
    let show = |words: &[Word]| -> String {
        words
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    };
    match op {
        "lyndon" => println!("{}", show(&lyndon_factorization(&w))),
        "decreasing" => println!("{}", show(&decreasing_factorization(&w))),
        "standard" => {
            let (l0, m0) = standard_factorization(&w).map_err(|e| e.to_string())?;
            println!("({l0}) ({m0})");
        }
        "donlyn" => println!("{}", donlyn(&w).map_err(|e| e.to_string())?),
        "phi" => println!("{}", phi(&w)),
        "phi-inverse" => println!("{}", phi_inverse(&w)),
        "all" => {
            println!("word:                    {w}");
            println!("is_lyndon:               {}", is_lyndon(&w));
            println!("lyndon factorization:    {}", show(&lyndon_factorization(&w)));
            println!("decreasing factorization: {}", show(&decreasing_factorization(&w)));
            let image = phi(&w);
            println!("phi image:               {image}");
            println!("phi round trip:          {}", phi_inverse(&image));
            println!("beta_dec(word):          {}", format_bmonomial(&beta_dec(&w)));
            println!("beta_vert(phi image):    {}", format_bmonomial(&beta_vert(&image)));
        }
        other => return Err(format!("unknown op `{other}`")),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Zeta {
            graph,
            degree,
            format,
        } => cmd_zeta(&graph, degree, format),
        Cmd::Cycles {
            graph,
            max_len,
            include_unreduced,
            format,
        } => cmd_cycles(&graph, max_len, include_unreduced, format),
        Cmd::Verify {
            graph,
            degree,
            format,
        } => cmd_verify(&graph, degree, format),
        Cmd::Identity {
            thm11,
            thm41,
            macmahon,
            amitsur,
            prop81,
            symbolic,
            random,
            seed,
            format,
        } => cmd_identity(
            thm11, thm41, macmahon, amitsur, prop81, symbolic, random, seed, format,
        ),
        Cmd::Words { word, op } => cmd_words(&word, &op),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
