//! `blowup` — command-line access to the exact geometry of the canonical
//! blow-ups 𝒯_{s,p,n} and the submanifolds ℳ_{s,p,n}.
//!
//! Every subcommand prints one machine-readable document to stdout (JSON by
//! default, TSV with `--format tsv`) and timing information to stderr.
//! Exit codes: 0 success, 1 precondition/usage failure, 2 internal
//! cross-check failure.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use blowup::charts::{verify_claim_i, verify_claim_iii, verify_cstar_weights, Chart};
use blowup::curves::{
    antik_degree_m, antik_degree_t, closed_form_degree, curve_class, enumerate_m, enumerate_t,
    min_antik_degree_m, nef_ample_t,
};
use blowup::error::Error;
use blowup::indices::{enumerate_full, enumerate_stratum, GrassParams, IndexTuple};
use blowup::ke::{ke_test_m, ke_test_t, KEResult};
use blowup::linalg::RatMatrix;
use blowup::picard::{m_weight_data, t_weight_data, MPic, Space, TPic};
use blowup::plucker::{blowup_map, parse_matrix, plucker_vector};
use blowup::polytope::{integrate, parse_polytope};
use blowup::poly::parse_poly;
use blowup::rat::{rat_str, ratq, Rat};

#[derive(Parser)]
#[command(
    name = "blowup",
    about = "Exact invariants of canonical blow-ups of Grassmannians",
    version
)]
struct Cli {
    /// Output format for the stdout document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for exact integration (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    T,
    M,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Plücker index tuples, optionally restricted to stratum k.
    Indices {
        s: usize,
        p: usize,
        n: usize,
        /// Stratum (number of entries exceeding s); omit for all tuples.
        k: Option<usize>,
    },
    /// Plücker coordinates and blow-up image of a p×n matrix file.
    Plucker {
        /// Path to a matrix file (one row per line, rational entries).
        matrix: String,
        /// The splitting parameter s.
        s: usize,
    },
    /// Verify the chart closed forms against brute-force minors at random
    /// rational points.
    ChartVerify {
        s: usize,
        p: usize,
        n: usize,
        /// Restrict to one chart index l (default: all 0..=r).
        #[arg(long)]
        l: Option<usize>,
        /// Random points per chart.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Picard lattice data: basis, B-divisors, canonical class, pullbacks,
    /// weight data.
    Picard {
        s: usize,
        p: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = SpaceArg::T)]
        space: SpaceArg,
    },
    /// Intersection table of the invariant curve families.
    Curves { s: usize, p: usize, n: usize },
    /// Nef/ample test for −K of 𝒯_{s,p,n}.
    NefTest { s: usize, p: usize, n: usize },
    /// Kähler–Einstein existence test.
    KeTest {
        s: usize,
        p: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = SpaceArg::M)]
        space: SpaceArg,
        /// Include the exact certificate integrals in the output.
        #[arg(long)]
        certificate: bool,
    },
    /// Exact integral of a polynomial file over a polytope file.
    Integrate {
        /// Polynomial in the line format "term: coeff e1 ... ed".
        #[arg(long)]
        poly: String,
        /// Polytope in the line format "ineq: a1 ... ad <= b".
        #[arg(long)]
        polytope: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    let start = Instant::now();
    let (echo, result) = run(&cli.command);
    eprintln!("elapsed: {:?}", start.elapsed());
    match result {
        Ok(results) => {
            let doc = json!({ "command": echo, "results": results });
            emit(&doc, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let kind = match e {
                Error::CrossCheck(_) => "cross-check",
                _ => "precondition",
            };
            let doc = json!({ "command": echo, "error": { "kind": kind, "message": e.to_string() } });
            emit(&doc, cli.format);
            if matches!(e, Error::CrossCheck(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(doc: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).unwrap()),
        Format::Tsv => {
            let mut lines = Vec::new();
            flatten("", doc, &mut lines);
            for (k, v) in lines {
                println!("{k}\t{v}");
            }
        }
    }
}

/// Flatten a JSON document into sorted (path, scalar) lines for TSV output.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let child = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&child, val, out);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), "null".to_string())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => out.push((prefix.to_string(), n.to_string())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
    }
}

fn run(cmd: &Command) -> (Value, Result<Value, Error>) {
    match cmd {
        Command::Indices { s, p, n, k } => (
            json!({ "name": "indices", "s": s, "p": p, "n": n, "k": k }),
            cmd_indices(*s, *p, *n, *k),
        ),
        Command::Plucker { matrix, s } => (
            json!({ "name": "plucker", "matrix": matrix, "s": s }),
            cmd_plucker(matrix, *s),
        ),
        Command::ChartVerify {
            s,
            p,
            n,
            l,
            samples,
            seed,
        } => (
            json!({ "name": "chart-verify", "s": s, "p": p, "n": n, "l": l,
                    "samples": samples, "seed": seed }),
            cmd_chart_verify(*s, *p, *n, *l, *samples, *seed),
        ),
        Command::Picard { s, p, n, space } => (
            json!({ "name": "picard", "s": s, "p": p, "n": n,
                    "space": space_name(*space) }),
            cmd_picard(*s, *p, *n, *space),
        ),
        Command::Curves { s, p, n } => (
            json!({ "name": "curves", "s": s, "p": p, "n": n }),
            cmd_curves(*s, *p, *n),
        ),
        Command::NefTest { s, p, n } => (
            json!({ "name": "nef-test", "s": s, "p": p, "n": n }),
            cmd_nef_test(*s, *p, *n),
        ),
        Command::KeTest {
            s,
            p,
            n,
            space,
            certificate,
        } => (
            json!({ "name": "ke-test", "s": s, "p": p, "n": n,
                    "space": space_name(*space), "certificate": certificate }),
            cmd_ke_test(*s, *p, *n, *space, *certificate),
        ),
        Command::Integrate { poly, polytope } => (
            json!({ "name": "integrate", "poly": poly, "polytope": polytope }),
            cmd_integrate(poly, polytope),
        ),
    }
}

fn space_name(s: SpaceArg) -> &'static str {
    match s {
        SpaceArg::T => "T",
        SpaceArg::M => "M",
    }
}

fn tuple_json(t: &IndexTuple) -> Value {
    Value::Array(t.entries().iter().map(|&e| json!(e)).collect())
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| json!(rat_str(x))).collect())
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| rats_json(m.row(i))).collect())
}

fn cmd_indices(s: usize, p: usize, n: usize, k: Option<usize>) -> Result<Value, Error> {
    let g = GrassParams::new(s, p, n)?;
    match k {
        Some(k) => {
            let tuples = enumerate_stratum(&g, p, k)?;
            Ok(json!({
                "stratum": k,
                "count": tuples.len(),
                "tuples": tuples.iter().map(tuple_json).collect::<Vec<_>>(),
            }))
        }
        None => {
            let tuples = enumerate_full(p, n)?;
            let strata: Vec<Value> = (0..=p.min(n - s))
                .map(|k| {
                    let of_k: Vec<Value> = tuples
                        .iter()
                        .filter(|t| t.stratum(s) == k)
                        .map(tuple_json)
                        .collect();
                    json!({ "stratum": k, "count": of_k.len(), "tuples": of_k })
                })
                .collect();
            Ok(json!({ "count": tuples.len(), "strata": strata }))
        }
    }
}

fn cmd_plucker(path: &str, s: usize) -> Result<Value, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let m = parse_matrix(&text)?;
    let pv = plucker_vector(&m)?;
    let coords: Vec<Value> = pv
        .iter()
        .map(|(t, v)| json!({ "index": t.display(), "value": rat_str(v) }))
        .collect();
    let comps = blowup_map(&pv, s)?;
    let image: Vec<Value> = comps
        .iter()
        .map(|c| {
            json!({
                "stratum": c.k,
                "coords": c
                    .coords
                    .iter()
                    .map(|(t, v)| json!({ "index": t.display(), "value": rat_str(v) }))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "plucker": coords, "blowup_image": image }))
}

fn cmd_chart_verify(
    s: usize,
    p: usize,
    n: usize,
    l: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<Value, Error> {
    let g = GrassParams::new(s, p, n)?;
    let r = p.min(n - s);
    let ls: Vec<usize> = match l {
        Some(l) => vec![l],
        None => (0..=r).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut charts = Vec::new();
    let mut total_mismatches = 0usize;
    for &l in &ls {
        let chart = Chart::canonical(g.clone(), l)?;
        let mut checked = 0usize;
        let mut mismatches = 0usize;
        for _ in 0..samples {
            let pt = chart.random_point(&mut rng);
            let lambda = ratq(3, 2);
            mismatches += verify_claim_i(&chart, &pt)?.len();
            mismatches += verify_claim_iii(&chart, &pt)?.len();
            mismatches += verify_cstar_weights(&chart, &pt, &lambda)?.len();
            checked += 1;
        }
        total_mismatches += mismatches;
        charts.push(json!({ "l": l, "points": checked, "mismatches": mismatches }));
    }
    if total_mismatches > 0 {
        return Err(Error::CrossCheck(format!(
            "{total_mismatches} chart formula mismatches against brute-force minors"
        )));
    }
    Ok(json!({ "seed": seed, "samples": samples, "charts": charts, "ok": true }))
}

fn cmd_picard(s: usize, p: usize, n: usize, space: SpaceArg) -> Result<Value, Error> {
    let g = GrassParams::new(s, p, n)?;
    let r = g.rank();
    match space {
        SpaceArg::T => {
            let t = TPic::new(g.clone())?;
            let bdivs: Vec<Value> = (0..=r)
                .map(|j| {
                    t.divisor_b(j)
                        .map(|d| json!({ "j": j, "coeffs": rats_json(&d.coeffs) }))
                })
                .collect::<Result<_, _>>()?;
            let w = t_weight_data(&g)?;
            let pullback = t.swap_pullback().ok().map(|m| matrix_json(&m));
            Ok(json!({
                "variant": format!("{:?}", blowup::picard::variant_of(&g)),
                "basis": t.basis_names(),
                "b_divisors": bdivs,
                "canonical": rats_json(&t.canonical()?.coeffs),
                "swap_pullback": pullback,
                "weights": {
                    "rho_b": w.rho_b.iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
                    "v_dplus": w.v_dplus.iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
                    "v_dminus": w.v_dminus.iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
                },
            }))
        }
        SpaceArg::M => {
            let m = MPic::new(g.clone())?;
            let bdivs: Vec<Value> = (0..=r)
                .filter(|&j| !(j == 0 && p == s))
                .map(|j| {
                    m.divisor_bcheck(j)
                        .map(|d| json!({ "j": j, "coeffs": rats_json(&d.coeffs) }))
                })
                .collect::<Result<_, _>>()?;
            let w = m_weight_data(&g)?;
            let pullback = m
                .swap_pullback()
                .ok()
                .map(|(mat, non_integral)| {
                    json!({ "matrix": matrix_json(&mat), "non_integral": non_integral })
                });
            Ok(json!({
                "variant": format!("{:?}", blowup::picard::variant_of(&g)),
                "basis": m.basis_names(),
                "b_divisors": bdivs,
                "canonical": rats_json(&m.canonical()?.coeffs),
                "swap_pullback": pullback,
                "weights": {
                    "rho_b": w.rho_b.iter()
                        .map(|(j, v)| json!({ "j": j, "coeffs": rats_json(v) }))
                        .collect::<Vec<_>>(),
                    "v_dcheck": w.v_dcheck.iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
                },
            }))
        }
    }
}

fn cmd_curves(s: usize, p: usize, n: usize) -> Result<Value, Error> {
    let g = GrassParams::new(s, p, n)?;
    let mut rows = Vec::new();
    for c in enumerate_t(&g)? {
        let cls = curve_class(&g, &c)?;
        rows.push(json!({
            "curve": c.name(),
            "h": cls.h,
            "dminus": cls.dminus,
            "dplus": cls.dplus,
            "antik_t_degree": antik_degree_t(&g, &c)?,
            "closed_form": closed_form_degree(&g, &c)?,
        }));
    }
    let mut m_rows = Vec::new();
    for c in enumerate_m(&g)? {
        m_rows.push(json!({
            "curve": c.name(),
            "antik_m_degree": antik_degree_m(&g, &c)?,
        }));
    }
    Ok(json!({ "t_curves": rows, "m_curves": m_rows }))
}

fn cmd_nef_test(s: usize, p: usize, n: usize) -> Result<Value, Error> {
    let g = GrassParams::new(s, p, n)?;
    let na = nef_ample_t(&g)?;
    let min_m = min_antik_degree_m(&g)?;
    Ok(json!({
        "nef": na.nef,
        "ample": na.ample,
        "min_degree": na.min_degree,
        "witness": na.witness.name(),
        "m_min_degree": min_m,
    }))
}

fn ke_result_json(res: &KEResult, with_certificate: bool) -> Value {
    let mut doc = json!({
        "decision": if res.ke { "KE" } else { "no-KE" },
        "space": match res.space { Space::T => "T", Space::M => "M" },
        "input": { "s": res.input.s, "p": res.input.p, "n": res.input.n },
        "normalized": { "s": res.normalized.s, "p": res.normalized.p, "n": res.normalized.n },
        "trail": res.trail,
        "case": res.case,
    });
    if with_certificate {
        let cert: Vec<Value> = res
            .certificate
            .iter()
            .map(|(name, v)| json!({ "name": name, "value": rat_str(v) }))
            .collect();
        doc["certificate"] = Value::Array(cert);
    }
    doc
}

fn cmd_ke_test(
    s: usize,
    p: usize,
    n: usize,
    space: SpaceArg,
    certificate: bool,
) -> Result<Value, Error> {
    let res = match space {
        SpaceArg::T => ke_test_t(s, p, n)?,
        SpaceArg::M => ke_test_m(s, p, n)?,
    };
    Ok(ke_result_json(&res, certificate))
}

fn cmd_integrate(poly_path: &str, polytope_path: &str) -> Result<Value, Error> {
    let ptext = std::fs::read_to_string(poly_path)
        .map_err(|e| Error::Parse(format!("{poly_path}: {e}")))?;
    let gtext = std::fs::read_to_string(polytope_path)
        .map_err(|e| Error::Parse(format!("{polytope_path}: {e}")))?;
    let f = parse_poly(&ptext)?;
    let p = parse_polytope(&gtext)?;
    let value = integrate(&f, &p)?;
    Ok(json!({
        "integral": rat_str(&value),
        "positive": value.is_positive(),
    }))
}
