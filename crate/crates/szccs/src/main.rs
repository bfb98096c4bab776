//! Command-line front end: generate sequence families, verify code sets,
//! build and check training matrices, run Monte-Carlo campaigns, and emit
//! JSON/CSV artifacts.
//!
//! Exit codes: `0` success / verification pass, `1` verification or
//! criteria failure, `2` usage or validation error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use szccs::chansim::{run_campaign, LengthConvention, SimConfig};
use szccs::codeset::{ArithmeticMode, CodeSet};
use szccs::construct::{
    czcp_fixture, lemma1_gcp, random_binary, theorem2_szccs, theorem3_szccs, zadoff_chu,
    Lemma1Variant, Theorem2Params, Theorem3Params,
};
use szccs::corr::CorrelationProfile;
use szccs::gbf::{Permutation, UnimodularSequence};
use szccs::training::TrainingMatrix;

#[derive(Parser)]
#[command(
    name = "szccs",
    about = "Symmetrical Z-complementary code sets: construction, verification, GSM training"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sequence family as a code-set JSON document.
    Generate {
        /// Family name.
        #[arg(value_parser = ["lemma1", "theorem2", "theorem3", "zadoff-chu", "random-binary", "czcp-fixture"])]
        family: String,
        /// Family parameters as inline JSON (see docs of each family).
        #[arg(long, default_value = "{}")]
        params: String,
        /// Read parameters from a JSON file instead.
        #[arg(long, conflicts_with = "params")]
        params_file: Option<PathBuf>,
        /// RNG seed for randomized parameters; auto-generated (and printed)
        /// when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the SZCCS conditions of a code-set file at a given Z.
    Verify {
        codeset: PathBuf,
        #[arg(long)]
        z: usize,
        /// Force floating-point verification.
        #[arg(long)]
        float: bool,
        /// Force exact integer verification (errors if unrepresentable).
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the correlation profile of two sequences, or the set-level
    /// correlation sum profile of two codes.
    Corr {
        codeset: PathBuf,
        /// First code index (0-based).
        #[arg(long, default_value_t = 0)]
        code_a: usize,
        /// Second code index (0-based).
        #[arg(long, default_value_t = 0)]
        code_b: usize,
        /// Member index within code A; omit both members for the set-level
        /// correlation sum.
        #[arg(long)]
        member_a: Option<usize>,
        /// Member index within code B.
        #[arg(long)]
        member_b: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a training matrix from a code set and check the optimality
    /// criteria.  Exit code 1 when any criterion fails.
    Train {
        codeset: PathBuf,
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nactive: usize,
        #[arg(long)]
        lambda: usize,
        /// Horizontal enlargement factor t (J' = t·J).
        #[arg(long, default_value_t = 1)]
        enlarge: usize,
        /// Comma-separated code indices seeding the rows (default: first
        /// N_active codes).
        #[arg(long, value_delimiter = ',')]
        codes: Option<Vec<usize>>,
        /// Output prefix; writes PREFIX.omega.csv, PREFIX.omega.json and
        /// PREFIX.criteria.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte-Carlo MSE campaign described by a JSON config file.
    Simulate {
        config: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize a code-set file: parameters, bound, maximal symmetric Z.
    Report {
        codeset: PathBuf,
        /// Force floating-point verification.
        #[arg(long)]
        float: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate {
            family,
            params,
            params_file,
            seed,
            out,
        } => cmd_generate(&family, &params, params_file, seed, out),
        Command::Verify {
            codeset,
            z,
            float,
            exact,
            out,
        } => cmd_verify(&codeset, z, float, exact, out),
        Command::Corr {
            codeset,
            code_a,
            code_b,
            member_a,
            member_b,
            format,
            out,
        } => cmd_corr(&codeset, code_a, code_b, member_a, member_b, format, out),
        Command::Train {
            codeset,
            nt,
            nactive,
            lambda,
            enlarge,
            codes,
            out,
        } => cmd_train(&codeset, nt, nactive, lambda, enlarge, codes, out),
        Command::Simulate { config, seed, out } => cmd_simulate(&config, seed, out),
        Command::Report {
            codeset,
            float,
            out,
        } => cmd_report(&codeset, float, out),
    }
}

fn emit(out: Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(&path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn load_codeset(path: &PathBuf) -> anyhow::Result<CodeSet> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let set: CodeSet =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    set.validate().map_err(|e| anyhow!("invalid code set: {e}"))?;
    Ok(set)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(0)
                ^ std::process::id() as u64;
            eprintln!("seed: {s}");
            s
        }
    }
}

// ---------------------------------------------------------------------
// generate

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Lemma1Args {
    q: Option<u32>,
    m: Option<u32>,
    pi: Option<serde_json::Value>,
    c: Option<Vec<u32>>,
    c0: Option<u32>,
    variant: Option<String>,
    #[serde(default)]
    random: bool,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Theorem2Args {
    q: Option<u32>,
    m: Option<u32>,
    pi: Option<serde_json::Value>,
    mu: Option<Vec<u32>>,
    mu0: Option<u32>,
    #[serde(default)]
    random: bool,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Theorem3Args {
    q: Option<u32>,
    m: Option<u32>,
    v: Option<u32>,
    pi: Option<serde_json::Value>,
    lambda: Option<Vec<u32>>,
    mu: Option<Vec<u32>>,
    mu0: Option<u32>,
    which: Option<String>,
    #[serde(default)]
    random: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZadoffChuArgs {
    length: usize,
    roots: Vec<u64>,
    codes: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomBinaryArgs {
    length: usize,
    count: Option<usize>,
    codes: Option<usize>,
}

fn parse_pi(value: &Option<serde_json::Value>, m: u32) -> anyhow::Result<Permutation> {
    match value {
        None => Ok(Permutation::identity(m)),
        Some(serde_json::Value::String(s)) if s == "identity" => Ok(Permutation::identity(m)),
        Some(serde_json::Value::Array(items)) => {
            let images = items
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|x| x as u32)
                        .ok_or_else(|| anyhow!("pi entries must be integers"))
                })
                .collect::<anyhow::Result<Vec<u32>>>()?;
            Ok(Permutation::new(images)?)
        }
        Some(other) => bail!("pi must be \"identity\" or an image array, got {other}"),
    }
}

/// Group a flat list of sequences into a K × M code array.
fn group_codes(
    seqs: Vec<UnimodularSequence>,
    codes: Option<usize>,
) -> anyhow::Result<Vec<Vec<UnimodularSequence>>> {
    let k = codes.unwrap_or(1);
    if k == 0 || seqs.len() % k != 0 {
        bail!("cannot split {} sequences into {k} codes", seqs.len());
    }
    let m = seqs.len() / k;
    let mut it = seqs.into_iter();
    Ok((0..k)
        .map(|_| (0..m).map(|_| it.next().expect("counted")).collect())
        .collect())
}

fn cmd_generate(
    family: &str,
    params: &str,
    params_file: Option<PathBuf>,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let text = match params_file {
        Some(p) => fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?,
        None => params.to_string(),
    };
    let mut set = match family {
        "lemma1" => {
            let a: Lemma1Args = serde_json::from_str(&text).context("lemma1 params")?;
            let q = a.q.unwrap_or(2);
            let m = a.m.unwrap_or(4);
            let (pi, c, c0) = if a.random {
                let mut rng = seeded_rng(resolve_seed(seed));
                use rand::Rng;
                let mut images: Vec<u32> = (1..=m).collect();
                for i in (1..images.len()).rev() {
                    images.swap(i, rng.gen_range(0..=i));
                }
                (
                    Permutation::new(images)?,
                    (0..m).map(|_| rng.gen_range(0..q)).collect(),
                    rng.gen_range(0..q),
                )
            } else {
                (
                    parse_pi(&a.pi, m)?,
                    a.c.unwrap_or_else(|| vec![0; m as usize]),
                    a.c0.unwrap_or(0),
                )
            };
            let variant = match a.variant.as_deref() {
                None | Some("b") => Lemma1Variant::B,
                Some("c") => Lemma1Variant::C,
                Some(other) => bail!("variant must be \"b\" or \"c\", got {other}"),
            };
            let (x, y) = lemma1_gcp(q, &pi, &c, c0, variant)?;
            let mut set = CodeSet::from_codes(vec![vec![x, y]])?;
            set.set_provenance("family", "quadratic-golay-pair");
            set
        }
        "theorem2" => {
            let a: Theorem2Args = serde_json::from_str(&text).context("theorem2 params")?;
            let q = a.q.unwrap_or(2);
            let m = a.m.unwrap_or(4);
            let p = if a.random {
                let mut rng = seeded_rng(resolve_seed(seed));
                Theorem2Params::random(q, m, &mut rng)?
            } else {
                Theorem2Params {
                    q,
                    m,
                    pi: parse_pi(&a.pi, m)?,
                    mu: a.mu.unwrap_or_else(|| vec![0; m as usize]),
                    mu0: a.mu0.unwrap_or(0),
                }
            };
            theorem2_szccs(&p)?
        }
        "theorem3" => {
            let a: Theorem3Args = serde_json::from_str(&text).context("theorem3 params")?;
            let q = a.q.unwrap_or(2);
            let m = a.m.unwrap_or(5);
            let v = a.v.unwrap_or(3);
            let p = if a.random {
                let mut rng = seeded_rng(resolve_seed(seed));
                Theorem3Params::random(q, m, v, &mut rng)?
            } else {
                Theorem3Params {
                    q,
                    m,
                    v,
                    pi: parse_pi(&a.pi, m)?,
                    lambda: a.lambda.unwrap_or_else(|| vec![0; (m - 1) as usize]),
                    mu: a.mu.unwrap_or_else(|| vec![0; m as usize]),
                    mu0: a.mu0.unwrap_or(0),
                }
            };
            let (s, s_prime) = theorem3_szccs(&p)?;
            match a.which.as_deref() {
                None | Some("s") => s,
                Some("s-prime") => s_prime,
                Some(other) => bail!("which must be \"s\" or \"s-prime\", got {other}"),
            }
        }
        "zadoff-chu" => {
            let a: ZadoffChuArgs = serde_json::from_str(&text).context("zadoff-chu params")?;
            let seqs = a
                .roots
                .iter()
                .map(|&r| zadoff_chu(a.length, r))
                .collect::<Result<Vec<_>, _>>()?;
            let mut set = CodeSet::from_codes(group_codes(seqs, a.codes)?)?;
            set.set_provenance("family", "zadoff-chu");
            set.set_provenance("roots", format!("{:?}", a.roots));
            set
        }
        "random-binary" => {
            let a: RandomBinaryArgs = serde_json::from_str(&text).context("random-binary params")?;
            let base = resolve_seed(seed);
            let count = a.count.unwrap_or(4);
            let seqs = (0..count as u64)
                .map(|i| random_binary(a.length, base.wrapping_add(i)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut set = CodeSet::from_codes(group_codes(seqs, a.codes)?)?;
            set.set_provenance("family", "random-binary");
            set.set_provenance("seed", base);
            set
        }
        "czcp-fixture" => {
            let (a, b) = czcp_fixture();
            // Two codes in the cross layout used by the baseline training
            // matrix: X_1 = (a; b), X_2 = (b; a).
            let mut set = CodeSet::from_codes(vec![vec![a.clone(), b.clone()], vec![b, a]])?;
            set.set_provenance("family", "czcp-fixture");
            set
        }
        other => bail!("unknown family {other}"),
    };
    set.set_provenance("generator", format!("szccs generate {family}"));
    set.set_provenance("params", text.trim());
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&set)?))?;
    Ok(ExitCode::SUCCESS)
}

fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------
// verify / report

fn cmd_verify(
    path: &PathBuf,
    z: usize,
    float: bool,
    exact: bool,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let set = load_codeset(path)?;
    let mode = if float {
        ArithmeticMode::Float
    } else if exact {
        ArithmeticMode::Exact
    } else {
        ArithmeticMode::Auto
    };
    let report = set.verify_szccs_with_mode(z, mode)?;
    let doc = json!({
        "config": {
            "codeset": path.display().to_string(),
            "z": z,
            "mode": mode,
            "params": { "k": set.num_codes(), "m": set.members_per_code(), "l": set.seq_len(), "q": set.q() },
        },
        "report": report,
    });
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_report(path: &PathBuf, float: bool, out: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let set = load_codeset(path)?;
    let mode = if float {
        ArithmeticMode::Float
    } else {
        ArithmeticMode::Auto
    };
    let l = set.seq_len();
    let probe = set.verify_szccs_with_mode(1.min(l - 1).max(1), mode)?;
    let (bound_k, _) = szccs::codeset::bound_check(
        set.num_codes() as u64,
        set.members_per_code() as u64,
        l as u64,
        probe.max_z.max(1) as u64,
    );
    let doc = json!({
        "params": { "k": set.num_codes(), "m": set.members_per_code(), "l": l, "q": set.q() },
        "kind": set.kind(),
        "declared_z": set.z(),
        "max_symmetric_z": probe.max_z,
        "zcz_front": probe.zcz_front,
        "zcz_tail": probe.zcz_tail,
        "bound_max_k_at_max_z": bound_k,
        "optimal_at_max_z": probe.max_z > 0 && set.num_codes() as u64 == bound_k,
        "exact": probe.exact,
        "provenance": set.provenance(),
    });
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// corr

fn cmd_corr(
    path: &PathBuf,
    code_a: usize,
    code_b: usize,
    member_a: Option<usize>,
    member_b: Option<usize>,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let set = load_codeset(path)?;
    let check = |idx: usize, limit: usize, what: &str| -> anyhow::Result<()> {
        if idx >= limit {
            bail!("{what} index {idx} out of range (limit {limit})");
        }
        Ok(())
    };
    check(code_a, set.num_codes(), "code")?;
    check(code_b, set.num_codes(), "code")?;
    let profile: CorrelationProfile = match (member_a, member_b) {
        (Some(ma), Some(mb)) => {
            check(ma, set.members_per_code(), "member")?;
            check(mb, set.members_per_code(), "member")?;
            szccs::corr::full_profile(&set.render(code_a, ma), &set.render(code_b, mb))?
        }
        (None, None) => set.pair_profile(code_a, code_b)?,
        _ => bail!("specify both --member-a and --member-b, or neither"),
    };
    let content = match format {
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            profile.to_csv(&mut buf)?;
            String::from_utf8(buf)?
        }
        OutputFormat::Json => {
            let (lo, hi) = profile.shift_range();
            let rows: Vec<_> = (lo..=hi)
                .map(|u| {
                    let v = profile.at(u);
                    json!({"shift": u, "re": v.re, "im": v.im, "abs": v.norm()})
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows)?)
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// train

fn cmd_train(
    path: &PathBuf,
    nt: usize,
    nactive: usize,
    lambda: usize,
    enlarge: usize,
    codes: Option<Vec<usize>>,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let set = load_codeset(path)?;
    let omega = TrainingMatrix::build_omega(&set, nt, nactive, lambda, codes.as_deref())?;
    let omega = omega.enlarge(enlarge)?;
    let report = omega.check_criteria();
    let doc = json!({
        "config": {
            "codeset": path.display().to_string(),
            "nt": nt, "nactive": nactive, "lambda": lambda,
            "enlarge": enlarge,
            "j_blocks": omega.j_blocks(), "theta": omega.theta(),
            "l_total": omega.l_total(), "energy": omega.energy(),
        },
        "criteria": report,
    });
    match out {
        Some(prefix) => {
            let base = prefix.display().to_string();
            let mut csv = Vec::new();
            omega.to_csv(&mut csv)?;
            fs::write(format!("{base}.omega.csv"), csv)?;
            fs::write(
                format!("{base}.omega.json"),
                serde_json::to_string_pretty(&omega)?,
            )?;
            fs::write(
                format!("{base}.criteria.json"),
                format!("{}\n", serde_json::to_string_pretty(&doc)?),
            )?;
        }
        None => print!("{}\n", serde_json::to_string_pretty(&doc)?),
    }
    Ok(if report.is_optimal() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---------------------------------------------------------------------
// simulate

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum OmegaSource {
    Theorem2 {
        q: u32,
        m: u32,
    },
    Theorem3 {
        q: u32,
        m: u32,
        v: u32,
        which: Option<String>,
    },
    Czcp {},
    ZadoffChu {
        length: usize,
        roots: Vec<u64>,
    },
    RandomBinary {
        length: usize,
        count: Option<usize>,
    },
    CodesetFile {
        path: PathBuf,
    },
}

#[derive(Deserialize)]
struct SimulateFile {
    source: OmegaSource,
    nt: usize,
    nactive: usize,
    lambda: usize,
    #[serde(default)]
    enlarge: Option<usize>,
    #[serde(default)]
    codes: Option<Vec<usize>>,
    ebn0_db: Vec<f64>,
    trials: usize,
    seed: Option<u64>,
    #[serde(default)]
    convention: LengthConvention,
}

fn source_codeset(source: &OmegaSource, seed: u64) -> anyhow::Result<CodeSet> {
    Ok(match source {
        OmegaSource::Theorem2 { q, m } => theorem2_szccs(&Theorem2Params {
            q: *q,
            m: *m,
            pi: Permutation::identity(*m),
            mu: vec![0; *m as usize],
            mu0: 0,
        })?,
        OmegaSource::Theorem3 { q, m, v, which } => {
            let (s, s_prime) = theorem3_szccs(&Theorem3Params {
                q: *q,
                m: *m,
                v: *v,
                pi: Permutation::identity(*m),
                lambda: vec![0; (*m - 1) as usize],
                mu: vec![0; *m as usize],
                mu0: 0,
            })?;
            match which.as_deref() {
                None | Some("s") => s,
                Some("s-prime") => s_prime,
                Some(other) => bail!("which must be \"s\" or \"s-prime\", got {other}"),
            }
        }
        OmegaSource::Czcp {} => {
            let (a, b) = czcp_fixture();
            CodeSet::from_codes(vec![vec![a.clone(), b.clone()], vec![b, a]])?
        }
        OmegaSource::ZadoffChu { length, roots } => {
            let seqs = roots
                .iter()
                .map(|&r| zadoff_chu(*length, r))
                .collect::<Result<Vec<_>, _>>()?;
            let k = if roots.len() % 2 == 0 { roots.len() / 2 } else { 1 };
            CodeSet::from_codes(group_codes(seqs, Some(k))?)?
        }
        OmegaSource::RandomBinary { length, count } => {
            let count = count.unwrap_or(4);
            let seqs = (0..count as u64)
                .map(|i| random_binary(*length, seed.wrapping_add(i)))
                .collect::<Result<Vec<_>, _>>()?;
            let k = if count % 2 == 0 { count / 2 } else { 1 };
            CodeSet::from_codes(group_codes(seqs, Some(k))?)?
        }
        OmegaSource::CodesetFile { path } => load_codeset(path)?,
    })
}

fn cmd_simulate(
    config: &PathBuf,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(config)
        .with_context(|| format!("reading {}", config.display()))?;
    let file: SimulateFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", config.display()))?;
    let seed = resolve_seed(seed.or(file.seed));
    let set = source_codeset(&file.source, seed)?;
    let omega = TrainingMatrix::build_omega(
        &set,
        file.nt,
        file.nactive,
        file.lambda,
        file.codes.as_deref(),
    )?
    .enlarge(file.enlarge.unwrap_or(1))?;
    let cfg = SimConfig {
        ebn0_db: file.ebn0_db.clone(),
        trials: file.trials,
        seed,
        convention: file.convention,
    };
    let result = run_campaign(&omega, &cfg)?;
    let mut content = String::new();
    let resolved = json!({
        "config": config.display().to_string(),
        "seed": seed,
        "nt": file.nt, "nactive": file.nactive, "lambda": file.lambda,
        "j_blocks": omega.j_blocks(), "theta": omega.theta(),
        "trials": file.trials, "convention": file.convention,
    });
    content.push_str(&format!("# {resolved}\n"));
    let mut csv = Vec::new();
    result.to_csv(&mut csv)?;
    content.push_str(&String::from_utf8(csv)?);
    emit(out, &content)?;
    let _ = std::io::stdout().flush();
    Ok(ExitCode::SUCCESS)
}
