//! Command-line surface: construct catalog matrices, census their minors,
//! extract block sets, verify design properties, reconcile predictions,
//! and reproduce whole registered tables.
//!
//! Exit codes: 0 ok, 2 verification mismatch, 3 hypothesis violation,
//! 4 input error, 5 internal identity violation.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use minor_designs::constructions::{Family, SrgName};
use minor_designs::designs::{
    blocks_by_minor, extract_blocks, five_subset_property, verify_pbibd, verify_regular_pbd,
    verify_t_design, DesignKind,
};
use minor_designs::error::Error;
use minor_designs::formats;
use minor_designs::matrix::ExactMatrix;
use minor_designs::predictor::{
    check_des_hypotheses, identity_checks, predict_lambda, predict_pbibd, predict_pbibd_three,
    IdentityDepth, PredictedDesign, PredictedValue,
};
use minor_designs::scalar::{parse_scalar, render_scalar, Scalar};
use minor_designs::schemes::{self, AssociationScheme};
use minor_designs::spectrum::minor_spectrum;
use minor_designs::tables::{self, TableOpts};
use report::{design_report_body, emit, prediction_body, Manifest};

#[derive(Parser)]
#[command(name = "minor-designs", version, about = "exact block designs from principal minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog matrix and write it to a matrix file.
    Construct {
        #[arg(long)]
        family: String,
        /// Family parameters as key=value (e.g. --param q=5).
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Census the k-by-k principal minors of a matrix.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Extract the k-subsets with a given minor value into a block file.
    Blocks {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a block file as a t-design by exhaustive counting.
    VerifyDesign {
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify a block file against an association scheme.
    VerifyPbibd {
        #[arg(long)]
        blocks: PathBuf,
        /// Scheme spec: hamming:D, gdd:N, had3:V, srg2:MAT, bgw3:MAT,
        /// roots:MAT, mub:MAT, bh9:MAT, or file:SCHEME.json.
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify the union of block files as a regular pairwise balanced
    /// design.
    VerifyPbd {
        #[arg(long = "blocks")]
        blocks: Vec<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate the closed-form parameter prediction; with --reconcile,
    /// also verify by counting and fail on any mismatch.
    Predict {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        scheme: Option<String>,
        /// Third minor value (its block set supplies the eta vector).
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long)]
        reconcile: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the two-minor, constant-coefficient hypotheses.
    CheckHypotheses {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Check the 0-or-2 five-subset property of a size-4 block file.
    GsCheck {
        #[arg(long)]
        blocks: PathBuf,
    },
    /// Run the internal identity suite on a matrix.
    Identities {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_alpha: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Convenience: verify every minor-value class at several block
    /// sizes and list the designs found. Makes no novelty claims.
    Scan {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmin: usize,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Re-run a registered table of rows and report pass/fail per row.
    Reproduce {
        #[arg(long)]
        table: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// List the registered table tags and exit.
        #[arg(long)]
        list: bool,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::HypothesesNotSatisfied(_) | Error::EtaMissing(_) => 3,
        Error::IdentityViolated(_) => 5,
        _ => 4,
    }
}

fn fail(error: &Error) -> ExitCode {
    let body = json!({
        "error": {
            "kind": format!("{error:?}").split(['(', ' ', '{']).next().unwrap_or("Error"),
            "message": error.to_string(),
        }
    });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
    ExitCode::from(exit_code_for(error))
}

fn parse_family(name: &str, params: &[String]) -> Result<Family, Error> {
    let get = |key: &str| -> Result<u64, Error> {
        for param in params {
            if let Some((k, v)) = param.split_once('=') {
                if k == key {
                    return v
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad value for {key}: {v}")));
                }
            }
        }
        Err(Error::invalid(format!(
            "family {name} needs --param {key}=<value>"
        )))
    };
    Ok(match name {
        "paley_conference" => Family::PaleyConference { q: get("q")? },
        "paley_tournament" => Family::PaleyTournament { q: get("q")? },
        "graphical_hadamard" => Family::GraphicalHadamard { m: get("m")? as u32 },
        "signed_hypercube" => Family::SignedHypercube { d: get("d")? as u32 },
        "bgw_from_conference" => Family::BgwFromConference { q: get("q")? },
        "bgw_block" => Family::BgwBlock { q: get("q")? },
        "hadamard_bordered" => Family::HadamardBordered { v: get("v")? },
        "srg" => {
            let spec = params
                .iter()
                .find_map(|p| p.strip_prefix("name="))
                .ok_or_else(|| Error::invalid("family srg needs --param name=<graph>"))?;
            Family::Srg {
                name: SrgName::parse(spec)?,
            }
        }
        "e7_gram" => Family::E7Gram,
        "e8_gram" => Family::E8Gram,
        "mub_gram" => Family::MubGram,
        "bh9_figure1" => Family::Bh9Figure1,
        "hermitian_bh9" => Family::HermitianBh9,
        "hoggar_seidel" => Family::HoggarSeidel,
        "skew_bush" => Family::SkewBush {
            n: get("n")? as usize,
        },
        other => return Err(Error::UnknownName(format!("family `{other}`"))),
    })
}

fn parse_scheme(spec: &str, manifest: &mut Manifest) -> Result<AssociationScheme, Error> {
    let load = |path: &str, manifest: &mut Manifest| -> Result<ExactMatrix, Error> {
        let path = Path::new(path);
        manifest.hash_input(path);
        formats::load_matrix(path)
    };
    if let Some((kind, arg)) = spec.split_once(':') {
        return match kind {
            "hamming" => schemes::hamming(
                arg.parse()
                    .map_err(|_| Error::invalid(format!("bad hamming dimension {arg}")))?,
            ),
            "gdd" => schemes::group_divisible(
                arg.parse()
                    .map_err(|_| Error::invalid(format!("bad group size {arg}")))?,
            ),
            "had3" => schemes::hadamard_3class(
                arg.parse()
                    .map_err(|_| Error::invalid(format!("bad half size {arg}")))?,
            ),
            "srg2" => schemes::srg_2class(&load(arg, manifest)?),
            "bgw3" => schemes::bgw_3class(&load(arg, manifest)?),
            "roots" => {
                let gram = load(arg, manifest)?;
                let classes: Vec<Vec<Scalar>> = [1i64, 0, -1, -2]
                    .iter()
                    .map(|&x| vec![Scalar::from_int(x)])
                    .collect();
                let labels = ["product-1", "product-0", "product--1", "product--2"]
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                schemes::gram_value(&gram, &classes, labels)
            }
            "mub" => {
                let gram = load(arg, manifest)?;
                let half = Scalar::rational(1, 2);
                let i = Scalar::i();
                let classes = vec![
                    vec![half.clone()],
                    vec![Scalar::zero()],
                    vec![-&half],
                    vec![Scalar::from_int(-1)],
                    vec![i.clone(), -&i],
                    vec![&i * &half, -&(&i * &half)],
                ];
                let labels = [
                    "product-1/2",
                    "product-0",
                    "product--1/2",
                    "product--1",
                    "product-+-i",
                    "product-+-i/2",
                ]
                .iter()
                .map(ToString::to_string)
                .collect();
                schemes::gram_value(&gram, &classes, labels)
            }
            "bh9" => schemes::bh9_scheme(&load(arg, manifest)?),
            "file" => {
                let path = Path::new(arg);
                manifest.hash_input(path);
                formats::load_scheme(path)
            }
            other => Err(Error::UnknownName(format!("scheme kind `{other}`"))),
        };
    }
    Err(Error::invalid(
        "scheme spec must be kind:arg (e.g. hamming:3) or file:scheme.json",
    ))
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct { family, params, out } => {
            let mut manifest = Manifest::new("construct");
            let matrix = parse_family(&family, &params)?.construct()?;
            formats::save_matrix(&matrix, &out)?;
            let body = json!({
                "kind": "construct",
                "family": family,
                "order": matrix.order(),
                "symmetry": matrix.symmetry().tag(),
                "out": out.display().to_string(),
            });
            manifest.hash_input(&out);
            emit(body, &manifest, "ok", None);
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { input, k, json } => {
            let mut manifest = Manifest::new("spectrum");
            manifest.hash_input(&input);
            let matrix = formats::load_matrix(&input)?;
            let spectrum = minor_spectrum(&matrix, k)?;
            let counts: Vec<Value> = spectrum
                .counts
                .iter()
                .map(|(value, count)| json!({ "value": render_scalar(value), "count": count }))
                .collect();
            let body = json!({
                "kind": "spectrum",
                "parameters": { "v": matrix.order(), "k": k },
                "total": spectrum.total() as u64,
                "counts": counts,
            });
            emit(body, &manifest, "ok", json.as_deref());
            Ok(ExitCode::SUCCESS)
        }
        Command::Blocks { input, k, a, out } => {
            let mut manifest = Manifest::new("blocks");
            manifest.hash_input(&input);
            let matrix = formats::load_matrix(&input)?;
            let value = parse_scalar(&a)?;
            let blocks = extract_blocks(&matrix, k, &value)?;
            formats::save_blocks(&blocks, &out)?;
            let body = json!({
                "kind": "blocks",
                "parameters": { "v": matrix.order(), "k": k, "a": render_scalar(&value) },
                "block_count": blocks.len(),
                "out": out.display().to_string(),
            });
            emit(body, &manifest, "ok", None);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyDesign { blocks, t, json } => {
            let mut manifest = Manifest::new("verify-design");
            manifest.hash_input(&blocks);
            let bs = formats::load_blocks(&blocks)?;
            let report = verify_t_design(&bs, t)?;
            let ok = report.kind == DesignKind::TDesign;
            emit(
                design_report_body(&report, &[]),
                &manifest,
                if ok { "ok" } else { "verification-mismatch" },
                json.as_deref(),
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::VerifyPbibd { blocks, scheme, json } => {
            let mut manifest = Manifest::new("verify-pbibd");
            manifest.hash_input(&blocks);
            let bs = formats::load_blocks(&blocks)?;
            let scheme = parse_scheme(&scheme, &mut manifest)?;
            let report = verify_pbibd(&bs, &scheme)?;
            let ok = report.kind != DesignKind::NotADesign;
            emit(
                design_report_body(&report, &[]),
                &manifest,
                if ok { "ok" } else { "verification-mismatch" },
                json.as_deref(),
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::VerifyPbd { blocks, json } => {
            let mut manifest = Manifest::new("verify-pbd");
            let mut sets = Vec::new();
            for path in &blocks {
                manifest.hash_input(path);
                sets.push(formats::load_blocks(path)?);
            }
            let refs: Vec<&_> = sets.iter().collect();
            let report = verify_regular_pbd(&refs)?;
            let ok = report.kind == DesignKind::RegularPbd;
            emit(
                design_report_body(&report, &[]),
                &manifest,
                if ok { "ok" } else { "verification-mismatch" },
                json.as_deref(),
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Predict {
            input,
            k,
            a,
            t,
            scheme,
            c,
            reconcile,
            json,
        } => {
            let mut manifest = Manifest::new("predict");
            manifest.hash_input(&input);
            let matrix = formats::load_matrix(&input)?;
            let value = parse_scalar(&a)?;
            let (prediction, verified): (_, Option<Vec<u64>>) = match &scheme {
                None => {
                    let t = t.ok_or_else(|| Error::invalid("predict needs --t or --scheme"))?;
                    let prediction = predict_lambda(&matrix, k, t, &value)?;
                    let verified = if reconcile {
                        let bs = extract_blocks(&matrix, k, &value)?;
                        let report = verify_t_design(&bs, t)?;
                        if report.kind != DesignKind::TDesign {
                            return Err(Error::IdentityViolated(
                                "verified block set is not a t-design".into(),
                            ));
                        }
                        Some(vec![report.lambda.unwrap_or(0)])
                    } else {
                        None
                    };
                    (prediction, verified)
                }
                Some(spec) => {
                    let scheme = parse_scheme(spec, &mut manifest)?;
                    let spectrum = minor_spectrum(&matrix, k)?;
                    let prediction = if spectrum.counts.len() == 3 {
                        let c_token = c
                            .as_deref()
                            .ok_or_else(|| Error::EtaMissing("three minor values need --c".into()))?;
                        let c_value = parse_scalar(c_token)?;
                        let c_blocks = extract_blocks(&matrix, k, &c_value)?;
                        let c_report = verify_pbibd(&c_blocks, &scheme)?;
                        if c_report.kind == DesignKind::NotADesign {
                            return Err(Error::HypothesesNotSatisfied(
                                "the --c block set does not verify against the scheme".into(),
                            ));
                        }
                        let eta: Vec<u64> = c_report
                            .lambda_classes
                            .unwrap_or_default()
                            .into_iter()
                            .map(|(_, l)| l)
                            .collect();
                        predict_pbibd_three(&matrix, k, &scheme, &value, &c_value, &eta)?
                    } else {
                        predict_pbibd(&matrix, k, &scheme, &value)?
                    };
                    let verified = if reconcile {
                        let bs = extract_blocks(&matrix, k, &value)?;
                        let report = verify_pbibd(&bs, &scheme)?;
                        if report.kind == DesignKind::NotADesign {
                            return Err(Error::IdentityViolated(
                                "verified block set is not a pbibd".into(),
                            ));
                        }
                        Some(
                            report
                                .lambda_classes
                                .unwrap_or_default()
                                .into_iter()
                                .map(|(_, l)| l)
                                .collect(),
                        )
                    } else {
                        None
                    };
                    (prediction, verified)
                }
            };
            let mut body = prediction_body(&prediction, &[]);
            let mut matched = true;
            if let Some(verified) = verified {
                let predicted: Option<Vec<u64>> = match &prediction.design {
                    PredictedDesign::TDesign { lambda, .. } => {
                        lambda.count().map(|c| vec![c])
                    }
                    PredictedDesign::Pbibd { lambdas, .. } => {
                        lambdas.iter().map(PredictedValue::count).collect()
                    }
                    PredictedDesign::RegularPbd { lambda, .. } => {
                        lambda.count().map(|c| vec![c])
                    }
                };
                matched = predicted.as_ref() == Some(&verified);
                if let Value::Object(map) = &mut body {
                    map.insert(
                        "reconciliation".into(),
                        json!({
                            "verified": verified.iter().map(u64::to_string).collect::<Vec<_>>(),
                            "match": matched,
                        }),
                    );
                }
            }
            emit(
                body,
                &manifest,
                if matched { "ok" } else { "verification-mismatch" },
                json.as_deref(),
            );
            Ok(if matched { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::CheckHypotheses { input, k, t } => {
            let mut manifest = Manifest::new("check-hypotheses");
            manifest.hash_input(&input);
            let matrix = formats::load_matrix(&input)?;
            let status = check_des_hypotheses(&matrix, k, t)?;
            let satisfied = status.satisfied();
            let body = json!({
                "kind": "hypothesis-check",
                "parameters": { "v": matrix.order(), "k": k, "t": t },
                "status": match &status {
                    minor_designs::predictor::HypothesisStatus::Satisfied => json!("satisfied"),
                    minor_designs::predictor::HypothesisStatus::Violated { detail } =>
                        json!({ "violated": detail }),
                },
            });
            emit(
                body,
                &manifest,
                if satisfied { "ok" } else { "hypothesis-violation" },
                None,
            );
            Ok(if satisfied { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::GsCheck { blocks } => {
            let mut manifest = Manifest::new("gs-check");
            manifest.hash_input(&blocks);
            let bs = formats::load_blocks(&blocks)?;
            let witness = five_subset_property(&bs)?;
            let ok = witness.is_none();
            let body = json!({
                "kind": "five-subset-check",
                "parameters": { "v": bs.v(), "k": 4 },
                "block_count": bs.len(),
                "witness": witness.map(|w| json!({
                    "subset": w.base.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "contained_blocks": w.base_count,
                })),
            });
            emit(body, &manifest, if ok { "ok" } else { "verification-mismatch" }, None);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Identities { input, max_alpha, max_k } => {
            let mut manifest = Manifest::new("identities");
            manifest.hash_input(&input);
            let matrix = formats::load_matrix(&input)?;
            let mut depth = IdentityDepth::for_order(matrix.order());
            if let Some(a) = max_alpha {
                depth.max_alpha = a;
            }
            if let Some(k) = max_k {
                depth.max_k = k;
            }
            let report = identity_checks(&matrix, depth)?;
            let body = json!({
                "kind": "identity-suite",
                "parameters": { "v": matrix.order() },
                "checks_run": report.checks_run,
            });
            emit(body, &manifest, "ok", None);
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { input, kmin, kmax, t } => {
            let mut manifest = Manifest::new("scan");
            manifest.hash_input(&input);
            let matrix = formats::load_matrix(&input)?;
            let mut rows = Vec::new();
            for k in kmin..=kmax.min(matrix.order()) {
                if t > k {
                    continue;
                }
                for (value, bs) in blocks_by_minor(&matrix, k)? {
                    let report = verify_t_design(&bs, t)?;
                    if report.kind == DesignKind::TDesign {
                        rows.push(json!({
                            "k": k,
                            "a": render_scalar(&value),
                            "t": t,
                            "lambda": report.lambda.map(|l| l.to_string()),
                            "block_count": report.block_count,
                            "degenerate": report.degenerate.map(|d| d.tag()),
                        }));
                    }
                }
            }
            let body = json!({
                "kind": "scan",
                "parameters": { "v": matrix.order(), "t": t },
                "designs": rows,
            });
            emit(body, &manifest, "ok", None);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { table, q, d, m, v, json, list } => {
            let manifest = Manifest::new("reproduce");
            if list {
                for tag in tables::known_tables() {
                    println!("{tag}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let opts = TableOpts { q, d, m, v };
            let rows = tables::reproduce(&table, &opts)?;
            let mut all_ok = true;
            let mut row_values = Vec::new();
            for row in &rows {
                let status = match (&row.skipped, row.passed) {
                    (Some(reason), _) => {
                        println!("SKIP {}: {reason}", row.label);
                        "skip"
                    }
                    (None, true) => {
                        println!("PASS {}: {}", row.label, row.detail);
                        "pass"
                    }
                    (None, false) => {
                        all_ok = false;
                        println!("FAIL {}: {}", row.label, row.detail);
                        "fail"
                    }
                };
                row_values.push(json!({
                    "label": row.label,
                    "status": status,
                    "detail": row.detail,
                    "skipped": row.skipped,
                }));
            }
            if let Some(path) = &json {
                let mut body = json!({
                    "kind": "reproduce",
                    "table": table,
                    "rows": row_values,
                    "citations": [table],
                });
                if let Value::Object(map) = &mut body {
                    map.insert(
                        "manifest".into(),
                        manifest.finish(if all_ok { "ok" } else { "verification-mismatch" }),
                    );
                }
                std::fs::write(path, serde_json::to_string_pretty(&body).expect("serializes"))?;
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(error) => fail(&error),
    }
}
