//! Subcommand implementations, generic over the hypervector element type.

use std::path::Path;

use hdc::data::load_corpus;
use hdc::experiments::{
    bundle_error, language_identification, record_demo, similarity_profile, BundleErrorConfig,
    LangIdConfig, VARIABLES,
};
use hdc::{BasisKind, Scalar, Seed};

use crate::output::{check_parent, confusion_path, emit, float, metadata_line, render_csv};
use crate::{Cli, Command, Failure, Precision, EXIT_INTERNAL};

pub fn run(cli: &Cli) -> Result<(), Failure> {
    match cli.precision {
        Precision::F32 => run_typed::<f32>(cli),
        Precision::F64 => run_typed::<f64>(cli),
    }
}

fn run_typed<T: Scalar>(cli: &Cli) -> Result<(), Failure> {
    let common = [
        ("seed", cli.seed.to_string()),
        ("precision", cli.precision.as_str().to_owned()),
    ];
    let seed = Seed(cli.seed);
    match &cli.command {
        Command::SimProfile {
            kind,
            count,
            dim,
            out,
        } => {
            let mut flags = vec![
                ("kind", kind.as_str().to_owned()),
                ("count", count.to_string()),
                ("dim", dim.to_string()),
            ];
            flags.extend(common);
            sim_profile::<T>(*kind, *count, *dim, seed, out.as_deref(), &flags)
        }
        Command::BundleError {
            count,
            dim,
            reps,
            baseline,
            out,
        } => {
            let mut flags = vec![
                ("count", count.to_string()),
                ("dim", dim.to_string()),
                ("reps", reps.to_string()),
                ("baseline", baseline.as_str().to_owned()),
            ];
            flags.extend(common);
            let config = BundleErrorConfig {
                max_operands: *count,
                dim: *dim,
                repetitions: *reps,
                seed,
                baseline: *baseline,
            };
            bundle_error_cmd::<T>(&config, out.as_deref(), &flags)
        }
        Command::RecordDemo { dim, out } => {
            let mut flags = vec![("dim", dim.to_string())];
            flags.extend(common);
            record_demo_cmd::<T>(*dim, seed, out.as_deref(), &flags)
        }
        Command::Langid {
            corpus,
            ngram,
            dim,
            out,
            save_model,
        } => {
            let config = LangIdConfig {
                ngram: *ngram,
                dim: *dim,
                seed,
            };
            langid::<T>(corpus, &config, out.as_deref(), save_model.as_deref())
        }
    }
}

fn sim_profile<T: Scalar>(
    kind: BasisKind,
    count: usize,
    dim: usize,
    seed: Seed,
    out: Option<&Path>,
    flags: &[(&str, String)],
) -> Result<(), Failure> {
    if let Some(path) = out {
        check_parent(path)?;
    }
    let matrix = similarity_profile::<T>(kind, count, dim, seed)?;
    let mut header = vec![String::new()];
    header.extend((0..count).map(|j| j.to_string()));
    let rows: Vec<Vec<String>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            std::iter::once(i.to_string())
                .chain(row.iter().map(|&x| float(x)))
                .collect()
        })
        .collect();
    emit(
        out,
        &render_csv(&metadata_line("sim-profile", flags), &header, &rows)?,
    )
}

fn bundle_error_cmd<T: Scalar>(
    config: &BundleErrorConfig,
    out: Option<&Path>,
    flags: &[(&str, String)],
) -> Result<(), Failure> {
    if let Some(path) = out {
        check_parent(path)?;
    }
    let rows: Vec<Vec<String>> = bundle_error::<T>(config)?
        .iter()
        .map(|r| {
            vec![
                r.operands.to_string(),
                r.strategy.as_str().to_owned(),
                float(r.mean_cosine),
            ]
        })
        .collect();
    let header = ["numOperands", "strategy", "meanCosine"].map(String::from);
    emit(
        out,
        &render_csv(&metadata_line("bundle-error", flags), &header, &rows)?,
    )
}

fn record_demo_cmd<T: Scalar>(
    dim: usize,
    seed: Seed,
    out: Option<&Path>,
    flags: &[(&str, String)],
) -> Result<(), Failure> {
    if let Some(path) = out {
        check_parent(path)?;
    }
    let mut rows = Vec::new();
    for query in record_demo::<T>(dim, seed)? {
        for (member, (label, &sim)) in query
            .member_labels()
            .iter()
            .zip(&query.similarities)
            .enumerate()
        {
            rows.push(vec![
                format!("r{}", query.record + 1),
                VARIABLES[query.variable].to_owned(),
                member.to_string(),
                label.clone(),
                float(sim),
                (member == query.stored).to_string(),
            ]);
        }
    }
    let header = [
        "record",
        "variable",
        "member",
        "label",
        "similarity",
        "stored",
    ]
    .map(String::from);
    emit(
        out,
        &render_csv(&metadata_line("record-demo", flags), &header, &rows)?,
    )
}

fn langid<T: Scalar>(
    corpus_root: &Path,
    config: &LangIdConfig,
    out: Option<&Path>,
    save_model: Option<&Path>,
) -> Result<(), Failure> {
    for path in out.into_iter().chain(save_model) {
        check_parent(path)?;
    }
    let corpus = load_corpus(corpus_root)?;
    let (report, model) = language_identification::<T>(&corpus, config)?;

    if report.skipped_train + report.skipped_test > 0 {
        eprintln!(
            "warning: skipped {} training and {} test sentences shorter than {} characters",
            report.skipped_train, report.skipped_test, config.ngram
        );
    }
    println!(
        "accuracy: {:.4} ({}/{})",
        report.accuracy, report.correct, report.test_samples
    );

    if let Some(path) = out {
        let internal = |e: serde_json::Error| Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        };
        let mut metrics = serde_json::to_value(&report).map_err(internal)?;
        metrics["version"] = env!("CARGO_PKG_VERSION").into();
        metrics["precision"] = T::NAME.into();
        metrics["corpus"] = corpus_root.display().to_string().into();
        let json = serde_json::to_string_pretty(&metrics).map_err(internal)? + "\n";
        emit(Some(path), json.as_bytes())?;

        let flags = [
            ("corpus", corpus_root.display().to_string()),
            ("ngram", config.ngram.to_string()),
            ("dim", config.dim.to_string()),
            ("seed", config.seed.0.to_string()),
            ("precision", T::NAME.to_owned()),
        ];
        let mut header = vec!["true\\predicted".to_owned()];
        header.extend(report.labels.iter().cloned());
        let rows: Vec<Vec<String>> = report
            .labels
            .iter()
            .zip(&report.confusion)
            .map(|(label, row)| {
                std::iter::once(label.clone())
                    .chain(row.iter().map(|c| c.to_string()))
                    .collect()
            })
            .collect();
        let csv = render_csv(&metadata_line("langid", &flags), &header, &rows)?;
        emit(Some(&confusion_path(path)), &csv)?;
    }

    if let Some(path) = save_model {
        let encoder = serde_json::json!({
            "kind": "character-ngram",
            "ngram": config.ngram,
            "normalization": "lowercase, whitespace collapsed",
            "quantized": true,
        });
        model.save(path, encoder, Some(config.seed.0))?;
    }
    Ok(())
}
