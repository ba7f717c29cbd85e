use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aacbrp::eval::knn::Knn;
use aacbrp::eval::synthetic::SyntheticSpec;
use aacbrp::eval::{bench_scaling, evaluate, generate_synthetic, render_table};
use aacbrp::io::{parse_labelled_cases, serialise_cases};
use aacbrp::{
    check_regular, export_framework, parse_casebase, parse_new_cases, serialise_casebase, AacbrP, Casebase,
    Characterisation, ClassicAacbr, ClassicOrder, Classifier, ComponentKind, ConstantDefault, EngineConfig, Error,
    Explainer, ExportFormat, Polarity, PreferenceSequence, Prediction, Report, StagesAacbr, StagesVariant,
};
use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "aacbrp", version, about = "Argumentation-based case classifier with preference orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify each case of a new-cases file.
    Predict {
        #[command(flatten)]
        model: ModelArgs,
        new_cases: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Classify and print the argumentation framework behind each prediction.
    Explain {
        #[command(flatten)]
        model: ModelArgs,
        new_cases: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Validate a casebase and report regularity and coherence.
    Check {
        casebase: PathBuf,
    },
    /// Score the selected model and the baselines on a labelled test file.
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        test: PathBuf,
        /// Positive class; defaults to the default outcome.
        #[arg(long)]
        positive: Option<String>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write a synthetic casebase and labelled test file.
    Gen {
        #[arg(long, default_value_t = 60)]
        cases: usize,
        #[arg(long, default_value_t = 50)]
        test_cases: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0.2)]
        feature_rate: f64,
        #[arg(long, default_value_t = 3)]
        max_stage: u32,
        /// Leave out the stage component.
        #[arg(long)]
        no_stages: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        test_out: Option<PathBuf>,
    },
    /// Time framework construction as one component is replicated m times.
    Bench {
        /// Casebase to replicate; a synthetic one is generated when absent.
        casebase: Option<PathBuf>,
        /// Component to replicate; defaults to the first ordered one.
        #[arg(long)]
        component: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
        m: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct ModelArgs {
    casebase: PathBuf,
    #[arg(long, value_enum, default_value_t = Variant::Aacbrp)]
    variant: Variant,
    /// Order fed to the classic variant.
    #[arg(long, value_enum, default_value_t = ClassicChoice::Lex)]
    classic_order: ClassicChoice,
    /// Outcome name to use as the default outcome.
    #[arg(long)]
    default_outcome: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Aacbrp,
    Classic,
    Stages,
    StagesModified,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassicChoice {
    /// Product of all orders.
    Lex,
    /// Superset over the union of every feature-set component.
    Union,
    /// The first order alone.
    First,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Edges,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

type CliResult<T> = Result<T, Failure>;

fn validation(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

fn from_lib(error: Error) -> Failure {
    let code = match error {
        Error::Parse { .. } => 2,
        _ => 1,
    };
    Failure {
        code,
        error: error.into(),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|error| Failure { code: 2, error })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(|error| Failure { code: 2, error })
}

fn load(path: &Path) -> CliResult<(Casebase, PreferenceSequence)> {
    parse_casebase(&read(path)?)
        .map_err(|e| from_lib(e).context(path))
}

impl Failure {
    fn context(self, path: &Path) -> Self {
        Self {
            code: self.code,
            error: self.error.context(path.display().to_string()),
        }
    }
}

fn load_model(args: &ModelArgs, parallel: bool) -> CliResult<Box<dyn Explainer>> {
    let (mut cb, prefs) = load(&args.casebase)?;
    if let Some(name) = &args.default_outcome {
        cb = cb.with_default_outcome(name).map_err(from_lib)?;
    }
    let model: Box<dyn Explainer> = match args.variant {
        Variant::Aacbrp => Box::new(AacbrP::new(cb, EngineConfig::new(prefs).parallel(parallel)).map_err(from_lib)?),
        Variant::Classic => {
            let order = match args.classic_order {
                ClassicChoice::Lex => ClassicOrder::Lexicographic(prefs),
                ClassicChoice::First => ClassicOrder::Component(prefs.orders()[0]),
                ClassicChoice::Union => {
                    let features: Vec<usize> = prefs
                        .orders()
                        .iter()
                        .map(|o| o.component)
                        .filter(|&c| matches!(cb.schema().components()[c].kind, ComponentKind::FeatureSet))
                        .collect();
                    if features.is_empty() {
                        return Err(validation(anyhow!("the union order needs a feature-set component")));
                    }
                    ClassicOrder::FeatureUnion(features)
                }
            };
            Box::new(ClassicAacbr::new(cb, order).map_err(from_lib)?)
        }
        Variant::Stages => Box::new(StagesAacbr::new(cb, StagesVariant::Verbatim).map_err(from_lib)?),
        Variant::StagesModified => {
            Box::new(StagesAacbr::new(cb, StagesVariant::ModifiedConcision).map_err(from_lib)?)
        }
    };
    Ok(model)
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| validation(anyhow!(e)))
}

/// Predictions in input order, computed on up to `jobs` threads.
fn explain_all(model: &dyn Explainer, queries: &[Characterisation], jobs: usize) -> CliResult<Vec<Prediction>> {
    pool(jobs)?
        .install(|| queries.par_iter().map(|q| model.explain(q)).collect::<Result<Vec<_>, _>>())
        .map_err(from_lib)
}

fn new_cases(path: &Path, model: &dyn Explainer) -> CliResult<(Vec<String>, Vec<Characterisation>)> {
    let cases = parse_new_cases(&read(path)?, model.casebase().schema()).map_err(|e| from_lib(e).context(path))?;
    Ok(cases.into_iter().map(|c| (c.id, c.characterisation)).unzip())
}

fn run(cli: Cli) -> CliResult<String> {
    let mut out = String::new();
    match cli.command {
        Command::Predict { model, new_cases: path, jobs } => {
            let model = load_model(&model, jobs > 1)?;
            let (ids, queries) = new_cases(&path, model.as_ref())?;
            for (id, p) in ids.iter().zip(explain_all(model.as_ref(), &queries, jobs)?) {
                let _ = writeln!(out, "{id}\t{}", p.outcome.name);
            }
        }
        Command::Explain {
            model,
            new_cases: path,
            format,
            jobs,
        } => {
            let model = load_model(&model, jobs > 1)?;
            let (ids, queries) = new_cases(&path, model.as_ref())?;
            let format = match format {
                Format::Dot => ExportFormat::Dot,
                Format::Edges => ExportFormat::EdgeList,
            };
            for (id, p) in ids.iter().zip(explain_all(model.as_ref(), &queries, jobs)?) {
                let grounded: Vec<String> = p.grounded.grounded.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "# {id}: {}", p.outcome.name);
                let _ = writeln!(out, "# grounded: {}", grounded.join(" "));
                out.push_str(&export_framework(&p.framework, format));
            }
        }
        Command::Check { casebase } => {
            let (cb, prefs) = match parse_casebase(&read(&casebase)?) {
                Err(Error::Invalid(violations)) => {
                    for v in &violations {
                        let _ = writeln!(out, "invalid: {v}");
                    }
                    print!("{out}");
                    return Err(validation(anyhow!("{} validation error(s)", violations.len())));
                }
                other => other.map_err(|e| from_lib(e).context(&casebase))?,
            };
            let irregular = check_regular(&cb, &prefs).map_err(from_lib)?;
            let coherence = aacbrp::is_coherent(&cb, &prefs).map_err(from_lib)?;
            let _ = writeln!(out, "cases: {}", cb.len());
            let _ = writeln!(out, "orders: {}", prefs.len());
            let _ = writeln!(out, "regular: {}", if irregular.is_empty() { "yes" } else { "no" });
            for v in &irregular {
                let _ = writeln!(out, "irregular: {v}");
            }
            let _ = writeln!(out, "coherent: {}", if coherence.is_coherent() { "yes" } else { "no" });
            for (a, b) in &coherence.clashes {
                let _ = writeln!(out, "clash: {a} {b}");
            }
            if !irregular.is_empty() {
                print!("{out}");
                return Err(validation(anyhow!("default is not least on every order")));
            }
        }
        Command::Eval {
            model,
            test,
            positive,
            k,
            jobs,
        } => {
            let chosen = load_model(&model, false)?;
            let cb = chosen.casebase().clone();
            let labelled = parse_labelled_cases(&read(&test)?, &cb).map_err(|e| from_lib(e).context(&test))?;
            let positive = match positive {
                None => Polarity::Default,
                Some(name) => cb
                    .outcomes()
                    .polarity_of(&name)
                    .ok_or_else(|| from_lib(Error::UnknownOutcome(name)))?,
            };
            let knn = Knn::new(cb.clone(), k).map_err(from_lib)?;
            let constant = ConstantDefault::new(cb);
            let models: [&dyn Classifier; 3] = [chosen.as_ref(), &knn, &constant];
            let pool = pool(jobs)?;
            let rows = pool
                .install(|| {
                    models
                        .iter()
                        .map(|m| Ok((m.name(), evaluate::<f64>(*m, &labelled, positive, jobs > 1)?)))
                        .collect::<Result<Vec<(String, Report)>, Error>>()
                })
                .map_err(from_lib)?;
            out.push_str(&render_table(&rows));
            out.push('\n');
            for (name, report) in &rows {
                out.push_str(&report.key_values(&format!("{name}.")));
            }
        }
        Command::Gen {
            cases,
            test_cases,
            noise,
            feature_rate,
            max_stage,
            no_stages,
            seed,
            out: casebase_out,
            test_out,
        } => {
            if !(0.0..=1.0).contains(&noise) || !(0.0..=1.0).contains(&feature_rate) {
                return Err(validation(anyhow!("rates must lie in [0, 1]")));
            }
            let data = generate_synthetic(&SyntheticSpec {
                n_cases: cases,
                n_test: test_cases,
                max_stage: (!no_stages).then_some(max_stage),
                feature_rate,
                noise,
                seed,
                ..SyntheticSpec::default()
            })
            .map_err(from_lib)?;
            let casebase = serialise_casebase(&data.casebase, &data.preferences);
            let test = serialise_cases(data.casebase.schema(), &data.test, Some(data.casebase.outcomes()));
            match casebase_out {
                Some(path) => write(&path, &casebase)?,
                None => out.push_str(&casebase),
            }
            if let Some(path) = test_out {
                write(&path, &test)?;
            }
            for (a, b) in &data.clashes {
                eprintln!("clash: {a} {b}");
            }
        }
        Command::Bench {
            casebase,
            component,
            m,
            cases,
            repeats,
            seed,
        } => {
            let (cb, prefs) = match casebase {
                Some(path) => load(&path)?,
                None => {
                    let data = generate_synthetic(&SyntheticSpec {
                        n_cases: cases,
                        n_test: 0,
                        seed,
                        ..SyntheticSpec::default()
                    })
                    .map_err(from_lib)?;
                    (data.casebase, data.preferences)
                }
            };
            let index = match component {
                Some(name) => cb
                    .schema()
                    .index_of(&name)
                    .ok_or_else(|| from_lib(Error::UnknownComponent(name)))?,
                None => prefs.orders()[0].component,
            };
            let _ = writeln!(out, "m\torders\tmedian_us\tattacks");
            for p in bench_scaling(&cb, &prefs, index, &m, repeats).map_err(from_lib)? {
                let _ = writeln!(out, "{}\t{}\t{}\t{}", p.m, p.orders, p.median.as_micros(), p.casebase_attacks);
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
