use std::path::Path;
use std::time::Duration;

use itertools::Itertools;
use kuniform::algebra::SymbolGroup;
use kuniform::constructions::{
    is_difference_scheme, mixture_from_partition, partition_search, scheme_to_mixed_state_blocks,
    search_difference_scheme, PartitionSearch,
};
use kuniform::format;
use kuniform::oa::{
    is_irredundant, max_strength, min_hamming_distance, verify_mixed_state_partition, verify_strength,
    OrthogonalPartition,
};
use kuniform::quantum::{is_k_uniform, max_uniformity_from, mixture_purity, reduced_density_dense, ReductionLimits};
use kuniform::recipes;
use kuniform::scalar::purity_string;
use kuniform::search::{SearchBudget, SearchOutcome};
use kuniform::{Error, ExactMixture, ExactOperator, GaussianRational, Rational};

use crate::{exit, BudgetArgs, Cli, Command, Recipe, Report, SearchCommand, StateArgs};

#[derive(Debug)]
pub(crate) struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: exit::PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Io { .. } | Error::Fixture { .. } => exit::PARSE,
            _ => exit::FAILED,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(Report, u8), CliError>;

pub(crate) fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::VerifyGen { file, k, quantum } => verify_gen(file, *k, *quantum),
        Command::VerifyOa {
            file,
            strength,
            md,
            irredundant,
        } => verify_oa(file, *strength, *md, *irredundant),
        Command::VerifyDs { file } => verify_ds(file),
        Command::State(args) => state(args),
        Command::Reproduce { table } => {
            let rep = crate::reproduce::run(*table);
            let code = if rep.mismatches() == 0 { exit::OK } else { exit::FAILED };
            Ok((rep.to_report(), code))
        }
        Command::Search(s) => search(s),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
        .into()
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
        .into()
    })
}

fn finish(report: Report) -> Outcome {
    let code = if report.failures() == 0 { exit::OK } else { exit::FAILED };
    Ok((report, code))
}

fn verify_gen(file: &Path, k: Option<usize>, quantum: bool) -> Outcome {
    let g = format::parse_generator(&read(file)?)?;
    let (m, n) = (g.generators(), g.qubits());
    let mut r = Report::new();
    r.field("file", file.display());
    r.field("qubits", n);
    r.field("generators", m);
    r.check("(a) commuting", g.check_commuting());
    let independent = r.check("(b) independent", g.check_independence()?);
    let max_k = if independent { Some(g.max_k()?) } else { None };
    let target = k.or(max_k.filter(|&v| v > 0));
    if let Some(k) = target {
        let ok = (1..n).contains(&k) && g.check_uniformity(k)?;
        r.check(format!("(c) uniformity k={k}"), ok);
    } else {
        r.check("(c) uniformity", false);
    }
    match max_k {
        Some(v) => r.field("max_k", v),
        None => r.field("max_k", "n/a"),
    }
    let (pn, pd) = g.predicted_purity();
    r.field("purity", purity_string(&Rational::new(pn as i128, pd as i128)));
    if quantum && r.failures() == 0 {
        let k = target.unwrap_or(1);
        let rho: ExactOperator = g.synthesize_density()?;
        let purity = rho.purity()?;
        let scaled = rho.scaled(&purity);
        r.check("rho hermitian", rho.is_hermitian());
        r.check(
            "rho trace 1",
            rho.trace() == GaussianRational::new(Rational::from_integer(1), Rational::default()),
        );
        r.check("rho^2 = purity * rho", rho.matmul(&rho)? == scaled);
        r.check("measured purity", purity == Rational::new(pn as i128, pd as i128));
        let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let mut good = 0;
        for s in &subsets {
            if reduced_density_dense(&rho, s)?.is_maximally_mixed() {
                good += 1;
            }
        }
        r.field(
            format!("{k}-party reductions maximally mixed"),
            format!("{good}/{}", subsets.len()),
        );
        r.check("dense reductions", good == subsets.len());
        let mix: ExactMixture = g.mixture()?;
        r.check("decomposition orthogonal", mix.first_overlap().is_none());
        let rebuilt = ExactOperator::from_mixture(&mix)?;
        r.check("decomposition reconstructs rho", rebuilt == rho);
    }
    finish(r)
}

fn verify_oa(file: &Path, strength: Option<usize>, md: Option<usize>, irredundant: Option<usize>) -> Outcome {
    let a = format::parse_oa(&read(file)?)?;
    let measured_md = min_hamming_distance(&a);
    let mut r = Report::new();
    r.field("file", file.display());
    r.field("runs", a.rows());
    r.field("factors", a.cols());
    r.field("levels", a.levels());
    r.field("measured strength", max_strength(&a));
    r.field("measured md", measured_md);
    r.check(
        format!("header strength {}", a.claimed_strength()),
        verify_strength(&a, a.claimed_strength()),
    );
    if let Some(t) = strength {
        r.check(format!("strength {t}"), verify_strength(&a, t));
    }
    if let Some(x) = md {
        r.check(format!("md >= {x}"), measured_md.at_least(x));
    }
    if let Some(k) = irredundant {
        let ok = matches!(is_irredundant(&a, k), Ok(true));
        r.check(format!("irredundant k={k}"), ok);
    }
    finish(r)
}

fn verify_ds(file: &Path) -> Outcome {
    let ds = format::parse_ds(&read(file)?)?;
    let a = ds.array();
    let mut r = Report::new();
    r.field("file", file.display());
    r.field("source", ds.provenance());
    r.field(
        "scheme",
        format!("D_{}({},{},{})", ds.strength(), a.rows(), a.cols(), a.levels()),
    );
    r.check(
        format!("difference scheme strength {}", ds.strength()),
        is_difference_scheme(a, ds.strength()),
    );
    let top = (ds.strength()..=a.cols())
        .take_while(|&j| is_difference_scheme(a, j))
        .last();
    r.field("largest scheme strength", top.unwrap_or(0));
    if ds.strength() < a.cols() {
        let p = scheme_to_mixed_state_blocks(&ds)?;
        r.field(
            "expanded array",
            format!(
                "OA({},{},{},{})",
                p.parent().rows(),
                a.cols(),
                a.levels(),
                ds.strength()
            ),
        );
        r.check("expanded strength", verify_strength(p.parent(), ds.strength()));
        let report = verify_mixed_state_partition(&p, ds.strength());
        r.check("blocks at distance N", report.passed());
        r.field("purity", format!("1/{}", p.len()));
    }
    finish(r)
}

fn partition_from_recipe(recipe: Recipe, prefix: usize) -> Result<(OrthogonalPartition, usize), CliError> {
    Ok(match recipe {
        Recipe::ComplementPair => (recipes::complement_pair()?, 3),
        Recipe::EvenWeight => (recipes::even_weight_singletons()?, 4),
        Recipe::PrintedScheme => (recipes::printed_scheme_blocks()?, 3),
        Recipe::PrintedSchemeInner => (recipes::printed_scheme_inner_blocks()?, 3),
        Recipe::Shift => (recipes::shift_partition()?, 3),
        Recipe::Golay => (recipes::golay_prefix(prefix)?, 4),
        Recipe::Product => (recipes::ququart_product()?, 6),
    })
}

/// Largest uniformity, scanning from `hint`. Returns `(k, exact)`; `exact`
/// is false when the reduction guard stopped the upward scan.
pub(crate) fn uniformity_scan(
    mix: &ExactMixture,
    hint: usize,
    limits: ReductionLimits,
) -> Result<(usize, bool), CliError> {
    let n = mix.parties();
    if n < 2 {
        return Ok((0, true));
    }
    let hint = hint.clamp(1, n - 1);
    match is_k_uniform(mix, hint, limits) {
        Ok(rep) if rep.is_uniform() => {}
        Ok(_) => return Ok((max_uniformity_from(mix, hint, limits)?, true)),
        Err(Error::ResourceGuard(_)) => return Ok((0, false)),
        Err(e) => return Err(e.into()),
    }
    let mut k = hint;
    while k + 1 < n {
        match is_k_uniform(mix, k + 1, limits) {
            Ok(rep) if rep.is_uniform() => k += 1,
            Ok(_) => return Ok((k, true)),
            Err(Error::ResourceGuard(_)) => return Ok((k, false)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok((k, true))
}

pub(crate) fn uniformity_label((k, exact): (usize, bool)) -> String {
    if exact {
        k.to_string()
    } else {
        format!(">={k}")
    }
}

fn state(args: &StateArgs) -> Outcome {
    let mut r = Report::new();
    let (mix, hint): (ExactMixture, usize) = if let Some(files) = &args.from_partition {
        let parent = format::parse_oa(&read(&files[0])?)?;
        let p = format::parse_partition(&read(&files[1])?, parent)?;
        let k = args.check_k.unwrap_or(p.parent().claimed_strength());
        r.field("source", "partition");
        partition_checks(&mut r, &p, k);
        (mixture_from_partition(&p)?, k)
    } else if let Some(file) = &args.from_scheme {
        let ds = format::parse_ds(&read(file)?)?;
        let p = scheme_to_mixed_state_blocks(&ds)?;
        r.field("source", format!("scheme ({})", ds.provenance()));
        partition_checks(&mut r, &p, ds.strength());
        (mixture_from_partition(&p)?, ds.strength())
    } else if let Some(file) = &args.from_gen {
        let g = format::parse_generator(&read(file)?)?;
        g.validate()?;
        r.field("source", "generators");
        (g.mixture()?, g.max_k()?)
    } else if let Some(recipe) = args.recipe {
        let (p, k) = partition_from_recipe(recipe, args.prefix)?;
        r.field(
            "source",
            format!(
                "recipe {}",
                clap::ValueEnum::to_possible_value(&recipe)
                    .map(|v| v.get_name().to_string())
                    .unwrap_or_default()
            ),
        );
        partition_checks(&mut r, &p, k);
        (mixture_from_partition(&p)?, k)
    } else {
        return Err(CliError::usage(
            "choose one of --from-partition, --from-scheme, --from-gen, --recipe",
        ));
    };
    r.field("local dimension", mix.local_dim());
    r.field("parties", mix.parties());
    r.field("components", mix.len());
    r.check("components orthogonal", mix.first_overlap().is_none());
    r.field("purity", purity_string(&mixture_purity(&mix)));
    let limits = ReductionLimits::with_max_dim(args.max_dim);
    if let Some(k) = args.check_k {
        if k == 0 || k >= mix.parties() {
            return Err(CliError::usage(format!(
                "--check-k {k} must lie in 1..{}",
                mix.parties()
            )));
        }
        let rep = is_k_uniform(&mix, k, limits)?;
        r.field(format!("{k}-party reductions checked"), rep.subsets_checked);
        if let Some(w) = &rep.witness {
            r.field("witness subset", format!("{:?}", w.subset));
        }
        r.check(format!("{k}-uniform"), rep.is_uniform());
    }
    let scan = uniformity_scan(&mix, args.check_k.unwrap_or(hint), limits)?;
    r.field("max uniformity", uniformity_label(scan));
    if let Some(path) = &args.export {
        write(path, &format::write_state(&mix)?)?;
        r.field("exported", path.display());
    }
    finish(r)
}

fn partition_checks(r: &mut Report, p: &OrthogonalPartition, k: usize) {
    let rep = verify_mixed_state_partition(p, k);
    r.field("blocks", p.len());
    r.field("block size", p.block_size());
    r.check(format!("parent strength {k}"), rep.parent_strength_ok);
    r.check(
        format!("block distance >= {}", k + 1),
        rep.blocks_failing_distance.is_empty(),
    );
    r.check("rows distinct", rep.duplicate_rows.is_none());
}

fn budget(b: &BudgetArgs) -> SearchBudget {
    let base = SearchBudget::time(Duration::from_secs(b.seconds));
    match b.budget {
        Some(n) => base.with_nodes(n),
        None => base,
    }
}

fn outcome_code<T>(o: &SearchOutcome<T>) -> u8 {
    match o {
        SearchOutcome::Found(_) => exit::OK,
        SearchOutcome::ProvenNonexistent => exit::FAILED,
        SearchOutcome::BudgetExhausted => exit::BUDGET,
    }
}

fn search(cmd: &SearchCommand) -> Outcome {
    let mut r = Report::new();
    match cmd {
        SearchCommand::Ds {
            runs,
            factors,
            levels,
            strength,
            budget: b,
            output,
        } => {
            let res = search_difference_scheme(*runs, *factors, *levels, *strength, budget(b))?;
            r.field("search", format!("D_{strength}({runs},{factors},{levels})"));
            r.field("result", res.outcome.label());
            r.field("nodes", res.nodes);
            let mut code = outcome_code(&res.outcome);
            if let SearchOutcome::Found(ds) = &res.outcome {
                let group = SymbolGroup::new(*levels)?;
                let ok = kuniform::constructions::verify_difference_scheme(ds.array(), *strength, &group);
                if !r.check("scheme verifies", ok) {
                    code = exit::FAILED;
                }
                emit(&mut r, output.as_deref(), &format::write_ds(ds))?;
            }
            Ok((r, code))
        }
        SearchCommand::Partition {
            oa,
            blocks,
            k,
            block_strength,
            budget: b,
            output,
        } => {
            let a = format::parse_oa(&read(oa)?)?;
            let params = PartitionSearch {
                blocks: *blocks,
                k: *k,
                block_strength: *block_strength,
            };
            let res = partition_search(&a, params, budget(b))?;
            r.field("search", format!("{blocks} blocks, distance >= {}", k + 1));
            r.field("result", res.outcome.label());
            r.field("nodes", res.nodes);
            let mut code = outcome_code(&res.outcome);
            if let SearchOutcome::Found(p) = &res.outcome {
                let rep = verify_mixed_state_partition(p, *k);
                if !r.check("partition verifies", rep.passed() && p.verify()) {
                    code = exit::FAILED;
                }
                emit(&mut r, output.as_deref(), &format::write_partition(p))?;
            }
            Ok((r, code))
        }
    }
}

fn emit(r: &mut Report, output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write(path, text)?;
            r.field("written", path.display());
        }
        None => r.raw(text),
    }
    Ok(())
}
