//! Subcommand implementations.
//!
//! The binary is a single-threaded orchestrator: it sizes the worker pool
//! once, then drives the engine group by group.  Wall-clock budgets apply
//! to the level searches, which checkpoint at level boundaries; a capped
//! search still yields a report, with the affected stats marked incomplete.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use geodav::atoms::{enumerate_atoms, large_davenport, product_one_free_levels, small_davenport};
use geodav::cayley::{digraph_diameter, directed_cayley_diameter};
use geodav::geodesic::{diameter_via_ga, geodesic_levels};
use geodav::oracle::{brute_atoms, brute_ddiam, brute_geodesic_atoms, brute_small_davenport};
use geodav::{
    automorphisms, Automorphisms, ElemSet, Error, Group, LevelKind, LevelSets, SearchOptions,
    Sequence,
};

use crate::error::CliError;
use crate::report::{self, AnalysisReport, LevelCounts, StatReport, StatValue, Timings};
use crate::{cache, AnalyzeArgs, AtomsArgs, DiameterArgs, Format, OracleCheckArgs};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Stat {
    SmallD,
    BigD,
    Gd,
    DcdStar,
    Ddiam,
}

const ALL_STATS: [Stat; 5] = [Stat::SmallD, Stat::BigD, Stat::Gd, Stat::DcdStar, Stat::Ddiam];

fn parse_stats(tokens: &[String]) -> Result<BTreeSet<Stat>, CliError> {
    if tokens.is_empty() {
        return Ok(ALL_STATS.into_iter().collect());
    }
    let mut wanted = BTreeSet::new();
    for token in tokens {
        let stat = match token.trim() {
            "d" => Stat::SmallD,
            "D" => Stat::BigD,
            "GD" => Stat::Gd,
            "dcdstar" => Stat::DcdStar,
            "ddiam" => Stat::Ddiam,
            other => return Err(CliError::UnknownStat(other.to_string())),
        };
        wanted.insert(stat);
    }
    Ok(wanted)
}

/// Hex digest identifying the group up to its normalized multiplication
/// table, so spellings of the same group share caches.
fn fingerprint(g: &Group) -> String {
    hex::encode(Sha256::digest(g.table_bytes()))
}

/// Full automorphism group when it is enumerable, the identity alone
/// otherwise.  Orbit representatives stay correct either way; a smaller
/// symmetry group only makes the level sets larger.
fn aut_or_identity(g: &Group) -> Result<Automorphisms, CliError> {
    match automorphisms(g) {
        Ok(aut) => Ok(aut),
        Err(Error::AutomorphismCapExceeded { .. }) => Ok(Automorphisms::identity_only(g.order())),
        Err(e) => Err(e.into()),
    }
}

fn load_cached(
    dir: Option<&Path>,
    fp: &str,
    kind: LevelKind,
) -> Result<Option<LevelSets>, CliError> {
    match dir {
        Some(dir) => cache::load(dir, fp, kind),
        None => Ok(None),
    }
}

fn store_cached(dir: Option<&Path>, fp: &str, sets: &LevelSets) -> Result<(), CliError> {
    match dir {
        Some(dir) => cache::save(dir, fp, sets),
        None => Ok(()),
    }
}

fn stat_value(r: Result<usize, Error>) -> Result<StatValue, CliError> {
    match r {
        Ok(v) => Ok(StatValue::Complete(v)),
        Err(Error::Incomplete) => Ok(StatValue::Incomplete),
        Err(e) => Err(e.into()),
    }
}

pub fn analyze(args: AnalyzeArgs) -> Result<ExitCode, CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Runtime(format!("failed to size the worker pool: {e}")))?;
    }
    let wanted = parse_stats(&args.stats)?;
    let mut opts = SearchOptions::unlimited();
    if let Some(m) = args.max_length {
        opts = opts.with_max_len(m);
    }
    if let Some(secs) = args.timeout {
        opts = opts.with_deadline(Instant::now() + Duration::from_secs(secs));
    }

    let mut reports = Vec::with_capacity(args.groups.len());
    for spec in &args.groups {
        reports.push(analyze_group(spec, &wanted, &opts, args.cache_dir.as_deref())?);
    }
    reports.sort_by(|a, b| (a.order, a.group_spec.as_str()).cmp(&(b.order, b.group_spec.as_str())));

    let text = match args.format {
        Format::Table => report::emit_table(&reports),
        Format::Csv => report::emit_csv(&reports),
        Format::Json => report::emit_json(&reports),
    };
    println!("{text}");

    if reports.iter().any(AnalysisReport::any_incomplete) {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn analyze_group(
    spec: &str,
    wanted: &BTreeSet<Stat>,
    opts: &SearchOptions,
    cache_dir: Option<&Path>,
) -> Result<AnalysisReport, CliError> {
    let g = Group::from_spec(spec)?;
    let fp = fingerprint(&g);
    let aut = aut_or_identity(&g)?;

    let mut stats = StatReport::default();
    let mut timings = Timings::default();
    let mut counts = LevelCounts::default();

    if wanted.contains(&Stat::SmallD) {
        let start = Instant::now();
        let resume = load_cached(cache_dir, &fp, LevelKind::ProductOneFree)?;
        let sets = product_one_free_levels(&g, &aut, opts, resume)?;
        store_cached(cache_dir, &fp, &sets)?;
        stats.d = Some(stat_value(small_davenport(&sets))?);
        timings.d = Some(start.elapsed().as_secs_f64());
    }

    if wanted.contains(&Stat::BigD) {
        let start = Instant::now();
        let resume = load_cached(cache_dir, &fp, LevelKind::Atoms)?;
        let sets = enumerate_atoms(&g, &aut, opts, resume)?;
        store_cached(cache_dir, &fp, &sets)?;
        counts.atoms = Some(report::level_counts(&sets, &aut));
        stats.big_d = Some(stat_value(large_davenport(&sets))?);
        timings.big_d = Some(start.elapsed().as_secs_f64());
    }

    if wanted.contains(&Stat::Gd) || wanted.contains(&Stat::DcdStar) {
        let start = Instant::now();
        let resume = load_cached(cache_dir, &fp, LevelKind::GeodesicAtoms)?;
        let geo = geodesic_levels(&g, &aut, opts, resume)?;
        store_cached(cache_dir, &fp, geo.level_sets())?;
        counts.geodesic = Some(report::level_counts(geo.level_sets(), &aut));
        let levels_elapsed = start.elapsed().as_secs_f64();
        if wanted.contains(&Stat::Gd) {
            stats.gd = Some(stat_value(geo.gd())?);
            timings.gd = Some(levels_elapsed);
        }
        if wanted.contains(&Stat::DcdStar) {
            let extract = Instant::now();
            stats.dcd_star = Some(stat_value(geo.dcd_star(&g))?);
            let own = extract.elapsed().as_secs_f64();
            timings.dcd_star =
                Some(if wanted.contains(&Stat::Gd) { own } else { levels_elapsed + own });
        }
    }

    if wanted.contains(&Stat::Ddiam) {
        let start = Instant::now();
        stats.ddiam = Some(StatValue::Complete(directed_cayley_diameter(&g, &aut)?));
        timings.ddiam = Some(start.elapsed().as_secs_f64());
    }

    let report = AnalysisReport {
        group_spec: spec.to_string(),
        order: g.order(),
        fingerprint: fp,
        stats,
        level_counts: counts,
        timings,
        engine_version: geodav::VERSION.to_string(),
    };
    check_chain(&report)?;
    Ok(report)
}

/// Cross-checks the stat chain on a fully computed report.  A violation
/// means the engine contradicted itself, which is fatal.
fn check_chain(r: &AnalysisReport) -> Result<(), CliError> {
    let complete = |v: Option<StatValue>| match v {
        Some(StatValue::Complete(x)) => Some(x),
        _ => None,
    };
    let (Some(dcd), Some(d), Some(gd), Some(big), Some(dd)) = (
        complete(r.stats.dcd_star),
        complete(r.stats.d),
        complete(r.stats.gd),
        complete(r.stats.big_d),
        complete(r.stats.ddiam),
    ) else {
        return Ok(());
    };
    if !(dcd <= dd && dd < gd && gd <= big && d < big) {
        return Err(Error::InternalInvariant(format!(
            "stat chain violated for {}: dcd*={dcd} d={d} GD={gd} D={big} ddiam={dd}",
            r.group_spec
        ))
        .into());
    }
    if dcd != dd {
        eprintln!("note: {} has dcd* = {dcd} but ddiam = {dd}", r.group_spec);
    }
    Ok(())
}

pub fn atoms(args: AtomsArgs) -> Result<ExitCode, CliError> {
    let g = Group::from_spec(&args.group)?;
    let aut = aut_or_identity(&g)?;
    let mut opts = SearchOptions::unlimited();
    if let Some(m) = args.max_length {
        opts = opts.with_max_len(m);
    }
    let sets = if args.geodesic {
        geodesic_levels(&g, &aut, &opts, None)?.into_level_sets()
    } else {
        enumerate_atoms(&g, &aut, &opts, None)?
    };
    for (len, level) in sets.levels() {
        println!(
            "level {len}: {} representatives, {} sequences",
            level.rep_count(),
            level.orbit_count(&aut)
        );
        for rep in level.reps() {
            println!("  {rep}");
        }
    }
    match sets.exhausted_at() {
        Some(cutoff) => {
            println!("complete: every level from {cutoff} on is empty");
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("capped before exhaustion");
            Ok(ExitCode::from(3))
        }
    }
}

pub fn diameter(args: DiameterArgs) -> Result<ExitCode, CliError> {
    let g = Group::from_spec(&args.group)?;
    for &index in &args.gens {
        if index >= g.order() {
            return Err(CliError::GeneratorOutOfRange { index, order: g.order() });
        }
    }
    let gens: ElemSet = args.gens.iter().copied().collect();
    let diam = if args.via_ga {
        let aut = aut_or_identity(&g)?;
        let geo = geodesic_levels(&g, &aut, &SearchOptions::unlimited(), None)?;
        diameter_via_ga(&g, &gens, &geo)?
    } else {
        digraph_diameter(&g, &gens)?
    };
    println!("{diam}");
    Ok(ExitCode::SUCCESS)
}

pub fn oracle_check(args: OracleCheckArgs) -> Result<ExitCode, CliError> {
    let g = Group::from_spec(&args.group)?;
    let n = g.order();
    let aut = aut_or_identity(&g)?;
    let opts = SearchOptions::unlimited();
    let mut compared = false;

    if n <= 12 {
        compared = true;

        let engine_atoms = enumerate_atoms(&g, &aut, &opts, None)?;
        let expanded: BTreeSet<Sequence> = engine_atoms
            .levels()
            .flat_map(|(_, level)| level.orbit(&aut))
            .collect();
        let oracle_atoms = brute_atoms(&g, n)?;
        if expanded != oracle_atoms {
            return Err(CliError::OracleMismatch(format!(
                "atom sets differ for {} (engine {}, oracle {})",
                args.group,
                expanded.len(),
                oracle_atoms.len()
            )));
        }
        println!("atoms: ok ({} sequences)", oracle_atoms.len());

        let engine_geo = geodesic_levels(&g, &aut, &opts, None)?;
        let expanded: BTreeSet<Sequence> = engine_geo
            .level_sets()
            .levels()
            .flat_map(|(_, level)| level.orbit(&aut))
            .collect();
        let oracle_geo = brute_geodesic_atoms(&g, n)?;
        if expanded != oracle_geo {
            return Err(CliError::OracleMismatch(format!(
                "geodesic atom sets differ for {} (engine {}, oracle {})",
                args.group,
                expanded.len(),
                oracle_geo.len()
            )));
        }
        println!("geodesic atoms: ok ({} sequences)", oracle_geo.len());

        let engine_d = small_davenport(&product_one_free_levels(&g, &aut, &opts, None)?)?;
        let oracle_d = brute_small_davenport(&g)?;
        if engine_d != oracle_d {
            return Err(CliError::OracleMismatch(format!(
                "d = {engine_d} for {} but the oracle found {oracle_d}",
                args.group
            )));
        }
        println!("d: ok ({engine_d})");
    } else {
        println!("atoms, geodesic atoms, d: skipped (order {n} exceeds the multiset oracle guard)");
    }

    if n <= 16 {
        compared = true;
        let engine_dd = directed_cayley_diameter(&g, &aut)?;
        let oracle_dd = brute_ddiam(&g)?;
        if engine_dd != oracle_dd {
            return Err(CliError::OracleMismatch(format!(
                "ddiam = {engine_dd} for {} but the oracle found {oracle_dd}",
                args.group
            )));
        }
        println!("ddiam: ok ({engine_dd})");
    } else {
        println!("ddiam: skipped (order {n} exceeds the subset oracle guard)");
    }

    if !compared {
        return Err(Error::GuardRail(format!("group order {n} exceeds every oracle guard")).into());
    }
    println!("all comparisons passed");
    Ok(ExitCode::SUCCESS)
}
