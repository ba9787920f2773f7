use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;
use solvquot::cohomology::{build_system, cohomology_report, CohomologyReport, SignConvention};
use solvquot::counting::{aut_count, epi_count, epi_maps, epi_strategy, hom_count, CountConfig, CountReport};
use solvquot::groups::{builtin_group, SOLVABLE_CATALOG};
use solvquot::lattice::{all_subgroups_with_cap, moebius_variants};
use solvquot::subgrowth::{ak_sequence, braid_table, braid_table_tsv, growth_with_normal, BraidRow, GrowthConfig};
use solvquot_oracle::{
    count_sources, count_targets, lift_sources, lift_targets, verify_counts, verify_lifts, CheckRow, CheckStatus,
    OracleBudget,
};

use crate::input::{load_source, load_target, split_list, CliError, CliResult};
use crate::{Caps, Cli, Command};

type Config = BTreeMap<&'static str, String>;

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'static str,
    config: &'a Config,
    result: &'a T,
}

struct Out<'a> {
    cli: &'a Cli,
    command: &'static str,
    config: Config,
}

impl Out<'_> {
    fn set(&mut self, key: &'static str, value: impl ToString) {
        self.config.insert(key, value.to_string());
    }

    fn caps(&mut self, caps: &Caps) {
        self.set("hom_cap", caps.hom_cap);
        self.set("frontier_cap", caps.frontier_cap);
        self.set("aut_work", caps.aut_work);
    }

    /// The report as pretty JSON, or as TSV under `# key\tvalue` header lines.
    fn render<T: Serialize>(&self, result: &T, tsv: impl FnOnce() -> String) -> String {
        if self.cli.tsv {
            let mut s = format!("# command\t{}\n", self.command);
            for (k, v) in &self.config {
                let _ = writeln!(s, "# {k}\t{v}");
            }
            s.push_str(&tsv());
            s
        } else {
            let r = Report { command: self.command, config: &self.config, result };
            serde_json::to_string_pretty(&r).expect("reports serialize") + "\n"
        }
    }
}

fn tsv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join("\t") + "\n";
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn run(cli: &Cli) -> CliResult<String> {
    let name = match &cli.command {
        Command::Hom { .. } => "hom",
        Command::Epi { .. } => "epi",
        Command::Delta { .. } => "delta",
        Command::Aut { .. } => "aut",
        Command::Cocycle { .. } => "cocycle",
        Command::Moebius { .. } => "moebius",
        Command::Growth { .. } => "growth",
        Command::Verify { .. } => "verify",
        Command::Catalog { .. } => "catalog",
    };
    let mut out = Out { cli, command: name, config: Config::new() };
    out.set("format", if cli.tsv { "tsv" } else { "json" });
    match &cli.command {
        Command::Hom { io, caps } => {
            out.set("source", &io.source);
            out.set("target", &io.target);
            out.caps(caps);
            hom(&out, &io.source, &io.target, &caps.config())
        }
        Command::Epi { io, caps, strategy } => {
            out.set("source", &io.source);
            out.set("target", &io.target);
            out.set("strategy", strategy);
            out.caps(caps);
            epi(&out, &io.source, &io.target, strategy, &caps.config())
        }
        Command::Delta { io, caps } => {
            out.set("source", &io.source);
            out.set("target", &io.target);
            out.caps(caps);
            delta(&out, &io.source, &io.target, &caps.config())
        }
        Command::Aut { target, caps } => {
            out.set("target", target);
            out.caps(caps);
            aut(&out, target, &caps.config())
        }
        Command::Cocycle { io, caps, level } => {
            out.set("source", &io.source);
            out.set("target", &io.target);
            out.set("level", level.map_or("top".to_string(), |l| l.to_string()));
            out.caps(caps);
            cocycle(&out, &io.source, &io.target, *level, &caps.config())
        }
        Command::Moebius { target, variant, lattice_cap } => {
            out.set("target", target);
            out.set("variant", variant);
            out.set("lattice_cap", lattice_cap);
            moebius(&out, target, variant, *lattice_cap)
        }
        Command::Growth { source, kmax, normal, table2, ns, budget_secs, max_k, search_cap, caps } => {
            let gcfg = GrowthConfig { max_k: *max_k, search_cap: *search_cap };
            out.set("kmax", kmax);
            out.set("max_k", max_k);
            out.set("search_cap", search_cap);
            if *table2 {
                out.set("ns", ns);
                out.set("budget_secs", budget_secs.map_or("none".to_string(), |b| b.to_string()));
                table2_cmd(&out, ns, *kmax, &gcfg, *budget_secs)
            } else {
                let source = source.as_deref().expect("clap requires --source");
                out.set("source", source);
                out.set("normal", normal);
                if *normal {
                    out.caps(caps);
                }
                growth(&out, source, *kmax, *normal, &gcfg, &caps.config())
            }
        }
        Command::Verify { sources, targets, letter_ops, timeout_secs, no_lifts, caps } => {
            let budget =
                OracleBudget { max_letter_ops: *letter_ops, timeout: timeout_secs.map(Duration::from_secs) };
            out.set("sources", sources.as_deref().unwrap_or("default"));
            out.set("targets", targets.as_deref().unwrap_or("default"));
            out.set("letter_ops", letter_ops);
            out.set("timeout_secs", timeout_secs.map_or("none".to_string(), |t| t.to_string()));
            out.set("lifts", !no_lifts);
            out.caps(caps);
            verify(&out, sources.as_deref(), targets.as_deref(), &budget, !no_lifts, &caps.config())
        }
        Command::Catalog { dump } => match dump {
            Some(spec) => Ok(builtin_group(spec)?.table().to_text()),
            None => catalog(&out),
        },
    }
}

#[derive(Serialize)]
struct HomResult {
    source: String,
    target: String,
    hom: u128,
}

fn hom(out: &Out, source: &str, target: &str, cfg: &CountConfig) -> CliResult<String> {
    let p = load_source(source)?;
    let tw = load_target(target)?;
    let r = HomResult { source: source.into(), target: tw.name().into(), hom: hom_count(&p, &tw, cfg)? };
    Ok(out.render(&r, || tsv_rows(&["source", "target", "hom"], [vec![r.source.clone(), r.target.clone(), r.hom.to_string()]])))
}

#[derive(Serialize)]
struct EpiResult {
    #[serde(flatten)]
    report: CountReport,
    strategy: String,
    strategy_epi: u128,
}

fn epi(out: &Out, source: &str, target: &str, strategy: &str, cfg: &CountConfig) -> CliResult<String> {
    let p = load_source(source)?;
    let tw = load_target(target)?;
    let strat = epi_strategy(strategy)?;
    let report = epi_count(&p, &tw, source, cfg)?;
    let strategy_epi = if strategy == "lifting" { report.epi } else { strat.epi(&p, &tw, cfg)? };
    if strategy_epi != report.epi {
        return Err(solvquot::Error::Inconsistent(format!(
            "strategy {strategy} gives {strategy_epi}, lifting gives {}",
            report.epi
        ))
        .into());
    }
    let r = EpiResult { report, strategy: strategy.into(), strategy_epi };
    Ok(out.render(&r, || {
        let c = &r.report;
        let hom = c.hom.map_or("-".to_string(), |h| h.to_string());
        let mut s = tsv_rows(
            &["source", "target", "hom", "epi", "aut", "delta"],
            [vec![c.source.clone(), c.target.clone(), hom, c.epi.to_string(), c.aut.to_string(), c.delta.to_string()]],
        );
        s.push('\n');
        let header = [
            "level", "q", "s", "zeta", "kappa", "alpha", "split", "epi_in", "epi_out", "liftable", "lifts", "complements",
        ];
        s.push_str(&tsv_rows(
            &header,
            c.levels.iter().enumerate().map(|(i, l)| {
                vec![
                    i.to_string(),
                    l.q.to_string(),
                    l.s.to_string(),
                    l.zeta.to_string(),
                    l.kappa.to_string(),
                    l.alpha.to_string(),
                    l.split.to_string(),
                    l.epi_in.to_string(),
                    l.epi_out.to_string(),
                    l.liftable.to_string(),
                    l.lifts.to_string(),
                    l.complements.to_string(),
                ]
            }),
        ));
        s
    }))
}

#[derive(Serialize)]
struct DeltaResult {
    source: String,
    target: String,
    epi: u128,
    aut: u128,
    delta: u128,
}

fn delta(out: &Out, source: &str, target: &str, cfg: &CountConfig) -> CliResult<String> {
    let p = load_source(source)?;
    let tw = load_target(target)?;
    let cfg = CountConfig { with_hom: false, ..*cfg };
    let c = epi_count(&p, &tw, source, &cfg)?;
    let r = DeltaResult { source: c.source, target: c.target, epi: c.epi, aut: c.aut, delta: c.delta };
    Ok(out.render(&r, || {
        tsv_rows(
            &["source", "target", "epi", "aut", "delta"],
            [vec![r.source.clone(), r.target.clone(), r.epi.to_string(), r.aut.to_string(), r.delta.to_string()]],
        )
    }))
}

#[derive(Serialize)]
struct AutResult {
    target: String,
    order: usize,
    aut: u128,
    route: &'static str,
}

fn aut(out: &Out, target: &str, cfg: &CountConfig) -> CliResult<String> {
    let tw = load_target(target)?;
    let (aut, route) = aut_count(&tw, cfg)?;
    let r = AutResult { target: tw.name().into(), order: tw.order(), aut, route };
    Ok(out.render(&r, || {
        tsv_rows(&["target", "order", "aut", "route"], [vec![r.target.clone(), r.order.to_string(), r.aut.to_string(), route.into()]])
    }))
}

#[derive(Serialize)]
struct CocycleEntry {
    rho: Vec<u32>,
    matrix: Vec<Vec<u64>>,
    rhs: Vec<u64>,
    cohomology: CohomologyReport,
}

#[derive(Serialize)]
struct CocycleResult {
    source: String,
    target: String,
    level: usize,
    q: u32,
    s: usize,
    epimorphisms: Vec<CocycleEntry>,
}

fn cocycle(out: &Out, source: &str, target: &str, level: Option<usize>, cfg: &CountConfig) -> CliResult<String> {
    let p = load_source(source)?;
    let tw = load_target(target)?;
    let level = level.unwrap_or(tw.depth().saturating_sub(1));
    if level >= tw.depth() {
        return Err(CliError::Input(format!("level {level} out of range, {} has {} layers", tw.name(), tw.depth())));
    }
    let base = tw.level_table(level);
    let layer = tw.layer(level);
    let mut entries = Vec::new();
    for rho in epi_maps(&p, &tw, level, cfg)? {
        let sys = build_system(&p, base, &rho, layer, SignConvention::Twisted)?;
        let cohomology = cohomology_report(&p, base, &rho, layer)?;
        entries.push(CocycleEntry { rho, matrix: sys.matrix, rhs: sys.rhs, cohomology });
    }
    let r = CocycleResult {
        source: source.into(),
        target: tw.name().into(),
        level,
        q: layer.q,
        s: layer.s,
        epimorphisms: entries,
    };
    Ok(out.render(&r, || {
        let mut s = String::new();
        let cols = p.num_generators() * layer.s;
        for e in &r.epimorphisms {
            let _ = writeln!(s, "# rho\t{}", join(&e.rho, ","));
            let _ = writeln!(s, "# epsilon\t{}\tz1\t{}\tb1\t{}", e.cohomology.epsilon, e.cohomology.z1, e.cohomology.b1);
            let mut header = vec!["row".to_string()];
            header.extend((0..cols).map(|c| format!("x{}.{}", c / layer.s + 1, c % layer.s + 1)));
            header.push("rhs".into());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            s.push_str(&tsv_rows(
                &header,
                e.matrix.iter().zip(&e.rhs).enumerate().map(|(i, (row, b))| {
                    let mut v = vec![format!("r{}.{}", i / layer.s + 1, i % layer.s + 1)];
                    v.extend(row.iter().map(|x| x.to_string()));
                    v.push(b.to_string());
                    v
                }),
            ));
        }
        s
    }))
}

#[derive(Serialize)]
struct MoebiusRow {
    index: usize,
    order: usize,
    generators: Vec<u32>,
    normal: bool,
    mu: i64,
}

#[derive(Serialize)]
struct MoebiusResult {
    target: String,
    variant: String,
    subgroups: Vec<MoebiusRow>,
}

fn moebius(out: &Out, target: &str, variant: &str, cap: usize) -> CliResult<String> {
    let tw = load_target(target)?;
    let v = moebius_variants()
        .iter()
        .find(|v| v.name() == variant)
        .ok_or_else(|| CliError::Input(format!("unknown Möbius variant `{variant}`")))?;
    let l = all_subgroups_with_cap(tw.table(), cap)?;
    let mu = v.compute(&l, &tw)?;
    let subgroups = (0..l.len())
        .map(|i| MoebiusRow {
            index: i,
            order: l.subgroup(i).order,
            generators: l.subgroup(i).gens.clone(),
            normal: l.is_normal(i),
            mu: mu.values[i],
        })
        .collect();
    let r = MoebiusResult { target: tw.name().into(), variant: variant.into(), subgroups };
    Ok(out.render(&r, || {
        tsv_rows(
            &["order", "generators", "mu"],
            r.subgroups.iter().map(|s| vec![s.order.to_string(), join(&s.generators, ","), s.mu.to_string()]),
        )
    }))
}

fn growth(
    out: &Out,
    source: &str,
    kmax: usize,
    normal: bool,
    gcfg: &GrowthConfig,
    cfg: &CountConfig,
) -> CliResult<String> {
    let p = load_source(source)?;
    let mut r = if normal { growth_with_normal(&p, kmax, gcfg, cfg)? } else { ak_sequence(&p, kmax, gcfg)? };
    r.source = source.into();
    if out.cli.verbose {
        for (k, t) in r.timing.iter().enumerate() {
            eprintln!("k={}\t{:.3}s", k + 1, t.as_secs_f64());
        }
    }
    Ok(out.render(&r, || {
        let mut header = vec!["k", "h_k", "t_k", "a_k"];
        if r.normal.is_some() {
            header.push("normal_k");
        }
        tsv_rows(
            &header,
            (0..r.a.len()).map(|i| {
                let mut v = vec![(i + 1).to_string(), r.h[i].to_string(), r.t[i].to_string(), r.a[i].to_string()];
                if let Some(n) = &r.normal {
                    v.push(n.get(i).map_or("-".to_string(), |x| x.to_string()));
                }
                v
            }),
        )
    }))
}

#[derive(Serialize)]
struct Table2Result {
    kmax: usize,
    rows: Vec<BraidRow>,
}

fn table2_cmd(out: &Out, ns: &str, kmax: usize, gcfg: &GrowthConfig, budget: Option<u64>) -> CliResult<String> {
    let ns: Vec<u32> = split_list(ns)
        .iter()
        .map(|n| n.parse().map_err(|_| CliError::Input(format!("bad braid index `{n}`"))))
        .collect::<CliResult<_>>()?;
    let deadline = budget.map(|b| Instant::now() + Duration::from_secs(b));
    let rows = braid_table(&ns, kmax, gcfg, deadline)?;
    let r = Table2Result { kmax, rows };
    Ok(out.render(&r, || braid_table_tsv(&r.rows, kmax)))
}

#[derive(Serialize)]
struct VerifyResult {
    pass: usize,
    fail: usize,
    unverified: usize,
    rows: Vec<CheckRow>,
}

fn verify(
    out: &Out,
    sources: Option<&str>,
    targets: Option<&str>,
    budget: &OracleBudget,
    lifts: bool,
    cfg: &CountConfig,
) -> CliResult<String> {
    let owned_sources = sources.map(split_list);
    let owned_targets = targets.map(split_list);
    let count_src = owned_sources.as_ref().map_or_else(|| count_sources().to_vec(), |v| as_strs(v));
    let count_tgt: Vec<&str> = match &owned_targets {
        Some(v) => as_strs(v),
        None => count_targets(),
    };
    for s in &count_src {
        load_source(s)?;
    }
    for t in &count_tgt {
        load_target(t)?;
    }
    let mut rows = verify_counts(&count_src, &count_tgt, budget, cfg)?;
    if lifts {
        let lift_src = owned_sources.as_ref().map_or_else(|| lift_sources().to_vec(), |v| as_strs(v));
        let lift_tgt = owned_targets.as_ref().map_or_else(|| lift_targets().to_vec(), |v| as_strs(v));
        rows.extend(verify_lifts(&lift_src, &lift_tgt, budget)?);
    }
    let tally = |st: CheckStatus| rows.iter().filter(|r| r.status == st).count();
    let r = VerifyResult {
        pass: tally(CheckStatus::Pass),
        fail: tally(CheckStatus::Fail),
        unverified: tally(CheckStatus::Unverified),
        rows,
    };
    let text = out.render(&r, || {
        tsv_rows(
            &["check", "source", "target", "engine", "oracle", "status"],
            r.rows.iter().map(|row| {
                let status = match row.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Unverified => "unverified",
                };
                vec![
                    row.check.clone(),
                    row.source.clone(),
                    row.target.clone(),
                    row.engine.clone().unwrap_or_else(|| "-".into()),
                    row.oracle.clone().unwrap_or_else(|| "-".into()),
                    status.into(),
                ]
            }),
        )
    });
    if r.fail > 0 {
        return Err(CliError::Failed(text));
    }
    Ok(text)
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[derive(Serialize)]
struct CatalogRow {
    group: &'static str,
    order: usize,
    factors: Vec<usize>,
}

fn catalog(out: &Out) -> CliResult<String> {
    let rows: Vec<CatalogRow> = SOLVABLE_CATALOG
        .iter()
        .map(|&g| -> CliResult<CatalogRow> {
            let tw = builtin_group(g)?;
            let factors = tw.layers().iter().map(|l| l.module_order()).collect();
            Ok(CatalogRow { group: g, order: tw.order(), factors })
        })
        .collect::<CliResult<_>>()?;
    Ok(out.render(&rows, || {
        tsv_rows(
            &["group", "order", "chief_factors"],
            rows.iter().map(|r| vec![r.group.to_string(), r.order.to_string(), join(&r.factors, ",")]),
        )
    }))
}
