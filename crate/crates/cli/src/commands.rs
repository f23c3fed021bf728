use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use cubehom::graph::{direction_colouring, hypercube, random, set_graph, write_colouring, write_edge_list};
use cubehom::homcount::{
    check_final_inequality, check_reflection_inequality, sidorenko_check, supersaturation_experiment,
    FinalCheck, HomCountRequest, ReflectionCheck, SidorenkoCheck,
};
use cubehom::rainbow::{
    check_pattern_chain, check_variant_chain, h2k_exact, h2k_spectral, rainbow_bounds, BoundsReport,
    ChainReport, DEFAULT_CYCLE_BUDGET, MAX_WALK_HOST,
};
use cubehom::reflectivity::{
    certify_all_pairs, certify_reflective, enumerate_nice_triples, is_admissible, verify_certificate,
    CertificateCheck, ReflectivityCertificate, SearchOutcome, DEFAULT_BUDGET,
};
use cubehom::scalar::{format_decimal, format_rational, parse_rational, rational_to_f64};
use cubehom::{Error, Graph, Pattern, Result, VertexSet};

use crate::hosts::{colouring_for, parse_host};
use crate::report::{Outcome, Status};
use crate::{Cli, Command, ExperimentName, GenArgs, GenKind, VerifySuite};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(args) => gen(cli, args),
        Command::Certify(args) => certify(cli, &args.graph, args.pair.as_deref(), args.cert_dir.as_deref()),
        Command::Verify { suite } => match suite {
            VerifySuite::Section2 { pattern, host } => section2(cli, pattern, host),
            VerifySuite::Section3 {
                host,
                colouring,
                k,
                epsilon,
            } => section3(cli, host, colouring.as_deref(), *k, epsilon.as_deref()),
            VerifySuite::Certificate { pattern, certificate } => verify_cert(cli, pattern, certificate),
        },
        Command::Experiment { name } => match name {
            ExperimentName::Supersaturation { d, n, p, trials } => supersaturation(*d, *n, p, cli.seed, *trials),
            ExperimentName::RainbowBounds { host, colouring, k_max } => {
                bounds(cli, host, colouring.as_deref(), *k_max, None)
            }
            ExperimentName::AlmostRainbowBounds {
                host,
                colouring,
                k_max,
                epsilon,
            } => bounds(cli, host, colouring.as_deref(), *k_max, Some(epsilon)),
        },
        Command::Homcount(args) => homcount(cli, args),
        Command::H2k(args) => h2k(cli, &args.host, args.k),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| Error::Input(format!("gen {kind} needs --{flag}")))
}

fn graph_text(g: &Graph) -> Result<String> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    Ok(String::from_utf8(buf).expect("ascii"))
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<Outcome> {
    let g = match args.kind {
        GenKind::Hypercube => hypercube(need(args.d, "d", "hypercube")?)?,
        GenKind::Setgraph => set_graph(need(args.l, "l", "setgraph")?, need(args.k, "k", "setgraph")?)?,
        GenKind::Random => {
            let p = args
                .p
                .as_deref()
                .ok_or_else(|| Error::Input("gen random needs --p".into()))?;
            random(need(args.n, "n", "random")?, &parse_rational(p)?, cli.seed)?
        }
        GenKind::DirectionCube => {
            let (g, c) = direction_colouring(need(args.d, "d", "direction-cube")?)?;
            let target = match (&args.colouring_out, &cli.out) {
                (Some(p), _) => p.clone(),
                (None, Some(out)) => {
                    let mut name = out.clone().into_os_string();
                    name.push(".colouring");
                    name.into()
                }
                (None, None) => return Err(Error::Input("gen direction-cube needs --out or --colouring-out".into())),
            };
            let mut buf = Vec::new();
            write_colouring(&g, &c, &mut buf)?;
            fs::write(target, buf)?;
            g
        }
    };
    Ok(Outcome::raw(graph_text(&g)?))
}

#[derive(Serialize)]
struct HostSummary {
    n: usize,
    edges: usize,
    min_degree: usize,
    max_degree: usize,
    /// `Δ/δ` as `"num/den"`, absent when a vertex is isolated.
    almost_regular_k: Option<String>,
}

impl HostSummary {
    fn of(g: &Graph) -> Self {
        HostSummary {
            n: g.n(),
            edges: g.edge_count(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
            almost_regular_k: g.regularity_ratio().as_ref().map(format_rational),
        }
    }

    fn text(&self) -> String {
        format!(
            "host_stats: n={} edges={} min_degree={} max_degree={} K={}\n",
            self.n,
            self.edges,
            self.min_degree,
            self.max_degree,
            self.almost_regular_k.as_deref().unwrap_or("undefined")
        )
    }
}

fn parse_set(text: &str) -> Result<VertexSet> {
    let v: Vec<usize> = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Input(format!("not a vertex list: {text:?}")))
        })
        .collect::<Result<_>>()?;
    VertexSet::try_from(v).map_err(Error::Input)
}

fn search_budget(cli: &Cli) -> usize {
    cli.budget.map_or(DEFAULT_BUDGET, |b| b as usize)
}

fn cycle_budget(cli: &Cli) -> u64 {
    cli.budget.unwrap_or(DEFAULT_CYCLE_BUDGET)
}

fn outcome_line(side: usize, pair: VertexSet, o: &SearchOutcome) -> String {
    match o {
        SearchOutcome::Certified(c) => format!("side {side} pair {:?}: certified m={}\n", pair.to_vec(), c.m()),
        SearchOutcome::Unknown { reason, visited } => format!(
            "side {side} pair {:?}: unknown ({}) after {visited} states\n",
            pair.to_vec(),
            serde_json::to_value(reason).expect("serializes").as_str().unwrap_or("unknown")
        ),
    }
}

fn write_certificate(dir: &Path, side: usize, pair: VertexSet, cert: &ReflectivityCertificate) -> Result<()> {
    fs::create_dir_all(dir)?;
    let name = format!(
        "side{side}_{}.json",
        pair.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
    );
    fs::write(dir.join(name), cert.to_json() + "\n")?;
    Ok(())
}

fn certify(cli: &Cli, graph: &str, pair: Option<&str>, cert_dir: Option<&Path>) -> Result<Outcome> {
    let host = parse_host(graph, cli.seed)?;
    let pattern = Pattern::new(host.graph)?;
    let sides = pattern.require_connected_bipartite()?;
    let budget = search_budget(cli);
    let params = json!({ "graph": graph, "pair": pair, "all_pairs": pair.is_none() });
    let outcomes: Vec<(usize, VertexSet, SearchOutcome)> = match pair {
        Some(text) => {
            let r0 = parse_set(text)?;
            let side = sides
                .iter()
                .position(|s| r0.is_subset(*s))
                .ok_or_else(|| Error::Input(format!("pair {text} is not inside one part")))?;
            vec![(side, r0, certify_reflective(&pattern, r0, budget)?)]
        }
        None => certify_all_pairs(&pattern, budget)?
            .outcomes
            .into_iter()
            .map(|o| (o.side, o.pair, o.outcome))
            .collect(),
    };
    let mut text = String::new();
    for (side, p, o) in &outcomes {
        text.push_str(&outcome_line(*side, *p, o));
        if let (Some(dir), SearchOutcome::Certified(c)) = (cert_dir, o) {
            write_certificate(dir, *side, *p, c)?;
        }
    }
    let all = outcomes.iter().all(|(_, _, o)| o.certificate().is_some());
    let verdict = if all { "yes" } else { "unknown" };
    let key = if pair.is_some() { "certified" } else { "reflective" };
    text.push_str(&format!("{key}: {verdict}\n"));
    #[derive(Serialize)]
    struct Item<'a> {
        side: usize,
        pair: VertexSet,
        outcome: &'a SearchOutcome,
    }
    let items: Vec<Item> = outcomes
        .iter()
        .map(|(side, pair, outcome)| Item {
            side: *side,
            pair: *pair,
            outcome,
        })
        .collect();
    let json = json!({ key: verdict, "outcomes": items });
    let status = if all { Status::Ok } else { Status::Budget };
    Ok(Outcome::new(params, text, json, status))
}

#[derive(Serialize)]
struct ReflectionItem {
    triple: usize,
    constraint: VertexSet,
    check: ReflectionCheck,
}

#[derive(Serialize)]
struct FinalItem {
    pair: VertexSet,
    check: FinalCheck,
}

#[derive(Serialize)]
struct Section2Report {
    host: HostSummary,
    sidorenko: SidorenkoCheck,
    reflection: Vec<ReflectionItem>,
    finals: Vec<FinalItem>,
    uncertified_pairs: usize,
    violations: usize,
}

fn section2(cli: &Cli, pattern_text: &str, host_text: &str) -> Result<Outcome> {
    let pattern = Pattern::new(parse_host(pattern_text, cli.seed)?.graph)?;
    let sides = pattern.require_connected_bipartite()?;
    let g = parse_host(host_text, cli.seed)?.graph;
    let sidorenko = sidorenko_check(pattern.graph(), &g)?;
    let triples = enumerate_nice_triples(&pattern)?;
    let mut reflection = Vec::new();
    for (ti, t) in triples.iter().enumerate() {
        for side in sides {
            let v = side.to_vec();
            for (i, &a) in v.iter().enumerate() {
                for &b in &v[i + 1..] {
                    let r: VertexSet = [a, b].into_iter().collect();
                    if is_admissible(&pattern, t, r)? {
                        let check = check_reflection_inequality(&pattern, &g, t, r)?;
                        reflection.push(ReflectionItem {
                            triple: ti,
                            constraint: r,
                            check,
                        });
                    }
                }
            }
        }
    }
    let all = certify_all_pairs(&pattern, search_budget(cli))?;
    let mut finals = Vec::new();
    let mut uncertified = 0;
    for o in &all.outcomes {
        match o.outcome.certificate() {
            Some(cert) => finals.push(FinalItem {
                pair: o.pair,
                check: check_final_inequality(&pattern, &g, cert)?,
            }),
            None => uncertified += 1,
        }
    }
    let violations = usize::from(!sidorenko.holds)
        + reflection.iter().filter(|r| !r.check.holds()).count()
        + finals.iter().filter(|f| !f.check.holds).count();
    let report = Section2Report {
        host: HostSummary::of(&g),
        sidorenko,
        reflection,
        finals,
        uncertified_pairs: uncertified,
        violations,
    };
    let mut text = report.host.text();
    text.push_str(&format!(
        "sidorenko: hom={} bound={} holds={}\n",
        report.sidorenko.lhs,
        format_rational(&report.sidorenko.rhs),
        report.sidorenko.holds
    ));
    text.push_str(&format!(
        "reflection steps: {} checked, {} hold\n",
        report.reflection.len(),
        report.reflection.iter().filter(|r| r.check.holds()).count()
    ));
    for f in &report.finals {
        text.push_str(&format!(
            "final pair={:?} m={} hom_side={} hom_start={} holds={}\n",
            f.pair.to_vec(),
            f.check.m,
            f.check.side,
            f.check.start,
            f.check.holds
        ));
    }
    text.push_str(&format!("uncertified pairs: {uncertified}\nviolations: {violations}\n"));
    let status = if violations > 0 {
        Status::Violation
    } else if uncertified > 0 {
        Status::Budget
    } else {
        Status::Ok
    };
    let params = json!({ "pattern": pattern_text, "host": host_text });
    Ok(Outcome::new(params, text, report, status))
}

fn chain_status(r: &ChainReport) -> Status {
    if !r.unconditional_hold() || r.pipeline_contradiction() {
        Status::Violation
    } else if r.budget_exhausted() {
        Status::Budget
    } else {
        Status::Ok
    }
}

fn section3(cli: &Cli, host_text: &str, colouring: Option<&Path>, k: usize, eps: Option<&str>) -> Result<Outcome> {
    let host = parse_host(host_text, cli.seed)?;
    let c = colouring_for(&host, colouring, cli.seed)?;
    let g = &host.graph;
    let report = match eps {
        None => check_pattern_chain(g, &c, k, cycle_budget(cli))?,
        Some(e) => check_variant_chain(g, &c, k, &parse_rational(e)?, cycle_budget(cli))?,
    };
    let summary = HostSummary::of(g);
    let text = summary.text() + &report.to_text();
    let status = chain_status(&report);
    let params = json!({ "host": host_text, "k": k, "epsilon": eps });
    Ok(Outcome::new(params, text, json!({ "host": summary, "chain": report }), status))
}

fn verify_cert(cli: &Cli, pattern_text: &str, path: &Path) -> Result<Outcome> {
    let pattern = Pattern::new(parse_host(pattern_text, cli.seed)?.graph)?;
    let text = fs::read_to_string(path)?;
    let cert = ReflectivityCertificate::from_json(&text)?;
    let check = verify_certificate(&pattern, &cert)?;
    let body = match &check {
        CertificateCheck::Valid { relaxed_steps } => {
            format!("certificate: valid m={} relaxed_steps={relaxed_steps:?}\n", cert.m())
        }
        CertificateCheck::Invalid { step, reason } => match step {
            Some(j) => format!("certificate: invalid at step {j}: {reason}\n"),
            None => format!("certificate: invalid: {reason}\n"),
        },
    };
    let status = if check.is_valid() { Status::Ok } else { Status::Input };
    let params = json!({ "pattern": pattern_text, "certificate": path.display().to_string() });
    Ok(Outcome::new(params, body, check, status))
}

fn supersaturation(d: u32, n: usize, p: &str, seed: u64, trials: usize) -> Result<Outcome> {
    let report = supersaturation_experiment(d, n, &parse_rational(p)?, seed, trials)?;
    let params = json!({ "d": d, "n": n, "p": p, "trials": trials });
    Ok(Outcome::new(params, report.to_text(), &report, Status::Ok))
}

fn bounds_status(r: &BoundsReport) -> Status {
    if !r.unconditional_hold() || r.pipeline_contradiction() {
        Status::Violation
    } else if r.budget_exhausted() {
        Status::Budget
    } else {
        Status::Ok
    }
}

fn bounds(cli: &Cli, host_text: &str, colouring: Option<&Path>, k_max: usize, eps: Option<&str>) -> Result<Outcome> {
    let host = parse_host(host_text, cli.seed)?;
    let c = colouring_for(&host, colouring, cli.seed)?;
    let eps_value = eps.map(parse_rational).transpose()?;
    let report = rainbow_bounds(&host.graph, &c, k_max, eps_value.as_ref(), cycle_budget(cli))?;
    let summary = HostSummary::of(&host.graph);
    let text = summary.text() + &report.to_text();
    let status = bounds_status(&report);
    let params = json!({ "host": host_text, "k_max": k_max, "epsilon": eps });
    Ok(Outcome::new(params, text, json!({ "host": summary, "bounds": report }), status))
}

fn homcount(cli: &Cli, args: &crate::HomcountArgs) -> Result<Outcome> {
    let pattern = parse_host(&args.pattern, cli.seed)?.graph;
    let host = parse_host(&args.host, cli.seed)?.graph;
    let constraint = args.constraint.as_deref().map(parse_set).transpose()?;
    let count = HomCountRequest {
        pattern: &pattern,
        host: &host,
        constraint,
        injective: args.injective,
    }
    .run()?;
    let params = json!({
        "pattern": args.pattern,
        "host": args.host,
        "constraint": constraint,
        "injective": args.injective,
    });
    let text = format!("count: {count}\n");
    Ok(Outcome::new(params, text, json!({ "count": count.to_string() }), Status::Ok))
}

fn h2k(cli: &Cli, host_text: &str, k: usize) -> Result<Outcome> {
    let g = parse_host(host_text, cli.seed)?.graph;
    let exact = if g.n() <= MAX_WALK_HOST { Some(h2k_exact(&g, k)?) } else { None };
    let spectral = h2k_spectral(&g, k)?;
    let mut text = HostSummary::of(&g).text();
    if let Some(x) = &exact {
        text.push_str(&format!("h2k: {}\nh2k_float: {}\n", format_rational(x), format_decimal(rational_to_f64(x))));
    }
    text.push_str(&format!(
        "spectral: {} +/- {}\n",
        format_decimal(spectral.value),
        format_decimal(spectral.error_bound)
    ));
    let status = match &exact {
        Some(x) => {
            let x = rational_to_f64(x);
            if (x - spectral.value).abs() <= cubehom::rainbow::SPECTRAL_TOLERANCE * x.abs() {
                Status::Ok
            } else {
                Status::Violation
            }
        }
        None => Status::Ok,
    };
    let json = json!({
        "host": HostSummary::of(&g),
        "k": k,
        "h2k": exact.as_ref().map(format_rational),
        "spectral": spectral,
    });
    Ok(Outcome::new(json!({ "host": host_text, "k": k }), text, json, status))
}
