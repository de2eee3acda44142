//! Implementations of the analysis subcommands.

use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use centra::bounds::BoundReport;
use centra::engine::{self, variant_sd_bound, RunConfig, Variant};
use centra::graph::{vertex_diameter_exact, Graph};
use centra::{oracle as oracle_mod, sampler, Error, Result, Sample};

use crate::report::{ConfigEcho, Report};
use crate::{BoundArgs, CompareArgs, GraphArgs, MaximizeArgs, OracleArgs, OracleCommand, StatsArgs};

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    let (graph, report) = Graph::parse_edge_list_path(&args.graph, args.directed)?;
    if report.dropped_self_loops + report.dropped_duplicates > 0 {
        eprintln!(
            "note: dropped {} self-loops and {} duplicate edges",
            report.dropped_self_loops, report.dropped_duplicates
        );
    }
    Ok(graph)
}

pub fn maximize(args: MaximizeArgs) -> Result<ExitCode> {
    let variant = Variant::from_str(&args.variant)?;
    if variant == Variant::FixedM {
        return Err(Error::InvalidArgument(
            "fixed-m is the bound-report mode; use the `bound` subcommand".into(),
        ));
    }
    let graph = load_graph(&args.graph)?;
    let mut cfg = RunConfig::new(args.k, args.eps, args.delta, variant, args.seed);
    cfg.t = args.t;
    cfg.alpha = args.alpha;
    cfg.m_max = args.m_max;
    cfg.m_first = args.m_first;
    cfg.b = args.b;
    cfg.c_star_lower = args.c_star;
    cfg.c_const = args.c_const;
    let result = engine::run(&graph, &cfg)?;
    let summary_bound = result
        .trace
        .last()
        .and_then(|rec| variant_sd_bound(&rec.report));
    println!(
        "variant={} m_final={} sd_bound={} c_hat={:.6} seconds={:.3}{}",
        result.variant.as_str(),
        result.total_samples,
        summary_bound.map_or("n/a".into(), |v| format!("{v:.6}")),
        result.c_hat,
        result.seconds,
        if result.budget_exhausted {
            " budget-exhausted, guarantee not certified"
        } else {
            ""
        },
    );
    let exhausted = result.budget_exhausted;
    if let Some(out) = &args.out {
        let echo = ConfigEcho {
            graph: args.graph.graph.clone(),
            directed: args.graph.directed,
            k: args.k,
            eps: Some(args.eps),
            delta: args.delta,
            t: args.t,
            variant: args.variant.clone(),
            seed: args.seed,
            alpha: Some(args.alpha),
            m: None,
            m_max: args.m_max,
            m_first: args.m_first,
            b: args.b,
            c_star: Some(args.c_star),
            c_const: Some(args.c_const),
            threads: rayon::current_num_threads(),
        };
        let trace_csv = result.trace_csv();
        Report::new("maximize", echo, result).write_json(out)?;
        std::fs::write(trace_path(out), trace_csv)?;
    }
    Ok(if exhausted {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn trace_path(out: &Path) -> std::path::PathBuf {
    out.with_extension("trace.csv")
}

pub const BOUND_CSV_HEADER: &str =
    "method,m,k,t,delta,c_hat,sd_bound,amcera,wimpy,r_tilde,r_cap,nu,xi,eta_ub,eps_vc,d1,dk";

fn bound_csv_row(method: &str, sd: Option<f64>, r: &BoundReport) -> String {
    let cell = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
    format!(
        "{method},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.m,
        r.k,
        r.t,
        r.delta,
        r.c_hat,
        cell(sd),
        cell(r.amcera),
        cell(r.wimpy),
        cell(r.r_tilde),
        cell(r.r_cap),
        cell(r.nu),
        cell(r.xi),
        cell(r.eta_ub),
        cell(r.eps_vc),
        r.d1.map(|d| d.to_string()).unwrap_or_default(),
        cell(r.dk),
    )
}

pub fn bound(args: BoundArgs) -> Result<ExitCode> {
    if args.m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let graph = load_graph(&args.graph)?;
    let mut cfg = RunConfig::new(args.k, 0.1, args.delta, Variant::FixedM, args.seed);
    cfg.t = args.t;
    cfg.fixed_m = Some(args.m);
    cfg.b = args.b;
    cfg.c_const = args.c_const;
    let result = engine::run(&graph, &cfg)?;
    let report = &result.trace[0].report;
    println!("{BOUND_CSV_HEADER}");
    println!("{}", bound_csv_row("centra", report.eta, report));
    println!("{}", bound_csv_row("hedge", report.eta_ub, report));
    if report.eps_vc.is_some() {
        println!("{}", bound_csv_row("centra-vc", report.eps_vc, report));
    }
    if let Some(out) = &args.out {
        let echo = ConfigEcho {
            graph: args.graph.graph.clone(),
            directed: args.graph.directed,
            k: args.k,
            eps: None,
            delta: args.delta,
            t: args.t,
            variant: "fixed-m".into(),
            seed: args.seed,
            alpha: None,
            m: Some(args.m),
            m_max: None,
            m_first: None,
            b: args.b,
            c_star: None,
            c_const: Some(args.c_const),
            threads: rayon::current_num_threads(),
        };
        Report::new("bound", echo, result).write_json(out)?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn compare(args: CompareArgs) -> Result<ExitCode> {
    let graph = load_graph(&args.graph)?;
    let variants: Vec<Variant> = args
        .variants
        .iter()
        .map(|v| Variant::from_str(v))
        .collect::<Result<_>>()?;
    let mut rows =
        vec!["variant,eps,k,delta,seed,m_final,sd_bound,c_hat,certified,seconds".to_string()];
    for &variant in &variants {
        for &eps in &args.eps {
            let mut cfg = RunConfig::new(args.k, eps, args.delta, variant, args.seed);
            cfg.t = args.t;
            cfg.alpha = args.alpha;
            cfg.m_max = args.m_max;
            cfg.b = args.b;
            let result = engine::run(&graph, &cfg)?;
            let sd = result
                .trace
                .last()
                .and_then(|rec| variant_sd_bound(&rec.report));
            rows.push(format!(
                "{},{},{},{},{},{},{},{},{},{:.3}",
                variant.as_str(),
                eps,
                args.k,
                args.delta,
                args.seed,
                result.total_samples,
                sd.map(|v| format!("{v}")).unwrap_or_default(),
                result.c_hat,
                result.certified,
                result.seconds,
            ));
        }
    }
    let csv = rows.join("\n") + "\n";
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn stats(args: StatsArgs) -> Result<ExitCode> {
    let graph = load_graph(&args.graph)?;
    let diameter = if args.no_diameter {
        None
    } else {
        match args.b {
            Some(b) => Some(b as usize),
            None => Some(vertex_diameter_exact(&graph)),
        }
    };
    let stats = graph.stats(diameter);
    println!(
        "n={} edges={} B={}",
        stats.n,
        stats.edge_count,
        stats
            .vertex_diameter
            .map_or("unknown".into(), |b| b.to_string()),
    );
    Ok(ExitCode::SUCCESS)
}

pub fn oracle(args: OracleArgs) -> Result<ExitCode> {
    if !args.yes_this_is_slow {
        return Err(Error::InvalidArgument(
            "brute-force oracles require --yes-this-is-slow".into(),
        ));
    }
    let graph = load_graph(&args.graph)?;
    match args.command {
        OracleCommand::Optimum { k } => {
            let opt = oracle_mod::brute_force_optimum(&graph, k, args.ceiling)?;
            let labels: Vec<u64> = opt.nodes.iter().map(|&u| graph.label(u)).collect();
            println!(
                "optimum nodes={labels:?} value={} evaluated_subsets={}",
                opt.value, opt.evaluated_subsets
            );
        }
        OracleCommand::Centrality { nodes } => {
            let ids: Vec<u32> = nodes
                .iter()
                .map(|&l| {
                    graph
                        .id_of(l)
                        .ok_or_else(|| Error::InvalidArgument(format!("unknown node label {l}")))
                })
                .collect::<Result<_>>()?;
            println!("centrality={}", sampler::exact_set_centrality(&graph, &ids));
        }
        OracleCommand::Distribution { path_ceiling } => {
            let dist = sampler::enumerate_distribution(&graph, path_ceiling)?;
            for (edge, p) in dist {
                let labels: Vec<u64> = edge.nodes().iter().map(|&u| graph.label(u)).collect();
                println!("{p} {labels:?}");
            }
        }
        OracleCommand::Sd { k, m, seed } => {
            let mut sample = Sample::new(seed);
            sample.grow(&graph, m);
            let sd = oracle_mod::exact_supremum_deviation(&graph, &sample, k, args.ceiling)?;
            println!("sd={sd}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
