use std::fmt;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use dsta_core::bench::{
    brute_force_dvs, brute_force_maxcut, brute_force_qubo, brute_force_tsp, run_trials_detailed, trial_seed, Sense,
    Trial, TrialStats,
};
use dsta_core::io::{
    build_distances, maxcut_from_tsp, random_instance, read_tsplib, write_results, write_trace, InstanceKind,
    ResultRecord,
};
use dsta_core::problems::{maxcut_error, tsp_error, DvsProblem, MaxCutInstance, ProblemInstance, Qubo, TspInstance};
use dsta_core::{Error, Mode, Neighborhood, Problem, StaParams, ValueVector};

use crate::args::{BenchArgs, BenchSuite, GraphSource, OracleProblem, SolveArgs, SolveProblem, TspSource};
use crate::report::{num, Table};

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    fn at(path: &Path, e: Error) -> Self {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedType(_) | Error::TooLarge { .. } | Error::IncompatibleOperator { .. } => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

const ROSENBROCK_BUDGETS: [(usize, usize); 6] = [(5, 10), (10, 20), (20, 100), (50, 200), (100, 500), (200, 2000)];

fn load_tsp(source: &TspSource) -> CliResult<TspInstance> {
    match (&source.file, source.random) {
        (Some(path), _) => {
            let doc = read_tsplib(path).map_err(|e| CliError::at(path, e))?;
            build_distances(&doc, source.rounding.into()).map_err(|e| CliError::at(path, e))
        }
        (None, Some(n)) => match random_instance(InstanceKind::EuclideanTsp { n }, source.instance_seed)? {
            ProblemInstance::Tsp(t) => Ok(t),
            _ => unreachable!("generator returned another kind"),
        },
        (None, None) => Err(CliError::config("either --file or --random is required")),
    }
}

fn load_graph(source: &GraphSource) -> CliResult<MaxCutInstance> {
    match (&source.file, source.random) {
        (Some(path), _) => {
            let doc = read_tsplib(path).map_err(|e| CliError::at(path, e))?;
            let tsp = build_distances(&doc, source.rounding.into()).map_err(|e| CliError::at(path, e))?;
            Ok(maxcut_from_tsp(&tsp)?)
        }
        (None, Some(n)) => {
            let kind = InstanceKind::WeightedGraph { n, density: source.density };
            match random_instance(kind, source.instance_seed)? {
                ProblemInstance::MaxCut(g) => Ok(g),
                _ => unreachable!("generator returned another kind"),
            }
        }
        (None, None) => Err(CliError::config("either --file or --random is required")),
    }
}

/// Rejects operator sets the representation cannot support before any output.
fn check_operators<S: Neighborhood>(params: &StaParams) -> CliResult {
    match params.operators.iter().find(|&&k| !S::supports(k)) {
        Some(&operator) => Err(Error::IncompatibleOperator { operator, representation: S::REPRESENTATION }.into()),
        None => Ok(()),
    }
}

fn echo(title: &str, params: &StaParams, trials: usize) -> CliResult {
    println!("# {title}");
    println!("# config {}", serde_json::to_string(params).map_err(Error::from)?);
    println!("# trials {trials}, base seed {}", params.seed);
    Ok(())
}

fn check_trials(trials: usize) -> CliResult {
    if trials == 0 {
        return Err(CliError::config("--trials must be at least 1"));
    }
    Ok(())
}

fn batch<P: Problem>(problem: &P, params: &StaParams, trials: usize) -> CliResult<Vec<Trial<P::State>>> {
    Ok(run_trials_detailed(problem, params, trials, params.seed)?)
}

fn best_trial<S>(trials: &[Trial<S>]) -> &Trial<S> {
    trials
        .iter()
        .reduce(|a, b| if b.result.best_cost < a.result.best_cost { b } else { a })
        .expect("at least one trial")
}

fn records<S, F>(name: &str, params: &StaParams, trials: &[Trial<S>], timed: bool, report: F) -> Vec<ResultRecord>
where
    F: Fn(&Trial<S>) -> (f64, Vec<usize>),
{
    trials
        .iter()
        .map(|t| {
            let (cost, solution) = report(t);
            ResultRecord {
                instance: name.to_string(),
                algorithm: params.mode,
                params: params.clone().with_seed(t.seed),
                trial: t.index,
                seed: t.seed,
                best_cost: cost,
                wall_time_secs: timed.then_some(t.result.wall_time.as_secs_f64()),
                best_solution: Some(solution),
            }
        })
        .collect()
}

fn save_results(path: &Path, recs: &[ResultRecord]) -> CliResult {
    let file = File::create(path).map_err(|e| CliError::at(path, e.into()))?;
    write_results(recs, BufWriter::new(file)).map_err(|e| CliError::at(path, e))?;
    Ok(())
}

fn save_trace(path: &Path, trace: &[dsta_core::TracePoint]) -> CliResult {
    let file = File::create(path).map_err(|e| CliError::at(path, e.into()))?;
    write_trace(trace, BufWriter::new(file)).map_err(|e| CliError::at(path, e))?;
    Ok(())
}

fn stats_line(stats: &TrialStats) {
    println!("trials {}  best {}  mean {}  std {}", stats.trials, num(stats.best), num(stats.mean), num(stats.std));
}

struct Solved<S> {
    params: StaParams,
    trials: Vec<Trial<S>>,
}

fn solve_common<P: Problem>(
    title: &str,
    problem: &P,
    run: &SolveArgs,
    permutation: bool,
) -> CliResult<Solved<P::State>> {
    check_trials(run.algo.trials)?;
    let mut params = run.algo.params(permutation);
    params.mode = Mode::from(run.mode);
    params.validate()?;
    check_operators::<P::State>(&params)?;
    echo(title, &params, run.algo.trials)?;
    for i in 0..run.algo.trials {
        println!("# trial {i} seed {}", trial_seed(params.seed, i));
    }
    let trials = batch(problem, &params, run.algo.trials)?;
    if let Some(path) = &run.trace {
        save_trace(path, &best_trial(&trials).result.trace)?;
    }
    Ok(Solved { params, trials })
}

pub fn solve(problem: &SolveProblem) -> CliResult {
    match problem {
        SolveProblem::Tsp { source, run } => {
            let inst = load_tsp(source)?;
            let title = format!("solve tsp {} ({} cities)", inst.name(), inst.dimension());
            let s = solve_common(&title, &inst, run, true)?;
            let best = best_trial(&s.trials);
            if s.trials.len() > 1 {
                stats_line(&TrialStats::from_costs(
                    s.trials.iter().map(|t| t.result.best_cost).collect(),
                    Sense::Minimize,
                ));
            }
            println!("length {}", num(best.result.best_cost));
            let tour: Vec<String> = best.result.best_solution.one_based().iter().map(usize::to_string).collect();
            println!("tour {}", tour.join(" "));
            if let Some(out) = &run.algo.out {
                let recs = records(inst.name(), &s.params, &s.trials, run.algo.record_time, |t| {
                    (t.result.best_cost, t.result.best_solution.as_slice().to_vec())
                });
                save_results(out, &recs)?;
            }
        }
        SolveProblem::Maxcut { source, run } => {
            let g = load_graph(source)?;
            let title = format!("solve maxcut {} ({} vertices, last fixed)", g.name(), g.vertex_count());
            let s = solve_common(&title, &g, run, false)?;
            let cuts: Vec<f64> = s.trials.iter().map(|t| g.cut_from_qubo_value(t.result.best_cost)).collect();
            if s.trials.len() > 1 {
                stats_line(&TrialStats::from_costs(cuts.clone(), Sense::Maximize));
            }
            let best = best_trial(&s.trials);
            println!("cut {}", num(g.cut_from_qubo_value(best.result.best_cost)));
            println!("qubo {}", num(best.result.best_cost));
            println!("sides {}", spins(g.extend(&best.result.best_solution).as_slice()));
            if let Some(out) = &run.algo.out {
                let recs = records(g.name(), &s.params, &s.trials, run.algo.record_time, |t| {
                    (g.cut_from_qubo_value(t.result.best_cost), t.result.best_solution.as_slice().to_vec())
                });
                save_results(out, &recs)?;
            }
        }
        SolveProblem::Rosenbrock { n, run } => {
            let p = DvsProblem::rosenbrock(*n)?;
            let s = solve_common(&format!("solve rosenbrock n={n}"), &p, run, false)?;
            if s.trials.len() > 1 {
                stats_line(&TrialStats::from_costs(
                    s.trials.iter().map(|t| t.result.best_cost).collect(),
                    Sense::Minimize,
                ));
            }
            let best = best_trial(&s.trials);
            println!("value {}", num(best.result.best_cost));
            println!("x {}", values(&p.decode(&best.result.best_solution)?));
            if let Some(out) = &run.algo.out {
                let recs = records(p.name(), &s.params, &s.trials, run.algo.record_time, |t| {
                    (t.result.best_cost, t.result.best_solution.as_slice().to_vec())
                });
                save_results(out, &recs)?;
            }
        }
    }
    Ok(())
}

fn spins(x: &[usize]) -> String {
    x.iter().map(|&b| if b == 1 { "+1" } else { "-1" }).collect::<Vec<_>>().join(" ")
}

fn values(x: &[f64]) -> String {
    x.iter().map(|&v| num(v)).collect::<Vec<_>>().join(" ")
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::config(format!("{flag}: cannot parse `{s}`"))))
        .collect()
}

fn modes(run: &BenchArgs) -> Vec<Mode> {
    match run.mode {
        Some(m) => vec![m.into()],
        None => vec![Mode::Simple, Mode::Dynamic],
    }
}

/// One bench entry: builds the problem lazily so that configuration errors
/// surface before any run starts.
enum Entry {
    Rosenbrock { n: usize, iters: usize },
    Tsp { path: PathBuf, optimum: Option<f64> },
    Maxcut { path: PathBuf, optimum: Option<f64> },
}

struct Bench<'a> {
    run: &'a BenchArgs,
    table: Table,
    records: Vec<ResultRecord>,
}

impl Bench<'_> {
    fn row(&mut self, name: &str, mode: Mode, optimum: Option<f64>, stats: &TrialStats, error: String, secs: f64) {
        self.table.push(vec![
            name.to_string(),
            mode.label().to_string(),
            optimum.map_or("-".into(), num),
            num(stats.best),
            num(stats.mean),
            num(stats.std),
            error,
            format!("{secs:.2}"),
        ]);
    }

    fn traces<S>(&self, name: &str, mode: Mode, trials: &[Trial<S>]) -> CliResult {
        if let Some(dir) = &self.run.trace {
            fs::create_dir_all(dir).map_err(|e| CliError::at(dir, e.into()))?;
            for t in trials {
                save_trace(&dir.join(format!("{name}-{}-trial{}.csv", mode.label(), t.index)), &t.result.trace)?;
            }
        }
        Ok(())
    }

    fn execute<P, F>(
        &mut self,
        name: &str,
        problem: &P,
        params: &StaParams,
        report: F,
    ) -> CliResult<Vec<(Mode, TrialStats, f64)>>
    where
        P: Problem,
        P::State: Neighborhood,
        F: Fn(&Trial<P::State>) -> (f64, Vec<usize>),
    {
        let mut out = Vec::new();
        for mode in modes(self.run) {
            let p = params.clone().with_mode(mode);
            let trials = batch(problem, &p, self.run.algo.trials)?;
            let secs: f64 = trials.iter().map(|t| t.result.wall_time.as_secs_f64()).sum::<f64>() / trials.len() as f64;
            let recs = records(name, &p, &trials, self.run.algo.record_time, &report);
            let costs: Vec<f64> = recs.iter().map(|r| r.best_cost).collect();
            self.traces(name, mode, &trials)?;
            self.records.extend(recs);
            out.push((mode, TrialStats::from_costs(costs, Sense::Minimize), secs));
        }
        Ok(out)
    }
}

pub fn bench(suite: &BenchSuite) -> CliResult {
    let (title, run, permutation, entries) = match suite {
        BenchSuite::Rosenbrock { sizes, budgets, run } => {
            let sizes: Vec<usize> = parse_list("--sizes", sizes)?;
            let budgets: Option<Vec<usize>> = budgets.as_deref().map(|b| parse_list("--budgets", b)).transpose()?;
            if let Some(b) = &budgets {
                if b.len() != sizes.len() {
                    return Err(CliError::config(format!(
                        "--budgets has {} entries but --sizes has {}",
                        b.len(),
                        sizes.len()
                    )));
                }
            }
            let default_iters = StaParams::default().max_iters;
            let entries = sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    let iters = match (&budgets, run.algo.iters) {
                        (Some(b), _) => b[i],
                        (None, Some(it)) => it,
                        (None, None) => ROSENBROCK_BUDGETS.iter().find(|p| p.0 == n).map_or(default_iters, |p| p.1),
                    };
                    Entry::Rosenbrock { n, iters }
                })
                .collect();
            ("bench rosenbrock", run, false, entries)
        }
        BenchSuite::Tsp { file, optimum, run, .. } => {
            ("bench tsp", run, true, file_entries(file, optimum, |path, optimum| Entry::Tsp { path, optimum })?)
        }
        BenchSuite::Maxcut { file, optimum, run, .. } => {
            ("bench maxcut", run, false, file_entries(file, optimum, |path, optimum| Entry::Maxcut { path, optimum })?)
        }
    };
    let rounding = match suite {
        BenchSuite::Tsp { rounding, .. } | BenchSuite::Maxcut { rounding, .. } => (*rounding).into(),
        BenchSuite::Rosenbrock { .. } => Default::default(),
    };
    check_trials(run.algo.trials)?;
    let params = run.algo.params(permutation);
    params.validate()?;
    if permutation {
        check_operators::<dsta_core::Permutation>(&params)?;
    }
    echo(title, &params, run.algo.trials)?;

    let mut bench = Bench {
        run,
        table: Table::new(vec!["instance", "algorithm", "optimum", "best", "mean", "std", "error", "time(s)"]),
        records: Vec::new(),
    };
    for entry in &entries {
        match entry {
            Entry::Rosenbrock { n, iters } => {
                let p = DvsProblem::rosenbrock(*n)?;
                let name = format!("rosenbrock{n}");
                let rows = bench.execute(&name, &p, &params.clone().with_iters(*iters), |t| {
                    (t.result.best_cost, t.result.best_solution.as_slice().to_vec())
                })?;
                for (mode, stats, secs) in rows {
                    let error = if stats.best == 0.0 { "0".to_string() } else { "-".to_string() };
                    bench.row(&name, mode, Some(0.0), &stats, error, secs);
                }
            }
            Entry::Tsp { path, optimum } => {
                let doc = read_tsplib(path).map_err(|e| CliError::at(path, e))?;
                let inst = build_distances(&doc, rounding).map_err(|e| CliError::at(path, e))?;
                let rows = bench.execute(inst.name(), &inst, &params, |t| {
                    (t.result.best_cost, t.result.best_solution.as_slice().to_vec())
                })?;
                for (mode, stats, secs) in rows {
                    let error = match optimum {
                        Some(o) => format!("{:.2}%", tsp_error(stats.best, *o)?),
                        None => "-".into(),
                    };
                    bench.row(inst.name(), mode, *optimum, &stats, error, secs);
                }
            }
            Entry::Maxcut { path, optimum } => {
                let doc = read_tsplib(path).map_err(|e| CliError::at(path, e))?;
                let tsp = build_distances(&doc, rounding).map_err(|e| CliError::at(path, e))?;
                let g = maxcut_from_tsp(&tsp)?;
                let rows = bench.execute(g.name(), &g, &params, |t| {
                    (g.cut_from_qubo_value(t.result.best_cost), t.result.best_solution.as_slice().to_vec())
                })?;
                for (mode, stats, secs) in rows {
                    // records hold cut weights, so the summary is a maximization
                    let stats = TrialStats::from_costs(stats.costs, Sense::Maximize);
                    let error = match optimum {
                        Some(o) => format!("{:.2}%", maxcut_error(stats.best, *o)?),
                        None => "-".into(),
                    };
                    bench.row(g.name(), mode, *optimum, &stats, error, secs);
                }
            }
        }
    }
    print!("{}", bench.table.render());
    if let Some(out) = &run.algo.out {
        save_results(out, &bench.records)?;
    }
    Ok(())
}

fn file_entries(
    files: &[PathBuf],
    optima: &[f64],
    make: impl Fn(PathBuf, Option<f64>) -> Entry,
) -> CliResult<Vec<Entry>> {
    if !optima.is_empty() && optima.len() != files.len() {
        return Err(CliError::config(format!("--optimum given {} times for {} files", optima.len(), files.len())));
    }
    Ok(files.iter().enumerate().map(|(i, f)| make(f.clone(), optima.get(i).copied())).collect())
}

fn parse_matrix(text: &str) -> CliResult<Vec<Vec<f64>>> {
    text.split(';').map(|row| parse_list("--q", row)).collect()
}

fn show_spins(x: &ValueVector) -> String {
    format!("({})", spins(x.as_slice()).replace(' ', ", "))
}

pub fn oracle(problem: &OracleProblem) -> CliResult {
    match problem {
        OracleProblem::Tsp { source } => {
            let inst = load_tsp(source)?;
            let (cost, tour) = brute_force_tsp(&inst)?;
            println!("optimum {}", num(cost));
            let tour: Vec<String> = tour.one_based().iter().map(usize::to_string).collect();
            println!("tour {}", tour.join(" "));
        }
        OracleProblem::Qubo { q, c } => {
            let q = parse_matrix(q)?;
            let c = parse_list("--c", c)?;
            let qubo = Qubo::new(q, c)?;
            let opt = brute_force_qubo(&qubo)?;
            println!("optimum {}", num(opt.value));
            println!("optimizers {}", opt.optimizers.len());
            for x in &opt.optimizers {
                println!("x {}", show_spins(x));
            }
        }
        OracleProblem::Maxcut { source } => {
            let g = load_graph(source)?;
            let opt = brute_force_maxcut(&g)?;
            println!("optimum {}", num(opt.cut));
            println!("optimizers {}", opt.optimizers.len());
            for x in &opt.optimizers {
                println!("sides {}", spins(g.extend(x).as_slice()));
            }
        }
        OracleProblem::Rosenbrock { n } => {
            let p = DvsProblem::rosenbrock(*n)?;
            let opt = brute_force_dvs(&p)?;
            println!("optimum {}", num(opt.value));
            println!("x {}", values(&p.decode(&opt.argmin)?));
            println!("evaluated {}", opt.evaluated);
        }
    }
    Ok(())
}
