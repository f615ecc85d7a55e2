use crate::output::{config_hash, Outputs};
use crate::{parse_alpha, parse_kind, CliError, Globals, ProblemArgs};
use clap::Args;
use fslp_core::eig::{refine_with_vectors, PairTag, Spectrum};
use fslp_core::mittag_leffler::{log_abs_grid, ml_eval, ml_zero_refine};
use fslp_core::report::g17;
use fslp_core::study::{
    convergence_study, lambda1_minimum, ml_params_for, scan_alpha, solve_pair, truncate_whole, Minimum,
};
use fslp_core::{make_mesh, Complex64, DerivKind, OperatorPair, Potential, ProblemSpec};
use serde::Serialize;
use std::path::Path;
use std::time::Instant;

type Res = Result<(), CliError>;

fn load_potential(s: &str) -> Result<Potential, CliError> {
    if s.ends_with(".json") || Path::new(s).is_file() {
        let text = std::fs::read_to_string(s).map_err(|e| CliError::Validation(format!("potential file {s}: {e}")))?;
        Ok(Potential::from_json(&text)?)
    } else {
        Ok(Potential::from_name(s)?)
    }
}

fn build(p: &ProblemArgs, num_eigs: usize) -> Result<OperatorPair, CliError> {
    if p.m == 0 {
        return Err(CliError::Validation("m must be positive".into()));
    }
    let spec = ProblemSpec::new(p.alpha, p.deriv, load_potential(&p.potential)?, num_eigs.max(1))?;
    let mesh = make_mesh(p.m, p.grading)?;
    Ok(fslp_core::assemble(&spec, &mesh)?)
}

fn pairs(z: &[Complex64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn nodal_rows(pair: &OperatorPair, v: &[Complex64]) -> Vec<Vec<String>> {
    let pts = pair.mesh.points();
    let n = pts.len();
    (0..n)
        .map(|i| {
            let u = if i == 0 || i == n - 1 { Complex64::new(0.0, 0.0) } else { v[i - 1] };
            vec![g17(pts[i]), g17(u.re), g17(u.im)]
        })
        .collect()
}

fn xy_header() -> Vec<String> {
    vec!["x".into(), "re".into(), "im".into()]
}

fn print_eigenvalues(g: &Globals, z: &[Complex64]) {
    for (i, c) in z.iter().enumerate() {
        if g.pretty {
            if c.im == 0.0 {
                println!("λ{:<3} {:>14.6}", i + 1, c.re);
            } else {
                println!("λ{:<3} {:>14.6} {:+.6}i", i + 1, c.re, c.im);
            }
        } else {
            println!("{} {} {}", i + 1, g17(c.re), g17(c.im));
        }
    }
}

#[derive(Args, Serialize, Debug)]
pub struct AssembleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Write A.csv and M.csv (dense, row per matrix row).
    #[arg(long)]
    dump: bool,
}

pub fn assemble(g: &Globals, a: AssembleArgs) -> Res {
    let t = Instant::now();
    let pair = build(&a.problem, 1)?;
    let mut out = Outputs::new(&g.out)?;
    let (am, mm) = (pair.a_matrix(), pair.m_matrix());
    if a.dump {
        let n = pair.m();
        let header: Vec<String> = (1..=n).map(|j| format!("c{j}")).collect();
        let rows = |d: &fslp_core::linalg::DMat| -> Vec<Vec<String>> {
            (0..n).map(|i| d.row(i).iter().map(|&x| g17(x)).collect()).collect()
        };
        out.csv("A.csv", &header, &rows(&am))?;
        out.csv("M.csv", &header, &rows(&mm))?;
    }
    #[derive(Serialize)]
    struct Summary {
        m: usize,
        a_frobenius: f64,
        m_frobenius: f64,
        uniform: bool,
    }
    let s = Summary {
        m: pair.m(),
        a_frobenius: am.frobenius(),
        m_frobenius: mm.frobenius(),
        uniform: pair.mesh.is_uniform(),
    };
    println!("m {} |A|_F {} |M|_F {}", s.m, g17(s.a_frobenius), g17(s.m_frobenius));
    out.manifest("assemble", &a, t.elapsed().as_secs_f64(), s)?;
    Ok(())
}

#[derive(Args, Serialize, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value_t = 10)]
    num_eigs: usize,
    /// Force the dense QR path.
    #[arg(long)]
    dense: bool,
    /// Also write eigenfunction_<k>.csv files.
    #[arg(long)]
    vectors: bool,
}

#[derive(Serialize)]
struct SpectrumFile {
    config_hash: String,
    m: usize,
    eigenvalues: Vec<[f64; 2]>,
    tags: Vec<PairTag>,
    residuals: Vec<f64>,
    /// |E(-lambda)| of the governing Mittag-Leffler function when q = 0.
    ml_residuals: Option<Vec<f64>>,
}

fn solve_refined(pair: &OperatorPair, nev: usize, dense: bool) -> Result<Spectrum, CliError> {
    let s = solve_pair(pair, nev, dense)?;
    Ok(refine_with_vectors(pair, &s)?)
}

pub fn solve(g: &Globals, a: SolveArgs) -> Res {
    let t = Instant::now();
    if a.num_eigs == 0 || a.num_eigs > a.problem.m {
        return Err(CliError::Validation(format!("num-eigs must lie in 1..={}", a.problem.m)));
    }
    let pair = build(&a.problem, a.num_eigs)?;
    let mut s = solve_refined(&pair, a.num_eigs, a.dense)?;
    let ml_residuals = if load_potential(&a.problem.potential)?.is_zero() && a.problem.alpha < 2.0 {
        let p = ml_params_for(a.problem.deriv, a.problem.alpha)?;
        Some(s.eigenvalues.iter().map(|z| ml_eval(p, -z).map(|e| e.norm())).collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };
    let mut out = Outputs::new(&g.out)?;
    if a.vectors {
        for (k, v) in s.vectors.as_ref().unwrap().iter().enumerate().take(a.num_eigs) {
            out.csv(&format!("eigenfunction_{}.csv", k + 1), &xy_header(), &nodal_rows(&pair, v))?;
        }
    }
    s.truncate(a.num_eigs.min(s.len()));
    let file = SpectrumFile {
        config_hash: config_hash(&a),
        m: pair.m(),
        eigenvalues: pairs(&s.eigenvalues),
        tags: s.pair_tags.clone(),
        residuals: s.residuals.clone(),
        ml_residuals: ml_residuals.map(|mut v| {
            v.truncate(s.len());
            v
        }),
    };
    out.json("spectrum.json", &file)?;
    print_eigenvalues(g, &s.eigenvalues);
    let worst = s.residuals.iter().copied().fold(0.0, f64::max);
    out.manifest(
        "solve",
        &a,
        t.elapsed().as_secs_f64(),
        serde_json::json!({ "max_residual": worst, "mesh": pair.m() }),
    )?;
    Ok(())
}

#[derive(Args, Serialize, Debug)]
pub struct ConvergeArgs {
    #[arg(long, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long, default_value = "rl", value_parser = parse_kind)]
    deriv: DerivKind,
    #[arg(long, default_value = "q1")]
    potential: String,
    #[arg(long, default_value_t = 3)]
    k_from: u32,
    #[arg(long, default_value_t = 6)]
    k_to: u32,
    #[arg(long, default_value_t = 6)]
    num_eigs: usize,
    /// Interior nodes of the finer Richardson mesh.
    #[arg(long, default_value_t = 2559)]
    ref_m: usize,
}

pub fn converge(g: &Globals, a: ConvergeArgs) -> Res {
    let t = Instant::now();
    if a.k_from > a.k_to || a.k_to > 9 {
        return Err(CliError::Validation("need k-from <= k-to <= 9".into()));
    }
    let spec = ProblemSpec::new(a.alpha, a.deriv, load_potential(&a.potential)?, a.num_eigs)?;
    let ks: Vec<u32> = (a.k_from..=a.k_to).collect();
    let table = convergence_study(&spec, &ks, a.ref_m)?;
    let mut out = Outputs::new(&g.out)?;
    out.csv("convergence.csv", &table.header(), &table.rows(g17))?;
    #[derive(Serialize)]
    struct TableFile<'a> {
        config_hash: String,
        table: &'a fslp_core::study::ConvergenceTable,
    }
    out.json("convergence.json", &TableFile { config_hash: config_hash(&a), table: &table })?;
    let fmt: Box<dyn Fn(f64) -> String> = if g.pretty { Box::new(|x| format!("{x:.2e}")) } else { Box::new(g17) };
    println!("{}", table.header().join(if g.pretty { "\t" } else { "," }));
    for (r, rate) in table.rows(&fmt).into_iter().zip(&table.rates) {
        let mut r = r;
        if g.pretty {
            *r.last_mut().unwrap() = rate.map(|x| format!("{x:.2}")).unwrap_or_default();
        }
        println!("{}", r.join(if g.pretty { "\t" } else { "," }));
    }
    out.manifest(
        "converge",
        &a,
        t.elapsed().as_secs_f64(),
        serde_json::json!({ "meshes": table.meshes, "reference_mesh": a.ref_m }),
    )?;
    Ok(())
}

#[derive(Args, Serialize, Debug)]
pub struct MlzerosArgs {
    #[arg(long, value_parser = parse_alpha)]
    alpha: f64,
    /// caputo (E_{a,2}) or rl (E_{a,a}).
    #[arg(long, default_value = "caputo", value_parser = parse_kind)]
    kind: DerivKind,
    #[arg(long, default_value_t = 5)]
    count: usize,
    /// Grid points per axis for log10|E(-lambda)|.
    #[arg(long, default_value_t = 100)]
    grid: usize,
    /// Finite element mesh used to seed Newton.
    #[arg(long, default_value_t = 639)]
    seed_m: usize,
}

pub fn mlzeros(g: &Globals, a: MlzerosArgs) -> Res {
    let t = Instant::now();
    if a.count == 0 || a.grid < 2 {
        return Err(CliError::Validation("count must be positive and grid at least 2".into()));
    }
    let p = ml_params_for(a.kind, a.alpha)?;
    let spec = ProblemSpec::new(a.alpha, a.kind, Potential::Zero, a.count)?;
    let pair = fslp_core::assemble(&spec, &make_mesh(a.seed_m.max(a.count), None)?)?;
    let mut seeds = solve_pair(&pair, a.count + 1, false)?;
    truncate_whole(&mut seeds, a.count);
    let mut zeros = Vec::new();
    for z in seeds.representatives() {
        let r = ml_zero_refine(p, z)?;
        if z.im == 0.0 {
            zeros.push(Complex64::new(r.re, 0.0));
        } else {
            zeros.push(r);
            zeros.push(r.conj());
        }
    }
    zeros.truncate(a.count);
    let residuals: Vec<f64> = zeros.iter().map(|z| ml_eval(p, -z).map(|e| e.norm())).collect::<Result<_, _>>()?;
    let re_hi = zeros.iter().map(|z| z.re).fold(0.0, f64::max) * 1.25 + 1.0;
    let im_hi = zeros.iter().map(|z| z.im.abs()).fold(0.0, f64::max) * 1.25 + 1.0;
    let grid = log_abs_grid(p, (0.0, re_hi), (-im_hi, im_hi), a.grid, a.grid)?;
    let mut rows = Vec::with_capacity(a.grid * a.grid);
    for (iy, row) in grid.iter().enumerate() {
        let y = -im_hi + 2.0 * im_hi * iy as f64 / (a.grid - 1) as f64;
        for (ix, v) in row.iter().enumerate() {
            let x = re_hi * ix as f64 / (a.grid - 1) as f64;
            rows.push(vec![g17(x), g17(y), g17(*v)]);
        }
    }
    let mut out = Outputs::new(&g.out)?;
    out.csv("ml_grid.csv", &["re".into(), "im".into(), "log10_abs".into()], &rows)?;
    #[derive(Serialize)]
    struct ZerosFile {
        config_hash: String,
        alpha: f64,
        beta: f64,
        zeros: Vec<[f64; 2]>,
        residuals: Vec<f64>,
    }
    let beta = if a.kind == DerivKind::Caputo { 2.0 } else { a.alpha };
    out.json(
        "ml_zeros.json",
        &ZerosFile {
            config_hash: config_hash(&a),
            alpha: a.alpha,
            beta,
            zeros: pairs(&zeros),
            residuals: residuals.clone(),
        },
    )?;
    print_eigenvalues(g, &zeros);
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    out.manifest("mlzeros", &a, t.elapsed().as_secs_f64(), serde_json::json!({ "max_residual": worst }))?;
    Ok(())
}

#[derive(Args, Serialize, Debug)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_alpha)]
    from: f64,
    #[arg(long, value_parser = parse_alpha)]
    to: f64,
    #[arg(long, value_parser = parse_alpha)]
    step: f64,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value = "rl", value_parser = parse_kind)]
    deriv: DerivKind,
    #[arg(long, default_value = "q1")]
    potential: String,
    #[arg(long, default_value_t = 6)]
    num_eigs: usize,
}

pub fn scan(g: &Globals, a: ScanArgs) -> Res {
    let t = Instant::now();
    if !(a.step > 0.0) || !(a.to > a.from) {
        return Err(CliError::Validation("need from < to and a positive step".into()));
    }
    let n = ((a.to - a.from) / a.step + 1e-9).floor() as usize;
    if n > 100_000 {
        return Err(CliError::Validation("scan grid too large".into()));
    }
    let grid: Vec<f64> = (0..=n).map(|i| ((a.from + i as f64 * a.step) * 1e10).round() / 1e10).collect();
    let spec = ProblemSpec::new(grid[0], a.deriv, load_potential(&a.potential)?, a.num_eigs)?;
    let r = scan_alpha(&spec, &grid, a.m)?;
    let minimum: Option<Minimum> = lambda1_minimum(&r.points);
    let mut rows = Vec::new();
    for p in &r.points {
        for (i, z) in p.eigenvalues.iter().enumerate().take(a.num_eigs) {
            rows.push(vec![g17(p.alpha), (i + 1).to_string(), g17(z.re), g17(z.im)]);
        }
    }
    let mut out = Outputs::new(&g.out)?;
    out.csv("scan.csv", &["alpha".into(), "index".into(), "re".into(), "im".into()], &rows)?;
    #[derive(Serialize)]
    struct ScanFile<'a> {
        config_hash: String,
        m: usize,
        bifurcations: &'a [fslp_core::study::BifurcationReport],
        lambda1_minimum: Option<Minimum>,
        real_count: Vec<(f64, usize)>,
        monotonicity_violations: &'a [f64],
    }
    out.json(
        "scan.json",
        &ScanFile {
            config_hash: config_hash(&a),
            m: a.m,
            bifurcations: &r.bifurcations,
            lambda1_minimum: minimum,
            real_count: r.points.iter().map(|p| (p.alpha, p.real_count)).collect(),
            monotonicity_violations: &r.monotonicity_violations,
        },
    )?;
    for b in &r.bifurcations {
        println!(
            "split in [{}, {}]: {} ± {}i <-> {} , {}",
            g17(b.alpha_lo),
            g17(b.alpha_hi),
            g17(b.pair_before.re),
            g17(b.pair_before.im),
            g17(b.reals_after[0]),
            g17(b.reals_after[1])
        );
    }
    if let Some(mn) = minimum {
        println!("lambda1 minimum near alpha {} (value {})", g17(mn.alpha), g17(mn.value));
    }
    out.manifest("scan", &a, t.elapsed().as_secs_f64(), serde_json::json!({ "points": grid.len() }))?;
    Ok(())
}

#[derive(Args, Serialize, Debug)]
pub struct EigenfunctionArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// 1-based position in the ordered spectrum.
    #[arg(long, default_value_t = 1)]
    index: usize,
}

pub fn eigenfunction(g: &Globals, a: EigenfunctionArgs) -> Res {
    let t = Instant::now();
    if a.index == 0 || a.index > a.problem.m {
        return Err(CliError::Validation(format!("index must lie in 1..={}", a.problem.m)));
    }
    let pair = build(&a.problem, a.index)?;
    let s = solve_refined(&pair, a.index, false)?;
    let k = a.index - 1;
    let v = &s.vectors.as_ref().unwrap()[k];
    let mut out = Outputs::new(&g.out)?;
    out.csv("eigenfunction.csv", &xy_header(), &nodal_rows(&pair, v))?;
    print_eigenvalues(g, &s.eigenvalues[k..=k]);
    out.manifest(
        "eigenfunction",
        &a,
        t.elapsed().as_secs_f64(),
        serde_json::json!({ "eigenvalue": [s.eigenvalues[k].re, s.eigenvalues[k].im], "residual": s.residuals[k] }),
    )?;
    Ok(())
}

#[derive(Args, Serialize, Debug)]
pub struct VerifyArgs {
    /// Smaller meshes and fewer random samples.
    #[arg(long)]
    quick: bool,
}

pub fn verify(g: &Globals, a: VerifyArgs) -> Res {
    let t = Instant::now();
    let checks = fslp_core::verify::run_suite(a.quick)?;
    let mut failed = 0;
    for c in &checks {
        if !c.passed {
            failed += 1;
        }
        println!(
            "{} {}: {} (limit {}) {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            g17(c.value),
            g17(c.limit),
            c.detail
        );
    }
    let mut out = Outputs::new(&g.out)?;
    out.json("verify.json", &serde_json::json!({ "config_hash": config_hash(&a), "checks": checks }))?;
    out.manifest("verify", &a, t.elapsed().as_secs_f64(), serde_json::json!({ "failed": failed }))?;
    if failed > 0 {
        return Err(CliError::Verify(failed));
    }
    Ok(())
}
