//! Subcommand implementations.

use std::path::Path;

use angle_spaces::enumerate_taut_in_component;
use asym_compare::{compare, kappa_grid, predict, to_csv, AsymptoticTerm};
use geometry_solver::solve_geometric;
use mellin_barnes::{beta_invariant, build_integrand, mb_integral, PvQuadratureConfig};
use special_functions::{Complex, QParam};
use state_integral::{emit_result, integrate_with, IndexError, IntegrateOptions};
use tau_invariant::{find_integer_angle_structure, one_loop, tau};
use trimesh_io::{homology_order, load_triangulation, AngleAssignment, TriangulationData};

use crate::terms::TermSpec;
use crate::Cmd;

pub struct CliError {
    pub message: String,
    pub numerical: bool,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            numerical: false,
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            numerical: true,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        if self.numerical {
            "numerical"
        } else {
            "input"
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.numerical {
            2
        } else {
            1
        }
    }
}

fn load(file: &Path) -> Result<(TriangulationData, AngleAssignment), CliError> {
    let path = file
        .to_str()
        .ok_or_else(|| CliError::input("non-UTF-8 path"))?;
    load_triangulation(path).map_err(|e| CliError::input(e.to_string()))
}

fn index_error(e: IndexError) -> CliError {
    match e {
        // asking for more grid points than the cap admits is an input problem
        IndexError::ResourceCap { .. } => CliError::input(e.to_string()),
        other => CliError::numerical(other.to_string()),
    }
}

pub fn dispatch(cmd: &Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Info { file } => info(file),
        Cmd::Integrate {
            file,
            re_hbar,
            im_hbar,
            samples,
            eval_cap,
        } => run_integrate(file, *re_hbar, *im_hbar, *samples, *eval_cap),
        Cmd::Solve { file } => run_solve(file),
        Cmd::Tau { file } => run_tau(file),
        Cmd::Taut { file } => run_taut(file),
        Cmd::Mb { file, taut } => run_mb(file, *taut),
        Cmd::Beta { file } => run_beta(file),
        Cmd::Predict {
            file,
            no_beta,
            degree,
            kappa,
        } => run_predict(file, *no_beta, *degree, *kappa),
        Cmd::Compare {
            file,
            kappa_min,
            kappa_max,
            kappa_step,
            samples,
            terms,
            degree,
        } => run_compare(
            file, *kappa_min, *kappa_max, *kappa_step, *samples, terms.as_deref(), *degree,
        ),
    }
}

fn info(file: &Path) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let (order, infinite) = homology_order(&tri);
    println!(
        "{:#}",
        serde_json::json!({
            "name": tri.name,
            "tetrahedra": tri.n,
            "cusps": tri.k,
            "edge_rows": tri.g.as_ref().map(|g| g.len()),
            "peripheral_rows": tri.gp.as_ref().map(|g| g.len()),
            "homology_order": if infinite { None } else { Some(order) },
            "angles_over_pi": a.a,
        })
    );
    Ok(())
}

fn run_integrate(
    file: &Path,
    re_hbar: f64,
    im_hbar: f64,
    samples: usize,
    eval_cap: Option<u64>,
) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let qp = QParam::new(Complex::new(re_hbar, im_hbar))
        .map_err(|e| CliError::input(e.to_string()))?;
    let mut opts = IntegrateOptions::default();
    if let Some(cap) = eval_cap {
        opts.eval_cap = cap;
    }
    let result = integrate_with(&tri, &a, &qp, samples, &opts).map_err(index_error)?;
    println!("{}", emit_result(&result, &file.to_string_lossy()));
    Ok(())
}

fn run_solve(file: &Path) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let (sol, report) =
        solve_geometric(&tri, &a).map_err(|e| CliError::numerical(e.to_string()))?;
    println!(
        "{:#}",
        serde_json::json!({
            "angles": report.omega.omega.iter().map(|w| w.arg()).collect::<Vec<_>>(),
            "shapes": sol.z.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "residual": sol.residual,
            "volume": report.volume,
            "signature": report.signature,
            "n_plus": report.n_plus,
            "n_minus": report.n_minus,
            "degenerate": report.degenerate,
        })
    );
    Ok(())
}

fn run_tau(file: &Path) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let (sol, report) =
        solve_geometric(&tri, &a).map_err(|e| CliError::numerical(e.to_string()))?;
    let t = tau(&tri, &sol).map_err(|e| CliError::numerical(e.to_string()))?;
    let f = find_integer_angle_structure(&tri).map_err(|e| CliError::numerical(e.to_string()))?;
    let mu = tri
        .peripheral_rows()
        .map_err(|e| CliError::input(e.to_string()))?[0]
        .clone();
    let loop1 =
        one_loop(&tri, &sol, &f, &mu).map_err(|e| CliError::numerical(e.to_string()))?;
    println!(
        "{:#}",
        serde_json::json!({
            "tau": t.tau,
            "tau1": t.tau1,
            "tau2": t.tau2,
            "volume": report.volume,
            "signature": report.signature,
            "n_combined": t.n_combined,
            "one_loop_abs": loop1.norm(),
        })
    );
    Ok(())
}

fn run_taut(file: &Path) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let taut =
        enumerate_taut_in_component(&tri, &a).map_err(|e| CliError::numerical(e.to_string()))?;
    println!(
        "{:#}",
        serde_json::json!({
            "count": taut.len(),
            "structures": taut.iter().map(|t| t.signs.clone()).collect::<Vec<_>>(),
        })
    );
    Ok(())
}

fn mb_json(out: &mellin_barnes::MbOutcome) -> serde_json::Value {
    serde_json::json!({
        "value": out.value,
        "spread": out.spread,
        "converged": out.converged,
        "partials": out.partials,
    })
}

fn run_mb(file: &Path, taut_index: Option<usize>) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let taut =
        enumerate_taut_in_component(&tri, &a).map_err(|e| CliError::numerical(e.to_string()))?;
    let cfg = PvQuadratureConfig::for_dim(tri.lstar.len());
    let picked: Vec<usize> = match taut_index {
        Some(i) if i >= taut.len() => {
            return Err(CliError::input(format!(
                "taut index {i} out of range ({} structures)",
                taut.len()
            )))
        }
        Some(i) => vec![i],
        None => (0..taut.len()).collect(),
    };
    let mut entries = Vec::new();
    let mut all_converged = true;
    for i in picked {
        let ig = build_integrand(&tri, &taut[i], &a)
            .map_err(|e| CliError::input(e.to_string()))?;
        let out = mb_integral(&ig, &cfg).map_err(|e| CliError::numerical(e.to_string()))?;
        all_converged &= out.converged;
        entries.push(serde_json::json!({
            "taut": i,
            "signs": taut[i].signs,
            "integral": mb_json(&out),
        }));
    }
    println!("{:#}", serde_json::Value::Array(entries));
    if !all_converged {
        return Err(CliError::numerical("principal value did not converge"));
    }
    Ok(())
}

fn run_beta(file: &Path) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let cfg = PvQuadratureConfig::for_dim(tri.lstar.len());
    let out = beta_invariant(&tri, &a, &cfg).map_err(|e| CliError::numerical(e.to_string()))?;
    println!(
        "{:#}",
        serde_json::json!({
            "total": out.value,
            "defined": out.defined,
            "summands": out.summands.iter().map(mb_json).collect::<Vec<_>>(),
            "structures": out.taut.iter().map(|t| t.signs.clone()).collect::<Vec<_>>(),
        })
    );
    if !out.defined {
        return Err(CliError::numerical("beta invariant did not converge"));
    }
    Ok(())
}

fn assemble_terms(
    tri: &TriangulationData,
    a: &AngleAssignment,
    with_beta: bool,
) -> Result<Vec<AsymptoticTerm>, CliError> {
    let (sol, report) =
        solve_geometric(tri, a).map_err(|e| CliError::numerical(e.to_string()))?;
    if report.degenerate {
        return Err(CliError::numerical(
            "degenerate critical point: no stationary-phase term",
        ));
    }
    let t = tau(tri, &sol).map_err(|e| CliError::numerical(e.to_string()))?;
    let mut terms = vec![AsymptoticTerm::from_connection(
        t.tau,
        report.volume,
        t.n_combined,
        "geometric",
    )];
    if with_beta {
        let cfg = PvQuadratureConfig::for_dim(tri.lstar.len());
        let beta = beta_invariant(tri, a, &cfg).map_err(|e| CliError::numerical(e.to_string()))?;
        if !beta.defined {
            return Err(CliError::numerical("beta invariant did not converge"));
        }
        terms.insert(0, AsymptoticTerm::linear(beta.value, "beta"));
    }
    Ok(terms)
}

fn run_predict(
    file: &Path,
    no_beta: bool,
    degree: f64,
    kappa: Option<f64>,
) -> Result<(), CliError> {
    let (tri, a) = load(file)?;
    let terms = assemble_terms(&tri, &a, !no_beta)?;
    let specs: Vec<TermSpec> = terms.iter().map(TermSpec::from_term).collect();
    let prediction = kappa
        .map(|k| predict(&terms, degree, k).map_err(|e| CliError::input(e.to_string())))
        .transpose()?;
    println!(
        "{:#}",
        serde_json::json!({ "terms": specs, "kappa": kappa, "prediction": prediction })
    );
    Ok(())
}

fn run_compare(
    file: &Path,
    kappa_min: f64,
    kappa_max: f64,
    kappa_step: f64,
    samples: usize,
    terms_file: Option<&Path>,
    degree: f64,
) -> Result<(), CliError> {
    if kappa_step <= 0.0 {
        return Err(CliError::input("kappa-step must be positive"));
    }
    let (tri, a) = load(file)?;
    let terms: Vec<AsymptoticTerm> = match terms_file {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| CliError::input(e.to_string()))?;
            let specs: Vec<TermSpec> =
                serde_json::from_str(&text).map_err(|e| CliError::input(e.to_string()))?;
            specs.into_iter().map(TermSpec::into_term).collect()
        }
        None => assemble_terms(&tri, &a, true)?,
    };
    let grid = kappa_grid(kappa_min, kappa_max, kappa_step);
    let rows = compare(&tri, &a, &terms, degree, &grid, samples).map_err(|e| match e {
        asym_compare::AsymError::Index(ie) => index_error(ie),
        other => CliError::input(other.to_string()),
    })?;
    print!("{}", to_csv(&rows));
    Ok(())
}
