use std::fs;
use std::io::{self, Write};

use netperf::spectra::{self, hurwitz_margin};
use netperf::sweep::SweepSpec;
use netperf::{
    build_state_matrix, closed_form_lower_bound, corollary2_upper_bound, derive, performance_measure, render_csv,
    restricted_dispersion, run_sweep, secant_criterion, simulate_dispersion, Derived, Estimate, Matrix, Report,
    SimConfig, System,
};
use serde::Serialize;

use crate::args::{AnalyzeArgs, CyclicArgs, OutputSelection, ReportFormat, SimulateArgs, SimulationFlags, SweepArgs};
use crate::failure::Failure;
use crate::input::{load_params, load_system};

fn emit_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::input(e.to_string()))?;
    writeln!(out).map_err(|e| Failure::input(e.to_string()))
}

fn sim_config(a: &Matrix, flags: &SimulationFlags) -> Result<SimConfig, Failure> {
    let burn_in = match flags.burn_in {
        Some(b) => b,
        None => netperf::montecarlo::default_burn_in(a)?,
    };
    Ok(SimConfig { dt: flags.dt, horizon: flags.horizon, burn_in, ensembles: flags.ensembles, seed: flags.seed })
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let sys = load_system(&args.input)?;
    let report = netperf::analyze(&sys)?;
    match args.format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Text => {
            print!("{}", render_report(&report));
            Ok(())
        }
    }
}

fn render_report(r: &Report) -> String {
    let upper = match r.upper_bound {
        Some(u) => format!("{u:.12e}"),
        None => "unavailable (symmetric part not Hurwitz)".into(),
    };
    format!(
        "exact               {:.12e}\nlower bound         {:.12e}\nupper bound         {upper}\n\
         lower bound tight   {}\nnormality residual  {:.3e}\nweight spread       {:.3e}\n",
        r.exact, r.lower_bound, r.lower_is_tight, r.normality_residual, r.q_eigen_spread
    )
}

#[derive(Serialize)]
struct Stability {
    secant: bool,
    hurwitz: bool,
    /// `[re, im]` of the rightmost eigenvalue of the state matrix.
    rightmost_eigenvalue: [f64; 2],
}

#[derive(Serialize)]
struct CyclicReport {
    n: usize,
    output: &'static str,
    derived: Derived,
    stability: Stability,
    /// Closed form for `Q = I`; requires identical decay rates.
    closed_form_lower_bound: Option<f64>,
    /// `Tr(P)` for the selected output weight.
    exact: Option<f64>,
    corollary2_upper_bound: Option<f64>,
    monte_carlo: Option<Estimate>,
}

pub fn cyclic(args: &CyclicArgs) -> Result<(), Failure> {
    let params = load_params(&args.params)?;
    let n = params.n();
    let a = build_state_matrix(&params);
    let eig = spectra::eigenvalues(&a)?;
    let margin = hurwitz_margin(&a);
    let rightmost = eig.iter().copied().max_by(|x, y| x.re.total_cmp(&y.re)).unwrap_or_default();
    let stability = Stability {
        secant: secant_criterion(&params),
        hurwitz: rightmost.re < -margin,
        rightmost_eigenvalue: [rightmost.re, rightmost.im],
    };
    let mut report = CyclicReport {
        n,
        output: match args.output {
            OutputSelection::All => "all",
            OutputSelection::Last => "last",
        },
        derived: derive(&params),
        closed_form_lower_bound: None,
        exact: None,
        corollary2_upper_bound: None,
        monte_carlo: None,
        stability,
    };

    if !report.stability.hurwitz {
        emit_json(&report)?;
        return Err(Failure::stability(format!(
            "cyclic network is unstable: secant criterion {}, numeric Hurwitz test false \
             (rightmost eigenvalue {:.6} {:+.6}i)",
            report.stability.secant, rightmost.re, rightmost.im
        )));
    }

    report.closed_form_lower_bound = closed_form_lower_bound(&params).ok();
    let sys = match args.output {
        OutputSelection::All => System::with_identity_weight(a.clone()),
        OutputSelection::Last => {
            let mut e = vec![0.0; n];
            e[n - 1] = 1.0;
            report.corollary2_upper_bound = corollary2_upper_bound(&params).ok();
            if n <= args.exact_cap {
                report.exact = Some(restricted_dispersion(&a, &e)?);
            }
            System::with_output_row(a.clone(), &e)?
        }
    };
    if args.output == OutputSelection::All && n <= args.exact_cap {
        report.exact = Some(performance_measure(&sys)?);
    }
    if args.simulate {
        report.monte_carlo = Some(simulate_dispersion(&sys, &sim_config(&a, &args.sim)?)?);
    }
    emit_json(&report)
}

pub fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let spec = SweepSpec {
        beta: args.beta,
        regime: args.regime.into(),
        frak_c: args.frak_c,
        n_list: args.n_list.clone(),
        exact_cap: args.exact_cap,
    };
    let csv = render_csv(&run_sweep(&spec)?);
    match &args.out {
        Some(path) => fs::write(path, csv).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().lock().write_all(&csv).map_err(|e| Failure::input(e.to_string())),
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let sys = load_system(&args.input)?;
    let cfg = sim_config(sys.a(), &args.sim)?;
    emit_json(&simulate_dispersion(&sys, &cfg)?)
}
