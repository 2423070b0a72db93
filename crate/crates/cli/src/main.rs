//! `camsyn`: command-line front end for the cam-synthesis library.
//!
//! Exit codes: 0 success, 1 validation failure (bad flags, bad config,
//! infeasible design under `feasibility`), 2 solver failure (no extended
//! angle in the bracket, profile closure failure).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use camsyn_core::analysis::{
    active_interval, contact_loss_check, max_pressure_angle_with_delta, pressure_profile,
    SweepParameter, CONTACT_LOSS_THRESHOLD_DEG, HIGH_SPEED_GUIDELINE_DEG,
};
use camsyn_core::export::{
    fmt_f64, parse_config, write_pressure_csv, write_profile_csv, write_profile_svg,
    write_raster_csv, write_raster_svg, write_sweep_csv, DesignConfig, DocumentHeader, SvgOptions,
};
use camsyn_core::feasibility::{
    check_feasibility, default_a4_range, default_eta_range, rasterize_region, FeasibilityReport,
    DEFAULT_RESOLUTION,
};
use camsyn_core::solver::{
    generate_assembly, generate_pitch_assembly, is_convex_polyline, solve_extended_angle,
    ExtendedAngle,
};
use camsyn_core::{DesignParams, Error};

#[derive(Parser)]
#[command(name = "camsyn", version, about = "Multi-lobed cam synthesis and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Design config file (TOML).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Override a config key, repeatable (e.g. --set a4=10).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Samples per lobe, overriding the config.
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Treat a non-convex profile as a validation failure.
    #[arg(long)]
    require_convex: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the cam profile assembly (CSV and/or SVG).
    Profile {
        #[command(flatten)]
        common: Common,
        /// Write the profiles as SVG.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Write the profiles as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Generate the pitch curves (roller-center loci).
    Pitch {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Sample the pressure angle over the active interval.
    Pressure {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Check the design constraints; exits 1 when infeasible.
    Feasibility {
        #[command(flatten)]
        common: Common,
    },
    /// Rasterize the feasible (eta, a4) region for the config's p, b, n.
    Region {
        #[command(flatten)]
        common: Common,
        /// Cells per raster axis.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Sweep one parameter and tabulate max |mu| per value.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Parameter to vary: eta, a4, n or m.
        #[arg(long, value_name = "NAME")]
        param: String,
        /// Comma-separated values for the swept parameter.
        #[arg(long, value_name = "LIST")]
        values: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Solve the extended angle and print the root certificate.
    Delta {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 1 for validation failures, 2 for solver failures.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NoRootInBracket { .. }
        | Error::ClosureFailure { .. }
        | Error::DegenerateSpeed { .. } => 2,
        _ => 1,
    }
}

struct Loaded {
    config: DesignConfig,
    params: DesignParams,
}

fn load(common: &Common) -> Result<Loaded, Error> {
    let text = fs::read_to_string(&common.config).map_err(|e| {
        Error::ConfigParse(format!("cannot read {}: {e}", common.config.display()))
    })?;
    let mut config = parse_config(&text)?;
    for pair in &common.set {
        let (key, value) = pair.split_once('=').ok_or_else(|| Error::ConfigInvalid {
            field: pair.clone(),
            reason: "override must look like key=value".to_string(),
        })?;
        config.apply_override(key, value)?;
    }
    if let Some(samples) = common.samples {
        config.samples = samples;
    }
    if common.require_convex {
        config.require_convex = true;
    }
    let params = config.params()?;
    Ok(Loaded { config, params })
}

fn write_out(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text)
        .map_err(|e| Error::ConfigParse(format!("cannot write {}: {e}", path.display())))
}

fn feasibility_line(report: &FeasibilityReport) -> String {
    let flag = |ok: bool| if ok { "ok" } else { "violated" };
    format!(
        "feasible = {} (roller spacing {}, shaft clearance {}{}, offset-ratio lower bound {}; convex profile: {})",
        report.feasible,
        flag(report.roller_spacing_ok),
        flag(report.shaft_clearance_ok),
        if report.shaft_clearance_at_limit { " at the limit" } else { "" },
        flag(report.eta_lower_ok),
        if report.convexity_ok { "yes" } else { "no" },
    )
}

fn print_summary(params: &DesignParams, ext: &ExtendedAngle) -> Result<(), Error> {
    println!(
        "p = {} mm, n = {}, m = {}, e = {} mm (eta = {:.9}), a4 = {} mm, b = {} mm",
        params.p,
        params.n,
        params.m,
        params.e,
        params.eta(),
        params.a4,
        params.b
    );
    println!(
        "delta = {:.12} rad ({:.9} deg), residual {:.3e} mm, {} iterations",
        ext.delta,
        ext.delta.to_degrees(),
        ext.residual,
        ext.iterations
    );
    println!("{}", feasibility_line(&check_feasibility(params)));
    let max = max_pressure_angle_with_delta(params, ext.delta)?;
    println!(
        "max |mu| = {:.9} deg (tan mu = {:.12}) at psi = {:.9} rad",
        max.mu_abs_deg(),
        max.mu_abs.tan(),
        max.at_psi
    );
    if max.at_pole {
        println!(
            "warning: a single driving cam reaches |mu| = 90 deg and cannot push the follower through the full cycle"
        );
    } else if max.exceeds_guideline {
        println!(
            "warning: max |mu| exceeds the {HIGH_SPEED_GUIDELINE_DEG} deg high-speed guideline"
        );
    }
    if params.n >= 2 {
        let loss = contact_loss_check(params)?;
        if loss.exceeds {
            println!(
                "warning: |mu| exceeds the {CONTACT_LOSS_THRESHOLD_DEG} deg contact-loss threshold (max {:.6} deg)",
                loss.max_abs_mu_deg
            );
        }
    }
    Ok(())
}

fn enforce_convexity(loaded: &Loaded, assembly: &camsyn_core::CamAssembly) -> Result<(), Error> {
    if !loaded.config.require_convex {
        return Ok(());
    }
    for cam in &assembly.cams {
        if !is_convex_polyline(cam)? {
            return Err(Error::ConfigInvalid {
                field: "require_convex".to_string(),
                reason: format!(
                    "profile is not convex (offset ratio eta = {:.6} is below 1/pi)",
                    loaded.params.eta()
                ),
            });
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Profile { common, svg, csv } => {
            let loaded = load(&common)?;
            let params = loaded.params;
            let ext = solve_extended_angle(&params, loaded.config.delta_tol)?;
            let assembly = generate_assembly(&params, loaded.config.samples)?;
            enforce_convexity(&loaded, &assembly)?;
            let header = DocumentHeader {
                params,
                delta: ext.delta,
                feasibility: check_feasibility(&params),
            };
            if let Some(path) = &csv {
                write_out(path, &write_profile_csv(&assembly, &header))?;
            }
            if let Some(path) = &svg {
                let pitch = generate_pitch_assembly(&params, loaded.config.samples)?;
                let options = SvgOptions { pitch_overlay: Some(pitch) };
                write_out(path, &write_profile_svg(&assembly, &options))?;
            }
            print_summary(&params, &ext)?;
            println!(
                "profile: {} cams, {} points each",
                assembly.cams.len(),
                assembly.cams[0].len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Pitch { common, svg, csv } => {
            let loaded = load(&common)?;
            let params = loaded.params;
            let ext = solve_extended_angle(&params, loaded.config.delta_tol)?;
            let assembly = generate_pitch_assembly(&params, loaded.config.samples)?;
            let header = DocumentHeader {
                params,
                delta: ext.delta,
                feasibility: check_feasibility(&params),
            };
            if let Some(path) = &csv {
                write_out(path, &write_profile_csv(&assembly, &header))?;
            }
            if let Some(path) = &svg {
                write_out(path, &write_profile_svg(&assembly, &SvgOptions::default()))?;
            }
            print_summary(&params, &ext)?;
            println!(
                "pitch: {} curves, {} points each",
                assembly.cams.len(),
                assembly.cams[0].len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Pressure { common, csv } => {
            let loaded = load(&common)?;
            let params = loaded.params;
            let ext = solve_extended_angle(&params, loaded.config.delta_tol)?;
            let interval = active_interval(&params, ext.delta);
            let profile = pressure_profile(&params, &interval, loaded.config.samples)?;
            if let Some(path) = &csv {
                let header = DocumentHeader {
                    params,
                    delta: ext.delta,
                    feasibility: check_feasibility(&params),
                };
                write_out(path, &write_pressure_csv(&profile, &header))?;
            }
            print_summary(&params, &ext)?;
            println!(
                "active interval: [{:.9}, {:.9}] rad (length {:.9} rad{})",
                interval.psi_lo,
                interval.psi_hi,
                interval.length(),
                if interval.extrapolated { ", extrapolated for m >= 4" } else { "" }
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Feasibility { common } => {
            let loaded = load(&common)?;
            let report = check_feasibility(&loaded.params);
            println!("{}", feasibility_line(&report));
            println!(
                "margins: roller spacing {:+.6} mm, shaft clearance {:+.6} mm, offset ratio {:+.6}, convexity {:+.6}",
                report.roller_spacing_margin,
                report.shaft_clearance_margin,
                report.eta_lower_margin,
                report.convexity_margin
            );
            let mut failed: Vec<&str> = Vec::new();
            if !report.roller_spacing_ok {
                failed.push("roller spacing: the roller radius must stay below half the roller pitch p/(2n)");
            }
            if !report.shaft_clearance_ok {
                failed.push("shaft clearance: the roller must clear the camshaft, a4 <= eta*p - b");
            }
            if !report.eta_lower_ok {
                failed.push("offset ratio: eta must exceed 1/(2*pi) for the cam to push the follower forward");
            }
            if loaded.config.require_convex && !report.convexity_ok {
                failed.push("convexity: eta must be at least 1/pi for a convex profile");
            }
            if failed.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                for reason in failed {
                    println!("infeasible - {reason}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Region { common, resolution, svg, csv } => {
            let loaded = load(&common)?;
            let params = loaded.params;
            let raster = rasterize_region(
                params.p,
                params.b,
                params.n,
                default_eta_range(),
                default_a4_range(params.p),
                resolution,
                resolution,
            )?;
            if let Some(path) = &csv {
                write_out(path, &write_raster_csv(&raster))?;
            }
            if let Some(path) = &svg {
                write_out(path, &write_raster_svg(&raster))?;
            }
            println!(
                "region: p = {} mm, b = {} mm, n = {}, {}x{} cells",
                raster.p,
                raster.b,
                raster.n,
                raster.eta_axis.len(),
                raster.a4_axis.len()
            );
            match raster.max_feasible_a4 {
                Some(a4) => println!("max feasible a4 = {:.6} mm", a4),
                None => println!("no feasible cell in the sampled range"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { common, param, values, csv } => {
            let loaded = load(&common)?;
            let parameter = SweepParameter::parse(&param)?;
            let parsed: Result<Vec<f64>, Error> = values
                .split(',')
                .map(|v| {
                    v.trim().parse::<f64>().map_err(|e| Error::InvalidParameter {
                        name: "values",
                        reason: format!("`{v}` is not a number: {e}"),
                    })
                })
                .collect();
            let result = camsyn_core::sweep(&loaded.params, parameter, &parsed?)?;
            if let Some(path) = &csv {
                write_out(path, &write_sweep_csv(&result))?;
            }
            println!(
                "{:>14}  {:>14}  {:>14}  {:>14}  {:>8}  {:>5}",
                format!("{} ({})", parameter.name(), parameter.unit()),
                "max|mu| deg",
                "interval rad",
                "delta rad",
                "feasible",
                "warn"
            );
            for i in 0..result.values.len() {
                println!(
                    "{:>14.6}  {:>14.6}  {:>14.6}  {:>14.6}  {:>8}  {:>5}",
                    result.values[i],
                    result.max_abs_pressure_angle_deg[i],
                    result.interval_length[i],
                    result.delta[i],
                    result.feasible[i],
                    result.warnings[i]
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta { common } => {
            let loaded = load(&common)?;
            let ext = solve_extended_angle(&loaded.params, loaded.config.delta_tol)?;
            println!("delta_rad = {}", fmt_f64(ext.delta));
            println!("delta_deg = {}", fmt_f64(ext.delta.to_degrees()));
            println!("residual_mm = {}", fmt_f64(ext.residual));
            println!("iterations = {}", ext.iterations);
            Ok(ExitCode::SUCCESS)
        }
    }
}
