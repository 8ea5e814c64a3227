//! The five subcommands. Each takes explicit output sinks so the self-test
//! and the tests can run them in-process and capture both streams.

use std::io::Write;

use ads_lorentz::{
    classify, killing_eval, lorentz_distance_from_origin, stream_samples, synthesis_trajectory,
    transport_distance_with_step, Error, KillingField, Point, ReachabilityClass,
};

use crate::output::{dist_json, fmt_f64, traj_csv_row, traj_json, TRAJ_CSV_HEADER};
use crate::Config;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NO_TRAJECTORY: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridWhat {
    Dist,
    Reach,
}

/// Rectangle and resolution for `grid` and `stream`.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub theta_min: f64,
    pub theta_max: f64,
    pub phi_min: f64,
    pub phi_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    fn validate(&self, err: &mut dyn Write) -> std::io::Result<bool> {
        let finite = [self.theta_min, self.theta_max, self.phi_min, self.phi_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            writeln!(err, "error: grid bounds must be finite")?;
            return Ok(false);
        }
        if self.nx < 2 || self.ny < 2 {
            writeln!(err, "error: nx and ny must be at least 2")?;
            return Ok(false);
        }
        Ok(true)
    }

    fn theta(&self, i: usize) -> f64 {
        self.theta_min + (self.theta_max - self.theta_min) * i as f64 / (self.nx - 1) as f64
    }

    fn phi(&self, j: usize) -> f64 {
        self.phi_min + (self.phi_max - self.phi_min) * j as f64 / (self.ny - 1) as f64
    }
}

fn check_finite(values: &[f64], err: &mut dyn Write) -> std::io::Result<bool> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(true)
    } else {
        writeln!(err, "error: coordinates must be finite")?;
        Ok(false)
    }
}

/// `traj THETA PHI`: emit the optimal trajectory to the target, or exit 2
/// with the class name when none exists.
pub fn run_traj(
    theta: f64,
    phi: f64,
    samples: usize,
    format: TrajFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    if !check_finite(&[theta, phi], err)? {
        return Ok(EXIT_USAGE);
    }
    if samples < 2 {
        writeln!(err, "error: --samples must be at least 2")?;
        return Ok(EXIT_USAGE);
    }
    match synthesis_trajectory(Point::new(theta, phi), samples) {
        Ok(traj) => {
            match format {
                TrajFormat::Csv => {
                    writeln!(out, "{TRAJ_CSV_HEADER}")?;
                    for s in &traj.samples {
                        writeln!(
                            out,
                            "{}",
                            traj_csv_row(
                                s.t,
                                s.point.theta,
                                s.point.phi,
                                s.control.u1,
                                s.control.u2
                            )
                        )?;
                    }
                }
                TrajFormat::Json => writeln!(out, "{}", traj_json(&traj))?,
            }
            Ok(EXIT_OK)
        }
        Err(Error::NoOptimalTrajectory { class }) => {
            let d = lorentz_distance_from_origin(Point::new(theta, phi));
            let dist = if d.value.is_finite() {
                fmt_f64(d.value)
            } else {
                "inf".to_string()
            };
            match class {
                ReachabilityClass::UpperBoundary(_) => {
                    writeln!(err, "{}: distance={dist} (not attained)", class.name())?
                }
                ReachabilityClass::Outside => {
                    writeln!(err, "{}: distance={dist} (no causal curve)", class.name())?
                }
                _ => writeln!(err, "{}: distance={dist}", class.name())?,
            }
            Ok(EXIT_NO_TRAJECTORY)
        }
        Err(Error::TargetIsOrigin) => {
            writeln!(err, "LowerBoundary: distance=0 (target is the origin)")?;
            Ok(EXIT_NO_TRAJECTORY)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(EXIT_USAGE)
        }
    }
}

/// `dist THETA PHI [--from THETA0 PHI0]`: one JSON object with the
/// classification, the distance, and the attainment time.
pub fn run_dist(
    theta: f64,
    phi: f64,
    from: Option<(f64, f64)>,
    cfg: &Config,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    let mut coords = vec![theta, phi];
    if let Some((t0, p0)) = from {
        coords.extend([t0, p0]);
    }
    if !check_finite(&coords, err)? {
        return Ok(EXIT_USAGE);
    }
    let target = Point::new(theta, phi);
    let result = match from {
        None => lorentz_distance_from_origin(target),
        Some((t0, p0)) => {
            match transport_distance_with_step(Point::new(t0, p0), target, cfg.flow_step) {
                Ok(d) => d,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_USAGE);
                }
            }
        }
    };
    writeln!(out, "{}", dist_json(&result))?;
    Ok(EXIT_OK)
}

/// `grid --what dist|reach`: row-major CSV over the rectangle, θ slow.
pub fn run_grid(
    what: GridWhat,
    spec: GridSpec,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    if !spec.validate(err)? {
        return Ok(EXIT_USAGE);
    }
    match what {
        GridWhat::Dist => writeln!(out, "theta,phi,class,distance")?,
        GridWhat::Reach => writeln!(out, "theta,phi,class,reachable")?,
    }
    for i in 0..spec.nx {
        let theta = spec.theta(i);
        for j in 0..spec.ny {
            let phi = spec.phi(j);
            let p = Point::new(theta, phi);
            match what {
                GridWhat::Dist => {
                    let d = lorentz_distance_from_origin(p);
                    writeln!(
                        out,
                        "{},{},{},{}",
                        fmt_f64(theta),
                        fmt_f64(phi),
                        d.class.name(),
                        fmt_f64(d.value)
                    )?;
                }
                GridWhat::Reach => {
                    let class = classify(p);
                    writeln!(
                        out,
                        "{},{},{},{}",
                        fmt_f64(theta),
                        fmt_f64(phi),
                        class.name(),
                        class != ReachabilityClass::Outside
                    )?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// `stream --field 1|2|3`: Killing-field samples over the rectangle for
/// external stream plotting.
pub fn run_stream(
    field: u8,
    spec: GridSpec,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    if !spec.validate(err)? {
        return Ok(EXIT_USAGE);
    }
    let Some(k) = KillingField::from_index(field) else {
        writeln!(err, "error: --field must be 1, 2 or 3")?;
        return Ok(EXIT_USAGE);
    };
    writeln!(out, "theta,phi,v_theta,v_phi")?;
    for (p, v) in stream_samples(
        k,
        (spec.theta_min, spec.theta_max),
        (spec.phi_min, spec.phi_max),
        spec.nx,
        spec.ny,
    ) {
        debug_assert_eq!(v, killing_eval(k, p));
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(p.theta),
            fmt_f64(p.phi),
            fmt_f64(v.d_theta),
            fmt_f64(v.d_phi)
        )?;
    }
    Ok(EXIT_OK)
}
