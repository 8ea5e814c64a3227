//! Serialization helpers: every float prints with 17 significant digits,
//! so parsing the emitted text reproduces the f64 bit-for-bit.

use ads_lorentz::{DistanceResult, ExtremalClass, Trajectory};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn kind_name(kind: ExtremalClass) -> &'static str {
    match kind {
        ExtremalClass::Normal => "Normal",
        ExtremalClass::AbnormalPlus => "AbnormalPlus",
        ExtremalClass::AbnormalMinus => "AbnormalMinus",
    }
}

/// Single JSON object for `dist`: keys class, distance, time_attained.
/// An infinite distance serializes as the string `"inf"` (JSON has no
/// literal for it), an unattained time as `null`.
pub fn dist_json(d: &DistanceResult) -> String {
    let distance = if d.value.is_finite() {
        fmt_f64(d.value)
    } else {
        "\"inf\"".to_string()
    };
    let time = match d.time {
        Some(t) => fmt_f64(t),
        None => "null".to_string(),
    };
    format!(
        "{{\"class\":\"{}\",\"distance\":{},\"time_attained\":{}}}",
        d.class.name(),
        distance,
        time
    )
}

pub const TRAJ_CSV_HEADER: &str = "t,theta,phi,u1,u2";

pub fn traj_csv_row(t: f64, theta: f64, phi: f64, u1: f64, u2: f64) -> String {
    format!(
        "{},{},{},{},{}",
        fmt_f64(t),
        fmt_f64(theta),
        fmt_f64(phi),
        fmt_f64(u1),
        fmt_f64(u2)
    )
}

pub fn traj_json(traj: &Trajectory) -> String {
    let samples: Vec<String> = traj
        .samples
        .iter()
        .map(|s| {
            format!(
                "{{\"t\":{},\"theta\":{},\"phi\":{},\"u1\":{},\"u2\":{}}}",
                fmt_f64(s.t),
                fmt_f64(s.point.theta),
                fmt_f64(s.point.phi),
                fmt_f64(s.control.u1),
                fmt_f64(s.control.u2)
            )
        })
        .collect();
    format!(
        "{{\"kind\":\"{}\",\"continuum\":{},\"samples\":[{}]}}",
        kind_name(traj.kind),
        traj.continuum,
        samples.join(",")
    )
}
