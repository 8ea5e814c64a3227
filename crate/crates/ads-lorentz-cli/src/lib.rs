//! Command implementations behind the `ads-lorentz` binary, split out so
//! the self-test and the integration tests can drive them in-process.
//!
//! Exit-code contract: 0 success, 1 usage or numeric error, 2 requested a
//! trajectory to a target that has none.

pub mod commands;
pub mod output;
pub mod selftest;

/// Runtime configuration. `flow_step` is the initial RK4 step for Killing
/// flows (default 1e−3, overridable through the `ADS_LORENTZ_STEP`
/// environment variable; must be in (0, 1e−2]).
#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub flow_step: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            flow_step: ads_lorentz::DEFAULT_FLOW_STEP,
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Config, String> {
        match std::env::var("ADS_LORENTZ_STEP") {
            Err(_) => Ok(Config::default()),
            Ok(raw) => {
                let step: f64 = raw
                    .parse()
                    .map_err(|_| format!("ADS_LORENTZ_STEP: not a number: {raw:?}"))?;
                if !(step > 0.0 && step <= 1e-2) {
                    return Err(format!("ADS_LORENTZ_STEP: step {step} outside (0, 1e-2]"));
                }
                Ok(Config { flow_step: step })
            }
        }
    }
}
