use serde::Serialize;

use super::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Open wedge `{z : re z > 0, |im z| < slope · re z}` about the positive real
/// axis. The slope stands for `tan θ` of the half-opening angle, so angular
/// conditions stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WedgeSpec {
    slope_bound: Rational,
}

impl WedgeSpec {
    pub fn new(slope_bound: Rational) -> Result<Self> {
        if !slope_bound.is_positive() {
            return Err(Error::InvalidConfig(format!(
                "wedge slope bound must be positive, got {slope_bound}"
            )));
        }
        Ok(WedgeSpec { slope_bound })
    }

    pub fn slope_bound(&self) -> &Rational {
        &self.slope_bound
    }

    /// Exact membership test.
    pub fn contains(&self, z: &GaussianRational) -> bool {
        z.re.is_positive() && z.im.abs() < &self.slope_bound * &z.re
    }
}

impl Default for WedgeSpec {
    /// Slope bound 1/8.
    fn default() -> Self {
        WedgeSpec {
            slope_bound: Rational::from_i128_parts(1, 8).expect("nonzero"),
        }
    }
}

pub fn wedge_member(z: &GaussianRational, wedge: &WedgeSpec) -> bool {
    wedge.contains(z)
}
