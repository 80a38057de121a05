//! Normalization algorithms.
//!
//! * [`explicit_generator`] + [`direct_transform`]: the generator
//!   `G = S_H ∂H/∂ε` in one pass, then the Lie-Deprit triangle.
//! * [`deprit_classical`]: the order-by-order Deprit triangle with a
//!   non-secular generator.
//! * [`henrard_normalize`]: order-by-order construction of the inverse
//!   transform's generator.
//!
//! Everything runs in the Birkhoff frame.

mod classical;
mod explicit;
mod model;
mod transform;

use std::fmt;
use std::str::FromStr;

pub use classical::{deprit_classical, henrard_normalize};
pub use explicit::explicit_generator;
pub use model::{dh_deps, GeneratorSeries, HamiltonianModel};
pub use transform::{direct_transform, direct_transform_fn, henrard_inverse};

use crate::algebra::PolySeries;
use crate::error::{usage, Error, Result};

/// Normalization algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Explicit,
    Deprit,
    Henrard,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Explicit, Method::Deprit, Method::Henrard];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Explicit => "explicit",
            Method::Deprit => "deprit",
            Method::Henrard => "henrard",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown method '{s}'")))
    }
}

/// Output of one normalization run.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub method: Method,
    pub order: u32,
    /// `G` of the direct transform, or `G̃` of the inverse one for [`Method::Henrard`].
    pub generator: GeneratorSeries,
    /// `H̃`, secular, truncated at `ε^order`.
    pub normalized: PolySeries,
}

impl Normalization {
    /// `f ↦ U⁻¹ f`, the map taking normalized-frame functions back to the original variables.
    pub fn pull_back(&self, f: &PolySeries) -> Result<PolySeries> {
        match self.method {
            Method::Henrard => direct_transform_fn(&self.generator, f, self.order),
            _ => henrard_inverse(&self.generator, f, self.order),
        }
    }
}

/// Runs `method` to order `N`.
pub fn normalize(h: &HamiltonianModel, order: u32, method: Method) -> Result<Normalization> {
    if order == 0 {
        return usage("order must be at least 1");
    }
    let (generator, normalized) = match method {
        Method::Explicit => {
            let g = explicit_generator(h, order)?;
            let ht = direct_transform(&g, h, order)?;
            (g, ht)
        }
        Method::Deprit => deprit_classical(h, order)?,
        Method::Henrard => henrard_normalize(h, order)?,
    };
    Ok(Normalization {
        method,
        order,
        generator,
        normalized,
    })
}
