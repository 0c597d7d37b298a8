//! Bundled models.

pub mod fixtures;
pub mod peterson;

pub use fixtures::build_fixture;
pub use peterson::{build_peterson, Peterson, PetersonKind, PetersonVariant};

use crate::error::{Error, Result};
use crate::kernel::Model;

/// Look up a model by name: `peterson` (needs a variant and `n`) or a fixture.
pub fn build_model(name: &str, variant: Option<&str>, n: Option<usize>) -> Result<Box<dyn Model>> {
    if name == "peterson" {
        let kind: PetersonKind = variant
            .ok_or_else(|| Error::usage("--variant is required for the peterson model"))?
            .parse()?;
        let n = n.unwrap_or(2);
        return Ok(Box::new(build_peterson(PetersonVariant::new(kind, n))?));
    }
    if variant.is_some() || n.is_some() {
        return Err(Error::usage(format!("model `{name}` takes no --variant or --n")));
    }
    build_fixture(name)
}
