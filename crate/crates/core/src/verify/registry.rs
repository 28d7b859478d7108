use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Task;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::reductive::{Family, ReductiveSpec};

const BUILTIN: &str = include_str!("registry.toml");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    #[default]
    Desk,
    Stretch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub name: String,
    pub group: String,
    pub ell: Vec<u64>,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub tag: Tag,
    /// Primes at which the centric analogue is run as a negative control.
    #[serde(default)]
    pub centric_control: Vec<u64>,
    /// Report counts the run must reproduce, by prime.
    #[serde(default)]
    pub expect: BTreeMap<u64, BTreeMap<String, usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryFile {
    instance: Vec<Instance>,
}

impl Instance {
    /// Expected counts at `ell`, empty when none are recorded.
    pub fn expected(&self, ell: u64) -> BTreeMap<String, usize> {
        self.expect.get(&ell).cloned().unwrap_or_default()
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        GroupSpec::parse(&self.group)
    }

    fn validate(&self) -> Result<()> {
        let spec = self.spec()?;
        for &ell in &self.ell {
            crate::groups::check_prime(ell)?;
        }
        if let Some(ell) = self.expect.keys().find(|l| !self.ell.contains(l)) {
            return Err(Error::MalformedSpec(format!(
                "registry instance {}: expectations for unlisted ell {ell}",
                self.name
            )));
        }
        let reductive = ReductiveSpec::from_group_spec(&spec);
        for task in &self.tasks {
            let ok = match task {
                Task::Defining => reductive.is_some_and(|r| {
                    r.family == Family::SL
                        && !(r.n == 2 && r.q <= 3)
                        && self.ell.iter().all(|&l| l == r.characteristic() as u64)
                }),
                Task::TheoremA | Task::Brown => reductive.is_some(),
                _ => true,
            };
            if !ok {
                return Err(Error::MalformedSpec(format!(
                    "registry instance {}: {task} does not apply",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// Parses and validates a registry in TOML form.
pub fn parse_registry(text: &str) -> Result<Vec<Instance>> {
    let file: RegistryFile = toml::from_str(text)
        .map_err(|e| Error::MalformedSpec(format!("registry: {}", e.message())))?;
    for inst in &file.instance {
        inst.validate()?;
    }
    Ok(file.instance)
}

/// The built-in instance list.
pub fn registry() -> Vec<Instance> {
    parse_registry(BUILTIN).expect("built-in registry is valid")
}

pub fn find_instance(name: &str) -> Option<Instance> {
    registry().into_iter().find(|i| i.name == name)
}
