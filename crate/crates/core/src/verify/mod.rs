//! Per-instance verification harnesses and their reports.

mod harness;
mod registry;
mod report;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub(crate) use harness::{brauer_context, select_blocks};
pub use harness::{
    principal_pairs_isomorphism, require_theorem_a, verify_block_axioms, verify_brown_corollary,
    verify_lemma_abelian, verify_prop_almost_centric, verify_theorem_a, verify_thm_defining,
    BlockSelector,
};
pub use registry::{find_instance, parse_registry, registry, Instance, Tag};
pub use report::{Check, HomologyRecord, VerificationReport, VERSION};

use crate::error::{Error, Result};
use crate::groups::{Group, GroupSpec};
use crate::reductive::ReductiveSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Axioms,
    LemmaAb,
    PropAc,
    Defining,
    TheoremA,
    Brown,
}

impl Task {
    pub const ALL: [Task; 6] = [
        Task::Axioms,
        Task::LemmaAb,
        Task::PropAc,
        Task::Defining,
        Task::TheoremA,
        Task::Brown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Axioms => "axioms",
            Task::LemmaAb => "lemma-ab",
            Task::PropAc => "prop-ac",
            Task::Defining => "defining",
            Task::TheoremA => "theorem-a",
            Task::Brown => "brown",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Task> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown verification task {s:?}")))
    }
}

/// Everything a harness run needs besides the group itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TaskOptions {
    pub block: BlockSelector,
    pub seed: u64,
    pub centric_control: bool,
    pub group_cap: usize,
}

impl Default for TaskOptions {
    fn default() -> TaskOptions {
        TaskOptions {
            block: BlockSelector::AllPositiveDefect,
            seed: 0,
            centric_control: false,
            group_cap: crate::groups::DEFAULT_GROUP_CAP,
        }
    }
}

fn reductive(spec: &GroupSpec, task: Task) -> Result<ReductiveSpec> {
    ReductiveSpec::from_group_spec(spec)
        .ok_or_else(|| Error::Precondition(format!("{task} needs a GL or SL group, got {spec}")))
}

fn check_cap(spec: &ReductiveSpec, cap: usize) -> Result<()> {
    if spec.order() > cap as u128 {
        return Err(Error::GroupTooLarge(cap));
    }
    Ok(())
}

/// Dispatches one harness.
pub fn run_task(
    task: Task,
    spec: &GroupSpec,
    ell: u64,
    opts: &TaskOptions,
) -> Result<VerificationReport> {
    crate::groups::check_prime(ell)?;
    match task {
        Task::Axioms | Task::LemmaAb | Task::PropAc => {
            let g = Group::from_spec(spec, opts.group_cap)?;
            match task {
                Task::Axioms => verify_block_axioms(&g, ell, opts.seed),
                Task::LemmaAb => verify_lemma_abelian(&g, ell, opts.block),
                _ => verify_prop_almost_centric(&g, ell, opts.block, opts.centric_control),
            }
        }
        Task::Defining => {
            let r = reductive(spec, task)?;
            check_cap(&r, opts.group_cap)?;
            if ell != r.characteristic() as u64 {
                return Err(Error::Precondition(format!(
                    "defining needs ell = {}",
                    r.characteristic()
                )));
            }
            verify_thm_defining(&r)
        }
        Task::TheoremA => {
            let r = reductive(spec, task)?;
            check_cap(&r, opts.group_cap)?;
            verify_theorem_a(&r, ell)
        }
        Task::Brown => {
            let r = reductive(spec, task)?;
            check_cap(&r, opts.group_cap)?;
            verify_brown_corollary(&r, ell)
        }
    }
}

/// Runs a registry instance for one task and prime and checks its
/// expected counts.
pub fn run_instance(
    inst: &Instance,
    task: Task,
    ell: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let opts = TaskOptions {
        seed,
        centric_control: inst.centric_control.contains(&ell),
        ..TaskOptions::default()
    };
    let mut r = run_task(task, &inst.spec()?, ell, &opts)?;
    check_expectations(&mut r, &inst.expected(ell));
    Ok(r)
}

/// Adds one check per expected count the report records.
pub fn check_expectations(r: &mut VerificationReport, expect: &BTreeMap<String, usize>) {
    for (k, &v) in expect {
        if let Some(&got) = r.counts.get(k) {
            let witness = if got == v {
                Vec::new()
            } else {
                vec![format!("expected {v}, got {got}")]
            };
            r.check(format!("expected-{k}"), got == v, witness);
        }
    }
}
