use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{cached, render, Cache, CacheKey, Outcome, RunConfig};
use crate::algebra::splitting_context;
use crate::error::{Error, Result};
use crate::esplit::{build_esplit_poset, EsplitPoset};
use crate::groups::Group;
use crate::pairs::{block_pairs, build_brauer_poset, BrauerPoset, Flavor, PairId};
use crate::reductive::{
    build_reductive, enumerate_esplit_levis, prime_context, tits_building, ReductiveSpec,
};
use crate::topo::{homology as integral_homology, order_complex, Homology, Poset};
use crate::verify::{
    brauer_context, check_expectations, find_instance, require_theorem_a, run_task, select_blocks,
    BlockSelector, HomologyRecord, Task, TaskOptions, VerificationReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRow {
    pub index: usize,
    pub principal: bool,
    pub defect_order: usize,
    /// Nontrivial Brauer pairs belonging to the block.
    pub brauer_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksTable {
    pub group: String,
    pub ell: u64,
    pub group_order: usize,
    pub field: String,
    pub ell_subgroups: usize,
    pub blocks: Vec<BlockRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetListing<P> {
    pub group: String,
    pub ell: u64,
    pub flavor: Option<Flavor>,
    pub posets: Vec<P>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub block: usize,
    pub vertices: usize,
    pub simplices: usize,
    pub reduced: Homology,
    pub record: HomologyRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub group: String,
    pub ell: u64,
    pub flavor: Flavor,
    pub entries: Vec<HomologyEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingSummary {
    pub group: String,
    pub simplices_by_dimension: Vec<usize>,
    pub reduced: Homology,
    pub record: HomologyRecord,
}

fn ell(cfg: &RunConfig) -> u64 {
    cfg.ell.expect("validated")
}

fn key(cfg: &RunConfig, command: &str, extra: Vec<(&'static str, String)>) -> CacheKey {
    let mut parts = vec![
        ("command", command.to_string()),
        ("group", cfg.group.to_string()),
    ];
    if let Some(l) = cfg.ell {
        parts.push(("ell", l.to_string()));
    }
    parts.extend(extra);
    CacheKey::new(parts)
}

fn block_key(sel: BlockSelector) -> String {
    match sel {
        BlockSelector::Principal => "principal".into(),
        BlockSelector::Index(b) => b.to_string(),
        BlockSelector::AllPositiveDefect => "all".into(),
    }
}

fn build_group(cfg: &RunConfig) -> Result<Group> {
    Group::from_spec(&cfg.group, cfg.caps.max_group_order)
}

fn reductive(cfg: &RunConfig) -> Result<ReductiveSpec> {
    let r = ReductiveSpec::from_group_spec(&cfg.group)
        .ok_or_else(|| Error::Precondition(format!("{} is not GL_n(q) or SL_n(q)", cfg.group)))?;
    if r.order() > cfg.caps.max_group_order as u128 {
        return Err(Error::GroupTooLarge(cfg.caps.max_group_order));
    }
    Ok(r)
}

/// Strict upper covers of each vertex.
fn covers(p: &Poset) -> Vec<Vec<usize>> {
    (0..p.len())
        .map(|i| {
            (0..p.len())
                .filter(|&j| p.lt(i, j) && !(0..p.len()).any(|k| p.lt(i, k) && p.lt(k, j)))
                .collect()
        })
        .collect()
}

fn poset_text(out: &mut String, p: &Poset) {
    let up = covers(p);
    for (i, cs) in up.iter().enumerate() {
        let names: Vec<&str> = cs.iter().map(|&j| p.label(j)).collect();
        if names.is_empty() {
            let _ = writeln!(out, "  {}", p.label(i));
        } else {
            let _ = writeln!(out, "  {} < {}", p.label(i), names.join(", "));
        }
    }
}

pub(super) fn blocks(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Outcome> {
    let table = cached(
        cache,
        || key(cfg, "blocks", Vec::new()),
        || {
            let g = build_group(cfg)?;
            let ctx = brauer_context(&g, ell(cfg))?;
            let cb = ctx.ambient_blocks()?;
            let mut rows = Vec::new();
            for b in 0..cb.num_blocks() {
                rows.push(BlockRow {
                    index: b,
                    principal: cb.is_principal(b),
                    defect_order: ctx.defect_order(PairId {
                        subgroup: 0,
                        block: b,
                    })?,
                    brauer_pairs: block_pairs(&ctx, b)?.len(),
                });
            }
            let f = splitting_context(&g, ell(cfg))?.field;
            Ok(BlocksTable {
                group: cfg.group.to_string(),
                ell: ell(cfg),
                group_order: g.order(),
                field: format!("GF({}^{})", f.characteristic(), f.degree()),
                ell_subgroups: ctx.subgroups().len() - 1,
                blocks: rows,
            })
        },
    )?;
    let output = render(cfg.format, &table, |t| {
        let mut s = format!(
            "{} |G| = {} ell = {} field {} ({} nontrivial ell-subgroups)\n",
            t.group, t.group_order, t.ell, t.field, t.ell_subgroups
        );
        let _ = writeln!(
            s,
            "{:>5}  {:>9}  {:>6}  {:>5}",
            "block", "principal", "defect", "pairs"
        );
        for r in &t.blocks {
            let _ = writeln!(
                s,
                "{:>5}  {:>9}  {:>6}  {:>5}",
                r.index, r.principal, r.defect_order, r.brauer_pairs
            );
        }
        s
    })?;
    Ok(Outcome { output, pass: true })
}

fn brauer_listing(cfg: &RunConfig, cache: Option<&Cache>) -> Result<PosetListing<BrauerPoset>> {
    let sel = cfg.block.unwrap_or(BlockSelector::Principal);
    let extra = vec![
        ("flavor", cfg.flavor.to_string()),
        ("block", block_key(sel)),
    ];
    cached(
        cache,
        || key(cfg, "brauer-poset", extra),
        || {
            let g = build_group(cfg)?;
            let ctx = brauer_context(&g, ell(cfg))?;
            let posets = select_blocks(&ctx, sel)?
                .into_iter()
                .map(|b| build_brauer_poset(&ctx, b, cfg.flavor))
                .collect::<Result<Vec<_>>>()?;
            Ok(PosetListing {
                group: cfg.group.to_string(),
                ell: ell(cfg),
                flavor: Some(cfg.flavor),
                posets,
            })
        },
    )
}

pub(super) fn brauer_poset(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Outcome> {
    let listing = brauer_listing(cfg, cache)?;
    let output = render(cfg.format, &listing, |l| {
        let mut s = String::new();
        for p in &l.posets {
            let _ = writeln!(
                s,
                "{} ell = {} block {} ({}): {} pairs",
                l.group,
                l.ell,
                p.block,
                p.flavor,
                p.len()
            );
            poset_text(&mut s, &p.to_poset());
        }
        s
    })?;
    Ok(Outcome { output, pass: true })
}

pub(super) fn esplit_poset(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Outcome> {
    let sel = cfg.block.unwrap_or(BlockSelector::Principal);
    let spec = reductive(cfg)?;
    let pc = prime_context(&spec, ell(cfg))?;
    require_theorem_a(&spec, &pc)?;
    let listing: PosetListing<EsplitPoset> = cached(
        cache,
        || key(cfg, "esplit-poset", vec![("block", block_key(sel))]),
        || {
            let g = build_reductive(&spec, cfg.caps.max_group_order)?;
            let levis = enumerate_esplit_levis(&g, &spec, &pc)?;
            let ctx = brauer_context(&g, ell(cfg))?;
            let posets = select_blocks(&ctx, sel)?
                .into_iter()
                .map(|b| build_esplit_poset(&ctx, &spec, &pc, &levis, b))
                .collect::<Result<Vec<_>>>()?;
            Ok(PosetListing {
                group: cfg.group.to_string(),
                ell: ell(cfg),
                flavor: None,
                posets,
            })
        },
    )?;
    let output = render(cfg.format, &listing, |l| {
        let mut s = String::new();
        for p in &l.posets {
            let _ = writeln!(
                s,
                "{} ell = {} e = {} block {}: {} e-split pairs",
                p.spec,
                l.ell,
                p.context.e,
                p.block,
                p.len()
            );
            poset_text(&mut s, &p.to_poset());
        }
        s
    })?;
    Ok(Outcome { output, pass: true })
}

pub(super) fn homology(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Outcome> {
    let listing = brauer_listing(cfg, cache)?;
    let mut entries = Vec::new();
    for p in &listing.posets {
        let cx = order_complex(&p.to_poset());
        entries.push(HomologyEntry {
            block: p.block,
            vertices: p.len(),
            simplices: cx.total(),
            reduced: integral_homology(&cx, true)?,
            record: HomologyRecord::of(&cx)?,
        });
    }
    let table = HomologyTable {
        group: listing.group,
        ell: listing.ell,
        flavor: cfg.flavor,
        entries,
    };
    let output = render(cfg.format, &table, |t| {
        let mut s = format!("{} ell = {} flavor {}\n", t.group, t.ell, t.flavor);
        for e in &t.entries {
            let h = if e.reduced.is_zero() {
                "acyclic".to_string()
            } else {
                e.reduced.to_string()
            };
            let _ = writeln!(
                s,
                "  block {}: {} vertices, {} simplices, {h}",
                e.block, e.vertices, e.simplices
            );
        }
        s
    })?;
    Ok(Outcome { output, pass: true })
}

pub(super) fn building(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Outcome> {
    let spec = reductive(cfg)?;
    let summary = cached(
        cache,
        || key(cfg, "building", Vec::new()),
        || {
            let g = build_reductive(&spec, cfg.caps.max_group_order)?;
            let cx = tits_building(&g)?;
            Ok(BuildingSummary {
                group: cfg.group.to_string(),
                simplices_by_dimension: (0..=cx.dim().unwrap_or(0)).map(|k| cx.count(k)).collect(),
                reduced: integral_homology(&cx, true)?,
                record: HomologyRecord::of(&cx)?,
            })
        },
    )?;
    let output = render(cfg.format, &summary, |b| {
        format!(
            "Tits building of {}: simplices by dimension {:?}; {}\n",
            b.group,
            b.simplices_by_dimension,
            if b.reduced.is_zero() {
                "acyclic".to_string()
            } else {
                b.reduced.to_string()
            }
        )
    })?;
    Ok(Outcome { output, pass: true })
}

pub(super) fn verify(
    cfg: &RunConfig,
    task: Task,
    cache: Option<&Cache>,
) -> Result<VerificationReport> {
    if matches!(task, Task::Defining | Task::TheoremA | Task::Brown) {
        reductive(cfg)?;
    }
    let opts = TaskOptions {
        block: cfg.block.unwrap_or(BlockSelector::AllPositiveDefect),
        seed: cfg.seed,
        centric_control: cfg.centric_control,
        group_cap: cfg.caps.max_group_order,
    };
    let instance = cfg
        .instance
        .as_deref()
        .and_then(find_instance)
        .filter(|i| i.spec().ok().as_ref() == Some(&cfg.group));
    let extra = vec![
        ("task", task.to_string()),
        ("block", block_key(opts.block)),
        ("seed", opts.seed.to_string()),
        ("centric-control", opts.centric_control.to_string()),
        (
            "instance",
            instance.as_ref().map_or(String::new(), |i| i.name.clone()),
        ),
    ];
    cached(
        cache,
        || key(cfg, "verify", extra),
        || {
            let mut r = run_task(task, &cfg.group, ell(cfg), &opts)?;
            if let Some(i) = &instance {
                check_expectations(&mut r, &i.expected(ell(cfg)));
            }
            Ok(r)
        },
    )
}
