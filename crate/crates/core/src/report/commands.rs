use std::collections::HashMap;

use rayon::prelude::*;

use crate::families::{automorphism_group, AutGroupDescription, AutSubgroup, FamilySetup, FamilyTag};
use crate::fixloc::{class_label, fixed_locus_table, fixed_locus_upstairs, verify_against_grid, FixlocError};
use crate::invariants::classify_quotient;
use crate::pi1::pi1_of_quotient;

use super::config::{RunConfig, Selector};
use super::render::{AutLine, FixLine, Pi1Line, QuotientLine, Report};
use super::ReportError;

fn fixloc_err(e: FixlocError) -> ReportError {
    match e {
        FixlocError::BadGrid(m) | FixlocError::Unsupported(m) => ReportError::Usage(m),
        FixlocError::Consistency(m) => ReportError::Consistency(m),
    }
}

fn load(config: &RunConfig) -> Result<(FamilySetup, AutGroupDescription), ReportError> {
    let setup = config.setup()?;
    let aut = automorphism_group(&setup);
    Ok((setup, aut))
}

/// The fixed-locus table of the D4 family, one row per automorphism class (t₃ ≠ 1/2 rows merged).
pub fn cmd_fixtable(config: &RunConfig) -> Result<Report, ReportError> {
    if config.family != FamilyTag::D4 {
        return Err(ReportError::Usage("fixtable is defined for the d4 family".into()));
    }
    let (setup, aut) = load(config)?;
    let rows = fixed_locus_table(&setup, &aut).map_err(fixloc_err)?;
    let reps: HashMap<String, usize> = aut.classes.iter().enumerate().map(|(i, c)| (class_label(&c.rep, &setup), i)).collect();
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let verified = if config.oracle {
            let mut ok = true;
            for label in &r.classes {
                let alpha = &aut.classes[reps[label]].rep;
                let comps = fixed_locus_upstairs(alpha, &setup.covering);
                ok &= verify_against_grid(alpha, &setup.covering, &comps, config.grid).map_err(fixloc_err)?.agree;
            }
            Some(ok)
        } else {
            None
        };
        out.push(FixLine {
            t1: r.t1,
            t2: r.t2,
            t3: r.t3,
            components: r.components,
            count: r.count,
            classes: r.classes,
            flagged: r.flagged,
            verified,
            grid: config.oracle.then_some(config.grid),
        });
    }
    Ok(Report::Fixtable(out))
}

/// Subgroups selected by the config; `unset` picks the order-2 subgroups when `fallback_order_two`.
fn selected(config: &RunConfig, setup: &FamilySetup, aut: &AutGroupDescription, fallback_order_two: bool) -> Result<Vec<AutSubgroup>, ReportError> {
    if let Some(u) = config.selected_subgroup(setup, aut)? {
        return Ok(vec![u]);
    }
    Ok(match config.subgroup {
        Selector::AllSubgroups => aut.subgroups(config.subgroup_order_cap()).into_iter().filter(|u| u.order() > 1).collect(),
        _ if fallback_order_two => aut.subgroups(2).into_iter().filter(|u| u.order() == 2).collect(),
        _ => vec![aut.subgroup(&[])],
    })
}

pub fn quotient_line(setup: &FamilySetup, aut: &AutGroupDescription, u: &AutSubgroup) -> Result<QuotientLine, ReportError> {
    let q = classify_quotient(setup, aut, u).map_err(|e| ReportError::Consistency(e.to_string()))?;
    Ok(QuotientLine {
        generators: u.describe(aut, setup),
        order: u.order(),
        class: q.class,
        h11: q.hodge.h11,
        h21: q.hodge.h21,
        euler: q.euler,
        pi1: q.pi1,
        isolated_points: q.isolated_points,
        closed_form_points: q.closed_form_points.map(|r| r.to_string()),
    })
}

/// (generators, h¹¹, h²¹, π₁) of the resolved quotients X/Υ. Without a selector: all Υ of order 2.
pub fn cmd_quotients(config: &RunConfig) -> Result<Report, ReportError> {
    let (setup, aut) = load(config)?;
    let subs = selected(config, &setup, &aut, true)?;
    let rows = subs.par_iter().map(|u| quotient_line(&setup, &aut, u)).collect::<Result<Vec<_>, _>>()?;
    Ok(Report::Quotients(rows))
}

pub fn cmd_auts(config: &RunConfig) -> Result<Report, ReportError> {
    let (setup, aut) = load(config)?;
    let rows = aut
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| AutLine {
            index: i,
            representative: class_label(&c.rep, &setup),
            map: c.rep.to_dsl(&setup.shape),
            order: c.order,
            volume_preserving: c.volume_preserving,
            free: c.free,
        })
        .collect();
    Ok(Report::Auts(rows))
}

/// π₁ of X/Υ; without a selector, π₁(X) itself.
pub fn cmd_pi1(config: &RunConfig) -> Result<Report, ReportError> {
    let (setup, aut) = load(config)?;
    let subs = selected(config, &setup, &aut, false)?;
    let rows = subs
        .par_iter()
        .map(|u| {
            pi1_of_quotient(&setup, &aut, u)
                .map(|pi1| Pi1Line { generators: u.describe(&aut, &setup), pi1 })
                .map_err(|e| ReportError::Consistency(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report::Pi1(rows))
}
