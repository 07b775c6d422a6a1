use super::reject_key;
use crate::config::{finite, log_grid, positive, radial_window, samples, ScenarioParams};
use crate::dataset::{Cell, Dataset};
use crate::error::{CliError, CliResult, Context};
use ehvac::cylindrical::Direction;
use ehvac::static_field::*;

fn parse_branches(s: &str) -> CliResult<Vec<Branch>> {
    match s {
        "all" => Ok(vec![Branch::I, Branch::II, Branch::III]),
        "I" | "1" => Ok(vec![Branch::I]),
        "II" | "2" => Ok(vec![Branch::II]),
        "III" | "3" => Ok(vec![Branch::III]),
        other => Err(CliError::config(format!("branch must be I, II, III or all, got '{other}'"))),
    }
}

fn parse_modes(s: Option<&str>) -> CliResult<Vec<StaticMode>> {
    match s {
        None => Ok(StaticMode::BOTH.to_vec()),
        Some("plus") => Ok(vec![StaticMode::PlusState]),
        Some("minus") => Ok(vec![StaticMode::MinusState]),
        Some(other) => Err(CliError::config(format!("static mode must be plus or minus, got '{other}'"))),
    }
}

pub fn run_static(p: &ScenarioParams) -> CliResult<Vec<Dataset>> {
    for (key, set) in [("A", p.a.is_some()), ("B", p.b.is_some()), ("U", p.u.is_some()), ("V", p.v.is_some())] {
        if set {
            return Err(CliError::config(format!("key '{key}' does not apply to the static scenario")));
        }
    }
    reject_key("model", &p.model, "static")?;
    reject_key("r0", &p.r0, "static")?;
    let alpha = positive("alpha", p.alpha.unwrap_or(1.0))?;
    let e = finite("E", p.e.unwrap_or(1.5f64.sqrt()))?;
    let k = positive("k", p.k.unwrap_or(1.0))?;
    let branches = parse_branches(p.branch.as_deref().unwrap_or("all"))?;
    let modes = parse_modes(p.mode.as_deref())?;
    let base = StaticFieldConfig::new(e, k, alpha, Branch::I).context("static configuration")?;
    let r_s = base.r_s();
    let (lo, hi) = radial_window(p.r_min.unwrap_or(r_s), p.r_max.unwrap_or(100.0 * r_s))?;
    let n = samples(p.samples, 200)?;
    let grid = log_grid(lo, hi, n);

    let mut curves = Dataset::new(
        "branch",
        &[
            ("branch", "-"),
            ("mode", "-"),
            ("r", "length"),
            ("B", "field"),
            ("dB_dr", "field/length"),
            ("inv_lambda", "field^2"),
            ("g_tt", "1"),
            ("g_tr", "1"),
            ("g_rr", "1"),
            ("g_thth", "length^2"),
            ("g_zz", "1"),
            ("drdt_out", "c"),
            ("drdt_in", "c"),
        ],
    );
    for &br in &branches {
        let cfg = base.with_branch(br);
        for &mode in &modes {
            for &r in &grid {
                let mut row = vec![Cell::text(br.name()), Cell::text(mode.name()), Cell::num(r)];
                match branch_point(&cfg, r) {
                    Ok(bp) => {
                        let b = bp.b;
                        row.push(Cell::num(b));
                        row.push(if bp.boundary { Cell::Undef } else { Cell::from_result(db_dr(&cfg, b, r)) });
                        let inv = lambda_inverse_static(&cfg, b, mode);
                        row.push(Cell::num(inv));
                        match static_metric_at(&cfg, b, r, mode) {
                            Ok(g) => {
                                for (i, j) in [(0, 0), (0, 1), (1, 1), (2, 2), (3, 3)] {
                                    row.push(Cell::num(g[(i, j)]));
                                }
                            }
                            Err(_) => row.extend(std::iter::repeat_n(Cell::Undef, 5)),
                        }
                        row.push(Cell::from_result(static_drdt_at(&cfg, b, mode, Direction::Outgoing)));
                        row.push(Cell::from_result(static_drdt_at(&cfg, b, mode, Direction::Ingoing)));
                    }
                    Err(_) => row.extend(std::iter::repeat_n(Cell::Undef, 10)),
                }
                curves.push(row);
            }
        }
    }

    let mut horizon = Dataset::new(
        "horizon",
        &[
            ("status", "-"),
            ("classification", "-"),
            ("mode", "-"),
            ("r_c", "length"),
            ("r_c_root", "length"),
            ("B_c", "field"),
            ("r_s", "length"),
            ("B_s", "field"),
        ],
    );
    match horizon_exact(&base) {
        Ok(h) => horizon.push(vec![
            Cell::text("found"),
            Cell::text(h.classification.name()),
            Cell::text(h.mode.name()),
            Cell::num(h.r_c),
            Cell::num(h.r_c_root),
            Cell::num(h.b_c),
            Cell::num(r_s),
            Cell::num(base.b_s()),
        ]),
        Err(_) => horizon.push(vec![
            Cell::text("none"),
            Cell::Undef,
            Cell::Undef,
            Cell::Undef,
            Cell::Undef,
            Cell::Undef,
            Cell::num(r_s),
            Cell::num(base.b_s()),
        ]),
    }

    let mut checks = Dataset::new("appendix", &[("check", "-"), ("branch", "-"), ("status", "-"), ("quantity", "-"), ("value", "-")]);
    let rep_i = appendix_b_checks(&base.with_branch(Branch::I));
    let rep_ii = appendix_b_checks(&base.with_branch(Branch::II));
    let mut emit = |name: &str, br: Branch, vals: Option<Vec<(&str, f64)>>| match vals {
        Some(v) => {
            for (q, x) in v {
                checks.push(vec![Cell::text(name), Cell::text(br.name()), Cell::text("evaluated"), Cell::text(q), Cell::num(x)]);
            }
        }
        None => checks.push(vec![Cell::text(name), Cell::text(br.name()), Cell::text("not_applicable"), Cell::Undef, Cell::Undef]),
    };
    emit(
        "never_trapped",
        Branch::I,
        rep_i
            .never_trapped
            .ok()
            .map(|c| vec![("min_drdt", c.min_drdt), ("max_formula_gap", c.max_formula_gap), ("samples", c.samples as f64)]),
    );
    emit(
        "branch_point",
        Branch::I,
        rep_i.branch_point.ok().map(|c| {
            vec![("outgoing_at_r_s", c.outgoing_at_r_s), ("ingoing_at_r_s", c.ingoing_at_r_s), ("inverse_lambda_gap", c.inverse_lambda_gap)]
        }),
    );
    emit(
        "reciprocal_speeds",
        Branch::II,
        rep_ii.reciprocal.ok().map(|c| {
            vec![
                ("plus_speed", c.plus_speed),
                ("minus_speed", c.minus_speed),
                ("expected_plus", c.expected_plus),
                ("expected_minus", c.expected_minus),
                ("product", c.product),
            ]
        }),
    );
    Ok(vec![curves, horizon, checks])
}
