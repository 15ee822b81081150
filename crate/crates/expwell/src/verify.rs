//! Named verification suites over the whole library, each check carrying
//! its measured value, its pinned tolerance and a pass flag. The CLI
//! serializes the report; the acceptance tests drive the same functions.
//!
//! Two kinds of check appear: plain bounds (`measured <= tolerance`) and
//! negative controls (`measured > tolerance`), the latter demonstrating
//! that a deliberately wrong formula actually fails. A control passing
//! means the wrongness was detected.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::ladder::{
    apply_lowering, apply_raising, commutator_pm, default_family_grid, raise_then_lower,
    structure_constants, LadderReport,
};
use crate::oracle::{
    compare_with_closed_form, solve_bound_states, GridSpec, OracleError,
};
use crate::potential::{derive_params, Branch, MoleculeParams, ParamError};
use crate::spectrum::energy_level;
use crate::states::{
    build_state, default_laplace_grid, default_residual_grid, fixed_eps_state,
    laplace_residual_with_coefficient, laplace_solution_check, norm_closed_form, ode_residual,
    series_identity_check, squared_norm_quadrature, BoundState, StateError,
};
use crate::tolerances::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ode,
    Series,
    Laplace,
    Norm,
    Ladder,
    Su2,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Ode,
        Suite::Series,
        Suite::Laplace,
        Suite::Norm,
        Suite::Ladder,
        Suite::Su2,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ode => "ode",
            Suite::Series => "series",
            Suite::Laplace => "laplace",
            Suite::Norm => "norm",
            Suite::Ladder => "ladder",
            Suite::Su2 => "su2",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("unknown suite '{0}': expected one of ode, series, laplace, norm, ladder, su2, oracle")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ode" => Ok(Suite::Ode),
            "series" => Ok(Suite::Series),
            "laplace" => Ok(Suite::Laplace),
            "norm" => Ok(Suite::Norm),
            "ladder" => Ok(Suite::Ladder),
            "su2" => Ok(Suite::Su2),
            "oracle" => Ok(Suite::Oracle),
            other => Err(UnknownSuite(other.to_string())),
        }
    }
}

/// Direction of the comparison a check makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckOp {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Exceeds,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub op: CheckOp,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            op: CheckOp::AtMost,
            tolerance,
            pass: measured.is_finite() && measured <= tolerance,
        }
    }

    fn exceeds(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            op: CheckOp::Exceeds,
            tolerance,
            pass: measured.is_finite() && measured > tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    /// Full measured-vs-published ladder algebra, present when the su2
    /// suite ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub su2: Option<LadderReport>,
    pub pass: bool,
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

fn molecules() -> [MoleculeParams; 2] {
    [MoleculeParams::h2(), MoleculeParams::lih()]
}

fn ode_suite(checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    for mol in molecules() {
        let spec = mol.to_potential()?;
        for branch in [Branch::Exponential, Branch::MorseFlip] {
            let params = derive_params(&spec, branch)?;
            let mut worst = 0.0f64;
            for n in 0..=5 {
                let state = build_state(&params, n);
                let grid = default_residual_grid(&state);
                worst = worst.max(ode_residual(&state, &params, &grid)?);
            }
            let tag = branch.tag();
            checks.push(CheckResult::at_most(
                format!("ode/{}/{tag}/max_residual_n0_5", mol.name),
                worst,
                ODE_RESIDUAL_MAX,
            ));
            let state = build_state(&params, 0);
            let perturbed = BoundState { epsilon: state.epsilon + 0.1, ..state };
            let grid = default_residual_grid(&perturbed);
            checks.push(CheckResult::exceeds(
                format!("ode/{}/{tag}/perturbed_eps_control", mol.name),
                ode_residual(&perturbed, &params, &grid)?,
                ODE_CONTROL_MIN,
            ));
        }
    }
    Ok(())
}

fn series_suite(checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    let mut rng = StdRng::seed_from_u64(0x5e21e5);
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let n = rng.gen_range(0..=10usize);
        let eps = rng.gen_range(0.1..20.0);
        let a1 = rng.gen_range(0.3..20.0);
        let grid: Vec<f64> = (0..12).map(|_| rng.gen_range(0.01..5.0)).collect();
        worst = worst.max(series_identity_check(n, eps, a1, &grid)?);
    }
    checks.push(CheckResult::at_most(
        "series/random_sweep_n0_10",
        worst,
        SERIES_REL,
    ));
    for mol in molecules() {
        let params = derive_params(&mol.to_potential()?, Branch::MorseFlip)?;
        let state = build_state(&params, 6);
        let grid = default_residual_grid(&state);
        checks.push(CheckResult::at_most(
            format!("series/{}/molecular_scale_n6", mol.name),
            series_identity_check(6, state.epsilon, state.a1, &grid)?,
            SERIES_REL,
        ));
    }
    Ok(())
}

fn laplace_suite(checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    for mol in molecules() {
        let params = derive_params(&mol.to_potential()?, Branch::MorseFlip)?;
        let eps = params.epsilon(0);
        let grid = default_laplace_grid(params.a1);
        checks.push(CheckResult::at_most(
            format!("laplace/{}/consistent_coefficient", mol.name),
            laplace_solution_check(eps, params.a1, params.a2sq, &grid)?,
            LAPLACE_RESIDUAL_MAX,
        ));
        checks.push(CheckResult::exceeds(
            format!("laplace/{}/printed_coefficient_control", mol.name),
            laplace_residual_with_coefficient(eps, params.a1, params.a2sq, eps + 1.0, &grid)?,
            LAPLACE_CONTROL_MIN,
        ));
    }
    Ok(())
}

fn norm_suite(checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    for mol in molecules() {
        let params = derive_params(&mol.to_potential()?, Branch::MorseFlip)?;
        let beta = mol.beta();
        let mut worst_unit = 0.0f64;
        let mut worst_rel = 0.0f64;
        for n in 0..=6 {
            let state = build_state(&params, n);
            let closed = norm_closed_form(&state, beta)?;
            // normalize through the closed form, check with quadrature:
            // the two routes stay independent
            let normalized = BoundState { norm: 1.0 / closed.sqrt(), ..state };
            let quad = squared_norm_quadrature(&normalized, beta)?;
            worst_unit = worst_unit.max((quad - 1.0).abs());
            let raw_quad = squared_norm_quadrature(&state, beta)?;
            worst_rel = worst_rel.max(((raw_quad - closed) / closed).abs());
        }
        checks.push(CheckResult::at_most(
            format!("norm/{}/unit_after_closed_form_normalization_n0_6", mol.name),
            worst_unit,
            NORM_ABS,
        ));
        checks.push(CheckResult::at_most(
            format!("norm/{}/closed_vs_quadrature_rel_n0_6", mol.name),
            worst_rel,
            NORM_REL,
        ));
    }
    Ok(())
}

fn ladder_suite(checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    for mol in molecules() {
        let params = derive_params(&mol.to_potential()?, Branch::MorseFlip)?;
        let eps = params.epsilon(0);
        let a1 = params.a1;
        let grid = default_family_grid(11, eps, a1);
        let ann = apply_lowering(&fixed_eps_state(0, eps, a1), &grid)?;
        checks.push(CheckResult::at_most(
            format!("ladder/{}/ground_state_annihilation", mol.name),
            ann.residual,
            ANNIHILATION_MAX,
        ));
        let mut low_coeff = 0.0f64;
        let mut up_coeff = 0.0f64;
        let mut fit_res = 0.0f64;
        let mut mu_rel = 0.0f64;
        let mut rtl_rel = 0.0f64;
        for n in 0..=10 {
            let nf = n as f64;
            if n > 0 {
                let fit = apply_lowering(&fixed_eps_state(n, eps, a1), &grid)?;
                let expected = nf + 2.0 * eps;
                low_coeff = low_coeff.max(((fit.coefficient - expected) / expected).abs());
                fit_res = fit_res.max(fit.residual);
            }
            let fit = apply_raising(&fixed_eps_state(n, eps, a1), &grid)?;
            up_coeff = up_coeff.max(((fit.coefficient - (nf + 1.0)) / (nf + 1.0)).abs());
            fit_res = fit_res.max(fit.residual);
            let mu = commutator_pm(n, eps, a1, &grid)?;
            let expected = -(2.0 * nf + 2.0 * eps + 1.0);
            mu_rel = mu_rel.max(((mu.coefficient - expected) / expected).abs());
            let rtl = raise_then_lower(n, eps, a1, &grid)?;
            let expected = (nf + 1.0) * (nf + 1.0 + 2.0 * eps);
            rtl_rel = rtl_rel.max(((rtl.coefficient - expected) / expected).abs());
        }
        checks.push(CheckResult::at_most(
            format!("ladder/{}/lowering_coefficient_rel_n1_10", mol.name),
            low_coeff,
            LADDER_COEFF_REL,
        ));
        checks.push(CheckResult::at_most(
            format!("ladder/{}/raising_coefficient_rel_n0_10", mol.name),
            up_coeff,
            LADDER_COEFF_REL,
        ));
        checks.push(CheckResult::at_most(
            format!("ladder/{}/fit_residual_max", mol.name),
            fit_res,
            LADDER_COEFF_REL,
        ));
        checks.push(CheckResult::at_most(
            format!("ladder/{}/commutator_rel_n0_10", mol.name),
            mu_rel,
            COMMUTATOR_REL,
        ));
        checks.push(CheckResult::at_most(
            format!("ladder/{}/raise_then_lower_rel_n0_10", mol.name),
            rtl_rel,
            COMMUTATOR_REL,
        ));
    }
    Ok(())
}

fn su2_suite(checks: &mut Vec<CheckResult>) -> Result<LadderReport, VerifyError> {
    let mol = MoleculeParams::h2();
    let params = derive_params(&mol.to_potential()?, Branch::MorseFlip)?;
    let grid = default_family_grid(11, params.epsilon(0), params.a1);
    let report = structure_constants(&params, 10, &grid)?;
    let mut shift_dev = 0.0f64;
    let mut mu_rel = 0.0f64;
    let mut fit_res = 0.0f64;
    for row in &report.rows {
        if let Some(s) = row.shift_lowering {
            shift_dev = shift_dev.max((s - 2.0).abs());
        }
        shift_dev = shift_dev.max((row.shift_raising + 2.0).abs());
        mu_rel = mu_rel.max(
            ((row.commutator.coefficient - row.commutator_expected) / row.commutator_expected)
                .abs(),
        );
        fit_res = fit_res.max(row.commutator.residual).max(row.raising.residual);
        if row.n > 0 {
            fit_res = fit_res.max(row.lowering.residual);
        }
    }
    checks.push(CheckResult::at_most(
        format!("su2/{}/shift_constants_abs_dev", mol.name),
        shift_dev,
        SHIFT_CONSTANT_ABS,
    ));
    checks.push(CheckResult::at_most(
        format!("su2/{}/commutator_rel_n0_10", mol.name),
        mu_rel,
        COMMUTATOR_REL,
    ));
    checks.push(CheckResult::at_most(
        format!("su2/{}/fit_residual_max", mol.name),
        fit_res,
        COMMUTATOR_REL,
    ));
    Ok(report)
}

fn oracle_suite(checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    let length = 1.0;
    let wall = 1e6;
    let box_v = move |x: f64| if x <= 0.0 || x >= length { wall } else { 0.0 };
    let grid = GridSpec::new(0.0, length, 4000)?;
    let res = solve_bound_states(box_v, 1.0, grid, 3)?;
    let mut box_rel = f64::INFINITY;
    if res.eigenvalues.len() == 3 {
        box_rel = 0.0;
        for (i, &ev) in res.eigenvalues.iter().enumerate() {
            let nf = (i + 1) as f64;
            let exact = nf * nf * std::f64::consts::PI * std::f64::consts::PI;
            box_rel = box_rel.max(((ev - exact) / exact).abs());
        }
    }
    checks.push(CheckResult::at_most("oracle/box_rel_err", box_rel, BOX_REL));

    let mol = MoleculeParams::h2();
    let closed = energy_level(&mol.to_potential()?, Branch::MorseFlip, 0)?.energy;
    let v = |x: f64| mol.morse_potential(x);
    let coarse = GridSpec::new(-mol.r0, 12.0 * mol.r0, 1500)?;
    let fine = GridSpec::new(-mol.r0, 12.0 * mol.r0, 2999)?;
    let e1 = solve_bound_states(v, mol.m(), coarse, 1)?.eigenvalues[0];
    let e2 = solve_bound_states(v, mol.m(), fine, 1)?.eigenvalues[0];
    let ratio = (e1 - closed).abs() / (e2 - closed).abs();
    checks.push(CheckResult::at_most(
        "oracle/convergence_ratio_dev_from_4",
        (ratio - 4.0).abs(),
        CONVERGENCE_RATIO_HALF_WIDTH,
    ));

    for (mol, levels) in [
        (MoleculeParams::h2(), vec![0usize, 2, 4]),
        (MoleculeParams::lih(), vec![0usize, 2]),
    ] {
        let rows = compare_with_closed_form(&mol, &levels)?;
        let mut worst = 0.0f64;
        for row in &rows {
            match row.difference {
                Some(d) => worst = worst.max(d.abs()),
                None => worst = f64::INFINITY,
            }
        }
        checks.push(CheckResult::at_most(
            format!("oracle/{}/cross_validation", mol.name),
            worst,
            ORACLE_CROSS_EV,
        ));
    }
    Ok(())
}

/// Runs the requested suites (each at most once, in `Suite::ALL` order)
/// and aggregates every check into one report.
pub fn run_suites(suites: &[Suite]) -> Result<VerifyReport, VerifyError> {
    let mut checks = Vec::new();
    let mut su2 = None;
    for suite in Suite::ALL {
        if !suites.contains(&suite) {
            continue;
        }
        match suite {
            Suite::Ode => ode_suite(&mut checks)?,
            Suite::Series => series_suite(&mut checks)?,
            Suite::Laplace => laplace_suite(&mut checks)?,
            Suite::Norm => norm_suite(&mut checks)?,
            Suite::Ladder => ladder_suite(&mut checks)?,
            Suite::Su2 => su2 = Some(su2_suite(&mut checks)?),
            Suite::Oracle => oracle_suite(&mut checks)?,
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { checks, su2, pass })
}

/// Every suite.
pub fn run_all() -> Result<VerifyReport, VerifyError> {
    run_suites(&Suite::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let report = run_all().unwrap();
        assert!(!report.checks.is_empty());
        for check in &report.checks {
            assert!(
                check.pass,
                "{}: measured {} {} {}",
                check.name,
                check.measured,
                match check.op {
                    CheckOp::AtMost => "should be <=",
                    CheckOp::Exceeds => "should be >",
                },
                check.tolerance
            );
        }
        assert!(report.pass);
        let su2 = report.su2.as_ref().expect("su2 report attached");
        assert_eq!(su2.rows.len(), 11);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        let err = "spectralz".parse::<Suite>().unwrap_err();
        assert!(err.to_string().contains("spectralz"));
    }

    #[test]
    fn su2_report_only_with_su2_suite() {
        let report = run_suites(&[Suite::Laplace]).unwrap();
        assert!(report.su2.is_none());
        assert!(report.checks.iter().all(|c| c.name.starts_with("laplace/")));
    }

    #[test]
    fn duplicate_suites_run_once() {
        let once = run_suites(&[Suite::Laplace]).unwrap();
        let twice = run_suites(&[Suite::Laplace, Suite::Laplace]).unwrap();
        assert_eq!(once.checks.len(), twice.checks.len());
    }

    #[test]
    fn controls_use_exceeds_and_pass() {
        let report = run_suites(&[Suite::Ode, Suite::Laplace]).unwrap();
        let controls: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.name.contains("control"))
            .collect();
        assert_eq!(controls.len(), 6);
        for c in controls {
            assert_eq!(c.op, CheckOp::Exceeds);
            assert!(c.pass, "{} stuck at {}", c.name, c.measured);
        }
    }

    #[test]
    fn check_serialization_shape() {
        let report = run_suites(&[Suite::Series]).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        let first = &json["checks"][0];
        assert!(first["name"].is_string());
        assert!(first["measured"].is_number());
        assert_eq!(first["op"], "<=");
        assert!(first["tolerance"].is_number());
        assert_eq!(first["pass"], true);
        assert!(json.get("su2").is_none());
    }
}
