use std::error::Error;

use ring_ritz::analysis::{compare, convergence_sweep, count_nodes, relative_profile, Reference};
use ring_ritz::mathieu::{
    harmonic_mathieu_q, mathieu_char, mathieu_profile, relative_spectrum, sector_spectrum,
    uniform_grid, CaseSpec, MathieuQuery, Parity,
};
use ring_ritz::{
    excited_states, ground_state, harmonic_energy, harmonic_reference_case, published,
    quasi_exact_coulomb_case, sector_levels, BasisSpec, QuadratureSpec, NODE_REL_TOL,
};

use crate::config::{Action, RunConfig, Target};
use crate::output::{emit, Cell, Table};

type CmdResult<T> = Result<T, Box<dyn Error>>;

const FIG1_POINTS: usize = 512;

pub fn run(config: &RunConfig) -> CmdResult<()> {
    let tables = match &config.action {
        Action::Solve { min_coeff } => vec![solve(config, *min_coeff)?],
        Action::Spectrum => vec![spectrum(config)?],
        Action::Mathieu { query, profile } => mathieu(query, *profile)?,
        Action::Oracle { modes, total } => vec![oracle(config, *modes, *total)?],
        Action::Sweep { n_list, timing } => {
            let case = CaseSpec {
                geometry: config.geometry.expect("validated"),
                interaction: config.interaction,
                exact_energy: None,
                label: "sweep".into(),
            };
            vec![sweep_table("sweep", &case, n_list, &config.quad, *timing)?]
        }
        Action::Reproduce { target, timing } => reproduce(*target, &config.quad, *timing)?,
    };
    emit(&tables, config.format, config.out.as_deref())?;
    Ok(())
}

fn solve(config: &RunConfig, min_coeff: f64) -> CmdResult<Table> {
    let geometry = config.geometry.expect("validated");
    let states = excited_states(
        &config.basis,
        &geometry,
        &config.interaction,
        &config.quad,
        config.eigen_count,
    )?;
    let mut table = Table::new("solution", &["state", "energy", "k", "l", "c"]);
    for (i, state) in states.iter().enumerate() {
        for (mode, c) in state.coefficients() {
            if c.abs() >= min_coeff {
                table.push(vec![i.into(), state.energy().into(), mode.m.into(), mode.n.into(), c.into()]);
            }
        }
    }
    Ok(table)
}

fn spectrum(config: &RunConfig) -> CmdResult<Table> {
    let geometry = config.geometry.expect("validated");
    let levels = sector_levels(&config.basis, &geometry, &config.interaction, &config.quad)?;
    let mut table = Table::new("spectrum", &["index", "energy", "total_momentum"]);
    for (i, level) in levels.iter().take(config.eigen_count).enumerate() {
        table.push(vec![i.into(), level.energy.into(), level.total.into()]);
    }
    Ok(table)
}

fn mathieu(query: &MathieuQuery, profile: Option<usize>) -> CmdResult<Vec<Table>> {
    let value = mathieu_char(query)?;
    let mut table = Table::new("characteristic", &["branch", "order", "q", "value"]);
    table.push(vec![
        query.branch().name().into(),
        query.order().into(),
        query.q().into(),
        value.into(),
    ]);
    let mut tables = vec![table];
    if let Some(points) = profile {
        let p = mathieu_profile(query, &uniform_grid(points))?;
        tables.push(profile_table("profile", &[&p]));
    }
    Ok(tables)
}

fn oracle(config: &RunConfig, modes: usize, total: i32) -> CmdResult<Table> {
    let geometry = config.geometry.expect("validated");
    let mut table = Table::new("relative_spectrum", &["index", "energy", "parity"]);
    if total == 0 {
        let levels = relative_spectrum(&geometry, &config.interaction, &config.quad, modes)?;
        for (i, l) in levels.iter().take(config.eigen_count.max(1)).enumerate() {
            table.push(vec![i.into(), l.energy.into(), l.parity.name().into()]);
        }
    } else {
        let levels = sector_spectrum(&geometry, &config.interaction, &config.quad, modes, total)?;
        for (i, e) in levels.iter().take(config.eigen_count.max(1)).enumerate() {
            table.push(vec![i.into(), (*e).into(), Cell::Empty]);
        }
    }
    Ok(table)
}

fn profile_table(name: &str, profiles: &[&ring_ritz::Profile]) -> Table {
    let mut table = Table::new(name, &["omega", "value", "label"]);
    for p in profiles {
        for (w, v) in p.omega().iter().zip(p.values()) {
            table.push(vec![(*w).into(), (*v).into(), p.label().into()]);
        }
    }
    table
}

fn sweep_table(
    name: &str,
    case: &CaseSpec,
    n_list: &[u32],
    quad: &QuadratureSpec,
    timing: bool,
) -> CmdResult<Table> {
    let rows = convergence_sweep(case, n_list, quad)?;
    let mut table = Table::new(name, &["N", "energy", "delta", "seconds"]);
    for r in rows {
        let seconds = if timing { r.wall_time.as_secs_f64() } else { 0.0 };
        table.push(vec![r.n_trunc.into(), r.energy.into(), r.delta_prev.into(), seconds.into()]);
    }
    Ok(table)
}

fn coefficient_table(
    name: &str,
    case: &CaseSpec,
    n_trunc: u32,
    published_half: &[f64],
    quad: &QuadratureSpec,
) -> CmdResult<(Table, f64)> {
    let basis = BasisSpec::new(n_trunc)?;
    let solution = ground_state(&basis, &case.geometry, &case.interaction, quad)?;
    let mut table = Table::new(name, &["k", "l", "c", "published", "abs_dev"]);
    for (mode, reported) in published::expand_symmetric(published_half) {
        let c = solution.coefficient(mode).unwrap_or(0.0);
        table.push(vec![
            mode.m.into(),
            mode.n.into(),
            c.into(),
            reported.into(),
            (c - reported).abs().into(),
        ]);
    }
    Ok((table, solution.energy()))
}

fn reproduce(target: Target, quad: &QuadratureSpec, timing: bool) -> CmdResult<Vec<Table>> {
    match target {
        Target::Table1 => {
            let case = quasi_exact_coulomb_case();
            let (coeffs, energy) = coefficient_table(
                "table1_coefficients",
                &case,
                10,
                &published::COULOMB_QUASI_EXACT_N10,
                quad,
            )?;
            let exact = case.exact_energy.expect("closed-form energy");
            let mut summary = Table::new("table1_energy", &["quantity", "value"]);
            summary.push(vec!["r1".into(), case.geometry.r1().into()]);
            summary.push(vec!["r2".into(), case.geometry.r2().into()]);
            summary.push(vec!["numeric_energy".into(), energy.into()]);
            summary.push(vec!["exact_energy".into(), exact.into()]);
            summary.push(vec!["abs_error".into(), (energy - exact).abs().into()]);
            Ok(vec![coeffs, summary])
        }
        Target::Table2 => {
            let case = harmonic_reference_case();
            let (coeffs, energy) = coefficient_table(
                "table2_coefficients",
                &case,
                14,
                &published::HARMONIC_R1_1_R2_2_N14,
                quad,
            )?;
            let mut summary = Table::new("table2_energy", &["quantity", "value"]);
            summary.push(vec!["numeric_energy".into(), energy.into()]);
            Ok(vec![coeffs, summary])
        }
        Target::Fig1 => {
            let case = harmonic_reference_case();
            let omega = harmonic_strength(&case);
            let grid = uniform_grid(FIG1_POINTS);
            let solution = ground_state(&BasisSpec::new(14)?, &case.geometry, &case.interaction, quad)?;
            let reference = Reference::mathieu(&case.geometry, omega, Parity::Odd, 0, &grid)?;
            let ref_profile = reference.profile.clone().expect("mathieu reference has a profile");
            let numeric = relative_profile(&solution, &grid)?;
            let report = compare(&solution, &reference)?;

            let profiles = profile_table("fig1_profiles", &[&ref_profile, &numeric]);
            let mut nodes = Table::new("fig1_nodes", &["label", "energy", "nodes"]);
            nodes.push(vec![
                ref_profile.label().into(),
                report.reference_energy.into(),
                count_nodes(&ref_profile, NODE_REL_TOL)?.into(),
            ]);
            nodes.push(vec![
                numeric.label().into(),
                report.numeric_energy.into(),
                report.node_count_numeric.into(),
            ]);
            Ok(vec![profiles, nodes])
        }
        Target::HarmonicEnergies => {
            let case = harmonic_reference_case();
            let omega = harmonic_strength(&case);
            let g = case.geometry;
            let q = harmonic_mathieu_q(&g, omega);
            let b2 = mathieu_char(&MathieuQuery::new(q, Parity::Odd, 2)?)?;
            let a0 = mathieu_char(&MathieuQuery::new(q, Parity::Even, 0)?)?;
            let e_odd = harmonic_energy(&g, omega, Parity::Odd, 0)?;
            let e_even = harmonic_energy(&g, omega, Parity::Even, 0)?;
            let basis = BasisSpec::new(16)?;
            let levels = sector_levels(&basis, &g, &case.interaction, quad)?;
            let nearest_odd = levels
                .iter()
                .map(|l| l.energy)
                .min_by(|a, b| (a - e_odd).abs().total_cmp(&(b - e_odd).abs()))
                .expect("nonempty spectrum");

            let mut table = Table::new("harmonic_energies", &["quantity", "characteristic", "energy"]);
            table.push(vec!["odd_branch_lowest_b2".into(), b2.into(), e_odd.into()]);
            table.push(vec![
                "reported_odd_branch".into(),
                published::ODD_CHARACTERISTIC_Q_32_5.into(),
                published::HARMONIC_ODD_BRANCH_ENERGY.into(),
            ]);
            table.push(vec!["even_branch_lowest_a0".into(), a0.into(), e_even.into()]);
            table.push(vec!["matrix_ground_n16".into(), Cell::Empty, levels[0].energy.into()]);
            table.push(vec!["matrix_level_nearest_odd_n16".into(), Cell::Empty, nearest_odd.into()]);
            Ok(vec![table])
        }
        Target::Sweep => {
            let coulomb = quasi_exact_coulomb_case();
            let harmonic = harmonic_reference_case();
            Ok(vec![
                sweep_table("sweep_coulomb", &coulomb, &[2, 4, 6, 8, 10], quad, timing)?,
                sweep_table(
                    "sweep_harmonic",
                    &harmonic,
                    &[2, 4, 6, 8, 10, 12, 14, 16],
                    quad,
                    timing,
                )?,
            ])
        }
    }
}

fn harmonic_strength(case: &CaseSpec) -> f64 {
    match case.interaction {
        ring_ritz::Interaction::Harmonic { omega } => omega,
        ring_ritz::Interaction::Coulomb => unreachable!("harmonic case"),
    }
}
