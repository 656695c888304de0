//! Relative-angle profiles, node counting, convergence sweeps and comparisons.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::eigen::{ground_state, GroundSolution};
use crate::error::{Error, Result};
use crate::matelem::QuadratureSpec;
use crate::mathieu::{
    harmonic_energy, harmonic_mathieu_q, mathieu_profile, uniform_grid, validate_grid, CaseSpec,
    MathieuQuery, Parity, Profile,
};
use crate::model::{BasisSpec, ModePair, RingGeometry};

/// Default threshold, relative to the peak amplitude, below which a sample counts as zero.
pub const NODE_REL_TOL: f64 = 1e-6;

/// Largest weight outside the zero-momentum sector accepted by [`relative_profile`].
pub const SEPARABILITY_TOL: f64 = 1e-8;

/// `ψ(ω) = Σ_k c_{k,-k} e^{ikω}` for a solution living in the zero-momentum sector.
///
/// Symmetric coefficients give a real cosine series and antisymmetric ones a
/// purely imaginary sine series; whichever part is present is returned,
/// normalized to unit max amplitude.
pub fn relative_profile(solution: &GroundSolution, grid: &[f64]) -> Result<Profile> {
    validate_grid(grid)?;
    let off_sector = (solution.norm_sq() - solution.sector_weight(0)).max(0.0);
    if off_sector > SEPARABILITY_TOL {
        return Err(Error::NotRelativeSeparable(off_sector));
    }
    let terms: Vec<(f64, f64)> = solution
        .coefficients()
        .filter(|(p, _)| p.total() == 0)
        .map(|(p, c)| (p.m as f64, c))
        .collect();
    let (re, im): (Vec<f64>, Vec<f64>) = grid
        .iter()
        .map(|&w| {
            terms.iter().fold((0.0, 0.0), |(re, im), &(k, c)| {
                (re + c * (k * w).cos(), im + c * (k * w).sin())
            })
        })
        .unzip();
    let peak = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (re_max, im_max) = (peak(&re), peak(&im));
    let values = if im_max <= 1e-10 * re_max {
        re
    } else if re_max <= 1e-10 * im_max {
        im
    } else {
        return Err(Error::InvalidArgument(format!(
            "relative profile is genuinely complex (real peak {re_max:e}, imaginary peak {im_max:e})"
        )));
    };
    let label = format!("plane-wave N={} E={:.9}", solution.basis().n_trunc(), solution.energy());
    Profile::new(grid.to_vec(), values, label)?.normalized()
}

/// Sign changes of a periodic profile sampled over one full period.
///
/// Samples below `rel_tol * max|Ψ|` are treated as zero; a run of such samples
/// between opposite signs counts as one node, and the wrap-around from the
/// last sample to the first is included.
pub fn count_nodes(profile: &Profile, rel_tol: f64) -> Result<usize> {
    if profile.len() < 128 {
        return Err(Error::InvalidArgument(format!(
            "node counting needs at least 128 samples, got {}",
            profile.len()
        )));
    }
    let max = profile.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return Err(Error::DegenerateProfile);
    }
    let threshold = rel_tol * max;
    let signs: Vec<bool> = profile
        .values()
        .iter()
        .filter(|v| v.abs() > threshold)
        .map(|&v| v > 0.0)
        .collect();
    if signs.is_empty() {
        return Err(Error::DegenerateProfile);
    }
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let wrap = usize::from(signs[signs.len() - 1] != signs[0]);
    Ok(changes + wrap)
}

/// Ground energy at one truncation order of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n_trunc: u32,
    pub energy: f64,
    /// Change from the previous row; `None` on the first row.
    pub delta_prev: Option<f64>,
    pub wall_time: Duration,
}

/// Ground energy for each truncation order in `n_list` (even, nondecreasing).
pub fn convergence_sweep(
    case: &CaseSpec,
    n_list: &[u32],
    quad: &QuadratureSpec,
) -> Result<Vec<ConvergenceRow>> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("empty truncation list".into()));
    }
    if n_list.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument(
            "truncation orders must be ascending".into(),
        ));
    }
    let bases = n_list
        .iter()
        .map(|&n| BasisSpec::new(n))
        .collect::<Result<Vec<_>>>()?;

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(bases.len());
    for basis in bases {
        let start = Instant::now();
        let energy = ground_state(&basis, &case.geometry, &case.interaction, quad)?.energy();
        let wall_time = start.elapsed();
        let delta_prev = rows.last().map(|r| energy - r.energy);
        rows.push(ConvergenceRow {
            n_trunc: basis.n_trunc(),
            energy,
            delta_prev,
            wall_time,
        });
    }
    Ok(rows)
}

/// What a numeric solution is compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub label: String,
    pub energy: f64,
    /// Expected coefficients `c_{k,l}`; empty when none are known.
    pub coefficients: Vec<(ModePair, f64)>,
    pub profile: Option<Profile>,
}

impl Reference {
    pub fn new(label: impl Into<String>, energy: f64) -> Self {
        Self {
            label: label.into(),
            energy,
            coefficients: Vec::new(),
            profile: None,
        }
    }

    /// Reference built from a case with a closed-form energy.
    pub fn from_case(case: &CaseSpec) -> Result<Self> {
        let energy = case.exact_energy.ok_or_else(|| {
            Error::InvalidArgument(format!("case '{}' has no exact energy", case.label))
        })?;
        Ok(Self::new(case.label.clone(), energy))
    }

    /// Harmonic reference from a Mathieu characteristic value and its eigenfunction.
    pub fn mathieu(
        geometry: &RingGeometry,
        omega: f64,
        branch: Parity,
        level_index: u32,
        grid: &[f64],
    ) -> Result<Self> {
        let energy = harmonic_energy(geometry, omega, branch, level_index)?;
        let order = match branch {
            Parity::Even => 2 * level_index,
            Parity::Odd => 2 * (level_index + 1),
        };
        let query = MathieuQuery::new(harmonic_mathieu_q(geometry, omega), branch, order)?;
        let profile = mathieu_profile(&query, grid)?;
        Ok(Self {
            label: format!("mathieu-{}-{}", branch.name(), order),
            energy,
            coefficients: Vec::new(),
            profile: Some(profile),
        })
    }

    pub fn with_coefficients(mut self, coefficients: Vec<(ModePair, f64)>) -> Self {
        self.coefficients = coefficients;
        self
    }

    pub fn with_profile(mut self, profile: Profile) -> Self {
        self.profile = Some(profile);
        self
    }
}

/// Numeric-versus-reference summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub label: String,
    pub numeric_energy: f64,
    pub reference_energy: f64,
    pub abs_error: f64,
    pub coeff_max_dev: Option<f64>,
    pub node_count_numeric: usize,
    pub node_count_reference: Option<usize>,
}

/// Compare a solution with a reference. Node counts use the reference
/// profile's grid when there is one, else 512 uniform points.
pub fn compare(solution: &GroundSolution, reference: &Reference) -> Result<ComparisonReport> {
    let grid = match &reference.profile {
        Some(p) => p.omega().to_vec(),
        None => uniform_grid(512),
    };
    let numeric_profile = relative_profile(solution, &grid)?;
    let node_count_numeric = count_nodes(&numeric_profile, NODE_REL_TOL)?;
    let node_count_reference = reference
        .profile
        .as_ref()
        .map(|p| count_nodes(p, NODE_REL_TOL))
        .transpose()?;
    let coeff_max_dev = if reference.coefficients.is_empty() {
        None
    } else {
        Some(
            reference
                .coefficients
                .iter()
                .map(|&(mode, c)| (solution.coefficient(mode).unwrap_or(0.0) - c).abs())
                .fold(0.0, f64::max),
        )
    };
    Ok(ComparisonReport {
        label: reference.label.clone(),
        numeric_energy: solution.energy(),
        reference_energy: reference.energy,
        abs_error: (solution.energy() - reference.energy).abs(),
        coeff_max_dev,
        node_count_numeric,
        node_count_reference,
    })
}
