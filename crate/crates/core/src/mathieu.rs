//! Reference solutions in the relative angle `ω = φ1 - φ2`.
//!
//! In the zero total-momentum sector the two-ring problem reduces to
//! `-χ''/(2σ²) + V(ω) χ = E χ` on a 2π-periodic domain. For the harmonic
//! interaction the substitution `ω = 2v` turns this into the Mathieu equation
//! `y'' + (a - 2q cos 2v) y = 0` with `q = -4 r1 r2 Ω² σ²` and
//! `E = ½ Ω² (r1² + r2²) + a / (8σ²)`. Only π-periodic solutions in `v` are
//! admissible, so the relevant characteristic values are `a_{2n}` (cosine
//! series) and `b_{2n}` (sine series, `n >= 1`).

use std::f64::consts::{SQRT_2, TAU};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::eigen::{eigensolve, fix_phase};
use crate::error::{Error, Result};
use crate::matelem::{harmonic_constant, kinetic_element, PotentialSeries, QuadratureSpec};
use crate::model::{Interaction, ModePair, RingGeometry};

/// Parity of a relative-angle state under `ω -> -ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Cosine series; characteristic values `a_{2n}`.
    Even,
    /// Sine series; characteristic values `b_{2n}`.
    Odd,
}

impl Parity {
    pub fn name(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

const DEFAULT_TRUNCATION: usize = 64;
const MAX_TRUNCATION: usize = 8192;
const CHAR_TOL: f64 = 1e-12;

/// A request for a π-periodic Mathieu characteristic value `a_order(q)` or `b_order(q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuQuery {
    q: f64,
    branch: Parity,
    order: u32,
    truncation: usize,
}

impl MathieuQuery {
    pub fn new(q: f64, branch: Parity, order: u32) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::MathieuDomain(format!("q must be finite, got {q}")));
        }
        if order % 2 != 0 {
            return Err(Error::MathieuDomain(format!(
                "order {order} is odd; only π-periodic (even order) solutions are admissible"
            )));
        }
        if branch == Parity::Odd && order == 0 {
            return Err(Error::MathieuDomain("b_0 does not exist".into()));
        }
        let truncation = DEFAULT_TRUNCATION.max(order as usize / 2 + 20);
        Ok(Self {
            q,
            branch,
            order,
            truncation,
        })
    }

    pub fn with_truncation(mut self, truncation: usize) -> Result<Self> {
        let min = self.order as usize / 2 + 20;
        if truncation < min {
            return Err(Error::MathieuDomain(format!(
                "truncation {truncation} below the minimum {min} for order {}",
                self.order
            )));
        }
        self.truncation = truncation;
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn branch(&self) -> Parity {
        self.branch
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Row of the wanted eigenvalue in the ascending spectrum of the recurrence matrix.
    fn level(&self) -> usize {
        match self.branch {
            Parity::Even => self.order as usize / 2,
            Parity::Odd => self.order as usize / 2 - 1,
        }
    }

    fn symbol(&self) -> String {
        let name = match self.branch {
            Parity::Even => "ce",
            Parity::Odd => "se",
        };
        format!("{name}_{}(q={})", self.order, self.q)
    }
}

/// Symmetric three-term recurrence matrix for the π-periodic Fourier series.
///
/// Even branch: unknowns `(√2 A_0, A_2, A_4, ...)`; odd branch: `(B_2, B_4, ...)`.
/// Diagonal `(2r)²`, off-diagonal `q`, with the `√2` coupling of the constant mode.
pub fn recurrence_matrix(q: f64, branch: Parity, size: usize) -> DMatrix<f64> {
    let shift = match branch {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let mut m = DMatrix::zeros(size, size);
    for r in 0..size {
        let k = (2 * (r + shift)) as f64;
        m[(r, r)] = k * k;
        if r + 1 < size {
            m[(r, r + 1)] = q;
            m[(r + 1, r)] = q;
        }
    }
    if branch == Parity::Even && size > 1 {
        m[(0, 1)] = SQRT_2 * q;
        m[(1, 0)] = SQRT_2 * q;
    }
    m
}

/// Characteristic value and eigenvector at a fixed truncation, using `q` as given.
fn characteristic_at(q: f64, branch: Parity, level: usize, size: usize) -> Result<(f64, Vec<f64>)> {
    let pairs = eigensolve(&recurrence_matrix(q, branch, size), level + 1)?;
    Ok((
        pairs.values()[level],
        pairs.vectors().column(level).iter().copied().collect(),
    ))
}

/// Characteristic value with truncation doubling until converged, using `q` as given.
fn converged_characteristic(query: &MathieuQuery, q: f64) -> Result<(f64, Vec<f64>)> {
    let level = query.level();
    let mut size = query.truncation;
    let mut coarse = characteristic_at(q, query.branch, level, size)?;
    loop {
        let fine = characteristic_at(q, query.branch, level, 2 * size)?;
        let change = (fine.0 - coarse.0).abs();
        if change < CHAR_TOL * fine.0.abs().max(1.0) {
            return Ok(fine);
        }
        size *= 2;
        if size > MAX_TRUNCATION {
            return Err(Error::MathieuDomain(format!(
                "characteristic value of {} did not converge (last change {change:e})",
                query.symbol()
            )));
        }
        coarse = fine;
    }
}

/// Characteristic value `a_{2n}(q)` or `b_{2n}(q)`.
///
/// Even orders satisfy `λ(-q) = λ(q)`, so the computation runs at `|q|`.
pub fn mathieu_char(query: &MathieuQuery) -> Result<f64> {
    Ok(converged_characteristic(query, query.q.abs())?.0)
}

/// Same as [`mathieu_char`] but without folding `q` to `|q|`.
pub fn mathieu_char_signed(query: &MathieuQuery) -> Result<f64> {
    Ok(converged_characteristic(query, query.q)?.0)
}

/// A π-periodic Mathieu function written as a Fourier series in `ω = 2v`.
#[derive(Debug, Clone, PartialEq)]
pub struct MathieuSeries {
    pub characteristic: f64,
    pub branch: Parity,
    /// `A_0, A_2, ...` (even) or `B_2, B_4, ...` (odd); the multiplier of
    /// `cos(rω)` / `sin(rω)` for successive `r`.
    pub coefficients: Vec<f64>,
}

impl MathieuSeries {
    pub fn new(query: &MathieuQuery) -> Result<Self> {
        let (characteristic, mut coefficients) = converged_characteristic(query, query.q)?;
        if query.branch == Parity::Even {
            coefficients[0] /= SQRT_2;
        }
        fix_phase(&mut coefficients);
        Ok(Self {
            characteristic,
            branch: query.branch,
            coefficients,
        })
    }

    fn harmonic(&self, r: usize) -> usize {
        match self.branch {
            Parity::Even => r,
            Parity::Odd => r + 1,
        }
    }

    /// Value at relative angle `omega`.
    pub fn evaluate(&self, omega: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(r, c)| {
                let x = self.harmonic(r) as f64 * omega;
                match self.branch {
                    Parity::Even => c * x.cos(),
                    Parity::Odd => c * x.sin(),
                }
            })
            .sum()
    }

    /// Second derivative in `omega`.
    pub fn second_derivative(&self, omega: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(r, c)| {
                let k = self.harmonic(r) as f64;
                let x = k * omega;
                match self.branch {
                    Parity::Even => -k * k * c * x.cos(),
                    Parity::Odd => -k * k * c * x.sin(),
                }
            })
            .sum()
    }
}

/// A sampled relative-angle wave function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    omega: Vec<f64>,
    values: Vec<f64>,
    label: String,
}

impl Profile {
    pub fn new(omega: Vec<f64>, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        validate_grid(&omega)?;
        if omega.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} grid points but {} values",
                omega.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("profile values must be finite".into()));
        }
        Ok(Self {
            omega,
            values,
            label: label.into(),
        })
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Copy scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            omega: self.omega.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
            label: self.label.clone(),
        }
    }

    /// Scale to unit max amplitude with the dominant sample positive
    /// (near-ties resolved to the earliest grid point).
    pub(crate) fn normalized(mut self) -> Result<Self> {
        let max = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max == 0.0 {
            return Err(Error::DegenerateProfile);
        }
        let lead = self
            .values
            .iter()
            .position(|v| v.abs() >= max * (1.0 - 1e-9))
            .unwrap_or(0);
        let scale = self.values[lead].signum() / max;
        self.values.iter_mut().for_each(|v| *v *= scale);
        Ok(self)
    }
}

/// Ascending grid inside `[0, 2π)`.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty angle grid".into()));
    }
    if grid.iter().any(|w| !(0.0..TAU).contains(w)) {
        return Err(Error::InvalidArgument("grid angles must lie in [0, 2π)".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `points` equispaced angles `2πj / points` covering one period.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    (0..points).map(|j| TAU * j as f64 / points as f64).collect()
}

/// Mathieu eigenfunction sampled in `ω`, normalized to unit max amplitude.
pub fn mathieu_profile(query: &MathieuQuery, grid: &[f64]) -> Result<Profile> {
    validate_grid(grid)?;
    let series = MathieuSeries::new(query)?;
    let values = grid.iter().map(|&w| series.evaluate(w)).collect();
    Profile::new(grid.to_vec(), values, query.symbol())?.normalized()
}

/// Mathieu parameter `q = -4 r1 r2 Ω² σ²` of the harmonic relative problem.
pub fn harmonic_mathieu_q(geometry: &RingGeometry, omega: f64) -> f64 {
    -4.0 * geometry.r1() * geometry.r2() * omega * omega * geometry.sigma_sq()
}

/// Energy `½ Ω² (r1² + r2²) + λ / (8σ²)` for the `level_index`-th characteristic
/// value of the given branch (`a_0, a_2, ...` or `b_2, b_4, ...`).
pub fn harmonic_energy(
    geometry: &RingGeometry,
    omega_strength: f64,
    branch: Parity,
    level_index: u32,
) -> Result<f64> {
    Interaction::harmonic(omega_strength)?;
    let order = match branch {
        Parity::Even => 2 * level_index,
        Parity::Odd => 2 * (level_index + 1),
    };
    let q = harmonic_mathieu_q(geometry, omega_strength);
    let lambda = mathieu_char(&MathieuQuery::new(q, branch, order)?)?;
    Ok(harmonic_constant(geometry, omega_strength) + lambda / (8.0 * geometry.sigma_sq()))
}

/// A relative-angle eigenvalue with its parity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelativeLevel {
    pub energy: f64,
    pub parity: Parity,
}

fn check_modes(m_modes: usize) -> Result<()> {
    if m_modes < 8 {
        return Err(Error::InvalidArgument(format!(
            "relative solver needs at least 8 Fourier modes, got {m_modes}"
        )));
    }
    Ok(())
}

/// Fourier-basis Hamiltonian of the total-momentum sector `total`, with modes
/// `(k, total - k)` for `k = -m_modes ..= m_modes`, in ascending `k`.
pub fn sector_matrix(
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    m_modes: usize,
    total: i32,
) -> Result<DMatrix<f64>> {
    check_modes(m_modes)?;
    let series = PotentialSeries::new(interaction, geometry, 2 * m_modes, quad)?;
    Ok(sector_matrix_from(&series, geometry, m_modes, total))
}

fn sector_matrix_from(
    series: &PotentialSeries,
    geometry: &RingGeometry,
    m_modes: usize,
    total: i32,
) -> DMatrix<f64> {
    let m = m_modes as i32;
    let dim = 2 * m_modes + 1;
    DMatrix::from_fn(dim, dim, |i, j| {
        let bra = ModePair::new(i as i32 - m, total - (i as i32 - m));
        let ket = ModePair::new(j as i32 - m, total - (j as i32 - m));
        let v = series.coefficient(ket.m - bra.m);
        if i == j {
            kinetic_element(geometry, bra) + v
        } else {
            v
        }
    })
}

/// The full zero-momentum Fourier matrix on `e^{ipω}`, `p = -m_modes ..= m_modes`.
pub fn relative_matrix(
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    m_modes: usize,
) -> Result<DMatrix<f64>> {
    sector_matrix(geometry, interaction, quad, m_modes, 0)
}

/// Eigenvalues of a total-momentum sector, ascending.
pub fn sector_spectrum(
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    m_modes: usize,
    total: i32,
) -> Result<Vec<f64>> {
    let m = sector_matrix(geometry, interaction, quad, m_modes, total)?;
    let n = m.nrows();
    Ok(eigensolve(&m, n)?.values().to_vec())
}

/// Parity-reduced blocks of the zero-momentum problem: cosine basis
/// `{1, √2 cos pω}` and sine basis `{√2 sin pω}`, `p = 1 ..= m_modes`.
pub fn parity_matrices(
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    m_modes: usize,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    check_modes(m_modes)?;
    let series = PotentialSeries::new(interaction, geometry, 2 * m_modes, quad)?;
    let v = |p: usize| series.coefficient(p as i32);
    let kinetic = |p: usize| kinetic_element(geometry, ModePair::new(p as i32, -(p as i32)));

    let even = DMatrix::from_fn(m_modes + 1, m_modes + 1, |i, j| match (i, j) {
        (0, 0) => v(0),
        (0, p) | (p, 0) => SQRT_2 * v(p),
        (p, q) => {
            let base = v(p.abs_diff(q)) + v(p + q);
            if p == q {
                kinetic(p) + base
            } else {
                base
            }
        }
    });
    let odd = DMatrix::from_fn(m_modes, m_modes, |i, j| {
        let (p, q) = (i + 1, j + 1);
        let base = v(p.abs_diff(q)) - v(p + q);
        if p == q {
            kinetic(p) + base
        } else {
            base
        }
    });
    Ok((even, odd))
}

/// Zero-momentum relative spectrum, ascending, each level tagged by parity.
pub fn relative_spectrum(
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    m_modes: usize,
) -> Result<Vec<RelativeLevel>> {
    let (even, odd) = parity_matrices(geometry, interaction, quad, m_modes)?;
    let mut levels = Vec::with_capacity(2 * m_modes + 1);
    for (matrix, parity) in [(even, Parity::Even), (odd, Parity::Odd)] {
        let n = matrix.nrows();
        let pairs = eigensolve(&matrix, n)?;
        levels.extend(
            pairs
                .values()
                .iter()
                .map(|&energy| RelativeLevel { energy, parity }),
        );
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(levels)
}

/// A named physical case with an optional closed-form energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSpec {
    pub geometry: RingGeometry,
    pub interaction: Interaction,
    pub exact_energy: Option<f64>,
    pub label: String,
}

/// The quasi-exactly solvable Coulomb case:
/// `r1 = (13/7) √(3 (13 - √78))`, `r2 = (13/7) √(3 (13 + √78))`, `E = 28/507`.
pub fn quasi_exact_coulomb_case() -> CaseSpec {
    let root78 = 78f64.sqrt();
    let r1 = 13.0 / 7.0 * (3.0 * (13.0 - root78)).sqrt();
    let r2 = 13.0 / 7.0 * (3.0 * (13.0 + root78)).sqrt();
    CaseSpec {
        geometry: RingGeometry::new(r1, r2).expect("closed-form radii are valid"),
        interaction: Interaction::Coulomb,
        exact_energy: Some(28.0 / 507.0),
        label: "coulomb-quasi-exact".into(),
    }
}

/// Harmonic coupling with `r1 = 1`, `r2 = 2`, `Ω = 1`.
pub fn harmonic_reference_case() -> CaseSpec {
    CaseSpec {
        geometry: RingGeometry::new(1.0, 2.0).expect("valid radii"),
        interaction: Interaction::Harmonic { omega: 1.0 },
        exact_energy: None,
        label: "harmonic-r1-1-r2-2-omega-1".into(),
    }
}
