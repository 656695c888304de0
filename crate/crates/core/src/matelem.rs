//! Hamiltonian matrix elements in the plane-wave product basis.
//!
//! Both interactions depend only on `ω = φ1 - φ2`, so every interaction
//! element reduces to a Fourier coefficient
//! `V_p = (1/2π) ∫ cos(pω) V(ω) dω` with `p = m - k`, and vanishes unless the
//! total angular momentum is conserved, `(m - k) + (n - l) = 0`.

use std::f64::consts::TAU;
use std::io::{self, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::{BasisSpec, Interaction, ModePair, RingGeometry};

/// Periodic trapezoid settings for the Coulomb Fourier coefficients.
///
/// Starting from `points` nodes the rule is doubled until two successive
/// estimates agree to `tolerance` (absolute), or `max_points` is exceeded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    points: usize,
    tolerance: f64,
    max_points: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points: 256,
            tolerance: 1e-12,
            max_points: 1 << 20,
        }
    }
}

impl QuadratureSpec {
    pub fn new(points: usize) -> Result<Self> {
        if points < 4 || points % 2 != 0 {
            return Err(Error::InvalidQuadrature(format!(
                "node count must be even and at least 4, got {points}"
            )));
        }
        Ok(Self {
            points,
            ..Self::default()
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::InvalidQuadrature(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn with_max_points(mut self, max_points: usize) -> Result<Self> {
        if max_points < self.points {
            return Err(Error::InvalidQuadrature(format!(
                "max_points {max_points} is below the starting node count {}",
                self.points
            )));
        }
        self.max_points = max_points;
        Ok(self)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }
}

/// `m² / (2 r1²) + n² / (2 r2²)`.
pub fn kinetic_element(geometry: &RingGeometry, mode: ModePair) -> f64 {
    let (r1, r2) = (geometry.r1(), geometry.r2());
    let (m, n) = (mode.m as f64, mode.n as f64);
    m * m / (2.0 * r1 * r1) + n * n / (2.0 * r2 * r2)
}

/// Coulomb coefficients `V_0 ..= V_max_order` from an `points`-node periodic trapezoid.
pub fn trapezoid_coulomb_coefficients(
    geometry: &RingGeometry,
    max_order: usize,
    points: usize,
) -> Vec<f64> {
    let mut sums = vec![0.0; max_order + 1];
    let step = TAU / points as f64;
    for j in 0..points {
        let w = step * j as f64;
        let f = 1.0 / geometry.distance(w);
        for (p, acc) in sums.iter_mut().enumerate() {
            *acc += (p as f64 * w).cos() * f;
        }
    }
    let scale = 1.0 / points as f64;
    sums.iter_mut().for_each(|s| *s *= scale);
    sums
}

/// Converged Coulomb coefficients `V_0 ..= V_max_order`.
pub fn coulomb_coefficients(
    geometry: &RingGeometry,
    max_order: usize,
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    if geometry.r1() == geometry.r2() {
        return Err(Error::SingularIntegrand(geometry.r1()));
    }
    // at least four nodes per period of the highest harmonic
    let mut points = quad.points.max(4 * (max_order + 1));
    points += points % 2;
    let mut previous = trapezoid_coulomb_coefficients(geometry, max_order, points);
    let mut change = f64::INFINITY;
    loop {
        let refined_points = 2 * points;
        if refined_points > quad.max_points {
            return Err(Error::QuadratureNotConverged {
                points,
                estimate: change,
                tolerance: quad.tolerance,
            });
        }
        let refined = trapezoid_coulomb_coefficients(geometry, max_order, refined_points);
        change = previous
            .iter()
            .zip(&refined)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if change <= quad.tolerance {
            return Ok(refined);
        }
        previous = refined;
        points = refined_points;
    }
}

/// Single Coulomb Fourier coefficient `V_p`; even in `p`.
pub fn coulomb_fourier(geometry: &RingGeometry, p: i32, quad: &QuadratureSpec) -> Result<f64> {
    let order = p.unsigned_abs() as usize;
    Ok(coulomb_coefficients(geometry, order, quad)?[order])
}

/// Fourier coefficients `V_p` of the pair potential up to a fixed order.
///
/// This is the single source of interaction values for both the two-ring
/// matrix and the relative-angle reference solver.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSeries {
    coefficients: Vec<f64>,
}

impl PotentialSeries {
    pub fn new(
        interaction: &Interaction,
        geometry: &RingGeometry,
        max_order: usize,
        quad: &QuadratureSpec,
    ) -> Result<Self> {
        interaction.validate()?;
        let coefficients = match *interaction {
            Interaction::Coulomb => coulomb_coefficients(geometry, max_order, quad)?,
            Interaction::Harmonic { omega } => {
                let mut c = vec![0.0; max_order.max(1) + 1];
                c[0] = harmonic_constant(geometry, omega);
                c[1] = harmonic_coupling(geometry, omega);
                c.truncate(max_order + 1);
                c
            }
        };
        Ok(Self { coefficients })
    }

    pub fn max_order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `V_p` for `|p| <= max_order`.
    ///
    /// Panics if `|p|` exceeds the order the series was built for.
    pub fn coefficient(&self, p: i32) -> f64 {
        self.coefficients[p.unsigned_abs() as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coefficients
    }

    /// Interaction element `<bra| V |ket>` in the product basis.
    pub fn element(&self, bra: ModePair, ket: ModePair) -> f64 {
        if bra.total() != ket.total() {
            return 0.0;
        }
        self.coefficient(ket.m - bra.m)
    }
}

/// `½ Ω² (r1² + r2²)`, the constant part of the harmonic potential.
pub fn harmonic_constant(geometry: &RingGeometry, omega: f64) -> f64 {
    let (r1, r2) = (geometry.r1(), geometry.r2());
    0.5 * omega * omega * (r1 * r1 + r2 * r2)
}

/// `-½ r1 r2 Ω²`, the coefficient of `e^{±iω}` in the harmonic potential.
pub fn harmonic_coupling(geometry: &RingGeometry, omega: f64) -> f64 {
    -0.5 * geometry.r1() * geometry.r2() * omega * omega
}

/// Interaction matrix element `<k l| V |m n>`.
pub fn interaction_element(
    interaction: &Interaction,
    geometry: &RingGeometry,
    bra: ModePair,
    ket: ModePair,
    quad: &QuadratureSpec,
) -> Result<f64> {
    interaction.validate()?;
    if let Interaction::Coulomb = interaction {
        if geometry.r1() == geometry.r2() {
            return Err(Error::SingularIntegrand(geometry.r1()));
        }
    }
    if bra.total() != ket.total() {
        return Ok(0.0);
    }
    let p = ket.m - bra.m;
    match *interaction {
        Interaction::Coulomb => coulomb_fourier(geometry, p, quad),
        Interaction::Harmonic { omega } => Ok(match p.abs() {
            0 => harmonic_constant(geometry, omega),
            1 => harmonic_coupling(geometry, omega),
            _ => 0.0,
        }),
    }
}

/// The flattened `(N+1)² x (N+1)²` Hamiltonian, real symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    basis: BasisSpec,
    entries: DMatrix<f64>,
}

impl HermitianMatrix {
    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Entry at 1-based flat indices, as in the index map.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1, j - 1)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Plain-text dump, one row per line.
    pub fn write_text<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for row in self.entries.row_iter() {
            let line: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Assemble the full dense Hamiltonian in flat-index order.
pub fn assemble(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
) -> Result<HermitianMatrix> {
    let series = PotentialSeries::new(interaction, geometry, basis.n_trunc() as usize, quad)?;
    let dim = basis.dim();
    let mut entries = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let bra = basis.mode_at(i);
        entries[(i, i)] = kinetic_element(geometry, bra) + series.coefficient(0);
        for j in (i + 1)..dim {
            let ket = basis.mode_at(j);
            if bra.total() != ket.total() {
                continue;
            }
            let v = series.coefficient(ket.m - bra.m);
            entries[(i, j)] = v;
            entries[(j, i)] = v;
        }
    }
    Ok(HermitianMatrix {
        basis: *basis,
        entries,
    })
}

/// Flat indices sharing the total angular momentum `s = m + n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentumBlock {
    pub total: i32,
    /// 1-based flat indices, ascending.
    pub indices: Vec<usize>,
}

/// Partition of the basis into the `2N + 1` conserved-momentum sectors.
pub fn momentum_blocks(basis: &BasisSpec) -> Vec<MomentumBlock> {
    let h = basis.half();
    (-2 * h..=2 * h)
        .map(|s| {
            let lo = (-h).max(s - h);
            let hi = h.min(s + h);
            let indices = (lo..=hi)
                .map(|m| basis.offset_of(ModePair::new(m, s - m)) + 1)
                .collect();
            MomentumBlock { total: s, indices }
        })
        .collect()
}

/// One momentum sector of the Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    pub block: MomentumBlock,
    pub entries: DMatrix<f64>,
}

/// Assemble every momentum sector separately.
pub fn assemble_blocks(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
) -> Result<Vec<BlockMatrix>> {
    let series = PotentialSeries::new(interaction, geometry, basis.n_trunc() as usize, quad)?;
    Ok(momentum_blocks(basis)
        .into_iter()
        .map(|block| {
            let modes: Vec<ModePair> = block
                .indices
                .iter()
                .map(|&i| basis.mode_at(i - 1))
                .collect();
            let dim = modes.len();
            let mut entries = DMatrix::zeros(dim, dim);
            for (a, &bra) in modes.iter().enumerate() {
                entries[(a, a)] = kinetic_element(geometry, bra) + series.coefficient(0);
                for (b, &ket) in modes.iter().enumerate().skip(a + 1) {
                    let v = series.coefficient(ket.m - bra.m);
                    entries[(a, b)] = v;
                    entries[(b, a)] = v;
                }
            }
            BlockMatrix { block, entries }
        })
        .collect())
}
