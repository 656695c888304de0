//! Dense symmetric eigensolver and the Rayleigh-Ritz driver.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matelem::{assemble, assemble_blocks, QuadratureSpec};
use crate::model::{BasisSpec, Interaction, ModePair, RingGeometry};

/// Eigenvalues closer than this are treated as one degenerate level.
pub const DEGENERACY_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 100_000;

/// The lowest eigenpairs of a real symmetric matrix, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs {
    values: Vec<f64>,
    /// One orthonormal eigenvector per column, same order as `values`.
    vectors: DMatrix<f64>,
}

impl EigenPairs {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> DVector<f64> {
        self.vectors.column(i).into_owned()
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Position of the largest-magnitude entry; near-ties go to the lowest index.
fn dominant_index(v: &[f64]) -> usize {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    v.iter()
        .position(|x| x.abs() >= max * (1.0 - 1e-9))
        .unwrap_or(0)
}

/// Flip `v` so that its dominant entry is positive.
pub(crate) fn fix_phase(v: &mut [f64]) {
    let i = dominant_index(v);
    if v[i] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

pub fn check_symmetric(matrix: &DMatrix<f64>) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::InvalidArgument(format!(
            "matrix is {}x{}, not square",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let scale = matrix.amax().max(1.0);
    let n = matrix.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = (matrix[(i, j)] - matrix[(j, i)]).abs();
            if diff > 1e-12 * scale || diff.is_nan() {
                return Err(Error::NotSymmetric { row: i, col: j, diff });
            }
        }
    }
    Ok(())
}

/// The `k` lowest eigenpairs of a real symmetric matrix.
///
/// Eigenvectors are normalized with their largest-magnitude entry positive.
/// Within a degenerate cluster, vectors are ordered by the position of that
/// dominant entry while the values stay ascending.
pub fn eigensolve(matrix: &DMatrix<f64>, k: usize) -> Result<EigenPairs> {
    check_symmetric(matrix)?;
    let dim = matrix.nrows();
    if k == 0 || k > dim {
        return Err(Error::EigenCount { requested: k, dim });
    }
    let decomposition = SymmetricEigen::try_new(matrix.clone(), f64::EPSILON, MAX_ITERATIONS)
        .ok_or(Error::NoConvergence {
            dim,
            max_iterations: MAX_ITERATIONS,
        })?;

    let mut pairs: Vec<(f64, Vec<f64>)> = decomposition
        .eigenvalues
        .iter()
        .zip(decomposition.eigenvectors.column_iter())
        .map(|(&value, column)| {
            let mut v: Vec<f64> = column.iter().copied().collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            fix_phase(&mut v);
            (value, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    // stable order inside degenerate clusters
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 - pairs[end - 1].0 <= DEGENERACY_TOL {
            end += 1;
        }
        let values: Vec<f64> = pairs[start..end].iter().map(|p| p.0).collect();
        pairs[start..end].sort_by_key(|(_, v)| dominant_index(v));
        // keep the reported values ascending; they differ by at most DEGENERACY_TOL
        for (pair, value) in pairs[start..end].iter_mut().zip(values) {
            pair.0 = value;
        }
        start = end;
    }

    pairs.truncate(k);
    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = DMatrix::from_fn(dim, k, |r, c| pairs[c].1[r]);
    Ok(EigenPairs { values, vectors })
}

/// A Ritz state: energy and plane-wave coefficients `c_{k,l}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundSolution {
    energy: f64,
    /// Coefficients in flat-index order.
    coeffs: Vec<f64>,
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
}

impl GroundSolution {
    /// Build a solution from a flat eigenvector, normalizing and fixing its phase.
    pub fn from_flat(
        energy: f64,
        mut coeffs: Vec<f64>,
        basis: BasisSpec,
        geometry: RingGeometry,
        interaction: Interaction,
    ) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a basis of dimension {}",
                coeffs.len(),
                basis.dim()
            )));
        }
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::InvalidArgument("zero coefficient vector".into()));
        }
        coeffs.iter_mut().for_each(|c| *c /= norm);
        fix_phase(&mut coeffs);
        Ok(Self {
            energy,
            coeffs,
            basis,
            geometry,
            interaction,
        })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn geometry(&self) -> RingGeometry {
        self.geometry
    }

    pub fn interaction(&self) -> Interaction {
        self.interaction
    }

    /// `c_{k,l}`, or `None` outside the truncation.
    pub fn coefficient(&self, mode: ModePair) -> Option<f64> {
        self.basis
            .index_of(mode)
            .ok()
            .map(|i| self.coeffs[i - 1])
    }

    pub fn flat(&self) -> &[f64] {
        &self.coeffs
    }

    /// `(mode, c)` in flat-index order.
    pub fn coefficients(&self) -> impl Iterator<Item = (ModePair, f64)> + '_ {
        self.basis.modes().zip(self.coeffs.iter().copied())
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Weight carried by modes with total momentum `total`.
    pub fn sector_weight(&self, total: i32) -> f64 {
        self.coefficients()
            .filter(|(p, _)| p.total() == total)
            .map(|(_, c)| c * c)
            .sum()
    }

    /// Total momentum of the sector carrying most of the weight.
    pub fn dominant_sector(&self) -> i32 {
        let h = 2 * self.basis.half();
        (-h..=h)
            .map(|s| (s, self.sector_weight(s)))
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
            .0
    }
}

fn solve_states(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    count: usize,
) -> Result<Vec<GroundSolution>> {
    let matrix = assemble(basis, geometry, interaction, quad)?;
    let pairs = eigensolve(matrix.as_matrix(), count)?;
    pairs
        .values()
        .iter()
        .enumerate()
        .map(|(i, &energy)| {
            GroundSolution::from_flat(
                energy,
                pairs.vectors().column(i).iter().copied().collect(),
                *basis,
                *geometry,
                *interaction,
            )
        })
        .collect()
}

/// Lowest Ritz state of the truncated two-ring Hamiltonian.
pub fn ground_state(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
) -> Result<GroundSolution> {
    Ok(solve_states(basis, geometry, interaction, quad, 1)?.remove(0))
}

/// The lowest `count` Ritz states, ascending in energy.
pub fn excited_states(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    count: usize,
) -> Result<Vec<GroundSolution>> {
    if count == 0 || count > basis.dim() {
        return Err(Error::EigenCount {
            requested: count,
            dim: basis.dim(),
        });
    }
    solve_states(basis, geometry, interaction, quad, count)
}

/// An eigenvalue tagged with the total momentum of its sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorLevel {
    pub energy: f64,
    pub total: i32,
}

/// Full spectrum from independent momentum-sector solves, ascending.
pub fn sector_levels(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
) -> Result<Vec<SectorLevel>> {
    let mut levels = Vec::with_capacity(basis.dim());
    for block in assemble_blocks(basis, geometry, interaction, quad)? {
        let n = block.entries.nrows();
        let pairs = eigensolve(&block.entries, n)?;
        levels.extend(pairs.values().iter().map(|&energy| SectorLevel {
            energy,
            total: block.block.total,
        }));
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.total.cmp(&b.total)));
    Ok(levels)
}

/// Lowest `k` eigenvalues of the dense matrix.
pub fn dense_spectrum(
    basis: &BasisSpec,
    geometry: &RingGeometry,
    interaction: &Interaction,
    quad: &QuadratureSpec,
    k: usize,
) -> Result<Vec<f64>> {
    let matrix = assemble(basis, geometry, interaction, quad)?;
    Ok(eigensolve(matrix.as_matrix(), k)?.values().to_vec())
}
