//! Previously reported ground-state coefficients, used as regression references.
//!
//! Only the zero-momentum diagonal `c_{k,-k}` is listed; all other
//! coefficients are zero in both cases.

use crate::model::ModePair;

/// `c_{k,-k}` for `k = 0 ..= 5`, quasi-exact Coulomb case, `N = 10`.
/// Symmetric under `k -> -k`.
pub const COULOMB_QUASI_EXACT_N10: [f64; 6] = [
    0.821078904,
    -0.401700424,
    0.0393656555,
    0.00133573123,
    0.000210684568,
    4.52937008e-5,
];

/// `c_{k,-k}` for `k = 0 ..= 7`, harmonic case `r1 = 1, r2 = 2, Ω = 1`, `N = 14`.
/// Symmetric under `k -> -k`.
pub const HARMONIC_R1_1_R2_2_N14: [f64; 8] = [
    0.736370591,
    0.460633757,
    0.127820814,
    0.0188339041,
    0.00168284744,
    9.99675725e-5,
    4.21453413e-6,
    1.32216148e-7,
];

/// Ground energy of the harmonic case from the lowest odd characteristic value, as reported.
pub const HARMONIC_ODD_BRANCH_ENERGY: f64 = 2.660;

/// Lowest odd π-periodic characteristic value at `q = -32/5`, as reported.
pub const ODD_CHARACTERISTIC_Q_32_5: f64 = 1.0274;

/// Expand a half table into `(k, -k)` rows for `k = -K ..= K`, ascending in `k`.
pub fn expand_symmetric(half: &[f64]) -> Vec<(ModePair, f64)> {
    let top = half.len() as i32 - 1;
    (-top..=top)
        .map(|k| (ModePair::new(k, -k), half[k.unsigned_abs() as usize]))
        .collect()
}
