//! Geometry, interactions and the plane-wave basis of the two-ring problem.
//!
//! Particle 1 lives on the inner ring of radius `r1`, particle 2 on the outer
//! ring of radius `r2`. Both interactions depend only on the relative angle
//! `ω = φ1 - φ2`. The product basis `e^{imφ1} e^{inφ2}` is truncated to
//! `|m|, |n| <= N/2` and flattened with the 1-based map
//! `i = (m + N/2)(N + 1) + (n + N/2) + 1`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

/// Reduce an angle to its representative in `[0, 2π)`.
pub fn canonical_angle(angle: f64) -> f64 {
    let reduced = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if reduced >= TAU {
        0.0
    } else {
        reduced
    }
}

/// `σ² = 1 / (1/r1² + 1/r2²)`, the reduced squared radius of the relative motion.
pub fn reduced_sigma_sq(r1: f64, r2: f64) -> f64 {
    1.0 / (1.0 / (r1 * r1) + 1.0 / (r2 * r2))
}

/// Two concentric rings with `0 < r1 <= r2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RingGeometry {
    r1: f64,
    r2: f64,
}

impl RingGeometry {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "radii must be finite (r1 = {r1}, r2 = {r2})"
            )));
        }
        if r1 <= 0.0 || r2 <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "radii must be positive (r1 = {r1}, r2 = {r2})"
            )));
        }
        if r1 > r2 {
            return Err(Error::InvalidGeometry(format!(
                "inner radius must not exceed outer radius (r1 = {r1} > r2 = {r2})"
            )));
        }
        Ok(Self { r1, r2 })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn sigma_sq(&self) -> f64 {
        reduced_sigma_sq(self.r1, self.r2)
    }

    /// Inter-particle distance at relative angle `omega`.
    pub fn distance(&self, omega: f64) -> f64 {
        distance(self, omega)
    }
}

/// `d(ω) = sqrt(r1² + r2² - 2 r1 r2 cos ω)`.
pub fn distance(geometry: &RingGeometry, omega: f64) -> f64 {
    let (r1, r2) = (geometry.r1, geometry.r2);
    // (r2 - r1)² + 2 r1 r2 (1 - cos ω) avoids cancellation near ω = 0
    let gap = r2 - r1;
    let half = 0.5 * omega;
    let s = half.sin();
    (gap * gap + 4.0 * r1 * r2 * s * s).sqrt()
}

/// The pair interaction between the two particles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Interaction {
    /// `1 / d`.
    Coulomb,
    /// `½ Ω² d²`.
    Harmonic { omega: f64 },
}

impl Interaction {
    pub fn harmonic(omega: f64) -> Result<Self> {
        let interaction = Interaction::Harmonic { omega };
        interaction.validate()?;
        Ok(interaction)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Interaction::Coulomb => Ok(()),
            Interaction::Harmonic { omega } if omega.is_finite() && omega > 0.0 => Ok(()),
            Interaction::Harmonic { omega } => Err(Error::InvalidInteraction(format!(
                "harmonic strength must be positive and finite, got {omega}"
            ))),
        }
    }

    /// Potential energy at relative angle `omega`.
    pub fn potential(&self, geometry: &RingGeometry, omega: f64) -> f64 {
        let d = distance(geometry, omega);
        match *self {
            Interaction::Coulomb => 1.0 / d,
            Interaction::Harmonic { omega: w } => 0.5 * w * w * d * d,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Interaction::Coulomb => "coulomb",
            Interaction::Harmonic { .. } => "harmonic",
        }
    }
}

/// Angular momenta `(m, n)` of particle 1 and particle 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModePair {
    pub m: i32,
    pub n: i32,
}

impl ModePair {
    pub const fn new(m: i32, n: i32) -> Self {
        Self { m, n }
    }

    /// Total angular momentum `m + n`.
    pub const fn total(&self) -> i32 {
        self.m + self.n
    }
}

/// Truncation order `N` (even); modes run over `-N/2 ..= N/2` on each ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BasisSpec {
    n_trunc: u32,
}

impl BasisSpec {
    pub fn new(n_trunc: u32) -> Result<Self> {
        if n_trunc % 2 != 0 {
            return Err(Error::OddTruncation(n_trunc));
        }
        // keeps every index and mode inside i32 arithmetic
        if n_trunc > 40_000 {
            return Err(Error::InvalidArgument(format!(
                "truncation order {n_trunc} is unreasonably large"
            )));
        }
        Ok(Self { n_trunc })
    }

    pub fn n_trunc(&self) -> u32 {
        self.n_trunc
    }

    /// Largest mode magnitude `N/2`.
    pub fn half(&self) -> i32 {
        (self.n_trunc / 2) as i32
    }

    /// Modes per ring, `N + 1`.
    pub fn side(&self) -> usize {
        self.n_trunc as usize + 1
    }

    /// Flattened dimension `(N + 1)²`.
    pub fn dim(&self) -> usize {
        self.side() * self.side()
    }

    pub fn contains(&self, mode: ModePair) -> bool {
        let h = self.half();
        mode.m.abs() <= h && mode.n.abs() <= h
    }

    /// 1-based flat index of `mode`.
    pub fn index_of(&self, mode: ModePair) -> Result<usize> {
        if !self.contains(mode) {
            return Err(Error::ModeOutOfRange {
                m: mode.m,
                n: mode.n,
                n_trunc: self.n_trunc,
            });
        }
        Ok(self.offset_of(mode) + 1)
    }

    /// Mode for a 1-based flat index.
    pub fn mode_of(&self, index: usize) -> Result<ModePair> {
        if index == 0 || index > self.dim() {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.dim(),
            });
        }
        Ok(self.mode_at(index - 1))
    }

    /// 0-based offset, unchecked.
    pub(crate) fn offset_of(&self, mode: ModePair) -> usize {
        let h = self.half();
        (mode.m + h) as usize * self.side() + (mode.n + h) as usize
    }

    /// Mode at a 0-based offset, unchecked.
    pub(crate) fn mode_at(&self, offset: usize) -> ModePair {
        let h = self.half();
        let side = self.side();
        ModePair::new((offset / side) as i32 - h, (offset % side) as i32 - h)
    }

    /// All modes in flat-index order.
    pub fn modes(&self) -> impl Iterator<Item = ModePair> + '_ {
        (0..self.dim()).map(move |offset| self.mode_at(offset))
    }
}

/// Free function form of [`BasisSpec::index_of`].
pub fn index_of(mode: ModePair, basis: &BasisSpec) -> Result<usize> {
    basis.index_of(mode)
}

/// Free function form of [`BasisSpec::mode_of`].
pub fn mode_of(index: usize, basis: &BasisSpec) -> Result<ModePair> {
    basis.mode_of(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_double() -> RingGeometry {
        RingGeometry::new(1.0, 2.0).unwrap()
    }

    #[test]
    fn distance_at_special_angles() {
        let g = unit_double();
        assert!((distance(&g, 0.0) - 1.0).abs() < 1e-15);
        assert!((distance(&g, PI) - 3.0).abs() < 1e-15);
        assert!((distance(&g, PI / 2.0) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn geometry_rejects_bad_radii() {
        assert!(RingGeometry::new(0.0, 1.0).is_err());
        assert!(RingGeometry::new(-1.0, 1.0).is_err());
        assert!(RingGeometry::new(2.0, 1.0).is_err());
        assert!(RingGeometry::new(f64::NAN, 1.0).is_err());
        assert!(RingGeometry::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn sigma_sq_symmetric_and_equal_radius_limit() {
        assert_eq!(reduced_sigma_sq(1.0, 2.0), reduced_sigma_sq(2.0, 1.0));
        assert!((reduced_sigma_sq(3.0, 3.0) - 4.5).abs() < 1e-14);
        assert!((unit_double().sigma_sq() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn harmonic_needs_positive_strength() {
        assert!(Interaction::harmonic(1.0).is_ok());
        assert!(Interaction::harmonic(0.0).is_err());
        assert!(Interaction::harmonic(-2.0).is_err());
        assert!(Interaction::Harmonic { omega: f64::NAN }.validate().is_err());
    }

    #[test]
    fn basis_rejects_odd_order() {
        assert_eq!(BasisSpec::new(3), Err(Error::OddTruncation(3)));
        let b = BasisSpec::new(0).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.mode_of(1).unwrap(), ModePair::new(0, 0));
    }

    #[test]
    fn index_map_corners() {
        let b = BasisSpec::new(2).unwrap();
        assert_eq!(b.index_of(ModePair::new(-1, -1)).unwrap(), 1);
        assert_eq!(b.index_of(ModePair::new(0, 0)).unwrap(), 5);
        assert_eq!(b.index_of(ModePair::new(1, 1)).unwrap(), 9);
        assert_eq!(b.mode_of(1).unwrap(), ModePair::new(-1, -1));
        assert_eq!(b.mode_of(5).unwrap(), ModePair::new(0, 0));
    }

    #[test]
    fn mode_of_matches_brute_force_enumeration() {
        // invert by scanning the whole N = 4 grid
        let b = BasisSpec::new(4).unwrap();
        let mut found = None;
        for m in -2..=2 {
            for n in -2..=2 {
                let i = (m + 2) * 5 + (n + 2) + 1;
                if i == 9 {
                    found = Some(ModePair::new(m, n));
                }
            }
        }
        assert_eq!(found, Some(ModePair::new(-1, 1)));
        assert_eq!(b.mode_of(9).unwrap(), ModePair::new(-1, 1));
    }

    #[test]
    fn out_of_range_is_reported() {
        let b = BasisSpec::new(2).unwrap();
        assert!(matches!(
            b.index_of(ModePair::new(2, 0)),
            Err(Error::ModeOutOfRange { .. })
        ));
        assert!(matches!(b.mode_of(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(b.mode_of(10), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn index_map_round_trip_exhaustive() {
        for n in (0..=20).step_by(2) {
            let b = BasisSpec::new(n).unwrap();
            let h = b.half();
            for m in -h..=h {
                for k in -h..=h {
                    let p = ModePair::new(m, k);
                    assert_eq!(b.mode_of(b.index_of(p).unwrap()).unwrap(), p);
                }
            }
            for i in 1..=b.dim() {
                assert_eq!(b.index_of(b.mode_of(i).unwrap()).unwrap(), i);
            }
        }
    }

    #[test]
    fn canonical_angle_range() {
        assert_eq!(canonical_angle(0.0), 0.0);
        assert!((canonical_angle(-PI) - PI).abs() < 1e-15);
        assert!((canonical_angle(5.0 * PI) - PI).abs() < 1e-12);
        assert!(canonical_angle(-1e-300) < TAU);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn distance_even_periodic_and_bounded(
                r1 in 0.1f64..5.0, extra in 0.0f64..5.0, w in -20.0f64..20.0
            ) {
                let g = RingGeometry::new(r1, r1 + extra).unwrap();
                let d = distance(&g, w);
                prop_assert!((d - distance(&g, -w)).abs() <= 1e-12 * d.max(1.0));
                prop_assert!((d - distance(&g, w + TAU)).abs() <= 1e-11 * d.max(1.0));
                prop_assert!(d >= g.r2() - g.r1() - 1e-12);
                prop_assert!(d <= g.r1() + g.r2() + 1e-12);
                prop_assert!(d >= distance(&g, 0.0) - 1e-12);
                prop_assert!(d <= distance(&g, PI) + 1e-12);
            }

            #[test]
            fn sigma_sq_is_symmetric(a in 0.01f64..100.0, b in 0.01f64..100.0) {
                let s = reduced_sigma_sq(a, b);
                prop_assert!(s > 0.0);
                prop_assert!((s - reduced_sigma_sq(b, a)).abs() <= 1e-14 * s);
            }
        }
    }
}
