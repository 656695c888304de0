use ring_ritz::analysis::{compare, Reference};
use ring_ritz::mathieu::{sector_spectrum, uniform_grid};
use ring_ritz::published::{expand_symmetric, COULOMB_QUASI_EXACT_N10};
use ring_ritz::{
    excited_states, ground_state, harmonic_reference_case, quasi_exact_coulomb_case, BasisSpec,
    Parity, QuadratureSpec,
};

#[test]
fn excited_states_match_sector_oracle() {
    let case = harmonic_reference_case();
    let q = QuadratureSpec::default();
    let states =
        excited_states(&BasisSpec::new(16).unwrap(), &case.geometry, &case.interaction, &q, 3).unwrap();

    let mut heads: Vec<f64> = [-1, 0, 1]
        .iter()
        .map(|&j| sector_spectrum(&case.geometry, &case.interaction, &q, 48, j).unwrap()[0])
        .collect();
    heads.sort_by(f64::total_cmp);
    for (s, h) in states.iter().zip(&heads) {
        assert!((s.energy() - h).abs() < 1e-6, "{} vs {h}", s.energy());
    }
    // the first excitation is the degenerate pair J = ±1
    assert!((states[1].energy() - states[2].energy()).abs() < 1e-10);
    assert_ne!(states[1].dominant_sector(), 0);
}

#[test]
fn coulomb_first_excitation_lies_above_ground() {
    let case = quasi_exact_coulomb_case();
    let states = excited_states(
        &BasisSpec::new(10).unwrap(),
        &case.geometry,
        &case.interaction,
        &QuadratureSpec::default(),
        2,
    )
    .unwrap();
    assert!(states[1].energy() > states[0].energy());
}

#[test]
fn coulomb_comparison_report() {
    let case = quasi_exact_coulomb_case();
    let solution =
        ground_state(&BasisSpec::new(10).unwrap(), &case.geometry, &case.interaction, &QuadratureSpec::default())
            .unwrap();
    let reference = Reference::from_case(&case)
        .unwrap()
        .with_coefficients(expand_symmetric(&COULOMB_QUASI_EXACT_N10));
    let report = compare(&solution, &reference).unwrap();
    assert!(report.abs_error < 1e-5);
    assert!(report.coeff_max_dev.unwrap() < 1e-6);
    assert_eq!(report.node_count_numeric, 0);
    assert_eq!(report.node_count_reference, None);
}

#[test]
fn odd_branch_reference_has_two_more_nodes() {
    let case = harmonic_reference_case();
    let solution =
        ground_state(&BasisSpec::new(14).unwrap(), &case.geometry, &case.interaction, &QuadratureSpec::default())
            .unwrap();
    let reference = Reference::mathieu(&case.geometry, 1.0, Parity::Odd, 0, &uniform_grid(512)).unwrap();
    let report = compare(&solution, &reference).unwrap();
    assert_eq!(report.node_count_numeric, 0);
    assert_eq!(report.node_count_reference, Some(2));
    assert!((report.reference_energy - 2.660).abs() < 1e-3);
    assert!(report.abs_error > 1.0);
}
