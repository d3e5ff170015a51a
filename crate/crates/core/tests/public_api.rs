use heat_trace::circle::{cycle_free_energy_bessel, cycle_logdet_exact, s1_free_energy};
use heat_trace::deform::{deformed_free_energy, deformed_heat_trace, DeformSpec};
use heat_trace::sphere::{f_reference, heat_trace};
use heat_trace::{Coupling, CycleSpec64, Error, SeriesPolicy64, SphereSpec64};

#[test]
fn cycle_graph_matches_circle() {
    let policy = SeriesPolicy64::default();
    for n in [3, 10, 100] {
        let spec = CycleSpec64::new(n, 0.7).unwrap();
        let bessel = cycle_free_energy_bessel(&spec, &policy).unwrap().value;
        let logdet = cycle_logdet_exact(&spec).unwrap();
        let s1 = s1_free_energy(0.7).unwrap();
        assert!((bessel - s1).abs() < 1e-12, "N={n}: {bessel} vs {s1}");
        assert!((logdet - s1).abs() < 1e-12, "N={n}: {logdet} vs {s1}");
    }
}

#[test]
fn deformed_trace_approaches_sphere_trace() {
    // On the rescaled time axis the N → ∞ deformed trace reproduces the sphere.
    let policy = SeriesPolicy64::default();
    let sphere = SphereSpec64::massless(3, Coupling::PseudoConformal).unwrap();
    let n = 4000u32;
    let scale = (n as f64 / std::f64::consts::TAU).powi(2);
    let spec = DeformSpec::new(3, n, Coupling::PseudoConformal).unwrap();
    for t in [0.5, 1.0, 2.0] {
        let exact = heat_trace(&sphere, t, &policy).unwrap().value;
        let deformed: f64 = deformed_heat_trace(&spec, t * scale).unwrap();
        assert!(
            (deformed / exact - 1.0).abs() < 1e-3,
            "t={t}: {deformed} vs {exact}"
        );
    }
}

#[test]
fn deformed_free_energy_converges() {
    for coupling in [Coupling::Conformal, Coupling::PseudoConformal] {
        let limit = f_reference::<f64>(3, coupling).unwrap();
        let errs: Vec<f64> = [20, 80, 320]
            .into_iter()
            .map(|n| {
                (deformed_free_energy::<f64>(3, n, coupling, 1e-12)
                    .unwrap()
                    .value
                    - limit)
                    .abs()
            })
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        // Leading correction is O(1/N²).
        assert!((errs[1] / errs[2] - 16.0).abs() < 0.5, "{errs:?}");
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(
        CycleSpec64::new(2, 1.0),
        Err(Error::Validation { .. })
    ));
    assert!(SphereSpec64::massless(4, Coupling::Conformal).is_err());
    assert!(DeformSpec::new(3, 5, Coupling::Conformal).is_err());
    assert!(f_reference::<f64>(23, Coupling::Conformal).is_err());
}
