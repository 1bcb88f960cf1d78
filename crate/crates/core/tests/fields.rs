use std::f64::consts::PI;

use nalgebra::Matrix4;
use rand::Rng;
use tetragauge::random::{random_spin_connection, random_tetrad, trial_rng};
use tetragauge::tensor::DIM;
use tetragauge::{
    admissibility_residual, curvature_from_connection, einstein_residual, frame_field_residual, hdd_residuals,
    legendre, make_field, phase_jet_from_field_jet, spin_connection, AnalyticField, DerivativeMode, FieldJet,
    FieldKind, PhaseJet, StructureConstants,
};

const SEED: u64 = 0xf1e1d;

fn field(kind: FieldKind, mode: DerivativeMode) -> AnalyticField {
    make_field(kind, mode).unwrap()
}

fn schwarzschild(mode: DerivativeMode) -> AnalyticField {
    field(FieldKind::Schwarzschild { mass: 1.0 }, mode)
}

/// Largest of the frame-field, Einstein and immersion-induced momentum
/// equation residuals.
fn vacuum_residual(jet: &FieldJet) -> f64 {
    let c = StructureConstants::shared();
    let r = curvature_from_connection(&jet.omega, &jet.domega);
    let hdd = hdd_residuals(&phase_jet_from_field_jet(jet), c);
    frame_field_residual(jet).max_abs().max(einstein_residual(&jet.e, &r).max_abs()).max(hdd.momenta.max_abs())
}

#[test]
fn minkowski_residuals_are_exactly_zero() {
    let f = field(FieldKind::Minkowski, DerivativeMode::Analytic);
    let mut rng = trial_rng(SEED, 0);
    for _ in 0..10 {
        let jet = f.jet(f.sample_point(&mut rng)).unwrap();
        assert_eq!(admissibility_residual(&jet).max_abs(), 0.0);
        assert_eq!(vacuum_residual(&jet), 0.0);
    }
}

#[test]
fn schwarzschild_is_a_vacuum_solution() {
    for (mode, tol) in [(DerivativeMode::Analytic, 1e-6), (DerivativeMode::FiniteDifference { step: 1e-3 }, 1e-4)] {
        let f = schwarzschild(mode);
        let mut rng = trial_rng(SEED, 1);
        for _ in 0..20 {
            let jet = f.jet(f.sample_point(&mut rng)).unwrap();
            assert!(admissibility_residual(&jet).max_abs() <= 1e-10);
            let res = vacuum_residual(&jet);
            assert!(res <= tol, "{mode:?}: {res}");
        }
    }
}

#[test]
fn schwarzschild_with_other_mass() {
    let f = field(FieldKind::Schwarzschild { mass: 2.5 }, DerivativeMode::Analytic);
    let mut rng = trial_rng(SEED, 2);
    for _ in 0..10 {
        let x = f.sample_point(&mut rng);
        assert!((7.5..=25.0).contains(&x[1]));
        assert!(vacuum_residual(&f.jet(x).unwrap()) <= 1e-6);
    }
}

#[test]
fn conformal_field_is_admissible_but_not_vacuum() {
    let f = field(FieldKind::Conformal { amplitude: 0.1 }, DerivativeMode::Analytic);
    let jet = f.jet([0.0, 0.3, -0.2, 0.5]).unwrap();
    assert!(admissibility_residual(&jet).max_abs() <= 1e-10);
    let r = curvature_from_connection(&jet.omega, &jet.domega);
    assert!(einstein_residual(&jet.e, &r).max_abs() > 0.01);
    assert!(frame_field_residual(&jet).max_abs() > 0.01);
}

#[test]
fn immersed_connection_equation_is_not_a_field_equation() {
    // on the immersion H vanishes but its gradient does not, so the
    // connection equation fails even for flat space
    let f = field(FieldKind::Minkowski, DerivativeMode::Analytic);
    let jet = f.jet([0.0; DIM]).unwrap();
    let hdd = hdd_residuals(&phase_jet_from_field_jet(&jet), StructureConstants::shared());
    assert_eq!(hdd.momenta.max_abs(), 0.0);
    assert!(hdd.connection.max_abs() > 1.0);
}

#[test]
fn flat_conformal_field_is_vacuum() {
    let f = field(FieldKind::Conformal { amplitude: 0.0 }, DerivativeMode::Analytic);
    assert_eq!(vacuum_residual(&f.jet([0.1, 0.2, 0.3, 0.4]).unwrap()), 0.0);
}

/// Admissibility residual of the FD-sampled connection evaluated against the
/// exact frame gradient.
fn fd_connection_defect(kind: FieldKind, x: [f64; DIM], step: f64) -> f64 {
    let exact = field(kind, DerivativeMode::Analytic).jet(x).unwrap();
    let fd = field(kind, DerivativeMode::FiniteDifference { step }).jet(x).unwrap();
    admissibility_residual(&FieldJet { omega: fd.omega, ..exact }).max_abs()
}

#[test]
fn finite_difference_jets_converge_at_fourth_order() {
    let kind = FieldKind::Schwarzschild { mass: 1.0 };
    for x in [[0.0, 4.0, PI / 2.0, 0.0], [1.0, 3.5, 0.8, 2.0], [-2.0, 6.0, 2.2, 4.0]] {
        let coarse = fd_connection_defect(kind, x, 0.04);
        let fine = fd_connection_defect(kind, x, 0.02);
        let ratio = coarse / fine;
        assert!((8.0..=32.0).contains(&ratio), "admissibility ratio {ratio} at {x:?}");

        let b = |h| {
            frame_field_residual(&schwarzschild(DerivativeMode::FiniteDifference { step: h }).jet(x).unwrap()).max_abs()
        };
        let ratio = b(0.04) / b(0.02);
        assert!((8.0..=32.0).contains(&ratio), "frame-field ratio {ratio} at {x:?}");
    }
    // linear frames are differentiated exactly
    let conformal = FieldKind::Conformal { amplitude: 0.1 };
    assert!(fd_connection_defect(conformal, [0.0, 0.3, 0.1, -0.2], 0.04) <= 1e-12);
}

#[test]
fn fd_stencil_leaving_the_domain_is_an_error() {
    let f = schwarzschild(DerivativeMode::FiniteDifference { step: 0.5 });
    assert!(matches!(f.jet([0.0, 3.0, 1.0, 0.0]), Err(tetragauge::Error::OutsideDomain(_))));
}

#[test]
fn einstein_form_is_negated_frame_field_residual() {
    for t in 0..25 {
        let mut rng = trial_rng(SEED + 3, t);
        let e = random_tetrad(&mut rng);
        let de = std::array::from_fn(|_| Matrix4::from_fn(|_, _| rng.random_range(-1.0..=1.0)));
        let omega = spin_connection(&e, &de).unwrap();
        let domega = std::array::from_fn(|_| random_spin_connection(&mut rng, 1.0));
        let jet = FieldJet { x: [0.0; DIM], e, de, omega, domega };
        assert!(admissibility_residual(&jet).max_abs() <= 1e-9);
        let b = frame_field_residual(&jet);
        let g = einstein_residual(&jet.e, &curvature_from_connection(&omega, &domega));
        let (p, n, bmax) = b.argmax();
        assert!(bmax.abs() > 1e-3);
        assert!((g.values[p][n] / bmax + 1.0).abs() <= 1e-10);
        for p in 0..DIM {
            for n in 0..DIM {
                assert!((g.values[p][n] + b.values[p][n]).abs() <= 1e-10 * (1.0 + bmax.abs()));
            }
        }
    }
}

#[test]
fn connection_equation_holds_for_legendre_momenta() {
    let c = StructureConstants::shared();
    for t in 0..20 {
        let mut rng = trial_rng(SEED + 4, t);
        let omega = random_spin_connection(&mut rng, 1.0);
        let domega = std::array::from_fn(|_| random_spin_connection(&mut rng, 1.0));
        let r = curvature_from_connection(&omega, &domega);
        let jet = PhaseJet { omega, domega, momenta: legendre(&r), ..PhaseJet::flat([0.0; DIM]) };
        let res = hdd_residuals(&jet, c);
        assert!(res.connection.max_abs() <= 1e-12 * (1.0 + r.max_abs()), "{}", res.connection.max_abs());
    }
}
