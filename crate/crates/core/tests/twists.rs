use gnf_core::catalog::{osp12, sl12, sl_n};
use gnf_core::gtensor::{tilde, Chart, DynParams, WeightTable};
use gnf_core::linalg::{c, C64};
use gnf_core::twistlab::apply_twist;
use gnf_core::verify::{
    grid, proportional, weight_table_search, ybe_matrices, ybe_residual_at, SearchPoint,
};
use gnf_core::Error;

#[test]
fn twisted_double_yangian_is_proportional_to_dyr() {
    for n in [2, 3] {
        for r in [2.3, 5.0, 11.0] {
            let tw = sl_n::twist_dyr_sl_n(n, r).unwrap();
            let dy = sl_n::dy_sl_n(n).unwrap();
            let dyr = sl_n::dyr_sl_n(n, r).unwrap();
            for k in 0..10 {
                let u = c(-1.2 + 0.27 * k as f64, 0.35 - 0.07 * k as f64);
                let rf = apply_twist(&tw, &dy, Some(u), None).unwrap();
                let target = dyr.eval(Some(u), None).unwrap();
                let kappa = proportional(&rf, &target, 1e-8).unwrap();
                assert!(kappa.norm() > 1e-6, "N={n} r={r} u={u}");
            }
        }
    }
}

#[test]
fn twisting_without_reflection_is_not_proportional() {
    // F₁₂(u) instead of F₂₁(−u) on the left
    let (n, r, u) = (2, 5.0, c(0.41, 0.2));
    let f = sl_n::dyr_twist_matrix(n, u, r).unwrap();
    let rm = sl_n::dy_sl_n(n).unwrap().eval(Some(u), None).unwrap();
    let wrong =
        gnf_core::twistlab::conjugate(&rm, &f, &f, &gnf_core::gtensor::GradedSpace::even(n))
            .unwrap();
    let target = sl_n::dyr_sl_n(n, r).unwrap().eval(Some(u), None).unwrap();
    assert!(matches!(
        proportional(&wrong, &target, 1e-8),
        Err(Error::NotProportional { .. }) | Err(Error::ZeroPattern(..))
    ));
}

#[test]
fn printed_variants_fail_their_identities() {
    let (u, v, r) = (c(0.37, 0.2), c(-0.61, 0.1), 5.0);
    let space = gnf_core::gtensor::GradedSpace::sl12();
    let m = |x: C64| tilde(&sl12::dyr_sl12_as_printed(x, r).unwrap(), &space);
    let printed = gnf_core::verify::graded_ybe_explicit(&m(u), &m(u + v), &m(v), &space);
    assert!(printed.normalized > 1e-3, "{printed:?}");
    let fixed = ybe_residual_at(&sl12::dyr_sl12(r).unwrap(), Some(u), Some(v), true).unwrap();
    assert!(fixed.normalized < 1e-12);

    let q = c(0.63, 0.0);
    let b = |z: C64| osp12::baxterised_osp12_as_printed(q, -q, z).unwrap();
    let (z1, z2) = (c(0.3, 0.2), c(-0.5, 0.4));
    assert!(ybe_matrices(&b(z1), &b(z1 * z2), &b(z2), 3).normalized > 1e-6);
}

fn points(coords: &[Vec<C64>], s: Option<(C64, C64)>) -> Vec<SearchPoint> {
    coords
        .iter()
        .map(|v| SearchPoint {
            s1: s.map(|p| p.0),
            s2: s.map(|p| p.1),
            lambda: DynParams::new(Chart::S, v.clone()),
        })
        .collect()
}

/// The frozen tables are the unique minimisers for every family that uses
/// them, not only the ones they were searched on.
#[test]
fn frozen_tables_are_unique_minimisers() {
    let one = [vec![c(0.83, 0.21)], vec![c(-1.37, 0.4)]];
    let two = [
        vec![c(0.83, 0.21), c(-0.4, 0.6)],
        vec![c(-1.37, 0.4), c(1.1, -0.3)],
    ];
    let half = grid(-2.0, 2.0, 0.5);
    let ints = grid(-2.0, 2.0, 1.0);
    let f = osp12::bql_osp12(c(0.63, 0.0)).unwrap();
    assert_eq!(
        weight_table_search(&f, Chart::S, 1, &half, &points(&one, None), 1e-10).unwrap(),
        WeightTable::osp12()
    );
    let f = osp12::uql_osp12(c(0.63, 0.0), osp12::BaxterBranch::QCubed).unwrap();
    let sp = Some((c(0.4, 0.3), c(-0.7, 0.2)));
    assert_eq!(
        weight_table_search(&f, Chart::S, 1, &half, &points(&one, sp), 1e-10).unwrap(),
        WeightTable::osp12()
    );
    let f = sl12::dys_sl12().unwrap();
    let sp = Some((c(0.4, 0.3), c(-0.7, 0.2)));
    assert_eq!(
        weight_table_search(&f, Chart::S, 2, &ints, &points(&two, sp), 1e-10).unwrap(),
        WeightTable::sl12()
    );
}
