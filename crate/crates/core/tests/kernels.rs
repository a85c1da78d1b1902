mod common;

use common::{poly, sample_points, univariate_members};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rkhs_sg::kernels::{
    closed_form_kernel, closed_form_with_corrections, derive_kernel_oracle, inner_product_numeric,
    printed_kernel, Branch, SpaceId, SpaceSpec,
};

fn oracle(id: SpaceId) -> rkhs_sg::PiecewiseKernel {
    derive_kernel_oracle(&SpaceSpec::of(id)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn oracle_matches_closed_form_at_random_pairs(x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        for id in SpaceId::ALL {
            let (a, b) = (oracle(id), closed_form_kernel(id));
            let (p, q) = (a.eval(x, y, 0, 0).unwrap(), b.eval(x, y, 0, 0).unwrap());
            prop_assert!((p - q).abs() <= 1e-10, "{id:?} at ({x}, {y}): {p} vs {q}");
        }
    }

    #[test]
    fn mixed_derivatives_agree_off_diagonal(x in 0.0f64..=1.0, y in 0.0f64..=1.0, dx in 0usize..=3, dy in 0usize..=3) {
        prop_assume!(x != y);
        let (a, b) = (oracle(SpaceId::TemporalW3), closed_form_kernel(SpaceId::TemporalW3));
        let (p, q) = (a.eval(x, y, dx, dy).unwrap(), b.eval(x, y, dx, dy).unwrap());
        prop_assert!((p - q).abs() <= 1e-9 * (1.0 + q.abs()));
    }
}

#[test]
fn oracle_and_corrected_closed_form_agree_entrywise() {
    for id in SpaceId::ALL {
        let diff = oracle(id).max_abs_diff(&closed_form_kernel(id));
        assert!(diff <= 1e-10, "{id:?}: {diff}");
    }
}

#[test]
fn only_the_spatial_y5_coefficient_is_misprinted() {
    for id in [SpaceId::TemporalW3, SpaceId::SpatialW1, SpaceId::TemporalW1] {
        assert!(closed_form_with_corrections(id).1.is_empty(), "{id:?}");
        assert!(printed_kernel(id).max_abs_diff(&oracle(id)) <= 1e-12);
    }
    let (_, fixes) = closed_form_with_corrections(SpaceId::SpatialW3);
    assert_eq!(fixes.len(), 1);
    let c = &fixes[0];
    assert_eq!((c.branch, c.x_power, c.y_power), (Branch::Lower, 4, 5));
    assert!((1.0 / c.printed.abs() - 2938.0).abs() < 1e-6, "{}", 1.0 / c.printed);
    assert!((1.0 / c.derived.abs() - 2928.0).abs() < 1e-6, "{}", 1.0 / c.derived);
    assert_eq!(c.printed.signum(), c.derived.signum());
}

#[test]
fn reproducing_property_in_every_space() {
    for id in SpaceId::ALL {
        let spec = SpaceSpec::of(id);
        for k in [closed_form_kernel(id), oracle(id)] {
            for (name, u) in univariate_members(id) {
                for y in sample_points(20) {
                    let got = inner_product_numeric(&spec, &u, &k.section(y), &[y]);
                    let want = u(y, 0);
                    assert!((got - want).abs() <= 1e-8, "{id:?} {name} y={y}: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn documented_inner_products() {
    let spatial = SpaceSpec::of(SpaceId::SpatialW3);
    let r = closed_form_kernel(SpaceId::SpatialW3);
    let u = poly(&[0.0, 1.0, -1.0]);
    let v = inner_product_numeric(&spatial, &u, &r.section(0.3), &[0.3]);
    assert!((v - 0.21).abs() <= 1e-8, "{v}");

    let temporal = SpaceSpec::of(SpaceId::TemporalW3);
    let q = closed_form_kernel(SpaceId::TemporalW3);
    let v = inner_product_numeric(&temporal, &poly(&[0.0, 0.0, 1.0]), &q.section(0.7), &[0.7]);
    assert!((v - 0.49).abs() <= 1e-8, "{v}");
}

#[test]
fn symmetric_on_a_50_by_50_sample() {
    for id in SpaceId::ALL {
        let k = closed_form_kernel(id);
        for x in sample_points(50) {
            for y in sample_points(50) {
                let (a, b) = (k.eval(x, y, 0, 0).unwrap(), k.eval(y, x, 0, 0).unwrap());
                assert!((a - b).abs() <= 1e-12, "{id:?} ({x}, {y})");
            }
        }
    }
}

#[test]
fn branches_meet_smoothly_on_the_diagonal() {
    for id in SpaceId::ALL {
        let k = closed_form_kernel(id);
        let top = k.diagonal_smoothness();
        for y in sample_points(25).into_iter().chain([0.0, 1.0]) {
            for dx in 0..=top {
                for dy in 0..=top - dx {
                    let lo = k.eval_branch(Branch::Lower, y, y, dx, dy);
                    let up = k.eval_branch(Branch::Upper, y, y, dx, dy);
                    assert!((lo - up).abs() <= 1e-10, "{id:?} y={y} ({dx},{dy}): {lo} vs {up}");
                }
            }
        }
    }
}

#[test]
fn diagonal_derivatives_beyond_smoothness_are_rejected() {
    let k = closed_form_kernel(SpaceId::SpatialW3);
    assert!(k.eval(0.4, 0.4, 4, 0).is_ok());
    assert!(k.eval(0.4, 0.4, 3, 2).is_err());
    assert!(k.eval(0.4, 0.41, 3, 2).is_ok());
    let q = closed_form_kernel(SpaceId::TemporalW1);
    assert!(q.eval(0.2, 0.2, 1, 0).is_err());
}

#[test]
fn kernel_matrices_are_positive_semidefinite() {
    let sets = [sample_points(12), vec![0.0, 0.1, 0.11, 0.5, 0.9, 1.0], vec![0.05, 0.3, 0.300001, 0.77]];
    for id in SpaceId::ALL {
        let k = closed_form_kernel(id);
        for ys in &sets {
            let n = ys.len();
            let m = DMatrix::from_fn(n, n, |i, j| k.eval(ys[i], ys[j], 0, 0).unwrap());
            let min = SymmetricEigen::new(m).eigenvalues.min();
            assert!(min >= -1e-10, "{id:?}: {min}");
        }
    }
}

#[test]
fn text_dump_round_trips_values() {
    let k = closed_form_kernel(SpaceId::TemporalW3);
    let text = k.to_text();
    let numbers: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .flat_map(|l| l.split_whitespace().map(|v| v.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .collect();
    assert_eq!(numbers.len(), 72);
    assert_eq!(numbers[..36], k.lower().concat()[..]);
    assert_eq!(numbers[36..], k.upper().concat()[..]);
}
