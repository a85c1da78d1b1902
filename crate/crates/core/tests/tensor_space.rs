mod common;

use common::{poly, product_members, Fun1};
use rkhs_sg::kernels::SpaceId;
use rkhs_sg::tensor::{inner_product_numeric_2d, Orders, TensorKernel, TensorSpace};

/// `u(x, t) = a(x) b(t)`.
fn product(a: Fun1, b: Fun1) -> impl Fn(f64, f64, usize, usize) -> f64 {
    move |x, t, dx, dt| a(x, dx) * b(t, dt)
}

const PARAMS: [(f64, f64); 5] = [(0.5, 0.5), (0.13, 0.87), (0.71, 0.29), (0.4, 0.9), (0.95, 0.05)];

#[test]
fn reproducing_property_in_both_product_spaces() {
    for space in [TensorSpace::W, TensorSpace::WHat] {
        let k = TensorKernel::of(space);
        for (name, u) in product_members(space) {
            for &(y, s) in &PARAMS {
                let got = inner_product_numeric_2d(space, &u, &k.section((y, s)), &[y], &[s]);
                let want = u(y, s, 0, 0);
                assert!((got - want).abs() <= 1e-6, "{space:?} {name} at ({y}, {s}): {got} vs {want}");
            }
        }
    }
}

#[test]
fn documented_two_dimensional_values() {
    let w = TensorKernel::of(TensorSpace::W);
    let u = product(Box::new(poly(&[0.0, 1.0, -1.0])), Box::new(poly(&[0.0, 0.0, 1.0])));
    let v = inner_product_numeric_2d(TensorSpace::W, &u, &w.section((0.5, 0.5)), &[0.5], &[0.5]);
    assert!((v - 0.0625).abs() <= 1e-6, "{v}");

    let g = TensorKernel::of(TensorSpace::WHat);
    let u = |x: f64, t: f64, dx: usize, dt: usize| poly(&[0.0, 1.0])(x, dx) * poly(&[0.0, 1.0])(t, dt);
    let v = inner_product_numeric_2d(TensorSpace::WHat, &u, &g.section((0.4, 0.9)), &[0.4], &[0.9]);
    assert!((v - 0.36).abs() <= 1e-6, "{v}");
}

#[test]
fn members_satisfy_the_constraints_of_w() {
    for (name, u) in product_members(TensorSpace::W) {
        for z in [0.0, 0.25, 0.6, 1.0] {
            assert!(u(z, 0.0, 0, 0).abs() < 1e-15, "{name}");
            assert!(u(z, 0.0, 0, 1).abs() < 1e-15, "{name}");
            assert!(u(0.0, z, 0, 0).abs() < 1e-15, "{name}");
            assert!(u(1.0, z, 0, 0).abs() < 1e-12, "{name}");
        }
    }
}

#[test]
fn factorization_is_the_same_expression() {
    let k = TensorKernel::of(TensorSpace::W);
    for (arg, param) in [((0.1, 0.2), (0.3, 0.4)), ((0.9, 0.6), (0.2, 0.6))] {
        for o in [Orders::ZERO, Orders::new(2, 1, 0, 2), Orders::new(0, 0, 2, 2)] {
            let v = k.eval(arg, param, o).unwrap();
            let w = k.space_factor.eval(arg.0, param.0, o.dx, o.dy).unwrap()
                * k.time_factor.eval(arg.1, param.1, o.dt, o.ds).unwrap();
            assert_eq!(v.to_bits(), w.to_bits());
        }
    }
}

#[test]
fn diagonal_errors_propagate() {
    let k = TensorKernel::of(TensorSpace::W);
    assert!(k.eval((0.3, 0.4), (0.3, 0.8), Orders::new(3, 0, 2, 0)).is_err());
    assert!(k.eval((0.3, 0.4), (0.5, 0.4), Orders::new(0, 3, 0, 2)).is_err());
    assert!(k.eval((0.3, 0.4), (0.5, 0.8), Orders::new(3, 3, 2, 2)).is_ok());
}

#[test]
fn first_order_product_kernel_is_explicit() {
    let g = TensorKernel::of(TensorSpace::WHat);
    let v = g.eval((0.2, 0.7), (0.5, 0.3), Orders::ZERO).unwrap();
    assert!((v - 1.2 * 1.3).abs() < 1e-15);
    assert_eq!(TensorSpace::WHat.factor_ids(), (SpaceId::SpatialW1, SpaceId::TemporalW1));
}
