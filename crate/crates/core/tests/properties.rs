use std::f64::consts::PI;

use proptest::prelude::*;

use bose_casimir::casimir::{force_closed, potential_closed};
use bose_casimir::oracles::{casimir_integral_quadrature, grand_potential_direct, Truncation};
use bose_casimir::physics::{derive, phi_parameter, single_particle_energy, u_parameter};
use bose_casimir::polylog::{li_series, li_unit_circle, PolylogOrder, SeriesOptions};
use bose_casimir::{Complex64, PhysicalParams, TermSelector};

fn order(s: u32) -> PolylogOrder {
    PolylogOrder::new(s).unwrap()
}

/// Unit parameters with `F` chosen so that the field shift equals `a`.
fn with_shift(b: f64, a: f64) -> PhysicalParams {
    let hbar = 1.0 / (2.0 * PI);
    let f2 = 2.0 * b * b * (a + hbar * b);
    PhysicalParams {
        electric_field: f2.sqrt(),
        ..PhysicalParams::unit(b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_commutes_with_conjugation(s in 2u32..=5, r in 0.0f64..0.999, theta in -PI..PI) {
        let z = Complex64::from_polar(r, theta);
        let opts = SeriesOptions { tol: 1e-15, ..Default::default() };
        let a = li_series(order(s), z, opts).unwrap().value;
        let b = li_series(order(s), z.conj(), opts).unwrap().value;
        prop_assert!((a.conj() - b).norm() <= 1e-12);
    }

    #[test]
    fn angle_derivative_lowers_order(s in 3u32..=5, theta in 0.05f64..(2.0 * PI - 0.05)) {
        let h = 1e-5;
        let slope = (li_unit_circle(order(s), theta + h).unwrap()
            - li_unit_circle(order(s), theta - h).unwrap())
            / (2.0 * h);
        let expected = Complex64::i() * li_unit_circle(order(s - 1), theta).unwrap();
        prop_assert!((slope - expected).norm() <= 1e-5 * expected.norm(), "{slope} vs {expected}");
    }

    #[test]
    fn more_terms_never_loosen_the_bound(s in 2u32..=5, r in 0.5f64..=1.0, theta in -PI..PI, m in 1u64..5000) {
        let z = Complex64::from_polar(r, theta);
        let bound = |max_terms| {
            li_series(order(s), z, SeriesOptions { tol: 1e-300, max_terms }).unwrap().tail_bound
        };
        prop_assert!(bound(2 * m) <= bound(m));
    }

    #[test]
    fn phi_is_scaled_u(b in 0.01f64..20.0, d in 0.05f64..5.0) {
        let p = PhysicalParams::unit(b);
        let u = u_parameter(&p, d).unwrap();
        let phi = phi_parameter(&p, d).unwrap();
        let expected = u * -(2.0 * PI).sqrt();
        prop_assert!((phi - expected).norm() <= 1e-14 * expected.norm().max(f64::MIN_POSITIVE));
        prop_assert!(phi.re <= 0.0);
        let doubled = phi_parameter(&p, 2.0 * d).unwrap();
        prop_assert!((doubled - phi * 2.0).norm() <= 1e-13 * doubled.norm());
    }

    #[test]
    fn energy_increases_in_each_quantum_number(
        b in 0.01f64..20.0, d in 0.05f64..5.0, nx in 1u64..50, ny in 1u64..50, nz in 1u64..50
    ) {
        let p = PhysicalParams::unit(b);
        let e = |x, y, z| single_particle_energy(&p, d, x, y, z).unwrap();
        let base = e(nx, ny, nz);
        prop_assert!(e(nx + 1, ny, nz) > base);
        prop_assert!(e(nx, ny + 1, nz) > base);
        prop_assert!(e(nx, ny, nz + 1) > base);
    }

    #[test]
    fn terms_add_up(b in 0.01f64..20.0, d in 0.1f64..3.0) {
        let p = PhysicalParams::unit(b);
        let potentials = TermSelector::SINGLE.map(|t| potential_closed(&p, d, t).unwrap().value);
        let forces = TermSelector::SINGLE.map(|t| force_closed(&p, d, t).unwrap().analytic);
        let all_potential = potential_closed(&p, d, TermSelector::All).unwrap().value;
        let all_force = force_closed(&p, d, TermSelector::All).unwrap().analytic;
        // cancellation between terms is allowed for by measuring against their sizes
        let size = |parts: &[Complex64]| parts.iter().map(|z| z.norm()).sum::<f64>();
        let sum = |parts: &[Complex64]| parts.iter().sum::<Complex64>();
        prop_assert!((sum(&potentials) - all_potential).norm() <= 1e-13 * size(&potentials));
        prop_assert!((sum(&forces) - all_force).norm() <= 1e-13 * size(&forces));
    }

    /// `d⁵ F` depends on `d` only through `φ`; keeping `d²A` fixed keeps `φ` fixed.
    #[test]
    fn leading_force_scales_as_inverse_fifth_power(
        b in 0.05f64..5.0, a in -0.1f64..50.0, d in 0.2f64..2.0, stretch in 1.1f64..3.0
    ) {
        let hbar = 1.0 / (2.0 * PI);
        prop_assume!(a > -hbar * b / (stretch * stretch) * 0.9);
        let near = with_shift(b, a * stretch * stretch);
        let far = with_shift(b, a);
        let (d_near, d_far) = (d, d * stretch);
        let phi_near = phi_parameter(&near, d_near).unwrap();
        let phi_far = phi_parameter(&far, d_far).unwrap();
        prop_assert!((phi_near - phi_far).norm() <= 1e-12 * phi_far.norm().max(1.0));
        let scaled = |p: &PhysicalParams, d: f64| {
            force_closed(p, d, TermSelector::OrderN5).unwrap().analytic * d.powi(5)
        };
        let (x, y) = (scaled(&near, d_near), scaled(&far, d_far));
        prop_assert!((x - y).norm() <= 1e-12 * y.norm(), "{x} vs {y}");
    }

    #[test]
    fn quadrature_decreases_in_both_parameters(p in 0.0f64..20.0, q in 0.5f64..40.0, dp in 0.01f64..2.0, dq in 0.01f64..2.0) {
        let base = casimir_integral_quadrature(p, q).unwrap();
        prop_assert!(base > 0.0);
        prop_assert!(casimir_integral_quadrature(p + dp, q).unwrap() < base);
        prop_assert!(casimir_integral_quadrature(p, q + dq).unwrap() < base);
    }

    #[test]
    fn direct_sum_grows_with_truncation(b in 1.6f64..10.0, d in 0.3f64..3.0, limit in 1u64..12) {
        let p = PhysicalParams::unit(b);
        let small = grand_potential_direct(&p, d, Truncation::uniform(limit)).unwrap().re;
        let large = grand_potential_direct(&p, d, Truncation::uniform(limit + 1)).unwrap().re;
        prop_assert!(small > 0.0 && large >= small);
    }
}

#[test]
fn regime_flips_at_critical_field() {
    let p = PhysicalParams::unit(1.0);
    let critical = p.critical_field();
    assert!((critical - PI.cbrt()).abs() < 1e-12);
    let below = derive(&p.with_magnetic_field(critical * 0.999)).unwrap().field_shift_a;
    let above = derive(&p.with_magnetic_field(critical * 1.001)).unwrap().field_shift_a;
    assert!(below > 0.0 && above < 0.0);
}
