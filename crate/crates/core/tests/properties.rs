use num_complex::Complex64;
use proptest::prelude::*;

use ttdeform::deform_holo::{deform_exponent, deformed_number_residual, s_residual};
use ttdeform::deform_real::{deform_eval_real, st_residuals, RealTermDeformation, RealVariant};
use ttdeform::deform_holo::DeformParams;
use ttdeform::maass::FlowFactor;
use ttdeform::mellin::{i_alpha, MultiplierRoute};
use ttdeform::numkit::{gamma_complex, kummer_1f1, principal_power, two_sum};
use ttdeform::spectra::{eta_inverse, eval_holo, ising_z, theta3, ModulusPoint, SeriesOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn near_pole(z: Complex64) -> bool {
    z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-2 && z.im.abs() < 1e-2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_recurrence(re in -20.0..19.0f64, im in -10.0..10.0f64) {
        let z = c(re, im);
        prop_assume!(z.norm() <= 20.0 && !near_pole(z) && !near_pole(z + 1.0));
        let g = gamma_complex(z).unwrap();
        let g1 = gamma_complex(z + 1.0).unwrap();
        prop_assert!((g1 - z * g).norm() <= 1e-11 * g1.norm().max(1e-300));
    }

    #[test]
    fn gamma_reflection(re in -9.5..9.5f64, im in -3.0..3.0f64) {
        let z = c(re, im);
        prop_assume!(!near_pole(z) && !near_pole(1.0 - z));
        let lhs = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap();
        let rhs = std::f64::consts::PI / (std::f64::consts::PI * z).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }

    #[test]
    fn principal_power_inverse(re in 0.01..50.0f64, im in -50.0..50.0f64, wr in -3.0..3.0f64, wi in -3.0..3.0f64) {
        let z = c(re, im);
        let w = c(wr, wi);
        let p = principal_power(z, w).unwrap() * principal_power(1.0 / z, w).unwrap();
        prop_assert!((p - 1.0).norm() < 1e-13);
    }

    #[test]
    fn kummer_derivative(a in -2.0..3.0f64, b in 0.3..4.0f64, z in -5.0..5.0f64) {
        let (a, b) = (c(a, 0.0), c(b, 0.0));
        let h = 1e-4;
        let fd = (kummer_1f1(a, b, c(z + h, 0.0)).unwrap() - kummer_1f1(a, b, c(z - h, 0.0)).unwrap()) / (2.0 * h);
        let exact = a / b * kummer_1f1(a + 1.0, b + 1.0, c(z, 0.0)).unwrap();
        prop_assert!((fd - exact).norm() < 1e-6 * exact.norm().max(1.0));
    }

    #[test]
    fn two_sum_exact(a in -1e10..1e10f64, b in -1e-5..1e-5f64) {
        let (s, e) = two_sum(a, b);
        prop_assert_eq!(s, a + b);
        // the error term recovers what rounding dropped
        let (s2, e2) = two_sum(s, e);
        prop_assert_eq!((s2, e2), (s, e));
    }

    #[test]
    fn deformed_number_quadratic(x in 0.0..50.0f64, beta in 0.0..5.0f64) {
        let xb = deform_exponent(c(x, 0.0), c(beta, 0.0)).unwrap();
        prop_assert!(deformed_number_residual(c(x, 0.0), c(beta, 0.0), xb) <= 1e-13 * (1.0 + beta * x));
    }

    #[test]
    fn spin_sign_symmetry(lambda in 0.0..40.0f64, p in 0i64..30, alpha in 0.001..1.0f64, d1 in 0.05..5.0f64) {
        for v in [RealVariant::Weighted, RealVariant::Residue] {
            let a = RealTermDeformation::new(lambda, p, 1.0, alpha, d1, v).unwrap();
            let b = RealTermDeformation::new(lambda, -p, 1.0, alpha, d1, v).unwrap();
            prop_assert_eq!(a, b);
        }
        let h = RealTermDeformation::new(lambda, 0, 1.0, alpha, d1, RealVariant::Weighted).unwrap();
        prop_assert!((h.s - (1.0 + 8.0 * std::f64::consts::PI * lambda * alpha * d1).sqrt()).abs() < 1e-14 * h.s);
    }

    #[test]
    fn flow_semigroup(sr in -3.0..3.0f64, si in -20.0..20.0f64, a1 in 0.0..2.0f64, a2 in 0.0..2.0f64) {
        let s = c(sr, si);
        let f = FlowFactor::new(s, a1).then(&FlowFactor::new(s, a2)).unwrap();
        let g = FlowFactor::new(s, a1 + a2);
        prop_assert!((f.factor - g.factor).norm() <= 1e-14 * g.factor.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn theta3_covariance(d1 in 0.5..2.0f64, d2 in -0.5..0.5f64) {
        let opts = SeriesOptions::new(1e-15);
        let d = ModulusPoint::new(d1, d2).unwrap();
        let f = eval_holo(&theta3(), d, &opts).unwrap().value;
        let fs = eval_holo(&theta3(), d.s_image(), &opts).unwrap().value;
        let w = d.as_complex().powf(0.5);
        prop_assert!((fs - w * f).norm() < 1e-9 * fs.norm());
    }

    #[test]
    fn eta_inverse_covariance(d1 in 0.5..2.0f64, d2 in -0.5..0.5f64) {
        let opts = SeriesOptions::new(1e-15);
        let d = ModulusPoint::new(d1, d2).unwrap();
        let f = eval_holo(&eta_inverse(), d, &opts).unwrap().value;
        let fs = eval_holo(&eta_inverse(), d.s_image(), &opts).unwrap().value;
        let w = d.as_complex().powf(-0.5);
        prop_assert!((fs - w * f).norm() < 1e-9 * fs.norm());
    }

    #[test]
    fn deformed_theta3_covariance(alpha in 0.01..1.0f64, d1 in 0.5..2.0f64, d2 in -0.5..0.5f64) {
        let r = s_residual(&theta3(), alpha, ModulusPoint::new(d1, d2).unwrap(), 1e-15).unwrap();
        prop_assert!(r < 1e-9, "{}", r);
    }

    #[test]
    fn multiplier_reflection(k in 0.0..6.0f64, t in -5.0..5.0f64, alpha in 0.05..1.0f64) {
        let s = c(0.3 * k + 0.2, t);
        let a = i_alpha(k, s, alpha, MultiplierRoute::Quadrature).unwrap().value;
        let b = i_alpha(k, k - s, alpha, MultiplierRoute::Quadrature).unwrap().value;
        prop_assert!((a - b).norm() < 1e-8 * a.norm().max(1e-3));
    }

    #[test]
    fn ising_deformed_invariance(alpha in 0.01..0.05f64, d1 in 0.7..1.5f64, d2 in -0.5..0.5f64) {
        let d = ModulusPoint::new(d1, d2).unwrap();
        let (s, t) = st_residuals(&ising_z(64).unwrap(), alpha, d, RealVariant::Invariant, 1e-15).unwrap();
        prop_assert!(s < 1e-8 && t < 1e-10);
    }

    #[test]
    fn ising_reality(alpha in 0.0..0.05f64, d1 in 0.3..3.0f64, d2 in -2.0..2.0f64) {
        let p = DeformParams::unit(alpha).unwrap();
        let d = ModulusPoint::new(d1, d2).unwrap();
        let v = deform_eval_real(&ising_z(32).unwrap(), &p, d, RealVariant::Invariant, &SeriesOptions::new(1e-14))
            .unwrap()
            .value;
        prop_assert!(v.im.abs() < 1e-12 * v.norm());
    }
}
