#![allow(clippy::excessive_precision)]

use fslp_core::mittag_leffler::{ml_contour, ml_derivative, ml_eval, ml_series, ml_zero_refine, MlParams};
use fslp_core::Complex64;
use proptest::prelude::*;

/// (alpha, beta, Re z, Im z, Re E, Im E) from an 80-digit series evaluation.
const REFERENCE: &[(f64, f64, f64, f64, f64, f64)] = &[
    (1.5, 2.0, -5.0, 0.0, 0.20456444300647947614, 0.0),
    (1.5, 2.0, -11.5, 0.0, 0.034625861239935359937, 0.0),
    (1.5, 2.0, -12.5, 0.0, 0.030632274709256391276, 0.0),
    (1.5, 2.0, -30.0, 0.0, 0.019875580087330172014, 0.0),
    (1.5, 2.0, -100.0, 0.0, 0.0056399955404458874502, 0.0),
    (1.5, 2.0, 8.0, 3.0, 6.7019372322311644467, 6.3345356351409406914),
    (1.5, 2.0, -20.0, 15.0, 0.047417972195978223265, 0.031991174641265198052),
    (1.5, 2.0, 3.0, -40.0, -27.481271381139790881, -17.976338640651335813),
    (1.5, 2.0, 14.0, 0.0, 38.202566959463437905, 0.0),
    (4.0 / 3.0, 2.0, -5.0, 0.0, 0.19676629298068216271, 0.0),
    (4.0 / 3.0, 2.0, -11.5, 0.0, 0.064565968855409128197, 0.0),
    (4.0 / 3.0, 2.0, -12.5, 0.0, 0.059115306210429820343, 0.0),
    (4.0 / 3.0, 2.0, -30.0, 0.0, 0.024901340576074080195, 0.0),
    (4.0 / 3.0, 2.0, -100.0, 0.0, 0.0074097392095358388463, 0.0),
    (4.0 / 3.0, 2.0, 8.0, 3.0, 9.0037777123272154136, 16.213987486355250661),
    (4.0 / 3.0, 2.0, -20.0, 15.0, 0.021813714174302081891, 0.019504077341129500374),
    (4.0 / 3.0, 2.0, 3.0, -40.0, 37.14283236129305355, -29.556549727921318158),
    (4.0 / 3.0, 2.0, 14.0, 0.0, 144.06888468111913153, 0.0),
    (5.0 / 3.0, 5.0 / 3.0, -5.0, 0.0, 0.08341624401586212474, 0.0),
    (5.0 / 3.0, 5.0 / 3.0, -11.5, 0.0, -0.1158900123893491669, 0.0),
    (5.0 / 3.0, 5.0 / 3.0, -12.5, 0.0, -0.10852568561597965462, 0.0),
    (5.0 / 3.0, 5.0 / 3.0, -30.0, 0.0, 0.027473853281745694731, 0.0),
    (5.0 / 3.0, 5.0 / 3.0, -100.0, 0.0, 0.00040837754169122708918, 0.0),
    (5.0 / 3.0, 5.0 / 3.0, 8.0, 3.0, 7.0698587356643079796, 5.1647099286405339577),
    (5.0 / 3.0, 5.0 / 3.0, -20.0, 15.0, 0.24841782817138100112, -0.10563665545199862278),
    (5.0 / 3.0, 5.0 / 3.0, 3.0, -40.0, 39.839659143163152688, -11.498567541993441665),
    (5.0 / 3.0, 5.0 / 3.0, 14.0, 0.0, 27.251841517200352895, 0.0),
    (4.0 / 3.0, 4.0 / 3.0, -5.0, 0.0, -0.015133579086148987051, 0.0),
    (4.0 / 3.0, 4.0 / 3.0, -11.5, 0.0, -0.01162060067954102559, 0.0),
    (4.0 / 3.0, 4.0 / 3.0, -12.5, 0.0, -0.0076588524547014801391, 0.0),
    (4.0 / 3.0, 4.0 / 3.0, -30.0, 0.0, -0.00043318490786553509057, 0.0),
    (4.0 / 3.0, 4.0 / 3.0, -100.0, 0.0, -0.000033921210427240339674, 0.0),
    (4.0 / 3.0, 4.0 / 3.0, 8.0, 3.0, 17.677416178297473942, 51.290258353254415541),
    (4.0 / 3.0, 4.0 / 3.0, -20.0, 15.0, -0.0098544932337202012735, -0.0075507935337541621784),
    (4.0 / 3.0, 4.0 / 3.0, 3.0, -40.0, 45.214968625452723539, -297.14821824858136208),
    (4.0 / 3.0, 4.0 / 3.0, 14.0, 0.0, 539.24785358103098706, 0.0),
    (1.1, 1.1, -5.0, 0.0, 0.00078332666871868228661, 0.0),
    (1.1, 1.1, -11.5, 0.0, -0.0014720809444971353968, 0.0),
    (1.1, 1.1, -12.5, 0.0, -0.0011493629426609884081, 0.0),
    (1.1, 1.1, -30.0, 0.0, -0.00013470777699170772412, 0.0),
    (1.1, 1.1, -100.0, 0.0, -0.000010771338052114141134, 0.0),
    (1.1, 1.1, 8.0, 3.0, -352.75233497233213202, 464.91653992291118058),
    (1.1, 1.1, -20.0, 15.0, -0.00002892902326232834309, -0.00018385682906784492553),
    (1.1, 1.1, 3.0, -40.0, -244.9972307299584842, -94.739076845800683984),
    (1.1, 1.1, 14.0, 0.0, 43412.78969334123618, 0.0),
    (1.9, 2.0, -5.0, 0.0, 0.30728925801784670697, 0.0),
    (1.9, 2.0, -11.5, 0.0, -0.072248903764501481653, 0.0),
    (1.9, 2.0, -12.5, 0.0, -0.097850847110700751339, 0.0),
    (1.9, 2.0, -30.0, 0.0, -0.038115192843148439224, 0.0),
    (1.9, 2.0, -100.0, 0.0, -0.035149395404148375961, 0.0),
    (1.9, 2.0, 8.0, 3.0, 3.2626772498955257908, 1.3644176122453137517),
    (1.9, 2.0, -20.0, 15.0, -0.27212037157734122993, -0.27698518278362618495),
    (1.9, 2.0, 3.0, -40.0, -5.4739987558438547413, 8.8295180935803488797),
    (1.9, 2.0, 14.0, 0.0, 7.2314760978898824888, 0.0),
];

#[test]
fn matches_high_precision_reference() {
    for &(a, b, zr, zi, er, ei) in REFERENCE {
        let v = ml_eval(MlParams::new(a, b).unwrap(), Complex64::new(zr, zi)).unwrap();
        let e = Complex64::new(er, ei);
        let err = (v - e).norm() / e.norm().max(1.0);
        assert!(err < 1e-12, "E_{{{a},{b}}}({zr}+{zi}i) = {v}, expected {e}, err {err:e}");
    }
}

#[test]
fn series_and_contour_agree_on_ring() {
    let p = MlParams::new(1.5, 2.0).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..64 {
        let th = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 64.0;
        for r in [11.0, 11.5, 12.0, 12.5, 13.0] {
            let z = Complex64::from_polar(r, th);
            let a = ml_series(p, z);
            let b = ml_contour(p, z);
            worst = worst.max((a - b).norm() / a.norm().max(b.norm()));
        }
    }
    assert!(worst <= 1e-8, "{worst:e}");
}

#[test]
fn zeros_of_sine_type_function() {
    let p = MlParams::new(2.0, 2.0).unwrap();
    for k in 1..=4 {
        let target = (k as f64 * std::f64::consts::PI).powi(2);
        let z = ml_zero_refine(p, Complex64::new(target * 1.02, 0.0)).unwrap();
        assert!((z.re - target).abs() <= 1e-9 * target, "{k} {z}");
    }
}

proptest! {
    #[test]
    fn conjugate_symmetry(r in 0.0f64..40.0, th in -3.1f64..3.1, a in 1.05f64..2.0, b in 0.5f64..2.5) {
        let p = MlParams::new(a, b).unwrap();
        let z = Complex64::from_polar(r, th);
        let v = ml_eval(p, z).unwrap();
        let w = ml_eval(p, z.conj()).unwrap();
        prop_assert!((v.conj() - w).norm() <= 1e-14 * v.norm().max(1.0));
    }

    #[test]
    fn exponential_identity(r in 0.0f64..10.0, th in -std::f64::consts::PI..std::f64::consts::PI) {
        let z = Complex64::from_polar(r, th);
        let v = ml_eval(MlParams::new(1.0, 1.0).unwrap(), z).unwrap() * (-z).exp();
        prop_assert!((v - 1.0).norm() <= 1e-12, "{} {}", z, v);
    }

    #[test]
    fn refined_zero_is_fixed_point(k in 1usize..4) {
        let p = MlParams::new(2.0, 2.0).unwrap();
        let t = (k as f64 * std::f64::consts::PI).powi(2);
        let z = ml_zero_refine(p, Complex64::new(t * 0.99, 0.0)).unwrap();
        let z2 = ml_zero_refine(p, z).unwrap();
        prop_assert!((z2 - z).norm() <= 1e-12 * (1.0 + z.norm()));
    }
}

#[test]
fn derivative_matches_difference_quotient_across_crossover() {
    for (a, b) in [(4.0 / 3.0, 2.0), (5.0 / 3.0, 5.0 / 3.0)] {
        let p = MlParams::new(a, b).unwrap();
        for r in [5.0, 11.9, 12.1, 40.0] {
            let z = Complex64::new(-r, 0.3);
            let d = ml_derivative(p, z).unwrap();
            let h = 1e-5 * r;
            let fd = (ml_eval(p, z + h).unwrap() - ml_eval(p, z - h).unwrap()) / (2.0 * h);
            assert!((d - fd).norm() <= 1e-7 * d.norm().max(1e-3), "{a} {b} {r} {d} {fd}");
        }
    }
}
