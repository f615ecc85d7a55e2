use fslp_core::eig::{eigenvalues_qr, reduce_generalized};
use fslp_core::linalg::{hessenberg_reduce, hqr_eigenvalues, DMat, LuFactor};
use fslp_core::representation::{source_solve_rep, t_operator_positivity, Source};
use fslp_core::study::match_eigenvalues;
use fslp_core::{assemble, gamma_coefficients, Complex64, DerivKind, FracOrder, Mesh, Potential, ProblemSpec};
use proptest::prelude::*;

fn mesh_from(cuts: &[f64]) -> Mesh {
    let mut pts: Vec<f64> = cuts.iter().map(|c| 0.02 + 0.96 * c).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    pts.insert(0, 0.0);
    pts.push(1.0);
    Mesh::from_points(pts).unwrap()
}

fn kind(rl: bool) -> DerivKind {
    if rl {
        DerivKind::RiemannLiouville
    } else {
        DerivKind::Caputo
    }
}

fn brute_force_total(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn rec(i: usize, a: &[Complex64], b: &[Complex64], used: &mut Vec<bool>) -> f64 {
        if i == a.len() {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                best = best.min((a[i] - b[j]).norm() + rec(i + 1, a, b, used));
                used[j] = false;
            }
        }
        best
    }
    rec(0, a, b, &mut vec![false; b.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_positive(cuts in prop::collection::vec(0.0f64..1.0, 2..40), alpha in 1.001f64..1.999) {
        let mesh = mesh_from(&cuts);
        prop_assume!(mesh.m() >= 2);
        let t = gamma_coefficients(&mesh, FracOrder::new(alpha).unwrap()).unwrap();
        prop_assert!(t.gamma0 > 0.0);
        prop_assert!(t.gamma.iter().all(|g| *g > 0.0));
    }

    #[test]
    fn test_basis_dependence(cuts in prop::collection::vec(0.0f64..1.0, 1..30), alpha in 1.01f64..1.99) {
        let mesh = mesh_from(&cuts);
        let t = gamma_coefficients(&mesh, FracOrder::new(alpha).unwrap()).unwrap();
        let x1 = mesh.x(1);
        for k in 0..1000 {
            let x = (k as f64 + 0.5) / 1000.0;
            let mut v = (1.0 - x / x1).max(0.0) - t.gamma0 * (1.0 - x);
            for j in 1..=mesh.m() {
                let xj = mesh.x(j);
                v += (1.0 - xj) * (mesh.hat(j, x) - t.gamma[j - 1] * (1.0 - x));
            }
            prop_assert!(v.abs() <= 1e-12, "{x} {v}");
        }
    }

    #[test]
    fn pencil_trace_determinant_closure(m in 2usize..=12, alpha in 1.05f64..1.95, rl in any::<bool>(), q in 0usize..3) {
        let pot = Potential::from_name(["q1", "q2", "q3"][q]).unwrap();
        let pair = assemble(&ProblemSpec::new(alpha, kind(rl), pot, 1).unwrap(), &fslp_core::make_mesh(m, None).unwrap()).unwrap();
        let c = reduce_generalized(&pair.a_matrix(), &pair.m_matrix()).unwrap();
        let s = eigenvalues_qr(&c).unwrap();
        let tr: Complex64 = s.eigenvalues.iter().sum();
        prop_assert!((tr.re - c.trace()).abs() <= 1e-8 * c.frobenius());
        prop_assert!(tr.im.abs() <= 1e-8 * c.frobenius());
        let det: Complex64 = s.eigenvalues.iter().product();
        let d = LuFactor::new(&c).unwrap().determinant();
        prop_assert!((det - d).norm() <= 1e-8 * d.abs(), "{det} {d}");
        for z in &s.eigenvalues {
            prop_assert!(s.eigenvalues.iter().any(|w| (w - z.conj()).norm() <= 1e-9 * (1.0 + z.norm())));
        }
    }

    #[test]
    fn matching_is_bijection_within_greedy_bound(
        base in prop::collection::vec((0.0f64..50.0, 0.0f64..10.0), 1..=8),
        noise in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8),
        extra in prop::collection::vec((0.0f64..50.0, 0.0f64..10.0), 0..3),
        perm_seed in any::<u64>(),
    ) {
        let a: Vec<Complex64> = base.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
        let mut b: Vec<Complex64> = a.iter().zip(&noise).map(|(z, &(u, v))| z + Complex64::new(u, v) * 0.3).collect();
        b.extend(extra.iter().map(|&(x, y)| Complex64::new(x, y)));
        let n = b.len();
        for i in (1..n).rev() {
            let j = (perm_seed.rotate_left(i as u32) % (i as u64 + 1)) as usize;
            b.swap(i, j);
        }
        let mt = match match_eigenvalues(&a, &b) {
            Ok(mt) => mt,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(mt.pairs.len(), a.len());
        let mut seen = vec![false; n];
        for &(i, j) in &mt.pairs {
            prop_assert!(!seen[j]);
            seen[j] = true;
            prop_assert!(i < a.len());
        }
        let total: f64 = mt.pairs.iter().map(|&(i, j)| (a[i] - b[j]).norm()).sum();
        let optimum = brute_force_total(&a, &b);
        prop_assert!(total >= optimum - 1e-12);
        prop_assert!(total <= 2.0 * optimum + 1e-12, "{total} {optimum}");
    }

    #[test]
    fn solution_operator_is_positive(
        knots in prop::collection::vec(0.01f64..0.99, 0..6),
        vals in prop::collection::vec(0.0f64..1.0, 8),
        alpha in 1.01f64..1.99,
    ) {
        let mut k = knots.clone();
        k.push(0.0);
        k.push(1.0);
        k.sort_by(f64::total_cmp);
        k.dedup();
        let v = &vals[..k.len()];
        let f = |x: f64| {
            let i = k.partition_point(|&t| t <= x).clamp(1, k.len() - 1);
            let t = ((x - k[i - 1]) / (k[i] - k[i - 1])).clamp(0.0, 1.0);
            v[i - 1] * (1.0 - t) + v[i] * t
        };
        let src = Source { f: &f, breaks: k.clone() };
        let xs: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        prop_assert!(t_operator_positivity(FracOrder::new(alpha).unwrap(), &src, &xs) >= -1e-10);
    }

    #[test]
    fn representation_vanishes_at_endpoints(alpha in 1.01f64..2.0, rl in any::<bool>(), c in 0.0f64..3.0) {
        let f = |x: f64| c + x * x;
        let src = Source { f: &f, breaks: vec![] };
        let u = source_solve_rep(kind(rl), FracOrder::new(alpha).unwrap(), &src, &[0.0, 0.5, 1.0]);
        prop_assert_eq!(u[0], 0.0);
        prop_assert_eq!(u[2], 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn orthogonal_similarity_invariance(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let n = 100;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = DMat::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        // Q = product of three Householder reflectors
        let mut q = DMat::identity(n);
        for _ in 0..3 {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let vv: f64 = v.iter().map(|x| x * x).sum();
            let h = DMat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - 2.0 * v[i] * v[j] / vv);
            q = q.matmul(&h);
        }
        let b = q.transpose().matmul(&a).matmul(&q);
        let eig = |m: &DMat| {
            let mut h = m.clone();
            hessenberg_reduce(&mut h);
            hqr_eigenvalues(&mut h).unwrap()
        };
        let (ea, eb) = (eig(&a), eig(&b));
        for z in &ea {
            let d = eb.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-9, "{z} {d}");
        }
    }
}
