use laplaceforge::discrete_ilt::{build_lt_matrix, uniform_grid, Aggregation, EnsembleResult, KimeSampleSet, QuantizedSolution};
use laplaceforge::forward_lt::{lt_piecewise_poly, lt_sin_window, PiecewisePoly, TimeSignal, DOMAIN_END};
use laplaceforge::io::{read_sample_set, read_signal, write_sample_set, write_signal};
use laplaceforge::numerics::{pseudo_inverse_solve, svd, vector_norm};
use laplaceforge::partitions::{gen_partition, Partition, PartitionScheme};
use laplaceforge::rmt_lab::{composite_bound_check, diff_matrix_svd, random_gaussian_matrix};
use laplaceforge::{Complex64, ComplexMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn knots_from(cuts: &[f64]) -> Vec<f64> {
    let mut k: Vec<f64> = cuts.iter().map(|c| c * DOMAIN_END).collect();
    k.push(0.0);
    k.push(DOMAIN_END);
    k.sort_by(f64::total_cmp);
    k.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    *k.last_mut().unwrap() = DOMAIN_END;
    k
}

fn z_strategy() -> impl Strategy<Value = Complex64> {
    (0.2f64..3.0, -20.0f64..20.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn finite_f64() -> impl Strategy<Value = f64> {
    any::<f64>().prop_filter("finite", |v| v.is_finite())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivative_identity(
        cuts in prop::collection::vec(0.01f64..0.99, 0..6),
        c in prop::collection::vec(-1.0f64..1.0, 2..=5),
        z in z_strategy(),
    ) {
        // one global polynomial split at random knots is continuous
        let knots = knots_from(&cuts);
        let pieces = knots.len() - 1;
        let p = PiecewisePoly::new(knots, vec![c; pieces]).unwrap();
        let dp = p.derivative();
        let lhs = lt_piecewise_poly(&dp, z).unwrap();
        let f = lt_piecewise_poly(&p, z).unwrap();
        let rhs = z * f - p.eval(0.0) + (-DOMAIN_END * z).exp() * p.eval(DOMAIN_END);
        let scale = (z * f).norm() + p.eval(0.0).abs() + p.eval(DOMAIN_END).abs() + lhs.norm();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn transform_is_linear(
        cuts in prop::collection::vec(0.01f64..0.99, 0..8),
        seed in any::<u64>(),
        alpha in -3.0f64..3.0,
        beta in -3.0f64..3.0,
        z in z_strategy(),
    ) {
        let knots = knots_from(&cuts);
        let pieces = knots.len() - 1;
        let mut r = rng(seed);
        let mut coeffs = || -> Vec<Vec<f64>> {
            (0..pieces).map(|_| (0..4).map(|_| rand::Rng::random_range(&mut r, -1.0..1.0)).collect()).collect()
        };
        let p = PiecewisePoly::new(knots.clone(), coeffs()).unwrap();
        let q = PiecewisePoly::new(knots, coeffs()).unwrap();
        let combo = p.scale_add(alpha, &q, beta).unwrap();
        let fp = lt_piecewise_poly(&p, z).unwrap();
        let fq = lt_piecewise_poly(&q, z).unwrap();
        let lhs = lt_piecewise_poly(&combo, z).unwrap();
        let scale = alpha.abs() * fp.norm() + beta.abs() * fq.norm();
        prop_assert!((lhs - (alpha * fp + beta * fq)).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn sample_set_csv_is_bitwise(rows in prop::collection::vec((finite_f64(), finite_f64(), finite_f64(), finite_f64()), 2..40)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let z = rows.iter().map(|r| Complex64::new(r.0.abs(), r.1)).collect();
        let b = rows.iter().map(|r| Complex64::new(r.2, r.3)).collect();
        let set = KimeSampleSet::new(z, b).unwrap();
        write_sample_set(&path, &set).unwrap();
        let back = read_sample_set(&path).unwrap();
        for (a, b) in set.values().iter().zip(back.values()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        for (a, b) in set.points().iter().zip(back.points()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn signal_csv_is_bitwise(steps in prop::collection::vec(1e-9f64..10.0, 2..40), ys in prop::collection::vec(finite_f64(), 40)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sig.csv");
        let t: Vec<f64> = steps.iter().scan(0.0, |acc, s| { *acc += s; Some(*acc) }).collect();
        let y = ys[..t.len()].to_vec();
        let sig = TimeSignal::new(t, y).unwrap();
        write_signal(&path, &sig).unwrap();
        let back = read_signal(&path).unwrap();
        for (a, b) in sig.values().iter().chain(sig.times()).zip(back.values().iter().chain(back.times())) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn partitions_are_valid(idx in 0usize..5, cells in 1usize..80, seed in any::<u64>()) {
        let scheme = PartitionScheme::ALL[idx];
        let p = gen_partition(scheme, cells, &mut rng(seed)).unwrap();
        let bp = p.breakpoints();
        prop_assert_eq!(p.cells(), cells);
        prop_assert_eq!(bp[0], 0.0);
        prop_assert_eq!(*bp.last().unwrap(), DOMAIN_END);
        prop_assert!(bp.windows(2).all(|w| w[0] < w[1]));
        if scheme.is_normalized() {
            prop_assert!((p.lengths().iter().sum::<f64>() - DOMAIN_END).abs() <= 1e-12);
        }
    }

    #[test]
    fn svd_reconstructs_and_bounds_norms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_gaussian_matrix(8, 5, &mut r);
        let dec = svd(&a).unwrap();
        prop_assert!(dec.reconstruct().distance(&a) <= 1e-10 * a.frobenius_norm());
        prop_assert!(dec.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let smin = dec.sigma_min();
        for _ in 0..1000 {
            let x: Vec<Complex64> = random_gaussian_matrix(5, 1, &mut r).column(0);
            let nx = vector_norm(&x);
            let ax = a.mul_vec(&x).unwrap();
            prop_assert!(vector_norm(&ax) / nx >= smin * (1.0 - 1e-12));
        }
    }

    #[test]
    fn pinv_solves_square_systems(seed in any::<u64>(), n in 1usize..10) {
        let mut r = rng(seed);
        let a = random_gaussian_matrix(n, n, &mut r);
        let x_true = random_gaussian_matrix(n, 1, &mut r).column(0);
        let b = a.mul_vec(&x_true).unwrap();
        let dec = svd(&a).unwrap();
        prop_assume!(dec.sigma_min() > 1e-6 * dec.sigma_max());
        let sol = pseudo_inverse_solve(&a, &b, 1e-14).unwrap();
        let err: Vec<Complex64> = sol.x.iter().zip(&x_true).map(|(p, q)| p - q).collect();
        let cond = dec.sigma_max() / dec.sigma_min();
        prop_assert!(vector_norm(&err) <= 1e-12 * cond * vector_norm(&x_true));
        let resid: Vec<Complex64> = a.mul_vec(&sol.x).unwrap().iter().zip(&b).map(|(p, q)| p - q).collect();
        prop_assert!(vector_norm(&resid) <= 1e-10 * vector_norm(&b));
    }

    #[test]
    fn aggregation_ignores_order(seed in any::<u64>(), attempts in 1usize..12, cells in 1usize..10) {
        let mut r = rng(seed);
        let sols: Vec<QuantizedSolution> = (0..attempts)
            .map(|k| {
                let partition = gen_partition(PartitionScheme::NormalizedUniform, cells, &mut r).unwrap();
                let u = (0..cells).map(|_| Complex64::new(rand::Rng::random_range(&mut r, -2.0..2.0), 0.0)).collect();
                QuantizedSolution {
                    partition,
                    u,
                    residual_norm: rand::Rng::random_range(&mut r, 0.0..1.0),
                    sigma_min: 1.0,
                    sigma_max: 2.0,
                    rank: if k == 0 && attempts > 2 { 0 } else { cells },
                    rank_deficient: false,
                }
            })
            .collect();
        let mut shuffled = sols.clone();
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut r);
        let grid = uniform_grid(33);
        let a = EnsembleResult::from_attempts(grid.clone(), &sols, Aggregation::Median);
        let b = EnsembleResult::from_attempts(grid, &shuffled, Aggregation::Median);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(&a.median, &b.median);
            prop_assert_eq!(&a.q25, &b.q25);
            prop_assert_eq!(&a.q75, &b.q75);
            for (x, y) in a.mean.iter().zip(&b.mean).chain(a.weighted_mean.iter().zip(&b.weighted_mean)) {
                prop_assert!((x - y).abs() <= 1e-14 * (1.0 + x.abs()));
            }
        }
    }

    #[test]
    fn difference_matrix_factors_orthogonal(n in 2usize..48) {
        let d = diff_matrix_svd(n).unwrap();
        let f = &d.factors;
        let k = f.singular_values.len();
        let utu = f.u.adjoint().matmul(&f.u).unwrap();
        let vvt = f.v.matmul(&f.v.adjoint()).unwrap();
        prop_assert!(utu.distance(&ComplexMatrix::identity(k)) <= 1e-12 * (k as f64));
        prop_assert!(vvt.distance(&ComplexMatrix::identity(f.v.rows())) <= 1e-12 * (k as f64));
        prop_assert!(d.reconstruction_error() <= 1e-12 * d.d.frobenius_norm());
    }

    #[test]
    fn composite_bound_holds(seed in any::<u64>(), n in 2usize..12, extra in 0usize..6) {
        let c = random_gaussian_matrix(n + extra, n, &mut rng(seed));
        let check = composite_bound_check(&c, n).unwrap();
        prop_assert!(check.holds, "{} < {}", check.lhs, check.rhs);
    }

    #[test]
    fn quantization_error_within_mesh_bound(seed in any::<u64>(), cells in 2usize..40, z in z_strategy()) {
        // piecewise-constant sin sampled at cell midpoints
        let p = gen_partition(PartitionScheme::NormalizedUniform, cells, &mut rng(seed)).unwrap();
        let bp = p.breakpoints();
        let u: Vec<Complex64> = bp.windows(2).map(|w| Complex64::new((0.5 * (w[0] + w[1])).sin(), 0.0)).collect();
        let a = build_lt_matrix(&[z], &p).unwrap();
        let au = a.mul_vec(&u).unwrap()[0];
        let exact = lt_sin_window(1.0, z).unwrap();
        let mesh = p.lengths().iter().cloned().fold(0.0, f64::max);
        let weight = (1.0 - (-DOMAIN_END * z.re).exp()) / z.re;
        prop_assert!((exact - au).norm() <= 0.5 * mesh * weight * (1.0 + 1e-9));
    }
}

#[test]
fn partitions_fuzz_many_draws() {
    let mut r = rng(7);
    for scheme in PartitionScheme::ALL {
        for i in 0..100_000usize {
            let cells = 1 + i % 40;
            let p: Partition = gen_partition(scheme, cells, &mut r).unwrap();
            let bp = p.breakpoints();
            assert!(bp[0] == 0.0 && *bp.last().unwrap() == DOMAIN_END, "{scheme}");
            assert!(bp.windows(2).all(|w| w[0] < w[1]), "{scheme}: {bp:?}");
        }
    }
}

