mod common;

use num_traits::{One, Zero};

use common::{
    bst_expected_height_by_permutations, bst_height_counts, enumerated_height_cdf,
    enumerated_height_pmf, within_sigma,
};
use ruler_break_core::exact::{
    bst_expected_height, expected_height, height_cdf, record_count_pgf, tau_mean, tau_pgf, tau_pmf,
    tau_variance, HarmonicSums, HeightTable,
};
use ruler_break_core::poly::Polynomial;
use ruler_break_core::simulator::{simulate_break, trial_rng};
use ruler_break_core::trees::permutation_to_bst;
use ruler_break_core::{Rational, Scalar};

fn q(n: u64, d: u64) -> Rational {
    Rational::from_ratio(n, d)
}

#[test]
fn permutation_oracle_matches_direct_trees() {
    use itertools::Itertools;
    for m in 1..=6usize {
        let mut direct = vec![0u64; m];
        for perm in (1..=m as i64).permutations(m) {
            direct[permutation_to_bst(&perm).unwrap().height() as usize] += 1;
        }
        assert_eq!(bst_height_counts(m), direct, "m={m}");
    }
    // 3! orders: four paths of height 2, two balanced of height 1
    assert_eq!(bst_height_counts(3), vec![0, 2, 4]);
    assert_eq!(bst_expected_height_by_permutations(3), q(5, 3));
}

#[test]
fn recurrence_matches_enumeration() {
    let table = HeightTable::<Rational>::new(9).unwrap();
    for n in 1..=9 {
        let cdf = table.cdf(n).unwrap();
        assert_eq!(cdf.values(), enumerated_height_cdf(n), "n={n}");
    }
    let five = height_cdf::<Rational>(5).unwrap();
    assert_eq!(five.pmf_values(), enumerated_height_pmf(5));
}

#[test]
fn expected_height_matches_bst_identity() {
    // a(n) = b(n-1) + 1 with b from all permutations
    for n in 2..=10 {
        let a = expected_height::<Rational>(n).unwrap();
        let b = bst_expected_height_by_permutations(n - 1);
        assert_eq!(a, b.clone() + Rational::one(), "n={n}");
        assert_eq!(bst_expected_height::<Rational>(n - 1).unwrap(), b);
    }
    assert_eq!(expected_height::<Rational>(4).unwrap(), q(8, 3));
}

#[test]
fn generating_function_recurrence() {
    // f_{1,n} = 1/(n-1) * sum_{k=1}^{n-1} x f_{1,k}
    let firsts: Vec<Polynomial<Rational>> = (1..=50)
        .map(|n| tau_pgf::<Rational>(1, n).unwrap().poly().clone())
        .collect();
    assert_eq!(firsts[0], Polynomial::one());
    let x = Polynomial::<Rational>::x();
    for n in 2..=50usize {
        let sum = firsts[..n - 1]
            .iter()
            .fold(Polynomial::constant(Rational::zero()), |acc, f| {
                acc.add(&(&x * f))
            });
        let rhs = sum.scale(&q(1, n as u64 - 1));
        assert_eq!(firsts[n - 1], rhs, "n={n}");
    }
}

#[test]
fn factorization_into_two_record_counts() {
    for n in 1..=30usize {
        for j in 1..=n {
            let direct = tau_pgf::<Rational>(j, n).unwrap();
            let split = record_count_pgf::<Rational>(j - 1).convolve(&record_count_pgf(n - j));
            assert_eq!(direct.poly(), &split, "j={j} n={n}");
            // f_{1,j} * f_{1,n-j+1} in the first-stick indexing
            let first = |m| tau_pgf::<Rational>(1, m).unwrap().poly().clone();
            assert_eq!(direct.poly(), &first(j).convolve(&first(n - j + 1)));
        }
    }
}

#[test]
fn symmetry_in_stick_index() {
    for n in 1..=50usize {
        for j in 1..=n {
            assert_eq!(tau_pmf(j, n).unwrap(), tau_pmf(n + 1 - j, n).unwrap());
        }
    }
}

#[test]
fn harmonic_moments_match_pmf_moments() {
    for n in 1..=50usize {
        let h = HarmonicSums::<Rational>::up_to(n);
        for j in 1..=n {
            let pgf = tau_pgf::<Rational>(j, n).unwrap();
            assert!(pgf.pmf().iter().all(|c| *c >= Rational::zero()));
            assert!(pgf.poly().eval(&Rational::one()).is_one());
            assert_eq!(pgf.mean(), h.tau_mean(j, n), "j={j} n={n}");
            assert_eq!(pgf.variance(), h.tau_variance(j, n), "j={j} n={n}");
        }
    }
    assert_eq!(tau_mean(3, 5).unwrap(), q(3, 1));
    assert_eq!(tau_variance(1, 3).unwrap(), q(1, 4));
}

#[test]
fn pgf_at_real_points() {
    // f_{j,n}(x) equals the product form at arbitrary x
    for (j, n) in [(1, 10), (4, 10), (17, 40)] {
        let pgf = tau_pgf::<f64>(j, n).unwrap();
        for x in [0.5, 2.0, 3.5] {
            let product: f64 = (1..j)
                .chain(1..=n - j)
                .map(|l| 1.0 + (x - 1.0) / l as f64)
                .product();
            assert!((pgf.eval_f64(x) - product).abs() <= 1e-12 * product.abs());
        }
    }
}

#[test]
fn max_law_against_joint_simulation() {
    // Pr{max_j tau_j <= h} from simulation with every stick tracked
    let n = 30;
    let trials = 100_000u64;
    let all: Vec<usize> = (1..=n).collect();
    let mut counts = vec![0u64; n];
    for t in 0..trials {
        let throws = simulate_break(n, &mut trial_rng(0x5eed_0030, t), &all);
        let max_tau = throws.isolation.iter().map(|&(_, t)| t).max().unwrap();
        assert_eq!(max_tau, throws.height);
        counts[throws.height as usize] += 1;
    }
    let cdf = height_cdf::<f64>(n).unwrap();
    let mut below = 0;
    for (h, count) in counts.iter().enumerate() {
        below += count;
        let p = cdf.cdf(h);
        assert!(within_sigma(below, trials, p, 3.0), "h={h}: {below} vs {p}");
    }
}

#[test]
fn float_table_up_to_two_thousand() {
    let table = HeightTable::<f64>::new(2000).unwrap();
    let exact = HeightTable::<Rational>::new(64).unwrap();
    for n in 1..=64 {
        let a = exact.expected_height(n).unwrap().to_f64();
        let b = table.expected_height(n).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.max(1.0), "n={n}");
    }
    let mut prev = 0.0;
    for n in 1..=2000 {
        let a = table.expected_height(n).unwrap();
        assert!(a >= prev, "a(n) should not decrease at n={n}");
        prev = a;
    }
}
