//! Ensemble checks for the analysis toolkit: the root-count bound for the
//! disk family, the Lipschitz bracket of the global condition number, and
//! the Obreshkoff sandwich at subdivision nodes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use rootiso::analysis::oracle::numeric_roots;
use rootiso::analysis::{
    cond::cond_lower_on_grid, global_cond_certified, obreshkoff_region, rho_count,
    rho_upper_bound,
};
use rootiso::descartes::isolate_in_unit_interval;
use rootiso::poly::{is_squarefree, IntPolynomial};
use rootiso::randmodels::{sample_nth, RandomModelConfig};

fn random_poly(rng: &mut ChaCha12Rng, max_d: usize, tau: u32, seed: u64) -> IntPolynomial {
    let d = rng.gen_range(2..=max_d);
    let cfg = RandomModelConfig::uniform(d, tau, seed);
    sample_nth(&cfg, rng.gen::<u32>() as u64).unwrap()
}

#[test]
fn rho_count_is_below_deterministic_bound() {
    let mut rng = ChaCha12Rng::seed_from_u64(555);
    let mut checked = 0;
    for trial in 0..60 {
        let f = random_poly(&mut rng, 24, 12, 40_000 + trial);
        if f.degree().map_or(true, |d| d < 2) || !is_squarefree(&f) {
            continue;
        }
        let bound = rho_upper_bound(&f).unwrap();
        let set = numeric_roots(&f, 128).unwrap();
        let rho = rho_count(&f, &set);
        assert!(rho.is_exact(), "ambiguous rho for {f}");
        assert!(
            (rho.definite as f64) <= bound + 1e-9,
            "rho {} > bound {bound} for {f}",
            rho.definite
        );
        checked += 1;
    }
    assert!(checked >= 40);
}

#[test]
fn lipschitz_bracket_contains_finer_grid_max() {
    let mut rng = ChaCha12Rng::seed_from_u64(808);
    let mut checked = 0;
    for trial in 0..25 {
        let f = random_poly(&mut rng, 12, 8, 50_000 + trial);
        if f.degree().map_or(true, |d| d < 2) || !is_squarefree(&f) {
            continue;
        }
        let est = global_cond_certified(&f, 0.25).unwrap();
        if !est.converged || est.infinite {
            continue;
        }
        // sampling finer grids never decreases the lower bound, and a much
        // finer brute-force max stays inside the bracket
        let mut last = 0.0f64;
        for k in [5u32, 7, 9, 11] {
            let lo = cond_lower_on_grid(&f, k).unwrap();
            assert!(lo >= last * (1.0 - 1e-12));
            last = lo;
        }
        let k_final = (-est.grid_step.log2()).round().max(0.0) as u32;
        let brute = cond_lower_on_grid(&f, k_final + 4).unwrap();
        assert!(brute >= est.lower * (1.0 - 1e-9), "brute {brute} < lower {}", est.lower);
        assert!(brute <= est.upper * (1.0 + 1e-9), "brute {brute} > upper {}", est.upper);
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn obreshkoff_sandwich_on_subdivision_nodes() {
    // lens_d count <= var(f, J) <= area_d count at every node, using
    // certified roots; nodes where a root sits within its error radius of
    // a region boundary are skipped (counted as uncertain).
    let mut rng = ChaCha12Rng::seed_from_u64(909);
    let mut nodes_checked = 0;
    let mut nodes_uncertain = 0;
    for trial in 0..25 {
        let f = random_poly(&mut rng, 16, 10, 60_000 + trial);
        if f.degree().map_or(true, |d| d < 2) || !is_squarefree(&f) {
            continue;
        }
        let d = f.degree().unwrap();
        let set = numeric_roots(&f, 128).unwrap();
        let roots: Vec<(Complex64, f64)> =
            (0..set.len()).map(|i| (set.approx(i), set.radius_f64(i))).collect();
        let (_, stats) = isolate_in_unit_interval(&f).unwrap();
        for node in &stats.nodes {
            let region = obreshkoff_region(&node.interval, d);
            let wid = node.interval.width().to_f64();
            let mut lens = 0usize;
            let mut area = 0usize;
            let mut uncertain = false;
            for (z, u) in &roots {
                let tol = u + 1e-12 * (1.0 + wid);
                let lm = region.lens_margin(*z);
                let am = region.area_margin(*z);
                if lm.abs() <= tol || am.abs() <= tol {
                    uncertain = true;
                    break;
                }
                if lm > 0.0 {
                    lens += 1;
                }
                if am > 0.0 {
                    area += 1;
                }
            }
            if uncertain {
                nodes_uncertain += 1;
                continue;
            }
            assert!(
                lens <= node.var && node.var <= area,
                "sandwich {lens} <= {} <= {area} failed at {} for {f}",
                node.var,
                node.interval
            );
            nodes_checked += 1;
        }
    }
    assert!(nodes_checked >= 30, "checked {nodes_checked}");
    // uncertainty must stay rare
    assert!(nodes_uncertain * 20 <= nodes_checked + nodes_uncertain);
}
