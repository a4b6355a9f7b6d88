use coeffbounds::num_complex::Complex64;
use coeffbounds::prokhorov::{self, body_contains, body_sample, psi, MuNu, Region};
use coeffbounds::Series;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

const ORDER: usize = 6;

fn point_in_disk<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

/// Taylor coefficients of z * B(z), B a Blaschke product of the given zeros
/// times a unimodular constant.
fn inner_schwarz(zeros: &[Complex64], theta: f64) -> Series {
    let one = Complex64::new(1.0, 0.0);
    let mut w = Series::monomial(ORDER, 1, Complex64::from_polar(1.0, theta));
    for &a in zeros {
        let num = Series::new(ORDER, [-a, one]);
        let den = Series::new(ORDER, [one, -a.conj()]).pow_real(-1.0).unwrap();
        w = w.mul(&num.mul(&den).unwrap()).unwrap();
    }
    w
}

#[test]
fn inner_functions_lie_in_the_body() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..10_000 {
        let degree = trial % 3;
        let zeros: Vec<Complex64> = (0..degree).map(|_| point_in_disk(&mut rng)).collect();
        let w = inner_schwarz(&zeros, rng.gen_range(0.0..TAU));
        let (c1, c2, c3) = (w.coeff(1), w.coeff(2), w.coeff(3));
        assert!(body_contains(c1, c2, c3), "zeros {zeros:?}: {c1} {c2} {c3}");
    }
}

#[test]
fn inner_functions_respect_phi() {
    // Psi of a genuine Schwarz function never exceeds Phi.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let points = [MuNu::new(0.0, 0.5), MuNu::new(12.0, 51.0), MuNu::new(2.0, 1.0), MuNu::new(-1.0, 3.0)];
    for _ in 0..2000 {
        let zeros: Vec<Complex64> = (0..2).map(|_| point_in_disk(&mut rng)).collect();
        let w = inner_schwarz(&zeros, rng.gen_range(0.0..TAU));
        let t = prokhorov::SchwarzTriple::new(w.coeff(1), w.coeff(2), w.coeff(3)).unwrap();
        for mn in points {
            let phi = prokhorov::phi(mn).unwrap();
            assert!(psi(mn, &t) <= phi + 1e-9);
        }
    }
}

#[test]
fn oracle_is_sharp_at_large_budget() {
    for region in Region::COVERED {
        let count = if region == Region::Point21 { 1 } else { 20 };
        for (k, mn) in coeffbounds::harness::region_samples(region, count, 5).into_iter().enumerate() {
            let phi = prokhorov::phi(mn).unwrap();
            let found = prokhorov::phi_oracle(mn, 1_000_000, k as u64);
            assert!(found >= phi - 5e-3, "{region} {mn:?}: {found} < {phi}");
            assert!(found <= phi + 1e-6, "{region} {mn:?}: {found} > {phi}");
        }
    }
}

fn chart() -> impl Strategy<Value = [Complex64; 3]> {
    let z = (0.0..=1.0f64, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t));
    [z.clone(), z.clone(), z]
}

proptest! {
    #[test]
    fn chart_samples_are_admissible(z in chart()) {
        let t = body_sample(z[0], z[1], z[2]).unwrap();
        prop_assert!(body_contains(t.c1(), t.c2(), t.c3()));
    }

    #[test]
    fn chart_rejects_outside_disk(r in 1.0001..3.0f64, t in 0.0..TAU, slot in 0usize..3) {
        let mut z = [Complex64::new(0.0, 0.0); 3];
        z[slot] = Complex64::from_polar(r, t);
        prop_assert!(body_sample(z[0], z[1], z[2]).is_err());
    }
}
