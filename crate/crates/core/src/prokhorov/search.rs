//! Global maximization of a functional over the coefficient body.
//!
//! Works in chart coordinates `(r1, t1, r2, t2, r3, t3)`, `z_k = r_k e^{i t_k}`:
//! a full lattice (moduli including 0 and 1, phases with a seeded offset),
//! then seeded random draws, then coordinate pattern search from the best
//! few candidates. Every stage is an indexed map with an ordered reduction,
//! so the result depends only on `(budget, seed)`.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::body::{random_chart_point, SchwarzTriple};
use crate::par::{chunk_ranges, Mode};

/// Smallest budget accepted; smaller requests are raised to it.
pub const MIN_BUDGET: usize = 10_000;

const CANDIDATES: usize = 8;
const CHUNKS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchResult {
    pub value: f64,
    pub zeta: [Complex64; 3],
    pub triple: SchwarzTriple,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct BodySearch {
    budget: usize,
    seed: u64,
    mode: Mode,
}

type Coords = [f64; 6];

#[derive(Clone, Copy)]
struct Scored {
    value: f64,
    key: u64,
    x: Coords,
}

fn better(a: &Scored, b: &Scored) -> Ordering {
    // descending value, then ascending key; NaN sorts last
    let va = if a.value.is_nan() { f64::NEG_INFINITY } else { a.value };
    let vb = if b.value.is_nan() { f64::NEG_INFINITY } else { b.value };
    vb.total_cmp(&va).then(a.key.cmp(&b.key))
}

fn keep_best(mut v: Vec<Scored>, k: usize) -> Vec<Scored> {
    v.sort_by(better);
    v.truncate(k);
    v
}

fn to_zeta(x: &Coords) -> [Complex64; 3] {
    [
        Complex64::from_polar(x[0], x[1]),
        Complex64::from_polar(x[2], x[3]),
        Complex64::from_polar(x[4], x[5]),
    ]
}

fn from_zeta(z: &[Complex64; 3]) -> Coords {
    let (r1, t1) = z[0].to_polar();
    let (r2, t2) = z[1].to_polar();
    let (r3, t3) = z[2].to_polar();
    [r1, t1, r2, t2, r3, t3]
}

impl BodySearch {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            budget: budget.max(MIN_BUDGET),
            seed,
            mode: Mode::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Points per lattice axis: the largest `m` with `m^6 <= budget / 2`.
    fn lattice_side(&self) -> usize {
        let half = self.budget / 2;
        let mut m = 2;
        while (m + 1usize).pow(6) <= half {
            m += 1;
        }
        m
    }

    pub fn maximize<F>(&self, objective: F) -> SearchResult
    where
        F: Fn(&SchwarzTriple) -> f64 + Sync + Send,
    {
        let eval = |x: &Coords| objective(&SchwarzTriple::from_chart(&to_zeta(x)));
        let m = self.lattice_side();
        let lattice_size = m.pow(6);
        let random_size = self.budget / 4;
        let refine_budget = self.budget - lattice_size - random_size;

        let mut offset_rng = ChaCha8Rng::seed_from_u64(self.seed);
        let dphase = TAU / m as f64;
        let offsets: [f64; 3] = std::array::from_fn(|_| offset_rng.gen_range(0.0..dphase));
        let radial = |k: usize| k as f64 / (m - 1) as f64;

        let lattice_point = |idx: usize| -> Coords {
            let mut rest = idx;
            let mut digit = || {
                let d = rest % m;
                rest /= m;
                d
            };
            let mut x = [0.0; 6];
            for k in 0..3 {
                x[2 * k] = radial(digit());
                x[2 * k + 1] = offsets[k] + dphase * digit() as f64;
            }
            x
        };

        let ranges = chunk_ranges(lattice_size, CHUNKS);
        let lattice_best = self.mode.map(ranges.len(), |c| {
            let scored = ranges[c]
                .clone()
                .map(|i| {
                    let x = lattice_point(i);
                    Scored {
                        value: eval(&x),
                        key: i as u64,
                        x,
                    }
                })
                .collect();
            keep_best(scored, CANDIDATES)
        });

        let ranges = chunk_ranges(random_size, CHUNKS);
        let seed = self.seed;
        let random_best = self.mode.map(ranges.len(), |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64 + 1);
            let scored = ranges[c]
                .clone()
                .map(|i| {
                    let x = from_zeta(&random_chart_point(&mut rng));
                    Scored {
                        value: eval(&x),
                        key: (lattice_size + i) as u64,
                        x,
                    }
                })
                .collect();
            keep_best(scored, CANDIDATES)
        });

        let pool: Vec<Scored> = lattice_best
            .into_iter()
            .chain(random_best)
            .flatten()
            .collect();
        let starts = keep_best(pool, CANDIDATES);

        let per_start = refine_budget / starts.len().max(1);
        let step0 = [1.0 / (m - 1) as f64, dphase];
        let refined = self
            .mode
            .map(starts.len(), |s| refine(&eval, starts[s], per_start, step0));

        let used: usize = refined.iter().map(|(_, n)| n).sum();
        let best = refined
            .into_iter()
            .map(|(s, _)| s)
            .min_by(better)
            .expect("at least one start");
        let zeta = to_zeta(&best.x);
        SearchResult {
            value: best.value,
            zeta,
            triple: SchwarzTriple::from_chart(&zeta),
            evaluations: lattice_size + random_size + used,
        }
    }
}

/// Coordinate pattern search with step halving; moduli stay in `[0, 1]`.
fn refine<F>(eval: &F, start: Scored, budget: usize, step0: [f64; 2]) -> (Scored, usize)
where
    F: Fn(&Coords) -> f64,
{
    let mut best = start;
    let mut steps: Coords = std::array::from_fn(|d| step0[d % 2]);
    let mut used = 0;
    while used + 2 <= budget && steps.iter().any(|&s| s > 1e-12) {
        let mut improved = false;
        for d in 0..6 {
            for sign in [1.0, -1.0] {
                if used >= budget {
                    break;
                }
                let mut x = best.x;
                x[d] += sign * steps[d];
                if d % 2 == 0 {
                    x[d] = x[d].clamp(0.0, 1.0);
                }
                used += 1;
                let v = eval(&x);
                if v > best.value {
                    best = Scored {
                        value: v,
                        key: best.key,
                        x,
                    };
                    improved = true;
                }
            }
        }
        if !improved {
            for s in &mut steps {
                *s *= 0.5;
            }
        }
    }
    (best, used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prokhorov::body_contains;

    #[test]
    fn lattice_side_fits_budget() {
        let s = BodySearch::new(100_000, 0);
        assert_eq!(s.lattice_side(), 6);
        assert!(s.lattice_side().pow(6) <= 50_000);
        assert_eq!(BodySearch::new(10, 0).budget(), MIN_BUDGET);
    }

    #[test]
    fn finds_smooth_interior_maximum() {
        // maximum of -|c1 - 0.3|^2 - |c2 - 0.2i|^2 is 0 inside the body
        let target2 = Complex64::new(0.0, 0.2);
        let r = BodySearch::new(40_000, 3).maximize(|t| {
            -(t.c1() - 0.3).norm_sqr() - (t.c2() - target2).norm_sqr()
        });
        assert!(r.value > -1e-8, "{}", r.value);
        assert!(body_contains(r.triple.c1(), r.triple.c2(), r.triple.c3()));
        assert!(r.evaluations <= 40_000);
    }

    #[test]
    fn deterministic_and_mode_independent() {
        let f = |t: &SchwarzTriple| (t.c3() + 1.3 * t.c1() * t.c2() - 0.4 * t.c1().powi(3)).norm();
        let a = BodySearch::new(20_000, 11).with_mode(Mode::Sequential).maximize(f);
        let b = BodySearch::new(20_000, 11).with_mode(Mode::Parallel).maximize(f);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.zeta, b.zeta);
    }
}
