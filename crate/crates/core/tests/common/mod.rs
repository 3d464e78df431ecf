//! Seeded random instance generators shared by the integration suites.

#![allow(dead_code)]

use kdcut::model::{MilpInstance, Polyhedron};
use kdcut::rational::{int, RatVector};
use kdcut::simplex::{solve_lp, LpResult};
use kdcut::solver::check_bounded;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entries(rng: &mut impl Rng, len: usize, range: i64) -> RatVector {
    (0..len)
        .map(|_| int(rng.gen_range(-range..=range)))
        .collect()
}

/// Polyhedron with `p <= 3`, `q <= 3`, `m <= 6` and entries in `[-5, 5]`.
pub fn random_projection_instance(rng: &mut impl Rng) -> Polyhedron {
    let p = rng.gen_range(1..=3);
    let q = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=6);
    let mut poly = Polyhedron::new(p, q);
    for _ in 0..m {
        poly.push_row(
            entries(rng, p, 5),
            entries(rng, q, 5),
            int(rng.gen_range(-5..=5)),
        )
        .unwrap();
    }
    poly
}

/// Bounded instance with a nonempty relaxation: `p <= 3`, `q <= 2`,
/// `m <= 6`, entries in `[-4, 4]`. Draws until both conditions hold.
pub fn random_bounded_milp(rng: &mut impl Rng) -> MilpInstance {
    loop {
        let p = rng.gen_range(1..=3);
        let q = rng.gen_range(0..=2);
        let m = rng.gen_range(p + q + 1..=6);
        let mut inst = MilpInstance::new(p, q, entries(rng, p, 4), entries(rng, q, 4)).unwrap();
        for _ in 0..m {
            inst.push_row(
                entries(rng, p, 4),
                entries(rng, q, 4),
                int(rng.gen_range(-4..=4)),
            )
            .unwrap();
        }
        let zero_c = vec![int(0); p];
        let zero_h = vec![int(0); q];
        if matches!(
            solve_lp(&inst.polyhedron(), &zero_c, &zero_h),
            LpResult::Infeasible
        ) {
            continue;
        }
        if check_bounded(&inst) {
            return inst;
        }
    }
}
