use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::Scalar;

use super::{CoeffMode, RingTerm};

/// Random term over `X1..Xn` with at most `size` nodes (the largest odd count
/// not exceeding `size`). Deterministic in `seed`.
pub fn random_ring_term(size: usize, n_vars: usize, seed: u64, mode: CoeffMode) -> RingTerm {
    assert!(size >= 1, "size must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen(&mut rng, size.div_ceil(2), n_vars, mode)
}

fn gen(rng: &mut ChaCha8Rng, leaves: usize, n_vars: usize, mode: CoeffMode) -> RingTerm {
    if leaves == 1 {
        return leaf(rng, n_vars, mode);
    }
    let left = rng.gen_range(1..leaves);
    let a = gen(rng, left, n_vars, mode);
    let b = gen(rng, leaves - left, n_vars, mode);
    match rng.gen_range(0..3) {
        0 => RingTerm::add(a, b),
        1 => RingTerm::sub(a, b),
        _ => RingTerm::mul(a, b),
    }
}

fn leaf(rng: &mut ChaCha8Rng, n_vars: usize, mode: CoeffMode) -> RingTerm {
    if n_vars > 0 && rng.gen_ratio(2, 3) {
        return RingTerm::var(format!("X{}", rng.gen_range(1..=n_vars)));
    }
    match mode {
        CoeffMode::Pm1 => RingTerm::int(rng.gen_range(-1..=1)),
        CoeffMode::Rational => {
            let q = BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
            RingTerm::Const(Scalar::from(q))
        }
    }
}
