//! Deterministic stream derivation: every sampling task draws from a
//! counter-based ChaCha stream addressed by `(master seed, purpose, index)`,
//! so ensemble results do not depend on scheduling order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags partition the stream space between subsystems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    SubordinatorJumps,
    NoiseAtoms,
    NoiseDrift,
    InitialCondition,
    Design,
    Probe,
    Validation,
}

impl Purpose {
    fn tag(self) -> u64 {
        match self {
            Purpose::SubordinatorJumps => 0x01,
            Purpose::NoiseAtoms => 0x02,
            Purpose::NoiseDrift => 0x03,
            Purpose::InitialCondition => 0x04,
            Purpose::Design => 0x05,
            Purpose::Probe => 0x06,
            Purpose::Validation => 0x07,
        }
    }
}

/// Independent ChaCha stream for `(seed, purpose, index)`.
///
/// ChaCha exposes 2^64 independent streams per key; the purpose tag occupies
/// the high byte and the index the remaining bits, so distinct tasks never
/// collide.
pub fn stream(seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    debug_assert!(index < 1 << 56);
    rng.set_stream((purpose.tag() << 56) | (index & ((1 << 56) - 1)));
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = stream(7, Purpose::NoiseAtoms, 3);
        let mut b = stream(7, Purpose::NoiseAtoms, 3);
        let mut c = stream(7, Purpose::NoiseAtoms, 4);
        let mut d = stream(7, Purpose::NoiseDrift, 3);
        let xa: f64 = a.gen();
        assert_eq!(xa, b.gen::<f64>());
        assert_ne!(xa, c.gen::<f64>());
        assert_ne!(xa, d.gen::<f64>());
    }
}
