use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Deterministic stream of field elements.
///
/// ChaCha8 keyed from the 64-bit seed, mapped to `[0, p)` by rejection
/// sampling so the output is exactly uniform and identical on every
/// platform.
#[derive(Clone, Debug)]
pub struct FieldSampler {
    rng: ChaCha8Rng,
    p: u64,
    zone: u64,
}

impl FieldSampler {
    pub fn new(p: u32, seed: u64) -> Self {
        let p = u64::from(p);
        FieldSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            p,
            zone: (u64::MAX / p) * p,
        }
    }

    pub fn next_element(&mut self) -> u32 {
        loop {
            let x = self.rng.next_u64();
            if x < self.zone {
                return (x % self.p) as u32;
            }
        }
    }

    pub fn fill(&mut self, out: &mut [u32]) {
        for v in out {
            *v = self.next_element();
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}
