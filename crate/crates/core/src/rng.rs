//! Seeded SplitMix64 stream and the samplers built on it.
//!
//! The stream is fully specified so other implementations can reproduce it:
//!
//! * state advance: `state += 0x9E3779B97F4A7C15` (wrapping), then the output
//!   is `mix64(state)` with
//!   `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;`
//!   `z = (z ^ (z >> 27)) * 0x94D049BB133111EB;`
//!   `z ^ (z >> 31)`.
//! * uniform: `(next_u64() >> 11) * 2^-53`, in `[0, 1)`.
//! * standard complex normal (E|z|² = 1): draw `u1 = 1 - uniform()` then
//!   `u2 = uniform()`; `r = sqrt(-ln u1)`, `z = r·(cos 2πu2 + i sin 2πu2)`.
//! * per-sample seeds for sweeps and scans:
//!   `derive_seed(base, i) = mix64(base + (i + 1)·0x9E3779B97F4A7C15)`.

use num_complex::Complex64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(base.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        Complex64::from_polar((-u1.ln()).sqrt(), std::f64::consts::TAU * u2)
    }

    /// Unit-rate exponential; normalized draws give flat Dirichlet weights.
    pub fn exponential(&mut self) -> f64 {
        -(1.0 - self.uniform()).ln()
    }
}
