//! Reproducible, splittable random streams.
//!
//! Each stream is a ChaCha8 keystream keyed by the master seed and positioned
//! on its own 64-bit stream id. Trial `t` of a sweep always reads stream `t`,
//! so results do not depend on the order in which trials are executed.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::complex::ComplexVector;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_id);
        Self { master_seed, stream_id, inner }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Circularly-symmetric `CN(0, 1)` draw: both parts `N(0, 1/2)`.
    #[inline]
    pub fn complex_standard_normal(&mut self) -> Complex64 {
        let re: f64 = self.inner.sample(StandardNormal);
        let im: f64 = self.inner.sample(StandardNormal);
        Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
    }

    pub(crate) fn fill_complex_standard_normal(&mut self, out: &mut Vec<Complex64>, n: usize) {
        out.reserve(n);
        for _ in 0..n {
            out.push(self.complex_standard_normal());
        }
    }
}

impl RngCore for RngStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    #[inline]
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// `n` i.i.d. `CN(0, 1)` entries, so each `|g_i|²` is exponential with mean 1.
pub fn sample_complex_standard_normal(rng: &mut RngStream, n: usize) -> Result<ComplexVector> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample length must be at least 1"));
    }
    let mut out = Vec::new();
    rng.fill_complex_standard_normal(&mut out, n);
    Ok(ComplexVector::from_vec_unchecked(out))
}
