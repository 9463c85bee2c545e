//! Wall-clock timing of the multipliers.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::transform::OpCounters;
use crate::field::Field;
use crate::gf2x::{mul_karatsuba, mul_schoolbook, Method};
use crate::poly::BinaryPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub method: Method,
    /// Product length is `2^log_bits`; each operand has `2^(log_bits-1)` bits.
    pub log_bits: u32,
    pub reps: usize,
    pub seconds_median: f64,
    /// Transform counters of one multiplication (zero for the other methods).
    pub weighted_mults: u64,
    pub weighted_adds: u64,
}

pub fn random_operand(rng: &mut impl Rng, bits: usize) -> BinaryPoly {
    let mut words: Vec<u64> = (0..bits.div_ceil(64)).map(|_| rng.gen()).collect();
    if !bits.is_multiple_of(64) {
        if let Some(w) = words.last_mut() {
            *w &= (1u64 << (bits % 64)) - 1;
        }
    }
    BinaryPoly::from_words(words)
}

pub fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2.0
    }
}

/// Median of `reps` timed runs after one warm-up, on one random operand pair.
pub fn bench_method(field: &Field, method: Method, log_bits: u32, reps: usize, seed: u64) -> Result<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ log_bits as u64);
    let half = 1usize << log_bits.saturating_sub(1);
    let a = random_operand(&mut rng, half);
    let b = random_operand(&mut rng, half);
    let mut counters = OpCounters::new();
    let run = |counters: &mut OpCounters| -> Result<BinaryPoly> {
        match method {
            Method::Fafft => crate::gf2x::mul_fafft_with(field, &a, &b, counters),
            Method::Schoolbook => Ok(mul_schoolbook(&a, &b)),
            Method::Karatsuba => Ok(mul_karatsuba(&a, &b)),
        }
    };
    run(&mut counters)?;
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps.max(1) {
        let mut scratch = OpCounters::new();
        let t = Instant::now();
        std::hint::black_box(run(&mut scratch)?);
        samples.push(t.elapsed().as_secs_f64().max(1e-9));
    }
    Ok(BenchRecord {
        method,
        log_bits,
        reps: reps.max(1),
        seconds_median: median(&mut samples),
        weighted_mults: counters.weighted_mults,
        weighted_adds: counters.weighted_adds,
    })
}
