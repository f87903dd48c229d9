use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};

use apcover::{available_det, build_available_matrix, det_bareiss, ModulusSystem};

#[derive(Debug, Clone)]
pub enum BareissOutcome {
    Ran { value: BigInt, mean: Duration },
    /// Not attempted because a smaller k already exceeded the time cap.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub k: usize,
    pub value: BigUint,
    pub recurrence_mean: Duration,
    pub bareiss: BareissOutcome,
}

impl BenchRow {
    pub fn agree(&self) -> Option<bool> {
        match &self.bareiss {
            BareissOutcome::Ran { value, .. } => Some(*value == BigInt::from(self.value.clone())),
            BareissOutcome::Skipped => None,
        }
    }
}

fn mean_time<T>(repeat: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let start = Instant::now();
    let mut last = f();
    for _ in 1..repeat {
        last = f();
    }
    (last, start.elapsed() / repeat as u32)
}

/// Times A_k over the first k primes for k = 1..=kmax by the recurrence and by
/// elimination. Once one elimination run exceeds `cap`, larger k skip it.
pub fn run(kmax: usize, repeat: usize, cap: Duration) -> Vec<BenchRow> {
    let repeat = repeat.max(1);
    let all = ModulusSystem::first_primes(kmax).expect("first primes are valid");
    let mut capped = false;
    (1..=kmax)
        .map(|k| {
            let system = all.prefix(k).expect("k within range");
            let (value, recurrence_mean) = mean_time(repeat, || available_det(&system));
            let bareiss = if capped {
                BareissOutcome::Skipped
            } else {
                let matrix = build_available_matrix(&system);
                let start = Instant::now();
                let first = det_bareiss(&matrix);
                let once = start.elapsed();
                if once > cap {
                    capped = true;
                    BareissOutcome::Ran {
                        value: first,
                        mean: once,
                    }
                } else {
                    let (value, mean) = mean_time(repeat, || det_bareiss(&matrix));
                    BareissOutcome::Ran { value, mean }
                }
            };
            BenchRow {
                k,
                value,
                recurrence_mean,
                bareiss,
            }
        })
        .collect()
}
