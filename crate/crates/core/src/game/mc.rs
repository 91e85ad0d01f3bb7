//! Seeded Monte Carlo estimation of expected payoffs.
//!
//! Each trial draws from its own SplitMix64 stream whose start is a fixed
//! finalizer mix of the run seed and the trial index. Estimates therefore
//! depend only on (seed, trials, strategy, scheme), bit for bit, no matter
//! how the trial loop might later be reordered or chunked.

use serde::Serialize;

use super::{
    minority_card_index, play_one, GameError, PayoffScheme, ShuffleOutcome, StrategyKind, DECK,
};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64: a Weyl sequence pushed through an avalanching finalizer.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(state: u64) -> Self {
        SplitMix64 { state }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator for one trial. Mixing the trial index through the
/// finalizer before touching the seed keeps distinct trials on unrelated
/// stream positions, so consecutive trials never share outputs.
fn trial_stream(seed: u64, trial: u64) -> SplitMix64 {
    let salt = mix64(trial.wrapping_mul(GOLDEN_GAMMA).wrapping_add(GOLDEN_GAMMA));
    SplitMix64::new(mix64(seed ^ salt))
}

/// Uniform draw from {0, 1, 2} by rejection on the generator's top bits.
fn uniform3(rng: &mut SplitMix64) -> usize {
    loop {
        let v = (rng.next_u64() >> 62) as usize;
        if v < DECK.len() {
            return v;
        }
    }
}

/// Samples one atomic outcome from the distribution the strategy induces:
/// orientations are three independent fair bits, and the draw is uniform
/// over whatever the strategy allows.
fn sample_outcome(strategy: StrategyKind, rng: &mut SplitMix64) -> ShuffleOutcome {
    let word = rng.next_u64();
    let orientations = [word & 1 != 0, word & 2 != 0, word & 4 != 0];
    let drawn_index = match strategy {
        StrategyKind::Naive | StrategyKind::OracleWithdraw => uniform3(rng),
        StrategyKind::Observe => {
            let minority = minority_card_index(orientations);
            let pick = (rng.next_u64() >> 63) as usize;
            (0..DECK.len())
                .filter(|&k| k != minority)
                .nth(pick)
                .expect("two cards remain after removing the minority")
        }
    };
    ShuffleOutcome::new(orientations, drawn_index).expect("sampled index is in range")
}

/// Monte Carlo estimate of the expected payoff per player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    pub trials: u64,
    pub mean_alice: f64,
    pub mean_bob: f64,
    /// Sample standard deviation over sqrt(trials); 0 for a single trial.
    pub stderr_alice: f64,
    pub stderr_bob: f64,
    pub seed: u64,
}

/// Runs `trials` independent rounds and averages the payoffs. Per-round
/// payoffs are small integers, so the sums are accumulated exactly in i64
/// and only the final division leaves integer arithmetic.
pub fn mc_payoff(
    strategy: StrategyKind,
    scheme: PayoffScheme,
    trials: u64,
    seed: u64,
) -> Result<MCEstimate, GameError> {
    if trials == 0 {
        return Err(GameError::ZeroTrials);
    }
    let mut sum_alice = 0i64;
    let mut sum_bob = 0i64;
    let mut sumsq_alice = 0i64;
    let mut sumsq_bob = 0i64;
    for trial in 0..trials {
        let mut rng = trial_stream(seed, trial);
        let outcome = sample_outcome(strategy, &mut rng);
        let (a, b) = scheme.payoff(play_one(strategy, &outcome));
        sum_alice += a;
        sum_bob += b;
        sumsq_alice += a * a;
        sumsq_bob += b * b;
    }
    let (mean_alice, stderr_alice) = mean_and_stderr(sum_alice, sumsq_alice, trials);
    let (mean_bob, stderr_bob) = mean_and_stderr(sum_bob, sumsq_bob, trials);
    Ok(MCEstimate {
        trials,
        mean_alice,
        mean_bob,
        stderr_alice,
        stderr_bob,
        seed,
    })
}

fn mean_and_stderr(sum: i64, sumsq: i64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let mean = sum as f64 / n;
    if trials < 2 {
        return (mean, 0.0);
    }
    // Sample variance; the clamp absorbs the tiny negative values floating
    // point can produce when every payoff is identical.
    let variance = ((sumsq as f64 - (sum as f64) * (sum as f64) / n) / (n - 1.0)).max(0.0);
    (mean, (variance / n).sqrt())
}
