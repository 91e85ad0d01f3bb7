//! The three-card guessing game.
//!
//! A box holds three cards: one carries a circle on both faces, one a dot on
//! both faces, one a circle on one face and a dot on the other. The box is
//! shaken, which leaves each card's orientation an independent fair coin,
//! and Bob draws one card. Alice wins the round when the drawn card has the
//! same symbol on both faces; Bob wins otherwise.
//!
//! The upper faces always show the same symbol twice and the other symbol
//! once, and the card showing the odd symbol out is always an identical
//! faced card. Bob's strategies differ only in whether and how they exploit
//! that fact; the scoring of a drawn card never changes.

mod mc;
mod rational;

pub use mc::{mc_payoff, MCEstimate};
pub use rational::{ExpectedPayoff, Rational};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("drawn card index {0} out of range 0..3")]
    DrawnIndexOutOfRange(usize),
    #[error("a Monte Carlo run needs at least one trial")]
    ZeroTrials,
}

/// Symbol printed on one face of a card.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Face {
    Circle,
    Dot,
}

impl std::fmt::Display for Face {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Face::Circle => "circle",
            Face::Dot => "dot",
        })
    }
}

/// One card, by its two printed faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Card {
    pub face_a: Face,
    pub face_b: Face,
}

impl Card {
    pub const fn new(face_a: Face, face_b: Face) -> Self {
        Card { face_a, face_b }
    }

    pub fn is_identical(&self) -> bool {
        self.face_a == self.face_b
    }

    /// Face showing when the card sits in the given orientation; a clear
    /// bit leaves `face_a` up.
    pub fn upper_face(&self, flipped: bool) -> Face {
        if flipped {
            self.face_b
        } else {
            self.face_a
        }
    }
}

impl std::fmt::Display for Card {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.face_a, self.face_b)
    }
}

/// The fixed deck, in canonical order: circle/circle, dot/dot, mixed.
pub const DECK: [Card; 3] = [
    Card::new(Face::Circle, Face::Circle),
    Card::new(Face::Dot, Face::Dot),
    Card::new(Face::Circle, Face::Dot),
];

/// One atomic outcome of shaking the box and drawing: the orientation bit
/// of every card plus which card was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShuffleOutcome {
    orientations: [bool; 3],
    drawn_index: usize,
}

impl ShuffleOutcome {
    pub fn new(orientations: [bool; 3], drawn_index: usize) -> Result<Self, GameError> {
        if drawn_index >= DECK.len() {
            return Err(GameError::DrawnIndexOutOfRange(drawn_index));
        }
        Ok(ShuffleOutcome {
            orientations,
            drawn_index,
        })
    }

    pub fn orientations(&self) -> [bool; 3] {
        self.orientations
    }

    pub fn drawn_index(&self) -> usize {
        self.drawn_index
    }

    pub fn drawn_card(&self) -> Card {
        DECK[self.drawn_index]
    }

    pub fn upper_faces(&self) -> [Face; 3] {
        upper_faces(self.orientations)
    }
}

/// Upper face of each deck card under the given orientation bits.
pub fn upper_faces(orientations: [bool; 3]) -> [Face; 3] {
    std::array::from_fn(|k| DECK[k].upper_face(orientations[k]))
}

/// Index of the card showing the minority symbol. The deck guarantees the
/// upper faces split two against one, and the odd card out is always one of
/// the identical-faced cards, never the mixed card's doing alone.
pub fn minority_card_index(orientations: [bool; 3]) -> usize {
    let faces = upper_faces(orientations);
    let circles = faces.iter().filter(|f| **f == Face::Circle).count();
    let minority = if circles == 1 {
        Face::Circle
    } else {
        Face::Dot
    };
    faces
        .iter()
        .position(|f| *f == minority)
        .expect("two-against-one split always exists")
}

/// How Bob plays a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Draw a card uniformly at random, no information used.
    Naive,
    /// Look at the three upper faces first; the minority card is certainly
    /// identical-faced, so draw uniformly from the other two.
    Observe,
    /// Draw uniformly, then read the upper faces off and withdraw the round
    /// if the drawn card turned out to be the minority card.
    OracleWithdraw,
}

/// How a finished round is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GameResult {
    AliceWins,
    BobWins,
    /// Only [`StrategyKind::OracleWithdraw`] produces this.
    Withdrawn,
}

impl std::fmt::Display for GameResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GameResult::AliceWins => "alice wins",
            GameResult::BobWins => "bob wins",
            GameResult::Withdrawn => "withdrawn",
        })
    }
}

/// Stake paid out per round, as (alice, bob) deltas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PayoffScheme {
    pub on_alice_win: (i64, i64),
    pub on_bob_win: (i64, i64),
}

impl PayoffScheme {
    /// Both players stake 1: winner takes the loser's coin.
    pub const ORIGINAL: PayoffScheme = PayoffScheme {
        on_alice_win: (1, -1),
        on_bob_win: (-1, 1),
    };

    /// Alice's wins pay 1 but her losses pay 2, compensating Bob for
    /// winning only a third of the rounds.
    pub const FAIR: PayoffScheme = PayoffScheme {
        on_alice_win: (1, -1),
        on_bob_win: (-2, 2),
    };

    /// A withdrawn round moves no money.
    pub fn payoff(&self, result: GameResult) -> (i64, i64) {
        match result {
            GameResult::AliceWins => self.on_alice_win,
            GameResult::BobWins => self.on_bob_win,
            GameResult::Withdrawn => (0, 0),
        }
    }

    /// True when every single outcome moves money from one player to the
    /// other, not merely the expectations.
    pub fn is_zero_sum(&self) -> bool {
        self.on_alice_win.0 + self.on_alice_win.1 == 0 && self.on_bob_win.0 + self.on_bob_win.1 == 0
    }
}

/// Scores one resolved round. The rule reads only the drawn card: identical
/// faces pay Alice, mixed faces pay Bob. Under [`StrategyKind::OracleWithdraw`]
/// a draw of the minority card is withdrawn before scoring. Strategies
/// otherwise differ only in how the draw is distributed, which is the
/// sampler's and enumerator's job, not this function's.
pub fn play_one(strategy: StrategyKind, outcome: &ShuffleOutcome) -> GameResult {
    if strategy == StrategyKind::OracleWithdraw
        && outcome.drawn_index == minority_card_index(outcome.orientations)
    {
        return GameResult::Withdrawn;
    }
    if outcome.drawn_card().is_identical() {
        GameResult::AliceWins
    } else {
        GameResult::BobWins
    }
}

/// Walks every atomic outcome in a strategy's support with its exact
/// probability: 8 orientation triples, each with the draws the strategy
/// allows. `Observe` restricts the draw to the two non-minority cards.
fn for_each_atom(strategy: StrategyKind, mut visit: impl FnMut(ShuffleOutcome, Rational)) {
    for bits in 0..8u8 {
        let orientations = [bits & 4 != 0, bits & 2 != 0, bits & 1 != 0];
        let (allowed, probability): (Vec<usize>, Rational) = match strategy {
            StrategyKind::Naive | StrategyKind::OracleWithdraw => {
                ((0..DECK.len()).collect(), Rational::new(1, 24))
            }
            StrategyKind::Observe => {
                let minority = minority_card_index(orientations);
                (
                    (0..DECK.len()).filter(|&k| k != minority).collect(),
                    Rational::new(1, 16),
                )
            }
        };
        for drawn_index in allowed {
            let outcome =
                ShuffleOutcome::new(orientations, drawn_index).expect("deck indices are in range");
            visit(outcome, probability);
        }
    }
}

/// Exact expected payoff by exhaustive enumeration over orientations and
/// draws, all weights held as rationals. No floating point is involved.
pub fn analytic_payoff(strategy: StrategyKind, scheme: PayoffScheme) -> ExpectedPayoff {
    let mut alice = Rational::zero();
    let mut bob = Rational::zero();
    for_each_atom(strategy, |outcome, probability| {
        let (a, b) = scheme.payoff(play_one(strategy, &outcome));
        alice += probability * a;
        bob += probability * b;
    });
    ExpectedPayoff { alice, bob }
}

/// One atomic outcome with its probability, result, and payoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutcomeRow {
    pub outcome: ShuffleOutcome,
    pub result: GameResult,
    pub probability: Rational,
    pub payoff: (i64, i64),
}

/// Full probability table of a strategy under a scheme. Probabilities sum
/// to exactly 1 and the probability-weighted payoffs sum to exactly
/// [`analytic_payoff`]'s answer; tests hold both as hard equalities.
pub fn enumerate_outcomes(strategy: StrategyKind, scheme: PayoffScheme) -> Vec<OutcomeRow> {
    let mut rows = Vec::new();
    for_each_atom(strategy, |outcome, probability| {
        let result = play_one(strategy, &outcome);
        rows.push(OutcomeRow {
            outcome,
            result,
            probability,
            payoff: scheme.payoff(result),
        });
    });
    rows
}
