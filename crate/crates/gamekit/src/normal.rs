//! Normal-form view of a game: the full strategy-against-strategy payoff
//! matrix, plus mixed (randomized) strategies over it.

use std::fmt;

use num_traits::Zero;

use crate::model::{GameTree, NormalFormGame, PlayerId, Rational};
use crate::strategy::{enumerate_pure, play_out, StrategyProfile};

/// Expands a tree into its payoff matrix: rows are player 1's pure
/// strategies, columns player 2's, each cell the payoff pair reached by
/// playing that profile out. Row and column order follow
/// [`enumerate_pure`]; the name and player names carry over.
///
/// # Panics
/// Panics if the tree fails validation.
pub fn to_normal_form(tree: &GameTree) -> NormalFormGame {
    let rows = enumerate_pure(tree, PlayerId::P1);
    let cols = enumerate_pure(tree, PlayerId::P2);
    let payoffs = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| play_out(tree, &StrategyProfile::new(r.clone(), c.clone())))
                .collect()
        })
        .collect();
    NormalFormGame {
        name: tree.name.clone(),
        players: tree.players.clone(),
        strategies: vec![
            rows.iter().map(|s| s.label().to_string()).collect(),
            cols.iter().map(|s| s.label().to_string()).collect(),
        ],
        payoffs,
    }
}

/// Why a weight vector is not a mixed strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedStrategyError {
    /// A weight is below zero.
    NegativeWeight { index: usize },
    /// The weights do not add up to exactly one.
    WrongSum { sum: Rational },
}

impl fmt::Display for MixedStrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedStrategyError::NegativeWeight { index } => {
                write!(f, "weight {index} is negative")
            }
            MixedStrategyError::WrongSum { sum } => {
                write!(f, "weights sum to {sum}, not 1")
            }
        }
    }
}

impl std::error::Error for MixedStrategyError {}

/// A probability distribution over one player's pure strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    owner: PlayerId,
    weights: Vec<Rational>,
}

impl MixedStrategy {
    /// Wraps a weight vector after checking it is a distribution:
    /// nonnegative entries summing to exactly one.
    pub fn new(owner: PlayerId, weights: Vec<Rational>) -> Result<MixedStrategy, MixedStrategyError> {
        if let Some(index) = weights.iter().position(|w| *w < Rational::zero()) {
            return Err(MixedStrategyError::NegativeWeight { index });
        }
        let sum: Rational = weights.iter().sum();
        if sum != Rational::from_integer(1) {
            return Err(MixedStrategyError::WrongSum { sum });
        }
        Ok(MixedStrategy { owner, weights })
    }

    /// The degenerate mix playing strategy `index` with certainty.
    pub fn pure(owner: PlayerId, count: usize, index: usize) -> MixedStrategy {
        assert!(index < count, "strategy index out of range");
        let mut weights = vec![Rational::zero(); count];
        weights[index] = Rational::from_integer(1);
        MixedStrategy { owner, weights }
    }

    /// The uniform mix over `count` strategies.
    pub fn uniform(owner: PlayerId, count: usize) -> MixedStrategy {
        assert!(count > 0, "a mix needs at least one strategy");
        MixedStrategy {
            owner,
            weights: vec![Rational::new(1, count as i64); count],
        }
    }

    pub fn owner(&self) -> PlayerId {
        self.owner
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Indices played with positive probability, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > Rational::zero())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// One mixed strategy per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedProfile {
    strategies: Vec<MixedStrategy>,
}

impl MixedProfile {
    /// Pairs the two players' mixes.
    ///
    /// # Panics
    /// Panics unless the mixes belong to players 1 and 2 in order.
    pub fn new(first: MixedStrategy, second: MixedStrategy) -> MixedProfile {
        assert_eq!(first.owner(), PlayerId::P1, "first mix must be player 1's");
        assert_eq!(second.owner(), PlayerId::P2, "second mix must be player 2's");
        MixedProfile {
            strategies: vec![first, second],
        }
    }

    pub fn strategy(&self, player: PlayerId) -> &MixedStrategy {
        &self.strategies[player.offset()]
    }
}

/// The exact expected payoff pair of a mixed profile:
/// sum of `p(row) * q(col) * payoff(row, col)` over all cells.
///
/// # Panics
/// Panics if the weight vectors do not match the matrix shape.
pub fn expected_payoff(game: &NormalFormGame, profile: &MixedProfile) -> (Rational, Rational) {
    let p = profile.strategy(PlayerId::P1).weights();
    let q = profile.strategy(PlayerId::P2).weights();
    assert_eq!(p.len(), game.num_rows(), "row mix must match the matrix");
    assert_eq!(q.len(), game.num_cols(), "column mix must match the matrix");
    let mut first = Rational::zero();
    let mut second = Rational::zero();
    for (r, pr) in p.iter().enumerate() {
        if pr.is_zero() {
            continue;
        }
        for (c, qc) in q.iter().enumerate() {
            if qc.is_zero() {
                continue;
            }
            let (a, b) = game.payoff(r, c);
            let scale = pr * qc;
            first += scale * a;
            second += scale * b;
        }
    }
    (first, second)
}
