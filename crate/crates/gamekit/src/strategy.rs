//! Pure strategies: what a player can commit to before the game starts.
//!
//! A pure strategy fixes one action at every information set its owner
//! holds — even sets the strategy itself makes unreachable. That keeps the
//! strategy space a plain Cartesian product and gives backward induction a
//! way to state what would happen off the chosen path.

use std::fmt;

use crate::model::{
    ActionLabel, GameTree, InformationSet, InfosetId, NodeKind, PlayerId, Rational,
};

/// One player's complete plan of play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureStrategy {
    owner: PlayerId,
    /// (information set, chosen action), in the tree's infoset order.
    choices: Vec<(InfosetId, ActionLabel)>,
    label: String,
}

impl PureStrategy {
    fn new(tree: &GameTree, owner: PlayerId, actions: Vec<ActionLabel>) -> PureStrategy {
        let sets = tree.infosets_of(owner);
        debug_assert_eq!(sets.len(), actions.len());
        let label = if actions.is_empty() {
            "-".to_string()
        } else if sets
            .iter()
            .all(|s| s.actions.iter().all(|a| a.chars().count() == 1))
        {
            actions.concat()
        } else {
            actions.join(",")
        };
        let choices = sets
            .iter()
            .map(|s| s.id.clone())
            .zip(actions)
            .collect();
        PureStrategy {
            owner,
            choices,
            label,
        }
    }

    /// Builds the strategy that plays `pick(set)` at each of `owner`'s
    /// information sets, labeled exactly as [`enumerate_pure`] would.
    pub fn from_choices(
        tree: &GameTree,
        owner: PlayerId,
        mut pick: impl FnMut(&InformationSet) -> ActionLabel,
    ) -> PureStrategy {
        let actions = tree.infosets_of(owner).iter().map(|s| pick(s)).collect();
        PureStrategy::new(tree, owner, actions)
    }

    pub fn owner(&self) -> PlayerId {
        self.owner
    }

    /// Compact name: chosen actions concatenated in infoset order when all
    /// of the owner's action labels are single characters, comma-joined
    /// otherwise; `-` for a player who never moves.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The (information set, action) pairs, in infoset order.
    pub fn choices(&self) -> &[(InfosetId, ActionLabel)] {
        &self.choices
    }

    /// The action this strategy takes at `infoset`, if the owner holds it.
    pub fn action_at(&self, infoset: &str) -> Option<&str> {
        self.choices
            .iter()
            .find(|(id, _)| id == infoset)
            .map(|(_, a)| a.as_str())
    }
}

impl fmt::Display for PureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// One pure strategy per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    strategies: Vec<PureStrategy>,
}

impl StrategyProfile {
    /// Pairs the two players' strategies.
    ///
    /// # Panics
    /// Panics unless the strategies belong to players 1 and 2 in order.
    pub fn new(first: PureStrategy, second: PureStrategy) -> StrategyProfile {
        assert_eq!(first.owner(), PlayerId::P1, "first strategy must be player 1's");
        assert_eq!(second.owner(), PlayerId::P2, "second strategy must be player 2's");
        StrategyProfile {
            strategies: vec![first, second],
        }
    }

    pub fn strategy(&self, player: PlayerId) -> &PureStrategy {
        &self.strategies[player.offset()]
    }

    pub fn strategies(&self) -> &[PureStrategy] {
        &self.strategies
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.strategies[0], self.strategies[1])
    }
}

/// Index tuples of the product of `sizes`-sized ranges, first position
/// varying slowest. `sizes` empty yields one empty tuple.
pub(crate) fn index_products(sizes: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = sizes.iter().product();
    (0..total)
        .map(|mut k| {
            let mut digits = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                digits[i] = k % sizes[i];
                k /= sizes[i];
            }
            digits
        })
        .collect()
}

/// Every pure strategy of `player`, ordered lexicographically: the first
/// information set varies slowest, actions in their declared order. A
/// player with no information sets gets the single empty strategy `-`.
pub fn enumerate_pure(tree: &GameTree, player: PlayerId) -> Vec<PureStrategy> {
    let sets = tree.infosets_of(player);
    let sizes: Vec<usize> = sets.iter().map(|s| s.actions.len()).collect();
    index_products(&sizes)
        .into_iter()
        .map(|digits| {
            let actions = sets
                .iter()
                .zip(&digits)
                .map(|(s, &d)| s.actions[d].clone())
                .collect();
            PureStrategy::new(tree, player, actions)
        })
        .collect()
}

/// Follows a profile from the root to a terminal and returns its payoff
/// pair.
///
/// # Panics
/// Panics if the tree fails validation or the profile does not cover it.
pub fn play_out(tree: &GameTree, profile: &StrategyProfile) -> (Rational, Rational) {
    let mut node = tree.node(&tree.root).expect("tree has a root node");
    loop {
        match &node.kind {
            NodeKind::Terminal { payoffs } => return (payoffs[0], payoffs[1]),
            NodeKind::Decision {
                owner,
                infoset,
                edges,
            } => {
                let action = profile
                    .strategy(*owner)
                    .action_at(infoset)
                    .expect("profile covers every information set");
                let (_, child) = edges
                    .iter()
                    .find(|(label, _)| label == action)
                    .expect("chosen action exists at this node");
                node = tree.node(child).expect("edges target declared nodes");
            }
        }
    }
}
