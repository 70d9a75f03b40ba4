//! Equilibrium computation: backward induction on trees, pure and mixed
//! Nash equilibria on matrices, and dominance relations between pure
//! strategies. Everything is exact — no floating point, no tolerances.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::model::{
    self, ActionLabel, GameTree, NodeId, NodeKind, NormalFormGame, PlayerId, Rational,
};
use crate::normal::{expected_payoff, MixedProfile, MixedStrategy};
use crate::strategy::{index_products, PureStrategy, StrategyProfile};

/// Why a solver refused its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverError {
    /// The tree has an information set with more than one member, so
    /// positions cannot be evaluated independently.
    ImperfectInformation,
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::ImperfectInformation => {
                f.write_str("backward induction requires perfect information")
            }
        }
    }
}

impl std::error::Error for SolverError {}

/// One backward-induction solution: a complete profile and the payoffs
/// reached from the root when it is followed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeResult {
    pub profile: StrategyProfile,
    pub payoffs: (Rational, Rational),
}

/// Solves a perfect-information tree by backward induction.
///
/// Each decision node picks an action maximizing its owner's payoff given
/// the chosen continuations below. Payoff ties branch: every maximizing
/// action is explored against every combination of subtree solutions, so
/// the result lists one profile per way of breaking ties — on and off the
/// equilibrium path. Order is deterministic: subtree combinations vary in
/// declaration order (first child slowest), tied actions in edge order.
///
/// # Panics
/// Panics if the tree fails validation.
pub fn backward_induction(tree: &GameTree) -> Result<Vec<SpeResult>, SolverError> {
    if !model::is_perfect_information(tree) {
        return Err(SolverError::ImperfectInformation);
    }
    let solutions = solve_node(tree, &tree.root);
    Ok(solutions
        .into_iter()
        .map(|(choices, payoffs)| {
            let strategy_for = |player| {
                PureStrategy::from_choices(tree, player, |set| {
                    choices[&set.members[0]].clone()
                })
            };
            SpeResult {
                profile: StrategyProfile::new(
                    strategy_for(PlayerId::P1),
                    strategy_for(PlayerId::P2),
                ),
                payoffs: (payoffs[0], payoffs[1]),
            }
        })
        .collect())
}

/// Maps every decision node below (and including) the solved one to the
/// action chosen there.
type Choices = HashMap<NodeId, ActionLabel>;

fn solve_node(tree: &GameTree, id: &str) -> Vec<(Choices, Vec<Rational>)> {
    let node = tree.node(id).expect("edges target declared nodes");
    match &node.kind {
        NodeKind::Terminal { payoffs } => vec![(Choices::new(), payoffs.clone())],
        NodeKind::Decision { owner, edges, .. } => {
            let child_solutions: Vec<Vec<(Choices, Vec<Rational>)>> = edges
                .iter()
                .map(|(_, child)| solve_node(tree, child))
                .collect();
            let sizes: Vec<usize> = child_solutions.iter().map(|s| s.len()).collect();
            let mut out = Vec::new();
            for picks in index_products(&sizes) {
                let continuation: Vec<&(Choices, Vec<Rational>)> = picks
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| &child_solutions[i][k])
                    .collect();
                let best = continuation
                    .iter()
                    .map(|(_, payoffs)| payoffs[owner.offset()])
                    .max()
                    .expect("decision nodes have at least one action");
                for (i, (label, _)) in edges.iter().enumerate() {
                    if continuation[i].1[owner.offset()] != best {
                        continue;
                    }
                    let mut choices = Choices::new();
                    for (sub, _) in &continuation {
                        choices.extend(sub.iter().map(|(k, v)| (k.clone(), v.clone())));
                    }
                    choices.insert(id.to_string(), label.clone());
                    out.push((choices, continuation[i].1.clone()));
                }
            }
            out
        }
    }
}

/// Checks a profile for subgame perfection on a perfect-information tree:
/// at every decision node, the prescribed action must be at least as good
/// for its owner as any alternative, holding the rest of the profile
/// fixed. (For perfect information, immune-to-one-deviation is the same
/// as optimal in every subtree.)
///
/// # Panics
/// Panics if the tree fails validation or the profile does not cover it.
pub fn is_subgame_perfect(
    tree: &GameTree,
    profile: &StrategyProfile,
) -> Result<bool, SolverError> {
    if !model::is_perfect_information(tree) {
        return Err(SolverError::ImperfectInformation);
    }
    for node in &tree.nodes {
        let NodeKind::Decision {
            owner,
            infoset,
            edges,
        } = &node.kind
        else {
            continue;
        };
        let chosen = profile
            .strategy(*owner)
            .action_at(infoset)
            .expect("profile covers every information set");
        let (_, chosen_child) = edges
            .iter()
            .find(|(label, _)| label == chosen)
            .expect("chosen action exists at this node");
        let promised = continuation_value(tree, profile, chosen_child)[owner.offset()];
        for (_, child) in edges {
            if continuation_value(tree, profile, child)[owner.offset()] > promised {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The payoff vector reached from `id` when everyone follows `profile`.
fn continuation_value(tree: &GameTree, profile: &StrategyProfile, id: &str) -> Vec<Rational> {
    let node = tree.node(id).expect("edges target declared nodes");
    match &node.kind {
        NodeKind::Terminal { payoffs } => payoffs.clone(),
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
            continuation_value(tree, profile, child)
        }
    }
}

/// A matrix cell from which no player gains by deviating alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureEquilibrium {
    pub row: usize,
    pub col: usize,
    pub payoffs: (Rational, Rational),
}

/// All pure Nash equilibria, scanning cells in row-major order: a cell
/// qualifies when its first payoff tops its column and its second tops
/// its row (ties allowed).
pub fn pure_nash(game: &NormalFormGame) -> Vec<PureEquilibrium> {
    let mut out = Vec::new();
    for r in 0..game.num_rows() {
        for c in 0..game.num_cols() {
            let (first, second) = game.payoff(r, c);
            let row_best = (0..game.num_rows()).all(|r2| game.payoff(r2, c).0 <= first);
            let col_best = (0..game.num_cols()).all(|c2| game.payoff(r, c2).1 <= second);
            if row_best && col_best {
                out.push(PureEquilibrium {
                    row: r,
                    col: c,
                    payoffs: (first, second),
                });
            }
        }
    }
    out
}

/// Flavor of dominance between two pure strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceKind {
    /// At least as good against everything, strictly better somewhere.
    Weak,
    /// Strictly better against everything.
    Strict,
}

/// States that `dominator` dominates `dominated` for `player`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceRecord {
    pub player: PlayerId,
    pub dominated: usize,
    pub dominator: usize,
    pub kind: DominanceKind,
}

/// Every ordered dominance pair of the requested kind, player 1's rows
/// first, then player 2's columns, each sorted by (dominated, dominator).
pub fn dominance(game: &NormalFormGame, kind: DominanceKind) -> Vec<DominanceRecord> {
    let mut out = Vec::new();
    for player in [PlayerId::P1, PlayerId::P2] {
        let count = match player {
            PlayerId::P1 => game.num_rows(),
            _ => game.num_cols(),
        };
        // A strategy's payoffs against each opposing strategy.
        let line = |s: usize| -> Vec<Rational> {
            match player {
                PlayerId::P1 => (0..game.num_cols()).map(|c| game.payoff(s, c).0).collect(),
                _ => (0..game.num_rows()).map(|r| game.payoff(r, s).1).collect(),
            }
        };
        for dominated in 0..count {
            let d = line(dominated);
            for dominator in 0..count {
                if dominator == dominated {
                    continue;
                }
                let k = line(dominator);
                let holds = match kind {
                    DominanceKind::Strict => d.iter().zip(&k).all(|(a, b)| b > a),
                    DominanceKind::Weak => {
                        d.iter().zip(&k).all(|(a, b)| b >= a)
                            && d.iter().zip(&k).any(|(a, b)| b > a)
                    }
                };
                if holds {
                    out.push(DominanceRecord {
                        player,
                        dominated,
                        dominator,
                        kind,
                    });
                }
            }
        }
    }
    out
}

/// A fully determined mixed equilibrium found by support enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedEquilibrium {
    pub profile: MixedProfile,
    pub payoffs: (Rational, Rational),
    /// The supporting (row indices, column indices), each ascending.
    pub support: (Vec<usize>, Vec<usize>),
}

/// One finding of [`mixed_nash_2p`]: either an isolated equilibrium or a
/// support whose indifference system is singular. A singular system means
/// the support cannot pin weights down to a single point — any solutions
/// form a continuum — so the support is flagged instead of enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedOutcome {
    Equilibrium(MixedEquilibrium),
    Degenerate { support: (Vec<usize>, Vec<usize>) },
}

impl MixedOutcome {
    pub fn support(&self) -> &(Vec<usize>, Vec<usize>) {
        match self {
            MixedOutcome::Equilibrium(eq) => &eq.support,
            MixedOutcome::Degenerate { support } => support,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, MixedOutcome::Degenerate { .. })
    }
}

/// Finds mixed Nash equilibria by support enumeration.
///
/// For every pair of equal-sized supports (sizes 1 up to the smaller
/// matrix dimension, subsets in lexicographic order), solve two linear
/// systems: column weights making the supported rows indifferent and
/// row weights making the supported columns indifferent, each summing to
/// one. A unique solution with strictly positive weights whose
/// off-support strategies cannot beat the support value is an
/// equilibrium; a singular system is reported as degenerate. Supports of
/// unequal size always lean on such a continuum, so they are skipped.
pub fn mixed_nash_2p(game: &NormalFormGame) -> Vec<MixedOutcome> {
    let rows = game.num_rows();
    let cols = game.num_cols();
    let mut out = Vec::new();
    for size in 1..=rows.min(cols) {
        for row_support in (0..rows).combinations(size) {
            for col_support in (0..cols).combinations(size) {
                if let Some(outcome) = support_outcome(game, &row_support, &col_support) {
                    out.push(outcome);
                }
            }
        }
    }
    out
}

fn support_outcome(
    game: &NormalFormGame,
    rows: &[usize],
    cols: &[usize],
) -> Option<MixedOutcome> {
    let k = rows.len();
    let degenerate = || {
        Some(MixedOutcome::Degenerate {
            support: (rows.to_vec(), cols.to_vec()),
        })
    };

    // Column weights q and value v1: every supported row yields v1
    // against q, and q sums to one. Unknowns [q_0 .. q_{k-1}, v1].
    let mut lhs = vec![vec![Rational::zero(); k + 1]; k + 1];
    let mut rhs = vec![Rational::zero(); k + 1];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            lhs[i][j] = game.payoff(r, c).0;
        }
        lhs[i][k] = Rational::from_integer(-1);
    }
    for cell in lhs[k].iter_mut().take(k) {
        *cell = Rational::from_integer(1);
    }
    rhs[k] = Rational::from_integer(1);
    let Some(q_solution) = solve_linear(lhs, rhs) else {
        return degenerate();
    };

    // Row weights p and value v2, symmetrically.
    let mut lhs = vec![vec![Rational::zero(); k + 1]; k + 1];
    let mut rhs = vec![Rational::zero(); k + 1];
    for (j, &c) in cols.iter().enumerate() {
        for (i, &r) in rows.iter().enumerate() {
            lhs[j][i] = game.payoff(r, c).1;
        }
        lhs[j][k] = Rational::from_integer(-1);
    }
    for cell in lhs[k].iter_mut().take(k) {
        *cell = Rational::from_integer(1);
    }
    rhs[k] = Rational::from_integer(1);
    let Some(p_solution) = solve_linear(lhs, rhs) else {
        return degenerate();
    };

    let (q, v1) = (&q_solution[..k], q_solution[k]);
    let (p, v2) = (&p_solution[..k], p_solution[k]);

    // Every supported strategy must actually be played.
    if q.iter().any(|w| *w <= Rational::zero()) || p.iter().any(|w| *w <= Rational::zero()) {
        return None;
    }

    // No strategy outside the support may beat the support value.
    for r in 0..game.num_rows() {
        if rows.contains(&r) {
            continue;
        }
        let payoff: Rational = cols
            .iter()
            .zip(q)
            .map(|(&c, w)| w * game.payoff(r, c).0)
            .sum();
        if payoff > v1 {
            return None;
        }
    }
    for c in 0..game.num_cols() {
        if cols.contains(&c) {
            continue;
        }
        let payoff: Rational = rows
            .iter()
            .zip(p)
            .map(|(&r, w)| w * game.payoff(r, c).1)
            .sum();
        if payoff > v2 {
            return None;
        }
    }

    let mut row_weights = vec![Rational::zero(); game.num_rows()];
    for (&r, w) in rows.iter().zip(p) {
        row_weights[r] = *w;
    }
    let mut col_weights = vec![Rational::zero(); game.num_cols()];
    for (&c, w) in cols.iter().zip(q) {
        col_weights[c] = *w;
    }
    let profile = MixedProfile::new(
        MixedStrategy::new(PlayerId::P1, row_weights).expect("positive weights summing to one"),
        MixedStrategy::new(PlayerId::P2, col_weights).expect("positive weights summing to one"),
    );
    let payoffs = expected_payoff(game, &profile);
    debug_assert_eq!(payoffs, (v1, v2));
    Some(MixedOutcome::Equilibrium(MixedEquilibrium {
        profile,
        payoffs,
        support: (rows.to_vec(), cols.to_vec()),
    }))
}

/// Solves `a · x = b` exactly by Gauss-Jordan elimination.
/// Returns `None` when the matrix is singular.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let lead = a[col][col];
        let pivot_row = a[col].clone();
        let pivot_b = b[col];
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col] / lead;
            for (target, source) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *target -= *source * factor;
            }
            b[row] -= pivot_b * factor;
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}
