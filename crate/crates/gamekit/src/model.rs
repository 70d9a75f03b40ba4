//! Core data model: extensive-form game trees, information sets, and
//! normal-form payoff matrices.
//!
//! Payoffs are exact rationals ([`Rational`]); nothing in the model is
//! floating point. All types are plain owned data, immutable once built,
//! and therefore freely shareable across threads.

use std::collections::{HashMap, HashSet};
use std::fmt;

/// Exact rational number used for every payoff and probability.
pub type Rational = num_rational::Rational64;

/// Identifier of a node within a tree (unique per tree).
pub type NodeId = String;

/// Identifier of an information set within a tree (unique per tree).
pub type InfosetId = String;

/// Label of an action edge. Unique within its information set.
pub type ActionLabel = String;

/// One of the two players, identified by 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(u32);

impl PlayerId {
    /// First player (rows in normal form).
    pub const P1: PlayerId = PlayerId(1);
    /// Second player (columns in normal form).
    pub const P2: PlayerId = PlayerId(2);

    /// Wraps a 1-based player index.
    ///
    /// # Panics
    /// Panics if `index` is zero; player indices start at 1.
    pub fn new(index: u32) -> PlayerId {
        assert!(index >= 1, "player indices are 1-based");
        PlayerId(index)
    }

    /// The 1-based index, as declared in game files.
    pub fn index(self) -> u32 {
        self.0
    }

    /// The 0-based position of this player in payoff tuples.
    pub fn offset(self) -> usize {
        self.0 as usize - 1
    }

    /// The other player of a two-player game.
    pub fn opponent(self) -> PlayerId {
        match self.0 {
            1 => PlayerId(2),
            2 => PlayerId(1),
            n => panic!("player {n} has no single opponent"),
        }
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "player {}", self.0)
    }
}

/// What a node does: offer a choice or end the game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    /// An internal node where `owner` picks one of the ordered `edges`.
    /// Each edge pairs an action label with the child it leads to.
    Decision {
        owner: PlayerId,
        infoset: InfosetId,
        edges: Vec<(ActionLabel, NodeId)>,
    },
    /// A leaf holding one payoff per player, in player order.
    Terminal { payoffs: Vec<Rational> },
}

/// A single node of a game tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameNode {
    pub id: NodeId,
    pub kind: NodeKind,
}

impl GameNode {
    pub fn is_terminal(&self) -> bool {
        matches!(self.kind, NodeKind::Terminal { .. })
    }
}

/// A set of decision nodes its owner cannot tell apart.
///
/// Every member node offers the same actions in the same order; a pure
/// strategy picks one action per information set, not per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationSet {
    pub id: InfosetId,
    pub owner: PlayerId,
    /// Member nodes in declaration order. Never empty in a valid tree.
    pub members: Vec<NodeId>,
    /// The common ordered action list of all members.
    pub actions: Vec<ActionLabel>,
}

/// An extensive-form game: a finite tree of decision and terminal nodes.
///
/// `nodes` keeps declaration order and starts with the root; `infosets`
/// keeps creation order (the order used when enumerating strategies).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTree {
    pub name: String,
    /// Display names of the players, in player order.
    pub players: Vec<String>,
    pub root: NodeId,
    pub nodes: Vec<GameNode>,
    pub infosets: Vec<InformationSet>,
}

impl GameTree {
    /// Looks up a node by id.
    pub fn node(&self, id: &str) -> Option<&GameNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Looks up an information set by id.
    pub fn infoset(&self, id: &str) -> Option<&InformationSet> {
        self.infosets.iter().find(|i| i.id == id)
    }

    /// The information sets owned by `player`, in creation order.
    pub fn infosets_of(&self, player: PlayerId) -> Vec<&InformationSet> {
        self.infosets.iter().filter(|i| i.owner == player).collect()
    }

    pub fn decision_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.is_terminal()).count()
    }

    pub fn terminal_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_terminal()).count()
    }
}

/// A two-player game in matrix form.
///
/// Player 1 picks a row, player 2 a column; `payoffs[r][c]` holds the pair
/// (player 1 payoff, player 2 payoff) for that cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormGame {
    pub name: String,
    /// Display names of the players, in player order.
    pub players: Vec<String>,
    /// Strategy labels per player: `strategies[0]` are rows, `strategies[1]` columns.
    pub strategies: Vec<Vec<String>>,
    pub payoffs: Vec<Vec<(Rational, Rational)>>,
}

impl NormalFormGame {
    pub fn rows(&self) -> &[String] {
        &self.strategies[0]
    }

    pub fn cols(&self) -> &[String] {
        &self.strategies[1]
    }

    pub fn num_rows(&self) -> usize {
        self.strategies[0].len()
    }

    pub fn num_cols(&self) -> usize {
        self.strategies[1].len()
    }

    /// The payoff pair of cell (`row`, `col`).
    pub fn payoff(&self, row: usize, col: usize) -> (Rational, Rational) {
        self.payoffs[row][col]
    }

    /// The payoff of `player` in cell (`row`, `col`).
    pub fn payoff_for(&self, player: PlayerId, row: usize, col: usize) -> Rational {
        let cell = self.payoffs[row][col];
        match player.offset() {
            0 => cell.0,
            _ => cell.1,
        }
    }

    /// Checks the matrix shape: two players, at least one strategy each,
    /// unique identifier-safe labels, and a full payoff grid.
    pub fn check(&self) -> Result<(), String> {
        if self.name.contains('"') || self.name.contains('\n') {
            return Err("game name must not contain quotes or newlines".into());
        }
        if self.players.len() != 2 {
            return Err(format!(
                "game declares {} players; exactly two are supported",
                self.players.len()
            ));
        }
        for name in &self.players {
            if !is_identifier(name) {
                return Err(format!("invalid player name `{name}`"));
            }
        }
        if self.strategies.len() != 2 {
            return Err(format!(
                "expected strategy lists for two players, found {}",
                self.strategies.len()
            ));
        }
        for (which, labels) in [("row", self.rows()), ("column", self.cols())] {
            if labels.is_empty() {
                return Err(format!("game has no {which} strategies"));
            }
            let mut seen = HashSet::new();
            for label in labels {
                if !is_identifier(label) {
                    return Err(format!("invalid {which} label `{label}`"));
                }
                if !seen.insert(label) {
                    return Err(format!("duplicate {which} label `{label}`"));
                }
            }
        }
        if self.payoffs.len() != self.num_rows() {
            return Err(format!(
                "payoff matrix has {} rows; expected {}",
                self.payoffs.len(),
                self.num_rows()
            ));
        }
        for (r, row) in self.payoffs.iter().enumerate() {
            if row.len() != self.num_cols() {
                return Err(format!(
                    "row `{}` has {} cells; expected {}",
                    self.rows()[r],
                    row.len(),
                    self.num_cols()
                ));
            }
        }
        Ok(())
    }
}

/// Severity of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    /// Suspicious but playable.
    Warning,
    /// The tree is unusable until fixed.
    Error,
}

/// One validation finding, tied to the id of the offending element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Id of the node/infoset concerned, or a structural keyword such as
    /// `players` or `root`.
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{severity}: {}: {}", self.subject, self.message)
    }
}

/// Outcome of [`validate_tree`]: the tree is usable iff [`ok`](Self::ok).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    /// True when no error-severity diagnostic was found.
    pub fn ok(&self) -> bool {
        !self
            .diagnostics
            .iter()
            .any(|d| d.severity == Severity::Error)
    }

    /// The error-severity diagnostics only.
    pub fn errors(&self) -> Vec<&Diagnostic> {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
            .collect()
    }

    fn error(&mut self, subject: impl Into<String>, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            severity: Severity::Error,
            subject: subject.into(),
            message: message.into(),
        });
    }

    fn warning(&mut self, subject: impl Into<String>, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            severity: Severity::Warning,
            subject: subject.into(),
            message: message.into(),
        });
    }
}

/// True for strings usable as ids, action labels, and player names: nonempty,
/// no whitespace, and none of the characters reserved by the file format
/// (`:`, `(`, `)`, `"`, `#`, `=`). Commas are allowed — composite strategy
/// labels such as `S,P` must stay writable.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| !c.is_whitespace() && !matches!(c, ':' | '(' | ')' | '"' | '#' | '='))
}

/// Checks every structural invariant of an extensive-form tree.
///
/// The returned report lists all findings rather than stopping at the
/// first, so one pass surfaces every problem in a hand-written file.
pub fn validate_tree(tree: &GameTree) -> ValidationReport {
    let mut report = ValidationReport::default();

    // Players: exactly two, identifier-safe names.
    if tree.players.len() != 2 {
        report.error(
            "players",
            format!(
                "game declares {} players; exactly two are supported",
                tree.players.len()
            ),
        );
    }
    let mut seen_players = HashSet::new();
    for name in &tree.players {
        if !is_identifier(name) {
            report.error("players", format!("invalid player name `{name}`"));
        } else if !seen_players.insert(name) {
            report.warning("players", format!("duplicate player name `{name}`"));
        }
    }
    if tree.name.contains('"') || tree.name.contains('\n') {
        report.error("tree", "game name must not contain quotes or newlines");
    }
    let player_count = tree.players.len();
    let player_in_range = |p: PlayerId| (p.index() as usize) <= player_count;

    // Node ids: identifier-safe and unique.
    let mut index: HashMap<&str, &GameNode> = HashMap::new();
    for node in &tree.nodes {
        if !is_identifier(&node.id) {
            report.error(&node.id, format!("invalid node id `{}`", node.id));
        }
        if index.insert(node.id.as_str(), node).is_some() {
            report.error(&node.id, format!("duplicate node id `{}`", node.id));
        }
    }

    // Root: declared, resolvable, and first.
    if tree.nodes.is_empty() {
        report.error("root", "game has no nodes");
        return report;
    }
    if !index.contains_key(tree.root.as_str()) {
        report.error(
            "root",
            format!("root `{}` is not a declared node", tree.root),
        );
        return report;
    }
    if tree.nodes[0].id != tree.root {
        report.error(
            "root",
            format!("root `{}` must be the first declared node", tree.root),
        );
    }

    // Edges: labels valid and unique per node, children declared,
    // decision nodes nonempty, terminals with one payoff per player.
    let mut parents: HashMap<&str, Vec<&str>> = HashMap::new();
    for node in &tree.nodes {
        match &node.kind {
            NodeKind::Decision { owner, edges, .. } => {
                if !player_in_range(*owner) {
                    report.error(
                        &node.id,
                        format!(
                            "node `{}` belongs to player {}; game has {player_count} players",
                            node.id,
                            owner.index()
                        ),
                    );
                }
                if edges.is_empty() {
                    report.error(&node.id, format!("decision node `{}` has no actions", node.id));
                }
                let mut labels = HashSet::new();
                for (label, child) in edges {
                    if !is_identifier(label) {
                        report.error(&node.id, format!("invalid action label `{label}`"));
                    } else if !labels.insert(label) {
                        report.error(
                            &node.id,
                            format!("node `{}` declares action `{label}` twice", node.id),
                        );
                    }
                    if index.contains_key(child.as_str()) {
                        parents.entry(child.as_str()).or_default().push(&node.id);
                    } else {
                        report.error(
                            &node.id,
                            format!(
                                "action `{label}` of node `{}` targets undeclared node `{child}`",
                                node.id
                            ),
                        );
                    }
                }
            }
            NodeKind::Terminal { payoffs } => {
                if payoffs.len() != player_count {
                    report.error(
                        &node.id,
                        format!(
                            "terminal `{}` lists {} payoffs; expected {player_count}",
                            node.id,
                            payoffs.len()
                        ),
                    );
                }
            }
        }
    }

    // Tree shape: the root has no parent, everything else exactly one,
    // and every node is reachable from the root.
    for node in &tree.nodes {
        let n = parents.get(node.id.as_str()).map_or(0, |p| p.len());
        if node.id == tree.root {
            if n > 0 {
                report.error(&node.id, "the root node has an incoming edge");
            }
        } else if n > 1 {
            report.error(
                &node.id,
                format!("node `{}` is the target of {n} edges; a tree allows one", node.id),
            );
        }
    }
    let mut reachable: HashSet<&str> = HashSet::new();
    let mut queue = vec![tree.root.as_str()];
    while let Some(id) = queue.pop() {
        if !reachable.insert(id) {
            continue;
        }
        if let Some(GameNode {
            kind: NodeKind::Decision { edges, .. },
            ..
        }) = index.get(id)
        {
            for (_, child) in edges {
                if index.contains_key(child.as_str()) {
                    queue.push(child);
                }
            }
        }
    }
    for node in &tree.nodes {
        if !reachable.contains(node.id.as_str()) {
            report.error(
                &node.id,
                format!("node `{}` is not reachable from the root", node.id),
            );
        }
    }

    // Information sets: ids unique, owners in range, members declared
    // decision nodes of the owner with identical ordered actions, every
    // decision node in exactly one set, members never ancestors of
    // each other.
    let mut infoset_ids = HashSet::new();
    for set in &tree.infosets {
        if !is_identifier(&set.id) {
            report.error(&set.id, format!("invalid infoset id `{}`", set.id));
        }
        if !infoset_ids.insert(set.id.as_str()) {
            report.error(&set.id, format!("duplicate infoset id `{}`", set.id));
        }
    }
    let mut membership: HashMap<&str, &str> = HashMap::new(); // node id -> infoset id
    for set in &tree.infosets {
        if !player_in_range(set.owner) {
            report.error(
                &set.id,
                format!(
                    "infoset `{}` belongs to player {}; game has {player_count} players",
                    set.id,
                    set.owner.index()
                ),
            );
        }
        if set.members.is_empty() {
            report.error(&set.id, format!("infoset `{}` has no member nodes", set.id));
        }
        let mut action_set = HashSet::new();
        for label in &set.actions {
            if !is_identifier(label) {
                report.error(&set.id, format!("invalid action label `{label}`"));
            } else if !action_set.insert(label) {
                report.error(
                    &set.id,
                    format!("infoset `{}` lists action `{label}` twice", set.id),
                );
            }
        }
        for member in &set.members {
            if let Some(prev) = membership.insert(member, &set.id) {
                report.error(
                    member,
                    format!("node `{member}` appears in infosets `{prev}` and `{}`", set.id),
                );
            }
            let Some(node) = index.get(member.as_str()) else {
                report.error(
                    &set.id,
                    format!("infoset `{}` lists undeclared node `{member}`", set.id),
                );
                continue;
            };
            match &node.kind {
                NodeKind::Terminal { .. } => {
                    report.error(
                        &set.id,
                        format!("infoset `{}` lists terminal node `{member}`", set.id),
                    );
                }
                NodeKind::Decision { owner, infoset, edges } => {
                    if *owner != set.owner {
                        report.error(
                            member,
                            format!(
                                "node `{member}` is owned by {} but belongs to infoset `{}` of {}",
                                *owner, set.id, set.owner
                            ),
                        );
                    }
                    if *infoset != set.id {
                        report.error(
                            member,
                            format!(
                                "node `{member}` names infoset `{infoset}` but is listed in `{}`",
                                set.id
                            ),
                        );
                    }
                    let labels: Vec<&ActionLabel> = edges.iter().map(|(l, _)| l).collect();
                    let expected: Vec<&ActionLabel> = set.actions.iter().collect();
                    if labels != expected {
                        let mut a = labels.clone();
                        let mut b = expected.clone();
                        a.sort();
                        b.sort();
                        let kind = if a == b { "order" } else { "set" };
                        report.error(
                            &set.id,
                            format!(
                                "action {kind} mismatch in infoset `{}`: node `{member}` declares [{}], infoset expects [{}]",
                                set.id,
                                labels.iter().map(|l| l.as_str()).collect::<Vec<_>>().join(", "),
                                expected.iter().map(|l| l.as_str()).collect::<Vec<_>>().join(", "),
                            ),
                        );
                    }
                }
            }
        }
    }
    for node in &tree.nodes {
        if let NodeKind::Decision { infoset, .. } = &node.kind {
            match membership.get(node.id.as_str()) {
                Some(set) if *set == infoset.as_str() => {}
                Some(_) => {} // mismatch already reported above
                None => {
                    if infoset_ids.contains(infoset.as_str()) {
                        report.error(
                            &node.id,
                            format!(
                                "node `{}` names infoset `{infoset}` but is not among its members",
                                node.id
                            ),
                        );
                    } else {
                        report.error(
                            &node.id,
                            format!(
                                "node `{}` references undeclared infoset `{infoset}`",
                                node.id
                            ),
                        );
                    }
                }
            }
        }
    }
    // Members must follow node declaration order; the file format derives
    // membership from the node list, so any other order cannot survive a
    // serialize/parse round trip.
    let node_pos: HashMap<&str, usize> = tree
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.id.as_str(), i))
        .collect();
    for set in &tree.infosets {
        let positions: Vec<usize> = set
            .members
            .iter()
            .filter_map(|m| node_pos.get(m.as_str()).copied())
            .collect();
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            report.error(
                &set.id,
                format!(
                    "infoset `{}` lists members out of node declaration order",
                    set.id
                ),
            );
        }
    }

    // Ancestry: walk up via parent links (single parents only; duplicate
    // parents were already reported).
    let parent_of: HashMap<&str, &str> = parents
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, v)| (*k, v[0]))
        .collect();
    for set in &tree.infosets {
        for member in &set.members {
            let mut cursor = member.as_str();
            let mut hops = 0;
            while let Some(parent) = parent_of.get(cursor) {
                cursor = parent;
                hops += 1;
                if hops > tree.nodes.len() {
                    break; // cyclic; reachability errors cover this
                }
                if set.members.iter().any(|m| m.as_str() == cursor) {
                    report.error(
                        &set.id,
                        format!(
                            "infoset `{}` contains node `{cursor}` and its descendant `{member}`",
                            set.id
                        ),
                    );
                    break;
                }
            }
        }
    }

    report
}

/// True when every information set has exactly one member, i.e. both
/// players always know exactly where in the tree they stand.
pub fn is_perfect_information(tree: &GameTree) -> bool {
    tree.infosets.iter().all(|s| s.members.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A two-level tree: P1 chooses a/b, after a P2 chooses x/y.
    fn small_tree() -> GameTree {
        GameTree {
            name: "small".into(),
            players: vec!["A1".into(), "A2".into()],
            root: "r".into(),
            nodes: vec![
                GameNode {
                    id: "r".into(),
                    kind: NodeKind::Decision {
                        owner: PlayerId::P1,
                        infoset: "r".into(),
                        edges: vec![("a".into(), "m".into()), ("b".into(), "t0".into())],
                    },
                },
                GameNode {
                    id: "m".into(),
                    kind: NodeKind::Decision {
                        owner: PlayerId::P2,
                        infoset: "m".into(),
                        edges: vec![("x".into(), "t1".into()), ("y".into(), "t2".into())],
                    },
                },
                GameNode {
                    id: "t0".into(),
                    kind: NodeKind::Terminal {
                        payoffs: vec![Rational::from_integer(1), Rational::from_integer(1)],
                    },
                },
                GameNode {
                    id: "t1".into(),
                    kind: NodeKind::Terminal {
                        payoffs: vec![Rational::from_integer(2), Rational::from_integer(0)],
                    },
                },
                GameNode {
                    id: "t2".into(),
                    kind: NodeKind::Terminal {
                        payoffs: vec![Rational::from_integer(0), Rational::from_integer(2)],
                    },
                },
            ],
            infosets: vec![
                InformationSet {
                    id: "r".into(),
                    owner: PlayerId::P1,
                    members: vec!["r".into()],
                    actions: vec!["a".into(), "b".into()],
                },
                InformationSet {
                    id: "m".into(),
                    owner: PlayerId::P2,
                    members: vec!["m".into()],
                    actions: vec!["x".into(), "y".into()],
                },
            ],
        }
    }

    #[test]
    fn valid_tree_passes() {
        let report = validate_tree(&small_tree());
        assert!(report.ok(), "unexpected diagnostics: {:?}", report.diagnostics);
        assert!(report.diagnostics.is_empty());
        assert!(is_perfect_information(&small_tree()));
    }

    #[test]
    fn player_id_basics() {
        assert_eq!(PlayerId::P1.index(), 1);
        assert_eq!(PlayerId::P1.offset(), 0);
        assert_eq!(PlayerId::P2.opponent(), PlayerId::P1);
        assert_eq!(PlayerId::new(2), PlayerId::P2);
        assert_eq!(PlayerId::P2.to_string(), "player 2");
    }

    #[test]
    #[should_panic(expected = "1-based")]
    fn player_id_rejects_zero() {
        PlayerId::new(0);
    }

    #[test]
    fn dangling_child_is_reported() {
        let mut tree = small_tree();
        if let NodeKind::Decision { edges, .. } = &mut tree.nodes[0].kind {
            edges[1].1 = "t9".into();
        }
        let report = validate_tree(&tree);
        assert!(!report.ok());
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("undeclared node `t9`")));
        // t0 also becomes unreachable.
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("`t0` is not reachable")));
    }

    #[test]
    fn duplicate_node_id_is_reported() {
        let mut tree = small_tree();
        tree.nodes[4].id = "t1".into();
        let report = validate_tree(&tree);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("duplicate node id `t1`")));
    }

    #[test]
    fn second_parent_is_reported() {
        let mut tree = small_tree();
        if let NodeKind::Decision { edges, .. } = &mut tree.nodes[1].kind {
            edges[1].1 = "t1".into(); // t1 now has two parents, t2 none
        }
        let report = validate_tree(&tree);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("target of 2 edges")));
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("`t2` is not reachable")));
    }

    #[test]
    fn root_must_come_first() {
        let mut tree = small_tree();
        tree.nodes.swap(0, 1);
        let report = validate_tree(&tree);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("must be the first declared node")));
    }

    #[test]
    fn wrong_payoff_arity_is_reported() {
        let mut tree = small_tree();
        if let NodeKind::Terminal { payoffs } = &mut tree.nodes[2].kind {
            payoffs.push(Rational::from_integer(3));
        }
        let report = validate_tree(&tree);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("lists 3 payoffs; expected 2")));
    }

    #[test]
    fn action_order_mismatch_is_reported() {
        // Two nodes share an infoset but declare (x,y) vs (y,x).
        let mut tree = small_tree();
        if let NodeKind::Decision { edges, infoset, .. } = &mut tree.nodes[0].kind {
            *infoset = "m".into();
            edges[0].0 = "y".into();
            edges[1].0 = "x".into();
        }
        tree.infosets.remove(0);
        tree.infosets[0].members = vec!["r".into(), "m".into()];
        tree.infosets[0].owner = PlayerId::P1;
        // Lift the owner mismatch on `m` out of the way for this test.
        if let NodeKind::Decision { owner, .. } = &mut tree.nodes[1].kind {
            *owner = PlayerId::P1;
        }
        let report = validate_tree(&tree);
        assert!(
            report
                .diagnostics
                .iter()
                .any(|d| d.message.contains("action order mismatch in infoset `m`")),
            "diagnostics: {:?}",
            report.diagnostics
        );
    }

    #[test]
    fn infoset_with_ancestor_member_is_reported() {
        let mut tree = small_tree();
        // Put r and its child m into one set with matching action labels.
        if let NodeKind::Decision { edges, infoset, .. } = &mut tree.nodes[0].kind {
            *infoset = "m".into();
            edges[0].0 = "x".into();
            edges[1].0 = "y".into();
        }
        if let NodeKind::Decision { owner, .. } = &mut tree.nodes[1].kind {
            *owner = PlayerId::P1;
        }
        tree.infosets.remove(0);
        tree.infosets[0].members = vec!["r".into(), "m".into()];
        tree.infosets[0].owner = PlayerId::P1;
        tree.infosets[0].actions = vec!["x".into(), "y".into()];
        let report = validate_tree(&tree);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("and its descendant")));
        assert!(!is_perfect_information(&tree));
    }

    #[test]
    fn empty_infoset_is_reported() {
        let mut tree = small_tree();
        tree.infosets.push(InformationSet {
            id: "lonely".into(),
            owner: PlayerId::P1,
            members: vec![],
            actions: vec!["a".into()],
        });
        let report = validate_tree(&tree);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("`lonely` has no member nodes")));
    }

    #[test]
    fn three_players_are_rejected() {
        let mut tree = small_tree();
        tree.players.push("A3".into());
        let report = validate_tree(&tree);
        // Payoff arity errors follow from the player count change.
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.message.contains("exactly two are supported")));
    }

    #[test]
    fn duplicate_player_name_is_a_warning_only() {
        let mut tree = small_tree();
        tree.players[1] = "A1".into();
        let report = validate_tree(&tree);
        assert!(report.ok());
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.severity == Severity::Warning));
    }

    #[test]
    fn identifier_charset() {
        assert!(is_identifier("SS"));
        assert!(is_identifier("n0"));
        assert!(is_identifier("S,P"));
        assert!(is_identifier("-"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("a b"));
        assert!(!is_identifier("a:b"));
        assert!(!is_identifier("a=b"));
        assert!(!is_identifier("a#b"));
        assert!(is_identifier("a-b"));
        assert!(is_identifier("x->y"));
    }

    #[test]
    fn model_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<GameTree>();
        assert_send_sync::<NormalFormGame>();
        assert_send_sync::<ValidationReport>();
    }

    #[test]
    fn normal_form_check_catches_shape_errors() {
        let mut game = NormalFormGame {
            name: "g".into(),
            players: vec!["A1".into(), "A2".into()],
            strategies: vec![vec!["a".into(), "b".into()], vec!["x".into()]],
            payoffs: vec![
                vec![(Rational::from_integer(1), Rational::from_integer(2))],
                vec![(Rational::from_integer(3), Rational::from_integer(4))],
            ],
        };
        assert!(game.check().is_ok());
        game.payoffs.pop();
        assert!(game.check().unwrap_err().contains("payoff matrix has 1 rows"));
        game.strategies[1].push("x".into());
        assert!(game.check().unwrap_err().contains("duplicate column label"));
    }

    #[test]
    fn terminal_only_tree_is_perfect_information() {
        let tree = GameTree {
            name: "done".into(),
            players: vec!["A1".into(), "A2".into()],
            root: "t".into(),
            nodes: vec![GameNode {
                id: "t".into(),
                kind: NodeKind::Terminal {
                    payoffs: vec![Rational::from_integer(5), Rational::from_integer(5)],
                },
            }],
            infosets: vec![],
        };
        assert!(validate_tree(&tree).ok());
        assert!(is_perfect_information(&tree));
    }
}
