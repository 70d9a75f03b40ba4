//! Shared helpers for the integration suites: fixture loading and seeded
//! random-game generators. Every generator takes the caller's RNG so each
//! test pins its own seed and stays reproducible.
#![allow(dead_code)] // each test binary uses a different subset

use gamekit::model::validate_tree;
use gamekit::{
    GameNode, GameTree, InformationSet, NodeKind, NormalFormGame, PlayerId, Rational,
};
use rand::prelude::*;

pub fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_tree(name: &str) -> GameTree {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    gamekit::gdt::parse_extensive(&text).unwrap()
}

pub fn fixture_matrix(name: &str) -> NormalFormGame {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    gamekit::gdt::parse_normal(&text).unwrap()
}

const ACTION_NAMES: [&str; 3] = ["a", "b", "c"];

struct TreeBuilder {
    nodes: Vec<GameNode>,
    infosets: Vec<InformationSet>,
    decisions: usize,
    terminals: usize,
}

fn grow(builder: &mut TreeBuilder, rng: &mut impl Rng, depth: usize) -> String {
    if depth >= 3 || (depth > 0 && rng.gen_bool(0.35)) {
        let id = format!("t{}", builder.terminals);
        builder.terminals += 1;
        let payoffs = vec![
            Rational::from_integer(rng.gen_range(-9..=9)),
            Rational::from_integer(rng.gen_range(-9..=9)),
        ];
        builder.nodes.push(GameNode {
            id: id.clone(),
            kind: NodeKind::Terminal { payoffs },
        });
        return id;
    }
    let id = format!("n{}", builder.decisions);
    builder.decisions += 1;
    let owner = if rng.gen_bool(0.5) {
        PlayerId::P1
    } else {
        PlayerId::P2
    };
    let arity = rng.gen_range(2..=3);
    let labels: Vec<String> = ACTION_NAMES[..arity].iter().map(|s| s.to_string()).collect();

    // Reserve this node's preorder slot before recursing, so `nodes`
    // starts with the root and parents precede children.
    let slot = builder.nodes.len();
    builder.nodes.push(GameNode {
        id: id.clone(),
        kind: NodeKind::Terminal { payoffs: vec![] },
    });
    builder.infosets.push(InformationSet {
        id: id.clone(),
        owner,
        members: vec![id.clone()],
        actions: labels.clone(),
    });

    let edges = labels
        .into_iter()
        .map(|label| {
            let child = grow(builder, rng, depth + 1);
            (label, child)
        })
        .collect();
    builder.nodes[slot] = GameNode {
        id: id.clone(),
        kind: NodeKind::Decision {
            owner,
            infoset: id.clone(),
            edges,
        },
    };
    id
}

/// A random perfect-information tree: depth ≤ 3, two or three actions per
/// node, integer payoffs in −9..=9, every information set a singleton.
pub fn random_perfect_tree(rng: &mut impl Rng) -> GameTree {
    let mut builder = TreeBuilder {
        nodes: Vec::new(),
        infosets: Vec::new(),
        decisions: 0,
        terminals: 0,
    };
    grow(&mut builder, rng, 0);
    let tree = GameTree {
        name: "random".to_string(),
        players: vec!["A".to_string(), "B".to_string()],
        root: "n0".to_string(),
        nodes: builder.nodes,
        infosets: builder.infosets,
    };
    assert!(validate_tree(&tree).ok(), "generator produced an invalid tree");
    tree
}

/// A random tree that may share information sets between decision nodes
/// of one owner with identical action lists (never between a node and its
/// descendant). Roughly half the results shuffle their information-set
/// list to exercise serializer orderings.
pub fn random_tree(rng: &mut impl Rng) -> GameTree {
    let mut tree = random_perfect_tree(rng);

    let node_index: std::collections::HashMap<String, usize> = tree
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.id.clone(), i))
        .collect();
    let descends = |a: &str, b: &str| -> bool {
        // true iff b lies strictly below a
        let mut stack = vec![a.to_string()];
        while let Some(id) = stack.pop() {
            if let NodeKind::Decision { edges, .. } = &tree.node(&id).unwrap().kind {
                for (_, child) in edges {
                    if child == b {
                        return true;
                    }
                    stack.push(child.clone());
                }
            }
        }
        false
    };

    // Group decision nodes by (owner, action list); only such nodes can
    // ever share an information set.
    let mut groups: std::collections::BTreeMap<(u32, Vec<String>), Vec<String>> =
        std::collections::BTreeMap::new();
    for node in &tree.nodes {
        if let NodeKind::Decision { owner, edges, .. } = &node.kind {
            let actions: Vec<String> = edges.iter().map(|(l, _)| l.clone()).collect();
            groups
                .entry((owner.index(), actions))
                .or_default()
                .push(node.id.clone());
        }
    }

    let mut merged: Vec<InformationSet> = Vec::new();
    let mut absorbed: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut next_set = 0;
    for ((owner, actions), mut candidates) in groups {
        if candidates.len() < 2 || !rng.gen_bool(0.6) {
            continue;
        }
        candidates.shuffle(rng);
        let mut members: Vec<String> = Vec::new();
        for candidate in candidates {
            let related = members
                .iter()
                .any(|m| descends(m, &candidate) || descends(&candidate, m));
            if !related {
                members.push(candidate);
            }
        }
        if members.len() < 2 {
            continue;
        }
        members.sort_by_key(|id| node_index[id]);
        absorbed.extend(members.iter().cloned());
        merged.push(InformationSet {
            id: format!("i{next_set}"),
            owner: PlayerId::new(owner),
            members,
            actions,
        });
        next_set += 1;
    }

    if !merged.is_empty() {
        let new_field: std::collections::HashMap<String, String> = merged
            .iter()
            .flat_map(|set| set.members.iter().map(|m| (m.clone(), set.id.clone())))
            .collect();
        for node in &mut tree.nodes {
            if let NodeKind::Decision { infoset, .. } = &mut node.kind {
                if let Some(new_id) = new_field.get(&node.id) {
                    *infoset = new_id.clone();
                }
            }
        }
        let singletons = tree
            .infosets
            .iter()
            .filter(|s| !absorbed.contains(&s.id))
            .cloned();
        let mut infosets: Vec<InformationSet> = merged.into_iter().chain(singletons).collect();
        if rng.gen_bool(0.5) {
            infosets.shuffle(rng);
        }
        tree.infosets = infosets;
    }

    assert!(validate_tree(&tree).ok(), "merge produced an invalid tree");
    tree
}

/// A random matrix game with the given dimensions and integer payoffs
/// in −9..=9.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> NormalFormGame {
    let payoffs = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    (
                        Rational::from_integer(rng.gen_range(-9..=9)),
                        Rational::from_integer(rng.gen_range(-9..=9)),
                    )
                })
                .collect()
        })
        .collect();
    let game = NormalFormGame {
        name: "m".to_string(),
        players: vec!["A".to_string(), "B".to_string()],
        strategies: vec![
            (0..rows).map(|r| format!("r{r}")).collect(),
            (0..cols).map(|c| format!("c{c}")).collect(),
        ],
        payoffs,
    };
    game.check().expect("generator produced an invalid game");
    game
}

/// A random 2×2 or 2×3 integer game whose support enumeration finds no
/// degenerate component, regenerating until one qualifies.
pub fn random_nondegenerate_small(rng: &mut impl Rng) -> NormalFormGame {
    loop {
        let cols = rng.gen_range(2..=3);
        let game = random_matrix(rng, 2, cols);
        if gamekit::solver::mixed_nash_2p(&game)
            .iter()
            .all(|o| !o.is_degenerate())
        {
            return game;
        }
    }
}
