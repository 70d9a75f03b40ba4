//! Acceptance gate: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Numbers are exact rationals throughout; every comparison below is
//! equality with zero tolerance.

mod common;

use std::collections::BTreeSet;
use std::process::Command;

use common::{fixture_path, fixture_tree, random_matrix, random_nondegenerate_small,
    random_perfect_tree, random_tree};
use gamekit::gdt::{parse_extensive, parse_normal, serialize_extensive};
use gamekit::normal::to_normal_form;
use gamekit::solver::{
    backward_induction, dominance, is_subgame_perfect, mixed_nash_2p, pure_nash, DominanceKind,
    MixedOutcome,
};
use gamekit::strategy::{enumerate_pure, StrategyProfile};
use gamekit::{NormalFormGame, PlayerId, Rational};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn cell(a: i64, b: i64) -> (Rational, Rational) {
    (int(a), int(b))
}

fn fixture_matrix(name: &str) -> NormalFormGame {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_normal(&text).unwrap()
}

/// Pure-Nash cells of `game` as (row label, column label) pairs.
fn nash_labels(game: &NormalFormGame) -> BTreeSet<(String, String)> {
    pure_nash(game)
        .iter()
        .map(|e| (game.rows()[e.row].clone(), game.cols()[e.col].clone()))
        .collect()
}

/// Builds a profile from the two players' strategy labels.
fn profile(tree: &gamekit::GameTree, first: &str, second: &str) -> StrategyProfile {
    let find = |player, label: &str| {
        enumerate_pure(tree, player)
            .into_iter()
            .find(|s| s.label() == label)
            .unwrap_or_else(|| panic!("no strategy labeled {label}"))
    };
    StrategyProfile::new(find(PlayerId::P1, first), find(PlayerId::P2, second))
}

#[test]
fn a01_normalize_fig1_reproduces_the_fig2_matrix() {
    let repo_root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let output = Command::new(env!("CARGO_BIN_EXE_gamekit"))
        .current_dir(repo_root)
        .args(["normalize", "fixtures/fig1.gdt"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    let game = parse_normal(&stdout).unwrap();
    assert_eq!(game.rows(), ["P", "S"]);
    assert_eq!(game.cols(), ["SS", "SP", "PS", "PP"]);
    let expected = [
        [cell(18, 2), cell(18, 2), cell(0, 0), cell(0, 0)],
        [cell(10, 6), cell(8, 8), cell(10, 6), cell(8, 8)],
    ];
    for (r, row) in expected.iter().enumerate() {
        for (c, &want) in row.iter().enumerate() {
            assert_eq!(game.payoff(r, c), want, "cell ({r}, {c})");
        }
    }
    assert_eq!(stdout, std::fs::read_to_string(fixture_path("fig2.gdt")).unwrap());
    println!("PASS: normalize fixtures/fig1.gdt prints the fig2 2x4 matrix exactly");
}

#[test]
fn a02_fig3_converts_to_fig4_with_the_second_agent_as_row_player() {
    let converted = to_normal_form(&fixture_tree("fig3.gdt"));
    assert_eq!(converted.players[0], "A2", "row player should be agent 2");
    assert_eq!(converted, fixture_matrix("fig4.gdt"));
    println!("PASS: fig3 converts to fig4 cell-for-cell with agent 2 as row player");
}

#[test]
fn a03_fig5_converts_to_fig6() {
    let converted = to_normal_form(&fixture_tree("fig5.gdt"));
    assert_eq!(converted.num_rows(), 2);
    assert_eq!(converted.num_cols(), 2);
    assert_eq!(converted, fixture_matrix("fig6.gdt"));
    println!("PASS: fig5 converts to the fig6 2x2 matrix exactly");
}

#[test]
fn a04_backward_induction_solves_fig1_and_fig3_uniquely() {
    let results = backward_induction(&fixture_tree("fig1.gdt")).unwrap();
    assert_eq!(results.len(), 1, "fig1 should have one solution");
    assert_eq!(results[0].profile.to_string(), "(P, SP)");
    assert_eq!(results[0].payoffs, cell(18, 2));

    let results = backward_induction(&fixture_tree("fig3.gdt")).unwrap();
    assert_eq!(results.len(), 1, "fig3 should have one solution");
    assert_eq!(results[0].payoffs, cell(8, 8));
    println!("PASS: backward induction gives one solution each: fig1 (P, SP) at (18, 2), fig3 at (8, 8)");
}

#[test]
fn a05_pure_nash_sets_match_on_all_three_matrices() {
    let expected: BTreeSet<(String, String)> = [("P", "SS"), ("P", "SP"), ("S", "PP")]
        .iter()
        .map(|&(r, c)| (r.to_string(), c.to_string()))
        .collect();
    assert_eq!(nash_labels(&fixture_matrix("fig2.gdt")), expected);
    assert_eq!(nash_labels(&fixture_matrix("fig4.gdt")), expected);

    let expected: BTreeSet<(String, String)> = [("S", "P"), ("P", "S")]
        .iter()
        .map(|&(r, c)| (r.to_string(), c.to_string()))
        .collect();
    assert_eq!(nash_labels(&fixture_matrix("fig6.gdt")), expected);
    println!("PASS: pure Nash sets are exactly {{(P,SS),(P,SP),(S,PP)}} twice and {{(S,P),(P,S)}}");
}

#[test]
fn a06_subgame_perfection_accepts_only_the_credible_profile() {
    let tree = fixture_tree("fig1.gdt");
    assert_eq!(is_subgame_perfect(&tree, &profile(&tree, "P", "SP")), Ok(true));
    assert_eq!(is_subgame_perfect(&tree, &profile(&tree, "S", "PP")), Ok(false));
    assert_eq!(is_subgame_perfect(&tree, &profile(&tree, "P", "SS")), Ok(false));
    println!("PASS: on the fig1 tree (P,SP) is subgame perfect; (S,PP) and (P,SS) are not");
}

#[test]
fn a07_fig6_has_the_half_half_mixed_equilibrium_plus_both_pure_ones() {
    let game = fixture_matrix("fig6.gdt");
    let outcomes = mixed_nash_2p(&game);
    let half = Rational::new(1, 2);
    let full = outcomes
        .iter()
        .filter_map(|o| match o {
            MixedOutcome::Equilibrium(eq) if eq.support.0.len() == 2 => Some(eq),
            _ => None,
        })
        .collect::<Vec<_>>();
    assert_eq!(full.len(), 1, "one fully mixed equilibrium");
    let eq = full[0];
    assert_eq!(eq.profile.strategy(PlayerId::P1).weights(), [half, half]);
    assert_eq!(eq.profile.strategy(PlayerId::P2).weights(), [half, half]);
    assert_eq!(eq.payoffs, cell(9, 4));

    let singletons: BTreeSet<(usize, usize)> = outcomes
        .iter()
        .filter_map(|o| match o {
            MixedOutcome::Equilibrium(eq) if eq.support.0.len() == 1 => {
                Some((eq.support.0[0], eq.support.1[0]))
            }
            _ => None,
        })
        .collect();
    let pure: BTreeSet<(usize, usize)> = pure_nash(&game).iter().map(|e| (e.row, e.col)).collect();
    assert_eq!(singletons, pure, "both pure equilibria appear as singleton supports");
    assert_eq!(outcomes.len(), 3);
    println!("PASS: fig6 mixed equilibrium is (1/2,1/2) vs (1/2,1/2) with payoffs (9, 4), beside both pure ones");
}

#[test]
fn a08_weak_dominance_on_fig2_reports_ss_dominated_by_sp() {
    let game = fixture_matrix("fig2.gdt");
    let ss = game.cols().iter().position(|c| c == "SS").unwrap();
    let sp = game.cols().iter().position(|c| c == "SP").unwrap();
    let found = dominance(&game, DominanceKind::Weak).iter().any(|r| {
        r.player == PlayerId::P2 && r.dominated == ss && r.dominator == sp
    });
    assert!(found, "expected: player 2's SS weakly dominated by SP");
    println!("PASS: weak dominance on fig2 reports SS dominated by SP for agent 2");
}

/// 9a: every backward-induction profile of a random perfect-information
/// tree sits in a matrix cell no unilateral deviation can improve.
fn spe_profiles_are_nash(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A01);
    for case in 0..cases {
        let tree = random_perfect_tree(&mut rng);
        let game = to_normal_form(&tree);
        for result in backward_induction(&tree).unwrap() {
            let s1 = result.profile.strategy(PlayerId::P1);
            let s2 = result.profile.strategy(PlayerId::P2);
            let r = game.rows().iter().position(|l| l == s1.label()).unwrap();
            let c = game.cols().iter().position(|l| l == s2.label()).unwrap();
            let (own1, own2) = game.payoff(r, c);
            for r2 in 0..game.num_rows() {
                assert!(game.payoff(r2, c).0 <= own1, "case {case}: row deviation gains");
            }
            for c2 in 0..game.num_cols() {
                assert!(game.payoff(r, c2).1 <= own2, "case {case}: column deviation gains");
            }
        }
    }
}

/// 9b: pure_nash agrees exactly with a freshly coded unilateral-deviation
/// scan over every cell.
fn pure_nash_survives_deviation_scan(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A02);
    for case in 0..cases {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let game = random_matrix(&mut rng, rows, cols);
        let mut scanned = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let stable_row = (0..rows).all(|r2| game.payoff(r2, c).0 <= game.payoff(r, c).0);
                let stable_col = (0..cols).all(|c2| game.payoff(r, c2).1 <= game.payoff(r, c).1);
                if stable_row && stable_col {
                    scanned.push((r, c));
                }
            }
        }
        let got: Vec<_> = pure_nash(&game).iter().map(|e| (e.row, e.col)).collect();
        assert_eq!(got, scanned, "case {case}");
    }
}

/// 9c: on nondegenerate 2×2 and 2×3 integer games, every reported mixed
/// equilibrium makes supported strategies exactly indifferent and leaves
/// unsupported ones at or below the support value.
fn mixed_results_satisfy_indifference(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A03);
    for case in 0..cases {
        let game = random_nondegenerate_small(&mut rng);
        for outcome in mixed_nash_2p(&game) {
            let MixedOutcome::Equilibrium(eq) = outcome else {
                panic!("case {case}: unexpected degenerate support");
            };
            let p = eq.profile.strategy(PlayerId::P1).weights();
            let q = eq.profile.strategy(PlayerId::P2).weights();
            let row_value = |r: usize| {
                (0..game.num_cols()).fold(int(0), |acc, c| acc + q[c] * game.payoff(r, c).0)
            };
            let col_value = |c: usize| {
                (0..game.num_rows()).fold(int(0), |acc, r| acc + p[r] * game.payoff(r, c).1)
            };
            let v1 = row_value(eq.support.0[0]);
            for r in 0..game.num_rows() {
                if eq.support.0.contains(&r) {
                    assert_eq!(row_value(r), v1, "case {case}: row {r}");
                } else {
                    assert!(row_value(r) <= v1, "case {case}: row {r}");
                }
            }
            let v2 = col_value(eq.support.1[0]);
            for c in 0..game.num_cols() {
                if eq.support.1.contains(&c) {
                    assert_eq!(col_value(c), v2, "case {case}: column {c}");
                } else {
                    assert!(col_value(c) <= v2, "case {case}: column {c}");
                }
            }
            assert_eq!(eq.payoffs, (v1, v2), "case {case}");
        }
    }
}

/// 9d: serializing any valid random tree and parsing it back returns the
/// identical tree.
fn round_trip_is_identity(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A04);
    for case in 0..cases {
        let tree = random_tree(&mut rng);
        let text = serialize_extensive(&tree);
        let back = parse_extensive(&text).unwrap_or_else(|e| panic!("case {case}: {e}\n{text}"));
        assert_eq!(back, tree, "case {case}");
    }
}

#[test]
fn a09_property_suite_holds_on_500_seeded_instances_each() {
    spe_profiles_are_nash(500);
    pure_nash_survives_deviation_scan(500);
    mixed_results_satisfy_indifference(500);
    round_trip_is_identity(500);
    println!(
        "PASS: 500-instance property runs: backward solutions deviation-proof, \
         pure Nash matches an independent scan, mixed results exactly indifferent \
         on support (and no better off it), parse/serialize is the identity"
    );
}

#[test]
fn a10_solve_output_is_deterministic_on_every_fixture() {
    for name in ["fig1.gdt", "fig2.gdt", "fig3.gdt", "fig4.gdt", "fig5.gdt", "fig6.gdt"] {
        let path = fixture_path(name);
        let invoke = || {
            let output = Command::new(env!("CARGO_BIN_EXE_gamekit"))
                .args(["solve", &path])
                .output()
                .unwrap();
            (output.status.code(), output.stdout, output.stderr)
        };
        let first = invoke();
        let second = invoke();
        assert_eq!(first.0, Some(0), "{name}");
        assert_eq!(first, second, "{name}: consecutive solve runs differ");
    }
    println!("PASS: two consecutive solve runs on each fixture are byte-identical");
}
