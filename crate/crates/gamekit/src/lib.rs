//! A toolkit for finite two-player games.
//!
//! The crate covers the full pipeline from a textual game description to
//! solved equilibria:
//!
//! * [`model`] — extensive-form trees, information sets, and normal-form
//!   matrices with exact rational payoffs.
//! * [`gdt`] — parser and serializer for the line-oriented GDT ("game
//!   description text") format.
//! * [`strategy`] — pure-strategy enumeration and profile play-out.
//! * [`normal`] — extensive-to-normal conversion and mixed strategies.
//! * [`solver`] — backward induction, pure and mixed Nash equilibria, and
//!   dominance relations.
//! * [`render`] — Graphviz dot and plain-text views of games.
//! * [`cli`] — the `gamekit` command-line front end.
//!
//! All payoff arithmetic uses exact rationals; every operation is
//! deterministic, so repeated runs produce identical output.
//!
//! # Example
//!
//! ```
//! use gamekit::gdt::parse_extensive;
//! use gamekit::normal::to_normal_form;
//! use gamekit::solver::{backward_induction, pure_nash};
//!
//! let tree = parse_extensive(
//!     r#"game "take-or-pass"
//! players: A B
//! node n0 player=1
//!   action t -> t0
//!   action p -> n1
//! node n1 player=2
//!   action t -> t1
//!   action p -> t2
//! terminal t0 payoffs=(1, 0)
//! terminal t1 payoffs=(0, 2)
//! terminal t2 payoffs=(3, 3)
//! "#,
//! )
//! .unwrap();
//!
//! // Player 2 prefers p at n1, so player 1 passes: payoffs (3, 3).
//! let solutions = backward_induction(&tree).unwrap();
//! assert_eq!(solutions.len(), 1);
//! assert_eq!(solutions[0].profile.to_string(), "(p, p)");
//!
//! // The induced matrix pits rows t/p against columns t/p.
//! let game = to_normal_form(&tree);
//! assert_eq!(game.rows(), ["t", "p"]);
//! assert!(pure_nash(&game)
//!     .iter()
//!     .any(|e| (game.rows()[e.row].as_str(), game.cols()[e.col].as_str()) == ("p", "p")));
//! ```

pub mod cli;
pub mod gdt;
pub mod model;
pub mod normal;
pub mod render;
pub mod solver;
pub mod strategy;

pub use model::{GameNode, GameTree, InformationSet, NodeKind, NormalFormGame, PlayerId, Rational};
