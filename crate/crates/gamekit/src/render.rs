//! Human-readable views of games: Graphviz dot and indented-outline
//! renderings of trees, and an aligned table for matrices.

use std::fmt::Write;

use crate::model::{GameTree, NodeKind, NormalFormGame, Rational};

/// Output flavor for [`render_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    /// Graphviz `digraph` source.
    Dot,
    /// Plain-text indented outline.
    Ascii,
}

/// Knobs for [`render_tree`].
#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub format: RenderFormat,
    /// Mark information sets: dashed links between members in dot,
    /// `{id}` tags on decision lines in ascii.
    pub show_infosets: bool,
    /// Text appended to every payoff number, e.g. a currency unit.
    pub payoff_unit_suffix: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: RenderFormat::Ascii,
            show_infosets: false,
            payoff_unit_suffix: String::new(),
        }
    }
}

fn fmt_payoffs(payoffs: &[Rational], suffix: &str) -> String {
    let joined = payoffs
        .iter()
        .map(|p| format!("{p}{suffix}"))
        .collect::<Vec<_>>()
        .join(", ");
    format!("({joined})")
}

/// Renders a tree in the requested format. The result always ends with a
/// newline.
///
/// # Panics
/// Panics if the tree fails validation.
pub fn render_tree(tree: &GameTree, options: &RenderOptions) -> String {
    match options.format {
        RenderFormat::Dot => render_dot(tree, options),
        RenderFormat::Ascii => render_ascii(tree, options),
    }
}

fn render_dot(tree: &GameTree, options: &RenderOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", tree.name);
    for node in &tree.nodes {
        match &node.kind {
            NodeKind::Decision { owner, .. } => {
                let player = &tree.players[owner.offset()];
                let _ = writeln!(out, "  \"{}\" [label=\"{player}\"];", node.id);
            }
            NodeKind::Terminal { payoffs } => {
                let label = fmt_payoffs(payoffs, &options.payoff_unit_suffix);
                let _ = writeln!(out, "  \"{}\" [label=\"{label}\", shape=box];", node.id);
            }
        }
    }
    for node in &tree.nodes {
        if let NodeKind::Decision { edges, .. } = &node.kind {
            for (label, child) in edges {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{child}\" [label=\"{label}\"];",
                    node.id
                );
            }
        }
    }
    if options.show_infosets {
        for set in &tree.infosets {
            for pair in set.members.windows(2) {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [style=dashed, dir=none];",
                    pair[0], pair[1]
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

fn render_ascii(tree: &GameTree, options: &RenderOptions) -> String {
    let mut out = String::new();
    ascii_node(tree, options, &tree.root, None, 0, &mut out);
    out
}

fn ascii_node(
    tree: &GameTree,
    options: &RenderOptions,
    id: &str,
    via: Option<&str>,
    depth: usize,
    out: &mut String,
) {
    let indent = "  ".repeat(depth);
    let arrow = via.map(|label| format!("{label} -> ")).unwrap_or_default();
    let node = tree.node(id).expect("edges target declared nodes");
    match &node.kind {
        NodeKind::Terminal { payoffs } => {
            let cell = fmt_payoffs(payoffs, &options.payoff_unit_suffix);
            let _ = writeln!(out, "{indent}{arrow}{cell}");
        }
        NodeKind::Decision {
            owner,
            infoset,
            edges,
        } => {
            let player = &tree.players[owner.offset()];
            let tag = if options.show_infosets {
                format!(" {{{infoset}}}")
            } else {
                String::new()
            };
            let _ = writeln!(out, "{indent}{arrow}{player} [{id}]{tag}");
            for (label, child) in edges {
                ascii_node(tree, options, child, Some(label), depth + 1, out);
            }
        }
    }
}

/// Renders a matrix as an aligned table: row labels down the left,
/// column labels across the top, each cell `first,second`. Columns are
/// left-justified and separated by two spaces; no line carries trailing
/// whitespace. The result ends with a newline.
pub fn render_matrix(game: &NormalFormGame) -> String {
    let cell = |r: usize, c: usize| {
        let (a, b) = game.payoff(r, c);
        format!("{a},{b}")
    };
    let label_width = game.rows().iter().map(String::len).max().unwrap_or(0);
    let col_widths: Vec<usize> = game
        .cols()
        .iter()
        .enumerate()
        .map(|(c, label)| {
            (0..game.num_rows())
                .map(|r| cell(r, c).len())
                .max()
                .unwrap_or(0)
                .max(label.len())
        })
        .collect();

    let mut out = String::new();
    let mut line = format!("{:<label_width$}", "");
    for (c, label) in game.cols().iter().enumerate() {
        let _ = write!(line, "  {:<width$}", label, width = col_widths[c]);
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for (r, label) in game.rows().iter().enumerate() {
        let mut line = format!("{label:<label_width$}");
        for (c, &width) in col_widths.iter().enumerate() {
            let _ = write!(line, "  {:<width$}", cell(r, c));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
