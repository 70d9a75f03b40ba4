//! Reader and writer for GDT ("game description text"), a line-oriented
//! format for finite two-player games.
//!
//! Two file kinds share the lexical rules — `#` starts a comment, blank
//! lines are skipped, indentation is cosmetic:
//!
//! ```text
//! game "left-or-right"            # extensive form
//! players: A1 A2
//! infoset i1 player=2             # declared sets group nodes
//! node n0 player=1                # first node is the root
//!   action L -> n1
//!   action R -> n2
//! node n1 player=2 infoset=i1
//!   action L -> t1
//!   action R -> t2
//! node n2 player=2 infoset=i1
//!   action L -> t3
//!   action R -> t4
//! terminal t1 payoffs=(2, 1)
//! terminal t2 payoffs=(0, 0)
//! terminal t3 payoffs=(0, 0)
//! terminal t4 payoffs=(1, 2)
//! ```
//!
//! A node without `infoset=` gets a fresh singleton set named after the
//! node. Payoffs are exact rationals (`3`, `-2`, `7/2`).
//!
//! ```text
//! nfgame "matching"               # normal (matrix) form
//! players: A1 A2
//! rows: H T
//! cols: H T
//! row H: (1,-1) (-1,1)
//! row T: (-1,1) (1,-1)
//! ```
//!
//! Parsing and serialization are inverse: for any tree or matrix that
//! passes validation, serializing and reparsing reproduces it exactly,
//! including declaration order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::model::{
    self, GameNode, GameTree, InformationSet, NodeKind, NormalFormGame, PlayerId, Rational,
};

/// A 1-based line/column position in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A parse failure: where it happened, what the parser wanted, what it saw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    fn new(span: SourceSpan, expected: impl Into<String>, found: impl Into<String>) -> ParseError {
        ParseError {
            span,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.span, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Result of parsing a file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameFile {
    Extensive(GameTree),
    Normal(NormalFormGame),
}

/// Parses a game file, dispatching on its `game`/`nfgame` header.
pub fn parse(src: &str) -> Result<GameFile, ParseError> {
    for (idx, raw) in src.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, idx + 1);
        let (keyword, span) = cur.token().expect("nonblank line has a token");
        return match keyword.as_str() {
            "game" => parse_extensive(src).map(GameFile::Extensive),
            "nfgame" => parse_normal(src).map(GameFile::Normal),
            other => Err(ParseError::new(
                span,
                "a `game` or `nfgame` header",
                format!("`{other}`"),
            )),
        };
    }
    Err(ParseError::new(
        SourceSpan { line: 1, column: 1 },
        "a `game` or `nfgame` header",
        "end of input",
    ))
}

/// Drops everything from the first `#` that is not inside quotes.
fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Character-level scanner over one line, tracking 1-based columns.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Cursor {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn span(&self) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.pos + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next whitespace-delimited token, if any.
    fn token(&mut self) -> Option<(String, SourceSpan)> {
        self.skip_ws();
        self.peek()?;
        let span = self.span();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if !c.is_whitespace()) {
            self.pos += 1;
        }
        Some((self.chars[start..self.pos].iter().collect(), span))
    }

    /// Next token, also terminated by `stop` (which is not consumed).
    /// May be empty when `stop` is the first non-blank character.
    fn token_until(&mut self, stop: char) -> (String, SourceSpan) {
        self.skip_ws();
        let span = self.span();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if !c.is_whitespace() && c != stop) {
            self.pos += 1;
        }
        (self.chars[start..self.pos].iter().collect(), span)
    }

    /// Errors unless only whitespace remains.
    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.token() {
            None => Ok(()),
            Some((t, span)) => Err(ParseError::new(span, "end of line", format!("`{t}`"))),
        }
    }
}

/// Reads one identifier token; `what` names it in error messages.
fn ident(cur: &mut Cursor, what: &str) -> Result<(String, SourceSpan), ParseError> {
    match cur.token() {
        None => Err(ParseError::new(cur.span(), what, "end of line")),
        Some((t, span)) => {
            if model::is_identifier(&t) {
                Ok((t, span))
            } else {
                Err(ParseError::new(span, what, format!("`{t}`")))
            }
        }
    }
}

/// Reads a double-quoted name (no escape sequences).
fn quoted(cur: &mut Cursor) -> Result<String, ParseError> {
    cur.skip_ws();
    let open = cur.span();
    match cur.bump() {
        Some('"') => {}
        Some(c) => return Err(ParseError::new(open, "a quoted name", format!("`{c}`"))),
        None => return Err(ParseError::new(open, "a quoted name", "end of line")),
    }
    let mut name = String::new();
    loop {
        match cur.bump() {
            Some('"') => return Ok(name),
            Some(c) => name.push(c),
            None => return Err(ParseError::new(open, "a closing `\"`", "end of line")),
        }
    }
}

/// Parses a `player=<index>` token.
fn player_value(token: &str, span: SourceSpan) -> Result<PlayerId, ParseError> {
    let Some(rest) = token.strip_prefix("player=") else {
        return Err(ParseError::new(
            span,
            "`player=<index>`",
            format!("`{token}`"),
        ));
    };
    match rest.parse::<u32>() {
        Ok(n) if n >= 1 => Ok(PlayerId::new(n)),
        _ => Err(ParseError::new(
            span,
            "a player index of 1 or more",
            format!("`{token}`"),
        )),
    }
}

/// Parses a rational literal: `3`, `-2`, or `7/2` (denominator positive).
fn rational(text: &str, span: SourceSpan) -> Result<Rational, ParseError> {
    let bad = || {
        ParseError::new(
            span,
            "a rational number like `3`, `-2`, or `7/2`",
            format!("`{text}`"),
        )
    };
    let body = text.strip_prefix('-').unwrap_or(text);
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if numer.is_empty() || !numer.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if let Some(d) = denom {
        if d.is_empty() || !d.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
    }
    let out_of_range = || {
        ParseError::new(
            span,
            "an integer small enough for 64 bits",
            format!("`{text}`"),
        )
    };
    let n: i64 = numer.parse().map_err(|_| out_of_range())?;
    let d: i64 = match denom {
        Some(d) => d.parse().map_err(|_| out_of_range())?,
        None => 1,
    };
    if d == 0 {
        return Err(ParseError::new(
            span,
            "a nonzero denominator",
            format!("`{text}`"),
        ));
    }
    let sign = if text.starts_with('-') { -1 } else { 1 };
    Ok(Rational::new(sign * n, d))
}

/// Consumes `lit` at the cursor (after whitespace) or reports what sat there.
fn expect_literal(cur: &mut Cursor, lit: &str) -> Result<(), ParseError> {
    cur.skip_ws();
    let save = cur.pos;
    let span = cur.span();
    for expected in lit.chars() {
        if cur.bump() != Some(expected) {
            cur.pos = save;
            let found = match cur.token() {
                Some((t, _)) => format!("`{t}`"),
                None => "end of line".to_string(),
            };
            return Err(ParseError::new(span, format!("`{lit}`"), found));
        }
    }
    Ok(())
}

/// Parses `(a, b, ...)` at the cursor; returns the values and the span of
/// the opening parenthesis.
fn paren_tuple(cur: &mut Cursor) -> Result<(Vec<Rational>, SourceSpan), ParseError> {
    cur.skip_ws();
    let open = cur.span();
    match cur.bump() {
        Some('(') => {}
        Some(c) => return Err(ParseError::new(open, "`(`", format!("`{c}`"))),
        None => return Err(ParseError::new(open, "`(`", "end of line")),
    }
    let mut values = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.span();
        let mut text = String::new();
        loop {
            match cur.peek() {
                Some(',') | Some(')') => break,
                Some(c) => {
                    text.push(c);
                    cur.pos += 1;
                }
                None => return Err(ParseError::new(open, "a closing `)`", "end of line")),
            }
        }
        values.push(rational(text.trim(), start)?);
        match cur.bump() {
            Some(',') => continue,
            _ => return Ok((values, open)),
        }
    }
}

/// One top-level declaration of an extensive-form file, in file order.
enum TopDecl {
    Infoset {
        id: String,
        owner: PlayerId,
    },
    Node {
        id: String,
        owner: PlayerId,
        infoset_ref: Option<(String, SourceSpan)>,
        edges: Vec<Edge>,
    },
    Terminal {
        id: String,
        payoffs: Vec<Rational>,
    },
}

struct Edge {
    label: String,
    child: String,
    child_span: SourceSpan,
}

/// Parses an extensive-form (`game`) file.
pub fn parse_extensive(src: &str) -> Result<GameTree, ParseError> {
    let mut name: Option<String> = None;
    let mut players: Option<(Vec<String>, SourceSpan)> = None;
    let mut decls: Vec<(TopDecl, SourceSpan)> = Vec::new();
    let mut line_count = 0;

    for (idx, raw) in src.lines().enumerate() {
        line_count = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, idx + 1);
        let (keyword, kw_span) = cur.token().expect("nonblank line has a token");

        if name.is_none() {
            if keyword != "game" {
                return Err(ParseError::new(
                    kw_span,
                    "a `game` header",
                    format!("`{keyword}`"),
                ));
            }
            name = Some(quoted(&mut cur)?);
            cur.expect_end()?;
            continue;
        }

        match keyword.as_str() {
            "players:" => {
                if players.is_some() {
                    return Err(ParseError::new(
                        kw_span,
                        "a single `players:` line",
                        "`players:`",
                    ));
                }
                let mut names = Vec::new();
                while let Some((t, span)) = cur.token() {
                    if !model::is_identifier(&t) {
                        return Err(ParseError::new(span, "a player name", format!("`{t}`")));
                    }
                    names.push(t);
                }
                players = Some((names, kw_span));
            }
            "infoset" | "node" | "terminal" | "action" if players.is_none() => {
                return Err(ParseError::new(
                    kw_span,
                    "a `players:` line before declarations",
                    format!("`{keyword}`"),
                ));
            }
            "infoset" => {
                let (id, _) = ident(&mut cur, "an infoset id")?;
                let (token, span) = match cur.token() {
                    Some(t) => t,
                    None => {
                        return Err(ParseError::new(
                            cur.span(),
                            "`player=<index>`",
                            "end of line",
                        ))
                    }
                };
                let owner = player_value(&token, span)?;
                cur.expect_end()?;
                decls.push((TopDecl::Infoset { id, owner }, kw_span));
            }
            "node" => {
                let (id, _) = ident(&mut cur, "a node id")?;
                let (token, span) = match cur.token() {
                    Some(t) => t,
                    None => {
                        return Err(ParseError::new(
                            cur.span(),
                            "`player=<index>`",
                            "end of line",
                        ))
                    }
                };
                let owner = player_value(&token, span)?;
                let mut infoset_ref = None;
                while let Some((t, span)) = cur.token() {
                    let Some(rest) = t.strip_prefix("infoset=") else {
                        return Err(ParseError::new(
                            span,
                            "`infoset=<id>` or end of line",
                            format!("`{t}`"),
                        ));
                    };
                    if infoset_ref.is_some() {
                        return Err(ParseError::new(
                            span,
                            "a single `infoset=` reference",
                            format!("`{t}`"),
                        ));
                    }
                    if !model::is_identifier(rest) {
                        return Err(ParseError::new(span, "an infoset id", format!("`{t}`")));
                    }
                    infoset_ref = Some((rest.to_string(), span));
                }
                decls.push((
                    TopDecl::Node {
                        id,
                        owner,
                        infoset_ref,
                        edges: Vec::new(),
                    },
                    kw_span,
                ));
            }
            "action" => {
                let (label, _) = ident(&mut cur, "an action label")?;
                match cur.token() {
                    Some((arrow, _)) if arrow == "->" => {}
                    Some((t, span)) => {
                        return Err(ParseError::new(span, "`->`", format!("`{t}`")))
                    }
                    None => return Err(ParseError::new(cur.span(), "`->`", "end of line")),
                }
                let (child, child_span) = ident(&mut cur, "a target node id")?;
                cur.expect_end()?;
                match decls.last_mut() {
                    Some((TopDecl::Node { edges, .. }, _)) => edges.push(Edge {
                        label,
                        child,
                        child_span,
                    }),
                    _ => {
                        return Err(ParseError::new(
                            kw_span,
                            "a preceding `node` declaration",
                            "`action`",
                        ))
                    }
                }
            }
            "terminal" => {
                let (id, _) = ident(&mut cur, "a terminal id")?;
                expect_literal(&mut cur, "payoffs=")?;
                let (payoffs, _) = paren_tuple(&mut cur)?;
                cur.expect_end()?;
                decls.push((TopDecl::Terminal { id, payoffs }, kw_span));
            }
            other => {
                return Err(ParseError::new(
                    kw_span,
                    "`players:`, `infoset`, `node`, `action`, or `terminal`",
                    format!("`{other}`"),
                ));
            }
        }
    }

    let eof = SourceSpan {
        line: line_count + 1,
        column: 1,
    };
    let Some(name) = name else {
        return Err(ParseError::new(
            SourceSpan { line: 1, column: 1 },
            "a `game` header",
            "end of input",
        ));
    };
    let Some((players, players_span)) = players else {
        return Err(ParseError::new(eof, "a `players:` line", "end of input"));
    };
    if !decls
        .iter()
        .any(|(d, _)| matches!(d, TopDecl::Node { .. } | TopDecl::Terminal { .. }))
    {
        return Err(ParseError::new(
            eof,
            "at least one `node` or `terminal` declaration",
            "end of input",
        ));
    }
    assemble(name, players, players_span, decls)
}

/// Builds and validates the tree once all declarations are read.
fn assemble(
    name: String,
    players: Vec<String>,
    players_span: SourceSpan,
    decls: Vec<(TopDecl, SourceSpan)>,
) -> Result<GameTree, ParseError> {
    let mut node_ids: HashSet<&str> = HashSet::new();
    let mut explicit_ids: HashSet<&str> = HashSet::new();
    for (decl, _) in &decls {
        match decl {
            TopDecl::Node { id, .. } | TopDecl::Terminal { id, .. } => {
                node_ids.insert(id);
            }
            TopDecl::Infoset { id, .. } => {
                explicit_ids.insert(id);
            }
        }
    }

    // Dangling references get parse-level errors with precise spans.
    for (decl, _) in &decls {
        if let TopDecl::Node {
            edges, infoset_ref, ..
        } = decl
        {
            for edge in edges {
                if !node_ids.contains(edge.child.as_str()) {
                    return Err(ParseError::new(
                        edge.child_span,
                        "a declared node id",
                        format!("undeclared node id `{}`", edge.child),
                    ));
                }
            }
            if let Some((r, span)) = infoset_ref {
                if !explicit_ids.contains(r.as_str()) {
                    return Err(ParseError::new(
                        *span,
                        "a declared infoset id",
                        format!("undeclared infoset id `{r}`"),
                    ));
                }
            }
        }
    }

    // Information sets in creation order: declared sets at their lines,
    // automatic singletons at the node lines that omit `infoset=`.
    let mut infosets: Vec<InformationSet> = Vec::new();
    for (decl, _) in &decls {
        match decl {
            TopDecl::Infoset { id, owner } => infosets.push(InformationSet {
                id: id.clone(),
                owner: *owner,
                members: Vec::new(),
                actions: Vec::new(),
            }),
            TopDecl::Node {
                id,
                owner,
                infoset_ref: None,
                edges,
            } => infosets.push(InformationSet {
                id: id.clone(),
                owner: *owner,
                members: vec![id.clone()],
                actions: edges.iter().map(|e| e.label.clone()).collect(),
            }),
            _ => {}
        }
    }
    for (decl, _) in &decls {
        if let TopDecl::Node {
            id,
            infoset_ref: Some((r, _)),
            edges,
            ..
        } = decl
        {
            let set = infosets
                .iter_mut()
                .find(|s| s.id == *r)
                .expect("reference checked above");
            set.members.push(id.clone());
            if set.actions.is_empty() {
                set.actions = edges.iter().map(|e| e.label.clone()).collect();
            }
        }
    }

    let mut spans: HashMap<String, SourceSpan> = HashMap::new();
    spans.insert("tree".into(), SourceSpan { line: 1, column: 1 });
    spans.insert("players".into(), players_span);
    let mut root = None;
    let mut nodes = Vec::new();
    for (decl, span) in &decls {
        match decl {
            TopDecl::Node {
                id,
                owner,
                infoset_ref,
                edges,
            } => {
                spans.entry(id.clone()).or_insert(*span);
                root.get_or_insert_with(|| id.clone());
                nodes.push(GameNode {
                    id: id.clone(),
                    kind: NodeKind::Decision {
                        owner: *owner,
                        infoset: infoset_ref
                            .as_ref()
                            .map(|(r, _)| r.clone())
                            .unwrap_or_else(|| id.clone()),
                        edges: edges
                            .iter()
                            .map(|e| (e.label.clone(), e.child.clone()))
                            .collect(),
                    },
                });
            }
            TopDecl::Terminal { id, payoffs } => {
                spans.entry(id.clone()).or_insert(*span);
                root.get_or_insert_with(|| id.clone());
                nodes.push(GameNode {
                    id: id.clone(),
                    kind: NodeKind::Terminal {
                        payoffs: payoffs.clone(),
                    },
                });
            }
            TopDecl::Infoset { id, .. } => {
                spans.entry(id.clone()).or_insert(*span);
            }
        }
    }
    let root = root.expect("presence of nodes checked by caller");
    let root_span = spans
        .get(&root)
        .copied()
        .unwrap_or(SourceSpan { line: 1, column: 1 });
    spans.entry("root".into()).or_insert(root_span);

    let tree = GameTree {
        name,
        players,
        root,
        nodes,
        infosets,
    };
    let report = model::validate_tree(&tree);
    if !report.ok() {
        let d = report.errors()[0].clone();
        let span = spans
            .get(&d.subject)
            .copied()
            .unwrap_or(SourceSpan { line: 1, column: 1 });
        return Err(ParseError::new(
            span,
            "a structurally valid game",
            d.message,
        ));
    }
    Ok(tree)
}

/// Parses a normal-form (`nfgame`) file.
pub fn parse_normal(src: &str) -> Result<NormalFormGame, ParseError> {
    let mut name: Option<String> = None;
    let mut players: Option<Vec<String>> = None;
    let mut rows: Option<Vec<String>> = None;
    let mut cols: Option<Vec<String>> = None;
    let mut data: Vec<(String, Vec<(Rational, Rational)>)> = Vec::new();
    let mut line_count = 0;

    for (idx, raw) in src.lines().enumerate() {
        line_count = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, idx + 1);
        let (keyword, kw_span) = cur.token().expect("nonblank line has a token");

        if name.is_none() {
            if keyword != "nfgame" {
                return Err(ParseError::new(
                    kw_span,
                    "an `nfgame` header",
                    format!("`{keyword}`"),
                ));
            }
            name = Some(quoted(&mut cur)?);
            cur.expect_end()?;
            continue;
        }

        match keyword.as_str() {
            "players:" => {
                if players.is_some() {
                    return Err(ParseError::new(
                        kw_span,
                        "a single `players:` line",
                        "`players:`",
                    ));
                }
                let mut names = Vec::new();
                while let Some((t, span)) = cur.token() {
                    if !model::is_identifier(&t) {
                        return Err(ParseError::new(span, "a player name", format!("`{t}`")));
                    }
                    names.push(t);
                }
                players = Some(names);
            }
            "rows:" | "cols:" => {
                if players.is_none() {
                    return Err(ParseError::new(
                        kw_span,
                        "a `players:` line first",
                        format!("`{keyword}`"),
                    ));
                }
                if keyword == "cols:" && rows.is_none() {
                    return Err(ParseError::new(
                        kw_span,
                        "a `rows:` line before `cols:`",
                        "`cols:`",
                    ));
                }
                let slot = if keyword == "rows:" { &mut rows } else { &mut cols };
                if slot.is_some() {
                    return Err(ParseError::new(
                        kw_span,
                        format!("a single `{keyword}` line"),
                        format!("`{keyword}`"),
                    ));
                }
                let mut labels: Vec<String> = Vec::new();
                while let Some((t, span)) = cur.token() {
                    if !model::is_identifier(&t) {
                        return Err(ParseError::new(span, "a strategy label", format!("`{t}`")));
                    }
                    if labels.contains(&t) {
                        return Err(ParseError::new(
                            span,
                            "a distinct strategy label",
                            format!("duplicate label `{t}`"),
                        ));
                    }
                    labels.push(t);
                }
                if labels.is_empty() {
                    return Err(ParseError::new(
                        cur.span(),
                        "at least one strategy label",
                        "end of line",
                    ));
                }
                *slot = Some(labels);
            }
            "row" => {
                let (Some(row_labels), Some(col_labels)) = (&rows, &cols) else {
                    return Err(ParseError::new(
                        kw_span,
                        "`rows:` and `cols:` lines before row data",
                        "`row`",
                    ));
                };
                let (label, label_span) = cur.token_until(':');
                if !model::is_identifier(&label) {
                    return Err(ParseError::new(
                        label_span,
                        "a row label",
                        if label.is_empty() {
                            "`:`".to_string()
                        } else {
                            format!("`{label}`")
                        },
                    ));
                }
                if !row_labels.contains(&label) {
                    return Err(ParseError::new(
                        label_span,
                        "a declared row label",
                        format!("`{label}`"),
                    ));
                }
                if data.iter().any(|(l, _)| *l == label) {
                    return Err(ParseError::new(
                        label_span,
                        "a single data line per row",
                        format!("second `row {label}:`"),
                    ));
                }
                cur.skip_ws();
                match cur.bump() {
                    Some(':') => {}
                    Some(c) => {
                        return Err(ParseError::new(cur.span(), "`:`", format!("`{c}`")))
                    }
                    None => return Err(ParseError::new(cur.span(), "`:`", "end of line")),
                }
                let mut cells = Vec::new();
                loop {
                    cur.skip_ws();
                    if cur.peek().is_none() {
                        break;
                    }
                    let (values, open) = paren_tuple(&mut cur)?;
                    if values.len() != 2 {
                        return Err(ParseError::new(
                            open,
                            "a payoff pair like `(1,2)`",
                            format!("{} values", values.len()),
                        ));
                    }
                    cells.push((values[0], values[1]));
                }
                if cells.len() != col_labels.len() {
                    return Err(ParseError::new(
                        kw_span,
                        format!("{} cells, one per column", col_labels.len()),
                        format!("{} cells", cells.len()),
                    ));
                }
                data.push((label, cells));
            }
            other => {
                return Err(ParseError::new(
                    kw_span,
                    "`players:`, `rows:`, `cols:`, or `row`",
                    format!("`{other}`"),
                ));
            }
        }
    }

    let eof = SourceSpan {
        line: line_count + 1,
        column: 1,
    };
    let Some(name) = name else {
        return Err(ParseError::new(
            SourceSpan { line: 1, column: 1 },
            "an `nfgame` header",
            "end of input",
        ));
    };
    let Some(players) = players else {
        return Err(ParseError::new(eof, "a `players:` line", "end of input"));
    };
    let Some(rows) = rows else {
        return Err(ParseError::new(eof, "a `rows:` line", "end of input"));
    };
    let Some(cols) = cols else {
        return Err(ParseError::new(eof, "a `cols:` line", "end of input"));
    };
    let mut payoffs = Vec::new();
    for label in &rows {
        match data.iter().find(|(l, _)| l == label) {
            Some((_, cells)) => payoffs.push(cells.clone()),
            None => {
                return Err(ParseError::new(
                    eof,
                    format!("a `row {label}:` line"),
                    "end of input",
                ));
            }
        }
    }

    let game = NormalFormGame {
        name,
        players,
        strategies: vec![rows, cols],
        payoffs,
    };
    if let Err(message) = game.check() {
        return Err(ParseError::new(
            SourceSpan { line: 1, column: 1 },
            "a well-formed matrix",
            message,
        ));
    }
    Ok(game)
}

/// Writes a tree back to GDT text.
///
/// Requires a tree that passes validation; the output reparses to a value
/// equal to the input, declaration order included. Singleton sets named
/// after their node are left implicit whenever that reproduces the tree's
/// information-set order; otherwise every set is written explicitly.
pub fn serialize_extensive(tree: &GameTree) -> String {
    use std::fmt::Write;

    // A set can stay implicit if reparsing would auto-create it: one
    // member carrying the set's own id.
    let eligible: HashSet<&str> = tree
        .infosets
        .iter()
        .filter(|s| s.members.len() == 1 && s.members[0] == s.id)
        .map(|s| s.id.as_str())
        .collect();
    // Creation order of a compact file: explicit declarations first,
    // then implicit sets as their nodes appear.
    let mut compact_order: Vec<&str> = tree
        .infosets
        .iter()
        .map(|s| s.id.as_str())
        .filter(|id| !eligible.contains(id))
        .collect();
    for node in &tree.nodes {
        if let NodeKind::Decision { infoset, .. } = &node.kind {
            if eligible.contains(infoset.as_str()) {
                compact_order.push(infoset);
            }
        }
    }
    let original: Vec<&str> = tree.infosets.iter().map(|s| s.id.as_str()).collect();
    let compact = compact_order == original;

    let mut out = String::new();
    writeln!(out, "game \"{}\"", tree.name).unwrap();
    writeln!(out, "players: {}", tree.players.join(" ")).unwrap();
    for set in &tree.infosets {
        if !compact || !eligible.contains(set.id.as_str()) {
            writeln!(out, "infoset {} player={}", set.id, set.owner.index()).unwrap();
        }
    }
    for node in &tree.nodes {
        match &node.kind {
            NodeKind::Decision {
                owner,
                infoset,
                edges,
            } => {
                if compact && eligible.contains(infoset.as_str()) {
                    writeln!(out, "node {} player={}", node.id, owner.index()).unwrap();
                } else {
                    writeln!(
                        out,
                        "node {} player={} infoset={}",
                        node.id,
                        owner.index(),
                        infoset
                    )
                    .unwrap();
                }
                for (label, child) in edges {
                    writeln!(out, "  action {label} -> {child}").unwrap();
                }
            }
            NodeKind::Terminal { payoffs } => {
                let list = payoffs
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(out, "terminal {} payoffs=({list})", node.id).unwrap();
            }
        }
    }
    out
}

/// Writes a matrix back to GDT text. Reparsing reproduces the input.
pub fn serialize_normal(game: &NormalFormGame) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    writeln!(out, "nfgame \"{}\"", game.name).unwrap();
    writeln!(out, "players: {}", game.players.join(" ")).unwrap();
    writeln!(out, "rows: {}", game.rows().join(" ")).unwrap();
    writeln!(out, "cols: {}", game.cols().join(" ")).unwrap();
    for (r, label) in game.rows().iter().enumerate() {
        let cells = (0..game.num_cols())
            .map(|c| {
                let (a, b) = game.payoff(r, c);
                format!("({a},{b})")
            })
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "row {label}: {cells}").unwrap();
    }
    out
}
