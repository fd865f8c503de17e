//! Ranked alphabets, trees indexed by states, and one-hole contexts.

use std::collections::HashMap;
use std::fmt;

use crate::error::TermError;

pub type SymbolId = usize;
pub type StateId = usize;

/// Symbols with their ranks, in declaration order.
#[derive(Debug, Clone, Default)]
pub struct RankedAlphabet {
    symbols: Vec<(String, usize)>,
    index: HashMap<String, SymbolId>,
}

impl PartialEq for RankedAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for RankedAlphabet {}

impl RankedAlphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from `(name, rank)` pairs.
    pub fn from_symbols<S: Into<String>>(
        symbols: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self, TermError> {
        let mut alphabet = Self::new();
        for (name, rank) in symbols {
            alphabet.add(name, rank)?;
        }
        Ok(alphabet)
    }

    pub fn add(&mut self, name: impl Into<String>, rank: usize) -> Result<SymbolId, TermError> {
        let name = name.into();
        if name == "[]" || !is_ident(&name) {
            return Err(TermError::Syntax {
                offset: 0,
                message: format!("`{name}` is not a valid symbol name"),
            });
        }
        if self.index.contains_key(&name) {
            return Err(TermError::DuplicateSymbol(name));
        }
        let id = self.symbols.len();
        self.index.insert(name.clone(), id);
        self.symbols.push((name, rank));
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id].0
    }

    pub fn rank(&self, id: SymbolId) -> usize {
        self.symbols[id].1
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.index.get(name).copied()
    }

    pub fn ids(&self) -> std::ops::Range<SymbolId> {
        0..self.symbols.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &str, usize)> + '_ {
        self.symbols
            .iter()
            .enumerate()
            .map(|(id, (name, rank))| (id, name.as_str(), *rank))
    }

    pub fn max_rank(&self) -> usize {
        self.symbols.iter().map(|s| s.1).max().unwrap_or(0)
    }

    pub fn has_nullary(&self) -> bool {
        self.symbols.iter().any(|s| s.1 == 0)
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic() || b == b'_')
        && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Node label: an input symbol, a state leaf, or the hole `□`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Symbol(SymbolId),
    State(StateId),
    Hole,
}

/// An immutable tree with a cached height. Ordering is lexicographic on
/// (label, children).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    label: Label,
    children: Vec<Tree>,
    height: usize,
}

impl Tree {
    pub fn node(symbol: SymbolId, children: Vec<Tree>) -> Self {
        let height = children.iter().map(|c| c.height + 1).max().unwrap_or(0);
        Tree {
            label: Label::Symbol(symbol),
            children,
            height,
        }
    }

    pub fn leaf(symbol: SymbolId) -> Self {
        Self::node(symbol, Vec::new())
    }

    pub fn state(q: StateId) -> Self {
        Tree {
            label: Label::State(q),
            children: Vec::new(),
            height: 0,
        }
    }

    pub fn hole() -> Self {
        Tree {
            label: Label::Hole,
            children: Vec::new(),
            height: 0,
        }
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    /// All positions in preorder; the result is prefix-closed.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(path.clone()));
        for (i, child) in self.children.iter().enumerate() {
            path.push(i + 1);
            child.collect_positions(path, out);
            path.pop();
        }
    }

    pub fn subtree(&self, w: &Position) -> Result<&Tree, TermError> {
        let mut node = self;
        for &i in &w.0 {
            node = i
                .checked_sub(1)
                .and_then(|i| node.children.get(i))
                .ok_or_else(|| TermError::InvalidPosition(w.to_string()))?;
        }
        Ok(node)
    }

    pub fn label_at(&self, w: &Position) -> Result<Label, TermError> {
        self.subtree(w).map(Tree::label)
    }

    pub fn hole_count(&self) -> usize {
        usize::from(self.label == Label::Hole)
            + self.children.iter().map(Tree::hole_count).sum::<usize>()
    }

    pub fn has_state_leaf(&self) -> bool {
        matches!(self.label, Label::State(_)) || self.children.iter().any(Tree::has_state_leaf)
    }

    /// Replaces every hole with `t`.
    fn replace_holes(&self, t: &Tree) -> Tree {
        match self.label {
            Label::Hole => t.clone(),
            Label::State(_) => self.clone(),
            Label::Symbol(s) => Tree::node(
                s,
                self.children.iter().map(|c| c.replace_holes(t)).collect(),
            ),
        }
    }

    pub fn display<'a>(
        &'a self,
        alphabet: &'a RankedAlphabet,
        states: &'a [String],
    ) -> TreeDisplay<'a> {
        TreeDisplay {
            tree: self,
            alphabet,
            states,
        }
    }
}

/// A node address: a sequence of 1-based child indices. Empty is `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

/// A tree with exactly one hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context(Tree);

impl Context {
    pub fn new(tree: Tree) -> Result<Self, TermError> {
        match tree.hole_count() {
            1 => Ok(Context(tree)),
            n => Err(TermError::HoleCount(n)),
        }
    }

    /// The trivial context `□`.
    pub fn hole() -> Self {
        Context(Tree::hole())
    }

    pub fn as_tree(&self) -> &Tree {
        &self.0
    }

    pub fn into_tree(self) -> Tree {
        self.0
    }

    pub fn height(&self) -> usize {
        self.0.height
    }

    pub fn hole_position(&self) -> Position {
        fn find(t: &Tree, path: &mut Vec<usize>) -> bool {
            if t.label == Label::Hole {
                return true;
            }
            for (i, c) in t.children.iter().enumerate() {
                path.push(i + 1);
                if find(c, path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        let mut path = Vec::new();
        find(&self.0, &mut path);
        Position(path)
    }

    /// `c[t]`: a tree when `t` has no hole.
    pub fn plug(&self, t: &Tree) -> Tree {
        self.0.replace_holes(t)
    }

    /// `c[c']`: substituting a context yields a context.
    pub fn compose(&self, inner: &Context) -> Context {
        Context(self.0.replace_holes(&inner.0))
    }
}

fn write_tree(
    f: &mut fmt::Formatter<'_>,
    t: &Tree,
    alphabet: &RankedAlphabet,
    states: &[String],
) -> fmt::Result {
    match t.label {
        Label::Hole => f.write_str("[]"),
        Label::State(q) => match states.get(q) {
            Some(name) => f.write_str(name),
            None => write!(f, "#{q}"),
        },
        Label::Symbol(s) => {
            f.write_str(alphabet.name(s))?;
            if !t.children.is_empty() {
                f.write_str("(")?;
                for (i, c) in t.children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_tree(f, c, alphabet, states)?;
                }
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

pub struct TreeDisplay<'a> {
    tree: &'a Tree,
    alphabet: &'a RankedAlphabet,
    states: &'a [String],
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tree(f, self.tree, self.alphabet, self.states)
    }
}

/// Parses `tree := IDENT | IDENT "(" [tree ("," tree)*] ")" | "[]"`.
///
/// Identifiers resolve to symbols first, then to state names. Ranks are
/// checked against the alphabet.
pub fn parse_term(
    text: &str,
    alphabet: &RankedAlphabet,
    states: &[String],
) -> Result<Tree, TermError> {
    let mut parser = TermParser {
        src: text.as_bytes(),
        pos: 0,
        alphabet,
        states,
    };
    let tree = parser.tree()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(tree)
}

/// Parses a term that must contain exactly one hole.
pub fn parse_context(
    text: &str,
    alphabet: &RankedAlphabet,
    states: &[String],
) -> Result<Context, TermError> {
    Context::new(parse_term(text, alphabet, states)?)
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a RankedAlphabet,
    states: &'a [String],
}

impl TermParser<'_> {
    fn error(&self, message: &str) -> TermError {
        TermError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<&str, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        if is_ident(word) {
            Ok(word)
        } else {
            self.pos = start;
            Err(self.error("expected identifier or `[]`"))
        }
    }

    fn tree(&mut self) -> Result<Tree, TermError> {
        if self.eat(b'[') {
            if !self.eat(b']') {
                return Err(self.error("expected `]`"));
            }
            return Ok(Tree::hole());
        }
        let name = self.ident()?.to_string();
        let mut children = Vec::new();
        if self.eat(b'(') && !self.eat(b')') {
            loop {
                children.push(self.tree()?);
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.error("expected `,` or `)`"));
                }
            }
        }
        if let Some(sym) = self.alphabet.lookup(&name) {
            let rank = self.alphabet.rank(sym);
            if rank != children.len() {
                return Err(TermError::Arity {
                    name,
                    expected: rank,
                    found: children.len(),
                });
            }
            return Ok(Tree::node(sym, children));
        }
        if let Some(q) = self.states.iter().position(|s| *s == name) {
            if !children.is_empty() {
                return Err(TermError::Arity {
                    name,
                    expected: 0,
                    found: children.len(),
                });
            }
            return Ok(Tree::state(q));
        }
        Err(TermError::UnknownSymbol(name))
    }
}
