//! The line-oriented text format for automata.
//!
//! ```text
//! # comment
//! semifield rational
//! sig a 0
//! sig g 1
//! state p r bot
//! final r
//! sink bot
//! trans a -> p @ 1
//! trans g(p) -> r @ 1/2
//! ```
//!
//! Entries without a `trans` line go to the sink with weight 1. Without a
//! `sink` line the table must be complete.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{Lhs, Wdta};
use crate::error::ParseError;
use crate::semifield::{
    Boolean, MaxTimes, Rational, Semifield, SemifieldKind, Tropical, TropicalFloat,
};
use crate::terms::{RankedAlphabet, StateId};

/// An automaton whose semifield is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyWdta {
    Boolean(Wdta<Boolean>),
    Rational(Wdta<Rational>),
    Tropical(Wdta<Tropical>),
    MaxTimes(Wdta<MaxTimes>),
    TropicalFloat(Wdta<TropicalFloat>),
}

/// Runs `$body` with `$a` bound to the typed automaton inside an [`AnyWdta`].
#[macro_export]
macro_rules! with_any_wdta {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::format::AnyWdta::Boolean($a) => $body,
            $crate::format::AnyWdta::Rational($a) => $body,
            $crate::format::AnyWdta::Tropical($a) => $body,
            $crate::format::AnyWdta::MaxTimes($a) => $body,
            $crate::format::AnyWdta::TropicalFloat($a) => $body,
        }
    };
}

impl AnyWdta {
    pub fn kind(&self) -> SemifieldKind {
        match self {
            AnyWdta::Boolean(_) => SemifieldKind::Boolean,
            AnyWdta::Rational(_) => SemifieldKind::Rational,
            AnyWdta::Tropical(_) => SemifieldKind::Tropical,
            AnyWdta::MaxTimes(_) => SemifieldKind::MaxTimes,
            AnyWdta::TropicalFloat(_) => SemifieldKind::TropicalFloat,
        }
    }

    pub fn serialize(&self) -> String {
        with_any_wdta!(self, a => serialize_automaton(a))
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Significant lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Reads the `semifield KIND` header, which must be the first directive.
pub fn parse_kind(text: &str) -> Result<SemifieldKind, ParseError> {
    let Some((no, line)) = lines(text).next() else {
        return Err(err(1, "empty file; expected `semifield KIND`"));
    };
    let mut words = line.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("semifield"), Some(kind), None) => kind.parse().map_err(|e| err(no, format!("{e}"))),
        _ => Err(err(no, "expected `semifield KIND` as the first directive")),
    }
}

/// Parses a file over any semifield kind, dispatching on its header.
pub fn parse_automaton(text: &str) -> Result<AnyWdta, ParseError> {
    Ok(match parse_kind(text)? {
        SemifieldKind::Boolean => AnyWdta::Boolean(parse_typed(text)?),
        SemifieldKind::Rational => AnyWdta::Rational(parse_typed(text)?),
        SemifieldKind::Tropical => AnyWdta::Tropical(parse_typed(text)?),
        SemifieldKind::MaxTimes => AnyWdta::MaxTimes(parse_typed(text)?),
        SemifieldKind::TropicalFloat => AnyWdta::TropicalFloat(parse_typed(text)?),
    })
}

/// Parses a file whose header must name the semifield `W`.
pub fn parse_typed<W: Semifield>(text: &str) -> Result<Wdta<W>, ParseError> {
    let kind = parse_kind(text)?;
    if kind != W::KIND {
        return Err(err(
            1,
            format!("expected semifield `{}`, found `{kind}`", W::KIND),
        ));
    }
    let mut sigma = RankedAlphabet::new();
    let mut states: Vec<(String, usize)> = Vec::new();
    let mut finals: Vec<(String, usize)> = Vec::new();
    let mut sink: Option<(String, usize)> = None;
    let mut transitions: Vec<(usize, &str)> = Vec::new();
    let mut last = 1;
    for (no, line) in lines(text).skip(1) {
        last = no;
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "semifield" => return Err(err(no, "duplicate `semifield` header")),
            "sig" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [name, rank] = words[..] else {
                    return Err(err(no, "expected `sig NAME RANK`"));
                };
                check_name(no, name)?;
                let rank: usize = rank
                    .parse()
                    .map_err(|_| err(no, format!("bad rank `{rank}`")))?;
                sigma.add(name, rank).map_err(|e| err(no, e.to_string()))?;
            }
            "state" => {
                if rest.is_empty() {
                    return Err(err(no, "expected `state NAME+`"));
                }
                for name in rest.split_whitespace() {
                    check_name(no, name)?;
                    states.push((name.to_string(), no));
                }
            }
            "final" => finals.extend(rest.split_whitespace().map(|s| (s.to_string(), no))),
            "sink" => {
                if sink.is_some() {
                    return Err(err(no, "duplicate `sink` line"));
                }
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [name] = words[..] else {
                    return Err(err(no, "expected `sink NAME`"));
                };
                sink = Some((name.to_string(), no));
            }
            "trans" => transitions.push((no, rest)),
            other => return Err(err(no, format!("unknown directive `{other}`"))),
        }
    }

    let mut a: Wdta<W> = Wdta::new(sigma);
    let mut ids: HashMap<String, StateId> = HashMap::new();
    for (name, no) in states {
        if ids.contains_key(&name) {
            return Err(err(no, format!("duplicate state `{name}`")));
        }
        let q = a.add_state(name.clone());
        ids.insert(name, q);
    }
    let state = |name: &str, no: usize| {
        ids.get(name)
            .copied()
            .ok_or_else(|| err(no, format!("unknown state `{name}`")))
    };
    for (name, no) in finals {
        a.set_final(state(&name, no)?, true);
    }
    if let Some((name, no)) = sink {
        let s = state(&name, no)?;
        if a.is_final(s) {
            return Err(err(no, format!("sink `{name}` is final")));
        }
        a.set_sink(Some(s));
    }
    for (no, rest) in transitions {
        let (lhs, (target, weight)) = parse_transition(&a, rest, &state, no)?;
        if a.rule(&lhs).is_some() {
            return Err(err(
                no,
                format!("duplicate transition for `{}`", a.lhs_to_string(&lhs)),
            ));
        }
        if let Some(s) = a.sink() {
            if lhs.children.contains(&s) && target != s {
                return Err(err(no, "the sink must be absorbing"));
            }
        }
        a.set_rule(lhs.symbol, lhs.children, target, weight);
    }
    if let Some(v) = a.validate().first() {
        return Err(err(last, v.to_string()));
    }
    Ok(a)
}

fn check_name(no: usize, name: &str) -> Result<(), ParseError> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
        && name != "[]";
    if ok {
        Ok(())
    } else {
        Err(err(no, format!("invalid name `{name}`")))
    }
}

type Parsed<W> = (Lhs, (StateId, W));

fn parse_transition<W: Semifield>(
    a: &Wdta<W>,
    text: &str,
    state: &impl Fn(&str, usize) -> Result<StateId, ParseError>,
    no: usize,
) -> Result<Parsed<W>, ParseError> {
    let syntax = || err(no, "expected `trans NAME(STATE,...) -> STATE @ WEIGHT`");
    let (lhs, rhs) = text.split_once("->").ok_or_else(syntax)?;
    let (target, weight) = rhs.split_once('@').ok_or_else(syntax)?;
    let lhs = lhs.trim();
    let (name, children) = match lhs.split_once('(') {
        Some((name, args)) => {
            let args = args.trim_end().strip_suffix(')').ok_or_else(syntax)?;
            let children = args
                .split(',')
                .map(|c| state(c.trim(), no))
                .collect::<Result<Vec<_>, _>>()?;
            (name.trim(), children)
        }
        None => (lhs, Vec::new()),
    };
    let sigma = a.alphabet();
    let sym = sigma
        .lookup(name)
        .ok_or_else(|| err(no, format!("unknown symbol `{name}`")))?;
    if sigma.rank(sym) != children.len() {
        return Err(err(
            no,
            format!(
                "`{name}` has rank {} but got {} children",
                sigma.rank(sym),
                children.len()
            ),
        ));
    }
    let target = state(target.trim(), no)?;
    let weight = W::parse_weight(weight.trim()).map_err(|e| err(no, e.to_string()))?;
    if weight.is_zero() {
        return Err(err(
            no,
            "zero weight; omit the transition or route it to the sink",
        ));
    }
    Ok((Lhs::new(sym, children), (target, weight)))
}

/// Canonical text: symbols, states, finals, sink, then transitions sorted by
/// symbol and child tuple. Entries equal to the `(sink, 1)` default are omitted.
pub fn serialize_automaton<W: Semifield>(a: &Wdta<W>) -> String {
    let mut out = String::new();
    let sigma = a.alphabet();
    let _ = writeln!(out, "semifield {}", W::KIND);
    for (_, name, rank) in sigma.iter() {
        let _ = writeln!(out, "sig {name} {rank}");
    }
    if a.num_states() > 0 {
        let _ = writeln!(out, "state {}", a.state_names().join(" "));
    }
    let finals: Vec<&str> = a.finals().map(|q| a.state_name(q)).collect();
    if finals.is_empty() {
        out.push_str("final\n");
    } else {
        let _ = writeln!(out, "final {}", finals.join(" "));
    }
    if let Some(s) = a.sink() {
        let _ = writeln!(out, "sink {}", a.state_name(s));
    }
    for (lhs, rule) in a.sorted_rules() {
        if a.is_default_entry(lhs) {
            continue;
        }
        let _ = writeln!(
            out,
            "trans {} -> {} @ {}",
            a.lhs_to_string(lhs),
            a.state_name(rule.target),
            rule.weight
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a_ex, A_EX_TEXT};

    #[test]
    fn fixture_text_parses_to_the_fixture() {
        let a: Wdta<Rational> = parse_typed(A_EX_TEXT).unwrap();
        assert_eq!(a, a_ex());
        assert_eq!(a.num_states(), 4);
        assert_eq!(a.size(), 10);
        assert!(matches!(
            parse_automaton(A_EX_TEXT).unwrap(),
            AnyWdta::Rational(_)
        ));
    }

    #[test]
    fn serialization_is_canonical_and_idempotent() {
        let text = serialize_automaton(&a_ex());
        assert!(!text.contains("g(bot)"));
        let again: Wdta<Rational> = parse_typed(&text).unwrap();
        assert_eq!(again, a_ex());
        assert_eq!(serialize_automaton(&again), text);
    }

    #[test]
    fn hyper_minimized_fixture_serializes_with_scaled_leaf() {
        let (h, _) = crate::hyperminimize::hyper_minimize(&a_ex()).unwrap();
        let text = serialize_automaton(&h);
        assert!(text.contains("state p r bot\n"));
        assert!(text.contains("trans b -> p @ 1/2\n"));
    }

    fn error_of(text: &str) -> ParseError {
        parse_automaton(text).unwrap_err()
    }

    #[test]
    fn rejects_bad_inputs_with_line_numbers() {
        let zero = A_EX_TEXT.replace("trans g(p) -> r @ 2", "trans g(p) -> r @ 0");
        let e = error_of(&zero);
        assert_eq!(e.line, 11);
        assert!(e.message.contains("zero"));

        let dup = format!("{A_EX_TEXT}trans a -> q @ 1\n");
        assert!(error_of(&dup).message.contains("duplicate transition"));

        let unknown = A_EX_TEXT.replace("trans a -> p @ 1", "trans a -> z @ 1");
        assert_eq!(error_of(&unknown).line, 9);

        let arity = A_EX_TEXT.replace("trans g(p) -> r @ 2", "trans g(p,p) -> r @ 2");
        assert!(error_of(&arity).message.contains("rank"));

        let partial = A_EX_TEXT
            .replace("sink bot\n", "")
            .replace("trans g(bot) -> bot @ 1\n", "");
        assert!(error_of(&partial).message.contains("totality"));

        assert!(error_of("sig a 0\n").message.contains("semifield"));
        assert!(error_of("semifield reals\n")
            .message
            .contains("unknown semifield"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text =
            "# header\nsemifield boolean\n\nsig a 0 # leaf\nstate q\nfinal q\ntrans a -> q @ 1\n";
        let AnyWdta::Boolean(a) = parse_automaton(text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(a.num_states(), 1);
        assert_eq!(
            serialize_automaton(&a),
            "semifield boolean\nsig a 0\nstate q\nfinal q\ntrans a -> q @ 1\n"
        );
    }
}
