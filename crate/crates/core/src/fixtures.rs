//! Small named automata used by examples, tests and documentation.

use crate::automaton::Wdta;
use crate::semifield::Rational;
use crate::terms::RankedAlphabet;

/// Text of the four-state rational fixture in the file format.
pub const A_EX_TEXT: &str = "\
semifield rational
sig a 0
sig b 0
sig g 1
sig h 1
state p q r bot
final p r
sink bot
trans a -> p @ 1
trans b -> q @ 1
trans g(p) -> r @ 2
trans g(q) -> r @ 1
trans g(r) -> r @ 1
trans g(bot) -> bot @ 1
trans h(p) -> bot @ 1
trans h(q) -> bot @ 1
trans h(r) -> r @ 1
trans h(bot) -> bot @ 1
";

/// The four-state fixture: `p` and `q` are almost-equivalent preamble states
/// (scaling 1/2), `r` and the sink `bot` are kernel states.
pub fn a_ex() -> Wdta<Rational> {
    let sigma = RankedAlphabet::from_symbols([("a", 0), ("b", 0), ("g", 1), ("h", 1)])
        .expect("valid alphabet");
    let mut a = Wdta::new(sigma);
    let p = a.add_state("p");
    let q = a.add_state("q");
    let r = a.add_state("r");
    let bot = a.add_state("bot");
    a.set_final(p, true);
    a.set_final(r, true);
    a.set_sink(Some(bot));
    let one = Rational::integer(1);
    let (sa, sb, g, h) = (0, 1, 2, 3);
    a.set_rule(sa, vec![], p, one.clone());
    a.set_rule(sb, vec![], q, one.clone());
    a.set_rule(g, vec![p], r, Rational::integer(2));
    a.set_rule(g, vec![q], r, one.clone());
    a.set_rule(g, vec![r], r, one.clone());
    a.set_rule(g, vec![bot], bot, one.clone());
    a.set_rule(h, vec![p], bot, one.clone());
    a.set_rule(h, vec![q], bot, one.clone());
    a.set_rule(h, vec![r], r, one.clone());
    a.set_rule(h, vec![bot], bot, one);
    a
}

/// `a_ex` plus a final clone `p2` of `p` reached by a fresh nullary `a2`,
/// whose outgoing `g`-weight is scaled by `g_factor`.
pub fn a_ex_with_clone(g_factor: i64) -> Wdta<Rational> {
    let mut sigma = a_ex().alphabet().clone();
    let a2 = sigma.add("a2", 0).expect("fresh symbol");
    let base = a_ex();
    let mut a = Wdta::new(sigma);
    for q in base.state_ids() {
        let id = a.add_state(base.state_name(q));
        a.set_final(id, base.is_final(q));
    }
    a.set_sink(base.sink());
    for (lhs, rule) in base.rules() {
        a.set_rule(
            lhs.symbol,
            lhs.children.clone(),
            rule.target,
            rule.weight.clone(),
        );
    }
    let p2 = a.add_state("p2");
    a.set_final(p2, true);
    let (r, bot) = (2, 3);
    a.set_rule(a2, vec![], p2, Rational::integer(1));
    a.set_rule(2, vec![p2], r, Rational::integer(2 * g_factor));
    a.set_rule(3, vec![p2], bot, Rational::integer(1));
    a
}
