//! Chance that a uniformly drawn policy of each class gives a1 item b.

use seqalloc::engine::{outcome_probability, Outcome, DEFAULT_POLICY_LIMIT};
use seqalloc::{parse_instance, PolicyClass};

fn main() -> seqalloc::Result<()> {
    let inst =
        parse_instance("agents: a1 a2\nitems: b c d e\npref a1: b c d e\npref a2: b d c e\n")?;
    let outcome = Outcome::AgentGetsItem {
        agent: inst.agent("a1")?,
        item: inst.item("b")?,
    };
    for cls in [
        PolicyClass::Arbitrary,
        PolicyClass::Balanced,
        PolicyClass::RecursivelyBalanced,
        PolicyClass::StrictAlternation,
        PolicyClass::BalancedAlternation,
    ] {
        let p = outcome_probability(&inst, cls, &outcome, DEFAULT_POLICY_LIMIT)?;
        println!("{:<22} {p}", cls.name());
    }
    Ok(())
}
