//! Possible and necessary queries, answered exactly where an algorithm exists.

use seqalloc::engine::DEFAULT_POLICY_LIMIT;
use seqalloc::queries::{solve, Problem, Query, SolveMethod};
use seqalloc::{parse_instance, PolicyClass};

fn main() -> seqalloc::Result<()> {
    let inst =
        parse_instance("agents: a1 a2\nitems: b c d e\npref a1: b c d e\npref a2: b d c e\n")?;
    let a1 = inst.agent("a1")?;
    let a2 = inst.agent("a2")?;
    let queries = [
        Query::item(
            Problem::NecessaryItem,
            PolicyClass::Balanced,
            a1,
            inst.item("b")?,
        ),
        Query::item(
            Problem::PossibleItem,
            PolicyClass::Balanced,
            a2,
            inst.item("c")?,
        ),
        Query::set(
            Problem::PossibleSet,
            PolicyClass::Arbitrary,
            a2,
            vec![inst.item("e")?],
        ),
        Query::top_k(Problem::PossibleSet, PolicyClass::StrictAlternation, a2),
    ];
    for q in &queries {
        let ans = solve(&inst, q, SolveMethod::Auto, DEFAULT_POLICY_LIMIT)?;
        let witness = ans.witness.map(|w| w.to_text(&inst)).unwrap_or_default();
        println!(
            "{:<16} {:<20} {:<3} {:<12} {witness}",
            q.problem.name(),
            q.cls.name(),
            if ans.decision { "yes" } else { "no" },
            ans.method.name()
        );
    }
    Ok(())
}
