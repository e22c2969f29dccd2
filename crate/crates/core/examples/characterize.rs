//! Decide which policy classes can produce a given assignment.

use seqalloc::characterize::{achievable, build_precedence_graph, GraphKind};
use seqalloc::{parse_assignment, parse_instance, PolicyClass};

fn main() -> seqalloc::Result<()> {
    let inst =
        parse_instance("agents: a1 a2\nitems: b c d e\npref a1: b c d e\npref a2: b d c e\n")?;
    let m = parse_assignment("a1: b e\na2: c d\n", &inst)?;

    for kind in [GraphKind::Alternating, GraphKind::Uniform] {
        let g = build_precedence_graph(&inst, &m, kind)?;
        println!("{kind:?} graph: {:?} acyclic={}", g.edges(), g.is_acyclic());
    }
    for cls in [
        PolicyClass::Arbitrary,
        PolicyClass::Balanced,
        PolicyClass::RecursivelyBalanced,
        PolicyClass::StrictAlternation,
        PolicyClass::BalancedAlternation,
    ] {
        match achievable(&inst, &m, cls)? {
            Some(pi) => println!("{:<22} {}", cls.name(), pi.to_text(&inst)),
            None => println!("{:<22} not achievable", cls.name()),
        }
    }
    Ok(())
}
