//! Run a picking sequence and print each pick.

use seqalloc::engine::execute_policy;
use seqalloc::{parse_instance, Policy};

fn main() -> seqalloc::Result<()> {
    let inst =
        parse_instance("agents: a1 a2\nitems: b c d e\npref a1: b c d e\npref a2: b d c e\n")?;
    let pi = Policy::parse(&inst, "a1 a2 a2 a1")?;
    let run = execute_policy(&inst, &pi)?;
    for step in &run.steps {
        println!(
            "{} takes {}",
            inst.agent_name(step.agent),
            inst.item_name(step.item)
        );
    }
    print!("{}", run.assignment.to_text(&inst));
    Ok(())
}
