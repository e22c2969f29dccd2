//! List the policies of a class and the distinct assignments they produce.

use seqalloc::engine::{class_size, enumerate_policies, outcomes, DEFAULT_POLICY_LIMIT};
use seqalloc::{parse_instance, PolicyClass};

fn main() -> seqalloc::Result<()> {
    let inst = parse_instance(
        "agents: x y z\nitems: p q r s t u\npref x: p q r s t u\npref y: q p s r u t\npref z: p r q t s u\n",
    )?;
    let cls = PolicyClass::BalancedAlternation;
    println!("{} policies", class_size(&inst, cls)?);
    for pi in enumerate_policies(&inst, cls, DEFAULT_POLICY_LIMIT)? {
        println!("  {}", pi.to_text(&inst));
    }
    for m in outcomes(&inst, cls, DEFAULT_POLICY_LIMIT)? {
        println!("{}", m.to_inline(&inst));
    }
    Ok(())
}
