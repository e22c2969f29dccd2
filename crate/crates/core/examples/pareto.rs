//! Test an assignment for Pareto optimality and repair it if needed.

use seqalloc::pareto::{is_pareto_optimal, pareto_improve, witness_picking_sequence};
use seqalloc::{parse_assignment, parse_instance};

fn main() -> seqalloc::Result<()> {
    let inst =
        parse_instance("agents: a1 a2\nitems: b c d e\npref a1: b c d e\npref a2: b d c e\n")?;
    let m = parse_assignment("a1: d e\na2: b c\n", &inst)?;
    println!("optimal: {}", is_pareto_optimal(&inst, &m)?);

    let better = pareto_improve(&inst, &m)?;
    println!("improved: {}", better.to_inline(&inst));
    let pi = witness_picking_sequence(&inst, &better)?;
    println!("reached by: {}", pi.to_text(&inst));
    Ok(())
}
