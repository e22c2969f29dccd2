//! Maximum flow and maximum bipartite matching.

use seqalloc::flows::{max_bipartite_matching, max_flow, FlowNetwork};

fn main() -> seqalloc::Result<()> {
    let mut net = FlowNetwork::new(4, 0, 3);
    net.add_arc(0, 1, 3);
    net.add_arc(0, 2, 2);
    net.add_arc(1, 2, 1);
    net.add_arc(1, 3, 2);
    net.add_arc(2, 3, 3);
    let flow = max_flow(&net)?;
    println!("flow value {}", flow.value);
    for (arc, f) in net.arcs().iter().zip(&flow.flows) {
        println!("  {} -> {}: {f}/{}", arc.from, arc.to, arc.capacity);
    }

    let matching = max_bipartite_matching(3, 3, &[(0, 0), (0, 1), (1, 0), (2, 1), (2, 2)]);
    println!("matching {:?}", matching.pairs());
    Ok(())
}
