//! Generate hardness instances from a small source and from an exact-cover instance.

use seqalloc::parse_instance;
use seqalloc::reductions::{generate, parse_x3c, reduce_x3c_to_balalt, Reduction};

fn main() -> seqalloc::Result<()> {
    let src = parse_instance("agents: p q\nitems: u v\npref p: u v\npref q: u v\n")?;
    let out = generate(Reduction::Nirb, &src, src.agent("p")?, src.item("v")?)?;
    print!("{}", out.to_text());

    let x3c = parse_x3c("universe: x1 x2 x3\nset: x1 x2 x3\n")?;
    println!("cover: {:?}", x3c.exact_cover());
    let out = reduce_x3c_to_balalt(&x3c)?;
    println!(
        "exact-cover instance: {} agents, {} items",
        out.instance.num_agents(),
        out.instance.num_items()
    );
    Ok(())
}
