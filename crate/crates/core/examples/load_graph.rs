//! Parse a SNAP-style edge list and query neighborhoods.
//!
//! `cargo run --example load_graph -- path/to/edges.txt`

use std::io::BufReader;

use seedhawk::graph::{load_edge_list, load_edge_list_file};

const SAMPLE: &str = "# toy network
alice bob
bob carol
carol alice
carol dave
dave erin
";

fn main() -> seedhawk::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => load_edge_list_file(path, false)?,
        None => load_edge_list(BufReader::new(SAMPLE.as_bytes()), false)?,
    };
    println!(
        "nodes {}, edges {}, mean degree {:.2}",
        g.node_count(),
        g.edge_count(),
        g.mean_degree()
    );

    let hub = (0..g.node_count())
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    println!("hub {} with degree {}", g.label(hub), g.degree(hub));
    for hops in 1..=2 {
        let ball = g.khop_neighborhood(&[hub], hops)?;
        println!("  {hops}-hop ball: {} nodes", ball.len());
    }
    Ok(())
}
