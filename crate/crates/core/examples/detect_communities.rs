//! Louvain communities, significance filter and per-community seed budgets.

use seedhawk::community::{
    allocate_budgets, default_significance_threshold, louvain, prune_intercommunity_edges, select_significant,
};
use seedhawk::graph::planted_partition;

fn main() -> seedhawk::Result<()> {
    let g = planted_partition(5, 40, 0.3, 0.01, 1);
    let partition = louvain(&g, 0);
    println!(
        "{} communities, modularity {:.4}",
        partition.len(),
        partition.modularity()
    );

    let k = 8;
    let pruned = prune_intercommunity_edges(&g, &partition);
    println!("pruning kept {} of {} edges", pruned.edge_count(), g.edge_count());

    let threshold = default_significance_threshold(g.node_count(), k);
    let significant = select_significant(&partition, threshold);
    let plan = allocate_budgets(&pruned, &partition, &significant, k)?;
    for group in plan.groups() {
        println!(
            "community {:>2}: {:>3} members, {:>3} candidates, budget {}",
            group.community,
            partition.members(group.community).len(),
            group.candidates.len(),
            group.budget
        );
    }
    Ok(())
}
