//! Regenerates the bundled graphs under `data/`.
//!
//! ```text
//! cargo run --release --example gen_data -- <workspace-root>/data
//! ```

use centra::synthetic;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data".to_string());
    std::fs::create_dir_all(&dir).expect("create data dir");
    let bowtie = synthetic::directed_bowtie(15_000, 100, 15_000, 2, 42);
    std::fs::write(
        format!("{dir}/smallworld-bowtie.txt"),
        format!(
            "# synthetic directed small-world graph (bow-tie hub core)\n\
             # generated by: directed_bowtie(sources=15000, hubs=100, sinks=15000, attach=2, seed=42)\n\
             # directed; n={} edges={}\n{}",
            bowtie.n(),
            bowtie.edge_count(),
            bowtie.to_edge_list_string()
        ),
    )
    .expect("write bowtie");
    let path = synthetic::path(3);
    std::fs::write(
        format!("{dir}/path-3.txt"),
        format!("# three-node path\n{}", path.to_edge_list_string()),
    )
    .expect("write path");
    println!("wrote {dir}/smallworld-bowtie.txt and {dir}/path-3.txt");
}
