//! Leaves, tori and the tables of a code in R^8.

use schf::foliation::{leaf_angles, leaf_count, LeafScheme};
use schf::torus4::TorusLayout;
use schf::{build_tables, cardinality, CodeSpec};

fn main() -> schf::Result<()> {
    let d = 0.5;
    println!("leaves for d = {d}: {}", leaf_count(d)?);
    for eta in leaf_angles(d, LeafScheme::Symmetric)? {
        let layout = TorusLayout::for_distance(d, eta)?;
        println!("  eta = {:.6}  m = {:3}  circles = {:3}  points = {}", eta.value(), layout.m, layout.n_circles, layout.len());
    }
    println!("C(M, 4, {d}) has M = {}", cardinality(&CodeSpec::standard(4, d)?)?);

    let tables = build_tables(&CodeSpec::standard(8, d)?)?;
    println!("C(M, 8, {d}) has M = {}", tables.len());
    for (pos, node) in tables.nodes.iter().enumerate() {
        println!("node {pos}: dim {} with {} table(s)", node.dim, node.tables.len());
    }
    for row in tables.root().rows() {
        println!("  row {:3}  eta = {:.6}  {} x {}", row.index, row.eta.value(), row.m1, row.m2);
    }
    Ok(())
}
