//! Render a 300-step space-time diagram of the example bouncer to
//! `bouncer.ppm`: `cargo run --example spacetime_diagram`.

use std::fs::File;
use std::io::BufWriter;

use bb_deciders::machine::machines;
use bb_deciders::spacetime::{render_spacetime, DiagramOptions};
use bb_deciders::TransitionTable;

fn main() -> std::io::Result<()> {
    let table: TransitionTable = machines::BOUNCER.parse().unwrap();
    let diagram = render_spacetime(&table, 300, &DiagramOptions { scale: 2 });
    let path = "bouncer.ppm";
    diagram.write_ppm(BufWriter::new(File::create(path)?))?;
    println!("wrote {path} ({}x{} pixels)", diagram.width, diagram.height);
    println!("rows are steps, columns are tape cells; the moving pixel is the head");
    Ok(())
}
