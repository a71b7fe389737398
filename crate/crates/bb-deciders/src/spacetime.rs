//! Space-time diagram rendering: row i shows the tape after i steps, with the
//! head cell coloured by state. Output is binary PPM (P6), one pixel per cell
//! scaled by `DiagramOptions::scale`.

use std::io::{self, Write};

use crate::machine::TransitionTable;
use crate::tape::Simulator;

/// Fixed 5-colour state palette (RGB). Tape bits render as grayscale:
/// 0 is black, 1 is white.
pub const STATE_COLORS: [[u8; 3]; 5] = [
    [255, 0, 0],   // A
    [255, 165, 0], // B
    [0, 0, 255],   // C
    [0, 128, 0],   // D
    [128, 0, 128], // E
];

#[derive(Debug, Clone, Copy)]
pub struct DiagramOptions {
    /// Square pixels per tape cell.
    pub scale: u32,
}

impl Default for DiagramOptions {
    fn default() -> DiagramOptions {
        DiagramOptions { scale: 1 }
    }
}

/// An RGB raster with PPM serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

impl Diagram {
    pub fn write_ppm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)
    }

    pub fn to_ppm_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::with_capacity(self.pixels.len() + 32);
        self.write_ppm(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }
}

/// Render at most `steps` steps from the all-0 tape. Rendering stops early at
/// a halt, so the image has one row per reached configuration.
pub fn render_spacetime(table: &TransitionTable, steps: u64, options: &DiagramOptions) -> Diagram {
    assert!(steps >= 1, "a diagram needs at least one step");
    // First pass: find how many rows get rendered and the visited extent.
    let mut sim = Simulator::new(table);
    let mut rows = 1u64;
    for _ in 0..steps {
        if sim.step().is_err() {
            break;
        }
        rows += 1;
    }
    let (lo, hi) = (sim.config.leftmost, sim.config.rightmost);
    let cols = (hi - lo + 1) as u32;

    // Second pass: paint each row.
    let scale = options.scale.max(1);
    let width = cols * scale;
    let height = rows as u32 * scale;
    let mut pixels = vec![0u8; (width as usize) * (height as usize) * 3];
    let mut sim = Simulator::new(table);
    for row in 0..rows {
        if row > 0 {
            sim.step().expect("halt counted in the first pass");
        }
        for col in 0..cols {
            let p = lo + col as i64;
            let color = if p == sim.config.head {
                STATE_COLORS[sim.config.state as usize % STATE_COLORS.len()]
            } else if sim.config.tape.get(p) == 0 {
                [0, 0, 0]
            } else {
                [255, 255, 255]
            };
            for dy in 0..scale {
                for dx in 0..scale {
                    let x = col * scale + dx;
                    let y = row as u32 * scale + dy;
                    let idx = ((y as usize * width as usize) + x as usize) * 3;
                    pixels[idx..idx + 3].copy_from_slice(&color);
                }
            }
        }
    }
    Diagram { width, height, pixels }
}
