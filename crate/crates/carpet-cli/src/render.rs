//! Deterministic carpet rendering as binary PPM.

use carpet_core::dynsys::{Diagonal, DynamicalSystem, Role};

const GOLDEN_ANGLE: f64 = 137.50776405003785;

fn hue_to_rgb(h: f64) -> [u8; 3] {
    // Full saturation and value; only arithmetic, so bytes are identical
    // across platforms.
    let h = h.rem_euclid(360.0) / 60.0;
    let x = 1.0 - (h % 2.0 - 1.0).abs();
    let (r, g, b) = match h as u32 {
        0 => (1.0, x, 0.0),
        1 => (x, 1.0, 0.0),
        2 => (0.0, 1.0, x),
        3 => (0.0, x, 1.0),
        4 => (x, 0.0, 1.0),
        _ => (1.0, 0.0, x),
    };
    [
        (r * 255.0 + 0.5) as u8,
        (g * 255.0 + 0.5) as u8,
        (b * 255.0 + 0.5) as u8,
    ]
}

/// Color per letter id: zero white, the wall black, Bottom magenta,
/// everything else around the hue circle in golden-angle steps.
pub fn palette(sys: &DynamicalSystem) -> Vec<[u8; 3]> {
    sys.letters
        .iter()
        .map(|l| match l.role {
            Role::Zero => [255, 255, 255],
            Role::One => [0, 0, 0],
            Role::Bottom => [255, 0, 255],
            _ => hue_to_rgb(l.id.0 as f64 * GOLDEN_ANGLE),
        })
        .collect()
}

/// Binary PPM of the first n+1 diagonals: pixel (row i, column j) shows
/// cell (i, j); cells past the last diagonal are painted as zero.
pub fn render_ppm(diags: &[Diagonal], palette: &[[u8; 3]], zero_color: [u8; 3]) -> Vec<u8> {
    let n = diags.len();
    let mut out = format!("P6\n{} {}\n255\n", n, n).into_bytes();
    for i in 0..n {
        for j in 0..n {
            let px = if i + j < n {
                palette[diags[i + j].cells[j].0 as usize]
            } else {
                zero_color
            };
            out.extend_from_slice(&px);
        }
    }
    out
}
