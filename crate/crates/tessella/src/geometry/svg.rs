//! Deterministic SVG rendering of disk patches.
//!
//! Polygon edges are emitted as true circular-arc path segments (or line
//! segments for diameter geodesics), so the picture shows the hyperbolic
//! cells themselves rather than Euclidean approximations.

use std::fmt::Write as _;

use super::mobius::{geodesic_through, Geodesic};
use super::TilingPatch;

/// Visual parameters for [`render_svg`].
#[derive(Clone, Debug)]
pub struct SvgStyle {
    /// Width and height of the raster viewport in pixels.
    pub size_px: u32,
    pub stroke: String,
    pub stroke_width: f64,
    /// Fill colors cycled by distance class.
    pub palette: Vec<String>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            size_px: 800,
            stroke: "#1d2327".to_string(),
            stroke_width: 0.004,
            palette: vec![
                "#f5ead2".to_string(),
                "#a7c957".to_string(),
                "#6a994e".to_string(),
                "#386641".to_string(),
                "#bc4749".to_string(),
                "#7f5539".to_string(),
            ],
        }
    }
}

/// Renders the patch into a standalone SVG document.  Output is a pure
/// function of the patch and style, byte for byte.
pub fn render_svg(patch: &TilingPatch, style: &SvgStyle) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{0}\" height=\"{0}\" viewBox=\"-1.05 -1.05 2.1 2.1\">",
        style.size_px
    );
    let _ = writeln!(
        out,
        "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
        style.stroke, style.stroke_width
    );
    for tile in patch.tiles() {
        let fill = if style.palette.is_empty() {
            "none"
        } else {
            &style.palette[tile.distance as usize % style.palette.len()]
        };
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
            tile_path(tile),
            fill,
            style.stroke,
            style.stroke_width
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Path data for one tile.  The y axis is flipped on emission so that the
/// disk appears in the usual mathematical orientation.
fn tile_path(tile: &super::Tile) -> String {
    let n = tile.vertices.len();
    let mut d = String::new();
    let first = tile.vertices[0];
    let _ = write!(d, "M {} {}", coord(first.x()), coord(-first.y()));
    for i in 0..n {
        let v1 = tile.vertices[i].to_complex();
        let v2 = tile.vertices[(i + 1) % n].to_complex();
        match geodesic_through(v1, v2) {
            Geodesic::Diameter { .. } => {
                let _ = write!(d, " L {} {}", coord(v2.re), coord(-v2.im));
            }
            Geodesic::Arc { center, radius } => {
                // Work in emitted (y-down) coordinates for the sweep flag.
                let a1 = (-(v1.im - center.im)).atan2(v1.re - center.re);
                let a2 = (-(v2.im - center.im)).atan2(v2.re - center.re);
                let mut delta = a2 - a1;
                while delta > std::f64::consts::PI {
                    delta -= 2.0 * std::f64::consts::PI;
                }
                while delta < -std::f64::consts::PI {
                    delta += 2.0 * std::f64::consts::PI;
                }
                let sweep = if delta > 0.0 { 1 } else { 0 };
                // The in-disk side of a geodesic is always the minor arc,
                // so the large-arc flag stays 0.
                let _ = write!(
                    d,
                    " A {0} {0} 0 0 {1} {2} {3}",
                    coord(radius),
                    sweep,
                    coord(v2.re),
                    coord(-v2.im)
                );
            }
        }
    }
    d.push_str(" Z");
    d
}

fn coord(v: f64) -> String {
    let s = format!("{v:.6}");
    // Avoid the two representations of zero.
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}
