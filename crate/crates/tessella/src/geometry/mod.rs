//! Poincaré-disk construction of finite `{p,q}` patches.
//!
//! Entirely independent of the counting modules: the central polygon is
//! placed from the standard radius identities and the patch grows outward
//! by reflecting tiles across their edges, deduplicating tiles by center.
//! Distance classes fall out of the breadth-first order, giving a
//! floating-point oracle for the combinatorial ring and ball formulas.

pub mod mobius;
mod svg;

pub use svg::{render_svg, SvgStyle};

use std::collections::HashMap;

use num_complex::Complex64;
use thiserror::Error;

use mobius::{geodesic_through, Mobius};

/// Default ceiling on materialized tiles (the CLI can override it through
/// the environment).
pub const DEFAULT_TILE_CAP: u64 = 100_000;

/// Two centers closer than this are the same tile.
pub const DEDUP_TOLERANCE: f64 = 1e-9;

/// Metric assertions (edge lengths, vertex coincidence) hold to this bound.
pub const METRIC_TOLERANCE: f64 = 1e-8;

/// Cell size of the spatial hash used for center lookups.
const GRID_STEP: f64 = 1e-7;

/// Margin inside the open unit disk that all coordinates must respect.
const BOUNDARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("{{{p},{q}}} is not a hyperbolic tiling: (p-2)(q-2) must exceed 4")]
    NotHyperbolic { p: u32, q: u32 },
    #[error("patch would exceed {cap} tiles at depth {depth}")]
    PatchTooLarge { depth: u32, cap: u64 },
    #[error("dedup ambiguity: centers {a:?} and {b:?} are {distance:.3e} apart")]
    PrecisionLoss {
        a: (f64, f64),
        b: (f64, f64),
        distance: f64,
    },
    #[error("({x}, {y}) lies outside the open unit disk")]
    OutsideDisk { x: f64, y: f64 },
}

/// A point of the open unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    x: f64,
    y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x * x + y * y >= 1.0 - BOUNDARY_TOLERANCE {
            return Err(GeometryError::OutsideDisk { x, y });
        }
        Ok(DiskPoint { x, y })
    }

    pub fn origin() -> Self {
        DiskPoint { x: 0.0, y: 0.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Result<Self, GeometryError> {
        DiskPoint::new(z.re, z.im)
    }

    /// Hyperbolic distance `2·atanh |(z₁−z₂)/(1−z̄₁z₂)|`.
    pub fn distance(self, other: DiskPoint) -> f64 {
        let a = self.to_complex();
        let b = other.to_complex();
        let num = (a - b).norm();
        let den = (Complex64::new(1.0, 0.0) - a.conj() * b).norm();
        2.0 * (num / den).atanh()
    }
}

/// One tile of a patch.
#[derive(Clone, Debug)]
pub struct Tile {
    pub id: usize,
    /// Edge-adjacency distance from the central tile.
    pub distance: u32,
    pub center: DiskPoint,
    pub vertices: Vec<DiskPoint>,
}

/// A finite patch of the `{p,q}` tiling, complete to its depth.
#[derive(Clone, Debug)]
pub struct TilingPatch {
    p: u32,
    q: u32,
    depth: u32,
    tiles: Vec<Tile>,
    adjacency: Vec<(usize, usize)>,
}

fn check_hyperbolic(p: u32, q: u32) -> Result<(), GeometryError> {
    if p < 3 || q < 3 || (p as u64 - 2) * (q as u64 - 2) <= 4 {
        return Err(GeometryError::NotHyperbolic { p, q });
    }
    Ok(())
}

/// The radius identity `cosh R = cos(π/q)/sin(π/p)` for the `{p,q}` cell —
/// half the center-to-center step between edge-adjacent tiles.
pub fn circumradius(p: u32, q: u32) -> Result<f64, GeometryError> {
    check_hyperbolic(p, q)?;
    let p = p as f64;
    let q = q as f64;
    Ok(((std::f64::consts::PI / q).cos() / (std::f64::consts::PI / p).sin()).acosh())
}

/// Center-to-vertex distance of the `{p,q}` cell:
/// `cosh R_v = cot(π/p)·cot(π/q)`.
pub fn vertex_radius(p: u32, q: u32) -> Result<f64, GeometryError> {
    check_hyperbolic(p, q)?;
    let p = p as f64;
    let q = q as f64;
    Ok((1.0 / ((std::f64::consts::PI / p).tan() * (std::f64::consts::PI / q).tan())).acosh())
}

/// Hyperbolic edge length of the `{p,q}` cell:
/// `cosh(edge/2) = cos(π/p)/sin(π/q)`.
pub fn edge_length(p: u32, q: u32) -> Result<f64, GeometryError> {
    check_hyperbolic(p, q)?;
    let p = p as f64;
    let q = q as f64;
    Ok(2.0 * ((std::f64::consts::PI / p).cos() / (std::f64::consts::PI / q).sin()).acosh())
}

pub fn expand(p: u32, q: u32, depth: u32) -> Result<TilingPatch, GeometryError> {
    expand_with_cap(p, q, depth, DEFAULT_TILE_CAP)
}

pub fn expand_with_cap(
    p: u32,
    q: u32,
    depth: u32,
    cap: u64,
) -> Result<TilingPatch, GeometryError> {
    check_hyperbolic(p, q)?;
    let r_euclid = (vertex_radius(p, q)? / 2.0).tanh();
    let central_vertices: Vec<Complex64> = (0..p)
        .map(|k| {
            let angle = std::f64::consts::PI * (2.0 * k as f64 + 1.0) / p as f64;
            Complex64::from_polar(r_euclid, angle)
        })
        .collect();
    let mut builder = PatchBuilder::new(p, q, cap);
    builder.push_tile(Complex64::new(0.0, 0.0), central_vertices, 0, None)?;
    let mut frontier = vec![0usize];
    for round in 1..=depth {
        let mut next_frontier = Vec::new();
        for &tile_id in &frontier {
            let center = builder.tiles[tile_id].center.to_complex();
            let vertices: Vec<Complex64> = builder.tiles[tile_id]
                .vertices
                .iter()
                .map(|v| v.to_complex())
                .collect();
            for i in 0..vertices.len() {
                let v1 = vertices[i];
                let v2 = vertices[(i + 1) % vertices.len()];
                let reflection = Mobius::reflection(&geodesic_through(v1, v2));
                let image_center = reflection.apply(center);
                match builder.locate(image_center)? {
                    Some(existing) => builder.link(tile_id, existing),
                    None => {
                        let image_vertices =
                            vertices.iter().map(|v| reflection.apply(*v)).collect();
                        let new_id = builder.push_tile(
                            image_center,
                            image_vertices,
                            round,
                            Some(round),
                        )?;
                        builder.link(tile_id, new_id);
                        next_frontier.push(new_id);
                    }
                }
            }
        }
        frontier = next_frontier;
    }
    Ok(builder.finish(depth))
}

struct PatchBuilder {
    p: u32,
    q: u32,
    cap: u64,
    tiles: Vec<Tile>,
    grid: HashMap<(i64, i64), Vec<usize>>,
    adjacency: Vec<(usize, usize)>,
}

impl PatchBuilder {
    fn new(p: u32, q: u32, cap: u64) -> Self {
        PatchBuilder {
            p,
            q,
            cap,
            tiles: Vec::new(),
            grid: HashMap::new(),
            adjacency: Vec::new(),
        }
    }

    fn cell(z: Complex64) -> (i64, i64) {
        ((z.re / GRID_STEP).round() as i64, (z.im / GRID_STEP).round() as i64)
    }

    /// Finds an existing tile with this center.  Distinct-but-too-close
    /// centers (within ten dedup tolerances) are a precision failure.
    fn locate(&self, center: Complex64) -> Result<Option<usize>, GeometryError> {
        let (cx, cy) = Self::cell(center);
        let mut nearest: Option<(usize, f64)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(cx + dx, cy + dy)) {
                    for &id in ids {
                        let d = (self.tiles[id].center.to_complex() - center).norm();
                        if nearest.map_or(true, |(_, best)| d < best) {
                            nearest = Some((id, d));
                        }
                    }
                }
            }
        }
        match nearest {
            Some((id, d)) if d <= DEDUP_TOLERANCE => Ok(Some(id)),
            Some((id, d)) if d <= 10.0 * DEDUP_TOLERANCE => {
                let a = self.tiles[id].center;
                Err(GeometryError::PrecisionLoss {
                    a: (a.x(), a.y()),
                    b: (center.re, center.im),
                    distance: d,
                })
            }
            _ => Ok(None),
        }
    }

    fn push_tile(
        &mut self,
        center: Complex64,
        vertices: Vec<Complex64>,
        distance: u32,
        depth_if_over: Option<u32>,
    ) -> Result<usize, GeometryError> {
        if self.tiles.len() as u64 + 1 > self.cap {
            return Err(GeometryError::PatchTooLarge {
                depth: depth_if_over.unwrap_or(0),
                cap: self.cap,
            });
        }
        let id = self.tiles.len();
        let tile = Tile {
            id,
            distance,
            center: DiskPoint::from_complex(center)?,
            vertices: vertices
                .into_iter()
                .map(DiskPoint::from_complex)
                .collect::<Result<_, _>>()?,
        };
        self.grid.entry(Self::cell(center)).or_default().push(id);
        self.tiles.push(tile);
        Ok(id)
    }

    fn link(&mut self, a: usize, b: usize) {
        let pair = (a.min(b), a.max(b));
        self.adjacency.push(pair);
    }

    fn finish(mut self, depth: u32) -> TilingPatch {
        self.adjacency.sort_unstable();
        self.adjacency.dedup();
        TilingPatch {
            p: self.p,
            q: self.q,
            depth,
            tiles: self.tiles,
            adjacency: self.adjacency,
        }
    }
}

impl TilingPatch {
    /// A patch with no tiles at all (renders to a bare disk).
    pub fn empty(p: u32, q: u32) -> Result<Self, GeometryError> {
        check_hyperbolic(p, q)?;
        Ok(TilingPatch {
            p,
            q,
            depth: 0,
            tiles: Vec::new(),
            adjacency: Vec::new(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    /// Deduplicated edge-adjacency pairs, each `(low id, high id)`.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Tiles per complete distance class: classes `0..depth` are complete,
    /// the outermost discovered class is not and is excluded.
    pub fn distance_census(&self) -> Vec<u64> {
        if self.depth == 0 {
            return Vec::new();
        }
        let mut counts = vec![0u64; self.depth as usize];
        for tile in &self.tiles {
            if tile.distance < self.depth {
                counts[tile.distance as usize] += 1;
            }
        }
        counts
    }

    /// Groups coinciding polygon corners; returns each cluster's
    /// representative point and the tiles meeting there.
    pub fn vertex_clusters(&self) -> Vec<(DiskPoint, Vec<usize>)> {
        let mut clusters: Vec<(DiskPoint, Vec<usize>)> = Vec::new();
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let step = 1e-6;
        for tile in &self.tiles {
            for v in &tile.vertices {
                let z = v.to_complex();
                let key = ((z.re / step).round() as i64, (z.im / step).round() as i64);
                let mut found = None;
                'search: for dx in -1..=1 {
                    for dy in -1..=1 {
                        if let Some(ids) = grid.get(&(key.0 + dx, key.1 + dy)) {
                            for &ci in ids {
                                if (clusters[ci].0.to_complex() - z).norm() < METRIC_TOLERANCE {
                                    found = Some(ci);
                                    break 'search;
                                }
                            }
                        }
                    }
                }
                match found {
                    Some(ci) => clusters[ci].1.push(tile.id),
                    None => {
                        let ci = clusters.len();
                        clusters.push((*v, vec![tile.id]));
                        grid.entry(key).or_default().push(ci);
                    }
                }
            }
        }
        for (_, ids) in &mut clusters {
            ids.sort_unstable();
            ids.dedup();
        }
        clusters
    }

    /// JSON dump of the patch; coordinates carry 12 significant digits.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{{\"p\":{},\"q\":{},\"depth\":{},\"tiles\":[",
            self.p, self.q, self.depth
        ));
        for (i, tile) in self.tiles.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!(
                "{{\"id\":{},\"distance\":{},\"center\":[{},{}],\"vertices\":[",
                tile.id,
                tile.distance,
                fmt_sig12(tile.center.x()),
                fmt_sig12(tile.center.y())
            ));
            for (j, v) in tile.vertices.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format!("[{},{}]", fmt_sig12(v.x()), fmt_sig12(v.y())));
            }
            out.push_str("]}");
        }
        out.push_str("]}");
        out
    }
}

/// 12 significant digits, scientific notation (a valid JSON number).
fn fmt_sig12(v: f64) -> String {
    format!("{v:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_identities_at_the_reference_tilings() {
        let r54 = circumradius(5, 4).unwrap();
        assert!(
            (r54.cosh() - (std::f64::consts::PI / 4.0).cos() / (std::f64::consts::PI / 5.0).sin())
                .abs()
                < 1e-12
        );
        assert!((r54 - 0.6269).abs() < 5e-5, "{{5,4}} radius ≈ 0.6269, got {r54}");
        let r73 = circumradius(7, 3).unwrap();
        assert!(
            (r73.cosh() - (std::f64::consts::PI / 3.0).cos() / (std::f64::consts::PI / 7.0).sin())
                .abs()
                < 1e-12
        );
        assert!((r73 - 0.5453).abs() < 5e-5, "{{7,3}} radius ≈ 0.5453, got {r73}");
        assert!(circumradius(4, 4).is_err());
        assert!(circumradius(3, 6).is_err());
    }

    #[test]
    fn the_two_radii_and_the_edge_close_a_right_triangle() {
        // hyperbolic Pythagoras: cosh(vertex) = cosh(apothem)·cosh(edge/2)
        for (p, q) in [(5u32, 4u32), (7, 3), (6, 4), (4, 5), (9, 7)] {
            let a = circumradius(p, q).unwrap();
            let v = vertex_radius(p, q).unwrap();
            let e = edge_length(p, q).unwrap() / 2.0;
            assert!(
                (v.cosh() - a.cosh() * e.cosh()).abs() < 1e-10,
                "right-triangle closure at {{{p},{q}}}"
            );
        }
    }

    #[test]
    fn depth_zero_patch_is_the_single_cell() {
        let patch = expand(5, 4, 0).unwrap();
        assert_eq!(patch.tile_count(), 1);
        assert_eq!(patch.tiles()[0].vertices.len(), 5);
        assert_eq!(patch.tiles()[0].distance, 0);
        assert!(patch.adjacency().is_empty());
        assert_eq!(patch.distance_census(), Vec::<u64>::new());
    }

    #[test]
    fn central_cell_has_the_right_metric() {
        let patch = expand(5, 4, 0).unwrap();
        let tile = &patch.tiles()[0];
        let rv = vertex_radius(5, 4).unwrap();
        let edge = edge_length(5, 4).unwrap();
        for (i, v) in tile.vertices.iter().enumerate() {
            assert!(
                (DiskPoint::origin().distance(*v) - rv).abs() < METRIC_TOLERANCE,
                "vertex {i} sits at the vertex radius"
            );
            let w = tile.vertices[(i + 1) % 5];
            assert!(
                (v.distance(w) - edge).abs() < METRIC_TOLERANCE,
                "edge {i} has the {{5,4}} edge length"
            );
        }
    }

    #[test]
    fn first_rings_match_the_reference_counts() {
        let patch = expand(5, 4, 3).unwrap();
        assert_eq!(patch.distance_census(), vec![1, 5, 15]);
        assert_eq!(patch.tile_count(), 1 + 5 + 15 + 40);
        let patch = expand(7, 3, 3).unwrap();
        assert_eq!(patch.distance_census(), vec![1, 7, 21]);
        assert_eq!(patch.tile_count(), 1 + 7 + 21 + 56);
    }

    #[test]
    fn all_edges_share_the_tiling_edge_length() {
        for (p, q) in [(5u32, 4u32), (7, 3), (4, 5)] {
            let patch = expand(p, q, 2).unwrap();
            let edge = edge_length(p, q).unwrap();
            for tile in patch.tiles() {
                for (i, v) in tile.vertices.iter().enumerate() {
                    let w = tile.vertices[(i + 1) % tile.vertices.len()];
                    assert!(
                        (v.distance(w) - edge).abs() < METRIC_TOLERANCE,
                        "tile {} edge {i} drifts from the edge length at {{{p},{q}}}",
                        tile.id
                    );
                }
            }
        }
    }

    #[test]
    fn adjacent_tiles_sit_one_step_apart() {
        let patch = expand(5, 4, 2).unwrap();
        let step = 2.0 * circumradius(5, 4).unwrap();
        for &(a, b) in patch.adjacency() {
            let d = patch.tiles()[a].center.distance(patch.tiles()[b].center);
            assert!(
                (d - step).abs() < METRIC_TOLERANCE,
                "adjacent centers {a},{b} are {d}, expected {step}"
            );
        }
    }

    #[test]
    fn interior_vertices_gather_q_tiles() {
        for (p, q) in [(5u32, 4u32), (7, 3)] {
            let depth = 3;
            let patch = expand(p, q, depth).unwrap();
            let interior_limit = depth - 1;
            for (point, tiles) in patch.vertex_clusters() {
                let min_distance = tiles
                    .iter()
                    .map(|&t| patch.tiles()[t].distance)
                    .min()
                    .unwrap();
                if min_distance < interior_limit {
                    assert_eq!(
                        tiles.len(),
                        q as usize,
                        "interior vertex at ({}, {}) of {{{p},{q}}}",
                        point.x(),
                        point.y()
                    );
                }
            }
        }
    }

    #[test]
    fn tile_cap_halts_expansion() {
        match expand_with_cap(5, 4, 3, 10) {
            Err(GeometryError::PatchTooLarge { cap: 10, .. }) => {}
            other => panic!("expected PatchTooLarge, got {other:?}"),
        }
        assert_eq!(expand_with_cap(5, 4, 1, 6).unwrap().tile_count(), 6);
    }

    #[test]
    fn disk_points_reject_the_boundary() {
        assert!(DiskPoint::new(0.9999, 0.0).is_ok());
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.8).is_err());
        assert_eq!(
            DiskPoint::new(2.0, 0.0),
            Err(GeometryError::OutsideDisk { x: 2.0, y: 0.0 })
        );
    }

    #[test]
    fn distance_is_a_metric_on_samples() {
        let pts = [
            DiskPoint::new(0.0, 0.0).unwrap(),
            DiskPoint::new(0.5, 0.0).unwrap(),
            DiskPoint::new(0.0, 0.5).unwrap(),
            DiskPoint::new(-0.3, 0.4).unwrap(),
        ];
        for a in &pts {
            assert!(a.distance(*a).abs() < 1e-12);
            for b in &pts {
                assert!((a.distance(*b) - b.distance(*a)).abs() < 1e-12);
                for c in &pts {
                    assert!(a.distance(*c) <= a.distance(*b) + b.distance(*c) + 1e-12);
                }
            }
        }
        // calibration: distance from 0 to r is 2·atanh r
        let r = 0.62f64;
        let z = DiskPoint::new(r, 0.0).unwrap();
        assert!((DiskPoint::origin().distance(z) - 2.0 * r.atanh()).abs() < 1e-12);
    }

    #[test]
    fn patch_json_is_valid_and_bounded() {
        let patch = expand(5, 4, 1).unwrap();
        let value: serde_json::Value = serde_json::from_str(&patch.to_json()).unwrap();
        assert_eq!(value["p"], 5);
        assert_eq!(value["tiles"].as_array().unwrap().len(), 6);
        let c0 = value["tiles"][0]["center"][0].as_f64().unwrap();
        assert!(c0.abs() < 1e-9, "central tile sits at the origin");
        for tile in value["tiles"].as_array().unwrap() {
            for v in tile["vertices"].as_array().unwrap() {
                let x = v[0].as_f64().unwrap();
                let y = v[1].as_f64().unwrap();
                assert!(x * x + y * y < 1.0, "vertices stay in the disk");
            }
        }
    }

    #[test]
    fn deeper_expansion_is_deterministic() {
        let a = expand(7, 3, 4).unwrap();
        let b = expand(7, 3, 4).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.adjacency(), b.adjacency());
    }
}
