//! Deterministic SVG rendering of planar results: sites, optional cluster
//! hull outlines, and pants curves on separate layers. Coordinates are
//! rounded to six decimals on a fixed canvas so renders diff cleanly.

use crate::error::CliError;
use crate::formats::{read_instance, read_result, InstanceKind};
use clusterpants::geometry::{hull_indices, PointE2};
use std::path::Path;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    offset_x: f64,
    offset_y: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for (x, y) in points {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        let width = (max_x - min_x).max(1e-9);
        let height = (max_y - min_y).max(1e-9);
        let scale = (CANVAS - 2.0 * MARGIN) / width.max(height);
        // Center the smaller extent.
        let offset_x = MARGIN + (CANVAS - 2.0 * MARGIN - width * scale) / 2.0;
        let offset_y = MARGIN + (CANVAS - 2.0 * MARGIN - height * scale) / 2.0;
        Frame {
            min_x,
            min_y,
            scale,
            offset_x,
            offset_y,
        }
    }

    fn map(&self, p: PointE2) -> (f64, f64) {
        let x = self.offset_x + (p.x - self.min_x) * self.scale;
        // SVG y grows downward.
        let y = CANVAS - (self.offset_y + (p.y - self.min_y) * self.scale);
        (x, y)
    }
}

fn path_of(frame: &Frame, vertices: &[PointE2]) -> String {
    let mut d = String::new();
    for (i, &v) in vertices.iter().enumerate() {
        let (x, y) = frame.map(v);
        let cmd = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{cmd}{x:.6},{y:.6} "));
    }
    d.push('Z');
    d
}

pub fn cmd_render(
    result_path: &Path,
    instance_path: &Path,
    hulls: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let result = read_result(result_path)?;
    let inst = read_instance(instance_path)?;
    if inst.kind != InstanceKind::Euclidean {
        return Err(CliError::precondition(format!(
            "render needs planar data; instance kind is '{}'",
            inst.kind
        )));
    }
    let pts = inst.euclidean_points()?;
    let curves: Vec<Vec<PointE2>> = result
        .curves
        .iter()
        .flatten()
        .map(|c| c.vertices.iter().map(|&[x, y]| PointE2::new(x, y)).collect())
        .collect();

    let frame = Frame::fit(
        pts.iter()
            .map(|p| (p.x, p.y))
            .chain(curves.iter().flatten().map(|p| (p.x, p.y))),
    );

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\" width=\"{CANVAS}\" height=\"{CANVAS}\">\n"
    ));

    svg.push_str("  <g id=\"hulls\" fill=\"none\" stroke=\"#9aa7b0\" stroke-width=\"1\">\n");
    if hulls {
        if let Some(hj) = &result.hierarchy {
            let hierarchy = hj.to_hierarchy();
            hierarchy
                .validate_partition(pts.len())
                .map_err(|e| CliError::input(format!("result does not match instance: {e}")))?;
            let sites = hierarchy.node_sites();
            for id in hierarchy.internal_ids() {
                let cluster: Vec<PointE2> = sites[id].iter().map(|&s| pts[s]).collect();
                let hull: Vec<PointE2> = hull_indices(&cluster)
                    .map_err(CliError::from)?
                    .into_iter()
                    .map(|i| cluster[i])
                    .collect();
                svg.push_str(&format!(
                    "    <path class=\"hull\" d=\"{}\"/>\n",
                    path_of(&frame, &hull)
                ));
            }
        }
    }
    svg.push_str("  </g>\n");

    svg.push_str("  <g id=\"curves\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\">\n");
    for curve in &curves {
        svg.push_str(&format!(
            "    <path class=\"pants-curve\" d=\"{}\"/>\n",
            path_of(&frame, curve)
        ));
    }
    svg.push_str("  </g>\n");

    svg.push_str("  <g id=\"sites\" fill=\"#1f3a93\">\n");
    for &p in &pts {
        let (x, y) = frame.map(p);
        svg.push_str(&format!(
            "    <circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"3\"/>\n"
        ));
    }
    svg.push_str("  </g>\n</svg>\n");

    match output {
        Some(path) => std::fs::write(path, svg)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}
