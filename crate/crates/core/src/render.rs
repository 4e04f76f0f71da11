//! Path renderings: ASCII grids for the terminal, SVG for reports.
//!
//! Conventions: endpoints draw as squares (`S`/`D` in ASCII), obstacles as
//! triangles (`X`), other viewpoints as dots (`o`). Each robot gets its own
//! ASCII grid and its own stroke color in SVG.

use crate::grid::{Coord, GridScenario, PathState};

/// One ASCII grid per robot, separated by blank lines.
pub fn render_ascii(state: &PathState, scenario: &GridScenario) -> String {
    let grid = scenario.grid();
    let mut out = String::new();
    for robot in 0..state.robots() {
        let ep = scenario.endpoint(robot);
        out.push_str(&format!("robot {robot}: {} to {}\n", ep.source, ep.dest));
        // Nodes at even (row, col) character cells, edge glyphs between.
        let mut canvas = vec![vec![' '; 2 * grid.cols() - 1]; 2 * grid.rows() - 1];
        for node in grid.nodes() {
            let glyph = if node == ep.source {
                'S'
            } else if node == ep.dest {
                'D'
            } else if scenario.is_obstacle(node) {
                'X'
            } else {
                'o'
            };
            canvas[2 * node.row][2 * node.col] = glyph;
        }
        for e in state.active_edges(robot) {
            let (a, b) = grid.edge_endpoints(e);
            let row = a.row + b.row;
            let col = a.col + b.col;
            canvas[row][col] = if a.row == b.row { '-' } else { '|' };
        }
        for line in canvas {
            let text: String = line.into_iter().collect();
            out.push_str(text.trim_end());
            out.push('\n');
        }
        if robot + 1 < state.robots() {
            out.push('\n');
        }
    }
    out
}

const STROKES: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];
const CELL: usize = 40;
const MARGIN: usize = 20;

fn svg_xy(node: Coord) -> (usize, usize) {
    (MARGIN + node.col * CELL, MARGIN + node.row * CELL)
}

/// A single SVG with the grid skeleton, node markers, and one stroke color
/// per robot. Output is deterministic for identical inputs.
pub fn render_svg(state: &PathState, scenario: &GridScenario) -> String {
    let grid = scenario.grid();
    let width = 2 * MARGIN + (grid.cols() - 1) * CELL;
    let height = 2 * MARGIN + (grid.rows() - 1) * CELL;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("  <g stroke=\"#dddddd\" stroke-width=\"1\">\n");
    for e in grid.edges() {
        let (a, b) = grid.edge_endpoints(e);
        let (x1, y1) = svg_xy(a);
        let (x2, y2) = svg_xy(b);
        out.push_str(&format!(
            "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>\n"
        ));
    }
    out.push_str("  </g>\n");

    for robot in 0..state.robots() {
        let stroke = STROKES[robot % STROKES.len()];
        out.push_str(&format!(
            "  <g stroke=\"{stroke}\" stroke-width=\"4\" stroke-linecap=\"round\">\n"
        ));
        for e in state.active_edges(robot) {
            let (a, b) = grid.edge_endpoints(e);
            let (x1, y1) = svg_xy(a);
            let (x2, y2) = svg_xy(b);
            out.push_str(&format!(
                "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>\n"
            ));
        }
        out.push_str("  </g>\n");
    }

    // Node markers go on top of the strokes.
    for node in grid.nodes() {
        let (x, y) = svg_xy(node);
        let is_endpoint = scenario
            .endpoints()
            .iter()
            .any(|ep| ep.source == node || ep.dest == node);
        if is_endpoint {
            out.push_str(&format!(
                "  <rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"#333333\"/>\n",
                x - 6,
                y - 6
            ));
        } else if scenario.is_obstacle(node) {
            out.push_str(&format!(
                "  <polygon points=\"{},{} {},{} {},{}\" fill=\"#cc4444\"/>\n",
                x,
                y - 7,
                x - 7,
                y + 6,
                x + 7,
                y + 6
            ));
        } else {
            out.push_str(&format!(
                "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"#888888\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
