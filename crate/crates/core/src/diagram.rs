//! Wiring diagrams as SVG.
//!
//! Position 1 is the top wire. Every particle is drawn as one polyline that
//! moves between neighbouring wires at its swaps, and each swap gets a
//! `<circle class="crossing">` marker at the point where the two polylines
//! cross. Initial labels `1..n` run down the left edge; the right edge shows
//! the final configuration.

use std::fmt::Write as _;
use std::path::Path;

use crate::network::SortingNetwork;

const STEP: f64 = 30.0;
const GAP: f64 = 24.0;
const MARGIN: f64 = 30.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Renders the wiring diagram of `network` as an SVG document.
pub fn wiring_svg(network: &SortingNetwork) -> String {
    let n = network.n();
    let steps = network.len();
    let width = 2.0 * MARGIN + STEP * (steps as f64 + 1.0);
    let height = 2.0 * MARGIN + GAP * (n as f64 - 1.0);
    let x_at = |t: usize| MARGIN + STEP * (t as f64 + 0.5);
    let y_at = |pos: usize| MARGIN + GAP * (pos as f64 - 1.0);

    // Positions of every particle over time.
    let mut position: Vec<usize> = (0..=n).collect();
    let mut config: Vec<u32> = (1..=n as u32).collect();
    let mut tracks: Vec<Vec<(f64, f64)>> = (0..=n)
        .map(|p| {
            if p == 0 {
                Vec::new()
            } else {
                vec![(MARGIN, y_at(p))]
            }
        })
        .collect();
    let mut crossings = Vec::with_capacity(steps);
    for (t, &s) in network.swaps().iter().enumerate() {
        let s = s as usize;
        let (a, b) = (config[s - 1] as usize, config[s] as usize);
        // Every particle holds its wire until the start of the step.
        for particle in 1..=n {
            tracks[particle].push((x_at(t), y_at(position[particle])));
        }
        config.swap(s - 1, s);
        position[a] = s + 1;
        position[b] = s;
        for particle in [a, b] {
            tracks[particle].push((x_at(t + 1), y_at(position[particle])));
        }
        crossings.push(((x_at(t) + x_at(t + 1)) / 2.0, (y_at(s) + y_at(s + 1)) / 2.0));
    }
    for particle in 1..=n {
        tracks[particle].push((width - MARGIN, y_at(position[particle])));
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<title>{n}-particle sorting network, {steps} swaps</title>"#
    );
    for (particle, track) in tracks.iter().enumerate().skip(1) {
        let points: Vec<String> = track
            .iter()
            .map(|(x, y)| format!("{x:.1},{y:.1}"))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="wire" data-particle="{particle}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            PALETTE[(particle - 1) % PALETTE.len()],
            points.join(" ")
        );
    }
    for (t, (x, y)) in crossings.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<circle class="crossing" data-time="{}" data-location="{}" cx="{x:.1}" cy="{y:.1}" r="2.5" fill="black"/>"#,
            t + 1,
            network.swap_at(t + 1)
        );
    }
    for pos in 1..=n {
        let _ = writeln!(
            svg,
            r#"<text class="label-left" x="{:.1}" y="{:.1}" text-anchor="end" font-size="14">{pos}</text>"#,
            MARGIN - 8.0,
            y_at(pos) + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text class="label-right" x="{:.1}" y="{:.1}" font-size="14">{}</text>"#,
            width - MARGIN + 8.0,
            y_at(pos) + 5.0,
            config[pos - 1]
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn write_wiring_svg(network: &SortingNetwork, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, wiring_svg(network))
}
