//! CSV and SVG emitters. Rational columns always come with a float twin.

use std::fmt::Write;

use crate::derivatives::Dyadic;
use crate::dynamics::Histogram;
use crate::rational::{self, Rational};

/// `bin_lo,bin_hi,count,normalized_value`.
pub fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("bin_lo,bin_hi,count,normalized_value\n");
    for (i, (c, v)) in h.counts.iter().zip(h.normalized()).enumerate() {
        let _ = writeln!(out, "{:.12},{:.12},{},{:.12}", h.edges[i], h.edges[i + 1], c, v);
    }
    out
}

/// `position,position_float,value,value_float`, positions as reduced dyadics.
pub fn profile_csv(rows: &[(Dyadic, Rational)]) -> String {
    let mut out = String::from("position,position_float,value,value_float\n");
    for (p, v) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p,
            p.to_f64(),
            rational::format(v),
            rational::to_f64(v)
        );
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 320.0;
const PAD: f64 = 32.0;

fn svg_header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{PAD}\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Static bar chart of the normalized histogram values.
pub fn histogram_svg(h: &Histogram, title: &str) -> String {
    let vals = h.normalized();
    let top = vals.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let plot_w = WIDTH - 2.0 * PAD;
    let plot_h = HEIGHT - 2.0 * PAD;
    let bw = plot_w / vals.len().max(1) as f64;
    let mut out = svg_header(title);
    for (i, v) in vals.iter().enumerate() {
        let bh = plot_h * v / top;
        let _ = writeln!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#4a6fa5\"/>",
            PAD + i as f64 * bw,
            PAD + plot_h - bh,
            bw.max(0.5),
            bh
        );
    }
    let _ = writeln!(
        out,
        "<line x1=\"{PAD}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"black\"/>",
        y = PAD + plot_h,
        x2 = PAD + plot_w
    );
    let _ = writeln!(
        out,
        "<text x=\"{PAD}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{:.4}</text>",
        HEIGHT - 10.0,
        h.edges[0]
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>",
        WIDTH - PAD,
        HEIGHT - 10.0,
        h.edges[h.edges.len() - 1]
    );
    out.push_str("</svg>\n");
    out
}

/// Polyline of `(x, y)` samples.
pub fn line_svg(points: &[(f64, f64)], title: &str) -> String {
    let mut out = svg_header(title);
    if points.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (xmin, xmax) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (ymin, ymax) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let sx = (WIDTH - 2.0 * PAD) / (xmax - xmin).max(f64::MIN_POSITIVE);
    let sy = (HEIGHT - 2.0 * PAD) / (ymax - ymin).max(f64::MIN_POSITIVE);
    let pts: Vec<String> = points
        .iter()
        .map(|(x, y)| {
            format!(
                "{:.2},{:.2}",
                PAD + (x - xmin) * sx,
                HEIGHT - PAD - (y - ymin) * sy
            )
        })
        .collect();
    let _ = writeln!(
        out,
        "<polyline fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1\" points=\"{}\"/>",
        pts.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Normalization;
    use crate::rational::rat;

    #[test]
    fn histogram_csv_header_and_rows() {
        let h = Histogram {
            edges: vec![0.0, 0.5, 1.0],
            counts: vec![1, 3],
            normalization: Normalization::MeanOne,
            cloud_size: 4,
        };
        let csv = histogram_csv(&h);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "bin_lo,bin_hi,count,normalized_value");
        assert!(lines[2].starts_with("0.500000000000,1.000000000000,3,1.5"));
        assert!(histogram_svg(&h, "a<b").contains("a&lt;b"));
    }

    #[test]
    fn profile_csv_has_twins() {
        let rows = vec![(Dyadic { num: 1, exp: 1 }, rat(1, 2))];
        assert_eq!(
            profile_csv(&rows),
            "position,position_float,value,value_float\n1/2,0.5,1/2,0.5\n"
        );
        assert!(line_svg(&[(0.0, 1.0), (1.0, 0.0)], "p").contains("polyline"));
    }
}
