//! Minimal SVG writer with a fixed data-to-pixel map and fixed number formatting.

use std::fmt::Write;

pub struct Svg {
    width: f64,
    height: f64,
    margin: f64,
    x: (f64, f64),
    y: (f64, f64),
    body: String,
}

#[derive(Debug, Clone, Copy)]
pub struct Stroke {
    pub color: &'static str,
    pub width: f64,
    pub dashed: bool,
}

impl Stroke {
    pub const fn solid(color: &'static str, width: f64) -> Self {
        Stroke { color, width, dashed: false }
    }

    pub const fn dashed(color: &'static str, width: f64) -> Self {
        Stroke { color, width, dashed: true }
    }

    fn attrs(&self) -> String {
        let dash = if self.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        format!(r#"fill="none" stroke="{}" stroke-width="{}"{dash}"#, self.color, n(self.width))
    }
}

fn n(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Svg {
    pub fn new(width: f64, height: f64, x: (f64, f64), y: (f64, f64)) -> Self {
        Svg { width, height, margin: 56.0, x, y, body: String::new() }
    }

    pub fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let w = self.width - 2.0 * self.margin;
        let h = self.height - 2.0 * self.margin;
        (
            self.margin + w * (x - self.x.0) / (self.x.1 - self.x.0),
            self.height - self.margin - h * (y - self.y.0) / (self.y.1 - self.y.0),
        )
    }

    fn inside(&self, x: f64, y: f64) -> bool {
        x.is_finite() && y.is_finite() && x >= self.x.0 && x <= self.x.1 && y >= self.y.0 && y <= self.y.1
    }

    /// Polyline through the points, broken wherever a point leaves the frame.
    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: Stroke) {
        let mut run: Vec<(f64, f64)> = Vec::new();
        for &(x, y) in pts.iter().chain(std::iter::once(&(f64::NAN, f64::NAN))) {
            if self.inside(x, y) {
                run.push(self.px(x, y));
                continue;
            }
            if run.len() >= 2 {
                let mut d = String::new();
                for (i, (a, b)) in run.iter().enumerate() {
                    let _ = write!(d, "{}{},{}", if i == 0 { "" } else { " " }, n(*a), n(*b));
                }
                let _ = writeln!(self.body, r#"<polyline points="{d}" {}/>"#, stroke.attrs());
            }
            run.clear();
        }
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: Stroke) {
        let (x1, y1) = self.px(a.0, a.1);
        let (x2, y2) = self.px(b.0, b.1);
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {}/>"#,
            n(x1), n(y1), n(x2), n(y2), stroke.attrs()
        );
    }

    /// A marker; `filled` for an included point, hollow for an excluded one.
    pub fn dot(&mut self, x: f64, y: f64, r: f64, color: &str, filled: bool) {
        if !self.inside(x, y) {
            return;
        }
        let (cx, cy) = self.px(x, y);
        let fill = if filled { color } else { "white" };
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}" stroke="{color}" stroke-width="1"/>"#,
            n(cx), n(cy), n(r)
        );
    }

    pub fn rect(&mut self, lo: (f64, f64), hi: (f64, f64), color: &str, opacity: f64) {
        let (x1, y1) = self.px(lo.0, hi.1);
        let (x2, y2) = self.px(hi.0, lo.1);
        let _ = writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{color}" fill-opacity="{}"/>"#,
            n(x1), n(y1), n(x2 - x1), n(y2 - y1), n(opacity)
        );
    }

    pub fn text(&mut self, x: f64, y: f64, label: &str, size: f64) {
        let (px, py) = self.px(x, y);
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-family="serif" font-size="{}" text-anchor="middle">{}</text>"#,
            n(px), n(py), n(size), escape(label)
        );
    }

    /// Frame, axis labels and tick values at the window corners.
    fn frame(&self, title: &str, xlabel: &str, ylabel: &str) -> String {
        let m = self.margin;
        let (w, h) = (self.width, self.height);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
            n(m), n(m), n(w - 2.0 * m), n(h - 2.0 * m)
        );
        let label = |s: &mut String, x: f64, y: f64, anchor: &str, t: &str| {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="serif" font-size="12" text-anchor="{anchor}">{}</text>"#,
                n(x), n(y), escape(t)
            );
        };
        label(&mut s, w / 2.0, m - 14.0, "middle", title);
        label(&mut s, w / 2.0, h - 8.0, "middle", xlabel);
        let _ = writeln!(
            s,
            r#"<text x="14" y="{}" font-family="serif" font-size="12" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
            n(h / 2.0), n(h / 2.0), escape(ylabel)
        );
        label(&mut s, m, h - m + 14.0, "middle", &n(self.x.0));
        label(&mut s, w - m, h - m + 14.0, "middle", &n(self.x.1));
        label(&mut s, m - 4.0, h - m, "end", &n(self.y.0));
        label(&mut s, m - 4.0, m + 4.0, "end", &n(self.y.1));
        s
    }

    pub fn finish(self, title: &str, xlabel: &str, ylabel: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            n(self.width), n(self.height), n(self.width), n(self.height)
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        s.push_str(&self.body);
        s.push_str(&self.frame(title, xlabel, ylabel));
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_corners_and_clips() {
        let mut s = Svg::new(272.0, 172.0, (0.0, 2.0), (-1.0, 1.0));
        assert_eq!(s.px(0.0, -1.0), (56.0, 116.0));
        assert_eq!(s.px(2.0, 1.0), (216.0, 56.0));
        s.polyline(&[(0.0, 0.0), (1.0, 0.0), (1.0, 5.0), (1.5, 0.5), (2.0, 0.0)], Stroke::dashed("red", 1.0));
        let out = s.finish("t", "x", "y");
        assert_eq!(out.matches("<polyline").count(), 2);
        assert!(out.contains("stroke-dasharray"));
        assert!(out.starts_with("<svg") && out.ends_with("</svg>\n"));
    }

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(n(1.0), "1");
        assert_eq!(n(-0.001), "0");
        assert_eq!(n(2.5), "2.5");
    }
}
