//! SVG picture of a rank-two apartment with the fixed subspace of a twist.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::catalog::dominant_rays;
use crate::fixed::FixedSubgroup;
use crate::linalg::Q;
use crate::{Error, Result};

const SIZE: f64 = 600.0;
/// Half-width of the drawn region in units of the largest alcove vertex.
const EXTENT: f64 = 3.0;

struct Frame {
    /// Cholesky factor of the invariant form in coweight coordinates.
    m: [[f64; 2]; 2],
    scale: f64,
    half: f64,
}

impl Frame {
    fn euclid(&self, v: &[Q]) -> (f64, f64) {
        let (a, b) = (v[0].to_f64().unwrap(), v[1].to_f64().unwrap());
        (self.m[0][0] * a + self.m[0][1] * b, self.m[1][1] * b)
    }

    fn screen(&self, p: (f64, f64)) -> (f64, f64) {
        (SIZE / 2.0 + p.0 * self.scale, SIZE / 2.0 - p.1 * self.scale)
    }

    /// Clip the line `{p + t d}` to the drawing square.
    fn clip(&self, p: (f64, f64), d: (f64, f64), t_min: f64) -> Option<((f64, f64), (f64, f64))> {
        let h = self.half;
        let (mut lo, mut hi) = (t_min, f64::INFINITY);
        if t_min == f64::NEG_INFINITY {
            lo = f64::NEG_INFINITY;
        }
        for (pi, di) in [(p.0, d.0), (p.1, d.1)] {
            if di.abs() < 1e-12 {
                if pi.abs() > h {
                    return None;
                }
                continue;
            }
            let (a, b) = ((-h - pi) / di, (h - pi) / di);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        (lo < hi).then_some(((p.0 + lo * d.0, p.1 + lo * d.1), (p.0 + hi * d.0, p.1 + hi * d.1)))
    }
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn line(out: &mut String, f: &Frame, seg: ((f64, f64), (f64, f64)), style: &str) {
    let (a, b) = (f.screen(seg.0), f.screen(seg.1));
    writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
        fmt(a.0),
        fmt(a.1),
        fmt(b.0),
        fmt(b.1)
    )
    .unwrap();
}

/// Root hyperplanes, shaded base alcove, fixed subspace, base point and the
/// relative and absolute dominant rays.
pub fn render_svg(fs: &FixedSubgroup) -> Result<String> {
    let g = fs.absolute();
    if g.rank() != 2 {
        return Err(Error::NotApplicable(format!("figures need rank 2, got rank {}", g.rank())));
    }
    let datum = &g.datum;
    let e0 = [Q::from_integer(1), Q::from_integer(0)];
    let e1 = [Q::from_integer(0), Q::from_integer(1)];
    let g11 = datum.inner(&e0, &e0).to_f64().unwrap();
    let g12 = datum.inner(&e0, &e1).to_f64().unwrap();
    let g22 = datum.inner(&e1, &e1).to_f64().unwrap();
    let a = g11.sqrt();
    let m = [[a, g12 / a], [0.0, (g22 - g12 * g12 / g11).sqrt()]];

    let mut vertices: Vec<Vec<Q>> = crate::fixed::alcove_vertices(g);
    let mut frame = Frame { m, scale: 1.0, half: 1.0 };
    let reach = vertices
        .iter()
        .map(|v| {
            let p = frame.euclid(v);
            p.0.hypot(p.1)
        })
        .fold(0.0, f64::max);
    frame.half = EXTENT * reach;
    frame.scale = SIZE / (2.0 * frame.half);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE as u32
    )
    .unwrap();
    writeln!(out, r#"  <rect x="0" y="0" width="{s}" height="{s}" fill="white"/>"#, s = SIZE as u32).unwrap();

    // base alcove, vertices ordered by angle around the centroid
    let pts: Vec<(f64, f64)> = vertices.iter().map(|v| frame.euclid(v)).collect();
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        let ai = (pts[i].1 - cy).atan2(pts[i].0 - cx);
        let aj = (pts[j].1 - cy).atan2(pts[j].0 - cx);
        ai.partial_cmp(&aj).unwrap()
    });
    vertices = order.iter().map(|&i| vertices[i].clone()).collect();
    let poly: Vec<String> = vertices
        .iter()
        .map(|v| {
            let s = frame.screen(frame.euclid(v));
            format!("{},{}", fmt(s.0), fmt(s.1))
        })
        .collect();
    writeln!(out, r##"  <polygon points="{}" fill="#bbbbbb" stroke="none"/>"##, poly.join(" ")).unwrap();

    // affine root hyperplanes <v, alpha> = k
    for rt in &datum.positive_roots {
        let n = (rt.root[0] as f64, rt.root[1] as f64);
        // direction of the hyperplane in coweight coordinates: (-n1, n0)
        let dir = frame.euclid(&[Q::from_integer(-rt.root[1]), Q::from_integer(rt.root[0])]);
        let range = (frame.half * 4.0 * (n.0.abs() + n.1.abs()) / frame.m[1][1].min(frame.m[0][0])).ceil() as i64 + 2;
        for k in -range..=range {
            // a point with <v, alpha> = k
            let p = if rt.root[0] != 0 {
                [Q::new(k, rt.root[0]), Q::from_integer(0)]
            } else {
                [Q::from_integer(0), Q::new(k, rt.root[1])]
            };
            if let Some(seg) = frame.clip(frame.euclid(&p), dir, f64::NEG_INFINITY) {
                line(&mut out, &frame, seg, r##"stroke="#555555" stroke-width="1""##);
            }
        }
    }

    // fixed subspace
    let ap = &fs.apartment;
    match ap.dimension() {
        0 => {
            let s = frame.screen(frame.euclid(&ap.offset));
            writeln!(out, r#"  <circle cx="{}" cy="{}" r="5" fill="black"/>"#, fmt(s.0), fmt(s.1)).unwrap();
        }
        1 => {
            if let Some(seg) = frame.clip(frame.euclid(&ap.offset), frame.euclid(&ap.directions[0]), f64::NEG_INFINITY) {
                line(&mut out, &frame, seg, r#"stroke="black" stroke-width="4""#);
            }
        }
        _ => {
            writeln!(out, r#"  <text x="10" y="20" font-size="14">fixed subspace: whole plane</text>"#).unwrap();
        }
    }

    let origin = frame.euclid(&[Q::from_integer(0), Q::from_integer(0)]);
    let e = frame.euclid(&ap.base_point);
    if let Some((rel, abs)) = dominant_rays(fs) {
        let (dr, da) = (frame.euclid(&rel), frame.euclid(&abs));
        if let Some(seg) = frame.clip(e, dr, 0.0) {
            line(&mut out, &frame, seg, r#"stroke="black" stroke-width="2" stroke-dasharray="10 4""#);
        }
        if let Some(seg) = frame.clip(origin, dr, 0.0) {
            line(&mut out, &frame, seg, r#"stroke="black" stroke-width="2" stroke-dasharray="8 4 2 4""#);
        }
        if let Some(seg) = frame.clip(origin, da, 0.0) {
            line(&mut out, &frame, seg, r#"stroke="black" stroke-width="4" stroke-dasharray="2 4""#);
        }
    }
    let so = frame.screen(origin);
    writeln!(out, r#"  <circle cx="{}" cy="{}" r="6" fill="black"/>"#, fmt(so.0), fmt(so.1)).unwrap();
    let se = frame.screen(e);
    writeln!(out, r##"  <circle cx="{}" cy="{}" r="6" fill="#888888" stroke="black"/>"##, fmt(se.0), fmt(se.1)).unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_config;

    #[test]
    fn renders_rank_two_only() {
        for name in ["a2_swap", "b2_swap", "a1xa1_swap", "g2_id"] {
            let s = catalog_config(name).unwrap().build().unwrap();
            let fs = FixedSubgroup::new(&s.group, &s.twist).unwrap();
            let svg = render_svg(&fs).unwrap();
            assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
            if std::env::var_os("STRATA_DUMP_SVG").is_some() {
                std::fs::write(format!("/tmp/{name}.svg"), &svg).unwrap();
            }
        }
        let s = catalog_config("a1_ad").unwrap().build().unwrap();
        let fs = FixedSubgroup::new(&s.group, &s.twist).unwrap();
        assert!(matches!(render_svg(&fs), Err(Error::NotApplicable(_))));
    }
}
