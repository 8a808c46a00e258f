//! Outline construction and assembly of the full planar geometry: spline
//! radiator, spline ground profile, feed line, and L-shaped ground extension.

use serde::Serialize;

use super::spline::{NaturalCubic, PeriodicCubic};
use super::{DerivedParams, DesignError, DesignVector};

/// Default sampling density for the radiator outline.
pub const RADIATOR_SAMPLES: usize = 256;
/// Default sampling density for the ground profile.
pub const GROUND_SAMPLES: usize = 128;

/// An ordered polyline (open) or polygon (closed) in mm coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Outline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

impl Outline {
    /// Total length, including the closing segment for closed outlines.
    pub fn perimeter(&self) -> f64 {
        let mut sum: f64 = self
            .points
            .windows(2)
            .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
            .sum();
        if self.closed && self.points.len() > 1 {
            let a = self.points[self.points.len() - 1];
            let b = self.points[0];
            sum += ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        }
        sum
    }

    /// Shoelace area of a closed outline; zero for open ones.
    pub fn enclosed_area(&self) -> f64 {
        if !self.closed || self.points.len() < 3 {
            return 0.0;
        }
        let n = self.points.len();
        let mut acc = 0.0;
        for i in 0..n {
            let [x0, y0] = self.points[i];
            let [x1, y1] = self.points[(i + 1) % n];
            acc += x0 * y1 - x1 * y0;
        }
        acc.abs() / 2.0
    }
}

/// Scalar descriptors of an assembled geometry, in mm / mm².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryFeatures {
    /// Arc length of the radiator outline.
    pub perimeter: f64,
    /// Area enclosed by the radiator outline.
    pub enclosed_area: f64,
    /// Average ground height `height * mean(ground knots)`.
    pub mean_ground_height: f64,
    /// Feed line length.
    pub feed_length: f64,
    /// Bounding box width.
    pub bbox_width: f64,
    /// Bounding box height.
    pub bbox_height: f64,
}

impl GeometryFeatures {
    /// Bounding-box footprint in mm².
    pub fn bbox_area(&self) -> f64 {
        self.bbox_width * self.bbox_height
    }
}

/// A fully realized design: all outlines lie within `[0, width] x [0, height]`.
#[derive(Debug, Clone)]
pub struct GeometryModel {
    pub radiator: Outline,
    pub ground_profile: Outline,
    pub feed: Outline,
    pub extension: Outline,
    pub features: GeometryFeatures,
}

/// Samples the closed radiator outline: a periodic cubic spline through radii
/// `radial_scale * knot` at equidistant azimuth angles, anchored so the lowest
/// sampled point touches the feed top (`y = feed_length`) and centered
/// horizontally on the feed line.
///
/// One knot yields an exact circle. Requires `samples >= max(16, 4L)`.
pub fn radiator_outline(
    p: &DerivedParams,
    radiator_knots: &[f64],
    samples: usize,
) -> Result<Outline, DesignError> {
    sample_radiator(p, radiator_knots, samples).map(|(outline, _)| outline)
}

/// Samples the radiator and also returns the polar center it was built around.
fn sample_radiator(
    p: &DerivedParams,
    radiator_knots: &[f64],
    samples: usize,
) -> Result<(Outline, [f64; 2]), DesignError> {
    let l = radiator_knots.len();
    if l < 1 {
        return Err(DesignError::InvalidArgument(
            "at least one radiator knot required".into(),
        ));
    }
    if samples < 16.max(4 * l) {
        return Err(DesignError::InvalidArgument(format!(
            "radiator sampling needs at least {} points, got {samples}",
            16.max(4 * l)
        )));
    }
    let radii: Vec<f64> = radiator_knots.iter().map(|k| p.radial_scale * k).collect();
    for &r in &radii {
        if r <= 0.0 {
            return Err(DesignError::InfeasibleGeometry {
                quantity: "radiator knot radius",
                value: r,
            });
        }
    }
    let tau = std::f64::consts::TAU;
    let sites: Vec<f64> = (0..l).map(|i| tau * i as f64 / l as f64).collect();
    let spline = PeriodicCubic::fit(&sites, &radii, tau);
    // Interpolation through strongly alternating knots can undershoot zero
    // between knots; flooring keeps the curve single-valued with r > 0.
    let floor = 0.01 * p.radial_scale;
    let mut polar = Vec::with_capacity(samples);
    let mut min_drop = f64::INFINITY;
    for i in 0..samples {
        let theta = tau * i as f64 / samples as f64;
        let r = spline.eval(theta).max(floor);
        let dy = r * theta.sin();
        min_drop = min_drop.min(dy);
        polar.push((theta, r, dy));
    }
    let center_y = p.feed_length - min_drop;
    let points = polar
        .iter()
        .map(|&(theta, r, dy)| [p.feed_center + r * theta.cos(), center_y + dy])
        .collect();
    Ok((
        Outline {
            points,
            closed: true,
        },
        [p.feed_center, center_y],
    ))
}

/// Samples the open ground profile: the top edge of the ground region from
/// `(0, _)` to `(width, _)`, a natural cubic spline through heights
/// `height * knot` at equidistant abscissae. A single knot gives a constant
/// height.
pub fn ground_outline(
    p: &DerivedParams,
    ground_knots: &[f64],
    samples: usize,
) -> Result<Outline, DesignError> {
    let l = ground_knots.len();
    if l < 1 {
        return Err(DesignError::InvalidArgument(
            "at least one ground knot required".into(),
        ));
    }
    if samples < 16.max(4 * l) {
        return Err(DesignError::InvalidArgument(format!(
            "ground sampling needs at least {} points, got {samples}",
            16.max(4 * l)
        )));
    }
    let heights: Vec<f64> = ground_knots.iter().map(|k| p.height * k).collect();
    let points = if l == 1 {
        (0..=samples)
            .map(|i| [p.width * i as f64 / samples as f64, heights[0]])
            .collect()
    } else {
        let sites: Vec<f64> = (0..l)
            .map(|i| p.width * i as f64 / (l - 1) as f64)
            .collect();
        let spline = NaturalCubic::fit(&sites, &heights);
        (0..=samples)
            .map(|i| {
                let x = p.width * i as f64 / samples as f64;
                [x, spline.eval(x).clamp(0.0, p.height)]
            })
            .collect()
    };
    Ok(Outline {
        points,
        closed: false,
    })
}

/// Assembles the full geometry for an in-bounds design.
///
/// Scalar features come from the unclipped radiator curve; the stored radiator
/// outline is radially clipped into the bounding box, which preserves its
/// single-valued (hence simple) form.
pub fn build_geometry(x: &DesignVector) -> Result<GeometryModel, DesignError> {
    let (core, ground_knots, radiator_knots) = x.split();
    let p = super::derive_params(core)?;
    let (radiator_raw, center) = sample_radiator(&p, radiator_knots, RADIATOR_SAMPLES)?;
    let ground_profile = ground_outline(&p, ground_knots, GROUND_SAMPLES)?;

    let features = GeometryFeatures {
        perimeter: radiator_raw.perimeter(),
        enclosed_area: radiator_raw.enclosed_area(),
        mean_ground_height: p.height
            * (ground_knots.iter().sum::<f64>() / ground_knots.len() as f64),
        feed_length: p.feed_length,
        bbox_width: p.width,
        bbox_height: p.height,
    };

    let radiator = clip_radial(&radiator_raw, center, &p);
    let half = p.feed_width / 2.0;
    let feed = Outline {
        points: vec![
            [p.feed_center - half, 0.0],
            [p.feed_center + half, 0.0],
            [p.feed_center + half, p.feed_length],
            [p.feed_center - half, p.feed_length],
        ],
        closed: true,
    };
    let extension = extension_outline(&p);

    Ok(GeometryModel {
        radiator,
        ground_profile,
        feed,
        extension,
        features,
    })
}

/// L-shaped ground extension along the right edge: an upright bar of
/// `ext_rise x ext_bar` capped by a horizontal bar of `ext_bar x ext_run`
/// running left along the top edge.
fn extension_outline(p: &DerivedParams) -> Outline {
    let x_right = p.width;
    let x_stem = p.width - p.ext_bar;
    let x_cap = p.width - p.ext_run;
    let mut points = vec![
        [x_stem, 0.0],
        [x_right, 0.0],
        [x_right, p.height],
        [x_cap, p.height],
        [x_cap, p.ext_rise],
        [x_stem, p.ext_rise],
    ];
    points.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    Outline {
        points,
        closed: true,
    }
}

/// Shrinks each radius so the point stays in `[0, width] x [0, height]`,
/// keeping the curve radial around its center (and hence simple).
fn clip_radial(outline: &Outline, center: [f64; 2], p: &DerivedParams) -> Outline {
    let [cx, cy] = center;
    let points = outline
        .points
        .iter()
        .map(|&[x, y]| {
            let (dx, dy) = (x - cx, y - cy);
            let mut t = 1.0_f64;
            if dx > 0.0 {
                t = t.min((p.width - cx) / dx);
            } else if dx < 0.0 {
                t = t.min(-cx / dx);
            }
            if dy > 0.0 {
                t = t.min((p.height - cy) / dy);
            } else if dy < 0.0 {
                t = t.min(-cy / dy);
            }
            let t = t.clamp(0.0, 1.0);
            [cx + dx * t, cy + dy * t]
        })
        .collect();
    Outline {
        points,
        closed: true,
    }
}

/// True iff no two non-adjacent segments of the outline intersect.
pub fn is_simple(outline: &Outline) -> bool {
    let pts = &outline.points;
    let n = pts.len();
    if n < 3 {
        return true;
    }
    let seg_count = if outline.closed { n } else { n - 1 };
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    for i in 0..seg_count {
        for j in (i + 1)..seg_count {
            // Skip segments sharing an endpoint (consecutive, or the wrap pair).
            if j == i + 1 || (outline.closed && i == 0 && j == seg_count - 1) {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], q: [f64; 2]) -> bool {
    q[0] >= a[0].min(b[0]) - 1e-12
        && q[0] <= a[0].max(b[0]) + 1e-12
        && q[1] >= a[1].min(b[1]) - 1e-12
        && q[1] <= a[1].max(b[1]) + 1e-12
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Renders the geometry as a standalone SVG; 1 user unit = 0.1 mm.
pub fn to_svg(model: &GeometryModel) -> String {
    let scale = 10.0;
    let w = model.features.bbox_width * scale;
    let h = model.features.bbox_height * scale;
    let margin = 20.0;
    let legend_h = 80.0;
    let flip = |y: f64| h - y * scale;
    let path = |o: &Outline| {
        let mut d = String::new();
        for (i, pt) in o.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd}{:.2},{:.2} ", pt[0] * scale, flip(pt[1])));
        }
        if o.closed {
            d.push('Z');
        }
        d
    };
    // Ground region: the profile plus the bottom edge, filled.
    let mut ground_points = model.ground_profile.points.clone();
    ground_points.push([model.features.bbox_width, 0.0]);
    ground_points.push([0.0, 0.0]);
    let ground_region = Outline {
        points: ground_points,
        closed: true,
    };

    let f = &model.features;
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" ",
            "viewBox=\"{vx:.1} {vy:.1} {vw:.1} {vh:.1}\">\n",
            "<rect x=\"0\" y=\"0\" width=\"{w:.1}\" height=\"{h:.1}\" ",
            "fill=\"#f5f1e8\" stroke=\"#888\" stroke-width=\"1\"/>\n",
            "<path d=\"{ground}\" fill=\"#9aa7b8\" stroke=\"#5b6775\" stroke-width=\"1\"/>\n",
            "<path d=\"{ext}\" fill=\"#6e8b74\" stroke=\"#425548\" stroke-width=\"1\"/>\n",
            "<path d=\"{feed}\" fill=\"#c9762b\" stroke=\"#8a4f1d\" stroke-width=\"1\"/>\n",
            "<path d=\"{rad}\" fill=\"#b3452f\" fill-opacity=\"0.85\" ",
            "stroke=\"#7d2f20\" stroke-width=\"1\"/>\n",
            "<g font-family=\"monospace\" font-size=\"14\">\n",
            "<text x=\"0\" y=\"{l1:.1}\">radiator (spline outline)  ",
            "perimeter {per:.2} mm, area {area:.2} mm2</text>\n",
            "<text x=\"0\" y=\"{l2:.1}\">feed line (orange), ground plane (gray), ",
            "mean ground height {mgh:.2} mm</text>\n",
            "<text x=\"0\" y=\"{l3:.1}\">extension (green): L-bar on the ground's ",
            "right edge, upright then across the top</text>\n",
            "<text x=\"0\" y=\"{l4:.1}\">bounding box {bw:.2} x {bh:.2} mm ",
            "(1 svg unit = 0.1 mm)</text>\n",
            "</g>\n</svg>\n"
        ),
        vx = -margin,
        vy = -margin,
        vw = w + 2.0 * margin,
        vh = h + 2.0 * margin + legend_h,
        w = w,
        h = h,
        ground = path(&ground_region),
        ext = path(&model.extension),
        feed = path(&model.feed),
        rad = path(&model.radiator),
        l1 = h + 20.0,
        l2 = h + 36.0,
        l3 = h + 52.0,
        l4 = h + 68.0,
        per = f.perimeter,
        area = f.enclosed_area,
        mgh = f.mean_ground_height,
        bw = f.bbox_width,
        bh = f.bbox_height,
    )
}

/// Serializes the geometry as the polygon JSON document.
pub fn to_polygon_json(model: &GeometryModel) -> serde_json::Value {
    let pts = |o: &Outline| -> Vec<[f64; 2]> { o.points.clone() };
    serde_json::json!({
        "radiator": pts(&model.radiator),
        "ground": pts(&model.ground_profile),
        "feed": pts(&model.feed),
        "extension": pts(&model.extension),
        "features": model.features,
        "units": "mm",
    })
}
