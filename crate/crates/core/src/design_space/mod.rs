//! Decoding, validation, and geometric realization of spline-parameterized
//! monopole designs.
//!
//! A design is a flat vector `[core | ground knots | radiator knots]` of
//! length `2L + 6`, where `L` is the knot count shared by the ground profile
//! and the radiator outline. The six core entries are, in order:
//!
//! | index | name          | unit | meaning                                             |
//! |-------|---------------|------|-----------------------------------------------------|
//! | 0     | `width`       | mm   | substrate width                                     |
//! | 1     | `feed_length` | mm   | length of the feed line from the bottom edge        |
//! | 2     | `ext_rise`    | mm   | vertical rise of the L-shaped ground extension      |
//! | 3     | `ext_ratio`   | –    | horizontal run of the extension as a width fraction |
//! | 4     | `ext_bar`     | mm   | thickness of the extension bar                      |
//! | 5     | `feed_offset` | mm   | feed centerline offset from `width / 2`             |
//!
//! Ground knots are height fractions in `[0.2, 0.8]`, radiator knots radius
//! fractions in `[0.1, 1]`. Everything else (total height, radial scale, feed
//! position) is derived; see [`DerivedParams`].

mod geometry;
pub mod spline;

pub use geometry::{
    build_geometry, ground_outline, is_simple, radiator_outline, to_polygon_json, to_svg,
    GeometryFeatures, GeometryModel, Outline, GROUND_SAMPLES, RADIATOR_SAMPLES,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use spline::{NaturalCubic, PeriodicCubic};

/// Number of core (non-knot) entries at the front of a design vector.
pub const CORE_DIM: usize = 6;

/// Fixed feed line width in mm, chosen for a 50 Ohm input impedance and never
/// optimized.
pub const FEED_WIDTH: f64 = 1.8;

const CORE_LOWER: [f64; CORE_DIM] = [6.0, 4.0, 10.0, 0.05, 0.5, -1.0];
const CORE_UPPER: [f64; CORE_DIM] = [30.0, 15.0, 30.0, 1.0, 2.5, 1.0];
/// Bounds for ground-profile knots (height fractions).
pub const GROUND_KNOT_BOUNDS: (f64, f64) = (0.2, 0.8);
/// Bounds for radiator knots (radius fractions).
pub const RADIATOR_KNOT_BOUNDS: (f64, f64) = (0.1, 1.0);

/// Errors from design decoding and geometry construction.
#[derive(Debug, Error)]
pub enum DesignError {
    #[error("design vector has {got} entries but knot count {knots} requires {expected}")]
    LengthMismatch {
        expected: usize,
        got: usize,
        knots: usize,
    },
    #[error("infeasible geometry: {quantity} = {value}")]
    InfeasibleGeometry {
        quantity: &'static str,
        value: f64,
    },
    #[error("design outside bounds: {}", format_violations(.violations))]
    OutOfBounds { violations: Vec<BoundViolation> },
    #[error("{0}")]
    InvalidArgument(String),
}

/// One coordinate outside its box bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundViolation {
    pub index: usize,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

fn format_violations(v: &[BoundViolation]) -> String {
    v.iter()
        .map(|b| format!("[{}] {} not in [{}, {}]", b.index, b.value, b.lower, b.upper))
        .collect::<Vec<_>>()
        .join(", ")
}

/// A raw design vector plus its knot count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignVector {
    values: Vec<f64>,
    knot_count: usize,
}

impl DesignVector {
    /// Builds a design vector, checking the `2L + 6` length invariant.
    pub fn new(values: Vec<f64>, knot_count: usize) -> Result<Self, DesignError> {
        if knot_count < 1 {
            return Err(DesignError::InvalidArgument(
                "knot count must be at least 1".into(),
            ));
        }
        let expected = 2 * knot_count + CORE_DIM;
        if values.len() != expected {
            return Err(DesignError::LengthMismatch {
                expected,
                got: values.len(),
                knots: knot_count,
            });
        }
        Ok(Self { values, knot_count })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn knot_count(&self) -> usize {
        self.knot_count
    }

    /// Problem dimensionality `2L + 6`.
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Splits into `(core, ground knots, radiator knots)`; concatenating the
    /// three slices in order reproduces the vector exactly.
    pub fn split(&self) -> (&[f64], &[f64], &[f64]) {
        let l = self.knot_count;
        (
            &self.values[..CORE_DIM],
            &self.values[CORE_DIM..CORE_DIM + l],
            &self.values[CORE_DIM + l..],
        )
    }

    pub fn core(&self) -> &[f64] {
        &self.values[..CORE_DIM]
    }

    pub fn ground_knots(&self) -> &[f64] {
        self.split().1
    }

    pub fn radiator_knots(&self) -> &[f64] {
        self.split().2
    }
}

/// Elementwise box bounds over a design vector layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
    knot_count: usize,
}

impl DesignBounds {
    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn knot_count(&self) -> usize {
        self.knot_count
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// All coordinates of `x` that violate the box (with `tol` slack).
    pub fn violations(&self, x: &DesignVector, tol: f64) -> Vec<BoundViolation> {
        x.values()
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                if v < self.lower[i] - tol || v > self.upper[i] + tol {
                    Some(BoundViolation {
                        index: i,
                        value: v,
                        lower: self.lower[i],
                        upper: self.upper[i],
                    })
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn contains(&self, x: &DesignVector, tol: f64) -> bool {
        x.dim() == self.dim() && self.violations(x, tol).is_empty()
    }
}

/// Default feasibility box for a given knot count: fixed core bounds plus the
/// knot bounds broadcast over both knot segments.
pub fn default_bounds(knot_count: usize) -> Result<DesignBounds, DesignError> {
    if knot_count < 1 {
        return Err(DesignError::InvalidArgument(
            "knot count must be at least 1".into(),
        ));
    }
    let mut lower = CORE_LOWER.to_vec();
    let mut upper = CORE_UPPER.to_vec();
    lower.extend(std::iter::repeat(GROUND_KNOT_BOUNDS.0).take(knot_count));
    upper.extend(std::iter::repeat(GROUND_KNOT_BOUNDS.1).take(knot_count));
    lower.extend(std::iter::repeat(RADIATOR_KNOT_BOUNDS.0).take(knot_count));
    upper.extend(std::iter::repeat(RADIATOR_KNOT_BOUNDS.1).take(knot_count));
    Ok(DesignBounds {
        lower,
        upper,
        knot_count,
    })
}

/// Quantities derived from the six core entries. All lengths in mm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    /// Substrate width.
    pub width: f64,
    /// Substrate height: `ext_rise + ext_bar`.
    pub height: f64,
    /// Horizontal run of the ground extension: `(width - ext_bar) * ext_ratio`.
    pub ext_run: f64,
    /// Feed transition radius: `min(width, height - feed_length) / 2`.
    /// Computed and exported but drives no geometry.
    pub feed_taper: f64,
    /// Radial scale of the radiator: `min(width - feed_offset, height - feed_length) / 2`.
    pub radial_scale: f64,
    /// Feed centerline x-position: `width / 2 + feed_offset`.
    pub feed_center: f64,
    /// Feed line width (constant 1.8).
    pub feed_width: f64,
    /// Feed line length.
    pub feed_length: f64,
    /// Vertical rise of the ground extension.
    pub ext_rise: f64,
    /// Thickness of the extension bar.
    pub ext_bar: f64,
}

/// Computes the derived quantities from the six core entries.
///
/// Fails when the radial scale collapses (`radial_scale <= 0`) or the radiator
/// region vanishes (`height <= feed_length`).
pub fn derive_params(core: &[f64]) -> Result<DerivedParams, DesignError> {
    if core.len() != CORE_DIM {
        return Err(DesignError::LengthMismatch {
            expected: CORE_DIM,
            got: core.len(),
            knots: 0,
        });
    }
    let (width, feed_length, ext_rise, ext_ratio, ext_bar, feed_offset) =
        (core[0], core[1], core[2], core[3], core[4], core[5]);
    let height = ext_rise + ext_bar;
    if height <= feed_length {
        return Err(DesignError::InfeasibleGeometry {
            quantity: "height - feed_length",
            value: height - feed_length,
        });
    }
    let radial_scale = (width - feed_offset).min(height - feed_length) / 2.0;
    if radial_scale <= 0.0 {
        return Err(DesignError::InfeasibleGeometry {
            quantity: "radial_scale",
            value: radial_scale,
        });
    }
    Ok(DerivedParams {
        width,
        height,
        ext_run: (width - ext_bar) * ext_ratio,
        feed_taper: width.min(height - feed_length) / 2.0,
        radial_scale,
        feed_center: 0.5 * width + feed_offset,
        feed_width: FEED_WIDTH,
        feed_length,
        ext_rise,
        ext_bar,
    })
}

/// Footprint area convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FootprintConvention {
    /// Full bounding box `width * height`.
    #[default]
    BoundingBox,
    /// Radial-scale variant `radial_scale * height`.
    PaperSy,
}

/// Planar area occupied by the design under the selected convention, in mm².
pub fn footprint(p: &DerivedParams, convention: FootprintConvention) -> f64 {
    match convention {
        FootprintConvention::BoundingBox => p.width * p.height,
        FootprintConvention::PaperSy => p.radial_scale * p.height,
    }
}

/// Maps a design into the unit box coordinate-wise: `u_k = (x_k - lo_k) / (hi_k - lo_k)`.
///
/// Fails when the design lies outside the bounds by more than `1e-12`.
pub fn normalize(x: &DesignVector, bounds: &DesignBounds) -> Result<Vec<f64>, DesignError> {
    if x.dim() != bounds.dim() {
        return Err(DesignError::LengthMismatch {
            expected: bounds.dim(),
            got: x.dim(),
            knots: bounds.knot_count(),
        });
    }
    let violations = bounds.violations(x, 1e-12);
    if !violations.is_empty() {
        return Err(DesignError::OutOfBounds { violations });
    }
    Ok(x.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| ((v - bounds.lower[i]) / (bounds.upper[i] - bounds.lower[i])).clamp(0.0, 1.0))
        .collect())
}

/// Inverse of [`normalize`]; `u` outside `[0,1]` is clamped onto the box.
pub fn denormalize(u: &[f64], bounds: &DesignBounds) -> Result<DesignVector, DesignError> {
    if u.len() != bounds.dim() {
        return Err(DesignError::LengthMismatch {
            expected: bounds.dim(),
            got: u.len(),
            knots: bounds.knot_count(),
        });
    }
    let values = u
        .iter()
        .enumerate()
        .map(|(i, &v)| bounds.lower[i] + v.clamp(0.0, 1.0) * (bounds.upper[i] - bounds.lower[i]))
        .collect();
    DesignVector::new(values, bounds.knot_count())
}

/// Topology of a knot vector: open profiles interpolate with natural end
/// conditions, closed ones with periodic closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotKind {
    Open,
    Periodic,
}

/// Resamples a knot vector onto a new equidistant layout of `target` knots by
/// evaluating its interpolating spline, then clips into the knot bounds.
///
/// Open knots sit at `(l-1)/(L-1)` over `[0, 1]` (a single knot is a constant),
/// periodic knots at angles `(l-1)/L` of a unit period.
pub fn interpolate_knots(knots: &[f64], target: usize, kind: KnotKind) -> Vec<f64> {
    assert!(!knots.is_empty(), "source knot vector must be non-empty");
    assert!(target >= 1, "target knot count must be at least 1");
    let l = knots.len();
    let (clip_lo, clip_hi) = match kind {
        KnotKind::Open => GROUND_KNOT_BOUNDS,
        KnotKind::Periodic => RADIATOR_KNOT_BOUNDS,
    };
    let lifted: Vec<f64> = match kind {
        KnotKind::Open => {
            let sites = open_sites(l);
            let spline = NaturalCubic::fit(&sites, knots);
            open_sites(target).iter().map(|&t| spline.eval(t)).collect()
        }
        KnotKind::Periodic => {
            let sites = periodic_sites(l);
            let spline = PeriodicCubic::fit(&sites, knots, 1.0);
            periodic_sites(target)
                .iter()
                .map(|&t| spline.eval(t))
                .collect()
        }
    };
    lifted.iter().map(|v| v.clamp(clip_lo, clip_hi)).collect()
}

fn open_sites(l: usize) -> Vec<f64> {
    if l == 1 {
        vec![0.0]
    } else {
        (0..l).map(|i| i as f64 / (l - 1) as f64).collect()
    }
}

fn periodic_sites(l: usize) -> Vec<f64> {
    (0..l).map(|i| i as f64 / l as f64).collect()
}
