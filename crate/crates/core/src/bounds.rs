//! Normalized slope lengths, the crossing-count threshold, and the assembled
//! two-sided volume bounds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::augmentation::{
    augment, cusp_density_bound, volume_lower_boroczky, REGULAR_IDEAL_TETRAHEDRON_VOLUME,
};
use crate::cone::{delta_v_bound, worst_case_per_cusp};
use crate::diagram::PlanarDiagram;
use crate::numeric::QuadratureResult;
use crate::twist::{gate_with_regions, twist_regions, DiagramGate};

/// Half the squared normalized length the filling slopes must reach for the
/// cone deformation to complete: a region qualifies once `c >= 2 * 56.4696`.
pub const REQUIRED_HALF_SQUARED_LENGTH: f64 = 56.4696;

/// Normalized length every filling slope must reach.
pub fn required_normalized_length() -> f64 {
    (2.0 * REQUIRED_HALF_SQUARED_LENGTH).sqrt()
}

/// Rounded constants as quoted alongside the computed ones.
pub mod published {
    pub const PER_CUSP_INTEGRAL: f64 = 0.16436;
    pub const CUSP_DENSITY: f64 = 0.853276;
    pub const AUGMENTED_COEFFICIENT: f64 = 3.51586;
    pub const FINAL_COEFFICIENT: f64 = 3.3515;
    pub const TETRAHEDRON_VOLUME: f64 = 1.01494;
    pub const CROSSING_THRESHOLD: usize = 113;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{what} = {value} must be positive")]
    NonPositive { what: &'static str, value: f64 },
    #[error("crossing count must be at least 1")]
    NoCrossings,
}

/// Rectangle sides on a crossing-circle cusp: white side `w`, shaded side
/// `s`, and the crossing count of the region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeGeometry {
    pub white: f64,
    pub shaded: f64,
    pub crossings: usize,
}

impl SlopeGeometry {
    pub fn new(white: f64, shaded: f64, crossings: usize) -> Result<Self, BoundsError> {
        if white.is_nan() || white <= 0.0 {
            return Err(BoundsError::NonPositive {
                what: "w",
                value: white,
            });
        }
        if shaded.is_nan() || shaded <= 0.0 {
            return Err(BoundsError::NonPositive {
                what: "s",
                value: shaded,
            });
        }
        if crossings == 0 {
            return Err(BoundsError::NoCrossings);
        }
        Ok(SlopeGeometry {
            white,
            shaded,
            crossings,
        })
    }

    /// Two rectangles of area `s * w`.
    pub fn torus_area(&self) -> f64 {
        2.0 * self.shaded * self.white
    }
}

/// Length of one white step plus `c` shaded steps, over the square root of
/// the torus area: `sqrt(w / 2s + c^2 s / 2w)`.
pub fn normalized_length(g: &SlopeGeometry) -> Result<f64, BoundsError> {
    let g = SlopeGeometry::new(g.white, g.shaded, g.crossings)?;
    let c = g.crossings as f64;
    Ok((g.white / (2.0 * g.shaded) + c * c * g.shaded / (2.0 * g.white)).sqrt())
}

/// `sqrt(c)`, the minimum of [`normalized_length`] over all `w, s > 0`,
/// attained at `w = c s`.
pub fn min_normalized_length(c: usize) -> Result<f64, BoundsError> {
    if c == 0 {
        return Err(BoundsError::NoCrossings);
    }
    Ok((c as f64).sqrt())
}

/// Smallest crossing count whose normalized-length floor clears the
/// required length.
pub fn crossing_threshold() -> usize {
    (2.0 * REQUIRED_HALF_SQUARED_LENGTH).ceil() as usize
}

/// The per-twist-region coefficient of the lower bound, rebuilt from the
/// tetrahedron volume and the quadrature; returns (augmented, deduction,
/// final).
pub fn recomputed_coefficients() -> (f64, QuadratureResult, f64) {
    let augmented = 3.0 / cusp_density_bound();
    let per_cusp = worst_case_per_cusp();
    (augmented, per_cusp, augmented - per_cusp.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantPair {
    pub computed: f64,
    pub published: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub tetrahedron_volume: ConstantPair,
    pub cusp_density: ConstantPair,
    pub augmented_coefficient: ConstantPair,
    pub per_cusp_integral: ConstantPair,
    pub per_cusp_integral_error: f64,
    pub final_coefficient: ConstantPair,
    pub crossing_threshold: usize,
}

impl ConstantsReport {
    pub fn compute() -> Self {
        let (augmented, per_cusp, fin) = recomputed_coefficients();
        ConstantsReport {
            tetrahedron_volume: ConstantPair {
                computed: REGULAR_IDEAL_TETRAHEDRON_VOLUME,
                published: published::TETRAHEDRON_VOLUME,
            },
            cusp_density: ConstantPair {
                computed: cusp_density_bound(),
                published: published::CUSP_DENSITY,
            },
            augmented_coefficient: ConstantPair {
                computed: augmented,
                published: published::AUGMENTED_COEFFICIENT,
            },
            per_cusp_integral: ConstantPair {
                computed: per_cusp.value,
                published: published::PER_CUSP_INTEGRAL,
            },
            per_cusp_integral_error: per_cusp.error_estimate,
            final_coefficient: ConstantPair {
                computed: fin,
                published: published::FINAL_COEFFICIENT,
            },
            crossing_threshold: crossing_threshold(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionBound {
    pub crossings: usize,
    pub normalized_length_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeBoundReport {
    pub name: Option<String>,
    pub twist_count: usize,
    pub gate: DiagramGate,
    /// False when a non-default threshold was used.
    pub threshold_is_default: bool,
    pub regions: Vec<RegionBound>,
    /// Volume bound for the augmented link complement.
    pub augmented_lower: Option<f64>,
    /// Worst-case volume lost in the Dehn filling.
    pub volume_change: Option<QuadratureResult>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub lower_applicable: bool,
    pub constants: ConstantsReport,
}

pub fn volume_bounds(d: &PlanarDiagram) -> VolumeBoundReport {
    volume_bounds_with_threshold(d, crossing_threshold())
}

/// [`volume_bounds`] with the crossing threshold overridden. The lower bound
/// is only certified at thresholds at least [`crossing_threshold`].
pub fn volume_bounds_with_threshold(d: &PlanarDiagram, threshold: usize) -> VolumeBoundReport {
    let regions = twist_regions(d);
    let gate = gate_with_regions(d, &regions, threshold);
    let tw = regions.len();
    let region_bounds = regions
        .iter()
        .map(|r| RegionBound {
            crossings: r.crossing_count,
            normalized_length_floor: (r.crossing_count as f64).sqrt(),
        })
        .collect();

    let mut augmented_lower = None;
    let mut volume_change = None;
    let mut lower = None;
    if gate.passed() && threshold >= crossing_threshold() {
        let assembled = augment(d, &regions).ok().and_then(|a| {
            let aug = volume_lower_boroczky(&a).ok()?;
            let dv = delta_v_bound(tw, None).ok()?;
            Some((aug, dv))
        });
        if let Some((aug, dv)) = assembled {
            augmented_lower = Some(aug);
            volume_change = Some(dv);
            lower = Some(aug - dv.value - dv.error_estimate);
        }
    }
    let upper = (tw >= 1).then(|| 10.0 * REGULAR_IDEAL_TETRAHEDRON_VOLUME * (tw - 1) as f64);

    VolumeBoundReport {
        name: d.name().map(str::to_string),
        twist_count: tw,
        gate,
        threshold_is_default: threshold == crossing_threshold(),
        regions: region_bounds,
        augmented_lower,
        volume_change,
        lower_applicable: lower.is_some(),
        lower,
        upper,
        constants: ConstantsReport::compute(),
    }
}
