//! Adaptive quadrature, plus a thin wrapper over the `roots` crate's Brent solver.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subinterval_count: usize,
}

impl QuadratureResult {
    pub fn zero() -> Self {
        QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            subinterval_count: 0,
        }
    }
}

impl std::ops::Add for QuadratureResult {
    type Output = QuadratureResult;

    fn add(self, rhs: Self) -> Self {
        QuadratureResult {
            value: self.value + rhs.value,
            error_estimate: self.error_estimate + rhs.error_estimate,
            subinterval_count: self.subinterval_count + rhs.subinterval_count,
        }
    }
}

// Kronrod 15-point abscissae (non-negative half) and weights; the 7-point
// Gauss rule uses the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod 7/15 panel: (Kronrod value, |Kronrod - Gauss|).
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

const MAX_PANELS: usize = 2000;

/// Globally adaptive Gauss-Kronrod integration: the panel with the largest
/// error estimate is bisected until the summed estimate is below `abs_tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> QuadratureResult {
    if a == b {
        return QuadratureResult::zero();
    }
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total_err = error;
    while total_err > abs_tol && heap.len() < MAX_PANELS {
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        total_err += le + re - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }
    // re-sum to shed the drift of the running totals
    let (value, error_estimate) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    QuadratureResult {
        value,
        error_estimate,
        subinterval_count: heap.len(),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("no sign change on [{lo}, {hi}]: f = ({flo}, {fhi})")]
    NotBracketed {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },
    #[error("root refinement did not converge in {0} iterations")]
    NoConvergence(usize),
}

const MAX_ROOT_ITER: usize = 200;

/// Stops on an exact zero or once the bracket is within `x_tol` plus a few ulps.
struct BracketWidth {
    x_tol: f64,
}

impl roots::Convergency<f64> for BracketWidth {
    fn is_root_found(&mut self, y: f64) -> bool {
        y == 0.0
    }
    fn is_converged(&mut self, x1: f64, x2: f64) -> bool {
        (x1 - x2).abs() <= self.x_tol + 4.0 * f64::EPSILON * x1.abs().max(x2.abs())
    }
    fn is_iteration_limit_reached(&mut self, iter: usize) -> bool {
        iter >= MAX_ROOT_ITER
    }
}

/// Brent's method on a sign-changing bracket.
pub fn brent(f: impl Fn(f64) -> f64, lo: f64, hi: f64, x_tol: f64) -> Result<f64, RootError> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() && flo != 0.0 && fhi != 0.0 {
        return Err(RootError::NotBracketed { lo, hi, flo, fhi });
    }
    roots::find_root_brent(lo, hi, &f, &mut BracketWidth { x_tol }).map_err(|e| match e {
        roots::SearchError::NoBracketing => RootError::NotBracketed { lo, hi, flo, fhi },
        _ => RootError::NoConvergence(MAX_ROOT_ITER),
    })
}
