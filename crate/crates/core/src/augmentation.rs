//! Fully augmented links: one crossing circle per twist region, full twists
//! removed, plus the combinatorics of the resulting ideal polyhedra and
//! cusp tilings.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{DiagramError, EdgeId, PlanarDiagram};
use crate::twist::TwistRegion;

/// Volume of the regular ideal tetrahedron, `3 * Lambda(pi/3)` where
/// `Lambda(t) = -int_0^t ln|2 sin s| ds`.
pub const REGULAR_IDEAL_TETRAHEDRON_VOLUME: f64 = 1.014_941_606_409_653_6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AugmentError {
    #[error("augmentation needs at least 2 twist regions, found {0}")]
    TooFewTwistRegions(usize),
    #[error("twist region {0} closes up on itself and cannot be untwisted")]
    CyclicRegion(usize),
    #[error("a crossing circle needs at least one crossing")]
    EmptyRegion,
    #[error("rebuilding the untwisted diagram failed: {0}")]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingCircle {
    pub index: usize,
    /// Crossings of the original twist region.
    pub crossing_count: usize,
    /// Full twists removed: `crossing_count = 2 * full_twists + |half_twist|`.
    pub full_twists: usize,
    /// 0 for an even region, otherwise the handedness of the leftover crossing.
    pub half_twist: i8,
    /// Crossing sign of the region (orientation-relative for links).
    pub twist_sign: i8,
    /// The two components passing through the circle (may coincide).
    pub strand_components: (usize, usize),
}

impl CrossingCircle {
    pub fn new(
        index: usize,
        crossing_count: usize,
        twist_sign: i8,
        strand_components: (usize, usize),
    ) -> Result<Self, AugmentError> {
        if crossing_count == 0 {
            return Err(AugmentError::EmptyRegion);
        }
        let twist_sign = if twist_sign < 0 { -1 } else { 1 };
        Ok(CrossingCircle {
            index,
            crossing_count,
            full_twists: crossing_count / 2,
            half_twist: if crossing_count % 2 == 1 {
                twist_sign
            } else {
                0
            },
            twist_sign,
            strand_components,
        })
    }

    /// Signed filling coefficient `n` of the slope `1/n`.
    pub fn filling(&self) -> i64 {
        self.twist_sign as i64 * self.full_twists as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneComponent {
    pub index: usize,
    /// Number of times the component passes through a crossing circle.
    pub passages: usize,
}

fn serialize_base<S: Serializer>(d: &PlanarDiagram, s: S) -> Result<S::Ok, S::Error> {
    d.to_json().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AugmentedLink {
    /// Diagram of the plane components with every full twist removed.
    #[serde(serialize_with = "serialize_base")]
    pub base: PlanarDiagram,
    pub crossing_circles: Vec<CrossingCircle>,
    pub plane_components: Vec<PlaneComponent>,
}

impl AugmentedLink {
    pub fn twist_count(&self) -> usize {
        self.crossing_circles.len()
    }
}

/// Adds a crossing circle around each twist region and removes full twists.
/// `regions` must be the twist regions of `d`.
pub fn augment(d: &PlanarDiagram, regions: &[TwistRegion]) -> Result<AugmentedLink, AugmentError> {
    if regions.len() < 2 {
        return Err(AugmentError::TooFewTwistRegions(regions.len()));
    }
    let mut circles = Vec::with_capacity(regions.len());
    let mut passages = vec![0usize; d.component_count()];
    let mut removed = vec![false; d.crossing_count()];
    for (i, r) in regions.iter().enumerate() {
        if r.cyclic {
            return Err(AugmentError::CyclicRegion(i));
        }
        let first = *r.crossings.first().ok_or(AugmentError::EmptyRegion)?;
        let comps = d.strand_components(first);
        let circle = CrossingCircle::new(i, r.crossing_count, d.crossings()[first].sign, comps)?;
        passages[comps.0] += 1;
        passages[comps.1] += 1;
        // consecutive pairs along the chain form the removed full twists
        for &x in &r.crossings[..2 * circle.full_twists] {
            removed[x] = true;
        }
        circles.push(circle);
    }

    let base = untwist(d, &removed)?;
    let plane_components = passages
        .into_iter()
        .enumerate()
        .map(|(index, passages)| PlaneComponent { index, passages })
        .collect();
    Ok(AugmentedLink {
        base,
        crossing_circles: circles,
        plane_components,
    })
}

fn find(parent: &mut [EdgeId], mut e: EdgeId) -> EdgeId {
    while parent[e] != e {
        parent[e] = parent[parent[e]];
        e = parent[e];
    }
    e
}

/// Deletes the marked crossings, letting each strand pass straight through.
/// Marked crossings must come in bigon-adjacent pairs so the result stays
/// planar.
fn untwist(d: &PlanarDiagram, removed: &[bool]) -> Result<PlanarDiagram, DiagramError> {
    let mut parent: Vec<EdgeId> = (0..d.edge_count()).collect();
    for (x, c) in d.crossings().iter().enumerate() {
        if removed[x] {
            for (a, b) in [(c.edges[0], c.edges[2]), (c.edges[1], c.edges[3])] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let label_of = |parent: &mut Vec<EdgeId>, e: EdgeId| d.edges()[find(parent, e)].label;
    let mut tuples = Vec::new();
    let mut touched = vec![false; d.edge_count()];
    for (x, c) in d.crossings().iter().enumerate() {
        if !removed[x] {
            let mut t = [0u32; 4];
            for (slot, &e) in t.iter_mut().zip(&c.edges) {
                let root = find(&mut parent, e);
                touched[root] = true;
                *slot = label_of(&mut parent, e);
            }
            tuples.push(t);
        }
    }
    let mut loops = Vec::new();
    for (e, edge) in d.edges().iter().enumerate() {
        if find(&mut parent, e) == e && !touched[e] {
            loops.push(edge.label);
        }
    }
    PlanarDiagram::new(
        d.name().map(|n| format!("{n} (augmented)")),
        &tuples,
        &loops,
    )
}

/// The filling curve on a crossing-circle cusp, in tiling steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FillingSlope {
    pub circle: usize,
    /// Slope `1 / filling` (meridian plus `filling` longitudes).
    pub filling: i64,
    pub white_steps: usize,
    pub shaded_steps: usize,
    /// +1 or -1: which way the shaded steps run.
    pub direction: i8,
}

pub fn filling_slopes(a: &AugmentedLink) -> Vec<FillingSlope> {
    a.crossing_circles
        .iter()
        .map(|c| FillingSlope {
            circle: c.index,
            filling: c.filling(),
            white_steps: 1,
            shaded_steps: 2 * c.full_twists + c.half_twist.unsigned_abs() as usize,
            direction: c.twist_sign,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gluing {
    Straight,
    HalfTwist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolyhedronCounts {
    pub ideal_vertices: usize,
    pub edges: usize,
    pub white_faces: usize,
    pub shaded_faces: usize,
}

impl PolyhedronCounts {
    pub fn euler_characteristic(&self) -> i64 {
        self.ideal_vertices as i64 - self.edges as i64
            + (self.white_faces + self.shaded_faces) as i64
    }
}

/// Two identical right-angled ideal polyhedra glued along white faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyhedralDecomposition {
    pub polyhedra: [PolyhedronCounts; 2],
    /// Per crossing circle, how its shaded triangles are identified.
    pub gluings: Vec<Gluing>,
}

pub fn decomposition(a: &AugmentedLink) -> PolyhedralDecomposition {
    let tw = a.twist_count();
    // 4-valent vertices (2E = 4V), two shaded triangles per circle, Euler
    // characteristic 2 fixes the white faces
    let counts = PolyhedronCounts {
        ideal_vertices: 3 * tw,
        edges: 6 * tw,
        white_faces: tw + 2,
        shaded_faces: 2 * tw,
    };
    PolyhedralDecomposition {
        polyhedra: [counts, counts],
        gluings: a
            .crossing_circles
            .iter()
            .map(|c| {
                if c.half_twist == 0 {
                    Gluing::Straight
                } else {
                    Gluing::HalfTwist
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cusp {
    CrossingCircle(usize),
    PlaneComponent(usize),
}

/// Step vector `(white, shaded)` along the sides of the tiling rectangles.
pub type Steps = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspTiling {
    pub cusp: Cusp,
    pub rectangle_count: usize,
    pub meridian: Option<Steps>,
    pub longitude: Option<Steps>,
}

pub fn cusp_tilings(a: &AugmentedLink) -> Vec<CuspTiling> {
    let circles = a.crossing_circles.iter().map(|c| CuspTiling {
        cusp: Cusp::CrossingCircle(c.index),
        rectangle_count: 2,
        meridian: Some((1, c.half_twist as i64)),
        longitude: Some((0, 2)),
    });
    let planes = a.plane_components.iter().map(|p| CuspTiling {
        cusp: Cusp::PlaneComponent(p.index),
        rectangle_count: 2 * p.passages,
        meridian: None,
        longitude: None,
    });
    circles.chain(planes).collect()
}

/// Lower bound on the total cusp volume: each tiling rectangle has sides of
/// length at least 1 and contributes at least 1/2.
pub fn cusp_volume_lower(a: &AugmentedLink) -> Result<f64, AugmentError> {
    let tw = a.twist_count();
    if tw < 2 {
        return Err(AugmentError::TooFewTwistRegions(tw));
    }
    let rectangles: usize = cusp_tilings(a).iter().map(|t| t.rectangle_count).sum();
    Ok(0.5 * rectangles as f64)
}

/// Horoball packing density bound `sqrt(3) / (2 v0)`.
pub fn cusp_density_bound() -> f64 {
    3f64.sqrt() / (2.0 * REGULAR_IDEAL_TETRAHEDRON_VOLUME)
}

/// Cusp volume divided by the maximal cusp density.
pub fn volume_lower_boroczky(a: &AugmentedLink) -> Result<f64, AugmentError> {
    Ok(cusp_volume_lower(a)? / cusp_density_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::numeric::integrate;
    use crate::synth;
    use crate::twist::twist_regions;

    fn augmented(d: &PlanarDiagram) -> AugmentedLink {
        augment(d, &twist_regions(d)).unwrap()
    }

    #[test]
    fn figure_eight() {
        let d = synth::double_twist(2, 2).unwrap();
        let a = augmented(&d);
        assert_eq!(a.twist_count(), 2);
        for c in &a.crossing_circles {
            assert_eq!((c.half_twist, c.full_twists), (0, 1));
        }
        assert_eq!(a.base.crossing_count(), 0);
        assert_eq!(a.plane_components.len(), 1);
        assert_eq!(a.plane_components[0].passages, 4);
        assert_eq!(a.base.component_count(), 1);
    }

    #[test]
    fn odd_and_even_regions() {
        let d = synth::double_twist(5, 4).unwrap();
        let a = augmented(&d);
        let mut got: Vec<_> = a
            .crossing_circles
            .iter()
            .map(|c| (c.crossing_count, c.half_twist.abs(), c.full_twists))
            .collect();
        got.sort();
        assert_eq!(got, vec![(4, 0, 2), (5, 1, 2)]);
        assert_eq!(a.base.crossing_count(), 1);
        for c in &a.crossing_circles {
            assert_eq!(
                c.crossing_count,
                2 * c.full_twists + c.half_twist.unsigned_abs() as usize
            );
        }
    }

    #[test]
    fn twist_sign_is_uniform_in_region() {
        let d = synth::pretzel(&[3, 3, 2]).unwrap();
        for r in twist_regions(&d) {
            let s = d.crossings()[r.crossings[0]].sign;
            assert!(r.crossings.iter().all(|&x| d.crossings()[x].sign == s));
        }
    }

    #[test]
    fn too_few_regions() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        assert_eq!(
            augment(&d, &twist_regions(&d)),
            Err(AugmentError::TooFewTwistRegions(1))
        );
    }

    #[test]
    fn slopes() {
        let d = synth::double_twist(5, 4).unwrap();
        let a = augmented(&d);
        for s in filling_slopes(&a) {
            let c = &a.crossing_circles[s.circle];
            assert_eq!(s.shaded_steps, c.crossing_count);
            assert_eq!(s.white_steps, 1);
            assert_eq!(s.filling.unsigned_abs() as usize, 2);
        }
        assert_eq!(
            CrossingCircle::new(0, 0, 1, (0, 0)),
            Err(AugmentError::EmptyRegion)
        );
    }

    #[test]
    fn decomposition_counts() {
        let d = synth::pretzel(&[3, 3, 2]).unwrap();
        let p = decomposition(&augmented(&d));
        let c = p.polyhedra[0];
        assert_eq!(p.polyhedra[0], p.polyhedra[1]);
        assert_eq!(
            (c.ideal_vertices, c.edges, c.shaded_faces, c.white_faces),
            (9, 18, 6, 5)
        );
        assert_eq!(c.euler_characteristic(), 2);
        let gl = p
            .gluings
            .iter()
            .filter(|g| **g == Gluing::HalfTwist)
            .count();
        assert_eq!(gl, 2);
    }

    #[test]
    fn tilings_and_volumes() {
        let d = synth::pretzel(&[3, 3, 2]).unwrap();
        let a = augmented(&d);
        let t = cusp_tilings(&a);
        let total: usize = t.iter().map(|x| x.rectangle_count).sum();
        assert_eq!(total, 18);
        assert_eq!(cusp_volume_lower(&a).unwrap(), 9.0);
        let b = volume_lower_boroczky(&a).unwrap();
        assert!((b - 3.0 * 3.51586).abs() < 1e-4);
        assert!(b > 9.0);
    }

    #[test]
    fn tetrahedron_volume_from_lobachevsky() {
        let third = std::f64::consts::PI / 3.0;
        let r = integrate(|s| -(2.0 * s.sin()).ln(), 0.0, third, 1e-13);
        assert!((3.0 * r.value - REGULAR_IDEAL_TETRAHEDRON_VOLUME).abs() < 1e-10);
        assert!((cusp_density_bound() - 0.853_276).abs() < 1e-6);
    }
}
