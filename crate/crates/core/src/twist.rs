//! Twist regions and the diagram hypotheses of the volume theorem.
//!
//! A twist region is a maximal chain of bigon faces joined end to end, or a
//! lone crossing that touches no bigon. Simple closed curves meeting the
//! diagram in k points are identified with simple k-cycles of the dual
//! graph (faces as nodes, one dual edge across each diagram edge); curves
//! that cross the same edge twice are not considered.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CrossingId, EdgeId, FaceId, PlanarDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("diagram has no crossings; primality is not defined")]
    NoCrossings,
    #[error("diagram is split ({pieces} connected pieces); analyse the pieces separately")]
    Disconnected { pieces: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRegion {
    /// Crossings in chain order.
    pub crossings: Vec<CrossingId>,
    pub crossing_count: usize,
    /// Bigon faces of the chain: `crossing_count - 1` for an open chain.
    pub bigons: Vec<FaceId>,
    /// Edges where the region meets the rest of the diagram.
    pub boundary_edges: Vec<EdgeId>,
    /// The chain closes up on itself, as in a (2, n) torus diagram.
    pub cyclic: bool,
}

/// Twist regions ordered by their smallest crossing index.
pub fn twist_regions(d: &PlanarDiagram) -> Vec<TwistRegion> {
    let n = d.crossing_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let bigons: Vec<FaceId> = (0..d.faces().len())
        .filter(|&f| d.faces()[f].is_bigon())
        .collect();
    let mut neighbours: Vec<Vec<(CrossingId, FaceId)>> = vec![Vec::new(); n];
    for &f in &bigons {
        let (a, b) = (d.faces()[f].corners[0], d.faces()[f].corners[1]);
        neighbours[a].push((b, f));
        neighbours[b].push((a, f));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }

    let mut members: HashMap<usize, Vec<CrossingId>> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        members.entry(r).or_default().push(x);
    }
    let mut groups: Vec<Vec<CrossingId>> = members.into_values().collect();
    groups.sort_by_key(|g| g[0]);

    groups
        .into_iter()
        .map(|group| {
            let distinct = |x: CrossingId| -> Vec<CrossingId> {
                let mut v: Vec<CrossingId> = neighbours[x].iter().map(|&(y, _)| y).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let start = group
                .iter()
                .copied()
                .find(|&x| distinct(x).len() <= 1)
                .unwrap_or(group[0]);
            // two crossings joined by several bigons also close up, as in (2, 2)
            let cyclic = (group.len() > 2 && group.iter().all(|&x| distinct(x).len() == 2))
                || (group.len() == 2 && neighbours[group[0]].len() >= 2);

            let mut order = vec![start];
            let mut seen: HashSet<CrossingId> = [start].into();
            let mut cur = start;
            while let Some(next) = distinct(cur).into_iter().find(|y| !seen.contains(y)) {
                order.push(next);
                seen.insert(next);
                cur = next;
            }
            // a chain that branches is not a path; keep every member anyway
            for &x in &group {
                if seen.insert(x) {
                    order.push(x);
                }
            }

            let mut region_bigons: Vec<FaceId> = group
                .iter()
                .flat_map(|&x| neighbours[x].iter().map(|&(_, f)| f))
                .collect();
            region_bigons.sort_unstable();
            region_bigons.dedup();

            let bigon_edges: HashSet<EdgeId> = region_bigons
                .iter()
                .flat_map(|&f| d.faces()[f].boundary.iter().map(|s| s.edge))
                .collect();
            let mut boundary_edges: Vec<EdgeId> = group
                .iter()
                .flat_map(|&x| d.crossings()[x].edges)
                .filter(|e| !bigon_edges.contains(e))
                .collect();
            boundary_edges.sort_unstable();
            boundary_edges.dedup();

            TwistRegion {
                crossing_count: order.len(),
                crossings: order,
                bigons: region_bigons,
                boundary_edges,
                cyclic,
            }
        })
        .collect()
}

/// Region index of every crossing.
pub fn region_of(d: &PlanarDiagram, regions: &[TwistRegion]) -> Vec<usize> {
    let mut out = vec![usize::MAX; d.crossing_count()];
    for (i, r) in regions.iter().enumerate() {
        for &x in &r.crossings {
            out[x] = i;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub prime: bool,
    /// Labels of two edges on a curve with crossings on both sides.
    pub witness: Option<(u32, u32)>,
}

/// A dual cycle: the faces it passes through and the edges it crosses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCurve {
    pub faces: Vec<FaceId>,
    pub edge_labels: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReductionWitness {
    /// Crossings (0-based) the curve passes beside.
    pub x: CrossingId,
    pub y: CrossingId,
    pub curve: DualCurve,
    /// Crossings on each side of the curve.
    pub sides: [Vec<CrossingId>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReducedCheck {
    pub twist_reduced: bool,
    pub witness: Option<TwistReductionWitness>,
}

fn require_connected(d: &PlanarDiagram) -> Result<(), TwistError> {
    if d.crossing_count() == 0 {
        return Err(TwistError::NoCrossings);
    }
    if !d.is_connected() {
        let pieces = crossing_sides(d, &[])
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
            + d.loop_labels().len();
        return Err(TwistError::Disconnected { pieces });
    }
    Ok(())
}

/// Connected components of the crossing graph once `cut` edges are removed.
fn crossing_sides(d: &PlanarDiagram, cut: &[EdgeId]) -> Vec<usize> {
    let n = d.crossing_count();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in &d.crossings()[x].edges {
                if cut.contains(&e) {
                    continue;
                }
                if let Some((a, b)) = d.edges()[e].ends {
                    for y in [a.crossing, b.crossing] {
                        if comp[y] == usize::MAX {
                            comp[y] = next;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        next += 1;
    }
    comp
}

/// Prime: no curve crossing two distinct edges has crossings on both sides.
/// The candidate curves are pairs of edges bordering the same two faces.
pub fn is_prime(d: &PlanarDiagram) -> Result<PrimeCheck, TwistError> {
    require_connected(d)?;
    let mut by_faces: HashMap<[FaceId; 2], Vec<EdgeId>> = HashMap::new();
    for e in 0..d.edge_count() {
        let mut key = d.edge_faces(e);
        key.sort_unstable();
        by_faces.entry(key).or_default().push(e);
    }
    let mut keys: Vec<_> = by_faces.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        let edges = &by_faces[&key];
        for (i, &e1) in edges.iter().enumerate() {
            for &e2 in &edges[i + 1..] {
                let sides = crossing_sides(d, &[e1, e2]);
                if sides.iter().any(|&s| s != sides[0]) {
                    return Ok(PrimeCheck {
                        prime: false,
                        witness: Some((d.edges()[e1].label, d.edges()[e2].label)),
                    });
                }
            }
        }
    }
    Ok(PrimeCheck {
        prime: true,
        witness: None,
    })
}

/// Crossing pairs `(x, y)` such that the four cut edges split two and two,
/// with each pair incident to one of them.
pub(crate) fn beside_pairs(d: &PlanarDiagram, cut: &[EdgeId; 4]) -> Vec<(CrossingId, CrossingId)> {
    let ends = |e: EdgeId| -> Vec<CrossingId> {
        let (a, b) = d.edges()[e].ends.expect("arc edge");
        vec![a.crossing, b.crossing]
    };
    let shared = |e: EdgeId, f: EdgeId| -> Vec<CrossingId> {
        let fe = ends(f);
        let mut v: Vec<CrossingId> = ends(e).into_iter().filter(|x| fe.contains(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let [a, b, c, e] = *cut;
    let mut out = Vec::new();
    for ((p, q), (r, s)) in [((a, b), (c, e)), ((a, c), (b, e)), ((a, e), (b, c))] {
        for &x in &shared(p, q) {
            for &y in &shared(r, s) {
                if x != y {
                    out.push((x.min(y), x.max(y)));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The curve is acceptable for `(x, y)` when one side, together with x and
/// y, lies inside a single twist region.
pub(crate) fn side_is_chain(
    side: &[CrossingId],
    x: CrossingId,
    y: CrossingId,
    region: &[usize],
) -> bool {
    let r = region[x];
    region[y] == r && side.iter().all(|&z| region[z] == r)
}

/// Simple 4-cycles of the dual graph, each as (faces, edges) in cyclic order.
fn dual_four_cycles(d: &PlanarDiagram) -> Vec<([FaceId; 4], [EdgeId; 4])> {
    let nf = d.faces().len();
    let mut adj: Vec<Vec<(FaceId, EdgeId)>> = vec![Vec::new(); nf];
    for e in 0..d.edge_count() {
        let [l, r] = d.edge_faces(e);
        if l != r {
            adj[l].push((r, e));
            adj[r].push((l, e));
        }
    }
    let mut seen: HashSet<[EdgeId; 4]> = HashSet::new();
    let mut out = Vec::new();
    for f0 in 0..nf {
        for &(f1, e0) in &adj[f0] {
            if f1 <= f0 {
                continue;
            }
            for &(f2, e1) in &adj[f1] {
                if f2 <= f0 || f2 == f1 || e1 == e0 {
                    continue;
                }
                for &(f3, e2) in &adj[f2] {
                    if f3 <= f0 || f3 == f1 || f3 == f2 || e2 == e1 || e2 == e0 {
                        continue;
                    }
                    for &(back, e3) in &adj[f3] {
                        if back != f0 || e3 == e2 || e3 == e1 || e3 == e0 {
                            continue;
                        }
                        let mut key = [e0, e1, e2, e3];
                        key.sort_unstable();
                        if seen.insert(key) {
                            out.push(([f0, f1, f2, f3], [e0, e1, e2, e3]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Twist reduced: every curve crossing four edges, two beside crossing x
/// and two beside crossing y, has a side that is a bigon chain running
/// between x and y.
pub fn is_twist_reduced(d: &PlanarDiagram) -> Result<TwistReducedCheck, TwistError> {
    require_connected(d)?;
    let regions = twist_regions(d);
    let region = region_of(d, &regions);
    for (faces, edges) in dual_four_cycles(d) {
        let pairs = beside_pairs(d, &edges);
        if pairs.is_empty() {
            continue;
        }
        let comp = crossing_sides(d, &edges);
        let label = comp[0];
        let (a, b): (Vec<CrossingId>, Vec<CrossingId>) =
            (0..d.crossing_count()).partition(|&z| comp[z] == label);
        for (x, y) in pairs {
            if !side_is_chain(&a, x, y, &region) && !side_is_chain(&b, x, y, &region) {
                return Ok(TwistReducedCheck {
                    twist_reduced: false,
                    witness: Some(TwistReductionWitness {
                        x,
                        y,
                        curve: DualCurve {
                            faces: faces.to_vec(),
                            edge_labels: edges.iter().map(|&e| d.edges()[e].label).collect(),
                        },
                        sides: [a, b],
                    }),
                });
            }
        }
    }
    Ok(TwistReducedCheck {
        twist_reduced: true,
        witness: None,
    })
}

/// Outcome of the four hypotheses: prime, twist reduced, at least two twist
/// regions, and at least `threshold` crossings in every region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramGate {
    pub twist_count: usize,
    pub threshold: usize,
    pub region_crossings: Vec<usize>,
    pub is_prime: bool,
    /// `None` when the check was not run (its preconditions failed).
    pub is_twist_reduced: Option<bool>,
    pub min_crossings_per_region: Option<usize>,
    pub prime_witness: Option<(u32, u32)>,
    pub twist_reduction_witness: Option<TwistReductionWitness>,
    pub failures: Vec<String>,
}

impl DiagramGate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn gate(d: &PlanarDiagram, threshold: usize) -> DiagramGate {
    let regions = twist_regions(d);
    gate_with_regions(d, &regions, threshold)
}

pub fn gate_with_regions(
    d: &PlanarDiagram,
    regions: &[TwistRegion],
    threshold: usize,
) -> DiagramGate {
    let mut failures = Vec::new();
    let counts: Vec<usize> = regions.iter().map(|r| r.crossing_count).collect();
    let tw = regions.len();

    let (is_prime, prime_witness) = match is_prime(d) {
        Ok(p) => {
            if let Some((a, b)) = p.witness {
                failures.push(format!("not prime: edges {a} and {b} cut off crossings"));
            }
            (p.prime, p.witness)
        }
        Err(e) => {
            failures.push(format!("not prime: {e}"));
            (false, None)
        }
    };

    let (is_twist_reduced, twist_reduction_witness) = if is_prime {
        match is_twist_reduced(d) {
            Ok(t) => {
                if let Some(w) = &t.witness {
                    failures.push(format!(
                        "not twist-reduced: curve across edges {:?} beside crossings {} and {}",
                        w.curve.edge_labels,
                        w.x + 1,
                        w.y + 1
                    ));
                }
                (Some(t.twist_reduced), t.witness)
            }
            Err(e) => {
                failures.push(format!("not twist-reduced: {e}"));
                (Some(false), None)
            }
        }
    } else {
        failures.push("twist-reduced check skipped: diagram is not prime".into());
        (None, None)
    };

    if tw < 2 {
        failures.push(format!("tw = {tw} < 2"));
    }
    let min = counts.iter().copied().min();
    if let Some(m) = min {
        if m < threshold {
            failures.push(format!("min crossings {m} < {threshold}"));
        }
    }

    DiagramGate {
        twist_count: tw,
        threshold,
        region_crossings: counts,
        is_prime,
        is_twist_reduced,
        min_crossings_per_region: min,
        prime_witness,
        twist_reduction_witness,
        failures,
    }
}
