//! Planar diagrams of knots and links.
//!
//! A diagram is a 4-valent planar graph. Each crossing lists its four edge
//! labels counterclockwise, starting at the incoming under-strand, so the
//! under-strand runs from position 0 to position 2 and the over-strand joins
//! positions 1 and 3. Crossingless components are closed loops with a single
//! label.

mod parse;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse_pd, parse_pd_json, PdJson};

pub type CrossingId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {0}")]
    Validity(String),
    #[error("rotation system is not planar: V - E + F = {euler} (expected 2) on a connected piece with {crossings} crossings")]
    Embedding { crossings: usize, euler: i64 },
}

/// A slot on a crossing: `position` counts counterclockwise from the incoming
/// under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub crossing: CrossingId,
    pub position: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub labels: [u32; 4],
    pub edges: [EdgeId; 4],
    /// +1 or -1 under the right-hand rule; see [`PlanarDiagram::sign_convention`].
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: u32,
    /// `(tail, head)` in the orientation of the component; `None` for a
    /// crossingless loop.
    pub ends: Option<(Endpoint, Endpoint)>,
    pub component: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// One side of one edge, as seen from a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceSide {
    pub edge: EdgeId,
    pub side: Side,
}

/// A complementary region of the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Cyclic boundary, traversed with the face on the right.
    pub boundary: Vec<FaceSide>,
    /// Crossing reached at the end of each boundary step.
    pub corners: Vec<CrossingId>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// A face bounded by two edges running between two distinct crossings.
    pub fn is_bigon(&self) -> bool {
        self.degree() == 2 && self.corners.len() == 2 && self.corners[0] != self.corners[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    name: Option<String>,
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    /// Edges of each component in traversal order.
    components: Vec<Vec<EdgeId>>,
    faces: Vec<Face>,
    /// `[left, right]` face of each edge.
    edge_faces: Vec<[FaceId; 2]>,
}

impl PlanarDiagram {
    /// Builds and validates a diagram from PD tuples and crossingless loop
    /// labels.
    pub fn new(
        name: Option<String>,
        tuples: &[[u32; 4]],
        loops: &[u32],
    ) -> Result<Self, DiagramError> {
        let (mut edges, slots) = collect_edges(tuples, loops)?;

        let mut crossings: Vec<Crossing> = tuples
            .iter()
            .enumerate()
            .map(|(x, t)| Crossing {
                labels: *t,
                edges: [0, 1, 2, 3].map(|p| {
                    slots[&Endpoint {
                        crossing: x,
                        position: p,
                    }]
                }),
                sign: 0,
            })
            .collect();

        let components = orient_components(&mut edges, &crossings)?;

        for (x, c) in crossings.iter_mut().enumerate() {
            let over_in = edges[c.edges[3]]
                .ends
                .map(|(_, head)| {
                    head == Endpoint {
                        crossing: x,
                        position: 3,
                    }
                })
                .unwrap_or(false);
            c.sign = if over_in { 1 } else { -1 };
        }

        let (faces, edge_faces) = trace_faces(&edges, &crossings);
        let diagram = PlanarDiagram {
            name,
            crossings,
            edges,
            components,
            faces,
            edge_faces,
        };
        diagram.check_euler()?;
        Ok(diagram)
    }

    fn check_euler(&self) -> Result<(), DiagramError> {
        let piece_of_edge = self.connected_pieces();
        let pieces = piece_of_edge.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; pieces];
        let mut e = vec![0i64; pieces];
        let mut f = vec![0i64; pieces];
        for (id, edge) in self.edges.iter().enumerate() {
            let p = piece_of_edge[id];
            e[p] += 1;
            if edge.ends.is_none() {
                // a loop is drawn as a circle through one marked point
                v[p] += 1;
            }
        }
        for x in 0..self.crossings.len() {
            v[piece_of_edge[self.crossings[x].edges[0]]] += 1;
        }
        for face in &self.faces {
            f[piece_of_edge[face.boundary[0].edge]] += 1;
        }
        for p in 0..pieces {
            let euler = v[p] - e[p] + f[p];
            if euler != 2 {
                return Err(DiagramError::Embedding {
                    crossings: self
                        .crossings
                        .iter()
                        .filter(|c| piece_of_edge[c.edges[0]] == p)
                        .count(),
                    euler,
                });
            }
        }
        Ok(())
    }

    /// Index of the connected piece of the underlying graph containing each
    /// edge.
    fn connected_pieces(&self) -> Vec<usize> {
        let mut piece = vec![usize::MAX; self.edges.len()];
        let mut next = 0;
        for start in 0..self.edges.len() {
            if piece[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            piece[start] = next;
            while let Some(e) = stack.pop() {
                if let Some((a, b)) = self.edges[e].ends {
                    for end in [a, b] {
                        for &f in &self.crossings[end.crossing].edges {
                            if piece[f] == usize::MAX {
                                piece[f] = next;
                                stack.push(f);
                            }
                        }
                    }
                }
            }
            next += 1;
        }
        piece
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn components(&self) -> &[Vec<EdgeId>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Faces from the rotation-system traversal. For a split diagram each
    /// connected piece contributes its own faces.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edge_faces(&self, edge: EdgeId) -> [FaceId; 2] {
        self.edge_faces[edge]
    }

    pub fn edge_by_label(&self, label: u32) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// Loop labels, in input order.
    pub fn loop_labels(&self) -> Vec<u32> {
        self.edges
            .iter()
            .filter(|e| e.ends.is_none())
            .map(|e| e.label)
            .collect()
    }

    pub fn pd_tuples(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.labels).collect()
    }

    /// Component carrying the under- and over-strand of a crossing.
    pub fn strand_components(&self, x: CrossingId) -> (usize, usize) {
        let c = &self.crossings[x];
        (
            self.edges[c.edges[0]].component,
            self.edges[c.edges[1]].component,
        )
    }

    /// True when the underlying 4-valent graph (with loops) is connected.
    pub fn is_connected(&self) -> bool {
        self.connected_pieces().iter().all(|&p| p == 0)
    }

    /// Crossing signs follow the right-hand rule for the orientation implied
    /// by the PD convention. Components that never pass under are oriented
    /// arbitrarily, so their signs are relative to that choice.
    pub fn sign_convention() -> &'static str {
        "right-hand rule; orientation from incoming under-strands (convention-relative)"
    }

    /// Every component alternates over and under along its traversal.
    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|comp| {
            let passes: Vec<bool> = comp
                .iter()
                .filter_map(|&e| self.edges[e].ends)
                .map(|(_, head)| head.position % 2 == 0)
                .collect();
            passes
                .iter()
                .zip(passes.iter().cycle().skip(1))
                .all(|(a, b)| a != b)
        })
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Result<Self, DiagramError> {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let [a, b, cc, d] = c.labels;
                let over_in_at_3 = self.edges[c.edges[3]].ends.is_some_and(|(_, h)| {
                    h == Endpoint {
                        crossing: x,
                        position: 3,
                    }
                });
                if over_in_at_3 {
                    [d, a, b, cc]
                } else {
                    [b, cc, d, a]
                }
            })
            .collect();
        PlanarDiagram::new(self.name.clone(), &tuples, &self.loop_labels())
    }

    /// Reflection of the plane: reverses the cyclic order at every crossing.
    pub fn reflect(&self) -> Result<Self, DiagramError> {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.labels;
                [a, d, cc, b]
            })
            .collect();
        PlanarDiagram::new(self.name.clone(), &tuples, &self.loop_labels())
    }

    /// Renames labels through `map`, which must be injective on the labels
    /// in use.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<Self, DiagramError> {
        let tuples: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.labels.map(&map)).collect();
        let loops: Vec<u32> = self.loop_labels().into_iter().map(&map).collect();
        PlanarDiagram::new(self.name.clone(), &tuples, &loops)
    }

    pub fn to_json(&self) -> PdJson {
        PdJson {
            name: self.name.clone(),
            crossings: self.pd_tuples(),
            loops: self.loop_labels(),
        }
    }
}

/// PD text; parses back to the same diagram.
/// PD text with a `name:` header. A name containing `#` or a line break is
/// cut short when read back.
impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        let mut tokens: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.labels;
                format!("X[{a},{b},{cc},{d}]")
            })
            .collect();
        tokens.extend(self.loop_labels().iter().map(|k| format!("O[{k}]")));
        write!(f, "{}", tokens.join(" "))
    }
}

/// Face on the right of a boundary step, given the step direction.
fn side_of(forward: bool) -> Side {
    if forward {
        Side::Right
    } else {
        Side::Left
    }
}

fn collect_edges(
    tuples: &[[u32; 4]],
    loops: &[u32],
) -> Result<(Vec<Edge>, HashMap<Endpoint, EdgeId>), DiagramError> {
    let mut index: HashMap<u32, EdgeId> = HashMap::new();
    let mut seen: Vec<Vec<Endpoint>> = Vec::new();
    for (x, t) in tuples.iter().enumerate() {
        for (p, &label) in t.iter().enumerate() {
            if label == 0 {
                return Err(DiagramError::Validity(format!(
                    "crossing {} uses label 0; labels must be positive",
                    x + 1
                )));
            }
            let id = *index.entry(label).or_insert_with(|| {
                seen.push(Vec::new());
                seen.len() - 1
            });
            seen[id].push(Endpoint {
                crossing: x,
                position: p as u8,
            });
        }
    }
    let mut edges = Vec::with_capacity(seen.len() + loops.len());
    let mut slots = HashMap::new();
    let mut labels: Vec<(u32, EdgeId)> = index.iter().map(|(&l, &i)| (l, i)).collect();
    labels.sort_by_key(|&(_, i)| i);
    for (label, id) in labels {
        let ends = &seen[id];
        if ends.len() != 2 {
            return Err(DiagramError::Validity(format!(
                "edge label {label} appears {} times (expected exactly 2)",
                ends.len()
            )));
        }
        slots.insert(ends[0], id);
        slots.insert(ends[1], id);
        edges.push(Edge {
            label,
            ends: Some((ends[0], ends[1])),
            component: usize::MAX,
        });
    }
    for &k in loops {
        if k == 0 {
            return Err(DiagramError::Validity(
                "loop label 0; labels must be positive".into(),
            ));
        }
        if index.contains_key(&k) || edges.iter().any(|e| e.ends.is_none() && e.label == k) {
            return Err(DiagramError::Validity(format!(
                "loop label {k} is already in use"
            )));
        }
        edges.push(Edge {
            label: k,
            ends: None,
            component: usize::MAX,
        });
    }
    Ok((edges, slots))
}

fn other_end(edge: &Edge, from: Endpoint) -> Endpoint {
    let (a, b) = edge.ends.expect("arc edge");
    if a == from {
        b
    } else {
        a
    }
}

/// Walks strands through crossings (position p continues at p + 2), fixing
/// each edge's `(tail, head)` and component index.
fn orient_components(
    edges: &mut [Edge],
    crossings: &[Crossing],
) -> Result<Vec<Vec<EdgeId>>, DiagramError> {
    let mut components = Vec::new();
    let mut starts: Vec<(EdgeId, Endpoint)> = (0..crossings.len())
        .map(|x| {
            let head = Endpoint {
                crossing: x,
                position: 0,
            };
            (crossings[x].edges[0], head)
        })
        .collect();
    // components with no under-passage: orient from their first listed end
    for (id, e) in edges.iter().enumerate() {
        if let Some((a, b)) = e.ends {
            starts.push((id, b.max(a)));
        }
    }

    for (start, start_head) in starts {
        if edges[start].component != usize::MAX {
            continue;
        }
        let comp = components.len();
        let mut order = Vec::new();
        let mut e = start;
        let mut head = start_head;
        loop {
            if edges[e].component != usize::MAX {
                if e == start {
                    break;
                }
                return Err(DiagramError::Validity(format!(
                    "strand through edge {} revisits edge {}",
                    edges[start].label, edges[e].label
                )));
            }
            let tail = other_end(&edges[e], head);
            if head.position == 2 || tail.position == 0 {
                return Err(DiagramError::Validity(format!(
                    "edge {} runs against the under-strand direction at crossing {}",
                    edges[e].label,
                    if head.position == 2 {
                        head.crossing
                    } else {
                        tail.crossing
                    } + 1
                )));
            }
            edges[e].ends = Some((tail, head));
            edges[e].component = comp;
            order.push(e);
            let next = Endpoint {
                crossing: head.crossing,
                position: (head.position + 2) % 4,
            };
            e = crossings[next.crossing].edges[next.position as usize];
            head = other_end(&edges[e], next);
        }
        components.push(order);
    }
    for (id, e) in edges.iter_mut().enumerate() {
        if e.ends.is_none() {
            e.component = components.len();
            components.push(vec![id]);
        }
    }
    Ok(components)
}

/// Face traversal: arriving at position p of a crossing, leave from p + 1.
fn trace_faces(edges: &[Edge], crossings: &[Crossing]) -> (Vec<Face>, Vec<[FaceId; 2]>) {
    let n_darts = 2 * edges.len();
    let mut dart_face = vec![usize::MAX; n_darts];
    let mut faces = Vec::new();
    let mut edge_faces = vec![[usize::MAX; 2]; edges.len()];

    // dart 2e runs tail -> head, dart 2e + 1 head -> tail
    let arrival = |d: usize| -> Option<Endpoint> {
        edges[d / 2]
            .ends
            .map(|(t, h)| if d.is_multiple_of(2) { h } else { t })
    };

    for d0 in 0..n_darts {
        if dart_face[d0] != usize::MAX {
            continue;
        }
        let fid = faces.len();
        let mut face = Face {
            boundary: Vec::new(),
            corners: Vec::new(),
        };
        let mut d = d0;
        loop {
            dart_face[d] = fid;
            let forward = d % 2 == 0;
            let side = side_of(forward);
            face.boundary.push(FaceSide { edge: d / 2, side });
            edge_faces[d / 2][if side == Side::Left { 0 } else { 1 }] = fid;
            match arrival(d) {
                None => break,
                Some(at) => {
                    face.corners.push(at.crossing);
                    let leave = Endpoint {
                        crossing: at.crossing,
                        position: (at.position + 1) % 4,
                    };
                    let e = crossings[leave.crossing].edges[leave.position as usize];
                    let (tail, _) = edges[e].ends.expect("arc edge");
                    d = if tail == leave { 2 * e } else { 2 * e + 1 };
                }
            }
            if d == d0 {
                break;
            }
        }
        faces.push(face);
    }
    (faces, edge_faces)
}
