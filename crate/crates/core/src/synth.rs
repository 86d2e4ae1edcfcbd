//! Programmatic diagram construction.
//!
//! Diagrams are assembled from single-crossing tangles with the usual
//! tangle operations (horizontal sum, vertical stacking, numerator and
//! denominator closure), then oriented and labelled consecutively along each
//! component so the result is a PD code in the standard convention.

use crate::diagram::{DiagramError, Endpoint, PlanarDiagram};

/// Which diagonal of a crossing tangle passes under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// The strand from the south-west to the north-east corner is under.
    SwUnder,
    /// The strand from the south-east to the north-west corner is under.
    SeUnder,
}

impl CrossingKind {
    pub fn flipped(self) -> Self {
        match self {
            CrossingKind::SwUnder => CrossingKind::SeUnder,
            CrossingKind::SeUnder => CrossingKind::SwUnder,
        }
    }
}

/// Ends of a four-ended tangle, as port ids in a [`TangleBuilder`].
#[derive(Debug, Clone, Copy)]
pub struct Tangle {
    pub nw: usize,
    pub ne: usize,
    pub sw: usize,
    pub se: usize,
}

#[derive(Debug, Default)]
pub struct TangleBuilder {
    /// Ports of each crossing, counterclockwise, under-strand on slots 0 and 2.
    crossings: Vec<[usize; 4]>,
    partner: Vec<Option<usize>>,
}

impl TangleBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn port(&mut self) -> usize {
        self.partner.push(None);
        self.partner.len() - 1
    }

    fn wire(&mut self, a: usize, b: usize) {
        assert!(self.partner[a].is_none() && self.partner[b].is_none());
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
    }

    pub fn crossing(&mut self, kind: CrossingKind) -> Tangle {
        let [sw, se, ne, nw] = [self.port(), self.port(), self.port(), self.port()];
        let slots = match kind {
            CrossingKind::SwUnder => [sw, se, ne, nw],
            CrossingKind::SeUnder => [se, ne, nw, sw],
        };
        self.crossings.push(slots);
        Tangle { nw, ne, sw, se }
    }

    /// `a` to the left of `b`.
    pub fn sum(&mut self, a: Tangle, b: Tangle) -> Tangle {
        self.wire(a.ne, b.nw);
        self.wire(a.se, b.sw);
        Tangle {
            nw: a.nw,
            sw: a.sw,
            ne: b.ne,
            se: b.se,
        }
    }

    /// `a` above `b`.
    pub fn stack(&mut self, a: Tangle, b: Tangle) -> Tangle {
        self.wire(a.sw, b.nw);
        self.wire(a.se, b.ne);
        Tangle {
            nw: a.nw,
            ne: a.ne,
            sw: b.sw,
            se: b.se,
        }
    }

    /// `count` crossings in a row.
    pub fn horizontal_twist(&mut self, count: usize, kind: CrossingKind) -> Tangle {
        assert!(count >= 1);
        let mut t = self.crossing(kind);
        for _ in 1..count {
            let c = self.crossing(kind);
            t = self.sum(t, c);
        }
        t
    }

    /// `count` crossings in a column.
    pub fn vertical_twist(&mut self, count: usize, kind: CrossingKind) -> Tangle {
        assert!(count >= 1);
        let mut t = self.crossing(kind);
        for _ in 1..count {
            let c = self.crossing(kind);
            t = self.stack(t, c);
        }
        t
    }

    pub fn numerator(
        mut self,
        t: Tangle,
        name: Option<String>,
    ) -> Result<PlanarDiagram, DiagramError> {
        self.wire(t.nw, t.ne);
        self.wire(t.sw, t.se);
        self.finish(name)
    }

    pub fn denominator(
        mut self,
        t: Tangle,
        name: Option<String>,
    ) -> Result<PlanarDiagram, DiagramError> {
        self.wire(t.nw, t.sw);
        self.wire(t.ne, t.se);
        self.finish(name)
    }

    fn finish(self, name: Option<String>) -> Result<PlanarDiagram, DiagramError> {
        let n_ports = self.partner.len();
        let mut slot_of = vec![
            Endpoint {
                crossing: 0,
                position: 0
            };
            n_ports
        ];
        for (x, ports) in self.crossings.iter().enumerate() {
            for (p, &port) in ports.iter().enumerate() {
                slot_of[port] = Endpoint {
                    crossing: x,
                    position: p as u8,
                };
            }
        }
        let partner: Vec<usize> = self
            .partner
            .iter()
            .map(|p| p.expect("every tangle end is closed"))
            .collect();

        // label wires consecutively along each strand; `label[port]` is the
        // label of the wire leaving or entering that port
        let mut label = vec![0u32; n_ports];
        // under-strand entry slot of each crossing: 0 or 2
        let mut entry = vec![None::<u8>; self.crossings.len()];
        let mut next_label = 1u32;
        for start_x in 0..self.crossings.len() {
            for start_p in [0u8, 1] {
                let start = self.crossings[start_x][start_p as usize];
                if label[start] != 0 {
                    continue;
                }
                // travel out of `start`'s crossing through its opposite slot
                let mut out = self.crossings[start_x][(start_p as usize + 2) % 4];
                loop {
                    let into = partner[out];
                    if label[out] != 0 {
                        break;
                    }
                    label[out] = next_label;
                    label[into] = next_label;
                    next_label += 1;
                    let slot = slot_of[into];
                    if slot.position.is_multiple_of(2) {
                        entry[slot.crossing] = Some(slot.position);
                    }
                    out = self.crossings[slot.crossing][(slot.position as usize + 2) % 4];
                }
            }
        }

        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(x, ports)| {
                let l = ports.map(|p| label[p]);
                match entry[x] {
                    Some(2) => [l[2], l[3], l[0], l[1]],
                    _ => l,
                }
            })
            .collect();
        PlanarDiagram::new(name, &tuples, &[])
    }
}

/// Pretzel diagram P(c_1, ..., c_k): vertical twist columns side by side,
/// closed at top and bottom.
pub fn pretzel(columns: &[usize]) -> Result<PlanarDiagram, DiagramError> {
    assert!(!columns.is_empty());
    let mut b = TangleBuilder::new();
    let mut t = b.vertical_twist(columns[0], CrossingKind::SeUnder);
    for &c in &columns[1..] {
        let col = b.vertical_twist(c, CrossingKind::SeUnder);
        t = b.sum(t, col);
    }
    let name = format!(
        "pretzel({})",
        columns
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    b.numerator(t, Some(name))
}

/// Two-bridge diagram with twist regions `a_1, ..., a_k`, alternating
/// between horizontal rows and vertical columns. Every entry should be at
/// least 2 so no two regions merge.
pub fn rational(twists: &[usize]) -> Result<PlanarDiagram, DiagramError> {
    assert!(!twists.is_empty());
    let mut b = TangleBuilder::new();
    let mut t = b.horizontal_twist(twists[0], CrossingKind::SwUnder);
    for (i, &c) in twists.iter().enumerate().skip(1) {
        if i % 2 == 1 {
            let col = b.vertical_twist(c, CrossingKind::SwUnder);
            t = b.stack(t, col);
        } else {
            let row = b.horizontal_twist(c, CrossingKind::SwUnder);
            t = b.sum(t, row);
        }
    }
    let name = format!(
        "rational({})",
        twists
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    if twists.len() % 2 == 1 {
        b.numerator(t, Some(name))
    } else {
        b.denominator(t, Some(name))
    }
}

/// Double-twist knot or link: a row of `a` crossings over a column of `b`.
pub fn double_twist(a: usize, b: usize) -> Result<PlanarDiagram, DiagramError> {
    rational(&[a, b]).map(|d| d.with_name(format!("double-twist({a},{b})")))
}

/// Two lone crossings on either side of a column of `b`, all stacked over a
/// column of `c` and closed on the sides. A flype carries one lone crossing
/// across the middle column next to the other, so the diagram is not twist
/// reduced.
pub fn flype_example(b: usize, c: usize) -> Result<PlanarDiagram, DiagramError> {
    let mut builder = TangleBuilder::new();
    let left = builder.crossing(CrossingKind::SwUnder);
    let middle = builder.vertical_twist(b, CrossingKind::SwUnder);
    let right = builder.crossing(CrossingKind::SwUnder);
    let t = builder.sum(left, middle);
    let t = builder.sum(t, right);
    let bottom = builder.vertical_twist(c, CrossingKind::SwUnder);
    let t = builder.stack(t, bottom);
    builder.denominator(t, Some(format!("flype-example({b},{c})")))
}

fn max_label(d: &PlanarDiagram) -> u32 {
    d.edges().iter().map(|e| e.label).max().unwrap_or(0)
}

/// Connected sum joining edge `label_a` of `a` to edge `label_b` of `b`.
pub fn connected_sum(
    a: &PlanarDiagram,
    label_a: u32,
    b: &PlanarDiagram,
    label_b: u32,
) -> Result<PlanarDiagram, DiagramError> {
    let offset = max_label(a);
    let b = b.relabel(|l| l + offset)?;
    let (ea, eb) = match (a.edge_by_label(label_a), b.edge_by_label(label_b + offset)) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(DiagramError::Validity(
                "connected sum: unknown edge label".into(),
            ))
        }
    };
    let (Some((_, head_a)), Some((_, head_b))) = (a.edges()[ea].ends, b.edges()[eb].ends) else {
        return Err(DiagramError::Validity("connected sum along a loop".into()));
    };
    let mut ta = a.pd_tuples();
    let mut tb = b.pd_tuples();
    // swap the heads: a's edge now ends in b and vice versa
    ta[head_a.crossing][head_a.position as usize] = label_b + offset;
    tb[head_b.crossing][head_b.position as usize] = label_a;
    ta.extend(tb);
    let name = format!(
        "sum({}, {})",
        a.name().unwrap_or("?"),
        b.name().unwrap_or("?")
    );
    PlanarDiagram::new(Some(name), &ta, &[])
}

/// Adds a Reidemeister I curl on edge `label`.
pub fn add_kink(d: &PlanarDiagram, label: u32) -> Result<PlanarDiagram, DiagramError> {
    let e = d
        .edge_by_label(label)
        .ok_or_else(|| DiagramError::Validity(format!("no edge labelled {label}")))?;
    let Some((_, head)) = d.edges()[e].ends else {
        return Err(DiagramError::Validity("cannot curl a loop".into()));
    };
    let top = max_label(d);
    let (curl, out) = (top + 1, top + 2);
    let mut tuples = d.pd_tuples();
    tuples[head.crossing][head.position as usize] = out;
    // enter under at 0, leave at 2 into the curl, come back over at 1, exit at 3
    tuples.push([label, curl, curl, out]);
    PlanarDiagram::new(
        Some(format!("kinked({})", d.name().unwrap_or("?"))),
        &tuples,
        &d.loop_labels(),
    )
}
