//! Brute-force reference implementations used to cross-check the library.
//! Nothing here calls into the library's face tracing, twist regions, cut
//! search, quadrature or root finder.

#![allow(dead_code)]

use std::collections::HashMap;

/// A diagram rebuilt from raw PD tuples.
pub struct OracleDiagram {
    tuples: Vec<[u32; 4]>,
    /// Slot `(crossing, position)` at the other end of each slot's edge.
    partner: HashMap<(usize, usize), (usize, usize)>,
    /// Crossings at the two ends of every labelled edge.
    ends: HashMap<u32, (usize, usize)>,
}

impl OracleDiagram {
    pub fn new(tuples: &[[u32; 4]]) -> Self {
        let mut slots: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                slots.entry(l).or_default().push((x, p));
            }
        }
        let mut partner = HashMap::new();
        let mut ends = HashMap::new();
        for (&l, s) in &slots {
            assert_eq!(s.len(), 2, "label {l} must appear twice");
            partner.insert(s[0], s[1]);
            partner.insert(s[1], s[0]);
            ends.insert(l, (s[0].0, s[1].0));
        }
        OracleDiagram {
            tuples: tuples.to_vec(),
            partner,
            ends,
        }
    }

    pub fn n(&self) -> usize {
        self.tuples.len()
    }

    /// Faces as orbits of "cross the edge, then turn clockwise".
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for x in 0..self.n() {
            for p in 0..4 {
                if seen.contains(&(x, p)) {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut cur = (x, p);
                while seen.insert(cur) {
                    orbit.push(cur);
                    let (y, q) = self.partner[&cur];
                    cur = (y, (q + 3) % 4);
                }
                faces.push(orbit);
            }
        }
        faces
    }

    /// Twist region index of every crossing, from bigons joining distinct
    /// crossings.
    pub fn regions(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for f in self.faces() {
            if f.len() == 2 && f[0].0 != f[1].0 {
                let (a, b) = (root(&mut parent, f[0].0), root(&mut parent, f[1].0));
                parent[a] = b;
            }
        }
        (0..self.n()).map(|x| root(&mut parent, x)).collect()
    }

    /// Sorted crossing counts of the twist regions.
    pub fn region_sizes(&self) -> Vec<usize> {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for r in self.regions() {
            *count.entry(r).or_default() += 1;
        }
        let mut v: Vec<usize> = count.into_values().collect();
        v.sort_unstable();
        v
    }

    fn cut_labels(&self, side: u64) -> Vec<u32> {
        let inside = |x: usize| side >> x & 1 == 1;
        let mut v: Vec<u32> = self
            .ends
            .iter()
            .filter(|(_, &(a, b))| inside(a) != inside(b))
            .map(|(&l, _)| l)
            .collect();
        v.sort_unstable();
        v
    }

    fn connected(&self, side: u64) -> bool {
        let members: Vec<usize> = (0..self.n()).filter(|&x| side >> x & 1 == 1).collect();
        let Some(&start) = members.first() else {
            return false;
        };
        let mut reached = 1u64 << start;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(a, b) in self.ends.values() {
                for (u, v) in [(a, b), (b, a)] {
                    if u == x && side >> v & 1 == 1 && reached >> v & 1 == 0 {
                        reached |= 1 << v;
                        stack.push(v);
                    }
                }
            }
        }
        reached == side
    }

    /// Every split of the crossings into two nonempty connected sides, with
    /// crossing 0 always on the first side.
    fn bonds(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let n = self.n();
        let full = (1u64 << n) - 1;
        (0..full)
            .filter(|s| s & 1 == 1)
            .map(move |s| (s, full & !s))
            .filter(move |&(s, t)| t != 0 && self.connected(s) && self.connected(t))
    }

    /// Prime: no two-edge cut separates crossings.
    pub fn is_prime(&self) -> bool {
        self.bonds().all(|(s, _)| self.cut_labels(s).len() != 2)
    }

    /// Twist reduced: for every four-edge cut whose edges pair up beside two
    /// distinct crossings x and y, one side together with x and y lies in a
    /// single twist region.
    pub fn is_twist_reduced(&self) -> bool {
        let region = self.regions();
        let in_one_region = |side: u64, x: usize, y: usize| {
            let r = region[x];
            region[y] == r && (0..self.n()).all(|z| side >> z & 1 == 0 || region[z] == r)
        };
        for (s, t) in self.bonds() {
            let cut = self.cut_labels(s);
            if cut.len() != 4 {
                continue;
            }
            let shared = |a: u32, b: u32| -> Vec<usize> {
                let (a0, a1) = self.ends[&a];
                let (b0, b1) = self.ends[&b];
                [a0, a1]
                    .into_iter()
                    .filter(|&c| c == b0 || c == b1)
                    .collect()
            };
            let [a, b, c, d] = [cut[0], cut[1], cut[2], cut[3]];
            for ((p, q), (r, u)) in [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))] {
                for x in shared(p, q) {
                    for y in shared(r, u) {
                        if x != y && !in_one_region(s, x, y) && !in_one_region(t, x, y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Plain bisection on a decreasing function, to an interval width of `tol`.
pub fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    assert!(f(lo) >= 0.0 && f(hi) <= 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Tube radius for `l_hat` by bisection on the direct (non-log) equation.
pub fn rho_hat_by_bisection(l_hat: f64) -> f64 {
    let target = 2.0 * std::f64::consts::PI * l_hat;
    let f = |r: f64| 1.69785 * r.tanh() / (2.0 * r).cosh() - target;
    bisect_decreasing(f, 0.531, 50.0, 1e-15)
}

/// The volume-change integrand written straight from `H`, `H'` and `G~`
/// via finite-free closed forms, summed by the composite midpoint rule.
pub fn volume_change_by_midpoint(z_hat: f64, steps: usize) -> f64 {
    let k = 3.3957;
    let integrand = |w: f64| {
        let h = (1.0 + w * w) / (k * w * (1.0 - w * w));
        let g = (1.0 + w * w).powi(2) / (2.0 * k * w.powi(3) * (3.0 - w * w));
        // derivative of H by the quotient rule
        let num = 1.0 + w * w;
        let den = k * (w - w.powi(3));
        let dh = (2.0 * w * den - num * k * (1.0 - 3.0 * w * w)) / (den * den);
        dh / (8.0 * h * (h - g))
    };
    let width = (1.0 - z_hat) / steps as f64;
    (0..steps)
        .map(|i| integrand(z_hat + (i as f64 + 0.5) * width))
        .sum::<f64>()
        * width
}
