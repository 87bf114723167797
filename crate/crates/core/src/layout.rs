//! Geometry of diamond Kolam drawings.
//!
//! Coordinates are doubled lattice units with `y` pointing up: the dot at
//! lattice point `(x, y)` sits at `(2x, 2y)` and edge midpoints have exactly
//! one odd coordinate. Curves run along the diagonal segments joining the
//! four edge midpoints around each dot. At a site (an edge between two dots)
//! two curves meet. Every other midpoint lies on the boundary and carries a
//! single fixed turn.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::engine::Assignment;
use crate::error::{Error, Result};
use crate::morse::{Color, MorseProgram, Site};

pub type Point = (i32, i32);

/// A diagonal direction out of an edge midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    NorthWest,
    NorthEast,
    SouthWest,
    SouthEast,
}

impl Port {
    pub const ALL: [Port; 4] = [Port::NorthWest, Port::NorthEast, Port::SouthWest, Port::SouthEast];

    pub fn vector(self) -> Point {
        match self {
            Port::NorthWest => (-1, 1),
            Port::NorthEast => (1, 1),
            Port::SouthWest => (-1, -1),
            Port::SouthEast => (1, -1),
        }
    }

    pub fn opposite(self) -> Port {
        match self {
            Port::NorthWest => Port::SouthEast,
            Port::NorthEast => Port::SouthWest,
            Port::SouthWest => Port::NorthEast,
            Port::SouthEast => Port::NorthWest,
        }
    }

    fn flip_horizontal(self) -> Port {
        match self {
            Port::NorthWest => Port::NorthEast,
            Port::NorthEast => Port::NorthWest,
            Port::SouthWest => Port::SouthEast,
            Port::SouthEast => Port::SouthWest,
        }
    }

    fn flip_vertical(self) -> Port {
        match self {
            Port::NorthWest => Port::SouthWest,
            Port::SouthWest => Port::NorthWest,
            Port::NorthEast => Port::SouthEast,
            Port::SouthEast => Port::NorthEast,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayoutSite {
    pub site: Site,
    /// 1-based row of the diamond program.
    pub row: usize,
    pub at: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KolamLayout {
    pub n: usize,
    /// Dots, top row first, left to right.
    pub dots: Vec<Point>,
    /// Sites in the program order of [`MorseProgram::diamond`].
    pub sites: Vec<LayoutSite>,
    /// Midpoints of edges between a dot and an empty lattice point, where the
    /// curve wraps around the outer dots.
    pub boundary: Vec<Point>,
}

/// One passage of a curve through an edge midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pass {
    pub at: Point,
    /// Port the curve arrives through.
    pub from: Port,
    /// Port the curve leaves through.
    pub to: Port,
    /// Index into [`KolamLayout::sites`], if the midpoint is a site.
    pub site: Option<usize>,
}

impl Pass {
    /// Whether the curve turns here instead of going straight through.
    pub fn turns(&self) -> bool {
        self.from.opposite() != self.to
    }
}

/// A closed curve as the cyclic sequence of midpoints it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub passes: Vec<Pass>,
}

#[derive(Clone, Copy)]
enum Midpoint {
    Site(usize),
    Boundary,
}

/// Dot grid `1-3-…-(2N+1)-…-3-1` with its sites matched to the strand
/// numbering of [`MorseProgram::diamond`]: row `r` sits at doubled height
/// `2N - r` and position `p` at doubled abscissa `p - 2N - 1`.
pub fn layout(n: usize) -> KolamLayout {
    assert!(n >= 1, "diamond parameter must be positive");
    let ni = n as i32;
    let mut dots = Vec::new();
    for y in (-ni..=ni).rev() {
        let half = ni - y.abs();
        for x in -half..=half {
            dots.push((2 * x, 2 * y));
        }
    }
    let program = MorseProgram::diamond(n);
    let mut sites = Vec::new();
    for (r, row) in program.rows().iter().enumerate() {
        for site in row.sites() {
            let at = (site.pos as i32 - 2 * ni - 1, 2 * ni - (r as i32 + 1));
            sites.push(LayoutSite { site, row: r + 1, at });
        }
    }
    let dot_set: BTreeSet<Point> = dots.iter().copied().collect();
    let site_set: BTreeSet<Point> = sites.iter().map(|s| s.at).collect();
    let mut boundary = Vec::new();
    for &(x, y) in &dots {
        for m in [(x, y + 1), (x - 1, y), (x + 1, y), (x, y - 1)] {
            if !site_set.contains(&m) {
                boundary.push(m);
            }
        }
    }
    debug_assert!(boundary.iter().all(|m| edge_ends(*m).iter().filter(|e| dot_set.contains(e)).count() == 1));
    KolamLayout { n, dots, sites, boundary }
}

/// The two lattice points joined by the edge through midpoint `m`.
pub fn edge_ends(m: Point) -> [Point; 2] {
    let (x, y) = m;
    if x.rem_euclid(2) == 1 {
        [(x - 1, y), (x + 1, y)]
    } else {
        [(x, y - 1), (x, y + 1)]
    }
}

/// The lattice point whose surrounding diamond contains the segment leaving
/// `m` through `port`.
fn diamond_centre(m: Point, port: Port) -> Point {
    let (dx, dy) = port.vector();
    let a = (m.0 + dx, m.1);
    if a.0.rem_euclid(2) == 0 && a.1.rem_euclid(2) == 0 {
        a
    } else {
        (m.0, m.1 + dy)
    }
}

impl KolamLayout {
    /// Traces every closed curve of the drawing selected by `assignment`.
    ///
    /// Curves are returned in a fixed order: each starts at the first unused
    /// midpoint in top-to-bottom, left-to-right order.
    pub fn trace(&self, assignment: &Assignment) -> Result<Vec<Curve>> {
        if assignment.len() != self.sites.len() {
            return Err(Error::AssignmentLength { expected: self.sites.len(), got: assignment.len() });
        }
        let dots: BTreeSet<Point> = self.dots.iter().copied().collect();
        let mut midpoints: BTreeMap<(i32, i32), Midpoint> = BTreeMap::new();
        for (k, s) in self.sites.iter().enumerate() {
            midpoints.insert(s.at, Midpoint::Site(k));
        }
        for &m in &self.boundary {
            midpoints.insert(m, Midpoint::Boundary);
        }
        let has_port = |m: Point, port: Port| dots.contains(&diamond_centre(m, port));
        let connect = |m: Point, kind: Midpoint, from: Port| -> Port {
            match kind {
                Midpoint::Site(k) => {
                    let alternative = assignment.choices()[k];
                    match (self.sites[k].site.color, alternative) {
                        (_, false) => from.opposite(),
                        (Color::Black, true) => from.flip_horizontal(),
                        (Color::White, true) => from.flip_vertical(),
                    }
                }
                Midpoint::Boundary => Port::ALL
                    .into_iter()
                    .find(|&p| p != from && has_port(m, p))
                    .expect("boundary midpoint has two ports"),
            }
        };

        // top to bottom, left to right
        let mut order: Vec<(Point, Midpoint)> = midpoints.iter().map(|(m, k)| (*m, *k)).collect();
        order.sort_by_key(|(m, _)| (-m.1, m.0));

        let mut used: BTreeSet<(Point, Port)> = BTreeSet::new();
        let mut curves = Vec::new();
        for &(start, _) in &order {
            for port in Port::ALL {
                if !has_port(start, port) || used.contains(&(start, port)) {
                    continue;
                }
                let mut passes = Vec::new();
                let (mut at, mut from) = (start, port);
                loop {
                    let kind = midpoints[&at];
                    let to = connect(at, kind, from);
                    used.insert((at, from));
                    used.insert((at, to));
                    let site = match kind {
                        Midpoint::Site(k) => Some(k),
                        Midpoint::Boundary => None,
                    };
                    passes.push(Pass { at, from, to, site });
                    let (dx, dy) = to.vector();
                    at = (at.0 + dx, at.1 + dy);
                    from = to.opposite();
                    if at == start && from == port {
                        break;
                    }
                }
                curves.push(Curve { passes });
            }
        }
        Ok(curves)
    }
}
