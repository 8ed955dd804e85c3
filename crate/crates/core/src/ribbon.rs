//! Ribbon graphs as signed rotation systems, and the doubly weighted
//! Bollobás–Riordan polynomial.

use rayon::prelude::*;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var, EXP_SCALE};
use crate::rotation::{Dart, Rotation};

/// Default limit on the number of edges summed over by subset enumeration.
pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Edge weight pair `(x_e, y_e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub x: Polynomial,
    pub y: Polynomial,
}

impl Weight {
    /// The symbols `x_<label>` and `y_<label>`.
    pub fn symbolic(label: &str) -> Weight {
        Weight {
            x: Polynomial::var(&format!("x_{label}")),
            y: Polynomial::var(&format!("y_{label}")),
        }
    }

    pub fn unit() -> Weight {
        Weight {
            x: Polynomial::one(),
            y: Polynomial::one(),
        }
    }

    pub fn swapped(&self) -> Weight {
        Weight {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonEdge {
    pub label: String,
    pub sign: Sign,
    pub weight: Weight,
}

impl RibbonEdge {
    pub fn new(label: impl Into<String>, sign: Sign) -> RibbonEdge {
        let label = label.into();
        let weight = Weight::symbolic(&label);
        RibbonEdge {
            label,
            sign,
            weight,
        }
    }
}

/// A ribbon graph: vertex discs with counterclockwise half-edge orders, and
/// edge ribbons that are either untwisted (`Plus`) or half-twisted (`Minus`).
/// Edge `e` attaches at half-edges `2e` and `2e + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    rotation: Rotation,
    edges: Vec<RibbonEdge>,
}

impl RibbonGraph {
    pub fn new(cycles: Vec<Vec<Dart>>, edges: Vec<RibbonEdge>) -> Result<RibbonGraph> {
        let rotation = Rotation::new(cycles, edges.len())?;
        Ok(RibbonGraph { rotation, edges })
    }

    pub fn from_rotation(rotation: Rotation, edges: Vec<RibbonEdge>) -> Result<RibbonGraph> {
        if rotation.edge_count() != edges.len() {
            return Err(Error::MalformedRotation(format!(
                "{} edge records for {} edges",
                edges.len(),
                rotation.edge_count()
            )));
        }
        Ok(RibbonGraph { rotation, edges })
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    pub fn edges(&self) -> &[RibbonEdge] {
        &self.edges
    }

    pub fn edges_mut(&mut self) -> &mut [RibbonEdge] {
        &mut self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// k(F): components of the spanning subgraph `f` (isolated vertices count).
    pub fn components(&self, f: &[bool]) -> usize {
        self.rotation.components_with(|e| f[e])
    }

    /// n(F) = |F| - v + k(F).
    pub fn nullity(&self, f: &[bool]) -> usize {
        let size = f.iter().filter(|&&b| b).count();
        size + self.components(f) - self.vertex_count()
    }

    /// bc(F): boundary components of the surface made of every vertex disc
    /// and the ribbons in `f`.
    ///
    /// Each half-edge carries two side slots, 0 on its clockwise side and 1
    /// on its counterclockwise side. Disc arcs join slot 1 of a half-edge to
    /// slot 0 of the next one; an untwisted ribbon joins slot 1 to the far
    /// slot 0 and a twisted one joins equal slots.
    pub fn boundary_components(&self, f: &[bool]) -> usize {
        let darts = 2 * self.edge_count();
        let slot = |d: Dart, s: usize| 2 * d + s;
        let mut dsu = Dsu::new(2 * darts);
        let mut bare_vertices = 0;
        let mut absent_darts = 0;
        for cycle in self.rotation.cycles() {
            let present: Vec<Dart> = cycle.iter().copied().filter(|&d| f[d / 2]).collect();
            absent_darts += cycle.len() - present.len();
            if present.is_empty() {
                bare_vertices += 1;
                continue;
            }
            for i in 0..present.len() {
                let next = present[(i + 1) % present.len()];
                dsu.union(slot(present[i], 1), slot(next, 0));
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if !f[e] {
                continue;
            }
            let (a, b) = (2 * e, 2 * e + 1);
            match edge.sign {
                Sign::Plus => {
                    dsu.union(slot(a, 1), slot(b, 0));
                    dsu.union(slot(a, 0), slot(b, 1));
                }
                Sign::Minus => {
                    dsu.union(slot(a, 1), slot(b, 1));
                    dsu.union(slot(a, 0), slot(b, 0));
                }
            }
        }
        dsu.sets() - 2 * absent_darts + bare_vertices
    }

    /// Doubly weighted Bollobás–Riordan polynomial with the default cap.
    pub fn bollobas_riordan(&self) -> Result<Polynomial> {
        self.bollobas_riordan_capped(DEFAULT_EDGE_CAP)
    }

    /// `Σ_F (Π_{e∈F} x_e)(Π_{e∉F} y_e) X^{k(F)-k(R)} Y^{n(F)} Z^{k(F)-bc(F)+n(F)}`.
    pub fn bollobas_riordan_capped(&self, cap: usize) -> Result<Polynomial> {
        let m = self.edge_count();
        check_cap("ribbon graph", m, cap)?;
        let k_r = self.components(&vec![true; m]) as i64;
        let (x, y, z) = (Var::new("X"), Var::new("Y"), Var::new("Z"));
        let total = (0..1u64 << m)
            .into_par_iter()
            .fold(Polynomial::zero, |acc, bits| {
                let f = mask(bits, m);
                let k = self.components(&f) as i64;
                let n = self.nullity(&f) as i64;
                let bc = self.boundary_components(&f) as i64;
                let mono = Monomial::from_factors([
                    (x.clone(), (k - k_r) * EXP_SCALE),
                    (y.clone(), n * EXP_SCALE),
                    (z.clone(), (k - bc + n) * EXP_SCALE),
                ]);
                acc + self.subset_weight(&f).mul_monomial(&mono)
            })
            .reduce(Polynomial::zero, |a, b| a + b);
        Ok(total)
    }

    /// `(Π_{e∈F} x_e)(Π_{e∉F} y_e)`.
    pub fn subset_weight(&self, f: &[bool]) -> Polynomial {
        subset_weight(self.edges.iter().map(|e| &e.weight), f)
    }

    /// Arrow presentation: one circle per vertex, one arrow per half-edge.
    /// Untwisted edges get two forward arrows, twisted edges one forward and
    /// one backward arrow.
    pub fn arrow_presentation(&self) -> ArrowPresentation {
        let circles = self
            .rotation
            .cycles()
            .iter()
            .map(|cycle| {
                cycle
                    .iter()
                    .map(|&d| Arrow {
                        edge: d / 2,
                        forward: d % 2 == 0 || self.edges[d / 2].sign == Sign::Plus,
                    })
                    .collect()
            })
            .collect();
        ArrowPresentation {
            circles,
            edges: self
                .edges
                .iter()
                .map(|e| ArrowEdge {
                    label: e.label.clone(),
                    weight: e.weight.clone(),
                })
                .collect(),
        }
    }

    /// Rebuild a ribbon graph from an arrow presentation. Circles become
    /// vertices with the arrow order as rotation; an edge is twisted exactly
    /// when its two arrows point in opposite directions.
    pub fn from_arrow_presentation(a: &ArrowPresentation) -> Result<RibbonGraph> {
        let m = a.edges.len();
        let mut seen: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); m];
        for (c, circle) in a.circles.iter().enumerate() {
            for (i, arrow) in circle.iter().enumerate() {
                if arrow.edge >= m {
                    return Err(Error::MalformedPresentation(format!(
                        "arrow refers to unknown edge {}",
                        arrow.edge
                    )));
                }
                seen[arrow.edge].push((c, i, arrow.forward));
            }
        }
        let mut cycles: Vec<Vec<Dart>> = a.circles.iter().map(|c| vec![0; c.len()]).collect();
        let mut edges = Vec::with_capacity(m);
        for (e, occ) in seen.iter().enumerate() {
            if occ.len() != 2 {
                return Err(Error::MalformedPresentation(format!(
                    "label `{}` occurs {} times",
                    a.edges[e].label,
                    occ.len()
                )));
            }
            cycles[occ[0].0][occ[0].1] = 2 * e;
            cycles[occ[1].0][occ[1].1] = 2 * e + 1;
            let sign = if occ[0].2 == occ[1].2 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            edges.push(RibbonEdge {
                label: a.edges[e].label.clone(),
                sign,
                weight: a.edges[e].weight.clone(),
            });
        }
        RibbonGraph::new(cycles, edges)
    }
}

/// One arrow on a circle of an arrow presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub edge: usize,
    /// True if the arrow points along the circle's traversal direction.
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowEdge {
    pub label: String,
    pub weight: Weight,
}

/// Circles carrying pairs of labelled arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowPresentation {
    pub circles: Vec<Vec<Arrow>>,
    pub edges: Vec<ArrowEdge>,
}

pub(crate) fn mask(bits: u64, m: usize) -> Vec<bool> {
    (0..m).map(|i| bits >> i & 1 == 1).collect()
}

pub(crate) fn check_cap(what: &'static str, items: usize, cap: usize) -> Result<()> {
    if items > cap || items >= 64 {
        return Err(Error::SizeLimit { what, items, cap });
    }
    Ok(())
}

pub(crate) fn subset_weight<'a>(
    weights: impl Iterator<Item = &'a Weight>,
    f: &[bool],
) -> Polynomial {
    let mut acc = Polynomial::one();
    for (w, &inside) in weights.zip(f) {
        acc = &acc * if inside { &w.x } else { &w.y };
    }
    acc
}
