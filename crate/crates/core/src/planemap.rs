//! Plane maps, relative plane graphs, the relative Tutte polynomial and
//! relative duality.

use rayon::prelude::*;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var, EXP_SCALE};
use crate::ribbon::{check_cap, subset_weight, Sign, Weight, DEFAULT_EDGE_CAP};
use crate::rotation::{Dart, FaceWalk, Rotation};

/// A rotation system of genus 0 (every component is a sphere).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    rotation: Rotation,
}

impl PlaneMap {
    pub fn new(rotation: Rotation) -> Result<PlaneMap> {
        rotation.check_plane()?;
        Ok(PlaneMap { rotation })
    }

    pub fn from_cycles(cycles: Vec<Vec<Dart>>, edge_count: usize) -> Result<PlaneMap> {
        PlaneMap::new(Rotation::new(cycles, edge_count)?)
    }

    // Minors and duals of plane maps are plane.
    fn trusted(rotation: Rotation) -> PlaneMap {
        debug_assert_eq!(rotation.euler_deficit(), 0);
        PlaneMap { rotation }
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.edge_count()
    }

    pub fn components(&self) -> usize {
        self.rotation.components()
    }

    pub fn faces(&self) -> Vec<FaceWalk> {
        self.rotation.faces()
    }

    /// Contract edge `e`; a loop is deleted instead.
    pub fn contract(&self, e: usize) -> PlaneMap {
        let mut contract = vec![false; self.edge_count()];
        contract[e] = true;
        PlaneMap::trusted(
            self.rotation
                .minor(&vec![false; self.edge_count()], &contract)
                .rotation,
        )
    }

    pub fn delete(&self, e: usize) -> PlaneMap {
        PlaneMap::trusted(self.rotation.restrict(|x| x != e).rotation)
    }

    /// δ: number of closed straight-ahead curves of the medial graph.
    ///
    /// Curves run through corners (the angle after dart `g`, up to the next
    /// dart counterclockwise). At the midpoint of an edge with darts `h`,
    /// `h'` the curves cross over, joining corner `h` with corner `h'` and
    /// corner `prev(h)` with corner `prev(h')`. An isolated vertex carries
    /// one circle.
    pub fn medial_circles(&self) -> usize {
        let rot = &self.rotation;
        let mut dsu = Dsu::new(2 * rot.edge_count());
        for e in 0..rot.edge_count() {
            let (h, h2) = (2 * e, 2 * e + 1);
            dsu.union(h, h2);
            dsu.union(rot.prev(h), rot.prev(h2));
        }
        let isolated = rot.cycles().iter().filter(|c| c.is_empty()).count();
        dsu.sets() + isolated
    }
}

/// ψ = d^{δ-k} w^{v-k}.
pub fn psi_from_counts(delta: usize, k: usize, v: usize) -> Polynomial {
    let (delta, k, v) = (delta as i64, k as i64, v as i64);
    Polynomial::monomial(Monomial::from_factors([
        (Var::new("d"), (delta - k) * EXP_SCALE),
        (Var::new("w"), (v - k) * EXP_SCALE),
    ]))
}

/// ψ of a contracted map.
pub fn psi(map: &PlaneMap) -> Polynomial {
    psi_from_counts(map.medial_circles(), map.components(), map.vertex_count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeKind {
    /// A non-zero edge with its weight pair; the sign is only used for Tait graphs.
    Regular { weight: Weight, sign: Option<Sign> },
    /// A 0-edge.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelEdge {
    pub label: String,
    pub kind: EdgeKind,
}

impl RelEdge {
    pub fn regular(label: impl Into<String>) -> RelEdge {
        let label = label.into();
        RelEdge {
            kind: EdgeKind::Regular {
                weight: Weight::symbolic(&label),
                sign: None,
            },
            label,
        }
    }

    pub fn zero(label: impl Into<String>) -> RelEdge {
        RelEdge {
            label: label.into(),
            kind: EdgeKind::Zero,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, EdgeKind::Zero)
    }

    pub fn weight(&self) -> Option<&Weight> {
        match &self.kind {
            EdgeKind::Regular { weight, .. } => Some(weight),
            EdgeKind::Zero => None,
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match &self.kind {
            EdgeKind::Regular { sign, .. } => *sign,
            EdgeKind::Zero => None,
        }
    }
}

/// The contracted remainder H_F.
#[derive(Debug, Clone)]
pub struct ContractionResult {
    pub map: PlaneMap,
    pub deleted_loops: usize,
}

/// A plane graph with a distinguished set H of 0-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPlaneGraph {
    map: PlaneMap,
    edges: Vec<RelEdge>,
}

impl RelPlaneGraph {
    pub fn new(map: PlaneMap, edges: Vec<RelEdge>) -> Result<RelPlaneGraph> {
        if map.edge_count() != edges.len() {
            return Err(Error::MalformedRotation(format!(
                "{} edge records for {} edges",
                edges.len(),
                map.edge_count()
            )));
        }
        Ok(RelPlaneGraph { map, edges })
    }

    pub fn from_cycles(cycles: Vec<Vec<Dart>>, edges: Vec<RelEdge>) -> Result<RelPlaneGraph> {
        let map = PlaneMap::from_cycles(cycles, edges.len())?;
        RelPlaneGraph::new(map, edges)
    }

    pub fn map(&self) -> &PlaneMap {
        &self.map
    }

    pub fn rotation(&self) -> &Rotation {
        self.map.rotation()
    }

    pub fn edges(&self) -> &[RelEdge] {
        &self.edges
    }

    pub fn edges_mut(&mut self) -> &mut [RelEdge] {
        &mut self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.map.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn components(&self) -> usize {
        self.map.components()
    }

    /// Indices of the non-zero edges, in order.
    pub fn regular_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| !self.edges[e].is_zero())
            .collect()
    }

    pub fn zero_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].is_zero())
            .collect()
    }

    /// Full-length edge mask from a subset of `regular_edges()` given as bits.
    pub fn regular_mask(&self, bits: u64) -> Vec<bool> {
        let regular = self.regular_edges();
        let mut f = vec![false; self.edges.len()];
        for (i, &e) in regular.iter().enumerate() {
            f[e] = bits >> i & 1 == 1;
        }
        f
    }

    /// k of the spanning subgraph with edge mask `f`.
    pub fn components_of(&self, f: &[bool]) -> usize {
        self.rotation().components_with(|e| f[e])
    }

    /// k(F ∪ H).
    pub fn components_with_zero(&self, f: &[bool]) -> usize {
        self.rotation()
            .components_with(|e| f[e] || self.edges[e].is_zero())
    }

    /// n(F) on the full vertex set.
    pub fn nullity(&self, f: &[bool]) -> usize {
        let size = f.iter().filter(|&&b| b).count();
        size + self.components_of(f) - self.vertex_count()
    }

    /// H_F: the spanning submap F ∪ H with every edge of F contracted
    /// (contracting a loop deletes it). `f` must not contain 0-edges.
    pub fn contract_all(&self, f: &[bool]) -> ContractionResult {
        let delete: Vec<bool> = (0..self.edges.len())
            .map(|e| !f[e] && !self.edges[e].is_zero())
            .collect();
        debug_assert!((0..self.edges.len()).all(|e| !(f[e] && self.edges[e].is_zero())));
        let minor = self.rotation().minor(&delete, f);
        ContractionResult {
            map: PlaneMap::trusted(minor.rotation),
            deleted_loops: minor.deleted_loops,
        }
    }

    /// `(Π_{e∈F} x_e)(Π_{e∈E∖(F∪H)} y_e)`.
    pub fn subset_weight(&self, f: &[bool]) -> Polynomial {
        let regular = self.regular_edges();
        let sub: Vec<bool> = regular.iter().map(|&e| f[e]).collect();
        subset_weight(regular.iter().map(|&e| self.edges[e].weight().unwrap()), &sub)
    }

    /// Relative Tutte polynomial with the default cap.
    pub fn relative_tutte(&self) -> Result<Polynomial> {
        self.relative_tutte_capped(DEFAULT_EDGE_CAP)
    }

    /// `Σ_{F ⊆ E∖H} (Π x_e)(Π y_e) X^{k(F∪H)-k(G)} Y^{n(F)} ψ(H_F)`.
    pub fn relative_tutte_capped(&self, cap: usize) -> Result<Polynomial> {
        let m = self.regular_edges().len();
        check_cap("relative plane graph", m, cap)?;
        let k_g = self.components() as i64;
        let (x, y) = (Var::new("X"), Var::new("Y"));
        let total = (0..1u64 << m)
            .into_par_iter()
            .fold(Polynomial::zero, |acc, bits| {
                let f = self.regular_mask(bits);
                let k_fh = self.components_with_zero(&f) as i64;
                let n = self.nullity(&f) as i64;
                let h_f = self.contract_all(&f);
                let mono = Monomial::from_factors([
                    (x.clone(), (k_fh - k_g) * EXP_SCALE),
                    (y.clone(), n * EXP_SCALE),
                ]);
                let term = &self.subset_weight(&f) * &psi(&h_f.map);
                acc + term.mul_monomial(&mono)
            })
            .reduce(Polynomial::zero, |a, b| a + b);
        Ok(total)
    }

    /// The relative dual: one vertex per face walk (each component dualized
    /// on its own, isolated vertices stay isolated), e* crosses e, 0-edges
    /// stay 0-edges, weights are swapped and Tait signs flipped.
    pub fn dual(&self) -> RelPlaneGraph {
        let rot = self.rotation();
        let mut cycles = Vec::new();
        for face in rot.faces() {
            match face {
                FaceWalk::Darts(walk) => cycles.push(walk),
                FaceWalk::Isolated(_) => cycles.push(Vec::new()),
            }
        }
        let rotation = Rotation::new(cycles, rot.edge_count())
            .expect("face walks partition the darts");
        let edges = self
            .edges
            .iter()
            .map(|e| RelEdge {
                label: e.label.clone(),
                kind: match &e.kind {
                    EdgeKind::Zero => EdgeKind::Zero,
                    EdgeKind::Regular { weight, sign } => EdgeKind::Regular {
                        weight: weight.swapped(),
                        sign: sign.map(Sign::flip),
                    },
                },
            })
            .collect();
        RelPlaneGraph {
            map: PlaneMap::trusted(rotation),
            edges,
        }
    }

    /// a(G,H) = (|E∖H| - v)/2 + k, scaled by `EXP_SCALE`.
    pub fn duality_a_scaled(&self) -> i64 {
        let m = self.regular_edges().len() as i64;
        let v = self.vertex_count() as i64;
        let k = self.components() as i64;
        (m - v) * EXP_SCALE / 2 + k * EXP_SCALE
    }

    /// b(G) = v/2, scaled by `EXP_SCALE`.
    pub fn duality_b_scaled(&self) -> i64 {
        self.vertex_count() as i64 * EXP_SCALE / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn path() -> PlaneMap {
        PlaneMap::from_cycles(vec![vec![0], vec![1]], 1).unwrap()
    }

    #[test]
    fn medial_circle_counts() {
        assert_eq!(path().medial_circles(), 1);
        let loop1 = PlaneMap::from_cycles(vec![vec![0, 1]], 1).unwrap();
        assert_eq!(loop1.medial_circles(), 1);
        let iso = PlaneMap::from_cycles(vec![vec![]], 0).unwrap();
        assert_eq!(iso.medial_circles(), 1);
        let bouquet = PlaneMap::from_cycles(vec![vec![0, 1, 2, 3]], 2).unwrap();
        assert_eq!(bouquet.medial_circles(), 1);
        let digon = PlaneMap::from_cycles(vec![vec![0, 2], vec![3, 1]], 2).unwrap();
        assert_eq!(digon.medial_circles(), 2);
    }

    #[test]
    fn psi_examples() {
        let iso = PlaneMap::from_cycles(vec![vec![]], 0).unwrap();
        assert_eq!(psi(&iso), Polynomial::one());
        assert_eq!(psi(&path()), Polynomial::var("w"));
        let loop1 = PlaneMap::from_cycles(vec![vec![0, 1]], 1).unwrap();
        assert_eq!(psi(&loop1), Polynomial::one());
    }

    #[test]
    fn contract_and_delete() {
        let c = path().contract(0);
        assert_eq!((c.vertex_count(), c.edge_count()), (1, 0));
        let loop1 = PlaneMap::from_cycles(vec![vec![0, 1]], 1).unwrap();
        let c = loop1.contract(0);
        assert_eq!((c.vertex_count(), c.edge_count()), (1, 0));
        let double = PlaneMap::from_cycles(vec![vec![0, 2], vec![3, 1]], 2).unwrap();
        let d = double.delete(0);
        assert_eq!(d.edge_count(), 1);
        assert_eq!(d.rotation().euler_deficit(), 0);
    }

    fn weighted(label: &str, x: &str, y: &str) -> RelEdge {
        RelEdge {
            label: label.into(),
            kind: EdgeKind::Regular {
                weight: Weight {
                    x: parse(x).unwrap(),
                    y: parse(y).unwrap(),
                },
                sign: None,
            },
        }
    }

    #[test]
    fn triangle_reduces_to_tutte() {
        let edges = (0..3).map(|i| weighted(&format!("e{i}"), "1", "1")).collect();
        let g = RelPlaneGraph::from_cycles(vec![vec![0, 5], vec![2, 1], vec![4, 3]], edges)
            .unwrap();
        assert_eq!(g.relative_tutte().unwrap(), parse("X^2 + 3*X + 3 + Y").unwrap());
    }

    #[test]
    fn regular_edge_parallel_to_zero_edge() {
        let g = RelPlaneGraph::from_cycles(
            vec![vec![0, 2], vec![3, 1]],
            vec![weighted("e", "x", "y"), RelEdge::zero("z")],
        )
        .unwrap();
        assert_eq!(g.relative_tutte().unwrap(), parse("x + y*w").unwrap());
    }

    #[test]
    fn single_regular_loop() {
        let g = RelPlaneGraph::from_cycles(vec![vec![0, 1]], vec![weighted("e", "x", "y")])
            .unwrap();
        assert_eq!(g.relative_tutte().unwrap(), parse("y + x*Y").unwrap());
    }

    #[test]
    fn contract_all_of_empty_subset_is_h() {
        let g = RelPlaneGraph::from_cycles(
            vec![vec![0, 2], vec![3, 1]],
            vec![weighted("e", "x", "y"), RelEdge::zero("z")],
        )
        .unwrap();
        let r = g.contract_all(&[false, false]);
        assert_eq!(r.map.vertex_count(), 2);
        assert_eq!(r.map.edge_count(), 1);
        let r = g.contract_all(&[true, false]);
        assert_eq!(r.map.vertex_count(), 1);
        assert_eq!(r.map.edge_count(), 1);
        assert_eq!(r.deleted_loops, 0);
    }

    #[test]
    fn dual_of_loop_is_bridge() {
        let g = RelPlaneGraph::from_cycles(vec![vec![0, 1]], vec![RelEdge::regular("e")]).unwrap();
        let d = g.dual();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 1);
        assert!(!d.rotation().is_loop(0));
        assert_eq!(d.dual(), g);
        assert_eq!(d.edges()[0].weight().unwrap(), &Weight::symbolic("e").swapped());
    }

    #[test]
    fn not_plane_is_rejected() {
        let err = PlaneMap::from_cycles(vec![vec![0, 2, 1, 3]], 2).unwrap_err();
        assert!(matches!(err, Error::NotPlane { deficit: 2, .. }));
    }
}
