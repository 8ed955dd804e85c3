//! Rotation systems: cyclic dart orders around vertices.
//!
//! Edge `e` owns the darts `2e` and `2e + 1`; [`twin`] maps one to the other.
//! Each vertex lists its darts in counterclockwise order. Ribbon graphs and
//! plane maps are both built on this type.

use crate::dsu::Dsu;
use crate::error::{Error, Result};

pub type Dart = usize;

pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

pub fn edge_of(d: Dart) -> usize {
    d / 2
}

/// A face of a map: a closed walk of darts, or an isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceWalk {
    Darts(Vec<Dart>),
    Isolated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    cycles: Vec<Vec<Dart>>,
    edge_count: usize,
    vertex_of: Vec<usize>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
}

/// Result of deleting and contracting edges.
#[derive(Debug, Clone)]
pub struct Minor {
    pub rotation: Rotation,
    /// Original index of each surviving edge.
    pub kept_edges: Vec<usize>,
    /// Loops that were deleted because they were scheduled for contraction.
    pub deleted_loops: usize,
    /// New vertex of each original vertex.
    pub vertex_map: Vec<usize>,
}

impl Rotation {
    /// Build from per-vertex counterclockwise dart cycles. Every dart
    /// `0..2 * edge_count` must occur exactly once.
    pub fn new(cycles: Vec<Vec<Dart>>, edge_count: usize) -> Result<Rotation> {
        let n = 2 * edge_count;
        let mut vertex_of = vec![usize::MAX; n];
        let mut next = vec![0; n];
        let mut prev = vec![0; n];
        for (v, cycle) in cycles.iter().enumerate() {
            for (i, &d) in cycle.iter().enumerate() {
                if d >= n {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} out of range for {edge_count} edges"
                    )));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(Error::MalformedRotation(format!("dart {d} occurs twice")));
                }
                vertex_of[d] = v;
                next[d] = cycle[(i + 1) % cycle.len()];
                prev[d] = cycle[(i + cycle.len() - 1) % cycle.len()];
            }
        }
        if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MalformedRotation(format!(
                "dart {d} is not attached to any vertex"
            )));
        }
        Ok(Rotation {
            cycles,
            edge_count,
            vertex_of,
            next,
            prev,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn cycles(&self) -> &[Vec<Dart>] {
        &self.cycles
    }

    pub fn cycle(&self, v: usize) -> &[Dart] {
        &self.cycles[v]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }

    /// Next dart counterclockwise around the same vertex.
    pub fn next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn prev(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.ends(e);
        a == b
    }

    /// Connected components using only the edges accepted by `keep`.
    pub fn components_with(&self, keep: impl Fn(usize) -> bool) -> usize {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in 0..self.edge_count {
            if keep(e) {
                let (a, b) = self.ends(e);
                dsu.union(a, b);
            }
        }
        dsu.sets()
    }

    pub fn components(&self) -> usize {
        self.components_with(|_| true)
    }

    /// Component index of every vertex, numbered in order of first vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in 0..self.edge_count {
            let (a, b) = self.ends(e);
            dsu.union(a, b);
        }
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut root_label = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        for v in 0..self.vertex_count() {
            let r = dsu.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[v] = root_label[r];
        }
        label
    }

    /// Face walks of the untwisted map: `d -> next(twin(d))`.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let n = 2 * self.edge_count;
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.next[twin(d)];
            }
            faces.push(FaceWalk::Darts(walk));
        }
        for (v, cycle) in self.cycles.iter().enumerate() {
            if cycle.is_empty() {
                faces.push(FaceWalk::Isolated(v));
            }
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// `v - e + f - 2k`; zero exactly when every component is a sphere.
    pub fn euler_deficit(&self) -> i64 {
        let euler =
            self.vertex_count() as i64 - self.edge_count as i64 + self.face_count() as i64;
        euler - 2 * self.components() as i64
    }

    pub fn check_plane(&self) -> Result<()> {
        let euler =
            self.vertex_count() as i64 - self.edge_count as i64 + self.face_count() as i64;
        let expected = 2 * self.components() as i64;
        if euler != expected {
            return Err(Error::NotPlane {
                euler,
                expected,
                deficit: expected - euler,
            });
        }
        Ok(())
    }

    /// Delete the edges flagged in `delete`, then contract those flagged in
    /// `contract` (in increasing index order). A contracted edge that is a
    /// loop at the time of its contraction is deleted instead.
    pub fn minor(&self, delete: &[bool], contract: &[bool]) -> Minor {
        let n = 2 * self.edge_count;
        let mut next = self.next.clone();
        let mut prev = self.prev.clone();
        let mut alive = vec![true; n];

        fn unlink(d: Dart, next: &mut [Dart], prev: &mut [Dart], alive: &mut [bool]) {
            let (p, q) = (prev[d], next[d]);
            if p != d {
                next[p] = q;
                prev[q] = p;
            }
            alive[d] = false;
        }

        for e in 0..self.edge_count {
            if delete[e] {
                unlink(2 * e, &mut next, &mut prev, &mut alive);
                unlink(2 * e + 1, &mut next, &mut prev, &mut alive);
            }
        }

        let mut dsu = Dsu::new(self.vertex_count());
        let mut deleted_loops = 0;
        for e in 0..self.edge_count {
            if delete[e] || !contract[e] {
                continue;
            }
            let (a, b) = (2 * e, 2 * e + 1);
            let u = dsu.find(self.vertex_of[a]);
            let v = dsu.find(self.vertex_of[b]);
            if u == v {
                unlink(a, &mut next, &mut prev, &mut alive);
                unlink(b, &mut next, &mut prev, &mut alive);
                deleted_loops += 1;
                continue;
            }
            let a_alone = next[a] == a;
            let b_alone = next[b] == b;
            match (a_alone, b_alone) {
                (true, true) => {}
                (true, false) => unlink(b, &mut next, &mut prev, &mut alive),
                (false, true) => unlink(a, &mut next, &mut prev, &mut alive),
                (false, false) => {
                    let (pa, na, pb, nb) = (prev[a], next[a], prev[b], next[b]);
                    next[pa] = nb;
                    prev[nb] = pa;
                    next[pb] = na;
                    prev[na] = pb;
                }
            }
            alive[a] = false;
            alive[b] = false;
            dsu.union(u, v);
        }

        let mut kept_edges = Vec::new();
        let mut new_edge = vec![usize::MAX; self.edge_count];
        for e in 0..self.edge_count {
            if !delete[e] && !contract[e] {
                new_edge[e] = kept_edges.len();
                kept_edges.push(e);
            }
        }

        let mut vertex_map = vec![usize::MAX; self.vertex_count()];
        let mut root_to_new = vec![usize::MAX; self.vertex_count()];
        let mut class_count = 0;
        for v in 0..self.vertex_count() {
            let r = dsu.find(v);
            if root_to_new[r] == usize::MAX {
                root_to_new[r] = class_count;
                class_count += 1;
            }
            vertex_map[v] = root_to_new[r];
        }

        let mut cycles: Vec<Vec<Dart>> = vec![Vec::new(); class_count];
        let mut started = vec![false; class_count];
        for d in 0..n {
            if !alive[d] {
                continue;
            }
            let nv = vertex_map[self.vertex_of[d]];
            if started[nv] {
                continue;
            }
            started[nv] = true;
            let mut x = d;
            loop {
                cycles[nv].push(2 * new_edge[edge_of(x)] + (x & 1));
                x = next[x];
                if x == d {
                    break;
                }
            }
        }

        let rotation = Rotation::new(cycles, kept_edges.len())
            .expect("minor of a valid rotation system is valid");
        Minor {
            rotation,
            kept_edges,
            deleted_loops,
            vertex_map,
        }
    }

    /// Keep only the edges accepted by `keep`, renumbering them.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Minor {
        let delete: Vec<bool> = (0..self.edge_count).map(|e| !keep(e)).collect();
        self.minor(&delete, &vec![false; self.edge_count])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Rotation {
        // edges: 0 = v0-v1, 1 = v1-v2, 2 = v2-v0
        Rotation::new(vec![vec![0, 5], vec![2, 1], vec![4, 3]], 3).unwrap()
    }

    #[test]
    fn rejects_duplicate_and_missing_darts() {
        assert!(Rotation::new(vec![vec![0, 0]], 1).is_err());
        assert!(Rotation::new(vec![vec![0]], 1).is_err());
        assert!(Rotation::new(vec![vec![0, 2]], 1).is_err());
    }

    #[test]
    fn face_counts() {
        let loop1 = Rotation::new(vec![vec![0, 1]], 1).unwrap();
        assert_eq!(loop1.face_count(), 2);
        assert_eq!(triangle().face_count(), 2);
        let iso = Rotation::new(vec![vec![]], 0).unwrap();
        assert_eq!(iso.faces(), vec![FaceWalk::Isolated(0)]);
        assert_eq!(triangle().euler_deficit(), 0);
    }

    #[test]
    fn torus_fails_plane_check() {
        // one vertex, two loops interleaved: a b a' b'
        let torus = Rotation::new(vec![vec![0, 2, 1, 3]], 2).unwrap();
        assert!(matches!(
            torus.check_plane(),
            Err(Error::NotPlane { deficit: 2, .. })
        ));
    }

    #[test]
    fn contract_path_edge() {
        let path = Rotation::new(vec![vec![0], vec![1]], 1).unwrap();
        let m = path.minor(&[false], &[true]);
        assert_eq!(m.rotation.vertex_count(), 1);
        assert_eq!(m.rotation.edge_count(), 0);
        assert_eq!(m.deleted_loops, 0);
    }

    #[test]
    fn contracting_a_loop_deletes_it() {
        let loop1 = Rotation::new(vec![vec![0, 1]], 1).unwrap();
        let m = loop1.minor(&[false], &[true]);
        assert_eq!(m.rotation.vertex_count(), 1);
        assert_eq!(m.rotation.edge_count(), 0);
        assert_eq!(m.deleted_loops, 1);
    }

    #[test]
    fn contracting_triangle_edges_keeps_plane() {
        let t = triangle();
        let m = t.minor(&[false; 3], &[true, false, false]);
        assert_eq!(m.rotation.vertex_count(), 2);
        assert_eq!(m.rotation.edge_count(), 2);
        assert_eq!(m.rotation.euler_deficit(), 0);
        let m = t.minor(&[false; 3], &[true, true, true]);
        assert_eq!(m.deleted_loops, 1);
        assert_eq!(m.rotation.vertex_count(), 1);
    }

    #[test]
    fn deleting_one_of_a_double_edge() {
        let double = Rotation::new(vec![vec![0, 2], vec![3, 1]], 2).unwrap();
        assert_eq!(double.euler_deficit(), 0);
        let m = double.restrict(|e| e == 1);
        assert_eq!(m.rotation.edge_count(), 1);
        assert_eq!(m.kept_edges, vec![1]);
        assert_eq!(m.rotation.euler_deficit(), 0);
    }
}
