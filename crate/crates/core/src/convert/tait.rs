//! The relative Tait graph of a virtual link diagram.

use std::collections::VecDeque;

use crate::links::{CrossingKind, VirtualLinkDiagram};
use crate::planemap::{EdgeKind, RelEdge, RelPlaneGraph};
use crate::poly::Polynomial;
use crate::ribbon::{Sign, Weight};
use crate::rotation::{twin, FaceWalk};

/// Checkerboard the faces of the diagram (per component, the face holding
/// the smallest dart is white), take the black faces as vertices, one edge
/// per crossing through its two black corners. Classical crossings give
/// regular edges, positive when the A-splitting joins the black faces;
/// positive edges weigh `(1, 1)` and negative ones `(x_neg, y_neg)`.
/// Virtual crossings give 0-edges. Every free loop adds an isolated vertex.
pub fn link_to_tait(l: &VirtualLinkDiagram) -> RelPlaneGraph {
    let rot = l.map().rotation();
    let darts = 2 * rot.edge_count();
    let walks: Vec<Vec<usize>> = rot
        .faces()
        .into_iter()
        .filter_map(|f| match f {
            FaceWalk::Darts(w) => Some(w),
            FaceWalk::Isolated(_) => None,
        })
        .collect();
    let mut face_of = vec![0; darts];
    for (f, walk) in walks.iter().enumerate() {
        for &d in walk {
            face_of[d] = f;
        }
    }

    // Faces on the two sides of an arc get opposite colours.
    let mut black: Vec<Option<bool>> = vec![None; walks.len()];
    for root in 0..walks.len() {
        if black[root].is_some() {
            continue;
        }
        black[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let colour = black[f].unwrap();
            for &d in &walks[f] {
                let g = face_of[twin(d)];
                match black[g] {
                    None => {
                        black[g] = Some(!colour);
                        queue.push_back(g);
                    }
                    Some(c) => assert_ne!(c, colour, "plane 4-valent maps are 2-colourable"),
                }
            }
        }
    }

    // Dart at end k of crossing c; the corner between ends k and k + 1
    // lies in the face of the twin of the dart at end k.
    let dart_at = |end: usize| {
        let arc = l.arc_of(end);
        2 * arc + usize::from(l.arcs()[arc].ends[0] != end)
    };
    let corner_face = |c: usize, k: usize| face_of[twin(dart_at(4 * c + k))];

    let mut vertex_of_face = vec![usize::MAX; walks.len()];
    let mut black_faces = Vec::new();
    for f in 0..walks.len() {
        if black[f] == Some(true) {
            vertex_of_face[f] = black_faces.len();
            black_faces.push(f);
        }
    }

    // Tait edge dart sitting in each black corner, keyed by the dart whose
    // twin opens the corner.
    let mut tait_dart = vec![usize::MAX; darts];
    let mut edges = Vec::with_capacity(l.crossings().len());
    for (c, crossing) in l.crossings().iter().enumerate() {
        let j0 = if black[corner_face(c, 0)] == Some(true) { 0 } else { 1 };
        let e = edges.len();
        tait_dart[twin(dart_at(4 * c + j0))] = 2 * e;
        tait_dart[twin(dart_at(4 * c + j0 + 2))] = 2 * e + 1;
        edges.push(match crossing.kind {
            CrossingKind::Virtual => RelEdge::zero(crossing.name.clone()),
            CrossingKind::Classical { over } => {
                if j0 % 2 == over % 2 {
                    RelEdge {
                        label: crossing.name.clone(),
                        kind: EdgeKind::Regular {
                            weight: Weight::unit(),
                            sign: Some(Sign::Plus),
                        },
                    }
                } else {
                    RelEdge {
                        label: crossing.name.clone(),
                        kind: EdgeKind::Regular {
                            weight: Weight {
                                x: Polynomial::var("x_neg"),
                                y: Polynomial::var("y_neg"),
                            },
                            sign: Some(Sign::Minus),
                        },
                    }
                }
            }
        });
    }

    let mut cycles: Vec<Vec<usize>> = black_faces
        .iter()
        .map(|&f| {
            walks[f]
                .iter()
                .map(|&d| tait_dart[d])
                .filter(|&t| t != usize::MAX)
                .collect()
        })
        .collect();
    cycles.extend(std::iter::repeat_with(Vec::new).take(l.free_loops()));
    RelPlaneGraph::from_cycles(cycles, edges).expect("Tait graphs of plane diagrams are plane")
}
