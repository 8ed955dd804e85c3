//! Conversions between ribbon graphs, relative plane graphs and Tait graphs.
//!
//! `ribbon_to_plane` draws the ribbon graph over a baseline (vertex discs on
//! the line, ribbons as staples above it), records the drawing as a plane
//! skeleton, replaces each crossing, twist and regular portion by its gadget
//! and contracts what is left of the skeleton. `plane_to_ribbon` goes back
//! through the medial circles of the 0-edges.

mod route;
mod tait;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::planemap::{EdgeKind, PlaneMap, RelEdge, RelPlaneGraph};
use crate::ribbon::{Arrow, ArrowEdge, ArrowPresentation, RibbonGraph, Sign};
use crate::rotation::{edge_of, twin, Dart, Rotation};

pub(crate) use route::{route, span_heights, Side};
pub use tait::link_to_tait;

/// Choices made while drawing a ribbon graph. `seed: None` gives the
/// canonical drawing; a seed shuffles the vertex order, the cut point of
/// every rotation, the staple heights and the placement of the marks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RouterOptions {
    pub seed: Option<u64>,
}

impl RouterOptions {
    pub fn seeded(seed: u64) -> RouterOptions {
        RouterOptions { seed: Some(seed) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletonVertex {
    /// The disc of a ribbon-graph vertex.
    Core(usize),
    /// Two strands crossing transversally.
    Crossing,
    /// A half twist of the given ribbon edge.
    TwistMark(usize),
    /// The regular portion of the given ribbon edge.
    RegularMark(usize),
}

/// A combinatorial drawing of a ribbon graph in the plane.
#[derive(Debug, Clone)]
pub struct DrawingSkeleton {
    pub map: PlaneMap,
    pub kinds: Vec<SkeletonVertex>,
    /// Non-core skeleton vertices met along each ribbon edge, starting at
    /// its first half-edge.
    pub paths: Vec<Vec<usize>>,
}

impl DrawingSkeleton {
    pub fn crossing_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| matches!(k, SkeletonVertex::Crossing))
            .count()
    }

    pub fn twist_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| matches!(k, SkeletonVertex::TwistMark(_)))
            .count()
    }
}

/// Bijection between the non-zero edges of a relative plane graph and the
/// edges of a ribbon graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionCertificate {
    /// `(plane edge, ribbon edge)` pairs.
    pub pairs: Vec<(usize, usize)>,
}

impl ConversionCertificate {
    /// Carry a subset of plane edges (full edge mask) to the ribbon side.
    pub fn to_ribbon_mask(&self, plane_mask: &[bool], ribbon_edges: usize) -> Vec<bool> {
        let mut out = vec![false; ribbon_edges];
        for &(g, r) in &self.pairs {
            out[r] = plane_mask[g];
        }
        out
    }

    pub fn label_pairs(&self, g: &RelPlaneGraph, r: &RibbonGraph) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(ge, re)| (g.edges()[ge].label.clone(), r.edges()[re].label.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
enum Item {
    Crossing(usize),
    Twist,
    Regular,
}

/// Draw `r` over a baseline.
pub fn draw(r: &RibbonGraph, opts: &RouterOptions) -> DrawingSkeleton {
    let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
    let rot = r.rotation();
    let nv = rot.vertex_count();
    let m = r.edge_count();

    let mut order: Vec<usize> = (0..nv).collect();
    if let Some(rng) = rng.as_mut() {
        order.shuffle(rng);
    }
    // Half-edges leave the top of each disc; counterclockwise runs right to left.
    let mut pos = vec![0usize; 2 * m];
    let mut base = 0;
    for &v in &order {
        let cycle = rot.cycle(v);
        let k = cycle.len();
        let cut = match rng.as_mut() {
            Some(rng) if k > 0 => rng.gen_range(0..k),
            _ => 0,
        };
        for j in 0..k {
            pos[cycle[(cut + j) % k]] = base + (k - 1 - j);
        }
        base += k;
    }

    let chords: Vec<(usize, usize)> = (0..m)
        .map(|e| {
            let (a, b) = (pos[2 * e], pos[2 * e + 1]);
            (a.min(b), a.max(b))
        })
        .collect();
    let forward: Vec<bool> = (0..m).map(|e| pos[2 * e] < pos[2 * e + 1]).collect();
    let heights = match rng.as_mut() {
        Some(rng) => {
            let mut h: Vec<usize> = (0..m).collect();
            h.shuffle(rng);
            h
        }
        None => span_heights(&chords),
    };
    let routing = route(&chords, &heights);

    // Items along each chord from p to q.
    let mut items: Vec<Vec<Item>> = Vec::with_capacity(m);
    for e in 0..m {
        let along = &routing.along[e];
        let k = along.len();
        let near_first = if forward[e] { 0 } else { k };
        let twisted = r.edges()[e].sign == Sign::Minus;
        let (reg_at, twist_at, regular_first) = match rng.as_mut() {
            Some(rng) => (
                rng.gen_range(0..=k),
                rng.gen_range(0..=k),
                rng.gen_bool(0.5),
            ),
            // Regular portion nearest the first half-edge, twist just beyond it.
            None => (near_first, near_first, forward[e]),
        };
        let mut seq = Vec::new();
        for stretch in 0..=k {
            let mut marks = Vec::new();
            if stretch == reg_at {
                marks.push(Item::Regular);
            }
            if twisted && stretch == twist_at {
                marks.push(Item::Twist);
            }
            if marks.len() == 2 && !regular_first {
                marks.reverse();
            }
            seq.extend(marks);
            if stretch < k {
                seq.push(Item::Crossing(along[stretch]));
            }
        }
        items.push(seq);
    }

    let crossing_count = routing.crossings.len();
    let mut kinds: Vec<SkeletonVertex> = (0..nv).map(SkeletonVertex::Core).collect();
    kinds.extend(std::iter::repeat_n(SkeletonVertex::Crossing, crossing_count));
    let mut mark_rot: Vec<[Dart; 2]> = Vec::new();
    // (chord, before, after) for each crossing
    let mut crossing_attach: Vec<Vec<(usize, Dart, Dart)>> = vec![Vec::new(); crossing_count];
    let mut half_edge_dart = vec![0; 2 * m];
    let mut paths = Vec::with_capacity(m);
    let mut segments = 0usize;

    for e in 0..m {
        let seq = &items[e];
        let first_seg = segments;
        segments += seq.len() + 1;
        let (start_h, end_h) = if forward[e] {
            (2 * e, 2 * e + 1)
        } else {
            (2 * e + 1, 2 * e)
        };
        half_edge_dart[start_h] = 2 * first_seg;
        half_edge_dart[end_h] = 2 * (first_seg + seq.len()) + 1;
        let mut path = Vec::with_capacity(seq.len());
        for (i, item) in seq.iter().enumerate() {
            let before = 2 * (first_seg + i) + 1;
            let after = 2 * (first_seg + i + 1);
            match *item {
                Item::Crossing(c) => {
                    crossing_attach[c].push((e, before, after));
                    path.push(nv + c);
                }
                Item::Twist | Item::Regular => {
                    path.push(kinds.len());
                    kinds.push(match item {
                        Item::Twist => SkeletonVertex::TwistMark(e),
                        _ => SkeletonVertex::RegularMark(e),
                    });
                    mark_rot.push([before, after]);
                }
            }
        }
        if !forward[e] {
            path.reverse();
        }
        paths.push(path);
    }

    let mut cycles: Vec<Vec<Dart>> = Vec::with_capacity(kinds.len());
    for v in 0..nv {
        cycles.push(rot.cycle(v).iter().map(|&h| half_edge_dart[h]).collect());
    }
    for (c, crossing) in routing.crossings.iter().enumerate() {
        let attach = &crossing_attach[c];
        cycles.push(
            crossing
                .ends
                .iter()
                .map(|&(chord, side)| {
                    let &(_, before, after) = attach
                        .iter()
                        .find(|(ch, _, _)| *ch == chord)
                        .expect("both strands pass through their crossing");
                    match side {
                        Side::Before => before,
                        Side::After => after,
                    }
                })
                .collect(),
        );
    }
    for darts in mark_rot {
        cycles.push(darts.to_vec());
    }
    let map = PlaneMap::from_cycles(cycles, segments).expect("staple drawings are plane");
    DrawingSkeleton { map, kinds, paths }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GadgetEdge {
    Skeleton,
    Zero,
    Regular(usize),
}

/// Relative plane graph of the canonical drawing of `r`.
pub fn ribbon_to_plane(r: &RibbonGraph) -> (RelPlaneGraph, ConversionCertificate) {
    ribbon_to_plane_with(r, &RouterOptions::default())
}

/// Relative plane graph of the drawing of `r` selected by `opts`.
pub fn ribbon_to_plane_with(
    r: &RibbonGraph,
    opts: &RouterOptions,
) -> (RelPlaneGraph, ConversionCertificate) {
    let skeleton = draw(r, opts);
    gadget_substitution(r, &skeleton)
}

/// Replace crossings by 4-cycles of 0-edges, twist marks by a 0-edge and
/// regular marks by the regular edge, then contract the skeleton.
pub fn gadget_substitution(
    r: &RibbonGraph,
    skeleton: &DrawingSkeleton,
) -> (RelPlaneGraph, ConversionCertificate) {
    let skel = skeleton.map.rotation();
    let mut kinds: Vec<GadgetEdge> = vec![GadgetEdge::Skeleton; skel.edge_count()];
    let mut cycles: Vec<Vec<Dart>> = Vec::new();
    for (v, kind) in skeleton.kinds.iter().enumerate() {
        let ds = skel.cycle(v);
        match *kind {
            SkeletonVertex::Core(_) => cycles.push(ds.to_vec()),
            SkeletonVertex::Crossing => {
                let z0 = kinds.len();
                kinds.extend([GadgetEdge::Zero; 4]);
                for i in 0..4 {
                    let to_next = 2 * (z0 + i);
                    let to_prev = 2 * (z0 + (i + 3) % 4) + 1;
                    cycles.push(vec![ds[i], to_next, to_prev]);
                }
            }
            SkeletonVertex::TwistMark(_) | SkeletonVertex::RegularMark(_) => {
                let g = kinds.len();
                kinds.push(match *kind {
                    SkeletonVertex::RegularMark(e) => GadgetEdge::Regular(e),
                    _ => GadgetEdge::Zero,
                });
                cycles.push(vec![ds[0], 2 * g]);
                cycles.push(vec![ds[1], 2 * g + 1]);
            }
        }
    }
    let rotation = Rotation::new(cycles, kinds.len()).expect("gadgets attach every dart");
    let contract: Vec<bool> = kinds.iter().map(|k| *k == GadgetEdge::Skeleton).collect();
    let minor = rotation.minor(&vec![false; kinds.len()], &contract);
    debug_assert_eq!(minor.deleted_loops, 0);

    let mut used: std::collections::HashSet<String> =
        r.edges().iter().map(|e| e.label.clone()).collect();
    let mut zero_count = 0;
    let mut edges = Vec::with_capacity(minor.kept_edges.len());
    let mut pairs = Vec::new();
    for (new_e, &old_e) in minor.kept_edges.iter().enumerate() {
        match kinds[old_e] {
            GadgetEdge::Regular(re) => {
                let src = &r.edges()[re];
                pairs.push((new_e, re));
                edges.push(RelEdge {
                    label: src.label.clone(),
                    kind: EdgeKind::Regular {
                        weight: src.weight.clone(),
                        sign: None,
                    },
                });
            }
            GadgetEdge::Zero => {
                let mut label = format!("z{zero_count}");
                zero_count += 1;
                while used.contains(&label) {
                    label.push('_');
                }
                used.insert(label.clone());
                edges.push(RelEdge::zero(label));
            }
            GadgetEdge::Skeleton => unreachable!("skeleton edges are contracted"),
        }
    }
    let map = PlaneMap::new(minor.rotation).expect("contraction keeps the drawing plane");
    let g = RelPlaneGraph::new(map, edges).expect("one record per edge");
    (g, ConversionCertificate { pairs })
}

/// Medial circles of the 0-edge subgraph, each with the arrows left on it
/// by the regular edges.
///
/// A corner is the angle after an H-dart `g` up to the next H-dart
/// counterclockwise. Traversing a corner forward goes counterclockwise
/// around its vertex. Regular darts inside a corner leave arrows pointing
/// counterclockwise, so they are forward exactly when the corner is.
pub fn arrow_presentation_of(g: &RelPlaneGraph) -> ArrowPresentation {
    let rot = g.rotation();
    let regular = g.regular_edges();
    let mut regular_index = vec![usize::MAX; g.edge_count()];
    for (i, &e) in regular.iter().enumerate() {
        regular_index[e] = i;
    }
    let is_zero = |d: Dart| g.edges()[edge_of(d)].is_zero();

    // Regular darts in the corner after each H-dart.
    let mut corner_darts: Vec<Vec<Dart>> = vec![Vec::new(); 2 * g.edge_count()];
    let mut next_h = vec![usize::MAX; 2 * g.edge_count()];
    let mut prev_h = vec![usize::MAX; 2 * g.edge_count()];
    let mut isolated: Vec<Vec<Dart>> = Vec::new();
    for cycle in rot.cycles() {
        let hs: Vec<usize> = (0..cycle.len()).filter(|&i| is_zero(cycle[i])).collect();
        if hs.is_empty() {
            isolated.push(cycle.clone());
            continue;
        }
        for (j, &i) in hs.iter().enumerate() {
            let gd = cycle[i];
            let nd = cycle[hs[(j + 1) % hs.len()]];
            next_h[gd] = nd;
            prev_h[nd] = gd;
            let mut k = (i + 1) % cycle.len();
            while !is_zero(cycle[k]) {
                corner_darts[gd].push(cycle[k]);
                k = (k + 1) % cycle.len();
            }
        }
    }

    let arrow = |d: Dart, forward: bool| Arrow {
        edge: regular_index[edge_of(d)],
        forward,
    };
    let mut circles = Vec::new();
    let mut visited = vec![false; 2 * g.edge_count()];
    for start in 0..2 * g.edge_count() {
        if !is_zero(start) || visited[start] {
            continue;
        }
        let mut circle = Vec::new();
        let (mut c, mut forward) = (start, true);
        loop {
            visited[c] = true;
            if forward {
                circle.extend(corner_darts[c].iter().map(|&d| arrow(d, true)));
                c = prev_h[twin(next_h[c])];
                forward = false;
            } else {
                circle.extend(corner_darts[c].iter().rev().map(|&d| arrow(d, false)));
                c = twin(c);
                forward = true;
            }
            if forward && c == start {
                break;
            }
        }
        circles.push(circle);
    }
    for cycle in isolated {
        circles.push(cycle.iter().map(|&d| arrow(d, true)).collect());
    }

    let edges = regular
        .iter()
        .map(|&e| ArrowEdge {
            label: g.edges()[e].label.clone(),
            weight: g.edges()[e].weight().cloned().expect("regular edge"),
        })
        .collect();
    ArrowPresentation { circles, edges }
}

/// Ribbon graph of a relative plane graph: vertices are the medial circles
/// of the 0-edges, edges are the regular edges. Ribbon edge `i` is the
/// `i`-th regular edge of `g`.
pub fn plane_to_ribbon(g: &RelPlaneGraph) -> RibbonGraph {
    RibbonGraph::from_arrow_presentation(&arrow_presentation_of(g))
        .expect("every regular edge leaves exactly two arrows")
}

/// Like [`plane_to_ribbon`], with the edge bijection.
pub fn plane_to_ribbon_with_certificate(
    g: &RelPlaneGraph,
) -> (RibbonGraph, ConversionCertificate) {
    let r = plane_to_ribbon(g);
    let pairs = g
        .regular_edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    (r, ConversionCertificate { pairs })
}
