//! Layered chord routing above a baseline.
//!
//! Attachment points sit on a horizontal baseline at integer positions.
//! Every chord `(p, q)` with `p < q` is drawn as a staple: up from `p` to its
//! own height, across, and down to `q`. Legs never meet legs and horizontals
//! never meet horizontals, so every crossing is a horizontal of a lower
//! staple against a leg of a higher one. Everything is computed
//! combinatorially; no coordinates are produced.

/// Which stretch of a chord a crossing end leads into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    /// Toward the chord's start `p`.
    Before,
    /// Toward the chord's end `q`.
    After,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RoutedCrossing {
    /// The four ends in counterclockwise order (east, north, west, south).
    pub ends: [(usize, Side); 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Routing {
    pub crossings: Vec<RoutedCrossing>,
    /// Crossings met along each chord, from `p` to `q`.
    pub along: Vec<Vec<usize>>,
}

/// Route `chords` (each `p < q`, all endpoints distinct) with the given
/// pairwise distinct `heights`.
pub(crate) fn route(chords: &[(usize, usize)], heights: &[usize]) -> Routing {
    debug_assert!(chords.iter().all(|&(p, q)| p < q));
    // (stage, key) orders crossings along a chord: left leg bottom-up,
    // horizontal left-to-right, right leg top-down.
    let mut along_keys: Vec<Vec<((u8, i64), usize)>> = vec![Vec::new(); chords.len()];
    let mut crossings = Vec::new();
    for s in 0..chords.len() {
        let (ps, qs) = chords[s];
        for t in 0..chords.len() {
            if heights[t] <= heights[s] {
                continue;
            }
            let (pt, qt) = chords[t];
            for (x, left_leg) in [(pt, true), (qt, false)] {
                if !(ps < x && x < qs) {
                    continue;
                }
                let id = crossings.len();
                let (north, south) = if left_leg {
                    (Side::After, Side::Before)
                } else {
                    (Side::Before, Side::After)
                };
                crossings.push(RoutedCrossing {
                    ends: [(s, Side::After), (t, north), (s, Side::Before), (t, south)],
                });
                along_keys[s].push(((1, x as i64), id));
                let key = if left_leg {
                    (0, heights[s] as i64)
                } else {
                    (2, -(heights[s] as i64))
                };
                along_keys[t].push((key, id));
            }
        }
    }
    let along = along_keys
        .into_iter()
        .map(|mut keys| {
            keys.sort();
            keys.into_iter().map(|(_, id)| id).collect()
        })
        .collect();
    Routing { crossings, along }
}

/// Default heights: shorter spans lower, ties by index. With these, two
/// chords cross exactly when their endpoints interleave.
pub(crate) fn span_heights(chords: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..chords.len()).collect();
    order.sort_by_key(|&i| (chords[i].1 - chords[i].0, i));
    let mut heights = vec![0; chords.len()];
    for (rank, &i) in order.iter().enumerate() {
        heights[i] = rank;
    }
    heights
}
