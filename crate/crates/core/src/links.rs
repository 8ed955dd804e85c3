//! Virtual link diagrams, the Kauffman bracket, writhe and the Jones polynomial.
//!
//! A diagram is a 4-valent plane map. End `k` of crossing `c` is `4c + k`,
//! the ends of a crossing in counterclockwise order. Arcs join ends in
//! pairs; strands run straight through a crossing, from end `k` to `k + 2`.
//! A classical crossing records which opposite pair carries the over-strand.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convert::{route, span_heights, Side};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::planemap::PlaneMap;
use crate::poly::{subs, Monomial, Polynomial, Var, EXP_SCALE};
use crate::ribbon::check_cap;

/// Default limit on classical crossings for the state sum.
pub const DEFAULT_CROSSING_CAP: usize = 20;

pub type End = usize;

fn opposite(e: End) -> End {
    e / 4 * 4 + (e % 4 + 2) % 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// The over-strand runs through ends `over` and `over + 2` (`over` is 0 or 1).
    Classical { over: usize },
    Virtual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub name: String,
    pub kind: CrossingKind,
    /// Names of the four ends, counterclockwise.
    pub end_names: [String; 4],
}

impl Crossing {
    pub fn is_classical(&self) -> bool {
        matches!(self.kind, CrossingKind::Classical { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkArc {
    pub name: String,
    pub ends: [End; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    A,
    B,
}

/// One splitting per classical crossing, in crossing order.
pub type State = Vec<Splitting>;

/// Exponents of one state: `A^alpha B^beta d^(delta - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateTerm {
    pub alpha: usize,
    pub beta: usize,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualLinkDiagram {
    crossings: Vec<Crossing>,
    arcs: Vec<LinkArc>,
    partner: Vec<End>,
    arc_of: Vec<usize>,
    free_loops: usize,
    /// Representative arcs with a direction: true runs from `ends[0]` to `ends[1]`.
    orient: Vec<(usize, bool)>,
    map: PlaneMap,
}

impl VirtualLinkDiagram {
    /// Validate and assemble a diagram. Every end must lie on exactly one
    /// arc and the resulting 4-valent map must be plane.
    pub fn new(
        crossings: Vec<Crossing>,
        arcs: Vec<LinkArc>,
        free_loops: usize,
        orient: Vec<(usize, bool)>,
    ) -> Result<VirtualLinkDiagram> {
        let ends = 4 * crossings.len();
        let mut partner = vec![usize::MAX; ends];
        let mut arc_of = vec![usize::MAX; ends];
        for (a, arc) in arcs.iter().enumerate() {
            for (i, &e) in arc.ends.iter().enumerate() {
                if e >= ends {
                    return Err(Error::MalformedDiagram(format!(
                        "arc `{}` uses a missing crossing end",
                        arc.name
                    )));
                }
                if arc_of[e] != usize::MAX {
                    return Err(Error::MalformedDiagram(format!(
                        "end {}.{} lies on two arcs",
                        crossings[e / 4].name,
                        crossings[e / 4].end_names[e % 4]
                    )));
                }
                arc_of[e] = a;
                partner[e] = arc.ends[1 - i];
            }
        }
        if let Some(e) = arc_of.iter().position(|&a| a == usize::MAX) {
            return Err(Error::MalformedDiagram(format!(
                "crossing `{}` has degree below 4 (end `{}` is free)",
                crossings[e / 4].name,
                crossings[e / 4].end_names[e % 4]
            )));
        }
        for &(a, _) in &orient {
            if a >= arcs.len() {
                return Err(Error::MalformedDiagram("orientation of a missing arc".into()));
            }
        }
        // Arc a is the edge with darts 2a at ends[0] and 2a + 1 at ends[1].
        let dart_at = |e: End| 2 * arc_of[e] + usize::from(arcs[arc_of[e]].ends[0] != e);
        let cycles = (0..crossings.len())
            .map(|c| (0..4).map(|k| dart_at(4 * c + k)).collect())
            .collect();
        let map = PlaneMap::from_cycles(cycles, arcs.len())?;
        let diagram = VirtualLinkDiagram {
            crossings,
            arcs,
            partner,
            arc_of,
            free_loops,
            orient,
            map,
        };
        diagram.orientation_signs()?;
        Ok(diagram)
    }

    /// A diagram with no crossings and `n` embedded circles.
    pub fn unlink(n: usize) -> VirtualLinkDiagram {
        VirtualLinkDiagram::new(Vec::new(), Vec::new(), n, Vec::new())
            .expect("circles are a valid diagram")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[LinkArc] {
        &self.arcs
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn orientations(&self) -> &[(usize, bool)] {
        &self.orient
    }

    /// The underlying 4-valent plane map; arc `a` is edge `a`.
    pub fn map(&self) -> &PlaneMap {
        &self.map
    }

    /// The end joined to `e` by an arc.
    pub fn partner(&self, e: End) -> End {
        self.partner[e]
    }

    pub fn arc_of(&self, e: End) -> usize {
        self.arc_of[e]
    }

    pub fn classical_crossings(&self) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&c| self.crossings[c].is_classical())
            .collect()
    }

    pub fn classical_count(&self) -> usize {
        self.classical_crossings().len()
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.len() - self.classical_count()
    }

    /// Strand components through crossings, each as the list of ends it
    /// leaves from, in traversal order. Free loops are not included.
    pub fn components(&self) -> Vec<Vec<End>> {
        let mut seen = vec![false; self.partner.len()];
        let mut out = Vec::new();
        for start in 0..self.partner.len() {
            if seen[start] || seen[self.partner[start]] {
                continue;
            }
            let mut walk = Vec::new();
            let mut e = start;
            loop {
                seen[e] = true;
                seen[self.partner[e]] = true;
                walk.push(e);
                e = opposite(self.partner[e]);
                if e == start {
                    break;
                }
            }
            out.push(walk);
        }
        out
    }

    /// For every end, whether the oriented strand leaves the crossing there.
    fn orientation_signs(&self) -> Result<Vec<Option<bool>>> {
        let mut leaves = vec![None; self.partner.len()];
        for (index, walk) in self.components().iter().enumerate() {
            let mut direction = None;
            for &(a, forward) in &self.orient {
                let arc = &self.arcs[a];
                let Some(pos) = walk.iter().position(|&e| self.arc_of[e] == a) else {
                    continue;
                };
                // the walk leaves along `a` at walk[pos]
                let along = (arc.ends[0] == walk[pos]) == forward;
                if direction.is_some_and(|d| d != along) {
                    return Err(Error::MalformedDiagram(format!(
                        "conflicting orientations on component {index}"
                    )));
                }
                direction = Some(along);
            }
            if let Some(along) = direction {
                for &e in walk {
                    leaves[e] = Some(along);
                    leaves[self.partner[e]] = Some(!along);
                }
            }
        }
        Ok(leaves)
    }

    /// Sign of every classical crossing, in crossing order.
    pub fn crossing_signs(&self) -> Result<Vec<i64>> {
        let leaves = self.orientation_signs()?;
        let components = self.components();
        let missing = |e: End| {
            let component = components.iter().position(|w| w.iter().any(|&x| x == e || self.partner[x] == e));
            Error::MissingOrientation {
                component: component.unwrap_or(0),
            }
        };
        let mut signs = Vec::new();
        for (c, crossing) in self.crossings.iter().enumerate() {
            let CrossingKind::Classical { over } = crossing.kind else {
                continue;
            };
            let out_end = |k: usize| -> Result<usize> {
                let e = 4 * c + k;
                match leaves[e] {
                    Some(true) => Ok(k),
                    Some(false) => Ok((k + 2) % 4),
                    None => Err(missing(e)),
                }
            };
            let over_out = out_end(over)?;
            let under_out = out_end(over + 1)?;
            signs.push(if under_out == (over_out + 1) % 4 { 1 } else { -1 });
        }
        Ok(signs)
    }

    /// Sum of the classical crossing signs.
    pub fn writhe(&self) -> Result<i64> {
        Ok(self.crossing_signs()?.iter().sum())
    }

    /// δ(s): closed curves after splitting every classical crossing by `s`
    /// and passing straight through virtual crossings.
    pub fn split(&self, state: &[Splitting]) -> usize {
        let mut dsu = Dsu::new(self.partner.len());
        for (e, &p) in self.partner.iter().enumerate() {
            dsu.union(e, p);
        }
        let mut next_state = state.iter();
        for (c, crossing) in self.crossings.iter().enumerate() {
            let at = |k: usize| 4 * c + k % 4;
            let pairs = match crossing.kind {
                CrossingKind::Virtual => [(0, 2), (1, 3)],
                CrossingKind::Classical { over: o } => {
                    match next_state.next().expect("one splitting per classical crossing") {
                        Splitting::A => [(o + 1, o + 2), (o + 3, o)],
                        Splitting::B => [(o, o + 1), (o + 2, o + 3)],
                    }
                }
            };
            for (i, j) in pairs {
                dsu.union(at(i), at(j));
            }
        }
        dsu.sets() + self.free_loops
    }

    /// The state sum term by term; there is one entry per state.
    pub fn state_terms(&self, cap: usize) -> Result<Vec<StateTerm>> {
        let n = self.classical_count();
        check_cap("diagram", n, cap)?;
        Ok((0..1u64 << n)
            .into_par_iter()
            .map(|bits| {
                let state: State = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { Splitting::B } else { Splitting::A })
                    .collect();
                let beta = bits.count_ones() as usize;
                StateTerm {
                    alpha: n - beta,
                    beta,
                    delta: self.split(&state),
                }
            })
            .collect())
    }

    /// `[L] = Σ_s A^α(s) B^β(s) d^(δ(s)-1)` with the default cap.
    pub fn kauffman_bracket(&self) -> Result<Polynomial> {
        self.kauffman_bracket_capped(DEFAULT_CROSSING_CAP)
    }

    pub fn kauffman_bracket_capped(&self, cap: usize) -> Result<Polynomial> {
        let (a, b, d) = (Var::new("A"), Var::new("B"), Var::new("d"));
        Ok(self
            .state_terms(cap)?
            .into_iter()
            .map(|t| {
                Polynomial::monomial(Monomial::from_factors([
                    (a.clone(), t.alpha as i64 * EXP_SCALE),
                    (b.clone(), t.beta as i64 * EXP_SCALE),
                    (d.clone(), (t.delta as i64 - 1) * EXP_SCALE),
                ]))
            })
            .sum())
    }

    /// `(-1)^w t^(3w/4) [L](A = t^(-1/4), B = t^(1/4), d = -t^(1/2) - t^(-1/2))`.
    pub fn jones(&self) -> Result<Polynomial> {
        self.jones_capped(DEFAULT_CROSSING_CAP)
    }

    pub fn jones_capped(&self, cap: usize) -> Result<Polynomial> {
        let w = self.writhe()?;
        let bracket = self.kauffman_bracket_capped(cap)?;
        jones_from_bracket(&bracket, w)
    }

    /// Swap over- and under-strand at every classical crossing.
    pub fn mirror(&self) -> VirtualLinkDiagram {
        let mut out = self.clone();
        for c in &mut out.crossings {
            if let CrossingKind::Classical { over } = c.kind {
                c.kind = CrossingKind::Classical { over: 1 - over };
            }
        }
        out
    }

    /// Reverse every component.
    pub fn reversed(&self) -> VirtualLinkDiagram {
        let mut out = self.clone();
        for o in &mut out.orient {
            o.1 = !o.1;
        }
        out
    }

    /// Side-by-side union; names of `other` get a suffix where they clash.
    pub fn disjoint_union(&self, other: &VirtualLinkDiagram) -> VirtualLinkDiagram {
        let shift = 4 * self.crossings.len();
        let arc_shift = self.arcs.len();
        let mut crossings = self.crossings.clone();
        for c in &other.crossings {
            let mut c = c.clone();
            while crossings.iter().any(|x| x.name == c.name) {
                c.name.push_str("_1");
            }
            crossings.push(c);
        }
        let mut arcs = self.arcs.clone();
        for a in &other.arcs {
            let mut name = a.name.clone();
            while arcs.iter().any(|x| x.name == name) {
                name.push_str("_1");
            }
            arcs.push(LinkArc {
                name,
                ends: [a.ends[0] + shift, a.ends[1] + shift],
            });
        }
        let mut orient = self.orient.clone();
        orient.extend(other.orient.iter().map(|&(a, f)| (a + arc_shift, f)));
        VirtualLinkDiagram::new(crossings, arcs, self.free_loops + other.free_loops, orient)
            .expect("a union of diagrams is a diagram")
    }
}

/// The Jones substitution applied to a bracket of a diagram with writhe `w`.
pub fn jones_from_bracket(bracket: &Polynomial, w: i64) -> Result<Polynomial> {
    let t = |num, den| Polynomial::var_pow("t", num, den);
    let map = subs(&[("A", t(-1, 4)), ("B", t(1, 4)), ("d", -t(1, 2) - t(-1, 2))]);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(bracket
        .substitute_all(&map)?
        .shift(&Var::new("t"), 3 * w * EXP_SCALE / 4)
        * Polynomial::constant(sign))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Occurrence {
    label: String,
    over: bool,
    positive: bool,
}

fn parse_gauss_word(word: &str) -> Result<Vec<Occurrence>> {
    let mut out = Vec::new();
    let mut chars = word.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        let over = match c {
            'O' | 'o' => true,
            'U' | 'u' => false,
            _ => return Err(Error::MalformedCode(format!("expected O or U, found `{c}`"))),
        };
        let mut label = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                label.push(c);
                chars.next();
            } else {
                break;
            }
        }
        if label.is_empty() {
            return Err(Error::MalformedCode("missing crossing label".into()));
        }
        let positive = match chars.next() {
            Some('+') => true,
            Some('-') => false,
            other => {
                return Err(Error::MalformedCode(format!(
                    "crossing `{label}` needs a sign, found {}",
                    other.map_or("end of word".to_string(), |c| format!("`{c}`"))
                )))
            }
        };
        out.push(Occurrence {
            label,
            over,
            positive,
        });
    }
    Ok(out)
}

fn label_key(label: &str) -> (u8, u64, String) {
    match label.parse::<u64>() {
        Ok(n) => (0, n, String::new()),
        Err(_) => (1, 0, label.to_string()),
    }
}

/// Realize a Gauss code (`O1+U2-...`, components separated by `|`) with
/// the canonical layout.
pub fn realize_gauss_code(code: &str) -> Result<VirtualLinkDiagram> {
    realize_gauss_code_with(code, None)
}

/// Realize a Gauss code. Classical crossings sit on a baseline (in label
/// order unless a seed shuffles them), arcs are routed above it as staples
/// and every arc intersection becomes a virtual crossing. Every component
/// is oriented along the code.
pub fn realize_gauss_code_with(code: &str, seed: Option<u64>) -> Result<VirtualLinkDiagram> {
    let words: Vec<Vec<Occurrence>> = code
        .split('|')
        .map(parse_gauss_word)
        .collect::<Result<_>>()?;
    let mut labels: Vec<String> = words.iter().flatten().map(|o| o.label.clone()).collect();
    labels.sort_by_key(|l| label_key(l));
    labels.dedup();
    // (over occurrence, under occurrence) as (word, index)
    let mut occ: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; labels.len()];
    for (w, word) in words.iter().enumerate() {
        for (i, o) in word.iter().enumerate() {
            let c = labels.binary_search_by_key(&label_key(&o.label), |l| label_key(l)).unwrap();
            let slot = &mut occ[c][usize::from(!o.over)];
            if slot.is_some() {
                return Err(Error::MalformedCode(format!(
                    "crossing `{}` has two {} passes",
                    o.label,
                    if o.over { "over" } else { "under" }
                )));
            }
            *slot = Some((w, i));
        }
    }
    let mut positive = Vec::with_capacity(labels.len());
    for (c, pair) in occ.iter().enumerate() {
        let (Some(o), Some(u)) = (pair[0], pair[1]) else {
            return Err(Error::MalformedCode(format!(
                "crossing `{}` must appear once over and once under",
                labels[c]
            )));
        };
        let (so, su) = (words[o.0][o.1].positive, words[u.0][u.1].positive);
        if so != su {
            return Err(Error::MalformedCode(format!(
                "crossing `{}` has inconsistent signs",
                labels[c]
            )));
        }
        positive.push(so);
    }

    // Rotation at a crossing, over-strand through ends 0 and 2:
    // positive [out_o, out_u, in_o, in_u], negative [out_o, in_u, in_o, out_u].
    let out_end = |c: usize, over: bool| -> End {
        4 * c + if over { 0 } else if positive[c] { 1 } else { 3 }
    };
    let in_end = |c: usize, over: bool| -> End {
        4 * c + if over { 2 } else if positive[c] { 3 } else { 1 }
    };
    let index_of = |o: &Occurrence| {
        labels
            .binary_search_by_key(&label_key(&o.label), |l| label_key(l))
            .unwrap()
    };

    // Directed strand pieces from an out-end to the next in-end.
    let mut pieces: Vec<(End, End)> = Vec::new();
    let mut free_loops = 0;
    let mut first_piece = Vec::new();
    for word in &words {
        if word.is_empty() {
            free_loops += 1;
            continue;
        }
        first_piece.push(pieces.len());
        for i in 0..word.len() {
            let (a, b) = (&word[i], &word[(i + 1) % word.len()]);
            pieces.push((out_end(index_of(a), a.over), in_end(index_of(b), b.over)));
        }
    }

    let n = labels.len();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(rng) = rng.as_mut() {
        order.shuffle(rng);
    }
    let mut pos = vec![0usize; 4 * n];
    for (slot, &c) in order.iter().enumerate() {
        let cut = rng.as_mut().map_or(0, |r| r.gen_range(0..4));
        for j in 0..4 {
            pos[4 * c + (cut + j) % 4] = 4 * slot + (3 - j);
        }
    }
    let chords: Vec<(usize, usize)> = pieces
        .iter()
        .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
        .collect();
    let heights = match rng.as_mut() {
        Some(rng) => {
            let mut h: Vec<usize> = (0..chords.len()).collect();
            h.shuffle(rng);
            h
        }
        None => span_heights(&chords),
    };
    let routing = route(&chords, &heights);

    let mut crossings: Vec<Crossing> = labels
        .iter()
        .enumerate()
        .map(|(c, l)| Crossing {
            name: format!("c{l}"),
            kind: CrossingKind::Classical { over: 0 },
            end_names: if positive[c] {
                ["oo", "uo", "oi", "ui"]
            } else {
                ["oo", "ui", "oi", "uo"]
            }
            .map(String::from),
        })
        .collect();
    for v in 0..routing.crossings.len() {
        crossings.push(Crossing {
            name: format!("v{v}"),
            kind: CrossingKind::Virtual,
            end_names: ["e", "n", "w", "s"].map(String::from),
        });
    }
    // ends of each piece at each virtual crossing: (before, after)
    let virtual_end = |v: usize, chord: usize, side: Side| -> End {
        let k = routing.crossings[v]
            .ends
            .iter()
            .position(|&(ch, s)| ch == chord && s == side)
            .expect("both strands pass through their crossing");
        4 * (n + v) + k
    };
    let mut arcs = Vec::new();
    let mut orient = Vec::new();
    for (p, &(from, to)) in pieces.iter().enumerate() {
        let forward = pos[from] < pos[to];
        // walk from the chord's start p to its end q
        let mut stops = vec![if forward { from } else { to }];
        for &v in &routing.along[p] {
            stops.push(virtual_end(v, p, Side::Before));
            stops.push(virtual_end(v, p, Side::After));
        }
        stops.push(if forward { to } else { from });
        let mut segments: Vec<[End; 2]> = stops
            .chunks(2)
            .map(|s| if forward { [s[0], s[1]] } else { [s[1], s[0]] })
            .collect();
        if !forward {
            segments.reverse();
        }
        for (i, ends) in segments.into_iter().enumerate() {
            if first_piece.contains(&p) && i == 0 {
                orient.push((arcs.len(), true));
            }
            arcs.push(LinkArc {
                name: format!("a{}", arcs.len()),
                ends,
            });
        }
    }
    VirtualLinkDiagram::new(crossings, arcs, free_loops, orient)
}
