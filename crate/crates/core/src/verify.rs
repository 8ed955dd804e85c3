//! Exact checks of the polynomial identities, and seeded random instances.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convert::{
    link_to_tait, plane_to_ribbon, ribbon_to_plane_with, ConversionCertificate, RouterOptions,
};
use crate::error::Result;
use crate::links::{realize_gauss_code, VirtualLinkDiagram};
use crate::planemap::{PlaneMap, RelEdge, RelPlaneGraph};
use crate::poly::{subs, Polynomial, Var, EXP_SCALE};
use crate::ribbon::{RibbonEdge, RibbonGraph, Sign};
use crate::rotation::{twin, Dart, FaceWalk, Rotation};

/// Outcome of one check on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub instance: String,
    pub seed: Option<u64>,
    pub size: Option<usize>,
    pub pass: bool,
    /// Both sides in canonical form, kept only on failure.
    pub left: Option<String>,
    pub right: Option<String>,
}

impl CheckReport {
    fn compare(name: &str, instance: String, left: &Polynomial, right: &Polynomial) -> CheckReport {
        let pass = left == right;
        CheckReport {
            name: name.to_string(),
            instance,
            seed: None,
            size: None,
            pass,
            left: (!pass).then(|| left.canonical_string()),
            right: (!pass).then(|| right.canonical_string()),
        }
    }

    fn with_origin(mut self, seed: u64, size: usize) -> CheckReport {
        self.seed = Some(seed);
        self.size = Some(size);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name)?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        if let Some(size) = self.size {
            write!(f, " size={size}")?;
        }
        if self.seed.is_none() {
            write!(f, " {}", self.instance)?;
        }
        if let (Some(l), Some(r)) = (&self.left, &self.right) {
            write!(f, "\n  left:  {l}\n  right: {r}")?;
        }
        Ok(())
    }
}

fn half_powers() -> std::collections::BTreeMap<Var, Polynomial> {
    let xy = |a, b| {
        Polynomial::var_pow("X", a, 2) * Polynomial::var_pow("Y", b, 2)
    };
    subs(&[("w", xy(1, -1)), ("d", xy(1, 1))])
}

fn swap_xy(p: &Polynomial) -> Result<Polynomial> {
    p.substitute_all(&subs(&[("X", Polynomial::var("Y")), ("Y", Polynomial::var("X"))]))
}

fn describe_ribbon(r: &RibbonGraph) -> String {
    format!("ribbon v={} e={}", r.vertex_count(), r.edge_count())
}

/// `X^α Y^β T_{G,H}(w = √(X/Y), d = √(XY)) = B_R(Z = 1/√(XY))` for the
/// canonical drawing of `r`.
pub fn check_main_theorem(r: &RibbonGraph) -> Result<CheckReport> {
    check_main_theorem_with(r, &RouterOptions::default())
}

/// The same identity for the drawing selected by `opts`.
pub fn check_main_theorem_with(r: &RibbonGraph, opts: &RouterOptions) -> Result<CheckReport> {
    let (g, _) = ribbon_to_plane_with(r, opts);
    let k_r = r.components(&vec![true; r.edge_count()]) as i64;
    let beta = -(r.vertex_count() as i64 - g.vertex_count() as i64) * EXP_SCALE / 2;
    let alpha = (g.components() as i64 - k_r) * EXP_SCALE - beta;
    let left = g
        .relative_tutte()?
        .substitute_all(&half_powers())?
        .shift(&Var::new("X"), alpha)
        .shift(&Var::new("Y"), beta);
    let z = Polynomial::var_pow("X", -1, 2) * Polynomial::var_pow("Y", -1, 2);
    let right = r.bollobas_riordan()?.substitute(&Var::new("Z"), &z)?;
    Ok(CheckReport::compare("main", describe_ribbon(r), &left, &right))
}

/// The four per-subset identities between `g` and `r` under `cert`, for
/// every subset of regular edges of `g`.
pub fn check_subset_identities(
    r: &RibbonGraph,
    g: &RelPlaneGraph,
    cert: &ConversionCertificate,
) -> CheckReport {
    let m = g.regular_edges().len();
    let mut failure = None;
    for bits in 0..1u64 << m {
        let f = g.regular_mask(bits);
        let f_r = cert.to_ribbon_mask(&f, r.edge_count());
        let h_f = g.contract_all(&f);
        let size_g = f.iter().filter(|&&b| b).count();
        let size_r = f_r.iter().filter(|&&b| b).count();
        let checks = [
            ("|E(F)| = |E(F')|", size_g, size_r),
            (
                "k(H_F) = k(F u H)",
                h_f.map.components(),
                g.components_with_zero(&f),
            ),
            (
                "bc(F') = n(F) + delta(H_F)",
                r.boundary_components(&f_r),
                g.nullity(&f) + h_f.map.medial_circles(),
            ),
            ("v(H_F) = k(F)", h_f.map.vertex_count(), g.components_of(&f)),
        ];
        if let Some((what, a, b)) = checks.into_iter().find(|(_, a, b)| a != b) {
            failure = Some(format!("subset {bits:#b}: {what} fails ({a} vs {b})"));
            break;
        }
    }
    CheckReport {
        name: "identities".into(),
        instance: describe_ribbon(r),
        seed: None,
        size: None,
        pass: failure.is_none(),
        left: failure.clone(),
        right: failure.map(|_| String::new()),
    }
}

/// `X^a(G,H) Y^b(G) T_{G,H}(X,Y) = Y^a(G*,H*) X^b(G*) T_{G*,H*}(Y,X)`, both
/// sides after `w = √(X/Y)`, `d = √(XY)`.
pub fn check_duality(g: &RelPlaneGraph) -> Result<CheckReport> {
    let (x, y) = (Var::new("X"), Var::new("Y"));
    let dual = g.dual();
    let left = g
        .relative_tutte()?
        .substitute_all(&half_powers())?
        .shift(&x, g.duality_a_scaled())
        .shift(&y, g.duality_b_scaled());
    let right = swap_xy(&dual.relative_tutte()?.substitute_all(&half_powers())?)?
        .shift(&y, dual.duality_a_scaled())
        .shift(&x, dual.duality_b_scaled());
    Ok(CheckReport::compare(
        "duality",
        format!("rpg v={} e={}", g.vertex_count(), g.edge_count()),
        &left,
        &right,
    ))
}

/// `T` of the double dual equals `T`.
pub fn check_double_dual(g: &RelPlaneGraph) -> Result<CheckReport> {
    let left = g.relative_tutte()?;
    let right = g.dual().dual().relative_tutte()?;
    Ok(CheckReport::compare(
        "double-dual",
        format!("rpg v={} e={}", g.vertex_count(), g.edge_count()),
        &left,
        &right,
    ))
}

/// The relative Tutte polynomial of the Tait graph under the bracket
/// substitution, with its prefactor.
pub fn bracket_from_tait(g: &RelPlaneGraph) -> Result<Polynomial> {
    let (a, b, d) = (Polynomial::var("A"), Polynomial::var("B"), Polynomial::var("d"));
    let inv = |name: &str| Polynomial::var_pow(name, -1, 1);
    let map = subs(&[
        ("X", &(&b * &d) * &inv("A")),
        ("Y", &(&a * &d) * &inv("B")),
        ("w", &b * &inv("A")),
        ("x_neg", &b * &inv("A")),
        ("y_neg", &a * &inv("B")),
    ]);
    let v = g.vertex_count() as i64;
    let k = g.components() as i64;
    let m = g.regular_edges().len() as i64;
    Ok(g.relative_tutte()?
        .substitute_all(&map)?
        .shift(&Var::new("A"), (v - k) * EXP_SCALE)
        .shift(&Var::new("B"), (m - v + k) * EXP_SCALE)
        .shift(&Var::new("d"), (k - 1) * EXP_SCALE))
}

/// `[L]` against the specialized relative Tutte polynomial of its Tait graph.
pub fn check_bracket(l: &VirtualLinkDiagram) -> Result<CheckReport> {
    let left = l.kauffman_bracket()?;
    let right = bracket_from_tait(&link_to_tait(l))?;
    Ok(CheckReport::compare(
        "bracket",
        format!("link classical={} virtual={}", l.classical_count(), l.virtual_count()),
        &left,
        &right,
    ))
}

/// `B` of the ribbon graph recovered from the drawing of `r` equals `B_R`.
pub fn check_round_trip(r: &RibbonGraph, opts: &RouterOptions) -> Result<CheckReport> {
    let (g, _) = ribbon_to_plane_with(r, opts);
    let back = plane_to_ribbon(&g);
    Ok(CheckReport::compare(
        "round-trip",
        describe_ribbon(r),
        &r.bollobas_riordan()?,
        &back.bollobas_riordan()?,
    ))
}

/// Medial circles of a plane map against the boundary components of the
/// all-twisted ribbon graph on the same rotation system.
pub fn check_medial(map: &PlaneMap) -> CheckReport {
    let edges = (0..map.edge_count())
        .map(|e| RibbonEdge::new(format!("e{e}"), Sign::Minus))
        .collect();
    let twisted = RibbonGraph::from_rotation(map.rotation().clone(), edges)
        .expect("one record per edge");
    let bc = twisted.boundary_components(&vec![true; map.edge_count()]);
    let delta = map.medial_circles();
    let pass = bc == delta;
    CheckReport {
        name: "medial".into(),
        instance: format!("map v={} e={}", map.vertex_count(), map.edge_count()),
        seed: None,
        size: None,
        pass,
        left: (!pass).then(|| delta.to_string()),
        right: (!pass).then(|| bc.to_string()),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random ribbon graph with `size` edges: random rotation system on a
/// random number of vertices (some possibly isolated) and random twists.
pub fn random_ribbon(seed: u64, size: usize) -> RibbonGraph {
    let mut rng = rng(seed);
    let vertices = rng.gen_range(1..=size.max(1));
    let mut darts: Vec<Dart> = (0..2 * size).collect();
    darts.shuffle(&mut rng);
    let mut cycles = vec![Vec::new(); vertices];
    for (i, d) in darts.into_iter().enumerate() {
        // every vertex gets a dart first when there are enough
        let v = if i < vertices { i } else { rng.gen_range(0..vertices) };
        cycles[v].push(d);
    }
    for cycle in &mut cycles {
        cycle.shuffle(&mut rng);
    }
    let edges = (0..size)
        .map(|e| {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            RibbonEdge::new(format!("e{e}"), sign)
        })
        .collect();
    RibbonGraph::new(cycles, edges).expect("every dart placed once")
}

/// Random plane map with `size` edges, grown from one vertex by adding
/// pendant edges, edges across a face, and new isolated vertices.
pub fn random_plane_map(seed: u64, size: usize) -> PlaneMap {
    let mut rng = rng(seed);
    let mut cycles: Vec<Vec<Dart>> = vec![Vec::new()];
    for e in 0..size {
        let rotation = Rotation::new(cycles.clone(), e).expect("grown maps are valid");
        if rng.gen_bool(0.1) {
            cycles.push(Vec::new());
        }
        // A corner is (vertex, insertion index); pick a face, then corners in it.
        let faces = rotation.faces();
        let corners_of = |face: &FaceWalk| -> Vec<(usize, usize)> {
            match face {
                FaceWalk::Isolated(v) => vec![(*v, 0)],
                FaceWalk::Darts(walk) => walk
                    .iter()
                    .map(|&x| {
                        let d = twin(x);
                        let v = rotation.vertex_of(d);
                        let i = cycles[v].iter().position(|&y| y == d).unwrap();
                        (v, i + 1)
                    })
                    .collect(),
            }
        };
        let face = &faces[rng.gen_range(0..faces.len())];
        let corners = corners_of(face);
        let (u, i) = corners[rng.gen_range(0..corners.len())];
        if rng.gen_bool(0.4) {
            cycles[u].insert(i, 2 * e);
            cycles.push(vec![2 * e + 1]);
        } else {
            let (v, j) = corners[rng.gen_range(0..corners.len())];
            if (u, i) == (v, j) {
                cycles[u].splice(i..i, [2 * e, 2 * e + 1]);
            } else if u == v {
                // insert the later position first so the earlier index stays valid
                let (first, second) = if i < j { ((i, 2 * e), (j, 2 * e + 1)) } else { ((j, 2 * e + 1), (i, 2 * e)) };
                cycles[u].insert(second.0, second.1);
                cycles[u].insert(first.0, first.1);
            } else {
                cycles[u].insert(i, 2 * e);
                cycles[v].insert(j, 2 * e + 1);
            }
        }
    }
    PlaneMap::from_cycles(cycles, size).expect("planar insertions keep the map plane")
}

/// Random relative plane graph with `size` edges, each a 0-edge with
/// probability one third; regular edges carry symbolic weights.
pub fn random_rpg(seed: u64, size: usize) -> RelPlaneGraph {
    let map = random_plane_map(seed, size);
    let mut rng = rng(seed ^ 0x5eed);
    let edges = (0..size)
        .map(|e| {
            if rng.gen_bool(1.0 / 3.0) {
                RelEdge::zero(format!("h{e}"))
            } else {
                RelEdge::regular(format!("e{e}"))
            }
        })
        .collect();
    RelPlaneGraph::new(map, edges).expect("one record per edge")
}

/// Random Gauss code with `size` classical crossings on one or two components.
pub fn random_gauss_code(seed: u64, size: usize) -> String {
    let mut rng = rng(seed);
    let mut occurrences: Vec<(usize, bool)> =
        (1..=size).flat_map(|c| [(c, true), (c, false)]).collect();
    occurrences.shuffle(&mut rng);
    let signs: Vec<bool> = (0..=size).map(|_| rng.gen_bool(0.5)).collect();
    let word = |occ: &[(usize, bool)]| -> String {
        occ.iter()
            .map(|&(c, over)| {
                format!("{}{c}{}", if over { 'O' } else { 'U' }, if signs[c] { '+' } else { '-' })
            })
            .collect()
    };
    let cut = if occurrences.len() >= 2 && rng.gen_bool(0.3) {
        rng.gen_range(1..occurrences.len())
    } else {
        occurrences.len()
    };
    let mut words = vec![word(&occurrences[..cut])];
    if cut < occurrences.len() {
        words.push(word(&occurrences[cut..]));
    }
    if rng.gen_bool(0.1) {
        words.push(String::new());
    }
    words.join(" | ")
}

/// Realized random Gauss code.
pub fn random_link(seed: u64, size: usize) -> VirtualLinkDiagram {
    realize_gauss_code(&random_gauss_code(seed, size)).expect("generated codes are well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instance {
    Ribbon,
    Rpg,
    Link,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Main,
    Identities,
    Duality,
    Bracket,
    RoundTrip,
    Medial,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Main => "main",
            Check::Identities => "identities",
            Check::Duality => "duality",
            Check::Bracket => "bracket",
            Check::RoundTrip => "round-trip",
            Check::Medial => "medial",
        }
    }

    /// Run this check on the instance generated from `(seed, size)`.
    pub fn run(self, seed: u64, size: usize) -> Result<CheckReport> {
        let report = match self {
            Check::Main => check_main_theorem(&random_ribbon(seed, size))?,
            Check::Identities => {
                let r = random_ribbon(seed, size);
                let (g, cert) = ribbon_to_plane_with(&r, &RouterOptions::default());
                check_subset_identities(&r, &g, &cert)
            }
            Check::Duality => {
                let g = random_rpg(seed, size);
                let dual = check_duality(&g)?;
                let double = check_double_dual(&g)?;
                if dual.pass { double } else { dual }
            }
            Check::Bracket => check_bracket(&random_link(seed, size))?,
            Check::RoundTrip => check_round_trip(&random_ribbon(seed, size), &RouterOptions::default())?,
            Check::Medial => check_medial(&random_plane_map(seed, size)),
        };
        Ok(CheckReport {
            name: self.name().to_string(),
            ..report
        }
        .with_origin(seed, size))
    }
}

/// Instance `i` uses seed `seed + i` and size `1 + i % max_size`.
pub fn run_suite(check: Check, count: usize, seed: u64, max_size: usize) -> Result<Vec<CheckReport>> {
    (0..count)
        .into_par_iter()
        .map(|i| check.run(seed.wrapping_add(i as u64), 1 + i % max_size.max(1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_ribbon(sign: Sign) -> RibbonGraph {
        RibbonGraph::new(vec![vec![0, 1]], vec![RibbonEdge::new("e", sign)]).unwrap()
    }

    #[test]
    fn main_theorem_on_loops() {
        for sign in [Sign::Plus, Sign::Minus] {
            let report = check_main_theorem(&loop_ribbon(sign)).unwrap();
            assert!(report.pass, "{report}");
        }
    }

    #[test]
    fn duality_on_a_loop() {
        let g = RelPlaneGraph::from_cycles(vec![vec![0, 1]], vec![RelEdge::regular("e")]).unwrap();
        assert!(check_duality(&g).unwrap().pass);
        assert_eq!(g.dual().vertex_count(), 2);
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_ribbon(1, 4), random_ribbon(1, 4));
        assert_eq!(random_rpg(3, 6), random_rpg(3, 6));
        assert_eq!(random_gauss_code(5, 4), random_gauss_code(5, 4));
    }

    #[test]
    fn random_links_are_four_valent() {
        for seed in 0..20 {
            let l = random_link(seed, 1 + seed as usize % 5);
            for cycle in l.map().rotation().cycles() {
                assert_eq!(cycle.len(), 4);
            }
        }
    }

    #[test]
    fn report_line() {
        let r = check_main_theorem(&loop_ribbon(Sign::Plus)).unwrap().with_origin(7, 1);
        assert_eq!(r.to_string(), "PASS main seed=7 size=1");
    }
}
