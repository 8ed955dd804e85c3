//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use ribbontutte::links::{Crossing, CrossingKind, LinkArc, VirtualLinkDiagram};
use ribbontutte::poly::{Polynomial, EXP_SCALE};

/// Dense integer polynomial in two variables: (i, j) -> coefficient of x^i y^j.
pub type Poly2 = BTreeMap<(i64, i64), i64>;

fn add_into(acc: &mut Poly2, p: &Poly2, shift: (i64, i64)) {
    for (&(i, j), &c) in p {
        *acc.entry((i + shift.0, j + shift.1)).or_insert(0) += c;
    }
    acc.retain(|_, c| *c != 0);
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn connected_without(n: usize, edges: &[(usize, usize)], skip: usize, a: usize, b: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if i != skip {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
    }
    find(&mut parent, a) == find(&mut parent, b)
}

/// Tutte polynomial T(x, y) by deletion and contraction.
pub fn tutte(n: usize, edges: &[(usize, usize)]) -> Poly2 {
    let Some(&(u, v)) = edges.last() else {
        return Poly2::from([((0, 0), 1)]);
    };
    let last = edges.len() - 1;
    let rest = &edges[..last];
    let contracted = || -> Vec<(usize, usize)> {
        let relabel = |w: usize| if w == v { u } else { w };
        rest.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect()
    };
    let mut out = Poly2::new();
    if u == v {
        add_into(&mut out, &tutte(n, rest), (0, 1));
    } else if !connected_without(n, edges, last, u, v) {
        add_into(&mut out, &tutte(n, &contracted()), (1, 0));
    } else {
        add_into(&mut out, &tutte(n, rest), (0, 0));
        add_into(&mut out, &tutte(n, &contracted()), (0, 0));
    }
    out
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Whitney rank polynomial R(X, Y) = T(X + 1, Y + 1).
pub fn rank_polynomial(n: usize, edges: &[(usize, usize)]) -> Poly2 {
    let mut out = Poly2::new();
    for (&(i, j), &c) in &tutte(n, edges) {
        for a in 0..=i {
            for b in 0..=j {
                *out.entry((a, b)).or_insert(0) += c * binomial(i, a) * binomial(j, b);
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Read a polynomial in X and Y only into a `Poly2`.
pub fn to_poly2(p: &Polynomial) -> Poly2 {
    let mut out = Poly2::new();
    for (m, c) in p.terms() {
        let (mut i, mut j) = (0, 0);
        for (v, e) in m.factors() {
            assert_eq!(e % EXP_SCALE, 0, "integral exponents expected");
            match v.name() {
                "X" => i = e / EXP_SCALE,
                "Y" => j = e / EXP_SCALE,
                other => panic!("unexpected variable {other}"),
            }
        }
        let c: i64 = c.try_into().expect("small coefficient");
        out.insert((i, j), c);
    }
    out
}

/// Laurent polynomial in one variable with integer exponents.
pub type Laurent = BTreeMap<i64, i64>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Jones polynomial of a classical PD code by brute-force state sum,
/// as a map from 4 * (exponent of t) to coefficient.
///
/// `X[i, j, k, l]` lists the labels counterclockwise starting from the
/// incoming under-strand. The A-smoothing joins i with j and k with l.
/// Uses `<K> = Σ A^(#A - #B) (-A^2 - A^-2)^(loops - 1)`,
/// `V = (-A^3)^(-w) <K>` and `t = A^-4`.
pub fn jones_from_pd(pd: &[[usize; 4]]) -> Laurent {
    let labels = pd.iter().flatten().copied().max().unwrap_or(0);
    let n = pd.len();
    let d: Laurent = Laurent::from([(2, -1), (-2, -1)]);
    let mut bracket = Laurent::new();
    for state in 0..1u32 << n {
        let mut parent: Vec<usize> = (0..=labels).collect();
        let mut a_count = 0i64;
        for (c, x) in pd.iter().enumerate() {
            let [i, j, k, l] = *x;
            let pairs = if state >> c & 1 == 0 {
                a_count += 1;
                [(i, j), (k, l)]
            } else {
                [(i, l), (j, k)]
            };
            for (p, q) in pairs {
                let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
                parent[rp] = rq;
            }
        }
        let used: std::collections::BTreeSet<usize> = pd.iter().flatten().copied().collect();
        let loops = used
            .iter()
            .map(|&x| find(&mut parent, x))
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let b_count = n as i64 - a_count;
        let mut term = Laurent::from([(a_count - b_count, 1)]);
        for _ in 1..loops {
            term = laurent_mul(&term, &d);
        }
        for (e, c) in term {
            *bracket.entry(e).or_insert(0) += c;
        }
    }
    bracket.retain(|_, c| *c != 0);
    let w = pd_writhe(pd);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    // (-A^3)^(-w) then A = t^(-1/4): A^e becomes t^(-e/4)
    bracket
        .into_iter()
        .map(|(e, c)| (-(e - 3 * w), sign * c))
        .collect()
}

fn over_runs_j_to_l(x: &[usize; 4], labels: usize) -> bool {
    x[3] == x[1] % labels + 1
}

/// Writhe of a PD code: a crossing is positive when its over-strand runs from l to j.
pub fn pd_writhe(pd: &[[usize; 4]]) -> i64 {
    let labels = 2 * pd.len();
    pd.iter()
        .map(|x| if over_runs_j_to_l(x, labels) { -1 } else { 1 })
        .sum()
}

/// The same PD code as a diagram, every arc oriented along the labels.
pub fn diagram_from_pd(pd: &[[usize; 4]]) -> VirtualLinkDiagram {
    let labels = 2 * pd.len();
    let crossings = (0..pd.len())
        .map(|c| Crossing {
            name: format!("x{c}"),
            kind: CrossingKind::Classical { over: 1 },
            end_names: ["i", "j", "k", "l"].map(String::from),
        })
        .collect();
    // end where each label leaves its crossing and where it arrives
    let mut leaves = vec![usize::MAX; labels + 1];
    let mut arrives = vec![usize::MAX; labels + 1];
    for (c, x) in pd.iter().enumerate() {
        let end = |k: usize| 4 * c + k;
        arrives[x[0]] = end(0);
        leaves[x[2]] = end(2);
        if over_runs_j_to_l(x, labels) {
            arrives[x[1]] = end(1);
            leaves[x[3]] = end(3);
        } else {
            arrives[x[3]] = end(3);
            leaves[x[1]] = end(1);
        }
    }
    let arcs = (1..=labels)
        .map(|a| LinkArc {
            name: format!("s{a}"),
            ends: [leaves[a], arrives[a]],
        })
        .collect();
    let orient = (0..labels).map(|a| (a, true)).collect();
    VirtualLinkDiagram::new(crossings, arcs, 0, orient).expect("PD codes of knots are plane")
}

/// Read a polynomial in t into a map from scaled exponent to coefficient.
pub fn to_laurent_t(p: &Polynomial) -> Laurent {
    p.terms()
        .map(|(m, c)| {
            let e = m
                .factors()
                .iter()
                .map(|(v, e)| {
                    assert_eq!(v.name(), "t");
                    *e
                })
                .sum();
            (e, c.try_into().expect("small coefficient"))
        })
        .collect()
}

/// The standard trefoil diagram with all crossings of one sign.
pub const TREFOIL_PD: [[usize; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
