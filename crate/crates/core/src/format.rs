//! Text formats: `.rg` ribbon graphs, `.rpg` relative plane graphs and
//! `.vld` virtual link diagrams.
//!
//! All three are line based with `#` comments. Vertices list half-edge names
//! in counterclockwise order; an edge names its two half-edges.
//!
//! ```text
//! vertex v: a b
//! edge e: a b sign=+ x=2*t y=1
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::links::{realize_gauss_code, Crossing, CrossingKind, LinkArc, VirtualLinkDiagram};
use crate::planemap::{EdgeKind, RelEdge, RelPlaneGraph};
use crate::poly::{parse as parse_poly, Polynomial};
use crate::ribbon::{RibbonEdge, RibbonGraph, Sign, Weight};
use crate::rotation::{Dart, Rotation};

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    keyword: &'a str,
    name: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, tail) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let (name, rest) = match tail.split_once(':') {
            Some((name, rest)) => (name.trim(), rest.trim()),
            None if keyword == "gauss" || keyword == "loop" => (tail.trim(), ""),
            None => return Err(Error::parse(number, format!("expected `{keyword} <name>: ...`"))),
        };
        if name.is_empty() && keyword != "gauss" && keyword != "loop" {
            return Err(Error::parse(number, format!("`{keyword}` needs a name")));
        }
        out.push(Line {
            number,
            keyword,
            name,
            rest,
        });
    }
    Ok(out)
}

/// Positional tokens and `key=value` attributes. A token without `=` that
/// follows an attribute continues its value, so values may contain spaces.
type Attributes = Vec<(String, String)>;

fn attributes<'a>(line: &Line<'a>) -> Result<(Vec<&'a str>, Attributes)> {
    let mut positional = Vec::new();
    let mut attrs: Attributes = Vec::new();
    for token in line.rest.split_whitespace() {
        match token.split_once('=') {
            Some((k, v)) if !k.is_empty() && k.chars().all(|c| c.is_ascii_alphabetic()) => {
                if attrs.iter().any(|(key, _)| key == k) {
                    return Err(Error::parse(line.number, format!("`{k}` given twice")));
                }
                attrs.push((k.to_string(), v.to_string()));
            }
            _ => match attrs.last_mut() {
                Some((_, v)) => {
                    v.push(' ');
                    v.push_str(token);
                }
                None => positional.push(token),
            },
        }
    }
    Ok((positional, attrs))
}

fn take<'a>(attrs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn check_known(line: &Line<'_>, attrs: &[(String, String)], known: &[&str]) -> Result<()> {
    match attrs.iter().find(|(k, _)| !known.contains(&k.as_str())) {
        Some((k, _)) => Err(Error::parse(line.number, format!("unknown attribute `{k}`"))),
        None => Ok(()),
    }
}

fn sign_of(line: &Line<'_>, text: &str) -> Result<Sign> {
    match text {
        "+" | "+1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        _ => Err(Error::parse(line.number, format!("sign must be + or -, found `{text}`"))),
    }
}

fn weight_of(line: &Line<'_>, attrs: &[(String, String)], label: &str) -> Result<Weight> {
    let mut weight = Weight::symbolic(label);
    let poly = |text: &str| {
        parse_poly(text).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(line.number, message),
            other => other,
        })
    };
    if let Some(x) = take(attrs, "x") {
        weight.x = poly(x)?;
    }
    if let Some(y) = take(attrs, "y") {
        weight.y = poly(y)?;
    }
    Ok(weight)
}

/// Vertex and edge lines shared by `.rg` and `.rpg`, resolved to dart cycles.
struct Skeleton<'a> {
    cycles: Vec<Vec<Dart>>,
    edges: Vec<(Line<'a>, Vec<(String, String)>)>,
}

fn skeleton<'a>(text: &'a str, what: &str) -> Result<Skeleton<'a>> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for line in lines(text)? {
        match line.keyword {
            "vertex" => vertices.push(line),
            "edge" => edges.push(line),
            other => {
                return Err(Error::parse(
                    line.number,
                    format!("unknown directive `{other}` in a {what} file"),
                ))
            }
        }
    }
    let mut dart_of: HashMap<&str, (Dart, usize)> = HashMap::new();
    let mut labels: HashMap<&str, usize> = HashMap::new();
    let mut parsed_edges = Vec::new();
    for (e, line) in edges.into_iter().enumerate() {
        if let Some(prev) = labels.insert(line.name, line.number) {
            return Err(Error::parse(
                line.number,
                format!("edge `{}` already defined on line {prev}", line.name),
            ));
        }
        let (halves, attrs) = attributes(&line)?;
        if halves.len() != 2 {
            return Err(Error::parse(
                line.number,
                format!("edge `{}` needs exactly two half-edges", line.name),
            ));
        }
        for (i, h) in halves.iter().enumerate() {
            if let Some((_, prev)) = dart_of.insert(*h, (2 * e + i, line.number)) {
                return Err(Error::parse(
                    line.number,
                    format!("half-edge `{h}` already used on line {prev}"),
                ));
            }
        }
        parsed_edges.push((line, attrs));
    }
    let mut placed = vec![false; 2 * parsed_edges.len()];
    let mut names: HashMap<&str, usize> = HashMap::new();
    let mut cycles = Vec::new();
    for line in &vertices {
        if let Some(prev) = names.insert(line.name, line.number) {
            return Err(Error::parse(
                line.number,
                format!("vertex `{}` already defined on line {prev}", line.name),
            ));
        }
        let mut cycle = Vec::new();
        for h in line.rest.split_whitespace() {
            let Some(&(d, _)) = dart_of.get(h) else {
                return Err(Error::parse(
                    line.number,
                    format!("half-edge `{h}` belongs to no edge"),
                ));
            };
            if placed[d] {
                return Err(Error::parse(
                    line.number,
                    format!("half-edge `{h}` appears at two vertices"),
                ));
            }
            placed[d] = true;
            cycle.push(d);
        }
        cycles.push(cycle);
    }
    if let Some(d) = placed.iter().position(|&p| !p) {
        let (line, _) = &parsed_edges[d / 2];
        return Err(Error::parse(
            line.number,
            format!("a half-edge of edge `{}` is at no vertex", line.name),
        ));
    }
    Ok(Skeleton {
        cycles,
        edges: parsed_edges,
    })
}

pub fn parse_ribbon(text: &str) -> Result<RibbonGraph> {
    let sk = skeleton(text, "ribbon graph")?;
    let mut edges = Vec::with_capacity(sk.edges.len());
    for (line, attrs) in &sk.edges {
        check_known(line, attrs, &["sign", "x", "y"])?;
        let sign = match take(attrs, "sign") {
            Some(s) => sign_of(line, s)?,
            None => return Err(Error::parse(line.number, "edge needs sign=+ or sign=-")),
        };
        edges.push(RibbonEdge {
            label: line.name.to_string(),
            sign,
            weight: weight_of(line, attrs, line.name)?,
        });
    }
    RibbonGraph::new(sk.cycles, edges)
}

pub fn parse_rpg(text: &str) -> Result<RelPlaneGraph> {
    let sk = skeleton(text, "relative plane graph")?;
    let mut edges = Vec::with_capacity(sk.edges.len());
    for (line, attrs) in &sk.edges {
        check_known(line, attrs, &["kind", "sign", "x", "y"])?;
        let edge = match take(attrs, "kind").unwrap_or("regular") {
            "regular" => RelEdge {
                label: line.name.to_string(),
                kind: EdgeKind::Regular {
                    weight: weight_of(line, attrs, line.name)?,
                    sign: take(attrs, "sign").map(|s| sign_of(line, s)).transpose()?,
                },
            },
            "zero" => {
                if attrs.iter().any(|(k, _)| k != "kind") {
                    return Err(Error::parse(line.number, "0-edges carry no sign or weights"));
                }
                RelEdge::zero(line.name)
            }
            other => {
                return Err(Error::parse(
                    line.number,
                    format!("kind must be regular or zero, found `{other}`"),
                ))
            }
        };
        edges.push(edge);
    }
    let rotation = Rotation::new(sk.cycles, edges.len())?;
    let map = crate::planemap::PlaneMap::new(rotation)?;
    RelPlaneGraph::new(map, edges)
}

fn compact(p: &Polynomial) -> String {
    p.canonical_string().replace(' ', "")
}

fn write_weight(out: &mut String, w: &Weight, label: &str) {
    let default = Weight::symbolic(label);
    if w.x != default.x {
        out.push_str(&format!(" x={}", compact(&w.x)));
    }
    if w.y != default.y {
        out.push_str(&format!(" y={}", compact(&w.y)));
    }
}

fn half_name(labels: &[&str], d: Dart) -> String {
    format!("{}.{}", labels[d / 2], if d.is_multiple_of(2) { 'a' } else { 'b' })
}

fn write_vertices(out: &mut String, rotation: &Rotation, labels: &[&str]) {
    for (v, cycle) in rotation.cycles().iter().enumerate() {
        out.push_str(&format!("vertex v{v}:"));
        for &d in cycle {
            out.push(' ');
            out.push_str(&half_name(labels, d));
        }
        out.push('\n');
    }
}

pub fn serialize_ribbon(r: &RibbonGraph) -> String {
    let labels: Vec<&str> = r.edges().iter().map(|e| e.label.as_str()).collect();
    let mut out = String::new();
    write_vertices(&mut out, r.rotation(), &labels);
    for (e, edge) in r.edges().iter().enumerate() {
        out.push_str(&format!(
            "edge {}: {} {} sign={}",
            edge.label,
            half_name(&labels, 2 * e),
            half_name(&labels, 2 * e + 1),
            edge.sign.symbol()
        ));
        write_weight(&mut out, &edge.weight, &edge.label);
        out.push('\n');
    }
    out
}

pub fn serialize_rpg(g: &RelPlaneGraph) -> String {
    let labels: Vec<&str> = g.edges().iter().map(|e| e.label.as_str()).collect();
    let mut out = String::new();
    write_vertices(&mut out, g.rotation(), &labels);
    for (e, edge) in g.edges().iter().enumerate() {
        out.push_str(&format!(
            "edge {}: {} {}",
            edge.label,
            half_name(&labels, 2 * e),
            half_name(&labels, 2 * e + 1)
        ));
        match &edge.kind {
            EdgeKind::Zero => out.push_str(" kind=zero"),
            EdgeKind::Regular { weight, sign } => {
                out.push_str(" kind=regular");
                if let Some(s) = sign {
                    out.push_str(&format!(" sign={}", s.symbol()));
                }
                write_weight(&mut out, weight, &edge.label);
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a `.vld` file: either crossing/arc/orient/loop lines, or a single
/// `gauss` line.
pub fn parse_vld(text: &str) -> Result<VirtualLinkDiagram> {
    let all = lines(text)?;
    if let Some(g) = all.iter().find(|l| l.keyword == "gauss") {
        if all.len() > 1 {
            return Err(Error::parse(g.number, "a `gauss` line must be the only directive"));
        }
        return realize_gauss_code(g.name).map_err(|e| Error::parse(g.number, e.to_string()));
    }
    let mut crossings = Vec::new();
    let mut crossing_index: HashMap<String, usize> = HashMap::new();
    let mut arcs = Vec::new();
    let mut arc_index: HashMap<String, usize> = HashMap::new();
    let mut orient = Vec::new();
    let mut free_loops = 0;
    let mut pending_orient = Vec::new();
    for line in &all {
        match line.keyword {
            "crossing" => {
                let (pos, attrs) = attributes(line)?;
                check_known(line, &attrs, &["kind", "ends", "over"])?;
                if !pos.is_empty() {
                    return Err(Error::parse(line.number, format!("unexpected `{}`", pos[0])));
                }
                let ends: Vec<String> = take(&attrs, "ends")
                    .ok_or_else(|| Error::parse(line.number, "crossing needs ends=<h1> <h2> <h3> <h4>"))?
                    .split_whitespace()
                    .map(String::from)
                    .collect();
                let Ok(end_names) = <[String; 4]>::try_from(ends) else {
                    return Err(Error::parse(line.number, "a crossing has degree 4: give four ends"));
                };
                for i in 0..4 {
                    if end_names[i + 1..].contains(&end_names[i]) {
                        return Err(Error::parse(line.number, format!("end `{}` repeated", end_names[i])));
                    }
                }
                let kind = match take(&attrs, "kind") {
                    Some("virtual") => {
                        if take(&attrs, "over").is_some() {
                            return Err(Error::parse(line.number, "virtual crossings have no over-strand"));
                        }
                        CrossingKind::Virtual
                    }
                    Some("classical") => {
                        let over = take(&attrs, "over").ok_or_else(|| {
                            Error::parse(line.number, "classical crossing needs over=<end>,<end>")
                        })?;
                        let pair: Vec<&str> = over.split(',').map(str::trim).collect();
                        let idx: Vec<Option<usize>> = pair
                            .iter()
                            .map(|p| end_names.iter().position(|n| n == p))
                            .collect();
                        match idx.as_slice() {
                            [Some(i), Some(j)] if (i + 2) % 4 == *j => CrossingKind::Classical { over: i % 2 },
                            _ => {
                                return Err(Error::parse(
                                    line.number,
                                    format!("over=`{over}` must name two opposite ends"),
                                ))
                            }
                        }
                    }
                    other => {
                        return Err(Error::parse(
                            line.number,
                            format!("kind must be classical or virtual, found `{}`", other.unwrap_or("")),
                        ))
                    }
                };
                if crossing_index.insert(line.name.to_string(), crossings.len()).is_some() {
                    return Err(Error::parse(line.number, format!("crossing `{}` defined twice", line.name)));
                }
                crossings.push(Crossing {
                    name: line.name.to_string(),
                    kind,
                    end_names,
                });
            }
            "arc" => pending_orient.push(line),
            "orient" | "loop" => pending_orient.push(line),
            other => {
                return Err(Error::parse(line.number, format!("unknown directive `{other}` in a diagram file")))
            }
        }
    }
    for line in pending_orient {
        match line.keyword {
            "arc" => {
                let refs: Vec<&str> = line.rest.split_whitespace().collect();
                if refs.len() != 2 {
                    return Err(Error::parse(line.number, "an arc joins two crossing ends"));
                }
                let mut ends = [0; 2];
                for (i, r) in refs.iter().enumerate() {
                    let (c, e) = r.split_once('.').ok_or_else(|| {
                        Error::parse(line.number, format!("`{r}` is not <crossing>.<end>"))
                    })?;
                    let &ci = crossing_index
                        .get(c)
                        .ok_or_else(|| Error::parse(line.number, format!("unknown crossing `{c}`")))?;
                    let k = crossings[ci]
                        .end_names
                        .iter()
                        .position(|n| n == e)
                        .ok_or_else(|| Error::parse(line.number, format!("crossing `{c}` has no end `{e}`")))?;
                    ends[i] = 4 * ci + k;
                }
                if arc_index.insert(line.name.to_string(), arcs.len()).is_some() {
                    return Err(Error::parse(line.number, format!("arc `{}` defined twice", line.name)));
                }
                arcs.push(LinkArc {
                    name: line.name.to_string(),
                    ends,
                });
            }
            "loop" => free_loops += 1,
            _ => {}
        }
    }
    for line in all.iter().filter(|l| l.keyword == "orient") {
        let &a = arc_index
            .get(line.name)
            .ok_or_else(|| Error::parse(line.number, format!("unknown arc `{}`", line.name)))?;
        let forward = sign_of(line, line.rest)? == Sign::Plus;
        orient.push((a, forward));
    }
    VirtualLinkDiagram::new(crossings, arcs, free_loops, orient)
}

pub fn serialize_vld(l: &VirtualLinkDiagram) -> String {
    let mut out = String::new();
    for c in l.crossings() {
        out.push_str(&format!("crossing {}: ", c.name));
        match c.kind {
            CrossingKind::Virtual => out.push_str("kind=virtual"),
            CrossingKind::Classical { .. } => out.push_str("kind=classical"),
        }
        out.push_str(&format!(" ends={}", c.end_names.join(" ")));
        if let CrossingKind::Classical { over } = c.kind {
            out.push_str(&format!(" over={},{}", c.end_names[over], c.end_names[over + 2]));
        }
        out.push('\n');
    }
    let end_ref = |e: usize| {
        let c = &l.crossings()[e / 4];
        format!("{}.{}", c.name, c.end_names[e % 4])
    };
    for a in l.arcs() {
        out.push_str(&format!("arc {}: {} {}\n", a.name, end_ref(a.ends[0]), end_ref(a.ends[1])));
    }
    for &(a, forward) in l.orientations() {
        out.push_str(&format!("orient {}: {}\n", l.arcs()[a].name, if forward { '+' } else { '-' }));
    }
    for _ in 0..l.free_loops() {
        out.push_str("loop\n");
    }
    out
}

/// Edge correspondence as comment lines, `# edge <plane label> = <ribbon label>`.
pub fn serialize_certificate(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(g, r)| format!("# edge {g} = {r}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_ribbon() {
        let r = parse_ribbon("vertex v: a b\nedge e: a b sign=+\n").unwrap();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.edge_count(), 1);
        assert_eq!(r.bollobas_riordan().unwrap().to_string(), "x_e*Y + y_e");
        assert_eq!(parse_ribbon(&serialize_ribbon(&r)).unwrap(), r);
    }

    #[test]
    fn weights_with_spaces() {
        let r = parse_ribbon("vertex v: a b # loop\nedge e: a b sign=- x=2*t + 1 y=t\n").unwrap();
        assert_eq!(r.edges()[0].weight.x.to_string(), "2*t + 1");
        assert_eq!(r.edges()[0].sign, Sign::Minus);
        assert_eq!(parse_ribbon(&serialize_ribbon(&r)).unwrap(), r);
    }

    #[test]
    fn ribbon_errors_name_the_line() {
        let cases = [
            ("vertex v: a b\nedge e: a b\n", 2),
            ("vertex v: a b\nedge e: a b sign=*\n", 2),
            ("vertex v: a\nedge e: a b sign=+\n", 2),
            ("vertex v: a b c\nedge e: a b sign=+\n", 1),
            ("vertex v: a b\nvertex w: a\nedge e: a b sign=+\n", 2),
            ("vertex v: a b\nedge e: a b sign=+ x=(\n", 2),
            ("face f: a\n", 1),
        ];
        for (text, line) in cases {
            match parse_ribbon(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn rpg_rejects_genus_one() {
        let torus = "vertex v: a c b d\nedge e: a b\nedge f: c d\n";
        match parse_rpg(torus) {
            Err(Error::NotPlane { deficit, .. }) => assert_eq!(deficit, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rpg_round_trip() {
        let text = "vertex u: p q r\nvertex w: s t\nvertex i:\n\
                    edge e: p s kind=regular sign=- x=x_neg y=y_neg\n\
                    edge f: q t kind=zero\nedge g: r\tr2 kind=regular\nvertex z: r2\n";
        let g = parse_rpg(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.zero_edges(), vec![1]);
        assert_eq!(parse_rpg(&serialize_rpg(&g)).unwrap(), g);
    }

    #[test]
    fn vld_round_trip_and_gauss() {
        let text = "crossing c: kind=classical ends=a b c d over=a,c\n\
                    arc p: c.a c.b\narc q: c.c c.d\norient p: +\nloop\n";
        let l = parse_vld(text).unwrap();
        assert_eq!(l.free_loops(), 1);
        assert_eq!(l.writhe().unwrap(), -1);
        assert_eq!(parse_vld(&serialize_vld(&l)).unwrap(), l);
        let k = parse_vld("gauss O1+U1+\n").unwrap();
        assert_eq!(k.writhe().unwrap(), 1);
        assert_eq!(parse_vld(&serialize_vld(&k)).unwrap(), k);
    }

    #[test]
    fn vld_errors() {
        let bad_degree = "crossing c: kind=virtual ends=a b c\n";
        assert!(matches!(parse_vld(bad_degree), Err(Error::Parse { line: 1, .. })));
        let bad_over = "crossing c: kind=classical ends=a b c d over=a,b\n";
        assert!(matches!(parse_vld(bad_over), Err(Error::Parse { line: 1, .. })));
        let free_end = "crossing c: kind=virtual ends=a b c d\narc p: c.a c.b\n";
        assert!(matches!(parse_vld(free_end), Err(Error::MalformedDiagram(_))));
        assert!(matches!(parse_vld("gauss O1+\n"), Err(Error::Parse { line: 1, .. })));
    }
}
