//! PD-code text.
//!
//! ```text
//! # Hopf link
//! X(1,4,2,3)
//! X(2,3,1,4)
//! C P: 1,2
//! C Q: 3,4
//! ```
//!
//! `X+(...)` and `X-(...)` give signed crossings of an oriented diagram
//! (all crossings signed or none), `O(a)` a crossingless loop. Without
//! `C` lines components are computed and named `c0, c1, ...` by smallest
//! arc.

use super::{Arc, Component, Crossing, LinkDiagram, LinkError, Sign};

fn err(line: usize, message: impl Into<String>) -> LinkError {
    LinkError::Parse { line, message: message.into() }
}

fn arc_list(s: &str, line: usize) -> Result<Vec<Arc>, LinkError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| err(line, format!("bad arc `{t}`"))))
        .collect()
}

fn parenthesised(s: &str, line: usize) -> Result<&str, LinkError> {
    s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| err(line, "expected `(...)`"))
}

pub fn parse_pd(input: &str) -> Result<LinkDiagram, LinkError> {
    let mut crossings = Vec::new();
    let mut signed = Vec::new();
    let mut loops = Vec::new();
    let mut components = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('X') {
            let (sign, body) = match rest.chars().next() {
                Some('+') => (Some(Sign::Positive), &rest[1..]),
                Some('-') => (Some(Sign::Negative), &rest[1..]),
                _ => (None, rest),
            };
            let arcs = arc_list(parenthesised(body, line_no)?, line_no)?;
            let arcs: [Arc; 4] = arcs.try_into().map_err(|_| err(line_no, "a crossing needs exactly four arcs"))?;
            signed.push((line_no, sign.is_some()));
            crossings.push(Crossing { arcs, sign });
        } else if let Some(rest) = line.strip_prefix('O') {
            match arc_list(parenthesised(rest, line_no)?, line_no)?.as_slice() {
                [a] => loops.push(*a),
                _ => return Err(err(line_no, "a loop has exactly one arc")),
            }
        } else if let Some(rest) = line.strip_prefix('C') {
            let (name, arcs) = rest.split_once(':').ok_or_else(|| err(line_no, "expected `C name: a,b,...`"))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(err(line_no, "empty component name"));
            }
            components.push(Component::new(name, arc_list(arcs, line_no)?));
        } else {
            return Err(err(line_no, format!("unrecognised line `{line}`")));
        }
    }
    let oriented = signed.first().is_some_and(|&(_, s)| s);
    if let Some(&(line, _)) = signed.iter().find(|&&(_, s)| s != oriented) {
        return Err(err(line, "mix of signed and unsigned crossings"));
    }
    if components.is_empty() {
        let probe = LinkDiagram::new(crossings.clone(), loops.clone(), vec![], oriented);
        // Only arc-count problems matter before components are known.
        if let Err(LinkError::Invalid(v)) = &probe {
            let fatal: Vec<_> =
                v.iter().filter(|x| !matches!(x, super::DiagramViolation::UnassignedArc { .. })).cloned().collect();
            if !fatal.is_empty() {
                return Err(LinkError::Invalid(fatal));
            }
        }
        let shell = LinkDiagram {
            crossings: crossings.clone(),
            loops: loops.clone(),
            components: vec![],
            oriented,
            merges: vec![],
            summands: vec![],
        };
        let mut classes = shell.strand_classes();
        classes.extend(loops.iter().map(|&a| vec![a]));
        classes.sort();
        components = classes.into_iter().enumerate().map(|(i, arcs)| Component::new(format!("c{i}"), arcs)).collect();
    }
    LinkDiagram::new(crossings, loops, components, oriented)
}

pub fn write_pd(l: &LinkDiagram) -> String {
    let mut out = String::new();
    for c in l.crossings() {
        let s = match c.sign {
            None => "",
            Some(Sign::Positive) => "+",
            Some(Sign::Negative) => "-",
        };
        let [a, b, x, d] = c.arcs;
        out.push_str(&format!("X{s}({a},{b},{x},{d})\n"));
    }
    for a in l.loops() {
        out.push_str(&format!("O({a})\n"));
    }
    for c in l.components() {
        let arcs: Vec<String> = c.arcs.iter().map(|a| a.to_string()).collect();
        out.push_str(&format!("C {}: {}\n", c.label, arcs.join(",")));
    }
    out
}
