//! Human-readable diagram files.
//!
//! One section per line:
//!
//! ```text
//! # comment
//! [node 0] name=K0(C(SS2)) group=unknown
//! [node 1] name=K0(C(DxS1))^2 group=Z^2
//! [arrow 1] matrix=[[-1,1],[0,0]]
//! [arrow 0] unknown
//! ```
//!
//! Arrows that are not listed are unknown; every listed arrow needs both
//! endpoint groups. Parse errors report the offending line number.

use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, IntMatrix};

use super::diagram::SixTermDiagram;

pub fn parse_diagram(text: &str) -> Result<SixTermDiagram> {
    let mut names: [Option<String>; 6] = Default::default();
    let mut groups: [Option<FgAbGroup>; 6] = Default::default();
    let mut matrices: Vec<(usize, IntMatrix, usize)> = Vec::new(); // (arrow, matrix, line)

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| Error::Parse {
            line: Some(lineno),
            msg,
        };
        let rest = line
            .strip_prefix('[')
            .ok_or_else(|| at(format!("expected `[node i]` or `[arrow i]`, got `{line}`")))?;
        let (header, body) = rest
            .split_once(']')
            .ok_or_else(|| at("unterminated section header".into()))?;
        let mut header_parts = header.split_whitespace();
        let kind = header_parts.next().unwrap_or("");
        let index: usize = header_parts
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&i| i < 6)
            .ok_or_else(|| at(format!("section index must be 0..5 in `[{header}]`")))?;

        let mut fields: Vec<(&str, &str)> = Vec::new();
        let mut unknown = false;
        for token in body.split_whitespace() {
            if token == "unknown" {
                unknown = true;
            } else if let Some((k, v)) = token.split_once('=') {
                fields.push((k, v));
            } else {
                return Err(at(format!("unrecognized token `{token}`")));
            }
        }

        match kind {
            "node" => {
                for (k, v) in fields {
                    match k {
                        "name" => names[index] = Some(v.to_string()),
                        "group" => {
                            if v == "unknown" {
                                groups[index] = None;
                            } else {
                                let g = FgAbGroup::parse(v).map_err(|e| {
                                    at(format!("bad group for node {index}: {e}"))
                                })?;
                                groups[index] = Some(g);
                            }
                        }
                        other => return Err(at(format!("unknown node field `{other}`"))),
                    }
                }
            }
            "arrow" => {
                if unknown {
                    continue;
                }
                let Some((_, v)) = fields.iter().find(|(k, _)| *k == "matrix") else {
                    return Err(at(format!(
                        "arrow {index} needs `matrix=[[..],[..]]` or `unknown`"
                    )));
                };
                let m = IntMatrix::parse(v)
                    .map_err(|e| at(format!("bad matrix for arrow {index}: {e}")))?;
                matrices.push((index, m, lineno));
            }
            other => return Err(at(format!("unknown section kind `{other}`"))),
        }
    }

    let labels: [String; 6] =
        std::array::from_fn(|i| names[i].clone().unwrap_or_else(|| format!("node {i}")));
    let mut d = SixTermDiagram::empty(std::array::from_fn::<&str, 6, _>(|i| labels[i].as_str()));
    for (i, g) in groups.iter().enumerate() {
        if let Some(g) = g {
            d = d.with_node(i, g.clone())?;
        }
    }
    for (i, m, lineno) in matrices {
        let dom = d.node(i).cloned().ok_or_else(|| Error::Parse {
            line: Some(lineno),
            msg: format!("arrow {i} needs node {i} group to be known"),
        })?;
        let cod = d.node((i + 1) % 6).cloned().ok_or_else(|| Error::Parse {
            line: Some(lineno),
            msg: format!("arrow {i} needs node {} group to be known", (i + 1) % 6),
        })?;
        let hom = GroupHom::new(dom, cod, m)?;
        d = d.with_arrow(i, hom)?;
    }
    Ok(d)
}

pub fn serialize_diagram(d: &SixTermDiagram) -> String {
    let mut out = String::new();
    for i in 0..6 {
        let group = d
            .node(i)
            .map(|g| g.to_string().replace(' ', ""))
            .unwrap_or_else(|| "unknown".into());
        out.push_str(&format!("[node {i}] name={} group={group}\n", d.label(i)));
    }
    for i in 0..6 {
        match d.arrow(i) {
            Some(h) => out.push_str(&format!("[arrow {i}] matrix={}\n", h.matrix())),
            None => out.push_str(&format!("[arrow {i}] unknown\n")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::solve_all;

    const CSS2: &str = "\
# Mayer-Vietoris six-term diagram for the unit circle bundle of the 2-sphere
[node 0] name=K0(C(SS2)) group=unknown
[node 1] name=K0(C(DxS1))^2 group=Z^2
[node 2] name=K0(C(S1xS1)) group=Z^2
[node 3] name=K1(C(SS2)) group=unknown
[node 4] name=K1(C(DxS1))^2 group=Z^2
[node 5] name=K1(C(S1xS1)) group=Z^2
[arrow 0] unknown
[arrow 1] matrix=[[-1,1],[0,0]]
[arrow 2] unknown
[arrow 3] unknown
[arrow 4] matrix=[[0,2],[-1,-1]]
[arrow 5] unknown
";

    #[test]
    fn parses_and_solves_the_shipped_example() {
        let d = parse_diagram(CSS2).unwrap();
        assert_eq!(d.label(0), "K0(C(SS2))");
        let solved = solve_all(&d).unwrap();
        assert_eq!(solved.solved.len(), 2);
        assert_eq!(solved.solved[0].group.to_string(), "Z + Z/2");
        assert_eq!(solved.solved[1].group.to_string(), "Z");
    }

    #[test]
    fn round_trip_preserves_content() {
        let d = parse_diagram(CSS2).unwrap();
        let text = serialize_diagram(&d);
        let d2 = parse_diagram(&text).unwrap();
        for i in 0..6 {
            assert_eq!(d.node(i), d2.node(i));
            assert_eq!(
                d.arrow(i).map(|h| h.matrix().to_string()),
                d2.arrow(i).map(|h| h.matrix().to_string())
            );
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "[node 0] group=Z\n[arrow 9] matrix=[[1]]\n";
        match parse_diagram(bad).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, Some(2)),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad = "[node 0] group=Z\nnot a section\n";
        match parse_diagram(bad).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, Some(2)),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad = "[arrow 0] matrix=[[1]]\n";
        assert!(parse_diagram(bad).is_err());
    }
}
