//! Matroid description files.
//!
//! ```text
//! # comment
//! n: 4
//! rank: 2                      (optional, checked)
//! bases: 1,2 1,3 1,4 2,3 2,4   (or `uniform: 2 4`, or `graph: 1-2 2-3 1-3`)
//! ```
//!
//! `n:` must be the first non-comment line and exactly one generator line
//! must follow. A basis is a comma-separated list of labels; `{}` stands for
//! the empty basis of a rank-0 matroid.

use matropoly_core::catalog::{graphic, uniform, Graph};
use matropoly_core::{Matroid, MatroidError, SubsetMask};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Bases(Vec<Vec<usize>>),
    Uniform { k: usize, n: usize },
    Graph(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidFile {
    pub n: usize,
    pub rank: Option<usize>,
    pub generator: Generator,
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

fn parse_int(line: usize, token: &str, what: &str) -> Result<usize, CliError> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, format!("expected {what}, found `{token}`")))
}

impl MatroidFile {
    pub fn parse(text: &str) -> Result<MatroidFile, CliError> {
        let mut n: Option<usize> = None;
        let mut rank: Option<(usize, usize)> = None;
        let mut generator: Option<(usize, Generator)> = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| parse_error(line, format!("expected `key: value`, found `{content}`")))?;
            let key = key.trim();
            let value = value.trim();
            if n.is_none() && key != "n" {
                return Err(parse_error(line, "the first entry must be `n: <int>`"));
            }
            match key {
                "n" => {
                    if n.is_some() {
                        return Err(parse_error(line, "duplicate `n:` line"));
                    }
                    let v = parse_int(line, value, "the ground set size")?;
                    if v == 0 {
                        return Err(parse_error(line, "ground set size must be positive"));
                    }
                    n = Some(v);
                }
                "rank" => {
                    if rank.is_some() {
                        return Err(parse_error(line, "duplicate `rank:` line"));
                    }
                    rank = Some((line, parse_int(line, value, "a rank")?));
                }
                "bases" | "uniform" | "graph" => {
                    if let Some((first, _)) = generator {
                        return Err(parse_error(
                            line,
                            format!("second generator line; the first is on line {first}"),
                        ));
                    }
                    let g = match key {
                        "bases" => Generator::Bases(parse_bases(line, value)?),
                        "uniform" => parse_uniform(line, value)?,
                        _ => Generator::Graph(parse_edges(line, value)?),
                    };
                    generator = Some((line, g));
                }
                other => return Err(parse_error(line, format!("unknown key `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| parse_error(last_line.max(1), "missing `n:` line"))?;
        let (gen_line, generator) = generator.ok_or_else(|| {
            parse_error(last_line.max(1), "missing generator line (`bases:`, `uniform:` or `graph:`)")
        })?;
        match &generator {
            Generator::Uniform { n: m, .. } if *m != n => {
                return Err(parse_error(gen_line, format!("uniform matroid on {m} elements but n = {n}")));
            }
            Generator::Graph(edges) if edges.len() != n => {
                return Err(parse_error(
                    gen_line,
                    format!("graph has {} edges but n = {n}", edges.len()),
                ));
            }
            _ => {}
        }
        Ok(MatroidFile {
            n,
            rank: rank.map(|(_, r)| r),
            generator,
        })
    }

    pub fn to_matroid(&self) -> Result<Matroid, CliError> {
        let m = match &self.generator {
            Generator::Bases(bases) => {
                let masks = bases
                    .iter()
                    .map(|b| {
                        if let Some(&e) = b.iter().find(|&&e| e > self.n) {
                            return Err(CliError::Matroid(MatroidError::ElementOutOfRange {
                                set: SubsetMask::singleton(e.min(32)),
                                n: self.n,
                            }));
                        }
                        Ok(SubsetMask::from_elements(b.iter().copied()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Matroid::from_bases(self.n, masks)?
            }
            Generator::Uniform { k, n } => uniform(*k, *n)?,
            Generator::Graph(edges) => {
                let vertices = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
                graphic(&Graph::new(vertices, edges.clone()))?
            }
        };
        if let Some(declared) = self.rank {
            if declared != m.rank() {
                return Err(CliError::RankMismatch { declared, computed: m.rank() });
            }
        }
        Ok(m)
    }
}

fn parse_bases(line: usize, value: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let mut out = Vec::new();
    for token in value.split_whitespace() {
        if token == "{}" {
            out.push(Vec::new());
            continue;
        }
        let mut basis = Vec::new();
        for label in token.split(',') {
            let e = parse_int(line, label, "an element label")?;
            if e == 0 {
                return Err(parse_error(line, "element labels start at 1"));
            }
            if e > 32 {
                return Err(parse_error(line, format!("element label {e} is too large")));
            }
            if basis.contains(&e) {
                return Err(parse_error(line, format!("element {e} repeated in basis `{token}`")));
            }
            basis.push(e);
        }
        out.push(basis);
    }
    if out.is_empty() {
        return Err(parse_error(line, "`bases:` needs at least one basis"));
    }
    Ok(out)
}

fn parse_uniform(line: usize, value: &str) -> Result<Generator, CliError> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(parse_error(line, "`uniform:` takes two integers `<k> <n>`"));
    }
    Ok(Generator::Uniform {
        k: parse_int(line, parts[0], "the rank k")?,
        n: parse_int(line, parts[1], "the size n")?,
    })
}

fn parse_edges(line: usize, value: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let mut out = Vec::new();
    for token in value.split_whitespace() {
        let (u, v) = token
            .split_once('-')
            .ok_or_else(|| parse_error(line, format!("expected an edge `u-v`, found `{token}`")))?;
        let u = parse_int(line, u, "a vertex")?;
        let v = parse_int(line, v, "a vertex")?;
        if u == 0 || v == 0 {
            return Err(parse_error(line, "vertices are positive integers"));
        }
        out.push((u, v));
    }
    if out.is_empty() {
        return Err(parse_error(line, "`graph:` needs at least one edge"));
    }
    Ok(out)
}

/// Parses a description and builds the matroid.
pub fn parse_matroid_file(text: &str) -> Result<Matroid, CliError> {
    MatroidFile::parse(text)?.to_matroid()
}

/// Canonical description: `n`, `rank`, and the bases in (cardinality, bits)
/// order.
pub fn serialize(m: &Matroid) -> String {
    let bases: Vec<String> = m
        .bases()
        .iter()
        .map(|b| {
            if b.is_empty() {
                "{}".to_string()
            } else {
                b.elements().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            }
        })
        .collect();
    format!("n: {}\nrank: {}\nbases: {}\n", m.n(), m.rank(), bases.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let m = parse_matroid_file("# U(2,3)\nn: 3\n\nbases: 1,2 1,3 2,3  # all pairs\n").unwrap();
        assert_eq!(m, uniform(2, 3).unwrap());
        let m = parse_matroid_file("n: 4\nrank: 2\nuniform: 2 4").unwrap();
        assert_eq!(m, uniform(2, 4).unwrap());
        let m = parse_matroid_file("n: 3\ngraph: 1-2 2-3 3-1").unwrap();
        assert_eq!(m, uniform(2, 3).unwrap());
        let m = parse_matroid_file("n: 2\nbases: {}").unwrap();
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_matroid_file("n: 3\n\nbases: 1,x").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err:?}");
        let err = parse_matroid_file("bases: 1,2").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
        let err = parse_matroid_file("n: 3\nuniform: 1 3\nbases: 1").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }));
        let err = parse_matroid_file("n: 3\nrank: 1\nuniform: 2 3").unwrap_err();
        assert_eq!(err, CliError::RankMismatch { declared: 1, computed: 2 });
        let err = parse_matroid_file("n: 3\nbases: 1,2 3").unwrap_err();
        assert!(matches!(err, CliError::Matroid(MatroidError::UnequalCardinality { .. })));
        let err = parse_matroid_file("n: 2\nbases: 1,3").unwrap_err();
        assert!(matches!(err, CliError::Matroid(MatroidError::ElementOutOfRange { .. })));
        let err = parse_matroid_file("n: 3\ngraph: 1-2 2-3").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
    }

    #[test]
    fn serialize_roundtrip() {
        for text in ["n: 3\nrank: 2\nbases: 1,2 1,3 2,3\n", "n: 2\nrank: 0\nbases: {}\n"] {
            let m = parse_matroid_file(text).unwrap();
            assert_eq!(serialize(&m), text);
        }
    }
}
