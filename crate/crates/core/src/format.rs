//! Text formats for HARs and hypergraphs.
//!
//! A HAR file:
//!
//! ```text
//! har-v1
//! sig gates.sig
//! dom 1
//! cod 1
//! size 3
//! labels w b:not w
//! left 0 1 2
//! right 0 1 2
//! edges 2
//! 1 0 1
//! 2 1 1
//! ```
//!
//! `labels` lists `w` for a wire and `b:<name>` for a box. Each edge line is
//! `row col label`, meaning an edge from node `col` into node `row`, in
//! row-major order. A hypergraph file starts with `har-v1 hyp` and lists
//! `nodes`, `left`, `right`, then one `edge <name> : <sources> -> <targets>`
//! line per hyperedge. Blank lines and `#` comments are ignored on input;
//! output is always in the layout above.

use std::fmt::Write;

use thiserror::Error;

use crate::har::{Har, HarError, NodeLabel};
use crate::hypergraph::{Hyperedge, MaHypergraph};
use crate::perm::Perm;
use crate::signature::Signature;
use crate::sparse::NatMat;

pub const VERSION: &str = "har-v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Har(#[from] HarError),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            line: 0,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax {
            line: self.line,
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<&'a str> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                self.line = i + 1;
                return Some(line);
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<&'a str, FormatError> {
        match self.next() {
            Some(line) => Ok(line),
            None => self.error(format!("unexpected end of file, expected `{what}`")),
        }
    }

    /// The rest of a line starting with `key`.
    fn field(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let line = self.expect(key)?;
        match line.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok(rest.trim()),
            None if line == key => Ok(""),
            _ => self.error(format!("expected `{key}`, found `{line}`")),
        }
    }

    fn number(&self, s: &str) -> Result<usize, FormatError> {
        s.parse()
            .or_else(|_| self.error(format!("`{s}` is not a natural number")))
    }

    fn count(&mut self, key: &str) -> Result<usize, FormatError> {
        let value = self.field(key)?;
        self.number(value)
    }

    fn list(&mut self, key: &str) -> Result<Vec<usize>, FormatError> {
        let value = self.field(key)?;
        value.split_whitespace().map(|s| self.number(s)).collect()
    }

    fn perm(&mut self, key: &str) -> Result<Perm, FormatError> {
        let list = self.list(key)?;
        Perm::new(list).or_else(|e| self.error(format!("`{key}` is not a permutation: {e}")))
    }

    fn end(&mut self) -> Result<(), FormatError> {
        match self.next() {
            None => Ok(()),
            Some(line) => self.error(format!("trailing content `{line}`")),
        }
    }
}

fn header<'a>(lines: &mut Lines<'a>, kind: Option<&str>) -> Result<Option<&'a str>, FormatError> {
    let expected = match kind {
        Some(kind) => format!("{VERSION} {kind}"),
        None => VERSION.to_string(),
    };
    let first = lines.expect(&expected)?;
    if first.split_whitespace().collect::<Vec<_>>().join(" ") != expected {
        return lines.error(format!("expected header `{expected}`, found `{first}`"));
    }
    let sig = lines.field("sig")?;
    Ok((sig != "-").then_some(sig))
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The `sig` reference of a HAR or hypergraph file, if it names one.
pub fn signature_ref(text: &str) -> Result<Option<String>, FormatError> {
    let mut lines = Lines::new(text);
    lines.expect(VERSION)?;
    Ok(match lines.field("sig")? {
        "-" => None,
        s => Some(s.to_string()),
    })
}

/// Writes `h`; `sig_ref` names the signature file (`None` writes `-`).
pub fn write_har(h: &Har, sig: &Signature, sig_ref: Option<&str>) -> String {
    let mut out = String::new();
    let labels: Vec<String> = h
        .labels()
        .iter()
        .map(|l| match l {
            NodeLabel::Wire => "w".to_string(),
            NodeLabel::Box(op) => format!("b:{}", sig.op(*op).name),
        })
        .collect();
    let _ = writeln!(out, "{VERSION}");
    let _ = writeln!(out, "sig {}", sig_ref.unwrap_or("-"));
    let _ = writeln!(out, "dom {}", h.dom());
    let _ = writeln!(out, "cod {}", h.cod());
    let _ = writeln!(out, "size {}", h.size());
    let _ = writeln!(out, "labels {}", labels.join(" "));
    let _ = writeln!(out, "left {}", join(h.left().as_slice().iter().copied()));
    let _ = writeln!(out, "right {}", join(h.right().as_slice().iter().copied()));
    let _ = writeln!(out, "edges {}", h.adjacency().nnz());
    for (i, j, v) in h.adjacency().iter() {
        let _ = writeln!(out, "{i} {j} {v}");
    }
    out.lines()
        .map(|l| l.trim_end())
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Reads a HAR, resolving box labels against `sig`. The result is not
/// validated.
pub fn read_har(text: &str, sig: &Signature) -> Result<Har, FormatError> {
    let mut lines = Lines::new(text);
    header(&mut lines, None)?;
    let dom = lines.count("dom")?;
    let cod = lines.count("cod")?;
    let size = lines.count("size")?;
    let label_text = lines.field("labels")?;
    let labels = label_text
        .split_whitespace()
        .map(|tok| match tok {
            "w" => Ok(NodeLabel::Wire),
            _ => match tok.strip_prefix("b:") {
                Some(name) => sig
                    .lookup(name)
                    .map(NodeLabel::Box)
                    .or_else(|e| lines.error(e.to_string())),
                None => lines.error(format!("bad node label `{tok}`")),
            },
        })
        .collect::<Result<Vec<_>, _>>()?;
    if labels.len() != size {
        return lines.error(format!("{} labels for {size} nodes", labels.len()));
    }
    let left = lines.perm("left")?;
    let right = lines.perm("right")?;
    let nnz = lines.count("edges")?;
    let mut triples = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        let line = lines.expect("row col label")?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = fields[..] else {
            return lines.error(format!("expected `row col label`, found `{line}`"));
        };
        let v = lines.number(v)?;
        if v == 0 || v > u32::MAX as usize {
            return lines.error(format!("edge label {v} out of range"));
        }
        triples.push((lines.number(i)?, lines.number(j)?, v as u32));
    }
    lines.end()?;
    let mut sorted = triples.clone();
    sorted.sort_unstable_by_key(|&(i, j, _)| (i, j));
    sorted.dedup_by_key(|&mut (i, j, _)| (i, j));
    if sorted.len() != triples.len() {
        return Err(FormatError::Syntax {
            line: lines.line,
            msg: "duplicate edge".into(),
        });
    }
    let adjacency = NatMat::from_triples(size, size, triples).map_err(HarError::from)?;
    Ok(Har::new(dom, cod, adjacency, left, right, labels)?)
}

pub fn write_hypergraph(h: &MaHypergraph, sig: &Signature, sig_ref: Option<&str>) -> String {
    let mut out = format!("{VERSION} hyp\nsig {}\n", sig_ref.unwrap_or("-"));
    let _ = writeln!(out, "nodes {}", h.nodes);
    let _ = writeln!(out, "left {}", join(h.left.iter().copied()));
    let _ = writeln!(out, "right {}", join(h.right.iter().copied()));
    for e in &h.edges {
        let _ = writeln!(
            out,
            "edge {} : {} -> {}",
            sig.op(e.op).name,
            join(e.sources.iter().copied()),
            join(e.targets.iter().copied())
        );
    }
    out.lines()
        .map(|l| l.trim_end())
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Reads a hypergraph. The result is not validated.
pub fn read_hypergraph(text: &str, sig: &Signature) -> Result<MaHypergraph, FormatError> {
    let mut lines = Lines::new(text);
    header(&mut lines, Some("hyp"))?;
    let nodes = lines.count("nodes")?;
    let left = lines.list("left")?;
    let right = lines.list("right")?;
    let mut edges = Vec::new();
    while let Some(line) = lines.next() {
        let Some(rest) = line.strip_prefix("edge ") else {
            return lines.error(format!("expected `edge`, found `{line}`"));
        };
        let parsed = rest.split_once(':').and_then(|(name, lists)| {
            let (s, t) = lists.split_once("->")?;
            Some((name.trim(), s, t))
        });
        let Some((name, s, t)) = parsed else {
            return lines.error("expected `edge <name> : <sources> -> <targets>`");
        };
        let op = sig.lookup(name).or_else(|e| lines.error(e.to_string()))?;
        let nums = |s: &str| {
            s.split_whitespace()
                .map(|x| lines.number(x))
                .collect::<Result<Vec<_>, _>>()
        };
        edges.push(Hyperedge {
            op,
            sources: nums(s)?,
            targets: nums(t)?,
        });
    }
    Ok(MaHypergraph {
        nodes,
        edges,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_har;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn golden_roundtrip() {
        let sig = sample::signature();
        let text = write_har(&sample::har(), &sig, Some("sample.sig"));
        assert!(text.starts_with("har-v1\nsig sample.sig\ndom 2\ncod 2\nsize 9\nlabels w w b:alpha b:beta w w b:gamma w w\n"));
        assert!(text.contains("right 0 1 2 3 4 5 6 8 7\nedges 8\n2 0 1\n"));
        assert_eq!(read_har(&text, &sig).unwrap(), sample::har());
        assert_eq!(signature_ref(&text).unwrap().as_deref(), Some("sample.sig"));
        assert_eq!(
            write_har(&read_har(&text, &sig).unwrap(), &sig, Some("sample.sig")),
            text
        );
    }

    #[test]
    fn random_roundtrips_are_exact() {
        let sig = crate::circuit::bool_signature();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dom in 0..40 {
            let h = random_har(&mut rng, &sig, dom % 4, 6);
            let text = write_har(&h, &sig, None);
            let back = read_har(&text, &sig).unwrap();
            assert_eq!(back, h);
            assert_eq!(write_har(&back, &sig, None), text);
        }
        let empty = write_har(&Har::identity(0), &sig, None);
        assert_eq!(read_har(&empty, &sig).unwrap(), Har::identity(0));
    }

    #[test]
    fn hypergraph_roundtrip() {
        let sig = sample::signature();
        let text = write_hypergraph(&sample::hypergraph(), &sig, None);
        assert!(text.contains("edge gamma : 3 2 -> 5\n"));
        assert_eq!(read_hypergraph(&text, &sig).unwrap(), sample::hypergraph());
    }

    #[test]
    fn comments_and_errors() {
        let sig = sample::signature();
        let text =
            "# a wire\nhar-v1\nsig -\ndom 1\ncod 1\nsize 1\nlabels w\nleft 0\nright 0\nedges 0\n";
        assert_eq!(read_har(text, &sig).unwrap(), Har::identity(1));
        let line = |t: &str| match read_har(t, &sig) {
            Err(FormatError::Syntax { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("har-v2\n"), 1);
        assert_eq!(line(&text.replace("labels w", "labels b:delta")), 7);
        assert_eq!(line(&text.replace("left 0", "left 1")), 8);
        assert_eq!(line(&text.replace("edges 0", "edges 1")), 10);
        assert_eq!(line(&format!("{text}extra\n")), 11);
        assert_eq!(line(&text.replace("size 1", "size x")), 6);
    }
}
