//! JSON and edge-list formats for [`Digraph`].
//!
//! JSON: `{"n": 3, "allow_bidirected": false, "edges": [[0,1],[1,2]]}`.
//!
//! Edge list: a header line `# n=<n> bidirected=<0|1>` followed by one
//! `i j` line per edge, vertices 0-based.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Digraph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct DigraphWire {
    n: usize,
    allow_bidirected: bool,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Digraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DigraphWire {
            n: self.n(),
            allow_bidirected: self.allow_bidirected(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = DigraphWire::deserialize(d)?;
        Digraph::from_edges(
            w.n,
            w.edges.into_iter().map(|[u, v]| (u, v)),
            w.allow_bidirected,
        )
        .map_err(serde::de::Error::custom)
    }
}

impl Digraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("digraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("digraph JSON: {e}")))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!(
            "# n={} bidirected={}\n",
            self.n(),
            u8::from(self.allow_bidirected())
        );
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let schema = |m: String| Error::Schema(format!("edge list: {m}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| schema("missing header".into()))?;
        let header = header
            .trim()
            .strip_prefix('#')
            .ok_or_else(|| schema(format!("header must start with '#': {header:?}")))?;
        let mut n = None;
        let mut bidirected = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("bidirected", "0")) => bidirected = Some(false),
                Some(("bidirected", "1")) => bidirected = Some(true),
                _ => return Err(schema(format!("unknown header field {field:?}"))),
            }
        }
        let n = n.ok_or_else(|| schema("header lacks n=<n>".into()))?;
        let bidirected =
            bidirected.ok_or_else(|| schema("header lacks bidirected=<0|1>".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let parse = |p: Option<&str>| {
                p.and_then(|x| x.parse::<usize>().ok())
                    .ok_or_else(|| schema(format!("bad edge line {line:?}")))
            };
            let u = parse(parts.next())?;
            let v = parse(parts.next())?;
            if parts.next().is_some() {
                return Err(schema(format!("bad edge line {line:?}")));
            }
            edges.push((u, v));
        }
        Digraph::from_edges(n, edges, bidirected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::cycle_digraph;

    #[test]
    fn json_shape() {
        let g = cycle_digraph(3).unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"n":3,"allow_bidirected":false,"edges":[[0,1],[1,2],[2,0]]}"#
        );
        assert_eq!(Digraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn json_rejects_invalid_graphs() {
        assert!(
            Digraph::from_json(r#"{"n":2,"allow_bidirected":false,"edges":[[0,1],[1,0]]}"#)
                .is_err()
        );
        assert!(Digraph::from_json(r#"{"n":2,"allow_bidirected":false,"edges":[[0,0]]}"#).is_err());
        assert!(Digraph::from_json(r#"{"n":2,"edges":[]}"#).is_err());
    }

    #[test]
    fn edge_list_shape() {
        let g = cycle_digraph(2).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "# n=2 bidirected=1\n0 1\n1 0\n");
        assert_eq!(Digraph::from_edge_list(&text).unwrap(), g);
        assert!(Digraph::from_edge_list("0 1\n").is_err());
        assert!(Digraph::from_edge_list("# n=2 bidirected=0\n0 x\n").is_err());
    }
}
