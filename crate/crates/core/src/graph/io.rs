use std::io::{BufRead, Write};

use super::{EdgeColouring, Graph};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn fields<const N: usize>(text: &str, line: usize) -> Result<[u64; N]> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != N {
        return Err(parse_err(line, format!("expected {N} fields, found {}", parts.len())));
    }
    let mut out = [0u64; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: {p:?}")))?;
    }
    Ok(out)
}

/// Writes `n m` followed by one `u v` line per edge (`u < v`, sorted).
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", graph.n(), graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let [n, m] = fields::<2>(&header?, no)?;
    let mut edges = Vec::with_capacity(m as usize);
    for (no, line) in lines {
        let [u, v] = fields::<2>(&line?, no)?;
        edges.push((u as usize, v as usize));
    }
    if edges.len() as u64 != m {
        return Err(parse_err(no, format!("header declares {m} edges, found {}", edges.len())));
    }
    let g = Graph::new(n as usize, edges)?;
    if g.edge_count() as u64 != m {
        return Err(parse_err(no, "edge list contains duplicate edges"));
    }
    Ok(g)
}

/// One `u v colour` line per edge, in the graph's edge order.
pub fn write_colouring<W: Write>(graph: &Graph, colouring: &EdgeColouring, mut out: W) -> Result<()> {
    for (u, v, c) in colouring.triples(graph) {
        writeln!(out, "{u} {v} {c}")?;
    }
    Ok(())
}

pub fn read_colouring<R: BufRead>(graph: &Graph, input: R) -> Result<EdgeColouring> {
    let mut triples = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let [u, v, c] = fields::<3>(&line, i + 1)?;
        let c = u32::try_from(c).map_err(|_| parse_err(i + 1, "colour id exceeds 32 bits"))?;
        triples.push((u as usize, v as usize, c));
    }
    EdgeColouring::new(graph, triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{direction_colouring, hypercube};

    #[test]
    fn edge_list_format() {
        let g = hypercube(2).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "4 4\n0 1\n0 2\n1 3\n2 3\n");
        let back = read_edge_list(&buf[..]).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn malformed_edge_lists() {
        assert!(read_edge_list(&b"3 2\n0 1\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1\n0 x\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1\n0 3\n"[..]).is_err());
        assert!(read_edge_list(&b"3 2\n0 1\n1 0\n"[..]).is_err());
        assert!(read_edge_list(&b""[..]).is_err());
    }

    #[test]
    fn colouring_file_round_trip() {
        let (g, c) = direction_colouring(3).unwrap();
        let mut buf = Vec::new();
        write_colouring(&g, &c, &mut buf).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 12);
        assert_eq!(read_colouring(&g, &buf[..]).unwrap(), c);
        assert!(read_colouring(&g, &b"0 1 0\n"[..]).is_err());
    }
}
