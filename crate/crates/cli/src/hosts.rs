//! Host and pattern descriptions on the command line.
//!
//! A description is either a generator call such as `hypercube(3)`,
//! `random(10,1/2,3)` or `direction-cube(4)`, a short name (`Q3`, `K5`,
//! `C6`), or a path to an edge-list file.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use cubehom::graph::{
    complete, complete_bipartite, cycle, cycle_blowup, direction_colouring, greedy_proper_colouring,
    hypercube, path, random, read_colouring, read_edge_list, set_graph, star,
};
use cubehom::scalar::parse_rational;
use cubehom::{EdgeColouring, Error, Graph, Result};

/// A parsed host, with the colouring it comes with, if any.
pub struct Host {
    pub graph: Graph,
    pub colouring: Option<EdgeColouring>,
}

fn bad(text: &str, why: impl std::fmt::Display) -> Error {
    Error::Input(format!("cannot read graph description {text:?}: {why}"))
}

fn split_call(text: &str) -> Option<(&str, Vec<&str>)> {
    let open = text.find('(')?;
    let inner = text[open + 1..].strip_suffix(')')?;
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::trim).collect()
    };
    Some((text[..open].trim(), args))
}

fn short_name(text: &str) -> Option<(&str, Vec<&str>)> {
    let (head, digits) = text.split_at(1);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let name = match head {
        "Q" => "hypercube",
        "K" => "complete",
        "C" => "cycle",
        "P" => "path",
        _ => return None,
    };
    Some((name, vec![digits]))
}

fn arg<T: std::str::FromStr>(text: &str, args: &[&str], i: usize) -> Result<T> {
    let raw = args.get(i).ok_or_else(|| bad(text, format!("missing argument {}", i + 1)))?;
    raw.parse().map_err(|_| bad(text, format!("argument {raw:?} is not a number")))
}

fn arity(text: &str, args: &[&str], allowed: &[usize]) -> Result<()> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(bad(text, format!("expected {allowed:?} arguments, found {}", args.len())))
    }
}

/// Parses a description; `seed` fills in an omitted random-graph seed.
pub fn parse_host(text: &str, seed: u64) -> Result<Host> {
    let text = text.trim();
    let call = split_call(text).or_else(|| short_name(text));
    let Some((name, args)) = call else {
        if text == "triangle-rainbow" {
            let g = complete(3);
            let c = EdgeColouring::new(&g, [(0, 1, 0), (1, 2, 1), (0, 2, 2)])?;
            return Ok(Host {
                graph: g,
                colouring: Some(c),
            });
        }
        return read_host_file(Path::new(text));
    };
    let plain = |graph: Graph| Host {
        graph,
        colouring: None,
    };
    let host = match name {
        "hypercube" => {
            arity(text, &args, &[1])?;
            plain(hypercube(arg(text, &args, 0)?)?)
        }
        "direction-cube" | "direction-coloured-cube" => {
            arity(text, &args, &[1])?;
            let (graph, c) = direction_colouring(arg(text, &args, 0)?)?;
            Host {
                graph,
                colouring: Some(c),
            }
        }
        "setgraph" => {
            arity(text, &args, &[2])?;
            plain(set_graph(arg(text, &args, 0)?, arg(text, &args, 1)?)?)
        }
        "random" => {
            arity(text, &args, &[2, 3])?;
            let p = parse_rational(args[1])?;
            let s = if args.len() == 3 { arg(text, &args, 2)? } else { seed };
            plain(random(arg(text, &args, 0)?, &p, s)?)
        }
        "complete" => {
            arity(text, &args, &[1])?;
            plain(complete(arg(text, &args, 0)?))
        }
        "complete-bipartite" => {
            arity(text, &args, &[2])?;
            plain(complete_bipartite(arg(text, &args, 0)?, arg(text, &args, 1)?))
        }
        "cycle" => {
            arity(text, &args, &[1])?;
            plain(cycle(arg(text, &args, 0)?)?)
        }
        "path" => {
            arity(text, &args, &[1])?;
            plain(path(arg(text, &args, 0)?))
        }
        "star" => {
            arity(text, &args, &[1])?;
            plain(star(arg(text, &args, 0)?))
        }
        "blowup" => {
            arity(text, &args, &[2])?;
            plain(cycle_blowup(arg(text, &args, 0)?, arg(text, &args, 1)?)?)
        }
        other => return Err(bad(text, format!("unknown generator {other:?}"))),
    };
    Ok(host)
}

fn read_host_file(path: &Path) -> Result<Host> {
    let file = File::open(path)
        .map_err(|e| Error::Input(format!("cannot open graph file {}: {e}", path.display())))?;
    let graph = read_edge_list(BufReader::new(file))?;
    Ok(Host {
        graph,
        colouring: None,
    })
}

pub fn read_colouring_file(graph: &Graph, path: &Path) -> Result<EdgeColouring> {
    let file = File::open(path)
        .map_err(|e| Error::Input(format!("cannot open colouring file {}: {e}", path.display())))?;
    read_colouring(graph, BufReader::new(file))
}

/// The colouring from a file, else the host's own, else a seeded greedy
/// proper colouring.
pub fn colouring_for(host: &Host, file: Option<&Path>, seed: u64) -> Result<EdgeColouring> {
    match (file, &host.colouring) {
        (Some(path), _) => read_colouring_file(&host.graph, path),
        (None, Some(c)) => Ok(c.clone()),
        (None, None) => Ok(greedy_proper_colouring(&host.graph, seed)),
    }
}
