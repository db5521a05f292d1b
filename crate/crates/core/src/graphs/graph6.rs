//! graph6 encoding: an order header followed by the upper triangle of the
//! adjacency matrix, column by column, packed into 6-bit chunks offset by 63.

use std::io::BufRead;

use crate::error::{Error, Graph6ErrorKind, Result};

use super::Graph;

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, kind: Graph6ErrorKind) -> Error {
    Error::Graph6 { offset, kind }
}

/// Parses a single graph6 line. A trailing `\n` or `\r\n` is tolerated,
/// as is the optional `>>graph6<<` header.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if body.is_empty() {
        return Err(err(skip, Graph6ErrorKind::Empty));
    }
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(skip + pos, Graph6ErrorKind::NonPrintable(body[pos])));
    }
    let (order, header_len) = decode_order(body).map_err(|(o, k)| err(skip + o, k))?;
    if order == 0 {
        return Err(err(skip, Graph6ErrorKind::ZeroOrder));
    }
    let nbits = order * (order - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() < nbytes {
        return Err(err(skip + body.len(), Graph6ErrorKind::Truncated));
    }
    if data.len() > nbytes {
        return Err(err(skip + header_len + nbytes, Graph6ErrorKind::TrailingGarbage));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (nbits..nbytes * 6).any(bit) {
        return Err(err(skip + header_len + nbytes - 1, Graph6ErrorKind::NonZeroPadding));
    }
    let mut g = Graph::empty(order);
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            if bit(k) {
                g.set(i, j);
                g.set(j, i);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_order(body: &[u8]) -> std::result::Result<(usize, usize), (usize, Graph6ErrorKind)> {
    let chunks = |from: usize, count: usize| -> std::result::Result<usize, (usize, Graph6ErrorKind)> {
        if body.len() < from + count {
            return Err((body.len(), Graph6ErrorKind::BadLength));
        }
        Ok(body[from..from + count].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    if body[0] != 126 {
        return Ok(((body[0] - 63) as usize, 1));
    }
    if body.get(1) == Some(&126) {
        let n = chunks(2, 6)?;
        if n <= 258047 {
            return Err((0, Graph6ErrorKind::BadLength));
        }
        return Ok((n, 8));
    }
    let n = chunks(1, 3)?;
    if n <= 62 {
        return Err((0, Graph6ErrorKind::BadLength));
    }
    Ok((n, 4))
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| (n >> (6 * k) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| (n >> (6 * k) & 63) as u8 + 63));
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Reads one graph per non-empty line. Errors carry the 1-based line number
/// in their message via [`Error::Precondition`] wrapping.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph>> {
    reader.lines().enumerate().filter_map(|(idx, line)| match line {
        Err(e) => Some(Err(Error::Io(e))),
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(parse_graph6(l.trim_end()).map_err(|e| match e {
            Error::Graph6 { offset, kind } => {
                Error::Precondition(format!("line {}: graph6 parse error at byte {offset}: {kind}", idx + 1))
            }
            other => other,
        })),
    })
}
