//! The graph6 text format: an order prefix followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    Empty,
    IllegalByte { offset: usize, byte: u8 },
    Truncated { offset: usize },
    Length { expected: usize, found: usize },
    NonZeroPadding { offset: usize },
    OrderTooLarge { order: usize },
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::Empty => write!(f, "empty graph6 line"),
            Graph6Error::IllegalByte { offset, byte } => {
                write!(f, "illegal graph6 byte 0x{byte:02x} at offset {offset}")
            }
            Graph6Error::Truncated { offset } => write!(f, "graph6 order prefix truncated at offset {offset}"),
            Graph6Error::Length { expected, found } => {
                write!(f, "graph6 body has {found} bytes, expected {expected}")
            }
            Graph6Error::NonZeroPadding { offset } => {
                write!(f, "non-zero padding bits in final graph6 byte at offset {offset}")
            }
            Graph6Error::OrderTooLarge { order } => {
                write!(f, "graph6 order {order} exceeds the supported maximum {MAX_ORDER}")
            }
        }
    }
}

impl core::error::Error for Graph6Error {}

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub(crate) fn encode_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(8 + bits.div_ceil(6));
    push_order(&mut out, n);
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
    out
}

/// Encodes `g` as a graph6 line (without a trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    // every byte is in 63..=126
    String::from_utf8(encode_bytes(g)).expect("graph6 output is ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and trailing
/// line terminator are accepted; offsets in errors count from the start of `line`.
pub fn decode_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let trimmed = line.trim_end_matches(['\n', '\r']);
    let (skip, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    decode_bytes(body, skip)
}

pub(crate) fn decode_bytes(bytes: &[u8], base: usize) -> Result<Graph, Graph6Error> {
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::IllegalByte { offset: base + i, byte: b });
        }
    }
    let digit = |i: usize| -> Result<usize, Graph6Error> {
        bytes.get(i).map(|&b| (b - 63) as usize).ok_or(Graph6Error::Truncated { offset: base + i })
    };
    let (n, start) = if bytes[0] < 126 {
        (digit(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        (digit(1)? << 12 | digit(2)? << 6 | digit(3)?, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = n << 6 | digit(i)?;
        }
        (n, 8)
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { order: n });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let body = &bytes[start..];
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length { expected, found: body.len() });
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding { offset: base + start + expected - 1 });
        }
    }
    let mut g = Graph::empty(n).expect("order checked above");
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - 63;
            if chunk >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}
