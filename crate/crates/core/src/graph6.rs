//! graph6 encoding (short form, orders 1 through 62).
//!
//! A line is one header byte `63 + n` followed by the upper triangle of the
//! adjacency matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed big-endian into 6-bit groups, each offset by 63, zero padded.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable in the short form.
pub const MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("graph6 long form (order > {MAX_ORDER}) is not supported")]
    LongForm,
    #[error("order 0 is not supported")]
    ZeroOrder,
    #[error("character {found:?} at byte {position} is outside the graph6 range")]
    BadCharacter { position: usize, found: char },
    #[error("expected {expected} data bytes for order {order}, found {found}")]
    Length {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("padding bits after the adjacency data are not zero")]
    NonZeroPadding,
    #[error("order {0} exceeds the short-form limit of {MAX_ORDER}")]
    OrderTooLarge(usize),
}

fn data_len(order: usize) -> usize {
    (order * order.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 line. Surrounding whitespace is ignored, as is an
/// optional `>>graph6<<` header.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let (&head, data) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for (position, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadCharacter {
                position,
                found: b as char,
            });
        }
    }
    if head == 126 {
        return Err(Graph6Error::LongForm);
    }
    let order = (head - 63) as usize;
    if order == 0 {
        return Err(Graph6Error::ZeroOrder);
    }
    let expected = data_len(order);
    if data.len() != expected {
        return Err(Graph6Error::Length {
            order,
            expected,
            found: data.len(),
        });
    }

    let mut edges = BTreeSet::new();
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.insert((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = data[k / 6] - 63;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph::from_edge_set(order, edges))
}

/// Encodes a graph as a graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let order = g.order();
    if order > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(order));
    }
    let mut out = Vec::with_capacity(1 + data_len(order));
    out.push(63 + order as u8);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
