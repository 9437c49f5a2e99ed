//! graph6 encoding.
//!
//! Size header: one byte `63 + n` for `n <= 62`, otherwise `126` followed by
//! three bytes carrying `n` in big-endian 6-bit groups. The body is the
//! upper triangle read column by column, `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six bits per byte, most significant bit first, each byte offset
//! by 63. Padding bits in the last byte are zero.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed size header")]
    BadHeader,
    #[error("byte {byte:#04x} at position {pos} is outside the graph6 range")]
    BadByte { pos: usize, byte: u8 },
    #[error("expected {expected} body bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} unexpected bytes after the body")]
    TrailingData(usize),
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * (n - 1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { pos, byte });
        }
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= 62 {
            return Err(Graph6Error::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n == 0 || n > crate::graph::MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(n).into());
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData(body.len() - expected));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Graph6Error::NonzeroPadding);
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        // K_3: bits 111 -> 111000 -> 56 + 63 = 'w'
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(to_graph6(&Graph::complete(2).unwrap()), "A_");
        // P_4 = 0-1-2-3: bits (0,1)=1 (0,2)=0 (1,2)=1 (0,3)=0 (1,3)=0 (2,3)=1 -> 101001 = 41
        assert_eq!(to_graph6(&Graph::path(4).unwrap()), "Ch");
    }

    #[test]
    fn long_header() {
        let g = Graph::cycle(64).unwrap();
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63]);
        assert_eq!(from_graph6(&s).unwrap(), g);
        let g = Graph::path(63).unwrap();
        assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(from_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(from_graph6("D"), Err(Graph6Error::Truncated { .. })));
        assert!(matches!(from_graph6("Bww"), Err(Graph6Error::TrailingData(1))));
        assert!(matches!(from_graph6("B w"), Err(Graph6Error::BadByte { pos: 1, .. })));
        assert_eq!(from_graph6("Bx"), Err(Graph6Error::NonzeroPadding));
        assert!(matches!(from_graph6("?"), Err(Graph6Error::Graph(_))));
        assert_eq!(from_graph6("~??"), Err(Graph6Error::BadHeader));
        assert!(matches!(from_graph6("~?A?"), Err(Graph6Error::Graph(_))));
        assert_eq!(from_graph6(">>graph6<<Bw").unwrap(), Graph::complete(3).unwrap());
    }
}
