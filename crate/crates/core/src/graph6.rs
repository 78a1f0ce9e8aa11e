//! graph6 encoding and decoding.
//!
//! The vertex count uses the one-byte form for `n <= 62` and the four-byte
//! form (`~` followed by 18 bits) above that. The upper triangle of the
//! adjacency matrix is read column by column, six bits per printable byte.

use thiserror::Error;

use crate::graph::{full_mask, Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#04x} outside the graph6 range 63..=126")]
    BadByte(u8),
    #[error("graph6 header declares {0} vertices, at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("graph6 body has {found} bytes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits at the end of the graph6 body")]
    Padding,
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let col = g.neighbor_mask(j);
        for i in 0..j {
            acc = (acc << 1) | (col >> i & 1) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&first, rest) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    let value = |b: u8| {
        if (63..=126).contains(&b) {
            Ok(b - 63)
        } else {
            Err(Graph6Error::BadByte(b))
        }
    };
    let (n, body) = if first == 126 {
        if rest.first() == Some(&126) {
            return Err(Graph6Error::TooLarge(usize::MAX));
        }
        if rest.len() < 3 {
            return Err(Graph6Error::Length { expected: 3, found: rest.len() });
        }
        let mut n = 0usize;
        for &b in &rest[..3] {
            n = (n << 6) | value(b)? as usize;
        }
        (n, &rest[3..])
    } else {
        (value(first)? as usize, rest)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length { expected, found: body.len() });
    }
    let mut adj = vec![0u64; n];
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = value(body[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            k += 1;
            if k == total_bits {
                break 'outer;
            }
        }
    }
    if total_bits % 6 != 0 {
        let last = value(*body.last().expect("nonempty body"))?;
        let pad = 6 - total_bits % 6;
        if last & full_mask(pad) as u8 != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    for &b in body {
        value(b)?;
    }
    Ok(Graph::from_adjacency(adj))
}

/// Graphs serialize as their graph6 string.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&encode(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        decode(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // edges a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&Graph::complete(5).unwrap()), "D~{");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::from_edges(2, &[(0, 1)]).unwrap()), "A_");
    }

    #[test]
    fn long_header() {
        let g = Graph::path(63).unwrap();
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("D~"), Err(Graph6Error::Length { expected: 2, found: 1 }));
        assert_eq!(decode("A`"), Err(Graph6Error::Padding));
        assert!(matches!(decode("D Q"), Err(Graph6Error::BadByte(b' '))));
        assert!(matches!(decode("~?@@"), Err(Graph6Error::TooLarge(65))));
        assert_eq!(decode(">>graph6<<A_\n").unwrap().edge_count(), 1);
    }

    proptest! {
        #[test]
        fn roundtrip(n in 0usize..=64, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                    if state & 3 == 0 { edges.push((u, v)); }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
