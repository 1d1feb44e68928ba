//! graph6 encoding: the order as `N(n)` followed by the upper adjacency
//! triangle in column-major order (`(0,1),(0,2),(1,2),(0,3),...`), packed
//! six bits per byte, each byte offset by 63.
//!
//! The one-byte order prefix covers `n <= 62`; the four-byte form
//! (`126` followed by 18 bits) is accepted up to [`MAX_VERTICES`].

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, MAX_VERTICES};

const SHORT_MAX: usize = 62;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(s: &str) -> Result<Graph> {
    decode_bytes(s.trim_end_matches(['\n', '\r']).as_bytes())
}

pub fn decode_bytes(bytes: &[u8]) -> Result<Graph> {
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::malformed(format!(
            "graph6 byte {b} outside 63..=126"
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::malformed("empty graph6 string")),
        [126, 126, ..] => {
            return Err(Error::malformed(
                "graph6 8-byte order form is not supported",
            ))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::malformed("truncated graph6 order field"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::malformed(format!(
            "graph6 order {n} exceeds the supported maximum {MAX_VERTICES}"
        )));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::malformed(format!(
            "graph6 body has {} bytes, expected {expected} for {n} vertices",
            body.len()
        )));
    }
    let mut b = GraphBuilder::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    // Padding bits must be zero.
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::malformed("nonzero graph6 padding bits"));
        }
    }
    Ok(b.build())
}
