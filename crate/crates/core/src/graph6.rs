//! graph6 text codec.
//!
//! The order is written as `n + 63` for `n <= 62`, otherwise as `~` followed
//! by three 6-bit groups. The upper triangle is then emitted column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), six bits per byte, each byte
//! offset by 63 and the final group zero-padded.

use crate::error::{Error, Result};
use crate::graph::{check_order, Graph};

const OFFSET: u8 = 63;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn decode(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} outside 63..=126",
            bytes[pos]
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [b'~', b'~', ..] => {
            return Err(Error::Graph6(
                "orders beyond 258047 are not supported".into(),
            ))
        }
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated order header".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - OFFSET) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - OFFSET) as usize, rest),
    };
    check_order(n).map_err(|e| Error::Graph6(e.to_string()))?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for order {n}, found {}",
            body.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - OFFSET;
            if byte >> (5 - idx % 6) & 1 == 1 {
                rows[i] |= 1u64 << j;
                rows[j] |= 1u64 << i;
            }
            idx += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - OFFSET;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}
