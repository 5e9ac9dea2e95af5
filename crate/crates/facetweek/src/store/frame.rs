//! Record framing of the log file.
//!
//! ```text
//! file   := MAGIC frame*
//! frame  := len:u32le crc:u32le payload[len]
//! ```
//! `crc` is the CRC-32 (IEEE) of the payload, which is one UTF-8 JSON
//! document. A frame that runs past end of file or fails its checksum as the
//! very last frame is a torn write and is discarded on open.

use std::io::{self, Write};

pub const MAGIC: &[u8; 8] = b"FWLOG1\n\0";
pub const HEADER_LEN: usize = 8;
/// Upper bound on a single payload; larger lengths mean a corrupt header.
pub const MAX_PAYLOAD: u32 = 16 * 1024 * 1024;

pub fn encode(payload: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
    out.extend_from_slice(&(payload.len() as u32).to_le_bytes());
    out.extend_from_slice(&crc32fast::hash(payload).to_le_bytes());
    out.extend_from_slice(payload);
    out
}

pub fn write_frame(w: &mut impl Write, payload: &[u8]) -> io::Result<()> {
    w.write_all(&encode(payload))
}

#[derive(Debug, PartialEq, Eq)]
pub enum Scan<'a> {
    Frame { payload: &'a [u8], next: usize },
    End,
    /// Incomplete or damaged frame at `offset` with nothing valid after it.
    Torn { offset: usize },
    /// Damaged frame followed by more data.
    Corrupt { offset: usize },
}

/// Reads the frame starting at `offset`.
pub fn scan(buf: &[u8], offset: usize) -> Scan<'_> {
    let rest = &buf[offset..];
    if rest.is_empty() {
        return Scan::End;
    }
    if rest.len() < HEADER_LEN {
        return Scan::Torn { offset };
    }
    let len = u32::from_le_bytes(rest[0..4].try_into().unwrap());
    let crc = u32::from_le_bytes(rest[4..8].try_into().unwrap());
    let end = HEADER_LEN + len as usize;
    if len > MAX_PAYLOAD || rest.len() < end {
        // A length that overruns the file can only come from the final,
        // partially written frame.
        return Scan::Torn { offset };
    }
    let payload = &rest[HEADER_LEN..end];
    if crc32fast::hash(payload) != crc {
        return if rest.len() == end { Scan::Torn { offset } } else { Scan::Corrupt { offset } };
    }
    Scan::Frame { payload, next: offset + end }
}
