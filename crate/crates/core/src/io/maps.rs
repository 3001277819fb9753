//! `SCRN` container: 20-byte little-endian header (magic, version, height,
//! width, downsample) followed by six f32 channels, channel-major and
//! row-major within each channel, in the order f1..f6.

use crate::error::{Error, Result};
use crate::field::{AttributeMaps, NUM_CHANNELS};

pub const MAGIC: &[u8; 4] = b"SCRN";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 20;

/// Serializes the maps; values are narrowed to f32.
pub fn write_maps(maps: &AttributeMaps) -> Vec<u8> {
    let n = maps.height() * maps.width();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * NUM_CHANNELS * n);
    out.extend_from_slice(MAGIC);
    for v in [
        VERSION,
        maps.height() as u32,
        maps.width() as u32,
        maps.downsample() as u32,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for ch in maps.channels() {
        for &v in ch {
            out.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    out
}

fn u32_at(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

pub fn read_maps(bytes: &[u8]) -> Result<AttributeMaps> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(Error::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::BadHeader(format!(
            "header needs {HEADER_LEN} bytes, found {}",
            bytes.len()
        )));
    }
    let version = u32_at(bytes, 4);
    if version != VERSION {
        return Err(Error::BadVersion(version));
    }
    let (height, width, downsample) = (
        u32_at(bytes, 8) as usize,
        u32_at(bytes, 12) as usize,
        u32_at(bytes, 16) as usize,
    );
    if height == 0 || width == 0 || downsample == 0 {
        return Err(Error::BadHeader(format!(
            "dims {height}x{width} and downsample {downsample} must be >= 1"
        )));
    }
    let payload = &bytes[HEADER_LEN..];
    let expected = height
        .checked_mul(width)
        .and_then(|n| n.checked_mul(4 * NUM_CHANNELS))
        .ok_or_else(|| Error::BadHeader(format!("dims {height}x{width} overflow")))?;
    if payload.len() < expected {
        return Err(Error::TruncatedPayload {
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Error::TrailingBytes(payload.len() - expected));
    }
    let n = height * width;
    let channels: [Vec<f64>; NUM_CHANNELS] = std::array::from_fn(|ch| {
        payload[ch * 4 * n..(ch + 1) * 4 * n]
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().unwrap()) as f64)
            .collect()
    });
    AttributeMaps::from_channels(height, width, downsample, channels)
}
