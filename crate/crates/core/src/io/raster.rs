//! 8-bit grayscale and RGB PNG.

use std::io::Cursor;

use png::{BitDepth, ColorType, Decoder, Encoder};

use crate::error::{Error, Result};
use crate::image::ImageBuffer;

/// Largest decoded image accepted, in bytes.
const MAX_DECODED_BYTES: usize = 256 << 20;

pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Encodes with values clamped to `[0, 1]` and quantized to `round(v * 255)`.
pub fn write_image(img: &ImageBuffer) -> Vec<u8> {
    let mut out = Vec::new();
    {
        let mut enc = Encoder::new(&mut out, img.width() as u32, img.height() as u32);
        enc.set_color(if img.channels() == 1 {
            ColorType::Grayscale
        } else {
            ColorType::Rgb
        });
        enc.set_depth(BitDepth::Eight);
        let bytes: Vec<u8> = img.data().iter().map(|&v| quantize(v)).collect();
        let mut writer = enc.write_header().expect("writing to a Vec cannot fail");
        writer
            .write_image_data(&bytes)
            .expect("buffer length matches the header");
    }
    out
}

pub fn read_image(bytes: &[u8]) -> Result<ImageBuffer> {
    let mut decoder = Decoder::new(Cursor::new(bytes));
    decoder.set_limits(png::Limits {
        bytes: MAX_DECODED_BYTES,
    });
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::Decode(e.to_string()))?;
    let info = reader.info();
    let channels = match (info.color_type, info.bit_depth) {
        (ColorType::Grayscale, BitDepth::Eight) => 1,
        (ColorType::Rgb, BitDepth::Eight) => 3,
        (ct, bd) => {
            return Err(Error::UnsupportedFormat(format!(
                "{ct:?} at {bd:?} bits; only 8-bit grayscale or RGB is read"
            )))
        }
    };
    let (width, height) = (info.width as usize, info.height as usize);
    let mut buf = vec![0u8; reader.output_buffer_size()];
    let frame = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::Decode(e.to_string()))?;
    let data: Vec<f64> = buf[..frame.buffer_size()]
        .iter()
        .map(|&b| b as f64 / 255.0)
        .collect();
    ImageBuffer::from_vec(height, width, channels, data)
        .map_err(|e| Error::Decode(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_8bit_values() {
        let data: Vec<f64> = (0..24).map(|i| (i * 11) as f64 / 255.0).collect();
        let img = ImageBuffer::from_vec(2, 4, 3, data).unwrap();
        assert_eq!(read_image(&write_image(&img)).unwrap(), img);
    }

    #[test]
    fn half_quantizes_to_128() {
        let img = ImageBuffer::from_vec(1, 1, 1, vec![0.5]).unwrap();
        let back = read_image(&write_image(&img)).unwrap();
        assert_eq!(quantize(0.5), 128);
        assert_eq!(back.get(0, 0, 0), 128.0 / 255.0);
    }

    #[test]
    fn sixteen_bit_is_unsupported() {
        let mut out = Vec::new();
        {
            let mut enc = Encoder::new(&mut out, 2, 1);
            enc.set_color(ColorType::Grayscale);
            enc.set_depth(BitDepth::Sixteen);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&[0, 1, 2, 3]).unwrap();
        }
        assert!(matches!(read_image(&out), Err(Error::UnsupportedFormat(_))));
        assert!(matches!(read_image(b"nope"), Err(Error::Decode(_))));
    }
}
