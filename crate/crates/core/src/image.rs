use crate::error::{Error, Result};

/// Row-major, channel-interleaved floating-point raster.
///
/// Pixel `(col, row)` sits at the continuous coordinate `(col, row)`.
/// Stored values are nominally in `[0, 1]`; intermediate arithmetic may leave
/// that range and values are clamped only when quantized for output.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f64>,
}

impl ImageBuffer {
    pub fn new(height: usize, width: usize, channels: usize) -> Result<Self> {
        Self::check_dims(height, width, channels)?;
        Ok(Self {
            height,
            width,
            channels,
            data: vec![0.0; height * width * channels],
        })
    }

    pub fn from_vec(height: usize, width: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        Self::check_dims(height, width, channels)?;
        if data.len() != height * width * channels {
            return Err(Error::ShapeMismatch(format!(
                "{}x{}x{} image needs {} values, got {}",
                height,
                width,
                channels,
                height * width * channels,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("image contains non-finite values".into()));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    fn check_dims(height: usize, width: usize, channels: usize) -> Result<()> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidArgument(format!(
                "image dims must be >= 1, got {height}x{width}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidArgument(format!(
                "images have 1 or 3 channels, got {channels}"
            )));
        }
        Ok(())
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize, ch: usize) -> f64 {
        self.data[(row * self.width + col) * self.channels + ch]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, ch: usize, v: f64) {
        self.data[(row * self.width + col) * self.channels + ch] = v;
    }

    /// True when every value lies in `[0, 1]`.
    pub fn is_normalized(&self) -> bool {
        self.data.iter().all(|v| (0.0..=1.0).contains(v))
    }

    /// Mean absolute difference over the window `rows x cols`.
    pub fn mean_abs_diff(
        &self,
        other: &ImageBuffer,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Result<f64> {
        if (self.height, self.width, self.channels) != (other.height, other.width, other.channels)
        {
            return Err(Error::ShapeMismatch(format!(
                "{}x{}x{} vs {}x{}x{}",
                self.height, self.width, self.channels, other.height, other.width, other.channels
            )));
        }
        let mut sum = 0.0;
        let mut n = 0usize;
        for r in rows.start..rows.end.min(self.height) {
            for c in cols.start..cols.end.min(self.width) {
                for ch in 0..self.channels {
                    sum += (self.get(r, c, ch) - other.get(r, c, ch)).abs();
                    n += 1;
                }
            }
        }
        if n == 0 {
            return Err(Error::InvalidArgument("empty comparison window".into()));
        }
        Ok(sum / n as f64)
    }

    /// Mean absolute difference over the central `fraction` of each axis.
    pub fn central_mae(&self, other: &ImageBuffer, fraction: f64) -> Result<f64> {
        let window = |len: usize| {
            let margin = ((1.0 - fraction) * 0.5 * len as f64).round() as usize;
            margin..len.saturating_sub(margin).max(margin + 1)
        };
        self.mean_abs_diff(other, window(self.height), window(self.width))
    }
}
