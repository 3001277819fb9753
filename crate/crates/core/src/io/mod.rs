//! File formats: annotation JSON, the binary attribute-map container and
//! 8-bit PNG images.

mod annotation;
mod maps;
mod raster;

pub use annotation::{read_annotation, write_annotation, AnnotationDoc};
pub use maps::{read_maps, write_maps, HEADER_LEN, MAGIC, VERSION};
pub use raster::{read_image, write_image};
