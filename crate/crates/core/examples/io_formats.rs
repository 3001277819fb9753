//! Writes and reads back the three file formats: annotation JSON, SCRN
//! attribute maps and 8-bit PNG.

use std::error::Error;

use scrn::io::{read_annotation, read_image, read_maps, write_annotation, write_image, write_maps, AnnotationDoc, HEADER_LEN};
use scrn::{render_gt_maps, CharQuad, TextInstance};

fn main() -> Result<(), Box<dyn Error>> {
    let word = TextInstance::new(vec![
        CharQuad::rect(12.0, 10.0, 16.0, 24.0),
        CharQuad::rect(28.0, 10.0, 16.0, 24.0),
    ])
    .with_transcript("OK");
    let doc = AnnotationDoc {
        image: "ok.png".into(),
        width: 64,
        height: 48,
        instances: vec![word],
    };
    let json = write_annotation(&doc);
    print!("{}", String::from_utf8_lossy(&json));
    assert_eq!(read_annotation(&json)?, doc);

    let maps = render_gt_maps(&doc.instances, 12, 16, 4)?;
    let bytes = write_maps(&maps);
    println!(
        "SCRN: {} bytes = {HEADER_LEN}-byte header + 6 x {} x {} x 4",
        bytes.len(),
        maps.height(),
        maps.width()
    );
    assert_eq!(write_maps(&read_maps(&bytes)?), bytes);

    let mut img = scrn::ImageBuffer::new(2, 3, 1)?;
    img.set(0, 1, 0, 0.5);
    img.set(1, 2, 0, 1.0);
    let png = write_image(&img);
    let back = read_image(&png)?;
    println!("PNG: {} bytes, pixel (0,1) reads back as {:.4}", png.len(), back.get(0, 1, 0));

    for junk in [&b"SCRN"[..], b"{}", b"\x89PNG"] {
        println!("{:?}: {}", String::from_utf8_lossy(junk), read_maps(junk).err().map_or("ok".into(), |e| e.to_string()));
    }
    Ok(())
}
