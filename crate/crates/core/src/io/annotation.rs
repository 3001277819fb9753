//! Annotation JSON:
//!
//! ```json
//! {"image": "word.png", "width": 256, "height": 64,
//!  "instances": [{"chars": [[[x, y], [x, y], [x, y], [x, y]]], "transcript": "AB"}]}
//! ```
//!
//! Corners are listed top-left, top-right, bottom-right, bottom-left.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{CharQuad, Point2, TextInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationDoc {
    pub image: String,
    pub width: u32,
    pub height: u32,
    pub instances: Vec<TextInstance>,
}

#[derive(Serialize)]
struct InstanceOut<'a> {
    chars: Vec<[[f64; 2]; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transcript: Option<&'a str>,
}

#[derive(Serialize)]
struct DocOut<'a> {
    image: &'a str,
    width: u32,
    height: u32,
    instances: Vec<InstanceOut<'a>>,
}

/// Pretty-printed JSON. Coordinates use the shortest decimal form that
/// reads back to the same f64.
pub fn write_annotation(doc: &AnnotationDoc) -> Vec<u8> {
    let out = DocOut {
        image: &doc.image,
        width: doc.width,
        height: doc.height,
        instances: doc
            .instances
            .iter()
            .map(|inst| InstanceOut {
                chars: inst
                    .chars
                    .iter()
                    .map(|q| q.corners.map(|p| [p.x, p.y]))
                    .collect(),
                transcript: inst.transcript.as_deref(),
            })
            .collect(),
    };
    let mut bytes = serde_json::to_vec_pretty(&out).expect("annotation is always serializable");
    bytes.push(b'\n');
    bytes
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, name: &str, path: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| schema(join(path, name), "missing field"))
}

fn join(path: &str, name: &str) -> String {
    if path.is_empty() {
        name.to_string()
    } else {
        format!("{path}.{name}")
    }
}

fn dimension(v: &Value, path: &str) -> Result<u32> {
    v.as_u64()
        .filter(|&n| n >= 1 && n <= u32::MAX as u64)
        .map(|n| n as u32)
        .ok_or_else(|| schema(path, "expected a positive integer"))
}

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| schema(path, "expected a finite number"))
}

fn array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(path, "expected an array"))?;
    if let Some(n) = len {
        if arr.len() != n {
            return Err(schema(
                path,
                format!("expected {n} elements, found {}", arr.len()),
            ));
        }
    }
    Ok(arr)
}

pub fn read_annotation(bytes: &[u8]) -> Result<AnnotationDoc> {
    let root: Value =
        serde_json::from_slice(bytes).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("$", "expected an object"))?;
    let image = field(obj, "image", "")?
        .as_str()
        .ok_or_else(|| schema("image", "expected a string"))?
        .to_string();
    let width = dimension(field(obj, "width", "")?, "width")?;
    let height = dimension(field(obj, "height", "")?, "height")?;

    let mut instances = Vec::new();
    for (i, inst) in array(field(obj, "instances", "")?, "instances", None)?
        .iter()
        .enumerate()
    {
        let ipath = format!("instances[{i}]");
        let iobj = inst
            .as_object()
            .ok_or_else(|| schema(&ipath, "expected an object"))?;
        let cpath = join(&ipath, "chars");
        let chars_v = array(field(iobj, "chars", &ipath)?, &cpath, None)?;
        if chars_v.is_empty() {
            return Err(schema(&cpath, "expected at least one character"));
        }
        let mut chars = Vec::with_capacity(chars_v.len());
        for (j, q) in chars_v.iter().enumerate() {
            let qpath = format!("{cpath}[{j}]");
            let corners_v = array(q, &qpath, Some(4))?;
            let mut corners = [Point2::default(); 4];
            for (k, c) in corners_v.iter().enumerate() {
                let ppath = format!("{qpath}[{k}]");
                let xy = array(c, &ppath, Some(2))?;
                let x = number(&xy[0], &format!("{ppath}[0]"))?;
                let y = number(&xy[1], &format!("{ppath}[1]"))?;
                if !(0.0..=width as f64).contains(&x) || !(0.0..=height as f64).contains(&y) {
                    return Err(Error::Bounds {
                        path: ppath,
                        x,
                        y,
                        width: width as f64,
                        height: height as f64,
                    });
                }
                corners[k] = Point2::new(x, y);
            }
            chars.push(CharQuad { corners });
        }
        let transcript = match iobj.get("transcript") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(schema(join(&ipath, "transcript"), "expected a string")),
        };
        instances.push(TextInstance { chars, transcript });
    }
    Ok(AnnotationDoc {
        image,
        width,
        height,
        instances,
    })
}
