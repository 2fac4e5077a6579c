//! Line-oriented text formats for complexes and partitions.
//!
//! A complex file starts with `dim <d>` and lists one maximal face per line.
//! `#` starts a comment and blank lines are ignored. Lines of the form
//! `#@ class a b c` are directives carrying a partition alongside a complex.

use crate::complex::Complex;
use crate::error::{Error, Result};

/// A complex together with an optional partition given by labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub complex: Complex,
    pub classes: Option<Vec<Vec<String>>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let mut dim: Option<i64> = None;
    let mut facets: Vec<Vec<String>> = Vec::new();
    let mut classes: Vec<Vec<String>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#@") {
            let mut words = rest.split_whitespace();
            match words.next() {
                Some("class") => {
                    let class: Vec<String> = words.map(str::to_string).collect();
                    if class.is_empty() {
                        return Err(parse_err(line, "empty class directive"));
                    }
                    classes.push(class);
                }
                Some(other) => return Err(parse_err(line, format!("unknown directive `{other}`"))),
                None => return Err(parse_err(line, "empty directive")),
            }
            continue;
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if dim.is_none() {
            if words.len() != 2 || words[0] != "dim" {
                return Err(parse_err(line, "expected header `dim <d>`"));
            }
            let d: i64 = words[1]
                .parse()
                .map_err(|_| parse_err(line, format!("bad dimension `{}`", words[1])))?;
            if d < -1 {
                return Err(parse_err(line, "dimension below -1"));
            }
            dim = Some(d);
            continue;
        }
        let d = dim.unwrap_or(-1);
        if words.len() as i64 > d + 1 {
            return Err(parse_err(
                line,
                format!("face has {} vertices but dim is {d}", words.len()),
            ));
        }
        facets.push(words.into_iter().map(str::to_string).collect());
    }
    let d = dim.ok_or_else(|| parse_err(0, "missing `dim` header"))?;
    let complex = if facets.is_empty() {
        if d != -1 {
            return Err(parse_err(0, format!("no faces but dim is {d}")));
        }
        Complex::empty()
    } else {
        let c = Complex::from_facets(&facets)?;
        if c.dim().map(|x| x as i64) != Some(d) {
            return Err(parse_err(
                0,
                format!(
                    "header says dim {d} but faces have dim {}",
                    c.dim().unwrap_or(0)
                ),
            ));
        }
        c
    };
    Ok(Bundle {
        complex,
        classes: if classes.is_empty() {
            None
        } else {
            Some(classes)
        },
    })
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    Ok(parse_bundle(text)?.complex)
}

/// Canonical text: header, then maximal faces in face order.
pub fn write_complex(c: &Complex) -> String {
    let mut out = format!("dim {}\n", c.dim().map(|d| d as i64).unwrap_or(-1));
    for f in c.maximal_faces() {
        out.push_str(&c.face_labels(f).join(" "));
        out.push('\n');
    }
    out
}

pub fn write_bundle(c: &Complex, classes: &[Vec<String>]) -> String {
    let mut out = write_complex(c);
    for class in classes {
        out.push_str("#@ class ");
        out.push_str(&class.join(" "));
        out.push('\n');
    }
    out
}

/// One class per line.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<String>>> {
    let mut classes = Vec::new();
    for raw in text.lines() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            classes.push(content.split_whitespace().map(str::to_string).collect());
        }
    }
    if classes.is_empty() {
        return Err(parse_err(0, "partition has no classes"));
    }
    Ok(classes)
}

pub fn write_partition(classes: &[Vec<String>]) -> String {
    classes.iter().map(|c| c.join(" ") + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# a torus\ndim 2\n\n0 1 3\n1 2 4 # trailing\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(c.f_vector(), vec![5, 6, 2]);
        let again = parse_complex(&write_complex(&c)).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn empty_complex() {
        let c = parse_complex("dim -1\n").unwrap();
        assert!(c.is_empty());
        assert_eq!(write_complex(&c), "dim -1\n");
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            parse_complex("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_complex("dim 1\n0 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_complex("dim 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_complex("").is_err());
        assert!(matches!(
            parse_complex("dim 1\n0 0\n"),
            Err(Error::DuplicateVertex(_))
        ));
    }

    #[test]
    fn bundle_directives() {
        let c = parse_complex("dim 1\na b\nb c\n").unwrap();
        let classes = vec![
            vec!["a".to_string(), "b".to_string()],
            vec!["c".to_string()],
        ];
        let text = write_bundle(&c, &classes);
        let b = parse_bundle(&text).unwrap();
        assert_eq!(b.complex, c);
        assert_eq!(b.classes, Some(classes));
    }

    #[test]
    fn partitions() {
        let p = parse_partition("a b\n\nc # last\n").unwrap();
        assert_eq!(p, vec![vec!["a", "b"], vec!["c"]]);
        assert_eq!(write_partition(&p), "a b\nc\n");
        assert!(parse_partition("# nothing\n").is_err());
    }
}
