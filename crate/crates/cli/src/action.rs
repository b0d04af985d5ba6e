//! Action files for outer semidirect products:
//!
//! ```text
//! size_K = 3
//! size_Y = 2
//! base_y = 0
//! 0 1 2
//! 0 2 1
//! ```
//!
//! After the header come `size_Y` lines, each a permutation of
//! `0..size_K-1`; line `i` is the automorphism assigned to element `i` of
//! the acting heap.

use trusskit_core::semidirect::ActionTable;
use trusskit_core::Endomap;

use crate::format::ParseError;

pub fn parse_action(text: &str) -> Result<ActionTable, ParseError> {
    let mut size_k: Option<usize> = None;
    let mut size_y: Option<usize> = None;
    let mut base_y: Option<usize> = None;
    let mut maps: Vec<Endomap> = Vec::new();

    for (index, raw_line) in text.lines().enumerate() {
        let lineno = index + 1;
        let line = match raw_line.find('#') {
            Some(cut) => &raw_line[..cut],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some((key, value)) = trimmed.split_once('=') {
            let value: usize = value.trim().parse().map_err(|_| {
                ParseError {
                    line: lineno,
                    column: 1,
                    message: format!("bad header value {:?}", value.trim()),
                }
            })?;
            match key.trim() {
                "size_K" => size_k = Some(value),
                "size_Y" => size_y = Some(value),
                "base_y" => base_y = Some(value),
                other => {
                    return Err(ParseError {
                        line: lineno,
                        column: 1,
                        message: format!("unknown action header {other:?}"),
                    })
                }
            }
            continue;
        }
        let k = size_k.ok_or_else(|| ParseError {
            line: lineno,
            column: 1,
            message: "size_K must precede the permutation rows".into(),
        })?;
        let images: Result<Vec<usize>, _> =
            trimmed.split_whitespace().map(|t| t.parse()).collect();
        let images = images.map_err(|_| ParseError {
            line: lineno,
            column: 1,
            message: "permutation rows must be integers".into(),
        })?;
        if images.len() != k {
            return Err(ParseError {
                line: lineno,
                column: 1,
                message: format!("permutation row has {} entries, expected {k}", images.len()),
            });
        }
        let map = Endomap::new(k, images).map_err(|e| ParseError {
            line: lineno,
            column: 1,
            message: e.to_string(),
        })?;
        if !map.is_permutation() {
            return Err(ParseError {
                line: lineno,
                column: 1,
                message: "action row is not a permutation".into(),
            });
        }
        maps.push(map);
    }

    let size_y = size_y.ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "missing size_Y header".into(),
    })?;
    let base = base_y.ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "missing base_y header".into(),
    })?;
    if maps.len() != size_y {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: format!("expected {size_y} permutation rows, found {}", maps.len()),
        });
    }
    if base >= size_y {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: format!("base_y = {base} out of range for size_Y = {size_y}"),
        });
    }
    Ok(ActionTable { base, maps })
}

pub fn serialize_action(action: &ActionTable, size_k: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("size_K = {size_k}\n"));
    out.push_str(&format!("size_Y = {}\n", action.maps.len()));
    out.push_str(&format!("base_y = {}\n", action.base));
    for map in &action.maps {
        let row: Vec<String> = map.images().iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inversion_action() {
        let action = parse_action("size_K = 3\nsize_Y = 2\nbase_y = 0\n0 1 2\n0 2 1\n").unwrap();
        assert_eq!(action.base, 0);
        assert_eq!(action.maps.len(), 2);
        assert_eq!(action.maps[1].images(), &[0, 2, 1]);
        let text = serialize_action(&action, 3);
        assert_eq!(parse_action(&text).unwrap(), action);
    }

    #[test]
    fn rejects_non_permutations() {
        let err = parse_action("size_K = 3\nsize_Y = 1\nbase_y = 0\n0 0 1\n").unwrap_err();
        assert!(err.message.contains("not a permutation"));
    }
}
