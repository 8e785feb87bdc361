//! Trace files: one event per line, propositions separated by spaces or
//! commas. A blank line or `{}` is the empty event; `#` starts a comment.

use rltl_core::{Alphabet, Letter};

/// Parses one trace line; `Ok(None)` for comments.
pub fn parse_event(line: &str, alphabet: &Alphabet) -> Result<Option<Letter>, String> {
    let text = line.trim();
    if text.starts_with('#') {
        return Ok(None);
    }
    let inner = match (text.strip_prefix('{'), text.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => text,
        _ => return Err(format!("unbalanced braces in `{text}`")),
    };
    let names = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
    alphabet.letter(names).map(Some).map_err(|e| e.to_string())
}

/// Parses a whole trace, reporting the 1-based line number of the first
/// malformed event.
pub fn parse_trace(text: &str, alphabet: &Alphabet) -> Result<Vec<Letter>, String> {
    let mut events = Vec::new();
    for (n, line) in text.lines().enumerate() {
        match parse_event(line, alphabet) {
            Ok(Some(letter)) => events.push(letter),
            Ok(None) => {}
            Err(e) => return Err(format!("line {}: {e}", n + 1)),
        }
    }
    Ok(events)
}

/// Parses a prefix written inline as space-separated `{a,b}` groups.
pub fn parse_inline(text: &str, alphabet: &Alphabet) -> Result<Vec<Letter>, String> {
    let mut events = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(format!("expected `{{` at `{rest}`"));
        };
        let Some(end) = body.find('}') else {
            return Err(format!("missing `}}` in `{rest}`"));
        };
        let names = body[..end].split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
        events.push(alphabet.letter(names).map_err(|e| e.to_string())?);
        rest = body[end + 1..].trim_start();
    }
    Ok(events)
}
