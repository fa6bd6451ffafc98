//! Plain-text code and system files.
//!
//! Both formats share the header line `n=<int> k=<int> r=<int>` followed by
//! one body line per member: `r` space-separated symbols for a code word,
//! strictly increasing for a system member. UTF-8, LF line endings, no
//! duplicate lines. Malformed files are rejected with line numbers.

use std::path::Path;

use crate::turan::TuranSystem;
use crate::words::{Code, Word};
use crate::Error;

/// Header parameters carried by every file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: u32,
    pub k: u32,
    pub r: u32,
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8(bytes)
        .map_err(|e| parse_error(path, 0, format!("not UTF-8: {e}")))?;
    if let Some(pos) = text.find('\r') {
        let line = text[..pos].matches('\n').count() + 1;
        return Err(parse_error(path, line, "carriage return found; LF line endings required"));
    }
    Ok(text)
}

fn parse_header(path: &Path, line: &str) -> Result<Header, Error> {
    let fields: Vec<&str> = line.split(' ').collect();
    let expect = "expected header `n=<int> k=<int> r=<int>`";
    if fields.len() != 3 {
        return Err(parse_error(path, 1, expect));
    }
    let mut values = [0u32; 3];
    for (field, (name, slot)) in fields
        .iter()
        .zip(["n", "k", "r"].iter().zip(values.iter_mut()))
    {
        let Some(rest) = field.strip_prefix(&format!("{name}=")) else {
            return Err(parse_error(path, 1, expect));
        };
        *slot = rest
            .parse()
            .map_err(|_| parse_error(path, 1, format!("bad integer for {name}: {rest:?}")))?;
    }
    Ok(Header { n: values[0], k: values[1], r: values[2] })
}

fn parse_symbols(path: &Path, line_no: usize, line: &str, expected: usize) -> Result<Vec<u16>, Error> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != expected {
        return Err(parse_error(
            path,
            line_no,
            format!("expected {expected} symbols, found {}", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<u16>()
                .map_err(|_| parse_error(path, line_no, format!("bad symbol {p:?}")))
        })
        .collect()
}

fn body_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().skip(1).map(|(i, l)| (i + 1, l))
}

/// Reads a code file, returning the code and its header.
pub fn read_code(path: impl AsRef<Path>) -> Result<(Code, Header), Error> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let Some(first) = text.lines().next() else {
        return Err(parse_error(path, 1, "empty file"));
    };
    let header = parse_header(path, first)?;
    let mut words = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line_no, line) in body_lines(&text) {
        let symbols = parse_symbols(path, line_no, line, header.r as usize)?;
        if let Some(&bad) = symbols.iter().find(|&&s| u32::from(s) >= header.n) {
            return Err(parse_error(
                path,
                line_no,
                format!("symbol {bad} out of range for n={}", header.n),
            ));
        }
        if !seen.insert(symbols.clone()) {
            return Err(parse_error(path, line_no, format!("duplicate word {line:?}")));
        }
        words.push(Word::new(symbols));
    }
    let code = Code::new(header.n, header.r, words)?;
    Ok((code, header))
}

/// Writes a code file with the given header `k`; words sorted, LF endings.
pub fn write_code(path: impl AsRef<Path>, code: &Code, k: u32) -> Result<(), Error> {
    let path = path.as_ref();
    let mut out = format!(
        "n={} k={} r={}\n",
        code.alphabet_size(),
        k,
        code.word_length()
    );
    for w in code.words() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a system file, returning the system and its header.
pub fn read_system(path: impl AsRef<Path>) -> Result<(TuranSystem, Header), Error> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let Some(first) = text.lines().next() else {
        return Err(parse_error(path, 1, "empty file"));
    };
    let header = parse_header(path, first)?;
    let mut sets = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line_no, line) in body_lines(&text) {
        let symbols = parse_symbols(path, line_no, line, header.r as usize)?;
        if let Some(pair) = symbols.windows(2).find(|p| p[0] >= p[1]) {
            return Err(parse_error(
                path,
                line_no,
                format!("symbols must strictly increase, got {} then {}", pair[0], pair[1]),
            ));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| u32::from(s) >= header.n) {
            return Err(parse_error(
                path,
                line_no,
                format!("symbol {bad} out of range for n={}", header.n),
            ));
        }
        if !seen.insert(symbols.clone()) {
            return Err(parse_error(path, line_no, format!("duplicate set {line:?}")));
        }
        sets.push(symbols);
    }
    let system = TuranSystem::new(header.n, header.r, sets)?;
    Ok((system, header))
}

/// Writes a system file with the given header `k`; sets sorted, LF endings.
pub fn write_system(path: impl AsRef<Path>, system: &TuranSystem, k: u32) -> Result<(), Error> {
    let path = path.as_ref();
    let mut out = format!(
        "n={} k={} r={}\n",
        system.ground_size(),
        k,
        system.member_size()
    );
    for set in system.sets() {
        let line: Vec<String> = set.iter().map(|s| s.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> std::path::PathBuf {
        let mut dir = std::env::temp_dir();
        dir.push(format!("inscover-fileio-{}-{name}", std::process::id()));
        dir
    }

    #[test]
    fn code_roundtrip() {
        let path = tmp("roundtrip.code");
        let code = crate::testkit::optimal_343();
        write_code(&path, &code, 4).unwrap();
        let (back, header) = read_code(&path).unwrap();
        assert_eq!(back, code);
        assert_eq!(header, Header { n: 3, k: 4, r: 3 });
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("n=3 k=4 r=3\n"));
        assert!(text.ends_with('\n'));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn system_roundtrip() {
        let path = tmp("roundtrip.system");
        let system = crate::construct::mantel_system(5).unwrap();
        write_system(&path, &system, 3).unwrap();
        let (back, header) = read_system(&path).unwrap();
        assert_eq!(back, system);
        assert_eq!(header, Header { n: 5, k: 3, r: 2 });
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let path = tmp("bad.code");

        std::fs::write(&path, "n=2 k=3 r=2\n0 1\n0\n").unwrap();
        let err = read_code(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        std::fs::write(&path, "n=2 k=3 r=2\n0 5\n").unwrap();
        let err = read_code(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        std::fs::write(&path, "n=2 k=3 r=2\n0 1\n0 1\n").unwrap();
        let err = read_code(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        std::fs::write(&path, "n=2 k=3\n").unwrap();
        let err = read_code(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        std::fs::write(&path, "n=2 k=3 r=2\r\n0 1\n").unwrap();
        let err = read_code(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        std::fs::write(&path, "n=5 k=3 r=2\n1 0\n").unwrap();
        let err = read_system(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn empty_body_is_a_valid_empty_family() {
        let path = tmp("empty.system");
        std::fs::write(&path, "n=2 k=3 r=2\n").unwrap();
        let (system, _) = read_system(&path).unwrap();
        assert!(system.is_empty());
        std::fs::remove_file(&path).ok();
    }
}
