//! Plain-text sample files: one value per line, `#` comments, and an
//! optional header line.

use std::fs;
use std::path::Path;

use crate::distributions::{Provenance, SampleSet};
use crate::error::{Error, Result};

/// Parse sample text. A first non-comment line that is not a number is
/// taken as a header; any later one is an error.
pub fn parse_samples(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut seen_first = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.split(',').next().unwrap_or("").trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            Ok(v) => return Err(Error::Input(format!("line {}: non-finite value {v}", lineno + 1))),
            Err(_) if !seen_first => {}
            Err(_) => return Err(Error::Input(format!("line {}: cannot parse '{field}'", lineno + 1))),
        }
        seen_first = true;
    }
    Ok(out)
}

pub fn read_samples(path: &Path) -> Result<SampleSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let values = parse_samples(&text)?;
    if values.is_empty() {
        return Err(Error::Input(format!("{}: no samples", path.display())));
    }
    Ok(SampleSet {
        values,
        provenance: Provenance {
            seed: None,
            source: Some(path.display().to_string()),
        },
    })
}

/// Seventeen significant digits, enough to read back the same double.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_samples(values: &[f64]) -> String {
    let mut s = String::with_capacity(values.len() * 24);
    for &v in values {
        s.push_str(&format_value(v));
        s.push('\n');
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn write_samples(path: &Path, values: &[f64]) -> Result<()> {
    write_text(path, &format_samples(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_comments() {
        let v = parse_samples("# made by hand\nvalue\n1.5\n\n# mid\n-2e3\n").unwrap();
        assert_eq!(v, vec![1.5, -2000.0]);
        assert!(parse_samples("1\nx\n").is_err());
        assert!(parse_samples("a\nb\n").is_err());
        assert!(parse_samples("inf\n").is_err());
        assert!(parse_samples("").unwrap().is_empty());
    }

    proptest::proptest! {
        #[test]
        fn round_trip_exact(xs in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO, 0..50)) {
            let back = parse_samples(&format_samples(&xs)).unwrap();
            proptest::prop_assert_eq!(back.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), xs.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
        }
    }
}
