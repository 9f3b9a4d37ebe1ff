//! Set files: UTF-8 text, one scalar per line, `#` starts a comment, blank
//! lines are ignored. Real scalars are `INT`, `INT/POSINT` or decimals;
//! complex scalars are `(re,im)`.

use std::path::Path;

use super::{FiniteSet, ScalarSet};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Kind, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFile {
    pub set: ScalarSet,
    /// Repeated scalars that were silently merged.
    pub duplicates: usize,
}

enum Parsed {
    Real(Rational),
    Complex(GaussianRational),
}

fn parse_one(item: &str) -> Result<Parsed> {
    if item.trim_start().starts_with('(') {
        GaussianRational::parse(item).map(Parsed::Complex)
    } else {
        Rational::parse(item).map(Parsed::Real)
    }
}

fn collect(items: impl IntoIterator<Item = (usize, Result<Parsed>)>) -> Result<SetFile> {
    let mut reals = Vec::new();
    let mut complexes = Vec::new();
    for (line, parsed) in items {
        let wrap = |e: Error| Error::SetFile {
            line,
            source: Box::new(e),
        };
        let parsed = parsed.map_err(wrap)?;
        match parsed {
            Parsed::Real(r) => reals.push(r),
            Parsed::Complex(z) => complexes.push(z),
        }
        if !reals.is_empty() && !complexes.is_empty() {
            return Err(wrap(Error::KindMismatch {
                left: Kind::Real,
                right: Kind::Complex,
            }));
        }
    }
    if reals.is_empty() && complexes.is_empty() {
        return Err(Error::EmptyInput("set contains no scalars".into()));
    }
    let (set, duplicates) = if complexes.is_empty() {
        let (s, d) = FiniteSet::with_duplicate_count(reals);
        (ScalarSet::Real(s), d)
    } else {
        let (s, d) = FiniteSet::with_duplicate_count(complexes);
        (ScalarSet::Complex(s), d)
    };
    Ok(SetFile { set, duplicates })
}

pub fn parse_set_file(text: &str) -> Result<SetFile> {
    collect(text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then(|| (i + 1, parse_one(content)))
    }))
}

pub fn read_set_file(path: impl AsRef<Path>) -> Result<SetFile> {
    parse_set_file(&std::fs::read_to_string(path)?)
}

/// Parses already-split scalar items, e.g. the contents of a `{...}` literal.
/// Errors carry the 1-based item position in `line`.
pub fn parse_scalar_items<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<SetFile> {
    collect(items.into_iter().enumerate().map(|(i, item)| (i + 1, parse_one(item))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_duplicates() {
        let text = "# header\n1\n\n 2/4  # half\n0.5\n3\n";
        let f = parse_set_file(text).unwrap();
        assert_eq!(f.duplicates, 1);
        assert_eq!(f.set.element_strings(), ["1/2", "1", "3"]);
    }

    #[test]
    fn complex_file() {
        let f = parse_set_file("(1,0)\n( 0 , 1 )\n").unwrap();
        assert_eq!(f.set.kind(), Kind::Complex);
        assert_eq!(f.set.len(), 2);
    }

    #[test]
    fn mixed_kinds_and_bad_lines_report_line_numbers() {
        let err = parse_set_file("1\n(1,1)\n").unwrap_err();
        assert!(matches!(err, Error::SetFile { line: 2, .. }));
        let err = parse_set_file("1\n\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::SetFile { line: 3, .. }));
        assert!(matches!(parse_set_file("# nothing\n"), Err(Error::EmptyInput(_))));
    }
}
