//! OEIS b-files: one `n a(n)` pair per line, `#` comments ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

/// An OEIS identifier, `A` followed by six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceId(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not an OEIS id (expected `A` and six digits)")]
pub struct BadSequenceId(pub String);

impl SequenceId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The six digits, as used in the b-file name `b<digits>.txt`.
    pub fn digits(&self) -> &str {
        &self.0[1..]
    }

    pub fn file_name(&self) -> String {
        format!("b{}.txt", self.digits())
    }
}

impl FromStr for SequenceId {
    type Err = BadSequenceId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let valid = s.len() == 7 && s.starts_with(['A', 'a']) && s[1..].bytes().all(|b| b.is_ascii_digit());
        if valid {
            Ok(SequenceId(format!("A{}", &s[1..])))
        } else {
            Err(BadSequenceId(s.to_string()))
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed b-file at line {line}: {reason}")]
pub struct BFileFormatError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub id: SequenceId,
    pub rows: Vec<(i64, BigInt)>,
}

impl BFile {
    /// Builds a b-file with consecutive indices starting at `offset`.
    pub fn from_terms(id: SequenceId, offset: i64, terms: impl IntoIterator<Item = BigInt>) -> Self {
        let rows = terms.into_iter().enumerate().map(|(i, a)| (offset + i as i64, a)).collect();
        BFile { id, rows }
    }

    pub fn parse(id: SequenceId, text: &str) -> Result<Self, BFileFormatError> {
        let mut rows: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| BFileFormatError { line: i + 1, reason };
            let mut fields = line.split_whitespace();
            let (Some(n), Some(a), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err(format!("expected `n a(n)`, found `{line}`")));
            };
            let n: i64 = n.parse().map_err(|_| err(format!("bad index `{n}`")))?;
            let a: BigInt = a.parse().map_err(|_| err(format!("bad term `{a}`")))?;
            if let Some(&(prev, _)) = rows.last() {
                if n != prev + 1 {
                    return Err(err(format!("index {n} does not follow {prev}")));
                }
            }
            rows.push((n, a));
        }
        if rows.is_empty() {
            return Err(BFileFormatError { line: 0, reason: "no data rows".into() });
        }
        Ok(BFile { id, rows })
    }

    pub fn offset(&self) -> Option<i64> {
        self.rows.first().map(|r| r.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = &BigInt> {
        self.rows.iter().map(|r| &r.1)
    }
}

/// Rows only, `n a(n)\n` each.
impl fmt::Display for BFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, a) in &self.rows {
            writeln!(f, "{n} {a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> SequenceId {
        s.parse().unwrap()
    }

    #[test]
    fn ids() {
        assert_eq!(id("A198636").file_name(), "b198636.txt");
        assert_eq!(id("a005471").as_str(), "A005471");
        assert!("Axx".parse::<SequenceId>().is_err());
        assert!("A12345".parse::<SequenceId>().is_err());
        assert!("B123456".parse::<SequenceId>().is_err());
    }

    #[test]
    fn parse_and_emit() {
        let text = "# header\n# more\n0 3\n1 5\n\n2 13\n";
        let b = BFile::parse(id("A198636"), text).unwrap();
        assert_eq!(b.offset(), Some(0));
        assert_eq!(b.to_string(), "0 3\n1 5\n2 13\n");
        assert_eq!(BFile::parse(id("A198636"), &b.to_string()).unwrap(), b);
    }

    #[test]
    fn rejects_malformed() {
        let err = BFile::parse(id("A000001"), "1 2\n3 4\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(BFile::parse(id("A000001"), "1 2 3\n").is_err());
        assert!(BFile::parse(id("A000001"), "1 x\n").is_err());
        assert!(BFile::parse(id("A000001"), "2 1\n1 1\n").is_err());
        assert!(BFile::parse(id("A000001"), "# only comments\n").is_err());
        assert!(BFile::parse(id("A000001"), "<html>\n").is_err());
    }

    #[test]
    fn large_terms() {
        let b = BFile::parse(id("A000001"), "7 123456789012345678901234567890\n").unwrap();
        assert_eq!(b.rows[0].1.to_string(), "123456789012345678901234567890");
    }
}
