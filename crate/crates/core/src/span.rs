use std::fmt;

/// A 1-based source position. Columns count Unicode scalar values, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub const fn new(line: u32, column: u32) -> Self {
        Span { line, column }
    }

    /// Slices `source` starting at this position, if it exists.
    pub fn slice_from<'a>(&self, source: &'a str) -> Option<&'a str> {
        let mut line_start = 0;
        for _ in 1..self.line {
            line_start += source[line_start..].find('\n')? + 1;
        }
        let rest = &source[line_start..];
        let skip = self.column as usize - 1;
        let byte = match rest.char_indices().nth(skip) {
            Some((i, _)) => i,
            None if rest.chars().count() == skip => rest.len(),
            None => return None,
        };
        Some(&rest[byte..])
    }
}

impl Default for Span {
    fn default() -> Self {
        Span::new(1, 1)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}
