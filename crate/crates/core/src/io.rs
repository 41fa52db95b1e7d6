//! Program input and output ports.

use std::collections::VecDeque;
use std::io::{self, BufRead, Write};

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error("output limit of {0} bytes exceeded")]
    LimitExceeded(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Where a running program writes text and reads input lines.
pub trait IoPorts {
    fn write(&mut self, text: &str) -> Result<(), OutputError>;

    /// Next input line without its line terminator, or `None` when input is
    /// exhausted.
    fn read_line(&mut self) -> Option<String>;
}

/// In-memory ports: scripted input lines and a captured output buffer.
#[derive(Debug, Default, Clone)]
pub struct BufferedIo {
    input: VecDeque<String>,
    output: String,
    limit: Option<usize>,
}

impl BufferedIo {
    pub fn new<I, S>(input: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        BufferedIo {
            input: input.into_iter().map(Into::into).collect(),
            output: String::new(),
            limit: None,
        }
    }

    /// Caps captured output at `bytes`.
    pub fn with_output_limit(mut self, bytes: usize) -> Self {
        self.limit = Some(bytes);
        self
    }

    pub fn output(&self) -> &str {
        &self.output
    }

    pub fn into_output(self) -> String {
        self.output
    }
}

impl IoPorts for BufferedIo {
    fn write(&mut self, text: &str) -> Result<(), OutputError> {
        if let Some(limit) = self.limit {
            if self.output.len() + text.len() > limit {
                return Err(OutputError::LimitExceeded(limit));
            }
        }
        self.output.push_str(text);
        Ok(())
    }

    fn read_line(&mut self) -> Option<String> {
        self.input.pop_front()
    }
}

/// Ports over arbitrary reader/writer pairs, e.g. the process's stdin/stdout.
pub struct StreamIo<R, W> {
    reader: R,
    writer: W,
}

impl<R: BufRead, W: Write> StreamIo<R, W> {
    pub fn new(reader: R, writer: W) -> Self {
        StreamIo { reader, writer }
    }

    pub fn into_inner(self) -> (R, W) {
        (self.reader, self.writer)
    }
}

impl<R: BufRead, W: Write> IoPorts for StreamIo<R, W> {
    fn write(&mut self, text: &str) -> Result<(), OutputError> {
        self.writer.write_all(text.as_bytes())?;
        // Prompts have no trailing newline and must be visible before reading.
        self.writer.flush()?;
        Ok(())
    }

    fn read_line(&mut self) -> Option<String> {
        let mut line = String::new();
        match self.reader.read_line(&mut line) {
            Ok(0) | Err(_) => None,
            Ok(_) => {
                if line.ends_with('\n') {
                    line.pop();
                    if line.ends_with('\r') {
                        line.pop();
                    }
                }
                Some(line)
            }
        }
    }
}
