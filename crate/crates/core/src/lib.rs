//! Interpreter for Ezhil, a programming language with Tamil keywords.
//!
//! The pipeline is [`lexer::strip_bom`] → [`lexer::tokenize`] →
//! [`parser::parse_program`] → [`Interpreter::run`]. [`compile`] and
//! [`run_source`] chain these for the common cases.
//!
//! ```
//! use ezhil::{run_source, BufferedIo, Options};
//!
//! let mut io = BufferedIo::new(Vec::<String>::new());
//! let status = run_source("பதிப்பி 10 + 15, 17/3.0", &mut io, Options::default()).unwrap();
//! assert_eq!(status.code, 0);
//! assert_eq!(io.output(), "25 5.666666666666667\n");
//! ```

pub mod ast;
pub mod builtins;
pub mod corpus;
pub mod error;
pub mod interpreter;
pub mod io;
pub mod lexer;
pub mod parser;
pub mod prng;
pub mod span;
pub mod turtle;
pub mod value;

pub use ast::Program;
pub use error::{Error, RuntimeError, RuntimeErrorKind};
pub use interpreter::{EntryOutcome, ExitStatus, Interpreter, Limits, Options};
pub use io::{BufferedIo, IoPorts, StreamIo};
pub use span::Span;
pub use value::{format_value, Value};

/// Turtle pose in double precision, as driven by the interpreter.
pub type Turtle = turtle::TurtleState<f64>;
/// Drawing surface in double precision.
pub type TurtleCanvas = turtle::Canvas<f64>;
pub type TurtleSegment = turtle::Segment<f64>;
pub type TurtlePolygon = turtle::Polygon<f64>;

/// Single-precision variants, for callers that render at lower precision.
pub type Turtle32 = turtle::TurtleState<f32>;
pub type TurtleCanvas32 = turtle::Canvas<f32>;

/// Tokenizes and parses a decoded source text.
pub fn compile(source: &str) -> Result<Program, Error> {
    let tokens = lexer::tokenize(source)?;
    Ok(parser::parse_program(&tokens)?)
}

/// Compiles and runs `source` in a fresh interpreter.
pub fn run_source(
    source: &str,
    io: &mut dyn IoPorts,
    options: Options,
) -> Result<ExitStatus, Error> {
    let program = compile(source)?;
    let mut interp = Interpreter::new(options);
    Ok(interp.run(&program, io)?)
}
