use std::fmt;

use thiserror::Error;

use crate::lexer::{InvalidUtf8, LexError};
use crate::parser::ParseError;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuntimeErrorKind {
    UndefinedName,
    TypeMismatch,
    DivisionByZero,
    ArityMismatch,
    RecursionLimit,
    BreakOutsideLoop,
    ContinueOutsideLoop,
    ReturnOutsideFunction,
    BudgetExceeded,
    ExitRequested(i32),
    IntegerOverflow,
    IndexOutOfRange,
    InvalidOperation,
    InputExhausted,
    BuiltinDisabled,
    Io,
}

impl RuntimeErrorKind {
    pub fn tamil(self) -> &'static str {
        match self {
            RuntimeErrorKind::UndefinedName => "வரையறுக்கப்படாத பெயர்",
            RuntimeErrorKind::TypeMismatch => "வகை பொருந்தவில்லை",
            RuntimeErrorKind::DivisionByZero => "பூஜ்ஜியத்தால் வகுத்தல்",
            RuntimeErrorKind::ArityMismatch => "அளபுருக்களின் எண்ணிக்கை தவறு",
            RuntimeErrorKind::RecursionLimit => "தற்சுழற்சி வரம்பு மீறப்பட்டது",
            RuntimeErrorKind::BreakOutsideLoop => "சுழற்சிக்கு வெளியே நிறுத்து",
            RuntimeErrorKind::ContinueOutsideLoop => "சுழற்சிக்கு வெளியே தொடர்",
            RuntimeErrorKind::ReturnOutsideFunction => "நிரல்பாகத்திற்கு வெளியே பின்கொடு",
            RuntimeErrorKind::BudgetExceeded => "வள வரம்பு மீறப்பட்டது",
            RuntimeErrorKind::ExitRequested(_) => "நிரல் வெளியேறியது",
            RuntimeErrorKind::IntegerOverflow => "முழு எண் வழிதல்",
            RuntimeErrorKind::IndexOutOfRange => "சுட்டு வரம்புக்கு வெளியே",
            RuntimeErrorKind::InvalidOperation => "தவறான செயல்",
            RuntimeErrorKind::InputExhausted => "உள்ளீடு தீர்ந்துவிட்டது",
            RuntimeErrorKind::BuiltinDisabled => "இந்த செயல்கூறு இங்கே அனுமதிக்கப்படவில்லை",
            RuntimeErrorKind::Io => "கோப்பு பிழை",
        }
    }
}

/// A runtime failure. `message` is English and names the offending
/// operator, value type or identifier.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{span}: {message}")]
pub struct RuntimeError {
    pub kind: RuntimeErrorKind,
    pub message: String,
    pub span: Span,
}

impl RuntimeError {
    pub fn new(kind: RuntimeErrorKind, span: Span, message: impl Into<String>) -> Self {
        RuntimeError {
            kind,
            message: message.into(),
            span,
        }
    }

    pub fn type_mismatch(span: Span, message: impl Into<String>) -> Self {
        Self::new(RuntimeErrorKind::TypeMismatch, span, message)
    }
}

/// Anything that can stop a program before or during execution.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Encoding(#[from] InvalidUtf8),
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
}

impl Error {
    pub fn span(&self) -> Option<Span> {
        match self {
            Error::Encoding(_) => None,
            Error::Lex(e) => Some(e.span()),
            Error::Parse(e) => Some(e.span()),
            Error::Runtime(e) => Some(e.span),
        }
    }

    pub fn tamil_message(&self) -> String {
        match self {
            Error::Encoding(e) => format!("தவறான UTF-8 குறியாக்கம் (பைட் {})", e.offset),
            Error::Lex(e) => e.tamil_message(),
            Error::Parse(e) => e.tamil_message(),
            Error::Runtime(e) => e.kind.tamil().to_owned(),
        }
    }

    fn english_message(&self) -> String {
        match self {
            Error::Encoding(e) => e.to_string(),
            Error::Lex(e) => strip_span(&e.to_string()),
            Error::Parse(e) => strip_span(&e.to_string()),
            Error::Runtime(e) => e.message.clone(),
        }
    }

    /// One-line bilingual diagnostic: `line:col: பிழை: <Tamil> | error: <English>`.
    pub fn diagnostic(&self) -> Diagnostic<'_> {
        Diagnostic(self)
    }
}

fn strip_span(text: &str) -> String {
    match text.split_once(": ") {
        Some((_, rest)) => rest.to_owned(),
        None => text.to_owned(),
    }
}

pub struct Diagnostic<'a>(&'a Error);

impl fmt::Display for Diagnostic<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(span) = self.0.span() {
            write!(f, "{span}: ")?;
        }
        write!(
            f,
            "பிழை: {} | error: {}",
            self.0.tamil_message(),
            self.0.english_message()
        )
    }
}
