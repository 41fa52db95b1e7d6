//! Source decoding and tokenization.
//!
//! Identifiers are maximal runs of Tamil letters/marks (U+0B80..U+0BE5),
//! ASCII letters, underscore and non-initial ASCII digits. A run that spells a
//! keyword exactly becomes a keyword token. Comments (`#` to end of line) and
//! line breaks collapse into a single `Newline` token whose lexeme is the whole
//! run, so the token stream stays lossless: every token records the horizontal
//! whitespace that preceded it as `leading_trivia`.

use std::fmt;

use thiserror::Error;

use crate::span::Span;

const BOM: &[u8] = &[0xEF, 0xBB, 0xBF];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid UTF-8 at byte offset {offset}")]
pub struct InvalidUtf8 {
    pub offset: usize,
}

/// Removes a leading UTF-8 byte-order mark and decodes the rest.
pub fn strip_bom(bytes: &[u8]) -> Result<(String, bool), InvalidUtf8> {
    let (body, had_bom) = match bytes.strip_prefix(BOM) {
        Some(rest) => (rest, true),
        None => (bytes, false),
    };
    let offset_base = if had_bom { BOM.len() } else { 0 };
    match std::str::from_utf8(body) {
        Ok(text) => Ok((text.to_owned(), had_bom)),
        Err(e) => Err(InvalidUtf8 {
            offset: offset_base + e.valid_up_to(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Print,
    Break,
    Continue,
    Return,
    If,
    ElseIf,
    Else,
    End,
    Function,
    While,
    // Reserved for switch-case and loop forms that the language does not have yet.
    Select,
    Choice,
    Otherwise,
    As,
    Do,
}

impl Keyword {
    pub const ALL: [Keyword; 15] = [
        Keyword::Print,
        Keyword::Break,
        Keyword::Continue,
        Keyword::Return,
        Keyword::If,
        Keyword::ElseIf,
        Keyword::Else,
        Keyword::End,
        Keyword::Function,
        Keyword::While,
        Keyword::Select,
        Keyword::Choice,
        Keyword::Otherwise,
        Keyword::As,
        Keyword::Do,
    ];

    pub fn spelling(self) -> &'static str {
        match self {
            Keyword::Print => "பதிப்பி",
            Keyword::Break => "நிறுத்து",
            Keyword::Continue => "தொடர்",
            Keyword::Return => "பின்கொடு",
            Keyword::If => "ஆனால்",
            Keyword::ElseIf => "இல்லைஆனால்",
            Keyword::Else => "இல்லை",
            Keyword::End => "முடி",
            Keyword::Function => "நிரல்பாகம்",
            Keyword::While => "வரை",
            Keyword::Select => "தேர்ந்தெடு",
            Keyword::Choice => "தேர்வு",
            Keyword::Otherwise => "ஏதேனில்",
            Keyword::As => "ஆக",
            Keyword::Do => "செய்",
        }
    }

    /// English name used in diagnostics and AST dumps.
    pub fn english(self) -> &'static str {
        match self {
            Keyword::Print => "PRINT",
            Keyword::Break => "BREAK",
            Keyword::Continue => "CONTINUE",
            Keyword::Return => "RETURN",
            Keyword::If => "IF",
            Keyword::ElseIf => "ELSEIF",
            Keyword::Else => "ELSE",
            Keyword::End => "END",
            Keyword::Function => "FUNCTION",
            Keyword::While => "WHILE",
            Keyword::Select => "SELECT",
            Keyword::Choice => "CASE",
            Keyword::Otherwise => "DEFAULT",
            Keyword::As => "AS",
            Keyword::Do => "DO",
        }
    }

    pub fn is_reserved(self) -> bool {
        matches!(
            self,
            Keyword::Select | Keyword::Choice | Keyword::Otherwise | Keyword::As | Keyword::Do
        )
    }

    pub fn from_spelling(word: &str) -> Option<Keyword> {
        Keyword::ALL.into_iter().find(|k| k.spelling() == word)
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spelling())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Caret,
    Eq,
    Neq,
    Lt,
    Gt,
    Le,
    Ge,
    Not,
    And,
    Or,
}

impl Operator {
    pub fn symbol(self) -> &'static str {
        match self {
            Operator::Plus => "+",
            Operator::Minus => "-",
            Operator::Star => "*",
            Operator::Slash => "/",
            Operator::Percent => "%",
            Operator::Caret => "^",
            Operator::Eq => "==",
            Operator::Neq => "!=",
            Operator::Lt => "<",
            Operator::Gt => ">",
            Operator::Le => "<=",
            Operator::Ge => ">=",
            Operator::Not => "!",
            Operator::And => "&&",
            Operator::Or => "||",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            Operator::Eq
                | Operator::Neq
                | Operator::Lt
                | Operator::Gt
                | Operator::Le
                | Operator::Ge
        )
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword(Keyword),
    Identifier,
    IntegerLit,
    FloatLit,
    StringLit,
    Operator(Operator),
    AtSign,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Assign,
    Newline,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "KEYWORD({})", k.english()),
            TokenKind::Identifier => f.write_str("IDENTIFIER"),
            TokenKind::IntegerLit => f.write_str("INTEGER_LIT"),
            TokenKind::FloatLit => f.write_str("FLOAT_LIT"),
            TokenKind::StringLit => f.write_str("STRING_LIT"),
            TokenKind::Operator(op) => write!(f, "OPERATOR({op})"),
            TokenKind::AtSign => f.write_str("AT_SIGN"),
            TokenKind::LParen => f.write_str("LPAREN"),
            TokenKind::RParen => f.write_str("RPAREN"),
            TokenKind::LBracket => f.write_str("LBRACKET"),
            TokenKind::RBracket => f.write_str("RBRACKET"),
            TokenKind::Comma => f.write_str("COMMA"),
            TokenKind::Assign => f.write_str("ASSIGN"),
            TokenKind::Newline => f.write_str("NEWLINE"),
            TokenKind::Eof => f.write_str("EOF"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// The exact source slice, including quotes for strings.
    pub lexeme: String,
    pub span: Span,
    /// Horizontal whitespace skipped immediately before this token.
    pub leading_trivia: String,
}

impl Token {
    /// Decoded contents of a string literal (escapes applied).
    pub fn string_value(&self) -> Option<String> {
        if self.kind != TokenKind::StringLit {
            return None;
        }
        let inner = &self.lexeme[1..self.lexeme.len() - 1];
        let mut out = String::with_capacity(inner.len());
        let mut chars = inner.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                match chars.next() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some('\\') => out.push('\\'),
                    Some('"') => out.push('"'),
                    // The lexer rejects every other escape.
                    Some(other) => out.push(other),
                    None => {}
                }
            } else {
                out.push(c);
            }
        }
        Some(out)
    }
}

/// Rebuilds the original text from a token stream.
pub fn reconstruct(tokens: &[Token]) -> String {
    tokens
        .iter()
        .flat_map(|t| [t.leading_trivia.as_str(), t.lexeme.as_str()])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("{span}: unterminated string literal")]
    UnterminatedString { span: Span },
    #[error("{span}: unknown character {ch:?}")]
    UnknownCharacter { span: Span, ch: char },
    #[error("{span}: invalid number {text:?}")]
    InvalidNumber { span: Span, text: String },
    #[error("{span}: unknown escape sequence \\{ch}")]
    InvalidEscape { span: Span, ch: char },
}

impl LexError {
    pub fn span(&self) -> Span {
        match self {
            LexError::UnterminatedString { span }
            | LexError::UnknownCharacter { span, .. }
            | LexError::InvalidNumber { span, .. }
            | LexError::InvalidEscape { span, .. } => *span,
        }
    }

    pub fn tamil_message(&self) -> String {
        match self {
            LexError::UnterminatedString { .. } => "சரம் மூடப்படவில்லை".to_owned(),
            LexError::UnknownCharacter { ch, .. } => format!("அறியப்படாத எழுத்து {ch:?}"),
            LexError::InvalidNumber { text, .. } => format!("தவறான எண் {text:?}"),
            LexError::InvalidEscape { ch, .. } => format!("தவறான விடுபடு வரிசை \\{ch}"),
        }
    }
}

/// True for Tamil letters, vowel signs and the virama; false for Tamil digits
/// and the numeric/calendar symbols at the end of the block.
pub fn is_tamil_letter(c: char) -> bool {
    ('\u{0B80}'..='\u{0BE5}').contains(&c)
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || is_tamil_letter(c)
}

pub fn is_ident_continue(c: char) -> bool {
    is_ident_start(c) || c.is_ascii_digit()
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span::new(self.line, self.column)
    }

    fn eat_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
    }
}

fn is_horizontal_space(c: char) -> bool {
    c == ' ' || c == '\t' || c == '\r' || c == '\u{FEFF}'
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor {
        src: source,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();

    loop {
        let trivia_start = cur.pos;
        cur.eat_while(is_horizontal_space);
        let leading_trivia = source[trivia_start..cur.pos].to_owned();

        let span = cur.span();
        let start = cur.pos;
        let Some(c) = cur.peek() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                lexeme: String::new(),
                span,
                leading_trivia,
            });
            return Ok(tokens);
        };

        let kind = match c {
            '#' | '\n' => {
                lex_newline_run(&mut cur);
                TokenKind::Newline
            }
            '"' => lex_string(&mut cur, span)?,
            '0'..='9' => lex_number(&mut cur, span)?,
            c if is_ident_start(c) => {
                cur.eat_while(is_ident_continue);
                match Keyword::from_spelling(&source[start..cur.pos]) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Identifier,
                }
            }
            _ => lex_punct(&mut cur, span, c)?,
        };

        tokens.push(Token {
            kind,
            lexeme: source[start..cur.pos].to_owned(),
            span,
            leading_trivia,
        });
    }
}

/// Consumes comments, line breaks and blank lines. Stops before the
/// indentation of the next non-blank line so that it becomes trivia.
fn lex_newline_run(cur: &mut Cursor<'_>) {
    loop {
        match cur.peek() {
            Some('#') => cur.eat_while(|c| c != '\n'),
            Some('\n') => {
                cur.bump();
            }
            _ => return,
        }
        // Look past horizontal space: only continue if another comment or
        // line break follows.
        let mut n = 0;
        while cur.peek_nth(n).is_some_and(is_horizontal_space) {
            n += 1;
        }
        match cur.peek_nth(n) {
            Some('#') | Some('\n') => {
                for _ in 0..n {
                    cur.bump();
                }
            }
            _ => return,
        }
    }
}

fn lex_string(cur: &mut Cursor<'_>, span: Span) -> Result<TokenKind, LexError> {
    cur.bump();
    loop {
        match cur.peek() {
            None | Some('\n') => return Err(LexError::UnterminatedString { span }),
            Some('"') => {
                cur.bump();
                return Ok(TokenKind::StringLit);
            }
            Some('\\') => {
                let esc_span = cur.span();
                cur.bump();
                match cur.peek() {
                    Some('n' | 't' | '\\' | '"') => {
                        cur.bump();
                    }
                    None | Some('\n') => return Err(LexError::UnterminatedString { span }),
                    Some(ch) => return Err(LexError::InvalidEscape { span: esc_span, ch }),
                }
            }
            Some(_) => {
                cur.bump();
            }
        }
    }
}

fn lex_number(cur: &mut Cursor<'_>, span: Span) -> Result<TokenKind, LexError> {
    let start = cur.pos;
    cur.eat_while(|c| c.is_ascii_digit());
    let mut kind = TokenKind::IntegerLit;
    if cur.peek() == Some('.') {
        cur.bump();
        cur.eat_while(|c| c.is_ascii_digit());
        kind = TokenKind::FloatLit;
    }
    // `1.2.3`, `12abc`
    if cur.peek().is_some_and(|c| c == '.' || is_ident_continue(c)) {
        cur.eat_while(|c| c == '.' || is_ident_continue(c));
        return Err(LexError::InvalidNumber {
            span,
            text: cur.src[start..cur.pos].to_owned(),
        });
    }
    Ok(kind)
}

fn lex_punct(cur: &mut Cursor<'_>, span: Span, c: char) -> Result<TokenKind, LexError> {
    let next = cur.peek_nth(1);
    let (kind, width) = match (c, next) {
        ('=', Some('=')) => (TokenKind::Operator(Operator::Eq), 2),
        ('!', Some('=')) => (TokenKind::Operator(Operator::Neq), 2),
        ('<', Some('=')) => (TokenKind::Operator(Operator::Le), 2),
        ('>', Some('=')) => (TokenKind::Operator(Operator::Ge), 2),
        ('&', Some('&')) => (TokenKind::Operator(Operator::And), 2),
        ('|', Some('|')) => (TokenKind::Operator(Operator::Or), 2),
        ('=', _) => (TokenKind::Assign, 1),
        ('!', _) => (TokenKind::Operator(Operator::Not), 1),
        ('<', _) => (TokenKind::Operator(Operator::Lt), 1),
        ('>', _) => (TokenKind::Operator(Operator::Gt), 1),
        ('+', _) => (TokenKind::Operator(Operator::Plus), 1),
        ('-', _) => (TokenKind::Operator(Operator::Minus), 1),
        ('*', _) => (TokenKind::Operator(Operator::Star), 1),
        ('/', _) => (TokenKind::Operator(Operator::Slash), 1),
        ('%', _) => (TokenKind::Operator(Operator::Percent), 1),
        ('^', _) => (TokenKind::Operator(Operator::Caret), 1),
        ('@', _) => (TokenKind::AtSign, 1),
        ('(', _) => (TokenKind::LParen, 1),
        (')', _) => (TokenKind::RParen, 1),
        ('[', _) => (TokenKind::LBracket, 1),
        (']', _) => (TokenKind::RBracket, 1),
        (',', _) => (TokenKind::Comma, 1),
        (ch, _) => return Err(LexError::UnknownCharacter { span, ch }),
    };
    for _ in 0..width {
        cur.bump();
    }
    Ok(kind)
}
