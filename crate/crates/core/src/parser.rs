//! Recursive-descent statement parser with precedence climbing for
//! expressions.
//!
//! Binding strength, loosest first: `||`, `&&`, comparisons (non-associative),
//! `+ -`, `* / %`, unary `- !`, `^` (right-associative, tighter than unary
//! minus), then atoms.

use std::rc::Rc;

use thiserror::Error;

use crate::ast::{Expr, ExprKind, FuncDef, IfArm, Program, Stmt, StmtKind, UnaryOp};
use crate::lexer::{Keyword, Operator, Token, TokenKind};
use crate::span::Span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: unexpected {found}, expected {}", expected.join(" or "))]
    UnexpectedToken {
        span: Span,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("{span}: {opener} block is never closed with {end}", end = Keyword::End)]
    UnclosedBlock { span: Span, opener: Keyword },
    #[error("{span}: {word} is reserved for future use")]
    ReservedKeyword { span: Span, word: Keyword },
    #[error("{span}: comparisons cannot be chained; use && to combine them")]
    ChainedComparison { span: Span },
    #[error("{span}: indexing with [..] is not supported; use elem(list, i)")]
    BracketIndexing { span: Span },
    #[error("{span}: functions can only be defined at the top level")]
    NestedFunction { span: Span },
    #[error("{span}: integer literal {text} is too large")]
    IntegerTooLarge { span: Span, text: String },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::UnexpectedToken { span, .. }
            | ParseError::UnclosedBlock { span, .. }
            | ParseError::ReservedKeyword { span, .. }
            | ParseError::ChainedComparison { span }
            | ParseError::BracketIndexing { span }
            | ParseError::NestedFunction { span }
            | ParseError::IntegerTooLarge { span, .. } => *span,
        }
    }

    pub fn tamil_message(&self) -> String {
        match self {
            ParseError::UnexpectedToken { found, .. } => format!("எதிர்பாராத {found}"),
            ParseError::UnclosedBlock { opener, .. } => {
                format!("{opener} தொகுதி {} இல்லாமல் உள்ளது", Keyword::End)
            }
            ParseError::ReservedKeyword { word, .. } => {
                format!("{word} எதிர்கால பயன்பாட்டிற்கு ஒதுக்கப்பட்டது")
            }
            ParseError::ChainedComparison { .. } => "ஒப்பீடுகளை தொடராக எழுத முடியாது".to_owned(),
            ParseError::BracketIndexing { .. } => {
                "[..] சுட்டு ஆதரிக்கப்படவில்லை; elem() பயன்படுத்தவும்".to_owned()
            }
            ParseError::NestedFunction { .. } => {
                "நிரல்பாகம் மேல் மட்டத்தில் மட்டுமே வரையறுக்க முடியும்".to_owned()
            }
            ParseError::IntegerTooLarge { text, .. } => format!("எண் {text} மிகப் பெரியது"),
        }
    }
}

fn describe(tok: &Token) -> String {
    match tok.kind {
        TokenKind::Newline => "end of line".to_owned(),
        TokenKind::Eof => "end of input".to_owned(),
        TokenKind::StringLit => format!("string {}", tok.lexeme),
        _ => format!("'{}'", tok.lexeme),
    }
}

/// How a block ended.
enum Terminator {
    End,
    Else,
    ElseIf(Expr),
}

/// Result of parsing `@( cond ) KEYWORD` at statement position.
enum Conditional {
    Stmt(Stmt),
    ElseIf(Expr),
}

pub struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    block_depth: usize,
}

pub fn parse_program(tokens: &[Token]) -> Result<Program, ParseError> {
    Parser::new(tokens).program()
}

/// Parses a single expression spanning the whole token stream.
pub fn parse_expression(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut p = Parser::new(tokens);
    p.skip_newlines();
    let e = p.expr(1)?;
    p.skip_newlines();
    p.expect(TokenKind::Eof, "end of input")?;
    Ok(e)
}

impl<'t> Parser<'t> {
    pub fn new(tokens: &'t [Token]) -> Self {
        assert!(
            tokens.last().is_some_and(|t| t.kind == TokenKind::Eof),
            "token stream must end with EOF"
        );
        Parser {
            tokens,
            pos: 0,
            block_depth: 0,
        }
    }

    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self) -> TokenKind {
        self.tokens[self.pos].kind
    }

    fn peek_kind_at(&self, offset: usize) -> TokenKind {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        self.tokens[i].kind
    }

    fn advance(&mut self) -> &'t Token {
        let tok = &self.tokens[self.pos];
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        let tok = self.peek();
        if let TokenKind::Keyword(k) = tok.kind {
            if k.is_reserved() {
                return ParseError::ReservedKeyword {
                    span: tok.span,
                    word: k,
                };
            }
        }
        ParseError::UnexpectedToken {
            span: tok.span,
            found: describe(tok),
            expected,
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &'static str) -> Result<&'t Token, ParseError> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.unexpected(vec![what]))
        }
    }

    fn expect_ident(&mut self) -> Result<&'t Token, ParseError> {
        self.expect(TokenKind::Identifier, "identifier")
    }

    fn skip_newlines(&mut self) {
        while self.peek_kind() == TokenKind::Newline {
            self.advance();
        }
    }

    fn at_line_end(&self) -> bool {
        matches!(self.peek_kind(), TokenKind::Newline | TokenKind::Eof)
    }

    fn expect_line_end(&mut self) -> Result<(), ParseError> {
        match self.peek_kind() {
            TokenKind::Newline => {
                self.advance();
                Ok(())
            }
            TokenKind::Eof => Ok(()),
            _ => Err(self.unexpected(vec!["end of line"])),
        }
    }

    pub fn program(mut self) -> Result<Program, ParseError> {
        let mut body = Vec::new();
        loop {
            self.skip_newlines();
            match self.peek_kind() {
                TokenKind::Eof => return Ok(Program { body }),
                TokenKind::AtSign => match self.conditional()? {
                    Conditional::Stmt(s) => body.push(s),
                    Conditional::ElseIf(cond) => {
                        return Err(ParseError::UnexpectedToken {
                            span: cond.span,
                            found: format!("'{}'", Keyword::ElseIf),
                            expected: vec!["statement"],
                        })
                    }
                },
                _ => body.push(self.statement()?),
            }
            self.expect_line_end()?;
        }
    }

    /// Parses statements until END, ELSE or an ELSEIF arm header.
    fn block(
        &mut self,
        opener: Keyword,
        opener_span: Span,
        allow_branches: bool,
    ) -> Result<(Vec<Stmt>, Terminator), ParseError> {
        self.block_depth += 1;
        let mut body = Vec::new();
        let terminator = loop {
            self.skip_newlines();
            let tok = self.peek();
            match tok.kind {
                TokenKind::Eof => {
                    return Err(ParseError::UnclosedBlock {
                        span: opener_span,
                        opener,
                    })
                }
                TokenKind::Keyword(Keyword::End) => {
                    self.advance();
                    break Terminator::End;
                }
                TokenKind::Keyword(Keyword::Else) if allow_branches => {
                    self.advance();
                    break Terminator::Else;
                }
                TokenKind::AtSign => match self.conditional()? {
                    Conditional::Stmt(s) => body.push(s),
                    Conditional::ElseIf(cond) if allow_branches => break Terminator::ElseIf(cond),
                    Conditional::ElseIf(cond) => {
                        return Err(ParseError::UnexpectedToken {
                            span: cond.span,
                            found: format!("'{}'", Keyword::ElseIf),
                            expected: vec!["statement", Keyword::End.spelling()],
                        })
                    }
                },
                _ => body.push(self.statement()?),
            }
            self.expect_line_end()?;
        };
        self.block_depth -= 1;
        Ok((body, terminator))
    }

    /// `@( cond ) IF ...`, `@( cond ) WHILE ...`, or an ELSEIF arm header
    /// that belongs to the enclosing IF.
    fn conditional(&mut self) -> Result<Conditional, ParseError> {
        let at = self.expect(TokenKind::AtSign, "@")?;
        let span = at.span;
        self.expect(TokenKind::LParen, "(")?;
        let cond = self.expr(1)?;
        self.expect(TokenKind::RParen, ")")?;
        match self.peek_kind() {
            TokenKind::Keyword(Keyword::If) => {
                self.advance();
                self.if_rest(span, cond).map(Conditional::Stmt)
            }
            TokenKind::Keyword(Keyword::While) => {
                self.advance();
                let (body, _) = self.block(Keyword::While, span, false)?;
                Ok(Conditional::Stmt(Stmt {
                    kind: StmtKind::While { cond, body },
                    span,
                }))
            }
            TokenKind::Keyword(Keyword::ElseIf) => {
                self.advance();
                Ok(Conditional::ElseIf(Expr::new(cond.kind, span)))
            }
            _ => Err(self.unexpected(vec![
                Keyword::If.spelling(),
                Keyword::While.spelling(),
                Keyword::ElseIf.spelling(),
            ])),
        }
    }

    fn if_rest(&mut self, span: Span, first_cond: Expr) -> Result<Stmt, ParseError> {
        let mut arms = Vec::new();
        let mut cond = first_cond;
        let mut else_body = None;
        loop {
            self.expect_line_end()?;
            let (body, term) = self.block(Keyword::If, span, true)?;
            arms.push(IfArm { cond, body });
            match term {
                Terminator::End => break,
                Terminator::ElseIf(next) => cond = next,
                Terminator::Else => {
                    self.expect_line_end()?;
                    let (body, _) = self.block(Keyword::If, span, false)?;
                    else_body = Some(body);
                    break;
                }
            }
        }
        Ok(Stmt {
            kind: StmtKind::If { arms, else_body },
            span,
        })
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let tok = self.peek();
        let span = tok.span;
        let kind = match tok.kind {
            TokenKind::Keyword(Keyword::Print) => {
                self.advance();
                let mut args = Vec::new();
                if !self.at_line_end() {
                    args.push(self.expr(1)?);
                    while self.peek_kind() == TokenKind::Comma {
                        self.advance();
                        args.push(self.expr(1)?);
                    }
                }
                StmtKind::Print(args)
            }
            TokenKind::Keyword(Keyword::Break) => {
                self.advance();
                StmtKind::Break
            }
            TokenKind::Keyword(Keyword::Continue) => {
                self.advance();
                StmtKind::Continue
            }
            TokenKind::Keyword(Keyword::Return) => {
                self.advance();
                if self.at_line_end() {
                    StmtKind::Return(None)
                } else {
                    StmtKind::Return(Some(self.expr(1)?))
                }
            }
            TokenKind::Keyword(Keyword::Function) => {
                if self.block_depth > 0 {
                    return Err(ParseError::NestedFunction { span });
                }
                self.advance();
                self.function_rest(span)?
            }
            TokenKind::Identifier if self.peek_kind_at(1) == TokenKind::Assign => {
                let name = self.advance().lexeme.clone();
                self.advance();
                let value = self.expr(1)?;
                StmtKind::Assign { name, value }
            }
            TokenKind::Keyword(k) if !k.is_reserved() => {
                return Err(self.unexpected(vec!["statement"]));
            }
            _ => StmtKind::Expr(self.expr(1)?),
        };
        Ok(Stmt { kind, span })
    }

    fn function_rest(&mut self, span: Span) -> Result<StmtKind, ParseError> {
        let name = self.expect_ident()?.lexeme.clone();
        self.expect(TokenKind::LParen, "(")?;
        let mut params = Vec::new();
        if self.peek_kind() != TokenKind::RParen {
            params.push(self.expect_ident()?.lexeme.clone());
            while self.peek_kind() == TokenKind::Comma {
                self.advance();
                params.push(self.expect_ident()?.lexeme.clone());
            }
        }
        self.expect(TokenKind::RParen, ")")?;
        self.expect_line_end()?;
        let (body, _) = self.block(Keyword::Function, span, false)?;
        Ok(StmtKind::FuncDef(Rc::new(FuncDef {
            name,
            params,
            body,
            span,
        })))
    }

    fn binary_op(&self) -> Option<(Operator, u8)> {
        let TokenKind::Operator(op) = self.peek_kind() else {
            return None;
        };
        let prec = match op {
            Operator::Or => 1,
            Operator::And => 2,
            op if op.is_comparison() => 3,
            Operator::Plus | Operator::Minus => 4,
            Operator::Star | Operator::Slash | Operator::Percent => 5,
            _ => return None,
        };
        Some((op, prec))
    }

    /// Precedence climbing over the left-associative binary levels.
    pub fn expr(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        let mut lhs_is_comparison = false;
        while let Some((op, prec)) = self.binary_op() {
            if prec < min_prec {
                break;
            }
            let op_span = self.advance().span;
            if op.is_comparison() && lhs_is_comparison {
                return Err(ParseError::ChainedComparison { span: op_span });
            }
            let rhs = self.expr(prec + 1)?;
            let span = lhs.span;
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
            lhs_is_comparison = op.is_comparison();
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let op = match self.peek_kind() {
            TokenKind::Operator(Operator::Minus) => UnaryOp::Neg,
            TokenKind::Operator(Operator::Not) => UnaryOp::Not,
            _ => return self.power(),
        };
        let span = self.advance().span;
        let operand = self.unary()?;
        Ok(Expr::new(
            ExprKind::Unary {
                op,
                operand: Box::new(operand),
            },
            span,
        ))
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek_kind() != TokenKind::Operator(Operator::Caret) {
            return Ok(base);
        }
        self.advance();
        let exponent = self.unary()?;
        let span = base.span;
        Ok(Expr::new(
            ExprKind::Binary {
                op: Operator::Caret,
                lhs: Box::new(base),
                rhs: Box::new(exponent),
            },
            span,
        ))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek();
        let span = tok.span;
        let kind = match tok.kind {
            TokenKind::IntegerLit => {
                self.advance();
                let v = tok
                    .lexeme
                    .parse::<i64>()
                    .map_err(|_| ParseError::IntegerTooLarge {
                        span,
                        text: tok.lexeme.clone(),
                    })?;
                ExprKind::Int(v)
            }
            TokenKind::FloatLit => {
                self.advance();
                // The lexer only admits digits with a single dot.
                ExprKind::Float(tok.lexeme.parse::<f64>().expect("float literal"))
            }
            TokenKind::StringLit => {
                self.advance();
                ExprKind::Str(tok.string_value().expect("string literal"))
            }
            TokenKind::Identifier => {
                self.advance();
                let name = tok.lexeme.clone();
                if self.peek_kind() == TokenKind::LParen {
                    self.advance();
                    let args = self.comma_list(TokenKind::RParen, ")")?;
                    ExprKind::Call { name, args }
                } else {
                    ExprKind::Ident(name)
                }
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr(1)?;
                self.expect(TokenKind::RParen, ")")?;
                inner.kind
            }
            TokenKind::LBracket => {
                self.advance();
                ExprKind::List(self.comma_list(TokenKind::RBracket, "]")?)
            }
            _ => return Err(self.unexpected(vec!["expression"])),
        };
        if self.peek_kind() == TokenKind::LBracket {
            return Err(ParseError::BracketIndexing {
                span: self.peek().span,
            });
        }
        Ok(Expr::new(kind, span))
    }

    fn comma_list(
        &mut self,
        close: TokenKind,
        close_text: &'static str,
    ) -> Result<Vec<Expr>, ParseError> {
        let mut items = Vec::new();
        if self.peek_kind() == close {
            self.advance();
            return Ok(items);
        }
        loop {
            items.push(self.expr(1)?);
            match self.peek_kind() {
                TokenKind::Comma => {
                    self.advance();
                }
                k if k == close => {
                    self.advance();
                    return Ok(items);
                }
                _ => return Err(self.unexpected(vec![",", close_text])),
            }
        }
    }
}
