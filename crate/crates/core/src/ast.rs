//! Syntax tree, the `-debug` dump format and a source pretty-printer.
//!
//! Equality on [`Expr`] and [`Stmt`] is structural: spans are ignored.

use std::fmt::Write as _;
use std::rc::Rc;

use crate::lexer::{Keyword, Operator};
use crate::span::Span;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Print(Vec<Expr>),
    Assign {
        name: String,
        value: Expr,
    },
    If {
        arms: Vec<IfArm>,
        else_body: Option<Vec<Stmt>>,
    },
    While {
        cond: Expr,
        body: Vec<Stmt>,
    },
    FuncDef(Rc<FuncDef>),
    Return(Option<Expr>),
    Break,
    Continue,
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfArm {
    pub cond: Expr,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub struct FuncDef {
    pub name: String,
    pub params: Vec<String>,
    pub body: Vec<Stmt>,
    pub span: Span,
}

impl PartialEq for FuncDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.params == other.params && self.body == other.body
    }
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Not,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Not => "!",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Int(i64),
    Float(f64),
    Str(String),
    Ident(String),
    List(Vec<Expr>),
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    /// `op` is never [`Operator::Not`].
    Binary {
        op: Operator,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Call {
        name: String,
        args: Vec<Expr>,
    },
}

/// Float literal text that the lexer reads back to the same value.
pub(crate) fn float_literal(v: f64) -> String {
    let s = format!("{v}");
    if s.contains('.') {
        s
    } else {
        s + ".0"
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

// ---------------------------------------------------------------------------
// Debug dump: one node per line, two-space indentation.

pub fn dump(program: &Program) -> String {
    let mut out = String::from("Program\n");
    for stmt in &program.body {
        dump_stmt(&mut out, stmt, 1);
    }
    out
}

fn line(out: &mut String, depth: usize, text: &str) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(text);
    out.push('\n');
}

fn dump_body(out: &mut String, label: &str, body: &[Stmt], depth: usize) {
    line(out, depth, label);
    for s in body {
        dump_stmt(out, s, depth + 1);
    }
}

fn dump_stmt(out: &mut String, stmt: &Stmt, depth: usize) {
    match &stmt.kind {
        StmtKind::Print(args) => {
            line(out, depth, "Print");
            for a in args {
                dump_expr(out, a, depth + 1);
            }
        }
        StmtKind::Assign { name, value } => {
            line(out, depth, &format!("Assign {name}"));
            dump_expr(out, value, depth + 1);
        }
        StmtKind::If { arms, else_body } => {
            line(out, depth, "If");
            for arm in arms {
                line(out, depth + 1, "Arm");
                dump_expr(out, &arm.cond, depth + 2);
                dump_body(out, "Body", &arm.body, depth + 2);
            }
            if let Some(body) = else_body {
                dump_body(out, "Else", body, depth + 1);
            }
        }
        StmtKind::While { cond, body } => {
            line(out, depth, "While");
            dump_expr(out, cond, depth + 1);
            dump_body(out, "Body", body, depth + 1);
        }
        StmtKind::FuncDef(f) => {
            line(
                out,
                depth,
                &format!("FuncDef {}({})", f.name, f.params.join(", ")),
            );
            dump_body(out, "Body", &f.body, depth + 1);
        }
        StmtKind::Return(value) => {
            line(out, depth, "Return");
            if let Some(v) = value {
                dump_expr(out, v, depth + 1);
            }
        }
        StmtKind::Break => line(out, depth, "Break"),
        StmtKind::Continue => line(out, depth, "Continue"),
        StmtKind::Expr(e) => {
            line(out, depth, "ExprStmt");
            dump_expr(out, e, depth + 1);
        }
    }
}

fn dump_expr(out: &mut String, expr: &Expr, depth: usize) {
    match &expr.kind {
        ExprKind::Int(v) => line(out, depth, &format!("Int {v}")),
        ExprKind::Float(v) => line(out, depth, &format!("Float {}", float_literal(*v))),
        ExprKind::Str(s) => line(out, depth, &format!("Str {}", quote(s))),
        ExprKind::Ident(name) => line(out, depth, &format!("Ident {name}")),
        ExprKind::List(items) => {
            line(out, depth, "List");
            for i in items {
                dump_expr(out, i, depth + 1);
            }
        }
        ExprKind::Unary { op, operand } => {
            line(out, depth, &format!("Unary {}", op.symbol()));
            dump_expr(out, operand, depth + 1);
        }
        ExprKind::Binary { op, lhs, rhs } => {
            line(out, depth, &format!("Binary {}", op.symbol()));
            dump_expr(out, lhs, depth + 1);
            dump_expr(out, rhs, depth + 1);
        }
        ExprKind::Call { name, args } => {
            line(out, depth, &format!("Call {name}"));
            for a in args {
                dump_expr(out, a, depth + 1);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Source pretty-printer. Binary and unary expressions are fully
// parenthesized, so re-parsing the output yields the same tree.

pub fn to_source(program: &Program) -> String {
    let mut out = String::new();
    for stmt in &program.body {
        write_stmt(&mut out, stmt, 0);
    }
    out
}

fn write_block(out: &mut String, body: &[Stmt], depth: usize) {
    for s in body {
        write_stmt(out, s, depth);
    }
}

fn write_stmt(out: &mut String, stmt: &Stmt, depth: usize) {
    let pad = "    ".repeat(depth);
    match &stmt.kind {
        StmtKind::Print(args) => {
            let args: Vec<_> = args.iter().map(expr_source).collect();
            if args.is_empty() {
                let _ = writeln!(out, "{pad}{}", Keyword::Print);
            } else {
                let _ = writeln!(out, "{pad}{} {}", Keyword::Print, args.join(", "));
            }
        }
        StmtKind::Assign { name, value } => {
            let _ = writeln!(out, "{pad}{name} = {}", expr_source(value));
        }
        StmtKind::If { arms, else_body } => {
            for (i, arm) in arms.iter().enumerate() {
                let kw = if i == 0 { Keyword::If } else { Keyword::ElseIf };
                let _ = writeln!(out, "{pad}@( {} ) {kw}", expr_source(&arm.cond));
                write_block(out, &arm.body, depth + 1);
            }
            if let Some(body) = else_body {
                let _ = writeln!(out, "{pad}{}", Keyword::Else);
                write_block(out, body, depth + 1);
            }
            let _ = writeln!(out, "{pad}{}", Keyword::End);
        }
        StmtKind::While { cond, body } => {
            let _ = writeln!(out, "{pad}@( {} ) {}", expr_source(cond), Keyword::While);
            write_block(out, body, depth + 1);
            let _ = writeln!(out, "{pad}{}", Keyword::End);
        }
        StmtKind::FuncDef(f) => {
            let _ = writeln!(
                out,
                "{pad}{} {}({})",
                Keyword::Function,
                f.name,
                f.params.join(", ")
            );
            write_block(out, &f.body, depth + 1);
            let _ = writeln!(out, "{pad}{}", Keyword::End);
        }
        StmtKind::Return(Some(v)) => {
            let _ = writeln!(out, "{pad}{} {}", Keyword::Return, expr_source(v));
        }
        StmtKind::Return(None) => {
            let _ = writeln!(out, "{pad}{}", Keyword::Return);
        }
        StmtKind::Break => {
            let _ = writeln!(out, "{pad}{}", Keyword::Break);
        }
        StmtKind::Continue => {
            let _ = writeln!(out, "{pad}{}", Keyword::Continue);
        }
        StmtKind::Expr(e) => {
            let _ = writeln!(out, "{pad}{}", expr_source(e));
        }
    }
}

pub fn expr_source(expr: &Expr) -> String {
    match &expr.kind {
        ExprKind::Int(v) => v.to_string(),
        ExprKind::Float(v) => float_literal(*v),
        ExprKind::Str(s) => quote(s),
        ExprKind::Ident(name) => name.clone(),
        ExprKind::List(items) => {
            let items: Vec<_> = items.iter().map(expr_source).collect();
            format!("[{}]", items.join(", "))
        }
        ExprKind::Unary { op, operand } => format!("({}{})", op.symbol(), expr_source(operand)),
        ExprKind::Binary { op, lhs, rhs } => format!(
            "({} {} {})",
            expr_source(lhs),
            op.symbol(),
            expr_source(rhs)
        ),
        ExprKind::Call { name, args } => {
            let args: Vec<_> = args.iter().map(expr_source).collect();
            format!("{name}({})", args.join(", "))
        }
    }
}
