//! Tree-walking evaluator.

use std::collections::HashMap;
use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::ast::{Expr, ExprKind, FuncDef, Program, Stmt, StmtKind, UnaryOp};
use crate::builtins::{BuiltinRegistry, Capability};
use crate::error::{RuntimeError, RuntimeErrorKind};
use crate::io::{IoPorts, OutputError};
use crate::lexer::Operator;
use crate::prng::Minstd;
use crate::span::Span;
use crate::turtle::{Canvas, TurtleState};
use crate::value::{format_value, Value};

pub const DEFAULT_MAX_CALL_DEPTH: usize = 1000;

/// How often (in steps) the wall-clock deadline is checked.
const CLOCK_CHECK_INTERVAL: u64 = 1024;

#[derive(Debug, Clone)]
pub struct Limits {
    pub max_call_depth: usize,
    /// Statement plus expression evaluations allowed per run.
    pub step_budget: Option<u64>,
    pub wall_clock: Option<Duration>,
    /// Longest string (in chars) or list a program may build.
    pub max_value_len: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_call_depth: DEFAULT_MAX_CALL_DEPTH,
            step_budget: None,
            wall_clock: None,
            max_value_len: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub limits: Limits,
    /// When false, file builtins fail with `BuiltinDisabled`.
    pub allow_file_io: bool,
    /// Seeds the generator and turns `seed()` into a no-op.
    pub pinned_seed: Option<i64>,
}

impl Options {
    pub fn cli() -> Self {
        Options {
            allow_file_io: true,
            ..Options::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus {
    pub code: i32,
    /// The program called `exit()` rather than running off the end.
    pub explicit: bool,
}

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus {
        code: 0,
        explicit: false,
    };
}

/// Result of one REPL entry.
#[derive(Debug, Clone, PartialEq)]
pub enum EntryOutcome {
    Continue,
    Exit(i32),
}

#[derive(Debug, Default)]
struct Frame {
    locals: HashMap<String, Value>,
}

/// The turtle and everything it has drawn in this run.
#[derive(Debug, Clone, Default)]
pub struct TurtleWorld {
    pub state: TurtleState<f64>,
    pub canvas: Canvas<f64>,
    /// Set once any turtle builtin runs.
    pub used: bool,
}

/// Control signal out of a statement.
enum Flow {
    Normal,
    Break(Span),
    Continue(Span),
    Return(Value, Span),
}

type Result<T> = std::result::Result<T, RuntimeError>;

pub struct Interpreter {
    globals: HashMap<String, Value>,
    functions: HashMap<String, Rc<FuncDef>>,
    frames: Vec<Frame>,
    registry: &'static BuiltinRegistry,
    pub(crate) options: Options,
    pub(crate) rng: Minstd,
    pub(crate) turtle: TurtleWorld,
    steps: u64,
    deadline: Option<Instant>,
}

impl Default for Interpreter {
    fn default() -> Self {
        Interpreter::new(Options::default())
    }
}

impl Interpreter {
    pub fn new(options: Options) -> Self {
        let rng = Minstd::new(options.pinned_seed.unwrap_or(1));
        Interpreter {
            globals: HashMap::new(),
            functions: HashMap::new(),
            frames: Vec::new(),
            registry: BuiltinRegistry::standard(),
            options,
            rng,
            turtle: TurtleWorld::default(),
            steps: 0,
            deadline: None,
        }
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    pub fn turtle(&self) -> &TurtleWorld {
        &self.turtle
    }

    pub fn global(&self, name: &str) -> Option<&Value> {
        self.globals.get(name)
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn start_run(&mut self) {
        self.steps = 0;
        self.frames.clear();
        self.deadline = self.options.limits.wall_clock.map(|d| Instant::now() + d);
    }

    /// Runs a whole program. `exit(n)` ends the run with code `n`.
    pub fn run(&mut self, program: &Program, io: &mut dyn IoPorts) -> Result<ExitStatus> {
        self.start_run();
        match self.exec_top_level(&program.body, io, false) {
            Ok(()) => Ok(ExitStatus::SUCCESS),
            Err(RuntimeError {
                kind: RuntimeErrorKind::ExitRequested(code),
                ..
            }) => Ok(ExitStatus {
                code,
                explicit: true,
            }),
            Err(e) => Err(e),
        }
    }

    /// Runs one REPL entry, echoing the values of top-level expression
    /// statements. Globals, functions and the turtle persist between entries.
    pub fn run_entry(&mut self, program: &Program, io: &mut dyn IoPorts) -> Result<EntryOutcome> {
        self.start_run();
        match self.exec_top_level(&program.body, io, true) {
            Ok(()) => Ok(EntryOutcome::Continue),
            Err(RuntimeError {
                kind: RuntimeErrorKind::ExitRequested(code),
                ..
            }) => Ok(EntryOutcome::Exit(code)),
            Err(e) => Err(e),
        }
    }

    fn exec_top_level(&mut self, body: &[Stmt], io: &mut dyn IoPorts, echo: bool) -> Result<()> {
        for stmt in body {
            if echo {
                if let StmtKind::Expr(expr) = &stmt.kind {
                    self.tick(stmt.span)?;
                    let value = self.eval_expr(expr, io)?;
                    if self.should_echo(expr) {
                        self.write(io, &format!("{}\n", format_value(&value)), stmt.span)?;
                    }
                    continue;
                }
            }
            match self.exec_stmt(stmt, io)? {
                Flow::Normal => {}
                Flow::Break(span) => return Err(break_outside(span)),
                Flow::Continue(span) => return Err(continue_outside(span)),
                Flow::Return(_, span) => {
                    return Err(RuntimeError::new(
                        RuntimeErrorKind::ReturnOutsideFunction,
                        span,
                        "பின்கொடு (return) used outside a function",
                    ))
                }
            }
        }
        Ok(())
    }

    /// Procedures such as `printf` or turtle verbs have no interesting result.
    fn should_echo(&self, expr: &Expr) -> bool {
        match &expr.kind {
            ExprKind::Call { name, .. } if !self.functions.contains_key(name) => {
                self.registry.get(name).is_none_or(|b| b.returns_value)
            }
            _ => true,
        }
    }

    fn tick(&mut self, span: Span) -> Result<()> {
        self.steps += 1;
        if let Some(budget) = self.options.limits.step_budget {
            if self.steps > budget {
                return Err(RuntimeError::new(
                    RuntimeErrorKind::BudgetExceeded,
                    span,
                    format!("resource limit exceeded: more than {budget} steps"),
                ));
            }
        }
        if let Some(deadline) = self.deadline {
            if self.steps.is_multiple_of(CLOCK_CHECK_INTERVAL) && Instant::now() >= deadline {
                return Err(RuntimeError::new(
                    RuntimeErrorKind::BudgetExceeded,
                    span,
                    "resource limit exceeded: time limit reached",
                ));
            }
        }
        Ok(())
    }

    pub(crate) fn write(&mut self, io: &mut dyn IoPorts, text: &str, span: Span) -> Result<()> {
        io.write(text).map_err(|e| match e {
            OutputError::LimitExceeded(_) => RuntimeError::new(
                RuntimeErrorKind::BudgetExceeded,
                span,
                format!("resource limit exceeded: {e}"),
            ),
            OutputError::Io(e) => RuntimeError::new(
                RuntimeErrorKind::Io,
                span,
                format!("cannot write output: {e}"),
            ),
        })
    }

    pub(crate) fn check_len(&self, len: usize, span: Span) -> Result<()> {
        match self.options.limits.max_value_len {
            Some(max) if len > max => Err(RuntimeError::new(
                RuntimeErrorKind::BudgetExceeded,
                span,
                format!("resource limit exceeded: value longer than {max}"),
            )),
            _ => Ok(()),
        }
    }

    fn exec_block(&mut self, body: &[Stmt], io: &mut dyn IoPorts) -> Result<Flow> {
        for stmt in body {
            match self.exec_stmt(stmt, io)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn exec_stmt(&mut self, stmt: &Stmt, io: &mut dyn IoPorts) -> Result<Flow> {
        self.tick(stmt.span)?;
        match &stmt.kind {
            StmtKind::Print(args) => {
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.eval_expr(a, io)?);
                }
                self.exec_print(&values, io, stmt.span)?;
            }
            StmtKind::Assign { name, value } => {
                let v = self.eval_expr(value, io)?;
                self.assign(name, v);
            }
            StmtKind::If { arms, else_body } => {
                for arm in arms {
                    if self.condition(&arm.cond, io)? {
                        return self.exec_block(&arm.body, io);
                    }
                }
                if let Some(body) = else_body {
                    return self.exec_block(body, io);
                }
            }
            StmtKind::While { cond, body } => return self.exec_while(cond, body, io),
            StmtKind::FuncDef(f) => {
                self.functions.insert(f.name.clone(), Rc::clone(f));
            }
            StmtKind::Return(value) => {
                let v = match value {
                    Some(e) => self.eval_expr(e, io)?,
                    None => Value::Int(0),
                };
                return Ok(Flow::Return(v, stmt.span));
            }
            StmtKind::Break => return Ok(Flow::Break(stmt.span)),
            StmtKind::Continue => return Ok(Flow::Continue(stmt.span)),
            StmtKind::Expr(e) => {
                self.eval_expr(e, io)?;
            }
        }
        Ok(Flow::Normal)
    }

    fn exec_while(&mut self, cond: &Expr, body: &[Stmt], io: &mut dyn IoPorts) -> Result<Flow> {
        while self.condition(cond, io)? {
            match self.exec_block(body, io)? {
                Flow::Normal | Flow::Continue(_) => {}
                Flow::Break(_) => break,
                ret @ Flow::Return(..) => return Ok(ret),
            }
        }
        Ok(Flow::Normal)
    }

    /// Prints values separated by single spaces, then a newline.
    pub fn exec_print(&mut self, values: &[Value], io: &mut dyn IoPorts, span: Span) -> Result<()> {
        let mut line = values
            .iter()
            .map(format_value)
            .collect::<Vec<_>>()
            .join(" ");
        line.push('\n');
        self.write(io, &line, span)
    }

    fn condition(&mut self, cond: &Expr, io: &mut dyn IoPorts) -> Result<bool> {
        let v = self.eval_expr(cond, io)?;
        truthy(&v, cond.span)
    }

    fn assign(&mut self, name: &str, value: Value) {
        let scope = match self.frames.last_mut() {
            Some(frame) => &mut frame.locals,
            None => &mut self.globals,
        };
        scope.insert(name.to_owned(), value);
    }

    fn lookup(&self, name: &str, span: Span) -> Result<Value> {
        // Function bodies see only their own locals; top-level code sees globals.
        let scope = match self.frames.last() {
            Some(frame) => &frame.locals,
            None => &self.globals,
        };
        if let Some(v) = scope.get(name) {
            return Ok(v.clone());
        }
        let hint = if self.registry.get(name).is_some() || self.functions.contains_key(name) {
            format!("'{name}' is a function; call it with {name}(...)")
        } else if !self.frames.is_empty() && self.globals.contains_key(name) {
            format!("undefined name '{name}' (functions cannot read top-level variables; pass it as an argument)")
        } else {
            format!("undefined name '{name}'")
        };
        Err(RuntimeError::new(
            RuntimeErrorKind::UndefinedName,
            span,
            hint,
        ))
    }

    pub fn eval_expr(&mut self, expr: &Expr, io: &mut dyn IoPorts) -> Result<Value> {
        self.tick(expr.span)?;
        let span = expr.span;
        match &expr.kind {
            ExprKind::Int(v) => Ok(Value::Int(*v)),
            ExprKind::Float(v) => Ok(Value::Float(*v)),
            ExprKind::Str(s) => Ok(Value::Str(s.clone())),
            ExprKind::Ident(name) => self.lookup(name, span),
            ExprKind::List(items) => {
                let mut values = Vec::with_capacity(items.len());
                for item in items {
                    values.push(self.eval_expr(item, io)?);
                }
                Ok(Value::List(values))
            }
            ExprKind::Unary { op, operand } => {
                let v = self.eval_expr(operand, io)?;
                unary(*op, v, span)
            }
            ExprKind::Binary {
                op: Operator::And,
                lhs,
                rhs,
            } => {
                if !self.logical_operand(lhs, Operator::And, io)? {
                    return Ok(Value::Bool(false));
                }
                Ok(Value::Bool(self.logical_operand(rhs, Operator::And, io)?))
            }
            ExprKind::Binary {
                op: Operator::Or,
                lhs,
                rhs,
            } => {
                if self.logical_operand(lhs, Operator::Or, io)? {
                    return Ok(Value::Bool(true));
                }
                Ok(Value::Bool(self.logical_operand(rhs, Operator::Or, io)?))
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.eval_expr(lhs, io)?;
                let r = self.eval_expr(rhs, io)?;
                let v = binary(*op, l, r, span)?;
                if let Value::Str(s) = &v {
                    self.check_len(s.chars().count(), span)?;
                }
                Ok(v)
            }
            ExprKind::Call { name, args } => {
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.eval_expr(a, io)?);
                }
                self.call_function(name, values, span, io)
            }
        }
    }

    fn logical_operand(&mut self, e: &Expr, op: Operator, io: &mut dyn IoPorts) -> Result<bool> {
        match self.eval_expr(e, io)? {
            Value::Bool(b) => Ok(b),
            other => Err(RuntimeError::type_mismatch(
                e.span,
                format!(
                    "operator {op} needs boolean operands, got {}",
                    other.type_name()
                ),
            )),
        }
    }

    /// Calls a user function or builtin by name. User definitions take
    /// precedence over builtins of the same name.
    pub fn call_function(
        &mut self,
        name: &str,
        args: Vec<Value>,
        span: Span,
        io: &mut dyn IoPorts,
    ) -> Result<Value> {
        if let Some(f) = self.functions.get(name).cloned() {
            return self.call_user(&f, args, span, io);
        }
        let Some(builtin) = self.registry.get(name) else {
            return Err(RuntimeError::new(
                RuntimeErrorKind::UndefinedName,
                span,
                format!("undefined function '{name}'"),
            ));
        };
        if !builtin.arity.accepts(args.len()) {
            return Err(RuntimeError::new(
                RuntimeErrorKind::ArityMismatch,
                span,
                format!(
                    "{name}() takes {} argument(s), got {}",
                    builtin.arity,
                    args.len()
                ),
            ));
        }
        match builtin.capability {
            Capability::File if !self.options.allow_file_io => {
                return Err(RuntimeError::new(
                    RuntimeErrorKind::BuiltinDisabled,
                    span,
                    format!("{name}(): builtin disabled in playground"),
                ))
            }
            Capability::Turtle => self.turtle.used = true,
            _ => {}
        }
        (builtin.func)(self, io, args, span)
    }

    fn call_user(
        &mut self,
        f: &FuncDef,
        args: Vec<Value>,
        span: Span,
        io: &mut dyn IoPorts,
    ) -> Result<Value> {
        if args.len() != f.params.len() {
            return Err(RuntimeError::new(
                RuntimeErrorKind::ArityMismatch,
                span,
                format!(
                    "{}() takes {} argument(s), got {}",
                    f.name,
                    f.params.len(),
                    args.len()
                ),
            ));
        }
        if self.frames.len() >= self.options.limits.max_call_depth {
            return Err(RuntimeError::new(
                RuntimeErrorKind::RecursionLimit,
                span,
                format!(
                    "recursion limit of {} calls reached in {}()",
                    self.options.limits.max_call_depth, f.name
                ),
            ));
        }
        let locals = f.params.iter().cloned().zip(args).collect();
        self.frames.push(Frame { locals });
        let result =
            stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || self.exec_block(&f.body, io));
        self.frames.pop();
        match result? {
            Flow::Normal => Ok(Value::Int(0)),
            Flow::Return(v, _) => Ok(v),
            Flow::Break(s) => Err(break_outside(s)),
            Flow::Continue(s) => Err(continue_outside(s)),
        }
    }
}

fn break_outside(span: Span) -> RuntimeError {
    RuntimeError::new(
        RuntimeErrorKind::BreakOutsideLoop,
        span,
        "நிறுத்து (break) used outside a loop",
    )
}

fn continue_outside(span: Span) -> RuntimeError {
    RuntimeError::new(
        RuntimeErrorKind::ContinueOutsideLoop,
        span,
        "தொடர் (continue) used outside a loop",
    )
}

/// Conditions accept booleans and numbers (true iff nonzero).
pub fn truthy(v: &Value, span: Span) -> Result<bool> {
    match *v {
        Value::Bool(b) => Ok(b),
        Value::Int(i) => Ok(i != 0),
        Value::Float(f) => Ok(f != 0.0),
        _ => Err(RuntimeError::type_mismatch(
            span,
            format!(
                "a condition must be a boolean or number, got {}",
                v.type_name()
            ),
        )),
    }
}

fn unary(op: UnaryOp, v: Value, span: Span) -> Result<Value> {
    match (op, v) {
        (UnaryOp::Neg, Value::Int(i)) => i
            .checked_neg()
            .map(Value::Int)
            .ok_or_else(|| overflow("-", span)),
        (UnaryOp::Neg, Value::Float(f)) => Ok(Value::Float(-f)),
        (UnaryOp::Not, Value::Bool(b)) => Ok(Value::Bool(!b)),
        (op, v) => Err(RuntimeError::type_mismatch(
            span,
            format!(
                "operator {} cannot be applied to {}",
                op.symbol(),
                v.type_name()
            ),
        )),
    }
}

fn overflow(op: &str, span: Span) -> RuntimeError {
    RuntimeError::new(
        RuntimeErrorKind::IntegerOverflow,
        span,
        format!("integer overflow in operator {op}"),
    )
}

fn mismatch(op: Operator, l: &Value, r: &Value, span: Span) -> RuntimeError {
    RuntimeError::type_mismatch(
        span,
        format!(
            "operator {op} cannot be applied to {} and {}",
            l.type_name(),
            r.type_name()
        ),
    )
}

/// Evaluates a strict (non-short-circuit) binary operator.
pub fn binary(op: Operator, l: Value, r: Value, span: Span) -> Result<Value> {
    use Operator::*;
    match op {
        Eq => return Ok(Value::Bool(l.equals(&r))),
        Neq => return Ok(Value::Bool(!l.equals(&r))),
        Lt | Gt | Le | Ge => {
            let ord = compare_numbers(&l, &r).ok_or_else(|| mismatch(op, &l, &r, span))?;
            let result = match op {
                Lt => ord.is_lt(),
                Gt => ord.is_gt(),
                Le => ord.is_le(),
                _ => ord.is_ge(),
            };
            // NaN compares false everywhere.
            let nan = matches!(l, Value::Float(f) if f.is_nan())
                || matches!(r, Value::Float(f) if f.is_nan());
            return Ok(Value::Bool(result && !nan));
        }
        _ => {}
    }

    if op == Plus {
        if let (Value::Str(a), Value::Str(b)) = (&l, &r) {
            let mut s = String::with_capacity(a.len() + b.len());
            s.push_str(a);
            s.push_str(b);
            return Ok(Value::Str(s));
        }
    }

    if matches!(op, Slash | Percent) && r.as_f64() == Some(0.0) && l.is_number() {
        return Err(RuntimeError::new(
            RuntimeErrorKind::DivisionByZero,
            span,
            format!("division by zero in operator {op}"),
        ));
    }

    match (&l, &r) {
        (Value::Int(a), Value::Int(b)) => int_arith(op, *a, *b, span),
        _ => match (l.as_f64(), r.as_f64()) {
            (Some(a), Some(b)) => Ok(Value::Float(float_arith(op, a, b))),
            _ => Err(mismatch(op, &l, &r, span)),
        },
    }
}

fn int_arith(op: Operator, a: i64, b: i64, span: Span) -> Result<Value> {
    let sym = op.symbol();
    let v = match op {
        Operator::Plus => a.checked_add(b),
        Operator::Minus => a.checked_sub(b),
        Operator::Star => a.checked_mul(b),
        // Exact quotients stay integral; everything else becomes a float.
        Operator::Slash => {
            return Ok(match (a.checked_rem(b), a.checked_div(b)) {
                (Some(0), Some(q)) => Value::Int(q),
                (Some(0), None) => return Err(overflow(sym, span)),
                _ => Value::Float(a as f64 / b as f64),
            })
        }
        // Truncated remainder: takes the sign of the dividend.
        Operator::Percent => Some(a.checked_rem(b).unwrap_or(0)),
        Operator::Caret if b >= 0 => match u32::try_from(b) {
            Ok(exp) => a.checked_pow(exp),
            Err(_) if a == 0 || a == 1 => Some(a),
            Err(_) if a == -1 => Some(if b % 2 == 0 { 1 } else { -1 }),
            Err(_) => None,
        },
        Operator::Caret => return Ok(Value::Float((a as f64).powf(b as f64))),
        _ => unreachable!("non-arithmetic operator {op}"),
    };
    v.map(Value::Int).ok_or_else(|| overflow(sym, span))
}

fn float_arith(op: Operator, a: f64, b: f64) -> f64 {
    match op {
        Operator::Plus => a + b,
        Operator::Minus => a - b,
        Operator::Star => a * b,
        Operator::Slash => a / b,
        Operator::Percent => a % b,
        Operator::Caret => a.powf(b),
        _ => unreachable!("non-arithmetic operator {op}"),
    }
}

fn compare_numbers(l: &Value, r: &Value) -> Option<std::cmp::Ordering> {
    use std::cmp::Ordering;
    match (l, r) {
        (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
        (Value::Int(a), Value::Float(b)) => Some(cmp_int_float(*a, *b)),
        (Value::Float(a), Value::Int(b)) => Some(cmp_int_float(*b, *a).reverse()),
        (Value::Float(a), Value::Float(b)) => Some(a.partial_cmp(b).unwrap_or(Ordering::Equal)),
        _ => None,
    }
}

fn cmp_int_float(i: i64, f: f64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if f.is_nan() {
        return Ordering::Equal;
    }
    if f >= 9.223372036854776e18 {
        return Ordering::Less;
    }
    if f < -9.223372036854776e18 {
        return Ordering::Greater;
    }
    let t = f.trunc() as i64;
    match i.cmp(&t) {
        Ordering::Equal if f > t as f64 => Ordering::Less,
        Ordering::Equal if f < t as f64 => Ordering::Greater,
        other => other,
    }
}
