//! Native functions available in every scope.
//!
//! The registry is built once and shared read-only. Each entry carries its
//! arity and a capability tag so that sandboxed runs can refuse file access
//! without a separate registry. Turtle verbs are registered under both a
//! Tamil and an English name.

use std::collections::HashMap;
use std::fmt;

use once_cell::sync::Lazy;

use crate::error::{RuntimeError, RuntimeErrorKind};
use crate::interpreter::Interpreter;
use crate::io::IoPorts;
use crate::span::Span;
use crate::value::{format_value, Value};

pub type NativeFn =
    fn(&mut Interpreter, &mut dyn IoPorts, Vec<Value>, Span) -> Result<Value, RuntimeError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Exact(usize),
    Range(usize, usize),
}

impl Arity {
    pub fn accepts(self, n: usize) -> bool {
        match self {
            Arity::Exact(k) => n == k,
            Arity::Range(lo, hi) => (lo..=hi).contains(&n),
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Exact(k) => write!(f, "{k}"),
            Arity::Range(lo, hi) if *hi == usize::MAX => write!(f, "at least {lo}"),
            Arity::Range(lo, hi) => write!(f, "{lo} to {hi}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capability {
    Pure,
    Console,
    Random,
    Process,
    File,
    Turtle,
}

#[derive(Clone)]
pub struct Builtin {
    pub name: &'static str,
    pub arity: Arity,
    pub capability: Capability,
    /// False for procedures; the REPL does not echo their placeholder result.
    pub returns_value: bool,
    pub func: NativeFn,
}

impl fmt::Debug for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Builtin")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("capability", &self.capability)
            .finish()
    }
}

#[derive(Debug, thiserror::Error)]
#[error("builtin '{0}' registered twice")]
pub struct DuplicateBuiltin(pub &'static str);

#[derive(Debug, Default)]
pub struct BuiltinRegistry {
    entries: Vec<Builtin>,
    index: HashMap<&'static str, usize>,
}

static STANDARD: Lazy<BuiltinRegistry> = Lazy::new(|| {
    let mut reg = BuiltinRegistry::default();
    register_core(&mut reg).expect("standard builtin names are unique");
    reg
});

impl BuiltinRegistry {
    pub fn standard() -> &'static BuiltinRegistry {
        &STANDARD
    }

    pub fn register(&mut self, builtin: Builtin) -> Result<(), DuplicateBuiltin> {
        if self.index.contains_key(builtin.name) {
            return Err(DuplicateBuiltin(builtin.name));
        }
        self.index.insert(builtin.name, self.entries.len());
        self.entries.push(builtin);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Builtin> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Builtin> {
        self.entries.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|b| b.name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

type R = Result<Value, RuntimeError>;

fn entry(
    name: &'static str,
    arity: Arity,
    capability: Capability,
    returns_value: bool,
    func: NativeFn,
) -> Builtin {
    Builtin {
        name,
        arity,
        capability,
        returns_value,
        func,
    }
}

/// Installs the standard library into `reg`.
pub fn register_core(reg: &mut BuiltinRegistry) -> Result<(), DuplicateBuiltin> {
    use Arity::{Exact, Range};
    use Capability::*;

    let table: Vec<Builtin> = vec![
        entry("pi", Exact(0), Pure, true, |_, _, _, _| {
            Ok(Value::Float(std::f64::consts::PI))
        }),
        entry("sin", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "sin", f64::sin)
        }),
        entry("cos", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "cos", f64::cos)
        }),
        entry("tan", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "tan", f64::tan)
        }),
        entry("sqrt", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "sqrt", f64::sqrt)
        }),
        entry("exp", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "exp", f64::exp)
        }),
        entry("log", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "log", f64::ln)
        }),
        entry("floor", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "floor", f64::floor)
        }),
        entry("ceil", Exact(1), Pure, true, |_, _, a, s| {
            math1(&a, s, "ceil", f64::ceil)
        }),
        entry("abs", Exact(1), Pure, true, builtin_abs),
        entry("len", Exact(1), Pure, true, builtin_len),
        entry("elem", Exact(2), Pure, true, builtin_elem),
        entry("append", Exact(2), Pure, true, builtin_append),
        entry("insert", Exact(3), Pure, true, builtin_insert),
        entry("remove", Exact(2), Pure, true, builtin_remove),
        entry("str", Exact(1), Pure, true, |_, _, a, _| {
            Ok(Value::Str(format_value(&a[0])))
        }),
        entry("int", Exact(1), Pure, true, builtin_int),
        entry("float", Exact(1), Pure, true, builtin_float),
        entry(
            "printf",
            Range(1, usize::MAX),
            Console,
            false,
            builtin_printf,
        ),
        entry(
            "உள்ளீடு",
            Range(0, 1),
            Console,
            true,
            |i, io, a, s| builtin_input(i, io, &a, s, InputMode::Numeric),
        ),
        entry(
            "சரம்_உள்ளீடு",
            Range(0, 1),
            Console,
            true,
            |i, io, a, s| builtin_input(i, io, &a, s, InputMode::String),
        ),
        entry("seed", Exact(1), Random, false, builtin_seed),
        entry("random", Exact(0), Random, true, |i, _, _, _| {
            Ok(Value::Float(i.rng.next_f64()))
        }),
        entry("randint", Exact(2), Random, true, builtin_randint),
        entry("exit", Range(0, 1), Process, false, builtin_exit),
        entry("file_read", Exact(1), File, true, builtin_file_read),
        entry("file_write", Exact(2), File, false, builtin_file_write),
    ];
    for b in table {
        reg.register(b)?;
    }

    let turtle: [(&'static str, &'static str, Arity, NativeFn); 11] = [
        ("முன்னாடி", "forward", Exact(1), turtle_forward),
        ("பின்னாடி", "backward", Exact(1), turtle_backward),
        ("வலது", "right", Exact(1), turtle_right),
        ("இடது", "left", Exact(1), turtle_left),
        ("வட்டம்", "circle", Range(1, 2), turtle_circle),
        ("செல்", "goto", Exact(2), turtle_goto),
        ("பேனா_மேலே", "penup", Exact(0), turtle_penup),
        ("பேனா_கீழே", "pendown", Exact(0), turtle_pendown),
        ("பேனா_நிறம்", "pencolor", Exact(1), turtle_pencolor),
        (
            "நிரப்பு_தொடங்கு",
            "begin_fill",
            Range(0, 1),
            turtle_begin_fill,
        ),
        ("நிரப்பு_முடி", "end_fill", Exact(0), turtle_end_fill),
    ];
    for (tamil, english, arity, func) in turtle {
        reg.register(entry(tamil, arity, Turtle, false, func))?;
        reg.register(entry(english, arity, Turtle, false, func))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// argument helpers

fn number(v: &Value, func: &str, span: Span) -> Result<f64, RuntimeError> {
    v.as_f64().ok_or_else(|| {
        RuntimeError::type_mismatch(
            span,
            format!("{func}() expects a number, got {}", v.type_name()),
        )
    })
}

/// Integers, or floats with no fractional part.
fn integer(v: &Value, func: &str, span: Span) -> Result<i64, RuntimeError> {
    match *v {
        Value::Int(i) => Ok(i),
        Value::Float(f) if f.fract() == 0.0 && f.abs() < 9.2e18 => Ok(f as i64),
        _ => Err(RuntimeError::type_mismatch(
            span,
            format!("{func}() expects an integer, got {}", format_value(v)),
        )),
    }
}

fn string<'a>(v: &'a Value, func: &str, span: Span) -> Result<&'a str, RuntimeError> {
    match v {
        Value::Str(s) => Ok(s),
        _ => Err(RuntimeError::type_mismatch(
            span,
            format!("{func}() expects a string, got {}", v.type_name()),
        )),
    }
}

fn list(v: Value, func: &str, span: Span) -> Result<Vec<Value>, RuntimeError> {
    match v {
        Value::List(items) => Ok(items),
        _ => Err(RuntimeError::type_mismatch(
            span,
            format!("{func}() expects a list, got {}", v.type_name()),
        )),
    }
}

fn index(
    i: i64,
    len: usize,
    func: &str,
    span: Span,
    allow_end: bool,
) -> Result<usize, RuntimeError> {
    let limit = if allow_end {
        len
    } else {
        len.saturating_sub(1)
    };
    if i < 0 || (i as u64) > limit as u64 || (!allow_end && len == 0) {
        return Err(RuntimeError::new(
            RuntimeErrorKind::IndexOutOfRange,
            span,
            format!("{func}(): index {i} out of range for length {len}"),
        ));
    }
    Ok(i as usize)
}

fn math1(args: &[Value], span: Span, func: &str, f: fn(f64) -> f64) -> R {
    Ok(Value::Float(f(number(&args[0], func, span)?)))
}

// ---------------------------------------------------------------------------
// numbers, lists, strings

fn builtin_abs(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    match a[0] {
        Value::Int(i) => i.checked_abs().map(Value::Int).ok_or_else(|| {
            RuntimeError::new(
                RuntimeErrorKind::IntegerOverflow,
                span,
                "abs(): integer overflow",
            )
        }),
        ref v => Ok(Value::Float(number(v, "abs", span)?.abs())),
    }
}

fn builtin_len(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    match &a[0] {
        Value::Str(s) => Ok(Value::Int(s.chars().count() as i64)),
        Value::List(items) => Ok(Value::Int(items.len() as i64)),
        v => Err(RuntimeError::type_mismatch(
            span,
            format!("len() expects a string or list, got {}", v.type_name()),
        )),
    }
}

fn builtin_elem(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let i = integer(&a[1], "elem", span)?;
    match &a[0] {
        Value::List(items) => Ok(items[index(i, items.len(), "elem", span, false)?].clone()),
        Value::Str(s) => {
            let n = s.chars().count();
            let at = index(i, n, "elem", span, false)?;
            Ok(Value::Str(s.chars().nth(at).into_iter().collect()))
        }
        v => Err(RuntimeError::type_mismatch(
            span,
            format!("elem() expects a list or string, got {}", v.type_name()),
        )),
    }
}

fn builtin_append(interp: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let mut a = a.into_iter();
    let mut items = list(a.next().unwrap_or(Value::Int(0)), "append", span)?;
    interp.check_len(items.len() + 1, span)?;
    items.extend(a);
    Ok(Value::List(items))
}

fn builtin_insert(interp: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let i = integer(&a[1], "insert", span)?;
    let mut a = a.into_iter();
    let mut items = list(a.next().unwrap_or(Value::Int(0)), "insert", span)?;
    let at = index(i, items.len(), "insert", span, true)?;
    interp.check_len(items.len() + 1, span)?;
    items.insert(at, a.nth(1).unwrap_or(Value::Int(0)));
    Ok(Value::List(items))
}

fn builtin_remove(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let i = integer(&a[1], "remove", span)?;
    let mut items = list(
        a.into_iter().next().unwrap_or(Value::Int(0)),
        "remove",
        span,
    )?;
    let at = index(i, items.len(), "remove", span, false)?;
    items.remove(at);
    Ok(Value::List(items))
}

fn builtin_int(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let bad = |v: &Value| {
        RuntimeError::type_mismatch(span, format!("int() cannot convert {}", format_value(v)))
    };
    match &a[0] {
        Value::Int(i) => Ok(Value::Int(*i)),
        Value::Bool(b) => Ok(Value::Int(*b as i64)),
        Value::Float(f) if f.is_finite() && f.abs() < 9.2e18 => Ok(Value::Int(f.trunc() as i64)),
        Value::Str(s) => s
            .trim()
            .parse::<i64>()
            .map(Value::Int)
            .map_err(|_| bad(&a[0])),
        v => Err(bad(v)),
    }
}

fn builtin_float(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let bad = |v: &Value| {
        RuntimeError::type_mismatch(span, format!("float() cannot convert {}", format_value(v)))
    };
    match &a[0] {
        Value::Int(i) => Ok(Value::Float(*i as f64)),
        Value::Float(f) => Ok(Value::Float(*f)),
        Value::Bool(b) => Ok(Value::Float(*b as i64 as f64)),
        Value::Str(s) => s
            .trim()
            .parse::<f64>()
            .map(Value::Float)
            .map_err(|_| bad(&a[0])),
        v => Err(bad(v)),
    }
}

// ---------------------------------------------------------------------------
// console

/// Applies C escapes (`\n`, `\t`, `\\`, `\"`, `\r`, `\0`) to a format string.
fn unescape_c(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.peek().copied() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('0') => out.push('\0'),
            Some('\\') => out.push('\\'),
            Some('"') => out.push('"'),
            _ => {
                out.push('\\');
                continue;
            }
        }
        chars.next();
    }
    out
}

/// `%d`, `%f`, `%s` with optional `-`/`0` flags, width and precision; `%%`.
pub fn format_printf(fmt: &str, args: &[Value], span: Span) -> Result<String, RuntimeError> {
    let fmt = unescape_c(fmt);
    let mut out = String::new();
    let mut args = args.iter();
    let mut chars = fmt.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '%' {
            out.push(c);
            continue;
        }
        if chars.peek() == Some(&'%') {
            chars.next();
            out.push('%');
            continue;
        }
        let mut left = false;
        let mut zero = false;
        while let Some(&f) = chars.peek() {
            match f {
                '-' => left = true,
                '0' => zero = true,
                _ => break,
            }
            chars.next();
        }
        let mut width = String::new();
        while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            width.push(d);
            chars.next();
        }
        let mut precision = None;
        if chars.peek() == Some(&'.') {
            chars.next();
            let mut p = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                p.push(d);
                chars.next();
            }
            precision = Some(p.parse::<usize>().unwrap_or(0));
        }
        let conv = chars.next().ok_or_else(|| {
            RuntimeError::type_mismatch(span, "printf(): format ends in the middle of a conversion")
        })?;
        let arg = args.next().ok_or_else(|| {
            RuntimeError::new(
                RuntimeErrorKind::ArityMismatch,
                span,
                "printf(): not enough arguments for format string",
            )
        })?;
        let body = match conv {
            'd' | 'i' => match arg {
                Value::Int(i) => i.to_string(),
                Value::Float(f) if f.is_finite() => format!("{}", f.trunc() as i64),
                Value::Bool(b) => (*b as i64).to_string(),
                v => {
                    return Err(RuntimeError::type_mismatch(
                        span,
                        format!("printf(): %d needs a number, got {}", v.type_name()),
                    ))
                }
            },
            'f' => {
                let v = number(arg, "printf", span)?;
                format!("{:.*}", precision.unwrap_or(6), v)
            }
            's' => {
                let s = format_value(arg);
                match precision {
                    Some(p) => s.chars().take(p).collect(),
                    None => s,
                }
            }
            other => {
                return Err(RuntimeError::type_mismatch(
                    span,
                    format!("printf(): unknown conversion %{other}"),
                ))
            }
        };
        let width: usize = width.parse().unwrap_or(0);
        let len = body.chars().count();
        if len >= width {
            out.push_str(&body);
        } else if left {
            out.push_str(&body);
            out.extend(std::iter::repeat_n(' ', width - len));
        } else if zero && conv != 's' {
            let (sign, digits) = match body.strip_prefix('-') {
                Some(rest) => ("-", rest),
                None => ("", body.as_str()),
            };
            out.push_str(sign);
            out.extend(std::iter::repeat_n('0', width - len));
            out.push_str(digits);
        } else {
            out.extend(std::iter::repeat_n(' ', width - len));
            out.push_str(&body);
        }
    }
    if args.next().is_some() {
        return Err(RuntimeError::new(
            RuntimeErrorKind::ArityMismatch,
            span,
            "printf(): too many arguments for format string",
        ));
    }
    Ok(out)
}

fn builtin_printf(interp: &mut Interpreter, io: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let fmt = string(&a[0], "printf", span)?;
    let text = format_printf(fmt, &a[1..], span)?;
    interp.write(io, &text, span)?;
    Ok(Value::Int(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMode {
    Numeric,
    String,
}

/// Parses a numeric input line: integer if it reads as one, else float.
pub fn parse_number(line: &str) -> Option<Value> {
    let t = line.trim();
    if let Ok(i) = t.parse::<i64>() {
        return Some(Value::Int(i));
    }
    // Reject "inf", "nan" and friends.
    if !t.bytes().any(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse::<f64>()
        .ok()
        .filter(|f| f.is_finite())
        .map(Value::Float)
}

pub fn builtin_input(
    interp: &mut Interpreter,
    io: &mut dyn IoPorts,
    args: &[Value],
    span: Span,
    mode: InputMode,
) -> R {
    if let Some(prompt) = args.first() {
        interp.write(io, &format_value(prompt), span)?;
    }
    let line = io.read_line().ok_or_else(|| {
        RuntimeError::new(RuntimeErrorKind::InputExhausted, span, "input exhausted")
    })?;
    match mode {
        InputMode::String => Ok(Value::Str(line)),
        InputMode::Numeric => parse_number(&line).ok_or_else(|| {
            RuntimeError::type_mismatch(span, format!("expected number, got {line:?}"))
        }),
    }
}

// ---------------------------------------------------------------------------
// randomness and process control

fn builtin_seed(interp: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let x = number(&a[0], "seed", span)?;
    if interp.options.pinned_seed.is_none() {
        let seed = match a[0] {
            Value::Int(i) => i,
            // Saturating cast; NaN becomes 0 and then 1.
            _ => x.trunc() as i64,
        };
        interp.rng.reseed(seed);
    }
    Ok(Value::Int(0))
}

fn builtin_randint(interp: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let lo = integer(&a[0], "randint", span)?;
    let hi = integer(&a[1], "randint", span)?;
    if lo > hi {
        return Err(RuntimeError::new(
            RuntimeErrorKind::InvalidOperation,
            span,
            format!("randint(): empty range [{lo}, {hi}]"),
        ));
    }
    Ok(Value::Int(interp.rng.range_inclusive(lo, hi)))
}

fn builtin_exit(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let code = match a.first() {
        Some(v) => integer(v, "exit", span)?,
        None => 0,
    };
    let code = i32::try_from(code).unwrap_or(1);
    Err(RuntimeError::new(
        RuntimeErrorKind::ExitRequested(code),
        span,
        format!("exit({code})"),
    ))
}

fn builtin_file_read(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let path = string(&a[0], "file_read", span)?;
    std::fs::read_to_string(path).map(Value::Str).map_err(|e| {
        RuntimeError::new(
            RuntimeErrorKind::Io,
            span,
            format!("file_read({path:?}): {e}"),
        )
    })
}

fn builtin_file_write(_: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let path = string(&a[0], "file_write", span)?;
    let text = format_value(&a[1]);
    std::fs::write(path, text)
        .map(|_| Value::Int(0))
        .map_err(|e| {
            RuntimeError::new(
                RuntimeErrorKind::Io,
                span,
                format!("file_write({path:?}): {e}"),
            )
        })
}

// ---------------------------------------------------------------------------
// turtle

fn turtle_forward(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let d = number(&a[0], "forward", span)?;
    let w = &mut i.turtle;
    w.state.forward(&mut w.canvas, d);
    Ok(Value::Int(0))
}

fn turtle_backward(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let d = number(&a[0], "backward", span)?;
    let w = &mut i.turtle;
    w.state.backward(&mut w.canvas, d);
    Ok(Value::Int(0))
}

fn turtle_right(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    i.turtle.state.right(number(&a[0], "right", span)?);
    Ok(Value::Int(0))
}

fn turtle_left(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    i.turtle.state.left(number(&a[0], "left", span)?);
    Ok(Value::Int(0))
}

fn turtle_circle(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let radius = number(&a[0], "circle", span)?;
    let extent = match a.get(1) {
        Some(v) => number(v, "circle", span)?,
        None => 360.0,
    };
    let w = &mut i.turtle;
    w.state.circle(&mut w.canvas, radius, extent);
    Ok(Value::Int(0))
}

fn turtle_goto(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let x = number(&a[0], "goto", span)?;
    let y = number(&a[1], "goto", span)?;
    let w = &mut i.turtle;
    w.state.goto(&mut w.canvas, x, y);
    Ok(Value::Int(0))
}

fn turtle_penup(i: &mut Interpreter, _: &mut dyn IoPorts, _: Vec<Value>, _: Span) -> R {
    i.turtle.state.pen_up();
    Ok(Value::Int(0))
}

fn turtle_pendown(i: &mut Interpreter, _: &mut dyn IoPorts, _: Vec<Value>, _: Span) -> R {
    i.turtle.state.put_pen_down();
    Ok(Value::Int(0))
}

fn turtle_pencolor(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let c = string(&a[0], "pencolor", span)?;
    i.turtle.state.set_pen_color(c);
    Ok(Value::Int(0))
}

fn turtle_begin_fill(i: &mut Interpreter, _: &mut dyn IoPorts, a: Vec<Value>, span: Span) -> R {
    let color = match a.first() {
        Some(v) => string(v, "begin_fill", span)?.to_owned(),
        None => i.turtle.state.pen_color.clone(),
    };
    i.turtle.state.begin_fill(color);
    Ok(Value::Int(0))
}

fn turtle_end_fill(i: &mut Interpreter, _: &mut dyn IoPorts, _: Vec<Value>, span: Span) -> R {
    let w = &mut i.turtle;
    w.state
        .end_fill(&mut w.canvas)
        .map_err(|e| RuntimeError::new(RuntimeErrorKind::InvalidOperation, span, e.to_string()))?;
    Ok(Value::Int(0))
}
