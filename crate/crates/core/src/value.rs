use std::fmt;

/// A dynamically typed runtime value. There is no null: "no value" is an
/// error, and procedures that have nothing to return yield `Int(0)`.
/// Structural `==` compares variants exactly; language-level equality is [`Value::equals`].
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    List(Vec<Value>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Float(_) => "float",
            Value::Bool(_) => "boolean",
            Value::Str(_) => "string",
            Value::List(_) => "list",
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Int(v) => Some(v as f64),
            Value::Float(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_number(&self) -> bool {
        matches!(self, Value::Int(_) | Value::Float(_))
    }

    /// Language equality: numbers compare numerically across Int/Float,
    /// lists elementwise, and values of unrelated types are simply unequal.
    pub fn equals(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (a, b) if a.is_number() && b.is_number() => numeric_eq(a, b),
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::List(a), Value::List(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
            }
            _ => false,
        }
    }
}

fn numeric_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        // Exact comparison of an i64 against a double without rounding the integer.
        (Value::Int(i), Value::Float(f)) | (Value::Float(f), Value::Int(i)) => {
            f.fract() == 0.0
                && *f >= -9.223372036854776e18
                && *f < 9.223372036854776e18
                && *f as i64 == *i
        }
        (Value::Float(x), Value::Float(y)) => x == y,
        _ => false,
    }
}

/// Shortest decimal text that reads back as the same double, always with a
/// `.` or an exponent so that floats stay distinguishable from integers.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_owned();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_owned();
    }
    // Debug formatting is shortest-round-trip and switches to exponent form
    // for very large or small magnitudes.
    format!("{v:?}")
}

pub fn format_value(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, false);
    out
}

fn write_value(out: &mut String, v: &Value, nested: bool) {
    match v {
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Float(f) => out.push_str(&format_float(*f)),
        Value::Bool(true) => out.push_str("True"),
        Value::Bool(false) => out.push_str("False"),
        Value::Str(s) if nested => {
            out.push('"');
            out.push_str(s);
            out.push('"');
        }
        Value::Str(s) => out.push_str(s),
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, true);
            }
            out.push(']');
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_value(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formatting() {
        assert_eq!(format_value(&Value::Float(0.5)), "0.5");
        assert_eq!(format_value(&Value::Float(1.0)), "1.0");
        assert_eq!(
            format_value(&Value::Float(62.83185307179586)),
            "62.83185307179586"
        );
        assert_eq!(format_value(&Value::Float(1e21)), "1e21");
        assert_eq!(format_value(&Value::Float(-0.0)), "-0.0");
        assert_eq!(format_value(&Value::Float(f64::INFINITY)), "inf");
        assert_eq!(format_value(&Value::Int(-42)), "-42");
        assert_eq!(format_value(&Value::Bool(true)), "True");
        assert_eq!(format_value(&Value::Bool(false)), "False");
        assert_eq!(format_value(&Value::Str("அ".into())), "அ");
        assert_eq!(
            format_value(&Value::List(vec![Value::Int(1), Value::Str("அ".into())])),
            r#"[1, "அ"]"#
        );
        assert_eq!(
            format_value(&Value::List(vec![
                Value::List(vec![]),
                Value::Bool(true),
                Value::Float(2.5)
            ])),
            "[[], True, 2.5]"
        );
    }

    #[test]
    fn equality_rules() {
        assert!(Value::Int(5).equals(&Value::Float(5.0)));
        assert!(!Value::Int(5).equals(&Value::Str("5".into())));
        assert!(!Value::Int(1).equals(&Value::Bool(true)));
        assert!(!Value::Int(i64::MAX).equals(&Value::Float(9.223372036854776e18)));
        assert!(Value::List(vec![Value::Int(1), Value::Float(2.0)])
            .equals(&Value::List(vec![Value::Float(1.0), Value::Int(2)])));
        assert!(!Value::Float(f64::NAN).equals(&Value::Float(f64::NAN)));
    }

    proptest! {
        #[test]
        fn float_text_round_trips(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let text = format_float(v);
            prop_assert!(text.contains('.') || text.contains('e'));
            let back: f64 = text.parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
