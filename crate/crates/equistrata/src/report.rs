//! Byte-stable JSON emission: object keys sorted, floats always rendered as
//! `%.12e` (twelve-digit mantissa, sign and two-digit exponent), integers
//! plain. Identical values serialize to identical bytes.

use serde_json::Value;

/// Renders a float like C's `%.12e`: `-1.234567890123e+05`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // normalize -0.0
        return "0.000000000000e+00".to_string();
    }
    let s = format!("{:.12e}", x);
    // Rust renders `1.5e0`; rewrite exponent as sign + two digits.
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn write_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => write_string(out, s),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(out, k);
                out.push(':');
                write_value(out, &map[*k]);
            }
            out.push('}');
        }
    }
}

/// Canonical single-line JSON with a trailing newline.
pub fn to_canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn float_format_matches_c_style() {
        assert_eq!(format_float(1.0), "1.000000000000e+00");
        assert_eq!(format_float(-0.5), "-5.000000000000e-01");
        assert_eq!(format_float(12345.678), "1.234567800000e+04");
        assert_eq!(format_float(0.0), "0.000000000000e+00");
        assert_eq!(format_float(-0.0), "0.000000000000e+00");
        assert_eq!(format_float(1e-120), "1.000000000000e-120");
    }

    #[test]
    fn keys_are_sorted() {
        let v = json!({"b": 1, "a": {"z": true, "m": [1.5, 2]}});
        assert_eq!(
            to_canonical_json(&v),
            "{\"a\":{\"m\":[1.500000000000e+00,2],\"z\":true},\"b\":1}\n"
        );
    }
}
