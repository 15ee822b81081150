//! Rendering helpers: locale-free CSV at 6 significant digits and the
//! JSON envelope `{"command", "inputs", "rows", "pass"}` with
//! full-precision floats. Both are byte-stable for identical inputs.

use std::io::Write;

use serde_json::{json, Value};

// Swallows write errors so that `expwell ... | head` ends quietly instead
// of panicking on the broken pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

/// 6 significant digits, '.' decimal separator, scientific notation only
/// outside [1e-4, 1e6).
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// Prints the envelope, optionally extended with extra top-level fields
/// (the verify command attaches its ladder-algebra report this way).
pub fn print_json(command: &str, inputs: Value, rows: Value, pass: bool, extra: Vec<(&str, Value)>) {
    let mut envelope = json!({
        "command": command,
        "inputs": inputs,
        "rows": rows,
        "pass": pass,
    });
    let map = envelope.as_object_mut().expect("object envelope");
    for (key, value) in extra {
        map.insert(key.to_string(), value);
    }
    emit(&serde_json::to_string_pretty(&envelope).expect("serializable envelope"));
}

/// Header plus pre-rendered rows.
pub fn print_csv(header: &str, rows: &[Vec<String>]) {
    emit(header);
    for row in rows {
        emit(&row.join(","));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig6(-4.476013136977449), "-4.47601");
        assert_eq!(fmt_sig6(-12.19257212875497), "-12.1926");
        assert_eq!(fmt_sig6(16.91140674980331), "16.9114");
        assert_eq!(fmt_sig6(0.000123456789), "0.000123457");
        assert_eq!(fmt_sig6(1.23456789e-7), "1.23457e-7");
        assert_eq!(fmt_sig6(123456.49), "123456");
        assert_eq!(fmt_sig6(1.23456789e8), "1.23457e8");
        assert_eq!(fmt_sig6(0.0), "0");
        assert_eq!(fmt_sig6(-0.7475922449640629), "-0.747592");
    }
}
