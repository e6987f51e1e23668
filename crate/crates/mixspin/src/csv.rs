//! CSV output: header `x,y,<columns>`, `\n` line endings, numbers with 12
//! significant digits.

use std::io::{self, Write};

use mixspin_core::SweepResult;

const SIGNIFICANT: usize = 12;

/// `%.12g`-style formatting: fixed notation for exponents in `[-5, 12)`,
/// scientific otherwise, trailing zeros trimmed.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", result.columns().join(","))?;
    let mut line = String::new();
    for row in &result.rows {
        line.clear();
        line.push_str(&format_number(row.x));
        line.push(',');
        line.push_str(&format_number(row.y));
        for v in &row.values {
            line.push(',');
            line.push_str(&format_number(*v));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use mixspin_core::sweep::{run_sweep, Param, Quantity, SweepAxis, SweepSpec};

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(0.05), "0.05");
        assert_eq!(format_number(16.249709016), "16.249709016");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(2.0 / 3.0 * 1e-3), "0.000666666666667");
        assert_eq!(format_number(1.234e-7), "1.234e-07");
        assert_eq!(format_number(6.02214076e23), "6.02214076e+23");
        assert_eq!(format_number(999999999999.9), "1e+12");
        assert_eq!(format_number(123456789012.0), "123456789012");
    }

    #[test]
    fn small_grid_layout() {
        let spec = SweepSpec {
            x: SweepAxis::new(Param::J, 0.5, 1.0, 2),
            y: SweepAxis::new(Param::T, 0.5, 1.0, 2),
            fixed: Param::B,
            fixed_value: 0.0,
            quantities: vec![Quantity::Z],
            t0_row: false,
            raw: false,
            allow_negative_field: false,
        };
        let result = run_sweep(&spec).unwrap();
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split_terminator('\n').collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "J,T,Z");
        assert!(lines[1].starts_with("0.5,0.5,"));
        assert!(lines[2].starts_with("1,0.5,"));
        assert!(!text.contains('\r'));
    }
}
