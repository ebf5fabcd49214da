/// Significant digits used for every real number written to disk.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits, like C's `%.12g`: fixed notation
/// for exponents in `[-4, 12)`, scientific otherwise, trailing zeros dropped.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to the value [`format_real`] prints.
pub fn round_real(x: f64) -> f64 {
    if x.is_finite() {
        format_real(x).parse().expect("formatted real parses")
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(1.0), "1");
        assert_eq!(format_real(-2.5), "-2.5");
        assert_eq!(format_real(11.0 / 27.0), "0.407407407407");
        assert_eq!(format_real(269.0 / 729.0), "0.368998628258");
        assert_eq!(format_real(1e-7), "1e-07");
        assert_eq!(format_real(1.234e-5), "1.234e-05");
        assert_eq!(format_real(123456.0), "123456");
        assert_eq!(format_real(1e12), "1e+12");
        assert_eq!(format_real(999999999999.5), "1e+12");
        assert_eq!(format_real(0.1 + 0.2), "0.3");
        assert_eq!(format_real(100.0), "100");
    }

    #[test]
    fn rounding_is_idempotent() {
        for k in 1..2000 {
            let x = (k as f64).sin() * 10f64.powi(k % 17 - 8);
            let r = round_real(x);
            assert_eq!(round_real(r), r);
            assert_eq!(format_real(r), format_real(x));
            assert!((r - x).abs() <= 1e-11 * x.abs());
        }
    }
}
