//! Fixed-precision number formatting shared by the CSV writers.

/// Significant digits used for every numeric output column.
pub const SIG_DIGITS: usize = 12;

/// Formats like C's `%.{digits}g`: fixed notation for decimal exponents in
/// `[-5, digits)`, scientific otherwise, trailing zeros removed. `-0` prints
/// as `0`.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    // the exponent after rounding decides the notation
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(fmt_sig(0.867245034766, 12), "0.867245034766");
        assert_eq!(fmt_sig(-0.0953139882595, 12), "-0.0953139882595");
        assert_eq!(fmt_sig(2.05e-4, 12), "0.000205");
        assert_eq!(fmt_sig(3.3168915e-6, 12), "3.3168915e-06");
        assert_eq!(fmt_sig(0.5, 12), "0.5");
        assert_eq!(fmt_sig(5.0, 12), "5");
        assert_eq!(fmt_sig(-0.0, 12), "0");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(123456789012345.0, 12), "1.23456789012e+14");
        assert_eq!(fmt_sig(9.9999999999999, 12), "10");
        assert_eq!(fmt_sig(f64::NAN, 12), "nan");
    }
}
