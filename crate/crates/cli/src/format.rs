//! Fixed, bit-stable number formatting for CSV output.

/// `x` with 9 significant digits, trailing zeros dropped. Plain decimal for
/// `1e-5 ≤ |x| < 1e15`, scientific otherwise.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // the rounding to 9 digits is done once, by the formatter
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let sign = if neg { "-" } else { "" };
    if !(-5..15).contains(&exp) {
        let m = trim(&format!("{}.{}", &digits[..1], &digits[1..]));
        return format!("{sign}{m}e{exp}");
    }
    let body = if exp >= 0 {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{}", trim(&body))
}

/// As [`sig9`] with an explicit sign.
pub fn signed9(x: f64) -> String {
    let s = sig9(if x == 0.0 { 0.0 } else { x });
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

fn trim(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain() {
        assert_eq!(sig9(-1.5), "-1.5");
        assert_eq!(sig9(0.75f64.sqrt()), "0.866025404");
        assert_eq!(sig9(-2.322185354626086), "-2.32218535");
        assert_eq!(sig9(9.9999999999), "10");
        assert_eq!(sig9(123456789012.0), "123456789000");
        assert_eq!(sig9(0.000123456789123), "0.000123456789");
        assert_eq!(sig9(1.0), "1");
    }

    #[test]
    fn scientific() {
        assert_eq!(sig9(3.8e-16), "3.8e-16");
        assert_eq!(sig9(-1.234567891e20), "-1.23456789e20");
    }

    #[test]
    fn signs() {
        assert_eq!(signed9(0.75f64.sqrt()), "+0.866025404");
        assert_eq!(signed9(-0.0), "+0");
        assert_eq!(signed9(-0.5), "-0.5");
    }
}
