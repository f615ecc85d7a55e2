//! Number formatting shared by file writers.

/// C-style `%.17g`: shortest of fixed/exponent form with 17 significant digits and
/// trailing zeros removed; round-trips every f64.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let e = format!("{x:.16e}");
    let (mant, exp) = e.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-4..17).contains(&exp) {
        let s = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&s).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mant), sign, exp.abs())
    }
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
    use super::g17;

    #[test]
    fn matches_printf() {
        let cases = [
            (1.0, "1"),
            (0.1, "0.10000000000000001"),
            (-2.5, "-2.5"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-5, "1.5e-05"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (std::f64::consts::PI, "3.1415926535897931"),
            (0.0001, "0.0001"),
            (6.02e23, "6.02e+23"),
            (1e300, "1.0000000000000001e+300"),
        ];
        for (x, s) in cases {
            assert_eq!(g17(x), s, "{x}");
        }
        for x in [0.3, 1.0 / 3.0, 19.379372, 2.0f64.sqrt() * 1e-200] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
