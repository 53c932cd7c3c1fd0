//! Number formatting shared by every CSV writer.

/// `%.17g`-style formatting: 17 significant digits, trailing zeros dropped,
/// fixed notation for decimal exponents in `[-4, 17)`. Round-trips every
/// finite `f64` and never depends on the locale.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|ch| *ch != '.').collect();
    let sign = if v < 0.0 { "-" } else { "" };

    if (-4..17).contains(&exp) {
        let body = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        format!("{sign}{}", trim_fraction(&body))
    } else {
        let body = trim_fraction(&format!("{}.{}", &digits[..1], &digits[1..]));
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{body}e{esign}{:02}", exp.abs())
    }
}

fn trim_fraction(s: &str) -> String {
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
