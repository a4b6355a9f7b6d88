use coeffbounds::num_complex::Complex64;

const SIG: i32 = 12;

/// Formats with 12 significant digits, trailing zeros trimmed; plain
/// notation for exponents in `[-5, 12)`, scientific otherwise.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG).contains(&exp) {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        num(z.re)
    } else if z.re == 0.0 {
        format!("{}i", num(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", num(z.re), num(z.im.abs()))
    }
}

/// The value as it appears in the output, re-parsed.
pub fn rounded(x: f64) -> f64 {
    num(x).parse().unwrap_or(x)
}
