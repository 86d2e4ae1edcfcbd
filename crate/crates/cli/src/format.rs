//! Number formatting shared by every subcommand.

/// Six significant digits, switching to scientific notation outside
/// [1e-4, 1e6).
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Error estimates only need their order of magnitude.
pub fn err(e: f64) -> String {
    format!("{e:.1e}")
}

pub fn with_err(value: f64, error: f64) -> String {
    format!("{} ± {}", sig6(value), err(error))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.164_329_91), "0.164330");
        assert_eq!(sig6(6.703_062_4), "6.70306");
        assert_eq!(sig6(10.149_416), "10.1494");
        assert_eq!(sig6(123_456.7), "123457");
        assert_eq!(sig6(3.2e-7), "3.20000e-7");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-1.5), "-1.50000");
    }

    #[test]
    fn lists() {
        assert_eq!(list(&[2, 2]), "[2,2]");
        assert_eq!(list(&[]), "[]");
    }
}
