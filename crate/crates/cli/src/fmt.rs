//! Numeric formatting: 6 significant digits for human tables, 17 for
//! machine output.

/// Six significant digits, plain decimal where readable.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if (-4..6).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.5e}")
    }
}

/// Seventeen significant digits: parses back to the identical f64.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(sig6(-0.07179676972449078), "-0.0717968");
        assert_eq!(sig6(0.9409136330100016), "0.940914");
        assert_eq!(sig6(57.620091), "57.6201");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.23456789e-7), "1.23457e-7");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1 + 0.2, -0.08647347860502605, 1e-300] {
            let parsed: f64 = sig17(v).parse().unwrap();
            assert_eq!(parsed, v);
        }
    }
}
