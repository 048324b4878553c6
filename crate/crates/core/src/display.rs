//! Two-decimal display formatting.
//!
//! Rounding works on the shortest decimal representation of the value, so
//! binary representation noise never decides a tie. Values exactly halfway
//! between two display values round toward zero (84.655 displays as 84.65);
//! everything else rounds to the nearest.

/// Formats `x` with exactly two decimals.
pub fn fmt2(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let text = x.to_string();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let mut kept: Vec<u8> = int_part.bytes().collect();
    let frac = frac_part.as_bytes();
    kept.push(*frac.first().unwrap_or(&b'0'));
    kept.push(*frac.get(1).unwrap_or(&b'0'));
    let rest = frac.get(2..).unwrap_or(&[]);
    let round_up = match rest.first() {
        Some(&d) if d > b'5' => true,
        Some(&b'5') => rest[1..].iter().any(|&d| d != b'0'),
        _ => false,
    };
    if round_up {
        let mut k = kept.len();
        loop {
            if k == 0 {
                kept.insert(0, b'1');
                break;
            }
            k -= 1;
            if kept[k] == b'9' {
                kept[k] = b'0';
            } else {
                kept[k] += 1;
                break;
            }
        }
    }
    let split = kept.len() - 2;
    let int_digits = std::str::from_utf8(&kept[..split]).expect("ascii digits");
    let frac_digits = std::str::from_utf8(&kept[split..]).expect("ascii digits");
    let is_zero = kept.iter().all(|&d| d == b'0');
    let sign = if negative && !is_zero { "-" } else { "" };
    format!("{sign}{int_digits}.{frac_digits}")
}

/// `x` rounded for display, as a number.
pub fn round2(x: f64) -> f64 {
    fmt2(x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_nearest() {
        assert_eq!(fmt2(95.238095238), "95.24");
        assert_eq!(fmt2(9.5238095), "9.52");
        assert_eq!(fmt2(84.65553235908142), "84.66");
        assert_eq!(fmt2(13.45), "13.45");
        assert_eq!(fmt2(6.875), "6.87");
        assert_eq!(fmt2(100.0), "100.00");
        assert_eq!(fmt2(0.0), "0.00");
        assert_eq!(fmt2(99.999), "100.00");
        assert_eq!(fmt2(0.004), "0.00");
        assert_eq!(fmt2(-1.236), "-1.24");
        assert_eq!(fmt2(-0.001), "0.00");
    }

    #[test]
    fn exact_ties_round_toward_zero() {
        assert_eq!(fmt2((91.86 + 77.45) / 2.0), "84.65");
        assert_eq!(fmt2(0.125), "0.12");
        assert_eq!(fmt2(-0.125), "-0.12");
        assert_eq!(fmt2(0.1251), "0.13");
    }

    #[test]
    fn round2_parses_back() {
        assert_eq!(round2(95.238095238), 95.24);
        assert!(round2(f64::NAN).is_nan());
    }
}
