//! Exact decimal rendering of ratios.

/// `100 · numerator / denominator` as a percentage string rounded half-up to
/// `significant` significant digits, computed by exact long division.
///
/// Returns `None` for a zero denominator, zero significant digits, or when
/// `100 · numerator` or a remainder step overflows `u128`.
///
/// ```
/// assert_eq!(kolam::ratio::percent(11_661_312, 1 << 36, 7).as_deref(), Some("0.01696944%"));
/// assert_eq!(kolam::ratio::percent(1, 3, 3).as_deref(), Some("33.3%"));
/// ```
pub fn percent(numerator: u128, denominator: u128, significant: usize) -> Option<String> {
    if denominator == 0 || significant == 0 {
        return None;
    }
    let scaled = numerator.checked_mul(100)?;
    if scaled == 0 {
        return Some("0%".into());
    }
    let whole = scaled / denominator;
    let mut rem = scaled % denominator;
    let mut digits: Vec<u8> = if whole == 0 { vec![0] } else { whole.to_string().bytes().map(|b| b - b'0').collect() };
    let mut int_len = digits.len();
    let mut next_digit = |digits: &mut Vec<u8>| -> Option<()> {
        let r = rem.checked_mul(10)?;
        digits.push((r / denominator) as u8);
        rem = r % denominator;
        Some(())
    };
    while !digits.iter().any(|&d| d != 0) {
        next_digit(&mut digits)?;
    }
    let first = digits.iter().position(|&d| d != 0).expect("nonzero digit");
    let cut = first + significant;
    while digits.len() <= cut {
        next_digit(&mut digits)?;
    }
    let round_up = digits[cut] >= 5;
    digits.truncate(cut);
    if digits.len() < int_len {
        digits.resize(int_len, 0);
    }
    if round_up {
        let mut k = cut;
        loop {
            if k == 0 {
                digits.insert(0, 1);
                int_len += 1;
                break;
            }
            k -= 1;
            if digits[k] == 9 {
                digits[k] = 0;
            } else {
                digits[k] += 1;
                break;
            }
        }
    }
    let leading = digits.iter().position(|&d| d != 0).expect("nonzero digit");
    while digits.len() - leading > significant && digits.len() > int_len {
        digits.pop();
    }
    let text = |ds: &[u8]| ds.iter().map(|d| char::from(b'0' + d)).collect::<String>();
    let int_part = text(&digits[..int_len]);
    let int_part = int_part.trim_start_matches('0');
    let int_part = if int_part.is_empty() { "0" } else { int_part };
    let frac = text(&digits[int_len..]);
    Some(if frac.is_empty() { format!("{int_part}%") } else { format!("{int_part}.{frac}%") })
}
