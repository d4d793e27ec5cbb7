//! `4w`-style window lengths.

use std::num::IntErrorKind;

use folty::Timestamp;

const UNITS: [(char, Timestamp); 5] = [('s', 1), ('m', 60), ('h', 3_600), ('d', 86_400), ('w', 604_800)];

/// Parses `<int>[s|m|h|d|w]`, case-insensitive, into seconds. A bare integer
/// is seconds.
pub fn parse_duration(text: &str) -> Result<Timestamp, String> {
    let s = text.trim();
    let (digits, scale) = match s.chars().last().map(|c| c.to_ascii_lowercase()) {
        Some(c) if c.is_ascii_alphabetic() => {
            let (_, scale) = UNITS
                .iter()
                .find(|(u, _)| *u == c)
                .ok_or_else(|| format!("unknown unit {c:?} in {text:?}; use s, m, h, d or w"))?;
            (&s[..s.len() - 1], *scale)
        }
        _ => (s, 1),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad duration {text:?}; expected e.g. 3600, 10m or 4w"));
    }
    let n: Timestamp = digits.parse().map_err(|e: std::num::ParseIntError| match e.kind() {
        IntErrorKind::PosOverflow => format!("duration {text:?} is too large"),
        _ => format!("bad duration {text:?}"),
    })?;
    n.checked_mul(scale).ok_or_else(|| format!("duration {text:?} is too large"))
}
