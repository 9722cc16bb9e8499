//! Prime range syntax for `verify --primes`.

use cgl_core::field::is_prime;

/// Primes above 3 selected by `selection`: comma-separated items, each `a..b`
/// (exclusive), `a..=b` (inclusive) or a single prime.
pub fn parse(selection: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in selection.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let number = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad number {s:?} in {item:?}"));
        if let Some((lo, hi)) = item.split_once("..=") {
            let (lo, hi) = (number(lo)?, number(hi)?);
            out.extend((lo..=hi).filter(|&n| n > 3 && is_prime(n)));
        } else if let Some((lo, hi)) = item.split_once("..") {
            let (lo, hi) = (number(lo)?, number(hi)?);
            out.extend((lo..hi).filter(|&n| n > 3 && is_prime(n)));
        } else {
            let n = number(item)?;
            if n <= 3 || !is_prime(n) {
                return Err(format!("{n} is not a prime greater than 3"));
            }
            out.push(n);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(format!("{selection:?} selects no primes greater than 3"));
    }
    Ok(out)
}
