use itertools::Itertools;

use super::SymbolArray;

/// Every `t`-column projection contains each of the `d^t` tuples exactly
/// `r / d^t` times. Strength 0 holds vacuously.
pub fn verify_strength(a: &SymbolArray, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    if t > a.cols() {
        return false;
    }
    let (r, d) = (a.rows(), a.levels());
    let Some(cells) = d.checked_pow(t as u32) else {
        return false;
    };
    if cells > r || r % cells != 0 {
        return false;
    }
    let lambda = (r / cells) as u32;
    let mut hist = vec![0u32; cells];
    (0..a.cols()).combinations(t).all(|cols| {
        hist.iter_mut().for_each(|h| *h = 0);
        for row in a.iter_rows() {
            let idx = cols.iter().fold(0usize, |acc, &c| acc * d + row[c] as usize);
            hist[idx] += 1;
        }
        hist.iter().all(|&h| h == lambda)
    })
}

/// Largest `t` for which [`verify_strength`] holds.
pub fn max_strength(a: &SymbolArray) -> usize {
    // Strength is monotone: a t-projection balances every (t-1)-projection.
    (1..=a.cols())
        .take_while(|&t| verify_strength(a, t))
        .last()
        .unwrap_or(0)
}
