use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors `d₁ | d₂ | … | d_r` (all positive) of an integer
/// matrix, by Smith normal form over `ℤ`.
pub fn invariant_factors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pr, pc)) = smallest_entry(&a, t) else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &q * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a[r][c].is_multiple_of(&a[t][t])));
                match bad {
                    Some(r) => {
                        for c in t..cols {
                            let v = a[r][c].clone();
                            a[t][c] += v;
                        }
                    }
                    None => break,
                }
            }
            // a remainder is now smaller than the pivot; move it up
            if let Some((pr, pc)) = smallest_entry_in_cross(&a, t) {
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

fn smallest_entry_in_cross(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best = (t, t);
    let col = (t..a.len()).map(|r| (r, t));
    let row = (t..a[t].len()).map(|c| (t, c));
    for (r, c) in col.chain(row) {
        let v = &a[r][c];
        if !v.is_zero() && (a[best.0][best.1].is_zero() || v.abs() < a[best.0][best.1].abs()) {
            best = (r, c);
        }
    }
    (!a[best.0][best.1].is_zero()).then_some(best)
}

/// Rank over `ℤ` (equal to the rank over `ℚ`).
pub fn rank(matrix: &[Vec<BigInt>]) -> usize {
    invariant_factors(matrix).len()
}
