#![allow(dead_code)]

use std::collections::BTreeMap;

/// Every class `d h - sum a_i l_i` on the plane blown up in `m` points with
/// `x.x = -1` and `x.K = -1`, searched over `|d|, |a_i| <= bound`.
///
/// The only pruning is exact: the remaining squares must stay nonnegative and
/// the remaining sum must satisfy Cauchy-Schwarz against them.
pub fn brute_force_lines(m: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for d in -bound..=bound {
        let squares = d * d + 1;
        let sum = 3 * d - 1;
        let mut a = vec![0i64; m];
        search(0, &mut a, squares, sum, bound, &mut |a| {
            let mut c = vec![d];
            c.extend(a.iter().map(|x| -x));
            out.push(c);
        });
    }
    out.sort();
    out
}

fn search(i: usize, a: &mut Vec<i64>, squares: i64, sum: i64, bound: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (a.len() - i) as i64;
    if left == 0 {
        if squares == 0 && sum == 0 {
            emit(a);
        }
        return;
    }
    if squares < 0 || sum * sum > left * squares {
        return;
    }
    for x in -bound..=bound {
        if x * x > squares {
            continue;
        }
        a[i] = x;
        search(i + 1, a, squares - x * x, sum - x, bound, emit);
    }
    a[i] = 0;
}

/// Boundary bundle expected from a list of points: one entry per distinct
/// point, regular when the point repeats.
pub fn expected_boundary(order: u64, values: &[i64]) -> Vec<(u64, u32, bool)> {
    let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
    for v in values {
        *counts.entry(v.rem_euclid(order as i64) as u64).or_default() += 1;
    }
    counts.into_iter().map(|(p, m)| (p, m, m >= 2)).collect()
}

/// `(d+1)^2`: the Hilbert function of a quadric hypersurface in four variables.
pub fn quadric_hilbert(d: u32) -> usize {
    ((d + 1) * (d + 1)) as usize
}

/// Free module on two degree-one generators over a polynomial ring in three variables.
pub fn rank_two_free(d: u32) -> usize {
    if d == 0 {
        0
    } else {
        (d * (d + 1)) as usize
    }
}
