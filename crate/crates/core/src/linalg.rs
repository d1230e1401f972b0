//! Exact matrix rank over `Q` (fraction-free Bareiss elimination) and over `GF(p)`.

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

/// Rank of an integer matrix over the prime field of characteristic `p`
/// (`p = 0` means the rationals).
pub fn rank(rows: &[Vec<i64>], characteristic: u32) -> usize {
    if characteristic == 0 {
        rank_rational(rows)
    } else {
        rank_mod_p(rows, characteristic)
    }
}

/// Rank of a sparse integer matrix given as rows of `(column, value)` pairs
/// sorted by column, by reducing each row against earlier pivots on its last
/// column. Over `Q` rows are combined fraction-free and divided by their
/// content; an overflow hands the matrix to the dense routine.
pub fn sparse_rank(rows: &[Vec<(usize, i64)>], ncols: usize, characteristic: u32) -> usize {
    match sparse_reduce(rows, characteristic) {
        Some(r) => r,
        None => {
            let dense: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    let mut d = vec![0; ncols];
                    for &(c, v) in r {
                        d[c] = v;
                    }
                    d
                })
                .collect();
            rank(&dense, characteristic)
        }
    }
}

type SparseRow = Vec<(usize, i64)>;

fn sparse_reduce(rows: &[SparseRow], characteristic: u32) -> Option<usize> {
    let p = i64::from(characteristic);
    let mut pivots: std::collections::HashMap<usize, SparseRow> = std::collections::HashMap::new();
    for row in rows {
        let mut row: SparseRow = if p == 0 {
            row.iter().copied().filter(|&(_, v)| v != 0).collect()
        } else {
            row.iter().map(|&(c, v)| (c, v.rem_euclid(p))).filter(|&(_, v)| v != 0).collect()
        };
        while let Some(&(lead, a)) = row.last() {
            let Some(piv) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let b = piv.last().expect("pivot rows are nonempty").1;
            row = if p == 0 {
                // b * row - a * piv
                let g = gcd(a, b);
                let (fa, fb) = (b / g, a / g);
                let mut combined = combine(&row, fa, piv, fb, |x, f, y, g| x.checked_mul(f)?.checked_sub(y.checked_mul(g)?))?;
                let c = combined.iter().fold(0, |acc, &(_, v)| gcd(acc, v));
                if c > 1 {
                    combined.iter_mut().for_each(|e| e.1 /= c);
                }
                combined
            } else {
                let f = (i128::from(a) * i128::from(mod_pow(b as u64, (p - 2) as u64, p as u64)) % i128::from(p)) as i64;
                combine(&row, 1, piv, f, |x, _, y, g| {
                    Some((i128::from(x) - i128::from(y) * i128::from(g)).rem_euclid(i128::from(p)) as i64)
                })?
            };
        }
    }
    Some(pivots.len())
}

/// Merges `x` and `y` column-wise with `op(x_c, fx, y_c, fy)`, dropping zeros.
fn combine(
    x: &[(usize, i64)],
    fx: i64,
    y: &[(usize, i64)],
    fy: i64,
    op: impl Fn(i64, i64, i64, i64) -> Option<i64>,
) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map_or(usize::MAX, |e| e.0);
        let cy = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, vx, vy) = if cx == cy {
            i += 1;
            j += 1;
            (cx, x[i - 1].1, y[j - 1].1)
        } else if cx < cy {
            i += 1;
            (cx, x[i - 1].1, 0)
        } else {
            j += 1;
            (cy, 0, y[j - 1].1)
        };
        let v = op(vx, fx, vy, fy)?;
        if v != 0 {
            out.push((c, v));
        }
    }
    Some(out)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let (pivots, rest) = unit_pivot_reduce(rows);
    pivots + bareiss_fallback(&rest)
}

/// Eliminates on entries equal to ±1 while any remain. Such pivots keep the
/// matrix integral, so `rank = pivots + rank(rest)` exactly. On overflow the
/// reduction stops early and returns what it has.
fn unit_pivot_reduce(rows: &[Vec<i64>]) -> (usize, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut pivots = 0;
    'outer: loop {
        let Some((r, c)) = m
            .iter()
            .enumerate()
            .find_map(|(i, row)| row.iter().position(|x| x.abs() == 1).map(|j| (i, j)))
        else {
            break;
        };
        let pivot_row = m.swap_remove(r);
        let sign = pivot_row[c];
        let mut next = Vec::with_capacity(m.len());
        for row in &m {
            let f = row[c] * sign;
            if f == 0 {
                next.push(row.clone());
                continue;
            }
            let mut reduced = Vec::with_capacity(row.len());
            for (x, p) in row.iter().zip(&pivot_row) {
                match i64::checked_mul(*p, f).and_then(|fp| i64::checked_sub(*x, fp)) {
                    Some(v) => reduced.push(v),
                    None => {
                        m.push(pivot_row);
                        break 'outer;
                    }
                }
            }
            if reduced.iter().any(|&x| x != 0) {
                next.push(reduced);
            }
        }
        m = next;
        pivots += 1;
    }
    (pivots, m)
}

fn bareiss_fallback(rows: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(r) = bareiss_rank(small) {
        return r;
    }
    // intermediate minors overflowed i128
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(big).expect("BigInt arithmetic cannot overflow")
}

/// Fraction-free elimination with column skipping. Every intermediate entry is
/// a minor of the input, so each division is exact. `None` on overflow.
fn bareiss_rank<T>(mut m: Vec<Vec<T>>) -> Option<usize>
where
    T: Clone + Zero + One + CheckedMul + CheckedSub + CheckedDiv,
{
    let nrows = m.len();
    if nrows == 0 {
        return Some(0);
    }
    let ncols = m[0].len();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let a = pivot.checked_mul(&row[j])?;
                let b = lead.checked_mul(&pivot_row[j])?;
                row[j] = a.checked_sub(&b)?.checked_div(&prev)?;
            }
            row[c] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

pub fn rank_mod_p(rows: &[Vec<i64>], p: u32) -> usize {
    let p = p as u64;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = mod_pow(m[r][c], p - 2, p);
        for x in m[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                row[j] = (row[j] + p - f * pivot_row[j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;
    use proptest::prelude::*;

    /// Plain Gaussian elimination over Q with explicit fractions.
    fn rank_by_fractions(rows: &[Vec<i64>]) -> usize {
        #[derive(Clone)]
        struct Frac(BigInt, BigInt);
        fn norm(f: Frac) -> Frac {
            if f.0.is_zero() {
                return Frac(BigInt::zero(), BigInt::one());
            }
            let g = num_integer_gcd(f.0.abs(), f.1.abs());
            let s = if f.1.is_negative() { -BigInt::one() } else { BigInt::one() };
            Frac(&f.0 / &g * &s, &f.1 / &g * &s)
        }
        fn num_integer_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
            while !b.is_zero() {
                let t = &a % &b;
                a = b;
                b = t;
            }
            a
        }
        let mut m: Vec<Vec<Frac>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Frac(BigInt::from(x), BigInt::one())).collect())
            .collect();
        if m.is_empty() {
            return 0;
        }
        let ncols = m[0].len();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].0.is_zero()) else { continue };
            m.swap(r, p);
            for i in r + 1..m.len() {
                if m[i][c].0.is_zero() {
                    continue;
                }
                // row_i -= (a_ic / a_rc) row_r
                let fnum = &m[i][c].0 * &m[r][c].1;
                let fden = &m[i][c].1 * &m[r][c].0;
                for j in c..ncols {
                    let t = Frac(&fnum * &m[r][j].0, &fden * &m[r][j].1);
                    let cur = m[i][j].clone();
                    m[i][j] = norm(Frac(&cur.0 * &t.1 - &t.0 * &cur.1, &cur.1 * &t.1));
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn small_examples() {
        let m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank_rational(&m), 1);
        assert_eq!(rank_mod_p(&m, 2), 1);
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_rational(&[]), 0);
        assert_eq!(rank_rational(&[vec![0, 0, 0]]), 0);
    }

    #[test]
    fn column_skipping() {
        let m = vec![vec![0, 1, 2], vec![0, 2, 4], vec![0, 0, 3]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 3), 1);
    }

    #[test]
    fn big_fallback_matches() {
        // Hilbert-like growth: large entries overflow i128 inside Bareiss
        let n = 12;
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i as i64 + 3) * (j as i64 + 7)).pow(3) % 1_000_003 + i as i64 * 1_000_000_000).collect())
            .collect();
        assert_eq!(rank_rational(&m), rank_by_fractions(&m));
    }

    proptest! {
        #[test]
        fn bareiss_matches_fraction_elimination(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..7)
        ) {
            prop_assert_eq!(rank_rational(&rows), rank_by_fractions(&rows));
        }

        #[test]
        fn unit_pivots_match_bareiss(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 7), 0..8)
        ) {
            prop_assert_eq!(rank_rational(&rows), bareiss_fallback(&rows));
        }

        #[test]
        fn sparse_matches_dense(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..8),
            p in prop::sample::select(vec![0u32, 2, 3, 5, 4_294_967_291]),
        ) {
            let sparse: Vec<Vec<(usize, i64)>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c, v)).collect())
                .collect();
            prop_assert_eq!(sparse_rank(&sparse, 6, p), rank(&rows, p));
        }

        #[test]
        fn mod_p_rank_never_exceeds_rational(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6)
        ) {
            let q = rank_rational(&rows);
            prop_assert!(rank_mod_p(&rows, 2) <= q);
            prop_assert!(rank_mod_p(&rows, 3) <= q);
            prop_assert_eq!(rank_mod_p(&rows, 1_000_003), q);
        }
    }
}
