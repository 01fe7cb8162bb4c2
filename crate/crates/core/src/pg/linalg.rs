//! Row reduction over a [`Field`] on flat row-major matrices.

use crate::gf::{Elem, Field};

/// Brings the `ncols`-wide matrix `rows` to reduced row echelon form in
/// place, drops zero rows, and returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Elem>, ncols: usize) -> Vec<usize> {
    let nrows = rows.len().checked_div(ncols).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(sel) = (r..nrows).find(|&i| rows[i * ncols + c] != 0) else {
            continue;
        };
        if sel != r {
            for j in 0..ncols {
                rows.swap(sel * ncols + j, r * ncols + j);
            }
        }
        let inv = field.inv(rows[r * ncols + c]);
        if inv != 1 {
            for j in c..ncols {
                rows[r * ncols + j] = field.mul(rows[r * ncols + j], inv);
            }
        }
        for i in 0..nrows {
            if i == r {
                continue;
            }
            let f = rows[i * ncols + c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                let t = field.mul(f, rows[r * ncols + j]);
                rows[i * ncols + j] = field.sub(rows[i * ncols + j], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r * ncols);
    pivots
}

/// Basis of `{x : M x = 0}` for `M` in RREF with the given pivots.
pub fn nullspace(field: &Field, rows: &[Elem], pivots: &[usize], ncols: usize) -> Vec<Elem> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::with_capacity((ncols - pivots.len()) * ncols);
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let start = out.len();
        out.resize(start + ncols, 0);
        out[start + f] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            out[start + p] = field.neg(rows[i * ncols + f]);
        }
    }
    out
}

#[inline]
pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    let mut acc = 0;
    for (&x, &y) in a.iter().zip(b) {
        if x != 0 && y != 0 {
            acc = field.add(acc, field.mul(x, y));
        }
    }
    acc
}

/// `v <- v + c * w`
#[inline]
pub fn axpy(field: &Field, v: &mut [Elem], c: Elem, w: &[Elem]) {
    if c == 0 {
        return;
    }
    for (x, &y) in v.iter_mut().zip(w) {
        if y != 0 {
            *x = field.add(*x, field.mul(c, y));
        }
    }
}

pub fn rank(field: &Field, rows: &[Elem], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m, ncols).len()
}

/// Inverse of the square `n × n` matrix `m`, if it is invertible.
pub fn invert(field: &Field, m: &[Elem], n: usize) -> Option<Vec<Elem>> {
    let w = 2 * n;
    let mut aug = vec![0; n * w];
    for i in 0..n {
        aug[i * w..i * w + n].copy_from_slice(&m[i * n..(i + 1) * n]);
        aug[i * w + n + i] = 1;
    }
    let piv = rref(field, &mut aug, w);
    if piv.len() != n || piv[n - 1] != n - 1 {
        return None;
    }
    Some((0..n).flat_map(|i| aug[i * w + n..(i + 1) * w].to_vec()).collect())
}

/// Product of an `r × k` and a `k × c` matrix.
pub fn matmul(field: &Field, a: &[Elem], b: &[Elem], k: usize, c: usize) -> Vec<Elem> {
    let r = a.len().checked_div(k).unwrap_or(0);
    let mut out = vec![0; r * c];
    for i in 0..r {
        for j in 0..k {
            axpy(field, &mut out[i * c..(i + 1) * c], a[i * k + j], &b[j * c..(j + 1) * c]);
        }
    }
    out
}
