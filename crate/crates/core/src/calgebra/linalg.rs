//! Dense linear algebra over a prime field `F_p` with `u64` entries.

use crate::rings::{mul_mod, pow_mod};

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}


pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn dot(a: &[u64], b: &[u64], p: u64) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y, p), p))
}

pub(crate) fn axpy(acc: &mut [u64], c: u64, v: &[u64], p: u64) {
    if c == 0 {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = add_mod(*a, mul_mod(c, x, p), p);
    }
}

pub(crate) fn scale(v: &[u64], c: u64, p: u64) -> Vec<u64> {
    v.iter().map(|&x| mul_mod(x, c, p)).collect()
}

pub(crate) fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Reduced row echelon form. Returns the non-zero rows (pivots normalised to 1,
/// sorted by pivot column) and the pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p);
        rows[r] = scale(&rows[r], inv, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = p - row[c];
                axpy(row, f, &pivot_row, p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : M v = 0}` for `M` given by rows of length `ncols`.
pub(crate) fn nullspace(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let (red, pivots) = rref(rows, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `sum c_i vectors[i] = target`, if any.
pub(crate) fn solve(vectors: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = vectors.len();
    let dim = target.len();
    // Augmented system: columns are the vectors, last column the target.
    let rows: Vec<Vec<u64>> = (0..dim)
        .map(|r| {
            let mut row: Vec<u64> = vectors.iter().map(|v| v[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let (red, pivots) = rref(rows, n + 1, p);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut sol = vec![0; n];
    for (row, &pc) in red.iter().zip(&pivots) {
        sol[pc] = row[n];
    }
    Some(sol)
}

/// A subspace of `F_p^dim` held as a canonical reduced echelon basis, so two
/// subspaces are equal exactly when their representations are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
}

impl Submodule {
    pub fn span(p: u64, dim: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let rows: Vec<Vec<u64>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), dim, "vector length does not match dimension");
                v.into_iter().map(|x| x % p).collect()
            })
            .collect();
        let (rows, _) = rref(rows, dim, p);
        Submodule { p, dim, rows }
    }

    pub fn zero(p: u64, dim: usize) -> Self {
        Submodule { p, dim, rows: vec![] }
    }

    pub fn full(p: u64, dim: usize) -> Self {
        Self::span(p, dim, (0..dim).map(|i| unit(dim, i)))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(rows, self.dim, self.p).0.len() == self.rank()
    }

    pub fn is_subspace_of(&self, other: &Submodule) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule::span(
            self.p,
            self.dim,
            self.rows.iter().chain(&other.rows).cloned(),
        )
    }

    /// Vectors pairing to zero with every element (the dual annihilator).
    pub fn annihilator(&self) -> Submodule {
        Submodule::span(self.p, self.dim, nullspace(self.rows.clone(), self.dim, self.p))
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Every subspace contained in `self`, each exactly once.
    pub fn subspaces(&self) -> Vec<Submodule> {
        let r = self.rank();
        enumerate_echelon(self.p, r)
            .into_iter()
            .map(|coeffs| {
                let vs = coeffs.into_iter().map(|c| {
                    let mut v = vec![0; self.dim];
                    for (ci, row) in c.iter().zip(&self.rows) {
                        axpy(&mut v, *ci, row, self.p);
                    }
                    v
                });
                Submodule::span(self.p, self.dim, vs)
            })
            .collect()
    }

    /// Subspaces of codimension one in `self`.
    pub fn hyperplanes(&self) -> Vec<Submodule> {
        let r = self.rank();
        self.subspaces()
            .into_iter()
            .filter(|s| s.rank() + 1 == r)
            .collect()
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Number of subspaces of `F_p^n`, or `None` on overflow.
pub(crate) fn subspace_count(p: u64, n: usize) -> Option<u64> {
    // Gaussian binomials via the recurrence G(n,k) = G(n-1,k-1) + p^k G(n-1,k).
    let mut row = vec![1u64];
    for m in 1..=n {
        let mut next = vec![1u64; m + 1];
        for k in 1..m {
            let pk = p.checked_pow(k as u32)?;
            next[k] = row[k - 1].checked_add(pk.checked_mul(row[k])?)?;
        }
        row = next;
    }
    row.into_iter().try_fold(0u64, |a, b| a.checked_add(b))
}

/// Reduced echelon matrices of every subspace of `F_p^n` (rows as coefficient
/// vectors).
fn enumerate_echelon(p: u64, n: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        // Free slots: (row, col) with col after the row's pivot and not a pivot.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = p.pow(slots.len() as u32);
        for idx in 0..total {
            let mut m: Vec<Vec<u64>> = pivots.iter().map(|&pc| unit(n, pc)).collect();
            let mut rest = idx;
            for &(r, c) in &slots {
                m[r][c] = rest % p;
                rest /= p;
            }
            out.push(m);
        }
    }
    out
}
