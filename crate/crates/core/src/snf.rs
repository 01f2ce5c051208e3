//! Smith normal form invariants of sparse integer matrices.
//!
//! Elimination runs on sparse rows with pivot = smallest nonzero absolute
//! value, ties broken by (row, column). Arithmetic is attempted in checked
//! `i64` first and redone over `BigInt` on overflow.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix given by rows of `(column, value)` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Adds `value` at `(row, col)`, merging duplicates.
    pub fn add(&mut self, row: usize, col: usize, value: i64) {
        let r = &mut self.entries[row];
        match r.binary_search_by_key(&col, |&(c, _)| c) {
            Ok(pos) => {
                r[pos].1 += value;
                if r[pos].1 == 0 {
                    r.remove(pos);
                }
            }
            Err(pos) => {
                if value != 0 {
                    r.insert(pos, (col, value));
                }
            }
        }
    }
}

/// Rank and invariant factors (`d_1 | d_2 | …`, all > 1) of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

trait Entry: Clone + PartialEq {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn abs_cmp_key(&self) -> BigInt;
    fn is_unit(&self) -> bool;
    /// `a − q·b`, `None` on overflow.
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    /// Floor quotient of `a / b`, `None` on overflow.
    fn quot(a: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_key(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| a.checked_sub(p))
    }
    fn quot(a: &Self, b: &Self) -> Option<Self> {
        a.checked_div(*b)?;
        Some(a.div_floor(b))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_key(&self) -> BigInt {
        self.abs()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn quot(a: &Self, b: &Self) -> Option<Self> {
        Some(a.div_floor(b))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T: Entry> {
    rows: Vec<Vec<(usize, T)>>,
    col_rows: HashMap<usize, BTreeSet<usize>>,
    active: BTreeSet<usize>,
}

impl<T: Entry> Work<T> {
    fn new(rows: Vec<Vec<(usize, T)>>) -> Self {
        let mut col_rows: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        let mut active = BTreeSet::new();
        for (i, r) in rows.iter().enumerate() {
            if !r.is_empty() {
                active.insert(i);
            }
            for (c, _) in r {
                col_rows.entry(*c).or_default().insert(i);
            }
        }
        Self {
            rows,
            col_rows,
            active,
        }
    }

    fn get(&self, row: usize, col: usize) -> Option<&T> {
        let r = &self.rows[row];
        r.binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|p| &r[p].1)
    }

    /// Smallest |a|, ties by (row, col); stops early on a unit.
    fn pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for &i in &self.active {
            for (c, v) in &self.rows[i] {
                if v.is_unit() {
                    return Some((i, *c));
                }
                let key = v.abs_cmp_key();
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    best = Some((key, i, *c));
                }
            }
        }
        best.map(|(_, i, c)| (i, c))
    }

    fn set_row(&mut self, i: usize, new: Vec<(usize, T)>) {
        let old = std::mem::replace(&mut self.rows[i], new);
        for (c, _) in &old {
            if let Some(s) = self.col_rows.get_mut(c) {
                s.remove(&i);
            }
        }
        for (c, _) in &self.rows[i] {
            self.col_rows.entry(*c).or_default().insert(i);
        }
        if self.rows[i].is_empty() {
            self.active.remove(&i);
        } else {
            self.active.insert(i);
        }
    }

    /// row_i ← row_i − q·row_r
    fn row_sub(&mut self, i: usize, q: &T, r: usize) -> Option<()> {
        let (a, b) = (&self.rows[i], &self.rows[r]);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let ca = a.get(x).map(|e| e.0).unwrap_or(usize::MAX);
            let cb = b.get(y).map(|e| e.0).unwrap_or(usize::MAX);
            if ca < cb {
                out.push(a[x].clone());
                x += 1;
            } else {
                let base = if ca == cb {
                    x += 1;
                    a[x - 1].1.clone()
                } else {
                    T::nil()
                };
                let v = T::sub_mul(&base, q, &b[y].1)?;
                y += 1;
                if !v.is_nil() {
                    out.push((cb, v));
                }
            }
        }
        self.set_row(i, out);
        Some(())
    }

    fn run(mut self) -> Option<(usize, Vec<BigInt>)> {
        let mut diagonal = Vec::new();
        while let Some((r, c)) = self.pivot() {
            let a = self.get(r, c).unwrap().clone();
            // clear column c outside row r
            let others: Vec<usize> = self
                .col_rows
                .get(&c)
                .map(|s| s.iter().copied().filter(|&i| i != r).collect())
                .unwrap_or_default();
            let mut restart = false;
            for i in others {
                let v = self.get(i, c).unwrap().clone();
                let q = T::quot(&v, &a)?;
                self.row_sub(i, &q, r)?;
                if self.get(i, c).is_some() {
                    restart = true;
                }
            }
            if restart {
                continue;
            }
            // column c now lives only in row r; column operations on row r
            // touch nothing else
            let row = self.rows[r].clone();
            let mut rest = vec![(c, a.clone())];
            for (j, v) in row {
                if j == c {
                    continue;
                }
                let q = T::quot(&v, &a)?;
                let rem = T::sub_mul(&v, &q, &a)?;
                if !rem.is_nil() {
                    rest.push((j, rem));
                }
            }
            if rest.len() > 1 {
                rest.sort_by_key(|e| e.0);
                self.set_row(r, rest);
                continue;
            }
            diagonal.push(a.to_big().abs());
            self.set_row(r, Vec::new());
            self.col_rows.remove(&c);
        }
        Some((diagonal.len(), diagonal))
    }
}

/// Normalises a diagonal into invariant-factor form (`d_1 | d_2 | …`),
/// dropping units.
pub fn invariant_factors(diagonal: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diagonal
        .iter()
        .map(|x| x.abs())
        .filter(|x| !x.is_one() && !x.is_zero())
        .collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d.sort();
    d
}

pub fn smith_invariants(m: &SparseMatrix) -> SmithInvariants {
    let small: Vec<Vec<(usize, i64)>> = m.entries.clone();
    let (rank, diagonal) = match Work::new(small).run() {
        Some(r) => r,
        None => {
            let big = m
                .entries
                .iter()
                .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
                .collect();
            Work::<BigInt>::new(big)
                .run()
                .expect("BigInt elimination cannot overflow")
        }
    };
    SmithInvariants {
        rank,
        torsion: invariant_factors(&diagonal),
    }
}

/// Dense reference implementation over `BigInt`; used as an oracle in tests.
pub fn smith_invariants_dense(rows: &[Vec<i64>]) -> SmithInvariants {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < n.min(m) {
        // smallest nonzero in the trailing block
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| v.abs() < *b) {
                    best = Some((v.abs(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..m {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..m {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..n {
                        let s = &q * &a[i][t];
                        a[i][j] -= s;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (p.abs(), t, t);
            for i in t + 1..n {
                if !a[i][t].is_zero() && a[i][t].abs() < best.0 {
                    best = (a[i][t].abs(), i, t);
                }
            }
            for j in t + 1..m {
                if !a[t][j].is_zero() && a[t][j].abs() < best.0 {
                    best = (a[t][j].abs(), t, j);
                }
            }
            a.swap(t, best.1);
            for row in a.iter_mut() {
                row.swap(t, best.2);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    SmithInvariants {
        rank: diag.len(),
        torsion: invariant_factors(&diag),
    }
}
