//! Fraction-free sparse linear algebra over `Q`.
//!
//! Rows are scaled to primitive integer vectors and kept that way through
//! elimination, so entries stay small and no rational arithmetic happens in
//! the inner loop. The echelon form is fully reduced (Gauss-Jordan).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::par;
use crate::scalar::Scalar;

pub type Row = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row.first().map(|(_, x)| x.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_zero() && g != BigInt::one() {
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Converts a rational sparse row to a primitive integer row.
pub fn integer_row(entries: &[(usize, Scalar)]) -> Row {
    let mut l = BigInt::one();
    for (_, x) in entries {
        l = l.lcm(x.denom());
    }
    let mut row: Row = entries
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, (x * &l).to_integer()))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    make_primitive(&mut row);
    row
}

fn coeff(row: &Row, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `a * r - b * s`, then made primitive.
fn combine(a: &BigInt, r: &Row, b: &BigInt, s: &Row) -> Row {
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let take_r = j >= s.len() || (i < r.len() && r[i].0 < s[j].0);
        let take_s = i >= r.len() || (j < s.len() && s[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_s {
            out.push((s[j].0, -(b * &s[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &s[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Eliminates `col` from `row` using `pivot`, whose leading entry is at `col`.
fn eliminate(row: &Row, pivot: &Row, col: usize) -> Option<Row> {
    let x = coeff(row, col)?.clone();
    let p = &pivot[0].1;
    let g = x.gcd(p);
    Some(combine(&(p / &g), row, &(x / g), pivot))
}

/// Fully reduced row echelon form, keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub ncols: usize,
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: BTreeMap::new() }
    }

    pub fn from_rows(ncols: usize, rows: &[Vec<(usize, Scalar)>]) -> Self {
        let mut e = Self::new(ncols);
        let ints = par::map(rows, |r| integer_row(r));
        for r in ints {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> BTreeSet<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduces `row` against the current basis; returns the remainder.
    pub fn reduce(&self, mut row: Row) -> Row {
        let cols: Vec<usize> = row.iter().map(|(c, _)| *c).filter(|c| self.rows.contains_key(c)).collect();
        for c in cols {
            if let Some(r) = eliminate(&row, &self.rows[&c], c) {
                row = r;
            }
        }
        row
    }

    /// Adds a row; returns true if the rank grew.
    pub fn insert(&mut self, row: Row) -> bool {
        let row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let col = row[0].0;
        let mut others: Vec<(usize, Row)> = std::mem::take(&mut self.rows).into_iter().collect();
        par::for_each_mut(&mut others, |(_, r)| {
            if let Some(x) = eliminate(r, &row, col) {
                *r = x;
            }
        });
        self.rows = others.into_iter().collect();
        self.rows.insert(col, row);
        true
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect();
        par::map(&free, |&f| {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[f] = Scalar::one();
            for (&p, row) in &self.rows {
                if let Some(x) = coeff(row, f) {
                    v[p] = -Scalar::new(x.clone(), row[0].1.clone());
                }
            }
            v
        })
    }
}

/// Nullspace of the matrix with the given sparse rows.
pub fn nullspace(ncols: usize, rows: &[Vec<(usize, Scalar)>]) -> Vec<Vec<Scalar>> {
    Echelon::from_rows(ncols, rows).nullspace()
}

/// Solves `A x = b` with free variables set to zero; `None` if inconsistent.
pub fn solve(ncols: usize, rows: &[Vec<(usize, Scalar)>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let aug: Vec<Vec<(usize, Scalar)>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            if !b.is_zero() {
                r.push((ncols, b.clone()));
            }
            r
        })
        .collect();
    let e = Echelon::from_rows(ncols + 1, &aug);
    if e.rows.contains_key(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (&p, row) in &e.rows {
        if let Some(b) = coeff(row, ncols) {
            x[p] = Scalar::new(b.clone(), row[0].1.clone());
        }
    }
    Some(x)
}

/// Transposes a list of sparse vectors (columns) into row equations indexed by key.
fn columns_to_rows<K: Ord + Clone>(columns: &[&BTreeMap<K, Scalar>]) -> (Vec<K>, Vec<Vec<(usize, Scalar)>>) {
    let mut keys: BTreeMap<K, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, x) in col.iter() {
            if !x.is_zero() {
                keys.entry(k.clone()).or_default().push((j, x.clone()));
            }
        }
    }
    let (ks, rows): (Vec<K>, Vec<_>) = keys.into_iter().unzip();
    (ks, rows)
}

/// Writes `target` as a combination of `basis`; `None` if it is not in the span.
pub fn express<K: Ord + Clone>(basis: &[&BTreeMap<K, Scalar>], target: &BTreeMap<K, Scalar>) -> Option<Vec<Scalar>> {
    let mut cols: Vec<&BTreeMap<K, Scalar>> = basis.to_vec();
    cols.push(target);
    let (keys, rows) = columns_to_rows(&cols);
    let n = basis.len();
    let mut a = Vec::with_capacity(keys.len());
    let mut b = Vec::with_capacity(keys.len());
    for r in rows {
        let mut rhs = Scalar::zero();
        let lhs: Vec<(usize, Scalar)> = r
            .into_iter()
            .filter_map(|(j, x)| {
                if j == n {
                    rhs = x;
                    None
                } else {
                    Some((j, x))
                }
            })
            .collect();
        a.push(lhs);
        b.push(rhs);
    }
    solve(n, &a, &b)
}

/// Linear relations among sparse vectors: a basis of `{c : Σ c_j v_j = 0}`.
pub fn relations<K: Ord + Clone>(vectors: &[&BTreeMap<K, Scalar>]) -> Vec<Vec<Scalar>> {
    let (_, rows) = columns_to_rows(vectors);
    nullspace(vectors.len(), &rows)
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: &[&BTreeMap<K, Scalar>]) -> usize {
    vectors.len() - relations(vectors).len()
}
