//! Exact linear algebra over F2 and the integers.
//!
//! Everything here is exact: F2 matrices are bit rows, integer matrices use
//! `i128` entries with column reduction, and nonnegative feasibility is decided
//! by a rational simplex over arbitrary-precision fractions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A dense bit vector over F2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn add_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.get(*i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// A matrix over F2, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from the positions holding a 1. Duplicate positions are
    /// rejected since the entry set must be a set.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        let mut seen = BTreeSet::new();
        for &(r, c) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            assert!(seen.insert((r, c)), "duplicate entry ({r},{c})");
            m.set(r, c, true);
        }
        m
    }

    pub fn from_bitrows(rows: &[BitVector], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        BinaryMatrix {
            rows: rows.len(),
            cols,
            data: rows.to_vec(),
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v % 2 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            out.extend(row.ones().map(|c| (r, c)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_indices(self.rows, (0..self.rows).filter(|r| self.get(*r, c)))
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(v) {
                out.flip(r);
            }
        }
        out
    }

    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.data[r].ones() {
                out.data[r].add_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    /// Restricts to the given row and column index lists (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }
}

/// Row-reduces a copy of `rows` and returns the reduced rows with their pivot
/// columns. Rows that reduce to zero are dropped.
fn f2_row_echelon(mut rows: Vec<BitVector>) -> Vec<(usize, BitVector)> {
    let mut pivots: Vec<(usize, BitVector)> = Vec::new();
    for mut row in rows.drain(..) {
        for (p, prow) in &pivots {
            if row.get(*p) {
                row.add_assign(prow);
            }
        }
        if let Some(p) = row.first_one() {
            for (q, qrow) in pivots.iter_mut() {
                let _ = q;
                if qrow.get(p) {
                    qrow.add_assign(&row);
                }
            }
            pivots.push((p, row));
        }
    }
    pivots.sort_by_key(|(p, _)| *p);
    pivots
}

/// Rank of `m` over F2 together with a basis of its kernel.
///
/// Kernel vectors come out in reduced form: each has a single free coordinate
/// set, so they are independent by construction.
pub fn f2_rank_kernel(m: &BinaryMatrix) -> (usize, Vec<BitVector>) {
    let reduced = f2_row_echelon(m.data.clone());
    let rank = reduced.len();
    let pivot_cols: BTreeSet<usize> = reduced.iter().map(|(p, _)| *p).collect();
    let mut kernel = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = BitVector::zeros(m.cols);
        v.flip(free);
        for (p, row) in &reduced {
            if row.get(free) {
                v.flip(*p);
            }
        }
        kernel.push(v);
    }
    (rank, kernel)
}

pub fn f2_rank(m: &BinaryMatrix) -> usize {
    f2_row_echelon(m.data.clone()).len()
}

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<i128>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|x| *x as i128).collect()
            })
            .collect();
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// A matrix with `cols` columns and no rows; its kernel is everything.
    pub fn empty_rows(cols: usize) -> Self {
        IntegerMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i128) {
        self.data[r][c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: i128) {
        self.data[r][c] += value;
    }

    pub fn push_row(&mut self, row: Vec<i128>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// A Z-basis of the integer kernel of `m`.
///
/// Column operations bring `m` to column echelon form `m * u`, with `u`
/// unimodular; the columns of `u` sitting over zero columns span the kernel.
/// Each returned vector is made primitive with a nonnegative leading entry.
pub fn z_kernel_basis(m: &IntegerMatrix) -> Vec<Vec<i128>> {
    let n = m.cols;
    let mut a: Vec<Vec<i128>> = m.data.clone();
    let mut u = IntegerMatrix::identity(n).data;
    let mut next = 0usize;
    for r in 0..m.rows {
        if next >= n {
            break;
        }
        loop {
            // smallest nonzero |entry| among columns next.. of row r
            let pick = (next..n)
                .filter(|c| a[r][*c] != 0)
                .min_by_key(|c| a[r][*c].abs());
            let Some(p) = pick else { break };
            swap_cols(&mut a, &mut u, p, next);
            let pivot = a[r][next];
            let mut done = true;
            for c in next + 1..n {
                let q = a[r][c].div_euclid(pivot);
                if q != 0 {
                    add_col_multiple(&mut a, &mut u, c, next, -q);
                }
                if a[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                next += 1;
                break;
            }
        }
    }
    let mut basis: Vec<Vec<i128>> = (next..n)
        .map(|c| (0..n).map(|i| u[i][c]).collect::<Vec<_>>())
        .collect();
    for v in basis.iter_mut() {
        normalize_primitive(v);
    }
    basis
}

fn swap_cols(a: &mut [Vec<i128>], u: &mut [Vec<i128>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in u.iter_mut() {
        row.swap(i, j);
    }
}

fn add_col_multiple(a: &mut [Vec<i128>], u: &mut [Vec<i128>], target: usize, src: usize, k: i128) {
    for row in a.iter_mut() {
        row[target] += k * row[src];
    }
    for row in u.iter_mut() {
        row[target] += k * row[src];
    }
}

fn normalize_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    if let Some(first) = v.iter().find(|x| **x != 0) {
        if *first < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// A nonzero nonnegative integer vector in the kernel of `m`, if one exists.
///
/// Decided exactly by a two-phase rational simplex on
/// `m v = 0, sum(v) = 1, v >= 0`, then scaled to a primitive integer vector.
pub fn positive_kernel_witness(m: &IntegerMatrix) -> Option<Vec<i128>> {
    let n = m.cols;
    if n == 0 {
        return None;
    }
    let mut rows: Vec<Vec<BigRational>> = m
        .data
        .iter()
        .map(|r| r.iter().map(|x| rat(*x)).collect())
        .collect();
    let mut rhs: Vec<BigRational> = vec![BigRational::zero(); m.rows];
    rows.push(vec![BigRational::one(); n]);
    rhs.push(BigRational::one());
    let x = simplex_feasible(rows, rhs, n)?;
    let lcm = x
        .iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut ints: Vec<BigInt> = x.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if !g.is_zero() {
        for a in ints.iter_mut() {
            *a = &*a / &g;
        }
    }
    let out: Vec<i128> = ints
        .iter()
        .map(|a| a.to_i128().expect("witness entry exceeds i128"))
        .collect();
    debug_assert!(m.mul_vec(&out).iter().all(|x| *x == 0));
    Some(out)
}

fn rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Phase-one simplex with Bland's rule. Returns a basic feasible solution of
/// `A x = b, x >= 0` or `None` when the system is infeasible.
fn simplex_feasible(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
    n: usize,
) -> Option<Vec<BigRational>> {
    let m = a.len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    // tableau columns: n originals then m artificials
    let total = n + m;
    let mut tab: Vec<Vec<BigRational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..total).collect();
    // objective: minimize sum of artificials; reduced costs
    loop {
        let mut cost = vec![BigRational::zero(); total];
        for j in n..total {
            cost[j] = BigRational::one();
        }
        let mut reduced = cost.clone();
        for (i, &bv) in basis.iter().enumerate() {
            let cb = cost[bv].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..total {
                reduced[j] -= &cb * &tab[i][j];
            }
        }
        let entering = (0..total).find(|j| reduced[*j].is_negative() && !basis.contains(j));
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if tab[i][e].is_positive() {
                let ratio = &b[i] / &tab[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (l, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut tab, &mut b, l, e);
        basis[l] = e;
    }
    let mut x = vec![BigRational::zero(); total];
    for (i, &bv) in basis.iter().enumerate() {
        x[bv] = b[i].clone();
    }
    if x[n..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    x.truncate(n);
    Some(x)
}

fn pivot(tab: &mut [Vec<BigRational>], b: &mut [BigRational], l: usize, e: usize) {
    let p = tab[l][e].clone();
    for x in tab[l].iter_mut() {
        *x = &*x / &p;
    }
    b[l] = &b[l] / &p;
    let prow = tab[l].clone();
    let pb = b[l].clone();
    for i in 0..tab.len() {
        if i == l {
            continue;
        }
        let f = tab[i][e].clone();
        if f.is_zero() {
            continue;
        }
        for (x, y) in tab[i].iter_mut().zip(&prow) {
            *x -= &f * y;
        }
        b[i] -= &f * &pb;
    }
}
