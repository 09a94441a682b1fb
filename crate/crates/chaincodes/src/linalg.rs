//! Matrices and submodules over a chain ring.
//!
//! Scalars are always the base ring `R` of the matrix's [`RingSpec`]; all row
//! and column operations keep entries inside `R`.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, RingSpec};

/// Default bound on the number of enumerated codewords.
pub const DEFAULT_MAX_WEIGHT_ENUM: u64 = 1 << 24;

#[derive(Clone, Debug)]
pub struct RMatrix {
    ring: Arc<RingSpec>,
    cols: usize,
    rows: Vec<Vec<Elem>>,
}

impl PartialEq for RMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}

impl RMatrix {
    pub fn new(ring: &Arc<RingSpec>, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        Ok(RMatrix { ring: ring.clone(), cols, rows })
    }

    /// Matrix from integer entries (constants of the ring).
    pub fn from_ints(ring: &Arc<RingSpec>, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows.iter().map(|r| r.iter().map(|&c| ring.constant(c)).collect()).collect();
        Self::new(ring, cols, rows)
    }

    pub fn empty(ring: &Arc<RingSpec>, cols: usize) -> Self {
        RMatrix { ring: ring.clone(), cols, rows: Vec::new() }
    }

    pub fn identity(ring: &Arc<RingSpec>, n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
        RMatrix { ring: ring.clone(), cols: n, rows }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i]
    }
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.rows[i][j]
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("stacking matrices of different widths".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(RMatrix { ring: self.ring.clone(), cols: self.cols, rows })
    }

    /// Every entry multiplied by `c`.
    pub fn scale(&self, c: &Elem) -> RMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|e| self.ring.mul(c, e)).collect()).collect();
        RMatrix { ring: self.ring.clone(), cols: self.cols, rows }
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> RMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        RMatrix { ring: self.ring.clone(), cols: self.cols, rows }
    }

    /// Same entries, reinterpreted over another ring with the same representation.
    pub fn with_ring(&self, ring: &Arc<RingSpec>) -> RMatrix {
        RMatrix { ring: ring.clone(), cols: self.cols, rows: self.rows.clone() }
    }

    pub fn transpose(&self) -> RMatrix {
        let rows = (0..self.cols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        RMatrix { ring: self.ring.clone(), cols: self.rows.len(), rows }
    }

    /// Standard bilinear form `sum_j a_j b_j`.
    pub fn dot(ring: &RingSpec, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
    }

    /// Whether all entries lie in the base ring.
    pub fn is_over_base(&self) -> bool {
        self.rows.iter().flatten().all(|e| self.ring.in_base(e))
    }

    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<u32>>> {
        self.rows.iter().map(|r| r.iter().map(|e| e.coeffs().to_vec()).collect()).collect()
    }
}

/// Hermite-like reduction of a generator matrix.
///
/// `matrix` keeps the original column order; row `i` has the entry
/// `theta^{t_i}` in column `pivots[i].0` and zeros in the other pivot columns
/// of later rows. `permutation` lists pivot columns first, then the rest, which
/// brings `matrix` to block upper-triangular shape.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub matrix: RMatrix,
    pub pivots: Vec<(usize, u32)>,
    pub permutation: Vec<usize>,
    pub type_vector: Vec<usize>,
}

#[derive(Serialize)]
pub struct StandardFormReport {
    #[serde(rename = "type")]
    pub type_vector: Vec<usize>,
    pub rank: usize,
    pub permutation: Vec<usize>,
    pub matrix: Vec<Vec<Vec<u32>>>,
}

fn row_axpy(ring: &RingSpec, dst: &mut [Elem], f: &Elem, src: &[Elem]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !ring.is_zero(s) {
            *d = ring.sub(d, &ring.mul(f, s));
        }
    }
}

/// Reduces a generator matrix to standard form.
pub fn standard_form(g: &RMatrix) -> StandardForm {
    let ring = g.ring.clone();
    let s = ring.s();
    let cols = g.cols;
    let mut a: Vec<Vec<Elem>> = g.rows.clone();
    let mut vals: Vec<Vec<u32>> = a.iter().map(|r| r.iter().map(|e| ring.valuation(e)).collect()).collect();
    let mut used = vec![false; cols];
    let mut pivots = Vec::new();
    let mut r = 0;
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for c in (0..cols).filter(|&c| !used[c]) {
            for (i, row_vals) in vals.iter().enumerate().skip(r) {
                let v = row_vals[c];
                if v < s && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, c, i));
                }
            }
        }
        let Some((t, c, i)) = best else { break };
        a.swap(r, i);
        vals.swap(r, i);
        let w = ring.div_theta(&a[r][c], t).expect("valuation checked");
        let winv = ring.inverse(&w).expect("unit part");
        for e in a[r].iter_mut() {
            *e = ring.mul(&winv, e);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || ring.is_zero(&row[c]) {
                continue;
            }
            let f = if i > r {
                ring.div_theta(&row[c], t).expect("minimal valuation")
            } else {
                // keep the canonical residue of the entry modulo theta^t
                let digits = ring.teich_digits(&row[c]);
                ring.from_teich_digits(&digits[t as usize..])
            };
            row_axpy(&ring, row, &f, &pivot_row);
            vals[i] = row.iter().map(|e| ring.valuation(e)).collect();
        }
        vals[r] = a[r].iter().map(|e| ring.valuation(e)).collect();
        used[c] = true;
        pivots.push((c, t));
        r += 1;
    }
    a.truncate(r);
    let mut permutation: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    permutation.extend((0..cols).filter(|&c| !used[c]));
    let mut type_vector = vec![0; s as usize];
    for &(_, t) in &pivots {
        type_vector[t as usize] += 1;
    }
    StandardForm { matrix: RMatrix { ring, cols, rows: a }, pivots, permutation, type_vector }
}

impl StandardForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Exponent `e` with `|C| = q^e`.
    pub fn cardinality_exponent(&self) -> u64 {
        cardinality_exponent(&self.type_vector, self.matrix.ring.s())
    }

    pub fn cardinality(&self) -> BigUint {
        cardinality(&self.type_vector, self.matrix.ring.q(), self.matrix.ring.s())
    }

    /// The reduced matrix with columns reordered by `permutation`.
    pub fn permuted(&self) -> RMatrix {
        let rows = self.matrix.rows.iter().map(|r| self.permutation.iter().map(|&c| r[c].clone()).collect()).collect();
        RMatrix { ring: self.matrix.ring.clone(), cols: self.matrix.cols, rows }
    }

    /// Whether `v` lies in the row span (over the base ring).
    pub fn contains(&self, v: &[Elem]) -> bool {
        let ring = &self.matrix.ring;
        if v.len() != self.matrix.cols {
            return false;
        }
        if ring.m() > 1 && !v.iter().all(|e| ring.in_base(e)) {
            return false;
        }
        let mut v = v.to_vec();
        for (row, &(c, t)) in self.matrix.rows.iter().zip(&self.pivots) {
            if ring.is_zero(&v[c]) {
                continue;
            }
            let Some(f) = ring.div_theta(&v[c], t) else { return false };
            row_axpy(ring, &mut v, &f, row);
        }
        v.iter().all(|e| ring.is_zero(e))
    }

    /// Whether every row of `g` lies in the span.
    pub fn contains_all(&self, g: &RMatrix) -> bool {
        g.rows.iter().all(|r| self.contains(r))
    }

    /// Generator matrix of `{c in C : theta c = 0}`: row `i` scaled by `theta^{s-1-t_i}`.
    pub fn annihilator(&self) -> RMatrix {
        let ring = &self.matrix.ring;
        let rows = self
            .matrix
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &(_, t))| {
                let f = ring.theta_pow(ring.s() - 1 - t);
                r.iter().map(|e| ring.mul(&f, e)).collect()
            })
            .collect();
        RMatrix { ring: ring.clone(), cols: self.matrix.cols, rows }
    }

    pub fn report(&self) -> StandardFormReport {
        StandardFormReport {
            type_vector: self.type_vector.clone(),
            rank: self.rank(),
            permutation: self.permutation.clone(),
            matrix: self.matrix.to_coeff_rows(),
        }
    }
}

pub fn cardinality_exponent(type_vector: &[usize], s: u32) -> u64 {
    type_vector.iter().enumerate().map(|(t, &k)| (s as u64 - t as u64) * k as u64).sum()
}

/// `q^{sum_t (s-t) k_t}`.
pub fn cardinality(type_vector: &[usize], q: u64, s: u32) -> BigUint {
    BigUint::from(q).pow(cardinality_exponent(type_vector, s) as u32)
}

/// Type of the dual code: `(ell - k, k_{s-1}, ..., k_1)`.
pub fn dual_type(type_vector: &[usize], ell: usize) -> Result<Vec<usize>> {
    let rank: usize = type_vector.iter().sum();
    if rank > ell {
        return Err(Error::RankExceedsLength { rank, ell });
    }
    let mut out = vec![ell - rank];
    out.extend(type_vector[1..].iter().rev());
    Ok(out)
}

/// Generator matrix of `{x : G x^T = 0}`, via a diagonal reduction with row and
/// column operations.
pub fn kernel(g: &RMatrix) -> RMatrix {
    let ring = g.ring.clone();
    let s = ring.s();
    let n = g.cols;
    let mut a = g.rows.clone();
    let mut q: Vec<Vec<Elem>> = RMatrix::identity(&ring, n).rows; // q[row][col]
    let mut diag = Vec::new();
    let r_total = a.len();
    for k in 0..r_total.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                let v = ring.valuation(e);
                if v < s && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((t, i, j)) = best else { break };
        a.swap(k, i);
        for row in a.iter_mut() {
            row.swap(k, j);
        }
        for row in q.iter_mut() {
            row.swap(k, j);
        }
        let w = ring.div_theta(&a[k][k], t).expect("valuation checked");
        let winv = ring.inverse(&w).expect("unit part");
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if ring.is_zero(&row[k]) {
                continue;
            }
            let f = ring.mul(&ring.div_theta(&row[k], t).expect("minimal valuation"), &winv);
            row_axpy(&ring, row, &f, &pivot_row);
        }
        for jj in k + 1..n {
            if ring.is_zero(&a[k][jj]) {
                continue;
            }
            let f = ring.mul(&ring.div_theta(&a[k][jj], t).expect("minimal valuation"), &winv);
            for row in a.iter_mut().chain(q.iter_mut()) {
                let d = ring.mul(&f, &row[k]);
                row[jj] = ring.sub(&row[jj], &d);
            }
        }
        diag.push(t);
    }
    let mut gens = Vec::new();
    for k in 0..n {
        let col: Vec<Elem> = q.iter().map(|row| row[k].clone()).collect();
        match diag.get(k) {
            Some(&0) => {}
            Some(&t) => {
                let f = ring.theta_pow(s - t);
                gens.push(col.iter().map(|e| ring.mul(&f, e)).collect());
            }
            None => gens.push(col),
        }
    }
    RMatrix { ring, cols: n, rows: gens }
}

/// Generator matrix of the row-span sum.
pub fn module_sum(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
    a.stack(b)
}

/// Generator matrix of the intersection, as the dual of the sum of duals.
pub fn module_intersection(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
    Ok(kernel(&kernel(a).stack(&kernel(b))?))
}

/// Whether two matrices have the same row span.
pub fn same_span(a: &RMatrix, b: &RMatrix) -> bool {
    standard_form(a).contains_all(b) && standard_form(b).contains_all(a)
}

/// The residue code: entries reduced modulo `theta`, then row-reduced over the field.
pub fn residue_code(g: &RMatrix) -> Result<RMatrix> {
    let field = g.ring.residue_ring()?;
    let rows = g.rows.iter().map(|r| r.iter().map(|e| g.ring.residue(e)).collect()).collect();
    let m = RMatrix { ring: field, cols: g.cols, rows };
    Ok(standard_form(&m).matrix)
}

fn check_bound(count: &BigUint, limit: u64) -> Result<u64> {
    match u64::try_from(count.clone()) {
        Ok(c) if c <= limit => Ok(c),
        _ => Err(Error::EnumerationBound { count: count.to_string(), limit }),
    }
}

fn flatten(row: &[Elem]) -> Vec<u32> {
    row.iter().flat_map(|e| e.coeffs().iter().copied()).collect()
}

/// Flat codeword walker: iterates `sum_i c_i row_i` with `c_i` ranging over
/// per-row coefficient lists, changing one coordinate per step.
struct Walker {
    cm: u64,
    radices: Vec<usize>,
    // deltas[i][d]: (coef[d] - coef[d-1]) * row_i, d = 0 wraps from the last coefficient
    deltas: Vec<Vec<Vec<u32>>>,
    first: Vec<Vec<u32>>, // coef[d] * row_i for decoding a start index
}

impl Walker {
    fn new(ring: &RingSpec, rows: &[Vec<Elem>], coefs: &[Vec<Elem>]) -> Self {
        let mut deltas = Vec::new();
        let mut first = Vec::new();
        for (row, cs) in rows.iter().zip(coefs) {
            let mults: Vec<Vec<Elem>> = cs.iter().map(|c| row.iter().map(|e| ring.mul(c, e)).collect()).collect();
            let k = cs.len();
            let d: Vec<Vec<u32>> = (0..k)
                .map(|j| {
                    let prev = &mults[(j + k - 1) % k];
                    flatten(&mults[j].iter().zip(prev).map(|(a, b)| ring.sub(a, b)).collect::<Vec<_>>())
                })
                .collect();
            deltas.push(d);
            first.push(mults.iter().map(|m| flatten(m)).collect::<Vec<_>>().concat());
        }
        Walker { cm: ring.coeff_modulus(), radices: coefs.iter().map(Vec::len).collect(), deltas, first }
    }

    fn total(&self) -> u64 {
        self.radices.iter().map(|&r| r as u64).product()
    }

    /// Visits codewords with indices in `start..end` (digit 0 varies fastest).
    fn walk(&self, start: u64, end: u64, width: usize, mut visit: impl FnMut(&[u32])) {
        let mut digits = Vec::with_capacity(self.radices.len());
        let mut idx = start;
        for &r in &self.radices {
            digits.push((idx % r as u64) as usize);
            idx /= r as u64;
        }
        let mut v = vec![0u32; width];
        for (i, &d) in digits.iter().enumerate() {
            let src = &self.first[i][d * width..(d + 1) * width];
            add_into(&mut v, src, self.cm);
        }
        for _ in start..end {
            visit(&v);
            for (i, digit) in digits.iter_mut().enumerate() {
                *digit = (*digit + 1) % self.radices[i];
                add_into(&mut v, &self.deltas[i][*digit], self.cm);
                if *digit != 0 {
                    break;
                }
            }
        }
    }
}

fn add_into(v: &mut [u32], d: &[u32], cm: u64) {
    for (x, &y) in v.iter_mut().zip(d) {
        *x = ((*x as u64 + y as u64) % cm) as u32;
    }
}

fn weight(v: &[u32], elem_len: usize) -> usize {
    v.chunks(elem_len).filter(|c| c.iter().any(|&x| x != 0)).count()
}

fn min_weight_walk(ring: &RingSpec, rows: &[Vec<Elem>], coefs: &[Vec<Elem>], cols: usize) -> usize {
    let walker = Walker::new(ring, rows, coefs);
    let total = walker.total();
    let width = cols * ring.len();
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = usize::MAX;
            walker.walk(c * CHUNK, ((c + 1) * CHUNK).min(total), width, |v| {
                let w = weight(v, ring.len());
                if w > 0 && w < best {
                    best = w;
                }
            });
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// Minimum Hamming weight of the row span, enumerating the annihilator
/// `{c : theta c = 0}` (`q^rank` words). The zero code has weight 0.
pub fn min_weight(g: &RMatrix, limit: u64) -> Result<usize> {
    let sf = standard_form(g);
    if sf.rank() == 0 {
        return Ok(0);
    }
    let ring = &g.ring;
    check_bound(&BigUint::from(ring.q()).pow(sf.rank() as u32), limit)?;
    let ann = sf.annihilator();
    let coefs = vec![ring.base_teichmuller().to_vec(); ann.nrows()];
    Ok(min_weight_walk(ring, &ann.rows, &coefs, g.cols))
}

/// Minimum Hamming weight by enumerating every codeword.
pub fn min_weight_full(g: &RMatrix, limit: u64) -> Result<usize> {
    let sf = standard_form(g);
    if sf.rank() == 0 {
        return Ok(0);
    }
    let ring = &g.ring;
    check_bound(&sf.cardinality(), limit)?;
    let coefs: Vec<Vec<Elem>> = sf.pivots.iter().map(|&(_, t)| ring.base_residues(ring.s() - t)).collect();
    Ok(min_weight_walk(ring, &sf.matrix.rows, &coefs, g.cols))
}

/// Every codeword of the row span, each flattened to its coefficient vector.
pub fn enumerate_span(g: &RMatrix, limit: u64) -> Result<HashSet<Vec<u32>>> {
    let sf = standard_form(g);
    let ring = &g.ring;
    let total = check_bound(&sf.cardinality(), limit)?;
    let coefs: Vec<Vec<Elem>> = sf.pivots.iter().map(|&(_, t)| ring.base_residues(ring.s() - t)).collect();
    let walker = Walker::new(ring, &sf.matrix.rows, &coefs);
    let mut out = HashSet::with_capacity(total as usize);
    walker.walk(0, walker.total(), g.cols * ring.len(), |v| {
        out.insert(v.to_vec());
    });
    Ok(out)
}
