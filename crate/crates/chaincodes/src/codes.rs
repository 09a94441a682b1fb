//! Cyclic codes of length `ell` over a chain ring `R`, realised as
//! `sum_t theta^t C(R; A_t)` where `C(R; A)` is the trace of the evaluation
//! code `L(S; A)` spanned by the rows `(eta^{a j})_j`.

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use serde::Serialize;

use crate::cyclotomic::{CycContext, CycPartition, CycSet};
use crate::error::{Error, Result};
use crate::linalg::{self, standard_form, RMatrix, StandardForm};
use crate::ring::{Elem, Family, RingDescriptor, RingSpec};

/// A base ring, its splitting extension for `x^ell - 1` and the chosen root of unity.
#[derive(Debug)]
pub struct CodeContext {
    ring: Arc<RingSpec>,
    cyc: Arc<CycContext>,
    eta: Elem,
    eta_pows: Vec<Elem>,
    xi_pows: Vec<Elem>,
    components: Vec<RMatrix>,
    ext: OnceLock<Arc<RingSpec>>,
}

impl CodeContext {
    /// Context for length `ell` over the chain ring of invariants `(p^n, s)`.
    pub fn new(p: u64, n: u32, s: u32, family: Family, ell: usize) -> Result<Arc<Self>> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p.pow(n);
        let cyc = CycContext::new(ell, q, s)?;
        let ring = RingSpec::new(p, n, s, cyc.m(), family)?;
        Self::assemble(ring, cyc)
    }

    /// Context over an existing extension ring whose degree is `ord_ell(q)`.
    pub fn with_ring(ring: &Arc<RingSpec>, ell: usize) -> Result<Arc<Self>> {
        let cyc = CycContext::new(ell, ring.q(), ring.s())?;
        if cyc.m() != ring.m() {
            return Err(Error::InvalidParameter(format!(
                "extension degree {} differs from ord_{ell}(q) = {}",
                ring.m(),
                cyc.m()
            )));
        }
        Self::assemble(ring.clone(), cyc)
    }

    fn assemble(ring: Arc<RingSpec>, cyc: Arc<CycContext>) -> Result<Arc<Self>> {
        let ell = cyc.ell();
        let eta = ring.root_of_unity(ell)?;
        let mut eta_pows = Vec::with_capacity(ell);
        let mut cur = ring.one();
        for _ in 0..ell {
            eta_pows.push(cur.clone());
            cur = ring.mul(&cur, &eta);
        }
        let mut xi_pows = Vec::with_capacity(ring.m() as usize);
        let mut cur = ring.one();
        for _ in 0..ring.m() {
            xi_pows.push(cur.clone());
            cur = ring.mul(&cur, ring.xi());
        }
        let mut ctx = CodeContext { ring, cyc, eta, eta_pows, xi_pows, components: Vec::new(), ext: OnceLock::new() };
        ctx.components = ctx.cyc.reps().into_iter().map(|z| standard_form(&ctx.trace_rows(&[z])).matrix).collect();
        Ok(Arc::new(ctx))
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }
    pub fn cyc(&self) -> &Arc<CycContext> {
        &self.cyc
    }
    pub fn ell(&self) -> usize {
        self.cyc.ell()
    }
    pub fn q(&self) -> u64 {
        self.ring.q()
    }
    pub fn s(&self) -> u32 {
        self.ring.s()
    }
    pub fn eta(&self) -> &Elem {
        &self.eta
    }
    /// `eta^i` for `i` taken modulo `ell`.
    pub fn eta_pow(&self, i: usize) -> &Elem {
        &self.eta_pows[i % self.ell()]
    }

    /// The extension `S` viewed as a chain ring in its own right (`m = 1`), for
    /// codes with coefficients in `S`.
    pub fn ext_ring(&self) -> &Arc<RingSpec> {
        self.ext.get_or_init(|| {
            if self.ring.m() == 1 {
                return self.ring.clone();
            }
            let d = self.ring.descriptor();
            let ext = RingDescriptor { n: d.n * d.m, m: 1, ..d };
            RingSpec::from_descriptor(&ext).expect("extension of a valid ring is valid")
        })
    }

    fn check_set(&self, a: &[usize]) -> Result<()> {
        match a.iter().find(|&&z| z >= self.ell()) {
            Some(&value) => Err(Error::OutOfRange { value, ell: self.ell() }),
            None => Ok(()),
        }
    }

    /// Generator rows `(eta^{a j})_j` of `L(S; A)`, over [`CodeContext::ext_ring`].
    pub fn poly_code(&self, a: &[usize]) -> Result<RMatrix> {
        self.check_set(a)?;
        let rows = a.iter().map(|&z| (0..self.ell()).map(|j| self.eta_pow(z * j).clone()).collect()).collect();
        RMatrix::new(self.ext_ring(), self.ell(), rows)
    }

    fn trace_rows(&self, a: &[usize]) -> RMatrix {
        let ring = &self.ring;
        let reps: Vec<usize> = {
            let mut r: Vec<usize> = a.iter().map(|&z| self.cyc.rep_of(z)).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let mut rows = Vec::new();
        for z in reps {
            for b in &self.xi_pows {
                rows.push((0..self.ell()).map(|j| ring.trace(&ring.mul(b, self.eta_pow(z * j)))).collect());
            }
        }
        RMatrix::new(ring, self.ell(), rows).expect("rows have length ell")
    }

    /// Generator matrix (standard form) of the trace code `C(R; A)`, free of rank `|C_q(A)|`.
    pub fn trace_code(&self, a: &[usize]) -> Result<RMatrix> {
        self.check_set(a)?;
        Ok(standard_form(&self.trace_rows(a)).matrix)
    }

    /// Generator rows of the irreducible component `C(R; {z})` for coset index `idx`.
    pub fn component(&self, idx: usize) -> &RMatrix {
        &self.components[idx]
    }

    pub fn partition(&self, text: &str) -> Result<CycPartition> {
        CycPartition::parse(&self.cyc, text)
    }

    pub fn code(self: &Arc<Self>, partition: CycPartition) -> Result<CyclicCode> {
        if **partition.context() != *self.cyc {
            return Err(Error::ContextMismatch);
        }
        Ok(CyclicCode { ctx: self.clone(), partition, generator: OnceLock::new(), sf: OnceLock::new() })
    }

    pub fn code_from_str(self: &Arc<Self>, text: &str) -> Result<CyclicCode> {
        self.code(self.partition(text)?)
    }

    /// Every cyclic code, one per partition.
    pub fn all_codes(self: &Arc<Self>) -> impl Iterator<Item = CyclicCode> + '_ {
        CycPartition::all(&self.cyc).map(|p| self.code(p).expect("same context"))
    }

    /// Recovers the defining partition of a cyclic code given by generators.
    pub fn identify_partition(&self, g: &RMatrix) -> Result<CycPartition> {
        if g.ncols() != self.ell() {
            return Err(Error::DimensionMismatch(format!("expected {} columns", self.ell())));
        }
        let g = g.with_ring(&self.ring);
        if !is_shift_closed(&g) {
            return Err(Error::NotCyclic);
        }
        let s = self.s();
        let mut levels = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let inter = linalg::module_intersection(&g, comp)?;
            let sf = standard_form(&inter);
            levels.push(sf.pivots.iter().map(|&(_, t)| t).min().unwrap_or(s));
        }
        CycPartition::new(&self.cyc, levels)
    }

    /// Checks the map `a -> (Tr(a eta^{z j}))_j` on `R[eta^z]`.
    pub fn psi_check(&self, z: usize) -> Result<PsiReport> {
        self.check_set(&[z])?;
        let ring = &self.ring;
        let ell = self.ell();
        let coset_size = self.cyc.coset(z).len();
        let beta = self.eta_pow(z).clone();
        let psi = |a: &Elem| -> Vec<Elem> { (0..ell).map(|j| ring.trace(&ring.mul(a, self.eta_pow(z * j)))).collect() };
        let basis: Vec<Elem> = (0..coset_size).map(|i| ring.pow(&beta, i as u64)).collect();
        let images: Vec<Vec<Elem>> = basis.iter().map(&psi).collect();
        let sf = standard_form(&RMatrix::new(ring, ell, images.clone())?);
        let image_rank = sf.rank();
        let free = sf.type_vector[0] == image_rank;
        let zeta = ring.pow(&self.eta, ((ell - z % ell) % ell) as u64);
        let intertwines = basis.iter().zip(&images).all(|(a, img)| psi(&ring.mul(&zeta, a)) == shift_right(img));
        let mut scalars = ring.base_teichmuller().to_vec();
        scalars.push(ring.theta().clone());
        let linear = basis.iter().zip(&images).all(|(a, img)| {
            scalars.iter().all(|r| {
                let lhs = psi(&ring.add(&ring.mul(r, a), &basis[0]));
                let rhs: Vec<Elem> = img.iter().zip(&images[0]).map(|(x, y)| ring.add(&ring.mul(r, x), y)).collect();
                lhs == rhs
            })
        });
        Ok(PsiReport { z, coset_size, image_rank, injective: free && image_rank == coset_size, intertwines, linear })
    }

    /// All self-dual partitions (`A_t = -A_{s-t}`).
    pub fn self_dual_partitions(&self) -> Vec<CycPartition> {
        CycPartition::all(&self.cyc).filter(CycPartition::is_self_dual).collect()
    }

    /// For even `s`: the smallest coset `A` with `A != -A` at level `s/2 - 1`,
    /// `-A` at `s/2 + 1`, everything else at `s/2`.
    pub fn self_dual_construction(&self) -> Option<CycPartition> {
        let s = self.s();
        if !s.is_multiple_of(2) {
            return None;
        }
        let u = s / 2;
        let idx = (0..self.cyc.coset_count()).find(|&i| self.cyc.opposite_index(i) != i)?;
        let opp = self.cyc.opposite_index(idx);
        let mut levels = vec![u; self.cyc.coset_count()];
        levels[idx] = u - 1;
        levels[opp] = u + 1;
        CycPartition::new(&self.cyc, levels).ok()
    }
}

/// Outcome of [`CodeContext::psi_check`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PsiReport {
    pub z: usize,
    pub coset_size: usize,
    pub image_rank: usize,
    pub injective: bool,
    pub intertwines: bool,
    pub linear: bool,
}

/// Cyclic shift `(c_{ell-1}, c_0, ..., c_{ell-2})`.
pub fn shift_right<T: Clone>(v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.rotate_right(1);
    out
}

/// Whether the row span is invariant under the cyclic shift.
pub fn is_shift_closed(g: &RMatrix) -> bool {
    let sf = standard_form(g);
    g.rows().iter().all(|r| sf.contains(&shift_right(r)))
}

/// A cyclic code given by its defining partition.
#[derive(Clone, Debug)]
pub struct CyclicCode {
    ctx: Arc<CodeContext>,
    partition: CycPartition,
    generator: OnceLock<RMatrix>,
    sf: OnceLock<StandardForm>,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition
    }
}

impl CyclicCode {
    pub fn context(&self) -> &Arc<CodeContext> {
        &self.ctx
    }
    pub fn partition(&self) -> &CycPartition {
        &self.partition
    }

    /// Stack of `theta^t` times the generators of each component at level `t < s`.
    pub fn generator(&self) -> &RMatrix {
        self.generator.get_or_init(|| {
            let ring = &self.ctx.ring;
            let mut g = RMatrix::empty(ring, self.ctx.ell());
            for (idx, &t) in self.partition.levels().iter().enumerate() {
                if t < ring.s() {
                    let block = self.ctx.components[idx].scale(&ring.theta_pow(t));
                    g = g.stack(&block).expect("same width");
                }
            }
            g
        })
    }

    pub fn standard_form(&self) -> &StandardForm {
        self.sf.get_or_init(|| standard_form(self.generator()))
    }

    pub fn type_vector(&self) -> Vec<usize> {
        self.standard_form().type_vector.clone()
    }

    pub fn rank(&self) -> usize {
        self.standard_form().rank()
    }

    pub fn cardinality(&self) -> BigUint {
        self.standard_form().cardinality()
    }

    pub fn cardinality_exponent(&self) -> u64 {
        self.standard_form().cardinality_exponent()
    }

    fn with_partition(&self, partition: CycPartition) -> CyclicCode {
        CyclicCode { ctx: self.ctx.clone(), partition, generator: OnceLock::new(), sf: OnceLock::new() }
    }

    fn check_same(&self, other: &CyclicCode) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx.ring == *other.ctx.ring && self.ctx.ell() == other.ctx.ell()
        {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn sum(&self, other: &CyclicCode) -> Result<CyclicCode> {
        self.check_same(other)?;
        Ok(self.with_partition(self.partition.join(&other.partition)?))
    }

    pub fn meet(&self, other: &CyclicCode) -> Result<CyclicCode> {
        self.check_same(other)?;
        Ok(self.with_partition(self.partition.meet(&other.partition)?))
    }

    pub fn dual(&self) -> CyclicCode {
        self.with_partition(self.partition.dual())
    }

    pub fn is_self_dual(&self) -> bool {
        self.partition.is_self_dual()
    }

    /// `C` is contained in its dual, read off the partition order.
    pub fn is_self_orthogonal(&self) -> bool {
        self.partition.is_below(&self.partition.dual()).expect("same context")
    }

    /// Self-orthogonality from pairwise inner products of generators.
    pub fn is_self_orthogonal_by_generators(&self) -> bool {
        generators_orthogonal(self.generator())
    }

    pub fn is_free(&self) -> bool {
        self.partition.is_free()
    }

    pub fn is_zero(&self) -> bool {
        self.partition.is_zero()
    }

    /// Complement of `-(A_0 ∪ ... ∪ A_{s-1})`; it contains the zeros of the code.
    pub fn zero_set(&self) -> CycSet {
        let s = self.ctx.s();
        let union = (0..s).fold(self.ctx.cyc.empty_set(), |acc, t| acc.union(&self.partition.set(t)));
        union.opposite().complement()
    }

    /// `delta + 1` for the longest interval `delta` inside [`CyclicCode::zero_set`];
    /// 0 for the zero code.
    pub fn bch_bound(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.zero_set().longest_interval().delta + 1
    }

    /// Minimum weight via the annihilator; 0 for the zero code.
    pub fn min_weight(&self, limit: u64) -> Result<usize> {
        linalg::min_weight(self.generator(), limit)
    }

    /// `(t_z, z)` for every representative `z` with level `t_z < s`.
    pub fn decompose(&self) -> Vec<(u32, usize)> {
        let s = self.ctx.s();
        self.ctx
            .cyc
            .reps()
            .into_iter()
            .zip(self.partition.levels())
            .filter(|(_, &t)| t < s)
            .map(|(z, &t)| (t, z))
            .collect()
    }
}

/// Whether all pairwise inner products of the rows (including each row with itself) vanish.
pub fn generators_orthogonal(g: &RMatrix) -> bool {
    let ring = g.ring();
    let rows = g.rows();
    (0..rows.len()).all(|i| (i..rows.len()).all(|j| ring.is_zero(&RMatrix::dot(ring, &rows[i], &rows[j]))))
}

/// Frobenius closure, trace, restriction and extension for codes over `S`.
pub mod galois {
    use super::*;

    fn check_ext(ctx: &CodeContext, b: &RMatrix) -> Result<()> {
        if b.ncols() != ctx.ell() {
            return Err(Error::DimensionMismatch(format!("expected {} columns", ctx.ell())));
        }
        Ok(())
    }

    /// Span over `S` of all Frobenius images of `B`.
    pub fn closure(ctx: &CodeContext, b: &RMatrix) -> Result<RMatrix> {
        check_ext(ctx, b)?;
        let ring = ctx.ring();
        let ext = ctx.ext_ring();
        let mut rows = Vec::new();
        for i in 0..ring.m() {
            for r in b.rows() {
                rows.push(r.iter().map(|e| ring.frobenius(e, i)).collect());
            }
        }
        Ok(standard_form(&RMatrix::new(ext, ctx.ell(), rows)?).matrix)
    }

    /// Whether `B` is mapped onto itself by the Frobenius.
    pub fn is_sigma_invariant(ctx: &CodeContext, b: &RMatrix) -> Result<bool> {
        let closed = closure(ctx, b)?;
        Ok(standard_form(&b.with_ring(ctx.ext_ring())).contains_all(&closed))
    }

    /// R-generators `xi^i b` of an S-module.
    fn r_generators(ctx: &CodeContext, b: &RMatrix) -> Vec<Vec<Elem>> {
        let ring = ctx.ring();
        let mut out = Vec::new();
        for r in b.rows() {
            for x in &ctx.xi_pows {
                out.push(r.iter().map(|e| ring.mul(x, e)).collect());
            }
        }
        out
    }

    /// Row-wise trace span, a code over `R`.
    pub fn trace(ctx: &CodeContext, b: &RMatrix) -> Result<RMatrix> {
        check_ext(ctx, b)?;
        let ring = ctx.ring();
        let rows = r_generators(ctx, b).into_iter().map(|r| r.iter().map(|e| ring.trace(e)).collect()).collect();
        Ok(standard_form(&RMatrix::new(ring, ctx.ell(), rows)?).matrix)
    }

    /// `B ∩ R^ell`, found by solving for R-combinations of generators whose
    /// coordinates outside `R` vanish.
    pub fn restriction(ctx: &CodeContext, b: &RMatrix) -> Result<RMatrix> {
        check_ext(ctx, b)?;
        let ring = ctx.ring();
        let ell = ctx.ell();
        let m = ring.m() as usize;
        if m == 1 {
            return Ok(standard_form(&b.with_ring(ring)).matrix);
        }
        let coords = Coordinates::new(ctx)?;
        let gens = r_generators(ctx, b);
        // Coordinates of each generator: entry j contributes m values.
        let coord_rows: Vec<Vec<Vec<Elem>>> = gens.iter().map(|r| r.iter().map(|e| coords.of(e)).collect()).collect();
        let outside: Vec<Vec<Elem>> =
            coord_rows.iter().map(|r| r.iter().flat_map(|c| c[1..].iter().cloned()).collect()).collect();
        let outside = RMatrix::new(ring, ell * (m - 1), outside)?;
        let combos = linalg::kernel(&outside.transpose());
        let mut rows = Vec::new();
        for y in combos.rows() {
            let row: Vec<Elem> = (0..ell)
                .map(|j| {
                    y.iter().zip(&coord_rows).fold(ring.zero(), |acc, (yk, r)| ring.add(&acc, &ring.mul(yk, &r[j][0])))
                })
                .collect();
            rows.push(row);
        }
        Ok(standard_form(&RMatrix::new(ring, ell, rows)?).matrix)
    }

    /// `S`-span of a code over `R`.
    pub fn extension(ctx: &CodeContext, c: &RMatrix) -> Result<RMatrix> {
        check_ext(ctx, c)?;
        Ok(standard_form(&c.with_ring(ctx.ext_ring())).matrix)
    }

    /// Coordinates of `S` in the `R`-basis `1, xi, ..., xi^{m-1}`, via the
    /// inverse of the trace Gram matrix.
    pub struct Coordinates<'a> {
        ctx: &'a CodeContext,
        gram_inv: Vec<Vec<Elem>>,
    }

    impl<'a> Coordinates<'a> {
        pub fn new(ctx: &'a CodeContext) -> Result<Self> {
            let ring = ctx.ring();
            let m = ring.m() as usize;
            let gram: Vec<Vec<Elem>> = (0..m)
                .map(|i| (0..m).map(|j| ring.trace(&ring.mul(&ctx.xi_pows[i], &ctx.xi_pows[j]))).collect())
                .collect();
            Ok(Coordinates { ctx, gram_inv: invert(ring, gram)? })
        }

        /// `c` with `a = sum_i c_i xi^i`.
        pub fn of(&self, a: &Elem) -> Vec<Elem> {
            let ring = self.ctx.ring();
            let t: Vec<Elem> = self.ctx.xi_pows.iter().map(|x| ring.trace(&ring.mul(a, x))).collect();
            self.gram_inv
                .iter()
                .map(|row| row.iter().zip(&t).fold(ring.zero(), |acc, (g, v)| ring.add(&acc, &ring.mul(g, v))))
                .collect()
        }
    }

    /// Inverse of a square matrix over the base ring (Gauss-Jordan on unit pivots).
    fn invert(ring: &RingSpec, mut a: Vec<Vec<Elem>>) -> Result<Vec<Vec<Elem>>> {
        let n = a.len();
        let mut inv: Vec<Vec<Elem>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| ring.is_unit(&a[r][c])).ok_or(Error::NotUnit)?;
            a.swap(c, p);
            inv.swap(c, p);
            let u = ring.inverse(&a[c][c])?;
            a[c] = a[c].iter().map(|e| ring.mul(&u, e)).collect();
            inv[c] = inv[c].iter().map(|e| ring.mul(&u, e)).collect();
            for r in 0..n {
                if r == c || ring.is_zero(&a[r][c]) {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    a[r][k] = ring.sub(&a[r][k], &ring.mul(&f, &a[c][k]));
                    inv[r][k] = ring.sub(&inv[r][k], &ring.mul(&f, &inv[c][k]));
                }
            }
        }
        Ok(inv)
    }
}

/// Report for the evaluation-code family `L(S; {0, ..., d-1})` with
/// `ell = |Γ(S)| - 1` and `d = (ell + 1) / 2` over `S` of characteristic a
/// power of 2, together with its dual `L(S; {1, ..., d-1})`.
#[derive(Clone, Debug, Serialize)]
pub struct MdsReport {
    pub q: u64,
    pub s: u32,
    pub ell: usize,
    pub d: usize,
    pub defining_set: Vec<usize>,
    pub dual_set: Vec<usize>,
    pub dual_set_is_defining_plus_zero: bool,
    pub dual_relation_holds: bool,
    pub rank: usize,
    pub min_weight: usize,
    pub singleton_bound: usize,
    pub mds: bool,
    pub self_orthogonal: bool,
    pub all_ones_inner_product: Vec<u32>,
    pub dual_code: MdsDual,
}

#[derive(Clone, Debug, Serialize)]
pub struct MdsDual {
    pub rank: usize,
    pub min_weight: usize,
    pub mds: bool,
    pub self_orthogonal: bool,
}

/// Builds the family over `S` of invariants `(2^n, s)` (taking `R = S`).
pub fn mds_family(n: u32, s: u32, family: Family, limit: u64) -> Result<MdsReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("the family needs |Γ(S)| >= 4".into()));
    }
    let q = 2u64.pow(n);
    let ell = (q - 1) as usize;
    let ctx = CodeContext::new(2, n, s, family, ell)?;
    let ring = ctx.ring().clone();
    let d = ell.div_ceil(2);
    let a: Vec<usize> = (1..d).collect();
    let a_set = ctx.cyc().set(&a)?;
    let dual_set = a_set.dual();
    let mut plus_zero = a.clone();
    plus_zero.push(0);
    let plus_zero = ctx.cyc().set(&plus_zero)?;

    let l_a = ctx.poly_code(&a)?.with_ring(&ring);
    let l_dual = ctx.poly_code(&dual_set.to_vec())?.with_ring(&ring);
    let dual_relation_holds = linalg::same_span(&linalg::kernel(&l_a), &l_dual);

    let sf = standard_form(&l_dual);
    let rank = sf.rank();
    let min_weight = linalg::min_weight(&l_dual, limit)?;
    let ones: Vec<Elem> = vec![ring.one(); ell];
    let a_rank = standard_form(&l_a).rank();
    let a_weight = linalg::min_weight(&l_a, limit)?;
    Ok(MdsReport {
        q,
        s,
        ell,
        d,
        defining_set: a.clone(),
        dual_set: dual_set.to_vec(),
        dual_set_is_defining_plus_zero: dual_set == plus_zero,
        dual_relation_holds,
        rank,
        min_weight,
        singleton_bound: ell - rank + 1,
        mds: min_weight == ell - rank + 1,
        self_orthogonal: generators_orthogonal(&l_dual),
        all_ones_inner_product: RMatrix::dot(&ring, &ones, &ones).coeffs().to_vec(),
        dual_code: MdsDual {
            rank: a_rank,
            min_weight: a_weight,
            mds: a_weight == ell - a_rank + 1,
            self_orthogonal: generators_orthogonal(&l_a),
        },
    })
}
