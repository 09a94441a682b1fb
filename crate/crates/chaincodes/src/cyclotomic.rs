//! Cyclotomic cosets, closed subsets of `Z_ell` and the level-map calculus of
//! `(q, s)`-cyclotomic partitions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith::{divisors, euler_phi, gcd, mult_order, prime_power};
use crate::error::{Error, Result};

/// Length, alphabet size and nilpotency index, with the coset structure of
/// `Z_ell` under multiplication by `q`.
#[derive(Debug)]
pub struct CycContext {
    ell: usize,
    q: u64,
    s: u32,
    m: u32,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
}

impl PartialEq for CycContext {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.q == other.q && self.s == other.s
    }
}
impl Eq for CycContext {}

impl CycContext {
    pub fn new(ell: usize, q: u64, s: u32) -> Result<Arc<Self>> {
        if ell == 0 {
            return Err(Error::InvalidParameter("length must be positive".into()));
        }
        if s == 0 {
            return Err(Error::InvalidParameter("s must be at least 1".into()));
        }
        prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if gcd(ell as u64, q) != 1 {
            return Err(Error::NotCoprime { ell, q });
        }
        let m = mult_order(q, ell as u64);
        let mut coset_of = vec![usize::MAX; ell];
        let mut cosets = Vec::new();
        for z in 0..ell {
            if coset_of[z] != usize::MAX {
                continue;
            }
            let idx = cosets.len();
            let mut members = Vec::new();
            let mut x = z;
            loop {
                coset_of[x] = idx;
                members.push(x);
                x = mul_mod(x, q, ell);
                if x == z {
                    break;
                }
            }
            members.sort_unstable();
            cosets.push(members);
        }
        Ok(Arc::new(CycContext { ell, q, s, m, cosets, coset_of }))
    }

    pub fn ell(&self) -> usize {
        self.ell
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    /// Multiplicative order of `q` modulo `ell`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Cosets ordered by their minimum element.
    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_count(&self) -> usize {
        self.cosets.len()
    }

    /// Coset representatives (minimum elements), ascending.
    pub fn reps(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    /// Index of the coset containing `z`.
    pub fn coset_index(&self, z: usize) -> usize {
        self.coset_of[z % self.ell]
    }

    pub fn rep_of(&self, z: usize) -> usize {
        self.cosets[self.coset_index(z)][0]
    }

    /// Index of the coset whose representative is `rep`.
    pub fn rep_index(&self, rep: usize) -> Result<usize> {
        if rep >= self.ell || self.rep_of(rep) != rep {
            return Err(Error::UnknownRepresentative(rep));
        }
        Ok(self.coset_index(rep))
    }

    pub fn coset(&self, z: usize) -> CycSet {
        CycSet::from_sorted(self.ell, self.cosets[self.coset_index(z)].iter().copied())
    }

    /// Index of the coset `-C_q(z)` for the coset with index `idx`.
    pub fn opposite_index(&self, idx: usize) -> usize {
        let z = self.cosets[idx][0];
        self.coset_index((self.ell - z) % self.ell)
    }

    pub fn set(&self, members: &[usize]) -> Result<CycSet> {
        CycSet::new(self.ell, members.iter().copied())
    }

    /// Smallest `q`-closed superset of `members`.
    pub fn q_closure(&self, members: &[usize]) -> Result<CycSet> {
        let mut out = BTreeSet::new();
        for &z in members {
            if z >= self.ell {
                return Err(Error::OutOfRange { value: z, ell: self.ell });
            }
            out.extend(self.cosets[self.coset_of[z]].iter().copied());
        }
        Ok(CycSet { ell: self.ell, members: out })
    }

    pub fn is_q_closed(&self, a: &CycSet) -> bool {
        a.members.iter().all(|&z| a.contains(mul_mod(z, self.q, self.ell)))
    }

    pub fn full_set(&self) -> CycSet {
        CycSet::from_sorted(self.ell, 0..self.ell)
    }

    pub fn empty_set(&self) -> CycSet {
        CycSet::from_sorted(self.ell, std::iter::empty())
    }

    /// Number of partitions `(s+1)^{#cosets}`, if it fits in a `u64`.
    pub fn partition_count(&self) -> Option<u64> {
        (self.s as u64 + 1).checked_pow(self.cosets.len() as u32)
    }
}

fn mul_mod(z: usize, q: u64, ell: usize) -> usize {
    ((z as u128 * q as u128) % ell as u128) as usize
}

/// Coset count via `sum_{d | ell} phi(d) / ord_d(q)`.
pub fn coset_count_formula(ell: u64, q: u64) -> u64 {
    divisors(ell).into_iter().map(|d| euler_phi(d) / mult_order(q, d) as u64).sum()
}

/// A subset of `Z_ell`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycSet {
    ell: usize,
    members: BTreeSet<usize>,
}

/// Which derived set [`CycSet::transform`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetTransform {
    Opposite,
    Complement,
    Dual,
}

impl CycSet {
    pub fn new(ell: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for z in members {
            if z >= ell {
                return Err(Error::OutOfRange { value: z, ell });
            }
            set.insert(z);
        }
        Ok(CycSet { ell, members: set })
    }

    fn from_sorted(ell: usize, members: impl IntoIterator<Item = usize>) -> Self {
        CycSet { ell, members: members.into_iter().collect() }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn contains(&self, z: usize) -> bool {
        self.members.contains(&z)
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn opposite(&self) -> CycSet {
        let ell = self.ell;
        CycSet::from_sorted(ell, self.iter().map(|z| (ell - z) % ell))
    }

    pub fn complement(&self) -> CycSet {
        CycSet::from_sorted(self.ell, (0..self.ell).filter(|z| !self.contains(*z)))
    }

    /// Complement of the opposite set.
    pub fn dual(&self) -> CycSet {
        self.opposite().complement()
    }

    pub fn transform(&self, kind: SetTransform) -> CycSet {
        match kind {
            SetTransform::Opposite => self.opposite(),
            SetTransform::Complement => self.complement(),
            SetTransform::Dual => self.dual(),
        }
    }

    pub fn union(&self, other: &CycSet) -> CycSet {
        CycSet::from_sorted(self.ell, self.members.union(&other.members).copied())
    }

    pub fn is_subset(&self, other: &CycSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Longest interval `u*{a, ..., a+delta-1}` contained in the set, over all
    /// multipliers `u` coprime to `ell`. Runs wrap around modulo `ell`; ties go
    /// to the smallest `(u, a)`.
    pub fn longest_interval(&self) -> Interval {
        let ell = self.ell;
        let mut best = Interval { start: 0, multiplier: 1, delta: 0, ell };
        if self.members.is_empty() {
            return best;
        }
        if self.members.len() == ell {
            best.delta = ell;
            return best;
        }
        for u in 1..ell.max(2) {
            if gcd(u as u64, ell as u64) != 1 {
                continue;
            }
            let inside: Vec<bool> = (0..ell).map(|a| self.contains(u * a % ell)).collect();
            for a in 0..ell {
                let mut len = 0;
                while len < ell && inside[(a + len) % ell] {
                    len += 1;
                }
                if len > best.delta {
                    best = Interval { start: a, multiplier: u, delta: len, ell };
                }
            }
        }
        best
    }
}

impl fmt::Display for CycSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, z) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, "}}")
    }
}

/// The residues `u*a, u*(a+1), ..., u*(a+delta-1)` modulo `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub start: usize,
    pub multiplier: usize,
    pub delta: usize,
    ell: usize,
}

impl Interval {
    pub fn members(&self) -> Vec<usize> {
        (0..self.delta).map(|i| self.multiplier * ((self.start + i) % self.ell) % self.ell).collect()
    }
}

/// A `(q, s)`-cyclotomic partition stored as its level map: one level in
/// `0..=s` per coset, indexed like [`CycContext::cosets`].
#[derive(Clone, Debug)]
pub struct CycPartition {
    ctx: Arc<CycContext>,
    levels: Vec<u32>,
}

impl PartialEq for CycPartition {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.levels == other.levels
    }
}
impl Eq for CycPartition {}

impl std::hash::Hash for CycPartition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.levels.hash(state)
    }
}

impl CycPartition {
    /// Builds a partition from one level per coset (ascending representative order).
    pub fn new(ctx: &Arc<CycContext>, levels: Vec<u32>) -> Result<Self> {
        if levels.len() != ctx.coset_count() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} levels, got {}",
                ctx.coset_count(),
                levels.len()
            )));
        }
        if let Some(&level) = levels.iter().find(|&&l| l > ctx.s) {
            return Err(Error::LevelOutOfRange { level, s: ctx.s });
        }
        Ok(CycPartition { ctx: ctx.clone(), levels })
    }

    /// Builds a partition from `(representative, level)` pairs; omitted
    /// representatives sit at level `s`.
    pub fn from_pairs(ctx: &Arc<CycContext>, pairs: &[(usize, u32)]) -> Result<Self> {
        let mut levels = vec![ctx.s; ctx.coset_count()];
        let mut seen = vec![false; ctx.coset_count()];
        for &(rep, level) in pairs {
            let idx = ctx.rep_index(rep)?;
            if level > ctx.s {
                return Err(Error::LevelOutOfRange { level, s: ctx.s });
            }
            if seen[idx] {
                return Err(Error::MalformedPartition(format!("representative {rep} repeated")));
            }
            seen[idx] = true;
            levels[idx] = level;
        }
        Ok(CycPartition { ctx: ctx.clone(), levels })
    }

    /// Builds a partition from explicit sets `(A_0, ..., A_s)`.
    pub fn from_sets(ctx: &Arc<CycContext>, sets: &[CycSet]) -> Result<Self> {
        if sets.len() != ctx.s as usize + 1 {
            return Err(Error::DimensionMismatch(format!("expected {} sets, got {}", ctx.s + 1, sets.len())));
        }
        let mut levels = vec![u32::MAX; ctx.coset_count()];
        for (t, set) in sets.iter().enumerate() {
            if !ctx.is_q_closed(set) {
                return Err(Error::NotClosed);
            }
            for z in set.iter() {
                let idx = ctx.coset_index(z);
                if levels[idx] != u32::MAX && levels[idx] != t as u32 {
                    return Err(Error::MalformedPartition("sets overlap".into()));
                }
                levels[idx] = t as u32;
            }
        }
        if levels.contains(&u32::MAX) {
            return Err(Error::MalformedPartition("sets do not cover Z_ell".into()));
        }
        Ok(CycPartition { ctx: ctx.clone(), levels })
    }

    pub fn parse(ctx: &Arc<CycContext>, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (rep, level) = item
                .split_once('=')
                .ok_or_else(|| Error::MalformedPartition(format!("expected rep=level, got '{item}'")))?;
            let rep = usize::from_str(rep.trim())
                .map_err(|_| Error::MalformedPartition(format!("bad representative '{rep}'")))?;
            let level =
                u32::from_str(level.trim()).map_err(|_| Error::MalformedPartition(format!("bad level '{level}'")))?;
            pairs.push((rep, level));
        }
        Self::from_pairs(ctx, &pairs)
    }

    /// Partition with every coset at level `s` (the zero code).
    pub fn zero(ctx: &Arc<CycContext>) -> Self {
        CycPartition { ctx: ctx.clone(), levels: vec![ctx.s; ctx.coset_count()] }
    }

    /// Partition with every coset at level 0 (the full space).
    pub fn full(ctx: &Arc<CycContext>) -> Self {
        CycPartition { ctx: ctx.clone(), levels: vec![0; ctx.coset_count()] }
    }

    /// All `(s+1)^{#cosets}` partitions in lexicographic order of level vectors.
    pub fn all(ctx: &Arc<CycContext>) -> impl Iterator<Item = CycPartition> + '_ {
        let k = ctx.coset_count();
        let base = ctx.s as u64 + 1;
        let total = ctx.partition_count().unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut levels = vec![0u32; k];
            for slot in levels.iter_mut().rev() {
                *slot = (idx % base) as u32;
                idx /= base;
            }
            CycPartition { ctx: ctx.clone(), levels }
        })
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// Level of the coset containing `z`.
    pub fn level_of(&self, z: usize) -> u32 {
        self.levels[self.ctx.coset_index(z)]
    }

    /// The set `A_t`.
    pub fn set(&self, t: u32) -> CycSet {
        let members =
            self.ctx.cosets.iter().zip(&self.levels).filter(|(_, &l)| l == t).flat_map(|(c, _)| c.iter().copied());
        CycSet::from_sorted(self.ctx.ell, members)
    }

    pub fn sets(&self) -> Vec<CycSet> {
        (0..=self.ctx.s).map(|t| self.set(t)).collect()
    }

    fn check_same(&self, other: &CycPartition) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Level-wise greedy union: `C_0 = A_0 ∪ B_0`, `C_t = (A_t ∪ B_t)` minus the
    /// earlier `C_u`.
    pub fn join(&self, other: &CycPartition) -> Result<CycPartition> {
        self.check_same(other)?;
        let s = self.ctx.s;
        let mut levels = vec![u32::MAX; self.levels.len()];
        for t in 0..=s {
            for (i, slot) in levels.iter_mut().enumerate() {
                if *slot == u32::MAX && (self.levels[i] == t || other.levels[i] == t) {
                    *slot = t;
                }
            }
        }
        Ok(CycPartition { ctx: self.ctx.clone(), levels })
    }

    /// Dual of the join of the duals.
    pub fn meet(&self, other: &CycPartition) -> Result<CycPartition> {
        Ok(self.dual().join(&other.dual())?.dual())
    }

    /// `(-A_s, -A_{s-1}, ..., -A_0)`.
    pub fn dual(&self) -> CycPartition {
        let s = self.ctx.s;
        let levels = (0..self.levels.len()).map(|i| s - self.levels[self.ctx.opposite_index(i)]).collect();
        CycPartition { ctx: self.ctx.clone(), levels }
    }

    /// Lattice order: `self` describes a subcode of `other`.
    pub fn is_below(&self, other: &CycPartition) -> Result<bool> {
        Ok(self.meet(other)? == *self)
    }

    /// `(A, ∅, ..., ∅, complement A)` for a q-closed `A`.
    pub fn embed(ctx: &Arc<CycContext>, a: &CycSet) -> Result<CycPartition> {
        if !ctx.is_q_closed(a) {
            return Err(Error::NotClosed);
        }
        let levels = ctx.cosets.iter().map(|c| if a.contains(c[0]) { 0 } else { ctx.s }).collect();
        Ok(CycPartition { ctx: ctx.clone(), levels })
    }

    /// The set `A_0`.
    pub fn project(&self) -> CycSet {
        self.set(0)
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// True when `A_t` is empty for `0 < t < s`.
    pub fn is_free(&self) -> bool {
        self.levels.iter().all(|&l| l == 0 || l == self.ctx.s)
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|&l| l == self.ctx.s)
    }

    /// `(|A_0|, ..., |A_{s-1}|)`.
    pub fn type_vector(&self) -> Vec<usize> {
        let mut ty = vec![0; self.ctx.s as usize];
        for (c, &l) in self.ctx.cosets.iter().zip(&self.levels) {
            if l < self.ctx.s {
                ty[l as usize] += c.len();
            }
        }
        ty
    }
}

impl fmt::Display for CycPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, l)) in self.ctx.cosets.iter().zip(&self.levels).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}", c[0], l)?;
        }
        Ok(())
    }
}
