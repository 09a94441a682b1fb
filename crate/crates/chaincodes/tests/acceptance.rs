//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use chaincodes::catalog::{self, DEFAULT_MAX_ENUM};
use chaincodes::codes::{self, galois, CodeContext};
use chaincodes::cyclotomic::{coset_count_formula, CycContext};
use chaincodes::linalg::{self, standard_form, RMatrix, DEFAULT_MAX_WEIGHT_ENUM};
use chaincodes::ring::{Elem, Family, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GR: Family = Family::GaloisRing;

#[derive(Default)]
struct Log {
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn z4_7() -> Arc<CodeContext> {
    CodeContext::new(2, 1, 2, GR, 7).unwrap()
}

fn table1_rows() -> Vec<catalog::GoldenRow> {
    catalog::parse_golden(catalog::bundled_table1()).unwrap()
}

fn c1_table(log: &mut Log) {
    let ctx = z4_7();
    let reports = catalog::enumerate_all(&ctx, DEFAULT_MAX_ENUM, None).unwrap();
    log.check(reports.len() == 27, format!("expected 27 codes, got {}", reports.len()));
    let golden = table1_rows();
    let outcome = catalog::verify_against(&ctx, &reports, &golden).unwrap();
    for d in &outcome.diffs {
        log.check(false, d.clone());
    }
    for r in &reports {
        let power = num_bigint::BigUint::from(2u32).pow(r.exponent as u32);
        log.check(power.to_string() == r.cardinality, format!("{}: cardinality is not 2^e", r.partition));
    }
    log.note(format!("{}/{} rows match the bundled reference", outcome.matched, outcome.total));

    // Each corrected reference row is backed by an independent oracle.
    let by_label = |l: &str| golden.iter().find(|r| r.label == l).unwrap().partition.clone();
    let c23 = ctx.code_from_str(&by_label("C_23")).unwrap();
    let words = linalg::enumerate_span(c23.generator(), 1 << 14).unwrap().len();
    log.check(words == 8192, format!("C_23 enumerates to {words} words"));
    log.note(format!("C_23: {words} codewords by enumeration (published 2^12 = 4096)"));
    for label in ["C_15", "C_6"] {
        let code = ctx.code_from_str(&by_label(label)).unwrap();
        let w = linalg::min_weight_full(code.generator(), 1 << 14).unwrap();
        log.check(w == 3 && code.bch_bound() == 3, format!("{label}: weight {w}, bound {}", code.bch_bound()));
        log.note(format!("{label}: brute-force weight {w}, so the published bound 4 cannot hold"));
    }
}

fn c2_identities(log: &mut Log) {
    let ctx = z4_7();
    for id in catalog::table1_identities(&ctx).unwrap() {
        log.check(id.partition_level, format!("{} fails on partitions", id.name));
        log.check(id.codeword_level, format!("{} fails on codeword sets", id.name));
        log.note(format!("{}: partitions {}, codewords {}", id.name, id.partition_level, id.codeword_level));
    }
}

/// Counts shift-closed submodules of Z_4^3 by brute force over subsets.
fn z4_cube_cyclic_submodules() -> usize {
    let enc = |v: [u8; 3]| (v[0] + 4 * v[1] + 16 * v[2]) as usize;
    let dec = |i: usize| [(i % 4) as u8, (i / 4 % 4) as u8, (i / 16) as u8];
    let add = |a: usize, b: usize| {
        let (x, y) = (dec(a), dec(b));
        enc([(x[0] + y[0]) % 4, (x[1] + y[1]) % 4, (x[2] + y[2]) % 4])
    };
    let shift = |a: usize| {
        let x = dec(a);
        enc([x[2], x[0], x[1]])
    };
    let mut modules: BTreeSet<u64> = BTreeSet::new();
    let mut todo = vec![1u64];
    modules.insert(1);
    while let Some(m) = todo.pop() {
        for v in 0..64 {
            if m >> v & 1 == 1 {
                continue;
            }
            // M + Z_4 v
            let mut next = 0u64;
            for x in (0..64).filter(|x| m >> x & 1 == 1) {
                let mut y = x;
                for _ in 0..4 {
                    next |= 1 << y;
                    y = add(y, v);
                }
            }
            if modules.insert(next) {
                todo.push(next);
            }
        }
    }
    modules.into_iter().filter(|&m| (0..64).filter(|x| m >> x & 1 == 1).all(|x| m >> shift(x) & 1 == 1)).count()
}

fn c3_count_law(log: &mut Log) {
    for (p, s, ell) in [(2u64, 2u32, 3usize), (2, 2, 7), (2, 3, 7), (3, 2, 4), (2, 1, 7)] {
        let ctx = CodeContext::new(p, 1, s, GR, ell).unwrap();
        let expected = (s as u64 + 1).pow(coset_count_formula(ell as u64, p) as u32);
        let mut reps: Vec<(linalg::StandardForm, RMatrix)> = Vec::new();
        for code in ctx.all_codes() {
            let g = code.generator().clone();
            let dup = reps.iter().any(|(sf, h)| sf.contains_all(&g) && standard_form(&g).contains_all(h));
            if !dup {
                reps.push((standard_form(&g), g));
            }
        }
        log.check(
            reps.len() as u64 == expected,
            format!("q={p} s={s} ell={ell}: {} distinct, expected {expected}", reps.len()),
        );
        log.note(format!("q={p} s={s} ell={ell}: {} distinct codes = (s+1)^#cosets = {expected}", reps.len()));
    }
    let brute = z4_cube_cyclic_submodules();
    log.check(brute == 9, format!("brute force found {brute} cyclic submodules of Z_4^3"));
    log.note(format!("Z_4^3: {brute} shift-closed submodules by exhaustive search"));
}

fn c4_z8_example(log: &mut Log) {
    let r = RingSpec::new(2, 1, 3, 1, GR).unwrap();
    let g = RMatrix::from_ints(&r, &[vec![1, 1, 3, 4, 0, 5], vec![0, 2, 2, 6, 4, 0], vec![0, 0, 4, 0, 4, 4]]).unwrap();
    let sf = standard_form(&g);
    log.check(sf.type_vector == vec![1, 1, 1], format!("type {:?}", sf.type_vector));
    let w = linalg::min_weight(&g, DEFAULT_MAX_WEIGHT_ENUM).unwrap();
    let wf = linalg::min_weight_full(&g, DEFAULT_MAX_WEIGHT_ENUM).unwrap();
    log.check(w == 3, format!("annihilator weight {w}"));
    log.check(wf == 3, format!("full-enumeration weight {wf}"));
    log.note(format!("type {:?}, weight {w} (annihilator), {wf} (all 2^6 codewords)", sf.type_vector));
}

fn c5_cosets_mod_20(log: &mut Log) {
    let ctx = CycContext::new(20, 3, 2).unwrap();
    let expected: Vec<Vec<usize>> = vec![
        vec![0],
        vec![1, 3, 7, 9],
        vec![2, 6, 14, 18],
        vec![4, 8, 12, 16],
        vec![5, 15],
        vec![10],
        vec![11, 13, 17, 19],
    ];
    log.check(ctx.cosets() == expected.as_slice(), format!("cosets {:?}", ctx.cosets()));
    log.check(ctx.reps() == vec![0, 1, 2, 4, 5, 10, 11], "representatives");
    let a = ctx.q_closure(&[0, 1, 2, 4, 5, 10]).unwrap();
    let d = a.dual();
    log.check(d.to_vec() == vec![1, 3, 7, 9], format!("dual {d}"));
    log.check(d == ctx.q_closure(&[1]).unwrap(), "dual differs from C_3({1})");
    log.note(format!("7 cosets; dual(C_3({{0,1,2,4,5,10}})) = {d}"));
}

fn c6_bch(log: &mut Log) {
    let ctx = z4_7();
    for row in table1_rows() {
        let code = ctx.code_from_str(&row.partition).unwrap();
        let full = linalg::min_weight_full(code.generator(), 1 << 14).unwrap();
        let ann = code.min_weight(1 << 14).unwrap();
        let bound = code.bch_bound();
        log.check(full >= bound, format!("{}: weight {full} < bound {bound}", row.label));
        log.check(full == ann, format!("{}: annihilator weight {ann} != {full}", row.label));
        if row.label == "C_2" {
            log.check(full == 7 && bound == 7, format!("repetition code: weight {full}, bound {bound}"));
            log.note(format!("repetition code: weight {full}, bound {bound}"));
        }
    }
    log.note("27 codes: brute-force weight >= bound and equals the annihilator weight");
}

fn c7_duality(log: &mut Log) {
    let contexts = [(2u64, 3usize), (2, 5), (2, 7), (3, 4)];
    let mut total = 0;
    for (i, &(p, ell)) in contexts.iter().enumerate() {
        let ctx = CodeContext::new(p, 1, 2, GR, ell).unwrap();
        let samples = catalog::random_duality_checks(&ctx, 25, 0x5eed + i as u64, 1 << 16).unwrap();
        for s in &samples {
            log.check(s.agrees, format!("Z_{} ell={ell} {}: duals differ", p * p, s.partition));
        }
        total += samples.len();
    }
    log.note(format!("{total} seeded partitions: partition dual equals kernel dual as codeword sets"));
}

fn random_s_code(rng: &mut ChaCha8Rng, ext: &Arc<RingSpec>, ell: usize) -> RMatrix {
    let rows = rng.gen_range(1..=3);
    let data = (0..rows).map(|_| (0..ell).map(|_| ext.from_index(rng.gen_range(0..ext.size()))).collect()).collect();
    RMatrix::new(ext, ell, data).unwrap()
}

fn c8_delsarte(log: &mut Log) {
    let ctx = z4_7();
    let ext = ctx.ext_ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0xde15);
    let words = |g: &RMatrix| linalg::enumerate_span(g, 1 << 14).unwrap();
    let (mut invariant, mut not_invariant) = (0, 0);
    for i in 0..25 {
        let mut b = random_s_code(&mut rng, &ext, 7);
        if i % 2 == 1 {
            b = galois::closure(&ctx, &b).unwrap();
        }
        let tr_dual = galois::trace(&ctx, &linalg::kernel(&b)).unwrap();
        let res = galois::restriction(&ctx, &b).unwrap();
        log.check(words(&tr_dual) == words(&linalg::kernel(&res)), format!("code {i}: Tr(B^⊥) != Res(B)^⊥"));

        let inv = galois::is_sigma_invariant(&ctx, &b).unwrap();
        let tr_eq_res = words(&galois::trace(&ctx, &b).unwrap()) == words(&res);
        let types_eq = standard_form(&b).type_vector == standard_form(&res).type_vector;
        log.check(
            inv == tr_eq_res && tr_eq_res == types_eq,
            format!("code {i}: invariant {inv}, Tr=Res {tr_eq_res}, types {types_eq}"),
        );
        if inv {
            invariant += 1;
        } else {
            not_invariant += 1;
        }
    }
    log.check(invariant > 0 && not_invariant > 0, "both invariant and non-invariant codes must occur");
    log.note(format!(
        "25 codes ({invariant} Frobenius-invariant, {not_invariant} not): Delsarte identity and equivalences hold"
    ));

    let l1 = ctx.poly_code(&[1]).unwrap();
    let closed = galois::closure(&ctx, &l1).unwrap();
    log.check(linalg::same_span(&closed, &ctx.poly_code(&[1, 2, 4]).unwrap()), "closure of L({1}) != L({1,2,4})");
}

fn c9_mds(log: &mut Log) {
    let r = codes::mds_family(3, 2, GR, DEFAULT_MAX_WEIGHT_ENUM).unwrap();
    log.check(r.dual_set_is_defining_plus_zero, "A^⋄ != A ∪ {0}");
    log.check(r.dual_relation_holds, "L(A)^⊥ != L(A^⋄)");
    log.check(r.rank == 4, format!("rank {}", r.rank));
    log.check(r.min_weight == 4, format!("min weight {}", r.min_weight));
    log.check(r.mds, "not MDS");
    log.check(
        r.self_orthogonal,
        format!(
            "L(A^⋄) is not self-orthogonal: the all-ones row has inner product {:?} = 7·1 with itself; \
             the self-orthogonal member is L(A) = L(A^⋄)^⊥ (rank {}, weight {}, self-orthogonal {})",
            r.all_ones_inner_product, r.dual_code.rank, r.dual_code.min_weight, r.dual_code.self_orthogonal
        ),
    );
    log.note(format!(
        "L(A^⋄): rank {}, weight {}, Singleton {}; self-orthogonal {}",
        r.rank, r.min_weight, r.singleton_bound, r.self_orthogonal
    ));
}

fn ring_invariants(log: &mut Log, ring: &Arc<RingSpec>, ells: &[usize]) {
    let name = format!("(p={}, n={}, s={}, m={})", ring.p(), ring.n(), ring.s(), ring.m());
    let q = ring.q();
    let xi = ring.xi();
    log.check(ring.frobenius(xi, ring.m()) == *xi, format!("{name}: sigma^m != id"));
    for k in 1..ring.m() {
        log.check(ring.frobenius(xi, k) != *xi, format!("{name}: sigma^{k} fixes xi"));
    }
    log.check(ring.frobenius(xi, 1) == ring.pow(xi, q), format!("{name}: sigma(xi) != xi^q"));
    let all: Vec<Elem> = ring.elements().collect();
    let fixed = all.iter().filter(|a| ring.in_base(a)).count() as u64;
    log.check(fixed == q.pow(ring.s()), format!("{name}: {fixed} fixed elements"));
    let images: HashSet<Elem> = all.iter().map(|a| ring.trace(a)).collect();
    log.check(images.len() as u64 == q.pow(ring.s()), format!("{name}: trace image has {} elements", images.len()));
    let basis: Vec<Elem> = (0..ring.m()).map(|i| ring.pow(xi, i as u64)).collect();
    let degenerate = all
        .iter()
        .filter(|b| !ring.is_zero(b))
        .any(|b| basis.iter().all(|x| ring.is_zero(&ring.trace(&ring.mul(b, x)))));
    log.check(!degenerate, format!("{name}: trace form degenerate"));
    for &ell in ells {
        let eta = ring.root_of_unity(ell).unwrap();
        log.check(ring.order(&eta).unwrap() == ell as u64, format!("{name}: eta order != {ell}"));
        for i in 1..ell {
            let sum = (0..ell).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.pow(&eta, (i * j) as u64)));
            log.check(ring.is_zero(&sum), format!("{name}: sum_j eta^({i} j) != 0"));
        }
    }
}

fn c10_invariants(log: &mut Log) {
    type RingCase = ((u64, u32, u32, u32), &'static [usize]);
    let rings: [RingCase; 10] = [
        ((2, 1, 2, 3), &[7]),
        ((2, 1, 2, 2), &[3]),
        ((2, 1, 3, 3), &[7]),
        ((3, 1, 2, 2), &[4]),
        ((2, 1, 1, 3), &[7]),
        ((2, 1, 3, 1), &[1]),
        ((2, 1, 2, 4), &[5]),
        ((2, 3, 2, 1), &[7]),
        ((2, 1, 2, 1), &[1]),
        ((3, 1, 2, 1), &[1, 2]),
    ];
    for ((p, n, s, m), ells) in rings {
        let ring = RingSpec::new(p, n, s, m, GR).unwrap();
        ring_invariants(log, &ring, ells);
    }
    log.note(format!("{} rings checked", rings.len()));
}

type Criterion = fn(&mut Log);

fn main() {
    let criteria: [(u32, &str, Criterion, u64); 10] = [
        (1, "reference catalog reproduction", c1_table, 10),
        (2, "lattice identities", c2_identities, 5),
        (3, "count law", c3_count_law, 60),
        (4, "Z_8 worked example", c4_z8_example, 1),
        (5, "cosets modulo 20", c5_cosets_mod_20, 1),
        (6, "BCH soundness", c6_bch, 30),
        (7, "duality oracle", c7_duality, 120),
        (8, "Delsarte and Galois closure", c8_delsarte, 120),
        (9, "MDS self-orthogonal family", c9_mds, 10),
        (10, "algebraic invariants", c10_invariants, 30),
    ];
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let mut log = Log::default();
        if let Err(panic) = catch_unwind(AssertUnwindSafe(|| run(&mut log))) {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            log.failures.push(format!("panicked: {msg}"));
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(budget) {
            log.failures.push(format!("took {elapsed:.2?}, budget {budget}s"));
        }
        let status = if log.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {id:>2}: {name} ({elapsed:.2?})");
        for n in &log.notes {
            println!("         {n}");
        }
        for f in &log.failures {
            println!("         failure: {f}");
        }
        if !log.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
