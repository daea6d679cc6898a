//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use taftlab::algebra::{FinDimAlgebra, Subspace};
use taftlab::constructions::{
    apply_v, build_nilpotent_extension, build_semisimple, build_semisimple_unchecked, elementary_grading, iso_map,
    iso_semisimple, is_graded_isomorphism, recover_structure, sample_aut_pairs, v_power_closed_form,
    verify_iso_witness, AutPair, NilpotentExtensionSpec, SemisimpleSpec,
};
use taftlab::fixtures::{by_name, corpus, grid_spec, Fixture, GridShape};
use taftlab::hmodule::{is_hma_isomorphism, HModuleAlgebra, Simplicity};
use taftlab::identities::{codimension_with, CodimOptions, RankMethod};
use taftlab::qcomb::q_binom;
use taftlab::taft::{TaftAlgebra, AXIOMS};
use taftlab::{CMatrix, CycNum, CyclotomicField, Error, Matrix};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec_of(name: &str) -> SemisimpleSpec {
    match by_name(name).expect("fixture exists").fixture {
        Fixture::Spec(s) => s,
        _ => panic!("{name} is not a semisimple spec"),
    }
}

fn hma_of(name: &str) -> HModuleAlgebra {
    by_name(name).expect("fixture exists").fixture.to_hma().expect("fixture builds")
}

/// All valid (m, k, t, shape) specs on the closed-form grid.
fn spec_grid(ks: &[usize]) -> Vec<SemisimpleSpec> {
    let mut out = Vec::new();
    for m in 2..=4u32 {
        for &k in ks {
            for t in (1..=m as usize).filter(|t| m as usize % t == 0) {
                for (i, shape) in [GridShape::Cyclic, GridShape::Nilpotent].into_iter().enumerate() {
                    if let Some(s) = grid_spec(m, k, t, shape, 1000 * m as u64 + 100 * k as u64 + 10 * t as u64 + i as u64) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn random_tuple(spec: &SemisimpleSpec, rng: &mut ChaCha8Rng) -> Vec<CMatrix> {
    let f = spec.field().unwrap();
    (0..spec.t)
        .map(|_| {
            let data = (0..spec.k * spec.k)
                .map(|_| &f.int(rng.gen_range(-5..=5)) * &f.zeta_power(rng.gen_range(0..spec.m as i64)))
                .collect();
            Matrix::from_vec(f, spec.k, spec.k, data)
        })
        .collect()
}

fn hopf_axioms() -> Outcome {
    let start = Instant::now();
    for m in 2..=6 {
        let h = TaftAlgebra::new(m).map_err(|e| e.to_string())?;
        let report = h.verify_axioms();
        for a in AXIOMS {
            ensure(report.passed(a), || format!("m = {m}: {a:?} fails: {:?}", report.failures))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("4 axiom families exact for m = 2..6 in {secs:.2} s"))
}

fn module_algebra_fixtures() -> Outcome {
    let names = [
        "m2_trivial",
        "m2_graded",
        "sweedler_p_gamma3",
        "ff_alpha_1",
        "ff_alpha_neg1",
        "ff_alpha_2",
        "m2m2_diag_1",
        "m2m2_diag_neg1",
        "m2m2_diag_2",
        "m2m2_nilpotent",
        "sweedler2dim",
    ];
    for name in names {
        let report = hma_of(name).verify();
        ensure(report.all_passed(), || format!("{name}: {:?}", report.failures()))?;
    }
    Ok(format!("{} m = 2 fixtures pass every module-algebra check", names.len()))
}

fn closed_form_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let specs = spec_grid(&[1, 2, 3]);
    let mut checks = 0;
    for spec in &specs {
        for _ in 0..20 {
            let a = random_tuple(spec, &mut rng);
            let mut iter = a.clone();
            for l in 1..=spec.m {
                iter = apply_v(spec, &iter);
                let closed = v_power_closed_form(spec, l, &a).map_err(|e| e.to_string())?;
                ensure(closed == iter, || format!("m={} k={} t={} l={l}: closed form differs", spec.m, spec.k, spec.t))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact comparisons over {} grid specs", specs.len()))
}

fn forced_scalar() -> Outcome {
    let specs = spec_grid(&[1, 2, 3]);
    let (mut mutants, mut forced) = (0, 0);
    for spec in &specs {
        let m = spec.m as u64;
        let v = build_semisimple_unchecked(spec).map_err(|e| e.to_string())?.v_op().clone();
        ensure(v.pow(m).is_zero(), || format!("m={} k={} t={}: unmutated v^m != 0", spec.m, spec.k, spec.t))?;
        // Pattern-preserving mutations: add 1 at a position allowed by QPQ^-1 = ζ^-t P.
        let f = spec.field().unwrap();
        let s = spec.m as usize / spec.t;
        let mut found = 0;
        for i in 0..spec.k {
            for j in 0..spec.k {
                if (i + s - j % s) % s != 1 % s {
                    continue;
                }
                let mut p = spec.p.clone();
                p.set(i, j, p.get(i, j) + &f.one());
                if p.pow(m).scalar_value().is_some() {
                    continue;
                }
                let mutant = SemisimpleSpec::new(spec.m, spec.k, spec.t, p, spec.q.clone());
                ensure(matches!(mutant.validate(), Err(Error::InvalidSpec(_))), || "mutant validated".into())?;
                let vm = build_semisimple_unchecked(&mutant).map_err(|e| e.to_string())?.v_op().pow(m);
                ensure(!vm.is_zero(), || format!("m={} k={} t={} mutant at ({i},{j}): v^m = 0", spec.m, spec.k, spec.t))?;
                found += 1;
            }
        }
        if found == 0 {
            forced += 1;
        }
        mutants += found;
    }
    ensure(mutants > 0, || "no mutant with non-scalar P^m".into())?;
    Ok(format!(
        "{} specs give v^m = 0; {mutants} mutants give v^m != 0; {forced} specs admit no pattern-preserving non-scalar mutant",
        specs.len()
    ))
}

fn q_binomials() -> Outcome {
    let mut count = 0;
    for m in 2..=6u32 {
        let f = CyclotomicField::new(m).unwrap();
        for q in [f.zeta_power(-1), f.zeta()] {
            for j in 1..m {
                let b = q_binom(m, j, &q).map_err(|e| e.to_string())?;
                ensure(b.is_zero(), || format!("binom({m},{j}) != 0 at a primitive {m}-th root"))?;
                count += 1;
            }
            for n in 1..=2 * m {
                for k in 1..n {
                    let lhs = q_binom(n, k, &q).unwrap();
                    let a = &q_binom(n - 1, k - 1, &q).unwrap() + &(&q.pow(k as i64).unwrap() * &q_binom(n - 1, k, &q).unwrap());
                    let b = &(&q.pow((n - k) as i64).unwrap() * &q_binom(n - 1, k - 1, &q).unwrap()) + &q_binom(n - 1, k, &q).unwrap();
                    ensure(lhs == a && lhs == b, || format!("q-Pascal fails at m={m} n={n} k={k}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} exact vanishing and q-Pascal checks"))
}

/// Checks that `w` spans a proper nonzero H-invariant two-sided ideal.
fn witness_is_ideal(h: &HModuleAlgebra, w: &Subspace) -> bool {
    let a = h.algebra();
    if w.is_zero() || w.is_full() {
        return false;
    }
    w.basis().iter().all(|x| {
        w.contains(&h.c_op().mul_vec(x))
            && w.contains(&h.v_op().mul_vec(x))
            && (0..a.dim()).all(|i| {
                let e = a.basis_vec(i);
                w.contains(&a.mul(&e, x)) && w.contains(&a.mul(x, &e))
            })
    })
}

fn simplicity_certificates() -> Outcome {
    let mut built: Vec<(String, HModuleAlgebra, bool)> = Vec::new();
    for f in corpus() {
        built.push((f.name.to_string(), f.fixture.to_hma().map_err(|e| e.to_string())?, f.simple));
    }
    for spec in spec_grid(&[1, 2]) {
        let name = format!("grid m={} k={} t={}", spec.m, spec.k, spec.t);
        built.push((name, build_semisimple(&spec).map_err(|e| e.to_string())?, true));
    }
    let (mut certified, mut negatives) = (0, 0);
    for (name, h, simple) in &built {
        match (h.is_h_simple(), simple) {
            (Simplicity::CertifiedSimple, true) => certified += 1,
            (Simplicity::NotSimple(w), false) => {
                ensure(witness_is_ideal(h, &w.ideal), || format!("{name}: witness is not a proper H-ideal"))?;
                negatives += 1;
            }
            (verdict, _) => return Err(format!("{name}: unexpected {}", verdict.label())),
        }
    }
    Ok(format!("{certified} CertifiedSimple, {negatives} NotSimple with verified ideals, 0 Inconclusive"))
}

fn isomorphism_decision() -> Outcome {
    let cases = [
        ("m2m2_diag_1", "m2m2_diag_neg1", true),
        ("ff_alpha_1", "ff_alpha_neg1", true),
        ("m2m2_diag_1", "m2m2_diag_2", false),
        ("m2m2_diag_neg1", "m2m2_diag_2", false),
        ("ff_alpha_1", "ff_alpha_2", false),
        ("m2m2_diag_1", "m2m2_nilpotent", false),
        ("m2m2_diag_2", "m2m2_nilpotent", false),
        ("m2m2_scalar_1", "m2m2_diag_1", false),
    ];
    for (a, b, expected) in cases {
        let (s1, s2) = (spec_of(a), spec_of(b));
        let found = iso_semisimple(&s1, &s2).map_err(|e| e.to_string())?;
        ensure(found.is_some() == expected, || format!("{a} vs {b}: expected isomorphic = {expected}"))?;
        if let Some(w) = found {
            ensure(verify_iso_witness(&s1, &s2, &w), || format!("{a} vs {b}: witness fails conjugation check"))?;
            let map = iso_map(&s1, &w).map_err(|e| e.to_string())?;
            let (h1, h2) = (build_semisimple(&s1).unwrap(), build_semisimple(&s2).unwrap());
            ensure(is_hma_isomorphism(&h1, &h2, &map), || format!("{a} vs {b}: map is not an isomorphism"))?;
        }
    }
    Ok(format!("{} verdicts reproduced; witnesses re-verified", cases.len()))
}

fn graded_bases() -> Vec<(String, NilpotentExtensionSpec)> {
    let mut out = Vec::new();
    for m in [2u32, 3] {
        let f = CyclotomicField::new(m).unwrap();
        out.push((format!("F, m={m}"), NilpotentExtensionSpec::new(m, FinDimAlgebra::ground_field(f), vec![0]).unwrap()));
        for g in [[0, 1], [0, m as usize - 1]] {
            let (b, d) = elementary_grading(f, &g);
            out.push((format!("M2 grading {g:?}, m={m}"), NilpotentExtensionSpec::new(m, b, d).unwrap()));
        }
    }
    out
}

fn recovery_round_trip() -> Outcome {
    let cases = graded_bases();
    for (name, spec) in &cases {
        let h = build_nilpotent_extension(spec).map_err(|e| e.to_string())?;
        let rec = recover_structure(&h).map_err(|e| format!("{name}: {e}"))?;
        let db = spec.base().dim();
        let f = h.field();
        let m = spec.conductor() as usize;
        // Original B sits in A as the first dim B coordinates.
        let cols: Vec<Vec<CycNum>> = (0..db)
            .map(|j| rec.base_coordinates(&h.algebra().basis_vec(j)).ok_or_else(|| format!("{name}: e{j} not in ker v")))
            .collect::<Result<_, _>>()?;
        let t = Matrix::from_cols(f, db, &cols);
        ensure(
            is_graded_isomorphism(spec.base(), spec.degrees(), rec.spec.base(), rec.spec.degrees(), &t),
            || format!("{name}: recovered B is not graded-isomorphic"),
        )?;
        // φ^k(a)φ^l(b) = binom(k+l,k)_ζ φ^{k+l}((c^l a) b) on recovered basis pairs.
        let a = h.algebra();
        let g: Vec<Vec<CycNum>> = (0..db).map(|j| rec.iso.col(j)).collect();
        let phi_pows: Vec<CMatrix> = (0..2 * m).map(|e| rec.phi.pow(e as u64)).collect();
        for (ia, ga) in g.iter().enumerate() {
            for gb in &g {
                for k in 0..m {
                    for l in 0..m {
                        let lhs = a.mul(&phi_pows[k].mul_vec(ga), &phi_pows[l].mul_vec(gb));
                        let cla = h.monomial_operator(l, 0).mul_vec(ga);
                        let coef = q_binom((k + l) as u32, k as u32, &f.zeta()).unwrap();
                        let rhs: Vec<CycNum> =
                            phi_pows[k + l].mul_vec(&a.mul(&cla, gb)).iter().map(|x| &coef * x).collect();
                        ensure(lhs == rhs, || format!("{name}: product law fails at basis {ia}, k={k}, l={l}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{} bases recovered up to graded isomorphism; product law exact", cases.len()))
}

fn radical_oracle() -> Outcome {
    let cases = graded_bases();
    for (name, spec) in &cases {
        let h = build_nilpotent_extension(spec).map_err(|e| e.to_string())?;
        let a = h.algebra();
        let f = h.field();
        let db = spec.base().dim();
        let known = Subspace::span(f, a.dim(), &(db..a.dim()).map(|i| a.basis_vec(i)).collect::<Vec<_>>());
        let j = a.jacobson_radical();
        ensure(j == known, || format!("{name}: trace-form radical has dim {} vs {}", j.dim(), known.dim()))?;
        let (quot, proj) = a.quotient(&j).map_err(|e| e.to_string())?;
        let b = spec.base();
        ensure(quot.dim() == db, || format!("{name}: A/J has dim {}", quot.dim()))?;
        let t = Matrix::from_cols(f, db, &(0..db).map(|i| proj.mul_vec(&a.basis_vec(i))).collect::<Vec<_>>());
        ensure(t.inverse().is_some(), || format!("{name}: B -> A/J not bijective"))?;
        for x in 0..db {
            for y in 0..db {
                let lhs = t.mul_vec(&b.mul(&b.basis_vec(x), &b.basis_vec(y)));
                ensure(lhs == quot.mul(&t.col(x), &t.col(y)), || format!("{name}: B -> A/J not multiplicative"))?;
            }
        }
    }
    Ok(format!("{} extensions: J(A) equals the known span and A/J(A) ≅ B", cases.len()))
}

fn codimension_desk_scale() -> Outcome {
    let start = Instant::now();
    let sweedler = hma_of("sweedler2dim");
    for method in [RankMethod::Exact, RankMethod::Modular] {
        let r = codimension_with(&sweedler, 1, &CodimOptions { method, ..CodimOptions::default() })
            .map_err(|e| e.to_string())?;
        ensure(r.value == 3, || format!("{method:?}: c_1 = {}", r.value))?;
    }
    let mut computed = std::collections::BTreeMap::new();
    let mut refused = 0;
    for f in corpus() {
        let h = f.fixture.to_hma().unwrap();
        if h.conductor() != 2 {
            continue;
        }
        for n in 1..=4 {
            match codimension_with(&h, n, &CodimOptions::default()) {
                Ok(r) => {
                    ensure(r.exact, || format!("{} n={n}: not certified", f.name))?;
                    ensure(r.value as u128 <= r.cols, || format!("{} n={n}: c_n = {} exceeds (dim A)^(n+1)", f.name, r.value))?;
                    computed.insert((f.name, n), r.value);
                }
                Err(Error::BudgetExceeded { .. }) => refused += 1,
                Err(e) => return Err(format!("{} n={n}: {e}", f.name)),
            }
        }
    }
    for (a, b) in [("m2m2_diag_1", "m2m2_diag_neg1"), ("ff_alpha_1", "ff_alpha_neg1")] {
        for n in 1..=4 {
            ensure(computed.get(&(a, n)) == computed.get(&(b, n)), || format!("{a} vs {b}: c_{n} differs"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))?;
    Ok(format!("c_1 = 3 by both backends; {} pairs within the bound, {refused} refused by budget; {secs:.1} s", computed.len()))
}

fn automorphism_group_law() -> Outcome {
    let mut formula_checks = 0;
    let names = ["m2m2_diag_1", "m2m2_nilpotent", "m4_k2_t2_nilpotent"];
    for name in names {
        let spec = spec_of(name);
        let pairs = sample_aut_pairs(&spec, 6, 11).map_err(|e| e.to_string())?;
        ensure(pairs.len() == 6, || format!("{name}: only {} pairs sampled", pairs.len()))?;
        let id = AutPair::identity(&spec);
        let q_inv = spec.q.inverse().unwrap();
        for x in &pairs {
            let c = |a: &AutPair, b: &AutPair| a.compose(b, &spec).unwrap();
            ensure(c(&id, x) == *x && c(x, &id) == *x, || format!("{name}: identity law"))?;
            let inv = x.inverse(&spec).unwrap();
            ensure(c(x, &inv) == id && c(&inv, x) == id, || format!("{name}: inverse law"))?;
            for y in &pairs {
                for z in &pairs {
                    ensure(c(&c(x, y), z) == c(x, &c(y, z)), || format!("{name}: associativity"))?;
                }
                let xy = c(x, y);
                ensure(
                    xy.to_automorphism(&spec).unwrap()
                        == x.to_automorphism(&spec).unwrap().mul(&y.to_automorphism(&spec).unwrap()),
                    || format!("{name}: composition is not the product of automorphisms"),
                )?;
                if x.r() + y.r() >= spec.t {
                    let expected = AutPair::new(&spec, x.t_bar().mul(y.t_bar()).mul(&q_inv), x.r() + y.r() - spec.t)
                        .map_err(|e| e.to_string())?;
                    ensure(xy == expected, || format!("{name}: r+s >= t branch differs"))?;
                    formula_checks += 1;
                }
            }
        }
    }
    ensure(formula_checks > 0, || "r+s >= t branch never exercised".into())?;
    Ok(format!("group laws on 3 specs; {formula_checks} wrap-around compositions match (WTQ^-1, r+s-t)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Hopf axiom suite", hopf_axioms),
        ("module-algebra fixtures", module_algebra_fixtures),
        ("closed form for v^l", closed_form_oracle),
        ("forced-scalar property", forced_scalar),
        ("q-binomial vanishing and q-Pascal", q_binomials),
        ("simplicity certificates", simplicity_certificates),
        ("isomorphism decision", isomorphism_decision),
        ("structure recovery round trip", recovery_round_trip),
        ("radical oracle", radical_oracle),
        ("codimension desk scale", codimension_desk_scale),
        ("automorphism group law", automorphism_group_law),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
