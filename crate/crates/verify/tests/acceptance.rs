//! Acceptance criteria 1–11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or exceeds its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ribet_core::borel::{adjoint_quadruple_check, TauAction};
use ribet_core::brcomplex::regular::{block_with_linear_relation, generic_2xn, inhomogeneous_linear_forms};
use ribet_core::brcomplex::{
    br_complexes_with, build_cd_morphism, check_d2, d_ijk, homology_at_random_points, koszul,
    regular_sequence_check, regularity_check, symbolic_h1,
};
use ribet_core::exactpoly::{CoefficientRing, MonomialOrder, Polynomial};
use ribet_core::genmat::{det_congruence_check, trace_congruence_check, Word};
use ribet_core::groebner::{FreeModuleMatrix, ModuleBasis};
use ribet_core::properties::{all_properties, small_ring};
use ribet_core::ribet::formal::{
    check_e_tau_invariance, check_e_tau_invariance_with, check_example_r2, check_quads_adjoint,
    quotient_presentation, relation_quads, QuadSource,
};
use ribet_core::ribet::shape::corpus;
use ribet_core::ribet::{check_specialized, generate_specialization, FormalRing, RowSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn example_identity() -> Outcome {
    ensure(check_example_r2().map_err(err)?, "normal form is nonzero")?;
    Ok("normal form 0 over Q".into())
}

fn trace_identities() -> Outcome {
    let mut n = 0;
    for r in [2, 3] {
        for w in Word::all_up_to(r, 3) {
            ensure(trace_congruence_check(&w, r).map_err(err)?, format!("word {w}, r={r}"))?;
            n += 1;
        }
    }
    ensure(n >= 11, format!("only {n} checks"))?;
    Ok(format!("{n} words"))
}

fn determinant_congruence() -> Outcome {
    let terms: [&[usize]; 5] = [&[1], &[2], &[1, 1], &[1, 2], &[2, 1]];
    for t in terms {
        ensure(det_congruence_check(t, 2, 2).map_err(err)?, format!("terms {t:?}"))?;
    }
    Ok(format!("{} combinations, word cap 2", terms.len()))
}

fn stability() -> Outcome {
    let mut n = 0;
    let mut local = 0;
    for shape in corpus::all() {
        let fr = FormalRing::new(&shape);
        for (label, ok) in check_quads_adjoint(&fr).map_err(err)? {
            ensure(ok, format!("{}: {label}", shape.name()))?;
            n += 1;
        }
        local += relation_quads(&fr)
            .iter()
            .filter(|q| matches!(q.source, QuadSource::Local { .. }))
            .count();
    }
    ensure(local > 0, "no local quadruples in the corpus")?;
    let fr = FormalRing::new(&corpus::one_inertia_row());
    let tau = TauAction::new(&fr.ring);
    let q = relation_quads(&fr)
        .into_iter()
        .find(|q| matches!(q.source, QuadSource::Local { .. }))
        .ok_or("no local quadruple")?;
    let m = &q.entries;
    let corrupted = adjoint_quadruple_check(&tau, [&m.a, &m.c, &m.b, &m.d]).map_err(err)?;
    ensure(!corrupted, "corrupted quadruple passed")?;
    Ok(format!("{n} quadruples ({local} local); corrupted control rejected"))
}

fn tau_invariance() -> Outcome {
    for shape in [corpus::two_product_rows(), corpus::one_inertia_row()] {
        ensure(check_e_tau_invariance(&FormalRing::new(&shape)).map_err(err)?, shape.name())?;
    }
    let fr = FormalRing::new(&corpus::one_inertia_row());
    let control = check_e_tau_invariance_with(&fr, |_, q| !matches!(q.source, QuadSource::Linear { .. }))
        .map_err(err)?;
    ensure(!control, "holds without the linear generator")?;
    Ok("2 shapes; control without a J′ generator fails".into())
}

fn specialization() -> Outcome {
    let shape = corpus::specialization();
    let places = shape.spec.places.len();
    let sigma = shape.spec.sigma_places.len() + usize::from(shape.spec.v0);
    ensure(places == 1 && sigma <= 2, "shape outside |P| = 1, |Σ| ≤ 2")?;
    for seed in 1..=20u64 {
        let inst = generate_specialization(&shape, seed, 10007).map_err(err)?;
        let c = check_specialized(&inst).map_err(err)?;
        ensure(c.all(), format!("seed {seed}: {c:?}"))?;
        if seed == 1 {
            let bad = check_specialized(&inst.perturbed()).map_err(err)?;
            ensure(!bad.det_eprime_zero, "perturbed instance keeps det(E′) = 0")?;
        }
    }
    Ok("20 seeds × 4 fields at p = 10007; perturbed control fails".into())
}

fn quotient_presentation_corpus() -> Outcome {
    let shapes = corpus::all();
    let mut kinds = [false; 5];
    for shape in &shapes {
        for row in &shape.spec.rows {
            let k = match row {
                RowSpec::I => 0,
                RowSpec::II { .. } => 1,
                RowSpec::III { .. } => 2,
                RowSpec::IV { .. } => 3,
                RowSpec::V { .. } => 4,
            };
            kinds[k] = true;
        }
        let q = quotient_presentation(&FormalRing::new(shape));
        ensure(q.holds, format!("{}: {:?} vs {:?}", shape.name(), q.computed, q.expected))?;
    }
    ensure(shapes.len() >= 4 && kinds.iter().all(|&k| k), "corpus misses a row type")?;
    Ok(format!("{} shapes, all five row types", shapes.len()))
}

fn complexes() -> Outcome {
    let r = small_ring(CoefficientRing::Rationals, 4, MonomialOrder::DegRevLex);
    let xs: Vec<Polynomial> = (1..=4).map(|i| r.var(&format!("x{i}"))).collect();
    for n in 1..=4 {
        ensure(check_d2(&koszul(&xs[..n]).map_err(err)?), format!("koszul {n}"))?;
    }
    for n in 2..=4 {
        let (_, f) = generic_2xn(CoefficientRing::Rationals, n);
        let b = br_complexes_with(&f, 3).map_err(err)?;
        ensure(check_d2(&b.rf) && check_d2(&b.rdetf), format!("BR 2×{n}"))?;
    }
    let k2 = koszul(&xs[..2]).map_err(err)?;
    ensure(symbolic_h1(&k2).map_err(err)?.is_exact_at_1, "koszul(b₁,b₂) not exact at 1")?;

    let (ring, f) = generic_2xn(CoefficientRing::Rationals, 3);
    let rf = br_complexes_with(&f, 3).map_err(err)?.rf;
    let h = symbolic_h1(&rf).map_err(err)?;
    ensure(h.is_exact_at_1, "R(f) not exact at 1")?;
    let d123 = d_ijk(&f, 0, 1, 2);
    ensure(f.apply(&d123).iter().all(Polynomial::is_zero), "d₁₂₃ not in ker f")?;
    let span = ModuleBasis::new(&ring, 3, &[d123]).map_err(err)?;
    for v in &h.kernel_generators {
        ensure(span.contains(v).map_err(err)?, "kernel generator outside ⟨d₁₂₃⟩")?;
    }

    let c = block_with_linear_relation(CoefficientRing::Rationals).map_err(err)?;
    for hs in homology_at_random_points(&c, 10007, 20, 1).map_err(err)? {
        ensure(hs[1..].iter().all(|&x| x == 0), format!("homology {hs:?}"))?;
    }
    Ok("d² = 0; exact at 1; H_k = 0 (k ≥ 1) at 20 points".into())
}

fn regularity() -> Outcome {
    for n in [2, 3] {
        let (_, f) = generic_2xn(CoefficientRing::Rationals, n);
        ensure(regularity_check(&f).map_err(err)?, format!("generic 2×{n}"))?;
    }
    let (_, ls) = inhomogeneous_linear_forms(CoefficientRing::Rationals, 2, 2);
    ensure(regular_sequence_check(&ls).map_err(err)?, "((L₁):L₂) ≠ (L₁)")?;
    let (ring, _) = generic_2xn(CoefficientRing::Rationals, 2);
    let degenerate = FreeModuleMatrix::from_rows(
        &ring,
        vec![vec![ring.var("b1"), ring.var("b1")], vec![ring.var("bp1"), ring.var("bp1")]],
    )
    .map_err(err)?;
    ensure(!regularity_check(&degenerate).map_err(err)?, "degenerate map passed")?;
    Ok("generic 2×2, 2×3, m = n = 2; degenerate control fails".into())
}

fn morphism() -> Outcome {
    for shape in corpus::all() {
        let m = build_cd_morphism(&shape, 2).map_err(err)?;
        ensure(
            m.holds(),
            format!(
                "{}: squares {:?}, C {}, D {}",
                shape.name(),
                m.squares,
                m.c_image_is_j_prime,
                m.d_image_is_j
            ),
        )?;
    }
    Ok(format!("{} shapes, degrees ≤ 2", corpus::all().len()))
}

fn kernel_properties() -> Outcome {
    let reports = all_properties(1000, 2024);
    for r in &reports {
        ensure(r.passed() && r.cases == 1000, format!("{}: {:?}", r.name, r.failures.first()))?;
    }
    Ok(format!("{} properties × 1000 cases", reports.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("example identity", 60, example_identity),
        ("trace identities", 300, trace_identities),
        ("determinant congruence", 300, determinant_congruence),
        ("stability", 10, stability),
        ("tau-invariance", 1200, tau_invariance),
        ("specialization", 60, specialization),
        ("quotient presentation", 10, quotient_presentation_corpus),
        ("complexes", 300, complexes),
        ("regularity", 300, regularity),
        ("morphism", 600, morphism),
        ("kernel properties", 120, kernel_properties),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > Duration::from_secs(*limit) => Err(format!("{msg}, but over the {limit} s limit")),
            other => other,
        };
        match result {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({:.2} s)", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({:.2} s)", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
