//! Turning a suite name into independent checks and running them.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use ribet_core::brcomplex::regular::{block_with_linear_relation, generic_2xn, inhomogeneous_linear_forms};
use ribet_core::brcomplex::{
    br_complexes, build_cd_morphism, check_d2, homology_at_random_points, koszul, regular_sequence_check,
    regularity_check, symbolic_h1, ComplexError,
};
use ribet_core::exactpoly::{CoefficientRing, MonomialOrder, PolyError, Polynomial};
use ribet_core::genmat::{det_congruence_check, trace_congruence_check, Word};
use ribet_core::groebner::{default_step_budget, set_default_step_budget, FreeModuleMatrix, GroebnerError};
use ribet_core::properties::{all_properties, small_ring};
use ribet_core::ribet::formal::{
    check_e_tau_invariance, check_e_tau_invariance_with, check_example_r2, check_ideals_stable, check_quads_adjoint,
    quotient_presentation, relation_quads, QuadSource,
};
use ribet_core::ribet::shape::corpus;
use ribet_core::ribet::special::check_specialized;
use ribet_core::ribet::{generate_specialization_with, FormalRing, RibetError, RibetShape};

use crate::catalog::{find_suite, list_suites};
use crate::config::SuiteConfig;
use crate::report::{CheckRecord, Report, RunParameters, Status};
use crate::HarnessError;

/// Result of one check before timing is attached.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
}

impl Outcome {
    fn from_bool(ok: bool, witness_on_fail: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome { status: Status::Pass, witness: None }
        } else {
            Outcome { status: Status::Fail, witness: Some(witness_on_fail()) }
        }
    }

    /// A control passes when the property it targets is correctly refuted.
    fn control(refuted: bool, what: &str) -> Self {
        Outcome::from_bool(refuted, || format!("{what} unexpectedly held"))
    }
}

type Job = Arc<dyn Fn() -> Outcome + Send + Sync>;

#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    job: Job,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("anchor", &self.anchor).finish()
    }
}

impl Check {
    fn new(id: impl Into<String>, anchor: &str, job: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.to_string(),
            job: Arc::new(job),
        }
    }

    pub fn run(&self) -> CheckRecord {
        let start = Instant::now();
        let out = (self.job)();
        CheckRecord {
            id: self.id.clone(),
            anchor: self.anchor.clone(),
            status: out.status,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            witness: out.witness,
        }
    }
}

trait Timeouts: std::fmt::Display {
    fn is_timeout(&self) -> bool;
}

impl Timeouts for GroebnerError {
    fn is_timeout(&self) -> bool {
        matches!(self, GroebnerError::Timeout(_))
    }
}

impl Timeouts for PolyError {
    fn is_timeout(&self) -> bool {
        false
    }
}

impl Timeouts for RibetError {
    fn is_timeout(&self) -> bool {
        matches!(self, RibetError::Groebner(g) if g.is_timeout())
    }
}

impl Timeouts for ComplexError {
    fn is_timeout(&self) -> bool {
        match self {
            ComplexError::Timeout(_) => true,
            ComplexError::Groebner(g) => g.is_timeout(),
            ComplexError::Ribet(r) => r.is_timeout(),
            _ => false,
        }
    }
}

fn outcome<E: Timeouts>(r: Result<Outcome, E>) -> Outcome {
    match r {
        Ok(o) => o,
        Err(e) => Outcome {
            status: if e.is_timeout() { Status::Timeout } else { Status::Fail },
            witness: Some(e.to_string()),
        },
    }
}

fn expect_true<E: Timeouts>(r: Result<bool, E>, what: &'static str) -> Outcome {
    outcome(r.map(|ok| Outcome::from_bool(ok, || format!("{what} returned false"))))
}

fn trace_identities(cfg: &SuiteConfig) -> Vec<Check> {
    let opts = cfg.options("trace-identities");
    let maxlen = opts.max_word_len.unwrap_or(3);
    let mut out = Vec::new();
    for r in opts.ranks.unwrap_or_else(|| vec![2, 3]) {
        for w in Word::all_up_to(r, maxlen) {
            out.push(Check::new(format!("trace/r{r}/{w}"), "l:tr-char", move || {
                expect_true(trace_congruence_check(&w, r), "trace congruence")
            }));
        }
    }
    out
}

fn determinant_congruence(cfg: &SuiteConfig) -> Vec<Check> {
    let cap = cfg.options("determinant-congruence").max_word_len.unwrap_or(2);
    let terms: [&[usize]; 6] = [&[1], &[2], &[1, 1], &[1, 2], &[2, 1], &[2, 3]];
    terms
        .iter()
        .map(|t| {
            let t = t.to_vec();
            Check::new(format!("det/{t:?}/cap{cap}"), "l:dets", move || {
                expect_true(det_congruence_check(&t, 3, cap), "determinant congruence")
            })
        })
        .collect()
}

fn example_r2() -> Vec<Check> {
    vec![Check::new("example-r2", "e:example", || {
        expect_true(check_example_r2(), "example identity")
    })]
}

fn stability(shapes: &[RibetShape]) -> Vec<Check> {
    let mut out = Vec::new();
    for shape in shapes {
        let name = shape.name().to_string();
        let s = shape.clone();
        out.push(Check::new(format!("stability/{name}/quadruples"), "l:stable", move || {
            outcome(check_quads_adjoint(&FormalRing::new(&s)).map(|v| {
                let bad: Vec<String> = v.into_iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
                Outcome::from_bool(bad.is_empty(), || format!("not adjoint: {}", bad.join(", ")))
            }))
        }));
        let s = shape.clone();
        out.push(Check::new(format!("stability/{name}/ideals"), "l:stable", move || {
            expect_true(check_ideals_stable(&FormalRing::new(&s)), "ideal stability")
        }));
    }
    out.push(Check::new("stability/control/corrupted-quadruple", "e:ABCD", || {
        let fr = FormalRing::new(&corpus::one_inertia_row());
        let tau = ribet_core::borel::TauAction::new(&fr.ring);
        let Some(q) = relation_quads(&fr).into_iter().find(|q| matches!(q.source, QuadSource::Local { .. })) else {
            return Outcome::control(false, "no local quadruple to corrupt");
        };
        let m = &q.entries;
        // swapping B and C breaks the torus weights
        let r = ribet_core::borel::adjoint_quadruple_check(&tau, [&m.a, &m.c, &m.b, &m.d]);
        outcome(r.map(|ok| Outcome::control(!ok, "corrupted quadruple")))
    }));
    out
}

fn tau_invariance(shapes: &[RibetShape]) -> Vec<Check> {
    let mut out = Vec::new();
    for shape in shapes {
        let s = shape.clone();
        out.push(Check::new(format!("tau-invariance/{}", shape.name()), "l:ebar", move || {
            expect_true(check_e_tau_invariance(&FormalRing::new(&s)), "τ-invariance")
        }));
    }
    out.push(Check::new("tau-invariance/control/without-linear-generator", "l:e0", || {
        let fr = FormalRing::new(&corpus::one_inertia_row());
        let r = check_e_tau_invariance_with(&fr, |_, q| !matches!(q.source, QuadSource::Linear { .. }));
        outcome(r.map(|ok| Outcome::control(!ok, "membership without the linear generator")))
    }));
    out
}

fn specialization(cfg: &SuiteConfig) -> Result<Vec<Check>, HarnessError> {
    let shape = cfg.specialization_shape()?;
    let (p, retries) = (cfg.prime, cfg.budget.retries);
    let mut out = Vec::new();
    for &seed in &cfg.seeds {
        for field in ["det_e_factorization", "det_eprime_zero", "cocycle", "j_vanishes"] {
            let s = shape.clone();
            let anchor = match field {
                "det_e_factorization" => "e:zidef",
                "det_eprime_zero" => "l:detzero",
                "cocycle" => "s:cocycle",
                _ => "e:rholocal",
            };
            out.push(Check::new(format!("specialization/seed{seed}/{field}"), anchor, move || {
                let r = generate_specialization_with(&s, seed, p, retries).and_then(|inst| check_specialized(&inst));
                outcome(r.map(|c| {
                    let ok = match field {
                        "det_e_factorization" => c.det_e_factorization,
                        "det_eprime_zero" => c.det_eprime_zero,
                        "cocycle" => c.cocycle,
                        _ => c.j_vanishes,
                    };
                    Outcome::from_bool(ok, || format!("{field} false for seed {seed} at p={p}"))
                }))
            }));
        }
    }
    Ok(out)
}

fn quotient(shapes: &[RibetShape]) -> Vec<Check> {
    shapes
        .iter()
        .map(|shape| {
            let s = shape.clone();
            Check::new(format!("quotient-presentation/{}", shape.name()), "s:subring", move || {
                let q = quotient_presentation(&FormalRing::new(&s));
                let show = |v: &[Polynomial]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
                Outcome::from_bool(q.holds, || format!("got [{}], want [{}]", show(&q.computed), show(&q.expected)))
            })
        })
        .collect()
}

fn koszul_br(cfg: &SuiteConfig) -> Vec<Check> {
    let points = cfg.options("koszul-br").points.unwrap_or(20);
    let (p, seed) = (cfg.prime, cfg.seeds[0]);
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(Check::new(format!("koszul-br/koszul{n}/d2"), "e:twistdef", move || {
            let r = small_ring(CoefficientRing::Rationals, n, MonomialOrder::DegRevLex);
            let xs: Vec<Polynomial> = (1..=n).map(|i| r.var(&format!("x{i}"))).collect();
            outcome(koszul(&xs).map(|k| Outcome::from_bool(check_d2(&k), || "d² ≠ 0".into())))
        }));
    }
    for n in 2..=4 {
        out.push(Check::new(format!("koszul-br/br2x{n}/d2"), "p:br-exact", move || {
            let (_, f) = generic_2xn(CoefficientRing::Rationals, n);
            outcome(br_complexes(&f).map(|b| {
                let (rf, rd) = (check_d2(&b.rf), check_d2(&b.rdetf));
                Outcome::from_bool(rf && rd, || format!("R(f): {rf}, R(det f): {rd}"))
            }))
        }));
    }
    out.push(Check::new("koszul-br/koszul2/exact-at-1", "e:twistdef", || {
        let r = small_ring(CoefficientRing::Rationals, 2, MonomialOrder::DegRevLex);
        let k = koszul(&[r.var("x1"), r.var("x2")]);
        outcome(k.and_then(|k| symbolic_h1(&k)).map(|h| h1_outcome(h.is_exact_at_1, &h.h1_generators)))
    }));
    out.push(Check::new("koszul-br/rf2x3/exact-at-1", "p:br-exact", || {
        let (_, f) = generic_2xn(CoefficientRing::Rationals, 3);
        let h = br_complexes(&f).and_then(|b| symbolic_h1(&b.rf));
        outcome(h.map(|h| h1_outcome(h.is_exact_at_1, &h.h1_generators)))
    }));
    out.push(Check::new(format!("koszul-br/block-with-linear-relation/{points}-points"), "p:br-exact", move || {
        let c = block_with_linear_relation(CoefficientRing::Rationals);
        outcome(c.and_then(|c| homology_at_random_points(&c, p, points, seed)).map(|hs| {
            let bad = hs.iter().find(|h| h[1..].iter().any(|&x| x != 0));
            Outcome::from_bool(bad.is_none(), || format!("homology {:?}", bad.unwrap()))
        }))
    }));
    out
}

fn h1_outcome(exact: bool, outside: &[Vec<Polynomial>]) -> Outcome {
    Outcome::from_bool(exact, || {
        let v: Vec<String> = outside[0].iter().map(|p| p.to_string()).collect();
        format!("syzygy outside im d₂: ({})", v.join(", "))
    })
}

fn regularity() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [2, 3] {
        out.push(Check::new(format!("regularity/generic2x{n}"), "c:genericb", move || {
            let (_, f) = generic_2xn(CoefficientRing::Rationals, n);
            expect_true(regularity_check(&f), "regularity criterion")
        }));
    }
    out.push(Check::new("regularity/inhomogeneous-m2-n2", "p:regular-seq-inhomog", || {
        let (_, ls) = inhomogeneous_linear_forms(CoefficientRing::Rationals, 2, 2);
        expect_true(regular_sequence_check(&ls), "regular sequence")
    }));
    out.push(Check::new("regularity/control/repeated-column", "l:reg", || {
        let (ring, _) = generic_2xn(CoefficientRing::Rationals, 2);
        let col = vec![vec![ring.var("b1"), ring.var("b1")], vec![ring.var("bp1"), ring.var("bp1")]];
        let r = FreeModuleMatrix::from_rows(&ring, col)
            .map_err(ComplexError::from)
            .and_then(|f| regularity_check(&f));
        outcome(r.map(|ok| Outcome::control(!ok, "regularity with r₁₂ = 0")))
    }));
    out
}

fn cd_morphism(cfg: &SuiteConfig, shapes: &[RibetShape]) -> Vec<Check> {
    let cap = cfg.budget.degree_cap;
    shapes
        .iter()
        .map(|shape| {
            let s = shape.clone();
            Check::new(format!("cd-morphism/{}/cap{cap}", shape.name()), "t:comm", move || {
                outcome(build_cd_morphism(&s, cap).map(|m| {
                    Outcome::from_bool(m.holds(), || {
                        let bad: Vec<String> = m.quads_adjoint.iter().filter(|q| !q.1).map(|q| q.0.clone()).collect();
                        format!(
                            "squares {:?}, im C¹ = J′: {}, im D¹ = J: {}, non-adjoint: [{}]",
                            m.squares,
                            m.c_image_is_j_prime,
                            m.d_image_is_j,
                            bad.join(", ")
                        )
                    })
                }))
            })
        })
        .collect()
}

fn kernel_properties(cfg: &SuiteConfig) -> Vec<Check> {
    let cases = cfg.options("kernel-properties").cases.unwrap_or(1000);
    let seed = cfg.seeds[0];
    let names = ["ring-axioms", "evaluation", "spair-reduction", "cayley-hamilton"];
    names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            Check::new(format!("kernel-properties/{name}/{cases}"), "kernel", move || {
                let rep = all_properties(cases, seed).swap_remove(k);
                Outcome::from_bool(rep.passed(), || {
                    format!("{} of {} cases failed; first: {}", rep.failures.len(), rep.cases, rep.failures[0])
                })
            })
        })
        .collect()
}

/// Checks of `suite`, in a fixed order.
pub fn plan(suite: &str, cfg: &SuiteConfig) -> Result<Vec<Check>, HarnessError> {
    if find_suite(suite).is_none() {
        return Err(HarnessError::UnknownSuite(suite.to_string()));
    }
    let shapes = cfg.symbolic_shapes()?;
    Ok(match suite {
        "trace-identities" => trace_identities(cfg),
        "determinant-congruence" => determinant_congruence(cfg),
        "example-r2" => example_r2(),
        "stability" => stability(&shapes),
        "tau-invariance" => tau_invariance(&shapes),
        "specialization" => specialization(cfg)?,
        "quotient-presentation" => quotient(&shapes),
        "koszul-br" => koszul_br(cfg),
        "regularity" => regularity(),
        "cd-morphism" => cd_morphism(cfg, &shapes),
        "kernel-properties" => kernel_properties(cfg),
        _ => {
            let mut all = Vec::new();
            for s in list_suites().iter().filter(|s| s.name != "all") {
                all.extend(plan(s.name, cfg)?);
            }
            all
        }
    })
}

/// Runs `suite` on at most `jobs` threads (all cores when `None`).
pub fn run_suite(suite: &str, cfg: &SuiteConfig, jobs: Option<usize>) -> Result<Report, HarnessError> {
    cfg.validate()?;
    if let Some(steps) = cfg.budget.groebner_steps {
        set_default_step_budget(steps);
    }
    let checks = plan(suite, cfg)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs.or(cfg.jobs) {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| HarnessError::Config(e.to_string()))?;
    let records: Vec<CheckRecord> = pool.install(|| checks.par_iter().map(Check::run).collect());
    let params = RunParameters {
        prime: cfg.prime,
        seeds: cfg.seeds.clone(),
        groebner_steps: default_step_budget(),
        degree_cap: cfg.budget.degree_cap,
        retries: cfg.budget.retries,
    };
    Ok(Report::new(suite, params, records))
}
