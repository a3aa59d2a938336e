//! Static list of suites with the lemma and equation labels they exercise.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub anchors: &'static [&'static str],
}

const CATALOG: &[SuiteInfo] = &[
    SuiteInfo {
        name: "trace-identities",
        description: "tr(∏(ρ̂−ψ)) congruence for all words up to the configured length",
        anchors: &["l:tr-char"],
    },
    SuiteInfo {
        name: "determinant-congruence",
        description: "det(Σ c_i(ρ̂_i − ψ_i)) lies in the characteristic-polynomial defect ideal",
        anchors: &["l:dets"],
    },
    SuiteInfo {
        name: "example-r2",
        description: "closed form of det(E′) − det(E) for two product rows, modulo their coefficients",
        anchors: &["e:example", "e:b2"],
    },
    SuiteInfo {
        name: "stability",
        description: "relation quadruples obey the adjoint law; J and J′ are Borel-stable; corrupted control fails",
        anchors: &["l:stable", "e:ABCD", "e:b1", "e:b2"],
    },
    SuiteInfo {
        name: "tau-invariance",
        description: "τ_x(det E′) − det E′ lies in J′; dropping the linear generator breaks it",
        anchors: &["l:ebar", "l:e0", "l:ei"],
    },
    SuiteInfo {
        name: "specialization",
        description: "finite-field instances: det(E) factorization, det(E′) = 0, cocycle identity, π(J) = 0",
        anchors: &["l:detzero", "s:cocycle", "e:zidef", "e:rholocal"],
    },
    SuiteInfo {
        name: "quotient-presentation",
        description: "J collapses to the listed generators under a ↦ −ν and b, c, d ↦ 0",
        anchors: &["s:subring", "e:present-R"],
    },
    SuiteInfo {
        name: "koszul-br",
        description: "d² = 0 for Koszul and Buchsbaum–Rim complexes, exactness at degree 1, sampled homology",
        anchors: &["e:twistdef", "p:br-exact", "l:tensor"],
    },
    SuiteInfo {
        name: "regularity",
        description: "ideal-quotient regularity criteria for generic maps and inhomogeneous linear forms",
        anchors: &["l:reg", "c:genericb", "p:regular-seq-inhomog"],
    },
    SuiteInfo {
        name: "cd-morphism",
        description: "chain map between the complexes for J′ and J: commuting squares and degree-1 images",
        anchors: &["t:comm", "e:cdef", "e:ddef", "ss:extend-fv"],
    },
    SuiteInfo {
        name: "kernel-properties",
        description: "randomized ring axioms, evaluation, S-pair reduction and Cayley–Hamilton",
        anchors: &["kernel"],
    },
    SuiteInfo {
        name: "all",
        description: "every suite above, in catalog order",
        anchors: &["t:comm", "l:ebar", "l:detzero"],
    },
];

pub fn list_suites() -> &'static [SuiteInfo] {
    CATALOG
}

pub fn find_suite(name: &str) -> Option<&'static SuiteInfo> {
    CATALOG.iter().find(|s| s.name == name)
}
