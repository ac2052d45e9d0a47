//! Acceptance suite: fourteen end-to-end properties of the whole stack,
//! each checked exhaustively over the bundled corpus. One test per
//! property, so the harness emits one pass/fail line each.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::OnceLock;

use ringoid::adm::{
    admissibilize, admissibilize_weak, adm_of_hom, degree0_sections, enumerate_splittings,
    identity_cell, isomorphic,
};
use ringoid::butterfly::{from_butterfly, mod2_reduction_butterfly, to_butterfly};
use ringoid::cat::{adjunction_report, bridge_two_notions, graph_hom_report};
use ringoid::cone::{cone, cone_functor, composition_from_truncation};
use ringoid::corr::{compose, enumerate_corr_morphisms, graph_corr, CorrClass, DGCorrespondence};
use ringoid::gen::{generate, Bounds, Corpus};
use ringoid::module::FiniteModule;
use ringoid::quasi::{instances, validate_quasi_ideal, QMorphism};
use ringoid::simplicial::{
    canonical_roundtrip_iso, q_to_simplicial, simplicial_to_q, truncated_polynomial_example,
};
use ringoid::suite::suite_budget;
use ringoid::{pair_index, Budget, Error};

fn fixture() -> &'static (Corpus, Budget) {
    static FIXTURE: OnceLock<(Corpus, Budget)> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let budget = suite_budget();
        let corpus = generate(0, &Bounds::standard(), &budget)
            .expect("the standard corpus generates within budget");
        (corpus, budget)
    })
}

/// Independent reading of the quasi-ideal laws through the two-term graded
/// ring C (+) I[1]: the differential must be a chain map for the additive
/// structure, satisfy the Leibniz rule against degree-0 elements, and
/// satisfy it against degree -1 elements, whose products vanish in degree
/// -2. The derived consistency d(d(x) y) = d(x) d(y) is checked literally
/// as well.
fn leibniz_oracle(module: &FiniteModule, d: &[usize]) -> bool {
    let ring = module.base();
    let additive = module.elements().all(|x| {
        module
            .elements()
            .all(|y| d[module.add(x, y)] == ring.add(d[x], d[y]))
    });
    let degree_zero_leibniz = ring.elements().all(|c| {
        module
            .elements()
            .all(|x| d[module.act(c, x)] == ring.mul(c, d[x]))
    });
    let degree_minus_one_leibniz = module.elements().all(|x| {
        module
            .elements()
            .all(|y| module.act(d[x], y) == module.act(d[y], x))
    });
    let derived_consistency = module.elements().all(|x| {
        module
            .elements()
            .all(|y| d[module.act(d[x], y)] == ring.mul(d[x], d[y]))
    });
    additive && degree_zero_leibniz && degree_minus_one_leibniz && derived_consistency
}

#[test]
fn criterion_01_validator_agrees_with_the_leibniz_oracle() {
    let (corpus, _) = fixture();
    assert!(corpus.candidates.len() >= 200, "need at least 200 candidates");
    let mut valid = 0;
    for (i, cand) in corpus.candidates.iter().enumerate() {
        assert!(cand.module.base().size() <= 8 && cand.module.size() <= 8);
        let verdict = validate_quasi_ideal(&cand.module, &cand.d)
            .expect("bundled candidates are well-shaped")
            .ok();
        assert_eq!(
            verdict,
            leibniz_oracle(&cand.module, &cand.d),
            "candidate {i} separates the validator from the oracle"
        );
        if verdict {
            valid += 1;
        }
    }
    assert!(valid > 0 && valid < corpus.candidates.len(), "both outcomes must occur");

    // The pinned negative witness: C = Z/2, I = Z/2 (+) Z/2, d the first
    // projection. Additivity and linearity hold; only the symmetry law
    // fails, first at the pair ((0,1), (1,0)).
    let pinned = corpus
        .candidates
        .iter()
        .find(|c| c.module.base().size() == 2 && c.module.size() == 4 && c.d == vec![0, 0, 1, 1])
        .expect("the projection candidate on Z/2 (+) Z/2 is bundled");
    let report = validate_quasi_ideal(&pinned.module, &pinned.d).unwrap();
    assert!(!report.ok());
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].law, "quasi-ideal-law");
    assert_eq!(report.violations[0].witness, vec![1, 2]);
    assert!(!leibniz_oracle(&pinned.module, &pinned.d));
    println!(
        "criterion 1: pass ({} candidates, {} valid, oracle agreement exact, pinned witness (1, 2))",
        corpus.candidates.len(),
        valid
    );
}

#[test]
fn criterion_02_truncation_equivalence_roundtrips() {
    let (corpus, _) = fixture();
    for q in &corpus.quasis {
        let t = q_to_simplicial(q);
        assert!(t.is_good(), "truncations of quasi-ideals are always good");
        let back = simplicial_to_q(&t).expect("good truncations convert back");
        assert_eq!(*back, **q, "q -> t -> q must be the identity on the canonical carrier");
    }
    let mut good = 0;
    let mut non_good = 0;
    for t in &corpus.simplicials {
        if t.is_good() {
            good += 1;
            let back = q_to_simplicial(&simplicial_to_q(t).unwrap());
            canonical_roundtrip_iso(t, &back)
                .expect("t -> q -> t must land on an isomorphic truncation");
        } else {
            non_good += 1;
        }
    }
    assert!(good > 0 && non_good > 0, "the corpus carries both kinds");
    println!(
        "criterion 2: pass ({} quasi-ideals identity-roundtrip, {good} good truncations isomorphic, {non_good} non-good excluded)",
        corpus.quasis.len()
    );
}

#[test]
fn criterion_03_composition_exists_exactly_on_good_truncations() {
    let (corpus, _) = fixture();
    for (i, t) in corpus.simplicials.iter().enumerate() {
        assert_eq!(
            composition_from_truncation(t).is_ok(),
            t.is_good(),
            "instance {i} breaks the goodness equivalence"
        );
    }
    let poly = truncated_polynomial_example();
    let err = match composition_from_truncation(&poly) {
        Ok(_) => panic!("the truncated polynomial ring is not good"),
        Err(e) => e,
    };
    match err {
        Error::NotGood(x, y) => assert_eq!((x, y), (2, 2), "the witness is the pair (x, x)"),
        other => panic!("expected a kernel product obstruction, got {other}"),
    }
    println!(
        "criterion 3: pass (composition defined exactly on good instances, {} checked; Z/2[x]/(x^3) fails at (x, x))",
        corpus.simplicials.len()
    );
}

#[test]
fn criterion_04_cone_groupoids_satisfy_the_internal_laws() {
    let (corpus, _) = fixture();
    for q in &corpus.quasis {
        let g = cone(q);
        assert!(g.validate().ok(), "a cone fails the internal groupoid laws");
        assert_eq!(g.component_count(), q.pi0().0.size());
        let kernel = q.ker_d_elements();
        let ni = q.module().size();
        for c in q.ring().elements() {
            let expected: Vec<usize> = kernel.iter().map(|&x| pair_index(c, x, ni)).collect();
            assert_eq!(g.automorphisms(c), expected, "Aut(c) must be the kernel of d");
            for &x in &kernel {
                for &y in &kernel {
                    assert_eq!(
                        g.compose(pair_index(c, x, ni), pair_index(c, y, ni)),
                        Some(pair_index(c, q.module().add(x, y), ni)),
                        "Aut(c) must compose as the kernel adds"
                    );
                }
            }
        }
    }
    let z4 = instances::z4_double();
    let g = cone(&z4);
    assert_eq!(z4.pi0().0.size(), 2);
    assert_eq!(z4.pi1().module.size(), 2);
    assert_eq!(g.object_ring().size(), 4);
    assert_eq!(g.morphism_ring().size(), 16);
    println!(
        "criterion 4: pass ({} cones validated; doubling instance has pi0 2, pi1 2, 4 objects, 16 morphisms)",
        corpus.quasis.len()
    );
}

#[test]
fn criterion_05_quasi_isomorphisms_are_exactly_the_cone_equivalences() {
    let (corpus, _) = fixture();
    assert!(corpus.qmorphisms.len() >= 50, "need at least 50 morphisms");
    let mut equivalences = 0;
    for (i, phi) in corpus.qmorphisms.iter().enumerate() {
        let functor = cone_functor(phi);
        let is_equivalence =
            functor.is_essentially_surjective() && functor.is_fully_faithful();
        assert_eq!(
            phi.is_quasi_iso(),
            is_equivalence,
            "morphism {i} separates quasi-isomorphy from equivalence"
        );
        if is_equivalence {
            equivalences += 1;
        }
    }
    assert!(equivalences > 0 && equivalences < corpus.qmorphisms.len());
    println!(
        "criterion 5: pass ({} morphisms, {} induce equivalences, agreement exact)",
        corpus.qmorphisms.len(),
        equivalences
    );
}

#[test]
fn criterion_06_butterflies_roundtrip_admissible_correspondences() {
    let (corpus, budget) = fixture();
    let admissible: Vec<&DGCorrespondence> = corpus
        .correspondences
        .iter()
        .filter(|c| c.is_admissible())
        .collect();
    assert!(admissible.len() >= 3, "need several admissible instances");
    for c in &admissible {
        let b = to_butterfly(c).expect("admissible correspondences have butterflies");
        assert!(b.validate().ok(), "butterfly conditions (complexes, exactness, compatibility) hold");
        let round = from_butterfly(&b);
        // Mutually inverse: some pair of comparison morphisms composes to
        // the identity in both orders.
        let forward = enumerate_corr_morphisms(c, &round, budget).unwrap();
        let backward = enumerate_corr_morphisms(&round, c, budget).unwrap();
        let mutually_inverse = forward.iter().any(|u| {
            backward.iter().any(|v| {
                u.then(v) == QMorphism::identity(c.apex())
                    && v.then(u) == QMorphism::identity(round.apex())
            })
        });
        assert!(mutually_inverse, "the roundtrip must invert on the nose up to the comparison pair");
        // On the butterfly side the roundtrip is literal.
        assert_eq!(to_butterfly(&round).unwrap(), b);
    }
    println!(
        "criterion 6: pass ({} admissible instances roundtrip through butterflies, conditions verified)",
        admissible.len()
    );
}

#[test]
fn criterion_07_admissibilization_is_left_adjoint() {
    let (corpus, budget) = fixture();
    let small = |c: &DGCorrespondence| c.apex().ring().size() * c.apex().module().size() <= 256;
    let mut pairs = 0;
    for c in corpus.correspondences.iter() {
        if c.classify() < CorrClass::Anamorphism || !small(c) {
            continue;
        }
        let adm = admissibilize(c, budget).unwrap();
        for a in corpus.correspondences.iter() {
            if !a.is_admissible() || !small(a) || a.r1() != c.r1() || a.r2() != c.r2() {
                continue;
            }
            let maps = |m: &QMorphism| (m.ring_map().to_vec(), m.module_map().to_vec());
            let direct: BTreeSet<_> = enumerate_corr_morphisms(c, a, budget)
                .unwrap()
                .iter()
                .map(maps)
                .collect();
            let lifted = enumerate_corr_morphisms(&adm.corr, a, budget).unwrap();
            let composed: BTreeSet<_> =
                lifted.iter().map(|k| maps(&adm.unit.then(k))).collect();
            assert_eq!(composed.len(), lifted.len(), "composition with the unit is injective");
            assert_eq!(composed, direct, "composition with the unit is onto");
            pairs += 1;
        }
    }
    assert!(pairs >= 3, "need several (anamorphism, admissible) pairs, found {pairs}");
    println!("criterion 7: pass ({pairs} hom-set bijections verified by exhaustive enumeration)");
}

#[test]
fn criterion_08_the_weak_shortcut_matches_the_admissibilization() {
    let (corpus, budget) = fixture();
    let mut checked = 0;
    for c in corpus.correspondences.iter().filter(|c| c.is_weakly_admissible()) {
        let weak = admissibilize_weak(c, budget).unwrap();
        let full = admissibilize(c, budget).unwrap();
        assert!(
            isomorphic(&weak.corr, &full.corr, budget).unwrap(),
            "the quotient shortcut must agree with the pushout"
        );
        // Acyclicity of Ker f: the differential restricts to a bijection
        // from the module-level kernel onto the ring-level kernel.
        let kernel_c: BTreeSet<usize> =
            c.left().ring_hom().kernel_elements().into_iter().collect();
        let zero1 = c.r1().module().zero();
        let kernel_i: Vec<usize> = c
            .apex()
            .module()
            .elements()
            .filter(|&x| c.left().apply_module(x) == zero1)
            .collect();
        let image: BTreeSet<usize> = kernel_i.iter().map(|&x| c.apex().d(x)).collect();
        assert_eq!(kernel_i.len(), kernel_c.len(), "kernel complex must be acyclic (injectivity)");
        assert_eq!(image, kernel_c, "kernel complex must be acyclic (surjectivity)");
        checked += 1;
    }
    assert!(checked >= 3, "need several weakly admissible instances, found {checked}");
    println!("criterion 8: pass ({checked} weakly admissible instances, shortcut isomorphic, kernels acyclic)");
}

#[test]
fn criterion_09_the_explicit_hom_cell_is_the_admissibilized_graph() {
    let (corpus, budget) = fixture();
    let mut checked = 0;
    for phi in corpus.qmorphisms.iter().filter(|phi| {
        phi.source().ring().size() * phi.source().module().size() * phi.target().module().size()
            <= 256
    }) {
        let cell = adm_of_hom(phi);
        let adm = admissibilize(&graph_corr(phi), budget).unwrap();
        let isos: Vec<QMorphism> = enumerate_corr_morphisms(&cell.corr, &adm.corr, budget)
            .unwrap()
            .into_iter()
            .filter(|m| m.is_bijective_both_degrees())
            .collect();
        assert_eq!(isos.len(), 1, "the comparison isomorphism must be unique");
        assert_eq!(
            cell.splitting.then(&isos[0]),
            adm.unit,
            "the unique isomorphism must match the two units"
        );
        checked += 1;
    }
    assert!(checked >= 50);
    println!("criterion 9: pass ({checked} morphisms, explicit cell uniquely isomorphic to the admissibilized graph)");
}

#[test]
fn criterion_10_splittings_restrict_bijectively_to_degree_zero() {
    let (corpus, budget) = fixture();
    let mut checked = 0;
    let mut split_counts = Vec::new();
    for c in corpus.correspondences.iter().filter(|c| c.is_admissible()) {
        let full = enumerate_splittings(c, budget).unwrap();
        let sections = degree0_sections(c.left().ring_hom(), budget).unwrap();
        assert_eq!(full.len(), sections.len(), "both splitting sets have the same size");
        let restricted: BTreeSet<Vec<usize>> =
            full.iter().map(|s| s.ring_map().to_vec()).collect();
        assert_eq!(restricted.len(), full.len(), "restriction is injective");
        let section_set: BTreeSet<Vec<usize>> =
            sections.iter().map(|s| s.map().to_vec()).collect();
        assert_eq!(restricted, section_set, "restriction is onto the degree-0 sections");
        split_counts.push(full.len());
        checked += 1;
    }
    assert!(checked >= 3);
    assert!(split_counts.iter().any(|&n| n > 0), "a splittable instance is present");
    // The mod-2 reduction butterfly has no ring-level section Z/2 -> Z/4,
    // hence no splittings at all.
    let unsplittable = from_butterfly(&mod2_reduction_butterfly());
    assert!(unsplittable.is_admissible());
    assert_eq!(enumerate_splittings(&unsplittable, budget).unwrap().len(), 0);
    println!(
        "criterion 10: pass ({checked} admissible instances, restriction bijective, zero-splitting instance included)"
    );
}

#[test]
fn criterion_11_composition_is_coherent_up_to_unique_isomorphism() {
    let (corpus, budget) = fixture();
    assert!(corpus.triples.len() >= 20, "need at least 20 composable triples");

    // Total composition in the localized calculus.
    let anc = |x: &DGCorrespondence, y: &DGCorrespondence| -> DGCorrespondence {
        admissibilize(&compose(x, y).unwrap(), budget).unwrap().corr
    };
    let unique_iso = |x: &DGCorrespondence, y: &DGCorrespondence| -> usize {
        enumerate_corr_morphisms(x, y, budget)
            .unwrap()
            .into_iter()
            .filter(|m| m.is_bijective_both_degrees())
            .count()
    };

    for (i, [a, b, c]) in corpus.triples.iter().enumerate() {
        let left = anc(&anc(a, b), c);
        let right = anc(a, &anc(b, c));
        assert_eq!(unique_iso(&left, &right), 1, "triple {i}: associativity iso must be unique");

        let expected = admissibilize(a, budget).unwrap().corr;
        let left_unit = anc(&identity_cell(a.r1()).corr, a);
        let right_unit = anc(a, &identity_cell(a.r2()).corr);
        assert_eq!(unique_iso(&left_unit, &expected), 1, "triple {i}: left unit law");
        assert_eq!(unique_iso(&right_unit, &expected), 1, "triple {i}: right unit law");
    }

    // Groupoid property: every correspondence morphism between admissible
    // instances over the same feet is invertible.
    let small = |c: &DGCorrespondence| c.apex().ring().size() * c.apex().module().size() <= 256;
    let mut found = 0;
    for x in corpus.correspondences.iter().filter(|c| c.is_admissible() && small(c)) {
        for y in corpus.correspondences.iter().filter(|c| c.is_admissible() && small(c)) {
            if x.r1() != y.r1() || x.r2() != y.r2() {
                continue;
            }
            for m in enumerate_corr_morphisms(x, y, budget).unwrap() {
                assert!(m.is_bijective_both_degrees(), "a 2-cell between admissibles is not invertible");
                found += 1;
            }
        }
    }
    assert!(found > 0, "some 2-cells between admissibles must exist");
    println!(
        "criterion 11: pass ({} triples associative and unital up to unique iso; {found} 2-cells all invertible)",
        corpus.triples.len()
    );
}

#[test]
fn criterion_12_the_two_categorical_criteria_agree() {
    let (corpus, budget) = fixture();
    let mut compared = 0;
    for span in &corpus.cat_spans {
        if !span.left().is_equivalence() {
            continue;
        }
        assert_eq!(
            span.adm_level_by_objects().unwrap(),
            span.adm_level_by_lifting(),
            "the unit-object criterion and the lifting criterion disagree"
        );
        compared += 1;
    }
    assert!(compared >= 100, "need at least 100 spans, compared {compared}");

    assert!(corpus.functor_pairs.len() >= 20);
    for (phi, psi) in &corpus.functor_pairs {
        assert!(phi.target().n_objects() <= 4);
        let report = graph_hom_report(phi, psi, budget).unwrap();
        assert!(report.ok(), "graph hom-set comparison failed: {report}");
    }
    assert!(corpus.adjunction_cases.len() >= 10);
    for (span, psi) in &corpus.adjunction_cases {
        let report = adjunction_report(span, psi, budget).unwrap();
        assert!(report.ok(), "collapse/graph adjunction failed: {report}");
    }
    println!(
        "criterion 12: pass ({compared} spans agree on both criteria; {} graph comparisons and {} adjunction cases verified)",
        corpus.functor_pairs.len(),
        corpus.adjunction_cases.len()
    );
}

#[test]
fn criterion_13_the_algebraic_and_categorical_classifications_agree() {
    let (corpus, _) = fixture();
    for (i, c) in corpus.correspondences.iter().enumerate() {
        let report = bridge_two_notions(c);
        assert!(report.admissibility_agrees(), "instance {i}: admissibility transfers");
        assert!(report.weak_admissibility_agrees(), "instance {i}: weak admissibility transfers");
        assert!(
            report.classes_agree(),
            "instance {i}: {} vs {}",
            report.dg_class,
            report.cat_class
        );
    }
    println!(
        "criterion 13: pass ({} correspondences classify identically through the cone bridge)",
        corpus.correspondences.len()
    );
}

#[test]
fn criterion_14_the_law_suite_report_is_deterministic() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ringoid"))
            .args(["laws", "--suite", "all", "--seed", "0"])
            .output()
            .expect("the binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0), "first run must pass");
    assert_eq!(second.status.code(), Some(0), "second run must pass");
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");
    let report = String::from_utf8(first.stdout).unwrap();
    assert!(report.ends_with("result pass\n"));
    println!("criterion 14: pass (two full law runs byte-identical, exit 0)");
}
