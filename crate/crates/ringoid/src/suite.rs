//! Law suites over a generated corpus, shared by the `laws` command and the
//! integration tests.
//!
//! Each suite runs a fixed list of checks in a fixed order and reports one
//! line per check, so two runs over the same corpus and budget render
//! byte-identical reports. Checks recompute the laws they verify from
//! first principles wherever possible instead of trusting the library
//! functions under test.

use std::sync::Arc;

use crate::adm::{
    admissibilize, admissibilize_weak, adm_of_hom, degree0_sections, enumerate_splittings,
    identity_cell, isomorphic,
};
use crate::budget::Budget;
use crate::butterfly::{from_butterfly, to_butterfly};
use crate::cat::{
    adjunction_report, bridge_two_notions, compose_cat, graph_hom_report, is_corr_morphism,
    saturate, CatCorrClass,
};
use crate::cone::{cone, cone_functor, composition_from_truncation};
use crate::corr::{compose, graph_corr, CorrClass, DGCorrespondence};
use crate::error::{Error, Result};
use crate::gen::Corpus;
use crate::module::FiniteModule;
use crate::pair_index;
use crate::quasi::validate_quasi_ideal;
use crate::ring::{Elem, FiniteRing};
use crate::simplicial::{canonical_roundtrip_iso, q_to_simplicial, simplicial_to_q};

/// Names one of the law suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    Ring,
    Quasi,
    Simplicial,
    Cone,
    Corr,
    Cat,
    Bridge,
    All,
}

impl SuiteKind {
    /// The individual suites, in reporting order.
    pub const SINGLES: [SuiteKind; 7] = [
        SuiteKind::Ring,
        SuiteKind::Quasi,
        SuiteKind::Simplicial,
        SuiteKind::Cone,
        SuiteKind::Corr,
        SuiteKind::Cat,
        SuiteKind::Bridge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Ring => "ring",
            SuiteKind::Quasi => "quasi",
            SuiteKind::Simplicial => "simplicial",
            SuiteKind::Cone => "cone",
            SuiteKind::Corr => "corr",
            SuiteKind::Cat => "cat",
            SuiteKind::Bridge => "bridge",
            SuiteKind::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<SuiteKind> {
        match s {
            "ring" => Ok(SuiteKind::Ring),
            "quasi" => Ok(SuiteKind::Quasi),
            "simplicial" => Ok(SuiteKind::Simplicial),
            "cone" => Ok(SuiteKind::Cone),
            "corr" => Ok(SuiteKind::Corr),
            "cat" => Ok(SuiteKind::Cat),
            "bridge" => Ok(SuiteKind::Bridge),
            "all" => Ok(SuiteKind::All),
            other => Err(Error::malformed(
                "suite",
                format!("unknown suite {other:?}; expected one of ring, quasi, simplicial, cone, corr, cat, bridge, all"),
            )),
        }
    }
}

/// One executed check: how many instances it covered and which failed.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: &'static str,
    pub instances: usize,
    /// Rendered witnesses of failing instances, in discovery order.
    pub failures: Vec<String>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The outcome of one suite: its check lines in execution order.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }
}

/// Whether every check in every report passed.
pub fn all_ok(reports: &[SuiteReport]) -> bool {
    reports.iter().all(SuiteReport::ok)
}

/// Renders reports as stable, diff-friendly lines.
pub fn render_suites(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&format!("suite {}\n", report.suite));
        for line in &report.lines {
            if line.passed() {
                out.push_str(&format!(
                    "check {} pass instances={}\n",
                    line.name, line.instances
                ));
            } else {
                out.push_str(&format!(
                    "check {} fail instances={} failures={} first={}\n",
                    line.name,
                    line.instances,
                    line.failures.len(),
                    line.failures[0]
                ));
            }
        }
        out.push_str(&format!(
            "suite {} result {}\n",
            report.suite,
            if report.ok() { "pass" } else { "fail" }
        ));
    }
    out
}

/// Default budget for running suites. Admissibilizing composites needs
/// scratch carriers well beyond the instance sizes, so this is wider than
/// the general default.
pub fn suite_budget() -> Budget {
    Budget { max_carrier: 4096, max_search: 10_000_000 }
}

/// Runs the requested suite, or all of them in order.
pub fn run_suite(kind: SuiteKind, corpus: &Corpus, budget: &Budget) -> Result<Vec<SuiteReport>> {
    let singles: Vec<SuiteKind> = match kind {
        SuiteKind::All => SuiteKind::SINGLES.to_vec(),
        single => vec![single],
    };
    let mut reports = Vec::new();
    for single in singles {
        let lines = match single {
            SuiteKind::Ring => ring_suite(corpus),
            SuiteKind::Quasi => quasi_suite(corpus)?,
            SuiteKind::Simplicial => simplicial_suite(corpus)?,
            SuiteKind::Cone => cone_suite(corpus),
            SuiteKind::Corr => corr_suite(corpus, budget)?,
            SuiteKind::Cat => cat_suite(corpus, budget)?,
            SuiteKind::Bridge => bridge_suite(corpus),
            SuiteKind::All => unreachable!("expanded above"),
        };
        reports.push(SuiteReport { suite: single.name(), lines });
    }
    Ok(reports)
}

/// Direct check that a differential satisfies the graded Leibniz reading of
/// the quasi-ideal laws: realizing `(C, I, d)` as a two-term graded ring
/// with `I` in degree -1, the differential must be additive, must commute
/// with the degree-0 action, and must satisfy the Leibniz identity on pairs
/// of degree -1 elements, whose own product vanishes for degree reasons.
pub fn graded_leibniz_holds(module: &FiniteModule, d: &[Elem]) -> bool {
    let ring = module.base();
    for x in module.elements() {
        for y in module.elements() {
            if d[module.add(x, y)] != ring.add(d[x], d[y]) {
                return false;
            }
        }
    }
    for c in ring.elements() {
        for x in module.elements() {
            if d[module.act(c, x)] != ring.mul(c, d[x]) {
                return false;
            }
        }
    }
    // d(x . y) = d(x) . y + x . d(y) with x . y = 0 in degree -2, where the
    // mixed products are the module action through d.
    for x in module.elements() {
        for y in module.elements() {
            if module.add(module.act(d[x], y), module.neg(module.act(d[y], x)))
                != module.zero()
            {
                return false;
            }
        }
    }
    true
}

fn check<T>(
    lines: &mut Vec<CheckLine>,
    name: &'static str,
    items: impl IntoIterator<Item = T>,
    mut law: impl FnMut(usize, T) -> Result<bool>,
) -> Result<()> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for (i, item) in items.into_iter().enumerate() {
        instances += 1;
        if !law(i, item)? {
            failures.push(format!("instance {i}"));
        }
    }
    lines.push(CheckLine { name, instances, failures });
    Ok(())
}

fn check_plain<T>(
    lines: &mut Vec<CheckLine>,
    name: &'static str,
    items: impl IntoIterator<Item = T>,
    mut law: impl FnMut(usize, T) -> bool,
) {
    let mut instances = 0;
    let mut failures = Vec::new();
    for (i, item) in items.into_iter().enumerate() {
        instances += 1;
        if !law(i, item) {
            failures.push(format!("instance {i}"));
        }
    }
    lines.push(CheckLine { name, instances, failures });
}

fn ring_suite(corpus: &Corpus) -> Vec<CheckLine> {
    let mut lines = Vec::new();

    // Deduplicated rings appearing anywhere in the corpus.
    let mut rings: Vec<Arc<FiniteRing>> = Vec::new();
    let mut push = |r: &Arc<FiniteRing>| {
        if !rings.iter().any(|s| Arc::ptr_eq(s, r)) {
            rings.push(r.clone());
        }
    };
    for c in &corpus.candidates {
        push(c.module.base());
    }
    for q in &corpus.quasis {
        push(q.ring());
    }
    for t in &corpus.simplicials {
        push(t.a0());
        push(t.a1());
    }

    check_plain(&mut lines, "commutative-ring-laws", rings.iter(), |_, r| {
        let n = r.size();
        let assoc_comm = (0..n).all(|a| {
            (0..n).all(|b| {
                r.add(a, b) == r.add(b, a)
                    && r.mul(a, b) == r.mul(b, a)
                    && (0..n).all(|c| {
                        r.add(r.add(a, b), c) == r.add(a, r.add(b, c))
                            && r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
                            && r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
                    })
            })
        });
        let unital = (0..n).all(|a| {
            r.add(a, r.zero()) == a
                && r.mul(a, r.one()) == a
                && r.add(a, r.neg(a)) == r.zero()
        });
        assoc_comm && unital
    });

    check_plain(
        &mut lines,
        "ring-hom-laws",
        corpus.qmorphisms.iter(),
        |_, m| {
            let h = m.ring_hom();
            let a = h.domain();
            let n = a.size();
            let b = h.codomain();
            h.apply(a.one()) == b.one()
                && (0..n).all(|x| {
                    (0..n).all(|y| {
                        h.apply(a.add(x, y)) == b.add(h.apply(x), h.apply(y))
                            && h.apply(a.mul(x, y)) == b.mul(h.apply(x), h.apply(y))
                    })
                })
        },
    );

    lines
}

fn quasi_suite(corpus: &Corpus) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();

    // The packaged validator and the graded Leibniz reading accept exactly
    // the same candidates.
    check(
        &mut lines,
        "leibniz-equivalence",
        corpus.candidates.iter(),
        |_, cand| {
            let validated = validate_quasi_ideal(&cand.module, &cand.d)?.ok();
            Ok(validated == graded_leibniz_holds(&cand.module, &cand.d))
        },
    )?;

    check(&mut lines, "validation", corpus.quasis.iter(), |_, q| {
        Ok(validate_quasi_ideal(q.module(), q.d_map())?.ok())
    })?;

    check_plain(
        &mut lines,
        "derived-product-laws",
        corpus.quasis.iter(),
        |_, q| q.derived_product_laws().ok(),
    );

    // Index counting: the image of d cuts the object ring into pi0 classes
    // and the kernel of d is pi1.
    check_plain(&mut lines, "homotopy-counting", corpus.quasis.iter(), |_, q| {
        let mut image: Vec<Elem> = q.d_map().to_vec();
        image.sort_unstable();
        image.dedup();
        let (pi0, _) = q.pi0();
        let coset_count_ok = pi0.size() * image.len() == q.ring().size();
        let pi1 = q.pi1();
        let kernel_ok = pi1.module.size() == q.ker_d_elements().len()
            && pi1.module.size() * image.len() == q.module().size();
        coset_count_ok && kernel_ok
    });

    Ok(lines)
}

fn simplicial_suite(corpus: &Corpus) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();

    check_plain(&mut lines, "good-images", corpus.quasis.iter(), |_, q| {
        q_to_simplicial(q).is_good()
    });

    check(&mut lines, "quasi-roundtrip", corpus.quasis.iter(), |_, q| {
        let rebuilt = simplicial_to_q(&q_to_simplicial(q))?;
        Ok(*rebuilt == **q)
    })?;

    check(
        &mut lines,
        "truncation-roundtrip",
        corpus.simplicials.iter().filter(|t| t.is_good()),
        |_, t| {
            let rebuilt = q_to_simplicial(&simplicial_to_q(t)?);
            Ok(canonical_roundtrip_iso(t, &rebuilt).is_ok())
        },
    )?;

    check_plain(
        &mut lines,
        "composition-iff-good",
        corpus.simplicials.iter(),
        |_, t| composition_from_truncation(t).is_ok() == t.is_good(),
    );

    Ok(lines)
}

fn cone_suite(corpus: &Corpus) -> Vec<CheckLine> {
    let mut lines = Vec::new();

    check_plain(&mut lines, "groupoid-laws", corpus.quasis.iter(), |_, q| {
        cone(q).validate().ok()
    });

    check_plain(&mut lines, "component-count", corpus.quasis.iter(), |_, q| {
        cone(q).component_count() == q.pi0().0.size()
    });

    // Every automorphism group of the cone is the kernel of d, with
    // composition given by addition in the module.
    check_plain(
        &mut lines,
        "automorphism-groups",
        corpus.quasis.iter(),
        |_, q| {
            let g = cone(q);
            let ni = q.module().size();
            let kernel = q.ker_d_elements();
            q.ring().elements().all(|c| {
                let expected: Vec<Elem> =
                    kernel.iter().map(|&x| pair_index(c, x, ni)).collect();
                g.automorphisms(c) == expected
                    && kernel.iter().all(|&x| {
                        kernel.iter().all(|&y| {
                            g.compose(pair_index(c, x, ni), pair_index(c, y, ni))
                                == Some(pair_index(c, q.module().add(x, y), ni))
                        })
                    })
            })
        },
    );

    check_plain(
        &mut lines,
        "quasi-iso-iff-equivalence",
        corpus.qmorphisms.iter(),
        |_, phi| phi.is_quasi_iso() == cone_functor(phi).is_equivalence(),
    );

    lines
}

fn corr_suite(corpus: &Corpus, budget: &Budget) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();

    // The class label recomputed from scratch: left leg quasi-isomorphism,
    // then the pair map into the product of the feet modules decides the
    // two admissibility levels, then surjectivity of the left leg.
    check_plain(
        &mut lines,
        "classification",
        corpus.correspondences.iter(),
        |_, c| {
            let total = c.r1().module().size() * c.r2().module().size();
            let mut image = c.pair_map();
            image.sort_unstable();
            image.dedup();
            let surjective = image.len() == total;
            let bijective = surjective && c.apex().module().size() == total;
            let expected = if !c.left().is_quasi_iso() {
                CorrClass::Plain
            } else if bijective {
                CorrClass::Admissible
            } else if surjective {
                CorrClass::WeaklyAdmissible
            } else if c.left().is_surjective_both_degrees() {
                CorrClass::Anamorphism
            } else {
                CorrClass::EquivalenceLeg
            };
            c.classify() == expected
        },
    );

    check(
        &mut lines,
        "butterfly-roundtrip",
        corpus.correspondences.iter().filter(|c| c.is_admissible()),
        |_, c| {
            let b = to_butterfly(c)?;
            Ok(b.validate().ok() && isomorphic(&from_butterfly(&b), c, budget)?)
        },
    )?;

    // Admissibilization produces an admissible correspondence and its unit
    // commutes with both legs.
    check(
        &mut lines,
        "admissibilization",
        corpus
            .correspondences
            .iter()
            .filter(|c| c.classify() >= CorrClass::EquivalenceLeg),
        |_, c| {
            let adm = admissibilize(c, budget)?;
            let legs_commute = c.apex().ring().elements().all(|r| {
                adm.corr.left().apply_ring(adm.unit.apply_ring(r))
                    == c.left().apply_ring(r)
                    && adm.corr.right().apply_ring(adm.unit.apply_ring(r))
                        == c.right().apply_ring(r)
            }) && c.apex().module().elements().all(|x| {
                adm.corr.left().apply_module(adm.unit.apply_module(x))
                    == c.left().apply_module(x)
                    && adm.corr.right().apply_module(adm.unit.apply_module(x))
                        == c.right().apply_module(x)
            });
            Ok(adm.corr.is_admissible() && legs_commute)
        },
    )?;

    check(
        &mut lines,
        "weak-shortcut",
        corpus
            .correspondences
            .iter()
            .filter(|c| c.is_weakly_admissible()),
        |_, c| {
            let weak = admissibilize_weak(c, budget)?;
            let full = admissibilize(c, budget)?;
            isomorphic(&weak.corr, &full.corr, budget)
        },
    )?;

    check(
        &mut lines,
        "hom-cell-agreement",
        corpus.qmorphisms.iter().filter(|phi| {
            phi.source().ring().size()
                * phi.source().module().size()
                * phi.target().module().size()
                <= 256
        }),
        |_, phi| {
            let cell = adm_of_hom(phi);
            let adm = admissibilize(&graph_corr(phi), budget)?;
            isomorphic(&cell.corr, &adm.corr, budget)
        },
    )?;

    // Splittings of the left leg of an admissible correspondence restrict
    // bijectively to ring-level sections.
    check(
        &mut lines,
        "splitting-restriction",
        corpus.correspondences.iter().filter(|c| c.is_admissible()),
        |_, c| {
            let full = enumerate_splittings(c, budget)?;
            let sections = degree0_sections(c.left().ring_hom(), budget)?;
            let mut restricted: Vec<Vec<Elem>> =
                full.iter().map(|s| s.ring_map().to_vec()).collect();
            restricted.sort_unstable();
            restricted.dedup();
            let mut section_maps: Vec<Vec<Elem>> =
                sections.iter().map(|s| s.map().to_vec()).collect();
            section_maps.sort_unstable();
            Ok(restricted.len() == full.len() && restricted == section_maps)
        },
    )?;

    check(
        &mut lines,
        "composition-coherence",
        corpus.triples.iter(),
        |_, [a, b, _]| {
            let Some(direct) = anc(a, b, budget)? else {
                return Ok(true);
            };
            let adm_a = admissibilize(a, budget)?.corr;
            let adm_b = admissibilize(b, budget)?.corr;
            let Some(stepwise) = anc(&adm_a, &adm_b, budget)? else {
                return Ok(true);
            };
            isomorphic(&direct, &stepwise, budget)
        },
    )?;

    check(
        &mut lines,
        "composition-associativity",
        corpus.triples.iter(),
        |_, [a, b, c]| {
            let (Some(ab), Some(bc)) = (anc(a, b, budget)?, anc(b, c, budget)?) else {
                return Ok(true);
            };
            let (Some(left), Some(right)) =
                (anc(&ab, c, budget)?, anc(a, &bc, budget)?)
            else {
                return Ok(true);
            };
            isomorphic(&left, &right, budget)
        },
    )?;

    check(
        &mut lines,
        "composition-units",
        corpus.triples.iter().map(|[a, _, _]| a),
        |_, a| {
            let expected = admissibilize(a, budget)?.corr;
            let left_unit = identity_cell(a.r1()).corr;
            let right_unit = identity_cell(a.r2()).corr;
            let (Some(l), Some(r)) =
                (anc(&left_unit, a, budget)?, anc(a, &right_unit, budget)?)
            else {
                return Ok(true);
            };
            Ok(isomorphic(&l, &expected, budget)? && isomorphic(&r, &expected, budget)?)
        },
    )?;

    Ok(lines)
}

/// Total composition in the localized calculus: compose, then
/// admissibilize. Returns `None` when the scratch extension would exceed
/// the budget, so suites can skip oversized composites uniformly.
fn anc(
    a: &DGCorrespondence,
    b: &DGCorrespondence,
    budget: &Budget,
) -> Result<Option<DGCorrespondence>> {
    let composite = compose(a, b)?;
    let extension = composite.apex().ring().size()
        * composite.r1().module().size()
        * composite.r2().module().size();
    if extension > budget.max_carrier {
        return Ok(None);
    }
    Ok(Some(admissibilize(&composite, budget)?.corr))
}

fn cat_suite(corpus: &Corpus, budget: &Budget) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();

    // The unit-object criterion and the lifting criterion assign the same
    // admissibility level whenever both apply.
    check(
        &mut lines,
        "criteria-agreement",
        corpus
            .cat_spans
            .iter()
            .filter(|s| s.left().is_equivalence()),
        |_, s| Ok(s.adm_level_by_objects()? == s.adm_level_by_lifting()),
    )?;

    check_plain(
        &mut lines,
        "classification",
        corpus.cat_spans.iter(),
        |_, s| {
            let class = s.classify();
            (class >= CatCorrClass::EquivalenceLeg) == s.left().is_equivalence()
                && (class >= CatCorrClass::Anamorphism)
                    == (s.left().is_equivalence() && s.left().is_strictly_surjective())
        },
    );

    check(
        &mut lines,
        "graph-hom-bijection",
        corpus.functor_pairs.iter(),
        |_, (phi, psi)| Ok(graph_hom_report(phi, psi, budget)?.ok()),
    )?;

    check(
        &mut lines,
        "saturation",
        corpus.cat_spans.iter().filter(|s| {
            s.left().is_equivalence() && s.apex().n_morphisms() <= 128
        }),
        |_, s| {
            let sat = saturate(s)?;
            Ok(sat.corr.is_admissible() && is_corr_morphism(s, &sat.corr, &sat.unit))
        },
    )?;

    check(
        &mut lines,
        "adjunction-bijection",
        corpus.adjunction_cases.iter(),
        |_, (span, psi)| Ok(adjunction_report(span, psi, budget)?.ok()),
    )?;

    check(
        &mut lines,
        "saturated-associativity",
        corpus.cat_triples.iter(),
        |_, [a, b, c]| {
            let ab = saturate(&compose_cat(a, b)?)?.corr;
            let bc = saturate(&compose_cat(b, c)?)?.corr;
            let left = saturate(&compose_cat(&ab, c)?)?.corr;
            let right = saturate(&compose_cat(a, &bc)?)?.corr;
            Ok(crate::cat::corr_iso_search(&left, &right, budget)?.is_some())
        },
    )?;

    Ok(lines)
}

fn bridge_suite(corpus: &Corpus) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    check_plain(
        &mut lines,
        "classification-transfer",
        corpus.correspondences.iter(),
        |_, c| bridge_two_notions(c).classes_agree(),
    );
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, Bounds};

    fn corpus_and_budget() -> (Corpus, Budget) {
        let budget = suite_budget();
        let corpus =
            generate(0, &Bounds::standard(), &budget).expect("standard corpus generates");
        (corpus, budget)
    }

    #[test]
    fn every_suite_passes_on_the_standard_corpus() {
        let (corpus, budget) = corpus_and_budget();
        let reports =
            run_suite(SuiteKind::All, &corpus, &budget).expect("suites run within budget");
        let rendered = render_suites(&reports);
        assert!(all_ok(&reports), "failing laws:\n{rendered}");
        assert_eq!(reports.len(), 7);
    }

    #[test]
    fn reports_render_identically_across_runs() {
        let (corpus, budget) = corpus_and_budget();
        let a = render_suites(&run_suite(SuiteKind::All, &corpus, &budget).unwrap());
        let regenerated =
            generate(0, &Bounds::standard(), &budget).expect("standard corpus generates");
        let b = render_suites(&run_suite(SuiteKind::All, &regenerated, &budget).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn suite_names_parse_and_render() {
        for kind in SuiteKind::SINGLES {
            assert_eq!(SuiteKind::parse(kind.name()).unwrap(), kind);
        }
        assert_eq!(SuiteKind::parse("all").unwrap(), SuiteKind::All);
        assert!(SuiteKind::parse("rings").is_err());
    }

    #[test]
    fn a_failing_check_renders_its_witness() {
        let line = CheckLine {
            name: "demo",
            instances: 3,
            failures: vec!["instance 1".into()],
        };
        let report = SuiteReport { suite: "quasi", lines: vec![line] };
        assert!(!report.ok());
        let rendered = render_suites(&[report]);
        assert!(rendered.contains("check demo fail instances=3 failures=1 first=instance 1"));
        assert!(rendered.contains("suite quasi result fail"));
    }

    #[test]
    fn the_graded_reading_rejects_a_skewed_differential() {
        let q = crate::quasi::instances::z4_double();
        assert!(graded_leibniz_holds(q.module(), q.d_map()));
        // Reduction mod 2 read back into Z/4 is not additive: it sends
        // 1 + 1 to 0 but adds its images to 2.
        let skewed = vec![0, 1, 0, 1];
        assert!(!graded_leibniz_holds(q.module(), &skewed));
        assert!(!validate_quasi_ideal(q.module(), &skewed).unwrap().ok());
    }
}
