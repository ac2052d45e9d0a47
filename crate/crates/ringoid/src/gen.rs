//! Seeded, reproducible instance generation: the bundled corpus of
//! quasi-ideal candidates, simplicial rings, morphisms, correspondences,
//! and finite-category spans that the law suites run against.
//!
//! Everything is driven by a counter-based generator, so the same seed and
//! bounds always produce the same corpus, element for element. The bounds
//! cap the carriers of the quasi-ideal instances; derived objects such as
//! correspondence apexes are capped separately so that every exhaustive
//! check downstream stays within the search budget.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adm::identity_cell;
use crate::budget::Budget;
use crate::butterfly::{from_butterfly, mod2_reduction_butterfly};
use crate::cat::{
    codiscrete, compose_cat, cyclic_group_category, discrete, fold_correspondence, graph,
    saturate, walking_arrow, CatCorrespondence, FiniteCategory, FunctorData,
};
use crate::corr::{compose, graph_corr, search_module_maps, DGCorrespondence};
use crate::error::Result;
use crate::module::{pulled_product, FiniteModule};
use crate::quasi::{instances, QMorphism, QuasiIdeal};
use crate::ring::{enumerate_ring_homs, product_ring, Elem, FiniteRing, Ideal, RingHom};
use crate::simplicial::{q_to_simplicial, truncated_polynomial_example, Trunc1SimpRing};
use crate::{pair_index, unpair_index};

/// Upper bound for |C12| x |I12| of a generated correspondence apex, chosen
/// so that cone groupoids and admissibilizations of corpus instances stay
/// enumerable.
const APEX_CAP: usize = 256;

/// Upper bound for the morphism count of a generated category span apex.
const CAT_APEX_CAP: usize = 1024;

/// Size bounds for generation. `max_carrier` caps the ring and module
/// carriers of every quasi-ideal instance placed in the corpus; a bound of
/// zero produces an empty corpus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    pub max_carrier: usize,
}

impl Bounds {
    /// The bounds the bundled corpus is generated with.
    pub fn standard() -> Bounds {
        Bounds { max_carrier: 8 }
    }
}

/// Candidate differential data: a finite module together with an arbitrary
/// function into its base ring, not necessarily satisfying the quasi-ideal
/// law.
#[derive(Clone, Debug)]
pub struct QCandidate {
    pub module: Arc<FiniteModule>,
    pub d: Vec<Elem>,
}

/// A reproducible bundle of test instances at every layer of the theory.
pub struct Corpus {
    /// Candidate (module, differential) pairs, valid and invalid.
    pub candidates: Vec<QCandidate>,
    /// Validated quasi-ideals.
    pub quasis: Vec<Arc<QuasiIdeal>>,
    /// Truncated simplicial rings, good and non-good.
    pub simplicials: Vec<Trunc1SimpRing>,
    /// Morphisms of quasi-ideals, quasi-isomorphisms and otherwise.
    pub qmorphisms: Vec<QMorphism>,
    /// Quasi-ideal correspondences across all five classes.
    pub correspondences: Vec<DGCorrespondence>,
    /// Composable triples of classifiable correspondences for the
    /// coherence laws.
    pub triples: Vec<[DGCorrespondence; 3]>,
    /// Spans of finite categories, mostly with equivalence left legs.
    pub cat_spans: Vec<CatCorrespondence>,
    /// Parallel functor pairs for the graph hom-set comparison.
    pub functor_pairs: Vec<(FunctorData, FunctorData)>,
    /// Span and parallel-functor pairs for the saturation adjunction.
    pub adjunction_cases: Vec<(CatCorrespondence, FunctorData)>,
    /// Composable triples of category spans for the saturated composition
    /// laws.
    pub cat_triples: Vec<[CatCorrespondence; 3]>,
}

impl Corpus {
    /// Instance counts per section, in a fixed reporting order.
    pub fn counts(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("candidates", self.candidates.len()),
            ("quasi-ideals", self.quasis.len()),
            ("simplicial-rings", self.simplicials.len()),
            ("qmorphisms", self.qmorphisms.len()),
            ("correspondences", self.correspondences.len()),
            ("composable-triples", self.triples.len()),
            ("category-spans", self.cat_spans.len()),
            ("functor-pairs", self.functor_pairs.len()),
            ("adjunction-cases", self.adjunction_cases.len()),
            ("category-triples", self.cat_triples.len()),
        ]
    }
}

/// All morphisms of quasi-ideals from `a` to `b`, in lexicographic order of
/// (ring map, module map).
pub fn enumerate_qmorphisms(
    a: &Arc<QuasiIdeal>,
    b: &Arc<QuasiIdeal>,
    budget: &Budget,
) -> Result<Vec<QMorphism>> {
    let ring_homs = enumerate_ring_homs(a.ring(), b.ring(), budget)?;
    let candidates: Vec<Vec<Elem>> = a
        .module()
        .elements()
        .map(|_| b.module().elements().collect())
        .collect();
    let mut guard = budget.guard("quasi-ideal morphism enumeration");
    let mut out = Vec::new();
    for f0 in ring_homs {
        let mut img: Vec<Option<Elem>> = vec![None; a.module().size()];
        let mut maps = Vec::new();
        search_module_maps(a, b, f0.map(), &candidates, 0, &mut img, &mut guard, &mut maps)?;
        for m in maps {
            out.push(
                QMorphism::new(a.clone(), b.clone(), f0.map().to_vec(), m)
                    .expect("search enforces the morphism laws"),
            );
        }
    }
    Ok(out)
}

/// Generates the corpus for a seed and bounds. Same arguments, same corpus.
pub fn generate(seed: u64, bounds: &Bounds, budget: &Budget) -> Result<Corpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = bounds.max_carrier;

    let mut rings: Vec<Arc<FiniteRing>> = Vec::new();
    for n in [2usize, 3, 4, 6, 8] {
        if n <= cap {
            rings.push(FiniteRing::cyclic(n)?);
        }
    }
    if cap >= 4 {
        let z2 = FiniteRing::cyclic(2)?;
        rings.push(product_ring(&z2, &z2).ring);
    }

    let mut quasis: Vec<Arc<QuasiIdeal>> = Vec::new();
    for (n, k) in [(2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (4, 2), (6, 2), (8, 4)] {
        if n <= cap {
            quasis.push(instances::cyclic_with_scaling(n, k));
        }
    }
    if cap >= 4 {
        let z4 = FiniteRing::cyclic(4)?;
        quasis.push(QuasiIdeal::from_ideal(&z4, &Ideal::principal(z4.clone(), 2)));
        let (product, _, _) = crate::quasi::product_quasi_ideal(
            &instances::cyclic_with_scaling(2, 0),
            &instances::cyclic_with_scaling(2, 1),
        );
        quasis.push(product);
    }
    for r in &rings {
        quasis.push(QuasiIdeal::zero(r.clone()));
    }

    let mut candidates: Vec<QCandidate> = Vec::new();
    for q in &quasis {
        candidates.push(QCandidate { module: q.module().clone(), d: q.d_map().to_vec() });
    }
    let mut module_pool: Vec<Arc<FiniteModule>> =
        quasis.iter().map(|q| q.module().clone()).collect();
    if cap >= 4 {
        // The pinned unbalanced projection on Z/2 (+) Z/2, plus its balanced
        // zero-differential companion on the same module.
        let z2 = FiniteRing::cyclic(2)?;
        let m = FiniteModule::regular(z2.clone());
        let id = RingHom::identity(&z2);
        let (square, pr1, _) = pulled_product(&id, &m, &id, &m);
        let d_proj: Vec<Elem> = square.elements().map(|x| pr1.apply(x)).collect();
        candidates.push(QCandidate { module: square.clone(), d: d_proj });
        candidates.push(QCandidate { module: square.clone(), d: vec![z2.zero(); square.size()] });
        module_pool.push(square);
    }
    while candidates.len() < 200 && !module_pool.is_empty() {
        let m = module_pool[rng.gen_range(0..module_pool.len())].clone();
        let d: Vec<Elem> = (0..m.size()).map(|_| rng.gen_range(0..m.base().size())).collect();
        candidates.push(QCandidate { module: m, d });
    }

    let mut simplicials: Vec<Trunc1SimpRing> = Vec::new();
    for q in &quasis {
        if q.ring().size() * q.module().size() <= budget.max_carrier {
            simplicials.push(q_to_simplicial(q));
        }
    }
    if cap >= 4 {
        simplicials.push(relabeled(&q_to_simplicial(&instances::z4_double()), &mut rng));
    }
    if cap >= 8 {
        simplicials.push(truncated_polynomial_example());
    }

    let mor_pool: Vec<Arc<QuasiIdeal>> = quasis
        .iter()
        .filter(|q| q.ring().size() <= 6 && q.ring().size() * q.module().size() <= 36)
        .cloned()
        .collect();
    let mut qmorphisms: Vec<QMorphism> = Vec::new();
    for a in &mor_pool {
        for b in &mor_pool {
            let mut homs = enumerate_qmorphisms(a, b, budget)?;
            homs.truncate(6);
            qmorphisms.extend(homs);
        }
    }
    let seed_count = qmorphisms.len();
    for _ in 0..5 {
        if seed_count == 0 {
            break;
        }
        let f = qmorphisms[rng.gen_range(0..seed_count)].clone();
        let continuations: Vec<usize> = (0..seed_count)
            .filter(|&j| qmorphisms[j].source() == f.target())
            .collect();
        if continuations.is_empty() {
            continue;
        }
        let g = qmorphisms[continuations[rng.gen_range(0..continuations.len())]].clone();
        qmorphisms.push(f.then(&g));
    }

    let mut correspondences: Vec<DGCorrespondence> = Vec::new();
    let apex_ok = |c: &DGCorrespondence| {
        c.apex().ring().size() * c.apex().module().size() <= APEX_CAP
    };
    for phi in qmorphisms.iter().take(12) {
        let g = graph_corr(phi);
        if apex_ok(&g) {
            correspondences.push(g);
        }
    }
    if cap >= 4 {
        let z4 = instances::z4_double();
        for phi in enumerate_qmorphisms(&z4, &z4, budget)? {
            let g = graph_corr(&phi);
            if phi.is_quasi_iso() {
                // The inverted graph presents the same cell with the
                // nontrivial leg on the left.
                correspondences.push(g.invert()?);
            }
            correspondences.push(g);
        }
        correspondences.push(identity_cell(&z4).corr);
        correspondences.push(from_butterfly(&mod2_reduction_butterfly()));
        // A left leg that is a quasi-isomorphism without being surjective:
        // the diagonal of Z/2 into the second-factor ideal of Z/2 x Z/2.
        let z2 = FiniteRing::cyclic(2)?;
        let v4 = product_ring(&z2, &z2).ring;
        let target = QuasiIdeal::from_ideal(&v4, &Ideal::principal(v4.clone(), pair_index(0, 1, 2)));
        let apex = QuasiIdeal::zero(z2.clone());
        let diag = QMorphism::new(
            apex.clone(),
            target,
            vec![pair_index(0, 0, 2), pair_index(1, 1, 2)],
            vec![0],
        )
        .expect("the diagonal respects both structures");
        let stay = QMorphism::identity(&apex);
        correspondences.push(DGCorrespondence::new(diag, stay).expect("legs share the apex"));
        // A left leg that fails to be a quasi-isomorphism.
        let down = QMorphism::new(
            z4.clone(),
            instances::cyclic_with_scaling(2, 0),
            vec![0, 1, 0, 1],
            vec![0, 1, 0, 1],
        )
        .expect("reduction mod 2 respects both structures");
        correspondences
            .push(DGCorrespondence::new(down, QMorphism::identity(&z4)).expect("legs share the apex"));
    }
    if cap >= 2 {
        let q2 = instances::cyclic_with_scaling(2, 0);
        let cell = identity_cell(&q2).corr;
        correspondences.push(cell.clone());
        let doubled = compose(&cell, &cell)?;
        if apex_ok(&doubled) {
            correspondences.push(doubled);
        }
    }

    let mut triples: Vec<[DGCorrespondence; 3]> = Vec::new();
    if cap >= 4 {
        let q2 = instances::cyclic_with_scaling(2, 0);
        let pool = [
            graph_corr(&QMorphism::identity(&q2)),
            identity_cell(&q2).corr,
            from_butterfly(&mod2_reduction_butterfly()),
        ];
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    triples.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        let z4 = instances::z4_double();
        let endos = enumerate_qmorphisms(&z4, &z4, budget)?;
        let ident = graph_corr(&QMorphism::identity(&z4));
        for e1 in &endos {
            for e2 in &endos {
                triples.push([graph_corr(e1), graph_corr(e2), ident.clone()]);
            }
        }
    } else if cap >= 2 {
        let q2 = instances::cyclic_with_scaling(2, 0);
        let g = graph_corr(&QMorphism::identity(&q2));
        triples.push([g.clone(), g.clone(), g]);
    }

    let (cat_spans, functor_pairs, adjunction_cases, cat_triples) = if cap >= 2 {
        generate_cat_corpus(&mut rng)?
    } else {
        (Vec::new(), Vec::new(), Vec::new(), Vec::new())
    };

    Ok(Corpus {
        candidates,
        quasis,
        simplicials,
        qmorphisms,
        correspondences,
        triples,
        cat_spans,
        functor_pairs,
        adjunction_cases,
        cat_triples,
    })
}

/// Relabels the top ring of a simplicial ring by a random permutation,
/// producing an isomorphic instance that is no longer on the canonical
/// carrier.
fn relabeled(t: &Trunc1SimpRing, rng: &mut ChaCha8Rng) -> Trunc1SimpRing {
    let a1 = t.a1();
    let n = a1.size();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            add[perm[x]][perm[y]] = perm[a1.add(x, y)];
            mul[perm[x]][perm[y]] = perm[a1.mul(x, y)];
        }
    }
    let relabeled =
        FiniteRing::from_tables(&add, &mul, perm[a1.one()]).expect("relabeling preserves the laws");
    let mut inv = vec![0; n];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    let d0 = RingHom::new(
        relabeled.clone(),
        t.a0().clone(),
        (0..n).map(|x| t.d0().apply(inv[x])).collect(),
    )
    .expect("relabeled face map");
    let d1 = RingHom::new(
        relabeled.clone(),
        t.a0().clone(),
        (0..n).map(|x| t.d1().apply(inv[x])).collect(),
    )
    .expect("relabeled face map");
    let s = RingHom::new(
        t.a0().clone(),
        relabeled,
        t.s().map().iter().map(|&y| perm[y]).collect(),
    )
    .expect("relabeled degeneracy");
    Trunc1SimpRing::new(d0, d1, s).expect("relabeling preserves the simplicial identities")
}

type CatCorpus = (
    Vec<CatCorrespondence>,
    Vec<(FunctorData, FunctorData)>,
    Vec<(CatCorrespondence, FunctorData)>,
    Vec<[CatCorrespondence; 3]>,
);

fn generate_cat_corpus(rng: &mut ChaCha8Rng) -> Result<CatCorpus> {
    let cats: Vec<Arc<FiniteCategory>> = vec![
        discrete(1),
        discrete(2),
        discrete(3),
        codiscrete(2),
        codiscrete(3),
        cyclic_group_category(2),
        cyclic_group_category(3),
        cyclic_group_category(4),
        walking_arrow(),
    ];

    let mut functors: Vec<FunctorData> = cats.iter().map(FunctorData::identity).collect();
    let small_targets = [
        discrete(2),
        codiscrete(2),
        codiscrete(3),
        cyclic_group_category(2),
        cyclic_group_category(3),
    ];
    for n in 1..=3usize {
        for target in &small_targets {
            let src = discrete(n);
            let object_map: Vec<usize> =
                (0..n).map(|_| rng.gen_range(0..target.n_objects())).collect();
            let morphism_map = object_map.iter().map(|&o| target.identity_of(o)).collect();
            functors.push(
                FunctorData::new(src, target.clone(), object_map, morphism_map)
                    .expect("pointwise functor from a discrete category"),
            );
        }
    }
    for (n, m) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        let src = codiscrete(n);
        let tgt = codiscrete(m);
        let object_map: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let morphism_map = (0..n * n)
            .map(|f| {
                let (a, b) = unpair_index(f, n);
                pair_index(object_map[a], object_map[b], m)
            })
            .collect();
        functors.push(
            FunctorData::new(src, tgt, object_map, morphism_map)
                .expect("codiscrete targets force the morphism map"),
        );
    }
    for (n, m) in [(2usize, 2usize), (2, 4), (4, 2), (3, 3), (2, 3), (3, 2)] {
        for k in 0..m {
            if (k * n) % m != 0 {
                continue;
            }
            functors.push(
                FunctorData::new(
                    cyclic_group_category(n),
                    cyclic_group_category(m),
                    vec![0],
                    (0..n).map(|f| (f * k) % m).collect(),
                )
                .expect("a group homomorphism is a functor"),
            );
        }
    }
    for (n, m) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        let src = codiscrete(n);
        let tgt = cyclic_group_category(m);
        let h: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let morphism_map = (0..n * n)
            .map(|f| {
                let (a, b) = unpair_index(f, n);
                (m + h[b] - h[a]) % m
            })
            .collect();
        functors.push(
            FunctorData::new(src, tgt, vec![0; n], morphism_map)
                .expect("a potential difference is a cocycle"),
        );
    }
    for (n, m) in [(2usize, 2usize), (3, 3)] {
        functors.push(
            FunctorData::new(
                cyclic_group_category(n),
                codiscrete(m),
                vec![0],
                vec![pair_index(0, 0, m); n],
            )
            .expect("the constant functor collapses the group"),
        );
    }
    for _ in 0..8 {
        let i = rng.gen_range(0..functors.len());
        let continuations: Vec<usize> = (0..functors.len())
            .filter(|&j| functors[j].source() == functors[i].target())
            .collect();
        if continuations.is_empty() {
            continue;
        }
        let j = continuations[rng.gen_range(0..continuations.len())];
        let composite = functors[i].then(&functors[j]);
        functors.push(composite);
    }

    let mut cat_spans: Vec<CatCorrespondence> =
        functors.iter().map(|f| graph(f).into_corr()).collect();
    for c in &cats {
        cat_spans.push(fold_correspondence(c));
    }
    let graph_count = functors.len();
    for _ in 0..24 {
        let i = rng.gen_range(0..graph_count);
        let continuations: Vec<usize> = (0..graph_count)
            .filter(|&j| functors[j].source() == functors[i].target())
            .collect();
        if continuations.is_empty() {
            continue;
        }
        let j = continuations[rng.gen_range(0..continuations.len())];
        let a = graph(&functors[i]).into_corr();
        let b = graph(&functors[j]).into_corr();
        if composite_morphism_count(&a, &b) <= CAT_APEX_CAP {
            cat_spans.push(compose_cat(&a, &b)?);
        }
    }
    for _ in 0..10 {
        let i = rng.gen_range(0..graph_count);
        let fold = fold_correspondence(functors[i].source());
        let g = graph(&functors[i]).into_corr();
        if composite_morphism_count(&fold, &g) <= CAT_APEX_CAP {
            cat_spans.push(compose_cat(&fold, &g)?);
        }
    }
    let saturation_sources: Vec<usize> = (0..cat_spans.len())
        .filter(|&i| {
            cat_spans[i].apex().n_morphisms() <= 128 && cat_spans[i].left().is_equivalence()
        })
        .collect();
    for k in 0..6 {
        if saturation_sources.is_empty() {
            break;
        }
        let i = saturation_sources[k * 7 % saturation_sources.len()];
        let sat = saturate(&cat_spans[i])?;
        cat_spans.push(sat.corr);
    }
    // Equivalence legs that are not surjective on objects.
    for m in [2usize, 3] {
        let point = discrete(1);
        let o = rng.gen_range(0..m);
        let left = FunctorData::new(
            point.clone(),
            codiscrete(m),
            vec![o],
            vec![pair_index(o, o, m)],
        )
        .expect("a point lands on an object");
        let right = FunctorData::identity(&point);
        cat_spans.push(CatCorrespondence::new(left, right).expect("legs share the point"));
    }

    let mut functor_pairs: Vec<(FunctorData, FunctorData)> = Vec::new();
    for i in 0..functors.len() {
        for j in 0..functors.len() {
            if functors[i].source() == functors[j].source()
                && functors[i].target() == functors[j].target()
            {
                functor_pairs.push((functors[i].clone(), functors[j].clone()));
            }
        }
    }
    functor_pairs.truncate(40);
    let point = discrete(1);
    let arrow = walking_arrow();
    let at0 = FunctorData::new(point.clone(), arrow.clone(), vec![0], vec![0])
        .expect("a point lands on an object");
    let at1 =
        FunctorData::new(point, arrow, vec![1], vec![1]).expect("a point lands on an object");
    functor_pairs.push((at0, at1));

    let mut adjunction_cases: Vec<(CatCorrespondence, FunctorData)> = Vec::new();
    for span in &cat_spans {
        if adjunction_cases.len() >= 20 {
            break;
        }
        if span.apex().n_morphisms() > 128 || !span.left().is_equivalence() {
            continue;
        }
        if let Some(psi) = functors.iter().find(|psi| {
            psi.source() == span.c1() && psi.target() == span.c2()
        }) {
            adjunction_cases.push((span.clone(), psi.clone()));
        }
    }

    // Composable chains of graph spans, plus one fold-headed chain, for the
    // saturated composition laws.  Chains are sampled at a fixed stride so
    // the selection spans the whole functor pool.
    let graphs: Vec<Option<CatCorrespondence>> = functors
        .iter()
        .map(|f| {
            let corr = graph(f).into_corr();
            (corr.apex().n_morphisms() <= 128).then_some(corr)
        })
        .collect();
    let mut chains: Vec<[usize; 3]> = Vec::new();
    for i in 0..functors.len() {
        if graphs[i].is_none() {
            continue;
        }
        for j in 0..functors.len() {
            if graphs[j].is_none() || functors[j].source() != functors[i].target() {
                continue;
            }
            for k in 0..functors.len() {
                if graphs[k].is_none() || functors[k].source() != functors[j].target() {
                    continue;
                }
                chains.push([i, j, k]);
            }
        }
    }
    let mut cat_triples: Vec<[CatCorrespondence; 3]> = Vec::new();
    for t in 0..6usize {
        if chains.is_empty() {
            break;
        }
        let [i, j, k] = chains[t * chains.len() / 6];
        let spans = [i, j, k].map(|n| graphs[n].clone().expect("chains index gated graphs"));
        if composite_morphism_count(&spans[0], &spans[1]) <= CAT_APEX_CAP
            && composite_morphism_count(&spans[1], &spans[2]) <= CAT_APEX_CAP
        {
            cat_triples.push(spans);
        }
    }
    let two = codiscrete(2);
    let id_two = graph(&FunctorData::identity(&two)).into_corr();
    cat_triples.push([fold_correspondence(&two), id_two.clone(), id_two]);

    Ok((cat_spans, functor_pairs, adjunction_cases, cat_triples))
}

/// Number of morphism pairs agreeing over the shared middle foot, which is
/// the morphism count of the composite span's apex.
fn composite_morphism_count(a: &CatCorrespondence, b: &CatCorrespondence) -> usize {
    let mut count = 0;
    for m in 0..a.apex().n_morphisms() {
        for m2 in 0..b.apex().n_morphisms() {
            if a.right().apply_morphism(m) == b.left().apply_morphism(m2) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wide_budget() -> Budget {
        Budget { max_carrier: 64, max_search: 10_000_000 }
    }

    #[test]
    fn corpora_are_reproducible() {
        let budget = wide_budget();
        let a = generate(0, &Bounds::standard(), &budget).unwrap();
        let b = generate(0, &Bounds::standard(), &budget).unwrap();
        assert_eq!(a.counts(), b.counts());
        for (x, y) in a.candidates.iter().zip(&b.candidates) {
            assert_eq!(x.d, y.d);
        }
        for (x, y) in a.qmorphisms.iter().zip(&b.qmorphisms) {
            assert_eq!(x.ring_map(), y.ring_map());
            assert_eq!(x.module_map(), y.module_map());
        }
        for (x, y) in a.cat_spans.iter().zip(&b.cat_spans) {
            assert_eq!(x, y);
        }
        let c = generate(1, &Bounds::standard(), &budget).unwrap();
        let shifted = a
            .candidates
            .iter()
            .zip(&c.candidates)
            .any(|(x, y)| x.d != y.d);
        assert!(shifted, "different seeds must shuffle the random sections");
    }

    #[test]
    fn zero_bounds_give_an_empty_corpus() {
        let budget = wide_budget();
        let corpus = generate(0, &Bounds { max_carrier: 0 }, &budget).unwrap();
        assert!(corpus.counts().iter().all(|&(_, n)| n == 0));
    }

    #[test]
    fn small_bounds_still_pin_the_doubling_instance() {
        let budget = wide_budget();
        let corpus = generate(0, &Bounds { max_carrier: 4 }, &budget).unwrap();
        assert!(corpus.quasis.contains(&instances::z4_double()));
    }

    #[test]
    fn standard_corpus_meets_the_size_floors() {
        let budget = wide_budget();
        let corpus = generate(0, &Bounds::standard(), &budget).unwrap();
        assert!(corpus.candidates.len() >= 200, "{}", corpus.candidates.len());
        assert!(corpus.qmorphisms.len() >= 50, "{}", corpus.qmorphisms.len());
        assert!(corpus.cat_spans.len() >= 100, "{}", corpus.cat_spans.len());
        assert!(corpus.triples.len() >= 20, "{}", corpus.triples.len());
        assert!(corpus.correspondences.len() >= 10, "{}", corpus.correspondences.len());
        assert!(!corpus.simplicials.is_empty());
        assert!(corpus.simplicials.iter().any(|t| !t.is_good()));
        let has_invalid = corpus
            .candidates
            .iter()
            .any(|c| !crate::quasi::validate_quasi_ideal(&c.module, &c.d).unwrap().ok());
        assert!(has_invalid, "the corpus must include invalid candidates");
    }

    #[test]
    fn z4_endomorphism_enumeration_matches_hand_count() {
        let budget = wide_budget();
        let z4 = instances::z4_double();
        let endos = enumerate_qmorphisms(&z4, &z4, &budget).unwrap();
        // The identity and multiplication by 3 on the module.
        assert_eq!(endos.len(), 2);
        assert!(endos.iter().all(|e| e.is_quasi_iso()));
    }
}
