//! Groupoids internal to commutative rings, and the cone groupoid of a
//! quasi-ideal.
//!
//! An internal groupoid has a ring of objects, a ring of morphisms, source,
//! target and identity homomorphisms, and a partial composition defined on
//! composable pairs. Composition is required to be a ring homomorphism out of
//! the composable-pairs ring; for the nerve composition of a 1-truncated
//! simplicial ring this holds exactly when the truncation is good.

use std::sync::Arc;

use crate::check::ValidationReport;
use crate::error::{Error, Result};
use crate::pair_index;
use crate::quasi::{QMorphism, QuasiIdeal};
use crate::ring::{fiber_product_ring, validate_hom_map, Elem, FiniteRing, RingHom};
use crate::simplicial::{q_to_simplicial, Trunc1SimpRing};

/// A groupoid internal to finite commutative rings. Morphism `f` runs from
/// `src(f)` to `tgt(f)`; `compose(f, g)` is `g` after `f` and is defined
/// exactly when `tgt(f) = src(g)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InternalRingGroupoid {
    src: RingHom,
    tgt: RingHom,
    ident: RingHom,
    /// Flat `|Mor| x |Mor|` table; entry `(f, g)` holds `g ∘ f` when defined.
    comp: Vec<Option<Elem>>,
}

impl InternalRingGroupoid {
    /// Assembles and fully validates an internal groupoid.
    pub fn new(
        src: RingHom,
        tgt: RingHom,
        ident: RingHom,
        comp: Vec<Option<Elem>>,
    ) -> Result<InternalRingGroupoid> {
        if src.domain() != tgt.domain()
            || src.codomain() != tgt.codomain()
            || ident.domain() != src.codomain()
            || ident.codomain() != src.domain()
        {
            return Err(Error::Precondition(
                "structure maps must connect the morphism and object rings".into(),
            ));
        }
        let n = src.domain().size();
        if comp.len() != n * n {
            return Err(Error::malformed(
                "internal groupoid",
                format!("composition table has length {}, expected {}", comp.len(), n * n),
            ));
        }
        let g = InternalRingGroupoid { src, tgt, ident, comp };
        g.validate().into_result("internal groupoid")?;
        Ok(g)
    }

    pub(crate) fn from_parts(
        src: RingHom,
        tgt: RingHom,
        ident: RingHom,
        comp: Vec<Option<Elem>>,
    ) -> InternalRingGroupoid {
        let g = InternalRingGroupoid { src, tgt, ident, comp };
        #[cfg(debug_assertions)]
        if g.morphism_ring().size() <= 64 {
            let report = g.validate();
            assert!(report.ok(), "internal groupoid invariant broken: {report}");
        }
        g
    }

    pub fn object_ring(&self) -> &Arc<FiniteRing> {
        self.src.codomain()
    }

    pub fn morphism_ring(&self) -> &Arc<FiniteRing> {
        self.src.domain()
    }

    pub fn src(&self) -> &RingHom {
        &self.src
    }

    pub fn tgt(&self) -> &RingHom {
        &self.tgt
    }

    pub fn ident(&self) -> &RingHom {
        &self.ident
    }

    pub fn source_of(&self, f: Elem) -> Elem {
        self.src.apply(f)
    }

    pub fn target_of(&self, f: Elem) -> Elem {
        self.tgt.apply(f)
    }

    pub fn identity_of(&self, c: Elem) -> Elem {
        self.ident.apply(c)
    }

    /// `g ∘ f`, when `tgt(f) = src(g)`.
    pub fn compose(&self, f: Elem, g: Elem) -> Option<Elem> {
        self.comp[pair_index(f, g, self.morphism_ring().size())]
    }

    /// The groupoid inverse `ident(src f) + ident(tgt f) - f`.
    pub fn inverse_morphism(&self, f: Elem) -> Elem {
        let mor = self.morphism_ring();
        let ids = mor.add(
            self.identity_of(self.source_of(f)),
            self.identity_of(self.target_of(f)),
        );
        mor.sub(ids, f)
    }

    /// All morphisms from `a` to `b`, ascending.
    pub fn hom_set(&self, a: Elem, b: Elem) -> Vec<Elem> {
        self.morphism_ring()
            .elements()
            .filter(|&f| self.source_of(f) == a && self.target_of(f) == b)
            .collect()
    }

    pub fn automorphisms(&self, c: Elem) -> Vec<Elem> {
        self.hom_set(c, c)
    }

    /// Connected-component label per object: the least object reachable
    /// through morphisms in either direction.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.object_ring().size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in self.morphism_ring().elements() {
            let a = find(&mut parent, self.source_of(f));
            let b = find(&mut parent, self.target_of(f));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..n).map(|c| find(&mut parent, c)).collect()
    }

    pub fn component_count(&self) -> usize {
        let labels = self.component_labels();
        let mut distinct = labels;
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len()
    }

    /// Every groupoid and compatibility law, with lex-least witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let obj = self.object_ring();
        let mor = self.morphism_ring();
        let n = mor.size();
        if let Some(c) = obj.elements().find(|&c| self.source_of(self.identity_of(c)) != c) {
            report.push("identity-source", &[c]);
        }
        if let Some(c) = obj.elements().find(|&c| self.target_of(self.identity_of(c)) != c) {
            report.push("identity-target", &[c]);
        }
        'domain: for f in 0..n {
            for g in 0..n {
                let composable = self.target_of(f) == self.source_of(g);
                if self.comp[pair_index(f, g, n)].is_some() != composable {
                    report.push("composition-domain", &[f, g]);
                    break 'domain;
                }
            }
        }
        let mut endpoint_src = None;
        let mut endpoint_tgt = None;
        for f in 0..n {
            for g in 0..n {
                let Some(h) = self.comp[pair_index(f, g, n)] else { continue };
                if endpoint_src.is_none() && self.source_of(h) != self.source_of(f) {
                    endpoint_src = Some([f, g]);
                }
                if endpoint_tgt.is_none() && self.target_of(h) != self.target_of(g) {
                    endpoint_tgt = Some([f, g]);
                }
            }
        }
        if let Some(w) = endpoint_src {
            report.push("composition-source", &w);
        }
        if let Some(w) = endpoint_tgt {
            report.push("composition-target", &w);
        }
        if let Some(f) = (0..n).find(|&f| {
            self.compose(self.identity_of(self.source_of(f)), f) != Some(f)
        }) {
            report.push("unit-precompose", &[f]);
        }
        if let Some(f) = (0..n).find(|&f| {
            self.compose(f, self.identity_of(self.target_of(f))) != Some(f)
        }) {
            report.push("unit-postcompose", &[f]);
        }
        let mut by_src: Vec<Vec<Elem>> = vec![Vec::new(); obj.size()];
        for f in 0..n {
            by_src[self.source_of(f)].push(f);
        }
        'assoc: for f in 0..n {
            for &g in &by_src[self.target_of(f)] {
                let gf = self.compose(f, g).expect("composable");
                for &h in &by_src[self.target_of(g)] {
                    let left = self.compose(gf, h);
                    let right = self.compose(g, h).and_then(|hg| self.compose(f, hg));
                    if left != right {
                        report.push("composition-associativity", &[f, g, h]);
                        break 'assoc;
                    }
                }
            }
        }
        if let Some(f) = (0..n).find(|&f| {
            let g = self.inverse_morphism(f);
            self.compose(f, g) != Some(self.identity_of(self.source_of(f)))
                || self.compose(g, f) != Some(self.identity_of(self.target_of(f)))
        }) {
            report.push("inverses", &[f]);
        }
        report.merge(self.multiplicativity_report());
        report
    }

    /// Checks that composition is a ring homomorphism out of the
    /// composable-pairs ring. Witnesses index that ring's carrier.
    pub fn multiplicativity_report(&self) -> ValidationReport {
        let pairs = fiber_product_ring(&self.tgt, &self.src)
            .expect("faces share the object ring");
        let n = self.morphism_ring().size();
        let comp_map: Vec<Elem> = pairs
            .ring
            .elements()
            .map(|p| {
                let (f, g) = (pairs.pr1.apply(p), pairs.pr2.apply(p));
                self.comp[pair_index(f, g, n)].expect("pair is composable")
            })
            .collect();
        let raw = validate_hom_map(&pairs.ring, self.morphism_ring(), &comp_map)
            .expect("composition table is total on composable pairs");
        let mut report = ValidationReport::new();
        for v in raw.violations {
            report.push(format!("composition-{}", v.law), &v.witness);
        }
        report
    }
}

/// Builds the internal groupoid of a 1-truncated simplicial ring using the
/// nerve composition `g ∘ f = f + g - s(m)` over the middle object `m`.
/// Fails with the first kernel-product witness when the truncation is not
/// good, which is exactly when this composition is not a ring homomorphism.
pub fn composition_from_truncation(t: &Trunc1SimpRing) -> Result<InternalRingGroupoid> {
    let comp = nerve_composition_table(t);
    let candidate = InternalRingGroupoid {
        src: t.d0().clone(),
        tgt: t.d1().clone(),
        ident: t.s().clone(),
        comp,
    };
    if !candidate.multiplicativity_report().ok() {
        let (x, y) = t
            .goodness_witness()
            .expect("non-multiplicative nerve composition forces a kernel-product witness");
        return Err(Error::NotGood(x, y));
    }
    debug_assert!(t.is_good());
    let report = candidate.validate();
    debug_assert!(report.ok(), "nerve composition laws: {report}");
    Ok(candidate)
}

/// The nerve composition table of any truncation, good or not:
/// `g ∘ f = f + g - s(tgt f)` whenever `tgt(f) = src(g)`.
pub fn nerve_composition_table(t: &Trunc1SimpRing) -> Vec<Option<Elem>> {
    let a1 = t.a1();
    let n = a1.size();
    let mut comp = vec![None; n * n];
    for f in 0..n {
        let m = t.d1().apply(f);
        let sm = t.s().apply(m);
        for g in 0..n {
            if t.d0().apply(g) == m {
                comp[pair_index(f, g, n)] = Some(a1.sub(a1.add(f, g), sm));
            }
        }
    }
    comp
}

/// The cone groupoid of a quasi-ideal: objects `C`, morphisms `(c, x)` from
/// `c` to `c + d(x)` indexed row-major by `|I|`, with nerve composition
/// `(c + d(x), y) ∘ (c, x) = (c, x + y)`.
pub fn cone(q: &Arc<QuasiIdeal>) -> InternalRingGroupoid {
    let t = q_to_simplicial(q);
    let comp = nerve_composition_table(&t);
    InternalRingGroupoid::from_parts(
        t.d0().clone(),
        t.d1().clone(),
        t.s().clone(),
        comp,
    )
}

/// A functor between internal groupoids, given by its object and morphism
/// maps on carriers.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    pub source: InternalRingGroupoid,
    pub target: InternalRingGroupoid,
    pub object_map: Vec<Elem>,
    pub morphism_map: Vec<Elem>,
}

impl GroupoidFunctor {
    /// Functoriality report: endpoints, identities and composition.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.source.morphism_ring().size();
        if let Some(f) = (0..n).find(|&f| {
            self.target.source_of(self.morphism_map[f]) != self.object_map[self.source.source_of(f)]
        }) {
            report.push("functor-source", &[f]);
        }
        if let Some(f) = (0..n).find(|&f| {
            self.target.target_of(self.morphism_map[f]) != self.object_map[self.source.target_of(f)]
        }) {
            report.push("functor-target", &[f]);
        }
        if let Some(c) = self.source.object_ring().elements().find(|&c| {
            self.morphism_map[self.source.identity_of(c)]
                != self.target.identity_of(self.object_map[c])
        }) {
            report.push("functor-identity", &[c]);
        }
        'comp: for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.source.compose(f, g) else { continue };
                let mapped = self
                    .target
                    .compose(self.morphism_map[f], self.morphism_map[g]);
                if mapped != Some(self.morphism_map[gf]) {
                    report.push("functor-composition", &[f, g]);
                    break 'comp;
                }
            }
        }
        report
    }

    /// Every target object connects to the image of some source object.
    pub fn is_essentially_surjective(&self) -> bool {
        let labels = self.target.component_labels();
        let mut hit = vec![false; self.target.object_ring().size()];
        for &c in &self.object_map {
            hit[labels[c]] = true;
        }
        self.target
            .object_ring()
            .elements()
            .all(|c| hit[labels[c]])
    }

    /// Every hom-set maps bijectively onto the corresponding target hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let objs = self.source.object_ring().size();
        for a in 0..objs {
            for b in 0..objs {
                let dom = self.source.hom_set(a, b);
                let mut image: Vec<Elem> =
                    dom.iter().map(|&f| self.morphism_map[f]).collect();
                image.sort_unstable();
                let before = image.len();
                image.dedup();
                if image.len() != before {
                    return false;
                }
                let codom = self.target.hom_set(self.object_map[a], self.object_map[b]);
                if image != codom {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_essentially_surjective() && self.is_fully_faithful()
    }
}

/// The functor of cone groupoids induced by a quasi-ideal morphism:
/// objects by the ring map, morphism `(c, x)` to `(ring(c), module(x))`.
pub fn cone_functor(phi: &QMorphism) -> GroupoidFunctor {
    let source = cone(phi.source());
    let target = cone(phi.target());
    let ni_src = phi.source().module().size();
    let ni_tgt = phi.target().module().size();
    let object_map = phi.ring_map().to_vec();
    let morphism_map = (0..source.morphism_ring().size())
        .map(|p| {
            let (c, x) = crate::unpair_index(p, ni_src);
            pair_index(phi.apply_ring(c), phi.apply_module(x), ni_tgt)
        })
        .collect();
    let functor = GroupoidFunctor { source, target, object_map, morphism_map };
    debug_assert!(functor.validate().ok());
    functor
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::instances;
    use crate::simplicial::truncated_polynomial_example;

    #[test]
    fn cone_of_z4_double_matches_the_pinned_shape() {
        let q = instances::z4_double();
        let g = cone(&q);
        assert_eq!(g.object_ring().size(), 4);
        assert_eq!(g.morphism_ring().size(), 16);
        assert!(g.validate().ok());
        // Morphism (c, x) indexed 4c + x runs c -> c + 2x.
        let f11 = pair_index(1, 1, 4);
        assert_eq!(g.source_of(f11), 1);
        assert_eq!(g.target_of(f11), 3);
        // (3,1) ∘ (1,1) = (1,2).
        let f31 = pair_index(3, 1, 4);
        assert_eq!(g.compose(f11, f31), Some(pair_index(1, 2, 4)));
        // Non-composable pairs stay undefined.
        assert_eq!(g.compose(f11, f11), None);
        // Inverse of (1,1) is (3,3).
        assert_eq!(g.inverse_morphism(f11), pair_index(3, 3, 4));
    }

    #[test]
    fn cone_components_and_automorphisms_match_homotopy_rings() {
        let q = instances::z4_double();
        let g = cone(&q);
        let (pi0, proj) = q.pi0();
        assert_eq!(g.component_count(), pi0.size());
        // Component labels agree with least representatives of pi0 classes.
        let labels = g.component_labels();
        for c in 0..4 {
            let least = (0..4).find(|&c2| proj.apply(c2) == proj.apply(c)).unwrap();
            assert_eq!(labels[c], least);
        }
        // Aut(c) is Ker d via x -> (c, x), compatibly with composition.
        let pi1 = q.pi1();
        for c in 0..4 {
            let auts = g.automorphisms(c);
            let expected: Vec<Elem> = pi1
                .elements
                .iter()
                .map(|&x| pair_index(c, x, 4))
                .collect();
            assert_eq!(auts, expected);
            assert_eq!(auts.len(), 2);
            for &x in &pi1.elements {
                for &y in &pi1.elements {
                    let composed = g
                        .compose(pair_index(c, x, 4), pair_index(c, y, 4))
                        .unwrap();
                    assert_eq!(composed, pair_index(c, q.module().add(x, y), 4));
                }
            }
        }
    }

    #[test]
    fn nerve_composition_needs_goodness() {
        let t = truncated_polynomial_example();
        match composition_from_truncation(&t) {
            Err(Error::NotGood(2, 2)) => {}
            other => panic!("expected kernel witness (x, x), got {other:?}"),
        }
        // The raw nerve table itself fails multiplicativity.
        let comp = nerve_composition_table(&t);
        let candidate = InternalRingGroupoid {
            src: t.d0().clone(),
            tgt: t.d1().clone(),
            ident: t.s().clone(),
            comp,
        };
        assert!(!candidate.multiplicativity_report().ok());
        let good = q_to_simplicial(&instances::z4_double());
        assert!(composition_from_truncation(&good).is_ok());
    }

    #[test]
    fn identity_functor_is_an_equivalence() {
        let q = instances::z4_double();
        let phi = QMorphism::identity(&q);
        let functor = cone_functor(&phi);
        assert!(functor.validate().ok());
        assert!(functor.is_equivalence());
    }

    #[test]
    fn collapse_functor_detects_non_equivalence() {
        // Inclusion of (Z/4, 0, 0) into (Z/4, Z/4, double) is not a
        // quasi-isomorphism and its cone functor is not fully faithful.
        let ring = crate::ring::FiniteRing::cyclic(4).unwrap();
        let zero_sub = QuasiIdeal::new(
            crate::module::FiniteModule::zero_module(ring.clone()),
            vec![ring.zero()],
        )
        .unwrap();
        let target = instances::z4_double();
        let phi = QMorphism::new(zero_sub, target, vec![0, 1, 2, 3], vec![0]).unwrap();
        assert!(!phi.is_quasi_iso());
        let functor = cone_functor(&phi);
        assert!(functor.validate().ok());
        assert!(functor.is_essentially_surjective() == phi.quasi_iso_report().violation("cokernel-not-surjective").is_none());
        assert!(!functor.is_fully_faithful());
        assert!(!functor.is_equivalence());
    }
}
