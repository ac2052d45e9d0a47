//! Correspondences between quasi-ideals: spans `R1 <- R12 -> R2`, their
//! classification, composition by fiber product, and morphisms between
//! correspondences with fixed feet.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pair_index;
use crate::quasi::{fiber_product, QMorphism, QuasiIdeal};
use crate::ring::{partial_map_consistent, Elem};

/// A span of quasi-ideal morphisms sharing an apex.
#[derive(Clone, PartialEq, Debug)]
pub struct DGCorrespondence {
    left: QMorphism,
    right: QMorphism,
}

/// Classification of a correspondence, weakest to strongest. Each class
/// contains the next: every admissible correspondence is weakly admissible,
/// every weakly admissible one is an anamorphism, and every anamorphism has
/// a quasi-isomorphism as its left leg.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CorrClass {
    /// No condition beyond being a span.
    Plain,
    /// The left leg is a quasi-isomorphism.
    EquivalenceLeg,
    /// The left leg is a quasi-isomorphism surjective in both degrees.
    Anamorphism,
    /// Equivalence leg whose paired module map `I12 -> I1 x I2` is
    /// surjective.
    WeaklyAdmissible,
    /// Equivalence leg whose paired module map `I12 -> I1 x I2` is
    /// bijective.
    Admissible,
}

impl std::fmt::Display for CorrClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CorrClass::Plain => "plain",
            CorrClass::EquivalenceLeg => "equivalence-leg",
            CorrClass::Anamorphism => "anamorphism",
            CorrClass::WeaklyAdmissible => "weakly-admissible",
            CorrClass::Admissible => "admissible",
        };
        f.write_str(name)
    }
}

impl DGCorrespondence {
    pub fn new(left: QMorphism, right: QMorphism) -> Result<DGCorrespondence> {
        if left.source() != right.source() {
            return Err(Error::Precondition(
                "the two legs of a correspondence must share their apex".into(),
            ));
        }
        Ok(DGCorrespondence { left, right })
    }

    pub fn apex(&self) -> &Arc<QuasiIdeal> {
        self.left.source()
    }

    pub fn r1(&self) -> &Arc<QuasiIdeal> {
        self.left.target()
    }

    pub fn r2(&self) -> &Arc<QuasiIdeal> {
        self.right.target()
    }

    pub fn left(&self) -> &QMorphism {
        &self.left
    }

    pub fn right(&self) -> &QMorphism {
        &self.right
    }

    /// The paired module map `I12 -> I1 x I2`, with pairs indexed row-major
    /// by the size of `I2`.
    pub fn pair_map(&self) -> Vec<Elem> {
        let ni2 = self.r2().module().size();
        self.apex()
            .module()
            .elements()
            .map(|x| pair_index(self.left.apply_module(x), self.right.apply_module(x), ni2))
            .collect()
    }

    fn pair_map_is_surjective(&self) -> bool {
        let total = self.r1().module().size() * self.r2().module().size();
        let mut hit = vec![false; total];
        for p in self.pair_map() {
            hit[p] = true;
        }
        hit.into_iter().all(|h| h)
    }

    fn pair_map_is_bijective(&self) -> bool {
        self.apex().module().size() == self.r1().module().size() * self.r2().module().size()
            && self.pair_map_is_surjective()
    }

    /// The strongest class label the correspondence satisfies.
    pub fn classify(&self) -> CorrClass {
        if !self.left.is_quasi_iso() {
            return CorrClass::Plain;
        }
        if self.pair_map_is_bijective() {
            return CorrClass::Admissible;
        }
        if self.pair_map_is_surjective() {
            return CorrClass::WeaklyAdmissible;
        }
        if self.left.is_surjective_both_degrees() {
            return CorrClass::Anamorphism;
        }
        CorrClass::EquivalenceLeg
    }

    pub fn is_admissible(&self) -> bool {
        self.classify() >= CorrClass::Admissible
    }

    pub fn is_weakly_admissible(&self) -> bool {
        self.classify() >= CorrClass::WeaklyAdmissible
    }

    /// Swaps the legs. Only correspondences whose right leg is a
    /// quasi-isomorphism invert; anything else reports the obstruction.
    pub fn invert(&self) -> Result<DGCorrespondence> {
        let report = self.right.quasi_iso_report();
        if !report.ok() {
            return Err(Error::invalid("inversion needs a right quasi-isomorphism", report));
        }
        DGCorrespondence::new(self.right.clone(), self.left.clone())
    }
}

/// The graph of a morphism: the span `R1 <- R1 -> R2` with identity left leg.
pub fn graph_corr(phi: &QMorphism) -> DGCorrespondence {
    let ident = QMorphism::identity(phi.source());
    DGCorrespondence::new(ident, phi.clone()).expect("legs share the apex")
}

/// Composes `a: R1 <-> R2` with `b: R2 <-> R3` by the degreewise fiber
/// product of `a`'s right leg with `b`'s left leg.
pub fn compose(a: &DGCorrespondence, b: &DGCorrespondence) -> Result<DGCorrespondence> {
    if a.r2() != b.r1() {
        return Err(Error::Precondition(
            "composition needs matching middle feet".into(),
        ));
    }
    let (_, pr_a, pr_b) = fiber_product(&a.right, &b.left)?;
    DGCorrespondence::new(pr_a.then(&a.left), pr_b.then(&b.right))
}

/// All morphisms of correspondences `a -> b` over the same feet: quasi-ideal
/// morphisms between the apexes commuting with both legs. Returned in
/// lexicographic order of (ring map, module map).
pub fn enumerate_corr_morphisms(
    a: &DGCorrespondence,
    b: &DGCorrespondence,
    budget: &Budget,
) -> Result<Vec<QMorphism>> {
    if a.r1() != b.r1() || a.r2() != b.r2() {
        return Err(Error::Precondition(
            "correspondence morphisms need identical feet".into(),
        ));
    }
    let ca = a.apex().ring().clone();
    let cb = b.apex().ring().clone();
    // Ring-level candidates: matching images under both foot maps.
    let ring_candidates: Vec<Vec<Elem>> = ca
        .elements()
        .map(|r| {
            cb.elements()
                .filter(|&r2| {
                    b.left.apply_ring(r2) == a.left.apply_ring(r)
                        && b.right.apply_ring(r2) == a.right.apply_ring(r)
                })
                .collect()
        })
        .collect();
    let mut guard = budget.guard("correspondence morphism enumeration");
    let mut ring_maps: Vec<Vec<Elem>> = Vec::new();
    {
        // A unital additive map is pinned on 1 and 0; both presets satisfy
        // the leg constraints because the legs are homomorphisms.
        let mut img: Vec<Option<Elem>> = vec![None; ca.size()];
        img[ca.one()] = Some(cb.one());
        if img[ca.zero()].is_none() {
            img[ca.zero()] = Some(cb.zero());
        }
        if partial_map_consistent(&ca, &cb, &img) {
            search_ring_maps(&ca, &cb, &ring_candidates, 0, &mut img, &mut guard, &mut ring_maps)?;
        }
    }
    let ia = a.apex().module();
    let ib = b.apex().module();
    let module_candidates: Vec<Vec<Elem>> = ia
        .elements()
        .map(|x| {
            ib.elements()
                .filter(|&y| {
                    b.left.apply_module(y) == a.left.apply_module(x)
                        && b.right.apply_module(y) == a.right.apply_module(x)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for ring_map in ring_maps {
        let mut img: Vec<Option<Elem>> = vec![None; ia.size()];
        img[ia.zero()] = Some(ib.zero());
        if !module_candidates[ia.zero()].contains(&ib.zero()) {
            continue;
        }
        let mut module_maps = Vec::new();
        search_module_maps(
            a.apex(),
            b.apex(),
            &ring_map,
            &module_candidates,
            0,
            &mut img,
            &mut guard,
            &mut module_maps,
        )?;
        for module_map in module_maps {
            let m = QMorphism::new(
                a.apex().clone(),
                b.apex().clone(),
                ring_map.clone(),
                module_map,
            )
            .expect("search enforces the morphism laws");
            out.push(m);
        }
    }
    Ok(out)
}

pub(crate) fn search_ring_maps(
    ca: &crate::ring::FiniteRing,
    cb: &crate::ring::FiniteRing,
    candidates: &[Vec<Elem>],
    from: Elem,
    img: &mut Vec<Option<Elem>>,
    guard: &mut crate::budget::SearchGuard,
    out: &mut Vec<Vec<Elem>>,
) -> Result<()> {
    let Some(x) = (from..ca.size()).find(|&x| img[x].is_none()) else {
        if partial_map_consistent(ca, cb, img) {
            out.push(img.iter().map(|o| o.expect("complete")).collect());
        }
        return Ok(());
    };
    for &y in &candidates[x] {
        guard.tick()?;
        img[x] = Some(y);
        if partial_map_consistent(ca, cb, img) {
            search_ring_maps(ca, cb, candidates, x + 1, img, guard, out)?;
        }
        img[x] = None;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn search_module_maps(
    qa: &Arc<QuasiIdeal>,
    qb: &Arc<QuasiIdeal>,
    ring_map: &[Elem],
    candidates: &[Vec<Elem>],
    from: Elem,
    img: &mut Vec<Option<Elem>>,
    guard: &mut crate::budget::SearchGuard,
    out: &mut Vec<Vec<Elem>>,
) -> Result<()> {
    let ia = qa.module();
    let Some(x) = (from..ia.size()).find(|&x| img[x].is_none()) else {
        out.push(img.iter().map(|o| o.expect("complete")).collect());
        return Ok(());
    };
    for &y in &candidates[x] {
        guard.tick()?;
        if qb.d(y) != ring_map[qa.d(x)] {
            continue;
        }
        img[x] = Some(y);
        if partial_module_map_consistent(qa, qb, ring_map, img) {
            search_module_maps(qa, qb, ring_map, candidates, x + 1, img, guard, out)?;
        }
        img[x] = None;
    }
    Ok(())
}

/// Full rescan of additivity and linearity on the assigned part of a partial
/// module map, including sums and scalings whose result slot was assigned
/// after its arguments.
pub(crate) fn partial_module_map_consistent(
    qa: &Arc<QuasiIdeal>,
    qb: &Arc<QuasiIdeal>,
    ring_map: &[Elem],
    img: &[Option<Elem>],
) -> bool {
    let ia = qa.module();
    let ib = qb.module();
    for x in ia.elements() {
        let Some(y) = img[x] else { continue };
        for x2 in ia.elements() {
            let Some(y2) = img[x2] else { continue };
            if let Some(ys) = img[ia.add(x, x2)] {
                if ys != ib.add(y, y2) {
                    return false;
                }
            }
        }
        for c in qa.ring().elements() {
            if let Some(yc) = img[ia.act(c, x)] {
                if yc != ib.act(ring_map[c], y) {
                    return false;
                }
            }
        }
    }
    true
}

/// First isomorphism of correspondences `a -> b`, if any.
pub fn corr_iso_search(
    a: &DGCorrespondence,
    b: &DGCorrespondence,
    budget: &Budget,
) -> Result<Option<QMorphism>> {
    let all = enumerate_corr_morphisms(a, b, budget)?;
    Ok(all.into_iter().find(|m| m.is_bijective_both_degrees()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::instances;

    fn identity_corr(q: &Arc<QuasiIdeal>) -> DGCorrespondence {
        graph_corr(&QMorphism::identity(q))
    }

    #[test]
    fn graph_of_identity_is_admissible_exactly_when_module_is_trivial() {
        // The graph span R <- R -> R has pair map x -> (x, x), which is
        // bijective only when I is a single point.
        let zero = instances::cyclic_with_scaling(4, 0);
        let graph = identity_corr(&zero);
        assert_eq!(graph.classify(), CorrClass::Anamorphism);
        let trivial = {
            let ring = crate::ring::FiniteRing::cyclic(4).unwrap();
            let module = crate::module::FiniteModule::zero_module(ring.clone());
            QuasiIdeal::new(module, vec![ring.zero()]).unwrap()
        };
        assert_eq!(identity_corr(&trivial).classify(), CorrClass::Admissible);
    }

    #[test]
    fn graph_correspondence_classifies_as_anamorphism() {
        // Identity left leg is surjective in both degrees, and the pair map
        // x -> (x, phi(x)) is injective but not surjective for |I2| > 1.
        let q = instances::z4_double();
        let corr = identity_corr(&q);
        assert_eq!(corr.classify(), CorrClass::Anamorphism);
    }

    #[test]
    fn composition_of_graphs_is_the_graph_of_the_composite() {
        let q = instances::z4_double();
        let ident = QMorphism::identity(&q);
        let a = graph_corr(&ident);
        let b = graph_corr(&ident);
        let ab = compose(&a, &b).unwrap();
        assert_eq!(ab.r1(), &q);
        assert_eq!(ab.r2(), &q);
        // Apex is the diagonal copy of R inside R x R, so same sizes.
        assert_eq!(ab.apex().ring().size(), 4);
        assert_eq!(ab.apex().module().size(), 4);
        let iso = corr_iso_search(&ab, &a, &Budget::default()).unwrap();
        assert!(iso.is_some(), "composite of identity graphs is the identity graph");
    }

    #[test]
    fn inversion_requires_a_right_quasi_iso() {
        let q = instances::z4_double();
        let plain = {
            let ring = crate::ring::FiniteRing::cyclic(4).unwrap();
            let module = crate::module::FiniteModule::zero_module(ring.clone());
            let apex = QuasiIdeal::new(module, vec![ring.zero()]).unwrap();
            let leg = QMorphism::new(apex.clone(), q.clone(), vec![0, 1, 2, 3], vec![0]).unwrap();
            DGCorrespondence::new(leg.clone(), leg).unwrap()
        };
        assert!(plain.invert().is_err());
        let ident = identity_corr(&q);
        let inverted = ident.invert().unwrap();
        assert_eq!(inverted.left().module_map(), ident.right().module_map());
    }

    #[test]
    fn corr_morphism_enumeration_respects_both_legs() {
        let q = instances::z4_double();
        let a = identity_corr(&q);
        let homs = enumerate_corr_morphisms(&a, &a, &Budget::default()).unwrap();
        // Any endomorphism over both identity legs is forced to be the
        // identity on the nose.
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_bijective_both_degrees());
    }
}
