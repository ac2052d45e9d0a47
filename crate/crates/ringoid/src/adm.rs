//! Admissibilization: completing a correspondence whose left leg is a
//! quasi-isomorphism to an admissible one, universally.
//!
//! Two constructions are provided. The general one pushes the apex out along
//! the paired leg map by an explicit extension-and-quotient of carriers; for
//! weakly admissible correspondences a quotient shortcut exists, and the two
//! agree up to canonical isomorphism. A third construction turns a plain
//! morphism of quasi-ideals into an admissible correspondence directly, with
//! a preferred splitting of the left leg.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::butterfly::{from_butterfly, Butterfly};
use crate::corr::{
    compose, corr_iso_search, partial_module_map_consistent, search_module_maps,
    search_ring_maps, CorrClass, DGCorrespondence,
};
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::quasi::{product_quasi_ideal, QMorphism, QuasiIdeal};
use crate::ring::{
    partial_map_consistent, quotient_ring, Elem, FiniteRing, Ideal, RingHom,
};
use crate::{pair_index, unpair_index};

/// The result of admissibilizing: the admissible correspondence together
/// with the unit morphism from the original apex into the new one.
#[derive(Clone, Debug)]
pub struct Admissibilized {
    pub corr: DGCorrespondence,
    pub unit: QMorphism,
}

/// Universal admissibilization of a correspondence whose left leg is a
/// quasi-isomorphism.
///
/// The apex `(C12, I12)` maps to the product of the feet through the paired
/// legs. The new apex ring is the quotient of a square-zero style extension
/// of `C12` by `I1 x I2` modulo the graph of the differential, and the new
/// module is `I1 x I2` itself, so the paired module map of the result is the
/// identity.
pub fn admissibilize(corr: &DGCorrespondence, budget: &Budget) -> Result<Admissibilized> {
    if corr.classify() < CorrClass::EquivalenceLeg {
        return Err(Error::Precondition(
            "admissibilization needs a left quasi-isomorphism".into(),
        ));
    }
    let apex = corr.apex();
    let (product, foot1, foot2) = product_quasi_ideal(corr.r1(), corr.r2());
    let nc2 = corr.r2().ring().size();
    let ni2 = corr.r2().module().size();
    // The paired leg morphism into the product of the feet.
    let pairing_ring: Vec<Elem> = apex
        .ring()
        .elements()
        .map(|r| pair_index(corr.left().apply_ring(r), corr.right().apply_ring(r), nc2))
        .collect();
    let pairing_module: Vec<Elem> = apex
        .module()
        .elements()
        .map(|x| {
            pair_index(
                corr.left().apply_module(x),
                corr.right().apply_module(x),
                ni2,
            )
        })
        .collect();
    let pairing = QMorphism::new(
        apex.clone(),
        product.clone(),
        pairing_ring,
        pairing_module,
    )
    .expect("paired legs form a morphism into the product");

    budget.check_carrier(
        apex.ring().size() * product.module().size(),
        "admissibilization extension ring",
    )?;
    let extension = extension_ring(apex.ring(), &product, &pairing);
    // The graph of the differential inside the extension. Its size matches
    // the apex module because a left quasi-isomorphism separates the
    // differential kernel from the pairing kernel.
    let il = product.module().size();
    let mut graph: Vec<Elem> = apex
        .module()
        .elements()
        .map(|x| {
            pair_index(
                apex.d(x),
                product.module().neg(pairing.apply_module(x)),
                il,
            )
        })
        .collect();
    graph.sort_unstable();
    graph.dedup();
    if graph.len() != apex.module().size() {
        return Err(Error::Precondition(
            "differential graph collapses; the left leg is not a quasi-isomorphism".into(),
        ));
    }
    let ideal = Ideal::new(extension.clone(), &graph)?;
    let (new_ring, proj) = quotient_ring(&extension, &ideal);

    // Augmentation of the quotient into the product foot ring, sending the
    // class of (r, y) to pairing(r) + d(y).
    let reps = coset_representatives(&proj, new_ring.size());
    let augment_map: Vec<Elem> = reps
        .iter()
        .map(|&e| {
            let (r, y) = unpair_index(e, il);
            product
                .ring()
                .add(pairing.apply_ring(r), product.d(y))
        })
        .collect();
    let augment = RingHom::new(new_ring.clone(), product.ring().clone(), augment_map)
        .expect("augmentation is a ring homomorphism");
    let new_module = product.module().restrict(&augment);
    let d_tilde: Vec<Elem> = new_module
        .elements()
        .map(|y| proj.apply(pair_index(apex.ring().zero(), y, il)))
        .collect();
    let new_apex = QuasiIdeal::new(new_module, d_tilde)?;

    let left = QMorphism::new(
        new_apex.clone(),
        corr.r1().clone(),
        augment.then(foot1.ring_hom()).map().to_vec(),
        foot1.module_map().to_vec(),
    )?;
    let right = QMorphism::new(
        new_apex.clone(),
        corr.r2().clone(),
        augment.then(foot2.ring_hom()).map().to_vec(),
        foot2.module_map().to_vec(),
    )?;
    let unit = QMorphism::new(
        apex.clone(),
        new_apex.clone(),
        apex.ring()
            .elements()
            .map(|r| proj.apply(pair_index(r, product.module().zero(), il)))
            .collect(),
        pairing.module_map().to_vec(),
    )?;
    let out = DGCorrespondence::new(left, right)?;
    debug_assert_eq!(out.classify(), CorrClass::Admissible);
    Ok(Admissibilized { corr: out, unit })
}

/// The commutative ring on `C12 x (I1 x I2)` with product
/// `(r, y)(r', y') = (r r', phi(r) y' + phi(r') y + d(y) y')`,
/// where `phi` is the paired leg map and the last term is the derived
/// product of the foot product.
fn extension_ring(
    c12: &Arc<FiniteRing>,
    product: &Arc<QuasiIdeal>,
    pairing: &QMorphism,
) -> Arc<FiniteRing> {
    let il = product.module();
    let n = c12.size() * il.size();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for e in 0..n {
        let (r, y) = unpair_index(e, il.size());
        for e2 in 0..n {
            let (r2, y2) = unpair_index(e2, il.size());
            add[e * n + e2] = pair_index(c12.add(r, r2), il.add(y, y2), il.size());
            let twist = il.add(
                il.add(
                    il.act(pairing.apply_ring(r), y2),
                    il.act(pairing.apply_ring(r2), y),
                ),
                product.derived_product(y, y2),
            );
            mul[e * n + e2] = pair_index(c12.mul(r, r2), twist, il.size());
        }
    }
    let neg = (0..n)
        .map(|e| {
            let (r, y) = unpair_index(e, il.size());
            pair_index(c12.neg(r), il.neg(y), il.size())
        })
        .collect();
    let zero = pair_index(c12.zero(), il.zero(), il.size());
    let one = pair_index(c12.one(), il.zero(), il.size());
    FiniteRing::from_parts(n, add, mul, neg, zero, one)
}

/// Least representative of each coset of a quotient projection.
fn coset_representatives(proj: &RingHom, cosets: usize) -> Vec<Elem> {
    let mut reps = vec![usize::MAX; cosets];
    for e in proj.domain().elements() {
        let k = proj.apply(e);
        if reps[k] == usize::MAX {
            reps[k] = e;
        }
    }
    reps
}

/// Quotient shortcut for weakly admissible correspondences: divide the apex
/// by the kernel of the paired module map and its differential image. Agrees
/// with `admissibilize` up to canonical isomorphism.
pub fn admissibilize_weak(corr: &DGCorrespondence, budget: &Budget) -> Result<Admissibilized> {
    if corr.classify() < CorrClass::WeaklyAdmissible {
        return Err(Error::Precondition(
            "the quotient shortcut needs a weakly admissible correspondence".into(),
        ));
    }
    let apex = corr.apex();
    budget.check_carrier(apex.ring().size(), "weak admissibilization apex")?;
    if !corr.left().is_surjective_both_degrees() {
        return Err(Error::Precondition(
            "weak admissibility should force a degreewise surjective left leg".into(),
        ));
    }
    let pair_map = corr.pair_map();
    let ni2 = corr.r2().module().size();
    let zero_pair = pair_index(
        corr.r1().module().zero(),
        corr.r2().module().zero(),
        ni2,
    );
    let kernel: Vec<Elem> = apex
        .module()
        .elements()
        .filter(|&x| pair_map[x] == zero_pair)
        .collect();
    let mut image: Vec<Elem> = kernel.iter().map(|&x| apex.d(x)).collect();
    image.sort_unstable();
    image.dedup();
    if image.len() != kernel.len() {
        return Err(Error::Precondition(
            "pair-map kernel must be acyclic for the quotient shortcut".into(),
        ));
    }
    let ideal = Ideal::new(apex.ring().clone(), &image)?;
    let (new_ring, ring_proj) = quotient_ring(apex.ring(), &ideal);
    let (quot_over_old, module_proj) = crate::module::quotient_module(apex.module(), &kernel);
    // Descend the base of the quotient module from C12 to its quotient.
    let ring_reps = coset_representatives(&ring_proj, new_ring.size());
    let m = quot_over_old.size();
    let mut action = vec![0; new_ring.size() * m];
    for k in new_ring.elements() {
        for x in 0..m {
            action[k * m + x] = quot_over_old.act(ring_reps[k], x);
        }
    }
    let new_module = FiniteModule::from_parts(
        new_ring.clone(),
        m,
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| quot_over_old.add(x, y))
            .collect(),
        (0..m).map(|x| quot_over_old.neg(x)).collect(),
        quot_over_old.zero(),
        action,
    );
    let module_reps: Vec<Elem> = {
        let mut reps = vec![usize::MAX; m];
        for x in apex.module().elements() {
            let k = module_proj.apply(x);
            if reps[k] == usize::MAX {
                reps[k] = x;
            }
        }
        reps
    };
    let d_new: Vec<Elem> = (0..m)
        .map(|x| ring_proj.apply(apex.d(module_reps[x])))
        .collect();
    let new_apex = QuasiIdeal::new(new_module, d_new)?;
    let left = QMorphism::new(
        new_apex.clone(),
        corr.r1().clone(),
        ring_reps
            .iter()
            .map(|&r| corr.left().apply_ring(r))
            .collect(),
        module_reps
            .iter()
            .map(|&x| corr.left().apply_module(x))
            .collect(),
    )?;
    let right = QMorphism::new(
        new_apex.clone(),
        corr.r2().clone(),
        ring_reps
            .iter()
            .map(|&r| corr.right().apply_ring(r))
            .collect(),
        module_reps
            .iter()
            .map(|&x| corr.right().apply_module(x))
            .collect(),
    )?;
    let unit = QMorphism::new(
        apex.clone(),
        new_apex.clone(),
        ring_proj.map().to_vec(),
        module_proj.map().to_vec(),
    )?;
    let out = DGCorrespondence::new(left, right)?;
    debug_assert_eq!(out.classify(), CorrClass::Admissible);
    Ok(Admissibilized { corr: out, unit })
}

/// A morphism of quasi-ideals presented as an admissible correspondence,
/// with its butterfly and the canonical splitting of the left leg.
#[derive(Clone, Debug)]
pub struct HomCell {
    pub butterfly: Butterfly,
    pub corr: DGCorrespondence,
    /// Section of the left leg with `right ∘ splitting` equal to the
    /// original morphism.
    pub splitting: QMorphism,
}

/// Builds the admissible correspondence of a morphism `phi: R1 -> R2`
/// directly: `K` is the square-zero style extension of `C1` by `I2` along
/// `phi`, with wings `h1(z) = (d1 z, -phi z)` and `h2(y) = (0, y)`.
pub fn adm_of_hom(phi: &QMorphism) -> HomCell {
    let r1 = phi.source().clone();
    let r2 = phi.target().clone();
    let c1 = r1.ring();
    let i2 = r2.module();
    let ni2 = i2.size();
    let n = c1.size() * ni2;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for e in 0..n {
        let (x, y) = unpair_index(e, ni2);
        for e2 in 0..n {
            let (x2, y2) = unpair_index(e2, ni2);
            add[e * n + e2] = pair_index(c1.add(x, x2), i2.add(y, y2), ni2);
            let twist = i2.add(
                i2.add(
                    i2.act(phi.apply_ring(x), y2),
                    i2.act(phi.apply_ring(x2), y),
                ),
                r2.derived_product(y, y2),
            );
            mul[e * n + e2] = pair_index(c1.mul(x, x2), twist, ni2);
        }
    }
    let neg = (0..n)
        .map(|e| {
            let (x, y) = unpair_index(e, ni2);
            pair_index(c1.neg(x), i2.neg(y), ni2)
        })
        .collect();
    let zero = pair_index(c1.zero(), i2.zero(), ni2);
    let one = pair_index(c1.one(), i2.zero(), ni2);
    let k = FiniteRing::from_parts(n, add, mul, neg, zero, one);

    let f0 = RingHom::new(
        k.clone(),
        c1.clone(),
        (0..n).map(|e| unpair_index(e, ni2).0).collect(),
    )
    .expect("first projection is a hom");
    let g0 = RingHom::new(
        k.clone(),
        r2.ring().clone(),
        (0..n)
            .map(|e| {
                let (x, y) = unpair_index(e, ni2);
                r2.ring().add(phi.apply_ring(x), r2.d(y))
            })
            .collect(),
    )
    .expect("twisted projection is a hom");
    let h1 = r1
        .module()
        .elements()
        .map(|z| pair_index(r1.d(z), i2.neg(phi.apply_module(z)), ni2))
        .collect();
    let h2 = i2.elements().map(|y| pair_index(c1.zero(), y, ni2)).collect();
    let butterfly = Butterfly::from_parts(r1.clone(), r2.clone(), f0, g0, h1, h2);
    let corr = from_butterfly(&butterfly);

    let splitting_ring: Vec<Elem> = c1
        .elements()
        .map(|c| pair_index(c, i2.zero(), ni2))
        .collect();
    let splitting_module: Vec<Elem> = r1
        .module()
        .elements()
        .map(|z| pair_index(z, phi.apply_module(z), ni2))
        .collect();
    let splitting = QMorphism::new(r1, corr.apex().clone(), splitting_ring, splitting_module)
        .expect("canonical splitting is a morphism");
    debug_assert!({
        let roundtrip = splitting.then(corr.left());
        roundtrip.ring_map() == QMorphism::identity(phi.source()).ring_map()
            && roundtrip.module_map() == QMorphism::identity(phi.source()).module_map()
    });
    HomCell { butterfly, corr, splitting }
}

/// The identity 1-cell on a quasi-ideal.
pub fn identity_cell(q: &Arc<QuasiIdeal>) -> HomCell {
    adm_of_hom(&QMorphism::identity(q))
}

/// Memoizes identity cells per quasi-ideal, keyed structurally.
#[derive(Default)]
pub struct IdentityCache {
    cells: HashMap<Arc<QuasiIdeal>, DGCorrespondence>,
}

impl IdentityCache {
    pub fn new() -> IdentityCache {
        IdentityCache::default()
    }

    pub fn get(&mut self, q: &Arc<QuasiIdeal>) -> DGCorrespondence {
        self.cells
            .entry(q.clone())
            .or_insert_with(|| identity_cell(q).corr)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// All splittings of the left leg: morphisms `s: R1 -> apex` with
/// `left ∘ s = id`. Lexicographic order of (ring map, module map).
pub fn enumerate_splittings(
    corr: &DGCorrespondence,
    budget: &Budget,
) -> Result<Vec<QMorphism>> {
    let r1 = corr.r1();
    let apex = corr.apex();
    let c1 = r1.ring().clone();
    let c12 = apex.ring().clone();
    let ring_candidates: Vec<Vec<Elem>> = c1
        .elements()
        .map(|c| {
            c12.elements()
                .filter(|&r| corr.left().apply_ring(r) == c)
                .collect()
        })
        .collect();
    let mut guard = budget.guard("splitting enumeration");
    let mut ring_maps = Vec::new();
    {
        let mut img: Vec<Option<Elem>> = vec![None; c1.size()];
        img[c1.one()] = Some(c12.one());
        if img[c1.zero()].is_none() {
            img[c1.zero()] = Some(c12.zero());
        }
        let presets_ok = ring_candidates[c1.one()].contains(&c12.one())
            && ring_candidates[c1.zero()].contains(&c12.zero());
        if presets_ok && partial_map_consistent(&c1, &c12, &img) {
            search_ring_maps(&c1, &c12, &ring_candidates, 0, &mut img, &mut guard, &mut ring_maps)?;
        }
    }
    let i1 = r1.module();
    let module_candidates: Vec<Vec<Elem>> = i1
        .elements()
        .map(|z| {
            apex.module()
                .elements()
                .filter(|&x| corr.left().apply_module(x) == z)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for ring_map in ring_maps {
        let mut img: Vec<Option<Elem>> = vec![None; i1.size()];
        img[i1.zero()] = Some(apex.module().zero());
        if !module_candidates[i1.zero()].contains(&apex.module().zero())
            || !partial_module_map_consistent(r1, apex, &ring_map, &img)
        {
            continue;
        }
        let mut module_maps = Vec::new();
        search_module_maps(
            r1,
            apex,
            &ring_map,
            &module_candidates,
            0,
            &mut img,
            &mut guard,
            &mut module_maps,
        )?;
        for module_map in module_maps {
            out.push(
                QMorphism::new(r1.clone(), apex.clone(), ring_map.clone(), module_map)
                    .expect("search enforces the morphism laws"),
            );
        }
    }
    Ok(out)
}

/// All ring-level sections of a leg map `f0`: homomorphisms
/// `sigma: C1 -> C12` with `f0 ∘ sigma = id`.
pub fn degree0_sections(f0: &RingHom, budget: &Budget) -> Result<Vec<RingHom>> {
    let c1 = f0.codomain().clone();
    let c12 = f0.domain().clone();
    let candidates: Vec<Vec<Elem>> = c1
        .elements()
        .map(|c| c12.elements().filter(|&r| f0.apply(r) == c).collect())
        .collect();
    let mut guard = budget.guard("degree-0 section enumeration");
    let mut maps = Vec::new();
    let mut img: Vec<Option<Elem>> = vec![None; c1.size()];
    img[c1.one()] = Some(c12.one());
    if img[c1.zero()].is_none() {
        img[c1.zero()] = Some(c12.zero());
    }
    let presets_ok = candidates[c1.one()].contains(&c12.one())
        && candidates[c1.zero()].contains(&c12.zero());
    if presets_ok && partial_map_consistent(&c1, &c12, &img) {
        search_ring_maps(&c1, &c12, &candidates, 0, &mut img, &mut guard, &mut maps)?;
    }
    maps.into_iter()
        .map(|map| RingHom::new(c1.clone(), c12.clone(), map))
        .collect()
}

/// Composes two weakly admissible correspondences and admissibilizes the
/// result through the quotient shortcut.
pub fn an_compose(
    a: &DGCorrespondence,
    b: &DGCorrespondence,
    budget: &Budget,
) -> Result<DGCorrespondence> {
    let composite = compose(a, b)?;
    Ok(admissibilize_weak(&composite, budget)?.corr)
}

/// Checks that two correspondences over the same feet are isomorphic.
pub fn isomorphic(a: &DGCorrespondence, b: &DGCorrespondence, budget: &Budget) -> Result<bool> {
    Ok(corr_iso_search(a, b, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::graph_corr;
    use crate::quasi::instances;

    fn wide_budget() -> Budget {
        Budget { max_carrier: 4096, max_search: 10_000_000 }
    }

    fn strictly_weak_example() -> DGCorrespondence {
        // Feet (Z/2, 0, 0) on both sides, apex (Z/4, Z/2, d(1) = 2): the
        // pair map hits the one-point product but is not injective.
        let z2 = crate::ring::FiniteRing::cyclic(2).unwrap();
        let foot = QuasiIdeal::new(FiniteModule::zero_module(z2.clone()), vec![0]).unwrap();
        let z4 = crate::ring::FiniteRing::cyclic(4).unwrap();
        let module = {
            let add = vec![vec![0, 1], vec![1, 0]];
            let action: Vec<Vec<Elem>> = (0..4).map(|c| vec![0, c % 2]).collect();
            FiniteModule::new(z4.clone(), &add, &action).unwrap()
        };
        let apex = QuasiIdeal::new(module, vec![0, 2]).unwrap();
        let leg = QMorphism::new(apex.clone(), foot.clone(), vec![0, 1, 0, 1], vec![0, 0]).unwrap();
        DGCorrespondence::new(leg.clone(), leg).unwrap()
    }

    #[test]
    fn quotient_shortcut_matches_the_pushout() {
        let corr = strictly_weak_example();
        assert_eq!(corr.classify(), CorrClass::WeaklyAdmissible);
        let by_quotient = admissibilize_weak(&corr, &wide_budget()).unwrap();
        let by_pushout = admissibilize(&corr, &wide_budget()).unwrap();
        assert_eq!(by_quotient.corr.classify(), CorrClass::Admissible);
        assert_eq!(by_pushout.corr.classify(), CorrClass::Admissible);
        assert!(isomorphic(&by_quotient.corr, &by_pushout.corr, &wide_budget()).unwrap());
        // Unit maps land compatibly: both apexes receive the original one.
        assert_eq!(by_quotient.unit.source(), corr.apex());
        assert_eq!(by_pushout.unit.source(), corr.apex());
    }

    #[test]
    fn hom_cell_matches_the_admissibilized_graph() {
        let q = instances::cyclic_with_scaling(2, 0);
        let ident = QMorphism::identity(&q);
        let cell = adm_of_hom(&ident);
        assert_eq!(cell.corr.classify(), CorrClass::Admissible);
        assert!(cell.butterfly.validate().ok());
        let graph = graph_corr(&ident);
        let admissibilized = admissibilize(&graph, &wide_budget()).unwrap();
        let isos: Vec<QMorphism> =
            crate::corr::enumerate_corr_morphisms(&admissibilized.corr, &cell.corr, &wide_budget())
                .unwrap()
                .into_iter()
                .filter(|m| m.is_bijective_both_degrees())
                .collect();
        assert_eq!(isos.len(), 1, "the comparison isomorphism is unique");
    }

    #[test]
    fn splittings_restrict_to_degree_zero_sections() {
        let q = instances::z4_double();
        let cell = identity_cell(&q);
        let splittings = enumerate_splittings(&cell.corr, &wide_budget()).unwrap();
        let sections = degree0_sections(cell.corr.left().ring_hom(), &wide_budget()).unwrap();
        assert!(!splittings.is_empty());
        assert_eq!(splittings.len(), sections.len());
        // The canonical splitting shows up in the enumeration.
        assert!(splittings
            .iter()
            .any(|s| s.ring_map() == cell.splitting.ring_map()
                && s.module_map() == cell.splitting.module_map()));
    }

    #[test]
    fn admissible_without_any_splitting() {
        // Left foot (Z/2, 0, 0), apex (Z/4, Z/2, d(1) = 2): admissible onto
        // the right foot equal to the apex, yet Z/2 has no ring-theoretic
        // section into Z/4.
        let z2 = crate::ring::FiniteRing::cyclic(2).unwrap();
        let foot = QuasiIdeal::new(FiniteModule::zero_module(z2.clone()), vec![0]).unwrap();
        let z4 = crate::ring::FiniteRing::cyclic(4).unwrap();
        let module = {
            let add = vec![vec![0, 1], vec![1, 0]];
            let action: Vec<Vec<Elem>> = (0..4).map(|c| vec![0, c % 2]).collect();
            FiniteModule::new(z4.clone(), &add, &action).unwrap()
        };
        let apex = QuasiIdeal::new(module, vec![0, 2]).unwrap();
        let left = QMorphism::new(apex.clone(), foot, vec![0, 1, 0, 1], vec![0, 0]).unwrap();
        let right = QMorphism::identity(&apex);
        let corr = DGCorrespondence::new(left, right).unwrap();
        assert_eq!(corr.classify(), CorrClass::Admissible);
        assert!(enumerate_splittings(&corr, &wide_budget()).unwrap().is_empty());
        assert!(degree0_sections(corr.left().ring_hom(), &wide_budget())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn identity_cells_compose_to_identity_cells() {
        let q = instances::cyclic_with_scaling(2, 0);
        let mut cache = IdentityCache::new();
        let cell = cache.get(&q);
        let cell_again = cache.get(&q);
        assert_eq!(cache.len(), 1);
        assert_eq!(cell, cell_again);
        let composed = an_compose(&cell, &cell, &wide_budget()).unwrap();
        assert!(isomorphic(&composed, &cell, &wide_budget()).unwrap());
    }

    #[test]
    fn inverting_an_equivalence_gives_an_inverse_cell() {
        let q = instances::cyclic_with_scaling(2, 0);
        let cell = identity_cell(&q).corr;
        let inverse = cell.invert().unwrap();
        let roundtrip = an_compose(&cell, &inverse, &wide_budget()).unwrap();
        assert!(isomorphic(&roundtrip, &identity_cell(&q).corr, &wide_budget()).unwrap());
    }
}
