//! Quasi-ideals: a finite module `I` over a ring `C` with a linear map
//! `d: I -> C` satisfying `d(x)·y = d(y)·x`, together with their morphisms,
//! homotopy invariants and degreewise fiber products.
//!
//! Equivalently, this is a two-term differential graded ring concentrated in
//! degrees 0 and -1; the defining law is exactly the graded Leibniz rule for
//! the (zero) product of two degree -1 elements.

use std::sync::Arc;

use crate::check::ValidationReport;
use crate::error::{Error, Result};
use crate::module::{
    pulled_product, submodule, FiniteModule, ModuleHom,
};
use crate::ring::{
    fiber_product_ring, quotient_ring, Elem, FiniteRing, Ideal, RingHom,
};
use crate::pair_index;

/// A validated quasi-ideal `(C, I, d)`. The ring is the base of the module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuasiIdeal {
    module: Arc<FiniteModule>,
    d: Vec<Elem>,
}

/// Scans a candidate differential for additivity, linearity over the base
/// ring and the defining law `d(x)·y = d(y)·x`. The module substrate is
/// assumed valid (the types enforce it); only `d` is in question.
pub fn validate_quasi_ideal(module: &FiniteModule, d: &[Elem]) -> Result<ValidationReport> {
    let ring = module.base();
    if d.len() != module.size() {
        return Err(Error::malformed(
            "quasi-ideal",
            format!("d has length {}, expected {}", d.len(), module.size()),
        ));
    }
    if let Some((x, &c)) = d.iter().enumerate().find(|&(_, &c)| c >= ring.size()) {
        return Err(Error::malformed(
            "quasi-ideal",
            format!("d[{x}] = {c} out of range 0..{}", ring.size()),
        ));
    }
    let mut report = ValidationReport::new();
    'add: for x in module.elements() {
        for y in module.elements() {
            if d[module.add(x, y)] != ring.add(d[x], d[y]) {
                report.push("d-additivity", &[x, y]);
                break 'add;
            }
        }
    }
    'lin: for c in ring.elements() {
        for x in module.elements() {
            if d[module.act(c, x)] != ring.mul(c, d[x]) {
                report.push("d-linearity", &[c, x]);
                break 'lin;
            }
        }
    }
    'law: for x in module.elements() {
        for y in module.elements() {
            if module.act(d[x], y) != module.act(d[y], x) {
                report.push("quasi-ideal-law", &[x, y]);
                break 'law;
            }
        }
    }
    Ok(report)
}

impl QuasiIdeal {
    pub fn new(module: Arc<FiniteModule>, d: Vec<Elem>) -> Result<Arc<QuasiIdeal>> {
        validate_quasi_ideal(&module, &d)?.into_result("quasi-ideal")?;
        Ok(Arc::new(QuasiIdeal { module, d }))
    }

    /// The quasi-ideal with zero module over `ring`.
    pub fn zero(ring: Arc<FiniteRing>) -> Arc<QuasiIdeal> {
        let z = ring.zero();
        QuasiIdeal::new(FiniteModule::zero_module(ring), vec![z]).expect("zero quasi-ideal")
    }

    /// An honest ideal as a quasi-ideal: the submodule inclusion is the
    /// differential.
    pub fn from_ideal(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Arc<QuasiIdeal> {
        assert_eq!(ideal.parent(), ring, "ideal of the wrong ring");
        let regular = FiniteModule::regular(ring.clone());
        let (sub, incl) = submodule(&regular, ideal.elements()).expect("ideals are submodules");
        QuasiIdeal::new(sub, incl.map().to_vec()).expect("an ideal satisfies the quasi-ideal law")
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.module.base()
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    #[inline]
    pub fn d(&self, x: Elem) -> Elem {
        self.d[x]
    }

    pub fn d_map(&self) -> &[Elem] {
        &self.d
    }

    /// The differential as a same-base module hom into the regular module.
    pub fn d_hom(&self) -> ModuleHom {
        ModuleHom::same_base(
            self.module.clone(),
            FiniteModule::regular(self.ring().clone()),
            self.d.clone(),
        )
        .expect("d is linear")
    }

    /// The binary operation `x • y = d(x)·y` induced on the module.
    #[inline]
    pub fn derived_product(&self, x: Elem, y: Elem) -> Elem {
        self.module.act(self.d[x], y)
    }

    /// Exhaustive commutativity and associativity scan of the derived
    /// product.
    pub fn derived_product_laws(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let m = &self.module;
        'comm: for x in m.elements() {
            for y in m.elements() {
                if self.derived_product(x, y) != self.derived_product(y, x) {
                    report.push("derived-product-commutativity", &[x, y]);
                    break 'comm;
                }
            }
        }
        'assoc: for x in m.elements() {
            for y in m.elements() {
                for z in m.elements() {
                    if self.derived_product(self.derived_product(x, y), z)
                        != self.derived_product(x, self.derived_product(y, z))
                    {
                        report.push("derived-product-associativity", &[x, y, z]);
                        break 'assoc;
                    }
                }
            }
        }
        report
    }

    /// Image of the differential, ascending. This subset is an ideal of the
    /// base ring.
    pub fn image_d_elements(&self) -> Vec<Elem> {
        let mut seen = vec![false; self.ring().size()];
        for &c in &self.d {
            seen[c] = true;
        }
        (0..self.ring().size()).filter(|&c| seen[c]).collect()
    }

    pub fn image_d_ideal(&self) -> Ideal {
        Ideal::new(self.ring().clone(), &self.image_d_elements())
            .expect("the image of d is an ideal by linearity")
    }

    /// Kernel of the differential, ascending.
    pub fn ker_d_elements(&self) -> Vec<Elem> {
        let z = self.ring().zero();
        self.module.elements().filter(|&x| self.d[x] == z).collect()
    }

    /// Degree-0 homotopy: the quotient ring `C / d(I)` with its projection.
    pub fn pi0(&self) -> (Arc<FiniteRing>, RingHom) {
        quotient_ring(self.ring(), &self.image_d_ideal())
    }

    /// Degree-(-1) homotopy: `Ker d` as a module over `pi0`. The action
    /// descends because `d(I)` annihilates `Ker d`, which is asserted.
    pub fn pi1(&self) -> Pi1 {
        let (pi0, proj) = self.pi0();
        let ker = self.ker_d_elements();
        let image = self.image_d_elements();
        for &t in &image {
            for &x in &ker {
                assert_eq!(
                    self.module.act(t, x),
                    self.module.zero(),
                    "d(I) must annihilate Ker d"
                );
            }
        }
        // Submodule of I on the kernel, then transport the action to pi0
        // representatives.
        let (sub, incl) = submodule(&self.module, &ker).expect("Ker d is a submodule");
        let n = sub.size();
        // Representative of each pi0 coset: least preimage.
        let mut rep = vec![usize::MAX; pi0.size()];
        for c in self.ring().elements() {
            let q = proj.apply(c);
            if rep[q] == usize::MAX {
                rep[q] = c;
            }
        }
        let mut action = vec![0; pi0.size() * n];
        for q in pi0.elements() {
            for x in 0..n {
                action[q * n + x] = incl
                    .map()
                    .iter()
                    .position(|&e| e == self.module.act(rep[q], incl.apply(x)))
                    .expect("kernel is action-stable");
            }
        }
        let mut add = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                add[x * n + y] = sub.add(x, y);
            }
        }
        let neg = (0..n).map(|x| sub.neg(x)).collect();
        let module = FiniteModule::from_parts(pi0.clone(), n, add, neg, sub.zero(), action);
        Pi1 {
            pi0,
            projection: proj,
            module,
            elements: ker,
        }
    }
}

/// Degree-(-1) homotopy data: `Ker d` as a module over `pi0(q)`.
pub struct Pi1 {
    pub pi0: Arc<FiniteRing>,
    pub projection: RingHom,
    pub module: Arc<FiniteModule>,
    /// Kernel elements inside the original module, in carrier order of
    /// `module`.
    pub elements: Vec<Elem>,
}

/// A morphism of quasi-ideals: a ring hom on degree 0 and a compatible
/// additive map on degree -1, linear over the ring part and intertwining the
/// differentials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMorphism {
    source: Arc<QuasiIdeal>,
    target: Arc<QuasiIdeal>,
    ring: RingHom,
    module_map: Vec<Elem>,
}

/// Scans candidate maps for the quasi-ideal morphism laws, given a valid
/// ring part.
pub fn validate_qmorphism_maps(
    source: &QuasiIdeal,
    target: &QuasiIdeal,
    ring_map: &[Elem],
    module_map: &[Elem],
) -> Result<ValidationReport> {
    let mut report = crate::ring::validate_hom_map(source.ring(), target.ring(), ring_map)?;
    if module_map.len() != source.module().size() {
        return Err(Error::malformed(
            "quasi-ideal morphism",
            format!(
                "module map has length {}, expected {}",
                module_map.len(),
                source.module().size()
            ),
        ));
    }
    if let Some((x, &y)) = module_map
        .iter()
        .enumerate()
        .find(|&(_, &y)| y >= target.module().size())
    {
        return Err(Error::malformed(
            "quasi-ideal morphism",
            format!("module map[{x}] = {y} out of range 0..{}", target.module().size()),
        ));
    }
    let (sm, tm) = (source.module(), target.module());
    'add: for x in sm.elements() {
        for y in sm.elements() {
            if module_map[sm.add(x, y)] != tm.add(module_map[x], module_map[y]) {
                report.push("module-additivity", &[x, y]);
                break 'add;
            }
        }
    }
    'lin: for c in source.ring().elements() {
        for x in sm.elements() {
            if module_map[sm.act(c, x)] != tm.act(ring_map[c], module_map[x]) {
                report.push("module-linearity", &[c, x]);
                break 'lin;
            }
        }
    }
    if let Some(x) = sm
        .elements()
        .find(|&x| target.d(module_map[x]) != ring_map[source.d(x)])
    {
        report.push("d-intertwining", &[x]);
    }
    Ok(report)
}

impl QMorphism {
    pub fn new(
        source: Arc<QuasiIdeal>,
        target: Arc<QuasiIdeal>,
        ring_map: Vec<Elem>,
        module_map: Vec<Elem>,
    ) -> Result<QMorphism> {
        validate_qmorphism_maps(&source, &target, &ring_map, &module_map)?
            .into_result("quasi-ideal morphism")?;
        let ring = RingHom::new(source.ring().clone(), target.ring().clone(), ring_map)
            .expect("ring part already validated");
        Ok(QMorphism {
            source,
            target,
            ring,
            module_map,
        })
    }

    pub fn identity(q: &Arc<QuasiIdeal>) -> QMorphism {
        QMorphism {
            source: q.clone(),
            target: q.clone(),
            ring: RingHom::identity(q.ring()),
            module_map: q.module().elements().collect(),
        }
    }

    pub fn source(&self) -> &Arc<QuasiIdeal> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuasiIdeal> {
        &self.target
    }

    pub fn ring_hom(&self) -> &RingHom {
        &self.ring
    }

    pub fn ring_map(&self) -> &[Elem] {
        self.ring.map()
    }

    pub fn module_map(&self) -> &[Elem] {
        &self.module_map
    }

    #[inline]
    pub fn apply_ring(&self, c: Elem) -> Elem {
        self.ring.apply(c)
    }

    #[inline]
    pub fn apply_module(&self, x: Elem) -> Elem {
        self.module_map[x]
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &QMorphism) -> QMorphism {
        assert_eq!(
            self.target, g.source,
            "composition needs matching middle quasi-ideal"
        );
        QMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            ring: self.ring.then(&g.ring),
            module_map: self.module_map.iter().map(|&x| g.apply_module(x)).collect(),
        }
    }

    pub fn is_surjective_both_degrees(&self) -> bool {
        let mut seen_c = vec![false; self.target.ring().size()];
        for c in self.source.ring().elements() {
            seen_c[self.apply_ring(c)] = true;
        }
        let mut seen_m = vec![false; self.target.module().size()];
        for &y in &self.module_map {
            seen_m[y] = true;
        }
        seen_c.into_iter().all(|s| s) && seen_m.into_iter().all(|s| s)
    }

    pub fn is_bijective_both_degrees(&self) -> bool {
        self.source.ring().size() == self.target.ring().size()
            && self.source.module().size() == self.target.module().size()
            && self.ring.is_injective()
            && {
                let mut seen = vec![false; self.target.module().size()];
                self.module_map.iter().all(|&y| {
                    if seen[y] {
                        false
                    } else {
                        seen[y] = true;
                        true
                    }
                })
            }
    }

    /// Inverse morphism, when bijective in both degrees.
    pub fn inverse(&self) -> Option<QMorphism> {
        if !self.is_bijective_both_degrees() {
            return None;
        }
        let ring = self.ring.inverse()?;
        let mut inv = vec![0; self.module_map.len()];
        for (x, &y) in self.module_map.iter().enumerate() {
            inv[y] = x;
        }
        Some(QMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            ring,
            module_map: inv,
        })
    }

    /// Checks whether the induced maps on `Ker d` and on `Coker d = pi0` are
    /// both bijective. An empty report means quasi-isomorphism; otherwise
    /// each failing side carries a witness.
    pub fn quasi_iso_report(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let ker_s = self.source.ker_d_elements();
        let ker_t = self.target.ker_d_elements();
        // Injectivity of the kernel map.
        let mut hit = vec![usize::MAX; self.target.module().size()];
        'inj: for &x in &ker_s {
            let y = self.apply_module(x);
            if hit[y] != usize::MAX {
                report.push("kernel-not-injective", &[hit[y], x]);
                break 'inj;
            }
            hit[y] = x;
        }
        if let Some(&y) = ker_t.iter().find(|&&y| hit[y] == usize::MAX) {
            report.push_first("kernel-not-surjective", &[y]);
        }
        if ker_s.len() != ker_t.len() {
            report.push_first("kernel-size-mismatch", &[ker_s.len(), ker_t.len()]);
        }
        let (pi0_s, proj_s) = self.source.pi0();
        let (pi0_t, proj_t) = self.target.pi0();
        // Induced map on pi0 via representatives.
        let mut induced = vec![usize::MAX; pi0_s.size()];
        for c in self.source.ring().elements() {
            let q = proj_s.apply(c);
            let image = proj_t.apply(self.apply_ring(c));
            if induced[q] == usize::MAX {
                induced[q] = image;
            } else {
                assert_eq!(
                    induced[q], image,
                    "induced pi0 map must be well-defined on cosets"
                );
            }
        }
        let mut hit0 = vec![usize::MAX; pi0_t.size()];
        'inj0: for (q, &v) in induced.iter().enumerate() {
            if hit0[v] != usize::MAX {
                report.push("cokernel-not-injective", &[hit0[v], q]);
                break 'inj0;
            }
            hit0[v] = q;
        }
        if let Some(v) = (0..pi0_t.size()).find(|&v| hit0[v] == usize::MAX) {
            report.push_first("cokernel-not-surjective", &[v]);
        }
        report
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.quasi_iso_report().ok()
    }
}

/// Componentwise product of two quasi-ideals with its projections.
pub fn product_quasi_ideal(
    a: &Arc<QuasiIdeal>,
    b: &Arc<QuasiIdeal>,
) -> (Arc<QuasiIdeal>, QMorphism, QMorphism) {
    let prod = crate::ring::product_ring(a.ring(), b.ring());
    let (module, mp1, mp2) = pulled_product(&prod.pr1, a.module(), &prod.pr2, b.module());
    let nb = b.module().size();
    let d: Vec<Elem> = module
        .elements()
        .map(|x| {
            let (x1, x2) = crate::unpair_index(x, nb);
            pair_index(a.d(x1), b.d(x2), b.ring().size())
        })
        .collect();
    let q = QuasiIdeal::new(module, d).expect("product of quasi-ideals is a quasi-ideal");
    let pr1 = QMorphism::new(
        q.clone(),
        a.clone(),
        prod.pr1.map().to_vec(),
        mp1.map().to_vec(),
    )
    .expect("projection is a morphism");
    let pr2 = QMorphism::new(
        q.clone(),
        b.clone(),
        prod.pr2.map().to_vec(),
        mp2.map().to_vec(),
    )
    .expect("projection is a morphism");
    (q, pr1, pr2)
}

/// Degreewise fiber product of two morphisms with a common target, with its
/// projections.
pub fn fiber_product(
    a: &QMorphism,
    b: &QMorphism,
) -> Result<(Arc<QuasiIdeal>, QMorphism, QMorphism)> {
    if a.target() != b.target() {
        return Err(Error::Precondition(
            "fiber product needs a common target".into(),
        ));
    }
    let rings = fiber_product_ring(a.ring_hom(), b.ring_hom())?;
    let (prod_mod, mp1, mp2) = pulled_product(&rings.pr1, a.source().module(), &rings.pr2, b.source().module());
    let matching: Vec<Elem> = prod_mod
        .elements()
        .filter(|&x| a.apply_module(mp1.apply(x)) == b.apply_module(mp2.apply(x)))
        .collect();
    let (module, incl) = submodule(&prod_mod, &matching)?;
    let proj1 = incl.then(&mp1);
    let proj2 = incl.then(&mp2);
    // Locate each pair (d1(x1), d2(x2)) in the fiber-product ring carrier.
    let mut position = vec![usize::MAX; a.source().ring().size() * b.source().ring().size()];
    let nb = b.source().ring().size();
    for c in rings.ring.elements() {
        position[pair_index(rings.pr1.apply(c), rings.pr2.apply(c), nb)] = c;
    }
    let d: Vec<Elem> = module
        .elements()
        .map(|x| {
            let c = position[pair_index(
                a.source().d(proj1.apply(x)),
                b.source().d(proj2.apply(x)),
                nb,
            )];
            assert_ne!(c, usize::MAX, "differential lands in the fiber product");
            c
        })
        .collect();
    let q = QuasiIdeal::new(module, d)?;
    let pr1 = QMorphism::new(
        q.clone(),
        a.source().clone(),
        rings.pr1.map().to_vec(),
        proj1.map().to_vec(),
    )?;
    let pr2 = QMorphism::new(
        q.clone(),
        b.source().clone(),
        rings.pr2.map().to_vec(),
        proj2.map().to_vec(),
    )?;
    Ok((q, pr1, pr2))
}

/// Convenience constructors for standard test instances.
pub mod instances {
    use super::*;

    /// `(Z/n, Z/n, multiplication by k)`.
    pub fn cyclic_with_scaling(n: usize, k: usize) -> Arc<QuasiIdeal> {
        let ring = FiniteRing::cyclic(n).expect("within budget");
        let module = FiniteModule::regular(ring.clone());
        let d: Vec<Elem> = ring.elements().map(|x| ring.mul(k % n, x)).collect();
        QuasiIdeal::new(module, d).expect("scaling satisfies the quasi-ideal law")
    }

    /// The running example `(Z/4, Z/4, d = multiplication by 2)`.
    pub fn z4_double() -> Arc<QuasiIdeal> {
        cyclic_with_scaling(4, 2)
    }
}
