//! Butterfly presentations of admissible correspondences.
//!
//! A butterfly between quasi-ideals `(C1, I1, d1)` and `(C2, I2, d2)` is a
//! ring `K` with homomorphisms `f0: K -> C1`, `g0: K -> C2` and additive
//! maps `h1: I1 -> K`, `h2: I2 -> K`, linear over the pulled-back actions,
//! such that the diagonal `0 -> I2 -> K -> C1 -> 0` through `h2` and `f0` is
//! short exact, the other diagonal composes to zero, and the two wing
//! composites recover the differentials. These are exactly the admissible
//! correspondences, by an equivalence that is the identity in one direction.

use std::sync::Arc;

use crate::check::ValidationReport;
use crate::error::{Error, Result};
use crate::module::pulled_product;
use crate::pair_index;
use crate::quasi::{QMorphism, QuasiIdeal};
use crate::ring::{Elem, FiniteRing, RingHom};
use crate::corr::{CorrClass, DGCorrespondence};

/// A butterfly between two quasi-ideals. The wing maps are stored as raw
/// carrier maps from the module elements into `K`.
#[derive(Clone, PartialEq, Debug)]
pub struct Butterfly {
    r1: Arc<QuasiIdeal>,
    r2: Arc<QuasiIdeal>,
    f0: RingHom,
    g0: RingHom,
    h1: Vec<Elem>,
    h2: Vec<Elem>,
}

impl Butterfly {
    pub fn new(
        r1: Arc<QuasiIdeal>,
        r2: Arc<QuasiIdeal>,
        f0: RingHom,
        g0: RingHom,
        h1: Vec<Elem>,
        h2: Vec<Elem>,
    ) -> Result<Butterfly> {
        let b = Butterfly::assemble(r1, r2, f0, g0, h1, h2)?;
        b.validate().into_result("butterfly")?;
        Ok(b)
    }

    fn assemble(
        r1: Arc<QuasiIdeal>,
        r2: Arc<QuasiIdeal>,
        f0: RingHom,
        g0: RingHom,
        h1: Vec<Elem>,
        h2: Vec<Elem>,
    ) -> Result<Butterfly> {
        if f0.domain() != g0.domain() {
            return Err(Error::Precondition("the two leg maps must share K".into()));
        }
        if f0.codomain() != r1.ring() || g0.codomain() != r2.ring() {
            return Err(Error::Precondition(
                "leg codomains must be the feet object rings".into(),
            ));
        }
        let k = f0.domain().size();
        if h1.len() != r1.module().size() || h2.len() != r2.module().size() {
            return Err(Error::malformed(
                "butterfly",
                format!(
                    "wing maps have lengths {} and {}, expected {} and {}",
                    h1.len(),
                    h2.len(),
                    r1.module().size(),
                    r2.module().size()
                ),
            ));
        }
        if let Some(&v) = h1.iter().chain(h2.iter()).find(|&&v| v >= k) {
            return Err(Error::malformed(
                "butterfly",
                format!("wing value {v} out of range 0..{k}"),
            ));
        }
        Ok(Butterfly { r1, r2, f0, g0, h1, h2 })
    }

    pub(crate) fn from_parts(
        r1: Arc<QuasiIdeal>,
        r2: Arc<QuasiIdeal>,
        f0: RingHom,
        g0: RingHom,
        h1: Vec<Elem>,
        h2: Vec<Elem>,
    ) -> Butterfly {
        let b = Butterfly::assemble(r1, r2, f0, g0, h1, h2).expect("well-shaped butterfly");
        #[cfg(debug_assertions)]
        if b.k().size() <= 64 {
            let report = b.validate();
            assert!(report.ok(), "butterfly invariant broken: {report}");
        }
        b
    }

    pub fn r1(&self) -> &Arc<QuasiIdeal> {
        &self.r1
    }

    pub fn r2(&self) -> &Arc<QuasiIdeal> {
        &self.r2
    }

    pub fn k(&self) -> &Arc<FiniteRing> {
        self.f0.domain()
    }

    pub fn f0(&self) -> &RingHom {
        &self.f0
    }

    pub fn g0(&self) -> &RingHom {
        &self.g0
    }

    pub fn h1(&self) -> &[Elem] {
        &self.h1
    }

    pub fn h2(&self) -> &[Elem] {
        &self.h2
    }

    /// Every butterfly condition, with lex-least witnesses, in a fixed
    /// order: additivity and linearity of the wings, the zero composite,
    /// exactness of the `I2 -> K -> C1` diagonal, and the two differential
    /// identities.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let k = self.f0.domain();
        let i1 = self.r1.module();
        let i2 = self.r2.module();
        'add1: for x in i1.elements() {
            for y in i1.elements() {
                if self.h1[i1.add(x, y)] != k.add(self.h1[x], self.h1[y]) {
                    report.push("h1-additivity", &[x, y]);
                    break 'add1;
                }
            }
        }
        'lin1: for r in k.elements() {
            for x in i1.elements() {
                if self.h1[i1.act(self.f0.apply(r), x)] != k.mul(r, self.h1[x]) {
                    report.push("h1-linearity", &[r, x]);
                    break 'lin1;
                }
            }
        }
        'add2: for x in i2.elements() {
            for y in i2.elements() {
                if self.h2[i2.add(x, y)] != k.add(self.h2[x], self.h2[y]) {
                    report.push("h2-additivity", &[x, y]);
                    break 'add2;
                }
            }
        }
        'lin2: for r in k.elements() {
            for x in i2.elements() {
                if self.h2[i2.act(self.g0.apply(r), x)] != k.mul(r, self.h2[x]) {
                    report.push("h2-linearity", &[r, x]);
                    break 'lin2;
                }
            }
        }
        if let Some(x) = i1
            .elements()
            .find(|&x| self.g0.apply(self.h1[x]) != self.r2.ring().zero())
        {
            report.push("zero-composite", &[x]);
        }
        if let Some(x) = i2
            .elements()
            .find(|&x| x != i2.zero() && self.h2[x] == k.zero())
        {
            report.push("exactness-kernel", &[x]);
        }
        // Image of h2 must be exactly the kernel of f0.
        let mut in_image = vec![false; k.size()];
        for x in i2.elements() {
            in_image[self.h2[x]] = true;
        }
        if let Some(r) = k.elements().find(|&r| {
            in_image[r] != (self.f0.apply(r) == self.r1.ring().zero())
        }) {
            report.push("exactness-image", &[r]);
        }
        if let Some(c) = {
            let mut hit = vec![false; self.r1.ring().size()];
            for r in k.elements() {
                hit[self.f0.apply(r)] = true;
            }
            self.r1.ring().elements().find(|&c| !hit[c])
        } {
            report.push("exactness-surjectivity", &[c]);
        }
        if let Some(x) = i1
            .elements()
            .find(|&x| self.f0.apply(self.h1[x]) != self.r1.d(x))
        {
            report.push("left-differential", &[x]);
        }
        if let Some(x) = i2
            .elements()
            .find(|&x| self.g0.apply(self.h2[x]) != self.r2.d(x))
        {
            report.push("right-differential", &[x]);
        }
        report
    }
}

/// Reads the butterfly off an admissible correspondence: `K` is the apex
/// ring, the legs are the leg ring maps, and the wings send a module element
/// to the differential of its unique preimage under the paired module map.
pub fn to_butterfly(corr: &DGCorrespondence) -> Result<Butterfly> {
    if corr.classify() < CorrClass::Admissible {
        return Err(Error::Precondition(
            format!(
                "butterfly extraction needs an admissible correspondence, got {}",
                corr.classify()
            ),
        ));
    }
    let apex = corr.apex();
    let i1 = corr.r1().module();
    let i2 = corr.r2().module();
    let pair_map = corr.pair_map();
    let mut preimage = vec![usize::MAX; i1.size() * i2.size()];
    for (x, &p) in pair_map.iter().enumerate() {
        preimage[p] = x;
    }
    let h1 = i1
        .elements()
        .map(|x1| apex.d(preimage[pair_index(x1, i2.zero(), i2.size())]))
        .collect();
    let h2 = i2
        .elements()
        .map(|x2| apex.d(preimage[pair_index(i1.zero(), x2, i2.size())]))
        .collect();
    Ok(Butterfly::from_parts(
        corr.r1().clone(),
        corr.r2().clone(),
        corr.left().ring_hom().clone(),
        corr.right().ring_hom().clone(),
        h1,
        h2,
    ))
}

/// Rebuilds the admissible correspondence of a butterfly: the apex has ring
/// `K` and module `I1 x I2` with the action pulled back through `(f0, g0)`
/// and differential `(x1, x2) -> h1(x1) + h2(x2)`.
pub fn from_butterfly(b: &Butterfly) -> DGCorrespondence {
    let k = b.k();
    let (module, mp1, mp2) = pulled_product(b.f0(), b.r1().module(), b.g0(), b.r2().module());
    let d = module
        .elements()
        .map(|p| {
            let x1 = mp1.apply(p);
            let x2 = mp2.apply(p);
            k.add(b.h1[x1], b.h2[x2])
        })
        .collect();
    let apex = QuasiIdeal::new(module, d)
        .expect("butterfly conditions make the apex a quasi-ideal");
    let left = QMorphism::new(
        apex.clone(),
        b.r1().clone(),
        b.f0().map().to_vec(),
        mp1.map().to_vec(),
    )
    .expect("left projection is a morphism");
    let right = QMorphism::new(
        apex.clone(),
        b.r2().clone(),
        b.g0().map().to_vec(),
        mp2.map().to_vec(),
    )
    .expect("right projection is a morphism");
    let corr = DGCorrespondence::new(left, right).expect("legs share the apex");
    debug_assert_eq!(corr.classify(), CorrClass::Admissible);
    corr
}

/// A hand-checkable admissible correspondence that is not a graph: both feet
/// are `(Z/2, Z/2, 0)` and the apex is `(Z/4, Z/2 x Z/2, d = 0)` with legs
/// reducing mod 2.
pub fn mod2_reduction_butterfly() -> Butterfly {
    let foot = crate::quasi::instances::cyclic_with_scaling(2, 0);
    let z4 = FiniteRing::cyclic(4).unwrap();
    let to_z2 = RingHom::new(z4.clone(), foot.ring().clone(), vec![0, 1, 0, 1]).unwrap();
    // I2 -> K must be injective with image Ker(f0) = {0, 2}.
    let h2 = vec![0, 2];
    let h1 = vec![0, 2];
    Butterfly::new(foot.clone(), foot, to_z2.clone(), to_z2, h1, h2)
        .expect("mod-2 reduction butterfly satisfies the axioms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FiniteModule;

    #[test]
    fn mod2_butterfly_validates_and_reconstructs() {
        let b = mod2_reduction_butterfly();
        assert!(b.validate().ok());
        let corr = from_butterfly(&b);
        assert_eq!(corr.classify(), CorrClass::Admissible);
        assert_eq!(corr.apex().ring().size(), 4);
        assert_eq!(corr.apex().module().size(), 4);
        // Round trip through the correspondence is the identity on the nose.
        let back = to_butterfly(&corr).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn broken_wing_is_reported() {
        let b = mod2_reduction_butterfly();
        // Redirect h2 so its image is no longer the kernel of f0.
        let bad = Butterfly::new(
            b.r1().clone(),
            b.r2().clone(),
            b.f0().clone(),
            b.g0().clone(),
            b.h1().to_vec(),
            vec![0, 1],
        );
        match bad {
            Err(Error::Invalid { report, .. }) => {
                assert!(report.violation("exactness-image").is_some()
                    || report.violation("right-differential").is_some());
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn butterfly_of_a_trivial_module_correspondence() {
        // Both feet (Z/2, 0, 0); K = Z/2 with identity legs and empty wings.
        let z2 = FiniteRing::cyclic(2).unwrap();
        let foot = QuasiIdeal::new(FiniteModule::zero_module(z2.clone()), vec![0]).unwrap();
        let ident = RingHom::identity(&z2);
        let b = Butterfly::new(foot.clone(), foot, ident.clone(), ident, vec![0], vec![0]).unwrap();
        let corr = from_butterfly(&b);
        assert_eq!(corr.classify(), CorrClass::Admissible);
        assert_eq!(to_butterfly(&corr).unwrap(), b);
    }
}
