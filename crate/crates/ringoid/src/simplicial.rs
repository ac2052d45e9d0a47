//! 1-truncated simplicial rings `(A0, A1, d0, d1, s)` and the equivalence
//! with quasi-ideals.
//!
//! Such a truncation is *good* when the two face kernels annihilate each
//! other: `Ker(d0) · Ker(d1) = 0`. Good truncations are exactly the ones
//! coming from quasi-ideals, and the only ones whose nerve composition is
//! multiplicative.

use std::sync::Arc;

use crate::budget::Budget;
use crate::check::ValidationReport;
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::quasi::QuasiIdeal;
use crate::ring::{Elem, FiniteRing, RingHom};
use crate::{pair_index, unpair_index};

/// A 1-truncated simplicial ring: two face maps `d0, d1: A1 -> A0` and a
/// degeneracy `s: A0 -> A1` with `d0 ∘ s = d1 ∘ s = id`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trunc1SimpRing {
    d0: RingHom,
    d1: RingHom,
    s: RingHom,
}

impl Trunc1SimpRing {
    pub fn new(d0: RingHom, d1: RingHom, s: RingHom) -> Result<Trunc1SimpRing> {
        if d0.domain() != d1.domain()
            || d0.codomain() != d1.codomain()
            || s.domain() != d0.codomain()
            || s.codomain() != d0.domain()
        {
            return Err(Error::Precondition(
                "face and degeneracy maps must connect A1 and A0 consistently".into(),
            ));
        }
        let mut report = ValidationReport::new();
        if let Some(c) = s.domain().elements().find(|&c| d0.apply(s.apply(c)) != c) {
            report.push("section-d0", &[c]);
        }
        if let Some(c) = s.domain().elements().find(|&c| d1.apply(s.apply(c)) != c) {
            report.push("section-d1", &[c]);
        }
        report.into_result("1-truncated simplicial ring")?;
        Ok(Trunc1SimpRing { d0, d1, s })
    }

    pub fn a0(&self) -> &Arc<FiniteRing> {
        self.d0.codomain()
    }

    pub fn a1(&self) -> &Arc<FiniteRing> {
        self.d0.domain()
    }

    pub fn d0(&self) -> &RingHom {
        &self.d0
    }

    pub fn d1(&self) -> &RingHom {
        &self.d1
    }

    pub fn s(&self) -> &RingHom {
        &self.s
    }

    /// First pair `(x, y)` with `x ∈ Ker d0`, `y ∈ Ker d1` and `x·y ≠ 0`,
    /// in lexicographic carrier order; `None` when the truncation is good.
    pub fn goodness_witness(&self) -> Option<(Elem, Elem)> {
        let a1 = self.a1();
        let ker0 = self.d0.kernel_elements();
        let ker1 = self.d1.kernel_elements();
        for &x in &ker0 {
            for &y in &ker1 {
                if a1.mul(x, y) != a1.zero() {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_good(&self) -> bool {
        self.goodness_witness().is_none()
    }
}

/// Builds the 1-truncated simplicial ring of a quasi-ideal: `A0 = C` and
/// `A1 = C ⊕ I` with product
/// `(c, x)·(c', x') = (c c', c·x' + c'·x + d(x)·x')`,
/// faces `(c, x) -> c` and `(c, x) -> c + d(x)`, degeneracy `c -> (c, 0)`.
/// Pairs are indexed row-major, so the carrier labeling is canonical.
pub fn q_to_simplicial(q: &Arc<QuasiIdeal>) -> Trunc1SimpRing {
    let ring = q.ring();
    let module = q.module();
    let (nc, ni) = (ring.size(), module.size());
    let n = nc * ni;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for p in 0..n {
        let (c, x) = unpair_index(p, ni);
        for p2 in 0..n {
            let (c2, x2) = unpair_index(p2, ni);
            add[p * n + p2] = pair_index(ring.add(c, c2), module.add(x, x2), ni);
            let twist = module.add(
                module.add(module.act(c, x2), module.act(c2, x)),
                q.derived_product(x, x2),
            );
            mul[p * n + p2] = pair_index(ring.mul(c, c2), twist, ni);
        }
    }
    let neg = (0..n)
        .map(|p| {
            let (c, x) = unpair_index(p, ni);
            pair_index(ring.neg(c), module.neg(x), ni)
        })
        .collect();
    let zero = pair_index(ring.zero(), module.zero(), ni);
    let one = pair_index(ring.one(), module.zero(), ni);
    let a1 = FiniteRing::from_parts(n, add, mul, neg, zero, one);

    let d0_map = (0..n).map(|p| unpair_index(p, ni).0).collect();
    let d1_map = (0..n)
        .map(|p| {
            let (c, x) = unpair_index(p, ni);
            ring.add(c, q.d(x))
        })
        .collect();
    let s_map = ring
        .elements()
        .map(|c| pair_index(c, module.zero(), ni))
        .collect();
    let d0 = RingHom::new(a1.clone(), ring.clone(), d0_map).expect("face 0 is a hom");
    let d1 = RingHom::new(a1.clone(), ring.clone(), d1_map).expect("face 1 is a hom");
    let s = RingHom::new(ring.clone(), a1, s_map).expect("degeneracy is a hom");
    Trunc1SimpRing::new(d0, d1, s).expect("sections hold by construction")
}

/// Recovers a quasi-ideal from a good truncation: `C = A0`,
/// `I = Ker d0` with action `c·x = s(c)·x`, and `d = d1` restricted.
/// Fails with the kernel-product witness when the truncation is not good.
pub fn simplicial_to_q(t: &Trunc1SimpRing) -> Result<Arc<QuasiIdeal>> {
    if let Some((x, y)) = t.goodness_witness() {
        return Err(Error::NotGood(x, y));
    }
    let a1 = t.a1();
    let a0 = t.a0();
    let kernel = t.d0.kernel_elements();
    let n = kernel.len();
    let mut position = vec![usize::MAX; a1.size()];
    for (p, &e) in kernel.iter().enumerate() {
        position[e] = p;
    }
    let locate = |e: Elem| -> usize {
        assert_ne!(position[e], usize::MAX, "Ker d0 is closed under the operations");
        position[e]
    };
    let mut add = vec![0; n * n];
    for (p, &x) in kernel.iter().enumerate() {
        for (q, &y) in kernel.iter().enumerate() {
            add[p * n + q] = locate(a1.add(x, y));
        }
    }
    let neg = kernel.iter().map(|&x| locate(a1.neg(x))).collect();
    let mut action = vec![0; a0.size() * n];
    for c in a0.elements() {
        let sc = t.s.apply(c);
        for (p, &x) in kernel.iter().enumerate() {
            action[c * n + p] = locate(a1.mul(sc, x));
        }
    }
    let module = FiniteModule::from_parts(
        a0.clone(),
        n,
        add,
        neg,
        locate(a1.zero()),
        action,
    );
    let d = kernel.iter().map(|&x| t.d1.apply(x)).collect();
    QuasiIdeal::new(module, d)
}

/// The canonical comparison isomorphism `A1 -> A1'` between a good
/// truncation and the truncation rebuilt from its quasi-ideal:
/// `f -> (d0(f), f - s(d0(f)))`. Validated as a ring isomorphism commuting
/// with the structure maps.
pub fn canonical_roundtrip_iso(t: &Trunc1SimpRing, rebuilt: &Trunc1SimpRing) -> Result<RingHom> {
    if t.a0() != rebuilt.a0() {
        return Err(Error::Precondition(
            "roundtrip comparison needs the same A0".into(),
        ));
    }
    let a1 = t.a1();
    let kernel = t.d0.kernel_elements();
    let ni = kernel.len();
    let mut position = vec![usize::MAX; a1.size()];
    for (p, &e) in kernel.iter().enumerate() {
        position[e] = p;
    }
    let map: Vec<Elem> = a1
        .elements()
        .map(|f| {
            let c = t.d0.apply(f);
            let x = a1.sub(f, t.s.apply(c));
            assert_ne!(position[x], usize::MAX, "f - s(d0 f) lies in Ker d0");
            pair_index(c, position[x], ni)
        })
        .collect();
    let iso = RingHom::new(a1.clone(), rebuilt.a1().clone(), map)?;
    if !iso.is_bijective() {
        return Err(Error::Precondition(
            "canonical comparison map is not bijective".into(),
        ));
    }
    if let Some(law) = check_simplicial_map(t, rebuilt, &iso).violations.first() {
        return Err(Error::Precondition(format!(
            "canonical comparison map fails {law}"
        )));
    }
    Ok(iso)
}

/// Checks that `phi: A1 -> A1'` commutes with both faces and the degeneracy
/// of two truncations over the same `A0`.
pub fn check_simplicial_map(
    t: &Trunc1SimpRing,
    t2: &Trunc1SimpRing,
    phi: &RingHom,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Some(f) = t
        .a1()
        .elements()
        .find(|&f| t2.d0.apply(phi.apply(f)) != t.d0.apply(f))
    {
        report.push("commutes-d0", &[f]);
    }
    if let Some(f) = t
        .a1()
        .elements()
        .find(|&f| t2.d1.apply(phi.apply(f)) != t.d1.apply(f))
    {
        report.push("commutes-d1", &[f]);
    }
    if let Some(c) = t
        .a0()
        .elements()
        .find(|&c| phi.apply(t.s.apply(c)) != t2.s.apply(c))
    {
        report.push("commutes-s", &[c]);
    }
    report
}

/// Bounded backtracking search for a simplicial isomorphism over a shared
/// `A0`: a ring isomorphism `A1 -> A1'` commuting with `d0`, `d1` and `s`.
pub fn simplicial_iso_search(
    t: &Trunc1SimpRing,
    t2: &Trunc1SimpRing,
    budget: &Budget,
) -> Result<Option<RingHom>> {
    if t.a0() != t2.a0() || t.a1().size() != t2.a1().size() {
        return Ok(None);
    }
    let a1 = t.a1();
    let b1 = t2.a1();
    let n = a1.size();
    let mut img: Vec<Option<Elem>> = vec![None; n];
    let mut used = vec![false; n];
    // The degeneracy pins the image of s(A0).
    for c in t.a0().elements() {
        let from = t.s.apply(c);
        let to = t2.s.apply(c);
        if let Some(prev) = img[from] {
            if prev != to {
                return Ok(None);
            }
        } else {
            if used[to] {
                return Ok(None);
            }
            img[from] = Some(to);
            used[to] = true;
        }
    }
    // Remaining elements choose within the fiber of (d0, d1).
    let mut candidates: Vec<Vec<Elem>> = vec![Vec::new(); n];
    for f in 0..n {
        if img[f].is_some() {
            continue;
        }
        candidates[f] = b1
            .elements()
            .filter(|&y| {
                t2.d0.apply(y) == t.d0.apply(f) && t2.d1.apply(y) == t.d1.apply(f)
            })
            .collect();
    }
    let mut order: Vec<Elem> = (0..n).filter(|&f| img[f].is_none()).collect();
    order.sort_by_key(|&f| candidates[f].len());
    let mut guard = budget.guard("simplicial isomorphism search");
    let found = dfs_simplicial(a1, b1, &candidates, &order, 0, &mut img, &mut used, &mut guard)?;
    if !found {
        return Ok(None);
    }
    let map: Vec<Elem> = img.into_iter().map(|o| o.expect("complete")).collect();
    let iso = RingHom::new(t.a1().clone(), t2.a1().clone(), map)?;
    debug_assert!(check_simplicial_map(t, t2, &iso).ok());
    Ok(Some(iso))
}

#[allow(clippy::too_many_arguments)]
fn dfs_simplicial(
    a1: &FiniteRing,
    b1: &FiniteRing,
    candidates: &[Vec<Elem>],
    order: &[Elem],
    depth: usize,
    img: &mut Vec<Option<Elem>>,
    used: &mut Vec<bool>,
    guard: &mut crate::budget::SearchGuard,
) -> Result<bool> {
    let Some(&f) = order.get(depth) else {
        return Ok(true);
    };
    for &y in &candidates[f] {
        guard.tick()?;
        if used[y] {
            continue;
        }
        img[f] = Some(y);
        used[y] = true;
        if crate::ring::partial_map_consistent(a1, b1, img)
            && dfs_simplicial(a1, b1, candidates, order, depth + 1, img, used, guard)?
        {
            return Ok(true);
        }
        img[f] = None;
        used[y] = false;
    }
    Ok(false)
}

/// The non-good standard example: `A0 = Z/2`, `A1 = Z/2[x]/(x^3)` with both
/// faces killing `x` and the degeneracy including constants. Element
/// `a + b x + c x^2` sits at index `a + 2b + 4c`.
pub fn truncated_polynomial_example() -> Trunc1SimpRing {
    let z2 = FiniteRing::cyclic(2).unwrap();
    let coeffs = |e: Elem| (e & 1, (e >> 1) & 1, (e >> 2) & 1);
    let index = |a: usize, b: usize, c: usize| a + 2 * b + 4 * c;
    let add: Vec<Vec<Elem>> = (0..8).map(|p| (0..8).map(|q| p ^ q).collect()).collect();
    let mul: Vec<Vec<Elem>> = (0..8)
        .map(|p| {
            (0..8)
                .map(|q| {
                    let (a, b, c) = coeffs(p);
                    let (a2, b2, c2) = coeffs(q);
                    index(
                        (a * a2) % 2,
                        (a * b2 + b * a2) % 2,
                        (a * c2 + b * b2 + c * a2) % 2,
                    )
                })
                .collect()
        })
        .collect();
    let a1 = FiniteRing::from_tables(&add, &mul, 1).expect("truncated polynomials form a ring");
    let face = RingHom::new(a1.clone(), z2.clone(), (0..8).map(|e| e & 1).collect())
        .expect("evaluation at 0 is a hom");
    let s = RingHom::new(z2, a1, vec![0, 1]).expect("constants include");
    Trunc1SimpRing::new(face.clone(), face, s).expect("sections hold")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::instances;
    use crate::ring::ring_iso_search;

    #[test]
    fn z4_double_truncation_has_the_pinned_product() {
        let q = instances::z4_double();
        let t = q_to_simplicial(&q);
        assert_eq!(t.a1().size(), 16);
        // (1,1)·(1,1) = (1, 1 + 1 + 2·1) = (1, 0).
        let p = pair_index(1, 1, 4);
        assert_eq!(t.a1().mul(p, p), pair_index(1, 0, 4));
        assert!(t.is_good());
        assert!(t.d0().validate().ok());
        assert!(t.d1().validate().ok());
        assert!(t.s().validate().ok());
    }

    #[test]
    fn zero_differential_on_z2_gives_dual_numbers() {
        let q = instances::cyclic_with_scaling(2, 0);
        let t = q_to_simplicial(&q);
        assert_eq!(t.a1().size(), 4);
        // Z/2[x]/(x^2) with index a + 2b.
        let add: Vec<Vec<Elem>> = (0..4).map(|p| (0..4).map(|r| p ^ r).collect()).collect();
        let mul: Vec<Vec<Elem>> = (0..4)
            .map(|p| {
                (0..4)
                    .map(|r| {
                        let (a, b) = (p & 1, p >> 1);
                        let (a2, b2) = (r & 1, r >> 1);
                        (a * a2) % 2 + 2 * ((a * b2 + b * a2) % 2)
                    })
                    .collect()
            })
            .collect();
        let dual = FiniteRing::from_tables(&add, &mul, 1).unwrap();
        let iso = ring_iso_search(&t.a1().clone(), &dual, &Budget::default())
            .unwrap()
            .expect("A1 of (Z/2, Z/2, 0) is the dual numbers");
        assert!(iso.validate().ok());
    }

    #[test]
    fn roundtrip_from_quasi_ideal_is_the_identity() {
        for q in [
            instances::z4_double(),
            instances::cyclic_with_scaling(2, 0),
            instances::cyclic_with_scaling(6, 3),
        ] {
            let t = q_to_simplicial(&q);
            let back = simplicial_to_q(&t).unwrap();
            assert_eq!(back, q, "carrier labeling is canonical");
        }
    }

    #[test]
    fn truncated_polynomials_are_not_good() {
        let t = truncated_polynomial_example();
        assert_eq!(t.goodness_witness(), Some((2, 2)));
        match simplicial_to_q(&t) {
            Err(Error::NotGood(2, 2)) => {}
            other => panic!("expected goodness failure at (x, x), got {other:?}"),
        }
    }

    #[test]
    fn roundtrip_from_truncation_is_isomorphic() {
        let q = instances::z4_double();
        let t = q_to_simplicial(&q);
        let rebuilt = q_to_simplicial(&simplicial_to_q(&t).unwrap());
        let canonical = canonical_roundtrip_iso(&t, &rebuilt).unwrap();
        assert!(canonical.is_bijective());
        let searched = simplicial_iso_search(&t, &rebuilt, &Budget::default())
            .unwrap()
            .expect("bounded search finds an isomorphism");
        assert!(check_simplicial_map(&t, &rebuilt, &searched).ok());
    }

    #[test]
    fn images_of_q_to_simplicial_are_good() {
        for q in [
            instances::z4_double(),
            instances::cyclic_with_scaling(3, 0),
            instances::cyclic_with_scaling(8, 4),
        ] {
            assert!(q_to_simplicial(&q).is_good());
        }
    }
}
