//! Finite categories presented by tables, functors between them, graphs of
//! functors, and the classification and saturation calculus for spans of
//! categories.
//!
//! A span `C1 <- C12 -> C2` of functors is classified by its left leg: an
//! equivalence gives the `equivalence-leg` class, an equivalence surjective
//! on objects gives `anamorphism`, and the two admissibility levels are read
//! off either of two finite criteria that this module computes independently
//! and cross-checks. Saturation replaces a span by the graph of its
//! collapsed functor; for quasi-ideal spans the categorical classification
//! agrees level by level with the algebraic one through the cone groupoid.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::{Budget, SearchGuard};
use crate::check::ValidationReport;
use crate::cone::{cone, cone_functor, GroupoidFunctor, InternalRingGroupoid};
use crate::corr::{CorrClass, DGCorrespondence};
use crate::error::{Error, Result};
use crate::pair_index;

/// A finite category presented by explicit tables. Morphism `f` runs from
/// `src(f)` to `tgt(f)`; `compose(f, g)` is `g` after `f` and is defined
/// exactly when `tgt(f) = src(g)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteCategory {
    n_objects: usize,
    srcs: Vec<usize>,
    tgts: Vec<usize>,
    /// Identity morphism of each object.
    identity: Vec<usize>,
    /// Flat `|Mor| x |Mor|` table; entry `(f, g)` holds `g ∘ f` when defined.
    compose: Vec<Option<usize>>,
    /// Two-sided inverse of each morphism, when one exists.
    inverses: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// Assembles and fully validates a category.
    pub fn new(
        n_objects: usize,
        srcs: Vec<usize>,
        tgts: Vec<usize>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Result<Arc<FiniteCategory>> {
        let n = srcs.len();
        if tgts.len() != n {
            return Err(Error::malformed(
                "category",
                format!("{} sources against {} targets", n, tgts.len()),
            ));
        }
        if identity.len() != n_objects {
            return Err(Error::malformed(
                "category",
                format!("{} identities for {n_objects} objects", identity.len()),
            ));
        }
        if compose.len() != n * n {
            return Err(Error::malformed(
                "category",
                format!("composition table has length {}, expected {}", compose.len(), n * n),
            ));
        }
        if srcs.iter().chain(tgts.iter()).any(|&c| c >= n_objects)
            || identity.iter().any(|&f| f >= n)
            || compose.iter().flatten().any(|&f| f >= n)
        {
            return Err(Error::malformed("category", "table entry out of range"));
        }
        let mut cat = FiniteCategory { n_objects, srcs, tgts, identity, compose, inverses: Vec::new() };
        cat.inverses = cat.compute_inverses();
        cat.validate().into_result("category")?;
        Ok(Arc::new(cat))
    }

    pub(crate) fn from_parts(
        n_objects: usize,
        srcs: Vec<usize>,
        tgts: Vec<usize>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Arc<FiniteCategory> {
        let mut cat = FiniteCategory { n_objects, srcs, tgts, identity, compose, inverses: Vec::new() };
        cat.inverses = cat.compute_inverses();
        #[cfg(debug_assertions)]
        if cat.n_morphisms() <= 256 {
            let report = cat.validate();
            assert!(report.ok(), "category invariant broken: {report}");
        }
        Arc::new(cat)
    }

    fn compute_inverses(&self) -> Vec<Option<usize>> {
        let n = self.srcs.len();
        (0..n)
            .map(|f| {
                self.hom_set(self.tgts[f], self.srcs[f]).into_iter().find(|&g| {
                    self.compose(f, g) == Some(self.identity[self.srcs[f]])
                        && self.compose(g, f) == Some(self.identity[self.tgts[f]])
                })
            })
            .collect()
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.srcs.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.srcs[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgts[f]
    }

    pub fn identity_of(&self, c: usize) -> usize {
        self.identity[c]
    }

    /// `g ∘ f`, defined when `tgt(f) = src(g)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[pair_index(f, g, self.srcs.len())]
    }

    /// Two-sided inverse of `f`, when `f` is invertible.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverses[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverses[f].is_some()
    }

    /// Morphisms from `a` to `b` in index order.
    pub fn hom_set(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.srcs.len())
            .filter(|&f| self.srcs[f] == a && self.tgts[f] == b)
            .collect()
    }

    /// Invertible morphisms from `a` to `b` in index order.
    pub fn iso_set(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.srcs.len())
            .filter(|&f| self.srcs[f] == a && self.tgts[f] == b && self.is_iso(f))
            .collect()
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverses.iter().all(|i| i.is_some())
    }

    /// Every category law, with lex-least witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.srcs.len();
        if let Some(c) = (0..self.n_objects).find(|&c| self.srcs[self.identity[c]] != c) {
            report.push("identity-source", &[c]);
        }
        if let Some(c) = (0..self.n_objects).find(|&c| self.tgts[self.identity[c]] != c) {
            report.push("identity-target", &[c]);
        }
        'domain: for f in 0..n {
            for g in 0..n {
                let composable = self.tgts[f] == self.srcs[g];
                if self.compose[pair_index(f, g, n)].is_some() != composable {
                    report.push("composition-domain", &[f, g]);
                    break 'domain;
                }
            }
        }
        let mut endpoint_src = None;
        let mut endpoint_tgt = None;
        for f in 0..n {
            for g in 0..n {
                let Some(h) = self.compose[pair_index(f, g, n)] else { continue };
                if endpoint_src.is_none() && self.srcs[h] != self.srcs[f] {
                    endpoint_src = Some([f, g]);
                }
                if endpoint_tgt.is_none() && self.tgts[h] != self.tgts[g] {
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
        if let Some(f) = (0..n).find(|&f| self.compose(self.identity[self.srcs[f]], f) != Some(f)) {
            report.push("unit-precompose", &[f]);
        }
        if let Some(f) = (0..n).find(|&f| self.compose(f, self.identity[self.tgts[f]]) != Some(f)) {
            report.push("unit-postcompose", &[f]);
        }
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); self.n_objects];
        for f in 0..n {
            if self.srcs[f] < self.n_objects {
                by_src[self.srcs[f]].push(f);
            }
        }
        'assoc: for f in 0..n {
            for &g in &by_src[self.tgts[f]] {
                let Some(gf) = self.compose(f, g) else { continue };
                for &h in &by_src[self.tgts[g]] {
                    let left = self.compose(gf, h);
                    let right = self.compose(g, h).and_then(|hg| self.compose(f, hg));
                    if left != right {
                        report.push("composition-associativity", &[f, g, h]);
                        break 'assoc;
                    }
                }
            }
        }
        report
    }
}

/// The category with `n` objects and only identity morphisms.
pub fn discrete(n: usize) -> Arc<FiniteCategory> {
    let objs: Vec<usize> = (0..n).collect();
    let compose = (0..n * n)
        .map(|k| {
            let (f, g) = crate::unpair_index(k, n);
            (f == g).then_some(f)
        })
        .collect();
    FiniteCategory::from_parts(n, objs.clone(), objs.clone(), objs, compose)
}

/// The category with `n` objects and exactly one morphism between every
/// ordered pair of objects; every morphism is invertible.
pub fn codiscrete(n: usize) -> Arc<FiniteCategory> {
    let nm = n * n;
    let mut srcs = Vec::with_capacity(nm);
    let mut tgts = Vec::with_capacity(nm);
    for a in 0..n {
        for b in 0..n {
            srcs.push(a);
            tgts.push(b);
        }
    }
    let identity = (0..n).map(|c| pair_index(c, c, n)).collect();
    let mut compose = vec![None; nm * nm];
    for f in 0..nm {
        for g in 0..nm {
            if tgts[f] == srcs[g] {
                compose[pair_index(f, g, nm)] = Some(pair_index(srcs[f], tgts[g], n));
            }
        }
    }
    FiniteCategory::from_parts(n, srcs, tgts, identity, compose)
}

/// A cyclic group of order `n` viewed as a one-object category.
pub fn cyclic_group_category(n: usize) -> Arc<FiniteCategory> {
    let compose = (0..n * n)
        .map(|k| {
            let (f, g) = crate::unpair_index(k, n);
            Some((f + g) % n)
        })
        .collect();
    FiniteCategory::from_parts(1, vec![0; n], vec![0; n], vec![0], compose)
}

/// The free-standing arrow: two objects joined by one non-invertible
/// morphism. The smallest category that is not a groupoid.
pub fn walking_arrow() -> Arc<FiniteCategory> {
    let srcs = vec![0, 1, 0];
    let tgts = vec![0, 1, 1];
    let mut compose = vec![None; 9];
    compose[pair_index(0, 0, 3)] = Some(0);
    compose[pair_index(1, 1, 3)] = Some(1);
    compose[pair_index(0, 2, 3)] = Some(2);
    compose[pair_index(2, 1, 3)] = Some(2);
    FiniteCategory::from_parts(2, srcs, tgts, vec![0, 1], compose)
}

/// A functor between finite categories, tabulated on objects and morphisms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctorData {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl FunctorData {
    /// Assembles and fully validates a functor.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<FunctorData> {
        if object_map.len() != source.n_objects()
            || morphism_map.len() != source.n_morphisms()
            || object_map.iter().any(|&c| c >= target.n_objects())
            || morphism_map.iter().any(|&f| f >= target.n_morphisms())
        {
            return Err(Error::malformed("functor", "map length or entry out of range"));
        }
        let f = FunctorData { source, target, object_map, morphism_map };
        f.validate().into_result("functor")?;
        Ok(f)
    }

    pub(crate) fn from_parts(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> FunctorData {
        let f = FunctorData { source, target, object_map, morphism_map };
        #[cfg(debug_assertions)]
        if f.source.n_morphisms() <= 256 {
            let report = f.validate();
            assert!(report.ok(), "functor invariant broken: {report}");
        }
        f
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> FunctorData {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.n_objects()).collect(),
            morphism_map: (0..c.n_morphisms()).collect(),
        }
    }

    /// Functor laws, with lex-least witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.source.n_morphisms();
        if let Some(f) =
            (0..n).find(|&f| self.target.src(self.morphism_map[f]) != self.object_map[self.source.src(f)])
        {
            report.push("functor-source", &[f]);
        }
        if let Some(f) =
            (0..n).find(|&f| self.target.tgt(self.morphism_map[f]) != self.object_map[self.source.tgt(f)])
        {
            report.push("functor-target", &[f]);
        }
        if let Some(c) = (0..self.source.n_objects())
            .find(|&c| self.morphism_map[self.source.identity_of(c)] != self.target.identity_of(self.object_map[c]))
        {
            report.push("functor-identity", &[c]);
        }
        'comp: for f in 0..n {
            for g in 0..n {
                let Some(h) = self.source.compose(f, g) else { continue };
                if self.target.compose(self.morphism_map[f], self.morphism_map[g])
                    != Some(self.morphism_map[h])
                {
                    report.push("functor-composition", &[f, g]);
                    break 'comp;
                }
            }
        }
        report
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    pub fn apply_object(&self, c: usize) -> usize {
        self.object_map[c]
    }

    pub fn apply_morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    /// `other` after `self`; sources and targets must chain.
    pub fn then(&self, other: &FunctorData) -> FunctorData {
        assert_eq!(self.target, other.source, "functor composition needs chained ends");
        FunctorData {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self.object_map.iter().map(|&c| other.object_map[c]).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| other.morphism_map[f]).collect(),
        }
    }

    /// Surjective on objects, on the nose.
    pub fn is_strictly_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.n_objects()];
        for &c in &self.object_map {
            hit[c] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_essentially_surjective(&self) -> bool {
        (0..self.target.n_objects()).all(|t| {
            self.object_map.iter().any(|&c| !self.target.iso_set(c, t).is_empty())
        })
    }

    pub fn is_faithful(&self) -> bool {
        for a in 0..self.source.n_objects() {
            for b in 0..self.source.n_objects() {
                let mut images: Vec<usize> = self
                    .source
                    .hom_set(a, b)
                    .into_iter()
                    .map(|f| self.morphism_map[f])
                    .collect();
                let before = images.len();
                images.sort_unstable();
                images.dedup();
                if images.len() != before {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_full(&self) -> bool {
        for a in 0..self.source.n_objects() {
            for b in 0..self.source.n_objects() {
                let images: Vec<usize> = self
                    .source
                    .hom_set(a, b)
                    .into_iter()
                    .map(|f| self.morphism_map[f])
                    .collect();
                let full_on_pair = self
                    .target
                    .hom_set(self.object_map[a], self.object_map[b])
                    .into_iter()
                    .all(|g| images.contains(&g));
                if !full_on_pair {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_faithful() && self.is_full()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }

    /// An equivalence that is also surjective on objects.
    pub fn is_strictly_surjective_equivalence(&self) -> bool {
        self.is_strictly_surjective() && self.is_equivalence()
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let distinct = |v: &[usize], total: usize| {
            let mut seen = vec![false; total];
            v.len() == total && v.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        distinct(&self.object_map, self.target.n_objects())
            && distinct(&self.morphism_map, self.target.n_morphisms())
    }
}

/// All natural transformations from `f` to `g`, each tabulated by its
/// component at every source object, in lexicographic order.
pub fn natural_transformations(
    f: &FunctorData,
    g: &FunctorData,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    search_transformations(f, g, budget, false)
}

/// All natural transformations from `f` to `g` with every component
/// invertible, in lexicographic order.
pub fn natural_isomorphisms(
    f: &FunctorData,
    g: &FunctorData,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    search_transformations(f, g, budget, true)
}

pub fn naturally_isomorphic(f: &FunctorData, g: &FunctorData, budget: &Budget) -> Result<bool> {
    Ok(!natural_isomorphisms(f, g, budget)?.is_empty())
}

fn search_transformations(
    f: &FunctorData,
    g: &FunctorData,
    budget: &Budget,
    iso_only: bool,
) -> Result<Vec<Vec<usize>>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Precondition(
            "natural transformations need parallel functors".into(),
        ));
    }
    let src = f.source();
    let tgt = f.target();
    let n = src.n_objects();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|c| {
            if iso_only {
                tgt.iso_set(f.apply_object(c), g.apply_object(c))
            } else {
                tgt.hom_set(f.apply_object(c), g.apply_object(c))
            }
        })
        .collect();
    // Morphisms grouped by the larger endpoint, so naturality is checked as
    // soon as both components are assigned.
    let mut by_max: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..src.n_morphisms() {
        by_max[src.src(u).max(src.tgt(u))].push(u);
    }
    let mut guard = budget.guard("natural transformation enumeration");
    let mut components = Vec::with_capacity(n);
    let mut out = Vec::new();
    transformation_dfs(f, g, &candidates, &by_max, &mut components, &mut guard, &mut out)?;
    Ok(out)
}

fn transformation_dfs(
    f: &FunctorData,
    g: &FunctorData,
    candidates: &[Vec<usize>],
    by_max: &[Vec<usize>],
    components: &mut Vec<usize>,
    guard: &mut SearchGuard,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let src = f.source();
    let tgt = f.target();
    let c = components.len();
    if c == src.n_objects() {
        out.push(components.clone());
        return Ok(());
    }
    'next: for &eta in &candidates[c] {
        guard.tick()?;
        components.push(eta);
        for &u in &by_max[c] {
            let left = tgt.compose(f.apply_morphism(u), components[src.tgt(u)]);
            let right = tgt.compose(components[src.src(u)], g.apply_morphism(u));
            if left != right {
                components.pop();
                continue 'next;
            }
        }
        transformation_dfs(f, g, candidates, by_max, components, guard, out)?;
        components.pop();
    }
    Ok(())
}

/// A span of functors sharing an apex category.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatCorrespondence {
    left: FunctorData,
    right: FunctorData,
}

/// Classification of a span of categories, weakest to strongest; level by
/// level this mirrors [`CorrClass`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CatCorrClass {
    /// No condition beyond being a span.
    Plain,
    /// The left leg is an equivalence.
    EquivalenceLeg,
    /// The left leg is an equivalence surjective on objects.
    Anamorphism,
    /// The canonical object map into the graph of the collapse is
    /// surjective; equivalently every isomorphism pair out of a leg image
    /// lifts to the apex.
    WeaklyAdmissible,
    /// The canonical object map is bijective; equivalently the lifts are
    /// unique. The span is then isomorphic to the graph of a functor.
    Admissible,
}

impl std::fmt::Display for CatCorrClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CatCorrClass::Plain => "plain",
            CatCorrClass::EquivalenceLeg => "equivalence-leg",
            CatCorrClass::Anamorphism => "anamorphism",
            CatCorrClass::WeaklyAdmissible => "weakly-admissible",
            CatCorrClass::Admissible => "admissible",
        };
        f.write_str(name)
    }
}

/// Admissibility level reported by one of the two finite criteria.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdmLevel {
    Neither,
    WeaklyAdmissible,
    Admissible,
}

impl CatCorrespondence {
    pub fn new(left: FunctorData, right: FunctorData) -> Result<CatCorrespondence> {
        if left.source() != right.source() {
            return Err(Error::Precondition(
                "the two legs of a correspondence must share their apex".into(),
            ));
        }
        Ok(CatCorrespondence { left, right })
    }

    pub fn apex(&self) -> &Arc<FiniteCategory> {
        self.left.source()
    }

    pub fn c1(&self) -> &Arc<FiniteCategory> {
        self.left.target()
    }

    pub fn c2(&self) -> &Arc<FiniteCategory> {
        self.right.target()
    }

    pub fn left(&self) -> &FunctorData {
        &self.left
    }

    pub fn right(&self) -> &FunctorData {
        &self.right
    }

    /// Admissibility level read off the canonical object map into the graph
    /// of the collapsed functor: surjectivity is weak admissibility and
    /// bijectivity is full admissibility. Needs an equivalence left leg.
    pub fn adm_level_by_objects(&self) -> Result<AdmLevel> {
        if !self.left.is_equivalence() {
            return Err(Error::Precondition(
                "the object criterion needs an equivalence as the left leg".into(),
            ));
        }
        let (g, unit) = saturation_graph(self);
        let mut hits = vec![0usize; g.objects().len()];
        for &y in unit.object_map() {
            hits[y] += 1;
        }
        let surjective = hits.iter().all(|&k| k > 0);
        let injective = hits.iter().all(|&k| k <= 1);
        Ok(match (surjective, injective) {
            (true, true) => AdmLevel::Admissible,
            (true, false) => AdmLevel::WeaklyAdmissible,
            _ => AdmLevel::Neither,
        })
    }

    /// Admissibility level read off isomorphism lifting: full admissibility
    /// when every pair of isomorphisms out of `(F(x), G(x))` lifts to exactly
    /// one apex isomorphism out of `x`, weak admissibility when every pair
    /// lifts at least once.
    pub fn adm_level_by_lifting(&self) -> AdmLevel {
        let apex = self.apex();
        let c1 = self.c1();
        let c2 = self.c2();
        let mut exists_all = true;
        let mut unique_all = true;
        for x in 0..apex.n_objects() {
            let fx = self.left.apply_object(x);
            let gx = self.right.apply_object(x);
            let lifts: Vec<usize> = (0..apex.n_morphisms())
                .filter(|&b| apex.src(b) == x && apex.is_iso(b))
                .collect();
            for u in (0..c1.n_morphisms()).filter(|&u| c1.src(u) == fx && c1.is_iso(u)) {
                for v in (0..c2.n_morphisms()).filter(|&v| c2.src(v) == gx && c2.is_iso(v)) {
                    let count = lifts
                        .iter()
                        .filter(|&&b| {
                            self.left.apply_morphism(b) == u && self.right.apply_morphism(b) == v
                        })
                        .count();
                    if count == 0 {
                        exists_all = false;
                    }
                    if count != 1 {
                        unique_all = false;
                    }
                }
            }
        }
        if exists_all && unique_all {
            AdmLevel::Admissible
        } else if exists_all {
            AdmLevel::WeaklyAdmissible
        } else {
            AdmLevel::Neither
        }
    }

    /// The strongest class label the span satisfies. The two admissibility
    /// criteria are computed independently and must agree.
    pub fn classify(&self) -> CatCorrClass {
        if !self.left.is_equivalence() {
            return CatCorrClass::Plain;
        }
        let by_objects = self.adm_level_by_objects().expect("left leg is an equivalence");
        debug_assert_eq!(
            by_objects,
            self.adm_level_by_lifting(),
            "object and lifting criteria disagree"
        );
        match by_objects {
            AdmLevel::Admissible => CatCorrClass::Admissible,
            AdmLevel::WeaklyAdmissible => CatCorrClass::WeaklyAdmissible,
            AdmLevel::Neither if self.left.is_strictly_surjective() => CatCorrClass::Anamorphism,
            AdmLevel::Neither => CatCorrClass::EquivalenceLeg,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.classify() >= CatCorrClass::Admissible
    }

    pub fn is_weakly_admissible(&self) -> bool {
        self.classify() >= CatCorrClass::WeaklyAdmissible
    }
}

/// An object of the graph of a functor: foot objects joined by an
/// isomorphism `psi : Φ(c1) -> c2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphObject {
    pub c1: usize,
    pub c2: usize,
    pub psi: usize,
}

/// A category whose morphisms `x -> y` are the morphisms
/// `base(x) -> base(y)` of a fixed base category, kept with its indexing.
struct HomIndexed {
    category: Arc<FiniteCategory>,
    triples: Vec<(usize, usize, usize)>,
    lookup: HashMap<(usize, usize, usize), usize>,
}

fn category_over_homs(base_cat: &Arc<FiniteCategory>, base: &[usize]) -> HomIndexed {
    let n = base.len();
    let mut triples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for u in base_cat.hom_set(base[x], base[y]) {
                triples.push((x, y, u));
            }
        }
    }
    let lookup: HashMap<(usize, usize, usize), usize> =
        triples.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let nm = triples.len();
    let srcs = triples.iter().map(|&(x, _, _)| x).collect();
    let tgts = triples.iter().map(|&(_, y, _)| y).collect();
    let identity = (0..n)
        .map(|x| lookup[&(x, x, base_cat.identity_of(base[x]))])
        .collect();
    let mut compose = vec![None; nm * nm];
    for (i, &(x, y, u)) in triples.iter().enumerate() {
        for (j, &(y2, z, u2)) in triples.iter().enumerate() {
            if y == y2 {
                let w = base_cat.compose(u, u2).expect("base morphisms chain");
                compose[pair_index(i, j, nm)] = Some(lookup[&(x, z, w)]);
            }
        }
    }
    let category = FiniteCategory::from_parts(n, srcs, tgts, identity, compose);
    HomIndexed { category, triples, lookup }
}

/// The graph of a functor together with its indexing. Objects of the middle
/// category are triples `(c1, c2, psi)`; a morphism from `(c1, c2, psi)` to
/// `(c1', c2', psi')` is carried by an underlying morphism `u : c1 -> c1'`,
/// the second component being forced to `psi' ∘ Φ(u) ∘ psi⁻¹`.
#[derive(Clone, Debug)]
pub struct FunctorGraph {
    corr: CatCorrespondence,
    functor: FunctorData,
    objects: Vec<GraphObject>,
    underlying: Vec<usize>,
    object_lookup: HashMap<(usize, usize, usize), usize>,
    morphism_lookup: HashMap<(usize, usize, usize), usize>,
}

impl FunctorGraph {
    pub fn corr(&self) -> &CatCorrespondence {
        &self.corr
    }

    pub fn into_corr(self) -> CatCorrespondence {
        self.corr
    }

    /// The functor the graph was built from.
    pub fn functor(&self) -> &FunctorData {
        &self.functor
    }

    pub fn objects(&self) -> &[GraphObject] {
        &self.objects
    }

    /// The underlying foot morphism of a middle morphism.
    pub fn underlying(&self, m: usize) -> usize {
        self.underlying[m]
    }

    pub fn object_index(&self, c1: usize, c2: usize, psi: usize) -> Option<usize> {
        self.object_lookup.get(&(c1, c2, psi)).copied()
    }

    /// Index of the middle morphism from object `x` to object `y` carried by
    /// the foot morphism `u`.
    pub fn morphism_index(&self, x: usize, y: usize, u: usize) -> Option<usize> {
        self.morphism_lookup.get(&(x, y, u)).copied()
    }
}

/// Builds the graph span of a functor. The left projection is always a
/// strictly surjective equivalence and the span is always admissible.
pub fn graph(phi: &FunctorData) -> FunctorGraph {
    let c1 = phi.source();
    let c2 = phi.target();
    let mut objects = Vec::new();
    for a in 0..c1.n_objects() {
        for b in 0..c2.n_objects() {
            for psi in c2.iso_set(phi.apply_object(a), b) {
                objects.push(GraphObject { c1: a, c2: b, psi });
            }
        }
    }
    let object_lookup: HashMap<(usize, usize, usize), usize> = objects
        .iter()
        .enumerate()
        .map(|(k, o)| ((o.c1, o.c2, o.psi), k))
        .collect();
    let base: Vec<usize> = objects.iter().map(|o| o.c1).collect();
    let indexed = category_over_homs(c1, &base);
    let underlying: Vec<usize> = indexed.triples.iter().map(|&(_, _, u)| u).collect();
    let mut right_mor = Vec::with_capacity(indexed.triples.len());
    for &(x, y, u) in &indexed.triples {
        let psi_inv = c2.inverse(objects[x].psi).expect("psi is invertible");
        let t = c2
            .compose(psi_inv, phi.apply_morphism(u))
            .expect("psi targets the functor image");
        let v = c2.compose(t, objects[y].psi).expect("psi sources the functor image");
        right_mor.push(v);
    }
    let left = FunctorData::from_parts(
        indexed.category.clone(),
        c1.clone(),
        base,
        underlying.clone(),
    );
    let right = FunctorData::from_parts(
        indexed.category.clone(),
        c2.clone(),
        objects.iter().map(|o| o.c2).collect(),
        right_mor,
    );
    debug_assert!(
        indexed.category.n_morphisms() > 256 || left.is_strictly_surjective_equivalence(),
        "the graph projection must be a strictly surjective equivalence"
    );
    let corr = CatCorrespondence::new(left, right).expect("both projections share the graph");
    FunctorGraph {
        corr,
        functor: phi.clone(),
        objects,
        underlying,
        object_lookup,
        morphism_lookup: indexed.lookup,
    }
}

/// Chosen quasi-inverse data for an equivalence: a preimage object per
/// target object together with an isomorphism `rho : F(preimage) -> object`,
/// the identity whenever an on-the-nose preimage exists.
struct QuasiInverse {
    preimage: Vec<usize>,
    rho: Vec<usize>,
}

fn quasi_inverse(f: &FunctorData, from_top: bool) -> QuasiInverse {
    let src = f.source();
    let tgt = f.target();
    let scan: Vec<usize> = if from_top {
        (0..src.n_objects()).rev().collect()
    } else {
        (0..src.n_objects()).collect()
    };
    let mut preimage = Vec::with_capacity(tgt.n_objects());
    let mut rho = Vec::with_capacity(tgt.n_objects());
    for t in 0..tgt.n_objects() {
        if let Some(&x) = scan.iter().find(|&&x| f.apply_object(x) == t) {
            preimage.push(x);
            rho.push(tgt.identity_of(t));
            continue;
        }
        let (x, iso) = scan
            .iter()
            .find_map(|&x| {
                let isos = tgt.iso_set(f.apply_object(x), t);
                let pick = if from_top { isos.last().copied() } else { isos.first().copied() };
                pick.map(|i| (x, i))
            })
            .expect("an equivalence is essentially surjective");
        preimage.push(x);
        rho.push(iso);
    }
    QuasiInverse { preimage, rho }
}

/// The unique morphism `x -> y` in the source of `f` whose image is `w`.
fn lift_through(f: &FunctorData, x: usize, y: usize, w: usize) -> usize {
    let matches: Vec<usize> = f
        .source()
        .hom_set(x, y)
        .into_iter()
        .filter(|&m| f.apply_morphism(m) == w)
        .collect();
    assert_eq!(matches.len(), 1, "equivalences lift morphisms uniquely");
    matches[0]
}

fn collapse_using(c: &CatCorrespondence, qi: &QuasiInverse) -> FunctorData {
    let c1 = c.c1();
    let object_map: Vec<usize> = (0..c1.n_objects())
        .map(|t| c.right().apply_object(qi.preimage[t]))
        .collect();
    let mut morphism_map = Vec::with_capacity(c1.n_morphisms());
    for u in 0..c1.n_morphisms() {
        let a = c1.src(u);
        let b = c1.tgt(u);
        let ua = c1.compose(qi.rho[a], u).expect("rho targets the source of u");
        let rho_b_inv = c1.inverse(qi.rho[b]).expect("rho is an isomorphism");
        let w = c1.compose(ua, rho_b_inv).expect("transported morphism chains");
        let m = lift_through(c.left(), qi.preimage[a], qi.preimage[b], w);
        morphism_map.push(c.right().apply_morphism(m));
    }
    FunctorData::new(c.c1().clone(), c.c2().clone(), object_map, morphism_map)
        .expect("the collapse of an equivalence-leg span is a functor")
}

/// Composes the right leg with a chosen quasi-inverse of the left leg,
/// producing an honest functor between the feet. Preimages are scanned from
/// the bottom, preferring on-the-nose ones; any admissible choice yields a
/// naturally isomorphic output.
pub fn collapse(c: &CatCorrespondence) -> Result<FunctorData> {
    collapse_with(c, false)
}

/// Same as [`collapse`] with the opposite scan order for preimages and
/// comparison isomorphisms; useful to confirm independence of choices.
pub fn collapse_from_top(c: &CatCorrespondence) -> Result<FunctorData> {
    collapse_with(c, true)
}

fn collapse_with(c: &CatCorrespondence, from_top: bool) -> Result<FunctorData> {
    if !c.left().is_equivalence() {
        return Err(Error::Precondition(
            "collapse needs an equivalence as the left leg".into(),
        ));
    }
    Ok(collapse_using(c, &quasi_inverse(c.left(), from_top)))
}

/// Builds the graph of the collapse along with the comparison functor from
/// the original apex into it. The caller guarantees an equivalence left leg.
fn saturation_graph(c: &CatCorrespondence) -> (FunctorGraph, FunctorData) {
    let qi = quasi_inverse(c.left(), false);
    let phi = collapse_using(c, &qi);
    let g = graph(&phi);
    let apex = c.apex();
    let mut unit_obj = Vec::with_capacity(apex.n_objects());
    for x in 0..apex.n_objects() {
        let fx = c.left().apply_object(x);
        let can = lift_through(c.left(), qi.preimage[fx], x, qi.rho[fx]);
        let psi = c.right().apply_morphism(can);
        let idx = g
            .object_index(fx, c.right().apply_object(x), psi)
            .expect("the unit lands in the graph");
        unit_obj.push(idx);
    }
    let mut unit_mor = Vec::with_capacity(apex.n_morphisms());
    for m in 0..apex.n_morphisms() {
        let idx = g
            .morphism_index(unit_obj[apex.src(m)], unit_obj[apex.tgt(m)], c.left().apply_morphism(m))
            .expect("the unit image of a morphism lies in the graph");
        unit_mor.push(idx);
    }
    let mid = g.corr().apex().clone();
    let unit = FunctorData::new(apex.clone(), mid, unit_obj, unit_mor)
        .expect("the unit comparison is a functor");
    (g, unit)
}

/// Checks that `h` is a morphism of correspondences from `a` to `b`: a
/// functor between the apexes commuting with both legs on the nose.
pub fn is_corr_morphism(a: &CatCorrespondence, b: &CatCorrespondence, h: &FunctorData) -> bool {
    if h.source() != a.apex() || h.target() != b.apex() {
        return false;
    }
    if a.c1() != b.c1() || a.c2() != b.c2() {
        return false;
    }
    (0..a.apex().n_objects()).all(|x| {
        b.left().apply_object(h.apply_object(x)) == a.left().apply_object(x)
            && b.right().apply_object(h.apply_object(x)) == a.right().apply_object(x)
    }) && (0..a.apex().n_morphisms()).all(|m| {
        b.left().apply_morphism(h.apply_morphism(m)) == a.left().apply_morphism(m)
            && b.right().apply_morphism(h.apply_morphism(m)) == a.right().apply_morphism(m)
    })
}

/// Result of saturating a span: the graph of the collapsed functor, the
/// comparison functor into it, and, for weakly admissible inputs, the
/// quotient-by-relation presentation which is checked against the graph.
pub struct Saturated {
    pub corr: CatCorrespondence,
    pub unit: FunctorData,
    pub quotient: Option<CatCorrespondence>,
}

/// Saturates a span with an equivalence left leg. The result is admissible,
/// the unit commutes with both legs, and it is an isomorphism exactly when
/// the input was already admissible.
pub fn saturate(c: &CatCorrespondence) -> Result<Saturated> {
    if !c.left().is_equivalence() {
        return Err(Error::Precondition(
            "saturation needs an equivalence as the left leg".into(),
        ));
    }
    let (g, unit) = saturation_graph(c);
    debug_assert!(
        is_corr_morphism(c, g.corr(), &unit),
        "the unit must commute with both legs"
    );
    let mut hits = vec![0usize; g.objects().len()];
    for &y in unit.object_map() {
        hits[y] += 1;
    }
    let quotient = if hits.iter().all(|&k| k > 0) {
        let (qcorr, reps) = quotient_saturation(c)?;
        let obj_img: Vec<usize> = reps.iter().map(|&r| unit.apply_object(r)).collect();
        let qmid = qcorr.apex();
        let mut mor_img = Vec::with_capacity(qmid.n_morphisms());
        for m in 0..qmid.n_morphisms() {
            let u = qcorr.left().apply_morphism(m);
            let idx = g
                .morphism_index(obj_img[qmid.src(m)], obj_img[qmid.tgt(m)], u)
                .expect("quotient morphisms land in the graph");
            mor_img.push(idx);
        }
        let cmp = FunctorData::new(qmid.clone(), g.corr().apex().clone(), obj_img, mor_img)
            .expect("the quotient comparison is a functor");
        assert!(
            cmp.is_isomorphism() && is_corr_morphism(&qcorr, g.corr(), &cmp),
            "quotient saturation must agree with the graph saturation"
        );
        Some(qcorr)
    } else {
        None
    };
    Ok(Saturated { corr: g.into_corr(), unit, quotient })
}

/// The quotient presentation of the saturation: apex objects are identified
/// when both legs agree on them and on the unique comparison isomorphism
/// over the identity; morphisms come from the first foot. Returns the span
/// and the representative of each class.
fn quotient_saturation(c: &CatCorrespondence) -> Result<(CatCorrespondence, Vec<usize>)> {
    let apex = c.apex();
    let c1 = c.c1();
    let n = apex.n_objects();
    // Uniqueness of the comparison isomorphism is forced by the left leg
    // being an equivalence; checking it guards substrate bugs.
    let mut related = HashMap::new();
    for x in 0..n {
        for y in x + 1..n {
            if c.left().apply_object(x) != c.left().apply_object(y)
                || c.right().apply_object(x) != c.right().apply_object(y)
            {
                continue;
            }
            let ident = c1.identity_of(c.left().apply_object(x));
            let alphas: Vec<usize> = apex
                .hom_set(x, y)
                .into_iter()
                .filter(|&a| apex.is_iso(a) && c.left().apply_morphism(a) == ident)
                .collect();
            if alphas.len() != 1 {
                return Err(Error::Precondition(format!(
                    "quotient saturation needs a unique comparison isomorphism; \
                     objects {x} and {y} admit {}",
                    alphas.len()
                )));
            }
            let g_ident = c.c2().identity_of(c.right().apply_object(x));
            related.insert((x, y), c.right().apply_morphism(alphas[0]) == g_ident);
        }
    }
    let mut class: Vec<Option<usize>> = vec![None; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class[x].is_some() {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        class[x] = Some(k);
        for y in x + 1..n {
            if class[y].is_none() && related.get(&(x, y)) == Some(&true) {
                class[y] = Some(k);
            }
        }
    }
    let base: Vec<usize> = reps.iter().map(|&r| c.left().apply_object(r)).collect();
    let indexed = category_over_homs(c1, &base);
    let left = FunctorData::from_parts(
        indexed.category.clone(),
        c1.clone(),
        base.clone(),
        indexed.triples.iter().map(|&(_, _, u)| u).collect(),
    );
    let mut right_mor = Vec::with_capacity(indexed.triples.len());
    for &(i, j, u) in &indexed.triples {
        let m = lift_through(c.left(), reps[i], reps[j], u);
        right_mor.push(c.right().apply_morphism(m));
    }
    let right = FunctorData::from_parts(
        indexed.category.clone(),
        c.c2().clone(),
        reps.iter().map(|&r| c.right().apply_object(r)).collect(),
        right_mor,
    );
    let qcorr = CatCorrespondence::new(left, right).expect("both legs share the quotient apex");
    Ok((qcorr, reps))
}

/// Composes spans by the strict fiber product of the apexes over the shared
/// foot: objects and morphisms are pairs agreeing in the middle on the nose.
pub fn compose_cat(a: &CatCorrespondence, b: &CatCorrespondence) -> Result<CatCorrespondence> {
    if a.c2() != b.c1() {
        return Err(Error::Precondition(
            "composition needs matching middle feet".into(),
        ));
    }
    let ca = a.apex();
    let cb = b.apex();
    let mut objects = Vec::new();
    for x in 0..ca.n_objects() {
        for y in 0..cb.n_objects() {
            if a.right().apply_object(x) == b.left().apply_object(y) {
                objects.push((x, y));
            }
        }
    }
    let obj_lookup: HashMap<(usize, usize), usize> =
        objects.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut morphisms = Vec::new();
    for m in 0..ca.n_morphisms() {
        for m2 in 0..cb.n_morphisms() {
            if a.right().apply_morphism(m) == b.left().apply_morphism(m2) {
                morphisms.push((m, m2));
            }
        }
    }
    let mor_lookup: HashMap<(usize, usize), usize> =
        morphisms.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let nm = morphisms.len();
    let srcs = morphisms
        .iter()
        .map(|&(m, m2)| obj_lookup[&(ca.src(m), cb.src(m2))])
        .collect();
    let tgts = morphisms
        .iter()
        .map(|&(m, m2)| obj_lookup[&(ca.tgt(m), cb.tgt(m2))])
        .collect();
    let identity = objects
        .iter()
        .map(|&(x, y)| mor_lookup[&(ca.identity_of(x), cb.identity_of(y))])
        .collect();
    let mut compose = vec![None; nm * nm];
    for (i, &(m, m2)) in morphisms.iter().enumerate() {
        for (j, &(p, p2)) in morphisms.iter().enumerate() {
            if let (Some(cm), Some(cp)) = (ca.compose(m, p), cb.compose(m2, p2)) {
                compose[pair_index(i, j, nm)] = Some(mor_lookup[&(cm, cp)]);
            }
        }
    }
    let middle = FiniteCategory::from_parts(objects.len(), srcs, tgts, identity, compose);
    let left = FunctorData::from_parts(
        middle.clone(),
        a.c1().clone(),
        objects.iter().map(|&(x, _)| a.left().apply_object(x)).collect(),
        morphisms.iter().map(|&(m, _)| a.left().apply_morphism(m)).collect(),
    );
    let right = FunctorData::from_parts(
        middle,
        b.c2().clone(),
        objects.iter().map(|&(_, y)| b.right().apply_object(y)).collect(),
        morphisms.iter().map(|&(_, m2)| b.right().apply_morphism(m2)).collect(),
    );
    CatCorrespondence::new(left, right)
}

/// The double cover span over `c`: the apex holds two linked copies of every
/// object (the product with the two-object codiscrete groupoid) and both
/// legs project down to `c`. The canonical object map is two-to-one, so the
/// span is never admissible for nonempty `c`.
pub fn fold_correspondence(c: &Arc<FiniteCategory>) -> CatCorrespondence {
    let n = c.n_objects();
    let nm = c.n_morphisms();
    let total = 4 * nm;
    let mut srcs = Vec::with_capacity(total);
    let mut tgts = Vec::with_capacity(total);
    for e in 0..4 {
        for u in 0..nm {
            srcs.push((e / 2) * n + c.src(u));
            tgts.push((e % 2) * n + c.tgt(u));
        }
    }
    let identity = (0..2 * n)
        .map(|o| {
            let copy = o / n;
            (copy * 2 + copy) * nm + c.identity_of(o % n)
        })
        .collect();
    let mut compose = vec![None; total * total];
    for f in 0..total {
        let (e, u) = (f / nm, f % nm);
        for g in 0..total {
            let (e2, u2) = (g / nm, g % nm);
            if e % 2 == e2 / 2 {
                if let Some(w) = c.compose(u, u2) {
                    compose[pair_index(f, g, total)] = Some(((e / 2) * 2 + e2 % 2) * nm + w);
                }
            }
        }
    }
    let middle = FiniteCategory::from_parts(2 * n, srcs, tgts, identity, compose);
    let leg = FunctorData::from_parts(
        middle,
        c.clone(),
        (0..2 * n).map(|o| o % n).collect(),
        (0..total).map(|f| f % nm).collect(),
    );
    CatCorrespondence::new(leg.clone(), leg).expect("both legs are the same projection")
}

/// All morphisms of correspondences `a -> b` over identical feet: functors
/// between the apexes commuting with both legs. Returned in lexicographic
/// order of (object map, morphism map).
pub fn enumerate_corr_morphisms(
    a: &CatCorrespondence,
    b: &CatCorrespondence,
    budget: &Budget,
) -> Result<Vec<FunctorData>> {
    if a.c1() != b.c1() || a.c2() != b.c2() {
        return Err(Error::Precondition(
            "correspondence morphisms need identical feet".into(),
        ));
    }
    let ca = a.apex();
    let cb = b.apex();
    let obj_candidates: Vec<Vec<usize>> = (0..ca.n_objects())
        .map(|x| {
            (0..cb.n_objects())
                .filter(|&y| {
                    b.left().apply_object(y) == a.left().apply_object(x)
                        && b.right().apply_object(y) == a.right().apply_object(x)
                })
                .collect()
        })
        .collect();
    let mut guard = budget.guard("correspondence morphism enumeration");
    let mut objs: Vec<usize> = Vec::with_capacity(ca.n_objects());
    let mut out = Vec::new();
    object_map_dfs(a, b, &obj_candidates, &mut objs, &mut guard, &mut out)?;
    Ok(out)
}

fn object_map_dfs(
    a: &CatCorrespondence,
    b: &CatCorrespondence,
    obj_candidates: &[Vec<usize>],
    objs: &mut Vec<usize>,
    guard: &mut SearchGuard,
    out: &mut Vec<FunctorData>,
) -> Result<()> {
    let ca = a.apex();
    let cb = b.apex();
    if objs.len() < ca.n_objects() {
        let x = objs.len();
        for &y in &obj_candidates[x] {
            guard.tick()?;
            objs.push(y);
            object_map_dfs(a, b, obj_candidates, objs, guard, out)?;
            objs.pop();
        }
        return Ok(());
    }
    // Morphism candidates over the fixed object map, legs and endpoints
    // both enforced; identities are pinned.
    let mor_candidates: Vec<Vec<usize>> = (0..ca.n_morphisms())
        .map(|m| {
            cb.hom_set(objs[ca.src(m)], objs[ca.tgt(m)])
                .into_iter()
                .filter(|&n2| {
                    b.left().apply_morphism(n2) == a.left().apply_morphism(m)
                        && b.right().apply_morphism(n2) == a.right().apply_morphism(m)
                })
                .collect()
        })
        .collect();
    if mor_candidates.iter().any(|c| c.is_empty()) {
        return Ok(());
    }
    let mut img: Vec<Option<usize>> = vec![None; ca.n_morphisms()];
    for x in 0..ca.n_objects() {
        let pinned = cb.identity_of(objs[x]);
        if !mor_candidates[ca.identity_of(x)].contains(&pinned) {
            return Ok(());
        }
        img[ca.identity_of(x)] = Some(pinned);
    }
    if !partial_functor_consistent(ca, cb, &img) {
        return Ok(());
    }
    let mut maps = Vec::new();
    morphism_map_dfs(ca, cb, &mor_candidates, 0, &mut img, guard, &mut maps)?;
    for mor_map in maps {
        let h = FunctorData::new(ca.clone(), cb.clone(), objs.clone(), mor_map)
            .expect("search enforces functoriality");
        out.push(h);
    }
    Ok(())
}

fn morphism_map_dfs(
    ca: &Arc<FiniteCategory>,
    cb: &Arc<FiniteCategory>,
    candidates: &[Vec<usize>],
    from: usize,
    img: &mut Vec<Option<usize>>,
    guard: &mut SearchGuard,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let Some(m) = (from..ca.n_morphisms()).find(|&m| img[m].is_none()) else {
        out.push(img.iter().map(|o| o.expect("complete")).collect());
        return Ok(());
    };
    for &n2 in &candidates[m] {
        guard.tick()?;
        img[m] = Some(n2);
        if partial_functor_consistent(ca, cb, img) {
            morphism_map_dfs(ca, cb, candidates, m + 1, img, guard, out)?;
        }
        img[m] = None;
    }
    Ok(())
}

/// Full rescan of composition preservation on the assigned part of a partial
/// morphism map, including composites whose slot was assigned after its
/// factors.
fn partial_functor_consistent(
    ca: &Arc<FiniteCategory>,
    cb: &Arc<FiniteCategory>,
    img: &[Option<usize>],
) -> bool {
    for m in 0..ca.n_morphisms() {
        let Some(pm) = img[m] else { continue };
        for m2 in 0..ca.n_morphisms() {
            let Some(pm2) = img[m2] else { continue };
            if let Some(w) = ca.compose(m, m2) {
                if let Some(pw) = img[w] {
                    if cb.compose(pm, pm2) != Some(pw) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// First isomorphism of correspondences `a -> b`, if any.
pub fn corr_iso_search(
    a: &CatCorrespondence,
    b: &CatCorrespondence,
    budget: &Budget,
) -> Result<Option<FunctorData>> {
    let all = enumerate_corr_morphisms(a, b, budget)?;
    Ok(all.into_iter().find(|h| h.is_isomorphism()))
}

/// Shared comparison of a canonically built family against an enumerated
/// hom-set: every image must be a member, images must be pairwise distinct,
/// and the counts must agree.
fn canonical_map_report(
    images: &[Option<(Vec<usize>, Vec<usize>)>],
    homs: &[FunctorData],
    report: &mut ValidationReport,
) {
    for (i, img) in images.iter().enumerate() {
        let member = img.as_ref().is_some_and(|(o, m)| {
            homs.iter().any(|h| h.object_map() == o.as_slice() && h.morphism_map() == m.as_slice())
        });
        if !member {
            report.push_first("canonical-map-image", &[i]);
        }
    }
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i].is_some() && images[i] == images[j] {
                report.push_first("canonical-map-injective", &[i, j]);
            }
        }
    }
    if images.len() != homs.len() {
        report.push("canonical-map-surjective", &[images.len(), homs.len()]);
    }
}

/// Compares correspondence morphisms `graph(phi) -> graph(psi)` with the
/// natural transformations `phi -> psi` having invertible components, via
/// `eta ↦ ((c1, c2, theta) ↦ (c1, c2, theta ∘ eta⁻¹))`. Over a groupoid
/// target every natural transformation qualifies, which is the graph
/// full-faithfulness statement; the report then also checks that no
/// transformation was missed.
pub fn graph_hom_report(
    phi: &FunctorData,
    psi: &FunctorData,
    budget: &Budget,
) -> Result<ValidationReport> {
    if phi.source() != psi.source() || phi.target() != psi.target() {
        return Err(Error::Precondition(
            "graph comparison needs parallel functors".into(),
        ));
    }
    let c2 = phi.target();
    let g_phi = graph(phi);
    let g_psi = graph(psi);
    let natiso = natural_isomorphisms(phi, psi, budget)?;
    let homs = enumerate_corr_morphisms(g_phi.corr(), g_psi.corr(), budget)?;
    let mut report = ValidationReport::new();
    if c2.is_groupoid() {
        let all = natural_transformations(phi, psi, budget)?;
        if all.len() != natiso.len() {
            report.push("groupoid-components-invertible", &[all.len(), natiso.len()]);
        }
    }
    let mut images = Vec::with_capacity(natiso.len());
    for eta in &natiso {
        images.push(graph_hom_image(&g_phi, &g_psi, c2, eta));
    }
    canonical_map_report(&images, &homs, &mut report);
    Ok(report)
}

fn graph_hom_image(
    g_phi: &FunctorGraph,
    g_psi: &FunctorGraph,
    c2: &Arc<FiniteCategory>,
    eta: &[usize],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut obj_img = Vec::with_capacity(g_phi.objects().len());
    for o in g_phi.objects() {
        let eta_inv = c2.inverse(eta[o.c1])?;
        let theta = c2.compose(eta_inv, o.psi)?;
        obj_img.push(g_psi.object_index(o.c1, o.c2, theta)?);
    }
    let middle = g_phi.corr().apex();
    let mut mor_img = Vec::with_capacity(middle.n_morphisms());
    for m in 0..middle.n_morphisms() {
        let idx = g_psi.morphism_index(
            obj_img[middle.src(m)],
            obj_img[middle.tgt(m)],
            g_phi.underlying(m),
        )?;
        mor_img.push(idx);
    }
    Some((obj_img, mor_img))
}

/// Compares natural transformations `collapse(c) -> psi` (restricted to
/// invertible components, which loses nothing over a groupoid foot) with
/// correspondence morphisms `c -> graph(psi)`, via the canonical assignment
/// twisting the unit by `eta⁻¹`. A passing report on instances where the
/// second foot is a groupoid is the adjunction hom bijection.
pub fn adjunction_report(
    c: &CatCorrespondence,
    psi: &FunctorData,
    budget: &Budget,
) -> Result<ValidationReport> {
    if psi.source() != c.c1() || psi.target() != c.c2() {
        return Err(Error::Precondition(
            "the adjunction compares a span against a functor between its feet".into(),
        ));
    }
    if !c.left().is_equivalence() {
        return Err(Error::Precondition(
            "the adjunction needs an equivalence as the left leg".into(),
        ));
    }
    let c2 = c.c2();
    let (g, unit) = saturation_graph(c);
    let phi = g.functor().clone();
    let g_psi = graph(psi);
    let natiso = natural_isomorphisms(&phi, psi, budget)?;
    let homs = enumerate_corr_morphisms(c, g_psi.corr(), budget)?;
    let mut report = ValidationReport::new();
    if c2.is_groupoid() {
        let all = natural_transformations(&phi, psi, budget)?;
        if all.len() != natiso.len() {
            report.push("groupoid-components-invertible", &[all.len(), natiso.len()]);
        }
    }
    let apex = c.apex();
    let mut images = Vec::with_capacity(natiso.len());
    for eta in &natiso {
        images.push(adjunction_image(c, &g, &unit, &g_psi, c2, eta, apex));
    }
    canonical_map_report(&images, &homs, &mut report);
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn adjunction_image(
    c: &CatCorrespondence,
    g: &FunctorGraph,
    unit: &FunctorData,
    g_psi: &FunctorGraph,
    c2: &Arc<FiniteCategory>,
    eta: &[usize],
    apex: &Arc<FiniteCategory>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut obj_img = Vec::with_capacity(apex.n_objects());
    for x in 0..apex.n_objects() {
        let fx = c.left().apply_object(x);
        let psi_x = g.objects()[unit.apply_object(x)].psi;
        let eta_inv = c2.inverse(eta[fx])?;
        let theta = c2.compose(eta_inv, psi_x)?;
        obj_img.push(g_psi.object_index(fx, c.right().apply_object(x), theta)?);
    }
    let mut mor_img = Vec::with_capacity(apex.n_morphisms());
    for m in 0..apex.n_morphisms() {
        let idx = g_psi.morphism_index(
            obj_img[apex.src(m)],
            obj_img[apex.tgt(m)],
            c.left().apply_morphism(m),
        )?;
        mor_img.push(idx);
    }
    Some((obj_img, mor_img))
}

/// The plain category underlying an internal groupoid: same objects, same
/// morphisms, same composition, with the ring structure forgotten.
pub fn underlying_category(g: &InternalRingGroupoid) -> Arc<FiniteCategory> {
    let n = g.morphism_ring().size();
    let srcs = (0..n).map(|f| g.source_of(f)).collect();
    let tgts = (0..n).map(|f| g.target_of(f)).collect();
    let identity = (0..g.object_ring().size()).map(|c| g.identity_of(c)).collect();
    let mut compose = vec![None; n * n];
    for f in 0..n {
        for h in 0..n {
            compose[pair_index(f, h, n)] = g.compose(f, h);
        }
    }
    FiniteCategory::from_parts(g.object_ring().size(), srcs, tgts, identity, compose)
}

/// Reads a groupoid functor as a plain functor between the underlying
/// categories.
pub fn underlying_functor(
    f: &GroupoidFunctor,
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
) -> FunctorData {
    FunctorData::from_parts(source, target, f.object_map.clone(), f.morphism_map.clone())
}

/// Side-by-side classification of a quasi-ideal span and its categorical
/// shadow through the cone groupoids.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BridgeReport {
    pub dg_class: CorrClass,
    pub cat_class: CatCorrClass,
}

impl BridgeReport {
    pub fn admissibility_agrees(&self) -> bool {
        (self.dg_class >= CorrClass::Admissible) == (self.cat_class >= CatCorrClass::Admissible)
    }

    pub fn weak_admissibility_agrees(&self) -> bool {
        (self.dg_class >= CorrClass::WeaklyAdmissible)
            == (self.cat_class >= CatCorrClass::WeaklyAdmissible)
    }

    /// Whether the two classifications agree level by level.
    pub fn classes_agree(&self) -> bool {
        self.dg_class as u8 == self.cat_class as u8
    }
}

/// Classifies a quasi-ideal span both algebraically and through its cone
/// groupoids viewed as plain categories. The two labels agree on every
/// input; the report records both so the agreement can be asserted.
pub fn bridge_two_notions(c: &DGCorrespondence) -> BridgeReport {
    let dg_class = c.classify();
    let apex_cat = underlying_category(&cone(c.apex()));
    let c1_cat = underlying_category(&cone(c.r1()));
    let c2_cat = underlying_category(&cone(c.r2()));
    let left = underlying_functor(&cone_functor(c.left()), apex_cat.clone(), c1_cat);
    let right = underlying_functor(&cone_functor(c.right()), apex_cat, c2_cat);
    let span = CatCorrespondence::new(left, right).expect("cone functors share the apex cone");
    BridgeReport { dg_class, cat_class: span.classify() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::{instances, QMorphism, QuasiIdeal};

    fn wide_budget() -> Budget {
        Budget { max_carrier: 4096, max_search: 10_000_000 }
    }

    #[test]
    fn validation_pins_broken_identities() {
        // Claiming the arrow as the identity of object 0 breaks the target
        // law first.
        let bad = FiniteCategory::new(
            2,
            vec![0, 1, 0],
            vec![0, 1, 1],
            vec![2, 1],
            walking_arrow().compose.clone(),
        );
        match bad {
            Err(Error::Invalid { report, .. }) => {
                assert_eq!(report.violations[0].law, "identity-target");
                assert_eq!(report.violations[0].witness, vec![0]);
            }
            other => panic!("expected an axiom violation, got {other:?}"),
        }
        assert!(codiscrete(3).validate().ok());
        assert!(!walking_arrow().is_groupoid());
        assert!(codiscrete(2).is_groupoid());
    }

    #[test]
    fn graph_counts_on_small_functors() {
        // Identity on two discrete objects: only identity comparison isos.
        let d2 = discrete(2);
        let g = graph(&FunctorData::identity(&d2));
        assert_eq!(g.objects().len(), 2);
        assert_eq!(g.corr().apex().n_morphisms(), 2);
        assert_eq!(g.corr().classify(), CatCorrClass::Admissible);
        // Collapsing the codiscrete pair groupoid to the point: two objects
        // and one morphism in every hom-set, matching the morphism count of
        // the source.
        let pair = codiscrete(2);
        let point = discrete(1);
        let to_point = FunctorData::new(pair.clone(), point, vec![0, 0], vec![0; 4]).unwrap();
        let g = graph(&to_point);
        assert_eq!(g.objects().len(), 2);
        assert_eq!(g.corr().apex().n_morphisms(), 4);
        assert_eq!(g.corr().apex().n_morphisms(), pair.n_morphisms());
        assert_eq!(g.corr().classify(), CatCorrClass::Admissible);
    }

    #[test]
    fn fold_over_a_groupoid_is_an_anamorphism_only() {
        let fold = fold_correspondence(&codiscrete(2));
        assert_eq!(fold.apex().n_objects(), 4);
        assert!(fold.left().is_strictly_surjective_equivalence());
        assert_eq!(fold.classify(), CatCorrClass::Anamorphism);
        assert_eq!(fold.adm_level_by_objects().unwrap(), AdmLevel::Neither);
        assert_eq!(fold.adm_level_by_lifting(), AdmLevel::Neither);
    }

    #[test]
    fn fold_over_a_discrete_category_is_weakly_admissible() {
        let fold = fold_correspondence(&discrete(3));
        assert_eq!(fold.classify(), CatCorrClass::WeaklyAdmissible);
        let sat = saturate(&fold).unwrap();
        // The saturation collapses the two linked copies back to three
        // objects, via either presentation.
        assert_eq!(sat.corr.apex().n_objects(), 3);
        let quotient = sat.quotient.expect("weakly admissible spans quotient");
        assert_eq!(quotient.apex().n_objects(), 3);
        assert_eq!(sat.corr.classify(), CatCorrClass::Admissible);
        assert!(!sat.unit.is_isomorphism());
    }

    #[test]
    fn non_surjective_leg_classifies_as_plain() {
        let point = discrete(1);
        let two = discrete(2);
        let include = FunctorData::new(point.clone(), two, vec![0], vec![0]).unwrap();
        let span = CatCorrespondence::new(include, FunctorData::identity(&point)).unwrap();
        assert_eq!(span.classify(), CatCorrClass::Plain);
    }

    #[test]
    fn collapse_of_a_graph_recovers_the_functor_up_to_natural_isomorphism() {
        let pair = codiscrete(2);
        let ident = FunctorData::identity(&pair);
        let g = graph(&ident);
        let low = collapse(g.corr()).unwrap();
        let high = collapse_from_top(g.corr()).unwrap();
        let budget = wide_budget();
        assert!(naturally_isomorphic(&low, &ident, &budget).unwrap());
        assert!(naturally_isomorphic(&low, &high, &budget).unwrap());
        // An identity left leg makes the collapse equal to the right leg on
        // the nose.
        let z2 = cyclic_group_category(2);
        let swap_free = FunctorData::new(z2.clone(), z2.clone(), vec![0], vec![0, 1]).unwrap();
        let span = CatCorrespondence::new(FunctorData::identity(&z2), swap_free.clone()).unwrap();
        assert_eq!(collapse(&span).unwrap(), swap_free);
    }

    #[test]
    fn natural_transformation_counts_match_hand_calculations() {
        let budget = wide_budget();
        let z2 = cyclic_group_category(2);
        let ident = FunctorData::identity(&z2);
        // The center of Z/2 has two elements and both give natural
        // transformations of the identity.
        assert_eq!(natural_transformations(&ident, &ident, &budget).unwrap().len(), 2);
        // Into the walking arrow only the single non-invertible component
        // exists, so there are transformations but no isomorphisms.
        let point = discrete(1);
        let arrow = walking_arrow();
        let at0 = FunctorData::new(point.clone(), arrow.clone(), vec![0], vec![0]).unwrap();
        let at1 = FunctorData::new(point.clone(), arrow.clone(), vec![1], vec![1]).unwrap();
        assert_eq!(natural_transformations(&at0, &at1, &budget).unwrap().len(), 1);
        assert!(natural_isomorphisms(&at0, &at1, &budget).unwrap().is_empty());
        let report = graph_hom_report(&at0, &at1, &budget).unwrap();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn graph_hom_sets_biject_with_natural_transformations_over_groupoids() {
        let budget = wide_budget();
        let d2 = discrete(2);
        let z2 = cyclic_group_category(2);
        let phi = FunctorData::new(d2.clone(), z2.clone(), vec![0, 0], vec![0, 0]).unwrap();
        assert_eq!(natural_transformations(&phi, &phi, &budget).unwrap().len(), 4);
        let report = graph_hom_report(&phi, &phi, &budget).unwrap();
        assert!(report.ok(), "{report}");
        let homs =
            enumerate_corr_morphisms(graph(&phi).corr(), graph(&phi).corr(), &budget).unwrap();
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn adjunction_hom_bijection_on_the_double_cover() {
        let budget = wide_budget();
        let fold = fold_correspondence(&discrete(2));
        let ident = FunctorData::identity(&discrete(2));
        let report = adjunction_report(&fold, &ident, &budget).unwrap();
        assert!(report.ok(), "{report}");
        let g = graph(&ident);
        let homs = enumerate_corr_morphisms(&fold, g.corr(), &budget).unwrap();
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn saturating_an_admissible_span_gives_an_isomorphic_unit() {
        let pair = codiscrete(2);
        let point = discrete(1);
        let to_point = FunctorData::new(pair, point, vec![0, 0], vec![0; 4]).unwrap();
        let g = graph(&to_point);
        let sat = saturate(g.corr()).unwrap();
        assert!(sat.unit.is_isomorphism());
        assert!(is_corr_morphism(g.corr(), &sat.corr, &sat.unit));
        // Saturation is idempotent up to isomorphism of correspondences.
        let sat2 = saturate(&sat.corr).unwrap();
        assert!(sat2.unit.is_isomorphism());
        let iso = corr_iso_search(&sat2.corr, &sat.corr, &wide_budget()).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn composing_graphs_saturates_to_the_graph_of_the_composite() {
        let budget = wide_budget();
        let pair = codiscrete(2);
        let ident = FunctorData::identity(&pair);
        let a = graph(&ident);
        let b = graph(&ident);
        let composite = compose_cat(a.corr(), b.corr()).unwrap();
        assert_eq!(composite.apex().n_objects(), 8);
        // The strict fiber product is weakly admissible but never admissible
        // over a foot with a non-identity isomorphism.
        assert_eq!(composite.classify(), CatCorrClass::WeaklyAdmissible);
        let sat = saturate(&composite).unwrap();
        let target = graph(&ident);
        let iso = corr_iso_search(&sat.corr, target.corr(), &budget).unwrap();
        assert!(iso.is_some(), "saturated composite matches the composite graph");
        // Composing with an identity graph saturates back to the argument.
        let again = compose_cat(a.corr(), &composite).unwrap();
        let sat_again = saturate(&again).unwrap();
        assert!(corr_iso_search(&sat_again.corr, target.corr(), &budget).unwrap().is_some());
    }

    #[test]
    fn criteria_agree_on_a_mixed_bag_of_spans() {
        let spans = vec![
            fold_correspondence(&discrete(2)),
            fold_correspondence(&codiscrete(2)),
            graph(&FunctorData::identity(&codiscrete(2))).into_corr(),
            graph(&FunctorData::identity(&discrete(3))).into_corr(),
        ];
        for span in &spans {
            let by_objects = span.adm_level_by_objects().unwrap();
            let by_lifting = span.adm_level_by_lifting();
            assert_eq!(by_objects, by_lifting);
        }
    }

    #[test]
    fn bridge_agrees_on_graph_spans_and_butterfly_spans() {
        // Identity graph over a nonzero module: an anamorphism on both
        // sides, since the comparison map misses the twisted triples.
        let q = instances::cyclic_with_scaling(2, 0);
        let span = crate::corr::graph_corr(&QMorphism::identity(&q));
        let report = bridge_two_notions(&span);
        assert_eq!(report.dg_class, CorrClass::Anamorphism);
        assert_eq!(report.cat_class, CatCorrClass::Anamorphism);
        assert!(report.classes_agree());
        // A butterfly-backed span is admissible on both sides.
        let adm = crate::butterfly::from_butterfly(&crate::butterfly::mod2_reduction_butterfly());
        let report = bridge_two_notions(&adm);
        assert_eq!(report.dg_class, CorrClass::Admissible);
        assert_eq!(report.cat_class, CatCorrClass::Admissible);
        assert!(report.admissibility_agrees() && report.weak_admissibility_agrees());
        // Zero modules reduce the bridge to plain object maps; a
        // non-injective base map fails on both sides.
        let z4 = crate::ring::FiniteRing::cyclic(4).unwrap();
        let z2 = crate::ring::FiniteRing::cyclic(2).unwrap();
        let apex = QuasiIdeal::new(crate::module::FiniteModule::zero_module(z4.clone()), vec![0]).unwrap();
        let foot = QuasiIdeal::new(crate::module::FiniteModule::zero_module(z2.clone()), vec![0]).unwrap();
        let reduce = QMorphism::new(apex.clone(), foot, vec![0, 1, 0, 1], vec![0]).unwrap();
        let span = DGCorrespondence::new(reduce.clone(), reduce).unwrap();
        let report = bridge_two_notions(&span);
        assert_eq!(report.dg_class, CorrClass::Plain);
        assert_eq!(report.cat_class, CatCorrClass::Plain);
        assert!(report.classes_agree());
    }
}
