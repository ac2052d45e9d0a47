//! JSON descriptions of rings, modules, quasi-ideals, simplicial rings,
//! correspondences, butterflies, groupoids, and finite categories, with
//! conversions to and from the validated in-memory structures.
//!
//! Parsing failures surface as malformed-input errors; structures that parse
//! but violate the algebraic laws fail inside the ordinary constructors and
//! keep their law-violation reports.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::butterfly::Butterfly;
use crate::cat::FiniteCategory;
use crate::cone::InternalRingGroupoid;
use crate::corr::DGCorrespondence;
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::quasi::{QMorphism, QuasiIdeal};
use crate::ring::{Elem, FiniteRing, RingHom};
use crate::simplicial::Trunc1SimpRing;

fn from_str<T: for<'de> Deserialize<'de>>(text: &str, context: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::malformed(context, e.to_string()))
}

/// A finite commutative ring as row-major addition and multiplication
/// tables; the additive identity is inferred.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct RingDesc {
    pub size: usize,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
    pub one: Elem,
}

impl RingDesc {
    pub fn of_ring(r: &FiniteRing) -> RingDesc {
        RingDesc { size: r.size(), add: r.add_tables(), mul: r.mul_tables(), one: r.one() }
    }

    pub fn to_ring(&self) -> Result<Arc<FiniteRing>> {
        if self.add.len() != self.size || self.mul.len() != self.size {
            return Err(Error::malformed(
                "ring",
                format!("{} rows in a table for size {}", self.add.len().max(self.mul.len()), self.size),
            ));
        }
        FiniteRing::from_tables(&self.add, &self.mul, self.one)
    }
}

/// A finite module as its additive group table plus the scalar action
/// table, one row per ring element.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct ModuleDesc {
    pub group: Vec<Vec<Elem>>,
    pub action: Vec<Vec<Elem>>,
}

impl ModuleDesc {
    pub fn of_module(m: &FiniteModule) -> ModuleDesc {
        ModuleDesc { group: m.add_tables(), action: m.action_tables() }
    }

    pub fn to_module(&self, base: Arc<FiniteRing>) -> Result<Arc<FiniteModule>> {
        FiniteModule::new(base, &self.group, &self.action)
    }
}

/// A quasi-ideal: base ring, module, and the differential table.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct QuasiIdealDesc {
    #[serde(rename = "C")]
    pub c: RingDesc,
    #[serde(rename = "I")]
    pub i: ModuleDesc,
    pub d: Vec<Elem>,
}

impl QuasiIdealDesc {
    pub fn of_quasi(q: &QuasiIdeal) -> QuasiIdealDesc {
        QuasiIdealDesc {
            c: RingDesc::of_ring(q.ring()),
            i: ModuleDesc::of_module(q.module()),
            d: q.d_map().to_vec(),
        }
    }

    pub fn to_quasi(&self) -> Result<Arc<QuasiIdeal>> {
        let ring = self.c.to_ring()?;
        let module = self.i.to_module(ring)?;
        QuasiIdeal::new(module, self.d.clone())
    }

    /// The module and differential without the quasi-ideal law applied,
    /// for validation runs that want the report rather than an error.
    pub fn to_candidate(&self) -> Result<(Arc<FiniteModule>, Vec<Elem>)> {
        let ring = self.c.to_ring()?;
        let module = self.i.to_module(ring)?;
        Ok((module, self.d.clone()))
    }
}

/// A 1-truncated simplicial ring: both levels and the three structure maps.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct SimplicialDesc {
    #[serde(rename = "A0")]
    pub a0: RingDesc,
    #[serde(rename = "A1")]
    pub a1: RingDesc,
    pub d0: Vec<Elem>,
    pub d1: Vec<Elem>,
    pub s: Vec<Elem>,
}

impl SimplicialDesc {
    pub fn of_simplicial(t: &Trunc1SimpRing) -> SimplicialDesc {
        SimplicialDesc {
            a0: RingDesc::of_ring(t.a0()),
            a1: RingDesc::of_ring(t.a1()),
            d0: t.d0().map().to_vec(),
            d1: t.d1().map().to_vec(),
            s: t.s().map().to_vec(),
        }
    }

    pub fn to_simplicial(&self) -> Result<Trunc1SimpRing> {
        let a0 = self.a0.to_ring()?;
        let a1 = self.a1.to_ring()?;
        let d0 = RingHom::new(a1.clone(), a0.clone(), self.d0.clone())?;
        let d1 = RingHom::new(a1.clone(), a0.clone(), self.d1.clone())?;
        let s = RingHom::new(a0, a1, self.s.clone())?;
        Trunc1SimpRing::new(d0, d1, s)
    }
}

/// A morphism of quasi-ideals as its two map tables.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct MorphismDesc {
    pub ring: Vec<Elem>,
    pub module: Vec<Elem>,
}

impl MorphismDesc {
    pub fn of_qmorphism(m: &QMorphism) -> MorphismDesc {
        MorphismDesc { ring: m.ring_map().to_vec(), module: m.module_map().to_vec() }
    }
}

/// A correspondence: the two feet, the apex, and the two leg morphisms.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct CorrDesc {
    #[serde(rename = "R1")]
    pub r1: QuasiIdealDesc,
    #[serde(rename = "R2")]
    pub r2: QuasiIdealDesc,
    #[serde(rename = "R12")]
    pub r12: QuasiIdealDesc,
    pub f: MorphismDesc,
    pub g: MorphismDesc,
}

impl CorrDesc {
    pub fn of_corr(c: &DGCorrespondence) -> CorrDesc {
        CorrDesc {
            r1: QuasiIdealDesc::of_quasi(c.r1()),
            r2: QuasiIdealDesc::of_quasi(c.r2()),
            r12: QuasiIdealDesc::of_quasi(c.apex()),
            f: MorphismDesc::of_qmorphism(c.left()),
            g: MorphismDesc::of_qmorphism(c.right()),
        }
    }

    pub fn to_corr(&self) -> Result<DGCorrespondence> {
        let r1 = self.r1.to_quasi()?;
        let r2 = self.r2.to_quasi()?;
        let r12 = self.r12.to_quasi()?;
        let left = QMorphism::new(r12.clone(), r1, self.f.ring.clone(), self.f.module.clone())?;
        let right = QMorphism::new(r12, r2, self.g.ring.clone(), self.g.module.clone())?;
        DGCorrespondence::new(left, right)
    }
}

/// A butterfly: the feet, the body ring, the two structure homs, and the
/// two wing tables.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct ButterflyDesc {
    #[serde(rename = "R1")]
    pub r1: QuasiIdealDesc,
    #[serde(rename = "R2")]
    pub r2: QuasiIdealDesc,
    #[serde(rename = "K")]
    pub k: RingDesc,
    pub f0: Vec<Elem>,
    pub g0: Vec<Elem>,
    pub h1: Vec<Elem>,
    pub h2: Vec<Elem>,
}

impl ButterflyDesc {
    pub fn of_butterfly(b: &Butterfly) -> ButterflyDesc {
        ButterflyDesc {
            r1: QuasiIdealDesc::of_quasi(b.r1()),
            r2: QuasiIdealDesc::of_quasi(b.r2()),
            k: RingDesc::of_ring(b.k()),
            f0: b.f0().map().to_vec(),
            g0: b.g0().map().to_vec(),
            h1: b.h1().to_vec(),
            h2: b.h2().to_vec(),
        }
    }

    pub fn to_butterfly(&self) -> Result<Butterfly> {
        let r1 = self.r1.to_quasi()?;
        let r2 = self.r2.to_quasi()?;
        let k = self.k.to_ring()?;
        let f0 = RingHom::new(k.clone(), r1.ring().clone(), self.f0.clone())?;
        let g0 = RingHom::new(k, r2.ring().clone(), self.g0.clone())?;
        Butterfly::new(r1, r2, f0, g0, self.h1.clone(), self.h2.clone())
    }
}

/// A groupoid internal to rings: object and morphism rings plus the five
/// structure tables. Output format of the cone command.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct GroupoidDesc {
    pub objects: RingDesc,
    pub morphisms: RingDesc,
    pub src: Vec<Elem>,
    pub tgt: Vec<Elem>,
    pub id: Vec<Elem>,
    pub comp: Vec<Vec<Option<Elem>>>,
}

impl GroupoidDesc {
    pub fn of_groupoid(g: &InternalRingGroupoid) -> GroupoidDesc {
        let n = g.morphism_ring().size();
        let comp = (0..n)
            .map(|f| (0..n).map(|h| g.compose(f, h)).collect())
            .collect();
        GroupoidDesc {
            objects: RingDesc::of_ring(g.object_ring()),
            morphisms: RingDesc::of_ring(g.morphism_ring()),
            src: (0..n).map(|f| g.source_of(f)).collect(),
            tgt: (0..n).map(|f| g.target_of(f)).collect(),
            id: (0..g.object_ring().size()).map(|c| g.identity_of(c)).collect(),
            comp,
        }
    }
}

/// Endpoints of one morphism in a finite category description.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct EndsDesc {
    pub src: usize,
    pub tgt: usize,
}

/// A finite category as object count, morphism endpoints, a row-major
/// composition matrix (`null` where undefined), and identity picks.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct CategoryDesc {
    pub objects: usize,
    pub morphisms: Vec<EndsDesc>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identity: Vec<usize>,
}

impl CategoryDesc {
    pub fn of_category(c: &FiniteCategory) -> CategoryDesc {
        let n = c.n_morphisms();
        CategoryDesc {
            objects: c.n_objects(),
            morphisms: (0..n)
                .map(|f| EndsDesc { src: c.src(f), tgt: c.tgt(f) })
                .collect(),
            compose: (0..n).map(|f| (0..n).map(|g| c.compose(f, g)).collect()).collect(),
            identity: (0..c.n_objects()).map(|o| c.identity_of(o)).collect(),
        }
    }

    pub fn to_category(&self) -> Result<Arc<FiniteCategory>> {
        let n = self.morphisms.len();
        if self.compose.len() != n || self.compose.iter().any(|row| row.len() != n) {
            return Err(Error::malformed(
                "category",
                "composition matrix shape does not match the morphism count",
            ));
        }
        let srcs = self.morphisms.iter().map(|m| m.src).collect();
        let tgts = self.morphisms.iter().map(|m| m.tgt).collect();
        let compose = self.compose.iter().flatten().copied().collect();
        FiniteCategory::new(self.objects, srcs, tgts, self.identity.clone(), compose)
    }
}

pub fn ring_from_str(text: &str) -> Result<Arc<FiniteRing>> {
    from_str::<RingDesc>(text, "ring json")?.to_ring()
}

pub fn quasi_from_str(text: &str) -> Result<Arc<QuasiIdeal>> {
    from_str::<QuasiIdealDesc>(text, "quasi-ideal json")?.to_quasi()
}

pub fn quasi_candidate_from_str(text: &str) -> Result<(Arc<FiniteModule>, Vec<Elem>)> {
    from_str::<QuasiIdealDesc>(text, "quasi-ideal json")?.to_candidate()
}

pub fn simplicial_from_str(text: &str) -> Result<Trunc1SimpRing> {
    from_str::<SimplicialDesc>(text, "simplicial json")?.to_simplicial()
}

pub fn corr_from_str(text: &str) -> Result<DGCorrespondence> {
    from_str::<CorrDesc>(text, "correspondence json")?.to_corr()
}

pub fn butterfly_from_str(text: &str) -> Result<Butterfly> {
    from_str::<ButterflyDesc>(text, "butterfly json")?.to_butterfly()
}

pub fn category_from_str(text: &str) -> Result<Arc<FiniteCategory>> {
    from_str::<CategoryDesc>(text, "category json")?.to_category()
}

/// Serializes any description with stable field order and a trailing
/// newline, so repeated runs emit identical bytes.
pub fn to_pretty_string<T: Serialize>(desc: &T) -> String {
    let mut out = serde_json::to_string_pretty(desc).expect("descriptions always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::instances;

    #[test]
    fn ring_descriptions_roundtrip() {
        let z6 = FiniteRing::cyclic(6).unwrap();
        let text = to_pretty_string(&RingDesc::of_ring(&z6));
        let back = ring_from_str(&text).unwrap();
        assert_eq!(back, z6);
    }

    #[test]
    fn quasi_ideal_descriptions_roundtrip() {
        let q = instances::z4_double();
        let text = to_pretty_string(&QuasiIdealDesc::of_quasi(&q));
        let back = quasi_from_str(&text).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn correspondence_descriptions_roundtrip() {
        let q = instances::z4_double();
        let corr = crate::corr::graph_corr(&QMorphism::identity(&q));
        let text = to_pretty_string(&CorrDesc::of_corr(&corr));
        let back = corr_from_str(&text).unwrap();
        assert_eq!(back.classify(), corr.classify());
        assert_eq!(back.left().ring_map(), corr.left().ring_map());
    }

    #[test]
    fn category_descriptions_roundtrip() {
        let c = crate::cat::walking_arrow();
        let text = to_pretty_string(&CategoryDesc::of_category(&c));
        let back = category_from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        match ring_from_str("{ not json") {
            Err(Error::Malformed { .. }) => {}
            other => panic!("expected a parse error, got {other:?}"),
        }
        // Well-formed JSON describing a lawless ring is a validation error,
        // not a parse error.
        let bad = r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[1,1],[1,1]],"one":1}"#;
        match ring_from_str(bad) {
            Err(Error::Invalid { .. }) => {}
            other => panic!("expected a law failure, got {other:?}"),
        }
    }

    #[test]
    fn simplicial_descriptions_roundtrip() {
        let t = crate::simplicial::q_to_simplicial(&instances::z4_double());
        let text = to_pretty_string(&SimplicialDesc::of_simplicial(&t));
        let back = simplicial_from_str(&text).unwrap();
        assert!(back.is_good());
        assert_eq!(back.a1().size(), t.a1().size());
    }

    #[test]
    fn butterfly_descriptions_roundtrip() {
        let b = crate::butterfly::mod2_reduction_butterfly();
        let text = to_pretty_string(&ButterflyDesc::of_butterfly(&b));
        let back = butterfly_from_str(&text).unwrap();
        assert_eq!(back.h1(), b.h1());
        assert_eq!(back.h2(), b.h2());
    }
}
