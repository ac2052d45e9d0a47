//! Table-driven finite commutative unital rings: validation with explicit
//! witnesses, homomorphisms, ideals, quotients, products, fiber products and
//! bounded isomorphism search.

use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::check::ValidationReport;
use crate::error::{Error, Result};
use crate::{pair_index, unpair_index};

/// Index of a ring element in its carrier `0..size`.
pub type Elem = usize;

/// A finite commutative unital ring given by explicit operation tables.
///
/// `zero` and `neg` are derived from the addition table during construction;
/// a value of this type always satisfies all ring axioms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteRing {{ size: {}, zero: {}, one: {} }}",
            self.size, self.zero, self.one
        )
    }
}

/// Scans raw tables for every ring axiom, recording the lexicographically
/// least witness per violated law. Shape problems (non-square tables,
/// out-of-range entries) are hard errors, not violations.
pub fn validate_ring_tables(
    add: &[Vec<Elem>],
    mul: &[Vec<Elem>],
    one: Elem,
) -> Result<ValidationReport> {
    let n = add.len();
    let shape = |name: &str, table: &[Vec<Elem>]| -> Result<()> {
        if table.len() != n {
            return Err(Error::malformed(
                "ring tables",
                format!("{name} table has {} rows, expected {n}", table.len()),
            ));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::malformed(
                    "ring tables",
                    format!("{name} row {i} has length {}, expected {n}", row.len()),
                ));
            }
            for (j, &e) in row.iter().enumerate() {
                if e >= n {
                    return Err(Error::malformed(
                        "ring tables",
                        format!("{name}[{i}][{j}] = {e} out of range 0..{n}"),
                    ));
                }
            }
        }
        Ok(())
    };
    if n == 0 {
        return Err(Error::malformed("ring tables", "empty carrier"));
    }
    shape("add", add)?;
    shape("mul", mul)?;
    if one >= n {
        return Err(Error::malformed(
            "ring tables",
            format!("one = {one} out of range 0..{n}"),
        ));
    }

    let mut report = ValidationReport::new();

    let zero = (0..n).find(|&e| (0..n).all(|x| add[e][x] == x && add[x][e] == x));
    if zero.is_none() {
        report.push("additive-identity", &[]);
    }
    if let Some(z) = zero {
        if let Some(x) = (0..n).find(|&x| !(0..n).any(|y| add[x][y] == z)) {
            report.push("additive-inverse", &[x]);
        }
    }
    'add_comm: for a in 0..n {
        for b in 0..n {
            if add[a][b] != add[b][a] {
                report.push("add-commutativity", &[a, b]);
                break 'add_comm;
            }
        }
    }
    'add_assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    report.push("add-associativity", &[a, b, c]);
                    break 'add_assoc;
                }
            }
        }
    }
    'mul_comm: for a in 0..n {
        for b in 0..n {
            if mul[a][b] != mul[b][a] {
                report.push("mul-commutativity", &[a, b]);
                break 'mul_comm;
            }
        }
    }
    'mul_assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    report.push("mul-associativity", &[a, b, c]);
                    break 'mul_assoc;
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| mul[one][x] != x || mul[x][one] != x) {
        report.push("mul-identity", &[x]);
    }
    'dist_l: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    report.push("left-distributivity", &[a, b, c]);
                    break 'dist_l;
                }
            }
        }
    }
    'dist_r: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                    report.push("right-distributivity", &[a, b, c]);
                    break 'dist_r;
                }
            }
        }
    }
    Ok(report)
}

impl FiniteRing {
    /// Builds a ring from nested row-major tables, running the full axiom
    /// scan. The additive identity is inferred from the addition table.
    pub fn from_tables(add: &[Vec<Elem>], mul: &[Vec<Elem>], one: Elem) -> Result<Arc<FiniteRing>> {
        let report = validate_ring_tables(add, mul, one)?;
        report.into_result("ring")?;
        let n = add.len();
        let zero = (0..n)
            .find(|&e| (0..n).all(|x| add[e][x] == x))
            .expect("validated");
        let neg = (0..n)
            .map(|x| (0..n).find(|&y| add[x][y] == zero).expect("validated"))
            .collect();
        Ok(Arc::new(FiniteRing {
            size: n,
            add: add.iter().flatten().copied().collect(),
            mul: mul.iter().flatten().copied().collect(),
            neg,
            zero,
            one,
        }))
    }

    /// Internal constructor for rings valid by construction. Under debug
    /// assertions small carriers are re-scanned anyway.
    pub(crate) fn from_parts(
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        neg: Vec<Elem>,
        zero: Elem,
        one: Elem,
    ) -> Arc<FiniteRing> {
        let ring = FiniteRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
        };
        #[cfg(debug_assertions)]
        if size <= 64 {
            let report = validate_ring_tables(&ring.add_tables(), &ring.mul_tables(), ring.one)
                .expect("constructed tables are well-shaped");
            assert!(
                report.ok(),
                "internally constructed ring violates axioms: {report}"
            );
        }
        Arc::new(ring)
    }

    /// The cyclic ring of integers modulo `n`.
    pub fn cyclic(n: usize) -> Result<Arc<FiniteRing>> {
        FiniteRing::cyclic_bounded(n, &Budget::default())
    }

    /// The cyclic ring of integers modulo `n`, subject to a carrier budget.
    pub fn cyclic_bounded(n: usize, budget: &Budget) -> Result<Arc<FiniteRing>> {
        if n == 0 {
            return Err(Error::Precondition("cyclic ring needs n >= 1".into()));
        }
        budget.check_carrier(n, "cyclic ring")?;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = (a + b) % n;
                mul[a * n + b] = (a * b) % n;
            }
        }
        let neg = (0..n).map(|a| (n - a) % n).collect();
        Ok(FiniteRing::from_parts(n, add, mul, neg, 0, 1 % n))
    }

    /// The one-element zero ring.
    pub fn zero_ring() -> Arc<FiniteRing> {
        FiniteRing::cyclic(1).expect("within budget")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Order of `x` in the additive group.
    pub fn additive_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn add_tables(&self) -> Vec<Vec<Elem>> {
        (0..self.size)
            .map(|a| self.add[a * self.size..(a + 1) * self.size].to_vec())
            .collect()
    }

    pub fn mul_tables(&self) -> Vec<Vec<Elem>> {
        (0..self.size)
            .map(|a| self.mul[a * self.size..(a + 1) * self.size].to_vec())
            .collect()
    }

    /// Re-runs the full axiom scan on this ring's tables.
    pub fn validate(&self) -> ValidationReport {
        validate_ring_tables(&self.add_tables(), &self.mul_tables(), self.one)
            .expect("constructed tables are well-shaped")
    }
}

/// A product ring together with its two projection homomorphisms.
/// Element `(i, j)` sits at carrier index `i * |b| + j`.
pub struct ProductRing {
    pub ring: Arc<FiniteRing>,
    pub pr1: RingHom,
    pub pr2: RingHom,
}

/// Componentwise product of two rings.
pub fn product_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> ProductRing {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for i in 0..n {
        let (ia, ib) = unpair_index(i, nb);
        for j in 0..n {
            let (ja, jb) = unpair_index(j, nb);
            add[i * n + j] = pair_index(a.add(ia, ja), b.add(ib, jb), nb);
            mul[i * n + j] = pair_index(a.mul(ia, ja), b.mul(ib, jb), nb);
        }
    }
    let neg = (0..n)
        .map(|i| {
            let (ia, ib) = unpair_index(i, nb);
            pair_index(a.neg(ia), b.neg(ib), nb)
        })
        .collect();
    let zero = pair_index(a.zero(), b.zero(), nb);
    let one = pair_index(a.one(), b.one(), nb);
    let ring = FiniteRing::from_parts(n, add, mul, neg, zero, one);
    let pr1 = RingHom::new(
        ring.clone(),
        a.clone(),
        (0..n).map(|i| unpair_index(i, nb).0).collect(),
    )
    .expect("projection is a homomorphism");
    let pr2 = RingHom::new(
        ring.clone(),
        b.clone(),
        (0..n).map(|i| unpair_index(i, nb).1).collect(),
    )
    .expect("projection is a homomorphism");
    ProductRing { ring, pr1, pr2 }
}

/// A subring presented by a subset of a parent carrier, re-indexed in
/// ascending parent order. Returns the subring and the inclusion map
/// (positions to parent elements).
pub fn subring(
    parent: &Arc<FiniteRing>,
    subset: &[Elem],
) -> Result<(Arc<FiniteRing>, Vec<Elem>)> {
    let mut elems: Vec<Elem> = subset.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let mut position = vec![usize::MAX; parent.size()];
    for (p, &e) in elems.iter().enumerate() {
        position[e] = p;
    }
    let locate = |e: Elem, what: &str| -> Result<usize> {
        if e < parent.size() && position[e] != usize::MAX {
            Ok(position[e])
        } else {
            Err(Error::Precondition(format!(
                "subset is not closed: {what} produced element {e} outside the subset"
            )))
        }
    };
    locate(parent.zero(), "zero")?;
    locate(parent.one(), "one")?;
    let n = elems.len();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    let mut neg = vec![0; n];
    for (p, &x) in elems.iter().enumerate() {
        neg[p] = locate(parent.neg(x), "negation")?;
        for (q, &y) in elems.iter().enumerate() {
            add[p * n + q] = locate(parent.add(x, y), "addition")?;
            mul[p * n + q] = locate(parent.mul(x, y), "multiplication")?;
        }
    }
    let ring = FiniteRing::from_parts(
        n,
        add,
        mul,
        neg,
        position[parent.zero()],
        position[parent.one()],
    );
    Ok((ring, elems))
}

/// Fiber product of two homomorphisms with a common codomain: the subring of
/// the product carrier consisting of pairs `(x, y)` with `f(x) = g(y)`,
/// together with its projections.
pub fn fiber_product_ring(f: &RingHom, g: &RingHom) -> Result<ProductRing> {
    if f.codomain() != g.codomain() {
        return Err(Error::Precondition(
            "fiber product needs a common codomain".into(),
        ));
    }
    let product = product_ring(f.domain(), g.domain());
    let nb = g.domain().size();
    let subset: Vec<Elem> = product
        .ring
        .elements()
        .filter(|&k| {
            let (x, y) = unpair_index(k, nb);
            f.apply(x) == g.apply(y)
        })
        .collect();
    let (ring, incl) = subring(&product.ring, &subset)?;
    let pr1 = RingHom::new(
        ring.clone(),
        f.domain().clone(),
        incl.iter().map(|&k| unpair_index(k, nb).0).collect(),
    )?;
    let pr2 = RingHom::new(
        ring.clone(),
        g.domain().clone(),
        incl.iter().map(|&k| unpair_index(k, nb).1).collect(),
    )?;
    Ok(ProductRing { ring, pr1, pr2 })
}

/// An ideal of a finite ring, stored as a sorted subset of the carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    parent: Arc<FiniteRing>,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

impl Ideal {
    /// Validates that `subset` is an ideal: closed under addition and
    /// negation, contains zero, and absorbs ring multiplication.
    pub fn new(parent: Arc<FiniteRing>, subset: &[Elem]) -> Result<Ideal> {
        let mut elements: Vec<Elem> = subset.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&e) = elements.iter().find(|&&e| e >= parent.size()) {
            return Err(Error::malformed(
                "ideal",
                format!("element {e} out of range 0..{}", parent.size()),
            ));
        }
        let mut member = vec![false; parent.size()];
        for &e in &elements {
            member[e] = true;
        }
        let mut report = ValidationReport::new();
        if !member[parent.zero()] {
            report.push("ideal-contains-zero", &[]);
        }
        'add: for &x in &elements {
            for &y in &elements {
                if !member[parent.add(x, y)] {
                    report.push("ideal-add-closure", &[x, y]);
                    break 'add;
                }
            }
        }
        if let Some(&x) = elements.iter().find(|&&x| !member[parent.neg(x)]) {
            report.push("ideal-neg-closure", &[x]);
        }
        'absorb: for r in parent.elements() {
            for &x in &elements {
                if !member[parent.mul(r, x)] {
                    report.push("ideal-absorption", &[r, x]);
                    break 'absorb;
                }
            }
        }
        report.into_result("ideal")?;
        Ok(Ideal {
            parent,
            elements,
            member,
        })
    }

    /// The principal ideal generated by `a`: all multiples of `a`.
    pub fn principal(parent: Arc<FiniteRing>, a: Elem) -> Ideal {
        let subset: Vec<Elem> = parent.elements().map(|r| parent.mul(r, a)).collect();
        Ideal::new(parent, &subset).expect("multiples of an element form an ideal")
    }

    /// The ideal generated by an arbitrary subset: additive closure of all
    /// multiples of the generators.
    pub fn generated(parent: Arc<FiniteRing>, generators: &[Elem]) -> Ideal {
        let mut member = vec![false; parent.size()];
        member[parent.zero()] = true;
        let mut frontier: Vec<Elem> = vec![parent.zero()];
        for &g in generators {
            for r in parent.elements() {
                let m = parent.mul(r, g);
                if !member[m] {
                    member[m] = true;
                    frontier.push(m);
                }
            }
        }
        while let Some(x) = frontier.pop() {
            let snapshot: Vec<Elem> = (0..parent.size()).filter(|&e| member[e]).collect();
            for y in snapshot {
                let s = parent.add(x, y);
                if !member[s] {
                    member[s] = true;
                    frontier.push(s);
                }
            }
        }
        let subset: Vec<Elem> = (0..parent.size()).filter(|&e| member[e]).collect();
        Ideal::new(parent, &subset).expect("closure of generators forms an ideal")
    }

    pub fn zero(parent: Arc<FiniteRing>) -> Ideal {
        let z = parent.zero();
        Ideal::new(parent, &[z]).expect("zero ideal")
    }

    pub fn parent(&self) -> &Arc<FiniteRing> {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.member[e]
    }
}

/// Quotient of a ring by an ideal. Cosets are indexed in order of their
/// least member, which is also the stored representative, so the carrier
/// labeling is canonical. Returns the quotient and the projection.
pub fn quotient_ring(r: &Arc<FiniteRing>, ideal: &Ideal) -> (Arc<FiniteRing>, RingHom) {
    assert_eq!(ideal.parent(), r, "ideal must live in the quotiented ring");
    let n = r.size();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<Elem> = Vec::new();
    for x in r.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &i in ideal.elements() {
            coset_of[r.add(x, i)] = id;
        }
    }
    let m = reps.len();
    assert_eq!(m * ideal.len(), n, "cosets partition the carrier evenly");
    let mut add = vec![0; m * m];
    let mut mul = vec![0; m * m];
    for (p, &x) in reps.iter().enumerate() {
        for (q, &y) in reps.iter().enumerate() {
            add[p * m + q] = coset_of[r.add(x, y)];
            mul[p * m + q] = coset_of[r.mul(x, y)];
        }
    }
    let neg = reps.iter().map(|&x| coset_of[r.neg(x)]).collect();
    let quotient = FiniteRing::from_parts(
        m,
        add,
        mul,
        neg,
        coset_of[r.zero()],
        coset_of[r.one()],
    );
    let projection = RingHom::new(r.clone(), quotient.clone(), coset_of)
        .expect("coset projection is a homomorphism");
    (quotient, projection)
}

/// A unital ring homomorphism between table rings, validated on
/// construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingHom {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    map: Vec<Elem>,
}

/// Scans a raw map for the homomorphism laws.
pub fn validate_hom_map(
    domain: &FiniteRing,
    codomain: &FiniteRing,
    map: &[Elem],
) -> Result<ValidationReport> {
    if map.len() != domain.size() {
        return Err(Error::malformed(
            "ring hom",
            format!("map has length {}, expected {}", map.len(), domain.size()),
        ));
    }
    if let Some((x, &y)) = map.iter().enumerate().find(|&(_, &y)| y >= codomain.size()) {
        return Err(Error::malformed(
            "ring hom",
            format!("map[{x}] = {y} out of range 0..{}", codomain.size()),
        ));
    }
    let mut report = ValidationReport::new();
    if map[domain.one()] != codomain.one() {
        report.push("hom-one", &[domain.one()]);
    }
    'add: for a in domain.elements() {
        for b in domain.elements() {
            if map[domain.add(a, b)] != codomain.add(map[a], map[b]) {
                report.push("hom-add", &[a, b]);
                break 'add;
            }
        }
    }
    'mul: for a in domain.elements() {
        for b in domain.elements() {
            if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                report.push("hom-mul", &[a, b]);
                break 'mul;
            }
        }
    }
    Ok(report)
}

impl RingHom {
    pub fn new(
        domain: Arc<FiniteRing>,
        codomain: Arc<FiniteRing>,
        map: Vec<Elem>,
    ) -> Result<RingHom> {
        validate_hom_map(&domain, &codomain, &map)?.into_result("ring hom")?;
        Ok(RingHom {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(r: &Arc<FiniteRing>) -> RingHom {
        RingHom {
            domain: r.clone(),
            codomain: r.clone(),
            map: r.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &RingHom) -> RingHom {
        assert_eq!(
            self.codomain, g.domain,
            "composition needs matching middle ring"
        );
        RingHom {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            map: self.map.iter().map(|&x| g.apply(x)).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.size()];
        self.map.iter().all(|&y| {
            if seen[y] {
                false
            } else {
                seen[y] = true;
                true
            }
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.size()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_injective()
    }

    /// Elements mapping to zero, in ascending order.
    pub fn kernel_elements(&self) -> Vec<Elem> {
        let z = self.codomain.zero();
        self.domain.elements().filter(|&x| self.map[x] == z).collect()
    }

    pub fn kernel_ideal(&self) -> Ideal {
        Ideal::new(self.domain.clone(), &self.kernel_elements())
            .expect("kernel of a ring hom is an ideal")
    }

    /// Inverse homomorphism, when bijective.
    pub fn inverse(&self) -> Option<RingHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(RingHom {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            map: inv,
        })
    }

    /// Re-runs the homomorphism law scan.
    pub fn validate(&self) -> ValidationReport {
        validate_hom_map(&self.domain, &self.codomain, &self.map)
            .expect("constructed map is well-shaped")
    }
}

pub(crate) fn partial_map_consistent(
    domain: &FiniteRing,
    codomain: &FiniteRing,
    img: &[Option<Elem>],
) -> bool {
    for a in domain.elements() {
        let Some(fa) = img[a] else { continue };
        for b in domain.elements() {
            let Some(fb) = img[b] else { continue };
            if let Some(fs) = img[domain.add(a, b)] {
                if fs != codomain.add(fa, fb) {
                    return false;
                }
            }
            if let Some(fp) = img[domain.mul(a, b)] {
                if fp != codomain.mul(fa, fb) {
                    return false;
                }
            }
        }
    }
    true
}

/// Enumerates every unital ring homomorphism `domain -> codomain` by
/// backtracking, in lexicographic order of the underlying map. The search is
/// node-counted against the budget.
pub fn enumerate_ring_homs(
    domain: &Arc<FiniteRing>,
    codomain: &Arc<FiniteRing>,
    budget: &Budget,
) -> Result<Vec<RingHom>> {
    let mut guard = budget.guard("ring hom enumeration");
    let mut img: Vec<Option<Elem>> = vec![None; domain.size()];
    img[domain.zero()] = Some(codomain.zero());
    img[domain.one()] = Some(codomain.one());
    if !partial_map_consistent(domain, codomain, &img) {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut stack: Vec<Elem> = domain
        .elements()
        .filter(|&x| img[x].is_none())
        .collect();
    stack.reverse();
    search_homs(
        domain,
        codomain,
        &mut img,
        &mut stack,
        &mut guard,
        &mut |map| {
            found.push(map.to_vec());
        },
        &mut |_| true,
    )?;
    found
        .into_iter()
        .map(|map| RingHom::new(domain.clone(), codomain.clone(), map))
        .collect()
}

fn search_homs(
    domain: &FiniteRing,
    codomain: &FiniteRing,
    img: &mut Vec<Option<Elem>>,
    stack: &mut Vec<Elem>,
    guard: &mut crate::budget::SearchGuard,
    emit: &mut dyn FnMut(&[Elem]),
    candidate_ok: &mut dyn FnMut(&(Elem, Elem)) -> bool,
) -> Result<()> {
    let Some(x) = stack.pop() else {
        let map: Vec<Elem> = img.iter().map(|o| o.expect("complete")).collect();
        emit(&map);
        return Ok(());
    };
    for y in codomain.elements() {
        guard.tick()?;
        if !candidate_ok(&(x, y)) {
            continue;
        }
        img[x] = Some(y);
        if partial_map_consistent(domain, codomain, img) {
            search_homs(domain, codomain, img, stack, guard, emit, candidate_ok)?;
        }
        img[x] = None;
    }
    stack.push(x);
    Ok(())
}

/// Finds a ring isomorphism by bounded backtracking, or certifies that none
/// exists. Additive element orders prune the search.
pub fn ring_iso_search(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    budget: &Budget,
) -> Result<Option<RingHom>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let orders_a: Vec<usize> = a.elements().map(|x| a.additive_order(x)).collect();
    let orders_b: Vec<usize> = b.elements().map(|x| b.additive_order(x)).collect();
    let mut sorted_a = orders_a.clone();
    let mut sorted_b = orders_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(None);
    }

    let mut guard = budget.guard("ring isomorphism search");
    let mut img: Vec<Option<Elem>> = vec![None; a.size()];
    img[a.zero()] = Some(b.zero());
    img[a.one()] = Some(b.one());
    if orders_a[a.one()] != orders_b[b.one()] || !partial_map_consistent(a, b, &img) {
        return Ok(None);
    }
    let mut used = vec![false; b.size()];
    used[b.zero()] = true;
    if b.one() != b.zero() {
        used[b.one()] = true;
    }
    let mut stack: Vec<Elem> = a.elements().filter(|&x| img[x].is_none()).collect();
    stack.reverse();
    let found = search_iso(a, b, &orders_a, &orders_b, &mut img, &mut used, &mut stack, &mut guard)?;
    Ok(found.map(|map| RingHom {
        domain: a.clone(),
        codomain: b.clone(),
        map,
    }))
}

#[allow(clippy::too_many_arguments)]
fn search_iso(
    a: &FiniteRing,
    b: &FiniteRing,
    orders_a: &[usize],
    orders_b: &[usize],
    img: &mut Vec<Option<Elem>>,
    used: &mut Vec<bool>,
    stack: &mut Vec<Elem>,
    guard: &mut crate::budget::SearchGuard,
) -> Result<Option<Vec<Elem>>> {
    let Some(x) = stack.pop() else {
        return Ok(Some(img.iter().map(|o| o.expect("complete")).collect()));
    };
    for y in b.elements() {
        guard.tick()?;
        if used[y] || orders_b[y] != orders_a[x] {
            continue;
        }
        img[x] = Some(y);
        used[y] = true;
        if partial_map_consistent(a, b, img) {
            if let Some(map) = search_iso(a, b, orders_a, orders_b, img, used, stack, guard)? {
                return Ok(Some(map));
            }
        }
        img[x] = None;
        used[y] = false;
    }
    stack.push(x);
    Ok(None)
}
