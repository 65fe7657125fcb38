//! Finite commutative rings with identity, materialized as operation tables.
//!
//! Every element is a plain index into the carrier of the ring that issued
//! it. Ideals are carrier subsets, and every predicate on ideals is decided by
//! exhaustive quantification over the carrier.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::elemset::{join_closure, ElemSet};
use crate::error::{Error, Result};
use crate::finite_module::FiniteModule;

/// Default bound on the number of ring elements.
pub const DEFAULT_CARRIER_CAP: usize = 256;
/// Default bound on the number of ideals or submodules enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// An element of a finite ring, as an index into its carrier table.
pub type RingElem = usize;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// How a ring was obtained. Used to parse and print elements.
#[derive(Clone, Debug)]
pub enum Structure {
    Residue(u64),
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    Quotient {
        parent: Arc<FiniteRing>,
        projection: Vec<RingElem>,
    },
    Idealization(Arc<FiniteRing>, Arc<FiniteModule>),
    Localization {
        parent: Arc<FiniteRing>,
        map: Vec<RingElem>,
    },
    Tables,
}

/// Recipe for [`build_ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    Residue(i64),
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
    /// Quotient by the ideal spanned by the given element indices.
    Quotient(Box<RingDescriptor>, Vec<RingElem>),
}

pub fn build_ring(desc: &RingDescriptor, cap: usize) -> Result<Arc<FiniteRing>> {
    match desc {
        RingDescriptor::Residue(n) => FiniteRing::residue_capped(*n, cap),
        RingDescriptor::Product(a, b) => {
            let a = build_ring(a, cap)?;
            let b = build_ring(b, cap)?;
            FiniteRing::product_capped(&a, &b, cap)
        }
        RingDescriptor::Quotient(r, gens) => {
            let r = build_ring(r, cap)?;
            let i = r.ideal_span(gens)?;
            FiniteRing::quotient(&r, &i)
        }
    }
}

pub struct FiniteRing {
    id: u64,
    label: String,
    size: usize,
    add: Vec<RingElem>,
    mul: Vec<RingElem>,
    neg: Vec<RingElem>,
    zero: RingElem,
    one: RingElem,
    units: ElemSet,
    non_units: Vec<RingElem>,
    names: Vec<String>,
    structure: Structure,
    ideals: OnceLock<std::result::Result<Vec<Ideal>, Error>>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing({}, size {})", self.label, self.size)
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::CapExceeded {
            what: "ring carrier",
            limit: cap,
        });
    }
    Ok(())
}

impl FiniteRing {
    pub fn residue(n: i64) -> Result<Arc<Self>> {
        Self::residue_capped(n, DEFAULT_CARRIER_CAP)
    }

    pub fn residue_capped(n: i64, cap: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        let size = n as usize;
        check_cap(size, cap)?;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = (a + b) % size;
                mul[a * size + b] = (a * b) % size;
            }
        }
        let names = (0..size).map(|i| i.to_string()).collect();
        Ok(Arc::new(Self::assemble(
            format!("Z/{n}"),
            names,
            add,
            mul,
            0,
            1,
            Structure::Residue(n as u64),
        )))
    }

    pub fn product(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>> {
        Self::product_capped(a, b, DEFAULT_CARRIER_CAP)
    }

    pub fn product_capped(a: &Arc<Self>, b: &Arc<Self>, cap: usize) -> Result<Arc<Self>> {
        let (na, nb) = (a.size, b.size);
        let size = na * nb;
        check_cap(size, cap)?;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for x in 0..size {
            let (x1, x2) = (x / nb, x % nb);
            for y in 0..size {
                let (y1, y2) = (y / nb, y % nb);
                add[x * size + y] = a.add(x1, y1) * nb + b.add(x2, y2);
                mul[x * size + y] = a.mul(x1, y1) * nb + b.mul(x2, y2);
            }
        }
        let names = (0..size)
            .map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb)))
            .collect();
        Ok(Arc::new(Self::assemble(
            format!("{}x{}", a.label, b.label),
            names,
            add,
            mul,
            a.zero * nb + b.zero,
            a.one * nb + b.one,
            Structure::Product(a.clone(), b.clone()),
        )))
    }

    /// Index of the pair `(x, y)` in a product ring built by [`FiniteRing::product`].
    pub fn pair(&self, x: RingElem, y: RingElem) -> Option<RingElem> {
        match &self.structure {
            Structure::Product(a, b) if x < a.size && y < b.size => Some(x * b.size + y),
            _ => None,
        }
    }

    pub fn quotient(r: &Arc<Self>, ideal: &Ideal) -> Result<Arc<Self>> {
        r.owns(ideal)?;
        if !ideal.is_proper() {
            return Err(Error::ImproperQuotient);
        }
        // cosets ordered by their least representative
        let mut projection = vec![usize::MAX; r.size];
        let mut reps = Vec::new();
        for x in 0..r.size {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for i in ideal.elements.iter() {
                projection[r.add(x, i)] = class;
            }
        }
        let size = reps.len();
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for (ci, &x) in reps.iter().enumerate() {
            for (cj, &y) in reps.iter().enumerate() {
                add[ci * size + cj] = projection[r.add(x, y)];
                mul[ci * size + cj] = projection[r.mul(x, y)];
            }
        }
        let names = reps.iter().map(|&x| r.name(x).to_string()).collect();
        let label = format!("{}/({})", r.label, r.render_list(&ideal.generators));
        let zero = projection[r.zero];
        let one = projection[r.one];
        Ok(Arc::new(Self::assemble(
            label,
            names,
            add,
            mul,
            zero,
            one,
            Structure::Quotient {
                parent: r.clone(),
                projection,
            },
        )))
    }

    /// Builds a ring from explicit tables after checking every ring axiom.
    pub fn from_tables(
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<RingElem>,
        mul: Vec<RingElem>,
        zero: RingElem,
        one: RingElem,
        structure: Structure,
    ) -> Result<Arc<Self>> {
        let size = names.len();
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::RingAxiom("table shape".into()));
        }
        if add.iter().chain(&mul).any(|&x| x >= size) || zero >= size || one >= size {
            return Err(Error::RingAxiom("table entry out of range".into()));
        }
        let ring = Self::assemble(label.into(), names, add, mul, zero, one, structure);
        ring.check_axioms()?;
        Ok(Arc::new(ring))
    }

    fn assemble(
        label: String,
        names: Vec<String>,
        add: Vec<RingElem>,
        mul: Vec<RingElem>,
        zero: RingElem,
        one: RingElem,
        structure: Structure,
    ) -> Self {
        let size = names.len();
        let mut neg = vec![0; size];
        for a in 0..size {
            neg[a] = (0..size).find(|&b| add[a * size + b] == zero).unwrap_or(zero);
        }
        let units = ElemSet::from_indices(
            size,
            (0..size).filter(|&u| (0..size).any(|v| mul[u * size + v] == one)),
        );
        let non_units = (0..size).filter(|&x| !units.contains(x)).collect();
        FiniteRing {
            id: fresh_id(),
            label,
            size,
            add,
            mul,
            neg,
            zero,
            one,
            units,
            non_units,
            names,
            structure,
            ideals: OnceLock::new(),
        }
    }

    /// Verifies commutativity, associativity, distributivity, identities and
    /// additive inverses on the full tables.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        if self.one == self.zero {
            return Err(Error::RingAxiom("identity equals zero".into()));
        }
        for a in 0..n {
            if self.add(a, self.zero) != a || self.mul(a, self.one) != a {
                return Err(Error::RingAxiom(format!("identity fails at {a}")));
            }
            if self.add(a, self.neg[a]) != self.zero {
                return Err(Error::RingAxiom(format!("no additive inverse for {a}")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::RingAxiom(format!("commutativity fails at {a},{b}")));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return Err(Error::RingAxiom(format!("fails at {a},{b},{c}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn structure(&self) -> &Structure {
        &self.structure
    }
    pub fn zero(&self) -> RingElem {
        self.zero
    }
    pub fn one(&self) -> RingElem {
        self.one
    }
    #[inline]
    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add[a * self.size + b]
    }
    #[inline]
    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        self.mul[a * self.size + b]
    }
    pub fn neg(&self, a: RingElem) -> RingElem {
        self.neg[a]
    }
    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg[b])
    }
    pub fn pow(&self, a: RingElem, k: usize) -> RingElem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }
    pub fn is_unit(&self, a: RingElem) -> bool {
        self.units.contains(a)
    }
    pub fn units(&self) -> &ElemSet {
        &self.units
    }
    /// Non-units, zero included, in ascending index order.
    pub fn non_units(&self) -> &[RingElem] {
        &self.non_units
    }
    pub fn elements(&self) -> std::ops::Range<RingElem> {
        0..self.size
    }
    pub fn name(&self, a: RingElem) -> &str {
        &self.names[a]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn render_list(&self, xs: &[RingElem]) -> String {
        xs.iter().map(|&x| self.name(x)).collect::<Vec<_>>().join(",")
    }

    pub(crate) fn owns(&self, ideal: &Ideal) -> Result<()> {
        if ideal.ring_id != self.id {
            return Err(Error::MismatchedRings);
        }
        Ok(())
    }

    fn check_elems(&self, xs: &[RingElem]) -> Result<()> {
        match xs.iter().find(|&&x| x >= self.size) {
            Some(&x) => Err(Error::ForeignElement(x)),
            None => Ok(()),
        }
    }

    fn principal_set(&self, g: RingElem) -> ElemSet {
        ElemSet::from_indices(self.size, (0..self.size).map(|r| self.mul(r, g)))
    }

    /// Additive closure of two ideals' carriers: `{i + j}`.
    fn set_sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.size);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    fn ideal_from_set(&self, elements: ElemSet) -> Ideal {
        let generators = self.minimal_generators(&elements);
        Ideal {
            ring_id: self.id,
            elements,
            generators,
        }
    }

    /// Greedy generator list: scan ascending, keep elements not yet spanned.
    fn minimal_generators(&self, elements: &ElemSet) -> Vec<RingElem> {
        let mut gens = Vec::new();
        let mut span = ElemSet::from_indices(self.size, [self.zero]);
        for x in elements.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = self.set_sum(&span, &self.principal_set(x));
            }
        }
        gens
    }

    pub fn ideal_span(&self, generators: &[RingElem]) -> Result<Ideal> {
        self.check_elems(generators)?;
        let mut elements = ElemSet::from_indices(self.size, [self.zero]);
        for &g in generators {
            elements = self.set_sum(&elements, &self.principal_set(g));
        }
        Ok(Ideal {
            ring_id: self.id,
            elements,
            generators: generators.to_vec(),
        })
    }

    /// Wraps a carrier subset as an ideal, verifying closure.
    pub fn ideal_from_elements(&self, elements: ElemSet) -> Result<Ideal> {
        if elements.universe() != self.size || !elements.contains(self.zero) {
            return Err(Error::RingAxiom("subset is not an ideal".into()));
        }
        for x in elements.iter() {
            for r in 0..self.size {
                if !elements.contains(self.mul(r, x)) {
                    return Err(Error::RingAxiom("subset is not an ideal".into()));
                }
            }
            for y in elements.iter() {
                if !elements.contains(self.add(x, y)) {
                    return Err(Error::RingAxiom("subset is not an ideal".into()));
                }
            }
        }
        Ok(self.ideal_from_set(elements))
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.ideal_from_set(ElemSet::from_indices(self.size, [self.zero]))
    }

    pub fn whole(&self) -> Ideal {
        Ideal {
            ring_id: self.id,
            elements: ElemSet::full(self.size),
            generators: vec![self.one],
        }
    }

    /// All ideals, sorted by size then element list. Cached.
    pub fn ideals(&self) -> Result<&[Ideal]> {
        let res = self.ideals.get_or_init(|| {
            let cyclics: Vec<ElemSet> = (0..self.size).map(|g| self.principal_set(g)).collect();
            let sets = join_closure(
                ElemSet::from_indices(self.size, [self.zero]),
                &cyclics,
                |a, b| self.set_sum(a, b),
                DEFAULT_LATTICE_CAP,
            )?;
            Ok(sets.into_iter().map(|s| self.ideal_from_set(s)).collect())
        });
        match res {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn combine(&self, i: &Ideal, j: &Ideal, op: IdealOp) -> Result<Ideal> {
        self.owns(i)?;
        self.owns(j)?;
        let set = match op {
            IdealOp::Sum => self.set_sum(&i.elements, &j.elements),
            IdealOp::Product => {
                let mut acc = ElemSet::from_indices(self.size, [self.zero]);
                for x in i.elements.iter() {
                    for y in j.elements.iter() {
                        let p = self.mul(x, y);
                        if !acc.contains(p) {
                            acc = self.set_sum(&acc, &self.principal_set(p));
                        }
                    }
                }
                acc
            }
            IdealOp::Intersection => i.elements.intersection(&j.elements),
            IdealOp::Colon => ElemSet::from_indices(
                self.size,
                (0..self.size).filter(|&r| j.elements.iter().all(|x| i.elements.contains(self.mul(r, x)))),
            ),
        };
        Ok(self.ideal_from_set(set))
    }

    pub fn sum(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.combine(i, j, IdealOp::Sum)
    }
    pub fn product_ideal(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.combine(i, j, IdealOp::Product)
    }
    pub fn intersect(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.combine(i, j, IdealOp::Intersection)
    }
    pub fn colon(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.combine(i, j, IdealOp::Colon)
    }

    /// `{r : r^k ∈ I for some k ≤ |R|}`. The power sequence of any element
    /// becomes periodic within |R| steps, so the bound is exact.
    pub fn radical(&self, i: &Ideal) -> Result<Ideal> {
        self.owns(i)?;
        Ok(self.ideal_from_set(self.radical_set(&i.elements)))
    }

    pub(crate) fn radical_set(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.size,
            (0..self.size).filter(|&r| {
                let mut p = r;
                for _ in 0..self.size {
                    if set.contains(p) {
                        return true;
                    }
                    p = self.mul(p, r);
                }
                false
            }),
        )
    }

    /// Decides every ideal predicate by exhaustive quantification. Each false
    /// flag carries the lexicographically first witness.
    pub fn classify_ideal(&self, i: &Ideal) -> Result<IdealReport> {
        self.owns(i)?;
        let radical = self.radical(i)?;
        let mut report = IdealReport {
            proper: i.is_proper(),
            prime: false,
            maximal: false,
            primary: false,
            two_absorbing_primary: false,
            one_absorbing_primary: false,
            radical: radical.clone(),
            witnesses: IdealWitnesses::default(),
        };
        if !report.proper {
            return Ok(report);
        }
        let inside = |x: RingElem| i.elements.contains(x);
        let in_rad = |x: RingElem| radical.elements.contains(x);
        let n = self.size;

        let mut prime = None;
        let mut primary = None;
        'pairs: for a in 0..n {
            for b in 0..n {
                if !inside(self.mul(a, b)) {
                    continue;
                }
                if prime.is_none() && !inside(a) && !inside(b) {
                    prime = Some([a, b]);
                }
                if primary.is_none() && !inside(a) && !in_rad(b) {
                    primary = Some([a, b]);
                }
                if prime.is_some() && primary.is_some() {
                    break 'pairs;
                }
            }
        }
        report.prime = prime.is_none();
        report.primary = primary.is_none();
        report.witnesses.prime = prime;
        report.witnesses.primary = primary;

        let not_maximal = (0..n).find(|&x| !inside(x) && !(0..n).any(|y| inside(self.sub(self.mul(x, y), self.one))));
        report.maximal = not_maximal.is_none();
        report.witnesses.maximal = not_maximal;

        let mut two = None;
        'two: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                if inside(ab) {
                    continue;
                }
                for c in 0..n {
                    if inside(self.mul(ab, c)) && !in_rad(self.mul(a, c)) && !in_rad(self.mul(b, c)) {
                        two = Some([a, b, c]);
                        break 'two;
                    }
                }
            }
        }
        report.two_absorbing_primary = two.is_none();
        report.witnesses.two_absorbing_primary = two;

        let mut one = None;
        'one: for &a in &self.non_units {
            for &b in &self.non_units {
                let ab = self.mul(a, b);
                if inside(ab) {
                    continue;
                }
                for &c in &self.non_units {
                    if inside(self.mul(ab, c)) && !in_rad(c) {
                        one = Some([a, b, c]);
                        break 'one;
                    }
                }
            }
        }
        report.one_absorbing_primary = one.is_none();
        report.witnesses.one_absorbing_primary = one;
        Ok(report)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    Colon,
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring_id: u64,
    elements: ElemSet,
    generators: Vec<RingElem>,
}

/// Ideals compare by carrier; generator lists are presentation only.
impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring_id == other.ring_id && self.elements == other.elements
    }
}
impl Eq for Ideal {}

impl Ideal {
    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }
    pub fn generators(&self) -> &[RingElem] {
        &self.generators
    }
    pub fn ring_id(&self) -> u64 {
        self.ring_id
    }
    pub fn contains(&self, x: RingElem) -> bool {
        self.elements.contains(x)
    }
    pub fn is_proper(&self) -> bool {
        !self.elements.is_full()
    }
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.is_subset(&other.elements)
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdealWitnesses {
    pub prime: Option<[RingElem; 2]>,
    pub maximal: Option<RingElem>,
    pub primary: Option<[RingElem; 2]>,
    pub two_absorbing_primary: Option<[RingElem; 3]>,
    pub one_absorbing_primary: Option<[RingElem; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub proper: bool,
    pub prime: bool,
    pub maximal: bool,
    pub primary: bool,
    pub two_absorbing_primary: bool,
    pub one_absorbing_primary: bool,
    pub radical: Ideal,
    pub witnesses: IdealWitnesses,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z12() -> Arc<FiniteRing> {
        FiniteRing::residue(12).unwrap()
    }

    fn set(r: &FiniteRing, xs: &[usize]) -> ElemSet {
        ElemSet::from_indices(r.size(), xs.iter().copied())
    }

    #[test]
    fn residue_units_match_enumeration() {
        let r = z12();
        // independent: gcd(u, 12) == 1
        let expected: Vec<usize> = (0..12).filter(|&u| num_integer::gcd(u, 12) == 1).collect();
        assert_eq!(r.units().iter().collect::<Vec<_>>(), expected);
        assert_eq!(expected, vec![1, 5, 7, 11]);
        r.check_axioms().unwrap();
    }

    #[test]
    fn bad_modulus() {
        assert_eq!(FiniteRing::residue(1).unwrap_err(), Error::ModulusTooSmall(1));
        assert!(FiniteRing::residue(-1).is_err());
        assert!(FiniteRing::residue(300).unwrap_err().is_cap());
    }

    #[test]
    fn product_matches_crt() {
        let z2 = FiniteRing::residue(2).unwrap();
        let z3 = FiniteRing::residue(3).unwrap();
        let p = FiniteRing::product(&z2, &z3).unwrap();
        let z6 = FiniteRing::residue(6).unwrap();
        p.check_axioms().unwrap();
        let crt = |x: usize| p.pair(x % 2, x % 3).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(crt(z6.add(a, b)), p.add(crt(a), crt(b)));
                assert_eq!(crt(z6.mul(a, b)), p.mul(crt(a), crt(b)));
            }
        }
        assert_eq!(crt(1), p.one());
    }

    #[test]
    fn quotient_sizes() {
        let r = z12();
        let q = FiniteRing::quotient(&r, &r.ideal_span(&[4]).unwrap()).unwrap();
        assert_eq!(q.size(), 4);
        q.check_axioms().unwrap();
        assert_eq!(FiniteRing::quotient(&r, &r.whole()).unwrap_err(), Error::ImproperQuotient);
        let d = RingDescriptor::Quotient(Box::new(RingDescriptor::Residue(12)), vec![4]);
        assert_eq!(build_ring(&d, 256).unwrap().size(), 4);
    }

    #[test]
    fn spans() {
        let r = z12();
        assert_eq!(r.ideal_span(&[0]).unwrap().elements(), &set(&r, &[0]));
        assert_eq!(r.ideal_span(&[4]).unwrap().elements(), &set(&r, &[0, 4, 8]));
        assert!(!r.ideal_span(&[2, 3]).unwrap().is_proper());
        assert_eq!(r.ideal_span(&[12]).unwrap_err(), Error::ForeignElement(12));
    }

    #[test]
    fn combine_ops() {
        let r = z12();
        let i = |g| r.ideal_span(&[g]).unwrap();
        assert_eq!(r.colon(&i(4), &i(2)).unwrap(), i(2));
        assert_eq!(r.product_ideal(&i(4), &i(3)).unwrap(), i(0));
        assert_eq!(r.intersect(&i(4), &i(6)).unwrap(), i(0));
        assert_eq!(r.sum(&i(4), &i(6)).unwrap(), i(2));
        let other = FiniteRing::residue(12).unwrap();
        assert_eq!(r.sum(&i(4), &other.zero_ideal()).unwrap_err(), Error::MismatchedRings);
    }

    #[test]
    fn radicals() {
        let r = z12();
        let i = |g| r.ideal_span(&[g]).unwrap();
        assert_eq!(r.radical(&i(0)).unwrap(), i(6));
        assert_eq!(r.radical(&i(4)).unwrap(), i(2));
        assert_eq!(r.radical(&r.whole()).unwrap(), r.whole());
    }

    #[test]
    fn classify_examples() {
        let r = z12();
        let i = |g| r.ideal_span(&[g]).unwrap();
        let zero = r.classify_ideal(&i(0)).unwrap();
        assert!(!zero.one_absorbing_primary);
        assert_eq!(zero.witnesses.one_absorbing_primary, Some([2, 2, 3]));
        assert!(zero.two_absorbing_primary);
        let four = r.classify_ideal(&i(4)).unwrap();
        assert!(four.one_absorbing_primary && four.primary && !four.prime);
        let two = r.classify_ideal(&i(2)).unwrap();
        assert!(two.prime && two.maximal);
        let whole = r.classify_ideal(&r.whole()).unwrap();
        assert!(!whole.proper && !whole.prime && !whole.one_absorbing_primary);
    }

    #[test]
    fn ideal_lattice_of_z12() {
        let r = z12();
        let sizes: Vec<usize> = r.ideals().unwrap().iter().map(|i| i.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn radical_and_chain_laws_exhaustive() {
        for n in 2..=40 {
            let r = FiniteRing::residue(n).unwrap();
            let ideals = r.ideals().unwrap();
            for i in ideals {
                let ri = r.radical(i).unwrap();
                assert!(i.is_subset(&ri));
                assert_eq!(r.radical(&ri).unwrap(), ri);
                for j in ideals {
                    let lhs = r.radical(&r.intersect(i, j).unwrap()).unwrap();
                    let rhs = r.intersect(&ri, &r.radical(j).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    let c = r.colon(i, j).unwrap();
                    for x in r.elements() {
                        let direct = j.elements().iter().all(|y| i.contains(r.mul(x, y)));
                        assert_eq!(c.contains(x), direct);
                    }
                }
                let rep = r.classify_ideal(i).unwrap();
                if rep.prime {
                    assert!(rep.primary);
                }
                if rep.primary {
                    assert!(rep.one_absorbing_primary, "n={n} {:?}", i);
                }
                if rep.one_absorbing_primary {
                    assert!(rep.two_absorbing_primary);
                }
                // associate generators give the same verdicts
                if let [g] = i.generators() {
                    for u in r.units().iter() {
                        let assoc = r.ideal_span(&[r.mul(u, *g)]).unwrap();
                        let other = r.classify_ideal(&assoc).unwrap();
                        assert_eq!(other.one_absorbing_primary, rep.one_absorbing_primary);
                        assert_eq!(other.primary, rep.primary);
                    }
                }
            }
        }
    }
}
