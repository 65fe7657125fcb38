//! Finite modules over finite rings, and finite abelian groups viewed as
//! modules over the integers.
//!
//! A module over the integers carries a residue ring `Z/e` where `e`
//! annihilates the group; every integer acts through its residue. The
//! classification predicates quantify over non-unit integers, and every
//! residue class modulo `e ≥ 2` contains one, so for such modules every
//! residue is treated as a non-unit scalar.

mod classify;
mod hom;
mod idealize;
mod localize;

pub use classify::{ClassificationReport, SubmoduleWitnesses};
pub use hom::{hom_transfer, Direction, ModuleHom};
pub use idealize::{idealize, Idealization};
pub use localize::{localize, Localization};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::elemset::{join_closure, ElemSet};
use crate::error::{Error, Result};
use crate::finite_ring::{fresh_id, FiniteRing, Ideal, RingElem, DEFAULT_LATTICE_CAP};

/// Default bound on module carriers.
pub const DEFAULT_MODULE_CAP: usize = 1024;

pub type ModElem = usize;

/// The scalars acting on a module.
#[derive(Clone, Debug)]
pub enum Base {
    Ring(Arc<FiniteRing>),
    /// The integers, acting through the residue ring carried here.
    Integers(Arc<FiniteRing>),
}

impl Base {
    pub fn scalars(&self) -> &Arc<FiniteRing> {
        match self {
            Base::Ring(r) | Base::Integers(r) => r,
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Base::Integers(_))
    }

    /// Scalars over which the non-unit quantifiers range.
    pub fn non_units(&self) -> Vec<RingElem> {
        match self {
            Base::Ring(r) => r.non_units().to_vec(),
            Base::Integers(r) => r.elements().collect(),
        }
    }

    /// Images of the proper ideals of the base ring. For the integers the
    /// image of a proper ideal `dZ` in `Z/e` can be any ideal (take `d`
    /// coprime to `e`), so every ideal qualifies.
    pub fn proper_ideals(&self) -> Result<Vec<Ideal>> {
        let r = self.scalars();
        Ok(match self {
            Base::Ring(_) => r.ideals()?.iter().filter(|i| i.is_proper()).cloned().collect(),
            Base::Integers(_) => r.ideals()?.to_vec(),
        })
    }

    fn same_as(&self, other: &Base) -> bool {
        match (self, other) {
            (Base::Ring(a), Base::Ring(b)) => a.id() == b.id(),
            (Base::Integers(a), Base::Integers(b)) => a.id() == b.id(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub enum ModuleStructure {
    Regular,
    Explicit,
    /// Finite abelian group `Z/d1 × … × Z/dk`.
    Group(Vec<u64>),
    /// `M1 × M2` over the product of the base rings.
    Product(Arc<FiniteModule>, Arc<FiniteModule>),
    /// `M1 ⊕ M2` over a common base.
    DirectSum(Arc<FiniteModule>, Arc<FiniteModule>),
    Quotient {
        parent: Arc<FiniteModule>,
        projection: Vec<ModElem>,
    },
    Localization {
        parent: Arc<FiniteModule>,
        map: Vec<ModElem>,
    },
}

pub struct FiniteModule {
    id: u64,
    label: String,
    base: Base,
    size: usize,
    add: Vec<ModElem>,
    neg: Vec<ModElem>,
    zero: ModElem,
    action: Vec<ModElem>,
    names: Vec<String>,
    structure: ModuleStructure,
    lattice: OnceLock<std::result::Result<Lattice, Error>>,
    reports: OnceLock<std::result::Result<Vec<ClassificationReport>, Error>>,
}

impl std::fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteModule({}, size {})", self.label, self.size)
    }
}

/// The submodule lattice with cached prime flags.
pub struct Lattice {
    subs: Vec<Submodule>,
    index: HashMap<ElemSet, usize>,
    prime: Vec<bool>,
}

impl Lattice {
    pub fn submodules(&self) -> &[Submodule] {
        &self.subs
    }
    pub fn position(&self, n: &Submodule) -> Option<usize> {
        self.index.get(&n.elements).copied()
    }
    pub fn is_prime(&self, idx: usize) -> bool {
        self.prime[idx]
    }
}

#[derive(Clone, Debug)]
pub struct Submodule {
    module_id: u64,
    elements: ElemSet,
    generators: Vec<ModElem>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module_id == other.module_id && self.elements == other.elements
    }
}
impl Eq for Submodule {}

impl Submodule {
    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }
    pub fn generators(&self) -> &[ModElem] {
        &self.generators
    }
    pub fn module_id(&self) -> u64 {
        self.module_id
    }
    pub fn contains(&self, m: ModElem) -> bool {
        self.elements.contains(m)
    }
    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.elements.is_subset(&other.elements)
    }
    pub fn is_proper(&self) -> bool {
        !self.elements.is_full()
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// What a colon ideal `(N : X)` is taken against.
#[derive(Clone, Copy, Debug)]
pub enum ColonTarget<'a> {
    Module,
    Submodule(&'a Submodule),
    Element(ModElem),
}

fn check_cap(size: usize) -> Result<()> {
    if size > DEFAULT_MODULE_CAP {
        return Err(Error::CapExceeded {
            what: "module carrier",
            limit: DEFAULT_MODULE_CAP,
        });
    }
    Ok(())
}

impl FiniteModule {
    pub(crate) fn assemble(
        label: String,
        base: Base,
        names: Vec<String>,
        add: Vec<ModElem>,
        action: Vec<ModElem>,
        structure: ModuleStructure,
    ) -> Result<Self> {
        let size = names.len();
        let zero = (0..size)
            .find(|&z| (0..size).all(|x| add[z * size + x] == x))
            .ok_or_else(|| Error::ActionLaw("no additive identity".into()))?;
        let mut neg = vec![zero; size];
        for (a, slot) in neg.iter_mut().enumerate() {
            *slot = (0..size)
                .find(|&b| add[a * size + b] == zero)
                .ok_or_else(|| Error::ActionLaw(format!("no additive inverse for {a}")))?;
        }
        Ok(FiniteModule {
            id: fresh_id(),
            label,
            base,
            size,
            add,
            neg,
            zero,
            action,
            names,
            structure,
            lattice: OnceLock::new(),
            reports: OnceLock::new(),
        })
    }

    /// The ring acting on itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> Arc<Self> {
        let n = ring.size();
        let mut add = vec![0; n * n];
        let mut action = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ring.add(a, b);
                action[a * n + b] = ring.mul(a, b);
            }
        }
        let m = Self::assemble(
            format!("{} (regular)", ring.label()),
            Base::Ring(ring.clone()),
            ring.names().to_vec(),
            add,
            action,
            ModuleStructure::Regular,
        )
        .expect("ring tables give a module");
        Arc::new(m)
    }

    /// Explicit group table and action table (`action[r * size + m]`), with
    /// every module law checked.
    pub fn explicit(
        label: impl Into<String>,
        base: Base,
        names: Vec<String>,
        add: Vec<ModElem>,
        action: Vec<ModElem>,
    ) -> Result<Arc<Self>> {
        let size = names.len();
        check_cap(size)?;
        let rs = base.scalars().size();
        if add.len() != size * size || action.len() != rs * size {
            return Err(Error::ActionLaw("table shape".into()));
        }
        if add.iter().chain(&action).any(|&x| x >= size) {
            return Err(Error::ActionLaw("table entry out of range".into()));
        }
        let m = Self::assemble(label.into(), base, names, add, action, ModuleStructure::Explicit)?;
        m.check_laws()?;
        Ok(Arc::new(m))
    }

    /// The finite abelian group `Z/d1 × … × Z/dk` as a module over the integers.
    pub fn abelian_group(invariants: &[u64]) -> Result<Arc<Self>> {
        if invariants.is_empty() || invariants.iter().any(|&d| d < 1) {
            return Err(Error::ModulusTooSmall(0));
        }
        let size = invariants
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .ok_or(Error::CapExceeded {
                what: "module carrier",
                limit: DEFAULT_MODULE_CAP,
            })?;
        check_cap(size)?;
        let exponent = invariants.iter().fold(1u64, |acc, &d| num_integer::lcm(acc, d)).max(2);
        let scalars = FiniteRing::residue(exponent as i64)?;
        let decode = |mut x: usize| -> Vec<u64> {
            let mut digits = vec![0; invariants.len()];
            for (i, &d) in invariants.iter().enumerate().rev() {
                digits[i] = (x % d as usize) as u64;
                x /= d as usize;
            }
            digits
        };
        let encode = |digits: &[u64]| -> usize {
            digits
                .iter()
                .zip(invariants)
                .fold(0usize, |acc, (&v, &d)| acc * d as usize + (v % d) as usize)
        };
        let mut add = vec![0; size * size];
        for x in 0..size {
            let dx = decode(x);
            for y in 0..size {
                let dy = decode(y);
                let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| a + b).collect();
                add[x * size + y] = encode(&sum);
            }
        }
        let rs = scalars.size();
        let mut action = vec![0; rs * size];
        for r in 0..rs {
            for x in 0..size {
                let prod: Vec<u64> = decode(x).iter().map(|&v| v * r as u64).collect();
                action[r * size + x] = encode(&prod);
            }
        }
        let names = (0..size)
            .map(|x| {
                let d = decode(x);
                if d.len() == 1 {
                    d[0].to_string()
                } else {
                    format!("({})", d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        let label = format!(
            "group {}",
            invariants.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("x")
        );
        Ok(Arc::new(Self::assemble(
            label,
            Base::Integers(scalars),
            names,
            add,
            action,
            ModuleStructure::Group(invariants.to_vec()),
        )?))
    }

    /// `M1 × M2` as a module over `R1 × R2`.
    pub fn product(m1: &Arc<Self>, m2: &Arc<Self>) -> Result<Arc<Self>> {
        let (r1, r2) = match (&m1.base, &m2.base) {
            (Base::Ring(a), Base::Ring(b)) => (a, b),
            _ => return Err(Error::IntegerBase),
        };
        let ring = FiniteRing::product(r1, r2)?;
        let (n1, n2) = (m1.size, m2.size);
        let size = n1 * n2;
        check_cap(size)?;
        let mut add = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                add[x * size + y] = m1.add(x / n2, y / n2) * n2 + m2.add(x % n2, y % n2);
            }
        }
        let rs2 = r2.size();
        let mut action = vec![0; ring.size() * size];
        for r in 0..ring.size() {
            for x in 0..size {
                action[r * size + x] = m1.act(r / rs2, x / n2) * n2 + m2.act(r % rs2, x % n2);
            }
        }
        let names = (0..size)
            .map(|x| format!("({},{})", m1.name(x / n2), m2.name(x % n2)))
            .collect();
        Ok(Arc::new(Self::assemble(
            format!("{} x {}", m1.label, m2.label),
            Base::Ring(ring),
            names,
            add,
            action,
            ModuleStructure::Product(m1.clone(), m2.clone()),
        )?))
    }

    /// `M1 ⊕ M2` over the common base.
    pub fn direct_sum(m1: &Arc<Self>, m2: &Arc<Self>) -> Result<Arc<Self>> {
        let base = match (&m1.base, &m2.base) {
            (Base::Ring(a), Base::Ring(b)) if a.id() == b.id() => m1.base.clone(),
            (Base::Integers(a), Base::Integers(b)) => {
                let e = num_integer::lcm(a.size(), b.size());
                Base::Integers(FiniteRing::residue(e as i64)?)
            }
            _ => return Err(Error::MismatchedRings),
        };
        let (n1, n2) = (m1.size, m2.size);
        let size = n1 * n2;
        check_cap(size)?;
        let mut add = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                add[x * size + y] = m1.add(x / n2, y / n2) * n2 + m2.add(x % n2, y % n2);
            }
        }
        let rs = base.scalars().size();
        let (e1, e2) = (m1.base.scalars().size(), m2.base.scalars().size());
        let mut action = vec![0; rs * size];
        for r in 0..rs {
            // for integer bases the residue is reduced into each summand's ring
            let (a, b) = if base.is_integers() { (r % e1, r % e2) } else { (r, r) };
            for x in 0..size {
                action[r * size + x] = m1.act(a, x / n2) * n2 + m2.act(b, x % n2);
            }
        }
        let names = (0..size)
            .map(|x| format!("({},{})", m1.name(x / n2), m2.name(x % n2)))
            .collect();
        Ok(Arc::new(Self::assemble(
            format!("{} + {}", m1.label, m2.label),
            base,
            names,
            add,
            action,
            ModuleStructure::DirectSum(m1.clone(), m2.clone()),
        )?))
    }

    /// `M / N` over the same base; cosets are ordered by least representative.
    pub fn quotient(m: &Arc<Self>, n: &Submodule) -> Result<Arc<Self>> {
        m.owns(n)?;
        let mut projection = vec![usize::MAX; m.size];
        let mut reps = Vec::new();
        for x in 0..m.size {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for y in n.elements.iter() {
                projection[m.add(x, y)] = class;
            }
        }
        let size = reps.len();
        let mut add = vec![0; size * size];
        for (i, &x) in reps.iter().enumerate() {
            for (j, &y) in reps.iter().enumerate() {
                add[i * size + j] = projection[m.add(x, y)];
            }
        }
        let rs = m.base.scalars().size();
        let mut action = vec![0; rs * size];
        for r in 0..rs {
            for (i, &x) in reps.iter().enumerate() {
                action[r * size + i] = projection[m.act(r, x)];
            }
        }
        let names = reps.iter().map(|&x| m.name(x).to_string()).collect();
        let label = format!("{} / <{}>", m.label, m.render_list(&n.generators));
        Ok(Arc::new(Self::assemble(
            label,
            m.base.clone(),
            names,
            add,
            action,
            ModuleStructure::Quotient {
                parent: m.clone(),
                projection,
            },
        )?))
    }

    /// Checks the abelian group axioms and the four action laws.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.size;
        let ring = self.base.scalars();
        for a in 0..n {
            if self.act(ring.one(), a) != a {
                return Err(Error::ActionLaw(format!("1·{a} != {a}")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::ActionLaw("addition not commutative".into()));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::ActionLaw("addition not associative".into()));
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                for m in 0..n {
                    if self.act(ring.add(r, s), m) != self.add(self.act(r, m), self.act(s, m)) {
                        return Err(Error::ActionLaw(format!("(r+s)m fails at {r},{s},{m}")));
                    }
                    if self.act(ring.mul(r, s), m) != self.act(r, self.act(s, m)) {
                        return Err(Error::ActionLaw(format!("(rs)m fails at {r},{s},{m}")));
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if self.act(r, self.add(a, b)) != self.add(self.act(r, a), self.act(r, b)) {
                        return Err(Error::ActionLaw(format!("r(m+m') fails at {r},{a},{b}")));
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
    pub fn base(&self) -> &Base {
        &self.base
    }
    pub fn scalars(&self) -> &Arc<FiniteRing> {
        self.base.scalars()
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn structure(&self) -> &ModuleStructure {
        &self.structure
    }
    pub fn zero(&self) -> ModElem {
        self.zero
    }
    pub fn elements(&self) -> std::ops::Range<ModElem> {
        0..self.size
    }
    #[inline]
    pub fn add(&self, a: ModElem, b: ModElem) -> ModElem {
        self.add[a * self.size + b]
    }
    pub fn neg(&self, a: ModElem) -> ModElem {
        self.neg[a]
    }
    pub fn sub(&self, a: ModElem, b: ModElem) -> ModElem {
        self.add(a, self.neg[b])
    }
    #[inline]
    pub fn act(&self, r: RingElem, m: ModElem) -> ModElem {
        self.action[r * self.size + m]
    }
    pub fn name(&self, m: ModElem) -> &str {
        &self.names[m]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn render_list(&self, xs: &[ModElem]) -> String {
        xs.iter().map(|&x| self.name(x)).collect::<Vec<_>>().join(",")
    }

    pub(crate) fn owns(&self, n: &Submodule) -> Result<()> {
        if n.module_id != self.id {
            return Err(Error::MismatchedModules);
        }
        Ok(())
    }

    fn set_sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.size);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    fn cyclic_set(&self, m: ModElem) -> ElemSet {
        ElemSet::from_indices(self.size, self.scalars().elements().map(|r| self.act(r, m)))
    }

    pub(crate) fn sub_from_set(&self, elements: ElemSet) -> Submodule {
        let mut generators = Vec::new();
        let mut span = ElemSet::from_indices(self.size, [self.zero]);
        for x in elements.iter() {
            if !span.contains(x) {
                generators.push(x);
                span = self.set_sum(&span, &self.cyclic_set(x));
            }
        }
        Submodule {
            module_id: self.id,
            elements,
            generators,
        }
    }

    /// Smallest submodule containing the given elements.
    pub fn span(&self, generators: &[ModElem]) -> Result<Submodule> {
        if let Some(&x) = generators.iter().find(|&&x| x >= self.size) {
            return Err(Error::ForeignElement(x));
        }
        let mut elements = ElemSet::from_indices(self.size, [self.zero]);
        for &g in generators {
            if !elements.contains(g) {
                elements = self.set_sum(&elements, &self.cyclic_set(g));
            }
        }
        Ok(Submodule {
            module_id: self.id,
            elements,
            generators: generators.to_vec(),
        })
    }

    /// Wraps a subset as a submodule after checking closure.
    pub fn submodule_from_elements(&self, elements: ElemSet) -> Result<Submodule> {
        let closed = elements.universe() == self.size
            && elements.contains(self.zero)
            && elements.iter().all(|x| {
                self.scalars().elements().all(|r| elements.contains(self.act(r, x)))
                    && elements.iter().all(|y| elements.contains(self.add(x, y)))
            });
        if !closed {
            return Err(Error::ActionLaw("subset is not a submodule".into()));
        }
        Ok(self.sub_from_set(elements))
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.sub_from_set(ElemSet::from_indices(self.size, [self.zero]))
    }

    pub fn whole(&self) -> Submodule {
        self.sub_from_set(ElemSet::full(self.size))
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.sub_from_set(self.set_sum(&a.elements, &b.elements)))
    }

    pub fn intersection(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.sub_from_set(a.elements.intersection(&b.elements)))
    }

    /// `I·K`, spanned by `{i k}`.
    pub fn ideal_times(&self, i: &Ideal, k: &Submodule) -> Result<Submodule> {
        self.scalars().owns(i)?;
        self.owns(k)?;
        let mut set = ElemSet::from_indices(self.size, [self.zero]);
        for r in i.elements().iter() {
            for m in k.elements.iter() {
                let x = self.act(r, m);
                if !set.contains(x) {
                    set = self.set_sum(&set, &self.cyclic_set(x));
                }
            }
        }
        Ok(self.sub_from_set(set))
    }

    /// The lattice of all submodules, enumerated as joins of cyclic
    /// submodules and sorted by size, then element list.
    pub fn lattice(&self) -> Result<&Lattice> {
        let res = self.lattice.get_or_init(|| {
            let cyclics: Vec<ElemSet> = (0..self.size).map(|m| self.cyclic_set(m)).collect();
            let sets = join_closure(
                ElemSet::from_indices(self.size, [self.zero]),
                &cyclics,
                |a, b| self.set_sum(a, b),
                DEFAULT_LATTICE_CAP,
            )?;
            let subs: Vec<Submodule> = sets.into_iter().map(|s| self.sub_from_set(s)).collect();
            let index = subs.iter().enumerate().map(|(i, s)| (s.elements.clone(), i)).collect();
            let prime = subs.iter().map(|s| self.is_prime(s)).collect();
            Ok(Lattice { subs, index, prime })
        });
        match res {
            Ok(l) => Ok(l),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn submodules(&self) -> Result<&[Submodule]> {
        Ok(self.lattice()?.submodules())
    }

    /// `(N : X) = {r : rX ⊆ N}` as an ideal of the scalar ring.
    pub fn colon_into_ring(&self, n: &Submodule, x: ColonTarget<'_>) -> Result<Ideal> {
        self.owns(n)?;
        let ring = self.scalars();
        let targets: Vec<ModElem> = match x {
            ColonTarget::Module => self.elements().collect(),
            ColonTarget::Submodule(k) => {
                self.owns(k)?;
                k.elements.iter().collect()
            }
            ColonTarget::Element(m) => {
                if m >= self.size {
                    return Err(Error::ForeignElement(m));
                }
                vec![m]
            }
        };
        let set = ElemSet::from_indices(
            ring.size(),
            ring.elements().filter(|&r| targets.iter().all(|&m| n.contains(self.act(r, m)))),
        );
        ring.ideal_from_elements(set)
    }

    pub fn colon(&self, n: &Submodule) -> Result<Ideal> {
        self.colon_into_ring(n, ColonTarget::Module)
    }

    pub fn annihilator(&self) -> Ideal {
        self.colon(&self.zero_submodule()).expect("own submodule")
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().len() == 1
    }

    /// `(N :_M d) = {m : dm ∈ N}`.
    pub fn colon_in_module(&self, n: &Submodule, d: RingElem) -> Result<Submodule> {
        self.owns(n)?;
        if d >= self.scalars().size() {
            return Err(Error::ForeignElement(d));
        }
        Ok(self.sub_from_set(ElemSet::from_indices(
            self.size,
            self.elements().filter(|&m| n.contains(self.act(d, m))),
        )))
    }

    /// Prime test straight from the definition: proper, and `am ∈ N` forces
    /// `m ∈ N` or `a ∈ (N : M)`.
    pub fn is_prime(&self, n: &Submodule) -> bool {
        if !n.is_proper() {
            return false;
        }
        let colon = match self.colon(n) {
            Ok(c) => c,
            Err(_) => return false,
        };
        self.scalars().elements().all(|a| {
            colon.contains(a) || self.elements().all(|m| !n.contains(self.act(a, m)) || n.contains(m))
        })
    }

    /// Intersection of all prime submodules containing `N`, or `M` if there
    /// are none.
    pub fn m_radical(&self, n: &Submodule) -> Result<Submodule> {
        self.owns(n)?;
        let lattice = self.lattice()?;
        let mut acc = ElemSet::full(self.size);
        for (i, p) in lattice.subs.iter().enumerate() {
            if lattice.prime[i] && n.is_subset(p) {
                acc = acc.intersection(&p.elements);
            }
        }
        Ok(self.sub_from_set(acc))
    }

    /// Every submodule `N` equals `(N : M)M`.
    pub fn is_multiplication(&self) -> Result<bool> {
        for n in self.submodules()? {
            if self.ideal_times(&self.colon(n)?, &self.whole())? != *n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N·K = (N : M)(K : M)M` in a multiplication module.
    pub fn submodule_product(&self, n: &Submodule, k: &Submodule) -> Result<Submodule> {
        if !self.is_multiplication()? {
            return Err(Error::NotMultiplication);
        }
        let ring = self.scalars();
        let ideal = ring.product_ideal(&self.colon(n)?, &self.colon(k)?)?;
        self.ideal_times(&ideal, &self.whole())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn klein() -> Arc<FiniteModule> {
        let f2 = FiniteRing::residue(2).unwrap();
        // V = {0, a, b, a+b}, index bits
        let add = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let action = (0..8).map(|i| if i / 4 == 0 { 0 } else { i % 4 }).collect();
        let names = ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        FiniteModule::explicit("klein", Base::Ring(f2), names, add, action).unwrap()
    }

    fn z12() -> Arc<FiniteModule> {
        FiniteModule::regular(&FiniteRing::residue(12).unwrap())
    }

    fn sub(m: &FiniteModule, g: &[usize]) -> Submodule {
        m.span(g).unwrap()
    }

    #[test]
    fn builds() {
        let m = z12();
        assert_eq!(m.size(), 12);
        m.check_laws().unwrap();
        let p = FiniteModule::product(
            &FiniteModule::regular(&FiniteRing::residue(2).unwrap()),
            &FiniteModule::regular(&FiniteRing::residue(3).unwrap()),
        )
        .unwrap();
        assert_eq!(p.size(), 6);
        p.check_laws().unwrap();
        assert_eq!(klein().size(), 4);
    }

    #[test]
    fn explicit_rejects_bad_action() {
        let f2 = FiniteRing::residue(2).unwrap();
        let add = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        // 1 acts as zero: not unitary
        let action = vec![0; 8];
        let names = (0..4).map(|i| i.to_string()).collect();
        assert!(matches!(
            FiniteModule::explicit("bad", Base::Ring(f2), names, add, action),
            Err(Error::ActionLaw(_))
        ));
    }

    #[test]
    fn lattices() {
        let m = z12();
        let sizes: Vec<usize> = m.submodules().unwrap().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(klein().submodules().unwrap().len(), 5);
        for p in [2, 3, 5, 7, 11] {
            let f = FiniteModule::regular(&FiniteRing::residue(p).unwrap());
            assert_eq!(f.submodules().unwrap().len(), 2);
        }
    }

    #[test]
    fn colons() {
        let m = z12();
        let r = m.scalars().clone();
        assert_eq!(m.colon(&sub(&m, &[4])).unwrap(), r.ideal_span(&[4]).unwrap());
        let k = klein();
        let line = k.span(&[1]).unwrap();
        assert_eq!(k.colon(&line).unwrap().len(), 1);
        assert_eq!(
            m.colon_into_ring(&sub(&m, &[6]), ColonTarget::Element(3)).unwrap(),
            r.ideal_span(&[2]).unwrap()
        );
        assert_eq!(m.colon_in_module(&sub(&m, &[4]), 6).unwrap(), sub(&m, &[2]));
        let n = sub(&m, &[4]);
        assert_eq!(m.colon_in_module(&n, 1).unwrap(), n);
        assert_eq!(m.colon_in_module(&n, 0).unwrap(), m.whole());
        let other = z12();
        assert_eq!(m.colon(&other.zero_submodule()).unwrap_err(), Error::MismatchedModules);
    }

    #[test]
    fn radicals() {
        let m = z12();
        assert_eq!(m.m_radical(&sub(&m, &[4])).unwrap(), sub(&m, &[2]));
        assert_eq!(m.m_radical(&sub(&m, &[0])).unwrap(), sub(&m, &[6]));
        assert_eq!(m.m_radical(&m.whole()).unwrap(), m.whole());
    }

    #[test]
    fn multiplication_modules() {
        let m = z12();
        assert!(m.is_multiplication().unwrap());
        assert_eq!(m.submodule_product(&sub(&m, &[4]), &sub(&m, &[3])).unwrap(), sub(&m, &[0]));
        let n = sub(&m, &[4]);
        assert_eq!(m.submodule_product(&n, &m.whole()).unwrap(), n);
        let k = klein();
        assert!(!k.is_multiplication().unwrap());
        let line = k.span(&[1]).unwrap();
        assert_eq!(k.submodule_product(&line, &line).unwrap_err(), Error::NotMultiplication);
    }

    #[test]
    fn group_modules() {
        let g = FiniteModule::abelian_group(&[2, 6]).unwrap();
        assert_eq!(g.size(), 12);
        g.check_laws().unwrap();
        assert!(g.base().is_integers());
        assert_eq!(g.scalars().size(), 6);
        let trivial = FiniteModule::abelian_group(&[1]).unwrap();
        assert_eq!(trivial.size(), 1);
        trivial.check_laws().unwrap();
    }

    #[test]
    fn quotient_and_sum() {
        let m = z12();
        let q = FiniteModule::quotient(&m, &sub(&m, &[4])).unwrap();
        assert_eq!(q.size(), 4);
        q.check_laws().unwrap();
        let f2 = FiniteModule::regular(&FiniteRing::residue(2).unwrap());
        let s = FiniteModule::direct_sum(&f2, &f2).unwrap();
        assert_eq!(s.submodules().unwrap().len(), 5);
    }
}
