use std::sync::Arc;

use super::{Base, FiniteModule, ModElem, ModuleStructure, Submodule};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, RingElem, Structure};

/// `S⁻¹R`, `S⁻¹M` and the canonical maps `r ↦ r/1`, `m ↦ m/1`.
#[derive(Debug)]
pub struct Localization {
    pub ring: Arc<FiniteRing>,
    pub module: Arc<FiniteModule>,
    pub ring_map: Vec<RingElem>,
    pub module_map: Vec<ModElem>,
    source: Arc<FiniteModule>,
    denominators: Vec<RingElem>,
    module_class: Vec<ModElem>,
}

/// Groups formal fractions `(x, s)` into classes, given a predicate deciding
/// when two fractions are equal. Fractions are visited with `s = 1` first so
/// the classes of `x/1` come first, in element order.
fn fraction_classes(
    count: usize,
    denominators: &[RingElem],
    same: impl Fn((usize, RingElem), (usize, RingElem)) -> bool,
) -> (Vec<usize>, Vec<(usize, RingElem)>) {
    let ns = denominators.len();
    let mut class = vec![usize::MAX; count * ns];
    let mut reps: Vec<(usize, RingElem)> = Vec::new();
    for (si, &s) in denominators.iter().enumerate() {
        for x in 0..count {
            let found = reps.iter().position(|&rep| same(rep, (x, s)));
            class[x * ns + si] = match found {
                Some(c) => c,
                None => {
                    reps.push((x, s));
                    reps.len() - 1
                }
            };
        }
    }
    (class, reps)
}

/// Localizes a module over a finite ring at a multiplicatively closed set.
///
/// Fractions are formal pairs with `r/s = r'/s'` iff `t(rs' - r's) = 0` for
/// some `t ∈ S` (and likewise in the module).
pub fn localize(m: &Arc<FiniteModule>, s: &[RingElem]) -> Result<Localization> {
    let ring = match m.base() {
        Base::Ring(r) => r.clone(),
        Base::Integers(_) => return Err(Error::IntegerBase),
    };
    let mut set = ElemSet::empty(ring.size());
    for &x in s {
        if x >= ring.size() {
            return Err(Error::ForeignElement(x));
        }
        set.insert(x);
    }
    if !set.contains(ring.one()) || set.iter().any(|a| set.iter().any(|b| !set.contains(ring.mul(a, b)))) {
        return Err(Error::NotMultiplicativelyClosed);
    }
    let mut denominators = vec![ring.one()];
    denominators.extend(set.iter().filter(|&x| x != ring.one()));
    let ns = denominators.len();
    let sidx = |x: RingElem| denominators.iter().position(|&d| d == x).expect("S is closed");

    // elements killed by some t in S
    let ring_kernel = ElemSet::from_indices(
        ring.size(),
        ring.elements().filter(|&x| denominators.iter().any(|&t| ring.mul(t, x) == ring.zero())),
    );
    let module_kernel = ElemSet::from_indices(
        m.size(),
        m.elements().filter(|&x| denominators.iter().any(|&t| m.act(t, x) == m.zero())),
    );

    let (rclass, rreps) = fraction_classes(ring.size(), &denominators, |(r, s), (r2, s2)| {
        ring_kernel.contains(ring.sub(ring.mul(r, s2), ring.mul(r2, s)))
    });
    let rsize = rreps.len();
    let rc = |r: RingElem, s: RingElem| rclass[r * ns + sidx(s)];
    let mut add = vec![0; rsize * rsize];
    let mut mul = vec![0; rsize * rsize];
    for (i, &(a, s)) in rreps.iter().enumerate() {
        for (j, &(b, t)) in rreps.iter().enumerate() {
            let st = ring.mul(s, t);
            add[i * rsize + j] = rc(ring.add(ring.mul(a, t), ring.mul(b, s)), st);
            mul[i * rsize + j] = rc(ring.mul(a, b), st);
        }
    }
    let fraction_name = |num: &str, den: RingElem| {
        if den == ring.one() {
            num.to_string()
        } else {
            format!("{num}/{}", ring.name(den))
        }
    };
    let rnames = rreps.iter().map(|&(r, s)| fraction_name(ring.name(r), s)).collect();
    let ring_map: Vec<RingElem> = ring.elements().map(|r| rc(r, ring.one())).collect();
    let local_ring = FiniteRing::from_tables(
        format!("{}[S^-1]", ring.label()),
        rnames,
        add,
        mul,
        rc(ring.zero(), ring.one()),
        rc(ring.one(), ring.one()),
        Structure::Localization {
            parent: ring.clone(),
            map: ring_map.clone(),
        },
    )?;

    let (mclass, mreps) = fraction_classes(m.size(), &denominators, |(x, s), (y, t)| {
        module_kernel.contains(m.sub(m.act(t, x), m.act(s, y)))
    });
    let msize = mreps.len();
    let mc = |x: ModElem, s: RingElem| mclass[x * ns + sidx(s)];
    let mut madd = vec![0; msize * msize];
    for (i, &(x, s)) in mreps.iter().enumerate() {
        for (j, &(y, t)) in mreps.iter().enumerate() {
            madd[i * msize + j] = mc(m.add(m.act(t, x), m.act(s, y)), ring.mul(s, t));
        }
    }
    let mut action = vec![0; rsize * msize];
    for (i, &(r, s)) in rreps.iter().enumerate() {
        for (j, &(x, t)) in mreps.iter().enumerate() {
            action[i * msize + j] = mc(m.act(r, x), ring.mul(s, t));
        }
    }
    let mnames = mreps.iter().map(|&(x, s)| fraction_name(m.name(x), s)).collect();
    let module_map: Vec<ModElem> = m.elements().map(|x| mc(x, ring.one())).collect();
    let local_module = FiniteModule::assemble(
        format!("{}[S^-1]", m.label()),
        Base::Ring(local_ring.clone()),
        mnames,
        madd,
        action,
        ModuleStructure::Localization {
            parent: m.clone(),
            map: module_map.clone(),
        },
    )?;
    local_module.check_laws()?;

    Ok(Localization {
        ring: local_ring,
        module: Arc::new(local_module),
        ring_map,
        module_map,
        source: m.clone(),
        denominators,
        module_class: mclass,
    })
}

impl Localization {
    /// `S⁻¹N = {n/s}`.
    pub fn submodule(&self, n: &Submodule) -> Result<Submodule> {
        self.source.owns(n)?;
        let ns = self.denominators.len();
        let set = ElemSet::from_indices(
            self.module.size(),
            n.elements()
                .iter()
                .flat_map(|x| (0..ns).map(move |si| self.module_class[x * ns + si])),
        );
        Ok(self.module.sub_from_set(set))
    }

    pub fn denominators(&self) -> &[RingElem] {
        &self.denominators
    }
}
