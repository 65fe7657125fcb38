use std::sync::Arc;

use super::{Base, FiniteModule, ModElem, Submodule};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, Ideal, RingElem, Structure, DEFAULT_CARRIER_CAP};

/// The ring `R(+)M` on `R × M` with `(a, m)(b, n) = (ab, an + bm)`.
#[derive(Debug)]
pub struct Idealization {
    pub ring: Arc<FiniteRing>,
    pub base: Arc<FiniteRing>,
    pub module: Arc<FiniteModule>,
}

pub fn idealize(m: &Arc<FiniteModule>) -> Result<Idealization> {
    let base = match m.base() {
        Base::Ring(r) => r.clone(),
        Base::Integers(_) => return Err(Error::IntegerBase),
    };
    let (nr, nm) = (base.size(), m.size());
    let size = nr * nm;
    if size > DEFAULT_CARRIER_CAP {
        return Err(Error::CapExceeded {
            what: "ring carrier",
            limit: DEFAULT_CARRIER_CAP,
        });
    }
    let mut add = vec![0; size * size];
    let mut mul = vec![0; size * size];
    for x in 0..size {
        let (a, u) = (x / nm, x % nm);
        for y in 0..size {
            let (b, v) = (y / nm, y % nm);
            add[x * size + y] = base.add(a, b) * nm + m.add(u, v);
            mul[x * size + y] = base.mul(a, b) * nm + m.add(m.act(a, v), m.act(b, u));
        }
    }
    let names = (0..size)
        .map(|x| format!("({},{})", base.name(x / nm), m.name(x % nm)))
        .collect();
    let ring = FiniteRing::from_tables(
        format!("{}(+){}", base.label(), m.label()),
        names,
        add,
        mul,
        base.zero() * nm + m.zero(),
        base.one() * nm + m.zero(),
        Structure::Idealization(base.clone(), m.clone()),
    )?;
    Ok(Idealization {
        ring,
        base,
        module: m.clone(),
    })
}

impl Idealization {
    pub fn embed(&self, r: RingElem, x: ModElem) -> RingElem {
        r * self.module.size() + x
    }

    /// `I(+)N`, which is an ideal exactly when `IM ⊆ N`.
    pub fn homogeneous_ideal(&self, i: &Ideal, n: &Submodule) -> Result<Ideal> {
        self.base.owns(i)?;
        self.module.owns(n)?;
        let im = self.module.ideal_times(i, &self.module.whole())?;
        if !im.is_subset(n) {
            return Err(Error::NotHomogeneous);
        }
        let set = ElemSet::from_indices(
            self.ring.size(),
            i.elements()
                .iter()
                .flat_map(|r| n.elements().iter().map(move |x| self.embed(r, x))),
        );
        self.ring.ideal_from_elements(set)
    }

    /// `√I (+) M`, the claimed radical of any homogeneous `I(+)N`.
    pub fn radical_of_homogeneous(&self, i: &Ideal) -> Result<Ideal> {
        let rad = self.base.radical(i)?;
        let whole = self.module.whole();
        let set = ElemSet::from_indices(
            self.ring.size(),
            rad.elements()
                .iter()
                .flat_map(|r| whole.elements().iter().map(move |x| self.embed(r, x))),
        );
        self.ring.ideal_from_elements(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_idealized_over_itself() {
        let f2 = FiniteRing::residue(2).unwrap();
        let m = FiniteModule::regular(&f2);
        let id = idealize(&m).unwrap();
        assert_eq!(id.ring.size(), 4);
        // (1,1)^2 = (1, 1+1) = (1, 0), the identity
        let x = id.embed(1, 1);
        assert_eq!(id.ring.mul(x, x), id.ring.one());
        assert!(id.ring.is_unit(x));
        let zero = id.homogeneous_ideal(&f2.zero_ideal(), &m.zero_submodule()).unwrap();
        assert_eq!(zero.len(), 1);
        let rad = id.ring.radical(&zero).unwrap();
        assert_eq!(rad, id.radical_of_homogeneous(&f2.zero_ideal()).unwrap());
    }

    #[test]
    fn rejects_non_homogeneous() {
        let r = FiniteRing::residue(4).unwrap();
        let m = FiniteModule::regular(&r);
        let id = idealize(&m).unwrap();
        assert_eq!(
            id.homogeneous_ideal(&r.ideal_span(&[2]).unwrap(), &m.zero_submodule()).unwrap_err(),
            Error::NotHomogeneous
        );
    }
}
