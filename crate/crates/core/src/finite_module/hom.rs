use std::collections::VecDeque;
use std::sync::Arc;

use super::{FiniteModule, ModElem, ModuleStructure, Submodule};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finite_ring::RingElem;

/// A module homomorphism stored as its full element table.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Arc<FiniteModule>,
    target: Arc<FiniteModule>,
    map: Vec<ModElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Image,
    Preimage,
}

impl ModuleHom {
    /// Extends generator images linearly, rejecting images that violate a
    /// relation of the source or generators that do not span it.
    pub fn from_generator_images(
        source: &Arc<FiniteModule>,
        target: &Arc<FiniteModule>,
        generators: &[ModElem],
        images: &[ModElem],
    ) -> Result<Self> {
        if generators.len() != images.len() {
            return Err(Error::NotWellDefined("generator/image count mismatch".into()));
        }
        if let Some(&x) = generators.iter().find(|&&g| g >= source.size()) {
            return Err(Error::ForeignElement(x));
        }
        if let Some(&x) = images.iter().find(|&&g| g >= target.size()) {
            return Err(Error::ForeignElement(x));
        }
        Self::check_bases(source, target)?;
        let scalars = source.scalars().clone();
        let mut map = vec![usize::MAX; source.size()];
        map[source.zero()] = target.zero();
        let mut queue = VecDeque::from([source.zero()]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in generators.iter().zip(images) {
                for r in scalars.elements() {
                    let y = source.add(x, source.act(r, g));
                    let fy = target.add(map[x], target.act(r, img));
                    if map[y] == usize::MAX {
                        map[y] = fy;
                        queue.push_back(y);
                    } else if map[y] != fy {
                        return Err(Error::NotWellDefined(format!(
                            "element {} has two images",
                            source.name(y)
                        )));
                    }
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::NotWellDefined("generators do not span the source".into()));
        }
        Self::from_table(source, target, map)
    }

    /// Wraps an element table after checking linearity.
    pub fn from_table(source: &Arc<FiniteModule>, target: &Arc<FiniteModule>, map: Vec<ModElem>) -> Result<Self> {
        Self::check_bases(source, target)?;
        if map.len() != source.size() || map.iter().any(|&v| v >= target.size()) {
            return Err(Error::NotWellDefined("table shape".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return Err(Error::NotWellDefined("not additive".into()));
                }
            }
            if !source.base().is_integers() {
                for r in source.scalars().elements() {
                    if map[source.act(r, x)] != target.act(r, map[x]) {
                        return Err(Error::NotWellDefined("not linear".into()));
                    }
                }
            }
        }
        Ok(ModuleHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    fn check_bases(source: &FiniteModule, target: &FiniteModule) -> Result<()> {
        // Maps between groups over the integers only need additivity.
        if source.base().is_integers() && target.base().is_integers() {
            return Ok(());
        }
        if !source.base().same_as(target.base()) {
            return Err(Error::MismatchedRings);
        }
        Ok(())
    }

    pub fn identity(m: &Arc<FiniteModule>) -> Self {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            map: m.elements().collect(),
        }
    }

    /// `m ↦ r·m`, an endomorphism because the base ring is commutative.
    pub fn scalar(m: &Arc<FiniteModule>, r: RingElem) -> Result<Self> {
        if r >= m.scalars().size() {
            return Err(Error::ForeignElement(r));
        }
        Ok(ModuleHom {
            source: m.clone(),
            target: m.clone(),
            map: m.elements().map(|x| m.act(r, x)).collect(),
        })
    }

    /// The canonical projection `M → M/N` of a quotient module.
    pub fn projection(quotient: &Arc<FiniteModule>) -> Option<Self> {
        match quotient.structure() {
            ModuleStructure::Quotient { parent, projection } => Some(ModuleHom {
                source: parent.clone(),
                target: quotient.clone(),
                map: projection.clone(),
            }),
            _ => None,
        }
    }

    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }
    pub fn target(&self) -> &Arc<FiniteModule> {
        &self.target
    }
    pub fn apply(&self, x: ModElem) -> ModElem {
        self.map[x]
    }
    pub fn table(&self) -> &[ModElem] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        ElemSet::from_indices(self.target.size(), self.map.iter().copied()).is_full()
    }

    pub fn kernel(&self) -> Submodule {
        let z = self.target.zero();
        self.source.sub_from_set(ElemSet::from_indices(
            self.source.size(),
            self.source.elements().filter(|&x| self.map[x] == z),
        ))
    }

    /// `f(X)`, a submodule of the target.
    pub fn image(&self, x: &Submodule) -> Result<Submodule> {
        self.source.owns(x)?;
        let set = ElemSet::from_indices(self.target.size(), x.elements().iter().map(|m| self.map[m]));
        Ok(self.target.sub_from_set(set))
    }

    /// `f⁻¹(Y)`, a submodule of the source.
    pub fn preimage(&self, y: &Submodule) -> Result<Submodule> {
        self.target.owns(y)?;
        let set = ElemSet::from_indices(
            self.source.size(),
            self.source.elements().filter(|&m| y.contains(self.map[m])),
        );
        Ok(self.source.sub_from_set(set))
    }
}

/// Image or preimage of a submodule. The image direction demands an
/// epimorphism whose kernel lies inside `x`, the setting in which images of
/// radicals and of 1-absorbing primary submodules are controlled.
pub fn hom_transfer(f: &ModuleHom, direction: Direction, x: &Submodule) -> Result<Submodule> {
    match direction {
        Direction::Preimage => f.preimage(x),
        Direction::Image => {
            if !f.is_surjective() {
                return Err(Error::NotSurjective);
            }
            if !f.kernel().is_subset(x) {
                return Err(Error::NotWellDefined("kernel not contained in the submodule".into()));
            }
            f.image(x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_ring::FiniteRing;

    #[test]
    fn projection_images() {
        let m = FiniteModule::regular(&FiniteRing::residue(12).unwrap());
        let four = m.span(&[4]).unwrap();
        let q = FiniteModule::quotient(&m, &four).unwrap();
        let p = ModuleHom::projection(&q).unwrap();
        assert!(p.is_surjective());
        assert_eq!(p.kernel(), four);
        let img = hom_transfer(&p, Direction::Image, &m.span(&[2]).unwrap()).unwrap();
        assert_eq!(img.len(), 2);
        assert_eq!(hom_transfer(&p, Direction::Preimage, &q.zero_submodule()).unwrap(), four);
        let id = ModuleHom::identity(&m);
        assert_eq!(hom_transfer(&id, Direction::Image, &four).unwrap(), four);
    }

    #[test]
    fn image_requires_epimorphism() {
        let m = FiniteModule::regular(&FiniteRing::residue(12).unwrap());
        let f = ModuleHom::scalar(&m, 2).unwrap();
        assert_eq!(
            hom_transfer(&f, Direction::Image, &m.whole()).unwrap_err(),
            Error::NotSurjective
        );
    }

    #[test]
    fn generator_images() {
        let r = FiniteRing::residue(12).unwrap();
        let m = FiniteModule::regular(&r);
        // 1 ↦ 3 extends to multiplication by 3
        let f = ModuleHom::from_generator_images(&m, &m, &[1], &[3]).unwrap();
        assert!((0..12).all(|x| f.apply(x) == (3 * x) % 12));
        // Z/12 → Z/12 / <4> ≅ Z/4, fine; Z/4 → Z/12 with 1 ↦ 1 is not
        let z4 = FiniteModule::quotient(&m, &m.span(&[4]).unwrap()).unwrap();
        assert!(ModuleHom::from_generator_images(&m, &z4, &[1], &[1]).is_ok());
        assert!(matches!(
            ModuleHom::from_generator_images(&z4, &m, &[1], &[1]),
            Err(Error::NotWellDefined(_))
        ));
        assert!(matches!(
            ModuleHom::from_generator_images(&m, &m, &[2], &[2]),
            Err(Error::NotWellDefined(_))
        ));
    }
}
