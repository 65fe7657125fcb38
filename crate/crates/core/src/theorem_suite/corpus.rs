//! Named instance corpora. Every finite item is built from a ring and module
//! expression, so any instance can be printed as a reproducible spec.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::expr::{build_module_expr, build_ring_expr, BuiltModule, Lit, ModuleExpr, RingExpr};
use crate::finite_module::{idealize, localize, FiniteModule, Idealization, Localization, ModuleHom};
use crate::finite_ring::RingElem;
use crate::integer_module::IntLattice;

pub const CORPUS_NAMES: [&str; 5] = ["small-finite", "zn-60", "zn-30", "coverings", "z-world"];

#[derive(Debug)]
pub struct ModuleItem {
    pub ring: RingExpr,
    pub expr: ModuleExpr,
    pub module: Arc<FiniteModule>,
}

impl ModuleItem {
    pub fn build(ring: RingExpr, expr: ModuleExpr) -> Result<Self> {
        let scalars = build_ring_expr(&ring)?;
        match build_module_expr(&scalars, &expr)? {
            BuiltModule::Finite(module) => Ok(ModuleItem { ring, expr, module }),
            BuiltModule::Lattice(_) => Err(Error::Unsupported("lattice in a finite corpus".into())),
        }
    }

    /// Reproducer text in the instance-spec grammar.
    pub fn spec(&self) -> String {
        format!("version 1\nring {}\nmodule {}\n", self.ring, self.expr)
    }
}

#[derive(Debug)]
pub struct HomItem {
    pub source: usize,
    pub label: String,
    pub hom: ModuleHom,
}

#[derive(Debug)]
pub struct ProductItem {
    pub first: ModuleItem,
    pub second: ModuleItem,
    pub product: ModuleItem,
}

#[derive(Debug)]
pub struct LocalItem {
    pub source: usize,
    pub denominators: Vec<RingElem>,
    pub localization: Localization,
}

#[derive(Debug)]
pub struct IdealizationItem {
    pub source: usize,
    pub idealization: Idealization,
}

#[derive(Debug, Default)]
pub struct Corpus {
    pub name: String,
    pub seed: u64,
    pub modules: Vec<ModuleItem>,
    pub homs: Vec<HomItem>,
    pub products: Vec<ProductItem>,
    pub localizations: Vec<LocalItem>,
    pub idealizations: Vec<IdealizationItem>,
    /// Indices into `modules` searched exhaustively for coverings.
    pub covering_modules: Vec<usize>,
    pub int_ideals: Vec<u64>,
    pub lattices: Vec<IntLattice>,
    /// Fixed integer facts checked as existence fixtures.
    pub fixtures: bool,
}

fn zn(n: i64) -> RingExpr {
    RingExpr::Zn(n)
}
fn reg() -> ModuleExpr {
    ModuleExpr::Regular
}
fn bx<T>(t: T) -> Box<T> {
    Box::new(t)
}

fn regular_range(lo: i64, hi: i64) -> Result<Vec<ModuleItem>> {
    (lo..=hi).map(|n| ModuleItem::build(zn(n), reg())).collect()
}

/// The mixed finite corpus: regular modules, products of prime fields,
/// planes, quotients, local rings with non-principal ideals and small
/// groups over the integers.
fn small_finite_modules() -> Result<Vec<ModuleItem>> {
    let mut out = regular_range(2, 24)?;
    for n in [27, 30, 32, 36] {
        out.push(ModuleItem::build(zn(n), reg())?);
    }
    for (p, q) in [(2, 2), (2, 3), (2, 5), (3, 3), (3, 5), (5, 5)] {
        out.push(ModuleItem::build(RingExpr::Product(bx(zn(p)), bx(zn(q))), reg())?);
    }
    out.push(ModuleItem::build(
        RingExpr::Product(bx(zn(4)), bx(zn(2))),
        ModuleExpr::Product(bx(reg()), bx(reg())),
    )?);
    let plane = || ModuleExpr::Sum(bx(reg()), bx(reg()));
    out.push(ModuleItem::build(zn(2), plane())?);
    out.push(ModuleItem::build(zn(3), plane())?);
    out.push(ModuleItem::build(zn(4), plane())?);
    for (n, k) in [(8, 4), (12, 4), (12, 6), (18, 9), (30, 5), (36, 6)] {
        out.push(ModuleItem::build(zn(n), ModuleExpr::Quotient(bx(reg()), vec![Lit::Int(k)]))?);
    }
    out.push(ModuleItem::build(zn(12), ModuleExpr::Localize(bx(reg()), vec![Lit::Int(1), Lit::Int(3), Lit::Int(9)]))?);
    let local_plane = RingExpr::Idealize(bx(zn(2)), bx(plane()));
    out.push(ModuleItem::build(local_plane.clone(), reg())?);
    out.push(ModuleItem::build(RingExpr::Idealize(bx(zn(2)), bx(reg())), reg())?);
    out.push(ModuleItem::build(RingExpr::Idealize(bx(zn(4)), bx(reg())), reg())?);
    out.push(ModuleItem::build(RingExpr::Product(bx(local_plane), bx(zn(2))), reg())?);
    for ds in [vec![2, 2], vec![4], vec![2, 4], vec![6], vec![12], vec![3, 3]] {
        out.push(ModuleItem::build(RingExpr::Integers, ModuleExpr::Group(ds))?);
    }
    Ok(out)
}

/// Projections onto every quotient plus scalar endomorphisms.
fn homs_for(modules: &[ModuleItem], limit: usize) -> Result<Vec<HomItem>> {
    let mut out = Vec::new();
    for (i, item) in modules.iter().enumerate() {
        let m = &item.module;
        if m.size() > limit {
            continue;
        }
        for k in m.submodules()? {
            if !k.is_proper() {
                continue;
            }
            let q = FiniteModule::quotient(m, k)?;
            out.push(HomItem {
                source: i,
                label: format!("projection onto M/<{}>", m.render_list(k.generators())),
                hom: ModuleHom::projection(&q).expect("quotient carries its projection"),
            });
        }
        for r in m.scalars().elements() {
            out.push(HomItem {
                source: i,
                label: format!("multiplication by {}", m.scalars().name(r)),
                hom: ModuleHom::scalar(m, r)?,
            });
        }
    }
    Ok(out)
}

/// `{1}`, the units, powers of each element, and complements of primes.
fn denominator_sets(m: &FiniteModule) -> Result<Vec<Vec<RingElem>>> {
    let r = m.scalars();
    let mut sets: Vec<ElemSet> = Vec::new();
    let mut push = |s: ElemSet| {
        if !sets.contains(&s) {
            sets.push(s);
        }
    };
    push(ElemSet::from_indices(r.size(), [r.one()]));
    push(r.units().clone());
    for x in r.elements() {
        let mut s = ElemSet::from_indices(r.size(), [r.one()]);
        let mut p = x;
        while !s.contains(p) {
            s.insert(p);
            p = r.mul(p, x);
        }
        push(s);
    }
    for i in r.ideals()? {
        if i.is_proper() && r.classify_ideal(i)?.prime {
            push(ElemSet::from_indices(r.size(), r.elements().filter(|&x| !i.contains(x))));
        }
    }
    Ok(sets.into_iter().map(|s| s.iter().collect()).collect())
}

fn localizations_for(modules: &[ModuleItem], limit: usize) -> Result<Vec<LocalItem>> {
    let mut out = Vec::new();
    for (i, item) in modules.iter().enumerate() {
        let m = &item.module;
        if m.base().is_integers() || m.size() > limit || m.scalars().size() > limit {
            continue;
        }
        for s in denominator_sets(m)? {
            if let Ok(localization) = localize(m, &s) {
                out.push(LocalItem {
                    source: i,
                    denominators: s,
                    localization,
                });
            }
        }
    }
    Ok(out)
}

fn idealizations_for(modules: &[ModuleItem], limit: usize) -> Result<Vec<IdealizationItem>> {
    let mut out = Vec::new();
    for (i, item) in modules.iter().enumerate() {
        let m = &item.module;
        if m.base().is_integers() || m.size() * m.scalars().size() > limit {
            continue;
        }
        out.push(IdealizationItem {
            source: i,
            idealization: idealize(m)?,
        });
    }
    Ok(out)
}

fn product_pairs() -> Result<Vec<ProductItem>> {
    let mut out = Vec::new();
    let specs: [(RingExpr, ModuleExpr, RingExpr, ModuleExpr); 6] = [
        (zn(4), reg(), zn(2), reg()),
        (zn(2), reg(), zn(3), reg()),
        (zn(8), reg(), zn(3), reg()),
        (zn(9), reg(), zn(4), reg()),
        (zn(12), reg(), zn(2), reg()),
        (zn(2), ModuleExpr::Sum(bx(reg()), bx(reg())), zn(4), reg()),
    ];
    for (r1, m1, r2, m2) in specs {
        let ring = RingExpr::Product(bx(r1.clone()), bx(r2.clone()));
        let expr = ModuleExpr::Product(bx(m1.clone()), bx(m2.clone()));
        out.push(ProductItem {
            first: ModuleItem::build(r1, m1)?,
            second: ModuleItem::build(r2, m2)?,
            product: ModuleItem::build(ring, expr)?,
        });
    }
    Ok(out)
}

/// Random sublattices of `Z^2` with entries in `[-32, 32]`, fixed by `seed`.
fn sampled_lattices(seed: u64, count: usize) -> Result<Vec<IntLattice>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let gens: usize = rng.gen_range(0..=3);
        let rows: Vec<Vec<i128>> = (0..gens)
            .map(|_| (0..2).map(|_| rng.gen_range(-32i128..=32)).collect())
            .collect();
        out.push(IntLattice::new(&rows, 2)?);
    }
    Ok(out)
}

fn prime_power_lattices() -> Result<Vec<IntLattice>> {
    let mut out = Vec::new();
    for p in [2i128, 3, 5] {
        for n in 1..=5u32 {
            out.push(IntLattice::new(&[vec![p.pow(n), 0]], 2)?);
        }
    }
    out.push(IntLattice::new(&[vec![2, 0], vec![0, 1]], 2)?);
    out.push(IntLattice::new(&[vec![2, 0], vec![0, 3]], 2)?);
    out.push(IntLattice::zero(2)?);
    Ok(out)
}

impl Corpus {
    pub fn named(name: &str, seed: u64) -> Result<Corpus> {
        let mut c = Corpus {
            name: name.to_string(),
            seed,
            ..Default::default()
        };
        match name {
            "small-finite" => {
                c.modules = small_finite_modules()?;
                c.homs = homs_for(&c.modules, 16)?;
                c.localizations = localizations_for(&c.modules, 16)?;
                c.idealizations = idealizations_for(&c.modules, 64)?;
                c.products = product_pairs()?;
                c.covering_modules = (0..c.modules.len())
                    .filter(|&i| c.modules[i].module.submodules().is_ok_and(|s| s.len() <= 12))
                    .collect();
                c.int_ideals = (0..=100).filter(|&n| n != 1).collect();
                c.lattices = prime_power_lattices()?;
                c.lattices.extend(sampled_lattices(seed, 24)?);
                c.fixtures = true;
            }
            "zn-60" => c.modules = regular_range(2, 60)?,
            "zn-30" => c.modules = regular_range(2, 30)?,
            "coverings" => {
                for n in [12, 30, 36] {
                    c.modules.push(ModuleItem::build(zn(n), reg())?);
                }
                c.covering_modules = vec![0, 1, 2];
            }
            "z-world" => {
                c.int_ideals = (0..=1000).filter(|&n| n != 1).collect();
                c.lattices = prime_power_lattices()?;
                c.lattices.extend(sampled_lattices(seed, 200)?);
                c.fixtures = true;
            }
            other => return Err(Error::UnknownCorpus(other.to_string())),
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_build() {
        let c = Corpus::named("small-finite", 7).unwrap();
        assert!(c.modules.len() > 40);
        assert!(!c.homs.is_empty() && !c.localizations.is_empty());
        assert!(!c.idealizations.is_empty() && !c.products.is_empty());
        assert!(!c.covering_modules.is_empty());
        assert!(Corpus::named("nope", 0).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(sampled_lattices(3, 10).unwrap(), sampled_lattices(3, 10).unwrap());
        assert_ne!(sampled_lattices(3, 10).unwrap(), sampled_lattices(4, 10).unwrap());
    }
}
