//! Ring and module expressions: the construction language shared by the
//! instance-spec parser and the corpus builders. `Display` prints the exact
//! text the parser accepts, so every built instance has a reproducer.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite_module::{localize, FiniteModule, ModElem};
use crate::finite_ring::{FiniteRing, RingElem, Structure};
use crate::integer_module::{IntLattice, Vector};

/// An element literal, matched against element names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lit {
    Int(i128),
    Tuple(Vec<Lit>),
    /// Quoted name such as `"1/3"`.
    Name(String),
}

impl Lit {
    /// The element name this literal denotes.
    pub fn name_text(&self) -> String {
        match self {
            Lit::Int(v) => v.to_string(),
            Lit::Tuple(xs) => format!("({})", xs.iter().map(Lit::name_text).collect::<Vec<_>>().join(",")),
            Lit::Name(s) => s.clone(),
        }
    }

    /// Reads a literal from an element name, quoting anything that is not a
    /// plain integer or tuple of integers.
    pub fn from_name(name: &str) -> Lit {
        fn parse(s: &str) -> Option<Lit> {
            if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
                let mut parts = Vec::new();
                let (mut depth, mut start) = (0, 0);
                for (i, c) in inner.char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        ',' if depth == 0 => {
                            parts.push(parse(&inner[start..i])?);
                            start = i + 1;
                        }
                        _ => {}
                    }
                }
                parts.push(parse(&inner[start..])?);
                Some(Lit::Tuple(parts))
            } else {
                s.parse().ok().map(Lit::Int)
            }
        }
        parse(name).unwrap_or_else(|| Lit::Name(name.to_string()))
    }

    pub fn to_vector(&self, k: usize) -> Result<Vector> {
        let v = match self {
            Lit::Int(x) => vec![*x],
            Lit::Tuple(xs) => xs
                .iter()
                .map(|x| match x {
                    Lit::Int(v) => Ok(*v),
                    _ => Err(Error::UnknownElement(self.to_string())),
                })
                .collect::<Result<_>>()?,
            Lit::Name(_) => return Err(Error::UnknownElement(self.to_string())),
        };
        if v.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: v.len(),
            });
        }
        Ok(v)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lit::Name(s) => write!(f, "\"{s}\""),
            Lit::Tuple(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Lit::Int(v) => write!(f, "{v}"),
        }
    }
}

pub fn render_lits(xs: &[Lit]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zn(i64),
    Integers,
    Product(Box<RingExpr>, Box<RingExpr>),
    Quotient(Box<RingExpr>, Vec<Lit>),
    Idealize(Box<RingExpr>, Box<ModuleExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    Regular,
    /// Direct sum over the common base.
    Sum(Box<ModuleExpr>, Box<ModuleExpr>),
    /// Componentwise product over a product ring.
    Product(Box<ModuleExpr>, Box<ModuleExpr>),
    Quotient(Box<ModuleExpr>, Vec<Lit>),
    /// Localization at the listed ring elements, which must be closed.
    Localize(Box<ModuleExpr>, Vec<Lit>),
    Group(Vec<u64>),
    IntLattice(usize),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "zn {n}"),
            RingExpr::Integers => write!(f, "Z"),
            RingExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            RingExpr::Quotient(r, g) => write!(f, "quotient({r}, {})", render_lits(g)),
            RingExpr::Idealize(r, m) => write!(f, "idealize({r}, {m})"),
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Regular => write!(f, "regular"),
            ModuleExpr::Sum(a, b) => write!(f, "sum({a}, {b})"),
            ModuleExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            ModuleExpr::Quotient(m, g) => write!(f, "quotient({m}, {})", render_lits(g)),
            ModuleExpr::Localize(m, s) => write!(f, "localize({m}, {})", render_lits(s)),
            ModuleExpr::Group(ds) => {
                write!(f, "group")?;
                for d in ds {
                    write!(f, " {d}")?;
                }
                Ok(())
            }
            ModuleExpr::IntLattice(k) => write!(f, "intlattice {k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Scalars {
    Finite(Arc<FiniteRing>),
    Integers,
}

#[derive(Clone, Debug)]
pub enum BuiltModule {
    Finite(Arc<FiniteModule>),
    /// `Z^k`; submodules are [`IntLattice`] values.
    Lattice(usize),
}

pub fn ring_elem(r: &FiniteRing, lit: &Lit) -> Result<RingElem> {
    let name = lit.name_text();
    r.names()
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| Error::UnknownElement(lit.to_string()))
}

pub fn module_elem(m: &FiniteModule, lit: &Lit) -> Result<ModElem> {
    let name = lit.name_text();
    m.names()
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| Error::UnknownElement(lit.to_string()))
}

pub fn lattice_from_lits(k: usize, lits: &[Lit]) -> Result<IntLattice> {
    let gens = lits.iter().map(|l| l.to_vector(k)).collect::<Result<Vec<_>>>()?;
    IntLattice::new(&gens, k)
}

pub fn build_ring_expr(e: &RingExpr) -> Result<Scalars> {
    let finite = |e: &RingExpr| match build_ring_expr(e)? {
        Scalars::Finite(r) => Ok(r),
        Scalars::Integers => Err(Error::IntegerBase),
    };
    Ok(match e {
        RingExpr::Zn(n) => Scalars::Finite(FiniteRing::residue(*n)?),
        RingExpr::Integers => Scalars::Integers,
        RingExpr::Product(a, b) => Scalars::Finite(FiniteRing::product(&finite(a)?, &finite(b)?)?),
        RingExpr::Quotient(r, gens) => {
            let r = finite(r)?;
            let gens = gens.iter().map(|g| ring_elem(&r, g)).collect::<Result<Vec<_>>>()?;
            Scalars::Finite(FiniteRing::quotient(&r, &r.ideal_span(&gens)?)?)
        }
        RingExpr::Idealize(r, m) => {
            let base = build_ring_expr(r)?;
            match build_module_expr(&base, m)? {
                BuiltModule::Finite(m) => Scalars::Finite(crate::finite_module::idealize(&m)?.ring),
                BuiltModule::Lattice(_) => return Err(Error::IntegerBase),
            }
        }
    })
}

pub fn build_module_expr(ring: &Scalars, e: &ModuleExpr) -> Result<BuiltModule> {
    let finite = |ring: &Scalars, e: &ModuleExpr| match build_module_expr(ring, e)? {
        BuiltModule::Finite(m) => Ok(m),
        BuiltModule::Lattice(_) => Err(Error::Unsupported(format!("{e} as a finite module"))),
    };
    Ok(match (ring, e) {
        (Scalars::Integers, ModuleExpr::Regular) => BuiltModule::Lattice(1),
        (Scalars::Integers, ModuleExpr::IntLattice(k)) => {
            IntLattice::zero(*k)?;
            BuiltModule::Lattice(*k)
        }
        (Scalars::Integers, ModuleExpr::Group(ds)) => BuiltModule::Finite(FiniteModule::abelian_group(ds)?),
        (Scalars::Finite(r), ModuleExpr::Regular) => BuiltModule::Finite(FiniteModule::regular(r)),
        (Scalars::Finite(_), ModuleExpr::Group(_) | ModuleExpr::IntLattice(_)) => {
            return Err(Error::Unsupported(format!("{e} needs ring Z")))
        }
        (_, ModuleExpr::Sum(a, b)) => {
            BuiltModule::Finite(FiniteModule::direct_sum(&finite(ring, a)?, &finite(ring, b)?)?)
        }
        (Scalars::Finite(r), ModuleExpr::Product(a, b)) => match r.structure() {
            Structure::Product(r1, r2) => {
                let m1 = finite(&Scalars::Finite(r1.clone()), a)?;
                let m2 = finite(&Scalars::Finite(r2.clone()), b)?;
                BuiltModule::Finite(FiniteModule::product(&m1, &m2)?)
            }
            _ => return Err(Error::Unsupported("product module needs a product ring".into())),
        },
        (Scalars::Integers, ModuleExpr::Product(..)) => {
            return Err(Error::Unsupported("product module needs a product ring".into()))
        }
        (_, ModuleExpr::Quotient(m, gens)) => {
            let m = finite(ring, m)?;
            let gens = gens.iter().map(|g| module_elem(&m, g)).collect::<Result<Vec<_>>>()?;
            let n = m.span(&gens)?;
            if !n.is_proper() {
                return Err(Error::ImproperQuotient);
            }
            BuiltModule::Finite(FiniteModule::quotient(&m, &n)?)
        }
        (_, ModuleExpr::Localize(m, s)) => {
            let m = finite(ring, m)?;
            let s = s.iter().map(|x| ring_elem(m.scalars(), x)).collect::<Result<Vec<_>>>()?;
            BuiltModule::Finite(localize(&m, &s)?.module)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip_through_names() {
        for name in ["4", "(1,0)", "((1,2),3)", "1/3", "(0,a)"] {
            assert_eq!(Lit::from_name(name).name_text(), name);
        }
        assert_eq!(Lit::from_name("1/3").to_string(), "\"1/3\"");
    }

    #[test]
    fn builds_products_and_quotients() {
        let r = RingExpr::Product(Box::new(RingExpr::Zn(2)), Box::new(RingExpr::Zn(3)));
        assert_eq!(r.to_string(), "product(zn 2, zn 3)");
        let s = build_ring_expr(&r).unwrap();
        let m = ModuleExpr::Product(Box::new(ModuleExpr::Regular), Box::new(ModuleExpr::Regular));
        let BuiltModule::Finite(m) = build_module_expr(&s, &m).unwrap() else { panic!() };
        assert_eq!(m.size(), 6);
        let q = ModuleExpr::Quotient(Box::new(ModuleExpr::Regular), vec![Lit::Int(4)]);
        let BuiltModule::Finite(q) = build_module_expr(&build_ring_expr(&RingExpr::Zn(12)).unwrap(), &q).unwrap()
        else {
            panic!()
        };
        assert_eq!(q.size(), 4);
    }

    #[test]
    fn idealization_of_the_plane() {
        let e = RingExpr::Idealize(
            Box::new(RingExpr::Zn(2)),
            Box::new(ModuleExpr::Sum(Box::new(ModuleExpr::Regular), Box::new(ModuleExpr::Regular))),
        );
        let Scalars::Finite(r) = build_ring_expr(&e).unwrap() else { panic!() };
        assert_eq!(r.size(), 8);
        // ideals: 0, three lines, the maximal ideal, R
        assert_eq!(r.ideals().unwrap().len(), 6);
    }
}
