//! Line-oriented instance specs.
//!
//! ```text
//! version 1
//! ring zn 12
//! module regular
//! sub N = [4]
//! ideal I = [2, 3]
//! ```
//!
//! `#` starts a comment. Element literals are integers, tuples of literals,
//! or quoted element names.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{
    build_module_expr, build_ring_expr, lattice_from_lits, module_elem, ring_elem, BuiltModule, Lit, ModuleExpr,
    RingExpr, Scalars,
};
use crate::finite_module::{FiniteModule, Submodule};
use crate::finite_ring::{FiniteRing, Ideal};
use crate::integer_module::{IntIdeal, IntLattice};

pub const SPEC_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(i128),
    Str(String),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if "()[],=".contains(c) {
            out.push(Token { tok: Tok::Punct(c), column });
            i += 1;
        } else if c == '"' {
            let end = chars[i + 1..]
                .iter()
                .position(|&d| d == '"')
                .ok_or_else(|| err(line_no, column, "unterminated string"))?;
            out.push(Token {
                tok: Tok::Str(chars[i + 1..i + 1 + end].iter().collect()),
                column,
            });
            i += end + 2;
        } else if c.is_ascii_digit() || c == '-' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| err(line_no, column, format!("bad integer {text}")))?;
            out.push(Token { tok: Tok::Int(v), column });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Word(chars[start..i].iter().collect()),
                column,
            });
        } else {
            return Err(err(line_no, column, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    /// Column just past the last character, for end-of-line errors.
    end: usize,
}

impl Cursor<'_> {
    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.column)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(err(self.line, self.column(), message))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Punct(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected '{c}'")),
        }
    }

    fn word(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.fail("expected a keyword or name"),
        }
    }

    fn int_at_least(&mut self, min: i128, what: &str) -> Result<i128> {
        match self.peek() {
            Some(Tok::Int(v)) if *v >= min => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Int(v)) => self.fail(format!("{what} must be at least {min}, got {v}")),
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.fail("unexpected trailing input");
        }
        Ok(())
    }

    fn lit(&mut self) -> Result<Lit> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(Lit::Int(v))
            }
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(Lit::Name(s))
            }
            Some(Tok::Punct('(')) => {
                self.pos += 1;
                let mut xs = vec![self.lit()?];
                while self.peek() == Some(&Tok::Punct(',')) {
                    self.pos += 1;
                    xs.push(self.lit()?);
                }
                self.punct(')')?;
                Ok(Lit::Tuple(xs))
            }
            _ => self.fail("expected an element literal"),
        }
    }

    fn list(&mut self) -> Result<Vec<(Lit, usize)>> {
        self.punct('[')?;
        let mut xs = Vec::new();
        if self.peek() == Some(&Tok::Punct(']')) {
            self.pos += 1;
            return Ok(xs);
        }
        loop {
            let col = self.column();
            xs.push((self.lit()?, col));
            match self.next() {
                Some(Tok::Punct(',')) => {}
                Some(Tok::Punct(']')) => return Ok(xs),
                _ => {
                    self.pos -= 1;
                    return self.fail("expected ',' or ']'");
                }
            }
        }
    }

    fn two<A, B>(
        &mut self,
        a: impl FnOnce(&mut Self) -> Result<A>,
        b: impl FnOnce(&mut Self) -> Result<B>,
    ) -> Result<(A, B)> {
        self.punct('(')?;
        let x = a(self)?;
        self.punct(',')?;
        let y = b(self)?;
        self.punct(')')?;
        Ok((x, y))
    }

    fn ring(&mut self) -> Result<RingExpr> {
        let col = self.column();
        Ok(match self.word()?.as_str() {
            "zn" => RingExpr::Zn(i64::try_from(self.int_at_least(2, "modulus")?).unwrap_or(i64::MAX)),
            "Z" => RingExpr::Integers,
            "product" => {
                let (a, b) = self.two(Self::ring, Self::ring)?;
                RingExpr::Product(Box::new(a), Box::new(b))
            }
            "quotient" => {
                let (r, gens) = self.two(Self::ring, Self::list)?;
                RingExpr::Quotient(Box::new(r), gens.into_iter().map(|(l, _)| l).collect())
            }
            "idealize" => {
                let (r, m) = self.two(Self::ring, Self::module)?;
                RingExpr::Idealize(Box::new(r), Box::new(m))
            }
            w => return Err(err(self.line, col, format!("unknown ring constructor {w}"))),
        })
    }

    fn module(&mut self) -> Result<ModuleExpr> {
        let col = self.column();
        Ok(match self.word()?.as_str() {
            "regular" => ModuleExpr::Regular,
            "intlattice" => ModuleExpr::IntLattice(self.int_at_least(1, "rank")? as usize),
            "group" => {
                let mut ds = vec![self.int_at_least(1, "invariant")? as u64];
                while let Some(Tok::Int(_)) = self.peek() {
                    ds.push(self.int_at_least(1, "invariant")? as u64);
                }
                ModuleExpr::Group(ds)
            }
            "sum" => {
                let (a, b) = self.two(Self::module, Self::module)?;
                ModuleExpr::Sum(Box::new(a), Box::new(b))
            }
            "product" => {
                let (a, b) = self.two(Self::module, Self::module)?;
                ModuleExpr::Product(Box::new(a), Box::new(b))
            }
            "quotient" => {
                let (m, gens) = self.two(Self::module, Self::list)?;
                ModuleExpr::Quotient(Box::new(m), gens.into_iter().map(|(l, _)| l).collect())
            }
            "localize" => {
                let (m, s) = self.two(Self::module, Self::list)?;
                ModuleExpr::Localize(Box::new(m), s.into_iter().map(|(l, _)| l).collect())
            }
            w => return Err(err(self.line, col, format!("unknown module constructor {w}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetKind {
    Sub,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTarget {
    pub name: String,
    pub kind: TargetKind,
    pub gens: Vec<Lit>,
    line: usize,
    columns: Vec<usize>,
}

/// A parsed, not yet evaluated, spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub version: u32,
    pub ring: RingExpr,
    pub module: ModuleExpr,
    pub targets: Vec<NamedTarget>,
    ring_line: usize,
    module_line: usize,
}

pub fn parse_spec(text: &str) -> Result<InstanceSpec> {
    let mut version = None;
    let mut ring = None;
    let mut module = None;
    let mut targets: Vec<NamedTarget> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            line,
            toks: &toks,
            pos: 0,
            end: raw.chars().count() + 1,
        };
        let col = c.column();
        match c.word()?.as_str() {
            "version" => {
                if version.is_some() || ring.is_some() {
                    return Err(err(line, col, "version must be the first line"));
                }
                let v = c.int_at_least(1, "version")?;
                if v != SPEC_VERSION as i128 {
                    return Err(err(line, toks[1].column, format!("unsupported version {v}")));
                }
                version = Some(SPEC_VERSION);
            }
            "ring" => {
                if ring.is_some() {
                    return Err(err(line, col, "ring given twice"));
                }
                ring = Some((c.ring()?, line));
            }
            "module" => {
                if ring.is_none() {
                    return Err(err(line, col, "module before ring"));
                }
                if module.is_some() {
                    return Err(err(line, col, "module given twice"));
                }
                module = Some((c.module()?, line));
            }
            kw @ ("sub" | "ideal") => {
                if module.is_none() {
                    return Err(err(line, col, format!("{kw} before module")));
                }
                let name_col = c.column();
                let name = c.word()?;
                if targets.iter().any(|t| t.name == name) {
                    return Err(err(line, name_col, format!("{name} defined twice")));
                }
                c.punct('=')?;
                let (gens, columns) = c.list()?.into_iter().unzip();
                targets.push(NamedTarget {
                    name,
                    kind: if kw == "sub" { TargetKind::Sub } else { TargetKind::Ideal },
                    gens,
                    line,
                    columns,
                });
            }
            w => return Err(err(line, col, format!("unknown statement {w}"))),
        }
        c.done()?;
    }
    let end = text.lines().count().max(1);
    let (ring, ring_line) = ring.ok_or_else(|| err(end, 1, "missing ring line"))?;
    let (module, module_line) = module.ok_or_else(|| err(end, 1, "missing module line"))?;
    Ok(InstanceSpec {
        version: version.unwrap_or(SPEC_VERSION),
        ring,
        module,
        targets,
        ring_line,
        module_line,
    })
}

/// A spec with every construction built and every name resolved.
#[derive(Clone, Debug)]
pub enum Instance {
    Finite {
        module: Arc<FiniteModule>,
        subs: Vec<(String, Submodule)>,
        ideals: Vec<(String, Ideal)>,
    },
    /// `Z^k` over the integers.
    Lattice {
        rank: usize,
        subs: Vec<(String, IntLattice)>,
        ideals: Vec<(String, IntIdeal)>,
    },
}

fn located(t: &NamedTarget, k: usize, e: Error) -> Error {
    if e.is_cap() {
        return e;
    }
    err(t.line, t.columns.get(k).copied().unwrap_or(1), e.to_string())
}

fn int_ideal(t: &NamedTarget) -> Result<IntIdeal> {
    let mut g: u64 = 0;
    for (k, l) in t.gens.iter().enumerate() {
        match l {
            Lit::Int(v) => g = num_integer::gcd(g, v.unsigned_abs().try_into().map_err(|_| located(t, k, Error::Overflow))?),
            _ => return Err(located(t, k, Error::UnknownElement(l.to_string()))),
        }
    }
    Ok(IntIdeal(g))
}

fn resolve_finite_ideal(r: &FiniteRing, t: &NamedTarget) -> Result<Ideal> {
    let gens = t
        .gens
        .iter()
        .enumerate()
        .map(|(k, l)| ring_elem(r, l).map_err(|e| located(t, k, e)))
        .collect::<Result<Vec<_>>>()?;
    r.ideal_span(&gens)
}

impl InstanceSpec {
    pub fn build(&self) -> Result<Instance> {
        let scalars = build_ring_expr(&self.ring).map_err(|e| located_line(self.ring_line, e))?;
        let built = build_module_expr(&scalars, &self.module).map_err(|e| located_line(self.module_line, e))?;
        match built {
            BuiltModule::Finite(m) => {
                let mut subs = Vec::new();
                let mut ideals = Vec::new();
                for t in &self.targets {
                    match t.kind {
                        TargetKind::Sub => {
                            let gens = t
                                .gens
                                .iter()
                                .enumerate()
                                .map(|(k, l)| module_elem(&m, l).map_err(|e| located(t, k, e)))
                                .collect::<Result<Vec<_>>>()?;
                            subs.push((t.name.clone(), m.span(&gens)?));
                        }
                        TargetKind::Ideal => match &scalars {
                            Scalars::Finite(r) => ideals.push((t.name.clone(), resolve_finite_ideal(r, t)?)),
                            Scalars::Integers => {
                                return Err(err(t.line, 1, "ideals of Z are only supported with a lattice module"))
                            }
                        },
                    }
                }
                Ok(Instance::Finite { module: m, subs, ideals })
            }
            BuiltModule::Lattice(rank) => {
                let mut subs = Vec::new();
                let mut ideals = Vec::new();
                for t in &self.targets {
                    match t.kind {
                        TargetKind::Sub => {
                            for (k, l) in t.gens.iter().enumerate() {
                                l.to_vector(rank).map_err(|e| located(t, k, e))?;
                            }
                            let lat = lattice_from_lits(rank, &t.gens).map_err(|e| located(t, 0, e))?;
                            subs.push((t.name.clone(), lat));
                        }
                        TargetKind::Ideal => ideals.push((t.name.clone(), int_ideal(t)?)),
                    }
                }
                Ok(Instance::Lattice { rank, subs, ideals })
            }
        }
    }
}

fn located_line(line: usize, e: Error) -> Error {
    if e.is_cap() {
        return e;
    }
    err(line.max(1), 1, e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_forms() {
        let s = parse_spec("ring zn 12\nmodule regular\nsub N = [4]").unwrap();
        assert_eq!(s.ring, RingExpr::Zn(12));
        assert_eq!(s.targets[0].gens, [Lit::Int(4)]);
        let s = parse_spec("version 1\nring Z\nmodule intlattice 2\nsub N = [(4,0)]\n").unwrap();
        let Instance::Lattice { rank, subs, .. } = s.build().unwrap() else { panic!() };
        assert_eq!(rank, 2);
        assert_eq!(subs[0].1.to_string(), IntLattice::new(&[vec![4, 0]], 2).unwrap().to_string());
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_spec("ring zn -1\nmodule regular").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 1,
                column: 9,
                message: "modulus must be at least 2, got -1".into()
            }
        );
        let e = parse_spec("ring zn 12\nmodule regular\nsub N = [4, 13]").unwrap().build().unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 13, .. }), "{e}");
        assert!(parse_spec("module regular").is_err());
        assert!(parse_spec("ring zn 4\nmodule regular\nsub N = [1]\nsub N = [2]").is_err());
        assert!(parse_spec("version 2\nring zn 4\nmodule regular").is_err());
    }

    #[test]
    fn display_of_expressions_reparses() {
        let text = "ring idealize(zn 2, sum(regular, regular))\nmodule quotient(regular, [\"(1,(0,0))\"])\n";
        let s = parse_spec(text).unwrap();
        let again = parse_spec(&format!("ring {}\nmodule {}\n", s.ring, s.module)).unwrap();
        assert_eq!(s, InstanceSpec { ring_line: 1, module_line: 2, ..again });
    }
}
