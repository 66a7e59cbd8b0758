//! The group and biset specification language.
//!
//! ```text
//! group    = factor { "x" factor } ;
//! factor   = "C" int | "ES" ("+" | "-") "(" int ")" | perm
//!          | "sub" "(" group "," list ")" | "quo" "(" group "," list ")"
//!          | "(" group ")" ;
//! perm     = "perm" "[" cycles { ";" cycles } "]" ;
//! cycles   = { "(" [ int { [","] int } ] ")" } ;
//! biset    = term { "*" term } ;
//! term     = "id" "(" group ")" | "res" "(" group "," list ")" | "ind" "(" group "," list ")"
//!          | "inf" "(" group "," list ")" | "def" "(" group "," list ")"
//!          | "iso" "(" group "," group "," list ")"
//!          | "pair" "(" group "," group "," pairs ")" ;
//! list     = "[" [ int { "," int } ] "]" ;
//! pairs    = "[" [ pair { "," pair } ] "]" ;  pair = int | "(" int "," int ")" ;
//! ```
//!
//! Subgroups are given by generator element indices. A product is
//! left-associative and whitespace is insignificant.

use std::fmt;
use std::sync::Arc;

use genome_core::group::quotient;
use genome_core::{Biset, ExtraspecialKind, Group, GroupMap, Permutation, Subgroup};
use thiserror::Error;

/// A parse or evaluation error at a byte offset of the input.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("at byte {offset}: {message}")]
pub struct SpecError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError { offset, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Times,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Times => f.write_str("`x`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SpecError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'x' => Tok::Times,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                match text[start..i].parse() {
                    Ok(n) => {
                        toks.push((Tok::Int(n), start));
                        continue;
                    }
                    Err(_) => return err(start, "integer literal too large"),
                }
            }
            c if c.is_ascii_alphabetic() => {
                // `x` never occurs inside a keyword, so it always separates
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() && bytes[i] != b'x' {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return err(start, format!("unexpected character `{ch}`"));
            }
        };
        toks.push((tok, start));
        i += 1;
    }
    Ok(toks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Extraspecial {
        plus: bool,
        p: u64,
    },
    /// Generators in disjoint-cycle notation, 1-based points.
    Perm(Vec<Vec<Vec<usize>>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Sub(Box<GroupSpec>, Vec<usize>),
    Quo(Box<GroupSpec>, Vec<usize>),
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    write!(f, "[{}]", items.join(","))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Extraspecial { plus, p } => write!(f, "ES{}({p})", if *plus { '+' } else { '-' }),
            GroupSpec::Perm(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            return "()".to_string();
                        }
                        cycles
                            .iter()
                            .map(|c| format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
                            .collect()
                    })
                    .collect();
                write!(f, "perm[{}]", parts.join("; "))
            }
            GroupSpec::Product(a, b) => match **b {
                GroupSpec::Product(..) => write!(f, "{a} x ({b})"),
                _ => write!(f, "{a} x {b}"),
            },
            GroupSpec::Sub(g, gens) => {
                write!(f, "sub({g}, ")?;
                write_list(f, gens)?;
                f.write_str(")")
            }
            GroupSpec::Quo(g, gens) => {
                write!(f, "quo({g}, ")?;
                write_list(f, gens)?;
                f.write_str(")")
            }
        }
    }
}

impl GroupSpec {
    pub fn eval(&self) -> Result<Group, SpecError> {
        self.eval_at(0)
    }

    fn eval_at(&self, offset: usize) -> Result<Group, SpecError> {
        let wrap = |e: genome_core::Error| SpecError { offset, message: e.to_string() };
        Ok(match self {
            GroupSpec::Cyclic(n) => Group::cyclic(*n).map_err(wrap)?,
            GroupSpec::Extraspecial { plus, p } => {
                let kind = if *plus { ExtraspecialKind::ExponentP } else { ExtraspecialKind::ExponentP2 };
                Group::extraspecial(*p, kind).map_err(wrap)?
            }
            GroupSpec::Perm(gens) => {
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
                let perms = gens
                    .iter()
                    .map(|cycles| Permutation::from_cycles(degree, cycles))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(wrap)?;
                Group::from_permutations(degree, &perms).map_err(wrap)?
            }
            GroupSpec::Product(a, b) => Group::direct_product(&a.eval_at(offset)?, &b.eval_at(offset)?),
            GroupSpec::Sub(g, gens) => {
                let g = g.eval_at(offset)?;
                subgroup(&g, gens, offset)?.to_group(&g)
            }
            GroupSpec::Quo(g, gens) => {
                let g = Arc::new(g.eval_at(offset)?);
                let n = subgroup(&g, gens, offset)?;
                Arc::unwrap_or_clone(quotient(&g, &n).map_err(wrap)?.group)
            }
        })
    }
}

fn subgroup(g: &Group, gens: &[usize], offset: usize) -> Result<Subgroup, SpecError> {
    Subgroup::generated(g, gens).map_err(|e| SpecError { offset, message: e.to_string() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairGen {
    Pair(usize, usize),
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Id(GroupSpec),
    Res(GroupSpec, Vec<usize>),
    Ind(GroupSpec, Vec<usize>),
    Inf(GroupSpec, Vec<usize>),
    Def(GroupSpec, Vec<usize>),
    Iso(GroupSpec, GroupSpec, Vec<usize>),
    Pair(GroupSpec, GroupSpec, Vec<PairGen>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    /// Byte offset of the term in the input.
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisetSpec {
    pub terms: Vec<Term>,
}

/// A biset with specs naming its two groups.
#[derive(Clone, Debug)]
pub struct EvaluatedBiset {
    pub biset: Biset,
    pub left_spec: GroupSpec,
    pub right_spec: GroupSpec,
}

impl Term {
    pub fn eval(&self) -> Result<EvaluatedBiset, SpecError> {
        let at = self.offset;
        let wrap = |e: genome_core::Error| SpecError { offset: at, message: e.to_string() };
        let group = |spec: &GroupSpec| spec.eval_at(at).map(Arc::new);
        let sub = |spec: &GroupSpec, gens: &Vec<usize>| GroupSpec::Sub(Box::new(spec.clone()), gens.clone());
        let quo = |spec: &GroupSpec, gens: &Vec<usize>| GroupSpec::Quo(Box::new(spec.clone()), gens.clone());
        let (biset, left_spec, right_spec) = match &self.kind {
            TermKind::Id(g) => (Biset::identity(group(g)?), g.clone(), g.clone()),
            TermKind::Res(g, h) => {
                let gg = group(g)?;
                (Biset::restriction(&gg, &subgroup(&gg, h, at)?), sub(g, h), g.clone())
            }
            TermKind::Ind(g, h) => {
                let gg = group(g)?;
                (Biset::induction(&gg, &subgroup(&gg, h, at)?), g.clone(), sub(g, h))
            }
            TermKind::Inf(g, n) => {
                let gg = group(g)?;
                (Biset::inflation(&gg, &subgroup(&gg, n, at)?).map_err(wrap)?, g.clone(), quo(g, n))
            }
            TermKind::Def(g, n) => {
                let gg = group(g)?;
                (Biset::deflation(&gg, &subgroup(&gg, n, at)?).map_err(wrap)?, quo(g, n), g.clone())
            }
            TermKind::Iso(g, h, images) => {
                let f = GroupMap::new(group(g)?, group(h)?, images.clone()).map_err(wrap)?;
                (Biset::iso(&f).map_err(wrap)?, h.clone(), g.clone())
            }
            TermKind::Pair(q, p, gens) => {
                let (qq, pp) = (group(q)?, group(p)?);
                let product = Group::direct_product(&qq, &pp);
                let mut seeds = Vec::new();
                for g in gens {
                    let index = match *g {
                        PairGen::Pair(a, b) => {
                            if a >= qq.order() || b >= pp.order() {
                                return err(at, format!("pair ({a}, {b}) out of range"));
                            }
                            a * pp.order() + b
                        }
                        PairGen::Index(i) => i,
                    };
                    seeds.push(index);
                }
                let b = subgroup(&product, &seeds, at)?;
                (Biset::from_subgroup_pair(qq, pp, &b).map_err(wrap)?, q.clone(), p.clone())
            }
        };
        Ok(EvaluatedBiset { biset, left_spec, right_spec })
    }
}

impl BisetSpec {
    /// `t1 * t2 * … * tk`, composed as `((t1 ×_{} t2) ×_{} …) ×_{} tk`.
    pub fn eval(&self) -> Result<EvaluatedBiset, SpecError> {
        let mut acc = self.terms[0].eval()?;
        for term in &self.terms[1..] {
            let next = term.eval()?;
            let biset = acc.biset.compose(&next.biset).map_err(|_| SpecError {
                offset: term.offset,
                message: format!(
                    "cannot compose: left term acts on the right by {} (order {}), this term acts on the left by {} (order {})",
                    acc.right_spec,
                    acc.biset.right().order(),
                    next.left_spec,
                    next.biset.left().order()
                ),
            })?;
            acc = EvaluatedBiset { biset, left_spec: acc.left_spec, right_spec: next.right_spec };
        }
        Ok(acc)
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, SpecError> {
        Ok(Parser { toks: lex(text)?, pos: 0, len: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |&(_, o)| o)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SpecError> {
        let at = self.offset();
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => err(at, format!("expected {want}, found {t}")),
            None => err(at, format!("expected {want}, found end of input")),
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            Some(t) => err(at, format!("expected an integer, found {t}")),
            None => err(at, "expected an integer, found end of input"),
        }
    }

    fn finish(&self) -> Result<(), SpecError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => err(self.offset(), format!("unexpected {t} after the end of the expression")),
        }
    }

    fn group(&mut self) -> Result<GroupSpec, SpecError> {
        let mut g = self.factor()?;
        while self.peek() == Some(&Tok::Times) {
            self.next();
            g = GroupSpec::Product(Box::new(g), Box::new(self.factor()?));
        }
        Ok(g)
    }

    fn factor(&mut self) -> Result<GroupSpec, SpecError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::LParen) => {
                let g = self.group()?;
                self.expect(Tok::RParen)?;
                Ok(g)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "C" => {
                    let n = self.int()?;
                    if n == 0 {
                        return err(at, "cyclic group of order 0");
                    }
                    Ok(GroupSpec::Cyclic(n))
                }
                "ES" => {
                    let sign_at = self.offset();
                    let plus = match self.next() {
                        Some(Tok::Plus) => true,
                        Some(Tok::Minus) => false,
                        _ => return err(sign_at, "expected `+` or `-` after `ES`"),
                    };
                    self.expect(Tok::LParen)?;
                    let p = self.int()? as u64;
                    self.expect(Tok::RParen)?;
                    Ok(GroupSpec::Extraspecial { plus, p })
                }
                "perm" => self.perm(),
                "sub" | "quo" => {
                    self.expect(Tok::LParen)?;
                    let g = self.group()?;
                    self.expect(Tok::Comma)?;
                    let gens = self.list()?;
                    self.expect(Tok::RParen)?;
                    Ok(if name == "sub" {
                        GroupSpec::Sub(Box::new(g), gens)
                    } else {
                        GroupSpec::Quo(Box::new(g), gens)
                    })
                }
                _ => err(at, format!("unknown group constructor `{name}`")),
            },
            Some(t) => err(at, format!("expected a group, found {t}")),
            None => err(at, "expected a group, found end of input"),
        }
    }

    fn perm(&mut self) -> Result<GroupSpec, SpecError> {
        self.expect(Tok::LBracket)?;
        let mut gens = vec![self.cycles()?];
        while self.peek() == Some(&Tok::Semi) {
            self.next();
            gens.push(self.cycles()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(GroupSpec::Perm(gens))
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>, SpecError> {
        let mut cycles = Vec::new();
        while self.peek() == Some(&Tok::LParen) {
            self.next();
            let mut cycle = Vec::new();
            while let Some(Tok::Int(_)) = self.peek() {
                let at = self.offset();
                let n = self.int()?;
                if n == 0 {
                    return err(at, "permutation points start at 1");
                }
                cycle.push(n);
                if self.peek() == Some(&Tok::Comma) {
                    self.next();
                }
            }
            self.expect(Tok::RParen)?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Ok(cycles)
    }

    fn list(&mut self) -> Result<Vec<usize>, SpecError> {
        self.expect(Tok::LBracket)?;
        let mut xs = Vec::new();
        if self.peek() != Some(&Tok::RBracket) {
            xs.push(self.int()?);
            while self.peek() == Some(&Tok::Comma) {
                self.next();
                xs.push(self.int()?);
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(xs)
    }

    fn pair_gen(&mut self) -> Result<PairGen, SpecError> {
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            let a = self.int()?;
            self.expect(Tok::Comma)?;
            let b = self.int()?;
            self.expect(Tok::RParen)?;
            Ok(PairGen::Pair(a, b))
        } else {
            Ok(PairGen::Index(self.int()?))
        }
    }

    fn pairs(&mut self) -> Result<Vec<PairGen>, SpecError> {
        self.expect(Tok::LBracket)?;
        let mut xs = Vec::new();
        if self.peek() != Some(&Tok::RBracket) {
            xs.push(self.pair_gen()?);
            while self.peek() == Some(&Tok::Comma) {
                self.next();
                xs.push(self.pair_gen()?);
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(xs)
    }

    fn term(&mut self) -> Result<Term, SpecError> {
        let at = self.offset();
        let name = match self.next() {
            Some(Tok::Ident(name)) => name,
            Some(t) => return err(at, format!("expected a biset term, found {t}")),
            None => return err(at, "expected a biset term, found end of input"),
        };
        self.expect(Tok::LParen)?;
        let g = self.group()?;
        let kind = match name.as_str() {
            "id" => TermKind::Id(g),
            "res" | "ind" | "inf" | "def" => {
                self.expect(Tok::Comma)?;
                let h = self.list()?;
                match name.as_str() {
                    "res" => TermKind::Res(g, h),
                    "ind" => TermKind::Ind(g, h),
                    "inf" => TermKind::Inf(g, h),
                    _ => TermKind::Def(g, h),
                }
            }
            "iso" => {
                self.expect(Tok::Comma)?;
                let h = self.group()?;
                self.expect(Tok::Comma)?;
                TermKind::Iso(g, h, self.list()?)
            }
            "pair" => {
                self.expect(Tok::Comma)?;
                let p = self.group()?;
                self.expect(Tok::Comma)?;
                TermKind::Pair(g, p, self.pairs()?)
            }
            _ => return err(at, format!("unknown biset term `{name}`")),
        };
        self.expect(Tok::RParen)?;
        Ok(Term { kind, offset: at })
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser::new(text)?;
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

pub fn parse_biset_spec(text: &str) -> Result<BisetSpec, SpecError> {
    let mut p = Parser::new(text)?;
    let mut terms = vec![p.term()?];
    while p.peek() == Some(&Tok::Star) {
        p.next();
        terms.push(p.term()?);
    }
    p.finish()?;
    Ok(BisetSpec { terms })
}
