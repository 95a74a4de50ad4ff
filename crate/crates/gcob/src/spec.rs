//! The group-spec grammar and builder.
//!
//! ```text
//! spec := term (" x " term)*
//! term := atom ("^" int)?
//! atom := "Z" int | "D" evenint | "Dic" int | "Q8" | "S" int | "A" int | "file:" path
//! ```
//!
//! `^k` desugars to a k-fold direct product. The dihedral parameter is the
//! group order (`D8` has order 8); the dicyclic parameter is `n` with order
//! `4n` (`Dic2` is Q8).

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_BOUND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupAtom {
    Cyclic(u64),
    /// Parameter is the group order, which must be even.
    Dihedral(u64),
    /// Parameter is `n`; the group has order `4n`.
    Dicyclic(u64),
    Symmetric(u64),
    Alternating(u64),
    File(PathBuf),
}

impl GroupAtom {
    fn display_name(&self) -> String {
        match self {
            GroupAtom::Cyclic(n) => format!("Z{n}"),
            GroupAtom::Dihedral(n) => format!("D{n}"),
            GroupAtom::Dicyclic(2) => "Q8".into(),
            GroupAtom::Dicyclic(n) => format!("Dic{n}"),
            GroupAtom::Symmetric(n) => format!("S{n}"),
            GroupAtom::Alternating(n) => format!("A{n}"),
            GroupAtom::File(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecTerm {
    pub atom: GroupAtom,
    pub exponent: u32,
}

/// Parsed form of a group-spec string: a direct product of atom powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub terms: Vec<SpecTerm>,
    pub source: String,
}

impl GroupSpec {
    /// Canonical display name, e.g. `"D8 x Z3"` or `"Z2^3"`.
    pub fn name(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let base = t.atom.display_name();
                if t.exponent > 1 {
                    format!("{base}^{}", t.exponent)
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// Parses a spec string into its AST. Rejects everything outside the grammar
/// with a byte position.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut terms = Vec::new();
    let mut expect_term = true;
    let mut saw_any = false;
    let mut rest = text;
    let mut pos = 0;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        let token_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..token_len];
        if expect_term {
            terms.push(parse_term(token, pos)?);
            saw_any = true;
        } else if token != "x" {
            return Err(Error::Parse {
                pos,
                msg: format!("expected 'x' between terms, found {token:?}"),
            });
        }
        expect_term = !expect_term;
        rest = &rest[token_len..];
        pos += token_len;
    }
    if !saw_any {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty spec".into(),
        });
    }
    if expect_term {
        return Err(Error::Parse {
            pos,
            msg: "dangling 'x' at end of spec".into(),
        });
    }
    Ok(GroupSpec {
        terms,
        source: text.trim().to_string(),
    })
}

fn parse_term(token: &str, pos: usize) -> Result<SpecTerm> {
    let (atom_str, exponent) = match token.rsplit_once('^') {
        Some((head, exp)) if exp.bytes().all(|b| b.is_ascii_digit()) && !exp.is_empty() => {
            let e: u32 = exp.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("exponent {exp:?} out of range"),
            })?;
            if e == 0 {
                return Err(Error::Parse {
                    pos,
                    msg: "exponent must be >= 1".into(),
                });
            }
            (head, e)
        }
        _ => (token, 1),
    };
    let atom = parse_atom(atom_str, pos)?;
    Ok(SpecTerm { atom, exponent })
}

fn parse_atom(s: &str, pos: usize) -> Result<GroupAtom> {
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err(Error::Parse {
                pos,
                msg: "file atom needs a path".into(),
            });
        }
        return Ok(GroupAtom::File(PathBuf::from(path)));
    }
    if s == "Q8" {
        return Ok(GroupAtom::Dicyclic(2));
    }
    let (prefix, rest) = if let Some(r) = s.strip_prefix("Dic") {
        ("Dic", r)
    } else if let Some(r) = s.strip_prefix('Z') {
        ("Z", r)
    } else if let Some(r) = s.strip_prefix('D') {
        ("D", r)
    } else if let Some(r) = s.strip_prefix('S') {
        ("S", r)
    } else if let Some(r) = s.strip_prefix('A') {
        ("A", r)
    } else {
        return Err(Error::Parse {
            pos,
            msg: format!("unknown atom {s:?}"),
        });
    };
    let n: u64 = if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            pos,
            msg: format!("invalid numeric parameter in atom {s:?}"),
        });
    } else {
        rest.parse().map_err(|_| Error::Parse {
            pos,
            msg: format!("numeric parameter in {s:?} out of range"),
        })?
    };
    if n == 0 {
        return Err(Error::Parse {
            pos,
            msg: format!("parameter in {s:?} must be >= 1"),
        });
    }
    match prefix {
        "Z" => Ok(GroupAtom::Cyclic(n)),
        "D" => {
            if !n.is_multiple_of(2) {
                Err(Error::Parse {
                    pos,
                    msg: format!("dihedral order must be even, got D{n}"),
                })
            } else {
                Ok(GroupAtom::Dihedral(n))
            }
        }
        "Dic" => Ok(GroupAtom::Dicyclic(n)),
        "S" => Ok(GroupAtom::Symmetric(n)),
        "A" => Ok(GroupAtom::Alternating(n)),
        _ => unreachable!(),
    }
}

/// Builds the group described by a spec, enforcing the default order bound.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with_bound(spec, DEFAULT_ORDER_BOUND)
}

pub fn build_group_with_bound(spec: &GroupSpec, bound: u64) -> Result<FiniteGroup> {
    let mut factors: Vec<FiniteGroup> = Vec::new();
    let mut total: u64 = 1;
    for term in &spec.terms {
        for _ in 0..term.exponent {
            let g = build_atom(&term.atom, bound)?;
            total = total
                .checked_mul(g.order() as u64)
                .ok_or(Error::Overflow("group order"))?;
            if total > bound {
                return Err(Error::OrderBound {
                    order: total,
                    bound,
                });
            }
            factors.push(g);
        }
    }
    let mut iter = factors.into_iter();
    let mut acc = iter.next().expect("parser guarantees at least one term");
    for g in iter {
        acc = acc.direct_product(&g)?;
    }
    Ok(acc.with_name(spec.name()))
}

fn build_atom(atom: &GroupAtom, bound: u64) -> Result<FiniteGroup> {
    let check = |order: u64| {
        if order > bound {
            Err(Error::OrderBound { order, bound })
        } else {
            Ok(order as usize)
        }
    };
    match atom {
        GroupAtom::Cyclic(n) => FiniteGroup::cyclic(check(*n)?),
        GroupAtom::Dihedral(n) => FiniteGroup::dihedral_of_order(check(*n)?),
        GroupAtom::Dicyclic(n) => {
            check(n.checked_mul(4).ok_or(Error::Overflow("group order"))?)?;
            FiniteGroup::dicyclic(*n as usize)
        }
        GroupAtom::Symmetric(n) => {
            check(factorial(*n)?)?;
            FiniteGroup::symmetric(*n as usize)
        }
        GroupAtom::Alternating(n) => {
            check(factorial(*n)?.div_ceil(2))?;
            FiniteGroup::alternating(*n as usize)
        }
        GroupAtom::File(path) => {
            let g = FiniteGroup::from_cayley_file(path)?;
            check(g.order() as u64)?;
            Ok(g)
        }
    }
}

fn factorial(n: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for k in 2..=n {
        acc = acc.checked_mul(k).ok_or(Error::Overflow("factorial"))?;
    }
    Ok(acc)
}

/// Convenience: parse and build in one step.
pub fn group_from_spec(text: &str) -> Result<FiniteGroup> {
    build_group(&parse_group_spec(text)?)
}
